use clap::{Args, Parser, Subcommand, ValueEnum};
use qmc_core::io::Format;
use qmc_core::{DenseOptions, Engine, EngineOptions, MemCap};

#[derive(Parser, Debug)]
#[command(name = "qmc", version, about = "All prime implicants of a Boolean function")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Print every prime implicant, one per line.
    Primes(PrimesArgs),
    /// Run several engines on the same inputs and compare the results.
    Verify(VerifyArgs),
    /// Time engines on random functions; JSON lines on stdout.
    Bench(BenchArgs),
    /// Write a random truth table.
    Gen(GenArgs),
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Switch {
    On,
    Off,
}

/// Where the truth table comes from: a file, or `--n/--density/--seed`.
#[derive(Args, Debug, Clone)]
pub struct InputArgs {
    /// Truth-table file.
    #[arg(long, short = 'i')]
    pub input: Option<String>,
    /// File format; inferred from the extension when omitted.
    #[arg(long, value_parser = parse_format)]
    pub format: Option<Format>,
    /// Number of variables (required for random input, checked for files).
    #[arg(long)]
    pub n: Option<u32>,
    /// Probability that a point is in the support.
    #[arg(long)]
    pub density: Option<f64>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Pick exactly round(density * 2^n) points instead of independent draws.
    #[arg(long)]
    pub exact_count: bool,
}

impl InputArgs {
    pub fn validate(&self) -> Result<(), String> {
        match (&self.input, self.density) {
            (Some(_), Some(_)) => Err("--input and --density are mutually exclusive".into()),
            (Some(_), None) => Ok(()),
            (None, Some(_)) if self.n.is_none() => Err("random input needs --n".into()),
            (None, Some(_)) => Ok(()),
            (None, None) => Err("give either --input FILE or --n N --density D".into()),
        }
    }

    pub fn resolved_format(&self, path: &str) -> Result<Format, String> {
        self.format
            .or_else(|| Format::from_extension(path))
            .ok_or_else(|| format!("cannot infer format of {path:?}; pass --format"))
    }
}

#[derive(Args, Debug, Clone)]
pub struct EngineArgs {
    /// Bottom-layer dimension count of the dense engine (1..=5).
    #[arg(long)]
    pub h: Option<u32>,
    /// Dense-state memory cap in bytes (suffixes K, M, G; "none" to disable).
    #[arg(long, value_parser = parse_mem_cap)]
    pub mem_cap: Option<MemCap>,
    #[arg(long, value_enum, default_value_t = Switch::On)]
    pub unroll: Switch,
    #[arg(long, value_enum, default_value_t = Switch::On)]
    pub fuse: Switch,
}

impl EngineArgs {
    pub fn options(&self) -> Result<EngineOptions, String> {
        if let Some(h) = self.h {
            if !(1..=qmc_core::dense::MAX_H).contains(&h) {
                return Err(format!("--h must be in 1..={}", qmc_core::dense::MAX_H));
            }
        }
        Ok(EngineOptions {
            dense: DenseOptions {
                h: self.h,
                unroll: self.unroll == Switch::On,
                fuse: self.fuse == Switch::On,
                mem_cap: self.mem_cap.unwrap_or_default(),
            },
            ..Default::default()
        })
    }
}

#[derive(Args, Debug)]
pub struct PrimesArgs {
    #[command(flatten)]
    pub input: InputArgs,
    #[command(flatten)]
    pub engine: EngineArgs,
    #[arg(long, default_value = "dense")]
    pub algo: Engine,
    /// Symbol printed for an eliminated variable.
    #[arg(long, default_value_t = '*', value_parser = parse_wildcard)]
    pub wildcard_char: char,
    /// Write to this file instead of stdout.
    #[arg(long, short = 'o')]
    pub output: Option<String>,
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    #[command(flatten)]
    pub input: InputArgs,
    #[command(flatten)]
    pub engine: EngineArgs,
    /// Engines to compare, comma separated.
    #[arg(long, value_delimiter = ',', default_value = "dense,sparse")]
    pub algo: Vec<Engine>,
    /// Number of random tables, seeds `seed, seed+1, ...`.
    #[arg(long, default_value_t = 1)]
    pub count: u64,
    /// Corrupt the first engine's result (tests the mismatch path).
    #[arg(long, hide = true)]
    pub inject_fault: bool,
}

#[derive(Args, Debug)]
pub struct BenchArgs {
    #[command(flatten)]
    pub engine: EngineArgs,
    /// Engines to time, comma separated.
    #[arg(long, value_delimiter = ',', default_value = "dense")]
    pub algo: Vec<Engine>,
    /// Variable counts: a list ("12,14") or an inclusive range ("12..20").
    #[arg(long)]
    pub n: String,
    /// Densities, comma separated.
    #[arg(long, value_delimiter = ',', default_value = "0.5")]
    pub density: Vec<f64>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long)]
    pub exact_count: bool,
    /// Runs per configuration; the fastest is reported.
    #[arg(long, default_value_t = 1)]
    pub repetitions: u32,
    /// Also print a human-readable table to stderr.
    #[arg(long)]
    pub table: bool,
    /// Write JSON lines to this file instead of stdout.
    #[arg(long, short = 'o')]
    pub output: Option<String>,
}

impl BenchArgs {
    pub fn n_values(&self) -> Result<Vec<u32>, String> {
        parse_n_list(&self.n)
    }
}

#[derive(Args, Debug)]
pub struct GenArgs {
    #[arg(long)]
    pub n: u32,
    #[arg(long)]
    pub density: f64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long)]
    pub exact_count: bool,
    #[arg(long, default_value = "bits", value_parser = parse_format)]
    pub format: Format,
    #[arg(long, short = 'o')]
    pub output: Option<String>,
}

fn parse_format(s: &str) -> Result<Format, String> {
    s.parse::<Format>().map_err(|e| e.to_string())
}

fn parse_wildcard(s: &str) -> Result<char, String> {
    match s {
        "*" => Ok('*'),
        "-" => Ok('-'),
        _ => Err("wildcard must be '*' or '-'".into()),
    }
}

fn parse_mem_cap(s: &str) -> Result<MemCap, String> {
    let t = s.trim();
    match t.to_ascii_lowercase().as_str() {
        "none" | "unlimited" => return Ok(MemCap::Unlimited),
        "auto" => return Ok(MemCap::Auto),
        _ => {}
    }
    let (digits, mult) = match t.char_indices().find(|(_, c)| !c.is_ascii_digit()) {
        None => (t, 1u64),
        Some((i, _)) => {
            let mult = match t[i..].to_ascii_uppercase().as_str() {
                "K" | "KB" | "KIB" => 1 << 10,
                "M" | "MB" | "MIB" => 1 << 20,
                "G" | "GB" | "GIB" => 1 << 30,
                other => return Err(format!("unknown size suffix {other:?}")),
            };
            (&t[..i], mult)
        }
    };
    let v: u64 = digits.parse().map_err(|_| format!("invalid byte count {s:?}"))?;
    v.checked_mul(mult).map(MemCap::Bytes).ok_or_else(|| "byte count overflows".into())
}

/// `"12..20"` (inclusive) or `"12,14,16"`.
pub fn parse_n_list(s: &str) -> Result<Vec<u32>, String> {
    let bad = || format!("invalid --n {s:?}; expected N, A..B or a comma list");
    if let Some((a, b)) = s.split_once("..") {
        let b = b.strip_prefix('=').unwrap_or(b);
        let a: u32 = a.trim().parse().map_err(|_| bad())?;
        let b: u32 = b.trim().parse().map_err(|_| bad())?;
        if a > b {
            return Err(bad());
        }
        return Ok((a..=b).collect());
    }
    s.split(',').map(|p| p.trim().parse().map_err(|_| bad())).collect()
}
