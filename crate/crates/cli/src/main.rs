//! `qmc`: prime implicants of Boolean functions from the command line.
//!
//! Exit codes: 0 success, 1 bad input or usage, 2 resource limit hit,
//! 3 `verify` found differing results.

mod args;

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::process::ExitCode;

use clap::Parser;
use qmc_core::bench::{bench_table, format_table, BenchReport, TrackingAllocator};
use qmc_core::io::{random_function, random_function_exact, write as write_table, FunctionSource};
use qmc_core::{Engine, Error, PrimeSet, TernaryString, TruthTable};

use args::{BenchArgs, Cli, Command, GenArgs, InputArgs, PrimesArgs, VerifyArgs};

#[global_allocator]
static ALLOC: TrackingAllocator = TrackingAllocator;

const EXIT_INPUT: u8 = 1;
const EXIT_RESOURCE: u8 = 2;
const EXIT_MISMATCH: u8 = 3;

/// Failure carrying its exit code.
struct Failure {
    code: u8,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure {
            code: if e.is_resource() { EXIT_RESOURCE } else { EXIT_INPUT },
            message: e.to_string(),
        }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure { code: EXIT_INPUT, message: e.to_string() }
    }
}

fn usage(message: impl Into<String>) -> Failure {
    Failure { code: EXIT_INPUT, message: message.into() }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let result = match cli.command {
        Command::Primes(a) => cmd_primes(a),
        Command::Verify(a) => cmd_verify(a),
        Command::Bench(a) => cmd_bench(a),
        Command::Gen(a) => cmd_gen(a),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("qmc: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

fn output_writer(path: Option<&str>) -> Result<Box<dyn Write>, Failure> {
    Ok(match path {
        Some(p) => Box::new(BufWriter::new(File::create(p)?)),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

fn generate(n: u32, density: f64, seed: u64, exact: bool) -> Result<TruthTable, Failure> {
    let tt = if exact {
        random_function_exact(n, density, seed)?
    } else {
        random_function(n, density, seed)?
    };
    Ok(tt)
}

/// The single input table described by the input flags.
fn load_input(input: &InputArgs) -> Result<(TruthTable, Option<u64>), Failure> {
    input.validate().map_err(usage)?;
    match &input.input {
        Some(path) => {
            let format = input.resolved_format(path).map_err(usage)?;
            let src = FunctionSource::File { path: path.clone(), format };
            Ok((src.load(input.n)?, None))
        }
        None => {
            let n = input.n.expect("validated");
            let density = input.density.expect("validated");
            Ok((generate(n, density, input.seed, input.exact_count)?, Some(input.seed)))
        }
    }
}

fn cmd_primes(a: PrimesArgs) -> Result<u8, Failure> {
    let opts = a.engine.options().map_err(usage)?;
    let (tt, _) = load_input(&a.input)?;
    let primes = a.algo.find_primes(&tt, &opts)?;
    let mut out = output_writer(a.output.as_deref())?;
    for s in primes.output_order() {
        writeln!(out, "{}", s.display_with(a.wildcard_char))?;
    }
    out.flush()?;
    Ok(0)
}

fn summarize(label: &str, items: &[TernaryString]) -> String {
    let shown: Vec<String> = items.iter().take(10).map(|s| s.to_string()).collect();
    let more = if items.len() > 10 { format!(" (+{} more)", items.len() - 10) } else { String::new() };
    format!("  only in {label}: {} [{}]{more}", items.len(), shown.join(", "))
}

fn cmd_verify(a: VerifyArgs) -> Result<u8, Failure> {
    let opts = a.engine.options().map_err(usage)?;
    if a.algo.len() < 2 {
        return Err(usage("verify needs at least two engines, e.g. --algo dense,sparse"));
    }
    if a.input.input.is_some() && a.count != 1 {
        return Err(usage("--count applies to random inputs only"));
    }
    let mut mismatches = 0usize;
    for k in 0..a.count {
        let mut input = a.input.clone();
        input.seed = a.input.seed.wrapping_add(k);
        let (tt, seed) = load_input(&input)?;
        let mut results: Vec<(Engine, PrimeSet)> = Vec::new();
        for &engine in &a.algo {
            let mut primes = engine.find_primes(&tt, &opts)?;
            if a.inject_fault && results.is_empty() {
                primes = corrupt(primes);
            }
            results.push((engine, primes));
        }
        let (base_engine, base) = &results[0];
        let seed_text = seed.map(|s| s.to_string()).unwrap_or_else(|| "-".into());
        let mut agree = true;
        for (engine, other) in &results[1..] {
            if other != base {
                agree = false;
                let (only_base, only_other) = base.difference(other);
                eprintln!("mismatch n={} seed={seed_text}: {base_engine} vs {engine}", tt.vars());
                eprintln!("{}", summarize(base_engine.name(), &only_base));
                eprintln!("{}", summarize(engine.name(), &only_other));
            }
        }
        let counts: Vec<String> = results.iter().map(|(e, p)| format!("{e}={}", p.len())).collect();
        println!(
            "n={} seed={seed_text} {} {}",
            tt.vars(),
            counts.join(" "),
            if agree { "ok" } else { "MISMATCH" }
        );
        if !agree {
            mismatches += 1;
        }
    }
    Ok(if mismatches == 0 { 0 } else { EXIT_MISMATCH })
}

/// Drops one prime (or adds a bogus one to an empty set).
fn corrupt(primes: PrimeSet) -> PrimeSet {
    let n = primes.vars();
    let mut items: Vec<TernaryString> = primes.iter().copied().collect();
    if items.is_empty() {
        items.push(TernaryString::stars(n).expect("valid n"));
    } else {
        items.remove(0);
    }
    PrimeSet::new(n, items)
}

fn cmd_bench(a: BenchArgs) -> Result<u8, Failure> {
    let opts = a.engine.options().map_err(usage)?;
    let ns = a.n_values().map_err(usage)?;
    let mut out = output_writer(a.output.as_deref())?;
    let mut reports: Vec<BenchReport> = Vec::new();
    for &n in &ns {
        for &density in &a.density {
            let tt = generate(n, density, a.seed, a.exact_count)?;
            for &engine in &a.algo {
                let mut r = bench_table(&tt, engine, a.repetitions, &opts, Some(a.seed));
                // report the requested density, not the sampled one
                r.density = density;
                writeln!(out, "{}", r.to_json_line())?;
                out.flush()?;
                reports.push(r);
            }
        }
    }
    if a.table {
        eprint!("{}", format_table(&reports));
    }
    Ok(if reports.iter().all(|r| r.ok()) { 0 } else { EXIT_RESOURCE })
}

fn cmd_gen(a: GenArgs) -> Result<u8, Failure> {
    let tt = generate(a.n, a.density, a.seed, a.exact_count)?;
    let text = write_table(&tt, a.format)?;
    let mut out = output_writer(a.output.as_deref())?;
    out.write_all(text.as_bytes())?;
    out.flush()?;
    Ok(0)
}
