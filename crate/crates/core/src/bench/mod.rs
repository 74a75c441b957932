//! Wall-clock and peak-memory measurement of engine runs.
//!
//! The timed region is one end-to-end engine call (load, passes, extract);
//! reading or generating the truth table is excluded. Peak memory is the
//! highest heap usage above the pre-run baseline when [`TrackingAllocator`]
//! is installed, and the resident-set high-water mark above the pre-run RSS
//! otherwise (both are reported when available).

mod alloc;

pub use alloc::{reset_tracked_peak, tracked_current, tracked_peak, TrackingAllocator};

use std::fmt::Write as _;
use std::time::Instant;

use serde::Serialize;

use crate::engine::{Engine, EngineOptions};
use crate::io::FunctionSource;
use crate::sys;
use crate::truth_table::TruthTable;

/// One benchmark row; serialized as one JSON object per line.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BenchReport {
    pub engine: String,
    pub n: u32,
    pub density: f64,
    pub seed: Option<u64>,
    /// Fastest of the repetitions.
    pub seconds: f64,
    pub peak_bytes: u64,
    pub rss_peak_bytes: Option<u64>,
    pub prime_count: Option<usize>,
    pub repetitions: u32,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

impl BenchReport {
    pub fn ok(&self) -> bool {
        self.error.is_none()
    }

    pub fn to_json_line(&self) -> String {
        serde_json::to_string(self).expect("report serializes")
    }
}

/// Memory usage of a single timed call.
#[derive(Debug, Clone, Copy, Default)]
struct Measured {
    seconds: f64,
    heap_peak: Option<u64>,
    rss_peak: Option<u64>,
}

fn measure<T>(f: impl FnOnce() -> T) -> (T, Measured) {
    let heap_base = tracked_current();
    reset_tracked_peak();
    let rss_base = sys::current_rss();
    let rss_reset = sys::reset_peak_rss();
    let start = Instant::now();
    let out = f();
    let seconds = start.elapsed().as_secs_f64();
    let heap_peak = match (heap_base, tracked_peak()) {
        (Some(b), Some(p)) => Some(p.saturating_sub(b) as u64),
        _ => None,
    };
    let rss_peak = match (rss_reset, rss_base, sys::peak_rss()) {
        (true, Some(b), Some(p)) => Some(p.saturating_sub(b)),
        _ => None,
    };
    (out, Measured { seconds, heap_peak, rss_peak })
}

/// Runs `engine` on the table from `source` `repetitions` times (at least once).
pub fn run_benchmark(
    source: &FunctionSource,
    engine: Engine,
    repetitions: u32,
    opts: &EngineOptions,
) -> BenchReport {
    let (n_hint, seed) = match source {
        FunctionSource::Random { n, seed, .. } => (*n, Some(*seed)),
        FunctionSource::File { .. } => (0, None),
    };
    match source.load(None) {
        Ok(tt) => bench_table(&tt, engine, repetitions, opts, seed),
        Err(e) => BenchReport {
            engine: engine.name().to_string(),
            n: n_hint,
            density: match source {
                FunctionSource::Random { density, .. } => *density,
                _ => f64::NAN,
            },
            seed,
            seconds: 0.0,
            peak_bytes: 0,
            rss_peak_bytes: None,
            prime_count: None,
            repetitions: 0,
            error: Some(e.to_string()),
        },
    }
}

/// Like [`run_benchmark`] for an already loaded table.
pub fn bench_table(
    tt: &TruthTable,
    engine: Engine,
    repetitions: u32,
    opts: &EngineOptions,
    seed: Option<u64>,
) -> BenchReport {
    let mut report = BenchReport {
        engine: engine.name().to_string(),
        n: tt.vars(),
        density: tt.density(),
        seed,
        seconds: f64::INFINITY,
        peak_bytes: 0,
        rss_peak_bytes: None,
        prime_count: None,
        repetitions: 0,
        error: None,
    };
    for _ in 0..repetitions.max(1) {
        let (result, m) = measure(|| engine.find_primes(tt, opts));
        report.repetitions += 1;
        report.rss_peak_bytes = max_opt(report.rss_peak_bytes, m.rss_peak);
        let peak = m.heap_peak.or(m.rss_peak).unwrap_or(0);
        report.peak_bytes = report.peak_bytes.max(peak);
        match result {
            Ok(primes) => {
                report.seconds = report.seconds.min(m.seconds);
                report.prime_count = Some(primes.len());
            }
            Err(e) => {
                report.seconds = m.seconds;
                report.error = Some(e.to_string());
                break;
            }
        }
    }
    report
}

fn max_opt(a: Option<u64>, b: Option<u64>) -> Option<u64> {
    match (a, b) {
        (Some(x), Some(y)) => Some(x.max(y)),
        (x, None) => x,
        (None, y) => y,
    }
}

fn human_bytes(b: u64) -> String {
    const UNITS: [&str; 5] = ["B", "KiB", "MiB", "GiB", "TiB"];
    let mut v = b as f64;
    let mut u = 0;
    while v >= 1024.0 && u + 1 < UNITS.len() {
        v /= 1024.0;
        u += 1;
    }
    if u == 0 {
        format!("{b} B")
    } else {
        format!("{v:.1} {}", UNITS[u])
    }
}

fn human_seconds(s: f64) -> String {
    if s < 1.0 {
        format!("{:.1} ms", s * 1e3)
    } else if s < 120.0 {
        format!("{s:.2} s")
    } else if s < 7200.0 {
        format!("{:.1} m", s / 60.0)
    } else {
        format!("{:.1} h", s / 3600.0)
    }
}

/// Fixed-width table of reports for terminals.
pub fn format_table(reports: &[BenchReport]) -> String {
    let mut out = String::new();
    writeln!(
        out,
        "{:<7} {:>3} {:>8} {:>20} {:>11} {:>11} {:>10}  status",
        "engine", "n", "density", "seed", "time", "peak mem", "primes"
    )
    .unwrap();
    for r in reports {
        let seed = r.seed.map(|s| s.to_string()).unwrap_or_else(|| "-".into());
        let primes = r.prime_count.map(|p| p.to_string()).unwrap_or_else(|| "-".into());
        let status = r.error.as_deref().unwrap_or("ok");
        writeln!(
            out,
            "{:<7} {:>3} {:>8.3} {:>20} {:>11} {:>11} {:>10}  {}",
            r.engine,
            r.n,
            r.density,
            seed,
            human_seconds(r.seconds),
            human_bytes(r.peak_bytes),
            primes,
            status
        )
        .unwrap();
    }
    out
}
