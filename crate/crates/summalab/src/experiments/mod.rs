//! Named verification suites.
//!
//! Every experiment wires corpus entries through the library, checks a
//! family of inequalities or convergence trends at desk scale, and emits a
//! deterministic `report.csv` plus `summary.json` (see [`crate::report`]).
//! Exit semantics: an experiment that runs to completion reports pass/fail
//! per assertion; a module error aborts with a structured error record.

use crate::config::ExperimentConfig;
use crate::error::{LabError, Result};
use crate::report::{emit, EmittedFiles, ExperimentResult};

mod convergence;
mod czd_suite;
mod domination;
mod growth;
mod weak_type;

/// One experiment id with a one-line statement of what it checks; the table
/// is what `list-experiments` prints, so the docs cannot drift from the code.
pub struct ExperimentInfo {
    pub id: &'static str,
    pub checks: &'static str,
}

pub const EXPERIMENTS: &[ExperimentInfo] = &[
    ExperimentInfo {
        id: "verify-gabisonia",
        checks: "rooted strong means of partial sums are dominated by the matching-scale \
                 Gabisonia operator, with a resolution-stable constant",
    },
    ExperimentInfo {
        id: "verify-schipp",
        checks: "rooted strong means are dominated by p times the quadratic-exponent \
                 Gabisonia supremum, with a resolution-stable constant",
    },
    ExperimentInfo {
        id: "verify-rodin-llogl",
        checks: "the L1 norm of the quadratic Gabisonia supremum is controlled by \
                 1 + the t log+ t modular, with a resolution-stable constant",
    },
    ExperimentInfo {
        id: "verify-weak-half",
        checks: "level sets of the normalized one-sided Gabisonia supremum decay no \
                 faster than the square-root envelope allows",
    },
    ExperimentInfo {
        id: "verify-oskolkov",
        checks: "normalized interval sums have exponentially decaying level sets and a \
                 refinement-stable rooted integral",
    },
    ExperimentInfo {
        id: "verify-czd",
        checks: "dyadic decompositions are disjoint, trap averages between the threshold \
                 and its double, and obey the total-length bound",
    },
    ExperimentInfo {
        id: "verify-main-2d",
        checks: "the doubly-normalized supremum of rooted double strong means has level \
                 sets controlled by square-root envelopes in the modular and the norm",
    },
    ExperimentInfo {
        id: "verify-uv",
        checks: "the exponential of sqrt(s/lnln s) is dominated by its witness power \
                 series for a moderate constant, with valid index bracketing",
    },
    ExperimentInfo {
        id: "verify-trigpoly-decay",
        checks: "double strong means of trigonometric polynomials decay like c1/n + c2/m \
                 with constants computed from boundary partial sums",
    },
    ExperimentInfo {
        id: "converge-theorem",
        checks: "exponential growth-function means of double partial sums decrease along \
                 dyadic windows on the integrable-log corpus",
    },
    ExperimentInfo {
        id: "converge-jmz",
        checks: "double arithmetic means converge pointwise on the integrable-log corpus",
    },
    ExperimentInfo {
        id: "converge-rodin-1d",
        checks: "exponential growth-function means of 1D partial sums decrease along \
                 dyadic windows on the log-singular corpus",
    },
];

pub fn lookup(id: &str) -> Option<&'static ExperimentInfo> {
    EXPERIMENTS.iter().find(|e| e.id == id)
}

pub struct RunOutcome {
    pub passed: bool,
    pub files: EmittedFiles,
}

/// Runs one experiment and emits its files. Assertion failures still emit
/// and return `passed = false`; library errors emit a structured error
/// record and propagate.
pub fn run(config: &ExperimentConfig) -> Result<RunOutcome> {
    config.validate()?;
    if lookup(&config.experiment).is_none() {
        return Err(LabError::InvalidConfig {
            reason: format!("unknown experiment `{}`", config.experiment),
        });
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(config.threads.unwrap_or(0))
        .build()
        .map_err(|e| LabError::InvalidConfig { reason: e.to_string() })?;
    let started = std::time::Instant::now();
    let result = pool.install(|| dispatch(config));
    let elapsed = started.elapsed();
    match result {
        Ok(result) => {
            let files = emit(&config.out_dir, &config.experiment, config.seed, &result, None)?;
            eprintln!(
                "{}: {} in {:.2}s",
                config.experiment,
                if result.passed() { "pass" } else { "FAIL" },
                elapsed.as_secs_f64()
            );
            Ok(RunOutcome { passed: result.passed(), files })
        }
        Err(e) => {
            let empty = ExperimentResult::new();
            emit(&config.out_dir, &config.experiment, config.seed, &empty, Some(&e))?;
            Err(e)
        }
    }
}

fn dispatch(config: &ExperimentConfig) -> Result<ExperimentResult> {
    match config.experiment.as_str() {
        "verify-gabisonia" => domination::verify_gabisonia(config),
        "verify-schipp" => domination::verify_schipp(config),
        "verify-rodin-llogl" => domination::verify_rodin_llogl(config),
        "verify-weak-half" => weak_type::verify_weak_half(config),
        "verify-oskolkov" => weak_type::verify_oskolkov(config),
        "verify-czd" => czd_suite::verify_czd(config),
        "verify-main-2d" => weak_type::verify_main_2d(config),
        "verify-uv" => growth::verify_uv(config),
        "verify-trigpoly-decay" => convergence::verify_trigpoly_decay(config),
        "converge-theorem" => convergence::converge_theorem(config),
        "converge-jmz" => convergence::converge_jmz(config),
        "converge-rodin-1d" => convergence::converge_rodin_1d(config),
        other => Err(LabError::InvalidConfig { reason: format!("unknown experiment `{other}`") }),
    }
}

// ---- shared statistics helpers ----

/// Least-squares line fit; returns (intercept, slope).
pub(crate) fn fit_line(xs: &[f64], ys: &[f64]) -> (f64, f64) {
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let mut sxx = 0.0;
    let mut sxy = 0.0;
    for (x, y) in xs.iter().zip(ys) {
        sxx += (x - mx) * (x - mx);
        sxy += (x - mx) * (y - my);
    }
    let slope = sxy / sxx;
    (my - slope * mx, slope)
}

pub(crate) fn median(values: &[f64]) -> f64 {
    let mut v = values.to_vec();
    v.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let k = v.len();
    if k % 2 == 1 {
        v[k / 2]
    } else {
        0.5 * (v[k / 2 - 1] + v[k / 2])
    }
}

/// Fraction of per-point sequences that are non-increasing (with a relative
/// slack of 1e-12 so float noise on plateaus does not count as growth).
pub(crate) fn monotone_fraction(series: &[Vec<f64>]) -> f64 {
    if series.is_empty() {
        return 1.0;
    }
    let good = series
        .iter()
        .filter(|seq| {
            seq.windows(2)
                .all(|w| w[1] <= w[0] * (1.0 + 1e-12) + f64::MIN_POSITIVE)
        })
        .count();
    good as f64 / series.len() as f64
}
