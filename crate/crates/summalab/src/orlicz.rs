//! The Orlicz machinery for the class of functions with integrable
//! `|f| log+ |f|`.
//!
//! Everything is generated by the single Young function `M(t) = t log+ t`,
//! which vanishes on `[0, 1]` and is convex beyond. Because of that flat
//! part, the modular `lambda -> integral of M(|f|/lambda)` plateaus at zero
//! for large `lambda`; the Luxemburg norm is therefore located as the
//! boundary of the monotone feasibility predicate `modular(f/lambda) <= 1`,
//! not as a root of `modular - 1`.

use crate::error::{LabError, Result};
use crate::grid::{SampledFunction1D, SampledFunction2D};

/// `M(t) = t log+ t`, the Young function of the space.
pub fn young(t: f64) -> f64 {
    if t > 1.0 {
        t * t.ln()
    } else {
        0.0
    }
}

/// `h1 h2 * sum M(|f|)` over the grid.
pub fn modular(f: &SampledFunction2D) -> f64 {
    let mut acc = 0.0;
    for &v in f.values() {
        acc += young(v.abs());
    }
    acc * f.grid1().cell_width() * f.grid2().cell_width()
}

/// One-dimensional analogue, used to normalize operator averages of sections.
pub fn modular_1d(f: &SampledFunction1D) -> f64 {
    let mut acc = 0.0;
    for &v in f.values() {
        acc += young(v.abs());
    }
    acc * f.grid().cell_width()
}

fn modular_scaled(f: &SampledFunction2D, lambda: f64) -> f64 {
    let mut acc = 0.0;
    for &v in f.values() {
        acc += young(v.abs() / lambda);
    }
    acc * f.grid1().cell_width() * f.grid2().cell_width()
}

pub const DEFAULT_NORM_TOL: f64 = 1e-10;
const MAX_BISECTIONS: usize = 200;

/// Luxemburg norm `inf { lambda > 0 : modular(f / lambda) <= 1 }` by
/// bisection on the feasibility predicate.
///
/// The bracket starts at `lambda_hi = max|f|` (feasible, since the Young
/// function vanishes on [0,1]) and extends the infeasible side downward by
/// halving. Returns the feasible end of the final bracket, so the normalized
/// function always satisfies `modular <= 1`. The zero function has norm 0 by
/// convention.
pub fn luxemburg_norm(f: &SampledFunction2D, tol: f64) -> Result<f64> {
    if tol <= 0.0 {
        return Err(LabError::InvalidThreshold { value: tol });
    }
    let peak = f.max_abs();
    if peak == 0.0 {
        return Ok(0.0);
    }
    let mut hi = peak;
    debug_assert!(modular_scaled(f, hi) <= 1.0);
    let mut lo = hi * 2f64.powi(-60);
    let floor = hi * 2f64.powi(-200);
    while modular_scaled(f, lo) <= 1.0 {
        lo *= 0.5;
        if lo < floor {
            // feasible all the way down: the norm is numerically zero
            return Ok(lo);
        }
    }
    for _ in 0..MAX_BISECTIONS {
        if hi - lo <= tol * hi {
            return Ok(hi);
        }
        let mid = 0.5 * (lo + hi);
        if modular_scaled(f, mid) <= 1.0 {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    Err(LabError::BisectionFailure)
}

/// The two-sided bound the norm and the modular satisfy at unit norm.
#[derive(Debug, Clone, Copy)]
pub struct SandwichReport {
    /// `0.5 (1 + modular(g))` for the normalized function g
    pub lower: f64,
    /// recomputed norm of g; 1 up to the bisection tolerance
    pub norm: f64,
    /// `1 + modular(g)`
    pub upper: f64,
}

const SANDWICH_SLACK: f64 = 1e-6;

/// Rescales `f` to unit Luxemburg norm and checks
/// `0.5 (1 + modular(g)) <= ||g|| <= 1 + modular(g)`.
pub fn sandwich_check(f: &SampledFunction2D) -> Result<SandwichReport> {
    let norm = luxemburg_norm(f, DEFAULT_NORM_TOL)?;
    if norm == 0.0 {
        return Err(LabError::InvalidConfig {
            reason: "sandwich check requires a nonzero function".to_string(),
        });
    }
    let g = f.scale(1.0 / norm)?;
    let gnorm = luxemburg_norm(&g, DEFAULT_NORM_TOL)?;
    let m = modular(&g);
    let report = SandwichReport { lower: 0.5 * (1.0 + m), norm: gnorm, upper: 1.0 + m };
    if (report.norm - 1.0).abs() > 1e-6 {
        return Err(LabError::InvalidConfig {
            reason: format!("normalization failed: norm {gnorm}"),
        });
    }
    if report.lower > report.norm + SANDWICH_SLACK || report.norm > report.upper + SANDWICH_SLACK {
        return Err(LabError::InvalidConfig {
            reason: format!(
                "sandwich violated: {} <= {} <= {}",
                report.lower, report.norm, report.upper
            ),
        });
    }
    Ok(report)
}
