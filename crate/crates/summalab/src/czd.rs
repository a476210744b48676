//! Dyadic stopping-time decomposition at a square-root level.
//!
//! Starting from the root `[-pi, pi)`, intervals are bisected until the
//! average of `|f|` over a child first exceeds `sqrt(lambda)`; that child is
//! selected and the walk stops there. Because a dyadic child holds at most
//! twice its parent's average, every selected interval `D` satisfies
//!
//! ```text
//! sqrt(lambda) < avg_D |f| <= 2 sqrt(lambda),
//! ```
//!
//! the total selected length is at most `||f||_1 / sqrt(lambda)`, and off the
//! selected union every dyadic average stays at or below `sqrt(lambda)`.
//! The threshold is `sqrt(lambda)`, not `lambda`: the level-set experiments
//! built on this decomposition all probe square-root-type bounds.

use crate::error::{LabError, Result};
use crate::grid::{PeriodicGrid, SampledFunction1D, TWO_PI};
use std::f64::consts::PI;

/// A subinterval of the torus, `[start, start + length)` with the start
/// normalized into `[-pi, pi)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TorusInterval {
    start: f64,
    length: f64,
}

impl TorusInterval {
    pub fn new(start: f64, length: f64) -> Result<Self> {
        if !(length > 0.0 && length <= TWO_PI) || !start.is_finite() {
            return Err(LabError::InvalidFamily {
                reason: format!("bad interval (start {start}, length {length})"),
            });
        }
        let mut s = start;
        while s < -PI {
            s += TWO_PI;
        }
        while s >= PI {
            s -= TWO_PI;
        }
        Ok(TorusInterval { start: s, length })
    }

    pub fn start(&self) -> f64 {
        self.start
    }

    pub fn length(&self) -> f64 {
        self.length
    }

    pub fn center(&self) -> f64 {
        let mut c = self.start + 0.5 * self.length;
        if c >= PI {
            c -= TWO_PI;
        }
        c
    }

    /// Membership with periodic wraparound.
    pub fn contains(&self, x: f64) -> bool {
        let offset = (x - self.start).rem_euclid(TWO_PI);
        offset < self.length
    }

    fn overlaps(&self, other: &TorusInterval) -> bool {
        // shift both so self starts at 0; compare on the unrolled circle
        let o = (other.start - self.start).rem_euclid(TWO_PI);
        o < self.length || o + other.length > TWO_PI
    }
}

/// Pairwise disjoint intervals on the torus, optionally tagged with the
/// decomposition level and source resolution that produced them.
#[derive(Debug, Clone, PartialEq)]
pub struct IntervalFamily {
    intervals: Vec<TorusInterval>,
    level: Option<f64>,
    source_n: Option<usize>,
}

impl IntervalFamily {
    /// Validates pairwise disjointness (in the periodic sense).
    pub fn new(intervals: Vec<(f64, f64)>) -> Result<Self> {
        let intervals: Vec<TorusInterval> = intervals
            .into_iter()
            .map(|(s, l)| TorusInterval::new(s, l))
            .collect::<Result<_>>()?;
        let total: f64 = intervals.iter().map(|i| i.length).sum();
        if total > TWO_PI + 1e-12 {
            return Err(LabError::InvalidFamily {
                reason: format!("total length {total} exceeds the torus"),
            });
        }
        for (a, ia) in intervals.iter().enumerate() {
            for ib in intervals.iter().skip(a + 1) {
                if ia.overlaps(ib) {
                    return Err(LabError::InvalidFamily {
                        reason: format!(
                            "intervals at {} and {} overlap",
                            ia.start, ib.start
                        ),
                    });
                }
            }
        }
        Ok(IntervalFamily { intervals, level: None, source_n: None })
    }

    pub fn intervals(&self) -> &[TorusInterval] {
        &self.intervals
    }

    pub fn len(&self) -> usize {
        self.intervals.len()
    }

    pub fn is_empty(&self) -> bool {
        self.intervals.is_empty()
    }

    pub fn total_length(&self) -> f64 {
        self.intervals.iter().map(|i| i.length).sum()
    }

    pub fn level(&self) -> Option<f64> {
        self.level
    }

    pub fn source_len(&self) -> Option<usize> {
        self.source_n
    }

    /// CSV rows `start,length,average` where the average column is supplied
    /// by the caller (decomposition output knows it; synthetic families
    /// leave it NaN-free as 0).
    pub fn to_csv(&self, averages: Option<&[f64]>) -> String {
        let mut out = String::from("start,length,average\n");
        for (k, iv) in self.intervals.iter().enumerate() {
            let avg = averages.map(|a| a[k]).unwrap_or(0.0);
            out.push_str(&format!("{},{},{}\n", iv.start, iv.length, avg));
        }
        out
    }
}

/// Stopping-time dyadic decomposition of `|f|` at threshold `sqrt(lambda)`.
///
/// Requires the global average of `|f|` to sit at or below the threshold;
/// otherwise the root itself would have to be selected and the decomposition
/// carries no information.
pub fn decompose(f: &SampledFunction1D, lambda: f64) -> Result<IntervalFamily> {
    if !(lambda > 0.0) {
        return Err(LabError::InvalidThreshold { value: lambda });
    }
    let threshold = lambda.sqrt();
    let n = f.grid().len();
    let h = f.grid().cell_width();
    let mut prefix = vec![0.0; n + 1];
    for (j, v) in f.values().iter().enumerate() {
        prefix[j + 1] = prefix[j] + v.abs();
    }
    let global_mean = prefix[n] / n as f64;
    if global_mean > threshold {
        return Err(LabError::LevelTooLow { threshold, mean: global_mean });
    }

    // depth-first walk, left child before right, so output is ordered
    let mut selected: Vec<TorusInterval> = Vec::new();
    let mut stack: Vec<(usize, usize)> = vec![(0, n)]; // [lo, hi) in cells
    while let Some((lo, hi)) = stack.pop() {
        if hi - lo == 1 {
            continue; // leaf with average <= threshold
        }
        let mid = (lo + hi) / 2;
        // right child first so the left pops first
        for &(a, b) in &[(mid, hi), (lo, mid)] {
            let avg = (prefix[b] - prefix[a]) / (b - a) as f64;
            if avg > threshold {
                selected.push(TorusInterval::new(
                    f.grid().point(a),
                    (b - a) as f64 * h,
                )?);
            } else {
                stack.push((a, b));
            }
        }
    }
    selected.sort_by(|a, b| a.start.partial_cmp(&b.start).unwrap());
    Ok(IntervalFamily {
        intervals: selected,
        level: Some(lambda),
        source_n: Some(n),
    })
}

/// Cells of the union of concentric dilations, and its measure.
#[derive(Debug, Clone, PartialEq)]
pub struct DilatedUnion {
    /// indices of grid cells fully inside the union
    pub cells: Vec<usize>,
    pub measure: f64,
}

/// Union of concentric dilations of every interval, clipped to the torus.
/// A grid cell belongs to the union when it lies fully inside some dilated
/// interval, so the measure never exceeds `factor * total_length`; for
/// integer factors on dyadic families the count is exact.
pub fn dilate_union(
    family: &IntervalFamily,
    factor: f64,
    grid: PeriodicGrid,
) -> Result<DilatedUnion> {
    if !(factor >= 1.0) {
        return Err(LabError::InvalidDilation { factor });
    }
    let n = grid.len();
    let h = grid.cell_width();
    let mut covered = vec![false; n];
    for interval in &family.intervals {
        let len = (factor * interval.length).min(TWO_PI);
        let lo = interval.center() - 0.5 * len;
        for j in 0..n {
            if covered[j] {
                continue;
            }
            let cell_lo = grid.point(j);
            // cell [cell_lo, cell_lo + h) inside [lo, lo + len) mod 2 pi;
            // offsets a hair under 2 pi are wraparound roundoff, not distance
            let mut offset = (cell_lo - lo).rem_euclid(TWO_PI);
            if offset > TWO_PI - 1e-9 {
                offset = 0.0;
            }
            if offset + h <= len + 1e-9 {
                covered[j] = true;
            }
        }
    }
    let cells: Vec<usize> = (0..n).filter(|&j| covered[j]).collect();
    let measure = cells.len() as f64 * h;
    Ok(DilatedUnion { cells, measure })
}
