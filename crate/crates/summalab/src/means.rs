//! Strong means of partial sums at a fixed point.
//!
//! All means consume a [`PrefixField`] (every partial sum `S_ij` at one
//! anchor point) and return the plain average, never the 1/p-rooted value;
//! callers compose the root. That keeps power means and growth-function
//! means on one code path, and avoids repeated root/power round trips.

use crate::error::{LabError, Result};
use crate::grid::PeriodicGrid;
use crate::phi::PhiSpec;
use crate::spectrum::PrefixField;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha20Rng;

/// Finite increasing sample of exponents `p > 1`, with conjugates
/// `q = p/(p-1)`; stands in for suprema over all `p > 1`.
#[derive(Debug, Clone, PartialEq)]
pub struct ExponentGrid {
    ps: Vec<f64>,
}

impl ExponentGrid {
    /// The default grid: dense near 1 (where the conjugate blows up) and
    /// log-spread up to 64, past which the normalizations dominate.
    pub fn default_grid() -> Self {
        ExponentGrid {
            ps: vec![
                1.0625, 1.125, 1.25, 1.5, 2.0, 3.0, 4.0, 6.0, 8.0, 12.0, 16.0, 24.0, 32.0, 48.0,
                64.0,
            ],
        }
    }

    pub fn new(ps: Vec<f64>) -> Result<Self> {
        if ps.is_empty() {
            return Err(LabError::InvalidConfig { reason: "empty exponent grid".to_string() });
        }
        for w in ps.windows(2) {
            if w[0] >= w[1] {
                return Err(LabError::InvalidConfig {
                    reason: "exponent grid must be strictly increasing".to_string(),
                });
            }
        }
        if ps[0] <= 1.0 {
            return Err(LabError::InvalidExponent { p: ps[0] });
        }
        Ok(ExponentGrid { ps })
    }

    /// Restriction to exponents at most `cap`.
    pub fn capped(&self, cap: f64) -> Self {
        ExponentGrid { ps: self.ps.iter().cloned().filter(|&p| p <= cap).collect() }
    }

    pub fn conjugate(p: f64) -> f64 {
        p / (p - 1.0)
    }

    pub fn iter(&self) -> impl Iterator<Item = (f64, f64)> + '_ {
        self.ps.iter().map(|&p| (p, Self::conjugate(p)))
    }

    pub fn ps(&self) -> &[f64] {
        &self.ps
    }
}

/// The normalization `p^2 ln ln (p + 2)` of the double-mean functional.
pub fn double_mean_normalizer(p: f64) -> f64 {
    p * p * (p + 2.0).ln().ln()
}

fn check_window(field: &PrefixField, n: usize, m: usize) -> Result<()> {
    if n == 0 || n > field.rows() {
        return Err(LabError::FrequencyOutOfRange { requested: n, max: field.rows() });
    }
    if m == 0 || m > field.cols() {
        return Err(LabError::FrequencyOutOfRange { requested: m, max: field.cols() });
    }
    Ok(())
}

/// `(1/nm) sum_{i<n} sum_{j<m} |S_ij - f|^p`; the plain average, not rooted.
/// The one-dimensional strong mean is the `m = 1` call on a 1D field.
pub fn strong_mean(field: &PrefixField, f_value: f64, n: usize, m: usize, p: f64) -> Result<f64> {
    if !(p > 0.0) {
        return Err(LabError::InvalidExponent { p });
    }
    check_window(field, n, m)?;
    let mut acc = 0.0;
    for i in 0..n {
        for j in 0..m {
            acc += (field.value(i, j) - f_value).abs().powf(p);
        }
    }
    Ok(acc / (n * m) as f64)
}

/// `(1/nm) sum sum Phi(|S_ij - f|)`; reduces to [`strong_mean`] for
/// `Phi(t) = t^p`.
pub fn phi_strong_mean(
    field: &PrefixField,
    f_value: f64,
    n: usize,
    m: usize,
    phi: &PhiSpec,
) -> Result<f64> {
    check_window(field, n, m)?;
    let mut acc = 0.0;
    for i in 0..n {
        for j in 0..m {
            acc += phi.eval_unchecked((field.value(i, j) - f_value).abs());
        }
    }
    Ok(acc / (n * m) as f64)
}

/// The normalized double-mean functional at one window:
/// `max_p ((1/nm) sum sum |S_ij|^p)^{1/p} / (p^2 ln ln (p+2))`.
pub fn sup_p_normalized_mean(
    field: &PrefixField,
    n: usize,
    m: usize,
    grid_p: &ExponentGrid,
) -> Result<f64> {
    check_window(field, n, m)?;
    let mut best = 0.0f64;
    for (p, _q) in grid_p.iter() {
        let mean = strong_mean(field, 0.0, n, m, p)?;
        let value = mean.powf(1.0 / p) / double_mean_normalizer(p);
        best = best.max(value);
    }
    Ok(best)
}

/// Summed-area table of `|S_ij - f|^p` over index rectangles, so that the
/// window means of [`strong_mean`] cost O(1) each once the field is fixed.
/// Used by the experiments that scan many windows per point.
#[derive(Debug, Clone)]
pub struct MeanPrefixTable {
    rows: usize,
    cols: usize,
    prefix: Vec<f64>,
}

impl MeanPrefixTable {
    pub fn new(field: &PrefixField, f_value: f64, p: f64) -> Result<Self> {
        if !(p > 0.0) {
            return Err(LabError::InvalidExponent { p });
        }
        let (rows, cols) = (field.rows(), field.cols());
        let w = cols + 1;
        let mut prefix = vec![0.0; (rows + 1) * w];
        for i in 0..rows {
            for j in 0..cols {
                let v = (field.value(i, j) - f_value).abs().powf(p);
                prefix[(i + 1) * w + (j + 1)] =
                    v + prefix[i * w + (j + 1)] + prefix[(i + 1) * w + j] - prefix[i * w + j];
            }
        }
        Ok(MeanPrefixTable { rows, cols, prefix })
    }

    /// `(1/nm) sum_{i<n} sum_{j<m}` of the tabulated powers.
    pub fn mean(&self, n: usize, m: usize) -> Result<f64> {
        if n == 0 || n > self.rows {
            return Err(LabError::FrequencyOutOfRange { requested: n, max: self.rows });
        }
        if m == 0 || m > self.cols {
            return Err(LabError::FrequencyOutOfRange { requested: m, max: self.cols });
        }
        Ok(self.prefix[n * (self.cols + 1) + m] / (n * m) as f64)
    }
}

/// Splits values at the threshold: the first part keeps entries with
/// `|v| <= s`, the second the rest; the parts sum back to the input exactly.
pub fn truncate_split(values: &[f64], s: f64) -> Result<(Vec<f64>, Vec<f64>)> {
    if !(s > 0.0) {
        return Err(LabError::InvalidThreshold { value: s });
    }
    let mut small = Vec::with_capacity(values.len());
    let mut large = Vec::with_capacity(values.len());
    for &v in values {
        if v.abs() <= s {
            small.push(v);
            large.push(0.0);
        } else {
            small.push(0.0);
            large.push(v);
        }
    }
    Ok((small, large))
}

/// Fraction of window indices whose deviation exceeds `eps`:
/// `#{(i,j) : |S_ij - f| > eps} / (nm)`. The Chebyshev-Markov bound
/// `r <= (1/eps) * mean |S_ij - f|` is asserted on every call.
pub fn exceedance_ratio(
    field: &PrefixField,
    f_value: f64,
    eps: f64,
    n: usize,
    m: usize,
) -> Result<f64> {
    if !(eps > 0.0) {
        return Err(LabError::InvalidThreshold { value: eps });
    }
    check_window(field, n, m)?;
    let mut count = 0usize;
    let mut abs_mean = 0.0;
    for i in 0..n {
        for j in 0..m {
            let dev = (field.value(i, j) - f_value).abs();
            if dev > eps {
                count += 1;
            }
            abs_mean += dev;
        }
    }
    abs_mean /= (n * m) as f64;
    let ratio = count as f64 / (n * m) as f64;
    assert!(
        ratio <= abs_mean / eps + 1e-12,
        "Chebyshev bound violated: {ratio} > {}",
        abs_mean / eps
    );
    Ok(ratio)
}

/// Per-point constants of the decay bound for a trigonometric polynomial of
/// degree `(s1, s2)`: for `n > s1`, `m > s2` the window mean of `|S_ij - T|^p`
/// is at most `c1/n + c2/m`, where both constants come from the boundary
/// rows/columns of the field at this point.
pub fn trig_decay_constants(
    field: &PrefixField,
    t_value: f64,
    s1: usize,
    s2: usize,
    p: f64,
) -> Result<(f64, f64)> {
    if !(p > 0.0) {
        return Err(LabError::InvalidExponent { p });
    }
    check_window(field, s1 + 1, s2 + 1)?;
    let dev = |i: usize, j: usize| (field.value(i, j) - t_value).abs().powf(p);
    let mut col_sum = 0.0; // deviations along the column j = s2
    for i in 0..s1 {
        col_sum += dev(i, s2);
    }
    let mut row_sum = 0.0; // deviations along the row i = s1
    for j in 0..s2 {
        row_sum += dev(s1, j);
    }
    let mut corner = 0.0;
    for i in 0..s1 {
        for j in 0..s2 {
            corner += dev(i, j);
        }
    }
    Ok((col_sum + corner, row_sum))
}

/// Deterministic sample of `count` distinct 2D grid points: the four points
/// closest to the origin (where the singular corpus entries concentrate)
/// plus seeded uniform draws.
pub fn sample_points_2d(
    grid1: PeriodicGrid,
    grid2: PeriodicGrid,
    count: usize,
    seed: u64,
) -> Vec<(usize, usize)> {
    let mut chosen: Vec<(usize, usize)> = Vec::with_capacity(count);
    let mut near = near_origin_2d(grid1, grid2);
    near.truncate(count.min(4));
    chosen.extend(near);
    let mut rng = ChaCha20Rng::seed_from_u64(seed);
    while chosen.len() < count {
        let cand = (rng.gen_range(0..grid1.len()), rng.gen_range(0..grid2.len()));
        if !chosen.contains(&cand) {
            chosen.push(cand);
        }
    }
    chosen.sort_unstable();
    chosen
}

fn near_origin_2d(grid1: PeriodicGrid, grid2: PeriodicGrid) -> Vec<(usize, usize)> {
    let o1 = grid1.index_of(0.0).expect("origin is a grid point");
    let o2 = grid2.index_of(0.0).expect("origin is a grid point");
    let mut candidates: Vec<((usize, usize), f64)> = Vec::new();
    for di in -2i64..=2 {
        for dj in -2i64..=2 {
            let idx = (grid1.wrap(o1 as i64 + di), grid2.wrap(o2 as i64 + dj));
            let dist = (grid1.point(idx.0).powi(2) + grid2.point(idx.1).powi(2)).sqrt();
            candidates.push((idx, dist));
        }
    }
    candidates.sort_by(|a, b| a.1.partial_cmp(&b.1).unwrap().then(a.0.cmp(&b.0)));
    candidates.into_iter().map(|(idx, _)| idx).take(4).collect()
}

/// One-dimensional analogue of [`sample_points_2d`].
pub fn sample_points_1d(grid: PeriodicGrid, count: usize, seed: u64) -> Vec<usize> {
    let o = grid.index_of(0.0).expect("origin is a grid point");
    let mut chosen: Vec<usize> = Vec::with_capacity(count);
    let mut near: Vec<(usize, f64)> = (-2i64..=2)
        .map(|d| {
            let idx = grid.wrap(o as i64 + d);
            (idx, grid.point(idx).abs())
        })
        .collect();
    near.sort_by(|a, b| a.1.partial_cmp(&b.1).unwrap().then(a.0.cmp(&b.0)));
    chosen.extend(near.into_iter().map(|(i, _)| i).take(count.min(4)));
    let mut rng = ChaCha20Rng::seed_from_u64(seed);
    while chosen.len() < count {
        let cand = rng.gen_range(0..grid.len());
        if !chosen.contains(&cand) {
            chosen.push(cand);
        }
    }
    chosen.sort_unstable();
    chosen
}
