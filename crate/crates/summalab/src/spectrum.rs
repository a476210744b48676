//! Fourier analysis and synthesis on periodic grids.
//!
//! Coefficients follow the convention
//!
//! ```text
//! c_m = (1/2pi) * h * sum_j f(x_j) exp(-i m x_j),   |m| <= N/2 - 1,
//! ```
//!
//! computed by a fast transform scaled by `1/N`; the grid offset `x_0 = -pi`
//! contributes the phase `(-1)^m`. The band limit `N/2 - 1` drops the
//! unpaired Nyquist bin, so spectra of real inputs are conjugate-symmetric.
//! Requests past the band limit are errors, never silent truncations.
//!
//! Synthesis returns real samples: the imaginary residue is compared against
//! a relative threshold of 1e-8 and then discarded; exceeding the threshold
//! is an error, since it indicates a conjugate-symmetry bug upstream.

use crate::error::{LabError, Result};
use crate::grid::{PeriodicGrid, SampledFunction1D, SampledFunction2D};
use rustfft::num_complex::Complex64;
use rustfft::FftPlanner;

const RESIDUE_TOL: f64 = 1e-8;

fn forward_fft(values: &[f64]) -> Vec<Complex64> {
    let mut buf: Vec<Complex64> = values.iter().map(|&v| Complex64::new(v, 0.0)).collect();
    FftPlanner::new()
        .plan_fft_forward(buf.len())
        .process(&mut buf);
    buf
}

/// Unnormalized inverse transform: `out_j = sum_k d_k exp(+2 pi i j k / N)`.
fn inverse_fft(mut buf: Vec<Complex64>) -> Vec<Complex64> {
    FftPlanner::new()
        .plan_fft_inverse(buf.len())
        .process(&mut buf);
    buf
}

/// Asserts the relative imaginary residue and strips it. Outputs that are
/// numerically zero (below 1e-14 absolutely) pass outright, since a relative
/// comparison of two roundoff tails carries no information.
fn take_real(buf: Vec<Complex64>) -> Result<Vec<f64>> {
    let scale = buf.iter().fold(0.0f64, |m, z| m.max(z.norm()));
    let worst_im = buf.iter().fold(0.0f64, |m, z| m.max(z.im.abs()));
    if worst_im > 1e-14 && worst_im > RESIDUE_TOL * scale {
        return Err(LabError::ResidueTooLarge { residue: worst_im / scale });
    }
    Ok(buf.into_iter().map(|z| z.re).collect())
}

/// The parity phase `(-1)^m` induced by the grid offset.
fn parity(m: i64) -> f64 {
    if m.rem_euclid(2) == 0 {
        1.0
    } else {
        -1.0
    }
}

/// Fourier coefficients of a 1D sampled function, `|m| <= N/2 - 1`.
#[derive(Debug, Clone, PartialEq)]
pub struct FourierSpectrum1D {
    source_n: usize,
    max_freq: usize,
    /// coefficient of frequency m at index `m + max_freq`
    coeffs: Vec<Complex64>,
}

impl FourierSpectrum1D {
    pub fn analyze(f: &SampledFunction1D) -> Self {
        let n = f.grid().len();
        let max_freq = n / 2 - 1;
        let dft = forward_fft(f.values());
        let mut coeffs = Vec::with_capacity(2 * max_freq + 1);
        for m in -(max_freq as i64)..=(max_freq as i64) {
            let idx = m.rem_euclid(n as i64) as usize;
            coeffs.push(dft[idx] * (parity(m) / n as f64));
        }
        FourierSpectrum1D { source_n: n, max_freq, coeffs }
    }

    pub fn source_len(&self) -> usize {
        self.source_n
    }

    pub fn max_frequency(&self) -> usize {
        self.max_freq
    }

    /// Coefficient of frequency `m`; zero outside the stored band.
    pub fn coeff(&self, m: i64) -> Complex64 {
        if m.unsigned_abs() as usize > self.max_freq {
            Complex64::new(0.0, 0.0)
        } else {
            self.coeffs[(m + self.max_freq as i64) as usize]
        }
    }

    /// Partial sum `S_n(x) = sum_{|m| <= n} c_m exp(imx)` sampled on `grid`.
    pub fn partial_sum(&self, n: usize, grid: PeriodicGrid) -> Result<SampledFunction1D> {
        self.weighted_synthesis(n, grid, |_| 1.0)
    }

    /// Arithmetic mean of the partial sums `S_0 .. S_n`, via the equivalent
    /// triangular-weight synthesis `sum (1 - |m|/(n+1)) c_m exp(imx)`.
    pub fn fejer_mean(&self, n: usize, grid: PeriodicGrid) -> Result<SampledFunction1D> {
        let denom = (n + 1) as f64;
        self.weighted_synthesis(n, grid, |m| 1.0 - m.unsigned_abs() as f64 / denom)
    }

    /// Full-band synthesis back onto a grid.
    pub fn synthesize(&self, grid: PeriodicGrid) -> Result<SampledFunction1D> {
        self.weighted_synthesis(self.max_freq, grid, |_| 1.0)
    }

    fn weighted_synthesis(
        &self,
        n: usize,
        grid: PeriodicGrid,
        weight: impl Fn(i64) -> f64,
    ) -> Result<SampledFunction1D> {
        if n > self.max_freq {
            return Err(LabError::FrequencyOutOfRange { requested: n, max: self.max_freq });
        }
        if n > grid.max_frequency() {
            return Err(LabError::FrequencyOutOfRange { requested: n, max: grid.max_frequency() });
        }
        let out_n = grid.len();
        let mut d = vec![Complex64::new(0.0, 0.0); out_n];
        for m in -(n as i64)..=(n as i64) {
            let idx = m.rem_euclid(out_n as i64) as usize;
            d[idx] += self.coeff(m) * (parity(m) * weight(m));
        }
        let values = take_real(inverse_fft(d))?;
        SampledFunction1D::from_values(grid, values)
    }
}

/// Fourier coefficients of a 2D sampled function; the first index pairs with
/// `x1`, the second with `x2`.
#[derive(Debug, Clone, PartialEq)]
pub struct FourierSpectrum2D {
    source_n1: usize,
    source_n2: usize,
    max1: usize,
    max2: usize,
    /// coefficient of (m, n) at `(m + max1) * (2*max2 + 1) + (n + max2)`
    coeffs: Vec<Complex64>,
}

impl FourierSpectrum2D {
    pub fn analyze(f: &SampledFunction2D) -> Self {
        let (n1, n2) = (f.grid1().len(), f.grid2().len());
        let (max1, max2) = (n1 / 2 - 1, n2 / 2 - 1);

        // transform along x2 (rows), then along x1 (columns)
        let mut planner = FftPlanner::new();
        let row_fft = planner.plan_fft_forward(n2);
        let col_fft = planner.plan_fft_forward(n1);
        let mut data: Vec<Complex64> = f
            .values()
            .iter()
            .map(|&v| Complex64::new(v, 0.0))
            .collect();
        for row in data.chunks_exact_mut(n2) {
            row_fft.process(row);
        }
        let mut col = vec![Complex64::new(0.0, 0.0); n1];
        for k2 in 0..n2 {
            for j1 in 0..n1 {
                col[j1] = data[j1 * n2 + k2];
            }
            col_fft.process(&mut col);
            for j1 in 0..n1 {
                data[j1 * n2 + k2] = col[j1];
            }
        }

        let norm = 1.0 / (n1 as f64 * n2 as f64);
        let width = 2 * max2 + 1;
        let mut coeffs = vec![Complex64::new(0.0, 0.0); (2 * max1 + 1) * width];
        for m in -(max1 as i64)..=(max1 as i64) {
            let i1 = m.rem_euclid(n1 as i64) as usize;
            for n in -(max2 as i64)..=(max2 as i64) {
                let i2 = n.rem_euclid(n2 as i64) as usize;
                let idx = ((m + max1 as i64) as usize) * width + (n + max2 as i64) as usize;
                coeffs[idx] = data[i1 * n2 + i2] * (parity(m) * parity(n) * norm);
            }
        }
        FourierSpectrum2D { source_n1: n1, source_n2: n2, max1, max2, coeffs }
    }

    pub fn source_len(&self) -> (usize, usize) {
        (self.source_n1, self.source_n2)
    }

    pub fn max_frequencies(&self) -> (usize, usize) {
        (self.max1, self.max2)
    }

    pub fn coeff(&self, m: i64, n: i64) -> Complex64 {
        if m.unsigned_abs() as usize > self.max1 || n.unsigned_abs() as usize > self.max2 {
            Complex64::new(0.0, 0.0)
        } else {
            let width = 2 * self.max2 + 1;
            self.coeffs[((m + self.max1 as i64) as usize) * width + (n + self.max2 as i64) as usize]
        }
    }

    /// Rectangular partial sum over `|m| <= m_cut`, `|n| <= n_cut`.
    pub fn rect_partial_sum(
        &self,
        m_cut: usize,
        n_cut: usize,
        grid1: PeriodicGrid,
        grid2: PeriodicGrid,
    ) -> Result<SampledFunction2D> {
        self.weighted_synthesis(m_cut, n_cut, grid1, grid2, |_, _| 1.0)
    }

    /// Arithmetic mean of the rectangular partial sums `S_ij` over
    /// `i < rows`, `j < cols`, via product triangular weights.
    pub fn cesaro_11_mean(
        &self,
        rows: usize,
        cols: usize,
        grid1: PeriodicGrid,
        grid2: PeriodicGrid,
    ) -> Result<SampledFunction2D> {
        if rows == 0 || cols == 0 || rows > self.max1 + 1 || cols > self.max2 + 1 {
            return Err(LabError::FrequencyOutOfRange {
                requested: rows.max(cols),
                max: self.max1.max(self.max2) + 1,
            });
        }
        let (a, b) = (rows as f64, cols as f64);
        self.weighted_synthesis(rows - 1, cols - 1, grid1, grid2, |m, n| {
            (1.0 - m.unsigned_abs() as f64 / a) * (1.0 - n.unsigned_abs() as f64 / b)
        })
    }

    pub fn synthesize(&self, grid1: PeriodicGrid, grid2: PeriodicGrid) -> Result<SampledFunction2D> {
        self.weighted_synthesis(self.max1, self.max2, grid1, grid2, |_, _| 1.0)
    }

    fn weighted_synthesis(
        &self,
        m_cut: usize,
        n_cut: usize,
        grid1: PeriodicGrid,
        grid2: PeriodicGrid,
        weight: impl Fn(i64, i64) -> f64,
    ) -> Result<SampledFunction2D> {
        if m_cut > self.max1 {
            return Err(LabError::FrequencyOutOfRange { requested: m_cut, max: self.max1 });
        }
        if n_cut > self.max2 {
            return Err(LabError::FrequencyOutOfRange { requested: n_cut, max: self.max2 });
        }
        if m_cut > grid1.max_frequency() || n_cut > grid2.max_frequency() {
            return Err(LabError::FrequencyOutOfRange {
                requested: m_cut.max(n_cut),
                max: grid1.max_frequency().min(grid2.max_frequency()),
            });
        }
        let (n1, n2) = (grid1.len(), grid2.len());
        let mut d = vec![Complex64::new(0.0, 0.0); n1 * n2];
        for m in -(m_cut as i64)..=(m_cut as i64) {
            let i1 = m.rem_euclid(n1 as i64) as usize;
            for n in -(n_cut as i64)..=(n_cut as i64) {
                let i2 = n.rem_euclid(n2 as i64) as usize;
                d[i1 * n2 + i2] += self.coeff(m, n) * (parity(m) * parity(n) * weight(m, n));
            }
        }
        let mut planner = FftPlanner::new();
        let row_fft = planner.plan_fft_inverse(n2);
        let col_fft = planner.plan_fft_inverse(n1);
        for row in d.chunks_exact_mut(n2) {
            row_fft.process(row);
        }
        let mut col = vec![Complex64::new(0.0, 0.0); n1];
        for k2 in 0..n2 {
            for j1 in 0..n1 {
                col[j1] = d[j1 * n2 + k2];
            }
            col_fft.process(&mut col);
            for j1 in 0..n1 {
                d[j1 * n2 + k2] = col[j1];
            }
        }
        let values = take_real(d)?;
        SampledFunction2D::from_values(grid1, grid2, values)
    }
}

/// All rectangular partial sums of one function at one anchor point:
/// `value(i, j) = S_ij(x1, x2)` for every `0 <= i <= max1`, `0 <= j <= max2`.
///
/// Built in `O(max1 * max2)` by prefix-summing the phase-shifted coefficients
/// `a_mn = c_mn exp(i(m x1 + n x2))` over nested index rectangles, instead of
/// recomputing each `S_ij` from scratch. The 1D constructor yields a single
/// column `value(i, 0) = S_i(x)`.
#[derive(Debug, Clone)]
pub struct PrefixField {
    rows: usize,
    cols: usize,
    values: Vec<f64>,
    x1: f64,
    x2: f64,
}

impl PrefixField {
    pub fn from_spectrum_2d(spec: &FourierSpectrum2D, x1: f64, x2: f64) -> Result<Self> {
        let grid1 = PeriodicGrid::new(spec.source_n1)?;
        let grid2 = PeriodicGrid::new(spec.source_n2)?;
        if grid1.index_of(x1).is_none() {
            return Err(LabError::NotAGridPoint { x: x1 });
        }
        if grid2.index_of(x2).is_none() {
            return Err(LabError::NotAGridPoint { x: x2 });
        }
        let (max1, max2) = (spec.max1 as i64, spec.max2 as i64);
        let rows = spec.max1 + 1;
        let cols = spec.max2 + 1;

        // row_prefix[(m + max1), j] = sum_{|n| <= j} a_mn
        let mut row_prefix = vec![Complex64::new(0.0, 0.0); (2 * spec.max1 + 1) * cols];
        for m in -max1..=max1 {
            let e1 = Complex64::from_polar(1.0, m as f64 * x1);
            let base = ((m + max1) as usize) * cols;
            let mut acc = spec.coeff(m, 0) * e1;
            row_prefix[base] = acc;
            for n in 1..=max2 {
                let e2p = Complex64::from_polar(1.0, n as f64 * x2);
                let e2m = Complex64::from_polar(1.0, -(n as f64) * x2);
                acc += spec.coeff(m, n) * e1 * e2p + spec.coeff(m, -n) * e1 * e2m;
                row_prefix[base + n as usize] = acc;
            }
        }

        let mut field = vec![Complex64::new(0.0, 0.0); rows * cols];
        for j in 0..cols {
            field[j] = row_prefix[(max1 as usize) * cols + j];
        }
        for i in 1..rows {
            for j in 0..cols {
                field[i * cols + j] = field[(i - 1) * cols + j]
                    + row_prefix[((max1 + i as i64) as usize) * cols + j]
                    + row_prefix[((max1 - i as i64) as usize) * cols + j];
            }
        }
        let values = take_real(field)?;
        Ok(PrefixField { rows, cols, values, x1, x2 })
    }

    pub fn from_spectrum_1d(spec: &FourierSpectrum1D, x: f64) -> Result<Self> {
        let grid = PeriodicGrid::new(spec.source_n)?;
        if grid.index_of(x).is_none() {
            return Err(LabError::NotAGridPoint { x });
        }
        let rows = spec.max_freq + 1;
        let mut field = Vec::with_capacity(rows);
        let mut acc = spec.coeff(0);
        field.push(acc);
        for m in 1..=spec.max_freq as i64 {
            acc += spec.coeff(m) * Complex64::from_polar(1.0, m as f64 * x)
                + spec.coeff(-m) * Complex64::from_polar(1.0, -(m as f64) * x);
            field.push(acc);
        }
        let values = take_real(field)?;
        Ok(PrefixField { rows, cols: 1, values, x1: x, x2: 0.0 })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    /// `S_ij` at the anchor point.
    pub fn value(&self, i: usize, j: usize) -> f64 {
        self.values[i * self.cols + j]
    }

    pub fn point(&self) -> (f64, f64) {
        (self.x1, self.x2)
    }
}
