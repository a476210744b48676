//! Built-in test-function corpus.
//!
//! Every entry is a closed-form rule that can be sampled at any resolution;
//! regenerating at two resolutions agrees exactly at shared grid points.
//! Entries carry membership tags (continuous / trigonometric polynomial /
//! integrable-with-logarithm) that record the analytic facts about the
//! underlying function; the tags are never inferred numerically.
//!
//! Singular entries blow up at the origin. The sample in the singular cell is
//! replaced by the cell average, computed by 64-point midpoint subsampling of
//! the closed form over that cell; the rule is part of the entry's contract.

use crate::error::{LabError, Result};
use crate::grid::{PeriodicGrid, SampledFunction1D, SampledFunction2D, TWO_PI};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha20Rng;

const SUBSAMPLES: usize = 64;
/// Guaranteed magnitude of the top-degree harmonic of random polynomials,
/// so that truncation below the degree stays detectable.
const TOP_COEFF_FLOOR: f64 = 0.3;

/// Analytic membership tags of a corpus entry.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Membership {
    pub continuous: bool,
    /// Degree pair for trigonometric polynomials; second component 0 in 1D.
    pub trig_poly_degree: Option<(u32, u32)>,
    /// True when |f| log+|f| is integrable; false marks the L1-only entries.
    pub llogl: bool,
}

/// One-dimensional corpus entries.
#[derive(Debug, Clone, PartialEq)]
pub enum Corpus1d {
    Constant(f64),
    Cosine(u32),
    /// Random trigonometric polynomial of the given degree; the coefficient
    /// set is a pure function of the seed.
    TrigPoly { degree: u32, seed: u64 },
    /// Indicator of the interval [a, b) inside [-pi, pi).
    Box { a: f64, b: f64 },
    /// f(x) = log(2*pi/|x|); integrable with logarithm, unbounded at 0.
    LogSingular,
    /// f(x) = 1/(|x| log^2(2*pi/|x|)); integrable, but |f| log+|f| is not.
    L1Only,
}

/// Two-dimensional corpus entries.
#[derive(Debug, Clone, PartialEq)]
pub enum Corpus2d {
    /// Random trigonometric polynomial of degree (deg1, deg2).
    TrigPoly { deg1: u32, deg2: u32, seed: u64 },
    /// Tensor product f(x1, x2) = g1(x1) * g2(x2) of two 1D entries.
    Tensor(Corpus1d, Corpus1d),
}

/// A corpus entry of either dimension, as named on the command line.
#[derive(Debug, Clone, PartialEq)]
pub enum Corpus {
    One(Corpus1d),
    Two(Corpus2d),
}

struct TrigCoeffs1d {
    cos: Vec<f64>,
    sin: Vec<f64>,
}

fn trig_coeffs_1d(degree: u32, seed: u64) -> TrigCoeffs1d {
    let s = degree as usize;
    let mut rng = ChaCha20Rng::seed_from_u64(seed);
    let mut cos = vec![0.0; s + 1];
    let mut sin = vec![0.0; s + 1];
    cos[0] = rng.gen_range(-1.0..1.0);
    for m in 1..=s {
        cos[m] = rng.gen_range(-1.0..1.0);
        sin[m] = rng.gen_range(-1.0..1.0);
    }
    if s >= 1 {
        // re-draw the top harmonic in polar form with a magnitude floor
        let r = TOP_COEFF_FLOOR + (1.0 - TOP_COEFF_FLOOR) * rng.gen_range(0.0..1.0);
        let theta = rng.gen_range(0.0..TWO_PI);
        cos[s] = r * theta.cos();
        sin[s] = r * theta.sin();
    }
    TrigCoeffs1d { cos, sin }
}

struct TrigCoeffs2d {
    deg1: usize,
    deg2: usize,
    /// (cc, cs, sc, ss) per (m, n), row-major over m then n.
    terms: Vec<[f64; 4]>,
}

fn trig_coeffs_2d(deg1: u32, deg2: u32, seed: u64) -> TrigCoeffs2d {
    let (s1, s2) = (deg1 as usize, deg2 as usize);
    let mut rng = ChaCha20Rng::seed_from_u64(seed);
    let mut terms = vec![[0.0; 4]; (s1 + 1) * (s2 + 1)];
    for m in 0..=s1 {
        for n in 0..=s2 {
            let mut t = [
                rng.gen_range(-1.0..1.0),
                rng.gen_range(-1.0..1.0),
                rng.gen_range(-1.0..1.0),
                rng.gen_range(-1.0..1.0),
            ];
            if m == 0 {
                t[2] = 0.0;
                t[3] = 0.0;
            }
            if n == 0 {
                t[1] = 0.0;
                t[3] = 0.0;
            }
            terms[m * (s2 + 1) + n] = t;
        }
    }
    // magnitude floor on the cos*cos corner so the degree is detectable
    let r = TOP_COEFF_FLOOR + (1.0 - TOP_COEFF_FLOOR) * rng.gen_range(0.0..1.0);
    let sign = if rng.gen_range(0.0..1.0) < 0.5 { -1.0 } else { 1.0 };
    terms[s1 * (s2 + 1) + s2][0] = sign * r;
    TrigCoeffs2d { deg1: s1, deg2: s2, terms }
}

impl Corpus1d {
    /// Canonical compact name, parseable by [`Corpus::parse`].
    pub fn name(&self) -> String {
        match self {
            Corpus1d::Constant(c) => format!("constant:{c}"),
            Corpus1d::Cosine(k) => format!("cosine:{k}"),
            Corpus1d::TrigPoly { degree, seed } => format!("random-trigpoly:{degree},{seed}"),
            Corpus1d::Box { a, b } => format!("box:{a},{b}"),
            Corpus1d::LogSingular => "log-singular".to_string(),
            Corpus1d::L1Only => "l1-only".to_string(),
        }
    }

    pub fn membership(&self) -> Membership {
        match self {
            Corpus1d::Constant(_) => Membership {
                continuous: true,
                trig_poly_degree: Some((0, 0)),
                llogl: true,
            },
            Corpus1d::Cosine(k) => Membership {
                continuous: true,
                trig_poly_degree: Some((*k, 0)),
                llogl: true,
            },
            Corpus1d::TrigPoly { degree, .. } => Membership {
                continuous: true,
                trig_poly_degree: Some((*degree, 0)),
                llogl: true,
            },
            Corpus1d::Box { .. } => Membership {
                continuous: false,
                trig_poly_degree: None,
                llogl: true,
            },
            Corpus1d::LogSingular => Membership {
                continuous: false,
                trig_poly_degree: None,
                llogl: true,
            },
            Corpus1d::L1Only => Membership {
                continuous: false,
                trig_poly_degree: None,
                llogl: false,
            },
        }
    }

    /// True for entries whose closed form blows up at the origin.
    pub fn singular_at_origin(&self) -> bool {
        matches!(self, Corpus1d::LogSingular | Corpus1d::L1Only)
    }

    /// Closed-form value at an arbitrary point. Singular entries return
    /// infinity at x = 0; [`Corpus1d::sample`] replaces that cell by its
    /// subsampled average.
    pub fn eval_at(&self, x: f64) -> f64 {
        match self {
            Corpus1d::Constant(c) => *c,
            Corpus1d::Cosine(k) => (*k as f64 * x).cos(),
            Corpus1d::TrigPoly { degree, seed } => {
                let coeffs = trig_coeffs_1d(*degree, *seed);
                eval_trig_1d(&coeffs, x)
            }
            Corpus1d::Box { a, b } => {
                if x >= *a && x < *b {
                    1.0
                } else {
                    0.0
                }
            }
            Corpus1d::LogSingular => (TWO_PI / x.abs()).ln(),
            Corpus1d::L1Only => {
                let l = (TWO_PI / x.abs()).ln();
                1.0 / (x.abs() * l * l)
            }
        }
    }

    pub fn sample(&self, grid: PeriodicGrid) -> Result<SampledFunction1D> {
        // trig coefficients are drawn once, not per point
        if let Corpus1d::TrigPoly { degree, seed } = self {
            let coeffs = trig_coeffs_1d(*degree, *seed);
            return SampledFunction1D::from_fn(grid, |x| eval_trig_1d(&coeffs, x));
        }
        let mut values: Vec<f64> = grid.points().map(|x| self.eval_at(x)).collect();
        if self.singular_at_origin() {
            let j = grid
                .index_of(0.0)
                .expect("power-of-two grids contain the origin");
            values[j] = self.cell_average(grid.point(j), grid.cell_width());
        }
        SampledFunction1D::from_values(grid, values)
    }

    /// Midpoint subsample average of the closed form over [start, start + h).
    fn cell_average(&self, start: f64, h: f64) -> f64 {
        let mut acc = 0.0;
        for i in 0..SUBSAMPLES {
            let t = start + (i as f64 + 0.5) * h / SUBSAMPLES as f64;
            acc += self.eval_at(t);
        }
        acc / SUBSAMPLES as f64
    }
}

fn eval_trig_1d(coeffs: &TrigCoeffs1d, x: f64) -> f64 {
    let mut acc = coeffs.cos[0];
    for m in 1..coeffs.cos.len() {
        let mx = m as f64 * x;
        acc += coeffs.cos[m] * mx.cos() + coeffs.sin[m] * mx.sin();
    }
    acc
}

fn eval_trig_2d(coeffs: &TrigCoeffs2d, x1: f64, x2: f64) -> f64 {
    let mut acc = 0.0;
    for m in 0..=coeffs.deg1 {
        let (c1, s1v) = ((m as f64 * x1).cos(), (m as f64 * x1).sin());
        for n in 0..=coeffs.deg2 {
            let (c2, s2v) = ((n as f64 * x2).cos(), (n as f64 * x2).sin());
            let t = coeffs.terms[m * (coeffs.deg2 + 1) + n];
            acc += t[0] * c1 * c2 + t[1] * c1 * s2v + t[2] * s1v * c2 + t[3] * s1v * s2v;
        }
    }
    acc
}

impl Corpus2d {
    /// The canonical integrable product singularity, log-singular in each axis.
    pub fn product_log_singular() -> Self {
        Corpus2d::Tensor(Corpus1d::LogSingular, Corpus1d::LogSingular)
    }

    pub fn name(&self) -> String {
        match self {
            Corpus2d::TrigPoly { deg1, deg2, seed } => {
                format!("random-trigpoly:{deg1},{deg2},{seed}")
            }
            Corpus2d::Tensor(Corpus1d::LogSingular, Corpus1d::LogSingular) => {
                "product-log-singular".to_string()
            }
            Corpus2d::Tensor(f1, f2) => format!("tensor:{}*{}", f1.name(), f2.name()),
        }
    }

    pub fn membership(&self) -> Membership {
        match self {
            Corpus2d::TrigPoly { deg1, deg2, .. } => Membership {
                continuous: true,
                trig_poly_degree: Some((*deg1, *deg2)),
                llogl: true,
            },
            Corpus2d::Tensor(f1, f2) => {
                let (m1, m2) = (f1.membership(), f2.membership());
                let trig = match (m1.trig_poly_degree, m2.trig_poly_degree) {
                    (Some((a, _)), Some((b, _))) => Some((a, b)),
                    _ => None,
                };
                Membership {
                    continuous: m1.continuous && m2.continuous,
                    trig_poly_degree: trig,
                    llogl: m1.llogl && m2.llogl,
                }
            }
        }
    }

    pub fn sample(&self, grid1: PeriodicGrid, grid2: PeriodicGrid) -> Result<SampledFunction2D> {
        match self {
            Corpus2d::TrigPoly { deg1, deg2, seed } => {
                let coeffs = trig_coeffs_2d(*deg1, *deg2, *seed);
                SampledFunction2D::from_fn(grid1, grid2, |x1, x2| eval_trig_2d(&coeffs, x1, x2))
            }
            Corpus2d::Tensor(f1, f2) => {
                let g1 = f1.sample(grid1)?;
                let g2 = f2.sample(grid2)?;
                let mut values = Vec::with_capacity(grid1.len() * grid2.len());
                for i in 0..grid1.len() {
                    for j in 0..grid2.len() {
                        values.push(g1.value(i) * g2.value(j));
                    }
                }
                SampledFunction2D::from_values(grid1, grid2, values)
            }
        }
    }
}

impl Corpus {
    pub fn name(&self) -> String {
        match self {
            Corpus::One(c) => c.name(),
            Corpus::Two(c) => c.name(),
        }
    }

    pub fn membership(&self) -> Membership {
        match self {
            Corpus::One(c) => c.membership(),
            Corpus::Two(c) => c.membership(),
        }
    }

    /// Parses a compact entry name of the form `family[:param[,param...]]`.
    pub fn parse(name: &str) -> Result<Corpus> {
        let err = || LabError::UnknownCorpusEntry { name: name.to_string() };
        let (family, args) = match name.split_once(':') {
            Some((f, a)) => (f, a),
            None => (name, ""),
        };
        match family {
            "constant" => {
                let c: f64 = args.parse().map_err(|_| err())?;
                Ok(Corpus::One(Corpus1d::Constant(c)))
            }
            "cosine" => {
                let k: u32 = args.parse().map_err(|_| err())?;
                Ok(Corpus::One(Corpus1d::Cosine(k)))
            }
            "random-trigpoly" => {
                let parts: Vec<&str> = args.split(',').collect();
                match parts.len() {
                    2 => {
                        let degree: u32 = parts[0].parse().map_err(|_| err())?;
                        let seed: u64 = parts[1].parse().map_err(|_| err())?;
                        Ok(Corpus::One(Corpus1d::TrigPoly { degree, seed }))
                    }
                    3 => {
                        let deg1: u32 = parts[0].parse().map_err(|_| err())?;
                        let deg2: u32 = parts[1].parse().map_err(|_| err())?;
                        let seed: u64 = parts[2].parse().map_err(|_| err())?;
                        Ok(Corpus::Two(Corpus2d::TrigPoly { deg1, deg2, seed }))
                    }
                    _ => Err(err()),
                }
            }
            "box" => {
                let parts: Vec<&str> = args.split(',').collect();
                if parts.len() != 2 {
                    return Err(err());
                }
                let a: f64 = parts[0].parse().map_err(|_| err())?;
                let b: f64 = parts[1].parse().map_err(|_| err())?;
                if !(-std::f64::consts::PI..=std::f64::consts::PI).contains(&a) || b <= a {
                    return Err(err());
                }
                Ok(Corpus::One(Corpus1d::Box { a, b }))
            }
            "log-singular" => Ok(Corpus::One(Corpus1d::LogSingular)),
            "l1-only" => Ok(Corpus::One(Corpus1d::L1Only)),
            "product-log-singular" => Ok(Corpus::Two(Corpus2d::product_log_singular())),
            "tensor" => {
                let (left, right) = args.split_once('*').ok_or_else(err)?;
                let f1 = match Corpus::parse(left)? {
                    Corpus::One(c) => c,
                    Corpus::Two(_) => return Err(err()),
                };
                let f2 = match Corpus::parse(right)? {
                    Corpus::One(c) => c,
                    Corpus::Two(_) => return Err(err()),
                };
                Ok(Corpus::Two(Corpus2d::Tensor(f1, f2)))
            }
            _ => Err(err()),
        }
    }
}
