//! summalab: a numerical laboratory for strong and exponential summability
//! of one- and two-dimensional trigonometric Fourier series.
//!
//! The library samples periodic functions on power-of-two grids, computes
//! partial sums, Fejér and double arithmetic means, strong p-means and
//! exponential growth-function means, the Hardy-Littlewood maximal function,
//! the Gabisonia operator family, dyadic Calderon-Zygmund decompositions,
//! Oskolkov interval sums, and the t log+ t Orlicz modular and Luxemburg
//! norm. The `experiments` module wires all of this into named, seeded,
//! byte-deterministic verification suites driven by the `summalab` binary.

pub mod corpus;
pub mod czd;
pub mod error;
pub mod grid;
pub mod means;
pub mod operators;
pub mod orlicz;
pub mod phi;
pub mod spectrum;

pub use error::{LabError, Result};
