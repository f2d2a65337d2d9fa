//! Gauss-Legendre sampling on the rotation group SO(3).
//!
//! A signal band-limited at degree `L` is sampled on `2L-1` equiangular points
//! along each of the Euler angles `phi` and `omega`, and on the `L` roots of the
//! Legendre polynomial `P_L(cos theta)` along `theta`. That is `L(2L-1)^2`
//! samples for `L(2L-1)(2L+1)/3` Fourier coefficients, an asymptotic sampling
//! efficiency of one third. The forward and inverse Wigner-D transforms on
//! this grid are exact up to floating point rounding and run in `O(L^4)`.
//!
//! Module map:
//!
//! - [`wigner`]: Wigner-d matrices at `pi/2` (the `Delta` table) and Wigner-d/D values
//! - [`quadrature`]: Legendre polynomials and the Gauss-Legendre nodes and weights
//! - [`grid`]: the sampling grid, sample and coefficient containers, index maps
//! - [`spectral`]: odd-length 2D DFTs over the two periodic Euler angles
//! - [`transforms`]: fast forward/inverse transforms and direct reference versions
//! - [`analysis`]: the round-trip accuracy experiment
//! - [`cli`]: the command line front end and the binary `.so3` file format

pub mod analysis;
pub mod cli;
mod error;
pub mod grid;
pub mod quadrature;
pub mod spectral;
pub mod transforms;
pub mod wigner;

pub use error::{Error, Result};
pub use grid::{coeff_index, dimension, sample_count, BandLimit, GlGrid, So3Signal, So3Spectrum};
pub use quadrature::{gl_nodes, legendre, GlNodes};
pub use transforms::{forward, forward_direct, inverse, inverse_direct};
pub use wigner::{build_delta_table, wigner_big_d, wigner_d, DeltaTable};

pub use num_complex::Complex64;
