//! The Gauss-Legendre sampling grid and the flat containers living on it.
//!
//! Signals are stored with `theta` outermost: sample `(v, u, w)` sits at
//! `(v * (2L-1) + u) * (2L-1) + w`, so each fixed-`theta` slab over
//! `(phi_u, omega_w)` is contiguous. Spectra store `f^l_{m,n}` at
//! [`coeff_index`].

use std::f64::consts::TAU;

use num_complex::Complex64;

use crate::quadrature::{gl_nodes, GlNodes};
use crate::{Error, Result};

/// Largest supported band limit. Accuracy is validated up to `L = 128`.
pub const MAX_BAND_LIMIT: usize = 2048;

/// Band limit `L`: every signal has zero Fourier coefficients at degree `l >= L`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BandLimit(usize);

impl BandLimit {
    pub fn new(l: usize) -> Result<Self> {
        if l == 0 || l > MAX_BAND_LIMIT {
            return Err(Error::BandLimitOutOfRange {
                band_limit: l,
                max: MAX_BAND_LIMIT,
            });
        }
        Ok(Self(l))
    }

    #[inline]
    pub fn get(self) -> usize {
        self.0
    }

    /// Number of equiangular samples along `phi` and along `omega`, `2L-1`.
    #[inline]
    pub fn side(self) -> usize {
        2 * self.0 - 1
    }

    /// `L(2L-1)^2`.
    #[inline]
    pub fn sample_count(self) -> usize {
        self.0 * self.side() * self.side()
    }

    /// `d_L = L(2L-1)(2L+1)/3`.
    #[inline]
    pub fn dimension(self) -> usize {
        degree_offset(self.0)
    }
}

impl std::fmt::Display for BandLimit {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        self.0.fmt(f)
    }
}

/// Number of coefficients with degree below `l`.
#[inline]
fn degree_offset(l: usize) -> usize {
    // l(2l-1)(2l+1)/3 = l(4l^2-1)/3, exact in integers.
    l * (4 * l * l).saturating_sub(1) / 3
}

/// Dimension `d_L` of the space of signals band-limited at `L`.
pub fn dimension(l: usize) -> usize {
    degree_offset(l)
}

/// Total number of samples `N = L(2L-1)^2` of the Gauss-Legendre grid.
pub fn sample_count(l: usize) -> usize {
    if l == 0 {
        return 0;
    }
    l * (2 * l - 1) * (2 * l - 1)
}

/// Flat position of `f^l_{m,n}` in an [`So3Spectrum`].
///
/// Degrees are laid out one after another; within degree `l` the
/// `(2l+1) x (2l+1)` block is row-major in `m`.
pub fn coeff_index(l: usize, m: i64, n: i64) -> Result<usize> {
    let li = l as i64;
    if m.abs() > li || n.abs() > li {
        return Err(Error::OrderOutOfRange { degree: l, m, n });
    }
    let width = 2 * l + 1;
    Ok(degree_offset(l) + (m + li) as usize * width + (n + li) as usize)
}

/// The sampling grid: `2L-1` equiangular `phi` and `omega` samples and the
/// `L` Gauss-Legendre colatitudes.
#[derive(Debug, Clone)]
pub struct GlGrid {
    band_limit: BandLimit,
    phi: Vec<f64>,
    nodes: GlNodes,
}

impl GlGrid {
    pub fn new(band_limit: BandLimit) -> Result<Self> {
        let side = band_limit.side();
        let phi = (0..side)
            .map(|u| TAU * u as f64 / side as f64)
            .collect();
        Ok(Self {
            band_limit,
            phi,
            nodes: gl_nodes(band_limit)?,
        })
    }

    pub fn band_limit(&self) -> BandLimit {
        self.band_limit
    }

    pub fn phi(&self) -> &[f64] {
        &self.phi
    }

    /// Identical to [`phi`](Self::phi); the two periodic axes share one sampling.
    pub fn omega(&self) -> &[f64] {
        &self.phi
    }

    pub fn nodes(&self) -> &GlNodes {
        &self.nodes
    }

    pub fn theta(&self) -> &[f64] {
        self.nodes.theta()
    }

    pub fn weights(&self) -> &[f64] {
        self.nodes.weights()
    }

    pub fn sample_count(&self) -> usize {
        self.band_limit.sample_count()
    }
}

/// Builds the grid for band limit `l`.
pub fn build_grid(l: usize) -> Result<GlGrid> {
    GlGrid::new(BandLimit::new(l)?)
}

/// Complex samples `f(phi_u, theta_v, omega_w)` over a [`GlGrid`].
#[derive(Debug, Clone, PartialEq)]
pub struct So3Signal {
    band_limit: BandLimit,
    data: Vec<Complex64>,
}

impl So3Signal {
    pub fn zeros(band_limit: BandLimit) -> Self {
        Self {
            band_limit,
            data: vec![Complex64::new(0.0, 0.0); band_limit.sample_count()],
        }
    }

    pub fn from_vec(band_limit: BandLimit, data: Vec<Complex64>) -> Result<Self> {
        check_payload(band_limit.sample_count(), &data)?;
        Ok(Self { band_limit, data })
    }

    /// Samples `f` at every grid point.
    pub fn from_fn(grid: &GlGrid, mut f: impl FnMut(f64, f64, f64) -> Complex64) -> Self {
        let band_limit = grid.band_limit();
        let mut data = Vec::with_capacity(band_limit.sample_count());
        for &theta in grid.theta() {
            for &phi in grid.phi() {
                for &omega in grid.omega() {
                    data.push(f(phi, theta, omega));
                }
            }
        }
        Self { band_limit, data }
    }

    pub fn band_limit(&self) -> BandLimit {
        self.band_limit
    }

    #[inline]
    pub fn index(&self, v: usize, u: usize, w: usize) -> usize {
        let side = self.band_limit.side();
        (v * side + u) * side + w
    }

    #[inline]
    pub fn get(&self, v: usize, u: usize, w: usize) -> Complex64 {
        self.data[self.index(v, u, w)]
    }

    pub fn as_slice(&self) -> &[Complex64] {
        &self.data
    }

    pub fn as_mut_slice(&mut self) -> &mut [Complex64] {
        &mut self.data
    }

    /// The contiguous `(2L-1) x (2L-1)` slab at colatitude `theta_v`.
    pub fn slab(&self, v: usize) -> &[Complex64] {
        let len = self.band_limit.side().pow(2);
        &self.data[v * len..(v + 1) * len]
    }

    pub fn into_vec(self) -> Vec<Complex64> {
        self.data
    }
}

/// Fourier coefficients `f^l_{m,n}` for `l < L`, ordered by [`coeff_index`].
#[derive(Debug, Clone, PartialEq)]
pub struct So3Spectrum {
    band_limit: BandLimit,
    data: Vec<Complex64>,
}

impl So3Spectrum {
    pub fn zeros(band_limit: BandLimit) -> Self {
        Self {
            band_limit,
            data: vec![Complex64::new(0.0, 0.0); band_limit.dimension()],
        }
    }

    pub fn from_vec(band_limit: BandLimit, data: Vec<Complex64>) -> Result<Self> {
        check_payload(band_limit.dimension(), &data)?;
        Ok(Self { band_limit, data })
    }

    pub fn band_limit(&self) -> BandLimit {
        self.band_limit
    }

    fn checked_index(&self, l: usize, m: i64, n: i64) -> Result<usize> {
        if l >= self.band_limit.get() {
            return Err(Error::DegreeOutOfRange {
                degree: l,
                band_limit: self.band_limit.get(),
            });
        }
        coeff_index(l, m, n)
    }

    /// `f^l_{m,n}`, or zero when `|m| > l` or `|n| > l`.
    pub fn get(&self, l: usize, m: i64, n: i64) -> Result<Complex64> {
        match self.checked_index(l, m, n) {
            Ok(i) => Ok(self.data[i]),
            Err(Error::OrderOutOfRange { .. }) => Ok(Complex64::new(0.0, 0.0)),
            Err(e) => Err(e),
        }
    }

    pub fn set(&mut self, l: usize, m: i64, n: i64, value: Complex64) -> Result<()> {
        let i = self.checked_index(l, m, n)?;
        self.data[i] = value;
        Ok(())
    }

    pub fn as_slice(&self) -> &[Complex64] {
        &self.data
    }

    pub fn as_mut_slice(&mut self) -> &mut [Complex64] {
        &mut self.data
    }

    pub fn into_vec(self) -> Vec<Complex64> {
        self.data
    }

    /// Iterates `(l, m, n, f^l_{m,n})` in storage order.
    pub fn iter(&self) -> impl Iterator<Item = (usize, i64, i64, Complex64)> + '_ {
        (0..self.band_limit.get()).flat_map(move |l| {
            let li = l as i64;
            (-li..=li).flat_map(move |m| {
                (-li..=li).map(move |n| (l, m, n, self.data[coeff_index(l, m, n).unwrap()]))
            })
        })
    }
}

fn check_payload(expected: usize, data: &[Complex64]) -> Result<()> {
    if data.len() != expected {
        return Err(Error::Shape {
            expected,
            found: data.len(),
        });
    }
    if let Some(bad) = data.iter().find(|z| !z.re.is_finite() || !z.im.is_finite()) {
        return Err(Error::Numerical(format!("non-finite value {bad}")));
    }
    Ok(())
}
