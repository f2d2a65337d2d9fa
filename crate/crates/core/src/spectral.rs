//! Two-dimensional DFTs over the periodic Euler angles `phi` and `omega`.
//!
//! With `N = 2L-1` samples per axis, the analysis direction is
//!
//! ```text
//! A[m][n] = N^{-2} sum_u sum_w slab[u][w] e^{+i(n omega_w + m phi_u)}
//! ```
//!
//! and synthesis is its exact inverse,
//! `slab[u][w] = sum_m sum_n A[m][n] e^{-i(n omega_w + m phi_u)}`.
//! Signed order `o` in `-(L-1)..=L-1` lives at bin `o mod N`. `N` is odd and in
//! general not a power of two; the 1D transforms come from `rustfft`, which
//! plans mixed-radix, Rader or Bluestein algorithms for any length.

use std::sync::Arc;

use num_complex::Complex64;
use rustfft::{Fft, FftPlanner};

use crate::grid::BandLimit;
use crate::{Error, Result};

/// Bin holding signed order `o` on an axis of odd length `side`.
#[inline]
pub fn order_bin(o: i64, side: usize) -> usize {
    o.rem_euclid(side as i64) as usize
}

/// Partial Fourier coefficients `A[m][n]` for `|m|, |n| <= L-1` at one colatitude.
#[derive(Debug, Clone, PartialEq)]
pub struct OrderSpectrum2D {
    band_limit: BandLimit,
    data: Vec<Complex64>,
}

impl OrderSpectrum2D {
    pub fn zeros(band_limit: BandLimit) -> Self {
        let side = band_limit.side();
        Self {
            band_limit,
            data: vec![Complex64::new(0.0, 0.0); side * side],
        }
    }

    /// Wraps a `(2L-1) x (2L-1)` bin-ordered block.
    pub fn from_bins(band_limit: BandLimit, data: Vec<Complex64>) -> Result<Self> {
        let expected = band_limit.side().pow(2);
        if data.len() != expected {
            return Err(Error::Shape {
                expected,
                found: data.len(),
            });
        }
        Ok(Self { band_limit, data })
    }

    pub fn band_limit(&self) -> BandLimit {
        self.band_limit
    }

    #[inline]
    fn at(&self, m: i64, n: i64) -> usize {
        let side = self.band_limit.side();
        let lim = self.band_limit.get() as i64 - 1;
        assert!(m.abs() <= lim && n.abs() <= lim, "order ({m},{n}) out of range");
        order_bin(m, side) * side + order_bin(n, side)
    }

    pub fn get(&self, m: i64, n: i64) -> Complex64 {
        self.data[self.at(m, n)]
    }

    pub fn set(&mut self, m: i64, n: i64, value: Complex64) {
        let i = self.at(m, n);
        self.data[i] = value;
    }

    /// Bin-ordered storage, row index `m mod N`, column `n mod N`.
    pub fn bins(&self) -> &[Complex64] {
        &self.data
    }

    pub fn into_bins(self) -> Vec<Complex64> {
        self.data
    }
}

/// Planned square 2D transform of odd side length.
///
/// Holds only immutable FFT plans, so one instance may be shared across
/// threads; each call brings its own scratch buffer.
#[derive(Clone)]
pub struct Dft2 {
    side: usize,
    // e^{+i...}: analysis
    positive: Arc<dyn Fft<f64>>,
    // e^{-i...}: synthesis
    negative: Arc<dyn Fft<f64>>,
}

impl std::fmt::Debug for Dft2 {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Dft2").field("side", &self.side).finish()
    }
}

impl Dft2 {
    pub fn new(side: usize) -> Result<Self> {
        if side % 2 == 0 {
            return Err(Error::Shape {
                expected: side + 1,
                found: side,
            });
        }
        let mut planner = FftPlanner::new();
        Ok(Self {
            side,
            positive: planner.plan_fft_inverse(side),
            negative: planner.plan_fft_forward(side),
        })
    }

    pub fn side(&self) -> usize {
        self.side
    }

    pub fn scratch_len(&self) -> usize {
        self.positive
            .get_inplace_scratch_len()
            .max(self.negative.get_inplace_scratch_len())
    }

    /// In-place analysis of a row-major `side x side` slab, including the `1/side^2` factor.
    pub fn analysis_in_place(&self, slab: &mut [Complex64], scratch: &mut [Complex64]) {
        self.run(&*self.positive, slab, scratch);
        let scale = 1.0 / (self.side * self.side) as f64;
        for z in slab.iter_mut() {
            *z *= scale;
        }
    }

    /// In-place synthesis of a bin-ordered `side x side` block.
    pub fn synthesis_in_place(&self, block: &mut [Complex64], scratch: &mut [Complex64]) {
        self.run(&*self.negative, block, scratch);
    }

    fn run(&self, fft: &dyn Fft<f64>, data: &mut [Complex64], scratch: &mut [Complex64]) {
        debug_assert_eq!(data.len(), self.side * self.side);
        let scratch = &mut scratch[..fft.get_inplace_scratch_len()];
        fft.process_with_scratch(data, scratch);
        transpose_square(data, self.side);
        fft.process_with_scratch(data, scratch);
        transpose_square(data, self.side);
    }
}

fn transpose_square(data: &mut [Complex64], side: usize) {
    for r in 0..side {
        for c in r + 1..side {
            data.swap(r * side + c, c * side + r);
        }
    }
}

fn check_slab(len: usize) -> Result<usize> {
    let side = (len as f64).sqrt().round() as usize;
    if side * side != len || side % 2 == 0 {
        let odd = side | 1;
        return Err(Error::Shape {
            expected: odd * odd,
            found: len,
        });
    }
    Ok(side)
}

/// Computes `A[m][n]` from a row-major `(2L-1) x (2L-1)` slab indexed `[u][w]`.
pub fn analysis_dft2(slab: &[Complex64]) -> Result<OrderSpectrum2D> {
    let side = check_slab(slab.len())?;
    let band_limit = BandLimit::new(side.div_ceil(2))?;
    let dft = Dft2::new(side)?;
    let mut data = slab.to_vec();
    let mut scratch = vec![Complex64::default(); dft.scratch_len()];
    dft.analysis_in_place(&mut data, &mut scratch);
    OrderSpectrum2D::from_bins(band_limit, data)
}

/// Samples `sum_{m,n} A[m][n] e^{-i(n omega_w + m phi_u)}` on the `(u, w)` grid.
pub fn synthesis_dft2(spectrum: &OrderSpectrum2D) -> Vec<Complex64> {
    let dft = Dft2::new(spectrum.band_limit().side()).expect("odd side");
    let mut data = spectrum.bins().to_vec();
    let mut scratch = vec![Complex64::default(); dft.scratch_len()];
    dft.synthesis_in_place(&mut data, &mut scratch);
    data
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;
    use std::f64::consts::TAU;

    fn random_slab(side: usize, seed: u64) -> Vec<Complex64> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        (0..side * side)
            .map(|_| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
            .collect()
    }

    fn angle(k: usize, side: usize) -> f64 {
        TAU * k as f64 / side as f64
    }

    /// The literal double sum.
    fn naive_analysis(slab: &[Complex64], side: usize, m: i64, n: i64) -> Complex64 {
        let mut acc = Complex64::default();
        for u in 0..side {
            for w in 0..side {
                let ph = n as f64 * angle(w, side) + m as f64 * angle(u, side);
                acc += slab[u * side + w] * Complex64::from_polar(1.0, ph);
            }
        }
        acc / (side * side) as f64
    }

    #[test]
    fn constant_slab() {
        let c = Complex64::new(0.3, -1.7);
        let a = analysis_dft2(&vec![c; 49]).unwrap();
        for m in -3..=3 {
            for n in -3..=3 {
                let expect = if m == 0 && n == 0 { c } else { Complex64::default() };
                assert!((a.get(m, n) - expect).norm() < 1e-14);
            }
        }
    }

    #[test]
    fn single_mode() {
        let side = 5;
        let slab: Vec<_> = (0..side * side)
            .map(|i| {
                let (u, w) = (i / side, i % side);
                Complex64::from_polar(1.0, -(angle(u, side) + 2.0 * angle(w, side)))
            })
            .collect();
        let a = analysis_dft2(&slab).unwrap();
        for m in -2..=2 {
            for n in -2..=2 {
                let expect = if (m, n) == (1, 2) { 1.0 } else { 0.0 };
                assert!((a.get(m, n) - expect).norm() < 1e-14, "({m},{n})");
            }
        }
    }

    #[test]
    fn matches_naive_double_sum() {
        for (side, seed) in [(1, 0), (3, 1), (5, 2), (9, 3), (15, 4)] {
            let slab = random_slab(side, seed);
            let a = analysis_dft2(&slab).unwrap();
            let lim = (side / 2) as i64;
            for m in -lim..=lim {
                for n in -lim..=lim {
                    let want = naive_analysis(&slab, side, m, n);
                    assert!((a.get(m, n) - want).norm() < 1e-13);
                }
            }
        }
    }

    #[test]
    fn synthesis_examples() {
        let b = BandLimit::new(3).unwrap();
        let mut a = OrderSpectrum2D::zeros(b);
        let c = Complex64::new(2.0, 1.0);
        a.set(0, 0, c);
        assert!(synthesis_dft2(&a).iter().all(|z| (z - c).norm() < 1e-14));

        let mut a = OrderSpectrum2D::zeros(b);
        a.set(-1, 0, Complex64::new(1.0, 0.0));
        let s = synthesis_dft2(&a);
        for u in 0..5 {
            for w in 0..5 {
                let want = Complex64::from_polar(1.0, angle(u, 5));
                assert!((s[u * 5 + w] - want).norm() < 1e-14);
            }
        }
    }

    #[test]
    fn round_trip_and_parseval() {
        for side in [1usize, 7, 31, 101, 257] {
            let slab = random_slab(side, side as u64);
            let a = analysis_dft2(&slab).unwrap();
            let back = synthesis_dft2(&a);
            for (x, y) in slab.iter().zip(&back) {
                assert!((x - y).norm() < 1e-13);
            }
            let e_slab: f64 = slab.iter().map(|z| z.norm_sqr()).sum();
            let e_a: f64 = a.bins().iter().map(|z| z.norm_sqr()).sum();
            let rel = (e_slab - (side * side) as f64 * e_a).abs() / e_slab;
            assert!(rel < 1e-12);

            // other composition
            let spec = OrderSpectrum2D::from_bins(a.band_limit(), slab.clone()).unwrap();
            let again = analysis_dft2(&synthesis_dft2(&spec)).unwrap();
            for (x, y) in slab.iter().zip(again.bins()) {
                assert!((x - y).norm() < 1e-13);
            }
        }
    }

    #[test]
    fn rejects_bad_shapes() {
        assert!(analysis_dft2(&vec![Complex64::default(); 16]).is_err());
        assert!(analysis_dft2(&vec![Complex64::default(); 10]).is_err());
        assert!(analysis_dft2(&[]).is_err());
        assert!(Dft2::new(4).is_err());
    }
}
