//! Forward and inverse Fourier transforms on the Gauss-Legendre grid.
//!
//! Forward (samples to coefficients):
//!
//! 1. `A_{m,n}(theta_v)` for every colatitude by a 2D DFT of each slab.
//! 2. `C_{m,n,m'} = sum_v A_{m,n}(theta_v) q(theta_v) e^{i m' theta_v}`, folded
//!    over `+-m'` into the real `X(m-n, m', theta)` kernel.
//! 3. `f^l_{m,n} = i^{n-m} (2l+1)/2 sum_{m'} Delta^l_{m',m} Delta^l_{m',n} C_{m,n,m'}`.
//!
//! Inverse (coefficients to samples) runs the same stages backwards through
//! `G_{m,n,m'} = sum_l f^l_{m,n} Delta^l_{m',m} Delta^l_{m',n}`.
//!
//! Stages 2 and 3 are `O(L^4)` and work one `(m, n)` fiber at a time, so the
//! `C` and `G` tensors are never materialized. The direct transforms evaluate
//! the defining sums literally and serve as reference implementations for
//! small band limits.

use std::f64::consts::PI;

use num_complex::Complex64;
use rayon::prelude::*;

use crate::grid::{coeff_index, BandLimit, GlGrid, So3Signal, So3Spectrum};
use crate::spectral::Dft2;
use crate::wigner::{i_pow, parity, wigner_d, DeltaTable};
use crate::{Error, Result};

/// Largest band limit accepted by [`forward_direct`] and [`inverse_direct`].
pub const DIRECT_MAX_BAND_LIMIT: usize = 16;

fn check_inputs(band_limit: BandLimit, table: &DeltaTable, grid: &GlGrid) -> Result<()> {
    if grid.band_limit() != band_limit {
        return Err(Error::BandLimitMismatch {
            expected: band_limit.get(),
            found: grid.band_limit().get(),
        });
    }
    if table.band_limit() < band_limit {
        return Err(Error::BandLimitMismatch {
            expected: band_limit.get(),
            found: table.band_limit().get(),
        });
    }
    Ok(())
}

/// Signed order stored at bin `b` of an axis of length `2L-1`.
#[inline]
fn bin_order(b: usize, l: usize) -> i64 {
    if b < l {
        b as i64
    } else {
        b as i64 - (2 * l - 1) as i64
    }
}

/// `X(m-n, m', theta_v)` with the `i` of the odd case pulled out, optionally
/// scaled by the quadrature weights. Row `m'`, column `v`.
struct ThetaKernel {
    even: Vec<f64>,
    odd: Vec<f64>,
}

impl ThetaKernel {
    fn new(grid: &GlGrid, weighted: bool) -> Self {
        let l = grid.band_limit().get();
        let mut even = vec![0.0; l * l];
        let mut odd = vec![0.0; l * l];
        for (v, (&theta, &q)) in grid.theta().iter().zip(grid.weights()).enumerate() {
            let w = if weighted { q } else { 1.0 };
            even[v] = w;
            for mp in 1..l {
                let (s, c) = (mp as f64 * theta).sin_cos();
                even[mp * l + v] = 2.0 * w * c;
                odd[mp * l + v] = 2.0 * w * s;
            }
        }
        Self { even, odd }
    }

    fn for_parity(&self, odd: bool) -> &[f64] {
        if odd {
            &self.odd
        } else {
            &self.even
        }
    }
}

/// Fast forward transform: samples on the grid to Fourier coefficients.
pub fn forward(signal: &So3Signal, table: &DeltaTable, grid: &GlGrid) -> Result<So3Spectrum> {
    let band_limit = signal.band_limit();
    check_inputs(band_limit, table, grid)?;
    let l_max = band_limit.get();
    let side = band_limit.side();
    let plane = side * side;

    // Stage 1: A_{m,n}(theta_v), slab by slab.
    let dft = Dft2::new(side)?;
    let mut slabs = signal.as_slice().to_vec();
    slabs.par_chunks_mut(plane).for_each_init(
        || vec![Complex64::default(); dft.scratch_len()],
        |scratch, slab| dft.analysis_in_place(slab, scratch),
    );
    // Fiber-major copy: index (bin_m * side + bin_n) * L + v.
    let mut fibers = vec![Complex64::default(); plane * l_max];
    fibers
        .par_chunks_mut(l_max)
        .enumerate()
        .for_each(|(f, fiber)| {
            for (v, z) in fiber.iter_mut().enumerate() {
                *z = slabs[v * plane + f];
            }
        });
    drop(slabs);

    // Stages 2 and 3, per (m, n) fiber.
    let kernel = ThetaKernel::new(grid, true);
    let per_fiber: Vec<Vec<Complex64>> = fibers
        .par_chunks(l_max)
        .enumerate()
        .map_init(
            || vec![Complex64::default(); l_max],
            |c, (f, a)| {
                let m = bin_order(f / side, l_max);
                let n = bin_order(f % side, l_max);
                forward_fiber(m, n, a, &kernel, table, c)
            },
        )
        .collect();

    let mut spectrum = So3Spectrum::zeros(band_limit);
    let out = spectrum.as_mut_slice();
    for (f, values) in per_fiber.into_iter().enumerate() {
        let m = bin_order(f / side, l_max);
        let n = bin_order(f % side, l_max);
        let lowest = m.unsigned_abs().max(n.unsigned_abs()) as usize;
        for (k, value) in values.into_iter().enumerate() {
            out[coeff_index(lowest + k, m, n)?] = value;
        }
    }
    Ok(spectrum)
}

/// Coefficients `f^l_{m,n}` for `l = max(|m|,|n|) .. L-1` from one `A` fiber.
fn forward_fiber(
    m: i64,
    n: i64,
    a: &[Complex64],
    kernel: &ThetaKernel,
    table: &DeltaTable,
    c: &mut [Complex64],
) -> Vec<Complex64> {
    let l_max = a.len();
    let odd = (m - n).rem_euclid(2) == 1;
    let ker = kernel.for_parity(odd);
    // c[m'] = sum_v A(theta_v) q_v X'(m', theta_v), with X = i X' in the odd case
    for (mp, cm) in c.iter_mut().enumerate() {
        let row = &ker[mp * l_max..(mp + 1) * l_max];
        let mut acc = Complex64::default();
        for (z, &k) in a.iter().zip(row) {
            acc += z * k;
        }
        *cm = acc;
    }

    // Delta_{m',m} Delta_{m',n} = (-1)^{m+n} Delta_{m,m'} Delta_{n,m'}
    let phase = i_pow(n - m + odd as i64) * parity(m + n);
    let lowest = m.unsigned_abs().max(n.unsigned_abs()) as usize;
    (lowest..l_max)
        .map(|l| {
            let rm = &table.row(l, m)[l..];
            let rn = &table.row(l, n)[l..];
            let mut acc = Complex64::default();
            for ((&x, &y), z) in rm.iter().zip(rn).zip(&c[..=l]) {
                acc += z * (x * y);
            }
            phase * acc * ((2 * l + 1) as f64 / 2.0)
        })
        .collect()
}

/// Fast inverse transform: Fourier coefficients to samples on the grid.
pub fn inverse(spectrum: &So3Spectrum, table: &DeltaTable, grid: &GlGrid) -> Result<So3Signal> {
    let band_limit = spectrum.band_limit();
    check_inputs(band_limit, table, grid)?;
    let l_max = band_limit.get();
    let side = band_limit.side();
    let plane = side * side;

    let kernel = ThetaKernel::new(grid, false);
    let coeffs = spectrum.as_slice();
    let mut fibers = vec![Complex64::default(); plane * l_max];
    fibers.par_chunks_mut(l_max).enumerate().for_each_init(
        || vec![Complex64::default(); l_max],
        |g, (f, fiber)| {
            let m = bin_order(f / side, l_max);
            let n = bin_order(f % side, l_max);
            inverse_fiber(m, n, coeffs, &kernel, table, g, fiber);
        },
    );

    let mut samples = vec![Complex64::default(); plane * l_max];
    samples
        .par_chunks_mut(plane)
        .enumerate()
        .for_each(|(v, slab)| {
            for (f, z) in slab.iter_mut().enumerate() {
                *z = fibers[f * l_max + v];
            }
        });
    drop(fibers);

    let dft = Dft2::new(side)?;
    samples.par_chunks_mut(plane).for_each_init(
        || vec![Complex64::default(); dft.scratch_len()],
        |scratch, slab| dft.synthesis_in_place(slab, scratch),
    );
    So3Signal::from_vec(band_limit, samples)
}

/// Writes `A_{m,n}(theta_v)` for all `v` into `out`.
fn inverse_fiber(
    m: i64,
    n: i64,
    coeffs: &[Complex64],
    kernel: &ThetaKernel,
    table: &DeltaTable,
    g: &mut [Complex64],
    out: &mut [Complex64],
) {
    let l_max = out.len();
    g.fill(Complex64::default());
    let lowest = m.unsigned_abs().max(n.unsigned_abs()) as usize;
    // g[m'] = sum_l f^l_{m,n} Delta^l_{m,m'} Delta^l_{n,m'}
    for l in lowest..l_max {
        // coefficients are stored by degree, so this is a strided walk
        let f = coeffs[coeff_index(l, m, n).expect("orders within degree")];
        if f == Complex64::default() {
            continue;
        }
        let rm = &table.row(l, m)[l..];
        let rn = &table.row(l, n)[l..];
        for ((&x, &y), gm) in rm.iter().zip(rn).zip(g.iter_mut()) {
            *gm += f * (x * y);
        }
    }

    let odd = (m - n).rem_euclid(2) == 1;
    let ker = kernel.for_parity(odd);
    let phase = i_pow(n - m + odd as i64) * parity(m + n);
    out.fill(Complex64::default());
    for (mp, &gm) in g.iter().enumerate() {
        if gm == Complex64::default() {
            continue;
        }
        let row = &ker[mp * l_max..(mp + 1) * l_max];
        for (z, &k) in out.iter_mut().zip(row) {
            *z += gm * k;
        }
    }
    for z in out.iter_mut() {
        *z *= phase;
    }
}

fn check_direct(band_limit: BandLimit) -> Result<()> {
    if band_limit.get() > DIRECT_MAX_BAND_LIMIT {
        return Err(Error::OracleCap {
            band_limit: band_limit.get(),
            cap: DIRECT_MAX_BAND_LIMIT,
        });
    }
    Ok(())
}

/// `d^l_{m,n}(theta_v)` for every coefficient and node, indexed `coeff * L + v`.
fn d_values(band_limit: BandLimit, table: &DeltaTable, grid: &GlGrid) -> Result<Vec<f64>> {
    let l_max = band_limit.get();
    let mut out = Vec::with_capacity(band_limit.dimension() * l_max);
    for l in 0..l_max {
        let li = l as i64;
        for m in -li..=li {
            for n in -li..=li {
                for &theta in grid.theta() {
                    out.push(wigner_d(l, m, n, theta, table)?);
                }
            }
        }
    }
    Ok(out)
}

/// `e^{i o phi_u}` for signed orders `o`, indexed `(o + L - 1) * side + u`.
fn order_phases(grid: &GlGrid) -> Vec<Complex64> {
    let l_max = grid.band_limit().get() as i64;
    let mut out = Vec::new();
    for o in -(l_max - 1)..l_max {
        for &phi in grid.phi() {
            out.push(Complex64::from_polar(1.0, o as f64 * phi));
        }
    }
    out
}

/// Reference forward transform: the inner product with every `D^l_{m,n}`,
/// discretized with weight `q(theta_v) (2 pi / (2L-1))^2` per sample.
pub fn forward_direct(
    signal: &So3Signal,
    table: &DeltaTable,
    grid: &GlGrid,
) -> Result<So3Spectrum> {
    let band_limit = signal.band_limit();
    check_inputs(band_limit, table, grid)?;
    check_direct(band_limit)?;
    let l_max = band_limit.get();
    let side = band_limit.side();
    let d = d_values(band_limit, table, grid)?;
    let phases = order_phases(grid);
    let cell = (2.0 * PI / side as f64).powi(2);
    let weights = grid.weights();

    let mut spectrum = So3Spectrum::zeros(band_limit);
    for (k, (l, m, n, _)) in So3Spectrum::zeros(band_limit).iter().enumerate() {
        let em = &phases[(m + l_max as i64 - 1) as usize * side..][..side];
        let en = &phases[(n + l_max as i64 - 1) as usize * side..][..side];
        let mut acc = Complex64::default();
        for v in 0..l_max {
            let dq = d[k * l_max + v] * weights[v];
            if dq == 0.0 {
                continue;
            }
            let mut inner = Complex64::default();
            for u in 0..side {
                for w in 0..side {
                    // conj(D) = e^{i m phi} d e^{i n omega}
                    inner += signal.get(v, u, w) * em[u] * en[w];
                }
            }
            acc += inner * dq;
        }
        spectrum.as_mut_slice()[k] = acc * (cell * (2 * l + 1) as f64 / (8.0 * PI * PI));
    }
    Ok(spectrum)
}

/// Reference inverse transform: `sum_{l,m,n} f^l_{m,n} D^l_{m,n}` at every sample.
pub fn inverse_direct(
    spectrum: &So3Spectrum,
    table: &DeltaTable,
    grid: &GlGrid,
) -> Result<So3Signal> {
    let band_limit = spectrum.band_limit();
    check_inputs(band_limit, table, grid)?;
    check_direct(band_limit)?;
    let l_max = band_limit.get();
    let side = band_limit.side();
    let d = d_values(band_limit, table, grid)?;
    let phases = order_phases(grid);

    let mut signal = So3Signal::zeros(band_limit);
    let coeffs: Vec<_> = spectrum.iter().collect();
    for v in 0..l_max {
        for u in 0..side {
            for w in 0..side {
                let mut acc = Complex64::default();
                for (k, &(_, m, n, f)) in coeffs.iter().enumerate() {
                    let em = phases[(m + l_max as i64 - 1) as usize * side + u];
                    let en = phases[(n + l_max as i64 - 1) as usize * side + w];
                    // D = conj(e^{i m phi} e^{i n omega}) d
                    acc += f * (em * en).conj() * d[k * l_max + v];
                }
                let i = signal.index(v, u, w);
                signal.as_mut_slice()[i] = acc;
            }
        }
    }
    Ok(signal)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::wigner::{build_delta_table, wigner_big_d};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn setup(l: usize) -> (BandLimit, DeltaTable, GlGrid) {
        let b = BandLimit::new(l).unwrap();
        (b, build_delta_table(b), GlGrid::new(b).unwrap())
    }

    fn random_spectrum(b: BandLimit, seed: u64) -> So3Spectrum {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let data = (0..b.dimension())
            .map(|_| Complex64::new(rng.gen_range(-1.0..=1.0), rng.gen_range(-1.0..=1.0)))
            .collect();
        So3Spectrum::from_vec(b, data).unwrap()
    }

    fn max_diff(a: &[Complex64], b: &[Complex64]) -> f64 {
        a.iter().zip(b).map(|(x, y)| (x - y).norm()).fold(0.0, f64::max)
    }

    #[test]
    fn constant_signal() {
        for l in [1, 2, 5] {
            let (b, t, g) = setup(l);
            let f = So3Signal::from_fn(&g, |_, _, _| Complex64::new(1.0, 0.0));
            for s in [forward(&f, &t, &g).unwrap(), forward_direct(&f, &t, &g).unwrap()] {
                for (d, m, n, z) in s.iter() {
                    let expect = if d == 0 { 1.0 } else { 0.0 };
                    assert!((z - expect).norm() < 1e-12, "L={b} ({d},{m},{n}) {z}");
                }
            }
        }
    }

    #[test]
    fn cos_theta_signal() {
        let (_, t, g) = setup(4);
        let f = So3Signal::from_fn(&g, |_, th, _| Complex64::new(th.cos(), 0.0));
        let s = forward(&f, &t, &g).unwrap();
        for (d, m, n, z) in s.iter() {
            let expect = if (d, m, n) == (1, 0, 0) { 1.0 } else { 0.0 };
            assert!((z - expect).norm() < 1e-12);
        }
    }

    #[test]
    fn one_hot_degree_one() {
        let (b, t, g) = setup(2);
        let mut s = So3Spectrum::zeros(b);
        s.set(1, 1, -1, Complex64::new(1.0, 0.0)).unwrap();
        let f = inverse(&s, &t, &g).unwrap();
        let expect = So3Signal::from_fn(&g, |p, th, o| {
            Complex64::from_polar(1.0, -p) * ((1.0 - th.cos()) / 2.0) * Complex64::from_polar(1.0, o)
        });
        assert!(max_diff(f.as_slice(), expect.as_slice()) < 1e-13);
    }

    #[test]
    fn one_hot_matches_wigner_big_d() {
        let (b, t, g) = setup(5);
        for (l, m, n) in [(0, 0, 0), (2, 1, -1), (3, -2, 3), (4, 4, -4), (4, 0, 1)] {
            let mut s = So3Spectrum::zeros(b);
            s.set(l, m, n, Complex64::new(1.0, 0.0)).unwrap();
            let f = inverse(&s, &t, &g).unwrap();
            let expect = So3Signal::from_fn(&g, |p, th, o| wigner_big_d(l, m, n, p, th, o, &t).unwrap());
            assert!(max_diff(f.as_slice(), expect.as_slice()) < 1e-13);

            let back = forward_direct(&expect, &t, &g).unwrap();
            assert!(max_diff(back.as_slice(), s.as_slice()) < 1e-11);
        }
    }

    #[test]
    fn zero_preservation() {
        let (b, t, g) = setup(6);
        let f = inverse(&So3Spectrum::zeros(b), &t, &g).unwrap();
        assert!(f.as_slice().iter().all(|z| *z == Complex64::default()));
        let s = forward(&So3Signal::zeros(b), &t, &g).unwrap();
        assert!(s.as_slice().iter().all(|z| *z == Complex64::default()));
    }

    #[test]
    fn round_trip_small() {
        for l in 1..=12 {
            let (b, t, g) = setup(l);
            let s = random_spectrum(b, l as u64);
            let back = forward(&inverse(&s, &t, &g).unwrap(), &t, &g).unwrap();
            assert!(max_diff(s.as_slice(), back.as_slice()) < 1e-12, "L={l}");
        }
    }

    #[test]
    fn round_trip_16() {
        let (b, t, g) = setup(16);
        let s = random_spectrum(b, 99);
        let back = forward(&inverse(&s, &t, &g).unwrap(), &t, &g).unwrap();
        assert!(max_diff(s.as_slice(), back.as_slice()) < 1e-11);
    }

    #[test]
    fn table_may_exceed_band_limit() {
        let (b, _, g) = setup(4);
        let t = build_delta_table(BandLimit::new(9).unwrap());
        let s = random_spectrum(b, 3);
        let back = forward(&inverse(&s, &t, &g).unwrap(), &t, &g).unwrap();
        assert!(max_diff(s.as_slice(), back.as_slice()) < 1e-12);
    }

    #[test]
    fn mismatched_inputs() {
        let (b, t, g) = setup(4);
        let (_, t3, g3) = setup(3);
        let s = So3Spectrum::zeros(b);
        assert!(matches!(inverse(&s, &t, &g3), Err(Error::BandLimitMismatch { .. })));
        assert!(matches!(inverse(&s, &t3, &g), Err(Error::BandLimitMismatch { .. })));
        let f = So3Signal::zeros(b);
        assert!(forward(&f, &t3, &g).is_err());
        assert!(forward_direct(&f, &t, &g3).is_err());
    }

    #[test]
    fn direct_refuses_large_band_limits() {
        let (b, t, g) = setup(DIRECT_MAX_BAND_LIMIT + 1);
        assert!(matches!(
            forward_direct(&So3Signal::zeros(b), &t, &g),
            Err(Error::OracleCap { .. })
        ));
        assert!(matches!(
            inverse_direct(&So3Spectrum::zeros(b), &t, &g),
            Err(Error::OracleCap { .. })
        ));
    }
}
