//! Wigner-d and Wigner-D functions.
//!
//! Conventions: `D^l_{m,n}(phi, theta, omega) = e^{-i m phi} d^l_{m,n}(theta) e^{-i n omega}`
//! with `d^1_{1,0}(theta) = -sin(theta)/sqrt(2)`. The fixed-angle matrices
//! `Delta^l_{m,n} = d^l_{m,n}(pi/2)` give every other angle through
//!
//! ```text
//! d^l_{m,n}(theta) = i^{n-m} sum_{m'=-l}^{l} Delta^l_{m',m} Delta^l_{m',n} e^{i m' theta}
//!                  = i^{n-m} sum_{m'=0}^{l}  Delta^l_{m',m} Delta^l_{m',n} X(m-n, m', theta)
//! ```
//!
//! where `X` is `1` for `m' = 0`, `2 cos(m' theta)` for even `m-n` and
//! `2i sin(m' theta)` for odd `m-n`.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::grid::{dimension, BandLimit};
use crate::{Error, Result};

/// Residual imaginary part tolerated when collapsing the exponential sum to a real value.
const REALNESS_TOL: f64 = 1e-12;

/// `Delta^l_{m,n} = d^l_{m,n}(pi/2)` for all `l < L`, `|m|, |n| <= l`.
///
/// Each degree is a dense row-major `(2l+1) x (2l+1)` block; blocks are
/// stored back to back, so entry `(l, m, n)` sits at the same offset as the
/// coefficient `f^l_{m,n}` of a spectrum.
#[derive(Debug, Clone, PartialEq)]
pub struct DeltaTable {
    band_limit: BandLimit,
    data: Vec<f64>,
}

impl DeltaTable {
    pub fn band_limit(&self) -> BandLimit {
        self.band_limit
    }

    /// `Delta^l_{m,n}`; zero when `|m| > l` or `|n| > l`.
    ///
    /// Panics if `l` is not below the band limit.
    #[inline]
    pub fn get(&self, l: usize, m: i64, n: i64) -> f64 {
        let li = l as i64;
        if m.abs() > li || n.abs() > li {
            return 0.0;
        }
        let width = 2 * l + 1;
        self.block(l)[(m + li) as usize * width + (n + li) as usize]
    }

    /// Row `m` of `Delta^l`, indexed by `n + l`.
    #[inline]
    pub fn row(&self, l: usize, m: i64) -> &[f64] {
        let width = 2 * l + 1;
        let start = (m + l as i64) as usize * width;
        &self.block(l)[start..start + width]
    }

    /// The full `(2l+1) x (2l+1)` block for degree `l`, row-major.
    #[inline]
    pub fn block(&self, l: usize) -> &[f64] {
        &self.data[dimension(l)..dimension(l + 1)]
    }

    fn check_degree(&self, l: usize) -> Result<()> {
        if l >= self.band_limit.get() {
            return Err(Error::DegreeOutOfRange {
                degree: l,
                band_limit: self.band_limit.get(),
            });
        }
        Ok(())
    }
}

/// Builds `Delta^l` for `l = 0, ..., L-1`.
///
/// The edge row `Delta^l_{l,n}` comes from `Delta^{l-1}_{l-1,n-1}`; the
/// eighth `0 <= n <= m <= l` is then filled by the three-term recursion in
/// `m`, run downward from the edge:
///
/// ```text
/// sqrt((l+m)(l-m+1)) Delta_{m-1,n} = 2n Delta_{m,n} - sqrt((l-m)(l+m+1)) Delta_{m+1,n}
/// ```
///
/// The rest of the block follows from
/// `Delta_{n,m} = (-1)^{m-n} Delta_{m,n}`, `Delta_{m,-n} = (-1)^{l+m} Delta_{m,n}`
/// and `Delta_{-m,n} = (-1)^{l+n} Delta_{m,n}`. Cost is `O(l^2)` per degree.
pub fn build_delta_table(band_limit: BandLimit) -> DeltaTable {
    let l_max = band_limit.get();
    let mut data = vec![0.0; band_limit.dimension()];
    data[0] = 1.0;

    // Delta^l_{l,n} for n = 0..=l
    let mut edge = vec![1.0];
    let sqrt_int: Vec<f64> = (0..=2 * l_max + 1).map(|k| (k as f64).sqrt()).collect();
    let two_n: Vec<f64> = (0..l_max).map(|n| 2.0 * n as f64).collect();
    let mut inv_b = vec![0.0; l_max];
    let mut a_over_b = vec![0.0; l_max];

    for l in 1..l_max {
        let lf = l as f64;
        let mut next = Vec::with_capacity(l + 1);
        next.push(-((2.0 * lf - 1.0) / (2.0 * lf)).sqrt() * edge[0]);
        for n in 1..=l {
            let nf = n as f64;
            let c = (lf * (2.0 * lf - 1.0) / (2.0 * (lf + nf) * (lf + nf - 1.0))).sqrt();
            next.push(c * edge[n - 1]);
        }
        edge = next;

        for m in 1..=l {
            inv_b[m] = 1.0 / (sqrt_int[l + m] * sqrt_int[l - m + 1]);
            a_over_b[m] = sqrt_int[l - m] * sqrt_int[l + m + 1] * inv_b[m];
        }

        let width = 2 * l + 1;
        let block = &mut data[dimension(l)..dimension(l + 1)];
        // Row m >= 0 of the block starts at (l + m) * width; its n >= 0 half at + l.
        let start = |m: usize| (l + m) * width + l;

        // Eighth 0 <= n <= m, one row at a time from the edge downward.
        block[start(l)..start(l) + l + 1].copy_from_slice(&edge);
        for m in (1..=l).rev() {
            let (lower, upper) = block.split_at_mut(start(m));
            let cur = &upper[..m];
            let dst = &mut lower[start(m - 1)..start(m - 1) + m];
            let (ib, ab) = (inv_b[m], a_over_b[m]);
            if m == l {
                for ((d, &c), &t) in dst.iter_mut().zip(cur).zip(&two_n) {
                    *d = t * ib * c;
                }
            } else {
                let above = &upper[start(m + 1) - start(m)..][..m];
                for (((d, &c), &a), &t) in dst.iter_mut().zip(cur).zip(above).zip(&two_n) {
                    *d = t * ib * c - ab * a;
                }
            }
        }

        // Complete each row m >= 0 and its mirror row -m while it is hot.
        for m in 0..=l {
            // Delta_{m,n} = (-1)^{n-m} Delta_{n,m} for n > m
            let mut sign = -1.0;
            for n in m + 1..=l {
                block[start(m) + n] = sign * block[start(n) + m];
                sign = -sign;
            }
            // Delta_{m,-n} = (-1)^{l+m} Delta_{m,n}
            let row = &mut block[(l + m) * width..(l + m + 1) * width];
            let (left, right) = row.split_at_mut(l);
            let s = parity((l + m) as i64);
            for (d, &v) in left.iter_mut().rev().zip(&right[1..]) {
                *d = s * v;
            }
            if m == 0 {
                continue;
            }
            // Delta_{-m,n} = (-1)^{l+n} Delta_{m,n} = (-1)^j Delta_{m,n}, j = n + l
            let (neg, pos) = block.split_at_mut((l + m) * width);
            let src = &pos[..width];
            let dst = &mut neg[(l - m) * width..(l - m + 1) * width];
            for (pair_d, pair_s) in dst.chunks_mut(2).zip(src.chunks(2)) {
                pair_d[0] = pair_s[0];
                if pair_d.len() == 2 {
                    pair_d[1] = -pair_s[1];
                }
            }
        }
    }

    DeltaTable { band_limit, data }
}

/// `(-1)^k`
#[inline]
pub(crate) fn parity(k: i64) -> f64 {
    if k.rem_euclid(2) == 0 {
        1.0
    } else {
        -1.0
    }
}

/// `i^k`
#[inline]
pub(crate) fn i_pow(k: i64) -> Complex64 {
    match k.rem_euclid(4) {
        0 => Complex64::new(1.0, 0.0),
        1 => Complex64::new(0.0, 1.0),
        2 => Complex64::new(-1.0, 0.0),
        _ => Complex64::new(0.0, -1.0),
    }
}

/// Wigner-d function `d^l_{m,n}(theta)`, summed over `m' = 0..=l` with the
/// `X(m-n, m', theta)` kernel.
pub fn wigner_d(l: usize, m: i64, n: i64, theta: f64, table: &DeltaTable) -> Result<f64> {
    table.check_degree(l)?;
    if !(0.0..=PI).contains(&theta) {
        return Err(Error::Domain {
            name: "theta",
            value: theta,
            domain: "[0, pi]",
        });
    }
    let li = l as i64;
    if m.abs() > li || n.abs() > li {
        return Ok(0.0);
    }
    let odd = (m - n).rem_euclid(2) == 1;
    let mut sum = Complex64::new(table.get(l, 0, m) * table.get(l, 0, n), 0.0);
    for mp in 1..=li {
        let dd = table.get(l, mp, m) * table.get(l, mp, n);
        let (s, c) = (mp as f64 * theta).sin_cos();
        let x = if odd {
            Complex64::new(0.0, 2.0 * s)
        } else {
            Complex64::new(2.0 * c, 0.0)
        };
        sum += x * dd;
    }
    let d = i_pow(n - m) * sum;
    if d.im.abs() > REALNESS_TOL {
        return Err(Error::Numerical(format!(
            "d^{l}_{{{m},{n}}}({theta}) has imaginary residual {:e}",
            d.im
        )));
    }
    Ok(d.re)
}

/// Wigner-D function `D^l_{m,n}(phi, theta, omega) = e^{-i m phi} d^l_{m,n}(theta) e^{-i n omega}`.
pub fn wigner_big_d(
    l: usize,
    m: i64,
    n: i64,
    phi: f64,
    theta: f64,
    omega: f64,
    table: &DeltaTable,
) -> Result<Complex64> {
    let d = wigner_d(l, m, n, theta, table)?;
    let phase = -(m as f64 * phi + n as f64 * omega);
    Ok(Complex64::from_polar(d, phase))
}
