//! Legendre polynomials and the Gauss-Legendre colatitude nodes.
//!
//! The `L` nodes are the roots of `P_L(cos theta)`, found by Newton iteration
//! in `x = cos theta`. The weights are
//!
//! ```text
//! q(theta_v) = 2 * (sin(theta_v) / (L * P_{L-1}(cos theta_v)))^2
//! ```
//!
//! which makes `sum_v q(theta_v) p(cos theta_v)` equal `int_{-1}^{1} p(x) dx`
//! for every polynomial `p` of degree at most `2L-1`.

use std::f64::consts::PI;

use crate::grid::BandLimit;
use crate::{Error, Result};

const NEWTON_MAX_ITER: usize = 100;
const NEWTON_TOL: f64 = 1e-15;

/// Evaluates `P_l(x)` with the ascending three-term recursion.
pub fn legendre(l: usize, x: f64) -> Result<f64> {
    if !(-1.0..=1.0).contains(&x) {
        return Err(Error::Domain {
            name: "x",
            value: x,
            domain: "[-1, 1]",
        });
    }
    Ok(legendre_pair(l, x).0)
}

/// `(P_l(x), P_{l-1}(x))`, with `P_{-1} = 0`.
pub(crate) fn legendre_pair(l: usize, x: f64) -> (f64, f64) {
    let (mut p, mut p_prev) = (1.0, 0.0);
    for k in 0..l {
        let k = k as f64;
        let next = ((2.0 * k + 1.0) * x * p - k * p_prev) / (k + 1.0);
        p_prev = p;
        p = next;
    }
    (p, p_prev)
}

/// Gauss-Legendre colatitudes `theta_v` (ascending) and weights `q(theta_v)`.
#[derive(Debug, Clone, PartialEq)]
pub struct GlNodes {
    band_limit: BandLimit,
    theta: Vec<f64>,
    cos_theta: Vec<f64>,
    sin_theta: Vec<f64>,
    weight: Vec<f64>,
}

impl GlNodes {
    pub fn band_limit(&self) -> BandLimit {
        self.band_limit
    }

    pub fn theta(&self) -> &[f64] {
        &self.theta
    }

    /// `cos(theta_v)`, the roots of `P_L` in descending order.
    pub fn cos_theta(&self) -> &[f64] {
        &self.cos_theta
    }

    pub fn sin_theta(&self) -> &[f64] {
        &self.sin_theta
    }

    pub fn weights(&self) -> &[f64] {
        &self.weight
    }

    pub fn len(&self) -> usize {
        self.theta.len()
    }

    pub fn is_empty(&self) -> bool {
        self.theta.is_empty()
    }
}

/// Computes the `L` Gauss-Legendre nodes for band limit `L`.
///
/// Only the roots with `cos theta > 0` are iterated; the others are their
/// mirror images `theta -> pi - theta`, so the node set is symmetric about
/// the equator by construction.
pub fn gl_nodes(band_limit: BandLimit) -> Result<GlNodes> {
    let l = band_limit.get();
    let lf = l as f64;
    let mut theta = vec![0.0; l];
    let mut cos_theta = vec![0.0; l];
    let mut sin_theta = vec![0.0; l];
    let mut weight = vec![0.0; l];

    for v in 0..l.div_ceil(2) {
        let mirror = l - 1 - v;
        if v == mirror {
            // Odd L: the middle root is x = 0.
            let (_, p_prev) = legendre_pair(l, 0.0);
            theta[v] = PI / 2.0;
            cos_theta[v] = 0.0;
            sin_theta[v] = 1.0;
            weight[v] = 2.0 / (lf * p_prev).powi(2);
            continue;
        }
        let x = newton_root(l, v)?;
        let sin = ((1.0 - x) * (1.0 + x)).sqrt();
        let (_, p_prev) = legendre_pair(l, x);
        let q = 2.0 * (sin / (lf * p_prev)).powi(2);
        let t = sin.atan2(x);

        theta[v] = t;
        cos_theta[v] = x;
        sin_theta[v] = sin;
        weight[v] = q;

        theta[mirror] = PI - t;
        cos_theta[mirror] = -x;
        sin_theta[mirror] = sin;
        weight[mirror] = q;
    }

    Ok(GlNodes {
        band_limit,
        theta,
        cos_theta,
        sin_theta,
        weight,
    })
}

/// Newton iteration for the `v`-th largest root of `P_l`.
fn newton_root(l: usize, v: usize) -> Result<f64> {
    let lf = l as f64;
    let mut x = (PI * (v as f64 + 0.75) / (lf + 0.5)).cos();
    for _ in 0..NEWTON_MAX_ITER {
        let (p, p_prev) = legendre_pair(l, x);
        let dp = lf * (x * p - p_prev) / (x * x - 1.0);
        let dx = p / dp;
        x -= dx;
        if dx.abs() <= NEWTON_TOL {
            return Ok(x);
        }
    }
    Err(Error::Numerical(format!(
        "Legendre root {v} of P_{l} did not converge in {NEWTON_MAX_ITER} iterations"
    )))
}
