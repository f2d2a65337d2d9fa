//! Reference values computed independently of the library's recursions.

#![allow(dead_code)]

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

fn factorial(n: i64) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * BigInt::from(k))
}

/// Wigner's explicit sum for `d^j_{m',m}(beta)`, split as
/// `sqrt(P) * sum_s r_s cos(beta/2)^{a_s} sin(beta/2)^{b_s}` with integer `P`
/// and exact rational `r_s`. Returns `(P, [(r_s, a_s, b_s)])`.
fn factorial_terms(j: i64, mp: i64, m: i64) -> (BigInt, Vec<(BigRational, i64, i64)>) {
    let p = factorial(j + mp) * factorial(j - mp) * factorial(j + m) * factorial(j - m);
    let mut terms = Vec::new();
    let s_min = 0.max(m - mp);
    let s_max = (j + m).min(j - mp);
    for s in s_min..=s_max {
        let den = factorial(j + m - s) * factorial(s) * factorial(mp - m + s) * factorial(j - mp - s);
        let sign = if (mp - m + s).rem_euclid(2) == 0 { 1 } else { -1 };
        terms.push((
            BigRational::new(BigInt::from(sign), den),
            2 * j + m - mp - 2 * s,
            mp - m + 2 * s,
        ));
    }
    (p, terms)
}

/// `d^j_{m',m}(pi/2)`: the trigonometric factors collapse to `2^{-j}`, so the
/// sum is exact and only the final product is rounded.
pub fn delta_exact(j: i64, mp: i64, m: i64) -> f64 {
    let (p, terms) = factorial_terms(j, mp, m);
    let sum = terms
        .into_iter()
        .fold(BigRational::zero(), |acc, (r, _, _)| acc + r);
    let sum = sum / BigRational::from_integer(BigInt::one() << j as usize);
    signed_product(&sum, &p)
}

/// `d^j_{m',m}(beta)` with the polynomial in `cos(beta/2)`, `sin(beta/2)`
/// evaluated exactly at the rounded half-angle cosine and sine.
pub fn wigner_d_exact(j: i64, mp: i64, m: i64, beta: f64) -> f64 {
    let (s, c) = (beta / 2.0).sin_cos();
    let c = BigRational::from_float(c).unwrap();
    let s = BigRational::from_float(s).unwrap();
    let (p, terms) = factorial_terms(j, mp, m);
    let mut sum = BigRational::zero();
    for (r, a, b) in terms {
        sum += r * pow(&c, a) * pow(&s, b);
    }
    signed_product(&sum, &p)
}

fn pow(x: &BigRational, k: i64) -> BigRational {
    (0..k).fold(BigRational::one(), |acc, _| acc * x)
}

fn signed_product(sum: &BigRational, p: &BigInt) -> f64 {
    if sum.is_zero() {
        return 0.0;
    }
    let mag = sum.abs().to_f64().unwrap() * p.to_f64().unwrap().sqrt();
    if sum.is_negative() {
        -mag
    } else {
        mag
    }
}

/// Classical Gauss-Legendre weight `2 / ((1 - x^2) P'_L(x)^2)` with the
/// derivative from `P'_{k+1} = P'_{k-1} + (2k+1) P_k`.
pub fn classical_weight(l: usize, x: f64) -> f64 {
    let mut p = vec![0.0; l + 1];
    let mut dp = vec![0.0; l + 1];
    p[0] = 1.0;
    if l >= 1 {
        p[1] = x;
        dp[1] = 1.0;
    }
    for k in 1..l {
        let kf = k as f64;
        p[k + 1] = ((2.0 * kf + 1.0) * x * p[k] - kf * p[k - 1]) / (kf + 1.0);
        dp[k + 1] = dp[k - 1] + (2.0 * kf + 1.0) * p[k];
    }
    2.0 / ((1.0 - x * x) * dp[l] * dp[l])
}
