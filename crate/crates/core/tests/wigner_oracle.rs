mod common;

use std::f64::consts::PI;

use num_complex::Complex64;
use proptest::prelude::*;
use so3gl::{build_delta_table, gl_nodes, wigner_d, BandLimit, DeltaTable};

fn table(l: usize) -> DeltaTable {
    build_delta_table(BandLimit::new(l).unwrap())
}

#[test]
fn delta_matches_factorial_sum() {
    let t = table(33);
    let mut worst = 0.0f64;
    for l in 0..=32usize {
        let li = l as i64;
        for m in -li..=li {
            for n in -li..=li {
                let exact = common::delta_exact(li, m, n);
                worst = worst.max((t.get(l, m, n) - exact).abs());
            }
        }
    }
    assert!(worst <= 1e-12, "worst deviation {worst:e}");
}

#[test]
fn degree_two_closed_form() {
    let t = table(3);
    // d^2_{2,0}(pi/2) = sqrt(6)/4 * sin^2 = sqrt(3/8)
    assert!((t.get(2, 2, 0) - (3.0f64 / 8.0).sqrt()).abs() < 1e-15);
    assert!((common::delta_exact(2, 2, 0) - (3.0f64 / 8.0).sqrt()).abs() < 1e-15);
    assert!((common::delta_exact(2, 0, 0) + 0.5).abs() < 1e-15);
}

#[test]
fn random_angles_match_factorial_sum() {
    let t = table(17);
    let mut rng_state = 0x2545F4914F6CDD1Du64;
    let mut next = || {
        rng_state ^= rng_state << 13;
        rng_state ^= rng_state >> 7;
        rng_state ^= rng_state << 17;
        rng_state
    };
    for _ in 0..400 {
        let l = (next() % 17) as i64;
        let m = (next() % (2 * l as u64 + 1)) as i64 - l;
        let n = (next() % (2 * l as u64 + 1)) as i64 - l;
        let theta = PI * (next() % 1_000_001) as f64 / 1_000_000.0;
        let got = wigner_d(l as usize, m, n, theta, &t).unwrap();
        let want = common::wigner_d_exact(l, m, n, theta);
        assert!((got - want).abs() <= 1e-11, "l={l} m={m} n={n} theta={theta}: {got} vs {want}");
    }
}

#[test]
fn orthogonal_up_to_128() {
    let t = table(128);
    for l in 0..128 {
        let w = 2 * l + 1;
        let b = t.block(l);
        let mut worst = 0.0f64;
        for i in 0..w {
            for j in i..w {
                let dot: f64 = b[i * w..(i + 1) * w]
                    .iter()
                    .zip(&b[j * w..(j + 1) * w])
                    .map(|(x, y)| x * y)
                    .sum();
                let expect = if i == j { 1.0 } else { 0.0 };
                worst = worst.max((dot - expect).abs());
            }
        }
        assert!(worst <= 1e-11, "l={l}: {worst:e}");
    }
}

/// The full exponential sum over m' = -l..=l.
fn wigner_d_exponential(l: usize, m: i64, n: i64, theta: f64, t: &DeltaTable) -> Complex64 {
    let li = l as i64;
    let mut sum = Complex64::default();
    for mp in -li..=li {
        sum += Complex64::from_polar(t.get(l, mp, m) * t.get(l, mp, n), mp as f64 * theta);
    }
    let k = (n - m).rem_euclid(4);
    sum * Complex64::new(0.0, 1.0).powi(k as i32)
}

#[test]
fn degree_orthogonality_on_gl_nodes() {
    for big_l in [1usize, 2, 5, 8, 13] {
        let b = BandLimit::new(big_l).unwrap();
        let t = build_delta_table(b);
        let nodes = gl_nodes(b).unwrap();
        let li = big_l as i64;
        for m in -(li - 1)..li {
            for n in -(li - 1)..li {
                let lo = m.unsigned_abs().max(n.unsigned_abs()) as usize;
                for l1 in lo..big_l {
                    for l2 in lo..big_l {
                        let s: f64 = nodes
                            .theta()
                            .iter()
                            .zip(nodes.weights())
                            .map(|(&th, &q)| {
                                wigner_d(l1, m, n, th, &t).unwrap()
                                    * wigner_d(l2, m, n, th, &t).unwrap()
                                    * q
                            })
                            .sum();
                        let got = (2 * l1 + 1) as f64 / 2.0 * s;
                        let expect = if l1 == l2 { 1.0 } else { 0.0 };
                        assert!((got - expect).abs() < 1e-11, "L={big_l} l={l1},{l2} m={m} n={n}");
                    }
                }
            }
        }
    }
}

proptest! {
    #[test]
    fn symmetry_relations(l in 0usize..=16, a in 0u64..1000, b in 0u64..1000, theta in 0.0..=PI) {
        let t = table(17);
        let li = l as i64;
        let m = (a % (2 * l as u64 + 1)) as i64 - li;
        let n = (b % (2 * l as u64 + 1)) as i64 - li;
        let sign = if (m - n).rem_euclid(2) == 0 { 1.0 } else { -1.0 };
        let d = wigner_d(l, m, n, theta, &t).unwrap();
        let d_nm = wigner_d(l, n, m, theta, &t).unwrap();
        let d_neg = wigner_d(l, -m, -n, theta, &t).unwrap();
        prop_assert!((d - sign * d_nm).abs() < 1e-12);
        prop_assert!((d - sign * d_neg).abs() < 1e-12);
    }

    #[test]
    fn folded_and_exponential_forms_agree(l in 0usize..=24, a in 0u64..1000, b in 0u64..1000, theta in 0.0..=PI) {
        let t = table(25);
        let li = l as i64;
        let m = (a % (2 * l as u64 + 1)) as i64 - li;
        let n = (b % (2 * l as u64 + 1)) as i64 - li;
        let folded = wigner_d(l, m, n, theta, &t).unwrap();
        let full = wigner_d_exponential(l, m, n, theta, &t);
        prop_assert!(full.im.abs() <= 1e-12);
        prop_assert!((folded - full.re).abs() <= 1e-12);
    }
}
