use approx::assert_relative_eq;
use nlosc::orthopoly::{
    hyp2f1_terminating, jacobi, jacobi_rodrigues, jacobi_value, jacobi_value_below_one,
    jacobi_value_below_one_scaled, jacobi_via_hypergeometric, pochhammer, PolyCoeffs,
};
use nlosc::quadrature::{jacobi_weighted, Tolerance};
use nlosc::BigRational;
use proptest::prelude::*;

fn max_abs(c: &[f64]) -> f64 {
    c.iter().fold(0.0, |m, v| m.max(v.abs()))
}

fn coeff_defect(p: &PolyCoeffs<f64>, q: &PolyCoeffs<f64>) -> f64 {
    let n = p.coeffs().len().max(q.coeffs().len());
    let at = |c: &[f64], k: usize| c.get(k).copied().unwrap_or(0.0);
    let diff = (0..n).fold(0.0f64, |m, k| {
        m.max((at(p.coeffs(), k) - at(q.coeffs(), k)).abs())
    });
    diff / max_abs(q.coeffs())
}

#[test]
fn recurrence_matches_rodrigues_in_floating_point() {
    for n in 0..=10 {
        for (a, b) in [
            (0.5, -0.5),
            (1.5, 9.5),
            (2.5, -0.9),
            (0.0, 0.0),
            (3.5, 1.0 / 0.05 - 0.5),
        ] {
            let d = coeff_defect(&jacobi(n, a, b), &jacobi_rodrigues(n, a, b));
            assert!(d < 1e-12, "n={n} a={a} b={b} defect={d}");
        }
    }
}

#[test]
fn hypergeometric_identity_at_twenty_points() {
    for n in 0..=6 {
        for (a, b) in [(0.5, 0.5), (1.5, -0.7), (2.5, 19.5)] {
            let p = jacobi(n, a, b);
            for i in 0..20 {
                let x = -0.95 + 1.9 * i as f64 / 19.0;
                let via = jacobi_via_hypergeometric(n, a, b, x).unwrap();
                let direct = p.eval(&x);
                let scale = direct.abs().max(1.0);
                assert!((via - direct).abs() < 1e-10 * scale, "n={n} x={x}");
            }
        }
    }
}

#[test]
fn jacobi_orthogonality_by_quadrature() {
    for (a, b) in [(0.5, 0.5), (-0.5, 2.5), (1.5, -1.0 / 6.0), (0.3, 0.8)] {
        let polys: Vec<_> = (0..=5).map(|n| jacobi(n, a, b)).collect();
        let ip = |m: usize, n: usize| -> f64 {
            jacobi_weighted(
                a,
                b,
                0.0,
                |p| polys[m].eval(&p.x) * polys[n].eval(&p.x),
                Tolerance::default(),
            )
            .unwrap()
            .value
        };
        for m in 0..=5 {
            let diag = ip(m, m);
            assert!(diag > 0.0);
            for n in 0..m {
                let off = ip(m, n);
                assert!(off.abs() < 1e-8 * diag, "a={a} b={b} m={m} n={n} off={off}");
            }
        }
    }
}

#[test]
fn hypergeometric_reduces_to_jacobi_in_radial_variable() {
    // P_n^{(a,b)}(1 - 2z) = (a+1)_n/n! 2F1(-n, n+a+b+1; a+1; z)
    for n in 0..=6 {
        let (a, b) = (1.5, 4.5);
        let norm = pochhammer(&(a + 1.0), n) / (1..=n).product::<usize>() as f64;
        for z in [0.05, 0.3, 0.7, 0.95] {
            let h = norm * hyp2f1_terminating(n, n as f64 + a + b + 1.0, a + 1.0, z).unwrap();
            assert_relative_eq!(
                h,
                jacobi(n, a, b).eval(&(1.0 - 2.0 * z)),
                epsilon = 1e-12,
                max_relative = 1e-10
            );
        }
    }
}

#[test]
fn value_recurrence_is_exact_in_rationals() {
    let q = |n: i64, d: i64| BigRational::new(n.into(), d.into());
    for n in 0..=12 {
        for (a, b) in [
            (q(1, 2), q(3, 2)),
            (q(5, 2), q(-1, 3)),
            (q(1, 2), q(999, 2)),
        ] {
            let p = jacobi(n, a.clone(), b.clone());
            for d in [q(0, 1), q(1, 1000), q(1, 3), q(7, 4), q(2, 1)] {
                let x = BigRational::from_integer(1.into()) - d.clone();
                assert_eq!(
                    jacobi_value_below_one(n, a.clone(), b.clone(), &d),
                    p.eval(&x)
                );
                assert_eq!(jacobi_value(n, a.clone(), b.clone(), &x), p.eval(&x));
            }
        }
    }
}

#[test]
fn value_recurrence_is_stable_where_coefficients_cancel() {
    // the reflection P_n^{(a,b)}(-x) = P_n^{(b,a)}(x) (n even) runs the recurrence
    // on different data; at n = 400 the monomial form has lost every digit
    let (n, a, b) = (400, 0.5f64, 1.5f64);
    let scale = jacobi_value(n, b, a, &1.0);
    for x in [-0.9, -0.3, 0.2, 0.75] {
        let lhs = jacobi_value(n, a, b, &-x);
        let rhs = jacobi_value(n, b, a, &x);
        assert!((lhs - rhs).abs() < 1e-12 * scale, "x={x}: {lhs} vs {rhs}");
    }
    let at_one = (1..=n).fold(1.0, |acc, k| acc * (b + k as f64) / k as f64);
    assert!(
        (scale - at_one).abs() < 1e-12 * at_one,
        "{scale} vs {at_one}"
    );
}

proptest! {
    #[test]
    fn reflection_symmetry(n in 0usize..9, a in -0.9f64..6.0, b in -0.9f64..6.0, x in -1.0f64..1.0) {
        let lhs = jacobi(n, a, b).eval(&-x);
        let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
        let rhs = sign * jacobi(n, b, a).eval(&x);
        let scale = lhs.abs().max(1.0);
        prop_assert!((lhs - rhs).abs() < 1e-10 * scale);
    }

    #[test]
    fn value_at_one(n in 0usize..12, a in -0.9f64..8.0, b in -0.9f64..8.0) {
        let want = pochhammer(&(a + 1.0), n) / (1..=n).product::<usize>() as f64;
        let p = jacobi(n, a, b);
        let got = p.eval(&1.0);
        // rounding in the monomial sum is bounded by the sum of coefficient magnitudes
        let scale: f64 = p.coeffs().iter().map(|c| c.abs()).sum();
        prop_assert!((got - want).abs() <= 1e-13 * scale.max(1.0), "{got} vs {want}");
    }

    #[test]
    fn degree_is_n(n in 0usize..12, a in 0.0f64..5.0, b in 0.0f64..5.0) {
        prop_assert_eq!(jacobi(n, a, b).degree(), n);
    }
}

#[test]
fn scaled_recurrence_matches_and_extends_range() {
    for (a, b) in [(0.5, 0.5), (2.5, 99.5), (0.5, 999.5)] {
        for n in [0usize, 1, 7, 40] {
            for d in [0.0, 0.3, 1.0, 1.9, 2.0] {
                let plain: f64 = jacobi_value_below_one(n, a, b, &d);
                let (m, e) = jacobi_value_below_one_scaled(n, a, b, &d);
                let scaled = m * e.exp();
                assert!(
                    (scaled - plain).abs() <= 1e-13 * plain.abs().max(1.0),
                    "n={n} a={a} b={b} d={d}"
                );
            }
        }
    }
    // P_n^{(a,b)}(-1) = (-1)^n binom(n+b, n), far beyond f64 here
    let (n, a, b) = (1000usize, 0.5f64, 999.5f64);
    let (m, e) = jacobi_value_below_one_scaled(n, a, b, &2.0);
    let ln_binom: f64 = (1..=n).map(|k| ((b + k as f64) / k as f64).ln()).sum();
    assert!(m > 0.0);
    assert!(
        (m.ln() + e - ln_binom).abs() < 1e-10 * ln_binom,
        "{} vs {ln_binom}",
        m.ln() + e
    );
}
