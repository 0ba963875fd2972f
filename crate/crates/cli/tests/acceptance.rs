//! One PASS/FAIL line per acceptance criterion. Runs without the libtest
//! harness so the report stays readable; the exit status is nonzero when any
//! criterion fails.

use std::f64::consts::PI;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::{Command, ExitCode};

use nlosc::classical::{
    amplitude_for_frequency, analytic_1d, frequency_for_amplitude, integrate_1d, integrate_planar,
    measure_period,
};
use nlosc::oracle::{limit_compare, radial_residual, seed_bracket, shoot_eigenvalue};
use nlosc::orthopoly::{jacobi, jacobi_rodrigues, jacobi_via_hypergeometric, PolyCoeffs};
use nlosc::radial::{gram_matrix, inner_product, normalized_state};
use nlosc::spectrum::{bound_state_count, energy_dimless, is_admissible};
use nlosc::{domain, make_model, BigRational, Scalar, StateCount};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn check(ok: bool, detail: String) -> Outcome {
    if ok {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn closed_form_vs_shooting() -> Outcome {
    let mut worst = (0.0f64, 0.0, 0, 0);
    let mut runs = 0;
    for lam in [-1.0f64, -0.5, 0.1] {
        for l in 0..=2 {
            let count = bound_state_count(&lam, l).truncate(2);
            for k in 0..count {
                let r = shoot_eigenvalue(lam, l, k, seed_bracket(lam, l, k))
                    .map_err(|e| format!("Lambda={lam} L={l} n={k}: {e}"))?;
                let d = (r.e_numeric - energy_dimless(k, l, lam)).abs();
                if r.nodes != k {
                    return Err(format!("Lambda={lam} L={l} n={k}: {} nodes", r.nodes));
                }
                if d >= worst.0 {
                    worst = (d, lam, l, k);
                }
                runs += 1;
            }
        }
    }
    check(
        worst.0 < 1e-6,
        format!(
            "{runs} states, max |e_shoot - e_closed| = {:.2e} at Lambda={} L={} n={}",
            worst.0, worst.1, worst.2, worst.3
        ),
    )
}

/// Interior sample points: the open domain for Λ < 0, a window covering the
/// classically allowed region and its tail otherwise.
fn interior(lam: f64, n: usize, l: usize) -> Vec<f64> {
    let hi = domain(lam)
        .upper
        .unwrap_or_else(|| 3.0 * ((2 * n + l + 3) as f64).sqrt());
    (1..=100).map(|i| hi * i as f64 / 101.0).collect()
}

fn ode_residuals() -> Outcome {
    let mut family = Vec::new();
    for lam in [
        -3.0f64, -2.0, -1.0, -0.5, -0.1, -1e-3, 1e-3, 0.01, 0.05, 0.1, 0.2,
    ] {
        for l in 0..=3 {
            for n in 0..bound_state_count(&lam, l).truncate(7) {
                family.push((n, l, lam));
            }
        }
    }
    for (n, lam) in [
        (50, -1.0f64),
        (200, -0.5),
        (1000, -1.0),
        (1000, -1e-3),
        (49, 0.01),
        (499, 1e-3),
    ] {
        family.push((n, 0, lam));
    }
    let mut worst = (0.0f64, 0, 0, 0.0, 0.0);
    for &(n, l, lam) in &family {
        let s =
            normalized_state(n, l, lam).map_err(|e| format!("n={n} L={l} Lambda={lam}: {e}"))?;
        for y in interior(lam, n, l) {
            let r = radial_residual(&s, y, s.e, lam, l)
                .map_err(|e| format!("n={n} L={l} Lambda={lam} y={y}: {e}"))?;
            // a NaN residual must surface as the worst case
            if r.is_nan() || r >= worst.0 {
                worst = (r, n, l, lam, y);
            }
        }
    }
    check(
        worst.0 < 1e-9,
        format!(
            "{} states x 100 points, max residual {:.2e} at n={} L={} Lambda={} y={:.4}",
            family.len(),
            worst.0,
            worst.1,
            worst.2,
            worst.3,
            worst.4
        ),
    )
}

fn orthonormality() -> Outcome {
    let mut parts = Vec::new();
    let mut ok = true;
    let cases = [
        (0, -1.0f64, 5),
        (1, -1.0, 5),
        (2, -1.0, 5),
        (0, 0.05, usize::MAX / 4),
    ];
    for (l, lam, n_max) in cases {
        let g = gram_matrix(l, lam, n_max).map_err(|e| format!("L={l} Lambda={lam}: {e}"))?;
        let defect = g.identity_defect();
        ok &= defect < 1e-8;
        parts.push(format!(
            "Lambda={lam} L={l} size {}: max |G-I| {defect:.1e}",
            g.size
        ));
    }
    check(ok, parts.join("; "))
}

fn bound_state_counting() -> Outcome {
    let c = bound_state_count(&0.1f64, 0);
    if c != StateCount::Finite(5) {
        return Err(format!("bound_state_count(0.1, 0) = {c}"));
    }
    let tenth = BigRational::from_int(1) / BigRational::from_int(10);
    if bound_state_count(&tenth, 0) != StateCount::Finite(5) {
        return Err("bound_state_count(1/10, 0) in rationals".into());
    }
    for l in 0..=5 {
        let exact = BigRational::from_int(1) / BigRational::from_int(1 + l as i64);
        let float = 1.0 / (1.0 + l as f64);
        for (kind, c) in [
            ("rational", bound_state_count(&exact, l)),
            ("f64", bound_state_count(&float, l)),
        ] {
            if !c.is_empty() {
                return Err(format!("bound_state_count(1/(1+L), L={l}) = {c} in {kind}"));
            }
        }
    }
    for lam in [-1e-6f64, -1e-3, -0.5, -1.0, -3.0, -100.0] {
        for l in [0, 3] {
            if bound_state_count(&lam, l) != StateCount::Unbounded
                || !(0..=1000).all(|n| is_admissible(n, l, &lam))
            {
                return Err(format!("Lambda={lam} L={l}: state n <= 1000 rejected"));
            }
        }
    }
    let s = normalized_state(1000, 0, -1.0f64).map_err(|e| format!("n=1000 Lambda=-1: {e}"))?;
    let norm = inner_product(&s, &s).map_err(|e| e.to_string())?.value;
    check(
        (norm - 1.0).abs() < 1e-8,
        format!("0.1 -> 5 states, 1/(1+L) -> none for L <= 5, n <= 1000 admissible for Lambda < 0, n=1000 norm {norm:.12}"),
    )
}

fn oscillator_limit() -> Outcome {
    let q = |p: i64, r: i64| BigRational::from_int(p) / BigRational::from_int(r);
    for lam in [q(-3, 7), q(1, 10), q(5, 2), q(-1, 1), q(1, 1000)] {
        for n in 0..=10usize {
            for l in 0..=10usize {
                let (ni, li) = (n as i64, l as i64);
                let lhs = energy_dimless(n, l, lam.clone()) - (q(2 * ni + li, 1) + q(3, 2));
                let rhs = -lam.clone() * (q(2 * ni * ni + 2 * li * ni + 2 * ni, 1) + q(li, 2));
                if lhs != rhs {
                    return Err(format!("energy identity fails at n={n} L={l} Lambda={lam}"));
                }
            }
        }
    }
    const CALIBRATED: f64 = 1e-2;
    const PROVISIONAL: f64 = 5e-3;
    let mut worst = (0.0f64, 0, 0, 0.0);
    let mut above_provisional = 0;
    let mut ratio_extreme = (0.5f64, 0.5f64);
    let mut cases = 0;
    for n in 0..=2 {
        for l in 0..=2 {
            for sign in [-1.0f64, 1.0] {
                let lam = sign * 1e-3;
                let d1 = limit_compare(n, l, lam)
                    .map_err(|e| format!("n={n} L={l} Lambda={lam}: {e}"))?;
                let d2 = limit_compare(n, l, 2.0 * lam)
                    .map_err(|e| format!("n={n} L={l} Lambda={}: {e}", 2.0 * lam))?;
                let ratio = d1 / d2;
                ratio_extreme = (ratio_extreme.0.min(ratio), ratio_extreme.1.max(ratio));
                if d1 >= PROVISIONAL {
                    above_provisional += 1;
                }
                if d1 > worst.0 {
                    worst = (d1, n, l, lam);
                }
                if n == 0 && l == 0 && d1 >= PROVISIONAL {
                    return Err(format!("(0,0) deviation {d1:.2e} at Lambda={lam}"));
                }
                cases += 1;
            }
        }
    }
    let ratio_ok = (ratio_extreme.0 - 0.5).abs() <= 0.15 && (ratio_extreme.1 - 0.5).abs() <= 0.15;
    check(
        worst.0 < CALIBRATED && ratio_ok,
        format!(
            "energy identity exact for n,L <= 10; {cases} wavefunction cases, max deviation {:.2e} at n={} L={} Lambda={} \
             (calibrated bound {CALIBRATED:.0e}; {above_provisional} cases at or above {PROVISIONAL:.0e}); \
             Lambda-ratio in [{:.4}, {:.4}]",
            worst.0, worst.1, worst.2, worst.3, ratio_extreme.0, ratio_extreme.1
        ),
    )
}

fn relative_coefficient_defect(p: &PolyCoeffs<f64>, q: &PolyCoeffs<f64>) -> f64 {
    let (a, b) = (p.coeffs(), q.coeffs());
    let len = a.len().max(b.len());
    let at = |c: &[f64], i: usize| c.get(i).copied().unwrap_or(0.0);
    let scale = (0..len).fold(0.0f64, |m, i| m.max(at(a, i).abs()));
    (0..len).fold(0.0f64, |m, i| m.max((at(a, i) - at(b, i)).abs())) / scale
}

fn polynomial_kernel() -> Outcome {
    let pairs = [
        (0.5, 0.5),
        (1.5, -0.7),
        (2.5, 19.5),
        (0.0, 0.0),
        (3.5, -0.5),
        (0.5, 1.0 / 3.0 - 0.5),
    ];
    let mut rodrigues = 0.0f64;
    for n in 0..=10 {
        for (a, b) in pairs {
            rodrigues = rodrigues.max(relative_coefficient_defect(
                &jacobi(n, a, b),
                &jacobi_rodrigues(n, a, b),
            ));
        }
    }
    let mut hyper = 0.0f64;
    for n in 0..=6 {
        for (a, b) in pairs {
            let p = jacobi(n, a, b);
            for i in 0..20 {
                let x = -0.95 + 1.9 * i as f64 / 19.0;
                let via = jacobi_via_hypergeometric(n, a, b, x).map_err(|e| e.to_string())?;
                let direct = p.eval(&x);
                hyper = hyper.max((via - direct).abs() / direct.abs().max(1.0));
            }
        }
    }
    check(
        rodrigues < 1e-12 && hyper < 1e-10,
        format!("Rodrigues coefficient defect {rodrigues:.1e} (n <= 10); hypergeometric defect {hyper:.1e} (n <= 6, 20 points)"),
    )
}

fn classical_suite() -> Outcome {
    const TOL: f64 = 1e-10;
    let mut traj = 0.0f64;
    let mut h_drift = 0.0f64;
    let mut omega_err = 0.0f64;
    for (lambda, alpha, omega, phase) in [
        (0.5f64, 1.0, 0.8, 0.0),
        (-0.5, 1.3, 1.7, 0.4),
        (2.0, 0.9, 0.5, -0.7),
    ] {
        let p = make_model(1.0, alpha, lambda, 1.0).map_err(|e| e.to_string())?;
        let a = amplitude_for_frequency(omega, &p).map_err(|e| e.to_string())?;
        let exact = analytic_1d(a, omega, phase, &p).map_err(|e| e.to_string())?;
        if !exact.constraint_ok {
            return Err(format!("amplitude constraint fails at lambda={lambda}"));
        }
        let tr = integrate_1d(
            exact.position(0.0),
            exact.velocity(0.0),
            &p,
            10.0 * exact.period(),
            TOL,
        )
        .map_err(|e| e.to_string())?;
        traj = tr
            .samples
            .iter()
            .fold(traj, |m, s| m.max((s.x - exact.position(s.t)).abs()));
        h_drift = h_drift.max(tr.energy_drift());
    }
    for (lambda, amplitude) in [(0.5f64, 1.2), (1.0, 0.3), (-0.5, 0.9)] {
        let p = make_model(1.0, 1.4, lambda, 1.0).map_err(|e| e.to_string())?;
        let omega = frequency_for_amplitude(amplitude, &p).map_err(|e| e.to_string())?;
        let want = p.alpha() / (1.0 + lambda * amplitude * amplitude).sqrt();
        if ((omega - want) / want).abs() > 1e-14 {
            return Err(format!("frequency formula at lambda={lambda}"));
        }
        let tr = integrate_1d(amplitude, 0.0, &p, 10.5 * 2.0 * PI / omega, TOL)
            .map_err(|e| e.to_string())?;
        let measured = 2.0 * PI / measure_period(&tr).map_err(|e| e.to_string())?;
        omega_err = omega_err.max(((measured - want) / want).abs());
    }
    let mut c_drift = 0.0f64;
    for (lambda, c) in [(0.5f64, 0.8), (-0.3, 0.5), (1.0, 0.5)] {
        let p = make_model(1.0, 1.0, lambda, 1.0).map_err(|e| e.to_string())?;
        let tr = integrate_planar(1.2, 0.2, c, &p, 20.0 * PI, TOL).map_err(|e| e.to_string())?;
        h_drift = h_drift.max(tr.energy_drift());
        c_drift = c_drift.max(tr.angular_momentum_drift());
    }
    check(
        traj < 1e-7 && h_drift < 1e-8 && c_drift < 1e-9 && omega_err < 1e-5,
        format!("trajectory error {traj:.1e}, H drift {h_drift:.1e}, r^2 thetadot drift {c_drift:.1e}, omega error {omega_err:.1e}"),
    )
}

fn normalizability_edge() -> Outcome {
    let s = normalized_state(0, 0, -3.0f64).map_err(|e| e.to_string())?;
    let ip = inner_product(&s, &s).map_err(|e| e.to_string())?;
    check(
        ip.est_abs_error < 1e-10 && (ip.value - 1.0).abs() < 1e-10,
        format!(
            "Lambda=-3 n=0 L=0: norm {:.15}, error estimate {:.1e}",
            ip.value, ip.est_abs_error
        ),
    )
}

fn run_cli(args: &[&str]) -> Result<Vec<u8>, String> {
    let out = Command::new(env!("CARGO_BIN_EXE_nlosc"))
        .args(args)
        .output()
        .map_err(|e| e.to_string())?;
    if !out.status.success() {
        return Err(format!(
            "{args:?}: {}",
            String::from_utf8_lossy(&out.stderr).trim()
        ));
    }
    Ok(out.stdout)
}

fn cli_determinism() -> Outcome {
    let commands: [&[&str]; 5] = [
        &["spectrum", "--lambda", "-1", "--L", "0", "--n-max", "3"],
        &[
            "states", "--lambda", "-0.5", "--L", "1", "--n", "2", "--format", "json",
        ],
        &["gram", "--lambda", "0.05", "--n-max", "9"],
        &["shoot", "--lambda", "0.1", "--L", "1", "--format", "json"],
        &[
            "classical",
            "--lambda",
            "0.5",
            "--amplitude",
            "1.2",
            "--ang-mom",
            "0.8",
            "--t-end",
            "30",
        ],
    ];
    for args in commands {
        if run_cli(args)? != run_cli(args)? {
            return Err(format!("{args:?} differs between runs"));
        }
    }
    let csv = String::from_utf8(run_cli(commands[0])?).map_err(|e| e.to_string())?;
    let mut lines = csv.lines();
    if lines.next() != Some("n,L,Lambda,e,admissible") {
        return Err("unexpected spectrum header".into());
    }
    let energies = lines
        .map(|l| l.split(',').nth(3).and_then(|v| v.parse::<f64>().ok()))
        .collect::<Option<Vec<_>>>()
        .ok_or("unparsable energy column")?;
    check(
        energies == [1.5, 7.5, 17.5, 31.5],
        format!("5 commands byte-identical; spectrum energies {energies:?}"),
    )
}

fn main() -> ExitCode {
    let criteria: [Criterion; 9] = [
        ("closed form vs shooting", closed_form_vs_shooting),
        ("ODE residuals", ode_residuals),
        ("orthonormality", orthonormality),
        ("bound-state counting", bound_state_counting),
        ("oscillator limit", oscillator_limit),
        ("polynomial kernel", polynomial_kernel),
        ("classical motion", classical_suite),
        ("normalizability edge", normalizability_edge),
        ("CLI determinism", cli_determinism),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let outcome = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|_| Err("panicked".into()));
        match outcome {
            Ok(detail) => println!("criterion {}: PASS {name}: {detail}", i + 1),
            Err(detail) => {
                failed += 1;
                println!("criterion {}: FAIL {name}: {detail}", i + 1);
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
