//! Classical motion with the position-dependent mass, in one dimension and in a plane.
//!
//! This module uses the classical coupling `g = mα²`.

use crate::error::{Error, Result};
use crate::ode::{integrate, Control, StepOptions};
use crate::params::ModelParams;
use crate::scalar::Real;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ClassicalState1D<T> {
    pub t: T,
    pub x: T,
    pub v: T,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ClassicalStatePlanar<T> {
    pub t: T,
    pub r: T,
    pub rdot: T,
    pub theta: T,
    pub thetadot: T,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Trajectory<S, T> {
    pub samples: Vec<S>,
    /// Hamiltonian at each sample.
    pub energy: Vec<T>,
    /// `r²θ̇` at each sample; empty in one dimension.
    pub angular_momentum: Vec<T>,
}

impl<S, T: Real> Trajectory<S, T> {
    /// `max |H(t) - H(0)| / |H(0)|`, or the absolute drift when `H(0) = 0`.
    pub fn energy_drift(&self) -> T {
        relative_drift(&self.energy)
    }

    pub fn angular_momentum_drift(&self) -> T {
        relative_drift(&self.angular_momentum)
    }
}

fn relative_drift<T: Real>(values: &[T]) -> T {
    let Some(&first) = values.first() else {
        return T::zero();
    };
    let worst = values
        .iter()
        .fold(T::zero(), |m, &v| m.max((v - first).abs()));
    if first == T::zero() {
        worst
    } else {
        worst / first.abs()
    }
}

fn factor_checked<T: Real>(params: &ModelParams<T>, x: T, what: &'static str) -> Result<T> {
    let f = params.mass_factor(x);
    if !(f > T::zero()) {
        return Err(Error::OutsideDomain {
            what,
            value: x.approx_f64(),
        });
    }
    Ok(f)
}

/// `x(t) = A sin(ωt + φ)` together with the amplitude–frequency constraint.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AnalyticSolution<T> {
    pub amplitude: T,
    pub omega: T,
    pub phase: T,
    /// Whether `A² = (α²/ω² - 1)/λ` holds, checked as `ω²(1+λA²) = α²` to 1e-12.
    pub constraint_ok: bool,
}

impl<T: Real> AnalyticSolution<T> {
    pub fn position(&self, t: T) -> T {
        self.amplitude * (self.omega * t + self.phase).sin()
    }

    pub fn velocity(&self, t: T) -> T {
        self.amplitude * self.omega * (self.omega * t + self.phase).cos()
    }

    pub fn acceleration(&self, t: T) -> T {
        -self.omega * self.omega * self.position(t)
    }

    pub fn period(&self) -> T {
        T::lit(2.0 * std::f64::consts::PI) / self.omega
    }
}

pub fn analytic_1d<T: Real>(
    amplitude: T,
    omega: T,
    phase: T,
    params: &ModelParams<T>,
) -> Result<AnalyticSolution<T>> {
    if !(omega > T::zero()) {
        return Err(Error::NonPositiveParameter {
            name: "omega",
            value: omega.approx_f64(),
        });
    }
    let a2 = params.alpha() * params.alpha();
    let lhs = omega * omega * (T::one() + params.lambda() * amplitude * amplitude);
    let constraint_ok = (lhs - a2).abs() <= T::lit(1e-12) * a2;
    Ok(AnalyticSolution {
        amplitude,
        omega,
        phase,
        constraint_ok,
    })
}

/// `ω = α / sqrt(1 + λA²)`.
pub fn frequency_for_amplitude<T: Real>(amplitude: T, params: &ModelParams<T>) -> Result<T> {
    let f = factor_checked(params, amplitude, "amplitude")?;
    Ok(params.alpha() / f.sqrt())
}

/// `A = sqrt((α²/ω² - 1)/λ)`, the non-negative root.
pub fn amplitude_for_frequency<T: Real>(omega: T, params: &ModelParams<T>) -> Result<T> {
    let lambda = params.lambda();
    let a2 = (params.alpha() * params.alpha() / (omega * omega) - T::one()) / lambda;
    if !(omega > T::zero()) || lambda == T::zero() || !(a2 >= T::zero()) {
        return Err(Error::OutsideDomain {
            what: "omega",
            value: omega.approx_f64(),
        });
    }
    Ok(a2.sqrt())
}

/// Left side of `(λx²+1)ẍ - λxẋ² + α²x = 0`.
pub fn eom_residual_1d<T: Real>(x: T, v: T, acc: T, params: &ModelParams<T>) -> T {
    params.mass_factor(x) * acc - params.lambda() * x * v * v + params.alpha() * params.alpha() * x
}

/// `V = ½ m α² x² / (λx²+1)`.
pub fn potential_1d<T: Real>(x: T, params: &ModelParams<T>) -> Result<T> {
    let f = factor_checked(params, x, "x")?;
    Ok(T::lit(0.5) * params.classical_coupling() * x * x / f)
}

/// Mass form `H = ½ M ẋ² + ½ M α² x²` with `M = m/(λx²+1)`.
pub fn hamiltonian_1d<T: Real>(x: T, v: T, params: &ModelParams<T>) -> Result<T> {
    let f = factor_checked(params, x, "x")?;
    let mass = params.m() / f;
    Ok(T::lit(0.5) * mass * (v * v + params.alpha() * params.alpha() * x * x))
}

/// Canonical form `H = (λx²+1) p² / (2m) + V` with `p = M ẋ`.
pub fn hamiltonian_1d_canonical<T: Real>(x: T, v: T, params: &ModelParams<T>) -> Result<T> {
    let f = factor_checked(params, x, "x")?;
    let p = params.m() / f * v;
    Ok(f * p * p / (T::lit(2.0) * params.m()) + potential_1d(x, params)?)
}

/// Mass form of the planar Hamiltonian, `½ M (ṙ² + r²θ̇²) + ½ M α² r²`.
pub fn hamiltonian_planar<T: Real>(
    state: &ClassicalStatePlanar<T>,
    params: &ModelParams<T>,
) -> Result<T> {
    let f = factor_checked(params, state.r, "r")?;
    let mass = params.m() / f;
    let speed2 = state.rdot * state.rdot + (state.r * state.thetadot).powi(2);
    Ok(T::lit(0.5) * mass * (speed2 + params.alpha() * params.alpha() * state.r * state.r))
}

/// Canonical form `(λr²+1)‖p‖²/(2m) + V` with `p = M v`.
pub fn hamiltonian_planar_canonical<T: Real>(
    state: &ClassicalStatePlanar<T>,
    params: &ModelParams<T>,
) -> Result<T> {
    let f = factor_checked(params, state.r, "r")?;
    let mass = params.m() / f;
    let p2 = mass * mass * (state.rdot * state.rdot + (state.r * state.thetadot).powi(2));
    Ok(f * p2 / (T::lit(2.0) * params.m()) + potential_1d(state.r, params)?)
}

/// Effective spring constant `K = mω²(1+λA²)/(λx²+1)`.
pub fn spring_constant<T: Real>(
    x: T,
    amplitude: T,
    omega: T,
    params: &ModelParams<T>,
) -> Result<T> {
    let f = factor_checked(params, x, "x")?;
    Ok(params.m() * omega * omega * params.mass_factor(amplitude) / f)
}

/// Shared step options: the requested tolerance as both relative and absolute bound.
fn options<T: Real>(tol: T) -> StepOptions<T> {
    StepOptions::with_tol(tol, tol)
}

fn check_run<T: Real>(t_end: T, tol: T) -> Result<()> {
    if !(t_end > T::zero()) {
        return Err(Error::NonPositiveParameter {
            name: "t_end",
            value: t_end.approx_f64(),
        });
    }
    if !(tol > T::zero()) {
        return Err(Error::NonPositiveParameter {
            name: "tol",
            value: tol.approx_f64(),
        });
    }
    Ok(())
}

/// Reports a stalled step next to the domain edge as a domain exit.
fn near_edge<T: Real>(err: Error, params: &ModelParams<T>, last: Option<(T, T)>) -> Error {
    match (err, last) {
        (Error::StiffnessFailure { .. }, Some((t, x))) if params.mass_factor(x) < T::lit(1e-3) => {
            Error::DomainExit { t: t.approx_f64() }
        }
        (err, _) => err,
    }
}

pub fn integrate_1d<T: Real>(
    x0: T,
    v0: T,
    params: &ModelParams<T>,
    t_end: T,
    tol: T,
) -> Result<Trajectory<ClassicalState1D<T>, T>> {
    check_run(t_end, tol)?;
    if !(params.mass_factor(x0) > T::zero()) {
        return Err(Error::DomainExit { t: 0.0 });
    }
    let lambda = params.lambda();
    let a2 = params.alpha() * params.alpha();
    let rhs = |t: T, s: &[T; 2]| -> Result<[T; 2]> {
        let (x, v) = (s[0], s[1]);
        let f = lambda * x * x + T::one();
        if !(f > T::zero()) {
            return Err(Error::DomainExit { t: t.approx_f64() });
        }
        Ok([v, (lambda * x * v * v - a2 * x) / f])
    };
    let mut traj = Trajectory {
        samples: Vec::new(),
        energy: Vec::new(),
        angular_momentum: Vec::new(),
    };
    let mut failure = None;
    let result =
        integrate(
            &rhs,
            T::zero(),
            [x0, v0],
            t_end,
            &options(tol),
            |t, s| match hamiltonian_1d(s[0], s[1], params) {
                Ok(h) => {
                    traj.samples.push(ClassicalState1D {
                        t,
                        x: s[0],
                        v: s[1],
                    });
                    traj.energy.push(h);
                    Control::Continue
                }
                Err(_) => {
                    failure = Some(Error::DomainExit { t: t.approx_f64() });
                    Control::Stop
                }
            },
        );
    if let Some(err) = failure {
        return Err(err);
    }
    let last = traj.samples.last().map(|s| (s.t, s.x));
    result.map_err(|e| near_edge(e, params, last))?;
    Ok(traj)
}

/// Integrates the planar radial equation
/// `(λr²+1)(r̈ - C²/r³) - λr(ṙ² + C²/r²) + α²r = 0` with `θ̇ = C/r²`.
///
/// With `C = 0` the motion is along a ray and `r` may change sign as it passes the origin.
pub fn integrate_planar<T: Real>(
    r0: T,
    rdot0: T,
    ang_mom: T,
    params: &ModelParams<T>,
    t_end: T,
    tol: T,
) -> Result<Trajectory<ClassicalStatePlanar<T>, T>> {
    check_run(t_end, tol)?;
    if !(r0 > T::zero()) {
        return Err(Error::OutsideDomain {
            what: "r0",
            value: r0.approx_f64(),
        });
    }
    if !(params.mass_factor(r0) > T::zero()) {
        return Err(Error::DomainExit { t: 0.0 });
    }
    let lambda = params.lambda();
    let a2 = params.alpha() * params.alpha();
    let c = ang_mom;
    let c2 = c * c;
    let rhs = |t: T, s: &[T; 3]| -> Result<[T; 3]> {
        let (r, rd) = (s[0], s[1]);
        let f = lambda * r * r + T::one();
        if !(f > T::zero()) {
            return Err(Error::DomainExit { t: t.approx_f64() });
        }
        if c == T::zero() {
            return Ok([rd, (lambda * r * rd * rd - a2 * r) / f, T::zero()]);
        }
        if !(r > T::zero()) {
            return Err(Error::RadialCollapse { t: t.approx_f64() });
        }
        let r2 = r * r;
        let acc = c2 / (r2 * r) + (lambda * r * (rd * rd + c2 / r2) - a2 * r) / f;
        Ok([rd, acc, c / r2])
    };
    let mut traj = Trajectory {
        samples: Vec::new(),
        energy: Vec::new(),
        angular_momentum: Vec::new(),
    };
    let mut failure = None;
    let result = integrate(
        &rhs,
        T::zero(),
        [r0, rdot0, T::zero()],
        t_end,
        &options(tol),
        |t, s| {
            let thetadot = if c == T::zero() {
                T::zero()
            } else {
                c / (s[0] * s[0])
            };
            let state = ClassicalStatePlanar {
                t,
                r: s[0],
                rdot: s[1],
                theta: s[2],
                thetadot,
            };
            match hamiltonian_planar(&state, params) {
                Ok(h) => {
                    traj.energy.push(h);
                    traj.angular_momentum
                        .push(state.r * state.r * state.thetadot);
                    traj.samples.push(state);
                    Control::Continue
                }
                Err(_) => {
                    failure = Some(Error::DomainExit { t: t.approx_f64() });
                    Control::Stop
                }
            }
        },
    );
    if let Some(err) = failure {
        return Err(err);
    }
    let last = traj.samples.last().map(|s| (s.t, s.r));
    result.map_err(|e| match e {
        Error::StiffnessFailure { at, .. }
            if c != T::zero() && last.is_some_and(|(_, r)| r < T::lit(1e-6)) =>
        {
            Error::RadialCollapse { t: at }
        }
        e => near_edge(e, params, last),
    })?;
    Ok(traj)
}

/// Radius of the circular orbit with angular momentum `C`, found by bisection on
/// `α²u² - 2λC²u - C² = 0` in `u = r²` (the radial equation with `ṙ = r̈ = 0`).
pub fn circular_orbit_radius<T: Real>(ang_mom: T, params: &ModelParams<T>) -> Result<T> {
    if ang_mom == T::zero() {
        return Err(Error::OutsideDomain {
            what: "angular momentum",
            value: 0.0,
        });
    }
    let a2 = params.alpha() * params.alpha();
    let c2 = ang_mom * ang_mom;
    let lambda = params.lambda();
    let g = |u: T| a2 * u * u - T::lit(2.0) * lambda * c2 * u - c2;
    let mut lo = T::zero();
    let mut hi = T::one();
    while g(hi) < T::zero() {
        hi = hi * T::lit(2.0);
        if !hi.is_finite() {
            return Err(Error::NonFiniteValue);
        }
    }
    for _ in 0..2000 {
        let mid = (lo + hi) * T::lit(0.5);
        if mid <= lo || mid >= hi {
            break;
        }
        if g(mid) < T::zero() {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let u = (lo + hi) * T::lit(0.5);
    let r = u.sqrt();
    factor_checked(params, r, "circular orbit radius")?;
    Ok(r)
}

/// Period from upward zero crossings of `x`, located on the cubic Hermite
/// interpolant between samples and averaged over all complete cycles.
pub fn measure_period<T: Real>(traj: &Trajectory<ClassicalState1D<T>, T>) -> Result<T> {
    let mut crossings = Vec::new();
    for w in traj.samples.windows(2) {
        let (a, b) = (w[0], w[1]);
        if a.x < T::zero() && b.x >= T::zero() {
            crossings.push(hermite_root(&a, &b));
        }
    }
    if crossings.len() < 2 {
        return Err(Error::OutsideDomain {
            what: "zero crossings",
            value: crossings.len() as f64,
        });
    }
    let cycles = T::from_usize(crossings.len() - 1).unwrap();
    Ok((crossings[crossings.len() - 1] - crossings[0]) / cycles)
}

fn hermite_root<T: Real>(a: &ClassicalState1D<T>, b: &ClassicalState1D<T>) -> T {
    let h = b.t - a.t;
    let p = |s: T| {
        let s2 = s * s;
        let s3 = s2 * s;
        let h00 = T::lit(2.0) * s3 - T::lit(3.0) * s2 + T::one();
        let h10 = s3 - T::lit(2.0) * s2 + s;
        let h01 = -T::lit(2.0) * s3 + T::lit(3.0) * s2;
        let h11 = s3 - s2;
        h00 * a.x + h10 * h * a.v + h01 * b.x + h11 * h * b.v
    };
    let (mut lo, mut hi) = (T::zero(), T::one());
    for _ in 0..200 {
        let mid = (lo + hi) * T::lit(0.5);
        if mid <= lo || mid >= hi {
            break;
        }
        if p(mid) < T::zero() {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    a.t + h * (lo + hi) * T::lit(0.5)
}
