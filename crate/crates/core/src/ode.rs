//! Adaptive Dormand–Prince 5(4) integrator for small fixed-size systems.

use crate::error::{Error, Result};
use crate::scalar::Real;

pub trait OdeSystem<T, const N: usize> {
    /// Right-hand side. An error is treated as a rejected trial step (the step
    /// is shrunk and retried); it surfaces only once the step size underflows.
    fn deriv(&self, t: T, y: &[T; N]) -> Result<[T; N]>;
}

impl<T, const N: usize, F> OdeSystem<T, N> for F
where
    F: Fn(T, &[T; N]) -> Result<[T; N]>,
{
    fn deriv(&self, t: T, y: &[T; N]) -> Result<[T; N]> {
        self(t, y)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StepOptions<T> {
    pub rtol: T,
    pub atol: T,
    pub h_init: Option<T>,
    /// Maximum step size, `None` for unbounded.
    pub h_max: Option<T>,
    pub max_steps: usize,
}

impl<T: Real> StepOptions<T> {
    pub fn with_tol(rtol: T, atol: T) -> Self {
        Self {
            rtol,
            atol,
            h_init: None,
            h_max: None,
            max_steps: 2_000_000,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Control {
    Continue,
    Stop,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Solution<T, const N: usize> {
    pub t: T,
    pub y: [T; N],
    pub accepted: usize,
    pub rejected: usize,
}

const C: [f64; 7] = [0.0, 0.2, 0.3, 0.8, 8.0 / 9.0, 1.0, 1.0];
const A: [[f64; 6]; 7] = [
    [0.0; 6],
    [0.2, 0.0, 0.0, 0.0, 0.0, 0.0],
    [3.0 / 40.0, 9.0 / 40.0, 0.0, 0.0, 0.0, 0.0],
    [44.0 / 45.0, -56.0 / 15.0, 32.0 / 9.0, 0.0, 0.0, 0.0],
    [
        19372.0 / 6561.0,
        -25360.0 / 2187.0,
        64448.0 / 6561.0,
        -212.0 / 729.0,
        0.0,
        0.0,
    ],
    [
        9017.0 / 3168.0,
        -355.0 / 33.0,
        46732.0 / 5247.0,
        49.0 / 176.0,
        -5103.0 / 18656.0,
        0.0,
    ],
    [
        35.0 / 384.0,
        0.0,
        500.0 / 1113.0,
        125.0 / 192.0,
        -2187.0 / 6784.0,
        11.0 / 84.0,
    ],
];
// fifth-order weights minus embedded fourth-order weights
const E: [f64; 7] = [
    71.0 / 57600.0,
    0.0,
    -71.0 / 16695.0,
    71.0 / 1920.0,
    -17253.0 / 339200.0,
    22.0 / 525.0,
    -1.0 / 40.0,
];

/// Integrates from `t0` to `t_end > t0`, calling `observer` after every
/// accepted step (and once for the initial point). The observer may stop early.
pub fn integrate<T, S, O, const N: usize>(
    system: &S,
    t0: T,
    y0: [T; N],
    t_end: T,
    opts: &StepOptions<T>,
    mut observer: O,
) -> Result<Solution<T, N>>
where
    T: Real,
    S: OdeSystem<T, N>,
    O: FnMut(T, &[T; N]) -> Control,
{
    let mut t = t0;
    let mut y = y0;
    let mut k = [[T::zero(); N]; 7];
    k[0] = system.deriv(t, &y)?;
    let span = t_end - t0;
    let mut h = opts
        .h_init
        .unwrap_or_else(|| initial_step(&y, &k[0], span, opts));
    if let Some(hm) = opts.h_max {
        h = h.min(hm);
    }
    let mut accepted = 0;
    let mut rejected = 0;
    if observer(t, &y) == Control::Stop {
        return Ok(Solution {
            t,
            y,
            accepted,
            rejected,
        });
    }
    let safety = T::lit(0.9);
    while t < t_end {
        if accepted + rejected >= opts.max_steps {
            return Err(Error::StiffnessFailure {
                at: t.approx_f64(),
                step: h.approx_f64(),
            });
        }
        let last = t + h >= t_end;
        if last {
            h = t_end - t;
        }
        let h_floor = T::lit(16.0) * T::epsilon() * t.abs().max(span.abs());
        let trial = stages(system, t, &y, h, &mut k);
        let (y_new, err) = match trial {
            Ok(v) => v,
            Err(e) => {
                rejected += 1;
                h = h * T::lit(0.25);
                if h < h_floor {
                    return Err(e);
                }
                continue;
            }
        };
        let norm = error_norm(&y, &y_new, &err, opts);
        if norm <= T::one() {
            t = if last { t_end } else { t + h };
            y = y_new;
            k[0] = k[6];
            accepted += 1;
            if observer(t, &y) == Control::Stop {
                break;
            }
            let fac = if norm == T::zero() {
                T::lit(5.0)
            } else {
                (safety * norm.powf(T::lit(-0.2)))
                    .min(T::lit(5.0))
                    .max(T::lit(0.2))
            };
            h = h * fac;
        } else {
            rejected += 1;
            h = h * (safety * norm.powf(T::lit(-0.2))).max(T::lit(0.1));
        }
        if let Some(hm) = opts.h_max {
            h = h.min(hm);
        }
        if t < t_end && h < h_floor {
            return Err(Error::StiffnessFailure {
                at: t.approx_f64(),
                step: h.approx_f64(),
            });
        }
    }
    Ok(Solution {
        t,
        y,
        accepted,
        rejected,
    })
}

fn stages<T, S, const N: usize>(
    system: &S,
    t: T,
    y: &[T; N],
    h: T,
    k: &mut [[T; N]; 7],
) -> Result<([T; N], [T; N])>
where
    T: Real,
    S: OdeSystem<T, N>,
{
    for s in 1..7 {
        let mut ys = *y;
        for (i, yi) in ys.iter_mut().enumerate() {
            let mut acc = T::zero();
            for (j, kj) in k.iter().enumerate().take(s) {
                acc = acc + T::lit(A[s][j]) * kj[i];
            }
            *yi = *yi + h * acc;
        }
        k[s] = system.deriv(t + T::lit(C[s]) * h, &ys)?;
        if s == 6 {
            let mut err = [T::zero(); N];
            for (i, ei) in err.iter_mut().enumerate() {
                let mut acc = T::zero();
                for (j, kj) in k.iter().enumerate() {
                    acc = acc + T::lit(E[j]) * kj[i];
                }
                *ei = h * acc;
            }
            if ys.iter().chain(err.iter()).any(|v| !v.is_finite()) {
                return Err(Error::NonFiniteValue);
            }
            return Ok((ys, err));
        }
    }
    unreachable!()
}

fn error_norm<T: Real, const N: usize>(
    y: &[T; N],
    y_new: &[T; N],
    err: &[T; N],
    opts: &StepOptions<T>,
) -> T {
    let mut sum = T::zero();
    for i in 0..N {
        let sc = opts.atol + opts.rtol * y[i].abs().max(y_new[i].abs());
        let r = err[i] / sc;
        sum = sum + r * r;
    }
    (sum / T::from_usize(N).unwrap()).sqrt()
}

fn initial_step<T: Real, const N: usize>(
    y: &[T; N],
    f: &[T; N],
    span: T,
    opts: &StepOptions<T>,
) -> T {
    let mut d0 = T::zero();
    let mut d1 = T::zero();
    for i in 0..N {
        let sc = opts.atol + opts.rtol * y[i].abs();
        d0 = d0 + (y[i] / sc).powi(2);
        d1 = d1 + (f[i] / sc).powi(2);
    }
    let h = if d0 < T::lit(1e-10) || d1 < T::lit(1e-10) {
        T::lit(1e-6)
    } else {
        T::lit(0.01) * (d0 / d1).sqrt()
    };
    h.min(span.abs()).max(T::epsilon() * span.abs())
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn harmonic_oscillator_period() {
        let sys = |_t: f64, y: &[f64; 2]| Ok([y[1], -y[0]]);
        let opts = StepOptions::with_tol(1e-12, 1e-14);
        let tau = 2.0 * std::f64::consts::PI;
        let sol = integrate(&sys, 0.0, [1.0, 0.0], 10.0 * tau, &opts, |_, _| {
            Control::Continue
        })
        .unwrap();
        assert_relative_eq!(sol.y[0], 1.0, epsilon = 1e-9);
        assert!(sol.y[1].abs() < 1e-9);
        assert_eq!(sol.t, 10.0 * tau);
    }

    #[test]
    fn exponential_growth() {
        let sys = |_t: f64, y: &[f64; 1]| Ok([y[0]]);
        let opts = StepOptions::with_tol(1e-11, 1e-14);
        let sol = integrate(&sys, 0.0, [1.0], 5.0, &opts, |_, _| Control::Continue).unwrap();
        assert_relative_eq!(sol.y[0], 5f64.exp(), max_relative = 1e-9);
    }

    #[test]
    fn observer_can_stop() {
        let sys = |_t: f64, y: &[f64; 1]| Ok([-y[0]]);
        let opts = StepOptions::with_tol(1e-8, 1e-12);
        let mut seen = 0;
        let sol = integrate(&sys, 0.0, [1.0], 100.0, &opts, |t, _| {
            seen += 1;
            if t > 1.0 {
                Control::Stop
            } else {
                Control::Continue
            }
        })
        .unwrap();
        assert!(sol.t > 1.0 && sol.t < 100.0);
        assert_eq!(seen, sol.accepted + 1);
    }

    #[test]
    fn domain_error_surfaces_after_shrinking() {
        // y' = 1 with a wall at y = 1: steps shrink towards the wall, then fail.
        let sys = |_t: f64, y: &[f64; 1]| {
            if y[0] >= 1.0 {
                Err(Error::DomainExit { t: 0.0 })
            } else {
                Ok([1.0])
            }
        };
        let opts = StepOptions::with_tol(1e-8, 1e-12);
        let err = integrate(&sys, 0.0, [0.0], 2.0, &opts, |_, _| Control::Continue).unwrap_err();
        assert!(matches!(
            err,
            Error::DomainExit { .. } | Error::StiffnessFailure { .. }
        ));
    }
}
