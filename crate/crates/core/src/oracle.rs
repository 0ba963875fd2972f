//! Independent checks of the closed forms: ODE residuals, a shooting
//! eigenvalue solver and the harmonic-oscillator limit.

use crate::error::{Error, Result};
use crate::ode::{integrate, Control, StepOptions};
use crate::orthopoly::{laguerre, PolyCoeffs};
use crate::radial::{eval_state, normalized_state, normalized_sum, Jet, RadialFunction};
use crate::scalar::Real;
use crate::spectrum::{bound_state_count, energy_dimless, ho_energy};

/// Start of the outward integration.
pub const SHOOT_Y0: f64 = 1e-4;
/// Far point for Λ ≥ 0 when the boundary series would have to be matched beyond it.
pub const SHOOT_Y_FAR: f64 = 50.0;
/// Matching point of the boundary series, as a fraction of its radius of convergence.
pub const SHOOT_MATCH_FRACTION: f64 = 0.25;
pub const BOUNDARY_SERIES_MAX_TERMS: usize = 400;
/// Points at which the boundary series is sampled for node counting.
const TAIL_SAMPLES: usize = 400;
pub const BISECTION_TOL: f64 = 1e-10;
pub const BISECTION_MAX_ITER: usize = 200;

/// `(Λy²+1)R'' + (2/y+3Λy)R' + [2e - L(L+1)Λ - 1 + (1-y²)/(Λy²+1) - L(L+1)/y²]R`,
/// divided by the largest individual term. The sum is homogeneous in `R`, so
/// it is formed from the scaled jet.
pub fn radial_residual<T: Real, F: RadialFunction<T> + ?Sized>(
    f: &F,
    y: T,
    e: T,
    big_lambda: T,
    l: usize,
) -> Result<T> {
    let fy = T::one() + big_lambda * y * y;
    if !(y > T::zero()) || !(fy > T::zero()) {
        return Err(Error::OutsideDomain {
            what: "y",
            value: y.approx_f64(),
        });
    }
    let (j, _) = f.scaled_jet(y)?;
    let lf = T::from_usize(l).unwrap();
    let ll = lf * (lf + T::one());
    let r = j.value;
    let terms = [
        fy * j.d2,
        (T::lit(2.0) / y + T::lit(3.0) * big_lambda * y) * j.d1,
        T::lit(2.0) * e * r,
        -ll * big_lambda * r,
        -r,
        (T::one() - y * y) / fy * r,
        -ll / (y * y) * r,
    ];
    Ok(normalized_sum(&terms))
}

/// Harmonic-oscillator radial function `N y^L exp(-y²/2) L_n^{(L+1/2)}(y²)`,
/// normalized in L² with weight `y²`.
#[derive(Debug, Clone, PartialEq)]
pub struct HoWavefunction<T> {
    pub n: usize,
    pub l: usize,
    pub laguerre: PolyCoeffs<T>,
    pub norm_const: T,
}

impl<T: Real> HoWavefunction<T> {
    pub fn energy(&self) -> T {
        ho_energy(self.n, self.l)
    }

    pub fn eval(&self, y: T) -> T {
        let s = y * y;
        let q = self.laguerre.eval(&s);
        if y == T::zero() {
            return if self.l == 0 {
                self.norm_const * q
            } else {
                T::zero()
            };
        }
        let l = T::from_usize(self.l).unwrap();
        self.norm_const
            * q
            * (l * y.abs().ln() - s * T::lit(0.5)).exp()
            * y.signum().powi(self.l as i32)
    }

    /// The same function before normalization, as printed (`N = 1`).
    pub fn eval_unnormalized(&self, y: T) -> T {
        self.eval(y) / self.norm_const
    }
}

impl<T: Real> RadialFunction<T> for HoWavefunction<T> {
    fn jet(&self, y: T) -> Result<Jet<T>> {
        if !(y > T::zero()) {
            return Err(Error::OutsideDomain {
                what: "y",
                value: y.approx_f64(),
            });
        }
        let s = y * y;
        let l = T::from_usize(self.l).unwrap();
        let a = self.norm_const * (l * y.ln() - s * T::lit(0.5)).exp();
        let g = l / y - y;
        let a1 = a * g;
        let a2 = a * (g * g - l / s - T::one());
        let dq = self.laguerre.derivative();
        let q = self.laguerre.eval(&s);
        let q1 = dq.eval(&s);
        let q2 = dq.derivative().eval(&s);
        let two = T::lit(2.0);
        let qy = two * y * q1;
        let qyy = two * q1 + T::lit(4.0) * s * q2;
        Ok(Jet {
            value: a * q,
            d1: a1 * q + a * qy,
            d2: a2 * q + two * a1 * qy + a * qyy,
        })
    }
}

/// `ln Γ(m + 1/2)` for integer `m ≥ 0`, from `Γ(1/2) = √π` and the recurrence.
fn ln_gamma_half<T: Real>(m: usize) -> T {
    let mut acc = T::lit(std::f64::consts::PI).sqrt().ln();
    for j in 0..m {
        acc = acc + (T::from_usize(j).unwrap() + T::lit(0.5)).ln();
    }
    acc
}

/// `∫ y^{2L+2} e^{-y²} (L_n^{(L+1/2)}(y²))² dy = Γ(n+L+3/2) / (2 n!)`.
pub fn ho_wavefunction<T: Real>(n: usize, l: usize) -> HoWavefunction<T> {
    let ln_fact = (1..=n).fold(T::zero(), |acc, j| acc + T::from_usize(j).unwrap().ln());
    let ln_norm_sq = ln_gamma_half::<T>(n + l + 1) - ln_fact - T::lit(2.0).ln();
    HoWavefunction {
        n,
        l,
        laguerre: laguerre(n, T::from_usize(l).unwrap() + T::lit(0.5)),
        norm_const: (-ln_norm_sq * T::lit(0.5)).exp(),
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ShootingResult<T> {
    pub e_numeric: T,
    pub iterations: usize,
    /// Final bisection bracket.
    pub bracket: (T, T),
    /// Terminal value at `e_numeric` relative to its values at the initial bracket ends.
    pub terminal_mismatch: T,
    /// Interior zeros of the shooting solution.
    pub nodes: usize,
}

/// Closed-form energy of state `k` plus or minus half the distance to the
/// nearest admissible neighbour (half a unit for a lone state), capped below
/// the continuum for Λ > 0.
pub fn seed_bracket<T: Real>(big_lambda: T, l: usize, k: usize) -> (T, T) {
    let count = bound_state_count(&big_lambda, l).truncate(k + 2);
    let e = energy_dimless(k, l, big_lambda);
    let mut gap: Option<T> = None;
    if k + 1 < count {
        gap = Some((energy_dimless(k + 1, l, big_lambda) - e).abs());
    }
    if k > 0 {
        let down = (e - energy_dimless(k - 1, l, big_lambda)).abs();
        gap = Some(gap.map_or(down, |g| g.min(down)));
    }
    let half = gap.unwrap_or(T::one()) * T::lit(0.5);
    let mut hi = e + half;
    if big_lambda > T::zero() {
        // stay below the continuum edge, where decay at infinity turns oscillatory
        let lf = T::from_usize(l).unwrap();
        let edge =
            (big_lambda + T::one() / big_lambda + lf * (lf + T::one()) * big_lambda + T::one())
                * T::lit(0.5);
        hi = hi.min((e + edge) * T::lit(0.5));
    }
    (e - half, hi)
}

struct Terminal<T> {
    value: T,
    nodes: usize,
}

fn poly_mul<T: Real>(a: &[T], b: &[T]) -> Vec<T> {
    let mut out = vec![T::zero(); a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = out[i + j] + x * y;
        }
    }
    out
}

fn poly_add<T: Real>(a: &[T], b: &[T]) -> Vec<T> {
    let mut out = vec![T::zero(); a.len().max(b.len())];
    for (i, o) in out.iter_mut().enumerate() {
        *o = a.get(i).copied().unwrap_or(T::zero()) + b.get(i).copied().unwrap_or(T::zero());
    }
    out
}

fn poly_scale<T: Real>(a: &[T], k: T) -> Vec<T> {
    a.iter().map(|&x| x * k).collect()
}

/// Frobenius solution `z^rho Σ a_k z^k` of `z²A(z)R'' + zB(z)R' + C(z)R = 0`
/// for polynomial `A`, `B`, `C`. The other indicial root must not exceed `rho`
/// by a positive integer.
struct BoundarySeries<T> {
    rho: T,
    coeffs: Vec<T>,
}

impl<T: Real> BoundarySeries<T> {
    fn new(a: &[T], b: &[T], c: &[T], rho: T, z_max: T) -> Result<Self> {
        let at = |p: &[T], j: usize| p.get(j).copied().unwrap_or(T::zero());
        let indicial = |j: usize, r: T| at(a, j) * r * (r - T::one()) + at(b, j) * r + at(c, j);
        let depth = a.len().max(b.len()).max(c.len());
        let mut coeffs = vec![T::one()];
        let mut sum = T::one();
        let mut quiet = 0;
        for m in 1..BOUNDARY_SERIES_MAX_TERMS {
            let mut acc = T::zero();
            for j in 1..depth.min(m + 1) {
                let r = rho + T::from_usize(m - j).unwrap();
                acc = acc + coeffs[m - j] * indicial(j, r);
            }
            let am = -acc / indicial(0, rho + T::from_usize(m).unwrap());
            let term = (am * z_max.powi(m as i32)).abs();
            coeffs.push(am);
            sum = sum + term;
            quiet = if term <= T::epsilon() * sum {
                quiet + 1
            } else {
                0
            };
            if quiet >= depth {
                return Ok(Self { rho, coeffs });
            }
        }
        Err(Error::SeriesNotConverged {
            terms: BOUNDARY_SERIES_MAX_TERMS,
            tail: 0.0,
        })
    }

    /// The power series without the `z^rho` factor, which carries the sign.
    fn sum(&self, z: T) -> T {
        self.coeffs
            .iter()
            .rev()
            .fold(T::zero(), |acc, &a| acc * z + a)
    }

    /// Value and `z`-derivative.
    fn eval(&self, z: T) -> (T, T) {
        let mut d = T::zero();
        for (k, &a) in self.coeffs.iter().enumerate().rev() {
            d = d * z + a * (self.rho + T::from_usize(k).unwrap());
        }
        let zr = z.powf(self.rho);
        (zr * self.sum(z), zr / z * d)
    }

    fn sign_changes(&self, z_max: T) -> usize {
        let steps = T::from_usize(TAIL_SAMPLES).unwrap();
        let signs: Vec<bool> = (1..=TAIL_SAMPLES)
            .map(|i| self.sum(z_max * T::from_usize(i).unwrap() / steps) > T::zero())
            .collect();
        signs.windows(2).filter(|w| w[0] != w[1]).count()
    }
}

/// Regular solution at the finite endpoint, in `s = y_e - y`.
fn endpoint_series<T: Real>(
    big_lambda: T,
    l: usize,
    e: T,
    ye: T,
    s_max: T,
) -> Result<BoundarySeries<T>> {
    let lf = T::from_usize(l).unwrap();
    let ll = lf * (lf + T::one());
    let c0 = T::lit(2.0) * e - ll * big_lambda - T::one();
    let ye2 = ye * ye;
    let y = [ye, -T::one()];
    let y2 = poly_mul(&y, &y);
    let g = [T::lit(2.0) * ye, -T::one()];
    // f = 1 + Λy² = s·g/y_e²
    let f = poly_scale(&poly_mul(&[T::zero(), T::one()], &g), T::one() / ye2);
    let a = poly_scale(&poly_mul(&poly_mul(&g, &g), &y2), T::one() / (ye2 * ye2));
    let inner = poly_add(&[T::lit(2.0)], &poly_scale(&y2, T::lit(3.0) * big_lambda));
    let b = poly_scale(&poly_mul(&poly_mul(&g, &y), &inner), -T::one() / ye2);
    let c = poly_add(
        &poly_add(
            &poly_scale(&poly_mul(&f, &y2), c0),
            &poly_mul(&poly_add(&[T::one()], &poly_scale(&y2, -T::one())), &y2),
        ),
        &poly_scale(&f, -ll),
    );
    // the eigenstates carry f^{1/(2|Λ|)}; the other root exceeds it by less than 1/2
    BoundarySeries::new(
        &a,
        &b,
        &c,
        T::one() / (T::lit(2.0) * big_lambda.abs()),
        s_max,
    )
}

/// Decaying solution at infinity, in `w = 1/y²`.
fn infinity_series<T: Real>(big_lambda: T, l: usize, e: T, w_max: T) -> Result<BoundarySeries<T>> {
    let lf = T::from_usize(l).unwrap();
    let ll = lf * (lf + T::one());
    let c0 = T::lit(2.0) * e - ll * big_lambda - T::one();
    let wl = [big_lambda, T::one()];
    let a = poly_scale(&poly_mul(&wl, &wl), T::lit(4.0));
    let b = poly_scale(&poly_mul(&[T::zero(), T::one()], &wl), T::lit(2.0));
    let c = poly_add(
        &poly_add(&poly_scale(&wl, c0), &[-T::one(), T::one()]),
        &poly_scale(&poly_mul(&[T::zero(), T::one()], &wl), -ll),
    );
    let disc =
        T::lit(0.25) - (c0 * big_lambda - T::one()) / (T::lit(4.0) * big_lambda * big_lambda);
    if !(disc >= T::zero()) {
        // oscillatory at infinity: e lies in the continuum
        return Err(Error::OutsideDomain {
            what: "e",
            value: e.approx_f64(),
        });
    }
    BoundarySeries::new(&a, &b, &c, T::lit(0.5) + disc.sqrt(), w_max)
}

/// Integrates outward at energy `e` and returns the terminal functional whose
/// sign change marks an eigenvalue: the Wronskian with the admissible boundary
/// solution at a matching point inside its series disc.
fn terminal<T: Real>(big_lambda: T, l: usize, e: T) -> Result<Terminal<T>> {
    let lf = T::from_usize(l).unwrap();
    let ll = lf * (lf + T::one());
    let two = T::lit(2.0);
    let y0 = T::lit(SHOOT_Y0);
    let frac = T::lit(SHOOT_MATCH_FRACTION);
    // R = (y/y0)^L (1 + c1 y²); the scale is irrelevant for a linear equation
    let c1 = -(two * e + big_lambda * lf) / (T::lit(4.0) * lf + T::lit(6.0));
    let r0 = T::one() + c1 * y0 * y0;
    let dr0 = lf / y0 * r0 + two * c1 * y0;
    enum Far<T> {
        Endpoint(T),
        Infinity(T),
        Plain,
    }
    let far = if big_lambda < T::zero() {
        Far::Endpoint((T::one() / big_lambda.abs()).sqrt())
    } else if big_lambda > T::zero()
        && T::lit(1.0) / (frac * big_lambda).sqrt() <= T::lit(SHOOT_Y_FAR)
    {
        Far::Infinity(T::one() / (frac * big_lambda).sqrt())
    } else {
        Far::Plain
    };
    let y_end = match far {
        Far::Endpoint(ye) => ye * (T::one() - frac),
        Far::Infinity(ym) => ym,
        Far::Plain => T::lit(SHOOT_Y_FAR),
    };
    let rhs = |y: T, s: &[T; 2]| -> Result<[T; 2]> {
        let f = T::one() + big_lambda * y * y;
        if !(f > T::zero()) {
            return Err(Error::OutsideDomain {
                what: "y",
                value: y.approx_f64(),
            });
        }
        let coef = two * e - ll * big_lambda - T::one() + (T::one() - y * y) / f - ll / (y * y);
        let d2 = -((two / y + T::lit(3.0) * big_lambda * y) * s[1] + coef * s[0]) / f;
        Ok([s[1], d2])
    };
    // the start is scaled to R(y0) = 1, so a fixed absolute floor is meaningful
    let opts = StepOptions::with_tol(T::lit(1e-12), T::lit(1e-12));
    let mut samples: Vec<(T, T)> = Vec::new();
    let sol = integrate(&rhs, y0, [r0, dr0], y_end, &opts, |y, s| {
        samples.push((y, s[0]));
        Control::Continue
    })?;
    let (r, dr) = (sol.y[0], sol.y[1]);
    let (value, tail_nodes) = match far {
        Far::Endpoint(ye) => {
            let s_m = ye * frac;
            let series = endpoint_series(big_lambda, l, e, ye, s_m)?;
            let (b, db_ds) = series.eval(s_m);
            (r * -db_ds - dr * b, series.sign_changes(s_m))
        }
        Far::Infinity(ym) => {
            let w_m = T::one() / (ym * ym);
            let series = infinity_series(big_lambda, l, e, w_m)?;
            let (b, db_dw) = series.eval(w_m);
            let db_dy = -two * db_dw / (ym * ym * ym);
            (r * db_dy - dr * b, series.sign_changes(w_m))
        }
        Far::Plain => (r, 0),
    };
    Ok(Terminal {
        value,
        nodes: count_nodes(&samples) + tail_nodes,
    })
}

/// Sign changes before the solution has decayed by four orders of magnitude,
/// so that crossings of the tiny competing branch at the far end are ignored.
fn count_nodes<T: Real>(samples: &[(T, T)]) -> usize {
    let peak = samples.iter().fold(T::zero(), |m, s| m.max(s.1.abs()));
    let floor = peak * T::lit(1e-4);
    let cut = samples
        .iter()
        .rposition(|s| s.1.abs() >= floor)
        .unwrap_or(0);
    samples[..=cut]
        .windows(2)
        .filter(|w| (w[0].1 > T::zero()) != (w[1].1 > T::zero()) && w[1].1 != T::zero())
        .count()
}

/// Bisects the terminal condition of the radial problem for the `k`-th state.
pub fn shoot_eigenvalue<T: Real>(
    big_lambda: T,
    l: usize,
    k: usize,
    e_bracket: (T, T),
) -> Result<ShootingResult<T>> {
    if bound_state_count(&big_lambda, l).truncate(k) <= k {
        return Err(Error::NotAdmissible {
            n: k,
            l,
            lambda: big_lambda.approx_f64(),
        });
    }
    let (mut lo, mut hi) = e_bracket;
    if !(lo < hi) {
        return Err(Error::BracketInvalid {
            lo: lo.approx_f64(),
            hi: hi.approx_f64(),
        });
    }
    let t_lo = terminal(big_lambda, l, lo)?;
    let t_hi = terminal(big_lambda, l, hi)?;
    let sign_lo = t_lo.value > T::zero();
    if sign_lo == (t_hi.value > T::zero()) || t_lo.value == T::zero() || t_hi.value == T::zero() {
        return Err(Error::BracketInvalid {
            lo: lo.approx_f64(),
            hi: hi.approx_f64(),
        });
    }
    let tol = T::lit(BISECTION_TOL);
    let mut iterations = 0;
    let mut lo_terminal = t_lo.nodes;
    while hi - lo > tol && iterations < BISECTION_MAX_ITER {
        let mid = (lo + hi) * T::lit(0.5);
        let t = terminal(big_lambda, l, mid)?;
        iterations += 1;
        if t.value == T::zero() {
            lo = mid;
            hi = mid;
            lo_terminal = t.nodes;
            break;
        }
        if (t.value > T::zero()) == sign_lo {
            lo = mid;
            lo_terminal = t.nodes;
        } else {
            hi = mid;
        }
    }
    let e_numeric = (lo + hi) * T::lit(0.5);
    let at = terminal(big_lambda, l, e_numeric)?;
    Ok(ShootingResult {
        e_numeric,
        iterations,
        bracket: (lo, hi),
        terminal_mismatch: at.value.abs() / (t_lo.value.abs() + t_hi.value.abs()),
        nodes: lo_terminal,
    })
}

/// Lower edge of the comparison window.
pub const LIMIT_Y_MIN: f64 = 0.05;
pub const LIMIT_Y_MAX: f64 = 5.0;
pub const LIMIT_POINTS: usize = 2000;

/// `sup |R_Λ - R_HO| / max |R_HO|` over `y ∈ [0.05, 5]` for unit-normalized,
/// sign-aligned states.
pub fn limit_compare<T: Real>(n: usize, l: usize, lambda_small: T) -> Result<T> {
    if !(lambda_small != T::zero() && lambda_small.abs() <= T::lit(1e-2)) {
        return Err(Error::OutsideDomain {
            what: "Lambda_small",
            value: lambda_small.approx_f64(),
        });
    }
    let state = normalized_state(n, l, lambda_small)?;
    let ho = ho_wavefunction::<T>(n, l);
    let (y_min, y_max) = (T::lit(LIMIT_Y_MIN), T::lit(LIMIT_Y_MAX));
    let steps = T::from_usize(LIMIT_POINTS - 1).unwrap();
    let mut worst = T::zero();
    let mut peak = T::zero();
    for i in 0..LIMIT_POINTS {
        let y = y_min + (y_max - y_min) * T::from_usize(i).unwrap() / steps;
        let h = ho.eval(y);
        worst = worst.max((eval_state(&state, y)? - h).abs());
        peak = peak.max(h.abs());
    }
    Ok(worst / peak)
}
