//! Exact radial eigenfunctions, the weighted inner product and related checks.
//!
//! A state is `R_n(y) = N y^L (Λy²+1)^{-1/(2Λ)} P_n^{(a,b)}(1+2Λy²)` with
//! `a = L+1/2`, `b = -1/Λ-1/2`. The Jacobi factor is evaluated through its
//! expansion in `s = y²`, which stays well conditioned as Λ → 0. For large `n`
//! that expansion cancels, and the value recurrence in `x` takes over. It
//! carries a separate exponent, because the factor alone can exceed the f64
//! range where the weight is negligible.

use crate::error::{Error, Result};
use crate::orthopoly::{jacobi, jacobi_value_below_one_scaled, pochhammer, PolyCoeffs, PolyParams};
use crate::params::{domain, ModelParams};
use crate::quadrature::{jacobi_weighted_scaled, JacobiPoint, Tolerance};
use crate::scalar::Real;
use crate::spectrum::{bound_state_count, energy_dimless, is_admissible, QuantumNumbers};

/// Below this |Λ| the closed form is replaced by the harmonic-oscillator branch.
pub const LAMBDA_SWITCH: f64 = 1e-8;

/// Truncation of the non-terminating series in [`second_solution`].
pub const SERIES_MAX_TERMS: usize = 200;
pub const SERIES_TAIL_TOL: f64 = 1e-10;

/// Value with first and second derivative at a point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Jet<T> {
    pub value: T,
    pub d1: T,
    pub d2: T,
}

/// A radial function with analytic derivatives, as consumed by the residual checks.
pub trait RadialFunction<T> {
    fn jet(&self, y: T) -> Result<Jet<T>>;

    /// The jet as `(j, e)` meaning `j·exp(e)`, for functions whose values
    /// leave the floating-point range. Defaults to the plain jet.
    fn scaled_jet(&self, y: T) -> Result<(Jet<T>, T)>
    where
        T: Real,
    {
        Ok((self.jet(y)?, T::zero()))
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RadialEigenstate<T> {
    pub qn: QuantumNumbers,
    pub big_lambda: T,
    pub e: T,
    /// `P_n^{(a,b)}` as a polynomial in `x = 1 + 2Λy²`.
    pub poly: PolyCoeffs<T>,
    /// The same factor as a polynomial in `s = y²`.
    pub s_poly: PolyCoeffs<T>,
    pub l_power: usize,
    /// Power of `(Λy²+1)`, equal to `-1/(2Λ)`.
    pub prefactor_exponent: T,
    /// `(a+1)_n / n!`, the value of the Jacobi factor at `y = 0`.
    pub hyp_constant: T,
    /// Multiplier giving unit norm; `1` until [`normalize`] is applied.
    pub norm_const: T,
    /// Evaluate the Jacobi factor by the value recurrence in `x` rather than the
    /// `s`-expansion. Set when the expansion would lose about four digits to
    /// cancellation where the state is concentrated.
    pub jacobi_by_recurrence: bool,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WeightedInnerProductResult<T> {
    pub value: T,
    pub est_abs_error: T,
}

impl<T: Real> RadialEigenstate<T> {
    /// Jacobi parameters `(a, b)`.
    pub fn jacobi_params(&self) -> (T, T) {
        let half = T::lit(0.5);
        let l = T::from_usize(self.qn.l).unwrap();
        (l + half, -T::one() / self.big_lambda - half)
    }

    /// `α = L/2 + 1/2 - 1/(2Λ)` of the general hypergeometric solution.
    pub fn alpha_param(&self) -> T {
        alpha_param(self.qn.l, self.big_lambda)
    }

    /// `β²`; for a state `α - β = -n`.
    pub fn beta_squared(&self) -> T {
        beta_squared(self.qn.l, self.big_lambda, self.e)
    }

    /// The Jacobi factor `P_n^{(a,b)}(1+2Λs)` as `(m, e)` meaning `m·exp(e)`.
    fn scaled_factor(&self, s: T) -> (T, T) {
        if self.jacobi_by_recurrence {
            let (a, b) = self.jacobi_params();
            jacobi_value_below_one_scaled(self.qn.n, a, b, &(-T::lit(2.0) * self.big_lambda * s))
        } else {
            (self.s_poly.eval(&s), T::zero())
        }
    }

    /// The Jacobi factor with its first two `s`-derivatives, all scaled by a
    /// common `exp(e)` returned last, using
    /// `d/dx P_n^{(a,b)} = (n+a+b+1)/2 P_{n-1}^{(a+1,b+1)}`.
    fn factor_jet(&self, s: T) -> (T, T, T, T) {
        if !self.jacobi_by_recurrence {
            let dq = self.s_poly.derivative();
            return (
                self.s_poly.eval(&s),
                dq.eval(&s),
                dq.derivative().eval(&s),
                T::zero(),
            );
        }
        let (a, b) = self.jacobi_params();
        let n = self.qn.n;
        let d = -T::lit(2.0) * self.big_lambda * s;
        let half = T::lit(0.5);
        let one = T::one();
        let two = T::lit(2.0);
        let nab = T::from_usize(n).unwrap() + a + b;
        let zero = (T::zero(), T::zero());
        let q = jacobi_value_below_one_scaled(n, a, b, &d);
        let d1 = if n >= 1 {
            jacobi_value_below_one_scaled(n - 1, a + one, b + one, &d)
        } else {
            zero
        };
        let d2 = if n >= 2 {
            jacobi_value_below_one_scaled(n - 2, a + two, b + two, &d)
        } else {
            zero
        };
        let e = q.1.max(d1.1).max(d2.1);
        let at = |(m, ei): (T, T)| m * (ei - e).exp();
        let dx = two * self.big_lambda;
        (
            at(q),
            dx * (nab + one) * half * at(d1),
            dx * dx * (nab + one) * (nab + two) * T::lit(0.25) * at(d2),
            e,
        )
    }

    fn log_prefactor(&self, s: T) -> T {
        // ln (1 + Λs)^{-1/(2Λ)} accurate for small Λs
        -(self.big_lambda * s).ln_1p() / (T::lit(2.0) * self.big_lambda)
    }
}

fn alpha_param<T: Real>(l: usize, big_lambda: T) -> T {
    let half = T::lit(0.5);
    T::from_usize(l).unwrap() * half + half - half / big_lambda
}

fn beta_squared<T: Real>(l: usize, big_lambda: T, e: T) -> T {
    let lf = T::from_usize(l).unwrap();
    let lam = big_lambda;
    (lam + T::one() - T::lit(2.0) * e * lam + lam * lam * (lf * lf + lf + T::one()))
        / (T::lit(4.0) * lam * lam)
}

/// Weight `μ = y² / sqrt(Λy²+1)` of the Hilbert space.
pub fn weight<T: Real>(y: T, big_lambda: T) -> Result<T> {
    let f = T::one() + big_lambda * y * y;
    if !(y > T::zero()) || !(f > T::zero()) {
        return Err(Error::OutsideDomain {
            what: "y",
            value: y.approx_f64(),
        });
    }
    Ok(y * y / f.sqrt())
}

/// Coefficients in `s = y²` of `P_n^{(L+1/2, -1/Λ-1/2)}(1+2Λs)`.
fn s_coefficients<T: Real>(n: usize, l: usize, big_lambda: T) -> (T, Vec<T>) {
    let lf = T::from_usize(l).unwrap();
    let nf = T::from_usize(n).unwrap();
    let c = lf + T::lit(1.5);
    let hyp = pochhammer(&c, n) / (1..=n).fold(T::one(), |acc, j| acc * T::from_usize(j).unwrap());
    let mut coeffs = Vec::with_capacity(n + 1);
    let mut term = hyp;
    coeffs.push(term);
    for k in 0..n {
        let kf = T::from_usize(k).unwrap();
        let upper = T::one() - big_lambda * (nf + lf + T::one() + kf);
        term = term * (kf - nf) * upper / ((c + kf) * (kf + T::one()));
        coeffs.push(term);
    }
    (hyp, coeffs)
}

pub fn build_state<T: Real>(n: usize, l: usize, big_lambda: T) -> Result<RadialEigenstate<T>> {
    if !(big_lambda.abs() > T::lit(LAMBDA_SWITCH)) {
        return Err(Error::LambdaTooSmall {
            lambda: big_lambda.approx_f64(),
        });
    }
    if !is_admissible(n, l, &big_lambda) {
        return Err(Error::NotAdmissible {
            n,
            l,
            lambda: big_lambda.approx_f64(),
        });
    }
    let half = T::lit(0.5);
    let a = T::from_usize(l).unwrap() + half;
    let b = -T::one() / big_lambda - half;
    let poly = jacobi(n, a, b);
    let (hyp_constant, coeffs) = s_coefficients(n, l, big_lambda);
    // size of the expansion's terms, relative to its value at 0, out to where the
    // state still carries weight (the oscillator turning point 4n+2L+3 plus margin)
    let jacobi_by_recurrence = {
        let mut s_typ = T::from_usize(4 * n + 2 * l + 10).unwrap();
        if big_lambda < T::zero() {
            s_typ = s_typ.min(T::one() / big_lambda.abs());
        }
        let spread = coeffs
            .iter()
            .rev()
            .fold(T::zero(), |acc, c| acc * s_typ + c.abs());
        !(spread <= T::lit(1e4) * hyp_constant)
    };
    let s_poly = PolyCoeffs::new(
        coeffs,
        PolyParams::Hypergeometric {
            b: T::from_usize(n + l + 1).unwrap() - T::one() / big_lambda,
            c: a + T::one(),
        },
    );
    Ok(RadialEigenstate {
        qn: QuantumNumbers::new(n, l),
        big_lambda,
        e: energy_dimless(n, l, big_lambda),
        poly,
        s_poly,
        l_power: l,
        prefactor_exponent: -T::one() / (T::lit(2.0) * big_lambda),
        hyp_constant,
        norm_const: T::one(),
        jacobi_by_recurrence,
    })
}

fn check_closed<T: Real>(state: &RadialEigenstate<T>, y: T) -> Result<()> {
    if !domain(state.big_lambda).contains_closed(y) {
        return Err(Error::OutsideDomain {
            what: "y",
            value: y.approx_f64(),
        });
    }
    Ok(())
}

/// `R(y)` on the closed domain; exactly zero at the finite endpoint.
pub fn eval_state<T: Real>(state: &RadialEigenstate<T>, y: T) -> Result<T> {
    check_closed(state, y)?;
    let s = y * y;
    let f = T::one() + state.big_lambda * s;
    if f <= T::zero() {
        return Ok(T::zero());
    }
    let (q, e) = state.scaled_factor(s);
    if y == T::zero() {
        return Ok(if state.l_power == 0 {
            state.norm_const * q * e.exp()
        } else {
            T::zero()
        });
    }
    let l = T::from_usize(state.l_power).unwrap();
    let log_a = l * y.ln() + state.log_prefactor(s) + e;
    Ok(state.norm_const * q * log_a.exp())
}

/// `R`, `R'` and `R''` at an interior point.
pub fn eval_jet<T: Real>(state: &RadialEigenstate<T>, y: T) -> Result<Jet<T>> {
    let (j, e) = eval_jet_scaled(state, y)?;
    let k = e.exp();
    Ok(Jet {
        value: j.value * k,
        d1: j.d1 * k,
        d2: j.d2 * k,
    })
}

/// The jet as `(j, e)` meaning `j·exp(e)`; `e` absorbs the normalization and
/// the prefactor `y^L (1+Λy²)^{-1/(2Λ)}`, so `j` stays representable deep in
/// the decaying region.
pub fn eval_jet_scaled<T: Real>(state: &RadialEigenstate<T>, y: T) -> Result<(Jet<T>, T)> {
    let s = y * y;
    let f = T::one() + state.big_lambda * s;
    if !(y > T::zero()) || !(f > T::zero()) {
        return Err(Error::OutsideDomain {
            what: "y",
            value: y.approx_f64(),
        });
    }
    let l = T::from_usize(state.l_power).unwrap();
    let (q, q1s, q2s, e) = state.factor_jet(s);
    let log_a = state.norm_const.abs().ln() + l * y.ln() + state.log_prefactor(s) + e;
    let a = state.norm_const.signum();
    let g = l / y - y / f;
    let a1 = a * g;
    let a2 = a * (g * g - l / s - (T::one() - state.big_lambda * s) / (f * f));
    let two = T::lit(2.0);
    let qy = two * y * q1s;
    let qyy = two * q1s + T::lit(4.0) * s * q2s;
    let jet = Jet {
        value: a * q,
        d1: a1 * q + a * qy,
        d2: a2 * q + two * a1 * qy + a * qyy,
    };
    Ok((jet, log_a))
}

impl<T: Real> RadialFunction<T> for RadialEigenstate<T> {
    fn jet(&self, y: T) -> Result<Jet<T>> {
        eval_jet(self, y)
    }

    fn scaled_jet(&self, y: T) -> Result<(Jet<T>, T)> {
        eval_jet_scaled(self, y)
    }
}

/// Second, generally singular solution
/// `G = y^{-L-1} (Λy²+1)^{-1/(2Λ)} ₂F₁(α-L-1/2+β, α-L-1/2-β; 1/2-L; -Λy²)`,
/// summed as a truncated series. Only `β²` enters, so complex `β` is fine.
pub fn second_solution<T: Real>(l: usize, big_lambda: T, e: T, y: T) -> Result<T> {
    let f = T::one() + big_lambda * y * y;
    if !(y > T::zero()) || !(f > T::zero()) || big_lambda == T::zero() {
        return Err(Error::OutsideDomain {
            what: "y",
            value: y.approx_f64(),
        });
    }
    let lf = T::from_usize(l).unwrap();
    let half = T::lit(0.5);
    let u = alpha_param(l, big_lambda) - lf - half;
    let b2 = beta_squared(l, big_lambda, e);
    let c = half - lf;
    let z = -big_lambda * y * y;
    let tol = T::lit(SERIES_TAIL_TOL);
    let mut term = T::one();
    let mut sum = T::one();
    let mut converged = false;
    for k in 0..SERIES_MAX_TERMS {
        let kf = T::from_usize(k).unwrap();
        let top = (u + kf) * (u + kf) - b2;
        term = term * top * z / ((c + kf) * (kf + T::one()));
        sum = sum + term;
        if term == T::zero() || term.abs() < tol * T::lit(1e-3) * sum.abs() {
            converged = true;
            break;
        }
    }
    if !converged {
        // geometric tail bound with ratio → |z|
        let az = z.abs();
        let tail = if az < T::one() {
            term.abs() * az / (T::one() - az) / sum.abs().max(T::min_positive_value())
        } else {
            T::infinity()
        };
        if !(tail <= tol) {
            return Err(Error::SeriesNotConverged {
                terms: SERIES_MAX_TERMS,
                tail: tail.approx_f64(),
            });
        }
    }
    let log_pre =
        -(lf + T::one()) * y.ln() - (big_lambda * y * y).ln_1p() / (T::lit(2.0) * big_lambda);
    Ok(log_pre.exp() * sum)
}

fn tolerance<T: Real>() -> Tolerance<T> {
    Tolerance::default()
}

/// Maximum accepted absolute quadrature error for a unit-scale inner product.
pub const INNER_PRODUCT_TOL: f64 = 1e-10;

/// `∫ R_a R_b μ dy` over the domain, mapped onto a Jacobi-weight integral on (-1, 1).
pub fn inner_product<T: Real>(
    sa: &RadialEigenstate<T>,
    sb: &RadialEigenstate<T>,
) -> Result<WeightedInnerProductResult<T>> {
    if sa.qn.l != sb.qn.l || sa.big_lambda != sb.big_lambda {
        return Err(Error::OutsideDomain {
            what: "mismatched state family, Lambda",
            value: sb.big_lambda.approx_f64(),
        });
    }
    let lam = sa.big_lambda;
    let l = T::from_usize(sa.qn.l).unwrap();
    let half = T::lit(0.5);
    let a = l + half;
    let ln2 = T::lit(2.0).ln();
    let ln_n = (sa.norm_const * sb.norm_const).abs().ln();
    let sign = (sa.norm_const * sb.norm_const).signum();
    let integral = if lam < T::zero() {
        // x = 1 - 2|Λ|y²
        let mu = lam.abs();
        let b = T::one() / mu - half;
        let log_scale = ln_n - a * (T::lit(2.0) * mu).ln() - b * ln2 - (T::lit(4.0) * mu).ln();
        let g = |p: &JacobiPoint<T>| {
            let s = p.one_minus_x / (T::lit(2.0) * mu);
            let (ma, ea) = sa.scaled_factor(s);
            let (mb, eb) = sb.scaled_factor(s);
            (ma * mb, ea + eb)
        };
        jacobi_weighted_scaled(a, b, log_scale, g, tolerance())?
    } else {
        // y² = (1-x) / (Λ(1+x)); the s-polynomials become homogeneous in (1-x)/Λ and 1+x
        let (da, db) = (sa.s_poly.degree(), sb.s_poly.degree());
        let b = T::one() / lam - l - T::lit(2.0) - T::from_usize(da + db).unwrap();
        let log_scale = ln_n - (l + T::lit(1.5)) * lam.ln() - (T::one() / lam + half) * ln2;
        // each factor carries (1+x)^degree, which the weight exponent b undoes
        let factor = |st: &RadialEigenstate<T>, p: &JacobiPoint<T>, num: T| {
            if st.jacobi_by_recurrence {
                let (m, e) = st.scaled_factor(num / p.one_plus_x);
                let deg = T::from_usize(st.s_poly.degree()).unwrap();
                (m, e + deg * p.one_plus_x.ln())
            } else {
                (
                    homogeneous(st.s_poly.coeffs(), num, p.one_plus_x),
                    T::zero(),
                )
            }
        };
        let g = |p: &JacobiPoint<T>| {
            let num = p.one_minus_x / lam;
            let (ma, ea) = factor(sa, p, num);
            let (mb, eb) = factor(sb, p, num);
            (ma * mb, ea + eb)
        };
        jacobi_weighted_scaled(a, b, log_scale, g, tolerance())?
    };
    let scale = integral.abs_integral.max(T::one());
    if integral.abs_error > T::lit(INNER_PRODUCT_TOL) * scale {
        return Err(Error::QuadratureFailure {
            estimate: integral.abs_error.approx_f64(),
            tolerance: (T::lit(INNER_PRODUCT_TOL) * scale).approx_f64(),
        });
    }
    Ok(WeightedInnerProductResult {
        value: sign * integral.value,
        est_abs_error: integral.abs_error,
    })
}

/// `Σ c_k N^k D^{deg-k}` by Horner's scheme.
fn homogeneous<T: Real>(c: &[T], num: T, den: T) -> T {
    let d = c.len() - 1;
    let mut acc = c[d];
    let mut den_pow = T::one();
    for k in (0..d).rev() {
        den_pow = den_pow * den;
        acc = acc * num + c[k] * den_pow;
    }
    acc
}

/// Rescales the state to unit norm. The sign convention `R/y^L > 0` near 0 is
/// already built in, since the Jacobi factor at `y = 0` is `(a+1)_n/n! > 0`.
pub fn normalize<T: Real>(state: &RadialEigenstate<T>) -> Result<RadialEigenstate<T>> {
    let ip = inner_product(state, state)?;
    if !(ip.value > T::zero()) {
        return Err(Error::QuadratureFailure {
            estimate: ip.est_abs_error.approx_f64(),
            tolerance: ip.value.approx_f64(),
        });
    }
    let mut out = state.clone();
    out.norm_const = state.norm_const / ip.value.sqrt();
    Ok(out)
}

/// Builds and normalizes the state, the common entry point.
pub fn normalized_state<T: Real>(n: usize, l: usize, big_lambda: T) -> Result<RadialEigenstate<T>> {
    normalize(&build_state(n, l, big_lambda)?)
}

#[derive(Debug, Clone, PartialEq)]
pub struct GramMatrix<T> {
    /// Row-major, `size × size`.
    pub entries: Vec<T>,
    pub size: usize,
    pub max_abs_error: T,
}

impl<T: Real> GramMatrix<T> {
    pub fn get(&self, m: usize, n: usize) -> T {
        self.entries[m * self.size + n]
    }

    /// Largest `|G - I|` entry.
    pub fn identity_defect(&self) -> T {
        let mut worst = T::zero();
        for m in 0..self.size {
            for n in 0..self.size {
                let target = if m == n { T::one() } else { T::zero() };
                worst = worst.max((self.get(m, n) - target).abs());
            }
        }
        worst
    }
}

/// Gram matrix of the normalized states `n = 0..=n_max`, truncated to the
/// admissible set when Λ > 0.
pub fn gram_matrix<T: Real>(l: usize, big_lambda: T, n_max: usize) -> Result<GramMatrix<T>> {
    let size = bound_state_count(&big_lambda, l).truncate(n_max);
    if size == 0 {
        return Err(Error::NoBoundStates {
            l,
            lambda: big_lambda.approx_f64(),
        });
    }
    let states = (0..size)
        .map(|n| normalized_state(n, l, big_lambda))
        .collect::<Result<Vec<_>>>()?;
    let mut entries = vec![T::zero(); size * size];
    let mut max_abs_error = T::zero();
    for m in 0..size {
        for n in m..size {
            let ip = inner_product(&states[m], &states[n])?;
            entries[m * size + n] = ip.value;
            entries[n * size + m] = ip.value;
            max_abs_error = max_abs_error.max(ip.est_abs_error);
        }
    }
    Ok(GramMatrix {
        entries,
        size,
        max_abs_error,
    })
}

/// `V_eff = ½mα² r²/(λr²+1) + L(L+1)ħ²(λr²+1)/(2mr²)`.
pub fn effective_potential<T: Real>(r: T, params: &ModelParams<T>, l: usize) -> Result<T> {
    let f = params.mass_factor(r);
    if !(r > T::zero()) || !(f > T::zero()) {
        return Err(Error::OutsideDomain {
            what: "r",
            value: r.approx_f64(),
        });
    }
    let half = T::lit(0.5);
    let k = centrifugal_constant(params, l);
    Ok(
        half * params.m() * params.alpha() * params.alpha() * r * r / f
            + k * f / (T::lit(2.0) * params.m() * r * r),
    )
}

/// Mass form `½(α² M r² + L(L+1)ħ²/(M r²))`.
pub fn effective_potential_mass_form<T: Real>(
    r: T,
    params: &ModelParams<T>,
    l: usize,
) -> Result<T> {
    let f = params.mass_factor(r);
    if !(r > T::zero()) || !(f > T::zero()) {
        return Err(Error::OutsideDomain {
            what: "r",
            value: r.approx_f64(),
        });
    }
    let mr2 = params.m() / f * r * r;
    Ok(symmetric_form(
        params.alpha() * params.alpha(),
        centrifugal_constant(params, l),
        mr2,
    ))
}

/// `½(g X + k / X)`; swapping `g ↔ k` together with `X ↔ 1/X` leaves it unchanged.
pub fn symmetric_form<T: Real>(g: T, k: T, x: T) -> T {
    T::lit(0.5) * (g * x + k / x)
}

fn centrifugal_constant<T: Real>(params: &ModelParams<T>, l: usize) -> T {
    let lf = T::from_usize(l).unwrap();
    lf * (lf + T::one()) * params.hbar() * params.hbar()
}

/// Residual of the equation for `u = yR`,
/// `(Λy²+1)u'' + Λy u' + [2ℰ - (Λ+1)y²/(Λy²+1) - L(L+1)(Λy²+1)/y²] u = 0`
/// with `ℰ = e - Λ/2`, normalized by the largest term and maximized over the samples.
pub fn u_transform_residual<T: Real>(state: &RadialEigenstate<T>, samples: &[T]) -> Result<T> {
    let lam = state.big_lambda;
    let lf = T::from_usize(state.qn.l).unwrap();
    let ll = lf * (lf + T::one());
    let eps = state.e - lam * T::lit(0.5);
    let mut worst = T::zero();
    for &y in samples {
        let j = eval_jet(state, y)?;
        let u = y * j.value;
        let u1 = j.value + y * j.d1;
        let u2 = T::lit(2.0) * j.d1 + y * j.d2;
        let f = T::one() + lam * y * y;
        let terms = [
            f * u2,
            lam * y * u1,
            T::lit(2.0) * eps * u,
            -(lam + T::one()) * y * y / f * u,
            -ll * f / (y * y) * u,
        ];
        worst = worst.max(normalized_sum(&terms));
    }
    Ok(worst)
}

/// `|Σ t| / max |t|`, or zero when every term vanishes.
pub(crate) fn normalized_sum<T: Real>(terms: &[T]) -> T {
    let scale = terms.iter().fold(T::zero(), |m, t| m.max(t.abs()));
    if scale == T::zero() {
        return T::zero();
    }
    terms.iter().fold(T::zero(), |s, &t| s + t).abs() / scale
}
