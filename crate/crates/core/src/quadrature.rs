//! Globally adaptive Gauss–Kronrod (G10/K21) quadrature and the Jacobi-weighted
//! integral `∫_{-1}^{1} (1-x)^a (1+x)^b g(x) dx` used by the radial inner product.

// the Kronrod tables and the Lanczos coefficients keep their published digits
#![allow(clippy::excessive_precision)]

use crate::error::{Error, Result};
use crate::scalar::Real;

// QUADPACK qk21 abscissae and weights.
const XGK: [f64; 11] = [
    0.995_657_163_025_808_080_735_527_280_689_003,
    0.973_906_528_517_171_720_077_964_012_084_452,
    0.930_157_491_355_708_226_001_207_180_059_508,
    0.865_063_366_688_984_510_732_096_688_423_493,
    0.780_817_726_586_416_897_063_717_578_345_042,
    0.679_409_568_299_024_406_234_327_365_114_874,
    0.562_757_134_668_604_683_339_000_099_272_694,
    0.433_395_394_129_247_190_799_265_943_165_784,
    0.294_392_862_701_460_198_131_126_603_103_866,
    0.148_874_338_981_631_210_884_826_001_129_720,
    0.0,
];

const WGK: [f64; 11] = [
    0.011_694_638_867_371_874_278_064_396_062_192,
    0.032_558_162_307_964_727_478_818_972_459_390,
    0.054_755_896_574_351_996_031_381_300_244_580,
    0.075_039_674_810_919_952_767_043_140_916_190,
    0.093_125_454_583_697_605_535_065_465_083_366,
    0.109_387_158_802_297_641_899_210_590_325_805,
    0.123_491_976_262_065_851_077_600_525_452_476,
    0.134_709_217_311_473_325_928_054_001_771_707,
    0.142_775_938_577_060_080_797_094_273_138_717,
    0.147_739_104_901_338_491_374_841_515_972_068,
    0.149_445_554_002_916_905_664_936_468_389_821,
];

const WG: [f64; 5] = [
    0.066_671_344_308_688_137_593_568_809_893_332,
    0.149_451_349_150_580_593_145_776_339_657_697,
    0.219_086_362_515_982_043_995_534_934_228_163,
    0.269_266_719_309_996_355_091_226_921_569_469,
    0.295_524_224_714_752_870_173_892_994_651_338,
];

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerance<T> {
    pub abs: T,
    /// Relative to `∫|f|`, so integrals that cancel to zero still terminate.
    pub rel: T,
    pub max_segments: usize,
}

impl<T: Real> Default for Tolerance<T> {
    fn default() -> Self {
        Self {
            abs: T::zero(),
            rel: T::lit(1e-13),
            max_segments: 4000,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Integral<T> {
    pub value: T,
    pub abs_error: T,
    /// Estimate of `∫|f|`.
    pub abs_integral: T,
    pub evaluations: usize,
}

#[derive(Debug, Clone, Copy)]
struct Segment<T> {
    piece: usize,
    a: T,
    b: T,
    value: T,
    error: T,
    resabs: T,
}

fn rescale_error<T: Real>(err: T, resabs: T, resasc: T) -> T {
    let mut e = err.abs();
    if resasc != T::zero() && e != T::zero() {
        let scale = (T::lit(200.0) * e / resasc).powf(T::lit(1.5));
        e = if scale < T::one() {
            resasc * scale
        } else {
            resasc
        };
    }
    let eps = T::epsilon();
    if resabs > T::min_positive_value() / (T::lit(50.0) * eps) {
        e = e.max(T::lit(50.0) * eps * resabs);
    }
    e
}

fn gk21<T, F>(f: &mut F, piece: usize, a: T, b: T) -> Segment<T>
where
    T: Real,
    F: FnMut(usize, T) -> T,
{
    let center = T::lit(0.5) * (a + b);
    let half = T::lit(0.5) * (b - a);
    let fc = f(piece, center);
    let mut res_k = fc * T::lit(WGK[10]);
    let mut res_g = T::zero();
    let mut res_abs = res_k.abs();
    let mut fv1 = [T::zero(); 10];
    let mut fv2 = [T::zero(); 10];
    for j in 0..10 {
        let dx = half * T::lit(XGK[j]);
        let f1 = f(piece, center - dx);
        let f2 = f(piece, center + dx);
        fv1[j] = f1;
        fv2[j] = f2;
        res_k = res_k + T::lit(WGK[j]) * (f1 + f2);
        res_abs = res_abs + T::lit(WGK[j]) * (f1.abs() + f2.abs());
        if j % 2 == 1 {
            res_g = res_g + T::lit(WG[j / 2]) * (f1 + f2);
        }
    }
    let mean = res_k * T::lit(0.5);
    let mut res_asc = T::lit(WGK[10]) * (fc - mean).abs();
    for j in 0..10 {
        res_asc = res_asc + T::lit(WGK[j]) * ((fv1[j] - mean).abs() + (fv2[j] - mean).abs());
    }
    let err = (res_k - res_g) * half;
    let scale = half.abs();
    Segment {
        piece,
        a,
        b,
        value: res_k * half,
        error: rescale_error(err, res_abs * scale, res_asc * scale),
        resabs: res_abs * scale,
    }
}

/// Adaptive integration over a union of `(piece, a, b)` intervals; `f` receives
/// the piece index with each abscissa so separate parametrizations can share one
/// error budget.
pub fn integrate_pieces<T, F>(
    mut f: F,
    pieces: &[(usize, T, T)],
    tol: Tolerance<T>,
) -> Result<Integral<T>>
where
    T: Real,
    F: FnMut(usize, T) -> T,
{
    let mut segments: Vec<Segment<T>> = pieces
        .iter()
        .map(|&(p, a, b)| gk21(&mut f, p, a, b))
        .collect();
    let mut evaluations = 21 * segments.len();
    loop {
        let value = segments.iter().fold(T::zero(), |s, g| s + g.value);
        let error = segments.iter().fold(T::zero(), |s, g| s + g.error);
        let resabs = segments.iter().fold(T::zero(), |s, g| s + g.resabs);
        if !value.is_finite() || !error.is_finite() {
            return Err(Error::QuadratureFailure {
                estimate: f64::INFINITY,
                tolerance: 0.0,
            });
        }
        let target = tol.abs.max(tol.rel * resabs);
        let result = Integral {
            value,
            abs_error: error,
            abs_integral: resabs,
            evaluations,
        };
        if error <= target {
            return Ok(result);
        }
        let worst = segments
            .iter()
            .enumerate()
            .max_by(|x, y| x.1.error.partial_cmp(&y.1.error).unwrap())
            .map(|(i, _)| i)
            .unwrap();
        let seg = segments[worst];
        let mid = T::lit(0.5) * (seg.a + seg.b);
        if segments.len() >= tol.max_segments || !(mid > seg.a && mid < seg.b) {
            return Err(Error::QuadratureFailure {
                estimate: error.approx_f64(),
                tolerance: target.approx_f64(),
            });
        }
        segments[worst] = gk21(&mut f, seg.piece, seg.a, mid);
        segments.push(gk21(&mut f, seg.piece, mid, seg.b));
        evaluations += 42;
    }
}

pub fn integrate<T, F>(mut f: F, a: T, b: T, tol: Tolerance<T>) -> Result<Integral<T>>
where
    T: Real,
    F: FnMut(T) -> T,
{
    integrate_pieces(|_, x| f(x), &[(0, a, b)], tol)
}

/// Abscissa in `(-1, 1)` with both endpoint distances carried at full precision.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct JacobiPoint<T> {
    pub x: T,
    pub one_minus_x: T,
    pub one_plus_x: T,
}

/// Integer power `k` for the substitution `t = u^k`, making the endpoint
/// exponent `k (e + 1) - 1` at least one.
fn smoothing_power<T: Real>(e: T) -> usize {
    let k = (T::lit(2.0) / (e + T::one())).ceil();
    k.to_usize().unwrap_or(64).clamp(1, 64)
}

/// `∫_{-1}^{1} exp(log_scale) (1-x)^a (1+x)^b g(x) dx` for smooth `g` and `a, b > -1`.
///
/// Each half of the interval is parametrized by the distance `t` to its
/// endpoint and `t = u^k` removes the algebraic singularity. The weight is
/// formed in log space, so large exponents and scales do not overflow.
pub fn jacobi_weighted<T, F>(
    a: T,
    b: T,
    log_scale: T,
    mut g: F,
    tol: Tolerance<T>,
) -> Result<Integral<T>>
where
    T: Real,
    F: FnMut(&JacobiPoint<T>) -> T,
{
    jacobi_weighted_scaled(a, b, log_scale, |p| (g(p), T::zero()), tol)
}

/// As [`jacobi_weighted`], with `g` returned as `(m, e)` meaning `m·exp(e)`.
/// The exponent joins the weight before exponentiation, so integrands whose
/// factors overflow separately stay finite.
pub fn jacobi_weighted_scaled<T, F>(
    a: T,
    b: T,
    log_scale: T,
    mut g: F,
    tol: Tolerance<T>,
) -> Result<Integral<T>>
where
    T: Real,
    F: FnMut(&JacobiPoint<T>) -> (T, T),
{
    for (what, e) in [("jacobi exponent a", a), ("jacobi exponent b", b)] {
        if !(e > -T::one()) {
            return Err(Error::OutsideDomain {
                what,
                value: e.approx_f64(),
            });
        }
    }
    let two = T::lit(2.0);
    let kb = smoothing_power(b);
    let ka = smoothing_power(a);
    let (kbf, kaf) = (T::from_usize(kb).unwrap(), T::from_usize(ka).unwrap());
    let ln2 = two.ln();
    let (base_b, base_a) = (log_scale + a * ln2, log_scale + b * ln2);
    let integrand = |piece: usize, u: T| -> T {
        if u <= T::zero() {
            return T::zero();
        }
        let lu = u.ln();
        // piece 0: distance from x = -1; piece 1: distance from x = +1
        let (k, near, far, t) = if piece == 0 {
            (kbf, b, a, u.powi(kb as i32))
        } else {
            (kaf, a, b, u.powi(ka as i32))
        };
        if t <= T::zero() {
            return T::zero();
        }
        // far·ln(2-t) = far·ln 2 + far·ln(1-t/2); the constant part is summed
        // first so that large exponents add no point-to-point rounding noise
        let base = if piece == 0 { base_b } else { base_a };
        let log_w =
            base + k.ln() + (k * (near + T::one()) - T::one()) * lu + far * (-t / two).ln_1p();
        let point = if piece == 0 {
            JacobiPoint {
                x: t - T::one(),
                one_minus_x: two - t,
                one_plus_x: t,
            }
        } else {
            JacobiPoint {
                x: T::one() - t,
                one_minus_x: t,
                one_plus_x: two - t,
            }
        };
        let (m, e) = g(&point);
        if m == T::zero() {
            return T::zero();
        }
        m * (log_w + e).exp()
    };
    let mut pieces = Vec::new();
    for (piece, k, far) in [(0, kb, a), (1, ka, b)] {
        // (2-t)^far ≈ 2^far exp(-far t/2): for large `far` the mass sits within
        // t ~ 2/far of the endpoint, so breakpoints resolve that scale first
        let mut lo = T::zero();
        let mut t = T::lit(2.0) / far;
        while far > T::lit(8.0) && t < T::lit(0.5) {
            let u = t.powf(T::one() / T::from_usize(k).unwrap());
            pieces.push((piece, lo, u));
            lo = u;
            t = t * T::lit(4.0);
        }
        pieces.push((piece, lo, T::one()));
    }
    integrate_pieces(integrand, &pieces, tol)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn polynomial_is_exact() {
        let r = integrate(
            |x: f64| 3.0 * x * x - 2.0 * x + 1.0,
            -1.0,
            2.0,
            Tolerance::default(),
        )
        .unwrap();
        assert_relative_eq!(r.value, 9.0 - 3.0 + 3.0, max_relative = 1e-14);
        assert_eq!(r.evaluations, 21);
    }

    #[test]
    fn smooth_transcendental() {
        let r = integrate(|x: f64| x.exp() * x.cos(), 0.0, 10.0, Tolerance::default()).unwrap();
        let exact = 0.5 * (10f64.exp() * (10f64.cos() + 10f64.sin()) - 1.0);
        assert_relative_eq!(r.value, exact, max_relative = 1e-12);
        assert!(r.abs_error < 1e-9 * exact.abs());
    }

    #[test]
    fn beta_function_weights() {
        // ∫ (1-x)^a (1+x)^b dx = 2^{a+b+1} B(a+1, b+1)
        let cases = [(0.5f64, -1.0 / 6.0), (-0.5, -0.5), (2.5, 0.25), (0.5, 40.5)];
        for (a, b) in cases {
            let r = jacobi_weighted(a, b, 0.0, |_| 1.0, Tolerance::default()).unwrap();
            let exact = 2f64.powf(a + b + 1.0) * beta(a + 1.0, b + 1.0);
            assert_relative_eq!(r.value, exact, max_relative = 1e-11);
            assert!(r.abs_error < 1e-11 * exact);
        }
    }

    #[test]
    fn log_scale_prevents_overflow() {
        // (1+x)^1500 peaks at 2^1500; rescaled by 2^-1500 the integral is ~ 2/1501.
        let b = 1500.0f64;
        let r = jacobi_weighted(0.0, b, -b * 2f64.ln(), |_| 1.0, Tolerance::default()).unwrap();
        assert_relative_eq!(r.value, 2.0 / (b + 1.0), max_relative = 1e-10);
    }

    #[test]
    fn endpoint_distances_are_exact() {
        let r = jacobi_weighted(
            0.0,
            -0.9,
            0.0,
            |p: &JacobiPoint<f64>| {
                assert!(p.one_plus_x > 0.0 && p.one_minus_x > 0.0);
                assert!((p.one_plus_x + p.one_minus_x - 2.0).abs() < 1e-15);
                1.0
            },
            Tolerance::default(),
        )
        .unwrap();
        assert_relative_eq!(r.value, 2f64.powf(0.1) / 0.1, max_relative = 1e-10);
    }

    #[test]
    fn rejects_non_integrable_exponent() {
        assert!(jacobi_weighted(-1.0, 0.0, 0.0, |_| 1.0, Tolerance::<f64>::default()).is_err());
    }

    #[test]
    fn reports_failure_when_budget_exhausted() {
        let tol = Tolerance {
            abs: 0.0,
            rel: 1e-15,
            max_segments: 3,
        };
        let err = integrate(|x: f64| (1.0 / x).sin(), 1e-6, 1.0, tol).unwrap_err();
        assert_eq!(err.kind(), "QuadratureFailure");
    }

    fn beta(x: f64, y: f64) -> f64 {
        (ln_gamma(x) + ln_gamma(y) - ln_gamma(x + y)).exp()
    }

    // Lanczos approximation (g = 7, n = 9), accurate to ~1e-15 for x > 0.
    fn ln_gamma(x: f64) -> f64 {
        const C: [f64; 9] = [
            0.999_999_999_999_809_93,
            676.520_368_121_885_1,
            -1_259.139_216_722_402_8,
            771.323_428_777_653_13,
            -176.615_029_162_140_59,
            12.507_343_278_686_905,
            -0.138_571_095_265_720_12,
            9.984_369_578_019_571_6e-6,
            1.505_632_735_149_311_6e-7,
        ];
        if x < 0.5 {
            let pi = std::f64::consts::PI;
            return (pi / (pi * x).sin()).ln() - ln_gamma(1.0 - x);
        }
        let x = x - 1.0;
        let mut a = C[0];
        let t = x + 7.5;
        for (i, c) in C.iter().enumerate().skip(1) {
            a += c / (x + i as f64);
        }
        0.5 * (2.0 * std::f64::consts::PI).ln() + (x + 0.5) * t.ln() - t + a.ln()
    }
}
