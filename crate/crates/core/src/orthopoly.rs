//! Jacobi and Laguerre polynomials and the terminating Gauss series ₂F₁(-n, b; c; z).
//!
//! Polynomials are dense coefficient lists in ascending degree. All routines are
//! generic over [`Scalar`], so the same code runs in `f64` and in exact rationals.

use crate::error::{Error, Result};
use crate::scalar::{Real, Scalar};

#[derive(Debug, Clone, PartialEq)]
pub enum PolyParams<T> {
    None,
    Jacobi {
        a: T,
        b: T,
    },
    Laguerre {
        a: T,
    },
    /// Terminating ₂F₁(-n, b; c; z) viewed as a polynomial in `z`.
    Hypergeometric {
        b: T,
        c: T,
    },
}

#[derive(Debug, Clone, PartialEq)]
pub struct PolyCoeffs<T> {
    coeffs: Vec<T>,
    pub params: PolyParams<T>,
}

impl<T: Scalar> PolyCoeffs<T> {
    /// Builds a polynomial, trimming exact trailing zeros so the leading
    /// coefficient is nonzero (the zero polynomial keeps a single `0`).
    pub fn new(mut coeffs: Vec<T>, params: PolyParams<T>) -> Self {
        while coeffs.len() > 1 && coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        if coeffs.is_empty() {
            coeffs.push(T::zero());
        }
        Self { coeffs, params }
    }

    pub fn constant(c: T) -> Self {
        Self::new(vec![c], PolyParams::None)
    }

    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_zero()
    }

    pub fn eval(&self, x: &T) -> T {
        eval_poly(self, x)
    }

    pub fn derivative(&self) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(k, c)| c.clone() * T::from_int(k as i64))
            .collect();
        Self::new(coeffs, PolyParams::None)
    }

    pub fn scale(&self, s: &T) -> Self {
        let coeffs = self.coeffs.iter().map(|c| c.clone() * s.clone()).collect();
        Self::new(coeffs, self.params.clone())
    }

    fn with_params(mut self, params: PolyParams<T>) -> Self {
        self.params = params;
        self
    }
}

/// Horner evaluation.
pub fn eval_poly<T: Scalar>(p: &PolyCoeffs<T>, x: &T) -> T {
    let mut acc = T::zero();
    for c in p.coeffs.iter().rev() {
        acc = acc * x.clone() + c.clone();
    }
    acc
}

/// Rising factorial `(x)_k`.
pub fn pochhammer<T: Scalar>(x: &T, k: usize) -> T {
    (0..k).fold(T::one(), |acc, j| acc * (x.clone() + T::from_int(j as i64)))
}

/// Generalized binomial coefficient `binom(z, j)` for real `z`.
pub fn binomial<T: Scalar>(z: &T, j: usize) -> T {
    let mut acc = T::one();
    for i in 0..j {
        acc = acc * (z.clone() - T::from_int(i as i64)) / T::from_int(i as i64 + 1);
    }
    acc
}

fn add_scaled<T: Scalar>(acc: &mut Vec<T>, p: &[T], s: &T, shift: usize) {
    if acc.len() < p.len() + shift {
        acc.resize(p.len() + shift, T::zero());
    }
    for (k, c) in p.iter().enumerate() {
        acc[k + shift] = acc[k + shift].clone() + c.clone() * s.clone();
    }
}

/// Jacobi polynomial `P_n^{(a,b)}(x)` via the three-term recurrence in `n`,
/// normalized so that `P_n^{(a,b)}(1) = (a+1)_n / n!`.
///
/// When a recurrence denominator vanishes (special negative `a + b`) the
/// explicit binomial sum is used instead; it is valid for every real `a`, `b`.
pub fn jacobi<T: Scalar>(n: usize, a: T, b: T) -> PolyCoeffs<T> {
    let params = PolyParams::Jacobi {
        a: a.clone(),
        b: b.clone(),
    };
    let two = T::from_int(2);
    let mut prev = vec![T::one()];
    if n == 0 {
        return PolyCoeffs::new(prev, params);
    }
    let mut curr = vec![
        (a.clone() - b.clone()) / two.clone(),
        (a.clone() + b.clone() + two.clone()) / two.clone(),
    ];
    let ab = a.clone() + b.clone();
    for k in 2..=n {
        let kk = T::from_int(k as i64);
        let s = two.clone() * kk.clone() + ab.clone();
        let denom =
            two.clone() * kk.clone() * (kk.clone() + ab.clone()) * (s.clone() - two.clone());
        if denom.is_zero() {
            return jacobi_explicit(n, a, b);
        }
        let c1 = (s.clone() - T::one()) * s.clone() * (s.clone() - two.clone()) / denom.clone();
        let c0 = (s.clone() - T::one()) * (a.clone() * a.clone() - b.clone() * b.clone())
            / denom.clone();
        let cm = -(two.clone()
            * (kk.clone() + a.clone() - T::one())
            * (kk.clone() + b.clone() - T::one())
            * s)
            / denom;
        let mut next = Vec::with_capacity(k + 1);
        add_scaled(&mut next, &curr, &c1, 1);
        add_scaled(&mut next, &curr, &c0, 0);
        add_scaled(&mut next, &prev, &cm, 0);
        prev = std::mem::replace(&mut curr, next);
    }
    PolyCoeffs::new(curr, params)
}

/// Value of `P_n^{(a,b)}(x)` from the same recurrence run on numbers, which is
/// stable on `[-1, 1]` where the monomial coefficients cancel badly for large `n`.
pub fn jacobi_value<T: Scalar>(n: usize, a: T, b: T, x: &T) -> T {
    jacobi_value_below_one(n, a, b, &(T::one() - x.clone()))
}

/// `P_n^{(a,b)}(1 - d)`. The recurrence is rewritten in `d`, so points close to
/// `x = 1` keep full relative precision.
pub fn jacobi_value_below_one<T: Scalar>(n: usize, a: T, b: T, d: &T) -> T {
    below_one_recurrence(n, a, b, d, |_, _| {})
}

/// `P_n^{(a,b)}(1 - d)` as `(m, e)` with value `m·exp(e)`, for degrees where
/// the value itself leaves the floating-point range.
pub fn jacobi_value_below_one_scaled<T: Real>(n: usize, a: T, b: T, d: &T) -> (T, T) {
    let big = T::lit(1e150);
    let mut log_scale = T::zero();
    let m = below_one_recurrence(n, a, b, d, |prev, curr| {
        if curr.abs() > big || prev.abs() > big {
            let f = prev.abs().max(curr.abs());
            *prev = *prev / f;
            *curr = *curr / f;
            log_scale = log_scale + f.ln();
        }
    });
    (m, log_scale)
}

/// Three-term recurrence in `d = 1 - x`; `step` may rescale the running pair.
fn below_one_recurrence<T: Scalar>(
    n: usize,
    a: T,
    b: T,
    d: &T,
    mut step: impl FnMut(&mut T, &mut T),
) -> T {
    let two = T::from_int(2);
    let mut prev = T::one();
    if n == 0 {
        return prev;
    }
    let ab = a.clone() + b.clone();
    let mut curr = a.clone() + T::one() - (ab.clone() + two.clone()) / two.clone() * d.clone();
    for k in 2..=n {
        let kk = T::from_int(k as i64);
        let s = two.clone() * kk.clone() + ab.clone();
        let denom =
            two.clone() * kk.clone() * (kk.clone() + ab.clone()) * (s.clone() - two.clone());
        if denom.is_zero() {
            return jacobi_explicit(n, a, b).eval(&(T::one() - d.clone()));
        }
        let c1 = (s.clone() - T::one()) * s.clone() * (s.clone() - two.clone()) / denom.clone();
        // c1 + c0 with the b² terms cancelled by hand
        let at_one = (s.clone() - T::one())
            * two.clone()
            * (two.clone() * kk.clone() * kk.clone()
                + two.clone() * kk.clone() * (ab.clone() - T::one())
                + ab.clone() * (a.clone() - T::one()))
            / denom.clone();
        let cm = -(two.clone()
            * (kk.clone() + a.clone() - T::one())
            * (kk.clone() + b.clone() - T::one())
            * s)
            / denom;
        let next = (at_one - c1 * d.clone()) * curr.clone() + cm * prev;
        prev = std::mem::replace(&mut curr, next);
        step(&mut prev, &mut curr);
    }
    curr
}

/// `P_n^{(a,b)}(x) = Σ_k binom(n+a, n-k) binom(n+b, k) ((x-1)/2)^k ((x+1)/2)^{n-k}`.
fn jacobi_explicit<T: Scalar>(n: usize, a: T, b: T) -> PolyCoeffs<T> {
    let na = T::from_int(n as i64) + a.clone();
    let nb = T::from_int(n as i64) + b.clone();
    let half = T::half();
    let minus = [-half.clone(), half.clone()];
    let plus = [half.clone(), half];
    let mut out = vec![T::zero(); n + 1];
    for k in 0..=n {
        let w = binomial(&na, n - k) * binomial(&nb, k);
        let mut term = vec![T::one()];
        for _ in 0..k {
            term = convolve(&term, &minus);
        }
        for _ in 0..n - k {
            term = convolve(&term, &plus);
        }
        add_scaled(&mut out, &term, &w, 0);
    }
    PolyCoeffs::new(out, PolyParams::Jacobi { a, b })
}

fn convolve<T: Scalar>(p: &[T], q: &[T]) -> Vec<T> {
    let mut out = vec![T::zero(); p.len() + q.len() - 1];
    for (i, pi) in p.iter().enumerate() {
        for (j, qj) in q.iter().enumerate() {
            out[i + j] = out[i + j].clone() + pi.clone() * qj.clone();
        }
    }
    out
}

/// Independent route to `P_n^{(a,b)}` through Rodrigues' formula.
///
/// The n-fold derivative of `(1-x)^{a+n} (1+x)^{b+n}` is expanded by Leibniz'
/// rule; after dividing by `(1-x)^a (1+x)^b` each term is the polynomial
/// `(1-x)^{n-k} (1+x)^k`. Kept as a test oracle for [`jacobi`].
pub fn jacobi_rodrigues<T: Scalar>(n: usize, a: T, b: T) -> PolyCoeffs<T> {
    let nn = T::from_int(n as i64);
    let an = a.clone() + nn.clone();
    let bn = b.clone() + nn;
    let one_minus = [T::one(), -T::one()];
    let one_plus = [T::one(), T::one()];
    let mut sum = vec![T::zero(); n + 1];
    for k in 0..=n {
        // d^k (1-x)^{a+n} = (-1)^k ff(a+n, k) (1-x)^{a+n-k}
        // d^{n-k} (1+x)^{b+n} = ff(b+n, n-k) (1+x)^{b+k}
        let mut w = binomial(&T::from_int(n as i64), k) * falling(&an, k) * falling(&bn, n - k);
        if k % 2 == 1 {
            w = -w;
        }
        let mut term = vec![T::one()];
        for _ in 0..n - k {
            term = convolve(&term, &one_minus);
        }
        for _ in 0..k {
            term = convolve(&term, &one_plus);
        }
        add_scaled(&mut sum, &term, &w, 0);
    }
    // prefactor (-1)^n / (2^n n!)
    let mut pre = T::one();
    for j in 1..=n {
        pre = pre / (T::from_int(2) * T::from_int(j as i64));
    }
    if n % 2 == 1 {
        pre = -pre;
    }
    PolyCoeffs::new(sum, PolyParams::None)
        .scale(&pre)
        .with_params(PolyParams::Jacobi { a, b })
}

fn falling<T: Scalar>(x: &T, k: usize) -> T {
    (0..k).fold(T::one(), |acc, j| acc * (x.clone() - T::from_int(j as i64)))
}

fn check_poles<T: Scalar>(n: usize, c: &T) -> Result<()> {
    for k in 0..n {
        if (c.clone() + T::from_int(k as i64)).is_zero() {
            return Err(Error::PoleInDenominator { k: k + 1 });
        }
    }
    Ok(())
}

/// Coefficients in `z` of the terminating series ₂F₁(-n, b; c; z).
pub fn hyp2f1_terminating_coeffs<T: Scalar>(n: usize, b: T, c: T) -> Result<PolyCoeffs<T>> {
    check_poles(n, &c)?;
    let mut coeffs = Vec::with_capacity(n + 1);
    let mut term = T::one();
    coeffs.push(term.clone());
    let minus_n = -T::from_int(n as i64);
    for k in 0..n {
        let kk = T::from_int(k as i64);
        term = term * (minus_n.clone() + kk.clone()) * (b.clone() + kk.clone())
            / ((c.clone() + kk.clone()) * (kk + T::one()));
        coeffs.push(term.clone());
    }
    Ok(PolyCoeffs::new(coeffs, PolyParams::Hypergeometric { b, c }))
}

/// ₂F₁(-n, b; c; z) summed by nested (Horner-style) accumulation of term ratios.
pub fn hyp2f1_terminating<T: Scalar>(n: usize, b: T, c: T, z: T) -> Result<T> {
    check_poles(n, &c)?;
    let minus_n = -T::from_int(n as i64);
    let mut acc = T::one();
    for k in (0..n).rev() {
        let kk = T::from_int(k as i64);
        let ratio = (minus_n.clone() + kk.clone()) * (b.clone() + kk.clone())
            / ((c.clone() + kk.clone()) * (kk + T::one()));
        acc = T::one() + ratio * z.clone() * acc;
    }
    Ok(acc)
}

/// Jacobi polynomial evaluated through the hypergeometric identity
/// `P_n^{(a,b)}(x) = (a+1)_n/n! ((x+1)/2)^n ₂F₁(-n, -n-b; a+1; (x-1)/(x+1))`.
pub fn jacobi_via_hypergeometric<T: Scalar>(n: usize, a: T, b: T, x: T) -> Result<T> {
    let nn = T::from_int(n as i64);
    let z = (x.clone() - T::one()) / (x.clone() + T::one());
    let f = hyp2f1_terminating(n, -nn - b, a.clone() + T::one(), z)?;
    let mut pre = pochhammer(&(a + T::one()), n);
    let half_xp1 = (x + T::one()) / T::from_int(2);
    for j in 1..=n {
        pre = pre * half_xp1.clone() / T::from_int(j as i64);
    }
    Ok(pre * f)
}

/// Generalized Laguerre polynomial `L_n^{(a)}(t) = Σ_k (-1)^k binom(n+a, n-k) t^k / k!`.
pub fn laguerre<T: Scalar>(n: usize, a: T) -> PolyCoeffs<T> {
    let na = T::from_int(n as i64) + a.clone();
    let mut coeffs = Vec::with_capacity(n + 1);
    let mut fact = T::one();
    for k in 0..=n {
        if k > 0 {
            fact = fact * T::from_int(k as i64);
        }
        let mut c = binomial(&na, n - k) / fact.clone();
        if k % 2 == 1 {
            c = -c;
        }
        coeffs.push(c);
    }
    PolyCoeffs::new(coeffs, PolyParams::Laguerre { a })
}
