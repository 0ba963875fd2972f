//! Closed-form bound-state energies and state counting.

use std::fmt;

use crate::error::{Error, Result};
use crate::params::ModelParams;
use crate::scalar::{Real, Scalar};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct QuantumNumbers {
    /// Vibrational quantum number.
    pub n: usize,
    /// Angular momentum quantum number.
    pub l: usize,
}

impl QuantumNumbers {
    pub fn new(n: usize, l: usize) -> Self {
        Self { n, l }
    }

    /// Validates signed input, e.g. from the command line.
    pub fn from_signed(n: i64, l: i64) -> Result<Self> {
        if n < 0 {
            return Err(Error::InvalidDegree(n));
        }
        if l < 0 {
            return Err(Error::InvalidDegree(l));
        }
        Ok(Self::new(n as usize, l as usize))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StateCount {
    Finite(usize),
    Unbounded,
}

impl StateCount {
    pub fn is_empty(&self) -> bool {
        matches!(self, StateCount::Finite(0))
    }

    /// Number of states among `0..=n_max`.
    pub fn truncate(&self, n_max: usize) -> usize {
        match *self {
            StateCount::Finite(c) => c.min(n_max + 1),
            StateCount::Unbounded => n_max + 1,
        }
    }
}

impl fmt::Display for StateCount {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            StateCount::Finite(c) => write!(f, "{c}"),
            StateCount::Unbounded => f.write_str("unbounded"),
        }
    }
}

fn int<T: Scalar>(v: usize) -> T {
    T::from_int(v as i64)
}

/// Dimensionless energy
/// `e = -2Λn² - 2LΛn - 2Λn - LΛ/2 + 2n + L + 3/2`.
pub fn energy_dimless<T: Scalar>(n: usize, l: usize, big_lambda: T) -> T {
    let (nn, ll) = (int::<T>(n), int::<T>(l));
    let two = int::<T>(2);
    let shift = two.clone() * nn.clone() * nn.clone()
        + two.clone() * ll.clone() * nn.clone()
        + two.clone() * nn.clone()
        + ll.clone() / two.clone();
    ho_energy::<T>(n, l) - big_lambda * shift
}

/// Three-dimensional harmonic oscillator energy `2n + L + 3/2`.
pub fn ho_energy<T: Scalar>(n: usize, l: usize) -> T {
    int::<T>(2) * int::<T>(n) + int::<T>(l) + int::<T>(3) / int::<T>(2)
}

/// Slope of the energy in Λ: `-(2n² + 2Ln + 2n + L/2)`.
pub fn energy_slope<T: Scalar>(n: usize, l: usize) -> T {
    energy_dimless::<T>(n, l, T::one()) - ho_energy::<T>(n, l)
}

/// Normalizability for Λ > 0: `n < 1/(2Λ) - 1/2 - L/2`, i.e. `Λ (2n + L + 1) < 1`.
/// Any `n` is admissible for Λ ≤ 0.
pub fn is_admissible<T: Scalar>(n: usize, l: usize, big_lambda: &T) -> bool {
    if *big_lambda <= T::zero() {
        return true;
    }
    big_lambda.clone() * int::<T>(2 * n + l + 1) < T::one()
}

/// The weaker decay condition `n < 1/(2Λ) - L/2`, i.e. `Λ (2n + L) < 1`.
pub fn decays_at_infinity<T: Scalar>(n: usize, l: usize, big_lambda: &T) -> bool {
    if *big_lambda <= T::zero() {
        return true;
    }
    big_lambda.clone() * int::<T>(2 * n + l) < T::one()
}

pub fn bound_state_count<T: Scalar>(big_lambda: &T, l: usize) -> StateCount {
    if *big_lambda <= T::zero() {
        return StateCount::Unbounded;
    }
    // Floating estimate of the cutoff, then corrected with the exact test.
    let guess = ((1.0 / big_lambda.approx_f64() - l as f64 - 1.0) / 2.0).ceil();
    let mut count = if guess.is_finite() && guess > 0.0 {
        guess.min(usize::MAX as f64 / 4.0) as usize
    } else {
        0
    };
    while count > 0 && !is_admissible(count - 1, l, big_lambda) {
        count -= 1;
    }
    while is_admissible(count, l, big_lambda) {
        count += 1;
    }
    StateCount::Finite(count)
}

/// Converts `e` to `(E, ℰ)` with `E = e ħ α` and `ℰ = E - ħ² λ / (2m)`.
pub fn energy_dimensional<T: Real>(e: T, params: &ModelParams<T>) -> (T, T) {
    let big_e = e * params.hbar() * params.alpha();
    let shifted =
        big_e - params.hbar() * params.hbar() * params.lambda() / (T::lit(2.0) * params.m());
    (big_e, shifted)
}

#[derive(Debug, Clone, PartialEq)]
pub struct SpectrumRow<T> {
    pub qn: QuantumNumbers,
    pub big_lambda: T,
    pub e: T,
    pub admissible: bool,
}

/// Energies for `n = 0..=n_max`, flagged by admissibility.
pub fn spectrum_table<T: Scalar>(big_lambda: T, l: usize, n_max: usize) -> Vec<SpectrumRow<T>> {
    (0..=n_max)
        .map(|n| SpectrumRow {
            qn: QuantumNumbers::new(n, l),
            e: energy_dimless(n, l, big_lambda.clone()),
            admissible: is_admissible(n, l, &big_lambda),
            big_lambda: big_lambda.clone(),
        })
        .collect()
}
