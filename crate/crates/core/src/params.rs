//! Physical constants, the dimensionless reduction and the Λ-dependent domain.
//!
//! Two couplings appear in the model. The classical module works with
//! `g = m α²`; the quantum reduction uses the redefined `g = m α² + ħ α λ`,
//! which is what [`ModelParams::coupling`] returns.

use crate::error::{Error, Result};
use crate::scalar::Real;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModelParams<T> {
    m: T,
    alpha: T,
    lambda: T,
    hbar: T,
    coupling: T,
}

impl<T: Real> ModelParams<T> {
    pub fn new(m: T, alpha: T, lambda: T, hbar: T) -> Result<Self> {
        for (name, value) in [("m", m), ("alpha", alpha), ("hbar", hbar)] {
            if !(value > T::zero()) {
                return Err(Error::NonPositiveParameter {
                    name,
                    value: value.approx_f64(),
                });
            }
        }
        if !lambda.is_finite() {
            return Err(Error::OutsideDomain {
                what: "lambda",
                value: lambda.approx_f64(),
            });
        }
        Ok(Self {
            m,
            alpha,
            lambda,
            hbar,
            coupling: m * alpha * alpha + hbar * alpha * lambda,
        })
    }

    /// Units with ħ = m = α = 1, in which λ and Λ coincide.
    pub fn natural(lambda: T) -> Result<Self> {
        Self::new(T::one(), T::one(), lambda, T::one())
    }

    pub fn m(&self) -> T {
        self.m
    }

    pub fn alpha(&self) -> T {
        self.alpha
    }

    pub fn lambda(&self) -> T {
        self.lambda
    }

    pub fn hbar(&self) -> T {
        self.hbar
    }

    /// Redefined quantum coupling `g = m α² + ħ α λ`.
    pub fn coupling(&self) -> T {
        self.coupling
    }

    /// Classical coupling `g = m α²` of the original Lagrangian.
    pub fn classical_coupling(&self) -> T {
        self.m * self.alpha * self.alpha
    }

    /// `λ r² + 1`, the inverse mass profile up to the factor `m`.
    pub fn mass_factor(&self, r: T) -> T {
        self.lambda * r * r + T::one()
    }
}

/// Free-standing constructor matching the operation name used throughout the docs.
pub fn make_model<T: Real>(m: T, alpha: T, lambda: T, hbar: T) -> Result<ModelParams<T>> {
    ModelParams::new(m, alpha, lambda, hbar)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DimensionlessModel<T> {
    /// Dimensionless nonlinearity Λ = λ C².
    pub big_lambda: T,
    /// Length scale C = sqrt(ħ / (m α)), with r = C y.
    pub scale_c: T,
}

impl<T: Real> DimensionlessModel<T> {
    /// Recovers the dimensional λ = Λ / C².
    pub fn lambda(&self) -> T {
        self.big_lambda / (self.scale_c * self.scale_c)
    }

    pub fn radius(&self, y: T) -> T {
        self.scale_c * y
    }

    pub fn coordinate(&self, r: T) -> T {
        r / self.scale_c
    }
}

pub fn dimensionless<T: Real>(params: &ModelParams<T>) -> DimensionlessModel<T> {
    let scale_c = (params.hbar / (params.m * params.alpha)).sqrt();
    DimensionlessModel {
        big_lambda: params.lambda * scale_c * scale_c,
        scale_c,
    }
}

/// Interval `(0, upper)` on which the radial problem lives.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Domain<T> {
    pub lower: T,
    /// `None` stands for +∞.
    pub upper: Option<T>,
}

impl<T: Real> Domain<T> {
    pub fn is_finite(&self) -> bool {
        self.upper.is_some()
    }

    /// Open-interval membership.
    pub fn contains(&self, y: T) -> bool {
        y > self.lower && self.upper.is_none_or(|u| y < u)
    }

    /// Closed-interval membership (endpoint values are defined for the states).
    pub fn contains_closed(&self, y: T) -> bool {
        y >= self.lower && self.upper.is_none_or(|u| y <= u)
    }
}

pub fn domain<T: Real>(big_lambda: T) -> Domain<T> {
    let upper = if big_lambda < T::zero() {
        Some((T::one() / big_lambda.abs()).sqrt())
    } else {
        None
    };
    Domain {
        lower: T::zero(),
        upper,
    }
}

/// Position-dependent mass `M(r) = m / (λ r² + 1)`.
pub fn mass_at<T: Real>(r: T, params: &ModelParams<T>) -> Result<T> {
    if r < T::zero() {
        return Err(Error::OutsideDomain {
            what: "r",
            value: r.approx_f64(),
        });
    }
    let f = params.mass_factor(r);
    if f <= T::zero() {
        return Err(Error::OutsideDomain {
            what: "r",
            value: r.approx_f64(),
        });
    }
    Ok(params.m / f)
}
