//! Bound states of the three-dimensional nonlinear oscillator with
//! position-dependent mass `M(r) = m / (λ r² + 1)`.
//!
//! The crate provides
//! - the closed-form spectrum and its admissibility rules ([`spectrum`]),
//! - the exact radial eigenfunctions built from Jacobi polynomials, together with
//!   the weighted inner product, normalization and effective potential ([`radial`]),
//! - an independent shooting-method oracle and the harmonic-oscillator limit ([`oracle`]),
//! - the classical equations of motion ([`classical`]).
//!
//! Numerical code is generic over the scalar type. The algebraic kernels in
//! [`orthopoly`] and [`spectrum`] also run in exact rational arithmetic.

// `!(x > 0)` is used on purpose: it also rejects NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod classical;
pub mod error;
pub mod ode;
pub mod oracle;
pub mod orthopoly;
pub mod params;
pub mod quadrature;
pub mod radial;
pub mod scalar;
pub mod spectrum;

pub use error::{Error, Result};
pub use orthopoly::{PolyCoeffs, PolyParams};
pub use params::{
    dimensionless, domain, make_model, mass_at, DimensionlessModel, Domain, ModelParams,
};
pub use radial::{RadialEigenstate, WeightedInnerProductResult};
pub use scalar::{Real, Scalar};
pub use spectrum::{QuantumNumbers, StateCount};

/// Exact rational scalar used by the oracle checks.
pub type BigRational = num_rational::BigRational;

pub type Params = ModelParams<f64>;
pub type Dimensionless = DimensionlessModel<f64>;
pub type Poly = PolyCoeffs<f64>;
pub type RationalPoly = PolyCoeffs<BigRational>;
pub type State = RadialEigenstate<f64>;
pub type InnerProduct = WeightedInnerProductResult<f64>;
pub type Trajectory1D = classical::Trajectory<classical::ClassicalState1D<f64>, f64>;
pub type TrajectoryPlanar = classical::Trajectory<classical::ClassicalStatePlanar<f64>, f64>;
pub type Shooting = oracle::ShootingResult<f64>;
