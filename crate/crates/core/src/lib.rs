//! Exact solution sets of linear and quadratic equations over the split
//! quaternions, and the left spectrum of 2×2 split-quaternionic matrices.
//!
//! The algebra is generic over its scalar type ([`Scalar`]); the solvers run
//! over exact rationals and emit points over real quadratic extensions
//! ([`QuadraticSurd`]) when a conic intersection has irrational coordinates.
//!
//! ```
//! use spliq::{left_spectrum, Matrix, Quat};
//!
//! let a: Matrix = "[[1,i],[j,k]]".parse().unwrap();
//! let spectrum = left_spectrum(&a);
//! let values = spectrum.finite_eigenvalues();
//! assert_eq!(values.len(), 1);
//! assert_eq!(values[0].to_rational(), Some("1+k".parse::<Quat>().unwrap()));
//! ```

#![allow(clippy::needless_range_loop, clippy::large_enum_variant)]

pub mod algebra;
pub mod cli;
pub mod error;
pub mod linalg;
pub mod linsolve;
pub mod oracle;
pub mod quadric;
pub mod quadsolve;
pub mod realpoly;
pub mod scalar;
pub mod solsets;
pub mod spectrum;
pub mod surd;

pub use algebra::{AlgebraClass, SplitQuaternion};
pub use error::{Error, Result};
pub use linsolve::{kernel, solve_linear};
pub use quadric::Quadric;
pub use quadsolve::{solve_quadratic, solve_quadratic_traced, solve_square_in_affine, sqrt_set};
pub use realpoly::{companion, quadratic_divisors, Poly, QuadDivisor};
pub use scalar::{ExactScalar, Scalar};
pub use solsets::{AffineFamily, QuasiClass, SolutionSet, Variety};
pub use spectrum::{complex_adjoint, left_spectrum, verify_eigenpair, EigenFamily, LeftSpectrum, Matrix2};
pub use surd::QuadraticSurd;

/// Arbitrary-precision rational, always in lowest terms with positive denominator.
pub type Rational = num_rational::BigRational;
/// Split quaternion with rational coefficients.
pub type Quat = SplitQuaternion<Rational>;
/// Split quaternion over a real quadratic extension of the rationals.
pub type SurdQuat = SplitQuaternion<QuadraticSurd>;
/// Split quaternion with `f64` coefficients; algebra only, never used by the solvers.
pub type Quat64 = SplitQuaternion<f64>;
/// Real polynomial with rational coefficients.
pub type RealPoly = Poly<Rational>;
/// 2×2 matrix over rational split quaternions.
pub type Matrix = Matrix2<Rational>;
