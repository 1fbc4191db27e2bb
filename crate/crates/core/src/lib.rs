//! Bicomplex numbers, finite-dimensional 𝕋-modules and their operators.
//!
//! A bicomplex number `w = a + bι₁ + cι₂ + dj` splits as `ẑ₁e₁ + ẑ₂e₂` with
//! complex hat-components. Multiplication acts componentwise in that basis,
//! so vectors, operators and functionals over 𝕋 reduce to pairs of complex
//! objects, and most algorithms here are a complex algorithm run twice.
//!
//! ```
//! use bicomplex::Bicomplex;
//!
//! let w = Bicomplex::J;
//! let h = w.to_idempotent();
//! assert_eq!((h.h1.re, h.h2.re), (1.0, -1.0));
//! assert_eq!(Bicomplex::E1 * Bicomplex::E2, Bicomplex::ZERO);
//! ```

pub mod cli;
pub mod dual;
pub mod error;
pub mod io;
pub mod linalg;
pub mod operator;
pub mod sampling;
pub mod scalar;
pub mod tmodule;
pub mod verify;

pub use dual::{
    duality_gap, extend_real, hahn_banach_extend, lift_real, norming_functional, separating_functional,
    ExtensionReport, RealLinearFunctional, SubmoduleFunctional, TFunctional,
};
pub use error::{Error, Result};
pub use operator::{NormReport, TMatrix};
pub use scalar::{Bicomplex, Hyperbolic, IdempotentForm, SingularityReport};
pub use tmodule::{distance_to, fmetric, Submodule, TVector};
pub use verify::{run_all, run_check, CheckConfig, CheckReport};
