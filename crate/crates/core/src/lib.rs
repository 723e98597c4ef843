//! Decision engine for Darmon-point constructions over totally real fields.
//!
//! Given a totally real field `F`, a quadratic extension `K = F(√δ)` with at
//! least one real place, and the conductor `N` of an elliptic curve over `F`,
//! the engine computes the sign of the functional equation of `E/K` from the
//! splitting behaviour of the places of `F`, and enumerates every quaternion
//! algebra `B` with level factorization `N = N⁺N′N⁻` for which Gartner's
//! (archimedean) or Greenberg's (`𝔭`-adic) construction can be carried out.
//!
//! ```
//! use darmon_core::{feasibility_report, IdealInput, NumberField, QuadraticExtension, ZPoly};
//!
//! let q = NumberField::parse(&[0, 1]).unwrap();
//! let k = QuadraticExtension::new(q.clone(), &[5]).unwrap();
//! let n = q.factor_ideal(&IdealInput::Generator(ZPoly::from_i64(&[22]))).unwrap();
//! let report = feasibility_report(&k, &n, None).unwrap();
//! assert_eq!(report.sign, -1);
//! assert_eq!(report.greenberg_options.len(), 1);
//! ```

pub mod arith;
mod decimal;
pub mod extension;
pub mod feasibility;
pub mod field;
pub mod oracle;
pub mod par;
pub mod poly;
pub mod scan;
pub mod sturm;

pub use extension::{classify_prime, ExtensionError, PlaceType, QuadraticExtension};
pub use feasibility::{
    build_profile, check_optimal_embedding_local, feasibility_report, select_gartner,
    select_greenberg, sign_functional_equation, ConductorProfile, ConstructionKind,
    Distinguished, FailureReason, FeasibilityError, FeasibilityReport, QuaternionAlgebraSpec,
    SelectorOptions,
};
pub use field::{FieldError, IdealFactorization, IdealInput, NumberField, PrimeIdeal};
pub use oracle::{enumerate_admissible, OracleError};
pub use poly::ZPoly;
pub use sturm::RealPlace;
