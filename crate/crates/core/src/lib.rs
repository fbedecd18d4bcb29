//! Exact Čech cohomology for sheaves of semimodules on semiring schemes.
//!
//! Cochain complexes here carry two differentials `d⁺` and `d⁻` in place of
//! an alternating sum, so everything works over semirings without additive
//! inverses. The crate covers:
//!
//! * [`semiring`]: exact semirings (Boolean, max-plus over ℚ and ℤ, ℕ, and
//!   finite tables) with their canonical order.
//! * [`laurent`]: Laurent polynomials and the section spaces of the standard
//!   charts of projective space.
//! * [`semimodule`]: finite semimodules, congruence closure, quotients, Hom
//!   and both tensor products.
//! * [`pm_complex`]: ± complexes, cocycles, the cohomology congruence and
//!   induced maps.
//! * [`cech`]: Čech ± complexes of finite sheaf data on finite covers.
//! * [`projective`]: the structure sheaf and unit cocycles on ℙⁿ, vanishing
//!   witnesses and the Picard group.
//! * [`affine`]: prime ideals, unit detection on monomial localizations and
//!   the contraction of unit cocycles.
//!
//! The crate is `no_std` and only needs `alloc`.

#![no_std]
#![forbid(unsafe_code)]

extern crate alloc;

pub mod affine;
pub mod cech;
mod error;
pub mod laurent;
pub mod pm_complex;
pub mod projective;
pub mod semimodule;
pub mod semiring;
mod union_find;

pub use crate::error::{Error, Result};
pub use crate::union_find::UnionFind;

/// Default bound on exhaustive enumerations (tensor products, Hom sets).
pub const DEFAULT_SEARCH_BOUND: usize = 4096;
