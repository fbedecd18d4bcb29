use alloc::string::String;

/// Errors raised by constructions and checks in this crate.
///
/// Every variant that reports a failed mathematical check carries a
/// human-readable description of the offending elements.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("incompatible operands: {0}")]
    Incompatible(String),
    #[error("semiring axiom violated: {0}")]
    SemiringAxiom(String),
    #[error("semimodule axiom violated: {0}")]
    SemimoduleAxiom(String),
    #[error("not a homomorphism: {0}")]
    NotHomomorphism(String),
    #[error("size guard: {what} needs {needed} candidates, bound is {bound}")]
    SizeGuard {
        what: String,
        needed: u128,
        bound: usize,
    },
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error("chain identity fails at degree {degree}: {detail}")]
    ChainIdentity { degree: usize, detail: String },
    #[error("not a ±-morphism at degree {degree}: {detail}")]
    NotPmMorphism { degree: usize, detail: String },
    #[error("cohomology relation at degree {degree} is not a congruence: {detail}")]
    RhoNotCongruence { degree: usize, detail: String },
    #[error("not a cocycle: {0}")]
    NotCocycle(String),
    #[error("classification failed: {0}")]
    Classification(String),
    #[error("gluing failed: {0}")]
    Gluing(String),
    #[error("not a refinement: {0}")]
    NotRefinement(String),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("decomposition failed: {0}")]
    Decomposition(String),
    #[error("not invertible: {0}")]
    NotInvertible(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
}

pub type Result<T, E = Error> = core::result::Result<T, E>;
