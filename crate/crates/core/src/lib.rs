//! Exact computation of Frobenius length tables for hypersurfaces over `F_p`.
//!
//! Given a prime `p` and `f` in the maximal ideal of `F_p[x_1, ..., x_{n+1}]`,
//! the truncated ring `R_e = F_p[x]/(x_1^{p^e}, ..., x_{n+1}^{p^e})` carries the
//! descending chain `R_e ⊇ f R_e ⊇ f^2 R_e ⊇ ...`. The successive quotient
//! lengths `ℓ_{e,t}` drive everything in this crate: the step functions
//! `C_{e,⌊x p^e⌋}`, Hilbert–Kunz and F-signature estimates, F-pure threshold
//! upper bounds and the F-signature of pairs.
//!
//! All arithmetic is exact. Linear algebra runs over `F_p` on the monomial
//! basis, rationals are arbitrary precision.

pub mod engine;
pub mod error;
pub mod linalg;
pub mod monomial;
pub mod parse;
pub mod rational;
pub mod ring;
pub mod verify;

pub use engine::{
    Bracket, Engine, EstimateKind, EstimateSequence, FptEstimate, LengthTable, Monotonicity, XiStep,
};
pub use error::{Error, Result};
pub use linalg::{
    image_chain, image_chain_with, image_dimension, image_dimension_with, ChainStrategy,
    EchelonBasis, ImageChain, RankStrategy, SparseVector,
};
pub use monomial::{Classification, EpsilonAnalysis, MonomialSpec, XiPolynomial};
pub use parse::parse_polynomial;
pub use rational::RationalValue;
pub use ring::{Capacity, ExponentVector, Polynomial, PrimeModulus, TruncatedPoly, TruncatedRing};
pub use verify::{CheckResult, CheckStatus, Corpus, CorpusEntry, Witness};
