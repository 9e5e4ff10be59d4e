//! Exact invariants and obstructions for Legendrian surgeries between lens spaces.
//!
//! Everything here is computed with exact integer and rational arithmetic:
//! negative continued fractions and residues ([`arith`]), lens-space data and
//! correction terms ([`lens`]), contact surgery diagrams with their `d3`
//! invariant ([`diagram`]), tight structures on lens spaces ([`tightbook`]),
//! the planar open book filling bound ([`planar`]), surgery obstructions
//! ([`obstruct`]) and overtwisted bookkeeping ([`otwist`]). The [`cli`]
//! module drives the `lensurg` binary.
//!
//! The number-theoretic and linear-algebra layers are generic over any exact
//! integer type implementing [`ExactInt`]; the aliases below fix the
//! arbitrary-precision instantiation used by the domain modules.

pub mod arith;
pub mod cli;
pub mod diagram;
pub mod error;
pub mod lens;
pub mod linalg;
pub mod obstruct;
pub mod otwist;
pub mod planar;
pub mod tightbook;

pub use arith::ExactInt;
pub use error::{Error, Result};

/// Arbitrary-precision integer used for every derived quantity.
pub type Int = num_bigint::BigInt;

/// Exact rational in lowest terms with positive denominator.
pub type Rational = num_rational::Ratio<Int>;

/// Negative continued fraction over [`Int`].
pub type NegCf = arith::NegCf<Int>;

/// Square integer matrix over [`Int`].
pub type Matrix = linalg::Matrix<Int>;

pub use diagram::{ContactSurgeryDiagram, DiagramInvariants, LegendrianComponent, SpinCClass};
pub use lens::{DInvariantTable, LensSpace};
pub use obstruct::{ObstructionVerdict, Verdict};
pub use planar::{CrossingProfile, PlanarMonodromy};
pub use tightbook::TightStructure;
