use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid lens parameters ({p}, {q}): need 0 < q < p and gcd(p, q) = 1")]
    InvalidLens { p: String, q: String },

    #[error("modulus must be at least 2, got {0}")]
    InvalidModulus(i64),

    #[error("{q} has no inverse modulo {p}")]
    NotInvertible { q: i64, p: i64 },

    #[error("continued fraction coefficients must be nonempty and all <= -2")]
    InvalidContinuedFraction,

    #[error("invalid diagram: {0}")]
    InvalidDiagram(String),

    #[error("non-torsion c1; d3 undefined")]
    NonTorsion,

    #[error("rotation number {rot} is not admissible for a Legendrian unknot with tb = {tb}")]
    InadmissibleRotation { tb: i64, rot: i64 },

    #[error("no Legendrian unknot in the tight S^3 has tb = {0} (need tb <= -1)")]
    InvalidUnknotTb(i64),

    #[error("invalid monodromy: {0}")]
    InvalidMonodromy(String),

    #[error("no positive factorization: {0}")]
    NoPositiveFactorization(String),

    #[error("{0} is not prime")]
    NotPrime(i64),

    #[error("invalid torus knot parameters ({p}, {q}): need p, q >= 2 and coprime")]
    InvalidTorusKnot { p: i64, q: i64 },

    #[error("genus-0 knots are covered by the non-loose unknot classification")]
    GenusZero,

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("cannot parse {0:?} as a rational")]
    ParseRational(String),
}
