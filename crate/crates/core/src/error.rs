use core::fmt;

/// Errors raised by the algebraic constructions in this crate.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// The characteristic passed to a tower constructor is not prime.
    NotPrime(u32),
    /// Extension degree must be at least one.
    ZeroDegree,
    /// A size limit was exceeded (field size, neighbor count, search budget).
    ScaleCap { what: &'static str, limit: usize, requested: usize },
    /// The supplied defining polynomial is not monic irreducible of the right degree.
    BadModulus,
    /// Matrix or vector sizes do not agree.
    DimensionMismatch { expected: usize, got: usize },
    /// The lift for `sigma` is not invertible.
    SingularLift { sigma: u32 },
    /// `c_sigma * sigma(c_tau) * c_{sigma tau}^{-1}` is not a scalar matrix.
    NonScalarDefect { sigma: u32, tau: u32 },
    /// The 2-cocycle identity fails at the triple.
    CocycleIdentity { sigma: u32, tau: u32, gamma: u32 },
    /// A 2-cocycle entry is zero.
    ZeroEntry { sigma: u32, tau: u32 },
    /// An element expected to lie in the base field `K` has coefficients outside `F_p`.
    NotInBaseField,
    /// A zero element was supplied where a unit is required.
    ZeroElement,
    /// The matrix is not invertible.
    SingularMatrix,
    /// A linear solve produced a space of unexpected dimension.
    WrongDimension { expected: usize, got: usize },
    /// A vertex is moved by the twisted action of the given Galois element.
    VertexNotFixed { sigma: u32 },
    /// A lift does not lie in `GL_n(O_L)` (up to a scalar).
    NonIntegralLift { sigma: u32 },
    /// A named identity failed at the indicated Galois indices.
    IdentityFailure { identity: &'static str, indices: [u32; 3] },
    /// An element does not lie in the span it was expected to lie in.
    NotInSpan,
    /// Structure constants violate associativity, the unit axiom or integrality.
    InvalidAlgebra(&'static str),
}

pub type Result<T> = core::result::Result<T, Error>;

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::NotPrime(p) => write!(f, "p must be prime (got {})", p),
            Error::ZeroDegree => write!(f, "n must be at least 1"),
            Error::ScaleCap { what, limit, requested } => {
                write!(f, "scale cap exceeded for {}: {} > {}", what, requested, limit)
            }
            Error::BadModulus => write!(f, "defining polynomial is not monic irreducible of degree n"),
            Error::DimensionMismatch { expected, got } => {
                write!(f, "dimension mismatch: expected {}, got {}", expected, got)
            }
            Error::SingularLift { sigma } => write!(f, "lift at sigma={} is singular", sigma),
            Error::NonScalarDefect { sigma, tau } => {
                write!(f, "cocycle defect at (sigma, tau)=({}, {}) is not scalar", sigma, tau)
            }
            Error::CocycleIdentity { sigma, tau, gamma } => {
                write!(f, "2-cocycle identity fails at (sigma, tau, gamma)=({}, {}, {})", sigma, tau, gamma)
            }
            Error::ZeroEntry { sigma, tau } => {
                write!(f, "2-cocycle entry at ({}, {}) is zero", sigma, tau)
            }
            Error::NotInBaseField => write!(f, "element is not in the base field K"),
            Error::ZeroElement => write!(f, "element must be nonzero"),
            Error::SingularMatrix => write!(f, "matrix is singular"),
            Error::WrongDimension { expected, got } => {
                write!(f, "solution space has dimension {} (expected {})", got, expected)
            }
            Error::VertexNotFixed { sigma } => {
                write!(f, "vertex is moved by the twisted action of sigma={}", sigma)
            }
            Error::NonIntegralLift { sigma } => {
                write!(f, "lift at sigma={} is not in GL_n(O_L) up to scalars", sigma)
            }
            Error::IdentityFailure { identity, indices } => {
                write!(f, "identity {} fails at indices ({}, {}, {})", identity, indices[0], indices[1], indices[2])
            }
            Error::NotInSpan => write!(f, "element is not in the expected span"),
            Error::InvalidAlgebra(why) => write!(f, "invalid structure constants: {}", why),
        }
    }
}
