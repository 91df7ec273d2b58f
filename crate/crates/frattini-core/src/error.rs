use alloc::string::String;
use core::fmt;

/// Errors shared by every module of the crate.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Error {
    /// The modulus is not an odd prime in the supported range.
    InvalidPrime(u64),
    /// A matrix or vector dimension did not match what the operation needs.
    DimensionMismatch { expected: usize, found: usize },
    /// Inversion of a singular matrix; carries the rank that was found.
    SingularMatrix { rank: usize },
    /// `witt_dims` and the Lie-power builders require `p > k`.
    CharacteristicTooSmall { p: u64, k: u64 },
    /// Lie bracket of total degree above the implemented limit (4).
    DegreeOverflow { degree: usize },
    /// A vector fell outside the subspace it was expected to lie in.
    NotInSubspace,
    /// Searches in `build_ext_field` exhausted their bound (signals a bug).
    ExtFieldSearchFailed(&'static str),
    /// Group elements from different contexts were mixed.
    ContextMismatch,
    /// Commutator length exceeds the class of the context.
    CommutatorTooLong { len: usize, class: usize },
    /// A matrix does not stabilise the quotient submodule; the payload is a
    /// basis row of M whose image leaves M.
    DoesNotStabilizeQuotient { witness_row: usize },
    /// Subgroup specification rejected for the given (d, p).
    InvalidSpec(String),
    /// No reducible Lie power found by n = 4 (contradicts the class analysis).
    NoCriticalPower,
    /// Every maximal submodule was GL-invariant (contradicts the class
    /// analysis; reported with the number of candidates examined).
    NoUsableSubmodule { candidates: usize },
    /// A certificate check failed; the payload names the check.
    CertificateFailed(String),
    /// Pipeline result disagrees with the expected table row.
    TableMismatch { expected_n: u32, computed_n: u32 },
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::InvalidPrime(p) => write!(f, "{p} is not an odd prime in the supported range"),
            Error::DimensionMismatch { expected, found } => {
                write!(f, "dimension mismatch: expected {expected}, found {found}")
            }
            Error::SingularMatrix { rank } => {
                write!(f, "matrix is singular (rank {rank})")
            }
            Error::CharacteristicTooSmall { p, k } => {
                write!(f, "characteristic {p} must exceed the degree {k}")
            }
            Error::DegreeOverflow { degree } => {
                write!(f, "Lie bracket degree {degree} exceeds the implemented limit 4")
            }
            Error::NotInSubspace => write!(f, "vector is not in the expected subspace"),
            Error::ExtFieldSearchFailed(what) => {
                write!(f, "extension field search failed: {what}")
            }
            Error::ContextMismatch => write!(f, "group elements belong to different contexts"),
            Error::CommutatorTooLong { len, class } => {
                write!(f, "commutator of length {len} in a class-{class} context")
            }
            Error::DoesNotStabilizeQuotient { witness_row } => {
                write!(f, "matrix moves basis row {witness_row} of M outside M")
            }
            Error::InvalidSpec(msg) => write!(f, "invalid subgroup specification: {msg}"),
            Error::NoCriticalPower => {
                write!(f, "no reducible Lie power found by n = 4 (generator-set bug?)")
            }
            Error::NoUsableSubmodule { candidates } => {
                write!(
                    f,
                    "all {candidates} maximal submodules are GL-invariant (contradicts the class analysis)"
                )
            }
            Error::CertificateFailed(name) => write!(f, "certificate check failed: {name}"),
            Error::TableMismatch { expected_n, computed_n } => {
                write!(f, "critical power {computed_n} does not match the table value {expected_n}")
            }
        }
    }
}

pub type Result<T> = core::result::Result<T, Error>;
