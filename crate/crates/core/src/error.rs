//! Crate-wide error type.

use core::fmt;

pub type Result<T> = core::result::Result<T, Error>;

/// Errors reported by the library. Variants carry enough context to be
/// rendered for an end user without access to the call site.
#[derive(Clone, Debug, PartialEq)]
pub enum Error {
    /// An argument vector had the wrong length for the function's arity.
    ArityMismatch { expected: usize, got: usize },
    /// A bit-vector length was zero or exceeded the packed-word capacity.
    BitLength { len: usize, max: usize },
    /// A mask had bits set beyond the declared length.
    StrayBits { len: usize },
    /// A character that is not `0` or `1` appeared in a bit string.
    BadBitChar { position: usize },
    /// A level/order index was outside `0..=k`.
    LevelOutOfRange { level: usize, k: usize },
    /// A coordinate index at or beyond the arity.
    CoordinateOutOfRange { index: usize, k: usize },
    /// The same coordinate listed twice in a subset.
    DuplicateCoordinate { index: usize },
    /// A conditioning parameter `(t, w)` was outside its admissible range.
    ConditionOutOfRange { t: usize, w: usize, k: usize },
    /// A request exceeded a configured resource cap.
    ResourceCap {
        what: &'static str,
        requested: u64,
        cap: u64,
    },
    /// An interval or range argument was empty or inverted.
    InvalidRange { lo: u64, hi: u64 },
    /// No polynomial of the requested degree bound fits the samples; the
    /// index is the first sample that deviates.
    FitInconsistent { index: usize },
    /// A modulus that must be prime was not.
    InvalidModulus { modulus: u64 },
    /// A residue class with `gcd(modulus, residue) != 1` was requested.
    InvalidResidue { modulus: u64, residue: u64 },
    /// A polynomial's degree bound exceeds the modulus, so the periodicity
    /// argument does not apply.
    DegreeExceedsModulus { degree_bound: usize, modulus: u64 },
    /// The prime interval was too thin to assemble a periodicity certificate.
    CertificateUnavailable { lo: u64, hi: u64, found: usize },
    /// A measure was requested for an identically-zero source.
    EmptyMeasure,
    /// A confidence parameter was outside the open interval (0, 1).
    InvalidConfidence,
    /// A weight class was never sampled within the draw budget.
    ClassStarved { weight: usize, budget: u64 },
    /// The learner's search space was exhausted without a consistent
    /// hypothesis; indicates a broken oracle or an out-of-class target.
    LearnDiagnostic { stage: &'static str },
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::ArityMismatch { expected, got } => {
                write!(f, "arity mismatch: expected {expected} bits, got {got}")
            }
            Error::BitLength { len, max } => {
                write!(f, "bit-vector length {len} outside 1..={max}")
            }
            Error::StrayBits { len } => {
                write!(f, "mask has bits set beyond declared length {len}")
            }
            Error::BadBitChar { position } => {
                write!(f, "bit string has a character other than 0/1 at position {position}")
            }
            Error::CoordinateOutOfRange { index, k } => {
                write!(f, "coordinate {index} out of range for arity {k}")
            }
            Error::DuplicateCoordinate { index } => {
                write!(f, "coordinate {index} listed more than once")
            }
            Error::LevelOutOfRange { level, k } => {
                write!(f, "level {level} outside 0..={k}")
            }
            Error::ConditionOutOfRange { t, w, k } => {
                write!(f, "condition (t={t}, w={w}) out of range for arity {k}")
            }
            Error::ResourceCap {
                what,
                requested,
                cap,
            } => write!(f, "{what} {requested} exceeds cap {cap}"),
            Error::InvalidRange { lo, hi } => write!(f, "invalid range [{lo}, {hi}]"),
            Error::FitInconsistent { index } => {
                write!(f, "no polynomial under the degree bound fits sample {index}")
            }
            Error::InvalidModulus { modulus } => write!(f, "modulus {modulus} is not prime"),
            Error::InvalidResidue { modulus, residue } => {
                write!(f, "residue {residue} not coprime to modulus {modulus}")
            }
            Error::DegreeExceedsModulus {
                degree_bound,
                modulus,
            } => write!(
                f,
                "degree bound {degree_bound} exceeds modulus {modulus}; periodicity does not apply"
            ),
            Error::CertificateUnavailable { lo, hi, found } => write!(
                f,
                "interval [{lo}, {hi}] holds {found} usable prime(s); certificate unavailable"
            ),
            Error::EmptyMeasure => write!(f, "source function is identically zero"),
            Error::InvalidConfidence => write!(f, "confidence parameter must lie in (0, 1)"),
            Error::ClassStarved { weight, budget } => write!(
                f,
                "weight class {weight} not sampled often enough within {budget} draws"
            ),
            Error::LearnDiagnostic { stage } => {
                write!(f, "learner diagnostic failure during {stage}")
            }
        }
    }
}

impl core::error::Error for Error {}
