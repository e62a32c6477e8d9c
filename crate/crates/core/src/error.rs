use alloc::string::String;
use core::fmt;

/// Errors raised by the algebraic operations of this crate.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// Two objects live over different ground fields.
    FieldMismatch,
    /// Two modules or maps live over different algebras.
    AlgebraMismatch,
    /// A module is not over the algebra of the triangular context in use.
    ContextMismatch,
    /// A functor was applied to an object outside its domain category.
    DomainMismatch(&'static str),
    /// Matrix shapes do not fit together.
    Shape { expected: (usize, usize), found: (usize, usize) },
    /// A linear system has no solution.
    Inconsistent,
    /// An intermediate dimension exceeded the configured cap.
    ResourceCap { what: &'static str, limit: usize, needed: usize },
    /// Trace-form radical computation is not valid in this characteristic.
    UnsupportedCharacteristic { p: u32, dim: usize },
    /// The Gorenstein context could not determine the injective dimension.
    InconclusiveContext,
    NotGorensteinProjective,
    /// A certified Gorenstein-projective module failed to embed in a free module.
    ReflexivityFailure,
    /// A stable-category operation received an uncertified object.
    NotCertified,
    /// A lifting problem that must be solvable for certified inputs had no solution.
    LiftingFailure(&'static str),
    /// Structural validation failed.
    Validation(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::FieldMismatch => write!(f, "objects are defined over different fields"),
            Error::AlgebraMismatch => write!(f, "objects are defined over different algebras"),
            Error::ContextMismatch => {
                write!(f, "module is not over the registered triangular algebra")
            }
            Error::DomainMismatch(what) => write!(f, "functor domain mismatch: {what}"),
            Error::Shape { expected, found } => write!(
                f,
                "shape mismatch: expected {}x{}, found {}x{}",
                expected.0, expected.1, found.0, found.1
            ),
            Error::Inconsistent => write!(f, "linear system is inconsistent"),
            Error::ResourceCap { what, limit, needed } => {
                write!(f, "{what} {needed} exceeds the cap {limit}")
            }
            Error::UnsupportedCharacteristic { p, dim } => write!(
                f,
                "trace-form radical needs characteristic 0 or p > {dim} (got p = {p}); declare the injective dimension instead"
            ),
            Error::InconclusiveContext => {
                write!(f, "injective dimension is not known for this algebra")
            }
            Error::NotGorensteinProjective => write!(f, "module is not Gorenstein-projective"),
            Error::ReflexivityFailure => {
                write!(f, "Gorenstein-projective module does not embed into its double dual")
            }
            Error::NotCertified => write!(f, "object is not certified Gorenstein-projective"),
            Error::LiftingFailure(what) => write!(f, "lifting problem unsolvable: {what}"),
            Error::Validation(msg) => write!(f, "validation failed: {msg}"),
        }
    }
}

impl core::error::Error for Error {}

pub type Result<T, E = Error> = core::result::Result<T, E>;
