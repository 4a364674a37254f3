use core::fmt;

/// Errors shared across the crate.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// Operands carry different ring parameters.
    ParamMismatch,
    /// The requested quantity is not visible at working precision `(p^N, X^M)`.
    PrecisionExhausted,
    /// Weierstrass division requires a divisor with vanishing `μ`-invariant.
    NotDivisible,
    /// Matrix exceeds the configured determinant size bound.
    SizeExceeded,
    /// The relation matrix of the module is not square.
    NotSquare,
    /// A polynomial failed the distinguishedness check.
    NotDistinguished,
    /// An `F_p` matrix would exceed the configured dimension budget.
    DimensionBudgetExceeded,
    /// A growth intercept failed to stabilize within the sampling window.
    Unstable,
    /// Two presentations that were required to agree mod `p` do not.
    CongruenceViolation,
    /// Skeletons declare different coranks.
    CorankMismatch,
    /// Invalid ring parameters (`p` not an odd prime, precision out of range, ...).
    BadParams,
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let msg = match self {
            Error::ParamMismatch => "ring parameters differ between operands",
            Error::PrecisionExhausted => "quantity not determined at working precision",
            Error::NotDivisible => "divisor must have mu-invariant zero",
            Error::SizeExceeded => "matrix exceeds the determinant size bound",
            Error::NotSquare => "relation matrix is not square",
            Error::NotDistinguished => "polynomial is not distinguished",
            Error::DimensionBudgetExceeded => "F_p matrix exceeds the dimension budget",
            Error::Unstable => "growth intercept did not stabilize in the window",
            Error::CongruenceViolation => "presentations are not congruent mod p",
            Error::CorankMismatch => "skeletons declare different coranks",
            Error::BadParams => "invalid ring parameters",
        };
        f.write_str(msg)
    }
}
