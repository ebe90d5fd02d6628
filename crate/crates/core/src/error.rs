//! Error type shared by all modules.

use num_complex::Complex64;
use thiserror::Error;

/// Errors produced by symbol arithmetic, factorization, operator application
/// and the solver.
#[derive(Debug, Clone, Error)]
pub enum Error {
    /// A rational symbol was constructed with an identically zero denominator.
    #[error("denominator is identically zero")]
    ZeroDenominator,
    /// Attempted to invert (or divide by) the zero symbol.
    #[error("division by the zero symbol")]
    DivisionByZero,
    /// A denominator root lies on the unit circle; projections and Fourier
    /// coefficients are undefined.
    #[error("symbol has a pole on the unit circle near {location}")]
    PoleOnCircle { location: Complex64 },
    /// A zero or pole of the symbol lies on the unit circle, so the Toeplitz
    /// operator is not Fredholm and no factorization exists.
    #[error("symbol has a zero or pole on the unit circle near {location}; T(g) is not Fredholm")]
    ZeroOrPoleOnCircle { location: Complex64 },
    /// The polynomial root solver failed to converge.
    #[error("root finding did not converge for a polynomial of degree {degree}")]
    RootFindingFailure { degree: usize },
    /// `g * tilde(g) = 1` (or the pair matching condition) fails at circle
    /// sample points.
    #[error("matching condition violated (max deviation {deviation:.3e})")]
    NotMatching { deviation: f64 },
    /// The factorization signature is not within tolerance of +1 or -1.
    #[error("factorization signature {value} is not within tolerance of +1 or -1")]
    SignatureIndeterminate { value: Complex64 },
    /// A right inverse was requested for a factorization with positive index.
    #[error("right inverse requires factorization index <= 0, got {index}")]
    IndexPositive { index: i64 },
    /// A left inverse was requested for a factorization with negative index.
    #[error("left inverse requires factorization index >= 0, got {index}")]
    IndexNegative { index: i64 },
    /// The function is not an element of the Hardy space.
    #[error("not a Hardy-space element: {detail}")]
    NotHardy { detail: String },
    /// A case solver was invoked outside its index range.
    #[error("case solver requires {expected} (got kappa_c = {kappa_c}, kappa_d = {kappa_d})")]
    WrongCase {
        expected: &'static str,
        kappa_c: i64,
        kappa_d: i64,
    },
    /// The linear constraint system of the shift reduction could not be
    /// solved reliably.
    #[error("constraint system is numerically singular (residual {residual:.3e})")]
    ConstraintSystemSingular { residual: f64 },
    /// Kernel basis functions are only defined for positive kappa.
    #[error("kernel basis functions require kappa >= 1, got {kappa}")]
    KappaNonpositive { kappa: i64 },
}

/// Convenience alias used across the crate.
pub type Result<T> = std::result::Result<T, Error>;
