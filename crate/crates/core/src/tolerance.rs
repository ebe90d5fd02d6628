//! Numeric thresholds used throughout the crate.

/// Magnitude floor applied when Laurent coefficients are pruned during
/// ordinary arithmetic. [`Tolerances::default`] carries the same value.
pub const DEFAULT_COEFF_FLOOR: f64 = 1e-12;

/// Tunable numeric thresholds for symbol arithmetic, factorization and
/// solving.
///
/// Every decision the library makes against a threshold goes through one of
/// these fields, so callers can tighten or relax them in one place. The
/// defaults are suitable for symbols with coefficients of moderate size and
/// zeros/poles that keep a reasonable distance from the unit circle.
#[derive(Debug, Clone)]
pub struct Tolerances {
    /// Coefficients with magnitude at or below this floor are pruned to zero
    /// when symbols are canonicalized.
    pub coeff_floor: f64,
    /// A root `z` with `||z| - 1|` below this value is treated as lying on
    /// the unit circle; operators with such symbols are refused.
    pub circle: f64,
    /// Roots of a polynomial closer than this are merged into a single
    /// multiple root (cluster average).
    pub root_merge: f64,
    /// The factorization signature must lie within this distance of +1 or -1,
    /// otherwise it is reported as indeterminate.
    pub signature_snap: f64,
    /// Maximum relative deviation of `a(t)a(1/t) - b(t)b(1/t)` at circle
    /// sample points for a pair to qualify as matching.
    pub matching: f64,
    /// Maximum relative error allowed when `minus * t^n * plus` is compared
    /// against the source symbol on the circle.
    pub reconstruction: f64,
    /// Residual threshold: solvability condition values and solution
    /// residuals below this count as zero.
    pub residual: f64,
    /// Singular values below this are treated as zero in rank decisions.
    pub rank: f64,
    /// A constraint system whose least-squares residual exceeds this is
    /// declared infeasible.
    pub constraint_residual: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances {
            coeff_floor: DEFAULT_COEFF_FLOOR,
            circle: 1e-8,
            root_merge: 1e-7,
            signature_snap: 1e-6,
            matching: 1e-8,
            reconstruction: 1e-10,
            residual: 1e-8,
            rank: 1e-9,
            constraint_residual: 1e-7,
        }
    }
}
