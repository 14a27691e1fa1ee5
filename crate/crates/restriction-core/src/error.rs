use thiserror::Error;

/// Unified error type for the numerical kernels.
#[derive(Debug, Error)]
pub enum CoreError {
    #[error("circle grid size must be even and at least 8, got {0}")]
    BadCircleSize(usize),

    #[error("plane grid needs at least 16 samples per axis, got {nx}x{nt}")]
    GridTooSmall { nx: usize, nt: usize },

    #[error("cap radius must lie in (0, 1], got {0}")]
    BadCapRadius(f64),

    #[error("expected nonnegative real samples; sample {index} is {value}")]
    NegativeSample { index: usize, value: f64 },

    #[error("support precondition failed: relative mass {leak:.3e} lies outside the allowed region")]
    SupportViolation { leak: f64 },

    #[error("truncated domain too small: {0}")]
    Truncation(String),

    #[error("direct trilinear oracle is O(N^3) and limited to N <= {max}, got {got}")]
    OracleTooLarge { max: usize, got: usize },

    #[error("Plancherel ratio spread {spread:.4} exceeds {limit} (grid under-resolved)")]
    KappaSpread { spread: f64, limit: f64 },

    #[error("functional value dropped by {drop:.3e}, beyond the certified quadrature error {allowed:.3e}")]
    Divergence { drop: f64, allowed: f64 },

    #[error("zero input where a nonzero function is required")]
    ZeroInput,

    #[error("near-extremal precondition failed: extension norm {lhs:.6} < {rhs:.6} (= delta * R * l2)")]
    NotNearExtremal { lhs: f64, rhs: f64 },

    #[error("two derivative routes disagree: {a:.8} vs {b:.8}, combined bound {bound:.2e}")]
    RouteMismatch { a: f64, b: f64, bound: f64 },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error("malformed {what}: {detail}")]
    Parse { what: &'static str, detail: String },
}

pub type Result<T> = std::result::Result<T, CoreError>;
