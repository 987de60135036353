use thiserror::Error;

/// Errors raised across the crate.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum ThetaError {
    #[error("domain error: {0}")]
    Domain(String),
    #[error("mixed classes: {a} and {b} do not differ by an integer")]
    MixedClasses { a: String, b: String },
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("cannot parse {what} from {token:?}")]
    Parse { what: &'static str, token: String },
    #[error("truncation failure: best tail bound {best_bound:e} at radius {radius} exceeds target {target:e}")]
    Truncation {
        best_bound: f64,
        radius: u32,
        target: f64,
    },
}

pub type Result<T> = std::result::Result<T, ThetaError>;
