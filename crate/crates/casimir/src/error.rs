use thiserror::Error;

/// Library-wide error type. Computational errors carry enough context to
/// locate the offending spectral point or to resume from a partial result.
#[derive(Debug, Clone, Error)]
pub enum CasimirError {
    /// Domain or configuration violation; the message names the field.
    #[error("invalid input: {0}")]
    InvalidInput(String),

    /// The argument of the spectral logarithm was not strictly positive.
    /// This cannot happen for physical reflection matrices; it indicates a
    /// broken plate model and is a hard error rather than a NaN.
    #[error(
        "spectral log argument {argument:.3e} not positive at \
         (xi={xi:.6e}, k_perp={k_perp:.6e}, phi={phi:.6e})"
    )]
    SpectralPositivity {
        xi: f64,
        k_perp: f64,
        phi: f64,
        argument: f64,
    },

    /// The boundary-condition system was numerically singular, which only
    /// occurs for degenerate polarization bases.
    #[error("singular boundary system at (xi={xi:.6e}, k_perp={k_perp:.6e}, phi={phi:.6e})")]
    SingularSystem { xi: f64, k_perp: f64, phi: f64 },

    /// Refinement exhausted before the tolerance was met. `partial` is the
    /// finest-level value and `error_estimate` the last refinement delta.
    #[error(
        "quadrature not converged after {levels} levels: \
         value {partial:.12e}, estimate {error_estimate:.3e}"
    )]
    NotConverged {
        partial: f64,
        error_estimate: f64,
        evaluations: u64,
        levels: u32,
    },
}

pub type Result<T> = std::result::Result<T, CasimirError>;

impl CasimirError {
    pub fn invalid(msg: impl Into<String>) -> Self {
        CasimirError::InvalidInput(msg.into())
    }
}
