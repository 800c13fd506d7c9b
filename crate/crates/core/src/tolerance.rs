use serde::{Deserialize, Serialize};

use crate::error::{SymError, SymResult};

/// Largest dense cap accepted (2^20 amplitudes).
pub const MAX_FULL_CAP: usize = 20;

/// Numerical thresholds shared by the solver, the rank profile and the
/// verification suites.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ToleranceConfig {
    /// Singular value `s` counts toward rank iff `s > tol_rank * s_max`.
    pub tol_rank: f64,
    /// Minimum chordal distance between distinct projective points.
    pub tol_sep: f64,
    /// Maximum relative resynthesis error of an accepted decomposition.
    pub tol_resid: f64,
    pub tol_norm: f64,
    /// Largest N for which dense 2^N vectors are built.
    pub n_full_cap: usize,
    pub seed: u64,
}

impl Default for ToleranceConfig {
    fn default() -> Self {
        Self {
            tol_rank: 1e-10,
            tol_sep: 1e-8,
            tol_resid: 1e-10,
            tol_norm: 1e-10,
            n_full_cap: 14,
            seed: 0,
        }
    }
}

impl ToleranceConfig {
    pub fn validate(&self) -> SymResult<()> {
        for (name, v) in [
            ("tol_rank", self.tol_rank),
            ("tol_sep", self.tol_sep),
            ("tol_resid", self.tol_resid),
            ("tol_norm", self.tol_norm),
        ] {
            if !(v > 0.0 && v < 1.0) {
                return Err(SymError::InvalidParameter(format!(
                    "{name} must lie in (0, 1), got {v}"
                )));
            }
        }
        if self.n_full_cap > MAX_FULL_CAP {
            return Err(SymError::InvalidParameter(format!(
                "n_full_cap must be at most {MAX_FULL_CAP}, got {}",
                self.n_full_cap
            )));
        }
        Ok(())
    }
}
