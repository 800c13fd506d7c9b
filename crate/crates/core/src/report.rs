//! JSON reports produced by the command-line front end.

use std::time::Instant;

use serde_json::{json, Map, Value};

use crate::decomposer::{decompose, kraus_pair};
use crate::error::SymResult;
use crate::hamiltonian::{rank_profile, verify_ground, ParentHamiltonian, DENSE_SPECTRAL_CAP};
use crate::io::{decomposition_to_json, hamiltonian_to_json};
use crate::symstate::SymmetricState;
use crate::tolerance::ToleranceConfig;

/// Consistency checks between `D`, the rank profile and `n*`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BoundChecks {
    /// `n* <= floor(N/2) + 1`.
    pub n_star_bound: bool,
    pub n_star_le_d: bool,
    /// `rank rho^(M) = rank rho^(N-M)` for `0 < M < N`.
    pub rank_symmetry: bool,
    /// `rank rho^(M) <= min(D, M + 1)`.
    pub rank_bound: bool,
}

impl BoundChecks {
    pub fn evaluate(n: usize, d: usize, ranks: &[usize], n_star: Option<usize>) -> Self {
        let rank = |m: usize| ranks[m - 1];
        Self {
            n_star_bound: n_star.is_some_and(|s| s <= n / 2 + 1),
            n_star_le_d: n_star.is_some_and(|s| s <= d),
            rank_symmetry: (1..n).all(|m| rank(m) == rank(n - m)),
            rank_bound: (1..=n).all(|m| rank(m) <= d.min(m + 1)),
        }
    }

    pub fn all(&self) -> bool {
        self.n_star_bound && self.n_star_le_d && self.rank_symmetry && self.rank_bound
    }

    fn to_json(self) -> Value {
        json!({
            "n_star_bound": self.n_star_bound,
            "n_star_le_d": self.n_star_le_d,
            "rank_symmetry": self.rank_symmetry,
            "rank_bound": self.rank_bound,
        })
    }
}

fn millis(start: Instant) -> f64 {
    start.elapsed().as_secs_f64() * 1e3
}

/// Decomposition, Kraus pair, rank profile and bound checks of `state`.
/// `input` is copied verbatim into the report.
pub fn classify_report(
    input: Value,
    state: &SymmetricState,
    tol: &ToleranceConfig,
    timings: bool,
) -> SymResult<Value> {
    let n = state.n_parties();
    let t0 = Instant::now();
    let dec = decompose(state, tol)?;
    let t_dec = millis(t0);
    let t1 = Instant::now();
    let profile = rank_profile(state, tol)?;
    let t_rank = millis(t1);
    let d = dec.bond_dim();
    let checks = BoundChecks::evaluate(n, d, &profile.ranks, profile.n_star);

    let mut out = Map::new();
    out.insert("input".into(), input);
    out.insert("n".into(), json!(n));
    out.insert("d".into(), json!(d));
    out.insert("decomposition".into(), decomposition_to_json(&dec));
    out.insert("kraus".into(), json!(kraus_pair(&dec)));
    out.insert("rank_profile".into(), json!(profile.ranks));
    out.insert("n_star".into(), json!(profile.n_star));
    out.insert("bound_checks".into(), checks.to_json());
    out.insert("tolerances".into(), json!(tol));
    if timings {
        out.insert("timings_ms".into(), json!({ "decompose": t_dec, "rank_profile": t_rank }));
    }
    Ok(Value::Object(out))
}

/// `{"hamiltonian": ..., "interaction_length", "constructive", "couplings",
/// "verification"}`. Verification is `null` beyond the dense cap.
pub fn hamiltonian_report(
    h: &ParentHamiltonian,
    state: &SymmetricState,
    tol: &ToleranceConfig,
) -> SymResult<Value> {
    let verification = if state.n_parties() <= tol.n_full_cap {
        json!(verify_ground(h, state, tol.n_full_cap, DENSE_SPECTRAL_CAP)?)
    } else {
        Value::Null
    };
    Ok(json!({
        "hamiltonian": hamiltonian_to_json(h),
        "interaction_length": h.interaction_length,
        "constructive": h.constructive,
        "couplings": h.couplings,
        "verification": verification,
    }))
}
