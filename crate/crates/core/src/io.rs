//! JSON exchange formats. Complex numbers are written as `[re, im]`.

use num_complex::Complex64 as C64;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::decomposer::DiagonalDecomposition;
use crate::error::{SymError, SymResult};
use crate::hamiltonian::{ParentHamiltonian, PauliSum};
use crate::slocc::Ilo;
use crate::symstate::{NamedState, SymmetricState};

/// `{"n": N, "dicke": [[re, im], ...]}` or `{"name": "ghz", "n": N, "k": k, "z": [re, im]}`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum StateSpec {
    Dicke {
        #[serde(default, skip_serializing_if = "Option::is_none")]
        n: Option<usize>,
        dicke: Vec<C64>,
    },
    Named {
        name: String,
        n: usize,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        k: Option<usize>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        z: Option<C64>,
    },
}

/// Parses a family name as used on the command line and in JSON.
pub fn named_state(name: &str, k: Option<usize>, z: Option<C64>) -> SymResult<NamedState> {
    match name.to_ascii_lowercase().as_str() {
        "ghz" => Ok(NamedState::Ghz),
        "w" => Ok(NamedState::W),
        "separable" | "separable0" | "product" => Ok(NamedState::Separable0),
        "dicke" => k
            .map(NamedState::Dicke)
            .ok_or_else(|| SymError::InvalidParameter("the dicke family needs k".into())),
        "x" => z
            .map(NamedState::X)
            .ok_or_else(|| SymError::InvalidParameter("the x family needs z".into())),
        other => Err(SymError::InvalidParameter(format!("unknown state family '{other}'"))),
    }
}

impl StateSpec {
    pub fn build(&self) -> SymResult<SymmetricState> {
        match self {
            StateSpec::Dicke { n, dicke } => {
                if let Some(n) = n {
                    if dicke.len() != n + 1 {
                        return Err(SymError::LengthMismatch { expected: n + 1, got: dicke.len() });
                    }
                }
                SymmetricState::new(dicke.clone())
            }
            StateSpec::Named { name, n, k, z } => named_state(name, *k, *z)?.build(*n),
        }
    }
}

pub fn parse_state(text: &str) -> SymResult<SymmetricState> {
    let spec: StateSpec = serde_json::from_str(text)
        .map_err(|e| SymError::InvalidParameter(format!("bad state JSON: {e}")))?;
    spec.build()
}

pub fn state_to_json(state: &SymmetricState) -> Value {
    json!({ "n": state.n_parties(), "dicke": state.dicke() })
}

pub fn decomposition_to_json(dec: &DiagonalDecomposition) -> Value {
    let points: Vec<[C64; 2]> = dec.points.iter().map(|p| [p.x, p.y]).collect();
    json!({
        "n": dec.n_parties,
        "d": dec.bond_dim(),
        "points": points,
        "weights": dec.weights,
        "residual": dec.residual,
        "infinity_point": dec.infinity_point(),
    })
}

/// `[[a_re, a_im], [b_re, b_im], [c_re, c_im], [d_re, d_im]]` for `[[a, b], [c, d]]`.
pub fn ilo_to_json(g: &Ilo) -> Value {
    json!([g.a, g.b, g.c, g.d])
}

pub fn parse_ilo(text: &str) -> SymResult<Ilo> {
    let v: [C64; 4] = serde_json::from_str(text)
        .map_err(|e| SymError::InvalidParameter(format!("bad ILO JSON: {e}")))?;
    Ilo::new(v[0], v[1], v[2], v[3])
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TermJson {
    pub sites: Vec<usize>,
    pub paulis: String,
    pub coeff: C64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct HamiltonianJson {
    pub n: usize,
    pub boundary: String,
    pub terms: Vec<TermJson>,
}

/// Expanded ring Hamiltonian with 0-based sites; the identity term has empty
/// `sites` and `paulis`.
pub fn hamiltonian_to_json(h: &ParentHamiltonian) -> HamiltonianJson {
    pauli_sum_to_json(&h.expanded())
}

pub fn pauli_sum_to_json(sum: &PauliSum) -> HamiltonianJson {
    HamiltonianJson {
        n: sum.n_sites(),
        boundary: "periodic".into(),
        terms: sum
            .terms()
            .map(|(s, c)| TermJson { sites: s.sites(), paulis: s.labels(), coeff: *c })
            .collect(),
    }
}

pub fn pauli_sum_from_json(h: &HamiltonianJson) -> SymResult<PauliSum> {
    use crate::hamiltonian::{Pauli, PauliString};
    let mut sum = PauliSum::zero(h.n);
    for t in &h.terms {
        let ops: Vec<char> = t.paulis.chars().collect();
        if ops.len() != t.sites.len() {
            return Err(SymError::LengthMismatch { expected: t.sites.len(), got: ops.len() });
        }
        let mut pairs = Vec::with_capacity(ops.len());
        for (&site, &c) in t.sites.iter().zip(&ops) {
            let p = Pauli::from_symbol(c)
                .ok_or_else(|| SymError::InvalidParameter(format!("unknown Pauli '{c}'")))?;
            if site >= h.n {
                return Err(SymError::InvalidParameter(format!("site {site} outside 0..{}", h.n)));
            }
            pairs.push((site, p));
        }
        let mut sorted = pairs.clone();
        sorted.sort_by_key(|(s, _)| *s);
        if sorted.windows(2).any(|w| w[0].0 == w[1].0) {
            return Err(SymError::InvalidParameter("repeated site in a term".into()));
        }
        sum.add_term(PauliString::new(pairs), t.coeff);
    }
    Ok(sum)
}
