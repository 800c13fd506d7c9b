//! Permutation-symmetric N-qubit pure states in the Dicke basis.
//!
//! A state is stored as its N+1 Dicke amplitudes `d_0..d_N`, where `d_k`
//! multiplies the normalized Dicke state with `k` excitations. States are kept
//! unnormalized; SLOCC work is projective, so the norm carries no meaning until
//! [`SymmetricState::normalized`] is called. Dense 2^N vectors exist only for
//! verification.

use std::fmt;

use num_complex::Complex64 as C64;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::binom::sqrt_binomial;
use crate::error::{SymError, SymResult};
use crate::linalg::vector_norm;

/// Permutation-symmetric state given by its Dicke amplitudes.
#[derive(Clone, Debug, PartialEq)]
pub struct SymmetricState {
    n: usize,
    dicke: Vec<C64>,
}

impl SymmetricState {
    /// Builds a state from `N+1` Dicke amplitudes. Fails on an empty or
    /// all-zero vector.
    pub fn new(dicke: Vec<C64>) -> SymResult<Self> {
        if dicke.len() < 2 {
            return Err(SymError::InvalidParameter(format!(
                "a symmetric state needs N+1 >= 2 Dicke amplitudes, got {}",
                dicke.len()
            )));
        }
        if dicke.iter().any(|c| !c.re.is_finite() || !c.im.is_finite()) {
            return Err(SymError::InvalidParameter("non-finite Dicke amplitude".into()));
        }
        if dicke.iter().all(|c| c.is_zero()) {
            return Err(SymError::ZeroState);
        }
        Ok(Self { n: dicke.len() - 1, dicke })
    }

    pub fn n_parties(&self) -> usize {
        self.n
    }

    pub fn dicke(&self) -> &[C64] {
        &self.dicke
    }

    pub fn norm(&self) -> f64 {
        vector_norm(&self.dicke)
    }

    pub fn normalized(&self) -> Self {
        let nrm = self.norm();
        Self { n: self.n, dicke: self.dicke.iter().map(|c| c / nrm).collect() }
    }

    pub fn is_normalized(&self, tol_norm: f64) -> bool {
        (self.norm() - 1.0).abs() <= tol_norm
    }

    /// The normalized Dicke state `|D_k^(N)>`.
    pub fn dicke_basis(n: usize, k: usize) -> SymResult<Self> {
        if n == 0 || k > n {
            return Err(SymError::InvalidParameter(format!(
                "Dicke state needs 0 <= k <= N and N >= 1, got N={n}, k={k}"
            )));
        }
        let mut d = vec![C64::zero(); n + 1];
        d[k] = C64::new(1.0, 0.0);
        Self::new(d)
    }

    /// Dense 2^N amplitudes in lexicographic bitstring order (site 0 is the
    /// most significant bit).
    pub fn to_full_vector(&self, cap: usize) -> SymResult<FullStateVector> {
        if self.n > cap {
            return Err(SymError::ExceedsCap { n: self.n, cap });
        }
        let scale: Vec<C64> =
            (0..=self.n).map(|k| self.dicke[k] / sqrt_binomial(self.n, k)).collect();
        let amplitudes = (0..1usize << self.n)
            .map(|idx| scale[idx.count_ones() as usize])
            .collect();
        Ok(FullStateVector { n: self.n, amplitudes })
    }

    /// Fidelity `|<a|b>| / (|a| |b|)`.
    pub fn fidelity(&self, other: &Self) -> SymResult<f64> {
        let ov = overlap(self, other)?;
        Ok(ov.norm() / (self.norm() * other.norm()))
    }
}

impl fmt::Display for SymmetricState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "N={} [", self.n)?;
        for (k, c) in self.dicke.iter().enumerate() {
            if k > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{:.6}{:+.6}i", c.re, c.im)?;
        }
        write!(f, "]")
    }
}

/// `sum_k conj(a_k) b_k` in the Dicke basis.
pub fn overlap(a: &SymmetricState, b: &SymmetricState) -> SymResult<C64> {
    if a.n != b.n {
        return Err(SymError::PartyMismatch { left: a.n, right: b.n });
    }
    Ok(a.dicke.iter().zip(&b.dicke).map(|(x, y)| x.conj() * y).sum())
}

/// Named families with closed-form Dicke vectors.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum NamedState {
    /// `|0>^N`
    Separable0,
    Dicke(usize),
    Ghz,
    /// Dicke state with one excitation.
    W,
    /// `|1>^N + z^(N-1) sqrt(N) |W_N>`, defined for N >= 4.
    X(C64),
}

impl NamedState {
    pub fn label(&self) -> &'static str {
        match self {
            Self::Separable0 => "separable0",
            Self::Dicke(_) => "dicke",
            Self::Ghz => "ghz",
            Self::W => "w",
            Self::X(_) => "x",
        }
    }

    /// Normalized Dicke vector of the named state at `n` parties.
    pub fn build(&self, n: usize) -> SymResult<SymmetricState> {
        if n == 0 {
            return Err(SymError::InvalidParameter("N must be at least 1".into()));
        }
        let mut d = vec![C64::zero(); n + 1];
        match *self {
            Self::Separable0 => d[0] = C64::new(1.0, 0.0),
            Self::Dicke(k) => return SymmetricState::dicke_basis(n, k),
            Self::Ghz => {
                d[0] = C64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
                d[n] += C64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
            }
            Self::W => d[1] = C64::new(1.0, 0.0),
            Self::X(z) => {
                if n < 4 {
                    return Err(SymError::InvalidParameter(format!(
                        "the X family needs N >= 4, got {n}"
                    )));
                }
                if z.is_zero() || !z.re.is_finite() || !z.im.is_finite() {
                    return Err(SymError::InvalidParameter("the X family needs z != 0".into()));
                }
                d[n] = C64::new(1.0, 0.0);
                d[1] = z.powu((n - 1) as u32) * (n as f64).sqrt();
            }
        }
        Ok(SymmetricState::new(d)?.normalized())
    }
}

/// Dense amplitudes of an N-qubit state.
#[derive(Clone, Debug, PartialEq)]
pub struct FullStateVector {
    pub n: usize,
    pub amplitudes: Vec<C64>,
}

impl FullStateVector {
    /// True when every amplitude equals the first amplitude of its Hamming
    /// weight class, within `tol`.
    pub fn is_permutation_invariant(&self, tol: f64) -> bool {
        let mut reference: Vec<Option<C64>> = vec![None; self.n + 1];
        for (idx, a) in self.amplitudes.iter().enumerate() {
            let w = idx.count_ones() as usize;
            match reference[w] {
                None => reference[w] = Some(*a),
                Some(r) if (r - a).norm() > tol => return false,
                Some(_) => {}
            }
        }
        true
    }

    pub fn inner(&self, other: &Self) -> C64 {
        self.amplitudes.iter().zip(&other.amplitudes).map(|(a, b)| a.conj() * b).sum()
    }

    pub fn norm(&self) -> f64 {
        vector_norm(&self.amplitudes)
    }
}

/// Single-qubit vector `x|0> + y|1>`, used projectively.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ProductPoint {
    pub x: C64,
    pub y: C64,
}

impl ProductPoint {
    pub fn new(x: C64, y: C64) -> SymResult<Self> {
        if x.is_zero() && y.is_zero() {
            return Err(SymError::InvalidParameter("product point (0, 0) is not a state".into()));
        }
        Ok(Self { x, y })
    }

    /// The point `|1>`, i.e. `z = y/x = infinity`.
    pub fn infinity() -> Self {
        Self { x: C64::zero(), y: C64::new(1.0, 0.0) }
    }

    pub fn norm(&self) -> f64 {
        (self.x.norm_sqr() + self.y.norm_sqr()).sqrt()
    }

    /// Unit norm, first nonzero component real and positive.
    pub fn canonical(&self) -> Self {
        let nrm = self.norm();
        let lead = if self.x.norm() > 0.0 { self.x } else { self.y };
        let phase = lead / lead.norm();
        Self { x: self.x / (phase * nrm), y: self.y / (phase * nrm) }
    }

    /// Sine of the Fubini-Study angle between the two rays.
    pub fn chordal_distance(&self, other: &Self) -> f64 {
        (self.x * other.y - other.x * self.y).norm() / (self.norm() * other.norm())
    }

    /// `z = y/x`, `None` at infinity.
    pub fn ratio(&self) -> Option<C64> {
        if self.x.is_zero() {
            None
        } else {
            Some(self.y / self.x)
        }
    }
}

/// `d_a = sqrt(C(N,a)) * sum_k w_k x_k^(N-a) y_k^a`.
pub fn from_decomposition(
    points: &[ProductPoint],
    weights: &[C64],
    n: usize,
) -> SymResult<SymmetricState> {
    if points.is_empty() {
        return Err(SymError::InvalidParameter("decomposition needs at least one point".into()));
    }
    if points.len() != weights.len() {
        return Err(SymError::LengthMismatch { expected: points.len(), got: weights.len() });
    }
    let moments = moments_of_points(points, weights, n);
    let dicke = moments
        .into_iter()
        .enumerate()
        .map(|(a, m)| m * sqrt_binomial(n, a))
        .collect();
    SymmetricState::new(dicke)
}

/// `m_a = sum_k w_k x_k^(N-a) y_k^a`, computed without negative powers.
pub(crate) fn moments_of_points(points: &[ProductPoint], weights: &[C64], n: usize) -> Vec<C64> {
    let mut out = vec![C64::zero(); n + 1];
    for (p, w) in points.iter().zip(weights) {
        let mut xpow = vec![C64::new(1.0, 0.0); n + 1];
        let mut ypow = vec![C64::new(1.0, 0.0); n + 1];
        for i in 1..=n {
            xpow[i] = xpow[i - 1] * p.x;
            ypow[i] = ypow[i - 1] * p.y;
        }
        for (a, slot) in out.iter_mut().enumerate() {
            *slot += w * xpow[n - a] * ypow[a];
        }
    }
    out
}
