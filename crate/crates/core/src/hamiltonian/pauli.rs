//! Weighted Pauli strings on a ring of qubits.
//!
//! Bit convention matches [`crate::symstate::FullStateVector`]: site 0 is the
//! most significant bit of the basis index.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use nalgebra::DMatrix;
use num_complex::Complex64 as C64;
use num_traits::Zero;

/// Coefficients at or below this magnitude are dropped from a sum.
const PRUNE: f64 = 1e-13;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Pauli {
    X,
    Y,
    Z,
}

impl Pauli {
    pub fn symbol(self) -> char {
        match self {
            Pauli::X => 'X',
            Pauli::Y => 'Y',
            Pauli::Z => 'Z',
        }
    }

    pub fn from_symbol(c: char) -> Option<Self> {
        match c {
            'X' | 'x' => Some(Pauli::X),
            'Y' | 'y' => Some(Pauli::Y),
            'Z' | 'z' => Some(Pauli::Z),
            _ => None,
        }
    }

    /// `self * other = phase * result` (result `None` is the identity).
    fn mul(self, other: Pauli) -> (C64, Option<Pauli>) {
        use Pauli::*;
        let i = C64::new(0.0, 1.0);
        match (self, other) {
            (a, b) if a == b => (C64::new(1.0, 0.0), None),
            (X, Y) => (i, Some(Z)),
            (Y, X) => (-i, Some(Z)),
            (Y, Z) => (i, Some(X)),
            (Z, Y) => (-i, Some(X)),
            (Z, X) => (i, Some(Y)),
            (X, Z) => (-i, Some(Y)),
            _ => unreachable!(),
        }
    }
}

/// Tensor product of non-identity Paulis on distinct sites, sorted by site.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct PauliString {
    ops: Vec<(usize, Pauli)>,
}

impl PauliString {
    pub fn identity() -> Self {
        Self::default()
    }

    /// Builds from `(site, op)` pairs; panics on a repeated site.
    pub fn new(mut ops: Vec<(usize, Pauli)>) -> Self {
        ops.sort_by_key(|(s, _)| *s);
        assert!(ops.windows(2).all(|w| w[0].0 != w[1].0), "repeated site in Pauli string");
        Self { ops }
    }

    pub fn single(site: usize, p: Pauli) -> Self {
        Self { ops: vec![(site, p)] }
    }

    pub fn ops(&self) -> &[(usize, Pauli)] {
        &self.ops
    }

    pub fn sites(&self) -> Vec<usize> {
        self.ops.iter().map(|(s, _)| *s).collect()
    }

    pub fn labels(&self) -> String {
        self.ops.iter().map(|(_, p)| p.symbol()).collect()
    }

    pub fn weight(&self) -> usize {
        self.ops.len()
    }

    /// Relabels site `s` as `(s + offset) % n`.
    pub fn translated(&self, offset: usize, n: usize) -> Self {
        Self::new(self.ops.iter().map(|&(s, p)| ((s + offset) % n, p)).collect())
    }

    /// `self * other = phase * string`.
    pub fn mul(&self, other: &Self) -> (C64, Self) {
        let mut phase = C64::new(1.0, 0.0);
        let mut out = Vec::with_capacity(self.ops.len() + other.ops.len());
        let (mut i, mut j) = (0, 0);
        while i < self.ops.len() || j < other.ops.len() {
            match (self.ops.get(i), other.ops.get(j)) {
                (Some(&(sa, pa)), Some(&(sb, pb))) if sa == sb => {
                    let (ph, p) = pa.mul(pb);
                    phase *= ph;
                    if let Some(p) = p {
                        out.push((sa, p));
                    }
                    i += 1;
                    j += 1;
                }
                (Some(&(sa, pa)), Some(&(sb, _))) if sa < sb => {
                    out.push((sa, pa));
                    i += 1;
                }
                (Some(&(sa, pa)), None) => {
                    out.push((sa, pa));
                    i += 1;
                }
                (_, Some(&(sb, pb))) => {
                    out.push((sb, pb));
                    j += 1;
                }
                (None, None) => unreachable!(),
            }
        }
        (phase, Self { ops: out })
    }

    /// Masks over an `n`-qubit register: (x-mask, z-mask, number of Y's).
    fn masks(&self, n: usize) -> (usize, usize, u32) {
        let (mut x, mut z, mut ny) = (0usize, 0usize, 0u32);
        for &(s, p) in &self.ops {
            let bit = 1usize << (n - 1 - s);
            match p {
                Pauli::X => x |= bit,
                Pauli::Y => {
                    x |= bit;
                    z |= bit;
                    ny += 1;
                }
                Pauli::Z => z |= bit,
            }
        }
        (x, z, ny)
    }
}

fn minus_i_pow(k: u32) -> C64 {
    match k % 4 {
        0 => C64::new(1.0, 0.0),
        1 => C64::new(0.0, -1.0),
        2 => C64::new(-1.0, 0.0),
        _ => C64::new(0.0, 1.0),
    }
}

/// `P[i, i ^ x]` for the string with the given masks.
fn element(i: usize, z: usize, ny: u32) -> C64 {
    let sign = if (i & z).count_ones().is_multiple_of(2) { 1.0 } else { -1.0 };
    minus_i_pow(ny) * sign
}

impl Ord for PauliString {
    /// Site lists first, then labels lexicographically with X < Y < Z.
    fn cmp(&self, other: &Self) -> Ordering {
        self.sites()
            .cmp(&other.sites())
            .then_with(|| self.ops.iter().map(|o| o.1).cmp(other.ops.iter().map(|o| o.1)))
    }
}

impl PartialOrd for PauliString {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for PauliString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.ops.is_empty() {
            return write!(f, "I");
        }
        for (k, (s, p)) in self.ops.iter().enumerate() {
            if k > 0 {
                write!(f, " ")?;
            }
            write!(f, "{}{}", p.symbol(), s)?;
        }
        Ok(())
    }
}

/// Linear combination of Pauli strings on `n` qubits, kept in canonical order
/// with like terms merged.
#[derive(Clone, Debug, PartialEq, Default)]
pub struct PauliSum {
    n: usize,
    terms: BTreeMap<PauliString, C64>,
}

impl PauliSum {
    pub fn zero(n: usize) -> Self {
        Self { n, terms: BTreeMap::new() }
    }

    pub fn identity(n: usize, coeff: C64) -> Self {
        let mut s = Self::zero(n);
        s.add_term(PauliString::identity(), coeff);
        s
    }

    pub fn n_sites(&self) -> usize {
        self.n
    }

    pub fn add_term(&mut self, string: PauliString, coeff: C64) {
        assert!(string.ops.iter().all(|(s, _)| *s < self.n), "site out of range");
        let slot = self.terms.entry(string).or_insert_with(C64::zero);
        *slot += coeff;
    }

    pub fn add_real(&mut self, ops: &[(usize, Pauli)], coeff: f64) {
        self.add_term(PauliString::new(ops.to_vec()), C64::new(coeff, 0.0));
    }

    pub fn add_sum(&mut self, other: &PauliSum) {
        for (s, c) in &other.terms {
            self.add_term(s.clone(), *c);
        }
    }

    pub fn scaled(&self, factor: C64) -> Self {
        Self { n: self.n, terms: self.terms.iter().map(|(s, c)| (s.clone(), c * factor)).collect() }
    }

    pub fn mul(&self, other: &PauliSum) -> Self {
        let mut out = Self::zero(self.n.max(other.n));
        for (sa, ca) in &self.terms {
            for (sb, cb) in &other.terms {
                let (ph, s) = sa.mul(sb);
                out.add_term(s, ca * cb * ph);
            }
        }
        out.pruned()
    }

    /// Re-embeds onto `n` sites, shifting every site by `offset` modulo `n`.
    pub fn translated(&self, offset: usize, n: usize) -> Self {
        let mut out = Self::zero(n);
        for (s, c) in &self.terms {
            out.add_term(s.translated(offset, n), *c);
        }
        out
    }

    /// Drops merged terms whose coefficient vanished.
    pub fn pruned(mut self) -> Self {
        self.terms.retain(|_, c| c.norm() > PRUNE);
        self
    }

    pub fn terms(&self) -> impl Iterator<Item = (&PauliString, &C64)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, string: &PauliString) -> C64 {
        self.terms.get(string).copied().unwrap_or_else(C64::zero)
    }

    /// Sum of coefficient magnitudes; bounds the operator norm.
    pub fn terms_norm(&self) -> f64 {
        self.terms.values().map(|c| c.norm()).sum()
    }

    pub fn is_hermitian(&self, tol: f64) -> bool {
        self.terms.values().all(|c| c.im.abs() <= tol)
    }

    /// `H |psi>` on a dense `2^n` vector.
    pub fn apply(&self, psi: &[C64]) -> Vec<C64> {
        assert_eq!(psi.len(), 1usize << self.n, "vector length does not match 2^n");
        let mut out = vec![C64::zero(); psi.len()];
        for (s, c) in &self.terms {
            let (x, z, ny) = s.masks(self.n);
            for (i, slot) in out.iter_mut().enumerate() {
                *slot += c * element(i, z, ny) * psi[i ^ x];
            }
        }
        out
    }

    pub fn to_dense(&self) -> DMatrix<C64> {
        let dim = 1usize << self.n;
        let mut m = DMatrix::<C64>::zeros(dim, dim);
        for (s, c) in &self.terms {
            let (x, z, ny) = s.masks(self.n);
            for i in 0..dim {
                m[(i, i ^ x)] += c * element(i, z, ny);
            }
        }
        m
    }

    /// Pauli expansion `sum_P Tr(P O) / 2^n P` of a dense operator.
    pub fn from_dense(op: &DMatrix<C64>) -> Self {
        let dim = op.nrows();
        assert!(dim.is_power_of_two() && op.ncols() == dim, "operator must be 2^n x 2^n");
        let n = dim.trailing_zeros() as usize;
        let mut out = Self::zero(n);
        for x in 0..dim {
            for z in 0..dim {
                let mut ops = Vec::new();
                let mut ny = 0u32;
                for s in 0..n {
                    let bit = 1usize << (n - 1 - s);
                    match (x & bit != 0, z & bit != 0) {
                        (true, true) => {
                            ops.push((s, Pauli::Y));
                            ny += 1;
                        }
                        (true, false) => ops.push((s, Pauli::X)),
                        (false, true) => ops.push((s, Pauli::Z)),
                        (false, false) => {}
                    }
                }
                let tr: C64 = (0..dim).map(|i| element(i, z, ny) * op[(i ^ x, i)]).sum();
                let coeff = tr / dim as f64;
                if coeff.norm() > PRUNE {
                    out.add_term(PauliString { ops }, coeff);
                }
            }
        }
        out
    }
}

/// `sigma_i . sigma_j` on `n` sites.
pub fn heisenberg(n: usize, i: usize, j: usize, coeff: f64) -> PauliSum {
    let mut s = PauliSum::zero(n);
    for p in [Pauli::X, Pauli::Y, Pauli::Z] {
        s.add_real(&[(i, p), (j, p)], coeff);
    }
    s
}
