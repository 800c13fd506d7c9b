//! Majorana roots: the projective zeros of `p(w) = sum_a sqrt(C(N,a)) d_a w^a`.

use num_complex::Complex64 as C64;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::binom::sqrt_binomial;
use crate::linalg::poly_roots;
use crate::symstate::SymmetricState;

/// Coefficients below this fraction of the largest one count as zero when
/// deciding the degree of `p`.
const DEGREE_CUTOFF: f64 = 1e-13;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MajoranaRoots {
    pub n_parties: usize,
    /// Distinct finite roots with multiplicities.
    pub finite_roots: Vec<(C64, usize)>,
    pub infinity_multiplicity: usize,
}

impl MajoranaRoots {
    /// Multiplicities of all distinct points (infinity included), descending.
    pub fn degeneracy_configuration(&self) -> Vec<usize> {
        let mut parts: Vec<usize> = self.finite_roots.iter().map(|(_, m)| *m).collect();
        if self.infinity_multiplicity > 0 {
            parts.push(self.infinity_multiplicity);
        }
        parts.sort_unstable_by(|a, b| b.cmp(a));
        parts
    }

    /// Coefficients (ascending powers) of the monic `prod (w - r)^m` over the
    /// finite roots.
    pub fn monic_polynomial(&self) -> Vec<C64> {
        let mut poly = vec![C64::new(1.0, 0.0)];
        for &(root, mult) in &self.finite_roots {
            for _ in 0..mult {
                let mut next = vec![C64::zero(); poly.len() + 1];
                for (i, c) in poly.iter().enumerate() {
                    next[i + 1] += c;
                    next[i] -= c * root;
                }
                poly = next;
            }
        }
        poly
    }
}

/// Coefficients of `p(w)` in ascending powers of `w`.
pub fn majorana_polynomial(state: &SymmetricState) -> Vec<C64> {
    let n = state.n_parties();
    state.dicke().iter().enumerate().map(|(a, d)| d * sqrt_binomial(n, a)).collect()
}

/// Roots of the Majorana polynomial with multiplicities.
///
/// Numerically a root of multiplicity `m` splits into a small circle of radius
/// about `eps^(1/m)`; roots are grouped when the `m` nearest ones around a seed
/// fit within that radius, and each group is reported by its mean, which is
/// accurate even when the individual members are not.
pub fn majorana_roots(state: &SymmetricState) -> MajoranaRoots {
    let n = state.n_parties();
    let p = majorana_polynomial(state);
    let scale = p.iter().map(|c| c.norm()).fold(0.0, f64::max);
    let mut degree = n;
    while degree > 0 && p[degree].norm() <= DEGREE_CUTOFF * scale {
        degree -= 1;
    }
    let roots = poly_roots(&p[..=degree]);
    MajoranaRoots {
        n_parties: n,
        finite_roots: cluster_roots(&roots),
        infinity_multiplicity: n - degree,
    }
}

fn chordal(a: C64, b: C64) -> f64 {
    (a - b).norm() / ((1.0 + a.norm_sqr()).sqrt() * (1.0 + b.norm_sqr()).sqrt())
}

fn cluster_radius(m: usize) -> f64 {
    (64.0 * f64::EPSILON).powf(1.0 / m as f64)
}

fn cluster_roots(roots: &[C64]) -> Vec<(C64, usize)> {
    let mut free: Vec<C64> = roots.to_vec();
    let mut out = Vec::new();
    while let Some(&seed) = free.first() {
        let mut order: Vec<usize> = (0..free.len()).collect();
        order.sort_by(|&a, &b| chordal(seed, free[a]).total_cmp(&chordal(seed, free[b])));
        let mut chosen = 1;
        for m in (2..=free.len()).rev() {
            let members: Vec<C64> = order[..m].iter().map(|&i| free[i]).collect();
            let center = members.iter().sum::<C64>() / m as f64;
            let radius = members.iter().map(|&z| chordal(center, z)).fold(0.0, f64::max);
            if radius <= cluster_radius(m) {
                chosen = m;
                break;
            }
        }
        let mut picked: Vec<usize> = order[..chosen].to_vec();
        let center = picked.iter().map(|&i| free[i]).sum::<C64>() / chosen as f64;
        picked.sort_unstable_by(|a, b| b.cmp(a));
        for i in picked {
            free.swap_remove(i);
        }
        out.push((center, chosen));
    }
    out
}
