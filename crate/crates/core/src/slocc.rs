//! Invertible local operations applied identically on every qubit, and their
//! action on the symmetric subspace.

use nalgebra::DMatrix;
use num_complex::Complex64 as C64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use serde::{Deserialize, Serialize};

use crate::binom::{binomial, ln_binomial};
use crate::error::{SymError, SymResult};
use crate::symstate::{ProductPoint, SymmetricState};

/// Relative determinant below which a 2x2 matrix counts as singular.
const SINGULAR: f64 = 1e-14;

/// `A = [[a, b], [c, d]]`, acting as `A|0> = a|0> + c|1>`, `A|1> = b|0> + d|1>`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Ilo {
    pub a: C64,
    pub b: C64,
    pub c: C64,
    pub d: C64,
}

impl Ilo {
    pub fn new(a: C64, b: C64, c: C64, d: C64) -> SymResult<Self> {
        let g = Self { a, b, c, d };
        if [a, b, c, d].iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(SymError::InvalidParameter("non-finite ILO entry".into()));
        }
        if g.det().norm() <= SINGULAR * g.frobenius_sqr() {
            return Err(SymError::InvalidParameter("ILO is singular".into()));
        }
        Ok(g)
    }

    pub fn identity() -> Self {
        let (o, z) = (C64::new(1.0, 0.0), C64::new(0.0, 0.0));
        Self { a: o, b: z, c: z, d: o }
    }

    pub fn det(&self) -> C64 {
        self.a * self.d - self.b * self.c
    }

    fn frobenius_sqr(&self) -> f64 {
        self.a.norm_sqr() + self.b.norm_sqr() + self.c.norm_sqr() + self.d.norm_sqr()
    }

    pub fn inverse(&self) -> Self {
        let det = self.det();
        Self { a: self.d / det, b: -self.b / det, c: -self.c / det, d: self.a / det }
    }

    /// `self * other`: apply `other` first.
    pub fn compose(&self, other: &Self) -> Self {
        Self {
            a: self.a * other.a + self.b * other.c,
            b: self.a * other.b + self.b * other.d,
            c: self.c * other.a + self.d * other.c,
            d: self.c * other.b + self.d * other.d,
        }
    }

    /// `s_max / s_min`.
    pub fn condition_number(&self) -> f64 {
        let f = self.frobenius_sqr();
        let det = self.det().norm();
        let disc = (f * f - 4.0 * det * det).max(0.0).sqrt();
        let smax2 = 0.5 * (f + disc);
        let smin2 = det * det / smax2;
        (smax2 / smin2).sqrt()
    }

    pub fn apply_point(&self, p: &ProductPoint) -> ProductPoint {
        ProductPoint { x: self.a * p.x + self.b * p.y, y: self.c * p.x + self.d * p.y }
    }

    pub fn to_dense(&self) -> DMatrix<C64> {
        DMatrix::from_row_slice(2, 2, &[self.a, self.b, self.c, self.d])
    }
}

/// Matrix of `A^(x)N` restricted to the symmetric subspace, Dicke basis.
#[derive(Clone, Debug, PartialEq)]
pub struct SymmetricOperatorRep {
    pub n: usize,
    pub matrix: DMatrix<C64>,
}

/// `M[l][k] = sqrt(C(N,k) / C(N,l)) [X^(N-l) Y^l] (aX + cY)^(N-k) (bX + dY)^k`.
pub fn symmetric_power_rep(g: &Ilo, n: usize) -> SymmetricOperatorRep {
    let mut m = DMatrix::<C64>::zeros(n + 1, n + 1);
    for k in 0..=n {
        let left = expand(g.a, g.c, n - k);
        let right = expand(g.b, g.d, k);
        for (p, lp) in left.iter().enumerate() {
            for (q, rq) in right.iter().enumerate() {
                m[(p + q, k)] += lp * rq;
            }
        }
        for l in 0..=n {
            m[(l, k)] *= (0.5 * (ln_binomial(n, k) - ln_binomial(n, l))).exp();
        }
    }
    SymmetricOperatorRep { n, matrix: m }
}

/// Coefficients of `(u X + v Y)^k` by powers of `Y`.
fn expand(u: C64, v: C64, k: usize) -> Vec<C64> {
    (0..=k).map(|i| u.powu((k - i) as u32) * v.powu(i as u32) * binomial(k, i)).collect()
}

/// `A^(x)N |psi>`, unnormalized.
pub fn apply_ilo(state: &SymmetricState, g: &Ilo) -> SymResult<SymmetricState> {
    let rep = symmetric_power_rep(g, state.n_parties());
    let d = &rep.matrix * nalgebra::DVector::from_column_slice(state.dicke());
    SymmetricState::new(d.iter().copied().collect())
}

/// Random ILO with condition number at most `cap`: `U diag(1, s) V^dagger`
/// with Haar-random `U`, `V` and `s` uniform in `[1/cap, 1]`.
pub fn random_ilo(seed: u64, cap: f64) -> SymResult<Ilo> {
    random_ilo_with(&mut ChaCha8Rng::seed_from_u64(seed), cap)
}

pub fn random_ilo_with<R: Rng + ?Sized>(rng: &mut R, cap: f64) -> SymResult<Ilo> {
    if !(cap >= 1.0 && cap.is_finite()) {
        return Err(SymError::InvalidParameter(format!("condition cap must be >= 1, got {cap}")));
    }
    let u = haar_unitary(rng);
    let v = haar_unitary(rng);
    let s = 1.0 / cap + (1.0 - 1.0 / cap) * rng.random::<f64>();
    // U diag(1, s) V^dagger
    let e = |i: usize, j: usize| u[i][0] * v[j][0].conj() + u[i][1] * s * v[j][1].conj();
    Ilo::new(e(0, 0), e(0, 1), e(1, 0), e(1, 1))
}

fn haar_unitary<R: Rng + ?Sized>(rng: &mut R) -> [[C64; 2]; 2] {
    let mut g = [0.0f64; 4];
    for x in g.iter_mut() {
        *x = StandardNormal.sample(rng);
    }
    let nrm = g.iter().map(|x| x * x).sum::<f64>().sqrt();
    let alpha = C64::new(g[0], g[1]) / nrm;
    let beta = C64::new(g[2], g[3]) / nrm;
    let phase = C64::from_polar(1.0, rng.random::<f64>() * std::f64::consts::TAU);
    [[alpha, -beta.conj() * phase], [beta, alpha.conj() * phase]]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symstate::NamedState;
    use proptest::prelude::{any, prop_assert, proptest, ProptestConfig};

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    fn close(a: &SymmetricState, b: &SymmetricState, tol: f64) -> bool {
        a.dicke().iter().zip(b.dicke()).all(|(x, y)| (x - y).norm() <= tol)
    }

    /// Dense `A^(x)N` acting on the full vector.
    fn dense_apply(g: &Ilo, st: &SymmetricState) -> Vec<C64> {
        let n = st.n_parties();
        let mut op = DMatrix::<C64>::identity(1, 1);
        for _ in 0..n {
            op = op.kronecker(&g.to_dense());
        }
        let v = nalgebra::DVector::from_vec(st.to_full_vector(16).unwrap().amplitudes);
        (op * v).iter().copied().collect()
    }

    #[test]
    fn identity_is_identity() {
        let rep = symmetric_power_rep(&Ilo::identity(), 5);
        assert!((rep.matrix - DMatrix::<C64>::identity(6, 6)).norm() < 1e-15);
    }

    #[test]
    fn diagonal_ilo_scales_dicke_amplitudes() {
        // diag(1, t): d_k -> t^k d_k
        let t = c(0.5, 0.3);
        let g = Ilo::new(c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0), t).unwrap();
        let st = SymmetricState::new(vec![c(1.0, 0.0), c(2.0, 0.0), c(0.0, 1.0), c(-1.0, 0.0)]).unwrap();
        let out = apply_ilo(&st, &g).unwrap();
        for (k, (a, b)) in out.dicke().iter().zip(st.dicke()).enumerate() {
            assert!((a - b * t.powu(k as u32)).norm() < 1e-14);
        }
    }

    #[test]
    fn bit_flip_reverses_amplitudes() {
        let x = Ilo::new(c(0.0, 0.0), c(1.0, 0.0), c(1.0, 0.0), c(0.0, 0.0)).unwrap();
        let w = NamedState::W.build(4).unwrap();
        let out = apply_ilo(&w, &x).unwrap();
        assert!(close(&out, &NamedState::Dicke(3).build(4).unwrap(), 1e-14));
    }

    #[test]
    fn singular_rejected() {
        assert!(Ilo::new(c(1.0, 0.0), c(2.0, 0.0), c(2.0, 0.0), c(4.0, 0.0)).is_err());
        assert!(random_ilo(0, 0.5).is_err());
    }

    #[test]
    fn random_ilo_respects_cap_and_seed() {
        for seed in 0..50 {
            let g = random_ilo(seed, 10.0).unwrap();
            assert!(g.condition_number() <= 10.0 + 1e-9);
            assert_eq!(g, random_ilo(seed, 10.0).unwrap());
        }
        let u = random_ilo(3, 1.0).unwrap();
        assert!((u.condition_number() - 1.0).abs() < 1e-9);
        assert_ne!(random_ilo(1, 10.0).unwrap(), random_ilo(2, 10.0).unwrap());
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]

        #[test]
        fn matches_dense_tensor_power(seed in any::<u64>(), n in 1usize..=8) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let g = random_ilo_with(&mut rng, 20.0).unwrap();
            let d: Vec<C64> = (0..=n).map(|_| c(rng.random::<f64>() - 0.5, rng.random::<f64>() - 0.5)).collect();
            let st = SymmetricState::new(d).unwrap();
            let want = dense_apply(&g, &st);
            let got = apply_ilo(&st, &g).unwrap().to_full_vector(16).unwrap().amplitudes;
            for (a, b) in want.iter().zip(&got) {
                prop_assert!((a - b).norm() < 1e-12);
            }
        }

        #[test]
        fn composition_and_inverse(seed in any::<u64>(), n in 1usize..=12) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let g = random_ilo_with(&mut rng, 5.0).unwrap();
            let h = random_ilo_with(&mut rng, 5.0).unwrap();
            let st = NamedState::Ghz.build(n).unwrap();
            let two_step = apply_ilo(&apply_ilo(&st, &h).unwrap(), &g).unwrap();
            let one_step = apply_ilo(&st, &g.compose(&h)).unwrap();
            prop_assert!(close(&two_step, &one_step, 1e-10));
            let back = apply_ilo(&apply_ilo(&st, &g).unwrap(), &g.inverse()).unwrap();
            prop_assert!(close(&back, &st, 1e-9));
        }

        #[test]
        fn commutes_with_product_points(seed in any::<u64>(), n in 1usize..=10) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let g = random_ilo_with(&mut rng, 5.0).unwrap();
            let p = ProductPoint::new(c(rng.random(), rng.random()), c(rng.random(), -0.3)).unwrap();
            let st = crate::symstate::from_decomposition(&[p], &[c(1.0, 0.0)], n).unwrap();
            let moved = apply_ilo(&st, &g).unwrap();
            let want = crate::symstate::from_decomposition(&[g.apply_point(&p)], &[c(1.0, 0.0)], n).unwrap();
            prop_assert!(close(&moved, &want, 1e-10));
        }
    }
}
