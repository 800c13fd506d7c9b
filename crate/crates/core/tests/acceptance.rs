//! Acceptance criteria 1 to 11. Runs as a plain binary (`harness = false`)
//! so that every criterion prints one PASS/FAIL line.

mod common;

use std::collections::BTreeSet;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::Command;
use std::time::Instant;

use nalgebra::DMatrix;
use num_complex::Complex64 as C64;

use common::{dense_reduced, dicke_vector, full_vector, kron_sites, numerical_rank, pauli_matrix};
use symclass::decomposer::decompose;
use symclass::hamiltonian::{
    assemble_parent, paper_hamiltonian, rank_profile, reduced_density, verify_ground, Couplings,
};
use symclass::suites::{bounds_state, x_family_z, Suite};
use symclass::symstate::from_decomposition;
use symclass::{optimal_bond_dimension, NamedState, ProductPoint, SymmetricState, ToleranceConfig};

/// Relative singular-value cutoff for every rank decision.
const TOL_RANK: f64 = 1e-10;
/// Resynthesis residual of the GHZ_2 decomposition.
const TOL_GHZ2: f64 = 1e-10;
/// `|H psi| <= TOL_PARENT |H|_terms` and `E_min >= -TOL_PARENT`.
const TOL_PARENT: f64 = 1e-10;
/// Largest N whose parent Hamiltonian is diagonalized densely.
const PARENT_SPECTRAL_CAP: usize = 8;
/// Ground-projector weight of the target state: at least `1 - TOL_OVERLAP`.
const TOL_OVERLAP: f64 = 1e-10;
/// Entrywise agreement of reduced density matrices with the dense trace.
const TOL_RDM: f64 = 1e-12;
/// Eigenvalues within this window of the minimum count as ground states.
const GROUND_WINDOW: f64 = 1e-8;
const SLOCC_TRIALS: usize = 1300;
const NESTING_PER_N: usize = 50;
const BOUNDS_PER_N: usize = 500;
const ORACLE_STATES: usize = 100;
const SEED: u64 = 0;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn tol() -> ToleranceConfig {
    ToleranceConfig { tol_rank: TOL_RANK, ..Default::default() }
}

fn c(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn family_golden_values() -> Outcome {
    let t = tol();
    let d = |s: NamedState, n: usize| optimal_bond_dimension(&s.build(n).unwrap(), &t).map_err(|e| e.to_string());
    for n in 3..=12 {
        let got = d(NamedState::Ghz, n)?;
        ensure(got == 2, || format!("GHZ_{n}: D = {got}, expected 2"))?;
    }
    for n in 3..=10 {
        let got = d(NamedState::W, n)?;
        ensure(got == n, || format!("W_{n}: D = {got}, expected {n}"))?;
    }
    for n in 4..=10 {
        let got = d(NamedState::X(x_family_z()), n)?;
        ensure(got == n - 1, || format!("X_{n}: D = {got}, expected {}", n - 1))?;
    }
    // |0>^N and a generic product state
    let p = ProductPoint::new(c(0.3, -1.1), c(0.7, 0.2)).unwrap();
    for n in 1..=10 {
        let got = d(NamedState::Separable0, n)?;
        ensure(got == 1, || format!("|0>^{n}: D = {got}"))?;
        let st = from_decomposition(&[p], &[c(1.0, 0.0)], n).unwrap();
        let got = optimal_bond_dimension(&st, &t).map_err(|e| e.to_string())?;
        ensure(got == 1, || format!("product state at N={n}: D = {got}"))?;
    }
    Ok("GHZ 3..12 -> 2, W 3..10 -> N, X 4..10 -> N-1, product 1..10 -> 1".into())
}

fn ghz2_closed_form() -> Outcome {
    let ghz = NamedState::Ghz.build(2).unwrap();
    // closed form: (|0> + |1>)^2 / (2 sqrt 2) + (|0> - |1>)^2 / (2 sqrt 2)
    let w = 1.0 / (2.0 * 2f64.sqrt());
    let closed_points = [
        ProductPoint::new(c(1.0, 0.0), c(1.0, 0.0)).unwrap(),
        ProductPoint::new(c(1.0, 0.0), c(-1.0, 0.0)).unwrap(),
    ];
    let closed = from_decomposition(&closed_points, &[c(w, 0.0), c(w, 0.0)], 2).unwrap();
    let err = dist(closed.dicke(), ghz.dicke());
    ensure(err < 1e-15, || format!("closed form differs from GHZ_2 by {err:e}"))?;

    let dec = decompose(&ghz, &tol()).map_err(|e| e.to_string())?;
    ensure(dec.bond_dim() == 2, || format!("D = {}", dec.bond_dim()))?;
    ensure(dec.residual <= TOL_GHZ2, || format!("residual {:e}", dec.residual))?;
    // Each term c_k |x_k>^(x)2 is gauge invariant; match it to a closed-form term.
    for (pp, cp) in closed_points.iter().zip([w, w]) {
        let want = from_decomposition(&[*pp], &[c(cp, 0.0)], 2).unwrap();
        let found = dec.points.iter().zip(&dec.weights).any(|(q, ck)| {
            let term = from_decomposition(&[*q], &[*ck], 2).unwrap();
            dist(term.dicke(), want.dicke()) <= TOL_GHZ2
        });
        ensure(found, || format!("no solver term matches the closed-form term at ({}, {})", pp.x, pp.y))?;
    }
    Ok(format!("points (1, +-1)/sqrt2, weights 1/(2 sqrt2) in the unnormalized gauge, residual {:.1e}", dec.residual))
}

fn run_suite(suite: Suite, count: usize) -> Outcome {
    let r = suite.run(SEED, count, &tol());
    ensure(r.all_passed(), || {
        let first: Vec<String> = r.failures.iter().take(3).map(|f| format!("case {}: {}", f.case, f.detail)).collect();
        format!("{}/{} passed; {}", r.passed, r.cases, first.join("; "))
    })?;
    Ok(format!("{}/{} cases, seed {SEED}", r.passed, r.cases))
}

fn interaction_lengths() -> Outcome {
    let t = tol();
    let n_star = |s: NamedState, n: usize| rank_profile(&s.build(n).unwrap(), &t).unwrap().n_star;
    for n in 3..=12 {
        ensure(n_star(NamedState::Ghz, n) == Some(2), || format!("n*(GHZ_{n}) = {:?}", n_star(NamedState::Ghz, n)))?;
        ensure(n_star(NamedState::W, n) == Some(2), || format!("n*(W_{n}) = {:?}", n_star(NamedState::W, n)))?;
    }
    for n in 4..=12 {
        let s = NamedState::X(x_family_z());
        ensure(n_star(s, n) == Some(3), || format!("n*(X_{n}) = {:?}", n_star(s, n)))?;
    }
    let bounds = run_suite(Suite::Bounds, BOUNDS_PER_N)?;
    Ok(format!("GHZ/W -> 2 (N=3..12), X -> 3 (N=4..12); n* <= N/2+1 over {bounds}"))
}

/// Ranks of the dense `2^M x 2^(N-M)` reshaping, independent of the library.
fn rank_symmetry_and_bound() -> Outcome {
    let t = tol();
    let mut corpus: Vec<SymmetricState> = Vec::new();
    for n in 3..=8 {
        corpus.push(NamedState::Ghz.build(n).unwrap());
        corpus.push(NamedState::W.build(n).unwrap());
        for k in 0..=n {
            corpus.push(NamedState::Dicke(k).build(n).unwrap());
        }
        if n >= 4 {
            corpus.push(NamedState::X(x_family_z()).build(n).unwrap());
        }
    }
    for n in 4..=8 {
        let offset = (n - 4) * BOUNDS_PER_N;
        corpus.extend((0..24).map(|i| bounds_state(SEED, offset + i, n).unwrap()));
    }
    for st in &corpus {
        let n = st.n_parties();
        let d = optimal_bond_dimension(st, &t).map_err(|e| e.to_string())?;
        let profile = rank_profile(st, &t).map_err(|e| e.to_string())?;
        let psi = full_vector(st);
        for m in 1..n {
            let dense = numerical_rank(&DMatrix::from_fn(1 << m, 1 << (n - m), |i, j| psi[(i << (n - m)) | j]), TOL_RANK);
            let r = profile.ranks[m - 1];
            ensure(dense == r, || format!("N={n} M={m}: rank {r}, dense reshaping gives {dense}"))?;
            ensure(r == profile.ranks[n - m - 1], || format!("N={n}: rank rho^({m}) != rank rho^({})", n - m))?;
            ensure(r <= d.min(m + 1), || format!("N={n} M={m}: rank {r} > min(D = {d}, {})", m + 1))?;
        }
    }
    // the library ranks over the full random corpus, N = 4..12
    let bounds = run_suite(Suite::Bounds, BOUNDS_PER_N)?;
    Ok(format!("{} states against dense reshaping (N <= 8); {bounds}", corpus.len()))
}

fn parent_hamiltonians() -> Outcome {
    let t = tol();
    let mut corpus: Vec<(String, SymmetricState)> = Vec::new();
    for n in 3..=10 {
        corpus.push((format!("GHZ_{n}"), NamedState::Ghz.build(n).unwrap()));
        corpus.push((format!("W_{n}"), NamedState::W.build(n).unwrap()));
        for k in 2..n - 1 {
            corpus.push((format!("D_{n}^{k}"), NamedState::Dicke(k).build(n).unwrap()));
        }
        if n >= 4 {
            corpus.push((format!("X_{n}"), NamedState::X(x_family_z()).build(n).unwrap()));
            let offset = (n - 4) * BOUNDS_PER_N;
            for i in 0..6 {
                corpus.push((format!("random N={n} #{i}"), bounds_state(SEED, offset + i, n).unwrap()));
            }
        }
    }
    let mut dense_checked = 0;
    for (label, st) in &corpus {
        let n = st.n_parties();
        let n_star = rank_profile(st, &t).unwrap().n_star.ok_or_else(|| format!("{label}: no n*"))?;
        let h = assemble_parent(st, n_star, 1.0, &t).map_err(|e| format!("{label}: {e}"))?;
        let rep = verify_ground(&h, st, 10, PARENT_SPECTRAL_CAP).map_err(|e| format!("{label}: {e}"))?;
        ensure(rep.residual <= TOL_PARENT * rep.terms_norm, || {
            format!("{label}: |H psi| = {:e}, |H|_terms = {}", rep.residual, rep.terms_norm)
        })?;
        if n <= PARENT_SPECTRAL_CAP {
            let e0 = rep.ground_energy.unwrap();
            ensure(e0 >= -TOL_PARENT, || format!("{label}: minimum eigenvalue {e0:e}"))?;
            dense_checked += 1;
            if label.starts_with("GHZ") {
                let deg = rep.ground_degeneracy.unwrap();
                ensure(deg >= 2, || format!("{label}: ground degeneracy {deg}"))?;
            }
        }
    }
    Ok(format!("{} states at n*, {dense_checked} diagonalized densely", corpus.len()))
}

/// Closed-form Hamiltonians rebuilt from Kronecker products.
fn closed_form_hamiltonians() -> Outcome {
    let n = 6;
    let (x, y, z) = (pauli_matrix('X'), pauli_matrix('Y'), pauli_matrix('Z'));
    let id = DMatrix::<C64>::identity(1 << n, 1 << n);
    let bond = |a: &DMatrix<C64>, i: usize, j: usize| kron_sites(n, &[(i, a), (j, a)]);
    let dot = |i: usize| bond(&x, i, (i + 1) % n) + bond(&y, i, (i + 1) % n) + bond(&z, i, (i + 1) % n);
    let zs = |sites: &[usize]| {
        let ops: Vec<(usize, &DMatrix<C64>)> = sites.iter().map(|&s| (s % n, &z)).collect();
        kron_sites(n, &ops)
    };
    let r = |v: f64| c(v, 0.0);

    let (j, jz) = (1.0, 3.0);
    let h_ghz = (0..n).fold(DMatrix::zeros(1 << n, 1 << n), |acc, i| acc + dot(i) * r(j) - zs(&[i, i + 1]) * r(jz));
    let (j, gamma) = (1.0, 1.0);
    let h_w = (0..n).fold(DMatrix::zeros(1 << n, 1 << n), |acc, i| {
        acc + (zs(&[i]) * r(-2.0) + zs(&[i, i + 1]) - dot(i) * r(gamma)) * r(j)
    });
    let (j, jz) = (1.0, 1.0);
    let h_x = (0..n).fold(DMatrix::zeros(1 << n, 1 << n), |acc, i| {
        let three = &id * r(3.0) + zs(&[i, i + 1, i + 2]) * r(3.0)
            - zs(&[i, i + 1])
            - zs(&[i, i + 2])
            - zs(&[i + 1, i + 2])
            - zs(&[i])
            - zs(&[i + 1])
            - zs(&[i + 2]);
        acc + three * r(jz / 3.0) + (&id - dot(i)) * r(j / 4.0)
    });

    let cases = [
        ("GHZ", NamedState::Ghz, Couplings { j: 1.0, jz: 3.0, gamma: 1.0 }, h_ghz),
        ("W", NamedState::W, Couplings { j: 1.0, jz: 3.0, gamma: 1.0 }, h_w),
        ("X", NamedState::X(x_family_z()), Couplings { j: 1.0, jz: 1.0, gamma: 1.0 }, h_x),
    ];
    let mut notes = Vec::new();
    for (label, family, couplings, oracle) in cases {
        let h = paper_hamiltonian(&family, n, couplings).map_err(|e| e.to_string())?;
        let built = h.expanded().to_dense();
        let diff = (&built - &oracle).norm();
        ensure(diff < 1e-12, || format!("H_{label}: Pauli sum differs from the Kronecker oracle by {diff:e}"))?;

        let eig = oracle.clone().symmetric_eigen();
        let e0 = eig.eigenvalues.iter().copied().fold(f64::INFINITY, f64::min);
        let psi = nalgebra::DVector::from_vec(full_vector(&family.build(n).unwrap()));
        let overlap: f64 = (0..eig.eigenvalues.len())
            .filter(|&k| eig.eigenvalues[k] - e0 <= GROUND_WINDOW)
            .map(|k| eig.eigenvectors.column(k).dotc(&psi).norm_sqr())
            .sum();
        ensure(overlap >= 1.0 - TOL_OVERLAP, || format!("H_{label}: ground overlap {overlap}"))?;
        let rep = verify_ground(&h, &family.build(n).unwrap(), 10, 10).map_err(|e| e.to_string())?;
        ensure(rep.ground_overlap.unwrap() >= 1.0 - TOL_OVERLAP, || format!("H_{label}: library overlap {rep:?}"))?;
        notes.push(format!("{label} E0={e0:.3} overlap={overlap:.12}"));
    }
    Ok(format!("N=6: {}", notes.join(", ")))
}

fn rdm_oracle() -> Outcome {
    let mut compared = 0;
    for n in 1..=10 {
        let mut states = vec![NamedState::Separable0, NamedState::W];
        if n >= 2 {
            states.push(NamedState::Ghz);
        }
        if n >= 4 {
            states.push(NamedState::X(x_family_z()));
        }
        states.extend((0..=n).map(NamedState::Dicke));
        for s in states {
            let st = s.build(n).unwrap();
            let psi = full_vector(&st);
            for m in 1..=n {
                let dense = dense_reduced(&psi, n, m);
                let basis: Vec<Vec<C64>> = (0..=m).map(|k| dicke_vector(m, k)).collect();
                let rho = reduced_density(&st, m).map_err(|e| e.to_string())?.matrix;
                // V rho V^dagger with V the dense Dicke basis
                let v = DMatrix::from_fn(1 << m, m + 1, |i, k| basis[k][i]);
                let lifted = &v * rho * v.adjoint();
                let err = (&lifted - &dense).camax();
                ensure(err <= TOL_RDM, || format!("{}_{n}, M={m}: max deviation {err:e}", s.label()))?;
                compared += 1;
            }
        }
    }
    // W_N: rho^(M) = (M/N)|W_M><W_M| + c |0..0><0..0| with c = (N-M)/N.
    // The printed formula has c = (N-M)/M, which is not trace one unless M = N.
    let (mut mismatches, mut cuts) = (0, 0);
    for n in 2..=10 {
        let psi = full_vector(&NamedState::W.build(n).unwrap());
        for m in 1..n {
            let dense = dense_reduced(&psi, n, m);
            let wm = dicke_vector(m, 1);
            let zero = dicke_vector(m, 0);
            let model = |c0: f64| {
                let w = nalgebra::DVector::from_vec(wm.clone());
                let o = nalgebra::DVector::from_vec(zero.clone());
                &w * w.adjoint() * c(m as f64 / n as f64, 0.0) + &o * o.adjoint() * c(c0, 0.0)
            };
            let good = (model((n - m) as f64 / n as f64) - &dense).camax();
            ensure(good <= TOL_RDM, || format!("W_{n}, M={m}: (N-M)/N model off by {good:e}"))?;
            cuts += 1;
            if (model((n - m) as f64 / m as f64) - &dense).camax() > TOL_RDM {
                mismatches += 1;
            }
        }
    }
    Ok(format!(
        "{compared} (state, M) pairs within {TOL_RDM:e}; W_N has |0..0> weight (N-M)/N, the printed (N-M)/M fails in {mismatches} of {cuts} cuts"
    ))
}

fn cli_determinism() -> Outcome {
    let runs: [&[&str]; 5] = [
        &["classify", "--name", "x", "--n", "6", "--z", "0.89089871814", "--no-timings"],
        &["classify", "--name", "dicke", "--n", "9", "--k", "4", "--seed", "5", "--no-timings"],
        &["hamiltonian", "--name", "w", "--n", "6", "--n-local", "2"],
        &["verify", "--suite", "slocc", "--seed", "7", "--count", "100"],
        &["verify", "--suite", "oracle", "--seed", "3", "--count", "40"],
    ];
    for args in runs {
        let once = || Command::new(env!("CARGO_BIN_EXE_symclass")).args(args).output().expect("binary runs");
        let (a, b) = (once(), once());
        ensure(a.status.success(), || format!("{args:?} exited with {:?}", a.status.code()))?;
        ensure(a.stdout == b.stdout, || format!("{args:?}: outputs differ"))?;
        let _: serde_json::Value = serde_json::from_slice(&a.stdout).map_err(|e| format!("{args:?}: {e}"))?;
    }
    Ok(format!("{} commands byte-identical across two runs", runs.len()))
}

fn dist(a: &[C64], b: &[C64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y).norm_sqr()).sum::<f64>().sqrt()
}

fn main() {
    let criteria: [Criterion; 11] = [
        ("family golden values", family_golden_values),
        ("GHZ_2 closed form", ghz2_closed_form),
        ("SLOCC invariance", || run_suite(Suite::Slocc, SLOCC_TRIALS)),
        ("nesting", || run_suite(Suite::Nesting, NESTING_PER_N)),
        ("interaction lengths", interaction_lengths),
        ("rank symmetry and bound", rank_symmetry_and_bound),
        ("constructive parent Hamiltonians", parent_hamiltonians),
        ("closed-form Hamiltonians", closed_form_hamiltonians),
        ("exact oracle agreement", || run_suite(Suite::Oracle, ORACLE_STATES)),
        ("reduced density oracle", rdm_oracle),
        ("CLI determinism", cli_determinism),
    ];
    let filter: BTreeSet<usize> = std::env::args().skip(1).filter_map(|a| a.parse().ok()).collect();
    let mut failed = 0;
    for (i, (title, check)) in criteria.iter().enumerate() {
        let id = i + 1;
        if !filter.is_empty() && !filter.contains(&id) {
            continue;
        }
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|_| Err("panicked".into()));
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("AC{id:<2} PASS  {title} [{secs:.1}s]: {detail}"),
            Err(detail) => {
                failed += 1;
                println!("AC{id:<2} FAIL  {title} [{secs:.1}s]: {detail}");
            }
        }
    }
    if failed > 0 {
        eprintln!("{failed} acceptance criteria failed");
        std::process::exit(1);
    }
}
