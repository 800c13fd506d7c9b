//! Binomial coefficients in the forms the Dicke-basis formulas need.
//!
//! Exact integers are used up to `n = 60`; above that the log of the
//! coefficient is accumulated term by term so `sqrt(C(n, k))` stays finite and
//! accurate.

const EXACT_LIMIT: usize = 60;

/// `C(n, k)` exactly, for `n <= 60`.
fn exact(n: usize, k: usize) -> u128 {
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    acc
}

/// Natural log of `C(n, k)`. Returns `-inf` when `k > n`.
pub fn ln_binomial(n: usize, k: usize) -> f64 {
    if k > n {
        return f64::NEG_INFINITY;
    }
    if n <= EXACT_LIMIT {
        return (exact(n, k) as f64).ln();
    }
    let k = k.min(n - k);
    (1..=k)
        .map(|i| (((n - k + i) as f64) / i as f64).ln())
        .sum()
}

/// `C(n, k)` as a float; zero when `k > n`.
pub fn binomial(n: usize, k: usize) -> f64 {
    if k > n {
        0.0
    } else if n <= EXACT_LIMIT {
        exact(n, k) as f64
    } else {
        ln_binomial(n, k).exp()
    }
}

/// `sqrt(C(n, k))`.
pub fn sqrt_binomial(n: usize, k: usize) -> f64 {
    if k > n {
        0.0
    } else if n <= EXACT_LIMIT {
        (exact(n, k) as f64).sqrt()
    } else {
        (0.5 * ln_binomial(n, k)).exp()
    }
}
