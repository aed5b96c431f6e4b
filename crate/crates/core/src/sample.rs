//! Seeded random instance generators shared by the harness suites, the
//! acceptance tests and the CLI. All randomness flows through ChaCha8 with
//! explicit seeds so reports are reproducible byte for byte.

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::cm::{from_chart, CMChart, CMPair};
use crate::poly::UniPoly;
use crate::quasi::{reduced_basis, QuasiExpSpace};
use crate::scalar::{ExactScalar, Scalar};

type E = ExactScalar;
type EP = UniPoly<ExactScalar>;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Random rational in roughly [−bound, bound] with small denominator.
pub fn rational(rng: &mut ChaCha8Rng, bound: i64) -> E {
    E::from_frac(rng.gen_range(-bound * 4..=bound * 4), rng.gen_range(1..=4))
}

/// Random Gaussian rational with both parts bounded.
pub fn gaussian_rational(rng: &mut ChaCha8Rng, bound: i64) -> E {
    rational(rng, bound) + E::i() * rational(rng, bound)
}

/// n pairwise distinct random rationals.
pub fn distinct_rationals(rng: &mut ChaCha8Rng, n: usize, bound: i64) -> Vec<E> {
    let mut out: Vec<E> = Vec::with_capacity(n);
    while out.len() < n {
        let cand = rational(rng, bound);
        if !out.contains(&cand) {
            out.push(cand);
        }
    }
    out
}

/// n pairwise distinct random Gaussian rationals.
pub fn distinct_gaussian_rationals(rng: &mut ChaCha8Rng, n: usize, bound: i64) -> Vec<E> {
    let mut out: Vec<E> = Vec::with_capacity(n);
    while out.len() < n {
        let cand = gaussian_rational(rng, bound);
        if !out.contains(&cand) {
            out.push(cand);
        }
    }
    out
}

/// Random chart with distinct real rational λ and real rational α.
pub fn real_chart(rng: &mut ChaCha8Rng, n: usize) -> CMChart<E> {
    CMChart {
        lambda: distinct_rationals(rng, n, 6),
        alpha: (0..n).map(|_| rational(rng, 6)).collect(),
    }
}

/// Random chart with distinct Gaussian-rational λ and complex α.
pub fn complex_chart(rng: &mut ChaCha8Rng, n: usize) -> CMChart<E> {
    CMChart {
        lambda: distinct_gaussian_rationals(rng, n, 4),
        alpha: (0..n).map(|_| gaussian_rational(rng, 4)).collect(),
    }
}

/// Random exact pair built from a chart; real data iff `real`.
pub fn pair(rng: &mut ChaCha8Rng, n: usize, real: bool) -> CMPair<E> {
    let chart = if real { real_chart(rng, n) } else { complex_chart(rng, n) };
    from_chart(&chart).expect("chart with distinct eigenvalues")
}

/// Random polynomial of degree exactly `deg` with rational coefficients.
pub fn poly(rng: &mut ChaCha8Rng, deg: usize, bound: i64) -> EP {
    let mut coeffs: Vec<E> = (0..=deg).map(|_| rational(rng, bound)).collect();
    while coeffs[deg] == E::zero() {
        coeffs[deg] = rational(rng, bound);
    }
    UniPoly::new(coeffs)
}

/// Random polynomial with Gaussian-rational coefficients, degree exactly `deg`.
pub fn gaussian_poly(rng: &mut ChaCha8Rng, deg: usize, bound: i64) -> EP {
    let mut coeffs: Vec<E> = (0..=deg).map(|_| gaussian_rational(rng, bound)).collect();
    while coeffs[deg] == E::zero() {
        coeffs[deg] = gaussian_rational(rng, bound);
    }
    UniPoly::new(coeffs)
}

/// Random independent polynomial basis of the given size within degree < maxdeg.
pub fn poly_basis(
    rng: &mut ChaCha8Rng,
    dim: usize,
    maxdeg: usize,
    gaussian: bool,
) -> Vec<EP> {
    assert!(dim <= maxdeg);
    loop {
        let cand: Vec<EP> = (0..dim)
            .map(|_| {
                let d = rng.gen_range(0..maxdeg);
                if gaussian { gaussian_poly(rng, d, 3) } else { poly(rng, d, 3) }
            })
            .collect();
        if reduced_basis(&cand).len() == dim {
            return cand;
        }
    }
}

/// Random quasi-exponential space: k components with distinct real rational
/// exponents and total dimension `total`, optionally with Gaussian-rational
/// basis coefficients.
pub fn quasi_space(
    rng: &mut ChaCha8Rng,
    k: usize,
    total: usize,
    gaussian: bool,
) -> QuasiExpSpace {
    assert!(k >= 1 && total >= k);
    let mus = distinct_rationals(rng, k, 3);
    // Split `total` into k positive parts.
    let mut dims = vec![1usize; k];
    for _ in 0..total - k {
        let j = rng.gen_range(0..k);
        dims[j] += 1;
    }
    let spaces: Vec<Vec<EP>> = dims
        .iter()
        .map(|&d| poly_basis(rng, d, d + 2, gaussian))
        .collect();
    QuasiExpSpace::new(mus, spaces).expect("independent bases")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cm::validate;

    #[test]
    fn generators_are_deterministic() {
        let a: Vec<E> = {
            let mut r = rng(11);
            (0..10).map(|_| gaussian_rational(&mut r, 5)).collect()
        };
        let b: Vec<E> = {
            let mut r = rng(11);
            (0..10).map(|_| gaussian_rational(&mut r, 5)).collect()
        };
        assert_eq!(a, b);
    }

    #[test]
    fn sampled_pairs_validate() {
        let mut r = rng(3);
        for n in 1..=4 {
            let p = pair(&mut r, n, n % 2 == 0);
            validate(&p.x, &p.z).unwrap();
        }
    }

    #[test]
    fn sampled_spaces_have_requested_dimension() {
        let mut r = rng(5);
        for _ in 0..10 {
            let s = quasi_space(&mut r, 2, 4, true);
            assert_eq!(s.dim(), 4);
            assert_eq!(s.mus.len(), 2);
        }
    }
}
