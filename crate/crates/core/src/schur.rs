//! Schur functions in the power-sum-like variables p_1, p_2, …: the
//! elementary generating-series coefficients, Jacobi–Trudi determinants,
//! the real-rootedness harness for shifted Schur specializations, and the
//! polynomial tau-function check for nilpotent pairs.

use crate::cm::CMPair;
use crate::error::{CoreError, Result};
use crate::multipoly::MultiPoly;
use crate::poly::UniPoly;
use crate::roots::real_roots_certified;
use crate::scalar::{ExactScalar, Scalar};
use crate::tau::{det_ring, tau_from_cm, TruncatedTau};

type E = ExactScalar;

/// A partition λ_1 ≥ … ≥ λ_l > 0.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Partition {
    pub parts: Vec<u32>,
}

impl Partition {
    pub fn new(parts: Vec<u32>) -> Result<Self> {
        if parts.iter().any(|&p| p == 0) {
            return Err(CoreError::Precondition("partition parts must be positive".into()));
        }
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(CoreError::Precondition("partition parts must be weakly decreasing".into()));
        }
        Ok(Partition { parts })
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// Number of variables p_1..p_N the Jacobi–Trudi determinant can involve.
    pub fn num_vars(&self) -> usize {
        if self.parts.is_empty() {
            0
        } else {
            self.parts[0] as usize + self.parts.len() - 1
        }
    }
}

/// Coefficient of z^m in exp(Σ_k p_k z^k), as a polynomial in p_1..p_num_vars.
/// Zero for negative m by convention (callers pass m as i64).
pub fn elementary_schur(m: i64, num_vars: usize) -> MultiPoly<E> {
    if m < 0 {
        return MultiPoly::zero(num_vars);
    }
    let m = m as usize;
    assert!(num_vars >= m, "need at least m variables for S_m");
    // Multiply out Π_k Σ_j p_k^j z^{kj} / j! truncated at z^m.
    let mut series: Vec<MultiPoly<E>> = vec![MultiPoly::zero(num_vars); m + 1];
    series[0] = MultiPoly::one(num_vars);
    for k in 1..=m {
        let mut next: Vec<MultiPoly<E>> = vec![MultiPoly::zero(num_vars); m + 1];
        for d in 0..=m {
            let mut j = 0usize;
            let mut fact = E::one();
            while k * j + d <= m {
                if j > 0 {
                    fact = fact * E::from_int(j as i64);
                }
                let mut exps = vec![0u32; num_vars];
                exps[k - 1] = j as u32;
                let mut mono = MultiPoly::zero(num_vars);
                mono.add_term(exps, fact.checked_inv().expect("nonzero factorial"));
                next[k * j + d] = next[k * j + d].clone() + series[d].clone() * mono;
                j += 1;
            }
        }
        series = next;
    }
    series.pop().unwrap_or_else(|| MultiPoly::one(num_vars))
}

/// Jacobi–Trudi determinant s_λ = det(S_{λ_i + j − i}) over p_1..p_N.
pub fn schur_function(lam: &Partition) -> MultiPoly<E> {
    let n = lam.num_vars();
    let l = lam.len();
    if l == 0 {
        return MultiPoly::one(n);
    }
    let rows: Vec<Vec<MultiPoly<E>>> = (0..l)
        .map(|i| {
            (0..l)
                .map(|j| elementary_schur(lam.parts[i] as i64 + j as i64 - i as i64, n))
                .collect()
        })
        .collect();
    det_ring(&rows)
}

/// Outcome of one shifted-Schur reality instance.
#[derive(Clone, Debug, PartialEq)]
pub struct SchurReport {
    /// Hypothesis: the specialization has real coefficients and is certified
    /// real-rooted. `None` when the specialization is constant (vacuous).
    pub hypothesis: Option<bool>,
    /// Conclusion: every c_j with index among `dependent_vars` is real.
    pub conclusion: bool,
    /// 1-based indices of the p-variables s_λ actually depends on.
    pub dependent_vars: Vec<usize>,
}

impl SchurReport {
    pub fn falsified(&self) -> bool {
        self.hypothesis == Some(true) && !self.conclusion
    }
}

/// Substitutes p_1 = x + c_1, p_j = c_j into s_λ and tests whether certified
/// real-rootedness of the result forces the depended-upon c_j to be real.
pub fn coro_schur_harness(lam: &Partition, c: &[E]) -> Result<SchurReport> {
    let n = lam.num_vars();
    if c.len() != n {
        return Err(CoreError::DimensionMismatch(format!(
            "expected {} shift values, got {}",
            n,
            c.len()
        )));
    }
    let s = schur_function(lam);
    let dependent: Vec<usize> = s.depends_on().iter().map(|&v| v + 1).collect();
    let subs: Vec<UniPoly<E>> = (0..n)
        .map(|j| {
            if j == 0 {
                UniPoly::new(vec![c[0].clone(), E::one()])
            } else {
                UniPoly::constant(c[j].clone())
            }
        })
        .collect();
    let spec = s.specialize(&subs);
    let hypothesis = if spec.degree() <= 0 {
        None
    } else if !spec.has_real_coeffs() {
        Some(false)
    } else {
        Some(real_roots_certified(&spec)?.0)
    };
    let conclusion = dependent.iter().all(|&j| c[j - 1].is_real());
    Ok(SchurReport { hypothesis, conclusion, dependent_vars: dependent })
}

/// Outcome of the polynomial-tau check for a nilpotent pair.
#[derive(Clone, Debug, PartialEq)]
pub struct PolyTauReport {
    /// Smallest q with Z^q = 0.
    pub nilpotency_index: usize,
    /// True iff τ has no dependence on t_j for j > nilpotency index.
    pub is_polynomial: bool,
    pub tau: TruncatedTau<E>,
}

/// Checks that the tau function of a pair with nilpotent Z depends only on
/// t_1..t_q where q is the nilpotency index: the t_j coefficient sits on
/// (−Z)^{j−1}, which vanishes for j > q.
pub fn polynomial_tau_check(p: &CMPair<E>, m: usize) -> Result<PolyTauReport> {
    let n = p.n;
    let mut q = None;
    let mut pw = Matrix::identity(n);
    for k in 0..=n {
        if pw.max_mag() == 0.0 {
            q = Some(k);
            break;
        }
        pw = pw * p.z.clone();
    }
    let q = q.ok_or(CoreError::Precondition("Z is not nilpotent".into()))?;
    let tau = tau_from_cm(p, m.max(n))?;
    let is_polynomial = (q..tau.m).all(|j| !tau.poly.depends_on().contains(&j));
    Ok(PolyTauReport { nilpotency_index: q, is_polynomial, tau })
}

use crate::matrix::Matrix;

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cm::validate;

    fn p(num_vars: usize, var1: usize) -> MultiPoly<E> {
        MultiPoly::var(num_vars, var1 - 1)
    }

    fn frac(n: i64, d: i64) -> E {
        E::from_frac(n, d)
    }

    #[test]
    fn elementary_schur_small() {
        assert_eq!(elementary_schur(0, 3), MultiPoly::one(3));
        assert_eq!(elementary_schur(-2, 3), MultiPoly::zero(3));
        assert_eq!(elementary_schur(1, 3), p(3, 1));

        // S_2 = p_1^2/2 + p_2.
        let s2 = p(3, 1) * p(3, 1) * MultiPoly::constant(3, frac(1, 2)) + p(3, 2);
        assert_eq!(elementary_schur(2, 3), s2);

        // S_3 = p_1^3/6 + p_1 p_2 + p_3.
        let s3 = p(3, 1) * p(3, 1) * p(3, 1) * MultiPoly::constant(3, frac(1, 6))
            + p(3, 1) * p(3, 2)
            + p(3, 3);
        assert_eq!(elementary_schur(3, 3), s3);
    }

    #[test]
    fn generating_series_inverse() {
        // Σ S_m(p) z^m · Σ S_m(−p) z^m = exp(Σ p_k z^k) exp(−Σ p_k z^k) = 1.
        let ord = 8usize;
        let fwd: Vec<MultiPoly<E>> =
            (0..=ord).map(|m| elementary_schur(m as i64, ord)).collect();
        let bwd: Vec<MultiPoly<E>> = (0..=ord)
            .map(|m| negate_vars(&elementary_schur(m as i64, ord)))
            .collect();
        for m in 0..=ord {
            let mut acc = MultiPoly::zero(ord);
            for i in 0..=m {
                acc = acc + fwd[i].clone() * bwd[m - i].clone();
            }
            if m == 0 {
                assert_eq!(acc, MultiPoly::one(ord));
            } else {
                assert_eq!(acc, MultiPoly::zero(ord));
            }
        }
    }

    // p_k ↦ −p_k: each term picks up (−1)^(total exponent sum).
    fn negate_vars(q: &MultiPoly<E>) -> MultiPoly<E> {
        let nv = q.num_vars();
        let mut out = MultiPoly::zero(nv);
        for (exps, c) in q.terms() {
            let tot: u32 = exps.iter().sum();
            let sign = if tot % 2 == 0 { E::one() } else { E::zero() - E::one() };
            out.add_term(exps.clone(), c.clone() * sign);
        }
        out
    }

    #[test]
    fn schur_function_examples() {
        let l1 = Partition::new(vec![1]).unwrap();
        assert_eq!(schur_function(&l1), p(1, 1));

        let l2 = Partition::new(vec![2]).unwrap();
        assert_eq!(schur_function(&l2), elementary_schur(2, 2));

        // s_(2,1) = S_2 S_1 − S_3 S_0 = p_1^3/3 − p_3.
        let l21 = Partition::new(vec![2, 1]).unwrap();
        let want = p(3, 1) * p(3, 1) * p(3, 1) * MultiPoly::constant(3, frac(1, 3))
            - p(3, 3);
        assert_eq!(schur_function(&l21), want);
    }

    #[test]
    fn row_partitions_match_elementary() {
        for m in 1..=6u32 {
            let lam = Partition::new(vec![m]).unwrap();
            assert_eq!(schur_function(&lam), elementary_schur(m as i64, m as usize));
        }
    }

    #[test]
    fn coro_schur_examples() {
        // λ=(1): s = x + c_1.
        let l1 = Partition::new(vec![1]).unwrap();
        let r = coro_schur_harness(&l1, &[E::from_int(3)]).unwrap();
        assert_eq!(r.hypothesis, Some(true));
        assert!(r.conclusion && !r.falsified());
        let r = coro_schur_harness(&l1, &[E::i()]).unwrap();
        assert_eq!(r.hypothesis, Some(false));
        assert!(!r.conclusion && !r.falsified());

        // λ=(2), c=(2,−1): (x+2)^2/2 − 1 has roots −2 ± √2.
        let l2 = Partition::new(vec![2]).unwrap();
        let r = coro_schur_harness(&l2, &[E::from_int(2), E::from_int(-1)]).unwrap();
        assert_eq!(r.hypothesis, Some(true));
        assert!(r.conclusion);

        // λ=(2), c=(i,0): non-real coefficients, hypothesis false.
        let r = coro_schur_harness(&l2, &[E::i(), E::zero()]).unwrap();
        assert_eq!(r.hypothesis, Some(false));
        assert!(!r.falsified());
    }

    #[test]
    fn coro_schur_dependent_vars() {
        // s_(2,1) = p_1^3/3 − p_3 does not involve p_2, so a non-real c_2
        // is outside the tested conclusion.
        let l21 = Partition::new(vec![2, 1]).unwrap();
        let r = coro_schur_harness(&l21, &[E::zero(), E::i(), E::zero()]).unwrap();
        assert_eq!(r.dependent_vars, vec![1, 3]);
        assert!(r.conclusion);
        // x^3/3 with root 0 of multiplicity 3 is certified real-rooted.
        assert_eq!(r.hypothesis, Some(true));
        assert!(!r.falsified());
    }

    #[test]
    fn coro_schur_grid() {
        // λ=(2) rational grid sweep: zero falsifications.
        let l2 = Partition::new(vec![2]).unwrap();
        for a in -2..=2i64 {
            for b in -2..=2i64 {
                let r = coro_schur_harness(&l2, &[E::from_int(a), E::from_int(b)]).unwrap();
                assert!(!r.falsified());
            }
        }
        // Non-real perturbations of the grid.
        for a in -2..=2i64 {
            for b in -2..=2i64 {
                let c1 = E::from_int(a) + E::i() * frac(1, 3);
                let r = coro_schur_harness(&l2, &[c1, E::from_int(b)]).unwrap();
                assert!(!r.falsified());
                let c2 = E::from_int(b) - E::i() * frac(1, 7);
                let r = coro_schur_harness(&l2, &[E::from_int(a), c2]).unwrap();
                assert!(!r.falsified());
            }
        }
    }

    #[test]
    fn polynomial_tau_nilpotent() {
        // n=1, Z=0: τ = a + t_1.
        let p1 = CMPair {
            n: 1,
            x: Matrix::from_i64(1, 1, &[4]),
            z: Matrix::zero(1, 1),
        };
        validate(&p1.x, &p1.z).unwrap();
        let r = polynomial_tau_check(&p1, 5).unwrap();
        assert_eq!(r.nilpotency_index, 1);
        assert!(r.is_polynomial);

        // n=2 with Z^2 = 0: X = [[0,0],[1,0]]·? Use the rank-one pair
        // X = [[0,1],[0,0]]-style: [X,Z]+I must be rank 1.
        let x = Matrix::from_fn(2, 2, |i, j| {
            if i == 0 && j == 1 { E::one() } else { E::zero() }
        });
        let z = Matrix::from_fn(2, 2, |i, j| {
            if i == 1 && j == 0 { E::from_int(-1) } else { E::zero() }
        });
        let p2 = CMPair { n: 2, x, z };
        validate(&p2.x, &p2.z).unwrap();
        let r = polynomial_tau_check(&p2, 6).unwrap();
        assert_eq!(r.nilpotency_index, 2);
        assert!(r.is_polynomial);
        assert!(!r.tau.poly.depends_on().contains(&2));
    }

    #[test]
    fn polynomial_tau_rejects_non_nilpotent() {
        let p1 = CMPair {
            n: 1,
            x: Matrix::from_i64(1, 1, &[0]),
            z: Matrix::from_i64(1, 1, &[3]),
        };
        assert!(matches!(
            polynomial_tau_check(&p1, 4),
            Err(CoreError::Precondition(_))
        ));
    }
}
