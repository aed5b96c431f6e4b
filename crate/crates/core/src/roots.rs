//! Root finding: Aberth simultaneous iteration on the approximate backend and
//! Sturm-chain certification of real-rootedness on the exact backend.

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use crate::error::{CoreError, Result};
use crate::poly::UniPoly;
use crate::scalar::{ApproxScalar, ExactScalar, Scalar};

pub const ABERTH_MAX_ITER: usize = 1000;
pub const ABERTH_CORRECTION_TOL: f64 = 1e-13;

/// All complex roots with multiplicity, by Aberth simultaneous iteration.
///
/// Convergence is declared when the largest correction drops below
/// `ABERTH_CORRECTION_TOL` or every residual |p(r)| is small relative to the
/// coefficient scale (clustered roots stall on corrections but not residuals).
pub fn poly_roots(p: &UniPoly<ApproxScalar>) -> Result<Vec<ApproxScalar>> {
    if p.is_zero() {
        return Err(CoreError::Precondition("poly_roots on zero polynomial".into()));
    }
    let n = p.degree() as usize;
    if n == 0 {
        return Ok(Vec::new());
    }
    let coeffs: Vec<Complex64> = p.coeffs().iter().map(|c| c.0).collect();
    let lead = coeffs[n];
    let monic: Vec<Complex64> = coeffs.iter().map(|c| c / lead).collect();
    let scale = coeffs.iter().map(|c| c.norm()).fold(0.0, f64::max);

    // Cauchy-style bound for the initial circle.
    let radius = 1.0 + monic[..n].iter().map(|c| c.norm()).fold(0.0, f64::max);
    let mut roots: Vec<Complex64> = (0..n)
        .map(|k| {
            let theta = 2.0 * std::f64::consts::PI * k as f64 / n as f64 + 0.4;
            Complex64::from_polar(radius * 0.7, theta)
        })
        .collect();

    let eval = |z: Complex64| -> (Complex64, Complex64) {
        let mut v = Complex64::new(0.0, 0.0);
        let mut d = Complex64::new(0.0, 0.0);
        for c in monic.iter().rev() {
            d = d * z + v;
            v = v * z + *c;
        }
        (v, d)
    };

    let mut prev_corr = f64::INFINITY;
    for _ in 0..ABERTH_MAX_ITER {
        let mut max_corr: f64 = 0.0;
        for k in 0..n {
            let zk = roots[k];
            let (v, d) = eval(zk);
            if v.norm() == 0.0 {
                continue;
            }
            let newton = if d.norm() > 0.0 { v / d } else { v };
            let mut sum = Complex64::new(0.0, 0.0);
            for (j, zj) in roots.iter().enumerate() {
                if j != k {
                    let diff = zk - zj;
                    if diff.norm() > 1e-300 {
                        sum += diff.inv();
                    }
                }
            }
            let denom = Complex64::new(1.0, 0.0) - newton * sum;
            let corr = if denom.norm() > 1e-300 { newton / denom } else { newton };
            roots[k] = zk - corr;
            max_corr = max_corr.max(corr.norm());
        }
        let resid_ok = roots.iter().all(|&z| {
            let (v, _) = eval(z);
            v.norm() * lead.norm() <= 1e-10 * f64::max(1.0, scale)
        });
        // Residual acceptance applies only once corrections have stalled;
        // clusters around a multiple root keep contracting while corrections
        // shrink, and stopping early would freeze them at low accuracy.
        let stalled = max_corr >= 0.5 * prev_corr;
        prev_corr = max_corr;
        if max_corr < ABERTH_CORRECTION_TOL || (resid_ok && stalled) {
            let mut out: Vec<ApproxScalar> = roots.into_iter().map(ApproxScalar).collect();
            out.sort_by(|a, b| {
                (a.0.re, a.0.im)
                    .partial_cmp(&(b.0.re, b.0.im))
                    .unwrap_or(std::cmp::Ordering::Equal)
            });
            return Ok(out);
        }
    }
    Err(CoreError::RootFindingFailed(ABERTH_MAX_ITER))
}

fn to_rational_poly(p: &UniPoly<ExactScalar>) -> Result<Vec<BigRational>> {
    p.coeffs()
        .iter()
        .map(|c| {
            if c.im.is_zero() {
                Ok(c.re.clone())
            } else {
                Err(CoreError::NonRealCoefficient)
            }
        })
        .collect()
}

fn rat_deg(p: &[BigRational]) -> isize {
    p.len() as isize - 1
}

fn rat_trim(mut p: Vec<BigRational>) -> Vec<BigRational> {
    while p.last().map_or(false, |c| c.is_zero()) {
        p.pop();
    }
    p
}

fn rat_derivative(p: &[BigRational]) -> Vec<BigRational> {
    if p.len() <= 1 {
        return Vec::new();
    }
    p[1..]
        .iter()
        .enumerate()
        .map(|(i, c)| c * BigRational::from_integer(BigInt::from(i as i64 + 1)))
        .collect()
}

fn rat_rem(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let mut r = a.to_vec();
    let db = rat_deg(b);
    let lead = b.last().unwrap().clone();
    while rat_deg(&r) >= db {
        let dr = rat_deg(&r) as usize;
        let c = r.last().unwrap() / &lead;
        let k = dr - db as usize;
        for (i, bc) in b.iter().enumerate() {
            r[i + k] = &r[i + k] - &(bc * &c);
        }
        r = rat_trim(r);
        if r.is_empty() {
            break;
        }
    }
    r
}

fn rat_gcd(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let mut a = rat_trim(a.to_vec());
    let mut b = rat_trim(b.to_vec());
    while !b.is_empty() {
        let r = rat_rem(&a, &b);
        a = b;
        b = r;
    }
    if let Some(lead) = a.last().cloned() {
        for c in a.iter_mut() {
            *c = &*c / &lead;
        }
    }
    a
}

fn rat_div_exact(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    // a = q*b exactly
    let mut r = a.to_vec();
    let db = rat_deg(b);
    let lead = b.last().unwrap().clone();
    let mut q = vec![BigRational::zero(); (rat_deg(a) - db + 1).max(0) as usize];
    while rat_deg(&r) >= db {
        let dr = rat_deg(&r) as usize;
        let c = r.last().unwrap() / &lead;
        let k = dr - db as usize;
        q[k] = c.clone();
        for (i, bc) in b.iter().enumerate() {
            r[i + k] = &r[i + k] - &(bc * &c);
        }
        r = rat_trim(r);
        if r.is_empty() {
            break;
        }
    }
    q
}

/// Number of distinct real roots of a squarefree rational polynomial,
/// by the sign-variation difference of the Sturm chain at -inf and +inf.
fn sturm_distinct_real_roots(p: &[BigRational]) -> usize {
    if rat_deg(p) <= 0 {
        return 0;
    }
    let mut chain = vec![p.to_vec(), rat_derivative(p)];
    loop {
        let last = &chain[chain.len() - 1];
        if last.is_empty() {
            chain.pop();
            break;
        }
        if rat_deg(last) == 0 {
            break;
        }
        let prev = &chain[chain.len() - 2];
        let r = rat_rem(prev, last);
        if r.is_empty() {
            break;
        }
        let negr: Vec<BigRational> = r.iter().map(|c| -c.clone()).collect();
        chain.push(negr);
    }
    let sign_at_inf = |q: &[BigRational], plus: bool| -> i8 {
        let lead = q.last().unwrap();
        let mut s: i8 = if lead.is_positive() { 1 } else { -1 };
        if !plus && rat_deg(q) % 2 == 1 {
            s = -s;
        }
        s
    };
    let variations = |plus: bool| -> usize {
        let signs: Vec<i8> = chain.iter().filter(|q| !q.is_empty()).map(|q| sign_at_inf(q, plus)).collect();
        signs.windows(2).filter(|w| w[0] != w[1]).count()
    };
    variations(false) - variations(true)
}

/// Certified real-rootedness for exact polynomials with real coefficients.
///
/// Returns `(all_real, count)` where `count` is the number of real roots with
/// multiplicity. Squarefree parts are processed by Sturm chains; multiple
/// roots are peeled off by repeated gcd with the derivative.
pub fn real_roots_certified(p: &UniPoly<ExactScalar>) -> Result<(bool, usize)> {
    let coeffs = to_rational_poly(p)?;
    let coeffs = rat_trim(coeffs);
    if coeffs.is_empty() {
        return Err(CoreError::Precondition("zero polynomial".into()));
    }
    let deg = rat_deg(&coeffs) as usize;
    let mut count = 0usize;
    let mut cur = coeffs;
    while rat_deg(&cur) > 0 {
        let der = rat_derivative(&cur);
        let g = rat_gcd(&cur, &der);
        let squarefree = if rat_deg(&g) <= 0 { cur.clone() } else { rat_div_exact(&cur, &g) };
        count += sturm_distinct_real_roots(&squarefree);
        if rat_deg(&g) <= 0 {
            break;
        }
        cur = g;
    }
    Ok((count == deg, count))
}

const RATIONALIZE_MAX_DEN: i64 = 1_000_000_007;

/// Best rational approximation by continued fractions, with |error| check.
fn rationalize(x: f64) -> Option<BigRational> {
    if !x.is_finite() {
        return None;
    }
    if x.abs() < 1e-9 {
        return Some(BigRational::zero());
    }
    let (mut p0, mut q0, mut p1, mut q1) = (1i128, 0i128, x.floor() as i128, 1i128);
    let mut frac = x - x.floor();
    for _ in 0..40 {
        let approx = p1 as f64 / q1 as f64;
        if (approx - x).abs() <= 1e-9 * f64::max(1.0, x.abs()) {
            return Some(BigRational::new(BigInt::from(p1), BigInt::from(q1)));
        }
        if frac.abs() < 1e-15 {
            break;
        }
        let inv = 1.0 / frac;
        let a = inv.floor();
        frac = inv - a;
        let a = a as i128;
        let p2 = a * p1 + p0;
        let q2 = a * q1 + q0;
        if q2 > RATIONALIZE_MAX_DEN as i128 {
            break;
        }
        p0 = p1;
        q0 = q1;
        p1 = p2;
        q1 = q2;
    }
    let approx = p1 as f64 / q1 as f64;
    if (approx - x).abs() <= 1e-9 * f64::max(1.0, x.abs()) {
        Some(BigRational::new(BigInt::from(p1), BigInt::from(q1)))
    } else {
        None
    }
}

/// Roots of an exact polynomial, recovered exactly.
///
/// Approximate roots from Aberth are rounded to nearby Gaussian rationals and
/// verified by exact evaluation and deflation; fails with
/// `NonRationalSpectrum` when a root is not Gaussian-rational of moderate
/// height.
pub fn exact_roots(p: &UniPoly<ExactScalar>) -> Result<Vec<ExactScalar>> {
    if p.is_zero() {
        return Err(CoreError::Precondition("zero polynomial".into()));
    }
    let mut rem = p.clone();
    let mut out = Vec::new();
    let deg = p.degree() as usize;
    while rem.degree() > 0 {
        let approx = poly_roots(&rem.to_approx())?;
        let mut found = false;
        for r in &approx {
            let re = match rationalize(r.0.re) {
                Some(v) => v,
                None => continue,
            };
            let im = match rationalize(r.0.im) {
                Some(v) => v,
                None => continue,
            };
            let cand = ExactScalar::new(re, im);
            if Scalar::is_zero(&rem.eval(&cand)) {
                let lin = UniPoly::new(vec![-cand.clone(), ExactScalar::one()]);
                let (q, r2) = rem.divmod(&lin)?;
                debug_assert!(r2.is_zero());
                rem = q;
                out.push(cand);
                found = true;
                break;
            }
        }
        if !found {
            return Err(CoreError::NonRationalSpectrum);
        }
    }
    if out.len() != deg {
        return Err(CoreError::NonRationalSpectrum);
    }
    out.sort_by(|a, b| (&a.re, &a.im).cmp(&(&b.re, &b.im)));
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::prelude::*;
    use rand_chacha::ChaCha8Rng;

    type EP = UniPoly<ExactScalar>;
    type AP = UniPoly<ApproxScalar>;

    fn close(a: Complex64, b: Complex64) -> bool {
        (a - b).norm() < 1e-8
    }

    #[test]
    fn roots_x2_minus_1() {
        let r = poly_roots(&AP::from_i64(&[-1, 0, 1])).unwrap();
        assert_eq!(r.len(), 2);
        assert!(close(r[0].0, Complex64::new(-1.0, 0.0)));
        assert!(close(r[1].0, Complex64::new(1.0, 0.0)));
    }

    #[test]
    fn roots_double_half() {
        // char poly of Z at lambda=(1,-1), alpha=(1,0): (x - 1/2)^2
        let p = AP::new(vec![
            ApproxScalar::new(0.25, 0.0),
            ApproxScalar::new(-1.0, 0.0),
            ApproxScalar::new(1.0, 0.0),
        ]);
        let r = poly_roots(&p).unwrap();
        assert_eq!(r.len(), 2);
        for root in r {
            assert!((root.0 - Complex64::new(0.5, 0.0)).norm() < 1e-5);
        }
    }

    #[test]
    fn roots_with_imaginary_factor() {
        // x^2 + 2ix = x(x + 2i), from the Wronskian non-example Wr(x+i, x^2)
        let p = AP::new(vec![
            ApproxScalar::new(0.0, 0.0),
            ApproxScalar::new(0.0, 2.0),
            ApproxScalar::new(1.0, 0.0),
        ]);
        let mut r = poly_roots(&p).unwrap();
        r.sort_by(|a, b| a.0.im.partial_cmp(&b.0.im).unwrap());
        assert!(close(r[0].0, Complex64::new(0.0, -2.0)));
        assert!(close(r[1].0, Complex64::new(0.0, 0.0)));
    }

    #[test]
    fn degree_zero_has_no_roots() {
        assert!(poly_roots(&AP::from_i64(&[7])).unwrap().is_empty());
    }

    #[test]
    fn sturm_examples() {
        // Wronskian of {1, x^2} is 2x: one real root
        assert_eq!(real_roots_certified(&EP::from_i64(&[0, 2])).unwrap(), (true, 1));
        assert_eq!(real_roots_certified(&EP::from_i64(&[1, 0, 1])).unwrap(), (false, 0));
        // (x+2)^3 / 3, triple root at -2 (s_(2,1) harness shape)
        let p = EP::from_i64(&[8, 12, 6, 1]).scale(&ExactScalar::from_frac(1, 3));
        assert_eq!(real_roots_certified(&p).unwrap(), (true, 3));
    }

    #[test]
    fn sturm_rejects_complex_coeffs() {
        let p = EP::new(vec![ExactScalar::i(), ExactScalar::one()]);
        assert!(matches!(real_roots_certified(&p), Err(CoreError::NonRealCoefficient)));
    }

    #[test]
    fn sturm_invariant_under_positive_scaling() {
        let p = EP::from_i64(&[-6, 11, -6, 1]); // roots 1,2,3
        let scaled = p.scale(&ExactScalar::from_frac(7, 3));
        assert_eq!(real_roots_certified(&p).unwrap(), real_roots_certified(&scaled).unwrap());
        assert_eq!(real_roots_certified(&p).unwrap(), (true, 3));
    }

    #[test]
    fn exact_roots_gaussian() {
        let p = EP::from_roots(&[
            ExactScalar::from_frac(1, 2),
            ExactScalar::from_parts(0, 1, -2, 1),
            ExactScalar::from_int(3),
        ]);
        let r = exact_roots(&p).unwrap();
        assert_eq!(r.len(), 3);
        assert!(r.contains(&ExactScalar::from_frac(1, 2)));
        assert!(r.contains(&ExactScalar::from_parts(0, 1, -2, 1)));
    }

    #[test]
    fn exact_roots_rejects_irrational() {
        let p = EP::from_i64(&[-2, 0, 1]); // x^2 - 2
        assert!(matches!(exact_roots(&p), Err(CoreError::NonRationalSpectrum)));
    }

    // real_roots_certified agrees with poly_roots classification on random
    // real-coefficient polynomials.
    #[test]
    fn sturm_agrees_with_aberth() {
        let mut rng = ChaCha8Rng::seed_from_u64(42);
        for _ in 0..200 {
            let deg = rng.gen_range(1..=8usize);
            let coeffs: Vec<i64> = (0..=deg).map(|_| rng.gen_range(-9..=9i64)).collect();
            let p = EP::from_i64(&coeffs);
            if p.degree() < 1 {
                continue;
            }
            let (all_real, count) = real_roots_certified(&p).unwrap();
            let roots = poly_roots(&p.to_approx()).unwrap();
            let approx_real = roots.iter().filter(|r| r.0.im.abs() < 1e-6).count();
            assert_eq!(count, approx_real, "sturm vs aberth mismatch on {:?}", p);
            assert_eq!(all_real, count == p.degree() as usize);
        }
    }
}
