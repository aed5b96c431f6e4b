//! Multivariate polynomials in t_1..t_m, stored as a sparse exponent map.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::poly::UniPoly;
use crate::scalar::Scalar;

#[derive(Clone, PartialEq)]
pub struct MultiPoly<S: Scalar> {
    num_vars: usize,
    terms: BTreeMap<Vec<u32>, S>, // no zero coefficients stored
}

impl<S: Scalar> MultiPoly<S> {
    pub fn zero(num_vars: usize) -> Self {
        MultiPoly { num_vars, terms: BTreeMap::new() }
    }

    pub fn constant(num_vars: usize, c: S) -> Self {
        let mut p = MultiPoly::zero(num_vars);
        if !c.is_zero() {
            p.terms.insert(vec![0; num_vars], c);
        }
        p
    }

    pub fn one(num_vars: usize) -> Self {
        MultiPoly::constant(num_vars, S::one())
    }

    /// The variable t_{var} (0-based).
    pub fn var(num_vars: usize, var: usize) -> Self {
        assert!(var < num_vars);
        let mut exps = vec![0; num_vars];
        exps[var] = 1;
        let mut p = MultiPoly::zero(num_vars);
        p.terms.insert(exps, S::one());
        p
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u32>, &S)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, exps: &[u32]) -> S {
        self.terms.get(exps).cloned().unwrap_or_else(S::zero)
    }

    pub fn add_term(&mut self, exps: Vec<u32>, c: S) {
        assert_eq!(exps.len(), self.num_vars);
        let entry = self.terms.entry(exps.clone()).or_insert_with(S::zero);
        *entry = entry.clone() + c;
        if entry.is_zero() {
            self.terms.remove(&exps);
        }
    }

    pub fn scale(&self, c: &S) -> Self {
        if c.is_zero() {
            return MultiPoly::zero(self.num_vars);
        }
        let mut out = MultiPoly::zero(self.num_vars);
        for (e, v) in &self.terms {
            out.add_term(e.clone(), v.clone() * c.clone());
        }
        out
    }

    /// Indices of the variables this polynomial actually depends on.
    pub fn depends_on(&self) -> Vec<usize> {
        let mut used = vec![false; self.num_vars];
        for e in self.terms.keys() {
            for (i, &p) in e.iter().enumerate() {
                if p > 0 {
                    used[i] = true;
                }
            }
        }
        used.iter().enumerate().filter(|(_, &u)| u).map(|(i, _)| i).collect()
    }

    pub fn degree_in(&self, var: usize) -> u32 {
        self.terms.keys().map(|e| e[var]).max().unwrap_or(0)
    }

    pub fn has_real_coeffs(&self) -> bool {
        self.terms.values().all(|c| c.is_real())
    }

    /// Full specialization: substitute `polys[i]` (a univariate polynomial in
    /// one common variable x) for t_{i+1}.
    pub fn specialize(&self, polys: &[UniPoly<S>]) -> UniPoly<S> {
        assert_eq!(polys.len(), self.num_vars);
        let mut out = UniPoly::zero();
        for (e, c) in &self.terms {
            let mut term = UniPoly::constant(c.clone());
            for (i, &p) in e.iter().enumerate() {
                for _ in 0..p {
                    term = term * polys[i].clone();
                }
            }
            out = out + term;
        }
        out
    }

    /// Partial substitution of a scalar for one variable.
    pub fn substitute_scalar(&self, var: usize, value: &S) -> Self {
        assert!(var < self.num_vars);
        let mut out = MultiPoly::zero(self.num_vars);
        for (e, c) in &self.terms {
            let mut coeff = c.clone();
            for _ in 0..e[var] {
                coeff = coeff * value.clone();
            }
            let mut e2 = e.clone();
            e2[var] = 0;
            out.add_term(e2, coeff);
        }
        out
    }

    /// Substitute t_var -> t_var + r.
    pub fn shift_var(&self, var: usize, r: &S) -> Self {
        let mut out = MultiPoly::zero(self.num_vars);
        for (e, c) in &self.terms {
            let p = e[var] as usize;
            // binomial expansion of (t + r)^p
            let mut binom = S::one();
            let mut rpow = S::one();
            for k in (0..=p).rev() {
                // coefficient C(p, k) * r^(p-k) on t^k; iterate k from p down
                let mut e2 = e.clone();
                e2[var] = k as u32;
                out.add_term(e2, c.clone() * binom.clone() * rpow.clone());
                if k > 0 {
                    // C(p, k-1) = C(p, k) * k / (p - k + 1)
                    binom = binom * S::from_i64(k as i64) / S::from_i64((p - k + 1) as i64);
                    rpow = rpow * r.clone();
                }
            }
        }
        out
    }

    pub fn eval(&self, point: &[S]) -> S {
        assert_eq!(point.len(), self.num_vars);
        let mut acc = S::zero();
        for (e, c) in &self.terms {
            let mut term = c.clone();
            for (i, &p) in e.iter().enumerate() {
                for _ in 0..p {
                    term = term * point[i].clone();
                }
            }
            acc = acc + term;
        }
        acc
    }
}

impl<S: Scalar> Add for MultiPoly<S> {
    type Output = MultiPoly<S>;
    fn add(self, rhs: MultiPoly<S>) -> MultiPoly<S> {
        assert_eq!(self.num_vars, rhs.num_vars);
        let mut out = self.clone();
        for (e, c) in rhs.terms {
            out.add_term(e, c);
        }
        out
    }
}

impl<S: Scalar> Sub for MultiPoly<S> {
    type Output = MultiPoly<S>;
    fn sub(self, rhs: MultiPoly<S>) -> MultiPoly<S> {
        self + (-rhs)
    }
}

impl<S: Scalar> Neg for MultiPoly<S> {
    type Output = MultiPoly<S>;
    fn neg(self) -> MultiPoly<S> {
        let num_vars = self.num_vars;
        MultiPoly {
            num_vars,
            terms: self.terms.into_iter().map(|(e, c)| (e, -c)).collect(),
        }
    }
}

impl<S: Scalar> Mul for MultiPoly<S> {
    type Output = MultiPoly<S>;
    fn mul(self, rhs: MultiPoly<S>) -> MultiPoly<S> {
        assert_eq!(self.num_vars, rhs.num_vars);
        let mut out = MultiPoly::zero(self.num_vars);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &rhs.terms {
                let e: Vec<u32> = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                out.add_term(e, c1.clone() * c2.clone());
            }
        }
        out
    }
}

impl<S: Scalar> fmt::Debug for MultiPoly<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in &self.terms {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "({})", c)?;
            for (i, &p) in e.iter().enumerate() {
                if p == 1 {
                    write!(f, "*t{}", i + 1)?;
                } else if p > 1 {
                    write!(f, "*t{}^{}", i + 1, p)?;
                }
            }
        }
        Ok(())
    }
}
