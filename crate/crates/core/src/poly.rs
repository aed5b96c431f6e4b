//! Univariate polynomials over either scalar backend.
//!
//! Coefficients are stored lowest degree first; the zero polynomial has
//! degree -1 and an empty coefficient vector.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{CoreError, Result};
use crate::scalar::{ApproxScalar, ExactScalar, Scalar};

#[derive(Clone, PartialEq)]
pub struct UniPoly<S: Scalar> {
    coeffs: Vec<S>,
}

impl<S: Scalar> UniPoly<S> {
    pub fn new(mut coeffs: Vec<S>) -> Self {
        while coeffs.last().map_or(false, |c| c.is_zero()) {
            coeffs.pop();
        }
        UniPoly { coeffs }
    }

    pub fn zero() -> Self {
        UniPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        UniPoly::constant(S::one())
    }

    pub fn constant(c: S) -> Self {
        UniPoly::new(vec![c])
    }

    /// c * x^k
    pub fn monomial(c: S, k: usize) -> Self {
        let mut coeffs = vec![S::zero(); k];
        coeffs.push(c);
        UniPoly::new(coeffs)
    }

    /// x
    pub fn x() -> Self {
        UniPoly::monomial(S::one(), 1)
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        UniPoly::new(coeffs.iter().map(|&c| S::from_i64(c)).collect())
    }

    /// Monic polynomial with the given roots.
    pub fn from_roots(roots: &[S]) -> Self {
        let mut p = UniPoly::one();
        for r in roots {
            p = p * UniPoly::new(vec![-r.clone(), S::one()]);
        }
        p
    }

    pub fn coeffs(&self) -> &[S] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> S {
        self.coeffs.get(k).cloned().unwrap_or_else(S::zero)
    }

    pub fn degree(&self) -> isize {
        self.coeffs.len() as isize - 1
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn leading(&self) -> Option<&S> {
        self.coeffs.last()
    }

    pub fn eval(&self, x: &S) -> S {
        let mut acc = S::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x.clone() + c.clone();
        }
        acc
    }

    pub fn scale(&self, c: &S) -> Self {
        UniPoly::new(self.coeffs.iter().map(|a| a.clone() * c.clone()).collect())
    }

    pub fn derivative(&self) -> Self {
        if self.coeffs.len() <= 1 {
            return UniPoly::zero();
        }
        UniPoly::new(
            self.coeffs[1..]
                .iter()
                .enumerate()
                .map(|(i, c)| c.clone() * S::from_i64((i + 1) as i64))
                .collect(),
        )
    }

    pub fn monic(&self) -> Result<Self> {
        let lc = self.leading().ok_or(CoreError::DivisionByZero)?.clone();
        Ok(self.scale(&lc.checked_inv()?))
    }

    pub fn conj(&self) -> Self {
        UniPoly::new(self.coeffs.iter().map(|c| c.conj()).collect())
    }

    pub fn has_real_coeffs(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_real())
    }

    /// p(x + r)
    pub fn shift(&self, r: &S) -> Self {
        // Horner on p(y) with y = x + r.
        let mut acc = UniPoly::zero();
        let xr = UniPoly::new(vec![r.clone(), S::one()]);
        for c in self.coeffs.iter().rev() {
            acc = acc * xr.clone() + UniPoly::constant(c.clone());
        }
        acc
    }

    /// p(-x)
    pub fn reflect(&self) -> Self {
        UniPoly::new(
            self.coeffs
                .iter()
                .enumerate()
                .map(|(i, c)| if i % 2 == 1 { -c.clone() } else { c.clone() })
                .collect(),
        )
    }

    /// Euclidean division; the divisor's leading coefficient must be invertible.
    pub fn divmod(&self, d: &Self) -> Result<(Self, Self)> {
        if d.is_zero() {
            return Err(CoreError::DivisionByZero);
        }
        let dlc_inv = d.leading().unwrap().clone().checked_inv()?;
        let mut rem = self.clone();
        let mut quot = vec![S::zero(); (self.degree() - d.degree() + 1).max(0) as usize];
        while !rem.is_zero() && rem.degree() >= d.degree() {
            let k = (rem.degree() - d.degree()) as usize;
            let c = rem.leading().unwrap().clone() * dlc_inv.clone();
            quot[k] = c.clone();
            rem = rem - d.scale(&c).mul_xk(k);
        }
        Ok((UniPoly::new(quot), rem))
    }

    fn mul_xk(&self, k: usize) -> Self {
        if self.is_zero() {
            return UniPoly::zero();
        }
        let mut coeffs = vec![S::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        UniPoly::new(coeffs)
    }
}

impl UniPoly<ExactScalar> {
    /// Monic gcd over the Gaussian rationals.
    pub fn gcd(&self, other: &Self) -> Self {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let (_, r) = a.divmod(&b).expect("nonzero divisor");
            a = b;
            b = r;
        }
        if a.is_zero() {
            a
        } else {
            a.monic().expect("nonzero")
        }
    }

    pub fn to_approx(&self) -> UniPoly<ApproxScalar> {
        UniPoly::new(self.coeffs.iter().map(|c| ApproxScalar(c.to_complex())).collect())
    }
}

impl<S: Scalar> Add for UniPoly<S> {
    type Output = UniPoly<S>;
    fn add(self, rhs: UniPoly<S>) -> UniPoly<S> {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut coeffs = Vec::with_capacity(n);
        for i in 0..n {
            coeffs.push(self.coeff(i) + rhs.coeff(i));
        }
        UniPoly::new(coeffs)
    }
}

impl<S: Scalar> Sub for UniPoly<S> {
    type Output = UniPoly<S>;
    fn sub(self, rhs: UniPoly<S>) -> UniPoly<S> {
        self + (-rhs)
    }
}

impl<S: Scalar> Neg for UniPoly<S> {
    type Output = UniPoly<S>;
    fn neg(self) -> UniPoly<S> {
        UniPoly::new(self.coeffs.into_iter().map(|c| -c).collect())
    }
}

impl<S: Scalar> Mul for UniPoly<S> {
    type Output = UniPoly<S>;
    fn mul(self, rhs: UniPoly<S>) -> UniPoly<S> {
        if self.is_zero() || rhs.is_zero() {
            return UniPoly::zero();
        }
        let mut coeffs = vec![S::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                coeffs[i + j] = coeffs[i + j].clone() + a.clone() * b.clone();
            }
        }
        UniPoly::new(coeffs)
    }
}

fn fmt_poly<S: Scalar>(p: &UniPoly<S>, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    if p.is_zero() {
        return write!(f, "0");
    }
    let mut first = true;
    for (i, c) in p.coeffs.iter().enumerate().rev() {
        if c.is_zero() {
            continue;
        }
        if !first {
            write!(f, " + ")?;
        }
        first = false;
        match i {
            0 => write!(f, "({})", c)?,
            1 => write!(f, "({})*x", c)?,
            _ => write!(f, "({})*x^{}", c, i)?,
        }
    }
    Ok(())
}

impl<S: Scalar> fmt::Debug for UniPoly<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_poly(self, f)
    }
}

impl<S: Scalar> fmt::Display for UniPoly<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_poly(self, f)
    }
}
