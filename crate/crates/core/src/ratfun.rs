//! Reduced rational functions over the exact backend, plus truncated power
//! series with rational-function coefficients (the z^{-1} expansions of wave
//! functions live here).

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use crate::error::{CoreError, Result};
use crate::poly::UniPoly;
use crate::scalar::{ExactScalar, Scalar};

type EP = UniPoly<ExactScalar>;

/// num/den with gcd removed and monic denominator; canonical, so equality is
/// plain structural equality.
#[derive(Clone, PartialEq)]
pub struct RatFun {
    num: EP,
    den: EP,
}

impl RatFun {
    pub fn new(num: EP, den: EP) -> Self {
        assert!(!den.is_zero(), "zero denominator");
        if num.is_zero() {
            return RatFun { num: EP::zero(), den: EP::one() };
        }
        let g = num.gcd(&den);
        let num = num.divmod(&g).unwrap().0;
        let den = den.divmod(&g).unwrap().0;
        let lc = den.leading().unwrap().clone();
        let lc_inv = lc.checked_inv().unwrap();
        RatFun { num: num.scale(&lc_inv), den: den.scale(&lc_inv) }
    }

    pub fn zero() -> Self {
        RatFun { num: EP::zero(), den: EP::one() }
    }

    pub fn one() -> Self {
        RatFun { num: EP::one(), den: EP::one() }
    }

    pub fn from_poly(p: EP) -> Self {
        RatFun { num: p, den: EP::one() }
    }

    pub fn constant(c: ExactScalar) -> Self {
        RatFun::from_poly(EP::constant(c))
    }

    pub fn num(&self) -> &EP {
        &self.num
    }

    pub fn den(&self) -> &EP {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.degree() == 0
    }

    pub fn has_real_coeffs(&self) -> bool {
        // den is monic, so the normalization is canonical
        self.num.has_real_coeffs() && self.den.has_real_coeffs()
    }

    pub fn eval(&self, x: &ExactScalar) -> Result<ExactScalar> {
        let d = self.den.eval(x);
        if Scalar::is_zero(&d) {
            return Err(CoreError::DivisionByZero);
        }
        Ok(self.num.eval(x) / d)
    }

    pub fn derivative(&self) -> Self {
        let n = self.num.derivative() * self.den.clone() - self.num.clone() * self.den.derivative();
        let d = self.den.clone() * self.den.clone();
        RatFun::new(n, d)
    }

    /// Laurent expansion at infinity: exponent -> coefficient for all
    /// exponents >= -order (higher exponents come from an improper fraction).
    pub fn expand_at_infinity(&self, order: usize) -> BTreeMap<i64, ExactScalar> {
        let mut out = BTreeMap::new();
        if self.is_zero() {
            return out;
        }
        let m = self.num.degree() as i64;
        let d = self.den.degree() as i64;
        // num(x)/den(x) = x^(m-d) * N(u)/D(u), u = 1/x, with reversed coeffs.
        let rev = |p: &EP| -> Vec<ExactScalar> {
            let mut v: Vec<ExactScalar> = p.coeffs().to_vec();
            v.reverse();
            v
        };
        let n_rev = rev(&self.num);
        let d_rev = rev(&self.den);
        // series division N/D to enough u-terms
        let top = m - d; // leading exponent
        let len = (top + order as i64 + 1).max(0) as usize;
        let mut series = vec![ExactScalar::zero(); len];
        let d0_inv = d_rev[0].clone().checked_inv().unwrap();
        for i in 0..len {
            let mut acc = n_rev.get(i).cloned().unwrap_or_else(ExactScalar::zero);
            for j in 1..=i.min(d_rev.len() - 1) {
                acc = acc - d_rev[j].clone() * series[i - j].clone();
            }
            series[i] = acc * d0_inv.clone();
        }
        for (i, c) in series.into_iter().enumerate() {
            if !Scalar::is_zero(&c) {
                out.insert(top - i as i64, c);
            }
        }
        out
    }
}

impl Add for RatFun {
    type Output = RatFun;
    fn add(self, rhs: RatFun) -> RatFun {
        RatFun::new(
            self.num.clone() * rhs.den.clone() + rhs.num.clone() * self.den.clone(),
            self.den * rhs.den,
        )
    }
}

impl Sub for RatFun {
    type Output = RatFun;
    fn sub(self, rhs: RatFun) -> RatFun {
        self + (-rhs)
    }
}

impl Neg for RatFun {
    type Output = RatFun;
    fn neg(self) -> RatFun {
        RatFun { num: -self.num, den: self.den }
    }
}

impl Mul for RatFun {
    type Output = RatFun;
    fn mul(self, rhs: RatFun) -> RatFun {
        RatFun::new(self.num * rhs.num, self.den * rhs.den)
    }
}

impl Div for RatFun {
    type Output = RatFun;
    fn div(self, rhs: RatFun) -> RatFun {
        assert!(!rhs.is_zero(), "division by zero rational function");
        RatFun::new(self.num * rhs.den, self.den * rhs.num)
    }
}

impl fmt::Debug for RatFun {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_polynomial() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({}) / ({})", self.num, self.den)
        }
    }
}

/// Truncated power series sum_k coeffs[k] u^k with rational-function
/// coefficients, u being the expansion variable (z^{-1} for wave functions).
#[derive(Clone, PartialEq, Debug)]
pub struct RatSeries {
    pub coeffs: Vec<RatFun>, // length order + 1
}

impl RatSeries {
    pub fn zero(order: usize) -> Self {
        RatSeries { coeffs: vec![RatFun::zero(); order + 1] }
    }

    pub fn one(order: usize) -> Self {
        let mut s = RatSeries::zero(order);
        s.coeffs[0] = RatFun::one();
        s
    }

    pub fn from_constant(order: usize, c: RatFun) -> Self {
        let mut s = RatSeries::zero(order);
        s.coeffs[0] = c;
        s
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn add(&self, rhs: &RatSeries) -> RatSeries {
        assert_eq!(self.order(), rhs.order());
        RatSeries {
            coeffs: self
                .coeffs
                .iter()
                .zip(&rhs.coeffs)
                .map(|(a, b)| a.clone() + b.clone())
                .collect(),
        }
    }

    pub fn sub(&self, rhs: &RatSeries) -> RatSeries {
        assert_eq!(self.order(), rhs.order());
        RatSeries {
            coeffs: self
                .coeffs
                .iter()
                .zip(&rhs.coeffs)
                .map(|(a, b)| a.clone() - b.clone())
                .collect(),
        }
    }

    pub fn mul(&self, rhs: &RatSeries) -> RatSeries {
        assert_eq!(self.order(), rhs.order());
        let order = self.order();
        let mut out = RatSeries::zero(order);
        for i in 0..=order {
            if self.coeffs[i].is_zero() {
                continue;
            }
            for j in 0..=order - i {
                if rhs.coeffs[j].is_zero() {
                    continue;
                }
                out.coeffs[i + j] =
                    out.coeffs[i + j].clone() + self.coeffs[i].clone() * rhs.coeffs[j].clone();
            }
        }
        out
    }

    /// Multiplicative inverse; requires an invertible order-0 coefficient.
    pub fn inv(&self) -> Result<RatSeries> {
        if self.coeffs[0].is_zero() {
            return Err(CoreError::DivisionByZero);
        }
        let order = self.order();
        let c0_inv = RatFun::one() / self.coeffs[0].clone();
        let mut out = RatSeries::zero(order);
        out.coeffs[0] = c0_inv.clone();
        for k in 1..=order {
            let mut acc = RatFun::zero();
            for j in 1..=k {
                acc = acc + self.coeffs[j].clone() * out.coeffs[k - j].clone();
            }
            out.coeffs[k] = -(c0_inv.clone() * acc);
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ratfun_reduces() {
        // (x^2 - 1)/(x - 1) = x + 1
        let f = RatFun::new(EP::from_i64(&[-1, 0, 1]), EP::from_i64(&[-1, 1]));
        assert!(f.is_polynomial());
        assert_eq!(f.num(), &EP::from_i64(&[1, 1]));
    }

    #[test]
    fn ratfun_canonical_den_monic() {
        let f = RatFun::new(EP::from_i64(&[1]), EP::from_i64(&[0, 2]));
        assert_eq!(f.den(), &EP::from_i64(&[0, 1]));
        assert_eq!(f.num(), &EP::constant(ExactScalar::from_frac(1, 2)));
    }

    #[test]
    fn field_ops() {
        let a = RatFun::new(EP::from_i64(&[1]), EP::from_i64(&[0, 1])); // 1/x
        let b = RatFun::from_poly(EP::from_i64(&[0, 1])); // x
        assert_eq!(a.clone() * b.clone(), RatFun::one());
        let s = a.clone() + b.clone(); // (x^2+1)/x
        assert_eq!(s.num(), &EP::from_i64(&[1, 0, 1]));
        assert_eq!((s - a).num(), &EP::from_i64(&[0, 1]));
    }

    #[test]
    fn expansion_at_infinity() {
        // 1/(x - 2) = x^-1 + 2 x^-2 + 4 x^-3 + ...
        let f = RatFun::new(EP::one(), EP::from_i64(&[-2, 1]));
        let e = f.expand_at_infinity(3);
        assert_eq!(e.get(&-1), Some(&ExactScalar::from_int(1)));
        assert_eq!(e.get(&-2), Some(&ExactScalar::from_int(2)));
        assert_eq!(e.get(&-3), Some(&ExactScalar::from_int(4)));
        // improper: (x^2+1)/x = x + x^-1
        let g = RatFun::new(EP::from_i64(&[1, 0, 1]), EP::from_i64(&[0, 1]));
        let e = g.expand_at_infinity(2);
        assert_eq!(e.get(&1), Some(&ExactScalar::from_int(1)));
        assert_eq!(e.get(&-1), Some(&ExactScalar::from_int(1)));
        assert_eq!(e.get(&0), None);
    }

    #[test]
    fn series_inverse() {
        // (1 - u)^-1 = 1 + u + u^2 + u^3
        let mut s = RatSeries::one(3);
        s.coeffs[1] = RatFun::constant(ExactScalar::from_int(-1));
        let inv = s.inv().unwrap();
        for k in 0..=3 {
            assert_eq!(inv.coeffs[k], RatFun::one(), "at u^{}", k);
        }
        assert_eq!(s.clone() * inv, RatSeries::one(3));
    }
}

impl std::ops::Add for RatSeries {
    type Output = RatSeries;
    fn add(self, rhs: RatSeries) -> RatSeries {
        RatSeries::add(&self, &rhs)
    }
}

impl std::ops::Mul for RatSeries {
    type Output = RatSeries;
    fn mul(self, rhs: RatSeries) -> RatSeries {
        RatSeries::mul(&self, &rhs)
    }
}

impl std::ops::Neg for RatSeries {
    type Output = RatSeries;
    fn neg(self) -> RatSeries {
        RatSeries::zero(self.order()).sub(&self)
    }
}
