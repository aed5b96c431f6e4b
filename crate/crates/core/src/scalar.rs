//! The two arithmetic backends: exact Gaussian rationals and complex doubles.
//!
//! Identity checks (rank conditions, algebra relations, tau equalities) always
//! run on [`ExactScalar`]; spectral computations run on [`ApproxScalar`] under
//! the global comparison tolerance.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::sync::atomic::{AtomicU64, Ordering};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{CoreError, Result};

static TOL_BITS: AtomicU64 = AtomicU64::new(0);

const DEFAULT_TOL: f64 = 1e-9;

/// Global comparison tolerance for the approximate backend.
pub fn tol() -> f64 {
    let bits = TOL_BITS.load(Ordering::Relaxed);
    if bits == 0 {
        DEFAULT_TOL
    } else {
        f64::from_bits(bits)
    }
}

/// Set the global tolerance. Must be positive.
pub fn set_tol(t: f64) {
    assert!(t > 0.0, "tolerance must be positive");
    TOL_BITS.store(t.to_bits(), Ordering::Relaxed);
}

/// Common interface of the two scalar backends.
///
/// All operations are pure; values are immutable after construction.
pub trait Scalar:
    Clone
    + PartialEq
    + fmt::Debug
    + fmt::Display
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
    + Send
    + Sync
    + 'static
{
    fn zero() -> Self;
    fn one() -> Self;
    fn from_i64(v: i64) -> Self;

    fn is_zero(&self) -> bool;
    /// Exact backend: identically zero. Approx backend: |v| <= tol.
    fn is_negligible(&self) -> bool;
    fn conj(&self) -> Self;
    fn is_real(&self) -> bool;
    fn real_part(&self) -> Self;
    fn imag_part(&self) -> Self;
    fn checked_inv(&self) -> Result<Self>;
    /// Rough magnitude, used for pivot selection.
    fn mag(&self) -> f64;
    fn to_complex(&self) -> Complex64;
}

/// Exact Gaussian rational `re + im*i` with reduced big-rational parts.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ExactScalar {
    pub re: BigRational,
    pub im: BigRational,
}

impl ExactScalar {
    pub fn new(re: BigRational, im: BigRational) -> Self {
        ExactScalar { re, im }
    }

    pub fn from_int(v: i64) -> Self {
        ExactScalar {
            re: BigRational::from_integer(BigInt::from(v)),
            im: BigRational::zero(),
        }
    }

    pub fn from_frac(p: i64, q: i64) -> Self {
        assert!(q != 0);
        ExactScalar {
            re: BigRational::new(BigInt::from(p), BigInt::from(q)),
            im: BigRational::zero(),
        }
    }

    pub fn from_parts(re_p: i64, re_q: i64, im_p: i64, im_q: i64) -> Self {
        assert!(re_q != 0 && im_q != 0);
        ExactScalar {
            re: BigRational::new(BigInt::from(re_p), BigInt::from(re_q)),
            im: BigRational::new(BigInt::from(im_p), BigInt::from(im_q)),
        }
    }

    pub fn i() -> Self {
        ExactScalar {
            re: BigRational::zero(),
            im: BigRational::one(),
        }
    }

    /// |v|^2 as a rational.
    pub fn norm_sq(&self) -> BigRational {
        &self.re * &self.re + &self.im * &self.im
    }

    /// Exact square root, when one exists over the Gaussian rationals.
    pub fn exact_sqrt(&self) -> Option<ExactScalar> {
        if self.im.is_zero() {
            if self.re.is_negative() {
                let r = rational_sqrt(&(-self.re.clone()))?;
                return Some(ExactScalar::new(BigRational::zero(), r));
            }
            let r = rational_sqrt(&self.re)?;
            return Some(ExactScalar::new(r, BigRational::zero()));
        }
        // (a+bi)^2 = re + im*i  =>  a^2 - b^2 = re, 2ab = im,
        // and a^2 + b^2 = |v| which must be rational.
        let n = rational_sqrt(&self.norm_sq())?;
        let two = BigRational::from_integer(BigInt::from(2));
        let a2 = (&n + &self.re) / &two;
        let a = rational_sqrt(&a2)?;
        if a.is_zero() {
            return None;
        }
        let b = &self.im / (&two * &a);
        let cand = ExactScalar::new(a, b);
        if cand.clone() * cand.clone() == *self {
            Some(cand)
        } else {
            None
        }
    }
}

/// Exact square root of a nonnegative rational, if it is a perfect square.
fn rational_sqrt(q: &BigRational) -> Option<BigRational> {
    if q.is_negative() {
        return None;
    }
    let n = q.numer().sqrt();
    let d = q.denom().sqrt();
    if &(&n * &n) == q.numer() && &(&d * &d) == q.denom() {
        Some(BigRational::new(n, d))
    } else {
        None
    }
}

impl fmt::Debug for ExactScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Display for ExactScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.im.is_zero() {
            write!(f, "{}", self.re)
        } else if self.re.is_zero() {
            write!(f, "{}i", self.im)
        } else {
            write!(f, "{}{}{}i", self.re, if self.im.is_negative() { "" } else { "+" }, self.im)
        }
    }
}

impl Add for ExactScalar {
    type Output = ExactScalar;
    fn add(self, rhs: ExactScalar) -> ExactScalar {
        ExactScalar::new(self.re + rhs.re, self.im + rhs.im)
    }
}

impl Sub for ExactScalar {
    type Output = ExactScalar;
    fn sub(self, rhs: ExactScalar) -> ExactScalar {
        ExactScalar::new(self.re - rhs.re, self.im - rhs.im)
    }
}

impl Mul for ExactScalar {
    type Output = ExactScalar;
    fn mul(self, rhs: ExactScalar) -> ExactScalar {
        let re = &self.re * &rhs.re - &self.im * &rhs.im;
        let im = &self.re * &rhs.im + &self.im * &rhs.re;
        ExactScalar::new(re, im)
    }
}

impl Div for ExactScalar {
    type Output = ExactScalar;
    fn div(self, rhs: ExactScalar) -> ExactScalar {
        rhs.checked_inv().expect("division by zero ExactScalar") * self
    }
}

impl Neg for ExactScalar {
    type Output = ExactScalar;
    fn neg(self) -> ExactScalar {
        ExactScalar::new(-self.re, -self.im)
    }
}

impl Scalar for ExactScalar {
    fn zero() -> Self {
        ExactScalar::from_int(0)
    }
    fn one() -> Self {
        ExactScalar::from_int(1)
    }
    fn from_i64(v: i64) -> Self {
        ExactScalar::from_int(v)
    }
    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }
    fn is_negligible(&self) -> bool {
        Scalar::is_zero(self)
    }
    fn conj(&self) -> Self {
        ExactScalar::new(self.re.clone(), -self.im.clone())
    }
    fn is_real(&self) -> bool {
        self.im.is_zero()
    }
    fn real_part(&self) -> Self {
        ExactScalar::new(self.re.clone(), BigRational::zero())
    }
    fn imag_part(&self) -> Self {
        ExactScalar::new(self.im.clone(), BigRational::zero())
    }
    fn checked_inv(&self) -> Result<Self> {
        let n = self.norm_sq();
        if n.is_zero() {
            return Err(CoreError::DivisionByZero);
        }
        Ok(ExactScalar::new(&self.re / &n, -&self.im / &n))
    }
    fn mag(&self) -> f64 {
        let c = self.to_complex();
        c.norm()
    }
    fn to_complex(&self) -> Complex64 {
        Complex64::new(
            self.re.to_f64().unwrap_or(f64::NAN),
            self.im.to_f64().unwrap_or(f64::NAN),
        )
    }
}

/// Complex double with global comparison tolerance.
#[derive(Clone, Copy, PartialEq)]
pub struct ApproxScalar(pub Complex64);

impl ApproxScalar {
    pub fn new(re: f64, im: f64) -> Self {
        ApproxScalar(Complex64::new(re, im))
    }
}

impl fmt::Debug for ApproxScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl fmt::Display for ApproxScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl Add for ApproxScalar {
    type Output = ApproxScalar;
    fn add(self, rhs: ApproxScalar) -> ApproxScalar {
        ApproxScalar(self.0 + rhs.0)
    }
}

impl Sub for ApproxScalar {
    type Output = ApproxScalar;
    fn sub(self, rhs: ApproxScalar) -> ApproxScalar {
        ApproxScalar(self.0 - rhs.0)
    }
}

impl Mul for ApproxScalar {
    type Output = ApproxScalar;
    fn mul(self, rhs: ApproxScalar) -> ApproxScalar {
        ApproxScalar(self.0 * rhs.0)
    }
}

impl Div for ApproxScalar {
    type Output = ApproxScalar;
    fn div(self, rhs: ApproxScalar) -> ApproxScalar {
        ApproxScalar(self.0 / rhs.0)
    }
}

impl Neg for ApproxScalar {
    type Output = ApproxScalar;
    fn neg(self) -> ApproxScalar {
        ApproxScalar(-self.0)
    }
}

impl Scalar for ApproxScalar {
    fn zero() -> Self {
        ApproxScalar(Complex64::new(0.0, 0.0))
    }
    fn one() -> Self {
        ApproxScalar(Complex64::new(1.0, 0.0))
    }
    fn from_i64(v: i64) -> Self {
        ApproxScalar(Complex64::new(v as f64, 0.0))
    }
    fn is_zero(&self) -> bool {
        self.0.re == 0.0 && self.0.im == 0.0
    }
    fn is_negligible(&self) -> bool {
        self.0.norm() <= tol()
    }
    fn conj(&self) -> Self {
        ApproxScalar(self.0.conj())
    }
    fn is_real(&self) -> bool {
        self.0.im.abs() <= tol() * f64::max(1.0, self.0.re.abs())
    }
    fn real_part(&self) -> Self {
        ApproxScalar(Complex64::new(self.0.re, 0.0))
    }
    fn imag_part(&self) -> Self {
        ApproxScalar(Complex64::new(self.0.im, 0.0))
    }
    fn checked_inv(&self) -> Result<Self> {
        if Scalar::is_zero(self) {
            return Err(CoreError::DivisionByZero);
        }
        Ok(ApproxScalar(self.0.inv()))
    }
    fn mag(&self) -> f64 {
        self.0.norm()
    }
    fn to_complex(&self) -> Complex64 {
        self.0
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exact_field_ops() {
        let a = ExactScalar::from_frac(1, 2);
        let b = ExactScalar::i();
        let c = a.clone() + b.clone();
        assert_eq!(c.clone() - b.clone(), a);
        let p = c.clone() * c.clone();
        // (1/2 + i)^2 = 1/4 - 1 + i = -3/4 + i
        assert_eq!(p, ExactScalar::from_parts(-3, 4, 1, 1));
        assert_eq!(c.clone() / c.clone(), ExactScalar::from_int(1));
    }

    #[test]
    fn exact_sqrt_cases() {
        let q = ExactScalar::from_frac(9, 4);
        assert_eq!(q.exact_sqrt().unwrap(), ExactScalar::from_frac(3, 2));
        let m = ExactScalar::from_int(-4);
        assert_eq!(m.exact_sqrt().unwrap(), ExactScalar::from_parts(0, 1, 2, 1));
        // 2i = (1+i)^2
        let t = ExactScalar::from_parts(0, 1, 2, 1);
        assert_eq!(t.exact_sqrt().unwrap(), ExactScalar::from_parts(1, 1, 1, 1));
        assert!(ExactScalar::from_int(2).exact_sqrt().is_none());
    }

    #[test]
    fn approx_is_real_scales() {
        let x = ApproxScalar::new(1e6, 1e-5);
        assert!(x.is_real());
        let y = ApproxScalar::new(0.0, 1e-5);
        assert!(!y.is_real());
    }
}
