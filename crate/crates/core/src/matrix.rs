//! Dense matrices over both scalar backends.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{CoreError, Result};
use crate::poly::UniPoly;
use crate::roots::poly_roots;
use crate::scalar::{tol, ApproxScalar, ExactScalar, Scalar};

#[derive(Clone, PartialEq)]
pub struct Matrix<S: Scalar> {
    rows: usize,
    cols: usize,
    entries: Vec<S>, // row-major
}

impl<S: Scalar> Matrix<S> {
    pub fn new(rows: usize, cols: usize, entries: Vec<S>) -> Self {
        assert_eq!(entries.len(), rows * cols, "entry count mismatch");
        Matrix { rows, cols, entries }
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> S) -> Self {
        let mut entries = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                entries.push(f(i, j));
            }
        }
        Matrix { rows, cols, entries }
    }

    pub fn zero(rows: usize, cols: usize) -> Self {
        Matrix::from_fn(rows, cols, |_, _| S::zero())
    }

    pub fn identity(n: usize) -> Self {
        Matrix::from_fn(n, n, |i, j| if i == j { S::one() } else { S::zero() })
    }

    pub fn diag(values: &[S]) -> Self {
        let n = values.len();
        Matrix::from_fn(n, n, |i, j| if i == j { values[i].clone() } else { S::zero() })
    }

    pub fn from_i64(rows: usize, cols: usize, vals: &[i64]) -> Self {
        assert_eq!(vals.len(), rows * cols);
        Matrix::new(rows, cols, vals.iter().map(|&v| S::from_i64(v)).collect())
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn at(&self, i: usize, j: usize) -> &S {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: S) {
        self.entries[i * self.cols + j] = v;
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn require_square(&self) -> Result<usize> {
        if self.is_square() {
            Ok(self.rows)
        } else {
            Err(CoreError::NotSquare { rows: self.rows, cols: self.cols })
        }
    }

    pub fn transpose(&self) -> Self {
        Matrix::from_fn(self.cols, self.rows, |i, j| self.at(j, i).clone())
    }

    pub fn conj(&self) -> Self {
        Matrix::from_fn(self.rows, self.cols, |i, j| self.at(i, j).conj())
    }

    pub fn real_part(&self) -> Self {
        Matrix::from_fn(self.rows, self.cols, |i, j| self.at(i, j).real_part())
    }

    pub fn imag_part(&self) -> Self {
        Matrix::from_fn(self.rows, self.cols, |i, j| self.at(i, j).imag_part())
    }

    pub fn has_real_entries(&self) -> bool {
        self.entries.iter().all(|e| e.is_real())
    }

    pub fn scale(&self, c: &S) -> Self {
        Matrix::from_fn(self.rows, self.cols, |i, j| self.at(i, j).clone() * c.clone())
    }

    pub fn trace(&self) -> S {
        let mut t = S::zero();
        for i in 0..self.rows.min(self.cols) {
            t = t + self.at(i, i).clone();
        }
        t
    }

    pub fn commutator(&self, other: &Self) -> Self {
        self.clone() * other.clone() - other.clone() * self.clone()
    }

    pub fn pow(&self, k: usize) -> Self {
        let n = self.rows;
        let mut acc = Matrix::identity(n);
        for _ in 0..k {
            acc = acc * self.clone();
        }
        acc
    }

    pub fn max_mag(&self) -> f64 {
        self.entries.iter().map(|e| e.mag()).fold(0.0, f64::max)
    }

    /// Determinant by Gaussian elimination with magnitude pivoting.
    pub fn det(&self) -> Result<S> {
        let n = self.require_square()?;
        let mut m = self.clone();
        let mut det = S::one();
        for col in 0..n {
            let pivot = (col..n)
                .filter(|&r| !m.at(r, col).is_negligible())
                .max_by(|&a, &b| {
                    m.at(a, col)
                        .mag()
                        .partial_cmp(&m.at(b, col).mag())
                        .unwrap_or(std::cmp::Ordering::Equal)
                });
            let pivot = match pivot {
                Some(p) => p,
                None => return Ok(S::zero()),
            };
            if pivot != col {
                for j in 0..n {
                    let a = m.at(pivot, j).clone();
                    let b = m.at(col, j).clone();
                    m.set(pivot, j, b);
                    m.set(col, j, a);
                }
                det = -det;
            }
            let p = m.at(col, col).clone();
            det = det * p.clone();
            let pinv = p.checked_inv()?;
            for r in col + 1..n {
                let factor = m.at(r, col).clone() * pinv.clone();
                if factor.is_zero() {
                    continue;
                }
                for j in col..n {
                    let v = m.at(r, j).clone() - factor.clone() * m.at(col, j).clone();
                    m.set(r, j, v);
                }
            }
        }
        Ok(det)
    }

    /// Characteristic polynomial det(xI - M) by the Faddeev-LeVerrier recursion.
    pub fn char_poly(&self) -> Result<UniPoly<S>> {
        let n = self.require_square()?;
        let mut coeffs = vec![S::zero(); n + 1];
        coeffs[n] = S::one();
        let mut mk = Matrix::<S>::identity(n);
        for k in 1..=n {
            mk = self.clone() * mk;
            let c = -(mk.trace() / S::from_i64(k as i64));
            coeffs[n - k] = c.clone();
            for i in 0..n {
                let v = mk.at(i, i).clone() + c.clone();
                mk.set(i, i, v);
            }
        }
        Ok(UniPoly::new(coeffs))
    }

    /// Inverse by Gauss-Jordan elimination.
    pub fn inverse(&self) -> Result<Self> {
        let n = self.require_square()?;
        let mut m = self.clone();
        let mut inv = Matrix::<S>::identity(n);
        for col in 0..n {
            let pivot = (col..n)
                .filter(|&r| !m.at(r, col).is_negligible())
                .max_by(|&a, &b| {
                    m.at(a, col)
                        .mag()
                        .partial_cmp(&m.at(b, col).mag())
                        .unwrap_or(std::cmp::Ordering::Equal)
                })
                .ok_or(CoreError::Singular)?;
            if pivot != col {
                for j in 0..n {
                    let a = m.at(pivot, j).clone();
                    let b = m.at(col, j).clone();
                    m.set(pivot, j, b);
                    m.set(col, j, a);
                    let a = inv.at(pivot, j).clone();
                    let b = inv.at(col, j).clone();
                    inv.set(pivot, j, b);
                    inv.set(col, j, a);
                }
            }
            let pinv = m.at(col, col).clone().checked_inv()?;
            for j in 0..n {
                let v = m.at(col, j).clone() * pinv.clone();
                m.set(col, j, v);
                let v = inv.at(col, j).clone() * pinv.clone();
                inv.set(col, j, v);
            }
            for r in 0..n {
                if r == col || m.at(r, col).is_zero() {
                    continue;
                }
                let factor = m.at(r, col).clone();
                for j in 0..n {
                    let v = m.at(r, j).clone() - factor.clone() * m.at(col, j).clone();
                    m.set(r, j, v);
                    let v = inv.at(r, j).clone() - factor.clone() * inv.at(col, j).clone();
                    inv.set(r, j, v);
                }
            }
        }
        Ok(inv)
    }

    /// Row-echelon rank; negligible pivots are treated as zero, which makes
    /// this exact on the exact backend and tolerance-based on the approximate
    /// one.
    pub fn rank(&self) -> usize {
        let mut m = self.clone();
        let mut rank = 0;
        let mut row = 0;
        for col in 0..m.cols {
            let pivot = (row..m.rows)
                .filter(|&r| !m.at(r, col).is_negligible())
                .max_by(|&a, &b| {
                    m.at(a, col)
                        .mag()
                        .partial_cmp(&m.at(b, col).mag())
                        .unwrap_or(std::cmp::Ordering::Equal)
                });
            let pivot = match pivot {
                Some(p) => p,
                None => continue,
            };
            if pivot != row {
                for j in 0..m.cols {
                    let a = m.at(pivot, j).clone();
                    let b = m.at(row, j).clone();
                    m.set(pivot, j, b);
                    m.set(row, j, a);
                }
            }
            let pinv = m.at(row, col).clone().checked_inv().expect("non-negligible pivot");
            for r in row + 1..m.rows {
                let factor = m.at(r, col).clone() * pinv.clone();
                if factor.is_zero() {
                    continue;
                }
                for j in col..m.cols {
                    let v = m.at(r, j).clone() - factor.clone() * m.at(row, j).clone();
                    m.set(r, j, v);
                }
            }
            rank += 1;
            row += 1;
            if row == m.rows {
                break;
            }
        }
        rank
    }

    /// A basis for the (right) nullspace, as column vectors.
    pub fn nullspace(&self) -> Vec<Vec<S>> {
        let mut m = self.clone();
        let mut pivots: Vec<(usize, usize)> = Vec::new(); // (row, col)
        let mut row = 0;
        for col in 0..m.cols {
            let pivot = (row..m.rows)
                .filter(|&r| !m.at(r, col).is_negligible())
                .max_by(|&a, &b| {
                    m.at(a, col)
                        .mag()
                        .partial_cmp(&m.at(b, col).mag())
                        .unwrap_or(std::cmp::Ordering::Equal)
                });
            let pivot = match pivot {
                Some(p) => p,
                None => continue,
            };
            if pivot != row {
                for j in 0..m.cols {
                    let a = m.at(pivot, j).clone();
                    let b = m.at(row, j).clone();
                    m.set(pivot, j, b);
                    m.set(row, j, a);
                }
            }
            let pinv = m.at(row, col).clone().checked_inv().expect("pivot");
            for j in 0..m.cols {
                let v = m.at(row, j).clone() * pinv.clone();
                m.set(row, j, v);
            }
            for r in 0..m.rows {
                if r == row || m.at(r, col).is_zero() {
                    continue;
                }
                let factor = m.at(r, col).clone();
                for j in 0..m.cols {
                    let v = m.at(r, j).clone() - factor.clone() * m.at(row, j).clone();
                    m.set(r, j, v);
                }
            }
            pivots.push((row, col));
            row += 1;
            if row == m.rows {
                break;
            }
        }
        let pivot_cols: Vec<usize> = pivots.iter().map(|&(_, c)| c).collect();
        let mut basis = Vec::new();
        for free in 0..m.cols {
            if pivot_cols.contains(&free) {
                continue;
            }
            let mut v = vec![S::zero(); m.cols];
            v[free] = S::one();
            for &(r, c) in &pivots {
                v[c] = -m.at(r, free).clone();
            }
            basis.push(v);
        }
        basis
    }

    /// Column-space basis as a (rows x rank) matrix.
    pub fn column_space_basis(&self) -> Matrix<S> {
        let mut m = self.clone();
        let mut pivot_cols = Vec::new();
        let mut row = 0;
        for col in 0..m.cols {
            let pivot = (row..m.rows)
                .filter(|&r| !m.at(r, col).is_negligible())
                .max_by(|&a, &b| {
                    m.at(a, col)
                        .mag()
                        .partial_cmp(&m.at(b, col).mag())
                        .unwrap_or(std::cmp::Ordering::Equal)
                });
            let pivot = match pivot {
                Some(p) => p,
                None => continue,
            };
            if pivot != row {
                for j in 0..m.cols {
                    let a = m.at(pivot, j).clone();
                    let b = m.at(row, j).clone();
                    m.set(pivot, j, b);
                    m.set(row, j, a);
                }
            }
            let pinv = m.at(row, col).clone().checked_inv().expect("pivot");
            for r in row + 1..m.rows {
                let factor = m.at(r, col).clone() * pinv.clone();
                for j in col..m.cols {
                    let v = m.at(r, j).clone() - factor.clone() * m.at(row, j).clone();
                    m.set(r, j, v);
                }
            }
            pivot_cols.push(col);
            row += 1;
            if row == m.rows {
                break;
            }
        }
        Matrix::from_fn(self.rows, pivot_cols.len(), |i, j| self.at(i, pivot_cols[j]).clone())
    }

    /// Eigenvalues as roots of the characteristic polynomial.
    pub fn eigenvalues(&self) -> Result<Spectrum> {
        let n = self.require_square()?;
        let chi = self.char_poly()?;
        let approx = UniPoly::new(chi.coeffs().iter().map(|c| ApproxScalar(c.to_complex())).collect());
        let mut values = poly_roots(&approx)?;
        debug_assert_eq!(values.len(), n);
        values.sort_by(|a, b| {
            (a.0.re, a.0.im)
                .partial_cmp(&(b.0.re, b.0.im))
                .unwrap_or(std::cmp::Ordering::Equal)
        });
        Ok(Spectrum { values })
    }
}

impl Matrix<ExactScalar> {
    pub fn to_approx(&self) -> Matrix<ApproxScalar> {
        Matrix::from_fn(self.rows, self.cols, |i, j| ApproxScalar(self.at(i, j).to_complex()))
    }
}

impl<S: Scalar> Add for Matrix<S> {
    type Output = Matrix<S>;
    fn add(self, rhs: Matrix<S>) -> Matrix<S> {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        Matrix::from_fn(self.rows, self.cols, |i, j| self.at(i, j).clone() + rhs.at(i, j).clone())
    }
}

impl<S: Scalar> Sub for Matrix<S> {
    type Output = Matrix<S>;
    fn sub(self, rhs: Matrix<S>) -> Matrix<S> {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        Matrix::from_fn(self.rows, self.cols, |i, j| self.at(i, j).clone() - rhs.at(i, j).clone())
    }
}

impl<S: Scalar> Neg for Matrix<S> {
    type Output = Matrix<S>;
    fn neg(self) -> Matrix<S> {
        Matrix::from_fn(self.rows, self.cols, |i, j| -self.at(i, j).clone())
    }
}

impl<S: Scalar> Mul for Matrix<S> {
    type Output = Matrix<S>;
    fn mul(self, rhs: Matrix<S>) -> Matrix<S> {
        assert_eq!(self.cols, rhs.rows, "matrix product shape mismatch");
        Matrix::from_fn(self.rows, rhs.cols, |i, j| {
            let mut acc = S::zero();
            for k in 0..self.cols {
                acc = acc + self.at(i, k).clone() * rhs.at(k, j).clone();
            }
            acc
        })
    }
}

impl<S: Scalar> fmt::Debug for Matrix<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            write!(f, "  ")?;
            for j in 0..self.cols {
                write!(f, "{}  ", self.at(i, j))?;
            }
            writeln!(f)?;
        }
        write!(f, "]")
    }
}

/// Multiset of approximate eigenvalues in canonical (re, im) order.
#[derive(Clone, Debug, PartialEq)]
pub struct Spectrum {
    pub values: Vec<ApproxScalar>,
}

impl Spectrum {
    pub fn from_exact(values: &[ExactScalar]) -> Self {
        let mut values: Vec<ApproxScalar> = values.iter().map(|v| ApproxScalar(v.to_complex())).collect();
        values.sort_by(|a, b| {
            (a.0.re, a.0.im)
                .partial_cmp(&(b.0.re, b.0.im))
                .unwrap_or(std::cmp::Ordering::Equal)
        });
        Spectrum { values }
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn is_real(&self) -> bool {
        self.values.iter().all(|v| v.is_real())
    }

    /// Multiset equality under tolerance, decided by a perfect matching on
    /// the bipartite graph of pairs within `threshold`. Sorted-order
    /// comparison is unstable near ties, matching is not.
    pub fn matches(&self, other: &Spectrum, threshold: f64) -> bool {
        if self.len() != other.len() {
            return false;
        }
        let n = self.len();
        let adj: Vec<Vec<usize>> = (0..n)
            .map(|i| {
                (0..n)
                    .filter(|&j| (self.values[i].0 - other.values[j].0).norm() <= threshold)
                    .collect()
            })
            .collect();
        // Kuhn's augmenting-path matching.
        let mut matched = vec![usize::MAX; n];
        fn try_assign(i: usize, adj: &[Vec<usize>], seen: &mut [bool], matched: &mut [usize]) -> bool {
            for &j in &adj[i] {
                if !seen[j] {
                    seen[j] = true;
                    if matched[j] == usize::MAX || try_assign(matched[j], adj, seen, matched) {
                        matched[j] = i;
                        return true;
                    }
                }
            }
            false
        }
        for i in 0..n {
            let mut seen = vec![false; n];
            if !try_assign(i, &adj, &mut seen, &mut matched) {
                return false;
            }
        }
        true
    }

    pub fn matches_default(&self, other: &Spectrum) -> bool {
        let scale = self
            .values
            .iter()
            .chain(&other.values)
            .map(|v| v.mag())
            .fold(1.0, f64::max);
        self.matches(other, tol() * scale)
    }
}

/// Constructive realification of an intertwiner (Lemma conj shape).
///
/// Given real matrix lists with `y_j * g = g * x_j` for a complex invertible
/// `g`, scans `a = 1 + k*i` for `k = 0..=n` until `Re(a*g)` is invertible and
/// returns it; det Re((1+ti)g) is a nonzero real polynomial of degree <= n in
/// t, so some integer k <= n works.
pub fn realify_conjugation(
    x_list: &[Matrix<ExactScalar>],
    y_list: &[Matrix<ExactScalar>],
    g: &Matrix<ExactScalar>,
) -> Result<Matrix<ExactScalar>> {
    let n = g.require_square()?;
    if x_list.len() != y_list.len() {
        return Err(CoreError::DimensionMismatch("list lengths differ".into()));
    }
    for m in x_list.iter().chain(y_list) {
        if !m.has_real_entries() {
            return Err(CoreError::Precondition("matrix lists must be real".into()));
        }
    }
    for (x, y) in x_list.iter().zip(y_list) {
        if y.clone() * g.clone() != g.clone() * x.clone() {
            return Err(CoreError::Precondition("g does not intertwine the lists".into()));
        }
    }
    for k in 0..=n as i64 {
        let a = ExactScalar::from_parts(1, 1, k, 1);
        let h = g.scale(&a).real_part();
        if !Scalar::is_zero(&h.det()?) {
            for (x, y) in x_list.iter().zip(y_list) {
                debug_assert_eq!(y.clone() * h.clone(), h.clone() * x.clone());
            }
            return Ok(h);
        }
    }
    Err(CoreError::Internal("no real part of a*g was invertible".into()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::prelude::*;
    use rand_chacha::ChaCha8Rng;

    type EM = Matrix<ExactScalar>;

    fn rand_rational_matrix(rng: &mut ChaCha8Rng, n: usize) -> EM {
        Matrix::from_fn(n, n, |_, _| {
            ExactScalar::from_frac(rng.gen_range(-6..=6), rng.gen_range(1..=4))
        })
    }

    fn rand_invertible(rng: &mut ChaCha8Rng, n: usize) -> EM {
        loop {
            let g = Matrix::from_fn(n, n, |_, _| {
                ExactScalar::from_parts(
                    rng.gen_range(-4..=4),
                    1,
                    rng.gen_range(-4..=4),
                    1,
                )
            });
            if !Scalar::is_zero(&g.det().unwrap()) {
                return g;
            }
        }
    }

    #[test]
    fn det_examples() {
        assert_eq!(EM::identity(3).det().unwrap(), ExactScalar::from_int(1));
        assert_eq!(EM::from_i64(2, 2, &[1, 1, 1, 1]).det().unwrap(), ExactScalar::from_int(0));
        // [[alpha_1, 1/2], [-1/2, alpha_2]] with alpha = (1, 0)
        let m = Matrix::new(
            2,
            2,
            vec![
                ExactScalar::from_int(1),
                ExactScalar::from_frac(1, 2),
                ExactScalar::from_frac(-1, 2),
                ExactScalar::from_int(0),
            ],
        );
        assert_eq!(m.det().unwrap(), ExactScalar::from_frac(1, 4));
    }

    #[test]
    fn char_poly_examples() {
        let d = EM::diag(&[ExactScalar::from_int(1), ExactScalar::from_int(-1)]);
        assert_eq!(d.char_poly().unwrap(), UniPoly::from_i64(&[-1, 0, 1]));
        // Z at lambda=(1,-1), alpha=(1,0): trace 1, det 1/4 -> x^2 - x + 1/4
        let z = Matrix::new(
            2,
            2,
            vec![
                ExactScalar::from_int(1),
                ExactScalar::from_frac(1, 2),
                ExactScalar::from_frac(-1, 2),
                ExactScalar::from_int(0),
            ],
        );
        let chi = z.char_poly().unwrap();
        assert_eq!(
            chi,
            UniPoly::new(vec![
                ExactScalar::from_frac(1, 4),
                ExactScalar::from_int(-1),
                ExactScalar::from_int(1),
            ])
        );
        let nil = EM::from_i64(2, 2, &[0, 1, 0, 0]);
        assert_eq!(nil.char_poly().unwrap(), UniPoly::from_i64(&[0, 0, 1]));
    }

    #[test]
    fn rank_examples() {
        assert_eq!(EM::from_i64(2, 2, &[1, 1, 1, 1]).rank(), 1);
        assert_eq!(EM::identity(4).rank(), 4);
        assert_eq!(EM::zero(3, 3).rank(), 0);
    }

    #[test]
    fn eigenvalue_examples() {
        let z = Matrix::new(
            2,
            2,
            vec![
                ExactScalar::from_int(0),
                ExactScalar::from_frac(1, 2),
                ExactScalar::from_frac(-1, 2),
                ExactScalar::from_int(0),
            ],
        );
        let spec = z.to_approx().eigenvalues().unwrap();
        let expected = Spectrum::from_exact(&[
            ExactScalar::from_parts(0, 1, 1, 2),
            ExactScalar::from_parts(0, 1, -1, 2),
        ]);
        assert!(spec.matches(&expected, 1e-8));

        let z2 = Matrix::new(
            2,
            2,
            vec![
                ExactScalar::from_int(1),
                ExactScalar::from_frac(1, 2),
                ExactScalar::from_frac(-1, 2),
                ExactScalar::from_int(0),
            ],
        );
        let spec2 = z2.to_approx().eigenvalues().unwrap();
        let expected2 =
            Spectrum::from_exact(&[ExactScalar::from_frac(1, 2), ExactScalar::from_frac(1, 2)]);
        assert!(spec2.matches(&expected2, 1e-5));
    }

    #[test]
    fn cayley_hamilton_random() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for n in 1..=6usize {
            let m = rand_rational_matrix(&mut rng, n);
            let chi = m.char_poly().unwrap();
            // evaluate chi at the matrix
            let mut acc = EM::zero(n, n);
            for (k, c) in chi.coeffs().iter().enumerate() {
                acc = acc + m.pow(k).scale(c);
            }
            assert_eq!(acc, EM::zero(n, n), "Cayley-Hamilton failed at n={}", n);
            // det = (-1)^n * constant coefficient
            let det = m.det().unwrap();
            let c0 = chi.coeff(0);
            let sign = if n % 2 == 0 { ExactScalar::from_int(1) } else { ExactScalar::from_int(-1) };
            assert_eq!(det, c0 * sign);
        }
    }

    #[test]
    fn conjugation_invariance_of_spectrum() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..10 {
            let n = rng.gen_range(2..=5usize);
            let m = rand_rational_matrix(&mut rng, n);
            let g = rand_invertible(&mut rng, n);
            let conj = g.clone() * m.clone() * g.inverse().unwrap();
            let s1 = m.to_approx().eigenvalues().unwrap();
            let s2 = conj.to_approx().eigenvalues().unwrap();
            let scale = f64::max(1.0, m.max_mag());
            assert!(s1.matches(&s2, 1e-6 * scale));
        }
    }

    #[test]
    fn inverse_roundtrip() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let g = rand_invertible(&mut rng, 4);
        assert_eq!(g.clone() * g.inverse().unwrap(), EM::identity(4));
    }

    #[test]
    fn realify_scaling_case() {
        // X = Y = [[0,1],[0,0]], g = i*I
        let x = EM::from_i64(2, 2, &[0, 1, 0, 0]);
        let g = EM::identity(2).scale(&ExactScalar::i());
        let h = realify_conjugation(&[x.clone()], &[x.clone()], &g).unwrap();
        assert!(h.has_real_entries());
        assert!(!Scalar::is_zero(&h.det().unwrap()));
        assert_eq!(x.clone() * h.clone(), h.clone() * x.clone());
    }

    #[test]
    fn realify_real_g_passthrough() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let x = rand_rational_matrix(&mut rng, 3);
        let g = loop {
            let g = rand_rational_matrix(&mut rng, 3);
            if !Scalar::is_zero(&g.det().unwrap()) {
                break g;
            }
        };
        let y = g.clone() * x.clone() * g.inverse().unwrap();
        // y is rational real; g real: h = Re(g) = g works
        let h = realify_conjugation(&[x.clone()], &[y.clone()], &g).unwrap();
        assert_eq!(h, g);
    }

    #[test]
    fn realify_diagonal_example() {
        // X = Y = diag(1,2), g = diag(i, 1+i)
        let x = EM::diag(&[ExactScalar::from_int(1), ExactScalar::from_int(2)]);
        let g = EM::diag(&[
            ExactScalar::from_parts(0, 1, 1, 1),
            ExactScalar::from_parts(1, 1, 1, 1),
        ]);
        let h = realify_conjugation(&[x.clone()], &[x.clone()], &g).unwrap();
        assert!(h.has_real_entries());
        assert_eq!(x.clone() * h.clone(), h.clone() * x.clone());
        assert!(!Scalar::is_zero(&h.det().unwrap()));
    }

    #[test]
    fn realify_rejects_non_intertwiner() {
        let x = EM::from_i64(2, 2, &[0, 1, 0, 0]);
        let y = EM::from_i64(2, 2, &[1, 0, 0, 0]);
        let g = EM::identity(2);
        assert!(realify_conjugation(&[x], &[y], &g).is_err());
    }
}
