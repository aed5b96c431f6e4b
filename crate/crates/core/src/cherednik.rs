//! Finite-dimensional representations of the rational Cherednik algebra
//! H_{0,c}(S_n) at regular semisimple points, realized on functions on a free
//! S_n-orbit: group elements permute basis vectors, x_i act diagonally, and
//! y_i act by diagonal terms plus Dunkl-type difference corrections. All
//! defining relations are verified exactly at construction.

use crate::cm::{validate, CMPair};
use crate::error::{CoreError, Result};
use crate::matrix::Matrix;
use crate::roots::real_roots_certified;
use crate::scalar::{ApproxScalar, ExactScalar, Scalar};

type E = ExactScalar;

/// All permutations of {0..n−1} in lexicographic order; identity first.
pub fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut cur: Vec<usize> = (0..n).collect();
    let mut out = vec![cur.clone()];
    // Standard next-permutation loop.
    loop {
        let Some(i) = (0..n.saturating_sub(1)).rev().find(|&i| cur[i] < cur[i + 1]) else {
            break;
        };
        let j = (i + 1..n).rev().find(|&j| cur[j] > cur[i]).unwrap();
        cur.swap(i, j);
        cur[i + 1..].reverse();
        out.push(cur.clone());
    }
    out
}

fn compose(a: &[usize], b: &[usize]) -> Vec<usize> {
    b.iter().map(|&k| a[k]).collect()
}

fn invert(p: &[usize]) -> Vec<usize> {
    let mut inv = vec![0; p.len()];
    for (k, &v) in p.iter().enumerate() {
        inv[v] = k;
    }
    inv
}

fn transposition(n: usize, i: usize, j: usize) -> Vec<usize> {
    let mut t: Vec<usize> = (0..n).collect();
    t.swap(i, j);
    t
}

/// An n!-dimensional representation of H_{0,c}(S_n) built from a free orbit
/// of a regular point (λ, μ): basis δ_σ ↔ (σ·λ, σ·μ), group elements act by
/// δ_σ ↦ δ_{gσ}, x_i by the diagonal value λ_{σ^{-1}(i)}, and y_i by
/// μ_{σ^{-1}(i)} plus Σ_{j≠i} c (λ_{σ^{-1}(i)} − λ_{σ^{-1}(j)})^{-1}(s_{ij} − 1).
#[derive(Clone, Debug)]
pub struct DunklRep {
    pub n: usize,
    pub dim: usize,
    pub c: E,
    pub lambda: Vec<E>,
    pub mu: Vec<E>,
    pub perms: Vec<Vec<usize>>,
    pub ops_x: Vec<Matrix<E>>,
    pub ops_y: Vec<Matrix<E>>,
}

impl DunklRep {
    fn index_of(&self, p: &[usize]) -> usize {
        self.perms.iter().position(|q| q == p).expect("permutation index")
    }

    /// Permutation matrix of g acting by δ_σ ↦ δ_{gσ}.
    pub fn perm_matrix(&self, g: &[usize]) -> Matrix<E> {
        let mut m = Matrix::zero(self.dim, self.dim);
        for (col, sigma) in self.perms.iter().enumerate() {
            let row = self.index_of(&compose(g, sigma));
            m.set(row, col, E::one());
        }
        m
    }

    /// Matrices of all transpositions s_{ij}, i < j, in row-major order.
    pub fn transposition_matrices(&self) -> Vec<(usize, usize, Matrix<E>)> {
        let mut out = Vec::new();
        for i in 0..self.n {
            for j in i + 1..self.n {
                out.push((i, j, self.perm_matrix(&transposition(self.n, i, j))));
            }
        }
        out
    }

    /// Full generator list: x_1..x_n, y_1..y_n, all transposition matrices.
    pub fn generators(&self) -> Vec<Matrix<E>> {
        let mut gens: Vec<Matrix<E>> = self.ops_x.iter().chain(&self.ops_y).cloned().collect();
        gens.extend(self.transposition_matrices().into_iter().map(|(_, _, m)| m));
        gens
    }
}

/// Builds the orbit representation and verifies every defining relation
/// exactly; any relation failure is a construction bug and errors loudly.
pub fn build_dunkl_rep(lambda: &[E], mu: &[E], c: &E) -> Result<DunklRep> {
    let n = lambda.len();
    if mu.len() != n {
        return Err(CoreError::DimensionMismatch(format!(
            "lambda has {} entries, mu has {}",
            n,
            mu.len()
        )));
    }
    for i in 0..n {
        for j in i + 1..n {
            if lambda[i] == lambda[j] {
                return Err(CoreError::RepeatedLambda);
            }
        }
    }
    let perms = permutations(n);
    let dim = perms.len();
    let invs: Vec<Vec<usize>> = perms.iter().map(|p| invert(p)).collect();
    let index = |p: &[usize]| perms.iter().position(|q| q == p).unwrap();

    let mut ops_x = Vec::with_capacity(n);
    let mut ops_y = Vec::with_capacity(n);
    for i in 0..n {
        let mut x = Matrix::zero(dim, dim);
        let mut y: Matrix<E> = Matrix::zero(dim, dim);
        for (col, sigma) in perms.iter().enumerate() {
            let si = invs[col][i];
            x.set(col, col, lambda[si].clone());
            let mut diag = mu[si].clone();
            for j in 0..n {
                if j == i {
                    continue;
                }
                let sj = invs[col][j];
                let w = c.clone()
                    * (lambda[si].clone() - lambda[sj].clone()).checked_inv()?;
                let row = index(&compose(&transposition(n, i, j), sigma));
                // The difference-term weight multiplies after the group
                // action, so the off-diagonal coefficient is the weight
                // evaluated at the permuted point: the negative of w.
                let cur = y.at(row, col).clone();
                y.set(row, col, cur - w.clone());
                diag = diag - w;
            }
            let cur = y.at(col, col).clone();
            y.set(col, col, cur + diag);
        }
        ops_x.push(x);
        ops_y.push(y);
    }

    let rep = DunklRep { n, dim, c: c.clone(), lambda: lambda.to_vec(), mu: mu.to_vec(), perms, ops_x, ops_y };
    check_relations(&rep)?;
    Ok(rep)
}

/// Exhaustive exact check of the H_{0,c}(S_n) defining relations.
fn check_relations(rep: &DunklRep) -> Result<()> {
    let n = rep.n;
    let fail = |what: String| Err(CoreError::Internal(format!("relation failed: {what}")));
    let trans = rep.transposition_matrices();
    let s_mat = |i: usize, j: usize| -> &Matrix<E> {
        let (a, b) = if i < j { (i, j) } else { (j, i) };
        &trans.iter().find(|(p, q, _)| *p == a && *q == b).unwrap().2
    };
    for i in 0..n {
        for j in 0..n {
            let (xi, yj) = (&rep.ops_x[i], &rep.ops_y[j]);
            if i != j {
                // Commutativity within each family.
                if xi.clone() * rep.ops_x[j].clone() != rep.ops_x[j].clone() * xi.clone() {
                    return fail(format!("[x_{i}, x_{j}] != 0"));
                }
                if rep.ops_y[i].clone() * yj.clone() != yj.clone() * rep.ops_y[i].clone() {
                    return fail(format!("[y_{i}, y_{j}] != 0"));
                }
                // y_j x_i − x_i y_j = c s_{ij}; with [a,b] = ab − ba this
                // reads [x_i, y_j] = −c s_{ij}. This orientation is the one
                // under which x_1, y_1 restricted to the symmetrized
                // subspace satisfy the rank-one condition.
                let comm = xi.clone() * yj.clone() - yj.clone() * xi.clone();
                if comm != s_mat(i, j).scale(&(E::zero() - rep.c.clone())) {
                    return fail(format!("[x_{i}, y_{j}] != -c s"));
                }
            } else {
                // y_k x_k − x_k y_k = −c Σ_{i≠k} s_{ik}.
                let comm = xi.clone() * yj.clone() - yj.clone() * xi.clone();
                let mut sum: Matrix<E> = Matrix::zero(rep.dim, rep.dim);
                for k in 0..n {
                    if k != i {
                        sum = sum + s_mat(i, k).clone();
                    }
                }
                if comm != sum.scale(&rep.c) {
                    return fail(format!("[x_{i}, y_{i}] != c Σ s"));
                }
            }
        }
    }
    // Equivariance: s_{ij} x_i = x_j s_{ij} and likewise for y.
    for (i, j, s) in &trans {
        if s.clone() * rep.ops_x[*i].clone() != rep.ops_x[*j].clone() * s.clone() {
            return fail(format!("s x_{i} != x_{j} s"));
        }
        if s.clone() * rep.ops_y[*i].clone() != rep.ops_y[*j].clone() * s.clone() {
            return fail(format!("s y_{i} != y_{j} s"));
        }
    }
    Ok(())
}

/// Which averaging idempotent to build.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SymmetrizerKind {
    /// e = (1/n!) Σ_{σ ∈ S_n} σ.
    Full,
    /// ē = (1/(n−1)!) Σ over permutations fixing the first index.
    LastFactorial,
}

/// The idempotent matrix of the requested symmetrizer; idempotency is
/// verified exactly.
pub fn symmetrizer(rep: &DunklRep, kind: SymmetrizerKind) -> Result<Matrix<E>> {
    let mut sum = Matrix::zero(rep.dim, rep.dim);
    let mut count = 0i64;
    for g in permutations(rep.n) {
        if kind == SymmetrizerKind::LastFactorial && g[0] != 0 {
            continue;
        }
        sum = sum + rep.perm_matrix(&g);
        count += 1;
    }
    let e = sum.scale(&E::from_int(count).checked_inv()?);
    if e.clone() * e.clone() != e {
        return Err(CoreError::Internal("symmetrizer not idempotent".into()));
    }
    Ok(e)
}

/// Restricts `op` to the column space of `basis` (n!×n, full column rank),
/// returning the n×n coefficient matrix; errors if the space is not
/// invariant.
fn restrict_to(op: &Matrix<E>, basis: &Matrix<E>) -> Result<Matrix<E>> {
    let d = basis.rows();
    let n = basis.cols();
    // Select n rows on which the basis is invertible.
    let mut rows: Vec<usize> = Vec::new();
    let mut probe = Matrix::zero(0, n);
    for r in 0..d {
        if rows.len() == n {
            break;
        }
        let mut cand = Matrix::zero(rows.len() + 1, n);
        for (ri, &rr) in rows.iter().enumerate() {
            for c in 0..n {
                cand.set(ri, c, basis.at(rr, c).clone());
            }
        }
        for c in 0..n {
            cand.set(rows.len(), c, basis.at(r, c).clone());
        }
        if cand.rank() == rows.len() + 1 {
            rows.push(r);
            probe = cand;
        }
    }
    if rows.len() < n {
        return Err(CoreError::Internal("basis has deficient column rank".into()));
    }
    let image = op.clone() * basis.clone();
    let image_rows = Matrix::from_fn(n, n, |i, j| image.at(rows[i], j).clone());
    let coeffs = probe.inverse()? * image_rows;
    if basis.clone() * coeffs.clone() != image {
        return Err(CoreError::Internal("operator does not preserve the subspace".into()));
    }
    Ok(coeffs)
}

/// Restricts (x_1, y_1) to the image of ē, which carries the rank-one
/// commutator condition; the output passes the exact validity check.
pub fn extract_cm_pair(rep: &DunklRep) -> Result<CMPair<E>> {
    let ebar = symmetrizer(rep, SymmetrizerKind::LastFactorial)?;
    let basis = ebar.column_space_basis();
    if basis.cols() != rep.n {
        return Err(CoreError::Internal(format!(
            "ē has rank {}, expected {}",
            basis.cols(), rep.n
        )));
    }
    let x = restrict_to(&rep.ops_x[0], &basis)?;
    let z = restrict_to(&rep.ops_y[0], &basis)?;
    validate(&x, &z)
}

/// Character check: as an S_n-module the orbit representation is regular —
/// tr(σ) = 0 for σ ≠ id and tr(id) = n!.
pub fn regular_character_check(rep: &DunklRep) -> bool {
    permutations(rep.n).iter().all(|g| {
        let t = rep.perm_matrix(g).trace();
        if g.iter().enumerate().all(|(k, &v)| k == v) {
            t == E::from_int(rep.dim as i64)
        } else {
            Scalar::is_zero(&t)
        }
    })
}

/// Outcome of one Main Theorem instance.
#[derive(Clone, Debug, PartialEq)]
pub struct CherednikReport {
    /// Both extracted characteristic polynomials real and certified
    /// real-rooted; `None` when extraction hits a non-regular point.
    pub hypothesis: Option<bool>,
    /// The full generator list admits a simultaneous real form; `None` when
    /// not evaluated (non-regular extracted pair).
    pub conclusion: Option<bool>,
    /// Max |Im α| residual from realifying the extracted pair, when taken.
    pub pair_residual: Option<f64>,
}

impl CherednikReport {
    pub fn falsified(&self) -> bool {
        self.hypothesis == Some(true) && self.conclusion == Some(false)
    }
}

/// Solves M T = T M̄ over all generators M by an exact nullspace computation;
/// returns a nonsingular intertwiner if one exists.
fn conjugation_intertwiner(gens: &[Matrix<E>]) -> Result<Option<Matrix<E>>> {
    let d = gens[0].rows();
    let unknowns = d * d;
    let mut system: Matrix<E> = Matrix::zero(gens.len() * unknowns, unknowns);
    for (g, m) in gens.iter().enumerate() {
        let mc = m.conj();
        // Equation (i,j): Σ_p M[i,p] T[p,j] − Σ_q T[i,q] M̄[q,j] = 0.
        for i in 0..d {
            for j in 0..d {
                let row = g * unknowns + i * d + j;
                for p in 0..d {
                    let cur = system.at(row, p * d + j).clone();
                    system.set(row, p * d + j, cur + m.at(i, p).clone());
                }
                for q in 0..d {
                    let cur = system.at(row, i * d + q).clone();
                    system.set(row, i * d + q, cur - mc.at(q, j).clone());
                }
            }
        }
    }
    for vec in system.nullspace() {
        let t = Matrix::from_fn(d, d, |i, j| vec[i * d + j].clone());
        if !Scalar::is_zero(&t.det()?) {
            return Ok(Some(t));
        }
    }
    Ok(None)
}

/// Builds a real basis from the antilinear map v ↦ T v̄ with T T̄ = I: fixed
/// vectors of the candidates e_j + T ē_j and i(e_j − T ē_j) span a real form.
fn real_form_basis(t: &Matrix<E>) -> Result<Matrix<E>> {
    let d = t.rows();
    let ident: Matrix<E> = Matrix::identity(d);
    let plus = ident.clone() + t.clone();
    let minus = (ident - t.clone()).scale(&E::i());
    let mut cols: Vec<Vec<E>> = Vec::new();
    let mut sel = Matrix::zero(d, 0);
    for src in [&plus, &minus] {
        for j in 0..d {
            if cols.len() == d {
                break;
            }
            let col: Vec<E> = (0..d).map(|i| src.at(i, j).clone()).collect();
            let mut cand = Matrix::from_fn(d, cols.len() + 1, |i, c| {
                if c < cols.len() { cols[c][i].clone() } else { col[i].clone() }
            });
            if cand.rank() == cols.len() + 1 {
                cols.push(col);
                sel = std::mem::replace(&mut cand, Matrix::zero(0, 0));
            }
        }
    }
    if cols.len() < d {
        return Err(CoreError::Internal("fixed vectors do not span".into()));
    }
    Ok(sel)
}

/// Main Theorem harness: H = extracted char polys certified real-rooted,
/// C = the full n!-dimensional generator list is conjugate to a real list,
/// certified through the conjugation intertwiner T with T T̄ = c I, c > 0,
/// and an explicit real basis whenever √c is exactly representable.
pub fn reality_harness(rep: &DunklRep) -> Result<CherednikReport> {
    let pair = match extract_cm_pair(rep) {
        Ok(p) => p,
        Err(CoreError::NonRegular(_)) => {
            return Ok(CherednikReport { hypothesis: None, conclusion: None, pair_residual: None })
        }
        Err(e) => return Err(e),
    };
    let chi_x = pair.x.char_poly()?;
    let chi_z = pair.z.char_poly()?;
    let hypothesis = if !chi_x.has_real_coeffs() || !chi_z.has_real_coeffs() {
        Some(false)
    } else {
        Some(real_roots_certified(&chi_x)?.0 && real_roots_certified(&chi_z)?.0)
    };

    // Pair-level realification first; a complex Calogero-Moser point rules
    // out any real form of the representation.
    let mut pair_residual = None;
    match pair.realify_regular(false) {
        Ok((_, r)) => pair_residual = Some(r),
        Err(CoreError::NonRegular(_)) => {
            return Ok(CherednikReport { hypothesis, conclusion: None, pair_residual: None })
        }
        Err(_) => {
            return Ok(CherednikReport { hypothesis, conclusion: Some(false), pair_residual })
        }
    }

    let gens = rep.generators();
    if gens.iter().all(|m| m.has_real_entries()) {
        return Ok(CherednikReport { hypothesis, conclusion: Some(true), pair_residual });
    }
    let Some(t) = conjugation_intertwiner(&gens)? else {
        return Ok(CherednikReport { hypothesis, conclusion: Some(false), pair_residual });
    };
    // T T̄ must be a real scalar c; c > 0 certifies a real structure.
    let prod = t.clone() * t.conj();
    let c = prod.at(0, 0).clone();
    let scalar_ok = prod == Matrix::<E>::identity(rep.dim).scale(&c);
    if !scalar_ok {
        return Err(CoreError::Internal("T T̄ is not scalar".into()));
    }
    if !c.is_real() {
        return Err(CoreError::Internal("T T̄ scalar is not real".into()));
    }
    let positive = c.real_part().to_complex().re > 0.0;
    if !positive {
        return Ok(CherednikReport { hypothesis, conclusion: Some(false), pair_residual });
    }
    // Exhibit the real form explicitly when √c is exactly representable;
    // otherwise verify it on the floating backend.
    if let Some(s) = c.exact_sqrt() {
        let t1 = t.scale(&s.checked_inv()?);
        let basis = real_form_basis(&t1)?;
        let inv = basis.inverse()?;
        for m in &gens {
            let conj = inv.clone() * m.clone() * basis.clone();
            if !conj.has_real_entries() {
                return Err(CoreError::Internal("constructed basis is not real for all generators".into()));
            }
        }
    } else {
        let sc = c.to_complex().re.sqrt();
        let ta = t
            .to_approx()
            .scale(&ApproxScalar(num_complex::Complex64::new(1.0 / sc, 0.0)));
        let d = rep.dim;
        let ident: Matrix<ApproxScalar> = Matrix::identity(d);
        let plus = ident.clone() + ta.clone();
        let minus = (ident - ta).scale(&ApproxScalar(num_complex::Complex64::new(0.0, 1.0)));
        let mut cols: Vec<Vec<ApproxScalar>> = Vec::new();
        for src in [&plus, &minus] {
            for j in 0..d {
                if cols.len() == d {
                    break;
                }
                let col: Vec<ApproxScalar> = (0..d).map(|i| src.at(i, j).clone()).collect();
                let cand = Matrix::from_fn(d, cols.len() + 1, |i, cix| {
                    if cix < cols.len() { cols[cix][i].clone() } else { col[i].clone() }
                });
                if cand.rank() == cols.len() + 1 {
                    cols.push(col);
                }
            }
        }
        if cols.len() < d {
            return Err(CoreError::Internal("approx fixed vectors do not span".into()));
        }
        let basis = Matrix::from_fn(d, d, |i, j| cols[j][i].clone());
        let inv = basis.inverse()?;
        for m in &gens {
            let conj = inv.clone() * m.to_approx() * basis.clone();
            if !conj.has_real_entries() {
                return Err(CoreError::Internal("approx real form verification failed".into()));
            }
        }
    }
    Ok(CherednikReport { hypothesis, conclusion: Some(true), pair_residual })
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::Rng;
    use rand_chacha::rand_core::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn e(k: i64) -> E {
        E::from_int(k)
    }

    fn frac(n: i64, d: i64) -> E {
        E::from_frac(n, d)
    }

    fn rand_rat(rng: &mut ChaCha8Rng) -> E {
        frac(rng.gen_range(-12..=12), rng.gen_range(1..=6))
    }

    #[test]
    fn n1_trivial() {
        let rep = build_dunkl_rep(&[e(3)], &[e(7)], &E::one()).unwrap();
        assert_eq!(rep.dim, 1);
        let p = extract_cm_pair(&rep).unwrap();
        assert_eq!(p.x, Matrix::from_i64(1, 1, &[3]));
        assert_eq!(p.z, Matrix::from_i64(1, 1, &[7]));
    }

    #[test]
    fn n2_explicit() {
        let rep = build_dunkl_rep(&[e(1), e(-1)], &[frac(1, 2), e(4)], &E::one()).unwrap();
        assert_eq!(rep.dim, 2);
        // x_1 = diag(1, −1) in orbit order (id, s).
        assert_eq!(rep.ops_x[0], Matrix::from_fn(2, 2, |i, j| {
            if i == j { if i == 0 { e(1) } else { e(-1) } } else { E::zero() }
        }));
        let p = extract_cm_pair(&rep).unwrap();
        // Spec(x_1|ēV) = λ: char poly x² − 1.
        assert_eq!(p.x.char_poly().unwrap(), crate::poly::UniPoly::from_i64(&[-1, 0, 1]));
    }

    #[test]
    fn relations_random_n_up_to_4() {
        let mut rng = ChaCha8Rng::seed_from_u64(42);
        for n in 2..=4usize {
            let samples = if n == 4 { 3 } else { 8 };
            for _ in 0..samples {
                let mut lam: Vec<E> = Vec::new();
                while lam.len() < n {
                    let cand = rand_rat(&mut rng);
                    if !lam.contains(&cand) {
                        lam.push(cand);
                    }
                }
                let mu: Vec<E> = (0..n).map(|_| rand_rat(&mut rng)).collect();
                // Construction verifies every relation exactly.
                let rep = build_dunkl_rep(&lam, &mu, &E::one()).unwrap();
                assert!(regular_character_check(&rep));
            }
        }
    }

    #[test]
    fn c_zero_degeneration_commutes() {
        let rep = build_dunkl_rep(&[e(0), e(1), e(2)], &[e(5), e(-1), e(2)], &E::zero()).unwrap();
        for i in 0..3 {
            for j in 0..3 {
                let (x, y) = (&rep.ops_x[i], &rep.ops_y[j]);
                assert_eq!(x.clone() * y.clone(), y.clone() * x.clone());
            }
        }
    }

    #[test]
    fn repeated_lambda_rejected() {
        assert!(matches!(
            build_dunkl_rep(&[e(1), e(1)], &[e(0), e(0)], &E::one()),
            Err(CoreError::RepeatedLambda)
        ));
    }

    #[test]
    fn symmetrizer_ranks() {
        let rep = build_dunkl_rep(&[e(0), e(1), e(3)], &[e(2), e(2), e(-1)], &E::one()).unwrap();
        let full = symmetrizer(&rep, SymmetrizerKind::Full).unwrap();
        assert_eq!(full.rank(), 1);
        let ebar = symmetrizer(&rep, SymmetrizerKind::LastFactorial).unwrap();
        assert_eq!(ebar.rank(), 3);
    }

    #[test]
    fn extraction_spectrum_matches_lambda() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..5 {
            let mut lam: Vec<E> = Vec::new();
            while lam.len() < 3 {
                let cand = rand_rat(&mut rng);
                if !lam.contains(&cand) {
                    lam.push(cand);
                }
            }
            let mu: Vec<E> = (0..3).map(|_| rand_rat(&mut rng)).collect();
            let rep = build_dunkl_rep(&lam, &mu, &E::one()).unwrap();
            let p = extract_cm_pair(&rep).unwrap();
            let chi = p.x.char_poly().unwrap();
            let want = crate::poly::UniPoly::from_roots(&lam);
            assert_eq!(chi, want);
        }
    }

    #[test]
    fn reality_real_data() {
        let rep = build_dunkl_rep(&[e(1), e(-1)], &[e(2), e(3)], &E::one()).unwrap();
        let r = reality_harness(&rep).unwrap();
        assert_eq!(r.hypothesis, Some(true));
        assert_eq!(r.conclusion, Some(true));
        assert!(!r.falsified());
    }

    #[test]
    fn reality_conjugate_pair_mu() {
        // μ = (m, m̄) non-real: extracted char polys stay real; the rep must
        // still admit a real form.
        let m1 = e(2) + E::i() * frac(1, 3);
        let m2 = e(2) - E::i() * frac(1, 3);
        let rep = build_dunkl_rep(&[e(1), e(-1)], &[m1, m2], &E::one()).unwrap();
        let r = reality_harness(&rep).unwrap();
        assert!(r.hypothesis.is_some());
        if r.hypothesis == Some(true) {
            assert_eq!(r.conclusion, Some(true));
        }
        assert!(!r.falsified());
    }

    #[test]
    fn reality_non_real_char_poly() {
        // μ = (i, i): tr(y_1|ēV) = 2i is not real, hypothesis unmet.
        let rep = build_dunkl_rep(&[e(1), e(-1)], &[E::i(), E::i()], &E::one()).unwrap();
        let r = reality_harness(&rep).unwrap();
        assert_eq!(r.hypothesis, Some(false));
        assert!(!r.falsified());
    }
}
