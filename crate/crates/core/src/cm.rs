//! Calogero–Moser pairs: validation, the diagonal chart, the spectral map and
//! its fibers, commuting flows, the bispectral involution, realification, and
//! the quiver-representation extension.
//!
//! A pair (X, Z) of n×n matrices is a Calogero–Moser pair when
//! rank([X, Z] + I) = 1.  On the locus where X is regular semisimple the pair
//! is conjugate to the chart form X = diag(λ), Z with off-diagonal entries
//! (λ_i − λ_j)^{-1} and free diagonal α.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use num_traits::Zero;

use crate::error::{CoreError, Result};
use crate::matrix::{Matrix, Spectrum};
use crate::poly::UniPoly;
use crate::roots::{exact_roots, poly_roots, real_roots_certified};
use crate::scalar::{tol, ApproxScalar, ExactScalar, Scalar};

/// A representative (X, Z) of a point of the n-th Calogero–Moser space.
#[derive(Clone, Debug, PartialEq)]
pub struct CMPair<S: Scalar> {
    pub n: usize,
    pub x: Matrix<S>,
    pub z: Matrix<S>,
}

/// Chart data (λ, α): X = diag(λ), Z_ij = (λ_i − λ_j)^{-1} for i ≠ j, Z_ii = α_i.
#[derive(Clone, Debug, PartialEq)]
pub struct CMChart<S: Scalar> {
    pub lambda: Vec<S>,
    pub alpha: Vec<S>,
}

/// Quiver-representation data: [X, Z] + I = w·v with the normalization v·w = n.
#[derive(Clone, Debug, PartialEq)]
pub struct QuiverRep<S: Scalar> {
    pub x: Matrix<S>,
    pub z: Matrix<S>,
    /// 1×n row covector.
    pub v: Matrix<S>,
    /// n×1 column vector.
    pub w: Matrix<S>,
}

/// A point (Spec X, Spec Z) in the target of the spectral map.
#[derive(Clone, Debug, PartialEq)]
pub struct UpsilonTarget<S: Scalar> {
    pub spec_x: Vec<S>,
    pub spec_z: Vec<S>,
}

impl<S: Scalar> UpsilonTarget<S> {
    pub fn new(spec_x: Vec<S>, spec_z: Vec<S>) -> Result<Self> {
        if spec_x.len() != spec_z.len() {
            return Err(CoreError::DimensionMismatch(format!(
                "spectra sizes {} vs {}",
                spec_x.len(),
                spec_z.len()
            )));
        }
        Ok(UpsilonTarget { spec_x, spec_z })
    }

    pub fn n(&self) -> usize {
        self.spec_x.len()
    }

    pub fn spectra(&self) -> (Spectrum, Spectrum) {
        let cvt = |vals: &[S]| {
            let mut v: Vec<ApproxScalar> = vals.iter().map(|s| ApproxScalar(s.to_complex())).collect();
            v.sort_by(|a, b| {
                (a.0.re, a.0.im)
                    .partial_cmp(&(b.0.re, b.0.im))
                    .unwrap_or(std::cmp::Ordering::Equal)
            });
            Spectrum { values: v }
        };
        (cvt(&self.spec_x), cvt(&self.spec_z))
    }
}

fn sort_indices_by_value<S: Scalar>(vals: &[S]) -> Vec<usize> {
    let mut idx: Vec<usize> = (0..vals.len()).collect();
    idx.sort_by(|&a, &b| {
        let ca = vals[a].to_complex();
        let cb = vals[b].to_complex();
        (ca.re, ca.im)
            .partial_cmp(&(cb.re, cb.im))
            .unwrap_or(std::cmp::Ordering::Equal)
    });
    idx
}

/// Check rank([X, Z] + I) = 1 and return the pair with a rank-one
/// factorization [X, Z] + I = w·v.
pub fn validate_factor<S: Scalar>(
    x: &Matrix<S>,
    z: &Matrix<S>,
) -> Result<(CMPair<S>, Matrix<S>, Matrix<S>)> {
    let n = x.require_square()?;
    let m = z.require_square()?;
    if n != m {
        return Err(CoreError::DimensionMismatch(format!("{n} vs {m}")));
    }
    let c = x.commutator(z) + Matrix::identity(n);
    // Pivot on the entry of largest magnitude.
    let (mut pi, mut pj, mut best) = (0usize, 0usize, -1.0f64);
    for i in 0..n {
        for j in 0..n {
            let mag = c.at(i, j).mag();
            if mag > best {
                best = mag;
                pi = i;
                pj = j;
            }
        }
    }
    if c.at(pi, pj).is_negligible() {
        return Err(CoreError::NotCalogeroMoser { rank: 0 });
    }
    let piv = c.at(pi, pj).clone();
    let w = Matrix::from_fn(n, 1, |i, _| c.at(i, pj).clone() / piv.clone());
    let v = Matrix::from_fn(1, n, |_, j| c.at(pi, j).clone());
    let resid = c.clone() - w.clone() * v.clone();
    for i in 0..n {
        for j in 0..n {
            if !resid.at(i, j).is_negligible() {
                return Err(CoreError::NotCalogeroMoser { rank: c.rank() });
            }
        }
    }
    Ok((
        CMPair {
            n,
            x: x.clone(),
            z: z.clone(),
        },
        v,
        w,
    ))
}

/// Check the rank-one condition and wrap (X, Z) as a pair.
pub fn validate<S: Scalar>(x: &Matrix<S>, z: &Matrix<S>) -> Result<CMPair<S>> {
    validate_factor(x, z).map(|(p, _, _)| p)
}

/// Instantiate the diagonal chart: X = diag(λ), Z_ij = (λ_i − λ_j)^{-1},
/// Z_ii = α_i.
pub fn from_chart<S: Scalar>(chart: &CMChart<S>) -> Result<CMPair<S>> {
    let n = chart.lambda.len();
    if chart.alpha.len() != n {
        return Err(CoreError::DimensionMismatch(format!(
            "chart with {n} lambdas and {} alphas",
            chart.alpha.len()
        )));
    }
    for i in 0..n {
        for j in (i + 1)..n {
            if (chart.lambda[i].clone() - chart.lambda[j].clone()).is_negligible() {
                return Err(CoreError::RepeatedLambda);
            }
        }
    }
    let x = Matrix::diag(&chart.lambda);
    let mut z = Matrix::diag(&chart.alpha);
    for i in 0..n {
        for j in 0..n {
            if i != j {
                let d = chart.lambda[i].clone() - chart.lambda[j].clone();
                z.set(i, j, d.checked_inv()?);
            }
        }
    }
    Ok(CMPair { n, x, z })
}

/// Recover the chart (λ, α) from a pair whose X has distinct eigenvalues,
/// given those eigenvalues.  Diagonalizes X and then rescales by the diagonal
/// torus so the rank-one row covector becomes (1, …, 1), which forces the
/// off-diagonal entries of Z to (λ_i − λ_j)^{-1}.  λ is returned sorted by
/// (Re, Im) so the chart is a canonical form.
fn chart_from_eigenvalues<S: Scalar>(p: &CMPair<S>, eigs: Vec<S>) -> Result<CMChart<S>> {
    let n = p.n;
    if eigs.len() != n {
        return Err(CoreError::Internal("eigenvalue count mismatch".into()));
    }
    for i in 0..n {
        for j in (i + 1)..n {
            if (eigs[i].clone() - eigs[j].clone()).is_negligible() {
                return Err(CoreError::NonRegular("repeated eigenvalue or degenerate gauge".into()));
            }
        }
    }
    let perm = sort_indices_by_value(&eigs);
    let lambda: Vec<S> = perm.iter().map(|&k| eigs[k].clone()).collect();

    // Eigenvector basis: columns of P.
    let mut pmat = Matrix::zero(n, n);
    for (col, lam) in lambda.iter().enumerate() {
        let shifted = p.x.clone() - Matrix::diag(&vec![lam.clone(); n]);
        let ns = shifted.nullspace();
        if ns.len() != 1 {
            return Err(CoreError::NonRegular("repeated eigenvalue or degenerate gauge".into()));
        }
        for i in 0..n {
            pmat.set(i, col, ns[0][i].clone());
        }
    }
    let (_, v, _) = validate_factor(&p.x, &p.z)?;
    let vp = v * pmat.clone();
    for j in 0..n {
        if vp.at(0, j).is_negligible() {
            return Err(CoreError::NonRegular("repeated eigenvalue or degenerate gauge".into()));
        }
    }
    // g = P·diag(vP); then the covector becomes (1, …, 1).
    let dvals: Vec<S> = (0..n).map(|j| vp.at(0, j).clone()).collect();
    let g = pmat * Matrix::diag(&dvals);
    let ginv = g.inverse()?;
    let znew = ginv * p.z.clone() * g;
    let alpha: Vec<S> = (0..n).map(|i| znew.at(i, i).clone()).collect();
    Ok(CMChart { lambda, alpha })
}

impl CMPair<ExactScalar> {
    /// Exact chart recovery; requires the eigenvalues of X to be Gaussian
    /// rationals.
    pub fn to_chart(&self) -> Result<CMChart<ExactScalar>> {
        let eigs = exact_roots(&self.x.char_poly()?)?;
        chart_from_eigenvalues(self, eigs)
    }

    pub fn to_approx(&self) -> CMPair<ApproxScalar> {
        CMPair {
            n: self.n,
            x: self.x.to_approx(),
            z: self.z.to_approx(),
        }
    }

    /// Exact spectral-map value; fails when either spectrum is irrational.
    pub fn upsilon_exact(&self) -> Result<UpsilonTarget<ExactScalar>> {
        let sx = exact_roots(&self.x.char_poly()?)?;
        let sz = exact_roots(&self.z.char_poly()?)?;
        UpsilonTarget::new(sx, sz)
    }
}

impl CMPair<ApproxScalar> {
    /// Floating-point chart recovery via numerical eigenvalues of X.
    pub fn to_chart(&self) -> Result<CMChart<ApproxScalar>> {
        let chi = self.x.char_poly()?;
        let eigs = poly_roots(&chi)?;
        chart_from_eigenvalues(self, eigs)
    }
}

impl<S: Scalar> CMPair<S> {
    /// The spectral map: (Spec X, Spec Z), computed numerically.
    pub fn upsilon(&self) -> Result<UpsilonTarget<ApproxScalar>> {
        let to_approx = |p: &UniPoly<S>| {
            UniPoly::new(p.coeffs().iter().map(|c| ApproxScalar(c.to_complex())).collect())
        };
        let sx = poly_roots(&to_approx(&self.x.char_poly()?))?;
        let sz = poly_roots(&to_approx(&self.z.char_poly()?))?;
        UpsilonTarget::new(sx, sz)
    }

    /// Realness screening: tr w(X, Z) must be real for every word w of length
    /// ≤ `max_len`.  Necessary for membership in the real locus, not
    /// sufficient.
    pub fn rc_membership_necessary(&self, max_len: usize) -> bool {
        let mut layer: Vec<Matrix<S>> = vec![Matrix::identity(self.n)];
        for _ in 0..max_len {
            let mut next = Vec::with_capacity(layer.len() * 2);
            for m in &layer {
                next.push(m.clone() * self.x.clone());
                next.push(m.clone() * self.z.clone());
            }
            for m in &next {
                if !m.trace().is_real() {
                    return false;
                }
            }
            layer = next;
        }
        true
    }

    /// The k-th commuting flow (X, Z) ↦ (X + k·t·(−Z)^{k−1}, Z), together with
    /// the conserved Hamiltonian h_k = (−1)^{k−1} tr Z^k.
    pub fn cm_flow(&self, k: usize, t: &S) -> Result<(CMPair<S>, S)> {
        if k == 0 {
            return Err(CoreError::Precondition("flow index must be positive".into()));
        }
        let neg_z = self.z.scale(&(-S::one()));
        let shift = neg_z.pow(k - 1).scale(&(S::from_i64(k as i64) * t.clone()));
        let pair = CMPair {
            n: self.n,
            x: self.x.clone() + shift,
            z: self.z.clone(),
        };
        let sign = if k % 2 == 1 { S::one() } else { -S::one() };
        let h = sign * self.z.pow(k).trace();
        Ok((pair, h))
    }

    /// The bispectral involution (X, Z) ↦ (Zᵗ, Xᵗ).
    pub fn bispectral_involution(&self) -> CMPair<S> {
        CMPair {
            n: self.n,
            x: self.z.transpose(),
            z: self.x.transpose(),
        }
    }

    /// Rank-one factorization [X, Z] + I = w·v normalized so v·w = n.
    pub fn extend_to_quiver(&self) -> Result<QuiverRep<S>> {
        let (_, v, w) = validate_factor(&self.x, &self.z)?;
        // tr(w·v) = tr([X,Z] + I) = n, so v·w = n holds up to the numerical
        // error of the factorization; rescale v to pin it exactly.
        let s = (v.clone() * w.clone()).at(0, 0).clone();
        if s.is_negligible() {
            return Err(CoreError::Internal("degenerate rank-one factorization".into()));
        }
        let v = v.scale(&(S::from_i64(self.n as i64) / s));
        Ok(QuiverRep {
            x: self.x.clone(),
            z: self.z.clone(),
            v,
            w,
        })
    }

    pub fn has_real_entries(&self) -> bool {
        self.x.has_real_entries() && self.z.has_real_entries()
    }
}

fn distinct_check<S: Scalar>(vals: &[S]) -> Result<()> {
    for i in 0..vals.len() {
        for j in (i + 1)..vals.len() {
            if (vals[i].clone() - vals[j].clone()).is_negligible() {
                return Err(CoreError::Unsupported(
                    "fiber solving requires distinct first-spectrum values".into(),
                ));
            }
        }
    }
    Ok(())
}

/// Exact fiber of the spectral map over a target with distinct Spec X, n ≤ 2.
/// Solutions whose α involve irrational square roots are reported as a
/// non-rational-spectrum error.
pub fn fiber_solve_exact(target: &UpsilonTarget<ExactScalar>) -> Result<Vec<CMChart<ExactScalar>>> {
    let n = target.n();
    distinct_check(&target.spec_x)?;
    let perm = sort_indices_by_value(&target.spec_x);
    let lambda: Vec<ExactScalar> = perm.iter().map(|&k| target.spec_x[k].clone()).collect();
    match n {
        1 => Ok(vec![CMChart {
            lambda,
            alpha: vec![target.spec_z[0].clone()],
        }]),
        2 => {
            let s = target.spec_z[0].clone() + target.spec_z[1].clone();
            let p = target.spec_z[0].clone() * target.spec_z[1].clone();
            let b = (lambda[0].clone() - lambda[1].clone()).checked_inv()?;
            // α_1 + α_2 = tr Z, α_1·α_2 + b² = det Z.
            let q = p - b.clone() * b;
            let two = ExactScalar::from_int(2);
            let disc = s.clone() * s.clone() - ExactScalar::from_int(4) * q;
            let r = disc
                .exact_sqrt()
                .ok_or(CoreError::NonRationalSpectrum)?;
            let a1 = (s.clone() + r.clone()) / two.clone();
            let a2 = (s - r) / two;
            let mut out = vec![CMChart {
                lambda: lambda.clone(),
                alpha: vec![a1.clone(), a2.clone()],
            }];
            if a1 != a2 {
                out.push(CMChart {
                    lambda,
                    alpha: vec![a2, a1],
                });
            }
            Ok(out)
        }
        _ => Err(CoreError::Unsupported(
            "exact fiber solving implemented for n ≤ 2".into(),
        )),
    }
}

/// Certificate that every fiber point over a real target is real, for n ≤ 2.
/// For n = 2 the α's solve a real quadratic whose discriminant is
/// (ζ_1 − ζ_2)² + 4(λ_1 − λ_2)^{-2} ≥ 0, so realness is decided exactly even
/// when the α's themselves are irrational.
pub fn real_fiber_certified(target: &UpsilonTarget<ExactScalar>) -> Result<bool> {
    let n = target.n();
    distinct_check(&target.spec_x)?;
    for v in target.spec_x.iter().chain(target.spec_z.iter()) {
        if !v.is_real() {
            return Err(CoreError::Precondition(
                "reality certificate requires a real target".into(),
            ));
        }
    }
    match n {
        1 => Ok(true),
        2 => {
            let dz = target.spec_z[0].clone() - target.spec_z[1].clone();
            let b = (target.spec_x[0].clone() - target.spec_x[1].clone()).checked_inv()?;
            let disc = dz.clone() * dz + ExactScalar::from_int(4) * b.clone() * b;
            Ok(disc.re >= num_traits::Zero::zero())
        }
        _ => Err(CoreError::Unsupported(
            "reality certificate implemented for n ≤ 2".into(),
        )),
    }
}

const FIBER_DEDUP_RADIUS: f64 = 1e-7;
const NEWTON_STARTS_PER_SOLUTION: usize = 500;

/// Numerical fiber of the spectral map over a target with distinct Spec X,
/// n ≤ 3.  n = 1 is linear, n = 2 a closed-form quadratic, n = 3 multi-start
/// Newton iteration (seeded, deterministic) with deduplication radius 1e−7.
pub fn fiber_solve(
    target: &UpsilonTarget<ApproxScalar>,
    seed: u64,
) -> Result<Vec<CMChart<ApproxScalar>>> {
    let n = target.n();
    distinct_check(&target.spec_x)?;
    let perm = sort_indices_by_value(&target.spec_x);
    let lambda: Vec<ApproxScalar> = perm.iter().map(|&k| target.spec_x[k].clone()).collect();
    match n {
        1 => Ok(vec![CMChart {
            lambda,
            alpha: vec![target.spec_z[0].clone()],
        }]),
        2 => {
            let s = target.spec_z[0].0 + target.spec_z[1].0;
            let p = target.spec_z[0].0 * target.spec_z[1].0;
            let b = 1.0 / (lambda[0].0 - lambda[1].0);
            let q = p - b * b;
            let r = (s * s - 4.0 * q).sqrt();
            let a1 = ApproxScalar((s + r) / 2.0);
            let a2 = ApproxScalar((s - r) / 2.0);
            let mut out = vec![CMChart {
                lambda: lambda.clone(),
                alpha: vec![a1.clone(), a2.clone()],
            }];
            if (a1.0 - a2.0).norm() > FIBER_DEDUP_RADIUS {
                out.push(CMChart {
                    lambda,
                    alpha: vec![a2, a1],
                });
            }
            Ok(out)
        }
        3 => fiber_solve_newton(&lambda, &target.spec_z, seed),
        _ => Err(CoreError::Unsupported(
            "fiber solving implemented for n ≤ 3".into(),
        )),
    }
}

fn chart_char_poly(lambda: &[ApproxScalar], alpha: &[ApproxScalar]) -> Result<UniPoly<ApproxScalar>> {
    let pair = from_chart(&CMChart {
        lambda: lambda.to_vec(),
        alpha: alpha.to_vec(),
    })?;
    pair.z.char_poly()
}

fn fiber_solve_newton(
    lambda: &[ApproxScalar],
    spec_z: &[ApproxScalar],
    seed: u64,
) -> Result<Vec<CMChart<ApproxScalar>>> {
    use num_complex::Complex64;
    let n = lambda.len();
    let factorial: usize = (1..=n).product();
    let target_poly = UniPoly::from_roots(spec_z);
    // Residual: the n non-leading coefficients of char(Z(λ, α)) − target.
    let residual = |alpha: &[ApproxScalar]| -> Result<Vec<Complex64>> {
        let chi = chart_char_poly(lambda, alpha)?;
        Ok((0..n)
            .map(|k| chi.coeff(k).0 - target_poly.coeff(k).0)
            .collect())
    };
    let mut scale: f64 = 1.0;
    for z in spec_z {
        scale = scale.max(z.0.norm());
    }
    for i in 0..n {
        for j in (i + 1)..n {
            scale = scale.max(1.0 / (lambda[i].0 - lambda[j].0).norm());
        }
    }

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let starts = NEWTON_STARTS_PER_SOLUTION * factorial;
    let mut clusters: Vec<Vec<Complex64>> = Vec::new();
    for _ in 0..starts {
        let mut alpha: Vec<Complex64> = (0..n)
            .map(|_| {
                Complex64::new(
                    scale * rng.gen_range(-2.0..2.0),
                    scale * rng.gen_range(-2.0..2.0),
                )
            })
            .collect();
        let mut converged = false;
        for _ in 0..60 {
            let a: Vec<ApproxScalar> = alpha.iter().map(|c| ApproxScalar(*c)).collect();
            let f = residual(&a)?;
            let fnorm: f64 = f.iter().map(|c| c.norm()).fold(0.0, f64::max);
            if fnorm <= 1e-11 * scale.max(1.0) {
                converged = true;
                break;
            }
            // Complex-step Jacobian (the residual is analytic in α).
            let h = 1e-6 * scale.max(1.0);
            let mut jac = Matrix::zero(n, n);
            for k in 0..n {
                let mut pert = alpha.clone();
                pert[k] += Complex64::new(h, 0.0);
                let ap: Vec<ApproxScalar> = pert.iter().map(|c| ApproxScalar(*c)).collect();
                let fp = residual(&ap)?;
                for i in 0..n {
                    jac.set(i, k, ApproxScalar((fp[i] - f[i]) / h));
                }
            }
            let jinv = match jac.inverse() {
                Ok(m) => m,
                Err(_) => break,
            };
            let fvec = Matrix::from_fn(n, 1, |i, _| ApproxScalar(f[i]));
            let step = jinv * fvec;
            let mut step_norm: f64 = 0.0;
            for i in 0..n {
                alpha[i] -= step.at(i, 0).0;
                step_norm = step_norm.max(step.at(i, 0).0.norm());
            }
            if step_norm < 1e-13 * scale.max(1.0) {
                let a: Vec<ApproxScalar> = alpha.iter().map(|c| ApproxScalar(*c)).collect();
                let f = residual(&a)?;
                let fnorm: f64 = f.iter().map(|c| c.norm()).fold(0.0, f64::max);
                converged = fnorm <= 1e-9 * scale.max(1.0);
                break;
            }
        }
        if !converged {
            continue;
        }
        let is_new = clusters.iter().all(|c| {
            c.iter()
                .zip(alpha.iter())
                .map(|(a, b)| (a - b).norm())
                .fold(0.0, f64::max)
                > FIBER_DEDUP_RADIUS
        });
        if is_new {
            clusters.push(alpha);
        }
    }
    if clusters.len() > factorial {
        return Err(CoreError::Internal(format!(
            "fiber dedup failure: {} clusters exceed degree {}",
            clusters.len(),
            factorial
        )));
    }
    clusters.sort_by(|a, b| {
        let ka: Vec<(f64, f64)> = a.iter().map(|c| (c.re, c.im)).collect();
        let kb: Vec<(f64, f64)> = b.iter().map(|c| (c.re, c.im)).collect();
        ka.partial_cmp(&kb).unwrap_or(std::cmp::Ordering::Equal)
    });
    Ok(clusters
        .into_iter()
        .map(|alpha| CMChart {
            lambda: lambda.to_vec(),
            alpha: alpha.into_iter().map(ApproxScalar).collect(),
        })
        .collect())
}

impl CMPair<ExactScalar> {
    /// Produce a real representative of a pair with distinct real X-spectrum
    /// and real Z-spectrum.  Returns the real pair and the residual
    /// max |Im α|, which must be exactly zero on the exact backend; a nonzero
    /// residual at a certified-real-spectrum point is a falsification event.
    pub fn realify_regular(&self, require_real_spectra: bool) -> Result<(CMPair<ExactScalar>, f64)> {
        if require_real_spectra {
            let chi_x = self.x.char_poly()?;
            let chi_z = self.z.char_poly()?;
            let (all_real_x, _) = real_roots_certified(&chi_x)?;
            let (all_real_z, _) = real_roots_certified(&chi_z)?;
            if !all_real_x || !all_real_z {
                return Err(CoreError::Precondition(
                    "spectra not certified real".into(),
                ));
            }
        }
        let chart = self.to_chart()?;
        let mut residual: f64 = 0.0;
        for a in &chart.alpha {
            if !a.im.numer().is_zero() {
                residual = residual.max(a.imag_part().mag());
            }
        }
        if residual > 0.0 {
            return Err(CoreError::Internal(format!(
                "falsification: nonzero Im α = {:.3e} at a real-spectrum regular point",
                residual
            )));
        }
        let real_chart = CMChart {
            lambda: chart.lambda.iter().map(|l| l.real_part()).collect(),
            alpha: chart.alpha.iter().map(|a| a.real_part()).collect(),
        };
        Ok((from_chart(&real_chart)?, residual))
    }
}

impl CMPair<ApproxScalar> {
    /// Floating-point realification; the residual max |Im α| must stay below
    /// the global tolerance.
    pub fn realify_regular(&self, require_real_spectra: bool) -> Result<(CMPair<ApproxScalar>, f64)> {
        if require_real_spectra {
            let spec = self.upsilon()?;
            let (sx, sz) = spec.spectra();
            if !sx.is_real() || !sz.is_real() {
                return Err(CoreError::Precondition(
                    "spectra not real within tolerance".into(),
                ));
            }
        }
        let chart = self.to_chart()?;
        let mut residual: f64 = 0.0;
        for a in &chart.alpha {
            residual = residual.max(a.0.im.abs());
        }
        let scale = chart
            .alpha
            .iter()
            .map(|a| a.0.norm())
            .fold(1.0, f64::max);
        if residual > tol() * scale {
            return Err(CoreError::Internal(format!(
                "falsification: Im α residual {:.3e} above tolerance at a real-spectrum regular point",
                residual
            )));
        }
        let real_chart = CMChart {
            lambda: chart.lambda.iter().map(|l| ApproxScalar(l.0.re.into())).collect(),
            alpha: chart.alpha.iter().map(|a| ApproxScalar(a.0.re.into())).collect(),
        };
        Ok((from_chart(&real_chart)?, residual))
    }
}
