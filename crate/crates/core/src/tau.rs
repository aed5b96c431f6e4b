//! Tau functions and stationary wave functions attached to Calogero–Moser
//! pairs: the truncated tau polynomial, its Laurent wave expansion, the
//! shift-reconstruction identity, the bispectral dual, and the reality tests
//! tying tau data to realifiability of the pair.
//!
//! Conventions: τ(t_1, …, t_m) = det(X + Σ_j j·t_j·(−Z)^{j−1}), and the wave
//! function is e^{xz}·det(I − (xI+X)^{-1}(zI+Z)^{-1}) = e^{xz}(1 + a_1(x)/z + …).
//! The exponential prefactor is never materialized; all identities are stated
//! on the Laurent coefficients a_k(x).

use std::collections::BTreeMap;
use std::ops::{Add, Mul, Neg};

use crate::cm::CMPair;
use crate::error::{CoreError, Result};
use crate::matrix::Matrix;
use crate::multipoly::MultiPoly;
use crate::poly::UniPoly;
use crate::ratfun::{RatFun, RatSeries};
use crate::roots::real_roots_certified;
use crate::scalar::{ExactScalar, Scalar};

/// Tau polynomial truncated to the first `m` time variables.
#[derive(Clone, Debug, PartialEq)]
pub struct TruncatedTau<S: Scalar> {
    pub poly: MultiPoly<S>,
    pub m: usize,
    pub n: usize,
}

/// Laurent data of a wave function: coeffs[k] is the coefficient a_k(x) of
/// z^{-k}, with a_0 = 1.
#[derive(Clone, Debug, PartialEq)]
pub struct WaveFunction {
    pub coeffs: Vec<RatFun>,
    pub n: usize,
}

/// Reality report: tau-coefficient realness, wave-coefficient realness, and
/// realifiability of the pair (None when not evaluable at a non-regular
/// point).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RealityReport {
    pub tau_real: bool,
    pub wave_real: bool,
    pub realifiable: Option<bool>,
}

/// Cofactor determinant over any commutative ring with by-value operators.
pub(crate) fn det_ring<T>(a: &[Vec<T>]) -> T
where
    T: Clone + Add<Output = T> + Mul<Output = T> + Neg<Output = T>,
{
    let n = a.len();
    assert!(n >= 1 && a.iter().all(|r| r.len() == n));
    if n == 1 {
        return a[0][0].clone();
    }
    let mut acc: Option<T> = None;
    for j in 0..n {
        let minor: Vec<Vec<T>> = a[1..]
            .iter()
            .map(|row| {
                row.iter()
                    .enumerate()
                    .filter(|(k, _)| *k != j)
                    .map(|(_, v)| v.clone())
                    .collect()
            })
            .collect();
        let mut term = a[0][j].clone() * det_ring(&minor);
        if j % 2 == 1 {
            term = -term;
        }
        acc = Some(match acc {
            None => term,
            Some(s) => s + term,
        });
    }
    acc.unwrap()
}

/// τ(t) = det(X + Σ_{j=1..m} j·t_j·(−Z)^{j−1}), expanded exactly and
/// normalized so the t_1^n coefficient is 1.
pub fn tau_from_cm<S: Scalar>(p: &CMPair<S>, m: usize) -> Result<TruncatedTau<S>> {
    if m == 0 {
        return Err(CoreError::Precondition("truncation order must be ≥ 1".into()));
    }
    let n = p.n;
    let neg_z = p.z.scale(&(-S::one()));
    let powers: Vec<Matrix<S>> = (0..m).map(|j| neg_z.pow(j)).collect();
    let entries: Vec<Vec<MultiPoly<S>>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|k| {
                    let mut e = MultiPoly::constant(m, p.x.at(i, k).clone());
                    for j in 1..=m {
                        let c = S::from_i64(j as i64) * powers[j - 1].at(i, k).clone();
                        let mut exps = vec![0u32; m];
                        exps[j - 1] = 1;
                        e.add_term(exps, c);
                    }
                    e
                })
                .collect()
        })
        .collect();
    let poly = det_ring(&entries);
    let mut lead = vec![0u32; m];
    lead[0] = n as u32;
    let c = poly.coeff(&lead);
    if c.is_zero() {
        return Err(CoreError::Internal("vanishing leading tau coefficient".into()));
    }
    let poly = poly.scale(&(S::one() / c));
    Ok(TruncatedTau { poly, m, n })
}

impl<S: Scalar> TruncatedTau<S> {
    /// Specialization τ(x, 0, …, 0) as a polynomial in x.
    pub fn at_linear_time(&self) -> UniPoly<S> {
        let mut subs = vec![UniPoly::zero(); self.m];
        subs[0] = UniPoly::x();
        self.poly.specialize(&subs)
    }

    /// τ with t_1 replaced by t_1 + r (the first KP flow).
    pub fn shift_t1(&self, r: &S) -> Self {
        TruncatedTau {
            poly: self.poly.shift_var(0, r),
            m: self.m,
            n: self.n,
        }
    }
}

fn unipoly_matrix(x_plus_x: &Matrix<ExactScalar>) -> Vec<Vec<UniPoly<ExactScalar>>> {
    let n = x_plus_x.rows();
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    let c = UniPoly::constant(x_plus_x.at(i, j).clone());
                    if i == j {
                        c + UniPoly::x()
                    } else {
                        c
                    }
                })
                .collect()
        })
        .collect()
}

/// det(xI + X) as a polynomial in x.
fn det_x_plus(m: &Matrix<ExactScalar>) -> UniPoly<ExactScalar> {
    det_ring(&unipoly_matrix(m))
}

/// (zI + Z)^{-1} = Σ_{k≥0} (−Z)^k z^{-k-1}, truncated to order m in z^{-1},
/// as a matrix of series with constant rational-function coefficients.
fn resolvent_series(z: &Matrix<ExactScalar>, m: usize) -> Vec<Vec<RatSeries>> {
    let n = z.rows();
    let neg_z = z.scale(&(-ExactScalar::one()));
    let mut out = vec![vec![RatSeries::zero(m); n]; n];
    for k in 0..m {
        let pw = neg_z.pow(k);
        for i in 0..n {
            for j in 0..n {
                let c = pw.at(i, j).clone();
                if !c.is_zero() {
                    out[i][j].coeffs[k + 1] = out[i][j].coeffs[k + 1]
                        .clone()
                        + RatFun::constant(c);
                }
            }
        }
    }
    out
}

/// Wave expansion from the determinant formula
/// det(I − (xI+X)^{-1}(zI+Z)^{-1}), to order m in z^{-1}.
pub fn wave_from_cm(p: &CMPair<ExactScalar>, m: usize) -> Result<WaveFunction> {
    let n = p.n;
    let poly_mat = unipoly_matrix(&p.x);
    let den = det_ring(&poly_mat);
    if den.degree() < 0 {
        return Err(CoreError::Singular);
    }
    // Adjugate of xI + X via cofactors: inv = adj / den.
    let mut inv = vec![vec![RatFun::zero(); n]; n];
    for i in 0..n {
        for j in 0..n {
            let cof = if n == 1 {
                UniPoly::one()
            } else {
                let minor: Vec<Vec<UniPoly<ExactScalar>>> = (0..n)
                    .filter(|&r| r != j)
                    .map(|r| {
                        (0..n)
                            .filter(|&c| c != i)
                            .map(|c| poly_mat[r][c].clone())
                            .collect()
                    })
                    .collect();
                let d = det_ring(&minor);
                if (i + j) % 2 == 1 {
                    -d
                } else {
                    d
                }
            };
            inv[i][j] = RatFun::new(cof, den.clone());
        }
    }
    let res = resolvent_series(&p.z, m);
    // A = I − inv · res over truncated series.
    let mut a = vec![vec![RatSeries::zero(m); n]; n];
    for i in 0..n {
        for j in 0..n {
            let mut s = RatSeries::zero(m);
            for k in 0..n {
                s = s + RatSeries::from_constant(m, inv[i][k].clone()) * res[k][j].clone();
            }
            let id = if i == j {
                RatSeries::one(m)
            } else {
                RatSeries::zero(m)
            };
            a[i][j] = id.sub(&s);
        }
    }
    let series = det_ring(&a);
    if series.coeffs[0] != RatFun::one() {
        return Err(CoreError::Internal("wave expansion has nonunit leading term".into()));
    }
    Ok(WaveFunction {
        coeffs: series.coeffs,
        n,
    })
}

/// Wave expansion through the tau-shift route: the time shift t → t − [z^{-1}]
/// at t = (x, 0, …) sums to det(X + xI − (zI+Z)^{-1}) in closed form, which is
/// then divided by τ(x, 0, …) = det(X + xI).  Must agree with `wave_from_cm`
/// exactly.
pub fn sato_wave(p: &CMPair<ExactScalar>, m: usize) -> Result<WaveFunction> {
    let n = p.n;
    let den = det_x_plus(&p.x);
    if den.degree() < 0 {
        return Err(CoreError::Singular);
    }
    let res = resolvent_series(&p.z, m);
    let poly_mat = unipoly_matrix(&p.x);
    let mut a = vec![vec![RatSeries::zero(m); n]; n];
    for i in 0..n {
        for j in 0..n {
            let c = RatSeries::from_constant(m, RatFun::from_poly(poly_mat[i][j].clone()));
            a[i][j] = c.sub(&res[i][j]);
        }
    }
    let num = det_ring(&a);
    let den_rf = RatFun::from_poly(den);
    let coeffs: Vec<RatFun> = num
        .coeffs
        .into_iter()
        .map(|c| c / den_rf.clone())
        .collect();
    if coeffs[0] != RatFun::one() {
        return Err(CoreError::Internal("shift route has nonunit leading term".into()));
    }
    Ok(WaveFunction { coeffs, n })
}

/// Wave function of the involuted pair (Zᵗ, Xᵗ); equals the original wave
/// function with the roles of x and z exchanged.
pub fn bispectral_dual_wave(p: &CMPair<ExactScalar>, m: usize) -> Result<WaveFunction> {
    wave_from_cm(&p.bispectral_involution(), m)
}

/// Double Laurent expansion: coefficient of x^{-i} z^{-j}, for i + j ≤ order.
pub fn double_expansion(
    w: &WaveFunction,
    order: usize,
) -> Result<BTreeMap<(i64, i64), ExactScalar>> {
    let mut out = BTreeMap::new();
    for (j, a) in w.coeffs.iter().enumerate() {
        if j > order {
            break;
        }
        let exp = a.expand_at_infinity(order);
        for (e, c) in exp {
            if e > 0 {
                return Err(CoreError::Internal(
                    "wave coefficient with growth at infinity".into(),
                ));
            }
            if !c.is_zero() && (-e) as usize + j <= order {
                out.insert((-e, j as i64), c);
            }
        }
    }
    Ok(out)
}

/// Check the variable-swap symmetry between a wave function and its
/// bispectral dual on all doubly-expanded coefficients of total order ≤ m.
pub fn bispectral_symmetry_check(p: &CMPair<ExactScalar>, m: usize) -> Result<bool> {
    let w = wave_from_cm(p, m)?;
    let bw = bispectral_dual_wave(p, m)?;
    let ew = double_expansion(&w, m)?;
    let ebw = double_expansion(&bw, m)?;
    for (&(i, j), c) in &ew {
        if ebw.get(&(j, i)) != Some(c) {
            return Ok(false);
        }
    }
    for (&(i, j), c) in &ebw {
        if ew.get(&(j, i)) != Some(c) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Reality tests at a pair: realness of tau (normalized), realness of wave
/// coefficients, and realifiability of the pair.
pub fn reality_conditions(p: &CMPair<ExactScalar>, m: usize) -> Result<RealityReport> {
    let tau = tau_from_cm(p, m)?;
    let tau_real = tau.poly.has_real_coeffs();
    let wave = wave_from_cm(p, m)?;
    let wave_real = wave.coeffs.iter().all(|c| c.has_real_coeffs());
    let realifiable = match p.realify_regular(true) {
        Ok(_) => Some(true),
        Err(CoreError::NonRegular(_)) => None,
        Err(CoreError::NonRationalSpectrum) => match p.to_approx().realify_regular(true) {
            Ok(_) => Some(true),
            Err(CoreError::NonRegular(_)) => None,
            Err(_) => Some(false),
        },
        Err(_) => Some(false),
    };
    Ok(RealityReport {
        tau_real,
        wave_real,
        realifiable,
    })
}

/// Sufficient reality criterion: both char polys real-rooted (certified).
/// When it returns true the pair must pass every reality condition; the
/// converse does not hold.
pub fn thm_wad_criterion(p: &CMPair<ExactScalar>) -> Result<bool> {
    let chi_x = p.x.char_poly()?;
    let chi_z = p.z.char_poly()?;
    if !chi_x.has_real_coeffs() || !chi_z.has_real_coeffs() {
        return Ok(false);
    }
    let (rx, _) = real_roots_certified(&chi_x)?;
    let (rz, _) = real_roots_certified(&chi_z)?;
    Ok(rx && rz)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cm::{from_chart, validate, CMChart};
    use crate::scalar::ExactScalar as E;

    fn e(k: i64) -> E {
        E::from_int(k)
    }

    fn frac(p: i64, q: i64) -> E {
        E::from_frac(p, q)
    }

    fn pair_n1(a: i64, b: i64) -> CMPair<E> {
        from_chart(&CMChart {
            lambda: vec![e(a)],
            alpha: vec![e(b)],
        })
        .unwrap()
    }

    fn chart2(alpha: (i64, i64)) -> CMPair<E> {
        from_chart(&CMChart {
            lambda: vec![e(1), e(-1)],
            alpha: vec![e(alpha.0), e(alpha.1)],
        })
        .unwrap()
    }

    #[test]
    fn tau_n1_explicit() {
        // X = (a), Z = (b): τ = a + t1 − 2b t2 + 3b² t3.
        let p = pair_n1(2, 3);
        let tau = tau_from_cm(&p, 3).unwrap();
        assert_eq!(tau.poly.coeff(&[0, 0, 0]), e(2));
        assert_eq!(tau.poly.coeff(&[1, 0, 0]), e(1));
        assert_eq!(tau.poly.coeff(&[0, 1, 0]), e(-6));
        assert_eq!(tau.poly.coeff(&[0, 0, 1]), e(27));
    }

    #[test]
    fn tau_specializes_to_char_poly() {
        for p in [
            pair_n1(5, -2),
            chart2((1, 0)),
            chart2((0, 0)),
            from_chart(&CMChart {
                lambda: vec![e(0), e(1), e(2)],
                alpha: vec![e(1), e(2), e(3)],
            })
            .unwrap(),
        ] {
            let tau = tau_from_cm(&p, 2 * p.n).unwrap();
            // τ(x, 0, …) = det(xI + X) = (−1)^n χ_X(−x).
            let want = det_x_plus(&p.x);
            assert_eq!(tau.at_linear_time(), want);
            let chi = p.x.char_poly().unwrap();
            let alt = chi.reflect().scale(&e(if p.n % 2 == 1 { -1 } else { 1 }));
            assert_eq!(want, alt);
        }
    }

    #[test]
    fn tau_2x2_order_one() {
        let p = chart2((0, 0));
        let tau = tau_from_cm(&p, 1).unwrap();
        // det(X + t1 I) = t1² − 1.
        let mut want = MultiPoly::constant(1, e(-1));
        want.add_term(vec![2], e(1));
        assert_eq!(tau.poly, want);
    }

    #[test]
    fn wave_n1_explicit() {
        // 1 − 1/((x+a)(z+b)): a_1 = −1/(x+a), a_2 = b/(x+a), a_3 = −b²/(x+a).
        let p = pair_n1(4, 3);
        let w = wave_from_cm(&p, 3).unwrap();
        let den = UniPoly::new(vec![e(4), e(1)]);
        assert_eq!(w.coeffs[0], RatFun::one());
        assert_eq!(w.coeffs[1], RatFun::new(UniPoly::constant(e(-1)), den.clone()));
        assert_eq!(w.coeffs[2], RatFun::new(UniPoly::constant(e(3)), den.clone()));
        assert_eq!(w.coeffs[3], RatFun::new(UniPoly::constant(e(-9)), den));
    }

    #[test]
    fn wave_n1_zero_z() {
        let p = pair_n1(0, 0);
        let w = wave_from_cm(&p, 4).unwrap();
        assert_eq!(
            w.coeffs[1],
            RatFun::new(UniPoly::constant(e(-1)), UniPoly::x())
        );
        for k in 2..=4 {
            assert!(w.coeffs[k].is_zero());
        }
    }

    #[test]
    fn wave_first_coefficient_is_log_derivative() {
        for p in [pair_n1(3, 7), chart2((1, 0)), chart2((2, -5))] {
            let w = wave_from_cm(&p, 2).unwrap();
            let tau0 = det_x_plus(&p.x);
            let want = RatFun::new(-tau0.derivative(), tau0);
            assert_eq!(w.coeffs[1], want);
        }
    }

    #[test]
    fn shift_route_matches_determinant_route() {
        let cases = vec![
            pair_n1(4, 3),
            chart2((1, 0)),
            // Z nilpotent: α = (1/2, −1/2) gives tr Z = det Z = 0.
            from_chart(&CMChart {
                lambda: vec![e(1), e(-1)],
                alpha: vec![frac(1, 2), frac(-1, 2)],
            })
            .unwrap(),
            from_chart(&CMChart {
                lambda: vec![e(0), e(1), e(2)],
                alpha: vec![e(1), e(2), e(3)],
            })
            .unwrap(),
        ];
        for p in cases {
            let w1 = wave_from_cm(&p, 6).unwrap();
            let w2 = sato_wave(&p, 6).unwrap();
            assert_eq!(w1, w2);
        }
        // m = 0: both routes give the constant series 1.
        let p = pair_n1(2, 5);
        assert_eq!(wave_from_cm(&p, 0).unwrap(), sato_wave(&p, 0).unwrap());
    }

    #[test]
    fn dual_wave_n1_swaps_matrices() {
        let p = pair_n1(4, 3);
        let dual = bispectral_dual_wave(&p, 3).unwrap();
        let swapped = wave_from_cm(&pair_n1(3, 4), 3).unwrap();
        assert_eq!(dual, swapped);

        // Dual tau at linear time is det(xI + Z).
        let b = p.bispectral_involution();
        let taub = tau_from_cm(&b, 2).unwrap();
        assert_eq!(taub.at_linear_time(), det_x_plus(&p.z));
    }

    #[test]
    fn self_dual_symmetric_pair() {
        let p = pair_n1(5, 5);
        let dual = bispectral_dual_wave(&p, 4).unwrap();
        assert_eq!(dual, wave_from_cm(&p, 4).unwrap());
    }

    #[test]
    fn bispectral_double_expansion_symmetry() {
        for p in [pair_n1(2, -3), chart2((1, 0)), chart2((2, 1))] {
            assert!(bispectral_symmetry_check(&p, 6).unwrap());
        }
    }

    #[test]
    fn flow_shift_intertwining() {
        for p in [pair_n1(2, 3), chart2((1, 0)), chart2((0, 0))] {
            let r = frac(3, 2);
            let tau = tau_from_cm(&p, 2 * p.n).unwrap();
            let (flowed, _) = p.cm_flow(1, &r).unwrap();
            let tau_flowed = tau_from_cm(&flowed, 2 * p.n).unwrap();
            assert_eq!(tau_flowed.poly, tau.shift_t1(&r).poly);
        }
    }

    #[test]
    fn reality_report_examples() {
        let r = reality_conditions(&chart2((1, 0)), 4).unwrap();
        assert_eq!(
            r,
            RealityReport {
                tau_real: true,
                wave_real: true,
                realifiable: Some(true)
            }
        );

        let pi = from_chart(&CMChart {
            lambda: vec![E::i()],
            alpha: vec![e(0)],
        })
        .unwrap();
        let ri = reality_conditions(&pi, 3).unwrap();
        assert_eq!(
            ri,
            RealityReport {
                tau_real: false,
                wave_real: false,
                realifiable: Some(false)
            }
        );
    }

    #[test]
    fn reality_is_conjugation_invariant() {
        let p = chart2((1, 0));
        let i = E::i();
        let g = Matrix::new(2, 2, vec![e(1), i.clone(), e(0), e(1) + i]);
        let ginv = g.inverse().unwrap();
        let q = CMPair {
            n: 2,
            x: ginv.clone() * p.x.clone() * g.clone(),
            z: ginv * p.z.clone() * g,
        };
        assert!(!q.has_real_entries());
        assert!(validate(&q.x, &q.z).is_ok());
        let r = reality_conditions(&q, 4).unwrap();
        assert_eq!(
            r,
            RealityReport {
                tau_real: true,
                wave_real: true,
                realifiable: Some(true)
            }
        );
    }

    #[test]
    fn sufficient_criterion_examples() {
        assert!(thm_wad_criterion(&chart2((1, 0))).unwrap());
        // χ_Z = x² + 1/4 has no real roots: criterion fails although the pair
        // is real (sufficient, not necessary).
        assert!(!thm_wad_criterion(&chart2((0, 0))).unwrap());
        assert!(thm_wad_criterion(&pair_n1(3, -7)).unwrap());
        // Criterion true forces the full reality report.
        let r = reality_conditions(&chart2((1, 0)), 4).unwrap();
        assert!(r.tau_real && r.wave_real && r.realifiable == Some(true));
    }
}
