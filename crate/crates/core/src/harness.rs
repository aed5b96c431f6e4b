//! Property-based harness suites mirroring the acceptance criteria. Each
//! suite runs a seeded batch of instances and records per-instance
//! (hypothesis, conclusion, residual) triples; a falsification is an
//! instance whose hypothesis holds while its conclusion fails.

use rand::Rng;

use crate::cherednik::{build_dunkl_rep, extract_cm_pair, reality_harness, regular_character_check};
use crate::cm::{fiber_solve, from_chart, real_fiber_certified, validate, UpsilonTarget};
use crate::error::Result;
use crate::poly::UniPoly;
use crate::quasi::{
    beta_from_gamma, canonicalize, normalized_wronskian, thm3_harness, QuasiExpSpace,
};
use crate::sample;
use crate::scalar::{ApproxScalar, ExactScalar, Scalar};
use crate::schur::{coro_schur_harness, elementary_schur, schur_function, Partition};
use crate::tau::{
    bispectral_symmetry_check, det_ring, sato_wave, tau_from_cm, wave_from_cm,
};

type E = ExactScalar;

/// One tested instance.
#[derive(Clone, Debug)]
pub struct HarnessRecord {
    pub id: String,
    pub n: usize,
    /// None: hypothesis not evaluated (precondition unmet / degenerate).
    pub hypothesis: Option<bool>,
    pub conclusion: Option<bool>,
    pub residual: f64,
    pub detail: String,
}

impl HarnessRecord {
    pub fn falsified(&self) -> bool {
        self.hypothesis == Some(true) && self.conclusion == Some(false)
    }
}

/// Result of one suite run.
#[derive(Clone, Debug)]
pub struct SuiteReport {
    pub name: &'static str,
    pub records: Vec<HarnessRecord>,
}

impl SuiteReport {
    pub fn falsifications(&self) -> usize {
        self.records.iter().filter(|r| r.falsified()).count()
    }

    pub fn passed(&self) -> bool {
        self.falsifications() == 0
    }

    fn push(
        &mut self,
        n: usize,
        hypothesis: Option<bool>,
        conclusion: Option<bool>,
        residual: f64,
        detail: impl Into<String>,
    ) {
        let id = format!("{}-{:04}", self.name, self.records.len());
        self.records.push(HarnessRecord { id, n, hypothesis, conclusion, residual, detail: detail.into() });
    }
}

fn to_approx_scalar(v: &E) -> ApproxScalar {
    ApproxScalar(v.to_complex())
}

/// Criterion 1: chart-generated pairs satisfy the rank-one condition exactly.
pub fn suite_rank_one(seed: u64) -> Result<SuiteReport> {
    let mut report = SuiteReport { name: "rank_one", records: Vec::new() };
    let mut rng = sample::rng(seed);
    for n in 1..=6usize {
        for k in 0..200 {
            let p = sample::pair(&mut rng, n, k % 2 == 0);
            let ok = validate(&p.x, &p.z).is_ok();
            report.push(n, Some(true), Some(ok), 0.0, "validate");
        }
    }
    Ok(report)
}

/// Generic approx spectra with a minimum pairwise separation.
fn separated_spectrum(
    rng: &mut rand_chacha::ChaCha8Rng,
    n: usize,
    gaussian: bool,
) -> Vec<ApproxScalar> {
    loop {
        let vals: Vec<E> = if gaussian {
            sample::distinct_gaussian_rationals(rng, n, 4)
        } else {
            sample::distinct_rationals(rng, n, 4)
        };
        let approx: Vec<ApproxScalar> = vals.iter().map(to_approx_scalar).collect();
        let mut ok = true;
        for i in 0..n {
            for j in i + 1..n {
                if (approx[i].0 - approx[j].0).norm() < 0.3 {
                    ok = false;
                }
            }
        }
        if ok {
            return approx;
        }
    }
}

/// Criterion 2: the spectral map has fibers of size n! for n ≤ 3.
pub fn suite_upsilon_degree(seed: u64) -> Result<SuiteReport> {
    let mut report = SuiteReport { name: "upsilon_degree", records: Vec::new() };
    let mut rng = sample::rng(seed);
    for n in 1..=3usize {
        let expect: usize = (1..=n).product();
        for k in 0..20u64 {
            let sx = separated_spectrum(&mut rng, n, true);
            let sz = separated_spectrum(&mut rng, n, true);
            let target = UpsilonTarget::new(sx, sz)?;
            let count = fiber_solve(&target, seed ^ (n as u64) << 8 ^ k)?.len();
            report.push(
                n,
                Some(true),
                Some(count == expect),
                count as f64 - expect as f64,
                format!("fiber size {count}"),
            );
        }
    }
    Ok(report)
}

/// Criterion 3: over targets with both spectra real, every fiber point is
/// real — exactly certified for n ≤ 2, to 1e−8 for n = 3.
pub fn suite_fiber_realify(seed: u64) -> Result<SuiteReport> {
    let mut report = SuiteReport { name: "fiber_realify", records: Vec::new() };
    let mut rng = sample::rng(seed);
    for n in 1..=2usize {
        for _ in 0..50 {
            let sx = sample::distinct_rationals(&mut rng, n, 5);
            let sz = sample::distinct_rationals(&mut rng, n, 5);
            let target = UpsilonTarget::new(sx, sz)?;
            let certified = real_fiber_certified(&target)?;
            report.push(n, Some(true), Some(certified), 0.0, "exact discriminant certificate");
        }
    }
    for k in 0..50u64 {
        let sx = separated_spectrum(&mut rng, 3, false);
        let sz = separated_spectrum(&mut rng, 3, false);
        let target = UpsilonTarget::new(sx, sz)?;
        let charts = fiber_solve(&target, seed ^ 0xf1be5 ^ k)?;
        let mut residual: f64 = 0.0;
        for c in &charts {
            for a in c.lambda.iter().chain(&c.alpha) {
                residual = residual.max(a.0.im.abs());
            }
        }
        let complete = charts.len() == 6;
        report.push(
            3,
            Some(complete),
            Some(complete && residual <= 1e-8),
            residual,
            format!("{} fiber points", charts.len()),
        );
    }
    Ok(report)
}

/// Criterion 4: the determinant formula and the Sato formula produce the
/// same wave coefficients exactly.
pub fn suite_sato(seed: u64) -> Result<SuiteReport> {
    let mut report = SuiteReport { name: "sato", records: Vec::new() };
    let mut rng = sample::rng(seed);
    for k in 0..50usize {
        let n = k % 4 + 1;
        let p = sample::pair(&mut rng, n, k % 3 == 0);
        let direct = wave_from_cm(&p, 6)?;
        let sato = sato_wave(&p, 6)?;
        report.push(n, Some(true), Some(direct == sato), 0.0, "a_1..a_6 exact equality");
    }
    Ok(report)
}

/// Criterion 5: τ(x, 0, …) = (−1)^n χ_X(−x), and the same identity for the
/// bispectral dual with χ_Z.
pub fn suite_tau_specialization(seed: u64) -> Result<SuiteReport> {
    let mut report = SuiteReport { name: "tau_specialization", records: Vec::new() };
    let mut rng = sample::rng(seed);
    for k in 0..30usize {
        let n = k % 4 + 1;
        let p = sample::pair(&mut rng, n, k % 2 == 0);
        let sign = E::from_int(if n % 2 == 1 { -1 } else { 1 });
        let tau = tau_from_cm(&p, n.max(3))?;
        let lhs = tau.at_linear_time();
        let rhs = p.x.char_poly()?.reflect().scale(&sign);
        let dual = p.bispectral_involution();
        let taub = tau_from_cm(&dual, n.max(3))?;
        let lhs_b = taub.at_linear_time();
        let rhs_b = p.z.char_poly()?.reflect().scale(&sign);
        report.push(
            n,
            Some(true),
            Some(lhs == rhs && lhs_b == rhs_b),
            0.0,
            "linear-time specialization",
        );
    }
    Ok(report)
}

/// Criterion 6: double-expansion symmetry of the wave function and its
/// bispectral dual, exact for i + j ≤ 6.
pub fn suite_bispectral(seed: u64) -> Result<SuiteReport> {
    let mut report = SuiteReport { name: "bispectral", records: Vec::new() };
    let mut rng = sample::rng(seed);
    for k in 0..20usize {
        let n = k % 3 + 1;
        let p = sample::pair(&mut rng, n, k % 2 == 1);
        let ok = bispectral_symmetry_check(&p, 6)?;
        report.push(n, Some(true), Some(ok), 0.0, "double expansion i+j <= 6");
    }
    Ok(report)
}

/// Criterion 7: the first flow intertwines with the t_1 shift on τ.
pub fn suite_flow(seed: u64) -> Result<SuiteReport> {
    let mut report = SuiteReport { name: "flow", records: Vec::new() };
    let mut rng = sample::rng(seed);
    for k in 0..50usize {
        let n = k % 4 + 1;
        let p = sample::pair(&mut rng, n, k % 2 == 0);
        let r = sample::rational(&mut rng, 4);
        let (flowed, _) = p.cm_flow(1, &r)?;
        let lhs = tau_from_cm(&flowed, 4)?;
        let rhs = tau_from_cm(&p, 4)?.shift_t1(&r);
        report.push(n, Some(true), Some(lhs == rhs), 0.0, "flow vs t1 shift");
    }
    Ok(report)
}

/// Criterion 8: Wronskian basis invariance, and consistency of the
/// normalized Wronskian with the τ specialization through the fiber bridge.
pub fn suite_wronskian(seed: u64) -> Result<SuiteReport> {
    let mut report = SuiteReport { name: "wronskian", records: Vec::new() };
    let mut rng = sample::rng(seed);
    // 100 random basis changes.
    for k in 0..100usize {
        let k_comp = rng.gen_range(1..=2);
        let s = sample::quasi_space(&mut rng, k_comp, 3, k % 2 == 0);
        let w1 = normalized_wronskian(&s)?;
        // Random invertible upper-triangular change inside each component.
        let mut changed = s.clone();
        for basis in &mut changed.spaces {
            let d = basis.len();
            let mut new_basis = Vec::with_capacity(d);
            for i in 0..d {
                let mut v = basis[i].clone();
                let mut scale = sample::rational(&mut rng, 3);
                while scale == E::zero() {
                    scale = sample::rational(&mut rng, 3);
                }
                v = v.scale(&scale);
                for prev in basis.iter().take(i) {
                    v = v + prev.scale(&sample::rational(&mut rng, 3));
                }
                new_basis.push(v);
            }
            *basis = new_basis;
        }
        let w2 = normalized_wronskian(&changed)?;
        report.push(s.dim(), Some(true), Some(w1 == w2), 0.0, "basis invariance");
    }
    // 20 all-real-μ instances matched through the fiber bridge.
    let mut matched = 0usize;
    let mut attempts = 0usize;
    while matched < 20 && attempts < 200 {
        attempts += 1;
        let k_comp = rng.gen_range(1..=2);
        let total = rng.gen_range(k_comp..=3);
        let s = sample::quasi_space(&mut rng, k_comp, total, false);
        let c = canonicalize(&s);
        let n = c.dim();
        if n == 0 || n != s.dim() {
            continue;
        }
        let chart = match beta_from_gamma(&c, n + 3, seed ^ 0x3a7 ^ attempts as u64) {
            Ok(ch) => ch,
            Err(_) => continue,
        };
        let pair = from_chart(&chart)?;
        let tau = tau_from_cm(&pair, n.max(2))?;
        let spec = tau.at_linear_time();
        // Monic normalization of τ(x, 0, …) against the Wronskian.
        let lead = spec.leading().cloned().unwrap_or_else(ApproxScalar::one);
        let wr = normalized_wronskian(&c)?;
        let mut residual: f64 = 0.0;
        for d in 0..=wr.degree().max(spec.degree()) as usize {
            let a = spec.coeff(d).0 / lead.0;
            let b = wr.coeff(d).to_complex();
            residual = residual.max((a - b).norm());
        }
        matched += 1;
        report.push(n, Some(true), Some(residual <= 1e-6), residual, "tau0 vs Wronskian");
    }
    Ok(report)
}

/// Criterion 9: real-rooted real Wronskian forces a real span (total dim ≤ 4,
/// k ≤ 2): grid plus random instances.
pub fn suite_thm3(seed: u64) -> Result<SuiteReport> {
    let mut report = SuiteReport { name: "thm3", records: Vec::new() };
    let mut rng = sample::rng(seed);
    // Grid part: V = span{x + a, x² + b} at μ = 0.
    for a in -2..=2i64 {
        for b in -2..=2i64 {
            let s = QuasiExpSpace::new(
                vec![E::zero()],
                vec![vec![
                    UniPoly::new(vec![E::from_int(a), E::one()]),
                    UniPoly::new(vec![E::from_int(b), E::zero(), E::one()]),
                ]],
            )?;
            push_thm3(&mut report, &s)?;
        }
    }
    // Random Gaussian-rational perturbations.
    while report.records.len() < 200 {
        let k = rng.gen_range(1..=2usize);
        let total = rng.gen_range(k..=4usize);
        let gaussian = rng.gen_bool(0.5);
        let s = sample::quasi_space(&mut rng, k, total, gaussian);
        push_thm3(&mut report, &s)?;
    }
    Ok(report)
}

fn push_thm3(report: &mut SuiteReport, s: &QuasiExpSpace) -> Result<()> {
    let r = thm3_harness(s)?;
    let hypothesis = if r.hypothesis_evaluated { Some(r.wronskian_real_rooted) } else { None };
    report.push(s.dim(), hypothesis, Some(r.real_span), 0.0, "thm3");
    Ok(())
}

/// Criterion 10: the k = 1, μ = 0 special case — real-rooted Wronskian of a
/// polynomial subspace implies a conjugation-closed span.
pub fn suite_shapiro(seed: u64) -> Result<SuiteReport> {
    let mut report = SuiteReport { name: "shapiro", records: Vec::new() };
    let mut rng = sample::rng(seed);
    for k in 0..200usize {
        let dim = rng.gen_range(1..=4usize);
        let basis = sample::poly_basis(&mut rng, dim, dim + 2, k % 2 == 0);
        let s = QuasiExpSpace::new(vec![E::zero()], vec![basis])?;
        push_thm3(&mut report, &s)?;
    }
    Ok(report)
}

/// Independent oracle for S_m: direct enumeration of the multi-indices
/// (j_1, j_2, …) with Σ i·j_i = m, each contributing Π p_i^{j_i}/j_i!.
fn oracle_elementary(m: usize, num_vars: usize) -> crate::multipoly::MultiPoly<E> {
    fn go(
        m_left: usize,
        i: usize,
        exps: &mut Vec<u32>,
        coeff: E,
        acc: &mut crate::multipoly::MultiPoly<E>,
    ) {
        if m_left == 0 {
            acc.add_term(exps.clone(), coeff);
            return;
        }
        if i > m_left {
            return;
        }
        let mut fact = E::one();
        let mut j = 0usize;
        while i * j <= m_left {
            if j > 0 {
                fact = fact * E::from_int(j as i64);
            }
            exps[i - 1] = j as u32;
            if i == m_left || i < m_left {
                go(
                    m_left - i * j,
                    i + 1,
                    exps,
                    coeff.clone() * fact.checked_inv().unwrap(),
                    acc,
                );
            }
            j += 1;
        }
        exps[i - 1] = 0;
    }
    let mut acc = crate::multipoly::MultiPoly::zero(num_vars);
    if m == 0 {
        return crate::multipoly::MultiPoly::one(num_vars);
    }
    let mut exps = vec![0u32; num_vars];
    go(m, 1, &mut exps, E::one(), &mut acc);
    acc
}

/// Criterion 11: Jacobi–Trudi values against the brute-force oracle, plus
/// the λ = (2) reality grid.
pub fn suite_schur(seed: u64) -> Result<SuiteReport> {
    let mut report = SuiteReport { name: "schur", records: Vec::new() };
    let mut rng = sample::rng(seed);
    for parts in [vec![1], vec![2], vec![1, 1], vec![2, 1], vec![3], vec![2, 2]] {
        let lam = Partition::new(parts.clone())?;
        let nvars = lam.num_vars();
        let l = lam.len();
        let rows: Vec<Vec<_>> = (0..l)
            .map(|i| {
                (0..l)
                    .map(|j| {
                        let deg = lam.parts[i] as i64 + j as i64 - i as i64;
                        if deg < 0 {
                            crate::multipoly::MultiPoly::zero(nvars)
                        } else {
                            oracle_elementary(deg as usize, nvars)
                        }
                    })
                    .collect()
            })
            .collect();
        let oracle = det_ring(&rows);
        let ok = schur_function(&lam) == oracle;
        report.push(l, Some(true), Some(ok), 0.0, format!("jacobi-trudi {parts:?}"));
    }
    for m in 0..=6i64 {
        let ok = elementary_schur(m, 6) == oracle_elementary(m.max(0) as usize, 6);
        report.push(1, Some(true), Some(ok), 0.0, format!("S_{m} oracle"));
    }
    let l2 = Partition::new(vec![2])?;
    for a in -2..=2i64 {
        for b in -2..=2i64 {
            let r = coro_schur_harness(&l2, &[E::from_int(a), E::from_int(b)])?;
            report.push(2, r.hypothesis, Some(r.conclusion), 0.0, "coro grid");
        }
    }
    for _ in 0..20 {
        let c1 = sample::gaussian_rational(&mut rng, 2);
        let c2 = sample::gaussian_rational(&mut rng, 2);
        let r = coro_schur_harness(&l2, &[c1, c2])?;
        report.push(2, r.hypothesis, Some(r.conclusion), 0.0, "coro random");
    }
    Ok(report)
}

/// Criterion 12: Cherednik relations, extraction validity, spectrum claim
/// and the regular-representation character, n ≤ 4.
pub fn suite_cherednik_relations(seed: u64) -> Result<SuiteReport> {
    let mut report = SuiteReport { name: "cherednik_relations", records: Vec::new() };
    let mut rng = sample::rng(seed);
    for n in 2..=4usize {
        let samples = 20usize;
        for _ in 0..samples {
            let lam = sample::distinct_rationals(&mut rng, n, 5);
            let mu: Vec<E> = (0..n).map(|_| sample::rational(&mut rng, 5)).collect();
            // Construction verifies every defining relation exactly.
            let rep = build_dunkl_rep(&lam, &mu, &E::one())?;
            let pair = extract_cm_pair(&rep)?;
            let spec_ok = pair.x.char_poly()? == UniPoly::from_roots(&lam);
            let char_ok = regular_character_check(&rep);
            report.push(n, Some(true), Some(spec_ok && char_ok), 0.0, "relations+extract");
        }
    }
    Ok(report)
}

/// Criterion 13: real-rooted extracted spectra force a simultaneous real
/// form of the full generator list, n = 2, 3.
pub fn suite_cherednik_main(seed: u64) -> Result<SuiteReport> {
    let mut report = SuiteReport { name: "cherednik_main", records: Vec::new() };
    let mut rng = sample::rng(seed);
    for n in 2..=3usize {
        let samples = if n == 2 { 60 } else { 48 };
        for k in 0..samples {
            let lam = sample::distinct_rationals(&mut rng, n, 4);
            let mut mu: Vec<E> = (0..n).map(|_| sample::rational(&mut rng, 4)).collect();
            if k % 2 == 1 {
                // Conjugate-paired non-real μ.
                let m = sample::rational(&mut rng, 4) + E::i() * sample::rational(&mut rng, 4);
                mu[0] = m.clone();
                mu[1] = m.conj();
            }
            let rep = build_dunkl_rep(&lam, &mu, &E::one())?;
            let r = reality_harness(&rep)?;
            report.push(
                n,
                r.hypothesis,
                r.conclusion,
                r.pair_residual.unwrap_or(0.0),
                "main theorem",
            );
        }
    }
    Ok(report)
}

/// Suite functions in acceptance order.
pub fn suite_list() -> Vec<fn(u64) -> Result<SuiteReport>> {
    vec![
        suite_rank_one,
        suite_upsilon_degree,
        suite_fiber_realify,
        suite_sato,
        suite_tau_specialization,
        suite_bispectral,
        suite_flow,
        suite_wronskian,
        suite_thm3,
        suite_shapiro,
        suite_schur,
        suite_cherednik_relations,
        suite_cherednik_main,
    ]
}

/// All suites in acceptance order.
pub fn all_suites(seed: u64) -> Result<Vec<SuiteReport>> {
    suite_list().into_iter().map(|f| f(seed)).collect()
}
