//! `cm` — command-line surface over the core library: pair validation,
//! spectral maps, tau/wave computation, quasi-exponential tooling, Schur
//! checks, Dunkl representations and the full reproducible harness run.

use std::fs;
use std::io::Read;
use std::path::PathBuf;
use std::time::Instant;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand};
use serde_json::{json, Value};

use cm_core::cherednik::{build_dunkl_rep, extract_cm_pair, reality_harness, regular_character_check};
use cm_core::cm::{fiber_solve, from_chart, UpsilonTarget};
use cm_core::harness::{suite_list, SuiteReport};
use cm_core::json as cj;
use cm_core::quasi::{canonicalize, gamma_wave, normalized_wronskian, thm3_harness};
use cm_core::schur::{coro_schur_harness, schur_function, Partition};
use cm_core::tau::{bispectral_symmetry_check, sato_wave, tau_from_cm, wave_from_cm};
use cm_core::{ApproxScalar, ExactScalar, UniPoly};

type E = ExactScalar;

#[derive(Parser)]
#[command(name = "cm", about = "Calogero-Moser / tau-function / Cherednik toolkit")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check the rank-one condition on a matrix pair (JSON input).
    Validate {
        #[arg(long)]
        input: Option<PathBuf>,
    },
    /// Convert a pair to its diagonal chart, or a chart back to a pair.
    Chart {
        #[arg(long)]
        input: Option<PathBuf>,
        /// Interpret the input as a chart and emit the pair.
        #[arg(long)]
        from_chart: bool,
    },
    /// Print both spectra of a pair.
    Upsilon {
        #[arg(long)]
        input: Option<PathBuf>,
    },
    /// Solve for all chart points over a target pair of spectra (n <= 3).
    Fiber {
        #[arg(long)]
        input: Option<PathBuf>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Conjugate a pair with real spectra to a real pair.
    Realify {
        #[arg(long)]
        input: Option<PathBuf>,
        #[arg(long)]
        require_real_spectra: bool,
    },
    /// Truncated tau function of a pair.
    Tau {
        #[arg(long)]
        input: Option<PathBuf>,
        #[arg(long, default_value_t = 3)]
        m: usize,
    },
    /// Wave-function coefficients a_1..a_m of a pair.
    Wave {
        #[arg(long)]
        input: Option<PathBuf>,
        #[arg(long, default_value_t = 6)]
        m: usize,
    },
    /// Compare the determinant and Sato formulas for the wave function.
    SatoCheck {
        #[arg(long)]
        input: Option<PathBuf>,
        #[arg(long, default_value_t = 6)]
        m: usize,
    },
    /// Check double-expansion symmetry against the bispectral dual.
    Bispectral {
        #[arg(long)]
        input: Option<PathBuf>,
        #[arg(long, default_value_t = 6)]
        order: usize,
    },
    /// Normalized Wronskian of a quasi-exponential space.
    Wronskian {
        #[arg(long)]
        input: Option<PathBuf>,
    },
    /// Canonical form of a quasi-exponential space.
    Canonicalize {
        #[arg(long)]
        input: Option<PathBuf>,
    },
    /// Wave coefficients of a quasi-exponential space (canonicalized first).
    GammaWave {
        #[arg(long)]
        input: Option<PathBuf>,
        #[arg(long, default_value_t = 6)]
        m: usize,
    },
    /// Conjugation-closure test for the span.
    RealSpan {
        #[arg(long)]
        input: Option<PathBuf>,
    },
    /// Real-rooted Wronskian vs real span report.
    Thm3 {
        #[arg(long)]
        input: Option<PathBuf>,
    },
    /// Schur polynomial in power sums for a partition, e.g. --parts 2,1.
    Schur {
        #[arg(long, value_delimiter = ',')]
        parts: Vec<u32>,
    },
    /// Reality harness for a Schur specialization p_1 = x + c_1, p_j = c_j.
    CoroSchur {
        #[arg(long, value_delimiter = ',')]
        parts: Vec<u32>,
        /// Constants c_1..c_k as "p/q" or "p/q:r/s" (real:imag).
        #[arg(long, value_delimiter = ',')]
        c: Vec<String>,
    },
    /// Build a Dunkl representation, verify relations, extract the pair.
    Dunkl {
        /// Distinct rationals, e.g. --lambda 1,2,-1/2
        #[arg(long, value_delimiter = ',')]
        lambda: Vec<String>,
        /// Rationals or "p/q:r/s" complex entries.
        #[arg(long, value_delimiter = ',')]
        mu: Vec<String>,
        #[arg(long, default_value = "1")]
        c: String,
        /// Also run the reality harness and print its verdict.
        #[arg(long)]
        reality: bool,
    },
    /// Run every harness suite; emit CSV + JSON summary.
    HarnessAll {
        #[arg(long, default_value_t = 7)]
        seed: u64,
        #[arg(long, default_value = "harness-report")]
        out_dir: PathBuf,
    },
}

fn read_input(path: &Option<PathBuf>) -> Result<Value> {
    let text = match path {
        Some(p) => fs::read_to_string(p).with_context(|| format!("reading {}", p.display()))?,
        None => {
            let mut s = String::new();
            std::io::stdin().read_to_string(&mut s)?;
            s
        }
    };
    serde_json::from_str(&text).context("malformed JSON input")
}

fn parse_rat(s: &str) -> Result<E> {
    let parse_real = |t: &str| -> Result<E> {
        let t = t.trim();
        let (p, q) = match t.split_once('/') {
            Some((a, b)) => (a.parse::<i64>()?, b.parse::<i64>()?),
            None => (t.parse::<i64>()?, 1),
        };
        if q == 0 {
            bail!("zero denominator in {t:?}");
        }
        Ok(E::from_frac(p, q))
    };
    match s.split_once(':') {
        Some((re, im)) => Ok(parse_real(re)? + E::i() * parse_real(im)?),
        None => parse_real(s),
    }
}

fn parse_rats(items: &[String]) -> Result<Vec<E>> {
    items.iter().map(|s| parse_rat(s)).collect()
}

fn print_json(v: &Value) {
    println!("{}", serde_json::to_string_pretty(v).unwrap());
}

fn poly_json(p: &UniPoly<E>) -> Value {
    Value::Array(
        (0..=p.degree().max(0) as usize)
            .map(|k| cj::scalar_to_json(&p.coeff(k)))
            .collect(),
    )
}

fn multipoly_json(p: &cm_core::MultiPoly<E>) -> Value {
    let terms: Vec<Value> = p
        .terms()
        .map(|(exps, c)| json!({"exps": exps, "coeff": cj::scalar_to_json(c)}))
        .collect();
    json!({ "terms": terms })
}

fn run() -> Result<i32> {
    let cli = Cli::parse();
    match cli.command {
        Command::Validate { input } => {
            let pair = cj::cm_pair_from_json(&read_input(&input)?)?;
            // Re-validation happens inside the parser; report it explicitly.
            cm_core::cm::validate(&pair.x, &pair.z)?;
            println!("valid, rank 1");
        }
        Command::Chart { input, from_chart: fc } => {
            let v = read_input(&input)?;
            if fc {
                let chart = cj::chart_from_json(&v)?;
                print_json(&cj::cm_pair_to_json(&from_chart(&chart)?));
            } else {
                let pair = cj::cm_pair_from_json(&v)?;
                print_json(&cj::chart_to_json(&pair.to_chart()?));
            }
        }
        Command::Upsilon { input } => {
            let pair = cj::cm_pair_from_json(&read_input(&input)?)?;
            let t = pair.upsilon_exact()?;
            let (sx, sz) = t.spectra();
            let ser = |s: &cm_core::Spectrum| -> Value {
                Value::Array(s.values.iter().map(cj::approx_scalar_to_json).collect())
            };
            print_json(&json!({"spec_x": ser(&sx), "spec_z": ser(&sz)}));
        }
        Command::Fiber { input, seed } => {
            let v = read_input(&input)?;
            let grab = |key: &str| -> Result<Vec<ApproxScalar>> {
                v.get(key)
                    .and_then(Value::as_array)
                    .context("fiber input needs spec_x / spec_z arrays")?
                    .iter()
                    .map(|e| Ok(cj::approx_scalar_from_json(e)?))
                    .collect()
            };
            let target = UpsilonTarget::new(grab("spec_x")?, grab("spec_z")?)?;
            let charts = fiber_solve(&target, seed)?;
            let out: Vec<Value> = charts
                .iter()
                .map(|c| {
                    let ser = |xs: &[ApproxScalar]| -> Value {
                        Value::Array(xs.iter().map(cj::approx_scalar_to_json).collect())
                    };
                    json!({"lambda": ser(&c.lambda), "alpha": ser(&c.alpha)})
                })
                .collect();
            print_json(&json!({"count": out.len(), "charts": out}));
        }
        Command::Realify { input, require_real_spectra } => {
            let pair = cj::cm_pair_from_json(&read_input(&input)?)?;
            let (real, residual) = pair.realify_regular(require_real_spectra)?;
            let mut v = cj::cm_pair_to_json(&real);
            v["residual"] = json!(residual);
            print_json(&v);
        }
        Command::Tau { input, m } => {
            let pair = cj::cm_pair_from_json(&read_input(&input)?)?;
            print_json(&cj::tau_to_json(&tau_from_cm(&pair, m)?));
        }
        Command::Wave { input, m } => {
            let pair = cj::cm_pair_from_json(&read_input(&input)?)?;
            print_json(&cj::wave_to_json(&wave_from_cm(&pair, m)?));
        }
        Command::SatoCheck { input, m } => {
            let pair = cj::cm_pair_from_json(&read_input(&input)?)?;
            let same = wave_from_cm(&pair, m)? == sato_wave(&pair, m)?;
            println!("{}", if same { "match" } else { "mismatch" });
            return Ok(if same { 0 } else { 1 });
        }
        Command::Bispectral { input, order } => {
            let pair = cj::cm_pair_from_json(&read_input(&input)?)?;
            let ok = bispectral_symmetry_check(&pair, order)?;
            println!("{}", if ok { "symmetric" } else { "asymmetric" });
            return Ok(if ok { 0 } else { 1 });
        }
        Command::Wronskian { input } => {
            let s = cj::quasi_from_json(&read_input(&input)?)?;
            let w = normalized_wronskian(&s)?;
            print_json(&json!({"coeffs": poly_json(&w), "display": w.to_string()}));
        }
        Command::Canonicalize { input } => {
            let s = cj::quasi_from_json(&read_input(&input)?)?;
            print_json(&cj::quasi_to_json(&canonicalize(&s)));
        }
        Command::GammaWave { input, m } => {
            let s = canonicalize(&cj::quasi_from_json(&read_input(&input)?)?);
            print_json(&cj::wave_to_json(&gamma_wave(&s, m)?));
        }
        Command::RealSpan { input } => {
            let s = cj::quasi_from_json(&read_input(&input)?)?;
            print_json(&json!({"real_span": cm_core::quasi::real_span_test(&s)}));
        }
        Command::Thm3 { input } => {
            let s = cj::quasi_from_json(&read_input(&input)?)?;
            let r = thm3_harness(&s)?;
            print_json(&json!({
                "hypothesis_evaluated": r.hypothesis_evaluated,
                "wronskian_real_rooted": r.wronskian_real_rooted,
                "real_span": r.real_span,
                "falsified": r.falsified(),
            }));
            return Ok(if r.falsified() { 1 } else { 0 });
        }
        Command::Schur { parts } => {
            let lam = Partition::new(parts)?;
            print_json(&multipoly_json(&schur_function(&lam)));
        }
        Command::CoroSchur { parts, c } => {
            let lam = Partition::new(parts)?;
            let consts = parse_rats(&c)?;
            let r = coro_schur_harness(&lam, &consts)?;
            print_json(&json!({
                "hypothesis": r.hypothesis,
                "conclusion": r.conclusion,
                "dependent_vars": r.dependent_vars,
                "falsified": r.falsified(),
            }));
            return Ok(if r.falsified() { 1 } else { 0 });
        }
        Command::Dunkl { lambda, mu, c, reality } => {
            let lam = parse_rats(&lambda)?;
            let mus = parse_rats(&mu)?;
            let cc = parse_rat(&c)?;
            let rep = build_dunkl_rep(&lam, &mus, &cc)?;
            let pair = extract_cm_pair(&rep)?;
            let mut v = json!({
                "relations": "verified",
                "regular_character": regular_character_check(&rep),
                "pair": cj::cm_pair_to_json(&pair),
            });
            if reality {
                let r = reality_harness(&rep)?;
                v["reality"] = json!({
                    "hypothesis": r.hypothesis,
                    "conclusion": r.conclusion,
                    "pair_residual": r.pair_residual,
                    "falsified": r.falsified(),
                });
                print_json(&v);
                return Ok(if r.falsified() { 1 } else { 0 });
            }
            print_json(&v);
        }
        Command::HarnessAll { seed, out_dir } => {
            return harness_all(seed, &out_dir);
        }
    }
    Ok(0)
}

/// Deterministic report: CSV of (suite, id, n, H, C, residual) plus a JSON
/// summary. Wall times go to a separate file so the main artifacts are
/// byte-identical across runs with the same seed.
fn harness_all(seed: u64, out_dir: &PathBuf) -> Result<i32> {
    fs::create_dir_all(out_dir)?;
    let mut suites: Vec<(SuiteReport, f64)> = Vec::new();
    for run_suite in suite_list() {
        let start = Instant::now();
        let suite = run_suite(seed)?;
        suites.push((suite, start.elapsed().as_secs_f64()));
    }

    let flag = |b: Option<bool>| match b {
        Some(true) => "1",
        Some(false) => "0",
        None => "-",
    };
    let mut csv = String::from("suite,id,n,hypothesis,conclusion,residual\n");
    let mut falsified: Vec<Value> = Vec::new();
    let mut summary_suites: Vec<Value> = Vec::new();
    for (suite, _) in &suites {
        for r in &suite.records {
            csv.push_str(&format!(
                "{},{},{},{},{},{:.12e}\n",
                suite.name,
                r.id,
                r.n,
                flag(r.hypothesis),
                flag(r.conclusion),
                r.residual
            ));
            if r.falsified() {
                falsified.push(json!({
                    "suite": suite.name, "id": r.id, "n": r.n, "detail": r.detail,
                }));
            }
        }
        summary_suites.push(json!({
            "suite": suite.name,
            "instances": suite.records.len(),
            "falsifications": suite.falsifications(),
            "passed": suite.passed(),
        }));
    }
    let total_falsifications = falsified.len();
    let summary = json!({
        "seed": seed,
        "suites": summary_suites,
        "falsifications": falsified,
        "passed": total_falsifications == 0,
    });
    fs::write(out_dir.join("report.csv"), &csv)?;
    fs::write(
        out_dir.join("summary.json"),
        serde_json::to_string_pretty(&summary)?,
    )?;
    let mut times = String::from("suite,seconds\n");
    for (suite, t) in &suites {
        times.push_str(&format!("{},{:.3}\n", suite.name, t));
    }
    fs::write(out_dir.join("times.csv"), times)?;
    for s in &summary_suites {
        println!(
            "{}: {} instances, {} falsifications",
            s["suite"].as_str().unwrap(),
            s["instances"],
            s["falsifications"]
        );
    }
    if total_falsifications > 0 {
        eprintln!(
            "{}",
            serde_json::to_string_pretty(&json!({"falsified": falsified}))?
        );
        return Ok(1);
    }
    Ok(0)
}

fn main() {
    match run() {
        Ok(code) => std::process::exit(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            std::process::exit(2);
        }
    }
}
