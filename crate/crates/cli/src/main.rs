//! Command-line driver wiring the pipeline: construct a family, quotient
//! it, solve or peel the weighted cover, lift, verify, and report bounds.
//! All artifacts are JSON; big integers travel as decimal strings.

use anyhow::{anyhow, bail, Context, Result};
use clap::{Parser, Subcommand};
use nmbound_core as core;
use nmbound_core::json;
use num::{BigInt, BigRational};
use serde_json::{json, Value};
use sha2::{Digest, Sha256};
use std::path::{Path, PathBuf};
use std::str::FromStr;
use std::time::{Duration, Instant};

#[derive(Parser)]
#[command(name = "nmbound", version, about = "Exact cover bounds for list coloring of complete bipartite graphs")]
struct Cli {
    /// Write the primary JSON output here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    /// Output format; json is the only one implemented (flag reserved).
    #[arg(long, global = true, default_value = "json")]
    format: String,

    /// Reserved for randomized harnesses; results never depend on it.
    #[arg(long, global = true)]
    seed: Option<u64>,

    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Generate one of the list families.
    Construct {
        /// 1 (lift), 2 (five-list template), 3 (shared-core template), or "trivial".
        #[arg(long)]
        theorem: String,
        #[arg(long)]
        m: Option<usize>,
        /// k1,k2,k3,k4,k5 for theorem 2.
        #[arg(long)]
        params: Option<String>,
        /// Core size for theorem 3.
        #[arg(long)]
        k: Option<usize>,
        /// Shared l2/l3 block size for theorem 3.
        #[arg(long)]
        l: Option<usize>,
        /// Base family file for theorem 1.
        #[arg(long)]
        base: Option<PathBuf>,
        /// Number of color-disjoint copies for theorem 1.
        #[arg(long)]
        copies: Option<usize>,
        /// For "trivial": also write the n-side hypergraph here.
        #[arg(long)]
        n_out: Option<PathBuf>,
    },
    /// Collapse a family onto weighted representatives.
    Quotient {
        #[arg(long)]
        family: PathBuf,
    },
    /// Minimum weighted k-cover of a family's minimal transversals, or of
    /// an explicit target hypergraph.
    SolveCover {
        #[arg(long)]
        family: Option<PathBuf>,
        #[arg(long)]
        targets: Option<PathBuf>,
        /// Weight table file {"color": weight, ...} for --targets mode.
        #[arg(long)]
        weights: Option<PathBuf>,
        /// Cover edge cardinality; defaults to m-2 in --family mode.
        #[arg(long)]
        k: Option<usize>,
        #[arg(long, default_value = "exact")]
        method: String,
        #[arg(long)]
        timeout_ms: Option<u64>,
    },
    /// Check a bipartite list assignment through both badness criteria.
    VerifyWitness {
        #[arg(long)]
        m_lists: PathBuf,
        #[arg(long)]
        n_lists: PathBuf,
    },
    /// Minimize the normalized five-list cover value.
    Optimize {
        #[arg(long, default_value = "reduced")]
        mode: String,
        #[arg(long, default_value_t = 0.005)]
        grid: f64,
        #[arg(long, default_value_t = 1e-8)]
        tol: f64,
    },
    /// Evaluate a closed form: t2, t2r, t3, t3-opt-l, hj, or asym.
    Eval {
        #[arg(long)]
        formula: String,
        /// Comma-separated rationals (e.g. 1/3,1/3,1/3,0,0) for t2/t2r.
        #[arg(long)]
        alpha: Option<String>,
        #[arg(long)]
        m: Option<u64>,
        #[arg(long)]
        k: Option<u64>,
        #[arg(long)]
        l: Option<u64>,
    },
    /// construct -> quotient -> solve -> lift -> verify -> report.
    Pipeline {
        #[arg(long)]
        family: Option<PathBuf>,
        /// theorem1 | theorem2 | theorem3 (alternative to --family).
        #[arg(long)]
        construct: Option<String>,
        #[arg(long)]
        m: Option<usize>,
        #[arg(long)]
        params: Option<String>,
        #[arg(long)]
        k: Option<usize>,
        #[arg(long)]
        l: Option<usize>,
        #[arg(long)]
        base: Option<PathBuf>,
        #[arg(long)]
        copies: Option<usize>,
        /// exact | greedy | oracle | constructed (theorem3 only).
        #[arg(long, default_value = "exact")]
        method: String,
        #[arg(long)]
        timeout_ms: Option<u64>,
        /// Also write the verified cover as a standalone artifact.
        #[arg(long)]
        cover_out: Option<PathBuf>,
    },
}

fn main() {
    let cli = Cli::parse();
    if cli.format != "json" {
        eprintln!("error: only --format json is implemented");
        std::process::exit(2);
    }
    if let Err(e) = run(&cli) {
        eprintln!("error: {e:#}");
        std::process::exit(1);
    }
}

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

fn emit(out: &Option<PathBuf>, value: &Value, summary: &str) -> Result<()> {
    let text = json::to_pretty_string(value);
    match out {
        Some(path) => {
            std::fs::write(path, text).with_context(|| format!("writing {}", path.display()))?;
            println!("{summary} -> {}", path.display());
        }
        None => print!("{text}"),
    }
    Ok(())
}

fn sha256_hex(text: &str) -> String {
    let mut hasher = Sha256::new();
    hasher.update(text.as_bytes());
    format!("{:x}", hasher.finalize())
}

fn parse_usize_list(text: &str) -> Result<Vec<usize>> {
    text.split(',')
        .map(|p| p.trim().parse::<usize>().map_err(|e| anyhow!("bad integer '{p}': {e}")))
        .collect()
}

fn parse_rational(text: &str) -> Result<BigRational> {
    let text = text.trim();
    if let Some((n, d)) = text.split_once('/') {
        let n = BigInt::from_str(n.trim())?;
        let d = BigInt::from_str(d.trim())?;
        if d == BigInt::from(0) {
            bail!("zero denominator in '{text}'");
        }
        return Ok(BigRational::new(n, d));
    }
    if let Some((int, frac)) = text.split_once('.') {
        let digits = frac.len() as u32;
        let scale = BigInt::from(10).pow(digits);
        let int: BigInt = if int.is_empty() { BigInt::from(0) } else { BigInt::from_str(int)? };
        let frac = BigInt::from_str(frac)?;
        let neg = text.starts_with('-');
        let num = int.clone() * scale.clone() + if neg { -frac } else { frac };
        return Ok(BigRational::new(num, scale));
    }
    Ok(BigRational::from_integer(BigInt::from_str(text)?))
}

fn rational_str(r: &BigRational) -> String {
    if r.is_integer() {
        r.to_integer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

fn rational_f64(r: &BigRational) -> f64 {
    // string round-trip handles magnitudes beyond i64
    let n: f64 = r.numer().to_string().parse().unwrap_or(f64::NAN);
    let d: f64 = r.denom().to_string().parse().unwrap_or(f64::NAN);
    n / d
}

/// Cover edges re-expressed in the labels the input file used, so the
/// artifact lines up with the original family for independent checks.
fn labeled_cover_value(cover: &core::Cover, labels: &[String]) -> Value {
    let label = |c: u32| -> Value {
        let text = labels
            .get(c as usize)
            .cloned()
            .unwrap_or_else(|| c.to_string());
        match text.parse::<u64>() {
            Ok(n) => json!(n),
            Err(_) => json!(text),
        }
    };
    json!({
        "k": cover.k(),
        "edges": cover
            .edges()
            .iter()
            .map(|e| e.iter().map(label).collect::<Vec<_>>())
            .collect::<Vec<_>>(),
    })
}

fn build_family(
    construct: &str,
    m: Option<usize>,
    params: &Option<String>,
    k: Option<usize>,
    l: Option<usize>,
    base: &Option<PathBuf>,
    copies: Option<usize>,
) -> Result<core::ListFamily> {
    match construct {
        "theorem2" | "2" => {
            let m = m.ok_or_else(|| anyhow!("theorem 2 needs --m"))?;
            let raw = params.as_ref().ok_or_else(|| anyhow!("theorem 2 needs --params k1,k2,k3,k4,k5"))?;
            let ks = parse_usize_list(raw)?;
            let ks: [usize; 5] = ks
                .try_into()
                .map_err(|v: Vec<usize>| anyhow!("expected 5 params, got {}", v.len()))?;
            Ok(core::theorem2_family(&core::Theorem2Params::new(m, ks)?)?)
        }
        "theorem3" | "3" => {
            let m = m.ok_or_else(|| anyhow!("theorem 3 needs --m"))?;
            let k = k.ok_or_else(|| anyhow!("theorem 3 needs --k"))?;
            let l = l.ok_or_else(|| anyhow!("theorem 3 needs --l"))?;
            Ok(core::theorem3_family(&core::Theorem3Params::new(m, k, l)?)?)
        }
        "theorem1" | "1" => {
            let base = base.as_ref().ok_or_else(|| anyhow!("theorem 1 needs --base"))?;
            let copies = copies.ok_or_else(|| anyhow!("theorem 1 needs --copies"))?;
            let loaded = json::load_family(&read(base)?)?;
            Ok(core::theorem1_lift(&loaded.family, copies)?)
        }
        other => bail!("unknown construction '{other}'"),
    }
}

fn run(cli: &Cli) -> Result<()> {
    match &cli.cmd {
        Cmd::Construct { theorem, m, params, k, l, base, copies, n_out } => {
            if theorem == "trivial" {
                let m = m.ok_or_else(|| anyhow!("trivial needs --m"))?;
                let (family, n_side) = core::trivial_family(m)?;
                if let Some(path) = n_out {
                    std::fs::write(path, json::to_pretty_string(&json::hypergraph_to_value(&n_side)))?;
                }
                return emit(
                    &cli.out,
                    &json::family_to_value(&family),
                    &format!("trivial family with {} lists of size {m}", family.len()),
                );
            }
            let family = build_family(theorem, *m, params, *k, *l, base, *copies)?;
            emit(
                &cli.out,
                &json::family_to_value(&family),
                &format!("family with {} lists of size {}", family.len(), family.lists()[0].len()),
            )
        }

        Cmd::Quotient { family } => {
            let loaded = json::load_family(&read(family)?)?;
            let wf = core::quotient_family(&loaded.family)?;
            emit(
                &cli.out,
                &json::weighted_family_to_value(&wf),
                &format!("{} classes over {} colors", wf.classes().len(), loaded.family.color_union().len()),
            )
        }

        Cmd::SolveCover { family, targets, weights, k, method, timeout_ms } => {
            let limits = core::SolverLimits {
                timeout: timeout_ms.map(Duration::from_millis),
            };
            let report = match (family, targets) {
                (Some(path), None) => {
                    let loaded = json::load_family(&read(path)?)?;
                    let wf = core::quotient_family(&loaded.family)?;
                    let k = match k {
                        Some(k) => *k,
                        None => loaded.family.require_square()? - 2,
                    };
                    match method.as_str() {
                        "greedy" => {
                            let start = Instant::now();
                            let (cover, value) = core::greedy_track_peel_cover(&wf)?;
                            core::SolveReport {
                                value,
                                cover: Some(cover),
                                nodes_explored: 0,
                                elapsed: start.elapsed(),
                                method: core::SolveMethod::Greedy,
                            }
                        }
                        "exact" => {
                            let t = core::enumerate_minimal_transversals(wf.family())?;
                            core::solve_exact_min_weighted_cover(&t, &wf.weight_table(), k, &limits)?
                        }
                        "oracle" => {
                            let t = core::enumerate_minimal_transversals(wf.family())?;
                            core::brute_force_min_cover(&t, &wf.weight_table(), k, core::DEFAULT_ORACLE_CAP)?
                        }
                        other => bail!("unknown method '{other}'"),
                    }
                }
                (None, Some(path)) => {
                    let h = json::load_hypergraph(&read(path)?)?;
                    let k = k.ok_or_else(|| anyhow!("--targets mode needs --k"))?;
                    let mut table = vec![1u64; h.vertex_count()];
                    if let Some(wpath) = weights {
                        let raw: Value = serde_json::from_str(&read(wpath)?)?;
                        let obj = raw
                            .as_object()
                            .ok_or_else(|| anyhow!("weights file must be an object"))?;
                        for (key, val) in obj {
                            let c: usize = key.parse().context("weight keys must be color ids")?;
                            let w = val.as_u64().ok_or_else(|| anyhow!("weights must be integers"))?;
                            if c < table.len() {
                                table[c] = w;
                            }
                        }
                    }
                    match method.as_str() {
                        "exact" => core::solve_exact_min_weighted_cover(&h, &table, k, &limits)?,
                        "oracle" => core::brute_force_min_cover(&h, &table, k, core::DEFAULT_ORACLE_CAP)?,
                        "greedy" => bail!("greedy needs --family (it peels tracks, not targets)"),
                        other => bail!("unknown method '{other}'"),
                    }
                }
                _ => bail!("pass exactly one of --family or --targets"),
            };
            emit(
                &cli.out,
                &json::solve_report_to_value(&report),
                &format!("{} cover value {}", report.method.as_str(), report.value),
            )
        }

        Cmd::VerifyWitness { m_lists, n_lists } => {
            let (assignment, _) = json::load_assignment(&read(m_lists)?, &read(n_lists)?)?;
            let report = core::verify_witness(&assignment)?;
            let value = serde_json::to_value(&report)?;
            emit(&cli.out, &value, &report.implied_bound)?;
            if !report.method_agreement {
                bail!("the two badness criteria disagree; internal verification failed");
            }
            Ok(())
        }

        Cmd::Optimize { mode, grid, tol } => {
            let mode = core::OptimizeMode::from_str(mode)?;
            let r = core::optimize_theorem2(mode, *grid, *tol)?;
            // round up at the 4th decimal for a quotable safe bound
            let safe = (r.value * 10_000.0).ceil() / 10_000.0;
            let value = json!({
                "mode": match mode { core::OptimizeMode::Reduced => "reduced", core::OptimizeMode::Full => "full" },
                "value": r.value,
                "alpha": r.alpha.to_vec(),
                "exact_value": rational_str(&r.exact_value),
                "exact_alpha": r.exact_alpha.iter().map(rational_str).collect::<Vec<_>>(),
                "safe_upper_bound": safe,
                "grid_evaluations": r.grid_evaluations,
            });
            emit(&cli.out, &value, &format!("minimum {:.6} (safe bound {safe})", r.value))
        }

        Cmd::Eval { formula, alpha, m, k, l } => {
            let value = match formula.as_str() {
                "t2" => {
                    let raw = alpha.as_ref().ok_or_else(|| anyhow!("t2 needs --alpha a1,..,a5"))?;
                    let parts: Vec<BigRational> =
                        raw.split(',').map(parse_rational).collect::<Result<_>>()?;
                    let parts: [BigRational; 5] = parts
                        .try_into()
                        .map_err(|v: Vec<BigRational>| anyhow!("expected 5 alphas, got {}", v.len()))?;
                    let av = core::AlphaVector::new(parts.clone())?;
                    let v = core::theorem2_value(&av);
                    json!({
                        "formula": "t2",
                        "alpha": parts.iter().map(rational_str).collect::<Vec<_>>(),
                        "value": rational_str(&v),
                        "value_float": rational_f64(&v),
                    })
                }
                "t2r" => {
                    let raw = alpha.as_ref().ok_or_else(|| anyhow!("t2r needs --alpha a4,a5"))?;
                    let parts: Vec<BigRational> =
                        raw.split(',').map(parse_rational).collect::<Result<_>>()?;
                    if parts.len() != 2 {
                        bail!("expected 2 alphas, got {}", parts.len());
                    }
                    let v = core::theorem2_reduced_value(&parts[0], &parts[1])?;
                    json!({
                        "formula": "t2r",
                        "alpha": parts.iter().map(rational_str).collect::<Vec<_>>(),
                        "value": rational_str(&v),
                        "value_float": rational_f64(&v),
                    })
                }
                "t3" => {
                    let (m, k, l) = (
                        m.ok_or_else(|| anyhow!("t3 needs --m"))?,
                        k.ok_or_else(|| anyhow!("t3 needs --k"))?,
                        l.ok_or_else(|| anyhow!("t3 needs --l"))?,
                    );
                    let v = core::theorem3_value(m, k, l)?;
                    json!({"formula": "t3", "m": m, "k": k, "l": l, "value": v.to_string()})
                }
                "t3-opt-l" => {
                    let (m, k) = (
                        m.ok_or_else(|| anyhow!("t3-opt-l needs --m"))?,
                        k.ok_or_else(|| anyhow!("t3-opt-l needs --k"))?,
                    );
                    let l = core::theorem3_optimal_l(m, k)?;
                    let v = core::theorem3_value(m, k, l)?;
                    json!({"formula": "t3-opt-l", "m": m, "k": k, "l": l, "value": v.to_string()})
                }
                "hj" => {
                    let m = m.ok_or_else(|| anyhow!("hj needs --m"))? as usize;
                    let (low, high) = core::hoffman_johnson_range(m)?;
                    json!({"formula": "hj", "m": m, "low": low.to_string(), "high": high.to_string()})
                }
                "asym" => {
                    json!({"formula": "asym", "value": core::asymptotic_coefficient()})
                }
                other => bail!("unknown formula '{other}' (use t2, t2r, t3, t3-opt-l, hj, asym)"),
            };
            let summary = match (value.get("value"), value.get("low"), value.get("high")) {
                (Some(Value::String(s)), _, _) => s.clone(),
                (Some(other), _, _) => other.to_string(),
                (None, Some(Value::String(lo)), Some(Value::String(hi))) => format!("[{lo}, {hi})"),
                _ => "done".to_string(),
            };
            emit(&cli.out, &value, &summary)
        }

        Cmd::Pipeline {
            family,
            construct,
            m,
            params,
            k,
            l,
            base,
            copies,
            method,
            timeout_ms,
            cover_out,
        } => {
            let start = Instant::now();
            let (fam, labels) = match (family, construct) {
                (Some(path), None) => {
                    let loaded = json::load_family(&read(path)?)?;
                    (loaded.family, loaded.labels)
                }
                (None, Some(name)) => {
                    let fam = build_family(name, *m, params, *k, *l, base, *copies)?;
                    let labels = (0..fam.vertex_count() as u32).map(|c| c.to_string()).collect();
                    (fam, labels)
                }
                _ => bail!("pass exactly one of --family or --construct"),
            };
            let family_text = json::to_pretty_string(&json::family_to_value(&fam));
            let limits = core::SolverLimits { timeout: timeout_ms.map(Duration::from_millis) };

            let (report_value, bound, verified, cover) = if method == "constructed" {
                let (Some(name), Some(m), Some(k), Some(l)) = (construct.as_deref(), *m, *k, *l) else {
                    bail!("--method constructed needs --construct theorem3 --m --k --l");
                };
                if name != "theorem3" && name != "3" {
                    bail!("--method constructed applies to theorem 3 families only");
                }
                let p = core::Theorem3Params::new(m, k, l)?;
                let cover = core::theorem3_cover(&p)?;
                let targets = core::enumerate_minimal_transversals(&fam)?;
                let verified = core::verify_cover(&cover, &targets);
                let value = json!({
                    "m": fam.len(),
                    "list_size": fam.len() - 2,
                    "solve": {
                        "method": "constructed",
                        "value": cover.len().to_string(),
                        "infinite": false,
                        "nodes": 0,
                        "ms": start.elapsed().as_millis() as u64,
                    },
                    "cover_size": cover.len(),
                    "verified": verified,
                    "witness": Value::Null,
                    "bound": verified.then(|| format!("n_{} <= {}", fam.len(), cover.len())),
                    "note": Value::Null,
                });
                let bound = verified.then(|| format!("n_{} <= {}", fam.len(), cover.len()));
                (value, bound, verified, Some(cover))
            } else {
                let method = core::PipelineMethod::from_str(method)?;
                let report = core::run_bound_pipeline(&fam, method, &limits)?;
                let bound = report.bound_statement();
                let value = json!({
                    "m": report.m,
                    "list_size": report.list_size,
                    "quotient": {
                        "classes": report.class_count,
                        "targets": report.quotient_target_count,
                    },
                    "solve": report.solve.as_ref().map(json::solve_report_to_value),
                    "cover_size": report.lifted_cover.as_ref().map(|c| c.len()),
                    "verified": report.verified,
                    "witness": report.witness.as_ref().map(|w| serde_json::to_value(w).unwrap()),
                    "bound": bound,
                    "note": report.note,
                });
                let ok = report.bound.is_none() || report.verified;
                let witness_ok = report
                    .witness
                    .as_ref()
                    .is_none_or(|w| w.bad && w.method_agreement);
                (value, bound, ok && witness_ok, report.lifted_cover)
            };

            if let (Some(path), Some(c)) = (cover_out, &cover) {
                std::fs::write(path, json::to_pretty_string(&labeled_cover_value(c, &labels)))?;
            }

            let full = json!({
                "command": std::env::args().collect::<Vec<_>>().join(" "),
                "version": env!("CARGO_PKG_VERSION"),
                "inputs": {"family_sha256": sha256_hex(&family_text)},
                "report": report_value,
                "cover": cover.as_ref().map(|c| labeled_cover_value(c, &labels)),
                "ms": start.elapsed().as_millis() as u64,
            });
            emit(&cli.out, &full, bound.as_deref().unwrap_or("no bound derived"))?;
            if !verified {
                bail!("internal verification failed; see report");
            }
            Ok(())
        }
    }
}
