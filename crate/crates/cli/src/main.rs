mod chow;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value as Json};

use skewcalc_core::pipeline::{self, CurveInvariants};
use skewcalc_core::ParamPoly;
use skewcalc_oracle::identities::p3_curve_skewness;
use skewcalc_oracle::pairs::CountOptions;
use skewcalc_oracle::poly::Q;
use skewcalc_oracle::scroll::ScrollSpec;
use skewcalc_oracle::{OracleError, RationalCurve};

const SCHEMA: u32 = 1;

#[derive(Parser, Debug)]
#[command(name = "skewcalc", version, about = "Counts and certificates for pairs of meeting tangent lines of projective curves")]
struct Cli {
    /// Seed for every randomized step (reparametrizations, combinations, samples).
    #[arg(long, global = true, env = "SKEWCALC_SEED", default_value_t = 1)]
    seed: u64,
    /// Write the JSON report here instead of stdout.
    #[arg(long, short, global = true)]
    output: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Number of pairs of meeting tangent lines for a smooth curve of degree d and genus g.
    Count {
        #[arg(long)]
        ambient: usize,
        #[arg(long)]
        degree: i64,
        #[arg(long)]
        genus: i64,
        /// Include every intermediate class and degree.
        #[arg(long)]
        emit_intermediates: bool,
    },
    /// Skew curves in P^4 (degree and genus), after the numerical and Castelnuovo filters.
    Classify {
        /// Also list the numerical candidates the genus bound rules out.
        #[arg(long)]
        show_candidates: bool,
    },
    /// Brute-force checks on an explicit rational curve.
    Oracle {
        /// Curve file: {"ambient": N, "coords": [["1"], ["0","1"], ...]}.
        #[arg(long)]
        curve: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = Task::CountPairs)]
        task: Task,
        /// Parameter for the contact test (a rational "p/q").
        #[arg(long, default_value = "0")]
        t0: String,
        /// Sample count for the Veronese test.
        #[arg(long, default_value_t = 100)]
        samples: usize,
    },
    /// Evaluate Chow-ring expressions on the blowup of Gr(k,n) × Gr(k,n) along the diagonal.
    Chow {
        /// File with one expression per line.
        #[arg(long)]
        expr: PathBuf,
        /// Grassmannian as "k,n".
        #[arg(long, default_value = "2,4")]
        gr: String,
        /// Dual degree substituted into curve classes (symbolic if absent).
        #[arg(long)]
        dual_degree: Option<i64>,
        /// Genus substituted into curve classes (symbolic if absent).
        #[arg(long)]
        genus: Option<i64>,
    },
    /// Whether the rulings of a scroll are pairwise disjoint.
    Scroll {
        /// Scroll file: {"ambient": N, "first": [...], "second": [...]}.
        #[arg(long)]
        scroll: PathBuf,
    },
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum Task {
    CountPairs,
    CheckSkew,
    Contact,
    Veronese,
}

/// Failure with its exit code: 2 usage/parse, 3 precondition, 4 consistency.
struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn usage(m: impl Into<String>) -> Self {
        Self { code: 2, message: m.into() }
    }
}

impl From<OracleError> for Failure {
    fn from(e: OracleError) -> Self {
        let code = match e {
            OracleError::Parse(_) => 2,
            OracleError::Precondition(_) | OracleError::NotFinite(_) => 3,
            OracleError::Inconsistent(_) => 4,
        };
        Self { code, message: e.to_string() }
    }
}

impl From<skewcalc_core::Error> for Failure {
    fn from(e: skewcalc_core::Error) -> Self {
        use skewcalc_core::Error as E;
        let code = match e {
            E::Domain(_) | E::Unsupported(_) | E::Parse(_) | E::ContextMismatch(_) => 2,
            E::Inconsistent(_) => 4,
        };
        Self { code, message: e.to_string() }
    }
}

impl From<chow::ChowError> for Failure {
    fn from(e: chow::ChowError) -> Self {
        match e {
            chow::ChowError::Parse(m) => Self::usage(m),
            chow::ChowError::Core(e) => e.into(),
        }
    }
}

type Outcome = Result<Json, Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Count { ambient, degree, genus, emit_intermediates } => {
            cmd_count(*ambient, *degree, *genus, *emit_intermediates)
        }
        Command::Classify { show_candidates } => cmd_classify(*show_candidates),
        Command::Oracle { curve, task, t0, samples } => cmd_oracle(curve.as_ref(), *task, t0, *samples, cli.seed),
        Command::Chow { expr, gr, dual_degree, genus } => cmd_chow(expr, gr, *dual_degree, *genus),
        Command::Scroll { scroll } => cmd_scroll(scroll, cli.seed),
    };
    match result {
        Ok(mut report) => {
            report["schema"] = json!(SCHEMA);
            let text = serde_json::to_string_pretty(&report).expect("report serializes") + "\n";
            match &cli.output {
                Some(path) => {
                    if let Err(e) = std::fs::write(path, text) {
                        eprintln!("error: cannot write {}: {e}", path.display());
                        return ExitCode::from(2);
                    }
                }
                None => print!("{text}"),
            }
            ExitCode::SUCCESS
        }
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

fn cmd_count(ambient: usize, degree: i64, genus: i64, emit: bool) -> Outcome {
    let curve = CurveInvariants::new(ambient, degree, genus)?;
    match ambient {
        3 => {
            let p3 = pipeline::p3_intersection()?;
            let eval = |p: &ParamPoly| curve.eval(p);
            let coefficients = [eval(&p3.product.0)?, eval(&p3.product.1)?];
            let obstruction = eval(&p3.genus_obstruction.1)?;
            let multiplicity = eval(&p3.multiplicity)?;
            let conclusion = if obstruction == 0 {
                "genus 0: consistent with a skew curve".to_string()
            } else {
                format!("2·dv·g = {obstruction} ≠ 0: no skew curve with these invariants")
            };
            Ok(json!({
                "command": "count",
                "ambient": 3,
                "degree": degree,
                "genus": genus,
                "dual_degree": curve.dual_degree(),
                "incidence_times_tangent_pairs": {
                    "symbolic": [p3.product.0.to_string(), p3.product.1.to_string()],
                    "value": coefficients,
                },
                "tangent_curve_on_exceptional": {
                    "symbolic": [p3.tangent_curve.0.to_string(), p3.tangent_curve.1.to_string()],
                },
                "multiplicity": { "symbolic": p3.multiplicity.to_string(), "value": multiplicity },
                "genus_obstruction": { "symbolic": p3.genus_obstruction.1.to_string(), "value": obstruction },
                "conclusion": conclusion,
            }))
        }
        4 => {
            let report = pipeline::p4_report(curve)?;
            let count = &report.nonskew_pairs;
            let mut out = json!({
                "command": "count",
                "ambient": 4,
                "degree": degree,
                "genus": genus,
                "dual_degree": curve.dual_degree(),
                "nonskew_pairs": { "symbolic": count.symbolic.to_string(), "value": count.value },
            });
            if emit {
                out["report"] = serde_json::to_value(&report).expect("report serializes");
            }
            Ok(out)
        }
        n => Err(Failure::usage(format!("count supports ambient 3 or 4, got {n}"))),
    }
}

fn cmd_classify(show: bool) -> Outcome {
    let candidates = pipeline::skew_candidates_p4()?;
    let result = pipeline::classify_p4()?;
    let pairs = |v: &[(i64, i64)]| v.iter().map(|(g, d)| json!({"genus": g, "degree": d})).collect::<Vec<_>>();
    let mut out = json!({
        "command": "classify",
        "dual_degree_range": [pipeline::DUAL_DEGREE_RANGE.start(), pipeline::DUAL_DEGREE_RANGE.end()],
        "skew_curves": pairs(&result),
    });
    if show {
        out["candidates"] = candidates
            .iter()
            .map(|c| {
                let mut v = json!({
                    "genus": c.genus,
                    "degree": c.degree,
                    "dual_degree": c.dual_degree,
                    "genus_bound": c.genus_bound,
                    "exists": c.exists,
                });
                if !c.exists {
                    v["reason"] = json!(format!(
                        "genus {} exceeds the Castelnuovo bound {} for nondegenerate degree-{} curves in P^4",
                        c.genus, c.genus_bound, c.degree
                    ));
                }
                v
            })
            .collect();
    }
    Ok(out)
}

fn read(path: &PathBuf) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| Failure::usage(format!("cannot read {}: {e}", path.display())))
}

fn cmd_oracle(curve: Option<&PathBuf>, task: Task, t0: &str, samples: usize, seed: u64) -> Outcome {
    if let Task::Veronese = task {
        let skew = skewcalc_oracle::veronese_sample_test(samples, seed)?;
        return Ok(json!({"command": "oracle", "task": "veronese", "samples": samples, "seed": seed, "skew": skew}));
    }
    let path = curve.ok_or_else(|| Failure::usage("--curve is required for this task"))?;
    let curve = RationalCurve::from_json(&read(path)?)?;
    let base = json!({
        "command": "oracle",
        "ambient": curve.ambient(),
        "degree": curve.degree(),
        "seed": seed,
    });
    let mut out = base;
    match task {
        Task::CountPairs => {
            let count = skewcalc_oracle::count_nonskew_pairs_p4(&curve, CountOptions::with_seed(seed))?;
            out["task"] = json!("count-pairs");
            out["pair_count"] = serde_json::to_value(&count).expect("serializes");
            out["skew"] = json!(count.count == 0);
            let formula = pipeline::nonskew_count_in_degree_genus()?.eval_curve(curve.degree() as i64, 0);
            out["formula_genus_0"] = json!(formula.to_string());
        }
        Task::CheckSkew => {
            out["task"] = json!("check-skew");
            match curve.ambient() {
                3 => {
                    let r = p3_curve_skewness(&curve)?;
                    out["skew"] = json!(r.skew);
                    out["certificate"] = serde_json::to_value(&r).expect("serializes");
                }
                4 => {
                    let count = skewcalc_oracle::count_nonskew_pairs_p4(&curve, CountOptions::with_seed(seed))?;
                    out["skew"] = json!(count.count == 0);
                    out["pair_count"] = serde_json::to_value(&count).expect("serializes");
                }
                n => return Err(Failure { code: 3, message: format!("skewness checks need ambient 3 or 4, got {n}") }),
            }
        }
        Task::Contact => {
            let t: Q = t0.parse().map_err(|_| Failure::usage(format!("bad rational {t0:?}")))?;
            let r = skewcalc_oracle::contact_order_test(&curve, &t)?;
            out["task"] = json!("contact");
            out["contact"] = serde_json::to_value(&r).expect("serializes");
        }
        Task::Veronese => unreachable!("handled above"),
    }
    Ok(out)
}

fn cmd_chow(expr: &PathBuf, gr: &str, dual_degree: Option<i64>, genus: Option<i64>) -> Outcome {
    let (k, n) = gr
        .split_once(',')
        .and_then(|(a, b)| Some((a.trim().parse::<usize>().ok()?, b.trim().parse::<usize>().ok()?)))
        .ok_or_else(|| Failure::usage(format!("--gr expects \"k,n\", got {gr:?}")))?;
    let dv = dual_degree.map_or_else(ParamPoly::dv, ParamPoly::constant);
    let g = genus.map_or_else(ParamPoly::g, ParamPoly::constant);
    let ev = chow::Evaluator::new(k, n, dv, g)?;
    let mut results = Vec::new();
    for line in read(expr)?.lines() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let v = ev.eval_line(line)?;
        results.push(json!({
            "expr": line,
            "space": chow::Evaluator::space(&v),
            "class": ev.display(&v)?,
        }));
    }
    Ok(json!({"command": "chow", "grassmannian": format!("Gr({k},{n})"), "results": results}))
}

#[derive(serde::Deserialize)]
struct ScrollFile {
    ambient: usize,
    first: Vec<Vec<String>>,
    second: Vec<Vec<String>>,
}

fn cmd_scroll(path: &PathBuf, seed: u64) -> Outcome {
    let file: ScrollFile =
        serde_json::from_str(&read(path)?).map_err(|e| Failure::usage(format!("bad scroll file: {e}")))?;
    let curve = |coords: Vec<Vec<String>>| -> Result<RationalCurve, Failure> {
        let polys = coords
            .iter()
            .map(|c| {
                c.iter()
                    .map(|s| s.trim().parse::<Q>().map_err(|_| Failure::usage(format!("bad coefficient {s:?}"))))
                    .collect::<Result<Vec<_>, _>>()
                    .map(skewcalc_oracle::poly::QPoly::new)
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(RationalCurve::unchecked(file.ambient, polys)?)
    };
    let spec = ScrollSpec::new(curve(file.first.clone())?, curve(file.second.clone())?)?;
    let verdict = skewcalc_oracle::scroll_skew_test(&spec, CountOptions::with_seed(seed))?;
    let (d1, d2) = spec.bidegree();
    Ok(json!({
        "command": "scroll",
        "ambient": spec.ambient(),
        "bidegree": [d1, d2],
        "skew": verdict.skew,
        "certificate": serde_json::to_value(&verdict.certificate).expect("serializes"),
    }))
}
