//! `aqc`: construct nested pairs of classical codes over small finite
//! fields, derive asymmetric CSS-like quantum code parameters, compute
//! exact-rational LP bounds with Farkas certificates, and verify table
//! fixtures. All output is single-line JSON; rational quantities print as
//! exact `p/q` strings. Runs are deterministic. The `AQC_ENUM_CAP`
//! environment variable overrides the default 2^24 enumeration cap.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::json;

use aqc_core::aqc::{css_like, full_weight_aqc, AqcParams, NestedPair};
use aqc_core::code::{macwilliams_transform, InnerProductKind};
use aqc_core::cyclic::{
    parse_subcode_row, parse_subfield_row, span_of_polys, subcode_from_terms,
    subfield_row_to_poly, CyclicCode,
};
use aqc_core::fixtures::{
    bundled_tables, parse_code_file, verify_table, ConstructionType, FieldCache, RowOutcome,
};
use aqc_core::galois::Poly;
use aqc_core::groupchar::gc_aqc;
use aqc_core::lp::{
    build_css_lp, delsarte_max, dlog, feasible_region, fmt_rat, lp_bound_k_with_gap, parse_rat,
    rat_int, solve_feasibility, verify_certificate, LpOutcome, Rat,
};

const EXIT_MISMATCH: u8 = 1;
const EXIT_PARSE: u8 = 2;
const EXIT_CONSTRUCT: u8 = 3;

#[derive(Parser)]
#[command(name = "aqc", version, about = "Asymmetric CSS-like quantum codes from nested classical pairs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build a nested pair and derive the quantum code parameters.
    Construct(ConstructArgs),
    /// Feasible region, per-point LP outcomes, and certificates.
    Lp(LpArgs),
    /// Verify table fixture files (or the bundled set).
    VerifyTables(VerifyArgs),
    /// Dual of a code file under an inner product.
    Dual(DualArgs),
    /// MacWilliams transform of a weight distribution.
    Macwilliams(MacwArgs),
    /// Delsarte LP maximum and its floor log.
    Delsarte(DelsarteArgs),
}

#[derive(Args)]
struct ConstructArgs {
    #[command(subcommand)]
    which: ConstructCmd,
}

#[derive(Subcommand)]
enum ConstructCmd {
    /// F_q-linear cyclic pair: supercode generator g, subcode multiplier h.
    Cyclic {
        #[arg(long)]
        q: u32,
        #[arg(long)]
        n: usize,
        /// Generator coefficients, lowest first, e.g. "1 0 1 1".
        #[arg(long)]
        g: String,
        /// Subcode multiplier coefficients, e.g. "1 1 0 1".
        #[arg(long)]
        h: String,
    },
    /// Subfield-linear cyclic pair from generator rows.
    SubfieldCyclic {
        #[arg(long)]
        q: u32,
        #[arg(long)]
        n: usize,
        /// ';'-separated rows, e.g. "(1 0 1 1)+w(1 1);(1 1 1 1 1 1)".
        #[arg(long)]
        rows: String,
        /// ';'-separated subcode rows, e.g. "(1 0 1 0 1)g1;(1)g2".
        #[arg(long)]
        sub: String,
    },
    /// Group character pair C_q(r1,l;t) <= C_q(r2,l;t).
    Gc {
        #[arg(long)]
        q: u32,
        #[arg(long)]
        t: u32,
        #[arg(long)]
        l: u32,
        #[arg(long)]
        r1: u32,
        #[arg(long)]
        r2: u32,
    },
    /// Pair from code files (C2 and the inner code C1^perp); with no inner
    /// file the full-weight-codeword construction is applied to C.
    FromFile {
        #[arg(long)]
        c: PathBuf,
        #[arg(long)]
        d: Option<PathBuf>,
        #[arg(long, default_value = "TrE")]
        kind: String,
    },
    /// A named hand-built construction.
    Adhoc {
        #[arg(long)]
        recipe: String,
    },
}

#[derive(Args)]
struct LpArgs {
    #[arg(long)]
    n: usize,
    #[arg(long)]
    q: u32,
    #[arg(long, default_value_t = 1)]
    m: u32,
    #[arg(long)]
    dx: usize,
    #[arg(long)]
    dz: usize,
    /// With --k and --kp: solve the single-point feasibility system.
    #[arg(long)]
    k: Option<u32>,
    #[arg(long)]
    kp: Option<u32>,
    /// Margin realizing the strict purity inequalities.
    #[arg(long, default_value = "1")]
    gap: String,
}

#[derive(Args)]
struct VerifyArgs {
    /// Fixture files to verify.
    paths: Vec<PathBuf>,
    /// Verify the bundled tables instead.
    #[arg(long)]
    bundled: bool,
    /// Recompute goodness labels via the LP bound for rows with n at most
    /// this length (otherwise labels are echoed with recomputed=false).
    #[arg(long)]
    recompute_goodness: Option<usize>,
}

#[derive(Args)]
struct DualArgs {
    #[arg(long)]
    file: PathBuf,
    #[arg(long, default_value = "TrE")]
    kind: String,
}

#[derive(Args)]
struct MacwArgs {
    #[arg(long)]
    q: u32,
    #[arg(long)]
    n: usize,
    /// |C|; must equal the sum of the counts.
    #[arg(long)]
    size: String,
    /// Comma-separated counts A_0..A_n.
    #[arg(long)]
    counts: String,
}

#[derive(Args)]
struct DelsarteArgs {
    #[arg(long)]
    n: usize,
    #[arg(long)]
    q: u32,
    #[arg(long)]
    d: usize,
    #[arg(long)]
    dual_d: Option<usize>,
    /// Subfield order for the floor log (defaults to q).
    #[arg(long)]
    r: Option<u32>,
}

fn parse_fail(msg: impl std::fmt::Display) -> ExitCode {
    eprintln!("parse error: {msg}");
    ExitCode::from(EXIT_PARSE)
}

fn construct_fail(msg: impl std::fmt::Display) -> ExitCode {
    eprintln!("construction error: {msg}");
    ExitCode::from(EXIT_CONSTRUCT)
}

/// Accept both "(1 0 1 1)" and bare "1 0 1 1" coefficient lists.
fn poly_from_arg(spec: &aqc_core::galois::Field, text: &str) -> Result<Poly, String> {
    let t = text.trim();
    let wrapped = if t.starts_with('(') { t.to_string() } else { format!("({t})") };
    match aqc_core::cyclic::parse_gen_shorthand(spec, &wrapped) {
        Ok(aqc_core::cyclic::Shorthand::Plain(p)) => Ok(p),
        Ok(_) => Err("expected a plain polynomial".into()),
        Err(e) => Err(e.to_string()),
    }
}

fn print_params(p: &AqcParams, construction: &str) {
    println!("{}", serde_json::to_string(&p.report(construction)).unwrap());
}

fn cmd_construct(args: ConstructArgs) -> ExitCode {
    let mut cache = FieldCache::new();
    match args.which {
        ConstructCmd::Cyclic { q, n, g, h } => {
            let spec = match cache.get(q) {
                Ok(s) => s,
                Err(e) => return parse_fail(e),
            };
            let g = match poly_from_arg(&spec, &g) {
                Ok(p) => p,
                Err(e) => return parse_fail(e),
            };
            let h = match poly_from_arg(&spec, &h) {
                Ok(p) => p,
                Err(e) => return parse_fail(e),
            };
            let c = match CyclicCode::new(spec.clone(), n, &g) {
                Ok(c) => c,
                Err(e) => return construct_fail(e),
            };
            let d = match c.subcode(&h) {
                Ok(d) => d,
                Err(e) => return construct_fail(e),
            };
            let pair = match NestedPair::from_inner(
                d.code().clone(),
                c.code().clone(),
                InnerProductKind::Euclidean,
            ) {
                Ok(p) => p,
                Err(e) => return construct_fail(e),
            };
            match css_like(&pair) {
                Ok(p) => {
                    print_params(&p, "CC");
                    ExitCode::SUCCESS
                }
                Err(e) => construct_fail(e),
            }
        }
        ConstructCmd::SubfieldCyclic { q, n, rows, sub } => {
            let spec = match cache.get(q) {
                Ok(s) => s,
                Err(e) => return parse_fail(e),
            };
            let c_rows: Result<Vec<Poly>, _> = rows
                .split(';')
                .map(|r| parse_subfield_row(&spec, r).map(|c| subfield_row_to_poly(&spec, &c)))
                .collect();
            let c_rows = match c_rows {
                Ok(r) => r,
                Err(e) => return parse_fail(e),
            };
            let d_rows: Result<Vec<_>, _> =
                sub.split(';').map(|r| parse_subcode_row(&spec, r)).collect();
            let d_rows = match d_rows {
                Ok(r) => r,
                Err(e) => return parse_fail(e),
            };
            let outcome = (|| {
                let c_code = span_of_polys(&spec, n, &c_rows)?;
                let d_code = subcode_from_terms(&spec, n, &c_rows, &d_rows)?;
                Ok::<_, aqc_core::cyclic::CyclicError>((c_code, d_code))
            })();
            let (c_code, d_code) = match outcome {
                Ok(v) => v,
                Err(e) => return construct_fail(e),
            };
            let pair =
                match NestedPair::from_inner(d_code, c_code, InnerProductKind::TraceEuclidean) {
                    Ok(p) => p,
                    Err(e) => return construct_fail(e),
                };
            match css_like(&pair) {
                Ok(p) => {
                    print_params(&p, "ACC");
                    ExitCode::SUCCESS
                }
                Err(e) => construct_fail(e),
            }
        }
        ConstructCmd::Gc { q, t, l, r1, r2 } => {
            let spec = match cache.get(q) {
                Ok(s) => s,
                Err(e) => return parse_fail(e),
            };
            match gc_aqc(&spec, r1, r2, l, t) {
                Ok(p) => {
                    print_params(&p, "GC");
                    ExitCode::SUCCESS
                }
                Err(e) => construct_fail(e),
            }
        }
        ConstructCmd::FromFile { c, d, kind } => {
            let Some(kind) = InnerProductKind::parse(&kind) else {
                return parse_fail("kind must be one of E, TrE, H, TrH");
            };
            let read = |p: &PathBuf| std::fs::read_to_string(p).map_err(|e| e.to_string());
            let c_text = match read(&c) {
                Ok(t) => t,
                Err(e) => return parse_fail(e),
            };
            let (c_code, _) = match parse_code_file(&c_text, &mut cache) {
                Ok(v) => v,
                Err(e) => return parse_fail(e),
            };
            let result = match d {
                Some(dp) => {
                    let d_text = match read(&dp) {
                        Ok(t) => t,
                        Err(e) => return parse_fail(e),
                    };
                    let (d_code, _) = match parse_code_file(&d_text, &mut cache) {
                        Ok(v) => v,
                        Err(e) => return parse_fail(e),
                    };
                    NestedPair::from_inner(d_code, c_code, kind).and_then(|p| css_like(&p))
                }
                None => full_weight_aqc(&c_code),
            };
            match result {
                Ok(p) => {
                    print_params(&p, "BC");
                    ExitCode::SUCCESS
                }
                Err(e) => construct_fail(e),
            }
        }
        ConstructCmd::Adhoc { recipe } => match aqc_core::adhoc::run_recipe(&recipe) {
            None => parse_fail(format!(
                "unknown recipe {recipe:?}; known: {}",
                aqc_core::adhoc::RECIPES.join(", ")
            )),
            Some(Ok(p)) => {
                print_params(&p, "AH");
                ExitCode::SUCCESS
            }
            Some(Err(e)) => construct_fail(e),
        },
    }
}

fn lp_outcome_json(prob: &aqc_core::lp::LpProblem, out: &LpOutcome) -> serde_json::Value {
    match out {
        LpOutcome::Feasible { witness } => json!({
            "outcome": "feasible",
            "witness": witness.iter().map(fmt_rat).collect::<Vec<_>>(),
        }),
        LpOutcome::Infeasible { cert } => {
            let ok = verify_certificate(prob, &cert.s1, &cert.s2).unwrap();
            json!({
                "outcome": "infeasible",
                "certificate_verified": ok,
                "s1": cert.s1.iter().map(fmt_rat).collect::<Vec<_>>(),
                "s2": cert.s2.iter().map(fmt_rat).collect::<Vec<_>>(),
            })
        }
    }
}

fn cmd_lp(args: LpArgs) -> ExitCode {
    let Some(gap) = parse_rat(&args.gap) else {
        return parse_fail("bad --gap rational");
    };
    if let (Some(k), Some(kp)) = (args.k, args.kp) {
        let prob = match build_css_lp(args.n, args.q, args.m, k * args.m, kp * args.m, args.dx, args.dz, &gap)
        {
            Ok(p) => p,
            Err(e) => return parse_fail(e),
        };
        let out = solve_feasibility(&prob);
        let record = json!({
            "n": args.n, "q": args.q, "m": args.m, "k": k, "kp": kp,
            "dx": args.dx, "dz": args.dz, "gap": fmt_rat(&gap),
            "lp": lp_outcome_json(&prob, &out),
        });
        println!("{record}");
        return ExitCode::SUCCESS;
    }
    let region = match feasible_region(args.n, args.q, args.m, args.dx, args.dz) {
        Ok(r) => r,
        Err(e) => return parse_fail(e),
    };
    let mut points = Vec::new();
    for &(mk, mkp) in &region {
        let prob = build_css_lp(args.n, args.q, args.m, mk, mkp, args.dx, args.dz, &gap).unwrap();
        let out = solve_feasibility(&prob);
        points.push(json!({
            "mk": mk, "mkp": mkp,
            "lp": lp_outcome_json(&prob, &out),
        }));
    }
    let bound = lp_bound_k_with_gap(args.n, args.q, args.m, args.dx, args.dz, &gap).unwrap();
    let record = json!({
        "n": args.n, "q": args.q, "m": args.m, "dx": args.dx, "dz": args.dz,
        "gap": fmt_rat(&gap),
        "region": region,
        "points": points,
        "lp_bound_k": bound.as_ref().map(fmt_rat),
    });
    println!("{record}");
    ExitCode::SUCCESS
}

fn goodness_labels(row_n: usize, q: u32, m: u32, dx: usize, dz: usize, k: &Rat) -> Option<serde_json::Value> {
    let one = rat_int(1);
    let subfield = lp_bound_k_with_gap(row_n, q, m, dx, dz, &one).ok()??;
    let linear = if m == 1 {
        subfield.clone()
    } else {
        lp_bound_k_with_gap(row_n, q, 1, dx, dz, &one).ok()??
    };
    let mut labels = Vec::new();
    if *k == subfield {
        labels.push("Optimal");
    }
    if *k > linear {
        labels.push("BeOpLin");
    }
    if *k == linear {
        labels.push("OpLin");
    }
    Some(json!({
        "lp_bound": fmt_rat(&subfield),
        "lp_bound_linear": fmt_rat(&linear),
        "labels": labels,
    }))
}

fn cmd_verify(args: VerifyArgs) -> ExitCode {
    let mut sources: Vec<(String, String, Option<PathBuf>)> = Vec::new();
    if args.bundled {
        for (name, text) in bundled_tables() {
            sources.push((name.to_string(), text.to_string(), None));
        }
    }
    for p in &args.paths {
        match std::fs::read_to_string(p) {
            Ok(text) => sources.push((
                p.display().to_string(),
                text,
                p.parent().map(|d| d.to_path_buf()),
            )),
            Err(e) => return parse_fail(format!("{}: {e}", p.display())),
        }
    }
    if sources.is_empty() {
        return parse_fail("nothing to verify: pass fixture paths or --bundled");
    }
    let mut pass = 0usize;
    let mut fail = 0usize;
    let mut skip = 0usize;
    for (name, text, base) in sources {
        let results = match verify_table(&text, base.as_deref()) {
            Ok(r) => r,
            Err(e) => return parse_fail(format!("{name}: {e}")),
        };
        for (row, outcome) in results {
            let (status, detail, got) = match &outcome {
                RowOutcome::Pass { got } => {
                    pass += 1;
                    ("PASS", None, Some(got.display()))
                }
                RowOutcome::Fail { detail } => {
                    fail += 1;
                    ("FAIL", Some(detail.clone()), None)
                }
                RowOutcome::Skipped { reason } => {
                    skip += 1;
                    ("SKIPPED", Some(reason.clone()), None)
                }
            };
            let recompute = args
                .recompute_goodness
                .filter(|cap| row.n <= *cap && outcome.is_pass())
                .and_then(|_| {
                    let m = match row.construction {
                        ConstructionType::Acc => aqc_core::fixtures::field_for_q(row.q).ok()?.m(),
                        _ => 1,
                    };
                    goodness_labels(row.n, row.q, m, row.expected.dx, row.expected.dz, &row.expected.k)
                });
            let mut record = json!({
                "table": name,
                "line": row.line,
                "type": row.construction.label(),
                "expected": row.expected.to_string(),
                "status": status,
            });
            if let Some(g) = got {
                record["got"] = json!(g);
            }
            if let Some(d) = detail {
                record["detail"] = json!(d);
            }
            if let Some(l) = &row.label {
                record["label"] = json!(l);
                record["recomputed"] = json!(recompute.is_some());
            }
            if let Some(r) = recompute {
                record["goodness"] = r;
            }
            println!("{record}");
        }
    }
    println!("{}", json!({"summary": {"pass": pass, "fail": fail, "skipped": skip}}));
    if fail > 0 {
        ExitCode::from(EXIT_MISMATCH)
    } else {
        ExitCode::SUCCESS
    }
}

fn cmd_dual(args: DualArgs) -> ExitCode {
    let Some(kind) = InnerProductKind::parse(&args.kind) else {
        return parse_fail("kind must be one of E, TrE, H, TrH");
    };
    let mut cache = FieldCache::new();
    let text = match std::fs::read_to_string(&args.file) {
        Ok(t) => t,
        Err(e) => return parse_fail(e),
    };
    let (code, _) = match parse_code_file(&text, &mut cache) {
        Ok(v) => v,
        Err(e) => return parse_fail(e),
    };
    let dual = match code.dual(kind) {
        Ok(d) => d,
        Err(e) => return construct_fail(e),
    };
    let d = dual.min_distance().ok();
    let record = json!({
        "q": code.spec().q(),
        "n": code.n(),
        "k_r": code.dim_r(),
        "kind": kind.label(),
        "dual_k_r": dual.dim_r(),
        "dual_min_distance": d,
        "dual_file": aqc_core::fixtures::format_code_file(&dual, kind),
    });
    println!("{record}");
    ExitCode::SUCCESS
}

fn cmd_macwilliams(args: MacwArgs) -> ExitCode {
    use num_bigint::BigUint;
    let counts: Option<Vec<BigUint>> =
        args.counts.split(',').map(|t| t.trim().parse().ok()).collect();
    let Some(counts) = counts else {
        return parse_fail("bad --counts");
    };
    let Ok(size) = args.size.parse::<BigUint>() else {
        return parse_fail("bad --size");
    };
    match macwilliams_transform(&counts, &size, args.n, args.q) {
        Ok(tr) => {
            let record = json!({
                "q": args.q, "n": args.n, "size": args.size,
                "transform": tr.iter().map(fmt_rat).collect::<Vec<_>>(),
            });
            println!("{record}");
            ExitCode::SUCCESS
        }
        Err(e) => parse_fail(e),
    }
}

fn cmd_delsarte(args: DelsarteArgs) -> ExitCode {
    let r = args.r.unwrap_or(args.q);
    match delsarte_max(args.n, args.q, args.d, args.dual_d) {
        Ok(max) => {
            let e = dlog(args.n, args.q, r, args.d, args.dual_d).unwrap();
            let record = json!({
                "n": args.n, "q": args.q, "d": args.d, "dual_d": args.dual_d,
                "max": fmt_rat(&max),
                "r": r,
                "dlog": e,
            });
            println!("{record}");
            ExitCode::SUCCESS
        }
        Err(e) => parse_fail(e),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match cli.command {
        Command::Construct(a) => cmd_construct(a),
        Command::Lp(a) => cmd_lp(a),
        Command::VerifyTables(a) => cmd_verify(a),
        Command::Dual(a) => cmd_dual(a),
        Command::Macwilliams(a) => cmd_macwilliams(a),
        Command::Delsarte(a) => cmd_delsarte(a),
    }
}
