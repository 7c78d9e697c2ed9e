//! Command-line front end. Every subcommand prints one JSON report:
//! `{"command", "system", "inputs", "outputs", "timing", "version"}`.
//!
//! Exit codes: 0 success, 1 failed golden comparison, 2 usage error,
//! 3 resource limit, 4 internal invariant violation.

mod golden;

use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use rootfire::appendix::{kappa_statistics, oshima_check, projection_dilation_max};
use rootfire::ehrhart::{
    counterexample_scan, counterexample_scan_at, reciprocity_eval, sym_formula, tr_conjecture_rhs, EhrhartPoly,
};
use rootfire::firing::{fireable_roots, simulated_poly, stabilize, stable_label, DeformParam, FiringMode};
use rootfire::json::{parse_ints, parse_weight, poly_to_json, rat_to_json, rat_vec_to_json, weight_to_json};
use rootfire::permutohedra::{minkowski_count, minkowski_poly, perm_count_direct, perm_count_poly};
use rootfire::{Error, Limits, Rat, RootSystem, TypeLabel, Weight};

#[derive(Parser, Debug)]
#[command(name = "rootfire", version, about = "Interval-firing and permutohedron computations on root systems")]
struct Cli {
    #[command(flatten)]
    global: GlobalOpts,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct GlobalOpts {
    /// Worker threads (default: rayon's choice, honoring RAYON_NUM_THREADS).
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Maximum fires during a single stabilization.
    #[arg(long, global = true)]
    step_limit: Option<u64>,
    /// Maximum lattice-box size scanned by enumerations.
    #[arg(long, global = true)]
    box_limit: Option<u128>,
    /// Report wall-clock time (off by default so output is reproducible).
    #[arg(long, global = true)]
    timing: bool,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Cartan data and positive roots.
    Roots { system: String },
    /// Number of weights in the discrete permutohedron of lambda + rho_k.
    PermCount {
        system: String,
        #[arg(long, allow_hyphen_values = true)]
        lambda: String,
        #[arg(long)]
        k: String,
        #[arg(long, conflicts_with = "direct")]
        formula: bool,
        #[arg(long)]
        direct: bool,
    },
    /// Stabilize a weight under interval-firing.
    Stabilize {
        system: String,
        #[arg(long, allow_hyphen_values = true)]
        mu: String,
        #[arg(long)]
        k: String,
        #[arg(long, value_enum)]
        mode: Mode,
    },
    /// Ehrhart-like polynomial of a weight.
    Poly {
        system: String,
        #[arg(long, allow_hyphen_values = true)]
        lambda: String,
        #[arg(long, value_enum)]
        mode: Mode,
        #[arg(long, value_enum, default_value = "formula")]
        method: Method,
    },
    /// Compare simulated truncated polynomials with the conjectured formula.
    ScanCounterexamples {
        system: String,
        /// Compare values at k = 1 only.
        #[arg(long)]
        k1_only: bool,
    },
    /// Reproduce reference tables.
    Verify {
        #[command(subcommand)]
        what: Verify,
    },
    /// Lattice points of a polytope plus dilated segments.
    Minkowski {
        /// Vertices separated by `;`, coordinates by `,`.
        #[arg(long, allow_hyphen_values = true)]
        vertices: String,
        /// Generators separated by `;`.
        #[arg(long, allow_hyphen_values = true)]
        gens: String,
        /// One dilation per generator, or a single value for all.
        #[arg(long)]
        k: String,
    },
}

#[derive(Subcommand, Debug)]
enum Verify {
    /// Projection-dilation maxima per removed node.
    Appendix {
        #[arg(long)]
        system: Option<String>,
        /// Include E7 and E8.
        #[arg(long)]
        slow: bool,
    },
    /// Golden comparison against the reference tables.
    Tables {
        /// Include the A4 and D4 scans.
        #[arg(long)]
        slow: bool,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Mode {
    Sym,
    Tr,
}

impl From<Mode> for FiringMode {
    fn from(m: Mode) -> FiringMode {
        match m {
            Mode::Sym => FiringMode::Symmetric,
            Mode::Tr => FiringMode::Truncated,
        }
    }
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Method {
    Formula,
    Simulate,
    Conjecture,
}

/// Result of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

enum Failure {
    Usage(String),
    Internal(String),
    Lib(Error),
    Mismatch(Value),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Failure {
        Failure::Lib(e)
    }
}

fn exit_code(e: &Error) -> i32 {
    match e {
        Error::ResourceLimit { .. } | Error::StepLimit(_) => 3,
        Error::NonTermination(_) | Error::UnmatchedStablePoint(_) | Error::NonPolynomialFit { .. } | Error::DependentSet => 4,
        Error::InvalidType { .. }
        | Error::NotDominant(_)
        | Error::DifferentCoset(..)
        | Error::DimensionError(_)
        | Error::BadParam(_)
        | Error::Parse(_) => 2,
    }
}

struct Report {
    command: &'static str,
    system: Option<String>,
    inputs: Value,
    outputs: Value,
}

type Run = Result<Report, Failure>;

fn system(s: &str) -> Result<RootSystem, Failure> {
    Ok(RootSystem::build(s.parse::<TypeLabel>()?)?)
}

fn param(sys: &RootSystem, s: &str) -> Result<DeformParam, Failure> {
    let v = parse_ints(s)?;
    let k = match v[..] {
        [k] => DeformParam::uniform(k),
        [kl, ks] if !sys.simply_laced || kl == ks => DeformParam::new(kl, ks),
        [_, _] => return Err(Failure::Usage(format!("{} is simply laced; give a single k", sys.label))),
        _ => return Err(Failure::Usage(format!("--k expects `k` or `kl,ks`, got {s:?}"))),
    };
    k.check(sys)?;
    Ok(k)
}

fn param_json(k: &DeformParam) -> Value {
    json!({"kl": k.k_long, "ks": k.k_short})
}

fn rat(p: i64, q: i64) -> Rat {
    Rat::new(p, q)
}

fn cmd_roots(sys_name: &str) -> Run {
    let s = system(sys_name)?;
    let roots: Vec<Value> = s
        .positive_roots()
        .iter()
        .map(|r| {
            json!({
                "root": r.root_coords,
                "coroot": r.coroot_coords,
                "weight": r.fw_coords,
                "height": r.height,
                "long": r.is_long,
            })
        })
        .collect();
    Ok(Report {
        command: "roots",
        system: Some(s.label.to_string()),
        inputs: json!({}),
        outputs: json!({
            "cartan": s.cartan,
            "symmetrizer": s.symmetrizer,
            "num_roots": s.roots.len(),
            "num_positive": s.num_positive(),
            "weyl_order": s.weyl_order,
            "index_of_connection": s.index_of_connection,
            "simply_laced": s.simply_laced,
            "highest_root": s.roots[s.highest_root_id].root_coords,
            "highest_short_root": s.roots[s.highest_short_root_id].root_coords,
            "positive_roots": roots,
        }),
    })
}

fn cmd_perm_count(sys_name: &str, lambda: &str, k: &str, formula: bool, direct: bool, l: &Limits) -> Run {
    let s = system(sys_name)?;
    let lam = parse_weight(lambda, s.rank())?;
    if !lam.is_dominant() {
        return Err(Error::NotDominant(lam).into());
    }
    let k = param(&s, k)?;
    let both = !formula && !direct;
    let mut out = serde_json::Map::new();
    if formula || both {
        let p = perm_count_poly(&s, &lam, l)?;
        out.insert("polynomial".into(), poly_to_json(&p));
        out.insert("formula".into(), json!(p.eval_param(&k)));
    }
    if direct || both {
        out.insert("direct".into(), json!(perm_count_direct(&s, &lam, &k, l)?));
    }
    if both && out["formula"] != out["direct"] {
        return Err(Failure::Internal("formula and enumeration disagree".into()));
    }
    Ok(Report {
        command: "perm-count",
        system: Some(s.label.to_string()),
        inputs: json!({"lambda": weight_to_json(&lam), "k": param_json(&k)}),
        outputs: Value::Object(out),
    })
}

fn cmd_stabilize(sys_name: &str, mu: &str, k: &str, mode: Mode, l: &Limits) -> Run {
    let s = system(sys_name)?;
    let mu = parse_weight(mu, s.rank())?;
    let k = param(&s, k)?;
    let fm = FiringMode::from(mode);
    let stable = stabilize(&s, &mu, &k, fm, l)?;
    let label = stable_label(&s, &stable, &k)?.ok_or_else(|| Error::UnmatchedStablePoint(stable.clone()))?;
    let fireable = fireable_roots(&s, &mu, &k, fm)?;
    Ok(Report {
        command: "stabilize",
        system: Some(s.label.to_string()),
        inputs: json!({"mu": weight_to_json(&mu), "k": param_json(&k), "mode": mode_name(mode)}),
        outputs: json!({
            "stable": weight_to_json(&stable),
            "label": weight_to_json(&label),
            "initially_fireable": fireable.len(),
        }),
    })
}

fn mode_name(m: Mode) -> &'static str {
    match m {
        Mode::Sym => "sym",
        Mode::Tr => "tr",
    }
}

fn poly_outputs(p: &EhrhartPoly) -> Value {
    json!({
        "polynomial": poly_to_json(p),
        "text": p.to_string(),
        "diagonal": p.diagonal(),
        "diagonal_text": p.display_diagonal(),
        "at_minus_one": reciprocity_eval(p, -1),
    })
}

fn cmd_poly(sys_name: &str, lambda: &str, mode: Mode, method: Method, l: &Limits) -> Run {
    let s = system(sys_name)?;
    let lam = parse_weight(lambda, s.rank())?;
    let p = match (mode, method) {
        (Mode::Sym, Method::Formula) => sym_formula(&s, &lam, l)?,
        (_, Method::Simulate) => simulated_poly(&s, &lam, mode.into(), l)?,
        (Mode::Tr, Method::Conjecture) => tr_conjecture_rhs(&s, &lam, l)?,
        (Mode::Tr, Method::Formula) => {
            return Err(Failure::Usage("no closed formula for tr; use --method simulate or conjecture".into()))
        }
        (Mode::Sym, Method::Conjecture) => {
            return Err(Failure::Usage("--method conjecture applies to --mode tr".into()))
        }
    };
    let method_name = match method {
        Method::Formula => "formula",
        Method::Simulate => "simulate",
        Method::Conjecture => "conjecture",
    };
    Ok(Report {
        command: "poly",
        system: Some(s.label.to_string()),
        inputs: json!({"lambda": weight_to_json(&lam), "mode": mode_name(mode), "method": method_name}),
        outputs: poly_outputs(&p),
    })
}

fn cmd_scan(sys_name: &str, k1_only: bool, l: &Limits) -> Run {
    let s = system(sys_name)?;
    let outputs = if k1_only {
        let r = counterexample_scan_at(&s, &DeformParam::uniform(1), l)?;
        let rows: Vec<Value> = r
            .disagreements
            .iter()
            .map(|(lam, lhs, rhs)| json!({"lambda": weight_to_json(lam), "lhs": lhs, "rhs": rhs}))
            .collect();
        json!({"domain_size": r.domain_size, "disagreement_count": rows.len(), "disagreements": rows})
    } else {
        let r = counterexample_scan(&s, l)?;
        if let Some(w) = r.fit_failures.first() {
            return Err(Error::NonPolynomialFit {
                weight: w.clone(),
                degree: s.rank() as u32,
            }
            .into());
        }
        let rows: Vec<Value> = r
            .counterexamples()
            .iter()
            .map(|c| {
                json!({
                    "lambda": weight_to_json(&c.lam),
                    "lhs": poly_to_json(&c.lhs),
                    "rhs": poly_to_json(&c.rhs),
                    "lhs_text": c.lhs.to_string(),
                    "rhs_text": c.rhs.to_string(),
                })
            })
            .collect();
        json!({"domain_size": r.domain_size, "counterexample_count": rows.len(), "counterexamples": rows})
    };
    Ok(Report {
        command: "scan-counterexamples",
        system: Some(s.label.to_string()),
        inputs: json!({"k1_only": k1_only}),
        outputs,
    })
}

fn expected_max(label: TypeLabel, node: usize) -> Option<Rat> {
    let fam = label.family.as_char();
    if "ABCD".contains(fam) {
        let (p, q) = golden::classical_max(fam, label.rank as i64, node as i64 + 1);
        return Some(rat(p, q));
    }
    golden::EXCEPTIONAL_MAXIMA
        .iter()
        .find(|(t, _)| *t == label.to_string())
        .map(|(_, v)| rat(v[node].0, v[node].1))
}

fn expected_kappa_stat(label: TypeLabel) -> Option<Rat> {
    golden::KAPPA_STATISTICS
        .iter()
        .find(|(t, _, _)| *t == label.to_string())
        .map(|&(_, p, q)| rat(p, q))
        .or_else(|| (label.family.as_char() == 'B').then(|| rat(2, 1)))
}

fn appendix_systems(slow: bool) -> Vec<String> {
    let mut out = Vec::new();
    for fam in ['A', 'B', 'C', 'D'] {
        for n in 2..=6 {
            let t = format!("{fam}{n}");
            if t.parse::<TypeLabel>().is_ok() {
                out.push(t);
            }
        }
    }
    out.extend(["G2", "F4", "E6"].map(String::from));
    if slow {
        out.extend(["E7", "E8"].map(String::from));
    }
    out
}

/// One system's appendix rows plus whether every known value matched.
fn appendix_report(s: &RootSystem) -> (Value, bool) {
    let mut all_ok = true;
    let rows: Vec<Value> = (0..s.rank())
        .map(|i| {
            let m = projection_dilation_max(s, i);
            let expected = expected_max(s.label, i);
            let ok = expected.is_none_or(|e| e == m.max_value) && m.max_value < rat(2, 1);
            all_ok &= ok;
            json!({
                "index": i,
                "node": i + 1,
                "max": rat_to_json(&m.max_value),
                "expected": expected.map(|e| rat_to_json(&e)),
                "argmax_vertex": rat_vec_to_json(&m.argmax_vertex),
                "argmax_coroot": s.roots[m.argmax_root].coroot_coords,
                "oshima_unique": oshima_check(s, i).unique,
                "match": ok,
            })
        })
        .collect();
    let (kappa, stat) = kappa_statistics(s);
    let want = expected_kappa_stat(s.label);
    let stat_ok = want.is_none_or(|w| w == stat);
    all_ok &= stat_ok;
    (
        json!({
            "system": s.label.to_string(),
            "nodes": rows,
            "kappa": rat_to_json(&kappa),
            "rank_times_two_minus_kappa": rat_to_json(&stat),
            "expected_rank_times_two_minus_kappa": want.map(|w| rat_to_json(&w)),
            "match": all_ok,
        }),
        all_ok,
    )
}

fn cmd_verify_appendix(sys_name: Option<&str>, slow: bool) -> Run {
    let names = match sys_name {
        Some(n) => vec![n.to_string()],
        None => appendix_systems(slow),
    };
    let mut systems = Vec::new();
    let mut pass = true;
    for n in &names {
        let (v, ok) = appendix_report(&system(n)?);
        pass &= ok;
        systems.push(v);
    }
    let report = Report {
        command: "verify appendix",
        system: sys_name.map(|s| s.to_string()),
        inputs: json!({"slow": slow}),
        outputs: json!({"systems": systems, "pass": pass}),
    };
    if pass {
        Ok(report)
    } else {
        Err(Failure::Mismatch(render(&report, None)))
    }
}

fn poly_from_terms(terms: &[(u32, u32, i64)]) -> EhrhartPoly {
    let mut p = EhrhartPoly::zero();
    for &(a, b, c) in terms {
        p.add_term(a, b, c);
    }
    p
}

fn check_row(name: String, ok: bool, detail: Value) -> Value {
    json!({"check": name, "pass": ok, "detail": detail})
}

fn table1(slow: bool, l: &Limits) -> Result<Vec<Value>, Failure> {
    let mut rows = Vec::new();
    for (t, size) in golden::DOMAIN_SIZES {
        if !slow && golden::SLOW_SCANS.contains(&t) {
            continue;
        }
        let s = system(t)?;
        let scan = counterexample_scan(&s, l)?;
        let mut got: Vec<(Weight, EhrhartPoly, EhrhartPoly)> = scan
            .counterexamples()
            .iter()
            .map(|c| (c.lam.clone(), c.lhs.clone(), c.rhs.clone()))
            .collect();
        got.sort();
        let mut want: Vec<(Weight, EhrhartPoly, EhrhartPoly)> = golden::counterexamples(t)
            .into_iter()
            .map(|(lam, a, b)| (Weight(lam.to_vec()), poly_from_terms(a), poly_from_terms(b)))
            .collect();
        want.sort();
        let ok = scan.domain_size == size && got == want && scan.fit_failures.is_empty();
        rows.push(check_row(
            format!("{t} domain and counterexamples"),
            ok,
            json!({"domain_size": scan.domain_size, "expected_domain_size": size, "counterexamples": got.len()}),
        ));
    }
    Ok(rows)
}

fn table2(l: &Limits) -> Result<Vec<Value>, Failure> {
    let mut rows = Vec::new();
    for (t, size, want) in [("B4", 1697, 0), ("C4", 1697, 60), ("A5", 4683, 0)] {
        let r = counterexample_scan_at(&system(t)?, &DeformParam::uniform(1), l)?;
        let ok = r.domain_size == size && r.disagreements.len() == want;
        rows.push(check_row(
            format!("{t} disagreements at k=1"),
            ok,
            json!({"domain_size": r.domain_size, "disagreements": r.disagreements.len(), "expected": want}),
        ));
    }
    Ok(rows)
}

fn table3(l: &Limits) -> Result<Vec<Value>, Failure> {
    let s = system("B3")?;
    let mut rows = Vec::new();
    for (lam, sym, sym_m1, tr, tr_m1) in golden::B3_TABLE {
        let lam = Weight(lam.to_vec());
        let f = sym_formula(&s, &lam, l)?;
        let ss = simulated_poly(&s, &lam, FiringMode::Symmetric, l)?;
        let st = simulated_poly(&s, &lam, FiringMode::Truncated, l)?;
        let ok = f == ss
            && f.diagonal() == sym
            && st.diagonal() == tr
            && reciprocity_eval(&f, -1) == sym_m1
            && reciprocity_eval(&st, -1) == tr_m1;
        rows.push(check_row(
            format!("B3 {lam}"),
            ok,
            json!({"sym": f.display_diagonal(), "tr": st.display_diagonal(),
                   "sym_at_minus_one": reciprocity_eval(&f, -1), "tr_at_minus_one": reciprocity_eval(&st, -1)}),
        ));
    }
    Ok(rows)
}

fn table678(slow: bool) -> Result<Vec<Value>, Failure> {
    let mut rows = Vec::new();
    for t in appendix_systems(slow) {
        let (v, ok) = appendix_report(&system(&t)?);
        rows.push(check_row(format!("{t} maxima and kappa"), ok, v["rank_times_two_minus_kappa"].clone()));
    }
    Ok(rows)
}

fn cmd_verify_tables(slow: bool, l: &Limits) -> Run {
    let sections = [
        ("table1", table1(slow, l)?),
        ("table2", table2(l)?),
        ("table3", table3(l)?),
        ("tables6-8", table678(slow)?),
    ];
    let pass = sections
        .iter()
        .all(|(_, rows)| rows.iter().all(|r| r["pass"] == json!(true)));
    let outputs = json!({
        "sections": sections.iter().map(|(n, r)| json!({"name": n, "checks": r})).collect::<Vec<_>>(),
        "pass": pass,
    });
    let report = Report {
        command: "verify tables",
        system: None,
        inputs: json!({"slow": slow}),
        outputs,
    };
    if pass {
        Ok(report)
    } else {
        Err(Failure::Mismatch(render(&report, None)))
    }
}

fn parse_vectors(s: &str) -> Result<Vec<Vec<i64>>, Failure> {
    s.split(';')
        .filter(|p| !p.trim().is_empty())
        .map(|p| parse_ints(p).map_err(Failure::from))
        .collect()
}

fn cmd_minkowski(vertices: &str, gens: &str, k: &str, l: &Limits) -> Run {
    let verts = parse_vectors(vertices)?;
    let gens = parse_vectors(gens)?;
    let mut kvec = parse_ints(k)?;
    if kvec.len() == 1 && gens.len() != 1 {
        kvec = vec![kvec[0]; gens.len()];
    }
    let count = minkowski_count(&verts, &gens, &kvec, l)?;
    let poly = minkowski_poly(&verts, &gens, l)?;
    let terms: Vec<Value> = poly
        .terms
        .iter()
        .rev()
        .map(|(vars, c)| json!({"vars": vars, "coeff": c}))
        .collect();
    Ok(Report {
        command: "minkowski",
        system: None,
        inputs: json!({"vertices": verts, "gens": gens, "k": kvec}),
        outputs: json!({
            "direct": count,
            "polynomial": {"nvars": poly.nvars, "terms": terms},
            "polynomial_value": poly.eval(&kvec),
            "diagonal": poly.diagonal(),
        }),
    })
}

fn render(r: &Report, elapsed: Option<f64>) -> Value {
    json!({
        "command": r.command,
        "system": r.system,
        "inputs": r.inputs,
        "outputs": r.outputs,
        "timing": elapsed.map(|s| json!({"seconds": s})),
        "version": env!("CARGO_PKG_VERSION"),
    })
}

/// Parses `argv` (including the program name) and runs one command.
pub fn run<I, T>(argv: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            return if code == 0 {
                Outcome { code, stdout: text, stderr: String::new() }
            } else {
                Outcome { code, stdout: String::new(), stderr: text }
            };
        }
    };
    if let Some(n) = cli.global.threads {
        // Only the first configuration in a process takes effect.
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    }
    let mut limits = Limits::default();
    if let Some(s) = cli.global.step_limit {
        limits.steps = s;
    }
    if let Some(b) = cli.global.box_limit {
        limits.box_points = b;
    }
    let l = &limits;
    let start = Instant::now();
    let result = match &cli.command {
        Command::Roots { system } => cmd_roots(system),
        Command::PermCount { system, lambda, k, formula, direct } => {
            cmd_perm_count(system, lambda, k, *formula, *direct, l)
        }
        Command::Stabilize { system, mu, k, mode } => cmd_stabilize(system, mu, k, *mode, l),
        Command::Poly { system, lambda, mode, method } => cmd_poly(system, lambda, *mode, *method, l),
        Command::ScanCounterexamples { system, k1_only } => cmd_scan(system, *k1_only, l),
        Command::Verify { what: Verify::Appendix { system, slow } } => cmd_verify_appendix(system.as_deref(), *slow),
        Command::Verify { what: Verify::Tables { slow } } => cmd_verify_tables(*slow, l),
        Command::Minkowski { vertices, gens, k } => cmd_minkowski(vertices, gens, k, l),
    };
    let elapsed = cli.global.timing.then(|| start.elapsed().as_secs_f64());
    match result {
        Ok(report) => Outcome {
            code: 0,
            stdout: pretty(&render(&report, elapsed)),
            stderr: String::new(),
        },
        Err(Failure::Mismatch(v)) => Outcome {
            code: 1,
            stdout: pretty(&v),
            stderr: "golden comparison failed\n".into(),
        },
        Err(Failure::Usage(msg)) => Outcome {
            code: 2,
            stdout: String::new(),
            stderr: format!("error: {msg}\n"),
        },
        Err(Failure::Internal(msg)) => Outcome {
            code: 4,
            stdout: String::new(),
            stderr: format!("internal error: {msg}\n"),
        },
        Err(Failure::Lib(e)) => Outcome {
            code: exit_code(&e),
            stdout: String::new(),
            stderr: format!("error: {e}\n"),
        },
    }
}

fn pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("JSON values serialize");
    s.push('\n');
    s
}
