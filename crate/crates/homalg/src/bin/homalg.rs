//! Command-line front end: loads an algebra description (quiver
//! presentation or structure-constant dump), runs one computation, and
//! prints a human summary followed by a deterministic machine block
//! under a `---` separator. Exit codes: 0 computed / PASS, 1 predicate
//! FAIL, 2 inconclusive at bound, 3 input or validation error.

use clap::{Args, Parser, Subcommand};
use homalg::algebra::GradedBasicAlgebra;
use homalg::cache::{Cache, CachedRun};
use homalg::cartan::{cartan_det, cartan_matrix, cartan_reduction, graded_cartan};
use homalg::ext::ext_algebra;
use homalg::harness::{
    analyze, conjecture_sweep, generate_family, run_all_checks, Analysis, CheckReport,
    FamilySpec, Instance, Status,
};
use homalg::linalg::{det_int_poly, Field};
use homalg::module::{projective_dimension, simple_module, verify_resolution, Verdict};
use homalg::quiver::{compile, parse_presentation};
use std::fmt::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;
use std::sync::Arc;

#[derive(Parser)]
#[command(name = "homalg", version, about = "exact homological computations over bound quiver algebras")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args, Clone)]
struct Common {
    /// input file: quiver presentation, or a `scalg v1` dump
    input: PathBuf,
    /// homological bound T_max
    #[arg(long, default_value_t = 20)]
    bound: usize,
    /// e-support: comma-separated idempotent labels
    #[arg(long)]
    e: Option<String>,
    /// assert the input field (Q or F<p>)
    #[arg(long)]
    field: Option<String>,
    /// also write the machine block to this file
    #[arg(long)]
    out: Option<PathBuf>,
    /// cache directory (default .homalg-cache, or $HOMALG_CACHE)
    #[arg(long)]
    cache: Option<PathBuf>,
    /// disable the disk cache
    #[arg(long)]
    no_cache: bool,
}

#[derive(Subcommand)]
enum Cmd {
    /// algebra summary: field, labels, graded dimensions, content hash
    Info(Common),
    /// global dimension verdict with per-simple projective dimensions
    Gldim(Common),
    /// minimal projective resolutions of the simple modules
    Resolve(Common),
    /// the Yoneda algebra Y(e): graded dimensions and finiteness report
    Ext(Common),
    /// corner algebra Γ = (1−e)A(1−e) in structure-constant format
    Gamma(Common),
    /// Cartan/Euler determinant analytics and the block reduction
    Cartan(Common),
    /// run a theorem predicate: aandy | gammaartinian | twoofthree |
    /// cartan | all
    Check {
        predicate: String,
        #[command(flatten)]
        common: Common,
    },
    /// counterexample sweep over a family
    /// (nakayama:n,m | linear:n,mask | linear-all:n | random:v,a,r,seed | corpus)
    Sweep {
        family: String,
        #[arg(long, default_value_t = 20)]
        bound: usize,
        /// worker pool size
        #[arg(long, default_value_t = 1)]
        jobs: usize,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        cache: Option<PathBuf>,
        #[arg(long)]
        no_cache: bool,
    },
}

struct Loaded {
    algebra: Arc<GradedBasicAlgebra>,
    presentation: Option<homalg::quiver::Presentation>,
}

fn load(common: &Common) -> Result<(Loaded, Vec<u8>), String> {
    let bytes = std::fs::read(&common.input)
        .map_err(|e| format!("cannot read {}: {e}", common.input.display()))?;
    let text = String::from_utf8(bytes.clone()).map_err(|_| "input is not UTF-8".to_string())?;
    let loaded = if text.trim_start().starts_with("scalg") {
        let alg = GradedBasicAlgebra::parse(&text).map_err(|e| e.to_string())?;
        alg.validate().map_err(|e| e.to_string())?;
        Loaded {
            algebra: Arc::new(alg),
            presentation: None,
        }
    } else {
        let p = parse_presentation(&text).map_err(|e| e.to_string())?;
        let alg = compile(&p).map_err(|e| e.to_string())?;
        Loaded {
            algebra: Arc::new(alg),
            presentation: Some(p),
        }
    };
    if let Some(f) = &common.field {
        let want = Field::parse(f).map_err(|e| e.to_string())?;
        if want != loaded.algebra.field {
            return Err(format!(
                "field mismatch: input is {}, --field asked for {}",
                loaded.algebra.field, want
            ));
        }
    }
    Ok((loaded, bytes))
}

fn parse_support(alg: &GradedBasicAlgebra, e: &Option<String>) -> Result<Vec<usize>, String> {
    let mut out = match e {
        None => (0..alg.n()).collect::<Vec<_>>(),
        Some(s) => {
            let mut v = Vec::new();
            for tok in s.split(',') {
                let tok = tok.trim();
                if tok.is_empty() {
                    continue;
                }
                let idx = alg
                    .label_index(tok)
                    .map_err(|e| format!("--e: {e}"))?;
                v.push(idx);
            }
            v
        }
    };
    out.sort_unstable();
    out.dedup();
    Ok(out)
}

fn verdict_line(v: &Verdict) -> String {
    format!("{v}")
}

fn cmd_info(l: &Loaded) -> (String, i32) {
    let a = &l.algebra;
    let mut m = String::new();
    writeln!(m, "field = {}", a.field).unwrap();
    writeln!(m, "labels = {}", a.labels.join(",")).unwrap();
    writeln!(m, "dim = {}", a.dim()).unwrap();
    writeln!(m, "max_degree = {}", a.max_degree()).unwrap();
    for d in 0..=a.max_degree() {
        writeln!(m, "dim_in_degree[{d}] = {}", a.dim_in_degree(d)).unwrap();
    }
    writeln!(m, "content_hash = {}", a.content_hash()).unwrap();
    (m, 0)
}

fn cmd_gldim(l: &Loaded, bound: usize) -> (String, i32) {
    let a = &l.algebra;
    let mut m = String::new();
    let mut worst = 0;
    let mut overall: Option<Verdict> = None;
    let mut best_finite = 0usize;
    let mut unknown = false;
    for i in 0..a.n() {
        let s = simple_module(a, i).expect("valid label");
        let (v, res) = projective_dimension(&s, bound);
        verify_resolution(&res, true).expect("resolution verification");
        match &v {
            Verdict::Finite(d) => best_finite = best_finite.max(*d),
            Verdict::InfiniteCertified(w) => {
                if overall.is_none() {
                    overall = Some(v.clone());
                }
                writeln!(
                    m,
                    "pd(S_{}) = InfiniteCertified: Omega^{}(S_{}) iso Omega^{}(S_{})<{}>",
                    a.labels[i], w.i, a.labels[i], w.j, a.labels[i], w.shift
                )
                .unwrap();
                continue;
            }
            Verdict::Unknown(_) => {
                unknown = true;
                worst = 2;
            }
        }
        writeln!(m, "pd(S_{}) = {}", a.labels[i], verdict_line(&v)).unwrap();
    }
    let overall = overall.unwrap_or(if unknown {
        Verdict::Unknown(bound)
    } else {
        Verdict::Finite(best_finite)
    });
    if matches!(overall, Verdict::InfiniteCertified(_)) {
        worst = 0;
    }
    writeln!(m, "gldim = {}", verdict_line(&overall)).unwrap();
    (m, worst)
}

fn cmd_resolve(l: &Loaded, bound: usize, e: &[usize]) -> (String, i32) {
    let a = &l.algebra;
    let mut m = String::new();
    let mut exit = 0;
    for &i in e {
        let s = simple_module(a, i).expect("valid label");
        let (v, res) = projective_dimension(&s, bound);
        verify_resolution(&res, true).expect("resolution verification");
        writeln!(m, "module = S_{}", a.labels[i]).unwrap();
        for (t, st) in res.stages.iter().enumerate() {
            let parts: Vec<String> = st
                .stack
                .summands
                .iter()
                .map(|su| format!("e_{}A<-{}>", a.labels[su.label], su.shift))
                .collect();
            writeln!(m, "P[{t}] = {}", parts.join(" + ")).unwrap();
        }
        writeln!(m, "pd = {}", verdict_line(&v)).unwrap();
        if matches!(v, Verdict::Unknown(_)) {
            exit = 2;
        }
    }
    (m, exit)
}

fn cmd_ext(l: &Loaded, bound: usize, e: &[usize]) -> Result<(String, i32), String> {
    let a = &l.algebra;
    let y = ext_algebra(a, e, bound).map_err(|e| e.to_string())?;
    let mut m = String::new();
    writeln!(m, "rk = {}", y.rk()).unwrap();
    let dims: Vec<String> = y.dims_by_degree.iter().map(|d| d.to_string()).collect();
    writeln!(m, "dims = {}", dims.join(",")).unwrap();
    writeln!(m, "finiteness = {}", y.report).unwrap();
    for (k, c) in y.classes.iter().enumerate() {
        writeln!(
            m,
            "class[{k}] = ext_deg {} src {} tgt {} internal_deg {}",
            c.t,
            a.labels[y.support[c.source]],
            a.labels[y.support[c.target]],
            c.internal_degree
        )
        .unwrap();
    }
    let exit = match y.report {
        homalg::ext::FinitenessReport::NotFiniteDimUpToBound {
            periodic_nonvanishing: false,
            ..
        } => 2,
        _ => 0,
    };
    Ok((m, exit))
}

fn cmd_gamma(l: &Loaded, e: &[usize]) -> Result<(String, i32), String> {
    let a = &l.algebra;
    let complement: Vec<usize> = (0..a.n()).filter(|i| !e.contains(i)).collect();
    let gamma = a.corner(&complement).map_err(|e| e.to_string())?;
    Ok((gamma.serialize(), 0))
}

fn cmd_cartan(l: &Loaded, bound: usize, e: &[usize]) -> (String, i32) {
    let a = &l.algebra;
    match cartan_reduction(a, e, bound) {
        Ok(r) => (r.render(), 0),
        Err(err) => {
            // reduction refused (incomplete Euler data): still report
            // the unconditional Cartan side
            let mut m = String::new();
            writeln!(m, "reduction = refused ({err})").unwrap();
            writeln!(m, "det_CA = {}", cartan_det(a)).unwrap();
            let c = cartan_matrix(a);
            for (i, row) in c.iter().enumerate() {
                for (j, v) in row.iter().enumerate() {
                    writeln!(m, "C[{}][{}] = {v}", i + 1, j + 1).unwrap();
                }
            }
            let g = graded_cartan(a);
            if !g.is_empty() {
                writeln!(m, "graded_det_CA = {}", det_int_poly(&g).unwrap()).unwrap();
            }
            (m, 2)
        }
    }
}

fn render_check(r: &CheckReport) -> String {
    let mut m = String::new();
    writeln!(m, "predicate = {}", r.predicate).unwrap();
    writeln!(m, "status = {}", r.status).unwrap();
    writeln!(m, "gldim_A = {}", r.gldim_a).unwrap();
    writeln!(m, "gldim_Gamma = {}", r.gldim_gamma).unwrap();
    writeln!(m, "Ye_finiteness = {}", r.ye_finiteness).unwrap();
    writeln!(m, "gldim_Ye = {}", r.gldim_ye).unwrap();
    writeln!(m, "acyclic = {}", r.acyclic).unwrap();
    if let Some(w) = &r.witness {
        writeln!(m, "witness-begin").unwrap();
        m.push_str(w);
        if !w.ends_with('\n') {
            m.push('\n');
        }
        writeln!(m, "witness-end").unwrap();
    }
    m
}

fn cmd_check(
    l: &Loaded,
    predicate: &str,
    bound: usize,
    e: &[usize],
) -> Result<(String, i32), String> {
    let inst = Instance::new(
        "cli".into(),
        l.presentation.clone(),
        l.algebra.clone(),
        e.to_vec(),
        bound,
    );
    let an: Analysis = analyze(&inst).map_err(|e| e.to_string())?;
    let reports: Vec<CheckReport> = match predicate {
        "aandy" => vec![homalg::harness::check_prop_a_and_y_implies_gamma(&inst, &an)],
        "gammaartinian" => vec![homalg::harness::check_prop_gamma_and_artinian_implies_a(
            &inst, &an,
        )],
        "twoofthree" => vec![homalg::harness::check_two_of_three(&inst, &an)],
        "cartan" => vec![homalg::harness::check_cartan_reduction(&inst, &an)],
        "all" => run_all_checks(&inst, &an),
        other => return Err(format!("unknown predicate '{other}'")),
    };
    let mut m = String::new();
    let mut exit = 0;
    for r in &reports {
        m.push_str(&render_check(r));
        match &r.status {
            Status::Fail(_) => exit = 1,
            Status::Inconclusive(_) if exit == 0 => exit = 2,
            _ => {}
        }
    }
    Ok((m, exit))
}

fn cmd_sweep(family: &str, bound: usize, jobs: usize) -> Result<(String, i32), String> {
    let spec = FamilySpec::parse(family).map_err(|e| e.to_string())?;
    let fam = generate_family(&spec, bound).map_err(|e| e.to_string())?;
    let out = conjecture_sweep(&fam, jobs.max(1));
    let mut m = String::new();
    for l in &out.lines {
        writeln!(m, "{}", l.line).unwrap();
    }
    m.push_str(&out.summary);
    for (key, w) in &out.counterexamples {
        writeln!(m, "counterexample-begin {key}").unwrap();
        m.push_str(w);
        if !w.ends_with('\n') {
            m.push('\n');
        }
        writeln!(m, "counterexample-end").unwrap();
    }
    let exit = if !out.counterexamples.is_empty() {
        1
    } else if out.lines.iter().any(|l| l.classification == "near-miss") {
        2
    } else {
        0
    };
    Ok((m, exit))
}

/// (human line, machine block, exit code)
fn dispatch(cli: &Cmd) -> Result<(String, String, i32), (String, i32)> {
    let err3 = |e: String| (e, 3);
    match cli {
        Cmd::Info(c) => {
            let (l, _) = load(c).map_err(err3)?;
            let (m, x) = cmd_info(&l);
            Ok(("algebra summary".into(), m, x))
        }
        Cmd::Gldim(c) => {
            let (l, _) = load(c).map_err(err3)?;
            let (m, x) = cmd_gldim(&l, c.bound);
            Ok((format!("global dimension at bound {}", c.bound), m, x))
        }
        Cmd::Resolve(c) => {
            let (l, _) = load(c).map_err(err3)?;
            let e = parse_support(&l.algebra, &c.e).map_err(err3)?;
            let (m, x) = cmd_resolve(&l, c.bound, &e);
            Ok(("minimal projective resolutions".into(), m, x))
        }
        Cmd::Ext(c) => {
            let (l, _) = load(c).map_err(err3)?;
            let e = parse_support(&l.algebra, &c.e).map_err(err3)?;
            let (m, x) = cmd_ext(&l, c.bound, &e).map_err(err3)?;
            Ok(("Yoneda algebra Y(e)".into(), m, x))
        }
        Cmd::Gamma(c) => {
            let (l, _) = load(c).map_err(err3)?;
            let e = parse_support(&l.algebra, &c.e).map_err(err3)?;
            let (m, x) = cmd_gamma(&l, &e).map_err(err3)?;
            Ok(("corner algebra (1-e)A(1-e)".into(), m, x))
        }
        Cmd::Cartan(c) => {
            let (l, _) = load(c).map_err(err3)?;
            let e = parse_support(&l.algebra, &c.e).map_err(err3)?;
            let (m, x) = cmd_cartan(&l, c.bound, &e);
            Ok(("Cartan/Euler analytics".into(), m, x))
        }
        Cmd::Check { predicate, common } => {
            let (l, _) = load(common).map_err(err3)?;
            let e = parse_support(&l.algebra, &common.e).map_err(err3)?;
            let (m, x) = cmd_check(&l, predicate, common.bound, &e).map_err(err3)?;
            Ok((format!("theorem check: {predicate}"), m, x))
        }
        Cmd::Sweep {
            family,
            bound,
            jobs,
            ..
        } => {
            let (m, x) = cmd_sweep(family, *bound, *jobs).map_err(err3)?;
            Ok((format!("conjecture sweep over {family}"), m, x))
        }
    }
}

/// Normalized invocation string for the cache key: everything that can
/// change the output (not --jobs, --out, --cache).
fn cache_invocation(cli: &Cmd) -> Option<(String, Vec<u8>, Option<PathBuf>, bool)> {
    let of_common = |tag: &str, c: &Common, extra: &str| {
        let input = std::fs::read(&c.input).unwrap_or_default();
        let inv = format!(
            "v1 {tag} bound={} e={} field={} {extra}",
            c.bound,
            c.e.clone().unwrap_or_default(),
            c.field.clone().unwrap_or_default(),
        );
        (inv, input, c.cache.clone(), c.no_cache)
    };
    match cli {
        Cmd::Info(c) => Some(of_common("info", c, "")),
        Cmd::Gldim(c) => Some(of_common("gldim", c, "")),
        Cmd::Resolve(c) => Some(of_common("resolve", c, "")),
        Cmd::Ext(c) => Some(of_common("ext", c, "")),
        Cmd::Gamma(c) => Some(of_common("gamma", c, "")),
        Cmd::Cartan(c) => Some(of_common("cartan", c, "")),
        Cmd::Check { predicate, common } => Some(of_common("check", common, predicate)),
        Cmd::Sweep {
            family,
            bound,
            out: _,
            cache,
            no_cache,
            ..
        } => Some((
            format!("v1 sweep bound={bound} {family}"),
            Vec::new(),
            cache.clone(),
            *no_cache,
        )),
    }
}

fn out_path(cli: &Cmd) -> Option<PathBuf> {
    match cli {
        Cmd::Info(c) | Cmd::Gldim(c) | Cmd::Resolve(c) | Cmd::Ext(c) | Cmd::Gamma(c)
        | Cmd::Cartan(c) => c.out.clone(),
        Cmd::Check { common, .. } => common.out.clone(),
        Cmd::Sweep { out, .. } => out.clone(),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (key, cache) = match cache_invocation(&cli.cmd) {
        Some((inv, input, dir, no_cache)) if !no_cache => {
            let cache = Cache::resolve(dir.as_deref());
            (Some(Cache::key(&inv, &input)), Some(cache))
        }
        _ => (None, None),
    };
    if let (Some(k), Some(c)) = (&key, &cache) {
        if let Some(hit) = c.get(k) {
            print!("{}", hit.stdout);
            if let Some(p) = out_path(&cli.cmd) {
                let machine = hit.stdout.split_once("---\n").map(|x| x.1).unwrap_or("");
                if std::fs::write(&p, machine).is_err() {
                    eprintln!("warning: cannot write {}", p.display());
                }
            }
            return ExitCode::from(hit.exit_code as u8);
        }
    }
    match dispatch(&cli.cmd) {
        Err((msg, code)) => {
            eprintln!("error: {msg}");
            ExitCode::from(code as u8)
        }
        Ok((human, machine, code)) => {
            let stdout = format!("{human}\n---\n{machine}");
            print!("{stdout}");
            if let (Some(k), Some(c)) = (&key, &cache) {
                let _ = c.put(
                    k,
                    &CachedRun {
                        stdout: stdout.clone(),
                        exit_code: code,
                    },
                );
            }
            if let Some(p) = out_path(&cli.cmd) {
                if std::fs::write(&p, &machine).is_err() {
                    eprintln!("warning: cannot write {}", p.display());
                }
            }
            ExitCode::from(code as u8)
        }
    }
}
