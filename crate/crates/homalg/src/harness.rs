//! Theorem checks as three-valued predicates over instances (algebra,
//! e-support, bound), instance-family generators, and the conjecture
//! sweep. Strict truncation honesty throughout: an Unknown verdict is
//! never converted into PASS or FAIL.

use crate::algebra::GradedBasicAlgebra;
use crate::cartan::{cartan_det, cartan_reduction};
use crate::ext::{ext_algebra, ext_quiver, ExtAlgebra, FinitenessReport};
use crate::linalg::Field;
use crate::module::{
    global_dimension, is_koszul, is_linear_resolution, semisimple_module, LinearVerdict, Verdict,
};
use crate::quiver::{compile, serialize_presentation, Presentation, Quiver, Relation};
use crate::{Error, Result};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use std::sync::Arc;

pub const DEFAULT_BOUND: usize = 20;

#[derive(Clone)]
pub struct Instance {
    /// stable key: family id + parameters + e-subset, space-free
    pub key: String,
    pub presentation: Option<Presentation>,
    pub algebra: Arc<GradedBasicAlgebra>,
    pub e_support: Vec<usize>,
    pub t_max: usize,
}

impl Instance {
    pub fn new(
        key: String,
        presentation: Option<Presentation>,
        algebra: Arc<GradedBasicAlgebra>,
        e_support: Vec<usize>,
        t_max: usize,
    ) -> Instance {
        let mut e = e_support;
        e.sort_unstable();
        e.dedup();
        Instance {
            key,
            presentation,
            algebra,
            e_support: e,
            t_max,
        }
    }

    /// Re-runnable witness text: the quiver presentation when the
    /// instance came from one, the structure-constant dump otherwise.
    pub fn witness_text(&self) -> String {
        let body = match &self.presentation {
            Some(p) => serialize_presentation(p),
            None => self.algebra.serialize(),
        };
        let e: Vec<String> = self.e_support.iter().map(|i| (i + 1).to_string()).collect();
        format!("# instance {}\n# e = {}\n{}", self.key, e.join(","), body)
    }
}

/// Everything the predicates need, computed once per instance.
pub struct Analysis {
    pub gamma: Arc<GradedBasicAlgebra>,
    pub gldim_a: Verdict,
    pub gldim_gamma: Verdict,
    pub ext: ExtAlgebra,
    /// gl.dim of the Y(e) carrier; only meaningful when the carrier is
    /// complete (report = CertifiedFiniteDim)
    pub gldim_ye: Verdict,
    pub acyclic: bool,
    pub koszul: LinearVerdict,
    pub linear_se: LinearVerdict,
}

pub fn analyze(inst: &Instance) -> Result<Analysis> {
    let alg = &inst.algebra;
    let t_max = inst.t_max;
    let complement: Vec<usize> = (0..alg.n())
        .filter(|l| !inst.e_support.contains(l))
        .collect();
    let gamma = Arc::new(alg.corner(&complement)?);
    let gldim_a = global_dimension(alg, t_max);
    let gldim_gamma = global_dimension(&gamma, t_max);
    let ext = ext_algebra(alg, &inst.e_support, t_max)?;
    let gldim_ye = global_dimension(&ext.algebra, t_max);
    let acyclic = ext_quiver(alg, &inst.e_support)?.acyclic;
    let koszul = is_koszul(alg, t_max);
    let linear_se = is_linear_resolution(&semisimple_module(alg, &inst.e_support)?, t_max);
    Ok(Analysis {
        gamma,
        gldim_a,
        gldim_gamma,
        ext,
        gldim_ye,
        acyclic,
        koszul,
        linear_se,
    })
}

/// Three-valued truth of a single hypothesis or conclusion.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Truth {
    True,
    False,
    Unknown,
    /// heuristically true (ApparentlyFiniteDim) — advisory strength only
    Apparent,
}

fn truth_of_verdict(v: &Verdict) -> Truth {
    match v {
        Verdict::Finite(_) => Truth::True,
        Verdict::InfiniteCertified(_) => Truth::False,
        Verdict::Unknown(_) => Truth::Unknown,
    }
}

fn truth_of_findim(r: &FinitenessReport) -> Truth {
    match r {
        FinitenessReport::CertifiedFiniteDim { .. } => Truth::True,
        FinitenessReport::ApparentlyFiniteDim { .. } => Truth::Apparent,
        FinitenessReport::NotFiniteDimUpToBound {
            periodic_nonvanishing: true,
            ..
        } => Truth::False,
        FinitenessReport::NotFiniteDimUpToBound { .. } => Truth::Unknown,
    }
}

/// Condition "Y(e) finite-dimensional AND gl.dim Y(e) finite".
fn truth_of_ye_condition(an: &Analysis) -> Truth {
    match truth_of_findim(&an.ext.report) {
        Truth::True => truth_of_verdict(&an.gldim_ye),
        other => other, // carrier incomplete: its gl.dim is not evidence
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Status {
    Pass,
    /// hypotheses certified false: nothing to check
    PassVacuous,
    /// hypotheses only apparently true (heuristic Artinian premise)
    PassAdvisory,
    Fail(String),
    Inconclusive(String),
    NotApplicable(String),
}

impl std::fmt::Display for Status {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Status::Pass => write!(f, "PASS"),
            Status::PassVacuous => write!(f, "PASS-vacuous"),
            Status::PassAdvisory => write!(f, "PASS-advisory"),
            Status::Fail(w) => write!(f, "FAIL: {w}"),
            Status::Inconclusive(w) => write!(f, "INCONCLUSIVE: {w}"),
            Status::NotApplicable(w) => write!(f, "NOT-APPLICABLE: {w}"),
        }
    }
}

impl Status {
    pub fn is_pass(&self) -> bool {
        matches!(self, Status::Pass | Status::PassVacuous | Status::PassAdvisory)
    }
}

pub struct CheckReport {
    pub predicate: &'static str,
    pub instance_key: String,
    pub status: Status,
    pub gldim_a: Verdict,
    pub gldim_gamma: Verdict,
    pub ye_finiteness: FinitenessReport,
    pub gldim_ye: Verdict,
    pub acyclic: bool,
    /// serialized re-runnable instance, always present on FAIL
    pub witness: Option<String>,
}

fn report(
    predicate: &'static str,
    inst: &Instance,
    an: &Analysis,
    status: Status,
) -> CheckReport {
    let witness = match &status {
        Status::Fail(_) => Some(inst.witness_text()),
        _ => None,
    };
    CheckReport {
        predicate,
        instance_key: inst.key.clone(),
        status,
        gldim_a: an.gldim_a.clone(),
        gldim_gamma: an.gldim_gamma.clone(),
        ye_finiteness: an.ext.report.clone(),
        gldim_ye: an.gldim_ye.clone(),
        acyclic: an.acyclic,
        witness,
    }
}

/// Evaluates "H1 ∧ H2 ∧ … ⇒ C" in three-valued logic.
fn implication(hyps: &[Truth], conclusion: Truth) -> Status {
    if conclusion == Truth::True {
        if hyps.contains(&Truth::Apparent) && !hyps.contains(&Truth::False) {
            return Status::PassAdvisory;
        }
        return Status::Pass;
    }
    if hyps.contains(&Truth::False) {
        return Status::PassVacuous;
    }
    if hyps.iter().all(|&h| h == Truth::True) {
        return match conclusion {
            Truth::False => Status::Fail("hypotheses certified, conclusion certified false".into()),
            _ => Status::Inconclusive("hypotheses certified, conclusion unknown at bound".into()),
        };
    }
    if hyps
        .iter()
        .all(|&h| h == Truth::True || h == Truth::Apparent)
    {
        return Status::Inconclusive("hypotheses only apparent; conclusion not certified".into());
    }
    Status::Inconclusive("hypotheses not determined at bound".into())
}

/// "Suppose A and Y(e) have finite global dimension; then Γ does."
pub fn check_prop_a_and_y_implies_gamma(inst: &Instance, an: &Analysis) -> CheckReport {
    let hyps = [truth_of_verdict(&an.gldim_a), truth_of_ye_condition(an)];
    let status = implication(&hyps, truth_of_verdict(&an.gldim_gamma));
    report("prop_A_and_Y_implies_Gamma", inst, an, status)
}

/// "Suppose Γ has finite global dimension and Y(e) is Artinian; then A
/// has finite global dimension." The Artinian premise accepts
/// CertifiedFiniteDim for substantive passes and ApparentlyFiniteDim
/// for advisory ones.
pub fn check_prop_gamma_and_artinian_implies_a(inst: &Instance, an: &Analysis) -> CheckReport {
    let artinian = truth_of_findim(&an.ext.report);
    let hyps = [truth_of_verdict(&an.gldim_gamma), artinian];
    let status = implication(&hyps, truth_of_verdict(&an.gldim_a));
    report("prop_Gamma_and_Artinian_implies_A", inst, an, status)
}

/// Koszul two-of-three: among (1) gl.dim A finite, (2) gl.dim Γ finite,
/// (3) Y(e) finite-dim with finite gl.dim, any two imply the third.
/// Applicable only when linearity of the resolution of S_e (or
/// Koszulity of A) is verified up to the bound.
pub fn check_two_of_three(inst: &Instance, an: &Analysis) -> CheckReport {
    let applicable = matches!(an.koszul, LinearVerdict::LinearUpTo(_))
        || matches!(an.linear_se, LinearVerdict::LinearUpTo(_));
    if !applicable {
        return report(
            "two_of_three",
            inst,
            an,
            Status::NotApplicable("linearity precondition fails".into()),
        );
    }
    let conds = [
        truth_of_verdict(&an.gldim_a),
        truth_of_verdict(&an.gldim_gamma),
        truth_of_ye_condition(an),
    ];
    let trues = conds.iter().filter(|&&c| c == Truth::True).count();
    let status = if trues >= 2 {
        if conds.contains(&Truth::False) {
            Status::Fail("two conditions certified true, third certified false".into())
        } else if conds.contains(&Truth::Unknown) || conds.contains(&Truth::Apparent) {
            Status::Inconclusive("two conditions hold, third unknown at bound".into())
        } else {
            Status::Pass
        }
    } else {
        // fewer than two certified-true conditions: nothing to enforce
        Status::PassVacuous
    };
    report("two_of_three", inst, an, status)
}

/// Cartan reduction: under gl.dim A and gl.dim Y(e) certified finite,
/// require cd(A) = cd(Γ), gl.dim Γ finite and det W = 1.
pub fn check_cartan_reduction(inst: &Instance, an: &Analysis) -> CheckReport {
    let pre = truth_of_verdict(&an.gldim_a) == Truth::True
        && truth_of_ye_condition(an) == Truth::True;
    if !pre {
        return report(
            "cartan_reduction",
            inst,
            an,
            Status::NotApplicable("requires certified finite gl.dim of A and Y(e)".into()),
        );
    }
    let status = match cartan_reduction(&inst.algebra, &inst.e_support, inst.t_max) {
        Err(e) => Status::Inconclusive(format!("reduction refused: {e}")),
        Ok(r) => {
            let gamma_finite = r.gldim_gamma.is_finite();
            let cd_equal = r.cd_a == cartan_det(&an.gamma) && r.cd_a == r.cd_gamma;
            let det_w_one = r.det_w_is_one.unwrap_or(false);
            if cd_equal && gamma_finite && det_w_one && r.jacobi_ok && r.ce_identity {
                Status::Pass
            } else if matches!(r.gldim_gamma, Verdict::Unknown(_)) {
                Status::Inconclusive("gl.dim Γ unknown at bound".into())
            } else {
                Status::Fail(format!(
                    "cd(A)={} cd(Γ)={} detW={} jacobi={} CE={}",
                    r.cd_a, r.cd_gamma, r.det_w, r.jacobi_ok, r.ce_identity
                ))
            }
        }
    };
    report("cartan_reduction", inst, an, status)
}

pub fn run_all_checks(inst: &Instance, an: &Analysis) -> Vec<CheckReport> {
    vec![
        check_prop_a_and_y_implies_gamma(inst, an),
        check_prop_gamma_and_artinian_implies_a(inst, an),
        check_two_of_three(inst, an),
        check_cartan_reduction(inst, an),
    ]
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FamilySpec {
    /// cycle of length n with rad^m = 0
    Nakayama { n: usize, m: usize },
    /// A_n quiver, quadratic monomial relations by bitmask
    Linear { n: usize, mask: u32 },
    /// all masks for A_n
    LinearAll { n: usize },
    /// random quiver: v vertices, a arrows, r homogeneous quadratic
    /// monomial/binomial relations
    Random { v: usize, a: usize, r: usize, seed: u64 },
    /// the standard fixed corpus
    Corpus,
}

impl FamilySpec {
    /// "nakayama:3,2" | "linear:4,1" | "linear-all:4" |
    /// "random:4,6,3,17" | "corpus"
    pub fn parse(s: &str) -> Result<FamilySpec> {
        let bad = |m: &str| Error::InvalidParams(format!("family spec '{s}': {m}"));
        if s == "corpus" {
            return Ok(FamilySpec::Corpus);
        }
        let (name, args) = s
            .split_once(':')
            .ok_or_else(|| bad("expected name:args"))?;
        let nums: Vec<u64> = args
            .split(',')
            .map(|t| t.trim().parse::<u64>())
            .collect::<std::result::Result<_, _>>()
            .map_err(|_| bad("non-numeric argument"))?;
        match (name, nums.as_slice()) {
            ("nakayama", [n, m]) => Ok(FamilySpec::Nakayama {
                n: *n as usize,
                m: *m as usize,
            }),
            ("linear", [n, mask]) => Ok(FamilySpec::Linear {
                n: *n as usize,
                mask: *mask as u32,
            }),
            ("linear-all", [n]) => Ok(FamilySpec::LinearAll { n: *n as usize }),
            ("random", [v, a, r, seed]) => Ok(FamilySpec::Random {
                v: *v as usize,
                a: *a as usize,
                r: *r as usize,
                seed: *seed,
            }),
            _ => Err(bad("unknown family or wrong arity")),
        }
    }
}

pub struct Family {
    pub instances: Vec<Instance>,
    /// generated candidates that failed compile certification
    pub skipped: usize,
}

fn subsets(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    for bits in 1u32..(1u32 << n) {
        out.push((0..n).filter(|i| bits & (1 << i) != 0).collect());
    }
    out
}

fn e_key(e: &[usize]) -> String {
    e.iter()
        .map(|i| (i + 1).to_string())
        .collect::<Vec<_>>()
        .join(",")
}

fn instances_for(
    base_key: &str,
    p: Option<Presentation>,
    alg: GradedBasicAlgebra,
    t_max: usize,
) -> Vec<Instance> {
    let alg = Arc::new(alg);
    subsets(alg.n())
        .into_iter()
        .map(|e| {
            Instance::new(
                format!("{base_key}:e={}", e_key(&e)),
                p.clone(),
                alg.clone(),
                e,
                t_max,
            )
        })
        .collect()
}

pub fn generate_family(spec: &FamilySpec, t_max: usize) -> Result<Family> {
    use crate::quiver::test_algebras::{linear_presentation, nakayama_presentation};
    match spec {
        FamilySpec::Nakayama { n, m } => {
            if *n < 1 || *m < 2 {
                return Err(Error::InvalidParams("nakayama needs n ≥ 1, m ≥ 2".into()));
            }
            let p = nakayama_presentation(*n, *m);
            let alg = compile(&p)?;
            Ok(Family {
                instances: instances_for(&format!("nakayama({n},{m})"), Some(p), alg, t_max),
                skipped: 0,
            })
        }
        FamilySpec::Linear { n, mask } => {
            if *n < 2 {
                return Err(Error::InvalidParams("linear needs n ≥ 2".into()));
            }
            let slots = (*n).saturating_sub(2);
            if slots < 32 && *mask >= (1u32 << slots) {
                return Err(Error::InvalidParams("relation mask out of range".into()));
            }
            let p = linear_presentation(*n, *mask);
            let alg = compile(&p)?;
            Ok(Family {
                instances: instances_for(&format!("linear({n},{mask})"), Some(p), alg, t_max),
                skipped: 0,
            })
        }
        FamilySpec::LinearAll { n } => {
            let slots = (*n).saturating_sub(2);
            let mut instances = Vec::new();
            for mask in 0..(1u32 << slots) {
                let f = generate_family(&FamilySpec::Linear { n: *n, mask }, t_max)?;
                instances.extend(f.instances);
            }
            Ok(Family {
                instances,
                skipped: 0,
            })
        }
        FamilySpec::Random { v, a, r, seed } => random_family(*v, *a, *r, *seed, t_max),
        FamilySpec::Corpus => Ok(Family {
            instances: standard_corpus(t_max),
            skipped: 0,
        }),
    }
}

fn random_family(v: usize, a: usize, r: usize, seed: u64, t_max: usize) -> Result<Family> {
    if v == 0 {
        return Err(Error::InvalidParams("random family needs v ≥ 1".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let vertices: Vec<String> = (1..=v).map(|i| i.to_string()).collect();
    let arrows: Vec<(String, String, String)> = (0..a)
        .map(|i| {
            let s = rng.gen_range(0..v);
            let t = rng.gen_range(0..v);
            (format!("a{}", i + 1), vertices[s].clone(), vertices[t].clone())
        })
        .collect();
    let quiver = Quiver::new(vertices, arrows)?;
    // composable length-2 paths as relation candidates
    let paths2 = crate::quiver::enumerate_paths(&quiver, 2, None, None);
    let mut relations: Vec<Relation> = Vec::new();
    for _ in 0..r {
        if paths2.is_empty() {
            break;
        }
        let p1 = paths2[rng.gen_range(0..paths2.len())].clone();
        let binomial = rng.gen_bool(0.3);
        let mut terms = vec![(Field::Q.from_i64(1), p1.clone())];
        if binomial {
            // a parallel partner, if one exists
            let partners: Vec<_> = paths2
                .iter()
                .filter(|q| {
                    q.start == p1.start && q.end(&quiver) == p1.end(&quiver) && **q != p1
                })
                .cloned()
                .collect();
            if !partners.is_empty() {
                let q = partners[rng.gen_range(0..partners.len())].clone();
                terms.push((Field::Q.from_i64(-1), q));
            }
        }
        if let Ok(rel) = Relation::new(terms, &quiver) {
            relations.push(rel);
        }
    }
    let p = Presentation {
        field: Field::Q,
        quiver,
        relations,
        degcap: crate::quiver::DEFAULT_DEGCAP,
    };
    match compile(&p) {
        Ok(alg) => Ok(Family {
            instances: instances_for(
                &format!("random({v},{a},{r},seed={seed})"),
                Some(p),
                alg,
                t_max,
            ),
            skipped: 0,
        }),
        Err(_) => Ok(Family {
            instances: Vec::new(),
            skipped: 1,
        }),
    }
}

/// The fixed instance corpus used by the acceptance checks.
pub fn standard_corpus(t_max: usize) -> Vec<Instance> {
    use crate::quiver::test_algebras::{loop_presentation, semisimple};
    let mut out = Vec::new();
    for spec in [
        FamilySpec::Nakayama { n: 3, m: 2 },
        FamilySpec::Nakayama { n: 3, m: 3 },
        FamilySpec::Nakayama { n: 4, m: 2 },
        FamilySpec::LinearAll { n: 2 },
        FamilySpec::LinearAll { n: 3 },
        FamilySpec::LinearAll { n: 4 },
        FamilySpec::Random {
            v: 3,
            a: 3,
            r: 1,
            seed: 17,
        },
        FamilySpec::Random {
            v: 4,
            a: 6,
            r: 3,
            seed: 17,
        },
    ] {
        out.extend(generate_family(&spec, t_max).expect("corpus families valid").instances);
    }
    for m in [2usize, 3] {
        let p = loop_presentation(m);
        let alg = compile(&p).expect("loop compiles");
        out.extend(instances_for(&format!("loop({m})"), Some(p), alg, t_max));
    }
    out.extend(instances_for("semisimple(2)", None, semisimple(2), t_max));
    out
}

fn verdict_token(v: &Verdict) -> String {
    match v {
        Verdict::Finite(d) => format!("finite:{d}"),
        Verdict::InfiniteCertified(_) => "infinite".into(),
        Verdict::Unknown(b) => format!("unknown:{b}"),
    }
}

fn findim_token(r: &FinitenessReport) -> String {
    match r {
        FinitenessReport::CertifiedFiniteDim { .. } => "certified-finite".into(),
        FinitenessReport::ApparentlyFiniteDim { .. } => "apparently-finite".into(),
        FinitenessReport::NotFiniteDimUpToBound {
            periodic_nonvanishing: true,
            ..
        } => "certified-infinite".into(),
        FinitenessReport::NotFiniteDimUpToBound { .. } => "not-finite-up-to-bound".into(),
    }
}

pub struct SweepLine {
    pub key: String,
    pub line: String,
    pub classification: &'static str,
    pub witness: Option<String>,
}

pub struct SweepOutcome {
    /// one line per instance, sorted by key
    pub lines: Vec<SweepLine>,
    pub counterexamples: Vec<(String, String)>,
    pub skipped: usize,
    pub summary: String,
}

fn classify(an: &Analysis) -> &'static str {
    let a_fin = truth_of_verdict(&an.gldim_a);
    let g_fin = truth_of_verdict(&an.gldim_gamma);
    let koszul = matches!(an.koszul, LinearVerdict::LinearUpTo(_));
    if !an.acyclic {
        // the Koszul theorem does not need acyclicity: record those
        // instances as a separate supporting category
        if koszul && a_fin == Truth::True && g_fin == Truth::True {
            return match truth_of_ye_condition(an) {
                Truth::True => "supporting-koszul-nonacyclic",
                Truth::False => "engine-anomaly-koszul",
                _ => "filtered:acyclic",
            };
        }
        return "filtered:acyclic";
    }
    if a_fin != Truth::True {
        return "filtered:gldimA";
    }
    if g_fin != Truth::True {
        return "filtered:gldimGamma";
    }
    match truth_of_ye_condition(an) {
        Truth::True => "supporting",
        Truth::False => "counterexample",
        _ => "near-miss",
    }
}

fn sweep_one(inst: &Instance) -> SweepLine {
    let an = analyze(inst).expect("instance analyzable");
    let mut class = classify(&an);
    let mut final_an = an;
    if class == "near-miss" {
        // escalation ladder: one retry at doubled bound
        let mut esc = inst.clone();
        esc.t_max = inst.t_max * 2;
        let an2 = analyze(&esc).expect("instance analyzable");
        let c2 = classify(&an2);
        if c2 != "near-miss" {
            class = c2;
            final_an = an2;
        }
    }
    let an = final_an;
    let line = format!(
        "{} {} {} {} {} {} {}",
        inst.key,
        verdict_token(&an.gldim_a),
        verdict_token(&an.gldim_gamma),
        findim_token(&an.ext.report),
        verdict_token(&an.gldim_ye),
        an.acyclic,
        class
    );
    let witness = if class == "counterexample" || class == "engine-anomaly-koszul" {
        Some(inst.witness_text())
    } else {
        None
    };
    SweepLine {
        key: inst.key.clone(),
        line,
        classification: class,
        witness,
    }
}

/// Counterexample sweep over a family: evaluates instances (in
/// parallel when `jobs > 1`), classifies them against the conjecture,
/// and aggregates deterministically by instance key.
pub fn conjecture_sweep(family: &Family, jobs: usize) -> SweepOutcome {
    let mut lines: Vec<SweepLine> = if jobs > 1 {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(jobs)
            .build()
            .expect("thread pool");
        pool.install(|| family.instances.par_iter().map(sweep_one).collect())
    } else {
        family.instances.iter().map(sweep_one).collect()
    };
    lines.sort_by(|a, b| a.key.cmp(&b.key));
    let counterexamples: Vec<(String, String)> = lines
        .iter()
        .filter(|l| l.classification == "counterexample")
        .map(|l| (l.key.clone(), l.witness.clone().unwrap()))
        .collect();
    let mut counts: std::collections::BTreeMap<&'static str, usize> = Default::default();
    for l in &lines {
        *counts.entry(l.classification).or_insert(0) += 1;
    }
    let mut summary = String::new();
    use std::fmt::Write;
    writeln!(summary, "instances = {}", lines.len()).unwrap();
    writeln!(summary, "skipped = {}", family.skipped).unwrap();
    for (k, v) in &counts {
        writeln!(summary, "{k} = {v}").unwrap();
    }
    writeln!(summary, "counterexamples = {}", counterexamples.len()).unwrap();
    SweepOutcome {
        lines,
        counterexamples,
        skipped: family.skipped,
        summary,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quiver::test_algebras::*;

    fn inst(alg: GradedBasicAlgebra, e: Vec<usize>, t_max: usize) -> Instance {
        Instance::new("test".into(), None, Arc::new(alg), e, t_max)
    }

    #[test]
    fn prop_a_and_y_on_a3_rad2_e2_passes_substantively() {
        let i = inst(a3_rad2(), vec![1], 20);
        let an = analyze(&i).unwrap();
        assert!(an.gldim_a.is_finite());
        assert!(an.gldim_gamma.is_finite());
        let r = check_prop_a_and_y_implies_gamma(&i, &an);
        assert_eq!(r.status, Status::Pass);
    }

    #[test]
    fn prop_a_and_y_vacuous_on_nakayama() {
        // gl.dim A certified infinite: hypothesis false
        let i = inst(nakayama(3, 2), vec![0], 15);
        let an = analyze(&i).unwrap();
        let r = check_prop_a_and_y_implies_gamma(&i, &an);
        // conclusion (gl.dim Γ finite) is in fact true here, so the
        // implication passes outright
        assert!(r.status.is_pass());
    }

    #[test]
    fn prop_gamma_artinian_vacuous_on_nakayama_e1() {
        // Γ finite but Y(e) certified infinite-dimensional: the
        // Artinian hypothesis is certified false → vacuous pass,
        // demonstrating why it cannot be dropped
        let i = inst(nakayama(3, 2), vec![0], 15);
        let an = analyze(&i).unwrap();
        assert!(an.gldim_gamma.is_finite());
        let r = check_prop_gamma_and_artinian_implies_a(&i, &an);
        assert_eq!(r.status, Status::PassVacuous);
    }

    #[test]
    fn two_of_three_on_koszul_cycle() {
        let i = inst(nakayama(3, 2), vec![0], 15);
        let an = analyze(&i).unwrap();
        let r = check_two_of_three(&i, &an);
        // (2) holds, (1) fails-certified: fewer than two certified-true
        assert_eq!(r.status, Status::PassVacuous);
    }

    #[test]
    fn two_of_three_substantive_on_linear_family() {
        for mask in 0..2u32 {
            let p = linear_presentation(3, mask);
            let alg = compile(&p).unwrap();
            for e in subsets(3) {
                let i = inst(alg.clone(), e.clone(), 20);
                let an = analyze(&i).unwrap();
                let r = check_two_of_three(&i, &an);
                assert!(r.status.is_pass(), "mask {mask} e {e:?}: {}", r.status);
            }
        }
    }

    #[test]
    fn cartan_check_passes_on_a3_rad2() {
        let i = inst(a3_rad2(), vec![1], 20);
        let an = analyze(&i).unwrap();
        let r = check_cartan_reduction(&i, &an);
        assert_eq!(r.status, Status::Pass);
    }

    #[test]
    fn cartan_check_not_applicable_when_a_infinite() {
        let i = inst(nakayama(3, 2), vec![0], 12);
        let an = analyze(&i).unwrap();
        let r = check_cartan_reduction(&i, &an);
        assert!(matches!(r.status, Status::NotApplicable(_)));
    }

    #[test]
    fn family_generation_is_deterministic() {
        let spec = FamilySpec::parse("random:4,6,3,17").unwrap();
        let f1 = generate_family(&spec, 10).unwrap();
        let f2 = generate_family(&spec, 10).unwrap();
        let k1: Vec<_> = f1.instances.iter().map(|i| i.key.clone()).collect();
        let k2: Vec<_> = f2.instances.iter().map(|i| i.key.clone()).collect();
        assert_eq!(k1, k2);
        for (a, b) in f1.instances.iter().zip(&f2.instances) {
            assert_eq!(*a.algebra, *b.algebra);
        }
    }

    #[test]
    fn family_spec_parsing() {
        assert_eq!(
            FamilySpec::parse("nakayama:3,2").unwrap(),
            FamilySpec::Nakayama { n: 3, m: 2 }
        );
        assert_eq!(FamilySpec::parse("corpus").unwrap(), FamilySpec::Corpus);
        assert!(FamilySpec::parse("nakayama:3").is_err());
        assert!(FamilySpec::parse("bogus:1,2").is_err());
    }

    #[test]
    fn linear_2_is_the_a2_path_algebra() {
        let f = generate_family(&FamilySpec::Linear { n: 2, mask: 0 }, 10).unwrap();
        assert_eq!(f.instances.len(), 3); // three nonempty e-subsets
        assert_eq!(*f.instances[0].algebra, a2_path_algebra());
    }

    #[test]
    fn sweep_on_linear_family_is_all_supporting_or_filtered() {
        let f = generate_family(&FamilySpec::LinearAll { n: 3 }, 15).unwrap();
        let out = conjecture_sweep(&f, 1);
        assert!(out.counterexamples.is_empty());
        for l in &out.lines {
            assert!(
                l.classification == "supporting" || l.classification.starts_with("filtered"),
                "{}: {}",
                l.key,
                l.classification
            );
        }
    }

    #[test]
    fn sweep_parallel_agrees_with_serial() {
        let f = generate_family(&FamilySpec::Nakayama { n: 3, m: 2 }, 12).unwrap();
        let serial = conjecture_sweep(&f, 1);
        let parallel = conjecture_sweep(&f, 4);
        let s: Vec<_> = serial.lines.iter().map(|l| &l.line).collect();
        let p: Vec<_> = parallel.lines.iter().map(|l| &l.line).collect();
        assert_eq!(s, p);
        assert_eq!(serial.summary, parallel.summary);
    }

    #[test]
    fn witness_round_trips_to_an_identical_algebra() {
        let spec = FamilySpec::Nakayama { n: 3, m: 2 };
        let f = generate_family(&spec, 10).unwrap();
        let w = f.instances[0].witness_text();
        let body: String = w
            .lines()
            .filter(|l| !l.starts_with('#'))
            .collect::<Vec<_>>()
            .join("\n");
        let p = crate::quiver::parse_presentation(&body).unwrap();
        let alg = compile(&p).unwrap();
        assert_eq!(alg, *f.instances[0].algebra);
    }
}
