//! Command implementations behind the `prelie2` binary.
//!
//! Every command returns an [`Outcome`]: the text to print and the exit code
//! (0 valid, 1 mathematical violation, 2 I/O or schema error).

pub mod corpus;

use std::fs;
use std::path::Path;

use prelie2::categorical::{alpha, functor_s, functor_t, validate_cat_hom};
use prelie2::crossed::{from_strict, to_strict};
use prelie2::format::{Structure, StructureFile};
use prelie2::graded::end_algebra;
use prelie2::lie2::{from_prelie2, semidirect_strict, Lie2Algebra};
use prelie2::linalg::Matrix;
use prelie2::o_operator::OOperator;
use prelie2::prelie::{cohomology::cocycle_report, invariant_forms, skeletal_from_form};
use prelie2::prelie2::lift;
use prelie2::scalar::format_rational;
use prelie2::ybe::{canonical_solution, cybe_check, graded_cybe_check, o_operator_to_r, solution_from_o_operator, Tensor2};
use prelie2::{Error, ValidationReport};
use serde_json::json;

pub const EXIT_OK: i32 = 0;
pub const EXIT_VIOLATION: i32 = 1;
pub const EXIT_SCHEMA: i32 = 2;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub text: String,
}

impl Outcome {
    fn new(code: i32, text: impl Into<String>) -> Self {
        Outcome { code, text: text.into() }
    }
}

/// Exit code for a library error: malformed input is a schema error, anything
/// else is a failed mathematical precondition.
pub fn error_code(e: &Error) -> i32 {
    match e {
        Error::Parse(_)
        | Error::Schema(_)
        | Error::DimensionMismatch { .. }
        | Error::ArityMismatch { .. }
        | Error::SlotOutOfRange { .. } => EXIT_SCHEMA,
        _ => EXIT_VIOLATION,
    }
}

fn fail(e: Error) -> Outcome {
    Outcome::new(error_code(&e), format!("error: {e}\n"))
}

pub fn load(path: &Path) -> Result<StructureFile, Outcome> {
    let text = fs::read_to_string(path)
        .map_err(|e| Outcome::new(EXIT_SCHEMA, format!("error: cannot read {}: {e}\n", path.display())))?;
    StructureFile::parse(&text).map_err(fail)
}

/// Per-condition summary of an r-matrix check plus the combined report.
pub struct CybeSummary {
    pub flags: Vec<(&'static str, bool)>,
    pub report: ValidationReport,
}

pub fn cybe_summary(algebra: &Lie2Algebra, r: &Tensor2, frkr: &Matrix) -> prelie2::Result<CybeSummary> {
    let base = algebra.validate().prefixed("algebra");
    let mut flags = vec![("algebra_ok", base.ok())];
    let mut report = base;
    if !algebra.is_strict() {
        return Err(Error::NotStrict("the r-matrix algebra has nonzero l3".into()));
    }
    if algebra.g1.dim == 0 {
        let skew = r.skew_report();
        let cybe = cybe_check(r, &algebra.flattened())?;
        flags.extend([("skew_ok", skew.ok()), ("cybe_ok", cybe.ok()), ("closedness_ok", true)]);
        report.extend(skew);
        report.extend(cybe);
        return Ok(CybeSummary { flags, report });
    }
    match graded_cybe_check(r, frkr, algebra) {
        Ok(g) => {
            flags.extend([("skew_ok", g.skew_ok()), ("cybe_ok", g.cybe_ok()), ("closedness_ok", g.closedness_ok())]);
            report.extend(g.combined());
        }
        Err(Error::Support(m)) => {
            flags.push(("support_ok", false));
            report.fail(&format!("support: {m}"), &[]);
        }
        Err(e) => return Err(e),
    }
    Ok(CybeSummary { flags, report })
}

/// Runs the validator matching the structure's kind. With `o_operator_mode`
/// the induced pre-Lie 2-algebra of an O-operator is built and validated too.
pub fn verify_structure(s: &Structure, o_operator_mode: bool) -> prelie2::Result<ValidationReport> {
    let report = match s {
        Structure::PreLie(a) => a.validate(),
        Structure::Rep { algebra, rep } => {
            let mut r = algebra.validate().prefixed("algebra");
            r.extend(rep.validate(algebra));
            r
        }
        Structure::PreLie2(a) => a.validate(),
        Structure::Lie2(g) => g.validate(),
        Structure::CrossedModule(cm) => cm.validate(),
        Structure::OOperator(o) => {
            let mut r = o.g.validate().prefixed("algebra");
            r.extend(o.rep.validate(&o.g)?);
            r.extend(o.validate()?);
            if o_operator_mode && r.ok() {
                r.extend(o.induced_prelie2()?.validate().prefixed("induced"));
            }
            r
        }
        Structure::RMatrix { algebra, r, frkr } => cybe_summary(algebra, r, frkr)?.report,
        Structure::Cochain { algebra, rep, cochain } => {
            let mut r = algebra.validate().prefixed("algebra");
            r.extend(rep.validate(algebra).prefixed("rep"));
            r.extend(cochain.validate_skew());
            if r.ok() {
                r.extend(cocycle_report(cochain, algebra, rep)?);
            }
            r
        }
        Structure::Complex(_) => ValidationReport::new(),
    };
    Ok(report)
}

fn facts(s: &Structure) -> Vec<(String, String)> {
    let mut out = vec![("kind".to_string(), s.kind().to_string())];
    let v = StructureFile::new(s.clone()).to_value();
    if let Some(dims) = v["dims"].as_object() {
        for (k, d) in dims {
            out.push((format!("dim {k}"), d.to_string()));
        }
    }
    match s {
        Structure::PreLie2(a) => {
            out.push(("strict".into(), a.is_strict().to_string()));
            out.push(("skeletal".into(), a.is_skeletal().to_string()));
        }
        Structure::Lie2(g) => out.push(("strict".into(), g.is_strict().to_string())),
        Structure::OOperator(o) => out.push(("strict".into(), (o.g.is_strict() && o.rep.is_strict()).to_string())),
        _ => {}
    }
    out
}

fn report_text(f: &StructureFile, r: &ValidationReport) -> String {
    let mut t = String::new();
    for (k, v) in facts(&f.structure) {
        t.push_str(&format!("{k}: {v}\n"));
    }
    if let Some(label) = f.metadata.get("label") {
        t.push_str(&format!("label: {label}\n"));
    }
    if r.ok() {
        t.push_str("status: valid\n");
    } else {
        t.push_str(&format!("status: invalid ({} violations)\n", r.violations.len()));
        t.push_str(&format!("conditions: {}\n", r.conditions().join("; ")));
        t.push_str(&r.to_string());
    }
    t
}

fn report_json(f: &StructureFile, r: &ValidationReport) -> String {
    let violations: Vec<_> = r
        .violations
        .iter()
        .map(|v| {
            json!({
                "condition": v.condition,
                "indices": v.indices,
                "difference": v.difference.iter().map(format_rational).collect::<Vec<_>>(),
            })
        })
        .collect();
    let facts: serde_json::Map<_, _> = facts(&f.structure).into_iter().map(|(k, v)| (k, json!(v))).collect();
    let doc = json!({
        "facts": facts,
        "metadata": f.metadata,
        "valid": r.ok(),
        "conditions": r.conditions(),
        "violations": violations,
    });
    serde_json::to_string_pretty(&doc).expect("json") + "\n"
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReportFormat {
    Text,
    Json,
}

pub fn cmd_verify(path: &Path, o_operator_mode: bool) -> Outcome {
    cmd_report(path, o_operator_mode, ReportFormat::Text)
}

pub fn cmd_report(path: &Path, o_operator_mode: bool, format: ReportFormat) -> Outcome {
    let f = match load(path) {
        Ok(f) => f,
        Err(o) => return o,
    };
    if o_operator_mode && !matches!(f.structure, Structure::OOperator(_)) {
        return Outcome::new(EXIT_SCHEMA, format!("error: --o-operator needs an o_operator file, found {}\n", f.structure.kind()));
    }
    let r = match verify_structure(&f.structure, o_operator_mode) {
        Ok(r) => r,
        Err(e) => return fail(e),
    };
    let text = match format {
        ReportFormat::Text => report_text(&f, &r),
        ReportFormat::Json => report_json(&f, &r),
    };
    Outcome::new(if r.ok() { EXIT_OK } else { EXIT_VIOLATION }, text)
}

/// `cybe-check`: the r-matrix file carries its algebra; `structure` replaces it.
pub fn cmd_cybe_check(rmatrix: &Path, structure: Option<&Path>, format: ReportFormat) -> Outcome {
    let f = match load(rmatrix) {
        Ok(f) => f,
        Err(o) => return o,
    };
    let Structure::RMatrix { algebra, r, frkr } = f.structure else {
        return Outcome::new(EXIT_SCHEMA, format!("error: expected an rmatrix file, found {}\n", f.structure.kind()));
    };
    let algebra = match structure {
        None => algebra,
        Some(p) => match load(p) {
            Ok(StructureFile { structure: Structure::Lie2(g), .. }) => g,
            Ok(StructureFile { structure: Structure::PreLie(a), .. }) => Lie2Algebra::from_lie(&a.commutator_algebra()),
            Ok(other) => {
                return Outcome::new(EXIT_SCHEMA, format!("error: the structure must be lie2 or prelie, found {}\n", other.structure.kind()))
            }
            Err(o) => return o,
        },
    };
    if (algebra.g0.dim, algebra.g1.dim) != (r.dim() - frkr.len(), frkr.len()) {
        return Outcome::new(EXIT_SCHEMA, "error: r-matrix dimensions do not match the structure\n");
    }
    let r = match Tensor2::graded(algebra.g0.direct_sum(&algebra.g1), algebra.g0.dim, r.coeffs) {
        Ok(r) => r,
        Err(e) => return fail(e),
    };
    let s = match cybe_summary(&algebra, &r, &frkr) {
        Ok(s) => s,
        Err(e) => return fail(e),
    };
    let ok = s.report.ok();
    let text = match format {
        ReportFormat::Text => {
            let mut t: String = s.flags.iter().map(|(k, v)| format!("{k} = {v}\n")).collect();
            t.push_str(&format!("valid = {ok}\n"));
            if !ok {
                t.push_str(&s.report.to_string());
            }
            t
        }
        ReportFormat::Json => {
            let mut m: serde_json::Map<String, serde_json::Value> = s.flags.iter().map(|(k, v)| (k.to_string(), json!(v))).collect();
            m.insert("valid".into(), json!(ok));
            m.insert("conditions".into(), json!(s.report.conditions()));
            serde_json::to_string_pretty(&m).expect("json") + "\n"
        }
    };
    Outcome::new(if ok { EXIT_OK } else { EXIT_VIOLATION }, text)
}

pub const TARGETS: [&str; 9] = [
    "lie2",
    "crossed-module",
    "strict",
    "cybe-solution",
    "skeletal-from-form",
    "end",
    "semidirect",
    "lift",
    "o-operator",
];

/// An r-matrix structure with `r` re-indexed on the flattened `g₀ ⊕ g₁`.
pub fn rmatrix(algebra: Lie2Algebra, r: Matrix, frkr: Matrix) -> prelie2::Result<Structure> {
    let r = Tensor2::graded(algebra.g0.direct_sum(&algebra.g1), algebra.g0.dim, r)?;
    Ok(Structure::RMatrix { algebra, r, frkr })
}

fn wrong_input(target: &str, kind: &str) -> Error {
    Error::Schema(format!("construct {target} does not accept a {kind} file"))
}

/// The construction behind `construct <target>`, without re-verification.
pub fn construct(target: &str, input: &Structure, form: usize) -> prelie2::Result<Structure> {
    let kind = input.kind();
    let invalid = |what: &str, r: ValidationReport| Error::Invalid { what: what.into(), report: r };
    let checked = |what: &str| -> prelie2::Result<()> {
        let r = verify_structure(input, false)?;
        if r.ok() {
            Ok(())
        } else {
            Err(invalid(what, r))
        }
    };
    checked(kind)?;
    Ok(match (target, input) {
        ("lie2", Structure::PreLie2(a)) => Structure::Lie2(from_prelie2(a)?.0),
        ("lie2", Structure::PreLie(a)) => Structure::Lie2(Lie2Algebra::from_lie(&a.commutator_algebra())),
        ("crossed-module", Structure::PreLie2(a)) => Structure::CrossedModule(from_strict(a)?),
        ("strict", Structure::CrossedModule(cm)) => Structure::PreLie2(to_strict(cm)?),
        ("cybe-solution", Structure::PreLie2(a)) => {
            let s = canonical_solution(a)?;
            rmatrix(s.algebra, s.r.coeffs, s.frkr)?
        }
        ("cybe-solution", Structure::OOperator(o)) => {
            let s = solution_from_o_operator(&o.t0, &o.t1, &o.g, &o.rep)?;
            rmatrix(s.algebra, s.r.coeffs, s.frkr)?
        }
        ("cybe-solution", Structure::PreLie(a)) => {
            let id = prelie2::MultiMap::identity(&a.space);
            let (g, r) = o_operator_to_r(&a.commutator_algebra(), &a.left_lie_rep(), &id)?;
            rmatrix(Lie2Algebra::from_lie(&g), r.coeffs, Vec::new())?
        }
        ("skeletal-from-form", Structure::PreLie(a)) => {
            let forms = invariant_forms(a);
            let w = forms.get(form).ok_or_else(|| {
                let mut r = ValidationReport::new();
                r.fail(&format!("invariant form #{form} exists ({} independent forms)", forms.len()), &[form]);
                invalid("skeletal-from-form input", r)
            })?;
            Structure::PreLie2(skeletal_from_form(a, w)?)
        }
        ("end", Structure::Complex(c)) => Structure::Lie2(end_algebra(c).lie2),
        ("semidirect", Structure::Rep { algebra, rep }) => Structure::PreLie(rep.semidirect(algebra)),
        ("semidirect", Structure::OOperator(o)) => Structure::Lie2(semidirect_strict(&o.g, &o.rep)?),
        ("lift", Structure::PreLie(a)) => Structure::PreLie2(lift(a)),
        ("o-operator", Structure::PreLie2(a)) => Structure::OOperator(OOperator::identity(a)?),
        _ => return Err(wrong_input(target, kind)),
    })
}

/// `construct`: builds, re-verifies, then writes (or prints) the output.
pub fn cmd_construct(target: &str, input: &Path, out: Option<&Path>, form: usize) -> Outcome {
    if !TARGETS.contains(&target) {
        return Outcome::new(EXIT_SCHEMA, format!("error: unknown target {target:?}; expected one of {}\n", TARGETS.join(", ")));
    }
    let f = match load(input) {
        Ok(f) => f,
        Err(o) => return o,
    };
    let s = match construct(target, &f.structure, form) {
        Ok(s) => s,
        Err(e) => return fail(e),
    };
    let r = match verify_structure(&s, false) {
        Ok(r) => r,
        Err(e) => return fail(e),
    };
    if !r.ok() {
        return Outcome::new(EXIT_VIOLATION, format!("error: constructed {} does not verify; nothing written\n{r}", s.kind()));
    }
    let label = f.metadata.get("label").cloned().unwrap_or_else(|| input.display().to_string());
    let g = StructureFile::new(s)
        .with("label", format!("{target} of {label}"))
        .with("provenance", format!("prelie2 construct {target}"));
    let text = g.to_canonical_string();
    match out {
        None => Outcome::new(EXIT_OK, text),
        Some(p) => match fs::write(p, text) {
            Ok(()) => Outcome::new(EXIT_OK, format!("wrote {} ({})\n", p.display(), g.structure.kind())),
            Err(e) => Outcome::new(EXIT_SCHEMA, format!("error: cannot write {}: {e}\n", p.display())),
        },
    }
}

/// One line per stage of `S(T(A)) = A` and the `α` checks; stops at the first
/// failing stage.
pub fn roundtrip_stages(f: &StructureFile) -> Result<Vec<String>, (String, Vec<String>)> {
    let Structure::PreLie2(a) = &f.structure else {
        return Err(("input".into(), vec![format!("expected a prelie2 file, found {}", f.structure.kind())]));
    };
    let mut lines = Vec::new();
    let stage = |name: &str, r: ValidationReport, lines: &mut Vec<String>| -> Result<(), (String, Vec<String>)> {
        if r.ok() {
            lines.push(format!("stage {name}: ok"));
            Ok(())
        } else {
            lines.push(format!("stage {name}: FAILED"));
            lines.push(r.to_string());
            Err((name.to_string(), lines.clone()))
        }
    };
    let err = |name: &str, e: Error, lines: &mut Vec<String>| {
        lines.push(format!("stage {name}: FAILED ({e})"));
        (name.to_string(), lines.clone())
    };
    stage("input", a.validate(), &mut lines)?;
    let c = functor_t(a).map_err(|e| err("T", e, &mut lines))?;
    stage("T", c.validate().map_err(|e| err("T", e, &mut lines))?, &mut lines)?;
    let b = functor_s(&c).map_err(|e| err("S", e, &mut lines))?;
    let mut same = ValidationReport::new();
    if &b != a || StructureFile::new(Structure::PreLie2(b.clone())).to_canonical_string()
        != StructureFile::new(Structure::PreLie2(a.clone())).to_canonical_string()
    {
        same.fail("S(T(A)) differs from A", &[]);
    }
    stage("S∘T", same, &mut lines)?;
    let (tsc, al) = alpha(&c).map_err(|e| err("alpha", e, &mut lines))?;
    let mut iso = ValidationReport::new();
    if !al.is_isomorphism() {
        iso.fail("alpha is not invertible", &[]);
    }
    stage("alpha isomorphism", iso, &mut lines)?;
    let hom = validate_cat_hom(&al, &tsc, &c).map_err(|e| err("alpha homomorphism", e, &mut lines))?;
    stage("alpha homomorphism", hom, &mut lines)?;
    Ok(lines)
}

pub fn cmd_roundtrip(path: &Path) -> Outcome {
    let f = match load(path) {
        Ok(f) => f,
        Err(o) => return o,
    };
    match roundtrip_stages(&f) {
        Ok(lines) => Outcome::new(EXIT_OK, lines.join("\n") + "\nroundtrip: ok\n"),
        Err((stage, lines)) => {
            let code = if stage == "input" && !matches!(f.structure, Structure::PreLie2(_)) { EXIT_SCHEMA } else { EXIT_VIOLATION };
            Outcome::new(code, lines.join("\n") + &format!("\nroundtrip: failed at stage {stage}\n"))
        }
    }
}
