//! The in-repo fixture corpus: valid structures, single-constant mutants and
//! schema-broken files, each with its expected exit code.

use std::fs;
use std::path::Path;

use prelie2::crossed::from_strict;
use prelie2::fixtures;
use prelie2::format::{Structure, StructureFile};
use prelie2::lie2::from_prelie2;
use prelie2::o_operator::OOperator;
use prelie2::prelie::{cocycle_from_form, forms::line, PreLieRep};
use prelie2::scalar::{format_rational, int, parse_rational};
use prelie2::ybe::{canonical_solution, o_operator_to_r, solution_from_o_operator};
use prelie2::MultiMap;
use serde_json::Value;

use crate::{cmd_verify, rmatrix, verify_structure, EXIT_OK, EXIT_SCHEMA, EXIT_VIOLATION};

#[derive(Debug, Clone)]
pub struct Entry {
    pub path: String,
    pub text: String,
    pub expected: i32,
    pub note: String,
}

fn file(s: Structure, label: &str, provenance: &str) -> StructureFile {
    StructureFile::new(s).with("label", label).with("provenance", provenance)
}

/// The valid structures, keyed by file stem.
pub fn valid_files() -> Vec<(String, StructureFile)> {
    let a = fixtures::fix_a();
    let o = fixtures::fix_omega_algebra();
    let b = fixtures::fix_b();
    let w = fixtures::fix_omega();
    let mut out: Vec<(String, StructureFile)> = Vec::new();
    let mut push = |stem: &str, s: Structure, label: &str, prov: &str| out.push((stem.to_string(), file(s, label, prov)));

    push("fix-a", Structure::PreLie(a.clone()), "FIX-A", "two-dimensional table");
    push("fix-omega-algebra", Structure::PreLie(o.clone()), "FIX-Omega base algebra", "two-dimensional table");
    push("fix-a-left-rep", Structure::Rep { algebra: a.clone(), rep: a.left_rep() }, "FIX-A with (A; L, R)", "left_rep");
    push("fix-a-dual-rep", Structure::Rep { algebra: a.clone(), rep: a.dual_rep() }, "FIX-A with its dual rep", "dual_rep");
    push(
        "fix-omega-dual-rep",
        Structure::Rep { algebra: o.clone(), rep: o.dual_rep() },
        "FIX-Omega base with its dual rep",
        "dual_rep",
    );
    push("fix-b", Structure::PreLie2(b.clone()), "FIX-B", "strict, d f = e2, e1.f = f");
    push("fix-omega", Structure::PreLie2(w.clone()), "FIX-Omega", "skeletal_from_form");
    for (name, s) in fixtures::derived_prelie2() {
        let stem = name.to_lowercase();
        push(&stem, Structure::PreLie2(s), name, "derived fixture");
    }
    push("fix-b-lie2", Structure::Lie2(from_prelie2(&b).unwrap().0), "Lie 2-algebra of FIX-B", "from_prelie2");
    push("fix-omega-lie2", Structure::Lie2(from_prelie2(&w).unwrap().0), "Lie 2-algebra of FIX-Omega", "from_prelie2");
    push("ideal-cm", Structure::CrossedModule(fixtures::ideal_cm()), "ideal span{e2} of FIX-A", "ideal_crossed_module");
    push("fix-b-crossed", Structure::CrossedModule(from_strict(&b).unwrap()), "crossed module of FIX-B", "from_strict");

    let id_b = OOperator::identity(&b).unwrap();
    let mut nonzero = id_b.clone();
    nonzero.t0 = MultiMap::linear(&b.a0, &b.a0, &[vec![int(1), int(1)], vec![int(0), int(1)]]);
    let (g_w, rep_w) = from_prelie2(&w).unwrap();
    push("o-identity-fix-b", Structure::OOperator(id_b.clone()), "(id, id, 0) on FIX-B", "OOperator::identity");
    push("o-nonzero-fix-b", Structure::OOperator(nonzero.clone()), "T0 = e1 -> e1+e2, e2 -> e2 on FIX-B", "hand-built");
    push("o-identity-fix-omega", Structure::OOperator(OOperator::identity(&w).unwrap()), "(id, id, 0) on FIX-Omega", "OOperator::identity");
    push("o-zero-fix-omega", Structure::OOperator(OOperator::zero(g_w, rep_w)), "zero O-operator on FIX-Omega", "OOperator::zero");

    let sol = canonical_solution(&b).unwrap();
    push("rmatrix-fix-b", rmatrix(sol.algebra, sol.r.coeffs, sol.frkr).unwrap(), "canonical solution of FIX-B", "canonical_solution");
    let sol = solution_from_o_operator(&nonzero.t0, &nonzero.t1, &nonzero.g, &nonzero.rep).unwrap();
    push("rmatrix-o-nonzero", rmatrix(sol.algebra, sol.r.coeffs, sol.frkr).unwrap(), "solution of o-nonzero-fix-b", "solution_from_o_operator");
    let (g, r) = o_operator_to_r(&a.commutator_algebra(), &a.left_lie_rep(), &MultiMap::identity(&a.space)).unwrap();
    push(
        "rmatrix-fix-a",
        rmatrix(prelie2::lie2::Lie2Algebra::from_lie(&g), r.coeffs, Vec::new()).unwrap(),
        "ungraded canonical r of FIX-A",
        "o_operator_to_r",
    );
    push(
        "cochain-fix-omega",
        Structure::Cochain {
            cochain: cocycle_from_form(&o, &fixtures::fix_omega_form()).unwrap(),
            rep: PreLieRep::zero(&o, line()),
            algebra: o.clone(),
        },
        "3-cocycle of the FIX-Omega form",
        "cocycle_from_form",
    );
    push("complex-fix-b", Structure::Complex(b.complex()), "complex of FIX-B", "complex");
    out
}

/// Paths `(tensor, index path)` to every rational leaf, in file order.
fn leaves(v: &Value) -> Vec<(String, Vec<usize>)> {
    fn walk(v: &Value, path: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        match v {
            Value::Array(a) => {
                for (i, x) in a.iter().enumerate() {
                    path.push(i);
                    walk(x, path, out);
                    path.pop();
                }
            }
            Value::String(_) => out.push(path.clone()),
            _ => {}
        }
    }
    let mut out = Vec::new();
    if let Some(t) = v["tensors"].as_object() {
        for (name, x) in t {
            let mut paths = Vec::new();
            walk(x, &mut Vec::new(), &mut paths);
            out.extend(paths.into_iter().map(|p| (name.clone(), p)));
        }
    }
    out
}

fn leaf_mut<'a>(v: &'a mut Value, name: &str, path: &[usize]) -> &'a mut Value {
    let mut x = &mut v["tensors"][name];
    for &i in path {
        x = &mut x[i];
    }
    x
}

/// Every single-constant `+1` mutant of a file, as `(description, file)`.
pub fn mutants(f: &StructureFile) -> Vec<(String, StructureFile)> {
    let v = f.to_value();
    leaves(&v)
        .into_iter()
        .map(|(name, path)| {
            let mut m = v.clone();
            let leaf = leaf_mut(&mut m, &name, &path);
            let x = parse_rational(leaf.as_str().unwrap()).unwrap() + int(1);
            *leaf = Value::String(format_rational(&x));
            let parsed = StructureFile::parse(&m.to_string()).expect("a mutant keeps the schema");
            (format!("{name}{path:?} += 1"), parsed)
        })
        .collect()
}

/// The first mutant (optionally restricted to one tensor) that fails
/// verification, with the conditions it breaks.
pub fn first_failing_mutant(f: &StructureFile, tensor: Option<&str>) -> Option<(String, StructureFile, String)> {
    mutants(f)
        .into_iter()
        .filter(|(d, _)| tensor.is_none_or(|t| d.starts_with(&format!("{t}["))))
        .find_map(|(d, m)| match verify_structure(&m.structure, false) {
            Ok(r) if !r.ok() => Some((d, m, r.conditions().join("; "))),
            Err(e) => Some((d, m, e.to_string())),
            _ => None,
        })
}

fn schema_files(b: &StructureFile) -> Vec<(&'static str, String, String)> {
    let v = b.to_value();
    let mut bad_rational = v.clone();
    bad_rational["tensors"]["mul00"][0][0][0] = Value::String("1/0".into());
    let mut unknown = v.clone();
    unknown["kind"] = Value::String("prelie3".into());
    let mut shape = v.clone();
    shape["dims"]["A0"] = Value::from(3);
    let mut missing = v.clone();
    missing["tensors"].as_object_mut().unwrap().remove("l3");
    let mut not_a_number = v;
    not_a_number["tensors"]["d"][0][0] = Value::from(1);
    vec![
        ("bad-rational", bad_rational.to_string(), "FIX-B with the constant \"1/0\"".into()),
        ("unknown-kind", unknown.to_string(), "kind \"prelie3\"".into()),
        ("shape-mismatch", shape.to_string(), "dims.A0 = 3 with 2-dimensional tensors".into()),
        ("missing-tensor", missing.to_string(), "no l3 tensor".into()),
        ("bare-number", not_a_number.to_string(), "a constant given as a JSON number".into()),
        ("not-json", "{\"kind\": \"prelie2\",".into(), "truncated document".into()),
    ]
}

pub fn corpus() -> Vec<Entry> {
    let valid = valid_files();
    let mut out = Vec::new();
    for (stem, f) in &valid {
        out.push(Entry {
            path: format!("valid/{stem}.json"),
            text: f.to_canonical_string(),
            expected: EXIT_OK,
            note: f.metadata["label"].clone(),
        });
    }
    for (stem, f) in &valid {
        let focus = match f.structure.kind() {
            "o_operator" => Some("t0"),
            "rmatrix" => Some("r"),
            "cochain" => Some("omega"),
            _ => None,
        };
        if let Some((desc, m, why)) = first_failing_mutant(f, focus).or_else(|| first_failing_mutant(f, None)) {
            let m = m.with("label", format!("{} with {desc}", f.metadata["label"])).with("provenance", "single-constant mutant");
            out.push(Entry {
                path: format!("invalid/{stem}-mutant.json"),
                text: m.to_canonical_string(),
                expected: EXIT_VIOLATION,
                note: format!("{desc}: {why}"),
            });
        }
    }
    let get = |stem: &str| valid.iter().find(|(s, _)| s == stem).map(|(_, f)| f.clone()).unwrap();
    let (desc, m, why) = first_failing_mutant(&get("fix-omega"), Some("l3")).expect("l3 has a failing mutant");
    out.push(Entry {
        path: "invalid/fix-omega-bad-l3.json".into(),
        text: m.with("label", format!("FIX-Omega with {desc}")).with("provenance", "corrupted l3").to_canonical_string(),
        expected: EXIT_VIOLATION,
        note: format!("{desc}: {why}"),
    });
    let Structure::OOperator(id_b) = get("o-identity-fix-b").structure else { unreachable!() };
    let mut doubled = id_b.clone();
    doubled.t0 = doubled.t0.scaled(&int(2));
    let mut with_t2 = id_b;
    with_t2.t2.image_mut(&[0, 1])[0] = int(1);
    with_t2.t2.image_mut(&[1, 0])[0] = int(-1);
    for (stem, o, label) in [
        ("o-doubled-t0-fix-b", doubled, "(2 id, id, 0) on FIX-B"),
        ("o-nonzero-t2-fix-b", with_t2, "(id, id, T2) with T2(e1,e2) = f on FIX-B"),
    ] {
        let why = verify_structure(&Structure::OOperator(o.clone()), false).unwrap().conditions().join("; ");
        out.push(Entry {
            path: format!("invalid/{stem}.json"),
            text: file(Structure::OOperator(o), label, "hand-built").to_canonical_string(),
            expected: EXIT_VIOLATION,
            note: why,
        });
    }
    for (stem, text, note) in schema_files(&get("fix-b")) {
        out.push(Entry {
            path: format!("schema/{stem}.json"),
            text,
            expected: EXIT_SCHEMA,
            note,
        });
    }
    out
}

/// Writes the corpus, a manifest of expected exit codes and a transcript of
/// verifying every file; errors if any file's exit code is unexpected.
pub fn write_corpus(dir: &Path) -> std::io::Result<(String, bool)> {
    let entries = corpus();
    let mut manifest = serde_json::Map::new();
    let mut transcript = String::from("# Fixture corpus transcript\n\nGenerated by `prelie2 fixtures`. Each line is `prelie2 verify <file>` with its exit code.\n\n");
    let mut all_ok = true;
    for e in &entries {
        let p = dir.join(&e.path);
        fs::create_dir_all(p.parent().expect("relative path"))?;
        fs::write(&p, &e.text)?;
        let got = cmd_verify(&p, false).code;
        all_ok &= got == e.expected;
        transcript.push_str(&format!(
            "- `{}`: exit {got} (expected {}){} {}\n",
            e.path,
            e.expected,
            if got == e.expected { "" } else { " MISMATCH" },
            e.note
        ));
        manifest.insert(e.path.clone(), serde_json::json!({"expected_exit": e.expected, "note": e.note}));
    }
    fs::write(dir.join("manifest.json"), serde_json::to_string_pretty(&Value::Object(manifest)).expect("json") + "\n")?;
    fs::write(dir.join("TRANSCRIPT.md"), &transcript)?;
    Ok((transcript, all_ok))
}
