//! The structure-constants file format.
//!
//! A file is one JSON object with keys `kind`, `dims` (role → dimension),
//! `labels` (role → space label, optional on input), `params` (optional
//! integers), `metadata` (strings) and `tensors` (name → nested arrays of
//! rational strings). A multilinear map `V₁ ⊗ … ⊗ V_k → W` is nested as
//! `[i₁][i₂]…[i_k]` with the image vector innermost; a 2-tensor is a matrix
//! `[i][j]`. Canonical output sorts keys, reduces fractions and prints each
//! innermost vector on one line.

use std::collections::BTreeMap;

use serde_json::{Map, Value};

use crate::crossed::PreLieCrossedModule;
use crate::error::{Error, Result};
use crate::graded::TwoTermComplex;
use crate::lie2::{Lie2Algebra, Lie2Rep};
use crate::linalg::Matrix;
use crate::o_operator::OOperator;
use crate::prelie::{Cochain, PreLieAlgebra, PreLieRep};
use crate::prelie2::PreLie2Algebra;
use crate::scalar::{format_rational, parse_rational};
use crate::tensor::{MultiMap, Space};
use crate::ybe::Tensor2;

pub const KINDS: [&str; 9] = [
    "prelie",
    "rep",
    "prelie2",
    "lie2",
    "crossed_module",
    "o_operator",
    "rmatrix",
    "cochain",
    "complex",
];

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Structure {
    PreLie(PreLieAlgebra),
    Rep {
        algebra: PreLieAlgebra,
        rep: PreLieRep,
    },
    PreLie2(PreLie2Algebra),
    Lie2(Lie2Algebra),
    CrossedModule(PreLieCrossedModule),
    OOperator(OOperator),
    /// `r` on the flattened `g₀ ⊕ g₁` and `𝔯` on `g₁ ⊗ g₁`. With `g₁ = 0`
    /// this is an ordinary r-matrix in the Lie algebra `g₀`.
    RMatrix {
        algebra: Lie2Algebra,
        r: Tensor2,
        frkr: Matrix,
    },
    Cochain {
        algebra: PreLieAlgebra,
        rep: PreLieRep,
        cochain: Cochain,
    },
    Complex(TwoTermComplex),
}

impl Structure {
    pub fn kind(&self) -> &'static str {
        match self {
            Structure::PreLie(_) => "prelie",
            Structure::Rep { .. } => "rep",
            Structure::PreLie2(_) => "prelie2",
            Structure::Lie2(_) => "lie2",
            Structure::CrossedModule(_) => "crossed_module",
            Structure::OOperator(_) => "o_operator",
            Structure::RMatrix { .. } => "rmatrix",
            Structure::Cochain { .. } => "cochain",
            Structure::Complex(_) => "complex",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StructureFile {
    pub structure: Structure,
    pub metadata: BTreeMap<String, String>,
}

impl StructureFile {
    pub fn new(structure: Structure) -> Self {
        StructureFile {
            structure,
            metadata: BTreeMap::new(),
        }
    }

    pub fn with(mut self, key: &str, value: impl Into<String>) -> Self {
        self.metadata.insert(key.to_string(), value.into());
        self
    }

    pub fn parse(text: &str) -> Result<Self> {
        let v: Value = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        from_value(&v)
    }

    pub fn to_value(&self) -> Value {
        let mut doc = Doc::default();
        write_structure(&mut doc, &self.structure);
        let mut obj = Map::new();
        obj.insert("kind".into(), Value::String(self.structure.kind().into()));
        obj.insert(
            "dims".into(),
            Value::Object(doc.spaces.iter().map(|(k, s)| (k.clone(), Value::from(s.dim))).collect()),
        );
        obj.insert(
            "labels".into(),
            Value::Object(doc.spaces.iter().map(|(k, s)| (k.clone(), Value::String(s.label.clone()))).collect()),
        );
        if !doc.params.is_empty() {
            obj.insert(
                "params".into(),
                Value::Object(doc.params.into_iter().map(|(k, n)| (k, Value::from(n))).collect()),
            );
        }
        obj.insert(
            "metadata".into(),
            Value::Object(self.metadata.iter().map(|(k, s)| (k.clone(), Value::String(s.clone()))).collect()),
        );
        obj.insert("tensors".into(), Value::Object(doc.tensors.into_iter().collect()));
        Value::Object(obj)
    }

    /// Canonical text, ending in a newline.
    pub fn to_canonical_string(&self) -> String {
        let mut out = String::new();
        write_value(&mut out, &self.to_value(), 0);
        out.push('\n');
        out
    }
}

fn write_value(out: &mut String, v: &Value, indent: usize) {
    let pad = |n: usize| "  ".repeat(n);
    match v {
        Value::Object(m) if m.is_empty() => out.push_str("{}"),
        Value::Object(m) => {
            out.push_str("{\n");
            for (i, (k, x)) in m.iter().enumerate() {
                out.push_str(&pad(indent + 1));
                out.push_str(&Value::String(k.clone()).to_string());
                out.push_str(": ");
                write_value(out, x, indent + 1);
                out.push_str(if i + 1 < m.len() { ",\n" } else { "\n" });
            }
            out.push_str(&pad(indent));
            out.push('}');
        }
        Value::Array(a) if a.iter().all(|x| !x.is_array() && !x.is_object()) => {
            let items: Vec<String> = a.iter().map(Value::to_string).collect();
            out.push('[');
            out.push_str(&items.join(", "));
            out.push(']');
        }
        Value::Array(a) => {
            out.push_str("[\n");
            for (i, x) in a.iter().enumerate() {
                out.push_str(&pad(indent + 1));
                write_value(out, x, indent + 1);
                out.push_str(if i + 1 < a.len() { ",\n" } else { "\n" });
            }
            out.push_str(&pad(indent));
            out.push(']');
        }
        other => out.push_str(&other.to_string()),
    }
}

#[derive(Default)]
struct Doc {
    spaces: BTreeMap<String, Space>,
    params: BTreeMap<String, usize>,
    tensors: BTreeMap<String, Value>,
}

impl Doc {
    fn space(&mut self, role: &str, s: &Space) {
        self.spaces.insert(role.into(), s.clone());
    }

    fn map(&mut self, name: &str, m: &MultiMap) {
        self.tensors.insert(name.into(), map_to_value(m));
    }

    fn matrix(&mut self, name: &str, m: &Matrix) {
        let rows = m
            .iter()
            .map(|r| Value::Array(r.iter().map(|x| Value::String(format_rational(x))).collect()))
            .collect();
        self.tensors.insert(name.into(), Value::Array(rows));
    }
}

fn map_to_value(m: &MultiMap) -> Value {
    fn build(m: &MultiMap, prefix: &mut Vec<usize>) -> Value {
        if prefix.len() == m.arity() {
            return Value::Array(m.image(prefix).iter().map(|x| Value::String(format_rational(x))).collect());
        }
        let n = m.inputs()[prefix.len()].dim;
        let items = (0..n)
            .map(|i| {
                prefix.push(i);
                let v = build(m, prefix);
                prefix.pop();
                v
            })
            .collect();
        Value::Array(items)
    }
    build(m, &mut Vec::new())
}

fn write_lie2(doc: &mut Doc, g: &Lie2Algebra, d_name: &str) {
    doc.space("g0", &g.g0);
    doc.space("g1", &g.g1);
    doc.map(d_name, &g.d);
    doc.map("l2_00", &g.l2_00);
    doc.map("l2_01", &g.l2_01);
    doc.map("l3", &g.l3);
}

fn write_structure(doc: &mut Doc, s: &Structure) {
    match s {
        Structure::PreLie(a) => {
            doc.space("A", &a.space);
            doc.map("mul", &a.mul);
        }
        Structure::Rep { algebra, rep } => {
            doc.space("A", &algebra.space);
            doc.space("V", &rep.space);
            doc.map("mul", &algebra.mul);
            doc.map("rho", &rep.rho);
            doc.map("mu", &rep.mu);
        }
        Structure::PreLie2(a) => {
            doc.space("A0", &a.a0);
            doc.space("A1", &a.a1);
            for (name, m) in a.tensors() {
                doc.map(name, m);
            }
        }
        Structure::Lie2(g) => write_lie2(doc, g, "d"),
        Structure::CrossedModule(cm) => {
            doc.space("A0", &cm.a0.space);
            doc.space("A1", &cm.a1.space);
            doc.map("mul0", &cm.a0.mul);
            doc.map("mul1", &cm.a1.mul);
            doc.map("d", &cm.d);
            doc.map("rho", &cm.rho);
            doc.map("mu", &cm.mu);
        }
        Structure::OOperator(o) => {
            write_lie2(doc, &o.g, "g_d");
            doc.space("V0", &o.rep.complex.v0);
            doc.space("V1", &o.rep.complex.v1);
            doc.map("v_d", &o.rep.complex.d);
            doc.map("rho0_v0", &o.rep.rho0_v0);
            doc.map("rho0_v1", &o.rep.rho0_v1);
            doc.map("rho1", &o.rep.rho1);
            doc.map("rho2", &o.rep.rho2);
            doc.map("t0", &o.t0);
            doc.map("t1", &o.t1);
            doc.map("t2", &o.t2);
        }
        Structure::RMatrix { algebra, r, frkr } => {
            write_lie2(doc, algebra, "d");
            doc.matrix("r", &r.coeffs);
            doc.matrix("frkr", frkr);
        }
        Structure::Cochain { algebra, rep, cochain } => {
            doc.space("A", &algebra.space);
            doc.space("V", &rep.space);
            doc.params.insert("arity".into(), cochain.n);
            doc.map("mul", &algebra.mul);
            doc.map("rho", &rep.rho);
            doc.map("mu", &rep.mu);
            doc.map("omega", &cochain.map);
        }
        Structure::Complex(c) => {
            doc.space("V0", &c.v0);
            doc.space("V1", &c.v1);
            doc.map("d", &c.d);
        }
    }
}

fn schema(msg: impl Into<String>) -> Error {
    Error::Schema(msg.into())
}

struct Reader<'a> {
    spaces: BTreeMap<String, Space>,
    params: BTreeMap<String, usize>,
    tensors: &'a Map<String, Value>,
}

impl Reader<'_> {
    fn space(&self, role: &str) -> Result<Space> {
        self.spaces.get(role).cloned().ok_or_else(|| schema(format!("missing dimension {role:?}")))
    }

    fn tensor(&self, name: &str) -> Result<&Value> {
        self.tensors.get(name).ok_or_else(|| schema(format!("missing tensor {name:?}")))
    }

    fn map(&self, name: &str, inputs: &[&str], output: &str) -> Result<MultiMap> {
        let ins = inputs.iter().map(|r| self.space(r)).collect::<Result<Vec<_>>>()?;
        let out = self.space(output)?;
        self.map_spaces(name, ins, out)
    }

    fn map_spaces(&self, name: &str, inputs: Vec<Space>, output: Space) -> Result<MultiMap> {
        let mut shape: Vec<usize> = inputs.iter().map(|s| s.dim).collect();
        shape.push(output.dim);
        let v = self.tensor(name)?;
        let mut coeffs = Vec::new();
        read_nested(v, &shape, name, &mut coeffs)?;
        MultiMap::from_coeffs(inputs, output, coeffs)
    }

    fn matrix(&self, name: &str, n: usize, m: usize) -> Result<Matrix> {
        let mut coeffs = Vec::new();
        read_nested(self.tensor(name)?, &[n, m], name, &mut coeffs)?;
        Ok((0..n).map(|i| coeffs[i * m..(i + 1) * m].to_vec()).collect())
    }

    fn lie2(&self, d_name: &str) -> Result<Lie2Algebra> {
        Lie2Algebra::new(
            self.space("g0")?,
            self.space("g1")?,
            self.map(d_name, &["g1"], "g0")?,
            self.map("l2_00", &["g0", "g0"], "g0")?,
            self.map("l2_01", &["g0", "g1"], "g1")?,
            self.map("l3", &["g0", "g0", "g0"], "g1")?,
        )
    }

    fn prelie(&self, role: &str, name: &str) -> Result<PreLieAlgebra> {
        PreLieAlgebra::new(self.space(role)?, self.map(name, &[role, role], role)?)
    }

    fn pre_rep(&self) -> Result<(PreLieAlgebra, PreLieRep)> {
        let a = self.prelie("A", "mul")?;
        let rep = PreLieRep::new(&a, self.space("V")?, self.map("rho", &["A", "V"], "V")?, self.map("mu", &["A", "V"], "V")?)?;
        Ok((a, rep))
    }
}

fn read_nested(v: &Value, shape: &[usize], name: &str, out: &mut Vec<crate::Rational>) -> Result<()> {
    let arr = v.as_array().ok_or_else(|| schema(format!("tensor {name:?}: expected an array")))?;
    if arr.len() != shape[0] {
        return Err(schema(format!("tensor {name:?}: expected length {}, found {}", shape[0], arr.len())));
    }
    if shape.len() == 1 {
        for x in arr {
            let s = x
                .as_str()
                .ok_or_else(|| schema(format!("tensor {name:?}: entries must be rational strings")))?;
            out.push(parse_rational(s)?);
        }
        return Ok(());
    }
    for x in arr {
        read_nested(x, &shape[1..], name, out)?;
    }
    Ok(())
}

fn string_map(v: Option<&Value>, what: &str) -> Result<BTreeMap<String, String>> {
    let Some(v) = v else {
        return Ok(BTreeMap::new());
    };
    let obj = v.as_object().ok_or_else(|| schema(format!("{what} must be an object")))?;
    obj.iter()
        .map(|(k, x)| {
            x.as_str()
                .map(|s| (k.clone(), s.to_string()))
                .ok_or_else(|| schema(format!("{what}.{k} must be a string")))
        })
        .collect()
}

fn usize_map(v: Option<&Value>, what: &str) -> Result<BTreeMap<String, usize>> {
    let Some(v) = v else {
        return Ok(BTreeMap::new());
    };
    let obj = v.as_object().ok_or_else(|| schema(format!("{what} must be an object")))?;
    obj.iter()
        .map(|(k, x)| {
            x.as_u64()
                .map(|n| (k.clone(), n as usize))
                .ok_or_else(|| schema(format!("{what}.{k} must be a non-negative integer")))
        })
        .collect()
}

const ROLES: [(&str, &[&str]); 9] = [
    ("prelie", &["A"]),
    ("rep", &["A", "V"]),
    ("prelie2", &["A0", "A1"]),
    ("lie2", &["g0", "g1"]),
    ("crossed_module", &["A0", "A1"]),
    ("o_operator", &["g0", "g1", "V0", "V1"]),
    ("rmatrix", &["g0", "g1"]),
    ("cochain", &["A", "V"]),
    ("complex", &["V0", "V1"]),
];

fn from_value(v: &Value) -> Result<StructureFile> {
    let obj = v.as_object().ok_or_else(|| schema("top level must be an object"))?;
    for k in obj.keys() {
        if !["kind", "dims", "labels", "params", "metadata", "tensors"].contains(&k.as_str()) {
            return Err(schema(format!("unknown key {k:?}")));
        }
    }
    let kind = obj
        .get("kind")
        .and_then(Value::as_str)
        .ok_or_else(|| schema("missing string field \"kind\""))?;
    let roles = ROLES
        .iter()
        .find(|(k, _)| *k == kind)
        .map(|(_, r)| *r)
        .ok_or_else(|| schema(format!("unknown kind {kind:?}")))?;
    let dims = usize_map(obj.get("dims"), "dims")?;
    let labels = string_map(obj.get("labels"), "labels")?;
    for k in dims.keys().chain(labels.keys()) {
        if !roles.contains(&k.as_str()) {
            return Err(schema(format!("unexpected space {k:?} for kind {kind:?}")));
        }
    }
    let mut spaces = BTreeMap::new();
    for role in roles {
        let dim = *dims.get(*role).ok_or_else(|| schema(format!("missing dimension {role:?}")))?;
        let label = labels.get(*role).cloned().unwrap_or_else(|| role.to_string());
        spaces.insert(role.to_string(), Space::new(label, dim));
    }
    let empty = Map::new();
    let tensors = match obj.get("tensors") {
        Some(t) => t.as_object().ok_or_else(|| schema("tensors must be an object"))?,
        None => &empty,
    };
    let r = Reader {
        spaces,
        params: usize_map(obj.get("params"), "params")?,
        tensors,
    };
    let structure = read_structure(kind, &r)?;
    let mut doc = Doc::default();
    write_structure(&mut doc, &structure);
    if let Some(extra) = tensors.keys().find(|k| !doc.tensors.contains_key(*k)) {
        return Err(schema(format!("unexpected tensor {extra:?} for kind {kind:?}")));
    }
    Ok(StructureFile {
        structure,
        metadata: string_map(obj.get("metadata"), "metadata")?,
    })
}

fn read_structure(kind: &str, r: &Reader) -> Result<Structure> {
    Ok(match kind {
        "prelie" => Structure::PreLie(r.prelie("A", "mul")?),
        "rep" => {
            let (algebra, rep) = r.pre_rep()?;
            Structure::Rep { algebra, rep }
        }
        "prelie2" => Structure::PreLie2(PreLie2Algebra::new(
            r.space("A0")?,
            r.space("A1")?,
            r.map("d", &["A1"], "A0")?,
            r.map("mul00", &["A0", "A0"], "A0")?,
            r.map("mul01", &["A0", "A1"], "A1")?,
            r.map("mul10", &["A1", "A0"], "A1")?,
            r.map("l3", &["A0", "A0", "A0"], "A1")?,
        )?),
        "lie2" => Structure::Lie2(r.lie2("d")?),
        "crossed_module" => Structure::CrossedModule(PreLieCrossedModule::new(
            r.prelie("A0", "mul0")?,
            r.prelie("A1", "mul1")?,
            r.map("d", &["A1"], "A0")?,
            r.map("rho", &["A0", "A1"], "A1")?,
            r.map("mu", &["A0", "A1"], "A1")?,
        )?),
        "o_operator" => {
            let g = r.lie2("g_d")?;
            let complex = TwoTermComplex::new(r.space("V0")?, r.space("V1")?, r.map("v_d", &["V1"], "V0")?)?;
            let rep = Lie2Rep {
                complex,
                rho0_v0: r.map("rho0_v0", &["g0", "V0"], "V0")?,
                rho0_v1: r.map("rho0_v1", &["g0", "V1"], "V1")?,
                rho1: r.map("rho1", &["g1", "V0"], "V1")?,
                rho2: r.map("rho2", &["g0", "g0", "V0"], "V1")?,
            };
            Structure::OOperator(OOperator::new(
                g,
                rep,
                r.map("t0", &["V0"], "g0")?,
                r.map("t1", &["V1"], "g1")?,
                r.map("t2", &["V0", "V0"], "g1")?,
            )?)
        }
        "rmatrix" => {
            let algebra = r.lie2("d")?;
            let (n0, n1) = (algebra.g0.dim, algebra.g1.dim);
            let space = algebra.g0.direct_sum(&algebra.g1);
            let coeffs = r.matrix("r", n0 + n1, n0 + n1)?;
            let frkr = r.matrix("frkr", n1, n1)?;
            Structure::RMatrix {
                r: Tensor2::graded(space, n0, coeffs)?,
                frkr,
                algebra,
            }
        }
        "cochain" => {
            let (algebra, rep) = r.pre_rep()?;
            let n = *r.params.get("arity").ok_or_else(|| schema("cochain needs params.arity"))?;
            if n == 0 {
                return Err(schema("cochain arity must be positive"));
            }
            let map = r.map_spaces("omega", vec![algebra.space.clone(); n], rep.space.clone())?;
            Structure::Cochain {
                algebra,
                rep,
                cochain: Cochain::new(map),
            }
        }
        "complex" => Structure::Complex(TwoTermComplex::new(r.space("V0")?, r.space("V1")?, r.map("d", &["V1"], "V0")?)?),
        other => return Err(schema(format!("unknown kind {other:?}"))),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    fn roundtrip(s: Structure) {
        let f = StructureFile::new(s).with("label", "test");
        let text = f.to_canonical_string();
        let back = StructureFile::parse(&text).unwrap();
        assert_eq!(back.to_canonical_string(), text);
        assert_eq!(back, f);
    }

    #[test]
    fn prelie2_fixture_roundtrips() {
        for (_, a) in fixtures::all_prelie2() {
            roundtrip(Structure::PreLie2(a));
        }
    }

    #[test]
    fn every_kind_roundtrips() {
        use crate::prelie::cocycle_from_form;
        let a = fixtures::fix_a();
        let o = fixtures::fix_omega_algebra();
        let b = fixtures::fix_b();
        let sol = crate::ybe::canonical_solution(&b).unwrap();
        let (g, rep) = crate::lie2::from_prelie2(&b).unwrap();
        let dual = o.dual_rep();
        roundtrip(Structure::PreLie(a.clone()));
        roundtrip(Structure::Rep {
            algebra: a.clone(),
            rep: a.left_rep(),
        });
        roundtrip(Structure::Lie2(g.clone()));
        roundtrip(Structure::CrossedModule(fixtures::ideal_cm()));
        roundtrip(Structure::OOperator(crate::o_operator::OOperator::identity(&b).unwrap()));
        roundtrip(Structure::OOperator(crate::o_operator::OOperator::zero(g, rep)));
        roundtrip(Structure::RMatrix {
            algebra: sol.algebra,
            r: sol.r,
            frkr: sol.frkr,
        });
        roundtrip(Structure::Cochain {
            cochain: cocycle_from_form(&o, &fixtures::fix_omega_form()).unwrap(),
            algebra: o.clone(),
            rep: PreLieRep::zero(&o, crate::prelie::forms::line()),
        });
        roundtrip(Structure::Rep { algebra: o, rep: dual });
        roundtrip(Structure::Complex(b.complex()));
    }

    #[test]
    fn layout_is_basis_images() {
        let text = StructureFile::new(Structure::PreLie2(fixtures::fix_b())).to_canonical_string();
        // d f = e₂
        assert!(text.contains("\"d\": [\n      [\"0\", \"1\"]\n    ]"), "{text}");
        let v: Value = serde_json::from_str(&text).unwrap();
        assert_eq!(v["dims"]["A0"], 2);
        assert_eq!(v["tensors"]["mul00"][0][1], serde_json::json!(["0", "1"]));
    }

    #[test]
    fn bad_rational_is_a_parse_error() {
        let mut v = StructureFile::new(Structure::PreLie(fixtures::fix_a())).to_value();
        v["tensors"]["mul"][0][0][0] = Value::String("1/0".into());
        assert!(matches!(StructureFile::parse(&v.to_string()), Err(Error::Parse(_))));
    }

    #[test]
    fn shape_mismatch_is_a_schema_error() {
        let mut v = StructureFile::new(Structure::PreLie(fixtures::fix_a())).to_value();
        v["dims"]["A"] = Value::from(3);
        assert!(matches!(StructureFile::parse(&v.to_string()), Err(Error::Schema(_))));
        let mut v = StructureFile::new(Structure::PreLie(fixtures::fix_a())).to_value();
        v["kind"] = Value::String("bogus".into());
        assert!(matches!(StructureFile::parse(&v.to_string()), Err(Error::Schema(_))));
    }

    #[test]
    fn labels_default_to_roles() {
        let text = r#"{"kind": "prelie", "dims": {"A": 1}, "tensors": {"mul": [[["2/4"]]]}}"#;
        let f = StructureFile::parse(text).unwrap();
        let Structure::PreLie(a) = &f.structure else { panic!() };
        assert_eq!(a.space.label, "A");
        assert!(f.to_canonical_string().contains("\"1/2\""));
    }
}
