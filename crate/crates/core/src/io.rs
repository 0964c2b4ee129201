//! Problem files and result serialization.
//!
//! A problem file is a JSON object:
//!
//! ```json
//! {
//!   "field": "Q",
//!   "quiver": {"vertices": ["1", "2"], "arrows": [{"name": "a", "from": "1", "to": "2"}]},
//!   "relations": [{"paths": [["b", "a"]], "coeffs": ["1"]}],
//!   "modules": {
//!     "S1": {"kind": "S", "vertex": "1", "shift": 0},
//!     "M": {"window": [0, 1], "dims": {"(0,1)": 1, "(1,2)": 1}, "maps": {"a@0": [["1"]]}}
//!   },
//!   "assume": {"locally_bounded": true},
//!   "tasks": [{"name": "seq", "command": "ars", "args": {"module": "S1", "direction": "ending"}}]
//! }
//! ```
//!
//! Paths are arrow names in written order (`["b", "a"]` is `b` after `a`).
//! Canonical output sorts keys and writes scalars as strings.

use std::collections::BTreeMap;
use std::path::Path as FsPath;

use serde::{Deserialize, Serialize};
use serde_json::{json, Map, Value};

use crate::algebra::{AlgElement, GradedAlgebra, Relation};
use crate::error::{Error, Result};
use crate::exactla::{Field, Matrix, Scalar};
use crate::gmodule::{Edge, GradedModule, Morphism};
use crate::presentations::PMap;
use crate::quiver::Quiver;

/// Commands a task may name.
pub const COMMANDS: &[&str] = &[
    "validate",
    "dims",
    "hom",
    "ext1",
    "rad",
    "top",
    "soc",
    "cover",
    "envelope",
    "present",
    "copresent",
    "transpose",
    "nakayama",
    "tau",
    "tau-inv",
    "ars",
    "verify-ars",
    "ar-formula",
    "pd",
    "criteria",
    "analyze-quiver",
];

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum StandardKind {
    P,
    I,
    S,
}

/// `P_a⟨s⟩`, `I_a⟨s⟩` or `S_a⟨s⟩`, optionally on a window.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StandardModule {
    pub kind: StandardKind,
    pub vertex: String,
    #[serde(default)]
    pub shift: i64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub window: Option<(i64, i64)>,
}

#[derive(Clone, Debug)]
pub enum ModuleSpec {
    Standard(StandardModule),
    Data(GradedModule),
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Task {
    pub name: String,
    pub command: String,
    #[serde(default)]
    pub args: BTreeMap<String, Value>,
}

#[derive(Clone, Debug)]
pub struct Problem {
    pub algebra: GradedAlgebra,
    pub modules: BTreeMap<String, ModuleSpec>,
    /// User assertions the engine cannot certify, e.g. `locally_bounded`.
    pub assume: BTreeMap<String, bool>,
    pub tasks: Vec<Task>,
}

impl Problem {
    pub fn new(algebra: GradedAlgebra) -> Problem {
        Problem { algebra, modules: BTreeMap::new(), assume: BTreeMap::new(), tasks: Vec::new() }
    }

    pub fn assumes(&self, flag: &str) -> bool {
        self.assume.get(flag).copied().unwrap_or(false)
    }

    /// Realize a named module.
    pub fn module(&self, name: &str) -> Result<GradedModule> {
        let spec = self.modules.get(name).ok_or_else(|| Error::parse(format!("modules.{name}"), "no such module"))?;
        build_module(&self.algebra, spec)
    }

    pub fn from_str(text: &str) -> Result<Problem> {
        let v: Value = serde_json::from_str(text)
            .map_err(|e| Error::parse(format!("line {} column {}", e.line(), e.column()), e.to_string()))?;
        parse_problem(&v)
    }

    pub fn load(path: impl AsRef<FsPath>) -> Result<Problem> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path)?;
        Problem::from_str(&text).map_err(|e| match e {
            Error::Parse { at, msg } => Error::parse(format!("{}: {at}", path.display()), msg),
            other => other,
        })
    }

    pub fn to_json(&self) -> Value {
        let mut top = Map::new();
        top.insert("field".into(), json!(self.algebra.field().tag()));
        top.insert("quiver".into(), self.algebra.quiver().to_json());
        top.insert("relations".into(), relations_to_json(&self.algebra));
        if !self.modules.is_empty() {
            let mods: Map<String, Value> = self
                .modules
                .iter()
                .map(|(k, m)| {
                    let v = match m {
                        ModuleSpec::Standard(s) => serde_json::to_value(s).expect("standard module"),
                        ModuleSpec::Data(d) => module_to_json(d),
                    };
                    (k.clone(), v)
                })
                .collect();
            top.insert("modules".into(), Value::Object(mods));
        }
        if !self.assume.is_empty() {
            top.insert("assume".into(), json!(self.assume));
        }
        if !self.tasks.is_empty() {
            top.insert("tasks".into(), serde_json::to_value(&self.tasks).expect("tasks"));
        }
        Value::Object(top)
    }

    /// Canonical text: sorted keys, two-space indentation, trailing newline.
    pub fn to_canonical(&self) -> String {
        canonical(&self.to_json())
    }
}

pub fn canonical(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("json");
    s.push('\n');
    s
}

fn build_module(alg: &GradedAlgebra, spec: &ModuleSpec) -> Result<GradedModule> {
    match spec {
        ModuleSpec::Data(m) => Ok(m.clone()),
        ModuleSpec::Standard(s) => {
            let a = alg.quiver().vertex(&s.vertex)?;
            match s.kind {
                StandardKind::P => GradedModule::projective(alg, a, s.shift, s.window),
                StandardKind::I => GradedModule::injective(alg, a, s.shift, s.window),
                StandardKind::S => Ok(GradedModule::simple(alg, a, s.shift)),
            }
        }
    }
}

const TOP_KEYS: &[&str] = &["field", "quiver", "relations", "modules", "assume", "tasks"];

fn parse_problem(v: &Value) -> Result<Problem> {
    let obj = v.as_object().ok_or_else(|| Error::parse("$", "problem must be an object"))?;
    if let Some(k) = obj.keys().find(|k| !TOP_KEYS.contains(&k.as_str())) {
        return Err(Error::parse(k.clone(), "unknown key"));
    }
    let field = match obj.get("field") {
        Some(Value::String(s)) => Field::parse_tag(s)?,
        Some(_) => return Err(Error::parse("field", "expected a string such as \"Q\" or \"Fp:5\"")),
        None => return Err(Error::parse("field", "missing")),
    };
    let quiver = Quiver::from_json(obj.get("quiver").ok_or_else(|| Error::parse("quiver", "missing"))?)?;
    let relations = match obj.get("relations") {
        None => Vec::new(),
        Some(r) => parse_relations(field, &quiver, r)?,
    };
    let algebra = GradedAlgebra::new(field, quiver, relations)?;
    let mut problem = Problem::new(algebra);
    if let Some(m) = obj.get("modules") {
        let m = m.as_object().ok_or_else(|| Error::parse("modules", "expected an object"))?;
        for (name, block) in m {
            let spec = parse_module_spec(&problem.algebra, block).map_err(|e| relocate(e, &format!("modules.{name}")))?;
            problem.modules.insert(name.clone(), spec);
        }
    }
    if let Some(a) = obj.get("assume") {
        problem.assume =
            serde_json::from_value(a.clone()).map_err(|e| Error::parse("assume", e.to_string()))?;
    }
    if let Some(t) = obj.get("tasks") {
        problem.tasks = serde_json::from_value(t.clone()).map_err(|e| Error::parse("tasks", e.to_string()))?;
    }
    for (k, t) in problem.tasks.iter().enumerate() {
        if !COMMANDS.contains(&t.command.as_str()) {
            return Err(Error::parse(format!("tasks[{k}].command"), format!("unknown command {:?}", t.command)));
        }
        for key in ["module", "other"] {
            if let Some(r) = t.args.get(key) {
                let name = r.as_str().ok_or_else(|| Error::parse(format!("tasks[{k}].args.{key}"), "expected a string"))?;
                if !problem.modules.contains_key(name) {
                    return Err(Error::parse(format!("tasks[{k}].args.{key}"), format!("dangling reference {name:?}")));
                }
            }
        }
    }
    Ok(problem)
}

fn relocate(e: Error, at: &str) -> Error {
    match e {
        Error::Parse { at: inner, msg } => Error::parse(format!("{at}.{inner}"), msg),
        Error::InvalidModule(msg) => Error::parse(at, msg),
        other => other,
    }
}

pub fn parse_scalar(field: Field, v: &Value) -> Result<Scalar> {
    match v {
        Value::String(s) => field.parse_scalar(s),
        Value::Number(n) => field.parse_scalar(&n.to_string()),
        _ => Err(Error::parse("scalar", format!("expected a string or integer, got {v}"))),
    }
}

fn parse_relations(field: Field, q: &Quiver, v: &Value) -> Result<Vec<Relation>> {
    #[derive(Deserialize)]
    #[serde(deny_unknown_fields)]
    struct Rel {
        paths: Vec<Vec<String>>,
        coeffs: Option<Vec<Value>>,
    }
    let rels: Vec<Rel> = serde_json::from_value(v.clone()).map_err(|e| Error::parse("relations", e.to_string()))?;
    rels.into_iter()
        .enumerate()
        .map(|(k, r)| {
            let at = format!("relations[{k}]");
            let coeffs = match r.coeffs {
                Some(c) => c,
                None => vec![json!("1"); r.paths.len()],
            };
            if coeffs.len() != r.paths.len() || r.paths.is_empty() {
                return Err(Error::parse(at, "paths and coeffs must be nonempty and of equal length"));
            }
            let terms = r
                .paths
                .iter()
                .zip(&coeffs)
                .map(|(p, c)| {
                    let names: Vec<&str> = p.iter().map(String::as_str).collect();
                    Ok((parse_scalar(field, c)?, q.path(&names)?))
                })
                .collect::<Result<Vec<_>>>()?;
            Ok(Relation { terms })
        })
        .collect()
}

fn relations_to_json(alg: &GradedAlgebra) -> Value {
    let q = alg.quiver();
    Value::Array(
        alg.relations()
            .iter()
            .map(|r| {
                json!({
                    "paths": r.terms.iter().map(|(_, p)| q.path_names(p)).collect::<Vec<_>>(),
                    "coeffs": r.terms.iter().map(|(c, _)| c.to_string()).collect::<Vec<_>>(),
                })
            })
            .collect(),
    )
}

fn parse_module_spec(alg: &GradedAlgebra, v: &Value) -> Result<ModuleSpec> {
    if v.get("kind").is_some() {
        let s: StandardModule = serde_json::from_value(v.clone()).map_err(|e| Error::parse("", e.to_string()))?;
        alg.quiver().vertex(&s.vertex)?;
        if let Some((lo, hi)) = s.window {
            if lo > hi {
                return Err(Error::parse("window", "empty window"));
            }
        }
        Ok(ModuleSpec::Standard(s))
    } else {
        Ok(ModuleSpec::Data(parse_module(alg, v)?))
    }
}

fn parse_matrix(field: Field, rows: usize, cols: usize, v: &Value) -> Result<Matrix> {
    let arr = v.as_array().ok_or_else(|| Error::parse("", "matrix must be an array of rows"))?;
    if arr.len() != rows {
        return Err(Error::parse("", format!("expected {rows} rows, got {}", arr.len())));
    }
    let mut data = Vec::with_capacity(rows * cols);
    for row in arr {
        let r = row.as_array().ok_or_else(|| Error::parse("", "matrix row must be an array"))?;
        if r.len() != cols {
            return Err(Error::parse("", format!("expected {cols} columns, got {}", r.len())));
        }
        for c in r {
            data.push(parse_scalar(field, c)?);
        }
    }
    Matrix::new(field, rows, cols, data)
}

fn matrix_to_json(m: &Matrix) -> Value {
    Value::Array((0..m.rows()).map(|r| Value::Array(m.row(r).iter().map(|c| json!(c.to_string())).collect())).collect())
}

fn parse_key(key: &str) -> Option<(i64, &str)> {
    let inner = key.strip_prefix('(')?.strip_suffix(')')?;
    let (i, x) = inner.split_once(',')?;
    Some((i.trim().parse().ok()?, x.trim()))
}

fn edge_name(e: Edge) -> &'static str {
    match e {
        Edge::Exact => "exact",
        Edge::Truncated => "truncated",
    }
}

/// Parse a module data block `{"window", "flags", "dims", "maps"}`.
pub fn parse_module(alg: &GradedAlgebra, v: &Value) -> Result<GradedModule> {
    #[derive(Deserialize)]
    #[serde(deny_unknown_fields)]
    struct Flags {
        #[serde(default = "exact")]
        below: Edge,
        #[serde(default = "exact")]
        above: Edge,
    }
    fn exact() -> Edge {
        Edge::Exact
    }
    #[derive(Deserialize)]
    #[serde(deny_unknown_fields)]
    struct Block {
        window: (i64, i64),
        flags: Option<Flags>,
        #[serde(default)]
        dims: BTreeMap<String, usize>,
        #[serde(default)]
        maps: BTreeMap<String, Value>,
    }
    let b: Block = serde_json::from_value(v.clone()).map_err(|e| Error::parse("", e.to_string()))?;
    let q = alg.quiver();
    let field = alg.field();
    let (lo, hi) = b.window;
    let flags = b.flags.unwrap_or(Flags { below: Edge::Exact, above: Edge::Exact });
    if hi < lo {
        if !b.dims.values().all(|&d| d == 0) {
            return Err(Error::parse("dims", "nonzero dimension in an empty window"));
        }
        return Ok(GradedModule::zero(alg));
    }
    let n = (hi - lo + 1) as usize;
    let mut dims = vec![vec![0usize; q.vertex_count()]; n];
    for (key, &d) in &b.dims {
        let (i, x) = parse_key(key).ok_or_else(|| Error::parse(format!("dims.{key}"), "expected \"(degree,vertex)\""))?;
        if i < lo || i > hi {
            return Err(Error::parse(format!("dims.{key}"), "degree outside the window"));
        }
        dims[(i - lo) as usize][q.vertex(x)?] = d;
    }
    let mut maps: Vec<Vec<Matrix>> = (lo..hi)
        .map(|i| {
            q.arrows()
                .iter()
                .map(|ar| Matrix::zeros(field, dims[(i + 1 - lo) as usize][ar.to], dims[(i - lo) as usize][ar.from]))
                .collect()
        })
        .collect();
    for (key, m) in &b.maps {
        let at = format!("maps.{key}");
        let (name, deg) = key.split_once('@').ok_or_else(|| Error::parse(&at, "expected \"arrow@degree\""))?;
        let i: i64 = deg.parse().map_err(|_| Error::parse(&at, "bad degree"))?;
        let a = q.arrow_index(name)?;
        if i < lo || i >= hi {
            return Err(Error::parse(&at, "map leaves the window"));
        }
        let ar = q.arrow(a);
        let (rows, cols) = (dims[(i + 1 - lo) as usize][ar.to], dims[(i - lo) as usize][ar.from]);
        maps[(i - lo) as usize][a] = parse_matrix(field, rows, cols, m).map_err(|e| relocate(e, &at))?;
    }
    GradedModule::new(alg, lo, hi, flags.below, flags.above, dims, maps)
}

pub fn module_to_json(m: &GradedModule) -> Value {
    let q = m.algebra().quiver();
    let (lo, hi) = m.window();
    let (below, above) = m.edges();
    let mut dims = Map::new();
    let mut maps = Map::new();
    for i in lo..=hi {
        for x in 0..q.vertex_count() {
            let d = m.d_window(i, x);
            if d > 0 {
                dims.insert(format!("({i},{})", q.label(x)), json!(d));
            }
        }
    }
    for (k, row) in m.map_table().iter().enumerate() {
        for (a, mat) in row.iter().enumerate() {
            if mat.rows() > 0 && mat.cols() > 0 {
                maps.insert(format!("{}@{}", q.arrow(a).name, lo + k as i64), matrix_to_json(mat));
            }
        }
    }
    json!({
        "window": [lo, hi],
        "flags": {"below": edge_name(below), "above": edge_name(above)},
        "dims": dims,
        "maps": maps,
    })
}

/// `{"blocks": {"(i,x)": matrix}}` over the nonempty blocks.
pub fn morphism_to_json(f: &Morphism) -> Value {
    let q = f.source.algebra().quiver();
    let (lo, _) = f.source.window();
    let mut blocks = Map::new();
    for (k, row) in f.blocks().iter().enumerate() {
        for (x, b) in row.iter().enumerate() {
            if b.rows() > 0 && b.cols() > 0 {
                blocks.insert(format!("({},{})", lo + k as i64, q.label(x)), matrix_to_json(b));
            }
        }
    }
    json!({ "blocks": blocks })
}

pub fn parse_morphism(source: &GradedModule, target: &GradedModule, v: &Value) -> Result<Morphism> {
    let q = source.algebra().quiver();
    let field = source.field();
    let (lo, hi) = source.window();
    let blocks = v
        .get("blocks")
        .and_then(Value::as_object)
        .ok_or_else(|| Error::parse("blocks", "expected an object"))?;
    let mut table: Vec<Vec<Matrix>> = (lo..=hi)
        .map(|i| (0..q.vertex_count()).map(|x| Matrix::zeros(field, target.dim(i, x).unwrap_or(0), source.d_window(i, x))).collect())
        .collect();
    for (key, m) in blocks {
        let at = format!("blocks.{key}");
        let (i, x) = parse_key(key).ok_or_else(|| Error::parse(&at, "expected \"(degree,vertex)\""))?;
        if i < lo || i > hi {
            return Err(Error::parse(&at, "degree outside the source window"));
        }
        let x = q.vertex(x)?;
        let slot = &mut table[(i - lo) as usize][x];
        *slot = parse_matrix(field, slot.rows(), slot.cols(), m).map_err(|e| relocate(e, &at))?;
    }
    Morphism::from_blocks_at(lo, source.clone(), target.clone(), table)
}

pub fn summands_to_json(alg: &GradedAlgebra, s: &[(usize, i64)]) -> Value {
    Value::Array(s.iter().map(|&(a, t)| json!([alg.quiver().label(a), t])).collect())
}

pub fn element_to_json(alg: &GradedAlgebra, u: &AlgElement) -> Value {
    json!({
        "degree": u.degree,
        "coeffs": u.coeffs.iter().map(|c| c.to_string()).collect::<Vec<_>>(),
        "display": alg.format_element(u),
    })
}

/// Entries indexed `[target summand][source summand]`, `null` for zero.
pub fn pmap_to_json(p: &PMap) -> Value {
    json!({
        "source": summands_to_json(&p.alg, &p.source),
        "target": summands_to_json(&p.alg, &p.target),
        "entries": p.entries.iter().map(|row| {
            row.iter().map(|e| match e {
                Some(u) => element_to_json(&p.alg, u),
                None => Value::Null,
            }).collect::<Vec<_>>()
        }).collect::<Vec<_>>(),
    })
}

/// Write `text` to `path` through a temporary file in the same directory.
pub fn write_atomic(path: &FsPath, text: &str) -> Result<()> {
    if let Some(dir) = path.parent() {
        if !dir.as_os_str().is_empty() {
            std::fs::create_dir_all(dir)?;
        }
    }
    let tmp = path.with_extension(format!("tmp{}", std::process::id()));
    std::fs::write(&tmp, text)?;
    std::fs::rename(&tmp, path)?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    const FIX_A: &str = r#"{
        "field": "Q",
        "quiver": {"vertices": ["1", "2"], "arrows": [
            {"name": "a", "from": "1", "to": "1"}, {"name": "b", "from": "1", "to": "2"}]},
        "relations": [{"paths": [["b", "a"]], "coeffs": ["1"]}],
        "modules": {"P1": {"kind": "P", "vertex": "1", "window": [0, 6]}}
    }"#;

    #[test]
    fn parses_fix_a() {
        let p = Problem::from_str(FIX_A).unwrap();
        assert_eq!(p.algebra.relations().len(), 1);
        let m = p.module("P1").unwrap();
        assert_eq!(m.window(), (0, 6));
    }

    #[test]
    fn rejects_bad_relations() {
        let mixed = FIX_A.replace(r#"[["b", "a"]], "coeffs": ["1"]"#, r#"[["b", "a"], ["b", "a", "a"]], "coeffs": ["1", "1"]"#);
        let e = Problem::from_str(&mixed).unwrap_err();
        assert!(e.to_string().contains("relation not homogeneous"), "{e}");
        let short = FIX_A.replace(r#"[["b", "a"]]"#, r#"[["b"]]"#);
        let e = Problem::from_str(&short).unwrap_err();
        assert!(e.to_string().contains("relation not in (kQ+)^2"), "{e}");
    }

    #[test]
    fn dangling_reference() {
        let t = FIX_A.replace(
            r#""modules""#,
            r#""tasks": [{"name": "t", "command": "soc", "args": {"module": "Q7"}}], "modules""#,
        );
        let e = Problem::from_str(&t).unwrap_err();
        assert!(e.to_string().contains("dangling"), "{e}");
    }

    #[test]
    fn canonical_round_trip() {
        let p = Problem::from_str(FIX_A).unwrap();
        let text = p.to_canonical();
        let again = Problem::from_str(&text).unwrap();
        assert_eq!(again.to_canonical(), text);
    }

    #[test]
    fn module_block_round_trip() {
        let p = Problem::from_str(FIX_A).unwrap();
        let m = p.module("P1").unwrap();
        let v = module_to_json(&m);
        let back = parse_module(&p.algebra, &v).unwrap();
        assert_eq!(back, m);
        let f = Morphism::identity(&m);
        let g = parse_morphism(&m, &m, &morphism_to_json(&f)).unwrap();
        assert_eq!(g.to_vec(), f.to_vec());
    }
}
