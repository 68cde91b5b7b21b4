//! Command-line interface: the JSON instance format, its resolution into
//! library objects, and JSON-lines reports.
//!
//! Exit codes: 0 when every check passes, 1 on a validation failure, 2 when
//! the input cannot be parsed or resolved, 3 when a hom-set exceeds the cap.

use std::collections::{BTreeMap, HashMap};
use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;
use std::sync::Arc;

use clap::{Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};

use crate::fixtures::{self, Battery, Named};
use crate::functors::{pi_mor_between, pi_obj, sigma_mor_between, sigma_obj, FunctorError};
use crate::group::{Elem, Group, GroupError, GroupSpec};
use crate::homsearch::{
    default_relation, enumerate_hom_poset, enumerate_hom_simp, homotopy_classes, HomError, HomMorphism, HomSet,
    DEFAULT_HOM_CAP,
};
use crate::lemmas::{self, ConventionChoice, ReportLine};
use crate::mposet::{MPoset, MPosetMorphism, Poset};
use crate::msimp::{MSimp, MSimpMorphism, Simplex, SimplicialComplex};
use crate::realization::{
    self, canonicalize, homotopy_point, realize_morphism_point, BundlePoint, Convention, RationalPoint, RationalTime, Q,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VALIDATION: i32 = 1;
pub const EXIT_PARSE: i32 = 2;
pub const EXIT_CAP: i32 = 3;

// ---------------------------------------------------------------------------
// File format.

/// A group element: residue tuple for cyclic products, index otherwise.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ElemRepr {
    Residues(Vec<u32>),
    Index(usize),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PosetLabel {
    pub from: String,
    pub to: String,
    pub value: ElemRepr,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PosetDef {
    pub name: String,
    pub elements: Vec<String>,
    #[serde(default)]
    pub covers: Vec<(String, String)>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub labels: Vec<PosetLabel>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SimplexLabel {
    pub face: Vec<String>,
    pub simplex: Vec<String>,
    pub value: ElemRepr,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ComplexDef {
    pub name: String,
    pub vertices: Vec<String>,
    #[serde(default)]
    pub facets: Vec<Vec<String>>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub labels: Vec<SimplexLabel>,
}

/// Where a `λ` value sits: an element of a poset or a simplex.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum At {
    Element(String),
    Simplex(Vec<String>),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LambdaEntry {
    pub at: At,
    pub value: ElemRepr,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MorphismDef {
    pub name: String,
    pub source: String,
    pub target: String,
    pub map: BTreeMap<String, String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub lambda: Vec<LambdaEntry>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PointDef {
    pub name: String,
    pub complex: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub simplex: Option<Vec<String>>,
    pub alpha: BTreeMap<String, String>,
    pub elem: ElemRepr,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum TaskKind {
    Validate,
    Hom,
    Classes,
    Sigma,
    Pi,
    Realize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TaskDef {
    pub name: String,
    pub command: TaskKind,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub source: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub target: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub object: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub morphism: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub other: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub point: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub time: Option<String>,
}

/// The on-disk instance file.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InstanceFile {
    pub group: GroupSpec,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub posets: Vec<PosetDef>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub complexes: Vec<ComplexDef>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub morphisms: Vec<MorphismDef>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub points: Vec<PointDef>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub tasks: Vec<TaskDef>,
}

// ---------------------------------------------------------------------------
// Resolution.

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CliError {
    Parse(String),
    Validation(String),
    Cap(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Parse(_) => EXIT_PARSE,
            CliError::Validation(_) => EXIT_VALIDATION,
            CliError::Cap(_) => EXIT_CAP,
        }
    }

    pub fn message(&self) -> &str {
        match self {
            CliError::Parse(m) | CliError::Validation(m) | CliError::Cap(m) => m,
        }
    }
}

impl From<HomError> for CliError {
    fn from(e: HomError) -> CliError {
        match e {
            HomError::CapExceeded { .. } => CliError::Cap(e.to_string()),
            HomError::EmptyTarget => CliError::Validation(e.to_string()),
            other => CliError::Parse(other.to_string()),
        }
    }
}

impl From<FunctorError> for CliError {
    fn from(e: FunctorError) -> CliError {
        match e {
            FunctorError::TooManyChains { .. } => CliError::Cap(e.to_string()),
            other => CliError::Validation(other.to_string()),
        }
    }
}

fn parse_err(context: &str, e: impl std::fmt::Display) -> CliError {
    CliError::Parse(format!("{context}: {e}"))
}

#[derive(Clone, Debug)]
pub enum AnyMorphism {
    Poset(MPosetMorphism),
    Simp(MSimpMorphism),
}

#[derive(Clone, Debug)]
pub struct NamedPoint {
    pub name: String,
    pub complex: String,
    pub point: BundlePoint,
}

/// A resolved instance file.
#[derive(Clone, Debug)]
pub struct Instance {
    pub group: Arc<Group>,
    pub posets: Vec<Named<MPoset>>,
    pub complexes: Vec<Named<MSimp>>,
    pub morphisms: Vec<(String, AnyMorphism)>,
    pub points: Vec<NamedPoint>,
    pub tasks: Vec<TaskDef>,
}

impl Instance {
    pub fn poset(&self, name: &str) -> Option<&Arc<MPoset>> {
        self.posets.iter().find(|p| p.name == name).map(|p| &p.object)
    }

    pub fn complex(&self, name: &str) -> Option<&Arc<MSimp>> {
        self.complexes.iter().find(|p| p.name == name).map(|p| &p.object)
    }

    pub fn morphism(&self, name: &str) -> Option<&AnyMorphism> {
        self.morphisms.iter().find(|(n, _)| n == name).map(|(_, m)| m)
    }

    fn object_name_of_poset(&self, p: &Arc<MPoset>) -> String {
        self.posets
            .iter()
            .find(|q| Arc::ptr_eq(&q.object, p))
            .map(|q| q.name.clone())
            .unwrap_or_default()
    }

    fn object_name_of_complex(&self, p: &Arc<MSimp>) -> String {
        self.complexes
            .iter()
            .find(|q| Arc::ptr_eq(&q.object, p))
            .map(|q| q.name.clone())
            .unwrap_or_default()
    }
}

pub fn load_group(spec: &GroupSpec) -> Result<Arc<Group>, CliError> {
    match Group::new(spec.clone()) {
        Ok(g) => Ok(Arc::new(g)),
        Err(GroupError::NotAGroup(v)) => Err(CliError::Validation(format!(
            "group axioms fail: {}",
            v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join("; ")
        ))),
        Err(e) => Err(parse_err("group", e)),
    }
}

fn parse_elem(group: &Group, e: &ElemRepr) -> Result<Elem, CliError> {
    match e {
        ElemRepr::Residues(r) => group.from_residues(r).map_err(|e| parse_err("group element", e)),
        ElemRepr::Index(i) => group.elem(*i).map_err(|e| parse_err("group element", e)),
    }
}

fn write_elem(group: &Group, e: Elem) -> ElemRepr {
    match group.residues(e) {
        Some(r) => ElemRepr::Residues(r),
        None => ElemRepr::Index(e.index()),
    }
}

fn load_poset(group: &Arc<Group>, def: &PosetDef) -> Result<MPoset, CliError> {
    let ctx = format!("poset `{}`", def.name);
    let index: HashMap<&str, usize> = def.elements.iter().enumerate().map(|(i, n)| (n.as_str(), i)).collect();
    let find = |n: &str| index.get(n).copied().ok_or_else(|| parse_err(&ctx, format!("unknown element `{n}`")));
    let rel = def
        .covers
        .iter()
        .map(|(a, b)| Ok((find(a)?, find(b)?)))
        .collect::<Result<Vec<_>, CliError>>()?;
    let poset = Poset::new(def.elements.clone(), &rel).map_err(|e| parse_err(&ctx, e))?;
    let mut given = HashMap::new();
    for l in &def.labels {
        given.insert((find(&l.from)?, find(&l.to)?), parse_elem(group, &l.value)?);
    }
    MPoset::close(group.clone(), poset, &given).map_err(|e| parse_err(&ctx, e))
}

fn simplex_of(complex: &SimplicialComplex, vs: &[String], ctx: &str) -> Result<Simplex, CliError> {
    let mut idx = Vec::with_capacity(vs.len());
    for v in vs {
        idx.push(
            complex
                .vertex_index(v)
                .ok_or_else(|| parse_err(ctx, format!("unknown vertex `{v}`")))?,
        );
    }
    let s = Simplex::from_vertices(idx);
    if s.is_empty() || !complex.contains(s) {
        return Err(parse_err(ctx, format!("{{{}}} is not a simplex", vs.join(","))));
    }
    Ok(s)
}

fn load_complex(group: &Arc<Group>, def: &ComplexDef) -> Result<MSimp, CliError> {
    let ctx = format!("complex `{}`", def.name);
    let index: HashMap<&str, usize> = def.vertices.iter().enumerate().map(|(i, n)| (n.as_str(), i)).collect();
    let facets = def
        .facets
        .iter()
        .map(|f| {
            f.iter()
                .map(|v| index.get(v.as_str()).copied().ok_or_else(|| parse_err(&ctx, format!("unknown vertex `{v}`"))))
                .collect::<Result<Vec<_>, _>>()
        })
        .collect::<Result<Vec<_>, _>>()?;
    let complex = SimplicialComplex::new(def.vertices.clone(), &facets).map_err(|e| parse_err(&ctx, e))?;
    let mut given = HashMap::new();
    for l in &def.labels {
        let s = simplex_of(&complex, &l.face, &ctx)?;
        let t = simplex_of(&complex, &l.simplex, &ctx)?;
        given.insert(
            (complex.index_of(s).unwrap(), complex.index_of(t).unwrap()),
            parse_elem(group, &l.value)?,
        );
    }
    MSimp::close(group.clone(), complex, &given).map_err(|e| parse_err(&ctx, e))
}

fn load_morphism(inst: &Instance, def: &MorphismDef) -> Result<AnyMorphism, CliError> {
    let ctx = format!("morphism `{}`", def.name);
    let g = &inst.group;
    let lookup = |names: &[String], n: &str, what: &str| {
        names
            .iter()
            .position(|x| x == n)
            .ok_or_else(|| parse_err(&ctx, format!("unknown {what} `{n}`")))
    };
    let total_map = |src: &[String], dst: &[String], what: &str| -> Result<Vec<usize>, CliError> {
        for k in def.map.keys() {
            lookup(src, k, what)?;
        }
        src.iter()
            .map(|x| {
                let y = def.map.get(x).ok_or_else(|| parse_err(&ctx, format!("no image for `{x}`")))?;
                lookup(dst, y, what)
            })
            .collect()
    };
    if let (Some(s), Some(t)) = (inst.poset(&def.source), inst.poset(&def.target)) {
        let map = total_map(s.poset().names(), t.poset().names(), "element")?;
        let mut lambda = vec![g.identity(); s.len()];
        for e in &def.lambda {
            let At::Element(x) = &e.at else {
                return Err(parse_err(&ctx, "lambda of a poset morphism is indexed by elements"));
            };
            lambda[lookup(s.poset().names(), x, "element")?] = parse_elem(g, &e.value)?;
        }
        return MPosetMorphism::new(s.clone(), t.clone(), map, lambda)
            .map(AnyMorphism::Poset)
            .map_err(|e| parse_err(&ctx, e));
    }
    if let (Some(s), Some(t)) = (inst.complex(&def.source), inst.complex(&def.target)) {
        let map = total_map(s.complex().vertex_names(), t.complex().vertex_names(), "vertex")?;
        let mut lambda = vec![g.identity(); s.len()];
        for e in &def.lambda {
            let vs = match &e.at {
                At::Simplex(vs) => vs.clone(),
                At::Element(v) => vec![v.clone()],
            };
            let sx = simplex_of(s.complex(), &vs, &ctx)?;
            lambda[s.complex().index_of(sx).unwrap()] = parse_elem(g, &e.value)?;
        }
        return MSimpMorphism::new(s.clone(), t.clone(), map, lambda)
            .map(AnyMorphism::Simp)
            .map_err(|e| parse_err(&ctx, e));
    }
    Err(parse_err(&ctx, "source and target must both be posets or both be complexes"))
}

fn parse_rational(s: &str, ctx: &str) -> Result<Q, CliError> {
    s.trim().parse::<Q>().map_err(|e| parse_err(ctx, format!("bad rational `{s}`: {e}")))
}

fn load_point(inst: &Instance, def: &PointDef) -> Result<NamedPoint, CliError> {
    let ctx = format!("point `{}`", def.name);
    let space = inst
        .complex(&def.complex)
        .ok_or_else(|| parse_err(&ctx, format!("unknown complex `{}`", def.complex)))?;
    let c = space.complex();
    let mut coords = vec![Q::from_integer(0); c.vertex_count()];
    for (v, q) in &def.alpha {
        let i = c.vertex_index(v).ok_or_else(|| parse_err(&ctx, format!("unknown vertex `{v}`")))?;
        coords[i] = parse_rational(q, &ctx)?;
    }
    let alpha = RationalPoint::new(c, coords).map_err(|e| parse_err(&ctx, e))?;
    let sigma = match &def.simplex {
        Some(vs) => simplex_of(c, vs, &ctx)?,
        None => alpha.support(),
    };
    let point = canonicalize(space, sigma, &alpha, parse_elem(&inst.group, &def.elem)?).map_err(|e| parse_err(&ctx, e))?;
    Ok(NamedPoint {
        name: def.name.clone(),
        complex: def.complex.clone(),
        point,
    })
}

/// Resolves every reference in a parsed file.
pub fn resolve(file: &InstanceFile) -> Result<Instance, CliError> {
    let group = load_group(&file.group)?;
    let mut names = std::collections::HashSet::new();
    for n in file.posets.iter().map(|p| &p.name).chain(file.complexes.iter().map(|c| &c.name)) {
        if !names.insert(n.clone()) {
            return Err(CliError::Parse(format!("object name `{n}` is used twice")));
        }
    }
    let posets = file
        .posets
        .iter()
        .map(|d| Ok(Named { name: d.name.clone(), object: Arc::new(load_poset(&group, d)?) }))
        .collect::<Result<Vec<_>, CliError>>()?;
    let complexes = file
        .complexes
        .iter()
        .map(|d| Ok(Named { name: d.name.clone(), object: Arc::new(load_complex(&group, d)?) }))
        .collect::<Result<Vec<_>, CliError>>()?;
    let mut inst = Instance {
        group,
        posets,
        complexes,
        morphisms: Vec::new(),
        points: Vec::new(),
        tasks: file.tasks.clone(),
    };
    for d in &file.morphisms {
        if inst.morphism(&d.name).is_some() {
            return Err(CliError::Parse(format!("morphism name `{}` is used twice", d.name)));
        }
        let m = load_morphism(&inst, d)?;
        inst.morphisms.push((d.name.clone(), m));
    }
    for d in &file.points {
        let p = load_point(&inst, d)?;
        inst.points.push(p);
    }
    let mut task_names = std::collections::HashSet::new();
    for t in &inst.tasks {
        if !task_names.insert(t.name.clone()) {
            return Err(CliError::Parse(format!("task name `{}` is used twice", t.name)));
        }
    }
    Ok(inst)
}

pub fn parse_instance(text: &str) -> Result<Instance, CliError> {
    let file: InstanceFile = serde_json::from_str(text).map_err(|e| parse_err("instance file", e))?;
    resolve(&file)
}

// ---------------------------------------------------------------------------
// Serialization.

/// Labels needed to rebuild `p` with [`MPoset::close`]: all covers, plus any
/// pair whose stored label differs from the value closing would produce.
fn label_entries(p: &MPoset) -> Vec<((usize, usize), Elem)> {
    let covers: HashMap<(usize, usize), Elem> = p.cover_labels().into_iter().collect();
    let rebuilt = MPoset::close(p.group().clone(), p.poset().clone(), &covers).expect("covers are comparable");
    let mut out: Vec<((usize, usize), Elem)> = p.cover_labels();
    for (x, y) in p.poset().comparable_pairs() {
        if !covers.contains_key(&(x, y)) && rebuilt.label(x, y) != p.label(x, y) {
            out.push(((x, y), p.label(x, y)));
        }
    }
    out.sort();
    out
}

pub fn poset_def(name: &str, p: &MPoset) -> PosetDef {
    let names = p.poset().names();
    let g = p.group();
    PosetDef {
        name: name.to_string(),
        elements: names.to_vec(),
        covers: p.poset().covers().iter().map(|&(x, y)| (names[x].clone(), names[y].clone())).collect(),
        labels: label_entries(p)
            .into_iter()
            .map(|((x, y), e)| PosetLabel {
                from: names[x].clone(),
                to: names[y].clone(),
                value: write_elem(g, e),
            })
            .collect(),
    }
}

fn simplex_names(c: &SimplicialComplex, s: Simplex) -> Vec<String> {
    s.vertices().map(|v| c.vertex_names()[v].clone()).collect()
}

pub fn complex_def(name: &str, s: &MSimp) -> ComplexDef {
    let c = s.complex();
    ComplexDef {
        name: name.to_string(),
        vertices: c.vertex_names().to_vec(),
        facets: c.facets().into_iter().filter(|f| f.len() > 1).map(|f| simplex_names(c, f)).collect(),
        labels: label_entries(s.faces())
            .into_iter()
            .map(|((x, y), e)| SimplexLabel {
                face: simplex_names(c, c.simplex(x)),
                simplex: simplex_names(c, c.simplex(y)),
                value: write_elem(s.group(), e),
            })
            .collect(),
    }
}

pub fn poset_morphism_def(name: &str, source: &str, target: &str, m: &MPosetMorphism) -> MorphismDef {
    let (s, t) = (m.source().poset(), m.target().poset());
    MorphismDef {
        name: name.to_string(),
        source: source.to_string(),
        target: target.to_string(),
        map: (0..s.len()).map(|x| (s.name(x).to_string(), t.name(m.map()[x]).to_string())).collect(),
        lambda: (0..s.len())
            .map(|x| LambdaEntry {
                at: At::Element(s.name(x).to_string()),
                value: write_elem(m.group(), m.lambda()[x]),
            })
            .collect(),
    }
}

pub fn simp_morphism_def(name: &str, source: &str, target: &str, m: &MSimpMorphism) -> MorphismDef {
    let (s, t) = (m.source().complex(), m.target().complex());
    MorphismDef {
        name: name.to_string(),
        source: source.to_string(),
        target: target.to_string(),
        map: (0..s.vertex_count())
            .map(|v| (s.vertex_names()[v].clone(), t.vertex_names()[m.map()[v]].clone()))
            .collect(),
        lambda: s
            .simplices()
            .iter()
            .enumerate()
            .map(|(i, &x)| LambdaEntry {
                at: At::Simplex(simplex_names(s, x)),
                value: write_elem(m.group(), m.lambda()[i]),
            })
            .collect(),
    }
}

fn point_def(name: &str, complex: &str, space: &MSimp, p: &BundlePoint) -> PointDef {
    let c = space.complex();
    PointDef {
        name: name.to_string(),
        complex: complex.to_string(),
        simplex: Some(simplex_names(c, p.simplex())),
        alpha: p
            .alpha()
            .coords()
            .iter()
            .enumerate()
            .filter(|(_, q)| **q != Q::from_integer(0))
            .map(|(v, q)| (c.vertex_names()[v].clone(), q.to_string()))
            .collect(),
        elem: write_elem(space.group(), p.elem()),
    }
}

/// Writes a resolved instance back to the file format.
pub fn to_file(inst: &Instance) -> InstanceFile {
    InstanceFile {
        group: inst.group.spec().clone(),
        posets: inst.posets.iter().map(|p| poset_def(&p.name, &p.object)).collect(),
        complexes: inst.complexes.iter().map(|c| complex_def(&c.name, &c.object)).collect(),
        morphisms: inst
            .morphisms
            .iter()
            .map(|(n, m)| match m {
                AnyMorphism::Poset(m) => poset_morphism_def(
                    n,
                    &inst.object_name_of_poset(m.source()),
                    &inst.object_name_of_poset(m.target()),
                    m,
                ),
                AnyMorphism::Simp(m) => simp_morphism_def(
                    n,
                    &inst.object_name_of_complex(m.source()),
                    &inst.object_name_of_complex(m.target()),
                    m,
                ),
            })
            .collect(),
        points: inst
            .points
            .iter()
            .map(|p| point_def(&p.name, &p.complex, inst.complex(&p.complex).unwrap(), &p.point))
            .collect(),
        tasks: inst.tasks.clone(),
    }
}

// ---------------------------------------------------------------------------
// Reports.

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

/// One report line of a subcommand.
#[derive(Clone, Debug, Serialize)]
pub struct Line {
    pub check: String,
    pub subject: String,
    pub status: Status,
    pub witnesses: Vec<String>,
    pub counts: BTreeMap<String, u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub data: Option<serde_json::Value>,
    #[serde(skip)]
    pub text: Vec<String>,
}

impl Line {
    fn new(check: &str, subject: &str) -> Line {
        Line {
            check: check.to_string(),
            subject: subject.to_string(),
            status: Status::Pass,
            witnesses: Vec::new(),
            counts: BTreeMap::new(),
            data: None,
            text: Vec::new(),
        }
    }

    fn failing(mut self, witnesses: Vec<String>) -> Line {
        if !witnesses.is_empty() {
            self.status = Status::Fail;
        }
        self.witnesses.extend(witnesses);
        self
    }

    fn count(mut self, key: &str, n: usize) -> Line {
        self.counts.insert(key.to_string(), n as u64);
        self
    }

    fn render_text(&self) -> String {
        let status = if self.status == Status::Pass { "PASS" } else { "FAIL" };
        let counts: Vec<String> = self.counts.iter().map(|(k, v)| format!("{k}={v}")).collect();
        let mut out = format!("[{status}] {} {}", self.check, self.subject);
        if !counts.is_empty() {
            out.push_str(&format!(" ({})", counts.join(", ")));
        }
        for w in &self.witnesses {
            out.push_str(&format!("\n  witness: {w}"));
        }
        for t in &self.text {
            out.push_str(&format!("\n  {t}"));
        }
        out
    }
}

// ---------------------------------------------------------------------------
// Command line.

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ConventionArg {
    Auto,
    Plain,
    Inverse,
}

impl ConventionArg {
    fn choice(self) -> ConventionChoice {
        match self {
            ConventionArg::Auto => ConventionChoice::Auto,
            ConventionArg::Plain => ConventionChoice::Fixed(Convention::Plain),
            ConventionArg::Inverse => ConventionChoice::Fixed(Convention::Inverse),
        }
    }
}

#[derive(Debug, Parser)]
#[command(name = "monofib", version, about = "A-monomial posets, simplicial complexes and their fibered realizations")]
pub struct Args {
    #[command(subcommand)]
    pub command: Command,
    /// Instance file (JSON).
    #[arg(long, global = true)]
    pub input: Option<PathBuf>,
    /// Run only the named task from the instance file.
    #[arg(long, global = true)]
    pub task: Option<String>,
    /// Bound on the hom-set search space.
    #[arg(long, global = true, default_value_t = DEFAULT_HOM_CAP)]
    pub cap: u128,
    /// Group part of realized morphisms.
    #[arg(long, global = true, value_enum, default_value_t = ConventionArg::Auto)]
    pub convention: ConventionArg,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
}

#[derive(Debug, Subcommand, Clone, Copy, PartialEq, Eq)]
pub enum Command {
    /// Validate the group, every object, morphism and point.
    Validate,
    /// Enumerate hom-sets.
    Hom,
    /// Partition hom-sets into homotopy classes.
    Classes,
    /// Apply the order-complex functor.
    Sigma,
    /// Apply the face-poset functor.
    Pi,
    /// Verify the realization on the sample set, or evaluate points.
    Realize,
    /// Run the lemma suite on the bundled battery or on the input file.
    CheckLemmas,
}

/// Parses arguments and runs, writing the report to `out`. Returns the exit
/// code.
pub fn run<I, T>(args: I, out: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let args = match Args::try_parse_from(args) {
        Ok(a) => a,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_PARSE } else { EXIT_OK };
            let _ = write!(out, "{e}");
            return code;
        }
    };
    match execute(&args) {
        Ok(lines) => emit(&args, out, &lines),
        Err(e) => {
            let line = Line::new("error", "").failing(vec![e.message().to_string()]);
            emit(&args, out, &[Emitted::Cli(line)]);
            e.exit_code()
        }
    }
}

pub enum Emitted {
    Cli(Line),
    Lemma(ReportLine),
}

impl Emitted {
    fn passed(&self) -> bool {
        match self {
            Emitted::Cli(l) => l.status == Status::Pass,
            Emitted::Lemma(l) => l.passed(),
        }
    }
}

fn emit(args: &Args, out: &mut dyn Write, lines: &[Emitted]) -> i32 {
    for l in lines {
        let text = match (args.format, l) {
            (Format::Json, Emitted::Cli(l)) => serde_json::to_string(l).unwrap(),
            (Format::Json, Emitted::Lemma(l)) => serde_json::to_string(l).unwrap(),
            (Format::Text, Emitted::Cli(l)) => l.render_text(),
            (Format::Text, Emitted::Lemma(l)) => l.text(),
        };
        let _ = writeln!(out, "{text}");
    }
    if lines.iter().all(Emitted::passed) {
        EXIT_OK
    } else {
        EXIT_VALIDATION
    }
}

fn read_instance(args: &Args) -> Result<Instance, CliError> {
    let path = args
        .input
        .as_ref()
        .ok_or_else(|| CliError::Parse("--input is required for this command".into()))?;
    let text = std::fs::read_to_string(path).map_err(|e| parse_err(&path.display().to_string(), e))?;
    parse_instance(&text)
}

fn execute(args: &Args) -> Result<Vec<Emitted>, CliError> {
    if args.command == Command::CheckLemmas {
        return check_lemmas(args);
    }
    if args.command == Command::Validate {
        let path = args
            .input
            .as_ref()
            .ok_or_else(|| CliError::Parse("--input is required for this command".into()))?;
        let text = std::fs::read_to_string(path).map_err(|e| parse_err(&path.display().to_string(), e))?;
        let file: InstanceFile = serde_json::from_str(&text).map_err(|e| parse_err("instance file", e))?;
        if let Err(CliError::Validation(m)) = load_group(&file.group) {
            let line = Line::new("validate", "group").failing(vec![m]);
            return Ok(vec![Emitted::Cli(line)]);
        }
        let inst = resolve(&file)?;
        return Ok(validate_all(&inst).into_iter().map(Emitted::Cli).collect());
    }
    let inst = read_instance(args)?;
    let kind = match args.command {
        Command::Hom => TaskKind::Hom,
        Command::Classes => TaskKind::Classes,
        Command::Sigma => TaskKind::Sigma,
        Command::Pi => TaskKind::Pi,
        Command::Realize => TaskKind::Realize,
        Command::Validate | Command::CheckLemmas => unreachable!(),
    };
    let tasks: Vec<&TaskDef> = match &args.task {
        Some(name) => {
            let t = inst
                .tasks
                .iter()
                .find(|t| &t.name == name)
                .ok_or_else(|| CliError::Parse(format!("unknown task `{name}`")))?;
            vec![t]
        }
        None => inst.tasks.iter().filter(|t| t.command == kind).collect(),
    };
    if tasks.is_empty() {
        return Err(CliError::Parse(format!("the instance has no `{}` tasks", kind_name(kind))));
    }
    let mut lines = Vec::new();
    for task in tasks {
        let task_kind = if args.task.is_some() { task.command } else { kind };
        lines.extend(run_task(&inst, task, task_kind, args)?);
    }
    Ok(lines.into_iter().map(Emitted::Cli).collect())
}

fn kind_name(k: TaskKind) -> &'static str {
    match k {
        TaskKind::Validate => "validate",
        TaskKind::Hom => "hom",
        TaskKind::Classes => "classes",
        TaskKind::Sigma => "sigma",
        TaskKind::Pi => "pi",
        TaskKind::Realize => "realize",
    }
}

/// Validation lines for the group, objects, morphisms and points.
pub fn validate_all(inst: &Instance) -> Vec<Line> {
    let mut lines = vec![Line::new("validate", "group").count("order", inst.group.order())];
    for p in &inst.posets {
        let v = p.object.validate();
        let names = p.object.poset().names().to_vec();
        let ws = v.iter().map(|x| x.describe(|i| names[i].clone(), &inst.group)).collect();
        lines.push(Line::new("validate", &format!("poset {}", p.name)).count("elements", p.object.len()).failing(ws));
    }
    for c in &inst.complexes {
        let ws = c.object.describe_violations(&c.object.validate());
        lines.push(
            Line::new("validate", &format!("complex {}", c.name))
                .count("simplices", c.object.len())
                .failing(ws),
        );
    }
    for (n, m) in &inst.morphisms {
        let ws = match m {
            AnyMorphism::Poset(m) => m.describe_violations(&m.validate()),
            AnyMorphism::Simp(m) => m.describe_violations(&m.validate()),
        };
        lines.push(Line::new("validate", &format!("morphism {n}")).failing(ws));
    }
    for p in &inst.points {
        lines.push(Line::new("validate", &format!("point {}", p.name)));
    }
    lines
}

fn require<'a>(value: &'a Option<String>, field: &str, task: &TaskDef) -> Result<&'a str, CliError> {
    value
        .as_deref()
        .ok_or_else(|| CliError::Parse(format!("task `{}` needs `{field}`", task.name)))
}

fn ensure_valid_poset(name: &str, p: &MPoset) -> Result<(), CliError> {
    let v = p.validate();
    if v.is_empty() {
        Ok(())
    } else {
        let names = p.poset().names().to_vec();
        Err(CliError::Validation(format!(
            "poset `{name}` is not valid: {}",
            v.iter().map(|x| x.describe(|i| names[i].clone(), p.group())).collect::<Vec<_>>().join("; ")
        )))
    }
}

fn ensure_valid_complex(name: &str, s: &MSimp) -> Result<(), CliError> {
    let v = s.validate();
    if v.is_empty() {
        Ok(())
    } else {
        Err(CliError::Validation(format!(
            "complex `{name}` is not valid: {}",
            s.describe_violations(&v).join("; ")
        )))
    }
}

fn ensure_valid_morphism(name: &str, m: &AnyMorphism) -> Result<(), CliError> {
    let ws = match m {
        AnyMorphism::Poset(m) => m.describe_violations(&m.validate()),
        AnyMorphism::Simp(m) => m.describe_violations(&m.validate()),
    };
    if ws.is_empty() {
        Ok(())
    } else {
        Err(CliError::Validation(format!("morphism `{name}` is not valid: {}", ws.join("; "))))
    }
}

fn hom_listing<M: HomMorphism>(h: &HomSet<M>, def: impl Fn(&M) -> MorphismDef) -> (Vec<serde_json::Value>, Vec<String>) {
    let json = h
        .morphisms()
        .iter()
        .map(|m| {
            let d = def(m);
            serde_json::json!({ "map": d.map, "lambda": d.lambda })
        })
        .collect();
    let text = h.morphisms().iter().enumerate().map(|(i, m)| format!("#{i} {m}")).collect();
    (json, text)
}

fn hom_line<M: HomMorphism>(
    task: &TaskDef,
    kind: TaskKind,
    h: &HomSet<M>,
    def: impl Fn(&M) -> MorphismDef,
) -> Result<Line, CliError> {
    let (listing, mut text) = hom_listing(h, def);
    let mut line = Line::new(kind_name(kind), &task.name).count("morphisms", h.len());
    let mut data = serde_json::json!({
        "source": task.source,
        "target": task.target,
        "morphisms": listing,
    });
    if kind == TaskKind::Classes {
        let p = homotopy_classes(h, default_relation::<M>())?;
        line = line.count("classes", p.class_count());
        data["class_of"] = serde_json::json!(p.classes());
        data["representatives"] = serde_json::json!(p.representatives());
        data["relation"] = serde_json::json!(format!("{:?}", default_relation::<M>()));
        text = p
            .blocks()
            .iter()
            .enumerate()
            .map(|(c, members)| {
                let ms: Vec<String> = members.iter().map(|&i| format!("#{i}")).collect();
                format!("class {c}: {} (representative {})", ms.join(" "), h.get(p.representatives()[c]))
            })
            .collect();
    }
    line.data = Some(data);
    line.text = text;
    Ok(line)
}

fn run_task(inst: &Instance, task: &TaskDef, kind: TaskKind, args: &Args) -> Result<Vec<Line>, CliError> {
    match kind {
        TaskKind::Validate => Ok(validate_all(inst)),
        TaskKind::Hom | TaskKind::Classes => {
            let s = require(&task.source, "source", task)?;
            let t = require(&task.target, "target", task)?;
            if let (Some(x), Some(y)) = (inst.poset(s), inst.poset(t)) {
                ensure_valid_poset(s, x)?;
                ensure_valid_poset(t, y)?;
                let h = enumerate_hom_poset(x, y, args.cap)?;
                Ok(vec![hom_line(task, kind, &h, |m| poset_morphism_def("", s, t, m))?])
            } else if let (Some(x), Some(y)) = (inst.complex(s), inst.complex(t)) {
                ensure_valid_complex(s, x)?;
                ensure_valid_complex(t, y)?;
                let h = enumerate_hom_simp(x, y, args.cap)?;
                Ok(vec![hom_line(task, kind, &h, |m| simp_morphism_def("", s, t, m))?])
            } else {
                Err(CliError::Parse(format!(
                    "task `{}`: `{s}` and `{t}` must both be posets or both be complexes",
                    task.name
                )))
            }
        }
        TaskKind::Sigma => sigma_task(inst, task),
        TaskKind::Pi => pi_task(inst, task),
        TaskKind::Realize => realize_task(inst, task, args),
    }
}

fn sigma_task(inst: &Instance, task: &TaskDef) -> Result<Vec<Line>, CliError> {
    let mut line = Line::new("sigma", &task.name);
    let mut data = serde_json::Map::new();
    if let Some(o) = &task.object {
        let p = inst.poset(o).ok_or_else(|| CliError::Parse(format!("unknown poset `{o}`")))?;
        ensure_valid_poset(o, p)?;
        let s = sigma_obj(p)?;
        let ws = s.describe_violations(&s.validate());
        line = line.count("simplices", s.len()).failing(ws);
        let def = complex_def(&format!("Sigma({o})"), &s);
        line.text.push(serde_json::to_string(&def).unwrap());
        data.insert("object".into(), serde_json::to_value(def).unwrap());
    }
    if let Some(mn) = &task.morphism {
        let Some(AnyMorphism::Poset(m)) = inst.morphism(mn) else {
            return Err(CliError::Parse(format!("`{mn}` is not a poset morphism")));
        };
        ensure_valid_morphism(mn, &AnyMorphism::Poset(m.clone()))?;
        let src = Arc::new(sigma_obj(m.source())?);
        let dst = Arc::new(sigma_obj(m.target())?);
        let sm = sigma_mor_between(m, &src, &dst)?;
        let ws = sm.describe_violations(&sm.validate());
        line = line.failing(ws);
        let (sn, tn) = (inst.object_name_of_poset(m.source()), inst.object_name_of_poset(m.target()));
        let def = simp_morphism_def(&format!("Sigma({mn})"), &format!("Sigma({sn})"), &format!("Sigma({tn})"), &sm);
        line.text.push(serde_json::to_string(&def).unwrap());
        data.insert("morphism".into(), serde_json::to_value(def).unwrap());
    }
    if data.is_empty() {
        return Err(CliError::Parse(format!("task `{}` needs `object` or `morphism`", task.name)));
    }
    line.data = Some(serde_json::Value::Object(data));
    Ok(vec![line])
}

fn pi_task(inst: &Instance, task: &TaskDef) -> Result<Vec<Line>, CliError> {
    let mut line = Line::new("pi", &task.name);
    let mut data = serde_json::Map::new();
    if let Some(o) = &task.object {
        let s = inst.complex(o).ok_or_else(|| CliError::Parse(format!("unknown complex `{o}`")))?;
        ensure_valid_complex(o, s)?;
        let p = pi_obj(s);
        line = line.count("elements", p.len());
        let def = poset_def(&format!("Pi({o})"), &p);
        line.text.push(serde_json::to_string(&def).unwrap());
        data.insert("object".into(), serde_json::to_value(def).unwrap());
    }
    if let Some(mn) = &task.morphism {
        let Some(AnyMorphism::Simp(m)) = inst.morphism(mn) else {
            return Err(CliError::Parse(format!("`{mn}` is not a simplicial morphism")));
        };
        ensure_valid_morphism(mn, &AnyMorphism::Simp(m.clone()))?;
        let src = Arc::new(pi_obj(m.source()));
        let dst = Arc::new(pi_obj(m.target()));
        let pm = pi_mor_between(m, &src, &dst)?;
        line = line.failing(pm.describe_violations(&pm.validate()));
        let (sn, tn) = (inst.object_name_of_complex(m.source()), inst.object_name_of_complex(m.target()));
        let def = poset_morphism_def(&format!("Pi({mn})"), &format!("Pi({sn})"), &format!("Pi({tn})"), &pm);
        line.text.push(serde_json::to_string(&def).unwrap());
        data.insert("morphism".into(), serde_json::to_value(def).unwrap());
    }
    if data.is_empty() {
        return Err(CliError::Parse(format!("task `{}` needs `object` or `morphism`", task.name)));
    }
    line.data = Some(serde_json::Value::Object(data));
    Ok(vec![line])
}

fn chosen_convention(args: &Args) -> Result<(Convention, serde_json::Value), CliError> {
    match args.convention.choice() {
        ConventionChoice::Fixed(c) => Ok((c, serde_json::json!({ "convention": c, "selected_by": "flag" }))),
        ConventionChoice::Auto => {
            let probe = realization::select_convention();
            let failures: BTreeMap<String, usize> = probe.failures.iter().map(|(c, n)| (c.to_string(), *n)).collect();
            let c = probe
                .chosen
                .ok_or_else(|| CliError::Validation(format!("no realization convention passes the probe: {failures:?}")))?;
            Ok((c, serde_json::json!({ "convention": c, "selected_by": "probe", "probe_failures": failures })))
        }
    }
}

fn simp_morphism<'a>(inst: &'a Instance, name: &str) -> Result<&'a MSimpMorphism, CliError> {
    match inst.morphism(name) {
        Some(AnyMorphism::Simp(m)) => {
            ensure_valid_morphism(name, &AnyMorphism::Simp(m.clone()))?;
            Ok(m)
        }
        _ => Err(CliError::Parse(format!("`{name}` is not a simplicial morphism"))),
    }
}

fn realize_task(inst: &Instance, task: &TaskDef, args: &Args) -> Result<Vec<Line>, CliError> {
    let (convention, conv_data) = chosen_convention(args)?;
    let mut lines = Vec::new();
    if let Some(o) = &task.object {
        let s = inst.complex(o).ok_or_else(|| CliError::Parse(format!("unknown complex `{o}`")))?;
        ensure_valid_complex(o, s)?;
        let mut ws = realization::check_canonical(s);
        ws.extend(realization::check_fibers(s));
        ws.extend(realization::check_local_trivializations(s));
        let mut line = Line::new("realize-bundle", &task.name)
            .count("sample_points", realization::sample_points(s.complex()).len())
            .failing(ws);
        line.data = Some(conv_data.clone());
        lines.push(line);
    }
    let point = match &task.point {
        Some(pn) => Some(
            inst.points
                .iter()
                .find(|p| &p.name == pn)
                .ok_or_else(|| CliError::Parse(format!("unknown point `{pn}`")))?,
        ),
        None => None,
    };
    if let Some(mn) = &task.morphism {
        let m = simp_morphism(inst, mn)?;
        let other = task.other.as_deref().map(|o| simp_morphism(inst, o)).transpose()?;
        let mut ws = realization::check_morphism(m, convention);
        if Arc::ptr_eq(m.source(), m.target()) {
            ws.extend(realization::check_functorial(m, m, convention));
        }
        if let Some(b) = other {
            if Arc::ptr_eq(m.target(), b.source()) {
                ws.extend(realization::check_functorial(b, m, convention));
            }
        }
        let homotopic = other.is_some_and(|b| {
            Arc::ptr_eq(m.source(), b.source())
                && Arc::ptr_eq(m.target(), b.target())
                && crate::msimp::maps_contiguous(m.source().complex(), m.target().complex(), m.map(), b.map())
                && m.mcontiguous(b).unwrap_or(false)
        });
        if let (Some(b), true) = (other, homotopic) {
            ws.extend(realization::check_homotopy(m, b, convention));
        }
        let mut line = Line::new("realize-morphism", &task.name).failing(ws);
        if other.is_some() {
            line = line.count("homotopy_checked", homotopic as usize);
        }
        let mut data = conv_data.clone();
        if let Some(p) = point {
            if inst.complex(&p.complex).map(|c| Arc::ptr_eq(c, m.source())) != Some(true) {
                return Err(CliError::Parse(format!("point `{}` does not lie over the source of `{mn}`", p.name)));
            }
            let tname = inst.object_name_of_complex(m.target());
            let image = realize_morphism_point(m, &p.point, convention).map_err(|e| CliError::Validation(e.to_string()))?;
            data["image"] = serde_json::to_value(point_def("image", &tname, m.target(), &image)).unwrap();
            line.text.push(format!("image: {}", image.describe(m.target())));
            if let (Some(b), true) = (other, homotopic) {
                let t = match &task.time {
                    Some(s) => RationalTime::new(parse_rational(s, "time")?).map_err(|e| CliError::Parse(e.to_string()))?,
                    None => RationalTime::half(),
                };
                let h = homotopy_point(m, b, &p.point, t).map_err(|e| CliError::Validation(e.to_string()))?;
                data["homotopy"] = serde_json::to_value(point_def("homotopy", &tname, m.target(), &h)).unwrap();
                data["time"] = serde_json::json!(t.value().to_string());
                line.text.push(format!("H at t = {}: {}", t.value(), h.describe(m.target())));
            }
        }
        line.data = Some(data);
        lines.push(line);
    }
    if lines.is_empty() {
        return Err(CliError::Parse(format!("task `{}` needs `object` or `morphism`", task.name)));
    }
    Ok(lines)
}

fn check_lemmas(args: &Args) -> Result<Vec<Emitted>, CliError> {
    let batteries = match &args.input {
        None => fixtures::full_battery(),
        Some(_) => {
            let inst = read_instance(args)?;
            for p in &inst.posets {
                ensure_valid_poset(&p.name, &p.object)?;
            }
            for c in &inst.complexes {
                ensure_valid_complex(&c.name, &c.object)?;
            }
            let mut batteries = vec![Battery {
                group: inst.group.clone(),
                posets: inst.posets.clone(),
                complexes: inst.complexes.clone(),
            }];
            // The degeneration checks need the same shapes over the trivial group.
            if !inst.group.is_trivial() {
                let one = Arc::new(Group::trivial());
                batteries.push(Battery {
                    posets: inst
                        .posets
                        .iter()
                        .map(|p| Named {
                            name: p.name.clone(),
                            object: Arc::new(MPoset::trivial(one.clone(), p.object.poset().clone())),
                        })
                        .collect(),
                    complexes: inst
                        .complexes
                        .iter()
                        .map(|c| Named {
                            name: c.name.clone(),
                            object: Arc::new(MSimp::trivial(one.clone(), c.object.complex().clone())),
                        })
                        .collect(),
                    group: one,
                });
            }
            batteries
        }
    };
    let contexts = lemmas::contexts_for(batteries, args.cap);
    let lines = lemmas::run_all(&contexts, args.convention.choice());
    Ok(lines.into_iter().map(Emitted::Lemma).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    const CHAIN: &str = r#"{
        "group": {"kind": "cyclic-product", "orders": [2]},
        "posets": [
            {"name": "X", "elements": ["x0", "x1"], "covers": [["x0", "x1"]],
             "labels": [{"from": "x0", "to": "x1", "value": [1]}]},
            {"name": "Y", "elements": ["y0", "y1"], "covers": [["y0", "y1"]]}
        ],
        "morphisms": [
            {"name": "m", "source": "X", "target": "Y", "map": {"x0": "y0", "x1": "y1"},
             "lambda": [{"at": "x0", "value": [1]}]}
        ],
        "tasks": [{"name": "h", "command": "hom", "source": "X", "target": "Y"}]
    }"#;

    #[test]
    fn parse_and_round_trip() {
        let inst = parse_instance(CHAIN).unwrap();
        assert_eq!(inst.posets.len(), 2);
        let AnyMorphism::Poset(m) = inst.morphism("m").unwrap() else { panic!() };
        assert!(m.is_valid());
        let file = to_file(&inst);
        let again = resolve(&file).unwrap();
        assert_eq!(to_file(&again), file);
        assert_eq!(*again.posets[0].object, *inst.posets[0].object);
    }

    #[test]
    fn bad_references_are_parse_errors() {
        let bad = CHAIN.replace("\"x1\": \"y1\"", "\"x1\": \"nope\"");
        assert_eq!(parse_instance(&bad).unwrap_err().exit_code(), EXIT_PARSE);
        assert_eq!(parse_instance("{").unwrap_err().exit_code(), EXIT_PARSE);
    }

    #[test]
    fn elements_by_index_or_residues() {
        let g = Group::cyclic_product(&[2, 3]).unwrap();
        let a = parse_elem(&g, &ElemRepr::Residues(vec![1, 2])).unwrap();
        assert_eq!(parse_elem(&g, &ElemRepr::Index(a.index())).unwrap(), a);
        assert_eq!(write_elem(&g, a), ElemRepr::Residues(vec![1, 2]));
        let s3 = Group::symmetric3();
        assert_eq!(write_elem(&s3, s3.elem(4).unwrap()), ElemRepr::Index(4));
    }
}
