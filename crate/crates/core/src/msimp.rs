//! A-monomial simplicial complexes `(S, 𝒮, l)`, their morphisms, contiguity
//! and the natural transformation `ι` attached to a contiguous pair.

use std::collections::{HashMap, HashSet};
use std::fmt;
use std::sync::Arc;

use thiserror::Error;

use crate::group::{Elem, Group};
use crate::mposet::{same_object, LabelViolation, MPoset, MorphismError, Poset, StructureError};

/// Upper bound on the number of vertices of a complex.
pub const MAX_VERTICES: usize = 64;

/// A finite set of vertex indices, stored as a bit mask.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Simplex(u64);

impl Simplex {
    pub fn from_vertices<I: IntoIterator<Item = usize>>(vertices: I) -> Simplex {
        Simplex(vertices.into_iter().fold(0u64, |acc, v| acc | (1u64 << v)))
    }

    pub fn singleton(v: usize) -> Simplex {
        Simplex(1u64 << v)
    }

    pub fn bits(self) -> u64 {
        self.0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn contains(self, v: usize) -> bool {
        v < 64 && self.0 & (1u64 << v) != 0
    }

    pub fn is_subset(self, other: Simplex) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn union(self, other: Simplex) -> Simplex {
        Simplex(self.0 | other.0)
    }

    pub fn vertices(self) -> impl Iterator<Item = usize> {
        let bits = self.0;
        (0..64).filter(move |v| bits & (1u64 << v) != 0)
    }

    /// Image under a vertex map.
    pub fn image(self, map: &[usize]) -> Simplex {
        Simplex::from_vertices(self.vertices().map(|v| map[v]))
    }

    /// Canonical sort key: size first, then the sorted vertex list.
    fn key(self) -> (usize, Vec<usize>) {
        (self.len(), self.vertices().collect())
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ComplexError {
    #[error("duplicate vertex `{0}`")]
    DuplicateVertex(String),
    #[error("facet mentions unknown vertex `{0}`")]
    UnknownVertex(String),
    #[error("empty facet")]
    EmptyFacet,
    #[error("too many vertices ({0}); at most {MAX_VERTICES} are supported")]
    TooManyVertices(usize),
    #[error("{0} is not a simplex of the complex")]
    NotASimplex(String),
}

/// A finite simplicial complex with simplices in canonical order (by size,
/// then lexicographically by sorted vertex indices).
#[derive(Clone, Debug)]
pub struct SimplicialComplex {
    vertices: Vec<String>,
    simplices: Vec<Simplex>,
    index: HashMap<Simplex, usize>,
}

impl PartialEq for SimplicialComplex {
    fn eq(&self, other: &Self) -> bool {
        self.vertices == other.vertices && self.simplices == other.simplices
    }
}

impl Eq for SimplicialComplex {}

impl SimplicialComplex {
    /// Downward closure of the facets together with every singleton.
    pub fn new(vertices: Vec<String>, facets: &[Vec<usize>]) -> Result<SimplicialComplex, ComplexError> {
        if vertices.len() > MAX_VERTICES {
            return Err(ComplexError::TooManyVertices(vertices.len()));
        }
        let mut seen = HashSet::new();
        for v in &vertices {
            if !seen.insert(v.as_str()) {
                return Err(ComplexError::DuplicateVertex(v.clone()));
            }
        }
        let mut all: HashSet<Simplex> = (0..vertices.len()).map(Simplex::singleton).collect();
        for facet in facets {
            if facet.is_empty() {
                return Err(ComplexError::EmptyFacet);
            }
            if let Some(&v) = facet.iter().find(|&&v| v >= vertices.len()) {
                return Err(ComplexError::UnknownVertex(format!("#{v}")));
            }
            let top = Simplex::from_vertices(facet.iter().copied());
            // Enumerate nonempty subsets of the facet mask.
            let mut sub = top.0;
            while sub != 0 {
                all.insert(Simplex(sub));
                sub = (sub - 1) & top.0;
            }
        }
        let mut simplices: Vec<Simplex> = all.into_iter().collect();
        simplices.sort_by_key(|s| s.key());
        let index = simplices.iter().enumerate().map(|(i, &s)| (s, i)).collect();
        Ok(SimplicialComplex {
            vertices,
            simplices,
            index,
        })
    }

    pub fn from_names(vertices: &[&str], facets: &[&[&str]]) -> Result<SimplicialComplex, ComplexError> {
        let names: Vec<String> = vertices.iter().map(|s| s.to_string()).collect();
        let facets = facets
            .iter()
            .map(|f| {
                f.iter()
                    .map(|v| {
                        vertices
                            .iter()
                            .position(|w| w == v)
                            .ok_or_else(|| ComplexError::UnknownVertex(v.to_string()))
                    })
                    .collect::<Result<Vec<_>, _>>()
            })
            .collect::<Result<Vec<_>, _>>()?;
        SimplicialComplex::new(names, &facets)
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn vertex_names(&self) -> &[String] {
        &self.vertices
    }

    pub fn vertex_index(&self, name: &str) -> Option<usize> {
        self.vertices.iter().position(|v| v == name)
    }

    pub fn len(&self) -> usize {
        self.simplices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.simplices.is_empty()
    }

    pub fn simplices(&self) -> &[Simplex] {
        &self.simplices
    }

    pub fn simplex(&self, i: usize) -> Simplex {
        self.simplices[i]
    }

    pub fn index_of(&self, s: Simplex) -> Option<usize> {
        self.index.get(&s).copied()
    }

    pub fn contains(&self, s: Simplex) -> bool {
        self.index.contains_key(&s)
    }

    /// Index of the singleton `{v}`.
    pub fn vertex_simplex(&self, v: usize) -> usize {
        self.index[&Simplex::singleton(v)]
    }

    /// Maximal simplices in canonical order.
    pub fn facets(&self) -> Vec<Simplex> {
        self.simplices
            .iter()
            .copied()
            .filter(|&s| !self.simplices.iter().any(|&t| t != s && s.is_subset(t)))
            .collect()
    }

    pub fn simplex_name(&self, s: Simplex) -> String {
        let names: Vec<&str> = s.vertices().map(|v| self.vertices[v].as_str()).collect();
        format!("{{{}}}", names.join(","))
    }

    /// The simplices ordered by inclusion, named as `{a,b}`.
    pub fn face_poset(&self) -> Poset {
        let n = self.len();
        let mut leq = vec![false; n * n];
        for (i, &s) in self.simplices.iter().enumerate() {
            for (j, &t) in self.simplices.iter().enumerate() {
                leq[i * n + j] = s.is_subset(t);
            }
        }
        let names = self.simplices.iter().map(|&s| self.simplex_name(s)).collect();
        Poset::from_matrix(names, leq)
    }

    /// Whether a vertex map into `target` sends every simplex to a simplex.
    pub fn is_simplicial(&self, target: &SimplicialComplex, map: &[usize]) -> bool {
        self.simplices.iter().all(|s| target.contains(s.image(map)))
    }
}

/// An A-monomial simplicial complex. The labeling is stored as an A-monomial
/// structure on the face poset, whose elements are the simplices in
/// canonical order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MSimp {
    complex: SimplicialComplex,
    faces: MPoset,
}

impl MSimp {
    /// Labels on some inclusions `(σ, σ')` by simplex index, closed as in
    /// [`MPoset::close`].
    pub fn close(
        group: Arc<Group>,
        complex: SimplicialComplex,
        given: &HashMap<(usize, usize), Elem>,
    ) -> Result<MSimp, StructureError> {
        let faces = MPoset::close(group, complex.face_poset(), given)?;
        Ok(MSimp { complex, faces })
    }

    /// Labels on every inclusion, diagonal included.
    pub fn new(
        group: Arc<Group>,
        complex: SimplicialComplex,
        labels: &HashMap<(usize, usize), Elem>,
    ) -> Result<MSimp, StructureError> {
        let faces = MPoset::new(group, complex.face_poset(), labels)?;
        Ok(MSimp { complex, faces })
    }

    pub fn trivial(group: Arc<Group>, complex: SimplicialComplex) -> MSimp {
        let faces = MPoset::trivial(group, complex.face_poset());
        MSimp { complex, faces }
    }

    pub fn group(&self) -> &Arc<Group> {
        self.faces.group()
    }

    pub fn complex(&self) -> &SimplicialComplex {
        &self.complex
    }

    /// The labeled face poset.
    pub fn faces(&self) -> &MPoset {
        &self.faces
    }

    pub fn len(&self) -> usize {
        self.complex.len()
    }

    pub fn is_empty(&self) -> bool {
        self.complex.is_empty()
    }

    /// `l(σ, σ')` for simplex indices with `σ ⊆ σ'`.
    pub fn label(&self, s: usize, t: usize) -> Elem {
        self.faces.label(s, t)
    }

    /// `l(σ, σ')` for simplices given as sets. Panics unless both are
    /// simplices and `σ ⊆ σ'`.
    pub fn label_of(&self, s: Simplex, t: Simplex) -> Elem {
        self.faces
            .label(self.complex.index[&s], self.complex.index[&t])
    }

    pub fn validate(&self) -> Vec<LabelViolation> {
        self.faces.validate()
    }

    pub fn describe_violations(&self, violations: &[LabelViolation]) -> Vec<String> {
        self.faces.describe_violations(violations)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SMorphismViolation {
    NotSimplicial { simplex: usize },
    /// `m(f(σ),f(σ'))·λ(σ) ≠ λ(σ')·l(σ,σ')`.
    Naturality {
        lower: usize,
        upper: usize,
        left: Elem,
        right: Elem,
    },
}

/// A morphism `(f, λ)` of A-monomial simplicial complexes: a vertex map and
/// one group element per source simplex.
#[derive(Clone, Debug)]
pub struct MSimpMorphism {
    source: Arc<MSimp>,
    target: Arc<MSimp>,
    map: Vec<usize>,
    lambda: Vec<Elem>,
    // Index of f(σ) in the target, when it is a simplex.
    images: Vec<Option<usize>>,
}

impl PartialEq for MSimpMorphism {
    fn eq(&self, other: &Self) -> bool {
        self.map == other.map
            && self.lambda == other.lambda
            && same_object(&self.source, &other.source)
            && same_object(&self.target, &other.target)
    }
}

impl Eq for MSimpMorphism {}

impl std::hash::Hash for MSimpMorphism {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.map.hash(state);
        self.lambda.hash(state);
    }
}

impl PartialOrd for MSimpMorphism {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for MSimpMorphism {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        (&self.map, &self.lambda).cmp(&(&other.map, &other.lambda))
    }
}

impl MSimpMorphism {
    pub fn new(
        source: Arc<MSimp>,
        target: Arc<MSimp>,
        map: Vec<usize>,
        lambda: Vec<Elem>,
    ) -> Result<MSimpMorphism, MorphismError> {
        if source.group() != target.group() {
            return Err(MorphismError::GroupMismatch);
        }
        let nv = source.complex.vertex_count();
        if map.len() != nv {
            return Err(MorphismError::MapLength {
                expected: nv,
                got: map.len(),
            });
        }
        if lambda.len() != source.len() {
            return Err(MorphismError::LambdaLength {
                expected: source.len(),
                got: lambda.len(),
            });
        }
        if let Some(v) = map.iter().position(|&w| w >= target.complex.vertex_count()) {
            return Err(MorphismError::OutOfRange {
                element: source.complex.vertices[v].clone(),
                image: map[v],
            });
        }
        if let Some(v) = lambda.iter().find(|v| !source.group().contains(**v)) {
            return Err(MorphismError::ForeignElement(v.index()));
        }
        Ok(Self::assemble(source, target, map, lambda))
    }

    pub(crate) fn assemble(
        source: Arc<MSimp>,
        target: Arc<MSimp>,
        map: Vec<usize>,
        lambda: Vec<Elem>,
    ) -> MSimpMorphism {
        let images = source
            .complex
            .simplices
            .iter()
            .map(|s| target.complex.index_of(s.image(&map)))
            .collect();
        MSimpMorphism {
            source,
            target,
            map,
            lambda,
            images,
        }
    }

    pub fn identity(object: &Arc<MSimp>) -> MSimpMorphism {
        let lambda = vec![object.group().identity(); object.len()];
        let map = (0..object.complex.vertex_count()).collect();
        Self::assemble(object.clone(), object.clone(), map, lambda)
    }

    pub fn source(&self) -> &Arc<MSimp> {
        &self.source
    }

    pub fn target(&self) -> &Arc<MSimp> {
        &self.target
    }

    pub fn map(&self) -> &[usize] {
        &self.map
    }

    pub fn lambda(&self) -> &[Elem] {
        &self.lambda
    }

    pub fn group(&self) -> &Arc<Group> {
        self.source.group()
    }

    /// Index of `f(σ)` in the target, or `None` if the image is not a simplex.
    pub fn image_index(&self, simplex: usize) -> Option<usize> {
        self.images[simplex]
    }

    /// Simplex indices of `f(σ)` for every source simplex. Panics if the
    /// vertex map is not simplicial.
    pub fn simplex_map(&self) -> Vec<usize> {
        self.images
            .iter()
            .map(|i| i.expect("vertex map is simplicial"))
            .collect()
    }

    pub fn is_simplicial(&self) -> bool {
        self.images.iter().all(Option::is_some)
    }

    pub fn validate(&self) -> Vec<SMorphismViolation> {
        let g = self.source.group();
        let mut out: Vec<SMorphismViolation> = self
            .images
            .iter()
            .enumerate()
            .filter(|(_, i)| i.is_none())
            .map(|(simplex, _)| SMorphismViolation::NotSimplicial { simplex })
            .collect();
        if !out.is_empty() {
            return out;
        }
        let src = self.source.faces.poset();
        for (s, t) in src.comparable_pairs() {
            let (fs, ft) = (self.images[s].unwrap(), self.images[t].unwrap());
            let left = g.mul(self.target.label(fs, ft), self.lambda[s]);
            let right = g.mul(self.lambda[t], self.source.label(s, t));
            if left != right {
                out.push(SMorphismViolation::Naturality {
                    lower: s,
                    upper: t,
                    left,
                    right,
                });
            }
        }
        out
    }

    pub fn describe_violations(&self, violations: &[SMorphismViolation]) -> Vec<String> {
        let g = self.source.group();
        let name = |i: usize| self.source.complex.simplex_name(self.source.complex.simplex(i));
        violations
            .iter()
            .map(|v| match *v {
                SMorphismViolation::NotSimplicial { simplex } => format!(
                    "simplicial: image of {} is not a simplex of the target",
                    name(simplex)
                ),
                SMorphismViolation::Naturality {
                    lower,
                    upper,
                    left,
                    right,
                } => format!(
                    "naturality ({},{}): m(f s,f t)*lambda(s) = {} != lambda(t)*l(s,t) = {}",
                    name(lower),
                    name(upper),
                    g.format(left),
                    g.format(right)
                ),
            })
            .collect()
    }

    pub fn is_valid(&self) -> bool {
        self.validate().is_empty()
    }

    /// `outer ∘ inner = (e f, σ ↦ μ(f(σ))·λ(σ))`.
    pub fn compose(outer: &MSimpMorphism, inner: &MSimpMorphism) -> Result<MSimpMorphism, MorphismError> {
        if !same_object(&inner.target, &outer.source) {
            return Err(MorphismError::NotComposable);
        }
        if !inner.is_simplicial() {
            return Err(MorphismError::Precondition("inner map is not simplicial".into()));
        }
        let g = inner.group();
        let map = inner.map.iter().map(|&v| outer.map[v]).collect();
        let lambda = inner
            .images
            .iter()
            .zip(&inner.lambda)
            .map(|(fs, &l)| g.mul(outer.lambda[fs.unwrap()], l))
            .collect();
        Ok(Self::assemble(
            inner.source.clone(),
            outer.target.clone(),
            map,
            lambda,
        ))
    }

    fn check_same_hom(&self, other: &MSimpMorphism) -> Result<(), MorphismError> {
        if same_object(&self.source, &other.source) && same_object(&self.target, &other.target) {
            Ok(())
        } else {
            Err(MorphismError::HomSetMismatch)
        }
    }

    /// Spanier contiguity of the underlying vertex maps.
    pub fn contiguous(&self, other: &MSimpMorphism) -> Result<bool, MorphismError> {
        self.check_same_hom(other)?;
        Ok(maps_contiguous(
            &self.source.complex,
            &self.target.complex,
            &self.map,
            &other.map,
        ))
    }

    /// `ι_{f−f',m}` for the vertex maps of `self` and `other`.
    pub fn iota(&self, other: &MSimpMorphism) -> Result<Vec<Elem>, MorphismError> {
        self.check_same_hom(other)?;
        iota_contiguity(&self.source.complex, &self.target, &self.map, &other.map)
    }

    /// `(f,λ) − (f',λ')`: contiguity and `ι∘λ = λ'`.
    pub fn mcontiguous(&self, other: &MSimpMorphism) -> Result<bool, MorphismError> {
        self.check_same_hom(other)?;
        Ok(self.mcontiguous_unchecked(other))
    }

    pub(crate) fn mcontiguous_unchecked(&self, other: &MSimpMorphism) -> bool {
        let g = self.group();
        let t = &self.target;
        self.source.complex.simplices.iter().enumerate().all(|(i, s)| {
            let fs = s.image(&self.map);
            let gs = s.image(&other.map);
            let Some(u) = t.complex.index_of(fs.union(gs)) else {
                return false;
            };
            let (Some(fi), Some(gi)) = (t.complex.index_of(fs), t.complex.index_of(gs)) else {
                return false;
            };
            g.mul(t.label(fi, u), self.lambda[i]) == g.mul(t.label(gi, u), other.lambda[i])
        })
    }
}

impl fmt::Display for MSimpMorphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let g = self.group();
        let src = &self.source.complex;
        let dst = &self.target.complex;
        let verts: Vec<String> = (0..self.map.len())
            .map(|v| format!("{}->{}", src.vertices[v], dst.vertices[self.map[v]]))
            .collect();
        let lams: Vec<String> = self
            .lambda
            .iter()
            .enumerate()
            .map(|(i, &l)| format!("{}:{}", src.simplex_name(src.simplex(i)), g.format(l)))
            .collect();
        write!(f, "[{}; {}]", verts.join(", "), lams.join(", "))
    }
}

/// `f(σ) ∪ f'(σ) ∈ 𝒯` for every `σ ∈ 𝒮`.
pub fn maps_contiguous(
    source: &SimplicialComplex,
    target: &SimplicialComplex,
    f: &[usize],
    g: &[usize],
) -> bool {
    source
        .simplices
        .iter()
        .all(|s| target.contains(s.image(f).union(s.image(g))))
}

/// `ι(σ) = m(f'(σ), f(σ)∪f'(σ))⁻¹ · m(f(σ), f(σ)∪f'(σ))`, one value per
/// simplex of `source`.
pub fn iota_contiguity(
    source: &SimplicialComplex,
    target: &MSimp,
    f: &[usize],
    g: &[usize],
) -> Result<Vec<Elem>, MorphismError> {
    let grp = target.group();
    source
        .simplices
        .iter()
        .map(|s| {
            let fs = s.image(f);
            let gs = s.image(g);
            let u = fs.union(gs);
            let idx = |x: Simplex| {
                target.complex.index_of(x).ok_or_else(|| {
                    MorphismError::Precondition(format!(
                        "maps are not contiguous at {}",
                        source.simplex_name(*s)
                    ))
                })
            };
            let (fi, gi, ui) = (idx(fs)?, idx(gs)?, idx(u)?);
            Ok(grp.mul(grp.inv(target.label(gi, ui)), target.label(fi, ui)))
        })
        .collect()
}
