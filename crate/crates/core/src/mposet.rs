//! A-monomial posets `(X, l)`, their morphisms `(f, λ)`, the partial order on
//! hom-sets and the height-based refinement of `(f, λ) ≤ (f', λ')`.

use std::collections::{HashMap, HashSet, VecDeque};
use std::fmt;
use std::sync::Arc;

use thiserror::Error;

use crate::group::{Elem, Group};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PosetError {
    #[error("duplicate element `{0}`")]
    DuplicateElement(String),
    #[error("unknown element `{0}`")]
    UnknownElement(String),
    #[error("relation contains a cycle: {}", .0.join(" < "))]
    Cycle(Vec<String>),
}

/// A finite poset with its order relation stored as a full matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Poset {
    names: Vec<String>,
    leq: Vec<bool>,
    covers: Vec<(usize, usize)>,
    heights: Vec<usize>,
}

impl Poset {
    /// Builds the reflexive-transitive closure of `relations` (pairs `x ≤ y`
    /// given by index). Fails if the closure is not antisymmetric.
    pub fn new(names: Vec<String>, relations: &[(usize, usize)]) -> Result<Poset, PosetError> {
        let n = names.len();
        let mut seen = HashSet::new();
        for name in &names {
            if !seen.insert(name.as_str()) {
                return Err(PosetError::DuplicateElement(name.clone()));
            }
        }
        for &(x, y) in relations {
            for i in [x, y] {
                if i >= n {
                    return Err(PosetError::UnknownElement(format!("#{i}")));
                }
            }
        }
        let mut leq = vec![false; n * n];
        for i in 0..n {
            leq[i * n + i] = true;
        }
        for &(x, y) in relations {
            leq[x * n + y] = true;
        }
        for k in 0..n {
            for i in 0..n {
                if !leq[i * n + k] {
                    continue;
                }
                for j in 0..n {
                    if leq[k * n + j] {
                        leq[i * n + j] = true;
                    }
                }
            }
        }
        for x in 0..n {
            for y in x + 1..n {
                if leq[x * n + y] && leq[y * n + x] {
                    return Err(PosetError::Cycle(find_cycle(&names, relations, x, y)));
                }
            }
        }
        Ok(Poset::from_matrix(names, leq))
    }

    /// Convenience constructor from element names and `(lower, upper)` name pairs.
    pub fn from_names(elements: &[&str], relations: &[(&str, &str)]) -> Result<Poset, PosetError> {
        let names: Vec<String> = elements.iter().map(|s| s.to_string()).collect();
        let index = |s: &str| {
            elements
                .iter()
                .position(|e| *e == s)
                .ok_or_else(|| PosetError::UnknownElement(s.to_string()))
        };
        let rel = relations
            .iter()
            .map(|(a, b)| Ok((index(a)?, index(b)?)))
            .collect::<Result<Vec<_>, PosetError>>()?;
        Poset::new(names, &rel)
    }

    /// Wraps an already reflexive, transitive, antisymmetric matrix.
    pub(crate) fn from_matrix(names: Vec<String>, leq: Vec<bool>) -> Poset {
        let n = names.len();
        let mut covers = Vec::new();
        for x in 0..n {
            for y in 0..n {
                if x != y
                    && leq[x * n + y]
                    && !(0..n).any(|z| z != x && z != y && leq[x * n + z] && leq[z * n + y])
                {
                    covers.push((x, y));
                }
            }
        }
        // Longest chain ending at x; elements in any linear extension order.
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by_key(|&x| (0..n).filter(|&y| leq[y * n + x]).count());
        let mut heights = vec![0usize; n];
        for &x in &order {
            heights[x] = (0..n)
                .filter(|&y| y != x && leq[y * n + x])
                .map(|y| heights[y] + 1)
                .max()
                .unwrap_or(0);
        }
        Poset {
            names,
            leq,
            covers,
            heights,
        }
    }

    /// The discrete poset on the given names.
    pub fn discrete(names: Vec<String>) -> Result<Poset, PosetError> {
        Poset::new(names, &[])
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, x: usize) -> &str {
        &self.names[x]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn leq(&self, x: usize, y: usize) -> bool {
        self.leq[x * self.len() + y]
    }

    pub fn lt(&self, x: usize, y: usize) -> bool {
        x != y && self.leq(x, y)
    }

    pub fn comparable(&self, x: usize, y: usize) -> bool {
        self.leq(x, y) || self.leq(y, x)
    }

    /// Hasse diagram edges `(x, y)` with `x ⋖ y`.
    pub fn covers(&self) -> &[(usize, usize)] {
        &self.covers
    }

    /// All pairs `x ≤ y`, including the diagonal.
    pub fn comparable_pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        let n = self.len();
        (0..n).flat_map(move |x| (0..n).filter(move |&y| self.leq(x, y)).map(move |y| (x, y)))
    }

    pub fn height(&self, x: usize) -> Result<usize, PosetError> {
        self.heights
            .get(x)
            .copied()
            .ok_or_else(|| PosetError::UnknownElement(format!("#{x}")))
    }

    pub fn heights(&self) -> &[usize] {
        &self.heights
    }

    /// Maximum height over all elements; 0 for the empty poset.
    pub fn max_height(&self) -> usize {
        self.heights.iter().copied().max().unwrap_or(0)
    }

    pub fn is_discrete(&self) -> bool {
        self.covers.is_empty()
    }

    /// Connected components of the comparability graph, each sorted, in order
    /// of their least element.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let n = self.len();
        let mut comp = vec![usize::MAX; n];
        let mut out = Vec::new();
        for start in 0..n {
            if comp[start] != usize::MAX {
                continue;
            }
            let id = out.len();
            let mut members = vec![start];
            comp[start] = id;
            let mut queue = VecDeque::from([start]);
            while let Some(x) = queue.pop_front() {
                for y in 0..n {
                    if comp[y] == usize::MAX && self.comparable(x, y) {
                        comp[y] = id;
                        members.push(y);
                        queue.push_back(y);
                    }
                }
            }
            members.sort_unstable();
            out.push(members);
        }
        out
    }

    /// Elements sorted by height, then index.
    pub fn linear_extension(&self) -> Vec<usize> {
        let mut order: Vec<usize> = (0..self.len()).collect();
        order.sort_by_key(|&x| (self.heights[x], x));
        order
    }
}

fn find_cycle(names: &[String], relations: &[(usize, usize)], x: usize, y: usize) -> Vec<String> {
    let n = names.len();
    let mut adj = vec![Vec::new(); n];
    for &(a, b) in relations {
        if a != b {
            adj[a].push(b);
        }
    }
    let path = |from: usize, to: usize| -> Vec<usize> {
        let mut prev = vec![usize::MAX; n];
        let mut queue = VecDeque::from([from]);
        prev[from] = from;
        while let Some(u) = queue.pop_front() {
            if u == to {
                break;
            }
            for &v in &adj[u] {
                if prev[v] == usize::MAX {
                    prev[v] = u;
                    queue.push_back(v);
                }
            }
        }
        let mut p = vec![to];
        let mut cur = to;
        while cur != from {
            cur = prev[cur];
            p.push(cur);
        }
        p.reverse();
        p
    };
    let mut cycle = path(x, y);
    cycle.extend(path(y, x).into_iter().skip(1));
    cycle.into_iter().map(|i| names[i].clone()).collect()
}

/// Dense table of labels on comparable pairs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Labels {
    n: usize,
    values: Vec<Option<Elem>>,
}

impl Labels {
    fn get(&self, x: usize, y: usize) -> Option<Elem> {
        self.values[x * self.n + y]
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum StructureError {
    #[error("no label for comparable pair ({0}, {1})")]
    MissingLabel(String, String),
    #[error("label given for incomparable pair ({0}, {1})")]
    NotComparable(String, String),
    #[error("label value {0} is not an element of the group")]
    ForeignElement(usize),
}

/// A failed condition on a labeling, with the offending elements.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LabelViolation {
    /// `l(x,x) ≠ 1`.
    Reflexive { x: usize, value: Elem },
    /// `l(y,z)·l(x,y) ≠ l(x,z)` for `x ≤ y ≤ z`.
    Cocycle {
        x: usize,
        y: usize,
        z: usize,
        composite: Elem,
        direct: Elem,
    },
}

impl LabelViolation {
    pub fn describe(&self, name: impl Fn(usize) -> String, group: &Group) -> String {
        match *self {
            LabelViolation::Reflexive { x, value } => format!(
                "reflexive: l({0},{0}) = {1} != 1",
                name(x),
                group.format(value)
            ),
            LabelViolation::Cocycle {
                x,
                y,
                z,
                composite,
                direct,
            } => format!(
                "cocycle ({x},{y},{z}): l({y},{z})*l({x},{y}) = {} != l({x},{z}) = {}",
                group.format(composite),
                group.format(direct),
                x = name(x),
                y = name(y),
                z = name(z)
            ),
        }
    }
}

/// An A-monomial poset: a finite poset with a labeling of its comparable
/// pairs by group elements.
#[derive(Clone, Debug)]
pub struct MPoset {
    group: Arc<Group>,
    poset: Poset,
    labels: Labels,
}

impl PartialEq for MPoset {
    fn eq(&self, other: &Self) -> bool {
        self.group == other.group && self.poset == other.poset && self.labels == other.labels
    }
}

impl Eq for MPoset {}

impl MPoset {
    /// Builds from a label on every comparable pair, diagonal included.
    pub fn new(
        group: Arc<Group>,
        poset: Poset,
        labels: &HashMap<(usize, usize), Elem>,
    ) -> Result<MPoset, StructureError> {
        let n = poset.len();
        let mut values = vec![None; n * n];
        for (&(x, y), &v) in labels {
            if x >= n || y >= n || !poset.leq(x, y) {
                let nm = |i: usize| poset.names.get(i).cloned().unwrap_or(format!("#{i}"));
                return Err(StructureError::NotComparable(nm(x), nm(y)));
            }
            if !group.contains(v) {
                return Err(StructureError::ForeignElement(v.index()));
            }
            values[x * n + y] = Some(v);
        }
        for (x, y) in poset.comparable_pairs() {
            if values[x * n + y].is_none() {
                return Err(StructureError::MissingLabel(
                    poset.name(x).to_string(),
                    poset.name(y).to_string(),
                ));
            }
        }
        Ok(MPoset {
            group,
            poset,
            labels: Labels { n, values },
        })
    }

    /// Builds from labels on some comparable pairs (typically covers). The
    /// diagonal defaults to the identity, unlisted covers default to the
    /// identity, and every other pair is filled by composing along a maximal
    /// chain of covers. Given values always take precedence, so an
    /// inconsistent input shows up in [`MPoset::validate`].
    pub fn close(
        group: Arc<Group>,
        poset: Poset,
        given: &HashMap<(usize, usize), Elem>,
    ) -> Result<MPoset, StructureError> {
        let n = poset.len();
        let mut full: HashMap<(usize, usize), Elem> = given.clone();
        for x in 0..n {
            full.entry((x, x)).or_insert(group.identity());
        }
        for &(x, y) in poset.covers() {
            full.entry((x, y)).or_insert(group.identity());
        }
        // Fill pairs by increasing height difference: l(x,y) = l(c,y)·l(x,c)
        // through the first upper cover c of x below y.
        let mut pairs: Vec<(usize, usize)> = poset.comparable_pairs().filter(|(x, y)| x != y).collect();
        pairs.sort_by_key(|&(x, y)| (poset.heights[y] - poset.heights[x], x, y));
        for (x, y) in pairs {
            if full.contains_key(&(x, y)) {
                continue;
            }
            let c = poset
                .covers()
                .iter()
                .find(|&&(a, c)| a == x && poset.leq(c, y))
                .map(|&(_, c)| c)
                .expect("strict pair has a cover step");
            let upper = full[&(c, y)];
            let lower = full[&(x, c)];
            full.insert((x, y), group.mul(upper, lower));
        }
        MPoset::new(group, poset, &full)
    }

    /// All labels equal to the identity.
    pub fn trivial(group: Arc<Group>, poset: Poset) -> MPoset {
        MPoset::close(group, poset, &HashMap::new()).expect("trivial labels are well-formed")
    }

    pub fn group(&self) -> &Arc<Group> {
        &self.group
    }

    pub fn poset(&self) -> &Poset {
        &self.poset
    }

    pub fn len(&self) -> usize {
        self.poset.len()
    }

    pub fn is_empty(&self) -> bool {
        self.poset.is_empty()
    }

    /// `l(x, y)` for `x ≤ y`.
    ///
    /// Panics if the pair is not comparable.
    pub fn label(&self, x: usize, y: usize) -> Elem {
        self.labels
            .get(x, y)
            .unwrap_or_else(|| panic!("label requested for incomparable pair ({x}, {y})"))
    }

    pub fn try_label(&self, x: usize, y: usize) -> Option<Elem> {
        if x < self.len() && y < self.len() {
            self.labels.get(x, y)
        } else {
            None
        }
    }

    /// Checks `l(x,x) = 1` and `l(y,z)·l(x,y) = l(x,z)` for all `x ≤ y ≤ z`.
    pub fn validate(&self) -> Vec<LabelViolation> {
        let g = &*self.group;
        let p = &self.poset;
        let n = p.len();
        let mut out = Vec::new();
        for x in 0..n {
            let v = self.label(x, x);
            if v != g.identity() {
                out.push(LabelViolation::Reflexive { x, value: v });
            }
        }
        for x in 0..n {
            for y in 0..n {
                if !p.leq(x, y) {
                    continue;
                }
                for z in 0..n {
                    if !p.leq(y, z) {
                        continue;
                    }
                    let composite = g.mul(self.label(y, z), self.label(x, y));
                    let direct = self.label(x, z);
                    if composite != direct {
                        out.push(LabelViolation::Cocycle {
                            x,
                            y,
                            z,
                            composite,
                            direct,
                        });
                    }
                }
            }
        }
        out
    }

    pub fn describe_violations(&self, violations: &[LabelViolation]) -> Vec<String> {
        violations
            .iter()
            .map(|v| v.describe(|i| self.poset.name(i).to_string(), &self.group))
            .collect()
    }

    /// Labels listed on the Hasse diagram, which determine the whole labeling
    /// of a valid object.
    pub fn cover_labels(&self) -> Vec<((usize, usize), Elem)> {
        self.poset
            .covers()
            .iter()
            .map(|&(x, y)| ((x, y), self.label(x, y)))
            .collect()
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MorphismError {
    #[error("element map has length {got}, source has {expected} elements")]
    MapLength { expected: usize, got: usize },
    #[error("lambda has length {got}, expected {expected}")]
    LambdaLength { expected: usize, got: usize },
    #[error("element {element} is sent to index {image}, outside the target")]
    OutOfRange { element: String, image: usize },
    #[error("lambda value {0} is not an element of the group")]
    ForeignElement(usize),
    #[error("source and target are labeled in different groups")]
    GroupMismatch,
    #[error("morphisms are not composable: inner target differs from outer source")]
    NotComposable,
    #[error("morphisms do not belong to the same hom-set")]
    HomSetMismatch,
    #[error("precondition failed: {0}")]
    Precondition(String),
}

/// A failed morphism condition.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MorphismViolation {
    NotOrderPreserving { x: usize, y: usize },
    /// `m(f(x),f(y))·λ(x) ≠ λ(y)·l(x,y)`.
    Naturality {
        x: usize,
        y: usize,
        left: Elem,
        right: Elem,
    },
}

pub(crate) fn same_object<T: PartialEq>(a: &Arc<T>, b: &Arc<T>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

/// A morphism `(f, λ): (X, l) → (Y, m)`.
#[derive(Clone, Debug)]
pub struct MPosetMorphism {
    source: Arc<MPoset>,
    target: Arc<MPoset>,
    map: Vec<usize>,
    lambda: Vec<Elem>,
}

impl PartialEq for MPosetMorphism {
    fn eq(&self, other: &Self) -> bool {
        self.map == other.map
            && self.lambda == other.lambda
            && same_object(&self.source, &other.source)
            && same_object(&self.target, &other.target)
    }
}

impl Eq for MPosetMorphism {}

impl std::hash::Hash for MPosetMorphism {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.map.hash(state);
        self.lambda.hash(state);
    }
}

impl PartialOrd for MPosetMorphism {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for MPosetMorphism {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        (&self.map, &self.lambda).cmp(&(&other.map, &other.lambda))
    }
}

impl MPosetMorphism {
    /// Checks shapes and ranges only; use [`MPosetMorphism::validate`] for
    /// order preservation and naturality.
    pub fn new(
        source: Arc<MPoset>,
        target: Arc<MPoset>,
        map: Vec<usize>,
        lambda: Vec<Elem>,
    ) -> Result<MPosetMorphism, MorphismError> {
        if source.group != target.group {
            return Err(MorphismError::GroupMismatch);
        }
        if map.len() != source.len() {
            return Err(MorphismError::MapLength {
                expected: source.len(),
                got: map.len(),
            });
        }
        if lambda.len() != source.len() {
            return Err(MorphismError::LambdaLength {
                expected: source.len(),
                got: lambda.len(),
            });
        }
        if let Some(x) = map.iter().position(|&y| y >= target.len()) {
            return Err(MorphismError::OutOfRange {
                element: source.poset.name(x).to_string(),
                image: map[x],
            });
        }
        if let Some(v) = lambda.iter().find(|v| !source.group.contains(**v)) {
            return Err(MorphismError::ForeignElement(v.index()));
        }
        Ok(MPosetMorphism {
            source,
            target,
            map,
            lambda,
        })
    }

    /// `(id_X, 1)`.
    pub fn identity(object: &Arc<MPoset>) -> MPosetMorphism {
        let n = object.len();
        MPosetMorphism {
            source: object.clone(),
            target: object.clone(),
            map: (0..n).collect(),
            lambda: vec![object.group.identity(); n],
        }
    }

    pub fn source(&self) -> &Arc<MPoset> {
        &self.source
    }

    pub fn target(&self) -> &Arc<MPoset> {
        &self.target
    }

    pub fn map(&self) -> &[usize] {
        &self.map
    }

    pub fn lambda(&self) -> &[Elem] {
        &self.lambda
    }

    pub fn group(&self) -> &Arc<Group> {
        &self.source.group
    }

    /// Order preservation and naturality on every comparable pair.
    pub fn validate(&self) -> Vec<MorphismViolation> {
        let g = &*self.source.group;
        let (src, dst) = (&self.source.poset, &self.target.poset);
        let mut out = Vec::new();
        for (x, y) in src.comparable_pairs() {
            let (fx, fy) = (self.map[x], self.map[y]);
            if !dst.leq(fx, fy) {
                out.push(MorphismViolation::NotOrderPreserving { x, y });
                continue;
            }
            let left = g.mul(self.target.label(fx, fy), self.lambda[x]);
            let right = g.mul(self.lambda[y], self.source.label(x, y));
            if left != right {
                out.push(MorphismViolation::Naturality { x, y, left, right });
            }
        }
        out
    }

    pub fn describe_violations(&self, violations: &[MorphismViolation]) -> Vec<String> {
        let g = &*self.source.group;
        let name = |i: usize| self.source.poset.name(i).to_string();
        violations
            .iter()
            .map(|v| match *v {
                MorphismViolation::NotOrderPreserving { x, y } => format!(
                    "order: {} <= {} but f({}) = {} is not <= f({}) = {}",
                    name(x),
                    name(y),
                    name(x),
                    self.target.poset.name(self.map[x]),
                    name(y),
                    self.target.poset.name(self.map[y])
                ),
                MorphismViolation::Naturality { x, y, left, right } => format!(
                    "naturality ({},{}): m(f x,f y)*lambda(x) = {} != lambda(y)*l(x,y) = {}",
                    name(x),
                    name(y),
                    g.format(left),
                    g.format(right)
                ),
            })
            .collect()
    }

    pub fn is_valid(&self) -> bool {
        self.validate().is_empty()
    }

    /// `outer ∘ inner = (e f, x ↦ μ(f(x))·λ(x))`.
    pub fn compose(outer: &MPosetMorphism, inner: &MPosetMorphism) -> Result<MPosetMorphism, MorphismError> {
        if !same_object(&inner.target, &outer.source) {
            return Err(MorphismError::NotComposable);
        }
        let g = &*inner.source.group;
        let map = inner.map.iter().map(|&y| outer.map[y]).collect();
        let lambda = inner
            .map
            .iter()
            .zip(&inner.lambda)
            .map(|(&y, &l)| g.mul(outer.lambda[y], l))
            .collect();
        Ok(MPosetMorphism {
            source: inner.source.clone(),
            target: outer.target.clone(),
            map,
            lambda,
        })
    }

    fn check_same_hom(&self, other: &MPosetMorphism) -> Result<(), MorphismError> {
        if same_object(&self.source, &other.source) && same_object(&self.target, &other.target) {
            Ok(())
        } else {
            Err(MorphismError::HomSetMismatch)
        }
    }

    /// `(f,λ) ≤ (f',λ')`: `f ≤ f'` pointwise and `m(f(x),f'(x))·λ(x) = λ'(x)`.
    pub fn leq(&self, other: &MPosetMorphism) -> Result<bool, MorphismError> {
        self.check_same_hom(other)?;
        Ok(self.leq_unchecked(other))
    }

    pub(crate) fn leq_unchecked(&self, other: &MPosetMorphism) -> bool {
        let g = &*self.source.group;
        let dst = &self.target;
        (0..self.map.len()).all(|x| {
            let (a, b) = (self.map[x], other.map[x]);
            dst.poset.leq(a, b) && g.mul(dst.label(a, b), self.lambda[x]) == other.lambda[x]
        })
    }

    /// `a ≤ b` or `b ≤ a`.
    pub fn comparable(&self, other: &MPosetMorphism) -> Result<bool, MorphismError> {
        self.check_same_hom(other)?;
        Ok(self.leq_unchecked(other) || other.leq_unchecked(self))
    }

    /// The chain `(f_0,λ_0) ≤ ... ≤ (f_{n+1},λ_{n+1})` from `self` to `upper`,
    /// where `n` is the maximal height of the source and step `i` switches the
    /// elements of height `n - i` from `self` to `upper`.
    pub fn refine_chain(&self, upper: &MPosetMorphism) -> Result<Vec<MPosetMorphism>, MorphismError> {
        if !self.leq(upper)? {
            return Err(MorphismError::Precondition(
                "refine_chain requires a <= b".into(),
            ));
        }
        let heights = self.source.poset.heights();
        let n = self.source.poset.max_height();
        let chain = (0..=n + 1)
            .map(|i| {
                let mut map = self.map.clone();
                let mut lambda = self.lambda.clone();
                for (x, &h) in heights.iter().enumerate() {
                    // ht(x) > n - i, written without underflow.
                    if h + i > n {
                        map[x] = upper.map[x];
                        lambda[x] = upper.lambda[x];
                    }
                }
                MPosetMorphism {
                    source: self.source.clone(),
                    target: self.target.clone(),
                    map,
                    lambda,
                }
            })
            .collect();
        Ok(chain)
    }
}

impl fmt::Display for MPosetMorphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let g = &*self.source.group;
        let parts: Vec<String> = (0..self.map.len())
            .map(|x| {
                format!(
                    "{}->{}:{}",
                    self.source.poset.name(x),
                    self.target.poset.name(self.map[x]),
                    g.format(self.lambda[x])
                )
            })
            .collect();
        write!(f, "[{}]", parts.join(", "))
    }
}

/// The free `A`-set `A × X` attached to a discrete A-monomial poset, with
/// points `(a, x)` stored at index `x·|A| + a`.
#[derive(Clone, Debug)]
pub struct FreeASet {
    group: Arc<Group>,
    base: usize,
}

impl FreeASet {
    pub fn len(&self) -> usize {
        self.base * self.group.order()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn orbits(&self) -> usize {
        self.base
    }

    pub fn index(&self, a: Elem, x: usize) -> usize {
        x * self.group.order() + a.index()
    }

    pub fn point(&self, index: usize) -> (Elem, usize) {
        let order = self.group.order();
        (
            self.group.elem(index % order).expect("in range"),
            index / order,
        )
    }

    /// `b·(a, x) = (ba, x)`.
    pub fn act(&self, b: Elem, point: (Elem, usize)) -> (Elem, usize) {
        (self.group.mul(b, point.0), point.1)
    }
}

/// A map between free `A`-sets given by its table of images.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FreeAMap {
    pub images: Vec<(Elem, usize)>,
}

impl FreeAMap {
    pub fn apply(&self, source: &FreeASet, point: (Elem, usize)) -> (Elem, usize) {
        self.images[source.index(point.0, point.1)]
    }

    pub fn is_equivariant(&self, source: &FreeASet, target: &FreeASet) -> bool {
        let g = &*source.group;
        (0..source.len()).all(|i| {
            let p = source.point(i);
            g.elements().all(|b| {
                self.apply(source, source.act(b, p)) == target.act(b, self.apply(source, p))
            })
        })
    }

    /// `outer ∘ inner`.
    pub fn then(inner: &FreeAMap, outer: &FreeAMap, middle: &FreeASet) -> FreeAMap {
        FreeAMap {
            images: inner.images.iter().map(|&p| outer.apply(middle, p)).collect(),
        }
    }
}

/// The free `A`-set `A × X` of a discrete A-monomial poset.
pub fn discrete_to_free_a_set(p: &MPoset) -> Result<FreeASet, MorphismError> {
    if !p.poset.is_discrete() {
        return Err(MorphismError::Precondition("poset is not discrete".into()));
    }
    Ok(FreeASet {
        group: p.group.clone(),
        base: p.len(),
    })
}

/// Transports `(f, λ)` between discrete objects to `(a, x) ↦ (a·λ(x)⁻¹, f(x))`.
pub fn transport_to_free_a_sets(m: &MPosetMorphism) -> Result<FreeAMap, MorphismError> {
    let source = discrete_to_free_a_set(&m.source)?;
    discrete_to_free_a_set(&m.target)?;
    let g = &*m.source.group;
    let images = (0..source.len())
        .map(|i| {
            let (a, x) = source.point(i);
            (g.mul(a, g.inv(m.lambda[x])), m.map[x])
        })
        .collect();
    Ok(FreeAMap { images })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(n: u32) -> Arc<Group> {
        Arc::new(Group::cyclic(n))
    }

    fn chain(k: usize, prefix: &str) -> Poset {
        let names: Vec<String> = (0..k).map(|i| format!("{prefix}{i}")).collect();
        let rel: Vec<(usize, usize)> = (1..k).map(|i| (i - 1, i)).collect();
        Poset::new(names, &rel).unwrap()
    }

    fn labeled(group: &Arc<Group>, poset: Poset, covers: &[((usize, usize), usize)]) -> Arc<MPoset> {
        let given = covers
            .iter()
            .map(|&(p, v)| (p, group.elem(v).unwrap()))
            .collect();
        Arc::new(MPoset::close(group.clone(), poset, &given).unwrap())
    }

    #[test]
    fn build_poset_examples() {
        let p = Poset::from_names(&["x0", "x1"], &[("x0", "x1")]).unwrap();
        assert!(p.leq(0, 1) && !p.leq(1, 0));
        let err = Poset::from_names(&["a", "b"], &[("a", "b"), ("b", "a")]).unwrap_err();
        match err {
            PosetError::Cycle(c) => assert_eq!(c, vec!["a", "b", "a"]),
            e => panic!("unexpected {e:?}"),
        }
        let p = Poset::from_names(&["x0", "x1", "x2"], &[("x0", "x1"), ("x1", "x2")]).unwrap();
        assert!(p.leq(0, 2));
        assert_eq!(p.covers(), &[(0, 1), (1, 2)]);
        assert!(matches!(
            Poset::from_names(&["a", "a"], &[]),
            Err(PosetError::DuplicateElement(_))
        ));
        assert!(matches!(
            Poset::from_names(&["a"], &[("a", "z")]),
            Err(PosetError::UnknownElement(_))
        ));
    }

    #[test]
    fn heights() {
        let p = chain(3, "x");
        assert_eq!(p.height(0).unwrap(), 0);
        assert_eq!(p.height(2).unwrap(), 2);
        // t above a (height 0) and c (height 1, above b)
        let q = Poset::from_names(&["a", "b", "c", "t"], &[("a", "t"), ("b", "c"), ("c", "t")]).unwrap();
        assert_eq!(q.height(3).unwrap(), 2);
        assert!(q.height(9).is_err());
    }

    #[test]
    fn validate_mposet_examples() {
        let g = c(2);
        let ok = labeled(&g, chain(2, "x"), &[((0, 1), 1)]);
        assert!(ok.validate().is_empty());

        let mut bad = HashMap::new();
        bad.insert((0, 0), g.elem(1).unwrap());
        bad.insert((1, 1), g.identity());
        bad.insert((0, 1), g.identity());
        let p = MPoset::new(g.clone(), chain(2, "x"), &bad).unwrap();
        let v = p.validate();
        assert!(v.contains(&LabelViolation::Reflexive {
            x: 0,
            value: g.elem(1).unwrap()
        }));

        let c3 = c(3);
        let mut given = HashMap::new();
        given.insert((0, 1), c3.elem(1).unwrap());
        given.insert((1, 2), c3.elem(1).unwrap());
        given.insert((0, 2), c3.identity());
        let p = MPoset::close(c3.clone(), chain(3, "x"), &given).unwrap();
        let v = p.validate();
        assert!(v.iter().any(|v| matches!(
            v,
            LabelViolation::Cocycle { x: 0, y: 1, z: 2, .. }
        )));
    }

    #[test]
    fn missing_label_is_structural() {
        let g = c(2);
        let mut labels = HashMap::new();
        labels.insert((0, 0), g.identity());
        labels.insert((1, 1), g.identity());
        assert!(matches!(
            MPoset::new(g.clone(), chain(2, "x"), &labels),
            Err(StructureError::MissingLabel(..))
        ));
        labels.insert((1, 0), g.identity());
        assert!(matches!(
            MPoset::new(g, chain(2, "x"), &labels),
            Err(StructureError::NotComparable(..))
        ));
    }

    #[test]
    fn closure_composes_covers() {
        let g = c(4);
        let p = labeled(&g, chain(3, "x"), &[((0, 1), 1), ((1, 2), 2)]);
        assert_eq!(p.label(0, 2), g.elem(3).unwrap());
        assert!(p.validate().is_empty());
    }

    #[test]
    fn validate_morphism_examples() {
        let g = c(2);
        let src = labeled(&g, chain(2, "x"), &[((0, 1), 1)]);
        let dst = labeled(&g, chain(2, "y"), &[]);
        assert!(MPosetMorphism::identity(&src).validate().is_empty());

        let gen = g.elem(1).unwrap();
        let good = MPosetMorphism::new(src.clone(), dst.clone(), vec![0, 1], vec![gen, g.identity()]).unwrap();
        assert!(good.validate().is_empty());

        let bad = MPosetMorphism::new(src.clone(), dst.clone(), vec![0, 1], vec![g.identity(); 2]).unwrap();
        assert_eq!(
            bad.validate(),
            vec![MorphismViolation::Naturality {
                x: 0,
                y: 1,
                left: g.identity(),
                right: gen
            }]
        );

        let flip = MPosetMorphism::new(src.clone(), dst.clone(), vec![1, 0], vec![g.identity(); 2]).unwrap();
        assert!(flip
            .validate()
            .contains(&MorphismViolation::NotOrderPreserving { x: 0, y: 1 }));

        assert!(matches!(
            MPosetMorphism::new(src, dst, vec![0, 5], vec![g.identity(); 2]),
            Err(MorphismError::OutOfRange { .. })
        ));
    }

    #[test]
    fn compose_identity_laws_and_formula() {
        let g = c(3);
        let x = labeled(&g, chain(2, "x"), &[((0, 1), 1)]);
        let y = labeled(&g, chain(2, "y"), &[((0, 1), 2)]);
        // m(f0,f1)·λ0 = λ1·l  ->  2 + λ0 = λ1 + 1
        let phi = MPosetMorphism::new(
            x.clone(),
            y.clone(),
            vec![0, 1],
            vec![g.elem(0).unwrap(), g.elem(1).unwrap()],
        )
        .unwrap();
        assert!(phi.is_valid());
        let idx = MPosetMorphism::identity(&x);
        let idy = MPosetMorphism::identity(&y);
        assert_eq!(MPosetMorphism::compose(&idy, &phi).unwrap(), phi);
        assert_eq!(MPosetMorphism::compose(&phi, &idx).unwrap(), phi);
        assert_eq!(
            MPosetMorphism::compose(&phi, &phi),
            Err(MorphismError::NotComposable)
        );
    }

    #[test]
    fn leq_examples() {
        let g = c(2);
        let src = Arc::new(MPoset::trivial(g.clone(), chain(1, "x")));
        let dst = Arc::new(MPoset::trivial(g.clone(), chain(2, "y")));
        let a = MPosetMorphism::new(src.clone(), dst.clone(), vec![0], vec![g.identity()]).unwrap();
        let b = MPosetMorphism::new(src.clone(), dst.clone(), vec![1], vec![g.identity()]).unwrap();
        let b2 = MPosetMorphism::new(src.clone(), dst.clone(), vec![1], vec![g.elem(1).unwrap()]).unwrap();
        assert!(a.leq(&a).unwrap());
        assert!(a.leq(&b).unwrap());
        assert!(!b.leq(&a).unwrap());
        assert!(!a.leq(&b2).unwrap());
        assert!(a.comparable(&b).unwrap() && b.comparable(&a).unwrap());

        let anti = Arc::new(MPoset::trivial(g.clone(), Poset::discrete(vec!["u".into(), "v".into()]).unwrap()));
        let cu = MPosetMorphism::new(src.clone(), anti.clone(), vec![0], vec![g.identity()]).unwrap();
        let cv = MPosetMorphism::new(src.clone(), anti.clone(), vec![1], vec![g.identity()]).unwrap();
        assert!(!cu.comparable(&cv).unwrap());
        assert_eq!(a.leq(&cu), Err(MorphismError::HomSetMismatch));
    }

    #[test]
    fn refine_chain_on_two_chain() {
        let g = c(2);
        let src = labeled(&g, chain(2, "x"), &[((0, 1), 1)]);
        let dst = labeled(&g, chain(2, "y"), &[]);
        let gen = g.elem(1).unwrap();
        let e = g.identity();
        let lo = MPosetMorphism::new(src.clone(), dst.clone(), vec![0, 0], vec![gen, e]).unwrap();
        let hi = MPosetMorphism::new(src.clone(), dst.clone(), vec![1, 1], vec![gen, e]).unwrap();
        assert!(lo.is_valid() && hi.is_valid());
        assert!(lo.leq(&hi).unwrap());
        let chain = lo.refine_chain(&hi).unwrap();
        assert_eq!(chain.len(), 3);
        assert_eq!(chain[0], lo);
        assert_eq!(chain[2], hi);
        assert_eq!(chain[1].map(), &[0, 1]);
        for w in chain.windows(2) {
            assert!(w[0].leq(&w[1]).unwrap());
        }
        assert!(chain.iter().all(|m| m.is_valid()));

        let same = lo.refine_chain(&lo).unwrap();
        assert_eq!(same.len(), 3);
        assert!(same.iter().all(|m| *m == lo));
        assert!(hi.refine_chain(&lo).is_err());
    }

    #[test]
    fn free_a_set_transport() {
        let g = c(2);
        let point = Arc::new(MPoset::trivial(g.clone(), Poset::discrete(vec!["p".into()]).unwrap()));
        let set = discrete_to_free_a_set(&point).unwrap();
        assert_eq!((set.len(), set.orbits()), (2, 1));
        let id = transport_to_free_a_sets(&MPosetMorphism::identity(&point)).unwrap();
        assert!((0..set.len()).all(|i| id.images[i] == set.point(i)));

        let two = Arc::new(MPoset::trivial(g.clone(), Poset::discrete(vec!["x0".into(), "x1".into()]).unwrap()));
        let gen = g.elem(1).unwrap();
        let m = MPosetMorphism::new(two.clone(), two.clone(), vec![1, 0], vec![gen, g.identity()]).unwrap();
        let t = transport_to_free_a_sets(&m).unwrap();
        let s2 = discrete_to_free_a_set(&two).unwrap();
        assert_eq!(t.apply(&s2, (g.identity(), 0)), (g.inv(gen), 1));
        assert!(t.is_equivariant(&s2, &s2));

        assert!(discrete_to_free_a_set(&labeled(&g, chain(2, "x"), &[])).is_err());
    }
}
