//! Brute-force enumeration of hom-sets and their homotopy-class partitions.
//!
//! Vertex maps are enumerated by backtracking with early rejection. For each
//! map, `λ` is fixed on one root per connected component of the source and
//! propagated along the Hasse diagram; assignments that break naturality on
//! any comparable pair are dropped. Hom-sets are kept in canonical order,
//! lexicographic in `(f, λ)`.

use std::collections::{BTreeMap, HashMap, VecDeque};
use std::fmt;
use std::hash::Hash;
use std::sync::Arc;

use petgraph::unionfind::UnionFind;
use thiserror::Error;

use crate::group::Elem;
use crate::mposet::{same_object, MPoset, MPosetMorphism, MorphismError};
use crate::msimp::{iota_contiguity, maps_contiguous, MSimp, MSimpMorphism};

/// Default bound on `|target|^|source| · |A|^(#components)`.
pub const DEFAULT_HOM_CAP: u128 = 1_000_000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum HomError {
    #[error("hom-set search space {estimate} exceeds cap {cap}")]
    CapExceeded { estimate: u128, cap: u128 },
    #[error("target is empty, so there are no maps from a nonempty source")]
    EmptyTarget,
    #[error("relation {relation:?} does not apply to {category:?} hom-sets")]
    RelationMismatch { relation: Relation, category: Category },
    #[error("hom-sets are not composable")]
    NotComposable,
    #[error(transparent)]
    Morphism(#[from] MorphismError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Category {
    Poset,
    Simp,
}

/// One-step relation whose transitive closure is homotopy.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Relation {
    PosetComparability,
    SimpContiguity,
}

impl Relation {
    fn category(self) -> Category {
        match self {
            Relation::PosetComparability => Category::Poset,
            Relation::SimpContiguity => Category::Simp,
        }
    }
}

/// Morphisms that can be enumerated and partitioned into homotopy classes.
pub trait HomMorphism: Clone + Eq + Hash + Ord + fmt::Display {
    type Object: PartialEq;
    const CATEGORY: Category;

    fn source_object(&self) -> &Arc<Self::Object>;
    fn target_object(&self) -> &Arc<Self::Object>;
    fn vertex_map(&self) -> &[usize];
    fn labels(&self) -> &[Elem];
    fn compose(outer: &Self, inner: &Self) -> Result<Self, MorphismError>;
    /// The one-step relation, checked directly on the two morphisms.
    fn related(&self, other: &Self) -> bool;
    /// If vertex maps `f` and `g` are related in the direction `f → g`,
    /// returns `ι` so that `(f, λ)` is related to `(g, ι·λ)` and to nothing
    /// else over `g`.
    fn transfer(source: &Self::Object, target: &Self::Object, f: &[usize], g: &[usize]) -> Option<Vec<Elem>>;
    fn group_of(object: &Self::Object) -> &crate::group::Group;
    fn identity_on(object: &Arc<Self::Object>) -> Self;
    fn is_valid_morphism(&self) -> bool;
}

impl HomMorphism for MPosetMorphism {
    type Object = MPoset;
    const CATEGORY: Category = Category::Poset;

    fn source_object(&self) -> &Arc<MPoset> {
        self.source()
    }
    fn target_object(&self) -> &Arc<MPoset> {
        self.target()
    }
    fn vertex_map(&self) -> &[usize] {
        self.map()
    }
    fn labels(&self) -> &[Elem] {
        self.lambda()
    }
    fn compose(outer: &Self, inner: &Self) -> Result<Self, MorphismError> {
        MPosetMorphism::compose(outer, inner)
    }
    fn related(&self, other: &Self) -> bool {
        self.leq_unchecked(other) || other.leq_unchecked(self)
    }
    fn transfer(_source: &MPoset, target: &MPoset, f: &[usize], g: &[usize]) -> Option<Vec<Elem>> {
        let p = target.poset();
        if f.iter().zip(g).all(|(&a, &b)| p.leq(a, b)) {
            Some(f.iter().zip(g).map(|(&a, &b)| target.label(a, b)).collect())
        } else {
            None
        }
    }
    fn group_of(object: &MPoset) -> &crate::group::Group {
        object.group()
    }
    fn identity_on(object: &Arc<MPoset>) -> Self {
        MPosetMorphism::identity(object)
    }
    fn is_valid_morphism(&self) -> bool {
        self.is_valid()
    }
}

impl HomMorphism for MSimpMorphism {
    type Object = MSimp;
    const CATEGORY: Category = Category::Simp;

    fn source_object(&self) -> &Arc<MSimp> {
        self.source()
    }
    fn target_object(&self) -> &Arc<MSimp> {
        self.target()
    }
    fn vertex_map(&self) -> &[usize] {
        self.map()
    }
    fn labels(&self) -> &[Elem] {
        self.lambda()
    }
    fn compose(outer: &Self, inner: &Self) -> Result<Self, MorphismError> {
        MSimpMorphism::compose(outer, inner)
    }
    fn related(&self, other: &Self) -> bool {
        self.mcontiguous_unchecked(other)
    }
    fn transfer(source: &MSimp, target: &MSimp, f: &[usize], g: &[usize]) -> Option<Vec<Elem>> {
        if maps_contiguous(source.complex(), target.complex(), f, g) {
            iota_contiguity(source.complex(), target, f, g).ok()
        } else {
            None
        }
    }
    fn group_of(object: &MSimp) -> &crate::group::Group {
        object.group()
    }
    fn identity_on(object: &Arc<MSimp>) -> Self {
        MSimpMorphism::identity(object)
    }
    fn is_valid_morphism(&self) -> bool {
        self.is_valid()
    }
}

/// A fully enumerated hom-set in canonical order.
#[derive(Clone, Debug)]
pub struct HomSet<M: HomMorphism> {
    source: Arc<M::Object>,
    target: Arc<M::Object>,
    morphisms: Vec<M>,
    index: HashMap<M, usize>,
}

impl<M: HomMorphism> HomSet<M> {
    /// Sorts and deduplicates the given morphisms.
    pub fn from_morphisms(source: Arc<M::Object>, target: Arc<M::Object>, mut morphisms: Vec<M>) -> HomSet<M> {
        morphisms.sort();
        morphisms.dedup();
        let index = morphisms.iter().enumerate().map(|(i, m)| (m.clone(), i)).collect();
        HomSet {
            source,
            target,
            morphisms,
            index,
        }
    }

    pub fn source(&self) -> &Arc<M::Object> {
        &self.source
    }

    pub fn target(&self) -> &Arc<M::Object> {
        &self.target
    }

    pub fn morphisms(&self) -> &[M] {
        &self.morphisms
    }

    pub fn len(&self) -> usize {
        self.morphisms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.morphisms.is_empty()
    }

    pub fn get(&self, i: usize) -> &M {
        &self.morphisms[i]
    }

    pub fn index_of(&self, m: &M) -> Option<usize> {
        self.index.get(m).copied()
    }

    /// Same morphisms in a different order, for order-invariance checks.
    pub fn permuted(&self, order: &[usize]) -> Vec<M> {
        order.iter().map(|&i| self.morphisms[i].clone()).collect()
    }
}

/// Partition of a hom-set into homotopy classes. Classes are numbered in the
/// order of their least member; the representative is that least member.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassPartition {
    class_of: Vec<usize>,
    representatives: Vec<usize>,
}

impl ClassPartition {
    /// Normalizes arbitrary component labels into canonical class numbers.
    pub fn from_labels(labels: &[usize]) -> ClassPartition {
        let mut renumber = HashMap::new();
        let mut representatives = Vec::new();
        let class_of = labels
            .iter()
            .enumerate()
            .map(|(i, &l)| {
                *renumber.entry(l).or_insert_with(|| {
                    representatives.push(i);
                    representatives.len() - 1
                })
            })
            .collect();
        ClassPartition {
            class_of,
            representatives,
        }
    }

    pub fn class(&self, i: usize) -> usize {
        self.class_of[i]
    }

    pub fn class_count(&self) -> usize {
        self.representatives.len()
    }

    pub fn representatives(&self) -> &[usize] {
        &self.representatives
    }

    pub fn classes(&self) -> &[usize] {
        &self.class_of
    }

    /// Members of each class, in canonical order.
    pub fn blocks(&self) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new(); self.class_count()];
        for (i, &c) in self.class_of.iter().enumerate() {
            out[c].push(i);
        }
        out
    }

    /// Whether two partitions of the same set have the same blocks.
    pub fn same_blocks(&self, other: &ClassPartition) -> bool {
        self.class_of.len() == other.class_of.len()
            && self.representatives.len() == other.representatives.len()
            && {
                let mut map = HashMap::new();
                self.class_of
                    .iter()
                    .zip(&other.class_of)
                    .all(|(&a, &b)| *map.entry(a).or_insert(b) == b)
            }
    }
}

fn saturating_pow(base: u128, exp: usize) -> u128 {
    (0..exp).fold(1u128, |acc, _| acc.saturating_mul(base))
}

/// λ assignments compatible with an element map `f` (given as indices into
/// `target`), in lexicographic order.
fn propagate_lambdas(source: &MPoset, target: &MPoset, f: &[usize]) -> Vec<Vec<Elem>> {
    let g = source.group();
    let poset = source.poset();
    let n = source.len();
    let mut adj: Vec<Vec<(usize, bool)>> = vec![Vec::new(); n];
    for &(x, y) in poset.covers() {
        adj[x].push((y, true));
        adj[y].push((x, false));
    }
    let components = poset.components();
    let mut per_component: Vec<Vec<Vec<(usize, Elem)>>> = Vec::with_capacity(components.len());
    for comp in &components {
        let mut options = Vec::new();
        for root in g.elements() {
            let mut lambda = vec![None; n];
            lambda[comp[0]] = Some(root);
            let mut queue = VecDeque::from([comp[0]]);
            while let Some(x) = queue.pop_front() {
                let lx = lambda[x].unwrap();
                for &(y, upward) in &adj[x] {
                    if lambda[y].is_some() {
                        continue;
                    }
                    // x ≤ y: λ(y) = m(f x, f y)·λ(x)·l(x,y)⁻¹
                    // y ≤ x: λ(y) = m(f y, f x)⁻¹·λ(x)·l(y,x)
                    let v = if upward {
                        g.mul(g.mul(target.label(f[x], f[y]), lx), g.inv(source.label(x, y)))
                    } else {
                        g.mul(g.mul(g.inv(target.label(f[y], f[x])), lx), source.label(y, x))
                    };
                    lambda[y] = Some(v);
                    queue.push_back(y);
                }
            }
            let natural = comp.iter().all(|&x| {
                comp.iter().all(|&y| {
                    !poset.leq(x, y)
                        || g.mul(target.label(f[x], f[y]), lambda[x].unwrap())
                            == g.mul(lambda[y].unwrap(), source.label(x, y))
                })
            });
            if natural {
                options.push(comp.iter().map(|&x| (x, lambda[x].unwrap())).collect());
            }
        }
        if options.is_empty() {
            return Vec::new();
        }
        per_component.push(options);
    }
    let mut out = Vec::new();
    let mut choice = vec![0usize; per_component.len()];
    loop {
        let mut lambda = vec![g.identity(); n];
        for (c, &k) in choice.iter().enumerate() {
            for &(x, v) in &per_component[c][k] {
                lambda[x] = v;
            }
        }
        out.push(lambda);
        // Odometer over component choices.
        let mut c = per_component.len();
        loop {
            if c == 0 {
                out.sort();
                return out;
            }
            c -= 1;
            choice[c] += 1;
            if choice[c] < per_component[c].len() {
                break;
            }
            choice[c] = 0;
        }
    }
}

/// Every morphism `(X, l) → (Y, m)`.
pub fn enumerate_hom_poset(
    source: &Arc<MPoset>,
    target: &Arc<MPoset>,
    cap: u128,
) -> Result<HomSet<MPosetMorphism>, HomError> {
    if source.group() != target.group() {
        return Err(MorphismError::GroupMismatch.into());
    }
    if !source.is_empty() && target.is_empty() {
        return Err(HomError::EmptyTarget);
    }
    let components = source.poset().components().len();
    let estimate = saturating_pow(target.len() as u128, source.len())
        .saturating_mul(saturating_pow(source.group().order() as u128, components));
    if estimate > cap {
        return Err(HomError::CapExceeded { estimate, cap });
    }
    let sp = source.poset();
    let tp = target.poset();
    let order = sp.linear_extension();
    let mut maps = Vec::new();
    let mut f = vec![usize::MAX; source.len()];
    fn assign(
        depth: usize,
        order: &[usize],
        f: &mut Vec<usize>,
        sp: &crate::mposet::Poset,
        tp: &crate::mposet::Poset,
        out: &mut Vec<Vec<usize>>,
    ) {
        if depth == order.len() {
            out.push(f.clone());
            return;
        }
        let x = order[depth];
        for y in 0..tp.len() {
            let ok = order[..depth].iter().all(|&z| {
                (!sp.leq(z, x) || tp.leq(f[z], y)) && (!sp.leq(x, z) || tp.leq(y, f[z]))
            });
            if ok {
                f[x] = y;
                assign(depth + 1, order, f, sp, tp, out);
            }
        }
        f[x] = usize::MAX;
    }
    assign(0, &order, &mut f, sp, tp, &mut maps);
    let mut morphisms = Vec::new();
    for f in maps {
        for lambda in propagate_lambdas(source, target, &f) {
            morphisms.push(MPosetMorphism::new(source.clone(), target.clone(), f.clone(), lambda)?);
        }
    }
    Ok(HomSet::from_morphisms(source.clone(), target.clone(), morphisms))
}

/// Every morphism `(S, 𝒮, l) → (T, 𝒯, m)`.
pub fn enumerate_hom_simp(
    source: &Arc<MSimp>,
    target: &Arc<MSimp>,
    cap: u128,
) -> Result<HomSet<MSimpMorphism>, HomError> {
    if source.group() != target.group() {
        return Err(MorphismError::GroupMismatch.into());
    }
    let sc = source.complex();
    let tc = target.complex();
    if sc.vertex_count() > 0 && tc.vertex_count() == 0 {
        return Err(HomError::EmptyTarget);
    }
    let components = source.faces().poset().components().len();
    let estimate = saturating_pow(tc.vertex_count() as u128, sc.vertex_count())
        .saturating_mul(saturating_pow(source.group().order() as u128, components));
    if estimate > cap {
        return Err(HomError::CapExceeded { estimate, cap });
    }
    // Simplices grouped by their largest vertex, checked once that vertex is mapped.
    let mut by_top: Vec<Vec<crate::msimp::Simplex>> = vec![Vec::new(); sc.vertex_count()];
    for &s in sc.simplices() {
        if s.len() > 1 {
            by_top[s.vertices().last().unwrap()].push(s);
        }
    }
    let mut maps = Vec::new();
    let mut f = vec![0usize; sc.vertex_count()];
    fn assign(
        v: usize,
        f: &mut Vec<usize>,
        by_top: &[Vec<crate::msimp::Simplex>],
        tc: &crate::msimp::SimplicialComplex,
        out: &mut Vec<Vec<usize>>,
    ) {
        if v == f.len() {
            out.push(f.clone());
            return;
        }
        for w in 0..tc.vertex_count() {
            f[v] = w;
            if by_top[v].iter().all(|s| tc.contains(s.image(f))) {
                assign(v + 1, f, by_top, tc, out);
            }
        }
    }
    assign(0, &mut f, &by_top, tc, &mut maps);
    let mut morphisms = Vec::new();
    for f in maps {
        let images: Vec<usize> = sc
            .simplices()
            .iter()
            .map(|s| tc.index_of(s.image(&f)).expect("simplicial"))
            .collect();
        for lambda in propagate_lambdas(source.faces(), target.faces(), &images) {
            morphisms.push(MSimpMorphism::assemble(source.clone(), target.clone(), f.clone(), lambda));
        }
    }
    Ok(HomSet::from_morphisms(source.clone(), target.clone(), morphisms))
}

/// Connected components of a hom-set under the one-step relation.
pub fn homotopy_classes<M: HomMorphism>(h: &HomSet<M>, relation: Relation) -> Result<ClassPartition, HomError> {
    if relation.category() != M::CATEGORY {
        return Err(HomError::RelationMismatch {
            relation,
            category: M::CATEGORY,
        });
    }
    let group = M::group_of(&h.source);
    let mut groups: BTreeMap<&[usize], HashMap<&[Elem], usize>> = BTreeMap::new();
    for (i, m) in h.morphisms.iter().enumerate() {
        groups.entry(m.vertex_map()).or_default().insert(m.labels(), i);
    }
    let maps: Vec<(&[usize], &HashMap<&[Elem], usize>)> = groups.iter().map(|(k, v)| (*k, v)).collect();
    let mut uf: UnionFind<usize> = UnionFind::new(h.len());
    for &(f, members) in &maps {
        for &(g, others) in &maps {
            if f == g {
                continue;
            }
            let Some(iota) = M::transfer(&h.source, &h.target, f, g) else {
                continue;
            };
            for (lambda, &i) in members {
                let moved: Vec<Elem> = iota.iter().zip(lambda.iter()).map(|(&a, &b)| group.mul(a, b)).collect();
                if let Some(&j) = others.get(moved.as_slice()) {
                    uf.union(i, j);
                }
            }
        }
    }
    let labels: Vec<usize> = (0..h.len()).map(|i| uf.find_mut(i)).collect();
    Ok(ClassPartition::from_labels(&labels))
}

/// The natural relation for the morphism type.
pub fn default_relation<M: HomMorphism>() -> Relation {
    match M::CATEGORY {
        Category::Poset => Relation::PosetComparability,
        Category::Simp => Relation::SimpContiguity,
    }
}

/// Verifies that the class of `b∘a` depends only on the classes of `a` and
/// `b`, for `a ∈ first: X → Y`, `b ∈ second: Y → Z`, with `composite: X → Z`.
/// Returns witnesses of failures; an empty list means composition descends
/// to homotopy classes.
pub fn quotient_compose_check<M: HomMorphism>(
    first: (&HomSet<M>, &ClassPartition),
    second: (&HomSet<M>, &ClassPartition),
    composite: (&HomSet<M>, &ClassPartition),
) -> Result<Vec<String>, HomError> {
    let (h1, p1) = first;
    let (h2, p2) = second;
    let (h3, p3) = composite;
    if !same_object(&h1.target, &h2.source)
        || !same_object(&h1.source, &h3.source)
        || !same_object(&h2.target, &h3.target)
    {
        return Err(HomError::NotComposable);
    }
    let mut seen: HashMap<(usize, usize), (usize, usize, usize)> = HashMap::new();
    let mut witnesses = Vec::new();
    for (i, a) in h1.morphisms.iter().enumerate() {
        for (j, b) in h2.morphisms.iter().enumerate() {
            let c = M::compose(b, a)?;
            let Some(k) = h3.index_of(&c) else {
                witnesses.push(format!("composite {c} of {b} after {a} is missing from the hom-set"));
                continue;
            };
            let key = (p1.class(i), p2.class(j));
            let class = p3.class(k);
            match seen.get(&key) {
                None => {
                    seen.insert(key, (i, j, class));
                }
                Some(&(i0, j0, c0)) if c0 != class => witnesses.push(format!(
                    "classes ({}, {}): {} after {} lands in class {} but {} after {} lands in class {}",
                    key.0, key.1, h2.morphisms[j0], h1.morphisms[i0], c0, b, a, class
                )),
                Some(_) => {}
            }
        }
    }
    Ok(witnesses)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::Group;
    use crate::mposet::Poset;
    use crate::msimp::SimplicialComplex;
    use std::collections::VecDeque;

    fn chain(g: &Arc<Group>, names: &[&str], label: usize) -> Arc<MPoset> {
        let p = Poset::from_names(names, &[(names[0], names[1])]).unwrap();
        let mut given = HashMap::new();
        given.insert((0, 1), g.elem(label).unwrap());
        Arc::new(MPoset::close(g.clone(), p, &given).unwrap())
    }

    fn point_poset(g: &Arc<Group>) -> Arc<MPoset> {
        Arc::new(MPoset::trivial(g.clone(), Poset::discrete(vec!["p".into()]).unwrap()))
    }

    fn bfs_partition<M: HomMorphism>(h: &HomSet<M>) -> Vec<usize> {
        let n = h.len();
        let mut comp = vec![usize::MAX; n];
        for s in 0..n {
            if comp[s] != usize::MAX {
                continue;
            }
            comp[s] = s;
            let mut q = VecDeque::from([s]);
            while let Some(x) = q.pop_front() {
                for y in 0..n {
                    if comp[y] == usize::MAX && h.get(x).related(h.get(y)) {
                        comp[y] = s;
                        q.push_back(y);
                    }
                }
            }
        }
        comp
    }

    #[test]
    fn point_to_point() {
        let g = Arc::new(Group::cyclic(2));
        let p = point_poset(&g);
        let h = enumerate_hom_poset(&p, &p, DEFAULT_HOM_CAP).unwrap();
        assert_eq!(h.len(), 2);
        let part = homotopy_classes(&h, Relation::PosetComparability).unwrap();
        assert_eq!(part.class_count(), 2);
    }

    #[test]
    fn c2_chain_hom_set_has_six_morphisms() {
        let g = Arc::new(Group::cyclic(2));
        let src = chain(&g, &["x0", "x1"], 1);
        let dst = chain(&g, &["y0", "y1"], 0);
        let h = enumerate_hom_poset(&src, &dst, DEFAULT_HOM_CAP).unwrap();
        assert_eq!(h.len(), 6);
        assert!(h.morphisms().iter().all(|m| m.is_valid()));
        assert!(h.morphisms().windows(2).all(|w| w[0] < w[1]));
        let part = homotopy_classes(&h, Relation::PosetComparability).unwrap();
        assert!(part.same_blocks(&ClassPartition::from_labels(&bfs_partition(&h))));
        // λ(x0) is preserved along ≤ since m ≡ 1, so two classes.
        assert_eq!(part.class_count(), 2);
    }

    #[test]
    fn point_to_trivial_chain_is_one_class() {
        let g = Arc::new(Group::trivial());
        let p = point_poset(&g);
        let dst = chain(&g, &["y0", "y1"], 0);
        let h = enumerate_hom_poset(&p, &dst, DEFAULT_HOM_CAP).unwrap();
        assert_eq!(h.len(), 2);
        let part = homotopy_classes(&h, Relation::PosetComparability).unwrap();
        assert_eq!(part.class_count(), 1);
        assert_eq!(part.representatives(), &[0]);
    }

    #[test]
    fn empty_target_and_cap() {
        let g = Arc::new(Group::cyclic(2));
        let p = point_poset(&g);
        let empty = Arc::new(MPoset::trivial(g.clone(), Poset::discrete(vec![]).unwrap()));
        assert_eq!(
            enumerate_hom_poset(&p, &empty, DEFAULT_HOM_CAP).unwrap_err(),
            HomError::EmptyTarget
        );
        let h = enumerate_hom_poset(&empty, &p, DEFAULT_HOM_CAP).unwrap();
        assert_eq!(h.len(), 1);
        let src = chain(&g, &["x0", "x1"], 1);
        assert!(matches!(
            enumerate_hom_poset(&src, &src, 3),
            Err(HomError::CapExceeded { estimate: 8, cap: 3 })
        ));
    }

    #[test]
    fn simp_hom_sets() {
        let c3 = Arc::new(Group::cyclic(3));
        let pt = Arc::new(MSimp::trivial(c3.clone(), SimplicialComplex::from_names(&["p"], &[]).unwrap()));
        assert_eq!(enumerate_hom_simp(&pt, &pt, DEFAULT_HOM_CAP).unwrap().len(), 3);

        let one = Arc::new(Group::trivial());
        let edge = Arc::new(MSimp::trivial(
            one.clone(),
            SimplicialComplex::from_names(&["a", "b"], &[&["a", "b"]]).unwrap(),
        ));
        assert_eq!(enumerate_hom_simp(&edge, &edge, DEFAULT_HOM_CAP).unwrap().len(), 4);

        let two = Arc::new(MSimp::trivial(one.clone(), SimplicialComplex::from_names(&["u", "v"], &[]).unwrap()));
        let h = enumerate_hom_simp(&edge, &two, DEFAULT_HOM_CAP).unwrap();
        // Only the two constant maps are simplicial.
        assert_eq!(h.len(), 2);
        assert!(h.morphisms().iter().all(|m| m.map()[0] == m.map()[1]));
    }

    #[test]
    fn relation_mismatch_is_an_error() {
        let g = Arc::new(Group::cyclic(2));
        let p = point_poset(&g);
        let h = enumerate_hom_poset(&p, &p, DEFAULT_HOM_CAP).unwrap();
        assert!(matches!(
            homotopy_classes(&h, Relation::SimpContiguity),
            Err(HomError::RelationMismatch { .. })
        ));
    }

    #[test]
    fn quotient_composition_on_identity_object() {
        let g = Arc::new(Group::cyclic(2));
        let src = chain(&g, &["x0", "x1"], 1);
        let h = enumerate_hom_poset(&src, &src, DEFAULT_HOM_CAP).unwrap();
        let p = homotopy_classes(&h, Relation::PosetComparability).unwrap();
        assert!(quotient_compose_check((&h, &p), (&h, &p), (&h, &p)).unwrap().is_empty());
        let pt = point_poset(&g);
        let h2 = enumerate_hom_poset(&pt, &src, DEFAULT_HOM_CAP).unwrap();
        let p2 = homotopy_classes(&h2, Relation::PosetComparability).unwrap();
        assert_eq!(
            quotient_compose_check((&h2, &p2), (&h2, &p2), (&h2, &p2)),
            Err(HomError::NotComposable)
        );
    }

    #[test]
    fn partition_helpers() {
        let p = ClassPartition::from_labels(&[7, 3, 7, 3, 9]);
        assert_eq!(p.classes(), &[0, 1, 0, 1, 2]);
        assert_eq!(p.representatives(), &[0, 1, 4]);
        assert_eq!(p.blocks(), vec![vec![0, 2], vec![1, 3], vec![4]]);
        assert!(p.same_blocks(&ClassPartition::from_labels(&[1, 2, 1, 2, 3])));
        assert!(!p.same_blocks(&ClassPartition::from_labels(&[1, 1, 1, 2, 3])));
    }
}
