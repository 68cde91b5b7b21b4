//! Independent reference implementations used to cross-check the main code
//! paths. They are deliberately naive.

use std::collections::VecDeque;
use std::sync::Arc;

use crate::group::{Elem, Group};
use crate::homsearch::{ClassPartition, HomMorphism, HomSet};
use crate::mposet::{MPoset, MPosetMorphism};
use crate::msimp::{MSimp, MSimpMorphism};

/// Every tuple in `0..base` of the given length, in lexicographic order.
fn tuples(base: usize, len: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if base == 0 && len > 0 {
        return out;
    }
    let mut cur = vec![0usize; len];
    loop {
        out.push(cur.clone());
        let mut i = len;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            cur[i] += 1;
            if cur[i] < base {
                break;
            }
            cur[i] = 0;
        }
    }
}

fn elems(group: &Group, t: &[usize]) -> Vec<Elem> {
    t.iter().map(|&i| group.elem(i).unwrap()).collect()
}

/// All `(f, λ)` with `f` any map and `λ` any assignment, filtered by the
/// morphism validator.
pub fn naive_hom_poset(source: &Arc<MPoset>, target: &Arc<MPoset>) -> Vec<MPosetMorphism> {
    let g = source.group();
    let lambdas = tuples(g.order(), source.len());
    let mut out = Vec::new();
    for f in tuples(target.len(), source.len()) {
        for l in &lambdas {
            let m = MPosetMorphism::new(source.clone(), target.clone(), f.clone(), elems(g, l)).unwrap();
            if m.is_valid() {
                out.push(m);
            }
        }
    }
    out.sort();
    out
}

/// All simplicial `(f, λ)` found by trying every vertex map and every
/// assignment on simplices.
pub fn naive_hom_simp(source: &Arc<MSimp>, target: &Arc<MSimp>) -> Vec<MSimpMorphism> {
    let g = source.group();
    let lambdas = tuples(g.order(), source.len());
    let mut out = Vec::new();
    for f in tuples(target.complex().vertex_count(), source.complex().vertex_count()) {
        for l in &lambdas {
            let m = MSimpMorphism::new(source.clone(), target.clone(), f.clone(), elems(g, l)).unwrap();
            if m.is_valid() {
                out.push(m);
            }
        }
    }
    out.sort();
    out
}

/// Cocycle test by path products: `l(x, x) = 1`, and for `x < y` the
/// product of cover labels along every saturated chain from `x` to `y`
/// equals `l(x, y)`.
pub fn cocycle_by_paths(p: &MPoset) -> bool {
    let g = p.group();
    let poset = p.poset();
    let n = p.len();
    if (0..n).any(|x| p.label(x, x) != g.identity()) {
        return false;
    }
    let mut up: Vec<Vec<usize>> = vec![Vec::new(); n];
    for &(x, y) in poset.covers() {
        up[x].push(y);
    }
    // Depth-first walk over all saturated chains from each start.
    for x in 0..n {
        let mut stack = vec![(x, g.identity())];
        while let Some((y, prod)) = stack.pop() {
            if y != x && prod != p.label(x, y) {
                return false;
            }
            for &z in &up[y] {
                stack.push((z, g.mul(p.label(y, z), prod)));
            }
        }
    }
    true
}

/// Morphism test on cover relations only: `f` preserves every cover and
/// the naturality square commutes on every cover. Given valid labelings this
/// is equivalent to the full condition.
pub fn natural_on_covers(m: &MPosetMorphism) -> bool {
    let g = m.group();
    let (s, t) = (m.source(), m.target());
    s.poset().covers().iter().all(|&(x, y)| {
        let (fx, fy) = (m.map()[x], m.map()[y]);
        t.poset().leq(fx, fy) && g.mul(t.label(fx, fy), m.lambda()[x]) == g.mul(m.lambda()[y], s.label(x, y))
    })
}

/// Connected components by breadth-first search over the one-step relation,
/// tested directly on every pair.
pub fn bfs_classes<M: HomMorphism>(h: &HomSet<M>) -> ClassPartition {
    let n = h.len();
    let mut comp = vec![usize::MAX; n];
    for s in 0..n {
        if comp[s] != usize::MAX {
            continue;
        }
        comp[s] = s;
        let mut queue = VecDeque::from([s]);
        while let Some(x) = queue.pop_front() {
            for y in 0..n {
                if comp[y] == usize::MAX && h.get(x).related(h.get(y)) {
                    comp[y] = s;
                    queue.push_back(y);
                }
            }
        }
    }
    ClassPartition::from_labels(&comp)
}

/// Components of a hom-set under a relation on vertex maps alone.
pub fn classes_by_map_relation<M: HomMorphism>(h: &HomSet<M>, related: impl Fn(&[usize], &[usize]) -> bool) -> ClassPartition {
    let n = h.len();
    let mut comp = vec![usize::MAX; n];
    for s in 0..n {
        if comp[s] != usize::MAX {
            continue;
        }
        comp[s] = s;
        let mut queue = VecDeque::from([s]);
        while let Some(x) = queue.pop_front() {
            for y in 0..n {
                if comp[y] == usize::MAX && related(h.get(x).vertex_map(), h.get(y).vertex_map()) {
                    comp[y] = s;
                    queue.push_back(y);
                }
            }
        }
    }
    ClassPartition::from_labels(&comp)
}

/// Classical comparability classes of order-preserving maps: `f ≤ f'` or
/// `f' ≤ f` pointwise.
pub fn comparability_classes(h: &HomSet<MPosetMorphism>) -> ClassPartition {
    let t = h.target().poset().clone();
    classes_by_map_relation(h, |f, g| {
        f.iter().zip(g).all(|(&a, &b)| t.leq(a, b)) || f.iter().zip(g).all(|(&a, &b)| t.leq(b, a))
    })
}

/// Spanier contiguity classes: `f(σ) ∪ f'(σ)` is a simplex for every `σ`.
pub fn contiguity_classes(h: &HomSet<MSimpMorphism>) -> ClassPartition {
    let s = h.source().complex().clone();
    let t = h.target().complex().clone();
    classes_by_map_relation(h, |f, g| {
        s.simplices().iter().all(|x| t.contains(x.image(f).union(x.image(g))))
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::homsearch::{enumerate_hom_poset, enumerate_hom_simp, homotopy_classes, Relation, DEFAULT_HOM_CAP};
    use crate::mposet::Poset;
    use crate::msimp::SimplicialComplex;
    use std::collections::HashMap;

    #[test]
    fn tuple_enumeration() {
        assert_eq!(tuples(2, 2), vec![vec![0, 0], vec![0, 1], vec![1, 0], vec![1, 1]]);
        assert_eq!(tuples(3, 0), vec![Vec::<usize>::new()]);
        assert!(tuples(0, 1).is_empty());
    }

    #[test]
    fn naive_agrees_on_c2_chain() {
        let g = Arc::new(Group::cyclic(2));
        let p = Poset::from_names(&["x0", "x1"], &[("x0", "x1")]).unwrap();
        let mut given = HashMap::new();
        given.insert((0, 1), g.elem(1).unwrap());
        let src = Arc::new(MPoset::close(g.clone(), p.clone(), &given).unwrap());
        let dst = Arc::new(MPoset::trivial(g.clone(), p));
        let fast = enumerate_hom_poset(&src, &dst, DEFAULT_HOM_CAP).unwrap();
        assert_eq!(fast.morphisms(), naive_hom_poset(&src, &dst).as_slice());
        assert_eq!(fast.len(), 6);
        let part = homotopy_classes(&fast, Relation::PosetComparability).unwrap();
        assert!(part.same_blocks(&bfs_classes(&fast)));
    }

    #[test]
    fn naive_agrees_on_edge() {
        let g = Arc::new(Group::cyclic(2));
        let c = SimplicialComplex::from_names(&["a", "b"], &[&["a", "b"]]).unwrap();
        let ab = c.index_of(crate::msimp::Simplex::from_vertices([0, 1])).unwrap();
        let mut given = HashMap::new();
        given.insert((c.vertex_simplex(0), ab), g.elem(1).unwrap());
        let s = Arc::new(MSimp::close(g, c, &given).unwrap());
        let fast = enumerate_hom_simp(&s, &s, DEFAULT_HOM_CAP).unwrap();
        assert_eq!(fast.morphisms(), naive_hom_simp(&s, &s).as_slice());
    }

    #[test]
    fn path_products_detect_breaks() {
        let g = Arc::new(Group::cyclic(3));
        let p = Poset::from_names(&["x0", "x1", "x2"], &[("x0", "x1"), ("x1", "x2")]).unwrap();
        let one = g.identity();
        let h = g.elem(1).unwrap();
        let mut labels = HashMap::new();
        for x in 0..3 {
            labels.insert((x, x), one);
        }
        labels.insert((0, 1), h);
        labels.insert((1, 2), h);
        labels.insert((0, 2), one);
        let bad = MPoset::new(g.clone(), p.clone(), &labels).unwrap();
        assert!(!cocycle_by_paths(&bad));
        labels.insert((0, 2), g.mul(h, h));
        assert!(cocycle_by_paths(&MPoset::new(g, p, &labels).unwrap()));
    }
}
