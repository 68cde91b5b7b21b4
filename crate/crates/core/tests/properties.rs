//! Property-based invariants over randomly generated small instances.

use std::collections::HashMap;
use std::sync::Arc;

use monofib::cli::{resolve, to_file, Instance};
use monofib::fixtures::{self, Named};
use monofib::group::{Group, GroupSpec};
use monofib::homsearch::{default_relation, enumerate_hom_poset, enumerate_hom_simp, homotopy_classes, HomSet, DEFAULT_HOM_CAP};
use monofib::mposet::{MPoset, MPosetMorphism, Poset};
use monofib::msimp::MSimp;
use monofib::oracle;
use monofib::realization::{act, canonicalize, local_trivialization, local_trivialization_inverse, RationalPoint, Q};
use proptest::prelude::*;

fn group(i: usize) -> Arc<Group> {
    let gs = fixtures::groups();
    gs[i % gs.len()].clone()
}

/// A poset on `n` elements generated by relations `i < j` with `i < j`
/// as indices, so it is acyclic by construction.
fn random_poset(n: usize, bits: &[bool]) -> Poset {
    let names: Vec<String> = (0..n).map(|i| format!("x{i}")).collect();
    let mut rel = Vec::new();
    let mut k = 0;
    for i in 0..n {
        for j in i + 1..n {
            if bits[k % bits.len()] {
                rel.push((i, j));
            }
            k += 1;
        }
    }
    Poset::new(names, &rel).unwrap()
}

fn labeled(g: &Arc<Group>, poset: Poset, labels: &[usize]) -> MPoset {
    let given: HashMap<(usize, usize), _> = poset
        .covers()
        .iter()
        .enumerate()
        .map(|(i, &c)| (c, g.elem(labels[i % labels.len()] % g.order()).unwrap()))
        .collect();
    MPoset::close(g.clone(), poset, &given).unwrap()
}

fn poset_strategy(max: usize) -> impl Strategy<Value = (usize, usize, Vec<bool>, Vec<usize>)> {
    (0usize..6, 1usize..=max, prop::collection::vec(any::<bool>(), 10), prop::collection::vec(0usize..6, 1..8))
}

fn rational_point(complex: &monofib::msimp::SimplicialComplex, pick: usize, weights: &[u8]) -> RationalPoint {
    let simplices = complex.simplices();
    let s = simplices[pick % simplices.len()];
    let mut coords = vec![Q::from_integer(0); complex.vertex_count()];
    let vs: Vec<usize> = s.vertices().collect();
    let total: i64 = vs.iter().enumerate().map(|(i, _)| 1 + weights[i % weights.len()] as i64).sum();
    for (i, &v) in vs.iter().enumerate() {
        coords[v] = Q::new(1 + weights[i % weights.len()] as i64, total);
    }
    RationalPoint::new(complex, coords).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn cyclic_products_are_groups_and_match_their_tables(orders in prop::collection::vec(1u32..5, 1..4)) {
        let g = Group::cyclic_product(&orders).unwrap();
        let t = Group::new(g.to_table_spec()).unwrap();
        prop_assert_eq!(g.order(), orders.iter().product::<u32>() as usize);
        let one = g.identity();
        for a in g.elements() {
            prop_assert_eq!(g.mul(a, one), a);
            prop_assert_eq!(g.mul(g.inv(a), a), one);
            for b in g.elements() {
                prop_assert_eq!(g.mul(a, b).index(), t.mul(t.elem(a.index()).unwrap(), t.elem(b.index()).unwrap()).index());
                for c in g.elements() {
                    prop_assert_eq!(g.mul(g.mul(a, b), c), g.mul(a, g.mul(b, c)));
                }
            }
        }
    }

    #[test]
    fn group_table_validation_rejects_a_changed_entry(i in 0usize..6, j in 0usize..6, k in 0usize..6) {
        let s3 = Group::symmetric3();
        let GroupSpec::Table { mut table, identity } = s3.to_table_spec() else { unreachable!() };
        let changed = table[i][j] != k;
        table[i][j] = k;
        prop_assert_eq!(Group::new(GroupSpec::Table { table, identity }).is_ok(), !changed);
    }

    #[test]
    fn validator_agrees_with_path_products((gi, n, bits, labels) in poset_strategy(5), pair in any::<usize>(), e in 0usize..6) {
        let g = group(gi);
        let p = labeled(&g, random_poset(n, &bits), &labels);
        prop_assert_eq!(p.validate().is_empty(), oracle::cocycle_by_paths(&p));
        // Perturb one comparable pair.
        let pairs: Vec<(usize, usize)> = p.poset().comparable_pairs().collect();
        let (x, y) = pairs[pair % pairs.len()];
        let mut all: HashMap<(usize, usize), _> = pairs.iter().map(|&(a, b)| ((a, b), p.label(a, b))).collect();
        all.insert((x, y), g.elem(e % g.order()).unwrap());
        let q = MPoset::new(g.clone(), p.poset().clone(), &all).unwrap();
        prop_assert_eq!(q.validate().is_empty(), oracle::cocycle_by_paths(&q));
    }

    #[test]
    fn enumeration_matches_brute_force(
        (gi, n, bits, labels) in poset_strategy(3),
        (m, bits2, labels2) in (1usize..=3, prop::collection::vec(any::<bool>(), 4), prop::collection::vec(0usize..6, 1..4)),
    ) {
        let g = group(gi % 3);
        let src = Arc::new(labeled(&g, random_poset(n, &bits), &labels));
        let dst = Arc::new(labeled(&g, random_poset(m, &bits2), &labels2));
        prop_assume!(src.validate().is_empty() && dst.validate().is_empty());
        let fast = enumerate_hom_poset(&src, &dst, DEFAULT_HOM_CAP).unwrap();
        let naive = oracle::naive_hom_poset(&src, &dst);
        prop_assert_eq!(fast.morphisms(), naive.as_slice());
    }

    #[test]
    fn hom_order_is_partial_and_classes_match_bfs((gi, n, bits, labels) in poset_strategy(3), shuffle in any::<u64>()) {
        let g = group(gi);
        let src = Arc::new(labeled(&g, random_poset(n, &bits), &labels));
        prop_assume!(src.validate().is_empty());
        let h = enumerate_hom_poset(&src, &src, DEFAULT_HOM_CAP).unwrap();
        let ms = h.morphisms();
        for a in ms {
            prop_assert!(a.leq(a).unwrap());
            for b in ms {
                if a != b && a.leq(b).unwrap() {
                    prop_assert!(!b.leq(a).unwrap());
                }
            }
        }
        let p = homotopy_classes(&h, default_relation::<MPosetMorphism>()).unwrap();
        prop_assert!(p.same_blocks(&oracle::bfs_classes(&h)));
        // Rebuilding from any input order gives the same partition.
        let mut order: Vec<usize> = (0..h.len()).collect();
        let mut s = shuffle;
        for i in (1..order.len()).rev() {
            s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            order.swap(i, (s >> 33) as usize % (i + 1));
        }
        let again = HomSet::from_morphisms(src.clone(), src.clone(), h.permuted(&order));
        let q = homotopy_classes(&again, default_relation::<MPosetMorphism>()).unwrap();
        prop_assert_eq!(p, q);
    }

    #[test]
    fn simplicial_classes_match_bfs(gi in 0usize..6, ci in 0usize..5, di in 0usize..5) {
        let g = group(gi);
        let cs = fixtures::complexes(&g);
        let (s, t) = (&cs[ci].object, &cs[di].object);
        let h = enumerate_hom_simp(s, t, DEFAULT_HOM_CAP).unwrap();
        let p = homotopy_classes(&h, default_relation::<monofib::msimp::MSimpMorphism>()).unwrap();
        prop_assert!(p.same_blocks(&oracle::bfs_classes(&h)));
    }

    #[test]
    fn action_and_charts(gi in 0usize..6, ci in 0usize..5, pick in any::<usize>(), weights in prop::collection::vec(any::<u8>(), 3),
                         a in 0usize..6, b in 0usize..6, c in 0usize..6) {
        let g = group(gi);
        let space: Arc<MSimp> = fixtures::complexes(&g)[ci].object.clone();
        let alpha = rational_point(space.complex(), pick, &weights);
        let (a, b, c) = (g.elem(a % g.order()).unwrap(), g.elem(b % g.order()).unwrap(), g.elem(c % g.order()).unwrap());
        let p = canonicalize(&space, alpha.support(), &alpha, a).unwrap();
        // Canonical forms are fixed points.
        prop_assert_eq!(&canonicalize(&space, p.simplex(), p.alpha(), p.elem()).unwrap(), &p);
        // Left action.
        let lhs = act(&space, g.mul(b, c), &p).unwrap();
        let rhs = act(&space, b, &act(&space, c, &p).unwrap()).unwrap();
        prop_assert_eq!(&lhs, &rhs);
        prop_assert_eq!(&act(&space, g.identity(), &p).unwrap(), &p);
        // The chart centered at a point is inverted by its inverse chart.
        let (beta, e) = local_trivialization(&space, &alpha, &p).unwrap();
        prop_assert_eq!(&local_trivialization_inverse(&space, &alpha, &beta, e).unwrap(), &p);
        let moved = local_trivialization(&space, &alpha, &act(&space, b, &p).unwrap()).unwrap();
        prop_assert_eq!(moved.1, g.mul(b, e));
    }

    #[test]
    fn instances_round_trip((gi, n, bits, labels) in poset_strategy(5)) {
        let g = group(gi);
        let p = Arc::new(labeled(&g, random_poset(n, &bits), &labels));
        let inst = Instance {
            group: g.clone(),
            posets: vec![Named { name: "P".into(), object: p.clone() }],
            complexes: fixtures::complexes(&g),
            morphisms: Vec::new(),
            points: Vec::new(),
            tasks: Vec::new(),
        };
        let file = to_file(&inst);
        let text = serde_json::to_string(&file).unwrap();
        let again = resolve(&serde_json::from_str(&text).unwrap()).unwrap();
        prop_assert_eq!(&*again.posets[0].object, &*p);
        for (x, y) in inst.complexes.iter().zip(&again.complexes) {
            prop_assert_eq!(&*x.object, &*y.object);
        }
    }
}
