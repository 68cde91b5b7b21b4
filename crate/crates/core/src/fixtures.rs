//! The fixed battery of small groups, posets and complexes that the lemma
//! checks run over.

use std::collections::HashMap;
use std::sync::Arc;

use crate::group::Group;
use crate::mposet::{MPoset, Poset};
use crate::msimp::{MSimp, Simplex, SimplicialComplex};

/// An object with a display name.
#[derive(Clone, Debug)]
pub struct Named<T> {
    pub name: String,
    pub object: Arc<T>,
}

impl<T> Named<T> {
    fn new(name: &str, object: T) -> Named<T> {
        Named {
            name: name.to_string(),
            object: Arc::new(object),
        }
    }
}

/// All fixtures over one group.
#[derive(Clone, Debug)]
pub struct Battery {
    pub group: Arc<Group>,
    pub posets: Vec<Named<MPoset>>,
    pub complexes: Vec<Named<MSimp>>,
}

/// `C1, C2, C3, C4, C2×C2, S3`.
pub fn groups() -> Vec<Arc<Group>> {
    vec![
        Arc::new(Group::trivial()),
        Arc::new(Group::cyclic(2)),
        Arc::new(Group::cyclic(3)),
        Arc::new(Group::cyclic(4)),
        Arc::new(Group::cyclic_product(&[2, 2]).unwrap()),
        Arc::new(Group::symmetric3()),
    ]
}

/// A poset given by cover relations, each labeled by a group element index
/// (reduced modulo the group order), closed along paths.
pub fn labeled_poset(group: &Arc<Group>, names: &[&str], covers: &[(&str, &str, usize)]) -> MPoset {
    let rel: Vec<(&str, &str)> = covers.iter().map(|&(a, b, _)| (a, b)).collect();
    let poset = Poset::from_names(names, &rel).expect("fixture poset");
    let mut given = HashMap::new();
    for &(a, b, e) in covers {
        let x = poset.index_of(a).unwrap();
        let y = poset.index_of(b).unwrap();
        given.insert((x, y), group.elem(e % group.order()).unwrap());
    }
    MPoset::close(group.clone(), poset, &given).expect("fixture labels")
}

/// A complex given by facets, with labels on some inclusions `(σ, τ)`.
pub fn labeled_complex(
    group: &Arc<Group>,
    names: &[&str],
    facets: &[&[&str]],
    labels: &[(&[&str], &[&str], usize)],
) -> MSimp {
    let complex = SimplicialComplex::from_names(names, facets).expect("fixture complex");
    let simplex = |vs: &[&str]| {
        let s = Simplex::from_vertices(vs.iter().map(|v| complex.vertex_index(v).unwrap()));
        complex.index_of(s).expect("fixture simplex")
    };
    let mut given = HashMap::new();
    for &(s, t, e) in labels {
        given.insert((simplex(s), simplex(t)), group.elem(e % group.order()).unwrap());
    }
    MSimp::close(group.clone(), complex, &given).expect("fixture labels")
}

/// Posets of at most four elements with labels that exercise the group.
pub fn posets(group: &Arc<Group>) -> Vec<Named<MPoset>> {
    let g = group;
    vec![
        Named::new("point", labeled_poset(g, &["p"], &[])),
        Named::new("chain2", labeled_poset(g, &["x0", "x1"], &[("x0", "x1", 1)])),
        Named::new("antichain2", labeled_poset(g, &["u", "v"], &[])),
        Named::new("chain3", labeled_poset(g, &["x0", "x1", "x2"], &[("x0", "x1", 1), ("x1", "x2", 2)])),
        Named::new("vee", labeled_poset(g, &["b", "l", "r"], &[("b", "l", 1), ("b", "r", 2)])),
        Named::new("wedge", labeled_poset(g, &["l", "r", "t"], &[("l", "t", 2), ("r", "t", 1)])),
        Named::new(
            "crown4",
            labeled_poset(g, &["a", "b", "c", "d"], &[("a", "c", 1), ("a", "d", 0), ("b", "c", 0), ("b", "d", 0)]),
        ),
    ]
}

/// Complexes on at most three vertices.
pub fn complexes(group: &Arc<Group>) -> Vec<Named<MSimp>> {
    let g = group;
    vec![
        Named::new("point", labeled_complex(g, &["p"], &[], &[])),
        Named::new("two-points", labeled_complex(g, &["u", "v"], &[], &[])),
        Named::new("edge", labeled_complex(g, &["a", "b"], &[&["a", "b"]], &[(&["a"], &["a", "b"], 1)])),
        Named::new(
            "path3",
            labeled_complex(
                g,
                &["a", "b", "c"],
                &[&["a", "b"], &["b", "c"]],
                &[(&["a"], &["a", "b"], 1), (&["c"], &["b", "c"], 2)],
            ),
        ),
        Named::new(
            "hollow-triangle",
            labeled_complex(
                g,
                &["a", "b", "c"],
                &[&["a", "b"], &["b", "c"], &["a", "c"]],
                &[(&["a"], &["a", "b"], 1), (&["b"], &["b", "c"], 2)],
            ),
        ),
    ]
}

pub fn battery(group: Arc<Group>) -> Battery {
    Battery {
        posets: posets(&group),
        complexes: complexes(&group),
        group,
    }
}

pub fn full_battery() -> Vec<Battery> {
    groups().into_iter().map(battery).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn battery_is_valid() {
        for b in full_battery() {
            for p in &b.posets {
                assert!(p.object.validate().is_empty(), "{} over {}", p.name, b.group.name());
                assert!(p.object.len() <= 5);
            }
            for c in &b.complexes {
                assert!(c.object.validate().is_empty(), "{} over {}", c.name, b.group.name());
                assert!(c.object.complex().vertex_count() <= 4);
            }
        }
    }

    #[test]
    fn crown_carries_holonomy_in_c2() {
        let g = Arc::new(Group::cyclic(2));
        let crown = &posets(&g)[6].object;
        let one = g.identity();
        // Around a<c>b<d>a the labels multiply to the nontrivial element.
        let loop_product = g.product([crown.label(0, 2), crown.label(1, 2), crown.label(1, 3), crown.label(0, 3)]);
        assert_ne!(loop_product, one);
    }
}
