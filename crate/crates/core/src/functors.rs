//! The order-complex functor `Σ`, the face-poset functor `Π`, and the two
//! union constructions that witness homotopy preservation.

use std::collections::HashMap;
use std::sync::Arc;

use thiserror::Error;

use crate::group::Elem;
use crate::mposet::{same_object, MPoset, MPosetMorphism, MorphismError};
use crate::msimp::{ComplexError, MSimp, MSimpMorphism, Simplex, SimplicialComplex};

/// Default cap on the number of chains materialized by `Σ`.
pub const DEFAULT_CHAIN_CAP: usize = 100_000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FunctorError {
    #[error("poset has more than {cap} chains")]
    TooManyChains { cap: usize },
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error(transparent)]
    Complex(#[from] ComplexError),
    #[error(transparent)]
    Morphism(#[from] MorphismError),
}

/// All nonempty chains of a poset, each listed bottom to top.
fn chains(p: &MPoset, cap: usize) -> Result<Vec<Vec<usize>>, FunctorError> {
    let poset = p.poset();
    let order = poset.linear_extension();
    let mut out: Vec<Vec<usize>> = Vec::new();
    // Extend each chain only by elements strictly above its top.
    let mut stack: Vec<Vec<usize>> = order.iter().map(|&x| vec![x]).collect();
    while let Some(ch) = stack.pop() {
        let top = *ch.last().unwrap();
        for &y in &order {
            if poset.lt(top, y) {
                let mut next = ch.clone();
                next.push(y);
                stack.push(next);
            }
        }
        out.push(ch);
        if out.len() > cap {
            return Err(FunctorError::TooManyChains { cap });
        }
    }
    Ok(out)
}

/// Largest element of a chain.
fn chain_top(p: &MPoset, s: Simplex) -> usize {
    let poset = p.poset();
    s.vertices()
        .find(|&x| s.vertices().all(|y| poset.leq(y, x)))
        .expect("simplex of an order complex is a chain")
}

/// `Σ(X, l)`: the order complex with `Σ(l)(σ, σ') = l(max σ, max σ')`.
pub fn sigma_obj(p: &MPoset) -> Result<MSimp, FunctorError> {
    sigma_obj_capped(p, DEFAULT_CHAIN_CAP)
}

pub fn sigma_obj_capped(p: &MPoset, cap: usize) -> Result<MSimp, FunctorError> {
    if !p.validate().is_empty() {
        return Err(FunctorError::InvalidInput("labeling violates the cocycle condition".into()));
    }
    let all = chains(p, cap)?;
    let complex = SimplicialComplex::new(p.poset().names().to_vec(), &all)?;
    let tops: Vec<usize> = complex.simplices().iter().map(|&s| chain_top(p, s)).collect();
    let mut labels = HashMap::new();
    for (i, &s) in complex.simplices().iter().enumerate() {
        for (j, &t) in complex.simplices().iter().enumerate() {
            if s.is_subset(t) {
                labels.insert((i, j), p.label(tops[i], tops[j]));
            }
        }
    }
    MSimp::new(p.group().clone(), complex, &labels)
        .map_err(|e| FunctorError::InvalidInput(e.to_string()))
}

/// `Σ(f, λ) = (f, σ ↦ λ(max σ))` between given images of source and target.
pub fn sigma_mor_between(
    m: &MPosetMorphism,
    source: &Arc<MSimp>,
    target: &Arc<MSimp>,
) -> Result<MSimpMorphism, FunctorError> {
    let lambda: Vec<Elem> = source
        .complex()
        .simplices()
        .iter()
        .map(|&s| m.lambda()[chain_top(m.source(), s)])
        .collect();
    Ok(MSimpMorphism::new(
        source.clone(),
        target.clone(),
        m.map().to_vec(),
        lambda,
    )?)
}

/// `Σ(f, λ)`, building both order complexes.
pub fn sigma_mor(m: &MPosetMorphism) -> Result<MSimpMorphism, FunctorError> {
    if !m.is_valid() {
        return Err(FunctorError::InvalidInput("morphism is not valid".into()));
    }
    let source = Arc::new(sigma_obj(m.source())?);
    let target = if same_object(m.source(), m.target()) {
        source.clone()
    } else {
        Arc::new(sigma_obj(m.target())?)
    };
    sigma_mor_between(m, &source, &target)
}

/// `Π(S, 𝒮, l) = (𝒮, l)`.
pub fn pi_obj(s: &MSimp) -> MPoset {
    s.faces().clone()
}

/// `Π(f, λ) = (σ ↦ f(σ), λ)` between given face posets.
pub fn pi_mor_between(
    m: &MSimpMorphism,
    source: &Arc<MPoset>,
    target: &Arc<MPoset>,
) -> Result<MPosetMorphism, FunctorError> {
    if !m.is_simplicial() {
        return Err(FunctorError::InvalidInput("vertex map is not simplicial".into()));
    }
    Ok(MPosetMorphism::new(
        source.clone(),
        target.clone(),
        m.simplex_map(),
        m.lambda().to_vec(),
    )?)
}

pub fn pi_mor(m: &MSimpMorphism) -> Result<MPosetMorphism, FunctorError> {
    if !m.is_valid() {
        return Err(FunctorError::InvalidInput("morphism is not valid".into()));
    }
    let source = Arc::new(pi_obj(m.source()));
    let target = if same_object(m.source(), m.target()) {
        source.clone()
    } else {
        Arc::new(pi_obj(m.target()))
    };
    pi_mor_between(m, &source, &target)
}

/// `(f ∪ f', λ ∪ λ')`: pointwise the larger of `f(x)`, `f'(x)`, with `λ'(x)`
/// where `f(x) ≤ f'(x)` and `λ(x)` where `f'(x) < f(x)`.
///
/// Requires `f(x)` and `f'(x)` comparable for every `x`. The result is a
/// morphism above both inputs whenever `Σ(a)` and `Σ(b)` are contiguous in
/// the A-monomial sense; without that hypothesis it need not be valid.
pub fn union_morphism_poset(a: &MPosetMorphism, b: &MPosetMorphism) -> Result<MPosetMorphism, FunctorError> {
    if !(same_object(a.source(), b.source()) && same_object(a.target(), b.target())) {
        return Err(MorphismError::HomSetMismatch.into());
    }
    let dst = a.target().poset();
    let mut map = Vec::with_capacity(a.map().len());
    let mut lambda = Vec::with_capacity(a.map().len());
    for x in 0..a.map().len() {
        let (fx, gx) = (a.map()[x], b.map()[x]);
        if dst.leq(fx, gx) {
            map.push(gx);
            lambda.push(b.lambda()[x]);
        } else if dst.leq(gx, fx) {
            map.push(fx);
            lambda.push(a.lambda()[x]);
        } else {
            return Err(MorphismError::Precondition(format!(
                "f({0}) = {1} and f'({0}) = {2} are incomparable",
                a.source().poset().name(x),
                dst.name(fx),
                dst.name(gx)
            ))
            .into());
        }
    }
    Ok(MPosetMorphism::new(
        a.source().clone(),
        a.target().clone(),
        map,
        lambda,
    )?)
}

/// `(f ∪ f', η)` from `Π(S)` to `Π(T)` with `η(σ) = m(f'(σ), f(σ)∪f'(σ))·λ'(σ)`.
/// Requires `a − b`.
pub fn eta_union_simplex_between(
    a: &MSimpMorphism,
    b: &MSimpMorphism,
    source: &Arc<MPoset>,
    target: &Arc<MPoset>,
) -> Result<MPosetMorphism, FunctorError> {
    if !a.mcontiguous(b)? {
        return Err(MorphismError::Precondition("morphisms are not contiguous".into()).into());
    }
    let g = a.group();
    let tgt = a.target();
    let cx = a.source().complex();
    let mut map = Vec::with_capacity(cx.len());
    let mut eta = Vec::with_capacity(cx.len());
    for (i, s) in cx.simplices().iter().enumerate() {
        let gs = s.image(b.map());
        let u = s.image(a.map()).union(gs);
        let ui = tgt.complex().index_of(u).expect("contiguous");
        let gi = tgt.complex().index_of(gs).expect("simplicial");
        map.push(ui);
        eta.push(g.mul(tgt.label(gi, ui), b.lambda()[i]));
    }
    Ok(MPosetMorphism::new(source.clone(), target.clone(), map, eta)?)
}

pub fn eta_union_simplex(a: &MSimpMorphism, b: &MSimpMorphism) -> Result<MPosetMorphism, FunctorError> {
    let source = Arc::new(pi_obj(a.source()));
    let target = Arc::new(pi_obj(a.target()));
    eta_union_simplex_between(a, b, &source, &target)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::Group;
    use crate::mposet::Poset;

    fn chain(g: &Arc<Group>, k: usize, labels: &[usize]) -> Arc<MPoset> {
        let names = (0..k).map(|i| format!("x{i}")).collect();
        let rel: Vec<_> = (1..k).map(|i| (i - 1, i)).collect();
        let given = labels
            .iter()
            .enumerate()
            .map(|(i, &v)| ((i, i + 1), g.elem(v).unwrap()))
            .collect();
        Arc::new(MPoset::close(g.clone(), Poset::new(names, &rel).unwrap(), &given).unwrap())
    }

    #[test]
    fn sigma_of_antichain_and_chains() {
        let g = Arc::new(Group::cyclic(2));
        let anti = MPoset::trivial(g.clone(), Poset::discrete(vec!["a".into(), "b".into()]).unwrap());
        let s = sigma_obj(&anti).unwrap();
        assert_eq!(s.len(), 2);

        let c2 = chain(&g, 2, &[1]);
        let s = sigma_obj(&c2).unwrap();
        assert_eq!(s.len(), 3);
        let gen = g.elem(1).unwrap();
        let x0 = Simplex::singleton(0);
        let x1 = Simplex::singleton(1);
        let both = Simplex::from_vertices([0, 1]);
        assert_eq!(s.label_of(x0, both), gen);
        assert_eq!(s.label_of(x1, both), g.identity());

        let c3 = chain(&g, 3, &[1, 1]);
        let s = sigma_obj(&c3).unwrap();
        assert_eq!(s.len(), 7);
        assert!(s.validate().is_empty());
        assert!(matches!(
            sigma_obj_capped(&c3, 5),
            Err(FunctorError::TooManyChains { cap: 5 })
        ));
    }

    #[test]
    fn sigma_of_morphisms() {
        let g = Arc::new(Group::cyclic(2));
        let src = chain(&g, 2, &[1]);
        let dst = chain(&g, 2, &[0]);
        let gen = g.elem(1).unwrap();
        let m = MPosetMorphism::new(src.clone(), dst.clone(), vec![0, 1], vec![gen, g.identity()]).unwrap();
        let sm = sigma_mor(&m).unwrap();
        assert!(sm.is_valid());
        let top = sm.source().complex().index_of(Simplex::from_vertices([0, 1])).unwrap();
        assert_eq!(sm.lambda()[top], m.lambda()[1]);

        let id = sigma_mor(&MPosetMorphism::identity(&src)).unwrap();
        assert_eq!(id, MSimpMorphism::identity(id.source()));
    }

    #[test]
    fn pi_of_objects_and_morphisms() {
        let g = Arc::new(Group::cyclic(2));
        let point = MSimp::trivial(g.clone(), SimplicialComplex::from_names(&["a"], &[]).unwrap());
        assert_eq!(pi_obj(&point).len(), 1);

        let edge = Arc::new(MSimp::trivial(
            g.clone(),
            SimplicialComplex::from_names(&["a", "b"], &[&["a", "b"]]).unwrap(),
        ));
        let p = pi_obj(&edge);
        assert_eq!(p.len(), 3);
        let minimal: Vec<_> = (0..3).filter(|&x| (0..3).all(|y| !p.poset().lt(y, x))).collect();
        assert_eq!(minimal.len(), 2);
        for (s, t) in p.poset().comparable_pairs() {
            assert_eq!(p.label(s, t), edge.label(s, t));
        }

        let pt = Arc::new(MSimp::trivial(g.clone(), SimplicialComplex::from_names(&["c"], &[]).unwrap()));
        let collapse = MSimpMorphism::new(edge.clone(), pt.clone(), vec![0, 0], vec![g.identity(); 3]).unwrap();
        let pm = pi_mor(&collapse).unwrap();
        assert_eq!(pm.map(), &[0, 0, 0]);
        assert!(pm.is_valid());
        assert_eq!(
            pi_mor(&MSimpMorphism::identity(&edge)).unwrap().map(),
            &[0, 1, 2]
        );
    }

    #[test]
    fn union_morphism_cases() {
        let g = Arc::new(Group::cyclic(2));
        let gen = g.elem(1).unwrap();
        let e = g.identity();
        let src = chain(&g, 2, &[1]);
        let dst = chain(&g, 2, &[0]);
        let lo = MPosetMorphism::new(src.clone(), dst.clone(), vec![0, 0], vec![gen, e]).unwrap();
        let hi = MPosetMorphism::new(src.clone(), dst.clone(), vec![1, 1], vec![gen, e]).unwrap();
        assert_eq!(union_morphism_poset(&lo, &lo).unwrap(), lo);
        let u = union_morphism_poset(&lo, &hi).unwrap();
        assert_eq!(u, hi);
        // Mixed branches: x0 takes the second argument, x1 the first.
        let mid = MPosetMorphism::new(src.clone(), dst.clone(), vec![0, 1], vec![gen, e]).unwrap();
        let u = union_morphism_poset(&mid, &lo).unwrap();
        assert!(u.is_valid());
        assert!(mid.leq(&u).unwrap() && lo.leq(&u).unwrap());

        let anti = Arc::new(MPoset::trivial(g.clone(), Poset::discrete(vec!["u".into(), "v".into()]).unwrap()));
        let one = Arc::new(MPoset::trivial(g.clone(), Poset::discrete(vec!["p".into()]).unwrap()));
        let a = MPosetMorphism::new(one.clone(), anti.clone(), vec![0], vec![e]).unwrap();
        let b = MPosetMorphism::new(one.clone(), anti.clone(), vec![1], vec![e]).unwrap();
        assert!(union_morphism_poset(&a, &b).is_err());
    }

    #[test]
    fn eta_union_examples() {
        let g = Arc::new(Group::trivial());
        let point = Arc::new(MSimp::trivial(g.clone(), SimplicialComplex::from_names(&["p"], &[]).unwrap()));
        let edge = Arc::new(MSimp::trivial(
            g.clone(),
            SimplicialComplex::from_names(&["u", "v"], &[&["u", "v"]]).unwrap(),
        ));
        let a = MSimpMorphism::new(point.clone(), edge.clone(), vec![0], vec![g.identity()]).unwrap();
        let b = MSimpMorphism::new(point.clone(), edge.clone(), vec![1], vec![g.identity()]).unwrap();
        let eta = eta_union_simplex(&a, &b).unwrap();
        let uv = edge.complex().index_of(Simplex::from_vertices([0, 1])).unwrap();
        assert_eq!(eta.map(), &[uv]);
        assert_eq!(eta.lambda(), &[g.identity()]);

        let same = eta_union_simplex(&a, &a).unwrap();
        assert_eq!(same.map(), pi_mor(&a).unwrap().map());
        assert_eq!(same.lambda(), a.lambda());

        let pa = pi_mor_between(&a, &Arc::new(pi_obj(&point)), eta.target()).unwrap();
        let pa = MPosetMorphism::new(eta.source().clone(), eta.target().clone(), pa.map().to_vec(), pa.lambda().to_vec()).unwrap();
        assert!(pa.leq(&eta).unwrap());
    }
}
