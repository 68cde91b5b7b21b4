//! Exact-rational model of the realization `|S, 𝒮, l|` as an A-fibered
//! bundle over `|S, 𝒮|`.
//!
//! A point is a class of triples `(σ, α, a)` where `α` is a barycentric point
//! with `supp α ⊆ σ` and `a ∈ A`; `(σ, α, a)` and `(τ, α, b)` agree when
//! `a·l(supp α, σ) = b·l(supp α, τ)`. Points are stored in the canonical form
//! `σ = supp α`. Bundle identities are checked pointwise on a fixed sample
//! set, which certifies them for these finite instances but is not a proof
//! of continuity.

use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::sync::Arc;

use num_rational::Rational64;
use num_traits::Signed;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::group::{Elem, Group};
use crate::homsearch::{enumerate_hom_simp, DEFAULT_HOM_CAP};
use crate::msimp::{maps_contiguous, MSimp, MSimpMorphism, Simplex, SimplicialComplex};

pub type Q = Rational64;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RealizationError {
    #[error("not a point of the realization: {0}")]
    NotAPoint(String),
    #[error("{0} is not a simplex")]
    NotASimplex(String),
    #[error("support {support} is not contained in {simplex}")]
    SupportNotContained { support: String, simplex: String },
    #[error("point lies outside the neighborhood U of the chosen center")]
    OutsideNeighborhood,
    #[error("time {0} is outside [0, 1]")]
    TimeOutOfRange(String),
    #[error("group element {0} does not belong to the group")]
    ForeignElement(usize),
    #[error("morphisms are not contiguous")]
    NotContiguous,
    #[error("objects do not match")]
    ObjectMismatch,
}

/// A point of `|S, 𝒮|`: nonnegative coordinates summing to 1 whose support
/// is a simplex.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RationalPoint {
    coords: Vec<Q>,
}

impl RationalPoint {
    pub fn new(complex: &SimplicialComplex, coords: Vec<Q>) -> Result<RationalPoint, RealizationError> {
        if coords.len() != complex.vertex_count() {
            return Err(RealizationError::NotAPoint(format!(
                "expected {} coordinates, got {}",
                complex.vertex_count(),
                coords.len()
            )));
        }
        if let Some(c) = coords.iter().find(|c| **c < Q::from_integer(0)) {
            return Err(RealizationError::NotAPoint(format!("negative coordinate {c}")));
        }
        let sum: Q = coords.iter().sum();
        if sum != Q::from_integer(1) {
            return Err(RealizationError::NotAPoint(format!("coordinates sum to {sum}")));
        }
        let p = RationalPoint { coords };
        if !complex.contains(p.support()) {
            return Err(RealizationError::NotAPoint(format!(
                "support {} is not a simplex",
                complex.simplex_name(p.support())
            )));
        }
        Ok(p)
    }

    /// Indicator of a vertex.
    pub fn vertex(complex: &SimplicialComplex, v: usize) -> RationalPoint {
        let mut coords = vec![Q::from_integer(0); complex.vertex_count()];
        coords[v] = Q::from_integer(1);
        RationalPoint { coords }
    }

    /// Barycenter of a simplex of `complex`.
    pub fn barycenter(complex: &SimplicialComplex, s: Simplex) -> RationalPoint {
        let w = Q::new(1, s.len() as i64);
        let coords = (0..complex.vertex_count())
            .map(|v| if s.contains(v) { w } else { Q::from_integer(0) })
            .collect();
        RationalPoint { coords }
    }

    /// `(1 − t)·self + t·other`.
    pub fn lerp(&self, other: &RationalPoint, t: Q) -> RationalPoint {
        let s = Q::from_integer(1) - t;
        RationalPoint {
            coords: self.coords.iter().zip(&other.coords).map(|(a, b)| s * a + t * b).collect(),
        }
    }

    pub fn coords(&self) -> &[Q] {
        &self.coords
    }

    pub fn coord(&self, v: usize) -> Q {
        self.coords[v]
    }

    pub fn support(&self) -> Simplex {
        Simplex::from_vertices(
            self.coords
                .iter()
                .enumerate()
                .filter(|(_, c)| **c != Q::from_integer(0))
                .map(|(v, _)| v),
        )
    }
}

impl fmt::Display for RationalPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coords.iter().map(|c| c.to_string()).collect();
        write!(f, "({})", parts.join(", "))
    }
}

/// A time parameter in `[0, 1]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct RationalTime(Q);

impl RationalTime {
    pub fn new(t: Q) -> Result<RationalTime, RealizationError> {
        if t < Q::from_integer(0) || t > Q::from_integer(1) {
            return Err(RealizationError::TimeOutOfRange(t.to_string()));
        }
        Ok(RationalTime(t))
    }

    pub fn zero() -> RationalTime {
        RationalTime(Q::from_integer(0))
    }

    pub fn one() -> RationalTime {
        RationalTime(Q::from_integer(1))
    }

    pub fn half() -> RationalTime {
        RationalTime(Q::new(1, 2))
    }

    pub fn value(self) -> Q {
        self.0
    }
}

/// A point of `|S, 𝒮, l|` in canonical form, so that `simplex = supp(alpha)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BundlePoint {
    simplex: Simplex,
    alpha: RationalPoint,
    elem: Elem,
}

impl BundlePoint {
    pub fn simplex(&self) -> Simplex {
        self.simplex
    }

    pub fn alpha(&self) -> &RationalPoint {
        &self.alpha
    }

    pub fn elem(&self) -> Elem {
        self.elem
    }

    pub fn describe(&self, space: &MSimp) -> String {
        format!(
            "[{}, {}, {}]",
            space.complex().simplex_name(self.simplex),
            self.alpha,
            space.group().format(self.elem)
        )
    }
}

/// Canonical representative of the class of `(σ, α, a)`.
pub fn canonicalize(space: &MSimp, sigma: Simplex, alpha: &RationalPoint, a: Elem) -> Result<BundlePoint, RealizationError> {
    let complex = space.complex();
    if !complex.contains(sigma) {
        return Err(RealizationError::NotASimplex(format!("{:#b}", sigma.bits())));
    }
    if !space.group().contains(a) {
        return Err(RealizationError::ForeignElement(a.index()));
    }
    let support = alpha.support();
    if !support.is_subset(sigma) {
        return Err(RealizationError::SupportNotContained {
            support: complex.simplex_name(support),
            simplex: complex.simplex_name(sigma),
        });
    }
    Ok(BundlePoint {
        simplex: support,
        alpha: alpha.clone(),
        elem: space.group().mul(a, space.label_of(support, sigma)),
    })
}

/// `b·[σ, α, a] = [σ, α, b·a]`.
pub fn act(space: &MSimp, b: Elem, p: &BundlePoint) -> Result<BundlePoint, RealizationError> {
    if !space.group().contains(b) {
        return Err(RealizationError::ForeignElement(b.index()));
    }
    Ok(BundlePoint {
        elem: space.group().mul(b, p.elem),
        ..p.clone()
    })
}

/// `π[σ, α, a] = α`.
pub fn projection(p: &BundlePoint) -> &RationalPoint {
    &p.alpha
}

/// All points over `α`, one per group element.
pub fn fiber(space: &MSimp, alpha: &RationalPoint) -> Vec<BundlePoint> {
    space
        .group()
        .elements()
        .map(|a| BundlePoint {
            simplex: alpha.support(),
            alpha: alpha.clone(),
            elem: a,
        })
        .collect()
}

/// `|β(s) − α(s)| < ε` for every vertex, where `ε` is the least positive
/// coordinate of the center `α`.
pub fn in_neighborhood(center: &RationalPoint, beta: &RationalPoint) -> bool {
    let Some(eps) = center.coords.iter().filter(|c| **c > Q::from_integer(0)).min() else {
        return false;
    };
    center
        .coords
        .iter()
        .zip(&beta.coords)
        .all(|(a, b)| (a - b).abs() < *eps)
}

/// The chart over `U_α`, evaluated on the canonical representative:
/// `[σ, β, a] ↦ (β, a·l(supp α, σ)⁻¹)` with `σ = supp β`.
pub fn local_trivialization(
    space: &MSimp,
    center: &RationalPoint,
    p: &BundlePoint,
) -> Result<(RationalPoint, Elem), RealizationError> {
    if !in_neighborhood(center, &p.alpha) {
        return Err(RealizationError::OutsideNeighborhood);
    }
    let g = space.group();
    let l = space.label_of(center.support(), p.simplex);
    Ok((p.alpha.clone(), g.mul(p.elem, g.inv(l))))
}

/// Inverse chart `(β, a) ↦ [supp β, β, a·l(supp α, supp β)]`.
pub fn local_trivialization_inverse(
    space: &MSimp,
    center: &RationalPoint,
    beta: &RationalPoint,
    a: Elem,
) -> Result<BundlePoint, RealizationError> {
    if !in_neighborhood(center, beta) {
        return Err(RealizationError::OutsideNeighborhood);
    }
    let support = beta.support();
    Ok(BundlePoint {
        simplex: support,
        alpha: beta.clone(),
        elem: space.group().mul(a, space.label_of(center.support(), support)),
    })
}

/// `|f|(α)(t) = Σ_{f(s) = t} α(s)`.
pub fn realize_vertex_map(target: &SimplicialComplex, f: &[usize], alpha: &RationalPoint) -> RationalPoint {
    let mut coords = vec![Q::from_integer(0); target.vertex_count()];
    for (s, c) in alpha.coords.iter().enumerate() {
        coords[f[s]] += c;
    }
    RationalPoint { coords }
}

/// Group part of `|f, λ|`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Convention {
    /// `(σ, α, a) ↦ (f σ, |f| α, a·λ(σ))`
    Plain,
    /// `(σ, α, a) ↦ (f σ, |f| α, a·λ(σ)⁻¹)`
    Inverse,
}

impl fmt::Display for Convention {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Convention::Plain => "plain",
            Convention::Inverse => "inverse",
        })
    }
}

fn check_source(m: &MSimpMorphism, sigma: Simplex, alpha: &RationalPoint) -> Result<usize, RealizationError> {
    let complex = m.source().complex();
    let idx = complex
        .index_of(sigma)
        .ok_or_else(|| RealizationError::NotASimplex(format!("{:#b}", sigma.bits())))?;
    if alpha.coords.len() != complex.vertex_count() || !alpha.support().is_subset(sigma) {
        return Err(RealizationError::SupportNotContained {
            support: format!("{alpha}"),
            simplex: complex.simplex_name(sigma),
        });
    }
    Ok(idx)
}

/// `|f, λ|` applied to a raw triple, returned in canonical form.
pub fn realize_raw(
    m: &MSimpMorphism,
    sigma: Simplex,
    alpha: &RationalPoint,
    a: Elem,
    convention: Convention,
) -> Result<BundlePoint, RealizationError> {
    let idx = check_source(m, sigma, alpha)?;
    let g = m.group();
    let lam = match convention {
        Convention::Plain => m.lambda()[idx],
        Convention::Inverse => g.inv(m.lambda()[idx]),
    };
    let target = m.target();
    canonicalize(
        target,
        sigma.image(m.map()),
        &realize_vertex_map(target.complex(), m.map(), alpha),
        g.mul(a, lam),
    )
}

/// `|f, λ|` on a canonical point.
pub fn realize_morphism_point(m: &MSimpMorphism, p: &BundlePoint, convention: Convention) -> Result<BundlePoint, RealizationError> {
    realize_raw(m, p.simplex, &p.alpha, p.elem, convention)
}

/// `h(α, x) = (1 − x)|f|(α) + x|f'|(α)`.
pub fn base_homotopy(a: &MSimpMorphism, b: &MSimpMorphism, alpha: &RationalPoint, t: RationalTime) -> RationalPoint {
    let tc = a.target().complex();
    realize_vertex_map(tc, a.map(), alpha).lerp(&realize_vertex_map(tc, b.map(), alpha), t.value())
}

fn check_pair(a: &MSimpMorphism, b: &MSimpMorphism) -> Result<(), RealizationError> {
    if !crate::mposet::same_object(a.source(), b.source()) || !crate::mposet::same_object(a.target(), b.target()) {
        return Err(RealizationError::ObjectMismatch);
    }
    if !a.mcontiguous(b).map_err(|_| RealizationError::ObjectMismatch)? {
        return Err(RealizationError::NotContiguous);
    }
    Ok(())
}

/// `H([σ, α, a], x) = [f σ ∪ f' σ, h(α, x), a·λ(σ)⁻¹·m(f σ, f σ ∪ f' σ)⁻¹]`
/// on a raw triple.
pub fn homotopy_raw(
    a: &MSimpMorphism,
    b: &MSimpMorphism,
    sigma: Simplex,
    alpha: &RationalPoint,
    elem: Elem,
    t: RationalTime,
) -> Result<BundlePoint, RealizationError> {
    check_pair(a, b)?;
    let idx = check_source(a, sigma, alpha)?;
    let g = a.group();
    let target = a.target();
    let fs = sigma.image(a.map());
    let tau = fs.union(sigma.image(b.map()));
    let part = g.product([elem, g.inv(a.lambda()[idx]), g.inv(target.label_of(fs, tau))]);
    canonicalize(target, tau, &base_homotopy(a, b, alpha, t), part)
}

pub fn homotopy_point(
    a: &MSimpMorphism,
    b: &MSimpMorphism,
    p: &BundlePoint,
    t: RationalTime,
) -> Result<BundlePoint, RealizationError> {
    homotopy_raw(a, b, p.simplex, &p.alpha, p.elem, t)
}

/// Deterministic sample of `|S, 𝒮|`: vertex indicators, barycenters of all
/// simplices, and midpoints between barycenters of every strict inclusion.
pub fn sample_points(complex: &SimplicialComplex) -> Vec<RationalPoint> {
    let mut out = BTreeSet::new();
    for v in 0..complex.vertex_count() {
        out.insert(RationalPoint::vertex(complex, v));
    }
    let centers: Vec<RationalPoint> = complex
        .simplices()
        .iter()
        .map(|&s| RationalPoint::barycenter(complex, s))
        .collect();
    for (i, &s) in complex.simplices().iter().enumerate() {
        out.insert(centers[i].clone());
        for (j, &t) in complex.simplices().iter().enumerate() {
            if s != t && s.is_subset(t) {
                out.insert(centers[i].lerp(&centers[j], Q::new(1, 2)));
            }
        }
    }
    out.into_iter().collect()
}

/// Every raw triple `(σ, α, a)` with the given `α`.
pub fn raw_triples(space: &MSimp, alpha: &RationalPoint) -> Vec<(Simplex, Elem)> {
    let support = alpha.support();
    let mut out = Vec::new();
    for &s in space.complex().simplices() {
        if support.is_subset(s) {
            out.extend(space.group().elements().map(|a| (s, a)));
        }
    }
    out
}

/// Raw triples representing the canonical point `p`.
pub fn representatives(space: &MSimp, p: &BundlePoint) -> Vec<(Simplex, Elem)> {
    let g = space.group();
    space
        .complex()
        .simplices()
        .iter()
        .filter(|s| p.simplex.is_subset(**s))
        .map(|&s| (s, g.mul(p.elem, g.inv(space.label_of(p.simplex, s)))))
        .collect()
}

fn limit(witnesses: &mut Vec<String>, w: String) {
    if witnesses.len() < 16 {
        witnesses.push(w);
    }
}

/// Canonical forms are idempotent, match the defining relation, and
/// `l ≡ 1` collapses every class to `(α, a)`.
pub fn check_canonical(space: &MSimp) -> Vec<String> {
    let g = space.group();
    let c = space.complex();
    let trivial = space.faces().poset().comparable_pairs().all(|(x, y)| space.label(x, y) == g.identity());
    let mut w = Vec::new();
    for alpha in sample_points(c) {
        let s0 = alpha.support();
        let raws = raw_triples(space, &alpha);
        let canon: Vec<BundlePoint> = raws
            .iter()
            .map(|&(s, a)| canonicalize(space, s, &alpha, a).expect("raw triple"))
            .collect();
        for (i, p) in canon.iter().enumerate() {
            if canonicalize(space, p.simplex, &p.alpha, p.elem).as_ref() != Ok(p) {
                limit(&mut w, format!("canonical form of {} is not idempotent", p.describe(space)));
            }
            if trivial && p.elem != raws[i].1 {
                limit(&mut w, format!("trivial labels but {} changes its group part", p.describe(space)));
            }
            for (j, q) in canon.iter().enumerate() {
                let (s, a) = raws[i];
                let (t, b) = raws[j];
                let related = g.mul(a, space.label_of(s0, s)) == g.mul(b, space.label_of(s0, t));
                if related != (p == q) {
                    limit(&mut w, format!("raw triples over {alpha} disagree with the defining relation"));
                }
            }
        }
    }
    w
}

/// Action axioms, A-invariance of the projection, and fibers that are free
/// transitive orbits of size `|A|`.
pub fn check_fibers(space: &MSimp) -> Vec<String> {
    let g = space.group();
    let mut w = Vec::new();
    for alpha in sample_points(space.complex()) {
        let fib = fiber(space, &alpha);
        let set: BTreeSet<&BundlePoint> = fib.iter().collect();
        if set.len() != g.order() {
            limit(&mut w, format!("fiber over {alpha} has {} points", set.len()));
        }
        for p in &fib {
            if act(space, g.identity(), p).as_ref() != Ok(p) {
                limit(&mut w, format!("identity moves {}", p.describe(space)));
            }
            let orbit: BTreeSet<BundlePoint> = g.elements().map(|b| act(space, b, p).unwrap()).collect();
            if orbit.len() != g.order() || orbit.iter().any(|q| !set.contains(q)) {
                limit(&mut w, format!("orbit of {} is not the fiber", p.describe(space)));
            }
            for b1 in g.elements() {
                let q = act(space, b1, p).unwrap();
                if projection(&q) != &alpha {
                    limit(&mut w, format!("projection not invariant at {}", p.describe(space)));
                }
                for b2 in g.elements() {
                    let lhs = act(space, b1, &act(space, b2, p).unwrap()).unwrap();
                    let rhs = act(space, g.mul(b1, b2), p).unwrap();
                    if lhs != rhs {
                        limit(&mut w, format!("action is not associative at {}", p.describe(space)));
                    }
                }
            }
        }
    }
    w
}

/// Every chart over a sampled `U_α` is an A-equivariant bijection onto
/// `U_α × A` that commutes with the projections.
pub fn check_local_trivializations(space: &MSimp) -> Vec<String> {
    let g = space.group();
    let samples = sample_points(space.complex());
    let mut w = Vec::new();
    for center in &samples {
        for beta in samples.iter().filter(|b| in_neighborhood(center, b)) {
            if !center.support().is_subset(beta.support()) {
                limit(&mut w, format!("{beta} is in U of {center} without containing its support"));
                continue;
            }
            let fib = fiber(space, beta);
            let mut seconds = BTreeSet::new();
            for p in &fib {
                let (first, second) = local_trivialization(space, center, p).unwrap();
                if &first != beta {
                    limit(&mut w, format!("chart at {center} moves the base point of {}", p.describe(space)));
                }
                seconds.insert(second);
                if local_trivialization_inverse(space, center, beta, second).as_ref() != Ok(p) {
                    limit(&mut w, format!("inverse chart at {center} fails on {}", p.describe(space)));
                }
                for b in g.elements() {
                    let moved = local_trivialization(space, center, &act(space, b, p).unwrap()).unwrap();
                    if moved != (beta.clone(), g.mul(b, second)) {
                        limit(&mut w, format!("chart at {center} is not equivariant at {}", p.describe(space)));
                    }
                }
            }
            if seconds.len() != g.order() {
                limit(&mut w, format!("chart at {center} is not injective over {beta}"));
            }
        }
    }
    w
}

/// `|f, λ|` is well defined on classes, commutes with the projections and
/// is A-equivariant.
pub fn check_morphism(m: &MSimpMorphism, convention: Convention) -> Vec<String> {
    let source = m.source();
    let target = m.target();
    let g = m.group();
    let mut w = Vec::new();
    for alpha in sample_points(source.complex()) {
        let image_base = realize_vertex_map(target.complex(), m.map(), &alpha);
        for p in fiber(source, &alpha) {
            let image = realize_morphism_point(m, &p, convention).unwrap();
            for (s, a) in representatives(source, &p) {
                if realize_raw(m, s, &alpha, a, convention).as_ref() != Ok(&image) {
                    limit(
                        &mut w,
                        format!("{m}: raw representative on {} of {} has another image", source.complex().simplex_name(s), p.describe(source)),
                    );
                }
            }
            if projection(&image) != &image_base {
                limit(&mut w, format!("{m}: projection does not commute at {}", p.describe(source)));
            }
            if image.simplex != image_base.support() {
                limit(&mut w, format!("{m}: image support differs from f(supp α) at {}", p.describe(source)));
            }
            for b in g.elements() {
                let lhs = realize_morphism_point(m, &act(source, b, &p).unwrap(), convention).unwrap();
                if lhs != act(target, b, &image).unwrap() {
                    limit(&mut w, format!("{m}: not equivariant at {}", p.describe(source)));
                }
            }
        }
    }
    w
}

/// `|e∘f| = |e|∘|f|` on the sample set, and `|id| = id`.
pub fn check_functorial(outer: &MSimpMorphism, inner: &MSimpMorphism, convention: Convention) -> Vec<String> {
    let mut w = Vec::new();
    let Ok(composite) = MSimpMorphism::compose(outer, inner) else {
        return vec![format!("{outer} and {inner} are not composable")];
    };
    let source = inner.source();
    let identity = MSimpMorphism::identity(source);
    for alpha in sample_points(source.complex()) {
        for p in fiber(source, &alpha) {
            let lhs = realize_morphism_point(&composite, &p, convention).unwrap();
            let mid = realize_morphism_point(inner, &p, convention).unwrap();
            let rhs = realize_morphism_point(outer, &mid, convention).unwrap();
            if lhs != rhs {
                limit(&mut w, format!("{outer} after {inner}: composite differs at {}", p.describe(source)));
            }
            if realize_morphism_point(&identity, &p, convention).unwrap() != p {
                limit(&mut w, format!("identity moves {}", p.describe(source)));
            }
        }
    }
    w
}

/// For an m-contiguous pair, `H` is well defined at `t = 1/2`, matches the
/// two realized morphisms at `t = 0, 1`, lies over `h`, and the support of
/// `h(α, t)` follows the three cases.
pub fn check_homotopy(a: &MSimpMorphism, b: &MSimpMorphism, convention: Convention) -> Vec<String> {
    let mut w = Vec::new();
    if let Err(e) = check_pair(a, b) {
        return vec![format!("{a} and {b}: {e}")];
    }
    let source = a.source();
    let g = a.group();
    let times = [RationalTime::zero(), RationalTime::half(), RationalTime::one()];
    for alpha in sample_points(source.complex()) {
        let fs = alpha.support().image(a.map());
        let gs = alpha.support().image(b.map());
        for p in fiber(source, &alpha) {
            for &t in &times {
                let hp = homotopy_point(a, b, &p, t).unwrap();
                let base = base_homotopy(a, b, &alpha, t);
                if projection(&hp) != &base {
                    limit(&mut w, format!("{a} to {b}: H is not over h at {}", p.describe(source)));
                }
                let expected = if t == RationalTime::zero() {
                    fs
                } else if t == RationalTime::one() {
                    gs
                } else {
                    fs.union(gs)
                };
                if base.support() != expected {
                    limit(&mut w, format!("{a} to {b}: support of h at t = {} is wrong over {alpha}", t.value()));
                }
                for (s, e) in representatives(source, &p) {
                    if homotopy_raw(a, b, s, &alpha, e, t).as_ref() != Ok(&hp) {
                        limit(&mut w, format!("{a} to {b}: H is not well defined at t = {} on {}", t.value(), p.describe(source)));
                    }
                }
                for c in g.elements() {
                    let moved = homotopy_point(a, b, &act(source, c, &p).unwrap(), t).unwrap();
                    if moved != act(a.target(), c, &hp).unwrap() {
                        limit(&mut w, format!("{a} to {b}: H is not equivariant at {}", p.describe(source)));
                    }
                }
            }
            let h0 = homotopy_point(a, b, &p, RationalTime::zero()).unwrap();
            if h0 != realize_morphism_point(a, &p, convention).unwrap() {
                limit(&mut w, format!("{a} to {b}: H(·, 0) differs from |f, λ| at {}", p.describe(source)));
            }
            let h1 = homotopy_point(a, b, &p, RationalTime::one()).unwrap();
            if h1 != realize_morphism_point(b, &p, convention).unwrap() {
                limit(&mut w, format!("{a} to {b}: H(·, 1) differs from |f', λ'| at {}", p.describe(source)));
            }
        }
    }
    w
}

/// Result of probing both conventions on the built-in instances.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConventionProbe {
    pub chosen: Option<Convention>,
    /// Failure count per convention, in the order plain, inverse.
    pub failures: Vec<(Convention, usize)>,
    /// A sample failure per convention, when there is one.
    pub witnesses: HashMap<Convention, String>,
}

/// Small labeled edges over `C3` and `S3` on which the two conventions can
/// be told apart.
pub fn probe_instances() -> Vec<Arc<MSimp>> {
    let mut out = Vec::new();
    let edge = || SimplicialComplex::from_names(&["a", "b"], &[&["a", "b"]]).unwrap();
    for (group, la, lb) in [(Group::cyclic(3), 1usize, 2usize), (Group::symmetric3(), 1, 3)] {
        let group = Arc::new(group);
        let c = edge();
        let ab = c.index_of(Simplex::from_vertices([0, 1])).unwrap();
        let mut given = HashMap::new();
        given.insert((c.vertex_simplex(0), ab), group.elem(la).unwrap());
        given.insert((c.vertex_simplex(1), ab), group.elem(lb).unwrap());
        out.push(Arc::new(MSimp::close(group, c, &given).unwrap()));
    }
    out
}

/// Runs functoriality, well-definedness and the homotopy endpoint checks
/// for both conventions on the probe instances and keeps the one that
/// passes everything.
pub fn select_convention() -> ConventionProbe {
    let mut failures = Vec::new();
    let mut witnesses = HashMap::new();
    let spaces = probe_instances();
    for convention in [Convention::Plain, Convention::Inverse] {
        let mut count = 0;
        for space in &spaces {
            let h = enumerate_hom_simp(space, space, DEFAULT_HOM_CAP).expect("probe hom-set is small");
            let mut found = Vec::new();
            for a in h.morphisms() {
                found.extend(check_morphism(a, convention));
                for b in h.morphisms() {
                    found.extend(check_functorial(b, a, convention));
                    if maps_contiguous(space.complex(), space.complex(), a.map(), b.map()) && a.mcontiguous(b).unwrap() {
                        found.extend(check_homotopy(a, b, convention));
                    }
                }
            }
            count += found.len();
            if let Some(first) = found.into_iter().next() {
                witnesses.entry(convention).or_insert(first);
            }
        }
        failures.push((convention, count));
    }
    let passing: Vec<Convention> = failures.iter().filter(|(_, n)| *n == 0).map(|(c, _)| *c).collect();
    let chosen = match passing.as_slice() {
        [only] => Some(*only),
        _ => None,
    };
    ConventionProbe {
        chosen,
        failures,
        witnesses,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Q {
        Q::new(n, d)
    }

    /// Edge `{x, y}` with `l({x}, {x, y}) = g`.
    fn edge(group: Group, g: usize) -> Arc<MSimp> {
        let group = Arc::new(group);
        let c = SimplicialComplex::from_names(&["x", "y"], &[&["x", "y"]]).unwrap();
        let xy = c.index_of(Simplex::from_vertices([0, 1])).unwrap();
        let mut given = HashMap::new();
        given.insert((c.vertex_simplex(0), xy), group.elem(g).unwrap());
        Arc::new(MSimp::close(group, c, &given).unwrap())
    }

    #[test]
    fn points_validate() {
        let c = SimplicialComplex::from_names(&["a", "b", "c"], &[&["a", "b"]]).unwrap();
        assert!(RationalPoint::new(&c, vec![q(1, 2), q(1, 2), q(0, 1)]).is_ok());
        assert!(RationalPoint::new(&c, vec![q(1, 2), q(0, 1), q(1, 2)]).is_err());
        assert!(RationalPoint::new(&c, vec![q(1, 2), q(1, 3), q(0, 1)]).is_err());
        assert!(RationalPoint::new(&c, vec![q(3, 2), q(-1, 2), q(0, 1)]).is_err());
        assert!(RationalTime::new(q(3, 2)).is_err());
    }

    #[test]
    fn canonical_form() {
        let space = edge(Group::cyclic(2), 1);
        let c = space.complex();
        let x = RationalPoint::vertex(c, 0);
        let xy = Simplex::from_vertices([0, 1]);
        let one = space.group().identity();
        let g = space.group().elem(1).unwrap();
        // supp α = σ leaves the triple unchanged.
        let p = canonicalize(&space, Simplex::singleton(0), &x, g).unwrap();
        assert_eq!((p.simplex(), p.elem()), (Simplex::singleton(0), g));
        // supp α = {x} inside {x, y} picks up l({x}, {x, y}) = g.
        let p = canonicalize(&space, xy, &x, one).unwrap();
        assert_eq!((p.simplex(), p.elem()), (Simplex::singleton(0), g));
        assert_eq!(canonicalize(&space, Simplex::singleton(0), &x, g).unwrap(), p);
        let y = RationalPoint::vertex(c, 1);
        assert!(canonicalize(&space, Simplex::singleton(0), &y, one).is_err());
    }

    #[test]
    fn bundle_checks_pass() {
        for space in [edge(Group::cyclic(2), 1), edge(Group::cyclic_product(&[2, 2]).unwrap(), 3), edge(Group::symmetric3(), 4)] {
            assert!(check_canonical(&space).is_empty());
            assert!(check_fibers(&space).is_empty());
            assert!(check_local_trivializations(&space).is_empty());
        }
    }

    #[test]
    fn chart_on_labeled_edge() {
        let space = edge(Group::cyclic(2), 1);
        let c = space.complex();
        let center = RationalPoint::vertex(c, 0);
        let beta = RationalPoint::new(c, vec![q(3, 4), q(1, 4)]).unwrap();
        assert!(in_neighborhood(&center, &beta));
        assert!(!in_neighborhood(&center, &RationalPoint::vertex(c, 1)));
        let one = space.group().identity();
        let p = canonicalize(&space, Simplex::from_vertices([0, 1]), &beta, one).unwrap();
        // l({x}, {x, y})⁻¹ = g in C2.
        assert_eq!(local_trivialization(&space, &center, &p).unwrap(), (beta, space.group().elem(1).unwrap()));
    }

    #[test]
    fn vertex_maps() {
        let c = SimplicialComplex::from_names(&["a", "b"], &[&["a", "b"]]).unwrap();
        let t = SimplicialComplex::from_names(&["c"], &[]).unwrap();
        let mid = RationalPoint::barycenter(&c, Simplex::from_vertices([0, 1]));
        assert_eq!(realize_vertex_map(&t, &[0, 0], &mid), RationalPoint::vertex(&t, 0));
        assert_eq!(realize_vertex_map(&c, &[1, 0], &RationalPoint::vertex(&c, 0)), RationalPoint::vertex(&c, 1));
        assert_eq!(realize_vertex_map(&c, &[0, 1], &mid), mid);
    }

    #[test]
    fn inverse_convention_is_selected() {
        let probe = select_convention();
        assert_eq!(probe.chosen, Some(Convention::Inverse));
        assert!(probe.failures.iter().any(|&(c, n)| c == Convention::Plain && n > 0));
    }

    #[test]
    fn faithfulness_separation() {
        let space = edge(Group::cyclic(3), 1);
        let h = enumerate_hom_simp(&space, &space, DEFAULT_HOM_CAP).unwrap();
        let xy = Simplex::from_vertices([0, 1]);
        let idx = space.complex().index_of(xy).unwrap();
        let bary = RationalPoint::barycenter(space.complex(), xy);
        let one = space.group().identity();
        for a in h.morphisms() {
            for b in h.morphisms() {
                if a.map() == b.map() && a.lambda()[idx] != b.lambda()[idx] {
                    let pa = realize_raw(a, xy, &bary, one, Convention::Inverse).unwrap();
                    let pb = realize_raw(b, xy, &bary, one, Convention::Inverse).unwrap();
                    assert_ne!(pa, pb);
                }
            }
        }
    }

    #[test]
    fn homotopy_endpoints_on_edge() {
        let space = edge(Group::cyclic(2), 1);
        let h = enumerate_hom_simp(&space, &space, DEFAULT_HOM_CAP).unwrap();
        let mut pairs = 0;
        for a in h.morphisms() {
            assert!(check_morphism(a, Convention::Inverse).is_empty());
            for b in h.morphisms() {
                if a.mcontiguous(b).unwrap() {
                    pairs += 1;
                    assert!(check_homotopy(a, b, Convention::Inverse).is_empty(), "{a} {b}");
                }
            }
        }
        assert!(pairs > h.len());
        // a = b keeps the base point fixed in t.
        let a = &h.morphisms()[0];
        let alpha = RationalPoint::barycenter(space.complex(), Simplex::from_vertices([0, 1]));
        let f_alpha = realize_vertex_map(space.complex(), a.map(), &alpha);
        for t in [RationalTime::zero(), RationalTime::new(q(1, 3)).unwrap(), RationalTime::one()] {
            assert_eq!(base_homotopy(a, a, &alpha, t), f_alpha);
        }
    }
}
