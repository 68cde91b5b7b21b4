//! The lemma suite: one check per property, each producing a report line
//! with counts and, on failure, concrete witnesses.

use std::collections::{BTreeMap, HashMap, HashSet};
use std::sync::Arc;

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use serde::Serialize;

use crate::fixtures::{self, Battery};
use crate::functors::{eta_union_simplex_between, pi_mor_between, pi_obj, sigma_mor_between, sigma_obj, union_morphism_poset};
use crate::group::{Elem, Group};
use crate::homsearch::{
    default_relation, enumerate_hom_poset, enumerate_hom_simp, homotopy_classes, quotient_compose_check, ClassPartition,
    HomError, HomMorphism, HomSet,
};
use crate::mposet::{MPoset, MPosetMorphism, Poset};
use crate::msimp::{iota_contiguity, maps_contiguous, MSimp, MSimpMorphism};
use crate::oracle;
use crate::realization::{self, canonicalize, fiber, raw_triples, sample_points, Convention};

/// Morphisms per hom-set used when a check ranges over triples.
const TRIPLE_SAMPLE: usize = 12;
/// Witnesses kept per report line.
const MAX_WITNESSES: usize = 20;
/// Seed of the generated validator corpus.
pub const CORPUS_SEED: u64 = 0x6d6f_6e6f_6669_6221;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

/// One line of a JSON-lines report.
#[derive(Clone, Debug, Serialize)]
pub struct ReportLine {
    pub id: usize,
    pub check: String,
    pub status: Status,
    pub witnesses: Vec<String>,
    pub counts: BTreeMap<String, u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub data: Option<serde_json::Value>,
}

impl ReportLine {
    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }

    pub fn text(&self) -> String {
        let status = match self.status {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
        };
        let counts: Vec<String> = self.counts.iter().map(|(k, v)| format!("{k}={v}")).collect();
        let mut out = format!("[{status}] {:>2} {} ({})", self.id, self.check, counts.join(", "));
        for w in &self.witnesses {
            out.push_str("\n      ");
            out.push_str(w);
        }
        out
    }
}

/// Accumulates counts and witnesses for one check.
#[derive(Default)]
struct Tally {
    counts: BTreeMap<String, u64>,
    witnesses: Vec<String>,
    failures: u64,
}

impl Tally {
    fn add(&mut self, key: &str, n: u64) {
        *self.counts.entry(key.to_string()).or_default() += n;
    }

    fn fail(&mut self, w: String) {
        self.failures += 1;
        if self.witnesses.len() < MAX_WITNESSES {
            self.witnesses.push(w);
        }
    }

    fn expect(&mut self, ok: bool, w: impl FnOnce() -> String) {
        if !ok {
            self.fail(w());
        }
    }

    fn extend(&mut self, ws: Vec<String>) {
        for w in ws {
            self.fail(w);
        }
    }

    fn finish(mut self, id: usize, check: &str, data: Option<serde_json::Value>) -> ReportLine {
        self.counts.insert("failures".into(), self.failures);
        ReportLine {
            id,
            check: check.to_string(),
            status: if self.failures == 0 { Status::Pass } else { Status::Fail },
            witnesses: self.witnesses,
            counts: self.counts,
            data,
        }
    }
}

/// Evenly spaced sample of at most `k` items, in order.
fn spread<T>(items: &[T], k: usize) -> Vec<&T> {
    if items.len() <= k {
        return items.iter().collect();
    }
    (0..k).map(|i| &items[i * items.len() / k]).collect()
}

/// Every hom-set between a list of objects, with its class partition.
pub struct World<M: HomMorphism> {
    pub group: Arc<Group>,
    pub names: Vec<String>,
    pub objects: Vec<Arc<M::Object>>,
    homs: Vec<Vec<Option<(HomSet<M>, ClassPartition)>>>,
    pub skipped: Vec<String>,
}

impl<M: HomMorphism> World<M> {
    fn build(
        group: Arc<Group>,
        names: Vec<String>,
        objects: Vec<Arc<M::Object>>,
        enumerate: impl Fn(&Arc<M::Object>, &Arc<M::Object>) -> Result<HomSet<M>, HomError>,
    ) -> World<M> {
        let mut skipped = Vec::new();
        let homs = objects
            .iter()
            .enumerate()
            .map(|(i, x)| {
                objects
                    .iter()
                    .enumerate()
                    .map(|(j, y)| match enumerate(x, y) {
                        Ok(h) => {
                            let p = homotopy_classes(&h, default_relation::<M>()).expect("matching relation");
                            Some((h, p))
                        }
                        Err(e) => {
                            skipped.push(format!("{} -> {}: {e}", names[i], names[j]));
                            None
                        }
                    })
                    .collect()
            })
            .collect();
        World {
            group,
            names,
            objects,
            homs,
            skipped,
        }
    }

    pub fn len(&self) -> usize {
        self.objects.len()
    }

    pub fn is_empty(&self) -> bool {
        self.objects.is_empty()
    }

    pub fn hom(&self, i: usize, j: usize) -> Option<&(HomSet<M>, ClassPartition)> {
        self.homs[i][j].as_ref()
    }

    fn label(&self, i: usize, j: usize) -> String {
        format!("{} -> {} over {}", self.names[i], self.names[j], self.group.name())
    }

    fn pairs(&self) -> impl Iterator<Item = (usize, usize, &HomSet<M>, &ClassPartition)> + '_ {
        let n = self.len();
        (0..n).flat_map(move |i| (0..n).filter_map(move |j| self.hom(i, j).map(|(h, p)| (i, j, h, p))))
    }

    fn hom_count(&self) -> u64 {
        self.pairs().count() as u64
    }

    fn morphism_count(&self) -> u64 {
        self.pairs().map(|(_, _, h, _)| h.len() as u64).sum()
    }
}

pub type PosetWorld = World<MPosetMorphism>;
pub type SimpWorld = World<MSimpMorphism>;

/// Hom-sets of one battery, computed once and shared by all checks.
pub struct Context {
    pub battery: Battery,
    pub posets: PosetWorld,
    pub simps: SimpWorld,
    pub cap: u128,
}

impl Context {
    pub fn new(battery: Battery, cap: u128) -> Context {
        let g = battery.group.clone();
        let posets = World::build(
            g.clone(),
            battery.posets.iter().map(|p| p.name.clone()).collect(),
            battery.posets.iter().map(|p| p.object.clone()).collect(),
            |x, y| enumerate_hom_poset(x, y, cap),
        );
        let simps = World::build(
            g,
            battery.complexes.iter().map(|p| p.name.clone()).collect(),
            battery.complexes.iter().map(|p| p.object.clone()).collect(),
            |x, y| enumerate_hom_simp(x, y, cap),
        );
        Context {
            battery,
            posets,
            simps,
            cap,
        }
    }
}

/// How the realization convention is fixed.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ConventionChoice {
    Auto,
    Fixed(Convention),
}

fn skipped_counts<M: HomMorphism>(t: &mut Tally, w: &World<M>) {
    t.add("hom_sets_skipped_cap", w.skipped.len() as u64);
}

// ---------------------------------------------------------------------------
// 1. Validators against a generated corpus.

fn coboundary_labels(g: &Group, poset: &Poset, c: &[Elem]) -> HashMap<(usize, usize), Elem> {
    poset
        .comparable_pairs()
        .map(|(x, y)| ((x, y), g.mul(g.inv(c[y]), c[x])))
        .collect()
}

fn random_elem(g: &Group, rng: &mut StdRng) -> Elem {
    g.elem(rng.gen_range(0..g.order())).unwrap()
}

fn other_elem(g: &Group, e: Elem, rng: &mut StdRng) -> Elem {
    let k = rng.gen_range(1..g.order());
    g.elem((e.index() + k) % g.order()).unwrap()
}

/// A random order-preserving map, by rejection.
fn random_monotone(source: &Poset, target: &Poset, rng: &mut StdRng) -> Option<Vec<usize>> {
    for _ in 0..256 {
        let f: Vec<usize> = (0..source.len()).map(|_| rng.gen_range(0..target.len())).collect();
        if source.covers().iter().all(|&(x, y)| target.leq(f[x], f[y])) {
            return Some(f);
        }
    }
    None
}

pub fn check_validators(contexts: &[Context]) -> ReportLine {
    let mut t = Tally::default();
    let mut rng = StdRng::seed_from_u64(CORPUS_SEED);
    let groups: Vec<Arc<Group>> = fixtures::groups().into_iter().filter(|g| g.order() > 1).collect();
    let mut shapes: Vec<Poset> = Vec::new();
    for ctx in contexts {
        for p in &ctx.battery.posets {
            shapes.push(p.object.poset().clone());
        }
        for c in &ctx.battery.complexes {
            shapes.push(c.object.complex().face_poset());
        }
    }
    shapes.retain(|p| p.len() >= 2);
    shapes.sort_by(|a, b| a.names().cmp(b.names()).then(a.len().cmp(&b.len())));
    shapes.dedup_by(|a, b| a.names() == b.names() && a.covers() == b.covers());
    if shapes.is_empty() {
        t.fail("no shapes with two or more elements to build a corpus from".into());
        return t.finish(1, "validators", None);
    }

    const CORPUS: usize = 200;
    for i in 0..CORPUS {
        let g = &groups[i % groups.len()];
        let shape = &shapes[rng.gen_range(0..shapes.len())];
        let c: Vec<Elem> = (0..shape.len()).map(|_| random_elem(g, &mut rng)).collect();
        let mut labels = coboundary_labels(g, shape, &c);
        let valid = MPoset::new(g.clone(), shape.clone(), &labels).unwrap();
        t.add("labelings_valid", 1);
        let verdict = valid.validate().is_empty();
        t.expect(verdict && oracle::cocycle_by_paths(&valid), || {
            format!("coboundary labeling #{i} on {:?} over {} was rejected", shape.names(), g.name())
        });

        let pairs: Vec<(usize, usize)> = shape.comparable_pairs().collect();
        let (x, y) = pairs[rng.gen_range(0..pairs.len())];
        let old = labels[&(x, y)];
        labels.insert((x, y), other_elem(g, old, &mut rng));
        let perturbed = MPoset::new(g.clone(), shape.clone(), &labels).unwrap();
        t.add("labelings_perturbed", 1);
        let expected = oracle::cocycle_by_paths(&perturbed);
        let got = perturbed.validate().is_empty();
        if !expected {
            t.add("labelings_perturbed_invalid", 1);
        }
        if got == expected {
            t.add("labelings_agree", 1);
        }
        t.expect(got == expected, || {
            format!(
                "perturbed l({},{}) on {:?} over {}: validator says {got}, path oracle says {expected}",
                shape.name(x),
                shape.name(y),
                shape.names(),
                g.name()
            )
        });
    }

    // Morphisms between coboundary-labeled objects: λ(x) = d(f x)⁻¹·k·c(x)
    // is natural for any constant k on a connected source.
    for i in 0..CORPUS {
        let g = &groups[i % groups.len()];
        let s = &shapes[rng.gen_range(0..shapes.len())];
        let d_shape = &shapes[rng.gen_range(0..shapes.len())];
        let Some(f) = random_monotone(s, d_shape, &mut rng) else {
            continue;
        };
        let c: Vec<Elem> = (0..s.len()).map(|_| random_elem(g, &mut rng)).collect();
        let d: Vec<Elem> = (0..d_shape.len()).map(|_| random_elem(g, &mut rng)).collect();
        let src = Arc::new(MPoset::new(g.clone(), s.clone(), &coboundary_labels(g, s, &c)).unwrap());
        let dst = Arc::new(MPoset::new(g.clone(), d_shape.clone(), &coboundary_labels(g, d_shape, &d)).unwrap());
        let comps = s.components();
        let mut k = vec![g.identity(); s.len()];
        for comp in &comps {
            let kc = random_elem(g, &mut rng);
            for &x in comp {
                k[x] = kc;
            }
        }
        let mut lambda: Vec<Elem> = (0..s.len()).map(|x| g.product([g.inv(d[f[x]]), k[x], c[x]])).collect();
        let m = MPosetMorphism::new(src.clone(), dst.clone(), f.clone(), lambda.clone()).unwrap();
        t.add("morphisms_valid", 1);
        t.expect(m.is_valid() && oracle::natural_on_covers(&m), || format!("constructed morphism {m} was rejected"));

        let mut f2 = f.clone();
        let x = rng.gen_range(0..s.len());
        if rng.gen_bool(0.5) {
            lambda[x] = other_elem(g, lambda[x], &mut rng);
        } else {
            f2[x] = (f2[x] + rng.gen_range(1..d_shape.len().max(2))) % d_shape.len();
        }
        let p = MPosetMorphism::new(src, dst, f2, lambda).unwrap();
        t.add("morphisms_perturbed", 1);
        let expected = oracle::natural_on_covers(&p);
        let got = p.is_valid();
        if !expected {
            t.add("morphisms_perturbed_invalid", 1);
        }
        t.expect(got == expected, || format!("perturbed morphism {p}: validator says {got}, cover oracle says {expected}"));
    }
    t.finish(1, "validators", Some(serde_json::json!({ "seed": CORPUS_SEED })))
}

// ---------------------------------------------------------------------------
// 2. Identity and associativity.

fn category_laws<M: HomMorphism>(w: &World<M>, t: &mut Tally) {
    let n = w.len();
    for (i, j, h, _) in w.pairs() {
        let id_i = M::identity_on(&w.objects[i]);
        let id_j = M::identity_on(&w.objects[j]);
        for m in h.morphisms() {
            t.add("identity_checks", 1);
            t.expect(m.is_valid_morphism(), || format!("{}: invalid enumerated {m}", w.label(i, j)));
            t.expect(M::compose(&id_j, m).ok().as_ref() == Some(m), || format!("{}: id after {m}", w.label(i, j)));
            t.expect(M::compose(m, &id_i).ok().as_ref() == Some(m), || format!("{}: {m} after id", w.label(i, j)));
        }
    }
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                for d in 0..n {
                    let (Some((h1, _)), Some((h2, _)), Some((h3, _))) = (w.hom(a, b), w.hom(b, c), w.hom(c, d)) else {
                        continue;
                    };
                    let s1 = spread(h1.morphisms(), TRIPLE_SAMPLE);
                    let s2 = spread(h2.morphisms(), TRIPLE_SAMPLE);
                    let s3 = spread(h3.morphisms(), TRIPLE_SAMPLE);
                    t.add("hom_set_triples", 1);
                    for f in &s1 {
                        for g in &s2 {
                            let gf = M::compose(g, f).unwrap();
                            t.expect(gf.is_valid_morphism(), || format!("{g} after {f} is not valid"));
                            for h in &s3 {
                                let left = M::compose(&M::compose(h, g).unwrap(), f).unwrap();
                                let right = M::compose(h, &gf).unwrap();
                                t.add("associativity_checks", 1);
                                t.expect(left == right, || format!("({h} after {g}) after {f} differs"));
                            }
                        }
                    }
                }
            }
        }
    }
}

pub fn check_category_laws(contexts: &[Context]) -> ReportLine {
    let mut t = Tally::default();
    for ctx in contexts {
        category_laws(&ctx.posets, &mut t);
        category_laws(&ctx.simps, &mut t);
        t.add("hom_sets", ctx.posets.hom_count() + ctx.simps.hom_count());
        t.add("morphisms", ctx.posets.morphism_count() + ctx.simps.morphism_count());
        skipped_counts(&mut t, &ctx.posets);
        skipped_counts(&mut t, &ctx.simps);
    }
    t.finish(2, "category-laws", Some(serde_json::json!({ "triple_sample_per_hom_set": TRIPLE_SAMPLE })))
}

// ---------------------------------------------------------------------------
// 3. Partial order on poset hom-sets, contiguity on simp hom-sets.

/// Dense boolean relation with 64-bit rows.
struct BitMatrix {
    n: usize,
    words: usize,
    bits: Vec<u64>,
}

impl BitMatrix {
    fn new(n: usize) -> BitMatrix {
        let words = n.div_ceil(64).max(1);
        BitMatrix {
            n,
            words,
            bits: vec![0; n * words],
        }
    }

    fn set(&mut self, i: usize, j: usize) {
        self.bits[i * self.words + j / 64] |= 1 << (j % 64);
    }

    fn get(&self, i: usize, j: usize) -> bool {
        self.bits[i * self.words + j / 64] & (1 << (j % 64)) != 0
    }

    fn row(&self, i: usize) -> &[u64] {
        &self.bits[i * self.words..(i + 1) * self.words]
    }

    /// First `(i, k)` with `i ≤ j ≤ k` but not `i ≤ k`, reported with `j`.
    fn transitivity_failure(&self) -> Option<(usize, usize, usize)> {
        for i in 0..self.n {
            for j in 0..self.n {
                if !self.get(i, j) {
                    continue;
                }
                let (ri, rj) = (self.row(i), self.row(j));
                for (w, (a, b)) in ri.iter().zip(rj).enumerate() {
                    let missing = b & !a;
                    if missing != 0 {
                        return Some((i, j, w * 64 + missing.trailing_zeros() as usize));
                    }
                }
            }
        }
        None
    }
}

pub fn check_order_and_contiguity(contexts: &[Context]) -> ReportLine {
    let mut t = Tally::default();
    for ctx in contexts {
        let w = &ctx.posets;
        for (i, j, h, _) in w.pairs() {
            let n = h.len();
            let mut leq = BitMatrix::new(n);
            for a in 0..n {
                for b in 0..n {
                    if h.get(a).leq(h.get(b)).unwrap() {
                        leq.set(a, b);
                    }
                }
            }
            t.add("poset_hom_sets", 1);
            t.add("poset_pairs", (n * n) as u64);
            for a in 0..n {
                t.expect(leq.get(a, a), || format!("{}: {} is not ≤ itself", w.label(i, j), h.get(a)));
                for b in a + 1..n {
                    t.expect(!(leq.get(a, b) && leq.get(b, a)), || {
                        format!("{}: antisymmetry fails for {} and {}", w.label(i, j), h.get(a), h.get(b))
                    });
                    t.expect(h.get(a).comparable(h.get(b)).unwrap() == (leq.get(a, b) || leq.get(b, a)), || {
                        format!("{}: comparability disagrees with ≤", w.label(i, j))
                    });
                }
            }
            if let Some((a, b, c)) = leq.transitivity_failure() {
                t.fail(format!(
                    "{}: {} ≤ {} ≤ {} but not transitively",
                    w.label(i, j),
                    h.get(a),
                    h.get(b),
                    h.get(c)
                ));
            }
        }
        let w = &ctx.simps;
        for (i, j, h, _) in w.pairs() {
            let n = h.len();
            t.add("simp_hom_sets", 1);
            t.add("simp_pairs", (n * n) as u64);
            for a in 0..n {
                t.expect(h.get(a).mcontiguous(h.get(a)).unwrap(), || {
                    format!("{}: {} is not contiguous to itself", w.label(i, j), h.get(a))
                });
                for b in a + 1..n {
                    let ab = h.get(a).mcontiguous(h.get(b)).unwrap();
                    let ba = h.get(b).mcontiguous(h.get(a)).unwrap();
                    if ab {
                        t.add("simp_contiguous_pairs", 1);
                    }
                    t.expect(ab == ba, || format!("{}: contiguity of {} and {} is not symmetric", w.label(i, j), h.get(a), h.get(b)));
                }
            }
        }
    }
    t.finish(3, "order-and-contiguity", None)
}

// ---------------------------------------------------------------------------
// 4. Refinement chains.

pub fn check_refine_chain(contexts: &[Context]) -> ReportLine {
    let mut t = Tally::default();
    for ctx in contexts {
        let w = &ctx.posets;
        for (i, j, h, _) in w.pairs() {
            let source = &w.objects[i];
            let n = source.poset().max_height();
            let heights = source.poset().heights();
            for a in h.morphisms() {
                for b in h.morphisms() {
                    if !a.leq(b).unwrap() {
                        continue;
                    }
                    t.add("comparable_pairs", 1);
                    let chain = match a.refine_chain(b) {
                        Ok(c) => c,
                        Err(e) => {
                            t.fail(format!("{}: refine_chain({a}, {b}) failed: {e}", w.label(i, j)));
                            continue;
                        }
                    };
                    t.expect(chain.len() == n + 2, || format!("{}: chain from {a} to {b} has {} entries", w.label(i, j), chain.len()));
                    t.expect(chain.first() == Some(a) && chain.last() == Some(b), || {
                        format!("{}: chain from {a} to {b} has wrong endpoints", w.label(i, j))
                    });
                    for (k, m) in chain.iter().enumerate() {
                        t.expect(m.is_valid(), || format!("{}: step {k} of chain {a} to {b} is invalid", w.label(i, j)));
                    }
                    for (k, pair) in chain.windows(2).enumerate() {
                        t.expect(pair[0].leq(&pair[1]).unwrap(), || {
                            format!("{}: chain {a} to {b} is not monotone at step {k}", w.label(i, j))
                        });
                        let changed_ok = (0..source.len())
                            .all(|x| pair[0].map()[x] == pair[1].map()[x] || heights[x] + k == n);
                        t.expect(changed_ok, || {
                            format!("{}: step {k} of chain {a} to {b} changes an element of the wrong height", w.label(i, j))
                        });
                    }
                }
            }
        }
    }
    t.finish(4, "refine-chain", None)
}

// ---------------------------------------------------------------------------
// 5. Composition respects homotopy.

fn compose_respects<M: HomMorphism>(w: &World<M>, t: &mut Tally) {
    let n = w.len();
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                let (Some(first), Some(second), Some(third)) = (w.hom(a, b), w.hom(b, c), w.hom(a, c)) else {
                    continue;
                };
                t.add("triples", 1);
                t.add("compositions", (first.0.len() * second.0.len()) as u64);
                match quotient_compose_check((&first.0, &first.1), (&second.0, &second.1), (&third.0, &third.1)) {
                    Ok(ws) => {
                        for x in ws {
                            t.fail(format!("{} / {} over {}: {x}", w.names[a], w.names[c], w.group.name()));
                        }
                    }
                    Err(e) => t.fail(format!("{}: {e}", w.label(a, c))),
                }
            }
        }
    }
}

pub fn check_composition_respects_homotopy(contexts: &[Context]) -> ReportLine {
    let mut t = Tally::default();
    for ctx in contexts {
        compose_respects(&ctx.posets, &mut t);
        compose_respects(&ctx.simps, &mut t);
    }
    t.finish(5, "composition-respects-homotopy", None)
}

// ---------------------------------------------------------------------------
// 6. ι identities.

fn distinct_maps(h: &HomSet<MSimpMorphism>) -> Vec<&[usize]> {
    let mut out: Vec<&[usize]> = h.morphisms().iter().map(|m| m.map()).collect();
    out.dedup();
    out
}

fn compose_maps(outer: &[usize], inner: &[usize]) -> Vec<usize> {
    inner.iter().map(|&v| outer[v]).collect()
}

pub fn check_iota_identities(contexts: &[Context]) -> ReportLine {
    let mut t = Tally::default();
    for ctx in contexts {
        let w = &ctx.simps;
        let n = w.len();
        for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    let (Some((hxy, _)), Some((hyz, _))) = (w.hom(x, y), w.hom(y, z)) else {
                        continue;
                    };
                    let (sx, sy, sz) = (&w.objects[x], &w.objects[y], &w.objects[z]);
                    let g = &*w.group;
                    let label = || format!("{} -> {} -> {} over {}", w.names[x], w.names[y], w.names[z], g.name());
                    let maps_xy = distinct_maps(hxy);
                    let maps_yz = distinct_maps(hyz);
                    // (a): ι_{ef−ef'} ∘ (μ*f) = (μ*f') ∘ ι_{f−f'}.
                    for &f in &maps_xy {
                        for &f2 in &maps_xy {
                            if f == f2 || !maps_contiguous(sx.complex(), sy.complex(), f, f2) {
                                continue;
                            }
                            let iota = iota_contiguity(sx.complex(), sy, f, f2).unwrap();
                            for e in spread(hyz.morphisms(), TRIPLE_SAMPLE) {
                                let ef = compose_maps(e.map(), f);
                                let ef2 = compose_maps(e.map(), f2);
                                t.expect(maps_contiguous(sx.complex(), sz.complex(), &ef, &ef2), || {
                                    format!("{}: ef and ef' are not contiguous", label())
                                });
                                let iota_e = iota_contiguity(sx.complex(), sz, &ef, &ef2).unwrap();
                                t.add("part_a_instances", 1);
                                for (si, s) in sx.complex().simplices().iter().enumerate() {
                                    let mu_f = e.lambda()[sy.complex().index_of(s.image(f)).unwrap()];
                                    let mu_f2 = e.lambda()[sy.complex().index_of(s.image(f2)).unwrap()];
                                    let ok = g.mul(iota_e[si], mu_f) == g.mul(mu_f2, iota[si]);
                                    t.expect(ok, || format!("{}: part (a) fails at {}", label(), sx.complex().simplex_name(*s)));
                                }
                            }
                        }
                    }
                    // (b): ι_{ef−e'f} = ι_{e−e'} * f.
                    for &e in &maps_yz {
                        for &e2 in &maps_yz {
                            if e == e2 || !maps_contiguous(sy.complex(), sz.complex(), e, e2) {
                                continue;
                            }
                            let iota = iota_contiguity(sy.complex(), sz, e, e2).unwrap();
                            for &f in &maps_xy {
                                let ef = compose_maps(e, f);
                                let e2f = compose_maps(e2, f);
                                let iota_f = iota_contiguity(sx.complex(), sz, &ef, &e2f).unwrap();
                                t.add("part_b_instances", 1);
                                for (si, s) in sx.complex().simplices().iter().enumerate() {
                                    let fi = sy.complex().index_of(s.image(f)).unwrap();
                                    t.expect(iota_f[si] == iota[fi], || {
                                        format!("{}: part (b) fails at {}", label(), sx.complex().simplex_name(*s))
                                    });
                                }
                            }
                        }
                    }
                    // (c): contiguity is preserved by composition on either side.
                    let sample_xy = spread(hxy.morphisms(), TRIPLE_SAMPLE);
                    let sample_yz = spread(hyz.morphisms(), TRIPLE_SAMPLE);
                    for a in &sample_xy {
                        for b in hxy.morphisms().iter().filter(|b| a.mcontiguous_unchecked(b)) {
                            for c in &sample_yz {
                                t.add("part_c_left", 1);
                                let ca = MSimpMorphism::compose(c, a).unwrap();
                                let cb = MSimpMorphism::compose(c, b).unwrap();
                                t.expect(ca.mcontiguous(&cb).unwrap(), || format!("{}: {c} after {a} and {b}", label()));
                            }
                        }
                    }
                    for c in &sample_yz {
                        for d in hyz.morphisms().iter().filter(|d| c.mcontiguous_unchecked(d)) {
                            for a in &sample_xy {
                                t.add("part_c_right", 1);
                                let ca = MSimpMorphism::compose(c, a).unwrap();
                                let da = MSimpMorphism::compose(d, a).unwrap();
                                t.expect(ca.mcontiguous(&da).unwrap(), || format!("{}: {c} and {d} after {a}", label()));
                            }
                        }
                    }
                }
            }
        }
    }
    t.finish(6, "iota-identities", None)
}

// ---------------------------------------------------------------------------
// 7. Σ and Π.

/// Class-level comparison of a functor `F` on one hom-set: injective,
/// images enumerated, homotopy preserved and reflected.
fn compare_partitions<M: HomMorphism, N: HomMorphism>(
    label: &str,
    h: &HomSet<M>,
    p: &ClassPartition,
    image_h: &HomSet<N>,
    image_p: &ClassPartition,
    images: &[N],
    t: &mut Tally,
) {
    let distinct: HashSet<&N> = images.iter().collect();
    t.expect(distinct.len() == images.len(), || format!("{label}: functor is not injective"));
    let mut idx = Vec::with_capacity(images.len());
    for (k, im) in images.iter().enumerate() {
        match image_h.index_of(im) {
            Some(i) => idx.push(i),
            None => {
                t.fail(format!("{label}: image of {} is not in the enumerated hom-set", h.get(k)));
                return;
            }
        }
    }
    let mut class_image: HashMap<usize, usize> = HashMap::new();
    let mut class_back: HashMap<usize, usize> = HashMap::new();
    for (k, &i) in idx.iter().enumerate() {
        let (c, ci) = (p.class(k), image_p.class(i));
        if *class_image.entry(c).or_insert(ci) != ci {
            t.fail(format!("{label}: homotopic {} has image in another class", h.get(k)));
        }
        if *class_back.entry(ci).or_insert(c) != c {
            t.fail(format!("{label}: images of nonhomotopic morphisms are homotopic, at {}", h.get(k)));
        }
    }
    t.add("morphisms", images.len() as u64);
}

fn functor_laws<M: HomMorphism, N: HomMorphism>(
    w: &World<M>,
    map: &dyn Fn(&M, usize, usize) -> N,
    identity_image: &dyn Fn(usize) -> N,
    t: &mut Tally,
) {
    let n = w.len();
    for i in 0..n {
        let id = M::identity_on(&w.objects[i]);
        t.expect(map(&id, i, i) == identity_image(i), || format!("identity of {} is not preserved", w.names[i]));
    }
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                let (Some((h1, _)), Some((h2, _))) = (w.hom(a, b), w.hom(b, c)) else {
                    continue;
                };
                for f in spread(h1.morphisms(), TRIPLE_SAMPLE) {
                    for g in spread(h2.morphisms(), TRIPLE_SAMPLE) {
                        t.add("functoriality_checks", 1);
                        let lhs = map(&M::compose(g, f).unwrap(), a, c);
                        let rhs = N::compose(&map(g, b, c), &map(f, a, b)).unwrap();
                        t.expect(lhs == rhs, || format!("F({g} after {f}) differs from F({g}) after F({f})"));
                    }
                }
            }
        }
    }
}

pub fn check_sigma_pi(contexts: &[Context]) -> ReportLine {
    let mut sigma = Tally::default();
    let mut pi = Tally::default();
    for ctx in contexts {
        let g = ctx.battery.group.clone();
        // Σ.
        let w = &ctx.posets;
        let images: Vec<Arc<MSimp>> = w.objects.iter().map(|p| Arc::new(sigma_obj(p).unwrap())).collect();
        for (k, s) in images.iter().enumerate() {
            sigma.expect(s.validate().is_empty(), || format!("Σ({}) is not valid", w.names[k]));
        }
        let sw: SimpWorld = World::build(g.clone(), w.names.clone(), images.clone(), |x, y| enumerate_hom_simp(x, y, ctx.cap));
        skipped_counts(&mut sigma, &sw);
        let smap = |m: &MPosetMorphism, i: usize, j: usize| sigma_mor_between(m, &images[i], &images[j]).unwrap();
        functor_laws(w, &smap, &|i| MSimpMorphism::identity(&images[i]), &mut sigma);
        for (i, j, h, p) in w.pairs() {
            let Some((ih, ip)) = sw.hom(i, j) else { continue };
            let mapped: Vec<MSimpMorphism> = h.morphisms().iter().map(|m| smap(m, i, j)).collect();
            sigma.add("hom_sets", 1);
            compare_partitions(&format!("Σ on {}", w.label(i, j)), h, p, ih, ip, &mapped, &mut sigma);
            // Constructive steps: refinement chains map to contiguous pairs,
            // and Σ-contiguous pairs have a common upper bound.
            for (a, ma) in h.morphisms().iter().zip(&mapped) {
                for (b, mb) in h.morphisms().iter().zip(&mapped) {
                    if a.leq(b).unwrap() {
                        let chain = a.refine_chain(b).unwrap();
                        for pair in chain.windows(2) {
                            sigma.add("chain_steps", 1);
                            let ok = smap(&pair[0], i, j).mcontiguous(&smap(&pair[1], i, j)).unwrap();
                            sigma.expect(ok, || format!("Σ of chain step {} ≤ {} is not contiguous", pair[0], pair[1]));
                        }
                    }
                    if ma.mcontiguous(mb).unwrap() {
                        sigma.add("union_constructions", 1);
                        match union_morphism_poset(a, b) {
                            Ok(u) => sigma.expect(u.is_valid() && a.leq(&u).unwrap() && b.leq(&u).unwrap(), || {
                                format!("union of {a} and {b} is not a valid upper bound")
                            }),
                            Err(e) => sigma.fail(format!("union of {a} and {b}: {e}")),
                        }
                    }
                }
            }
        }
        // Π.
        let w = &ctx.simps;
        let images: Vec<Arc<MPoset>> = w.objects.iter().map(|s| Arc::new(pi_obj(s))).collect();
        let pw: PosetWorld = World::build(g.clone(), w.names.clone(), images.clone(), |x, y| enumerate_hom_poset(x, y, ctx.cap));
        skipped_counts(&mut pi, &pw);
        let pmap = |m: &MSimpMorphism, i: usize, j: usize| pi_mor_between(m, &images[i], &images[j]).unwrap();
        functor_laws(w, &pmap, &|i| MPosetMorphism::identity(&images[i]), &mut pi);
        for (i, j, h, p) in w.pairs() {
            let Some((ih, ip)) = pw.hom(i, j) else { continue };
            let mapped: Vec<MPosetMorphism> = h.morphisms().iter().map(|m| pmap(m, i, j)).collect();
            pi.add("hom_sets", 1);
            compare_partitions(&format!("Π on {}", w.label(i, j)), h, p, ih, ip, &mapped, &mut pi);
            for (a, ma) in h.morphisms().iter().zip(&mapped) {
                for (b, mb) in h.morphisms().iter().zip(&mapped) {
                    if !a.mcontiguous(b).unwrap() {
                        continue;
                    }
                    pi.add("eta_constructions", 1);
                    match eta_union_simplex_between(a, b, &images[i], &images[j]) {
                        Ok(u) => pi.expect(u.is_valid() && ma.leq(&u).unwrap() && mb.leq(&u).unwrap(), || {
                            format!("η-union of {a} and {b} is not a valid upper bound")
                        }),
                        Err(e) => pi.fail(format!("η-union of {a} and {b}: {e}")),
                    }
                }
            }
        }
    }
    let mut t = Tally::default();
    for (prefix, part) in [("sigma", sigma), ("pi", pi)] {
        for (k, v) in part.counts {
            t.add(&format!("{prefix}_{k}"), v);
        }
        t.failures += part.failures;
        t.witnesses.extend(part.witnesses);
    }
    t.witnesses.truncate(MAX_WITNESSES);
    t.finish(7, "sigma-pi-functors", None)
}

// ---------------------------------------------------------------------------
// 8. Realization.

pub fn check_realization(contexts: &[Context], choice: ConventionChoice) -> ReportLine {
    let mut t = Tally::default();
    let (convention, data) = match choice {
        ConventionChoice::Fixed(c) => (c, serde_json::json!({ "convention": c, "selected_by": "flag" })),
        ConventionChoice::Auto => {
            let probe = realization::select_convention();
            let failures: BTreeMap<String, usize> = probe.failures.iter().map(|(c, n)| (c.to_string(), *n)).collect();
            let Some(c) = probe.chosen else {
                t.fail(format!("no convention passes the probe: {failures:?}"));
                return t.finish(8, "realization", Some(serde_json::json!({ "probe_failures": failures })));
            };
            (c, serde_json::json!({ "convention": c, "selected_by": "probe", "probe_failures": failures }))
        }
    };
    for ctx in contexts {
        let w = &ctx.simps;
        for (k, space) in w.objects.iter().enumerate() {
            let name = format!("{} over {}", w.names[k], w.group.name());
            t.add("spaces", 1);
            t.add("sample_points", sample_points(space.complex()).len() as u64);
            for x in realization::check_canonical(space) {
                t.fail(format!("{name}: {x}"));
            }
            for x in realization::check_fibers(space) {
                t.fail(format!("{name}: {x}"));
            }
            for x in realization::check_local_trivializations(space) {
                t.fail(format!("{name}: {x}"));
            }
        }
        for (i, j, h, _) in w.pairs() {
            for m in h.morphisms() {
                t.add("morphisms", 1);
                t.extend(realization::check_morphism(m, convention));
            }
            for a in spread(h.morphisms(), TRIPLE_SAMPLE) {
                for b in h.morphisms().iter().filter(|b| a.mcontiguous_unchecked(b)) {
                    t.add("homotopies", 1);
                    t.extend(realization::check_homotopy(a, b, convention));
                }
            }
            for k in 0..w.len() {
                let Some((h2, _)) = w.hom(j, k) else { continue };
                for a in spread(h.morphisms(), TRIPLE_SAMPLE) {
                    for b in spread(h2.morphisms(), TRIPLE_SAMPLE) {
                        t.add("functoriality_pairs", 1);
                        t.extend(realization::check_functorial(b, a, convention));
                    }
                }
            }
            let _ = i;
        }
    }
    t.finish(8, "realization", Some(data))
}

// ---------------------------------------------------------------------------
// 9. Trivial group.

pub fn check_trivial_group(contexts: &[Context]) -> ReportLine {
    let mut t = Tally::default();
    let mut trivial_seen = false;
    for ctx in contexts {
        let group = &ctx.battery.group;
        if group.is_trivial() {
            trivial_seen = true;
            let w = &ctx.posets;
            for (i, j, h, p) in w.pairs() {
                t.add("poset_hom_sets", 1);
                t.expect(p.same_blocks(&oracle::comparability_classes(h)), || {
                    format!("{}: classes differ from comparability components", w.label(i, j))
                });
                // Morphisms are exactly the order-preserving maps.
                let (s, d) = (w.objects[i].poset(), w.objects[j].poset());
                let monotone = crate::oracle::naive_hom_poset(&w.objects[i], &w.objects[j]).len();
                let maps = h.morphisms().iter().filter(|m| s.covers().iter().all(|&(x, y)| d.leq(m.map()[x], m.map()[y]))).count();
                t.expect(monotone == h.len() && maps == h.len(), || format!("{}: hom-set is not the set of monotone maps", w.label(i, j)));
            }
            let w = &ctx.simps;
            for (i, j, h, p) in w.pairs() {
                t.add("simp_hom_sets", 1);
                t.expect(p.same_blocks(&oracle::contiguity_classes(h)), || {
                    format!("{}: classes differ from contiguity classes", w.label(i, j))
                });
            }
        }
        // The realization of a complex with l ≡ 1 is the product |S| × A.
        for c in &ctx.battery.complexes {
            let space = MSimp::trivial(group.clone(), c.object.complex().clone());
            t.add("trivial_bundles", 1);
            for alpha in sample_points(space.complex()) {
                for (s, a) in raw_triples(&space, &alpha) {
                    let p = canonicalize(&space, s, &alpha, a).unwrap();
                    t.expect(p.elem() == a && p.alpha() == &alpha, || {
                        format!("{} over {}: the class of ({}, {alpha}, {}) is not ({alpha}, a)", c.name, group.name(), space.complex().simplex_name(s), group.format(a))
                    });
                }
                let fib: HashSet<_> = fiber(&space, &alpha).into_iter().map(|p| p.elem()).collect();
                t.expect(fib.len() == group.order(), || format!("{}: fiber over {alpha} is not A", c.name));
            }
        }
    }
    t.expect(trivial_seen, || "no battery over the trivial group".into());
    t.finish(9, "trivial-group-degeneration", None)
}

// ---------------------------------------------------------------------------
// 10. Oracle cross-check.

pub fn check_oracles(contexts: &[Context]) -> ReportLine {
    let mut t = Tally::default();
    for ctx in contexts {
        if ctx.battery.group.order() > 3 {
            continue;
        }
        let w = &ctx.posets;
        for (i, j, h, p) in w.pairs() {
            if w.objects[i].len() > 4 {
                continue;
            }
            t.add("poset_hom_sets", 1);
            let naive = oracle::naive_hom_poset(&w.objects[i], &w.objects[j]);
            t.expect(naive.as_slice() == h.morphisms(), || {
                format!("{}: propagation found {}, naive found {}", w.label(i, j), h.len(), naive.len())
            });
            t.expect(p.same_blocks(&oracle::bfs_classes(h)), || format!("{}: union-find and BFS partitions differ", w.label(i, j)));
            reorder_invariance(h, p, &w.label(i, j), &mut t);
        }
        let w = &ctx.simps;
        for (i, j, h, p) in w.pairs() {
            if w.objects[i].len() > 6 {
                continue;
            }
            t.add("simp_hom_sets", 1);
            let naive = oracle::naive_hom_simp(&w.objects[i], &w.objects[j]);
            t.expect(naive.as_slice() == h.morphisms(), || {
                format!("{}: propagation found {}, naive found {}", w.label(i, j), h.len(), naive.len())
            });
            t.expect(p.same_blocks(&oracle::bfs_classes(h)), || format!("{}: union-find and BFS partitions differ", w.label(i, j)));
            reorder_invariance(h, p, &w.label(i, j), &mut t);
        }
    }
    t.finish(10, "oracle-cross-check", None)
}

/// Building the hom-set from a reversed list gives the same partition.
fn reorder_invariance<M: HomMorphism>(h: &HomSet<M>, p: &ClassPartition, label: &str, t: &mut Tally) {
    let order: Vec<usize> = (0..h.len()).rev().collect();
    let rebuilt = HomSet::from_morphisms(h.source().clone(), h.target().clone(), h.permuted(&order));
    let q = homotopy_classes(&rebuilt, default_relation::<M>()).unwrap();
    t.expect(&q == p, || format!("{label}: partition depends on input order"));
}

// ---------------------------------------------------------------------------

pub fn contexts_for(batteries: Vec<Battery>, cap: u128) -> Vec<Context> {
    batteries.into_iter().map(|b| Context::new(b, cap)).collect()
}

/// All checks in order.
pub fn run_all(contexts: &[Context], choice: ConventionChoice) -> Vec<ReportLine> {
    vec![
        check_validators(contexts),
        check_category_laws(contexts),
        check_order_and_contiguity(contexts),
        check_refine_chain(contexts),
        check_composition_respects_homotopy(contexts),
        check_iota_identities(contexts),
        check_sigma_pi(contexts),
        check_realization(contexts, choice),
        check_trivial_group(contexts),
        check_oracles(contexts),
    ]
}
