//! Explicit spans of finite groupoids, their composition and fingerprints.

use std::fmt;
use std::sync::Arc;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::One;
use rustc_hash::FxHashMap;

use super::finite::{
    essential_equivalence_check, Arrow, EquivalenceVerdict, FiniteGroupoid, FunctorRoute, GroupoidFunctor, Validation,
};
use super::zlattice::{image_lattice, invariant_factors_from_orders, render, ZMatrix};
use super::GroupoidError;

/// Default bound on apex isotropy order for explicit fingerprints.
pub const DEFAULT_ISOTROPY_BOUND: usize = 64;

/// `source <- apex -> target`.
#[derive(Clone, Debug)]
pub struct Span {
    pub apex: FiniteGroupoid,
    pub source: Arc<FiniteGroupoid>,
    pub target: Arc<FiniteGroupoid>,
    pub left: GroupoidFunctor,
    pub right: GroupoidFunctor,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CompositionMode {
    Homotopy,
    Strong,
}

#[derive(Clone, Debug, serde::Serialize)]
pub struct SpanValidation {
    pub apex: Validation,
    pub left: FunctorRoute,
    pub right: FunctorRoute,
}

fn is_loop_boundary(g: &FiniteGroupoid) -> bool {
    g.is_additive() && g.arrows().iter().all(|a| a.src == a.tgt)
}

impl Span {
    /// `g <- g -> g` with identity legs.
    pub fn identity(g: Arc<FiniteGroupoid>) -> Span {
        let id = GroupoidFunctor::identity(&g);
        Span {
            apex: (*g).clone(),
            source: g.clone(),
            target: g,
            left: id.clone(),
            right: id,
        }
    }

    /// `⋆ <- ⋆ -> ⋆`.
    pub fn unit() -> Span {
        Span::identity(Arc::new(FiniteGroupoid::point()))
    }

    /// Groupoid axioms on the apex and functor laws on both legs.
    pub fn validate(&self, budget: usize) -> Result<SpanValidation, GroupoidError> {
        let apex = self.apex.validate(budget)?;
        let left = self.left.validate(&self.apex, &self.source, budget)?;
        let right = self.right.validate(&self.apex, &self.target, budget)?;
        Ok(SpanValidation { apex, left, right })
    }

    /// Componentwise product.
    pub fn product(&self, other: &Span, budget: usize) -> Result<Span, GroupoidError> {
        let apex = self.apex.product(&other.apex, budget)?;
        let source = Arc::new(self.source.product(&other.source, budget)?);
        let target = Arc::new(self.target.product(&other.target, budget)?);
        let leg = |f1: &GroupoidFunctor,
                   f2: &GroupoidFunctor,
                   b1: &FiniteGroupoid,
                   b2: &FiniteGroupoid,
                   prod: &FiniteGroupoid| {
            let n2 = b2.object_count();
            let mut objects = Vec::with_capacity(apex.object_count());
            let mut arrows = Vec::with_capacity(apex.arrow_count());
            for x1 in 0..self.apex.object_count() {
                for x2 in 0..other.apex.object_count() {
                    objects.push(f1.objects[x1] * n2 + f2.objects[x2]);
                    for &a1 in self.apex.outgoing(x1) {
                        for &a2 in other.apex.outgoing(x2) {
                            arrows.push(b1.product_arrow(b2, f1.arrows[a1], f2.arrows[a2], prod));
                        }
                    }
                }
            }
            GroupoidFunctor { objects, arrows }
        };
        let left = leg(&self.left, &other.left, &self.source, &other.source, &source);
        let right = leg(&self.right, &other.right, &self.target, &other.target, &target);
        Ok(Span {
            apex,
            source,
            target,
            left,
            right,
        })
    }

    /// Product of a list; empty gives [`Span::unit`].
    pub fn product_all(list: &[Span], budget: usize) -> Result<Span, GroupoidError> {
        let mut acc = Span::unit();
        for s in list {
            acc = acc.product(s, budget)?;
        }
        Ok(acc)
    }
}

/// Composite apex object `(x1, g, x2)`; `g` is `None` in strong mode.
type Piece = (usize, Option<usize>, usize);

fn estimate(s1: &Span, s2: &Span, mode: CompositionMode) -> u128 {
    let g = &s1.target;
    let mut by_base: FxHashMap<usize, Vec<usize>> = FxHashMap::default();
    for x2 in 0..s2.apex.object_count() {
        by_base.entry(s2.left.objects[x2]).or_default().push(x2);
    }
    let mut images: FxHashMap<usize, FxHashMap<usize, u128>> = FxHashMap::default();
    let mut total: u128 = 0;
    for x1 in 0..s1.apex.object_count() {
        let b = s1.right.objects[x1];
        let Some(partners) = by_base.get(&b) else { continue };
        let out1 = s1.apex.outgoing(x1);
        for &x2 in partners {
            match mode {
                CompositionMode::Homotopy => {
                    total += g.outgoing(b).len() as u128 * out1.len() as u128 * s2.apex.outgoing(x2).len() as u128;
                }
                CompositionMode::Strong => {
                    let counts = images.entry(x2).or_insert_with(|| {
                        let mut c: FxHashMap<usize, u128> = FxHashMap::default();
                        for &l2 in s2.apex.outgoing(x2) {
                            *c.entry(s2.left.arrows[l2]).or_default() += 1;
                        }
                        c
                    });
                    for &l1 in out1 {
                        total += counts.get(&s1.right.arrows[l1]).copied().unwrap_or(0);
                    }
                }
            }
        }
    }
    total
}

/// Number of arrows a composite would have, without building it.
pub fn composite_size(s1: &Span, s2: &Span, mode: CompositionMode) -> u128 {
    estimate(s1, s2, mode)
}

fn check_composable(s1: &Span, s2: &Span) -> Result<(), GroupoidError> {
    if *s1.target != *s2.source {
        return Err(GroupoidError::BoundaryMismatch(format!(
            "first span ends at {} objects / {} arrows, second starts at {} / {}",
            s1.target.object_count(),
            s1.target.arrow_count(),
            s2.source.object_count(),
            s2.source.arrow_count()
        )));
    }
    if !is_loop_boundary(&s1.target) {
        return Err(GroupoidError::Unsupported(
            "composition needs an additive boundary with source = target".into(),
        ));
    }
    if !s1.apex.is_additive() || !s2.apex.is_additive() {
        return Err(GroupoidError::Unsupported(
            "composition is implemented for additive apexes".into(),
        ));
    }
    Ok(())
}

fn compose_with_pieces(
    s1: &Span,
    s2: &Span,
    mode: CompositionMode,
    budget: usize,
) -> Result<(Span, Vec<Piece>), GroupoidError> {
    check_composable(s1, s2)?;
    let size = estimate(s1, s2, mode);
    if size > budget as u128 {
        return Err(GroupoidError::TooLarge {
            what: format!("{mode:?} fibre product"),
            size,
            budget,
        });
    }
    let g = &s1.target;
    let (p1, p2) = (&s1.apex, &s2.apex);
    let mut pieces: Vec<Piece> = Vec::new();
    let mut index: FxHashMap<Piece, usize> = FxHashMap::default();
    let mut objects = Vec::new();
    let mut moduli = Vec::new();
    for x1 in 0..p1.object_count() {
        let b = s1.right.objects[x1];
        for x2 in 0..p2.object_count() {
            if s2.left.objects[x2] != b {
                continue;
            }
            let mut m = p1.moduli(x1).expect("additive").to_vec();
            m.extend(p2.moduli(x2).expect("additive"));
            let gs: Vec<Option<usize>> = match mode {
                CompositionMode::Homotopy => g.outgoing(b).iter().map(|&a| Some(a)).collect(),
                CompositionMode::Strong => vec![None],
            };
            for ga in gs {
                let piece = (x1, ga, x2);
                index.insert(piece, pieces.len());
                pieces.push(piece);
                let label = match ga {
                    Some(a) => format!("({}|{:?}|{})", p1.objects()[x1], g.arrow(a).coords, p2.objects()[x2]),
                    None => format!("({}|{})", p1.objects()[x1], p2.objects()[x2]),
                };
                objects.push(label);
                moduli.push(m.clone());
            }
        }
    }
    let mut arrows: Vec<Arrow> = Vec::with_capacity(size as usize);
    let mut left_arrows = Vec::with_capacity(size as usize);
    let mut right_arrows = Vec::with_capacity(size as usize);
    let mut by_image: FxHashMap<usize, FxHashMap<usize, Vec<usize>>> = FxHashMap::default();
    for (k, &(x1, ga, x2)) in pieces.iter().enumerate() {
        let all2 = p2.outgoing(x2);
        let fibre = by_image.entry(x2).or_insert_with(|| {
            let mut m: FxHashMap<usize, Vec<usize>> = FxHashMap::default();
            if mode == CompositionMode::Strong {
                for &l2 in all2 {
                    m.entry(s2.left.arrows[l2]).or_default().push(l2);
                }
            }
            m
        });
        for &l1 in p1.outgoing(x1) {
            let partners: &[usize] = match mode {
                CompositionMode::Homotopy => all2,
                CompositionMode::Strong => fibre.get(&s1.right.arrows[l1]).map(Vec::as_slice).unwrap_or(&[]),
            };
            for &l2 in partners {
                let (y1, y2) = (p1.arrow(l1).tgt, p2.arrow(l2).tgt);
                let r1 = s1.right.arrows[l1];
                let f2 = s2.left.arrows[l2];
                let tgt_piece = match ga {
                    None => {
                        if r1 != f2 {
                            continue;
                        }
                        (y1, None, y2)
                    }
                    Some(a) => {
                        // h = f2(l2) ∘ g ∘ r1(l1)^-1
                        let h = g
                            .compose(f2, a)
                            .and_then(|t| g.compose(t, g.inverse(r1)))
                            .expect("boundary composites exist");
                        (y1, Some(h), y2)
                    }
                };
                let tgt = *index.get(&tgt_piece).expect("target piece exists");
                let mut coords = p1.arrow(l1).coords.clone();
                coords.extend(&p2.arrow(l2).coords);
                arrows.push(Arrow { src: k, tgt, coords });
                left_arrows.push(s1.left.arrows[l1]);
                right_arrows.push(s2.right.arrows[l2]);
            }
        }
    }
    let left = GroupoidFunctor {
        objects: pieces.iter().map(|p| s1.left.objects[p.0]).collect(),
        arrows: left_arrows,
    };
    let right = GroupoidFunctor {
        objects: pieces.iter().map(|p| s2.right.objects[p.2]).collect(),
        arrows: right_arrows,
    };
    let apex = FiniteGroupoid::additive(objects, moduli, arrows)?;
    Ok((
        Span {
            apex,
            source: s1.source.clone(),
            target: s2.target.clone(),
            left,
            right,
        },
        pieces,
    ))
}

/// Composite of `s1` followed by `s2` over their shared boundary.
pub fn compose_spans(s1: &Span, s2: &Span, mode: CompositionMode, budget: usize) -> Result<Span, GroupoidError> {
    compose_with_pieces(s1, s2, mode, budget).map(|(s, _)| s)
}

/// Strong and homotopy composites of one pair and the canonical functor
/// between them.
#[derive(Clone, Debug)]
pub struct Comparison {
    pub strong: Span,
    pub homotopy: Span,
    pub functor: GroupoidFunctor,
}

impl Comparison {
    /// Functor laws, strict compatibility with both outer legs and the
    /// essential-equivalence verdict.
    pub fn verify(&self, budget: usize) -> Result<(FunctorRoute, EquivalenceVerdict), GroupoidError> {
        let route = self.functor.validate(&self.strong.apex, &self.homotopy.apex, budget)?;
        if self.homotopy.left.after(&self.functor) != self.strong.left
            || self.homotopy.right.after(&self.functor) != self.strong.right
        {
            return Err(GroupoidError::Invalid(
                "comparison functor does not commute with the outer legs".into(),
            ));
        }
        Ok((
            route,
            essential_equivalence_check(&self.functor, &self.strong.apex, &self.homotopy.apex),
        ))
    }
}

/// Sends `(x1, x2)` to `(x1, id, x2)` and `(l1, l2)` to itself.
pub fn comparison_functor(s1: &Span, s2: &Span, budget: usize) -> Result<Comparison, GroupoidError> {
    let (strong, sp) = compose_with_pieces(s1, s2, CompositionMode::Strong, budget)?;
    let (homotopy, hp) = compose_with_pieces(s1, s2, CompositionMode::Homotopy, budget)?;
    let g = &s1.target;
    let index: FxHashMap<Piece, usize> = hp.iter().enumerate().map(|(k, &p)| (p, k)).collect();
    let objects: Vec<usize> = sp
        .iter()
        .map(|&(x1, _, x2)| index[&(x1, Some(g.identity(s1.right.objects[x1])), x2)])
        .collect();
    let mut arrows = Vec::with_capacity(strong.apex.arrow_count());
    for a in strong.apex.arrows() {
        let b = homotopy
            .apex
            .find_arrow(objects[a.src], objects[a.tgt], &a.coords)
            .ok_or_else(|| GroupoidError::Invalid("comparison image arrow is missing".into()))?;
        arrows.push(b);
    }
    Ok(Comparison {
        strong,
        homotopy,
        functor: GroupoidFunctor { objects, arrows },
    })
}

/// One orbit of a span, up to the invariants we can compare.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, serde::Serialize)]
pub struct OrbitRecord {
    /// Label of the source boundary object.
    pub left: String,
    /// Label of the target boundary object.
    pub right: String,
    /// Invariant factors of the isotropy group.
    pub isotropy: Vec<u64>,
    /// Invariant factors of the kernel of the combined leg map.
    pub kernel: Vec<u64>,
    /// Hermite basis of the preimage of the leg image in the boundary
    /// coordinates, rendered.
    pub image: String,
}

impl fmt::Display for OrbitRecord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} -> {} iso{:?} ker{:?} im{}",
            self.left, self.right, self.isotropy, self.kernel, self.image
        )
    }
}

/// Weak-equivalence invariant of a span: a multiset of orbit records.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SpanFingerprint {
    pub records: Vec<(OrbitRecord, BigUint)>,
}

impl SpanFingerprint {
    pub fn from_records<I: IntoIterator<Item = (OrbitRecord, BigUint)>>(items: I) -> Self {
        let mut map: std::collections::BTreeMap<OrbitRecord, BigUint> = Default::default();
        for (r, m) in items {
            *map.entry(r).or_default() += m;
        }
        SpanFingerprint {
            records: map.into_iter().collect(),
        }
    }

    pub fn canonical(&self) -> String {
        self.to_string()
    }

    /// Total number of orbits.
    pub fn orbit_count(&self) -> BigUint {
        self.records.iter().map(|(_, m)| m.clone()).sum()
    }
}

impl fmt::Display for SpanFingerprint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.records.is_empty() {
            return f.write_str("empty");
        }
        for (i, (r, m)) in self.records.iter().enumerate() {
            if i > 0 {
                f.write_str("\n")?;
            }
            write!(f, "{r} x{m}")?;
        }
        Ok(())
    }
}

impl serde::Serialize for SpanFingerprint {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.canonical())
    }
}

fn additive_order(coords: &[u32], moduli: &[u64]) -> u64 {
    coords
        .iter()
        .zip(moduli)
        .map(|(&c, &m)| m / (c as u64).gcd(&m))
        .fold(1, |a, b| a.lcm(&b))
}

/// Fingerprint by direct enumeration of the apex.
pub fn fingerprint(span: &Span, isotropy_bound: usize) -> Result<SpanFingerprint, GroupoidError> {
    if !is_loop_boundary(&span.source) || !is_loop_boundary(&span.target) {
        return Err(GroupoidError::Unsupported(
            "fingerprints need additive boundaries with source = target".into(),
        ));
    }
    let apex = &span.apex;
    let mut items = Vec::new();
    for orbit in apex.orbits() {
        let x = orbit[0];
        let iso = apex.isotropy(x);
        if iso.len() > isotropy_bound {
            return Err(GroupoidError::IsotropyTooLarge {
                order: iso.len() as u128,
                bound: isotropy_bound,
            });
        }
        let orders: Vec<u64> = match apex.moduli(x) {
            Some(m) => iso.iter().map(|&a| additive_order(&apex.arrow(a).coords, m)).collect(),
            None => {
                if !iso
                    .iter()
                    .all(|&a| iso.iter().all(|&b| apex.compose(a, b) == apex.compose(b, a)))
                {
                    return Err(GroupoidError::Unsupported(format!(
                        "isotropy at {} is not abelian",
                        apex.objects()[x]
                    )));
                }
                iso.iter()
                    .map(|&a| apex.arrow_order(a).expect("isotropy arrows are loops"))
                    .collect()
            }
        };
        let (lb, rb) = (span.left.objects[x], span.right.objects[x]);
        let (lid, rid) = (span.source.identity(lb), span.target.identity(rb));
        let mut moduli = span.source.moduli(lb).expect("additive").to_vec();
        moduli.extend(span.target.moduli(rb).expect("additive"));
        let mut kernel_orders = Vec::new();
        for (&a, &o) in iso.iter().zip(&orders) {
            if span.left.arrows[a] == lid && span.right.arrows[a] == rid {
                kernel_orders.push(o);
            }
        }
        // generators suffice for the image lattice
        let gens = apex.isotropy_generators(x);
        let mut rows: ZMatrix = Vec::with_capacity(gens.len());
        for &a in &gens {
            let (la, ra) = (span.left.arrows[a], span.right.arrows[a]);
            let row = span
                .source
                .arrow(la)
                .coords
                .iter()
                .chain(&span.target.arrow(ra).coords)
                .map(|&c| c.into())
                .collect();
            rows.push(row);
        }
        let record = OrbitRecord {
            left: span.source.objects()[lb].clone(),
            right: span.target.objects()[rb].clone(),
            isotropy: invariant_factors_from_orders(&orders),
            kernel: invariant_factors_from_orders(&kernel_orders),
            image: render(&image_lattice(&rows, &moduli)),
        };
        items.push((record, BigUint::one()));
    }
    Ok(SpanFingerprint::from_records(items))
}

/// Searches for a functor between two apexes that commutes strictly with
/// the legs and is an essential equivalence. Only for apexes with at most
/// `max_arrows` arrows.
pub fn find_span_equivalence(
    s1: &Span,
    s2: &Span,
    max_arrows: usize,
) -> Result<Option<GroupoidFunctor>, GroupoidError> {
    let (a, b) = (&s1.apex, &s2.apex);
    if a.arrow_count() > max_arrows || b.arrow_count() > max_arrows {
        return Err(GroupoidError::TooLarge {
            what: "apex for functor search".into(),
            size: a.arrow_count().max(b.arrow_count()) as u128,
            budget: max_arrows,
        });
    }
    if *s1.source != *s2.source || *s1.target != *s2.target {
        return Err(GroupoidError::BoundaryMismatch(
            "spans have different boundaries".into(),
        ));
    }
    let obj_candidates: Vec<Vec<usize>> = (0..a.object_count())
        .map(|x| {
            (0..b.object_count())
                .filter(|&y| s2.left.objects[y] == s1.left.objects[x] && s2.right.objects[y] == s1.right.objects[x])
                .collect()
        })
        .collect();
    let mut objects = vec![0; a.object_count()];
    let mut found = None;
    search_objects(s1, s2, &obj_candidates, 0, &mut objects, &mut found);
    Ok(found)
}

fn search_objects(
    s1: &Span,
    s2: &Span,
    cands: &[Vec<usize>],
    i: usize,
    objects: &mut Vec<usize>,
    found: &mut Option<GroupoidFunctor>,
) {
    if found.is_some() {
        return;
    }
    if i == cands.len() {
        let mut arrows = vec![usize::MAX; s1.apex.arrow_count()];
        search_arrows(s1, s2, objects, 0, &mut arrows, found);
        return;
    }
    for &y in &cands[i] {
        objects[i] = y;
        search_objects(s1, s2, cands, i + 1, objects, found);
    }
}

fn search_arrows(
    s1: &Span,
    s2: &Span,
    objects: &[usize],
    i: usize,
    arrows: &mut Vec<usize>,
    found: &mut Option<GroupoidFunctor>,
) {
    if found.is_some() {
        return;
    }
    let (a, b) = (&s1.apex, &s2.apex);
    if i == arrows.len() {
        let f = GroupoidFunctor {
            objects: objects.to_vec(),
            arrows: arrows.clone(),
        };
        if f.validate(a, b, usize::MAX).is_ok() && essential_equivalence_check(&f, a, b).equivalence {
            *found = Some(f);
        }
        return;
    }
    let arr = a.arrow(i);
    for c in b.hom(objects[arr.src], objects[arr.tgt]) {
        if s2.left.arrows[c] != s1.left.arrows[i] || s2.right.arrows[c] != s1.right.arrows[i] {
            continue;
        }
        arrows[i] = c;
        // prune on composites already fully assigned
        let consistent = (0..=i).all(|g| {
            (0..=i).all(|h| match a.compose(g, h) {
                Some(gh) if gh <= i => b.compose(arrows[g], arrows[h]) == Some(arrows[gh]),
                _ => true,
            })
        });
        if consistent {
            search_arrows(s1, s2, objects, i + 1, arrows, found);
        }
    }
    arrows[i] = usize::MAX;
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groupoid::finite::{abelian_groupoid, DEFAULT_ARROW_BUDGET, DEFAULT_CHECK_BUDGET};
    use crate::groupoid::AbelianModel;

    fn a1(m: &AbelianModel) -> Arc<FiniteGroupoid> {
        Arc::new(FiniteGroupoid::power(m, 1, DEFAULT_ARROW_BUDGET).unwrap())
    }

    #[test]
    fn identity_span_fingerprint_is_the_diagonal() {
        let m = AbelianModel::single(&[2]).unwrap();
        let s = Span::identity(a1(&m));
        let fp = fingerprint(&s, DEFAULT_ISOTROPY_BOUND).unwrap();
        assert_eq!(fp.to_string(), "(pt) -> (pt) iso[2] ker[] im[[1,1],[0,2]] x1");
    }

    #[test]
    fn product_of_identity_spans_is_identity_of_product() {
        let m = AbelianModel::from_lists(&[&[2], &[3]]).unwrap();
        let g = a1(&m);
        let p = Span::identity(g.clone())
            .product(&Span::identity(g.clone()), DEFAULT_ARROW_BUDGET)
            .unwrap();
        let gg = Arc::new(g.product(&g, DEFAULT_ARROW_BUDGET).unwrap());
        let q = Span::identity(gg);
        assert_eq!(p.apex, q.apex);
        assert_eq!(p.left, q.left);
        assert_eq!(p.right, q.right);
        assert_eq!(*p.source, *q.source);
        p.validate(DEFAULT_CHECK_BUDGET).unwrap();
    }

    #[test]
    fn identity_self_composition_compares() {
        let m = AbelianModel::single(&[2, 2]).unwrap();
        let s = Span::identity(a1(&m));
        let c = comparison_functor(&s, &s, DEFAULT_ARROW_BUDGET).unwrap();
        c.strong.validate(DEFAULT_CHECK_BUDGET).unwrap();
        c.homotopy.validate(DEFAULT_CHECK_BUDGET).unwrap();
        let (_, v) = c.verify(DEFAULT_CHECK_BUDGET).unwrap();
        assert!(v.equivalence);
        let fs = fingerprint(&c.strong, 64).unwrap();
        let fh = fingerprint(&c.homotopy, 64).unwrap();
        assert_eq!(fs, fh);
        assert_eq!(fs, fingerprint(&s, 64).unwrap());
    }

    #[test]
    fn mismatched_boundaries_are_rejected() {
        let m2 = AbelianModel::single(&[2]).unwrap();
        let m3 = AbelianModel::single(&[3]).unwrap();
        let r = compose_spans(
            &Span::identity(a1(&m2)),
            &Span::identity(a1(&m3)),
            CompositionMode::Homotopy,
            DEFAULT_ARROW_BUDGET,
        );
        assert!(matches!(r, Err(GroupoidError::BoundaryMismatch(_))));
    }

    #[test]
    fn budget_is_enforced() {
        let m = AbelianModel::single(&[4]).unwrap();
        let s = Span::identity(a1(&m));
        assert!(matches!(
            compose_spans(&s, &s, CompositionMode::Homotopy, 10),
            Err(GroupoidError::TooLarge { .. })
        ));
    }

    #[test]
    fn isotropy_bound_is_enforced() {
        let m = AbelianModel::single(&[4, 4]).unwrap();
        let s = Span::identity(a1(&m));
        assert!(matches!(
            fingerprint(&s, 8),
            Err(GroupoidError::IsotropyTooLarge { .. })
        ));
    }

    #[test]
    fn fingerprint_ignores_relabeling_of_the_apex() {
        let m = AbelianModel::from_lists(&[&[2], &[3]]).unwrap();
        let g = a1(&m);
        let s = Span::identity(g.clone());
        // reverse the object order of the apex
        let apex = s.apex.clone();
        let n = apex.object_count();
        let perm: Vec<usize> = (0..n).rev().collect();
        let moduli: Vec<Vec<u64>> = (0..n).map(|x| apex.moduli(perm[x]).unwrap().to_vec()).collect();
        let mut inv = vec![0; n];
        for (i, &p) in perm.iter().enumerate() {
            inv[p] = i;
        }
        let arrows: Vec<Arrow> = apex
            .arrows()
            .iter()
            .rev()
            .map(|a| Arrow {
                src: inv[a.src],
                tgt: inv[a.tgt],
                coords: a.coords.clone(),
            })
            .collect();
        let objects: Vec<String> = (0..n).map(|x| format!("o{x}")).collect();
        let relabeled = FiniteGroupoid::additive(objects, moduli, arrows).unwrap();
        let k = apex.arrow_count();
        let legs = |f: &GroupoidFunctor| GroupoidFunctor {
            objects: (0..n).map(|x| f.objects[perm[x]]).collect(),
            arrows: (0..k).map(|a| f.arrows[k - 1 - a]).collect(),
        };
        let t = Span {
            left: legs(&s.left),
            right: legs(&s.right),
            apex: relabeled,
            source: g.clone(),
            target: g,
        };
        t.validate(DEFAULT_CHECK_BUDGET).unwrap();
        assert_eq!(fingerprint(&s, 64).unwrap(), fingerprint(&t, 64).unwrap());
        assert!(find_span_equivalence(&s, &t, 12).unwrap().is_some());
    }

    #[test]
    fn cardinality_of_a_product_is_the_product_of_cardinalities() {
        let a = abelian_groupoid(&AbelianModel::from_lists(&[&[2], &[]]).unwrap());
        let b = abelian_groupoid(&AbelianModel::from_lists(&[&[3], &[2], &[]]).unwrap());
        let p = a.product(&b, DEFAULT_ARROW_BUDGET).unwrap();
        assert_eq!(p.cardinality(), a.cardinality() * b.cardinality());
    }
}
