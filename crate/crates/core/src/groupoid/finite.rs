//! Explicit finite groupoids and functors between them.

use std::collections::VecDeque;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use rustc_hash::{FxHashMap, FxHashSet};

use super::model::AbelianModel;
use super::GroupoidError;
use crate::cob2::DisjointSets;

/// Default cap on the number of arrows of an explicit groupoid.
pub const DEFAULT_ARROW_BUDGET: usize = 2_000_000;
/// Default cap on exhaustive pair/triple enumeration in checks.
pub const DEFAULT_CHECK_BUDGET: usize = 4_000_000;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Arrow {
    pub src: usize,
    pub tgt: usize,
    /// Coordinates in the additive law; unused for tables.
    pub coords: Vec<u32>,
}

#[derive(Clone, Debug, PartialEq)]
enum Law {
    /// Hom-sets sit inside `⊕ Z/moduli[x]` and composites add coordinates.
    Additive { moduli: Vec<Vec<u64>> },
    /// Explicit composition table keyed by `(g, h)` meaning `g ∘ h`.
    Table { table: FxHashMap<(usize, usize), usize> },
}

#[derive(Clone, Debug)]
pub struct FiniteGroupoid {
    objects: Vec<String>,
    arrows: Vec<Arrow>,
    identity: Vec<usize>,
    inverse: Vec<usize>,
    law: Law,
    lookup: FxHashMap<(usize, usize, Vec<u32>), usize>,
    outgoing: Vec<Vec<usize>>,
    incoming: Vec<Vec<usize>>,
}

impl PartialEq for FiniteGroupoid {
    fn eq(&self, other: &Self) -> bool {
        self.objects == other.objects && self.arrows == other.arrows && self.law == other.law
    }
}

/// How associativity was established by [`FiniteGroupoid::validate`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "snake_case")]
pub enum AssociativityRoute {
    /// Every composable triple was checked.
    Exhaustive,
    /// Too many triples; composites are coordinate sums, which associate.
    AdditiveLaw,
}

#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
pub struct Validation {
    pub objects: usize,
    pub arrows: usize,
    pub pairs_checked: usize,
    pub triples_checked: usize,
    pub associativity: AssociativityRoute,
}

fn add_mod(a: &[u32], b: &[u32], moduli: &[u64]) -> Vec<u32> {
    a.iter()
        .zip(b)
        .zip(moduli)
        .map(|((&x, &y), &m)| ((x as u64 + y as u64) % m) as u32)
        .collect()
}

fn neg_mod(a: &[u32], moduli: &[u64]) -> Vec<u32> {
    a.iter()
        .zip(moduli)
        .map(|(&x, &m)| ((m - x as u64 % m) % m) as u32)
        .collect()
}

/// All coordinate vectors of `⊕ Z/moduli`, lexicographic.
pub fn all_coords(moduli: &[u64]) -> Vec<Vec<u32>> {
    let mut out = vec![Vec::with_capacity(moduli.len())];
    for &m in moduli {
        let mut next = Vec::with_capacity(out.len() * m as usize);
        for prefix in &out {
            for a in 0..m as u32 {
                let mut v = prefix.clone();
                v.push(a);
                next.push(v);
            }
        }
        out = next;
    }
    out
}

fn merge_labels(a: &str, b: &str) -> String {
    fn inner(s: &str) -> &str {
        if s.starts_with('(') && s.ends_with(')') && s.len() >= 2 {
            &s[1..s.len() - 1]
        } else {
            s
        }
    }
    let parts: Vec<&str> = [inner(a), inner(b)].into_iter().filter(|s| !s.is_empty()).collect();
    format!("({})", parts.join(","))
}

impl FiniteGroupoid {
    fn index(objects: Vec<String>, arrows: Vec<Arrow>, law: Law) -> Result<Self, GroupoidError> {
        let n = objects.len();
        let mut outgoing = vec![Vec::new(); n];
        let mut incoming = vec![Vec::new(); n];
        for (i, a) in arrows.iter().enumerate() {
            if a.src >= n || a.tgt >= n {
                return Err(GroupoidError::Invalid(format!("arrow {i} has an unknown endpoint")));
            }
            outgoing[a.src].push(i);
            incoming[a.tgt].push(i);
        }
        Ok(FiniteGroupoid {
            objects,
            arrows,
            identity: Vec::new(),
            inverse: Vec::new(),
            law,
            lookup: FxHashMap::default(),
            outgoing,
            incoming,
        })
    }

    /// Groupoid whose hom-sets are subsets of `⊕ Z/moduli[x]`, composing by
    /// addition. Identities and inverses are located by coordinates.
    pub fn additive(objects: Vec<String>, moduli: Vec<Vec<u64>>, arrows: Vec<Arrow>) -> Result<Self, GroupoidError> {
        if moduli.len() != objects.len() {
            return Err(GroupoidError::Invalid("one moduli list per object".into()));
        }
        let mut g = Self::index(objects, arrows, Law::Additive { moduli })?;
        let moduli = match &g.law {
            Law::Additive { moduli } => moduli.clone(),
            Law::Table { .. } => unreachable!(),
        };
        for (i, a) in g.arrows.iter().enumerate() {
            if moduli[a.src] != moduli[a.tgt] || a.coords.len() != moduli[a.src].len() {
                return Err(GroupoidError::Invalid(format!(
                    "arrow {i} joins objects with different coordinate groups"
                )));
            }
            if a.coords.iter().zip(&moduli[a.src]).any(|(&c, &m)| c as u64 >= m) {
                return Err(GroupoidError::Invalid(format!("arrow {i} has unreduced coordinates")));
            }
            if g.lookup.insert((a.src, a.tgt, a.coords.clone()), i).is_some() {
                return Err(GroupoidError::Invalid(format!("arrow {i} is duplicated")));
            }
        }
        let mut identity = Vec::with_capacity(g.objects.len());
        for x in 0..g.objects.len() {
            let zero = vec![0u32; moduli[x].len()];
            let id = g
                .lookup
                .get(&(x, x, zero))
                .copied()
                .ok_or_else(|| GroupoidError::Invalid(format!("object {} has no identity", g.objects[x])))?;
            identity.push(id);
        }
        let mut inverse = Vec::with_capacity(g.arrows.len());
        for (i, a) in g.arrows.iter().enumerate() {
            let inv = g
                .lookup
                .get(&(a.tgt, a.src, neg_mod(&a.coords, &moduli[a.src])))
                .copied()
                .ok_or_else(|| GroupoidError::Invalid(format!("arrow {i} has no inverse")))?;
            inverse.push(inv);
        }
        g.identity = identity;
        g.inverse = inverse;
        Ok(g)
    }

    /// General groupoid from an explicit composition table; `table` maps
    /// `(g, h)` with `src(g) = tgt(h)` to `g ∘ h`.
    pub fn from_table(
        objects: Vec<String>,
        arrows: Vec<(usize, usize)>,
        identity: Vec<usize>,
        inverse: Vec<usize>,
        table: FxHashMap<(usize, usize), usize>,
    ) -> Result<Self, GroupoidError> {
        let arrows = arrows
            .into_iter()
            .map(|(src, tgt)| Arrow {
                src,
                tgt,
                coords: Vec::new(),
            })
            .collect();
        let mut g = Self::index(objects, arrows, Law::Table { table })?;
        if identity.len() != g.objects.len() || inverse.len() != g.arrows.len() {
            return Err(GroupoidError::Invalid(
                "identity/inverse maps have the wrong size".into(),
            ));
        }
        if identity.iter().chain(&inverse).any(|&a| a >= g.arrows.len()) {
            return Err(GroupoidError::Invalid(
                "identity/inverse refers to an unknown arrow".into(),
            ));
        }
        g.identity = identity;
        g.inverse = inverse;
        Ok(g)
    }

    /// Group `⊕ Z/moduli` as a one-object groupoid.
    pub fn group(name: &str, moduli: &[u64]) -> Self {
        let arrows = all_coords(moduli)
            .into_iter()
            .map(|coords| Arrow { src: 0, tgt: 0, coords })
            .collect();
        Self::additive(vec![name.to_string()], vec![moduli.to_vec()], arrows).expect("a group is a groupoid")
    }

    /// One object, one arrow.
    pub fn point() -> Self {
        Self::group("()", &[])
    }

    /// Trivial groupoid on the given objects.
    pub fn discrete(objects: Vec<String>) -> Self {
        let n = objects.len();
        let arrows = (0..n)
            .map(|x| Arrow {
                src: x,
                tgt: x,
                coords: vec![],
            })
            .collect();
        Self::additive(objects, vec![Vec::new(); n], arrows).expect("discrete groupoid")
    }

    /// `k`-fold power of the abelian groupoid of `model`. Objects are point
    /// tuples in mixed-radix order; labels are `(p,q,...)`.
    pub fn power(model: &AbelianModel, k: usize, budget: usize) -> Result<Self, GroupoidError> {
        let tuples = tuples(model.len(), k);
        let total: u128 = tuples
            .iter()
            .map(|t| t.iter().map(|&p| model.order(p) as u128).product::<u128>())
            .sum();
        if total > budget as u128 {
            return Err(GroupoidError::TooLarge {
                what: format!("power {k} of {}", model.describe()),
                size: total,
                budget,
            });
        }
        let mut objects = Vec::with_capacity(tuples.len());
        let mut moduli = Vec::with_capacity(tuples.len());
        let mut arrows = Vec::new();
        for (x, t) in tuples.iter().enumerate() {
            objects.push(model.tuple_label(t));
            let m = model.tuple_moduli(t);
            for coords in all_coords(&m) {
                arrows.push(Arrow { src: x, tgt: x, coords });
            }
            moduli.push(m);
        }
        Self::additive(objects, moduli, arrows)
    }

    pub fn object_count(&self) -> usize {
        self.objects.len()
    }

    pub fn arrow_count(&self) -> usize {
        self.arrows.len()
    }

    pub fn objects(&self) -> &[String] {
        &self.objects
    }

    pub fn arrows(&self) -> &[Arrow] {
        &self.arrows
    }

    pub fn arrow(&self, a: usize) -> &Arrow {
        &self.arrows[a]
    }

    pub fn identity(&self, x: usize) -> usize {
        self.identity[x]
    }

    pub fn inverse(&self, a: usize) -> usize {
        self.inverse[a]
    }

    pub fn outgoing(&self, x: usize) -> &[usize] {
        &self.outgoing[x]
    }

    pub fn incoming(&self, x: usize) -> &[usize] {
        &self.incoming[x]
    }

    pub fn is_additive(&self) -> bool {
        matches!(self.law, Law::Additive { .. })
    }

    /// Coordinate group of `x` under the additive law.
    pub fn moduli(&self, x: usize) -> Option<&[u64]> {
        match &self.law {
            Law::Additive { moduli } => Some(&moduli[x]),
            Law::Table { .. } => None,
        }
    }

    pub fn find_arrow(&self, src: usize, tgt: usize, coords: &[u32]) -> Option<usize> {
        self.lookup.get(&(src, tgt, coords.to_vec())).copied()
    }

    /// `g ∘ h` when `src(g) = tgt(h)` and the composite exists.
    pub fn compose(&self, g: usize, h: usize) -> Option<usize> {
        let (ag, ah) = (&self.arrows[g], &self.arrows[h]);
        if ag.src != ah.tgt {
            return None;
        }
        match &self.law {
            Law::Additive { moduli } => {
                let c = add_mod(&ag.coords, &ah.coords, &moduli[ah.src]);
                self.lookup.get(&(ah.src, ag.tgt, c)).copied()
            }
            Law::Table { table } => table.get(&(g, h)).copied(),
        }
    }

    /// Arrows from `x` to itself.
    pub fn isotropy(&self, x: usize) -> Vec<usize> {
        self.outgoing[x]
            .iter()
            .copied()
            .filter(|&a| self.arrows[a].tgt == x)
            .collect()
    }

    /// Arrows from `x` to `y`.
    pub fn hom(&self, x: usize, y: usize) -> Vec<usize> {
        self.outgoing[x]
            .iter()
            .copied()
            .filter(|&a| self.arrows[a].tgt == y)
            .collect()
    }

    /// Connected components, each sorted, ordered by smallest object.
    pub fn orbits(&self) -> Vec<Vec<usize>> {
        let mut ds = DisjointSets::new();
        for _ in 0..self.objects.len() {
            ds.make_set();
        }
        for a in &self.arrows {
            ds.union(a.src, a.tgt);
        }
        let mut by_root: FxHashMap<usize, usize> = FxHashMap::default();
        let mut out: Vec<Vec<usize>> = Vec::new();
        for x in 0..self.objects.len() {
            let r = ds.find(x);
            let k = *by_root.entry(r).or_insert_with(|| {
                out.push(Vec::new());
                out.len() - 1
            });
            out[k].push(x);
        }
        out
    }

    /// Orbit index of every object, matching [`FiniteGroupoid::orbits`].
    pub fn orbit_ids(&self) -> Vec<usize> {
        let mut ids = vec![0; self.objects.len()];
        for (k, orbit) in self.orbits().iter().enumerate() {
            for &x in orbit {
                ids[x] = k;
            }
        }
        ids
    }

    /// Exhaustive check of the groupoid axioms. Associativity is enumerated
    /// when the triple count fits `budget`; beyond that an additive law is
    /// accepted on the strength of its coordinate sums, a table is rejected.
    pub fn validate(&self, budget: usize) -> Result<Validation, GroupoidError> {
        let fail = |msg: String| Err(GroupoidError::Invalid(msg));
        for (x, &id) in self.identity.iter().enumerate() {
            let a = &self.arrows[id];
            if a.src != x || a.tgt != x {
                return fail(format!("identity of {} is not a loop at it", self.objects[x]));
            }
        }
        for (i, a) in self.arrows.iter().enumerate() {
            let inv = self.inverse[i];
            let b = &self.arrows[inv];
            if b.src != a.tgt || b.tgt != a.src {
                return fail(format!("inverse of arrow {i} has the wrong endpoints"));
            }
            if self.compose(inv, i) != Some(self.identity[a.src]) || self.compose(i, inv) != Some(self.identity[a.tgt])
            {
                return fail(format!("inverse law fails for arrow {i}"));
            }
            if self.compose(i, self.identity[a.src]) != Some(i) || self.compose(self.identity[a.tgt], i) != Some(i) {
                return fail(format!("unit law fails for arrow {i}"));
            }
        }
        let pairs: usize = (0..self.objects.len())
            .map(|x| self.incoming[x].len() * self.outgoing[x].len())
            .sum();
        if pairs > budget && !self.is_additive() {
            return Err(GroupoidError::TooLarge {
                what: "composable pairs".into(),
                size: pairs as u128,
                budget,
            });
        }
        let mut pairs_checked = 0;
        if pairs <= budget {
            for x in 0..self.objects.len() {
                for &h in &self.incoming[x] {
                    for &g in &self.outgoing[x] {
                        let Some(c) = self.compose(g, h) else {
                            return fail(format!("composite of {g} and {h} is missing"));
                        };
                        let ac = &self.arrows[c];
                        if ac.src != self.arrows[h].src || ac.tgt != self.arrows[g].tgt {
                            return fail(format!("composite of {g} and {h} has wrong endpoints"));
                        }
                        pairs_checked += 1;
                    }
                }
            }
        } else {
            // closure over a generating set suffices for an additive law
            for (s, h) in self.generator_pairs() {
                if self.compose(s, h).is_none() {
                    return fail(format!("composite of {s} and {h} is missing"));
                }
                pairs_checked += 1;
            }
        }
        // triples: sum over middle arrows of |in(src)| * |out(tgt)|
        let triples: usize = self
            .arrows
            .iter()
            .map(|a| self.incoming[a.src].len() * self.outgoing[a.tgt].len())
            .sum();
        let mut triples_checked = 0;
        let associativity = if triples <= budget {
            for (m, a) in self.arrows.iter().enumerate() {
                for &h in &self.incoming[a.src] {
                    for &g in &self.outgoing[a.tgt] {
                        let left = self.compose(g, m).and_then(|gm| self.compose(gm, h));
                        let right = self.compose(m, h).and_then(|mh| self.compose(g, mh));
                        if left.is_none() || left != right {
                            return fail(format!("associativity fails on ({g}, {m}, {h})"));
                        }
                        triples_checked += 1;
                    }
                }
            }
            AssociativityRoute::Exhaustive
        } else if self.is_additive() {
            AssociativityRoute::AdditiveLaw
        } else {
            return Err(GroupoidError::TooLarge {
                what: "composable triples".into(),
                size: triples as u128,
                budget,
            });
        };
        Ok(Validation {
            objects: self.objects.len(),
            arrows: self.arrows.len(),
            pairs_checked,
            triples_checked,
            associativity,
        })
    }

    /// An inverse-closed generating set: spanning-tree arrows of each orbit
    /// plus generators of the isotropy at its root.
    pub fn generating_set(&self) -> Vec<usize> {
        let mut gens = Vec::new();
        for orbit in self.orbits() {
            let root = orbit[0];
            // spanning tree by breadth-first search
            let mut seen: FxHashSet<usize> = FxHashSet::default();
            seen.insert(root);
            let mut queue = VecDeque::from([root]);
            while let Some(x) = queue.pop_front() {
                for &a in &self.outgoing[x] {
                    let y = self.arrows[a].tgt;
                    if seen.insert(y) {
                        gens.push(a);
                        gens.push(self.inverse[a]);
                        queue.push_back(y);
                    }
                }
            }
            for k in self.isotropy_generators(root) {
                gens.push(k);
                gens.push(self.inverse[k]);
            }
        }
        gens.sort_unstable();
        gens.dedup();
        gens
    }

    /// Greedy generating set of the isotropy group at `x`.
    pub fn isotropy_generators(&self, x: usize) -> Vec<usize> {
        let iso = self.isotropy(x);
        let mut span: FxHashSet<usize> = FxHashSet::default();
        span.insert(self.identity[x]);
        let mut chosen: Vec<usize> = Vec::new();
        for &k in &iso {
            if span.contains(&k) {
                continue;
            }
            chosen.push(k);
            // close up under the new generator and everything before it
            let mut frontier: Vec<usize> = span.iter().copied().collect();
            while let Some(e) = frontier.pop() {
                for &c in &chosen {
                    for c in [c, self.inverse[c]] {
                        if let Some(p) = self.compose(c, e) {
                            if span.insert(p) {
                                frontier.push(p);
                            }
                        }
                    }
                }
            }
        }
        chosen
    }

    fn generator_pairs(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for s in self.generating_set() {
            for &h in &self.incoming[self.arrows[s].src] {
                out.push((s, h));
            }
        }
        out
    }

    /// True when every isotropy group is commutative.
    pub fn has_abelian_isotropy(&self) -> bool {
        if self.is_additive() {
            return true;
        }
        (0..self.objects.len()).all(|x| {
            let iso = self.isotropy(x);
            iso.iter()
                .all(|&a| iso.iter().all(|&b| self.compose(a, b) == self.compose(b, a)))
        })
    }

    /// Order of an arrow in its isotropy group; `None` for non-loops.
    pub fn arrow_order(&self, a: usize) -> Option<u64> {
        let arr = &self.arrows[a];
        if arr.src != arr.tgt {
            return None;
        }
        let id = self.identity[arr.src];
        let mut k = 1u64;
        let mut cur = a;
        while cur != id {
            cur = self.compose(a, cur)?;
            k += 1;
        }
        Some(k)
    }

    /// Sum over orbits of `1 / |isotropy|`.
    pub fn cardinality(&self) -> BigRational {
        let mut total = BigRational::zero();
        for orbit in self.orbits() {
            let n = self.isotropy(orbit[0]).len();
            total += BigRational::new(BigInt::from(1), BigInt::from(n));
        }
        total
    }

    /// Cartesian product. Objects and arrows are ordered lexicographically
    /// by source object pairs, so powers of an abelian model agree with
    /// products of lower powers.
    pub fn product(&self, other: &FiniteGroupoid, budget: usize) -> Result<Self, GroupoidError> {
        let (Law::Additive { moduli: m1 }, Law::Additive { moduli: m2 }) = (&self.law, &other.law) else {
            return Err(GroupoidError::Unsupported(
                "products are implemented for additive groupoids".into(),
            ));
        };
        let size = self.arrows.len() as u128 * other.arrows.len() as u128;
        if size > budget as u128 {
            return Err(GroupoidError::TooLarge {
                what: "product groupoid".into(),
                size,
                budget,
            });
        }
        let n2 = other.objects.len();
        let mut objects = Vec::with_capacity(self.objects.len() * n2);
        let mut moduli = Vec::with_capacity(self.objects.len() * n2);
        let mut arrows = Vec::with_capacity(size as usize);
        for x1 in 0..self.objects.len() {
            for x2 in 0..n2 {
                objects.push(merge_labels(&self.objects[x1], &other.objects[x2]));
                let mut m = m1[x1].clone();
                m.extend(&m2[x2]);
                moduli.push(m);
                for &a1 in &self.outgoing[x1] {
                    for &a2 in &other.outgoing[x2] {
                        let (b1, b2) = (&self.arrows[a1], &other.arrows[a2]);
                        let mut coords = b1.coords.clone();
                        coords.extend(&b2.coords);
                        arrows.push(Arrow {
                            src: x1 * n2 + x2,
                            tgt: b1.tgt * n2 + b2.tgt,
                            coords,
                        });
                    }
                }
            }
        }
        Self::additive(objects, moduli, arrows)
    }

    /// Product of a list; the empty list gives [`FiniteGroupoid::point`].
    pub fn product_all(list: &[FiniteGroupoid], budget: usize) -> Result<Self, GroupoidError> {
        let mut acc = Self::point();
        for g in list {
            acc = acc.product(g, budget)?;
        }
        Ok(acc)
    }

    /// Index of the product arrow `(a1, a2)` built by [`FiniteGroupoid::product`].
    pub fn product_arrow(&self, other: &FiniteGroupoid, a1: usize, a2: usize, prod: &FiniteGroupoid) -> usize {
        let (b1, b2) = (&self.arrows[a1], &other.arrows[a2]);
        let mut coords = b1.coords.clone();
        coords.extend(&b2.coords);
        let n2 = other.objects.len();
        prod.find_arrow(b1.src * n2 + b2.src, b1.tgt * n2 + b2.tgt, &coords)
            .expect("product arrow exists")
    }
}

/// Realizes an abelian model as a groupoid with source = target.
pub fn abelian_groupoid(model: &AbelianModel) -> FiniteGroupoid {
    let mut arrows = Vec::new();
    let mut moduli = Vec::new();
    for p in 0..model.len() {
        let m = model.moduli(p).to_vec();
        for coords in all_coords(&m) {
            arrows.push(Arrow { src: p, tgt: p, coords });
        }
        moduli.push(m);
    }
    FiniteGroupoid::additive(model.base().to_vec(), moduli, arrows).expect("abelian groupoid")
}

/// All `k`-tuples over `0..n` in mixed-radix order.
pub fn tuples(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for _ in 0..k {
        let mut next = Vec::with_capacity(out.len() * n);
        for t in &out {
            for p in 0..n {
                let mut v = t.clone();
                v.push(p);
                next.push(v);
            }
        }
        out = next;
    }
    out
}

/// How composition preservation was established for a functor.
#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "snake_case")]
pub enum FunctorRoute {
    /// All composable pairs.
    Exhaustive,
    /// Generating set against every composable arrow.
    Generators,
}

/// Object map and arrow map between two finite groupoids.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupoidFunctor {
    pub objects: Vec<usize>,
    pub arrows: Vec<usize>,
}

impl GroupoidFunctor {
    pub fn identity(g: &FiniteGroupoid) -> Self {
        GroupoidFunctor {
            objects: (0..g.object_count()).collect(),
            arrows: (0..g.arrow_count()).collect(),
        }
    }

    /// `self` after `first`.
    pub fn after(&self, first: &GroupoidFunctor) -> Self {
        GroupoidFunctor {
            objects: first.objects.iter().map(|&x| self.objects[x]).collect(),
            arrows: first.arrows.iter().map(|&a| self.arrows[a]).collect(),
        }
    }

    /// Checks sources, targets, identities and composites.
    pub fn validate(
        &self,
        dom: &FiniteGroupoid,
        cod: &FiniteGroupoid,
        budget: usize,
    ) -> Result<FunctorRoute, GroupoidError> {
        let fail = |msg: String| Err(GroupoidError::Invalid(msg));
        if self.objects.len() != dom.object_count() || self.arrows.len() != dom.arrow_count() {
            return fail("functor maps have the wrong size".into());
        }
        if self.objects.iter().any(|&y| y >= cod.object_count()) || self.arrows.iter().any(|&b| b >= cod.arrow_count())
        {
            return fail("functor lands outside the codomain".into());
        }
        for (a, arr) in dom.arrows().iter().enumerate() {
            let img = cod.arrow(self.arrows[a]);
            if img.src != self.objects[arr.src] || img.tgt != self.objects[arr.tgt] {
                return fail(format!("arrow {a} is not sent between the image objects"));
            }
        }
        for x in 0..dom.object_count() {
            if self.arrows[dom.identity(x)] != cod.identity(self.objects[x]) {
                return fail(format!("identity of object {x} is not preserved"));
            }
        }
        let pairs: usize = (0..dom.object_count())
            .map(|x| dom.incoming(x).len() * dom.outgoing(x).len())
            .sum();
        let (route, checks): (FunctorRoute, Vec<(usize, usize)>) = if pairs <= budget {
            let mut v = Vec::with_capacity(pairs);
            for x in 0..dom.object_count() {
                for &h in dom.incoming(x) {
                    for &g in dom.outgoing(x) {
                        v.push((g, h));
                    }
                }
            }
            (FunctorRoute::Exhaustive, v)
        } else {
            (FunctorRoute::Generators, dom.generator_pairs())
        };
        for (g, h) in checks {
            let gh = dom
                .compose(g, h)
                .ok_or_else(|| GroupoidError::Invalid(format!("domain lacks {g} ∘ {h}")))?;
            if cod.compose(self.arrows[g], self.arrows[h]) != Some(self.arrows[gh]) {
                return fail(format!("composite {g} ∘ {h} is not preserved"));
            }
        }
        Ok(route)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
pub struct EquivalenceVerdict {
    pub essentially_surjective: bool,
    pub fully_faithful: bool,
    pub equivalence: bool,
}

/// Essential surjectivity plus full faithfulness of a valid functor.
///
/// Full faithfulness is tested orbit-wise: each isotropy map must be a
/// bijection and distinct orbits must land in distinct orbits. Hom-sets
/// inside an orbit are torsors over isotropy, so this is equivalent to
/// bijectivity on every hom-set.
pub fn essential_equivalence_check(
    f: &GroupoidFunctor,
    dom: &FiniteGroupoid,
    cod: &FiniteGroupoid,
) -> EquivalenceVerdict {
    let dom_ids = dom.orbit_ids();
    let cod_ids = cod.orbit_ids();
    let cod_orbits = cod_ids.iter().copied().max().map_or(0, |m| m + 1);
    let mut hit = vec![false; cod_orbits];
    for &y in &f.objects {
        hit[cod_ids[y]] = true;
    }
    let essentially_surjective = hit.iter().all(|&h| h);

    let mut fully_faithful = true;
    // orbit map must be injective
    let mut image_of: FxHashMap<usize, usize> = FxHashMap::default();
    for (x, &ox) in dom_ids.iter().enumerate() {
        let oy = cod_ids[f.objects[x]];
        match image_of.get(&oy) {
            Some(&prev) if prev != ox => {
                fully_faithful = false;
                break;
            }
            _ => {
                image_of.insert(oy, ox);
            }
        }
    }
    if fully_faithful {
        for orbit in dom.orbits() {
            let x = orbit[0];
            let iso = dom.isotropy(x);
            let target = cod.isotropy(f.objects[x]);
            let id = cod.identity(f.objects[x]);
            let kernel = iso.iter().filter(|&&a| f.arrows[a] == id).count();
            if kernel != 1 || iso.len() != target.len() {
                fully_faithful = false;
                break;
            }
        }
    }
    EquivalenceVerdict {
        essentially_surjective,
        fully_faithful,
        equivalence: essentially_surjective && fully_faithful,
    }
}

/// Literal version: bijectivity on `hom(x, y)` for every pair of objects.
pub fn essential_equivalence_exhaustive(
    f: &GroupoidFunctor,
    dom: &FiniteGroupoid,
    cod: &FiniteGroupoid,
) -> EquivalenceVerdict {
    let cod_ids = cod.orbit_ids();
    let essentially_surjective = (0..cod.object_count()).all(|y| f.objects.iter().any(|&fx| cod_ids[fx] == cod_ids[y]));
    let mut fully_faithful = true;
    'outer: for x in 0..dom.object_count() {
        for y in 0..dom.object_count() {
            let h = dom.hom(x, y);
            let target = cod.hom(f.objects[x], f.objects[y]);
            let mut images: Vec<usize> = h.iter().map(|&a| f.arrows[a]).collect();
            images.sort_unstable();
            images.dedup();
            if images.len() != h.len() || images.len() != target.len() {
                fully_faithful = false;
                break 'outer;
            }
        }
    }
    EquivalenceVerdict {
        essentially_surjective,
        fully_faithful,
        equivalence: essentially_surjective && fully_faithful,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z2() -> AbelianModel {
        AbelianModel::single(&[2]).unwrap()
    }

    #[test]
    fn abelian_groupoid_counts() {
        let g = abelian_groupoid(&z2());
        assert_eq!((g.object_count(), g.arrow_count()), (1, 2));
        let pq = AbelianModel::new(vec!["p".into(), "q".into()], vec![vec![2], vec![3]]).unwrap();
        let g = abelian_groupoid(&pq);
        assert_eq!((g.object_count(), g.arrow_count()), (2, 5));
        let t = abelian_groupoid(&AbelianModel::single(&[]).unwrap());
        assert_eq!((t.object_count(), t.arrow_count()), (1, 1));
        g.validate(DEFAULT_CHECK_BUDGET).unwrap();
    }

    #[test]
    fn products() {
        let g = abelian_groupoid(&z2());
        let p = g.product(&g, DEFAULT_ARROW_BUDGET).unwrap();
        assert_eq!((p.object_count(), p.arrow_count()), (1, 4));
        p.validate(DEFAULT_CHECK_BUDGET).unwrap();
        let e = FiniteGroupoid::product_all(&[], DEFAULT_ARROW_BUDGET).unwrap();
        assert_eq!((e.object_count(), e.arrow_count()), (1, 1));
    }

    #[test]
    fn powers_agree_with_products() {
        let m = AbelianModel::from_lists(&[&[2], &[3]]).unwrap();
        let a1 = FiniteGroupoid::power(&m, 1, DEFAULT_ARROW_BUDGET).unwrap();
        let a2 = FiniteGroupoid::power(&m, 2, DEFAULT_ARROW_BUDGET).unwrap();
        let a3 = FiniteGroupoid::power(&m, 3, DEFAULT_ARROW_BUDGET).unwrap();
        assert_eq!(a1.product(&a1, DEFAULT_ARROW_BUDGET).unwrap(), a2);
        assert_eq!(a2.product(&a1, DEFAULT_ARROW_BUDGET).unwrap(), a3);
        assert_eq!(a1.product(&a2, DEFAULT_ARROW_BUDGET).unwrap(), a3);
        let a0 = FiniteGroupoid::power(&m, 0, DEFAULT_ARROW_BUDGET).unwrap();
        assert_eq!(a0, FiniteGroupoid::point());
        assert_eq!(a2.objects()[1], "(p0,p1)");
    }

    #[test]
    fn cardinality_examples() {
        let k = FiniteGroupoid::discrete(vec!["a".into(), "b".into(), "c".into()]);
        assert_eq!(k.cardinality(), BigRational::from_integer(3.into()));
        let g = abelian_groupoid(&z2());
        assert_eq!(g.cardinality(), BigRational::new(1.into(), 2.into()));
        let m = AbelianModel::from_lists(&[&[], &[2]]).unwrap();
        assert_eq!(abelian_groupoid(&m).cardinality(), BigRational::new(3.into(), 2.into()));
    }

    /// Two objects joined by a single pair of inverse arrows.
    fn connected_pair() -> FiniteGroupoid {
        // arrows: 0 = id_a, 1 = id_b, 2 = a->b, 3 = b->a
        let mut table = FxHashMap::default();
        table.insert((0, 0), 0);
        table.insert((1, 1), 1);
        table.insert((2, 0), 2);
        table.insert((1, 2), 2);
        table.insert((3, 1), 3);
        table.insert((0, 3), 3);
        table.insert((3, 2), 0);
        table.insert((2, 3), 1);
        FiniteGroupoid::from_table(
            vec!["a".into(), "b".into()],
            vec![(0, 0), (1, 1), (0, 1), (1, 0)],
            vec![0, 1],
            vec![0, 1, 3, 2],
            table,
        )
        .unwrap()
    }

    #[test]
    fn table_groupoid_validates() {
        let g = connected_pair();
        let v = g.validate(DEFAULT_CHECK_BUDGET).unwrap();
        assert_eq!(v.associativity, AssociativityRoute::Exhaustive);
        assert_eq!(g.orbits(), vec![vec![0, 1]]);
        assert_eq!(g.cardinality(), BigRational::from_integer(1.into()));
    }

    #[test]
    fn broken_table_is_rejected() {
        let mut table = FxHashMap::default();
        table.insert((0, 0), 0);
        table.insert((1, 1), 1);
        // missing composites of the non-identity arrow
        let g = FiniteGroupoid::from_table(vec!["a".into()], vec![(0, 0), (0, 0)], vec![0], vec![0, 1], table).unwrap();
        assert!(g.validate(DEFAULT_CHECK_BUDGET).is_err());
    }

    #[test]
    fn identity_functor_is_an_equivalence() {
        let g = abelian_groupoid(&AbelianModel::from_lists(&[&[2], &[3]]).unwrap());
        let f = GroupoidFunctor::identity(&g);
        f.validate(&g, &g, DEFAULT_CHECK_BUDGET).unwrap();
        assert!(essential_equivalence_check(&f, &g, &g).equivalence);
        assert!(essential_equivalence_exhaustive(&f, &g, &g).equivalence);
    }

    #[test]
    fn inclusion_of_a_point_into_a_connected_pair() {
        let pt = FiniteGroupoid::point();
        let g = connected_pair();
        let f = GroupoidFunctor {
            objects: vec![0],
            arrows: vec![0],
        };
        f.validate(&pt, &g, DEFAULT_CHECK_BUDGET).unwrap();
        let v = essential_equivalence_check(&f, &pt, &g);
        assert!(v.essentially_surjective && v.fully_faithful);
        assert_eq!(v, essential_equivalence_exhaustive(&f, &pt, &g));
    }

    #[test]
    fn collapsing_isotropy_is_not_an_equivalence() {
        let g = abelian_groupoid(&z2());
        let pt = FiniteGroupoid::point();
        let f = GroupoidFunctor {
            objects: vec![0],
            arrows: vec![0, 0],
        };
        f.validate(&g, &pt, DEFAULT_CHECK_BUDGET).unwrap();
        let v = essential_equivalence_check(&f, &g, &pt);
        assert!(v.essentially_surjective);
        assert!(!v.fully_faithful);
        assert_eq!(v, essential_equivalence_exhaustive(&f, &g, &pt));
    }

    #[test]
    fn non_functor_is_rejected() {
        let g = abelian_groupoid(&AbelianModel::single(&[3]).unwrap());
        // a -> 2a is fine, a -> 1 for every nonzero a is not
        let bad = GroupoidFunctor {
            objects: vec![0],
            arrows: vec![0, 1, 1],
        };
        assert!(bad.validate(&g, &g, DEFAULT_CHECK_BUDGET).is_err());
        let good = GroupoidFunctor {
            objects: vec![0],
            arrows: vec![0, 2, 1],
        };
        assert_eq!(
            good.validate(&g, &g, DEFAULT_CHECK_BUDGET).unwrap(),
            FunctorRoute::Exhaustive
        );
        assert_eq!(good.validate(&g, &g, 0).unwrap(), FunctorRoute::Generators);
        assert!(bad.validate(&g, &g, 0).is_err());
    }

    #[test]
    fn generating_set_generates() {
        let g = FiniteGroupoid::power(&AbelianModel::single(&[2, 4]).unwrap(), 2, 1 << 20).unwrap();
        let gens = g.generating_set();
        assert!(gens.len() < g.arrow_count());
        let mut reached: FxHashSet<usize> = FxHashSet::from_iter([g.identity(0)]);
        let mut frontier = vec![g.identity(0)];
        while let Some(e) = frontier.pop() {
            for &s in &gens {
                if let Some(p) = g.compose(s, e) {
                    if reached.insert(p) {
                        frontier.push(p);
                    }
                }
            }
        }
        assert_eq!(reached.len(), g.arrow_count());
    }

    #[test]
    fn element_orders() {
        let g = abelian_groupoid(&AbelianModel::single(&[4]).unwrap());
        let orders: Vec<u64> = (0..4).map(|a| g.arrow_order(a).unwrap()).collect();
        assert_eq!(orders, vec![1, 4, 2, 4]);
    }
}
