//! Skeletal spans over powers of one abelian model.
//!
//! Every orbit of an apex is replaced by its isotropy group, a product of
//! cyclic groups, together with the two leg homomorphisms as integer
//! matrices. Over a boundary with source = target the homotopy fibre
//! product of two such orbits is again a disjoint union of copies of one
//! group: with `delta(k1, k2) = phi2(k2) - rho1(k1)` into the middle group
//! `G_b`, there are `[G_b : im delta]` orbits, each with isotropy
//! `ker delta` and legs `lambda1 . pr1`, `rho2 . pr2`.

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use rustc_hash::FxHashMap;

use super::model::AbelianModel;
use super::span::{OrbitRecord, SpanFingerprint};
use super::zlattice::{image_index, image_lattice, invariant_factors, kernel, render, to_big};
use super::GroupoidError;

/// One orbit type: isotropy `⊕ Z/iso[i]`, legs as rows per generator.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SkeletalOrbit {
    pub left: Vec<usize>,
    pub right: Vec<usize>,
    pub iso: Vec<u64>,
    /// Row `i` is the image of generator `i` in the left boundary coordinates.
    pub left_leg: Vec<Vec<i64>>,
    pub right_leg: Vec<Vec<i64>>,
}

/// Span from `A^m` to `A^n` as a multiset of orbit types.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AbelianSpan {
    pub model: AbelianModel,
    pub m: usize,
    pub n: usize,
    pub orbits: Vec<(SkeletalOrbit, BigUint)>,
}

fn reduce(v: &mut [i64], moduli: &[u64]) {
    for (x, &q) in v.iter_mut().zip(moduli) {
        *x = x.rem_euclid(q as i64);
    }
}

fn unit_rows(moduli: &[u64]) -> Vec<Vec<i64>> {
    let r = moduli.len();
    (0..r)
        .map(|i| {
            let mut v = vec![0; r];
            v[i] = 1 % moduli[i] as i64;
            v
        })
        .collect()
}

/// Combine image rows `c . rows` reduced modulo `moduli`.
fn combine(c: &[i64], rows: &[Vec<i64>], width: usize, moduli: &[u64]) -> Vec<i64> {
    let mut out = vec![0i64; width];
    for (k, row) in c.iter().zip(rows) {
        if *k == 0 {
            continue;
        }
        for (o, x) in out.iter_mut().zip(row) {
            *o += k * x;
        }
    }
    reduce(&mut out, moduli);
    out
}

impl AbelianSpan {
    fn from_orbits(model: &AbelianModel, m: usize, n: usize, orbits: Vec<(SkeletalOrbit, BigUint)>) -> Self {
        let mut map: FxHashMap<SkeletalOrbit, BigUint> = FxHashMap::default();
        for (o, k) in orbits {
            *map.entry(o).or_default() += k;
        }
        let mut orbits: Vec<(SkeletalOrbit, BigUint)> = map.into_iter().collect();
        orbits.sort();
        AbelianSpan {
            model: model.clone(),
            m,
            n,
            orbits,
        }
    }

    fn single(model: &AbelianModel, m: usize, n: usize, orbits: Vec<SkeletalOrbit>) -> Self {
        Self::from_orbits(
            model,
            m,
            n,
            orbits.into_iter().map(|o| (o, BigUint::from(1u8))).collect(),
        )
    }

    /// `A <- A -> A`.
    pub fn identity1(model: &AbelianModel) -> Self {
        let orbits = (0..model.len())
            .map(|p| {
                let md = model.moduli(p).to_vec();
                SkeletalOrbit {
                    left: vec![p],
                    right: vec![p],
                    left_leg: unit_rows(&md),
                    right_leg: unit_rows(&md),
                    iso: md,
                }
            })
            .collect();
        Self::single(model, 1, 1, orbits)
    }

    /// `⋆ <- ⋆ -> ⋆`.
    pub fn unit(model: &AbelianModel) -> Self {
        Self::single(
            model,
            0,
            0,
            vec![SkeletalOrbit {
                left: vec![],
                right: vec![],
                iso: vec![],
                left_leg: vec![],
                right_leg: vec![],
            }],
        )
    }

    /// Identity on `A^n`.
    pub fn identity(model: &AbelianModel, n: usize) -> Self {
        let mut acc = Self::unit(model);
        for _ in 0..n {
            acc = acc.product(&Self::identity1(model));
        }
        acc
    }

    /// Trivial apex on the base with the diagonal leg to `A` (unit disc).
    pub fn eta(model: &AbelianModel) -> Self {
        let orbits = (0..model.len())
            .map(|p| SkeletalOrbit {
                left: vec![],
                right: vec![p],
                iso: vec![],
                left_leg: vec![],
                right_leg: vec![],
            })
            .collect();
        Self::single(model, 0, 1, orbits)
    }

    /// Pairs of arrows over each point; left leg the inclusion, right leg the sum.
    pub fn mu(model: &AbelianModel) -> Self {
        let orbits = (0..model.len())
            .map(|p| {
                let md = model.moduli(p);
                let r = md.len();
                let mut iso = md.to_vec();
                iso.extend(md);
                let left_leg = unit_rows(&iso);
                let right_leg = (0..2 * r)
                    .map(|i| {
                        let mut v = vec![0; r];
                        v[i % r] = 1 % md[i % r] as i64;
                        v
                    })
                    .collect();
                SkeletalOrbit {
                    left: vec![p, p],
                    right: vec![p],
                    iso,
                    left_leg,
                    right_leg,
                }
            })
            .collect();
        Self::single(model, 2, 1, orbits)
    }

    /// Swaps the roles of the two legs.
    pub fn mirror(&self) -> Self {
        let orbits = self
            .orbits
            .iter()
            .map(|(o, k)| {
                (
                    SkeletalOrbit {
                        left: o.right.clone(),
                        right: o.left.clone(),
                        iso: o.iso.clone(),
                        left_leg: o.right_leg.clone(),
                        right_leg: o.left_leg.clone(),
                    },
                    k.clone(),
                )
            })
            .collect();
        Self::from_orbits(&self.model, self.n, self.m, orbits)
    }

    pub fn delta(model: &AbelianModel) -> Self {
        Self::mu(model).mirror()
    }

    pub fn eps(model: &AbelianModel) -> Self {
        Self::eta(model).mirror()
    }

    /// `A x A` with crossed right leg.
    pub fn tau(model: &AbelianModel) -> Self {
        let mut orbits = Vec::new();
        for p in 0..model.len() {
            for q in 0..model.len() {
                let (mp, mq) = (model.moduli(p), model.moduli(q));
                let (rp, rq) = (mp.len(), mq.len());
                let mut iso = mp.to_vec();
                iso.extend(mq);
                let left_leg = unit_rows(&iso);
                // generator i of A_p goes to slot rq + i; generator j of A_q to slot j
                let right_leg = (0..rp + rq)
                    .map(|i| {
                        let mut v = vec![0; rp + rq];
                        if i < rp {
                            v[rq + i] = 1 % mp[i] as i64;
                        } else {
                            v[i - rp] = 1 % mq[i - rp] as i64;
                        }
                        v
                    })
                    .collect();
                orbits.push(SkeletalOrbit {
                    left: vec![p, q],
                    right: vec![q, p],
                    iso,
                    left_leg,
                    right_leg,
                });
            }
        }
        Self::single(model, 2, 2, orbits)
    }

    /// Genus-0 span `A^{m,n}`: tuples with equal sums.
    pub fn genus0(model: &AbelianModel, m: usize, n: usize) -> Result<Self, GroupoidError> {
        if m + n == 0 {
            return Err(GroupoidError::Invalid("genus-0 span needs (m, n) != (0, 0)".into()));
        }
        let mut orbits = Vec::new();
        for p in 0..model.len() {
            let md = model.moduli(p);
            let r = md.len();
            let mut full = Vec::new();
            for _ in 0..m + n {
                full.extend(md);
            }
            // (a, b) -> sum a - sum b in A_p
            let images: Vec<Vec<i64>> = (0..(m + n) * r)
                .map(|i| {
                    let mut v = vec![0i64; r];
                    v[i % r] = if i < m * r { 1 } else { -1 };
                    v
                })
                .collect();
            let k = kernel(&full, &to_big(&images), md);
            let left_moduli = model.tuple_moduli(&vec![p; m]);
            let right_moduli = model.tuple_moduli(&vec![p; n]);
            let mut left_leg = Vec::new();
            let mut right_leg = Vec::new();
            for g in &k.generators {
                let mut l = g[..m * r].to_vec();
                let mut rt = g[m * r..].to_vec();
                reduce(&mut l, &left_moduli);
                reduce(&mut rt, &right_moduli);
                left_leg.push(l);
                right_leg.push(rt);
            }
            orbits.push(SkeletalOrbit {
                left: vec![p; m],
                right: vec![p; n],
                iso: k.orders,
                left_leg,
                right_leg,
            });
        }
        Ok(Self::single(model, m, n, orbits))
    }

    /// Componentwise product; boundary tuples and coordinates concatenate.
    pub fn product(&self, other: &AbelianSpan) -> Self {
        let mut orbits = Vec::with_capacity(self.orbits.len() * other.orbits.len());
        for (o1, k1) in &self.orbits {
            for (o2, k2) in &other.orbits {
                let (wl1, wl2) = (
                    self.model.tuple_moduli(&o1.left).len(),
                    self.model.tuple_moduli(&o2.left).len(),
                );
                let (wr1, wr2) = (
                    self.model.tuple_moduli(&o1.right).len(),
                    self.model.tuple_moduli(&o2.right).len(),
                );
                let pad = |rows: &[Vec<i64>], before: usize, after: usize| -> Vec<Vec<i64>> {
                    rows.iter()
                        .map(|r| {
                            let mut v = vec![0; before];
                            v.extend(r);
                            v.extend(std::iter::repeat_n(0, after));
                            v
                        })
                        .collect()
                };
                let mut left_leg = pad(&o1.left_leg, 0, wl2);
                left_leg.extend(pad(&o2.left_leg, wl1, 0));
                let mut right_leg = pad(&o1.right_leg, 0, wr2);
                right_leg.extend(pad(&o2.right_leg, wr1, 0));
                let mut iso = o1.iso.clone();
                iso.extend(&o2.iso);
                let mut left = o1.left.clone();
                left.extend(&o2.left);
                let mut right = o1.right.clone();
                right.extend(&o2.right);
                orbits.push((
                    SkeletalOrbit {
                        left,
                        right,
                        iso,
                        left_leg,
                        right_leg,
                    },
                    k1 * k2,
                ));
            }
        }
        Self::from_orbits(&self.model, self.m + other.m, self.n + other.n, orbits)
    }

    /// Homotopy fibre product: `self` first, then `next`.
    pub fn then(&self, next: &AbelianSpan) -> Result<Self, GroupoidError> {
        self.compose(next, false).map(|(s, _)| s)
    }

    /// Strict fibre product: only the orbit over the identity survives from
    /// each matching pair.
    pub fn then_strong(&self, next: &AbelianSpan) -> Result<Self, GroupoidError> {
        self.compose(next, true).map(|(s, _)| s)
    }

    /// `[G_b : im delta]` for every matching orbit pair, in a fixed order.
    /// The strict-to-homotopy comparison is essentially surjective exactly
    /// when all of these are 1; it is always fully faithful.
    pub fn comparison_indices(&self, next: &AbelianSpan) -> Result<Vec<BigInt>, GroupoidError> {
        self.compose(next, false).map(|(_, idx)| idx)
    }

    fn compose(&self, next: &AbelianSpan, strong: bool) -> Result<(Self, Vec<BigInt>), GroupoidError> {
        if self.n != next.m || self.model != next.model {
            return Err(GroupoidError::BoundaryMismatch(format!(
                "span ends at A^{} but the next starts at A^{}",
                self.n, next.m
            )));
        }
        let mut by_left: FxHashMap<&[usize], Vec<usize>> = FxHashMap::default();
        for (i, (o, _)) in next.orbits.iter().enumerate() {
            by_left.entry(o.left.as_slice()).or_default().push(i);
        }
        let mut out = Vec::new();
        let mut indices = Vec::new();
        for (o1, k1) in &self.orbits {
            let Some(partners) = by_left.get(o1.right.as_slice()) else {
                continue;
            };
            let mid = self.model.tuple_moduli(&o1.right);
            let lm = self.model.tuple_moduli(&o1.left);
            for &j in partners {
                let (o2, k2) = &next.orbits[j];
                let rm = self.model.tuple_moduli(&o2.right);
                let (r1, r2) = (o1.iso.len(), o2.iso.len());
                // delta = [-rho1 ; phi2]
                let mut images: Vec<Vec<i64>> = o1.right_leg.iter().map(|r| r.iter().map(|x| -x).collect()).collect();
                images.extend(o2.left_leg.iter().cloned());
                let big = to_big(&images);
                let index = image_index(&big, &mid);
                let mut orders = o1.iso.clone();
                orders.extend(&o2.iso);
                let ker = kernel(&orders, &big, &mid);
                let mut left_leg = Vec::with_capacity(ker.orders.len());
                let mut right_leg = Vec::with_capacity(ker.orders.len());
                for g in &ker.generators {
                    left_leg.push(combine(&g[..r1], &o1.left_leg, lm.len(), &lm));
                    right_leg.push(combine(&g[r1..r1 + r2], &o2.right_leg, rm.len(), &rm));
                }
                let copies = if strong {
                    BigUint::from(1u8)
                } else {
                    index.to_biguint().expect("index is positive")
                };
                indices.push(index);
                out.push((
                    SkeletalOrbit {
                        left: o1.left.clone(),
                        right: o2.right.clone(),
                        iso: ker.orders,
                        left_leg,
                        right_leg,
                    },
                    k1 * k2 * copies,
                ));
            }
        }
        Ok((Self::from_orbits(&self.model, self.m, next.n, out), indices))
    }

    /// Leg rows have the right widths and respect the cyclic orders.
    pub fn validate(&self) -> Result<(), GroupoidError> {
        for (o, _) in &self.orbits {
            let lm = self.model.tuple_moduli(&o.left);
            let rm = self.model.tuple_moduli(&o.right);
            if o.left.len() != self.m || o.right.len() != self.n {
                return Err(GroupoidError::Invalid(
                    "orbit boundary tuple has the wrong length".into(),
                ));
            }
            if o.left_leg.len() != o.iso.len() || o.right_leg.len() != o.iso.len() {
                return Err(GroupoidError::Invalid("one leg row per isotropy generator".into()));
            }
            for (i, &ord) in o.iso.iter().enumerate() {
                for (row, md) in [(&o.left_leg[i], &lm), (&o.right_leg[i], &rm)] {
                    if row.len() != md.len() {
                        return Err(GroupoidError::Invalid("leg row has the wrong width".into()));
                    }
                    if row
                        .iter()
                        .zip(md.iter())
                        .any(|(&x, &q)| (x * ord as i64).rem_euclid(q as i64) != 0)
                    {
                        return Err(GroupoidError::Invalid(format!(
                            "generator of order {ord} is not sent to an element of dividing order"
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    /// Groupoid cardinality of the apex.
    pub fn cardinality(&self) -> BigRational {
        let mut total = BigRational::zero();
        for (o, k) in &self.orbits {
            let order: BigInt = o.iso.iter().map(|&x| BigInt::from(x)).product();
            total += BigRational::new(BigInt::from(k.clone()), order);
        }
        total
    }

    /// Same record format as the explicit fingerprint.
    pub fn fingerprint(&self) -> SpanFingerprint {
        let items = self.orbits.iter().map(|(o, k)| (self.record(o), k.clone()));
        SpanFingerprint::from_records(items)
    }

    fn record(&self, o: &SkeletalOrbit) -> OrbitRecord {
        let mut moduli = self.model.tuple_moduli(&o.left);
        moduli.extend(self.model.tuple_moduli(&o.right));
        let rows: Vec<Vec<i64>> = o
            .left_leg
            .iter()
            .zip(&o.right_leg)
            .map(|(l, r)| l.iter().chain(r).copied().collect())
            .collect();
        let big = to_big(&rows);
        OrbitRecord {
            left: self.model.tuple_label(&o.left),
            right: self.model.tuple_label(&o.right),
            isotropy: invariant_factors(&o.iso),
            kernel: kernel(&o.iso, &big, &moduli).orders,
            image: render(&image_lattice(&big, &moduli)),
        }
    }

    /// Largest isotropy order over all orbits.
    pub fn max_isotropy(&self) -> u128 {
        self.orbits
            .iter()
            .map(|(o, _)| o.iso.iter().map(|&x| x as u128).product::<u128>())
            .max()
            .unwrap_or(1)
    }

    /// True when every orbit has trivial isotropy.
    pub fn is_discrete(&self) -> bool {
        self.orbits.iter().all(|(o, _)| o.iso.is_empty())
    }

    /// Number of orbits, saturating.
    pub fn orbit_count(&self) -> u64 {
        self.orbits
            .iter()
            .map(|(_, k)| k.to_u64().unwrap_or(u64::MAX))
            .fold(0u64, |a, b| a.saturating_add(b))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z2() -> AbelianModel {
        AbelianModel::single(&[2]).unwrap()
    }

    #[test]
    fn sewing_in_a_disc() {
        let m = z2();
        let lhs = AbelianSpan::eta(&m)
            .product(&AbelianSpan::identity1(&m))
            .then(&AbelianSpan::mu(&m))
            .unwrap();
        assert_eq!(lhs.fingerprint(), AbelianSpan::identity1(&m).fingerprint());
        lhs.validate().unwrap();
    }

    #[test]
    fn sphere_has_two_orbits() {
        let m = z2();
        let s = AbelianSpan::eta(&m).then(&AbelianSpan::eps(&m)).unwrap();
        assert_eq!(s.orbit_count(), 2);
        assert!(s.is_discrete());
        assert_eq!(s.cardinality(), BigRational::from_integer(2.into()));
    }

    #[test]
    fn genus0_one_one_is_identity() {
        let m = AbelianModel::from_lists(&[&[2, 2], &[3]]).unwrap();
        assert_eq!(
            AbelianSpan::genus0(&m, 1, 1).unwrap().fingerprint(),
            AbelianSpan::identity1(&m).fingerprint()
        );
        assert!(AbelianSpan::genus0(&m, 0, 0).is_err());
    }

    #[test]
    fn mu_is_genus0_two_one() {
        let m = AbelianModel::from_lists(&[&[4], &[2, 3]]).unwrap();
        assert_eq!(
            AbelianSpan::mu(&m).fingerprint(),
            AbelianSpan::genus0(&m, 2, 1).unwrap().fingerprint()
        );
    }

    #[test]
    fn tau_differs_from_identity() {
        let m = z2();
        assert_ne!(
            AbelianSpan::tau(&m).fingerprint(),
            AbelianSpan::identity(&m, 2).fingerprint()
        );
        let tt = AbelianSpan::tau(&m).then(&AbelianSpan::tau(&m)).unwrap();
        assert_eq!(tt.fingerprint(), AbelianSpan::identity(&m, 2).fingerprint());
    }

    #[test]
    fn generators_validate() {
        let m = AbelianModel::from_lists(&[&[2, 4], &[3]]).unwrap();
        for s in [
            AbelianSpan::eta(&m),
            AbelianSpan::mu(&m),
            AbelianSpan::delta(&m),
            AbelianSpan::eps(&m),
            AbelianSpan::tau(&m),
            AbelianSpan::identity(&m, 2),
            AbelianSpan::genus0(&m, 2, 2).unwrap(),
        ] {
            s.validate().unwrap();
        }
    }
}
