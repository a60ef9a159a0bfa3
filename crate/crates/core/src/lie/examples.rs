//! The two non-reductive examples: `SL2 ⋉ C^2` and the centralizer of
//! `E13` in `SL3`. Closed-form coadjoint formulas are checked against
//! structure constants and matrix conjugation.

use num_traits::{One, Zero};

use super::algebra::{centralizer_report, make_algebra, Family, LieAlgebra};
use super::qmat::{dot, format_vec, is_zero_vec, q, qf, span_rank, QMatrix, Q};
use super::report::{CheckReport, NamedCheck, Sampler};
use super::LieError;

/// Element `(g, u)` of `SL2 ⋉ C^2`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SemidirectElement {
    pub g: QMatrix,
    pub u: Vec<Q>,
}

impl SemidirectElement {
    pub fn new(g: QMatrix, u: Vec<Q>) -> Result<Self, LieError> {
        if g.rows != 2 || g.cols != 2 || u.len() != 2 {
            return Err(LieError::InvalidInput("need a 2x2 matrix and a 2-vector".into()));
        }
        if g.determinant() != Q::one() {
            return Err(LieError::InvalidInput("determinant is not 1".into()));
        }
        Ok(SemidirectElement { g, u })
    }

    /// `(g1, v1)(g2, v2) = (g1 g2, v1 + g1 v2)`.
    pub fn mul(&self, other: &Self) -> Self {
        let gv = self.g.mul_vec(&other.u);
        SemidirectElement {
            g: self.g.mul(&other.g),
            u: self.u.iter().zip(&gv).map(|(a, b)| a + b).collect(),
        }
    }

    /// `[[g, u], [0, 1]]`.
    pub fn matrix(&self) -> QMatrix {
        let mut m = QMatrix::identity(3);
        for i in 0..2 {
            for j in 0..2 {
                m[(i, j)] = self.g[(i, j)].clone();
            }
            m[(i, 2)] = self.u[i].clone();
        }
        m
    }

    /// `((1 a; 0 1), (a^2 z, 2 a z))`.
    pub fn unipotent_family(a: &Q, z: &Q) -> Self {
        let g = QMatrix::from_rows(vec![vec![Q::one(), a.clone()], vec![Q::zero(), Q::one()]]);
        SemidirectElement {
            g,
            u: vec![a * a * z, q(2) * a * z],
        }
    }
}

/// Element `(r, a, b, c)` of the centralizer group, `r != 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CentralizerElement {
    pub r: Q,
    pub a: Q,
    pub b: Q,
    pub c: Q,
}

impl CentralizerElement {
    pub fn new(r: Q, a: Q, b: Q, c: Q) -> Result<Self, LieError> {
        if r.is_zero() {
            return Err(LieError::InvalidInput("r must be nonzero".into()));
        }
        Ok(CentralizerElement { r, a, b, c })
    }

    /// `[[r, a, c], [0, r^-2, b], [0, 0, r]]`.
    pub fn matrix(&self) -> QMatrix {
        let mut m = QMatrix::zeros(3, 3);
        m[(0, 0)] = self.r.clone();
        m[(0, 1)] = self.a.clone();
        m[(0, 2)] = self.c.clone();
        m[(1, 1)] = (&self.r * &self.r).recip();
        m[(1, 2)] = self.b.clone();
        m[(2, 2)] = self.r.clone();
        m
    }

    /// Group law read off from the matrix product.
    pub fn mul(&self, o: &Self) -> Self {
        let r2inv2 = (&o.r * &o.r).recip();
        let r1inv2 = (&self.r * &self.r).recip();
        CentralizerElement {
            r: &self.r * &o.r,
            a: &self.r * &o.a + &self.a * &r2inv2,
            b: &r1inv2 * &o.b + &self.b * &o.r,
            c: &self.r * &o.c + &self.a * &o.b + &self.c * &o.r,
        }
    }
}

/// `Ad_M` on algebra coordinates for an invertible matrix normalising the algebra.
pub fn adjoint_matrix(alg: &LieAlgebra, m: &QMatrix) -> Result<QMatrix, LieError> {
    let inv = m
        .inverse()
        .ok_or_else(|| LieError::InvalidInput("group element is singular".into()))?;
    let cols = alg
        .basis
        .iter()
        .map(|b| alg.coords(&m.mul(b).mul(&inv)))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(QMatrix::from_columns(&cols, alg.dim()))
}

/// `Ad*_M = (Ad_{M^-1})^T`, so that `<Ad*_M xi, y> = <xi, Ad_{M^-1} y>`.
pub fn coadjoint_group_matrix(alg: &LieAlgebra, m: &QMatrix) -> Result<QMatrix, LieError> {
    let inv = m
        .inverse()
        .ok_or_else(|| LieError::InvalidInput("group element is singular".into()))?;
    Ok(adjoint_matrix(alg, &inv)?.transpose())
}

/// Matrix coordinates `(xi1, xi2, xi3, eta1, eta2)` to basis-dual coordinates.
pub fn semidirect_to_dual(p: &[Q]) -> Vec<Q> {
    vec![q(2) * &p[0], p[2].clone(), p[1].clone(), -p[4].clone(), p[3].clone()]
}

pub fn semidirect_from_dual(c: &[Q]) -> Vec<Q> {
    vec![
        &c[0] * qf(1, 2),
        c[2].clone(),
        c[1].clone(),
        c[4].clone(),
        -c[3].clone(),
    ]
}

/// Closed form of `ad*_{(x,u)}(xi, eta)`: four matrix entries, then `eta'`.
pub fn semidirect_coad_formula(x: &[Q], u: &[Q], xi: &[Q], eta: &[Q]) -> Vec<Q> {
    let h = qf(1, 2);
    let (x1, x2, x3) = (&x[0], &x[1], &x[2]);
    let (u1, u2) = (&u[0], &u[1]);
    let (k1, k2, k3) = (&xi[0], &xi[1], &xi[2]);
    let (e1, e2) = (&eta[0], &eta[1]);
    let mix = &h * (e1 * u2 + e2 * u1);
    vec![
        (x2 * k3 - x3 * k2) - &mix,
        q(2) * (x1 * k2 - x2 * k1) + e1 * u1,
        q(2) * (x3 * k1 - x1 * k3) - e2 * u2,
        (x3 * k2 - x2 * k3) + &mix,
        x1 * e1 + x2 * e2,
        x3 * e1 - x1 * e2,
    ]
}

/// Closed form of `Ad*_{(g,u)}(xi, (1,0))` for `g = (1 a; 0 1)`.
pub fn semidirect_unipotent_formula(a: &Q, u: &[Q], xi: &[Q]) -> Vec<Q> {
    let h = qf(1, 2);
    let (k1, k2, k3) = (&xi[0], &xi[1], &xi[2]);
    let (u1, u2) = (&u[0], &u[1]);
    vec![
        k1 + a * k3 - &h * u2,
        -(q(2) * a * k1) + k2 - a * a * k3 + u1,
        k3.clone(),
        -k1.clone() - a * k3 + &h * u2,
        Q::one(),
        Q::zero(),
    ]
}

/// Closed form of `Ad*_g(s, u, v, w)` for `g = (r, a, b, c)`.
pub fn centralizer_coad_formula(g: &CentralizerElement, p: &[Q]) -> Vec<Q> {
    let (r, a, b) = (&g.r, &g.a, &g.b);
    let (s, u, v, w) = (&p[0], &p[1], &p[2], &p[3]);
    let r2 = r * r;
    let r3 = &r2 * r;
    vec![
        s + q(3) * (a / r * u - b * &r2 * v + a * b * r * w),
        u / &r3 + w * b / r,
        v * &r3 - w * a * &r2,
        w.clone(),
    ]
}

/// Pair `(xi, eta)` as matrix entries plus `eta`.
fn semidirect_entries(p: &[Q]) -> Vec<Q> {
    vec![
        p[0].clone(),
        p[1].clone(),
        p[2].clone(),
        -p[0].clone(),
        p[3].clone(),
        p[4].clone(),
    ]
}

/// `sigma(z) = ((0 0; z 0), (1, 0))` in matrix coordinates.
pub fn sigma(z: &Q) -> Vec<Q> {
    vec![Q::zero(), Q::zero(), z.clone(), Q::one(), Q::zero()]
}

pub fn sigma1(v: &Q, w: &Q) -> Vec<Q> {
    vec![Q::zero(), Q::one(), v.clone(), w.clone()]
}

pub fn sigma2(u: &Q, w: &Q) -> Vec<Q> {
    vec![Q::zero(), u.clone(), Q::one(), w.clone()]
}

/// Stabilizer of `sigma1(v, w)` for `w != 0`, parametrised by `r != 0` and `c`.
pub fn sigma1_stabilizer(v: &Q, w: &Q, r: &Q, c: &Q) -> CentralizerElement {
    let t = r - (r * r).recip();
    CentralizerElement {
        r: r.clone(),
        a: v / w * &t,
        b: &t / w,
        c: c.clone(),
    }
}

/// Stabilizer of `sigma2(u, w)` for `w != 0`: the mirror of `sigma1`.
pub fn sigma2_stabilizer(u: &Q, w: &Q, r: &Q, c: &Q) -> CentralizerElement {
    let t = r - (r * r).recip();
    CentralizerElement {
        r: r.clone(),
        a: &t / w,
        b: u / w * &t,
        c: c.clone(),
    }
}

fn algebra(family: Family) -> Result<LieAlgebra, LieError> {
    make_algebra(family)
}

fn duality_check(alg: &LieAlgebra, s: &mut Sampler, trials: usize) -> NamedCheck {
    let d = alg.dim();
    let mut chk = NamedCheck::new("duality-identity");
    for _ in 0..trials {
        let (x, y, xi) = (s.vector(d), s.vector(d), s.vector(d));
        let lhs = dot(&alg.coad(&x).mul_vec(&xi), &y) + dot(&xi, &alg.bracket(&x, &y));
        let mut point = x.clone();
        point.extend(y.iter().cloned());
        point.extend(xi.iter().cloned());
        chk.sample(&point, lhs.is_zero(), || format!("residual {lhs}"));
    }
    chk
}

/// Closed forms against structure constants or conjugation.
pub fn coad_formula_check(family: Family, trials: usize, seed: u64) -> Result<CheckReport, LieError> {
    let alg = algebra(family)?;
    let mut s = Sampler::new(seed);
    let mut checks = vec![duality_check(&alg, &mut Sampler::new(s.fork()), trials)];
    match family {
        Family::Sl(_) => {}
        Family::Sl2Semidirect => {
            let mut ad = NamedCheck::new("ad-star-formula");
            ad.value("convention", "<ad*_x xi, y> = -<xi, [x, y]>");
            for _ in 0..trials {
                let x = s.vector(3);
                let u = s.vector(2);
                let p = s.vector(5);
                let mut xu = x.clone();
                xu.extend(u.iter().cloned());
                let oracle = semidirect_entries(&semidirect_from_dual(&alg.coad(&xu).mul_vec(&semidirect_to_dual(&p))));
                let closed = semidirect_coad_formula(&x, &u, &p[..3], &p[3..]);
                let mut point = xu.clone();
                point.extend(p.iter().cloned());
                ad.sample(&point, oracle == closed, || {
                    format!("oracle {:?} closed form {:?}", format_vec(&oracle), format_vec(&closed))
                });
            }
            checks.push(ad);

            let mut uni = NamedCheck::new("unipotent-Ad-star-formula");
            uni.value("convention", "<Ad*_g xi, y> = <xi, Ad_{g^-1} y>");
            for _ in 0..trials {
                let a = s.rational();
                let u = s.vector(2);
                let xi = s.vector(3);
                let g = QMatrix::from_rows(vec![vec![Q::one(), a.clone()], vec![Q::zero(), Q::one()]]);
                let h = SemidirectElement::new(g, u.clone())?;
                let mut p = xi.clone();
                p.extend([Q::one(), Q::zero()]);
                let oracle = semidirect_entries(&semidirect_from_dual(
                    &coadjoint_group_matrix(&alg, &h.matrix())?.mul_vec(&semidirect_to_dual(&p)),
                ));
                let closed = semidirect_unipotent_formula(&a, &u, &xi);
                let mut point = vec![a.clone()];
                point.extend(u.iter().cloned());
                point.extend(xi.iter().cloned());
                uni.sample(&point, oracle == closed, || {
                    format!("oracle {:?} closed form {:?}", format_vec(&oracle), format_vec(&closed))
                });
            }
            checks.push(uni);

            let mut cf = NamedCheck::new("centralizer-closed-form");
            for _ in 0..trials {
                let p = loop {
                    let p = s.vector(5);
                    if !(p[3].is_zero() && p[4].is_zero()) {
                        break p;
                    }
                };
                let (k1, k2, k3, e1, e2) = (&p[0], &p[1], &p[2], &p[3], &p[4]);
                let x = vec![
                    e1 * e2,
                    -(e1 * e1),
                    e2 * e2,
                    q(-2) * (e1 * k1 + e2 * k2),
                    q(-2) * (e1 * k3 - e2 * k1),
                ];
                let dual = semidirect_to_dual(&p);
                let kills = is_zero_vec(&alg.coad(&x).mul_vec(&dual));
                let dim = centralizer_report(&alg, &dual).dimension;
                cf.sample(&p, kills && dim == 1, || format!("kills {kills}, dimension {dim}"));
            }
            checks.push(cf);
        }
        Family::Sl3Centralizer => {
            let mut f = NamedCheck::new("Ad-star-formula");
            f.value("convention", "<Ad*_g xi, y> = <xi, Ad_{g^-1} y>");
            for _ in 0..trials {
                let g = CentralizerElement::new(s.nonzero(), s.rational(), s.rational(), s.rational())?;
                let p = s.vector(4);
                let oracle = coadjoint_group_matrix(&alg, &g.matrix())?.mul_vec(&p);
                let closed = centralizer_coad_formula(&g, &p);
                let mut point = vec![g.r.clone(), g.a.clone(), g.b.clone(), g.c.clone()];
                point.extend(p.iter().cloned());
                f.sample(&point, oracle == closed, || {
                    format!("oracle {:?} closed form {:?}", format_vec(&oracle), format_vec(&closed))
                });
            }
            checks.push(f);
        }
    }
    Ok(CheckReport::new(&family.name(), "coad-formula", seed, trials, checks))
}

/// Stabilizer families: closure, commutativity and fixed points.
pub fn stabilizer_family_check(family: Family, trials: usize, seed: u64) -> Result<CheckReport, LieError> {
    let alg = algebra(family)?;
    let mut s = Sampler::new(seed);
    let mut checks = Vec::new();
    match family {
        Family::Sl(_) => return Err(LieError::InvalidInput("no stabilizer family for sl(n)".into())),
        Family::Sl2Semidirect => {
            let mut law = NamedCheck::new("family-closure");
            let mut fixed = NamedCheck::new("fixes-sigma");
            let mut tangent = NamedCheck::new("family-tangent-spans-centralizer");
            for _ in 0..trials {
                let (a, b, z) = (s.rational(), s.rational(), s.rational());
                let ha = SemidirectElement::unipotent_family(&a, &z);
                let hb = SemidirectElement::unipotent_family(&b, &z);
                let sum = SemidirectElement::unipotent_family(&(&a + &b), &z);
                law.sample(
                    &[a.clone(), b.clone(), z.clone()],
                    ha.mul(&hb) == sum && hb.mul(&ha) == sum,
                    || "h_a h_b != h_(a+b)".into(),
                );
                let p = semidirect_to_dual(&sigma(&z));
                let moved = coadjoint_group_matrix(&alg, &ha.matrix())?.mul_vec(&p);
                fixed.sample(&[a.clone(), z.clone()], moved == p, || {
                    format!("moved to {:?}", format_vec(&moved))
                });
                // derivative at a = 0: (E12, (0, 2z))
                let v = vec![Q::zero(), Q::one(), Q::zero(), Q::zero(), q(2) * &z];
                let rep = centralizer_report(&alg, &p);
                let ok = rep.dimension == 1 && span_rank(&[rep.basis[0].clone(), v], 5) == 1;
                tangent.sample(std::slice::from_ref(&z), ok, || {
                    format!("centralizer dimension {}", rep.dimension)
                });
            }
            checks.extend([law, fixed, tangent]);
        }
        Family::Sl3Centralizer => {
            let mut law = NamedCheck::new("group-law-matches-matrices");
            let mut fix1 = NamedCheck::new("fixes-sigma1");
            let mut fix2 = NamedCheck::new("fixes-sigma2");
            let mut comm = NamedCheck::new("stabilizer-commutes");
            let mut branch = NamedCheck::new("rational-branch-w0");
            branch.value("branch", "r = 1 only; other cube roots of unity are not rational");
            for _ in 0..trials {
                let g = CentralizerElement::new(s.nonzero(), s.rational(), s.rational(), s.rational())?;
                let h = CentralizerElement::new(s.nonzero(), s.rational(), s.rational(), s.rational())?;
                let ok = g.mul(&h).matrix() == g.matrix().mul(&h.matrix());
                law.sample(&[g.r.clone(), g.a.clone(), h.r.clone(), h.b.clone()], ok, || {
                    "law mismatch".into()
                });

                let (v, w, r, c) = (s.rational(), s.nonzero(), s.nonzero(), s.rational());
                let st = sigma1_stabilizer(&v, &w, &r, &c);
                let p = sigma1(&v, &w);
                let moved = coadjoint_group_matrix(&alg, &st.matrix())?.mul_vec(&p);
                fix1.sample(&[v.clone(), w.clone(), r.clone(), c.clone()], moved == p, || {
                    format!("moved to {:?}", format_vec(&moved))
                });
                let (r2, c2) = (s.nonzero(), s.rational());
                let st2 = sigma1_stabilizer(&v, &w, &r2, &c2);
                comm.sample(
                    &[v.clone(), w.clone(), r.clone(), r2.clone()],
                    st.mul(&st2) == st2.mul(&st),
                    || "stabilizer elements do not commute".into(),
                );

                let u = s.rational();
                let st = sigma2_stabilizer(&u, &w, &r, &c);
                let p = sigma2(&u, &w);
                let moved = coadjoint_group_matrix(&alg, &st.matrix())?.mul_vec(&p);
                fix2.sample(&[u.clone(), w.clone(), r.clone(), c.clone()], moved == p, || {
                    format!("moved to {:?}", format_vec(&moved))
                });

                let (bb, cc) = (s.rational(), s.rational());
                let g0 = CentralizerElement::new(Q::one(), &bb * &v, bb.clone(), cc.clone())?;
                let p0 = sigma1(&v, &Q::zero());
                let moved = coadjoint_group_matrix(&alg, &g0.matrix())?.mul_vec(&p0);
                let other = CentralizerElement::new(Q::one(), &cc * &v, cc.clone(), bb.clone())?;
                let ok = moved == p0 && g0.mul(&other) == other.mul(&g0);
                branch.sample(&[v.clone(), bb, cc], ok, || {
                    format!("moved to {:?}", format_vec(&moved))
                });
            }
            checks.extend([law, fix1, fix2, comm, branch]);
        }
    }
    Ok(CheckReport::new(
        &family.name(),
        "stabilizer-family",
        seed,
        trials,
        checks,
    ))
}

/// Linear codimension of `{coordinates in idx vanish}` inside `C^d`.
pub fn coordinate_codimension(d: usize, idx: &[usize]) -> usize {
    let rows: Vec<Vec<Q>> = idx
        .iter()
        .map(|&i| (0..d).map(|j| if i == j { Q::one() } else { Q::zero() }).collect())
        .collect();
    span_rank(&rows, d)
}

fn unit(d: usize, i: usize) -> Vec<Q> {
    (0..d).map(|j| if i == j { Q::one() } else { Q::zero() }).collect()
}

fn transversal(alg: &LieAlgebra, point: &[Q], tangent: &[Vec<Q>]) -> usize {
    let t = alg.orbit_tangent(point);
    let mut v = tangent.to_vec();
    v.extend((0..t.cols).map(|j| t.column(j)));
    span_rank(&v, alg.dim())
}

/// Slice conditions: codimension of the excluded locus, transversality and
/// abelian stabilizers at slice points, and regularity off the locus.
pub fn slice_report(family: Family, trials: usize, seed: u64) -> Result<CheckReport, LieError> {
    if let Family::Sl(n) = family {
        return super::sln::sl_slice_report(n, trials, seed);
    }
    let alg = algebra(family)?;
    let d = alg.dim();
    let mut s = Sampler::new(seed);
    let mut checks = Vec::new();
    match family {
        Family::Sl2Semidirect => {
            let mut codim = NamedCheck::new("complement-codimension");
            // eta sits in dual coordinates 3 and 4
            codim.expect("{eta = 0}", coordinate_codimension(d, &[3, 4]), 2);
            let mut reg = NamedCheck::new("regular-locus");
            let mut tr = NamedCheck::new("slice-transversality");
            let mut ab = NamedCheck::new("abelian-stabilizer");
            let mut meet = NamedCheck::new("slice-meets-orbit");
            let tangent = vec![semidirect_to_dual(&[q(0), q(0), q(1), q(0), q(0)])];
            for _ in 0..trials {
                let mut p = s.vector(5);
                let off = centralizer_report(&alg, &semidirect_to_dual(&p));
                let eta_zero = p[3].is_zero() && p[4].is_zero();
                p[3] = Q::zero();
                p[4] = Q::zero();
                let on = centralizer_report(&alg, &semidirect_to_dual(&p));
                reg.sample(&p, (off.dimension == 1) != eta_zero && on.dimension >= 2, || {
                    format!("off {} on {}", off.dimension, on.dimension)
                });

                let z = s.rational();
                let sp = semidirect_to_dual(&sigma(&z));
                let r = transversal(&alg, &sp, &tangent);
                tr.sample(std::slice::from_ref(&z), r == d, || format!("rank {r}"));
                let rep = centralizer_report(&alg, &sp);
                let (a, b) = (s.rational(), s.rational());
                let group_ok = SemidirectElement::unipotent_family(&a, &z)
                    .mul(&SemidirectElement::unipotent_family(&b, &z))
                    == SemidirectElement::unipotent_family(&b, &z).mul(&SemidirectElement::unipotent_family(&a, &z));
                ab.sample(
                    &[z.clone(), a.clone(), b.clone()],
                    rep.regular && rep.abelian && group_ok,
                    || format!("dimension {}", rep.dimension),
                );

                // move (xi, (1,0)) onto the slice with the unique u
                let xi = s.vector(3);
                let a = s.rational();
                let u = vec![
                    q(2) * &a * &xi[0] - &xi[1] + &a * &a * &xi[2],
                    q(2) * (&xi[0] + &a * &xi[2]),
                ];
                let g = QMatrix::from_rows(vec![vec![Q::one(), a.clone()], vec![Q::zero(), Q::one()]]);
                let h = SemidirectElement::new(g, u)?;
                let mut p = xi.clone();
                p.extend([Q::one(), Q::zero()]);
                let image =
                    semidirect_from_dual(&coadjoint_group_matrix(&alg, &h.matrix())?.mul_vec(&semidirect_to_dual(&p)));
                let mut pt = xi.clone();
                pt.push(a);
                meet.sample(&pt, image == sigma(&xi[2]), || {
                    format!("landed at {:?}", format_vec(&image))
                });
            }
            checks.extend([codim, reg, tr, ab, meet]);
        }
        Family::Sl3Centralizer => {
            let mut codim = NamedCheck::new("complement-codimension");
            codim.expect("{u = w = 0}", coordinate_codimension(d, &[1, 3]), 2);
            codim.expect("{v = w = 0}", coordinate_codimension(d, &[2, 3]), 2);
            let mut reg = NamedCheck::new("regular-off-locus");
            let mut tr1 = NamedCheck::new("sigma1-transversality");
            let mut tr2 = NamedCheck::new("sigma2-transversality");
            let mut ab = NamedCheck::new("abelian-stabilizer");
            let t1 = vec![unit(d, 2), unit(d, 3)];
            let t2 = vec![unit(d, 1), unit(d, 3)];
            for _ in 0..trials {
                let p = s.vector(4);
                let rep = centralizer_report(&alg, &p);
                let outside = !(p[1].is_zero() && p[3].is_zero()) || !(p[2].is_zero() && p[3].is_zero());
                reg.sample(&p, !outside || rep.regular, || format!("dimension {}", rep.dimension));

                let (v, w) = (s.rational(), s.rational());
                let p1 = sigma1(&v, &w);
                let r = transversal(&alg, &p1, &t1);
                tr1.sample(&[v.clone(), w.clone()], r == d, || format!("rank {r}"));
                let p2 = sigma2(&v, &w);
                let r = transversal(&alg, &p2, &t2);
                tr2.sample(&[v.clone(), w.clone()], r == d, || format!("rank {r}"));
                let a1 = centralizer_report(&alg, &p1);
                let a2 = centralizer_report(&alg, &p2);
                ab.sample(
                    &[v.clone(), w.clone()],
                    a1.regular && a1.abelian && a2.regular && a2.abelian,
                    || format!("dimensions {} {}", a1.dimension, a2.dimension),
                );
            }
            checks.extend([codim, reg, tr1, tr2, ab]);
        }
        Family::Sl(_) => unreachable!(),
    }
    Ok(CheckReport::new(&family.name(), "slice", seed, trials, checks))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ad_star_example() {
        // x2 = 1, xi1 = 1, everything else 0
        let out = semidirect_coad_formula(&[q(0), q(1), q(0)], &[q(0), q(0)], &[q(1), q(0), q(0)], &[q(0), q(0)]);
        assert_eq!(out, vec![q(0), q(-2), q(0), q(0), q(0), q(0)]);
        let alg = algebra(Family::Sl2Semidirect).unwrap();
        let o = semidirect_from_dual(
            &alg.coad(&[q(0), q(1), q(0), q(0), q(0)])
                .mul_vec(&semidirect_to_dual(&[q(1), q(0), q(0), q(0), q(0)])),
        );
        assert_eq!(semidirect_entries(&o), out);
    }

    #[test]
    fn identity_acts_trivially() {
        let alg = algebra(Family::Sl3Centralizer).unwrap();
        let g = CentralizerElement::new(q(1), q(0), q(0), q(0)).unwrap();
        assert_eq!(coadjoint_group_matrix(&alg, &g.matrix()).unwrap(), QMatrix::identity(4));
        let p = vec![q(1), q(2), q(3), q(4)];
        assert_eq!(centralizer_coad_formula(&g, &p), p);
    }

    #[test]
    fn dual_coordinates_roundtrip() {
        let p = vec![qf(1, 3), q(2), q(-1), q(4), qf(5, 2)];
        assert_eq!(semidirect_from_dual(&semidirect_to_dual(&p)), p);
    }

    #[test]
    fn eta_one_zero_has_one_dimensional_centralizer() {
        let alg = algebra(Family::Sl2Semidirect).unwrap();
        let rep = centralizer_report(&alg, &semidirect_to_dual(&[q(3), q(-1), q(2), q(1), q(0)]));
        assert_eq!(rep.dimension, 1);
        let rep = centralizer_report(&alg, &semidirect_to_dual(&[q(3), q(-1), q(2), q(0), q(0)]));
        assert!(rep.dimension >= 2);
    }

    #[test]
    fn generic_centralizer_in_sl3_centralizer_is_two_dimensional() {
        let alg = algebra(Family::Sl3Centralizer).unwrap();
        let rep = centralizer_report(&alg, &[q(1), q(2), q(3), q(5)]);
        assert_eq!(rep.dimension, 2);
        assert!(rep.regular && rep.abelian);
    }

    #[test]
    fn semidirect_rejects_bad_determinant() {
        assert!(SemidirectElement::new(QMatrix::from_i64(&[&[2, 0], &[0, 1]]), vec![q(0), q(0)]).is_err());
        assert!(CentralizerElement::new(q(0), q(1), q(1), q(1)).is_err());
    }

    #[test]
    fn all_reports_pass() {
        for f in [Family::Sl2Semidirect, Family::Sl3Centralizer] {
            for rep in [
                coad_formula_check(f, 10, 3),
                stabilizer_family_check(f, 10, 3),
                slice_report(f, 10, 3),
            ] {
                let rep = rep.unwrap();
                assert!(rep.passed, "{}", serde_json::to_string_pretty(&rep).unwrap());
            }
        }
        assert!(coad_formula_check(Family::Sl(3), 5, 1).unwrap().passed);
    }

    #[test]
    fn codimensions() {
        assert_eq!(coordinate_codimension(5, &[3, 4]), 2);
        assert_eq!(coordinate_codimension(4, &[1, 3]), 2);
        assert_eq!(coordinate_codimension(4, &[3, 3]), 1);
    }
}
