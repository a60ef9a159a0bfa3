//! The Frobenius object attached to an abelian model and evaluation of
//! cobordism terms as spans.
//!
//! Two evaluators are provided: [`evaluate`] works on skeletal spans and
//! scales to every model of interest, [`evaluate_explicit`] builds the
//! homotopy fibre products arrow by arrow and is used as a cross-check.

mod check;

use std::sync::Arc;

use num_rational::BigRational;

use crate::cob2::{CobError, CobordismTerm, Generator};
use crate::groupoid::finite::{all_coords, Arrow};
use crate::groupoid::{
    compose_spans, AbelianModel, AbelianSpan, CompositionMode, FiniteGroupoid, GroupoidError, GroupoidFunctor, Span,
};

pub use check::{
    check_axioms, frobenius_witness, relation_instances, structural_comparison, CheckOptions, ComparisonResult,
    DualRouteResult, FailureWitness, Outcome, RelationInstance, RelationReport, RelationResult, SampleResult,
    StructuralComparison, WitnessResult,
};

#[derive(Debug, thiserror::Error)]
pub enum FrobeniusError {
    #[error(transparent)]
    Term(#[from] CobError),
    #[error(transparent)]
    Groupoid(#[from] GroupoidError),
}

/// Skeletal span of one generator.
pub fn generator_abelian(model: &AbelianModel, g: Generator) -> AbelianSpan {
    match g {
        Generator::Eta => AbelianSpan::eta(model),
        Generator::Mu => AbelianSpan::mu(model),
        Generator::Delta => AbelianSpan::delta(model),
        Generator::Eps => AbelianSpan::eps(model),
        Generator::Tau => AbelianSpan::tau(model),
    }
}

/// Skeletal evaluation: generators, products and homotopy composites.
pub fn evaluate(model: &AbelianModel, term: &CobordismTerm) -> Result<AbelianSpan, FrobeniusError> {
    term.signature()?;
    Ok(eval_rec(model, term)?)
}

fn eval_rec(model: &AbelianModel, term: &CobordismTerm) -> Result<AbelianSpan, GroupoidError> {
    Ok(match term {
        CobordismTerm::Generator(g) => generator_abelian(model, *g),
        CobordismTerm::Identity(n) => AbelianSpan::identity(model, *n),
        CobordismTerm::Tensor(l, r) => eval_rec(model, l)?.product(&eval_rec(model, r)?),
        CobordismTerm::Compose(outer, inner) => eval_rec(model, inner)?.then(&eval_rec(model, outer)?)?,
    })
}

/// Skeletal genus-0 span `A^{m,n}`.
pub fn genus0_abelian(model: &AbelianModel, m: usize, n: usize) -> Result<AbelianSpan, GroupoidError> {
    AbelianSpan::genus0(model, m, n)
}

/// Index of the constant tuple `(p, ..., p)` of length `k`.
fn diagonal_index(n: usize, p: usize, k: usize) -> usize {
    (0..k).fold(0, |acc, _| acc * n + p)
}

/// Leg into a source = target boundary given by object and coordinate maps.
fn leg<FO, FC>(
    apex: &FiniteGroupoid,
    boundary: &FiniteGroupoid,
    obj: FO,
    coords: FC,
) -> Result<GroupoidFunctor, GroupoidError>
where
    FO: Fn(usize) -> usize,
    FC: Fn(usize, &[u32]) -> Vec<u32>,
{
    let objects: Vec<usize> = (0..apex.object_count()).map(&obj).collect();
    let mut arrows = Vec::with_capacity(apex.arrow_count());
    for a in apex.arrows() {
        let o = objects[a.src];
        let c = coords(a.src, &a.coords);
        arrows.push(
            boundary
                .find_arrow(o, o, &c)
                .ok_or_else(|| GroupoidError::Invalid("leg image arrow is missing".into()))?,
        );
    }
    Ok(GroupoidFunctor { objects, arrows })
}

/// `A^k` as an explicit boundary groupoid.
pub fn boundary(model: &AbelianModel, k: usize, budget: usize) -> Result<Arc<FiniteGroupoid>, GroupoidError> {
    Ok(Arc::new(FiniteGroupoid::power(model, k, budget)?))
}

fn mirror(s: Span) -> Span {
    Span {
        apex: s.apex,
        source: s.target,
        target: s.source,
        left: s.right,
        right: s.left,
    }
}

/// Explicit span of one generator.
pub fn generator_span(model: &AbelianModel, g: Generator, budget: usize) -> Result<Span, GroupoidError> {
    let n = model.len();
    match g {
        Generator::Eta => {
            let apex = FiniteGroupoid::discrete(model.base().to_vec());
            let src = boundary(model, 0, budget)?;
            let tgt = boundary(model, 1, budget)?;
            let left = leg(&apex, &src, |_| 0, |_, _| vec![])?;
            let right = leg(&apex, &tgt, |x| x, |x, _| vec![0; model.moduli(x).len()])?;
            Ok(Span {
                apex,
                source: src,
                target: tgt,
                left,
                right,
            })
        }
        Generator::Eps => Ok(mirror(generator_span(model, Generator::Eta, budget)?)),
        Generator::Mu => {
            let mut arrows = Vec::new();
            let mut moduli = Vec::new();
            for p in 0..n {
                let mut m = model.moduli(p).to_vec();
                m.extend(model.moduli(p));
                for coords in all_coords(&m) {
                    arrows.push(Arrow { src: p, tgt: p, coords });
                }
                moduli.push(m);
            }
            let apex = FiniteGroupoid::additive(model.base().to_vec(), moduli, arrows)?;
            let src = boundary(model, 2, budget)?;
            let tgt = boundary(model, 1, budget)?;
            let left = leg(&apex, &src, |x| diagonal_index(n, x, 2), |_, c| c.to_vec())?;
            let right = leg(
                &apex,
                &tgt,
                |x| x,
                |x, c| {
                    let md = model.moduli(x);
                    let r = md.len();
                    (0..r)
                        .map(|i| ((c[i] as u64 + c[r + i] as u64) % md[i]) as u32)
                        .collect()
                },
            )?;
            Ok(Span {
                apex,
                source: src,
                target: tgt,
                left,
                right,
            })
        }
        Generator::Delta => Ok(mirror(generator_span(model, Generator::Mu, budget)?)),
        Generator::Tau => {
            let a2 = boundary(model, 2, budget)?;
            let apex = (*a2).clone();
            let left = GroupoidFunctor::identity(&apex);
            let tuples = crate::groupoid::finite::tuples(n, 2);
            let right = leg(
                &apex,
                &a2,
                |x| {
                    let t = &tuples[x];
                    t[1] * n + t[0]
                },
                |x, c| {
                    let r0 = model.moduli(tuples[x][0]).len();
                    let mut v = c[r0..].to_vec();
                    v.extend(&c[..r0]);
                    v
                },
            )?;
            Ok(Span {
                apex,
                source: a2.clone(),
                target: a2,
                left,
                right,
            })
        }
    }
}

/// Explicit genus-0 span: over each point, pairs of tuples with equal sums.
pub fn genus0_span(model: &AbelianModel, m: usize, n: usize, budget: usize) -> Result<Span, GroupoidError> {
    if m + n == 0 {
        return Err(GroupoidError::Invalid("genus-0 span needs (m, n) != (0, 0)".into()));
    }
    let k = model.len();
    let mut arrows = Vec::new();
    let mut moduli = Vec::new();
    for p in 0..k {
        let md = model.moduli(p);
        let r = md.len();
        let full: Vec<u64> = (0..m + n).flat_map(|_| md.iter().copied()).collect();
        let size: u128 = full.iter().map(|&x| x as u128).product();
        if size > budget as u128 {
            return Err(GroupoidError::TooLarge {
                what: "genus-0 apex".into(),
                size,
                budget,
            });
        }
        for coords in all_coords(&full) {
            let balanced = (0..r).all(|i| {
                let a: u64 = (0..m).map(|j| coords[j * r + i] as u64).sum();
                let b: u64 = (m..m + n).map(|j| coords[j * r + i] as u64).sum();
                a % md[i] == b % md[i]
            });
            if balanced {
                arrows.push(Arrow { src: p, tgt: p, coords });
            }
        }
        moduli.push(full);
    }
    let apex = FiniteGroupoid::additive(model.base().to_vec(), moduli, arrows)?;
    let src = boundary(model, m, budget)?;
    let tgt = boundary(model, n, budget)?;
    let left = leg(
        &apex,
        &src,
        |x| diagonal_index(k, x, m),
        |x, c| c[..m * model.moduli(x).len()].to_vec(),
    )?;
    let right = leg(
        &apex,
        &tgt,
        |x| diagonal_index(k, x, n),
        |x, c| c[m * model.moduli(x).len()..].to_vec(),
    )?;
    Ok(Span {
        apex,
        source: src,
        target: tgt,
        left,
        right,
    })
}

/// Explicit evaluation through homotopy fibre products.
pub fn evaluate_explicit(model: &AbelianModel, term: &CobordismTerm, budget: usize) -> Result<Span, FrobeniusError> {
    term.signature()?;
    Ok(explicit_rec(model, term, budget)?)
}

fn explicit_rec(model: &AbelianModel, term: &CobordismTerm, budget: usize) -> Result<Span, GroupoidError> {
    match term {
        CobordismTerm::Generator(g) => generator_span(model, *g, budget),
        CobordismTerm::Identity(n) => Ok(Span::identity(boundary(model, *n, budget)?)),
        CobordismTerm::Tensor(l, r) => {
            explicit_rec(model, l, budget)?.product(&explicit_rec(model, r, budget)?, budget)
        }
        CobordismTerm::Compose(outer, inner) => compose_spans(
            &explicit_rec(model, inner, budget)?,
            &explicit_rec(model, outer, budget)?,
            CompositionMode::Homotopy,
            budget,
        ),
    }
}

/// Factor lists with entries in `2..=max_factor`, nondecreasing, product at
/// most `max_order`. Includes the empty list.
pub fn factor_lists(max_factor: u64, max_order: u64) -> Vec<Vec<u64>> {
    fn go(start: u64, max_f: u64, left: u64, cur: &mut Vec<u64>, out: &mut Vec<Vec<u64>>) {
        out.push(cur.clone());
        for f in start..=max_f {
            if f <= left {
                cur.push(f);
                go(f, max_f, left / f, cur, out);
                cur.pop();
            }
        }
    }
    let mut out = Vec::new();
    go(2, max_factor, max_order, &mut Vec::new(), &mut out);
    out.sort_by(|a, b| (a.len(), a).cmp(&(b.len(), b)));
    out
}

/// One- and two-point models over [`factor_lists`]; two-point models are
/// taken up to swapping the points.
pub fn model_grid(max_factor: u64, max_order: u64) -> Vec<AbelianModel> {
    let lists = factor_lists(max_factor, max_order);
    let mut out = Vec::new();
    for l in &lists {
        out.push(AbelianModel::from_lists(&[l]).expect("grid model"));
    }
    for (i, a) in lists.iter().enumerate() {
        for b in &lists[i..] {
            out.push(AbelianModel::from_lists(&[a, b]).expect("grid model"));
        }
    }
    out
}

/// `eps . (mu . delta)^g . eta`.
pub fn closed_term(genus: u64) -> CobordismTerm {
    let mut steps = vec![CobordismTerm::Generator(Generator::Eta)];
    for _ in 0..genus {
        steps.push(CobordismTerm::Generator(Generator::Delta));
        steps.push(CobordismTerm::Generator(Generator::Mu));
    }
    steps.push(CobordismTerm::Generator(Generator::Eps));
    CobordismTerm::chain(steps).expect("closed term composes")
}

/// Groupoid cardinality of the apex of the closed genus-`g` surface.
pub fn closed_invariant(model: &AbelianModel, genus: u64) -> BigRational {
    evaluate(model, &closed_term(genus))
        .expect("closed term is well formed")
        .cardinality()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cob2::parse_term;
    use crate::groupoid::{fingerprint, DEFAULT_ARROW_BUDGET, DEFAULT_CHECK_BUDGET};

    fn z2() -> AbelianModel {
        AbelianModel::single(&[2]).unwrap()
    }

    #[test]
    fn mu_span_adds() {
        let s = generator_span(&z2(), Generator::Mu, DEFAULT_ARROW_BUDGET).unwrap();
        assert_eq!(s.apex.arrow_count(), 4);
        s.validate(DEFAULT_CHECK_BUDGET).unwrap();
        for a in 0..4 {
            let c = &s.apex.arrow(a).coords;
            let image = &s.target.arrow(s.right.arrows[a]).coords;
            assert_eq!(image[0], (c[0] + c[1]) % 2);
        }
    }

    #[test]
    fn eta_on_two_points_is_discrete() {
        let m = AbelianModel::from_lists(&[&[2], &[3]]).unwrap();
        let s = generator_span(&m, Generator::Eta, DEFAULT_ARROW_BUDGET).unwrap();
        assert_eq!((s.apex.object_count(), s.apex.arrow_count()), (2, 2));
        s.validate(DEFAULT_CHECK_BUDGET).unwrap();
    }

    #[test]
    fn explicit_generators_match_skeletal() {
        let m = AbelianModel::from_lists(&[&[2], &[3, 2]]).unwrap();
        for g in Generator::ALL {
            let e = generator_span(&m, g, DEFAULT_ARROW_BUDGET).unwrap();
            e.validate(DEFAULT_CHECK_BUDGET).unwrap();
            assert_eq!(
                fingerprint(&e, 64).unwrap(),
                generator_abelian(&m, g).fingerprint(),
                "{g}"
            );
        }
    }

    #[test]
    fn genus0_two_one_has_four_arrows_on_z2() {
        let s = genus0_span(&z2(), 2, 1, DEFAULT_ARROW_BUDGET).unwrap();
        assert_eq!(s.apex.arrow_count(), 4);
        assert!(genus0_span(&z2(), 0, 0, DEFAULT_ARROW_BUDGET).is_err());
        assert_eq!(
            fingerprint(&s, 64).unwrap(),
            genus0_abelian(&z2(), 2, 1).unwrap().fingerprint()
        );
    }

    #[test]
    fn unit_then_counit_has_discrete_two_object_apex() {
        let t = parse_term("eps . eta").unwrap();
        let s = evaluate_explicit(&z2(), &t, DEFAULT_ARROW_BUDGET).unwrap();
        assert_eq!(s.apex.object_count(), 2);
        assert!(s
            .apex
            .arrows()
            .iter()
            .all(|a| a.src == a.tgt && a.coords.iter().all(|&c| c == 0)));
        assert_eq!(s.apex.cardinality(), BigRational::from_integer(2.into()));
        assert_eq!(
            evaluate(&z2(), &t).unwrap().cardinality(),
            BigRational::from_integer(2.into())
        );
    }

    #[test]
    fn sewing_in_a_disc_is_the_identity() {
        let t = parse_term("mu . (eta * id(1))").unwrap();
        let e = evaluate_explicit(&z2(), &t, DEFAULT_ARROW_BUDGET).unwrap();
        e.validate(DEFAULT_CHECK_BUDGET).unwrap();
        let id = Span::identity(boundary(&z2(), 1, DEFAULT_ARROW_BUDGET).unwrap());
        assert_eq!(fingerprint(&e, 64).unwrap(), fingerprint(&id, 64).unwrap());
        assert_eq!(
            evaluate(&z2(), &t).unwrap().fingerprint(),
            AbelianSpan::identity1(&z2()).fingerprint()
        );
    }

    #[test]
    fn closed_invariants_genus_zero() {
        assert_eq!(closed_invariant(&z2(), 0), BigRational::from_integer(2.into()));
        let trivial = AbelianModel::from_lists(&[&[], &[], &[]]).unwrap();
        assert_eq!(closed_invariant(&trivial, 0), BigRational::from_integer(3.into()));
    }

    #[test]
    fn grid_shape() {
        let lists = factor_lists(4, 12);
        assert_eq!(lists.len(), 11);
        assert!(lists.contains(&vec![2, 2, 3]) && !lists.contains(&vec![2, 2, 2, 2]));
        assert_eq!(model_grid(4, 12).len(), 11 + 66);
    }

    #[test]
    fn closed_term_shape() {
        assert_eq!(closed_term(0).to_string(), "eps . eta");
        assert_eq!(closed_term(2).to_string(), "eps . mu . delta . mu . delta . eta");
    }
}
