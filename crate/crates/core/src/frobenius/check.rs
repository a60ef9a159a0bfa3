//! Relation suite for the Frobenius object of a model.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::{boundary, evaluate, generator_abelian, generator_span, genus0_abelian};
pub use crate::cob2::RelationInstance;
use crate::cob2::{
    normalize, parse_term, random_genus0_term, random_rewrite, random_term, CobordismTerm, RELATION_INSTANCES,
};
use crate::groupoid::{
    comparison_functor, compose_spans, essential_equivalence_check, fingerprint, AbelianModel, AbelianSpan,
    CompositionMode, EquivalenceVerdict, FunctorRoute, GroupoidError, GroupoidFunctor, Span, DEFAULT_ARROW_BUDGET,
    DEFAULT_CHECK_BUDGET, DEFAULT_ISOTROPY_BOUND,
};

/// The relation list shared with the cobordism layer.
pub fn relation_instances() -> &'static [RelationInstance] {
    &RELATION_INSTANCES
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckOptions {
    pub seed: u64,
    /// Random decomposition samples appended to the report.
    pub samples: usize,
    /// Arrow budget for the explicit cross-checks; larger ones are skipped.
    pub explicit_budget: usize,
    pub isotropy_bound: usize,
}

impl Default for CheckOptions {
    fn default() -> Self {
        CheckOptions {
            seed: 0,
            samples: 8,
            explicit_budget: 50_000,
            isotropy_bound: DEFAULT_ISOTROPY_BOUND,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum Outcome {
    Pass,
    Fail { detail: String },
    Skipped { reason: String },
}

impl Outcome {
    pub fn failed(&self) -> bool {
        matches!(self, Outcome::Fail { .. })
    }

    fn from_error(e: GroupoidError) -> Self {
        match e {
            GroupoidError::TooLarge { .. } | GroupoidError::IsotropyTooLarge { .. } => {
                Outcome::Skipped { reason: e.to_string() }
            }
            _ => Outcome::Fail { detail: e.to_string() },
        }
    }
}

/// Strict-to-homotopy comparison read off the skeletal data.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StructuralComparison {
    /// Matching orbit pairs over the middle boundary.
    pub pairs: usize,
    /// Largest `[G_b : im delta]`, as a decimal string.
    pub max_index: String,
    pub fully_faithful: bool,
    pub essentially_surjective: bool,
}

pub fn structural_comparison(first: &AbelianSpan, second: &AbelianSpan) -> Result<StructuralComparison, GroupoidError> {
    let idx = first.comparison_indices(second)?;
    let one = num_bigint::BigInt::from(1);
    let max = idx.iter().max().cloned().unwrap_or_else(|| one.clone());
    Ok(StructuralComparison {
        pairs: idx.len(),
        max_index: max.to_string(),
        fully_faithful: true,
        essentially_surjective: idx.iter().all(|i| *i == one),
    })
}

/// One composite inside one side of a relation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ComparisonResult {
    pub side: String,
    pub step: String,
    pub structural: StructuralComparison,
    /// Explicit comparison functor verified as an essential equivalence.
    pub explicit_functor: Outcome,
    /// Explicit strict composite against the skeletal one.
    pub strong_fingerprint: Outcome,
    pub passed: bool,
}

/// Explicit homotopy evaluation of a whole side against the skeletal one.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DualRouteResult {
    pub side: String,
    pub outcome: Outcome,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FailureWitness {
    pub lhs_fingerprint: String,
    pub rhs_fingerprint: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RelationResult {
    pub name: String,
    pub lhs: String,
    pub rhs: String,
    pub normal_form_equal: bool,
    pub fingerprint_equal: bool,
    pub comparisons: Vec<ComparisonResult>,
    pub dual_route: Vec<DualRouteResult>,
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<FailureWitness>,
}

/// A functor named by hand between two strict composites.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WitnessResult {
    pub name: String,
    pub source: String,
    pub target: String,
    pub map: String,
    pub source_arrows: usize,
    pub target_arrows: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub route: Option<FunctorRoute>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub verdict: Option<EquivalenceVerdict>,
    pub outcome: Outcome,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SampleResult {
    pub kind: String,
    pub seed: u64,
    pub lhs: String,
    pub rhs: String,
    pub passed: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RelationReport {
    pub model: String,
    pub options: CheckOptions,
    pub relations: Vec<RelationResult>,
    pub witnesses: Vec<WitnessResult>,
    pub samples: Vec<SampleResult>,
    pub passed: bool,
}

impl RelationReport {
    pub fn failures(&self) -> Vec<String> {
        let mut out: Vec<String> = self
            .relations
            .iter()
            .filter(|r| !r.passed)
            .map(|r| format!("relation {}", r.name))
            .collect();
        out.extend(
            self.witnesses
                .iter()
                .filter(|w| w.outcome != Outcome::Pass)
                .map(|w| format!("witness {}", w.name)),
        );
        out.extend(
            self.samples
                .iter()
                .filter(|s| !s.passed)
                .map(|s| format!("sample {} {}", s.kind, s.seed)),
        );
        out
    }
}

struct Evaluated {
    skeletal: AbelianSpan,
    explicit: Result<Span, GroupoidError>,
}

fn walk(
    model: &AbelianModel,
    term: &CobordismTerm,
    opts: &CheckOptions,
    side: &str,
    out: &mut Vec<ComparisonResult>,
) -> Result<Evaluated, GroupoidError> {
    let budget = opts.explicit_budget;
    Ok(match term {
        CobordismTerm::Generator(g) => Evaluated {
            skeletal: generator_abelian(model, *g),
            explicit: generator_span(model, *g, budget),
        },
        CobordismTerm::Identity(n) => Evaluated {
            skeletal: AbelianSpan::identity(model, *n),
            explicit: boundary(model, *n, budget).map(Span::identity),
        },
        CobordismTerm::Tensor(l, r) => {
            let a = walk(model, l, opts, side, out)?;
            let b = walk(model, r, opts, side, out)?;
            let explicit = match (a.explicit, b.explicit) {
                (Ok(x), Ok(y)) => x.product(&y, budget),
                (Err(e), _) | (_, Err(e)) => Err(e),
            };
            Evaluated {
                skeletal: a.skeletal.product(&b.skeletal),
                explicit,
            }
        }
        CobordismTerm::Compose(outer, inner) => {
            let first = walk(model, inner, opts, side, out)?;
            let second = walk(model, outer, opts, side, out)?;
            let structural = structural_comparison(&first.skeletal, &second.skeletal)?;
            let strong = first.skeletal.then_strong(&second.skeletal)?;
            let skeletal = first.skeletal.then(&second.skeletal)?;
            let (explicit_functor, strong_fingerprint, explicit) = match (&first.explicit, &second.explicit) {
                (Ok(s1), Ok(s2)) => match comparison_functor(s1, s2, budget) {
                    Ok(cmp) => {
                        let functor = match cmp.verify(DEFAULT_CHECK_BUDGET) {
                            Ok((_, v)) if v.equivalence => Outcome::Pass,
                            Ok((_, v)) => Outcome::Fail {
                                detail: format!("{v:?}"),
                            },
                            Err(e) => Outcome::from_error(e),
                        };
                        let fp = match fingerprint(&cmp.strong, opts.isotropy_bound) {
                            Ok(f) if f == strong.fingerprint() => Outcome::Pass,
                            Ok(f) => Outcome::Fail {
                                detail: format!("explicit {f} vs skeletal {}", strong.fingerprint()),
                            },
                            Err(e) => Outcome::from_error(e),
                        };
                        (functor, fp, Ok(cmp.homotopy))
                    }
                    Err(e) => (Outcome::from_error(e.clone()), Outcome::from_error(e.clone()), Err(e)),
                },
                (Err(e), _) | (_, Err(e)) => {
                    let o = Outcome::Skipped {
                        reason: format!("operand not built: {e}"),
                    };
                    (o.clone(), o, Err(e.clone()))
                }
            };
            let passed = structural.fully_faithful
                && structural.essentially_surjective
                && !explicit_functor.failed()
                && !strong_fingerprint.failed();
            out.push(ComparisonResult {
                side: side.to_string(),
                step: term.to_string(),
                structural,
                explicit_functor,
                strong_fingerprint,
                passed,
            });
            Evaluated { skeletal, explicit }
        }
    })
}

fn check_relation(model: &AbelianModel, rel: &RelationInstance, opts: &CheckOptions) -> RelationResult {
    let mut result = RelationResult {
        name: rel.name.to_string(),
        lhs: rel.lhs.to_string(),
        rhs: rel.rhs.to_string(),
        normal_form_equal: false,
        fingerprint_equal: false,
        comparisons: Vec::new(),
        dual_route: Vec::new(),
        passed: false,
        witness: None,
    };
    let (l, r) = match rel.terms() {
        Ok(t) => t,
        Err(e) => {
            result.witness = Some(FailureWitness {
                lhs_fingerprint: e.to_string(),
                rhs_fingerprint: String::new(),
            });
            return result;
        }
    };
    result.normal_form_equal = matches!((normalize(&l), normalize(&r)), (Ok(a), Ok(b)) if a == b);
    let mut fps = Vec::new();
    for (side, term) in [("lhs", &l), ("rhs", &r)] {
        match walk(model, term, opts, side, &mut result.comparisons) {
            Ok(ev) => {
                let fp = ev.skeletal.fingerprint();
                let outcome = match ev.explicit.and_then(|s| fingerprint(&s, opts.isotropy_bound)) {
                    Ok(f) if f == fp => Outcome::Pass,
                    Ok(f) => Outcome::Fail {
                        detail: format!("explicit {f} vs skeletal {fp}"),
                    },
                    Err(e) => Outcome::from_error(e),
                };
                result.dual_route.push(DualRouteResult {
                    side: side.into(),
                    outcome,
                });
                fps.push(Some(fp));
            }
            Err(e) => {
                result.dual_route.push(DualRouteResult {
                    side: side.into(),
                    outcome: Outcome::Fail { detail: e.to_string() },
                });
                fps.push(None);
            }
        }
    }
    if let (Some(a), Some(b)) = (&fps[0], &fps[1]) {
        result.fingerprint_equal = a == b;
        if a != b {
            result.witness = Some(FailureWitness {
                lhs_fingerprint: a.canonical(),
                rhs_fingerprint: b.canonical(),
            });
        }
    }
    result.passed = result.normal_form_equal
        && result.fingerprint_equal
        && result.comparisons.iter().all(|c| c.passed)
        && result.dual_route.iter().all(|d| !d.outcome.failed());
    result
}

fn explicit(model: &AbelianModel, text: &str) -> Result<Span, GroupoidError> {
    let t = parse_term(text).expect("witness terms parse");
    super::evaluate_explicit(model, &t, DEFAULT_ARROW_BUDGET).map_err(|e| match e {
        super::FrobeniusError::Groupoid(g) => g,
        super::FrobeniusError::Term(t) => GroupoidError::Invalid(t.to_string()),
    })
}

fn strong(model: &AbelianModel, first: &str, second: &str) -> Result<Span, GroupoidError> {
    compose_spans(
        &explicit(model, first)?,
        &explicit(model, second)?,
        CompositionMode::Strong,
        DEFAULT_ARROW_BUDGET,
    )
}

/// Above this many composable pairs functoriality is checked on generators.
const WITNESS_PAIR_BUDGET: usize = 200_000;

type CoordMap = fn(&[u64], &[u32]) -> Vec<u32>;

fn block(c: &[u32], i: usize, r: usize) -> Vec<u32> {
    c[i * r..(i + 1) * r].to_vec()
}

fn add(x: &[u32], y: &[u32], md: &[u64]) -> Vec<u32> {
    x.iter()
        .zip(y)
        .zip(md)
        .map(|((&a, &b), &m)| ((a as u64 + b as u64) % m) as u32)
        .collect()
}

fn concat(parts: &[Vec<u32>]) -> Vec<u32> {
    parts.concat()
}

/// Builds the functor `source -> target` from a coordinate map and checks
/// it is a functor over both legs and an essential equivalence. Target apex
/// objects must be indexed by base points.
fn run_witness(
    model: &AbelianModel,
    name: &str,
    source: &str,
    target: &str,
    map: &str,
    s: &Span,
    t: &Span,
    f: CoordMap,
) -> WitnessResult {
    let mut w = WitnessResult {
        name: name.into(),
        source: source.into(),
        target: target.into(),
        map: map.into(),
        source_arrows: s.apex.arrow_count(),
        target_arrows: t.apex.arrow_count(),
        route: None,
        verdict: None,
        outcome: Outcome::Pass,
    };
    let build = || -> Result<GroupoidFunctor, String> {
        if t.apex.object_count() != model.len() {
            return Err("target apex is not indexed by base points".into());
        }
        let mut objects = Vec::with_capacity(s.apex.object_count());
        for x in 0..s.apex.object_count() {
            let hit: Vec<usize> = (0..t.apex.object_count())
                .filter(|&y| t.left.objects[y] == s.left.objects[x] && t.right.objects[y] == s.right.objects[x])
                .collect();
            match hit.as_slice() {
                [y] => objects.push(*y),
                _ => {
                    return Err(format!(
                        "object {} has {} candidate images",
                        s.apex.objects()[x],
                        hit.len()
                    ))
                }
            }
        }
        let mut arrows = Vec::with_capacity(s.apex.arrow_count());
        for a in s.apex.arrows() {
            let (ys, yt) = (objects[a.src], objects[a.tgt]);
            let c = f(model.moduli(ys), &a.coords);
            arrows.push(
                t.apex
                    .find_arrow(ys, yt, &c)
                    .ok_or_else(|| format!("no arrow {c:?} at {}", t.apex.objects()[ys]))?,
            );
        }
        Ok(GroupoidFunctor { objects, arrows })
    };
    let functor = match build() {
        Ok(f) => f,
        Err(detail) => {
            w.outcome = Outcome::Fail { detail };
            return w;
        }
    };
    match functor.validate(&s.apex, &t.apex, WITNESS_PAIR_BUDGET) {
        Ok(route) => w.route = Some(route),
        Err(e) => {
            w.outcome = Outcome::Fail { detail: e.to_string() };
            return w;
        }
    }
    if t.left.after(&functor) != s.left || t.right.after(&functor) != s.right {
        w.outcome = Outcome::Fail {
            detail: "legs do not commute".into(),
        };
        return w;
    }
    let v = essential_equivalence_check(&functor, &s.apex, &t.apex);
    if !v.equivalence {
        w.outcome = Outcome::Fail {
            detail: format!("{v:?}"),
        };
    }
    w.verdict = Some(v);
    w
}

/// Hand-written functors between strict composites: disc sewing, the swap
/// laws and both Frobenius relations.
pub fn frobenius_witness(model: &AbelianModel) -> Vec<WitnessResult> {
    let cases: [(&str, &str, &str, &str, &str, CoordMap); 8] = [
        ("unit-left", "eta * id(1)", "mu", "id(1)", "(a, 0, a) -> a", |md, c| {
            block(c, 0, md.len())
        }),
        ("unit-right", "id(1) * eta", "mu", "id(1)", "(a, a, 0) -> a", |md, c| {
            block(c, 0, md.len())
        }),
        (
            "counit-left",
            "delta",
            "eps * id(1)",
            "id(1)",
            "(0, a, a) -> a",
            |md, c| block(c, 1, md.len()),
        ),
        (
            "counit-right",
            "delta",
            "id(1) * eps",
            "id(1)",
            "(a, 0, a) -> a",
            |md, c| block(c, 0, md.len()),
        ),
        ("commutativity", "tau", "mu", "mu", "(a, b, b, a) -> (a, b)", |md, c| {
            let r = md.len();
            concat(&[block(c, 0, r), block(c, 1, r)])
        }),
        (
            "cocommutativity",
            "delta",
            "tau",
            "delta",
            "(a, b, a, b) -> (b, a)",
            |md, c| {
                let r = md.len();
                concat(&[block(c, 1, r), block(c, 0, r)])
            },
        ),
        (
            "frobenius-right",
            "delta * id(1)",
            "id(1) * mu",
            "mu ; delta",
            "(a, b, c) -> (a+b, c, a, b+c)",
            |md, c| {
                let r = md.len();
                let (a, b, cc) = (block(c, 0, r), block(c, 1, r), block(c, 2, r));
                concat(&[add(&a, &b, md), cc.clone(), a, add(&b, &cc, md)])
            },
        ),
        (
            "frobenius-left",
            "id(1) * delta",
            "mu * id(1)",
            "mu ; delta",
            "(a, b, c) -> (a, b+c, a+b, c)",
            |md, c| {
                let r = md.len();
                let (a, b, cc) = (block(c, 0, r), block(c, 1, r), block(c, 2, r));
                concat(&[a.clone(), add(&b, &cc, md), add(&a, &b, md), cc])
            },
        ),
    ];
    let mut out = Vec::new();
    for (name, first, second, target, map, f) in cases {
        let source_label = format!("{first} ; {second}");
        let s = strong(model, first, second);
        let t = match target {
            "mu ; delta" => strong(model, "mu", "delta"),
            other => explicit(model, other),
        };
        match (s, t) {
            (Ok(s), Ok(t)) => {
                let mut w = run_witness(model, name, &source_label, target, map, &s, &t, f);
                if target == "mu ; delta" && w.outcome == Outcome::Pass {
                    // the target is the genus-0 span with two inputs and two outputs
                    let g = genus0_abelian(model, 2, 2).map(|g| g.fingerprint());
                    match (fingerprint(&t, DEFAULT_ISOTROPY_BOUND.max(4096)), g) {
                        (Ok(a), Ok(b)) if a == b => {}
                        (Ok(_), Ok(_)) => {
                            w.outcome = Outcome::Fail {
                                detail: "strict target is not A^{2,2}".into(),
                            }
                        }
                        (Err(e), _) | (_, Err(e)) => w.outcome = Outcome::from_error(e),
                    }
                }
                out.push(w);
            }
            (Err(e), _) | (_, Err(e)) => out.push(WitnessResult {
                name: name.into(),
                source: source_label,
                target: target.into(),
                map: map.into(),
                source_arrows: 0,
                target_arrows: 0,
                route: None,
                verdict: None,
                outcome: Outcome::Fail { detail: e.to_string() },
            }),
        }
    }
    out
}

const SAMPLE_SIGNATURES: [(usize, usize); 6] = [(1, 1), (2, 1), (1, 2), (0, 2), (2, 0), (3, 0)];

fn run_samples(model: &AbelianModel, opts: &CheckOptions) -> Vec<SampleResult> {
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let mut out = Vec::with_capacity(opts.samples);
    for i in 0..opts.samples {
        let seed: u64 = rng.gen();
        if i % 2 == 0 {
            let (m, n) = SAMPLE_SIGNATURES[(seed % SAMPLE_SIGNATURES.len() as u64) as usize];
            let t = random_genus0_term(seed, m, n, 3);
            let passed = match (evaluate(model, &t), genus0_abelian(model, m, n)) {
                (Ok(a), Ok(b)) => a.fingerprint() == b.fingerprint(),
                _ => false,
            };
            out.push(SampleResult {
                kind: "genus0".into(),
                seed,
                lhs: t.to_string(),
                rhs: format!("genus0({m},{n})"),
                passed,
            });
        } else {
            let t = random_term(seed, 5, 3);
            let u = random_rewrite(&t, seed, 4);
            let same_nf = matches!((normalize(&t), normalize(&u)), (Ok(a), Ok(b)) if a == b);
            let passed = same_nf
                && match (evaluate(model, &t), evaluate(model, &u)) {
                    (Ok(a), Ok(b)) => a.fingerprint() == b.fingerprint(),
                    _ => false,
                };
            out.push(SampleResult {
                kind: "rewrite".into(),
                seed,
                lhs: t.to_string(),
                rhs: u.to_string(),
                passed,
            });
        }
    }
    out
}

/// Runs every relation instance, the witness functors and the seeded samples.
pub fn check_axioms(model: &AbelianModel, opts: &CheckOptions) -> RelationReport {
    let relations: Vec<RelationResult> = RELATION_INSTANCES
        .iter()
        .map(|r| check_relation(model, r, opts))
        .collect();
    let witnesses = frobenius_witness(model);
    let samples = run_samples(model, opts);
    let passed = relations.iter().all(|r| r.passed)
        && witnesses.iter().all(|w| w.outcome == Outcome::Pass)
        && samples.iter().all(|s| s.passed);
    RelationReport {
        model: model.describe(),
        options: opts.clone(),
        relations,
        witnesses,
        samples,
        passed,
    }
}
