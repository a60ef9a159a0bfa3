//! Topological normal form of a cobordism term.
//!
//! Each generator occurrence becomes one or two surface pieces with a known
//! Euler characteristic (disc `+1`, pair of pants `-1`, cylinder `0`).
//! Composition glues outgoing circles of the inner term to incoming circles
//! of the outer term. Gluing along a circle adds Euler characteristics, so a
//! final component with `b` boundary circles and characteristic `chi` has
//! genus `(2 - chi - b) / 2`.

use std::fmt;

use super::term::{CobordismTerm, Generator, Signature};
use super::CobError;

/// Disjoint-set forest with path halving and union by size.
#[derive(Clone, Debug, Default)]
pub struct DisjointSets {
    parent: Vec<usize>,
    size: Vec<usize>,
}

impl DisjointSets {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn make_set(&mut self) -> usize {
        let id = self.parent.len();
        self.parent.push(id);
        self.size.push(1);
        id
    }

    pub fn len(&self) -> usize {
        self.parent.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parent.is_empty()
    }

    pub fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    /// Returns `false` when `a` and `b` were already joined.
    pub fn union(&mut self, a: usize, b: usize) -> bool {
        let (mut ra, mut rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        if self.size[ra] < self.size[rb] {
            std::mem::swap(&mut ra, &mut rb);
        }
        self.parent[rb] = ra;
        self.size[ra] += self.size[rb];
        true
    }
}

/// One connected component of a normalized cobordism.
///
/// Circle indices are 1-based. Both lists empty means a closed surface.
#[derive(Clone, Debug, PartialEq, Eq, Hash, serde::Serialize)]
pub struct SurfaceComponent {
    pub inputs: Vec<usize>,
    pub outputs: Vec<usize>,
    pub genus: u64,
}

impl SurfaceComponent {
    pub fn is_closed(&self) -> bool {
        self.inputs.is_empty() && self.outputs.is_empty()
    }

    pub fn boundary_count(&self) -> usize {
        self.inputs.len() + self.outputs.len()
    }

    fn sort_key(&self, m: usize) -> (u8, usize, u64) {
        if let Some(&i) = self.inputs.first() {
            (0, i, self.genus)
        } else if let Some(&j) = self.outputs.first() {
            (0, m + j, self.genus)
        } else {
            (1, 0, self.genus)
        }
    }
}

/// Canonical form of a morphism of the 2d cobordism category.
#[derive(Clone, Debug, PartialEq, Eq, Hash, serde::Serialize)]
pub struct SurfaceNormalForm {
    pub m: usize,
    pub n: usize,
    pub components: Vec<SurfaceComponent>,
}

impl SurfaceNormalForm {
    pub fn signature(&self) -> Signature {
        Signature::new(self.m, self.n)
    }

    /// Total genus over all components.
    pub fn total_genus(&self) -> u64 {
        self.components.iter().map(|c| c.genus).sum()
    }

    /// True for a single connected genus-0 component touching every circle.
    pub fn is_connected_genus0(&self) -> bool {
        self.components.len() == 1 && self.components[0].genus == 0
    }

    /// Normal form of `id(n)`.
    pub fn identity(n: usize) -> Self {
        SurfaceNormalForm {
            m: n,
            n,
            components: (1..=n)
                .map(|i| SurfaceComponent {
                    inputs: vec![i],
                    outputs: vec![i],
                    genus: 0,
                })
                .collect(),
        }
    }

    /// Canonical serialization; equal strings iff equal normal forms.
    pub fn canonical(&self) -> String {
        self.to_string()
    }

    fn from_components(m: usize, n: usize, mut components: Vec<SurfaceComponent>) -> Self {
        for c in &mut components {
            c.inputs.sort_unstable();
            c.outputs.sort_unstable();
        }
        components.sort_by_key(|c| c.sort_key(m));
        SurfaceNormalForm { m, n, components }
    }
}

fn join(items: &[usize]) -> String {
    items.iter().map(|i| i.to_string()).collect::<Vec<_>>().join(",")
}

impl fmt::Display for SurfaceNormalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}->{}:", self.m, self.n)?;
        if self.components.is_empty() {
            return f.write_str(" empty");
        }
        for c in &self.components {
            if c.is_closed() {
                write!(f, " [closed g{}]", c.genus)?;
            } else {
                f.write_str(" [")?;
                if !c.inputs.is_empty() {
                    write!(f, "in {} | ", join(&c.inputs))?;
                }
                if !c.outputs.is_empty() {
                    write!(f, "out {} | ", join(&c.outputs))?;
                }
                write!(f, "g{}]", c.genus)?;
            }
        }
        Ok(())
    }
}

struct Gluing {
    pieces: DisjointSets,
    chi: Vec<i64>,
}

impl Gluing {
    fn piece(&mut self, chi: i64) -> usize {
        self.chi.push(chi);
        self.pieces.make_set()
    }

    /// Returns the pieces attached to the incoming and outgoing circles.
    fn build(&mut self, term: &CobordismTerm) -> Result<(Vec<usize>, Vec<usize>), CobError> {
        Ok(match term {
            CobordismTerm::Generator(g) => match g {
                Generator::Eta => {
                    let p = self.piece(1);
                    (vec![], vec![p])
                }
                Generator::Eps => {
                    let p = self.piece(1);
                    (vec![p], vec![])
                }
                Generator::Mu => {
                    let p = self.piece(-1);
                    (vec![p, p], vec![p])
                }
                Generator::Delta => {
                    let p = self.piece(-1);
                    (vec![p], vec![p, p])
                }
                Generator::Tau => {
                    let a = self.piece(0);
                    let b = self.piece(0);
                    (vec![a, b], vec![b, a])
                }
            },
            CobordismTerm::Identity(n) => {
                let ps: Vec<usize> = (0..*n).map(|_| self.piece(0)).collect();
                (ps.clone(), ps)
            }
            CobordismTerm::Tensor(l, r) => {
                let (mut li, mut lo) = self.build(l)?;
                let (ri, ro) = self.build(r)?;
                li.extend(ri);
                lo.extend(ro);
                (li, lo)
            }
            CobordismTerm::Compose(outer, inner) => {
                let (ii, io) = self.build(inner)?;
                let (oi, oo) = self.build(outer)?;
                if io.len() != oi.len() {
                    return Err(CobError::Arity {
                        offset: None,
                        outer: outer.to_string(),
                        inner: inner.to_string(),
                        outer_dom: oi.len(),
                        inner_cod: io.len(),
                    });
                }
                for (a, b) in io.iter().zip(&oi) {
                    self.pieces.union(*a, *b);
                }
                (ii, oo)
            }
        })
    }
}

/// Computes the canonical normal form of a well-formed term.
pub fn normalize(term: &CobordismTerm) -> Result<SurfaceNormalForm, CobError> {
    let mut g = Gluing {
        pieces: DisjointSets::new(),
        chi: Vec::new(),
    };
    let (inputs, outputs) = g.build(term)?;
    let count = g.pieces.len();
    let mut chi = vec![0i64; count];
    let mut present = vec![false; count];
    for p in 0..count {
        let r = g.pieces.find(p);
        chi[r] += g.chi[p];
        present[r] = true;
    }
    let mut ins: Vec<Vec<usize>> = vec![Vec::new(); count];
    let mut outs: Vec<Vec<usize>> = vec![Vec::new(); count];
    for (k, &p) in inputs.iter().enumerate() {
        let r = g.pieces.find(p);
        ins[r].push(k + 1);
    }
    for (k, &p) in outputs.iter().enumerate() {
        let r = g.pieces.find(p);
        outs[r].push(k + 1);
    }
    let mut components = Vec::new();
    for r in 0..count {
        if !present[r] {
            continue;
        }
        let b = (ins[r].len() + outs[r].len()) as i64;
        let twice_genus = 2 - chi[r] - b;
        assert!(
            twice_genus >= 0 && twice_genus % 2 == 0,
            "non-integral genus: chi = {}, b = {}",
            chi[r],
            b
        );
        components.push(SurfaceComponent {
            inputs: std::mem::take(&mut ins[r]),
            outputs: std::mem::take(&mut outs[r]),
            genus: (twice_genus / 2) as u64,
        });
    }
    Ok(SurfaceNormalForm::from_components(
        inputs.len(),
        outputs.len(),
        components,
    ))
}
