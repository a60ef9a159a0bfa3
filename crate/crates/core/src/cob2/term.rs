use std::fmt;

use super::CobError;

/// One of the generating cobordisms. The cylinder is `Identity(1)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Generator {
    /// Disc with one outgoing circle (unit).
    Eta,
    /// Pair of pants merging two circles (multiplication).
    Mu,
    /// Pair of pants splitting one circle (comultiplication).
    Delta,
    /// Disc with one incoming circle (counit).
    Eps,
    /// Two crossing cylinders.
    Tau,
}

impl Generator {
    pub const ALL: [Generator; 5] = [
        Generator::Eta,
        Generator::Mu,
        Generator::Delta,
        Generator::Eps,
        Generator::Tau,
    ];

    /// `(incoming circles, outgoing circles)`.
    pub fn arity(self) -> Signature {
        let (dom, cod) = match self {
            Generator::Eta => (0, 1),
            Generator::Mu => (2, 1),
            Generator::Delta => (1, 2),
            Generator::Eps => (1, 0),
            Generator::Tau => (2, 2),
        };
        Signature { dom, cod }
    }

    pub fn name(self) -> &'static str {
        match self {
            Generator::Eta => "eta",
            Generator::Mu => "mu",
            Generator::Delta => "delta",
            Generator::Eps => "eps",
            Generator::Tau => "tau",
        }
    }

    pub fn from_name(name: &str) -> Option<Generator> {
        Generator::ALL.into_iter().find(|g| g.name() == name)
    }
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Circle counts of the incoming and outgoing boundary.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, serde::Serialize)]
pub struct Signature {
    pub dom: usize,
    pub cod: usize,
}

impl Signature {
    pub fn new(dom: usize, cod: usize) -> Self {
        Signature { dom, cod }
    }
}

impl fmt::Display for Signature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.dom, self.cod)
    }
}

/// A term of the cobordism category.
///
/// `Compose(outer, inner)` means `outer` after `inner`; `Tensor` places
/// its operands side by side, left circles first.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum CobordismTerm {
    Generator(Generator),
    Identity(usize),
    Compose(Box<CobordismTerm>, Box<CobordismTerm>),
    Tensor(Box<CobordismTerm>, Box<CobordismTerm>),
}

impl CobordismTerm {
    pub fn gen(g: Generator) -> Self {
        CobordismTerm::Generator(g)
    }

    pub fn id(n: usize) -> Self {
        CobordismTerm::Identity(n)
    }

    /// `outer . inner`, rejecting mismatched circle counts.
    pub fn compose(outer: CobordismTerm, inner: CobordismTerm) -> Result<Self, CobError> {
        let o = outer.signature()?;
        let i = inner.signature()?;
        if o.dom != i.cod {
            return Err(CobError::Arity {
                offset: None,
                outer: outer.to_string(),
                inner: inner.to_string(),
                outer_dom: o.dom,
                inner_cod: i.cod,
            });
        }
        Ok(CobordismTerm::Compose(Box::new(outer), Box::new(inner)))
    }

    pub fn tensor(left: CobordismTerm, right: CobordismTerm) -> Self {
        CobordismTerm::Tensor(Box::new(left), Box::new(right))
    }

    /// Left-nested tensor of a list; the empty list is `id(0)`.
    pub fn tensor_all<I: IntoIterator<Item = CobordismTerm>>(parts: I) -> Self {
        parts
            .into_iter()
            .reduce(CobordismTerm::tensor)
            .unwrap_or(CobordismTerm::Identity(0))
    }

    /// Composite of a chain listed in application order (first applied first).
    pub fn chain<I: IntoIterator<Item = CobordismTerm>>(steps: I) -> Result<Self, CobError> {
        // nest to the left so the rendering needs no parentheses
        let mut acc: Option<CobordismTerm> = None;
        let steps: Vec<CobordismTerm> = steps.into_iter().collect();
        for step in steps.into_iter().rev() {
            acc = Some(match acc {
                None => step,
                Some(outer) => CobordismTerm::compose(outer, step)?,
            });
        }
        Ok(acc.unwrap_or(CobordismTerm::Identity(0)))
    }

    /// Signature of a well-formed term; errors on the first bad `Compose`.
    pub fn signature(&self) -> Result<Signature, CobError> {
        match self {
            CobordismTerm::Generator(g) => Ok(g.arity()),
            CobordismTerm::Identity(n) => Ok(Signature::new(*n, *n)),
            CobordismTerm::Tensor(l, r) => {
                let a = l.signature()?;
                let b = r.signature()?;
                Ok(Signature::new(a.dom + b.dom, a.cod + b.cod))
            }
            CobordismTerm::Compose(outer, inner) => {
                let o = outer.signature()?;
                let i = inner.signature()?;
                if o.dom != i.cod {
                    return Err(CobError::Arity {
                        offset: None,
                        outer: outer.to_string(),
                        inner: inner.to_string(),
                        outer_dom: o.dom,
                        inner_cod: i.cod,
                    });
                }
                Ok(Signature::new(i.dom, o.cod))
            }
        }
    }

    /// Number of nodes in the tree.
    pub fn size(&self) -> usize {
        match self {
            CobordismTerm::Generator(_) | CobordismTerm::Identity(_) => 1,
            CobordismTerm::Compose(a, b) | CobordismTerm::Tensor(a, b) => 1 + a.size() + b.size(),
        }
    }

    /// Number of generator occurrences.
    pub fn generator_count(&self) -> usize {
        match self {
            CobordismTerm::Generator(_) => 1,
            CobordismTerm::Identity(_) => 0,
            CobordismTerm::Compose(a, b) | CobordismTerm::Tensor(a, b) => a.generator_count() + b.generator_count(),
        }
    }

    fn fmt_prec(&self, f: &mut fmt::Formatter<'_>, prec: u8) -> fmt::Result {
        // prec 0: any term, 1: tensor operand, 2: atom position
        match self {
            CobordismTerm::Generator(g) => write!(f, "{g}"),
            CobordismTerm::Identity(n) => write!(f, "id({n})"),
            CobordismTerm::Compose(outer, inner) => {
                if prec > 0 {
                    f.write_str("(")?;
                }
                outer.fmt_prec(f, 0)?;
                f.write_str(" . ")?;
                inner.fmt_prec(f, 1)?;
                if prec > 0 {
                    f.write_str(")")?;
                }
                Ok(())
            }
            CobordismTerm::Tensor(l, r) => {
                if prec > 1 {
                    f.write_str("(")?;
                }
                l.fmt_prec(f, 1)?;
                f.write_str(" * ")?;
                r.fmt_prec(f, 2)?;
                if prec > 1 {
                    f.write_str(")")?;
                }
                Ok(())
            }
        }
    }
}

impl fmt::Display for CobordismTerm {
    /// Renders in the surface syntax; parsing the output yields the same tree.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.fmt_prec(f, 0)
    }
}
