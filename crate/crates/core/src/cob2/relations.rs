//! The relation instances checked throughout: unit, counit, (co)commutativity,
//! Frobenius, (co)associativity and the identity laws.

use super::{normalize, parse_term, CobError, CobordismTerm};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RelationInstance {
    pub name: &'static str,
    pub lhs: &'static str,
    pub rhs: &'static str,
}

impl RelationInstance {
    pub fn terms(&self) -> Result<(CobordismTerm, CobordismTerm), CobError> {
        Ok((parse_term(self.lhs)?, parse_term(self.rhs)?))
    }

    /// Both sides have the same normal form.
    pub fn holds(&self) -> Result<bool, CobError> {
        let (l, r) = self.terms()?;
        Ok(normalize(&l)? == normalize(&r)?)
    }
}

const fn rel(name: &'static str, lhs: &'static str, rhs: &'static str) -> RelationInstance {
    RelationInstance { name, lhs, rhs }
}

/// Ten relations followed by four identity laws.
pub const RELATION_INSTANCES: [RelationInstance; 14] = [
    rel("unit-left", "mu . (eta * id(1))", "id(1)"),
    rel("unit-right", "mu . (id(1) * eta)", "id(1)"),
    rel("counit-left", "(eps * id(1)) . delta", "id(1)"),
    rel("counit-right", "(id(1) * eps) . delta", "id(1)"),
    rel("commutativity", "mu . tau", "mu"),
    rel("cocommutativity", "tau . delta", "delta"),
    rel("frobenius-left", "(mu * id(1)) . (id(1) * delta)", "delta . mu"),
    rel("frobenius-right", "(id(1) * mu) . (delta * id(1))", "delta . mu"),
    rel("associativity", "mu . (mu * id(1))", "mu . (id(1) * mu)"),
    rel("coassociativity", "(delta * id(1)) . delta", "(id(1) * delta) . delta"),
    rel("identity-after-mu", "id(1) . mu", "mu"),
    rel("mu-after-identity", "mu . id(2)", "mu"),
    rel("identity-after-delta", "id(2) . delta", "delta"),
    rel("delta-after-identity", "delta . id(1)", "delta"),
];
