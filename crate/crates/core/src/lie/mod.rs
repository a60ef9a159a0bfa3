//! Exact Lie-theoretic checks over the rationals: adjoint quotients,
//! companion sections, Slodowy slices and two non-reductive examples.

pub mod algebra;
pub mod examples;
pub mod qmat;
pub mod report;
pub mod sln;

pub use algebra::{centralizer_report, make_algebra, minimal_centralizer_dim, CentralizerReport, Family, LieAlgebra};
pub use examples::{coad_formula_check, slice_report, stabilizer_family_check};
pub use qmat::{QMatrix, Q};
pub use report::{parse_rational, CheckReport, NamedCheck, Sampler};
pub use sln::{char_coeffs, companion, companion_checks, section_identity, slodowy_checks};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum LieError {
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("not in the algebra: {0}")]
    NotInAlgebra(String),
    #[error("structure constants are inconsistent: {0}")]
    Structure(String),
}

/// Parses `sln`, `sl2-semidirect` or `sl3-centralizer`; `sln` takes `n`.
pub fn parse_family(name: &str, n: Option<usize>) -> Result<Family, LieError> {
    match name {
        "sln" => {
            let n = n.ok_or_else(|| LieError::InvalidInput("sln needs --n".into()))?;
            if !(2..=12).contains(&n) {
                return Err(LieError::InvalidInput(format!("n = {n} is outside 2..=12")));
            }
            Ok(Family::Sl(n))
        }
        "sl2-semidirect" => Ok(Family::Sl2Semidirect),
        "sl3-centralizer" => Ok(Family::Sl3Centralizer),
        other => Err(LieError::InvalidInput(format!("unknown family {other:?}"))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn family_names() {
        assert_eq!(parse_family("sln", Some(4)).unwrap(), Family::Sl(4));
        assert!(parse_family("sln", None).is_err());
        assert!(parse_family("sln", Some(1)).is_err());
        assert_eq!(parse_family("sl3-centralizer", None).unwrap(), Family::Sl3Centralizer);
        assert!(parse_family("so3", None).is_err());
    }
}
