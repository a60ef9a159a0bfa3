//! Check reports and exact random sampling.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::qmat::{format_vec, Q};
use super::LieError;

/// Longest accepted rational literal.
pub const MAX_RATIONAL_LEN: usize = 256;

/// Parses `p` or `p/q` (optional leading `-`, decimal digits, `q != 0`).
pub fn parse_rational(text: &str) -> Result<Q, LieError> {
    let bad = |m: &str| LieError::InvalidInput(format!("bad rational {text:?}: {m}"));
    if text.len() > MAX_RATIONAL_LEN {
        return Err(bad("too long"));
    }
    let (num, den) = match text.split_once('/') {
        Some((n, d)) => (n, Some(d)),
        None => (text, None),
    };
    let digits = |s: &str, signed: bool| {
        let body = if signed { s.strip_prefix('-').unwrap_or(s) } else { s };
        !body.is_empty() && body.bytes().all(|b| b.is_ascii_digit())
    };
    if !digits(num, true) {
        return Err(bad("numerator is not an integer"));
    }
    let n: BigInt = num.parse().map_err(|_| bad("numerator is not an integer"))?;
    let d: BigInt = match den {
        None => BigInt::from(1),
        Some(d) if digits(d, false) => d.parse().map_err(|_| bad("denominator is not an integer"))?,
        Some(_) => return Err(bad("denominator is not a positive integer")),
    };
    if d.is_zero() {
        return Err(bad("zero denominator"));
    }
    Ok(Q::new(n, d))
}

/// Draws rationals `n/d` with `|n| <= max_num` and `d` from `dens`.
#[derive(Clone, Debug)]
pub struct Sampler {
    rng: ChaCha8Rng,
    pub max_num: i64,
    pub dens: Vec<i64>,
}

impl Sampler {
    pub fn new(seed: u64) -> Self {
        Sampler {
            rng: ChaCha8Rng::seed_from_u64(seed),
            max_num: 9,
            dens: vec![1, 2, 3],
        }
    }

    pub fn rational(&mut self) -> Q {
        let n = self.rng.gen_range(-self.max_num..=self.max_num);
        let d = self.dens[self.rng.gen_range(0..self.dens.len())];
        Q::new(BigInt::from(n), BigInt::from(d))
    }

    pub fn nonzero(&mut self) -> Q {
        loop {
            let x = self.rational();
            if !x.is_zero() {
                return x;
            }
        }
    }

    pub fn vector(&mut self, len: usize) -> Vec<Q> {
        (0..len).map(|_| self.rational()).collect()
    }

    /// Seed for an independent sub-stream.
    pub fn fork(&mut self) -> u64 {
        self.rng.gen()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NamedCheck {
    pub name: String,
    pub passed: bool,
    pub samples: usize,
    pub mismatches: usize,
    /// Sample inputs in `p/q` form.
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub points: Vec<Vec<String>>,
    /// Exact quantities worth reading off (ranks, dimensions, codimensions).
    #[serde(skip_serializing_if = "BTreeMap::is_empty")]
    pub values: BTreeMap<String, String>,
    /// First few failing cases.
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub witnesses: Vec<String>,
}

const MAX_WITNESSES: usize = 5;

impl NamedCheck {
    pub fn new(name: &str) -> Self {
        NamedCheck {
            name: name.into(),
            passed: true,
            samples: 0,
            mismatches: 0,
            points: Vec::new(),
            values: BTreeMap::new(),
            witnesses: Vec::new(),
        }
    }

    /// Records one sample and whether it passed.
    pub fn sample(&mut self, point: &[Q], ok: bool, witness: impl FnOnce() -> String) {
        self.samples += 1;
        self.points.push(format_vec(point));
        if !ok {
            self.passed = false;
            self.mismatches += 1;
            if self.witnesses.len() < MAX_WITNESSES {
                self.witnesses.push(witness());
            }
        }
    }

    /// Records a fixed expectation.
    pub fn expect(&mut self, key: &str, got: impl ToString, want: impl ToString) {
        let (g, w) = (got.to_string(), want.to_string());
        if g != w {
            self.passed = false;
            self.mismatches += 1;
            if self.witnesses.len() < MAX_WITNESSES {
                self.witnesses.push(format!("{key}: got {g}, expected {w}"));
            }
        }
        self.values.insert(key.into(), g);
    }

    pub fn value(&mut self, key: &str, v: impl ToString) {
        self.values.insert(key.into(), v.to_string());
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckReport {
    pub family: String,
    pub operation: String,
    pub seed: u64,
    pub trials: usize,
    pub checks: Vec<NamedCheck>,
    pub passed: bool,
}

impl CheckReport {
    pub fn new(family: &str, operation: &str, seed: u64, trials: usize, checks: Vec<NamedCheck>) -> Self {
        let passed = checks.iter().all(|c| c.passed);
        CheckReport {
            family: family.into(),
            operation: operation.into(),
            seed,
            trials,
            checks,
            passed,
        }
    }

    pub fn check(&self, name: &str) -> Option<&NamedCheck> {
        self.checks.iter().find(|c| c.name == name)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lie::qmat::qf;

    #[test]
    fn rationals_parse_strictly() {
        assert_eq!(parse_rational("-3/6").unwrap(), qf(-1, 2));
        assert_eq!(parse_rational("7").unwrap(), qf(7, 1));
        for bad in ["", "-", "1/0", "1/-2", "+1", "1.5", "a", "1/", "/2", "1/2/3", " 1"] {
            assert!(parse_rational(bad).is_err(), "{bad:?}");
        }
        assert!(parse_rational(&"9".repeat(300)).is_err());
    }

    #[test]
    fn sampler_is_reproducible() {
        let mut a = Sampler::new(5);
        let mut b = Sampler::new(5);
        assert_eq!(a.vector(10), b.vector(10));
        let mut c = Sampler::new(5);
        for _ in 0..200 {
            let x = c.rational();
            assert!(x.numer().magnitude() <= &9u32.into());
        }
    }

    #[test]
    fn failed_samples_keep_witnesses() {
        let mut c = NamedCheck::new("x");
        c.sample(&[qf(1, 2)], true, String::new);
        c.sample(&[qf(1, 3)], false, || "bad".into());
        assert!(!c.passed);
        assert_eq!((c.samples, c.mismatches), (2, 1));
        assert_eq!(c.points[1], vec!["1/3".to_string()]);
    }
}
