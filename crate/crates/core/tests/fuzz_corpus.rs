//! Replays the checked-in fuzz seeds through the same invariants the fuzz
//! targets assert.

use std::path::PathBuf;

use tqftwb_core::cob2::{normalize, parse_and_check, parse_term};
use tqftwb_core::groupoid::AbelianModel;
use tqftwb_core::lie::parse_rational;
use tqftwb_core::lie::qmat::format_q;

fn seeds(target: &str) -> Vec<String> {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../../fuzz/corpus")
        .join(target);
    let mut out: Vec<String> = std::fs::read_dir(&dir)
        .unwrap_or_else(|e| panic!("{}: {e}", dir.display()))
        .filter_map(|e| std::fs::read(e.ok()?.path()).ok())
        .filter_map(|b| String::from_utf8(b).ok())
        .collect();
    out.sort();
    assert!(!out.is_empty(), "no seeds for {target}");
    out
}

#[test]
fn term_seeds() {
    let mut accepted = 0;
    for text in seeds("parse_term") {
        match parse_and_check(&text) {
            Ok((term, sig)) => {
                accepted += 1;
                let nf = normalize(&term).unwrap();
                assert_eq!(nf.signature(), sig);
                assert_eq!(normalize(&parse_term(&term.to_string()).unwrap()).unwrap(), nf);
            }
            Err(e) => assert!(!e.to_string().is_empty()),
        }
    }
    assert!(accepted > 0);
}

#[test]
fn model_seeds() {
    let mut accepted = 0;
    for text in seeds("parse_model") {
        if let Ok(m) = AbelianModel::from_json(&text) {
            accepted += 1;
            assert_eq!(AbelianModel::from_json(&m.to_json().to_string()).unwrap(), m);
        }
    }
    assert!(accepted > 0);
}

#[test]
fn rational_seeds() {
    let mut accepted = 0;
    for text in seeds("parse_rational") {
        if let Ok(x) = parse_rational(&text) {
            accepted += 1;
            assert_eq!(parse_rational(&format_q(&x)).unwrap(), x);
        }
    }
    assert!(accepted > 0);
}
