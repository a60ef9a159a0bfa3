#![no_main]

use libfuzzer_sys::fuzz_target;
use tqftwb_core::cob2::{normalize, parse_and_check, parse_term};

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok((term, sig)) = parse_and_check(text) {
        let nf = normalize(&term).expect("checked terms normalize");
        assert_eq!(nf.signature(), sig);
        // printing must give back an equivalent term
        let again = parse_term(&term.to_string()).expect("printed term parses");
        assert_eq!(normalize(&again).expect("normalizes"), nf);
    } else {
        let _ = parse_term(text);
    }
});
