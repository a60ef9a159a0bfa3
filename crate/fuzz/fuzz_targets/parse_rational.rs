#![no_main]

use libfuzzer_sys::fuzz_target;
use tqftwb_core::lie::parse_rational;
use tqftwb_core::lie::qmat::format_q;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(x) = parse_rational(text) {
        assert_eq!(parse_rational(&format_q(&x)).expect("formatted value parses"), x);
    }
});
