#![no_main]

use libfuzzer_sys::fuzz_target;
use tqftwb_core::groupoid::AbelianModel;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(model) = AbelianModel::from_json(text) {
        let back = AbelianModel::from_json(&model.to_json().to_string()).expect("serialized model reloads");
        assert_eq!(back, model);
    }
});
