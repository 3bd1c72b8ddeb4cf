#![no_main]

use hgpt_core::polyalg::parse_polynomial_json;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(p) = parse_polynomial_json(text) {
        let json = serde_json::to_string(&p.to_json_terms()).unwrap();
        assert_eq!(parse_polynomial_json(&json).unwrap(), p);
    }
});
