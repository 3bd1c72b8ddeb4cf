#![no_main]

use hgpt_core::polyalg::parse_polynomial;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(p) = parse_polynomial(text) {
        // printing and reparsing is the identity
        let again = parse_polynomial(&p.to_string()).expect("printed polynomial parses");
        assert_eq!(again, p);
    }
});
