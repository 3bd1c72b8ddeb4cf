#![no_main]

use hgpt_core::hgpt::{blocks_to_json, parse_hgpt_blocks};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(blocks) = parse_hgpt_blocks(text) {
        let again = parse_hgpt_blocks(&blocks_to_json(&blocks).to_string()).expect("emitted blocks parse");
        assert_eq!(again, blocks);
    }
});
