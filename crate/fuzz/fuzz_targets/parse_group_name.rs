#![no_main]

use hgpt_core::symgroups::{build_group, GroupSpec};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(spec) = text.parse::<GroupSpec>() {
        assert_eq!(spec.to_string().parse::<GroupSpec>().unwrap(), spec);
        if let (true, Ok(g)) = (spec.order() <= 64, build_group(spec)) {
            assert_eq!(g.order(), spec.order());
        }
    }
});
