//! Replays the checked-in fuzz seeds through the round-trip properties the
//! fuzz targets assert, so they are exercised without libFuzzer.

use std::fs;
use std::path::PathBuf;

use hgpt_core::hgpt::{blocks_to_json, parse_hgpt_blocks};
use hgpt_core::polyalg::{parse_polynomial, parse_polynomial_json};
use hgpt_core::symgroups::{build_group, GroupSpec};

fn seeds(target: &str) -> Vec<(String, String)> {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fuzz/corpus").join(target);
    let mut out: Vec<(String, String)> = fs::read_dir(&dir)
        .unwrap_or_else(|e| panic!("{}: {e}", dir.display()))
        .map(|e| {
            let path = e.unwrap().path();
            let name = path.file_name().unwrap().to_string_lossy().into_owned();
            (name, fs::read_to_string(&path).unwrap())
        })
        .collect();
    out.sort();
    assert!(!out.is_empty());
    out
}

#[test]
fn polynomial_text_seeds() {
    let mut parsed = 0;
    for (name, text) in seeds("parse_polynomial") {
        if let Ok(p) = parse_polynomial(&text) {
            let again = parse_polynomial(&p.to_string()).unwrap_or_else(|e| panic!("{name}: {e}"));
            assert_eq!(again, p, "{name}");
            parsed += 1;
        }
    }
    assert!(parsed >= 5);
}

#[test]
fn polynomial_json_seeds() {
    let mut parsed = 0;
    for (name, text) in seeds("parse_polynomial_json") {
        if let Ok(p) = parse_polynomial_json(&text) {
            let json = serde_json::to_string(&p.to_json_terms()).unwrap();
            assert_eq!(parse_polynomial_json(&json).unwrap(), p, "{name}");
            parsed += 1;
        }
    }
    assert!(parsed >= 3);
}

#[test]
fn group_name_seeds() {
    let mut parsed = 0;
    for (name, text) in seeds("parse_group_name") {
        if let Ok(spec) = text.parse::<GroupSpec>() {
            assert_eq!(spec.to_string().parse::<GroupSpec>().unwrap(), spec, "{name}");
            // a well-formed type-3 name may still pair groups that are not index two
            if let (true, Ok(g)) = (spec.order() <= 64, build_group(spec)) {
                assert_eq!(g.order(), spec.order(), "{name}");
            }
            parsed += 1;
        }
    }
    assert!(parsed >= 14);
}

#[test]
fn hgpt_block_seeds() {
    let mut parsed = 0;
    for (name, text) in seeds("parse_hgpt_blocks") {
        if let Ok(blocks) = parse_hgpt_blocks(&text) {
            let again = parse_hgpt_blocks(&blocks_to_json(&blocks).to_string()).unwrap();
            assert_eq!(again, blocks, "{name}");
            parsed += 1;
        }
    }
    assert_eq!(parsed, 2);
}
