#![cfg(unix)]

use magc_core::complexity::{k_upper_bound, CompressorAdapter, Raw, SubprocessAdapter};
use magc_core::{BitString, MagError};

fn cmd(parts: &[&str]) -> Vec<String> {
    parts.iter().map(|s| s.to_string()).collect()
}

#[test]
fn identity_command_round_trips() {
    let cat = SubprocessAdapter::new("cat", cmd(&["cat"]), cmd(&["cat"])).unwrap();
    let x: BitString = "1011001110001".parse().unwrap();
    let y = cat.compress(&x).unwrap();
    assert_eq!(y, x);
    assert_eq!(cat.decompress(&y).unwrap(), x);
    let est = k_upper_bound(&x, &[Box::new(cat), Box::new(Raw)]).unwrap();
    assert_eq!(est.bits, x.len() + 8);
    assert_eq!(est.adapter, "cat");
}

#[test]
fn failing_commands_are_disqualified() {
    let bad = SubprocessAdapter::new("false", cmd(&["false"]), cmd(&["false"])).unwrap();
    let x: BitString = "0110".parse().unwrap();
    assert!(matches!(bad.compress(&x), Err(MagError::Adapter { .. })));
    let missing = SubprocessAdapter::new("missing", cmd(&["/nonexistent/compressor"]), cmd(&["cat"])).unwrap();
    assert!(missing.compress(&x).is_err());
    let est = k_upper_bound(&x, &[Box::new(bad), Box::new(missing), Box::new(Raw)]).unwrap();
    assert_eq!(est.adapter, "raw");
    assert_eq!(est.disqualified, ["false", "missing"]);
    assert!(SubprocessAdapter::new("empty", vec![], cmd(&["cat"])).is_err());
}
