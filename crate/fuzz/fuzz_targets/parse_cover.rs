#![no_main]

use fglab::negligibility::{format_pairs, parse_pairs};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(pairs) = parse_pairs(text) {
        assert_eq!(parse_pairs(&format_pairs(&pairs)).unwrap(), pairs);
    }
});
