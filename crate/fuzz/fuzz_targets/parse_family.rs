#![no_main]

use fglab::families::FamilySpec;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(spec) = text.parse::<FamilySpec>() {
        let again: FamilySpec = spec.to_string().parse().expect("canonical text parses");
        assert_eq!(again, spec);
    }
});
