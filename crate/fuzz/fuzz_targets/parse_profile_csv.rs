#![no_main]

use fglab::negligibility::CoverageProfile;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    if let Ok(profile) = CoverageProfile::read_csv(data) {
        let text = profile.to_csv_string();
        let again: CoverageProfile = text.parse().expect("written profile parses");
        assert_eq!(again.to_csv_string(), text);
    }
});
