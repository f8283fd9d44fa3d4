#![no_main]

use fglab::word::RawSequence;
use fglab::Word;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    let Ok(raw) = RawSequence::parse(text) else { return };
    // Keep the rank small enough that verbose round trips stay cheap.
    if raw.max_generator() > 64 {
        return;
    }
    let w: Word = text.parse().expect("parsed sequence reduces");
    assert_eq!(Word::parse(&w.to_string(), w.rank()).unwrap(), w);
    assert_eq!(Word::parse(&w.to_verbose_string(), w.rank()).unwrap(), w);
});
