//! Anything the parser accepts must serialize to text the parser accepts
//! again, and that second rendering must be a fixed point.

#![no_main]

use libfuzzer_sys::fuzz_target;
use loophom::parse::{load_fixture, serialize_fixture};

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    let Ok(file) = load_fixture(text) else {
        return;
    };
    let rendered = serialize_fixture(&file);
    let reparsed = load_fixture(&rendered).expect("serializer output must reparse");
    assert_eq!(
        serialize_fixture(&reparsed),
        rendered,
        "one round trip must reach a fixed point"
    );
});
