//! The parser must never panic, loop, or crash on arbitrary input: it
//! either produces a file or a positioned error.

#![no_main]

use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    if let Ok(text) = std::str::from_utf8(data) {
        let _ = loophom::parse::load_fixture(text);
    }
});
