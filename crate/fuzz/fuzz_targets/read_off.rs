#![no_main]

use equiproj::io::{read_off, write_off};
use equiproj::Tolerance;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    let Ok(p) = read_off(text, Tolerance::default()) else { return };
    // anything we accept must survive our own writer
    let again = read_off(&write_off(&p), Tolerance::default()).expect("re-read own output");
    assert_eq!(again, p);
});
