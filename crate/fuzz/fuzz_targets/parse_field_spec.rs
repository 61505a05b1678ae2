#![no_main]

use gale_core::format::parse_field_spec;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    if let Ok(text) = std::str::from_utf8(data) {
        if let Ok(f) = parse_field_spec(text) {
            assert_eq!(parse_field_spec(&f.to_string()).unwrap(), f);
        }
    }
});
