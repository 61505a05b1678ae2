#![no_main]

use gale_core::format::{parse_configuration, write_configuration};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    if let Ok(text) = std::str::from_utf8(data) {
        if let Ok(m) = parse_configuration(text) {
            // whatever parses must survive a write/parse round trip
            assert_eq!(parse_configuration(&write_configuration(&m, &[])).unwrap(), m);
        }
    }
});
