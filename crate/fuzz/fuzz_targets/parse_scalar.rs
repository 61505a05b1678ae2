#![no_main]

use gale_core::FieldSpec;
use libfuzzer_sys::fuzz_target;

// first byte picks the field, the rest is the scalar text
const PRIMES: [u64; 5] = [2, 3, 7, 101, 2_147_483_647];

fuzz_target!(|data: &[u8]| {
    let Some((&pick, rest)) = data.split_first() else {
        return;
    };
    let Ok(text) = std::str::from_utf8(rest) else {
        return;
    };
    let field = match pick as usize % (PRIMES.len() + 1) {
        0 => FieldSpec::Rationals,
        i => FieldSpec::prime(PRIMES[i - 1]).unwrap(),
    };
    if let Ok(x) = field.parse_scalar(text) {
        assert_eq!(x.field(), field);
        assert_eq!(field.parse_scalar(&x.to_string()).unwrap(), x);
    }
});
