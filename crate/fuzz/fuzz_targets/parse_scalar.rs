#![no_main]

use ciperiod_core::superalgebra::scalar::{format_scalar, parse_scalar};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    if let Ok(s) = std::str::from_utf8(data) {
        if let Ok(q) = parse_scalar(s) {
            assert_eq!(parse_scalar(&format_scalar(&q)).unwrap(), q);
        }
    }
});
