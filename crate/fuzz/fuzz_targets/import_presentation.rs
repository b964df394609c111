#![no_main]

use ciperiod_core::cohomology::QuotientPresentation;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    if let Ok(s) = std::str::from_utf8(data) {
        let _ = QuotientPresentation::from_json(s);
    }
});
