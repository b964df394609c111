#![no_main]

use ciperiod_core::deformation::BaseChange;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    if let Ok(s) = std::str::from_utf8(data) {
        let _ = BaseChange::from_json(s);
    }
});
