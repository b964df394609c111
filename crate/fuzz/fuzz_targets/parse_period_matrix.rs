#![no_main]

use ciperiod_core::deformation::PeriodMatrix;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    if let Ok(s) = std::str::from_utf8(data) {
        if let Ok(m) = PeriodMatrix::from_json(s) {
            let _ = PeriodMatrix::from_json(&m.to_json().to_string()).unwrap();
        }
    }
});
