#![no_main]

use ciperiod_cli::JobConfig;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    if let Ok(s) = std::str::from_utf8(data) {
        if let Ok(c) = JobConfig::from_json(s) {
            let _ = c.problem();
        }
    }
});
