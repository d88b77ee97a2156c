#![no_main]

use bernstein_decay::report::{check_domination, DecayReport};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(report) = DecayReport::from_json(text) {
        let _ = check_domination(&report);
        let _ = report.to_csv();
    }
});
