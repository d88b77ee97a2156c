#![no_main]

use bernstein_decay::report::parse_csv;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(table) = parse_csv(text) {
        for name in table.headers.iter().skip(2) {
            let _ = table.series(name);
        }
    }
});
