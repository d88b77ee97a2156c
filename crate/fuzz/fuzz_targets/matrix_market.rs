#![no_main]

use bernstein_decay::graphs::{parse_matrix_market, to_matrix_market};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(a) = parse_matrix_market(text) {
        let again = parse_matrix_market(&to_matrix_market(&a, None)).expect("written matrix must parse");
        assert_eq!(a, again);
    }
});
