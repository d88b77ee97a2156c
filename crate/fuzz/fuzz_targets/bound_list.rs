#![no_main]

use bernstein_decay::bounds::BoundKind;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(kinds) = BoundKind::parse_list(text) {
        let joined: Vec<&str> = kinds.iter().map(|k| k.name()).collect();
        assert_eq!(
            BoundKind::parse_list(&joined.join(",")).expect("names must parse"),
            kinds
        );
    }
});
