#![no_main]

use bernstein_decay::report::FunctionSpec;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(f) = text.parse::<FunctionSpec>() {
        let again: FunctionSpec = f.to_string().parse().expect("displayed descriptor must parse");
        assert_eq!(f, again);
    }
});
