#![no_main]

use invgraph::catalog::{parse_cache, render_cache};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(s) = std::str::from_utf8(data) else { return };
    if let Ok(c) = parse_cache(s) {
        let again = parse_cache(&render_cache(&c)).expect("rendered cache parses");
        assert_eq!(c, again);
    }
});
