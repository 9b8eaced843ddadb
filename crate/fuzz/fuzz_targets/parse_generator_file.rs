#![no_main]

use invgraph::catalog::parse_generator_file;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(s) = std::str::from_utf8(data) else { return };
    if let Ok(specs) = parse_generator_file(s) {
        for spec in specs {
            assert!(spec.generators.iter().all(|g| g.degree() == spec.degree));
        }
    }
});
