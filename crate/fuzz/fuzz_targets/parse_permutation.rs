#![no_main]

use invgraph::Permutation;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Some((&n, rest)) = data.split_first() else { return };
    let Ok(s) = std::str::from_utf8(rest) else { return };
    let n = usize::from(n % 64);
    if let Ok(p) = Permutation::parse_cycles(s, n) {
        assert_eq!(p.degree(), n);
        assert_eq!(p.cycle_type().n(), n);
        assert!((&p * &p.inverse()).is_identity());
    }
});
