#![no_main]

use invgraph::Partition;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(s) = std::str::from_utf8(data) else { return };
    if let Ok(p) = s.parse::<Partition>() {
        let again: Partition = p.to_string().parse().expect("display output parses");
        assert_eq!(p, again);
        assert_eq!(p.parts().iter().sum::<usize>(), p.n());
    }
});
