//! Replays the fuzz corpus through the parser properties the fuzz targets assert.

use std::fs;
use std::path::PathBuf;

use invgraph::catalog::{parse_cache, parse_generator_file, render_cache, GENERATOR_DATA};
use invgraph::{Partition, Permutation};
use proptest::prelude::*;

fn corpus(target: &str) -> Vec<Vec<u8>> {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fuzz/corpus").join(target);
    let mut files: Vec<_> = fs::read_dir(&dir).unwrap().map(|e| e.unwrap().path()).collect();
    files.sort();
    assert!(!files.is_empty(), "{}", dir.display());
    files.into_iter().map(|p| fs::read(p).unwrap()).collect()
}

fn check_partition(data: &[u8]) {
    let Ok(s) = std::str::from_utf8(data) else { return };
    if let Ok(p) = s.parse::<Partition>() {
        assert_eq!(p, p.to_string().parse::<Partition>().unwrap());
        assert_eq!(p.parts().iter().sum::<usize>(), p.n());
    }
}

fn check_permutation(data: &[u8]) {
    let Some((&n, rest)) = data.split_first() else { return };
    let Ok(s) = std::str::from_utf8(rest) else { return };
    let n = usize::from(n % 64);
    if let Ok(p) = Permutation::parse_cycles(s, n) {
        assert_eq!(p.degree(), n);
        assert!((&p * &p.inverse()).is_identity());
    }
}

fn check_cache(data: &[u8]) {
    let Ok(s) = std::str::from_utf8(data) else { return };
    if let Ok(c) = parse_cache(s) {
        assert_eq!(parse_cache(&render_cache(&c)).unwrap(), c);
    }
}

#[test]
fn partition_seeds() {
    let seeds = corpus("parse_partition");
    assert!(seeds.iter().any(|s| std::str::from_utf8(s).unwrap().parse::<Partition>().is_ok()));
    seeds.iter().for_each(|s| check_partition(s));
}

#[test]
fn permutation_seeds() {
    corpus("parse_permutation").iter().for_each(|s| check_permutation(s));
}

#[test]
fn generator_file_seeds() {
    let mut parsed = 0;
    for s in corpus("parse_generator_file") {
        if let Ok(specs) = parse_generator_file(std::str::from_utf8(&s).unwrap()) {
            parsed += 1;
            assert!(specs.iter().all(|g| g.generators.iter().all(|x| x.degree() == g.degree)));
        }
    }
    assert!(parsed >= 2);
    assert!(!parse_generator_file(GENERATOR_DATA).unwrap().is_empty());
}

#[test]
fn cache_seeds() {
    let seeds = corpus("parse_fingerprint_cache");
    assert!(seeds.iter().any(|s| parse_cache(std::str::from_utf8(s).unwrap()).is_ok()));
    seeds.iter().for_each(|s| check_cache(s));
}

proptest! {
    #[test]
    fn arbitrary_bytes_never_panic(data in proptest::collection::vec(any::<u8>(), 0..64)) {
        check_partition(&data);
        check_permutation(&data);
        check_cache(&data);
        if let Ok(s) = std::str::from_utf8(&data) {
            let _ = parse_generator_file(s);
        }
    }

    #[test]
    fn partition_like_strings_never_panic(s in "[0-9,^() ]{0,24}") {
        check_partition(s.as_bytes());
    }
}
