//! Whether conjugacy classes meet the non-primitive families of subgroups.

use std::collections::{BTreeSet, HashMap};

use serde::Serialize;

use crate::catalog::Catalog;
use crate::error::{Error, Result};
use crate::partition::Partition;
use crate::perm::{closure, ClassLabel, GroupKind, Permutation};

/// Smallest `1 ≤ i ≤ ⌊n/2⌋` that is a partial sum of both types.
pub fn common_intransitive(t1: &Partition, t2: &Partition) -> Result<Option<usize>> {
    if t1.n() != t2.n() {
        return Err(Error::DegreeMismatch(t1.n(), t2.n()));
    }
    let mut s = t1.partial_sums();
    s.intersect_with(&t2.partial_sums());
    let found = s.iter().find(|&i| i >= 1 && i <= t1.n() / 2);
    Ok(found)
}

pub fn shares_intransitive(t1: &Partition, t2: &Partition) -> Result<bool> {
    common_intransitive(t1, t2).map(|o| o.is_some())
}

pub fn proper_divisors(n: usize) -> Vec<usize> {
    (2..n).filter(|m| n % m == 0).collect()
}

/// Whether some element of `S_m ≀ S_{n/m}` (imprimitive action) has type `t`.
///
/// An element permutes the blocks; a block cycle of length `d` carries parts
/// `d·π_j` where `π` is a partition of `m`. So the parts must split into
/// groups, each with a common divisor `d` whose quotients sum to `m`, and the
/// `d` values summing to `n/m`.
pub fn wreath_member(t: &Partition, m: usize) -> Result<bool> {
    let n = t.n();
    if m <= 1 || m >= n || n % m != 0 {
        return Err(Error::InvalidDivisor(m, n));
    }
    let powers = t.powers();
    let values: Vec<usize> = powers.iter().map(|&(l, _)| l).collect();
    let counts: Vec<u16> = powers.iter().map(|&(_, c)| c as u16).collect();
    let mut w = Wreath { values, m, memo: HashMap::new() };
    Ok(w.solve(counts, n / m))
}

struct Wreath {
    /// Distinct part lengths, decreasing.
    values: Vec<usize>,
    m: usize,
    memo: HashMap<(Vec<u16>, usize), bool>,
}

impl Wreath {
    fn solve(&mut self, counts: Vec<u16>, blocks: usize) -> bool {
        let Some(top) = counts.iter().position(|&c| c > 0) else {
            return blocks == 0;
        };
        if blocks == 1 {
            return true;
        }
        let key = (counts, blocks);
        if let Some(&r) = self.memo.get(&key) {
            return r;
        }
        let (mut counts, _) = key.clone();
        let big = self.values[top];
        let m = self.m;
        let mut found = false;
        for d in (1..=blocks.min(big)).filter(|d| big % d == 0 && big <= d * m) {
            if d == blocks {
                // the group must be everything left
                found = counts.iter().zip(&self.values).all(|(&c, &v)| c == 0 || v % d == 0);
            } else {
                counts[top] -= 1;
                found = self.pick(&mut counts, top, d * m - big, d, blocks - d);
                counts[top] += 1;
            }
            if found {
                break;
            }
        }
        self.memo.insert(key, found);
        found
    }

    /// Chooses further parts (multiples of `d`, index ≥ `i`) summing to `target`,
    /// then recurses on what remains.
    fn pick(&mut self, counts: &mut Vec<u16>, i: usize, target: usize, d: usize, rest: usize) -> bool {
        if target == 0 {
            return self.solve(counts.clone(), rest);
        }
        if i >= counts.len() {
            return false;
        }
        let v = self.values[i];
        if v % d != 0 || v > target || counts[i] == 0 {
            return self.pick(counts, i + 1, target, d, rest);
        }
        let max = (counts[i] as usize).min(target / v);
        for take in (0..=max).rev() {
            counts[i] -= take as u16;
            let ok = self.pick(counts, i + 1, target - take * v, d, rest);
            counts[i] += take as u16;
            if ok {
                return true;
            }
        }
        false
    }
}

/// Smallest proper divisor `m` with both types in `S_m ≀ S_{n/m}`.
pub fn common_imprimitive(t1: &Partition, t2: &Partition) -> Result<Option<usize>> {
    if t1.n() != t2.n() {
        return Err(Error::DegreeMismatch(t1.n(), t2.n()));
    }
    for m in proper_divisors(t1.n()) {
        if wreath_member(t1, m)? && wreath_member(t2, m)? {
            return Ok(Some(m));
        }
    }
    Ok(None)
}

/// Generators of `S_m ≀ S_b` acting on `m·b` points with blocks `{jm..jm+m-1}`.
pub fn wreath_generators(m: usize, b: usize) -> Vec<Permutation> {
    let n = m * b;
    let mut gens = Vec::new();
    if m >= 2 {
        gens.push(Permutation::from_cycles(n, &[(0..m).collect()]).unwrap());
        gens.push(Permutation::from_cycles(n, &[vec![0, 1]]).unwrap());
    }
    if b >= 2 {
        let blockcycle: Vec<Vec<usize>> = (0..m).map(|x| (0..b).map(|j| j * m + x).collect()).collect();
        gens.push(Permutation::from_cycles(n, &blockcycle).unwrap());
        let swap: Vec<Vec<usize>> = (0..m).map(|x| vec![x, m + x]).collect();
        gens.push(Permutation::from_cycles(n, &swap).unwrap());
    }
    gens
}

/// Cycle types of the explicitly enumerated wreath product.
pub fn wreath_types_enumerated(n: usize, m: usize) -> Result<BTreeSet<Partition>> {
    if m <= 1 || m >= n || n % m != 0 {
        return Err(Error::InvalidDivisor(m, n));
    }
    let elems = closure(&wreath_generators(m, n / m), n, 2_000_000)?;
    Ok(elems.iter().map(Permutation::cycle_type).collect())
}

/// Enumeration oracle for [`wreath_member`].
pub fn wreath_member_oracle(t: &Partition, m: usize) -> Result<bool> {
    Ok(wreath_types_enumerated(t.n(), m)?.contains(t))
}

/// The first family found containing both classes.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum SharedFamily {
    Alternating,
    Intransitive(usize),
    Imprimitive(usize),
    Primitive(String),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    NoSharing,
    Shared(SharedFamily),
}

/// Decides whether two classes both meet some proper subgroup, checking
/// parity, intransitive, imprimitive and then primitive families.
///
/// In the alternating group an odd conjugate of a catalogued group swaps the
/// labels of split classes, so a pair also shares it when both flipped labels
/// meet it.
pub fn shares_subgroup(c1: &ClassLabel, c2: &ClassLabel, catalog: &Catalog) -> Result<Verdict> {
    let n = c1.n();
    if c2.n() != n || catalog.degree != n {
        return Err(Error::DegreeMismatch(n, if c2.n() != n { c2.n() } else { catalog.degree }));
    }
    if c1.group != c2.group {
        return Err(Error::Inadmissible("classes of different groups".into()));
    }
    catalog.require_complete()?;
    let (t1, t2) = (&c1.cycle_type, &c2.cycle_type);
    if c1.group == GroupKind::Sym && t1.is_even() && t2.is_even() {
        return Ok(Verdict::Shared(SharedFamily::Alternating));
    }
    if let Some(i) = common_intransitive(t1, t2)? {
        return Ok(Verdict::Shared(SharedFamily::Intransitive(i)));
    }
    if let Some(m) = common_imprimitive(t1, t2)? {
        return Ok(Verdict::Shared(SharedFamily::Imprimitive(m)));
    }
    let (f1, f2) = (flipped(c1), flipped(c2));
    for g in &catalog.groups {
        let fp = &g.fingerprint;
        if (fp.meets(c1) && fp.meets(c2)) || (fp.meets(&f1) && fp.meets(&f2)) {
            return Ok(Verdict::Shared(SharedFamily::Primitive(g.spec.name.clone())));
        }
    }
    Ok(Verdict::NoSharing)
}

fn flipped(c: &ClassLabel) -> ClassLabel {
    c.twin().unwrap_or_else(|| c.clone())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::partition::enumerate_partitions;

    fn pt(s: &str) -> Partition {
        s.parse().unwrap()
    }

    #[test]
    fn intransitive_examples() {
        assert!(shares_intransitive(&pt("1,9"), &pt("1,9")).unwrap());
        for t in enumerate_partitions(8) {
            assert!(!shares_intransitive(&pt("8"), &t).unwrap());
        }
        assert!(!shares_intransitive(&pt("1,5,6"), &pt("3,9")).unwrap());
        assert!(shares_intransitive(&pt("3"), &pt("1,3")).is_err());
    }

    #[test]
    fn wreath_examples() {
        assert!(wreath_member(&pt("2,10"), 2).unwrap());
        assert!(!wreath_member(&pt("3,9"), 2).unwrap());
        assert!(wreath_member(&pt("1^3,2,3,10"), 6).unwrap());
        assert!(wreath_member(&pt("2^3"), 2).unwrap());
        assert!(wreath_member(&pt("6"), 2).unwrap());
        assert!(!wreath_member(&pt("1,5"), 2).unwrap());
        assert!(wreath_member(&pt("6"), 4).is_err());
    }

    #[test]
    fn wreath_oracle_examples() {
        assert!(wreath_member_oracle(&pt("2^3"), 2).unwrap());
        assert!(wreath_member_oracle(&pt("6"), 2).unwrap());
        assert!(!wreath_member_oracle(&pt("1,5"), 2).unwrap());
        let g = closure(&wreath_generators(2, 3), 6, 1000).unwrap();
        assert_eq!(g.len(), 48);
    }

    #[test]
    fn wreath_matches_enumeration_small() {
        for n in [4, 6, 8, 9] {
            for m in proper_divisors(n) {
                let types = wreath_types_enumerated(n, m).unwrap();
                for t in enumerate_partitions(n) {
                    assert_eq!(wreath_member(&t, m).unwrap(), types.contains(&t), "{t:?} m={m}");
                }
            }
        }
    }

    #[test]
    fn two_orbit_criterion() {
        for n in 2..=60 {
            for i in 1..=n / 2 {
                let t = Partition::new(vec![i, n - i]).unwrap();
                for m in proper_divisors(n) {
                    let want = i % m == 0 || i % (n / m) == 0;
                    assert_eq!(wreath_member(&t, m).unwrap(), want, "n={n} i={i} m={m}");
                }
            }
        }
    }

    fn class(s: &str, g: GroupKind, split: crate::perm::Split) -> ClassLabel {
        ClassLabel::new(pt(s), g, split).unwrap()
    }

    #[test]
    fn sharing_examples() {
        use crate::perm::Split;
        let cat = Catalog::get(7).unwrap();
        let c = class("7", GroupKind::Sym, Split::None);
        assert_eq!(shares_subgroup(&c, &c, &cat).unwrap(), Verdict::Shared(SharedFamily::Alternating));
        let c = class("1,6", GroupKind::Sym, Split::None);
        let seven = class("7", GroupKind::Sym, Split::None);
        // odd n-1 cycle and the n-cycle meet AGL(1,7)
        assert!(matches!(shares_subgroup(&c, &seven, &cat).unwrap(), Verdict::Shared(SharedFamily::Primitive(_))));
        let three = class("1^4,3", GroupKind::Alt, Split::None);
        let seven_plus = class("7", GroupKind::Alt, Split::Plus);
        assert_eq!(shares_subgroup(&three, &seven_plus, &cat).unwrap(), Verdict::NoSharing);
        let cat5 = Catalog::get(5).unwrap();
        let p = class("5", GroupKind::Alt, Split::Plus);
        assert!(matches!(shares_subgroup(&p, &p.twin().unwrap(), &cat5).unwrap(), Verdict::Shared(_)));
        assert!(shares_subgroup(&p, &seven, &cat5).is_err());
    }

    #[test]
    fn half_block_imprimitive_sharing() {
        use crate::catalog::EXACT_DEGREES;
        use crate::perm::class_labels;
        for n in EXACT_DEGREES.into_iter().filter(|n| n % 2 == 0 && *n <= 12) {
            let cat = Catalog::get(n).unwrap();
            for g in [GroupKind::Sym, GroupKind::Alt] {
                let labels = class_labels(n, g);
                for z in labels.iter().filter(|c| c.cycle_type.is_partial_sum(n / 2)) {
                    for w in labels.iter().filter(|c| c.cycle_type.parts().iter().all(|p| p % 2 == 0)) {
                        assert_ne!(shares_subgroup(z, w, &cat).unwrap(), Verdict::NoSharing, "{z:?} {w:?}");
                        assert!(wreath_member(&z.cycle_type, n / 2).unwrap() && wreath_member(&w.cycle_type, n / 2).unwrap());
                    }
                }
            }
        }
    }

    #[test]
    fn sharing_is_symmetric() {
        use crate::perm::class_labels;
        for n in [6, 8, 9, 10] {
            let cat = Catalog::get(n).unwrap();
            for g in [GroupKind::Sym, GroupKind::Alt] {
                let labels = class_labels(n, g);
                for a in &labels {
                    for b in &labels {
                        let ab = shares_subgroup(a, b, &cat).unwrap() == Verdict::NoSharing;
                        let ba = shares_subgroup(b, a, &cat).unwrap() == Verdict::NoSharing;
                        assert_eq!(ab, ba, "{a:?} {b:?}");
                    }
                }
            }
        }
    }

    #[test]
    fn large_witness_is_fast() {
        let t = Partition::from_powers(&[(1, 33), (35, 1), (60, 1), (64, 26), (54, 1), (36, 12), (222, 1)]).unwrap();
        for m in proper_divisors(t.n()) {
            wreath_member(&t, m).unwrap();
        }
    }
}
