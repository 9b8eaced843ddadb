//! Necessary conditions for membership in primitive groups, taken from the
//! classifications of primitive groups containing a cycle or an element with
//! two cycles. Every predicate answers "excluded"; `false` never asserts
//! membership.

use std::collections::{BTreeMap, BTreeSet, HashSet};
use std::fmt;

use serde::Serialize;

use crate::bitset::BitSet;
use crate::error::{Error, Result};
use crate::field::{is_prime, prime_power};
use crate::partition::{gcd, Partition};

/// One case of the cycle or two-cycle classification, with the parameters
/// that make its arithmetic conditions hold.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FamilyTag {
    pub case_id: &'static str,
    pub parameters: BTreeMap<&'static str, usize>,
}

impl FamilyTag {
    fn new(case_id: &'static str, params: &[(&'static str, usize)]) -> Self {
        FamilyTag { case_id, parameters: params.iter().copied().collect() }
    }

    pub fn param(&self, key: &str) -> Option<usize> {
        self.parameters.get(key).copied()
    }
}

impl fmt::Display for FamilyTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.case_id)?;
        if !self.parameters.is_empty() {
            let ps: Vec<String> = self.parameters.iter().map(|(k, v)| format!("{k}={v}")).collect();
            write!(f, "({})", ps.join(","))?;
        }
        Ok(())
    }
}

/// Some power of `t` is a single nontrivial cycle fixing at least 3 points.
///
/// That happens exactly when a part `l ≥ 2` occurs once, is coprime to every
/// other part, and `n − l ≥ 3`: raise to the lcm of the other parts.
pub fn jordan_excludes(t: &Partition) -> bool {
    let parts = t.parts();
    parts.iter().enumerate().any(|(i, &l)| {
        l >= 2
            && t.multiplicity(l) == 1
            && t.n() - l >= 3
            && parts.iter().enumerate().all(|(j, &o)| j == i || gcd(l, o) == 1)
    })
}

/// The divisibility-closed sets of distinct parts reachable as "parts dividing
/// `k`" for some power `k`, with the fixed-point count of that power.
fn power_profiles(t: &Partition) -> Vec<(BitSet, usize)> {
    let powers = t.powers();
    let v: Vec<usize> = powers.iter().map(|&(l, _)| l).collect();
    let factors: Vec<Vec<(usize, u32)>> = v.iter().map(|&l| factorize(l)).collect();
    let closed = |lcm: &BTreeMap<usize, u32>| {
        BitSet::from_iter(
            v.len(),
            (0..v.len()).filter(|&j| factors[j].iter().all(|(p, e)| lcm.get(p).is_some_and(|x| x >= e))),
        )
    };
    let fixed = |set: &BitSet| set.iter().map(|j| powers[j].0 * powers[j].1).sum::<usize>();

    let start = BTreeMap::new();
    let first = closed(&start);
    let mut seen: HashSet<BitSet> = HashSet::from([first.clone()]);
    let mut stack = vec![(start, first)];
    let mut out = Vec::new();
    while let Some((lcm, set)) = stack.pop() {
        for j in 0..v.len() {
            if set.contains(j) {
                continue;
            }
            let mut next = lcm.clone();
            for &(p, e) in &factors[j] {
                let x = next.entry(p).or_insert(0);
                *x = (*x).max(e);
            }
            let s = closed(&next);
            if seen.insert(s.clone()) {
                stack.push((next, s));
            }
        }
        let f = fixed(&set);
        out.push((set, f));
    }
    out
}

fn factorize(mut l: usize) -> Vec<(usize, u32)> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= l {
        if l % p == 0 {
            let mut e = 0;
            while l % p == 0 {
                l /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += 1;
    }
    if l > 1 {
        out.push((l, 1));
    }
    out
}

/// Fixed-point counts of all powers of an element of type `t`, the identity
/// power included.
pub fn power_fixed_counts(t: &Partition) -> BTreeSet<usize> {
    power_profiles(t).into_iter().map(|(_, f)| f).collect()
}

/// Fixed-point counts of the nonidentity powers.
pub fn nonidentity_fixed_counts(t: &Partition) -> BTreeSet<usize> {
    let distinct = t.powers().len();
    power_profiles(t).into_iter().filter(|(s, _)| s.count() < distinct).map(|(_, f)| f).collect()
}

/// Cases of the classification of primitive groups containing a cycle that
/// fixes `k` points, whose arithmetic conditions hold at `(n, k)`.
pub fn jones_families(n: usize, k: usize) -> Vec<FamilyTag> {
    let mut out = Vec::new();
    if n < 3 || k + 2 > n {
        return out;
    }
    match k {
        0 => {
            if is_prime(n) {
                out.push(FamilyTag::new("J-1a", &[("p", n)]));
            }
            for (q, d) in projective_cardinality_solutions(n) {
                out.push(FamilyTag::new("J-1b", &[("q", q), ("d", d)]));
            }
            if n == 11 || n == 23 {
                out.push(FamilyTag::new("J-1c", &[]));
            }
        }
        1 => {
            for (q, d) in prime_power_roots(n) {
                out.push(FamilyTag::new("J-2a", &[("q", q), ("d", d)]));
            }
            if n >= 6 && is_prime(n - 1) {
                out.push(FamilyTag::new("J-2b", &[("p", n - 1)]));
            }
            if n == 12 || n == 24 {
                out.push(FamilyTag::new("J-2c", &[]));
            }
        }
        2 => {
            if prime_power(n - 1).is_some() {
                out.push(FamilyTag::new("J-3", &[("q", n - 1)]));
            }
        }
        _ => {}
    }
    out
}

/// All `(q, d)` with `q` a prime power and `n = q^d`, `d ≥ 1`, by `d` descending.
fn prime_power_roots(n: usize) -> Vec<(usize, usize)> {
    let Some((p, m)) = prime_power(n) else { return Vec::new() };
    (1..=m).filter(|d| m % d == 0).map(|d| (p.pow(d as u32), m / d)).collect()
}

/// Cases of the classification of primitive groups containing an element with
/// exactly two cycles, of lengths `k` and `n − k ≥ k`.
pub fn mueller_families(n: usize, k: usize) -> Vec<FamilyTag> {
    let mut out = Vec::new();
    if k == 0 || 2 * k > n {
        return out;
    }
    let mut push = |id, ps: &[(&'static str, usize)]| out.push(FamilyTag::new(id, ps));
    if let Some((p, m)) = prime_power(n) {
        if k == 1 {
            push("M-1a", &[("p", p), ("m", m)]);
        }
        if k == p {
            push("M-1b", &[("p", p), ("m", m)]);
        }
        if m == 2 && k == p && p > 2 {
            push("M-1c", &[("p", p)]);
        }
        if p == 2 && k == 4 {
            push("M-1d", &[("m", m)]);
        }
    }
    let sporadic_affine: [(&str, usize, &[usize]); 7] = [
        ("M-1e-i", 4, &[2]),
        ("M-1e-ii", 8, &[2]),
        ("M-1e-iii", 9, &[3]),
        ("M-1e-iv", 16, &[8]),
        ("M-1e-v", 16, &[4, 8]),
        ("M-1e-vi", 16, &[2, 8]),
        ("M-1e-vii", 25, &[5]),
    ];
    for (id, deg, ks) in sporadic_affine {
        if n == deg && ks.contains(&k) {
            push(id, &[]);
        }
    }
    if let Some(r) = exact_sqrt(n).filter(|&r| r > 1) {
        if k % r == 0 && gcd(r, k / r) == 1 {
            push("M-2a", &[("r", r), ("a", k / r)]);
        }
        if r >= 6 && is_prime(r - 1) && k == r {
            push("M-2b", &[("p", r - 1)]);
        }
    }
    if n == 10 && k == 5 {
        push("M-3b", &[]);
    }
    if k == 1 && n >= 3 && is_prime(n - 1) {
        push("M-3c", &[("p", n - 1)]);
    }
    if n % 2 == 0 && k == n / 2 {
        for (q, m) in projective_cardinality_solutions(n) {
            if q % 2 == 1 && m % 2 == 0 {
                push("M-3d", &[("q", q), ("m", m)]);
            }
        }
    }
    let sporadic: [(&str, usize, &[usize]); 6] = [
        ("M-3e", 10, &[2]),
        ("M-3f", 21, &[7]),
        ("M-3g", 12, &[1, 4]),
        ("M-3h", 12, &[1, 2, 4, 6]),
        ("M-3i", 22, &[11]),
        ("M-3j", 24, &[1, 3, 12]),
    ];
    for (id, deg, ks) in sporadic {
        if n == deg && ks.contains(&k) {
            push(id, &[]);
        }
    }
    out
}

pub fn exact_sqrt(n: usize) -> Option<usize> {
    let r = (n as f64).sqrt().round() as usize;
    (r.checked_mul(r) == Some(n)).then_some(r)
}

/// Some power has a fixed-point count that no element of `AGL(m, p)` has.
pub fn affine_excludes(t: &Partition, p: usize, m: usize) -> Result<bool> {
    let n = t.n();
    if !is_prime(p) || p.checked_pow(m as u32) != Some(n) {
        return Err(Error::DegreeMismatch(p.saturating_pow(m as u32), n));
    }
    let allowed: BTreeSet<usize> = std::iter::once(0).chain((0..=m).map(|s| p.pow(s as u32))).collect();
    Ok(power_fixed_counts(t).iter().any(|f| !allowed.contains(f)))
}

/// Certifies `t ∉ PΓL(2, q)` acting on the projective line, or `t ∉ PGL(2, q)`
/// when `semilinear` is false.
pub fn projective_line_excludes(t: &Partition, q: usize, semilinear: bool) -> Result<bool> {
    let n = t.n();
    if q + 1 != n {
        return Err(Error::DegreeMismatch(q + 1, n));
    }
    let (gamma, r) = prime_power(q).ok_or_else(|| Error::Inadmissible(format!("{q} is not a prime power")))?;
    if !semilinear && nonidentity_fixed_counts(t).iter().any(|&f| f >= 3) {
        return Ok(true);
    }
    let field_fixed: BTreeSet<usize> =
        (1..=r).filter(|l| r % l == 0).map(|l| gamma.pow(l as u32) + 1).collect();
    if power_fixed_counts(t).iter().any(|&f| f >= 3 && !field_fixed.contains(&f)) {
        return Ok(true);
    }
    if n % 2 == 0 {
        let odd_odd = t.powers().iter().any(|&(l, c)| l % 2 == 1 && c % 2 == 1);
        if t.multiplicity(1) % 2 == 0 && odd_odd {
            return Ok(true);
        }
        let sums = t.partial_sums();
        if [1, 3, 5].iter().all(|&i| sums.contains(i)) && odd_odd {
            return Ok(true);
        }
    }
    Ok(false)
}

/// Certifies `t ∉ S_r ≀ S_2` in product action on `r²` points.
pub fn product_action_excludes(t: &Partition) -> Result<bool> {
    let n = t.n();
    let r = exact_sqrt(n).filter(|&r| r >= 2).ok_or_else(|| Error::Inadmissible(format!("degree {n} is not a square")))?;
    let sums = t.partial_sums();
    let long_odd = t.parts().iter().any(|&l| l % 2 == 1 && l > r);
    let low = (1..r).all(|i| sums.contains(i));
    let gap = (r..=(2 * r - 1).min(n / 2)).any(|i| !sums.contains(i));
    Ok(long_odd && low && gap)
}

/// All `(q, d)` with `d ≥ 2`, `q` a prime power and `n = (q^d − 1)/(q − 1)`,
/// by `d` ascending.
pub fn projective_cardinality_solutions(n: usize) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for q in 2..n {
        if prime_power(q).is_none() {
            continue;
        }
        let (mut sum, mut pw, mut d) = (1usize, 1usize, 1usize);
        while sum < n {
            pw *= q;
            sum += pw;
            d += 1;
        }
        if sum == n && d >= 2 {
            out.push((q, d));
        }
    }
    out.sort_by_key(|&(q, d)| (d, std::cmp::Reverse(q)));
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{build_group, product_action, Catalog};
    use crate::partition::enumerate_partitions;
    use crate::perm::closure;
    use proptest::prelude::*;

    fn pt(s: &str) -> Partition {
        s.parse().unwrap()
    }

    fn ids(tags: &[FamilyTag]) -> Vec<&str> {
        tags.iter().map(|t| t.case_id).collect()
    }

    /// Checks every power up to the order of the element.
    fn jordan_by_powers(t: &Partition) -> bool {
        let order = t.order() as usize;
        (1..=order).any(|k| {
            let s = t.power_type(k);
            let moved: Vec<_> = s.parts().iter().filter(|&&l| l > 1).collect();
            moved.len() == 1 && s.fixed_points() >= 3
        })
    }

    fn fixed_by_powers(t: &Partition) -> BTreeSet<usize> {
        (1..=t.order() as usize).map(|k| t.power_type(k).fixed_points()).collect()
    }

    #[test]
    fn jordan_examples() {
        for n in 6..30 {
            assert!(jordan_excludes(&Partition::from_powers(&[(1, n - 3), (3, 1)]).unwrap()));
            assert!(!jordan_excludes(&Partition::single(n)));
        }
        for n in (7..40).step_by(2) {
            for i in 2..=(n - 3) / 2 {
                if gcd(i, n) == 1 {
                    let t = Partition::from_powers(&[(i, 2), (n - 2 * i, 1)]).unwrap();
                    assert!(jordan_excludes(&t), "{t}");
                }
            }
        }
    }

    #[test]
    fn jordan_matches_powers() {
        for n in 1..=18 {
            for t in enumerate_partitions(n) {
                assert_eq!(jordan_excludes(&t), jordan_by_powers(&t), "{t}");
            }
        }
    }

    #[test]
    fn fixed_counts_match_powers() {
        for n in 1..=20 {
            for t in enumerate_partitions(n) {
                assert_eq!(power_fixed_counts(&t), fixed_by_powers(&t), "{t}");
            }
        }
    }

    #[test]
    fn fixed_counts_of_large_orders() {
        let t = pt("2,3,5,7,11,13,17,19,23,29,31,37,41,43,47");
        assert_eq!(power_profiles(&t).len(), 1 << 15);
        let counts = power_fixed_counts(&t);
        assert!(counts.contains(&t.n()) && counts.contains(&0) && counts.contains(&10));
    }

    #[test]
    fn jones_examples() {
        assert!(ids(&jones_families(11, 0)).contains(&"J-1c"));
        assert!(jones_families(7, 2).is_empty());
        assert_eq!(jones_families(10, 2), vec![FamilyTag::new("J-3", &[("q", 9)])]);
        assert_eq!(ids(&jones_families(7, 0)), ["J-1a", "J-1b"]);
        assert_eq!(ids(&jones_families(12, 1)), ["J-2b", "J-2c"]);
        assert_eq!(jones_families(16, 1).len(), 3);
        assert!(jones_families(13, 3).is_empty());
        assert!(jones_families(8, 7).is_empty());
    }

    #[test]
    fn mueller_examples() {
        assert!(ids(&mueller_families(22, 11)).contains(&"M-3i"));
        let tags = mueller_families(16, 8);
        let m16 = ids(&tags);
        for id in ["M-1e-iv", "M-1e-v", "M-1e-vi"] {
            assert!(m16.contains(&id), "{m16:?}");
        }
        assert_eq!(ids(&mueller_families(12, 2)), ["M-3h"]);
        assert_eq!(ids(&mueller_families(9, 3)), ["M-1b", "M-1c", "M-1e-iii", "M-2a"]);
        assert_eq!(ids(&mueller_families(36, 6)), ["M-2a", "M-2b"]);
        assert_eq!(ids(&mueller_families(10, 5)), ["M-3b", "M-3d"]);
        assert!(mueller_families(11, 3).is_empty());
        assert!(mueller_families(12, 7).is_empty());
    }

    #[test]
    fn projective_solutions() {
        assert_eq!(projective_cardinality_solutions(13), [(3, 3)]);
        assert_eq!(projective_cardinality_solutions(7), [(2, 3)]);
        assert_eq!(projective_cardinality_solutions(31), [(5, 3), (2, 5)]);
        assert_eq!(projective_cardinality_solutions(10), [(9, 2)]);
        assert!(projective_cardinality_solutions(11).is_empty());
    }

    #[test]
    fn twice_a_prime_is_only_a_line() {
        for p in (2..=5000).filter(|&p| is_prime(p)) {
            assert!(projective_cardinality_solutions(2 * p).iter().all(|&(_, d)| d == 2), "{p}");
        }
    }

    #[test]
    fn affine_examples() {
        assert!(affine_excludes(&pt("1,3,4"), 2, 3).unwrap());
        assert!(!affine_excludes(&Partition::identity(8), 2, 3).unwrap());
        for m in 3..8 {
            let n = 1 << m;
            let w = Partition::from_powers(&[(2, (n - 6) / 2), (3, 2)]).unwrap();
            assert!(affine_excludes(&w, 2, m).unwrap(), "{w}");
        }
        assert!(affine_excludes(&pt("3"), 2, 3).is_err());
    }

    #[test]
    fn projective_examples() {
        assert!(!projective_line_excludes(&pt("1^2,10"), 11, false).unwrap());
        assert!(!projective_line_excludes(&pt("1^2,24"), 25, true).unwrap());
        assert!(projective_line_excludes(&pt("1^7,2,3,14"), 25, true).unwrap());
        assert!(projective_line_excludes(&pt("2,3,7"), 11, false).unwrap());
        assert!(projective_line_excludes(&pt("1,10"), 11, false).is_err());
    }

    #[test]
    fn product_action_examples() {
        assert!(product_action_excludes(&pt("1^4,6^2,9")).unwrap());
        assert!(product_action_excludes(&pt("1^3,13")).unwrap());
        assert!(!product_action_excludes(&pt("16")).unwrap());
        assert!(!product_action_excludes(&pt("36")).unwrap());
        assert!(product_action_excludes(&pt("1,14")).is_err());
    }

    #[test]
    fn product_action_sound_by_enumeration() {
        for r in [3, 4, 5] {
            let spec = product_action(r);
            let elems = closure(&spec.generators, r * r, 100_000).unwrap();
            let types: BTreeSet<Partition> = elems.iter().map(|g| g.cycle_type()).collect();
            for t in enumerate_partitions(r * r) {
                if product_action_excludes(&t).unwrap() {
                    assert!(!types.contains(&t), "{t} in S{r}wrS2");
                }
            }
        }
    }

    #[test]
    fn catalog_consistency() {
        for n in 5..=13 {
            let cat = Catalog::get(n).unwrap();
            for g in &cat.groups {
                for t in g.fingerprint.types.keys() {
                    let moved: Vec<usize> = t.parts().iter().copied().filter(|&l| l > 1).collect();
                    if moved.len() == 1 {
                        let k = t.fixed_points();
                        assert!(!jones_families(n, k).is_empty(), "{} has {t}", g.spec.name);
                    }
                    if t.num_parts() == 2 {
                        assert!(!mueller_families(n, t.parts()[1]).is_empty(), "{} has {t}", g.spec.name);
                    }
                    assert!(!jordan_excludes(t), "{} has {t}", g.spec.name);
                }
            }
        }
    }

    #[test]
    fn affine_sound_on_catalog() {
        for (n, p, m, name) in [(8, 2, 3, "AGL(3,2)"), (9, 3, 2, "AGL(2,3)"), (7, 7, 1, "AGL(1,7)"), (13, 13, 1, "AGL(1,13)")] {
            let cat = Catalog::get(n).unwrap();
            let g = cat.groups.iter().find(|g| g.spec.name == name).unwrap();
            let mut excluded = 0;
            for t in enumerate_partitions(n) {
                if affine_excludes(&t, p, m).unwrap() {
                    excluded += 1;
                    assert!(!g.fingerprint.contains_type(&t), "{t} in {name}");
                }
            }
            assert!(excluded > 0);
        }
    }

    #[test]
    fn projective_sound_on_catalog() {
        let cases = [
            (9, 8, true, "PGammaL(2,8)"),
            (10, 9, true, "PGammaL(2,9)"),
            (9, 8, false, "PSL(2,8)"),
            (10, 9, false, "PGL(2,9)"),
            (8, 7, false, "PGL(2,7)"),
            (12, 11, false, "PGL(2,11)"),
        ];
        for (n, q, semi, name) in cases {
            let cat = Catalog::get(n).unwrap();
            let g = cat.groups.iter().find(|g| g.spec.name == name).unwrap_or_else(|| panic!("{name}"));
            for t in enumerate_partitions(n) {
                if projective_line_excludes(&t, q, semi).unwrap() {
                    assert!(!g.fingerprint.contains_type(&t), "{t} in {name}");
                }
            }
        }
    }

    #[test]
    fn semilinear_line_parity_rule() {
        let cat = Catalog::get(10).unwrap();
        let spec = &cat.groups.iter().find(|g| g.spec.name == "PGammaL(2,9)").unwrap().spec;
        let g = build_group(spec).unwrap();
        assert_eq!(g.order, 1440);
        let elems = closure(&spec.generators, 10, 10_000).unwrap();
        assert_eq!(elems.len(), 1440);
        for x in &elems {
            let t = x.cycle_type();
            if t.fixed_points() % 2 == 0 {
                for (l, c) in t.powers() {
                    assert!(l % 2 == 0 || c % 2 == 0, "{t}");
                }
            }
        }
    }

    proptest! {
        #[test]
        fn nonidentity_counts_exclude_full_degree(parts in proptest::collection::vec(1usize..12, 1..8)) {
            let t = Partition::new(parts).unwrap();
            let all = power_fixed_counts(&t);
            let non = nonidentity_fixed_counts(&t);
            prop_assert!(all.contains(&t.n()));
            prop_assert!(non.is_subset(&all));
            prop_assert!(!non.contains(&t.n()) || t.is_identity());
        }
    }
}
