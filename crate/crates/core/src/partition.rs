//! Integer partitions viewed as cycle types.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::bitset::BitSet;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Parity {
    Even,
    Odd,
}

/// A partition of `n`, stored as weakly decreasing parts.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Partition {
    parts: Vec<usize>,
    n: usize,
}

impl Partition {
    /// Builds a partition from parts in any order.
    pub fn new(mut parts: Vec<usize>) -> Result<Self> {
        if parts.is_empty() {
            return Err(Error::InvalidPartition("no parts".into()));
        }
        if parts.contains(&0) {
            return Err(Error::InvalidPartition("zero part".into()));
        }
        parts.sort_unstable_by(|a, b| b.cmp(a));
        let n = parts
            .iter()
            .try_fold(0usize, |acc, &x| acc.checked_add(x))
            .ok_or_else(|| Error::InvalidPartition("sum overflows".into()))?;
        Ok(Partition { parts, n })
    }

    /// Builds from `(length, multiplicity)` pairs, e.g. `[(1, 3), (2, 4)]` for `(1³,2⁴)`.
    pub fn from_powers(powers: &[(usize, usize)]) -> Result<Self> {
        let mut parts = Vec::new();
        for &(l, m) in powers {
            parts.extend(std::iter::repeat(l).take(m));
        }
        Self::new(parts)
    }

    pub fn identity(n: usize) -> Self {
        Partition { parts: vec![1; n], n }
    }

    pub fn single(n: usize) -> Self {
        Partition { parts: vec![n], n }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    pub fn num_parts(&self) -> usize {
        self.parts.len()
    }

    pub fn largest(&self) -> usize {
        self.parts[0]
    }

    pub fn multiplicity(&self, l: usize) -> usize {
        self.parts.iter().filter(|&&p| p == l).count()
    }

    /// Distinct part lengths (decreasing) with multiplicities.
    pub fn powers(&self) -> Vec<(usize, usize)> {
        let mut out: Vec<(usize, usize)> = Vec::new();
        for &p in &self.parts {
            match out.last_mut() {
                Some((l, m)) if *l == p => *m += 1,
                _ => out.push((p, 1)),
            }
        }
        out
    }

    pub fn is_identity(&self) -> bool {
        self.parts[0] == 1
    }

    pub fn parity(&self) -> Parity {
        if (self.n - self.parts.len()) % 2 == 0 {
            Parity::Even
        } else {
            Parity::Odd
        }
    }

    pub fn is_even(&self) -> bool {
        self.parity() == Parity::Even
    }

    /// True when the class of this type splits in the alternating group.
    pub fn splits_in_alt(&self) -> bool {
        self.parts.iter().all(|p| p % 2 == 1) && self.parts.windows(2).all(|w| w[0] != w[1])
    }

    pub fn fixed_points(&self) -> usize {
        self.multiplicity(1)
    }

    /// Subset sums of the parts, as a bitset over `0..=n`.
    pub fn partial_sums(&self) -> BitSet {
        let mut b = BitSet::new(self.n + 1);
        b.insert(0);
        for &p in &self.parts {
            b.or_shifted(p);
        }
        b
    }

    pub fn is_partial_sum(&self, i: usize) -> bool {
        self.partial_sums().contains(i)
    }

    /// Cycle type of the `k`-th power.
    pub fn power_type(&self, k: usize) -> Partition {
        assert!(k >= 1);
        let mut parts = Vec::with_capacity(self.n);
        for &l in &self.parts {
            let g = gcd(l, k);
            parts.extend(std::iter::repeat(l / g).take(g));
        }
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Partition { parts, n: self.n }
    }

    /// Order of a permutation with this cycle type.
    pub fn order(&self) -> u128 {
        self.parts.iter().fold(1u128, |acc, &p| lcm128(acc, p as u128))
    }

    /// Adds a part of length `t` under the extension bound relative to the
    /// exceptional set `s`. Every `i` in `1..=⌊n/2⌋` outside `s` must be a
    /// partial sum before the call, and then remains so for the new degree.
    pub fn extend_with_part(&self, t: usize, s: &[usize]) -> Result<Partition> {
        let big_n = self.n as i64;
        let max_s = s.iter().copied().max().map_or(-1, |m| m as i64);
        let max_t = if (self.n + t) % 2 == 0 { big_n - 2 * max_s - 2 } else { big_n - 2 * max_s - 1 };
        if t == 0 || t as i64 > max_t {
            return Err(Error::ExtensionBound { t, max: max_t });
        }
        let sums = self.partial_sums();
        if let Some(i) = (1..=self.n / 2).find(|i| !s.contains(i) && !sums.contains(*i)) {
            return Err(Error::Inadmissible(format!(
                "{i} is neither a partial sum of {self} nor exceptional"
            )));
        }
        let mut parts = self.parts.clone();
        parts.push(t);
        Partition::new(parts)
    }
}

pub fn gcd(mut a: usize, mut b: usize) -> usize {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

pub fn lcm(a: usize, b: usize) -> usize {
    a / gcd(a, b) * b
}

fn lcm128(a: u128, b: u128) -> u128 {
    let (mut x, mut y) = (a, b);
    while y != 0 {
        (x, y) = (y, x % y);
    }
    a / x * b
}

impl Ord for Partition {
    /// Decreasing lexicographic on the part lists, so `(n)` comes first.
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        other.parts.cmp(&self.parts).then(self.n.cmp(&other.n))
    }
}

impl PartialOrd for Partition {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, p) in self.parts.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{p}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({self})")
    }
}

impl FromStr for Partition {
    type Err = Error;

    /// Accepts comma-separated parts, optionally wrapped in parentheses;
    /// `l^m` repeats a part `m` times.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let s = s.strip_prefix('(').and_then(|x| x.strip_suffix(')')).unwrap_or(s);
        let mut parts = Vec::new();
        for tok in s.split(',') {
            let tok = tok.trim();
            let (l, m) = match tok.split_once('^') {
                Some((l, m)) => (l.trim(), m.trim()),
                None => (tok, "1"),
            };
            let l: usize = l.parse().map_err(|_| Error::InvalidPartition(format!("bad part {tok:?}")))?;
            let m: usize = m.parse().map_err(|_| Error::InvalidPartition(format!("bad exponent {tok:?}")))?;
            if l == 0 || m == 0 {
                return Err(Error::InvalidPartition(format!("bad part {tok:?}")));
            }
            if parts.len() + m > 1 << 16 {
                return Err(Error::InvalidPartition("too many parts".into()));
            }
            parts.extend(std::iter::repeat(l).take(m));
        }
        let p = Partition::new(parts)?;
        if p.n > 1 << 16 {
            return Err(Error::InvalidPartition("degree too large".into()));
        }
        Ok(p)
    }
}

impl Serialize for Partition {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Partition {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// All partitions of `n` in decreasing lexicographic order.
pub fn enumerate_partitions(n: usize) -> Vec<Partition> {
    assert!(n >= 1);
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fn rec(rem: usize, max: usize, cur: &mut Vec<usize>, n: usize, out: &mut Vec<Partition>) {
        if rem == 0 {
            out.push(Partition { parts: cur.clone(), n });
            return;
        }
        for p in (1..=rem.min(max)).rev() {
            cur.push(p);
            rec(rem - p, p, cur, n, out);
            cur.pop();
        }
    }
    rec(n, n, &mut cur, n, &mut out);
    out
}

/// Partitions of `n` whose partial sums all lie in `allowed`, in the same
/// order as [`enumerate_partitions`].
pub fn enumerate_partitions_with_sums_in(n: usize, allowed: &BitSet) -> Result<Vec<Partition>> {
    if allowed.len() != n + 1 {
        return Err(Error::DegreeMismatch(allowed.len(), n + 1));
    }
    if !allowed.contains(0) {
        return Err(Error::NotComplementClosed(n, 0));
    }
    if let Some(i) = allowed.iter().find(|&i| !allowed.contains(n - i)) {
        return Err(Error::NotComplementClosed(i, n - i));
    }
    struct Search<'a> {
        n: usize,
        allowed: &'a BitSet,
        cur: Vec<usize>,
        out: Vec<Partition>,
    }
    impl Search<'_> {
        fn rec(&mut self, rem: usize, max: usize, sums: &BitSet) {
            if rem == 0 {
                self.out.push(Partition { parts: self.cur.clone(), n: self.n });
                return;
            }
            for p in (1..=rem.min(max)).rev() {
                if !self.allowed.contains(p) {
                    continue;
                }
                let mut next = sums.clone();
                next.or_shifted(p);
                if !next.is_subset(self.allowed) {
                    continue;
                }
                self.cur.push(p);
                self.rec(rem - p, p, &next);
                self.cur.pop();
            }
        }
    }
    let mut s = Search { n, allowed, cur: Vec::new(), out: Vec::new() };
    let mut start = BitSet::new(n + 1);
    start.insert(0);
    s.rec(n, n, &start);
    Ok(s.out)
}

/// Number of partitions of `n`, by the pentagonal recurrence.
pub fn partition_count(n: usize) -> u128 {
    let mut p = vec![0u128; n + 1];
    p[0] = 1;
    for m in 1..=n {
        let mut k = 1i64;
        let mut acc: i128 = 0;
        loop {
            let g1 = (k * (3 * k - 1) / 2) as usize;
            if g1 > m {
                break;
            }
            let sign = if k % 2 == 1 { 1 } else { -1 };
            acc += sign * p[m - g1] as i128;
            let g2 = (k * (3 * k + 1) / 2) as usize;
            if g2 <= m {
                acc += sign * p[m - g2] as i128;
            }
            k += 1;
        }
        p[m] = acc as u128;
    }
    p[n]
}
