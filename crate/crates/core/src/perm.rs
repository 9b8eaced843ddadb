//! Concrete permutations on `{0..n-1}`, group closure, and class labels.
//!
//! Products act on the right: `p * q` applies `p` first, then `q`, and the
//! conjugate of `x` by `s` is `s⁻¹ x s`.

use std::fmt;
use std::ops::Mul;
use std::str::FromStr;

use indexmap::IndexSet;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::partition::{enumerate_partitions, Parity, Partition};

pub const DEFAULT_CAP: usize = 1_000_000;

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    img: Box<[u16]>,
}

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Permutation { img: (0..n as u16).collect() }
    }

    pub fn from_images(img: Vec<usize>) -> Result<Self> {
        let n = img.len();
        if n > u16::MAX as usize {
            return Err(Error::InvalidPermutation("degree too large".into()));
        }
        let mut seen = vec![false; n];
        for &x in &img {
            if x >= n || std::mem::replace(&mut seen[x], true) {
                return Err(Error::InvalidPermutation(format!("{img:?} is not a bijection")));
            }
        }
        Ok(Permutation { img: img.into_iter().map(|x| x as u16).collect() })
    }

    /// Builds from 0-based cycles on `n` points.
    pub fn from_cycles(n: usize, cycles: &[Vec<usize>]) -> Result<Self> {
        let mut img: Vec<usize> = (0..n).collect();
        let mut used = vec![false; n];
        for c in cycles {
            for (i, &a) in c.iter().enumerate() {
                if a >= n || std::mem::replace(&mut used[a], true) {
                    return Err(Error::InvalidPermutation(format!("point {} repeated or out of range", a + 1)));
                }
                img[a] = c[(i + 1) % c.len()];
            }
        }
        Self::from_images(img)
    }

    /// Parses 1-based cycle notation such as `(1,2,3)(4,5)`; `()` is the identity.
    pub fn parse_cycles(s: &str, n: usize) -> Result<Self> {
        let mut cycles = Vec::new();
        let mut rest = s.trim();
        while !rest.is_empty() {
            let body = rest
                .strip_prefix('(')
                .ok_or_else(|| Error::InvalidPermutation(format!("expected '(' in {s:?}")))?;
            let close = body
                .find(')')
                .ok_or_else(|| Error::InvalidPermutation(format!("unclosed cycle in {s:?}")))?;
            let inner = body[..close].trim();
            if !inner.is_empty() {
                let mut c = Vec::new();
                for tok in inner.split(',') {
                    let v: usize = tok
                        .trim()
                        .parse()
                        .map_err(|_| Error::InvalidPermutation(format!("bad point {tok:?}")))?;
                    if v == 0 || v > n {
                        return Err(Error::InvalidPermutation(format!("point {v} outside 1..={n}")));
                    }
                    c.push(v - 1);
                }
                cycles.push(c);
            }
            rest = body[close + 1..].trim_start();
        }
        Self::from_cycles(n, &cycles)
    }

    pub fn degree(&self) -> usize {
        self.img.len()
    }

    #[inline]
    pub fn apply(&self, x: usize) -> usize {
        self.img[x] as usize
    }

    pub fn images(&self) -> impl Iterator<Item = usize> + '_ {
        self.img.iter().map(|&x| x as usize)
    }

    pub fn is_identity(&self) -> bool {
        self.img.iter().enumerate().all(|(i, &x)| i == x as usize)
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0u16; self.img.len()];
        for (i, &x) in self.img.iter().enumerate() {
            inv[x as usize] = i as u16;
        }
        Permutation { img: inv.into() }
    }

    /// `s⁻¹ self s`.
    pub fn conjugate(&self, s: &Permutation) -> Self {
        let mut out = vec![0u16; self.img.len()];
        for (a, &xa) in self.img.iter().enumerate() {
            out[s.img[a] as usize] = s.img[xa as usize];
        }
        Permutation { img: out.into() }
    }

    pub fn pow(&self, k: usize) -> Self {
        let mut out = Permutation::identity(self.degree());
        let mut base = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                out = &out * &base;
            }
            base = &base * &base;
            k >>= 1;
        }
        out
    }

    /// Disjoint cycles including fixed points, each starting at its least point.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let n = self.degree();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for s in 0..n {
            if seen[s] {
                continue;
            }
            let mut c = vec![s];
            seen[s] = true;
            let mut x = self.apply(s);
            while x != s {
                seen[x] = true;
                c.push(x);
                x = self.apply(x);
            }
            out.push(c);
        }
        out
    }

    pub fn cycle_type(&self) -> Partition {
        Partition::new(self.cycles().iter().map(Vec::len).collect()).expect("nonempty degree")
    }

    pub fn parity(&self) -> Parity {
        let cycles = self.cycles().len();
        if (self.degree() - cycles) % 2 == 0 {
            Parity::Even
        } else {
            Parity::Odd
        }
    }

    pub fn is_even(&self) -> bool {
        self.parity() == Parity::Even
    }

    /// The alternating split label of an even permutation.
    pub fn split_label(&self) -> Result<Split> {
        if !self.is_even() {
            return Err(Error::OddPermutation);
        }
        let t = self.cycle_type();
        if !t.splits_in_alt() {
            return Ok(Split::None);
        }
        let s = conjugator(&canonical_rep(&t), self).expect("same cycle type");
        Ok(if s.is_even() { Split::Plus } else { Split::Minus })
    }
}

impl Mul for &Permutation {
    type Output = Permutation;

    fn mul(self, rhs: &Permutation) -> Permutation {
        debug_assert_eq!(self.degree(), rhs.degree());
        Permutation { img: self.img.iter().map(|&x| rhs.img[x as usize]).collect() }
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut any = false;
        for c in self.cycles().into_iter().filter(|c| c.len() > 1) {
            any = true;
            f.write_str("(")?;
            for (i, a) in c.iter().enumerate() {
                if i > 0 {
                    f.write_str(",")?;
                }
                write!(f, "{}", a + 1)?;
            }
            f.write_str(")")?;
        }
        if !any {
            f.write_str("()")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Cycles of `t` in decreasing length on consecutive points from 0.
pub fn canonical_rep(t: &Partition) -> Permutation {
    let mut cycles = Vec::new();
    let mut next = 0;
    for &l in t.parts() {
        cycles.push((next..next + l).collect::<Vec<_>>());
        next += l;
    }
    Permutation::from_cycles(t.n(), &cycles).expect("disjoint cycles")
}

/// Some `s` with `s⁻¹ x s = y`, or `None` when the cycle types differ.
pub fn conjugator(x: &Permutation, y: &Permutation) -> Option<Permutation> {
    if x.degree() != y.degree() {
        return None;
    }
    let mut cx = x.cycles();
    let mut cy = y.cycles();
    cx.sort_by_key(|c| std::cmp::Reverse(c.len()));
    cy.sort_by_key(|c| std::cmp::Reverse(c.len()));
    if cx.iter().map(Vec::len).ne(cy.iter().map(Vec::len)) {
        return None;
    }
    let mut img = vec![0usize; x.degree()];
    for (a, b) in cx.iter().zip(&cy) {
        for (&p, &q) in a.iter().zip(b) {
            img[p] = q;
        }
    }
    Some(Permutation::from_images(img).expect("cycle alignment is a bijection"))
}

/// All elements of the group generated by `gens`, breadth first from the identity.
pub fn closure(gens: &[Permutation], n: usize, cap: usize) -> Result<Vec<Permutation>> {
    if let Some(g) = gens.iter().find(|g| g.degree() != n) {
        return Err(Error::DegreeMismatch(g.degree(), n));
    }
    let mut set: IndexSet<Permutation> = IndexSet::new();
    set.insert(Permutation::identity(n));
    let mut i = 0;
    while i < set.len() {
        let x = set[i].clone();
        for g in gens {
            let y = &x * g;
            if !set.contains(&y) {
                if set.len() >= cap {
                    return Err(Error::CapExceeded { cap, partial: set.len() });
                }
                set.insert(y);
            }
        }
        i += 1;
    }
    Ok(set.into_iter().collect())
}

pub fn group_order(gens: &[Permutation], n: usize) -> Result<usize> {
    closure(gens, n, DEFAULT_CAP).map(|v| v.len())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum GroupKind {
    Sym,
    Alt,
}

impl GroupKind {
    pub fn name(self) -> &'static str {
        match self {
            GroupKind::Sym => "sym",
            GroupKind::Alt => "alt",
        }
    }
}

impl FromStr for GroupKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "sym" | "s" => Ok(GroupKind::Sym),
            "alt" | "a" => Ok(GroupKind::Alt),
            _ => Err(Error::Inadmissible(format!("unknown group {s:?}; expected sym or alt"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Split {
    None,
    Plus,
    Minus,
}

impl Split {
    pub fn flip(self) -> Split {
        match self {
            Split::None => Split::None,
            Split::Plus => Split::Minus,
            Split::Minus => Split::Plus,
        }
    }

    pub fn suffix(self) -> &'static str {
        match self {
            Split::None => "",
            Split::Plus => "+",
            Split::Minus => "-",
        }
    }
}

/// A nontrivial conjugacy class of the symmetric or alternating group.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ClassLabel {
    pub cycle_type: Partition,
    pub group: GroupKind,
    pub split: Split,
}

impl ClassLabel {
    pub fn new(cycle_type: Partition, group: GroupKind, split: Split) -> Result<Self> {
        if cycle_type.is_identity() {
            return Err(Error::Inadmissible("the identity class is not a vertex".into()));
        }
        let splits = group == GroupKind::Alt && cycle_type.splits_in_alt();
        if splits != (split != Split::None) {
            return Err(Error::Inadmissible(format!("split tag {split:?} does not fit {cycle_type:?} in {}", group.name())));
        }
        if group == GroupKind::Alt && !cycle_type.is_even() {
            return Err(Error::Inadmissible(format!("{cycle_type:?} is odd")));
        }
        Ok(ClassLabel { cycle_type, group, split })
    }

    pub fn n(&self) -> usize {
        self.cycle_type.n()
    }

    pub fn twin(&self) -> Option<ClassLabel> {
        (self.split != Split::None).then(|| ClassLabel { split: self.split.flip(), ..self.clone() })
    }
}

impl fmt::Display for ClassLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.cycle_type, self.split.suffix())
    }
}

impl fmt::Debug for ClassLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}[{}]", self, self.group.name())
    }
}

/// Vertices of the graph: nontrivial classes, in canonical partition order.
pub fn class_labels(n: usize, group: GroupKind) -> Vec<ClassLabel> {
    let mut out = Vec::new();
    for t in enumerate_partitions(n) {
        if t.is_identity() {
            continue;
        }
        match group {
            GroupKind::Sym => out.push(ClassLabel { cycle_type: t, group, split: Split::None }),
            GroupKind::Alt if !t.is_even() => {}
            GroupKind::Alt if t.splits_in_alt() => {
                out.push(ClassLabel { cycle_type: t.clone(), group, split: Split::Plus });
                out.push(ClassLabel { cycle_type: t, group, split: Split::Minus });
            }
            GroupKind::Alt => out.push(ClassLabel { cycle_type: t, group, split: Split::None }),
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use rand::seq::SliceRandom;
    use rand::SeedableRng;

    fn p(s: &str, n: usize) -> Permutation {
        Permutation::parse_cycles(s, n).unwrap()
    }

    #[test]
    fn cycle_type_examples() {
        assert_eq!(Permutation::identity(5).cycle_type(), Partition::identity(5));
        let shift = Permutation::from_images((0..9).map(|i| (i + 1) % 9).collect()).unwrap();
        assert_eq!(shift.cycle_type(), Partition::single(9));
        assert_eq!(p("(1,2,3)(4,5)", 7).cycle_type(), "3,2,1,1".parse().unwrap());
    }

    #[test]
    fn composition_is_left_to_right() {
        let a = p("(1,2)", 3);
        let b = p("(2,3)", 3);
        // 1 -> 2 -> 3
        assert_eq!((&a * &b).apply(0), 2);
        assert_eq!(a.conjugate(&b), &(&b.inverse() * &a) * &b);
    }

    #[test]
    fn conjugator_examples() {
        let x = p("(1,2,3)", 3);
        let s = conjugator(&x, &x).unwrap();
        assert_eq!(x.conjugate(&s), x);
        let y = p("(1,3,2)", 3);
        let s = conjugator(&x, &y).unwrap();
        assert_eq!(x.conjugate(&s), y);
        assert_eq!(x.conjugate(&p("(2,3)", 3)), y);
        assert!(conjugator(&x, &p("(1,2)", 3)).is_none());
    }

    #[test]
    fn closure_examples() {
        assert_eq!(group_order(&[Permutation::identity(4)], 4).unwrap(), 1);
        assert_eq!(group_order(&[p("(1,2,3,4,5)", 5), p("(1,2)", 5)], 5).unwrap(), 120);
        let err = closure(&[p("(1,2,3,4,5,6,7)", 7), p("(1,2)", 7)], 7, 100).unwrap_err();
        assert_eq!(err, Error::CapExceeded { cap: 100, partial: 100 });
        let m12 = [
            p("(1,2,3,4,5,6,7,8,9,10,11)", 12),
            p("(3,7,11,8)(4,10,5,6)", 12),
            p("(1,12)(2,11)(3,6)(4,8)(5,9)(7,10)", 12),
        ];
        assert_eq!(group_order(&m12, 12).unwrap(), 95040);
    }

    #[test]
    fn symmetric_closure_orders() {
        let mut fact = 1;
        for n in 2..=7 {
            fact *= n;
            let cyc = Permutation::from_images((0..n).map(|i| (i + 1) % n).collect()).unwrap();
            let t = Permutation::from_cycles(n, &[vec![0, 1]]).unwrap();
            assert_eq!(group_order(&[cyc, t], n).unwrap(), fact);
        }
    }

    #[test]
    fn split_label_examples() {
        assert_eq!(p("(1,2,3)", 3).split_label().unwrap(), Split::Plus);
        assert_eq!(p("(1,3,2)", 3).split_label().unwrap(), Split::Minus);
        assert_eq!(p("(2,3)(4,5)", 5).split_label().unwrap(), Split::None);
        assert_eq!(p("(1,2)", 3).split_label(), Err(Error::OddPermutation));
    }

    #[test]
    fn class_label_examples() {
        assert_eq!(class_labels(6, GroupKind::Sym).len(), 10);
        let a5: Vec<String> = class_labels(5, GroupKind::Alt).iter().map(|c| c.to_string()).collect();
        assert!(a5.contains(&"5+".to_string()) && a5.contains(&"5-".to_string()));
        let a4: Vec<String> = class_labels(4, GroupKind::Alt).iter().map(|c| c.to_string()).collect();
        assert_eq!(a4, vec!["3,1+", "3,1-", "2,2"]);
    }

    #[test]
    fn parse_rejects() {
        assert!(Permutation::parse_cycles("(1,2", 3).is_err());
        assert!(Permutation::parse_cycles("(1,4)", 3).is_err());
        assert!(Permutation::parse_cycles("(1,2)(2,3)", 3).is_err());
        assert!(Permutation::parse_cycles("1,2", 3).is_err());
        assert_eq!(Permutation::parse_cycles("()", 3).unwrap(), Permutation::identity(3));
    }

    fn random_perm(rng: &mut rand::rngs::StdRng, n: usize) -> Permutation {
        let mut v: Vec<usize> = (0..n).collect();
        v.shuffle(rng);
        Permutation::from_images(v).unwrap()
    }

    fn random_even(rng: &mut rand::rngs::StdRng, n: usize) -> Permutation {
        let g = random_perm(rng, n);
        if g.is_even() {
            g
        } else {
            &g * &Permutation::from_cycles(n, &[vec![0, 1]]).unwrap()
        }
    }

    fn split_type_perm(rng: &mut rand::rngs::StdRng, n: usize) -> Option<Permutation> {
        let splitting: Vec<Partition> =
            enumerate_partitions(n).into_iter().filter(|t| t.splits_in_alt() && t.is_even() && !t.is_identity()).collect();
        let t = splitting.choose(rng)?;
        let s = random_perm(rng, n);
        Some(canonical_rep(t).conjugate(&s))
    }

    proptest! {
        #[test]
        fn conjugator_is_correct(seed in any::<u64>(), n in 1usize..=10) {
            let mut rng = rand::rngs::StdRng::seed_from_u64(seed);
            let x = random_perm(&mut rng, n);
            let y = x.conjugate(&random_perm(&mut rng, n));
            let s = conjugator(&x, &y).unwrap();
            prop_assert_eq!(x.conjugate(&s), y);
        }

        #[test]
        fn split_label_invariant_under_even_conjugation(seed in any::<u64>(), n in 3usize..=11) {
            let mut rng = rand::rngs::StdRng::seed_from_u64(seed);
            if let Some(h) = split_type_perm(&mut rng, n) {
                let s = random_even(&mut rng, n);
                prop_assert_eq!(h.conjugate(&s).split_label().unwrap(), h.split_label().unwrap());
            }
        }

        #[test]
        fn split_label_flips_under_odd_conjugation(seed in any::<u64>(), n in 3usize..=11) {
            let mut rng = rand::rngs::StdRng::seed_from_u64(seed);
            if let Some(h) = split_type_perm(&mut rng, n) {
                let s = &random_even(&mut rng, n) * &Permutation::from_cycles(n, &[vec![1, 2]]).unwrap();
                let before = h.split_label().unwrap();
                prop_assert_ne!(before, Split::None);
                prop_assert_eq!(h.conjugate(&s).split_label().unwrap(), before.flip());
            }
        }

        #[test]
        fn cycle_notation_roundtrip(seed in any::<u64>(), n in 1usize..=12) {
            let mut rng = rand::rngs::StdRng::seed_from_u64(seed);
            let x = random_perm(&mut rng, n);
            prop_assert_eq!(Permutation::parse_cycles(&x.to_string(), n).unwrap(), x);
        }
    }
}
