//! Brute-force cross-checks for the edge criterion and wreath membership.

use rayon::prelude::*;

use crate::bitset::BitSet;
use crate::error::{Error, Result};
use crate::graph::ClassGraph;
use crate::membership::{proper_divisors, wreath_member, wreath_types_enumerated};
use crate::partition::{enumerate_partitions, Partition};
use crate::perm::{class_labels, ClassLabel, GroupKind, Permutation, Split};

pub const MAX_ORACLE_DEGREE: usize = 7;

type Small = [u8; 8];

fn compose(p: &Small, q: &Small, n: usize) -> Small {
    let mut r = [0u8; 8];
    for i in 0..n {
        r[i] = q[p[i] as usize];
    }
    r
}

fn code(p: &Small, n: usize) -> usize {
    p[..n].iter().rev().fold(0, |acc, &x| acc * n + x as usize)
}

fn all_perms(n: usize) -> Vec<Small> {
    let mut out = Vec::new();
    let mut cur: Vec<u8> = (0..n as u8).collect();
    fn rec(k: usize, cur: &mut Vec<u8>, out: &mut Vec<Small>) {
        if k == cur.len() {
            let mut s = [0u8; 8];
            s[..cur.len()].copy_from_slice(cur);
            out.push(s);
            return;
        }
        for i in k..cur.len() {
            cur.swap(k, i);
            rec(k + 1, cur, out);
            cur.swap(k, i);
        }
    }
    rec(0, &mut cur, &mut out);
    out
}

/// Whether `⟨x, y⟩` has order above `half`, i.e. is the whole group.
struct Generation {
    n: usize,
    stamp: Vec<u32>,
    generation: u32,
    queue: Vec<Small>,
}

impl Generation {
    fn new(n: usize) -> Self {
        Generation { n, stamp: vec![0; n.pow(n as u32)], generation: 0, queue: Vec::new() }
    }

    fn generates(&mut self, x: &Small, y: &Small, half: usize) -> bool {
        self.generation += 1;
        let g = self.generation;
        let n = self.n;
        let mut id = [0u8; 8];
        for (i, v) in id.iter_mut().enumerate().take(n) {
            *v = i as u8;
        }
        self.queue.clear();
        self.queue.push(id);
        self.stamp[code(&id, n)] = g;
        let mut head = 0;
        while head < self.queue.len() {
            let e = self.queue[head];
            head += 1;
            for s in [x, y] {
                let f = compose(&e, s, n);
                let c = code(&f, n);
                if self.stamp[c] != g {
                    self.stamp[c] = g;
                    self.queue.push(f);
                    if self.queue.len() > half {
                        return true;
                    }
                }
            }
        }
        false
    }
}

fn label_of(perm: &Permutation, group: GroupKind) -> Option<ClassLabel> {
    let t = perm.cycle_type();
    if t.is_identity() {
        return None;
    }
    let split = match group {
        GroupKind::Sym => Split::None,
        GroupKind::Alt => perm.split_label().ok()?,
    };
    ClassLabel::new(t, group, split).ok()
}

/// Adjacency decided by testing generation directly: classes `c1`, `c2` are
/// adjacent when a fixed `x ∈ c1` generates the group with every `y ∈ c2`.
pub fn brute_force_graph(n: usize, group: GroupKind) -> Result<ClassGraph> {
    if !(3..=MAX_ORACLE_DEGREE).contains(&n) {
        return Err(Error::Inadmissible(format!("edge oracle supports 3 ≤ n ≤ {MAX_ORACLE_DEGREE}, got {n}")));
    }
    let vertices = class_labels(n, group);
    let mut members: Vec<Vec<Small>> = vec![Vec::new(); vertices.len()];
    let mut order = 0;
    for p in all_perms(n) {
        let perm = Permutation::from_images(p[..n].iter().map(|&x| x as usize).collect())?;
        if group == GroupKind::Alt && !perm.is_even() {
            continue;
        }
        order += 1;
        if let Some(c) = label_of(&perm, group) {
            let k = vertices.iter().position(|v| *v == c).expect("every class is a vertex");
            members[k].push(p);
        }
    }
    let half = order / 2;
    let k = vertices.len();
    let pairs: Vec<(usize, usize)> = (0..k).flat_map(|i| (i + 1..k).map(move |j| (i, j))).collect();
    let verdicts: Vec<bool> = pairs
        .par_iter()
        .map_init(
            || Generation::new(n),
            |gen, &(i, j)| {
                let x = members[i][0];
                members[j].iter().all(|y| gen.generates(&x, y, half))
            },
        )
        .collect();
    let mut adj = vec![BitSet::new(k); k];
    for (&(i, j), &v) in pairs.iter().zip(&verdicts) {
        if v {
            adj[i].insert(j);
            adj[j].insert(i);
        }
    }
    ClassGraph::from_adjacency(n, group, vertices, adj)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EdgeDiff {
    pub a: ClassLabel,
    pub b: ClassLabel,
    pub criterion: bool,
    pub oracle: bool,
}

/// Pairs where the subgroup-sharing graph and the oracle disagree.
pub fn edge_diffs(n: usize, group: GroupKind) -> Result<(ClassGraph, Vec<EdgeDiff>)> {
    let exact = ClassGraph::build(n, group)?;
    let brute = brute_force_graph(n, group)?;
    let mut diffs = Vec::new();
    for i in 0..exact.len() {
        for j in i + 1..exact.len() {
            let (c, o) = (exact.adjacent(i, j), brute.adjacent(i, j));
            if c != o {
                diffs.push(EdgeDiff { a: exact.vertices[i].clone(), b: exact.vertices[j].clone(), criterion: c, oracle: o });
            }
        }
    }
    Ok((exact, diffs))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WreathDiff {
    pub cycle_type: Partition,
    pub m: usize,
    pub search: bool,
    pub enumeration: bool,
}

/// Compares [`wreath_member`] with enumeration for every type and divisor.
pub fn wreath_diffs(n: usize) -> Result<(usize, Vec<WreathDiff>)> {
    if !(2..=12).contains(&n) {
        return Err(Error::Inadmissible(format!("wreath oracle supports n ≤ 12, got {n}")));
    }
    let parts = enumerate_partitions(n);
    let mut checked = 0;
    let mut diffs = Vec::new();
    for m in proper_divisors(n) {
        let types = wreath_types_enumerated(n, m)?;
        for t in &parts {
            checked += 1;
            let (s, e) = (wreath_member(t, m)?, types.contains(t));
            if s != e {
                diffs.push(WreathDiff { cycle_type: t.clone(), m, search: s, enumeration: e });
            }
        }
    }
    Ok((checked, diffs))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn s6_oracle_is_empty() {
        let g = brute_force_graph(6, GroupKind::Sym).unwrap();
        assert_eq!(g.edge_count(), 0);
    }

    #[test]
    fn small_degrees_agree() {
        for n in 3..=5 {
            for g in [GroupKind::Sym, GroupKind::Alt] {
                assert!(edge_diffs(n, g).unwrap().1.is_empty(), "n={n} {g:?}");
            }
        }
    }

    #[test]
    fn rejects_large() {
        assert!(brute_force_graph(8, GroupKind::Sym).is_err());
        assert!(wreath_diffs(13).is_err());
    }
}
