//! The invariably generating graph on conjugacy classes.

use std::collections::VecDeque;
use std::fmt::{self, Write as _};

use rayon::prelude::*;
use serde::Serialize;

use crate::bitset::BitSet;
use crate::catalog::Catalog;
use crate::error::{Error, Result};
use crate::membership::{proper_divisors, wreath_member};
use crate::perm::{class_labels, ClassLabel, GroupKind, Split};

#[derive(Debug, Clone)]
pub struct ClassGraph {
    pub degree: usize,
    pub group: GroupKind,
    pub vertices: Vec<ClassLabel>,
    adj: Vec<BitSet>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Diameter {
    Finite(usize),
    Disconnected,
    Empty,
}

impl fmt::Display for Diameter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Diameter::Finite(d) => write!(f, "{d}"),
            Diameter::Disconnected => f.write_str("disconnected"),
            Diameter::Empty => f.write_str("null graph"),
        }
    }
}

impl Serialize for Diameter {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Diameter::Finite(d) => s.serialize_u64(*d as u64),
            other => s.collect_str(other),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExportFormat {
    Dot,
    Json,
    Csv,
    Text,
}

/// Per-vertex data that makes each pair test a handful of word operations.
struct VertexKey {
    even: bool,
    sums: BitSet,
    wreath: u64,
    prim: u64,
    prim_flipped: u64,
}

fn vertex_key(c: &ClassLabel, divisors: &[usize], catalog: &Catalog) -> Result<VertexKey> {
    let t = &c.cycle_type;
    let mut sums = t.partial_sums();
    sums.remove(0);
    for i in t.n() / 2 + 1..=t.n() {
        sums.remove(i);
    }
    let mut wreath = 0;
    for (k, &m) in divisors.iter().enumerate() {
        if wreath_member(t, m)? {
            wreath |= 1 << k;
        }
    }
    let flipped = c.twin().unwrap_or_else(|| c.clone());
    let (mut prim, mut prim_flipped) = (0, 0);
    for (k, g) in catalog.groups.iter().enumerate() {
        if g.fingerprint.meets(c) {
            prim |= 1 << k;
        }
        if g.fingerprint.meets(&flipped) {
            prim_flipped |= 1 << k;
        }
    }
    Ok(VertexKey { even: t.is_even(), sums, wreath, prim, prim_flipped })
}

impl ClassGraph {
    /// Builds `Λ(G)` with the process-wide catalog.
    pub fn build(n: usize, group: GroupKind) -> Result<ClassGraph> {
        let cat = Catalog::get(n)?;
        Self::build_with(n, group, &cat)
    }

    pub fn build_with(n: usize, group: GroupKind, catalog: &Catalog) -> Result<ClassGraph> {
        if n < 3 {
            return Err(Error::Inadmissible(format!("degree {n} < 3")));
        }
        if catalog.degree != n {
            return Err(Error::DegreeMismatch(catalog.degree, n));
        }
        catalog.require_complete()?;
        if catalog.groups.len() > 64 {
            return Err(Error::Inadmissible("more than 64 catalogued groups".into()));
        }
        let vertices = class_labels(n, group);
        let divisors = proper_divisors(n);
        let keys = vertices.par_iter().map(|c| vertex_key(c, &divisors, catalog)).collect::<Result<Vec<_>>>()?;
        let sym = group == GroupKind::Sym;
        let adjacent = |a: &VertexKey, b: &VertexKey| {
            !(sym && a.even && b.even)
                && !a.sums.intersects(&b.sums)
                && a.wreath & b.wreath == 0
                && a.prim & b.prim == 0
                && a.prim_flipped & b.prim_flipped == 0
        };
        let adj = (0..vertices.len())
            .into_par_iter()
            .map(|i| {
                let mut row = BitSet::new(vertices.len());
                for j in (0..vertices.len()).filter(|&j| j != i) {
                    if adjacent(&keys[i], &keys[j]) {
                        row.insert(j);
                    }
                }
                row
            })
            .collect();
        Ok(ClassGraph { degree: n, group, vertices, adj })
    }

    /// Builds a graph from explicit data; rows must be symmetric without loops.
    pub fn from_adjacency(degree: usize, group: GroupKind, vertices: Vec<ClassLabel>, adj: Vec<BitSet>) -> Result<Self> {
        let k = vertices.len();
        if adj.len() != k || adj.iter().any(|r| r.len() != k) {
            return Err(Error::Inadmissible("adjacency shape mismatch".into()));
        }
        for i in 0..k {
            if adj[i].contains(i) || adj[i].iter().any(|j| !adj[j].contains(i)) {
                return Err(Error::Inadmissible("adjacency must be symmetric without loops".into()));
            }
        }
        Ok(ClassGraph { degree, group, vertices, adj })
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn adjacent(&self, i: usize, j: usize) -> bool {
        self.adj[i].contains(j)
    }

    pub fn neighbors(&self, i: usize) -> impl Iterator<Item = usize> + '_ {
        self.adj[i].iter()
    }

    pub fn row(&self, i: usize) -> &BitSet {
        &self.adj[i]
    }

    pub fn index_of(&self, c: &ClassLabel) -> Option<usize> {
        self.vertices.iter().position(|v| v == c)
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(BitSet::count).sum::<usize>() / 2
    }

    pub fn edges(&self) -> Vec<(usize, usize)> {
        (0..self.len()).flat_map(|i| self.adj[i].iter().filter(move |&j| j > i).map(move |j| (i, j))).collect()
    }

    pub fn isolated_indices(&self) -> Vec<usize> {
        (0..self.len()).filter(|&i| self.adj[i].is_empty()).collect()
    }

    pub fn isolated_vertices(&self) -> Vec<ClassLabel> {
        self.isolated_indices().into_iter().map(|i| self.vertices[i].clone()).collect()
    }

    /// Induced subgraph on the given vertex indices, in that order.
    pub fn induced(&self, keep: &[usize]) -> ClassGraph {
        let vertices = keep.iter().map(|&i| self.vertices[i].clone()).collect();
        let adj = keep
            .iter()
            .map(|&i| BitSet::from_iter(keep.len(), (0..keep.len()).filter(|&b| self.adj[i].contains(keep[b]))))
            .collect();
        ClassGraph { degree: self.degree, group: self.group, vertices, adj }
    }

    /// `Ξ(G)`: the induced subgraph on non-isolated vertices.
    pub fn xi(&self) -> ClassGraph {
        let keep: Vec<usize> = (0..self.len()).filter(|&i| !self.adj[i].is_empty()).collect();
        self.induced(&keep)
    }

    pub fn eccentricities(&self) -> Vec<Option<usize>> {
        (0..self.len())
            .into_par_iter()
            .map(|s| {
                let mut dist = vec![usize::MAX; self.len()];
                dist[s] = 0;
                let mut q = VecDeque::from([s]);
                let mut reached = 1;
                let mut far = 0;
                while let Some(x) = q.pop_front() {
                    for y in self.adj[x].iter() {
                        if dist[y] == usize::MAX {
                            dist[y] = dist[x] + 1;
                            far = dist[y];
                            reached += 1;
                            q.push_back(y);
                        }
                    }
                }
                (reached == self.len()).then_some(far)
            })
            .collect()
    }

    pub fn diameter(&self) -> Diameter {
        if self.is_empty() {
            return Diameter::Empty;
        }
        let ecc = self.eccentricities();
        match ecc.iter().copied().collect::<Option<Vec<_>>>() {
            Some(v) => Diameter::Finite(v.into_iter().max().unwrap_or(0)),
            None => Diameter::Disconnected,
        }
    }

    pub fn graph_name(&self) -> &'static str {
        match self.group {
            GroupKind::Sym => "Lambda_Sn",
            GroupKind::Alt => "Lambda_An",
        }
    }

    fn group_symbol(&self) -> String {
        match self.group {
            GroupKind::Sym => format!("S_{}", self.degree),
            GroupKind::Alt => format!("A_{}", self.degree),
        }
    }

    pub fn export(&self, format: ExportFormat, xi_diameter: Option<Diameter>) -> String {
        match format {
            ExportFormat::Dot => self.to_dot(),
            ExportFormat::Json => self.to_json(xi_diameter),
            ExportFormat::Csv => self.to_csv(),
            ExportFormat::Text => self.to_text(xi_diameter),
        }
    }

    fn to_dot(&self) -> String {
        let mut s = format!("graph {} {{\n  label=\"{}\";\n", self.graph_name(), self.group_symbol());
        for (i, v) in self.vertices.iter().enumerate() {
            let _ = writeln!(s, "  v{i} [label=\"{v}\"];");
        }
        for (i, j) in self.edges() {
            let _ = writeln!(s, "  v{i} -- v{j};");
        }
        s.push_str("}\n");
        s
    }

    fn to_csv(&self) -> String {
        let mut s = String::from("v1,v2\n");
        for (i, j) in self.edges() {
            let _ = writeln!(s, "{i},{j}");
        }
        s
    }

    fn to_json(&self, xi_diameter: Option<Diameter>) -> String {
        #[derive(Serialize)]
        struct Vertex<'a> {
            id: usize,
            #[serde(rename = "type")]
            cycle_type: &'a crate::partition::Partition,
            split: &'static str,
            isolated: bool,
        }
        #[derive(Serialize)]
        struct Doc<'a> {
            schema: u32,
            degree: usize,
            group: GroupKind,
            vertices: Vec<Vertex<'a>>,
            edges: Vec<[usize; 2]>,
            xi_diameter: Diameter,
        }
        let doc = Doc {
            schema: 1,
            degree: self.degree,
            group: self.group,
            vertices: self
                .vertices
                .iter()
                .enumerate()
                .map(|(id, v)| Vertex {
                    id,
                    cycle_type: &v.cycle_type,
                    split: match v.split {
                        Split::None => "none",
                        Split::Plus => "plus",
                        Split::Minus => "minus",
                    },
                    isolated: self.adj[id].is_empty(),
                })
                .collect(),
            edges: self.edges().into_iter().map(|(i, j)| [i, j]).collect(),
            xi_diameter: xi_diameter.unwrap_or_else(|| self.xi().diameter()),
        };
        let mut s = serde_json::to_string_pretty(&doc).expect("serializable");
        s.push('\n');
        s
    }

    fn to_text(&self, xi_diameter: Option<Diameter>) -> String {
        let mut s = format!(
            "{}: {} vertices, {} edges, {} isolated, d(Xi) = {}\n",
            self.group_symbol(),
            self.len(),
            self.edge_count(),
            self.isolated_indices().len(),
            xi_diameter.unwrap_or_else(|| self.xi().diameter())
        );
        for (i, v) in self.vertices.iter().enumerate() {
            let nb: Vec<String> = self.adj[i].iter().map(|j| self.vertices[j].to_string()).collect();
            let _ = writeln!(s, "({v}): {}", if nb.is_empty() { "-".to_string() } else { nb.join(" ") });
        }
        s
    }
}
