//! Primitive groups of small degree other than `A_n` and `S_n`, and their
//! cycle-type fingerprints.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;
use std::sync::{Arc, Mutex, OnceLock};

use serde::Serialize;
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::field::{is_prime, Field};
use crate::partition::Partition;
use crate::perm::{closure, Permutation, Split, DEFAULT_CAP};
use crate::perm::ClassLabel;

pub const GENERATOR_DATA: &str = include_str!("../data/primitive_generators.txt");

/// Bumped whenever a programmatic construction changes, to invalidate caches.
const CONSTRUCTION_VERSION: &str = "constructions-1";

const CACHE_HEADER: &str = "invgraph-fingerprints v1";

/// Degrees with a complete catalog.
pub const EXACT_DEGREES: [usize; 13] = [3, 4, 5, 6, 7, 8, 9, 10, 11, 12, 13, 17, 19];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum FamilyKind {
    Affine,
    Projective,
    Mathieu,
    ProductAction,
    Other,
}

impl FamilyKind {
    pub fn name(self) -> &'static str {
        match self {
            FamilyKind::Affine => "affine",
            FamilyKind::Projective => "projective",
            FamilyKind::Mathieu => "mathieu",
            FamilyKind::ProductAction => "product-action",
            FamilyKind::Other => "other",
        }
    }
}

impl FromStr for FamilyKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "affine" => FamilyKind::Affine,
            "projective" => FamilyKind::Projective,
            "mathieu" => FamilyKind::Mathieu,
            "product-action" => FamilyKind::ProductAction,
            "other" => FamilyKind::Other,
            _ => return Err(Error::Inadmissible(format!("unknown family {s:?}"))),
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupSpec {
    pub name: String,
    pub degree: usize,
    pub generators: Vec<Permutation>,
    pub family: FamilyKind,
    pub expected_order: Option<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Completeness {
    Complete,
    Absent,
}

/// Which of the two alternating classes of a split type occur.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct Incidence {
    pub plus: bool,
    pub minus: bool,
}

impl Incidence {
    fn flags(self) -> &'static str {
        match (self.plus, self.minus) {
            (false, false) => ".",
            (true, false) => "+",
            (false, true) => "-",
            (true, true) => "+-",
        }
    }

    fn parse_flags(s: &str) -> Option<Self> {
        Some(match s {
            "." => Incidence { plus: false, minus: false },
            "+" => Incidence { plus: true, minus: false },
            "-" => Incidence { plus: false, minus: true },
            "+-" => Incidence { plus: true, minus: true },
            _ => return None,
        })
    }

    pub fn has(self, s: Split) -> bool {
        match s {
            Split::None => true,
            Split::Plus => self.plus,
            Split::Minus => self.minus,
        }
    }
}

/// Cycle types occurring in a group, with alternating split incidence for
/// split types among its even elements.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Fingerprint {
    pub degree: usize,
    pub types: BTreeMap<Partition, Incidence>,
}

impl Fingerprint {
    pub fn from_elements(degree: usize, elems: &[Permutation]) -> Result<Self> {
        let mut types: BTreeMap<Partition, Incidence> = BTreeMap::new();
        for g in elems {
            let t = g.cycle_type();
            let splits = t.is_even() && t.splits_in_alt();
            let entry = types.entry(t).or_default();
            if splits {
                match g.split_label()? {
                    Split::Plus => entry.plus = true,
                    Split::Minus => entry.minus = true,
                    Split::None => {}
                }
            }
        }
        Ok(Fingerprint { degree, types })
    }

    pub fn contains_type(&self, t: &Partition) -> bool {
        self.types.contains_key(t)
    }

    /// Whether the group meets the class (for split labels, that exact class).
    pub fn meets(&self, c: &ClassLabel) -> bool {
        self.types.get(&c.cycle_type).is_some_and(|inc| inc.has(c.split))
    }

    pub fn split_incidence(&self) -> impl Iterator<Item = (&Partition, Incidence)> {
        self.types.iter().filter(|(t, _)| t.is_even() && t.splits_in_alt()).map(|(t, &i)| (t, i))
    }
}

#[derive(Debug, Clone)]
pub struct CatalogGroup {
    pub spec: GroupSpec,
    pub order: usize,
    pub fingerprint: Fingerprint,
}

#[derive(Debug, Clone)]
pub struct Catalog {
    pub degree: usize,
    pub completeness: Completeness,
    pub groups: Vec<CatalogGroup>,
}

fn perm_from_fn(n: usize, f: impl Fn(usize) -> usize) -> Permutation {
    Permutation::from_images((0..n).map(f).collect()).expect("construction is a bijection")
}

/// `C_p ⋊ C_e` inside `AGL(1,p)` for each `e | p-1`.
fn affine_prime(p: usize) -> Vec<GroupSpec> {
    let f = Field::new(p).expect("prime field");
    let mut out = Vec::new();
    for e in (1..p).filter(|e| (p - 1) % e == 0) {
        let name = match e {
            1 => format!("C{p}"),
            2 => format!("D{}", 2 * p),
            _ if e == p - 1 => format!("AGL(1,{p})"),
            _ => format!("{p}:{e}"),
        };
        let mut gens = vec![perm_from_fn(p, |t| (t + 1) % p)];
        if e > 1 {
            let mult = f.pow(f.alpha, (p - 1) / e);
            gens.push(perm_from_fn(p, |t| f.mul(mult, t)));
        }
        out.push(spec(&name, p, gens, FamilyKind::Affine, p * e));
    }
    out
}

fn spec(name: &str, degree: usize, generators: Vec<Permutation>, family: FamilyKind, order: usize) -> GroupSpec {
    GroupSpec { name: name.to_string(), degree, generators, family, expected_order: Some(order) }
}

/// Maps on the projective line `GF(q) ∪ {∞}`, with `∞` as point `q`.
struct Line {
    f: Field,
}

impl Line {
    fn inf(&self) -> usize {
        self.f.q
    }

    /// `t ↦ (a t + b) / (c t + d)`.
    fn mobius(&self, a: usize, b: usize, c: usize, d: usize) -> Permutation {
        let f = &self.f;
        let inf = self.inf();
        perm_from_fn(inf + 1, |t| {
            let (num, den) = if t == inf { (a, c) } else { (f.add(f.mul(a, t), b), f.add(f.mul(c, t), d)) };
            if den == 0 {
                inf
            } else {
                f.mul(num, f.inv(den))
            }
        })
    }

    /// `t ↦ scale · t^(p^e)`.
    fn semilinear(&self, scale: usize, e: usize) -> Permutation {
        let f = &self.f;
        let inf = self.inf();
        let exp = f.p.pow(e as u32);
        perm_from_fn(inf + 1, |t| if t == inf { inf } else { f.mul(scale, f.pow(t, exp)) })
    }

    fn pgl(&self) -> Vec<Permutation> {
        let f = &self.f;
        vec![self.mobius(1, 1, 0, 1), self.mobius(f.alpha, 0, 0, 1), self.mobius(0, 1, 1, 0)]
    }

    fn psl(&self) -> Vec<Permutation> {
        let f = &self.f;
        if f.p == 2 {
            return self.pgl();
        }
        vec![self.mobius(1, 1, 0, 1), self.mobius(f.mul(f.alpha, f.alpha), 0, 0, 1), self.mobius(0, f.neg(1), 1, 0)]
    }
}

fn projective_line(q: usize) -> Vec<GroupSpec> {
    let line = Line { f: Field::new(q).expect("prime power") };
    let n = q + 1;
    let psl_order = q * (q * q - 1) / if q % 2 == 1 { 2 } else { 1 };
    let pgl_order = q * (q * q - 1);
    let k = line.f.k;
    let mut out = vec![spec(&format!("PSL(2,{q})"), n, line.psl(), FamilyKind::Projective, psl_order)];
    if q % 2 == 1 {
        out.push(spec(&format!("PGL(2,{q})"), n, line.pgl(), FamilyKind::Projective, pgl_order));
    }
    if k > 1 {
        // intermediate semilinear groups for each divisor chain of the Galois group
        for e in (1..k).filter(|e| k % e == 0) {
            let deg = k / e;
            let mut gens = line.psl();
            gens.push(line.semilinear(1, e));
            if q % 2 == 1 {
                let name = if deg == k { format!("PSigmaL(2,{q})") } else { format!("PSL(2,{q}):{deg}") };
                out.push(spec(&name, n, gens, FamilyKind::Projective, psl_order * deg));
                let mut gens = line.psl();
                gens.push(line.semilinear(line.f.alpha, e));
                let name = if q == 9 { "M10".to_string() } else { format!("PSL(2,{q}).{deg}'") };
                out.push(spec(&name, n, gens, FamilyKind::Projective, psl_order * deg));
                let mut gens = line.pgl();
                gens.push(line.semilinear(1, e));
                let name = if deg == k { format!("PGammaL(2,{q})") } else { format!("PGL(2,{q}):{deg}") };
                out.push(spec(&name, n, gens, FamilyKind::Projective, pgl_order * deg));
            } else {
                let name = if deg == k { format!("PGammaL(2,{q})") } else { format!("PSL(2,{q}):{deg}") };
                out.push(spec(&name, n, gens, FamilyKind::Projective, psl_order * deg));
            }
        }
    }
    out
}

/// `PSL(3,q)` on the points of the projective plane, for `q ∈ {2,3}`.
fn projective_plane(q: usize) -> GroupSpec {
    let f = Field::new(q).expect("prime");
    let mut pts: Vec<[usize; 3]> = Vec::new();
    for a in 0..q {
        for b in 0..q {
            for c in 0..q {
                let v = [a, b, c];
                if let Some(&lead) = v.iter().find(|&&x| x != 0) {
                    if lead == 1 {
                        pts.push(v);
                    }
                }
            }
        }
    }
    let index: HashMap<[usize; 3], usize> = pts.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    let normalize = |v: [usize; 3]| {
        let lead = *v.iter().find(|&&x| x != 0).unwrap();
        let s = f.inv(lead);
        [f.mul(s, v[0]), f.mul(s, v[1]), f.mul(s, v[2])]
    };
    let n = pts.len();
    let mut gens = Vec::new();
    for i in 0..3 {
        for j in 0..3 {
            if i != j {
                gens.push(perm_from_fn(n, |x| {
                    let mut v = pts[x];
                    v[i] = f.add(v[i], v[j]);
                    index[&normalize(v)]
                }));
            }
        }
    }
    let order = (q * q * q - 1) * (q * q * q - q) * (q * q * q - q * q) / (q - 1);
    spec(&format!("PSL(3,{q})"), n, gens, FamilyKind::Projective, order)
}

/// Affine groups of degree 8 built on `GF(2)^3` and `GF(8)`.
fn affine_eight() -> Vec<GroupSpec> {
    let f = Field::new(8).unwrap();
    let trans = perm_from_fn(8, |t| f.add(t, 1));
    let mut out = vec![
        spec("AGL(1,8)", 8, vec![trans.clone(), perm_from_fn(8, |t| f.mul(f.alpha, t))], FamilyKind::Affine, 56),
        spec(
            "AGammaL(1,8)",
            8,
            vec![trans.clone(), perm_from_fn(8, |t| f.mul(f.alpha, t)), perm_from_fn(8, |t| f.mul(t, t))],
            FamilyKind::Affine,
            168,
        ),
    ];
    // transvections on bit vectors
    let mut gens = vec![perm_from_fn(8, |x| x ^ 1)];
    for i in 0..3 {
        for j in 0..3 {
            if i != j {
                gens.push(perm_from_fn(8, |x| x ^ (((x >> j) & 1) << i)));
            }
        }
    }
    out.push(spec("AGL(3,2)", 8, gens, FamilyKind::Affine, 1344));
    out
}

/// Affine groups of degree 9 on `GF(3)^2`, points indexed `x + 3y`.
fn affine_nine() -> Vec<GroupSpec> {
    let f = Field::new(9).unwrap();
    let a = f.alpha;
    let mat = |m: [[usize; 2]; 2]| {
        perm_from_fn(9, move |p| {
            let (x, y) = (p % 3, p / 3);
            let nx = (m[0][0] * x + m[0][1] * y) % 3;
            let ny = (m[1][0] * x + m[1][1] * y) % 3;
            nx + 3 * ny
        })
    };
    let trans = perm_from_fn(9, |p| (p % 3 + 1) % 3 + 3 * (p / 3));
    let with_trans = |mut g: Vec<Permutation>| {
        g.insert(0, trans.clone());
        g
    };
    let ftrans = perm_from_fn(9, |t| f.add(t, 1));
    vec![
        spec("3^2:4", 9, vec![ftrans.clone(), perm_from_fn(9, |t| f.mul(f.mul(a, a), t))], FamilyKind::Affine, 36),
        spec("3^2:D8", 9, with_trans(vec![mat([[2, 0], [0, 1]]), mat([[0, 1], [1, 0]])]), FamilyKind::Affine, 72),
        spec("3^2:Q8", 9, with_trans(vec![mat([[0, 2], [1, 0]]), mat([[1, 1], [1, 2]])]), FamilyKind::Affine, 72),
        spec("AGL(1,9)", 9, vec![ftrans.clone(), perm_from_fn(9, |t| f.mul(a, t))], FamilyKind::Affine, 72),
        spec(
            "AGammaL(1,9)",
            9,
            vec![ftrans, perm_from_fn(9, |t| f.mul(a, t)), perm_from_fn(9, |t| f.pow(t, 3))],
            FamilyKind::Affine,
            144,
        ),
        spec("ASL(2,3)", 9, with_trans(vec![mat([[1, 1], [0, 1]]), mat([[1, 0], [1, 1]])]), FamilyKind::Affine, 216),
        spec(
            "AGL(2,3)",
            9,
            with_trans(vec![mat([[1, 1], [0, 1]]), mat([[1, 0], [1, 1]]), mat([[2, 0], [0, 1]])]),
            FamilyKind::Affine,
            432,
        ),
    ]
}

/// `A_5` and `S_5` acting on the ten 2-subsets of five points.
fn pairs_of_five() -> Vec<GroupSpec> {
    let pairs: Vec<(usize, usize)> = (0..5).flat_map(|i| (i + 1..5).map(move |j| (i, j))).collect();
    let on_pairs = |s: [usize; 5]| {
        perm_from_fn(10, |x| {
            let (i, j) = pairs[x];
            let (a, b) = (s[i].min(s[j]), s[i].max(s[j]));
            pairs.iter().position(|&p| p == (a, b)).unwrap()
        })
    };
    let five = on_pairs([1, 2, 3, 4, 0]);
    vec![
        spec("A5", 10, vec![five.clone(), on_pairs([1, 2, 0, 3, 4])], FamilyKind::Other, 60),
        spec("S5", 10, vec![five, on_pairs([1, 0, 2, 3, 4])], FamilyKind::Other, 120),
    ]
}

/// `S_r ≀ S_2` in product action on `r²` points, `(i, j) ↦ i + r·j`.
pub fn product_action(r: usize) -> GroupSpec {
    let n = r * r;
    let cyc = perm_from_fn(n, |p| (p % r + 1) % r + r * (p / r));
    let tr = perm_from_fn(n, |p| {
        let i = p % r;
        let i2 = if i == 0 { 1 } else if i == 1 { 0 } else { i };
        i2 + r * (p / r)
    });
    let swap = perm_from_fn(n, |p| p / r + r * (p % r));
    let fact: usize = (1..=r).product();
    spec(&format!("S{r}wrS2"), n, vec![cyc, tr, swap], FamilyKind::ProductAction, 2 * fact * fact)
}

/// Parses the generator data file.
pub fn parse_generator_file(text: &str) -> Result<Vec<GroupSpec>> {
    struct Draft {
        start: usize,
        name: Option<String>,
        degree: Option<usize>,
        family: Option<FamilyKind>,
        gens: Vec<(usize, String)>,
        order: Option<usize>,
    }
    fn finish(d: Draft) -> Result<GroupSpec> {
        let err = |msg: &str| Error::DataFile { line: d.start, msg: msg.to_string() };
        let name = d.name.clone().ok_or_else(|| err("missing name"))?;
        let degree = d.degree.ok_or_else(|| err("missing degree"))?;
        let family = d.family.ok_or_else(|| err("missing family"))?;
        let order = d.order.ok_or_else(|| err("missing order"))?;
        if d.gens.is_empty() {
            return Err(err("no generators"));
        }
        let mut generators = Vec::new();
        for (line, g) in &d.gens {
            generators.push(
                Permutation::parse_cycles(g, degree).map_err(|e| Error::DataFile { line: *line, msg: e.to_string() })?,
            );
        }
        Ok(GroupSpec { name, degree, generators, family, expected_order: Some(order) })
    }
    let mut out = Vec::new();
    let mut cur: Option<Draft> = None;
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            if raw.trim().is_empty() {
                if let Some(d) = cur.take() {
                    out.push(finish(d)?);
                }
            }
            continue;
        }
        let err = |msg: String| Error::DataFile { line: line_no, msg };
        let (key, value) = line.split_once(':').ok_or_else(|| err(format!("expected `key: value`, got {line:?}")))?;
        let value = value.trim();
        let d = cur.get_or_insert_with(|| Draft {
            start: line_no,
            name: None,
            degree: None,
            family: None,
            gens: Vec::new(),
            order: None,
        });
        match key.trim() {
            "name" => {
                if value.is_empty() || value.contains(char::is_whitespace) {
                    return Err(err(format!("bad name {value:?}")));
                }
                if d.name.replace(value.to_string()).is_some() {
                    return Err(err("duplicate name".into()));
                }
            }
            "degree" => {
                let n: usize = value.parse().map_err(|_| err(format!("bad degree {value:?}")))?;
                if !(1..=64).contains(&n) {
                    return Err(err(format!("degree {n} outside 1..=64")));
                }
                if d.degree.replace(n).is_some() {
                    return Err(err("duplicate degree".into()));
                }
            }
            "family" => {
                let f = value.parse().map_err(|e: Error| err(e.to_string()))?;
                if d.family.replace(f).is_some() {
                    return Err(err("duplicate family".into()));
                }
            }
            "gen" => {
                if d.degree.is_none() {
                    return Err(err("gen before degree".into()));
                }
                d.gens.push((line_no, value.to_string()));
            }
            "order" => {
                let o: usize = value.parse().map_err(|_| err(format!("bad order {value:?}")))?;
                if o == 0 || d.order.replace(o).is_some() {
                    return Err(err("bad or duplicate order".into()));
                }
            }
            other => return Err(err(format!("unknown key {other:?}"))),
        }
    }
    if let Some(d) = cur.take() {
        out.push(finish(d)?);
    }
    Ok(out)
}

/// The primitive groups of degree `n` other than `A_n` and `S_n`.
pub fn primitive_catalog(n: usize) -> Result<(Vec<GroupSpec>, Completeness)> {
    if !EXACT_DEGREES.contains(&n) {
        return Ok((Vec::new(), Completeness::Absent));
    }
    let mut out = Vec::new();
    if is_prime(n) && n >= 5 {
        out.extend(affine_prime(n));
    }
    match n {
        6 => out.extend(projective_line(5)),
        7 => out.push(projective_plane(2)),
        8 => {
            out.extend(affine_eight());
            out.extend(projective_line(7));
        }
        9 => {
            out.extend(affine_nine());
            out.extend(projective_line(8));
        }
        10 => {
            out.extend(pairs_of_five());
            out.extend(projective_line(9));
        }
        12 => out.extend(projective_line(11)),
        13 => out.push(projective_plane(3)),
        17 => out.extend(projective_line(16)),
        _ => {}
    }
    out.extend(parse_generator_file(GENERATOR_DATA)?.into_iter().filter(|g| g.degree == n));
    Ok((out, Completeness::Complete))
}

/// Whether `⟨gens⟩` is transitive and preserves no nontrivial block system.
pub fn is_primitive(gens: &[Permutation], n: usize) -> bool {
    if !is_transitive(gens, n) {
        return false;
    }
    // minimal block containing {0, b}, by union-find closure
    (1..n).all(|b| {
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(p: &mut [usize], mut x: usize) -> usize {
            while p[x] != x {
                p[x] = p[p[x]];
                x = p[x];
            }
            x
        }
        let mut queue = vec![(0, b)];
        let r = find(&mut parent, b);
        parent[r] = find(&mut parent, 0);
        while let Some((x, y)) = queue.pop() {
            for g in gens {
                let (gx, gy) = (g.apply(x), g.apply(y));
                let (rx, ry) = (find(&mut parent, gx), find(&mut parent, gy));
                if rx != ry {
                    parent[ry] = rx;
                    queue.push((gx, gy));
                }
            }
        }
        let r0 = find(&mut parent, 0);
        (0..n).all(|x| find(&mut parent, x) == r0)
    })
}

pub fn is_transitive(gens: &[Permutation], n: usize) -> bool {
    let mut seen = vec![false; n];
    seen[0] = true;
    let mut stack = vec![0];
    while let Some(x) = stack.pop() {
        for g in gens {
            let y = g.apply(x);
            if !std::mem::replace(&mut seen[y], true) {
                stack.push(y);
            }
        }
    }
    seen.into_iter().all(|s| s)
}

fn half_factorial(n: usize) -> u128 {
    (1..=n as u128).product::<u128>() / 2
}

/// Closes the group, checks it against its spec, and fingerprints it.
pub fn build_group(spec: &GroupSpec) -> Result<CatalogGroup> {
    let n = spec.degree;
    let bad = |msg: String| Error::GroupCheck { name: spec.name.clone(), msg };
    if !is_transitive(&spec.generators, n) {
        return Err(bad("not transitive".into()));
    }
    if n >= 3 && !is_primitive(&spec.generators, n) {
        return Err(bad("not primitive".into()));
    }
    let elems = closure(&spec.generators, n, DEFAULT_CAP)?;
    let order = elems.len();
    if let Some(e) = spec.expected_order {
        if e != order {
            return Err(bad(format!("order {order}, expected {e}")));
        }
    }
    if order as u128 >= half_factorial(n) {
        return Err(bad("contains the alternating group".into()));
    }
    let fingerprint = Fingerprint::from_elements(n, &elems)?;
    Ok(CatalogGroup { spec: spec.clone(), order, fingerprint })
}

/// Digest of everything that determines the fingerprints.
pub fn data_digest() -> String {
    let mut h = Sha256::new();
    h.update(CONSTRUCTION_VERSION.as_bytes());
    h.update(GENERATOR_DATA.as_bytes());
    format!("{:x}", h.finalize())
}

/// Parsed contents of a fingerprint cache file.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CacheFile {
    pub degree: usize,
    pub digest: String,
    pub groups: Vec<(String, usize, Fingerprint)>,
}

pub fn render_cache(c: &CacheFile) -> String {
    let mut s = format!("{CACHE_HEADER}\ndegree {}\ndigest {}\n", c.degree, c.digest);
    for (name, order, fp) in &c.groups {
        s.push_str(&format!("group {name} {order}\n"));
        for (t, inc) in &fp.types {
            s.push_str(&format!("{t} {}\n", inc.flags()));
        }
    }
    s
}

pub fn parse_cache(text: &str) -> Result<CacheFile> {
    let bad = |line: usize, msg: &str| Error::Cache(format!("line {line}: {msg}"));
    let mut lines = text.lines().enumerate().map(|(i, l)| (i + 1, l.trim_end()));
    match lines.next() {
        Some((_, h)) if h == CACHE_HEADER => {}
        _ => return Err(bad(1, "missing header")),
    }
    let degree: usize = match lines.next() {
        Some((i, l)) => l
            .strip_prefix("degree ")
            .and_then(|d| d.parse().ok())
            .filter(|d| (1..=64).contains(d))
            .ok_or_else(|| bad(i, "bad degree line"))?,
        None => return Err(bad(2, "missing degree")),
    };
    let digest = match lines.next() {
        Some((i, l)) => l
            .strip_prefix("digest ")
            .filter(|d| !d.is_empty() && d.chars().all(|c| c.is_ascii_hexdigit()))
            .ok_or_else(|| bad(i, "bad digest line"))?
            .to_string(),
        None => return Err(bad(3, "missing digest")),
    };
    let mut groups: Vec<(String, usize, Fingerprint)> = Vec::new();
    for (i, l) in lines {
        if l.is_empty() {
            continue;
        }
        if let Some(rest) = l.strip_prefix("group ") {
            let (name, order) = rest.rsplit_once(' ').ok_or_else(|| bad(i, "bad group line"))?;
            let order: usize = order.parse().map_err(|_| bad(i, "bad order"))?;
            if name.is_empty() || name.contains(' ') {
                return Err(bad(i, "bad group name"));
            }
            groups.push((name.to_string(), order, Fingerprint { degree, types: BTreeMap::new() }));
            continue;
        }
        let (_, _, fp) = groups.last_mut().ok_or_else(|| bad(i, "type line before any group"))?;
        let (parts, flags) = l.split_once(' ').ok_or_else(|| bad(i, "bad type line"))?;
        let t: Partition = parts.parse().map_err(|_| bad(i, "bad partition"))?;
        if t.n() != degree {
            return Err(bad(i, "partition of the wrong degree"));
        }
        let inc = Incidence::parse_flags(flags).ok_or_else(|| bad(i, "bad flags"))?;
        if (inc.plus || inc.minus) && !(t.is_even() && t.splits_in_alt()) {
            return Err(bad(i, "split flags on a type that does not split"));
        }
        if fp.types.insert(t, inc).is_some() {
            return Err(bad(i, "duplicate type"));
        }
    }
    Ok(CacheFile { degree, digest, groups })
}

/// Default cache directory: `$INVGRAPH_CACHE_DIR`, else `./.invgraph-cache`.
pub fn default_cache_dir() -> PathBuf {
    std::env::var_os("INVGRAPH_CACHE_DIR").map(PathBuf::from).unwrap_or_else(|| PathBuf::from(".invgraph-cache"))
}

fn cache_path(dir: &Path, n: usize) -> PathBuf {
    dir.join(format!("fingerprints-{n}.txt"))
}

impl Catalog {
    /// Builds the catalog from scratch.
    pub fn compute(n: usize) -> Result<Catalog> {
        use rayon::prelude::*;
        let (specs, completeness) = primitive_catalog(n)?;
        let groups = specs.par_iter().map(build_group).collect::<Result<Vec<_>>>()?;
        Ok(Catalog { degree: n, completeness, groups })
    }

    /// Loads fingerprints from `dir` when present and current, otherwise
    /// computes them and writes the cache file.
    pub fn load_cached(n: usize, dir: &Path) -> Result<Catalog> {
        let (specs, completeness) = primitive_catalog(n)?;
        let digest = data_digest();
        let path = cache_path(dir, n);
        if let Ok(text) = std::fs::read_to_string(&path) {
            if let Ok(c) = parse_cache(&text) {
                let names_match = c.groups.len() == specs.len()
                    && c.groups.iter().zip(&specs).all(|((name, _, _), s)| *name == s.name);
                if c.degree == n && c.digest == digest && names_match {
                    let groups = specs
                        .into_iter()
                        .zip(c.groups)
                        .map(|(spec, (_, order, fingerprint))| CatalogGroup { spec, order, fingerprint })
                        .collect();
                    return Ok(Catalog { degree: n, completeness, groups });
                }
            }
        }
        let cat = Catalog::compute(n)?;
        let file = CacheFile {
            degree: n,
            digest,
            groups: cat.groups.iter().map(|g| (g.spec.name.clone(), g.order, g.fingerprint.clone())).collect(),
        };
        std::fs::create_dir_all(dir)?;
        let tmp = dir.join(format!(".fingerprints-{n}.{}.tmp", std::process::id()));
        std::fs::write(&tmp, render_cache(&file))?;
        std::fs::rename(&tmp, &path)?;
        Ok(cat)
    }

    /// Process-wide memoized catalog, computed without touching disk.
    pub fn get(n: usize) -> Result<Arc<Catalog>> {
        static MEMO: OnceLock<Mutex<HashMap<usize, Arc<OnceLock<Arc<Catalog>>>>>> = OnceLock::new();
        let cell = {
            let mut m = MEMO.get_or_init(Default::default).lock().unwrap();
            m.entry(n).or_default().clone()
        };
        if let Some(c) = cell.get() {
            return Ok(c.clone());
        }
        let c = Arc::new(Catalog::compute(n)?);
        Ok(cell.get_or_init(|| c).clone())
    }

    pub fn require_complete(&self) -> Result<()> {
        match self.completeness {
            Completeness::Complete => Ok(()),
            Completeness::Absent => Err(Error::CatalogAbsent(self.degree)),
        }
    }
}

impl fmt::Display for CatalogGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} degree {} order {} family {} types {}",
            self.spec.name,
            self.spec.degree,
            self.order,
            self.spec.family.name(),
            self.fingerprint.types.len()
        )
    }
}
