//! Generators for the named hypergraph families and the explicit labelings
//! that certify where each one sits relative to `ρ'_r`.
//!
//! Vertex numbering is deterministic: spine (or central edge, or cycle)
//! first, then attachments in the order they are listed.

use crate::beta::{f_iter, solve_symmetric, BetaParams};
use crate::error::{Error, Result};
use crate::hypergraph::{Hypergraph, PartialHypergraph};
use crate::labeling::{Certificate, CertificateKind, WeightedIncidence};
use crate::scalar::{beta_star, Scalar};
use crate::spectral::{alpha_from_rho, eigenvector_to_labeling, power_run, DEFAULT_MAX_ITER};
use crate::sweep::{label_chain, label_hanging, rooted_labeling, Root};
use serde::{Deserialize, Serialize};

/// Entry of an open-quipu spine, read left to right.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SpineItem {
    /// A spine edge; each entry of `hangs` attaches a path of that length at
    /// one of the edge's off-spine vertices (0 leaves the vertex a leaf).
    Edge { hangs: Vec<usize> },
    /// A path of length `hang` attached at the current spine vertex.
    Vertex { hang: usize },
}

impl SpineItem {
    pub fn plain() -> Self {
        SpineItem::Edge { hangs: vec![] }
    }
}

/// A path of `length` edges hanging from the free vertex of cycle edge
/// `position`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Attachment {
    pub position: usize,
    pub length: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum SmithKind {
    A,
    D,
    E6,
    E7,
    E8,
}

/// Hypergraphs from the exclusion arguments. `H1_*`/`H2_*` are partial
/// (one designated vertex).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "name")]
pub enum Forbidden {
    #[serde(rename = "S5_3")]
    S5_3,
    #[serde(rename = "S4plus_3")]
    S4Plus3,
    #[serde(rename = "Cs_plus")]
    CsPlus { r: usize, s: usize },
    #[serde(rename = "C2plus_3")]
    C2Plus3,
    #[serde(rename = "C2primeplus_3")]
    C2PrimePlus3,
    #[serde(rename = "Cnplus_3")]
    CnPlus3 { n: usize },
    #[serde(rename = "Cprime_nplus_3")]
    CPrimeNPlus3 { n: usize, m: usize },
    #[serde(rename = "Cdoubleprime_nplus_3")]
    CDoublePrimeNPlus3 { n: usize, m: usize },
    #[serde(rename = "H1_3")]
    H1_3 { n: usize },
    #[serde(rename = "H2_3")]
    H2_3 { n: usize },
    #[serde(rename = "C4nplus")]
    C4NPlus { n: usize },
    #[serde(rename = "Cprime4nplus")]
    CPrime4NPlus { n: usize, m: usize },
    #[serde(rename = "H1_4")]
    H1_4 { n: usize },
    #[serde(rename = "H2_4")]
    H2_4 { n: usize, j: usize },
    #[serde(rename = "S5prime_5")]
    S5Prime5,
    #[serde(rename = "S5plus_5")]
    S5Plus5,
    #[serde(rename = "Sr_r")]
    SrR { r: usize },
}

/// Partial hypergraphs with subnormal labelings (designated corners 1/2).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "name")]
pub enum PartialFamily {
    #[serde(rename = "G1_3")]
    G1_3 { m: usize, k1: usize, k2: usize },
    #[serde(rename = "G2_2")]
    G2_2 { m: usize, k: usize },
    #[serde(rename = "G3_4")]
    G3_4 { t: usize, k: usize },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "snake_case")]
pub enum FamilySpec {
    Path { r: usize, n: usize },
    Cycle { r: usize, n: usize },
    Star { r: usize, k: usize },
    EdgeStar { r: usize },
    C2 { r: usize },
    F3 { m: usize, n: usize, k: usize },
    Theta { m1: usize, m2: usize, m3: usize },
    Dagger4 { i: usize, j: usize, k: usize, l: usize },
    OpenQuipu3 { spine: Vec<SpineItem> },
    ClosedQuipu3 { n: usize, attachments: Vec<Attachment> },
    OpenQuipu4 { spine: Vec<SpineItem> },
    GraphE1bc { b: usize, c: usize },
    GraphE22c { c: usize },
    GraphG1ab1c { a: usize, b: usize, c: usize },
    Smith { kind: SmithKind, n: usize },
    SmithTilde { kind: SmithKind, n: usize },
    Forbidden(Forbidden),
    Partial(PartialFamily),
}

/// Output of [`build`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(untagged)]
pub enum Built {
    Full(Hypergraph),
    Partial(PartialHypergraph),
}

impl Built {
    pub fn hypergraph(&self) -> &Hypergraph {
        match self {
            Built::Full(h) => h,
            Built::Partial(p) => &p.base,
        }
    }

    pub fn designated(&self) -> &[usize] {
        match self {
            Built::Full(_) => &[],
            Built::Partial(p) => &p.designated,
        }
    }

    pub fn into_hypergraph(self) -> Hypergraph {
        match self {
            Built::Full(h) => h,
            Built::Partial(p) => p.base,
        }
    }
}

struct Builder {
    r: usize,
    n: usize,
    edges: Vec<Vec<usize>>,
}

impl Builder {
    fn new(r: usize) -> Self {
        Builder { r, n: 0, edges: Vec::new() }
    }

    fn vertex(&mut self) -> usize {
        self.n += 1;
        self.n - 1
    }

    fn vertices(&mut self, k: usize) -> Vec<usize> {
        (0..k).map(|_| self.vertex()).collect()
    }

    /// New edge through `fixed`, filled up with fresh vertices.
    fn edge(&mut self, fixed: &[usize]) -> usize {
        let mut e = fixed.to_vec();
        while e.len() < self.r {
            let v = self.vertex();
            e.push(v);
        }
        self.edges.push(e);
        self.edges.len() - 1
    }

    fn edge_vertices(&self, e: usize) -> Vec<usize> {
        self.edges[e].clone()
    }

    /// Path of `len` edges from `from`; returns the chain `(edge, from, to)`
    /// and the far end (`from` itself when `len = 0`).
    fn path(&mut self, from: usize, len: usize) -> (Vec<(usize, usize, usize)>, usize) {
        let mut cur = from;
        let mut chain = Vec::with_capacity(len);
        for _ in 0..len {
            let to = self.vertex();
            let e = self.edge(&[cur, to]);
            chain.push((e, cur, to));
            cur = to;
        }
        (chain, cur)
    }

    fn finish(self) -> Result<Hypergraph> {
        Hypergraph::new(self.r, self.n, self.edges)
    }
}

fn bad(msg: impl Into<String>) -> Error {
    Error::InvalidParameter(msg.into())
}

fn need(cond: bool, msg: &str) -> Result<()> {
    if cond {
        Ok(())
    } else {
        Err(bad(msg))
    }
}

/// Central edge with a path of `arms[i]` edges at its `i`-th vertex
/// (0 leaves it a leaf). Returns the builder, and the far end of each arm.
fn spider_builder(r: usize, arms: &[usize]) -> Result<(Builder, Vec<usize>)> {
    need(r >= 2, "uniformity must be at least 2")?;
    need(arms.len() <= r, "more arms than vertices in the central edge")?;
    let mut b = Builder::new(r);
    let center = b.edge(&[]);
    let cv = b.edge_vertices(center);
    let mut ends = Vec::with_capacity(arms.len());
    for (i, &len) in arms.iter().enumerate() {
        ends.push(b.path(cv[i], len).1);
    }
    Ok((b, ends))
}

/// Central edge (edge 0, vertices `0..r`) with a hanging path of `arms[i]`
/// edges at vertex `i`.
pub fn spider(r: usize, arms: &[usize]) -> Result<Hypergraph> {
    spider_builder(r, arms)?.0.finish()
}

fn vertex_spider_builder(r: usize, arms: &[usize]) -> Result<(Builder, Vec<usize>)> {
    need(r >= 2, "uniformity must be at least 2")?;
    need(!arms.is_empty() && arms.iter().all(|&a| a >= 1), "arms must have at least one edge")?;
    let mut b = Builder::new(r);
    let c = b.vertex();
    let ends = arms.iter().map(|&len| b.path(c, len).1).collect();
    Ok((b, ends))
}

/// Vertex 0 with hanging paths of the given lengths; `T(a,b,c)` for r = 2.
pub fn vertex_spider(r: usize, arms: &[usize]) -> Result<Hypergraph> {
    vertex_spider_builder(r, arms)?.0.finish()
}

/// Cycle of `n` edges through `c_0..c_{n−1}` (vertices `0..n`), edge `i`
/// containing `c_i, c_{i+1}`. Returns builder, cycle vertices and edges.
fn cycle_builder(r: usize, n: usize) -> (Builder, Vec<usize>, Vec<usize>) {
    let mut b = Builder::new(r);
    let cv = b.vertices(n);
    let ce = (0..n).map(|i| b.edge(&[cv[i], cv[(i + 1) % n]])).collect();
    (b, cv, ce)
}

fn spine_builder(r: usize, spine: &[SpineItem]) -> Result<Builder> {
    need(!spine.is_empty(), "empty spine")?;
    let mut b = Builder::new(r);
    let mut cur = b.vertex();
    let mut any_edge = false;
    for item in spine {
        match item {
            SpineItem::Edge { hangs } => {
                need(hangs.len() <= r - 2, "more hangs than off-spine vertices")?;
                let next = b.vertex();
                let e = b.edge(&[cur, next]);
                let ev = b.edge_vertices(e);
                for (k, &len) in hangs.iter().enumerate() {
                    b.path(ev[2 + k], len);
                }
                cur = next;
                any_edge = true;
            }
            SpineItem::Vertex { hang } => {
                need(*hang >= 1, "vertex attachments need at least one edge")?;
                b.path(cur, *hang);
            }
        }
    }
    need(any_edge, "spine has no edges")?;
    Ok(b)
}

/// Lengths of the spine on either side of item `i` when that side is a bare
/// path, `None` otherwise.
fn bare_sides(spine: &[SpineItem], i: usize) -> [Option<usize>; 2] {
    let bare = |items: &[SpineItem]| -> Option<usize> {
        items
            .iter()
            .try_fold(0, |acc, it| match it {
                SpineItem::Edge { hangs } if hangs.iter().all(|&h| h == 0) => Some(acc + 1),
                _ => None,
            })
    };
    [bare(&spine[..i]), bare(&spine[i + 1..])]
}

/// Each edge with both off-spine vertices hung and spine on both sides is a
/// 4-branching edge; three of its arms must be paths of lengths 1, 1, k with
/// k ≤ 3.
fn check_pendant_rule(spine: &[SpineItem]) -> Result<()> {
    for (i, item) in spine.iter().enumerate() {
        let SpineItem::Edge { hangs } = item else { continue };
        if hangs.len() < 2 || hangs.iter().any(|&h| h == 0) {
            continue;
        }
        let sides = bare_sides(spine, i);
        let left_present = i > 0;
        let right_present = i + 1 < spine.len();
        if !(left_present && right_present) {
            continue;
        }
        let ok = sides.iter().flatten().filter(|&&s| s > 0).any(|&s| {
            let mut arms = [hangs[0], hangs[1], s];
            arms.sort_unstable();
            arms[0] == 1 && arms[1] == 1 && arms[2] <= 3
        });
        if !ok {
            return Err(bad(format!("spine item {i} breaks the 1, 1, k (k <= 3) pendant rule")));
        }
    }
    Ok(())
}

fn smith(kind: SmithKind, n: usize) -> Result<Hypergraph> {
    match kind {
        SmithKind::A => {
            need(n >= 2, "A_n needs n >= 2")?;
            let mut b = Builder::new(2);
            let s = b.vertex();
            b.path(s, n - 1);
            b.finish()
        }
        SmithKind::D => {
            need(n >= 4, "D_n needs n >= 4")?;
            vertex_spider(2, &[1, 1, n - 3])
        }
        SmithKind::E6 => vertex_spider(2, &[1, 2, 2]),
        SmithKind::E7 => vertex_spider(2, &[1, 2, 3]),
        SmithKind::E8 => vertex_spider(2, &[1, 2, 4]),
    }
}

fn smith_tilde(kind: SmithKind, n: usize) -> Result<Hypergraph> {
    match kind {
        SmithKind::A => {
            need(n >= 2, "Ã_n needs n >= 2")?;
            Ok(cycle_builder(2, n + 1).0.finish()?)
        }
        SmithKind::D => {
            need(n >= 4, "D̃_n needs n >= 4")?;
            let mut b = Builder::new(2);
            let s = b.vertex();
            let (_, t) = b.path(s, n - 4);
            for v in [s, s, t, t] {
                b.path(v, 1);
            }
            b.finish()
        }
        SmithKind::E6 => vertex_spider(2, &[2, 2, 2]),
        SmithKind::E7 => vertex_spider(2, &[1, 3, 3]),
        SmithKind::E8 => vertex_spider(2, &[1, 2, 5]),
    }
}

fn graph_g(a: usize, b_len: usize, c: usize) -> Result<Hypergraph> {
    need(a >= 1 && b_len >= 1 && c >= 1, "G_{1,a:b:1,c} needs a, b, c >= 1")?;
    let mut b = Builder::new(2);
    let u = b.vertex();
    let (_, w) = b.path(u, b_len);
    b.path(u, 1);
    b.path(u, a);
    b.path(w, 1);
    b.path(w, c);
    b.finish()
}

/// Cycle of `n` edges whose edge 0 = `{c_0, c_1, …}` is the branching edge;
/// returns builder, cycle vertices, cycle edges and the off-cycle vertices
/// of edge 0.
fn branched_cycle(r: usize, n: usize) -> Result<(Builder, Vec<usize>, Vec<usize>, Vec<usize>)> {
    need(n >= 3, "cycle length must be at least 3")?;
    let (b, cv, ce) = cycle_builder(r, n);
    let extra = b.edges[ce[0]][2..].to_vec();
    Ok((b, cv, ce, extra))
}

fn build_forbidden(f: &Forbidden) -> Result<Built> {
    use Forbidden::*;
    let full = |b: Builder| b.finish().map(Built::Full);
    let partial = |b: Builder, red: usize| -> Result<Built> {
        Ok(Built::Partial(PartialHypergraph::new(b.finish()?, vec![red])?))
    };
    match *f {
        S5_3 => build(&FamilySpec::Star { r: 3, k: 5 }),
        S4Plus3 => {
            let mut b = Builder::new(3);
            let c = b.vertex();
            let e0 = b.edge(&[c]);
            let w = b.edges[e0][1];
            for _ in 0..3 {
                b.edge(&[c]);
            }
            b.path(w, 1);
            full(b)
        }
        CsPlus { r, s } => {
            need(s >= 3 && s < r, "Cs_plus needs 3 <= s <= r-1")?;
            let mut b = Builder::new(r);
            let e0 = b.edge(&[]);
            let shared = b.edges[e0][..s].to_vec();
            b.edge(&shared);
            full(b)
        }
        C2Plus3 => {
            let mut b = Builder::new(3);
            let ab = b.vertices(2);
            b.edge(&ab);
            b.edge(&ab);
            b.edge(&ab[..1]);
            full(b)
        }
        C2PrimePlus3 => {
            let mut b = Builder::new(3);
            let ab = b.vertices(2);
            b.edge(&ab);
            let f2 = b.edge(&ab);
            let c = b.edges[f2][2];
            b.edge(&[c]);
            full(b)
        }
        CnPlus3 { n } => {
            need(n >= 3, "cycle length must be at least 3")?;
            let (mut b, cv, _) = cycle_builder(3, n);
            b.path(cv[0], 1);
            full(b)
        }
        CPrimeNPlus3 { n, m } => {
            let (mut b, _, _, extra) = branched_cycle(3, n)?;
            let (_, v) = b.path(extra[0], m);
            b.path(v, 1);
            b.path(v, 1);
            full(b)
        }
        CDoublePrimeNPlus3 { n, m } => {
            let (mut b, _, _, extra) = branched_cycle(3, n)?;
            let (_, p) = b.path(extra[0], m);
            let f = b.edge(&[p]);
            let fv = b.edge_vertices(f);
            b.path(fv[1], 1);
            b.path(fv[2], 1);
            full(b)
        }
        H1_3 { n } | H1_4 { n } => {
            let r = if matches!(f, H1_3 { .. }) { 3 } else { 4 };
            let mut b = Builder::new(r);
            let v = b.vertex();
            b.path(v, 1);
            b.path(v, 1);
            let (_, red) = b.path(v, n);
            partial(b, red)
        }
        H2_3 { n } => {
            let (b, ends) = spider_builder(3, &[1, 1, n])?;
            partial(b, ends[2])
        }
        H2_4 { n, j } => {
            need(j <= 3, "H2_4 needs j in {0,1,2,3}")?;
            let (b, ends) = spider_builder(4, &[1, 1, j, n])?;
            partial(b, ends[3])
        }
        C4NPlus { n } => {
            let (mut b, _, _, extra) = branched_cycle(4, n)?;
            b.path(extra[0], 1);
            b.path(extra[1], 1);
            full(b)
        }
        CPrime4NPlus { n, m } => {
            let (mut b, _, _, extra) = branched_cycle(4, n)?;
            let (_, p) = b.path(extra[0], m);
            let f = b.edge(&[p]);
            let fv = b.edge_vertices(f);
            for &v in &fv[1..] {
                b.path(v, 1);
            }
            full(b)
        }
        S5Prime5 => {
            let mut b = Builder::new(5);
            let f0 = b.edge(&[]);
            let v = b.edge_vertices(f0);
            let w = b.vertex();
            b.edge(&[v[0], w]);
            b.edge(&[v[1], w]);
            for &x in &v[2..] {
                b.edge(&[x]);
            }
            full(b)
        }
        S5Plus5 => Ok(Built::Full(spider(5, &[2, 1, 1, 1, 1])?)),
        SrR { r } => {
            need(r >= 2, "uniformity must be at least 2")?;
            build(&FamilySpec::EdgeStar { r })
        }
    }
}

fn build_partial(p: &PartialFamily) -> Result<Built> {
    let (b, red) = match *p {
        PartialFamily::G1_3 { m, k1, k2 } => {
            need(m >= 1 && k1 >= 1 && k2 >= 1, "G1_3 needs m, k1, k2 >= 1")?;
            let (b, ends) = spider_builder(3, &[m, k1, k2])?;
            (b, vec![ends[1], ends[2]])
        }
        PartialFamily::G2_2 { m, k } => {
            need(m >= 1 && k >= 1, "G2_2 needs m, k >= 1")?;
            let (b, ends) = vertex_spider_builder(2, &[1, m, k])?;
            (b, vec![ends[2]])
        }
        PartialFamily::G3_4 { t, k } => {
            need((1..=3).contains(&t), "G3_4 needs t in {1,2,3}")?;
            need(k >= 1, "G3_4 needs k >= 1")?;
            let (b, ends) = spider_builder(4, &[1, 1, t, k])?;
            (b, vec![ends[3]])
        }
    };
    Ok(Built::Partial(PartialHypergraph::new(b.finish()?, red)?))
}

/// Build the hypergraph (or partial hypergraph) a spec names.
pub fn build(spec: &FamilySpec) -> Result<Built> {
    use FamilySpec::*;
    let h = match spec {
        Path { r, n } => {
            need(*r >= 2 && *n >= 1, "Path needs r >= 2, n >= 1")?;
            let mut b = Builder::new(*r);
            let s = b.vertex();
            b.path(s, *n);
            b.finish()?
        }
        Cycle { r, n } => {
            need(*r >= 2, "uniformity must be at least 2")?;
            need(*n >= 3 || (*r >= 3 && *n == 2), "cycle too short")?;
            cycle_builder(*r, *n).0.finish()?
        }
        Star { r, k } => {
            need(*r >= 2 && *k >= 1, "Star needs r >= 2, k >= 1")?;
            let mut b = Builder::new(*r);
            let c = b.vertex();
            for _ in 0..*k {
                b.edge(&[c]);
            }
            b.finish()?
        }
        EdgeStar { r } => spider(*r, &vec![1; *r])?,
        C2 { r } => {
            need(*r >= 3, "C2 needs r >= 3")?;
            let mut b = Builder::new(*r);
            let e0 = b.edge(&[]);
            let shared = b.edges[e0][..2].to_vec();
            b.edge(&shared);
            b.finish()?
        }
        F3 { m, n, k } => {
            need(*m >= 1 && *n >= 1 && *k >= 1, "F3 arms must have at least one edge")?;
            spider(3, &[*m, *n, *k])?
        }
        Theta { m1, m2, m3 } => {
            let ms = [*m1, *m2, *m3];
            need(ms.iter().all(|&m| m >= 1), "Theta paths must have at least one edge")?;
            let mut b = Builder::new(3);
            let e1 = b.edge(&[]);
            let a = b.edge_vertices(e1);
            let ends: Vec<usize> = (0..3).map(|i| b.path(a[i], ms[i]).1).collect();
            b.edge(&ends);
            b.finish()?
        }
        Dagger4 { i, j, k, l } => {
            need(1 <= *i && i <= j && j <= k && k <= l, "Dagger4 needs 1 <= i <= j <= k <= l")?;
            spider(4, &[*i, *j, *k, *l])?
        }
        OpenQuipu3 { spine } => spine_builder(3, spine)?.finish()?,
        OpenQuipu4 { spine } => {
            check_pendant_rule(spine)?;
            spine_builder(4, spine)?.finish()?
        }
        ClosedQuipu3 { n, attachments } => {
            need(*n >= 3, "cycle length must be at least 3")?;
            let (mut b, _, ce) = cycle_builder(3, *n);
            let mut used = vec![false; *n];
            for at in attachments {
                need(at.position < *n && !used[at.position], "attachment positions must be distinct cycle edges")?;
                need(at.length >= 1, "attachments need at least one edge")?;
                used[at.position] = true;
                let apex = b.edges[ce[at.position]][2];
                b.path(apex, at.length);
            }
            b.finish()?
        }
        GraphE1bc { b, c } => vertex_spider(2, &[1, *b, *c])?,
        GraphE22c { c } => vertex_spider(2, &[2, 2, *c])?,
        GraphG1ab1c { a, b, c } => graph_g(*a, *b, *c)?,
        Smith { kind, n } => smith(*kind, *n)?,
        SmithTilde { kind, n } => smith_tilde(*kind, *n)?,
        Forbidden(f) => return build_forbidden(f),
        Partial(p) => return build_partial(p),
    };
    Ok(Built::Full(h))
}

impl FamilySpec {
    /// Parse a family from a name and positional integer parameters.
    /// Quipus take structured spines and are only available as JSON.
    pub fn from_name(name: &str, p: &[usize]) -> Result<FamilySpec> {
        use FamilySpec::*;
        let arity = |k: usize| -> Result<()> {
            if p.len() == k {
                Ok(())
            } else {
                Err(bad(format!("{name} takes {k} parameter(s), got {}", p.len())))
            }
        };
        let f = |x: self::Forbidden| FamilySpec::Forbidden(x);
        let spec = match name {
            "path" | "Path" => (arity(2)?, Path { r: p[0], n: p[1] }).1,
            "cycle" | "Cycle" => (arity(2)?, Cycle { r: p[0], n: p[1] }).1,
            "star" | "Star" => (arity(2)?, Star { r: p[0], k: p[1] }).1,
            "edge-star" | "EdgeStar" => (arity(1)?, EdgeStar { r: p[0] }).1,
            "c2" | "C2" => (arity(1)?, C2 { r: p[0] }).1,
            "f3" | "F3" => (arity(3)?, F3 { m: p[0], n: p[1], k: p[2] }).1,
            "theta" | "Theta" => (arity(3)?, Theta { m1: p[0], m2: p[1], m3: p[2] }).1,
            "dagger4" | "Dagger4" => (arity(4)?, Dagger4 { i: p[0], j: p[1], k: p[2], l: p[3] }).1,
            "E1bc" | "GraphE1bc" => (arity(2)?, GraphE1bc { b: p[0], c: p[1] }).1,
            "E22c" | "GraphE22c" => (arity(1)?, GraphE22c { c: p[0] }).1,
            "G1ab1c" | "GraphG1ab1c" => (arity(3)?, GraphG1ab1c { a: p[0], b: p[1], c: p[2] }).1,
            "A" => (arity(1)?, Smith { kind: SmithKind::A, n: p[0] }).1,
            "D" => (arity(1)?, Smith { kind: SmithKind::D, n: p[0] }).1,
            "E6" => (arity(0)?, Smith { kind: SmithKind::E6, n: 6 }).1,
            "E7" => (arity(0)?, Smith { kind: SmithKind::E7, n: 7 }).1,
            "E8" => (arity(0)?, Smith { kind: SmithKind::E8, n: 8 }).1,
            "A~" => (arity(1)?, SmithTilde { kind: SmithKind::A, n: p[0] }).1,
            "D~" => (arity(1)?, SmithTilde { kind: SmithKind::D, n: p[0] }).1,
            "E6~" => (arity(0)?, SmithTilde { kind: SmithKind::E6, n: 6 }).1,
            "E7~" => (arity(0)?, SmithTilde { kind: SmithKind::E7, n: 7 }).1,
            "E8~" => (arity(0)?, SmithTilde { kind: SmithKind::E8, n: 8 }).1,
            "S5_3" => (arity(0)?, f(self::Forbidden::S5_3)).1,
            "S4plus_3" => (arity(0)?, f(self::Forbidden::S4Plus3)).1,
            "Cs_plus" => (arity(2)?, f(self::Forbidden::CsPlus { r: p[0], s: p[1] })).1,
            "C2plus_3" => (arity(0)?, f(self::Forbidden::C2Plus3)).1,
            "C2primeplus_3" => (arity(0)?, f(self::Forbidden::C2PrimePlus3)).1,
            "Cnplus_3" => (arity(1)?, f(self::Forbidden::CnPlus3 { n: p[0] })).1,
            "Cprime_nplus_3" => (arity(2)?, f(self::Forbidden::CPrimeNPlus3 { n: p[0], m: p[1] })).1,
            "Cdoubleprime_nplus_3" => (arity(2)?, f(self::Forbidden::CDoublePrimeNPlus3 { n: p[0], m: p[1] })).1,
            "H1_3" => (arity(1)?, f(self::Forbidden::H1_3 { n: p[0] })).1,
            "H2_3" => (arity(1)?, f(self::Forbidden::H2_3 { n: p[0] })).1,
            "C4nplus" => (arity(1)?, f(self::Forbidden::C4NPlus { n: p[0] })).1,
            "Cprime4nplus" => (arity(2)?, f(self::Forbidden::CPrime4NPlus { n: p[0], m: p[1] })).1,
            "H1_4" => (arity(1)?, f(self::Forbidden::H1_4 { n: p[0] })).1,
            "H2_4" => (arity(2)?, f(self::Forbidden::H2_4 { n: p[0], j: p[1] })).1,
            "S5prime_5" => (arity(0)?, f(self::Forbidden::S5Prime5)).1,
            "S5plus_5" => (arity(0)?, f(self::Forbidden::S5Plus5)).1,
            "Sr_r" => (arity(1)?, f(self::Forbidden::SrR { r: p[0] })).1,
            "G1_3" => (arity(3)?, Partial(PartialFamily::G1_3 { m: p[0], k1: p[1], k2: p[2] })).1,
            "G2_2" => (arity(2)?, Partial(PartialFamily::G2_2 { m: p[0], k: p[1] })).1,
            "G3_4" => (arity(2)?, Partial(PartialFamily::G3_4 { t: p[0], k: p[1] })).1,
            _ => return Err(Error::UnknownName(name.to_string())),
        };
        Ok(spec)
    }
}

fn cert_tol<T: Scalar>() -> T {
    T::lit(1e-9).max(T::epsilon() * T::lit(64.0))
}

fn ones<T: Scalar>(h: &Hypergraph) -> Vec<T> {
    vec![T::one(); h.n()]
}

/// Leaves-to-root labeling at β; `None` means the sweep broke down.
fn sweep<T: Scalar>(h: &Hypergraph, root: Root, caps: &[T]) -> Result<(WeightedIncidence<T>, T)> {
    rooted_labeling(h, beta_star::<T>(), root, caps)?
        .ok_or_else(|| Error::NoCertificate("a corner of the leaves-to-root labeling is not positive".into()))
}

/// Supernormal if the root edge product is below β, subnormal otherwise.
fn edge_rooted<T: Scalar>(h: Hypergraph) -> Result<Certificate<T>> {
    let (w, p) = sweep(&h, Root::Edge(0), &ones::<T>(&h))?;
    let beta = beta_star::<T>();
    let kind = if p < beta { CertificateKind::Supernormal } else { CertificateKind::Subnormal };
    Certificate::with_kind(h, beta, w, kind, cert_tol())
}

fn supernormal<T: Scalar>(h: Hypergraph, w: WeightedIncidence<T>) -> Result<Certificate<T>> {
    Certificate::with_kind(h, beta_star(), w, CertificateKind::Supernormal, cert_tol())
}

/// Labels for a cycle whose edge `ce[0]` carries the symmetric root `x` at
/// both cycle vertices; the other cycle edges have leaves only off the
/// cycle, and the trees hanging off `ce[0]` are labeled leaves-to-root.
fn branched_cycle_labels<T: Scalar>(h: &Hypergraph, cv: &[usize], ce: &[usize]) -> Result<WeightedIncidence<T>> {
    let beta = beta_star::<T>();
    let n = cv.len();
    let x = solve_symmetric(beta, n - 1)?;
    let mut w = WeightedIncidence::empty(h);
    w.set(h, cv[0], ce[0], x);
    w.set(h, cv[1], ce[0], x);
    let chain: Vec<_> = (1..n).map(|i| (ce[i], cv[i], cv[(i + 1) % n])).collect();
    let back = label_chain(h, beta, &chain, x, &mut w)?;
    if (back + x - T::one()).abs() > T::lit(1e3) * T::epsilon() {
        return Err(Error::NoCertificate("cycle labels do not close up".into()));
    }
    let caps = ones::<T>(h);
    for &v in h.edge(ce[0]) {
        if v == cv[0] || v == cv[1] {
            continue;
        }
        let s = label_hanging(h, beta, v, &[ce[0]], &caps, &mut w)?
            .ok_or_else(|| Error::NoCertificate("hanging tree labels broke down".into()))?;
        w.set(h, v, ce[0], T::one() - s);
    }
    Ok(w)
}

/// Certificate from the Perron vector: the labeling is consistently
/// α*-normal with α* from ρ, hence strictly supernormal (subnormal) at
/// `alpha` when α* is below (above) it.
pub fn spectral_certificate<T: Scalar>(h: &Hypergraph, alpha: T) -> Result<Certificate<T>> {
    let run = power_run(h, T::epsilon() * T::lit(1e4), DEFAULT_MAX_ITER)?;
    let rho = run.result.rho;
    let w = eigenvector_to_labeling(h, &run.vector, rho)?;
    let a_star = alpha_from_rho(h.r(), rho);
    let kind = if a_star < alpha {
        CertificateKind::Supernormal
    } else if a_star > alpha {
        CertificateKind::Subnormal
    } else {
        CertificateKind::Normal
    };
    let tol = cert_tol::<T>().max(run.result.width() / rho * T::lit(4.0));
    Certificate::with_kind(h.clone(), alpha, w, kind, tol)
}

fn forbidden_certificate<T: Scalar>(f: &Forbidden) -> Result<Certificate<T>> {
    use Forbidden::*;
    let beta = beta_star::<T>();
    let one = T::one();
    let half = T::lit(0.5);
    let h = build_forbidden(f)?;
    let designated = h.designated().to_vec();
    let h = h.into_hypergraph();
    match *f {
        // center is vertex 0
        S5_3 | S4Plus3 => {
            let (w, _) = sweep(&h, Root::Vertex(0), &ones::<T>(&h))?;
            supernormal(h, w)
        }
        CsPlus { s, .. } => {
            let mut w = WeightedIncidence::constant(&h, one);
            for e in 0..2 {
                for &v in &h.edge(0)[..s] {
                    w.set(&h, v, e, half);
                }
            }
            supernormal(h, w)
        }
        C2Plus3 => {
            // a = 0, b = 1; F1 = {a,b,p}, F2 = {a,b,c}, F3 = {a,..}
            let mut w = WeightedIncidence::constant(&h, one);
            let side = (one - beta) / T::lit(2.0);
            for e in 0..2 {
                w.set(&h, 0, e, side);
                w.set(&h, 1, e, beta / side);
            }
            w.set(&h, 0, 2, beta);
            supernormal(h, w)
        }
        C2PrimePlus3 => {
            // a = 0, b = 1, c the third vertex of F2
            let c = h.edge(1)[2];
            let mut w = WeightedIncidence::constant(&h, one);
            w.set(&h, c, 2, beta);
            w.set(&h, c, 1, one - beta);
            let inner = (beta / (one - beta)).sqrt();
            for v in [0, 1] {
                w.set(&h, v, 1, inner);
                w.set(&h, v, 0, beta.sqrt());
            }
            supernormal(h, w)
        }
        CnPlus3 { .. } => spectral_certificate(&h, beta),
        CPrimeNPlus3 { n, .. } | CDoublePrimeNPlus3 { n, .. } | C4NPlus { n } | CPrime4NPlus { n, .. } => {
            let cv: Vec<usize> = (0..n).collect();
            let ce: Vec<usize> = (0..n).collect();
            let w = branched_cycle_labels(&h, &cv, &ce)?;
            supernormal(h, w)
        }
        H1_3 { .. } | H1_4 { .. } | H2_3 { .. } | H2_4 { .. } => {
            let red = designated[0];
            let (w, _) = sweep(&h, Root::Vertex(red), &ones::<T>(&h))?;
            Certificate::rooted_normal(PartialHypergraph::new(h, designated)?, beta, w, cert_tol())
        }
        S5Prime5 => {
            // F0 = {v1..v5} = 0..5, w = 5, pendant edges 1..=5
            let mut w = WeightedIncidence::constant(&h, one);
            let two_b = T::lit(2.0) * beta;
            for (e, v) in [(1, 0), (2, 1)] {
                w.set(&h, 5, e, half);
                w.set(&h, v, e, two_b);
                w.set(&h, v, 0, one - two_b);
            }
            for (e, v) in [(3, 2), (4, 3), (5, 4)] {
                w.set(&h, v, e, beta);
                w.set(&h, v, 0, one - beta);
            }
            supernormal(h, w)
        }
        S5Plus5 => edge_rooted(h),
        SrR { r } => {
            need(r >= 6, "Sr_r certificate needs r >= 6")?;
            let c: Certificate<T> = edge_rooted(h)?;
            Ok(c)
        }
    }
}

fn partial_certificate<T: Scalar>(p: &PartialFamily) -> Result<Certificate<T>> {
    let Built::Partial(ph) = build_partial(p)? else { unreachable!() };
    let half = T::lit(0.5);
    let caps: Vec<T> = (0..ph.base.n()).map(|v| if ph.is_designated(v) { half } else { T::one() }).collect();
    let root = match p {
        PartialFamily::G2_2 { .. } => Root::Vertex(0),
        _ => Root::Edge(0),
    };
    let (w, _) = sweep(&ph.base, root, &caps)?;
    Certificate::partial_subnormal(ph, beta_star(), w, cert_tol())
}

/// The explicit labeling attached to a family, checked for its kind.
///
/// Covers the exclusion hypergraphs, the partial constructions, daggers,
/// F3, edge-stars and Θ; other families have no closed-form labeling and
/// return [`Error::UnknownName`].
pub fn certificate_for<T: Scalar>(spec: &FamilySpec) -> Result<Certificate<T>> {
    match spec {
        FamilySpec::Forbidden(f) => forbidden_certificate(f),
        FamilySpec::Partial(p) => partial_certificate(p),
        FamilySpec::Dagger4 { .. } | FamilySpec::F3 { .. } | FamilySpec::EdgeStar { .. } => {
            edge_rooted(build(spec)?.into_hypergraph())
        }
        FamilySpec::Theta { m1, m2, m3 } => {
            let h = build(spec)?.into_hypergraph();
            let beta = beta_star::<T>();
            let mut w = WeightedIncidence::empty(&h);
            let last = h.m() - 1;
            let e1 = h.edge(0).to_vec();
            let e2 = h.edge(last).to_vec();
            let mut next_edge = 1;
            for (i, &m) in [*m1, *m2, *m3].iter().enumerate() {
                let x = solve_symmetric(beta, m)?;
                w.set(&h, e1[i], 0, x);
                // path i occupies the next m edges, ending at the i-th vertex of e2
                let mut chain = Vec::with_capacity(m);
                let mut cur = e1[i];
                for e in next_edge..next_edge + m {
                    let to = *h.edge(e).iter().find(|&&v| v != cur && h.degree(v) == 2).expect("path continues");
                    chain.push((e, cur, to));
                    cur = to;
                }
                next_edge += m;
                let back = label_chain(&h, beta, &chain, x, &mut w)?;
                w.set(&h, cur, last, T::one() - back);
                debug_assert!(e2.contains(&cur));
            }
            supernormal(h, w)
        }
        _ => Err(Error::UnknownName(format!("no closed-form certificate for {spec:?}"))),
    }
}

/// `(value, reference)` pairs for the bounds used against 4-uniform
/// hypertrees that break the pendant rule: a 4-branching edge with arms
/// (2, 2, 1) or (1, 1, 4) and anything hanging from its last vertex.
pub fn pendant_rule_bounds<T: Scalar>() -> [(T, f64); 2] {
    let b = beta_star::<T>();
    let one = T::one();
    let hi = BetaParams::<T>::star().fixed_hi;
    let two = T::lit(2.0);
    let three = T::lit(3.0);
    let four = T::lit(4.0);
    let z2 = (one - two * b) / (one - b);
    let z4 = (one - four * b + three * b * b) / (one - three * b + b * b);
    [(hi * z2 * z2 * (one - b), 0.2254), (hi * z4 * (one - b) * (one - b), 0.2314)]
}

/// `1 − f_β^{t−1}(β)`, the corner a hanging path of `t` edges leaves.
pub fn arm_corner<T: Scalar>(t: usize) -> Result<T> {
    Ok(T::one() - f_iter(beta_star::<T>(), beta_star::<T>(), t - 1)?)
}

/// Whether a graph is isomorphic to one of `E(1,b,c)` (b = 2, c ≥ 6 or
/// b ≥ 3, c ≥ 4), `E(2,2,c)` (c ≥ 3) or `G_{1,a:b:1,c}` (a ≥ 3, c ≥ 2,
/// b > a + c).
pub fn brouwer_neumaier_member(h: &Hypergraph) -> bool {
    if h.r() != 2 || !h.is_hypertree() {
        return false;
    }
    let deg = h.degrees();
    if deg.iter().any(|&d| d > 3) {
        return false;
    }
    let branch: Vec<usize> = (0..h.n()).filter(|&v| deg[v] == 3).collect();
    let other = |e: usize, v: usize| if h.edge(e)[0] == v { h.edge(e)[1] } else { h.edge(e)[0] };
    // walk from v along edge e until a vertex of degree != 2; returns (length, end)
    let walk = |v: usize, e: usize| -> (usize, usize) {
        let (mut prev_e, mut cur, mut len) = (e, other(e, v), 1);
        while deg[cur] == 2 {
            let next = h.incident(cur).iter().copied().find(|&f| f != prev_e).unwrap();
            prev_e = next;
            cur = other(next, cur);
            len += 1;
        }
        (len, cur)
    };
    match branch.as_slice() {
        [c] => {
            let mut arms: Vec<usize> = h.incident(*c).iter().map(|&e| walk(*c, e).0).collect();
            arms.sort_unstable();
            match arms[..] {
                [1, b, c] => (b == 2 && c >= 6) || (b >= 3 && c >= 4),
                [2, 2, c] => c >= 3,
                _ => false,
            }
        }
        [u, w] => {
            let mut mid = None;
            let mut sides = [Vec::new(), Vec::new()];
            for (k, &x) in [*u, *w].iter().enumerate() {
                for &e in h.incident(x) {
                    let (len, end) = walk(x, e);
                    if end == [*u, *w][1 - k] {
                        mid = Some(len);
                    } else {
                        sides[k].push(len);
                    }
                }
                sides[k].sort_unstable();
            }
            let Some(b) = mid else { return false };
            let fits = |s: &[usize], t: &[usize]| s[0] == 1 && t[0] == 1 && s[1] >= 3 && t[1] >= 2 && b > s[1] + t[1];
            fits(&sides[0], &sides[1]) || fits(&sides[1], &sides[0])
        }
        _ => false,
    }
}
