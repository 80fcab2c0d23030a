//! Weighted incidence matrices and their normality verdicts.
//!
//! A weighted incidence matrix assigns a positive value `B(v, e)` to every
//! incident pair. It is α-normal when each vertex sum is 1 and each edge
//! product is α; the sub/super variants relax both conditions in opposite
//! directions and bound ρ from above/below by `(r−1)!·α^{−1/r}`.

use crate::error::{Error, Result};
use crate::hypergraph::{Hypergraph, PartialHypergraph};
use crate::scalar::Scalar;
use serde::ser::{SerializeSeq, Serializer};
use serde::{Deserialize, Serialize};
use std::collections::VecDeque;

/// Default tolerance for sums (absolute) and products (relative).
pub const DEFAULT_TOL: f64 = 1e-9;

/// Corner labels stored per edge, aligned with the sorted vertex list of
/// that edge. Unset corners are NaN until filled.
#[derive(Clone, Debug, PartialEq)]
pub struct WeightedIncidence<T> {
    rows: Vec<Vec<T>>,
}

impl<T: Scalar> WeightedIncidence<T> {
    /// All corners unset.
    pub fn empty(h: &Hypergraph) -> Self {
        WeightedIncidence { rows: vec![vec![T::nan(); h.r()]; h.m()] }
    }

    pub fn constant(h: &Hypergraph, value: T) -> Self {
        WeightedIncidence { rows: vec![vec![value; h.r()]; h.m()] }
    }

    /// Build from `(vertex, edge, value)` triples; every incidence must be
    /// given exactly once.
    pub fn from_triples(h: &Hypergraph, triples: &[(usize, usize, T)]) -> Result<Self> {
        let mut w = Self::empty(h);
        for &(v, e, x) in triples {
            if e >= h.m() {
                return Err(Error::MalformedMatrix(format!("edge {e} out of range")));
            }
            let slot = h
                .slot(e, v)
                .ok_or_else(|| Error::MalformedMatrix(format!("vertex {v} not in edge {e}")))?;
            if !w.rows[e][slot].is_nan() {
                return Err(Error::MalformedMatrix(format!("entry ({v},{e}) given twice")));
            }
            w.rows[e][slot] = x;
        }
        w.validate(h)?;
        Ok(w)
    }

    pub fn get(&self, h: &Hypergraph, v: usize, e: usize) -> Option<T> {
        h.slot(e, v).map(|s| self.rows[e][s]).filter(|x| !x.is_nan())
    }

    /// Set `B(v, e)`; panics if `v ∉ e`.
    pub fn set(&mut self, h: &Hypergraph, v: usize, e: usize, x: T) {
        let s = h.slot(e, v).unwrap_or_else(|| panic!("vertex {v} not in edge {e}"));
        self.rows[e][s] = x;
    }

    /// Values of edge `e` in the order of `h.edge(e)`.
    pub fn row(&self, e: usize) -> &[T] {
        &self.rows[e]
    }

    pub fn triples(&self, h: &Hypergraph) -> Vec<(usize, usize, T)> {
        let mut out = Vec::with_capacity(h.incidence_count());
        for (e, row) in self.rows.iter().enumerate() {
            for (&v, &x) in h.edge(e).iter().zip(row) {
                out.push((v, e, x));
            }
        }
        out.sort_by_key(|t| (t.0, t.1));
        out
    }

    /// Every incidence present and positive, shape matching `h`.
    pub fn validate(&self, h: &Hypergraph) -> Result<()> {
        if self.rows.len() != h.m() || self.rows.iter().any(|r| r.len() != h.r()) {
            return Err(Error::MalformedMatrix("shape does not match hypergraph".into()));
        }
        for (e, row) in self.rows.iter().enumerate() {
            for (&v, &x) in h.edge(e).iter().zip(row) {
                if x.is_nan() {
                    return Err(Error::MalformedMatrix(format!("missing entry ({v},{e})")));
                }
                if !(x > T::zero()) || x.is_infinite() {
                    return Err(Error::MalformedMatrix(format!("entry ({v},{e}) = {x} is not positive and finite")));
                }
            }
        }
        Ok(())
    }

    pub fn vertex_sums(&self, h: &Hypergraph) -> Vec<T> {
        let mut sums = vec![T::zero(); h.n()];
        for (e, row) in self.rows.iter().enumerate() {
            for (&v, &x) in h.edge(e).iter().zip(row) {
                sums[v] = sums[v] + x;
            }
        }
        sums
    }

    pub fn edge_products(&self, h: &Hypergraph) -> Vec<T> {
        self.rows.iter().map(|row| product(row, h.r())).collect()
    }

    pub fn cast<U: Scalar>(&self) -> WeightedIncidence<U> {
        WeightedIncidence {
            rows: self.rows.iter().map(|r| r.iter().map(|x| U::lit(x.as_f64())).collect()).collect(),
        }
    }
}

fn product<T: Scalar>(row: &[T], r: usize) -> T {
    if r >= 8 {
        row.iter().fold(T::zero(), |acc, x| acc + x.ln()).exp()
    } else {
        row.iter().fold(T::one(), |acc, &x| acc * x)
    }
}

impl<T: Scalar + Serialize> WeightedIncidence<T> {
    /// Serialize as `[[v, e, value], ...]` over `h`.
    pub fn serialize_over<S: Serializer>(&self, h: &Hypergraph, s: S) -> std::result::Result<S::Ok, S::Error> {
        let triples = self.triples(h);
        let mut seq = s.serialize_seq(Some(triples.len()))?;
        for (v, e, x) in triples {
            seq.serialize_element(&(v, e, x))?;
        }
        seq.end()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Normal,
    Subnormal,
    Supernormal,
}

/// Outcome of a labeling check.
///
/// Slacks are signed so that non-negative means satisfied: for subnormal
/// mode the vertex slack is `1 − Σ` and the edge slack `(Π − α)/α`; for
/// supernormal the signs flip; for normal mode they are minus the largest
/// deviation.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Verdict<T> {
    pub holds: bool,
    pub strict: bool,
    pub worst_vertex_slack: T,
    pub worst_edge_slack: T,
}

struct Slacks<T> {
    worst_vertex: T,
    worst_edge: T,
    best: T,
}

fn slacks<T: Scalar>(
    h: &Hypergraph,
    b: &WeightedIncidence<T>,
    alpha: T,
    mode: Mode,
    caps: &dyn Fn(usize) -> Option<T>,
) -> Slacks<T> {
    let mut out = Slacks { worst_vertex: T::infinity(), worst_edge: T::infinity(), best: T::neg_infinity() };
    for (v, s) in b.vertex_sums(h).into_iter().enumerate() {
        let Some(cap) = caps(v) else { continue };
        let slack = match mode {
            Mode::Normal => -(s - cap).abs(),
            Mode::Subnormal => cap - s,
            Mode::Supernormal => s - cap,
        };
        out.worst_vertex = out.worst_vertex.min(slack);
        out.best = out.best.max(slack);
    }
    for p in b.edge_products(h) {
        let rel = (p - alpha) / alpha;
        let slack = match mode {
            Mode::Normal => -rel.abs(),
            Mode::Subnormal => rel,
            Mode::Supernormal => -rel,
        };
        out.worst_edge = out.worst_edge.min(slack);
        out.best = out.best.max(slack);
    }
    out
}

fn verdict<T: Scalar>(s: Slacks<T>, mode: Mode, tol: T) -> Verdict<T> {
    let holds = s.worst_vertex >= -tol && s.worst_edge >= -tol;
    let strict = holds && mode != Mode::Normal && s.best > T::lit(10.0) * tol;
    Verdict { holds, strict, worst_vertex_slack: s.worst_vertex, worst_edge_slack: s.worst_edge }
}

fn check_alpha<T: Scalar>(alpha: T) -> Result<()> {
    if alpha > T::zero() && alpha <= T::one() {
        Ok(())
    } else {
        Err(Error::OutOfDomain(format!("alpha = {alpha} must lie in (0, 1]")))
    }
}

/// Check `B` against α in the given mode.
pub fn check<T: Scalar>(h: &Hypergraph, b: &WeightedIncidence<T>, alpha: T, mode: Mode, tol: T) -> Result<Verdict<T>> {
    b.validate(h)?;
    check_alpha(alpha)?;
    Ok(verdict(slacks(h, b, alpha, mode, &|_| Some(T::one())), mode, tol))
}

/// Subnormal check with vertex-sum cap 1/2 at designated vertices.
pub fn check_partial_subnormal<T: Scalar>(
    p: &PartialHypergraph,
    b: &WeightedIncidence<T>,
    alpha: T,
    tol: T,
) -> Result<Verdict<T>> {
    b.validate(&p.base)?;
    check_alpha(alpha)?;
    let half = T::lit(0.5);
    let caps = |v: usize| Some(if p.is_designated(v) { half } else { T::one() });
    Ok(verdict(slacks(&p.base, b, alpha, Mode::Subnormal, &caps), Mode::Subnormal, tol))
}

/// Normal check that skips the vertex sums at designated vertices; returns
/// the verdict together with those skipped sums.
pub fn check_rooted_normal<T: Scalar>(
    p: &PartialHypergraph,
    b: &WeightedIncidence<T>,
    alpha: T,
    tol: T,
) -> Result<(Verdict<T>, Vec<T>)> {
    b.validate(&p.base)?;
    check_alpha(alpha)?;
    let caps = |v: usize| if p.is_designated(v) { None } else { Some(T::one()) };
    let v = verdict(slacks(&p.base, b, alpha, Mode::Normal, &caps), Mode::Normal, tol);
    let sums = b.vertex_sums(&p.base);
    Ok((v, p.designated.iter().map(|&d| sums[d]).collect()))
}

/// Largest `|ln Π B(v_i,e_i)/B(v_{i−1},e_i)|` over the fundamental cycles of
/// a spanning tree of the vertex-edge incidence graph. Zero for hypertrees.
///
/// Fixing a potential `φ` on tree nodes with `ln B(v,e) = φ(e) − φ(v)` along
/// tree links, each non-tree link's residual equals the log cycle product
/// of the fundamental cycle it closes.
pub fn consistency_defect<T: Scalar>(h: &Hypergraph, b: &WeightedIncidence<T>) -> Result<T> {
    b.validate(h)?;
    let n = h.n();
    let mut vpot: Vec<Option<T>> = vec![None; n];
    let mut epot: Vec<Option<T>> = vec![None; h.m()];
    let mut tree_link = vec![vec![false; h.r()]; h.m()];
    let mut worst = T::zero();
    for start in 0..n {
        if vpot[start].is_some() {
            continue;
        }
        vpot[start] = Some(T::zero());
        let mut queue = VecDeque::from([start]);
        while let Some(v) = queue.pop_front() {
            let pv = vpot[v].expect("visited");
            for &e in h.incident(v) {
                if epot[e].is_none() {
                    let s = h.slot(e, v).expect("incident");
                    epot[e] = Some(pv + b.rows[e][s].ln());
                    tree_link[e][s] = true;
                    for (s2, &w) in h.edge(e).iter().enumerate() {
                        if vpot[w].is_none() {
                            vpot[w] = Some(epot[e].expect("set") - b.rows[e][s2].ln());
                            tree_link[e][s2] = true;
                            queue.push_back(w);
                        }
                    }
                }
            }
        }
    }
    for e in 0..h.m() {
        let pe = epot[e].expect("connected component covered");
        for (s, &v) in h.edge(e).iter().enumerate() {
            if tree_link[e][s] {
                continue;
            }
            let resid = (pe - vpot[v].expect("covered") - b.rows[e][s].ln()).abs();
            worst = worst.max(resid);
        }
    }
    Ok(worst)
}

/// Every cycle product equals 1 within multiplicative tolerance `tol`.
pub fn check_consistent<T: Scalar>(h: &Hypergraph, b: &WeightedIncidence<T>, tol: T) -> Result<bool> {
    Ok(consistency_defect(h, b)? <= tol)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CertificateKind {
    Normal,
    Subnormal,
    Supernormal,
    /// Subnormal with designated sums capped at 1/2.
    PartialSubnormal,
    /// Normal away from the designated vertices, whose sums are exposed.
    RootedNormal,
}

impl CertificateKind {
    pub fn as_str(&self) -> &'static str {
        match self {
            CertificateKind::Normal => "normal",
            CertificateKind::Subnormal => "subnormal",
            CertificateKind::Supernormal => "supernormal",
            CertificateKind::PartialSubnormal => "partial-subnormal",
            CertificateKind::RootedNormal => "rooted-normal",
        }
    }
}

/// A labeling together with the verdict it certifies.
#[derive(Clone, Debug, PartialEq)]
pub struct Certificate<T> {
    pub hypergraph: Hypergraph,
    pub alpha: T,
    pub weights: WeightedIncidence<T>,
    pub kind: CertificateKind,
    pub strict: bool,
    /// `None` for hypertrees, where consistency holds vacuously.
    pub consistent: Option<bool>,
    pub designated: Vec<usize>,
    /// Vertex sums at the designated vertices.
    pub exposed: Vec<T>,
}

impl<T: Scalar> Certificate<T> {
    /// Classify a full labeling: normal if it is, otherwise supernormal or
    /// subnormal, whichever holds.
    pub fn assess(h: Hypergraph, alpha: T, weights: WeightedIncidence<T>, tol: T) -> Result<Self> {
        let mut chosen = None;
        for (mode, kind) in [
            (Mode::Normal, CertificateKind::Normal),
            (Mode::Supernormal, CertificateKind::Supernormal),
            (Mode::Subnormal, CertificateKind::Subnormal),
        ] {
            let v = check(&h, &weights, alpha, mode, tol)?;
            if v.holds {
                chosen = Some((kind, v.strict));
                break;
            }
        }
        let (kind, strict) = chosen.ok_or_else(|| {
            Error::NoCertificate("labeling is neither subnormal nor supernormal".into())
        })?;
        let consistent = consistency_flag(&h, &weights, tol)?;
        Ok(Certificate { hypergraph: h, alpha, weights, kind, strict, consistent, designated: vec![], exposed: vec![] })
    }

    /// A full certificate of the given kind; fails if the labeling does not
    /// satisfy it.
    pub fn with_kind(h: Hypergraph, alpha: T, weights: WeightedIncidence<T>, kind: CertificateKind, tol: T) -> Result<Self> {
        let mode = match kind {
            CertificateKind::Normal => Mode::Normal,
            CertificateKind::Subnormal => Mode::Subnormal,
            CertificateKind::Supernormal => Mode::Supernormal,
            _ => return Err(Error::InvalidParameter(format!("{} needs designated vertices", kind.as_str()))),
        };
        let v = check(&h, &weights, alpha, mode, tol)?;
        if !v.holds {
            return Err(Error::NoCertificate(format!(
                "labeling is not {} (vertex slack {}, edge slack {})",
                kind.as_str(),
                v.worst_vertex_slack,
                v.worst_edge_slack
            )));
        }
        let consistent = consistency_flag(&h, &weights, tol)?;
        Ok(Certificate { hypergraph: h, alpha, weights, kind, strict: v.strict, consistent, designated: vec![], exposed: vec![] })
    }

    /// A partial-subnormal certificate; fails if the relaxed check fails.
    pub fn partial_subnormal(p: PartialHypergraph, alpha: T, weights: WeightedIncidence<T>, tol: T) -> Result<Self> {
        let v = check_partial_subnormal(&p, &weights, alpha, tol)?;
        if !v.holds {
            return Err(Error::NoCertificate(format!(
                "partial subnormal check fails (vertex slack {}, edge slack {})",
                v.worst_vertex_slack, v.worst_edge_slack
            )));
        }
        let sums = weights.vertex_sums(&p.base);
        let consistent = consistency_flag(&p.base, &weights, tol)?;
        Ok(Certificate {
            exposed: p.designated.iter().map(|&d| sums[d]).collect(),
            hypergraph: p.base,
            alpha,
            weights,
            kind: CertificateKind::PartialSubnormal,
            strict: v.strict,
            consistent,
            designated: p.designated,
        })
    }

    pub fn rooted_normal(p: PartialHypergraph, alpha: T, weights: WeightedIncidence<T>, tol: T) -> Result<Self> {
        let (v, exposed) = check_rooted_normal(&p, &weights, alpha, tol)?;
        if !v.holds {
            return Err(Error::NoCertificate("labeling is not normal away from the designated vertices".into()));
        }
        let consistent = consistency_flag(&p.base, &weights, tol)?;
        Ok(Certificate {
            hypergraph: p.base,
            alpha,
            weights,
            kind: CertificateKind::RootedNormal,
            strict: false,
            consistent,
            designated: p.designated,
            exposed,
        })
    }

    pub fn partial(&self) -> Option<PartialHypergraph> {
        PartialHypergraph::new(self.hypergraph.clone(), self.designated.clone()).ok()
    }

    /// Re-run the check matching `kind`.
    pub fn verify(&self, tol: T) -> Result<Verdict<T>> {
        let h = &self.hypergraph;
        match self.kind {
            CertificateKind::Normal => check(h, &self.weights, self.alpha, Mode::Normal, tol),
            CertificateKind::Subnormal => check(h, &self.weights, self.alpha, Mode::Subnormal, tol),
            CertificateKind::Supernormal => check(h, &self.weights, self.alpha, Mode::Supernormal, tol),
            CertificateKind::PartialSubnormal => {
                let p = self.partial().ok_or_else(|| Error::MalformedMatrix("missing designated vertices".into()))?;
                check_partial_subnormal(&p, &self.weights, self.alpha, tol)
            }
            CertificateKind::RootedNormal => {
                let p = self.partial().ok_or_else(|| Error::MalformedMatrix("missing designated vertices".into()))?;
                check_rooted_normal(&p, &self.weights, self.alpha, tol).map(|(v, _)| v)
            }
        }
    }

    /// Vertex sums and edge products, handy for reporting.
    pub fn vertex_sums(&self) -> Vec<T> {
        self.weights.vertex_sums(&self.hypergraph)
    }

    pub fn edge_products(&self) -> Vec<T> {
        self.weights.edge_products(&self.hypergraph)
    }
}

fn consistency_flag<T: Scalar>(h: &Hypergraph, b: &WeightedIncidence<T>, tol: T) -> Result<Option<bool>> {
    if h.is_connected() && h.cycle_rank() == 0 {
        Ok(None)
    } else {
        check_consistent(h, b, tol).map(Some)
    }
}

impl<T: Scalar + Serialize> Serialize for Certificate<T> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        struct Weights<'a, T>(&'a WeightedIncidence<T>, &'a Hypergraph);
        impl<T: Scalar + Serialize> Serialize for Weights<'_, T> {
            fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
                self.0.serialize_over(self.1, s)
            }
        }
        let mut st = s.serialize_struct("Certificate", 7)?;
        st.serialize_field("alpha", &self.alpha)?;
        st.serialize_field("kind", self.kind.as_str())?;
        st.serialize_field("strict", &self.strict)?;
        st.serialize_field("consistent", &self.consistent)?;
        if !self.designated.is_empty() {
            st.serialize_field("designated", &self.designated)?;
            st.serialize_field("exposed", &self.exposed)?;
        }
        st.serialize_field("weights", &Weights(&self.weights, &self.hypergraph))?;
        st.end()
    }
}

/// Result of gluing partial hypergraphs.
#[derive(Clone, Debug)]
pub struct Glued {
    pub hypergraph: Hypergraph,
    /// For each part, its vertex ids in the glued hypergraph.
    pub vertex_maps: Vec<Vec<usize>>,
    /// For each part, the id of its first edge; edges keep their order.
    pub edge_offsets: Vec<usize>,
}

/// A designated vertex: `(part index, position in that part's designated list)`.
pub type Port = (usize, usize);

/// Disjoint union of `parts` with each pair of designated vertices in
/// `pairing` identified. Every designated vertex must be paired exactly once.
pub fn glue(parts: &[PartialHypergraph], pairing: &[(Port, Port)]) -> Result<Glued> {
    let r = parts.first().ok_or_else(|| Error::Glue("no parts".into()))?.base.r();
    if parts.iter().any(|p| p.base.r() != r) {
        return Err(Error::Glue("parts have different uniformities".into()));
    }
    let mut offsets = Vec::with_capacity(parts.len());
    let mut total = 0;
    for p in parts {
        offsets.push(total);
        total += p.base.n();
    }
    let mut used: Vec<Vec<bool>> = parts.iter().map(|p| vec![false; p.designated.len()]).collect();
    let mut parent: Vec<usize> = (0..total).collect();
    let resolve = |(pi, di): Port, used: &mut Vec<Vec<bool>>| -> Result<usize> {
        let p = parts.get(pi).ok_or_else(|| Error::Glue(format!("part {pi} does not exist")))?;
        let &d = p.designated.get(di).ok_or_else(|| Error::Glue(format!("part {pi} has no port {di}")))?;
        if std::mem::replace(&mut used[pi][di], true) {
            return Err(Error::Glue(format!("port ({pi},{di}) paired twice")));
        }
        Ok(offsets[pi] + d)
    };
    for &(a, b) in pairing {
        let (u, v) = (resolve(a, &mut used)?, resolve(b, &mut used)?);
        let (lo, hi) = (u.min(v), u.max(v));
        parent[hi] = lo;
    }
    if let Some((pi, di)) = used
        .iter()
        .enumerate()
        .find_map(|(pi, u)| u.iter().position(|&x| !x).map(|di| (pi, di)))
    {
        return Err(Error::Glue(format!("designated vertex ({pi},{di}) is unpaired")));
    }
    // each vertex is paired at most once, so one hop reaches the representative
    let mut new_id = vec![usize::MAX; total];
    let mut next = 0;
    for v in 0..total {
        if parent[v] == v {
            new_id[v] = next;
            next += 1;
        }
    }
    for v in 0..total {
        if parent[v] != v {
            new_id[v] = new_id[parent[v]];
        }
    }
    let mut edges = Vec::new();
    let mut edge_offsets = Vec::with_capacity(parts.len());
    for (pi, p) in parts.iter().enumerate() {
        edge_offsets.push(edges.len());
        for e in p.base.edges() {
            let mapped: Vec<usize> = e.iter().map(|&v| new_id[offsets[pi] + v]).collect();
            let mut sorted = mapped.clone();
            sorted.sort_unstable();
            sorted.dedup();
            if sorted.len() != r {
                return Err(Error::Glue("paired vertices share an edge".into()));
            }
            edges.push(mapped);
        }
    }
    let hypergraph = Hypergraph::new(r, next, edges).map_err(|e| match e {
        Error::DuplicateEdge(e) => Error::Glue(format!("pairing creates duplicate edge {e:?}")),
        other => other,
    })?;
    let vertex_maps = parts
        .iter()
        .enumerate()
        .map(|(pi, p)| (0..p.base.n()).map(|v| new_id[offsets[pi] + v]).collect())
        .collect();
    Ok(Glued { hypergraph, vertex_maps, edge_offsets })
}

/// Carry the parts' labelings over to the glued hypergraph.
pub fn glue_weights<T: Scalar>(glued: &Glued, parts: &[PartialHypergraph], weights: &[WeightedIncidence<T>]) -> Result<WeightedIncidence<T>> {
    if weights.len() != parts.len() {
        return Err(Error::Glue("one labeling per part is required".into()));
    }
    let h = &glued.hypergraph;
    let mut out = WeightedIncidence::empty(h);
    for (pi, (p, w)) in parts.iter().zip(weights).enumerate() {
        w.validate(&p.base)?;
        for e in 0..p.base.m() {
            for (&v, &x) in p.base.edge(e).iter().zip(w.row(e)) {
                out.set(h, glued.vertex_maps[pi][v], glued.edge_offsets[pi] + e, x);
            }
        }
    }
    Ok(out)
}
