//! Immutable r-uniform hypergraphs.
//!
//! Vertices are dense ids in `0..n`, edges are sorted id arrays, and every
//! vertex lies in at least one edge.

use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, HashSet, VecDeque};

/// JSON interchange shape: `{"r": int, "n": int, "edges": [[int,...],...]}`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct RawHypergraph {
    pub r: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n: Option<usize>,
    pub edges: Vec<Vec<usize>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawHypergraph", into = "RawHypergraph")]
pub struct Hypergraph {
    r: usize,
    n: usize,
    edges: Vec<Vec<usize>>,
    incidence: Vec<Vec<usize>>,
}

impl TryFrom<RawHypergraph> for Hypergraph {
    type Error = Error;

    fn try_from(raw: RawHypergraph) -> Result<Self> {
        let h = validate(&raw.edges, raw.r)?;
        if let Some(n) = raw.n {
            let max_id = raw.edges.iter().flatten().copied().max().unwrap_or(0);
            if n != h.n || max_id >= n {
                return Err(Error::VertexCountMismatch { declared: n, found: h.n });
            }
        }
        Ok(h)
    }
}

impl From<Hypergraph> for RawHypergraph {
    fn from(h: Hypergraph) -> Self {
        RawHypergraph { r: h.r, n: Some(h.n), edges: h.edges }
    }
}

/// Build a hypergraph from raw edge lists, compacting vertex ids to `0..n`
/// in increasing order of the original ids.
pub fn validate(raw: &[Vec<usize>], r: usize) -> Result<Hypergraph> {
    if r < 2 {
        return Err(Error::InvalidUniformity(r));
    }
    if raw.is_empty() {
        return Err(Error::EmptyEdgeList);
    }
    let mut ids: Vec<usize> = raw.iter().flatten().copied().collect();
    ids.sort_unstable();
    ids.dedup();
    let index: BTreeMap<usize, usize> = ids.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    let mut edges = Vec::with_capacity(raw.len());
    for (k, e) in raw.iter().enumerate() {
        let mut mapped: Vec<usize> = e.iter().map(|v| index[v]).collect();
        mapped.sort_unstable();
        mapped.dedup();
        if mapped.len() != r || e.len() != r {
            return Err(Error::WrongEdgeCardinality { edge: k, expected: r, found: mapped.len() });
        }
        edges.push(mapped);
    }
    Hypergraph::from_sorted(r, ids.len(), edges)
}

impl Hypergraph {
    /// Construct from edges already expressed over `0..n`.
    pub fn new(r: usize, n: usize, edges: Vec<Vec<usize>>) -> Result<Self> {
        if r < 2 {
            return Err(Error::InvalidUniformity(r));
        }
        if edges.is_empty() {
            return Err(Error::EmptyEdgeList);
        }
        let mut sorted = Vec::with_capacity(edges.len());
        for (k, mut e) in edges.into_iter().enumerate() {
            let len = e.len();
            e.sort_unstable();
            e.dedup();
            if e.len() != r || len != r {
                return Err(Error::WrongEdgeCardinality { edge: k, expected: r, found: e.len() });
            }
            if let Some(&v) = e.iter().find(|&&v| v >= n) {
                return Err(Error::VertexOutOfRange(v));
            }
            sorted.push(e);
        }
        Self::from_sorted(r, n, sorted)
    }

    fn from_sorted(r: usize, n: usize, edges: Vec<Vec<usize>>) -> Result<Self> {
        let mut seen = HashSet::with_capacity(edges.len());
        for e in &edges {
            if !seen.insert(e.clone()) {
                return Err(Error::DuplicateEdge(e.clone()));
            }
        }
        let mut incidence = vec![Vec::new(); n];
        for (k, e) in edges.iter().enumerate() {
            for &v in e {
                incidence[v].push(k);
            }
        }
        if let Some(v) = incidence.iter().position(|inc| inc.is_empty()) {
            return Err(Error::IsolatedVertex(v));
        }
        Ok(Hypergraph { r, n, edges, incidence })
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Number of edges.
    pub fn m(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[Vec<usize>] {
        &self.edges
    }

    pub fn edge(&self, e: usize) -> &[usize] {
        &self.edges[e]
    }

    /// Edge ids containing `v`, ascending.
    pub fn incident(&self, v: usize) -> &[usize] {
        &self.incidence[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.incidence[v].len()
    }

    pub fn degrees(&self) -> Vec<usize> {
        self.incidence.iter().map(Vec::len).collect()
    }

    pub fn max_degree(&self) -> usize {
        self.incidence.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn contains(&self, e: usize, v: usize) -> bool {
        self.edges[e].binary_search(&v).is_ok()
    }

    /// Position of `v` inside the sorted edge `e`.
    pub fn slot(&self, e: usize, v: usize) -> Option<usize> {
        self.edges[e].binary_search(&v).ok()
    }

    /// Total number of vertex-edge incidences, `r·m`.
    pub fn incidence_count(&self) -> usize {
        self.r * self.m()
    }

    /// Degree-1 vertices of edge `e`, ascending.
    pub fn leaves_of(&self, e: usize) -> Vec<usize> {
        self.edges[e].iter().copied().filter(|&v| self.degree(v) == 1).collect()
    }

    /// Edges other than `e` sharing at least one vertex with `e`, ascending.
    pub fn adjacent_edges(&self, e: usize) -> Vec<usize> {
        let mut out: Vec<usize> = self.edges[e]
            .iter()
            .flat_map(|&v| self.incidence[v].iter().copied())
            .filter(|&f| f != e)
            .collect();
        out.sort_unstable();
        out.dedup();
        out
    }

    pub fn is_connected(&self) -> bool {
        self.component_of(0).len() == self.n
    }

    /// Vertices reachable from `start` by walks.
    pub fn component_of(&self, start: usize) -> Vec<usize> {
        let mut seen = vec![false; self.n];
        let mut edge_seen = vec![false; self.m()];
        let mut queue = VecDeque::from([start]);
        seen[start] = true;
        let mut out = Vec::new();
        while let Some(v) = queue.pop_front() {
            out.push(v);
            for &e in &self.incidence[v] {
                if edge_seen[e] {
                    continue;
                }
                edge_seen[e] = true;
                for &w in &self.edges[e] {
                    if !seen[w] {
                        seen[w] = true;
                        queue.push_back(w);
                    }
                }
            }
        }
        out
    }

    /// Every pair of edges shares at most one vertex.
    pub fn is_simple(&self) -> bool {
        for v in 0..self.n {
            let inc = &self.incidence[v];
            for (i, &e) in inc.iter().enumerate() {
                for &f in &inc[i + 1..] {
                    if shared(&self.edges[e], &self.edges[f]) > 1 {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// Cycle rank of the bipartite vertex-edge incidence graph of a connected
    /// hypergraph: `r·m − n − m + 1`.
    pub fn cycle_rank(&self) -> usize {
        (self.incidence_count() + 1).saturating_sub(self.n + self.m())
    }

    pub fn is_hypertree(&self) -> bool {
        self.is_connected() && self.cycle_rank() == 0
    }

    /// Some edge has every vertex of degree at least 2.
    pub fn is_irreducible(&self) -> bool {
        self.edges.iter().any(|e| e.iter().all(|&v| self.degree(v) >= 2))
    }

    /// Add one fresh vertex to every edge.
    pub fn extend(&self) -> Hypergraph {
        let edges = self
            .edges
            .iter()
            .enumerate()
            .map(|(k, e)| {
                let mut e = e.clone();
                e.push(self.n + k);
                e
            })
            .collect();
        Hypergraph::new(self.r + 1, self.n + self.m(), edges).expect("extension is valid")
    }

    /// Remove the lowest-id degree-1 vertex from every edge.
    pub fn reduce(&self) -> Result<Hypergraph> {
        let (h, _) = self.reduce_with_map()?;
        Ok(h)
    }

    /// As [`Hypergraph::reduce`], also returning the old-to-new vertex map
    /// (`None` for removed vertices).
    pub fn reduce_with_map(&self) -> Result<(Hypergraph, Vec<Option<usize>>)> {
        if self.r < 3 {
            return Err(Error::InvalidUniformity(self.r - 1));
        }
        let mut removed = vec![false; self.n];
        for e in &self.edges {
            match e.iter().find(|&&v| self.degree(v) == 1) {
                Some(&v) => removed[v] = true,
                None => return Err(Error::Irreducible),
            }
        }
        let mut map = vec![None; self.n];
        let mut next = 0;
        for v in 0..self.n {
            if !removed[v] {
                map[v] = Some(next);
                next += 1;
            }
        }
        let edges = self
            .edges
            .iter()
            .map(|e| e.iter().filter_map(|&v| map[v]).collect())
            .collect();
        Ok((Hypergraph::new(self.r - 1, next, edges)?, map))
    }

    /// Quotient by identifying `u` and `v`; the merged vertex keeps the
    /// smaller id and higher ids shift down by one.
    pub fn identify_vertices(&self, u: usize, v: usize) -> Result<Hypergraph> {
        if u >= self.n {
            return Err(Error::VertexOutOfRange(u));
        }
        if v >= self.n {
            return Err(Error::VertexOutOfRange(v));
        }
        if u == v {
            return Err(Error::InvalidIdentification("vertices coincide".into()));
        }
        if self.incidence[u].iter().any(|&e| self.contains(e, v)) {
            return Err(Error::InvalidIdentification(format!("{u} and {v} share an edge")));
        }
        let (keep, drop) = (u.min(v), u.max(v));
        let relabel = |w: usize| {
            if w == drop {
                keep
            } else if w > drop {
                w - 1
            } else {
                w
            }
        };
        let edges = self.edges.iter().map(|e| e.iter().map(|&w| relabel(w)).collect()).collect();
        Hypergraph::new(self.r, self.n - 1, edges).map_err(|err| match err {
            Error::DuplicateEdge(e) => Error::InvalidIdentification(format!("edge map not injective at {e:?}")),
            other => other,
        })
    }

    /// Vertices of degree exactly `k`.
    pub fn branching_vertices(&self, k: usize) -> Vec<usize> {
        (0..self.n).filter(|&v| self.degree(v) == k).collect()
    }

    /// Edges with no vertex of degree at least 3 that are adjacent to exactly
    /// `k` other edges.
    pub fn branching_edges(&self, k: usize) -> Vec<usize> {
        (0..self.m())
            .filter(|&e| {
                self.edges[e].iter().all(|&v| self.degree(v) < 3) && self.adjacent_edges(e).len() == k
            })
            .collect()
    }

    /// Disjoint union; vertices and edges of `other` are shifted past `self`.
    pub fn disjoint_union(&self, other: &Hypergraph) -> Result<Hypergraph> {
        if self.r != other.r {
            return Err(Error::InvalidParameter("uniformities differ".into()));
        }
        let mut edges = self.edges.clone();
        edges.extend(other.edges.iter().map(|e| e.iter().map(|&v| v + self.n).collect()));
        Hypergraph::new(self.r, self.n + other.n, edges)
    }

    /// Hypergraph induced by a subset of edges, with vertices renumbered.
    /// Returns the new hypergraph and the old-to-new vertex map.
    pub fn edge_subgraph(&self, keep: &[usize]) -> Result<(Hypergraph, Vec<Option<usize>>)> {
        let mut map = vec![None; self.n];
        let mut next = 0;
        let mut edges = Vec::with_capacity(keep.len());
        for &e in keep {
            let mapped = self.edges[e]
                .iter()
                .map(|&v| {
                    *map[v].get_or_insert_with(|| {
                        next += 1;
                        next - 1
                    })
                })
                .collect();
            edges.push(mapped);
        }
        Ok((Hypergraph::new(self.r, next, edges)?, map))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("serializable")
    }

    pub fn from_json(s: &str) -> Result<Hypergraph> {
        let raw: RawHypergraph = serde_json::from_str(s).map_err(|e| Error::InvalidParameter(e.to_string()))?;
        Hypergraph::try_from(raw)
    }
}

fn shared(a: &[usize], b: &[usize]) -> usize {
    let (mut i, mut j, mut c) = (0, 0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                c += 1;
                i += 1;
                j += 1;
            }
        }
    }
    c
}

/// A hypergraph with one or two designated vertices.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PartialHypergraph {
    pub base: Hypergraph,
    pub designated: Vec<usize>,
}

impl PartialHypergraph {
    pub fn new(base: Hypergraph, designated: Vec<usize>) -> Result<Self> {
        if designated.is_empty() || designated.len() > 2 {
            return Err(Error::InvalidParameter(format!(
                "a partial hypergraph needs one or two designated vertices, got {}",
                designated.len()
            )));
        }
        if let Some(&v) = designated.iter().find(|&&v| v >= base.n()) {
            return Err(Error::VertexOutOfRange(v));
        }
        if designated.len() == 2 && designated[0] == designated[1] {
            return Err(Error::InvalidParameter("designated vertices coincide".into()));
        }
        Ok(PartialHypergraph { base, designated })
    }

    pub fn is_designated(&self, v: usize) -> bool {
        self.designated.contains(&v)
    }

    /// Extension keeps vertex ids, so designated vertices are unchanged.
    pub fn extend(&self) -> PartialHypergraph {
        PartialHypergraph { base: self.base.extend(), designated: self.designated.clone() }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn h(r: usize, edges: &[&[usize]]) -> Hypergraph {
        validate(&edges.iter().map(|e| e.to_vec()).collect::<Vec<_>>(), r).unwrap()
    }

    fn cycle3(n: usize) -> Hypergraph {
        // cycle vertices 0..n, apex n+i
        let edges: Vec<Vec<usize>> = (0..n).map(|i| vec![i, (i + 1) % n, n + i]).collect();
        validate(&edges, 3).unwrap()
    }

    #[test]
    fn validate_examples() {
        let one = h(3, &[&[0, 1, 2]]);
        assert_eq!((one.n(), one.m()), (3, 1));
        assert_eq!(
            validate(&[vec![0, 1, 2], vec![0, 1, 2]], 3),
            Err(Error::DuplicateEdge(vec![0, 1, 2]))
        );
        let two = h(3, &[&[0, 1, 2], &[2, 3, 4]]);
        assert_eq!((two.n(), two.m()), (5, 2));
        assert_eq!(validate(&[], 3), Err(Error::EmptyEdgeList));
        assert!(matches!(validate(&[vec![0, 1]], 3), Err(Error::WrongEdgeCardinality { .. })));
        assert!(matches!(validate(&[vec![0, 0, 1]], 3), Err(Error::WrongEdgeCardinality { .. })));
    }

    #[test]
    fn ids_are_compacted() {
        let g = h(2, &[&[10, 30], &[30, 7]]);
        assert_eq!(g.edges(), &[vec![1, 2], vec![0, 2]]);
    }

    #[test]
    fn json_round_trip_and_checks() {
        let g = h(3, &[&[0, 1, 2], &[2, 3, 4]]);
        let s = g.to_json();
        assert_eq!(s, r#"{"r":3,"n":5,"edges":[[0,1,2],[2,3,4]]}"#);
        assert_eq!(Hypergraph::from_json(&s).unwrap(), g);
        assert!(Hypergraph::from_json(r#"{"r":3,"n":6,"edges":[[0,1,2],[2,3,4]]}"#).is_err());
    }

    #[test]
    fn predicates() {
        let c2 = h(3, &[&[0, 1, 2], &[0, 1, 3]]);
        assert!(!c2.is_simple());
        assert!(!c2.is_hypertree());
        let p3 = h(3, &[&[0, 1, 2], &[2, 3, 4], &[4, 5, 6]]);
        assert!(p3.is_hypertree() && p3.is_simple());
        let c6 = cycle3(6);
        assert!(c6.is_connected() && !c6.is_hypertree());
        assert_eq!(c6.cycle_rank(), 1);
        let disc = h(2, &[&[0, 1], &[2, 3]]);
        assert!(!disc.is_connected());
    }

    #[test]
    fn irreducibility() {
        let s4 = h(3, &[&[0, 1, 2], &[0, 3, 4], &[0, 5, 6], &[0, 7, 8]]);
        assert!(!s4.is_irreducible());
        assert!(!cycle3(3).is_irreducible());
        // theta(1,1,1): EL={a1,a2,a3}, ER={b1,b2,b3}, paths ai-bi of one edge each
        let theta = h(3, &[&[0, 1, 2], &[3, 4, 5], &[0, 3, 6], &[1, 4, 7], &[2, 5, 8]]);
        assert!(theta.is_irreducible());
        assert_eq!(theta.reduce(), Err(Error::Irreducible));
    }

    #[test]
    fn extend_reduce() {
        let c4 = h(2, &[&[0, 1], &[1, 2], &[2, 3], &[3, 0]]);
        let e = c4.extend();
        assert_eq!(e.r(), 3);
        assert_eq!(e.n(), 8);
        assert_eq!(e.reduce().unwrap(), c4);
        assert_eq!(e.degrees()[..4], c4.degrees()[..]);
    }

    #[test]
    fn identification() {
        let p4 = h(2, &[&[0, 1], &[1, 2], &[2, 3], &[3, 4]]);
        let c4 = p4.identify_vertices(0, 4).unwrap();
        assert_eq!((c4.n(), c4.m()), (4, 4));
        assert!(c4.degrees().iter().all(|&d| d == 2));
        assert!(matches!(p4.identify_vertices(0, 1), Err(Error::InvalidIdentification(_))));
        // two leaves of distinct pendant edges of a 3-uniform star
        let s2 = h(3, &[&[0, 1, 2], &[0, 3, 4]]);
        let q = s2.identify_vertices(1, 3).unwrap();
        assert_eq!(q.m(), 2);
        assert!(!q.is_simple());
    }

    #[test]
    fn branching() {
        let s3 = h(3, &[&[0, 1, 2], &[0, 3, 4], &[0, 5, 6]]);
        assert_eq!(s3.branching_vertices(3), vec![0]);
        // F_{1,1,1}: central edge {0,1,2} plus one pendant edge at each vertex
        let f = h(3, &[&[0, 1, 2], &[0, 3, 4], &[1, 5, 6], &[2, 7, 8]]);
        assert_eq!(f.branching_edges(3), vec![0]);
        let p5 = h(3, &[&[0, 1, 2], &[2, 3, 4], &[4, 5, 6], &[6, 7, 8], &[8, 9, 10]]);
        assert!(p5.branching_vertices(3).is_empty() && p5.branching_edges(3).is_empty());
    }

    #[test]
    fn partial_hypergraph() {
        let base = h(2, &[&[0, 1]]);
        assert!(PartialHypergraph::new(base.clone(), vec![]).is_err());
        assert!(PartialHypergraph::new(base.clone(), vec![5]).is_err());
        let p = PartialHypergraph::new(base, vec![1]).unwrap();
        assert_eq!(p.extend().designated, vec![1]);
    }
}
