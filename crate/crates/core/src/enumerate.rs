//! Exhaustive generation of small connected uniform hypergraphs up to
//! isomorphism, and a desk-scale check of the structural theorems on them.
//!
//! A hypergraph without isolated vertices is determined up to isomorphism
//! by the multiset of its vertex incidence masks (which edges each vertex
//! lies on) modulo relabeling the edges. The canonical form is the least
//! sorted mask list over all edge orders that respect an invariant
//! partition of the edges.

use crate::classify::{admissibility, Admissibility};
use crate::error::{Error, Result};
use crate::hypergraph::Hypergraph;
use rayon::prelude::*;
use serde::Serialize;
use std::collections::{BTreeMap, BTreeSet};

/// Largest edge count accepted by [`canonical_form`].
pub const MAX_CANONICAL_EDGES: usize = 9;

/// Largest `max_edges` accepted by [`enumerate_connected`] for each `r`.
pub fn edge_limit(r: usize) -> usize {
    match r {
        2 => 7,
        3 => 6,
        4 | 5 => 5,
        _ => 4,
    }
}

fn masks_under(h: &Hypergraph, pos: &[usize]) -> Vec<u64> {
    let mut masks: Vec<u64> = (0..h.n())
        .map(|v| h.incident(v).iter().fold(0u64, |acc, &e| acc | 1 << pos[e]))
        .collect();
    masks.sort_unstable();
    masks
}

/// Least sorted mask list over edge orders; edges are first grouped by the
/// sorted degree list of their vertices, groups placed in invariant order.
fn canonical_masks(h: &Hypergraph) -> Result<Vec<u64>> {
    let m = h.m();
    if m > MAX_CANONICAL_EDGES {
        return Err(Error::LimitExceeded(format!("{m} edges exceeds the canonical-form cap of {MAX_CANONICAL_EDGES}")));
    }
    let inv: Vec<Vec<usize>> = (0..m)
        .map(|e| {
            let mut d: Vec<usize> = h.edge(e).iter().map(|&v| h.degree(v)).collect();
            d.sort_unstable();
            d
        })
        .collect();
    let mut groups: BTreeMap<&Vec<usize>, Vec<usize>> = BTreeMap::new();
    for e in 0..m {
        groups.entry(&inv[e]).or_default().push(e);
    }
    // slots[k] = the positions available to group k
    let mut slots = Vec::new();
    let mut members = Vec::new();
    let mut next = 0;
    for g in groups.values() {
        slots.push((next..next + g.len()).collect::<Vec<_>>());
        members.push(g.clone());
        next += g.len();
    }
    let mut pos = vec![0; m];
    let mut best: Option<Vec<u64>> = None;
    assign(h, &members, &slots, 0, &mut vec![false; m], &mut pos, &mut best);
    Ok(best.expect("at least one order"))
}

fn assign(
    h: &Hypergraph,
    members: &[Vec<usize>],
    slots: &[Vec<usize>],
    depth: usize,
    used: &mut Vec<bool>,
    pos: &mut Vec<usize>,
    best: &mut Option<Vec<u64>>,
) {
    // flatten (group, member) pairs by depth
    let mut k = depth;
    let mut g = 0;
    while g < members.len() && k >= members[g].len() {
        k -= members[g].len();
        g += 1;
    }
    if g == members.len() {
        let masks = masks_under(h, pos);
        if best.as_ref().is_none_or(|b| masks < *b) {
            *best = Some(masks);
        }
        return;
    }
    let e = members[g][k];
    for &p in &slots[g] {
        if !used[p] {
            used[p] = true;
            pos[e] = p;
            assign(h, members, slots, depth + 1, used, pos, best);
            used[p] = false;
        }
    }
}

fn masks_to_string(r: usize, m: usize, masks: &[u64]) -> String {
    let body: Vec<String> = masks.iter().map(|x| format!("{x:x}")).collect();
    format!("r{r}m{m}:{}", body.join("."))
}

/// Canonical string: equal for two hypergraphs exactly when they are
/// isomorphic.
pub fn canonical_form(h: &Hypergraph) -> Result<String> {
    Ok(masks_to_string(h.r(), h.m(), &canonical_masks(h)?))
}

/// The hypergraph read back from its canonical masks, with vertices in mask
/// order and edges in canonical order.
pub fn canonical_hypergraph(h: &Hypergraph) -> Result<(String, Hypergraph)> {
    let masks = canonical_masks(h)?;
    let edges = (0..h.m())
        .map(|e| (0..masks.len()).filter(|&v| masks[v] >> e & 1 == 1).collect())
        .collect();
    let c = Hypergraph::new(h.r(), masks.len(), edges)?;
    Ok((masks_to_string(h.r(), h.m(), &masks), c))
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct EnumOptions {
    /// Drop hypergraphs in which two edges share two or more vertices.
    pub simple_only: bool,
}

/// Every way of adding one edge that meets `h`, up to swapping vertices with
/// identical incidence.
fn children(h: &Hypergraph, opts: EnumOptions) -> Vec<Hypergraph> {
    let r = h.r();
    let mut classes: BTreeMap<Vec<usize>, Vec<usize>> = BTreeMap::new();
    for v in 0..h.n() {
        classes.entry(h.incident(v).to_vec()).or_default().push(v);
    }
    let classes: Vec<Vec<usize>> = classes.into_values().collect();
    let mut out = Vec::new();
    let mut counts = vec![0; classes.len()];
    pick(h, &classes, 0, 0, &mut counts, r, opts, &mut out);
    out
}

#[allow(clippy::too_many_arguments)]
fn pick(
    h: &Hypergraph,
    classes: &[Vec<usize>],
    k: usize,
    chosen: usize,
    counts: &mut Vec<usize>,
    r: usize,
    opts: EnumOptions,
    out: &mut Vec<Hypergraph>,
) {
    if k == classes.len() {
        if chosen == 0 {
            return;
        }
        let mut e: Vec<usize> = Vec::with_capacity(r);
        for (c, &cnt) in classes.iter().zip(counts.iter()) {
            e.extend_from_slice(&c[..cnt]);
        }
        if opts.simple_only && h.edges().iter().any(|f| f.iter().filter(|v| e.contains(v)).count() >= 2) {
            return;
        }
        let n = h.n() + (r - chosen);
        e.extend(h.n()..n);
        let mut edges = h.edges().to_vec();
        edges.push(e);
        // duplicates fail validation and are skipped
        if let Ok(g) = Hypergraph::new(r, n, edges) {
            out.push(g);
        }
        return;
    }
    for cnt in 0..=classes[k].len().min(r - chosen) {
        counts[k] = cnt;
        pick(h, classes, k + 1, chosen + cnt, counts, r, opts, out);
    }
    counts[k] = 0;
}

/// All connected r-uniform hypergraphs with at most `max_edges` edges, one
/// per isomorphism class, ordered by edge count then canonical form.
pub fn enumerate_connected(r: usize, max_edges: usize, opts: EnumOptions) -> Result<Vec<(String, Hypergraph)>> {
    if r < 2 {
        return Err(Error::InvalidUniformity(r));
    }
    if max_edges > edge_limit(r) {
        return Err(Error::LimitExceeded(format!(
            "max_edges {max_edges} exceeds the limit {} for r = {r}",
            edge_limit(r)
        )));
    }
    if max_edges == 0 {
        return Ok(vec![]);
    }
    let single = Hypergraph::new(r, r, vec![(0..r).collect()])?;
    let mut level = vec![canonical_hypergraph(&single)?];
    let mut all = level.clone();
    for _ in 1..max_edges {
        let found: Vec<(String, Hypergraph)> = level
            .par_iter()
            .flat_map_iter(|(_, h)| children(h, opts))
            .map(|g| canonical_hypergraph(&g))
            .collect::<Result<_>>()?;
        let unique: BTreeMap<String, Hypergraph> = found.into_iter().collect();
        level = unique.into_iter().collect();
        all.extend(level.iter().cloned());
    }
    Ok(all)
}

#[derive(Clone, Debug, Serialize)]
pub struct CensusRow {
    pub canonical: String,
    pub n: usize,
    pub edges: String,
    pub rho: f64,
    pub verdict: Admissibility,
    pub category: String,
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct TheoremReport {
    pub checked: usize,
    pub irreducible: usize,
    pub admissible: usize,
    pub admissible_irreducible: usize,
    pub boundary: usize,
    pub inconclusive: usize,
    /// Canonical forms of hypergraphs with `ρ ≤ ρ'_r` whose structure is not
    /// one the theorems allow.
    pub violations: Vec<String>,
    /// Categories of the irreducible admissible ones.
    pub admissible_categories: BTreeSet<String>,
}

/// Classify every enumerated hypergraph; returns the census rows and the
/// summary. Non-simple hypergraphs are included.
pub fn verify_theorem(r: usize, max_edges: usize, tol: f64) -> Result<(TheoremReport, Vec<CensusRow>)> {
    let all = enumerate_connected(r, max_edges, EnumOptions::default())?;
    let results: Vec<(CensusRow, bool)> = all
        .par_iter()
        .map(|(c, h)| {
            let rep = admissibility(h, tol)?;
            let row = CensusRow {
                canonical: c.clone(),
                n: h.n(),
                edges: serde_json::to_string(h.edges()).expect("edges serialize"),
                rho: rep.spectral.rho,
                verdict: rep.verdict,
                category: rep.structure.terminal().category.to_string(),
            };
            let irreducible = h.is_irreducible();
            Ok((row, irreducible))
        })
        .collect::<Result<_>>()?;
    let mut report = TheoremReport { checked: results.len(), ..Default::default() };
    for (row, irreducible) in &results {
        report.irreducible += *irreducible as usize;
        match row.verdict {
            Admissibility::Admissible => {
                report.admissible += 1;
                if *irreducible {
                    report.admissible_irreducible += 1;
                    report.admissible_categories.insert(row.category.clone());
                }
            }
            Admissibility::Boundary => report.boundary += 1,
            Admissibility::Inconclusive => report.inconclusive += 1,
            Admissibility::TheoremViolation => report.violations.push(row.canonical.clone()),
            Admissibility::Inadmissible => {}
        }
    }
    Ok((report, results.into_iter().map(|(row, _)| row).collect()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hypergraph::validate;

    fn count(r: usize, m: usize, simple: bool) -> Vec<usize> {
        let all = enumerate_connected(r, m, EnumOptions { simple_only: simple }).unwrap();
        (1..=m).map(|k| all.iter().filter(|(_, h)| h.m() == k).count()).collect()
    }

    /// Connected graphs with exactly m edges, by labeled brute force with
    /// vertex-permutation canonicalisation.
    fn graph_counts_brute(max_m: usize) -> Vec<usize> {
        fn perms(n: usize) -> Vec<Vec<usize>> {
            if n == 0 {
                return vec![vec![]];
            }
            let mut out = vec![];
            for p in perms(n - 1) {
                for i in 0..n {
                    let mut q = p.clone();
                    q.insert(i, n - 1);
                    out.push(q);
                }
            }
            out
        }
        let mut counts = vec![];
        for m in 1..=max_m {
            let nv = m + 1;
            let all_edges: Vec<(usize, usize)> = (0..nv).flat_map(|a| (a + 1..nv).map(move |b| (a, b))).collect();
            let ps = perms(nv);
            let mut seen = BTreeSet::new();
            let total = all_edges.len();
            for bits in 0u32..(1 << total) {
                if bits.count_ones() as usize != m {
                    continue;
                }
                let es: Vec<(usize, usize)> = (0..total).filter(|i| bits >> i & 1 == 1).map(|i| all_edges[i]).collect();
                let raw: Vec<Vec<usize>> = es.iter().map(|&(a, b)| vec![a, b]).collect();
                let g = validate(&raw, 2).unwrap();
                if !g.is_connected() {
                    continue;
                }
                let key = ps
                    .iter()
                    .filter(|p| p.len() == nv)
                    .map(|p| {
                        let mut e: Vec<(usize, usize)> = es
                            .iter()
                            .map(|&(a, b)| (p[a].min(p[b]), p[a].max(p[b])))
                            .collect();
                        e.sort_unstable();
                        e
                    })
                    .min()
                    .unwrap();
                seen.insert(key);
            }
            counts.push(seen.len());
        }
        counts
    }

    #[test]
    fn graph_counts_match_brute_force() {
        let brute = graph_counts_brute(5);
        assert_eq!(brute, vec![1, 1, 3, 5, 12]);
        assert_eq!(count(2, 5, false), brute);
        // larger counts: connected graphs by edge count
        assert_eq!(count(2, 7, false), vec![1, 1, 3, 5, 12, 30, 79]);
    }

    #[test]
    fn small_three_uniform() {
        assert_eq!(count(3, 1, true), vec![1]);
        assert_eq!(count(3, 2, true), vec![1, 1]);
        assert_eq!(count(3, 2, false), vec![1, 2]);
    }

    #[test]
    fn canonical_invariance() {
        let a = validate(&[vec![0, 1, 2], vec![0, 1, 3]], 3).unwrap();
        let b = validate(&[vec![5, 7, 9], vec![9, 8, 5]], 3).unwrap();
        assert_eq!(canonical_form(&a).unwrap(), canonical_form(&b).unwrap());
        let path = validate(&[vec![0, 1, 2], vec![2, 3, 4], vec![4, 5, 6]], 3).unwrap();
        let star = validate(&[vec![0, 1, 2], vec![0, 3, 4], vec![0, 5, 6]], 3).unwrap();
        assert_ne!(canonical_form(&path).unwrap(), canonical_form(&star).unwrap());
        let e = path.extend();
        assert_eq!(canonical_form(&e).unwrap(), canonical_form(&e).unwrap());
    }

    #[test]
    fn canonical_hypergraph_is_isomorphic() {
        let h = validate(&[vec![3, 1, 2], vec![2, 4, 0], vec![4, 5, 6], vec![6, 7, 1]], 3).unwrap();
        let (c, g) = canonical_hypergraph(&h).unwrap();
        assert_eq!(canonical_form(&g).unwrap(), c);
        assert_eq!(g.degrees().iter().sum::<usize>(), h.degrees().iter().sum::<usize>());
    }

    #[test]
    fn limits() {
        assert!(matches!(enumerate_connected(3, 7, EnumOptions::default()), Err(Error::LimitExceeded(_))));
    }

    #[test]
    fn theorem_small() {
        let (rep, rows) = verify_theorem(3, 3, 1e-9).unwrap();
        assert!(rep.violations.is_empty(), "{:?}", rep.violations);
        assert_eq!(rows.len(), rep.checked);
        let (rep, _) = verify_theorem(6, 3, 1e-9).unwrap();
        assert!(rep.violations.is_empty());
        assert_eq!(rep.admissible_irreducible, 0);
    }
}
