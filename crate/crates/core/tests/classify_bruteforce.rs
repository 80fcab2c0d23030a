//! The r = 3 classifier against a direct reading of the quipu definitions,
//! using pairwise paths in the incidence graph instead of pruning.

use hyperspec::classify::{structure_report, Category};
use hyperspec::enumerate::{enumerate_connected, EnumOptions};
use hyperspec::Hypergraph;
use std::collections::VecDeque;

/// Incidence-graph node ids: vertices `0..n`, edges `n..n+m`.
fn neighbors(h: &Hypergraph, x: usize) -> Vec<usize> {
    if x < h.n() {
        h.incident(x).iter().map(|&e| h.n() + e).collect()
    } else {
        h.edge(x - h.n()).to_vec()
    }
}

fn tree_path(h: &Hypergraph, a: usize, b: usize) -> Vec<usize> {
    let total = h.n() + h.m();
    let mut parent = vec![usize::MAX; total];
    parent[a] = a;
    let mut q = VecDeque::from([a]);
    while let Some(x) = q.pop_front() {
        for y in neighbors(h, x) {
            if parent[y] == usize::MAX {
                parent[y] = x;
                q.push_back(y);
            }
        }
    }
    let mut path = vec![b];
    while *path.last().unwrap() != a {
        path.push(parent[*path.last().unwrap()]);
    }
    path
}

fn conforms(h: &Hypergraph) -> bool {
    let n = h.n();
    if (0..n).any(|v| h.degree(v) > 3) {
        return false;
    }
    let bv: Vec<usize> = (0..n).filter(|&v| h.degree(v) == 3).collect();
    let low = |e: usize| h.edge(e).iter().all(|&v| h.degree(v) <= 2);
    let adj = |e: usize| h.adjacent_edges(e).len();
    if (0..h.m()).any(|e| low(e) && adj(e) > 3) {
        return false;
    }
    let be: Vec<usize> = (0..h.m()).filter(|&e| low(e) && adj(e) == 3).collect();
    if h.is_hypertree() {
        if bv.len() > 2 {
            return false;
        }
        let targets: Vec<usize> = bv.iter().copied().chain(be.iter().map(|&e| n + e)).collect();
        if targets.len() <= 1 {
            return true;
        }
        // some pair of targets spans a path through all of them
        let mut spanning = None;
        for (i, &a) in targets.iter().enumerate() {
            for &b in &targets[i + 1..] {
                let p = tree_path(h, a, b);
                if targets.iter().all(|t| p.contains(t)) {
                    spanning = Some(p);
                }
            }
        }
        let Some(p) = spanning else { return false };
        // a branching vertex is never strictly inside the span of two others
        bv.iter().all(|&v| {
            let pos = p.iter().position(|&x| x == v).unwrap();
            let before = targets.iter().any(|t| p.iter().position(|x| x == t).unwrap() < pos);
            let after = targets.iter().any(|t| p.iter().position(|x| x == t).unwrap() > pos);
            !(before && after)
        })
    } else {
        if h.cycle_rank() != 1 || !bv.is_empty() {
            return false;
        }
        // an edge lies on the cycle iff two of its vertices stay joined
        // once it is dropped
        be.iter().all(|&e| {
            let keep: Vec<usize> = (0..h.m()).filter(|&f| f != e).collect();
            let (rest, map) = h.edge_subgraph(&keep).unwrap();
            let ids: Vec<usize> = h.edge(e).iter().filter_map(|&v| map[v]).collect();
            ids.iter().any(|&a| {
                let comp = rest.component_of(a);
                ids.iter().any(|&b| b != a && comp.contains(&b))
            })
        })
    }
}

#[test]
fn three_uniform_classifier_matches_definitions() {
    let all = enumerate_connected(3, 6, EnumOptions { simple_only: true }).unwrap();
    let mut compared = 0;
    for (canon, h) in &all {
        if !h.is_irreducible() {
            continue;
        }
        let rep = structure_report(h);
        let ours = matches!(rep.category, Category::Open3Quipu | Category::Closed3Quipu);
        assert_eq!(ours, conforms(h), "{canon}: classifier says {}", rep.category);
        compared += 1;
    }
    assert!(compared >= 200, "only {compared} irreducible instances");
}
