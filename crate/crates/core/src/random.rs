//! Seeded random instances for property checks.

use crate::hypergraph::Hypergraph;
use rand::seq::SliceRandom;
use rand::Rng;

/// Random hypertree with `m` edges: each new edge meets one existing vertex.
pub fn hypertree<R: Rng>(rng: &mut R, r: usize, m: usize) -> Hypergraph {
    let mut edges: Vec<Vec<usize>> = vec![(0..r).collect()];
    let mut n = r;
    for _ in 1..m {
        let v = rng.gen_range(0..n);
        let mut e = vec![v];
        e.extend(n..n + r - 1);
        n += r - 1;
        edges.push(e);
    }
    Hypergraph::new(r, n, edges).expect("valid hypertree")
}

/// Random connected hypergraph: a hypertree with `m − extra` edges plus
/// `extra` edges drawn on existing vertices (skipping duplicates), so it
/// usually has cycles. The tree part keeps at least two edges when `m ≥ 2`.
pub fn connected<R: Rng>(rng: &mut R, r: usize, m: usize, extra: usize) -> Hypergraph {
    let base = hypertree(rng, r, m.saturating_sub(extra).max(m.min(2)).max(1));
    let n = base.n();
    let mut edges = base.edges().to_vec();
    let verts: Vec<usize> = (0..n).collect();
    let mut tries = 0;
    while edges.len() < m && tries < 100 {
        tries += 1;
        let mut e: Vec<usize> = verts.choose_multiple(rng, r).copied().collect();
        e.sort_unstable();
        if !edges.contains(&e) {
            edges.push(e);
        }
    }
    Hypergraph::new(r, n, edges).expect("valid hypergraph")
}

/// An edge whose removal keeps the rest connected (a leaf of a BFS tree on
/// the edges), together with the remaining hypergraph.
pub fn drop_removable_edge(h: &Hypergraph) -> Option<Hypergraph> {
    if h.m() < 2 {
        return None;
    }
    let mut order = vec![0];
    let mut seen = vec![false; h.m()];
    seen[0] = true;
    let mut i = 0;
    while i < order.len() {
        for f in h.adjacent_edges(order[i]) {
            if !seen[f] {
                seen[f] = true;
                order.push(f);
            }
        }
        i += 1;
    }
    let last = *order.last()?;
    let keep: Vec<usize> = (0..h.m()).filter(|&e| e != last).collect();
    h.edge_subgraph(&keep).ok().map(|(g, _)| g)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn shapes() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for r in 2..=4 {
            let t = hypertree(&mut rng, r, 8);
            assert!(t.is_hypertree() && t.m() == 8);
            let c = connected(&mut rng, r, 7, 2);
            assert!(c.is_connected());
            let d = drop_removable_edge(&c).unwrap();
            assert!(d.is_connected() && d.m() == c.m() - 1);
        }
    }
}
