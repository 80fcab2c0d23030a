//! Leaves-to-root labeling of tree-shaped parts of a hypergraph.
//!
//! Leaf corners are set to the vertex capacity (normally 1). Walking toward
//! the root, each vertex gives its parent edge whatever capacity its child
//! edges leave over, and each edge gives its parent vertex the corner that
//! makes its product equal α. The result is normal everywhere except at the
//! root, whose sum (or product, for an edge root) is returned.

use crate::error::{Error, Result};
use crate::hypergraph::Hypergraph;
use crate::labeling::WeightedIncidence;
use crate::scalar::Scalar;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Root {
    Vertex(usize),
    Edge(usize),
}

/// Label the tree hanging at `root` while never entering the edges in
/// `blocked`. Writes corners into `w` and returns the sum of the corners at
/// `root` over its non-blocked edges, or `None` when some corner would be
/// non-positive (α too large for this tree).
///
/// Fails with [`Error::NotHypertree`] if the reachable part has a cycle.
pub fn label_hanging<T: Scalar>(
    h: &Hypergraph,
    alpha: T,
    root: usize,
    blocked: &[usize],
    caps: &[T],
    w: &mut WeightedIncidence<T>,
) -> Result<Option<T>> {
    // Pre-order over alternating vertex/edge nodes.
    #[derive(Clone, Copy)]
    enum Node {
        V(usize, Option<usize>),
        E(usize, usize),
    }
    let mut order = Vec::new();
    let mut seen_v = vec![false; h.n()];
    let mut seen_e = vec![false; h.m()];
    for &b in blocked {
        seen_e[b] = true;
    }
    seen_v[root] = true;
    let mut stack = vec![Node::V(root, None)];
    while let Some(node) = stack.pop() {
        order.push(node);
        match node {
            Node::V(v, _) => {
                for &e in h.incident(v) {
                    if !seen_e[e] {
                        seen_e[e] = true;
                        stack.push(Node::E(e, v));
                    }
                }
            }
            Node::E(e, u) => {
                for &x in h.edge(e) {
                    if x == u {
                        continue;
                    }
                    if seen_v[x] {
                        return Err(Error::NotHypertree);
                    }
                    seen_v[x] = true;
                    stack.push(Node::V(x, Some(e)));
                }
            }
        }
    }
    // Children are visited after parents in pre-order; go backwards.
    let mut child_sum = vec![T::zero(); h.n()];
    for &node in order.iter().rev() {
        match node {
            Node::V(v, Some(e)) => {
                let corner = caps[v] - child_sum[v];
                if !(corner > T::zero()) {
                    return Ok(None);
                }
                w.set(h, v, e, corner);
            }
            Node::V(_, None) => {}
            Node::E(e, u) => {
                let mut prod = T::one();
                for &x in h.edge(e) {
                    if x != u {
                        prod = prod * w.get(h, x, e).expect("child labeled");
                    }
                }
                let corner = alpha / prod;
                if !(corner > T::zero()) || corner.is_infinite() {
                    return Ok(None);
                }
                w.set(h, u, e, corner);
                child_sum[u] = child_sum[u] + corner;
            }
        }
    }
    Ok(Some(child_sum[root]))
}

/// Full rooted labeling of a hypertree. For a vertex root the returned value
/// is the root's vertex sum; for an edge root every vertex `u` of the root
/// edge gets corner `cap(u) − (sum hanging at u)` and the value returned is
/// the root edge's product.
pub fn rooted_labeling<T: Scalar>(
    h: &Hypergraph,
    alpha: T,
    root: Root,
    caps: &[T],
) -> Result<Option<(WeightedIncidence<T>, T)>> {
    if !h.is_hypertree() {
        return Err(Error::NotHypertree);
    }
    if caps.len() != h.n() {
        return Err(Error::InvalidParameter("one capacity per vertex is required".into()));
    }
    let mut w = WeightedIncidence::empty(h);
    match root {
        Root::Vertex(v) => {
            if v >= h.n() {
                return Err(Error::VertexOutOfRange(v));
            }
            Ok(label_hanging(h, alpha, v, &[], caps, &mut w)?.map(|s| (w, s)))
        }
        Root::Edge(e) => {
            if e >= h.m() {
                return Err(Error::InvalidParameter(format!("edge {e} out of range")));
            }
            let mut prod = T::one();
            for &u in h.edge(e) {
                let Some(s) = label_hanging(h, alpha, u, &[e], caps, &mut w)? else {
                    return Ok(None);
                };
                let corner = caps[u] - s;
                if !(corner > T::zero()) {
                    return Ok(None);
                }
                w.set(h, u, e, corner);
                prod = prod * corner;
            }
            Ok(Some((w, prod)))
        }
    }
}

/// Corners along a chain of edges `(edge, from, to)` where consecutive
/// entries share `to`/`from`, every other vertex of each edge is a leaf with
/// corner 1, and `used` is the corner already spent at the first `from`.
/// Returns the corner left at the last `to`.
pub fn label_chain<T: Scalar>(
    h: &Hypergraph,
    alpha: T,
    chain: &[(usize, usize, usize)],
    mut used: T,
    w: &mut WeightedIncidence<T>,
) -> Result<T> {
    for &(e, from, to) in chain {
        let near = T::one() - used;
        if !(near > T::zero()) {
            return Err(Error::OutOfDomain(format!("corner {near} at vertex {from} is not positive")));
        }
        w.set(h, from, e, near);
        for &x in h.edge(e) {
            if x != from && x != to {
                w.set(h, x, e, T::one());
            }
        }
        used = alpha / near;
        w.set(h, to, e, used);
    }
    Ok(used)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hypergraph::validate;

    #[test]
    fn two_edge_path_closed_form() {
        for r in 2..=5 {
            // edges share vertex 0
            let e0: Vec<usize> = (0..r).collect();
            let mut e1 = vec![0];
            e1.extend(r..2 * r - 1);
            let h = validate(&[e0, e1], r).unwrap();
            let caps = vec![1.0; h.n()];
            let alpha = 0.3f64;
            let (w, s) = rooted_labeling(&h, alpha, Root::Vertex(1), &caps).unwrap().unwrap();
            // root is a leaf of edge 0; its corner there is α/(1−α)
            assert!((s - alpha / (1.0 - alpha)).abs() < 1e-15);
            assert!((w.get(&h, 0, 1).unwrap() - alpha).abs() < 1e-15);
            assert!((w.get(&h, 0, 0).unwrap() - (1.0 - alpha)).abs() < 1e-15);
        }
    }

    #[test]
    fn infeasible_alpha() {
        let h = validate(&[vec![0, 1], vec![1, 2], vec![2, 3]], 2).unwrap();
        let caps = vec![1.0; 4];
        assert!(rooted_labeling(&h, 0.9, Root::Vertex(0), &caps).unwrap().is_none());
    }

    #[test]
    fn cycle_detected() {
        let h = validate(&[vec![0, 1], vec![1, 2], vec![2, 0]], 2).unwrap();
        let mut w = WeightedIncidence::empty(&h);
        let caps = vec![1.0; 3];
        assert_eq!(label_hanging(&h, 0.2, 0, &[], &caps, &mut w), Err(Error::NotHypertree));
        // blocking one edge leaves a path
        assert!(label_hanging(&h, 0.2, 0, &[2], &caps, &mut w).unwrap().is_some());
    }

    #[test]
    fn edge_root_product() {
        // spider with one central 4-edge and four pendant edges
        let mut edges = vec![vec![0, 1, 2, 3]];
        for i in 0..4 {
            edges.push(vec![i, 4 + 3 * i, 5 + 3 * i, 6 + 3 * i]);
        }
        let h = validate(&edges, 4).unwrap();
        let b = 5f64.sqrt() - 2.0;
        let (_, p) = rooted_labeling(&h, b, Root::Edge(0), &vec![1.0; h.n()]).unwrap().unwrap();
        assert!((p - (1.0 - b).powi(4)).abs() < 1e-15);
    }
}
