//! Structural recognition of the categories that hypergraphs with
//! `ρ ≤ ρ'_r` are confined to, and the combined spectral/structural verdict.

use crate::beta::{dagger_g, BetaParams};
use crate::hypergraph::Hypergraph;
use crate::scalar::beta_star;
use crate::spectral::{power_run, rho_hypertree, thresholds, SpectralResult, DEFAULT_MAX_ITER};
use serde::{Serialize, Serializer};
use std::collections::VecDeque;
use std::fmt;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Category {
    Reducible,
    Open3Quipu,
    Closed3Quipu,
    Open4Quipu,
    Dagger([usize; 4]),
    EdgeStar,
    /// `C_2^{(r)}`: two edges sharing exactly two vertices.
    TwoCycle,
    /// A 2-graph; no structural claim is made.
    Graph,
    Violation,
}

impl fmt::Display for Category {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Category::Reducible => f.write_str("reducible"),
            Category::Open3Quipu => f.write_str("open-3-quipu"),
            Category::Closed3Quipu => f.write_str("closed-3-quipu"),
            Category::Open4Quipu => f.write_str("open-4-quipu"),
            Category::Dagger([i, j, k, l]) => write!(f, "dagger({i},{j},{k},{l})"),
            Category::EdgeStar => f.write_str("edge-star"),
            Category::TwoCycle => f.write_str("two-cycle"),
            Category::Graph => f.write_str("graph"),
            Category::Violation => f.write_str("violation"),
        }
    }
}

impl Serialize for Category {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct StructureReport {
    pub category: Category,
    pub r: usize,
    /// Edge ids along the spine path or the cycle.
    pub spine: Vec<usize>,
    pub branching_vertices: Vec<usize>,
    /// 3-branching edges.
    pub branching_edges: Vec<usize>,
    /// 4-branching edges (r = 4 only).
    pub branching_edges_4: Vec<usize>,
    pub violations: Vec<String>,
    /// Number of reductions applied before reaching `base`.
    pub reduction_steps: usize,
    /// Report for the fully reduced hypergraph, when reducible.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub base: Option<Box<StructureReport>>,
}

impl StructureReport {
    fn new(h: &Hypergraph, category: Category) -> Self {
        StructureReport {
            category,
            r: h.r(),
            spine: vec![],
            branching_vertices: vec![],
            branching_edges: vec![],
            branching_edges_4: vec![],
            violations: vec![],
            reduction_steps: 0,
            base: None,
        }
    }

    fn violate(mut self, why: impl Into<String>) -> Self {
        self.category = Category::Violation;
        self.violations.push(why.into());
        self
    }

    /// The category reached after all reductions.
    pub fn terminal(&self) -> &StructureReport {
        match &self.base {
            Some(b) => b.terminal(),
            None => self,
        }
    }

    /// Whether the (terminal) category is one that `ρ ≤ ρ'_r` allows.
    pub fn conforms(&self) -> bool {
        match self.terminal().category {
            Category::Violation | Category::Reducible => false,
            Category::Dagger(t) => dagger_admissible(t),
            _ => true,
        }
    }
}

/// The daggers allowed below the threshold.
pub fn dagger_admissible([i, j, k, l]: [usize; 4]) -> bool {
    matches!((i, j, k, l), (1, 2, 2, 2) | (1, 2, 2, 3) | (1, 1, 4, 4) | (1, 1, 4, 5)) || (i == 1 && j == 1 && k <= 3)
}

/// Edges meeting `e` (other than `e`).
fn adjacency(h: &Hypergraph, e: usize) -> usize {
    h.adjacent_edges(e).len()
}

/// Edges with no vertex of degree ≥ 3 that meet exactly `k` other edges.
fn branching_edges_exact(h: &Hypergraph, k: usize) -> Vec<usize> {
    (0..h.m())
        .filter(|&e| h.edge(e).iter().all(|&v| h.degree(v) <= 2) && adjacency(h, e) == k)
        .collect()
}

/// Node ids in the incidence graph: vertices `0..n`, edges `n..n+m`.
struct Incidence<'a> {
    h: &'a Hypergraph,
}

impl Incidence<'_> {
    fn len(&self) -> usize {
        self.h.n() + self.h.m()
    }

    fn neighbors(&self, x: usize) -> Vec<usize> {
        let n = self.h.n();
        if x < n {
            self.h.incident(x).iter().map(|&e| n + e).collect()
        } else {
            self.h.edge(x - n).to_vec()
        }
    }

    /// Prune non-target leaves until none remain; returns the surviving
    /// mask. For a tree this is the Steiner tree of the targets; with no
    /// targets it is the 2-core.
    fn prune(&self, target: &[bool]) -> Vec<bool> {
        let mut alive = vec![true; self.len()];
        let mut deg: Vec<usize> = (0..self.len()).map(|x| self.neighbors(x).len()).collect();
        let mut queue: VecDeque<usize> = (0..self.len()).filter(|&x| deg[x] <= 1 && !target[x]).collect();
        while let Some(x) = queue.pop_front() {
            if !alive[x] {
                continue;
            }
            alive[x] = false;
            for y in self.neighbors(x) {
                if alive[y] {
                    deg[y] -= 1;
                    if deg[y] <= 1 && !target[y] {
                        queue.push_back(y);
                    }
                }
            }
        }
        alive
    }

    fn alive_degree(&self, alive: &[bool], x: usize) -> usize {
        self.neighbors(x).into_iter().filter(|&y| alive[y]).count()
    }

    /// Nodes of a path or cycle in `alive`, in order.
    fn walk(&self, alive: &[bool]) -> Vec<usize> {
        let nodes: Vec<usize> = (0..self.len()).filter(|&x| alive[x]).collect();
        let Some(&start) = nodes
            .iter()
            .find(|&&x| self.alive_degree(alive, x) <= 1)
            .or_else(|| nodes.iter().find(|&&x| x >= self.h.n()))
        else {
            return nodes;
        };
        let mut order = vec![start];
        let mut prev = usize::MAX;
        let mut cur = start;
        loop {
            let next = self.neighbors(cur).into_iter().find(|&y| alive[y] && y != prev && y != start);
            match next {
                Some(y) if !order.contains(&y) => {
                    order.push(y);
                    prev = cur;
                    cur = y;
                }
                _ => break,
            }
        }
        order
    }
}

/// Classify a connected hypergraph.
pub fn structure_report(h: &Hypergraph) -> StructureReport {
    if !h.is_simple() {
        return non_simple(h);
    }
    if h.r() == 2 {
        return StructureReport::new(h, Category::Graph);
    }
    if !h.is_irreducible() {
        return reducible(h);
    }
    match h.r() {
        3 => irreducible_3(h),
        4 => irreducible_4(h),
        5 => irreducible_5(h),
        _ => StructureReport::new(h, Category::Violation).violate("irreducible with r >= 6"),
    }
}

fn non_simple(h: &Hypergraph) -> StructureReport {
    let rep = StructureReport::new(h, Category::TwoCycle);
    let shared = if h.m() == 2 { h.edge(0).iter().filter(|v| h.edge(1).contains(v)).count() } else { 0 };
    if shared == 2 {
        rep
    } else {
        rep.violate("not simple and not C_2")
    }
}

fn reducible(h: &Hypergraph) -> StructureReport {
    let mut cur = h.clone();
    let mut steps = 0;
    while cur.r() > 2 && cur.is_simple() && !cur.is_irreducible() {
        match cur.reduce() {
            Ok(next) => {
                cur = next;
                steps += 1;
            }
            // two edges collapse: the reduced object is not a hypergraph
            Err(_) => break,
        }
    }
    let base = if steps == 0 {
        StructureReport::new(&cur, Category::Violation).violate("reduction collapses two edges")
    } else {
        structure_report(&cur)
    };
    let mut rep = StructureReport::new(h, Category::Reducible);
    rep.reduction_steps = steps;
    rep.base = Some(Box::new(base));
    rep
}

/// Vertex degree at most 3, and no branching edge (all degrees ≤ 2) meeting
/// more than `max_adj` edges. An edge through a branching vertex may meet
/// more: an edge with pendants 1 and 2 and a branching vertex carrying
/// arms 1 and 2 meets four edges at ρ ≈ 3.1957 < ρ'_3.
fn degree_checks(h: &Hypergraph, max_adj: usize, mut rep: StructureReport) -> StructureReport {
    if let Some(v) = (0..h.n()).find(|&v| h.degree(v) > 3) {
        rep = rep.violate(format!("vertex {v} has degree {}", h.degree(v)));
    }
    if let Some(e) = (0..h.m()).find(|&e| adjacency(h, e) > max_adj && h.edge(e).iter().all(|&v| h.degree(v) <= 2)) {
        rep = rep.violate(format!("edge {e} meets {} edges", adjacency(h, e)));
    }
    rep
}

/// Steiner path through `targets` in a hypertree. Returns the ordered node
/// list, or `None` if the Steiner tree branches.
fn steiner_path(inc: &Incidence<'_>, target: &[bool]) -> Option<(Vec<bool>, Vec<usize>)> {
    let alive = inc.prune(target);
    if (0..inc.len()).any(|x| alive[x] && inc.alive_degree(&alive, x) > 2) {
        return None;
    }
    let order = inc.walk(&alive);
    Some((alive, order))
}

fn spine_edges(h: &Hypergraph, order: &[usize]) -> Vec<usize> {
    order.iter().filter(|&&x| x >= h.n()).map(|&x| x - h.n()).collect()
}

fn irreducible_3(h: &Hypergraph) -> StructureReport {
    let mut rep = StructureReport::new(h, Category::Violation);
    rep.branching_vertices = h.branching_vertices(3);
    rep.branching_edges = branching_edges_exact(h, 3);
    rep = degree_checks(h, 3, rep);
    if !rep.violations.is_empty() {
        return rep;
    }
    let inc = Incidence { h };
    let n = h.n();
    if h.is_hypertree() {
        let mut target = vec![false; inc.len()];
        rep.branching_vertices.iter().for_each(|&v| target[v] = true);
        rep.branching_edges.iter().for_each(|&e| target[n + e] = true);
        let Some((alive, order)) = steiner_path(&inc, &target) else {
            return rep.violate("branching vertices and edges do not lie on one path");
        };
        rep.spine = spine_edges(h, &order);
        if rep.branching_vertices.len() > 2 {
            return rep.violate("more than two branching vertices");
        }
        for &v in &rep.branching_vertices {
            if inc.alive_degree(&alive, v) > 1 {
                return rep.violate(format!("branching vertex {v} lies between other branching elements"));
            }
        }
        rep.category = Category::Open3Quipu;
        rep
    } else {
        if h.cycle_rank() != 1 {
            return rep.violate(format!("cycle rank {}", h.cycle_rank()));
        }
        if !rep.branching_vertices.is_empty() {
            return rep.violate("cyclic with a branching vertex");
        }
        let core = inc.prune(&vec![false; inc.len()]);
        let order = inc.walk(&core);
        rep.spine = spine_edges(h, &order);
        if let Some(&e) = rep.branching_edges.iter().find(|&&e| !core[n + e]) {
            return rep.violate(format!("branching edge {e} is off the cycle"));
        }
        rep.category = Category::Closed3Quipu;
        rep
    }
}

/// Length of the path hanging at `v` away from edge `e`, or `None` if what
/// hangs there is not a path.
fn arm_length(h: &Hypergraph, v: usize, e: usize) -> Option<usize> {
    let (mut prev, mut cur, mut len) = (e, v, 0);
    loop {
        let next: Vec<usize> = h.incident(cur).iter().copied().filter(|&f| f != prev).collect();
        match next.as_slice() {
            [] => return Some(len),
            [f] => {
                let onward: Vec<usize> = h.edge(*f).iter().copied().filter(|&x| x != cur && h.degree(x) > 1).collect();
                len += 1;
                match onward.as_slice() {
                    [] => return Some(len),
                    [x] => {
                        prev = *f;
                        cur = *x;
                    }
                    _ => return None,
                }
            }
            _ => return None,
        }
    }
}

fn irreducible_4(h: &Hypergraph) -> StructureReport {
    let mut rep = StructureReport::new(h, Category::Violation);
    rep.branching_vertices = h.branching_vertices(3);
    rep.branching_edges = branching_edges_exact(h, 3);
    rep.branching_edges_4 = branching_edges_exact(h, 4);
    if !h.is_hypertree() {
        return rep.violate("irreducible 4-uniform and not a hypertree");
    }
    rep = degree_checks(h, 4, rep);
    if !rep.violations.is_empty() {
        return rep;
    }
    let n = h.n();
    if rep.branching_vertices.is_empty() && rep.branching_edges.is_empty() && rep.branching_edges_4.len() == 1 {
        let e = rep.branching_edges_4[0];
        let mut arms = [0; 4];
        for (k, &v) in h.edge(e).iter().enumerate() {
            match arm_length(h, v, e) {
                Some(l) => arms[k] = l,
                None => return rep.violate("dagger arm is not a path"),
            }
        }
        arms.sort_unstable();
        rep.spine = vec![e];
        rep.category = Category::Dagger(arms);
        return rep;
    }
    let inc = Incidence { h };
    let mut target = vec![false; inc.len()];
    rep.branching_vertices.iter().for_each(|&v| target[v] = true);
    rep.branching_edges.iter().for_each(|&e| target[n + e] = true);
    rep.branching_edges_4.iter().for_each(|&e| target[n + e] = true);
    let Some((alive, order)) = steiner_path(&inc, &target) else {
        return rep.violate("branching vertices and edges do not lie on one path");
    };
    rep.spine = spine_edges(h, &order);
    if rep.branching_vertices.len() + rep.branching_edges_4.len() > 2 {
        return rep.violate("more than two branching vertices and 4-branching edges");
    }
    for &v in &rep.branching_vertices {
        if inc.alive_degree(&alive, v) > 1 {
            return rep.violate(format!("branching vertex {v} lies between other branching elements"));
        }
    }
    for &e in &rep.branching_edges_4 {
        if inc.alive_degree(&alive, n + e) > 1 {
            return rep.violate(format!("4-branching edge {e} lies between other branching elements"));
        }
        // three arms away from the spine must be paths of lengths 1, 1, k ≤ 3
        let mut arms = Vec::new();
        for &v in h.edge(e) {
            if !alive[v] {
                match arm_length(h, v, e) {
                    Some(l) => arms.push(l),
                    None => return rep.violate(format!("arm of 4-branching edge {e} is not a path")),
                }
            }
        }
        arms.sort_unstable();
        if !(arms.len() == 3 && arms[0] == 1 && arms[1] == 1 && arms[2] <= 3) {
            return rep.violate(format!("4-branching edge {e} has arms {arms:?}, not 1, 1, k <= 3"));
        }
    }
    rep.category = Category::Open4Quipu;
    rep
}

fn irreducible_5(h: &Hypergraph) -> StructureReport {
    let rep = StructureReport::new(h, Category::Violation);
    let center = (0..h.m()).find(|&e| h.edge(e).iter().all(|&v| h.degree(v) == 2));
    let is_star = h.m() == 6
        && center.is_some_and(|c| {
            (0..h.m())
                .filter(|&e| e != c)
                .all(|e| h.edge(e).iter().filter(|&&v| h.degree(v) == 1).count() == h.r() - 1)
        });
    if is_star {
        let mut rep = rep;
        rep.category = Category::EdgeStar;
        rep.spine = vec![center.unwrap()];
        rep
    } else {
        rep.violate("irreducible 5-uniform other than the edge-star")
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Admissibility {
    /// `ρ ≤ ρ'_r` and the structure conforms.
    Admissible,
    /// `ρ > ρ'_r`.
    Inadmissible,
    /// `ρ` within tolerance of `ρ'_r`.
    Boundary,
    /// The bracket straddles `ρ'_r` by more than the tolerance.
    Inconclusive,
    /// `ρ ≤ ρ'_r` but the structure is not one the theorems allow.
    TheoremViolation,
}

#[derive(Clone, Debug, Serialize)]
pub struct AdmissibilityReport {
    pub verdict: Admissibility,
    pub rho_prime: f64,
    pub structure: StructureReport,
    pub spectral: SpectralResult<f64>,
}

/// ρ bracket: bisection for hypertrees, power iteration otherwise (its
/// bracket is valid even when it has not closed).
pub fn rho_bracket(h: &Hypergraph, tol: f64) -> crate::Result<SpectralResult<f64>> {
    if h.is_hypertree() {
        rho_hypertree(h, tol)
    } else {
        Ok(power_run(h, tol, DEFAULT_MAX_ITER)?.result)
    }
}

/// Place a bracket against `ρ'_r`.
pub fn place_against_rho_prime(r: usize, res: &SpectralResult<f64>, tol: f64) -> Admissibility {
    let (_, rp) = thresholds::<f64>(r);
    if res.upper < rp - tol {
        Admissibility::Admissible
    } else if res.lower > rp + tol {
        Admissibility::Inadmissible
    } else if res.width() <= tol && res.lower - tol <= rp && rp <= res.upper + tol {
        Admissibility::Boundary
    } else if res.upper <= rp {
        Admissibility::Admissible
    } else if res.lower > rp {
        Admissibility::Inadmissible
    } else {
        Admissibility::Inconclusive
    }
}

/// Combine ρ against `ρ'_r` with the structural report.
pub fn admissibility(h: &Hypergraph, tol: f64) -> crate::Result<AdmissibilityReport> {
    if !h.is_connected() {
        return Err(crate::Error::NotConnected);
    }
    let spectral = rho_bracket(h, tol / 4.0)?;
    let structure = structure_report(h);
    let placed = place_against_rho_prime(h.r(), &spectral, tol);
    let verdict = match placed {
        Admissibility::Admissible if !structure.conforms() && h.r() >= 3 => Admissibility::TheoremViolation,
        v => v,
    };
    Ok(AdmissibilityReport { verdict, rho_prime: thresholds::<f64>(h.r()).1, structure, spectral })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DaggerRow {
    pub i: usize,
    pub j: usize,
    pub k: usize,
    /// `None` stands for the limit `l → ∞`.
    pub l: Option<usize>,
    pub g: f64,
    /// `g ≥ β`, i.e. the edge-rooted labeling is subnormal.
    pub g_admissible: bool,
    /// Membership in the allowed dagger list.
    pub listed: bool,
}

/// All daggers with `l ≤ 8`, plus the limits `(1,1,k,∞)` for `k ≤ 3`.
pub fn dagger_table() -> Vec<DaggerRow> {
    let beta = beta_star::<f64>();
    let mut rows = Vec::new();
    for i in 1..=8 {
        for j in i..=8 {
            for k in j..=8 {
                for l in k..=8 {
                    let g = dagger_g(i, j, k, l, beta).expect("valid dagger");
                    rows.push(DaggerRow {
                        i,
                        j,
                        k,
                        l: Some(l),
                        g,
                        g_admissible: g >= beta,
                        listed: dagger_admissible([i, j, k, l]),
                    });
                }
            }
        }
    }
    let hi = BetaParams::<f64>::star().fixed_hi;
    for k in 1..=3 {
        // arms 1, 1, k and an arm whose corner tends to the upper fixed point
        let g = dagger_g(1, 1, k, k, beta).unwrap() / crate::families::arm_corner::<f64>(k).unwrap() * hi;
        rows.push(DaggerRow { i: 1, j: 1, k, l: None, g, g_admissible: g >= beta, listed: true });
    }
    rows
}
