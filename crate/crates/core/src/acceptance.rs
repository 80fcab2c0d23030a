//! The acceptance checks, shared by the test suite and the `verify-paper`
//! command. Each returns an [`Outcome`] with a one-line detail.

use crate::beta::{dagger_g, solve_beta_f3, BetaParams};
use crate::classify::dagger_table;
use crate::enumerate::verify_theorem;
use crate::families::{
    build, certificate_for, pendant_rule_bounds, FamilySpec, Forbidden, PartialFamily, SmithKind,
};
use crate::hypergraph::Hypergraph;
use crate::labeling::{check, check_consistent, CertificateKind, Mode};
use crate::random;
use crate::scalar::beta_star;
use crate::spectral::{alpha_from_rho, eigenvector_to_labeling, power_run, rho_hypertree, rho_power, thresholds, SpectralResult};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use std::time::Instant;

#[derive(Clone, Debug, Serialize)]
pub struct Outcome {
    pub id: usize,
    pub title: &'static str,
    pub passed: bool,
    pub detail: String,
    pub seconds: f64,
}

pub const TITLES: [&str; 11] = [
    "exact values",
    "cross-solver agreement",
    "Smith graphs",
    "Brouwer-Neumaier band",
    "certificate anchors",
    "dagger table",
    "F-limit",
    "five-uniform and beyond",
    "brute-force theorem check",
    "eigenvector bridge",
    "monotonicity",
];

type Check = std::result::Result<String, String>;

fn fam(spec: FamilySpec) -> Hypergraph {
    build(&spec).expect("family builds").into_hypergraph()
}

fn power(h: &Hypergraph, tol: f64) -> Result<SpectralResult<f64>, String> {
    rho_power(h, tol, 1_000_000).map_err(|e| e.to_string())
}

fn tree(h: &Hypergraph, tol: f64) -> Result<SpectralResult<f64>, String> {
    rho_hypertree(h, tol).map_err(|e| e.to_string())
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within_time(start: Instant, limit: f64) -> Result<(), String> {
    let s = start.elapsed().as_secs_f64();
    ensure(s < limit, || format!("took {s:.1} s, limit {limit} s"))
}

fn c1() -> Check {
    let start = Instant::now();
    let target = 2.0 * 4f64.powf(1.0 / 3.0);
    let mut cases = vec![("C2", fam(FamilySpec::C2 { r: 3 })), ("S4", fam(FamilySpec::Star { r: 3, k: 4 }))];
    for n in 3..=8 {
        cases.push(("C_n", fam(FamilySpec::Cycle { r: 3, n })));
    }
    let mut worst: f64 = 0.0;
    for (name, h) in &cases {
        let res = power(h, 1e-10)?;
        let err = (res.rho - target).abs();
        ensure(err <= 1e-8, || format!("{name} (m={}): rho = {} differs from 2*4^(1/3) by {err:e}", h.m(), res.rho))?;
        worst = worst.max(err);
    }
    within_time(start, 5.0)?;
    Ok(format!("{} instances, max error {worst:.1e}", cases.len()))
}

fn c2() -> Check {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let mut worst: f64 = 0.0;
    for i in 0..50 {
        let r = 2 + i % 3;
        let m = 1 + (i * 7) % 12;
        let h = random::hypertree(&mut rng, r, m);
        let p = power(&h, 1e-11)?;
        let t = tree(&h, 1e-12)?;
        let d = (p.rho - t.rho).abs();
        ensure(d <= 1e-8, || format!("r={r} m={m}: power {} vs tree {}", p.rho, t.rho))?;
        worst = worst.max(d);
    }
    within_time(start, 30.0)?;
    Ok(format!("50 hypertrees, max |power - tree| = {worst:.1e}"))
}

fn c3() -> Check {
    let mut count = 0;
    let mut closest: f64 = 0.0;
    let mut below = |h: Hypergraph, name: String| -> Result<(), String> {
        let t = tree(&h, 1e-12)?;
        ensure(t.upper < 2.0, || format!("{name}: rho bracket [{}, {}] not below 2", t.lower, t.upper))?;
        closest = closest.max(t.upper);
        count += 1;
        Ok(())
    };
    for n in 2..=40 {
        below(fam(FamilySpec::Smith { kind: SmithKind::A, n }), format!("A_{n}"))?;
    }
    for n in 4..=40 {
        below(fam(FamilySpec::Smith { kind: SmithKind::D, n }), format!("D_{n}"))?;
    }
    for k in [SmithKind::E6, SmithKind::E7, SmithKind::E8] {
        below(fam(FamilySpec::Smith { kind: k, n: 0 }), format!("{k:?}"))?;
    }
    let mut worst: f64 = 0.0;
    for n in 3..=40 {
        let p = power(&fam(FamilySpec::Cycle { r: 2, n }), 1e-11)?;
        let e = (p.rho - 2.0).abs();
        ensure(e <= 1e-9, || format!("C_{n}: rho = {}", p.rho))?;
        worst = worst.max(e);
    }
    Ok(format!("{count} Smith trees below 2 (max upper {closest:.6}); cycles C_3..C_40 at 2 within {worst:.1e}"))
}

fn c4() -> Check {
    let rp = (2.0 + 5f64.sqrt()).sqrt();
    let sep = 1e-6;
    let mut min_gap = f64::INFINITY;
    for c in 3..=20 {
        let t = tree(&fam(FamilySpec::GraphE22c { c }), 1e-12)?;
        ensure(t.lower > 2.0 + sep && t.upper < rp - sep, || {
            format!("E(2,2,{c}): bracket [{}, {}] not inside (2, {rp})", t.lower, t.upper)
        })?;
        min_gap = min_gap.min(t.lower - 2.0).min(rp - t.upper);
    }
    for n in 3..=12 {
        let h = build(&FamilySpec::Forbidden(Forbidden::CnPlus3 { n })).unwrap().into_hypergraph();
        let g = h.reduce().map_err(|e| e.to_string())?;
        let p = power_run(&g, 1e-12, 1_000_000).map_err(|e| e.to_string())?.result;
        ensure(p.lower > rp + sep, || format!("C_{n}+ graph: lower bracket {} not above {rp}", p.lower))?;
        min_gap = min_gap.min(p.lower - rp);
    }
    Ok(format!("E(2,2,3..20) inside the band, C_n+ (n=3..12) above it; smallest separation {min_gap:.2e}"))
}

/// `(label, reference value, recomputed value)`.
pub fn anchors() -> Vec<(&'static str, f64, f64)> {
    let b = beta_star::<f64>();
    let hi = BetaParams::<f64>::star().fixed_hi;
    let cert = |s: FamilySpec| certificate_for::<f64>(&s).expect("catalog certificate");
    let f = FamilySpec::Forbidden;
    let [(p1, _), (p2, _)] = pendant_rule_bounds::<f64>();
    vec![
        ("S5_3 centre sum 5b", 1.1803, cert(f(Forbidden::S5_3)).vertex_sums()[0]),
        ("S4+ centre sum", 1.0172, cert(f(Forbidden::S4Plus3)).vertex_sums()[0]),
        ("C2+ sum at b", 1.2361, cert(f(Forbidden::C2Plus3)).vertex_sums()[1]),
        ("C'2+ sum at a", 1.0418, cert(f(Forbidden::C2PrimePlus3)).vertex_sums()[0]),
        ("4-uniform cycle bound", 0.2229, hi * hi * (1.0 - b).powi(2)),
        ("arms (2,2,1) bound", 0.2254, p1),
        ("arms (1,1,4) bound", 0.2314, p2),
        ("S'5 centre product", 0.1242, cert(f(Forbidden::S5Prime5)).edge_products()[0]),
        ("S5+ reference (1-2b)(1-b)^4", 0.1798, (1.0 - 2.0 * b) * (1.0 - b).powi(4)),
    ]
}

/// Catalog certificates with their expected kind and strictness.
pub fn certificate_catalog() -> Vec<(FamilySpec, CertificateKind, bool)> {
    use CertificateKind::*;
    let f = FamilySpec::Forbidden;
    let mut v = vec![
        (f(Forbidden::S5_3), Supernormal, true),
        (f(Forbidden::S4Plus3), Supernormal, true),
        (f(Forbidden::C2Plus3), Supernormal, true),
        (f(Forbidden::C2PrimePlus3), Supernormal, true),
        (f(Forbidden::S5Prime5), Supernormal, true),
        (f(Forbidden::S5Plus5), Supernormal, true),
    ];
    for (r, s) in [(4, 3), (5, 3), (5, 4), (6, 5)] {
        v.push((f(Forbidden::CsPlus { r, s }), Supernormal, true));
    }
    for n in 3..=7 {
        v.push((f(Forbidden::CnPlus3 { n }), Supernormal, true));
        v.push((f(Forbidden::C4NPlus { n }), Supernormal, true));
        for m in 0..=3 {
            v.push((f(Forbidden::CPrimeNPlus3 { n, m }), Supernormal, true));
            v.push((f(Forbidden::CDoublePrimeNPlus3 { n, m }), Supernormal, true));
            v.push((f(Forbidden::CPrime4NPlus { n, m }), Supernormal, true));
        }
    }
    for (m1, m2, m3) in [(1, 1, 1), (1, 2, 3), (2, 3, 4), (3, 3, 3)] {
        v.push((FamilySpec::Theta { m1, m2, m3 }, Supernormal, true));
    }
    for n in 0..=4 {
        v.push((f(Forbidden::H1_3 { n }), RootedNormal, false));
        v.push((f(Forbidden::H2_3 { n }), RootedNormal, false));
        v.push((f(Forbidden::H1_4 { n }), RootedNormal, false));
        for j in 0..=3 {
            v.push((f(Forbidden::H2_4 { n, j }), RootedNormal, false));
        }
    }
    for (i, j, k, l) in [(2, 2, 2, 2), (1, 2, 2, 4), (1, 2, 3, 3), (1, 1, 4, 6)] {
        v.push((FamilySpec::Dagger4 { i, j, k, l }, Supernormal, true));
    }
    for r in 6..=12 {
        v.push((f(Forbidden::SrR { r }), Supernormal, true));
    }
    for m in 1..=3 {
        v.push((FamilySpec::Partial(PartialFamily::G1_3 { m, k1: 6, k2: 6 }), PartialSubnormal, true));
        v.push((FamilySpec::Partial(PartialFamily::G2_2 { m, k: 6 }), PartialSubnormal, true));
        v.push((FamilySpec::Partial(PartialFamily::G3_4 { t: m, k: 10 }), PartialSubnormal, true));
    }
    v
}

fn c5() -> Check {
    let mut worst: f64 = 0.0;
    for (label, reference, value) in anchors() {
        let d = (value - reference).abs();
        ensure(d <= 1e-3, || format!("{label}: recomputed {value:.6} vs reference {reference}"))?;
        worst = worst.max(d);
    }
    let catalog = certificate_catalog();
    for (spec, kind, strict) in &catalog {
        let c = certificate_for::<f64>(spec).map_err(|e| format!("{spec:?}: {e}"))?;
        let v = c.verify(1e-9).map_err(|e| e.to_string())?;
        ensure(c.kind == *kind && v.holds && v.strict == *strict, || {
            format!("{spec:?}: kind {} holds {} strict {}", c.kind.as_str(), v.holds, v.strict)
        })?;
        ensure(c.consistent != Some(false), || format!("{spec:?}: inconsistent labeling"))?;
    }
    let b = beta_star::<f64>();
    let s5plus = certificate_for::<f64>(&FamilySpec::Forbidden(Forbidden::S5Plus5)).unwrap().edge_products()[0];
    Ok(format!(
        "9 anchors within {worst:.1e}; {} certificates verified (S5+ labeling product is {s5plus:.5} < beta = {b:.5})",
        catalog.len()
    ))
}

fn c6() -> Check {
    let start = Instant::now();
    let (_, rp) = thresholds::<f64>(4);
    let mut min_sep = f64::INFINITY;
    let rows = dagger_table();
    for row in &rows {
        ensure(row.g_admissible == row.listed, || format!("{row:?}: g verdict differs from the list"))?;
        let Some(l) = row.l else { continue };
        let h = fam(FamilySpec::Dagger4 { i: row.i, j: row.j, k: row.k, l });
        let t = tree(&h, 1e-12)?;
        let below = t.upper < rp - 1e-6;
        let above = t.lower > rp + 1e-6;
        ensure(below || above, || format!("{row:?}: bracket [{}, {}] too close to rho'_4", t.lower, t.upper))?;
        ensure(below == row.listed, || format!("{row:?}: rho {} disagrees with the list", t.rho))?;
        min_sep = min_sep.min((t.rho - rp).abs());
    }
    within_time(start, 60.0)?;
    let g = dagger_g(1, 1, 4, 5, beta_star::<f64>()).unwrap();
    Ok(format!(
        "{} rows match; min |rho - rho'_4| = {min_sep:.2e}; g(1,1,4,5) - beta = {:.2e}",
        rows.len(),
        g - beta_star::<f64>()
    ))
}

fn c7() -> Check {
    let (_, limit) = thresholds::<f64>(3);
    let mut prev = 0.0;
    let mut gaps = vec![0.0; 31];
    for m in 1..=30 {
        let t = tree(&fam(FamilySpec::F3 { m, n: m, k: m }), 1e-12)?;
        ensure(t.lower > prev, || format!("rho(F_{m}) = {} not above the previous {prev}", t.rho))?;
        ensure(t.upper < limit, || format!("rho(F_{m}) = {} reaches the limit", t.rho))?;
        let (_, rho_b) = solve_beta_f3::<f64>(m, m, m).map_err(|e| e.to_string())?;
        ensure((rho_b - t.rho).abs() < 1e-8, || format!("F_{m}: bisection {} vs beta_mnk {rho_b}", t.rho))?;
        prev = t.upper;
        gaps[m] = limit - t.rho;
    }
    ensure(gaps[30] < 1e-2, || format!("gap at m=30 is {}", gaps[30]))?;
    ensure(gaps[30] < gaps[15], || "gap does not shrink from m=15 to m=30".into())?;
    for a in 1..=8 {
        for b in 1..=8 {
            for c in 1..=8 {
                let v = solve_beta_f3::<f64>(a, b, c).unwrap().0;
                for (x, y, z) in [(a + 1, b, c), (a, b + 1, c), (a, b, c + 1)] {
                    let w = solve_beta_f3::<f64>(x, y, z).unwrap().0;
                    ensure(w < v, || format!("beta({x},{y},{z}) = {w} not below beta({a},{b},{c}) = {v}"))?;
                }
            }
        }
    }
    Ok(format!("increasing to within {:.2e} (m=30) vs {:.2e} (m=15); beta_mnk decreasing on 1..8", gaps[30], gaps[15]))
}

fn c8() -> Check {
    let b = beta_star::<f64>();
    let (_, rp) = thresholds::<f64>(5);
    let es = tree(&fam(FamilySpec::EdgeStar { r: 5 }), 1e-12)?;
    ensure(es.upper <= rp, || format!("edge-star rho {} above rho'_5", es.rho))?;
    let p5 = (1.0 - b).powi(5);
    ensure((p5 - 0.2602).abs() < 1e-3 && p5 > b, || format!("(1-b)^5 = {p5}"))?;
    let sprime = fam(FamilySpec::Forbidden(Forbidden::S5Prime5));
    let sp = power(&sprime, 1e-10)?;
    ensure(sp.lower > rp, || format!("S'5 rho {} not above rho'_5", sp.rho))?;
    let splus = tree(&fam(FamilySpec::Forbidden(Forbidden::S5Plus5)), 1e-12)?;
    ensure(splus.lower > rp, || format!("S5+ rho {} not above rho'_5", splus.rho))?;
    for r in 6..=12 {
        ensure((1.0 - b).powi(r as i32) < b, || format!("(1-b)^{r} >= beta"))?;
    }
    Ok(format!(
        "edge-star {:.6} <= {rp:.6}; S'5 {:.6}, S5+ {:.6} above; (1-b)^r < b for r=6..12",
        es.rho, sp.rho, splus.rho
    ))
}

fn c9() -> Check {
    let start = Instant::now();
    let mut parts = vec![];
    for (r, m) in [(3, 4), (4, 4), (5, 3)] {
        let (rep, _) = verify_theorem(r, m, 1e-9).map_err(|e| e.to_string())?;
        ensure(rep.violations.is_empty(), || format!("r={r} m<={m}: violations {:?}", rep.violations))?;
        parts.push(format!(
            "r={r} m<={m}: {} checked, {} admissible irreducible {:?}, {} boundary, {} inconclusive",
            rep.checked, rep.admissible_irreducible, rep.admissible_categories, rep.boundary, rep.inconclusive
        ));
    }
    within_time(start, 600.0)?;
    Ok(parts.join("; "))
}

fn c10() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    let mut worst: f64 = 0.0;
    for i in 0..20 {
        let r = 2 + i % 3;
        let h = random::connected(&mut rng, r, 4 + i % 5, 1 + i % 3);
        let run = power_run(&h, 1e-12, 1_000_000).map_err(|e| e.to_string())?;
        let rho = run.result.rho;
        let w = eigenvector_to_labeling(&h, &run.vector, rho).map_err(|e| e.to_string())?;
        let alpha = alpha_from_rho(r, rho);
        let v = check(&h, &w, alpha, Mode::Normal, 1e-7).map_err(|e| e.to_string())?;
        let consistent = check_consistent(&h, &w, 1e-7).map_err(|e| e.to_string())?;
        ensure(v.holds && consistent, || format!("instance {i}: normal {} consistent {consistent}", v.holds))?;
        worst = worst.max(-v.worst_vertex_slack).max(-v.worst_edge_slack);
    }
    Ok(format!("20 instances normal and consistent; max deviation {worst:.1e}"))
}

fn rho_any(h: &Hypergraph) -> Result<SpectralResult<f64>, String> {
    if h.is_hypertree() {
        tree(h, 1e-12)
    } else {
        power(h, 1e-11)
    }
}

fn c11() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let mut min_sep = f64::INFINITY;
    let mut worst_ext: f64 = 0.0;
    for i in 0..30 {
        let r = 2 + i % 3;
        let h = random::connected(&mut rng, r, 3 + i % 5, i % 3);
        let sub = random::drop_removable_edge(&h).ok_or("no removable edge")?;
        let (rh, rs) = (rho_any(&h)?, rho_any(&sub)?);
        let sep = rh.lower - rs.upper;
        ensure(sep >= 1e-7, || format!("instance {i}: rho {} vs subgraph {} (separation {sep:e})", rh.rho, rs.rho))?;
        min_sep = min_sep.min(sep);
        // extension keeps alpha
        let ext = h.extend();
        let re = rho_any(&ext)?;
        let d = (alpha_from_rho(r + 1, re.rho) - alpha_from_rho(r, rh.rho)).abs();
        ensure(d <= 1e-7, || format!("instance {i}: alpha changes by {d:e} under extension"))?;
        worst_ext = worst_ext.max(d);
    }
    Ok(format!("30 instances; min subgraph separation {min_sep:.2e}; max alpha drift under extension {worst_ext:.1e}"))
}

/// Run one criterion (1-based).
pub fn run(id: usize) -> Outcome {
    let start = Instant::now();
    let f: fn() -> Check = match id {
        1 => c1,
        2 => c2,
        3 => c3,
        4 => c4,
        5 => c5,
        6 => c6,
        7 => c7,
        8 => c8,
        9 => c9,
        10 => c10,
        11 => c11,
        _ => panic!("no criterion {id}"),
    };
    let res = f();
    let (passed, detail) = match res {
        Ok(d) => (true, d),
        Err(d) => (false, d),
    };
    Outcome { id, title: TITLES[id - 1], passed, detail, seconds: start.elapsed().as_secs_f64() }
}

pub fn run_all() -> Vec<Outcome> {
    (1..=11).map(run).collect()
}

impl std::fmt::Display for Outcome {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "[{}] {:>2} {:<26} {:>7.2}s  {}",
            if self.passed { "PASS" } else { "FAIL" },
            self.id,
            self.title,
            self.seconds,
            self.detail
        )
    }
}
