use hyperspec::classify::{admissibility, structure_report, Admissibility};
use hyperspec::enumerate::canonical_form;
use hyperspec::families::{build, FamilySpec};
use hyperspec::random;
use hyperspec::spectral::{alpha_from_rho, rho_hypertree, rho_power};
use hyperspec::Hypergraph;
use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn rho(h: &Hypergraph) -> (f64, f64) {
    let res = if h.is_hypertree() {
        rho_hypertree::<f64>(h, 1e-12).unwrap()
    } else {
        rho_power::<f64>(h, 1e-11, 1_000_000).unwrap()
    };
    (res.lower, res.upper)
}

fn permuted(h: &Hypergraph, rng: &mut ChaCha8Rng) -> Hypergraph {
    let mut p: Vec<usize> = (0..h.n()).collect();
    p.shuffle(rng);
    let mut edges: Vec<Vec<usize>> = h.edges().iter().map(|e| e.iter().map(|&v| p[v]).collect()).collect();
    edges.shuffle(rng);
    Hypergraph::new(h.r(), h.n(), edges).unwrap()
}

fn family(spec: FamilySpec) -> Hypergraph {
    build(&spec).unwrap().into_hypergraph()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn extend_then_reduce_is_identity(seed: u64, r in 2usize..6, m in 1usize..7, extra in 0usize..3) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let h = random::connected(&mut rng, r, m, extra);
        let back = h.extend().reduce().unwrap();
        prop_assert_eq!(canonical_form(&back).unwrap(), canonical_form(&h).unwrap());
    }

    #[test]
    fn hypertrees_are_simple(seed: u64, r in 2usize..6, m in 1usize..10) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let h = random::hypertree(&mut rng, r, m);
        prop_assert!(h.is_hypertree());
        prop_assert!(h.is_simple());
        prop_assert_eq!(h.cycle_rank(), 0);
    }

    #[test]
    fn families_commute_with_extension(r in 2usize..6, n in 3usize..8, k in 1usize..6) {
        let pairs = [
            (FamilySpec::Path { r, n }, FamilySpec::Path { r: r + 1, n }),
            (FamilySpec::Cycle { r, n }, FamilySpec::Cycle { r: r + 1, n }),
            (FamilySpec::Star { r, k }, FamilySpec::Star { r: r + 1, k }),
        ];
        for (a, b) in pairs {
            let ext = family(a).extend();
            prop_assert_eq!(canonical_form(&ext).unwrap(), canonical_form(&family(b)).unwrap());
        }
    }

    #[test]
    fn alpha_survives_extension(seed: u64, r in 2usize..4, m in 2usize..6) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let h = random::hypertree(&mut rng, r, m);
        let a = alpha_from_rho(r, rho_hypertree::<f64>(&h, 1e-13).unwrap().rho);
        let b = alpha_from_rho(r + 1, rho_hypertree::<f64>(&h.extend(), 1e-13).unwrap().rho);
        prop_assert!((a - b).abs() < 1e-9, "alpha {a} vs {b}");
    }

    #[test]
    fn removing_an_edge_lowers_rho(seed: u64, r in 2usize..5, m in 2usize..8, extra in 0usize..3) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let h = random::connected(&mut rng, r, m, extra);
        let sub = random::drop_removable_edge(&h).unwrap();
        let (lo, _) = rho(&h);
        let (_, hi) = rho(&sub);
        prop_assert!(lo > hi, "rho(H) >= {lo}, rho(H - e) <= {hi}");
    }

    #[test]
    fn identifying_vertices_raises_rho(seed: u64, r in 2usize..5, m in 2usize..7) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let h = random::hypertree(&mut rng, r, m);
        let (u, v) = (0, h.n() - 1);
        if let Ok(q) = h.identify_vertices(u, v) {
            let (_, hi) = rho(&h);
            let (lo, _) = rho(&q);
            prop_assert!(lo > hi, "quotient {lo} vs {hi}");
        }
    }

    #[test]
    fn classification_ignores_labels(seed: u64, r in 3usize..5, m in 1usize..8, extra in 0usize..2) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let h = random::connected(&mut rng, r, m, extra);
        let p = permuted(&h, &mut rng);
        let (a, b) = (structure_report(&h), structure_report(&p));
        prop_assert_eq!(a.terminal().category, b.terminal().category);
        prop_assert_eq!(a.reduction_steps, b.reduction_steps);
        let (ra, rb) = (rho(&h), rho(&p));
        prop_assert!((ra.0 - rb.0).abs() < 1e-8);
    }

    /// Every 3-uniform hypertree below the threshold is one of the allowed
    /// shapes, judged against an independent ρ bracket.
    #[test]
    fn admissible_three_uniform_trees_conform(seed: u64, m in 1usize..10) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let h = random::hypertree(&mut rng, 3, m);
        let rep = admissibility(&h, 1e-9).unwrap();
        prop_assert_ne!(rep.verdict, Admissibility::TheoremViolation);
        let p = rho_power::<f64>(&h, 1e-11, 1_000_000).unwrap();
        let rp = rep.rho_prime;
        if p.upper < rp - 1e-8 {
            prop_assert!(rep.structure.conforms(), "{:?}", h.edges());
        }
    }
}
