//! Larger exhaustive runs than the acceptance check uses.

use hyperspec::enumerate::verify_theorem;

#[test]
fn no_violations_up_to_the_enumeration_limits() {
    for (r, m) in [(3, 6), (4, 5)] {
        let (rep, rows) = verify_theorem(r, m, 1e-9).unwrap();
        println!(
            "r={r} m<={m}: {} checked, {} admissible irreducible {:?}, {} boundary, {} inconclusive",
            rep.checked, rep.admissible_irreducible, rep.admissible_categories, rep.boundary, rep.inconclusive
        );
        assert_eq!(rows.len(), rep.checked);
        assert!(rep.violations.is_empty(), "r={r}: {:?}", rep.violations);
        assert_eq!(rep.inconclusive, 0);
    }
}
