use hexarep::fgeom::{find_isomorphism, is_line_preserving, PartialLinearSpace};
use hexarep::gmodels::{build_duad_q52, build_quadric_q52, canonical_spread};
use hexarep::triples::{
    coordinatize_ag23, equivalence_search, spread_linear_space, verify_admissible,
    AdmissibleTriple,
};
use proptest::prelude::*;

fn canonical_triple() -> AdmissibleTriple {
    let q = build_duad_q52();
    let s = canonical_spread(&q).unwrap();
    let ls = spread_linear_space(&q, &s).unwrap();
    let c = coordinatize_ag23(&ls, 0).unwrap();
    AdmissibleTriple::from_coords(ls, c)
}

fn relabel(space: &PartialLinearSpace, perm: &[usize]) -> PartialLinearSpace {
    let lines = space.lines().iter().map(|l| l.map(|p| perm[p])).collect();
    PartialLinearSpace::new("relabelled", (0..perm.len()).map(|i| i.to_string()).collect(), lines)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn shifted_triples_stay_admissible_and_equivalent(f0 in prop::collection::vec(0u8..3, 9)) {
        let t = canonical_triple();
        let shifted = t.shifted(&f0);
        prop_assert!(verify_admissible(&shifted).passed());
        let eq = equivalence_search(&t, &shifted).unwrap().unwrap();
        prop_assert!(eq.holds(&t, &shifted));
    }

    #[test]
    fn scaled_triples_are_equivalent(f0 in prop::collection::vec(0u8..3, 9)) {
        let t = canonical_triple();
        let neg = AdmissibleTriple::from_table(
            t.base.clone(),
            t.shifted(&f0).theta.iter().map(|r| r.iter().map(|&x| (3 - x) % 3).collect()).collect(),
        );
        let eq = equivalence_search(&t, &neg).unwrap().unwrap();
        prop_assert!(eq.holds(&t, &neg));
    }

    #[test]
    fn single_entry_mutations_break_admissibility(a in 0usize..9, b in 0usize..9, d in 1u8..3) {
        let mut t = canonical_triple();
        t.theta[a][b] = (t.theta[a][b] + d) % 3;
        prop_assert!(!verify_admissible(&t).passed());
    }

    #[test]
    fn relabelled_quadric_is_found(perm in Just((0..27).collect::<Vec<usize>>()).prop_shuffle()) {
        let q = build_quadric_q52().space;
        let r = relabel(&q, &perm);
        let iso = find_isomorphism(&q, &r).unwrap();
        prop_assert!(is_line_preserving(&q, &r, &iso));
    }
}
