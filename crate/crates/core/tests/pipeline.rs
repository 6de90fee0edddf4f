use halfgap_core::exact::{exact_distance, exact_distance_cand};
use halfgap_core::geometry::disagreement;
use halfgap_core::ksum::{gen_instance, shuffled, solve_brute, solve_mitm};
use halfgap_core::reduction::{build_reduction, verify_gap, Side, DEFAULT_GAP_CAP};
use halfgap_core::{io, reduction};
use num_bigint::BigInt;
use proptest::prelude::*;

fn side_of(found: bool) -> Side {
    if found {
        Side::Yes
    } else {
        Side::No
    }
}

#[test]
fn reduced_side_matches_solver() {
    for seed in 0..12u64 {
        for planted in [true, false] {
            let inst = gen_instance::<i128>(2, 3, planted, seed).unwrap();
            let expected = side_of(solve_brute(&inst).unwrap().is_some());
            assert_eq!(expected, side_of(planted));
            let red = build_reduction(&inst).unwrap();
            let gap = verify_gap(&red, DEFAULT_GAP_CAP).unwrap();
            assert_eq!(gap.side, expected, "seed {seed}");
            assert_eq!(disagreement(&red.dataset, &gap.report.witness).unwrap(), gap.exact);
        }
    }
}

#[test]
fn scalars_agree_on_the_reduction() {
    let small = gen_instance::<i64>(2, 3, true, 5).unwrap();
    let wide = gen_instance::<i128>(2, 3, true, 5).unwrap();
    let big = gen_instance::<BigInt>(2, 3, true, 5).unwrap();
    let a = exact_distance(&build_reduction(&small).unwrap().dataset).unwrap().distance;
    let b = exact_distance(&build_reduction(&wide).unwrap().dataset).unwrap().distance;
    let c = exact_distance(&build_reduction(&big).unwrap().dataset).unwrap().distance;
    assert_eq!(a.to_string(), b.to_string());
    assert_eq!(b.to_string(), c.to_string());
}

#[test]
fn reduced_json_survives_a_round_trip() {
    let inst = gen_instance::<i128>(2, 3, false, 8).unwrap();
    let red = build_reduction(&inst).unwrap();
    let text = io::to_json(&io::ReducedJson::from_instance(&red)).unwrap();
    let back = io::from_json::<io::ReducedJson>(&text).unwrap().to_instance().unwrap();
    assert_eq!(back, red);
    assert_eq!(back.source().unwrap(), inst);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn shuffling_keeps_the_answer(seed in any::<u64>(), planted in any::<bool>()) {
        let inst = gen_instance::<i128>(3, 3, planted, seed).unwrap();
        let mixed = shuffled(&inst, seed ^ 1);
        prop_assert_eq!(solve_mitm(&inst).unwrap().is_some(), solve_mitm(&mixed).unwrap().is_some());
        prop_assert!(mixed.check_range().is_ok());
    }

    #[test]
    fn auto_matches_candidates_on_reductions(seed in any::<u64>()) {
        let inst = gen_instance::<i128>(1, 3, seed % 2 == 0, seed).unwrap();
        let red = reduction::build_reduction(&inst).unwrap();
        let auto = exact_distance(&red.dataset).unwrap();
        let cand = exact_distance_cand(&red.dataset).unwrap();
        prop_assert_eq!(auto.distance, cand.distance);
    }
}
