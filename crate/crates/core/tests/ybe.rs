mod common;

use std::collections::BTreeSet;

use common::{
    brute_force_size_four, keys, perms, size_five_representatives, size_four_representatives,
    solution,
};
use skewbrace::perm::Perm;
use skewbrace::ybe::{
    are_permutation_isoclinic, classify_solutions, enumerate_involutive, enumerate_involutive_with,
    permutation_brace, validate_solution, SearchOrder, Solution, YbeError,
};

#[test]
fn size_four_matches_unpruned_brute_force() {
    let found = brute_force_size_four();
    let enumerated = enumerate_involutive(4).unwrap();
    assert_eq!(found.len(), enumerated.len());
    assert_eq!(found, keys(&enumerated, &perms(4)));
}

#[test]
fn size_five_agrees_across_search_orders() {
    let all = perms(5);
    let forward = enumerate_involutive_with(5, SearchOrder::Propagating).unwrap();
    let backward = enumerate_involutive_with(5, SearchOrder::ReverseChecking).unwrap();
    assert_eq!(forward.len(), backward.len());
    assert_eq!(keys(&forward, &all), keys(&backward, &all));
    assert_eq!(
        keys(&forward, &all).len(),
        forward.len(),
        "enumeration returned relabeled duplicates"
    );
}

#[test]
fn enumerated_solutions_are_valid_and_involutive() {
    for n in 1..=4 {
        for s in enumerate_involutive(n).unwrap() {
            assert!(s.is_involutive());
            let again = validate_solution(s.sigma().to_vec(), s.tau().to_vec()).unwrap();
            assert_eq!(again, s);
        }
    }
}

#[test]
fn validation_examples() {
    let flip = Solution::flip(3);
    assert!(flip.is_involutive());
    let two = &size_four_representatives()[1];
    assert!(two.is_involutive());
    let s = Perm::parse_cycles(2, "(1 2)").unwrap();
    let id = Perm::identity(2);
    assert!(matches!(
        validate_solution(vec![s, id.clone()], vec![id.clone(), id]),
        Err(YbeError::BraidFails(..))
    ));
}

#[test]
fn retraction_examples() {
    let (ret, _) = Solution::flip(4).retraction().unwrap();
    assert_eq!(ret.size(), 1);
    let level_two = solution("s4=(2 3)");
    let (ret, classes) = level_two.retraction().unwrap();
    assert_eq!(ret.size(), 2);
    assert_eq!(classes.iter().collect::<BTreeSet<_>>().len(), 2);
    assert_eq!(level_two.multipermutation_level(), Some(2));
    let (ret, classes) = size_four_representatives()[1].retraction().unwrap();
    assert_eq!(ret.size(), 3);
    assert_eq!(classes[0], classes[1]);
    assert_eq!(
        size_four_representatives()[3].multipermutation_level(),
        None
    );
    assert_eq!(Solution::flip(5).multipermutation_level(), Some(1));
}

#[test]
fn permutation_group_examples() {
    assert_eq!(Solution::flip(4).permutation_group().order(), 1);
    let cyclic =
        Solution::permutation_solution(&Perm::parse_cycles(4, "(1 2 3 4)").unwrap()).unwrap();
    assert_eq!(cyclic.permutation_group().order(), 4);
    assert_eq!(solution("s4=(2 3)").permutation_group().order(), 2);
    let b = permutation_brace(&size_four_representatives()[1]).unwrap();
    assert_eq!(b.order(), 4);
    assert!(!b.is_trivial() && b.right_series().reaches_zero());
}

/// Multipermutation exactly when the permutation brace is right nilpotent
/// of nilpotent type.
#[test]
fn multipermutation_matches_right_nilpotency() {
    for n in 1..=5 {
        for s in enumerate_involutive(n).unwrap() {
            let b = permutation_brace(&s).unwrap();
            assert_eq!(
                s.multipermutation_level().is_some(),
                b.is_right_nilpotent() && b.is_nilpotent_type(),
                "{s}"
            );
        }
    }
}

#[test]
fn retraction_lowers_the_level_by_one() {
    for n in 2..=5 {
        for s in enumerate_involutive(n).unwrap() {
            if let Some(m) = s.multipermutation_level().filter(|&m| m >= 2) {
                let (ret, _) = s.retraction().unwrap();
                assert_eq!(ret.multipermutation_level(), Some(m - 1), "{s}");
            }
        }
    }
}

#[test]
fn listed_representatives_are_pairwise_distinct() {
    for reps in [size_four_representatives(), size_five_representatives()] {
        for (i, a) in reps.iter().enumerate() {
            for b in &reps[i + 1..] {
                assert!(
                    are_permutation_isoclinic(a, b).unwrap().is_none(),
                    "{a} ~ {b}"
                );
            }
        }
    }
}

#[test]
fn size_four_classes() {
    let all = enumerate_involutive(4).unwrap();
    let classes = classify_solutions(&all).unwrap();
    assert_eq!(classes.len(), 4);
    let reps = size_four_representatives();
    let hit: BTreeSet<_> = reps
        .iter()
        .map(|r| {
            classes.iter().position(|c| {
                are_permutation_isoclinic(&all[c.representative], r)
                    .unwrap()
                    .is_some()
            })
        })
        .collect();
    assert_eq!(hit.len(), 4);
    assert!(!hit.contains(&None));
}

#[test]
fn cyclic_solution_is_indecomposable_but_isoclinic_to_the_flip() {
    let cyclic =
        Solution::permutation_solution(&Perm::parse_cycles(4, "(1 2 3 4)").unwrap()).unwrap();
    assert!(cyclic.is_indecomposable());
    assert!(!Solution::flip(4).is_indecomposable());
    assert!(are_permutation_isoclinic(&cyclic, &Solution::flip(4))
        .unwrap()
        .is_some());
}

#[test]
fn json_round_trip() {
    for s in size_five_representatives() {
        let text = serde_json::to_string(&s.to_json()).unwrap();
        let back = Solution::from_json(&serde_json::from_str(&text).unwrap()).unwrap();
        assert_eq!(back, s);
    }
}
