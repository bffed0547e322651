use permpat::enumerator::{count_avoiders, enumerate_avoiders};
use permpat::formulas::binomial;
use permpat::nu::{containing_perms, is_redundant, nu, nu_power, words_isomorphic};
use permpat::perm::{all_permutations, contains, pset};
use permpat::PatternSet;

#[test]
fn word_count_is_binomial() {
    for k in 1..=4 {
        for tau in all_permutations(k) {
            for m in k..=8 {
                let words = words_isomorphic(&tau, m).unwrap();
                assert_eq!(
                    words.len() as i128,
                    binomial(m as i64, k as u32),
                    "{tau} over {m}"
                );
            }
        }
    }
}

#[test]
fn containing_perms_complements_avoiders() {
    for k in 1..=4 {
        for tau in all_permutations(k) {
            for m in k..=6 {
                let single = PatternSet::new().with(tau.clone());
                let avoiders: PatternSet = enumerate_avoiders(m, &single).into_iter().collect();
                let containing = containing_perms(&tau, m).unwrap();
                assert_eq!(
                    containing.len() + avoiders.len(),
                    (1..=m).product::<usize>()
                );
                assert!(containing.iter().all(|p| !avoiders.has(p)));
            }
        }
    }
}

#[test]
fn nu_square_keeps_avoiders_from_k_plus_three() {
    for t in ["123", "132;213", "123;321", "132;231;312"] {
        let t = pset(t);
        let twice = nu_power(&t, 2).unwrap();
        assert_eq!(twice, nu(&nu(&t).unwrap().image).unwrap().image);
        for n in 6..=8 {
            assert_eq!(
                enumerate_avoiders(n, &twice),
                enumerate_avoiders(n, &t),
                "{t} at {n}"
            );
        }
    }
}

#[test]
fn nu_rejects_mixed_lengths() {
    assert!(nu(&pset("12;123")).is_err());
}

#[test]
fn redundancy_matches_containment_for_pairs_of_lengths_2_and_3() {
    for alpha in all_permutations(2) {
        for tau in all_permutations(3) {
            let r = is_redundant(&alpha, &tau).unwrap();
            assert_eq!(r, contains(&tau, &alpha));
            let alone = PatternSet::new().with(alpha.clone());
            let pair = alone.clone().with(tau.clone());
            let same = (1..=7).all(|n| count_avoiders(n, &alone) == count_avoiders(n, &pair));
            assert_eq!(same, r, "{alpha},{tau}");
        }
    }
}
