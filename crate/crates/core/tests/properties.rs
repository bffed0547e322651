use proptest::prelude::*;

use permpat::enumerator::{count_avoiders, enumerate_avoiders, insert_max};
use permpat::perm::{
    all_permutations, contains, is_order_isomorphic, standardize, standardize_letters,
};
use permpat::symmetry::{apply_set, orbit, Generator, SymmetryOp};
use permpat::{PatternSet, Permutation, Word};

fn permutation(max_len: usize) -> impl Strategy<Value = Permutation> {
    (0..=max_len)
        .prop_flat_map(|n| Just((1..=n as u32).collect::<Vec<_>>()).prop_shuffle())
        .prop_map(|v| Permutation::new(v).unwrap())
}

fn word(max_len: usize) -> impl Strategy<Value = Word> {
    prop::collection::btree_set(1u32..40, 0..=max_len)
        .prop_flat_map(|s| Just(s.into_iter().collect::<Vec<_>>()).prop_shuffle())
        .prop_map(|v| Word::new(v).unwrap())
}

fn pattern_set() -> impl Strategy<Value = PatternSet> {
    prop::collection::vec(
        prop_oneof![
            (2..=3usize).prop_flat_map(|k| Just((1..=k as u32).collect::<Vec<_>>()).prop_shuffle()),
            Just((1..=4u32).collect::<Vec<_>>()).prop_shuffle(),
        ],
        1..=4,
    )
    .prop_map(|ps| {
        ps.into_iter()
            .map(|v| Permutation::new(v).unwrap())
            .collect()
    })
}

proptest! {
    #[test]
    fn standardize_is_idempotent(w in word(9)) {
        let p = standardize(&w);
        prop_assert_eq!(standardize(&Word::from(p.clone())), p.clone());
        prop_assert!(is_order_isomorphic(&w, &p));
    }

    #[test]
    fn literals_round_trip(t in pattern_set()) {
        let again: PatternSet = t.to_string().parse().unwrap();
        prop_assert_eq!(again, t);
    }

    #[test]
    fn containment_is_transitive(pi in permutation(8), tau in permutation(5), sigma in permutation(3)) {
        if contains(&pi, &tau) && contains(&tau, &sigma) {
            prop_assert!(contains(&pi, &sigma));
        }
    }

    #[test]
    fn containment_depends_only_on_relative_order(w in word(8), tau in permutation(4)) {
        prop_assert_eq!(contains(&w, &tau), contains(&standardize(&w), &tau));
    }

    #[test]
    fn every_prefix_of_an_avoider_avoids(t in pattern_set(), n in 1usize..=7) {
        for p in enumerate_avoiders(n, &t) {
            for len in 1..n {
                let prefix = standardize_letters(&p.entries()[..len]).unwrap();
                prop_assert!(prefix.avoids_all(&t), "{} prefix of {}", prefix, p);
            }
        }
    }

    #[test]
    fn symmetry_preserves_counts(t in pattern_set(), steps in prop::collection::vec(any::<bool>(), 0..6)) {
        let mut op = SymmetryOp::identity();
        for s in steps {
            op = op.then(if s { Generator::Reverse } else { Generator::Inverse });
        }
        let image = apply_set(&op, &t);
        prop_assert!(orbit(&t).includes(&image));
        for n in 0..=7 {
            prop_assert_eq!(count_avoiders(n, &t), count_avoiders(n, &image));
        }
    }
}

#[test]
fn insert_max_preserves_containment() {
    let patterns: Vec<Permutation> = all_permutations(3).chain(all_permutations(4)).collect();
    for p in all_permutations(5) {
        for j in 1..=6 {
            let q = insert_max(&p, j).unwrap();
            for tau in &patterns {
                if contains(&p, tau) {
                    assert!(contains(&q, tau), "{q} lost {tau}");
                }
            }
        }
    }
}

#[test]
fn orbit_sizes_divide_eight() {
    let s3: Vec<Permutation> = all_permutations(3).collect();
    for mask in 1u32..64 {
        let t: PatternSet = (0..6)
            .filter(|i| mask >> i & 1 == 1)
            .map(|i| s3[i].clone())
            .collect();
        let o = orbit(&t);
        assert!([1, 2, 4, 8].contains(&o.size), "{t}: {}", o.size);
        assert_eq!(o.representative, o.members[0]);
    }
}
