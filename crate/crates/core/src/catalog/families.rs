//! Avoider sets given as explicit listings, parameterized by `n`.
//!
//! `members` is the listing the oracle agrees with. `claimed` is kept only
//! where the published listing differs, so the difference can be reported.

use std::collections::BTreeSet;

use crate::perm::{PatternSet, Permutation};

pub type Listing = fn(u32) -> Vec<Vec<u32>>;

pub struct ExplicitFamily {
    pub id: &'static str,
    pub pattern_set: &'static str,
    pub valid_from: u32,
    pub members: Listing,
    pub claimed: Option<Listing>,
}

impl ExplicitFamily {
    pub fn set(&self) -> PatternSet {
        self.pattern_set
            .parse()
            .expect("family literals are well formed")
    }

    pub fn members(&self, n: usize) -> BTreeSet<Permutation> {
        to_perms((self.members)(n as u32))
    }

    /// The claimed listing at `n`, or `None` where it agrees with `members`.
    pub fn claimed(&self, n: usize) -> Option<BTreeSet<Permutation>> {
        self.claimed.map(|listing| to_perms(listing(n as u32)))
    }
}

fn to_perms(listing: Vec<Vec<u32>>) -> BTreeSet<Permutation> {
    listing
        .into_iter()
        .map(|e| Permutation::new(e).expect("family members are permutations"))
        .collect()
}

/// `a, a-1, ..., b`; empty when `a < b`.
fn down(a: u32, b: u32) -> Vec<u32> {
    if a < b {
        Vec::new()
    } else {
        (b..=a).rev().collect()
    }
}

/// `a, a+1, ..., b`; empty when `a > b`.
fn up(a: u32, b: u32) -> Vec<u32> {
    (a..=b).collect()
}

fn cat(parts: &[&[u32]]) -> Vec<u32> {
    parts.concat()
}

fn decreasing(n: u32) -> Vec<u32> {
    down(n, 1)
}

fn increasing(n: u32) -> Vec<u32> {
    up(1, n)
}

// (n, ..., 3, 1, 2)
fn tail_12(n: u32) -> Vec<u32> {
    cat(&[&down(n, 3), &[1, 2]])
}

// (n-1, ..., 1, n)
fn max_last(n: u32) -> Vec<u32> {
    cat(&[&down(n - 1, 1), &[n]])
}

// (n, 1, ..., n-1)
fn max_first_then_up(n: u32) -> Vec<u32> {
    cat(&[&[n], &up(1, n - 1)])
}

pub static FAMILIES: &[ExplicitFamily] = &[
    ExplicitFamily {
        id: "three-123-132-231-3214",
        pattern_set: "123;132;231;3214",
        valid_from: 3,
        members: |n| vec![cat(&[&down(n, 4), &[2, 1, 3]]), tail_12(n), decreasing(n)],
        claimed: None,
    },
    ExplicitFamily {
        id: "three-123-132-231-4312",
        pattern_set: "123;132;231;4312",
        valid_from: 3,
        members: |n| {
            vec![
                max_last(n),
                cat(&[&[n], &down(n - 2, 1), &[n - 1]]),
                decreasing(n),
            ]
        },
        claimed: None,
    },
    ExplicitFamily {
        id: "three-123-132-231-4213",
        pattern_set: "123;132;231;4213",
        valid_from: 3,
        members: |n| vec![max_last(n), tail_12(n), decreasing(n)],
        claimed: None,
    },
    ExplicitFamily {
        id: "three-123-231-312-1432",
        pattern_set: "123;231;312;1432",
        valid_from: 3,
        members: |n| {
            vec![
                cat(&[&down(n - 2, 1), &[n, n - 1]]),
                max_last(n),
                decreasing(n),
            ]
        },
        claimed: None,
    },
    ExplicitFamily {
        id: "three-123-231-312-2143",
        pattern_set: "123;231;312;2143",
        valid_from: 3,
        members: |n| vec![cat(&[&[1], &down(n, 2)]), max_last(n), decreasing(n)],
        claimed: Some(|n| vec![cat(&[&[2, 1], &down(n, 3)]), max_last(n), decreasing(n)]),
    },
    ExplicitFamily {
        id: "three-132-213-231-1234",
        pattern_set: "132;213;231;1234",
        valid_from: 3,
        members: |n| vec![cat(&[&down(n, 4), &[1, 2, 3]]), tail_12(n), decreasing(n)],
        claimed: None,
    },
    ExplicitFamily {
        id: "three-132-213-231-4123",
        pattern_set: "132;213;231;4123",
        valid_from: 3,
        members: |n| vec![increasing(n), tail_12(n), decreasing(n)],
        claimed: None,
    },
    ExplicitFamily {
        id: "three-132-213-231-4312",
        pattern_set: "132;213;231;4312",
        valid_from: 3,
        members: |n| vec![increasing(n), max_first_then_up(n), decreasing(n)],
        claimed: None,
    },
    ExplicitFamily {
        id: "three-132-213-231-4321",
        pattern_set: "132;213;231;4321",
        valid_from: 3,
        members: |n| {
            vec![
                increasing(n),
                max_first_then_up(n),
                cat(&[&[n, n - 1], &up(1, n - 2)]),
            ]
        },
        claimed: None,
    },
    ExplicitFamily {
        id: "four-123-132-213-3421",
        pattern_set: "123;132;213;3421",
        valid_from: 4,
        members: |n| {
            vec![
                cat(&[&down(n, 5), &[3, 4, 1, 2]]),
                cat(&[&down(n, 4), &[2, 3, 1]]),
                tail_12(n),
                decreasing(n),
            ]
        },
        // the second entry is claimed as (n-1, n, n-1, ..., 1, 2), which
        // repeats n-1; read here as (n-1, n, n-2, ..., 3, 1, 2)
        claimed: Some(|n| {
            vec![
                cat(&[&[n - 1, n], &down(n - 2, 1)]),
                cat(&[&[n - 1, n], &down(n - 2, 3), &[1, 2]]),
                tail_12(n),
                decreasing(n),
            ]
        }),
    },
    ExplicitFamily {
        id: "four-123-132-213-4231",
        pattern_set: "123;132;213;4231",
        valid_from: 4,
        members: |n| {
            vec![
                cat(&[&[n - 1, n], &down(n - 2, 1)]),
                cat(&[&[n - 1, n], &down(n - 2, 3), &[1, 2]]),
                tail_12(n),
                decreasing(n),
            ]
        },
        claimed: Some(|n| {
            vec![
                cat(&[&down(n, 5), &[3, 4, 1, 2]]),
                cat(&[&down(n, 4), &[2, 3, 1]]),
                tail_12(n),
                decreasing(n),
            ]
        }),
    },
    ExplicitFamily {
        id: "one-123-132-213-231-4312",
        pattern_set: "123;132;213;231;4312",
        valid_from: 4,
        members: |n| vec![decreasing(n)],
        claimed: None,
    },
    ExplicitFamily {
        id: "one-123-132-231-312-3214",
        pattern_set: "123;132;231;312;3214",
        valid_from: 4,
        members: |n| vec![decreasing(n)],
        claimed: None,
    },
    ExplicitFamily {
        id: "one-132-213-231-312-1234",
        pattern_set: "132;213;231;312;1234",
        valid_from: 4,
        members: |n| vec![decreasing(n)],
        claimed: None,
    },
];

pub fn by_id(id: &str) -> Option<&'static ExplicitFamily> {
    FAMILIES.iter().find(|f| f.id == id)
}
