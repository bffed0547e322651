//! Exhaustive generation of `S_n(T)` by backtracking with prefix pruning.
//!
//! Values are placed left to right, smallest first. A prefix is abandoned as
//! soon as it contains a forbidden pattern, since every extension would too.
//! After appending a letter only occurrences through that letter can be new,
//! so each pattern is re-checked with the last position pinned.

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::matcher::Matcher;
use crate::perm::{PatternSet, Permutation};

/// Below this length the top-level branches are explored sequentially.
const PARALLEL_FROM: usize = 8;

struct Pruner {
    matchers: Vec<Matcher>,
    forbids_everything: bool,
}

impl Pruner {
    fn new(t: &PatternSet) -> Self {
        Pruner {
            forbids_everything: t.iter().any(|p| p.is_empty()),
            matchers: t
                .iter()
                .filter(|p| !p.is_empty())
                .map(Matcher::new)
                .collect(),
        }
    }

    fn rejects_last(&self, prefix: &[u32], scratch: &mut Vec<usize>) -> bool {
        self.matchers
            .iter()
            .any(|m| m.pattern_len() <= prefix.len() && m.occurs_ending_at_last(prefix, scratch))
    }
}

struct Walk<'a, V> {
    pruner: &'a Pruner,
    n: usize,
    prefix: Vec<u32>,
    used: Vec<bool>,
    scratch: Vec<usize>,
    visit: V,
}

impl<V: FnMut(&[u32])> Walk<'_, V> {
    fn descend(&mut self) {
        if self.prefix.len() == self.n {
            (self.visit)(&self.prefix);
            return;
        }
        for v in 1..=self.n as u32 {
            if self.used[v as usize - 1] {
                continue;
            }
            self.prefix.push(v);
            if !self.pruner.rejects_last(&self.prefix, &mut self.scratch) {
                self.used[v as usize - 1] = true;
                self.descend();
                self.used[v as usize - 1] = false;
            }
            self.prefix.pop();
        }
    }
}

/// Walk every avoider of length `n` that starts with `first`, in lexicographic order.
fn walk_branch(pruner: &Pruner, n: usize, first: u32, visit: impl FnMut(&[u32])) {
    let mut walk = Walk {
        pruner,
        n,
        prefix: Vec::with_capacity(n),
        used: vec![false; n],
        scratch: Vec::new(),
        visit,
    };
    walk.prefix.push(first);
    if pruner.rejects_last(&walk.prefix, &mut walk.scratch) {
        return;
    }
    walk.used[first as usize - 1] = true;
    walk.descend();
}

/// All permutations of length `n` avoiding every pattern in `t`, in
/// lexicographic order.
pub fn enumerate_avoiders(n: usize, t: &PatternSet) -> Vec<Permutation> {
    let pruner = Pruner::new(t);
    if pruner.forbids_everything {
        return Vec::new();
    }
    if n == 0 {
        return vec![Permutation::empty()];
    }
    let branch = |first: u32| {
        let mut out = Vec::new();
        walk_branch(&pruner, n, first, |p| {
            out.push(Permutation::from_entries_unchecked(p.to_vec()))
        });
        out
    };
    if n >= PARALLEL_FROM {
        let parts: Vec<Vec<Permutation>> = (1..=n as u32).into_par_iter().map(branch).collect();
        parts.into_iter().flatten().collect()
    } else {
        (1..=n as u32).flat_map(branch).collect()
    }
}

/// `|S_n(T)|` without materializing the permutations.
pub fn count_avoiders(n: usize, t: &PatternSet) -> u64 {
    let pruner = Pruner::new(t);
    if pruner.forbids_everything {
        return 0;
    }
    if n == 0 {
        return 1;
    }
    let branch = |first: u32| {
        let mut count = 0u64;
        walk_branch(&pruner, n, first, |_| count += 1);
        count
    };
    if n >= PARALLEL_FROM {
        (1..=n as u32).into_par_iter().map(branch).sum()
    } else {
        (1..=n as u32).map(branch).sum()
    }
}

/// `|S_n(T)|` for `n = 0..=n_max`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CountTable {
    pub pattern_set: PatternSet,
    /// `counts[n] = |S_n(T)|`.
    pub counts: Vec<u64>,
}

impl CountTable {
    pub fn n_max(&self) -> usize {
        self.counts.len() - 1
    }

    pub fn get(&self, n: usize) -> Option<u64> {
        self.counts.get(n).copied()
    }
}

pub fn count_table(t: &PatternSet, n_max: usize) -> CountTable {
    CountTable {
        pattern_set: t.clone(),
        counts: (0..=n_max).map(|n| count_avoiders(n, t)).collect(),
    }
}

/// Insert the new maximum `n+1` so that it becomes entry `j` (1-based).
pub fn insert_max(p: &Permutation, j: usize) -> Result<Permutation> {
    let n = p.len();
    if !(1..=n + 1).contains(&j) {
        return Err(Error::invalid(format!(
            "insertion position {j} outside 1..={}",
            n + 1
        )));
    }
    let mut entries = p.entries().to_vec();
    entries.insert(j - 1, n as u32 + 1);
    Ok(Permutation::from_entries_unchecked(entries))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::{all_permutations, perm, pset};

    #[test]
    fn everything_forbidden() {
        assert!(enumerate_avoiders(3, &pset("123;132;213;231;312;321")).is_empty());
    }

    #[test]
    fn four_element_set_at_n4() {
        let got: Vec<String> = enumerate_avoiders(4, &pset("123;132;213;3421"))
            .iter()
            .map(|p| p.to_string())
            .collect();
        assert_eq!(got, ["3412", "4231", "4312", "4321"]);
    }

    #[test]
    fn catalan_at_five() {
        assert_eq!(enumerate_avoiders(5, &pset("132")).len(), 42);
    }

    #[test]
    fn count_examples() {
        assert_eq!(count_avoiders(6, &pset("123;321")), 0);
        assert_eq!(count_avoiders(4, &pset("123;132;3412")), 7);
        assert_eq!(count_avoiders(5, &pset("132;213;2341")), 12);
    }

    #[test]
    fn count_table_examples() {
        let t = count_table(&pset("123;132;3241"), 5);
        assert_eq!(t.get(4), Some(7));
        assert_eq!(t.get(5), Some(12));
        assert_eq!(count_table(&pset("123;312;1432"), 3).get(3), Some(4));
        assert_eq!(
            count_table(&PatternSet::new(), 4).counts,
            vec![1, 1, 2, 6, 24]
        );
    }

    #[test]
    fn empty_pattern_forbids_everything() {
        let t = PatternSet::new().with(Permutation::empty());
        assert_eq!(count_avoiders(0, &t), 0);
        assert_eq!(count_avoiders(3, &t), 0);
        assert_eq!(count_avoiders(0, &pset("1")), 1);
        assert_eq!(count_avoiders(2, &pset("1")), 0);
    }

    #[test]
    fn output_is_lexicographic_and_parallel_path_agrees() {
        let t = pset("231");
        let got = enumerate_avoiders(PARALLEL_FROM, &t);
        let mut sorted = got.clone();
        sorted.sort_by(|a, b| a.entries().cmp(b.entries()));
        assert_eq!(got, sorted);
        assert_eq!(got.len() as u64, count_avoiders(PARALLEL_FROM, &t));
        assert_eq!(got.len(), 1430);
    }

    #[test]
    fn insert_max_examples() {
        assert_eq!(insert_max(&perm("12"), 1).unwrap(), perm("312"));
        assert_eq!(insert_max(&perm("213"), 4).unwrap(), perm("2134"));
        assert!(insert_max(&perm("213"), 0).is_err());
        assert!(insert_max(&perm("213"), 5).is_err());
        assert_eq!(insert_max(&Permutation::empty(), 1).unwrap(), perm("1"));
    }

    #[test]
    fn insert_max_keeps_123_occurrences() {
        let q = perm("123");
        for p in all_permutations(5).filter(|p| p.contains(&q)) {
            for j in 1..=6 {
                assert!(insert_max(&p, j).unwrap().contains(&q));
            }
        }
    }
}
