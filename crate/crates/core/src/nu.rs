//! Words order-isomorphic to a pattern, the permutations containing a
//! pattern, and the ν map lifting a set of length-k patterns to the
//! length-(k+1) patterns that contain one of them.
//!
//! For `n >= k + 2`, avoiding `ν(T)` is the same as avoiding `T`; iterating
//! `p` times keeps that identity for `n >= k + p + 1`.

use std::collections::BTreeSet;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::perm::{all_permutations, contains, PatternSet, Permutation, Word};

/// All length-`length` words over `[bound]` order-isomorphic to one pattern.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WordSet {
    pub length: usize,
    pub bound: usize,
    pub words: BTreeSet<Word>,
}

impl WordSet {
    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }
}

/// `ν(source)` together with its source.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NuImage {
    pub source: PatternSet,
    pub image: PatternSet,
}

/// Every word with distinct letters from `1..=m` whose standardization is
/// `tau`: pick the `k` letters, then lay them out in `tau`'s order.
pub fn words_isomorphic(tau: &Permutation, m: usize) -> Result<WordSet> {
    let k = tau.len();
    if m < k {
        return Err(Error::invalid(format!(
            "alphabet bound {m} is smaller than pattern length {k}"
        )));
    }
    let mut words = BTreeSet::new();
    for_each_subset(m, k, |letters| {
        let word = tau
            .entries()
            .iter()
            .map(|&r| letters[r as usize - 1])
            .collect();
        words.insert(Word::new(word).expect("chosen letters are distinct"));
    });
    Ok(WordSet {
        length: k,
        bound: m,
        words,
    })
}

/// Visit each increasing `k`-subset of `1..=m`.
fn for_each_subset(m: usize, k: usize, mut visit: impl FnMut(&[u32])) {
    let mut chosen: Vec<u32> = (1..=k as u32).collect();
    loop {
        visit(&chosen);
        // advance the rightmost slot that still has room
        let Some(i) = (0..k).rev().find(|&i| chosen[i] < (m - k + i + 1) as u32) else {
            return;
        };
        chosen[i] += 1;
        for j in i + 1..k {
            chosen[j] = chosen[j - 1] + 1;
        }
    }
}

/// The permutations of length `m` that contain `tau`.
pub fn containing_perms(tau: &Permutation, m: usize) -> Result<PatternSet> {
    if m < tau.len() {
        return Err(Error::invalid(format!(
            "length {m} is smaller than pattern length {}",
            tau.len()
        )));
    }
    Ok(all_permutations(m).filter(|p| contains(p, tau)).collect())
}

fn uniform_len(t: &PatternSet) -> Result<Option<usize>> {
    if t.is_empty() {
        return Ok(None);
    }
    t.uniform_len()
        .map(Some)
        .ok_or_else(|| Error::invalid(format!("patterns of mixed lengths in {{{t}}}")))
}

pub fn nu(t: &PatternSet) -> Result<NuImage> {
    let image = match uniform_len(t)? {
        None => PatternSet::new(),
        Some(k) => {
            let mut image = PatternSet::new();
            for tau in t {
                for p in containing_perms(tau, k + 1)? {
                    image.insert(p);
                }
            }
            image
        }
    };
    Ok(NuImage {
        source: t.clone(),
        image,
    })
}

/// `ν` applied `p >= 1` times.
pub fn nu_power(t: &PatternSet, p: usize) -> Result<PatternSet> {
    if p == 0 {
        return Err(Error::invalid("nu power must be at least 1"));
    }
    uniform_len(t)?;
    let mut current = t.clone();
    for _ in 0..p {
        current = nu(&current)?.image;
    }
    Ok(current)
}

/// Whether adding the longer pattern `tau` to `{alpha}` leaves every
/// avoidance class unchanged, i.e. whether `tau` contains `alpha`.
pub fn is_redundant(alpha: &Permutation, tau: &Permutation) -> Result<bool> {
    if alpha.len() >= tau.len() {
        return Err(Error::invalid(format!("expected |{alpha}| < |{tau}|")));
    }
    Ok(contains(tau, alpha))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::{perm, pset};

    fn words(set: &WordSet) -> Vec<String> {
        set.words.iter().map(|w| w.to_string()).collect()
    }

    #[test]
    fn a_132_over_4() {
        let a = words_isomorphic(&perm("132"), 4).unwrap();
        assert_eq!(words(&a), ["132", "142", "143", "243"]);
    }

    #[test]
    fn bound_equal_to_length_gives_pattern() {
        for tau in all_permutations(4) {
            let a = words_isomorphic(&tau, 4).unwrap();
            assert_eq!(
                a.words.into_iter().collect::<Vec<_>>(),
                vec![Word::from(tau)]
            );
        }
    }

    #[test]
    fn binomial_size() {
        assert_eq!(words_isomorphic(&perm("213"), 5).unwrap().len(), 10);
        assert!(words_isomorphic(&perm("213"), 2).is_err());
    }

    #[test]
    fn v_132_over_4() {
        let v = containing_perms(&perm("132"), 4).unwrap();
        let expected = pset("1324;1342;1432;4132;1423;3142;1243;2143;2431;2413");
        assert_eq!(v, expected);
        assert!(containing_perms(&perm("132"), 2).is_err());
    }

    #[test]
    fn nu_examples() {
        assert_eq!(nu(&pset("132")).unwrap().image.len(), 10);
        assert!(nu(&PatternSet::new()).unwrap().image.is_empty());
        assert!(nu(&pset("12;123")).is_err());
        // 123 and 321 never share a permutation of length 4 (that would need
        // 5 entries), so the two images are disjoint
        assert_eq!(nu(&pset("123;321")).unwrap().image.len(), 20);
    }

    #[test]
    fn nu_power_examples() {
        assert_eq!(
            nu_power(&pset("132"), 1).unwrap(),
            nu(&pset("132")).unwrap().image
        );
        assert!(nu_power(&pset("132"), 0).is_err());
        let twice = nu_power(&pset("123"), 2).unwrap();
        let direct: PatternSet = all_permutations(5)
            .filter(|p| p.contains(&perm("123")))
            .collect();
        assert_eq!(twice, direct);
        assert!(twice.iter().all(|p| p.len() == 5));
    }

    #[test]
    fn redundancy_examples() {
        assert!(is_redundant(&perm("123"), &perm("1234")).unwrap());
        assert!(!is_redundant(&perm("132"), &perm("4321")).unwrap());
        assert!(is_redundant(&perm("1234"), &perm("123")).is_err());
    }
}
