//! Backtracking search for occurrences of a classical pattern.
//!
//! A pattern occurrence is grown one pattern entry at a time. Since the
//! entries already placed are order-isomorphic to the pattern prefix, a new
//! text value only has to sit strictly between the text values matched to its
//! two nearest neighbours in value among the earlier pattern entries.

use crate::perm::Permutation;

#[derive(Clone, Debug)]
pub struct Matcher {
    pattern: Vec<u32>,
    /// Earlier pattern index holding the largest smaller value.
    below: Vec<Option<usize>>,
    /// Earlier pattern index holding the smallest larger value.
    above: Vec<Option<usize>>,
}

impl Matcher {
    pub fn new(pattern: &Permutation) -> Self {
        let pattern = pattern.entries().to_vec();
        let mut below = Vec::with_capacity(pattern.len());
        let mut above = Vec::with_capacity(pattern.len());
        for (j, &v) in pattern.iter().enumerate() {
            let earlier = &pattern[..j];
            below.push(
                earlier
                    .iter()
                    .enumerate()
                    .filter(|&(_, &w)| w < v)
                    .max_by_key(|&(_, &w)| w)
                    .map(|(t, _)| t),
            );
            above.push(
                earlier
                    .iter()
                    .enumerate()
                    .filter(|&(_, &w)| w > v)
                    .min_by_key(|&(_, &w)| w)
                    .map(|(t, _)| t),
            );
        }
        Matcher {
            pattern,
            below,
            above,
        }
    }

    pub fn pattern_len(&self) -> usize {
        self.pattern.len()
    }

    /// Does the pattern occur anywhere in `text`?
    pub fn occurs_in(&self, text: &[u32]) -> bool {
        let mut scratch = Vec::with_capacity(self.pattern.len());
        self.search(text, false, &mut scratch)
    }

    /// Lexicographically least occurrence as 0-based text positions.
    pub fn first_occurrence(&self, text: &[u32]) -> Option<Vec<usize>> {
        let mut chosen = Vec::with_capacity(self.pattern.len());
        self.search(text, false, &mut chosen).then_some(chosen)
    }

    /// Does an occurrence exist whose last entry is the last letter of `text`?
    ///
    /// Used to test a freshly extended prefix: older letters were already
    /// checked, so only occurrences through the new letter are of interest.
    pub fn occurs_ending_at_last(&self, text: &[u32], scratch: &mut Vec<usize>) -> bool {
        self.search(text, true, scratch)
    }

    fn search(&self, text: &[u32], anchor_last: bool, chosen: &mut Vec<usize>) -> bool {
        chosen.clear();
        let k = self.pattern.len();
        if k == 0 {
            return true;
        }
        if k > text.len() {
            return false;
        }
        self.extend(text, anchor_last, chosen)
    }

    fn extend(&self, text: &[u32], anchor_last: bool, chosen: &mut Vec<usize>) -> bool {
        let k = self.pattern.len();
        let n = text.len();
        let j = chosen.len();
        if j == k {
            return true;
        }
        let start = chosen.last().map_or(0, |&i| i + 1);
        let end = n - (k - j);
        let (from, to) = if anchor_last && j == k - 1 {
            (n - 1, n - 1)
        } else {
            (start, end)
        };
        if from < start || from > to {
            return false;
        }
        // With the last letter pinned, every other entry must fall on the
        // correct side of it.
        let pinned = anchor_last.then(|| (text[n - 1], self.pattern[k - 1]));
        for i in from..=to {
            let v = text[i];
            if let Some((last_value, last_pattern)) = pinned {
                if j < k - 1 && ((self.pattern[j] < last_pattern) != (v < last_value)) {
                    continue;
                }
            }
            if let Some(t) = self.below[j] {
                if text[chosen[t]] >= v {
                    continue;
                }
            }
            if let Some(t) = self.above[j] {
                if text[chosen[t]] <= v {
                    continue;
                }
            }
            chosen.push(i);
            if self.extend(text, anchor_last, chosen) {
                return true;
            }
            chosen.pop();
        }
        false
    }
}
