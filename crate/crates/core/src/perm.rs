//! Permutations in one-line notation, words over distinct letters, pattern
//! sets, and classical pattern containment.
//!
//! Text forms: a permutation is written either compactly as digits (`3412`,
//! only when its length is at most 9) or with its entries separated by commas
//! or whitespace (`3 1 2`, `1,10,2,...`). The empty permutation is `()`.
//! A pattern set joins permutations with `;` (`123;3412`).

use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::matcher::Matcher;

/// A permutation of `1..=n` in one-line notation.
///
/// Ordered by length first, then lexicographically. That order is the one
/// used everywhere patterns are sorted.
#[derive(Clone, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(try_from = "Vec<u32>", into = "Vec<u32>")]
pub struct Permutation {
    entries: Vec<u32>,
}

impl Permutation {
    pub fn new(entries: Vec<u32>) -> Result<Self> {
        let n = entries.len();
        let mut seen = vec![false; n];
        for &v in &entries {
            let slot = (v as usize).checked_sub(1).filter(|&s| s < n);
            match slot {
                Some(s) if !seen[s] => seen[s] = true,
                _ => return Err(Error::NotAPermutation { len: n, entries }),
            }
        }
        Ok(Permutation { entries })
    }

    /// Caller guarantees `entries` is a bijection on `1..=n`.
    pub(crate) fn from_entries_unchecked(entries: Vec<u32>) -> Self {
        debug_assert!(Permutation::new(entries.clone()).is_ok());
        Permutation { entries }
    }

    pub fn empty() -> Self {
        Permutation::default()
    }

    pub fn identity(n: usize) -> Self {
        Permutation {
            entries: (1..=n as u32).collect(),
        }
    }

    pub fn decreasing(n: usize) -> Self {
        Permutation {
            entries: (1..=n as u32).rev().collect(),
        }
    }

    pub fn entries(&self) -> &[u32] {
        &self.entries
    }

    pub fn into_entries(self) -> Vec<u32> {
        self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn contains(&self, pattern: &Permutation) -> bool {
        contains(self, pattern)
    }

    pub fn avoids_all(&self, patterns: &PatternSet) -> bool {
        avoids_all(self, patterns)
    }
}

impl AsRef<[u32]> for Permutation {
    fn as_ref(&self) -> &[u32] {
        &self.entries
    }
}

impl TryFrom<Vec<u32>> for Permutation {
    type Error = Error;

    fn try_from(entries: Vec<u32>) -> Result<Self> {
        Permutation::new(entries)
    }
}

impl From<Permutation> for Vec<u32> {
    fn from(p: Permutation) -> Self {
        p.entries
    }
}

impl Ord for Permutation {
    fn cmp(&self, other: &Self) -> Ordering {
        self.len()
            .cmp(&other.len())
            .then_with(|| self.entries.cmp(&other.entries))
    }
}

impl PartialOrd for Permutation {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

fn write_letters(f: &mut fmt::Formatter<'_>, letters: &[u32]) -> fmt::Result {
    if letters.is_empty() {
        return f.write_str("()");
    }
    if letters.iter().all(|&v| (1..=9).contains(&v)) {
        for v in letters {
            write!(f, "{v}")?;
        }
        return Ok(());
    }
    for (i, v) in letters.iter().enumerate() {
        if i > 0 {
            f.write_str(",")?;
        }
        write!(f, "{v}")?;
    }
    Ok(())
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_letters(f, &self.entries)
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Permutation({self})")
    }
}

/// Letters of one permutation literal, with `offset` added to error positions.
fn parse_letters(s: &str, offset: usize) -> Result<Vec<u32>> {
    let trimmed_start = s.len() - s.trim_start().len();
    let body = s.trim();
    let offset = offset + trimmed_start;
    if body == "()" {
        return Ok(Vec::new());
    }
    if body.is_empty() {
        return Err(Error::parse(
            offset,
            "empty permutation literal (write `()`)",
        ));
    }
    let separated = body.contains(|c: char| c == ',' || c.is_whitespace());
    let mut letters = Vec::new();
    if separated {
        let mut pos = 0;
        for token in body.split(|c: char| c == ',' || c.is_whitespace()) {
            if !token.is_empty() {
                let value = token.parse::<u32>().map_err(|_| {
                    Error::parse(offset + pos, format!("`{token}` is not a positive integer"))
                })?;
                letters.push(value);
            }
            pos += token.len() + 1;
        }
    } else {
        for (pos, c) in body.char_indices() {
            match c.to_digit(10) {
                Some(d) => letters.push(d),
                None => {
                    return Err(Error::parse(
                        offset + pos,
                        format!("unexpected character `{c}`"),
                    ))
                }
            }
        }
    }
    Ok(letters)
}

fn parse_permutation_at(s: &str, offset: usize) -> Result<Permutation> {
    let letters = parse_letters(s, offset)?;
    Permutation::new(letters)
        .map_err(|e| Error::parse(offset + (s.len() - s.trim_start().len()), e.to_string()))
}

impl FromStr for Permutation {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        parse_permutation_at(s, 0)
    }
}

/// A sequence of pairwise distinct positive letters, e.g. a member of
/// `S_{b_1,...,b_n}` or a word order-isomorphic to some pattern.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize)]
#[serde(transparent)]
pub struct Word {
    letters: Vec<u32>,
}

impl Word {
    pub fn new(letters: Vec<u32>) -> Result<Self> {
        let mut sorted = letters.clone();
        sorted.sort_unstable();
        if let Some(w) = sorted.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::DuplicateLetter(w[0]));
        }
        Ok(Word { letters })
    }

    pub fn letters(&self) -> &[u32] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }
}

impl AsRef<[u32]> for Word {
    fn as_ref(&self) -> &[u32] {
        &self.letters
    }
}

impl From<Permutation> for Word {
    fn from(p: Permutation) -> Self {
        Word { letters: p.entries }
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_letters(f, &self.letters)
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Word({self})")
    }
}

impl FromStr for Word {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Word::new(parse_letters(s, 0)?)
    }
}

/// Replace each letter by its rank among the word's letters.
pub fn standardize(word: &Word) -> Permutation {
    standardize_letters(word.letters()).expect("word letters are distinct")
}

/// Like [`standardize`] for an unchecked slice; repeated letters are an error.
pub fn standardize_letters(letters: &[u32]) -> Result<Permutation> {
    let mut order: Vec<usize> = (0..letters.len()).collect();
    order.sort_unstable_by_key(|&i| letters[i]);
    let mut ranks = vec![0u32; letters.len()];
    for (rank, pair) in order.iter().enumerate() {
        if rank > 0 && letters[order[rank - 1]] == letters[*pair] {
            return Err(Error::DuplicateLetter(letters[*pair]));
        }
        ranks[*pair] = rank as u32 + 1;
    }
    Ok(Permutation::from_entries_unchecked(ranks))
}

/// Same length, and `a[i] < a[j]` exactly when `b[i] < b[j]`.
pub fn is_order_isomorphic<A, B>(a: &A, b: &B) -> bool
where
    A: AsRef<[u32]> + ?Sized,
    B: AsRef<[u32]> + ?Sized,
{
    let (a, b) = (a.as_ref(), b.as_ref());
    a.len() == b.len()
        && (0..a.len()).all(|i| (i + 1..a.len()).all(|j| (a[i] < a[j]) == (b[i] < b[j])))
}

/// True iff some subsequence of `text` is order-isomorphic to `pattern`.
/// Every text contains the empty pattern.
pub fn contains<T: AsRef<[u32]> + ?Sized>(text: &T, pattern: &Permutation) -> bool {
    Matcher::new(pattern).occurs_in(text.as_ref())
}

/// Lexicographically least occurrence of `pattern`, as 1-based positions.
pub fn find_occurrence<T: AsRef<[u32]> + ?Sized>(
    text: &T,
    pattern: &Permutation,
) -> Option<Vec<usize>> {
    Matcher::new(pattern)
        .first_occurrence(text.as_ref())
        .map(|positions| positions.into_iter().map(|i| i + 1).collect())
}

pub fn avoids_all<T: AsRef<[u32]> + ?Sized>(text: &T, patterns: &PatternSet) -> bool {
    patterns.iter().all(|q| !contains(text, q))
}

/// Lexicographic walk over all of `S_n`.
#[derive(Clone, Debug)]
pub struct AllPermutations {
    next: Option<Vec<u32>>,
}

impl Iterator for AllPermutations {
    type Item = Permutation;

    fn next(&mut self) -> Option<Permutation> {
        let current = self.next.take()?;
        let mut succ = current.clone();
        if next_permutation(&mut succ) {
            self.next = Some(succ);
        }
        Some(Permutation::from_entries_unchecked(current))
    }
}

pub fn all_permutations(n: usize) -> AllPermutations {
    AllPermutations {
        next: Some((1..=n as u32).collect()),
    }
}

fn next_permutation(v: &mut [u32]) -> bool {
    let Some(i) = (1..v.len()).rev().find(|&i| v[i - 1] < v[i]) else {
        return false;
    };
    let j = (i..v.len()).rev().find(|&j| v[j] > v[i - 1]).unwrap();
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

/// A finite set of forbidden patterns, possibly of mixed lengths.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct PatternSet {
    patterns: BTreeSet<Permutation>,
}

impl PatternSet {
    pub fn new() -> Self {
        PatternSet::default()
    }

    pub fn len(&self) -> usize {
        self.patterns.len()
    }

    pub fn is_empty(&self) -> bool {
        self.patterns.is_empty()
    }

    /// Patterns in canonical order (length, then lexicographic).
    pub fn iter(&self) -> impl DoubleEndedIterator<Item = &Permutation> + ExactSizeIterator {
        self.patterns.iter()
    }

    pub fn has(&self, pattern: &Permutation) -> bool {
        self.patterns.contains(pattern)
    }

    pub fn insert(&mut self, pattern: Permutation) -> bool {
        self.patterns.insert(pattern)
    }

    pub fn with(mut self, pattern: Permutation) -> Self {
        self.patterns.insert(pattern);
        self
    }

    pub fn union(&self, other: &PatternSet) -> PatternSet {
        self.patterns.union(&other.patterns).cloned().collect()
    }

    pub fn is_subset(&self, other: &PatternSet) -> bool {
        self.patterns.is_subset(&other.patterns)
    }

    /// Common length of all patterns, or `None` when empty or mixed.
    pub fn uniform_len(&self) -> Option<usize> {
        let first = self.patterns.first()?.len();
        self.patterns
            .iter()
            .all(|p| p.len() == first)
            .then_some(first)
    }

    /// Patterns of exactly the given length.
    pub fn of_len(&self, len: usize) -> PatternSet {
        self.patterns
            .iter()
            .filter(|p| p.len() == len)
            .cloned()
            .collect()
    }

    pub fn map(&self, f: impl Fn(&Permutation) -> Permutation) -> PatternSet {
        self.patterns.iter().map(f).collect()
    }
}

impl FromIterator<Permutation> for PatternSet {
    fn from_iter<I: IntoIterator<Item = Permutation>>(iter: I) -> Self {
        PatternSet {
            patterns: iter.into_iter().collect(),
        }
    }
}

impl IntoIterator for PatternSet {
    type Item = Permutation;
    type IntoIter = std::collections::btree_set::IntoIter<Permutation>;

    fn into_iter(self) -> Self::IntoIter {
        self.patterns.into_iter()
    }
}

impl<'a> IntoIterator for &'a PatternSet {
    type Item = &'a Permutation;
    type IntoIter = std::collections::btree_set::Iter<'a, Permutation>;

    fn into_iter(self) -> Self::IntoIter {
        self.patterns.iter()
    }
}

/// Canonical order on pattern sets: cardinality, then the sorted pattern lists
/// compared lexicographically.
impl Ord for PatternSet {
    fn cmp(&self, other: &Self) -> Ordering {
        self.len()
            .cmp(&other.len())
            .then_with(|| self.patterns.iter().cmp(other.patterns.iter()))
    }
}

impl PartialOrd for PatternSet {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for PatternSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, p) in self.patterns.iter().enumerate() {
            if i > 0 {
                f.write_str(";")?;
            }
            write!(f, "{p}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for PatternSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{self}}}")
    }
}

/// `;` separates patterns. Without a `;`, a comma or space separated literal
/// is first read as one permutation; if that fails and every token is a
/// compact pattern, the tokens are read as a list of patterns instead
/// (`123,132,213,3421`).
impl FromStr for PatternSet {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        if s.trim().is_empty() {
            return Ok(PatternSet::new());
        }
        if s.contains(';') {
            let mut set = PatternSet::new();
            let mut offset = 0;
            for token in s.split(';') {
                set.insert(parse_permutation_at(token, offset)?);
                offset += token.len() + 1;
            }
            return Ok(set);
        }
        let single = parse_permutation_at(s, 0);
        let separated = s.trim().contains(|c: char| c == ',' || c.is_whitespace());
        match single {
            Ok(p) => Ok(PatternSet::new().with(p)),
            Err(e) if separated => {
                let mut set = PatternSet::new();
                let mut offset = 0;
                for token in s.split(|c: char| c == ',' || c.is_whitespace()) {
                    if !token.is_empty() {
                        if !token.chars().all(|c| c.is_ascii_digit()) {
                            return Err(e);
                        }
                        set.insert(parse_permutation_at(token, offset)?);
                    }
                    offset += token.len() + 1;
                }
                Ok(set)
            }
            Err(e) => Err(e),
        }
    }
}

impl Serialize for PatternSet {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for PatternSet {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Shorthand for literals in tests and tables. Panics on malformed input.
pub fn perm(s: &str) -> Permutation {
    s.parse()
        .unwrap_or_else(|e| panic!("bad permutation literal {s:?}: {e}"))
}

/// Shorthand for pattern-set literals. Panics on malformed input.
pub fn pset(s: &str) -> PatternSet {
    s.parse()
        .unwrap_or_else(|e| panic!("bad pattern set literal {s:?}: {e}"))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn word(letters: &[u32]) -> Word {
        Word::new(letters.to_vec()).unwrap()
    }

    #[test]
    fn rejects_non_bijections() {
        assert!(Permutation::new(vec![1, 3]).is_err());
        assert!(Permutation::new(vec![2, 2, 1]).is_err());
        assert!(Permutation::new(vec![0, 1]).is_err());
        assert!(Permutation::new(vec![]).is_ok());
    }

    #[test]
    fn standardize_examples() {
        assert_eq!(standardize(&word(&[50, 20, 70])), perm("213"));
        assert_eq!(standardize(&word(&[1, 2, 3, 4, 5])), perm("12345"));
        // ranks of 6,1,9,4 among {1,4,6,9}
        assert_eq!(standardize(&word(&[6, 1, 9, 4])), perm("3142"));
    }

    #[test]
    fn duplicate_letters_rejected() {
        assert_eq!(Word::new(vec![3, 1, 3]), Err(Error::DuplicateLetter(3)));
        assert_eq!(standardize_letters(&[2, 2]), Err(Error::DuplicateLetter(2)));
    }

    #[test]
    fn order_isomorphism_examples() {
        assert!(is_order_isomorphic(&word(&[1, 3, 2]), &word(&[1, 4, 2])));
        assert!(!is_order_isomorphic(&word(&[1, 3, 2]), &word(&[2, 3, 1])));
        assert!(is_order_isomorphic(&word(&[1, 4, 2]), &perm("132")));
        assert!(!is_order_isomorphic(&word(&[1, 2]), &perm("123")));
    }

    #[test]
    fn containment_examples() {
        assert!(contains(&perm("1234"), &perm("123")));
        for n in 0..8 {
            assert!(!contains(&Permutation::decreasing(n), &perm("12")));
        }
        assert!(contains(&perm("()"), &Permutation::empty()));
        assert!(!contains(&Permutation::empty(), &perm("1")));
    }

    #[test]
    fn each_s3_pattern_in_ten_of_s4() {
        for q in all_permutations(3) {
            let hits = all_permutations(4).filter(|p| p.contains(&q)).count();
            assert_eq!(hits, 10, "pattern {q}");
        }
    }

    #[test]
    fn occurrence_examples() {
        assert_eq!(
            find_occurrence(&perm("2413"), &perm("12")),
            Some(vec![1, 2])
        );
        assert_eq!(find_occurrence(&perm("321"), &perm("12")), None);
        assert_eq!(
            find_occurrence(&perm("1423"), &perm("132")),
            Some(vec![1, 2, 3])
        );
    }

    #[test]
    fn avoidance_examples() {
        assert!(avoids_all(&perm("213"), &pset("123")));
        assert!(!avoids_all(&perm("123"), &pset("123;321")));
        let catalan4 = all_permutations(4)
            .filter(|p| p.avoids_all(&pset("132")))
            .count();
        assert_eq!(catalan4, 14);
    }

    #[test]
    fn all_permutations_is_lexicographic() {
        let s3: Vec<String> = all_permutations(3).map(|p| p.to_string()).collect();
        assert_eq!(s3, ["123", "132", "213", "231", "312", "321"]);
        assert_eq!(all_permutations(0).count(), 1);
        assert_eq!(all_permutations(6).count(), 720);
    }

    #[test]
    fn literal_forms() {
        assert_eq!(perm("3 1 2"), perm("312"));
        assert_eq!(perm("3,1,2"), perm("312"));
        let long = Permutation::identity(10);
        assert_eq!(long.to_string(), "1,2,3,4,5,6,7,8,9,10");
        assert_eq!(long.to_string().parse::<Permutation>().unwrap(), long);
        assert_eq!(pset("123;3412").len(), 2);
        assert_eq!(pset("123,132,213,3421"), pset("123;132;213;3421"));
        assert_eq!(pset("1,2,3"), pset("123"));
        assert_eq!(pset("3412;123").to_string(), "123;3412");
        assert!(pset("").is_empty());
    }

    #[test]
    fn parse_errors_carry_positions() {
        match "123;1x3".parse::<PatternSet>() {
            Err(Error::Parse { position, .. }) => assert_eq!(position, 5),
            other => panic!("unexpected {other:?}"),
        }
        match "12;113".parse::<PatternSet>() {
            Err(Error::Parse { position, .. }) => assert_eq!(position, 3),
            other => panic!("unexpected {other:?}"),
        }
        assert!("".parse::<Permutation>().is_err());
    }

    #[test]
    fn canonical_order() {
        assert!(perm("321") < perm("1234"));
        assert!(perm("132") < perm("213"));
        assert!(pset("321") < pset("123;132"));
        assert!(pset("123;4321") < pset("132;1234"));
    }

    #[test]
    fn serde_forms() {
        let set = pset("123;3412");
        let json = serde_json::to_string(&set).unwrap();
        assert_eq!(json, "\"123;3412\"");
        assert_eq!(serde_json::from_str::<PatternSet>(&json).unwrap(), set);
        assert_eq!(serde_json::to_string(&perm("312")).unwrap(), "[3,1,2]");
        assert!(serde_json::from_str::<Permutation>("[1,1]").is_err());
    }
}
