//! The symmetry group generated by reversal and inverse, acting on pattern
//! sets, and its orbits (symmetry classes).

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt;

use serde::Serialize;

use crate::perm::{PatternSet, Permutation};

pub fn reverse(p: &Permutation) -> Permutation {
    let mut entries = p.entries().to_vec();
    entries.reverse();
    Permutation::from_entries_unchecked(entries)
}

pub fn inverse(p: &Permutation) -> Permutation {
    let mut entries = vec![0; p.len()];
    for (j, &v) in p.entries().iter().enumerate() {
        entries[v as usize - 1] = j as u32 + 1;
    }
    Permutation::from_entries_unchecked(entries)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Generator {
    Reverse,
    Inverse,
}

impl Generator {
    pub fn apply(self, p: &Permutation) -> Permutation {
        match self {
            Generator::Reverse => reverse(p),
            Generator::Inverse => inverse(p),
        }
    }
}

/// A composition of generators, applied left to right.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize)]
pub struct SymmetryOp {
    steps: Vec<Generator>,
}

impl SymmetryOp {
    pub fn identity() -> Self {
        SymmetryOp::default()
    }

    pub fn reverse() -> Self {
        SymmetryOp {
            steps: vec![Generator::Reverse],
        }
    }

    pub fn inverse() -> Self {
        SymmetryOp {
            steps: vec![Generator::Inverse],
        }
    }

    pub fn then(mut self, g: Generator) -> Self {
        self.steps.push(g);
        self
    }

    pub fn steps(&self) -> &[Generator] {
        &self.steps
    }

    pub fn apply(&self, p: &Permutation) -> Permutation {
        self.steps.iter().fold(p.clone(), |acc, g| g.apply(&acc))
    }
}

impl fmt::Display for SymmetryOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.steps.is_empty() {
            return f.write_str("id");
        }
        for g in &self.steps {
            f.write_str(match g {
                Generator::Reverse => "r",
                Generator::Inverse => "i",
            })?;
        }
        Ok(())
    }
}

pub fn apply_set(op: &SymmetryOp, t: &PatternSet) -> PatternSet {
    t.map(|p| op.apply(p))
}

/// One symmetry class of pattern sets.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SymmetryOrbit {
    /// Canonical minimum of the members.
    pub representative: PatternSet,
    pub size: usize,
    /// Sorted in canonical order.
    pub members: Vec<PatternSet>,
}

impl SymmetryOrbit {
    pub fn includes(&self, t: &PatternSet) -> bool {
        self.members.binary_search(t).is_ok()
    }
}

/// Breadth-first closure of `{t}` under elementwise reversal and inverse.
pub fn orbit(t: &PatternSet) -> SymmetryOrbit {
    let mut seen = BTreeSet::new();
    let mut queue = VecDeque::new();
    seen.insert(t.clone());
    queue.push_back(t.clone());
    while let Some(current) = queue.pop_front() {
        for g in [Generator::Reverse, Generator::Inverse] {
            let image = current.map(|p| g.apply(p));
            if seen.insert(image.clone()) {
                queue.push_back(image);
            }
        }
    }
    let members: Vec<PatternSet> = seen.into_iter().collect();
    SymmetryOrbit {
        representative: members[0].clone(),
        size: members.len(),
        members,
    }
}

/// Canonical representative of `t`'s symmetry class.
pub fn canonical(t: &PatternSet) -> PatternSet {
    orbit(t).representative
}

/// Group the inputs by symmetry class. Each returned orbit is complete (it
/// may include sets absent from the input when the input is not closed under
/// the group). Output is sorted by representative.
pub fn partition_into_classes<'a, I>(sets: I) -> Vec<SymmetryOrbit>
where
    I: IntoIterator<Item = &'a PatternSet>,
{
    let mut classes: BTreeMap<PatternSet, SymmetryOrbit> = BTreeMap::new();
    let mut placed: BTreeSet<PatternSet> = BTreeSet::new();
    for t in sets {
        if placed.contains(t) {
            continue;
        }
        let o = orbit(t);
        placed.extend(o.members.iter().cloned());
        classes.insert(o.representative.clone(), o);
    }
    classes.into_values().collect()
}
