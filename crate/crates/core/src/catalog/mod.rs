//! The enumeration tables as data: which sets `T ∪ {τ}` (with `T ⊆ S_3`,
//! `τ ∈ S_4`) each row covers, the formula it claims, and from which `n`.
//!
//! A row is a list of clauses. A clause either names a symmetry class by one
//! representative, or states a predicate on the split `(T, τ)`. Each clause
//! carries its own threshold, because a row can mix claims that start at
//! different lengths.

pub mod families;
mod findings;
mod tables;
mod verify;

use std::collections::{BTreeMap, BTreeSet};
use std::sync::OnceLock;

use serde::Serialize;

use crate::enumerator::{count_table, CountTable};
use crate::error::{Error, Result};
use crate::formulas::CountFormula;
use crate::perm::{all_permutations, PatternSet, Permutation};
use crate::symmetry::orbit;

pub use findings::{FindingResult, FindingStatus};
pub use verify::{
    verify, Calibration, Conjecture, Coverage, ExplicitCheck, GridRow, PairResult, RowReport,
    SizeAudit, Summary, TableReport, UncoveredPair, Verdict, VerdictCounts, VerificationReport,
};

/// Condition on the length-3 part `T`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", content = "value", rename_all = "snake_case")]
pub enum SetCondition {
    Size(usize),
    Includes(PatternSet),
    Excludes(Permutation),
    /// `T` does not contain the whole given set.
    NotSuperset(PatternSet),
    /// `T` is in the symmetry class of one of these sets.
    InClassOf(Vec<PatternSet>),
}

/// Condition on the length-4 pattern `τ`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", content = "value", rename_all = "snake_case")]
pub enum PatternCondition {
    Any,
    Equals(Permutation),
    NotEquals(Permutation),
    ContainsMemberOfT,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Clause {
    /// The whole set lies in the symmetry class of `representative`.
    Class { representative: PatternSet },
    Split {
        t: Vec<SetCondition>,
        tau: PatternCondition,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RowClause {
    #[serde(flatten)]
    pub clause: Clause,
    pub valid_from: u32,
}

/// One table row.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CatalogEntry {
    pub table: u8,
    /// 1-based position within the table.
    pub row: usize,
    pub label: String,
    /// The representatives and conditions as the table prints them.
    pub stated: &'static str,
    pub claimed_formula: &'static str,
    pub claimed_class_size: usize,
    pub formula: CountFormula,
    pub clauses: Vec<RowClause>,
    pub basis: &'static str,
}

impl CatalogEntry {
    pub fn valid_from(&self) -> u32 {
        self.clauses.iter().map(|c| c.valid_from).min().unwrap_or(1)
    }

    pub fn representatives(&self) -> Vec<PatternSet> {
        self.clauses
            .iter()
            .filter_map(|c| match &c.clause {
                Clause::Class { representative } => Some(representative.clone()),
                Clause::Split { .. } => None,
            })
            .collect()
    }
}

/// `(T, τ)` for a set with exactly one length-4 pattern and the rest of
/// length 3.
pub fn split(set: &PatternSet) -> Option<(PatternSet, Permutation)> {
    let mut tau = None;
    let mut t = PatternSet::new();
    for p in set {
        match p.len() {
            3 => {
                t.insert(p.clone());
            }
            4 if tau.is_none() => tau = Some(p.clone()),
            _ => return None,
        }
    }
    Some((t, tau?))
}

/// Which table a set belongs to, by the size of its length-3 part.
pub fn table_of(set: &PatternSet) -> Option<u8> {
    let (t, _) = split(set)?;
    match t.len() {
        0 => None,
        1..=3 => Some(t.len() as u8),
        _ => Some(4),
    }
}

/// All sets `T ∪ {τ}` of one table, in canonical order.
pub fn expand_universe(table: u8) -> Result<Vec<PatternSet>> {
    let sizes = match table {
        1..=3 => table as usize..=table as usize,
        4 => 4..=6,
        _ => return Err(Error::invalid(format!("no table {table}; expected 1..=4"))),
    };
    let s3: Vec<Permutation> = all_permutations(3).collect();
    let mut out = Vec::new();
    for mask in 1u32..(1 << s3.len()) {
        if !sizes.contains(&(mask.count_ones() as usize)) {
            continue;
        }
        let t: PatternSet = (0..s3.len())
            .filter(|i| mask & (1 << i) != 0)
            .map(|i| s3[i].clone())
            .collect();
        for tau in all_permutations(4) {
            out.push(t.clone().with(tau));
        }
    }
    out.sort();
    Ok(out)
}

/// A clause with its symmetry classes expanded once.
struct CompiledClause {
    valid_from: u32,
    test: ClauseTest,
}

enum ClauseTest {
    Class(BTreeSet<PatternSet>),
    Split {
        t: Vec<CompiledSetCondition>,
        tau: PatternCondition,
    },
}

enum CompiledSetCondition {
    Size(usize),
    Includes(PatternSet),
    Excludes(Permutation),
    NotSuperset(PatternSet),
    InClass(BTreeSet<PatternSet>),
}

impl CompiledSetCondition {
    fn new(c: &SetCondition) -> Self {
        match c {
            SetCondition::Size(k) => Self::Size(*k),
            SetCondition::Includes(s) => Self::Includes(s.clone()),
            SetCondition::Excludes(p) => Self::Excludes(p.clone()),
            SetCondition::NotSuperset(s) => Self::NotSuperset(s.clone()),
            SetCondition::InClassOf(reps) => {
                Self::InClass(reps.iter().flat_map(|r| orbit(r).members).collect())
            }
        }
    }

    fn holds(&self, t: &PatternSet) -> bool {
        match self {
            Self::Size(k) => t.len() == *k,
            Self::Includes(s) => s.is_subset(t),
            Self::Excludes(p) => !t.has(p),
            Self::NotSuperset(s) => !s.is_subset(t),
            Self::InClass(members) => members.contains(t),
        }
    }
}

fn tau_holds(c: &PatternCondition, t: &PatternSet, tau: &Permutation) -> bool {
    match c {
        PatternCondition::Any => true,
        PatternCondition::Equals(p) => tau == p,
        PatternCondition::NotEquals(p) => tau != p,
        PatternCondition::ContainsMemberOfT => t.iter().any(|a| tau.contains(a)),
    }
}

impl CompiledClause {
    fn new(c: &RowClause) -> Self {
        let test = match &c.clause {
            Clause::Class { representative } => {
                ClauseTest::Class(orbit(representative).members.into_iter().collect())
            }
            Clause::Split { t, tau } => ClauseTest::Split {
                t: t.iter().map(CompiledSetCondition::new).collect(),
                tau: tau.clone(),
            },
        };
        CompiledClause {
            valid_from: c.valid_from,
            test,
        }
    }

    fn matches(&self, set: &PatternSet, parts: &(PatternSet, Permutation)) -> bool {
        match &self.test {
            ClauseTest::Class(members) => members.contains(set),
            ClauseTest::Split { t, tau } => {
                t.iter().all(|c| c.holds(&parts.0)) && tau_holds(tau, &parts.0, &parts.1)
            }
        }
    }
}

/// The row a set falls under, and the threshold of the earliest clause of
/// that row it satisfies.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Assignment {
    pub table: u8,
    pub row: usize,
    pub valid_from: u32,
}

pub struct Catalog {
    entries: Vec<CatalogEntry>,
    compiled: Vec<Vec<CompiledClause>>,
}

impl Catalog {
    pub fn new(entries: Vec<CatalogEntry>) -> Self {
        let compiled = entries
            .iter()
            .map(|e| e.clauses.iter().map(CompiledClause::new).collect())
            .collect();
        Catalog { entries, compiled }
    }

    /// The built-in tables.
    pub fn standard() -> &'static Catalog {
        static CATALOG: OnceLock<Catalog> = OnceLock::new();
        CATALOG.get_or_init(|| Catalog::new(tables::entries()))
    }

    pub fn entries(&self) -> &[CatalogEntry] {
        &self.entries
    }

    pub fn entry(&self, table: u8, row: usize) -> Option<&CatalogEntry> {
        self.entries
            .iter()
            .find(|e| e.table == table && e.row == row)
    }

    pub fn table(&self, table: u8) -> impl Iterator<Item = &CatalogEntry> {
        self.entries.iter().filter(move |e| e.table == table)
    }

    /// The unique row covering `set`, if any. Matching two rows is an error.
    pub fn lookup(&self, set: &PatternSet) -> Result<Option<Assignment>> {
        let Some(table) = table_of(set) else {
            return Ok(None);
        };
        let parts = split(set).expect("table_of implies a split");
        let mut found: Option<Assignment> = None;
        for (entry, clauses) in self.entries.iter().zip(&self.compiled) {
            if entry.table != table {
                continue;
            }
            let Some(valid_from) = clauses
                .iter()
                .filter(|c| c.matches(set, &parts))
                .map(|c| c.valid_from)
                .min()
            else {
                continue;
            };
            if let Some(previous) = found {
                return Err(Error::CatalogIntegrity(format!(
                    "{{{set}}} matches both {} and {}",
                    self.entry(previous.table, previous.row)
                        .map_or("?", |e| &e.label),
                    entry.label
                )));
            }
            found = Some(Assignment {
                table,
                row: entry.row,
                valid_from,
            });
        }
        Ok(found)
    }
}

/// Row assignment for every set in `universe`.
pub fn assign_entries(universe: &[PatternSet]) -> Result<BTreeMap<PatternSet, Option<Assignment>>> {
    let catalog = Catalog::standard();
    universe
        .iter()
        .map(|s| Ok((s.clone(), catalog.lookup(s)?)))
        .collect()
}

/// The catalog row for `t` (if covered) and its oracle counts for `0..=n_max`.
#[derive(Clone, Debug, Serialize)]
pub struct Classification {
    pub entry: Option<CatalogEntry>,
    pub valid_from: Option<u32>,
    pub counts: CountTable,
}

pub fn classify(t: &PatternSet, n_max: usize) -> Result<Classification> {
    let catalog = Catalog::standard();
    let assignment = catalog.lookup(t)?;
    Ok(Classification {
        entry: assignment.and_then(|a| catalog.entry(a.table, a.row).cloned()),
        valid_from: assignment.map(|a| a.valid_from),
        counts: count_table(t, n_max),
    })
}
