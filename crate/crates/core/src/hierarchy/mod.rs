//! Transfinite recursion along canonical representations and the stagewise
//! iterated truth predicate.
//!
//! A staged relation assigns a bounded row to each materialized stage key
//! `ρ_β`. Stages are materialized in increasing `β` up to a [`StageBound`];
//! a limit stage reads the union of every earlier materialized row.

mod truth;

use std::collections::BTreeSet;

use serde::Serialize;
use thiserror::Error;

use crate::ordinals::{OrdinalError, OrdinalNotation, Representation};
use crate::structures::StructureError;

pub use truth::{
    base_corpus, check_trbar_membership, iterated_truth, iterated_truth_by_rek, membership_sentence, stage_dump,
    stage_predicate, stage_structure, StageDump, TarskiStep,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HierarchyError {
    #[error(transparent)]
    Ordinal(#[from] OrdinalError),
    #[error(transparent)]
    Structure(#[from] StructureError),
    #[error("the order and the coding are not compatible")]
    Incompatible,
    #[error("stage bound {bound} exceeds the order type {alpha}")]
    StageBound { bound: String, alpha: String },
    #[error("{0} is not a stage key")]
    NotAStage(u64),
}

/// A bounded window of a relation: points known to be in, known to be out,
/// and undetermined.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Row<E: Ord> {
    pub members: BTreeSet<E>,
    pub excluded: BTreeSet<E>,
    pub unknown: BTreeSet<E>,
}

impl<E: Ord> Default for Row<E> {
    fn default() -> Self {
        Self {
            members: BTreeSet::new(),
            excluded: BTreeSet::new(),
            unknown: BTreeSet::new(),
        }
    }
}

impl<E: Ord + Clone> Row<E> {
    pub fn from_members(members: impl IntoIterator<Item = E>) -> Self {
        Self {
            members: members.into_iter().collect(),
            ..Self::default()
        }
    }

    /// `Some(true)` for members, `Some(false)` for excluded points, `None`
    /// otherwise.
    pub fn get(&self, x: &E) -> Option<bool> {
        if self.members.contains(x) {
            Some(true)
        } else if self.excluded.contains(x) {
            Some(false)
        } else {
            None
        }
    }

    pub fn insert(&mut self, x: E, truth: Option<bool>) {
        match truth {
            Some(true) => self.members.insert(x),
            Some(false) => self.excluded.insert(x),
            None => self.unknown.insert(x),
        };
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty() && self.excluded.is_empty() && self.unknown.is_empty()
    }

    /// Decided points, in order.
    pub fn decided(&self) -> impl Iterator<Item = (&E, bool)> {
        self.members
            .iter()
            .map(|x| (x, true))
            .chain(self.excluded.iter().map(|x| (x, false)))
    }
}

/// One materialized stage.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Stage<E: Ord> {
    pub key: u64,
    pub index: OrdinalNotation,
    pub row: Row<E>,
}

/// Rows indexed by stage keys, in stage order. Keys without a stage have the
/// empty row.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StagedRelation<E: Ord> {
    stages: Vec<Stage<E>>,
}

impl<E: Ord> Default for StagedRelation<E> {
    fn default() -> Self {
        Self { stages: Vec::new() }
    }
}

impl<E: Ord + Clone> StagedRelation<E> {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn push(&mut self, key: u64, index: OrdinalNotation, row: Row<E>) {
        self.stages.push(Stage { key, index, row });
    }

    pub fn stages(&self) -> &[Stage<E>] {
        &self.stages
    }

    pub fn stages_mut(&mut self) -> &mut [Stage<E>] {
        &mut self.stages
    }

    pub fn len(&self) -> usize {
        self.stages.len()
    }

    pub fn is_empty(&self) -> bool {
        self.stages.is_empty()
    }

    pub fn stage(&self, key: u64) -> Option<&Stage<E>> {
        self.stages.iter().find(|s| s.key == key)
    }

    /// The row at `key`; empty off the materialized stages.
    pub fn row(&self, key: u64) -> Row<E> {
        self.stage(key).map(|s| s.row.clone()).unwrap_or_default()
    }

    /// The first `k` stages.
    pub fn prefix(&self, k: usize) -> Self {
        Self {
            stages: self.stages[..k.min(self.stages.len())].to_vec(),
        }
    }

    /// All decided points `(key, point, truth)`.
    pub fn decided_points(&self) -> Vec<(u64, E, bool)> {
        self.stages
            .iter()
            .flat_map(|s| s.row.decided().map(move |(x, b)| (s.key, x.clone(), b)))
            .collect()
    }
}

/// `F`: computes the row of a stage from the rows of all strictly earlier
/// stages, tagged by their keys.
pub trait StageFunction<E: Ord> {
    fn apply(&self, earlier: &StagedRelation<E>) -> Row<E>;
}

impl<E: Ord, F: Fn(&StagedRelation<E>) -> Row<E>> StageFunction<E> for F {
    fn apply(&self, earlier: &StagedRelation<E>) -> Row<E> {
        self(earlier)
    }
}

/// Which stages to materialize: ordinals below `below` whose Cantor normal
/// form digits are all below `digit_cap`, at most `max_stages` of them.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StageBound {
    pub below: OrdinalNotation,
    pub digit_cap: u64,
    pub max_stages: usize,
}

pub const DEFAULT_DIGIT_CAP: u64 = 10;
pub const DEFAULT_MAX_STAGES: usize = 40;

impl StageBound {
    pub fn new(below: OrdinalNotation) -> Self {
        Self {
            below,
            digit_cap: DEFAULT_DIGIT_CAP,
            max_stages: DEFAULT_MAX_STAGES,
        }
    }

    pub fn with_digit_cap(mut self, cap: u64) -> Self {
        self.digit_cap = cap;
        self
    }

    pub fn with_max_stages(mut self, n: usize) -> Self {
        self.max_stages = n;
        self
    }

    /// The materialized stage ordinals, increasing.
    pub fn stages(&self, rep: &Representation) -> Result<Vec<OrdinalNotation>, HierarchyError> {
        if self.below > *rep.order_type() {
            return Err(HierarchyError::StageBound {
                bound: self.below.to_string(),
                alpha: rep.order_type().to_string(),
            });
        }
        let width = rep.width();
        let cap = self.digit_cap.max(1);
        let mut out = Vec::new();
        let mut digits = vec![0u64; width];
        while out.len() < self.max_stages {
            let beta = OrdinalNotation::from_digits(&digits);
            if beta >= self.below {
                break;
            }
            out.push(beta);
            // counting in base `cap`, low digit first, is increasing order
            let mut i = 0;
            loop {
                if i == width {
                    return Ok(out);
                }
                digits[i] += 1;
                if digits[i] < cap {
                    break;
                }
                digits[i] = 0;
                i += 1;
            }
        }
        Ok(out)
    }
}

/// `REK(B, F, ρ)`: the row at `ρ_0` is `base`, the row at `ρ_β` is `F` of the
/// rows at earlier materialized stages.
pub fn rek<E: Ord + Clone>(
    base: Row<E>,
    f: &dyn StageFunction<E>,
    rep: &Representation,
    bound: &StageBound,
) -> Result<StagedRelation<E>, HierarchyError> {
    let mut z = StagedRelation::new();
    for beta in bound.stages(rep)? {
        let key = rep
            .rho(&beta)?
            .ok_or_else(|| OrdinalError::OutOfRange(beta.to_string()))?;
        let row = if beta.is_zero() { base.clone() } else { f.apply(&z) };
        z.push(key, beta, row);
    }
    Ok(z)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ordinals::canonical_representation;

    fn grow(earlier: &StagedRelation<u64>) -> Row<u64> {
        let mut all: BTreeSet<u64> = earlier.stages().iter().flat_map(|s| s.row.members.clone()).collect();
        let next = all.iter().max().map_or(0, |m| m + 1);
        all.insert(next);
        Row::from_members(all)
    }

    #[test]
    fn three_stages() {
        let rep = canonical_representation(&"3".parse().unwrap()).unwrap();
        let z = rek(
            Row::from_members([5]),
            &grow,
            &rep,
            &StageBound::new("3".parse().unwrap()),
        )
        .unwrap();
        let rows: Vec<Vec<u64>> = z
            .stages()
            .iter()
            .map(|s| s.row.members.iter().copied().collect())
            .collect();
        assert_eq!(rows, vec![vec![5], vec![5, 6], vec![5, 6, 7]]);
        let off = (0..100).find(|x| !z.stages().iter().any(|s| s.key == *x)).unwrap();
        assert!(z.row(off).is_empty());
    }

    #[test]
    fn zero_stages_and_bad_bounds() {
        let rep = canonical_representation(&"w".parse().unwrap()).unwrap();
        let z = rek(
            Row::from_members([5]),
            &grow,
            &rep,
            &StageBound::new("0".parse().unwrap()),
        )
        .unwrap();
        assert!(z.is_empty());
        assert!(rek(
            Row::from_members([5]),
            &grow,
            &rep,
            &StageBound::new("w+1".parse().unwrap())
        )
        .is_err());
    }

    #[test]
    fn stage_schedule() {
        let rep = canonical_representation(&"w*4".parse().unwrap()).unwrap();
        let s = StageBound::new("w*4".parse().unwrap()).stages(&rep).unwrap();
        assert_eq!(s.len(), 40);
        assert_eq!(s[10].to_string(), "w");
        assert_eq!(s[39].to_string(), "w*3+9");
        assert!(s.windows(2).all(|p| p[0] < p[1]));
    }
}
