//! Partial truth predicates: lazily computed, memoized maps from sentence
//! codes to verdicts.

use std::collections::{BTreeMap, BTreeSet};
use std::sync::Mutex;

use super::evaluator::{eval_sentence, level};
use super::verdict::{Fuel, Verdict};
use crate::coding::Nat;
use crate::structures::{Coding, Structure};
use crate::syntax::{decode_formula, godel_number, Formula};

/// A memoized entry.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Entry {
    pub formula: Option<Formula>,
    pub verdict: Verdict,
}

#[derive(Debug, Clone)]
struct Source {
    m: Structure,
    c: Coding,
    fuel: Fuel,
    max_level: Option<usize>,
}

/// A fuel-bounded approximation of a truth predicate.
///
/// The domain consists of the codes of sentences of the structure whose size
/// is at most the size bound (and, for `tr_k`, whose level is at most `k`).
/// Verdicts are computed on first query and memoized; entries can also be set
/// directly, which is how mutation tests plant inconsistencies.
#[derive(Debug)]
pub struct PartialTruthSet {
    source: Option<Source>,
    entries: Mutex<BTreeMap<Nat, Entry>>,
    outside: Mutex<BTreeSet<Nat>>,
}

impl Clone for PartialTruthSet {
    fn clone(&self) -> Self {
        Self {
            source: self.source.clone(),
            entries: Mutex::new(self.entries.lock().expect("lock").clone()),
            outside: Mutex::new(self.outside.lock().expect("lock").clone()),
        }
    }
}

impl PartialTruthSet {
    /// A set with no entries and no way to compute new ones.
    pub fn empty() -> Self {
        Self {
            source: None,
            entries: Mutex::new(BTreeMap::new()),
            outside: Mutex::new(BTreeSet::new()),
        }
    }

    fn sourced(source: Source) -> Self {
        Self {
            source: Some(source),
            ..Self::empty()
        }
    }

    pub fn fuel(&self) -> Option<Fuel> {
        self.source.as_ref().map(|s| s.fuel)
    }

    pub fn max_level(&self) -> Option<usize> {
        self.source.as_ref().and_then(|s| s.max_level)
    }

    /// The admissible sentence coded by `code`, if any.
    fn admit(&self, s: &Source, code: &Nat) -> Option<Formula> {
        let f = decode_formula(code, &s.c).ok()?;
        let ok = f.is_sentence()
            && !f.is_scheme()
            && s.m.check_formula(&f).is_ok()
            && f.size() <= s.fuel.size_bound
            && s.max_level.is_none_or(|k| level(&f) <= k);
        ok.then_some(f)
    }

    /// The verdict at `code`, or `None` when `code` is outside the domain.
    pub fn query(&self, code: &Nat) -> Option<Verdict> {
        if let Some(e) = self.entries.lock().expect("lock").get(code) {
            return Some(e.verdict.clone());
        }
        let s = self.source.as_ref()?;
        if self.outside.lock().expect("lock").contains(code) {
            return None;
        }
        let Some(f) = self.admit(s, code) else {
            self.outside.lock().expect("lock").insert(code.clone());
            return None;
        };
        let verdict = eval_sentence(&s.m, &f, s.fuel).unwrap_or(Verdict::Unknown);
        let mut entries = self.entries.lock().expect("lock");
        let e = entries.entry(code.clone()).or_insert(Entry {
            formula: Some(f),
            verdict,
        });
        Some(e.verdict.clone())
    }

    /// [`query`](Self::query) by formula.
    pub fn query_formula(&self, f: &Formula) -> Option<Verdict> {
        let s = self.source.as_ref()?;
        let code = godel_number(f, &s.c).ok()?;
        self.query(&code)
    }

    /// The code of a formula under this set's coding.
    pub fn code_of(&self, f: &Formula) -> Option<Nat> {
        godel_number(f, &self.source.as_ref()?.c).ok()
    }

    /// Materializes the given sentences.
    pub fn populate<'a>(&self, sentences: impl IntoIterator<Item = &'a Formula>) {
        for f in sentences {
            self.query_formula(f);
        }
    }

    /// All materialized entries, by code.
    pub fn entries(&self) -> Vec<(Nat, Entry)> {
        self.entries
            .lock()
            .expect("lock")
            .iter()
            .map(|(k, v)| (k.clone(), v.clone()))
            .collect()
    }

    /// Materialized entries whose verdict is decided.
    pub fn decided(&self) -> Vec<(Nat, bool)> {
        self.entries
            .lock()
            .expect("lock")
            .iter()
            .filter_map(|(k, e)| e.verdict.truth().map(|b| (k.clone(), b)))
            .collect()
    }

    pub fn len(&self) -> usize {
        self.entries.lock().expect("lock").len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Overwrites the entry at `code`.
    pub fn set(&self, code: Nat, formula: Option<Formula>, verdict: Verdict) {
        self.entries
            .lock()
            .expect("lock")
            .insert(code, Entry { formula, verdict });
    }

    /// Negates a decided entry. Returns whether an entry was flipped.
    pub fn flip(&self, code: &Nat) -> bool {
        let mut entries = self.entries.lock().expect("lock");
        match entries.get_mut(code) {
            Some(e) if e.verdict.is_decided() => {
                e.verdict = e.verdict.negate();
                true
            }
            _ => false,
        }
    }
}

/// The approximation of the truth predicate of `m` under `c`.
pub fn truth_predicate_approx(m: &Structure, c: &Coding, fuel: Fuel) -> PartialTruthSet {
    PartialTruthSet::sourced(Source {
        m: m.clone(),
        c: c.clone(),
        fuel,
        max_level: None,
    })
}

/// The approximation of the `k`-truth predicate: sentences of level at most `k`.
pub fn tr_k(m: &Structure, c: &Coding, k: usize, fuel: Fuel) -> PartialTruthSet {
    PartialTruthSet::sourced(Source {
        m: m.clone(),
        c: c.clone(),
        fuel,
        max_level: Some(k),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::structures::{base_arithmetic, extend, Builtin, Extension, PredicateSym};
    use crate::syntax::parse;

    fn arith() -> (Structure, Coding) {
        let m = base_arithmetic();
        let c = Coding::enumeration(&m);
        (m, c)
    }

    #[test]
    fn basic_entries() {
        let (m, c) = arith();
        let t = truth_predicate_approx(&m, &c, Fuel::new(8, 40));
        assert_eq!(t.query_formula(&parse("0 = 0").unwrap()).unwrap().truth(), Some(true));
        assert_eq!(t.query_formula(&parse("x0 = 0").unwrap()), None);
        let code = godel_number(&parse("x0 = 0").unwrap(), &c).unwrap();
        assert_eq!(t.query(&code), None);
        assert_eq!(t.decided().len(), 1);
    }

    #[test]
    fn prime_atoms() {
        let m = extend(
            &base_arithmetic(),
            vec![PredicateSym::new("Prime", 1, Extension::Builtin(Builtin::Primality)).into()],
        )
        .unwrap();
        let c = Coding::enumeration(&m);
        let t = truth_predicate_approx(&m, &c, Fuel::new(8, 40));
        assert_eq!(
            t.query_formula(&parse("Prime(7)").unwrap()).unwrap().truth(),
            Some(true)
        );
    }

    #[test]
    fn level_restriction() {
        let (m, c) = arith();
        let t1 = tr_k(&m, &c, 1, Fuel::new(8, 40));
        assert_eq!(
            t1.query_formula(&parse("exists x0. x0 + x0 = 4").unwrap())
                .unwrap()
                .truth(),
            Some(true)
        );
        let sigma2 = parse("exists x0. forall x1. x1 + x0 = x1").unwrap();
        for b in [1, 10, 100] {
            assert_eq!(tr_k(&m, &c, 1, Fuel::new(b, 40)).query_formula(&sigma2), None);
        }
        let t0 = tr_k(&m, &c, 0, Fuel::new(8, 40));
        assert_eq!(
            t0.query_formula(&parse("forall x0. (x0 < 6 -> !x0 * x0 = 10)").unwrap())
                .unwrap()
                .truth(),
            Some(true)
        );
    }

    #[test]
    fn flips_and_sets() {
        let (m, c) = arith();
        let t = truth_predicate_approx(&m, &c, Fuel::new(8, 40));
        let f = parse("1 < 2").unwrap();
        t.query_formula(&f);
        let code = godel_number(&f, &c).unwrap();
        assert!(t.flip(&code));
        assert_eq!(t.query(&code).unwrap().truth(), Some(false));
        let empty = PartialTruthSet::empty();
        assert!(empty.is_empty());
        assert_eq!(empty.query(&code), None);
    }
}
