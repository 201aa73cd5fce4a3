//! The iterated truth predicate along a representation.
//!
//! The row at `ρ_β` is a window of the truth predicate of the stage
//! structure `M_{<β}`: `M` plus one unary predicate `U<key>` per earlier
//! stage, whose extension is that stage's row (undetermined points stay
//! undetermined). The predicate of the stage with key `k` gets base code `k`.
//! Each window covers a fixed corpus of sentences over `M` plus, for every
//! earlier stage, membership sentences `U<key>(n)` about a few of its points.

use std::sync::Arc;

use serde::Serialize;

use super::{rek, HierarchyError, Row, Stage, StageBound, StageFunction, StagedRelation};
use crate::coding::Nat;
use crate::eval::{truth_predicate_approx, Certificate, Fuel, Verdict};
use crate::ordinals::{compatible, Representation};
use crate::structures::{extend, Coding, PredicateSym, Structure, SymbolClass, SymbolDef};
use crate::syntax::{Formula, Term};

/// Points sampled per earlier stage and truth value for membership sentences.
const PLANTED_PER_STAGE: usize = 2;

/// Name of the predicate for the stage with key `key`.
pub fn stage_predicate(key: u64) -> String {
    format!("U{key}")
}

/// `U<key>(n)`.
pub fn membership_sentence(key: u64, code: &Nat) -> Formula {
    Formula::atom(stage_predicate(key), vec![Term::num(code.clone())])
}

/// `w` deterministic sentences over the predicates of `m`, starting with
/// `0 = 0`.
pub fn base_corpus(m: &Structure, w: usize) -> Vec<Formula> {
    let preds: Vec<(&str, u32)> = m
        .symbols()
        .iter()
        .filter(|s| matches!(s, SymbolDef::Predicate(_)))
        .map(|s| (s.name(), s.arity()))
        .collect();
    let mut out = vec![Formula::eq(Term::num(0u32), Term::num(0u32))];
    let mut i = 0usize;
    while out.len() < w && !preds.is_empty() {
        let (p, arity) = preds[i % preds.len()];
        let round = i / preds.len();
        let args = |first: Term| -> Vec<Term> {
            std::iter::once(first)
                .chain((1..arity as usize).map(|j| Term::num(((round + 2 * j) % 5) as u32)))
                .collect()
        };
        let atom = Formula::atom(p, args(Term::num((round % 4) as u32)));
        let bound = Term::num((round % 3 + 1) as u32);
        let f = match round % 4 {
            0 => atom,
            1 => Formula::not(atom),
            2 => Formula::exists(
                0,
                Formula::and(Formula::lt(Term::var(0), bound), Formula::atom(p, args(Term::var(0)))),
            ),
            _ => Formula::forall(
                0,
                Formula::implies(Formula::lt(Term::var(0), bound), Formula::atom(p, args(Term::var(0)))),
            ),
        };
        if !out.contains(&f) {
            out.push(f);
        }
        i += 1;
        if i > 64 * (w + preds.len()) {
            break;
        }
    }
    out.truncate(w);
    out
}

/// `M` and `c` extended by one predicate per given stage.
fn extend_with_rows(m: &Structure, c: &Coding, stages: &[Stage<Nat>]) -> Result<(Structure, Coding), HierarchyError> {
    let mut defs = Vec::new();
    let mut coding = c.clone();
    for s in stages {
        let name = stage_predicate(s.key);
        let row = Arc::new(s.row.clone());
        defs.push(PredicateSym::oracle(name.clone(), 1, move |a: &[Nat]| row.get(&a[0])).into());
        coding = coding.extended(&name, SymbolClass::Predicate, 1, s.key)?;
    }
    Ok((extend(m, defs)?, coding))
}

/// `M_{<n}` with its induced coding, built from the rows of `u` at stages
/// before `n`.
pub fn stage_structure(
    m: &Structure,
    c: &Coding,
    u: &StagedRelation<Nat>,
    rep: &Representation,
    n: u64,
) -> Result<(Structure, Coding), HierarchyError> {
    let beta = rep.index_of(n).ok_or(HierarchyError::NotAStage(n))?;
    let earlier: Vec<Stage<Nat>> = u
        .stages()
        .iter()
        .filter(|s| rep.index_of(s.key).is_some_and(|g| g < beta))
        .cloned()
        .collect();
    extend_with_rows(m, c, &earlier)
}

/// Membership sentences about a few decided and undetermined points of each
/// earlier row.
fn planted(earlier: &StagedRelation<Nat>) -> Vec<Formula> {
    let mut out = Vec::new();
    for s in earlier.stages() {
        let picks = s
            .row
            .members
            .iter()
            .take(PLANTED_PER_STAGE)
            .chain(s.row.excluded.iter().take(PLANTED_PER_STAGE))
            .chain(s.row.unknown.iter().take(1));
        out.extend(picks.map(|code| membership_sentence(s.key, code)));
    }
    out
}

fn window_row(m: &Structure, c: &Coding, fuel: Fuel, corpus: &[Formula]) -> Row<Nat> {
    let t = truth_predicate_approx(m, c, fuel);
    let mut row = Row::default();
    for f in corpus {
        let Some(code) = t.code_of(f) else { continue };
        if let Some(v) = t.query(&code) {
            row.insert(code, v.truth());
        }
    }
    row
}

/// The stage function computing a truth window of the structure named by
/// the earlier rows.
pub struct TarskiStep {
    m: Structure,
    c: Coding,
    fuel: Fuel,
    window: usize,
}

impl TarskiStep {
    pub fn new(m: &Structure, c: &Coding, fuel: Fuel, window: usize) -> Self {
        Self {
            m: m.clone(),
            c: c.clone(),
            fuel,
            window,
        }
    }

    /// The stage-0 window.
    pub fn base_row(&self) -> Row<Nat> {
        window_row(&self.m, &self.c, self.fuel, &base_corpus(&self.m, self.window))
    }
}

impl StageFunction<Nat> for TarskiStep {
    fn apply(&self, earlier: &StagedRelation<Nat>) -> Row<Nat> {
        match extend_with_rows(&self.m, &self.c, earlier.stages()) {
            Ok((mb, cb)) => {
                let mut corpus = base_corpus(&self.m, self.window);
                corpus.extend(planted(earlier));
                window_row(&mb, &cb, self.fuel, &corpus)
            }
            Err(_) => Row::default(),
        }
    }
}

/// The stagewise truth tower over the materialized stages of `rep`.
pub fn iterated_truth(
    m: &Structure,
    c: &Coding,
    rep: &Representation,
    fuel: Fuel,
    bound: &StageBound,
    window: usize,
) -> Result<StagedRelation<Nat>, HierarchyError> {
    if !compatible(rep, c) {
        return Err(HierarchyError::Incompatible);
    }
    let base = base_corpus(m, window);
    let mut z = StagedRelation::new();
    let (mut mb, mut cb) = (m.clone(), c.clone());
    for beta in bound.stages(rep)? {
        let key = rep
            .rho(&beta)?
            .ok_or_else(|| crate::ordinals::OrdinalError::OutOfRange(beta.to_string()))?;
        let mut corpus = base.clone();
        corpus.extend(planted(&z));
        let row = window_row(&mb, &cb, fuel, &corpus);
        let stage = Stage {
            key,
            index: beta.clone(),
            row: row.clone(),
        };
        (mb, cb) = extend_with_rows(&mb, &cb, std::slice::from_ref(&stage))?;
        z.push(key, beta, row);
    }
    Ok(z)
}

/// [`iterated_truth`] computed through [`rek`] with [`TarskiStep`].
pub fn iterated_truth_by_rek(
    m: &Structure,
    c: &Coding,
    rep: &Representation,
    fuel: Fuel,
    bound: &StageBound,
    window: usize,
) -> Result<StagedRelation<Nat>, HierarchyError> {
    if !compatible(rep, c) {
        return Err(HierarchyError::Incompatible);
    }
    let step = TarskiStep::new(m, c, fuel, window);
    rek(step.base_row(), &step, rep, bound)
}

/// Checks the decided points of `u` against the truth windows they claim:
/// the row at `ρ_0` against `M`, each later row against the structure named
/// by the earlier rows of `u` itself. Rows at keys outside the domain must
/// be empty.
pub fn check_trbar_membership(
    u: &StagedRelation<Nat>,
    m: &Structure,
    c: &Coding,
    rep: &Representation,
    fuel: Fuel,
) -> Verdict {
    let mut count = 0u64;
    let mut undecided = false;
    for (i, s) in u.stages().iter().enumerate() {
        if rep.index_of(s.key).is_none() {
            if let Some((code, _)) = s.row.decided().next() {
                return Verdict::False(Certificate::Mismatch {
                    entry: i,
                    point: code.clone(),
                });
            }
            continue;
        }
        let Ok((mb, cb)) = stage_structure(m, c, u, rep, s.key) else {
            undecided = true;
            continue;
        };
        let t = truth_predicate_approx(&mb, &cb, fuel);
        for (code, claimed) in s.row.decided() {
            count += 1;
            match t.query(code).map(|v| v.truth()) {
                None if !claimed => {}
                None => {
                    return Verdict::False(Certificate::Mismatch {
                        entry: i,
                        point: code.clone(),
                    })
                }
                Some(Some(b)) if b != claimed => {
                    return Verdict::False(Certificate::Mismatch {
                        entry: i,
                        point: code.clone(),
                    })
                }
                Some(Some(_)) => {}
                Some(None) => undecided = true,
            }
        }
    }
    if undecided {
        Verdict::Unknown
    } else {
        Verdict::True(Certificate::Probes { count })
    }
}

/// One stage of a JSON stage dump.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StageDump {
    pub key: u64,
    pub ordinal: String,
    pub decided_true: Vec<String>,
    pub decided_false: Vec<String>,
    pub unknown: usize,
    pub quantifier_bound: u64,
    pub size_bound: usize,
    pub window: usize,
}

pub fn stage_dump(u: &StagedRelation<Nat>, fuel: Fuel, window: usize) -> Vec<StageDump> {
    u.stages()
        .iter()
        .map(|s| StageDump {
            key: s.key,
            ordinal: s.index.to_string(),
            decided_true: s.row.members.iter().map(|n| n.to_string()).collect(),
            decided_false: s.row.excluded.iter().map(|n| n.to_string()).collect(),
            unknown: s.row.unknown.len(),
            quantifier_bound: fuel.quantifier_bound,
            size_bound: fuel.size_bound,
            window,
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::eval::eval_sentence;
    use crate::ordinals::{canonical_representation, shift_coding, LinearOrder};
    use crate::structures::base_arithmetic;
    use crate::syntax::{godel_number, parse};

    fn setup(alpha: &str) -> (Structure, Coding, Representation) {
        let m = base_arithmetic();
        let rep = canonical_representation(&alpha.parse().unwrap()).unwrap();
        let c = shift_coding(&Coding::enumeration(&m), &rep);
        (m, c, rep)
    }

    #[test]
    fn stage_zero_is_the_truth_window() {
        let (m, c, rep) = setup("2");
        let fuel = Fuel::new(6, 30);
        let u = iterated_truth(&m, &c, &rep, fuel, &StageBound::new("2".parse().unwrap()), 12).unwrap();
        assert_eq!(u.len(), 2);
        let t = truth_predicate_approx(&m, &c, fuel);
        let row0 = &u.stages()[0].row;
        for f in base_corpus(&m, 12) {
            let code = godel_number(&f, &c).unwrap();
            assert_eq!(row0.get(&code), t.query(&code).unwrap().truth());
        }
        let (m1, c1) = stage_structure(&m, &c, &u, &rep, u.stages()[1].key).unwrap();
        assert_eq!(m1.symbols().len(), m.symbols().len() + 1);
        let key0 = u.stages()[0].key;
        assert_eq!(c1.code(&stage_predicate(key0)), Some(key0));
        let zero = godel_number(&parse("0 = 0").unwrap(), &c).unwrap();
        let v = eval_sentence(&m1, &membership_sentence(key0, &zero), fuel).unwrap();
        assert_eq!(v.truth(), Some(true));
    }

    #[test]
    fn stage_structures_count_earlier_rows() {
        let (m, c, rep) = setup("w");
        let fuel = Fuel::new(4, 20);
        let u = iterated_truth(&m, &c, &rep, fuel, &StageBound::new("3".parse().unwrap()), 6).unwrap();
        let (m0, c0) = stage_structure(&m, &c, &u, &rep, u.stages()[0].key).unwrap();
        assert_eq!(m0.symbols().len(), m.symbols().len());
        assert_eq!(c0, c);
        let (m2, _) = stage_structure(&m, &c, &u, &rep, u.stages()[2].key).unwrap();
        assert_eq!(m2.symbols().len(), m.symbols().len() + 2);
        assert!(stage_structure(&m, &c, &u, &rep, 0).is_err());
    }

    #[test]
    fn both_routes_agree_and_check() {
        let (m, c, rep) = setup("w+1");
        let fuel = Fuel::new(4, 20);
        let bound = StageBound::new("w+1".parse().unwrap()).with_digit_cap(4);
        let direct = iterated_truth(&m, &c, &rep, fuel, &bound, 8).unwrap();
        let via_rek = iterated_truth_by_rek(&m, &c, &rep, fuel, &bound, 8).unwrap();
        assert_eq!(direct, via_rek);
        assert_eq!(direct.len(), 5);
        assert!(check_trbar_membership(&direct, &m, &c, &rep, fuel).is_decided());
        assert_eq!(check_trbar_membership(&direct, &m, &c, &rep, fuel).truth(), Some(true));
        let mut bad = direct.clone();
        let row = &mut bad.stages_mut()[0].row;
        let x = row.members.iter().next().unwrap().clone();
        row.members.remove(&x);
        row.excluded.insert(x);
        assert_eq!(check_trbar_membership(&bad, &m, &c, &rep, fuel).truth(), Some(false));
    }

    #[test]
    fn incompatible_codings_are_rejected() {
        let m = base_arithmetic();
        let rep = canonical_representation(&"w".parse().unwrap()).unwrap();
        let c = Coding::enumeration(&m).shifted(|x| !rep.contains(&x));
        let r = iterated_truth(
            &m,
            &c,
            &rep,
            Fuel::new(2, 10),
            &StageBound::new("1".parse().unwrap()),
            2,
        );
        assert_eq!(r, Err(HierarchyError::Incompatible));
    }

    #[test]
    fn empty_relation_over_empty_order() {
        let (m, c, _) = setup("w");
        let empty = canonical_representation(&"0".parse().unwrap()).unwrap();
        let v = check_trbar_membership(&StagedRelation::new(), &m, &c, &empty, Fuel::new(2, 10));
        assert_eq!(v.truth(), Some(true));
    }
}
