//! Checking a partial truth set against the Tarski clauses.
//!
//! Each decided entry is compared with the value its clause computes from
//! other entries of the same set: atoms over numerals through the diagram `D`,
//! other closed atoms through the values of their terms (`Val`) and the entry
//! of the corresponding numeral atom, connectives through the entries of their
//! operands, quantifiers through the entries of their instances below `B`.
//! Unknown or absent operands never produce a violation.

use std::collections::HashMap;
use std::sync::Mutex;

use num_traits::ToPrimitive;
use serde::Serialize;

use super::evaluator::guard_term;
use super::truth::PartialTruthSet;
use super::verdict::{kleene, Fuel};
use crate::coding::{encode_seq, symbol_code, Nat};
use crate::structures::{d_relation, val_relation, Coding, Structure};
use crate::syntax::{decode_formula, godel_number, term_code, Connective, Formula, Quantifier, Term};

/// A decided entry that disagrees with its clause.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Violation {
    #[serde(serialize_with = "crate::eval::tarski::nat_string")]
    pub code: Nat,
    pub formula: Option<String>,
    pub clause: &'static str,
    pub recorded: bool,
    pub expected: Option<bool>,
}

pub(crate) fn nat_string<S: serde::Serializer>(n: &Nat, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&n.to_string())
}

#[derive(Debug, Clone)]
enum Clause {
    Atomic(Option<bool>),
    Reduce(Option<Nat>),
    Not(Nat),
    Binary(Connective, Nat, Nat),
    Quant(Quantifier, Vec<Nat>, bool),
}

impl Clause {
    fn name(&self) -> &'static str {
        match self {
            Clause::Atomic(_) => "atomic",
            Clause::Reduce(_) => "closed-term",
            Clause::Not(_) => "negation",
            Clause::Binary(..) => "connective",
            Clause::Quant(..) => "quantifier",
        }
    }
}

/// Clause checker with a cache of clause shapes, reusable across checks of
/// mutated sets over the same structure, coding and fuel.
pub struct TarskiChecker {
    m: Structure,
    c: Coding,
    fuel: Fuel,
    cache: Mutex<HashMap<Nat, Option<Clause>>>,
}

impl TarskiChecker {
    pub fn new(m: &Structure, c: &Coding, fuel: Fuel) -> Self {
        Self {
            m: m.clone(),
            c: c.clone(),
            fuel,
            cache: Mutex::new(HashMap::new()),
        }
    }

    fn numeral_args(&self, args: &[Term]) -> Option<Vec<Nat>> {
        args.iter()
            .map(|t| match t {
                Term::Num(n) => Some(n.clone()),
                _ => None,
            })
            .collect()
    }

    fn clause(&self, f: &Formula) -> Option<Clause> {
        let code = |g: &Formula| godel_number(g, &self.c).ok();
        Some(match f {
            Formula::Atom(p, args) => match self.numeral_args(args) {
                Some(vals) => {
                    let sym = symbol_code(&self.c.get(p)?.symbol()).ok()?.value;
                    Clause::Atomic(d_relation(&self.m, &self.c).holds(&sym, &encode_seq(&vals)))
                }
                None => {
                    let val = val_relation(&self.m, &self.c);
                    let reduced: Option<Vec<Term>> = args
                        .iter()
                        .map(|t| val.value(&term_code(t, &self.c).ok()?).map(Term::Num))
                        .collect();
                    Clause::Reduce(reduced.and_then(|r| code(&Formula::Atom(p.clone(), r))))
                }
            },
            Formula::SoAtom(..) => return None,
            Formula::Not(a) => Clause::Not(code(a)?),
            Formula::Binary(op, a, b) => Clause::Binary(*op, code(a)?, code(b)?),
            Formula::Quant(q, v, body) => {
                let b = self.fuel.quantifier_bound;
                let instances = (0..b)
                    .map(|a| code(&body.instantiate(*v, &Nat::from(a))))
                    .collect::<Option<Vec<_>>>()?;
                let guarded = guard_term(*q, *v, body)
                    .and_then(|t| self.m.term_value(t, &[]).ok().flatten())
                    .and_then(|g| g.to_u64())
                    .is_some_and(|g| g < b);
                Clause::Quant(*q, instances, guarded)
            }
        })
    }

    fn cached_clause(&self, code: &Nat, f: &Formula) -> Option<Clause> {
        if let Some(c) = self.cache.lock().expect("lock").get(code) {
            return c.clone();
        }
        let c = self.clause(f);
        self.cache.lock().expect("lock").insert(code.clone(), c.clone());
        c
    }

    fn expected(&self, clause: &Clause, t: &PartialTruthSet) -> Option<bool> {
        let look = |k: &Nat| t.query(k).and_then(|v| v.truth());
        match clause {
            Clause::Atomic(x) => *x,
            Clause::Reduce(k) => look(k.as_ref()?),
            Clause::Not(a) => look(a).map(|x| !x),
            Clause::Binary(op, a, b) => kleene(*op, look(a), look(b)),
            Clause::Quant(q, instances, guarded) => {
                let target = *q == Quantifier::Exists;
                let mut all_opposite = true;
                for k in instances {
                    match look(k) {
                        Some(x) if x == target => return Some(target),
                        Some(_) => {}
                        None => all_opposite = false,
                    }
                }
                (all_opposite && *guarded).then_some(!target)
            }
        }
    }

    /// Violations among the decided entries of `t`.
    pub fn check(&self, t: &PartialTruthSet) -> Vec<Violation> {
        let mut out = Vec::new();
        for (code, entry) in t.entries() {
            let Some(recorded) = entry.verdict.truth() else {
                continue;
            };
            let formula = entry.formula.or_else(|| decode_formula(&code, &self.c).ok());
            let Some(f) = formula else {
                out.push(Violation {
                    code,
                    formula: None,
                    clause: "not a formula code",
                    recorded,
                    expected: None,
                });
                continue;
            };
            let text = Some(f.to_string());
            if !f.is_sentence() || f.is_scheme() || self.m.check_formula(&f).is_err() {
                out.push(Violation {
                    code,
                    formula: text,
                    clause: "not a sentence",
                    recorded,
                    expected: None,
                });
                continue;
            }
            let Some(clause) = self.cached_clause(&code, &f) else {
                continue;
            };
            let expected = self.expected(&clause, t);
            if expected == Some(!recorded) {
                out.push(Violation {
                    code,
                    formula: text,
                    clause: clause.name(),
                    recorded,
                    expected,
                });
            }
        }
        out
    }
}

/// Violations of the Tarski clauses among the decided entries of `t`.
pub fn tarski_fixpoint_check(m: &Structure, c: &Coding, t: &PartialTruthSet, fuel: Fuel) -> Vec<Violation> {
    TarskiChecker::new(m, c, fuel).check(t)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::eval::truth::truth_predicate_approx;
    use crate::structures::base_arithmetic;
    use crate::syntax::parse;

    #[test]
    fn consistent_and_mutated() {
        let m = base_arithmetic();
        let c = Coding::enumeration(&m);
        let fuel = Fuel::new(6, 30);
        let t = truth_predicate_approx(&m, &c, fuel);
        let sentences: Vec<Formula> = [
            "(1 < 2 & 2 < 3)",
            "!(0 = 1)",
            "exists x0. (x0 < 4 & x0 * x0 = 9)",
            "forall x0. (x0 < 3 -> x0 < 5)",
            "S(S(0)) + 1 = 3",
            "(0 = 0 -> 1 = 2)",
        ]
        .iter()
        .map(|s| parse(s).unwrap())
        .collect();
        t.populate(&sentences);
        assert!(tarski_fixpoint_check(&m, &c, &t, fuel).is_empty());
        let conj = godel_number(&sentences[0], &c).unwrap();
        assert!(t.flip(&conj));
        let v = tarski_fixpoint_check(&m, &c, &t, fuel);
        assert_eq!(v.len(), 1);
        assert_eq!(v[0].code, conj);
        assert_eq!(v[0].clause, "connective");
        assert!(tarski_fixpoint_check(&m, &c, &PartialTruthSet::empty(), fuel).is_empty());
    }
}
