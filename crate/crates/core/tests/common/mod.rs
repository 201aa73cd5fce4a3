//! Seeded generators shared by the integration tests.

#![allow(dead_code)]

use itruth::structures::{Structure, SymbolDef};
use itruth::syntax::{Connective, Formula, Quantifier, SoVar, Term};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub fn term(rng: &mut ChaCha8Rng, depth: u32, vars: u32) -> Term {
    let leaf = depth == 0 || rng.gen_bool(0.4);
    if leaf {
        return match rng.gen_range(0..10) {
            0..=4 => Term::var(rng.gen_range(0..vars.max(1))),
            5..=8 => Term::num(rng.gen_range(0u32..20)),
            _ => Term::num(rng.gen_range(0u64..1 << 24)),
        };
    }
    match rng.gen_range(0..3) {
        0 => Term::succ(term(rng, depth - 1, vars)),
        1 => Term::plus(term(rng, depth - 1, vars), term(rng, depth - 1, vars)),
        _ => Term::times(term(rng, depth - 1, vars), term(rng, depth - 1, vars)),
    }
}

/// A formula of depth at most `depth` over base arithmetic and second-order
/// variables, possibly open.
pub fn formula(rng: &mut ChaCha8Rng, depth: u32) -> Formula {
    if depth == 0 || rng.gen_bool(0.25) {
        return match rng.gen_range(0..3) {
            0 => Formula::eq(term(rng, 2, 6), term(rng, 2, 6)),
            1 => Formula::lt(term(rng, 2, 6), term(rng, 2, 6)),
            _ => {
                let v = SoVar::new(rng.gen_range(1..4), rng.gen_range(0..4));
                let args = (0..v.arity).map(|_| term(rng, 1, 6)).collect();
                Formula::SoAtom(v, args)
            }
        };
    }
    let ops = [Connective::And, Connective::Or, Connective::Implies, Connective::Iff];
    match rng.gen_range(0..4) {
        0 => Formula::not(formula(rng, depth - 1)),
        1 => Formula::binary(
            ops[rng.gen_range(0..4)],
            formula(rng, depth - 1),
            formula(rng, depth - 1),
        ),
        _ => {
            let q = if rng.gen_bool(0.5) {
                Quantifier::Forall
            } else {
                Quantifier::Exists
            };
            Formula::quant(q, rng.gen_range(0..6), formula(rng, depth - 1))
        }
    }
}

/// A sentence over the symbols of `m` whose quantifiers are all bounded by
/// numerals.
pub fn bounded_sentence(rng: &mut ChaCha8Rng, m: &Structure, depth: u32) -> Formula {
    bounded(rng, m, depth, 0)
}

fn symbol_term(rng: &mut ChaCha8Rng, m: &Structure, scope: u32, depth: u32) -> Term {
    let funcs: Vec<(&str, u32)> = m
        .symbols()
        .iter()
        .filter(|s| matches!(s, SymbolDef::Function(_)) && s.arity() > 0)
        .map(|s| (s.name(), s.arity()))
        .collect();
    if depth == 0 || rng.gen_bool(0.6) {
        return if scope > 0 && rng.gen_bool(0.6) {
            Term::var(rng.gen_range(0..scope))
        } else {
            Term::num(rng.gen_range(0u32..6))
        };
    }
    let (f, arity) = funcs[rng.gen_range(0..funcs.len())];
    Term::app(f, (0..arity).map(|_| symbol_term(rng, m, scope, depth - 1)).collect())
}

fn bounded(rng: &mut ChaCha8Rng, m: &Structure, depth: u32, scope: u32) -> Formula {
    let preds: Vec<(&str, u32)> = m
        .symbols()
        .iter()
        .filter(|s| matches!(s, SymbolDef::Predicate(_)))
        .map(|s| (s.name(), s.arity()))
        .collect();
    if depth == 0 || rng.gen_bool(0.3) {
        let (p, arity) = preds[rng.gen_range(0..preds.len())];
        return Formula::atom(p, (0..arity).map(|_| symbol_term(rng, m, scope, 1)).collect());
    }
    match rng.gen_range(0..4) {
        0 => Formula::not(bounded(rng, m, depth - 1, scope)),
        1 => Formula::and(bounded(rng, m, depth - 1, scope), bounded(rng, m, depth - 1, scope)),
        2 => Formula::or(bounded(rng, m, depth - 1, scope), bounded(rng, m, depth - 1, scope)),
        _ => {
            let v = scope;
            let guard = Formula::lt(Term::var(v), Term::num(rng.gen_range(1u32..5)));
            let body = bounded(rng, m, depth - 1, scope + 1);
            if rng.gen_bool(0.5) {
                Formula::exists(v, Formula::and(guard, body))
            } else {
                Formula::forall(v, Formula::implies(guard, body))
            }
        }
    }
}
