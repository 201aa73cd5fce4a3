//! Formula derivations and truth derivations.
//!
//! A formula derivation lists codes of formulas, each atomic or obtained from
//! earlier entries by a connective or a quantifier. A truth derivation pairs
//! each entry with a row of a universal set that should contain exactly the
//! assignments satisfying that entry. Only finitely many assignments can be
//! probed: sequences of length `n` and `n + 1` (with `n` the number of free
//! variables, extra entries ignored) whose entries lie below the quantifier
//! bound, shrunk so that at most [`MAX_PROBES`] points are tried per entry.

use std::collections::HashSet;

use super::evaluator::{EvalError, Evaluator};
use super::universal::UniversalView;
use super::verdict::{Certificate, Fuel, Verdict};
use crate::coding::{encode_seq_u64, is_derivation, ClosureRelation, Nat};
use crate::structures::{Coding, Structure};
use crate::syntax::{decode_formula, godel_number, Formula, SyntaxError};

/// Probe cap per derivation entry.
pub const MAX_PROBES: u64 = 4096;

/// Post-order list of the distinct subformulas of `phi`, as codes.
pub fn formula_derivation(phi: &Formula, c: &Coding) -> Result<Vec<Nat>, SyntaxError> {
    fn visit<'a>(f: &'a Formula, seen: &mut HashSet<&'a Formula>, out: &mut Vec<&'a Formula>) {
        if seen.contains(f) {
            return;
        }
        match f {
            Formula::Atom(..) | Formula::SoAtom(..) => {}
            Formula::Not(a) | Formula::Quant(_, _, a) => visit(a, seen, out),
            Formula::Binary(_, a, b) => {
                visit(a, seen, out);
                visit(b, seen, out);
            }
        }
        seen.insert(f);
        out.push(f);
    }
    let mut seen = HashSet::new();
    let mut order = Vec::new();
    visit(phi, &mut seen, &mut order);
    order.into_iter().map(|f| godel_number(f, c)).collect()
}

fn unary_step(args: &[&Formula], y: &Formula) -> bool {
    match y {
        Formula::Not(a) | Formula::Quant(_, _, a) => **a == *args[0],
        _ => false,
    }
}

fn binary_step(args: &[&Formula], y: &Formula) -> bool {
    matches!(y, Formula::Binary(_, a, b) if **a == *args[0] && **b == *args[1])
}

/// Checks a sequence of codes against the formula-derivation clauses.
pub fn check_formula_derivation(seq: &[Nat], c: &Coding) -> bool {
    let Ok(formulas) = seq.iter().map(|a| decode_formula(a, c)).collect::<Result<Vec<_>, _>>() else {
        return false;
    };
    let relations = [
        ClosureRelation::new(1, unary_step),
        ClosureRelation::new(2, binary_step),
    ];
    is_derivation(&formulas, Formula::is_atomic, &relations)
}

fn probe_base(n: usize, bound: u64) -> u64 {
    let mut p = bound.max(1);
    let count = |p: u64| {
        let a = p.checked_pow(n as u32);
        let b = p.checked_pow(n as u32 + 1);
        a.zip(b).and_then(|(a, b)| a.checked_add(b))
    };
    while p > 1 && count(p).is_none_or(|k| k > MAX_PROBES) {
        p -= 1;
    }
    p
}

/// Checks a truth derivation `a_1, e_1, ..., a_k, e_k` against a universal set.
pub fn check_truth_derivation(
    seq: &[Nat],
    g: &dyn UniversalView,
    m: &Structure,
    c: &Coding,
    fuel: Fuel,
) -> Result<Verdict, EvalError> {
    if seq.is_empty() || !seq.len().is_multiple_of(2) {
        return Ok(Verdict::False(Certificate::NotACode));
    }
    let codes: Vec<Nat> = seq.iter().step_by(2).cloned().collect();
    if !check_formula_derivation(&codes, c) {
        return Ok(Verdict::False(Certificate::NotACode));
    }
    let eval = Evaluator::new(m, fuel.quantifier_bound);
    let mut unknown = false;
    let mut probes = 0u64;
    for (i, (a, e)) in codes.iter().zip(seq.iter().skip(1).step_by(2)).enumerate() {
        let psi = decode_formula(a, c).expect("checked above");
        if psi.is_scheme() {
            return Ok(Verdict::False(Certificate::NotACode));
        }
        m.check_formula(&psi)?;
        let vars: Vec<u32> = psi.free_vars().into_iter().collect();
        let n = vars.len();
        let p = probe_base(n, fuel.quantifier_bound);
        for len in [n, n + 1] {
            let mut point = vec![0u64; len];
            loop {
                let mut env: Vec<(u32, Nat)> = vars.iter().zip(&point).map(|(&v, &x)| (v, Nat::from(x))).collect();
                let expected = if psi.size() > fuel.size_bound {
                    None
                } else {
                    eval.eval(&psi, &mut env)?.truth()
                };
                let code = encode_seq_u64(&point);
                let actual = g.member(e, &code).truth();
                probes += 1;
                match (expected, actual) {
                    (Some(x), Some(y)) if x != y => {
                        return Ok(Verdict::False(Certificate::Mismatch { entry: i, point: code }));
                    }
                    (Some(_), Some(_)) => {}
                    _ => unknown = true,
                }
                if !advance(&mut point, p) {
                    break;
                }
            }
        }
    }
    Ok(if unknown {
        Verdict::Unknown
    } else {
        Verdict::True(Certificate::Probes { count: probes })
    })
}

fn advance(point: &mut [u64], base: u64) -> bool {
    for x in point.iter_mut() {
        *x += 1;
        if *x < base {
            return true;
        }
        *x = 0;
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::eval::universal::universal_predicate;
    use crate::structures::base_arithmetic;
    use crate::syntax::parse;

    fn setup() -> (Structure, Coding) {
        let m = base_arithmetic();
        let c = Coding::enumeration(&m);
        (m, c)
    }

    #[test]
    fn derivations_check() {
        let (_, c) = setup();
        let atomic = parse("0 = 1").unwrap();
        let d = formula_derivation(&atomic, &c).unwrap();
        assert_eq!(d.len(), 1);
        let neg = Formula::not(atomic.clone());
        let dn = formula_derivation(&neg, &c).unwrap();
        assert_eq!(dn[..1], d[..]);
        assert_eq!(dn[1], godel_number(&neg, &c).unwrap());
        let f = parse("forall x0. (x0 = x0 & exists x1. (x1 < x0 | !x1 = 2))").unwrap();
        let df = formula_derivation(&f, &c).unwrap();
        assert!(check_formula_derivation(&df, &c));
        let mut permuted = df.clone();
        permuted.rotate_right(1);
        assert!(!check_formula_derivation(&permuted, &c));
        assert!(!check_formula_derivation(&[], &c));
    }

    #[test]
    fn truth_derivations() {
        let (m, c) = setup();
        let fuel = Fuel::new(6, 40);
        let g = universal_predicate(&m, &c, fuel);
        let everything = godel_number(&parse("x0 = x0").unwrap(), &c).unwrap();
        let zero_eq = godel_number(&parse("0 = 0").unwrap(), &c).unwrap();
        let ok = check_truth_derivation(&[zero_eq, everything.clone()], &g, &m, &c, fuel).unwrap();
        assert_eq!(ok.truth(), Some(true));

        let wrong = godel_number(&parse("0 = 1").unwrap(), &c).unwrap();
        let bad = check_truth_derivation(&[wrong, everything.clone()], &g, &m, &c, fuel).unwrap();
        assert!(matches!(bad, Verdict::False(Certificate::Mismatch { entry: 0, .. })));

        let body = godel_number(&parse("x0 = x0").unwrap(), &c).unwrap();
        let all = godel_number(&parse("forall x0. x0 = x0").unwrap(), &c).unwrap();
        let open = check_truth_derivation(&[body, everything.clone(), all, everything], &g, &m, &c, fuel).unwrap();
        assert_eq!(open, Verdict::Unknown);
    }
}
