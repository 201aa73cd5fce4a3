//! Fuel-bounded three-valued evaluation.
//!
//! Connectives follow strong Kleene logic. An existential is certified true by
//! a witness below the quantifier bound `B`. It is certified false only when
//! every instance below `B` is false and the quantifier is guarded,
//! `exists x (x < t & φ)` or `exists x (x < t)`, by a term `t` whose value is
//! below `B`. Universals are dual, with guards `forall x (x < t -> φ)` and
//! `forall x (x < t)`.

use num_traits::ToPrimitive;
use thiserror::Error;

use super::verdict::{kleene, Certificate, Fuel, Verdict};
use crate::coding::Nat;
use crate::structures::{Env, Structure, StructureError};
use crate::syntax::{to_prenex, Connective, Formula, Quantifier, SoVar, Term, LT};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EvalError {
    #[error(transparent)]
    Structure(#[from] StructureError),
    #[error("formula is not a sentence")]
    NotASentence,
}

/// Interpretation of second-order variables for evaluating schemes.
pub trait SecondOrderInterp {
    fn holds(&self, var: &SoVar, args: &[Nat]) -> Option<bool>;
}

/// The guard term `t` when `body` has the bounded shape for quantifier `q`
/// over variable `v`.
pub fn guard_term(q: Quantifier, v: u32, body: &Formula) -> Option<&Term> {
    fn is_guard(f: &Formula, v: u32) -> Option<&Term> {
        match f {
            Formula::Atom(p, args) if p == LT && args.len() == 2 && args[0] == Term::Var(v) && !args[1].mentions(v) => {
                Some(&args[1])
            }
            _ => None,
        }
    }
    match (q, body) {
        (Quantifier::Exists, Formula::Binary(Connective::And, g, _))
        | (Quantifier::Forall, Formula::Binary(Connective::Implies, g, _)) => is_guard(g, v),
        (_, atom) => is_guard(atom, v),
    }
}

/// Whether every quantifier in `f` is guarded.
pub fn is_delta0(f: &Formula) -> bool {
    let mut ok = true;
    f.walk(&mut |g| {
        if let Formula::Quant(q, v, body) = g {
            if guard_term(*q, *v, body).is_none() {
                ok = false;
            }
        }
    });
    ok
}

/// Quantifier level: 0 for guarded formulas, otherwise the number of
/// alternating blocks in the prenex form.
pub fn level(f: &Formula) -> usize {
    if is_delta0(f) {
        0
    } else {
        to_prenex(f).alternations()
    }
}

/// Evaluator for formulas under an assignment.
pub struct Evaluator<'a> {
    m: &'a Structure,
    second_order: Option<&'a dyn SecondOrderInterp>,
    bound: u64,
}

impl<'a> Evaluator<'a> {
    pub fn new(m: &'a Structure, bound: u64) -> Self {
        Self {
            m,
            second_order: None,
            bound,
        }
    }

    pub fn with_second_order(mut self, so: &'a dyn SecondOrderInterp) -> Self {
        self.second_order = Some(so);
        self
    }

    fn args(&self, args: &[Term], env: &[(u32, Nat)]) -> Result<Option<Vec<Nat>>, EvalError> {
        let mut vals = Vec::with_capacity(args.len());
        let mut undecided = false;
        for a in args {
            match self.m.term_value(a, env)? {
                Some(v) => vals.push(v),
                None => undecided = true,
            }
        }
        Ok((!undecided).then_some(vals))
    }

    pub fn eval(&self, f: &Formula, env: &mut Env) -> Result<Verdict, EvalError> {
        Ok(match f {
            Formula::Atom(p, args) => match self.args(args, env)? {
                Some(vals) => Verdict::from_truth(self.m.predicate(p, &vals)?, Certificate::Atomic),
                None => Verdict::Unknown,
            },
            Formula::SoAtom(var, args) => {
                let so = self
                    .second_order
                    .ok_or_else(|| StructureError::SecondOrder(var.to_string()))?;
                match self.args(args, env)? {
                    Some(vals) => Verdict::from_truth(so.holds(var, &vals), Certificate::Atomic),
                    None => Verdict::Unknown,
                }
            }
            Formula::Not(a) => self.eval(a, env)?.negate(),
            Formula::Binary(op, a, b) => {
                let x = self.eval(a, env)?.truth();
                let short = match op {
                    Connective::And => x == Some(false),
                    Connective::Or => x == Some(true),
                    Connective::Implies => x == Some(false),
                    Connective::Iff => false,
                };
                let y = if short { None } else { self.eval(b, env)?.truth() };
                Verdict::from_truth(kleene(*op, x, y), Certificate::Connective)
            }
            Formula::Quant(q, v, body) => self.quantifier(*q, *v, body, env)?,
        })
    }

    fn quantifier(&self, q: Quantifier, v: u32, body: &Formula, env: &mut Env) -> Result<Verdict, EvalError> {
        // instances at or above the guard value are decided by the guard alone
        let guard = match guard_term(q, v, body) {
            Some(t) => self.m.term_value(t, env)?.and_then(|g| g.to_u64()),
            None => None,
        };
        let target = q == Quantifier::Exists;
        let mut all_decided = true;
        // a bare universal guard is false, not vacuous, at and above its value
        let skip = !(q == Quantifier::Forall && body.is_atomic());
        let limit = match guard {
            Some(g) if skip => g.min(self.bound),
            _ => self.bound,
        };
        for a in 0..limit {
            env.push((v, Nat::from(a)));
            let r = self.eval(body, env);
            env.pop();
            match r?.truth() {
                Some(b) if b == target => {
                    let n = Nat::from(a);
                    return Ok(if target {
                        Verdict::True(Certificate::Witness(n))
                    } else {
                        Verdict::False(Certificate::Counterexample(n))
                    });
                }
                Some(_) => {}
                None => all_decided = false,
            }
        }
        if all_decided && guard.is_some_and(|g| g < self.bound) {
            return Ok(Verdict::from_bool(
                !target,
                Certificate::Exhaustion { bound: self.bound },
            ));
        }
        Ok(Verdict::Unknown)
    }
}

/// Evaluates a sentence of `m` within `fuel`.
pub fn eval_sentence(m: &Structure, phi: &Formula, fuel: Fuel) -> Result<Verdict, EvalError> {
    if !phi.is_sentence() {
        return Err(EvalError::NotASentence);
    }
    m.check_formula(phi)?;
    if let Some(v) = phi.second_order_vars().into_iter().next() {
        return Err(StructureError::SecondOrder(v.to_string()).into());
    }
    if phi.size() > fuel.size_bound {
        return Ok(Verdict::Unknown);
    }
    Evaluator::new(m, fuel.quantifier_bound).eval(phi, &mut Vec::new())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::structures::base_arithmetic;
    use crate::syntax::parse;

    fn ev(s: &str, b: u64) -> Verdict {
        eval_sentence(&base_arithmetic(), &parse(s).unwrap(), Fuel::new(b, 100)).unwrap()
    }

    #[test]
    fn examples() {
        assert_eq!(ev("0 = 0", 1), Verdict::True(Certificate::Atomic));
        assert_eq!(
            ev("exists x0. x0 * x0 = 25", 10),
            Verdict::True(Certificate::Witness(Nat::from(5u32)))
        );
        for b in [1, 5, 50] {
            assert_eq!(ev("forall x0. exists x1. x1 = x0 + 1", b), Verdict::Unknown);
        }
    }

    #[test]
    fn bounded_quantifiers_are_certified() {
        assert_eq!(ev("exists x0. (x0 < 5 & x0 = 7)", 10).truth(), Some(false));
        assert_eq!(ev("exists x0. (x0 < 5 & x0 = 7)", 5).truth(), None);
        assert_eq!(ev("forall x0. (x0 < 4 -> x0 * x0 < 10)", 8).truth(), Some(true));
        assert_eq!(ev("forall x0. x0 < 3", 8).truth(), Some(false));
        assert_eq!(ev("exists x0. x0 = 100", 10).truth(), None);
    }

    #[test]
    fn size_bound() {
        let f = parse("0 = 0").unwrap();
        assert_eq!(
            eval_sentence(&base_arithmetic(), &f, Fuel::new(1, 2)).unwrap(),
            Verdict::Unknown
        );
        assert!(eval_sentence(&base_arithmetic(), &f, Fuel::new(1, 3))
            .unwrap()
            .is_decided());
    }

    #[test]
    fn errors() {
        let m = base_arithmetic();
        let fuel = Fuel::new(3, 30);
        assert_eq!(
            eval_sentence(&m, &parse("x0 = 0").unwrap(), fuel),
            Err(EvalError::NotASentence)
        );
        assert!(matches!(
            eval_sentence(&m, &parse("P(1)").unwrap(), fuel),
            Err(EvalError::Structure(StructureError::UnknownSymbol(_)))
        ));
    }

    #[test]
    fn levels() {
        assert_eq!(level(&parse("exists x0. (x0 < 3 & x0 = 1)").unwrap()), 0);
        assert_eq!(level(&parse("exists x0. x0 + x0 = 4").unwrap()), 1);
        assert_eq!(level(&parse("exists x0. forall x1. x0 < x1").unwrap()), 2);
    }
}
