//! First-order terms and formulas, formula schemes with free second-order
//! variables, and the syntactic transformations used by the rest of the crate.
//!
//! Numerals are a term kind of their own. Every constructor in this module
//! keeps terms in a normal form in which the canonical binary numeral terms
//! over `0`, `S` and `*` collapse to [`Term::Num`]; see [`Term::app`].

mod godel;
mod json;
mod parse;
mod prenex;
mod print;
mod skolem;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_traits::{One, Zero};
use thiserror::Error;

use crate::coding::Nat;

pub use godel::{decode_formula, decode_term, formula_code, godel_number, polish_symbols, term_code};
pub use json::{formula_from_json, formula_to_json};
pub use parse::{parse, parse_term};
pub use prenex::{to_prenex, PrenexForm};
pub use skolem::{skolem_formula, SkolemForm, SkolemSlot};

/// Name of the constant zero.
pub const ZERO: &str = "0";
/// Name of the successor function.
pub const SUCC: &str = "S";
/// Name of addition.
pub const PLUS: &str = "+";
/// Name of multiplication.
pub const TIMES: &str = "*";
/// Name of equality.
pub const EQ: &str = "=";
/// Name of the strict order.
pub const LT: &str = "<";

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SyntaxError {
    #[error("syntax error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("arity mismatch for {symbol}: expected {expected}, found {found}")]
    Arity {
        symbol: String,
        expected: usize,
        found: usize,
    },
    #[error("symbol `{0}` is not coded")]
    Uncoded(String),
    #[error("not a formula code")]
    NotAFormulaCode,
    #[error("not a term code")]
    NotATermCode,
    #[error("formula is not closed")]
    NotClosed,
    #[error("formula is not in prenex form")]
    NotPrenex,
    #[error("malformed JSON AST: {0}")]
    Json(String),
}

/// A first-order term.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Term {
    Var(u32),
    /// The numeral for a natural number.
    Num(Nat),
    /// Application of a function symbol; constants have no arguments.
    App(String, Vec<Term>),
}

impl Term {
    pub fn var(i: u32) -> Term {
        Term::Var(i)
    }

    pub fn num(n: impl Into<Nat>) -> Term {
        Term::Num(n.into())
    }

    /// Normalizing application constructor.
    ///
    /// `0`, `S(0)`, `S(2k)` and `*(S(1), k)` (with `k >= 1`) become numerals,
    /// which are exactly the shapes produced by the numeral serialization.
    pub fn app(name: impl Into<String>, args: Vec<Term>) -> Term {
        let name = name.into();
        match (name.as_str(), args.as_slice()) {
            (ZERO, []) => return Term::Num(Nat::zero()),
            (SUCC, [Term::Num(n)]) if n.is_zero() || (!n.bit(0)) => {
                return Term::Num(n + 1u32);
            }
            (TIMES, [Term::App(s, inner), Term::Num(k)]) if s == SUCC && !k.is_zero() => {
                if let [Term::Num(one)] = inner.as_slice() {
                    if one.is_one() {
                        return Term::Num(k << 1usize);
                    }
                }
            }
            _ => {}
        }
        Term::App(name, args)
    }

    pub fn succ(t: Term) -> Term {
        Term::app(SUCC, vec![t])
    }

    pub fn plus(a: Term, b: Term) -> Term {
        Term::app(PLUS, vec![a, b])
    }

    pub fn times(a: Term, b: Term) -> Term {
        Term::app(TIMES, vec![a, b])
    }

    pub fn is_closed(&self) -> bool {
        match self {
            Term::Var(_) => false,
            Term::Num(_) => true,
            Term::App(_, args) => args.iter().all(Term::is_closed),
        }
    }

    pub fn vars(&self, out: &mut BTreeSet<u32>) {
        match self {
            Term::Var(i) => {
                out.insert(*i);
            }
            Term::Num(_) => {}
            Term::App(_, args) => args.iter().for_each(|a| a.vars(out)),
        }
    }

    pub fn var_set(&self) -> BTreeSet<u32> {
        let mut out = BTreeSet::new();
        self.vars(&mut out);
        out
    }

    pub fn mentions(&self, v: u32) -> bool {
        match self {
            Term::Var(i) => *i == v,
            Term::Num(_) => false,
            Term::App(_, args) => args.iter().any(|a| a.mentions(v)),
        }
    }

    /// Number of nodes; a numeral counts as one.
    pub fn size(&self) -> usize {
        match self {
            Term::Var(_) | Term::Num(_) => 1,
            Term::App(_, args) => 1 + args.iter().map(Term::size).sum::<usize>(),
        }
    }

    pub fn max_var(&self) -> Option<u32> {
        self.var_set().last().copied()
    }

    /// Simultaneous substitution of terms for variables.
    pub fn substitute(&self, map: &BTreeMap<u32, Term>) -> Term {
        match self {
            Term::Var(i) => map.get(i).cloned().unwrap_or(Term::Var(*i)),
            Term::Num(_) => self.clone(),
            Term::App(f, args) => Term::app(f.clone(), args.iter().map(|a| a.substitute(map)).collect()),
        }
    }

    /// Function symbols used, with the arities they are used at.
    pub fn symbols(&self, out: &mut BTreeSet<(String, usize)>) {
        if let Term::App(f, args) = self {
            out.insert((f.clone(), args.len()));
            args.iter().for_each(|a| a.symbols(out));
        }
    }
}

/// Binary connectives.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Connective {
    And,
    Or,
    Implies,
    Iff,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Quantifier {
    Forall,
    Exists,
}

impl Quantifier {
    pub fn dual(self) -> Quantifier {
        match self {
            Quantifier::Forall => Quantifier::Exists,
            Quantifier::Exists => Quantifier::Forall,
        }
    }
}

/// A second-order variable `Y<arity>_<index>`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SoVar {
    pub arity: u32,
    pub index: u32,
}

impl SoVar {
    pub fn new(arity: u32, index: u32) -> Self {
        Self { arity, index }
    }
}

impl fmt::Display for SoVar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Y{}_{}", self.arity, self.index)
    }
}

/// A formula, possibly containing free second-order variables.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Formula {
    /// Atomic formula over a predicate symbol of the structure.
    Atom(String, Vec<Term>),
    /// Atomic formula over a second-order variable.
    SoAtom(SoVar, Vec<Term>),
    Not(Box<Formula>),
    Binary(Connective, Box<Formula>, Box<Formula>),
    Quant(Quantifier, u32, Box<Formula>),
}

/// A formula whose atoms may use second-order variables. There is no
/// second-order quantification, so schemes share the [`Formula`] type.
pub type FormulaScheme = Formula;

/// Symbol names with their arities.
pub type SymbolSet = BTreeSet<(String, usize)>;

impl Formula {
    pub fn atom(pred: impl Into<String>, args: Vec<Term>) -> Formula {
        Formula::Atom(pred.into(), args)
    }

    pub fn eq(a: Term, b: Term) -> Formula {
        Formula::Atom(EQ.into(), vec![a, b])
    }

    pub fn lt(a: Term, b: Term) -> Formula {
        Formula::Atom(LT.into(), vec![a, b])
    }

    #[allow(clippy::should_implement_trait)]
    pub fn not(f: Formula) -> Formula {
        Formula::Not(Box::new(f))
    }

    pub fn binary(op: Connective, a: Formula, b: Formula) -> Formula {
        Formula::Binary(op, Box::new(a), Box::new(b))
    }

    pub fn and(a: Formula, b: Formula) -> Formula {
        Formula::binary(Connective::And, a, b)
    }

    pub fn or(a: Formula, b: Formula) -> Formula {
        Formula::binary(Connective::Or, a, b)
    }

    pub fn implies(a: Formula, b: Formula) -> Formula {
        Formula::binary(Connective::Implies, a, b)
    }

    pub fn iff(a: Formula, b: Formula) -> Formula {
        Formula::binary(Connective::Iff, a, b)
    }

    pub fn quant(q: Quantifier, v: u32, body: Formula) -> Formula {
        Formula::Quant(q, v, Box::new(body))
    }

    pub fn forall(v: u32, body: Formula) -> Formula {
        Formula::quant(Quantifier::Forall, v, body)
    }

    pub fn exists(v: u32, body: Formula) -> Formula {
        Formula::quant(Quantifier::Exists, v, body)
    }

    pub fn is_atomic(&self) -> bool {
        matches!(self, Formula::Atom(..) | Formula::SoAtom(..))
    }

    pub fn free_vars(&self) -> BTreeSet<u32> {
        let mut out = BTreeSet::new();
        self.collect_free(&mut Vec::new(), &mut out);
        out
    }

    fn collect_free(&self, bound: &mut Vec<u32>, out: &mut BTreeSet<u32>) {
        match self {
            Formula::Atom(_, args) | Formula::SoAtom(_, args) => {
                for a in args {
                    for v in a.var_set() {
                        if !bound.contains(&v) {
                            out.insert(v);
                        }
                    }
                }
            }
            Formula::Not(a) => a.collect_free(bound, out),
            Formula::Binary(_, a, b) => {
                a.collect_free(bound, out);
                b.collect_free(bound, out);
            }
            Formula::Quant(_, v, body) => {
                bound.push(*v);
                body.collect_free(bound, out);
                bound.pop();
            }
        }
    }

    pub fn is_free(&self, v: u32) -> bool {
        match self {
            Formula::Atom(_, args) | Formula::SoAtom(_, args) => args.iter().any(|a| a.mentions(v)),
            Formula::Not(a) => a.is_free(v),
            Formula::Binary(_, a, b) => a.is_free(v) || b.is_free(v),
            Formula::Quant(_, w, body) => *w != v && body.is_free(v),
        }
    }

    pub fn is_sentence(&self) -> bool {
        self.free_vars().is_empty()
    }

    /// All variable indices occurring, free or bound.
    pub fn all_vars(&self) -> BTreeSet<u32> {
        let mut out = BTreeSet::new();
        self.walk(&mut |f| match f {
            Formula::Atom(_, args) | Formula::SoAtom(_, args) => args.iter().for_each(|a| a.vars(&mut out)),
            Formula::Quant(_, v, _) => {
                out.insert(*v);
            }
            _ => {}
        });
        out
    }

    /// Smallest variable index not occurring anywhere in the formula.
    pub fn fresh_var(&self) -> u32 {
        self.all_vars().last().map_or(0, |m| m + 1)
    }

    /// Pre-order traversal of subformulas.
    pub fn walk<'a>(&'a self, visit: &mut impl FnMut(&'a Formula)) {
        visit(self);
        match self {
            Formula::Atom(..) | Formula::SoAtom(..) => {}
            Formula::Not(a) | Formula::Quant(_, _, a) => a.walk(visit),
            Formula::Binary(_, a, b) => {
                a.walk(visit);
                b.walk(visit);
            }
        }
    }

    /// Number of nodes; a numeral counts as one.
    pub fn size(&self) -> usize {
        match self {
            Formula::Atom(_, args) | Formula::SoAtom(_, args) => 1 + args.iter().map(Term::size).sum::<usize>(),
            Formula::Not(a) | Formula::Quant(_, _, a) => 1 + a.size(),
            Formula::Binary(_, a, b) => 1 + a.size() + b.size(),
        }
    }

    pub fn depth(&self) -> usize {
        match self {
            Formula::Atom(..) | Formula::SoAtom(..) => 0,
            Formula::Not(a) | Formula::Quant(_, _, a) => 1 + a.depth(),
            Formula::Binary(_, a, b) => 1 + a.depth().max(b.depth()),
        }
    }

    pub fn is_quantifier_free(&self) -> bool {
        let mut free = true;
        self.walk(&mut |f| {
            if matches!(f, Formula::Quant(..)) {
                free = false;
            }
        });
        free
    }

    pub fn is_prenex(&self) -> bool {
        match self {
            Formula::Quant(_, _, body) => body.is_prenex(),
            other => other.is_quantifier_free(),
        }
    }

    /// Second-order variables occurring in the formula, sorted.
    pub fn second_order_vars(&self) -> BTreeSet<SoVar> {
        let mut out = BTreeSet::new();
        self.walk(&mut |f| {
            if let Formula::SoAtom(v, _) = f {
                out.insert(*v);
            }
        });
        out
    }

    pub fn is_scheme(&self) -> bool {
        !self.second_order_vars().is_empty()
    }

    /// Predicate and function symbols used, with their arities.
    pub fn symbols(&self) -> (SymbolSet, SymbolSet) {
        let mut preds = BTreeSet::new();
        let mut funcs = BTreeSet::new();
        self.walk(&mut |f| match f {
            Formula::Atom(p, args) => {
                preds.insert((p.clone(), args.len()));
                args.iter().for_each(|a| a.symbols(&mut funcs));
            }
            Formula::SoAtom(_, args) => args.iter().for_each(|a| a.symbols(&mut funcs)),
            _ => {}
        });
        (preds, funcs)
    }

    /// Capture-avoiding simultaneous substitution of terms for free variables.
    pub fn substitute(&self, map: &BTreeMap<u32, Term>) -> Formula {
        let mut avoid: BTreeSet<u32> = self.all_vars();
        for (k, t) in map {
            avoid.insert(*k);
            t.vars(&mut avoid);
        }
        let mut next = avoid.last().map_or(0, |m| m + 1);
        self.subst_inner(map, &mut next)
    }

    fn subst_inner(&self, map: &BTreeMap<u32, Term>, next: &mut u32) -> Formula {
        if map.is_empty() {
            return self.clone();
        }
        match self {
            Formula::Atom(p, args) => Formula::Atom(p.clone(), args.iter().map(|a| a.substitute(map)).collect()),
            Formula::SoAtom(v, args) => Formula::SoAtom(*v, args.iter().map(|a| a.substitute(map)).collect()),
            Formula::Not(a) => Formula::not(a.subst_inner(map, next)),
            Formula::Binary(op, a, b) => Formula::binary(*op, a.subst_inner(map, next), b.subst_inner(map, next)),
            Formula::Quant(q, v, body) => {
                let mut inner = map.clone();
                inner.remove(v);
                inner.retain(|k, _| body.is_free(*k));
                let captures = inner.values().any(|t| t.mentions(*v));
                if captures {
                    let w = *next;
                    *next += 1;
                    let renamed = body.subst_inner(&BTreeMap::from([(*v, Term::Var(w))]), next);
                    Formula::quant(*q, w, renamed.subst_inner(&inner, next))
                } else {
                    Formula::quant(*q, *v, body.subst_inner(&inner, next))
                }
            }
        }
    }

    /// Instantiates the free variable `v` with the numeral `n`.
    pub fn instantiate(&self, v: u32, n: &Nat) -> Formula {
        self.substitute(&BTreeMap::from([(v, Term::Num(n.clone()))]))
    }

    /// Renames bound variables that lie in `avoid` to fresh indices.
    pub fn rename_bound(&self, avoid: &BTreeSet<u32>, next: &mut u32) -> Formula {
        match self {
            Formula::Atom(..) | Formula::SoAtom(..) => self.clone(),
            Formula::Not(a) => Formula::not(a.rename_bound(avoid, next)),
            Formula::Binary(op, a, b) => Formula::binary(*op, a.rename_bound(avoid, next), b.rename_bound(avoid, next)),
            Formula::Quant(q, v, body) => {
                let body = body.rename_bound(avoid, next);
                if avoid.contains(v) {
                    let w = *next;
                    *next += 1;
                    let body = body.substitute(&BTreeMap::from([(*v, Term::Var(w))]));
                    Formula::quant(*q, w, body)
                } else {
                    Formula::quant(*q, *v, body)
                }
            }
        }
    }
}

/// The value assigned to a second-order variable by [`substitute_scheme`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SchemeValue {
    /// A predicate symbol of the structure, of the variable's arity.
    Predicate(String),
    /// A formula. Its `arity` lowest-indexed free variables bind to the
    /// argument slots in order; the remaining free variables are parameters.
    Formula(Formula),
}

/// Replaces second-order variables by predicates or formulas.
pub fn substitute_scheme(
    psi: &FormulaScheme,
    assignment: &BTreeMap<SoVar, SchemeValue>,
) -> Result<Formula, SyntaxError> {
    let mut params = BTreeSet::new();
    let mut all = psi.all_vars();
    for (var, value) in assignment {
        if let SchemeValue::Formula(phi) = value {
            let free: Vec<u32> = phi.free_vars().into_iter().collect();
            if (var.arity as usize) > free.len() {
                return Err(SyntaxError::Arity {
                    symbol: var.to_string(),
                    expected: var.arity as usize,
                    found: free.len(),
                });
            }
            params.extend(free[var.arity as usize..].iter().copied());
            all.extend(phi.all_vars());
        }
    }
    let mut next = all.last().map_or(0, |m| m + 1);
    let psi = psi.rename_bound(&params, &mut next);
    replace_so(&psi, assignment)
}

fn replace_so(f: &Formula, assignment: &BTreeMap<SoVar, SchemeValue>) -> Result<Formula, SyntaxError> {
    Ok(match f {
        Formula::Atom(..) => f.clone(),
        Formula::SoAtom(var, args) => {
            if args.len() != var.arity as usize {
                return Err(SyntaxError::Arity {
                    symbol: var.to_string(),
                    expected: var.arity as usize,
                    found: args.len(),
                });
            }
            match assignment.get(var) {
                None => f.clone(),
                Some(SchemeValue::Predicate(p)) => Formula::Atom(p.clone(), args.clone()),
                Some(SchemeValue::Formula(phi)) => {
                    let slots = phi.free_vars().into_iter().take(args.len());
                    let map: BTreeMap<u32, Term> = slots.zip(args.iter().cloned()).collect();
                    phi.substitute(&map)
                }
            }
        }
        Formula::Not(a) => Formula::not(replace_so(a, assignment)?),
        Formula::Binary(op, a, b) => Formula::binary(*op, replace_so(a, assignment)?, replace_so(b, assignment)?),
        Formula::Quant(q, v, body) => Formula::quant(*q, *v, replace_so(body, assignment)?),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Formula {
        parse(s).unwrap()
    }

    #[test]
    fn numeral_normal_form() {
        assert_eq!(Term::app(ZERO, vec![]), Term::num(0u32));
        assert_eq!(Term::succ(Term::num(0u32)), Term::num(1u32));
        assert_eq!(Term::succ(Term::num(4u32)), Term::num(5u32));
        // S(1) stays an application; it is the numeral two's prefix
        let two_head = Term::succ(Term::num(1u32));
        assert!(matches!(two_head, Term::App(..)));
        assert_eq!(Term::times(two_head, Term::num(3u32)), Term::num(6u32));
        assert!(matches!(Term::times(Term::num(2u32), Term::num(3u32)), Term::App(..)));
    }

    #[test]
    fn free_variables() {
        let f = p("forall x0. x0 < x1");
        assert_eq!(f.free_vars(), BTreeSet::from([1]));
        assert!(p("forall x0. x0 = x0").is_sentence());
    }

    #[test]
    fn substitution_avoids_capture() {
        let f = p("exists x1. x0 < x1");
        let g = f.substitute(&BTreeMap::from([(0, Term::Var(1))]));
        assert_eq!(g.to_string(), "exists x2. x1 < x2");
    }

    #[test]
    fn scheme_substitution_with_predicate_and_formula() {
        let psi = p("forall x0. Y1_0(x0)");
        let by_formula = substitute_scheme(
            &psi,
            &BTreeMap::from([(SoVar::new(1, 0), SchemeValue::Formula(p("x0 = 0")))]),
        )
        .unwrap();
        assert_eq!(by_formula, p("forall x0. x0 = 0"));

        let with_param = substitute_scheme(
            &psi,
            &BTreeMap::from([(SoVar::new(1, 0), SchemeValue::Formula(p("x0 < x3")))]),
        )
        .unwrap();
        assert_eq!(with_param, p("forall x0. x0 < x3"));
        assert_eq!(with_param.free_vars(), BTreeSet::from([3]));

        let by_pred = substitute_scheme(
            &psi,
            &BTreeMap::from([(SoVar::new(1, 0), SchemeValue::Predicate("Z".into()))]),
        )
        .unwrap();
        assert_eq!(by_pred, p("forall x0. Z(x0)"));
        assert_eq!(substitute_scheme(&psi, &BTreeMap::new()).unwrap(), psi);
    }

    #[test]
    fn parameters_are_not_captured() {
        // the parameter x1 would be captured by the binder of psi
        let psi = p("forall x1. Y1_0(x1)");
        let out = substitute_scheme(
            &psi,
            &BTreeMap::from([(SoVar::new(1, 0), SchemeValue::Formula(p("x0 < x1")))]),
        )
        .unwrap();
        assert_eq!(out.free_vars(), BTreeSet::from([1]));
        let Formula::Quant(_, v, _) = &out else { panic!() };
        assert_ne!(*v, 1);
    }

    #[test]
    fn arity_errors() {
        let psi = p("Y2_0(x0, x1)");
        let err = substitute_scheme(
            &psi,
            &BTreeMap::from([(SoVar::new(2, 0), SchemeValue::Formula(p("x0 = x0")))]),
        );
        assert!(matches!(err, Err(SyntaxError::Arity { .. })));
    }
}
