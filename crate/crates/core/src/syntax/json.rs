//! Canonical JSON form of terms and formulas: every node is an object with a
//! `kind` tag and its children.

use serde::{Deserialize, Serialize};
use serde_json::Value;

use super::{Connective, Formula, Quantifier, SoVar, SyntaxError, Term};
use crate::coding::Nat;

#[derive(Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
enum JsonTerm {
    Var { index: u32 },
    Num { value: String },
    App { symbol: String, args: Vec<JsonTerm> },
}

#[derive(Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
enum JsonFormula {
    Atom {
        predicate: String,
        args: Vec<JsonTerm>,
    },
    SecondOrder {
        arity: u32,
        index: u32,
        args: Vec<JsonTerm>,
    },
    Not {
        body: Box<JsonFormula>,
    },
    And {
        left: Box<JsonFormula>,
        right: Box<JsonFormula>,
    },
    Or {
        left: Box<JsonFormula>,
        right: Box<JsonFormula>,
    },
    Implies {
        left: Box<JsonFormula>,
        right: Box<JsonFormula>,
    },
    Iff {
        left: Box<JsonFormula>,
        right: Box<JsonFormula>,
    },
    Forall {
        var: u32,
        body: Box<JsonFormula>,
    },
    Exists {
        var: u32,
        body: Box<JsonFormula>,
    },
}

fn term_out(t: &Term) -> JsonTerm {
    match t {
        Term::Var(i) => JsonTerm::Var { index: *i },
        Term::Num(n) => JsonTerm::Num { value: n.to_string() },
        Term::App(f, args) => JsonTerm::App {
            symbol: f.clone(),
            args: args.iter().map(term_out).collect(),
        },
    }
}

fn term_in(t: JsonTerm) -> Result<Term, SyntaxError> {
    Ok(match t {
        JsonTerm::Var { index } => Term::Var(index),
        JsonTerm::Num { value } => Term::Num(
            value
                .parse::<Nat>()
                .map_err(|_| SyntaxError::Json(format!("bad numeral `{value}`")))?,
        ),
        JsonTerm::App { symbol, args } => Term::app(symbol, args.into_iter().map(term_in).collect::<Result<_, _>>()?),
    })
}

fn formula_out(f: &Formula) -> JsonFormula {
    let b = |x: &Formula| Box::new(formula_out(x));
    match f {
        Formula::Atom(p, args) => JsonFormula::Atom {
            predicate: p.clone(),
            args: args.iter().map(term_out).collect(),
        },
        Formula::SoAtom(v, args) => JsonFormula::SecondOrder {
            arity: v.arity,
            index: v.index,
            args: args.iter().map(term_out).collect(),
        },
        Formula::Not(a) => JsonFormula::Not { body: b(a) },
        Formula::Binary(op, l, r) => {
            let (left, right) = (b(l), b(r));
            match op {
                Connective::And => JsonFormula::And { left, right },
                Connective::Or => JsonFormula::Or { left, right },
                Connective::Implies => JsonFormula::Implies { left, right },
                Connective::Iff => JsonFormula::Iff { left, right },
            }
        }
        Formula::Quant(Quantifier::Forall, v, body) => JsonFormula::Forall { var: *v, body: b(body) },
        Formula::Quant(Quantifier::Exists, v, body) => JsonFormula::Exists { var: *v, body: b(body) },
    }
}

fn formula_in(f: JsonFormula) -> Result<Formula, SyntaxError> {
    let terms = |args: Vec<JsonTerm>| args.into_iter().map(term_in).collect::<Result<Vec<_>, _>>();
    let bin = |op, l: Box<JsonFormula>, r: Box<JsonFormula>| -> Result<Formula, SyntaxError> {
        Ok(Formula::binary(op, formula_in(*l)?, formula_in(*r)?))
    };
    match f {
        JsonFormula::Atom { predicate, args } => Ok(Formula::Atom(predicate, terms(args)?)),
        JsonFormula::SecondOrder { arity, index, args } => {
            let args = terms(args)?;
            if args.len() != arity as usize {
                return Err(SyntaxError::Arity {
                    symbol: SoVar::new(arity, index).to_string(),
                    expected: arity as usize,
                    found: args.len(),
                });
            }
            Ok(Formula::SoAtom(SoVar::new(arity, index), args))
        }
        JsonFormula::Not { body } => Ok(Formula::not(formula_in(*body)?)),
        JsonFormula::And { left, right } => bin(Connective::And, left, right),
        JsonFormula::Or { left, right } => bin(Connective::Or, left, right),
        JsonFormula::Implies { left, right } => bin(Connective::Implies, left, right),
        JsonFormula::Iff { left, right } => bin(Connective::Iff, left, right),
        JsonFormula::Forall { var, body } => Ok(Formula::forall(var, formula_in(*body)?)),
        JsonFormula::Exists { var, body } => Ok(Formula::exists(var, formula_in(*body)?)),
    }
}

pub fn formula_to_json(f: &Formula) -> Value {
    serde_json::to_value(formula_out(f)).expect("AST serializes")
}

pub fn formula_from_json(v: &Value) -> Result<Formula, SyntaxError> {
    let raw: JsonFormula = serde_json::from_value(v.clone()).map_err(|e| SyntaxError::Json(e.to_string()))?;
    formula_in(raw)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::parse;

    #[test]
    fn json_round_trip() {
        let f = parse("forall x0. (Y2_1(x0, 7) -> exists x1. x0 < (x1 + 1))").unwrap();
        let v = formula_to_json(&f);
        assert_eq!(v["kind"], "forall");
        assert_eq!(v["body"]["kind"], "implies");
        assert_eq!(formula_from_json(&v).unwrap(), f);
    }

    #[test]
    fn rejects_unknown_kinds() {
        let v = serde_json::json!({"kind": "xor", "left": null});
        assert!(formula_from_json(&v).is_err());
    }
}
