//! Recursive-descent parser for the ASCII formula grammar.
//!
//! Binding strength, loosest first: `<->`, `->` (right associative), `|`,
//! `&`, then `!` and the quantifiers, whose bodies extend as far right as
//! possible. Lowercase identifiers bound by a quantifier (`exists y. ...`)
//! are variables and receive indices above every explicit `xN` in the text.

use std::collections::BTreeMap;

use num_bigint::BigUint;

use super::{Formula, Quantifier, SoVar, SyntaxError, Term, EQ, LT, PLUS, TIMES};

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Number(BigUint),
    LParen,
    RParen,
    Comma,
    Dot,
    And,
    Or,
    Not,
    Implies,
    Iff,
    Eq,
    Lt,
    Plus,
    Star,
}

fn lex(text: &str) -> Result<Vec<(usize, Tok)>, SyntaxError> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        if c.is_ascii_whitespace() {
            i += 1;
            continue;
        }
        let start = i;
        let tok = if c.is_ascii_digit() {
            while i < bytes.len() && bytes[i].is_ascii_digit() {
                i += 1;
            }
            Tok::Number(text[start..i].parse().expect("digits"))
        } else if c.is_ascii_alphabetic() || c == b'_' {
            while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                i += 1;
            }
            Tok::Ident(text[start..i].to_string())
        } else {
            let rest = &text[i..];
            let (tok, len) = if rest.starts_with("<->") {
                (Tok::Iff, 3)
            } else if rest.starts_with("->") {
                (Tok::Implies, 2)
            } else {
                let t = match c {
                    b'(' => Tok::LParen,
                    b')' => Tok::RParen,
                    b',' => Tok::Comma,
                    b'.' => Tok::Dot,
                    b'&' => Tok::And,
                    b'|' => Tok::Or,
                    b'!' => Tok::Not,
                    b'=' => Tok::Eq,
                    b'<' => Tok::Lt,
                    b'+' => Tok::Plus,
                    b'*' => Tok::Star,
                    _ => {
                        return Err(SyntaxError::Parse {
                            pos: i,
                            msg: format!("unexpected character `{}`", text[i..].chars().next().unwrap_or('?')),
                        })
                    }
                };
                (t, 1)
            };
            i += len;
            tok
        };
        out.push((start, tok));
    }
    Ok(out)
}

fn var_index(name: &str) -> Option<u32> {
    let digits = name.strip_prefix('x')?;
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    digits.parse().ok()
}

fn so_var(name: &str) -> Option<SoVar> {
    let rest = name.strip_prefix('Y')?;
    let (arity, index) = match rest.split_once('_') {
        Some((a, i)) => (a, i),
        None => (rest, "0"),
    };
    let all_digits = |s: &str| !s.is_empty() && s.bytes().all(|b| b.is_ascii_digit());
    if !all_digits(arity) || !all_digits(index) {
        return None;
    }
    Some(SoVar::new(arity.parse().ok()?, index.parse().ok()?))
}

fn is_keyword(name: &str) -> bool {
    name == "forall" || name == "exists"
}

struct Parser<'a> {
    toks: &'a [(usize, Tok)],
    pos: usize,
    end: usize,
    /// Named bound variables in scope, innermost last.
    scope: Vec<(String, u32)>,
    named: BTreeMap<String, u32>,
    next_named: u32,
}

type PResult<T> = Result<T, SyntaxError>;

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<&'a Tok> {
        self.toks.get(self.pos).map(|(_, t)| t)
    }

    fn here(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end, |(p, _)| *p)
    }

    fn err<T>(&self, msg: impl Into<String>) -> PResult<T> {
        Err(SyntaxError::Parse {
            pos: self.here(),
            msg: msg.into(),
        })
    }

    fn eat(&mut self, t: &Tok) -> bool {
        if self.peek() == Some(t) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, t: &Tok, what: &str) -> PResult<()> {
        if self.eat(t) {
            Ok(())
        } else {
            self.err(format!("expected {what}"))
        }
    }

    fn formula(&mut self) -> PResult<Formula> {
        let mut left = self.implication()?;
        while self.eat(&Tok::Iff) {
            let right = self.implication()?;
            left = Formula::iff(left, right);
        }
        Ok(left)
    }

    fn implication(&mut self) -> PResult<Formula> {
        let left = self.disjunction()?;
        if self.eat(&Tok::Implies) {
            let right = self.implication()?;
            return Ok(Formula::implies(left, right));
        }
        Ok(left)
    }

    fn disjunction(&mut self) -> PResult<Formula> {
        let mut left = self.conjunction()?;
        while self.eat(&Tok::Or) {
            let right = self.conjunction()?;
            left = Formula::or(left, right);
        }
        Ok(left)
    }

    fn conjunction(&mut self) -> PResult<Formula> {
        let mut left = self.unary()?;
        while self.eat(&Tok::And) {
            let right = self.unary()?;
            left = Formula::and(left, right);
        }
        Ok(left)
    }

    fn unary(&mut self) -> PResult<Formula> {
        if self.eat(&Tok::Not) {
            return Ok(Formula::not(self.unary()?));
        }
        if let Some(Tok::Ident(kw)) = self.peek() {
            if is_keyword(kw) {
                let q = if kw == "forall" {
                    Quantifier::Forall
                } else {
                    Quantifier::Exists
                };
                self.pos += 1;
                let (v, named) = self.binder()?;
                self.expect(&Tok::Dot, "`.` after quantified variable")?;
                if let Some(name) = &named {
                    self.scope.push((name.clone(), v));
                }
                let body = self.formula();
                if named.is_some() {
                    self.scope.pop();
                }
                return Ok(Formula::quant(q, v, body?));
            }
        }
        self.primary()
    }

    fn binder(&mut self) -> PResult<(u32, Option<String>)> {
        match self.peek() {
            Some(Tok::Ident(name)) if !is_keyword(name) && so_var(name).is_none() => {
                self.pos += 1;
                if let Some(i) = var_index(name) {
                    return Ok((i, None));
                }
                let next = &mut self.next_named;
                let v = *self.named.entry(name.clone()).or_insert_with(|| {
                    let v = *next;
                    *next += 1;
                    v
                });
                Ok((v, Some(name.clone())))
            }
            _ => self.err("expected a variable"),
        }
    }

    fn primary(&mut self) -> PResult<Formula> {
        let save = self.pos;
        match self.atom() {
            Ok(f) => Ok(f),
            Err(atom_err) => {
                self.pos = save;
                if self.eat(&Tok::LParen) {
                    let f = self.formula()?;
                    self.expect(&Tok::RParen, "`)`")?;
                    Ok(f)
                } else {
                    Err(atom_err)
                }
            }
        }
    }

    fn atom(&mut self) -> PResult<Formula> {
        if let Some(Tok::Ident(name)) = self.peek() {
            if let Some(var) = so_var(name) {
                self.pos += 1;
                let args = self.args()?;
                return Ok(Formula::SoAtom(var, args));
            }
        }
        let start = self.pos;
        let left = self.term()?;
        if self.eat(&Tok::Eq) {
            return Ok(Formula::Atom(EQ.into(), vec![left, self.term()?]));
        }
        if self.eat(&Tok::Lt) {
            return Ok(Formula::Atom(LT.into(), vec![left, self.term()?]));
        }
        match (&self.toks[start].1, left) {
            (Tok::Ident(_), Term::App(name, args)) => Ok(Formula::Atom(name, args)),
            _ => self.err("expected `=` or `<`"),
        }
    }

    fn args(&mut self) -> PResult<Vec<Term>> {
        self.expect(&Tok::LParen, "`(`")?;
        let mut args = vec![self.term()?];
        while self.eat(&Tok::Comma) {
            args.push(self.term()?);
        }
        self.expect(&Tok::RParen, "`)`")?;
        Ok(args)
    }

    fn term(&mut self) -> PResult<Term> {
        let mut left = self.product()?;
        while self.eat(&Tok::Plus) {
            let right = self.product()?;
            left = Term::app(PLUS, vec![left, right]);
        }
        Ok(left)
    }

    fn product(&mut self) -> PResult<Term> {
        let mut left = self.term_primary()?;
        while self.eat(&Tok::Star) {
            let right = self.term_primary()?;
            left = Term::app(TIMES, vec![left, right]);
        }
        Ok(left)
    }

    fn term_primary(&mut self) -> PResult<Term> {
        match self.peek() {
            Some(Tok::Number(n)) => {
                self.pos += 1;
                Ok(Term::Num(n.clone()))
            }
            Some(Tok::LParen) => {
                self.pos += 1;
                let t = self.term()?;
                self.expect(&Tok::RParen, "`)`")?;
                Ok(t)
            }
            Some(Tok::Ident(name)) if !is_keyword(name) && so_var(name).is_none() => {
                self.pos += 1;
                if let Some(i) = var_index(name) {
                    return Ok(Term::Var(i));
                }
                if let Some((_, v)) = self.scope.iter().rev().find(|(n, _)| n == name) {
                    return Ok(Term::Var(*v));
                }
                if self.peek() == Some(&Tok::LParen) {
                    let args = self.args()?;
                    Ok(Term::app(name.clone(), args))
                } else {
                    Ok(Term::app(name.clone(), vec![]))
                }
            }
            _ => self.err("expected a term"),
        }
    }
}

fn parser<'a>(toks: &'a [(usize, Tok)], text: &str) -> Parser<'a> {
    let max_explicit = toks
        .iter()
        .filter_map(|(_, t)| match t {
            Tok::Ident(n) => var_index(n),
            _ => None,
        })
        .max();
    Parser {
        toks,
        pos: 0,
        end: text.len(),
        scope: Vec::new(),
        named: BTreeMap::new(),
        next_named: max_explicit.map_or(0, |m| m + 1),
    }
}

/// Parses a formula or formula scheme.
pub fn parse(text: &str) -> Result<Formula, SyntaxError> {
    let toks = lex(text)?;
    let mut p = parser(&toks, text);
    let f = p.formula()?;
    if p.pos != toks.len() {
        return p.err("unexpected trailing input");
    }
    Ok(f)
}

/// Parses a term.
pub fn parse_term(text: &str) -> Result<Term, SyntaxError> {
    let toks = lex(text)?;
    let mut p = parser(&toks, text);
    let t = p.term()?;
    if p.pos != toks.len() {
        return p.err("unexpected trailing input");
    }
    Ok(t)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reflexivity_sentence() {
        let f = parse("forall x0. x0 = x0").unwrap();
        assert_eq!(f, Formula::forall(0, Formula::eq(Term::Var(0), Term::Var(0))));
    }

    #[test]
    fn named_bound_variable_in_scheme() {
        let f = parse("exists y. Y2(x0, y)").unwrap();
        assert_eq!(
            f,
            Formula::exists(1, Formula::SoAtom(SoVar::new(2, 0), vec![Term::Var(0), Term::Var(1)]))
        );
    }

    #[test]
    fn precedence() {
        let f = parse("x0 = 0 & x1 = 1 | x2 = 2 -> x3 = 3 -> x4 = 4").unwrap();
        let a = |i: u32| Formula::eq(Term::Var(i), Term::num(i));
        let expected = Formula::implies(
            Formula::or(Formula::and(a(0), a(1)), a(2)),
            Formula::implies(a(3), a(4)),
        );
        assert_eq!(f, expected);
    }

    #[test]
    fn parenthesized_terms_and_formulas() {
        let f = parse("((x0 + x1) * 2 = x2 & (P(x0)))").unwrap();
        assert_eq!(f.to_string(), "(((x0 + x1) * 2) = x2 & P(x0))");
        assert!(parse("S(S(0)) = 2").is_ok());
    }

    #[test]
    fn errors_carry_positions() {
        let Err(SyntaxError::Parse { pos, .. }) = parse("x0 = ") else {
            panic!()
        };
        assert_eq!(pos, 5);
        assert!(parse("forall x0 x0 = x0").is_err());
        assert!(parse("x0 = x0)").is_err());
        assert!(parse("x0 # x1").is_err());
        assert!(parse("3").is_err());
    }
}
