//! Goedel numbers of terms and formulas.
//!
//! A formula is serialized in Polish notation: connectives and quantifiers
//! precede their operands, a quantifier is followed by its variable, and every
//! symbol carries its arity, so no parentheses are needed. Numerals are
//! written as binary terms over `0`, `S` and `*`:
//! `0`, `S(0)`, `*(S(S(0)), k)` for `2k`, `S(*(S(S(0)), k))` for `2k + 1`.

use num_traits::{One, Zero};

use super::{Connective, Formula, Quantifier, SoVar, SyntaxError, Term, SUCC, TIMES, ZERO};
use crate::coding::{decode_seq, decode_symbol, encode_seq, symbol_code, LogicalSymbol, Nat, Symbol};
use crate::structures::{Coding, SymbolClass};

fn function_symbol(name: &str, arity: usize, c: &Coding) -> Result<Symbol, SyntaxError> {
    match c.get(name) {
        Some(s) if s.class == SymbolClass::Function && s.arity as usize == arity => Ok(s.symbol()),
        Some(s) => Err(SyntaxError::Arity {
            symbol: name.to_string(),
            expected: s.arity as usize,
            found: arity,
        }),
        None => Err(SyntaxError::Uncoded(name.to_string())),
    }
}

fn numeral_symbols(n: &Nat, c: &Coding, out: &mut Vec<Symbol>) -> Result<(), SyntaxError> {
    let zero = function_symbol(ZERO, 0, c)?;
    let succ = function_symbol(SUCC, 1, c)?;
    let times = function_symbol(TIMES, 2, c)?;
    // Binary expansion, least significant step outermost.
    let bits = n.bits();
    for i in 0..bits.saturating_sub(1) {
        if n.bit(i) {
            out.push(succ);
        }
        out.extend([times, succ, succ, zero]);
    }
    if bits > 0 {
        out.push(succ);
    }
    out.push(zero);
    Ok(())
}

fn term_symbols(t: &Term, c: &Coding, out: &mut Vec<Symbol>) -> Result<(), SyntaxError> {
    match t {
        Term::Var(i) => out.push(Symbol::Variable(*i)),
        Term::Num(n) => numeral_symbols(n, c, out)?,
        Term::App(f, args) => {
            out.push(function_symbol(f, args.len(), c)?);
            for a in args {
                term_symbols(a, c, out)?;
            }
        }
    }
    Ok(())
}

fn formula_symbols(f: &Formula, c: &Coding, out: &mut Vec<Symbol>) -> Result<(), SyntaxError> {
    match f {
        Formula::Atom(p, args) => {
            match c.get(p) {
                Some(s) if s.class == SymbolClass::Predicate && s.arity as usize == args.len() => out.push(s.symbol()),
                Some(s) => {
                    return Err(SyntaxError::Arity {
                        symbol: p.clone(),
                        expected: s.arity as usize,
                        found: args.len(),
                    })
                }
                None => return Err(SyntaxError::Uncoded(p.clone())),
            }
            for a in args {
                term_symbols(a, c, out)?;
            }
        }
        Formula::SoAtom(v, args) => {
            out.push(Symbol::SecondOrder {
                index: v.index,
                arity: v.arity,
            });
            for a in args {
                term_symbols(a, c, out)?;
            }
        }
        Formula::Not(a) => {
            out.push(Symbol::Logical(LogicalSymbol::Not));
            formula_symbols(a, c, out)?;
        }
        Formula::Binary(op, a, b) => {
            out.push(Symbol::Logical(match op {
                Connective::And => LogicalSymbol::And,
                Connective::Or => LogicalSymbol::Or,
                Connective::Implies => LogicalSymbol::Implies,
                Connective::Iff => LogicalSymbol::Iff,
            }));
            formula_symbols(a, c, out)?;
            formula_symbols(b, c, out)?;
        }
        Formula::Quant(q, v, body) => {
            out.push(Symbol::Logical(match q {
                Quantifier::Forall => LogicalSymbol::Forall,
                Quantifier::Exists => LogicalSymbol::Exists,
            }));
            out.push(Symbol::Variable(*v));
            formula_symbols(body, c, out)?;
        }
    }
    Ok(())
}

/// The Polish serialization of a formula as resolved symbols.
pub fn polish_symbols(f: &Formula, c: &Coding) -> Result<Vec<Symbol>, SyntaxError> {
    let mut out = Vec::new();
    formula_symbols(f, c, &mut out)?;
    Ok(out)
}

fn encode_symbols(symbols: &[Symbol]) -> Nat {
    let codes: Vec<Nat> = symbols
        .iter()
        .map(|s| symbol_code(s).expect("Polish serializations avoid parentheses").value)
        .collect();
    encode_seq(&codes)
}

/// The `c`-Goedel number of a formula or scheme.
pub fn godel_number(f: &Formula, c: &Coding) -> Result<Nat, SyntaxError> {
    Ok(encode_symbols(&polish_symbols(f, c)?))
}

/// Alias of [`godel_number`].
pub fn formula_code(f: &Formula, c: &Coding) -> Result<Nat, SyntaxError> {
    godel_number(f, c)
}

/// The `c`-Goedel number of a term.
pub fn term_code(t: &Term, c: &Coding) -> Result<Nat, SyntaxError> {
    let mut out = Vec::new();
    term_symbols(t, c, &mut out)?;
    Ok(encode_symbols(&out))
}

struct Reader<'a> {
    syms: Vec<Symbol>,
    pos: usize,
    c: &'a Coding,
}

impl Reader<'_> {
    fn next(&mut self) -> Option<Symbol> {
        let s = self.syms.get(self.pos).copied();
        self.pos += 1;
        s
    }

    /// Reads a canonical numeral without recursion, or leaves `pos` unchanged.
    fn numeral(&mut self) -> Option<Nat> {
        let zero = function_symbol(ZERO, 0, self.c).ok()?;
        let succ = function_symbol(SUCC, 1, self.c).ok()?;
        let times = function_symbol(TIMES, 2, self.c).ok()?;
        let start = self.pos;
        let at = |r: &Self, k: usize| r.syms.get(r.pos + k).copied();
        let mut low = Vec::new();
        let top = loop {
            if low.is_empty() && at(self, 0) == Some(zero) {
                self.pos += 1;
                break Nat::zero();
            }
            if at(self, 0) == Some(succ) && at(self, 1) == Some(zero) {
                self.pos += 2;
                break Nat::one();
            }
            let odd = at(self, 0) == Some(succ);
            let off = usize::from(odd);
            let block = [times, succ, succ, zero];
            if (0..4).all(|k| at(self, off + k) == Some(block[k])) {
                self.pos += off + 4;
                low.push(odd);
            } else {
                self.pos = start;
                return None;
            }
        };
        Some(low.iter().rev().fold(top, |acc, &odd| (acc << 1usize) + u32::from(odd)))
    }

    fn term(&mut self) -> Option<Term> {
        if let Some(n) = self.numeral() {
            return Some(Term::Num(n));
        }
        match self.next()? {
            Symbol::Variable(i) => Some(Term::Var(i)),
            s @ Symbol::Function { .. } => {
                let coded = self.c.resolve(&s)?;
                let name = coded.name.clone();
                let args = (0..coded.arity).map(|_| self.term()).collect::<Option<Vec<_>>>()?;
                Some(Term::app(name, args))
            }
            _ => None,
        }
    }

    fn terms(&mut self, n: u32) -> Option<Vec<Term>> {
        (0..n).map(|_| self.term()).collect()
    }

    fn formula(&mut self) -> Option<Formula> {
        match self.next()? {
            s @ Symbol::Predicate { arity, .. } => {
                let name = self.c.resolve(&s)?.name.clone();
                Some(Formula::Atom(name, self.terms(arity)?))
            }
            Symbol::SecondOrder { index, arity } => Some(Formula::SoAtom(SoVar::new(arity, index), self.terms(arity)?)),
            Symbol::Logical(l) => match l {
                LogicalSymbol::Not => Some(Formula::not(self.formula()?)),
                LogicalSymbol::And | LogicalSymbol::Or | LogicalSymbol::Implies | LogicalSymbol::Iff => {
                    let op = match l {
                        LogicalSymbol::And => Connective::And,
                        LogicalSymbol::Or => Connective::Or,
                        LogicalSymbol::Implies => Connective::Implies,
                        _ => Connective::Iff,
                    };
                    let a = self.formula()?;
                    let b = self.formula()?;
                    Some(Formula::binary(op, a, b))
                }
                LogicalSymbol::Forall | LogicalSymbol::Exists => {
                    let q = if l == LogicalSymbol::Forall {
                        Quantifier::Forall
                    } else {
                        Quantifier::Exists
                    };
                    let Symbol::Variable(v) = self.next()? else { return None };
                    Some(Formula::quant(q, v, self.formula()?))
                }
                LogicalSymbol::LeftParen | LogicalSymbol::RightParen => None,
            },
            _ => None,
        }
    }
}

fn reader<'a>(code: &Nat, c: &'a Coding) -> Option<Reader<'a>> {
    let seq = decode_seq(code)?;
    let syms = seq.iter().map(|s| decode_symbol(s).ok()).collect::<Option<Vec<_>>>()?;
    Some(Reader { syms, pos: 0, c })
}

/// Inverse of [`godel_number`].
pub fn decode_formula(code: &Nat, c: &Coding) -> Result<Formula, SyntaxError> {
    let mut r = reader(code, c).ok_or(SyntaxError::NotAFormulaCode)?;
    let f = r.formula().ok_or(SyntaxError::NotAFormulaCode)?;
    if r.pos != r.syms.len() {
        return Err(SyntaxError::NotAFormulaCode);
    }
    Ok(f)
}

/// Inverse of [`term_code`].
pub fn decode_term(code: &Nat, c: &Coding) -> Result<Term, SyntaxError> {
    let mut r = reader(code, c).ok_or(SyntaxError::NotATermCode)?;
    let t = r.term().ok_or(SyntaxError::NotATermCode)?;
    if r.pos != r.syms.len() {
        return Err(SyntaxError::NotATermCode);
    }
    Ok(t)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::structures::base_arithmetic;
    use crate::syntax::parse;

    fn coding() -> Coding {
        Coding::enumeration(&base_arithmetic())
    }

    #[test]
    fn round_trip_small() {
        let c = coding();
        for s in [
            "forall x0. x0 = x0",
            "exists x3. (x3 < 1000000007 & !S(x3) = (x3 * 2))",
            "Y2_5(x0, 12)",
            "(0 = 1 <-> 1 = 0)",
        ] {
            let f = parse(s).unwrap();
            let g = godel_number(&f, &c).unwrap();
            assert_eq!(decode_formula(&g, &c).unwrap(), f, "{s}");
        }
    }

    #[test]
    fn numerals_expand_to_binary_terms() {
        let c = coding();
        // unary numerals are ordinary terms
        let three = parse("S(S(S(0))) = 3").unwrap();
        let Formula::Atom(_, args) = &three else { panic!() };
        assert_ne!(args[0], args[1]);
        let explicit = parse("S(((S(S(0))) * 1)) = 0").unwrap();
        assert_eq!(explicit, parse("3 = 0").unwrap());
        for n in [0u64, 1, 2, 3, 10, 255, 1 << 40] {
            let t = Term::num(n);
            assert_eq!(decode_term(&term_code(&t, &c).unwrap(), &c).unwrap(), t);
        }
    }

    #[test]
    fn uncoded_symbols() {
        let c = coding();
        let f = parse("P(x0)").unwrap();
        assert_eq!(godel_number(&f, &c), Err(SyntaxError::Uncoded("P".into())));
    }

    #[test]
    fn garbage_is_rejected() {
        let c = coding();
        assert!(decode_formula(&Nat::from(0u32), &c).is_err());
        assert!(decode_formula(&Nat::from(12345u32), &c).is_err());
        let t = term_code(&Term::Var(0), &c).unwrap();
        assert!(decode_formula(&t, &c).is_err());
    }
}
