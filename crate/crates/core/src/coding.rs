//! Goedel coding of finite sequences, finite sets and logical symbols.
//!
//! Sequences are coded with the Cantor pairing function
//! `pair(a, b) = (a + b)(a + b + 1)/2 + b`. The empty sequence is `0`; a
//! nonempty sequence `s` of length `n` is `pair(n, tree(s)) + 1`, where `tree`
//! pairs the two halves of the sequence recursively. Splitting in halves keeps
//! the bit length of a code linear in the total bit length of the entries.
//!
//! Codes are arbitrary-precision naturals ([`Nat`]).

use std::collections::BTreeSet;

use num_bigint::BigUint;
use num_traits::{ToPrimitive, Zero};
use thiserror::Error;

/// Natural numbers of unbounded size.
pub type Nat = BigUint;

/// Largest bit length accepted by [`decode_seq`].
pub const DEFAULT_MAX_CODE_BITS: u64 = 1 << 20;
/// Largest sequence length accepted by [`decode_seq`].
pub const DEFAULT_MAX_SEQ_LEN: usize = 1 << 16;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CodingError {
    #[error("symbol `{0}` has no code")]
    Uncoded(String),
    #[error("code {0} does not denote a symbol")]
    NotASymbol(Nat),
}

/// Cantor pairing.
pub fn pair(a: &Nat, b: &Nat) -> Nat {
    let s = a + b;
    let t = &s * (&s + 1u32);
    (t >> 1usize) + b
}

/// Floor square root. Newton's iteration started from above, seeded by the
/// root of the top half of the bits, needs only a few full-width divisions.
fn isqrt(n: &Nat) -> Nat {
    if n.bits() <= 128 {
        return n.sqrt();
    }
    let k = (n.bits() / 4) as usize;
    let mut s: Nat = (isqrt(&(n >> (2 * k))) + 1u32) << k;
    loop {
        let t: Nat = (&s + n / &s) >> 1usize;
        if t >= s {
            return s;
        }
        s = t;
    }
}

/// Inverse of [`pair`].
pub fn unpair(z: &Nat) -> (Nat, Nat) {
    // w = floor((sqrt(8z + 1) - 1) / 2)
    let disc: Nat = (z << 3usize) + 1u32;
    let w: Nat = (isqrt(&disc) - 1u32) >> 1usize;
    let t: Nat = (&w * (&w + 1u32)) >> 1usize;
    let b = z - t;
    let a = &w - &b;
    (a, b)
}

fn tree(items: &[Nat]) -> Nat {
    match items.len() {
        0 => Nat::zero(),
        1 => items[0].clone(),
        n => {
            let mid = n / 2;
            pair(&tree(&items[..mid]), &tree(&items[mid..]))
        }
    }
}

fn untree(code: &Nat, len: usize, out: &mut Vec<Nat>) {
    match len {
        0 => {}
        1 => out.push(code.clone()),
        n => {
            let mid = n / 2;
            let (left, right) = unpair(code);
            untree(&left, mid, out);
            untree(&right, n - mid, out);
        }
    }
}

/// The code `[x_1, ..., x_n]` of a finite sequence.
pub fn encode_seq(items: &[Nat]) -> Nat {
    if items.is_empty() {
        return Nat::zero();
    }
    pair(&Nat::from(items.len()), &tree(items)) + 1u32
}

/// [`encode_seq`] for machine-word entries.
pub fn encode_seq_u64(items: &[u64]) -> Nat {
    let items: Vec<Nat> = items.iter().map(|&x| Nat::from(x)).collect();
    encode_seq(&items)
}

/// Decodes a sequence code. Returns `None` for naturals that code no sequence
/// and for codes beyond the default size limits.
pub fn decode_seq(code: &Nat) -> Option<Vec<Nat>> {
    decode_seq_bounded(code, DEFAULT_MAX_CODE_BITS, DEFAULT_MAX_SEQ_LEN)
}

pub fn decode_seq_bounded(code: &Nat, max_bits: u64, max_len: usize) -> Option<Vec<Nat>> {
    if code.is_zero() {
        return Some(Vec::new());
    }
    if code.bits() > max_bits {
        return None;
    }
    let (len, body) = unpair(&(code - 1u32));
    let len = len.to_usize()?;
    if len == 0 || len > max_len {
        return None;
    }
    let mut out = Vec::with_capacity(len);
    untree(&body, len, &mut out);
    Some(out)
}

/// Decodes a sequence whose entries all fit in a `u64`.
pub fn decode_seq_u64(code: &Nat) -> Option<Vec<u64>> {
    decode_seq(code)?.iter().map(|x| x.to_u64()).collect()
}

/// The code of a finite set: the code of its ascending enumeration.
pub fn encode_set<'a, I>(elems: I) -> Nat
where
    I: IntoIterator<Item = &'a Nat>,
{
    let sorted: BTreeSet<&Nat> = elems.into_iter().collect();
    let items: Vec<Nat> = sorted.into_iter().cloned().collect();
    encode_seq(&items)
}

pub fn encode_set_u64<I: IntoIterator<Item = u64>>(elems: I) -> Nat {
    let sorted: BTreeSet<u64> = elems.into_iter().collect();
    encode_seq_u64(&sorted.into_iter().collect::<Vec<_>>())
}

/// Logical symbols with fixed codes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum LogicalSymbol {
    And,
    Or,
    Not,
    Implies,
    Iff,
    Forall,
    Exists,
    LeftParen,
    RightParen,
}

impl LogicalSymbol {
    pub fn code(self) -> Option<u64> {
        Some(match self {
            LogicalSymbol::And => 1,
            LogicalSymbol::Or => 3,
            LogicalSymbol::Not => 5,
            LogicalSymbol::Implies => 7,
            LogicalSymbol::Iff => 9,
            LogicalSymbol::Forall => 11,
            LogicalSymbol::Exists => 13,
            LogicalSymbol::LeftParen => 15,
            // The code table runs out before the closing parenthesis.
            LogicalSymbol::RightParen => return None,
        })
    }

    pub fn from_code(code: u64) -> Option<Self> {
        Some(match code {
            1 => LogicalSymbol::And,
            3 => LogicalSymbol::Or,
            5 => LogicalSymbol::Not,
            7 => LogicalSymbol::Implies,
            9 => LogicalSymbol::Iff,
            11 => LogicalSymbol::Forall,
            13 => LogicalSymbol::Exists,
            15 => LogicalSymbol::LeftParen,
            _ => return None,
        })
    }

    fn as_str(self) -> &'static str {
        match self {
            LogicalSymbol::And => "&",
            LogicalSymbol::Or => "|",
            LogicalSymbol::Not => "!",
            LogicalSymbol::Implies => "->",
            LogicalSymbol::Iff => "<->",
            LogicalSymbol::Forall => "forall",
            LogicalSymbol::Exists => "exists",
            LogicalSymbol::LeftParen => "(",
            LogicalSymbol::RightParen => ")",
        }
    }
}

/// Kind of a coded symbol.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SymbolKind {
    Predicate,
    FunctionSymbol,
    SecondOrderVariable,
    LogicalConnective,
    Quantifier,
    FirstOrderVariable,
}

/// A symbol with its base code already resolved through a coding.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Symbol {
    Predicate { base: u64, arity: u32 },
    Function { base: u64, arity: u32 },
    SecondOrder { index: u32, arity: u32 },
    Logical(LogicalSymbol),
    Variable(u32),
}

impl Symbol {
    pub fn kind(&self) -> SymbolKind {
        match self {
            Symbol::Predicate { .. } => SymbolKind::Predicate,
            Symbol::Function { .. } => SymbolKind::FunctionSymbol,
            Symbol::SecondOrder { .. } => SymbolKind::SecondOrderVariable,
            Symbol::Logical(LogicalSymbol::Forall | LogicalSymbol::Exists) => SymbolKind::Quantifier,
            Symbol::Logical(_) => SymbolKind::LogicalConnective,
            Symbol::Variable(_) => SymbolKind::FirstOrderVariable,
        }
    }
}

impl std::fmt::Display for Symbol {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Symbol::Predicate { base, arity } => write!(f, "P[{base}/{arity}]"),
            Symbol::Function { base, arity } => write!(f, "F[{base}/{arity}]"),
            Symbol::SecondOrder { index, arity } => write!(f, "Y{arity}_{index}"),
            Symbol::Logical(l) => f.write_str(l.as_str()),
            Symbol::Variable(i) => write!(f, "x{i}"),
        }
    }
}

/// A symbol code together with the kind it decodes to.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SymbolCode {
    pub value: Nat,
    pub kind: SymbolKind,
}

/// The extended coding `c-bar` on a resolved symbol.
///
/// Predicates map to `2[c(P), n, 0]`, function symbols to `2[c(f), n, 1]`,
/// second-order variables `X^i_n` to `2[i, n, 2]`; connectives and quantifiers
/// take the odd codes 1..15 and variables `x_i` take `2i + 17`.
pub fn symbol_code(symbol: &Symbol) -> Result<SymbolCode, CodingError> {
    let value = match *symbol {
        Symbol::Predicate { base, arity } => encode_seq_u64(&[base, arity as u64, 0]) << 1usize,
        Symbol::Function { base, arity } => encode_seq_u64(&[base, arity as u64, 1]) << 1usize,
        Symbol::SecondOrder { index, arity } => encode_seq_u64(&[index as u64, arity as u64, 2]) << 1usize,
        Symbol::Logical(l) => Nat::from(l.code().ok_or_else(|| CodingError::Uncoded(l.as_str().to_string()))?),
        Symbol::Variable(i) => Nat::from(2 * i as u64 + 17),
    };
    Ok(SymbolCode {
        value,
        kind: symbol.kind(),
    })
}

/// Inverse of [`symbol_code`].
pub fn decode_symbol(code: &Nat) -> Result<Symbol, CodingError> {
    let bad = || CodingError::NotASymbol(code.clone());
    if code.bit(0) {
        let small = code.to_u64().ok_or_else(bad)?;
        if small >= 17 {
            let index = u32::try_from((small - 17) / 2).map_err(|_| bad())?;
            return Ok(Symbol::Variable(index));
        }
        return LogicalSymbol::from_code(small).map(Symbol::Logical).ok_or_else(bad);
    }
    let half: Nat = code >> 1usize;
    let parts = decode_seq_u64(&half).ok_or_else(bad)?;
    if parts.len() != 3 {
        return Err(bad());
    }
    let arity = u32::try_from(parts[1]).map_err(|_| bad())?;
    match parts[2] {
        0 => Ok(Symbol::Predicate { base: parts[0], arity }),
        1 => Ok(Symbol::Function { base: parts[0], arity }),
        2 => Ok(Symbol::SecondOrder {
            index: u32::try_from(parts[0]).map_err(|_| bad())?,
            arity,
        }),
        _ => Err(bad()),
    }
}

type Holds<'a, T> = Box<dyn Fn(&[&T], &T) -> bool + Send + Sync + 'a>;

/// A relation used by the inductive-closure operator: it relates a tuple of
/// earlier sequence elements to a new element.
pub struct ClosureRelation<'a, T> {
    arity: usize,
    holds: Holds<'a, T>,
}

impl<'a, T> ClosureRelation<'a, T> {
    pub fn new<F>(arity: usize, holds: F) -> Self
    where
        F: Fn(&[&T], &T) -> bool + Send + Sync + 'a,
    {
        assert!(arity > 0, "closure relations take at least one earlier element");
        Self {
            arity,
            holds: Box::new(holds),
        }
    }

    pub fn arity(&self) -> usize {
        self.arity
    }
}

impl<'a> ClosureRelation<'a, Nat> {
    /// A relation given on (sequence code, element) pairs, as in `R([y_i1..y_is], y_j)`.
    pub fn on_codes<F>(arity: usize, holds: F) -> Self
    where
        F: Fn(&Nat, &Nat) -> bool + Send + Sync + 'a,
    {
        Self::new(arity, move |args: &[&Nat], target: &Nat| {
            let args: Vec<Nat> = args.iter().map(|&a| a.clone()).collect();
            holds(&encode_seq(&args), target)
        })
    }
}

fn related<T>(seq: &[T], j: usize, rel: &ClosureRelation<'_, T>) -> bool {
    if j == 0 {
        return false;
    }
    let mut idx = vec![0usize; rel.arity];
    loop {
        let args: Vec<&T> = idx.iter().map(|&i| &seq[i]).collect();
        if (rel.holds)(&args, &seq[j]) {
            return true;
        }
        // next index tuple in [0, j)^arity
        let mut k = 0;
        loop {
            if k == idx.len() {
                return false;
            }
            idx[k] += 1;
            if idx[k] < j {
                break;
            }
            idx[k] = 0;
            k += 1;
        }
    }
}

/// Whether `seq` is a derivation: nonempty, and every element is in the base
/// set or related to a tuple of strictly earlier elements.
pub fn is_derivation<T>(seq: &[T], base: impl Fn(&T) -> bool, relations: &[ClosureRelation<'_, T>]) -> bool {
    !seq.is_empty() && (0..seq.len()).all(|j| base(&seq[j]) || relations.iter().any(|rel| related(seq, j, rel)))
}

/// All `a <= bound` coding a derivation from `base` under `relations`.
pub fn closure_derivations(
    base: impl Fn(&Nat) -> bool,
    relations: &[ClosureRelation<'_, Nat>],
    bound: u64,
) -> BTreeSet<u64> {
    (0..=bound)
        .filter(|&a| match decode_seq(&Nat::from(a)) {
            Some(seq) => is_derivation(&seq, &base, relations),
            None => false,
        })
        .collect()
}

/// Convenience: `x` as a [`Nat`].
pub fn nat(x: u64) -> Nat {
    Nat::from(x)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn isqrt_is_the_floor_root() {
        let mut x = Nat::from(0xdead_beef_u64);
        for i in 0..60u32 {
            x = &x * &x + i + 7u32;
            for n in [x.clone(), &x - 1u32, &x * &x, &x * &x - 1u32] {
                let r = isqrt(&n);
                assert!(&r * &r <= n && (&r + 1u32) * (&r + 1u32) > n);
            }
            if x.bits() > 40_000 {
                break;
            }
        }
    }

    #[test]
    fn pairing_matches_the_closed_form() {
        for a in 0..40u64 {
            for b in 0..40u64 {
                let expected = (a + b) * (a + b + 1) / 2 + b;
                let z = pair(&nat(a), &nat(b));
                assert_eq!(z, nat(expected));
                assert_eq!(unpair(&z), (nat(a), nat(b)));
            }
        }
    }

    #[test]
    fn small_codes() {
        assert_eq!(encode_seq(&[]), nat(0));
        // pair(1, 3) + 1 = 10 + 3 + 1
        assert_eq!(encode_seq_u64(&[3]), nat(14));
        assert_eq!(decode_seq(&nat(0)), Some(vec![]));
        assert_eq!(decode_seq_u64(&encode_seq_u64(&[1, 2, 3])), Some(vec![1, 2, 3]));
        assert_eq!(decode_seq_u64(&encode_seq_u64(&[5, 5])), Some(vec![5, 5]));
        // 1 = pair(0, 0) + 1 would be a sequence of length 0 other than the empty one
        assert_eq!(decode_seq(&nat(1)), None);
    }

    #[test]
    fn ten_element_round_trip() {
        let s: Vec<u64> = (0..10).collect();
        assert_eq!(decode_seq_u64(&encode_seq_u64(&s)), Some(s));
    }

    #[test]
    fn sets_are_order_insensitive() {
        assert_eq!(encode_set_u64([2, 1]), encode_seq_u64(&[1, 2]));
        assert_eq!(encode_set_u64([]), encode_seq_u64(&[]));
        assert_eq!(encode_set_u64([7]), encode_seq_u64(&[7]));
        assert_eq!(encode_set_u64([3, 3, 1]), encode_seq_u64(&[1, 3]));
    }

    #[test]
    fn logical_table() {
        let table = [
            (LogicalSymbol::And, 1),
            (LogicalSymbol::Or, 3),
            (LogicalSymbol::Not, 5),
            (LogicalSymbol::Implies, 7),
            (LogicalSymbol::Iff, 9),
            (LogicalSymbol::Forall, 11),
            (LogicalSymbol::Exists, 13),
            (LogicalSymbol::LeftParen, 15),
        ];
        for (sym, code) in table {
            assert_eq!(symbol_code(&Symbol::Logical(sym)).unwrap().value, nat(code));
            assert_eq!(decode_symbol(&nat(code)).unwrap(), Symbol::Logical(sym));
        }
        assert!(symbol_code(&Symbol::Logical(LogicalSymbol::RightParen)).is_err());
        assert_eq!(symbol_code(&Symbol::Variable(0)).unwrap().value, nat(17));
        assert_eq!(symbol_code(&Symbol::Variable(4)).unwrap().value, nat(25));
    }

    #[test]
    fn binary_predicate_code() {
        let code = symbol_code(&Symbol::Predicate { base: 5, arity: 2 }).unwrap();
        assert_eq!(code.value, encode_seq_u64(&[5, 2, 0]) * 2u32);
        assert_eq!(code.kind, SymbolKind::Predicate);
        assert_eq!(
            decode_symbol(&code.value).unwrap(),
            Symbol::Predicate { base: 5, arity: 2 }
        );
    }

    #[test]
    fn closure_with_only_base_elements() {
        let out = closure_derivations(|x| x == &nat(1), &[], 400);
        for a in &out {
            let s = decode_seq_u64(&nat(*a)).unwrap();
            assert!(!s.is_empty() && s.iter().all(|&y| y == 1));
        }
        assert!(out.contains(&encode_seq_u64(&[1]).to_u64().unwrap()));
        assert!(out.contains(&encode_seq_u64(&[1, 1]).to_u64().unwrap()));
        assert!(closure_derivations(|x| x == &nat(1), &[], 0).is_empty());
    }

    #[test]
    fn closure_with_successor_relation() {
        let succ = ClosureRelation::on_codes(1, |s: &Nat, y: &Nat| {
            decode_seq(s)
                .and_then(|v| v.into_iter().max())
                .is_some_and(|m| *y == m + 1u32)
        });
        let bound = 5000;
        let out = closure_derivations(|x| x.is_zero(), std::slice::from_ref(&succ), bound);
        // brute-force check of the two clauses per code
        for a in 0..=bound {
            let expected = match decode_seq_u64(&nat(a)) {
                Some(s) if !s.is_empty() => (0..s.len()).all(|j| s[j] == 0 || s[..j].iter().any(|&p| p + 1 == s[j])),
                _ => false,
            };
            assert_eq!(out.contains(&a), expected, "code {a}");
        }
        assert!(out.contains(&encode_seq_u64(&[0, 1, 2]).to_u64().unwrap()));
        assert!(!out.contains(&encode_seq_u64(&[0, 2]).to_u64().unwrap()));
    }

    #[test]
    fn derivation_accepts_repeated_indices() {
        let double = ClosureRelation::new(2, |args: &[&u64], y: &u64| *args[0] + *args[1] == *y);
        assert!(is_derivation(&[1u64, 2, 4], |x| *x == 1, std::slice::from_ref(&double)));
        assert!(!is_derivation(&[1u64, 3], |x| *x == 1, std::slice::from_ref(&double)));
        assert!(!is_derivation::<u64>(&[], |_| true, &[]));
    }
}
