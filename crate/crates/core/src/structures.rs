//! Structures over the naturals, codings of their symbols, and the derived
//! relations `D` (atomic diagram) and `Val` (closed-term values).
//!
//! Every structure contains base arithmetic: `=`, `<`, `S`, `+`, `*` and the
//! constant `0`. Builtin and table-backed symbols refuse arguments at or above
//! the structure's bound and report such atoms as undecided; `=` and `<`
//! compare naturals of any size.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;
use std::sync::Arc;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::coding::{decode_seq, decode_symbol, Nat, Symbol};
use crate::syntax::{self, Term, EQ, LT, PLUS, SUCC, TIMES, ZERO};

/// Default bound on arguments of builtin and table symbols.
pub const DEFAULT_BOUND: u64 = 1 << 16;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum StructureError {
    #[error("duplicate symbol name `{0}`")]
    DuplicateName(String),
    #[error("unknown symbol `{0}`")]
    UnknownSymbol(String),
    #[error("symbol `{name}` has arity {expected}, used with {found} arguments")]
    Arity { name: String, expected: u32, found: usize },
    #[error("symbol `{0}` used as the wrong kind")]
    Kind(String),
    #[error("free variable x{0} in a closed context")]
    FreeVariable(u32),
    #[error("second-order variable {0} has no interpretation")]
    SecondOrder(String),
    #[error("invalid symbol name `{0}`")]
    BadName(String),
    #[error("invalid coding: {0}")]
    BadCoding(String),
    #[error("invalid structure description: {0}")]
    Description(String),
}

/// Whether a symbol is a predicate or a function symbol.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SymbolClass {
    Predicate,
    Function,
}

/// Named builtin extensions.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Builtin {
    Equality,
    Comparison,
    Successor,
    Plus,
    Times,
    Zero,
    Primality,
    Divisibility,
}

impl Builtin {
    fn signature(self) -> (SymbolClass, u32) {
        match self {
            Builtin::Equality | Builtin::Comparison | Builtin::Divisibility => (SymbolClass::Predicate, 2),
            Builtin::Primality => (SymbolClass::Predicate, 1),
            Builtin::Successor => (SymbolClass::Function, 1),
            Builtin::Plus | Builtin::Times => (SymbolClass::Function, 2),
            Builtin::Zero => (SymbolClass::Function, 0),
        }
    }

    fn bounded(self) -> bool {
        !matches!(self, Builtin::Equality | Builtin::Comparison)
    }

    fn apply(self, a: &[Nat]) -> Nat {
        let b = |x: bool| Nat::from(x as u8);
        match self {
            Builtin::Equality => b(a[0] == a[1]),
            Builtin::Comparison => b(a[0] < a[1]),
            Builtin::Successor => &a[0] + 1u32,
            Builtin::Plus => &a[0] + &a[1],
            Builtin::Times => &a[0] * &a[1],
            Builtin::Zero => Nat::zero(),
            Builtin::Primality => b(is_prime(&a[0])),
            Builtin::Divisibility => b(!a[0].is_zero() && a[1].is_multiple_of(&a[0])),
        }
    }
}

fn is_prime(n: &Nat) -> bool {
    let Some(n) = n.to_u64() else { return false };
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// A finitely supported extension: listed tuples map to values, all other
/// tuples to `default`. Predicates use the values 0 and 1.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Table {
    pub support: BTreeMap<Vec<u64>, u64>,
    pub default: u64,
}

/// An extension procedure that may leave values undecided.
pub type Oracle = Arc<dyn Fn(&[Nat]) -> Option<Nat> + Send + Sync>;

/// How a symbol's extension is computed.
#[derive(Clone)]
pub enum Extension {
    Builtin(Builtin),
    Table(Table),
    /// Arbitrary procedure; no bound is applied to its arguments.
    Oracle(Oracle),
}

impl fmt::Debug for Extension {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Extension::Builtin(b) => write!(f, "Builtin({b:?})"),
            Extension::Table(t) => write!(f, "Table({} entries)", t.support.len()),
            Extension::Oracle(_) => f.write_str("Oracle"),
        }
    }
}

/// An n-ary predicate with its extension.
#[derive(Debug, Clone)]
pub struct PredicateSym {
    pub name: String,
    pub arity: u32,
    pub extension: Extension,
}

/// An n-ary function symbol with its extension; arity 0 is a constant.
#[derive(Debug, Clone)]
pub struct FunctionSym {
    pub name: String,
    pub arity: u32,
    pub extension: Extension,
}

impl PredicateSym {
    pub fn new(name: impl Into<String>, arity: u32, extension: Extension) -> Self {
        Self {
            name: name.into(),
            arity,
            extension,
        }
    }

    pub fn oracle(
        name: impl Into<String>,
        arity: u32,
        f: impl Fn(&[Nat]) -> Option<bool> + Send + Sync + 'static,
    ) -> Self {
        Self::new(
            name,
            arity,
            Extension::Oracle(Arc::new(move |a| f(a).map(|b| Nat::from(b as u8)))),
        )
    }
}

impl FunctionSym {
    pub fn new(name: impl Into<String>, arity: u32, extension: Extension) -> Self {
        Self {
            name: name.into(),
            arity,
            extension,
        }
    }
}

#[derive(Debug, Clone)]
pub enum SymbolDef {
    Predicate(PredicateSym),
    Function(FunctionSym),
}

impl SymbolDef {
    pub fn name(&self) -> &str {
        match self {
            SymbolDef::Predicate(p) => &p.name,
            SymbolDef::Function(f) => &f.name,
        }
    }

    pub fn arity(&self) -> u32 {
        match self {
            SymbolDef::Predicate(p) => p.arity,
            SymbolDef::Function(f) => f.arity,
        }
    }

    pub fn class(&self) -> SymbolClass {
        match self {
            SymbolDef::Predicate(_) => SymbolClass::Predicate,
            SymbolDef::Function(_) => SymbolClass::Function,
        }
    }

    fn extension(&self) -> &Extension {
        match self {
            SymbolDef::Predicate(p) => &p.extension,
            SymbolDef::Function(f) => &f.extension,
        }
    }
}

impl From<PredicateSym> for SymbolDef {
    fn from(p: PredicateSym) -> Self {
        SymbolDef::Predicate(p)
    }
}

impl From<FunctionSym> for SymbolDef {
    fn from(f: FunctionSym) -> Self {
        SymbolDef::Function(f)
    }
}

/// A finite family of predicates and function symbols over the naturals.
#[derive(Debug, Clone)]
pub struct Structure {
    symbols: Vec<SymbolDef>,
    index: HashMap<String, usize>,
    bound: u64,
}

/// Variable assignment, innermost binding last.
pub type Env = Vec<(u32, Nat)>;

fn lookup_env(env: &[(u32, Nat)], v: u32) -> Option<&Nat> {
    env.iter().rev().find(|(w, _)| *w == v).map(|(_, n)| n)
}

fn valid_name(name: &str) -> bool {
    let mut chars = name.chars();
    let Some(first) = chars.next() else { return false };
    if !(first.is_ascii_alphabetic() || first == '_') || !chars.all(|c| c.is_ascii_alphanumeric() || c == '_') {
        return false;
    }
    let numbered = |p: char| {
        name.strip_prefix(p)
            .is_some_and(|r| r.chars().next().is_some_and(|c| c.is_ascii_digit()))
    };
    !(numbered('x') || numbered('Y') || name == "forall" || name == "exists")
}

/// The arithmetic `{=, <, S, +, *, 0}` with bound [`DEFAULT_BOUND`].
pub fn base_arithmetic() -> Structure {
    let symbols = vec![
        PredicateSym::new(EQ, 2, Extension::Builtin(Builtin::Equality)).into(),
        PredicateSym::new(LT, 2, Extension::Builtin(Builtin::Comparison)).into(),
        FunctionSym::new(SUCC, 1, Extension::Builtin(Builtin::Successor)).into(),
        FunctionSym::new(PLUS, 2, Extension::Builtin(Builtin::Plus)).into(),
        FunctionSym::new(TIMES, 2, Extension::Builtin(Builtin::Times)).into(),
        FunctionSym::new(ZERO, 0, Extension::Builtin(Builtin::Zero)).into(),
    ];
    let index = symbols
        .iter()
        .enumerate()
        .map(|(i, s): (usize, &SymbolDef)| (s.name().to_string(), i))
        .collect();
    Structure {
        symbols,
        index,
        bound: DEFAULT_BOUND,
    }
}

/// `M + Y`: the union of `M` with new symbols.
pub fn extend(m: &Structure, new_symbols: Vec<SymbolDef>) -> Result<Structure, StructureError> {
    let mut out = m.clone();
    for s in new_symbols {
        if out.index.contains_key(s.name()) {
            return Err(StructureError::DuplicateName(s.name().to_string()));
        }
        if !valid_name(s.name()) {
            return Err(StructureError::BadName(s.name().to_string()));
        }
        if let Extension::Builtin(b) = s.extension() {
            if b.signature() != (s.class(), s.arity()) {
                return Err(StructureError::Description(format!(
                    "builtin {b:?} does not fit symbol `{}`",
                    s.name()
                )));
            }
        }
        if s.class() == SymbolClass::Predicate && s.arity() == 0 {
            return Err(StructureError::Description(format!(
                "predicate `{}` has arity 0",
                s.name()
            )));
        }
        out.index.insert(s.name().to_string(), out.symbols.len());
        out.symbols.push(s);
    }
    Ok(out)
}

impl Structure {
    pub fn with_bound(mut self, bound: u64) -> Self {
        self.bound = bound;
        self
    }

    pub fn bound(&self) -> u64 {
        self.bound
    }

    pub fn symbols(&self) -> &[SymbolDef] {
        &self.symbols
    }

    pub fn get(&self, name: &str) -> Option<&SymbolDef> {
        self.index.get(name).map(|&i| &self.symbols[i])
    }

    fn checked(&self, name: &str, class: SymbolClass, n: usize) -> Result<&SymbolDef, StructureError> {
        let s = self
            .get(name)
            .ok_or_else(|| StructureError::UnknownSymbol(name.to_string()))?;
        if s.class() != class {
            return Err(StructureError::Kind(name.to_string()));
        }
        if s.arity() as usize != n {
            return Err(StructureError::Arity {
                name: name.to_string(),
                expected: s.arity(),
                found: n,
            });
        }
        Ok(s)
    }

    fn apply(&self, ext: &Extension, args: &[Nat]) -> Option<Nat> {
        let within = || args.iter().all(|a| a < &BigUint::from(self.bound));
        match ext {
            Extension::Builtin(b) => {
                if b.bounded() && !within() {
                    return None;
                }
                Some(b.apply(args))
            }
            Extension::Table(t) => {
                if !within() {
                    return None;
                }
                let key: Vec<u64> = args.iter().map(|a| a.to_u64().expect("below bound")).collect();
                Some(Nat::from(*t.support.get(&key).unwrap_or(&t.default)))
            }
            Extension::Oracle(f) => f(args),
        }
    }

    /// Truth of `P(args)`; `None` when undecided.
    pub fn predicate(&self, name: &str, args: &[Nat]) -> Result<Option<bool>, StructureError> {
        let s = self.checked(name, SymbolClass::Predicate, args.len())?;
        Ok(self.apply(s.extension(), args).map(|v| !v.is_zero()))
    }

    /// Value of `f(args)`; `None` when undecided.
    pub fn function(&self, name: &str, args: &[Nat]) -> Result<Option<Nat>, StructureError> {
        let s = self.checked(name, SymbolClass::Function, args.len())?;
        Ok(self.apply(s.extension(), args))
    }

    /// Value of a term under an assignment; `None` when some application is
    /// undecided.
    pub fn term_value(&self, t: &Term, env: &[(u32, Nat)]) -> Result<Option<Nat>, StructureError> {
        match t {
            Term::Var(v) => lookup_env(env, *v)
                .cloned()
                .map(Some)
                .ok_or(StructureError::FreeVariable(*v)),
            Term::Num(n) => Ok(Some(n.clone())),
            Term::App(f, args) => {
                let mut vals = Vec::with_capacity(args.len());
                for a in args {
                    match self.term_value(a, env)? {
                        Some(v) => vals.push(v),
                        None => {
                            // still report structural errors in later arguments
                            for rest in args {
                                self.term_value(rest, env)?;
                            }
                            self.checked(f, SymbolClass::Function, args.len())?;
                            return Ok(None);
                        }
                    }
                }
                self.function(f, &vals)
            }
        }
    }

    /// Checks that every symbol in `f` belongs to the structure with the right
    /// kind and arity.
    pub fn check_formula(&self, f: &syntax::Formula) -> Result<(), StructureError> {
        let (preds, funcs) = f.symbols();
        for (p, n) in preds {
            self.checked(&p, SymbolClass::Predicate, n)?;
        }
        for (g, n) in funcs {
            self.checked(&g, SymbolClass::Function, n)?;
        }
        Ok(())
    }
}

/// A coded symbol: its class, arity and base code.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CodedSymbol {
    pub name: String,
    pub class: SymbolClass,
    pub arity: u32,
    pub base: u64,
}

impl CodedSymbol {
    /// The symbol with its base code resolved, ready for the extended coding.
    pub fn symbol(&self) -> Symbol {
        match self.class {
            SymbolClass::Predicate => Symbol::Predicate {
                base: self.base,
                arity: self.arity,
            },
            SymbolClass::Function => Symbol::Function {
                base: self.base,
                arity: self.arity,
            },
        }
    }
}

/// An injective map from a structure's symbols to naturals.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Coding {
    by_name: BTreeMap<String, CodedSymbol>,
    by_base: BTreeMap<u64, String>,
}

impl Coding {
    /// The coding that numbers symbols in table order.
    pub fn enumeration(m: &Structure) -> Coding {
        let codes = m
            .symbols()
            .iter()
            .enumerate()
            .map(|(i, s)| (s.name().to_string(), i as u64))
            .collect();
        Coding::with_codes(m, &codes).expect("enumeration is injective")
    }

    /// A user-chosen coding; must be injective with domain the symbol set.
    pub fn with_codes(m: &Structure, codes: &BTreeMap<String, u64>) -> Result<Coding, StructureError> {
        let mut out = Coding {
            by_name: BTreeMap::new(),
            by_base: BTreeMap::new(),
        };
        for s in m.symbols() {
            let base = *codes
                .get(s.name())
                .ok_or_else(|| StructureError::BadCoding(format!("`{}` has no code", s.name())))?;
            out = out.extended(s.name(), s.class(), s.arity(), base)?;
        }
        if codes.len() != m.symbols().len() {
            return Err(StructureError::BadCoding(
                "codes for symbols outside the structure".into(),
            ));
        }
        Ok(out)
    }

    /// The coding with one more symbol.
    pub fn extended(&self, name: &str, class: SymbolClass, arity: u32, base: u64) -> Result<Coding, StructureError> {
        if self.by_name.contains_key(name) {
            return Err(StructureError::DuplicateName(name.to_string()));
        }
        if let Some(other) = self.by_base.get(&base) {
            return Err(StructureError::BadCoding(format!(
                "`{name}` and `{other}` share code {base}"
            )));
        }
        let mut out = self.clone();
        out.by_name.insert(
            name.to_string(),
            CodedSymbol {
                name: name.to_string(),
                class,
                arity,
                base,
            },
        );
        out.by_base.insert(base, name.to_string());
        Ok(out)
    }

    pub fn get(&self, name: &str) -> Option<&CodedSymbol> {
        self.by_name.get(name)
    }

    pub fn by_base(&self, base: u64) -> Option<&CodedSymbol> {
        self.by_base.get(&base).map(|n| &self.by_name[n])
    }

    pub fn code(&self, name: &str) -> Option<u64> {
        self.get(name).map(|s| s.base)
    }

    /// The range of the coding.
    pub fn bases(&self) -> BTreeSet<u64> {
        self.by_base.keys().copied().collect()
    }

    pub fn symbols(&self) -> impl Iterator<Item = &CodedSymbol> {
        self.by_base.values().map(|n| &self.by_name[n])
    }

    /// Moves every base code to the smallest naturals rejected by `avoid`,
    /// keeping the relative order of the symbols.
    pub fn shifted(&self, avoid: impl Fn(u64) -> bool) -> Coding {
        let mut out = Coding {
            by_name: BTreeMap::new(),
            by_base: BTreeMap::new(),
        };
        let mut next = 0u64;
        for s in self.symbols() {
            while avoid(next) {
                next += 1;
            }
            out = out.extended(&s.name, s.class, s.arity, next).expect("fresh codes");
            next += 1;
        }
        out
    }

    /// Looks up a decoded symbol and checks its class and arity.
    pub fn resolve(&self, sym: &Symbol) -> Option<&CodedSymbol> {
        let (base, arity, class) = match *sym {
            Symbol::Predicate { base, arity } => (base, arity, SymbolClass::Predicate),
            Symbol::Function { base, arity } => (base, arity, SymbolClass::Function),
            _ => return None,
        };
        self.by_base(base).filter(|s| s.class == class && s.arity == arity)
    }
}

/// The relation `D(x, y)`: for a coded symbol `x`, `y` codes a tuple in its
/// extension (a graph tuple for function symbols); other rows are `{1}`.
pub struct DRelation<'a> {
    m: &'a Structure,
    c: &'a Coding,
}

pub fn d_relation<'a>(m: &'a Structure, c: &'a Coding) -> DRelation<'a> {
    DRelation { m, c }
}

impl DRelation<'_> {
    /// Membership of `y` in row `x`; `None` when the extension is undecided.
    pub fn holds(&self, x: &Nat, y: &Nat) -> Option<bool> {
        let coded = decode_symbol(x).ok().and_then(|s| self.c.resolve(&s));
        let Some(sym) = coded else {
            return Some(y == &Nat::from(1u32));
        };
        let Some(tuple) = decode_seq(y) else { return Some(false) };
        match sym.class {
            SymbolClass::Predicate => {
                if tuple.len() != sym.arity as usize {
                    return Some(false);
                }
                self.m.predicate(&sym.name, &tuple).ok().flatten()
            }
            SymbolClass::Function => {
                if tuple.len() != sym.arity as usize + 1 {
                    return Some(false);
                }
                let (args, value) = tuple.split_at(sym.arity as usize);
                self.m.function(&sym.name, args).ok().flatten().map(|v| v == value[0])
            }
        }
    }
}

/// The relation `Val(a, b)`: `a` codes a closed term whose value is `b`.
pub struct ValRelation<'a> {
    m: &'a Structure,
    c: &'a Coding,
}

pub fn val_relation<'a>(m: &'a Structure, c: &'a Coding) -> ValRelation<'a> {
    ValRelation { m, c }
}

impl ValRelation<'_> {
    /// The value of the closed term coded by `a`, if any and if computable
    /// within the structure's bound.
    pub fn value(&self, a: &Nat) -> Option<Nat> {
        let t = syntax::decode_term(a, self.c).ok()?;
        if !t.is_closed() {
            return None;
        }
        self.m.term_value(&t, &[]).ok().flatten()
    }

    pub fn holds(&self, a: &Nat, b: &Nat) -> bool {
        self.value(a).as_ref() == Some(b)
    }
}

#[derive(Debug, Serialize, Deserialize)]
struct TableDesc {
    #[serde(default)]
    support: Vec<(Vec<u64>, u64)>,
    #[serde(default)]
    default: u64,
}

#[derive(Debug, Serialize, Deserialize)]
struct SymbolDesc {
    name: String,
    kind: SymbolClass,
    arity: u32,
    #[serde(default)]
    builtin: Option<Builtin>,
    #[serde(default)]
    table: Option<TableDesc>,
}

#[derive(Debug, Serialize, Deserialize)]
struct StructureDesc {
    #[serde(default)]
    bound: Option<u64>,
    #[serde(default)]
    symbols: Vec<SymbolDesc>,
    #[serde(default)]
    coding: Option<BTreeMap<String, u64>>,
}

/// Reads a structure description: base arithmetic extended by the listed
/// symbols, each backed by a builtin or a finite table, and optionally a
/// coding of all symbols.
pub fn structure_from_json(text: &str) -> Result<(Structure, Coding), StructureError> {
    let desc: StructureDesc = serde_json::from_str(text).map_err(|e| StructureError::Description(e.to_string()))?;
    let mut defs = Vec::new();
    for s in desc.symbols {
        let extension = match (s.builtin, s.table) {
            (Some(b), None) => Extension::Builtin(b),
            (None, Some(t)) => {
                if t.support.iter().any(|(k, _)| k.len() != s.arity as usize) {
                    return Err(StructureError::Description(format!(
                        "table of `{}` has wrong tuple length",
                        s.name
                    )));
                }
                Extension::Table(Table {
                    support: t.support.into_iter().collect(),
                    default: t.default,
                })
            }
            _ => {
                return Err(StructureError::Description(format!(
                    "`{}` needs exactly one of builtin or table",
                    s.name
                )))
            }
        };
        defs.push(match s.kind {
            SymbolClass::Predicate => PredicateSym::new(s.name, s.arity, extension).into(),
            SymbolClass::Function => FunctionSym::new(s.name, s.arity, extension).into(),
        });
    }
    let mut m = extend(&base_arithmetic(), defs)?;
    if let Some(b) = desc.bound {
        m = m.with_bound(b);
    }
    let c = match desc.coding {
        Some(codes) => Coding::with_codes(&m, &codes)?,
        None => Coding::enumeration(&m),
    };
    Ok((m, c))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coding::{encode_seq_u64, nat, symbol_code};
    use crate::syntax::{parse_term, term_code};

    fn a() -> (Structure, Coding) {
        let m = base_arithmetic();
        let c = Coding::enumeration(&m);
        (m, c)
    }

    #[test]
    fn base_symbols() {
        let (m, _) = a();
        assert_eq!(m.function("+", &[nat(2), nat(3)]).unwrap(), Some(nat(5)));
        assert_eq!(m.predicate("<", &[nat(3), nat(3)]).unwrap(), Some(false));
        assert_eq!(m.function("S", &[nat(0)]).unwrap(), Some(nat(1)));
        assert_eq!(m.function("*", &[nat(1 << 16), nat(2)]).unwrap(), None);
        assert!(matches!(
            m.predicate("P", &[nat(1)]),
            Err(StructureError::UnknownSymbol(_))
        ));
        assert!(matches!(m.function("S", &[]), Err(StructureError::Arity { .. })));
    }

    #[test]
    fn extension_and_duplicates() {
        let (m, _) = a();
        assert_eq!(extend(&m, vec![]).unwrap().symbols().len(), 6);
        let prime = PredicateSym::new("Prime", 1, Extension::Builtin(Builtin::Primality));
        let m2 = extend(&m, vec![prime.clone().into()]).unwrap();
        assert_eq!(m2.predicate("Prime", &[nat(7)]).unwrap(), Some(true));
        assert_eq!(m2.predicate("Prime", &[nat(9)]).unwrap(), Some(false));
        assert!(matches!(
            extend(&m2, vec![prime.into()]),
            Err(StructureError::DuplicateName(_))
        ));
        let div = PredicateSym::new("Div", 2, Extension::Builtin(Builtin::Divisibility));
        let once = extend(
            &m,
            vec![
                PredicateSym::new("Prime", 1, Extension::Builtin(Builtin::Primality)).into(),
                div.clone().into(),
            ],
        )
        .unwrap();
        let twice = extend(
            &extend(
                &m,
                vec![PredicateSym::new("Prime", 1, Extension::Builtin(Builtin::Primality)).into()],
            )
            .unwrap(),
            vec![div.into()],
        )
        .unwrap();
        let names = |s: &Structure| s.symbols().iter().map(|d| d.name().to_string()).collect::<Vec<_>>();
        assert_eq!(names(&once), names(&twice));
        assert!(extend(
            &m,
            vec![PredicateSym::new("x1", 1, Extension::Builtin(Builtin::Primality)).into()]
        )
        .is_err());
    }

    #[test]
    fn diagram_rows() {
        let (m, c) = a();
        let d = d_relation(&m, &c);
        let lt = symbol_code(&c.get("<").unwrap().symbol()).unwrap().value;
        let plus = symbol_code(&c.get("+").unwrap().symbol()).unwrap().value;
        assert_eq!(d.holds(&lt, &encode_seq_u64(&[2, 5])), Some(true));
        assert_eq!(d.holds(&lt, &encode_seq_u64(&[5, 2])), Some(false));
        assert_eq!(d.holds(&plus, &encode_seq_u64(&[2, 3, 5])), Some(true));
        assert_eq!(d.holds(&plus, &encode_seq_u64(&[2, 3, 6])), Some(false));
        assert_eq!(d.holds(&nat(999), &nat(1)), Some(true));
        assert_eq!(d.holds(&nat(999), &nat(2)), Some(false));
    }

    #[test]
    fn closed_term_values() {
        let (m, c) = a();
        let v = val_relation(&m, &c);
        let two = term_code(&parse_term("S(S(0))").unwrap(), &c).unwrap();
        assert!(v.holds(&two, &nat(2)));
        assert!(!v.holds(&two, &nat(3)));
        let open = term_code(&parse_term("S(x0)").unwrap(), &c).unwrap();
        assert!((0..10).all(|b| !v.holds(&open, &nat(b))));
    }

    #[test]
    fn codings() {
        let (m, c) = a();
        assert_eq!(c.code("="), Some(0));
        assert_eq!(c.code("0"), Some(5));
        let bad = BTreeMap::from([
            ("=".to_string(), 0),
            ("<".to_string(), 0),
            ("S".to_string(), 2),
            ("+".to_string(), 3),
            ("*".to_string(), 4),
            ("0".to_string(), 5),
        ]);
        assert!(Coding::with_codes(&m, &bad).is_err());
        let shifted = c.shifted(|x| x % 2 == 0);
        assert_eq!(shifted.bases(), BTreeSet::from([1, 3, 5, 7, 9, 11]));
    }

    #[test]
    fn description_file() {
        let text = r#"{
            "bound": 1000,
            "symbols": [
                {"name": "Prime", "kind": "predicate", "arity": 1, "builtin": "primality"},
                {"name": "f", "kind": "function", "arity": 1, "table": {"support": [[[1], 5]], "default": 0}},
                {"name": "c", "kind": "function", "arity": 0, "table": {"default": 42}}
            ]
        }"#;
        let (m, c) = structure_from_json(text).unwrap();
        assert_eq!(m.bound(), 1000);
        assert_eq!(m.function("f", &[nat(1)]).unwrap(), Some(nat(5)));
        assert_eq!(m.function("f", &[nat(2)]).unwrap(), Some(nat(0)));
        assert_eq!(m.function("c", &[]).unwrap(), Some(nat(42)));
        assert_eq!(c.code("c"), Some(8));
        assert!(structure_from_json(r#"{"symbols": [{"name": "g", "kind": "function", "arity": 1}]}"#).is_err());
    }
}
