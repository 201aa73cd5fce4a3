//! Satisfaction systems of closed prenex formula schemes, their extension
//! order, the characteristic tree, and unions of extending chains.
//!
//! A system of degree `n` fixes finite relations `B_i` for the scheme's
//! second-order variables and finite Skolem functions `g_j` on `n^{b_j}`. With
//! `e = max{n, max Rng(g_j) + 1}` and `m` the larger of `n` and every value a
//! function-headed subterm of the Skolem formula takes on arguments below
//! `e`, it requires `B_i ⊆ m^{a_i}` and that the Skolem formula, with `H^j`
//! read as the graph of `g_j`, holds at every assignment below `e`.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use num_traits::ToPrimitive;
use serde::Serialize;
use thiserror::Error;

use crate::coding::{encode_seq_u64, encode_set, Nat};
use crate::eval::{Certificate, EvalError, Evaluator, Fuel, SecondOrderInterp, Verdict};
use crate::ordinals::{wo_probe, WoProbeReport};
use crate::structures::{Structure, StructureError};
use crate::syntax::{skolem_formula, to_prenex, Formula, SkolemForm, SoVar, SyntaxError, Term};
use crate::trees::{FiniteTree, KbOrder};

/// Default cap on the number of candidate systems examined.
pub const DEFAULT_BUDGET: u64 = 1_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SatsysError {
    #[error(transparent)]
    Syntax(#[from] SyntaxError),
    #[error(transparent)]
    Structure(#[from] StructureError),
    #[error(transparent)]
    Eval(#[from] EvalError),
    #[error("arity mismatch: {0}")]
    Arity(String),
    #[error("budget exceeded: {needed} candidates needed, budget {budget}")]
    Budget { needed: u64, budget: u64 },
    #[error("systems at positions {0} and after do not form a strictly extending chain")]
    NotAChain(usize),
    #[error("systems have different signatures")]
    Signature,
}

/// A scheme prepared for satisfaction-system work.
#[derive(Debug, Clone)]
pub struct SchemeContext {
    m: Structure,
    skolem: SkolemForm,
    relations: Vec<SoVar>,
    vars: Vec<u32>,
    function_terms: Vec<Term>,
}

fn collect_apps(t: &Term, out: &mut Vec<Term>) {
    if let Term::App(_, args) = t {
        for a in args {
            collect_apps(a, out);
        }
        if !out.contains(t) {
            out.push(t.clone());
        }
    }
}

impl SchemeContext {
    pub fn new(m: &Structure, psi: &Formula) -> Result<Self, SatsysError> {
        m.check_formula(psi)?;
        let prenex = to_prenex(psi);
        let skolem = skolem_formula(&prenex)?;
        let relations: Vec<SoVar> = prenex.matrix.second_order_vars().into_iter().collect();
        let vars = prenex.prefix.iter().map(|&(_, v)| v).collect();
        let mut function_terms = Vec::new();
        skolem.formula.walk(&mut |g| match g {
            Formula::Atom(_, args) | Formula::SoAtom(_, args) => {
                for a in args {
                    collect_apps(a, &mut function_terms);
                }
            }
            _ => {}
        });
        Ok(Self {
            m: m.clone(),
            skolem,
            relations,
            vars,
            function_terms,
        })
    }

    pub fn skolem(&self) -> &SkolemForm {
        &self.skolem
    }

    /// `a_1, ..., a_s`.
    pub fn relation_arities(&self) -> Vec<u32> {
        self.relations.iter().map(|v| v.arity).collect()
    }

    /// `b_1, ..., b_t`: the argument counts of the Skolem functions.
    pub fn function_arities(&self) -> Vec<u32> {
        self.skolem.slots.iter().map(|s| s.universals.len() as u32).collect()
    }

    /// Every assignment to the Skolem formula's variables below `bound`.
    fn assignments(&self, bound: u64) -> impl Iterator<Item = Vec<(u32, Nat)>> + '_ {
        let k = self.vars.len();
        let total = bound.checked_pow(k as u32).unwrap_or(u64::MAX);
        (0..total).map(move |mut code| {
            self.vars
                .iter()
                .map(|&v| {
                    let a = code % bound;
                    code /= bound;
                    (v, Nat::from(a))
                })
                .collect()
        })
    }

    /// `m_α` for a system with the given degree and `e`.
    fn m_value(&self, degree: u64, e: u64) -> Result<u64, SatsysError> {
        let mut m = degree;
        if self.function_terms.is_empty() || e == 0 {
            return Ok(m);
        }
        for env in self.assignments(e) {
            for t in &self.function_terms {
                if let Some(v) = self.m.term_value(t, &env)? {
                    m = m.max(v.to_u64().unwrap_or(u64::MAX));
                }
            }
        }
        Ok(m)
    }

    /// `m_α`.
    pub fn m_alpha(&self, sys: &SatisfactionSystem) -> Result<u64, SatsysError> {
        self.m_value(sys.degree, sys.e())
    }

    fn check_signature(&self, sys: &SatisfactionSystem) -> Result<(), SatsysError> {
        let (ra, fa) = (self.relation_arities(), self.function_arities());
        if sys.relations.len() != ra.len() || sys.functions.len() != fa.len() {
            return Err(SatsysError::Arity("wrong number of relations or functions".into()));
        }
        for (i, (b, &a)) in sys.relations.iter().zip(&ra).enumerate() {
            if b.iter().any(|t| t.len() != a as usize) {
                return Err(SatsysError::Arity(format!("relation {i} expects arity {a}")));
            }
        }
        for (j, (g, &b)) in sys.functions.iter().zip(&fa).enumerate() {
            if g.keys().any(|t| t.len() != b as usize) {
                return Err(SatsysError::Arity(format!("function {j} expects {b} arguments")));
            }
        }
        Ok(())
    }

    /// Whether the Skolem formula holds at every assignment below `bound`;
    /// `None` when some instance is undecided.
    fn holds_below(&self, sys: &SatisfactionSystem, bound: u64) -> Result<Option<bool>, SatsysError> {
        let interp = Interp { ctx: self, sys };
        let ev = Evaluator::new(&self.m, 1).with_second_order(&interp);
        let mut decided = true;
        for mut env in self.assignments(bound) {
            match ev.eval(&self.skolem.formula, &mut env)?.truth() {
                Some(false) => return Ok(Some(false)),
                Some(true) => {}
                None => decided = false,
            }
        }
        Ok(decided.then_some(true))
    }
}

struct Interp<'a> {
    ctx: &'a SchemeContext,
    sys: &'a SatisfactionSystem,
}

impl SecondOrderInterp for Interp<'_> {
    fn holds(&self, var: &SoVar, args: &[Nat]) -> Option<bool> {
        let Some(tuple) = args.iter().map(|a| a.to_u64()).collect::<Option<Vec<u64>>>() else {
            return Some(false);
        };
        if let Some(i) = self.ctx.relations.iter().position(|v| v == var) {
            return Some(self.sys.relations[i].contains(&tuple));
        }
        let j = self.ctx.skolem.slots.iter().position(|s| s.var == *var)?;
        let (y, xs) = tuple.split_last()?;
        Some(self.sys.functions[j].get(xs) == Some(y))
    }
}

/// `⟨B_1, ..., B_s, g_1, ..., g_t⟩` of a given degree.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SatisfactionSystem {
    pub degree: u64,
    pub relations: Vec<BTreeSet<Vec<u64>>>,
    pub functions: Vec<BTreeMap<Vec<u64>, u64>>,
}

/// All tuples in `n^k`, lexicographically.
fn box_tuples(n: u64, k: u32) -> Vec<Vec<u64>> {
    let mut out = vec![Vec::new()];
    for _ in 0..k {
        out = out
            .into_iter()
            .flat_map(|t| {
                (0..n).map(move |x| {
                    let mut t = t.clone();
                    t.push(x);
                    t
                })
            })
            .collect();
    }
    out
}

impl SatisfactionSystem {
    /// `e_α`.
    pub fn e(&self) -> u64 {
        self.functions
            .iter()
            .flat_map(|g| g.values())
            .map(|v| v + 1)
            .fold(self.degree, u64::max)
    }

    /// `[α]`: the code of the finite set of its entries. Entries are
    /// `⟨0, i, t⟩` for relation tuples, `⟨1, j, x̄, y⟩` for function values and
    /// `⟨2, n⟩` for the degree.
    pub fn code(&self) -> Nat {
        let mut elems = vec![encode_seq_u64(&[2, self.degree])];
        for (i, b) in self.relations.iter().enumerate() {
            for t in b {
                let mut v = vec![0, i as u64];
                v.extend(t);
                elems.push(encode_seq_u64(&v));
            }
        }
        for (j, g) in self.functions.iter().enumerate() {
            for (xs, y) in g {
                let mut v = vec![1, j as u64];
                v.extend(xs);
                v.push(*y);
                elems.push(encode_seq_u64(&v));
            }
        }
        encode_set(&elems)
    }

    /// The system of degree `n ≤ degree` below this one: every `g` restricted
    /// to `n`-tuples, every `B` cut down to the restricted `m_α`-box.
    pub fn restrict(&self, ctx: &SchemeContext, n: u64) -> Result<SatisfactionSystem, SatsysError> {
        let functions: Vec<BTreeMap<Vec<u64>, u64>> = self
            .functions
            .iter()
            .map(|g| {
                g.iter()
                    .filter(|(xs, _)| xs.iter().all(|&x| x < n))
                    .map(|(xs, &y)| (xs.clone(), y))
                    .collect()
            })
            .collect();
        let mut out = SatisfactionSystem {
            degree: n,
            relations: Vec::new(),
            functions,
        };
        let m = ctx.m_alpha(&out)?;
        out.relations = self
            .relations
            .iter()
            .map(|b| b.iter().filter(|t| t.iter().all(|&x| x < m)).cloned().collect())
            .collect();
        Ok(out)
    }

    fn same_signature(&self, other: &Self) -> bool {
        self.relations.len() == other.relations.len() && self.functions.len() == other.functions.len()
    }
}

/// Whether all three clauses hold.
pub fn is_satisfaction_system(ctx: &SchemeContext, sys: &SatisfactionSystem) -> Result<bool, SatsysError> {
    ctx.check_signature(sys)?;
    for (g, b) in sys.functions.iter().zip(ctx.function_arities()) {
        let dom = box_tuples(sys.degree, b);
        if g.len() != dom.len() || dom.iter().any(|t| !g.contains_key(t)) {
            return Ok(false);
        }
    }
    let m = ctx.m_alpha(sys)?;
    if sys.relations.iter().flatten().flatten().any(|&x| x >= m) {
        return Ok(false);
    }
    Ok(ctx.holds_below(sys, sys.e())? == Some(true))
}

fn sat_pow(base: u64, exp: u64) -> u64 {
    u32::try_from(exp)
        .ok()
        .and_then(|e| base.checked_pow(e))
        .unwrap_or(u64::MAX)
}

/// Every system of degree `n` whose function values are below `value_bound`,
/// in canonical order: function tables lexicographically, then relations as
/// subsets in binary-counter order.
pub fn enumerate_satsys(
    ctx: &SchemeContext,
    n: u64,
    value_bound: u64,
    budget: u64,
) -> Result<Vec<SatisfactionSystem>, SatsysError> {
    let domains: Vec<Vec<Vec<u64>>> = ctx.function_arities().iter().map(|&b| box_tuples(n, b)).collect();
    let slots: u64 = domains.iter().map(|d| d.len() as u64).sum();
    let g_count = sat_pow(value_bound, slots);
    if g_count > budget {
        return Err(SatsysError::Budget {
            needed: g_count,
            budget,
        });
    }
    // function tables with their e and m
    let mut tables = Vec::new();
    let mut needed = 0u64;
    for code in 0..g_count {
        let mut c = code;
        let mut values = vec![0u64; slots as usize];
        for v in values.iter_mut().rev() {
            *v = c % value_bound;
            c /= value_bound;
        }
        let mut it = values.into_iter();
        let functions: Vec<BTreeMap<Vec<u64>, u64>> = domains
            .iter()
            .map(|d| {
                d.iter()
                    .map(|t| (t.clone(), it.next().expect("enough values")))
                    .collect()
            })
            .collect();
        let sys = SatisfactionSystem {
            degree: n,
            relations: Vec::new(),
            functions,
        };
        let m = ctx.m_value(n, sys.e())?;
        let boxes: Vec<Vec<Vec<u64>>> = ctx.relation_arities().iter().map(|&a| box_tuples(m, a)).collect();
        let combos = boxes
            .iter()
            .map(|b| sat_pow(2, b.len() as u64))
            .fold(1u64, |acc, x| acc.saturating_mul(x));
        needed = needed.saturating_add(combos);
        if needed > budget {
            return Err(SatsysError::Budget { needed, budget });
        }
        tables.push((sys, boxes, combos));
    }
    let mut out = Vec::new();
    for (base, boxes, combos) in tables {
        for code in 0..combos {
            let mut c = code;
            let mut relations = vec![BTreeSet::new(); boxes.len()];
            for (i, b) in boxes.iter().enumerate().rev() {
                let width = b.len() as u32;
                let mask = if width >= 64 { c } else { c % (1u64 << width) };
                c = if width >= 64 { 0 } else { c >> width };
                relations[i] = b
                    .iter()
                    .enumerate()
                    .filter(|(k, _)| mask >> k & 1 == 1)
                    .map(|(_, t)| t.clone())
                    .collect();
            }
            let sys = SatisfactionSystem {
                relations,
                ..base.clone()
            };
            if ctx.holds_below(&sys, sys.e())? == Some(true) {
                out.push(sys);
            }
        }
    }
    Ok(out)
}

/// `lower ⪯ higher`.
pub fn satsys_extends(
    ctx: &SchemeContext,
    lower: &SatisfactionSystem,
    higher: &SatisfactionSystem,
) -> Result<bool, SatsysError> {
    if !lower.same_signature(higher) {
        return Err(SatsysError::Signature);
    }
    Ok(lower.degree <= higher.degree && higher.restrict(ctx, lower.degree)? == *lower)
}

/// The characteristic tree truncated at `max_degree`. The candidate budget
/// applies to each degree separately.
///
/// Node 0 is an adjoined root below every degree-0 system. The other nodes
/// are the enumerated systems, labelled `1, 2, ...` in increasing order of
/// their codes `[α]`, so sibling order agrees with code order. The parent of
/// a system is the enumerated system of greatest degree that it extends.
#[derive(Debug, Clone)]
pub struct CharacteristicTree {
    pub tree: FiniteTree,
    /// Systems by label; entry 0 is `None` for the root.
    pub systems: Vec<Option<(SatisfactionSystem, Nat)>>,
}

pub fn characteristic_tree(
    ctx: &SchemeContext,
    max_degree: u64,
    value_bound: u64,
    budget: u64,
) -> Result<CharacteristicTree, SatsysError> {
    let mut all = Vec::new();
    for n in 0..=max_degree {
        all.extend(enumerate_satsys(ctx, n, value_bound, budget)?);
    }
    let mut coded: Vec<(Nat, SatisfactionSystem)> = all.into_iter().map(|s| (s.code(), s)).collect();
    coded.sort_by(|a, b| a.0.cmp(&b.0));
    let label: HashMap<&SatisfactionSystem, u64> =
        coded.iter().enumerate().map(|(i, (_, s))| (s, i as u64 + 1)).collect();
    let mut edges = Vec::new();
    for (i, (_, s)) in coded.iter().enumerate() {
        let mut parent = 0;
        for d in (0..s.degree).rev() {
            if let Some(&p) = label.get(&s.restrict(ctx, d)?) {
                parent = p;
                break;
            }
        }
        edges.push((parent, i as u64 + 1));
    }
    let tree = FiniteTree::new(0, &edges).map_err(|e| SatsysError::Arity(e.to_string()))?;
    let mut systems = vec![None];
    systems.extend(coded.into_iter().map(|(c, s)| Some((s, c))));
    Ok(CharacteristicTree { tree, systems })
}

/// `wo_probe` on the Kleene-Brouwer order of the truncated characteristic
/// tree.
pub fn characteristic_ordinal_probe(
    ctx: &SchemeContext,
    max_degree: u64,
    value_bound: u64,
    budget: u64,
    prefix: usize,
    depth: usize,
) -> Result<(CharacteristicTree, WoProbeReport<u64>), SatsysError> {
    let t = characteristic_tree(ctx, max_degree, value_bound, budget)?;
    let report = wo_probe(&KbOrder(&t.tree), prefix, depth);
    Ok((t, report))
}

/// Unions of a chain of systems and the check of the union on its `e`-box.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChainUnion {
    pub relations: Vec<BTreeSet<Vec<u64>>>,
    pub functions: Vec<BTreeMap<Vec<u64>, u64>>,
    pub verdict: Verdict,
}

/// Unites a strictly extending chain and checks that the united functions
/// Skolem-witness the scheme at every assignment below the union's `e`,
/// provided that bound is within the fuel's quantifier bound.
pub fn chain_union(ctx: &SchemeContext, chain: &[SatisfactionSystem], fuel: Fuel) -> Result<ChainUnion, SatsysError> {
    let first = chain.first().ok_or(SatsysError::NotAChain(0))?;
    ctx.check_signature(first)?;
    for (i, w) in chain.windows(2).enumerate() {
        if w[0] == w[1] || !satsys_extends(ctx, &w[0], &w[1])? {
            return Err(SatsysError::NotAChain(i));
        }
    }
    let mut union = SatisfactionSystem {
        degree: chain.last().expect("nonempty").degree,
        relations: vec![BTreeSet::new(); first.relations.len()],
        functions: vec![BTreeMap::new(); first.functions.len()],
    };
    for s in chain {
        for (u, b) in union.relations.iter_mut().zip(&s.relations) {
            u.extend(b.iter().cloned());
        }
        for (u, g) in union.functions.iter_mut().zip(&s.functions) {
            u.extend(g.iter().map(|(k, v)| (k.clone(), *v)));
        }
    }
    let e = union.e();
    let count = sat_pow(e, ctx.vars.len() as u64);
    let verdict = if e > fuel.quantifier_bound {
        match ctx.holds_below(&union, fuel.quantifier_bound)? {
            Some(false) => Verdict::False(Certificate::Probes { count }),
            _ => Verdict::Unknown,
        }
    } else {
        match ctx.holds_below(&union, e)? {
            Some(true) => Verdict::True(Certificate::Probes { count }),
            Some(false) => Verdict::False(Certificate::Probes { count }),
            None => Verdict::Unknown,
        }
    };
    Ok(ChainUnion {
        relations: union.relations,
        functions: union.functions,
        verdict,
    })
}

/// The degree-`n` truncation of a total satisfier: `g_j` restricted to
/// `n`-tuples and `B_i` cut to the `m_α`-box.
pub fn truncate_satisfier(
    ctx: &SchemeContext,
    n: u64,
    relation: &dyn Fn(usize, &[u64]) -> bool,
    function: &dyn Fn(usize, &[u64]) -> u64,
) -> Result<SatisfactionSystem, SatsysError> {
    let functions = ctx
        .function_arities()
        .iter()
        .enumerate()
        .map(|(j, &b)| {
            box_tuples(n, b)
                .into_iter()
                .map(|t| (t.clone(), function(j, &t)))
                .collect()
        })
        .collect();
    let mut sys = SatisfactionSystem {
        degree: n,
        relations: Vec::new(),
        functions,
    };
    let m = ctx.m_alpha(&sys)?;
    sys.relations = ctx
        .relation_arities()
        .iter()
        .enumerate()
        .map(|(i, &a)| box_tuples(m, a).into_iter().filter(|t| relation(i, t)).collect())
        .collect();
    Ok(sys)
}

/// JSON form of a system.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SystemDump {
    pub label: u64,
    pub degree: u64,
    pub e: u64,
    pub m: u64,
    pub relations: Vec<Vec<Vec<u64>>>,
    pub functions: Vec<Vec<(Vec<u64>, u64)>>,
    pub code: String,
}

pub fn system_dump(ctx: &SchemeContext, label: u64, sys: &SatisfactionSystem) -> Result<SystemDump, SatsysError> {
    Ok(SystemDump {
        label,
        degree: sys.degree,
        e: sys.e(),
        m: ctx.m_alpha(sys)?,
        relations: sys.relations.iter().map(|b| b.iter().cloned().collect()).collect(),
        functions: sys
            .functions
            .iter()
            .map(|g| g.iter().map(|(k, v)| (k.clone(), *v)).collect())
            .collect(),
        code: sys.code().to_string(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::structures::base_arithmetic;
    use crate::syntax::parse;
    use crate::trees::{branch_search, BranchSearch, Tree};

    fn ctx(s: &str) -> SchemeContext {
        SchemeContext::new(&base_arithmetic(), &parse(s).unwrap()).unwrap()
    }

    fn sys(degree: u64, b: &[&[u64]], g: &[(&[u64], u64)]) -> SatisfactionSystem {
        SatisfactionSystem {
            degree,
            relations: vec![b.iter().map(|t| t.to_vec()).collect()],
            functions: vec![g.iter().map(|(k, v)| (k.to_vec(), *v)).collect()],
        }
    }

    #[test]
    fn golden_systems() {
        let c = ctx("forall x0. exists x1. Y2_0(x0, x1)");
        assert!(is_satisfaction_system(&c, &sys(1, &[&[0, 0]], &[(&[0], 0)])).unwrap());
        assert!(!is_satisfaction_system(&c, &sys(1, &[], &[(&[0], 0)])).unwrap());
        assert!(is_satisfaction_system(&c, &sys(0, &[], &[])).unwrap());
        let bad = SatisfactionSystem {
            degree: 1,
            relations: vec![BTreeSet::from([vec![0]])],
            functions: vec![BTreeMap::new()],
        };
        assert!(matches!(is_satisfaction_system(&c, &bad), Err(SatsysError::Arity(_))));
    }

    #[test]
    fn enumeration() {
        let c = ctx("forall x0. exists x1. Y2_0(x0, x1)");
        let found = enumerate_satsys(&c, 1, 2, DEFAULT_BUDGET).unwrap();
        assert_eq!(found, vec![sys(1, &[&[0, 0]], &[(&[0], 0)])]);
        assert_eq!(enumerate_satsys(&c, 0, 2, DEFAULT_BUDGET).unwrap().len(), 1);
        let contra = ctx("forall x0. exists x1. (Y2_0(x0, x1) & !Y2_0(x0, x1))");
        for n in 1..=2 {
            assert!(enumerate_satsys(&contra, n, 3, DEFAULT_BUDGET).unwrap().is_empty());
        }
        assert!(matches!(
            enumerate_satsys(&c, 2, 3, 5),
            Err(SatsysError::Budget { budget: 5, .. })
        ));
    }

    #[test]
    fn extension_order() {
        let c = ctx("forall x0. exists x1. Y2_0(x0, x1)");
        let a = sys(1, &[&[0, 0]], &[(&[0], 0)]);
        let b = sys(2, &[&[0, 0], &[1, 1]], &[(&[0], 0), (&[1], 1)]);
        assert!(satsys_extends(&c, &a, &a).unwrap());
        assert!(satsys_extends(&c, &a, &b).unwrap());
        assert!(!satsys_extends(&c, &b, &a).unwrap());
        let conflict = sys(2, &[&[0, 1], &[1, 1]], &[(&[0], 1), (&[1], 1)]);
        assert!(!satsys_extends(&c, &a, &conflict).unwrap());
    }

    #[test]
    fn extension_keeps_relations_between_e_and_m() {
        let c = ctx("forall x0. exists x1. (x1 = x0 + 2 & Y1_0(x0 + 2))");
        let s = truncate_satisfier(&c, 1, &|_, _| true, &|_, xs| xs[0] + 2).unwrap();
        assert_eq!((s.e(), c.m_alpha(&s).unwrap()), (3, 4));
        assert!(s.relations[0].contains(&vec![3]));
        assert!(satsys_extends(&c, &s, &s).unwrap());
    }

    #[test]
    fn trees_and_chains() {
        let c = ctx("forall x0. exists x1. (Y2_0(x0, x1) & x1 = x0)");
        let t = characteristic_tree(&c, 3, 4, DEFAULT_BUDGET).unwrap();
        for x in t.tree.nodes().skip(1) {
            let p = t.tree.parent(x).unwrap();
            if p != 0 {
                let (lo, _) = t.systems[p as usize].as_ref().unwrap();
                let (hi, _) = t.systems[x as usize].as_ref().unwrap();
                assert!(satsys_extends(&c, lo, hi).unwrap());
            }
        }
        assert!(matches!(branch_search(&t.tree, 5, 1000), BranchSearch::Found(_)));
        let chain: Vec<SatisfactionSystem> = (0..4)
            .map(|n| truncate_satisfier(&c, n, &|_, t| t[0] == t[1], &|_, xs| xs[0]).unwrap())
            .collect();
        for s in &chain {
            assert!(is_satisfaction_system(&c, s).unwrap());
        }
        let u = chain_union(&c, &chain, Fuel::new(10, 100)).unwrap();
        assert_eq!(u.verdict.truth(), Some(true));
        let single = chain_union(&c, &chain[2..3], Fuel::new(10, 100)).unwrap();
        assert_eq!(single.verdict.truth(), Some(true));
        let reversed: Vec<_> = chain.iter().rev().cloned().collect();
        assert_eq!(
            chain_union(&c, &reversed, Fuel::new(10, 100)),
            Err(SatsysError::NotAChain(0))
        );
        let contra = ctx("forall x0. exists x1. (Y2_0(x0, x1) & !Y2_0(x0, x1))");
        let t = characteristic_tree(&contra, 2, 3, DEFAULT_BUDGET).unwrap();
        assert_eq!(branch_search(&t.tree, 3, 1000), BranchSearch::Exhausted);
    }
}
