//! Conversion to prenex normal form.
//!
//! Bound variables are renamed only when pulling a quantifier outward would
//! capture a free variable or clash with another prefix variable, so formulas
//! already in prenex form come back unchanged. A biconditional is expanded into
//! two implications only when one of its sides contains a quantifier.

use std::collections::{BTreeMap, BTreeSet};

use super::{Connective, Formula, Quantifier, Term};

/// A quantifier prefix over a quantifier-free matrix.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PrenexForm {
    pub prefix: Vec<(Quantifier, u32)>,
    pub matrix: Formula,
}

impl PrenexForm {
    pub fn to_formula(&self) -> Formula {
        self.prefix
            .iter()
            .rev()
            .fold(self.matrix.clone(), |body, &(q, v)| Formula::quant(q, v, body))
    }

    /// Reads the prefix off a formula that is already prenex.
    pub fn from_prenex(f: &Formula) -> Option<PrenexForm> {
        let mut prefix = Vec::new();
        let mut cur = f;
        while let Formula::Quant(q, v, body) = cur {
            prefix.push((*q, *v));
            cur = body;
        }
        if !cur.is_quantifier_free() {
            return None;
        }
        let distinct: BTreeSet<u32> = prefix.iter().map(|(_, v)| *v).collect();
        if distinct.len() != prefix.len() {
            return None;
        }
        Some(PrenexForm {
            prefix,
            matrix: cur.clone(),
        })
    }

    /// Maximal runs of equal quantifiers.
    pub fn blocks(&self) -> Vec<(Quantifier, Vec<u32>)> {
        let mut out: Vec<(Quantifier, Vec<u32>)> = Vec::new();
        for &(q, v) in &self.prefix {
            match out.last_mut() {
                Some((last, vars)) if *last == q => vars.push(v),
                _ => out.push((q, vec![v])),
            }
        }
        out
    }

    /// Number of alternating quantifier blocks.
    pub fn alternations(&self) -> usize {
        self.blocks().len()
    }

    pub fn is_closed(&self) -> bool {
        self.to_formula().is_sentence()
    }
}

/// Prenex normal form of `f`, logically equivalent to it.
pub fn to_prenex(f: &Formula) -> PrenexForm {
    let mut next = f.fresh_var();
    let (prefix, matrix) = pull(f, &mut next);
    PrenexForm { prefix, matrix }
}

type Pulled = (Vec<(Quantifier, u32)>, Formula);

fn rename_prefix(pulled: &mut Pulled, clash: impl Fn(u32) -> bool, next: &mut u32) {
    let mut map = BTreeMap::new();
    for (_, v) in pulled.0.iter_mut() {
        if clash(*v) {
            let w = *next;
            *next += 1;
            map.insert(*v, Term::Var(w));
            *v = w;
        }
    }
    if !map.is_empty() {
        pulled.1 = pulled.1.substitute(&map);
    }
}

fn flip(prefix: &mut [(Quantifier, u32)]) {
    for (q, _) in prefix.iter_mut() {
        *q = q.dual();
    }
}

fn pull(f: &Formula, next: &mut u32) -> Pulled {
    match f {
        Formula::Atom(..) | Formula::SoAtom(..) => (Vec::new(), f.clone()),
        Formula::Not(a) => {
            let (mut prefix, m) = pull(a, next);
            flip(&mut prefix);
            (prefix, Formula::not(m))
        }
        Formula::Binary(Connective::Iff, a, b) => {
            if a.is_quantifier_free() && b.is_quantifier_free() {
                return (Vec::new(), f.clone());
            }
            let expanded = Formula::and(
                Formula::implies((**a).clone(), (**b).clone()),
                Formula::implies((**b).clone(), (**a).clone()),
            );
            pull(&expanded, next)
        }
        Formula::Binary(op, a, b) => {
            let mut left = pull(a, next);
            let mut right = pull(b, next);
            if *op == Connective::Implies {
                flip(&mut left.0);
            }
            let free_a = a.free_vars();
            let free_b = b.free_vars();
            let right_vars: BTreeSet<u32> = right.0.iter().map(|(_, v)| *v).collect();
            rename_prefix(&mut left, |v| free_b.contains(&v) || right_vars.contains(&v), next);
            let left_vars: BTreeSet<u32> = left.0.iter().map(|(_, v)| *v).collect();
            rename_prefix(&mut right, |v| free_a.contains(&v) || left_vars.contains(&v), next);
            let mut prefix = left.0;
            prefix.extend(right.0);
            (prefix, Formula::binary(*op, left.1, right.1))
        }
        Formula::Quant(q, v, body) => {
            let (inner, m) = pull(body, next);
            let mut v = *v;
            if inner.iter().any(|(_, w)| *w == v) {
                // the inner binder shadows this one, which is therefore vacuous
                v = *next;
                *next += 1;
            }
            let mut prefix = vec![(*q, v)];
            prefix.extend(inner);
            (prefix, m)
        }
    }
}
