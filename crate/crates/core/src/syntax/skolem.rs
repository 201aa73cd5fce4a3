//! Skolem formulas of closed prenex schemes.

use super::{Formula, PrenexForm, Quantifier, SoVar, SyntaxError, Term};

/// One Skolem variable `H(x̄_i, y)` standing for the existential `y`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SkolemSlot {
    pub var: SoVar,
    pub universals: Vec<u32>,
    pub witness: u32,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SkolemForm {
    /// `(H^1(x̄_1, y) & ... & H^k(x̄_n, y')) -> ψ_0`, or `ψ_0` when `k = 0`.
    pub formula: Formula,
    pub slots: Vec<SkolemSlot>,
    pub matrix: Formula,
    /// The `(∀x̄_i)(∃ȳ_i)` block pairs, either side possibly empty.
    pub blocks: Vec<(Vec<u32>, Vec<u32>)>,
}

/// Builds the Skolem formula of a closed prenex scheme.
///
/// Each existential variable of block `i` gets a fresh second-order variable
/// of arity `|x̄_i| + 1` over the universal variables of that block. Fresh
/// indices start at the first index not used by a second-order variable of
/// the input.
pub fn skolem_formula(psi: &PrenexForm) -> Result<SkolemForm, SyntaxError> {
    if !psi.matrix.is_quantifier_free() {
        return Err(SyntaxError::NotPrenex);
    }
    if !psi.is_closed() {
        return Err(SyntaxError::NotClosed);
    }
    let mut blocks: Vec<(Vec<u32>, Vec<u32>)> = Vec::new();
    let mut i = 0;
    let prefix = &psi.prefix;
    while i < prefix.len() {
        let mut xs = Vec::new();
        while i < prefix.len() && prefix[i].0 == Quantifier::Forall {
            xs.push(prefix[i].1);
            i += 1;
        }
        let mut ys = Vec::new();
        while i < prefix.len() && prefix[i].0 == Quantifier::Exists {
            ys.push(prefix[i].1);
            i += 1;
        }
        blocks.push((xs, ys));
    }
    let mut next_index = psi
        .matrix
        .second_order_vars()
        .iter()
        .map(|v| v.index + 1)
        .max()
        .unwrap_or(0);
    let mut slots = Vec::new();
    for (xs, ys) in &blocks {
        for &y in ys {
            slots.push(SkolemSlot {
                var: SoVar::new(xs.len() as u32 + 1, next_index),
                universals: xs.clone(),
                witness: y,
            });
            next_index += 1;
        }
    }
    let formula = slots
        .iter()
        .map(|s| {
            let mut args: Vec<Term> = s.universals.iter().map(|&x| Term::Var(x)).collect();
            args.push(Term::Var(s.witness));
            Formula::SoAtom(s.var, args)
        })
        .reduce(Formula::and)
        .map_or_else(|| psi.matrix.clone(), |ante| Formula::implies(ante, psi.matrix.clone()));
    Ok(SkolemForm {
        formula,
        slots,
        matrix: psi.matrix.clone(),
        blocks,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::{parse, to_prenex};

    fn sk(s: &str) -> SkolemForm {
        skolem_formula(&to_prenex(&parse(s).unwrap())).unwrap()
    }

    #[test]
    fn single_slot() {
        let out = sk("forall x0. exists x1. Y2_0(x0, x1)");
        assert_eq!(out.formula, parse("(Y2_1(x0, x1) -> Y2_0(x0, x1))").unwrap());
    }

    #[test]
    fn two_slots_in_one_block() {
        let out = sk("forall x0. exists x1. exists x2. M(x0, x1, x2)");
        assert_eq!(
            out.formula,
            parse("((Y2_0(x0, x1) & Y2_1(x0, x2)) -> M(x0, x1, x2))").unwrap()
        );
        assert_eq!(out.slots.len(), 2);
    }

    #[test]
    fn universal_only() {
        let out = sk("forall x0. Y1_0(x0)");
        assert_eq!(out.formula, parse("Y1_0(x0)").unwrap());
        assert!(out.slots.is_empty());
    }

    #[test]
    fn later_blocks_use_their_own_universals() {
        let out = sk("exists x0. forall x1. exists x2. Y2_0(x0, x2)");
        assert_eq!(out.slots[0].var.arity, 1);
        assert_eq!(out.slots[1].var, SoVar::new(2, 2));
        assert_eq!(out.slots[1].universals, vec![1]);
    }

    #[test]
    fn rejects_open_input() {
        let open = to_prenex(&parse("exists x1. x0 = x1").unwrap());
        assert_eq!(skolem_formula(&open), Err(SyntaxError::NotClosed));
    }
}
