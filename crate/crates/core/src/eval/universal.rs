//! The universal predicate: row `n` is the extension of the one-variable
//! prenex formula coded by `n`, and the empty row when `n` codes none.

use std::collections::HashMap;
use std::sync::Mutex;

use super::evaluator::eval_sentence;
use super::verdict::{Certificate, Fuel, Verdict};
use crate::coding::Nat;
use crate::structures::{Coding, Structure};
use crate::syntax::{decode_formula, Formula};

/// Row-membership queries against a universal set.
pub trait UniversalView {
    fn member(&self, row: &Nat, point: &Nat) -> Verdict;
}

/// Fuel-bounded universal predicate of a structure.
pub struct UniversalPredicate {
    m: Structure,
    c: Coding,
    fuel: Fuel,
    rows: Mutex<HashMap<Nat, Option<(Formula, u32)>>>,
}

pub fn universal_predicate(m: &Structure, c: &Coding, fuel: Fuel) -> UniversalPredicate {
    UniversalPredicate {
        m: m.clone(),
        c: c.clone(),
        fuel,
        rows: Mutex::new(HashMap::new()),
    }
}

impl UniversalPredicate {
    fn row(&self, n: &Nat) -> Option<(Formula, u32)> {
        if let Some(r) = self.rows.lock().expect("lock").get(n) {
            return r.clone();
        }
        let r = decode_formula(n, &self.c).ok().and_then(|f| {
            let free = f.free_vars();
            let ok = free.len() == 1 && f.is_prenex() && !f.is_scheme() && self.m.check_formula(&f).is_ok();
            ok.then(|| {
                let v = *free.first().expect("one free variable");
                (f, v)
            })
        });
        self.rows.lock().expect("lock").insert(n.clone(), r.clone());
        r
    }

    /// `P(n, x)`.
    pub fn query(&self, n: &Nat, x: &Nat) -> Verdict {
        match self.row(n) {
            None => Verdict::False(Certificate::NotACode),
            Some((f, v)) => eval_sentence(&self.m, &f.instantiate(v, x), self.fuel).unwrap_or(Verdict::Unknown),
        }
    }
}

impl UniversalView for UniversalPredicate {
    fn member(&self, row: &Nat, point: &Nat) -> Verdict {
        self.query(row, point)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coding::nat;
    use crate::structures::base_arithmetic;
    use crate::syntax::{godel_number, parse};

    #[test]
    fn rows() {
        let m = base_arithmetic();
        let c = Coding::enumeration(&m);
        let u = universal_predicate(&m, &c, Fuel::new(8, 40));
        let refl = godel_number(&parse("x0 = x0").unwrap(), &c).unwrap();
        assert!((0..20).all(|x| u.query(&refl, &nat(x)).truth() == Some(true)));
        let below5 = godel_number(&parse("x0 < 5").unwrap(), &c).unwrap();
        for x in 0..20 {
            assert_eq!(u.query(&below5, &nat(x)).truth(), Some(x < 5));
        }
        for n in [0u64, 1, 2, 77] {
            assert_eq!(u.query(&nat(n), &nat(3)), Verdict::False(Certificate::NotACode));
        }
        let two_free = godel_number(&parse("x0 < x1").unwrap(), &c).unwrap();
        assert_eq!(u.query(&two_free, &nat(0)).truth(), Some(false));
    }
}
