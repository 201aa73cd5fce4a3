//! Canonical representations: the element of index `β` is the sequence code
//! of the Cantor normal form digits of `β`, low order first, and elements
//! compare as ordinals.

use num_traits::ToPrimitive;

use super::{LinearOrder, OrdinalError, OrdinalNotation};
use crate::coding::{decode_seq_u64, encode_seq_u64, pair, Nat};

/// Largest supported digit-vector length.
pub const MAX_WIDTH: usize = 16;

/// A canonical representation of an ordinal below `ω^MAX_WIDTH`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Representation {
    alpha: OrdinalNotation,
    width: usize,
}

/// Least `w` with `α ≤ ω^w`.
fn width_of(alpha: &OrdinalNotation) -> usize {
    match alpha.terms() {
        [] => 0,
        [(e, 1)] if *e > 0 => *e as usize,
        _ => alpha.degree() as usize + 1,
    }
}

pub fn canonical_representation(alpha: &OrdinalNotation) -> Result<Representation, OrdinalError> {
    let width = width_of(alpha);
    if width > MAX_WIDTH {
        return Err(OrdinalError::OutOfRange(alpha.to_string()));
    }
    Ok(Representation {
        alpha: alpha.clone(),
        width,
    })
}

impl Representation {
    pub fn order_type(&self) -> &OrdinalNotation {
        &self.alpha
    }

    /// Length of the digit vectors encoded by elements.
    pub fn width(&self) -> usize {
        self.width
    }

    /// Index of `x` in the well-ordering, if `x` is in the domain.
    pub fn index_of(&self, x: u64) -> Option<OrdinalNotation> {
        if self.width == 0 {
            return None;
        }
        let digits = decode_seq_u64(&Nat::from(x))?;
        if digits.len() != self.width {
            return None;
        }
        let beta = OrdinalNotation::from_digits(&digits);
        (beta < self.alpha).then_some(beta)
    }

    /// `ρ_β`: the element of index `β`, or `None` when `β` is not below the
    /// order type.
    pub fn rho(&self, beta: &OrdinalNotation) -> Result<Option<u64>, OrdinalError> {
        if *beta >= self.alpha {
            return Ok(None);
        }
        let digits = beta
            .digits(self.width)
            .ok_or_else(|| OrdinalError::OutOfRange(beta.to_string()))?;
        encode_seq_u64(&digits)
            .to_u64()
            .map(Some)
            .ok_or_else(|| OrdinalError::OutOfRange(beta.to_string()))
    }

    /// `ρ↾β`: the representation of `β` on `{ρ_γ : γ < β}`.
    pub fn restrict(&self, beta: &OrdinalNotation) -> Result<Representation, OrdinalError> {
        if *beta > self.alpha {
            return Err(OrdinalError::AboveOrderType {
                beta: beta.to_string(),
                alpha: self.alpha.to_string(),
            });
        }
        Ok(Representation {
            alpha: beta.clone(),
            width: self.width,
        })
    }

    /// The inclusive tail `{y : y ⪯ n}`, as a representation.
    pub fn tail_below(&self, n: u64) -> Result<Representation, OrdinalError> {
        let beta = self
            .index_of(n)
            .ok_or_else(|| OrdinalError::OutsideDomain(n.to_string()))?;
        self.restrict(&beta.succ())
    }
}

impl LinearOrder for Representation {
    type Elem = u64;

    fn contains(&self, x: &u64) -> bool {
        self.index_of(*x).is_some()
    }

    fn leq(&self, x: &u64, y: &u64) -> bool {
        match (self.index_of(*x), self.index_of(*y)) {
            (Some(a), Some(b)) => a <= b,
            _ => false,
        }
    }

    /// Elements in increasing code order.
    fn elements(&self) -> Box<dyn Iterator<Item = u64> + '_> {
        if self.width == 0 {
            return Box::new(std::iter::empty());
        }
        let width = Nat::from(self.width);
        let found = (0u64..)
            .map_while(move |j| (pair(&width, &Nat::from(j)) + 1u32).to_u64())
            .filter(move |&x| self.contains(&x));
        match self.alpha.as_finite() {
            Some(n) => Box::new(found.take(n as usize)),
            None => Box::new(found),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rep(s: &str) -> Representation {
        canonical_representation(&s.parse().unwrap()).unwrap()
    }

    fn o(s: &str) -> OrdinalNotation {
        s.parse().unwrap()
    }

    #[test]
    fn finite_and_omega() {
        let r = rep("3");
        let xs: Vec<u64> = r.elements().collect();
        assert_eq!(xs.len(), 3);
        assert_eq!(r.rho(&o("0")).unwrap(), Some(xs[0]));
        let w = rep("w");
        let first: Vec<u64> = w.elements().take(6).collect();
        assert_eq!(w.rho(&o("5")).unwrap(), Some(first[5]));
        assert!(first.windows(2).all(|p| w.less(&p[0], &p[1])));
    }

    #[test]
    fn top_of_omega_plus_one() {
        let r = rep("w+1");
        let top = r.rho(&o("w")).unwrap().unwrap();
        assert!(r.elements().take(300).all(|x| r.leq(&x, &top)));
        assert_eq!(r.rho(&o("w+1")).unwrap(), None);
    }

    #[test]
    fn restriction() {
        let r = rep("w*2");
        assert_eq!(r.restrict(&o("0")).unwrap().elements().count(), 0);
        assert_eq!(r.restrict(&o("w*2")).unwrap(), r);
        let first = r.restrict(&o("w")).unwrap();
        for x in first.elements().take(50) {
            assert!(r.index_of(x).unwrap().is_finite());
        }
        assert!(r.restrict(&o("w*2+1")).is_err());
        let t = r.tail_below(r.rho(&o("w+2")).unwrap().unwrap()).unwrap();
        assert_eq!(t.order_type(), &o("w+3"));
    }

    #[test]
    fn out_of_range() {
        assert!(canonical_representation(&OrdinalNotation::omega_pow(40)).is_err());
    }
}
