//! Linear orderings on ω given by decidable comparisons, ordinal notations
//! below `ω^ω`, canonical representations with their transfinite enumeration,
//! and a bounded probe for the well-ordered part of an order.

mod notation;
mod probe;
mod representation;

use std::fmt::Debug;

use thiserror::Error;

use crate::structures::Coding;

pub use notation::OrdinalNotation;
pub use probe::{wo_probe, WoProbeReport};
pub use representation::{canonical_representation, Representation, MAX_WIDTH};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OrdinalError {
    #[error("malformed ordinal notation `{0}`")]
    Malformed(String),
    #[error("notation {0} is outside the supported range")]
    OutOfRange(String),
    #[error("{beta} exceeds the order type {alpha}")]
    AboveOrderType { beta: String, alpha: String },
    #[error("{0} is not in the domain of the order")]
    OutsideDomain(String),
}

/// A linear ordering with decidable domain and comparison.
pub trait LinearOrder {
    type Elem: Clone + Eq + Debug;

    fn contains(&self, x: &Self::Elem) -> bool;

    /// `x ⪯ y`, for `x`, `y` in the domain.
    fn leq(&self, x: &Self::Elem, y: &Self::Elem) -> bool;

    /// The domain, in a fixed enumeration order (not necessarily `⪯`).
    fn elements(&self) -> Box<dyn Iterator<Item = Self::Elem> + '_>;

    fn less(&self, x: &Self::Elem, y: &Self::Elem) -> bool {
        x != y && self.leq(x, y)
    }
}

impl<O: LinearOrder + ?Sized> LinearOrder for &O {
    type Elem = O::Elem;

    fn contains(&self, x: &Self::Elem) -> bool {
        (**self).contains(x)
    }

    fn leq(&self, x: &Self::Elem, y: &Self::Elem) -> bool {
        (**self).leq(x, y)
    }

    fn elements(&self) -> Box<dyn Iterator<Item = Self::Elem> + '_> {
        (**self).elements()
    }
}

/// ω with its usual order.
#[derive(Debug, Clone, Copy, Default)]
pub struct NaturalOrder;

impl LinearOrder for NaturalOrder {
    type Elem = u64;

    fn contains(&self, _: &u64) -> bool {
        true
    }

    fn leq(&self, x: &u64, y: &u64) -> bool {
        x <= y
    }

    fn elements(&self) -> Box<dyn Iterator<Item = u64> + '_> {
        Box::new(0..)
    }
}

/// `{0, ..., n-1}` with its usual order.
#[derive(Debug, Clone, Copy)]
pub struct FiniteOrder(pub u64);

impl LinearOrder for FiniteOrder {
    type Elem = u64;

    fn contains(&self, x: &u64) -> bool {
        *x < self.0
    }

    fn leq(&self, x: &u64, y: &u64) -> bool {
        x <= y
    }

    fn elements(&self) -> Box<dyn Iterator<Item = u64> + '_> {
        Box::new(0..self.0)
    }
}

/// Ill-founded test order on ω: the naturals `x` with `x % period ==
/// period - 1` are planted, ordered downwards and placed above all others,
/// which keep their usual order. `period = 2` gives `ω + ω*`.
#[derive(Debug, Clone, Copy)]
pub struct PlantedDescent {
    period: u64,
}

impl PlantedDescent {
    pub fn new(period: u64) -> Self {
        assert!(period >= 1, "period must be positive");
        Self { period }
    }

    /// Evens ascending, then odds descending.
    pub fn omega_plus_omega_star() -> Self {
        Self::new(2)
    }

    pub fn is_planted(&self, x: u64) -> bool {
        x % self.period == self.period - 1
    }
}

impl LinearOrder for PlantedDescent {
    type Elem = u64;

    fn contains(&self, _: &u64) -> bool {
        true
    }

    fn leq(&self, x: &u64, y: &u64) -> bool {
        match (self.is_planted(*x), self.is_planted(*y)) {
            (false, false) => x <= y,
            (true, true) => x >= y,
            (px, _) => !px,
        }
    }

    fn elements(&self) -> Box<dyn Iterator<Item = u64> + '_> {
        Box::new(0..)
    }
}

/// `R_n`: the elements `y` of `R` with `y ⪯ n`. The bound is inclusive, so
/// `n` itself belongs to the tail.
#[derive(Debug, Clone)]
pub struct TailBelow<O: LinearOrder> {
    inner: O,
    top: O::Elem,
    scan_limit: usize,
}

/// Default number of elements of the underlying enumeration scanned when
/// enumerating a tail.
pub const DEFAULT_TAIL_SCAN: usize = 10_000;

impl<O: LinearOrder> TailBelow<O> {
    /// Enumeration of the tail only scans the first `limit` elements of the
    /// underlying order.
    pub fn with_scan_limit(mut self, limit: usize) -> Self {
        self.scan_limit = limit;
        self
    }

    pub fn top(&self) -> &O::Elem {
        &self.top
    }
}

pub fn tail_below<O: LinearOrder>(r: O, n: O::Elem) -> Result<TailBelow<O>, OrdinalError> {
    if !r.contains(&n) {
        return Err(OrdinalError::OutsideDomain(format!("{n:?}")));
    }
    Ok(TailBelow {
        inner: r,
        top: n,
        scan_limit: DEFAULT_TAIL_SCAN,
    })
}

impl<O: LinearOrder> LinearOrder for TailBelow<O> {
    type Elem = O::Elem;

    fn contains(&self, x: &O::Elem) -> bool {
        self.inner.contains(x) && self.inner.leq(x, &self.top)
    }

    fn leq(&self, x: &O::Elem, y: &O::Elem) -> bool {
        self.inner.leq(x, y)
    }

    fn elements(&self) -> Box<dyn Iterator<Item = O::Elem> + '_> {
        Box::new(
            self.inner
                .elements()
                .take(self.scan_limit)
                .filter(move |x| self.inner.leq(x, &self.top)),
        )
    }
}

/// Exhaustively checks the linear-order axioms on the first `k` enumerated
/// elements.
pub fn check_linear_order<O: LinearOrder>(r: &O, k: usize) -> Result<(), String> {
    let xs: Vec<O::Elem> = r.elements().take(k).collect();
    let n = xs.len();
    let leq: Vec<Vec<bool>> = xs.iter().map(|x| xs.iter().map(|y| r.leq(x, y)).collect()).collect();
    for i in 0..n {
        if !r.contains(&xs[i]) {
            return Err(format!("{:?} enumerated but not in the domain", xs[i]));
        }
        if !leq[i][i] {
            return Err(format!("not reflexive at {:?}", xs[i]));
        }
        for j in 0..n {
            if i != j && leq[i][j] && leq[j][i] {
                return Err(format!("not antisymmetric at {:?}, {:?}", xs[i], xs[j]));
            }
            if !leq[i][j] && !leq[j][i] {
                return Err(format!("not total at {:?}, {:?}", xs[i], xs[j]));
            }
            if !leq[i][j] {
                continue;
            }
            for l in 0..n {
                if leq[j][l] && !leq[i][l] {
                    return Err(format!("not transitive at {:?}, {:?}, {:?}", xs[i], xs[j], xs[l]));
                }
            }
        }
    }
    Ok(())
}

/// Whether the base codes of `c` avoid the domain of `r`.
pub fn compatible<O: LinearOrder<Elem = u64>>(r: &O, c: &Coding) -> bool {
    c.bases().into_iter().all(|b| !r.contains(&b))
}

/// The coding with the same symbol order whose base codes are the least
/// naturals outside the domain of `r`.
pub fn shift_coding<O: LinearOrder<Elem = u64>>(c: &Coding, r: &O) -> Coding {
    c.shifted(|x| r.contains(&x))
}
