//! Bounded probing of the well-ordered part of a linear order.
//!
//! Among the first `N` enumerated elements, a descent is a pair enumerated in
//! one order and ranked in the other. A descending chain is a sequence of
//! descents increasing in enumeration position. An element on such a chain
//! with at least `L` steps, and not at its end, is a suspect.

use serde::Serialize;

use super::LinearOrder;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct WoProbeReport<E> {
    /// Requested prefix size `N`.
    pub prefix: usize,
    /// Number of elements actually inspected (less than `N` for small domains).
    pub inspected: usize,
    /// Chain length `L`.
    pub depth: usize,
    /// Longest descending chain seen, in steps.
    pub longest_chain: usize,
    pub suspects: Vec<E>,
    /// Inspected elements with no suspect at or below them.
    pub wellfounded: Vec<E>,
}

pub fn wo_probe<O: LinearOrder>(r: &O, n: usize, l: usize) -> WoProbeReport<O::Elem> {
    assert!(n >= 1 && l >= 1, "N and L must be positive");
    let xs: Vec<O::Elem> = r.elements().take(n).collect();
    let k = xs.len();
    let less: Vec<Vec<bool>> = xs.iter().map(|x| xs.iter().map(|y| r.less(x, y)).collect()).collect();
    let mut up = vec![0usize; k];
    for i in 0..k {
        for j in 0..i {
            if less[i][j] {
                up[i] = up[i].max(up[j] + 1);
            }
        }
    }
    let mut down = vec![0usize; k];
    for i in (0..k).rev() {
        for j in i + 1..k {
            if less[j][i] {
                down[i] = down[i].max(down[j] + 1);
            }
        }
    }
    let suspect: Vec<bool> = (0..k).map(|i| down[i] >= 1 && up[i] + down[i] >= l).collect();
    let wellfounded = (0..k)
        .filter(|&i| !suspect[i] && (0..k).all(|j| !(suspect[j] && less[j][i])))
        .map(|i| xs[i].clone())
        .collect();
    WoProbeReport {
        prefix: n,
        inspected: k,
        depth: l,
        longest_chain: up.iter().copied().max().unwrap_or(0),
        suspects: (0..k).filter(|&i| suspect[i]).map(|i| xs[i].clone()).collect(),
        wellfounded,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ordinals::{canonical_representation, NaturalOrder, OrdinalNotation, PlantedDescent};

    #[test]
    fn natural_order_has_no_suspects() {
        let r = wo_probe(&NaturalOrder, 100, 1);
        assert!(r.suspects.is_empty());
        assert_eq!(r.wellfounded.len(), 100);
    }

    #[test]
    fn omega_plus_omega_star() {
        let order = PlantedDescent::omega_plus_omega_star();
        let n = 41;
        for l in 1..=n / 2 {
            let r = wo_probe(&order, n, l);
            let odds: Vec<u64> = (0..n as u64).filter(|x| x % 2 == 1).collect();
            assert_eq!(r.suspects, odds, "L = {l}");
            assert!(r.wellfounded.iter().all(|x| x % 2 == 0));
        }
    }

    #[test]
    fn canonical_omega_squared() {
        let rep = canonical_representation(&OrdinalNotation::omega_pow(2)).unwrap();
        let r = wo_probe(&rep, 200, 20);
        assert!(r.suspects.is_empty(), "longest chain {}", r.longest_chain);
        assert_eq!(r.wellfounded.len(), 200);
    }
}
