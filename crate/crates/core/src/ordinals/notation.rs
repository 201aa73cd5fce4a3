//! Cantor normal form notations for ordinals below `ω^ω`.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::OrdinalError;

/// `ω^e_1·c_1 + ... + ω^e_k·c_k` with strictly decreasing exponents and
/// positive coefficients.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct OrdinalNotation {
    terms: Vec<(u32, u64)>,
}

impl OrdinalNotation {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn finite(n: u64) -> Self {
        Self::from_terms(vec![(0, n)]).expect("single term")
    }

    pub fn omega() -> Self {
        Self::omega_pow(1)
    }

    /// `ω^e`.
    pub fn omega_pow(e: u32) -> Self {
        Self::from_terms(vec![(e, 1)]).expect("single term")
    }

    /// Builds a notation from terms with strictly decreasing exponents; zero
    /// coefficients are dropped.
    pub fn from_terms(terms: Vec<(u32, u64)>) -> Result<Self, OrdinalError> {
        let terms: Vec<(u32, u64)> = terms.into_iter().filter(|&(_, c)| c > 0).collect();
        if terms.windows(2).any(|w| w[0].0 <= w[1].0) {
            return Err(OrdinalError::Malformed("exponents must decrease".into()));
        }
        Ok(Self { terms })
    }

    pub fn terms(&self) -> &[(u32, u64)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_finite(&self) -> bool {
        self.degree() == 0
    }

    /// Largest exponent; 0 for finite notations.
    pub fn degree(&self) -> u32 {
        self.terms.first().map_or(0, |t| t.0)
    }

    /// Finite value, if any.
    pub fn as_finite(&self) -> Option<u64> {
        match self.terms.as_slice() {
            [] => Some(0),
            [(0, c)] => Some(*c),
            _ => None,
        }
    }

    pub fn is_successor(&self) -> bool {
        self.terms.last().is_some_and(|t| t.0 == 0)
    }

    pub fn is_limit(&self) -> bool {
        !self.is_zero() && !self.is_successor()
    }

    pub fn succ(&self) -> Self {
        self.add(&Self::finite(1))
    }

    /// Coefficient of `ω^e`.
    pub fn coefficient(&self, e: u32) -> u64 {
        self.terms.iter().find(|t| t.0 == e).map_or(0, |t| t.1)
    }

    /// Coefficients of `ω^0 .. ω^(width-1)`, low order first. `None` when the
    /// notation is not below `ω^width`.
    pub fn digits(&self, width: usize) -> Option<Vec<u64>> {
        if !self.is_zero() && self.degree() as usize >= width {
            return None;
        }
        let mut out = vec![0u64; width];
        for &(e, c) in &self.terms {
            out[e as usize] = c;
        }
        Some(out)
    }

    /// Inverse of [`digits`](Self::digits).
    pub fn from_digits(digits: &[u64]) -> Self {
        let terms = digits
            .iter()
            .enumerate()
            .rev()
            .filter(|(_, &c)| c > 0)
            .map(|(e, &c)| (e as u32, c))
            .collect();
        Self { terms }
    }

    /// Ordinal sum.
    pub fn add(&self, other: &Self) -> Self {
        let Some(&(lead, lc)) = other.terms.first() else {
            return self.clone();
        };
        let mut terms: Vec<(u32, u64)> = self.terms.iter().copied().filter(|t| t.0 >= lead).collect();
        match terms.last_mut() {
            Some(last) if last.0 == lead => {
                last.1 += lc;
                terms.extend_from_slice(&other.terms[1..]);
            }
            _ => terms.extend_from_slice(&other.terms),
        }
        Self { terms }
    }

    /// Ordinal product `self · other`.
    pub fn mul(&self, other: &Self) -> Self {
        let Some(&(a, c)) = self.terms.first() else {
            return Self::zero();
        };
        let mut out = Self::zero();
        for &(e, d) in &other.terms {
            let part = if e > 0 {
                Self {
                    terms: vec![(a + e, d)],
                }
            } else {
                let mut terms = self.terms.clone();
                terms[0] = (a, c * d);
                Self { terms }
            };
            out = out.add(&part);
        }
        out
    }

    /// The `δ` with `self + δ = gamma`, when `self <= gamma`.
    pub fn sub_left(&self, gamma: &Self) -> Option<Self> {
        if self > gamma {
            return None;
        }
        for (i, (&x, &y)) in self.terms.iter().zip(&gamma.terms).enumerate() {
            if x != y {
                let mut terms = Vec::new();
                if x.0 == y.0 {
                    terms.push((y.0, y.1 - x.1));
                } else {
                    terms.push(y);
                }
                terms.extend_from_slice(&gamma.terms[i + 1..]);
                return Some(Self { terms });
            }
        }
        Some(Self {
            terms: gamma.terms[self.terms.len()..].to_vec(),
        })
    }

    /// `(δ, ε)` with `self·δ + ε = gamma` and `ε < self`; `self` nonzero.
    pub fn div_rem_left(&self, gamma: &Self) -> Option<(Self, Self)> {
        let &(a, c) = self.terms.first()?;
        let mut high = Vec::new();
        let mut low = Vec::new();
        for &(e, g) in &gamma.terms {
            if e > a {
                high.push((e - a, g));
            } else {
                low.push((e, g));
            }
        }
        let low = Self { terms: low };
        let mut n = low.coefficient(a) / c;
        while n > 0 && self.mul(&Self::finite(n)) > low {
            n -= 1;
        }
        let eps = self.mul(&Self::finite(n)).sub_left(&low)?;
        high.push((0, n));
        let delta = Self::from_terms(high).ok()?;
        Some((delta, eps))
    }
}

impl Ord for OrdinalNotation {
    fn cmp(&self, other: &Self) -> Ordering {
        for (x, y) in self.terms.iter().zip(&other.terms) {
            let o = x.0.cmp(&y.0).then(x.1.cmp(&y.1));
            if o != Ordering::Equal {
                return o;
            }
        }
        self.terms.len().cmp(&other.terms.len())
    }
}

impl PartialOrd for OrdinalNotation {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for OrdinalNotation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, &(e, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                f.write_str("+")?;
            }
            match (e, c) {
                (0, c) => write!(f, "{c}")?,
                (1, 1) => f.write_str("w")?,
                (1, c) => write!(f, "w*{c}")?,
                (e, 1) => write!(f, "w^{e}")?,
                (e, c) => write!(f, "w^{e}*{c}")?,
            }
        }
        Ok(())
    }
}

impl FromStr for OrdinalNotation {
    type Err = OrdinalError;

    /// Accepts sums of `n`, `w`, `w^e`, `w*c`, `w^e*c` (`omega` for `w`).
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || OrdinalError::Malformed(s.to_string());
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let compact = compact.replace("omega", "w");
        if compact.is_empty() {
            return Err(bad());
        }
        let mut out = Self::zero();
        for part in compact.split('+') {
            let term = if let Some(rest) = part.strip_prefix('w') {
                let (exp, coeff) = match rest.split_once('*') {
                    Some((e, c)) => (e, Some(c)),
                    None => (rest, None),
                };
                let e = match exp.strip_prefix('^') {
                    Some(e) => e.parse::<u32>().map_err(|_| bad())?,
                    None if exp.is_empty() => 1,
                    None => return Err(bad()),
                };
                let c = match coeff {
                    Some(c) => c.parse::<u64>().map_err(|_| bad())?,
                    None => 1,
                };
                Self::from_terms(vec![(e, c)])?
            } else {
                Self::finite(part.parse::<u64>().map_err(|_| bad())?)
            };
            out = out.add(&term);
        }
        Ok(out)
    }
}

impl Serialize for OrdinalNotation {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for OrdinalNotation {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn o(s: &str) -> OrdinalNotation {
        s.parse().unwrap()
    }

    #[test]
    fn parse_and_print() {
        for s in ["0", "7", "w", "w*2+1", "w^2*3+w+4", "w^5"] {
            assert_eq!(o(s).to_string(), s);
        }
        assert_eq!(o("w^2*3+w*1+4").to_string(), "w^2*3+w+4");
        assert_eq!(o("1+w"), o("w"));
        assert_eq!(o("omega*2"), o("w*2"));
        assert!("w^".parse::<OrdinalNotation>().is_err());
        assert!("x".parse::<OrdinalNotation>().is_err());
    }

    #[test]
    fn arithmetic() {
        assert_eq!(o("w").add(&o("w")), o("w*2"));
        assert_eq!(o("3").add(&o("w")), o("w"));
        assert_eq!(o("w+5").add(&o("w^2+1")), o("w^2+1"));
        assert_eq!(o("2").mul(&o("w")), o("w"));
        assert_eq!(o("w").mul(&o("2")), o("w*2"));
        assert_eq!(o("w+1").mul(&o("w+1")), o("w^2+w+1"));
        assert_eq!(o("w*2+3").mul(&o("3")), o("w*6+3"));
    }

    #[test]
    fn comparison() {
        assert!(o("3") < o("w"));
        assert!(o("w*2") < o("w*2+1"));
        assert!(o("w^2") > o("w*100+100"));
    }

    #[test]
    fn subtraction_and_division() {
        assert_eq!(o("w").sub_left(&o("w*2+3")), Some(o("w+3")));
        assert_eq!(o("3").sub_left(&o("w")), Some(o("w")));
        assert_eq!(o("w+2").sub_left(&o("w+1")), None);
        let a = o("w+1");
        let g = o("w^3*2+w^2+w*5+7");
        let (d, e) = a.div_rem_left(&g).unwrap();
        assert!(e < a);
        assert_eq!(a.mul(&d).add(&e), g);
    }

    #[test]
    fn digit_vectors() {
        let x = o("w^2*3+4");
        assert_eq!(x.digits(3), Some(vec![4, 0, 3]));
        assert_eq!(x.digits(2), None);
        assert_eq!(OrdinalNotation::from_digits(&[4, 0, 3]), x);
    }
}
