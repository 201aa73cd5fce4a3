use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::coding::Nat;

/// Evidence attached to a decided verdict.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Certificate {
    /// Decided by a symbol's extension.
    Atomic,
    /// Decided from the verdicts of immediate subformulas.
    Connective,
    /// An existential instance that holds.
    Witness(Nat),
    /// A universal instance that fails.
    Counterexample(Nat),
    /// Every instance below `bound` was decided and the quantifier is
    /// syntactically bounded below `bound`.
    Exhaustion { bound: u64 },
    /// The queried number codes no admissible formula.
    NotACode,
    /// Agreement on every probed point.
    Probes { count: u64 },
    /// Disagreement at one entry of a derivation.
    Mismatch { entry: usize, point: Nat },
}

impl Serialize for Certificate {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("Certificate", 2)?;
        match self {
            Certificate::Atomic => st.serialize_field("kind", "atomic")?,
            Certificate::Connective => st.serialize_field("kind", "connective")?,
            Certificate::Witness(n) => {
                st.serialize_field("kind", "witness")?;
                st.serialize_field("value", &n.to_string())?;
            }
            Certificate::Counterexample(n) => {
                st.serialize_field("kind", "counterexample")?;
                st.serialize_field("value", &n.to_string())?;
            }
            Certificate::Exhaustion { bound } => {
                st.serialize_field("kind", "exhaustion")?;
                st.serialize_field("bound", bound)?;
            }
            Certificate::NotACode => st.serialize_field("kind", "not_a_code")?,
            Certificate::Probes { count } => {
                st.serialize_field("kind", "probes")?;
                st.serialize_field("count", count)?;
            }
            Certificate::Mismatch { entry, point } => {
                st.serialize_field("kind", "mismatch")?;
                st.serialize_field("entry", entry)?;
                st.serialize_field("point", &point.to_string())?;
            }
        }
        st.end()
    }
}

/// Three-valued verdict. `True` and `False` are sound for the standard
/// semantics over the naturals.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    True(Certificate),
    False(Certificate),
    Unknown,
}

impl Verdict {
    pub fn from_bool(b: bool, cert: Certificate) -> Verdict {
        if b {
            Verdict::True(cert)
        } else {
            Verdict::False(cert)
        }
    }

    pub fn from_truth(t: Option<bool>, cert: Certificate) -> Verdict {
        t.map_or(Verdict::Unknown, |b| Verdict::from_bool(b, cert))
    }

    pub fn truth(&self) -> Option<bool> {
        match self {
            Verdict::True(_) => Some(true),
            Verdict::False(_) => Some(false),
            Verdict::Unknown => None,
        }
    }

    pub fn is_decided(&self) -> bool {
        !matches!(self, Verdict::Unknown)
    }

    pub fn label(&self) -> &'static str {
        match self {
            Verdict::True(_) => "true",
            Verdict::False(_) => "false",
            Verdict::Unknown => "unknown",
        }
    }

    pub fn certificate(&self) -> Option<&Certificate> {
        match self {
            Verdict::True(c) | Verdict::False(c) => Some(c),
            Verdict::Unknown => None,
        }
    }

    /// Negation; the certificate becomes a connective certificate.
    pub fn negate(&self) -> Verdict {
        Verdict::from_truth(self.truth().map(|b| !b), Certificate::Connective)
    }
}

impl Serialize for Verdict {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("Verdict", 2)?;
        st.serialize_field("verdict", self.label())?;
        st.serialize_field("certificate", &self.certificate())?;
        st.end()
    }
}

/// Strong Kleene conjunction.
pub fn kleene_and(a: Option<bool>, b: Option<bool>) -> Option<bool> {
    match (a, b) {
        (Some(false), _) | (_, Some(false)) => Some(false),
        (Some(true), Some(true)) => Some(true),
        _ => None,
    }
}

/// Strong Kleene disjunction.
pub fn kleene_or(a: Option<bool>, b: Option<bool>) -> Option<bool> {
    match (a, b) {
        (Some(true), _) | (_, Some(true)) => Some(true),
        (Some(false), Some(false)) => Some(false),
        _ => None,
    }
}

/// Strong Kleene value of a binary connective.
pub fn kleene(op: crate::syntax::Connective, a: Option<bool>, b: Option<bool>) -> Option<bool> {
    use crate::syntax::Connective::*;
    match op {
        And => kleene_and(a, b),
        Or => kleene_or(a, b),
        Implies => kleene_or(a.map(|x| !x), b),
        Iff => Some(a? == b?),
    }
}

/// Fuel: the quantifier search bound `B` and the sentence-size bound `S`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct Fuel {
    pub quantifier_bound: u64,
    pub size_bound: usize,
}

impl Fuel {
    pub fn new(quantifier_bound: u64, size_bound: usize) -> Fuel {
        assert!(quantifier_bound >= 1 && size_bound >= 1, "fuel bounds are positive");
        Fuel {
            quantifier_bound,
            size_bound,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::Connective;

    #[test]
    fn kleene_tables() {
        let vals = [Some(true), Some(false), None];
        for a in vals {
            for b in vals {
                let and = kleene(Connective::And, a, b);
                if a == Some(false) || b == Some(false) {
                    assert_eq!(and, Some(false));
                }
                if let (Some(x), Some(y)) = (a, b) {
                    assert_eq!(kleene(Connective::Iff, a, b), Some(x == y));
                    assert_eq!(kleene(Connective::Implies, a, b), Some(!x || y));
                }
            }
        }
        assert_eq!(kleene(Connective::Implies, Some(false), None), Some(true));
        assert_eq!(kleene(Connective::Iff, Some(true), None), None);
    }

    #[test]
    fn serialization() {
        let v = Verdict::True(Certificate::Witness(Nat::from(5u32)));
        let j = serde_json::to_value(&v).unwrap();
        assert_eq!(j["verdict"], "true");
        assert_eq!(j["certificate"]["value"], "5");
        assert_eq!(
            serde_json::to_value(Verdict::Unknown).unwrap()["certificate"],
            serde_json::Value::Null
        );
    }
}
