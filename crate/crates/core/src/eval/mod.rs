//! Three-valued, fuel-bounded truth for sentences of a structure, partial
//! truth predicates, the universal predicate, derivations, and the Tarski
//! clause check.

mod derivation;
mod evaluator;
mod tarski;
mod truth;
mod universal;
mod verdict;

pub use derivation::{check_formula_derivation, check_truth_derivation, formula_derivation, MAX_PROBES};
pub use evaluator::{eval_sentence, guard_term, is_delta0, level, EvalError, Evaluator, SecondOrderInterp};
pub use tarski::{tarski_fixpoint_check, TarskiChecker, Violation};
pub use truth::{tr_k, truth_predicate_approx, Entry, PartialTruthSet};
pub use universal::{universal_predicate, UniversalPredicate, UniversalView};
pub use verdict::{kleene, kleene_and, kleene_or, Certificate, Fuel, Verdict};
