//! Exact evaluation of the Links–Gould invariants `LG^{2,1}` and `LG^{1,1}`
//! on closed braids.

pub mod alexander;
pub mod braid;
pub mod engine;
pub mod extended;
pub mod knot;
pub mod laurent;
pub mod pd;
pub mod rep;
pub mod vogel;

pub use braid::BraidWord;
pub use engine::{evaluate_invariant, lg11, lg21, EngineError, EvaluationBudget};
pub use extended::ExtendedPoly;
pub use knot::{DtCode, KnotName, KnotRecord, SymmetryClass};
pub use laurent::{LaurentPoly2, Mono, Var};
pub use pd::PdCode;
pub use rep::{Invariant, RepresentationData};
