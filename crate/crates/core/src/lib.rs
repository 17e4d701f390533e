//! Finite loop toolkit: Cayley tables, identity checking, multiplication
//! groups, variety classification, a finite model finder and Steiner loops.

pub mod corpus;
pub mod finder;
pub mod loops;
pub mod perm;
pub mod steiner;
pub mod term;
pub mod varieties;

pub use finder::{Mode, SearchOutcome, SearchProblem, Status};
pub use loops::{CayleyLoop, LoopError, SubloopClosure};
pub use perm::{GeneratedGroup, InnerLabel, PermError, Permutation};
pub use steiner::TripleSystem;
pub use term::{CheckResult, Identity, Term, TermError};
pub use varieties::{classify, Property, PropertyReport, PropertyValue, VarietyError};
