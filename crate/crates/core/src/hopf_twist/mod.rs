//! Enveloping-algebra elements over a generating set of vector fields,
//! abelian and Jordanian twists, R-matrix, β and the twisted Hopf maps.

pub mod generators;
pub mod legsum;
pub mod twist;
pub mod uelement;

pub use generators::{GenRef, GeneratorSet, Word};
pub use legsum::{coproduct, word_coproduct, LegSum};
pub use twist::{action_table, check_twist_axioms, monomials_up_to, table_mismatches, TwistData, TwistFamily, TwistReport, TwistSpec};
pub use uelement::{ActionMemo, UElement};
