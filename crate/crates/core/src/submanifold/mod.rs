//! Level-set families, tangency classes of fields and forms, normal frames,
//! projections, tangent generating sets and operator-relation checks.

mod classify;
mod generators;
mod level_set;
mod relations;

pub use classify::{classify_form, classify_vector, perp_decomposition, FormClass, TangencyClass};
pub use generators::{tangent_generators, TangentGenerators};
pub use level_set::{LevelSetFamily, Part};
pub use relations::{centrality, star_duality, RelationReport};
