//! Measures, digit characterizations, the Cantor function and scale diagnostics.

pub mod cantor_function;
pub mod expansion;
pub mod measure;
pub mod scales;

pub use cantor_function::cantor_function;
pub use expansion::{
    characterization_equivalence_check, expansion_characterization, expansion_membership, find_expansion,
    CharacterizationVerdict, DeadEnd, DigitExpansion, ExpansionSpec,
};
pub use measure::{limit_measure, max_component_length, removed_at_step, stage_measure, LimitMeasure};
pub use scales::{moran_residual, perfectness_witness, scale_census, similarity_dimension};
