//! Determinantal generator sets for Rees ideals of `I_{d+1}` and their
//! verification against elimination.

mod case;
mod matrices;
mod tensors;
mod verify;

pub use case::{rho, CaseData, CaseTag};
pub use matrices::{
    build_b, build_j, build_m, build_x, linear_relations, theorem_generators, GeneratorSource, LabeledGenerators,
    SymbolMatrix,
};
pub use tensors::{coefficient_tensors, CoefficientTensors, Splitting};
pub use verify::{
    bigraded_minimal_generators, d0, rees_via_elimination, rees_via_elimination_case, verify_theorem, VerifyOptions,
};

#[cfg(test)]
mod tests;
