//! Null models and synthetic graph generators.

mod generators;
mod rewire;

pub use generators::{
    core_periphery_fit, gen_convex, gen_core_periphery, gen_er, gen_lattice, gen_random_tree, gen_uniform_tree, generate,
    CorePeripheryFit, GeneratorConfig, GeneratorKind, LatticeKind, Reattach,
};
pub use rewire::{rewire_degree_preserving, rewire_full, RewireOutcome};
