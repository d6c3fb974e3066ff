//! Independent baselines for the closed-form solver: Davenport's q-method,
//! a brute-force sampler, and a seeded instance generator.

pub mod brute;
pub mod davenport;
pub mod instances;
pub mod rng;

pub use brute::{brute_force_min, brute_force_min_with, hurwitz_units};
pub use davenport::{davenport_eigen, davenport_solve, DavenportMatrix, DavenportSolution};
pub use instances::{random_instance, GeneratedInstance, InstanceKind};
pub use rng::{substream, SplitMix64, GENERATOR_ID};
