//! Interval IFS branches, cylinders, the geometric potential and projection.

pub mod branch;
pub mod interval;
pub mod lemma1;
pub mod potential;
pub mod system;
pub mod table;

pub use branch::{
    Affine, Branch, BranchMap, MannevillePomeauInverse, ParabolicLeft, ParabolicRight,
};
pub use interval::Interval;
pub use lemma1::{lemma1_gap, SamplingPlan};
pub use potential::{GeometricPotential, Potential, ProjectedPotential};
pub use system::IfsSystem;
pub use table::{word_stats, CylinderTable, WordStats};
