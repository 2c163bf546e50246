//! Finite soluble groups and the graphs defined on their non-trivial elements.
//!
//! The library constructs concrete finite groups (multiplication tables,
//! permutation groups, matrix groups over GF(p) acting on a vector space),
//! enumerates their non-trivial cyclic subgroups, and builds the five graphs
//! whose adjacency depends only on the generated cyclic subgroups:
//!
//! * commuting: `x ~ y` iff `xy = yx`;
//! * normalising: `x ~ y` iff `<x>` normalises `<y>` or vice versa;
//! * permuting: `x ~ y` iff `<x><y> = <y><x>` as sets;
//! * Engel: `x ~ y` iff an iterated subgroup commutator of `<x>` and `<y>`
//!   reaches the trivial subgroup;
//! * soluble: `x ~ y` iff `<x, y>` is soluble.
//!
//! Because adjacency only depends on the pair of cyclic subgroups, the
//! element-level graph collapses exactly onto the quotient graph on cyclic
//! subgroups, and eccentricities are constant on conjugation orbits. Both
//! reductions are used to compute exact connectivity and diameters of groups
//! with hundreds of thousands of elements.
//!
//! Entry points:
//!
//! * [`construct`] and [`spec`] build groups; [`group`] holds the arithmetic
//!   and subgroup machinery.
//! * [`collapse`] enumerates cyclic subgroups and conjugation orbits.
//! * [`graph`] builds collapsed graphs and answers distance queries.
//! * [`frobenius`] detects Frobenius kernels and the disconnection criterion.
//! * [`verify`] runs executable theorem suites over a corpus of groups.
//! * [`diameter_six`] reproduces the 562,500-element witness group whose
//!   normalising and permuting graphs both have diameter exactly 6.
//!
//! The `examples/` directory contains one runnable program per capability;
//! the `group-graphs` binary exposes the same functionality on the command
//! line.

mod arith;

pub mod cli;
pub mod collapse;
pub mod construct;
pub mod diameter_six;
pub mod frobenius;
pub mod gf;
pub mod graph;
pub mod group;
pub mod spec;
pub mod verify;

pub use collapse::{CyclicId, CyclicSubgroupTable, OrbitDecomposition};
pub use graph::{CollapsedGraph, Diameter, DistanceResult, GraphKind};
pub use group::{ElementId, FiniteGroup, SubgroupSet};
