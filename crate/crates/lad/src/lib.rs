//! Local action diagrams and the universal groups they describe.
//!
//! A local action diagram is a connected graph whose arcs carry disjoint
//! colour sets and whose vertices carry permutation groups with exactly
//! those colour sets as orbits. Each diagram determines a coloured tree and
//! a universal group acting on it, and essentially every global property of
//! that action can be read off the diagram. This crate provides the diagram
//! type with validation and isomorphism, the named constructions
//! (Burger–Mozes style single-vertex diagrams, box products, orbit
//! pairings), the property predicates (geometric density, simplicity,
//! local compactness, compact generation), finite-radius tree balls with
//! their induced automorphism groups, and the classification of
//! vertex-transitive universal groups on small-degree regular trees.
//!
//! Start with the `examples/` directory: each example is a runnable tour of
//! one capability. The `lad` binary exposes the same operations as
//! subcommands over the JSON diagram format.

pub mod ball;
pub mod classify;
pub mod cli;
pub mod corpus;
pub mod diagram;
pub mod dot;
pub mod json;
pub mod perm;
