//! Ribbon graphs from knot diagrams and the quasi-tree polynomial.
//!
//! The pipeline: parse a PD code ([`diagram`]), smooth every crossing into
//! the all-A Kauffman state and assemble the state ribbon graph with its
//! planar rotation system ([`ribbon`]), then count spanning quasi-trees by
//! genus over the resulting combinatorial map ([`map`], [`quasi`]). The
//! evaluation of q at t = -1 is cross-checked against a Goeritz-matrix
//! knot determinant ([`goeritz`]); [`cli`] wires everything into the
//! `quasitree` binary.

pub mod cli;
pub mod diagram;
pub mod goeritz;
pub mod map;
pub mod poly;
pub mod quasi;
pub mod ribbon;
