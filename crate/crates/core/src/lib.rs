//! Exact continued-fraction, Farey-tree and slide-tree machinery for
//! embeddings of rational homology balls `B_{p,q}` in (homotopy) CP².
//!
//! Modules, bottom-up:
//!
//! - [`arith`]: formal fractions, Hirzebruch–Jung and Euclidean continued fractions
//! - [`lens`]: lens spaces, ball boundaries `∂B_{p,q} = L(p², pq-1)`, recognition
//! - [`framing`]: framing sequences of the blow-up construction of `B_{p,q}`
//! - [`farey`]: the 2-Farey tree and the classical Farey tree
//! - [`slidetree`]: the four signed slide triple trees
//! - [`cobord`]: the ADDC / ADD4 constructions and the bounded search
//! - [`catalog`]: merging all sources into the table of realised triples
//! - [`cli`]: the `lensball` command line

pub mod arith;
pub mod catalog;
pub mod cli;
pub mod cobord;
pub mod farey;
pub mod framing;
pub(crate) mod json;
pub mod lens;
pub mod slidetree;

pub use arith::{Frac, HjCf};
pub use lens::{BallParams, LensSpace, Sign};
