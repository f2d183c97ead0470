//! Exact computations around Dehn surgery on (-2,3,2s+1)-pretzel knots:
//!
//! - integer polynomial arithmetic, Sturm root counting, and Salem/cyclotomic
//!   structure of the pretzel polynomials ([`poly`], [`sturm`], [`cyclotomic`]);
//! - knot group and surgery presentations with homology bookkeeping
//!   ([`word`], [`group`]);
//! - a certificate calculus for order facts about words acting on the line,
//!   with a parser, an independent verifier, and bounded search ([`prover`]);
//! - the Hatcher-Oertel edgepath machinery and the boundary-slope table
//!   ([`slopes`]).

pub mod cyclotomic;
pub mod error;
pub mod group;
pub mod harness;
pub mod poly;
pub mod prover;
pub mod slopes;
pub mod sturm;
pub mod word;
