//! Giant components of random graphs with a prescribed degree sequence.
//!
//! The crate computes the invariants `jD`, `R` and `M` of a degree sequence
//! and the verdict they give on the existence of a linear-order component in
//! a uniformly random simple graph with those degrees. It samples such
//! graphs, builds their kernel multigraphs, runs the edge-exposure
//! exploration process, and evaluates the exact combinatorics of the
//! degree-2 part, together with a Monte Carlo harness that checks each
//! prediction at desk scale.
//!
//! ```
//! use giantcomp::degseq::{DegreeSequence, Verdict};
//!
//! let d = DegreeSequence::parse("#counts\n1\t900\n3\t100\n").unwrap();
//! let inv = d.invariants(30);
//! assert_eq!((inv.j_d, inv.r, inv.m), (1000, 3, 1200));
//! assert_eq!(d.classify(0.1, 0.01, 30).unwrap().verdict, Verdict::NoGiantWhp);
//! ```

pub mod cyclestats;
pub mod degseq;
pub mod error;
pub mod experiments;
pub mod explore;
pub mod graph;
pub mod graphgen;
pub mod kernel;
pub mod powerlaw;
pub mod rng;
pub mod unionfind;

pub use degseq::{DegreeSequence, InvariantReport, Verdict};
pub use error::{Error, Result};
pub use graph::SimpleGraph;
pub use kernel::KernelMultigraph;
