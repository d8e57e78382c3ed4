//! Multi-agent path finding on 2D/3D grids with polynomial running time and
//! bounded makespan, built from three-phase row/column shuffle pipelines.
//!
//! The solver family covers full agent density (`grm2`/`grm4`), one-third
//! density with optional regularly spaced obstacles (`grh`), one-half density
//! (`grlm`), arbitrary instances up to one-half density, and 3D variants of
//! each. Supporting machinery includes regular bipartite matching
//! decomposition, bottleneck-assignment heuristics, max-flow unlabeled
//! routing over time-expanded graphs, MCP-style path refinement, an
//! exhaustive optimal oracle for tiny instances, and a benchmark harness.

pub mod bench;
pub mod grid;
pub mod matching;
pub mod oracle;
pub mod refine;
pub mod shuffle;
pub mod solvers;
pub mod unlabeled;
