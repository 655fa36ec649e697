//! Property testers: decide whether the hidden function is in a decision
//! tree class (by depth or size) or far from every member, from queries
//! alone. Every tester returns a [`TesterReport`] with a reproducible
//! transcript.

mod appendix;
mod depth;
mod report;
mod size;

pub use appendix::{test_depth_appendix, AppendixTestParams};
pub use depth::{test_depth_distfree, DepthTestParams};
pub use report::{Decision, TesterReport, WalkSummary};
pub use size::{test_size_uniform, SizeTestParams};
