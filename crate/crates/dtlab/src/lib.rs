//! Learning and property-testing toolkit for boolean functions on the cube
//! {0,1}^n, centered on decision trees.
//!
//! The crate is organized around four interchangeable function
//! representations (decision trees, disjoint term sums, multilinear XOR
//! polynomials, truth tables) plus a query-counting oracle abstraction.
//! On top of those sit:
//!
//! * `algebra` — membership-query primitives: non-constancy probes, relevant
//!   variable discovery, maximal-monomial growth, exact interpolation, and
//!   the `cd`/`psize` diagnostics.
//! * `learners` — consistent-hypothesis search (`consis`), Occam sample
//!   sizing, proper and non-proper PAC learners, exact learners, and the
//!   truth-table DP that serves as the minimality ground truth.
//! * `reductions` — the attribute-efficient projection front end
//!   (`find_close`) and the generic learner→learner / learner→tester /
//!   tester→tester wrappers built on it.
//! * `testers` — the three query testers (depth, size under uniform, and the
//!   greedy-restriction depth tester) emitting structured reports.
//! * `symbolic` — zero-query reference constructions over explicit
//!   polynomials, used as independent oracles by the test suites.
//!
//! All randomness flows from a single 64-bit seed through `rng::RngFactory`;
//! equal seeds and equal call sequences reproduce transcripts byte for byte.

pub mod algebra;
pub mod boolfn;
pub mod gen;
pub mod io;
pub mod learners;
pub mod reductions;
pub mod rng;
pub mod symbolic;
pub mod testers;

mod error;

pub use error::{Error, Result};
