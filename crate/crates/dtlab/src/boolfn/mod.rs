//! Core function representations and the query model.

mod assignment;
mod distance;
mod distribution;
mod oracle;
mod poly;
mod terms;
mod tree;
mod truth_table;

pub use assignment::{Assignment, RestrictionSeq};
pub use distance::{distance, exact_distance, sampled_distance, DistanceMode, EXACT_ENUM_CAP};
pub use distribution::{Distribution, ExplicitDist, PointSampler};
pub use oracle::{Oracle, OracleSession, QueryCounts, RestrictedOracle, ShiftedOracle, ZeroedOracle};
pub use poly::{F2Polynomial, Monomial, SizeRange};
pub use terms::{DisjointTermSum, Term};
pub use tree::{DecisionTree, Node};
pub use truth_table::TruthTable;

/// A total boolean function on {0,1}^n. All four concrete representations
/// implement this, as do ad-hoc closures via [`FnBoolFn`].
pub trait BoolFn: Send + Sync {
    fn n_vars(&self) -> usize;
    fn eval(&self, x: &Assignment) -> bool;
}

/// Wrap a closure as a [`BoolFn`]; handy for hidden targets in tests.
pub struct FnBoolFn<F: Fn(&Assignment) -> bool + Send + Sync> {
    n: usize,
    f: F,
}

impl<F: Fn(&Assignment) -> bool + Send + Sync> FnBoolFn<F> {
    pub fn new(n: usize, f: F) -> Self {
        FnBoolFn { n, f }
    }
}

impl<F: Fn(&Assignment) -> bool + Send + Sync> BoolFn for FnBoolFn<F> {
    fn n_vars(&self) -> usize {
        self.n
    }
    fn eval(&self, x: &Assignment) -> bool {
        (self.f)(x)
    }
}

impl<T: BoolFn + ?Sized> BoolFn for &T {
    fn n_vars(&self) -> usize {
        (**self).n_vars()
    }
    fn eval(&self, x: &Assignment) -> bool {
        (**self).eval(x)
    }
}

impl<T: BoolFn + ?Sized> BoolFn for std::sync::Arc<T> {
    fn n_vars(&self) -> usize {
        (**self).n_vars()
    }
    fn eval(&self, x: &Assignment) -> bool {
        (**self).eval(x)
    }
}

impl<T: BoolFn + ?Sized> BoolFn for Box<T> {
    fn n_vars(&self) -> usize {
        (**self).n_vars()
    }
    fn eval(&self, x: &Assignment) -> bool {
        (**self).eval(x)
    }
}
