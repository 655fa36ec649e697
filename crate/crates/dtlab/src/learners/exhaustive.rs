//! Brute-force tree enumeration: the reference implementation the faster
//! learners are checked against on tiny inputs.

use super::Example;
use crate::boolfn::{BoolFn, DecisionTree};

/// All decision trees with exactly `size` leaves over the given variables,
/// never repeating a variable on a root-leaf path.
pub fn enumerate_trees(n: usize, size: u64, avail: &[u32]) -> Vec<DecisionTree> {
    if size == 1 {
        return vec![DecisionTree::leaf(n, false), DecisionTree::leaf(n, true)];
    }
    let mut out = Vec::new();
    for (i, &v) in avail.iter().enumerate() {
        let rest: Vec<u32> = avail
            .iter()
            .enumerate()
            .filter(|&(j, _)| j != i)
            .map(|(_, &u)| u)
            .collect();
        for lo_size in 1..size {
            for lo in enumerate_trees(n, lo_size, &rest) {
                for hi in enumerate_trees(n, size - lo_size, &rest) {
                    out.push(DecisionTree::split(v, lo.clone(), hi));
                }
            }
        }
    }
    out
}

/// Number of trees with at most `max_size` leaves over n variables.
pub fn count_trees(n: usize, max_size: u64) -> u64 {
    let avail: Vec<u32> = (0..n as u32).collect();
    (1..=max_size)
        .map(|s| enumerate_trees(n, s, &avail).len() as u64)
        .sum()
}

/// Smallest tree consistent with the sample, found by enumerating sizes in
/// ascending order. Exponential; intended as an oracle for small cases.
pub fn exhaustive_learn(examples: &[Example], n: usize, max_size: u64) -> Option<DecisionTree> {
    let avail: Vec<u32> = (0..n as u32).collect();
    for s in 1..=max_size {
        for t in enumerate_trees(n, s, &avail) {
            if examples.iter().all(|(x, y)| t.eval(x) == *y) {
                return Some(t);
            }
        }
    }
    None
}
