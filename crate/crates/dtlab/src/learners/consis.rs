//! Minimum-size consistent decision trees over a labeled sample.
//!
//! The search only branches on variables that split the current example cell
//! in two. A split putting every example on one side can be replaced by that
//! side's subtree without losing consistency, size or depth, so restricting
//! to bisecting splits keeps the search complete for both feasibility and
//! minimum size. Cells are determined by the set of (variable, value) pairs
//! fixed on the path, which makes them memo keys.

use super::Example;
use crate::boolfn::DecisionTree;
use std::collections::HashMap;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Choice {
    Leaf(bool),
    Split(u32),
}

type Key = (Vec<(u32, bool)>, u32);

struct Search<'a> {
    examples: &'a [Example],
    allowed: &'a [u32],
    memo: HashMap<Key, Option<(u64, Choice)>>,
}

impl Search<'_> {
    fn cell(&self, fixed: &[(u32, bool)]) -> Vec<usize> {
        (0..self.examples.len())
            .filter(|&i| {
                fixed
                    .iter()
                    .all(|&(v, b)| self.examples[i].0.get(v) == b)
            })
            .collect()
    }

    /// Smallest leaf count of a tree of depth ≤ `budget` consistent with the
    /// cell selected by `fixed`, together with its root choice.
    fn solve(&mut self, fixed: Vec<(u32, bool)>, budget: u32) -> Option<(u64, Choice)> {
        let key = (fixed.clone(), budget);
        if let Some(hit) = self.memo.get(&key) {
            return *hit;
        }
        let cell = self.cell(&fixed);
        let result = self.solve_cell(&fixed, &cell, budget);
        self.memo.insert(key, result);
        result
    }

    fn solve_cell(
        &mut self,
        fixed: &[(u32, bool)],
        cell: &[usize],
        budget: u32,
    ) -> Option<(u64, Choice)> {
        if cell.is_empty() {
            return Some((1, Choice::Leaf(false)));
        }
        let first = self.examples[cell[0]].1;
        if cell.iter().all(|&i| self.examples[i].1 == first) {
            return Some((1, Choice::Leaf(first)));
        }
        if budget == 0 {
            return None;
        }
        let mut best: Option<(u64, Choice)> = None;
        for &v in self.allowed {
            if fixed.iter().any(|&(u, _)| u == v) {
                continue;
            }
            let ones = cell.iter().filter(|&&i| self.examples[i].0.get(v)).count();
            if ones == 0 || ones == cell.len() {
                continue;
            }
            let mut fixed0 = fixed.to_vec();
            fixed0.push((v, false));
            fixed0.sort_unstable();
            let Some((s0, _)) = self.solve(fixed0, budget - 1) else {
                continue;
            };
            let mut fixed1 = fixed.to_vec();
            fixed1.push((v, true));
            fixed1.sort_unstable();
            let Some((s1, _)) = self.solve(fixed1, budget - 1) else {
                continue;
            };
            let total = s0 + s1;
            if best.is_none_or(|(b, _)| total < b) {
                best = Some((total, Choice::Split(v)));
            }
        }
        best
    }

    fn build(&mut self, n: usize, fixed: Vec<(u32, bool)>, budget: u32) -> DecisionTree {
        match self.solve(fixed.clone(), budget).expect("built from a solved cell").1 {
            Choice::Leaf(b) => DecisionTree::leaf(n, b),
            Choice::Split(v) => {
                let mut f0 = fixed.clone();
                f0.push((v, false));
                f0.sort_unstable();
                let mut f1 = fixed;
                f1.push((v, true));
                f1.sort_unstable();
                let lo = self.build(n, f0, budget - 1);
                let hi = self.build(n, f1, budget - 1);
                DecisionTree::split(v, lo, hi)
            }
        }
    }
}

/// Minimum-size decision tree of depth ≤ `depth` over `allowed` variables
/// consistent with the sample, or None if none exists. Among minimum-size
/// trees, ties at each node go to the smallest variable index.
pub fn consis_over(
    examples: &[Example],
    n: usize,
    depth: u32,
    allowed: &[u32],
) -> Option<DecisionTree> {
    let mut allowed: Vec<u32> = allowed.to_vec();
    allowed.sort_unstable();
    allowed.dedup();
    let mut s = Search {
        examples,
        allowed: &allowed,
        memo: HashMap::new(),
    };
    let budget = depth.min(allowed.len() as u32);
    s.solve(Vec::new(), budget)?;
    Some(s.build(n, Vec::new(), budget))
}

/// [`consis_over`] with every variable allowed.
pub fn consis(examples: &[Example], n: usize, depth: u32) -> Option<DecisionTree> {
    let all: Vec<u32> = (0..n as u32).collect();
    consis_over(examples, n, depth, &all)
}

/// Smallest depth admitting a consistent tree, searched upward from 0;
/// the returned tree also has minimum size for that depth.
pub fn consis_min_depth(examples: &[Example], n: usize, max_depth: u32) -> Option<DecisionTree> {
    (0..=max_depth).find_map(|j| consis(examples, n, j))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::boolfn::{Assignment, BoolFn, F2Polynomial};

    fn full_table(f: &F2Polynomial) -> Vec<Example> {
        let n = f.n();
        (0..1u64 << n)
            .map(|i| {
                let x = Assignment::from_index(i, n);
                let y = f.eval(&x);
                (x, y)
            })
            .collect()
    }

    #[test]
    fn xor_needs_depth_two_and_four_leaves() {
        let xor = F2Polynomial::parity(2, &[0, 1]);
        let ex = full_table(&xor);
        assert!(consis(&ex, 2, 1).is_none());
        let t = consis(&ex, 2, 2).unwrap();
        assert_eq!(t.size(), 4);
        for (x, y) in &ex {
            assert_eq!(t.eval(x), *y);
        }
    }

    #[test]
    fn majority_of_three_has_six_leaves_at_depth_three() {
        // maj(x1,x2,x3) = x1x2 + x1x3 + x2x3 over GF(2).
        let maj = F2Polynomial::from_monomials(
            3,
            [
                crate::boolfn::Monomial::new([0, 1]),
                crate::boolfn::Monomial::new([0, 2]),
                crate::boolfn::Monomial::new([1, 2]),
            ],
        );
        let ex = full_table(&maj);
        assert!(consis(&ex, 3, 2).is_none(), "majority needs depth 3");
        let t = consis(&ex, 3, 3).unwrap();
        assert_eq!(t.size(), 6);
        let td = consis_min_depth(&ex, 3, 3).unwrap();
        assert_eq!(td.depth(), 3);
    }

    #[test]
    fn restricting_the_variable_set_is_respected() {
        // Sample realizable over {x2} alone.
        let f = F2Polynomial::parity(3, &[1]);
        let ex = full_table(&f);
        let t = consis_over(&ex, 3, 3, &[1]).unwrap();
        assert_eq!(t.vars_used(), vec![1]);
        assert!(consis_over(&ex, 3, 3, &[0, 2]).is_none());
    }

    #[test]
    fn trivial_and_empty_samples() {
        let t = consis(&[], 4, 0).unwrap();
        assert_eq!(t.size(), 1);
        let x = Assignment::zeros(4);
        assert!(!t.eval(&x), "empty sample defaults to the false leaf");
        let one = vec![(Assignment::from_index(5, 4), true)];
        let t = consis(&one, 4, 0).unwrap();
        assert_eq!(t.size(), 1);
        assert!(t.eval(&Assignment::zeros(4)));
    }

    #[test]
    fn partial_samples_get_minimal_consistent_trees() {
        // Two examples separated by x3 alone: one split suffices.
        let ex = vec![
            (Assignment::from_bitstring("0010").unwrap(), true),
            (Assignment::from_bitstring("0000").unwrap(), false),
        ];
        let t = consis(&ex, 4, 4).unwrap();
        assert_eq!(t.size(), 2);
        assert_eq!(t.vars_used(), vec![2]);
    }
}
