//! Exact minimum decision trees from a full truth table.
//!
//! Dynamic program over subcubes: a subcube is (mask, vals) with `mask` the
//! set of fixed variables and `vals` their values. Each of the 3^n subcubes
//! is solved once; a subcube is constant iff both child subcubes of its
//! first free variable are constant with equal value.

use crate::boolfn::{DecisionTree, TruthTable};
use crate::{Error, Result};
use std::collections::HashMap;

/// Largest arity the 3^n subcube program accepts.
pub const TABLE_DP_CAP: usize = 16;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Objective {
    /// Fewest leaves; ties by smaller depth, then smaller root variable.
    MinSize,
    /// Smallest depth; ties by fewer leaves, then smaller root variable.
    MinDepthThenSize,
}

#[derive(Clone, Copy)]
struct Entry {
    size: u64,
    depth: u32,
    /// Chosen root variable; u32::MAX marks a leaf.
    split: u32,
    leaf: bool,
}

struct Dp<'a> {
    tt: &'a TruthTable,
    n: usize,
    objective: Objective,
    constant: HashMap<(u32, u32), Option<bool>>,
    best: HashMap<(u32, u32), Entry>,
}

impl Dp<'_> {
    fn constant(&mut self, mask: u32, vals: u32) -> Option<bool> {
        if mask.count_ones() as usize == self.n {
            // A fully fixed subcube is the single point whose bit i is the
            // value of variable i.
            return Some(self.tt.get(vals as u64));
        }
        if let Some(hit) = self.constant.get(&(mask, vals)) {
            return *hit;
        }
        let v = (0..self.n as u32)
            .find(|v| mask & (1 << v) == 0)
            .expect("free variable exists");
        let bit = 1u32 << v;
        let c0 = self.constant(mask | bit, vals);
        let c1 = self.constant(mask | bit, vals | bit);
        let out = match (c0, c1) {
            (Some(a), Some(b)) if a == b => Some(a),
            _ => None,
        };
        self.constant.insert((mask, vals), out);
        out
    }

    fn solve(&mut self, mask: u32, vals: u32) -> Entry {
        if let Some(hit) = self.best.get(&(mask, vals)) {
            return *hit;
        }
        let entry = if let Some(b) = self.constant(mask, vals) {
            Entry {
                size: 1,
                depth: 0,
                split: u32::MAX,
                leaf: b,
            }
        } else {
            let mut best: Option<Entry> = None;
            for v in 0..self.n as u32 {
                let bit = 1u32 << v;
                if mask & bit != 0 {
                    continue;
                }
                let e0 = self.solve(mask | bit, vals);
                let e1 = self.solve(mask | bit, vals | bit);
                let cand = Entry {
                    size: e0.size + e1.size,
                    depth: 1 + e0.depth.max(e1.depth),
                    split: v,
                    leaf: false,
                };
                let better = match best {
                    None => true,
                    Some(b) => match self.objective {
                        Objective::MinSize => {
                            (cand.size, cand.depth) < (b.size, b.depth)
                        }
                        Objective::MinDepthThenSize => {
                            (cand.depth, cand.size) < (b.depth, b.size)
                        }
                    },
                };
                if better {
                    best = Some(cand);
                }
            }
            best.expect("non-constant subcube has a free variable")
        };
        self.best.insert((mask, vals), entry);
        entry
    }

    fn build(&mut self, mask: u32, vals: u32) -> DecisionTree {
        let e = self.solve(mask, vals);
        if e.split == u32::MAX {
            DecisionTree::leaf(self.n, e.leaf)
        } else {
            let bit = 1u32 << e.split;
            let lo = self.build(mask | bit, vals);
            let hi = self.build(mask | bit, vals | bit);
            DecisionTree::split(e.split, lo, hi)
        }
    }
}

/// Exact optimal decision tree for the table under the given objective.
pub fn min_dt_from_truth_table(tt: &TruthTable, objective: Objective) -> Result<DecisionTree> {
    if tt.n() > TABLE_DP_CAP {
        return Err(Error::EnumerationCap {
            needed: tt.n(),
            cap: TABLE_DP_CAP,
        });
    }
    let mut dp = Dp {
        tt,
        n: tt.n(),
        objective,
        constant: HashMap::new(),
        best: HashMap::new(),
    };
    Ok(dp.build(0, 0))
}

/// Minimum leaf count together with a witness tree.
pub fn min_size_from_truth_table(tt: &TruthTable) -> Result<(u64, DecisionTree)> {
    let t = min_dt_from_truth_table(tt, Objective::MinSize)?;
    Ok((t.size(), t))
}

/// Minimum depth together with a witness tree of minimum size at that depth.
pub fn min_depth_from_truth_table(tt: &TruthTable) -> Result<(u32, DecisionTree)> {
    let t = min_dt_from_truth_table(tt, Objective::MinDepthThenSize)?;
    Ok((t.depth(), t))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::boolfn::{F2Polynomial, Monomial, TruthTable};

    #[test]
    fn constants_are_single_leaves() {
        let tt = TruthTable::from_anf(&F2Polynomial::one(3));
        let (s, t) = min_size_from_truth_table(&tt).unwrap();
        assert_eq!(s, 1);
        assert_eq!(t.depth(), 0);
    }

    #[test]
    fn parity_needs_a_complete_tree() {
        let tt = TruthTable::from_anf(&F2Polynomial::parity(3, &[0, 1, 2]));
        let (s, _) = min_size_from_truth_table(&tt).unwrap();
        assert_eq!(s, 8);
        let (d, _) = min_depth_from_truth_table(&tt).unwrap();
        assert_eq!(d, 3);
    }

    #[test]
    fn majority_of_three_minima() {
        let maj = F2Polynomial::from_monomials(
            3,
            [
                Monomial::new([0, 1]),
                Monomial::new([0, 2]),
                Monomial::new([1, 2]),
            ],
        );
        let tt = TruthTable::from_anf(&maj);
        let (s, ts) = min_size_from_truth_table(&tt).unwrap();
        assert_eq!(s, 6);
        assert_eq!(TruthTable::from_boolfn(&ts), tt);
        let (d, td) = min_depth_from_truth_table(&tt).unwrap();
        assert_eq!(d, 3);
        assert_eq!(td.size(), 6, "min size is attained at min depth here");
    }

    #[test]
    fn single_variable_projection() {
        let tt = TruthTable::from_anf(&F2Polynomial::parity(4, &[2]));
        let (s, t) = min_size_from_truth_table(&tt).unwrap();
        assert_eq!(s, 2);
        assert_eq!(t.vars_used(), vec![2]);
    }

    #[test]
    fn cap_is_enforced() {
        let tt = TruthTable::zeros(17);
        assert!(matches!(
            min_dt_from_truth_table(&tt, Objective::MinSize),
            Err(Error::EnumerationCap { .. })
        ));
    }
}
