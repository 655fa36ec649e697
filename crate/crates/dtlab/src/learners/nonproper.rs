//! Consistency search that trades tree size for polynomial time.
//!
//! Any tree with s leaves has a root where one branch carries at most
//! ⌊s/2⌋ leaves. The search tries every (variable, light side) pair: the
//! light branch recurses with budget ⌊s/2⌋, the heavy branch keeps budget s
//! with one fewer variable. Memoizing cells makes the search polynomial for
//! fixed s; the output obeys the size recursion
//! S(v, s) = S(v−1, ⌊s/2⌋) + S(v−1, s), S(·, 1) = S(0, ·) = 1,
//! which is quasipolynomial (≈ v^log2 s) rather than minimum.

use super::{draw_examples, occam_sample_size, tree_class_log2, Example};
use crate::boolfn::{DecisionTree, Oracle};
use crate::reductions::{reduce_learner, FindCloseParams};
use crate::{Error, Result};
use std::collections::HashMap;

/// Size bound S(v, s) on the returned tree, saturating.
pub fn eh89_size_bound(vars: usize, size: u64) -> u64 {
    fn s(memo: &mut HashMap<(usize, u64), u64>, v: usize, b: u64) -> u64 {
        if b <= 1 || v == 0 {
            return 1;
        }
        if let Some(&hit) = memo.get(&(v, b)) {
            return hit;
        }
        let out = s(memo, v - 1, b / 2).saturating_add(s(memo, v - 1, b));
        memo.insert((v, b), out);
        out
    }
    s(&mut HashMap::new(), vars, size)
}

type Key = (Vec<(u32, bool)>, u64);

struct Search<'a> {
    examples: &'a [Example],
    allowed: Vec<u32>,
    memo: HashMap<Key, Option<DecisionTree>>,
    n: usize,
}

impl Search<'_> {
    fn cell(&self, fixed: &[(u32, bool)]) -> Vec<usize> {
        (0..self.examples.len())
            .filter(|&i| fixed.iter().all(|&(v, b)| self.examples[i].0.get(v) == b))
            .collect()
    }

    fn solve(&mut self, fixed: Vec<(u32, bool)>, budget: u64) -> Option<DecisionTree> {
        let key = (fixed.clone(), budget);
        if let Some(hit) = self.memo.get(&key) {
            return hit.clone();
        }
        let cell = self.cell(&fixed);
        let out = self.solve_cell(&fixed, &cell, budget);
        self.memo.insert(key, out.clone());
        out
    }

    fn solve_cell(
        &mut self,
        fixed: &[(u32, bool)],
        cell: &[usize],
        budget: u64,
    ) -> Option<DecisionTree> {
        if cell.is_empty() {
            return Some(DecisionTree::leaf(self.n, false));
        }
        let first = self.examples[cell[0]].1;
        if cell.iter().all(|&i| self.examples[i].1 == first) {
            return Some(DecisionTree::leaf(self.n, first));
        }
        if budget <= 1 {
            return None;
        }
        let vars: Vec<u32> = self
            .allowed
            .iter()
            .copied()
            .filter(|v| !fixed.iter().any(|&(u, _)| u == *v))
            .collect();
        for v in vars {
            let ones = cell.iter().filter(|&&i| self.examples[i].0.get(v)).count();
            if ones == 0 || ones == cell.len() {
                continue;
            }
            for light in [false, true] {
                let mut fl = fixed.to_vec();
                fl.push((v, light));
                fl.sort_unstable();
                let Some(light_tree) = self.solve(fl, budget / 2) else {
                    continue;
                };
                let mut fh = fixed.to_vec();
                fh.push((v, !light));
                fh.sort_unstable();
                let Some(heavy_tree) = self.solve(fh, budget) else {
                    continue;
                };
                let (lo, hi) = if light {
                    (heavy_tree, light_tree)
                } else {
                    (light_tree, heavy_tree)
                };
                return Some(DecisionTree::split(v, lo, hi));
            }
        }
        None
    }
}

/// Find a tree consistent with the sample whenever some tree with ≤ `size`
/// leaves is; the result may have up to S(n, size) leaves. None certifies
/// that no tree with ≤ `size` leaves fits the sample.
pub fn learn_nonproper_eh89(
    examples: &[Example],
    n: usize,
    size: u64,
    allowed: Option<&[u32]>,
) -> Option<DecisionTree> {
    let mut allowed: Vec<u32> = match allowed {
        Some(vs) => vs.to_vec(),
        None => (0..n as u32).collect(),
    };
    allowed.sort_unstable();
    allowed.dedup();
    let mut s = Search {
        examples,
        allowed,
        memo: HashMap::new(),
        n,
    };
    s.solve(Vec::new(), size)
}

/// PAC wrapper: the hypothesis class is everything the search can emit,
/// i.e. trees of ≤ S(n, size) leaves, which sets the Occam sample size.
pub fn learn_nonproper_pac<O: Oracle + ?Sized>(
    o: &mut O,
    size: u64,
    eps: f64,
    delta: f64,
) -> Result<DecisionTree> {
    let n = o.n();
    let m = occam_sample_size(eps, delta, tree_class_log2(n, eh89_size_bound(n, size)));
    let examples = draw_examples(o, m)?;
    learn_nonproper_eh89(&examples, n, size, None).ok_or_else(|| {
        Error::NotInClass(format!("no tree with ≤ {size} leaves fits the sample"))
    })
}

/// Zero-projection first, then the search over the recovered variables;
/// the size bound (and the sample size) shrink from S(n, s) to S(k, s).
pub fn learn_nonproper_reduced<O: Oracle + ?Sized>(
    o: &mut O,
    size: u64,
    eps: f64,
    delta: f64,
) -> Result<DecisionTree> {
    let n = o.n();
    let fc = FindCloseParams::new(size as usize, eps, delta / 2.0);
    let (tree, _) = reduce_learner(o, &fc, |zo, proj| {
        let k = proj.found_relevant.len().max(1);
        let m = occam_sample_size(
            eps / 2.0,
            delta / 2.0,
            tree_class_log2(n, eh89_size_bound(k, size)),
        );
        let examples = draw_examples(zo, m)?;
        let allowed: Vec<u32> = proj.found_relevant.iter().copied().collect();
        learn_nonproper_eh89(&examples, n, size, Some(&allowed)).ok_or_else(|| {
            Error::NotInClass(format!("no tree with ≤ {size} leaves fits the sample"))
        })
    })?;
    Ok(tree)
}
