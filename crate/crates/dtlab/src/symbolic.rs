//! Offline analysis of the implicit trees a polynomial induces.
//!
//! Two constructions recur in the testers. The maximal-monomial tree
//! queries, at each node, all variables of some maximal monomial of the
//! current restriction; a route ends when the restriction is constant,
//! and its depth is the number of variables read. The greedy tree splits
//! on the variable occurring in the most monomials. Both are computed
//! here exactly from the polynomial, giving the testers' query-driven
//! routes something to be checked against.

use crate::boolfn::{Assignment, DecisionTree, F2Polynomial, Monomial};
use crate::{Error, Result};
use std::collections::BTreeSet;
use std::collections::HashMap;

/// Worst route depth of the maximal-monomial tree over every choice of
/// maximal monomial at every node and every value pattern — an upper bound
/// on what any query-driven route can experience. Errors out if some route
/// exceeds `cap`.
pub fn max_tf_route_depth(f: &F2Polynomial, cap: usize) -> Result<usize> {
    fn go(
        memo: &mut HashMap<BTreeSet<Monomial>, usize>,
        f: &F2Polynomial,
        cap: usize,
    ) -> Result<usize> {
        if f.is_constant().is_some() {
            return Ok(0);
        }
        if let Some(&hit) = memo.get(f.monomial_set()) {
            return Ok(hit);
        }
        let mut worst = 0usize;
        for m in f.maximal_monomials() {
            let vars = m.vars().to_vec();
            debug_assert!(!vars.is_empty(), "non-constant restrictions have variables");
            for pattern in 0u64..(1 << vars.len()) {
                let mut g = f.clone();
                for (i, &v) in vars.iter().enumerate() {
                    g = g.restrict(v, (pattern >> i) & 1 == 1);
                }
                let below = go(memo, &g, cap)?;
                let depth = vars.len() + below;
                if depth > cap {
                    return Err(Error::EnumerationCap {
                        needed: depth,
                        cap,
                    });
                }
                worst = worst.max(depth);
            }
        }
        memo.insert(f.monomial_set().clone(), worst);
        Ok(worst)
    }
    go(&mut HashMap::new(), f, cap)
}

/// The variable occurring in the most monomials of f, ties to the smallest
/// index. None when f is constant.
pub fn most_frequent_var(f: &F2Polynomial) -> Option<u32> {
    let mut freq: HashMap<u32, usize> = HashMap::new();
    for m in f.monomials() {
        for &v in m.vars() {
            *freq.entry(v).or_default() += 1;
        }
    }
    freq.into_iter()
        .max_by(|(va, ca), (vb, cb)| ca.cmp(cb).then(vb.cmp(va)))
        .map(|(v, _)| v)
}

/// Decision tree built by always splitting on the most frequent variable
/// of the current restriction. Errs when more than `node_cap` nodes are
/// needed.
pub fn psize_greedy_tree(f: &F2Polynomial, node_cap: usize) -> Result<DecisionTree> {
    fn go(f: &F2Polynomial, nodes_left: &mut isize) -> Result<DecisionTree> {
        *nodes_left -= 1;
        if *nodes_left < 0 {
            return Err(Error::EnumerationCap {
                needed: 0,
                cap: 0,
            });
        }
        match f.is_constant() {
            Some(b) => Ok(DecisionTree::leaf(f.n(), b)),
            None => {
                let v = most_frequent_var(f).expect("non-constant poly has variables");
                let lo = go(&f.restrict(v, false), nodes_left)?;
                let hi = go(&f.restrict(v, true), nodes_left)?;
                Ok(DecisionTree::split(v, lo, hi))
            }
        }
    }
    let mut budget = node_cap as isize;
    go(f, &mut budget).map_err(|_| Error::EnumerationCap {
        needed: node_cap + 1,
        cap: node_cap,
    })
}

/// Follow `point` down the greedy splits of f without building the whole
/// tree: returns the number of steps and the leaf value, or None for the
/// value if `depth_cap` steps pass without reaching a constant.
pub fn greedy_descend(
    f: &F2Polynomial,
    point: &Assignment,
    depth_cap: usize,
) -> (usize, Option<bool>) {
    let mut g = f.clone();
    let mut depth = 0usize;
    loop {
        if let Some(b) = g.is_constant() {
            return (depth, Some(b));
        }
        if depth >= depth_cap {
            return (depth, None);
        }
        let v = most_frequent_var(&g).expect("non-constant poly has variables");
        g = g.restrict(v, point.get(v));
        depth += 1;
    }
}
