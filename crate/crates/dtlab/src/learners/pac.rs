//! PAC learners for decision-tree classes, with and without the
//! zero-projection reduction.

use super::{consis_over, draw_examples, occam_sample_size, tree_class_log2, Example};
use crate::boolfn::{BoolFn, DecisionTree, Oracle};
use crate::reductions::{reduce_learner, FindCloseParams};
use crate::{Error, Result};

/// The class of trees with depth ≤ `depth` and size (leaves) ≤ `size`.
#[derive(Clone, Copy, Debug)]
pub struct DtdsParams {
    pub depth: u32,
    pub size: u64,
}

impl DtdsParams {
    pub fn new(depth: u32, size: u64) -> Self {
        assert!(size >= 1);
        DtdsParams { depth, size }
    }

    /// Relevant variables a member can have: min(2^d − 1, s − 1), at least 1.
    pub fn relevant_cap(&self) -> usize {
        let by_depth = if self.depth >= 63 {
            u64::MAX
        } else {
            (1u64 << self.depth).saturating_sub(1)
        };
        by_depth.min(self.size - 1).max(1) as usize
    }
}

fn consis_in_class(
    examples: &[Example],
    n: usize,
    c: &DtdsParams,
    allowed: &[u32],
) -> Result<DecisionTree> {
    let t = consis_over(examples, n, c.depth, allowed)
        .ok_or_else(|| Error::NotInClass(format!("no depth-{} tree fits the sample", c.depth)))?;
    if t.size() > c.size {
        return Err(Error::NotInClass(format!(
            "smallest consistent depth-{} tree has {} leaves, class allows {}",
            c.depth,
            t.size(),
            c.size
        )));
    }
    Ok(t)
}

/// Proper PAC learner for depth/size-bounded trees under any example
/// distribution: draw an Occam-sized sample and return a minimum consistent
/// tree. Intended for small n; use [`learn_dtds_reduced`] when only few of
/// many variables are relevant.
pub fn learn_dtds_distfree<O: Oracle + ?Sized>(
    o: &mut O,
    c: &DtdsParams,
    eps: f64,
    delta: f64,
) -> Result<DecisionTree> {
    let n = o.n();
    let m = occam_sample_size(eps, delta, tree_class_log2(n, c.size));
    let examples = draw_examples(o, m)?;
    let all: Vec<u32> = (0..n as u32).collect();
    consis_in_class(&examples, n, c, &all)
}

/// Zero-projection first (k = size, slack 2, budget δ/2), then the
/// consistency learner at (ε/2, δ/2) over the recovered variables only.
/// Total error: ε/2 from the projection plus ε/2 from learning.
pub fn learn_dtds_reduced<O: Oracle + ?Sized>(
    o: &mut O,
    c: &DtdsParams,
    eps: f64,
    delta: f64,
) -> Result<DecisionTree> {
    let n = o.n();
    let fc = FindCloseParams::new(c.size as usize, eps, delta / 2.0);
    let (tree, _proj) = reduce_learner(o, &fc, |zo, proj| {
        let m = occam_sample_size(eps / 2.0, delta / 2.0, tree_class_log2(n, c.size));
        let examples = draw_examples(zo, m)?;
        let allowed: Vec<u32> = proj.found_relevant.iter().copied().collect();
        consis_in_class(&examples, n, c, &allowed)
    })?;
    Ok(tree)
}

/// Size-only variant of [`learn_dtds_reduced`]: depth is bounded only by
/// the size of the class (a tree with s leaves has depth ≤ s−1).
pub fn learn_dts_reduced<O: Oracle + ?Sized>(
    o: &mut O,
    size: u64,
    eps: f64,
    delta: f64,
) -> Result<DecisionTree> {
    let c = DtdsParams::new((size.saturating_sub(1)).min(u32::MAX as u64) as u32, size);
    learn_dtds_reduced(o, &c, eps, delta)
}

/// Proper learner for size-bounded trees under the uniform distribution.
///
/// A size-s tree agrees with its depth-t truncation except on mass s·2^-t,
/// so with t = 2·⌈log2 m⌉ an m-point sample is consistent with the
/// truncation with probability ≥ 1 − s/m. Each of K = ⌈log2(2/δ)⌉
/// repetitions draws a fresh sample and keeps a minimum consistent tree;
/// a selection round of ⌈(12/ε)·ln(2K/δ)⌉ fresh examples returns the
/// candidate with fewest disagreements.
pub fn learn_dts_uniform<O: Oracle + ?Sized>(
    o: &mut O,
    size: u64,
    eps: f64,
    delta: f64,
) -> Result<DecisionTree> {
    let all: Vec<u32> = (0..o.n() as u32).collect();
    learn_dts_uniform_over(o, size, eps, delta, &all)
}

fn learn_dts_uniform_over<O: Oracle + ?Sized>(
    o: &mut O,
    size: u64,
    eps: f64,
    delta: f64,
    allowed: &[u32],
) -> Result<DecisionTree> {
    let n = o.n();
    let reps = ((2.0 / delta).log2().ceil() as u64).max(1);
    let m = occam_sample_size(eps / 10.0, 0.25, tree_class_log2(n, size)).max(8 * size);
    let depth = (2 * (m as f64).log2().ceil() as u32).min(allowed.len() as u32);
    let mut candidates = Vec::new();
    for _ in 0..reps {
        let examples = draw_examples(o, m)?;
        if let Some(t) = consis_over(&examples, n, depth, allowed) {
            if t.size() <= size {
                candidates.push(t);
            }
        }
    }
    if candidates.is_empty() {
        return Err(Error::NotInClass(format!(
            "no repetition produced a consistent tree with ≤ {size} leaves"
        )));
    }
    let r = ((12.0 / eps) * (2.0 * reps as f64 / delta).ln()).ceil() as u64;
    let fresh = draw_examples(o, r)?;
    let best = candidates
        .into_iter()
        .min_by_key(|t| fresh.iter().filter(|(x, y)| t.eval(x) != *y).count())
        .expect("nonempty candidates");
    Ok(best)
}

/// [`learn_dts_uniform`] behind the zero-projection: the projected labels
/// are a function of ≤ s variables, and the uniform marginal is preserved.
pub fn learn_dts_uniform_reduced<O: Oracle + ?Sized>(
    o: &mut O,
    size: u64,
    eps: f64,
    delta: f64,
) -> Result<DecisionTree> {
    let fc = FindCloseParams::new(size as usize, eps, delta / 2.0);
    let (tree, _proj) = reduce_learner(o, &fc, |zo, proj| {
        let allowed: Vec<u32> = proj.found_relevant.iter().copied().collect();
        learn_dts_uniform_over(zo, size, eps / 2.0, delta / 2.0, &allowed)
    })?;
    Ok(tree)
}
