//! Exact identification of depth/size-bounded trees.
//!
//! Two distinct functions with depth-d trees differ on a multilinear
//! polynomial of degree ≤ d, hence on ≥ 2^-d of the uniform cube. PAC
//! learning under uniform with ε < 2^-d therefore pins the target exactly.
//! The universal-set route instead evaluates f on a point set covering all
//! patterns on any 2d coordinates, where two distinct depth-d trees must
//! part ways.

use super::{consis_over, DtdsParams};
use crate::algebra::{find_relevant_vars, ProbeParams, RelevantVars};
use crate::boolfn::{Assignment, Oracle, QueryCounts};
use crate::{Error, Result};
use rand_chacha::ChaCha8Rng;

/// Wraps an oracle so `example()` draws uniform points itself and labels
/// them with membership queries. Exact learners need uniform examples even
/// when the session's example distribution is something else; every
/// synthesized example is accounted as one black-box query.
pub struct UniformExamples<'a, O: Oracle + ?Sized> {
    inner: &'a mut O,
}

impl<'a, O: Oracle + ?Sized> UniformExamples<'a, O> {
    pub fn new(inner: &'a mut O) -> Self {
        UniformExamples { inner }
    }
}

impl<O: Oracle + ?Sized> Oracle for UniformExamples<'_, O> {
    fn n(&self) -> usize {
        self.inner.n()
    }

    fn query(&mut self, x: &Assignment) -> Result<bool> {
        self.inner.query(x)
    }

    fn example(&mut self) -> Result<(Assignment, bool)> {
        let n = self.inner.n();
        let x = Assignment::random(n, self.inner.rng());
        let y = self.inner.query(&x)?;
        Ok((x, y))
    }

    fn rng(&mut self) -> &mut ChaCha8Rng {
        self.inner.rng()
    }

    fn counts(&self) -> QueryCounts {
        self.inner.counts()
    }
}

/// Exact learner for depth/size-bounded trees from membership queries:
/// the reduced PAC learner run under uniform at ε = 2^-(d+2), below the
/// distinguishing distance of the class.
pub fn exact_learn_dtds<O: Oracle + ?Sized>(
    o: &mut O,
    c: &DtdsParams,
    delta: f64,
) -> Result<crate::boolfn::DecisionTree> {
    let eps = 0.25 * 0.5f64.powi(c.depth as i32);
    let mut u = UniformExamples::new(o);
    super::learn_dtds_reduced(&mut u, c, eps, delta)
}

/// Turn any uniform-distribution PAC learner for a depth-≤d class into an
/// exact learner by running it at ε = 2^-(d+1) with membership-query
/// examples.
pub fn exact_from_pac<O, H, L>(o: &mut O, depth: u32, delta: f64, learner: L) -> Result<H>
where
    O: Oracle + ?Sized,
    L: FnOnce(&mut UniformExamples<'_, O>, f64, f64) -> Result<H>,
{
    let eps = 0.5 * 0.5f64.powi(depth as i32);
    let mut u = UniformExamples::new(o);
    learner(&mut u, eps, delta)
}

/// ⌈2^t·(t·ln n + ln(1/δ))⌉ random points make an (n, t)-universal set with
/// probability ≥ 1 − δ (up to the verification retry).
pub fn universal_sample_size(n: usize, t: usize, delta: f64) -> u64 {
    let t_f = t as f64;
    ((1u64 << t.min(62)) as f64 * (t_f * (n.max(2) as f64).ln() + (1.0 / delta).ln())).ceil()
        as u64
}

/// Check that every pattern on every t-subset of coordinates is hit.
pub fn verify_universal(points: &[Assignment], n: usize, t: usize) -> bool {
    use itertools::Itertools;
    if t == 0 {
        return !points.is_empty();
    }
    if t > n {
        return false;
    }
    let full = (1u64 << t) - 1;
    (0..n as u32).combinations(t).all(|subset| {
        let mut seen = vec![false; 1 << t];
        let mut count = 0u64;
        for p in points {
            let mut pat = 0usize;
            for (i, &v) in subset.iter().enumerate() {
                if p.get(v) {
                    pat |= 1 << i;
                }
            }
            if !seen[pat] {
                seen[pat] = true;
                count += 1;
                if count == full + 1 {
                    break;
                }
            }
        }
        count == full + 1
    })
}

/// Sample random points until verification confirms (n, t)-universality.
/// The sample size makes a retry unlikely; verification makes the returned
/// set unconditionally universal.
pub fn gen_universal_set(n: usize, t: usize, delta: f64, rng: &mut ChaCha8Rng) -> Vec<Assignment> {
    assert!(t <= n, "order cannot exceed arity");
    let m = universal_sample_size(n, t, delta);
    loop {
        let points: Vec<Assignment> = (0..m).map(|_| Assignment::random(n, rng)).collect();
        if verify_universal(&points, n, t) {
            return points;
        }
    }
}

/// Exact learner from a verified (n, 2d)-universal set: recover the
/// relevant variables by probing, label the set with membership queries,
/// and return a minimum consistent depth-d tree over those variables.
/// Distinct depth-d trees disagree on some point of the set (their two
/// witness paths fix ≤ 2d variables), so consistency implies identity.
pub fn exact_learn_universal<O: Oracle + ?Sized>(
    o: &mut O,
    c: &DtdsParams,
    delta: f64,
    universal_rng: &mut ChaCha8Rng,
) -> Result<crate::boolfn::DecisionTree> {
    let n = o.n();
    let t = (2 * c.depth as usize).min(n);
    let points = gen_universal_set(n, t, delta / 2.0, universal_rng);
    let cap = c.relevant_cap();
    let universe: Vec<u32> = (0..n as u32).collect();
    let probe = ProbeParams::new(c.depth, delta / 2.0);
    let relevant = match find_relevant_vars(o, &universe, cap, &probe)? {
        RelevantVars::All(vs) => vs,
        RelevantVars::MoreThan(_) => {
            return Err(Error::NotInClass(format!(
                "more than {cap} relevant variables"
            )));
        }
    };
    let mut examples = Vec::with_capacity(points.len());
    for p in points {
        let y = o.query(&p)?;
        examples.push((p, y));
    }
    let allowed: Vec<u32> = relevant.iter().copied().collect();
    let tree = consis_over(&examples, n, c.depth, &allowed)
        .ok_or_else(|| Error::NotInClass(format!("no depth-{} tree fits", c.depth)))?;
    if tree.size() > c.size {
        return Err(Error::NotInClass(format!(
            "consistent tree has {} leaves, class allows {}",
            tree.size(),
            c.size
        )));
    }
    Ok(tree)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::boolfn::{DecisionTree, Distribution, OracleSession, TruthTable};
    use crate::rng::{RngFactory, StreamDomain};
    use std::sync::Arc;

    fn hidden_tree(n: usize, seed: u64) -> DecisionTree {
        let mut rng = RngFactory::new(seed).stream(StreamDomain::Generator, 0);
        crate::gen::random_depth_tree(n, 2, &mut rng)
    }

    #[test]
    fn uniform_example_adapter_counts_bb_only() {
        let t = hidden_tree(6, 1);
        let mut o = OracleSession::new(
            Arc::new(t),
            Distribution::uniform(6),
            RngFactory::new(51).stream(StreamDomain::Session, 0),
        );
        let mut u = UniformExamples::new(&mut o);
        for _ in 0..5 {
            u.example().unwrap();
        }
        assert_eq!(u.counts(), QueryCounts { bb: 5, rex: 0 });
    }

    #[test]
    fn exact_learner_identifies_the_tree() {
        let t = hidden_tree(12, 2);
        let mut o = OracleSession::new(
            Arc::new(t.clone()),
            Distribution::uniform(12),
            RngFactory::new(52).stream(StreamDomain::Session, 0),
        );
        let c = DtdsParams::new(2, 4);
        let h = exact_learn_dtds(&mut o, &c, 0.05).unwrap();
        assert_eq!(
            TruthTable::from_boolfn(&t),
            TruthTable::from_boolfn(&h),
            "exact learning must recover the function pointwise"
        );
    }

    #[test]
    fn universal_set_is_verified() {
        let mut rng = RngFactory::new(53).stream(StreamDomain::Universal, 0);
        let pts = gen_universal_set(8, 3, 0.2, &mut rng);
        assert!(verify_universal(&pts, 8, 3));
        // Dropping to a single point breaks universality for t ≥ 1.
        assert!(!verify_universal(&pts[..1], 8, 3));
    }

    #[test]
    fn universal_learner_identifies_the_tree() {
        let t = hidden_tree(8, 3);
        let mut o = OracleSession::new(
            Arc::new(t.clone()),
            Distribution::uniform(8),
            RngFactory::new(54).stream(StreamDomain::Session, 0),
        );
        let mut urng = RngFactory::new(54).stream(StreamDomain::Universal, 0);
        let c = DtdsParams::new(2, 4);
        let h = exact_learn_universal(&mut o, &c, 0.05, &mut urng).unwrap();
        assert_eq!(TruthTable::from_boolfn(&t), TruthTable::from_boolfn(&h));
    }

    #[test]
    fn exact_from_pac_wraps_any_uniform_learner() {
        let t = hidden_tree(10, 4);
        let mut o = OracleSession::new(
            Arc::new(t.clone()),
            Distribution::uniform(10),
            RngFactory::new(55).stream(StreamDomain::Session, 0),
        );
        let h = exact_from_pac(&mut o, 2, 0.05, |u, eps, delta| {
            super::super::learn_dts_uniform_reduced(u, 4, eps, delta)
        })
        .unwrap();
        assert_eq!(TruthTable::from_boolfn(&t), TruthTable::from_boolfn(&h));
    }
}
