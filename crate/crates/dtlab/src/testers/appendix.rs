//! Depth tester that learns first and then walks a greedy tree of the
//! learned polynomial symbolically.
//!
//! The function is projected onto at most 2^d variables and interpolated
//! there; a depth-d tree must yield a degree ≤ d polynomial with at most
//! 2^{2d} monomials, and sampling confirms the interpolant tracks f. Each
//! round then shifts the interpolant by a uniform point and descends it
//! greedily — always on a variable hitting the most non-constant
//! monomials — toward the example's shifted image. Shallow functions
//! bottom out within 16(d·ln psize + ln(1/ε)) steps; far functions either
//! fail the sampling check or outlast that bound.

use crate::algebra::{interpolate_poly, psize};
use crate::boolfn::{Assignment, BoolFn, Oracle, ZeroedOracle};
use crate::reductions::{find_close, FindCloseOutcome, FindCloseParams};
use crate::rng::{RngFactory, StreamDomain};
use crate::symbolic::greedy_descend;
use crate::testers::{Decision, TesterReport, WalkSummary};
use crate::Result;

#[derive(Clone, Copy, Debug)]
pub struct AppendixTestParams {
    pub depth: u32,
    pub eps: f64,
    pub delta: f64,
}

impl AppendixTestParams {
    pub fn new(depth: u32, eps: f64, delta: f64) -> Self {
        assert!(eps > 0.0 && eps < 1.0 && delta > 0.0 && delta < 1.0);
        AppendixTestParams { depth, eps, delta }
    }

    /// Walk cutoff ⌈16(d·ln s̃ + ln(1/ε))⌉ for a learned sparsity s̃.
    pub fn walk_cutoff(&self, sparsity: usize) -> usize {
        let s = sparsity.max(2) as f64;
        (16.0 * (self.depth as f64 * s.ln() + (1.0 / self.eps).ln())).ceil() as usize
    }

    pub fn rounds(&self) -> u64 {
        (4.0 / self.eps).ceil() as u64
    }
}

/// Test whether f is computed by a depth-d tree; functions far from every
/// moderately deeper tree are rejected.
pub fn test_depth_appendix<O: Oracle + ?Sized>(
    o: &mut O,
    p: &AppendixTestParams,
    rf: &RngFactory,
) -> Result<TesterReport> {
    let params = serde_json::json!({
        "depth": p.depth,
        "eps": p.eps,
        "delta": p.delta,
        "rounds": p.rounds(),
    });
    let mut report = TesterReport::new("depth_appendix", rf.seed(), params);
    let mut walks = Vec::new();
    let mut identity_violations = 0u64;
    let outcome = (|| -> Result<(Decision, String)> {
        let n = o.n();
        let k = 1usize << p.depth.min(30);
        let fc = FindCloseParams::with_c(k, p.eps / 16.0, p.delta / 4.0, 2.0);
        let proj = match find_close(o, &fc)? {
            FindCloseOutcome::TooManyRelevant { found } => {
                return Ok((
                    Decision::Reject,
                    format!("projection found {} relevant variables, cap {k}", found.len()),
                ));
            }
            FindCloseOutcome::Projected(proj) => proj,
        };
        let vars: Vec<u32> = proj.found_relevant.iter().copied().collect();
        let mut zo = ZeroedOracle::new(o, proj.zeroed.clone());
        let learned = interpolate_poly(&mut zo, &vars)?;
        if learned.degree() > p.depth as usize {
            return Ok((
                Decision::Reject,
                format!(
                    "interpolant has degree {} > {}",
                    learned.degree(),
                    p.depth
                ),
            ));
        }
        let sparsity_cap = 1u64 << (2 * p.depth).min(62);
        if learned.num_monomials() as u64 > sparsity_cap {
            return Ok((
                Decision::Reject,
                format!(
                    "interpolant has {} monomials, cap {sparsity_cap}",
                    learned.num_monomials()
                ),
            ));
        }
        // The interpolant only speaks for f_{X←0}; make sure it tracks f
        // itself on the example distribution.
        let m = ((64.0 / p.eps) * (4.0 / p.delta).ln()).ceil() as u64;
        let mut disagree = 0u64;
        for _ in 0..m {
            let (x, y) = o.example()?;
            if learned.eval(&x) != y {
                disagree += 1;
            }
        }
        let p_hat = disagree as f64 / m as f64;
        if p_hat >= p.eps / 8.0 {
            return Ok((
                Decision::Reject,
                format!("interpolant disagrees with f on a {p_hat:.3} fraction"),
            ));
        }
        let st = psize(&learned).value;
        let cutoff = p.walk_cutoff(st);
        for i in 0..p.rounds() {
            let (b, _) = o.example()?;
            let mut rng = rf.stream(StreamDomain::Walk, i);
            let a = Assignment::random(n, &mut rng);
            let g = learned.shift(&a);
            let c = a.xor(&b);
            let (depth, leaf) = greedy_descend(&g, &c, cutoff);
            match leaf {
                None => {
                    walks.push(WalkSummary {
                        depth: depth as u32,
                        verdict: "too_deep".into(),
                    });
                    return Ok((
                        Decision::Reject,
                        format!("greedy walk still active after {cutoff} steps"),
                    ));
                }
                Some(v) => {
                    // Shift bookkeeping: the leaf must reproduce g(a+b),
                    // which equals the interpolant at b.
                    if v != g.eval(&c) || v != learned.eval(&b) {
                        identity_violations += 1;
                    }
                    walks.push(WalkSummary {
                        depth: depth as u32,
                        verdict: "leaf".into(),
                    });
                }
            }
        }
        Ok((
            Decision::Accept,
            format!("{} greedy walks reached leaves within {cutoff} steps", p.rounds()),
        ))
    })();
    report.walks = walks;
    if let serde_json::Value::Object(map) = &mut report.params {
        map.insert("identity_violations".into(), identity_violations.into());
    }
    report.finish(outcome, o.counts())
}
