//! Distribution-free depth tester driven by query routes.
//!
//! A function with a depth-d tree has few relevant variables and, at every
//! restriction, only small maximal monomials; following a sampled point
//! through maximal monomials of successive restrictions reaches a constant
//! within d(d+1)/2 fixed variables. Each route check is one-sided: depth-d
//! functions pass every route (up to primitive failure probability), while
//! a function for which deep routes have probability ≥ ε under the example
//! distribution is caught by one of ⌈4/ε⌉ routes.

use crate::algebra::{
    find_maximal_monomial, find_relevant_vars, probe_nonconstant, Constancy, MaximalMonomial,
    ProbeParams, RelevantVars,
};
use crate::boolfn::{Oracle, RestrictedOracle, RestrictionSeq};
use crate::testers::{Decision, TesterReport, WalkSummary};
use crate::Result;

#[derive(Clone, Copy, Debug)]
pub struct DepthTestParams {
    pub depth: u32,
    pub eps: f64,
    pub delta: f64,
    /// Route depth beyond which the tester rejects; default d(d+1)/2.
    pub route_cutoff: Option<u32>,
}

impl DepthTestParams {
    pub fn new(depth: u32, eps: f64, delta: f64) -> Self {
        assert!(eps > 0.0 && eps < 1.0 && delta > 0.0 && delta < 1.0);
        DepthTestParams {
            depth,
            eps,
            delta,
            route_cutoff: None,
        }
    }

    pub fn cutoff(&self) -> u32 {
        self.route_cutoff
            .unwrap_or(self.depth * (self.depth + 1) / 2)
    }
}

/// Route one sampled point through the maximal-monomial tree of f, fixing
/// the point's values on each monomial found. Returns the verdict and the
/// number of variables fixed.
fn route<O: Oracle + ?Sized>(
    o: &mut O,
    relevant: &[u32],
    point: &crate::boolfn::Assignment,
    p: &DepthTestParams,
    probe: &ProbeParams,
) -> Result<(WalkSummary, Option<String>)> {
    let cutoff = p.cutoff();
    let mut fixed = RestrictionSeq::new();
    let mut depth = 0u32;
    loop {
        let universe: Vec<u32> = relevant
            .iter()
            .copied()
            .filter(|v| !fixed.fixes(*v))
            .collect();
        let mut ro = RestrictedOracle::new(o, fixed.clone());
        match probe_nonconstant(&mut ro, &universe, probe)? {
            Constancy::Constant(_) => {
                return Ok((
                    WalkSummary {
                        depth,
                        verdict: "leaf".into(),
                    },
                    None,
                ));
            }
            Constancy::Witness(_) => {}
        }
        let m = match find_maximal_monomial(&mut ro, &universe, p.depth as usize, probe)? {
            MaximalMonomial::TooLarge => {
                return Ok((
                    WalkSummary {
                        depth,
                        verdict: "monomial_too_large".into(),
                    },
                    Some(format!(
                        "a restriction has a maximal monomial larger than {}",
                        p.depth
                    )),
                ));
            }
            MaximalMonomial::Found(m) => m,
        };
        if m.is_one() {
            // The constancy probe and the monomial seed disagreed; treat the
            // route as ended — ending early never rejects a good function.
            return Ok((
                WalkSummary {
                    depth,
                    verdict: "leaf".into(),
                },
                None,
            ));
        }
        depth += m.degree() as u32;
        for &v in m.vars() {
            fixed.push(v, point.get(v)).expect("route never refixes a variable");
        }
        if depth > cutoff {
            return Ok((
                WalkSummary {
                    depth,
                    verdict: "too_deep".into(),
                },
                Some(format!("route passed {depth} variables, cutoff {cutoff}")),
            ));
        }
    }
}

/// Test whether f is computed by a tree of depth ≤ d or is ε-far (under
/// the session's example distribution) from every function whose routes
/// stay within the cutoff.
pub fn test_depth_distfree<O: Oracle + ?Sized>(
    o: &mut O,
    p: &DepthTestParams,
    seed: u64,
) -> Result<TesterReport> {
    let params = serde_json::json!({
        "depth": p.depth,
        "eps": p.eps,
        "delta": p.delta,
        "route_cutoff": p.cutoff(),
    });
    let mut report = TesterReport::new("depth_distfree", seed, params);
    let mut walks = Vec::new();
    let outcome = (|| -> Result<(Decision, String)> {
        let n = o.n();
        let relevant_cap = 1usize << p.depth.min(30);
        let universe: Vec<u32> = (0..n as u32).collect();
        let relevant = match find_relevant_vars(
            o,
            &universe,
            relevant_cap,
            &ProbeParams::new(p.depth, p.delta / 2.0),
        )? {
            RelevantVars::MoreThan(c) => {
                return Ok((
                    Decision::Reject,
                    format!("more than {c} relevant variables"),
                ));
            }
            RelevantVars::All(vs) => vs.into_iter().collect::<Vec<u32>>(),
        };
        let routes = (4.0 / p.eps).ceil() as u64;
        let calls = 2 * routes * (p.cutoff() as u64 + 1);
        let probe = ProbeParams::new(p.depth, p.delta / (2.0 * calls as f64));
        for _ in 0..routes {
            let (x, _) = o.example()?;
            let (summary, rejection) = route(o, &relevant, &x, p, &probe)?;
            walks.push(summary);
            if let Some(reason) = rejection {
                return Ok((Decision::Reject, reason));
            }
        }
        Ok((
            Decision::Accept,
            format!("{routes} routes stayed within depth {}", p.cutoff()),
        ))
    })();
    report.walks = walks;
    report.finish(outcome, o.counts())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::boolfn::{DecisionTree, Distribution, F2Polynomial, OracleSession};
    use crate::rng::{RngFactory, StreamDomain};
    use std::sync::Arc;

    fn session(f: Arc<dyn crate::boolfn::BoolFn>, seed: u64) -> OracleSession {
        let n = f.n_vars();
        OracleSession::new(
            f,
            Distribution::uniform(n),
            RngFactory::new(seed).stream(StreamDomain::Session, 0),
        )
    }

    #[test]
    fn shallow_trees_are_accepted() {
        let t = DecisionTree::split(
            2,
            DecisionTree::leaf(10, false),
            DecisionTree::split(7, DecisionTree::leaf(10, true), DecisionTree::leaf(10, false)),
        );
        let mut o = session(Arc::new(t), 71);
        let p = DepthTestParams::new(2, 0.3, 0.1);
        let r = test_depth_distfree(&mut o, &p, 71).unwrap();
        assert_eq!(r.decision, Decision::Accept, "{}", r.reason);
        assert!(r.walks.iter().all(|w| w.depth <= 3));
    }

    #[test]
    fn wide_parity_is_rejected_for_its_relevant_count() {
        let f = F2Polynomial::parity(12, &[0, 1, 2, 3, 4, 5, 6, 7, 8]);
        let mut o = session(Arc::new(f), 72);
        let p = DepthTestParams::new(2, 0.3, 0.1);
        let r = test_depth_distfree(&mut o, &p, 72).unwrap();
        assert_eq!(r.decision, Decision::Reject);
        assert!(r.reason.contains("relevant"));
    }

    #[test]
    fn budget_exhaustion_is_inconclusive() {
        let f = F2Polynomial::parity(12, &[0, 1, 2, 3, 4, 5, 6, 7, 8]);
        let n = 12;
        let mut o = OracleSession::new(
            Arc::new(f),
            Distribution::uniform(n),
            RngFactory::new(73).stream(StreamDomain::Session, 0),
        )
        .with_budget(Some(20));
        let p = DepthTestParams::new(2, 0.3, 0.1);
        let r = test_depth_distfree(&mut o, &p, 73).unwrap();
        assert_eq!(r.decision, Decision::Inconclusive);
        assert!(r.queries.total() <= 20);
    }

    #[test]
    fn reports_are_identical_for_equal_seeds() {
        let run = || {
            let t = DecisionTree::split(
                0,
                DecisionTree::leaf(6, true),
                DecisionTree::leaf(6, false),
            );
            let mut o = session(Arc::new(t), 99);
            test_depth_distfree(&mut o, &DepthTestParams::new(1, 0.25, 0.1), 99)
                .unwrap()
                .to_json(false)
        };
        assert_eq!(run(), run());
    }
}
