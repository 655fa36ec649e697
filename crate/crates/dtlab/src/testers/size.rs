//! Uniform-distribution size tester.
//!
//! After a random shift the function is projected onto at most `s`
//! variables and interpolated exactly there. The interpolant is split by
//! monomial degree into a low part F and a middle part G; random
//! restriction walks then repeatedly fix a variable that appears in a
//! large fraction of the surviving low-part monomials. A function with a
//! size-s tree runs out of low-part monomials quickly and ends each walk
//! at a near-constant restriction; a far function either keeps a
//! frequent-variable-free low part, outlasts the step cap, or lands on a
//! balanced restriction, and each of those outcomes rejects.

use std::collections::BTreeSet;

use crate::algebra::interpolate_poly;
use crate::boolfn::{Assignment, F2Polynomial, Monomial, Oracle, ShiftedOracle, SizeRange, ZeroedOracle};
use crate::reductions::{find_close, FindCloseOutcome, FindCloseParams};
use crate::rng::{RngFactory, StreamDomain};
use crate::testers::{Decision, TesterReport, WalkSummary};
use crate::Result;
use rand::Rng;

#[derive(Clone, Copy, Debug)]
pub struct SizeTestParams {
    pub size: u64,
    pub eps: f64,
    pub delta: f64,
    /// Projection closeness constant; must be ≥ 2.
    pub c: f64,
    /// Cheaper walk cap and interpolation width for small inputs.
    pub reduced_constants: bool,
    /// Overrides the derived walk step cap when set.
    pub step_cap_override: Option<usize>,
}

impl SizeTestParams {
    pub fn new(size: u64, eps: f64, delta: f64) -> Self {
        assert!(size >= 1 && eps > 0.0 && eps < 1.0 && delta > 0.0 && delta < 1.0);
        SizeTestParams {
            size,
            eps,
            delta,
            c: 2.0,
            reduced_constants: false,
            step_cap_override: None,
        }
    }

    pub fn reduced(mut self) -> Self {
        self.reduced_constants = true;
        self
    }

    pub fn with_step_cap(mut self, cap: usize) -> Self {
        self.step_cap_override = Some(cap);
        self
    }

    /// r = ⌈log₂(s/ε)⌉, the scale of the low-degree split.
    pub fn r(&self) -> usize {
        (self.size as f64 / self.eps).log2().ceil().max(1.0) as usize
    }

    /// Low-part degree bound r' = 16·c·r.
    pub fn r_prime(&self) -> usize {
        (16.0 * self.c * self.r() as f64).ceil() as usize
    }

    pub fn walk_repeats(&self) -> u64 {
        (40.0 / self.eps).ceil() as u64
    }

    /// Walk step cap: factor · ⌈log₂²(s/ε)⌉, unless overridden.
    pub fn step_cap(&self) -> usize {
        if let Some(cap) = self.step_cap_override {
            return cap;
        }
        let factor = if self.reduced_constants {
            64.0
        } else {
            1024.0 * self.c
        };
        let log2 = (self.size as f64 / self.eps).log2().max(1.0);
        (factor * (log2 * log2).ceil()) as usize
    }
}

/// Variables appearing in at least a 1/(2r) fraction of the monomials of
/// `h`, smallest index first, or None when no variable qualifies.
fn frequent_var(h: &BTreeSet<Monomial>, r: usize) -> Option<u32> {
    if h.is_empty() {
        return None;
    }
    let mut counts: std::collections::BTreeMap<u32, usize> = std::collections::BTreeMap::new();
    for m in h {
        for &v in m.vars() {
            *counts.entry(v).or_insert(0) += 1;
        }
    }
    let need = (h.len() as f64 / (2.0 * r as f64)).max(f64::MIN_POSITIVE);
    counts
        .into_iter()
        .find(|&(_, c)| c as f64 >= need)
        .map(|(v, _)| v)
}

struct WalkOutcome {
    summary: WalkSummary,
    rejection: Option<String>,
    violations: u64,
}

/// One restriction walk over the interpolated parts, plus the end
/// probability estimate against the shifted oracle.
#[allow(clippy::too_many_arguments)]
fn walk<O: Oracle + ?Sized>(
    o: &mut ShiftedOracle<O>,
    f_part: &F2Polynomial,
    g_part: &F2Polynomial,
    p: &SizeTestParams,
    rng: &mut rand_chacha::ChaCha8Rng,
    estimate_m: u64,
) -> Result<WalkOutcome> {
    let r = p.r();
    let cap = p.step_cap();
    let n = o.n();
    let mut fq = f_part.clone();
    let mut gq = g_part.clone();
    let diff = |a: &F2Polynomial, b: &F2Polynomial| -> BTreeSet<Monomial> {
        a.monomial_set().difference(b.monomial_set()).cloned().collect()
    };
    let mut h = diff(&fq, &gq);
    let mut fixed: Vec<(u32, bool)> = Vec::new();
    let mut violations = 0u64;
    let mut steps = 0usize;
    let rejection = loop {
        if h.iter().all(|m| m.is_one()) {
            break None;
        }
        if steps >= cap {
            break Some(format!("walk still active after {cap} steps"));
        }
        let var = match frequent_var(&h, r) {
            Some(v) => v,
            None => {
                break Some(format!(
                    "no variable reaches the 1/{} monomial frequency",
                    2 * r
                ));
            }
        };
        let xi = rng.gen::<bool>();
        let before = h.len();
        fq = fq.restrict(var, xi);
        gq = gq.restrict(var, xi);
        let h_next = diff(&fq, &gq);
        let l_next = diff(&gq, &fq);
        // Bookkeeping identities that hold for any restriction step: the
        // tracked parts stay disjoint, their sum matches the restricted
        // pair, and the frequent variable forces shrinkage under ξ=0.
        if !h_next.is_disjoint(&l_next) {
            violations += 1;
        }
        let mut sum = F2Polynomial::from_monomial_set(n, &h_next);
        for m in &l_next {
            sum.toggle_monomial(m.clone());
        }
        if sum != fq.add(&gq) {
            violations += 1;
        }
        if !xi {
            let bound = before as f64 * (1.0 - 1.0 / (2.0 * r as f64));
            if (h_next.len() as f64) > bound {
                violations += 1;
            }
        } else if h_next.len() > before {
            violations += 1;
        }
        h = h_next;
        fixed.push((var, xi));
        steps += 1;
    };
    if let Some(reason) = rejection {
        return Ok(WalkOutcome {
            summary: WalkSummary {
                depth: steps as u32,
                verdict: "stuck".into(),
            },
            rejection: Some(reason),
            violations,
        });
    }
    // Estimate Pr[T(x)=1] with the walk's variables pinned and everything
    // else uniform.
    let mut ones = 0u64;
    for _ in 0..estimate_m {
        let mut x = Assignment::random(n, rng);
        for &(v, b) in &fixed {
            x.set(v, b);
        }
        if o.query(&x)? {
            ones += 1;
        }
    }
    let p_hat = ones as f64 / estimate_m as f64;
    let (verdict, rejection) = if p_hat < p.eps / 8.0 {
        ("near_zero", None)
    } else if p_hat > 1.0 - p.eps / 8.0 {
        ("near_one", None)
    } else {
        (
            "balanced",
            Some(format!(
                "restriction after the walk is {p_hat:.3}-balanced"
            )),
        )
    };
    Ok(WalkOutcome {
        summary: WalkSummary {
            depth: steps as u32,
            verdict: verdict.into(),
        },
        rejection,
        violations,
    })
}

/// Test whether f has a decision tree with at most `size` leaves, under
/// the uniform distribution; far functions are rejected with probability
/// at least 1−δ.
pub fn test_size_uniform<O: Oracle + ?Sized>(
    o: &mut O,
    p: &SizeTestParams,
    rf: &RngFactory,
) -> Result<TesterReport> {
    let params = serde_json::json!({
        "size": p.size,
        "eps": p.eps,
        "delta": p.delta,
        "c": p.c,
        "r": p.r(),
        "r_prime": p.r_prime(),
        "walk_repeats": p.walk_repeats(),
        "step_cap": p.step_cap(),
        "reduced_constants": p.reduced_constants,
    });
    let mut report = TesterReport::new("size_uniform", rf.seed(), params);
    let mut walks = Vec::new();
    let mut step_violations = 0u64;
    let outcome = (|| -> Result<(Decision, String)> {
        let n = o.n();
        let shift = Assignment::random(n, &mut rf.stream(StreamDomain::Shift, 0));
        let mut shifted = ShiftedOracle::new(o, shift);
        let fc = FindCloseParams::with_c(p.size as usize, p.eps / 3.0, p.delta / 3.0, p.c);
        let proj = match find_close(&mut shifted, &fc)? {
            FindCloseOutcome::TooManyRelevant { found } => {
                return Ok((
                    Decision::Reject,
                    format!("projection found {} relevant variables, cap {}", found.len(), p.size),
                ));
            }
            FindCloseOutcome::Projected(proj) => proj,
        };
        let vars: Vec<u32> = proj.found_relevant.iter().copied().collect();
        let mut zo = ZeroedOracle::new(&mut shifted, proj.zeroed.clone());
        let t_hat = interpolate_poly(&mut zo, &vars)?;
        let r_prime = p.r_prime();
        if t_hat.degree() > 16 * r_prime {
            return Ok((
                Decision::Reject,
                format!(
                    "interpolant has degree {} beyond the 16r' = {} window",
                    t_hat.degree(),
                    16 * r_prime
                ),
            ));
        }
        let f_part = t_hat.part(SizeRange::up_to(r_prime));
        let g_part = t_hat.part(SizeRange::left_open(r_prime, 16 * r_prime));
        let w = p.walk_repeats();
        let delta_walk = p.delta / (2.0 * w as f64);
        let estimate_m = ((32.0 / p.eps) * (2.0 / delta_walk).ln()).ceil() as u64;
        for i in 0..w {
            let mut rng = rf.stream(StreamDomain::Walk, i);
            let out = walk(&mut shifted, &f_part, &g_part, p, &mut rng, estimate_m)?;
            step_violations += out.violations;
            walks.push(out.summary);
            if let Some(reason) = out.rejection {
                return Ok((Decision::Reject, reason));
            }
        }
        Ok((
            Decision::Accept,
            format!("{w} walks ended at nearly constant restrictions"),
        ))
    })();
    report.walks = walks;
    if let serde_json::Value::Object(map) = &mut report.params {
        map.insert("step_violations".into(), step_violations.into());
    }
    report.finish(outcome, o.counts())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::boolfn::{DecisionTree, Distribution, OracleSession};
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
    fn derived_scales_match_hand_computation() {
        let p = SizeTestParams::new(4, 0.25, 0.1);
        assert_eq!(p.r(), 4); // log2(16)
        assert_eq!(p.r_prime(), 128); // 16·2·4
        assert_eq!(p.walk_repeats(), 160);
        assert_eq!(p.step_cap(), 2048 * 16);
        assert_eq!(p.reduced().step_cap(), 64 * 16);
    }

    #[test]
    fn frequent_var_prefers_the_smallest_qualifying_index() {
        let mons: BTreeSet<Monomial> = [
            Monomial::new([1, 3]),
            Monomial::new([3, 4]),
            Monomial::new([3]),
            Monomial::new([4]),
        ]
        .into_iter()
        .collect();
        // r=1 → threshold 1/2: vars 3 (3/4) and 4 (2/4) qualify; 3 wins.
        assert_eq!(frequent_var(&mons, 1), Some(3));
        // Raising r to 2 keeps the threshold at 1/4, so var 1 qualifies.
        assert_eq!(frequent_var(&mons, 2), Some(1));
        assert_eq!(frequent_var(&BTreeSet::new(), 1), None);
    }

    #[test]
    fn small_trees_are_accepted_without_step_violations() {
        let t = DecisionTree::split(
            1,
            DecisionTree::split(4, DecisionTree::leaf(10, false), DecisionTree::leaf(10, true)),
            DecisionTree::leaf(10, true),
        );
        let mut o = session(Arc::new(t), 81);
        let p = SizeTestParams::new(3, 0.4, 0.2).reduced();
        let rf = RngFactory::new(81);
        let r = test_size_uniform(&mut o, &p, &rf).unwrap();
        assert_eq!(r.decision, Decision::Accept, "{}", r.reason);
        assert_eq!(r.params["step_violations"], 0);
    }

    #[test]
    fn wide_parity_is_rejected() {
        let f = crate::gen::parity(12, 12);
        let mut o = session(Arc::new(f), 82);
        let p = SizeTestParams::new(4, 0.25, 0.2).reduced();
        let rf = RngFactory::new(82);
        let r = test_size_uniform(&mut o, &p, &rf).unwrap();
        assert_eq!(r.decision, Decision::Reject, "{}", r.reason);
    }

    #[test]
    fn step_cap_override_rejects_parity_past_the_projection() {
        // With the size budget at 12, parity on 12 vars survives the
        // projection, and at ε = 0.1 every variable clears the frequency
        // threshold; a cap below 12 then cuts the walk off while the low
        // part still has live monomials.
        let f = crate::gen::parity(12, 12);
        let mut o = session(Arc::new(f), 85);
        let p = SizeTestParams::new(12, 0.1, 0.2).reduced().with_step_cap(11);
        assert_eq!(p.step_cap(), 11);
        let r = test_size_uniform(&mut o, &p, &RngFactory::new(85)).unwrap();
        assert_eq!(r.decision, Decision::Reject, "{}", r.reason);
        assert!(r.reason.contains("still active"), "{}", r.reason);
    }

    #[test]
    fn reports_are_identical_for_equal_seeds() {
        let run = || {
            let t = DecisionTree::split(
                0,
                DecisionTree::leaf(8, true),
                DecisionTree::leaf(8, false),
            );
            let mut o = session(Arc::new(t), 83);
            test_size_uniform(
                &mut o,
                &SizeTestParams::new(2, 0.4, 0.2).reduced(),
                &RngFactory::new(83),
            )
            .unwrap()
            .to_json(false)
        };
        assert_eq!(run(), run());
    }
}
