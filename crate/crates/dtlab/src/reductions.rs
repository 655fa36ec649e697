//! Reducing n-variable problems to few-variable ones.
//!
//! The core routine zeroes all variables and then un-zeroes one per observed
//! disagreement between f and its projection, stopping once a long streak of
//! sampled agreements certifies the projection is close to f under the
//! example distribution. Learners and testers for k-junta-like classes then
//! run against the projected oracle, whose queries touch at most the
//! recovered variables.

use crate::algebra::binary_search_flip;
use crate::boolfn::{BoolFn, Oracle, ZeroedOracle};
use crate::testers::{Decision, TesterReport};
use crate::{Error, Result};
use serde::{Deserialize, Serialize};
use std::collections::BTreeSet;

/// Parameters of the projection search for a class with at most `k`
/// relevant variables. The guarantee on success is
/// dist(f restricted by zeroing, f) ≤ eps / c.
#[derive(Clone, Copy, Debug)]
pub struct FindCloseParams {
    pub k: usize,
    pub eps: f64,
    pub delta: f64,
    pub c: f64,
}

impl FindCloseParams {
    pub fn new(k: usize, eps: f64, delta: f64) -> Self {
        Self::with_c(k, eps, delta, 2.0)
    }

    pub fn with_c(k: usize, eps: f64, delta: f64, c: f64) -> Self {
        assert!(k >= 1, "class must allow at least one relevant variable");
        assert!(eps > 0.0 && eps < 1.0 && delta > 0.0 && delta < 1.0);
        assert!(c >= 1.0);
        FindCloseParams { k, eps, delta, c }
    }

    /// Consecutive agreements that end the search: ⌈c·ln(k/δ)/ε⌉.
    pub fn threshold(&self) -> u64 {
        (self.c * (self.k as f64 / self.delta).ln() / self.eps).ceil() as u64
    }

    /// Total example rounds before giving up: ⌈c·k·ln(k/δ)/ε⌉.
    pub fn rounds(&self) -> u64 {
        (self.c * self.k as f64 * (self.k as f64 / self.delta).ln() / self.eps).ceil() as u64
    }
}

/// What the projection loop saw, for reports and query accounting.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FindCloseTranscript {
    /// Example rounds consumed (one example + one projected query each).
    pub rounds: u64,
    /// Variables un-zeroed, in discovery order.
    pub removals: Vec<u32>,
    /// The round cap ran out before a full agreement streak; the returned
    /// projection is the best found rather than a certified one.
    pub rounds_exhausted: bool,
    /// Length of the streak in flight when the loop stopped.
    pub final_streak: u64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProjectionResult {
    /// Variables still forced to zero.
    pub zeroed: BTreeSet<u32>,
    /// Variables proven relevant (complement of `zeroed`).
    pub found_relevant: BTreeSet<u32>,
    pub transcript: FindCloseTranscript,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FindCloseOutcome {
    Projected(ProjectionResult),
    /// More than k disagreement-witnessed variables: f is not close to any
    /// function of k variables obtained by zero-projection.
    TooManyRelevant { found: BTreeSet<u32> },
}

/// Search for a set X of variables whose zeroing leaves f nearly unchanged
/// under the example distribution. Starts from X = everything; each sampled
/// disagreement between f(x) and f(x with X zeroed) binary-searches one
/// relevant variable out of X. Stops after `threshold()` consecutive
/// agreements, after k+1 removals (TooManyRelevant), or after `rounds()`
/// examples (returned projection flagged `rounds_exhausted`).
///
/// Black-box queries: one per round plus at most (k+1)·⌈log2 n⌉ for the
/// binary searches.
pub fn find_close<O: Oracle + ?Sized>(o: &mut O, p: &FindCloseParams) -> Result<FindCloseOutcome> {
    let n = o.n();
    let mut zeroed: BTreeSet<u32> = (0..n as u32).collect();
    let mut found = BTreeSet::new();
    let mut removals = Vec::new();
    let t_star = p.threshold();
    let max_rounds = p.rounds();
    let mut streak = 0u64;
    let mut rounds = 0u64;
    while rounds < max_rounds {
        rounds += 1;
        let (x, y) = o.example()?;
        let x0 = x.with_zeroed(zeroed.iter().copied());
        let y0 = o.query(&x0)?;
        if y0 == y {
            streak += 1;
            if streak >= t_star {
                return Ok(FindCloseOutcome::Projected(ProjectionResult {
                    zeroed,
                    found_relevant: found,
                    transcript: FindCloseTranscript {
                        rounds,
                        removals,
                        rounds_exhausted: false,
                        final_streak: streak,
                    },
                }));
            }
        } else {
            // x and x0 differ exactly on the zeroed coordinates where x is 1,
            // so the witness variable is a relevant member of X.
            let v = binary_search_flip(|z| o.query(z), &x, y, &x0)?;
            debug_assert!(zeroed.contains(&v));
            zeroed.remove(&v);
            found.insert(v);
            removals.push(v);
            streak = 0;
            if found.len() > p.k {
                return Ok(FindCloseOutcome::TooManyRelevant { found });
            }
        }
    }
    Ok(FindCloseOutcome::Projected(ProjectionResult {
        zeroed,
        found_relevant: found,
        transcript: FindCloseTranscript {
            rounds,
            removals,
            rounds_exhausted: true,
            final_streak: streak,
        },
    }))
}

/// Run a learner against the projected oracle found by `find_close`. The
/// closure receives the zero-projected oracle (queries touch only recovered
/// variables) and the projection metadata. More than k relevant variables
/// is reported as NotInClass.
pub fn reduce_learner<O, H, L>(o: &mut O, p: &FindCloseParams, inner: L) -> Result<(H, ProjectionResult)>
where
    O: Oracle + ?Sized,
    L: FnOnce(&mut ZeroedOracle<'_, O>, &ProjectionResult) -> Result<H>,
{
    match find_close(o, p)? {
        FindCloseOutcome::TooManyRelevant { found } => Err(Error::NotInClass(format!(
            "found {} relevant variables, class allows {}",
            found.len(),
            p.k
        ))),
        FindCloseOutcome::Projected(proj) => {
            let mut zo = ZeroedOracle::new(o, proj.zeroed.clone());
            let h = inner(&mut zo, &proj)?;
            Ok((h, proj))
        }
    }
}

/// Fraction of `m` fresh examples on which `h` disagrees with the labels.
pub fn estimate_disagreement<O, H>(o: &mut O, h: &H, m: u64) -> Result<f64>
where
    O: Oracle + ?Sized,
    H: BoolFn + ?Sized,
{
    let mut bad = 0u64;
    for _ in 0..m {
        let (x, y) = o.example()?;
        if h.eval(&x) != y {
            bad += 1;
        }
    }
    Ok(bad as f64 / m.max(1) as f64)
}

/// A proper learner queried through the projection; `Ok(None)` means the
/// learner certified the projected function is outside the class.
pub type ProjectedLearner<'f, O, H> = Box<
    dyn FnOnce(&mut ZeroedOracle<'_, O>, &ProjectionResult, f64, f64) -> Result<Option<H>> + 'f,
>;

/// Distribution-free tester built from a proper learner for a class whose
/// members depend on at most k variables.
///
/// Projection at (ε/3, δ/3) leaves dist(f', f) ≤ ε/6; the learner runs at
/// (ε/6, δ/3) on the projection; a fresh sample of ⌈(27/ε)·ln(1/δ)⌉ examples
/// estimates dist(h, f), and the tester accepts iff the estimate is ≤ ε/2.
/// Learner failure (NotInClass) and projection overflow both reject.
pub fn tester_from_learner<O, H>(
    o: &mut O,
    name: &str,
    k: usize,
    eps: f64,
    delta: f64,
    seed: u64,
    learner: ProjectedLearner<'_, O, H>,
) -> Result<TesterReport>
where
    O: Oracle + ?Sized,
    H: BoolFn,
{
    let params = serde_json::json!({"k": k, "eps": eps, "delta": delta});
    let report = TesterReport::new(name, seed, params);
    let outcome = (|| -> Result<(Decision, String)> {
        let fc = FindCloseParams::new(k, eps / 3.0, delta / 3.0);
        let proj = match find_close(o, &fc)? {
            FindCloseOutcome::TooManyRelevant { found } => {
                return Ok((
                    Decision::Reject,
                    format!("{} relevant variables exceed the class bound {k}", found.len()),
                ));
            }
            FindCloseOutcome::Projected(p) => p,
        };
        let hypothesis = {
            let mut zo = ZeroedOracle::new(o, proj.zeroed.clone());
            match learner(&mut zo, &proj, eps / 6.0, delta / 3.0) {
                Ok(Some(h)) => h,
                Ok(None) | Err(Error::NotInClass(_)) => {
                    return Ok((
                        Decision::Reject,
                        "no class member is consistent with the projection".to_string(),
                    ));
                }
                Err(e) => return Err(e),
            }
        };
        let zeroed: Vec<u32> = proj.zeroed.iter().copied().collect();
        let m = (27.0 / eps * (1.0 / delta).ln()).ceil() as u64;
        let mut bad = 0u64;
        for _ in 0..m {
            let (x, y) = o.example()?;
            if hypothesis.eval(&x.with_zeroed(zeroed.iter().copied())) != y {
                bad += 1;
            }
        }
        let p_hat = bad as f64 / m as f64;
        if p_hat <= eps / 2.0 {
            Ok((
                Decision::Accept,
                format!("hypothesis disagreement {p_hat:.4} within {:.4}", eps / 2.0),
            ))
        } else {
            Ok((
                Decision::Reject,
                format!("hypothesis disagreement {p_hat:.4} above {:.4}", eps / 2.0),
            ))
        }
    })();
    report.finish(outcome, o.counts())
}

/// A tester for the projected function, run at the halved distance
/// parameter.
pub type ProjectedTester<'f, O> =
    Box<dyn FnOnce(&mut ZeroedOracle<'_, O>, &ProjectionResult, f64, f64) -> Result<TesterReport> + 'f>;

/// Lift a tester for functions of at most k variables to arbitrary arity.
///
/// Projection runs at (ε, δ/2) with slack factor 4, so on acceptance the
/// projection is ε/4-close to f; zero-projection keeps class membership, so
/// the inner tester at (ε/2, δ/2) sees a class member when f is one, and an
/// ε/2-far function whenever f is ε-far.
pub fn lift_tester<O>(
    o: &mut O,
    k: usize,
    eps: f64,
    delta: f64,
    inner: ProjectedTester<'_, O>,
) -> Result<TesterReport>
where
    O: Oracle + ?Sized,
{
    let fc = FindCloseParams::with_c(k, eps, delta / 2.0, 4.0);
    match find_close(o, &fc) {
        Err(Error::BudgetExhausted { budget, bb, rex }) => {
            let mut report = TesterReport::new("lifted", 0, serde_json::Value::Null);
            report.queries = crate::boolfn::QueryCounts { bb, rex };
            report.decide(
                Decision::Inconclusive,
                format!("query budget {budget} exhausted"),
            );
            Ok(report)
        }
        Err(e) => Err(e),
        Ok(FindCloseOutcome::TooManyRelevant { found }) => {
            let mut report = TesterReport::new("lifted", 0, serde_json::Value::Null);
            report.queries = o.counts();
            report.decide(
                Decision::Reject,
                format!("{} relevant variables exceed the class bound {k}", found.len()),
            );
            Ok(report)
        }
        Ok(FindCloseOutcome::Projected(proj)) => {
            let mut zo = ZeroedOracle::new(o, proj.zeroed.clone());
            let mut report = inner(&mut zo, &proj, eps / 2.0, delta / 2.0)?;
            report.tester = format!("lifted({})", report.tester);
            report.queries = o.counts();
            Ok(report)
        }
    }
}
