use super::{Assignment, BoolFn, Distribution, RestrictionSeq};
use crate::{Error, Result};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use std::collections::BTreeSet;
use std::sync::Arc;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct QueryCounts {
    /// Black-box (membership) queries.
    pub bb: u64,
    /// Random labeled examples drawn from the distribution.
    pub rex: u64,
}

impl QueryCounts {
    pub fn total(&self) -> u64 {
        self.bb + self.rex
    }
}

/// The query interface every algorithm runs against. Adapters wrap a session
/// to rewrite queries (shift, zero-projection, restriction) while counters
/// and randomness stay with the underlying session.
pub trait Oracle {
    fn n(&self) -> usize;
    fn query(&mut self, x: &Assignment) -> Result<bool>;
    fn example(&mut self) -> Result<(Assignment, bool)>;
    /// Algorithm-internal randomness (probe points, binary-search draws).
    fn rng(&mut self) -> &mut ChaCha8Rng;
    fn counts(&self) -> QueryCounts;
}

/// Holds a hidden function, an example distribution, seeded randomness and
/// query counters. Two sessions with equal seeds asked the same query
/// sequence produce identical transcripts.
pub struct OracleSession {
    hidden: Arc<dyn BoolFn>,
    dist: Distribution,
    rng: ChaCha8Rng,
    counts: QueryCounts,
    budget: Option<u64>,
}

impl OracleSession {
    pub fn new(hidden: Arc<dyn BoolFn>, dist: Distribution, rng: ChaCha8Rng) -> Self {
        assert_eq!(hidden.n_vars(), dist.n());
        OracleSession {
            hidden,
            dist,
            rng,
            counts: QueryCounts::default(),
            budget: None,
        }
    }

    pub fn with_budget(mut self, budget: Option<u64>) -> Self {
        self.budget = budget;
        self
    }

    fn charge(&mut self) -> Result<()> {
        if let Some(b) = self.budget {
            if self.counts.total() >= b {
                return Err(Error::BudgetExhausted {
                    budget: b,
                    bb: self.counts.bb,
                    rex: self.counts.rex,
                });
            }
        }
        Ok(())
    }
}

impl Oracle for OracleSession {
    fn n(&self) -> usize {
        self.hidden.n_vars()
    }

    fn query(&mut self, x: &Assignment) -> Result<bool> {
        self.charge()?;
        self.counts.bb += 1;
        Ok(self.hidden.eval(x))
    }

    fn example(&mut self) -> Result<(Assignment, bool)> {
        self.charge()?;
        self.counts.rex += 1;
        let x = self.dist.sample(&mut self.rng);
        let y = self.hidden.eval(&x);
        Ok((x, y))
    }

    fn rng(&mut self) -> &mut ChaCha8Rng {
        &mut self.rng
    }

    fn counts(&self) -> QueryCounts {
        self.counts
    }
}

/// Answers queries on f with a set of variables forced to 0, i.e. the
/// oracle of f restricted by zeroing `zeroed`. Examples keep their drawn
/// points but are relabeled through one extra black-box query.
pub struct ZeroedOracle<'a, O: Oracle + ?Sized> {
    inner: &'a mut O,
    zeroed: BTreeSet<u32>,
}

impl<'a, O: Oracle + ?Sized> ZeroedOracle<'a, O> {
    pub fn new(inner: &'a mut O, zeroed: BTreeSet<u32>) -> Self {
        ZeroedOracle { inner, zeroed }
    }
}

impl<O: Oracle + ?Sized> Oracle for ZeroedOracle<'_, O> {
    fn n(&self) -> usize {
        self.inner.n()
    }

    fn query(&mut self, x: &Assignment) -> Result<bool> {
        self.inner.query(&x.with_zeroed(self.zeroed.iter().copied()))
    }

    fn example(&mut self) -> Result<(Assignment, bool)> {
        let (x, _) = self.inner.example()?;
        let y = self
            .inner
            .query(&x.with_zeroed(self.zeroed.iter().copied()))?;
        Ok((x, y))
    }

    fn rng(&mut self) -> &mut ChaCha8Rng {
        self.inner.rng()
    }

    fn counts(&self) -> QueryCounts {
        self.inner.counts()
    }
}

/// The oracle of T(x) = f(x + a). Examples map (x, f(x)) to (x + a, T(x + a));
/// under the uniform distribution this is again a correctly distributed
/// example of T (the only place shifted examples are used).
pub struct ShiftedOracle<'a, O: Oracle + ?Sized> {
    inner: &'a mut O,
    a: Assignment,
}

impl<'a, O: Oracle + ?Sized> ShiftedOracle<'a, O> {
    pub fn new(inner: &'a mut O, a: Assignment) -> Self {
        ShiftedOracle { inner, a }
    }
}

impl<O: Oracle + ?Sized> Oracle for ShiftedOracle<'_, O> {
    fn n(&self) -> usize {
        self.inner.n()
    }

    fn query(&mut self, x: &Assignment) -> Result<bool> {
        self.inner.query(&x.xor(&self.a))
    }

    fn example(&mut self) -> Result<(Assignment, bool)> {
        let (x, y) = self.inner.example()?;
        Ok((x.xor(&self.a), y))
    }

    fn rng(&mut self) -> &mut ChaCha8Rng {
        self.inner.rng()
    }

    fn counts(&self) -> QueryCounts {
        self.inner.counts()
    }
}

/// Query-only view of f with a restriction applied; used by probes on
/// partially substituted functions. Has no example semantics.
pub struct RestrictedOracle<'a, O: Oracle + ?Sized> {
    inner: &'a mut O,
    q: RestrictionSeq,
}

impl<'a, O: Oracle + ?Sized> RestrictedOracle<'a, O> {
    pub fn new(inner: &'a mut O, q: RestrictionSeq) -> Self {
        RestrictedOracle { inner, q }
    }
}

impl<O: Oracle + ?Sized> Oracle for RestrictedOracle<'_, O> {
    fn n(&self) -> usize {
        self.inner.n()
    }

    fn query(&mut self, x: &Assignment) -> Result<bool> {
        self.inner.query(&x.with_restriction(&self.q))
    }

    fn example(&mut self) -> Result<(Assignment, bool)> {
        Err(Error::Unsupported("examples on a restricted oracle"))
    }

    fn rng(&mut self) -> &mut ChaCha8Rng {
        self.inner.rng()
    }

    fn counts(&self) -> QueryCounts {
        self.inner.counts()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::boolfn::F2Polynomial;
    use crate::rng::{RngFactory, StreamDomain};

    fn session(p: F2Polynomial, seed: u64) -> OracleSession {
        let n = p.n_vars();
        OracleSession::new(
            Arc::new(p),
            Distribution::uniform(n),
            RngFactory::new(seed).stream(StreamDomain::Session, 0),
        )
    }

    #[test]
    fn counters_and_budget() {
        let p = F2Polynomial::parity(3, &[0, 1, 2]);
        let mut o = session(p, 1).with_budget(Some(3));
        let x = Assignment::zeros(3);
        assert!(!o.query(&x).unwrap());
        o.example().unwrap();
        o.example().unwrap();
        assert_eq!(o.counts(), QueryCounts { bb: 1, rex: 2 });
        match o.query(&x) {
            Err(Error::BudgetExhausted { budget: 3, .. }) => {}
            other => panic!("expected budget error, got {other:?}"),
        }
    }

    #[test]
    fn identical_seeds_identical_transcripts() {
        let p = F2Polynomial::parity(6, &[0, 3, 5]);
        let mut a = session(p.clone(), 9);
        let mut b = session(p, 9);
        for _ in 0..50 {
            assert_eq!(a.example().unwrap(), b.example().unwrap());
        }
        assert_eq!(a.counts(), b.counts());
    }

    #[test]
    fn zeroed_oracle_semantics() {
        let p = F2Polynomial::parity(4, &[0, 1]);
        let mut o = session(p, 3);
        let zero: BTreeSet<u32> = [1u32].into_iter().collect();
        let mut proj = ZeroedOracle::new(&mut o, zero);
        // With x2 forced to 0, the function is x1.
        let x = Assignment::from_bitstring("1100").unwrap();
        assert!(proj.query(&x).unwrap());
        let (_, _) = proj.example().unwrap();
        // one example plus one relabeling query
        assert_eq!(proj.counts(), QueryCounts { bb: 2, rex: 1 });
    }

    #[test]
    fn shifted_oracle_semantics() {
        let p = F2Polynomial::parity(3, &[0]);
        let mut o = session(p, 4);
        let a = Assignment::from_bitstring("100").unwrap();
        let mut sh = ShiftedOracle::new(&mut o, a);
        // T(x) = f(x + a) = x1 + 1
        assert!(sh.query(&Assignment::zeros(3)).unwrap());
        let (z, y) = sh.example().unwrap();
        assert_eq!(y, !z.get(0), "examples must be labeled consistently with T");
    }

    #[test]
    fn restricted_oracle_has_no_examples() {
        let p = F2Polynomial::parity(2, &[0, 1]);
        let mut o = session(p, 5);
        let mut q = RestrictionSeq::new();
        q.push(0, true).unwrap();
        let mut r = RestrictedOracle::new(&mut o, q);
        assert!(r.query(&Assignment::zeros(2)).unwrap());
        assert!(matches!(r.example(), Err(Error::Unsupported(_))));
    }
}
