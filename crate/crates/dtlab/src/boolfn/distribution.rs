use super::Assignment;
use crate::{Error, Result};
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use std::sync::Arc;

/// A user-supplied seeded sampler, for distributions beyond the two
/// serializable kinds.
pub trait PointSampler: Send + Sync {
    fn n(&self) -> usize;
    fn sample(&self, rng: &mut ChaCha8Rng) -> Assignment;
    fn name(&self) -> &str {
        "custom"
    }
}

/// Example distribution over {0,1}^n.
#[derive(Clone)]
pub enum Distribution {
    Uniform { n: usize },
    Explicit(ExplicitDist),
    Sampler(Arc<dyn PointSampler>),
}

impl Distribution {
    pub fn uniform(n: usize) -> Self {
        Distribution::Uniform { n }
    }

    pub fn n(&self) -> usize {
        match self {
            Distribution::Uniform { n } => *n,
            Distribution::Explicit(d) => d.n,
            Distribution::Sampler(s) => s.n(),
        }
    }

    pub fn sample(&self, rng: &mut ChaCha8Rng) -> Assignment {
        match self {
            Distribution::Uniform { n } => Assignment::random(*n, rng),
            Distribution::Explicit(d) => d.sample(rng),
            Distribution::Sampler(s) => s.sample(rng),
        }
    }
}

impl std::fmt::Debug for Distribution {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Distribution::Uniform { n } => write!(f, "Uniform(n={n})"),
            Distribution::Explicit(d) => {
                write!(f, "Explicit(n={}, {} points)", d.n, d.points.len())
            }
            Distribution::Sampler(s) => write!(f, "Sampler({})", s.name()),
        }
    }
}

/// A finitely supported distribution given by weighted points. Weights are
/// normalized at construction.
#[derive(Clone, Debug)]
pub struct ExplicitDist {
    n: usize,
    points: Vec<(Assignment, f64)>,
    cumulative: Vec<f64>,
}

impl ExplicitDist {
    pub fn new(n: usize, points: Vec<(Assignment, f64)>) -> Result<Self> {
        if points.is_empty() {
            return Err(Error::Malformed("explicit distribution with no points".into()));
        }
        let mut total = 0.0;
        for (x, w) in &points {
            if x.n() != n {
                return Err(Error::Malformed(format!(
                    "distribution point {} has arity {}, expected {n}",
                    x.to_bitstring(),
                    x.n()
                )));
            }
            if !w.is_finite() || *w <= 0.0 {
                return Err(Error::Malformed(format!("bad point weight {w}")));
            }
            total += w;
        }
        let points: Vec<(Assignment, f64)> =
            points.into_iter().map(|(x, w)| (x, w / total)).collect();
        let mut cumulative = Vec::with_capacity(points.len());
        let mut acc = 0.0;
        for (_, w) in &points {
            acc += w;
            cumulative.push(acc);
        }
        *cumulative.last_mut().unwrap() = 1.0;
        Ok(ExplicitDist {
            n,
            points,
            cumulative,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn points(&self) -> &[(Assignment, f64)] {
        &self.points
    }

    fn sample(&self, rng: &mut ChaCha8Rng) -> Assignment {
        let u: f64 = rng.gen();
        let i = self.cumulative.partition_point(|&c| c < u);
        self.points[i.min(self.points.len() - 1)].0.clone()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;

    #[test]
    fn explicit_normalizes_and_samples_support() {
        let p0 = Assignment::from_bitstring("00").unwrap();
        let p1 = Assignment::from_bitstring("11").unwrap();
        let d = ExplicitDist::new(2, vec![(p0.clone(), 1.0), (p1.clone(), 3.0)]).unwrap();
        assert!((d.points()[0].1 - 0.25).abs() < 1e-12);
        let dist = Distribution::Explicit(d);
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let mut ones = 0;
        for _ in 0..2000 {
            let x = dist.sample(&mut rng);
            assert!(x == p0 || x == p1);
            if x == p1 {
                ones += 1;
            }
        }
        // 3:1 weighting; loose check.
        assert!(ones > 1300 && ones < 1700, "ones = {ones}");
    }

    #[test]
    fn explicit_rejects_bad_input() {
        assert!(ExplicitDist::new(2, vec![]).is_err());
        let p = Assignment::from_bitstring("0").unwrap();
        assert!(ExplicitDist::new(2, vec![(p, 1.0)]).is_err());
        let p2 = Assignment::from_bitstring("00").unwrap();
        assert!(ExplicitDist::new(2, vec![(p2, -1.0)]).is_err());
    }
}
