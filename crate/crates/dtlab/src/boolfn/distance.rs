use super::{Assignment, BoolFn, Distribution};
use crate::{Error, Result};
use rand_chacha::ChaCha8Rng;

/// Exact distance enumeration refuses beyond this many variables.
pub const EXACT_ENUM_CAP: usize = 24;

#[derive(Clone, Copy, Debug)]
pub enum DistanceMode {
    Exact,
    Sampled { samples: u64 },
}

/// Pr_D[f != g], exactly. For the uniform distribution this enumerates the
/// cube (n capped); for explicit distributions it sums the support.
pub fn exact_distance<F: BoolFn + ?Sized, G: BoolFn + ?Sized>(
    f: &F,
    g: &G,
    dist: &Distribution,
) -> Result<f64> {
    let n = f.n_vars();
    if g.n_vars() != n || dist.n() != n {
        return Err(Error::Malformed(format!(
            "arity mismatch: f has {n}, g has {}, D has {}",
            g.n_vars(),
            dist.n()
        )));
    }
    match dist {
        Distribution::Uniform { .. } => {
            if n > EXACT_ENUM_CAP {
                return Err(Error::EnumerationCap {
                    needed: n,
                    cap: EXACT_ENUM_CAP,
                });
            }
            let mut x = Assignment::zeros(n);
            let mut diff = 0u64;
            for idx in 0..(1u64 << n) {
                x.set_from_index(idx);
                if f.eval(&x) != g.eval(&x) {
                    diff += 1;
                }
            }
            Ok(diff as f64 / (1u64 << n) as f64)
        }
        Distribution::Explicit(d) => {
            let mut p = 0.0;
            for (x, w) in d.points() {
                if f.eval(x) != g.eval(x) {
                    p += w;
                }
            }
            Ok(p)
        }
        Distribution::Sampler(_) => Err(Error::Unsupported(
            "exact distance under an opaque sampler",
        )),
    }
}

/// Monte-Carlo estimate of Pr_D[f != g].
pub fn sampled_distance<F: BoolFn + ?Sized, G: BoolFn + ?Sized>(
    f: &F,
    g: &G,
    dist: &Distribution,
    samples: u64,
    rng: &mut ChaCha8Rng,
) -> f64 {
    let mut diff = 0u64;
    for _ in 0..samples {
        let x = dist.sample(rng);
        if f.eval(&x) != g.eval(&x) {
            diff += 1;
        }
    }
    diff as f64 / samples as f64
}

pub fn distance<F: BoolFn + ?Sized, G: BoolFn + ?Sized>(
    f: &F,
    g: &G,
    dist: &Distribution,
    mode: DistanceMode,
    rng: &mut ChaCha8Rng,
) -> Result<f64> {
    match mode {
        DistanceMode::Exact => exact_distance(f, g, dist),
        DistanceMode::Sampled { samples } => Ok(sampled_distance(f, g, dist, samples, rng)),
    }
}
