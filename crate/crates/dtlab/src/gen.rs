//! Seeded instance generators used by the CLI, the suite runner, and the
//! statistical test corpora.

use crate::boolfn::{Assignment, DecisionTree, F2Polynomial, Monomial, TruthTable};
use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

/// Probability that a node above the depth limit closes early as a leaf.
/// Root always splits so the generated functions are rarely trivial.
const EARLY_LEAF_PROB: f64 = 0.2;

/// A random tree of depth at most `d` (exactly `d` on at least one path
/// unless early leaves close everything). No variable repeats on a path.
pub fn random_depth_tree(n: usize, d: u32, rng: &mut ChaCha8Rng) -> DecisionTree {
    assert!(n >= d as usize, "need n >= d to avoid path repeats");
    let mut avail: Vec<u32> = (0..n as u32).collect();
    gen_depth(n, d, d, &mut avail, rng)
}

fn gen_depth(
    n: usize,
    depth_left: u32,
    d: u32,
    avail: &mut Vec<u32>,
    rng: &mut ChaCha8Rng,
) -> DecisionTree {
    let at_root = depth_left == d;
    let close = depth_left == 0
        || avail.is_empty()
        || (!at_root && rng.gen::<f64>() < EARLY_LEAF_PROB);
    if close {
        return DecisionTree::leaf(n, rng.gen());
    }
    let pick = rng.gen_range(0..avail.len());
    let var = avail.swap_remove(pick);
    let lo = gen_depth(n, depth_left - 1, d, avail, rng);
    let hi = gen_depth(n, depth_left - 1, d, avail, rng);
    avail.push(var);
    DecisionTree::split(var, lo, hi)
}

/// A random tree with exactly `s` leaves (when enough variables exist on
/// every path; with n >= s that is always the case).
pub fn random_size_tree(n: usize, s: u64, rng: &mut ChaCha8Rng) -> DecisionTree {
    let mut avail: Vec<u32> = (0..n as u32).collect();
    gen_size(n, s, &mut avail, rng)
}

fn gen_size(n: usize, s: u64, avail: &mut Vec<u32>, rng: &mut ChaCha8Rng) -> DecisionTree {
    if s <= 1 || avail.is_empty() {
        return DecisionTree::leaf(n, rng.gen());
    }
    let pick = rng.gen_range(0..avail.len());
    let var = avail.swap_remove(pick);
    let s_lo = rng.gen_range(1..s);
    let lo = gen_size(n, s_lo, avail, rng);
    let hi = gen_size(n, s - s_lo, avail, rng);
    avail.push(var);
    DecisionTree::split(var, lo, hi)
}

/// A random nonzero polynomial of degree at most `max_degree` over the given
/// variables. Monomials are toggled, so collisions cancel; retries keep the
/// result nonzero and non-constant when the variable set allows it.
pub fn random_poly_on_vars(
    n: usize,
    vars: &[u32],
    max_degree: usize,
    monomials: usize,
    rng: &mut ChaCha8Rng,
) -> F2Polynomial {
    assert!(!vars.is_empty());
    loop {
        let mut p = F2Polynomial::zero(n);
        for _ in 0..monomials {
            let deg = rng.gen_range(0..=max_degree.min(vars.len()));
            let mut pool = vars.to_vec();
            pool.shuffle(rng);
            p.toggle_monomial(Monomial::new(pool.into_iter().take(deg)));
        }
        if p.is_constant().is_none() {
            return p;
        }
    }
}

pub fn random_poly(
    n: usize,
    max_degree: usize,
    monomials: usize,
    rng: &mut ChaCha8Rng,
) -> F2Polynomial {
    let vars: Vec<u32> = (0..n as u32).collect();
    random_poly_on_vars(n, &vars, max_degree, monomials, rng)
}

/// A random polynomial whose support is confined to a random set of at most
/// `junta` variables. Returns the polynomial; its true relevant set is its
/// `support_vars()`.
pub fn random_junta_poly(
    n: usize,
    junta: usize,
    max_degree: usize,
    monomials: usize,
    rng: &mut ChaCha8Rng,
) -> F2Polynomial {
    let mut pool: Vec<u32> = (0..n as u32).collect();
    pool.shuffle(rng);
    pool.truncate(junta.max(1));
    random_poly_on_vars(n, &pool, max_degree, monomials, rng)
}

pub fn random_truth_table(n: usize, rng: &mut ChaCha8Rng) -> TruthTable {
    let mut tt = TruthTable::zeros(n);
    for idx in 0..(1u64 << n) {
        tt.set(idx, rng.gen());
    }
    tt
}

/// XOR of the first k variables (as a polynomial file-friendly function).
pub fn parity(n: usize, k: usize) -> F2Polynomial {
    assert!(k <= n);
    let vars: Vec<u32> = (0..k as u32).collect();
    F2Polynomial::parity(n, &vars)
}

pub fn random_assignment(n: usize, rng: &mut ChaCha8Rng) -> Assignment {
    Assignment::random(n, rng)
}
