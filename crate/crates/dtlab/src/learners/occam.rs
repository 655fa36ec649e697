//! Sample-size bookkeeping for consistency-based PAC learning.

/// Constant factor applied on top of the information-theoretic bound.
pub const OCCAM_C: f64 = 4.0;

/// log2 of a counting bound on decision trees with at most `size` leaves
/// over n variables: each of the ≤ size internal nodes picks one of n
/// variables and each slot one of a few shapes, giving |class| ≤ (8n)^size.
pub fn tree_class_log2(n: usize, size: u64) -> f64 {
    size as f64 * (3.0 + (n.max(2) as f64).log2())
}

/// Examples sufficient for a consistent hypothesis from a class of
/// log2-cardinality `class_log2` to be ε-good with probability 1-δ:
/// ⌈(C/ε)·(class_log2·ln2 + ln(1/δ))⌉.
pub fn occam_sample_size(eps: f64, delta: f64, class_log2: f64) -> u64 {
    assert!(eps > 0.0 && eps < 1.0 && delta > 0.0 && delta < 1.0);
    ((OCCAM_C / eps) * (class_log2 * std::f64::consts::LN_2 + (1.0 / delta).ln())).ceil() as u64
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::learners::count_trees;

    #[test]
    fn sample_size_frozen_example() {
        // class_log2 = tree_class_log2(4, 2) = 2·(3+2) = 10;
        // (4/0.5)·(10·ln2 + ln2) = 8·7.6246… → 61.
        assert_eq!(tree_class_log2(4, 2), 10.0);
        assert_eq!(occam_sample_size(0.5, 0.5, 10.0), 61);
    }

    #[test]
    fn sample_size_dominates_the_information_bound() {
        for (eps, delta, l) in [(0.1, 0.05, 20.0), (0.25, 0.01, 100.0)] {
            let m = occam_sample_size(eps, delta, l) as f64;
            let info = (l * std::f64::consts::LN_2 + (1.0 / delta).ln()) / eps;
            assert!(m >= info);
        }
    }

    #[test]
    fn counting_bound_covers_enumeration() {
        for n in 1..=4usize {
            for s in 1..=4u64 {
                let actual = count_trees(n, s) as f64;
                assert!(
                    actual.log2() <= tree_class_log2(n, s),
                    "count {actual} exceeds bound at n={n}, s={s}"
                );
            }
        }
    }
}
