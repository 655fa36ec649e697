use std::sync::Arc;

use dtlab::algebra::{cd, interpolate_poly};
use dtlab::boolfn::{Assignment, BoolFn, Distribution, OracleSession, TruthTable};
use dtlab::gen::{random_depth_tree, random_poly, random_size_tree};
use dtlab::learners::min_size_from_truth_table;
use dtlab::rng::{RngFactory, StreamDomain};
use dtlab::symbolic::max_tf_route_depth;
use proptest::prelude::*;
use rand::Rng;

fn rng_for(seed: u64) -> rand_chacha::ChaCha8Rng {
    RngFactory::new(seed).stream(StreamDomain::Generator, 0)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    // The tree, its disjoint terms, its polynomial, and its truth table
    // are the same function.
    #[test]
    fn representations_agree_pointwise(seed in any::<u64>(), n in 2usize..9, d in 1u32..5) {
        let mut rng = rng_for(seed);
        let t = random_depth_tree(n, d.min(n as u32), &mut rng);
        let terms = t.to_terms();
        let poly = t.to_polynomial();
        let table = t.to_truth_table();
        for idx in 0..(1u64 << n) {
            let x = Assignment::from_index(idx, n);
            let v = t.eval(&x);
            prop_assert_eq!(terms.eval(&x), v);
            prop_assert_eq!(poly.eval(&x), v);
            prop_assert_eq!(table.eval(&x), v);
        }
    }

    // Restriction substitutes a value; shifting translates the argument.
    #[test]
    fn restrict_and_shift_are_pointwise(seed in any::<u64>(), n in 2usize..8) {
        let mut rng = rng_for(seed);
        let f = random_poly(n, n.min(4), 6, &mut rng);
        let v = rng.gen_range(0..n as u32);
        let b = rng.gen::<bool>();
        let g = f.restrict(v, b);
        let a = Assignment::random(n, &mut rng);
        let s = f.shift(&a);
        for idx in 0..(1u64 << n) {
            let mut x = Assignment::from_index(idx, n);
            prop_assert_eq!(s.eval(&x), f.eval(&x.xor(&a)));
            x.set(v, b);
            prop_assert_eq!(g.eval(&x), f.eval(&x));
        }
    }

    // Membership queries over a variable subset recover the polynomial
    // exactly when the function only depends on that subset.
    #[test]
    fn interpolation_round_trips(seed in any::<u64>(), n in 2usize..8) {
        let mut rng = rng_for(seed);
        let f = random_poly(n, n.min(4), 6, &mut rng);
        let mut o = OracleSession::new(
            Arc::new(f.clone()),
            Distribution::uniform(n),
            rng_for(seed ^ 1),
        );
        let vars: Vec<u32> = (0..n as u32).collect();
        let g = interpolate_poly(&mut o, &vars).unwrap();
        prop_assert_eq!(g, f);
    }

    // The example-driven minimum-size search and the truth-table dynamic
    // program find trees of the same size when given the whole cube.
    #[test]
    fn consis_matches_the_table_dp(bits in any::<u16>(), n in 2usize..5) {
        let mask = if n == 4 { bits } else { bits & ((1 << (1 << n)) - 1) };
        let mut table = TruthTable::zeros(n);
        for idx in 0..(1u64 << n) {
            table.set(idx, (mask >> idx) & 1 == 1);
        }
        let examples: Vec<(Assignment, bool)> = (0..(1u64 << n))
            .map(|idx| {
                let x = Assignment::from_index(idx, n);
                let y = table.eval(&x);
                (x, y)
            })
            .collect();
        let (dp_size, dp_tree) = min_size_from_truth_table(&table).unwrap();
        let found = dtlab::learners::consis(&examples, n, n as u32).unwrap();
        prop_assert_eq!(found.size(), dp_size);
        prop_assert_eq!(dp_tree.to_truth_table(), table);
    }

    // Zeroing variables can only make the minimum hitting set of the
    // non-constant monomials smaller.
    #[test]
    fn cd_shrinks_under_zero_restriction(seed in any::<u64>(), n in 2usize..7) {
        let mut rng = rng_for(seed);
        let f = random_poly(n, n.min(4), 6, &mut rng);
        let keep = rng.gen_range(0..n as u32);
        let g = f.restrict_zeroed((0..n as u32).filter(|&v| v != keep).take(2));
        let cf = cd(&f, n).unwrap().value;
        let cg = cd(&g, n).unwrap().value;
        prop_assert!(cg <= cf, "cd grew from {} to {} after zeroing", cf, cg);
    }

    // Any two terms of the disjoint representation contradict on some
    // variable, so at most one fires per input.
    #[test]
    fn disjoint_terms_are_pairwise_contradictory(seed in any::<u64>(), n in 2usize..9, d in 1u32..5) {
        let mut rng = rng_for(seed);
        let t = random_depth_tree(n, d.min(n as u32), &mut rng);
        let terms = t.to_terms();
        let all = terms.terms();
        for (i, a) in all.iter().enumerate() {
            for b in all.iter().skip(i + 1) {
                prop_assert!(a.contradicts(b), "terms {:?} and {:?} can fire together", a, b);
            }
        }
    }

    // Routing through maximal monomials never needs more than d(d+1)/2
    // variables on a depth-d tree.
    #[test]
    fn route_depth_respects_the_depth_bound(seed in any::<u64>(), n in 2usize..8, d in 1u32..4) {
        let mut rng = rng_for(seed);
        let t = random_depth_tree(n, d.min(n as u32), &mut rng);
        let depth = t.depth();
        let f = t.to_polynomial();
        let route = max_tf_route_depth(&f, 4096).unwrap();
        prop_assert!(
            route as u32 <= depth * (depth + 1) / 2,
            "route depth {} for tree depth {}",
            route,
            depth
        );
    }

    // Structural facts about depth-d trees seen through their ANF.
    #[test]
    fn depth_bounds_the_polynomial_shape(seed in any::<u64>(), n in 2usize..10, d in 1u32..5) {
        let mut rng = rng_for(seed);
        let t = random_depth_tree(n, d.min(n as u32), &mut rng);
        let f = t.to_polynomial();
        prop_assert!(f.degree() as u32 <= d);
        prop_assert!(f.num_monomials() as u64 <= 3u64.pow(d));
        prop_assert!((f.support_vars().len() as u64) < (1u64 << d));
    }

    // Size-s trees have at most s-1 split variables and s leaves.
    #[test]
    fn size_bounds_the_support(seed in any::<u64>(), n in 2usize..10, s in 1u64..9) {
        let mut rng = rng_for(seed);
        let t = random_size_tree(n, s, &mut rng);
        prop_assert!(t.size() <= s.max(1));
        prop_assert!((t.vars_used().len() as u64) < t.size().max(2));
    }
}
