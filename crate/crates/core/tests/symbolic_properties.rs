use mfspec_core::symbolic::{
    abramov_stats, birkhoff_sum, block_marginal, shannon_entropy, vector_entropy, Alphabet,
    BlockMeasure, FirstSymbolFunction, MarkovChain, WordFunction,
};
use proptest::prelude::*;

fn distribution(m: usize) -> impl Strategy<Value = Vec<f64>> {
    prop::collection::vec(0.01f64..1.0, m).prop_map(|w| {
        let s: f64 = w.iter().sum();
        w.into_iter().map(|x| x / s).collect()
    })
}

fn two_state_chain() -> impl Strategy<Value = MarkovChain<f64>> {
    (0.05f64..0.95, 0.05f64..0.95).prop_map(|(a, b)| {
        // Stationary law of [[1-a, a], [b, 1-b]] is (b, a) / (a + b).
        let pi = vec![b / (a + b), a / (a + b)];
        MarkovChain::new(vec![vec![1.0 - a, a], vec![b, 1.0 - b]], pi, true).unwrap()
    })
}

proptest! {
    #[test]
    fn entropy_lies_between_zero_and_uniform(q in distribution(3), n in 1usize..5) {
        let nu = BlockMeasure::product(Alphabet::new(3).unwrap(), &q, n, 1 << 12).unwrap();
        let h = shannon_entropy(&nu);
        prop_assert!(h >= 0.0);
        prop_assert!(h <= n as f64 * 3f64.ln() + 1e-12);
    }

    #[test]
    fn prefix_marginals_are_consistent(chain in two_state_chain(), n in 2usize..8, k in 1usize..8) {
        let k = k.min(n);
        let long = block_marginal(&chain, n, 1 << 12).unwrap();
        let short = block_marginal(&chain, k, 1 << 12).unwrap();
        let projected = long.prefix_marginal(k).unwrap();
        for (w, p) in short.iter() {
            prop_assert!((projected.weight(w) - p).abs() < 1e-12);
        }
    }

    #[test]
    fn product_measures_satisfy_abramov(q in distribution(2), c in prop::collection::vec(-2.0f64..2.0, 2), n in 1usize..9) {
        let nu = BlockMeasure::product(Alphabet::new(2).unwrap(), &q, n, 1 << 12).unwrap();
        let f = FirstSymbolFunction { values: c.clone() };
        let stats = abramov_stats(&nu, &[&f as &dyn WordFunction<f64>]);
        prop_assert!((stats.entropy_rate - vector_entropy(&q)).abs() < 1e-12);
        let mean = q[0] * c[0] + q[1] * c[1];
        prop_assert!((stats.averages[0] - mean).abs() < 1e-12);
    }

    #[test]
    fn birkhoff_sums_split_at_any_cut(word in prop::collection::vec(0u8..3, 1..30), cut in 0usize..30, c in prop::collection::vec(-5.0f64..5.0, 3)) {
        let cut = cut.min(word.len());
        let f = FirstSymbolFunction { values: c };
        let whole = birkhoff_sum(&f, &word);
        let head = birkhoff_sum(&f, &word[..cut]);
        let tail = birkhoff_sum(&f, &word[cut..]);
        prop_assert!((whole - head - tail).abs() < 1e-10);
    }
}
