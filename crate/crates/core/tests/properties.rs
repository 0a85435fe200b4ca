use proptest::prelude::*;

use novelty_core::metrics::objective_ratio;
use novelty_core::{
    ads_solve, brute_force_densest, clip_top_k, full_gradient_ascent, novelty_score, prf,
    quadratic_form, sparsity_schedule, FeatureMatrix, SolverConfig, WeightVector,
};

fn features(max_n: usize, max_m: usize) -> impl Strategy<Value = FeatureMatrix> {
    (2..=max_n, 1..=max_m).prop_flat_map(|(n, m)| {
        prop::collection::vec(-10.0f64..10.0, n * m)
            .prop_map(move |data| FeatureMatrix::new(n, m, data).unwrap())
    })
}

fn features_and_k(max_n: usize) -> impl Strategy<Value = (FeatureMatrix, usize)> {
    features(max_n, 3).prop_flat_map(|f| {
        let n = f.n_items();
        (Just(f), 1..=n)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn distance_is_a_metric(f in features(10, 4), a in 0usize..10, b in 0usize..10, c in 0usize..10) {
        let n = f.n_items();
        let (a, b, c) = (a % n, b % n, c % n);
        let dab = f.pairwise_distance(a, b).unwrap();
        prop_assert_eq!(dab, f.pairwise_distance(b, a).unwrap());
        prop_assert_eq!(f.pairwise_distance(a, a).unwrap(), 0.0);
        let dbc = f.distance(b, c);
        let dac = f.distance(a, c);
        prop_assert!(dac <= dab + dbc + 1e-9);
    }

    #[test]
    fn indicator_bridges_score_and_quadratic_form(f in features(12, 4), mask in any::<u16>()) {
        let n = f.n_items();
        let set: Vec<usize> = (0..n).filter(|i| mask & (1 << i) != 0).collect();
        let w: Vec<f64> = (0..n).map(|i| if mask & (1 << i) != 0 { 1.0 } else { 0.0 }).collect();
        let a = novelty_score(&f, &set).unwrap();
        let b = quadratic_form(&f, &w).unwrap();
        prop_assert!((a - b).abs() <= 1e-9 * a.max(1.0));
    }

    #[test]
    fn clip_keeps_largest(v in prop::collection::vec(0.0f64..1.0, 1..30), k in 1usize..30) {
        let n = v.len();
        let k = k.min(n);
        let w = WeightVector::from_vec(v.clone()).unwrap();
        let c = clip_top_k(&w, k);
        prop_assert!(c.support_size() <= k);
        let min_kept = (0..n).filter(|&i| c.as_slice()[i] > 0.0).map(|i| v[i]).fold(f64::INFINITY, f64::min);
        for (&clipped, &orig) in c.as_slice().iter().zip(&v) {
            if clipped == 0.0 && orig > 0.0 {
                prop_assert!(orig <= min_kept);
            } else {
                prop_assert_eq!(clipped, orig);
            }
        }
    }

    #[test]
    fn schedule_is_monotone(n in 1usize..500, k in 1usize..500, e in 1usize..50) {
        let k = k.min(n);
        let budgets: Vec<usize> = (1..=e).map(|t| sparsity_schedule(t, n, k, e)).collect();
        prop_assert!(budgets.windows(2).all(|w| w[0] >= w[1]));
        prop_assert_eq!(*budgets.last().unwrap(), k);
    }

    #[test]
    fn solves_respect_structural_invariants((f, k) in features_and_k(24), seed in any::<u64>(), epochs in 1usize..8, batch in 1usize..20) {
        let cfg = SolverConfig::new(k).with_seed(seed).with_epochs(epochs).with_batch(batch).with_trace_weights(true);
        let n = f.n_items();
        for result in [ads_solve(&f, &cfg).unwrap(), full_gradient_ascent(&f, &cfg).unwrap()] {
            prop_assert_eq!(result.trace.len(), epochs);
            for rec in &result.trace {
                let w = rec.weights.as_ref().unwrap();
                prop_assert!(w.iter().all(|&x| x >= 0.0));
                let norm = w.iter().map(|x| x * x).sum::<f64>().sqrt();
                prop_assert!((norm - 1.0).abs() <= 1e-9);
                prop_assert_eq!(rec.k_t, sparsity_schedule(rec.epoch, n, k, epochs));
                prop_assert!(rec.support_size <= rec.k_t);
                prop_assert_eq!(rec.support_size, w.iter().filter(|&&x| x > 0.0).count());
            }
            prop_assert!(result.ranking.len() <= k);
            prop_assert!(result.ranking.windows(2).all(|p| p[0].1 >= p[1].1));
            prop_assert!(result.ranking.iter().all(|&(_, w)| w > 0.0));
        }
        let again = ads_solve(&f, &cfg).unwrap();
        prop_assert_eq!(ads_solve(&f, &cfg).unwrap().ranking, again.ranking);
    }

    #[test]
    fn oracle_brackets_ads((f, k) in features_and_k(9), seed in any::<u64>()) {
        let r = ads_solve(&f, &SolverConfig::new(k).with_seed(seed)).unwrap();
        let (_, best) = brute_force_densest(&f, k).unwrap();
        let score = novelty_score(&f, &r.support()).unwrap();
        prop_assert!(score <= best * (1.0 + 1e-12) + 1e-12);
        let ratio = objective_ratio(&f, &r.support(), k).unwrap();
        prop_assert!(ratio <= 1.0 + 1e-12);
    }

    #[test]
    fn prf_bounds_and_relabeling(n in 1usize..40, pm in any::<u64>(), tm in any::<u64>(), shift in 0usize..40) {
        let pred: Vec<usize> = (0..n).filter(|i| pm & (1 << i) != 0).collect();
        let truth: Vec<usize> = (0..n).filter(|i| tm & (1 << i) != 0).collect();
        let r = prf(&pred, &truth, n).unwrap();
        for v in [r.precision, r.recall, r.f_measure] {
            prop_assert!((0.0..=1.0).contains(&v));
        }
        if r.precision > 0.0 && r.recall > 0.0 {
            prop_assert!(r.f_measure <= r.precision.max(r.recall) + 1e-15);
            prop_assert!(r.f_measure >= r.precision.min(r.recall) - 1e-15);
        }
        let relabel = |i: &usize| (i + shift) % n;
        let p2: Vec<usize> = pred.iter().map(relabel).collect();
        let t2: Vec<usize> = truth.iter().map(relabel).collect();
        prop_assert_eq!(prf(&p2, &t2, n).unwrap(), r);
    }
}
