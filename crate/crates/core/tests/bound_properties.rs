mod common;

use proptest::prelude::*;

use pinning_core::bounds::{
    bound_report, closed_loop_matrix, feedback_gain_bound, upper_by_spectrum,
};
use pinning_core::generators::gen_double_star;
use pinning_core::graph::ground;
use pinning_core::spectra;
use pinning_core::strategies::{brute_force_max_lambda1, grounded_lambda1};
use pinning_core::{Error, Graph, PinSet};

use common::{connected_graph, graph_and_pins, subsets};

/// Exhaustive maximum, independent of the library's enumerator.
fn max_lambda1(g: &Graph, l: usize) -> f64 {
    subsets(g.node_count(), l)
        .into_iter()
        .map(|s| grounded_lambda1(g, &PinSet::new(s, g.node_count()).unwrap()).unwrap())
        .fold(f64::NEG_INFINITY, f64::max)
}

#[test]
fn double_star_bound_examples() {
    let g = gen_double_star(5).unwrap();
    for l in 1..=9 {
        assert!((upper_by_spectrum(&g, l).unwrap() - max_lambda1(&g, l)).abs() < 1e-9);
    }
    assert!(upper_by_spectrum(&g, 10).unwrap() > max_lambda1(&g, 10) + 0.1);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn sandwich((g, s) in graph_and_pins(connected_graph(2, 30))) {
        let r = bound_report(&g, &s, None).unwrap();
        let tol = 1e-9;
        prop_assert!(r.lambda1 > 0.0);
        prop_assert!(r.lower_min_boundary <= r.lambda1 + tol);
        prop_assert!(r.lambda1 <= r.upper_spectrum + tol);
        prop_assert!(r.lambda1 <= r.upper_kmin + tol);
        prop_assert!(r.lambda1 <= r.upper_avg_boundary + tol);
        if let Some(single) = r.upper_single_pin {
            prop_assert!(r.lambda1 <= single + tol);
            prop_assert!(single <= 1.0);
        }
    }

    #[test]
    fn superset_never_lowers_lambda1(
        (g, s) in graph_and_pins(connected_graph(3, 20)),
        extra in any::<prop::sample::Index>(),
    ) {
        let n = g.node_count();
        let free = s.complement(n);
        prop_assume!(free.len() >= 2);
        let mut bigger = s.nodes().to_vec();
        bigger.push(free[extra.index(free.len())]);
        let bigger = PinSet::new(bigger, n).unwrap();
        let small = grounded_lambda1(&g, &s).unwrap();
        let large = grounded_lambda1(&g, &bigger).unwrap();
        prop_assert!(large >= small - 1e-9);
    }

    #[test]
    fn gain_bound_is_sharp(
        (g, s) in graph_and_pins(connected_graph(2, 15)),
        alpha in 0.05f64..2.0,
        c_scale in 1.2f64..5.0,
    ) {
        let lambda1 = spectra::lambda1(ground(&g, &s).unwrap().matrix()).unwrap();
        let c = c_scale * alpha / lambda1;
        let d_star = feedback_gain_bound(&g, &s, alpha, c).unwrap();
        let above = spectra::lambda1(&closed_loop_matrix(&g, &s, alpha, c, d_star + 0.1)).unwrap();
        prop_assert!(above > 0.0, "d*+0.1 gives {}", above);
        let below = spectra::lambda1(&closed_loop_matrix(&g, &s, alpha, c, d_star - 0.1)).unwrap();
        prop_assert!(below < 0.0, "d*-0.1 gives {}", below);
    }

    #[test]
    fn gain_bound_refuses_below_threshold(
        (g, s) in graph_and_pins(connected_graph(2, 15)),
        shrink in 0.1f64..1.0,
    ) {
        let lambda1 = spectra::lambda1(ground(&g, &s).unwrap().matrix()).unwrap();
        let alpha = 1.0;
        let c = shrink * alpha / lambda1;
        let refused = matches!(
            feedback_gain_bound(&g, &s, alpha, c),
            Err(Error::CriterionNotMet { .. })
        );
        prop_assert!(refused);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    // monotone in l over all connected graphs with at most 8 nodes
    #[test]
    fn max_lambda1_nondecreasing(g in connected_graph(2, 8)) {
        let n = g.node_count();
        let mut prev = f64::NEG_INFINITY;
        for l in 1..n {
            let best = brute_force_max_lambda1(&g, l).unwrap().lambda1;
            prop_assert!((best - max_lambda1(&g, l)).abs() < 1e-9);
            prop_assert!(best >= prev - 1e-9, "l={} {} < {}", l, best, prev);
            prev = best;
        }
    }
}
