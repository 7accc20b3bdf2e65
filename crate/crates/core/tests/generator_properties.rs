use proptest::prelude::*;

use pinning_core::generators::{gen_ba, gen_erdos_renyi, gen_nw, GenSpec};
use pinning_core::{parse_edge_list, write_edge_list};

#[test]
fn erdos_renyi_edge_mean() {
    // binomial mean C(20, 2) * 0.3 = 57
    let total: usize = (0..400)
        .map(|seed| gen_erdos_renyi(20, 0.3, seed).unwrap().edge_count())
        .sum();
    let mean = total as f64 / 400.0;
    assert!((mean - 57.0).abs() < 1.5, "mean {mean}");
}

#[test]
fn paper_scale_minimum_degrees() {
    assert_eq!(gen_ba(1000, 5, 5, 1).unwrap().min_degree(), Some(5));
    assert!(gen_nw(1000, 4, 0.006, 1).unwrap().min_degree().unwrap() >= 4);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn ba_shape(n in 6usize..120, m0 in 1usize..6, m_pick in any::<prop::sample::Index>(), seed in any::<u64>()) {
        prop_assume!(m0 < n);
        let m = 1 + m_pick.index(m0);
        let g = gen_ba(n, m0, m, seed).unwrap();
        prop_assert_eq!(g.edge_count(), m0 * (m0 - 1) / 2 + m * (n - m0));
        prop_assert_eq!(g.degrees().iter().sum::<usize>(), 2 * g.edge_count());
        prop_assert!(g.min_degree().unwrap() >= m);
        prop_assert!(g.is_connected());
        prop_assert_eq!(&g, &gen_ba(n, m0, m, seed).unwrap());
    }

    #[test]
    fn nw_keeps_the_lattice(n in 5usize..80, half in 1usize..3, p in 0.0f64..0.3, seed in any::<u64>()) {
        let k = 2 * half;
        prop_assume!(k < n);
        let g = gen_nw(n, k, p, seed).unwrap();
        for i in 0..n {
            for j in 1..=half {
                prop_assert!(g.has_edge(i, (i + j) % n));
            }
        }
        prop_assert_eq!(&g, &gen_nw(n, k, p, seed).unwrap());
    }

    #[test]
    fn edge_list_round_trip(n in 1usize..40, p in 0.0f64..1.0, seed in any::<u64>()) {
        let g = GenSpec::ErdosRenyi { n, p, seed }.generate().unwrap();
        let text = write_edge_list(&g);
        prop_assert_eq!(parse_edge_list(&text).unwrap(), g);
    }
}
