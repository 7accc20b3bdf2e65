mod common;

use nalgebra::DMatrix;
use proptest::prelude::*;

use pinning_core::generators::{gen_complete, gen_double_star, gen_star};
use pinning_core::graph::{boundary_weights, ground, induced_subgraph, laplacian};
use pinning_core::spectra::{
    self, complete_grounded_spectrum, eig_sym, star_grounded_lambda1, StarPin,
};
use pinning_core::PinSet;

use common::{any_graph, connected_graph, graph_and_pins, jacobi_eigenvalues};

#[test]
fn double_star_laplacian_spectrum() {
    let s = eig_sym(&laplacian(&gen_double_star(5).unwrap())).unwrap();
    let expected = [
        0.0, 0.1459, 1.0, 1.0, 1.0, 1.0, 1.0, 1.0, 1.0, 1.0, 1.8074, 6.8541, 7.1926,
    ];
    for (got, want) in s.values().iter().zip(expected) {
        assert!((got - want).abs() <= 5e-4, "{got} vs {want}");
    }
}

#[test]
fn star_closed_form_up_to_500() {
    for n in 3..=500 {
        let g = gen_star(n).unwrap();
        let leaf = ground(&g, &PinSet::new([n - 1], n).unwrap()).unwrap();
        let center = ground(&g, &PinSet::new([0], n).unwrap()).unwrap();
        let leaf_eig = spectra::lambda1(leaf.matrix()).unwrap();
        let center_eig = spectra::lambda1(center.matrix()).unwrap();
        assert!((leaf_eig - star_grounded_lambda1(n, StarPin::Leaf).unwrap()).abs() < 1e-9);
        assert!((center_eig - star_grounded_lambda1(n, StarPin::Center).unwrap()).abs() < 1e-9);
    }
}

#[test]
fn complete_closed_form() {
    for n in [2, 3, 10, 37, 200] {
        let g = gen_complete(n).unwrap();
        let ls: Vec<usize> = if n == 200 { vec![1, 2, 50, 123, 199] } else { (1..n).collect() };
        for l in ls {
            // pin the last l nodes so the retained set is not a prefix
            let s = PinSet::new(n - l..n, n).unwrap();
            let got = eig_sym(ground(&g, &s).unwrap().matrix()).unwrap();
            let want = complete_grounded_spectrum(n, l).unwrap();
            for (a, b) in got.values().iter().zip(want.values()) {
                assert!((a - b).abs() < 1e-9, "n={n} l={l}: {a} vs {b}");
            }
        }
    }
}

fn symmetric(n: usize) -> impl Strategy<Value = DMatrix<f64>> {
    prop::collection::vec(-10.0f64..10.0, n * n).prop_map(move |v| {
        let m = DMatrix::from_vec(n, n, v);
        (&m + m.transpose()) * 0.5
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn eigenvalues_match_jacobi(m in (1usize..12).prop_flat_map(symmetric)) {
        let got = eig_sym(&m).unwrap();
        let want = jacobi_eigenvalues(&m);
        let norm = m.row_iter().map(|r| r.abs().sum()).fold(0.0, f64::max).max(1.0);
        for (a, b) in got.values().iter().zip(&want) {
            prop_assert!((a - b).abs() <= 1e-9 * norm, "{} vs {}", a, b);
        }
        prop_assert!((got.sum() - m.trace()).abs() <= 1e-9 * m.nrows() as f64 * norm);
    }

    #[test]
    fn shift_identity(m in (1usize..10).prop_flat_map(symmetric), c in -5.0f64..5.0) {
        let n = m.nrows();
        let shifted = eig_sym(&(&m + DMatrix::identity(n, n) * c)).unwrap();
        let base = eig_sym(&m).unwrap();
        for (a, b) in shifted.values().iter().zip(base.values()) {
            prop_assert!((a - (b + c)).abs() < 1e-9);
        }
    }

    #[test]
    fn decomposition_is_exact((g, s) in graph_and_pins(any_graph(2, 20))) {
        let grounded = ground(&g, &s).unwrap();
        let h = induced_subgraph(&g, &s.complement(g.node_count())).unwrap();
        let mut expected = laplacian(&h.graph);
        let w = boundary_weights(&g, &s);
        for (j, &wj) in w.iter().enumerate() {
            expected[(j, j)] += wj as f64;
            let p = grounded.retained()[j];
            prop_assert!(wj <= g.degree(p));
            prop_assert_eq!(grounded.matrix()[(j, j)], g.degree(p) as f64);
        }
        prop_assert_eq!(grounded.matrix(), &expected);
        prop_assert_eq!(grounded.matrix(), &grounded.matrix().transpose());
    }

    #[test]
    fn diagonal_dominance((g, s) in graph_and_pins(connected_graph(2, 20))) {
        let m = ground(&g, &s).unwrap().into_matrix();
        let mut strict = false;
        for i in 0..m.nrows() {
            let off: f64 = (0..m.ncols()).filter(|&j| j != i).map(|j| m[(i, j)].abs()).sum();
            prop_assert!(m[(i, i)] >= off);
            strict |= m[(i, i)] > off;
        }
        prop_assert!(strict);
    }

    #[test]
    fn interlacing((g, s) in graph_and_pins(any_graph(2, 20))) {
        let full = eig_sym(&laplacian(&g)).unwrap();
        let sub = eig_sym(ground(&g, &s).unwrap().matrix()).unwrap();
        let l = s.len();
        for i in 1..=sub.len() {
            prop_assert!(full.lambda(i) <= sub.lambda(i) + 1e-9);
            prop_assert!(sub.lambda(i) <= full.lambda(i + l) + 1e-9);
        }
    }

    #[test]
    fn positive_when_connected((g, s) in graph_and_pins(connected_graph(2, 25))) {
        let lambda1 = spectra::lambda1(ground(&g, &s).unwrap().matrix()).unwrap();
        prop_assert!(lambda1 > 1e-12);
    }
}
