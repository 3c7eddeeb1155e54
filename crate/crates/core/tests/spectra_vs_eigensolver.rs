//! Power iteration and quotient eigenvalues against a dense symmetric
//! eigensolver.

use hamconn_core::families::{
    named_variant, s_graph, s_partition, t_graph, t_partition, variant_partition, Variant,
};
use hamconn_core::spectra::{
    adjacency_spectral_radius, fourier_budan_clear, is_equitable, largest_eigenvalue_small,
    quotient_matrix, signless_laplacian_spectral_radius, IntPolynomial, MatrixKind, NamedPolynomial,
    Partition,
};
use hamconn_core::Graph;
use nalgebra::DMatrix;
use proptest::prelude::*;

fn matrix(g: &Graph, kind: MatrixKind) -> DMatrix<f64> {
    let n = g.n();
    DMatrix::from_fn(n, n, |i, j| {
        if i == j {
            match kind {
                MatrixKind::Adjacency => 0.0,
                MatrixKind::SignlessLaplacian => g.degree(i) as f64,
            }
        } else if g.has_edge(i, j) {
            1.0
        } else {
            0.0
        }
    })
}

fn largest(g: &Graph, kind: MatrixKind) -> f64 {
    matrix(g, kind).symmetric_eigen().eigenvalues.max()
}

fn graph_strategy(max_n: usize) -> impl Strategy<Value = Graph> {
    (1..=max_n).prop_flat_map(|n| {
        let pairs = n * (n - 1) / 2;
        prop::collection::vec(any::<bool>(), pairs).prop_map(move |bits| {
            let mut edges = Vec::new();
            let mut k = 0;
            for u in 0..n {
                for v in u + 1..n {
                    if bits[k] {
                        edges.push((u, v));
                    }
                    k += 1;
                }
            }
            Graph::build(n, &edges).unwrap()
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn radius_matches_eigensolver(g in graph_strategy(16)) {
        let rho = adjacency_spectral_radius(&g, 1e-10).unwrap().value;
        let q = signless_laplacian_spectral_radius(&g, 1e-10).unwrap().value;
        prop_assert!((rho - largest(&g, MatrixKind::Adjacency)).abs() < 1e-7);
        prop_assert!((q - largest(&g, MatrixKind::SignlessLaplacian)).abs() < 1e-7);
    }

    #[test]
    fn equitable_degree_partitions_keep_the_radius(g in graph_strategy(12)) {
        let pi = Partition::by_degree(&g);
        prop_assume!(g.n() > 0 && pi.len() <= 8);
        for kind in [MatrixKind::Adjacency, MatrixKind::SignlessLaplacian] {
            if is_equitable(&g, &pi, kind).unwrap() {
                let qm = quotient_matrix(&g, &pi, kind).unwrap();
                let small = largest_eigenvalue_small(&qm, 1e-12).unwrap();
                prop_assert!((small - largest(&g, kind)).abs() < 1e-8);
            }
        }
    }

    /// A positive Fourier–Budan test at `a` leaves no sign change on a fine
    /// grid to the right of `a`.
    #[test]
    fn fourier_budan_agrees_with_a_scan(roots in prop::collection::vec(-12i128..12, 1..5), a in -15i128..15) {
        let p = IntPolynomial::from_roots(&roots);
        if fourier_budan_clear(&p, a as f64) {
            let n = roots.len() as f64;
            let steps = 2000;
            let width = 10.0 * n.max(1.0);
            for i in 0..=steps {
                let x = a as f64 + width * i as f64 / steps as f64;
                prop_assert!(p.eval(x) > 0.0, "sign change near {x}");
            }
            prop_assert!(roots.iter().all(|&r| r < a));
        }
    }
}

#[test]
fn family_quotients_match_eigensolver() {
    for n in 11..=20 {
        let cases = [
            (s_graph(n, 3).unwrap(), s_partition(n, 3).unwrap()),
            (t_graph(n, 3).unwrap(), t_partition(n, 3).unwrap()),
            (named_variant(Variant::H3, n).unwrap(), variant_partition(Variant::H3, n).unwrap()),
            (named_variant(Variant::T3, n).unwrap(), variant_partition(Variant::T3, n).unwrap()),
        ];
        for (g, pi) in cases {
            assert!(is_equitable(&g, &pi, MatrixKind::Adjacency).unwrap());
            let qm = quotient_matrix(&g, &pi, MatrixKind::Adjacency).unwrap();
            let small = largest_eigenvalue_small(&qm, 1e-12).unwrap();
            assert!((small - largest(&g, MatrixKind::Adjacency)).abs() < 1e-8, "n={n}");
        }
    }
}

#[test]
fn named_polynomials_are_quotient_polynomials() {
    for n in 11..=20usize {
        let h3 = named_variant(Variant::H3, n).unwrap();
        let t3 = named_variant(Variant::T3, n).unwrap();
        let s3 = s_graph(n, 3).unwrap();
        let tn = t_graph(n, 3).unwrap();
        let cases = [
            (&h3, variant_partition(Variant::H3, n).unwrap(), MatrixKind::Adjacency, NamedPolynomial::H3Adjacency),
            (&t3, variant_partition(Variant::T3, n).unwrap(), MatrixKind::Adjacency, NamedPolynomial::T3Adjacency),
            (&s3, Partition::by_degree(&s3), MatrixKind::SignlessLaplacian, NamedPolynomial::SSignless),
            (&h3, Partition::by_degree(&h3), MatrixKind::SignlessLaplacian, NamedPolynomial::H3Signless),
            (&tn, Partition::by_degree(&tn), MatrixKind::SignlessLaplacian, NamedPolynomial::TSignless),
        ];
        for (g, pi, kind, which) in cases {
            let cp = quotient_matrix(g, &pi, kind).unwrap().characteristic_polynomial().unwrap();
            assert_eq!(cp, which.instantiate(n as i128).unwrap(), "{which} n={n}");
            // its largest root is the spectral radius of the whole graph
            let roots = matrix(g, kind).symmetric_eigen().eigenvalues;
            let top = roots.max();
            assert!(cp.eval(top).abs() < 1e-6 * top.powi(4), "{which} n={n}");
        }
    }
}
