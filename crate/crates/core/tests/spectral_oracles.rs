use std::f64::consts::PI;

use estrada_core::families::{complete, complete_bipartite, cycle, erdos_renyi, path, star};
use estrada_core::{
    classify, enumerate_graphs, estrada_index, estrada_index_series, graph_energy, spectral_moment,
    spectrum, Graph,
};

fn sorted_desc(mut v: Vec<f64>) -> Vec<f64> {
    v.sort_by(|a, b| b.total_cmp(a));
    v
}

fn assert_spectrum(g: &Graph, expected: Vec<f64>, tol: f64) {
    let s = spectrum(g).unwrap();
    let expected = sorted_desc(expected);
    assert_eq!(s.len(), expected.len());
    for (x, e) in s.values().iter().zip(&expected) {
        assert!(
            (x - e).abs() < tol,
            "{g:?}: got {:?}, want {expected:?}",
            s.values()
        );
    }
}

#[test]
fn path_spectrum_matches_cosines() {
    for n in 2..=10 {
        let closed: Vec<f64> = (1..=n)
            .map(|k| 2.0 * (k as f64 * PI / (n + 1) as f64).cos())
            .collect();
        assert_spectrum(&path(n), closed, 1e-10);
    }
}

#[test]
fn cycle_spectrum_matches_circulant_formula() {
    for n in 3..=12 {
        let closed: Vec<f64> = (0..n)
            .map(|k| 2.0 * (2.0 * PI * k as f64 / n as f64).cos())
            .collect();
        assert_spectrum(&cycle(n).unwrap(), closed, 1e-10);
    }
}

#[test]
fn star_and_complete_bipartite_spectra() {
    for n in 3..=8 {
        let r = ((n - 1) as f64).sqrt();
        let mut v = vec![0.0; n - 2];
        v.extend([r, -r]);
        assert_spectrum(&star(n).unwrap(), v, 1e-10);
    }
    for p in 1..=5 {
        for q in 1..=5 {
            let r = ((p * q) as f64).sqrt();
            let mut v = vec![0.0; p + q - 2];
            v.extend([r, -r]);
            let g = complete_bipartite(p, q);
            assert_spectrum(&g, v, 1e-10);
            let energy = graph_energy(&spectrum(&g).unwrap());
            assert!((energy - 2.0 * (g.m() as f64).sqrt()).abs() < 1e-9);
        }
    }
}

#[test]
fn complete_graph_estrada_closed_form() {
    for n in 2..=6 {
        let ee = estrada_index(&spectrum(&complete(n)).unwrap());
        let closed = ((n - 1) as f64).exp() + (n - 1) as f64 * (-1.0f64).exp();
        assert!((ee - closed).abs() < 1e-9);
    }
}

fn check_moments(g: &Graph) {
    let s = spectrum(g).unwrap();
    let (n, m, t) = (g.n() as f64, g.m() as f64, g.triangle_count() as f64);
    assert_eq!(spectral_moment(&s, 0), n);
    assert!(spectral_moment(&s, 1).abs() < 1e-8, "{g:?}");
    assert!((spectral_moment(&s, 2) - 2.0 * m).abs() < 1e-8, "{g:?}");
    assert!((spectral_moment(&s, 3) - 6.0 * t).abs() < 1e-8, "{g:?}");
}

#[test]
fn moment_identities_on_all_graphs_up_to_six() {
    for n in 1..=6 {
        enumerate_graphs(n, |_| true)
            .unwrap()
            .for_each(|g| check_moments(&g));
    }
}

#[test]
fn moment_identities_on_random_graphs() {
    for seed in 0..1000u64 {
        let n = 1 + (seed as usize % 30);
        let p = (seed % 10) as f64 / 9.0;
        check_moments(&erdos_renyi(n, p, seed).unwrap());
    }
}

#[test]
fn series_oracle_agrees_on_all_graphs_up_to_six() {
    for n in 1..=6 {
        for g in enumerate_graphs(n, |_| true).unwrap() {
            let eig = estrada_index(&spectrum(&g).unwrap());
            let series = estrada_index_series(&g, 1e-12);
            assert!((eig - series).abs() < 1e-9, "{g:?}: {eig} vs {series}");
        }
    }
}

/// Absolute 1e-9 is below f64 resolution once EE reaches ~1e7, so the large
/// random graphs are compared relative to EE.
#[test]
fn series_oracle_agrees_on_random_graphs() {
    for seed in 0..1000u64 {
        let n = 1 + (seed as usize * 7 % 30);
        let p = ((seed * 3) % 11) as f64 / 10.0;
        let g = erdos_renyi(n, p, seed).unwrap();
        let eig = estrada_index(&spectrum(&g).unwrap());
        let series = estrada_index_series(&g, 1e-12 * eig);
        assert!(
            (eig - series).abs() <= 1e-9 * eig.max(1.0),
            "n={n} p={p}: {eig} vs {series}"
        );
    }
}

#[test]
fn bipartite_spectra_are_symmetric() {
    for n in 1..=7 {
        for g in enumerate_graphs(n, |g| classify(g).bipartite()).unwrap() {
            assert!(spectrum(&g).unwrap().is_symmetric_about_zero(1e-8), "{g:?}");
        }
    }
    // and odd cycles are not
    assert!(!spectrum(&cycle(5).unwrap())
        .unwrap()
        .is_symmetric_about_zero(1e-3));
}

#[test]
fn jacobi_residual_is_within_target() {
    for seed in 0..50 {
        let g = erdos_renyi(60, 0.3, seed).unwrap();
        let s = spectrum(&g).unwrap();
        let frob = (2.0 * g.m() as f64).sqrt();
        assert!(s.residual() < 1e-12 * frob.max(1.0));
    }
}

#[test]
fn larger_graph_spectrum() {
    let g = cycle(200).unwrap();
    let s = spectrum(&g).unwrap();
    assert!((s.largest() - 2.0).abs() < 1e-9);
    assert!((s.smallest() + 2.0).abs() < 1e-9);
}
