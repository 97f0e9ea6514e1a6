mod common;

use common::*;

const MUS: [usize; 5] = [1, 2, 3, 4, 5];

#[test]
fn walker_matches_reference_on_all_small_connected_graphs() {
    for n in 2..=6 {
        let mut checked = 0;
        for g in all_graphs(n).filter(is_connected) {
            compare_with_reference(&g, &MUS).unwrap();
            checked += 1;
        }
        assert!(checked > 0);
    }
}

#[test]
fn walker_matches_reference_on_random_connected_graphs() {
    for n in [7, 8] {
        let mut r = rng(n as u64);
        for _ in 0..200 {
            compare_with_reference(&random_connected(n, &mut r), &MUS).unwrap();
        }
    }
}

#[test]
fn walker_matches_reference_on_disconnected_and_sparse_graphs() {
    for seed in 0..200 {
        let n = 5 + (seed as usize % 20);
        let g = random_graph(n, 0.15, seed);
        compare_with_reference(&g, &MUS).unwrap();
    }
}

#[test]
fn clustering_matches_triangle_count() {
    for seed in 0..60 {
        let n = 2 + (seed as usize % 49);
        let g = random_graph(n, 0.05 + (seed % 7) as f64 * 0.1, 1000 + seed);
        let d = Dense::from_graph(&g);
        for i in 0..n {
            assert_eq!(g.local_clustering(i).unwrap(), d.clustering(i));
        }
        let mean = (0..n).map(|i| d.clustering(i)).sum::<f64>() / n as f64;
        assert!(close(g.global_clustering(), mean, 1e-12));
    }
}

#[test]
fn path_length_matches_floyd_warshall() {
    for seed in 0..60 {
        let n = 2 + (seed as usize % 49);
        let g = random_graph(n, 0.02 + (seed % 5) as f64 * 0.08, 2000 + seed);
        let (want, size) = Dense::from_graph(&g).mean_path();
        let got = g.average_shortest_path();
        assert_eq!(got.component_size, size, "seed {seed}");
        assert!(close(got.mean, want, 1e-12), "seed {seed}: {} vs {want}", got.mean);
    }
}
