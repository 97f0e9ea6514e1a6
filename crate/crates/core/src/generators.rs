//! Seeded graph generators: ring lattices, Watts–Strogatz, Erdős–Rényi and
//! edge noise.
//!
//! Every generator draws from a ChaCha stream seeded from a `u64`, so the
//! output is a pure function of its parameters and seed. Batch callers derive
//! per-sample seeds with [`derive_seed`].

use std::collections::{BTreeSet, HashSet};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};
use crate::graph::Graph;

/// SplitMix64 finalizer.
fn mix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Derives a child seed from a base seed and a stream index.
pub fn derive_seed(base: u64, index: u64) -> u64 {
    mix64(mix64(base) ^ index.wrapping_mul(0xD1B5_4A32_D192_ED03))
}

pub(crate) fn rng_from(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Model {
    Regular,
    WattsStrogatz,
    ErdosRenyi,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GeneratorSpec {
    pub model: Model,
    pub n: usize,
    pub mean_degree: usize,
    /// Rewiring probability; only read for Watts–Strogatz.
    #[serde(default)]
    pub rewiring_p: f64,
    pub seed: u64,
}

impl GeneratorSpec {
    pub fn validate(&self) -> Result<()> {
        check_lattice_params(self.n, self.mean_degree)?;
        if !(0.0..=1.0).contains(&self.rewiring_p) {
            return Err(invalid("rewiring_p", format!("{} not in [0, 1]", self.rewiring_p)));
        }
        Ok(())
    }

    pub fn generate(&self) -> Result<Graph> {
        self.validate()?;
        match self.model {
            Model::Regular => ring_lattice(self.n, self.mean_degree),
            Model::WattsStrogatz => watts_strogatz(self),
            Model::ErdosRenyi => erdos_renyi(
                self.n,
                self.mean_degree as f64 / (self.n - 1) as f64,
                self.seed,
            ),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct NoiseSpec {
    pub rate: f64,
    pub seed: u64,
}

/// Counters reported by [`apply_noise`].
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct NoiseStats {
    pub operations: usize,
    pub removed: usize,
    pub added: usize,
    pub skipped: usize,
}

fn check_lattice_params(n: usize, k: usize) -> Result<()> {
    if k == 0 || !k.is_multiple_of(2) {
        return Err(invalid("mean_degree", format!("{k} must be even and positive")));
    }
    if k >= n {
        return Err(invalid("mean_degree", format!("{k} must be below n = {n}")));
    }
    Ok(())
}

fn lattice_sets(n: usize, k: usize) -> Vec<BTreeSet<usize>> {
    let mut adj = vec![BTreeSet::new(); n];
    for i in 0..n {
        for d in 1..=k / 2 {
            let j = (i + d) % n;
            adj[i].insert(j);
            adj[j].insert(i);
        }
    }
    adj
}

fn from_sets(adj: Vec<BTreeSet<usize>>) -> Graph {
    Graph::from_sorted_adjacency(adj.into_iter().map(|s| s.into_iter().collect()).collect())
}

/// Ring of `n` nodes, each joined to its `k/2` nearest neighbors on either side.
pub fn ring_lattice(n: usize, k: usize) -> Result<Graph> {
    check_lattice_params(n, k)?;
    Ok(from_sets(lattice_sets(n, k)))
}

/// Watts–Strogatz small-world graph.
///
/// Lattice edges `(i, i+d)` are visited ring by ring (`d = 1..=k/2`, then
/// `i = 0..n`); with probability `p` the far endpoint moves to a uniformly
/// drawn node, redrawn until it is neither `i` nor already adjacent to `i`.
pub fn watts_strogatz(spec: &GeneratorSpec) -> Result<Graph> {
    spec.validate()?;
    let (n, k, p) = (spec.n, spec.mean_degree, spec.rewiring_p);
    let mut adj = lattice_sets(n, k);
    if p == 0.0 {
        return Ok(from_sets(adj));
    }
    let mut rng = rng_from(spec.seed);
    for d in 1..=k / 2 {
        for i in 0..n {
            let j = (i + d) % n;
            if !rng.random_bool(p) {
                continue;
            }
            // on tiny rings the same pair can be listed twice
            if !adj[i].contains(&j) || adj[i].len() >= n - 1 {
                continue;
            }
            let target = loop {
                let m = rng.random_range(0..n);
                if m != i && !adj[i].contains(&m) {
                    break m;
                }
            };
            adj[i].remove(&j);
            adj[j].remove(&i);
            adj[i].insert(target);
            adj[target].insert(i);
        }
    }
    Ok(from_sets(adj))
}

/// G(n, p): every unordered pair is an edge independently with probability `p_conn`.
///
/// Uses geometric skipping over the pair sequence, which samples the same
/// distribution as one coin per pair in time proportional to `n + |E|`.
pub fn erdos_renyi(n: usize, p_conn: f64, seed: u64) -> Result<Graph> {
    if !(0.0..=1.0).contains(&p_conn) {
        return Err(invalid("p_conn", format!("{p_conn} not in [0, 1]")));
    }
    if n == 0 {
        return Err(Error::EmptyInput("graph must have at least one node"));
    }
    let mut adj: Vec<Vec<usize>> = vec![Vec::new(); n];
    if p_conn >= 1.0 {
        for u in 0..n {
            adj[u] = (0..n).filter(|&v| v != u).collect();
        }
        return Ok(Graph::from_sorted_adjacency(adj));
    }
    if p_conn > 0.0 {
        let mut rng = rng_from(seed);
        let log_q = (1.0 - p_conn).ln();
        // pairs (v, w) with w < v, enumerated row by row
        let mut v: usize = 1;
        let mut w: i64 = -1;
        while v < n {
            let r: f64 = 1.0 - rng.random::<f64>();
            w += 1 + (r.ln() / log_q).floor() as i64;
            while v < n && w >= v as i64 {
                w -= v as i64;
                v += 1;
            }
            if v < n {
                let w = w as usize;
                adj[v].push(w);
                adj[w].push(v);
            }
        }
        for list in &mut adj {
            list.sort_unstable();
        }
    }
    Ok(Graph::from_sorted_adjacency(adj))
}

/// Erdős–Rényi graph with the same node count and expected mean degree as `g`.
pub fn equivalent_random(g: &Graph, seed: u64) -> Result<Graph> {
    let n = g.node_count();
    let p = if n > 1 {
        (g.mean_degree() / (n - 1) as f64).min(1.0)
    } else {
        0.0
    };
    erdos_renyi(n, p, seed)
}

/// Even lattice degree matching `mean_degree`: rounded half away from zero,
/// bumped up when odd, then clamped to `[2, largest even below n]`.
pub fn lattice_degree_for(mean_degree: f64, n: usize) -> Result<usize> {
    if mean_degree.is_nan() || mean_degree < 1.0 {
        return Err(invalid("mean_degree", format!("{mean_degree} below 1")));
    }
    if n < 3 {
        return Err(invalid("n", format!("{n} nodes cannot host a ring lattice")));
    }
    let mut k = mean_degree.round() as usize;
    if k % 2 == 1 {
        k += 1;
    }
    let max_even = if (n - 1).is_multiple_of(2) { n - 1 } else { n - 2 };
    Ok(k.clamp(2, max_even))
}

/// Ring lattice with the same node count as `g` and the nearest even degree.
pub fn equivalent_lattice(g: &Graph) -> Result<Graph> {
    let n = g.node_count();
    ring_lattice(n, lattice_degree_for(g.mean_degree(), n)?)
}

/// Applies `round(rate * |E|)` random edge removals or additions (fair coin per operation).
pub fn apply_noise(g: &Graph, spec: &NoiseSpec) -> Result<(Graph, NoiseStats)> {
    if !(0.0..=1.0).contains(&spec.rate) {
        return Err(invalid("rate", format!("{} not in [0, 1]", spec.rate)));
    }
    let n = g.node_count();
    let operations = (spec.rate * g.edge_count() as f64).round() as usize;
    let mut stats = NoiseStats {
        operations,
        ..Default::default()
    };
    if operations == 0 {
        return Ok((g.clone(), stats));
    }
    let max_edges = n * (n - 1) / 2;
    let mut edges: Vec<(usize, usize)> = g.edges().collect();
    let mut present: HashSet<(usize, usize)> = edges.iter().copied().collect();
    let mut rng = rng_from(spec.seed);
    for _ in 0..operations {
        if rng.random_bool(0.5) {
            if edges.is_empty() {
                stats.skipped += 1;
                continue;
            }
            let idx = rng.random_range(0..edges.len());
            let e = edges.swap_remove(idx);
            present.remove(&e);
            stats.removed += 1;
        } else {
            if edges.len() >= max_edges {
                stats.skipped += 1;
                continue;
            }
            let e = loop {
                let u = rng.random_range(0..n);
                let v = rng.random_range(0..n);
                if u == v {
                    continue;
                }
                let e = (u.min(v), u.max(v));
                if !present.contains(&e) {
                    break e;
                }
            };
            present.insert(e);
            edges.push(e);
            stats.added += 1;
        }
    }
    Ok((Graph::from_edges(n, edges)?, stats))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ws(n: usize, k: usize, p: f64, seed: u64) -> Graph {
        watts_strogatz(&GeneratorSpec {
            model: Model::WattsStrogatz,
            n,
            mean_degree: k,
            rewiring_p: p,
            seed,
        })
        .unwrap()
    }

    #[test]
    fn ring_lattice_examples() {
        let c6 = ring_lattice(6, 2).unwrap();
        let expected = Graph::from_edges(6, (0..6).map(|i| (i, (i + 1) % 6))).unwrap();
        assert_eq!(c6, expected);
        let g = ring_lattice(500, 10).unwrap();
        assert!(g.degrees().all(|k| k == 10));
        assert_eq!(g.edge_count(), 2500);
        assert_eq!(ring_lattice(20, 4).unwrap().global_clustering(), 0.5);
        assert!(ring_lattice(10, 3).is_err());
        assert!(ring_lattice(10, 10).is_err());
    }

    #[test]
    fn watts_strogatz_examples() {
        assert_eq!(ws(100, 6, 0.0, 3), ring_lattice(100, 6).unwrap());
        let mean_c: f64 = (0..20).map(|s| ws(500, 10, 1.0, s).global_clustering()).sum::<f64>() / 20.0;
        assert!(mean_c < 0.05, "{mean_c}");

        let mut c = 0.0;
        let mut l = 0.0;
        for s in 0..20 {
            let g = ws(500, 10, 0.05, s);
            c += g.global_clustering();
            l += g.average_shortest_path().mean;
        }
        let (c, l) = (c / 20.0, l / 20.0);
        assert!((0.4..=0.6).contains(&c), "{c}");
        // networkx.watts_strogatz_graph(500, 10, 0.05), seeds 0..10: L = 4.579, C = 0.574
        assert!((l - 4.579).abs() / 4.579 < 0.05, "{l}");
    }

    #[test]
    fn watts_strogatz_is_simple_and_keeps_edge_count() {
        for seed in 0..10 {
            let g = ws(60, 8, 0.3, seed);
            assert_eq!(g.edge_count(), 240);
            for (u, v) in g.edges() {
                assert!(g.has_edge(v, u));
            }
        }
    }

    #[test]
    fn erdos_renyi_examples() {
        assert_eq!(erdos_renyi(30, 0.0, 1).unwrap().edge_count(), 0);
        assert_eq!(erdos_renyi(30, 1.0, 1).unwrap().edge_count(), 435);
        let mean_k: f64 = (0..20)
            .map(|s| erdos_renyi(500, 10.0 / 499.0, s).unwrap().mean_degree())
            .sum::<f64>()
            / 20.0;
        assert!((mean_k - 10.0).abs() <= 0.5, "{mean_k}");
        assert!(erdos_renyi(5, 1.5, 0).is_err());
    }

    #[test]
    fn erdos_renyi_pair_frequencies_are_uniform() {
        // every pair should appear with frequency close to p
        let n = 8;
        let p = 0.3;
        let trials = 4000;
        let mut hits = vec![vec![0u32; n]; n];
        for s in 0..trials {
            for (u, v) in erdos_renyi(n, p, s).unwrap().edges() {
                hits[u][v] += 1;
            }
        }
        for u in 0..n {
            for v in u + 1..n {
                let f = f64::from(hits[u][v]) / trials as f64;
                assert!((f - p).abs() < 0.04, "pair ({u},{v}) freq {f}");
            }
        }
    }

    #[test]
    fn equivalent_models() {
        let lattice = ring_lattice(500, 10).unwrap();
        let mean_e: f64 = (0..20)
            .map(|s| equivalent_random(&lattice, s).unwrap().edge_count() as f64)
            .sum::<f64>()
            / 20.0;
        assert!((mean_e - 2500.0).abs() / 2500.0 < 0.05);
        assert_eq!(equivalent_random(&Graph::edgeless(10).unwrap(), 1).unwrap().edge_count(), 0);

        assert_eq!(equivalent_lattice(&ws(500, 10, 0.2, 9)).unwrap(), lattice);
        assert_eq!(lattice_degree_for(9.7, 500).unwrap(), 10);
        assert_eq!(lattice_degree_for(9.0, 500).unwrap(), 10);
        assert_eq!(lattice_degree_for(8.4, 500).unwrap(), 8);
        assert_eq!(lattice_degree_for(1.2, 500).unwrap(), 2);
        assert_eq!(lattice_degree_for(40.0, 10).unwrap(), 8);
        assert!(equivalent_lattice(&Graph::edgeless(10).unwrap()).is_err());
    }

    #[test]
    fn noise_examples() {
        let g = ring_lattice(500, 10).unwrap();
        let (same, stats) = apply_noise(&g, &NoiseSpec { rate: 0.0, seed: 4 }).unwrap();
        assert_eq!(same, g);
        assert_eq!(stats.operations, 0);

        let (_, stats) = apply_noise(&g, &NoiseSpec { rate: 0.1, seed: 4 }).unwrap();
        assert_eq!(stats.operations, 250);
        assert_eq!(stats.added + stats.removed + stats.skipped, 250);

        for seed in 0..20 {
            let (noisy, _) = apply_noise(&g, &NoiseSpec { rate: 0.3, seed }).unwrap();
            let degs: Vec<f64> = noisy.degrees().map(|k| k as f64).collect();
            let mean = degs.iter().sum::<f64>() / degs.len() as f64;
            let var = degs.iter().map(|d| (d - mean).powi(2)).sum::<f64>();
            assert!(var > 0.0);
        }
    }

    #[test]
    fn noise_skips_on_saturated_graphs() {
        let k4 = erdos_renyi(4, 1.0, 0).unwrap();
        let (_, stats) = apply_noise(&k4, &NoiseSpec { rate: 1.0, seed: 11 }).unwrap();
        assert_eq!(stats.operations, 6);
        assert_eq!(stats.removed + stats.added + stats.skipped, 6);
    }

    #[test]
    fn derived_seeds_differ() {
        let a: HashSet<u64> = (0..1000).map(|i| derive_seed(7, i)).collect();
        assert_eq!(a.len(), 1000);
        assert_ne!(derive_seed(7, 0), derive_seed(8, 0));
    }
}
