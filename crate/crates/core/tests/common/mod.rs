//! Brute-force reference implementations shared by the integration suites.
//!
//! Everything here works from a dense adjacency matrix and literal
//! simulation, without touching the library's walker, histogram or path code.

#![allow(dead_code)]

use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use tourist_core::Graph;

pub struct Dense {
    pub n: usize,
    pub adj: Vec<Vec<bool>>,
}

impl Dense {
    pub fn from_graph(g: &Graph) -> Self {
        let n = g.node_count();
        let mut adj = vec![vec![false; n]; n];
        for (u, v) in g.edges() {
            adj[u][v] = true;
            adj[v][u] = true;
        }
        Self { n, adj }
    }

    pub fn degree(&self, i: usize) -> usize {
        self.adj[i].iter().filter(|&&b| b).count()
    }

    /// Triangle count through `i`, by checking every neighbor pair.
    pub fn clustering(&self, i: usize) -> f64 {
        let nb: Vec<usize> = (0..self.n).filter(|&j| self.adj[i][j]).collect();
        let k = nb.len();
        if k < 2 {
            return 0.0;
        }
        let mut links = 0usize;
        for a in 0..k {
            for b in a + 1..k {
                if self.adj[nb[a]][nb[b]] {
                    links += 1;
                }
            }
        }
        (2 * links) as f64 / (k * (k - 1)) as f64
    }

    /// Floyd–Warshall mean over ordered pairs inside the largest component
    /// (lowest id wins ties), plus that component's size.
    pub fn mean_path(&self) -> (f64, usize) {
        let n = self.n;
        let inf = usize::MAX / 4;
        let mut d = vec![vec![inf; n]; n];
        for i in 0..n {
            d[i][i] = 0;
            for j in 0..n {
                if self.adj[i][j] {
                    d[i][j] = 1;
                }
            }
        }
        for k in 0..n {
            for i in 0..n {
                for j in 0..n {
                    if d[i][k] + d[k][j] < d[i][j] {
                        d[i][j] = d[i][k] + d[k][j];
                    }
                }
            }
        }
        let mut best: Vec<usize> = Vec::new();
        let mut done = vec![false; n];
        for i in 0..n {
            if done[i] {
                continue;
            }
            let comp: Vec<usize> = (0..n).filter(|&j| d[i][j] < inf).collect();
            for &j in &comp {
                done[j] = true;
            }
            if comp.len() > best.len() {
                best = comp;
            }
        }
        let m = best.len();
        if m < 2 {
            return (0.0, m);
        }
        let total: usize = best.iter().flat_map(|&i| best.iter().map(move |&j| (i, j))).map(|(i, j)| d[i][j]).sum();
        (total as f64 / (m * (m - 1)) as f64, m)
    }
}

/// `(transient, attractor)` of one launch, by literal simulation.
///
/// The state after `s` moves is the list of the last `mu` positions (fewer at
/// the start). The walk closes the first time a state repeats.
pub fn reference_walk(g: &Dense, start: usize, mu: usize) -> (usize, usize) {
    let frozen = (0..g.n).all(|i| (0..g.n).all(|j| !g.adj[i][j] || g.degree(i) == g.degree(j)));
    if frozen {
        return (0, 0);
    }
    let c: Vec<f64> = (0..g.n).map(|i| g.clustering(i)).collect();
    let k: Vec<usize> = (0..g.n).map(|i| g.degree(i)).collect();
    let mut path = vec![start];
    let mut states: Vec<Vec<usize>> = vec![vec![start]];
    let limit = g.n;
    loop {
        let here = *path.last().unwrap();
        let state = states.last().unwrap().clone();
        let mut choice: Option<usize> = None;
        for j in 0..g.n {
            if !g.adj[here][j] || k[j] == k[here] || state.contains(&j) {
                continue;
            }
            match choice {
                Some(b) if (c[here] - c[j]).abs() >= (c[here] - c[b]).abs() => {}
                _ => choice = Some(j),
            }
        }
        let moves = path.len() - 1;
        let Some(next) = choice else {
            return (moves, 0);
        };
        if moves == limit {
            return (limit, 0);
        }
        path.push(next);
        let from = path.len().saturating_sub(mu);
        let new_state = path[from..].to_vec();
        if let Some(first) = states.iter().position(|s| *s == new_state) {
            return (first, states.len() - first);
        }
        states.push(new_state);
    }
}

pub fn reference_outcomes(g: &Dense, mu: usize) -> Vec<(usize, usize)> {
    (0..g.n).map(|s| reference_walk(g, s, mu)).collect()
}

/// `h(l)` over all launches.
pub fn reference_lengths(outcomes: &[(usize, usize)]) -> BTreeMap<usize, f64> {
    let mut h = BTreeMap::new();
    for &(t, a) in outcomes {
        *h.entry(t + a).or_insert(0.0) += 1.0 / outcomes.len() as f64;
    }
    h
}

/// `[h(0), h(mu+1), ..., h(n)]`.
pub fn reference_phi(outcomes: &[(usize, usize)], mu: usize, n: usize) -> Vec<f64> {
    let h = reference_lengths(outcomes);
    let get = |l: usize| h.get(&l).copied().unwrap_or(0.0);
    std::iter::once(get(0)).chain((mu + 1..=n).map(get)).collect()
}

pub fn reference_mean_length(outcomes: &[(usize, usize)]) -> f64 {
    outcomes.iter().map(|&(t, a)| (t + a) as f64).sum::<f64>() / outcomes.len() as f64
}

/// Every labeled graph on `n` nodes, as edge-subset bit masks.
pub fn all_graphs(n: usize) -> impl Iterator<Item = Graph> {
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
    (0u64..1 << pairs.len()).map(move |mask| {
        let edges = pairs.iter().enumerate().filter(|(b, _)| mask >> b & 1 == 1).map(|(_, &e)| e);
        Graph::from_edges(n, edges).unwrap()
    })
}

pub fn is_connected(g: &Graph) -> bool {
    g.components().len() == 1
}

/// Uniform random connected graph on `n` nodes by rejection over edge masks.
pub fn random_connected(n: usize, rng: &mut ChaCha8Rng) -> Graph {
    loop {
        let mut edges = Vec::new();
        for u in 0..n {
            for v in u + 1..n {
                if rng.random_bool(0.5) {
                    edges.push((u, v));
                }
            }
        }
        let g = Graph::from_edges(n, edges).unwrap();
        if is_connected(&g) {
            return g;
        }
    }
}

/// Random simple graph with roughly `density` of all pairs present.
pub fn random_graph(n: usize, density: f64, seed: u64) -> Graph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.random_bool(density) {
                edges.push((u, v));
            }
        }
    }
    Graph::from_edges(n, edges).unwrap()
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn close(a: f64, b: f64, tol: f64) -> bool {
    (a - b).abs() <= tol
}

/// Compares the library walker, histograms, signatures and mean length with
/// the reference on one graph. Returns a description of the first mismatch.
pub fn compare_with_reference(g: &Graph, mus: &[usize]) -> Result<(), String> {
    use tourist_core::{joint_histogram, mean_trajectory_length, phi, psi, walk_all, WalkerConfig};

    let dense = Dense::from_graph(g);
    let n = g.node_count();
    let mut hists = Vec::new();
    let mut ref_psi = Vec::new();
    for &mu in mus {
        let got = walk_all(g, WalkerConfig::new(mu)).map_err(|e| e.to_string())?;
        let want = reference_outcomes(&dense, mu);
        for (s, (o, w)) in got.iter().zip(&want).enumerate() {
            if (o.transient, o.attractor) != *w {
                return Err(format!(
                    "mu={mu} start={s}: got ({}, {}), reference {w:?}; edges {:?}",
                    o.transient,
                    o.attractor,
                    g.edges().collect::<Vec<_>>()
                ));
            }
        }
        let jh = joint_histogram(&got).map_err(|e| e.to_string())?;
        let h = jh.length_histogram();
        for (l, m) in reference_lengths(&want) {
            if !close(h.get(l), m, 1e-12) {
                return Err(format!("mu={mu}: h({l}) {} vs {m}", h.get(l)));
            }
        }
        if mu <= n {
            let v = phi(&jh, mu, n).map_err(|e| e.to_string())?;
            let r = reference_phi(&want, mu, n);
            if v.values.len() != r.len() || v.values.iter().zip(&r).any(|(a, b)| !close(*a, *b, 1e-12)) {
                return Err(format!("mu={mu}: phi {:?} vs {r:?}", v.values));
            }
            ref_psi.extend(r);
        }
        let ml = mean_trajectory_length(&got).map_err(|e| e.to_string())?;
        if !close(ml, reference_mean_length(&want), 1e-12) {
            return Err(format!("mu={mu}: mean length {ml} vs {}", reference_mean_length(&want)));
        }
        hists.push((mu, jh));
    }
    let (mus_ok, jhs): (Vec<usize>, Vec<_>) = hists.into_iter().filter(|(mu, _)| *mu <= n).unzip();
    if !mus_ok.is_empty() {
        let v = psi(&jhs, &mus_ok, n).map_err(|e| e.to_string())?;
        if v.values.len() != ref_psi.len() || v.values.iter().zip(&ref_psi).any(|(a, b)| !close(*a, *b, 1e-12)) {
            return Err("psi mismatch".to_owned());
        }
    }
    Ok(())
}

/// Walk invariants on one graph and memory: histogram mass sums to one,
/// signature plus residual sums to one, attractors span at least `mu + 1`
/// steps, and the parallel walk equals the serial one.
pub fn check_walk_invariants(g: &Graph, mu: usize) -> Result<(), String> {
    use tourist_core::{joint_histogram, phi, StopReason, TouristWalker, WalkerConfig};

    let w = TouristWalker::new(g, WalkerConfig::new(mu)).map_err(|e| e.to_string())?;
    let par = w.walk_all();
    let ser = w.walk_all_serial();
    if par != ser {
        return Err("parallel and serial walks differ".to_owned());
    }
    for o in &par {
        match o.stop_reason {
            StopReason::AttractorFound if o.attractor < mu + 1 => {
                return Err(format!("attractor {} below mu + 1 = {}", o.attractor, mu + 1));
            }
            StopReason::AttractorFound => {}
            _ if o.attractor != 0 => return Err(format!("{:?} with attractor {}", o.stop_reason, o.attractor)),
            _ => {}
        }
    }
    let jh = joint_histogram(&par).map_err(|e| e.to_string())?;
    let total: f64 = jh.cells().map(|(_, m)| m).sum();
    if !close(total, 1.0, 1e-12) {
        return Err(format!("joint mass {total}"));
    }
    let n = g.node_count();
    if mu <= n {
        let v = phi(&jh, mu, n).map_err(|e| e.to_string())?;
        let s = v.values.iter().sum::<f64>() + v.residual[0];
        if !close(s, 1.0, 1e-12) {
            return Err(format!("phi mass {s}"));
        }
    }
    Ok(())
}

/// Watts–Strogatz output keeps the lattice's `n k / 2` edges and stays simple.
pub fn check_ws_edge_count(n: usize, k: usize, p: f64, seed: u64) -> Result<(), String> {
    use tourist_core::{watts_strogatz, GeneratorSpec, Model};

    let g = watts_strogatz(&GeneratorSpec {
        model: Model::WattsStrogatz,
        n,
        mean_degree: k,
        rewiring_p: p,
        seed,
    })
    .map_err(|e| e.to_string())?;
    if g.edge_count() != n * k / 2 {
        return Err(format!("n={n} k={k} p={p}: {} edges, expected {}", g.edge_count(), n * k / 2));
    }
    check_symmetric(&g)
}

pub fn check_symmetric(g: &Graph) -> Result<(), String> {
    for i in 0..g.node_count() {
        let nb = g.neighbors(i);
        if nb.windows(2).any(|w| w[0] >= w[1]) {
            return Err(format!("neighbors of {i} not strictly ascending"));
        }
        for &j in nb {
            if j == i || !g.neighbors(j).contains(&i) {
                return Err(format!("edge {i}-{j} not mirrored"));
            }
        }
    }
    Ok(())
}

/// Parameters of the `case`-th seeded invariant case.
pub fn invariant_case(case: u64) -> (Graph, usize, (usize, usize, f64, u64)) {
    let mut r = rng(0x5eed_1a7e ^ case);
    let n = r.random_range(3..60);
    let density = r.random_range(0.02..0.6);
    let g = random_graph(n, density, r.random());
    let mu = r.random_range(1..=5);
    let ws_n = r.random_range(10..200);
    let ws_k = 2 * r.random_range(1..=((ws_n - 1) / 2).min(8));
    let ws_p = r.random_range(0.0..=1.0);
    (g, mu, (ws_n, ws_k, ws_p, r.random()))
}
