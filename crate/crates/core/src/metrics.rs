//! Small-worldness coefficients and the structural feature vector.
//!
//! `chi = C * mean_len(G) / mean_len(random)` combines the clustering of the
//! graph with how far the tourist travels on it relative to an equivalent
//! Erdős–Rényi graph. `omega = L_random / L - C / C_lattice` is the usual
//! path/clustering index and serves as the reference.
//!
//! Baseline realization `r` is always `equivalent_random(g, derive_seed(seed, r))`,
//! so chi and omega computed with the same seed share their random graphs.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};
use crate::generators::{derive_seed, equivalent_lattice, equivalent_random, watts_strogatz, GeneratorSpec, Model};
use crate::graph::Graph;
use crate::signatures::mean_trajectory_length;
use crate::walker::{TouristWalker, WalkerConfig};

pub const DEFAULT_REALIZATIONS: usize = 10;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ChiReport {
    pub clustering_c: f64,
    pub mean_walk_len: f64,
    pub baseline_walk_len: f64,
    pub chi: f64,
    pub mu: usize,
    pub baseline_realizations: usize,
    pub seed: u64,
    /// Every random baseline left the walker frozen; `chi` is reported as 0.
    pub degenerate: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OmegaReport {
    pub clustering_c: f64,
    pub avg_path_l: f64,
    pub baseline_l_random: f64,
    pub baseline_c_lattice: f64,
    pub omega: f64,
    pub baseline_realizations: usize,
    pub seed: u64,
}

/// Everything `chi` and `omega` compute for one graph.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MetricsReport {
    pub clustering_c: f64,
    pub avg_path_l: f64,
    pub assortativity: f64,
    pub mean_walk_len: f64,
    pub baseline_walk_len: f64,
    pub baseline_l_random: f64,
    pub baseline_c_lattice: f64,
    pub chi: f64,
    pub omega: f64,
    pub mu: usize,
    pub baseline_realizations: usize,
    pub seed: u64,
    pub chi_degenerate: bool,
}

fn check_realizations(realizations: usize) -> Result<()> {
    if realizations == 0 {
        return Err(invalid("realizations", "must be at least 1"));
    }
    Ok(())
}

fn baselines(g: &Graph, realizations: usize, seed: u64) -> Result<Vec<Graph>> {
    (0..realizations as u64)
        .into_par_iter()
        .map(|r| equivalent_random(g, derive_seed(seed, r)))
        .collect()
}

fn mean_walk_len(g: &Graph, cfg: WalkerConfig) -> Result<f64> {
    mean_trajectory_length(&TouristWalker::new(g, cfg)?.walk_all())
}

fn mean_of(values: &[f64]) -> f64 {
    values.iter().sum::<f64>() / values.len() as f64
}

fn chi_value(c: f64, walk_len: f64, baseline: f64) -> (f64, bool) {
    if baseline > 0.0 {
        (c * walk_len / baseline, false)
    } else {
        (0.0, true)
    }
}

fn chi_from(g: &Graph, cfg: WalkerConfig, randoms: &[Graph], seed: u64) -> Result<ChiReport> {
    let clustering_c = g.global_clustering();
    let mean_walk_len = mean_walk_len(g, cfg)?;
    let lens = randoms
        .par_iter()
        .map(|r| self::mean_walk_len(r, cfg))
        .collect::<Result<Vec<_>>>()?;
    let baseline_walk_len = mean_of(&lens);
    let (chi, degenerate) = chi_value(clustering_c, mean_walk_len, baseline_walk_len);
    Ok(ChiReport {
        clustering_c,
        mean_walk_len,
        baseline_walk_len,
        chi,
        mu: cfg.memory,
        baseline_realizations: randoms.len(),
        seed,
        degenerate,
    })
}

/// Tourist small-worldness coefficient of `g`.
pub fn chi(g: &Graph, cfg: WalkerConfig, realizations: usize, seed: u64) -> Result<ChiReport> {
    cfg.validate()?;
    check_realizations(realizations)?;
    chi_from(g, cfg, &baselines(g, realizations, seed)?, seed)
}

fn omega_from(g: &Graph, randoms: &[Graph], seed: u64) -> Result<OmegaReport> {
    let path = g.average_shortest_path();
    if path.degenerate || path.mean == 0.0 {
        return Err(Error::Degenerate("average shortest path is 0".into()));
    }
    let baseline_c_lattice = equivalent_lattice(g)?.global_clustering();
    if baseline_c_lattice == 0.0 {
        return Err(Error::Degenerate("equivalent lattice has zero clustering".into()));
    }
    let ls: Vec<f64> = randoms.par_iter().map(|r| r.average_shortest_path().mean).collect();
    let baseline_l_random = mean_of(&ls);
    let clustering_c = g.global_clustering();
    Ok(OmegaReport {
        clustering_c,
        avg_path_l: path.mean,
        baseline_l_random,
        baseline_c_lattice,
        omega: baseline_l_random / path.mean - clustering_c / baseline_c_lattice,
        baseline_realizations: randoms.len(),
        seed,
    })
}

/// Small-world index `L_random / L - C / C_lattice`.
pub fn omega(g: &Graph, realizations: usize, seed: u64) -> Result<OmegaReport> {
    check_realizations(realizations)?;
    omega_from(g, &baselines(g, realizations, seed)?, seed)
}

/// Chi and omega together over one shared set of random baselines.
pub fn metrics_report(g: &Graph, cfg: WalkerConfig, realizations: usize, seed: u64) -> Result<MetricsReport> {
    cfg.validate()?;
    check_realizations(realizations)?;
    let randoms = baselines(g, realizations, seed)?;
    let c = chi_from(g, cfg, &randoms, seed)?;
    let w = omega_from(g, &randoms, seed)?;
    Ok(MetricsReport {
        clustering_c: c.clustering_c,
        avg_path_l: w.avg_path_l,
        assortativity: g.assortativity().value,
        mean_walk_len: c.mean_walk_len,
        baseline_walk_len: c.baseline_walk_len,
        baseline_l_random: w.baseline_l_random,
        baseline_c_lattice: w.baseline_c_lattice,
        chi: c.chi,
        omega: w.omega,
        mu: c.mu,
        baseline_realizations: realizations,
        seed,
        chi_degenerate: c.degenerate,
    })
}

/// The eight-entry structural vector: mean and standard deviation of degree,
/// local clustering and per-node mean distance, then assortativity and its
/// degeneracy indicator (1 when undefined).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct StructuralFeatures(pub [f64; 8]);

impl StructuralFeatures {
    pub const NAMES: [&'static str; 8] = [
        "degree_mean",
        "degree_std",
        "clustering_mean",
        "clustering_std",
        "path_mean",
        "path_std",
        "assortativity",
        "assortativity_degenerate",
    ];

    pub fn values(&self) -> &[f64; 8] {
        &self.0
    }
}

fn mean_std(values: impl Iterator<Item = f64>) -> (f64, f64) {
    let v: Vec<f64> = values.collect();
    if v.is_empty() {
        return (0.0, 0.0);
    }
    let mean = mean_of(&v);
    let var = v.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / v.len() as f64;
    (mean, var.sqrt())
}

pub fn structural_features(g: &Graph) -> StructuralFeatures {
    let (dm, ds) = mean_std(g.degrees().map(|k| k as f64));
    let (cm, cs) = mean_std(g.local_clusterings().iter().copied());
    let (pm, ps) = mean_std(g.node_mean_distances().into_iter());
    let a = g.assortativity();
    StructuralFeatures([dm, ds, cm, cs, pm, ps, a.value, if a.degenerate { 1.0 } else { 0.0 }])
}

/// `count` log-spaced values from `lo` to `hi` inclusive.
pub fn log_space(lo: f64, hi: f64, count: usize) -> Vec<f64> {
    match count {
        0 => Vec::new(),
        1 => vec![lo],
        _ => {
            let (a, b) = (lo.log10(), hi.log10());
            (0..count)
                .map(|i| 10f64.powf(a + (b - a) * i as f64 / (count - 1) as f64))
                .collect()
        }
    }
}

/// One Watts–Strogatz graph of a rewiring sweep, measured for several memories.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepRow {
    pub n: usize,
    pub k: usize,
    pub p: f64,
    pub seed: u64,
    pub clustering_c: f64,
    pub avg_path_l: f64,
    pub omega: f64,
    pub mus: Vec<usize>,
    pub mean_walk_len: Vec<f64>,
    pub chi: Vec<f64>,
}

/// Builds `WS(n, k, p)` with `graph_seed` and measures chi for each memory
/// and omega, all over one set of baselines drawn from `baseline_seed`.
pub fn sweep_row(
    n: usize,
    k: usize,
    p: f64,
    graph_seed: u64,
    mus: &[usize],
    realizations: usize,
    baseline_seed: u64,
) -> Result<SweepRow> {
    check_realizations(realizations)?;
    let g = watts_strogatz(&GeneratorSpec {
        model: Model::WattsStrogatz,
        n,
        mean_degree: k,
        rewiring_p: p,
        seed: graph_seed,
    })?;
    let randoms = baselines(&g, realizations, baseline_seed)?;
    let w = omega_from(&g, &randoms, baseline_seed)?;
    let mut mean_walk_len = Vec::with_capacity(mus.len());
    let mut chi = Vec::with_capacity(mus.len());
    for &mu in mus {
        let cfg = WalkerConfig::new(mu);
        cfg.validate()?;
        let c = chi_from(&g, cfg, &randoms, baseline_seed)?;
        mean_walk_len.push(c.mean_walk_len);
        chi.push(c.chi);
    }
    Ok(SweepRow {
        n,
        k,
        p,
        seed: graph_seed,
        clustering_c: w.clustering_c,
        avg_path_l: w.avg_path_l,
        omega: w.omega,
        mus: mus.to_vec(),
        mean_walk_len,
        chi,
    })
}
