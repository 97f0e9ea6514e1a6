//! Labeled synthetic datasets and the feature sets computed from them.
//!
//! A [`DatasetManifest`] fixes every graph through its base seed: sample `i`
//! of class `c` is generated from `derive_seed(derive_seed(base, c), i)` on
//! grid cell `i mod cells`, so generation order and thread count never
//! change the output.

use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::classifier::{LabeledSample, NetworkClass};
use crate::error::{invalid, Result};
use crate::generators::{apply_noise, derive_seed, rng_from, GeneratorSpec, Model, NoiseSpec};
use crate::graph::Graph;
use crate::metrics::structural_features;
use crate::signatures::{joint_histogram, psi, psi_with_tail, JointHistogram, SignatureVector};
use crate::walker::{TouristWalker, WalkerConfig};

pub const MANIFEST_FORMAT_VERSION: u32 = 1;

/// Generation grid for one class.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ClassGrid {
    pub label: NetworkClass,
    pub model: Model,
    pub sizes: Vec<usize>,
    pub mean_degrees: Vec<usize>,
    /// Uniform range for the rewiring probability (Watts–Strogatz only).
    #[serde(default)]
    pub p_range: Option<[f64; 2]>,
    /// Graphs in this class, spread round-robin over the size x degree grid.
    pub count: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DatasetManifest {
    pub format_version: u32,
    pub base_seed: u64,
    pub classes: Vec<ClassGrid>,
    /// Edge-noise rate applied to every sample.
    #[serde(default)]
    pub noise: Option<f64>,
    /// Memories used for signature features.
    #[serde(default = "default_mus")]
    pub mus: Vec<usize>,
    /// Graph files written for this manifest, filled in by the generator.
    #[serde(default)]
    pub files: Vec<String>,
}

fn default_mus() -> Vec<usize> {
    vec![1, 2, 3, 4, 5]
}

fn three_classes(sizes: Vec<usize>, mean_degrees: Vec<usize>, count: usize) -> Vec<ClassGrid> {
    let grid = |label, model, p_range| ClassGrid {
        label,
        model,
        sizes: sizes.clone(),
        mean_degrees: mean_degrees.clone(),
        p_range,
        count,
    };
    vec![
        grid(NetworkClass::Regular, Model::Regular, None),
        grid(NetworkClass::Random, Model::ErdosRenyi, None),
        grid(NetworkClass::SmallWorld, Model::WattsStrogatz, Some([0.01, 0.1])),
    ]
}

impl DatasetManifest {
    /// 3 classes x 50 graphs, N = 500, mean degree in {4, 10, 16}.
    pub fn desk(base_seed: u64) -> Self {
        Self {
            format_version: MANIFEST_FORMAT_VERSION,
            base_seed,
            classes: three_classes(vec![500], vec![4, 10, 16], 50),
            noise: None,
            mus: default_mus(),
            files: Vec::new(),
        }
    }

    /// N in {500, 1000, 1500, 2000}, mean degree 4..=16 step 2, 100 graphs per cell.
    pub fn paper_scale(base_seed: u64) -> Self {
        Self {
            format_version: MANIFEST_FORMAT_VERSION,
            base_seed,
            classes: three_classes(vec![500, 1000, 1500, 2000], vec![4, 6, 8, 10, 12, 14, 16], 2800),
            noise: None,
            mus: default_mus(),
            files: Vec::new(),
        }
    }

    pub fn with_noise(mut self, rate: Option<f64>) -> Self {
        self.noise = rate.filter(|&r| r > 0.0);
        self
    }

    pub fn with_counts(mut self, count: usize) -> Self {
        for c in &mut self.classes {
            c.count = count;
        }
        self
    }

    pub fn validate(&self) -> Result<()> {
        if self.format_version != MANIFEST_FORMAT_VERSION {
            return Err(invalid(
                "format_version",
                format!("{} is not supported (expected {MANIFEST_FORMAT_VERSION})", self.format_version),
            ));
        }
        if self.classes.is_empty() {
            return Err(invalid("classes", "at least one class is required"));
        }
        for (ci, c) in self.classes.iter().enumerate() {
            let field = |f: &str| format!("classes[{ci}].{f}");
            if c.sizes.is_empty() {
                return Err(invalid(field("sizes"), "empty"));
            }
            if c.mean_degrees.is_empty() {
                return Err(invalid(field("mean_degrees"), "empty"));
            }
            if c.count == 0 {
                return Err(invalid(field("count"), "must be positive"));
            }
            for &n in &c.sizes {
                for &k in &c.mean_degrees {
                    if k == 0 || k % 2 != 0 || k >= n {
                        return Err(invalid(
                            field("mean_degrees"),
                            format!("{k} must be even, positive and below size {n}"),
                        ));
                    }
                }
            }
            match (c.model, c.p_range) {
                (Model::WattsStrogatz, None) => {
                    return Err(invalid(field("p_range"), "required for watts_strogatz"));
                }
                (_, Some([lo, hi])) if !(0.0 <= lo && lo <= hi && hi <= 1.0) => {
                    return Err(invalid(field("p_range"), format!("[{lo}, {hi}] is not a sub-range of [0, 1]")));
                }
                _ => {}
            }
        }
        if let Some(rate) = self.noise {
            if !(0.0..=1.0).contains(&rate) {
                return Err(invalid("noise", format!("{rate} not in [0, 1]")));
            }
        }
        if self.mus.is_empty() || self.mus.contains(&0) || self.mus.windows(2).any(|w| w[0] >= w[1]) {
            return Err(invalid("mus", "must be a strictly increasing list of positive memories"));
        }
        Ok(())
    }

    /// Every sample the manifest describes, class by class.
    pub fn sample_specs(&self) -> Result<Vec<SampleSpec>> {
        self.validate()?;
        let mut out = Vec::new();
        for (ci, c) in self.classes.iter().enumerate() {
            let class_seed = derive_seed(self.base_seed, ci as u64);
            let cells: Vec<(usize, usize)> = c
                .sizes
                .iter()
                .flat_map(|&n| c.mean_degrees.iter().map(move |&k| (n, k)))
                .collect();
            for i in 0..c.count {
                let seed = derive_seed(class_seed, i as u64);
                let (n, k) = cells[i % cells.len()];
                let rewiring_p = match c.p_range {
                    Some([lo, hi]) if c.model == Model::WattsStrogatz => {
                        lo + (hi - lo) * rng_from(derive_seed(seed, 1)).random::<f64>()
                    }
                    _ => 0.0,
                };
                out.push(SampleSpec {
                    sample_id: format!("{}_{i:05}", c.label),
                    label: c.label,
                    generator: GeneratorSpec {
                        model: c.model,
                        n,
                        mean_degree: k,
                        rewiring_p,
                        seed,
                    },
                    noise: self.noise.map(|rate| NoiseSpec {
                        rate,
                        seed: derive_seed(seed, 2),
                    }),
                });
            }
        }
        Ok(out)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SampleSpec {
    pub sample_id: String,
    pub label: NetworkClass,
    pub generator: GeneratorSpec,
    pub noise: Option<NoiseSpec>,
}

impl SampleSpec {
    pub fn build(&self) -> Result<Graph> {
        let g = self.generator.generate()?;
        match &self.noise {
            Some(noise) => Ok(apply_noise(&g, noise)?.0),
            None => Ok(g),
        }
    }

    pub fn provenance(&self) -> String {
        serde_json::to_string(&self.generator).unwrap_or_default()
    }
}

/// A generated graph with its label.
#[derive(Debug, Clone)]
pub struct DatasetGraph {
    pub spec: SampleSpec,
    pub graph: Graph,
}

pub fn build_dataset(manifest: &DatasetManifest) -> Result<Vec<DatasetGraph>> {
    manifest
        .sample_specs()?
        .into_par_iter()
        .map(|spec| {
            let graph = spec.build()?;
            Ok(DatasetGraph { spec, graph })
        })
        .collect()
}

/// Joint histogram of `g` for each memory.
pub fn joint_histograms(g: &Graph, mus: &[usize]) -> Result<Vec<JointHistogram>> {
    mus.iter()
        .map(|&mu| joint_histogram(&TouristWalker::new(g, WalkerConfig::new(mu))?.walk_all()))
        .collect()
}

/// Signature of `g` over `mus`, laid out for `n_layout` nodes (its own size when `None`).
pub fn dtw_signature(g: &Graph, mus: &[usize], n_layout: Option<usize>) -> Result<SignatureVector> {
    let jhs = joint_histograms(g, mus)?;
    match n_layout {
        Some(n) if n != g.node_count() => psi_with_tail(&jhs, mus, n),
        _ => psi(&jhs, mus, g.node_count()),
    }
}

/// Signature samples for every graph, sharing the layout of the smallest graph.
pub fn dtw_samples(graphs: &[DatasetGraph], mus: &[usize]) -> Result<Vec<LabeledSample>> {
    let n_layout = graphs.iter().map(|d| d.graph.node_count()).min();
    graphs
        .par_iter()
        .map(|d| {
            let sig = dtw_signature(&d.graph, mus, n_layout)?;
            Ok(LabeledSample {
                sample_id: d.spec.sample_id.clone(),
                label: d.spec.label,
                features: sig.values,
                provenance: Some(d.spec.provenance()),
            })
        })
        .collect()
}

pub fn structural_samples(graphs: &[DatasetGraph]) -> Vec<LabeledSample> {
    graphs
        .par_iter()
        .map(|d| LabeledSample {
            sample_id: d.spec.sample_id.clone(),
            label: d.spec.label,
            features: structural_features(&d.graph).0.to_vec(),
            provenance: Some(d.spec.provenance()),
        })
        .collect()
}
