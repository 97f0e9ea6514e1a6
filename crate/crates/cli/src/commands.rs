use std::io::Write as _;
use std::path::Path;

use anyhow::{bail, ensure, Context, Result};
use log::info;
use rayon::prelude::*;
use serde::Serialize;
use tourist_core::classifier::{loocv_with, pca_project, standardize, EvaluationReport, LdaConfig};
use tourist_core::dataset::{joint_histograms, DatasetManifest};
use tourist_core::ingest::{graph_summary, load_edge_list, to_canonical_edge_list};
use tourist_core::metrics::{log_space, metrics_report, structural_features, sweep_row};
use tourist_core::runtime::{run_bench, BenchConfig};
use tourist_core::signatures::{psi, psi_with_tail};
use tourist_core::{derive_seed, Graph, NetworkClass, StructuralFeatures, TouristWalker, WalkerConfig};

use crate::files::{csv_bytes, discover, read_features, write_atomic, LabelRow, LABELS_FILE};
use crate::{BenchArgs, ClassifyArgs, GenerateArgs, Method, MetricArgs, StructuralArgs, SummaryArgs, WalkArgs};

fn emit(out: Option<&Path>, bytes: &[u8]) -> Result<()> {
    match out {
        Some(p) => write_atomic(p, bytes),
        None => {
            std::io::stdout().write_all(bytes)?;
            Ok(())
        }
    }
}

pub fn generate(a: &GenerateArgs) -> Result<()> {
    let mut manifest = match &a.manifest {
        Some(p) => {
            let text = std::fs::read_to_string(p).with_context(|| format!("reading {}", p.display()))?;
            serde_json::from_str::<DatasetManifest>(&text).with_context(|| format!("parsing {}", p.display()))?
        }
        None if a.paper_scale => DatasetManifest::paper_scale(0),
        None => DatasetManifest::desk(0),
    };
    if let Some(seed) = a.seed {
        manifest.base_seed = seed;
    }
    if a.noise.is_some() {
        manifest = manifest.with_noise(a.noise);
    }
    if let Some(count) = a.count {
        manifest = manifest.with_counts(count);
    }
    let specs = manifest.sample_specs()?;
    info!("generating {} graphs into {}", specs.len(), a.out_dir.display());

    let rows: Vec<LabelRow> = specs
        .par_iter()
        .map(|s| {
            let g = s.build()?;
            let file = format!("graphs/{}.txt", s.sample_id);
            write_atomic(&a.out_dir.join(&file), to_canonical_edge_list(&g))?;
            Ok(LabelRow {
                sample_id: s.sample_id.clone(),
                label: s.label.to_string(),
                file,
            })
        })
        .collect::<Result<_>>()?;

    let labels = csv_bytes(&["sample_id", "label", "file"], |w| {
        for r in &rows {
            w.write_record([&r.sample_id, &r.label, &r.file])?;
        }
        Ok(())
    })?;
    write_atomic(&a.out_dir.join(LABELS_FILE), labels)?;
    manifest.files = rows.into_iter().map(|r| r.file).collect();
    write_atomic(&a.out_dir.join("manifest.json"), serde_json::to_vec_pretty(&manifest)?)?;
    Ok(())
}

fn check_mus(mus: &[usize]) -> Result<()> {
    ensure!(!mus.is_empty(), "--mu needs at least one memory");
    ensure!(
        mus[0] > 0 && mus.windows(2).all(|w| w[0] < w[1]),
        "--mu must be strictly increasing positive memories, got {mus:?}"
    );
    Ok(())
}

pub fn walk(a: &WalkArgs) -> Result<()> {
    check_mus(&a.mu)?;
    let entries = discover(&a.input)?;
    let graphs: Vec<Graph> = entries.par_iter().map(|e| e.load()).collect::<Result<_>>()?;
    let n_layout = graphs.iter().map(Graph::node_count).min().expect("discover returns at least one graph");
    ensure!(
        n_layout >= *a.mu.last().unwrap(),
        "smallest graph has {n_layout} nodes, below memory {}",
        a.mu.last().unwrap()
    );
    info!("walking {} graphs with memories {:?}", graphs.len(), a.mu);

    let rows: Vec<(Vec<String>, Vec<f64>)> = entries
        .par_iter()
        .zip(&graphs)
        .map(|(e, g)| {
            let jhs = joint_histograms(g, &a.mu)?;
            for (jh, &mu) in jhs.iter().zip(&a.mu) {
                let hist = csv_bytes(&["t", "a", "mass"], |w| {
                    for ((t, at), m) in jh.cells() {
                        w.write_record([t.to_string(), at.to_string(), format!("{m:?}")])?;
                    }
                    Ok(())
                })?;
                write_atomic(&a.out_dir.join(format!("histograms/{}_mu{mu}.csv", e.sample_id)), hist)?;
                if a.trace {
                    let outcomes = TouristWalker::new(g, WalkerConfig::new(mu))?.walk_all();
                    let trace = csv_bytes(&["start", "transient", "attractor", "stop_reason"], |w| {
                        for (s, o) in outcomes.iter().enumerate() {
                            let reason = serde_json::to_value(o.stop_reason)?;
                            w.write_record([
                                s.to_string(),
                                o.transient.to_string(),
                                o.attractor.to_string(),
                                reason.as_str().unwrap_or_default().to_owned(),
                            ])?;
                        }
                        Ok(())
                    })?;
                    write_atomic(&a.out_dir.join(format!("traces/{}_mu{mu}.csv", e.sample_id)), trace)?;
                }
            }
            let sig = if g.node_count() == n_layout {
                psi(&jhs, &a.mu, n_layout)?
            } else {
                psi_with_tail(&jhs, &a.mu, n_layout)?
            };
            Ok((sig.column_names(), sig.values))
        })
        .collect::<Result<_>>()?;

    let columns = &rows[0].0;
    let mut header = vec!["sample_id", "label"];
    header.extend(columns.iter().map(String::as_str));
    let out = csv_bytes(&header, |w| {
        for (e, (_, values)) in entries.iter().zip(&rows) {
            let mut rec = vec![e.sample_id.clone(), e.label_str().to_owned()];
            rec.extend(values.iter().map(|v| format!("{v:?}")));
            w.write_record(&rec)?;
        }
        Ok(())
    })?;
    write_atomic(&a.out_dir.join("signatures.csv"), out)
}

pub fn structural(a: &StructuralArgs) -> Result<()> {
    let entries = discover(&a.input)?;
    let features: Vec<StructuralFeatures> = entries
        .par_iter()
        .map(|e| Ok(structural_features(&e.load()?)))
        .collect::<Result<_>>()?;
    let mut header = vec!["sample_id", "label"];
    header.extend(StructuralFeatures::NAMES);
    let out = csv_bytes(&header, |w| {
        for (e, f) in entries.iter().zip(&features) {
            let mut rec = vec![e.sample_id.clone(), e.label_str().to_owned()];
            rec.extend(f.values().iter().map(|v| format!("{v:?}")));
            w.write_record(&rec)?;
        }
        Ok(())
    })?;
    write_atomic(&a.out_dir.join("structural.csv"), out)
}

#[derive(Serialize)]
struct ClassifyReport {
    method: &'static str,
    feature_count: usize,
    lambda: f64,
    /// z-scored before fitting (structural features only).
    standardized: bool,
    #[serde(flatten)]
    evaluation: EvaluationReport,
    pca_explained: Vec<f64>,
}

pub fn classify(a: &ClassifyArgs) -> Result<()> {
    let (names, mut samples) = read_features(&a.features)?;
    ensure!(samples.len() >= 3, "need at least 3 samples, got {}", samples.len());
    let mut classes: Vec<NetworkClass> = samples.iter().map(|s| s.label).collect();
    classes.sort_unstable();
    classes.dedup();
    if classes.len() < 2 {
        bail!("all samples belong to one class ({}); need at least two", classes[0]);
    }
    let standardized = a.method == Method::Structural;
    if standardized {
        samples = standardize(&samples)?;
    }
    let cfg = LdaConfig {
        lambda: a.lambda,
        max_lambda: LdaConfig::default().max_lambda.max(a.lambda),
    };
    let evaluation = loocv_with(&samples, cfg)?;
    info!(
        "accuracy {:.1}% +- {:.1} over {} samples",
        evaluation.accuracy_mean, evaluation.accuracy_std, evaluation.n_samples
    );
    let pca = pca_project(&samples, 2)?;

    let confusion = csv_bytes(&["true_label", "regular", "random", "small_world"], |w| {
        for class in NetworkClass::ALL {
            let mut rec = vec![class.to_string()];
            rec.extend(evaluation.confusion[class.index()].iter().map(usize::to_string));
            w.write_record(&rec)?;
        }
        Ok(())
    })?;
    let projection = csv_bytes(&["sample_id", "label", "x", "y"], |w| {
        for (s, c) in samples.iter().zip(&pca.coords) {
            let y = c.get(1).copied().unwrap_or(0.0);
            w.write_record([s.sample_id.clone(), s.label.to_string(), format!("{:?}", c[0]), format!("{y:?}")])?;
        }
        Ok(())
    })?;
    let report = ClassifyReport {
        method: match a.method {
            Method::Dtw => "dtw",
            Method::Structural => "structural",
        },
        feature_count: names.len(),
        lambda: a.lambda,
        standardized,
        evaluation,
        pca_explained: pca.explained,
    };
    write_atomic(&a.out_dir.join("report.json"), serde_json::to_vec_pretty(&report)?)?;
    write_atomic(&a.out_dir.join("confusion.csv"), confusion)?;
    write_atomic(&a.out_dir.join("pca.csv"), projection)
}

pub fn metric(a: &MetricArgs) -> Result<()> {
    check_mus(&a.mu)?;
    if !a.sweep {
        let path = a.graph.as_ref().expect("clap requires --graph without --sweep");
        ensure!(a.mu.len() == 1, "a single-graph report takes one memory, got {:?}", a.mu);
        let (_, g) = load_edge_list(path).with_context(|| format!("reading {}", path.display()))?;
        let report = metrics_report(&g, WalkerConfig::new(a.mu[0]), a.realizations, a.seed)?;
        let mut bytes = serde_json::to_vec_pretty(&report)?;
        bytes.push(b'\n');
        return emit(a.out.as_deref(), &bytes);
    }

    let ps = log_space(a.p_min, a.p_max, a.points);
    let jobs: Vec<(usize, usize)> = (0..ps.len()).flat_map(|pi| (0..a.seeds).map(move |s| (pi, s))).collect();
    info!("sweep: {} graphs, N={}, k={}", jobs.len(), a.n, a.k);
    let rows = jobs
        .par_iter()
        .map(|&(pi, s)| {
            let graph_seed = derive_seed(derive_seed(a.seed, pi as u64), s as u64);
            Ok(sweep_row(a.n, a.k, ps[pi], graph_seed, &a.mu, a.realizations, derive_seed(graph_seed, 1))?)
        })
        .collect::<Result<Vec<_>>>()?;
    let header = ["n", "k", "p", "seed", "mu", "chi", "omega", "clustering_c", "avg_path_l", "mean_walk_len"];
    let out = csv_bytes(&header, |w| {
        for r in &rows {
            for (m, &mu) in r.mus.iter().enumerate() {
                w.write_record([
                    r.n.to_string(),
                    r.k.to_string(),
                    format!("{:?}", r.p),
                    r.seed.to_string(),
                    mu.to_string(),
                    format!("{:?}", r.chi[m]),
                    format!("{:?}", r.omega),
                    format!("{:?}", r.clustering_c),
                    format!("{:?}", r.avg_path_l),
                    format!("{:?}", r.mean_walk_len[m]),
                ])?;
            }
        }
        Ok(())
    })?;
    emit(a.out.as_deref(), &out)
}

pub fn bench(a: &BenchArgs) -> Result<()> {
    check_mus(&a.mu)?;
    let rows = run_bench(&BenchConfig {
        sizes: a.sizes.clone(),
        mean_degree: a.k,
        p: a.p,
        mus: a.mu.clone(),
        repeats: a.repeats,
        realizations: a.realizations,
        seed: a.seed,
    })?;
    let out = csv_bytes(&["N", "metric", "mu", "median_ms"], |w| {
        for r in &rows {
            w.write_record([
                r.n.to_string(),
                r.metric.as_str().to_owned(),
                r.mu.map(|m| m.to_string()).unwrap_or_default(),
                format!("{:.3}", r.median_ms),
            ])?;
        }
        Ok(())
    })?;
    emit(a.out.as_deref(), &out)
}

pub fn summary(a: &SummaryArgs) -> Result<()> {
    let (doc, g) = load_edge_list(&a.graph).with_context(|| format!("reading {}", a.graph.display()))?;
    let s = graph_summary(&g, &doc);
    for w in &s.warnings {
        log::warn!("{w}");
    }
    let mut bytes = serde_json::to_vec_pretty(&s)?;
    bytes.push(b'\n');
    emit(None, &bytes)
}
