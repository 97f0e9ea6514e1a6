//! Ridge-regularized linear discriminant analysis, leave-one-out evaluation
//! and a PCA projection for scatter plots.
//!
//! Feature vectors are usually much longer than the sample count, so the
//! classifier works in the row span of its training matrix. The pooled
//! covariance restricted to that span, plus the isotropic ridge, gives
//! exactly the discriminants of the full-space model: class means live in
//! the span and the ridge acts as a scalar on its complement.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use nalgebra::{Cholesky, DMatrix, DVector, SVD};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum NetworkClass {
    Regular,
    Random,
    SmallWorld,
}

impl NetworkClass {
    pub const ALL: [NetworkClass; 3] = [Self::Regular, Self::Random, Self::SmallWorld];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Self::Regular => "regular",
            Self::Random => "random",
            Self::SmallWorld => "small_world",
        }
    }
}

impl fmt::Display for NetworkClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for NetworkClass {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "regular" => Ok(Self::Regular),
            "random" => Ok(Self::Random),
            "small_world" => Ok(Self::SmallWorld),
            other => Err(invalid("label", format!("unknown class `{other}`"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LabeledSample {
    pub sample_id: String,
    pub label: NetworkClass,
    pub features: Vec<f64>,
    /// Free-form origin, e.g. a generator spec or a file path.
    #[serde(default)]
    pub provenance: Option<String>,
}

impl LabeledSample {
    pub fn new(sample_id: impl Into<String>, label: NetworkClass, features: Vec<f64>) -> Self {
        Self {
            sample_id: sample_id.into(),
            label,
            features,
            provenance: None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LdaConfig {
    /// Ridge strength relative to the mean within-class variance.
    pub lambda: f64,
    /// Largest ridge tried before giving up on a singular covariance.
    pub max_lambda: f64,
}

impl Default for LdaConfig {
    fn default() -> Self {
        Self {
            lambda: 1e-6,
            max_lambda: 1e-2,
        }
    }
}

#[derive(Debug, Clone)]
pub struct LdaModel {
    classes: Vec<NetworkClass>,
    /// Orthonormal basis (d x r) of the training span; `None` keeps the raw features.
    basis: Option<DMatrix<f64>>,
    weights: DMatrix<f64>,
    bias: Vec<f64>,
    dim: usize,
    lambda_used: f64,
}

fn to_matrix(rows: &[&[f64]]) -> DMatrix<f64> {
    let d = rows.first().map_or(0, |r| r.len());
    DMatrix::from_fn(rows.len(), d, |i, j| rows[i][j])
}

fn check_widths(samples: &[LabeledSample]) -> Result<usize> {
    let d = samples.first().ok_or(Error::EmptyInput("no samples"))?.features.len();
    if d == 0 {
        return Err(Error::EmptyInput("samples have no features"));
    }
    if let Some(bad) = samples.iter().find(|s| s.features.len() != d) {
        return Err(invalid(
            "features",
            format!("sample `{}` has {} features, expected {d}", bad.sample_id, bad.features.len()),
        ));
    }
    Ok(d)
}

/// Orthonormal basis of the row span of `x` when that is smaller than the feature space.
fn span_basis(x: &DMatrix<f64>) -> Option<DMatrix<f64>> {
    if x.ncols() <= x.nrows() {
        return None;
    }
    Some(x.transpose().qr().q())
}

impl LdaModel {
    /// Fits on samples covering at least two classes with at least two samples each.
    pub fn fit(samples: &[LabeledSample], cfg: LdaConfig) -> Result<Self> {
        let d = check_widths(samples)?;
        let mut per_class: BTreeMap<NetworkClass, usize> = BTreeMap::new();
        for s in samples {
            *per_class.entry(s.label).or_default() += 1;
        }
        if per_class.len() < 2 {
            return Err(invalid("samples", "need at least two classes"));
        }
        if let Some((c, _)) = per_class.iter().find(|(_, &n)| n < 2) {
            return Err(invalid("samples", format!("class `{c}` has fewer than two samples")));
        }
        let rows: Vec<&[f64]> = samples.iter().map(|s| s.features.as_slice()).collect();
        let labels: Vec<NetworkClass> = samples.iter().map(|s| s.label).collect();
        let x = to_matrix(&rows);
        let basis = span_basis(&x);
        let z = match &basis {
            Some(q) => &x * q,
            None => x,
        };
        let mut model = fit_reduced(&z, &labels, d, cfg)?;
        model.basis = basis;
        model.dim = d;
        Ok(model)
    }

    pub fn classes(&self) -> &[NetworkClass] {
        &self.classes
    }

    pub fn lambda_used(&self) -> f64 {
        self.lambda_used
    }

    /// Discriminant score per class, in [`classes`](Self::classes) order.
    pub fn discriminants(&self, features: &[f64]) -> Result<Vec<f64>> {
        if features.len() != self.dim {
            return Err(invalid(
                "features",
                format!("{} features, model expects {}", features.len(), self.dim),
            ));
        }
        let x = DVector::from_column_slice(features);
        let z = match &self.basis {
            Some(q) => q.tr_mul(&x),
            None => x,
        };
        Ok(self.scores(&z))
    }

    fn scores(&self, z: &DVector<f64>) -> Vec<f64> {
        let s = self.weights.tr_mul(z);
        s.iter().zip(&self.bias).map(|(a, b)| a + b).collect()
    }

    fn argmax(&self, scores: &[f64]) -> NetworkClass {
        let mut best = 0;
        for (i, &s) in scores.iter().enumerate() {
            if s > scores[best] {
                best = i;
            }
        }
        self.classes[best]
    }

    pub fn predict(&self, features: &[f64]) -> Result<NetworkClass> {
        Ok(self.argmax(&self.discriminants(features)?))
    }
}

/// Fits directly on already-reduced rows. `trace_dim` is the original feature
/// count used to scale the ridge. Classes need only one sample each here.
fn fit_reduced(z: &DMatrix<f64>, labels: &[NetworkClass], trace_dim: usize, cfg: LdaConfig) -> Result<LdaModel> {
    let (n, r) = z.shape();
    let mut classes: Vec<NetworkClass> = labels.to_vec();
    classes.sort_unstable();
    classes.dedup();
    let k = classes.len();
    if n <= k {
        return Err(invalid("samples", format!("{n} samples cannot estimate a pooled covariance for {k} classes")));
    }

    let mut means = DMatrix::<f64>::zeros(r, k);
    let mut counts = vec![0usize; k];
    let class_of: Vec<usize> = labels
        .iter()
        .map(|l| classes.binary_search(l).expect("label collected above"))
        .collect();
    for (i, &c) in class_of.iter().enumerate() {
        counts[c] += 1;
        for j in 0..r {
            means[(j, c)] += z[(i, j)];
        }
    }
    for c in 0..k {
        let inv = 1.0 / counts[c] as f64;
        means.column_mut(c).scale_mut(inv);
    }
    let mut centered = z.clone();
    for (i, &c) in class_of.iter().enumerate() {
        for j in 0..r {
            centered[(i, j)] -= means[(j, c)];
        }
    }
    let mut pooled = centered.tr_mul(&centered);
    pooled /= (n - k) as f64;
    let trace = pooled.trace();
    let scale = if trace > 0.0 { trace / trace_dim as f64 } else { 1.0 };

    let mut lambda = cfg.lambda;
    let chol = loop {
        let mut reg = pooled.clone();
        for j in 0..r {
            reg[(j, j)] += lambda * scale;
        }
        if let Some(ch) = Cholesky::new(reg) {
            break ch;
        }
        if lambda >= cfg.max_lambda {
            return Err(Error::SingularCovariance {
                lambda,
                detail: format!("{n} samples, {r} reduced dimensions, covariance trace {trace:e}"),
            });
        }
        log::warn!("covariance not positive definite at ridge {lambda:e}; increasing");
        lambda *= 10.0;
    };
    let weights = chol.solve(&means);
    let bias = (0..k)
        .map(|c| {
            let prior = counts[c] as f64 / n as f64;
            -0.5 * means.column(c).dot(&weights.column(c)) + prior.ln()
        })
        .collect();
    Ok(LdaModel {
        classes,
        basis: None,
        weights,
        bias,
        dim: r,
        lambda_used: lambda,
    })
}

pub fn lda_fit(train: &[LabeledSample]) -> Result<LdaModel> {
    LdaModel::fit(train, LdaConfig::default())
}

/// Leave-one-out accuracy with a block-wise spread estimate.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EvaluationReport {
    /// Percentage of held-out samples predicted correctly.
    pub accuracy_mean: f64,
    /// Population standard deviation (percent) of accuracy over ten contiguous
    /// blocks of held-out samples, in input order.
    pub accuracy_std: f64,
    /// `confusion[true][predicted]`, indexed by [`NetworkClass::index`].
    pub confusion: [[usize; 3]; 3],
    pub n_samples: usize,
    pub n_evaluated: usize,
    /// Folds whose training part lost the held-out sample's class.
    pub skipped_folds: usize,
    pub std_blocks: usize,
}

pub const STD_BLOCKS: usize = 10;

pub fn loocv(samples: &[LabeledSample]) -> Result<EvaluationReport> {
    loocv_with(samples, LdaConfig::default())
}

pub fn loocv_with(samples: &[LabeledSample], cfg: LdaConfig) -> Result<EvaluationReport> {
    let d = check_widths(samples)?;
    let n = samples.len();
    if n < 3 {
        return Err(invalid("samples", format!("{n} samples; leave-one-out needs at least 3")));
    }
    let labels: Vec<NetworkClass> = samples.iter().map(|s| s.label).collect();
    let mut distinct = labels.clone();
    distinct.sort_unstable();
    distinct.dedup();
    if distinct.len() < 2 {
        return Err(invalid("samples", "need at least two classes"));
    }

    // every fold's training span sits inside the full span
    let rows: Vec<&[f64]> = samples.iter().map(|s| s.features.as_slice()).collect();
    let x = to_matrix(&rows);
    let z = match span_basis(&x) {
        Some(q) => &x * q,
        None => x,
    };

    let results: Vec<Option<NetworkClass>> = (0..n)
        .into_par_iter()
        .map(|held| -> Result<Option<NetworkClass>> {
            let keep: Vec<usize> = (0..n).filter(|&i| i != held).collect();
            if !keep.iter().any(|&i| labels[i] == labels[held]) {
                return Ok(None);
            }
            let train = z.select_rows(&keep);
            let train_labels: Vec<NetworkClass> = keep.iter().map(|&i| labels[i]).collect();
            let model = fit_reduced(&train, &train_labels, d, cfg)?;
            let scores = model.scores(&z.row(held).transpose());
            Ok(Some(model.argmax(&scores)))
        })
        .collect::<Result<_>>()?;

    let mut confusion = [[0usize; 3]; 3];
    let mut correct = Vec::with_capacity(n);
    for (i, pred) in results.iter().enumerate() {
        if let Some(p) = pred {
            confusion[labels[i].index()][p.index()] += 1;
            correct.push(*p == labels[i]);
        }
    }
    let skipped_folds = n - correct.len();
    if skipped_folds > 0 {
        log::warn!("{skipped_folds} leave-one-out folds skipped: class missing from training data");
    }
    if correct.is_empty() {
        return Err(Error::Degenerate("every fold was skipped".into()));
    }
    let hits = correct.iter().filter(|&&c| c).count();
    let accuracy_mean = 100.0 * hits as f64 / correct.len() as f64;
    let (accuracy_std, std_blocks) = block_std(&correct);
    Ok(EvaluationReport {
        accuracy_mean,
        accuracy_std,
        confusion,
        n_samples: n,
        n_evaluated: correct.len(),
        skipped_folds,
        std_blocks,
    })
}

fn block_std(correct: &[bool]) -> (f64, usize) {
    let m = correct.len();
    let blocks = STD_BLOCKS.min(m);
    let accs: Vec<f64> = (0..blocks)
        .map(|b| {
            let block = &correct[b * m / blocks..(b + 1) * m / blocks];
            100.0 * block.iter().filter(|&&c| c).count() as f64 / block.len() as f64
        })
        .collect();
    let mean = accs.iter().sum::<f64>() / blocks as f64;
    let var = accs.iter().map(|a| (a - mean).powi(2)).sum::<f64>() / blocks as f64;
    (var.sqrt(), blocks)
}

/// Per-feature z-scores over the whole sample set; constant features become 0.
pub fn standardize(samples: &[LabeledSample]) -> Result<Vec<LabeledSample>> {
    let d = check_widths(samples)?;
    let n = samples.len() as f64;
    let mut mean = vec![0.0; d];
    for s in samples {
        for (m, v) in mean.iter_mut().zip(&s.features) {
            *m += v / n;
        }
    }
    let mut sd = vec![0.0; d];
    for s in samples {
        for ((acc, v), m) in sd.iter_mut().zip(&s.features).zip(&mean) {
            *acc += (v - m).powi(2) / n;
        }
    }
    Ok(samples
        .iter()
        .map(|s| {
            let features = s
                .features
                .iter()
                .zip(&mean)
                .zip(&sd)
                .map(|((v, m), var)| if *var > 0.0 { (v - m) / var.sqrt() } else { 0.0 })
                .collect();
            LabeledSample {
                features,
                ..s.clone()
            }
        })
        .collect())
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PcaProjection {
    /// One row of `dims` coordinates per sample.
    pub coords: Vec<Vec<f64>>,
    /// Fraction of total variance along each kept axis.
    pub explained: Vec<f64>,
    /// Indices of the features that had non-zero variance.
    pub kept_features: Vec<usize>,
}

/// Projects mean-centered samples onto their top `dims` principal axes.
/// Each axis is signed so that its largest-magnitude loading is positive.
pub fn pca_project(samples: &[LabeledSample], dims: usize) -> Result<PcaProjection> {
    let d = check_widths(samples)?;
    if dims == 0 {
        return Err(invalid("dims", "must be at least 1"));
    }
    let n = samples.len();
    let mean: Vec<f64> = (0..d)
        .map(|j| samples.iter().map(|s| s.features[j]).sum::<f64>() / n as f64)
        .collect();
    let kept_features: Vec<usize> = (0..d)
        .filter(|&j| samples.iter().any(|s| s.features[j] != mean[j]))
        .collect();
    if kept_features.len() < dims {
        return Err(invalid(
            "dims",
            format!("{dims} axes requested but only {} features vary", kept_features.len()),
        ));
    }
    let xc = DMatrix::from_fn(n, kept_features.len(), |i, j| {
        let f = kept_features[j];
        samples[i].features[f] - mean[f]
    });
    let svd = SVD::new(xc.clone(), false, true);
    let v_t = svd.v_t.as_ref().expect("requested V^T");
    let total: f64 = svd.singular_values.iter().map(|s| s * s).sum();
    let dims_avail = dims.min(svd.singular_values.len());
    let mut coords = vec![Vec::with_capacity(dims); n];
    let mut explained = Vec::with_capacity(dims);
    for k in 0..dims_avail {
        let mut axis: DVector<f64> = v_t.row(k).transpose();
        let lead = axis.iamax();
        if axis[lead] < 0.0 {
            axis.neg_mut();
        }
        let proj = &xc * &axis;
        for (row, v) in coords.iter_mut().zip(proj.iter()) {
            row.push(*v);
        }
        let s = svd.singular_values[k];
        explained.push(if total > 0.0 { s * s / total } else { 0.0 });
    }
    Ok(PcaProjection {
        coords,
        explained,
        kept_features,
    })
}
