//! Dataset directories, feature CSVs and atomic output writes.

use std::fs;
use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use serde::{Deserialize, Serialize};
use tourist_core::{Graph, LabeledSample, NetworkClass};

pub const LABELS_FILE: &str = "labels.csv";

/// One row of `labels.csv`; `file` is relative to the dataset directory.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct LabelRow {
    pub sample_id: String,
    pub label: String,
    pub file: String,
}

/// A graph to process, with its label when the input is a dataset.
#[derive(Debug, Clone)]
pub struct GraphEntry {
    pub sample_id: String,
    pub label: Option<NetworkClass>,
    pub path: PathBuf,
}

impl GraphEntry {
    pub fn load(&self) -> Result<Graph> {
        let (_, g) = tourist_core::ingest::load_edge_list(&self.path)
            .with_context(|| format!("reading {}", self.path.display()))?;
        Ok(g)
    }

    pub fn label_str(&self) -> &'static str {
        self.label.map_or("", NetworkClass::as_str)
    }
}

/// Writes through a temporary sibling and renames, so readers never see a
/// half-written file.
pub fn write_atomic(path: &Path, contents: impl AsRef<[u8]>) -> Result<()> {
    if let Some(dir) = path.parent() {
        fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
    }
    let mut tmp = path.as_os_str().to_owned();
    tmp.push(".tmp");
    let tmp = PathBuf::from(tmp);
    fs::write(&tmp, contents).with_context(|| format!("writing {}", tmp.display()))?;
    fs::rename(&tmp, path).with_context(|| format!("renaming to {}", path.display()))?;
    Ok(())
}

/// A header line plus whatever rows `fill` writes, as CSV bytes.
pub fn csv_bytes<F>(header: &[&str], fill: F) -> Result<Vec<u8>>
where
    F: FnOnce(&mut csv::Writer<Vec<u8>>) -> Result<()>,
{
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(header)?;
    fill(&mut w)?;
    w.into_inner().map_err(|e| anyhow::anyhow!("flushing csv: {e}"))
}

/// A single edge-list file, or every graph listed in a dataset directory's
/// `labels.csv`.
pub fn discover(input: &Path) -> Result<Vec<GraphEntry>> {
    if input.is_dir() {
        let labels = input.join(LABELS_FILE);
        let mut r = csv::Reader::from_path(&labels).with_context(|| format!("reading {}", labels.display()))?;
        let mut out = Vec::new();
        for row in r.deserialize() {
            let row: LabelRow = row.with_context(|| format!("parsing {}", labels.display()))?;
            let label = if row.label.is_empty() {
                None
            } else {
                Some(row.label.parse()?)
            };
            out.push(GraphEntry {
                sample_id: row.sample_id,
                label,
                path: input.join(row.file),
            });
        }
        if out.is_empty() {
            bail!("{} lists no graphs", labels.display());
        }
        Ok(out)
    } else {
        let sample_id = input
            .file_stem()
            .map(|s| s.to_string_lossy().into_owned())
            .unwrap_or_else(|| "graph".to_owned());
        Ok(vec![GraphEntry {
            sample_id,
            label: None,
            path: input.to_path_buf(),
        }])
    }
}

/// Reads `sample_id,label,<features...>` rows. Every row must be labeled
/// and have the same width.
pub fn read_features(path: &Path) -> Result<(Vec<String>, Vec<LabeledSample>)> {
    let mut r = csv::ReaderBuilder::new()
        .flexible(true)
        .from_path(path)
        .with_context(|| format!("reading {}", path.display()))?;
    let header: Vec<String> = r.headers()?.iter().map(str::to_owned).collect();
    if header.len() < 3 || header[0] != "sample_id" || header[1] != "label" {
        bail!("{}: header must start with sample_id,label and name at least one feature", path.display());
    }
    let mut samples = Vec::new();
    for (i, rec) in r.records().enumerate() {
        let rec = rec?;
        let line = i + 2;
        if rec.len() != header.len() {
            bail!(
                "{} line {line}: {} feature columns, header has {}",
                path.display(),
                rec.len().saturating_sub(2),
                header.len() - 2
            );
        }
        let label: NetworkClass = rec[1]
            .parse()
            .with_context(|| format!("{} line {line}: label `{}`", path.display(), &rec[1]))?;
        let features = rec
            .iter()
            .skip(2)
            .map(|v| v.trim().parse::<f64>())
            .collect::<std::result::Result<Vec<_>, _>>()
            .with_context(|| format!("{} line {line}: non-numeric feature", path.display()))?;
        samples.push(LabeledSample::new(&rec[0], label, features));
    }
    Ok((header[2..].to_vec(), samples))
}
