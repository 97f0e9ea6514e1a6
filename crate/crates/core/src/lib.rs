//! Modified deterministic tourist walk on undirected graphs.
//!
//! A walker launched from every node moves only toward neighbors of a
//! different degree, choosing the one with the closest local clustering and
//! avoiding its last `mu` positions. The resulting (transient, attractor)
//! statistics give signature vectors for classifying regular, random and
//! small-world networks, and the mean trajectory length feeds the `chi`
//! small-worldness coefficient.

pub mod classifier;
pub mod dataset;
pub mod error;
pub mod generators;
pub mod graph;
pub mod ingest;
pub mod metrics;
pub mod runtime;
pub mod signatures;
pub mod walker;

pub use classifier::{lda_fit, loocv, pca_project, EvaluationReport, LabeledSample, LdaModel, NetworkClass};
pub use error::{Error, Result};
pub use generators::{
    apply_noise, derive_seed, equivalent_lattice, equivalent_random, erdos_renyi, ring_lattice,
    watts_strogatz, GeneratorSpec, Model, NoiseSpec,
};
pub use graph::{Graph, NodeMetrics};
pub use metrics::{chi, metrics_report, omega, structural_features, MetricsReport, StructuralFeatures};
pub use signatures::{joint_histogram, mean_trajectory_length, phi, psi, JointHistogram, SignatureVector};
pub use walker::{walk, walk_all, StopReason, TouristWalker, WalkOutcome, WalkerConfig};
