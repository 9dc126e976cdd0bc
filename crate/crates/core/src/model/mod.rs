//! Domain types shared by all modules: simplex features, datasets,
//! ground-truth environment specifications, and run configuration.
//!
//! Everything here is immutable after construction and safe to share
//! read-only across workers.

pub mod config;
pub mod data;
pub mod dataset_io;
pub mod env;
pub mod features;
pub mod measure;
pub mod simplex;

pub use config::{validate_partition, RunConfig};
pub use data::{validate_dataset, OfflineDataset, SiteData, State, StateRef, Trajectory, Transition, Violation};
pub use dataset_io::{load_dataset, save_dataset};
pub use env::{EnvSpec, RewardNoise, StateKind};
pub use features::{blocked_features, hard_instance_features, FeatureMap};
pub use measure::MeasureFactor;
pub use simplex::SimplexVector;
