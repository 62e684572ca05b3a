pub mod backbone;
pub mod cli;
pub mod controllability;
pub mod dataset;
pub mod error;
pub mod generators;
pub mod graph;
pub mod seeding;
pub mod union_find;
pub mod zero_forcing;

pub use backbone::{Backbone, BackboneMethod};
pub use dataset::{DatasetBundle, StatsReport};
pub use error::{Error, Result};
pub use graph::{edge, ComponentLabeling, DistanceMap, Edge, Graph};
pub use zero_forcing::{ForcingRecord, LeaderSet, ZeroForcingRun};
