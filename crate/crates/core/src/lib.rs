//! Jump-based social graphs over rating data and the random-graph
//! predictions of their path lengths.
//!
//! A rating dataset is a bipartite graph of people and movies. A jump turns
//! it into a social network among people; together with the ratings this
//! gives a directed recommender graph whose reachability and path lengths
//! are measured here and compared with random-graph predictions.

pub mod dataset;
pub mod experiment;
pub mod graph;
pub mod jumps;
pub mod metrics;
pub mod nsw;
pub mod report;
pub mod synth;

mod parallel;

pub use dataset::{BipartiteRatings, DatasetError, Format, RatingTriple};
pub use graph::UndirectedGraph;
pub use jumps::{apply_jump, build_recommender_graph, CoRatingIndex, JumpSpec, RecommenderGraph, SocialGraph};
pub use metrics::{ComponentReport, ComponentSource, SourcePolicy};
