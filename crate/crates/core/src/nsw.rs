//! Generating-function predictions of average path length for random
//! graphs with a prescribed degree distribution.
//!
//! The predictions depend only on the mean numbers of first and second
//! neighbours, `z1` and `z2`. They assume one giant component and allow
//! multi-edges, so they are qualitative at best on small or shattered
//! graphs. Natural logarithms are used throughout; the length formula does
//! not depend on the base.

use thiserror::Error;

use crate::metrics::{DegreeDistribution, JointDegreeDistribution};

/// Largest tolerated |Σ (j − k) p_jk| for a directed distribution.
pub const BALANCE_TOLERANCE: f64 = 1e-9;

#[derive(Error, Debug, Clone, PartialEq)]
pub enum ModelError {
    #[error("distribution has no edges (z1 = 0)")]
    NoEdges,
    #[error("model is degenerate: z2 = {z2} does not exceed z1 = {z1}")]
    Degenerate { z1: f64, z2: f64 },
    #[error("in/out arc balance violated by {0}")]
    Imbalanced(f64),
    #[error("need at least 2 vertices, got {0}")]
    TooFewVertices(usize),
    #[error("movie count must be positive")]
    NoMovies,
}

/// Mean first- and second-neighbour counts.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModelMoments {
    pub z1: f64,
    pub z2: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct UndirectedModelInput {
    pub p_k: DegreeDistribution,
    pub n_p: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct DirectedModelInput {
    pub p_jk: JointDegreeDistribution,
    pub n_p: usize,
    pub n_m: usize,
}

/// `z1 = Σ k p_k`, `z2 = Σ k(k−1) p_k`.
pub fn moments_undirected(p_k: &DegreeDistribution) -> Result<ModelMoments, ModelError> {
    let mut z1 = 0.0;
    let mut z2 = 0.0;
    for (k, p) in p_k.probabilities() {
        let k = k as f64;
        z1 += k * p;
        z2 += k * (k - 1.0) * p;
    }
    if z1 <= 0.0 {
        return Err(ModelError::NoEdges);
    }
    Ok(ModelMoments { z1, z2 })
}

/// `z1 = Σ k p_jk`, `z2 = Σ j k p_jk`, after checking that arcs in and out
/// balance.
pub fn moments_directed(p_jk: &JointDegreeDistribution) -> Result<ModelMoments, ModelError> {
    let mut z1 = 0.0;
    let mut z2 = 0.0;
    let mut imbalance = 0.0;
    for ((j, k), p) in p_jk.probabilities() {
        let (j, k) = (j as f64, k as f64);
        z1 += k * p;
        z2 += j * k * p;
        imbalance += (j - k) * p;
    }
    if imbalance.abs() > BALANCE_TOLERANCE {
        return Err(ModelError::Imbalanced(imbalance));
    }
    if z1 <= 0.0 {
        return Err(ModelError::NoEdges);
    }
    Ok(ModelMoments { z1, z2 })
}

/// Expected number of vertices exactly `m` steps away.
pub fn neighbors_at_distance(m: u32, moments: &ModelMoments) -> f64 {
    (moments.z2 / moments.z1).powi(m as i32 - 1) * moments.z1
}

/// Typical path length in a graph of `n` vertices with the given moments.
pub fn predict_path_length(n: usize, moments: &ModelMoments) -> Result<f64, ModelError> {
    if n < 2 {
        return Err(ModelError::TooFewVertices(n));
    }
    let ModelMoments { z1, z2 } = *moments;
    if z1 <= 0.0 {
        return Err(ModelError::NoEdges);
    }
    if z2 <= z1 {
        return Err(ModelError::Degenerate { z1, z2 });
    }
    // single log of the ratio keeps integer-valued inputs exact
    let reach = ((n as f64 - 1.0) * (z2 - z1) + z1 * z1) / (z1 * z1);
    Ok(reach.ln() / (z2 / z1).ln())
}

/// Predicted person-to-person length in the social graph.
pub fn predict_l_pp(input: &UndirectedModelInput) -> Result<f64, ModelError> {
    if input.n_p < 2 {
        return Err(ModelError::TooFewVertices(input.n_p));
    }
    let moments = moments_undirected(&input.p_k)?;
    predict_path_length(input.n_p, &moments)
}

/// Predicted length over all person sources and all targets of the
/// recommender graph (`N = n_p + n_m` vertices).
pub fn predict_l_r(input: &DirectedModelInput) -> Result<f64, ModelError> {
    let n = input.n_p + input.n_m;
    if n < 2 {
        return Err(ModelError::TooFewVertices(n));
    }
    let moments = moments_directed(&input.p_jk)?;
    predict_path_length(n, &moments)
}

/// Person-to-movie length implied by `l_r` and `l_pp`, treating `l_r` as
/// the pair-weighted mix of person and movie targets.
pub fn predict_l_pm(l_r: f64, l_pp: f64, n_p: usize, n_m: usize) -> Result<f64, ModelError> {
    if n_p < 2 {
        return Err(ModelError::TooFewVertices(n_p));
    }
    if n_m == 0 {
        return Err(ModelError::NoMovies);
    }
    let (np, nm) = (n_p as f64, n_m as f64);
    let pp_pairs = np * (np - 1.0);
    let pm_pairs = np * nm;
    Ok((l_r * (pp_pairs + pm_pairs) - l_pp * pp_pairs) / pm_pairs)
}
