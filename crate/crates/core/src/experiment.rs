//! Experiment drivers shared by the command-line tool and the browser demo.

use thiserror::Error;

use crate::dataset::{
    fit_power_law, is_connected_bipartite, reorder_hits_buffs, sparsity, BipartiteRatings, DatasetError, PowerLawFit,
};
use crate::jumps::{build_recommender_graph, CoRatingIndex, JumpError, JumpSpec};
use crate::metrics::{
    joint_degree_distribution, linf_discrepancy, measure_l_r_l_pm, ComponentSource, DegreeDistribution, MetricsError,
    SourcePolicy,
};
use crate::nsw::{predict_l_pm, predict_l_pp, predict_l_r, DirectedModelInput, UndirectedModelInput};
use crate::parallel::map_indexed;
use crate::synth::{calibrate_epsilon, derive_seed, generate_power_law_bipartite, SynthConfig, SynthError};

#[derive(Error, Debug)]
pub enum ExperimentError {
    #[error("invalid range: {0}")]
    InvalidRange(String),
    #[error(transparent)]
    Dataset(#[from] DatasetError),
    #[error(transparent)]
    Jump(#[from] JumpError),
    #[error(transparent)]
    Metrics(#[from] MetricsError),
    #[error(transparent)]
    Synth(#[from] SynthError),
}

/// Summary statistics of a rating dataset.
#[derive(Debug, Clone, PartialEq)]
pub struct StatsReport {
    pub n_people: usize,
    pub n_movies: usize,
    pub edges: usize,
    pub sparsity: f64,
    pub connected: bool,
    pub min_person_degree: usize,
    pub duplicate_ratings: usize,
    /// Degrees of the ten heaviest raters, largest first.
    pub top_buff_degrees: Vec<usize>,
    /// Degrees of the ten most rated movies, largest first.
    pub top_hit_degrees: Vec<usize>,
    /// Fit of buff degree against buff index, when enough distinct points
    /// exist.
    pub buff_fit: Option<PowerLawFit>,
}

pub fn dataset_stats(g: &BipartiteRatings) -> Result<StatsReport, ExperimentError> {
    let ordering = reorder_hits_buffs(g);
    let buff: Vec<u64> = ordering.buff_degrees.iter().map(|&d| d as u64).collect();
    Ok(StatsReport {
        n_people: g.n_people(),
        n_movies: g.n_movies(),
        edges: g.edge_count(),
        sparsity: sparsity(g)?,
        connected: is_connected_bipartite(g),
        min_person_degree: g.min_person_degree().unwrap_or(0),
        duplicate_ratings: g.duplicate_warnings(),
        top_buff_degrees: ordering.buff_degrees.iter().take(10).copied().collect(),
        top_hit_degrees: ordering.hit_degrees.iter().take(10).copied().collect(),
        buff_fit: fit_power_law(&buff, true).ok(),
    })
}

/// Inclusive range of hammock widths.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct WidthRange {
    pub min: u32,
    pub max: u32,
}

impl WidthRange {
    pub fn new(min: u32, max: u32) -> Result<Self, ExperimentError> {
        if min == 0 || min > max {
            return Err(ExperimentError::InvalidRange(format!(
                "hammock widths {min}..={max} must be nonempty and start at 1 or more"
            )));
        }
        Ok(Self { min, max })
    }

    pub fn len(&self) -> usize {
        (self.max - self.min + 1) as usize
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn iter(&self) -> impl Iterator<Item = u32> {
        self.min..=self.max
    }
}

/// Measured and predicted quantities for one hammock width.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepRow {
    pub w: u32,
    pub components: usize,
    pub giant_people: usize,
    pub giant_movies: usize,
    pub isolated_people: usize,
    pub shattered: bool,
    pub l_pp_measured: Option<f64>,
    pub l_r_measured: Option<f64>,
    pub l_pm_measured: Option<f64>,
    pub l_pp_predicted: Option<f64>,
    pub l_r_predicted: Option<f64>,
    pub l_pm_predicted: Option<f64>,
    pub sources: usize,
    pub sampled: bool,
}

fn sweep_point(
    g: &BipartiteRatings,
    index: &CoRatingIndex,
    w: u32,
    policy: &SourcePolicy,
) -> Result<SweepRow, ExperimentError> {
    let spec = JumpSpec::hammock(w)?;
    let gs = index.social_graph(spec);
    let gr = build_recommender_graph(g, &gs)?;
    let report = gr.component_report();

    let measured = match measure_l_r_l_pm(&gr, policy) {
        Ok(stats) => Some(stats),
        Err(MetricsError::NoSources) => None,
        Err(e) => return Err(e.into()),
    };

    let giant = report.giant_people_vertices();
    let n_p = report.giant_people;
    let n_m = report.giant_movies;
    let p_k = DegreeDistribution::from_degrees(giant.iter().map(|&p| gr.social_degree(p)));
    let l_pp_predicted = predict_l_pp(&UndirectedModelInput { p_k, n_p }).ok();
    let l_r_predicted = joint_degree_distribution(&gr, true)
        .ok()
        .and_then(|p_jk| predict_l_r(&DirectedModelInput { p_jk, n_p, n_m }).ok());
    let l_pm_predicted = match (l_r_predicted, l_pp_predicted) {
        (Some(l_r), Some(l_pp)) => predict_l_pm(l_r, l_pp, n_p, n_m).ok(),
        _ => None,
    };

    Ok(SweepRow {
        w,
        components: report.component_count(),
        giant_people: n_p,
        giant_movies: n_m,
        isolated_people: report.isolated_people,
        shattered: report.shattered,
        l_pp_measured: measured.and_then(|s| s.l_pp),
        l_r_measured: measured.and_then(|s| s.l_r),
        l_pm_measured: measured.and_then(|s| s.l_pm),
        l_pp_predicted,
        l_r_predicted,
        l_pm_predicted,
        sources: measured.map_or(0, |s| s.sources),
        sampled: measured.is_some_and(|s| s.sampled),
    })
}

/// One row per hammock width, in increasing order of width.
pub fn sweep(
    g: &BipartiteRatings,
    widths: WidthRange,
    policy: &SourcePolicy,
) -> Result<Vec<SweepRow>, ExperimentError> {
    let index = CoRatingIndex::build(g);
    let ws: Vec<u32> = widths.iter().collect();
    map_indexed(ws.len(), || (), |_, i| sweep_point(g, &index, ws[i], policy))
        .into_iter()
        .collect()
}

/// Parameters of the synthetic study across minimum rating counts.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SynthStudyConfig {
    pub kappa_min: usize,
    pub kappa_max: usize,
    pub widths: WidthRange,
    pub trials: usize,
    pub seed: u64,
    /// Template for generated datasets; `epsilon` and `seed` are replaced
    /// per run.
    pub base: SynthConfig,
    pub policy: SourcePolicy,
}

impl Default for SynthStudyConfig {
    fn default() -> Self {
        Self {
            kappa_min: 1,
            kappa_max: 15,
            widths: WidthRange { min: 1, max: 25 },
            trials: 15,
            seed: 0,
            base: SynthConfig::default(),
            policy: SourcePolicy::default(),
        }
    }
}

/// Trial averages for one (κ, w) cell. A length is averaged over the trials
/// where it is defined and is absent when it is defined in none.
#[derive(Debug, Clone, PartialEq)]
pub struct SynthStudyRow {
    pub kappa: usize,
    pub epsilon: f64,
    pub w: u32,
    pub trials: usize,
    pub components: f64,
    pub giant_people: f64,
    pub giant_movies: f64,
    pub l_pp_measured: Option<f64>,
    pub l_pp_predicted: Option<f64>,
    pub l_r_measured: Option<f64>,
    pub l_r_predicted: Option<f64>,
}

/// L∞ distance between averaged measured and predicted `l_pp` over the
/// width range, or the reason it is missing.
#[derive(Debug, Clone, PartialEq)]
pub struct SynthSummary {
    pub kappa: usize,
    pub epsilon: Option<f64>,
    pub linf: Option<f64>,
    pub warning: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct SynthStudy {
    pub rows: Vec<SynthStudyRow>,
    pub summaries: Vec<SynthSummary>,
}

/// Sweep rows for one generated dataset of the study.
pub fn synth_trial(
    cfg: &SynthStudyConfig,
    kappa: usize,
    epsilon: f64,
    trial: usize,
) -> Result<Vec<SweepRow>, ExperimentError> {
    let synth = SynthConfig {
        epsilon,
        seed: derive_seed(cfg.seed, kappa as u64, trial as u64),
        ..cfg.base
    };
    let data = generate_power_law_bipartite(&synth)?;
    sweep(&data.ratings, cfg.widths, &cfg.policy)
}

fn mean_defined<I: Iterator<Item = Option<f64>>>(values: I) -> Option<f64> {
    let (sum, n) = values.flatten().fold((0.0, 0usize), |(s, n), v| (s + v, n + 1));
    (n > 0).then(|| sum / n as f64)
}

/// For each κ: calibrate ε, sweep `trials` generated datasets, average the
/// rows per width, then take the L∞ discrepancy of the averaged `l_pp`
/// curves.
pub fn synth_study(cfg: &SynthStudyConfig) -> Result<SynthStudy, ExperimentError> {
    if cfg.kappa_min == 0 || cfg.kappa_min > cfg.kappa_max {
        return Err(ExperimentError::InvalidRange(format!(
            "minimum rating counts {}..={} must be nonempty and start at 1 or more",
            cfg.kappa_min, cfg.kappa_max
        )));
    }
    if cfg.trials == 0 {
        return Err(ExperimentError::InvalidRange("trials must be at least 1".into()));
    }
    cfg.base.validate()?;

    let mut study = SynthStudy::default();
    for kappa in cfg.kappa_min..=cfg.kappa_max {
        let epsilon = match calibrate_epsilon(kappa, cfg.base.n_people, cfg.base.n_movies) {
            Ok(e) => e,
            Err(e) => {
                study.summaries.push(SynthSummary {
                    kappa,
                    epsilon: None,
                    linf: None,
                    warning: Some(e.to_string()),
                });
                continue;
            }
        };
        let trials = map_indexed(cfg.trials, || (), |_, t| synth_trial(cfg, kappa, epsilon, t))
            .into_iter()
            .collect::<Result<Vec<_>, _>>()?;

        let n = cfg.trials as f64;
        let rows: Vec<SynthStudyRow> = (0..cfg.widths.len())
            .map(|i| {
                let cell = || trials.iter().map(move |rows| &rows[i]);
                SynthStudyRow {
                    kappa,
                    epsilon,
                    w: cfg.widths.min + i as u32,
                    trials: cfg.trials,
                    components: cell().map(|r| r.components as f64).sum::<f64>() / n,
                    giant_people: cell().map(|r| r.giant_people as f64).sum::<f64>() / n,
                    giant_movies: cell().map(|r| r.giant_movies as f64).sum::<f64>() / n,
                    l_pp_measured: mean_defined(cell().map(|r| r.l_pp_measured)),
                    l_pp_predicted: mean_defined(cell().map(|r| r.l_pp_predicted)),
                    l_r_measured: mean_defined(cell().map(|r| r.l_r_measured)),
                    l_r_predicted: mean_defined(cell().map(|r| r.l_r_predicted)),
                }
            })
            .collect();

        let measured: Vec<Option<f64>> = rows.iter().map(|r| r.l_pp_measured).collect();
        let predicted: Vec<Option<f64>> = rows.iter().map(|r| r.l_pp_predicted).collect();
        let (linf, warning) = match linf_discrepancy(&measured, &predicted) {
            Ok(v) => (Some(v), None),
            Err(e) => (None, Some(e.to_string())),
        };
        study.summaries.push(SynthSummary {
            kappa,
            epsilon: Some(epsilon),
            linf,
            warning,
        });
        study.rows.extend(rows);
    }
    Ok(study)
}
