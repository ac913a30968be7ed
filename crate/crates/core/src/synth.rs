//! Synthetic data: power-law rating datasets and ring-lattice small-world
//! graphs.
//!
//! Every generator draws from a single ChaCha8 stream seeded from the
//! config, so a fixed seed reproduces the output bit for bit on any
//! platform.

use rand::distr::weighted::WeightedIndex;
use rand::distr::Distribution;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::dataset::{is_connected_bipartite, reorder_hits_buffs, BipartiteRatings, RatingTriple};
use crate::graph::UndirectedGraph;
use crate::metrics::{average_path_length, clustering_coefficient, ComponentSource, MetricsError, SourcePolicy};
use crate::parallel::map_indexed;

#[derive(Error, Debug, Clone, PartialEq)]
pub enum SynthError {
    #[error("invalid synthetic dataset config: {0}")]
    InvalidConfig(String),
    #[error("minimum rating count {kappa} outside 1..={n_movies}")]
    KappaOutOfRange { kappa: usize, n_movies: usize },
    #[error("wreath needs an even k with 2 <= k < n (got n={n}, k={k})")]
    InvalidWreath { n: usize, k: usize },
    #[error("rewiring probability {0} outside [0, 1]")]
    InvalidProbability(f64),
    #[error(transparent)]
    Metrics(#[from] MetricsError),
}

/// Parameters of the power-law rating generator.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SynthConfig {
    pub n_people: usize,
    pub n_movies: usize,
    /// Person with buff index `b` starts with the first
    /// `⌈n_movies · b^(−epsilon)⌉` movies.
    pub epsilon: f64,
    /// An edge is rewired when a variate uniform on `0..rewire_outcomes`
    /// is below this value.
    pub rewire_threshold: u32,
    pub rewire_outcomes: u32,
    pub seed: u64,
    pub repair_connectivity: bool,
}

impl Default for SynthConfig {
    fn default() -> Self {
        Self {
            n_people: 500,
            n_movies: 75,
            epsilon: 0.7,
            rewire_threshold: 2,
            rewire_outcomes: 11,
            seed: 0,
            repair_connectivity: true,
        }
    }
}

impl SynthConfig {
    pub fn validate(&self) -> Result<(), SynthError> {
        let bad = |m: &str| Err(SynthError::InvalidConfig(m.to_string()));
        if self.n_people == 0 || self.n_movies == 0 {
            return bad("n_people and n_movies must be at least 1");
        }
        if !self.epsilon.is_finite() || self.epsilon < 0.0 {
            return bad("epsilon must be finite and non-negative");
        }
        if self.rewire_outcomes == 0 || self.rewire_threshold > self.rewire_outcomes {
            return bad("rewire_threshold must lie in 0..=rewire_outcomes");
        }
        Ok(())
    }
}

/// Initial rating count of the person with buff index `b` (1-based).
pub fn target_degree(b: usize, n_movies: usize, epsilon: f64) -> usize {
    let d = (n_movies as f64 * (b as f64).powf(-epsilon)).ceil() as usize;
    d.clamp(1, n_movies)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct SynthDiagnostics {
    /// Edges whose movie endpoint moved.
    pub rewired: usize,
    /// Rewire draws skipped because the person already rated every movie.
    pub impossible_rewires: usize,
    /// Edges added to join stray components.
    pub repair_edges: usize,
}

#[derive(Debug, Clone)]
pub struct SynthDataset {
    pub ratings: BipartiteRatings,
    pub diagnostics: SynthDiagnostics,
}

/// Power-law bipartite ratings. People are ids `1..=n_people` (buff index)
/// and movies `1..=n_movies` (hit index).
///
/// Edges are visited by ascending (buff index, movie rank). For each edge one
/// variate decides whether to rewire; a rewired edge then moves to a movie
/// drawn uniformly from those the person does not rate yet.
pub fn generate_power_law_bipartite(cfg: &SynthConfig) -> Result<SynthDataset, SynthError> {
    cfg.validate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let nm = cfg.n_movies;
    let mut diagnostics = SynthDiagnostics::default();
    let mut triples = Vec::new();
    let mut rated = vec![false; nm];

    for b in 1..=cfg.n_people {
        let d = target_degree(b, nm, cfg.epsilon);
        rated.iter_mut().enumerate().for_each(|(m, r)| *r = m < d);
        let mut slots: Vec<usize> = (0..d).collect();
        for slot in slots.iter_mut() {
            let variate = rng.random_range(0..cfg.rewire_outcomes);
            if variate >= cfg.rewire_threshold {
                continue;
            }
            let free = nm - d;
            if free == 0 {
                diagnostics.impossible_rewires += 1;
                continue;
            }
            let pick = rng.random_range(0..free);
            let target = rated
                .iter()
                .enumerate()
                .filter(|(_, &r)| !r)
                .nth(pick)
                .map(|(m, _)| m)
                .expect("pick < number of unrated movies");
            rated[*slot] = false;
            rated[target] = true;
            *slot = target;
            diagnostics.rewired += 1;
        }
        slots.sort_unstable();
        triples.extend(slots.iter().map(|&m| RatingTriple::new(b as u64, m as u64 + 1)));
    }

    let ratings = BipartiteRatings::from_parts(1..=cfg.n_people as u64, 1..=nm as u64, triples)
        .expect("generated ids are in range");
    if cfg.repair_connectivity && !is_connected_bipartite(&ratings) {
        let (ratings, added) = repair_connectivity(&ratings);
        diagnostics.repair_edges = added;
        return Ok(SynthDataset { ratings, diagnostics });
    }
    Ok(SynthDataset { ratings, diagnostics })
}

/// Joins every component that does not contain the top hit movie to it:
/// the component's highest-degree person (lowest id on ties) rates the hit.
/// A component with no people is attached through the top buff instead.
/// Returns the repaired graph and the number of edges added.
pub fn repair_connectivity(g: &BipartiteRatings) -> (BipartiteRatings, usize) {
    if g.n_people() == 0 || g.n_movies() == 0 {
        return (g.clone(), 0);
    }
    let ordering = reorder_hits_buffs(g);
    let hit = ordering.hit_rank[0];
    let top_buff = ordering.buff_rank[0];
    let np = g.n_people();
    let hit_vertex = np + g.movie_index(hit).expect("hit exists") as usize;

    // label bipartite components, people first then movies
    let mut labels = vec![u32::MAX; np + g.n_movies()];
    let mut next = 0u32;
    let mut queue = Vec::new();
    for s in 0..labels.len() {
        if labels[s] != u32::MAX {
            continue;
        }
        labels[s] = next;
        queue.clear();
        queue.push(s);
        while let Some(v) = queue.pop() {
            let (offset, nbrs) = if v < np {
                (np, g.movies_of(v as u32))
            } else {
                (0, g.raters_of((v - np) as u32))
            };
            for &u in nbrs {
                let u = offset + u as usize;
                if labels[u] == u32::MAX {
                    labels[u] = next;
                    queue.push(u);
                }
            }
        }
        next += 1;
    }

    let hit_label = labels[hit_vertex];
    // best person per component: (degree, id)
    let mut best: Vec<Option<(usize, u64)>> = vec![None; next as usize];
    let mut movie_only: Vec<Option<u64>> = vec![None; next as usize];
    for (p, &label) in labels[..np].iter().enumerate() {
        let l = label as usize;
        let cand = (g.person_degree(p as u32), g.people()[p]);
        best[l] = match best[l] {
            Some((d, id)) if d > cand.0 || (d == cand.0 && id < cand.1) => Some((d, id)),
            _ => Some(cand),
        };
    }
    for m in 0..g.n_movies() {
        let l = labels[np + m] as usize;
        movie_only[l].get_or_insert(g.movies()[m]);
    }

    let mut extra = Vec::new();
    for l in 0..next as usize {
        if l as u32 == hit_label {
            continue;
        }
        match (best[l], movie_only[l]) {
            (Some((_, person)), _) => extra.push(RatingTriple::new(person, hit)),
            (None, Some(movie)) => extra.push(RatingTriple::new(top_buff, movie)),
            (None, None) => {}
        }
    }
    let added = extra.len();
    let triples = g.ratings().iter().copied().chain(extra);
    let repaired = BipartiteRatings::from_parts(g.people().iter().copied(), g.movies().iter().copied(), triples)
        .expect("repair only uses existing ids");
    (repaired, added)
}

/// Smallest rating count of any person for a given exponent.
fn min_degree(epsilon: f64, n_people: usize, n_movies: usize) -> usize {
    target_degree(n_people, n_movies, epsilon)
}

/// Smallest exponent (to bisection precision) whose least-rated person has
/// at most `target` ratings.
fn first_epsilon_at_most(target: usize, n_people: usize, n_movies: usize) -> f64 {
    let mut bad = 0.0;
    let mut good = (n_movies as f64).ln() / (n_people as f64).ln() + 1.0;
    if min_degree(bad, n_people, n_movies) <= target {
        return bad;
    }
    for _ in 0..200 {
        let mid = 0.5 * (bad + good);
        if mid <= bad || mid >= good {
            break;
        }
        if min_degree(mid, n_people, n_movies) <= target {
            good = mid;
        } else {
            bad = mid;
        }
    }
    good
}

/// Exponent for which the least-rated person rates exactly `kappa` movies.
///
/// The feasible exponents form an interval; its midpoint is returned. For
/// `kappa = 1` the interval is unbounded above and its lower end is returned
/// instead, which gives the densest dataset with that minimum.
pub fn calibrate_epsilon(kappa: usize, n_people: usize, n_movies: usize) -> Result<f64, SynthError> {
    if kappa == 0 || kappa > n_movies {
        return Err(SynthError::KappaOutOfRange { kappa, n_movies });
    }
    if n_people == 0 {
        return Err(SynthError::InvalidConfig("n_people must be at least 1".into()));
    }
    if n_people == 1 {
        // the single person rates everything whatever the exponent
        return if kappa == n_movies {
            Ok(0.0)
        } else {
            Err(SynthError::KappaOutOfRange { kappa, n_movies })
        };
    }
    let lo = first_epsilon_at_most(kappa, n_people, n_movies);
    if kappa == 1 {
        return Ok(lo);
    }
    let hi = first_epsilon_at_most(kappa - 1, n_people, n_movies);
    let mid = 0.5 * (lo + hi);
    debug_assert_eq!(min_degree(mid, n_people, n_movies), kappa);
    Ok(mid)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum RewireMode {
    /// Target uniform over valid nodes.
    #[default]
    Uniform,
    /// Target chosen with probability proportional to current degree.
    Preferential,
}

impl std::str::FromStr for RewireMode {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "uniform" => Ok(RewireMode::Uniform),
            "preferential" => Ok(RewireMode::Preferential),
            other => Err(format!(
                "unknown rewire mode '{other}' (expected uniform or preferential)"
            )),
        }
    }
}

impl std::fmt::Display for RewireMode {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            RewireMode::Uniform => "uniform",
            RewireMode::Preferential => "preferential",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WreathConfig {
    pub n: usize,
    /// Even number of nearest neighbours per node.
    pub k: usize,
    pub p: f64,
    pub mode: RewireMode,
    pub seed: u64,
}

impl WreathConfig {
    pub fn validate(&self) -> Result<(), SynthError> {
        if self.k < 2 || !self.k.is_multiple_of(2) || self.k >= self.n {
            return Err(SynthError::InvalidWreath { n: self.n, k: self.k });
        }
        if !(0.0..=1.0).contains(&self.p) {
            return Err(SynthError::InvalidProbability(self.p));
        }
        Ok(())
    }
}

/// Ring lattice: node `i` joined to `i ± 1 ..= i ± k/2` (mod n).
pub fn generate_wreath(n: usize, k: usize) -> Result<UndirectedGraph, SynthError> {
    if k < 2 || !k.is_multiple_of(2) || k >= n {
        return Err(SynthError::InvalidWreath { n, k });
    }
    let half = k / 2;
    let edges = (1..=half).flat_map(|j| (0..n).map(move |i| (i as u32, ((i + j) % n) as u32)));
    Ok(UndirectedGraph::from_edges(n, edges).expect("k < n rules out loops and repeats"))
}

#[derive(Debug, Clone, PartialEq)]
pub struct RewireOutcome {
    pub graph: UndirectedGraph,
    pub rewired: usize,
    /// Selected edges left in place because no valid target existed.
    pub failed: usize,
}

/// Rewires each edge independently with probability `p`, keeping its lower
/// endpoint and moving the other end. Edges are visited in ascending order
/// of the input graph; the edge count never changes and no loops or
/// parallel edges are created.
pub fn rewire(g: &UndirectedGraph, p: f64, mode: RewireMode, seed: u64) -> Result<RewireOutcome, SynthError> {
    if !(0.0..=1.0).contains(&p) {
        return Err(SynthError::InvalidProbability(p));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = g.clone();
    let n = g.vertex_count();
    let edges: Vec<(u32, u32)> = g.edges().collect();
    let (mut rewired, mut failed) = (0, 0);
    let mut weights = vec![0u64; n];

    for (keep, old) in edges {
        if !rng.random_bool(p) {
            continue;
        }
        // valid targets: not `keep`, not already adjacent to it (this
        // includes `old`)
        let valid = n - 1 - out.degree(keep);
        if valid == 0 {
            failed += 1;
            continue;
        }
        let target = match mode {
            RewireMode::Uniform => loop {
                let t = rng.random_range(0..n as u32);
                if t != keep && !out.has_edge(keep, t) {
                    break Some(t);
                }
            },
            RewireMode::Preferential => {
                for (v, w) in weights.iter_mut().enumerate() {
                    let v = v as u32;
                    *w = if v == keep || out.has_edge(keep, v) {
                        0
                    } else {
                        out.degree(v) as u64
                    };
                }
                WeightedIndex::new(&weights)
                    .ok()
                    .map(|dist| dist.sample(&mut rng) as u32)
            }
        };
        match target {
            Some(t) => {
                out.remove_edge_unchecked(keep, old);
                out.add_edge_unchecked(keep, t);
                rewired += 1;
            }
            None => failed += 1,
        }
    }
    Ok(RewireOutcome {
        graph: out,
        rewired,
        failed,
    })
}

/// Average path length and clustering coefficient on the largest component.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SmallWorldMeasure {
    pub length: f64,
    pub clustering: f64,
}

pub fn measure_small_world(g: &UndirectedGraph, policy: &SourcePolicy) -> Result<SmallWorldMeasure, SynthError> {
    let report = g.component_report();
    let giant;
    let target = if report.component_count() == 1 {
        g
    } else {
        giant = g.induced_subgraph(&report.giant_vertices());
        &giant
    };
    let length = average_path_length(target, policy)?
        .l_pp
        .expect("giant has at least two vertices");
    Ok(SmallWorldMeasure {
        length,
        clustering: clustering_coefficient(target)?,
    })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SmallWorldPoint {
    pub p: f64,
    /// Mean length over trials divided by the unrewired length.
    pub l_ratio: f64,
    pub c_ratio: f64,
    pub mean_length: f64,
    pub mean_clustering: f64,
}

/// Mixes a master seed with two indices into an independent stream seed.
pub fn derive_seed(master: u64, a: u64, b: u64) -> u64 {
    let mut z = master
        .wrapping_add(a.wrapping_mul(0x9E37_79B9_7F4A_7C15))
        .wrapping_add(b.wrapping_mul(0xD1B5_4A32_D192_ED03));
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Length and clustering versus rewiring probability, each averaged over
/// `trials` rewirings and scaled by the unrewired lattice. `cfg.p` is
/// ignored; trial `t` of point `i` uses seed `derive_seed(cfg.seed, i, t)`.
pub fn small_world_curve(
    cfg: &WreathConfig,
    p_values: &[f64],
    trials: usize,
    policy: &SourcePolicy,
) -> Result<Vec<SmallWorldPoint>, SynthError> {
    WreathConfig { p: 0.0, ..*cfg }.validate()?;
    if trials == 0 {
        return Err(SynthError::InvalidConfig("trials must be at least 1".into()));
    }
    if let Some(&p) = p_values.iter().find(|p| !(0.0..=1.0).contains(*p)) {
        return Err(SynthError::InvalidProbability(p));
    }
    let lattice = generate_wreath(cfg.n, cfg.k)?;
    let base = measure_small_world(&lattice, policy)?;

    p_values
        .iter()
        .enumerate()
        .map(|(i, &p)| {
            let per_trial = map_indexed(
                trials,
                || (),
                |_, t| {
                    let seed = derive_seed(cfg.seed, i as u64, t as u64);
                    let g = rewire(&lattice, p, cfg.mode, seed)?.graph;
                    measure_small_world(&g, policy)
                },
            );
            let measures = per_trial.into_iter().collect::<Result<Vec<_>, _>>()?;
            let mean_length = measures.iter().map(|m| m.length).sum::<f64>() / trials as f64;
            let mean_clustering = measures.iter().map(|m| m.clustering).sum::<f64>() / trials as f64;
            Ok(SmallWorldPoint {
                p,
                l_ratio: mean_length / base.length,
                c_ratio: mean_clustering / base.clustering,
                mean_length,
                mean_clustering,
            })
        })
        .collect()
}
