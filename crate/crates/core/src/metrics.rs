//! Exact measurements on induced graphs: components, degree distributions,
//! clustering, and average shortest-path lengths by breadth-first search.
//!
//! Components of the recommender graph treat movies as sinks: people are
//! joined only through person arcs, and each movie is placed in the
//! highest-ranked component among the people who rated it. A person with
//! no social edges is therefore isolated even though it still rates movies.

use std::collections::BTreeMap;

use rand::seq::index::sample;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::graph::UndirectedGraph;
use crate::jumps::{RecommenderGraph, SocialGraph};
use crate::parallel::map_indexed;

#[derive(Error, Debug, Clone, PartialEq)]
pub enum MetricsError {
    #[error("graph has no vertices")]
    EmptyGraph,
    #[error("average path length is undefined: largest component has {0} people")]
    UndefinedLength(usize),
    #[error("no person sources in the largest component")]
    NoSources,
    #[error("sequences differ in length ({0} vs {1})")]
    LengthMismatch(usize, usize),
    #[error("no index has both values defined")]
    NoDefinedPairs,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ComponentSize {
    pub people: usize,
    pub movies: usize,
}

impl ComponentSize {
    pub fn total(&self) -> usize {
        self.people + self.movies
    }
}

/// Partition of a graph's vertices into connected components, largest
/// first. Index 0 is the giant component.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ComponentReport {
    pub components: Vec<ComponentSize>,
    pub giant_people: usize,
    pub giant_movies: usize,
    /// People with no social edges.
    pub isolated_people: usize,
    /// Every person outside the giant component has no social edges.
    pub shattered: bool,
    n_people: usize,
    labels: Vec<u32>,
}

impl ComponentReport {
    pub fn component_count(&self) -> usize {
        self.components.len()
    }

    /// Component index of a vertex (people first, then movies).
    pub fn component_of(&self, v: u32) -> usize {
        self.labels[v as usize] as usize
    }

    pub fn in_giant(&self, v: u32) -> bool {
        self.labels[v as usize] == 0
    }

    /// Sorted person vertices in the giant component.
    pub fn giant_people_vertices(&self) -> Vec<u32> {
        (0..self.n_people as u32).filter(|&v| self.in_giant(v)).collect()
    }

    /// Sorted vertices (people, then movies) in the giant component.
    pub fn giant_vertices(&self) -> Vec<u32> {
        (0..self.labels.len() as u32).filter(|&v| self.in_giant(v)).collect()
    }
}

/// Raw (unsorted) component description used while building a report.
struct RawComponents {
    n_people: usize,
    /// Label per vertex, people then movies.
    labels: Vec<u32>,
    count: usize,
    social_degree: Vec<usize>,
}

impl RawComponents {
    fn into_report(self) -> ComponentReport {
        let mut sizes = vec![(0usize, 0usize, u32::MAX); self.count];
        for (v, &l) in self.labels.iter().enumerate() {
            let s = &mut sizes[l as usize];
            if v < self.n_people {
                s.0 += 1;
            } else {
                s.1 += 1;
            }
            s.2 = s.2.min(v as u32);
        }
        let mut order: Vec<usize> = (0..self.count).collect();
        order.sort_by(|&a, &b| {
            let (pa, ma, ia) = sizes[a];
            let (pb, mb, ib) = sizes[b];
            (pb + mb).cmp(&(pa + ma)).then(pb.cmp(&pa)).then(ia.cmp(&ib))
        });
        let mut rank = vec![0u32; self.count];
        for (r, &c) in order.iter().enumerate() {
            rank[c] = r as u32;
        }
        let labels: Vec<u32> = self.labels.iter().map(|&l| rank[l as usize]).collect();
        let components: Vec<ComponentSize> = order
            .iter()
            .map(|&c| ComponentSize {
                people: sizes[c].0,
                movies: sizes[c].1,
            })
            .collect();
        let isolated_people = self.social_degree.iter().filter(|&&d| d == 0).count();
        let shattered = (0..self.n_people).all(|p| labels[p] == 0 || self.social_degree[p] == 0);
        let giant = components
            .first()
            .copied()
            .unwrap_or(ComponentSize { people: 0, movies: 0 });
        ComponentReport {
            giant_people: giant.people,
            giant_movies: giant.movies,
            isolated_people,
            shattered,
            n_people: self.n_people,
            components,
            labels,
        }
    }
}

/// Labels connected components of an undirected neighbor function by BFS.
fn label_components<'a, F>(n: usize, neighbors: F) -> (Vec<u32>, usize)
where
    F: Fn(u32) -> &'a [u32],
{
    let mut labels = vec![u32::MAX; n];
    let mut queue = Vec::new();
    let mut count = 0u32;
    for s in 0..n {
        if labels[s] != u32::MAX {
            continue;
        }
        labels[s] = count;
        queue.clear();
        queue.push(s as u32);
        let mut head = 0;
        while head < queue.len() {
            let v = queue[head];
            head += 1;
            for &u in neighbors(v) {
                if labels[u as usize] == u32::MAX {
                    labels[u as usize] = count;
                    queue.push(u);
                }
            }
        }
        count += 1;
    }
    (labels, count as usize)
}

/// Graphs whose connected components can be reported.
pub trait ComponentSource {
    fn component_report(&self) -> ComponentReport;
}

impl ComponentSource for UndirectedGraph {
    fn component_report(&self) -> ComponentReport {
        let (labels, count) = label_components(self.vertex_count(), |v| self.neighbors(v));
        RawComponents {
            n_people: self.vertex_count(),
            labels,
            count,
            social_degree: (0..self.vertex_count() as u32).map(|v| self.degree(v)).collect(),
        }
        .into_report()
    }
}

impl ComponentSource for SocialGraph {
    fn component_report(&self) -> ComponentReport {
        self.graph().component_report()
    }
}

impl ComponentSource for RecommenderGraph {
    fn component_report(&self) -> ComponentReport {
        let np = self.n_people();
        let (people_labels, people_count) = label_components(np, |p| self.social_neighbors(p));

        // rank people components to decide where shared movies go
        let mut sizes = vec![(0usize, u32::MAX); people_count];
        for (p, &l) in people_labels.iter().enumerate() {
            sizes[l as usize].0 += 1;
            sizes[l as usize].1 = sizes[l as usize].1.min(p as u32);
        }
        let mut order: Vec<usize> = (0..people_count).collect();
        order.sort_by(|&a, &b| sizes[b].0.cmp(&sizes[a].0).then(sizes[a].1.cmp(&sizes[b].1)));
        let mut rank = vec![0usize; people_count];
        for (r, &c) in order.iter().enumerate() {
            rank[c] = r;
        }

        let mut movie_label = vec![u32::MAX; self.n_movies()];
        for p in 0..np as u32 {
            let l = people_labels[p as usize];
            for &m in self.rated_movies(p) {
                let slot = &mut movie_label[m as usize - np];
                if *slot == u32::MAX || rank[l as usize] < rank[*slot as usize] {
                    *slot = l;
                }
            }
        }
        let mut count = people_count as u32;
        let mut labels = people_labels;
        labels.reserve(self.n_movies());
        for l in movie_label {
            if l == u32::MAX {
                labels.push(count);
                count += 1;
            } else {
                labels.push(l);
            }
        }
        RawComponents {
            n_people: np,
            labels,
            count: count as usize,
            social_degree: (0..np as u32).map(|p| self.social_degree(p)).collect(),
        }
        .into_report()
    }
}

pub fn connected_components<G: ComponentSource + ?Sized>(graph: &G) -> ComponentReport {
    graph.component_report()
}

/// Empirical degree distribution, stored as exact counts.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DegreeDistribution {
    counts: BTreeMap<usize, usize>,
    n: usize,
}

impl DegreeDistribution {
    pub fn from_degrees<I: IntoIterator<Item = usize>>(degrees: I) -> Self {
        let mut counts = BTreeMap::new();
        let mut n = 0;
        for d in degrees {
            *counts.entry(d).or_insert(0) += 1;
            n += 1;
        }
        Self { counts, n }
    }

    /// From `(degree, vertex count)` pairs.
    pub fn from_counts<I: IntoIterator<Item = (usize, usize)>>(counts: I) -> Self {
        let mut map = BTreeMap::new();
        for (k, c) in counts {
            if c > 0 {
                *map.entry(k).or_insert(0) += c;
            }
        }
        let n = map.values().sum();
        Self { counts: map, n }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn count(&self, k: usize) -> usize {
        self.counts.get(&k).copied().unwrap_or(0)
    }

    pub fn p(&self, k: usize) -> f64 {
        self.count(k) as f64 / self.n as f64
    }

    pub fn counts(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.counts.iter().map(|(&k, &c)| (k, c))
    }

    /// `(k, p_k)` for every degree present, ascending.
    pub fn probabilities(&self) -> Vec<(usize, f64)> {
        self.counts().map(|(k, c)| (k, c as f64 / self.n as f64)).collect()
    }
}

/// Joint (indegree, outdegree) distribution, stored as exact counts.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct JointDegreeDistribution {
    counts: BTreeMap<(usize, usize), usize>,
    n: usize,
}

impl JointDegreeDistribution {
    /// From `((indegree, outdegree), vertex count)` pairs.
    pub fn from_counts<I: IntoIterator<Item = ((usize, usize), usize)>>(counts: I) -> Self {
        let mut map = BTreeMap::new();
        for (jk, c) in counts {
            if c > 0 {
                *map.entry(jk).or_insert(0) += c;
            }
        }
        let n = map.values().sum();
        Self { counts: map, n }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn count(&self, j: usize, k: usize) -> usize {
        self.counts.get(&(j, k)).copied().unwrap_or(0)
    }

    pub fn p(&self, j: usize, k: usize) -> f64 {
        self.count(j, k) as f64 / self.n as f64
    }

    pub fn counts(&self) -> impl Iterator<Item = ((usize, usize), usize)> + '_ {
        self.counts.iter().map(|(&jk, &c)| (jk, c))
    }

    pub fn probabilities(&self) -> Vec<((usize, usize), f64)> {
        self.counts().map(|(jk, c)| (jk, c as f64 / self.n as f64)).collect()
    }
}

/// Degree distribution of the social graph, optionally restricted to its
/// largest component.
pub fn degree_distribution(gs: &SocialGraph, largest_only: bool) -> Result<DegreeDistribution, MetricsError> {
    undirected_degree_distribution(gs.graph(), largest_only)
}

pub fn undirected_degree_distribution(
    g: &UndirectedGraph,
    largest_only: bool,
) -> Result<DegreeDistribution, MetricsError> {
    if g.vertex_count() == 0 {
        return Err(MetricsError::EmptyGraph);
    }
    let degrees: Vec<usize> = if largest_only {
        let report = g.component_report();
        (0..g.vertex_count() as u32)
            .filter(|&v| report.in_giant(v))
            .map(|v| g.degree(v))
            .collect()
    } else {
        (0..g.vertex_count() as u32).map(|v| g.degree(v)).collect()
    };
    Ok(DegreeDistribution::from_degrees(degrees))
}

/// Joint in/out degree distribution of the recommender graph. With
/// `largest_only`, degrees count only arcs inside the largest component.
pub fn joint_degree_distribution(
    gr: &RecommenderGraph,
    largest_only: bool,
) -> Result<JointDegreeDistribution, MetricsError> {
    let n = gr.vertex_count();
    if n == 0 {
        return Err(MetricsError::EmptyGraph);
    }
    let selected: Vec<bool> = if largest_only {
        let report = gr.component_report();
        (0..n as u32).map(|v| report.in_giant(v)).collect()
    } else {
        vec![true; n]
    };
    let mut indeg = vec![0usize; n];
    let mut outdeg = vec![0usize; n];
    for (s, d) in gr.arcs() {
        if selected[s as usize] && selected[d as usize] {
            outdeg[s as usize] += 1;
            indeg[d as usize] += 1;
        }
    }
    let mut counts: BTreeMap<(usize, usize), usize> = BTreeMap::new();
    for v in (0..n).filter(|&v| selected[v]) {
        *counts.entry((indeg[v], outdeg[v])).or_insert(0) += 1;
    }
    Ok(JointDegreeDistribution::from_counts(counts))
}

/// How many BFS sources to use for path-length averages.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SourcePolicy {
    /// Use every candidate source when there are at most this many.
    pub exact_limit: usize,
    /// Otherwise draw this many sources uniformly without replacement.
    pub sample_size: usize,
    pub seed: u64,
}

impl Default for SourcePolicy {
    fn default() -> Self {
        Self {
            exact_limit: 5_000,
            sample_size: 1_000,
            seed: 0,
        }
    }
}

impl SourcePolicy {
    /// Returns the chosen sources (sorted) and whether they were sampled.
    pub fn choose(&self, candidates: &[u32]) -> (Vec<u32>, bool) {
        if candidates.len() <= self.exact_limit {
            return (candidates.to_vec(), false);
        }
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        let k = self.sample_size.min(candidates.len());
        let mut picked: Vec<u32> = sample(&mut rng, candidates.len(), k)
            .into_iter()
            .map(|i| candidates[i])
            .collect();
        picked.sort_unstable();
        (picked, true)
    }
}

/// Average shortest-path lengths (in hops) with the sums they came from.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct PathLengthStats {
    pub l_pp: Option<f64>,
    pub l_r: Option<f64>,
    pub l_pm: Option<f64>,
    /// Ordered person→person pairs measured.
    pub c_pp: u64,
    /// Ordered person→movie pairs measured.
    pub c_pm: u64,
    pub sum_pp: u64,
    pub sum_pm: u64,
    /// Pairs inside the largest component with no directed path.
    pub unreachable: u64,
    pub sources: usize,
    pub sampled: bool,
}

impl PathLengthStats {
    fn from_sums(sum_pp: u64, c_pp: u64, sum_pm: u64, c_pm: u64) -> Self {
        let mean = |s: u64, c: u64| (c > 0).then(|| s as f64 / c as f64);
        Self {
            l_pp: mean(sum_pp, c_pp),
            l_pm: mean(sum_pm, c_pm),
            l_r: mean(sum_pp + sum_pm, c_pp + c_pm),
            c_pp,
            c_pm,
            sum_pp,
            sum_pm,
            ..Self::default()
        }
    }
}

struct BfsScratch {
    dist: Vec<u32>,
    queue: Vec<u32>,
}

impl BfsScratch {
    fn new(n: usize) -> Self {
        Self {
            dist: vec![u32::MAX; n],
            queue: Vec::with_capacity(n),
        }
    }

    /// Runs BFS from `source`, leaving visited vertices in `queue` and their
    /// distances in `dist`. Call [`BfsScratch::reset`] afterwards.
    fn run<'a, F>(&mut self, source: u32, neighbors: F)
    where
        F: Fn(u32) -> &'a [u32],
    {
        self.queue.clear();
        self.dist[source as usize] = 0;
        self.queue.push(source);
        let mut head = 0;
        while head < self.queue.len() {
            let v = self.queue[head];
            head += 1;
            let next = self.dist[v as usize] + 1;
            for &u in neighbors(v) {
                let d = &mut self.dist[u as usize];
                if *d == u32::MAX {
                    *d = next;
                    self.queue.push(u);
                }
            }
        }
    }

    fn reset(&mut self) {
        for &v in &self.queue {
            self.dist[v as usize] = u32::MAX;
        }
    }
}

/// Sum of hop distances and number of reached targets from each source of
/// an undirected graph, excluding the source itself.
fn undirected_sums(g: &UndirectedGraph, sources: &[u32]) -> (u64, u64) {
    let per_source = map_indexed(
        sources.len(),
        || BfsScratch::new(g.vertex_count()),
        |s, i| {
            s.run(sources[i], |v| g.neighbors(v));
            let sum: u64 = s.queue.iter().map(|&v| s.dist[v as usize] as u64).sum();
            let reached = s.queue.len() as u64 - 1;
            s.reset();
            (sum, reached)
        },
    );
    per_source.into_iter().fold((0, 0), |(a, b), (s, r)| (a + s, b + r))
}

/// Mean shortest-path length over ordered pairs of distinct vertices in the
/// largest component of an undirected graph.
pub fn average_path_length(g: &UndirectedGraph, policy: &SourcePolicy) -> Result<PathLengthStats, MetricsError> {
    let report = g.component_report();
    let giant = report.giant_people_vertices();
    if giant.len() < 2 {
        return Err(MetricsError::UndefinedLength(giant.len()));
    }
    let (sources, sampled) = policy.choose(&giant);
    let (sum, pairs) = undirected_sums(g, &sources);
    Ok(PathLengthStats {
        sources: sources.len(),
        sampled,
        ..PathLengthStats::from_sums(sum, pairs, 0, 0)
    })
}

/// Mean person-to-person hop count in the largest component of the social
/// graph (the `l_pp` field of the result).
pub fn measure_l_pp(gs: &SocialGraph, policy: &SourcePolicy) -> Result<PathLengthStats, MetricsError> {
    let mut stats = average_path_length(gs.graph(), policy)?;
    stats.l_r = None;
    Ok(stats)
}

/// Directed path lengths in the largest component of the recommender
/// graph, from every person source: person targets give `l_pp`, movie
/// targets give `l_pm`, and their union gives `l_r`.
pub fn measure_l_r_l_pm(gr: &RecommenderGraph, policy: &SourcePolicy) -> Result<PathLengthStats, MetricsError> {
    let report = gr.component_report();
    let people = report.giant_people_vertices();
    if people.is_empty() {
        return Err(MetricsError::NoSources);
    }
    let np = gr.n_people() as u32;
    let (sources, sampled) = policy.choose(&people);
    let per_source = map_indexed(
        sources.len(),
        || BfsScratch::new(gr.vertex_count()),
        |s, i| {
            s.run(sources[i], |v| gr.out_neighbors(v));
            let mut acc = [0u64; 4];
            for &v in &s.queue[1..] {
                if !report.in_giant(v) {
                    continue;
                }
                let d = s.dist[v as usize] as u64;
                let slot = if v < np { 0 } else { 2 };
                acc[slot] += d;
                acc[slot + 1] += 1;
            }
            s.reset();
            acc
        },
    );
    let [sum_pp, c_pp, sum_pm, c_pm] = per_source.into_iter().fold([0u64; 4], |mut a, b| {
        for (x, y) in a.iter_mut().zip(b) {
            *x += y;
        }
        a
    });
    let n_src = sources.len() as u64;
    let expected = n_src * (report.giant_people as u64 - 1) + n_src * report.giant_movies as u64;
    Ok(PathLengthStats {
        unreachable: expected - c_pp - c_pm,
        sources: sources.len(),
        sampled,
        ..PathLengthStats::from_sums(sum_pp, c_pp, sum_pm, c_pm)
    })
}

/// Average over all vertices of the edge density among each vertex's
/// neighbors; vertices of degree below 2 contribute 0.
pub fn clustering_coefficient(g: &UndirectedGraph) -> Result<f64, MetricsError> {
    let n = g.vertex_count();
    if n == 0 {
        return Err(MetricsError::EmptyGraph);
    }
    let local = map_indexed(
        n,
        || vec![false; n],
        |mark, v| {
            let nbrs = g.neighbors(v as u32);
            let d = nbrs.len();
            if d < 2 {
                return 0.0;
            }
            for &u in nbrs {
                mark[u as usize] = true;
            }
            let mut twice_links = 0u64;
            for &u in nbrs {
                twice_links += g.neighbors(u).iter().filter(|&&x| mark[x as usize]).count() as u64;
            }
            for &u in nbrs {
                mark[u as usize] = false;
            }
            twice_links as f64 / (d * (d - 1)) as f64
        },
    );
    Ok(local.iter().sum::<f64>() / n as f64)
}

/// One point of a complementary cumulative degree distribution.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CdfPoint {
    pub degree: usize,
    /// Number of vertices with degree ≥ `degree`, or its base-10 log.
    pub value: f64,
}

/// For each degree present, the number of vertices of at least that degree.
pub fn degree_cdf(dist: &DegreeDistribution, log_scale: bool) -> Vec<CdfPoint> {
    let mut remaining = dist.n();
    let mut out = Vec::new();
    for (k, c) in dist.counts() {
        if remaining > 0 {
            let value = if log_scale {
                (remaining as f64).log10()
            } else {
                remaining as f64
            };
            out.push(CdfPoint { degree: k, value });
        }
        remaining -= c;
    }
    out
}

/// Largest absolute difference over indices where both values are present.
pub fn linf_discrepancy(actual: &[Option<f64>], predicted: &[Option<f64>]) -> Result<f64, MetricsError> {
    if actual.len() != predicted.len() {
        return Err(MetricsError::LengthMismatch(actual.len(), predicted.len()));
    }
    actual
        .iter()
        .zip(predicted)
        .filter_map(|(a, p)| Some((a.as_ref()? - p.as_ref()?).abs()))
        .reduce(f64::max)
        .ok_or(MetricsError::NoDefinedPairs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dataset::{BipartiteRatings, RatingTriple};
    use crate::jumps::{apply_jump, build_recommender_graph, JumpSpec};

    fn complete(n: u32) -> UndirectedGraph {
        UndirectedGraph::from_edges(n as usize, (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v)))).unwrap()
    }

    fn ratings(edges: &[(u64, u64)]) -> BipartiteRatings {
        BipartiteRatings::from_triples(edges.iter().map(|&(p, m)| RatingTriple::new(p, m))).unwrap()
    }

    fn recommender(edges: &[(u64, u64)], w: u32) -> RecommenderGraph {
        let g = ratings(edges);
        let gs = apply_jump(&g, JumpSpec::hammock(w).unwrap()).unwrap();
        build_recommender_graph(&g, &gs).unwrap()
    }

    #[test]
    fn complete_graph_measures() {
        let k5 = complete(5);
        let d = undirected_degree_distribution(&k5, false).unwrap();
        assert_eq!(d.p(4), 1.0);
        let stats = average_path_length(&k5, &SourcePolicy::default()).unwrap();
        assert_eq!(stats.l_pp, Some(1.0));
        assert_eq!(clustering_coefficient(&k5).unwrap(), 1.0);
    }

    #[test]
    fn star_distribution() {
        let star = UndirectedGraph::from_edges(5, (1..5).map(|v| (0, v))).unwrap();
        let d = undirected_degree_distribution(&star, false).unwrap();
        assert_eq!(d.p(1), 4.0 / 5.0);
        assert_eq!(d.p(4), 1.0 / 5.0);
        assert_eq!(clustering_coefficient(&star).unwrap(), 0.0);
    }

    #[test]
    fn path_of_three() {
        let g = UndirectedGraph::from_edges(3, [(0, 1), (1, 2)]).unwrap();
        let stats = average_path_length(&g, &SourcePolicy::default()).unwrap();
        assert_eq!(stats.l_pp, Some(4.0 / 3.0));
        assert_eq!(stats.c_pp, 6);
    }

    #[test]
    fn singleton_giant_has_no_length() {
        let g = UndirectedGraph::empty(3);
        assert_eq!(
            average_path_length(&g, &SourcePolicy::default()),
            Err(MetricsError::UndefinedLength(1))
        );
    }

    #[test]
    fn empty_graph_errors() {
        let g = UndirectedGraph::empty(0);
        assert_eq!(undirected_degree_distribution(&g, true), Err(MetricsError::EmptyGraph));
        assert_eq!(clustering_coefficient(&g), Err(MetricsError::EmptyGraph));
    }

    #[test]
    fn two_disjoint_pairs_are_two_components() {
        let gr = recommender(&[(1, 10), (2, 10), (3, 11), (4, 11)], 1);
        let report = connected_components(&gr);
        assert_eq!(report.component_count(), 2);
        assert_eq!(report.components[0], ComponentSize { people: 2, movies: 1 });
        assert_eq!(report.isolated_people, 0);
        assert!(!report.shattered);
    }

    #[test]
    fn isolated_person_is_its_own_component() {
        // person 3 shares only one movie with anyone, so w=2 isolates them
        let gr = recommender(&[(1, 10), (1, 11), (2, 10), (2, 11), (3, 11), (3, 12)], 2);
        let report = connected_components(&gr);
        assert_eq!(report.component_count(), 2);
        assert_eq!(report.components[0], ComponentSize { people: 2, movies: 2 });
        assert_eq!(report.components[1], ComponentSize { people: 1, movies: 1 });
        assert_eq!(report.isolated_people, 1);
        assert!(report.shattered);
    }

    #[test]
    fn toy_joint_distribution() {
        let gr = recommender(&[(1, 10), (2, 10)], 1);
        let jd = joint_degree_distribution(&gr, true).unwrap();
        assert_eq!(jd.n(), 3);
        assert_eq!(jd.count(2, 0), 1);
        assert_eq!(jd.count(1, 2), 2);
    }

    #[test]
    fn toy_recommender_lengths() {
        let gr = recommender(&[(1, 10), (2, 10)], 1);
        let s = measure_l_r_l_pm(&gr, &SourcePolicy::default()).unwrap();
        assert_eq!((s.l_pp, s.l_pm, s.l_r), (Some(1.0), Some(1.0), Some(1.0)));
        assert_eq!(s.unreachable, 0);
    }

    #[test]
    fn chain_recommender_lengths() {
        // p1 -(m1)- p2 -(m2)- p3
        let gr = recommender(&[(1, 1), (2, 1), (2, 2), (3, 2)], 1);
        let s = measure_l_r_l_pm(&gr, &SourcePolicy::default()).unwrap();
        assert_eq!(s.c_pp + s.c_pm, 12);
        assert_eq!(s.l_pp, Some(4.0 / 3.0));
        assert_eq!(s.l_pm, Some(4.0 / 3.0));
        assert_eq!(s.l_r, Some(4.0 / 3.0));
    }

    #[test]
    fn cdf_examples() {
        let d = DegreeDistribution::from_counts([(1, 5), (2, 5)]);
        let cdf = degree_cdf(&d, false);
        assert_eq!(
            cdf,
            vec![CdfPoint { degree: 1, value: 10.0 }, CdfPoint { degree: 2, value: 5.0 }]
        );
        let lone = DegreeDistribution::from_degrees([0]);
        assert_eq!(degree_cdf(&lone, false), vec![CdfPoint { degree: 0, value: 1.0 }]);
        assert_eq!(degree_cdf(&d, true)[0].value, 1.0);
    }

    #[test]
    fn linf_examples() {
        let v = |xs: &[f64]| xs.iter().map(|&x| Some(x)).collect::<Vec<_>>();
        assert_eq!(linf_discrepancy(&v(&[1.0, 2.0, 3.0]), &v(&[1.0, 2.0, 3.0])), Ok(0.0));
        assert_eq!(linf_discrepancy(&v(&[1.0, 2.0, 3.0]), &v(&[1.0, 4.0, 3.0])), Ok(2.0));
        assert_eq!(
            linf_discrepancy(&[Some(1.0), None], &[None, Some(3.0)]),
            Err(MetricsError::NoDefinedPairs)
        );
        assert_eq!(
            linf_discrepancy(&[Some(1.0)], &[]),
            Err(MetricsError::LengthMismatch(1, 0))
        );
    }

    #[test]
    fn sampling_is_seeded_and_bounded() {
        let candidates: Vec<u32> = (0..100).collect();
        let policy = SourcePolicy {
            exact_limit: 10,
            sample_size: 7,
            seed: 3,
        };
        let (a, sampled) = policy.choose(&candidates);
        assert!(sampled);
        assert_eq!(a.len(), 7);
        assert_eq!(a, policy.choose(&candidates).0);
        assert!(a.windows(2).all(|w| w[0] < w[1]));
    }
}
