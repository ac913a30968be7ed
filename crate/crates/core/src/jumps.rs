//! Jumps: rules that connect two people through the movies they both rated.
//!
//! A jump turns the bipartite ratings graph into an undirected social
//! network over people. Re-attaching every person's rated movies as sinks
//! gives the directed recommender graph.

use std::io::{self, Write};

use thiserror::Error;

use crate::dataset::BipartiteRatings;
use crate::graph::UndirectedGraph;
use crate::parallel::map_indexed;

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum JumpError {
    #[error("hammock width must be at least 1")]
    ZeroWidth,
    #[error("unknown person id {0}")]
    UnknownPerson(u64),
    #[error("co-rating count needs two distinct people, got {0} twice")]
    SamePerson(u64),
    #[error("social graph people do not match the ratings graph")]
    Inconsistent,
}

/// Which pairs of people are joined by a single jump.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum JumpSpec {
    /// At least one movie in common.
    Skip,
    /// At least `width` movies in common.
    Hammock { width: u32 },
}

impl JumpSpec {
    pub fn hammock(width: u32) -> Result<Self, JumpError> {
        if width == 0 {
            return Err(JumpError::ZeroWidth);
        }
        Ok(JumpSpec::Hammock { width })
    }

    /// Minimum number of co-rated movies; a skip is a hammock of width 1.
    pub fn width(&self) -> u32 {
        match *self {
            JumpSpec::Skip => 1,
            JumpSpec::Hammock { width } => width,
        }
    }

    pub fn validate(&self) -> Result<(), JumpError> {
        if self.width() == 0 {
            return Err(JumpError::ZeroWidth);
        }
        Ok(())
    }
}

/// Undirected person graph induced by a jump. Vertex `i` is person
/// `person_ids()[i]`, matching the dense indices of the source ratings.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SocialGraph {
    person_ids: Vec<u64>,
    graph: UndirectedGraph,
}

impl SocialGraph {
    pub fn new(person_ids: Vec<u64>, graph: UndirectedGraph) -> Self {
        assert_eq!(person_ids.len(), graph.vertex_count());
        Self { person_ids, graph }
    }

    pub fn person_ids(&self) -> &[u64] {
        &self.person_ids
    }

    pub fn graph(&self) -> &UndirectedGraph {
        &self.graph
    }

    pub fn n_people(&self) -> usize {
        self.person_ids.len()
    }

    pub fn edge_count(&self) -> usize {
        self.graph.edge_count()
    }

    /// Edges as pairs of original person ids, smaller dense index first.
    pub fn edge_ids(&self) -> impl Iterator<Item = (u64, u64)> + '_ {
        self.graph
            .edges()
            .map(|(u, v)| (self.person_ids[u as usize], self.person_ids[v as usize]))
    }
}

/// Number of movies rated by both people.
pub fn common_artifacts_count(g: &BipartiteRatings, p1: u64, p2: u64) -> Result<usize, JumpError> {
    if p1 == p2 {
        return Err(JumpError::SamePerson(p1));
    }
    let a = g.person_index(p1).ok_or(JumpError::UnknownPerson(p1))?;
    let b = g.person_index(p2).ok_or(JumpError::UnknownPerson(p2))?;
    Ok(sorted_intersection_len(g.movies_of(a), g.movies_of(b)))
}

fn sorted_intersection_len(a: &[u32], b: &[u32]) -> usize {
    let (mut i, mut j, mut n) = (0, 0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                n += 1;
                i += 1;
                j += 1;
            }
        }
    }
    n
}

struct RowScratch {
    counts: Vec<u32>,
    touched: Vec<u32>,
}

impl RowScratch {
    fn new(n_people: usize) -> Self {
        Self {
            counts: vec![0; n_people],
            touched: Vec::new(),
        }
    }
}

/// Co-rating counts between person `p` and every later person `q > p`
/// sharing at least one movie, sorted by `q`.
fn co_rating_row(g: &BipartiteRatings, p: u32, s: &mut RowScratch) -> Vec<(u32, u32)> {
    for &m in g.movies_of(p) {
        let raters = g.raters_of(m);
        let start = raters.partition_point(|&q| q <= p);
        for &q in &raters[start..] {
            let c = &mut s.counts[q as usize];
            if *c == 0 {
                s.touched.push(q);
            }
            *c += 1;
        }
    }
    s.touched.sort_unstable();
    let row = s
        .touched
        .iter()
        .map(|&q| (q, std::mem::take(&mut s.counts[q as usize])))
        .collect();
    s.touched.clear();
    row
}

/// Assembles a symmetric sorted adjacency from per-person upper rows.
fn adjacency_from_rows<'a, I>(n: usize, rows: I) -> UndirectedGraph
where
    I: Iterator<Item = (u32, &'a [(u32, u32)])>,
{
    let mut adj: Vec<Vec<u32>> = vec![Vec::new(); n];
    // rows arrive in ascending p, so every list stays sorted: lower
    // neighbours are pushed before a vertex's own (higher) row
    for (p, row) in rows {
        for &(q, _) in row {
            adj[p as usize].push(q);
            adj[q as usize].push(p);
        }
    }
    UndirectedGraph::from_sorted_adjacency(adj)
}

/// Pairwise co-rating counts for every pair of people with at least one
/// movie in common. Build once, then threshold for any hammock width.
#[derive(Debug, Clone)]
pub struct CoRatingIndex {
    person_ids: Vec<u64>,
    rows: Vec<Vec<(u32, u32)>>,
}

impl CoRatingIndex {
    pub fn build(g: &BipartiteRatings) -> Self {
        let n = g.n_people();
        let rows = map_indexed(n, || RowScratch::new(n), |s, p| co_rating_row(g, p as u32, s));
        Self {
            person_ids: g.people().to_vec(),
            rows,
        }
    }

    /// Number of unordered pairs sharing at least one movie.
    pub fn pair_count(&self) -> usize {
        self.rows.iter().map(Vec::len).sum()
    }

    /// Largest co-rating count over all pairs.
    pub fn max_count(&self) -> u32 {
        self.rows
            .iter()
            .flat_map(|r| r.iter().map(|&(_, c)| c))
            .max()
            .unwrap_or(0)
    }

    pub fn social_graph(&self, spec: JumpSpec) -> SocialGraph {
        let w = spec.width();
        let filtered: Vec<Vec<(u32, u32)>> = self
            .rows
            .iter()
            .map(|r| r.iter().copied().filter(|&(_, c)| c >= w).collect())
            .collect();
        let graph = adjacency_from_rows(
            self.person_ids.len(),
            filtered.iter().enumerate().map(|(p, r)| (p as u32, r.as_slice())),
        );
        SocialGraph::new(self.person_ids.clone(), graph)
    }
}

/// Social network induced by `spec`: an edge joins two people iff they
/// share at least `spec.width()` rated movies. People without any edge
/// remain as isolated vertices.
pub fn apply_jump(g: &BipartiteRatings, spec: JumpSpec) -> Result<SocialGraph, JumpError> {
    spec.validate()?;
    let n = g.n_people();
    let w = spec.width();
    let rows = map_indexed(
        n,
        || RowScratch::new(n),
        |s, p| {
            let mut row = co_rating_row(g, p as u32, s);
            row.retain(|&(_, c)| c >= w);
            row
        },
    );
    let graph = adjacency_from_rows(n, rows.iter().enumerate().map(|(p, r)| (p as u32, r.as_slice())));
    Ok(SocialGraph::new(g.people().to_vec(), graph))
}

/// Directed "half bow-tie" graph: every social edge in both directions plus
/// one arc from each person to every movie they rated. Movies are sinks.
///
/// Vertices `0..n_people` are people (dense person indices) and
/// `n_people..n_people + n_movies` are movies.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RecommenderGraph {
    person_ids: Vec<u64>,
    movie_ids: Vec<u64>,
    /// Per person: person targets (sorted) followed by movie targets (sorted).
    out: Vec<Vec<u32>>,
    social_degree: Vec<u32>,
    in_degree: Vec<u32>,
    person_arcs: usize,
    movie_arcs: usize,
}

impl RecommenderGraph {
    pub fn n_people(&self) -> usize {
        self.person_ids.len()
    }

    pub fn n_movies(&self) -> usize {
        self.movie_ids.len()
    }

    pub fn vertex_count(&self) -> usize {
        self.n_people() + self.n_movies()
    }

    pub fn person_ids(&self) -> &[u64] {
        &self.person_ids
    }

    pub fn movie_ids(&self) -> &[u64] {
        &self.movie_ids
    }

    pub fn is_movie(&self, v: u32) -> bool {
        v as usize >= self.n_people()
    }

    pub fn out_neighbors(&self, v: u32) -> &[u32] {
        match self.out.get(v as usize) {
            Some(list) => list,
            None => &[],
        }
    }

    /// Person-to-person part of a person's out-list.
    pub fn social_neighbors(&self, p: u32) -> &[u32] {
        &self.out[p as usize][..self.social_degree[p as usize] as usize]
    }

    /// Movie part of a person's out-list.
    pub fn rated_movies(&self, p: u32) -> &[u32] {
        &self.out[p as usize][self.social_degree[p as usize] as usize..]
    }

    pub fn out_degree(&self, v: u32) -> usize {
        self.out_neighbors(v).len()
    }

    pub fn in_degree(&self, v: u32) -> usize {
        self.in_degree[v as usize] as usize
    }

    /// Social degree of person `p` (its number of person arcs out).
    pub fn social_degree(&self, p: u32) -> usize {
        self.social_degree[p as usize] as usize
    }

    pub fn person_arc_count(&self) -> usize {
        self.person_arcs
    }

    pub fn movie_arc_count(&self) -> usize {
        self.movie_arcs
    }

    /// All arcs as `(src, dst)` vertex pairs, people first.
    pub fn arcs(&self) -> impl Iterator<Item = (u32, u32)> + '_ {
        self.out
            .iter()
            .enumerate()
            .flat_map(|(v, list)| list.iter().map(move |&u| (v as u32, u)))
    }
}

/// Builds the recommender graph from the ratings and the social graph
/// induced from them.
pub fn build_recommender_graph(g: &BipartiteRatings, gs: &SocialGraph) -> Result<RecommenderGraph, JumpError> {
    if gs.person_ids() != g.people() {
        return Err(JumpError::Inconsistent);
    }
    let np = g.n_people();
    let nm = g.n_movies();
    let mut in_degree = vec![0u32; np + nm];
    let mut social_degree = Vec::with_capacity(np);
    let mut out = Vec::with_capacity(np);
    for p in 0..np as u32 {
        let social = gs.graph().neighbors(p);
        let mut list = Vec::with_capacity(social.len() + g.person_degree(p));
        list.extend_from_slice(social);
        list.extend(g.movies_of(p).iter().map(|&m| np as u32 + m));
        for &v in &list {
            in_degree[v as usize] += 1;
        }
        social_degree.push(social.len() as u32);
        out.push(list);
    }
    Ok(RecommenderGraph {
        person_ids: g.people().to_vec(),
        movie_ids: g.movies().to_vec(),
        out,
        social_degree,
        in_degree,
        person_arcs: 2 * gs.edge_count(),
        movie_arcs: g.edge_count(),
    })
}

/// Writes `p1,p2` rows (original person ids).
pub fn write_social_edges<W: Write>(gs: &SocialGraph, mut out: W) -> io::Result<()> {
    writeln!(out, "p1,p2")?;
    for (a, b) in gs.edge_ids() {
        writeln!(out, "{a},{b}")?;
    }
    Ok(())
}

/// Writes `src,dst,kind` rows; `kind` is `person` for social arcs and
/// `movie` for rating arcs (then `dst` is a movie id).
pub fn write_recommender_arcs<W: Write>(gr: &RecommenderGraph, mut out: W) -> io::Result<()> {
    writeln!(out, "src,dst,kind")?;
    let np = gr.n_people() as u32;
    for (s, d) in gr.arcs() {
        let src = gr.person_ids[s as usize];
        if d < np {
            writeln!(out, "{src},{},person", gr.person_ids[d as usize])?;
        } else {
            writeln!(out, "{src},{},movie", gr.movie_ids[(d - np) as usize])?;
        }
    }
    Ok(())
}
