//! Brute-force reference implementations and the equivalence checks built
//! on them. Shared by the `oracles` and `acceptance` targets.

use std::collections::{BTreeMap, BTreeSet};

use hammock_core::dataset::{BipartiteRatings, RatingTriple};
use hammock_core::graph::UndirectedGraph;
use hammock_core::jumps::{apply_jump, build_recommender_graph, CoRatingIndex, JumpSpec};
use hammock_core::metrics::{average_path_length, measure_l_r_l_pm, ComponentSource, SourcePolicy};
use proptest::prelude::*;
use proptest::test_runner::TestCaseError;

pub const CASES: u32 = 128;

/// Random ratings over people `1..=np` and movies `1..=nm`, all kept as
/// vertices even when unrated.
pub fn bipartite(max_people: u64, max_movies: u64, max_edges: usize) -> impl Strategy<Value = BipartiteRatings> {
    (1..=max_people, 1..=max_movies).prop_flat_map(move |(np, nm)| {
        prop::collection::vec((1..=np, 1..=nm), 1..=max_edges).prop_map(move |edges| {
            BipartiteRatings::from_parts(1..=np, 1..=nm, edges.into_iter().map(|(p, m)| RatingTriple::new(p, m)))
                .unwrap()
        })
    })
}

/// Sparse random simple graphs with up to `max_n` vertices.
pub fn undirected(max_n: usize) -> impl Strategy<Value = UndirectedGraph> {
    (1..=max_n, 0.0f64..0.15, any::<u64>()).prop_map(|(n, density, seed)| {
        // a cheap deterministic hash decides each pair
        let mut edges = Vec::new();
        for u in 0..n as u64 {
            for v in u + 1..n as u64 {
                let mut z = seed ^ (u << 32 | v);
                z = (z ^ (z >> 33)).wrapping_mul(0xff51_afd7_ed55_8ccd);
                z = (z ^ (z >> 33)).wrapping_mul(0xc4ce_b9fe_1a85_ec53);
                z ^= z >> 33;
                if (z as f64 / u64::MAX as f64) < density {
                    edges.push((u as u32, v as u32));
                }
            }
        }
        UndirectedGraph::from_edges(n, edges).unwrap()
    })
}

pub fn movie_sets(g: &BipartiteRatings) -> BTreeMap<u64, BTreeSet<u64>> {
    let mut sets: BTreeMap<u64, BTreeSet<u64>> = g.people().iter().map(|&p| (p, BTreeSet::new())).collect();
    for t in g.ratings() {
        sets.get_mut(&t.person_id).unwrap().insert(t.movie_id);
    }
    sets
}

fn brute_force_hammock(g: &BipartiteRatings, w: usize) -> BTreeSet<(u64, u64)> {
    let sets = movie_sets(g);
    let mut out = BTreeSet::new();
    for (a, ma) in &sets {
        for (b, mb) in sets.range(a + 1..) {
            if ma.intersection(mb).count() >= w {
                out.insert((*a, *b));
            }
        }
    }
    out
}

const INF: u32 = u32::MAX / 4;

/// All-pairs hop counts over an arc list.
fn floyd_warshall(n: usize, arcs: impl Iterator<Item = (u32, u32)>) -> Vec<Vec<u32>> {
    let mut d = vec![vec![INF; n]; n];
    for (i, row) in d.iter_mut().enumerate() {
        row[i] = 0;
    }
    for (a, b) in arcs {
        d[a as usize][b as usize] = 1;
    }
    for k in 0..n {
        let via_k = d[k].clone();
        for row in d.iter_mut() {
            let dik = row[k];
            if dik == INF {
                continue;
            }
            for (dij, &dkj) in row.iter_mut().zip(&via_k) {
                *dij = (*dij).min(dik + dkj);
            }
        }
    }
    d
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        Self {
            parent: (0..n).collect(),
        }
    }

    fn find(&mut self, x: usize) -> usize {
        let mut r = x;
        while self.parent[r] != r {
            r = self.parent[r];
        }
        let mut x = x;
        while self.parent[x] != r {
            let next = self.parent[x];
            self.parent[x] = r;
            x = next;
        }
        r
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent[ra.max(rb)] = ra.min(rb);
        }
    }
}

/// Vertex groups as a set of sorted member lists.
fn partition(labels: impl Iterator<Item = usize>) -> BTreeSet<Vec<usize>> {
    let mut groups: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for (v, l) in labels.enumerate() {
        groups.entry(l).or_default().push(v);
    }
    groups.into_values().collect()
}

pub fn check_hammock(g: &BipartiteRatings, w: usize) -> Result<(), TestCaseError> {
    let expected = brute_force_hammock(g, w);
    let spec = JumpSpec::hammock(w as u32).unwrap();
    let direct: BTreeSet<(u64, u64)> = apply_jump(g, spec).unwrap().edge_ids().collect();
    prop_assert_eq!(&direct, &expected);
    let indexed: BTreeSet<(u64, u64)> = CoRatingIndex::build(g).social_graph(spec).edge_ids().collect();
    prop_assert_eq!(&indexed, &expected);
    Ok(())
}

pub fn check_undirected_lengths(g: &UndirectedGraph) -> Result<(), TestCaseError> {
    let n = g.vertex_count();
    let d = floyd_warshall(n, g.edges().flat_map(|(a, b)| [(a, b), (b, a)]));

    // giant: most vertices, then lowest member
    let mut uf = UnionFind::new(n);
    for (a, b) in g.edges() {
        uf.union(a as usize, b as usize);
    }
    let groups = partition((0..n).map(|v| uf.find(v)));
    let giant = groups
        .iter()
        .max_by(|a, b| a.len().cmp(&b.len()).then(b[0].cmp(&a[0])))
        .unwrap();

    match average_path_length(g, &SourcePolicy::default()) {
        Ok(stats) => {
            let mut sum = 0u64;
            let mut pairs = 0u64;
            for &s in giant {
                for &t in giant {
                    if s != t {
                        sum += d[s][t] as u64;
                        pairs += 1;
                    }
                }
            }
            prop_assert_eq!(stats.c_pp, pairs);
            prop_assert_eq!(stats.sum_pp, sum);
            let l = stats.l_pp.unwrap();
            prop_assert!((l - sum as f64 / pairs as f64).abs() < 1e-12);
        }
        Err(_) => prop_assert_eq!(giant.len(), 1),
    }
    Ok(())
}

pub fn check_recommender_lengths(g: &BipartiteRatings, w: u32) -> Result<(), TestCaseError> {
    let gs = apply_jump(g, JumpSpec::hammock(w).unwrap()).unwrap();
    let gr = build_recommender_graph(g, &gs).unwrap();
    let report = gr.component_report();
    let d = floyd_warshall(gr.vertex_count(), gr.arcs());
    let np = gr.n_people() as u32;
    let stats = measure_l_r_l_pm(&gr, &SourcePolicy::default()).unwrap();

    let (mut s_pp, mut c_pp, mut s_pm, mut c_pm, mut unreachable) = (0u64, 0u64, 0u64, 0u64, 0u64);
    for s in report.giant_people_vertices() {
        for t in report.giant_vertices() {
            if s == t {
                continue;
            }
            let dist = d[s as usize][t as usize];
            if dist == INF {
                unreachable += 1;
            } else if t < np {
                s_pp += dist as u64;
                c_pp += 1;
            } else {
                s_pm += dist as u64;
                c_pm += 1;
            }
        }
    }
    prop_assert_eq!(
        (stats.sum_pp, stats.c_pp, stats.sum_pm, stats.c_pm),
        (s_pp, c_pp, s_pm, c_pm)
    );
    prop_assert_eq!(stats.unreachable, unreachable);
    if let Some(l_r) = stats.l_r {
        let mix = stats.l_pp.unwrap_or(0.0) * c_pp as f64 + stats.l_pm.unwrap_or(0.0) * c_pm as f64;
        prop_assert!((l_r * (c_pp + c_pm) as f64 - mix).abs() < 1e-9);
    }
    Ok(())
}

pub fn check_undirected_components(g: &UndirectedGraph) -> Result<(), TestCaseError> {
    let n = g.vertex_count();
    let mut uf = UnionFind::new(n);
    for (a, b) in g.edges() {
        uf.union(a as usize, b as usize);
    }
    let report = g.component_report();
    let ours = partition((0..n as u32).map(|v| report.component_of(v)));
    let oracle = partition((0..n).map(|v| uf.find(v)));
    prop_assert_eq!(&ours, &oracle);
    let mut sizes: Vec<usize> = oracle.iter().map(Vec::len).collect();
    sizes.sort_unstable_by(|a, b| b.cmp(a));
    let reported: Vec<usize> = report.components.iter().map(|c| c.total()).collect();
    prop_assert_eq!(reported, sizes);
    Ok(())
}

pub fn check_recommender_components(g: &BipartiteRatings, w: u32) -> Result<(), TestCaseError> {
    let gs = apply_jump(g, JumpSpec::hammock(w).unwrap()).unwrap();
    let gr = build_recommender_graph(g, &gs).unwrap();
    let np = g.n_people();
    let nm = g.n_movies();

    // people joined by social edges only
    let mut uf = UnionFind::new(np);
    for (a, b) in gs.graph().edges() {
        uf.union(a as usize, b as usize);
    }
    let mut members: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for p in 0..np {
        members.entry(uf.find(p)).or_default().push(p);
    }
    // each movie joins the largest component among its raters, lowest
    // member first on ties; unrated movies stand alone
    let mut labels: Vec<usize> = (0..np).map(|p| uf.find(p)).collect();
    for m in 0..nm {
        let best = g
            .raters_of(m as u32)
            .iter()
            .map(|&p| uf.find(p as usize))
            .min_by(|&a, &b| {
                members[&b]
                    .len()
                    .cmp(&members[&a].len())
                    .then(members[&a][0].cmp(&members[&b][0]))
            });
        labels.push(best.unwrap_or(np + m));
    }
    let report = gr.component_report();
    let ours = partition((0..(np + nm) as u32).map(|v| report.component_of(v)));
    let oracle = partition(labels.iter().copied());
    prop_assert_eq!(&ours, &oracle);

    let people_total: usize = report.components.iter().map(|c| c.people).sum();
    let movie_total: usize = report.components.iter().map(|c| c.movies).sum();
    prop_assert_eq!((people_total, movie_total), (np, nm));
    let isolated = (0..np as u32).filter(|&p| gs.graph().degree(p) == 0).count();
    prop_assert_eq!(report.isolated_people, isolated);
    let shattered = (0..np as u32).all(|p| report.in_giant(p) || gs.graph().degree(p) == 0);
    prop_assert_eq!(report.shattered, shattered);
    Ok(())
}
