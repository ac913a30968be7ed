//! Simple undirected graph over dense `u32` vertex indices.
//!
//! Neighbor lists are kept sorted so membership tests are a binary search
//! and iteration order is deterministic.

use thiserror::Error;

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("vertex {vertex} out of range for graph with {n} vertices")]
    VertexOutOfRange { vertex: u32, n: usize },
    #[error("self-loop at vertex {0}")]
    SelfLoop(u32),
    #[error("parallel edge {0}-{1}")]
    ParallelEdge(u32, u32),
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct UndirectedGraph {
    adj: Vec<Vec<u32>>,
    edges: usize,
}

impl UndirectedGraph {
    /// Graph with `n` vertices and no edges.
    pub fn empty(n: usize) -> Self {
        Self {
            adj: vec![Vec::new(); n],
            edges: 0,
        }
    }

    /// Builds a simple graph, rejecting self-loops and repeated edges.
    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = (u32, u32)>,
    {
        let mut adj = vec![Vec::new(); n];
        let mut count = 0;
        for (u, v) in edges {
            for x in [u, v] {
                if x as usize >= n {
                    return Err(GraphError::VertexOutOfRange { vertex: x, n });
                }
            }
            if u == v {
                return Err(GraphError::SelfLoop(u));
            }
            adj[u as usize].push(v);
            adj[v as usize].push(u);
            count += 1;
        }
        for (u, list) in adj.iter_mut().enumerate() {
            list.sort_unstable();
            if let Some(w) = list.windows(2).find(|w| w[0] == w[1]) {
                return Err(GraphError::ParallelEdge(u as u32, w[0]));
            }
        }
        Ok(Self { adj, edges: count })
    }

    /// Trusted constructor: `adj` must be symmetric, sorted and simple.
    pub(crate) fn from_sorted_adjacency(adj: Vec<Vec<u32>>) -> Self {
        let degree_sum: usize = adj.iter().map(Vec::len).sum();
        debug_assert!(degree_sum.is_multiple_of(2));
        Self {
            adj,
            edges: degree_sum / 2,
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.adj.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges
    }

    pub fn degree(&self, v: u32) -> usize {
        self.adj[v as usize].len()
    }

    pub fn neighbors(&self, v: u32) -> &[u32] {
        &self.adj[v as usize]
    }

    pub fn has_edge(&self, u: u32, v: u32) -> bool {
        self.adj[u as usize].binary_search(&v).is_ok()
    }

    /// Each edge once, as `(u, v)` with `u < v`, in ascending order.
    pub fn edges(&self) -> impl Iterator<Item = (u32, u32)> + '_ {
        self.adj.iter().enumerate().flat_map(|(u, list)| {
            let u = u as u32;
            list.iter().copied().filter(move |&v| v > u).map(move |v| (u, v))
        })
    }

    pub(crate) fn add_edge_unchecked(&mut self, u: u32, v: u32) {
        let a = &mut self.adj[u as usize];
        let pos = a.binary_search(&v).unwrap_err();
        a.insert(pos, v);
        let b = &mut self.adj[v as usize];
        let pos = b.binary_search(&u).unwrap_err();
        b.insert(pos, u);
        self.edges += 1;
    }

    pub(crate) fn remove_edge_unchecked(&mut self, u: u32, v: u32) {
        let a = &mut self.adj[u as usize];
        let pos = a.binary_search(&v).expect("edge present");
        a.remove(pos);
        let b = &mut self.adj[v as usize];
        let pos = b.binary_search(&u).expect("edge present");
        b.remove(pos);
        self.edges -= 1;
    }

    /// Subgraph induced by `vertices` (which must be sorted and distinct).
    /// Vertex `i` of the result corresponds to `vertices[i]`.
    pub fn induced_subgraph(&self, vertices: &[u32]) -> UndirectedGraph {
        debug_assert!(vertices.windows(2).all(|w| w[0] < w[1]));
        let mut local = vec![u32::MAX; self.adj.len()];
        for (i, &v) in vertices.iter().enumerate() {
            local[v as usize] = i as u32;
        }
        let adj = vertices
            .iter()
            .map(|&v| {
                // ascending order is preserved because `local` is monotone on `vertices`
                self.adj[v as usize]
                    .iter()
                    .filter_map(|&u| {
                        let l = local[u as usize];
                        (l != u32::MAX).then_some(l)
                    })
                    .collect()
            })
            .collect();
        Self::from_sorted_adjacency(adj)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_loops_and_duplicates() {
        assert_eq!(UndirectedGraph::from_edges(3, [(0, 0)]), Err(GraphError::SelfLoop(0)));
        assert_eq!(
            UndirectedGraph::from_edges(3, [(0, 1), (1, 0)]),
            Err(GraphError::ParallelEdge(0, 1))
        );
        assert!(matches!(
            UndirectedGraph::from_edges(2, [(0, 2)]),
            Err(GraphError::VertexOutOfRange { .. })
        ));
    }

    #[test]
    fn induced_subgraph_keeps_internal_edges() {
        let g = UndirectedGraph::from_edges(5, [(0, 1), (1, 2), (2, 3), (3, 4), (0, 4)]).unwrap();
        let sub = g.induced_subgraph(&[0, 1, 4]);
        assert_eq!(sub.vertex_count(), 3);
        assert_eq!(sub.edges().collect::<Vec<_>>(), vec![(0, 1), (0, 2)]);
    }

    #[test]
    fn add_and_remove_keep_lists_sorted() {
        let mut g = UndirectedGraph::empty(4);
        g.add_edge_unchecked(2, 0);
        g.add_edge_unchecked(1, 0);
        g.add_edge_unchecked(3, 0);
        assert_eq!(g.neighbors(0), &[1, 2, 3]);
        g.remove_edge_unchecked(0, 2);
        assert_eq!(g.neighbors(0), &[1, 3]);
        assert_eq!(g.edge_count(), 2);
        assert!(!g.has_edge(2, 0));
    }
}
