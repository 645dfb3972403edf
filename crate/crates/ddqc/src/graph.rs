//! Immutable simple undirected graph.
//!
//! Construction sanitizes its input: self-loops and duplicate edges are
//! dropped and counted, and every surviving edge appears in both endpoints'
//! neighbor lists. Once built, a [`Graph`] never changes, so it is safe to
//! share across threads.

use crate::error::{Error, Result};

/// Dense node identifier in `0..node_count`.
pub type NodeId = u32;

/// Counts of input anomalies removed while building a [`Graph`].
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct SanitizeStats {
    /// Self-loop entries dropped.
    pub loops_dropped: usize,
    /// Repeated edges (including directed duplicates of an undirected edge) dropped.
    pub duplicates_dropped: usize,
}

impl SanitizeStats {
    pub fn is_clean(&self) -> bool {
        self.loops_dropped == 0 && self.duplicates_dropped == 0
    }
}

/// Immutable simple undirected graph over dense integer node ids.
#[derive(Debug, Clone)]
pub struct Graph {
    adjacency: Vec<Vec<NodeId>>,
    edge_count: usize,
}

impl Graph {
    /// Builds a graph from an edge list, dropping loops and duplicates.
    ///
    /// Node ids must already be dense in `0..node_count`; nodes that appear
    /// in no edge stay as isolated degree-0 nodes.
    pub fn sanitized<I>(node_count: usize, edges: I) -> Result<(Graph, SanitizeStats)>
    where
        I: IntoIterator<Item = (NodeId, NodeId)>,
    {
        let mut adjacency: Vec<Vec<NodeId>> = vec![Vec::new(); node_count];
        let mut stats = SanitizeStats::default();
        let mut edge_count = 0usize;

        for (u, v) in edges {
            let (u, v) = (u as usize, v as usize);
            if u >= node_count || v >= node_count {
                return Err(Error::Domain(format!(
                    "edge ({u}, {v}) references a node outside 0..{node_count}"
                )));
            }
            if u == v {
                stats.loops_dropped += 1;
                continue;
            }
            adjacency[u].push(v as NodeId);
            edge_count += 1;
        }

        // Deduplicate symmetrically: mirror every entry, then sort + dedup.
        for u in 0..node_count {
            let mut i = 0;
            while i < adjacency[u].len() {
                let v = adjacency[u][i] as usize;
                if v > u || !adjacency[v].contains(&(u as NodeId)) {
                    adjacency[v].push(u as NodeId);
                }
                i += 1;
            }
        }
        let mut kept = 0usize;
        for list in adjacency.iter_mut() {
            list.sort_unstable();
            list.dedup();
            kept += list.len();
        }
        debug_assert_eq!(kept % 2, 0);
        let kept_edges = kept / 2;
        stats.duplicates_dropped = edge_count - kept_edges;

        Ok((
            Graph {
                adjacency,
                edge_count: kept_edges,
            },
            stats,
        ))
    }

    /// Builds a graph from an edge list, discarding the sanitize report.
    pub fn from_edges<I>(node_count: usize, edges: I) -> Result<Graph>
    where
        I: IntoIterator<Item = (NodeId, NodeId)>,
    {
        Ok(Self::sanitized(node_count, edges)?.0)
    }

    pub fn node_count(&self) -> usize {
        self.adjacency.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    pub fn degree(&self, v: NodeId) -> usize {
        self.adjacency[v as usize].len()
    }

    /// Sorted neighbor list of `v`.
    pub fn neighbors(&self, v: NodeId) -> &[NodeId] {
        &self.adjacency[v as usize]
    }

    pub fn has_edge(&self, u: NodeId, v: NodeId) -> bool {
        self.adjacency[u as usize].binary_search(&v).is_ok()
    }

    /// Degree of every node, indexed by node id.
    pub fn degree_sequence(&self) -> Vec<usize> {
        self.adjacency.iter().map(Vec::len).collect()
    }

    /// Iterates each undirected edge once, as `(u, v)` with `u < v`,
    /// in ascending lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (NodeId, NodeId)> + '_ {
        self.adjacency.iter().enumerate().flat_map(|(u, nbrs)| {
            let u = u as NodeId;
            nbrs.iter()
                .copied()
                .filter(move |&v| u < v)
                .map(move |v| (u, v))
        })
    }
}

/// Incremental builder used by the generators: collects edges into per-node
/// sets so membership checks stay cheap, then freezes into a [`Graph`].
#[derive(Debug)]
pub(crate) struct GraphBuilder {
    adjacency: Vec<Vec<NodeId>>,
    edge_count: usize,
}

impl GraphBuilder {
    pub fn new(node_count: usize) -> Self {
        GraphBuilder {
            adjacency: vec![Vec::new(); node_count],
            edge_count: 0,
        }
    }

    pub fn degree(&self, v: NodeId) -> usize {
        self.adjacency[v as usize].len()
    }

    pub fn has_edge(&self, u: NodeId, v: NodeId) -> bool {
        let (a, b) = if self.adjacency[u as usize].len() <= self.adjacency[v as usize].len() {
            (u, v)
        } else {
            (v, u)
        };
        self.adjacency[a as usize].contains(&b)
    }

    /// Adds the undirected edge `{u, v}`. Returns false for loops and
    /// duplicates, which are ignored.
    pub fn add_edge(&mut self, u: NodeId, v: NodeId) -> bool {
        if u == v || self.has_edge(u, v) {
            return false;
        }
        self.adjacency[u as usize].push(v);
        self.adjacency[v as usize].push(u);
        self.edge_count += 1;
        true
    }

    /// Removes the undirected edge `{u, v}` if present.
    pub fn remove_edge(&mut self, u: NodeId, v: NodeId) -> bool {
        let pos = self.adjacency[u as usize].iter().position(|&x| x == v);
        match pos {
            Some(i) => {
                self.adjacency[u as usize].swap_remove(i);
                let j = self.adjacency[v as usize]
                    .iter()
                    .position(|&x| x == u)
                    .expect("adjacency out of sync");
                self.adjacency[v as usize].swap_remove(j);
                self.edge_count -= 1;
                true
            }
            None => false,
        }
    }

    pub fn build(mut self) -> Graph {
        for list in self.adjacency.iter_mut() {
            list.sort_unstable();
        }
        Graph {
            adjacency: self.adjacency,
            edge_count: self.edge_count,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sanitizes_loops_and_duplicates() {
        let edges = vec![(0, 1), (1, 0), (1, 2), (2, 2), (1, 2), (0, 1)];
        let (g, stats) = Graph::sanitized(3, edges).unwrap();
        assert_eq!(g.node_count(), 3);
        assert_eq!(g.edge_count(), 2);
        assert_eq!(stats.loops_dropped, 1);
        assert_eq!(stats.duplicates_dropped, 3);
        assert!(g.has_edge(0, 1));
        assert!(g.has_edge(2, 1));
        assert!(!g.has_edge(0, 2));
    }

    #[test]
    fn adjacency_is_symmetric_and_sorted() {
        let (g, _) = Graph::sanitized(4, vec![(3, 1), (3, 0), (2, 3)]).unwrap();
        assert_eq!(g.neighbors(3), &[0, 1, 2]);
        for (u, v) in g.edges() {
            assert!(g.neighbors(v).contains(&u));
            assert!(u < v);
        }
    }

    #[test]
    fn isolated_nodes_survive_when_declared() {
        let g = Graph::from_edges(5, vec![(0, 1)]).unwrap();
        assert_eq!(g.node_count(), 5);
        assert_eq!(g.degree(4), 0);
    }

    #[test]
    fn out_of_range_edge_is_rejected() {
        assert!(Graph::from_edges(2, vec![(0, 5)]).is_err());
    }

    #[test]
    fn builder_round_trip() {
        let mut b = GraphBuilder::new(4);
        assert!(b.add_edge(0, 1));
        assert!(!b.add_edge(1, 0));
        assert!(!b.add_edge(2, 2));
        assert!(b.add_edge(2, 3));
        assert!(b.remove_edge(2, 3));
        let g = b.build();
        assert_eq!(g.edge_count(), 1);
        assert!(g.has_edge(0, 1));
    }
}
