//! Simple undirected graphs, hop distances, recognizers and the block/cut
//! decomposition.

use std::collections::VecDeque;
use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};

pub type Vertex = usize;

/// Undirected simple graph on vertices `0..n` with sorted adjacency lists.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    adj: Vec<Vec<Vertex>>,
    edge_count: usize,
}

impl Graph {
    /// Builds a graph from an edge list, rejecting loops, duplicates and
    /// ids outside `0..n`.
    pub fn from_edges(n: usize, edges: &[(Vertex, Vertex)]) -> Result<Self> {
        if n == 0 {
            return Err(Error::EmptyGraph);
        }
        let mut adj = vec![Vec::new(); n];
        for &(u, v) in edges {
            for x in [u, v] {
                if x >= n {
                    return Err(Error::OutOfRange { vertex: x, n });
                }
            }
            if u == v {
                return Err(Error::SelfLoop(u));
            }
            adj[u].push(v);
            adj[v].push(u);
        }
        for (u, list) in adj.iter_mut().enumerate() {
            list.sort_unstable();
            if let Some(w) = list.windows(2).find(|w| w[0] == w[1]) {
                return Err(Error::DuplicateEdge(u.min(w[0]), u.max(w[0])));
            }
        }
        Ok(Self { adj, edge_count: edges.len() })
    }

    pub fn n(&self) -> usize {
        self.adj.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    pub fn neighbors(&self, v: Vertex) -> &[Vertex] {
        &self.adj[v]
    }

    pub fn degree(&self, v: Vertex) -> usize {
        self.adj[v].len()
    }

    pub fn has_edge(&self, u: Vertex, v: Vertex) -> bool {
        self.adj[u].binary_search(&v).is_ok()
    }

    /// Edges as `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (Vertex, Vertex)> + '_ {
        self.adj
            .iter()
            .enumerate()
            .flat_map(|(u, list)| list.iter().filter(move |&&v| u < v).map(move |&v| (u, v)))
    }

    pub fn max_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).max().unwrap_or(0)
    }

    /// Vertices of degree one.
    pub fn leaves(&self) -> Vec<Vertex> {
        (0..self.n()).filter(|&v| self.degree(v) == 1).collect()
    }

    /// Returns the graph with vertex `v` renamed to `perm[v]`.
    pub fn relabel(&self, perm: &[Vertex]) -> Result<Self> {
        let n = self.n();
        let mut seen = vec![false; n];
        if perm.len() != n || perm.iter().any(|&p| p >= n || std::mem::replace(&mut seen[p], true)) {
            return Err(Error::InvalidRange(format!("not a permutation of 0..{n}")));
        }
        let edges: Vec<_> = self.edges().map(|(u, v)| (perm[u], perm[v])).collect();
        Self::from_edges(n, &edges)
    }

    pub fn is_connected(&self) -> bool {
        let mut seen = vec![false; self.n()];
        let mut stack = vec![0];
        seen[0] = true;
        let mut count = 1;
        while let Some(v) = stack.pop() {
            for &w in &self.adj[v] {
                if !seen[w] {
                    seen[w] = true;
                    count += 1;
                    stack.push(w);
                }
            }
        }
        count == self.n()
    }

    pub fn is_tree(&self) -> bool {
        self.edge_count + 1 == self.n() && self.is_connected()
    }

    pub fn is_path_graph(&self) -> bool {
        self.is_tree() && self.max_degree() <= 2
    }

    /// A tree on at least three vertices with one vertex adjacent to all others.
    pub fn is_star_graph(&self) -> bool {
        let n = self.n();
        n >= 3 && self.is_tree() && self.adj.iter().any(|l| l.len() == n - 1)
    }

    /// Unique tree path from `from` to `to`, both ends included.
    pub(crate) fn tree_path(&self, dm: &DistanceMatrix, from: Vertex, to: Vertex) -> Vec<Vertex> {
        let mut path = vec![from];
        let mut cur = from;
        while cur != to {
            let d = dm.get(cur, to);
            cur = *self.adj[cur]
                .iter()
                .find(|&&w| dm.get(w, to) + 1 == d)
                .expect("distance matrix consistent with graph");
            path.push(cur);
        }
        path
    }
}

/// Dense all-pairs hop distances.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DistanceMatrix {
    n: usize,
    dist: Vec<u32>,
}

impl DistanceMatrix {
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, u: Vertex, v: Vertex) -> u32 {
        self.dist[u * self.n + v]
    }

    /// Row `u`: distances from `u` to every vertex.
    #[inline]
    pub fn row(&self, u: Vertex) -> &[u32] {
        &self.dist[u * self.n..(u + 1) * self.n]
    }

    pub fn diameter(&self) -> u32 {
        self.dist.iter().copied().max().unwrap_or(0)
    }
}

/// Breadth-first distances between every ordered pair of vertices.
pub fn all_pairs_distances(g: &Graph) -> Result<DistanceMatrix> {
    let n = g.n();
    let mut dist = vec![u32::MAX; n * n];
    let mut queue = VecDeque::with_capacity(n);
    for s in 0..n {
        let row = &mut dist[s * n..(s + 1) * n];
        row[s] = 0;
        queue.clear();
        queue.push_back(s);
        while let Some(v) = queue.pop_front() {
            let dv = row[v];
            for &w in g.neighbors(v) {
                if row[w] == u32::MAX {
                    row[w] = dv + 1;
                    queue.push_back(w);
                }
            }
        }
        if row.contains(&u32::MAX) {
            return Err(Error::Disconnected);
        }
    }
    Ok(DistanceMatrix { n, dist })
}

/// Maximal biconnected subgraphs together with cut and extreme vertices.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BlockDecomposition {
    /// Each block sorted ascending; blocks sorted by their minimum vertex.
    pub blocks: Vec<Vec<Vertex>>,
    pub cut_vertices: Vec<Vertex>,
    /// Vertices whose closed neighborhood induces a complete graph.
    pub extreme_vertices: Vec<Vertex>,
}

impl BlockDecomposition {
    pub fn is_cut(&self, v: Vertex) -> bool {
        self.cut_vertices.binary_search(&v).is_ok()
    }

    pub fn is_extreme(&self, v: Vertex) -> bool {
        self.extreme_vertices.binary_search(&v).is_ok()
    }
}

const UNSET: usize = usize::MAX;

pub fn block_decomposition(g: &Graph) -> Result<BlockDecomposition> {
    if !g.is_connected() {
        return Err(Error::Disconnected);
    }
    let n = g.n();
    let mut blocks: Vec<Vec<Vertex>> = Vec::new();
    if n == 1 {
        blocks.push(vec![0]);
    } else {
        let mut disc = vec![UNSET; n];
        let mut low = vec![0; n];
        let mut parent = vec![UNSET; n];
        let mut edge_stack: Vec<(Vertex, Vertex)> = Vec::new();
        let mut stack: Vec<(Vertex, usize)> = vec![(0, 0)];
        let mut time = 0;
        disc[0] = 0;
        low[0] = 0;
        while let Some(&mut (v, ref mut next)) = stack.last_mut() {
            if let Some(&w) = g.neighbors(v).get(*next) {
                *next += 1;
                if disc[w] == UNSET {
                    time += 1;
                    disc[w] = time;
                    low[w] = time;
                    parent[w] = v;
                    edge_stack.push((v, w));
                    stack.push((w, 0));
                } else if w != parent[v] && disc[w] < disc[v] {
                    low[v] = low[v].min(disc[w]);
                    edge_stack.push((v, w));
                }
            } else {
                stack.pop();
                if let Some(&(p, _)) = stack.last() {
                    low[p] = low[p].min(low[v]);
                    if low[v] >= disc[p] {
                        let mut block = Vec::new();
                        while let Some(e) = edge_stack.pop() {
                            block.push(e.0);
                            block.push(e.1);
                            if e == (p, v) {
                                break;
                            }
                        }
                        block.sort_unstable();
                        block.dedup();
                        blocks.push(block);
                    }
                }
            }
        }
    }
    blocks.sort();

    let mut membership = vec![0usize; n];
    for b in &blocks {
        for &v in b {
            membership[v] += 1;
        }
    }
    let cut_vertices = (0..n).filter(|&v| membership[v] >= 2).collect();
    let extreme_vertices = (0..n).filter(|&v| closed_neighborhood_is_clique(g, v)).collect();
    Ok(BlockDecomposition { blocks, cut_vertices, extreme_vertices })
}

fn closed_neighborhood_is_clique(g: &Graph, v: Vertex) -> bool {
    let nb = g.neighbors(v);
    nb.iter()
        .enumerate()
        .all(|(i, &a)| nb[i + 1..].iter().all(|&b| g.has_edge(a, b)))
}

/// Why a graph failed the generalized-tree test.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GenTreeRejection {
    Disconnected,
    /// A lone complete graph: gluing needs at least two blocks.
    SingleBlock,
    /// Some block does not induce a complete graph (identified by its
    /// smallest vertex).
    IncompleteBlock { min_vertex: Vertex },
}

impl fmt::Display for GenTreeRejection {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Disconnected => write!(f, "graph is disconnected"),
            Self::SingleBlock => write!(f, "graph has a single block (at least two are required)"),
            Self::IncompleteBlock { min_vertex } => {
                write!(f, "block containing vertex {min_vertex} is not a complete graph")
            }
        }
    }
}

/// Checks that `g` is connected, has at least two blocks and every block is
/// complete.
pub fn check_generalized_tree(g: &Graph) -> std::result::Result<BlockDecomposition, GenTreeRejection> {
    let bd = block_decomposition(g).map_err(|_| GenTreeRejection::Disconnected)?;
    for b in &bd.blocks {
        let complete = b
            .iter()
            .enumerate()
            .all(|(i, &u)| b[i + 1..].iter().all(|&v| g.has_edge(u, v)));
        if !complete {
            return Err(GenTreeRejection::IncompleteBlock { min_vertex: b[0] });
        }
    }
    if bd.blocks.len() < 2 {
        return Err(GenTreeRejection::SingleBlock);
    }
    Ok(bd)
}

pub fn is_generalized_tree(g: &Graph) -> bool {
    check_generalized_tree(g).is_ok()
}

/// Named test instances used throughout the crate and its tests.
pub mod fixtures {
    use super::Graph;

    fn build(n: usize, edges: &[(usize, usize)]) -> Graph {
        Graph::from_edges(n, edges).expect("fixture is a valid graph")
    }

    pub fn path(n: usize) -> Graph {
        let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        build(n, &edges)
    }

    /// `K_{1,t}` with center 0.
    pub fn star(t: usize) -> Graph {
        let edges: Vec<_> = (1..=t).map(|i| (0, i)).collect();
        build(t + 1, &edges)
    }

    pub fn complete(n: usize) -> Graph {
        let edges: Vec<_> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
        build(n, &edges)
    }

    pub fn cycle(n: usize) -> Graph {
        let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        build(n, &edges)
    }

    /// Two adjacent supports 0 and 1, each carrying two leaves.
    pub fn double_star() -> Graph {
        build(6, &[(0, 1), (0, 2), (0, 3), (1, 4), (1, 5)])
    }

    /// Spider with center 0 and the given leg lengths; legs are numbered
    /// consecutively outward.
    pub fn spider(legs: &[usize]) -> Graph {
        let mut edges = Vec::new();
        let mut next = 1;
        for &len in legs {
            let mut prev = 0;
            for _ in 0..len {
                edges.push((prev, next));
                prev = next;
                next += 1;
            }
        }
        build(next, &edges)
    }

    /// Spider with three legs of length two.
    pub fn spider222() -> Graph {
        build(7, &[(0, 1), (1, 2), (0, 3), (3, 4), (0, 5), (5, 6)])
    }

    /// Caterpillar with spine 0-1-2 and two leaves on every spine vertex.
    pub fn cat32() -> Graph {
        build(9, &[(0, 1), (1, 2), (0, 3), (0, 4), (1, 5), (1, 6), (2, 7), (2, 8)])
    }

    /// Center 0 with leaves 1, 2, 3 and tail 0-4-5.
    pub fn comet() -> Graph {
        build(6, &[(0, 1), (0, 2), (0, 3), (0, 4), (4, 5)])
    }

    /// Caterpillar whose spine vertices each carry `leaves` pendant leaves.
    pub fn caterpillar(spine: usize, leaves: usize) -> Graph {
        let mut edges: Vec<_> = (1..spine).map(|i| (i - 1, i)).collect();
        let mut next = spine;
        for s in 0..spine {
            for _ in 0..leaves {
                edges.push((s, next));
                next += 1;
            }
        }
        build(next, &edges)
    }

    /// Triangles {0,1,2} and {2,3,4} sharing vertex 2.
    pub fn bowtie() -> Graph {
        build(5, &[(0, 1), (0, 2), (1, 2), (2, 3), (2, 4), (3, 4)])
    }

    /// Central triangle {0,1,2}; a triangle hangs off each of its vertices.
    pub fn triangle_of_triangles() -> Graph {
        build(
            9,
            &[
                (0, 1), (0, 2), (1, 2),
                (0, 3), (0, 4), (3, 4),
                (1, 5), (1, 6), (5, 6),
                (2, 7), (2, 8), (7, 8),
            ],
        )
    }

    /// Two copies of `K_4` sharing vertex 0.
    pub fn two_k4() -> Graph {
        build(
            7,
            &[
                (0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3),
                (0, 4), (0, 5), (0, 6), (4, 5), (4, 6), (5, 6),
            ],
        )
    }

    /// Three triangles in a chain: {0,1,2}, {2,3,4}, {4,5,6}.
    pub fn triangle_chain() -> Graph {
        build(7, &[(0, 1), (0, 2), (1, 2), (2, 3), (2, 4), (3, 4), (4, 5), (4, 6), (5, 6)])
    }
}

#[cfg(test)]
mod tests {
    use super::fixtures::*;
    use super::*;

    #[test]
    fn edge_list_validation() {
        let k2 = Graph::from_edges(2, &[(0, 1)]).unwrap();
        assert_eq!((k2.n(), k2.edge_count()), (2, 1));
        assert_eq!(Graph::from_edges(2, &[(0, 2)]), Err(Error::OutOfRange { vertex: 2, n: 2 }));
        assert_eq!(Graph::from_edges(2, &[(1, 1)]), Err(Error::SelfLoop(1)));
        assert_eq!(Graph::from_edges(3, &[(0, 1), (1, 0)]), Err(Error::DuplicateEdge(0, 1)));
        assert_eq!(Graph::from_edges(0, &[]), Err(Error::EmptyGraph));
        let p5 = Graph::from_edges(5, &[(0, 1), (1, 2), (2, 3), (3, 4)]).unwrap();
        assert_eq!(p5, path(5));
        let dstar = double_star();
        assert_eq!(dstar.neighbors(0), &[1, 2, 3]);
    }

    #[test]
    fn distances() {
        assert_eq!(all_pairs_distances(&path(5)).unwrap().get(0, 4), 4);
        assert_eq!(all_pairs_distances(&double_star()).unwrap().get(2, 4), 3);
        assert_eq!(all_pairs_distances(&complete(2)).unwrap().get(0, 1), 1);
        let split = Graph::from_edges(4, &[(0, 1), (2, 3)]).unwrap();
        assert_eq!(all_pairs_distances(&split), Err(Error::Disconnected));
    }

    #[test]
    fn recognizers() {
        let p5 = path(5);
        assert!(p5.is_path_graph() && !p5.is_star_graph());
        assert!(star(4).is_star_graph());
        let d = double_star();
        assert!(d.is_tree() && !d.is_path_graph() && !d.is_star_graph());
        assert!(!cycle(4).is_tree());
        assert!(!path(2).is_star_graph());
    }

    #[test]
    fn blocks_of_a_path() {
        let bd = block_decomposition(&path(5)).unwrap();
        assert_eq!(bd.blocks, vec![vec![0, 1], vec![1, 2], vec![2, 3], vec![3, 4]]);
        assert_eq!(bd.cut_vertices, vec![1, 2, 3]);
        assert_eq!(bd.extreme_vertices, vec![0, 4]);
    }

    #[test]
    fn blocks_of_bowtie_and_triangle() {
        let bd = block_decomposition(&bowtie()).unwrap();
        assert_eq!(bd.blocks, vec![vec![0, 1, 2], vec![2, 3, 4]]);
        assert_eq!(bd.cut_vertices, vec![2]);
        assert_eq!(bd.extreme_vertices, vec![0, 1, 3, 4]);

        let bd = block_decomposition(&complete(3)).unwrap();
        assert_eq!(bd.blocks, vec![vec![0, 1, 2]]);
        assert!(bd.cut_vertices.is_empty());
        assert_eq!(bd.extreme_vertices, vec![0, 1, 2]);
    }

    #[test]
    fn blocks_of_cycle_with_tail() {
        // 4-cycle 0-1-2-3 with pendant 4 on 2
        let g = Graph::from_edges(5, &[(0, 1), (1, 2), (2, 3), (3, 0), (2, 4)]).unwrap();
        let bd = block_decomposition(&g).unwrap();
        assert_eq!(bd.blocks, vec![vec![0, 1, 2, 3], vec![2, 4]]);
        assert_eq!(bd.cut_vertices, vec![2]);
        assert_eq!(bd.extreme_vertices, vec![4]);
    }

    #[test]
    fn generalized_tree_recognizer() {
        assert!(is_generalized_tree(&path(5)));
        assert!(is_generalized_tree(&bowtie()));
        assert!(is_generalized_tree(&two_k4()));
        assert_eq!(
            check_generalized_tree(&cycle(4)).unwrap_err(),
            GenTreeRejection::IncompleteBlock { min_vertex: 0 }
        );
        assert_eq!(check_generalized_tree(&complete(4)).unwrap_err(), GenTreeRejection::SingleBlock);
        let g = Graph::from_edges(5, &[(0, 1), (1, 2), (2, 3), (3, 0), (2, 4)]).unwrap();
        assert_eq!(
            check_generalized_tree(&g).unwrap_err(),
            GenTreeRejection::IncompleteBlock { min_vertex: 0 }
        );
    }
}
