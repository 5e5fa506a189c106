//! Structural parameters of trees (leaves, exterior major vertices, legs,
//! supports) and of generalized trees (support cut vertices, exterior
//! extremes, blocks with several cut and extreme vertices).

use std::collections::BTreeMap;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{check_generalized_tree, BlockDecomposition, DistanceMatrix, Graph, Vertex};

/// An exterior major vertex with its terminal leaves and the legs reaching them.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ExteriorMajor {
    pub vertex: Vertex,
    /// Ordered by descending leg length, then ascending leaf id.
    pub terminals: Vec<Vertex>,
    /// `legs[j]` runs from a neighbor of `vertex` out to `terminals[j]`.
    pub legs: Vec<Vec<Vertex>>,
}

impl ExteriorMajor {
    pub fn terminal_degree(&self) -> usize {
        self.terminals.len()
    }
}

/// Vertices adjacent to a leaf, and the largest number of leaves on one of them.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SupportProfile {
    pub supports: Vec<Vertex>,
    pub theta: usize,
    /// Smallest support vertex carrying `theta` leaves.
    pub theta_support: Option<Vertex>,
}

impl SupportProfile {
    pub fn xi(&self) -> usize {
        self.supports.len()
    }
}

pub fn support_profile(g: &Graph) -> SupportProfile {
    let mut supports = Vec::new();
    let mut theta = 0;
    let mut theta_support = None;
    for v in 0..g.n() {
        let leaves = g.neighbors(v).iter().filter(|&&w| g.degree(w) == 1).count();
        if leaves > 0 {
            supports.push(v);
            if leaves > theta {
                theta = leaves;
                theta_support = Some(v);
            }
        }
    }
    SupportProfile { supports, theta, theta_support }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TreeAnatomy {
    pub leaves: Vec<Vertex>,
    /// Vertices of degree at least three.
    pub majors: Vec<Vertex>,
    /// For each vertex, the major it is terminal to (leaves only).
    pub terminal_of: Vec<Option<Vertex>>,
    /// Majors with positive terminal degree, ascending by id.
    pub exterior_majors: Vec<ExteriorMajor>,
    /// Number of exterior majors with terminal degree above one.
    pub kappa: usize,
    /// Largest terminal degree among those.
    pub tau: usize,
    pub support: SupportProfile,
}

impl TreeAnatomy {
    pub fn n1(&self) -> usize {
        self.leaves.len()
    }

    pub fn ex(&self) -> usize {
        self.exterior_majors.len()
    }

    pub fn xi(&self) -> usize {
        self.support.xi()
    }

    pub fn theta(&self) -> usize {
        self.support.theta
    }

    /// Exterior majors of terminal degree greater than one, in id order.
    pub fn multi_terminal_majors(&self) -> impl Iterator<Item = &ExteriorMajor> + '_ {
        self.exterior_majors.iter().filter(|m| m.terminal_degree() > 1)
    }
}

pub fn tree_anatomy(g: &Graph, dm: &DistanceMatrix) -> Result<TreeAnatomy> {
    if !g.is_tree() {
        return Err(Error::NotATree);
    }
    if g.is_path_graph() {
        return Err(Error::IsAPath);
    }
    let n = g.n();
    let leaves = g.leaves();
    let majors: Vec<Vertex> = (0..n).filter(|&v| g.degree(v) >= 3).collect();

    let mut terminal_of = vec![None; n];
    let mut by_major: BTreeMap<Vertex, Vec<Vertex>> = BTreeMap::new();
    for &leaf in &leaves {
        let best = majors.iter().map(|&w| dm.get(leaf, w)).min().expect("non-path tree has a major");
        let mut closest = majors.iter().filter(|&&w| dm.get(leaf, w) == best);
        let major = *closest.next().unwrap();
        // In a tree the branch vertex toward any rival major is itself major
        // and strictly closer, so the nearest major is unique.
        assert!(closest.next().is_none(), "leaf {leaf} equidistant from two nearest majors");
        terminal_of[leaf] = Some(major);
        by_major.entry(major).or_default().push(leaf);
    }

    let exterior_majors: Vec<ExteriorMajor> = by_major
        .into_iter()
        .map(|(vertex, mut terminals)| {
            terminals.sort_by_key(|&t| (std::cmp::Reverse(dm.get(vertex, t)), t));
            let legs = terminals.iter().map(|&t| g.tree_path(dm, vertex, t)[1..].to_vec()).collect();
            ExteriorMajor { vertex, terminals, legs }
        })
        .collect();

    let multi: Vec<_> = exterior_majors.iter().filter(|m| m.terminal_degree() > 1).collect();
    let kappa = multi.len();
    let tau = multi.iter().map(|m| m.terminal_degree()).max().unwrap_or(0);

    Ok(TreeAnatomy {
        leaves,
        majors,
        terminal_of,
        exterior_majors,
        kappa,
        tau,
        support: support_profile(g),
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SupportCutVertex {
    pub vertex: Vertex,
    /// Exterior extreme vertices adjacent to `vertex`, ascending.
    pub exterior_extremes: Vec<Vertex>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct QBlock {
    pub block: Vec<Vertex>,
    /// Extreme vertices of the block, ascending.
    pub extremes: Vec<Vertex>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GenTreeAnatomy {
    pub support_cut_vertices: Vec<SupportCutVertex>,
    pub zeta: usize,
    /// Blocks holding more than one cut vertex and more than one extreme vertex.
    pub q_blocks: Vec<QBlock>,
    pub vartheta: usize,
    /// Largest exterior-extreme count of a support cut vertex or extreme
    /// count of a Q block.
    pub phi: usize,
}

pub fn gen_tree_anatomy(g: &Graph, bd: &BlockDecomposition) -> Result<GenTreeAnatomy> {
    check_generalized_tree(g).map_err(Error::NotGeneralizedTree)?;

    let mut support_cut: Vec<Vertex> = Vec::new();
    let mut q_blocks = Vec::new();
    for block in &bd.blocks {
        let cuts: Vec<_> = block.iter().copied().filter(|&v| bd.is_cut(v)).collect();
        let extremes: Vec<_> = block.iter().copied().filter(|&v| bd.is_extreme(v)).collect();
        if cuts.len() == 1 {
            support_cut.push(cuts[0]);
        }
        if cuts.len() > 1 && extremes.len() > 1 {
            q_blocks.push(QBlock { block: block.clone(), extremes });
        }
    }
    support_cut.sort_unstable();
    support_cut.dedup();

    let mut exterior: BTreeMap<Vertex, Vec<Vertex>> = support_cut.iter().map(|&s| (s, Vec::new())).collect();
    for &v in &bd.extreme_vertices {
        let mut cut_neighbors = g.neighbors(v).iter().filter(|&&w| bd.is_cut(w));
        if let (Some(&c), None) = (cut_neighbors.next(), cut_neighbors.next()) {
            if let Some(list) = exterior.get_mut(&c) {
                list.push(v);
            }
        }
    }
    let support_cut_vertices: Vec<SupportCutVertex> = exterior
        .into_iter()
        .map(|(vertex, exterior_extremes)| SupportCutVertex { vertex, exterior_extremes })
        .collect();

    let phi = support_cut_vertices
        .iter()
        .map(|s| s.exterior_extremes.len())
        .chain(q_blocks.iter().map(|q| q.extremes.len()))
        .max()
        .unwrap_or(0);

    Ok(GenTreeAnatomy {
        zeta: support_cut_vertices.len(),
        support_cut_vertices,
        vartheta: q_blocks.len(),
        q_blocks,
        phi,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{all_pairs_distances, block_decomposition, fixtures::*};

    fn anatomy(g: &Graph) -> TreeAnatomy {
        tree_anatomy(g, &all_pairs_distances(g).unwrap()).unwrap()
    }

    fn gen_anatomy(g: &Graph) -> GenTreeAnatomy {
        gen_tree_anatomy(g, &block_decomposition(g).unwrap()).unwrap()
    }

    #[test]
    fn spider222_anatomy() {
        let a = anatomy(&spider222());
        assert_eq!(a.majors, vec![0]);
        assert_eq!((a.n1(), a.ex(), a.kappa, a.tau), (3, 1, 1, 3));
        assert_eq!(a.support.supports, vec![1, 3, 5]);
        assert_eq!((a.xi(), a.theta()), (3, 1));
        assert_eq!(a.exterior_majors[0].legs, vec![vec![1, 2], vec![3, 4], vec![5, 6]]);
    }

    #[test]
    fn double_star_anatomy() {
        let a = anatomy(&double_star());
        assert_eq!((a.kappa, a.tau, a.xi(), a.theta(), a.n1(), a.ex()), (2, 2, 2, 2, 4, 2));
        assert_eq!(a.terminal_of[4], Some(1));
        assert_eq!(a.support.theta_support, Some(0));
    }

    #[test]
    fn caterpillar_anatomy() {
        let a = anatomy(&cat32());
        assert_eq!((a.kappa, a.tau, a.n1(), a.ex()), (3, 2, 6, 3));
    }

    #[test]
    fn legs_ordered_longest_first() {
        let a = anatomy(&spider(&[1, 3, 2, 3]));
        let m = &a.exterior_majors[0];
        let lens: Vec<_> = m.legs.iter().map(Vec::len).collect();
        assert_eq!(lens, vec![3, 3, 2, 1]);
        assert!(m.terminals[0] < m.terminals[1]);
        for (leg, &t) in m.legs.iter().zip(&m.terminals) {
            assert_eq!(*leg.last().unwrap(), t);
            assert!(spider(&[1, 3, 2, 3]).has_edge(0, leg[0]));
        }
    }

    #[test]
    fn path_and_non_tree_rejected() {
        let p = path(5);
        assert_eq!(tree_anatomy(&p, &all_pairs_distances(&p).unwrap()), Err(Error::IsAPath));
        let c = cycle(5);
        assert_eq!(tree_anatomy(&c, &all_pairs_distances(&c).unwrap()), Err(Error::NotATree));
    }

    #[test]
    fn path_support_profile() {
        for n in 4..9 {
            let s = support_profile(&path(n));
            assert_eq!((s.xi(), s.theta), (2, 1));
        }
    }

    #[test]
    fn gentree_path() {
        let a = gen_anatomy(&path(5));
        let s: Vec<_> = a.support_cut_vertices.iter().map(|s| s.vertex).collect();
        assert_eq!(s, vec![1, 3]);
        assert_eq!((a.zeta, a.vartheta, a.phi), (2, 0, 1));
    }

    #[test]
    fn gentree_triangle_of_triangles() {
        let a = gen_anatomy(&triangle_of_triangles());
        assert_eq!((a.zeta, a.vartheta, a.phi), (3, 0, 2));
        assert!(a.support_cut_vertices.iter().all(|s| s.exterior_extremes.len() == 2));
        assert_eq!(a.support_cut_vertices[0].exterior_extremes, vec![3, 4]);
    }

    #[test]
    fn gentree_two_k4() {
        let a = gen_anatomy(&two_k4());
        assert_eq!((a.zeta, a.vartheta, a.phi), (1, 0, 6));
        assert_eq!(a.support_cut_vertices[0].exterior_extremes, vec![1, 2, 3, 4, 5, 6]);
    }

    #[test]
    fn gentree_with_q_block() {
        // K4 {0,1,2,3} with pendant leaves 4 on 0 and 5 on 1
        let g = Graph::from_edges(6, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3), (0, 4), (1, 5)]).unwrap();
        let a = gen_anatomy(&g);
        assert_eq!((a.zeta, a.vartheta, a.phi), (2, 1, 2));
        assert_eq!(a.q_blocks[0].extremes, vec![2, 3]);
    }

    #[test]
    fn gentree_rejects_single_clique() {
        let g = complete(4);
        let bd = block_decomposition(&g).unwrap();
        assert!(matches!(gen_tree_anatomy(&g, &bd), Err(Error::NotGeneralizedTree(_))));
    }
}
