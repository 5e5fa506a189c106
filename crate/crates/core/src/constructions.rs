//! Explicit resolving partitions whose class counts realize the upper bounds
//! on partition dimension for paths, stars, trees, spiders and generalized
//! trees.
//!
//! Every constructor checks its output (exact cover, expected class count,
//! resolving) before returning it; a failed check is reported as
//! [`Error::VerificationFailed`] and indicates a bug.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::anatomy::{gen_tree_anatomy, tree_anatomy, GenTreeAnatomy, TreeAnatomy};
use crate::error::{Error, Result};
use crate::graph::{block_decomposition, check_generalized_tree, DistanceMatrix, Graph, Vertex};
use crate::resolver::{is_resolving_partition, VertexPartition};

fn verified(dm: &DistanceMatrix, classes: Vec<Vec<Vertex>>, expected: usize, what: &str) -> Result<VertexPartition> {
    let pi = VertexPartition::new(classes, dm.n())
        .map_err(|e| Error::VerificationFailed(format!("{what}: {e}")))?;
    if pi.num_classes() != expected {
        return Err(Error::VerificationFailed(format!(
            "{what}: built {} classes, expected {expected}",
            pi.num_classes()
        )));
    }
    let verdict = is_resolving_partition(dm, &pi)?;
    if let Some((u, v)) = verdict.witness {
        return Err(Error::VerificationFailed(format!(
            "{what}: vertices {u} and {v} have the same representation"
        )));
    }
    Ok(pi)
}

fn classes_from(class_of: &[usize], t: usize) -> Vec<Vec<Vertex>> {
    let mut classes = vec![Vec::new(); t];
    for (v, &c) in class_of.iter().enumerate() {
        classes[c].push(v);
    }
    classes
}

/// `{{least endpoint}, rest}`.
pub fn construct_path(g: &Graph, dm: &DistanceMatrix) -> Result<VertexPartition> {
    if g.n() < 2 || !g.is_path_graph() {
        return Err(Error::NotAPath);
    }
    let end = (0..g.n()).find(|&v| g.degree(v) == 1).expect("path has an endpoint");
    let rest = (0..g.n()).filter(|&v| v != end).collect();
    verified(dm, vec![vec![end], rest], 2, "path")
}

/// `{{center, first leaf}, {leaf}, ...}` with one class per leaf.
pub fn construct_star(g: &Graph, dm: &DistanceMatrix) -> Result<VertexPartition> {
    if !g.is_star_graph() {
        return Err(Error::NotAStar);
    }
    let center = (0..g.n()).find(|&v| g.degree(v) == g.n() - 1).unwrap();
    let leaves: Vec<_> = (0..g.n()).filter(|&v| v != center).collect();
    let mut classes = vec![vec![center, leaves[0]]];
    classes.extend(leaves[1..].iter().map(|&l| vec![l]));
    verified(dm, classes, leaves.len(), "star")
}

fn require_non_path_tree(g: &Graph) -> Result<()> {
    if !g.is_tree() {
        return Err(Error::NotATree);
    }
    if g.is_path_graph() {
        return Err(Error::IsAPath);
    }
    Ok(())
}

/// Partition with `kappa + tau - 1` classes `{A, A_1..A_kappa, B_2..B_{tau-1}}`.
///
/// For the i-th exterior major of terminal degree above one, its first leg
/// forms `A_i`, its j-th leg joins `B_j` for `2 <= j <= tau - 1`, and a
/// `tau`-th leg stays in `A` with everything else. Legs are taken in anatomy
/// order with the first (longest) leg moved to the end.
pub fn construct_thm1(g: &Graph, dm: &DistanceMatrix, anat: &TreeAnatomy) -> Result<VertexPartition> {
    require_non_path_tree(g)?;
    let (kappa, tau) = (anat.kappa, anat.tau);
    let t = kappa + tau - 1;
    let mut class_of = vec![0; g.n()];
    for (i, major) in anat.multi_terminal_majors().enumerate() {
        let l = major.legs.len();
        for (pos, leg) in major.legs[1..].iter().chain(&major.legs[..1]).enumerate() {
            let j = pos + 1;
            let class = match j {
                1 => i + 1,
                j if j < tau => kappa + j - 1,
                _ => 0,
            };
            debug_assert!(j <= l);
            for &v in leg {
                class_of[v] = class;
            }
        }
    }
    verified(dm, classes_from(&class_of, t), t, "kappa+tau-1 construction")
}

/// Partition with `n1 - 1` classes for a spider that is not a star.
///
/// With leaves `u_1..u_t` ordered so `u_t` is farthest from the center:
/// `A_1` is the leg of `u_1` plus the leg of `u_t` without its first vertex,
/// `A_2` is the leg of `u_2` plus that first vertex, `A_i = {u_i}` for
/// `3 <= i <= t-2`, and `A` holds the rest.
pub fn construct_spider(g: &Graph, dm: &DistanceMatrix, anat: &TreeAnatomy) -> Result<VertexPartition> {
    require_non_path_tree(g)?;
    if anat.ex() != 1 {
        return Err(Error::NotASpider { exterior_majors: anat.ex() });
    }
    if g.is_star_graph() {
        return Err(Error::IsAStar);
    }
    let t = anat.n1();
    if t < 4 {
        return Err(Error::TooFewLeaves { leaves: t });
    }
    let major = &anat.exterior_majors[0];
    // u_t is the first leg in anatomy order (longest); u_1.. follow it
    let far = &major.legs[0];
    let legs = &major.legs[1..];
    let mut class_of = vec![t - 2; g.n()];
    for &v in legs[0].iter().chain(&far[1..]) {
        class_of[v] = 0;
    }
    for &v in legs[1].iter().chain(&far[..1]) {
        class_of[v] = 1;
    }
    for (i, leg) in legs.iter().enumerate().take(t - 2).skip(2) {
        class_of[*leg.last().unwrap()] = i;
    }
    verified(dm, classes_from(&class_of, t - 1), t - 1, "spider")
}

/// Every vertex on the path between two exterior majors of terminal degree
/// above one is itself such a vertex.
pub fn thm3_precondition(g: &Graph, dm: &DistanceMatrix, anat: &TreeAnatomy) -> bool {
    let mut in_s = vec![false; g.n()];
    let s: Vec<Vertex> = anat.multi_terminal_majors().map(|m| m.vertex).collect();
    for &v in &s {
        in_s[v] = true;
    }
    s.iter().enumerate().all(|(i, &a)| {
        s[i + 1..]
            .iter()
            .all(|&b| g.tree_path(dm, a, b).iter().all(|&v| in_s[v]))
    })
}

/// Partition with `max(kappa, tau + 1)` classes. Class `i` holds the i-th
/// exterior major of terminal degree above one; each such major's legs go,
/// longest first, to the smallest class indices other than its own.
pub fn construct_thm3(g: &Graph, dm: &DistanceMatrix, anat: &TreeAnatomy) -> Result<VertexPartition> {
    require_non_path_tree(g)?;
    if !thm3_precondition(g, dm, anat) {
        return Err(Error::PreconditionViolated(
            "every vertex on the path between two exterior major vertices of terminal degree greater \
             than one must itself be an exterior major vertex of terminal degree greater than one"
                .into(),
        ));
    }
    let t = anat.kappa.max(anat.tau + 1);
    let mut class_of = vec![usize::MAX; g.n()];
    for (j, major) in anat.multi_terminal_majors().enumerate() {
        class_of[major.vertex] = j;
        let slots = (0..t).filter(|&c| c != j);
        for (leg, class) in major.legs.iter().zip(slots) {
            for &v in leg {
                class_of[v] = class;
            }
        }
    }
    if let Some(v) = class_of.iter().position(|&c| c == usize::MAX) {
        return Err(Error::PreconditionViolated(format!(
            "classes do not cover the vertex set (vertex {v} is on no leg)"
        )));
    }
    verified(dm, classes_from(&class_of, t), t, "max(kappa,tau+1) construction")
}

/// Class count guaranteed for a generalized tree.
pub fn gentree_bound(ganat: &GenTreeAnatomy) -> usize {
    if ganat.phi >= 3 {
        ganat.zeta + ganat.vartheta + ganat.phi - 1
    } else {
        ganat.zeta + ganat.vartheta + 1
    }
}

/// Partition `{A, A_1..A_zeta, B_1..B_vartheta, C_2..C_{phi-1}}`.
///
/// `A_i` holds the first exterior extreme of the i-th support cut vertex,
/// `B_j` the first extreme of the j-th Q block, and `C_k` the k-th of each
/// of those lists. When `phi <= 2` there are no `C` classes.
pub fn construct_gentree(g: &Graph, dm: &DistanceMatrix, ganat: &GenTreeAnatomy) -> Result<VertexPartition> {
    check_generalized_tree(g).map_err(Error::NotGeneralizedTree)?;
    let (zeta, vartheta, phi) = (ganat.zeta, ganat.vartheta, ganat.phi);
    let t = gentree_bound(ganat);
    let mut class_of = vec![0; g.n()];
    let lists = ganat
        .support_cut_vertices
        .iter()
        .map(|s| &s.exterior_extremes)
        .chain(ganat.q_blocks.iter().map(|q| &q.extremes));
    for (i, list) in lists.enumerate() {
        class_of[list[0]] = i + 1;
        for (pos, &v) in list.iter().enumerate().skip(1) {
            let k = pos + 1;
            if k < phi {
                class_of[v] = zeta + vartheta + k - 1;
            }
        }
    }
    verified(dm, classes_from(&class_of, t), t, "generalized tree construction")
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Path,
    Star,
    Thm1,
    Thm3,
    Spider,
    Gentree,
    Auto,
}

impl Method {
    pub const ALL: [Method; 7] =
        [Method::Path, Method::Star, Method::Thm1, Method::Thm3, Method::Spider, Method::Gentree, Method::Auto];

    pub fn name(self) -> &'static str {
        match self {
            Method::Path => "path",
            Method::Star => "star",
            Method::Thm1 => "thm1",
            Method::Thm3 => "thm3",
            Method::Spider => "spider",
            Method::Gentree => "gentree",
            Method::Auto => "auto",
        }
    }

    /// Name of the bound this method's class count realizes.
    pub fn bound_name(self) -> &'static str {
        match self {
            Method::Path => "pd_eq_two_iff_path",
            Method::Star => "pd_le_leaves",
            Method::Thm1 => "pd_le_kappa_plus_tau_minus_one",
            Method::Thm3 => "pd_le_max_kappa_tau_plus_one",
            Method::Spider => "pd_eq_leaves_iff_star",
            Method::Gentree => "gentree_pd_bound",
            Method::Auto => "auto",
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Method {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        Method::ALL
            .into_iter()
            .find(|m| m.name() == s)
            .ok_or_else(|| format!("unknown method `{s}` (expected one of path, star, thm1, thm3, spider, gentree, auto)"))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Construction {
    pub method: Method,
    pub bound: &'static str,
    pub partition: VertexPartition,
}

impl Construction {
    pub fn class_count(&self) -> usize {
        self.partition.num_classes()
    }
}

fn tree_candidates(g: &Graph, dm: &DistanceMatrix, anat: &TreeAnatomy) -> Vec<(usize, Method)> {
    let mut out = vec![(anat.kappa + anat.tau - 1, Method::Thm1)];
    if thm3_precondition(g, dm, anat) {
        out.push((anat.kappa.max(anat.tau + 1), Method::Thm3));
    }
    if anat.ex() == 1 && !g.is_star_graph() && anat.n1() >= 4 {
        out.push((anat.n1() - 1, Method::Spider));
    }
    out
}

/// Picks the method for `auto`: path, then star, then for trees the tree
/// construction with the smallest guaranteed class count (ties favor thm1),
/// then the generalized-tree construction.
pub fn auto_method(g: &Graph, dm: &DistanceMatrix) -> Result<Method> {
    if g.n() >= 2 && g.is_path_graph() {
        return Ok(Method::Path);
    }
    if g.is_star_graph() {
        return Ok(Method::Star);
    }
    if g.is_tree() {
        let anat = tree_anatomy(g, dm)?;
        let best = tree_candidates(g, dm, &anat)
            .into_iter()
            .min_by_key(|&(count, _)| count)
            .expect("thm1 always applies");
        return Ok(best.1);
    }
    check_generalized_tree(g).map_err(Error::NotGeneralizedTree)?;
    Ok(Method::Gentree)
}

/// Runs one construction end to end, computing whatever anatomy it needs.
pub fn construct(g: &Graph, dm: &DistanceMatrix, method: Method) -> Result<Construction> {
    let method = match method {
        Method::Auto => auto_method(g, dm)?,
        m => m,
    };
    let partition = match method {
        Method::Path => construct_path(g, dm)?,
        Method::Star => construct_star(g, dm)?,
        Method::Thm1 => construct_thm1(g, dm, &tree_anatomy(g, dm)?)?,
        Method::Thm3 => construct_thm3(g, dm, &tree_anatomy(g, dm)?)?,
        Method::Spider => construct_spider(g, dm, &tree_anatomy(g, dm)?)?,
        Method::Gentree => {
            let bd = block_decomposition(g)?;
            construct_gentree(g, dm, &gen_tree_anatomy(g, &bd)?)?
        }
        Method::Auto => unreachable!(),
    };
    Ok(Construction { method, bound: method.bound_name(), partition })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{all_pairs_distances, fixtures::*};

    fn build(g: &Graph, method: Method) -> Result<VertexPartition> {
        construct(g, &all_pairs_distances(g).unwrap(), method).map(|c| c.partition)
    }

    fn count(g: &Graph, method: Method) -> usize {
        build(g, method).unwrap().num_classes()
    }

    #[test]
    fn paths() {
        assert_eq!(build(&path(2), Method::Path).unwrap().classes(), &[vec![0], vec![1]]);
        assert_eq!(build(&path(5), Method::Path).unwrap().classes(), &[vec![0], vec![1, 2, 3, 4]]);
        assert_eq!(count(&path(7), Method::Path), 2);
        assert_eq!(build(&star(3), Method::Path), Err(Error::NotAPath));
    }

    #[test]
    fn stars() {
        assert_eq!(count(&star(3), Method::Star), 3);
        assert_eq!(count(&star(4), Method::Star), 4);
        assert_eq!(count(&star(6), Method::Star), 6);
        assert_eq!(build(&path(4), Method::Star), Err(Error::NotAStar));
    }

    #[test]
    fn thm1_counts() {
        assert_eq!(count(&spider222(), Method::Thm1), 3);
        assert_eq!(count(&double_star(), Method::Thm1), 3);
        assert_eq!(count(&cat32(), Method::Thm1), 4);
        assert_eq!(count(&star(4), Method::Thm1), 4);
        assert_eq!(build(&path(5), Method::Thm1), Err(Error::IsAPath));
        assert_eq!(build(&cycle(4), Method::Thm1), Err(Error::NotATree));
    }

    #[test]
    fn spider_counts() {
        assert_eq!(count(&spider(&[2, 2, 2, 2]), Method::Spider), 3);
        assert_eq!(count(&spider(&[3, 1, 1, 1]), Method::Spider), 3);
        assert_eq!(count(&spider(&[4, 2, 1, 3, 1]), Method::Spider), 4);
        assert_eq!(build(&spider222(), Method::Spider), Err(Error::TooFewLeaves { leaves: 3 }));
        assert_eq!(build(&star(5), Method::Spider), Err(Error::IsAStar));
        assert_eq!(build(&double_star(), Method::Spider), Err(Error::NotASpider { exterior_majors: 2 }));
    }

    #[test]
    fn thm3_precondition_cases() {
        let check = |g: &Graph| {
            let dm = all_pairs_distances(g).unwrap();
            thm3_precondition(g, &dm, &tree_anatomy(g, &dm).unwrap())
        };
        assert!(check(&cat32()));
        assert!(check(&double_star()));
        // spine 0-1-2, two leaves on 0 and on 2, none on 1
        let g = Graph::from_edges(7, &[(0, 1), (1, 2), (0, 3), (0, 4), (2, 5), (2, 6)]).unwrap();
        assert!(!check(&g));
        assert!(matches!(build(&g, Method::Thm3), Err(Error::PreconditionViolated(_))));
    }

    #[test]
    fn thm3_counts() {
        assert_eq!(count(&cat32(), Method::Thm3), 3);
        assert_eq!(count(&double_star(), Method::Thm3), 3);
        assert_eq!(count(&caterpillar(4, 3), Method::Thm3), 4);
    }

    #[test]
    fn thm3_rejects_degree_one_exterior_major_on_spine() {
        // majors 0 (three leaves), 5 (one leaf) and 7 (two leaves); the path
        // 0-4-5-7 leaves S, so the precondition fails
        let g = Graph::from_edges(
            10,
            &[(0, 1), (0, 2), (0, 3), (0, 4), (4, 5), (5, 6), (5, 7), (7, 8), (7, 9)],
        )
        .unwrap();
        assert!(matches!(build(&g, Method::Thm3), Err(Error::PreconditionViolated(_))));
        assert_eq!(count(&g, Method::Thm1), 4);
    }

    #[test]
    fn gentree_counts() {
        assert_eq!(count(&two_k4(), Method::Gentree), 6);
        assert_eq!(count(&triangle_chain(), Method::Gentree), 3);
        assert_eq!(count(&cat32(), Method::Gentree), 4);
        assert_eq!(count(&triangle_of_triangles(), Method::Gentree), 4);
        assert!(matches!(build(&complete(4), Method::Gentree), Err(Error::NotGeneralizedTree(_))));
    }

    #[test]
    fn auto_dispatch() {
        let pick = |g: &Graph| auto_method(g, &all_pairs_distances(g).unwrap()).unwrap();
        assert_eq!(pick(&path(5)), Method::Path);
        assert_eq!(pick(&star(4)), Method::Star);
        assert_eq!(pick(&cat32()), Method::Thm3);
        assert_eq!(pick(&double_star()), Method::Thm1);
        assert_eq!(pick(&bowtie()), Method::Gentree);
        assert!(auto_method(&cycle(5), &all_pairs_distances(&cycle(5)).unwrap()).is_err());
    }

    #[test]
    fn method_names_round_trip() {
        for m in Method::ALL {
            assert_eq!(m.name().parse::<Method>().unwrap(), m);
        }
        assert!("nope".parse::<Method>().is_err());
    }
}
