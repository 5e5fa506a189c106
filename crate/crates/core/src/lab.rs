//! Instance generation (Prüfer enumeration, seeded random trees and
//! generalized trees) and sweep campaigns checking bounds and constructions
//! against the exact searches.

use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::anatomy::{gen_tree_anatomy, support_profile, tree_anatomy};
use crate::bounds::{bounds_report_with, BoundCorruption, BoundsOptions};
use crate::constructions::{
    construct_gentree, construct_path, construct_spider, construct_star, construct_thm1, construct_thm3,
    gentree_bound, thm3_precondition,
};
use crate::error::{Error, Result};
use crate::graph::{all_pairs_distances, check_generalized_tree, Graph, Vertex};
use crate::resolver::ExactOptions;

/// Largest order accepted by exhaustive tree enumeration.
pub const MAX_ENUMERATION_N: usize = 9;

/// Decodes a Prüfer sequence into the labeled tree on `seq.len() + 2` vertices.
pub fn tree_from_prufer(seq: &[usize]) -> Result<Graph> {
    let n = seq.len() + 2;
    let mut degree = vec![1usize; n];
    for &v in seq {
        if v >= n {
            return Err(Error::OutOfRange { vertex: v, n });
        }
        degree[v] += 1;
    }
    let mut edges = Vec::with_capacity(n - 1);
    let mut ptr = degree.iter().position(|&d| d == 1).unwrap();
    let mut leaf = ptr;
    for &v in seq {
        edges.push((leaf, v));
        degree[v] -= 1;
        if degree[v] == 1 && v < ptr {
            leaf = v;
        } else {
            ptr += 1;
            while degree[ptr] != 1 {
                ptr += 1;
            }
            leaf = ptr;
        }
    }
    edges.push((leaf, n - 1));
    Graph::from_edges(n, &edges)
}

/// Encodes a labeled tree (`n >= 2`) as its Prüfer sequence.
pub fn prufer_from_tree(g: &Graph) -> Result<Vec<usize>> {
    if !g.is_tree() {
        return Err(Error::NotATree);
    }
    let n = g.n();
    if n < 2 {
        return Err(Error::InvalidRange("Prüfer sequences need at least two vertices".into()));
    }
    let mut degree: Vec<usize> = (0..n).map(|v| g.degree(v)).collect();
    let mut removed = vec![false; n];
    let mut seq = Vec::with_capacity(n - 2);
    for _ in 0..n - 2 {
        let leaf = (0..n).find(|&v| !removed[v] && degree[v] == 1).unwrap();
        let parent = *g.neighbors(leaf).iter().find(|&&w| !removed[w]).unwrap();
        seq.push(parent);
        removed[leaf] = true;
        degree[parent] -= 1;
    }
    Ok(seq)
}

/// `n^(n-2)`, the number of labeled trees on `n` vertices.
pub fn tree_count(n: usize) -> u64 {
    if n < 2 {
        return 1;
    }
    (n as u64).pow(n as u32 - 2)
}

/// The `index`-th labeled tree in lexicographic Prüfer order.
pub fn tree_by_index(n: usize, index: u64) -> Result<Graph> {
    if n < 2 || index >= tree_count(n) {
        return Err(Error::InvalidRange(format!("no tree {index} on {n} vertices")));
    }
    let mut seq = vec![0; n - 2];
    let mut rest = index;
    for slot in seq.iter_mut().rev() {
        *slot = (rest % n as u64) as usize;
        rest /= n as u64;
    }
    tree_from_prufer(&seq)
}

/// Iterator over every labeled tree on `n` vertices.
pub struct AllTrees {
    n: usize,
    seq: Vec<usize>,
    done: bool,
}

impl Iterator for AllTrees {
    type Item = Graph;

    fn next(&mut self) -> Option<Graph> {
        if self.done {
            return None;
        }
        let g = tree_from_prufer(&self.seq).expect("sequence in range");
        // odometer increment
        self.done = true;
        for slot in self.seq.iter_mut().rev() {
            *slot += 1;
            if *slot < self.n {
                self.done = false;
                break;
            }
            *slot = 0;
        }
        Some(g)
    }
}

pub fn all_trees(n: usize) -> Result<AllTrees> {
    if n > MAX_ENUMERATION_N {
        return Err(Error::TooLarge { n, limit: MAX_ENUMERATION_N });
    }
    if n < 2 {
        return Err(Error::InvalidRange(format!("tree enumeration needs n >= 2, got {n}")));
    }
    Ok(AllTrees { n, seq: vec![0; n - 2], done: false })
}

/// Uniform labeled tree on `n` vertices via a random Prüfer sequence.
pub fn random_tree(n: usize, seed: u64) -> Result<Graph> {
    if n == 0 {
        return Err(Error::InvalidRange("tree needs at least one vertex".into()));
    }
    if n == 1 {
        return Graph::from_edges(1, &[]);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let seq: Vec<usize> = (0..n - 2).map(|_| rng.gen_range(0..n)).collect();
    tree_from_prufer(&seq)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct BuildStep {
    /// Order of the complete graph added in this step.
    pub size: usize,
    /// Existing vertex identified with one vertex of the new clique; absent
    /// for the first step.
    pub attach: Option<Vertex>,
}

/// Recipe for a generalized tree: start from a clique, then repeatedly glue
/// a new clique onto one existing vertex. Vertices are numbered in creation
/// order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BuildSequence {
    pub steps: Vec<BuildStep>,
}

impl BuildSequence {
    pub fn vertex_count(&self) -> usize {
        self.steps.iter().enumerate().map(|(i, s)| if i == 0 { s.size } else { s.size - 1 }).sum()
    }

    pub fn validate(&self) -> Result<()> {
        if self.steps.len() < 2 {
            return Err(Error::InvalidRange("a generalized tree needs at least two blocks".into()));
        }
        let mut count = 0;
        for (i, step) in self.steps.iter().enumerate() {
            if step.size < 2 {
                return Err(Error::InvalidRange(format!("block {i} has size {} < 2", step.size)));
            }
            match (i, step.attach) {
                (0, None) => count = step.size,
                (0, Some(_)) => return Err(Error::InvalidRange("first block cannot attach".into())),
                (_, None) => return Err(Error::InvalidRange(format!("block {i} has no attach vertex"))),
                (_, Some(a)) if a >= count => {
                    return Err(Error::InvalidRange(format!(
                        "block {i} attaches to vertex {a}, only {count} exist"
                    )))
                }
                _ => count += step.size - 1,
            }
        }
        Ok(())
    }

    pub fn to_graph(&self) -> Result<Graph> {
        self.validate()?;
        let mut edges = Vec::new();
        let mut next = 0;
        for step in &self.steps {
            let mut members: Vec<Vertex> = step.attach.into_iter().collect();
            while members.len() < step.size {
                members.push(next);
                next += 1;
            }
            for (i, &u) in members.iter().enumerate() {
                for &v in &members[i + 1..] {
                    edges.push((u, v));
                }
            }
        }
        Graph::from_edges(next, &edges)
    }
}

impl fmt::Display for BuildSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for step in &self.steps {
            match step.attach {
                None => writeln!(f, "K {}", step.size)?,
                Some(a) => writeln!(f, "K {} @ {}", step.size, a)?,
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GenTreeParams {
    pub max_blocks: usize,
    pub min_size: usize,
    pub max_size: usize,
    pub max_vertices: usize,
}

impl Default for GenTreeParams {
    fn default() -> Self {
        Self { max_blocks: 6, min_size: 2, max_size: 5, max_vertices: 12 }
    }
}

/// Seeded random generalized tree: block count, block sizes and attach
/// vertices are drawn uniformly, with sizes clipped to stay within
/// `max_vertices`.
pub fn random_generalized_tree(params: &GenTreeParams, seed: u64) -> Result<(Graph, BuildSequence)> {
    let GenTreeParams { max_blocks, min_size, max_size, max_vertices } = *params;
    if max_blocks < 2 {
        return Err(Error::InvalidRange(format!("max_blocks must be at least 2, got {max_blocks}")));
    }
    if min_size < 2 || min_size > max_size {
        return Err(Error::InvalidRange(format!("bad block size range {min_size}..={max_size}")));
    }
    if max_vertices < 2 * min_size - 1 {
        return Err(Error::InvalidRange(format!(
            "max_vertices {max_vertices} leaves no room for two blocks of size {min_size}"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let blocks = rng.gen_range(2..=max_blocks);
    let first = rng.gen_range(min_size..=max_size).min(max_vertices + 1 - min_size);
    let mut steps = vec![BuildStep { size: first, attach: None }];
    let mut count = first;
    for _ in 1..blocks {
        let room = max_vertices - count;
        if room + 1 < min_size {
            break;
        }
        let size = rng.gen_range(min_size..=max_size).min(room + 1);
        let attach = rng.gen_range(0..count);
        steps.push(BuildStep { size, attach: Some(attach) });
        count += size - 1;
    }
    let seq = BuildSequence { steps };
    let g = seq.to_graph()?;
    Ok((g, seq))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SweepSpec {
    /// Every labeled tree with `min_n <= n <= max_n`. Exact pd is computed up
    /// to `pd_max_n`, exact dim up to `dim_max_n`.
    Trees { min_n: usize, max_n: usize, pd_max_n: usize, dim_max_n: usize },
    /// `count` random trees with seeds `seed_start..`, orders drawn from
    /// `min_n..=max_n`.
    RandomTrees { count: u64, seed_start: u64, min_n: usize, max_n: usize, exact: bool },
    /// `count` random generalized trees with seeds `seed_start..`.
    GenTrees { count: u64, seed_start: u64, params: GenTreeParams, exact: bool },
}

#[derive(Debug, Clone, Default)]
pub struct SweepOptions {
    /// Size caps for the exact searches; shortcuts are ignored for tree
    /// sweeps so every lower bound is tested against a plain search.
    pub exact: ExactOptions,
    #[doc(hidden)]
    pub corruption: Option<BoundCorruption>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub instance: String,
    pub check: String,
    pub expected: String,
    pub observed: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize)]
pub struct SweepResult {
    pub instances: u64,
    pub violations: Vec<Violation>,
}

impl SweepResult {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }

    fn absorb(&mut self, other: SweepResult) {
        self.instances += other.instances;
        self.violations.extend(other.violations);
    }
}

struct Checker<'a> {
    instance: &'a str,
    out: Vec<Violation>,
}

impl Checker<'_> {
    fn fail(&mut self, check: &str, expected: impl Into<String>, observed: impl Into<String>) {
        self.out.push(Violation {
            instance: self.instance.to_string(),
            check: check.to_string(),
            expected: expected.into(),
            observed: observed.into(),
        });
    }

    fn expect_eq(&mut self, check: &str, expected: usize, observed: usize) {
        if expected != observed {
            self.fail(check, expected.to_string(), observed.to_string());
        }
    }

    fn construction(&mut self, name: &str, result: Result<usize>, expected: usize, pd: Option<usize>) {
        match result {
            Ok(count) => {
                self.expect_eq(&format!("construct_{name}.class_count"), expected, count);
                if let Some(p) = pd {
                    if count < p {
                        self.fail(&format!("construct_{name}.sound"), format!(">= pd {p}"), count.to_string());
                    }
                }
            }
            Err(e) => self.fail(&format!("construct_{name}"), format!("{expected} classes"), e.to_string()),
        }
    }
}

/// Checks all bounds, constructions and anatomy identities on one instance.
pub fn check_instance(g: &Graph, instance: &str, bounds: &BoundsOptions) -> Vec<Violation> {
    let mut c = Checker { instance, out: Vec::new() };
    let dm = match all_pairs_distances(g) {
        Ok(dm) => dm,
        Err(e) => {
            c.fail("distances", "connected graph", e.to_string());
            return c.out;
        }
    };
    let report = match bounds_report_with(g, &dm, bounds) {
        Ok(r) => r,
        Err(e) => {
            c.fail("bounds_report", "report", e.to_string());
            return c.out;
        }
    };
    for e in report.violations() {
        let observed = match e.name {
            crate::bounds::DIM_EQ_LEAVES_MINUS_EXTERIOR => format!("dim = {:?}", report.exact_dim),
            _ => format!("pd = {:?}", report.exact_pd),
        };
        c.fail(e.name, format!("{:?} {:?}", e.kind, e.value), observed);
    }
    let pd = report.exact_pd;

    if g.is_tree() && g.n() >= 2 {
        if g.is_path_graph() {
            c.construction("path", construct_path(g, &dm).map(|p| p.num_classes()), 2, pd);
        } else {
            match tree_anatomy(g, &dm) {
                Ok(a) => {
                    if a.kappa < 1 || a.tau < 2 {
                        c.fail("anatomy.kappa_tau", "kappa >= 1, tau >= 2", format!("{} {}", a.kappa, a.tau));
                    }
                    if a.kappa + a.tau > a.xi() + a.theta() {
                        c.fail(
                            "anatomy.kappa_tau_le_xi_theta",
                            format!("<= {}", a.xi() + a.theta()),
                            (a.kappa + a.tau).to_string(),
                        );
                    }
                    let thm1 = construct_thm1(g, &dm, &a).map(|p| p.num_classes());
                    c.construction("thm1", thm1, a.kappa + a.tau - 1, pd);
                    if thm3_precondition(g, &dm, &a) {
                        let thm3 = construct_thm3(g, &dm, &a).map(|p| p.num_classes());
                        c.construction("thm3", thm3, a.kappa.max(a.tau + 1), pd);
                    }
                    if a.ex() == 1 && !g.is_star_graph() && a.n1() >= 4 {
                        let spider = construct_spider(g, &dm, &a).map(|p| p.num_classes());
                        c.construction("spider", spider, a.n1() - 1, pd);
                    }
                }
                Err(e) => c.fail("tree_anatomy", "anatomy", e.to_string()),
            }
            if g.is_star_graph() {
                let star = construct_star(g, &dm).map(|p| p.num_classes());
                c.construction("star", star, g.n() - 1, pd);
            }
        }
    }

    if let Ok(bd) = check_generalized_tree(g) {
        match gen_tree_anatomy(g, &bd) {
            Ok(ga) => {
                let count = construct_gentree(g, &dm, &ga).map(|p| p.num_classes());
                c.construction("gentree", count, gentree_bound(&ga), pd);
                if g.is_tree() {
                    let sp = support_profile(g);
                    c.expect_eq("tree_as_gentree.zeta_eq_xi", sp.xi(), ga.zeta);
                    c.expect_eq("tree_as_gentree.phi_eq_theta", sp.theta, ga.phi);
                    c.expect_eq("tree_as_gentree.vartheta_eq_zero", 0, ga.vartheta);
                }
            }
            Err(e) => c.fail("gen_tree_anatomy", "anatomy", e.to_string()),
        }
    }
    c.out
}

fn tree_label(g: &Graph) -> String {
    let seq = prufer_from_tree(g).unwrap_or_default();
    format!("tree n={} prufer={:?}", g.n(), seq)
}

fn run_indexed<F>(count: u64, f: F) -> SweepResult
where
    F: Fn(u64) -> Vec<Violation> + Sync + Send,
{
    let violations: Vec<Vec<Violation>> = (0..count).into_par_iter().map(f).collect();
    SweepResult { instances: count, violations: violations.into_iter().flatten().collect() }
}

/// Runs a sweep. Instances run in parallel; violations are reported in
/// instance order. Instance errors become violations, never aborts.
pub fn sweep(spec: &SweepSpec, opts: &SweepOptions) -> Result<SweepResult> {
    let bounds_for = |exact: ExactOptions, compute_exact: bool| BoundsOptions {
        compute_exact,
        exact,
        corruption: opts.corruption.clone(),
    };
    match *spec {
        SweepSpec::Trees { min_n, max_n, pd_max_n, dim_max_n } => {
            if max_n > MAX_ENUMERATION_N {
                return Err(Error::TooLarge { n: max_n, limit: MAX_ENUMERATION_N });
            }
            if min_n < 2 || min_n > max_n {
                return Err(Error::InvalidRange(format!("tree sweep needs 2 <= min_n <= max_n, got {min_n}..={max_n}")));
            }
            let exact = ExactOptions { pd_limit: pd_max_n, dim_limit: dim_max_n, shortcuts: false };
            let bounds = bounds_for(exact, true);
            let mut total = SweepResult::default();
            for n in min_n..=max_n {
                total.absorb(run_indexed(tree_count(n), |i| {
                    let g = tree_by_index(n, i).expect("index in range");
                    check_instance(&g, &tree_label(&g), &bounds)
                }));
            }
            Ok(total)
        }
        SweepSpec::RandomTrees { count, seed_start, min_n, max_n, exact } => {
            if min_n < 2 || min_n > max_n {
                return Err(Error::InvalidRange(format!("random tree orders {min_n}..={max_n}")));
            }
            let bounds = bounds_for(ExactOptions { shortcuts: false, ..opts.exact }, exact);
            Ok(run_indexed(count, |i| {
                let seed = seed_start + i;
                let n = min_n + (ChaCha8Rng::seed_from_u64(seed).gen_range(0..=max_n - min_n));
                let g = random_tree(n, seed).expect("valid order");
                check_instance(&g, &format!("{} seed={seed}", tree_label(&g)), &bounds)
            }))
        }
        SweepSpec::GenTrees { count, seed_start, params, exact } => {
            random_generalized_tree(&params, seed_start)?;
            let bounds = bounds_for(opts.exact, exact);
            Ok(run_indexed(count, |i| {
                let seed = seed_start + i;
                let (g, seq) = random_generalized_tree(&params, seed).expect("params validated");
                let label = format!("gentree seed={seed} build=[{}]", seq.to_string().trim().replace('\n', "; "));
                check_instance(&g, &label, &bounds)
            }))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{fixtures, is_generalized_tree};

    #[test]
    fn prufer_examples() {
        assert_eq!(tree_from_prufer(&[]).unwrap(), fixtures::path(2));
        assert_eq!(tree_from_prufer(&[0, 0, 0]).unwrap(), fixtures::star(4));
        let g = tree_from_prufer(&[1, 2]).unwrap();
        assert_eq!(g.edges().collect::<Vec<_>>(), vec![(0, 1), (1, 2), (2, 3)]);
        assert_eq!(tree_from_prufer(&[5]), Err(Error::OutOfRange { vertex: 5, n: 3 }));
    }

    #[test]
    fn enumeration_counts() {
        assert_eq!(all_trees(3).unwrap().count(), 3);
        assert_eq!(all_trees(4).unwrap().count(), 16);
        assert_eq!(all_trees(5).unwrap().count(), 125);
        assert!(all_trees(6).unwrap().all(|g| g.is_tree()));
        assert_eq!(all_trees(10).err(), Some(Error::TooLarge { n: 10, limit: 9 }));
    }

    #[test]
    fn enumeration_matches_indexing() {
        for (i, g) in all_trees(5).unwrap().enumerate() {
            assert_eq!(g, tree_by_index(5, i as u64).unwrap());
        }
    }

    #[test]
    fn random_tree_is_deterministic() {
        assert_eq!(random_tree(6, 42).unwrap(), random_tree(6, 42).unwrap());
        assert!(random_tree(12, 7).unwrap().is_tree());
    }

    #[test]
    fn generalized_tree_generator() {
        let one = GenTreeParams { max_blocks: 1, ..GenTreeParams::default() };
        assert!(matches!(random_generalized_tree(&one, 0), Err(Error::InvalidRange(_))));
        for seed in 0..200 {
            let (g, seq) = random_generalized_tree(&GenTreeParams::default(), seed).unwrap();
            assert!(is_generalized_tree(&g), "seed {seed}");
            assert!(g.n() <= 12 && seq.steps.len() <= 6);
            assert_eq!(seq.vertex_count(), g.n());
        }
    }

    #[test]
    fn build_sequence_validation() {
        let seq = BuildSequence {
            steps: vec![BuildStep { size: 3, attach: None }, BuildStep { size: 3, attach: Some(2) }],
        };
        assert_eq!(seq.to_graph().unwrap(), fixtures::bowtie());
        let bad = BuildSequence {
            steps: vec![BuildStep { size: 3, attach: None }, BuildStep { size: 2, attach: Some(3) }],
        };
        assert!(bad.validate().is_err());
    }

    #[test]
    fn small_exhaustive_sweep_passes() {
        let spec = SweepSpec::Trees { min_n: 2, max_n: 6, pd_max_n: 6, dim_max_n: 6 };
        let r = sweep(&spec, &SweepOptions::default()).unwrap();
        assert_eq!(r.instances, 1 + 3 + 16 + 125 + 1296);
        assert!(r.passed(), "{:?}", r.violations.first());
    }

    #[test]
    fn corrupted_bound_is_caught() {
        let spec = SweepSpec::Trees { min_n: 4, max_n: 5, pd_max_n: 5, dim_max_n: 5 };
        let opts = SweepOptions {
            corruption: Some(BoundCorruption { name: crate::bounds::PD_LE_LEAVES.into(), offset: -1 }),
            ..SweepOptions::default()
        };
        let r = sweep(&spec, &opts).unwrap();
        assert!(!r.passed());
        assert!(r.violations.iter().all(|v| v.check == crate::bounds::PD_LE_LEAVES));
    }
}
