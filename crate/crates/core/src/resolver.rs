//! Metric and partition representations, resolving checks and the exact
//! brute-force searches for partition dimension and metric dimension.
//!
//! The exact searches are the ground truth every bound and construction in
//! this crate is checked against, so they rely on nothing but the
//! definitions. With [`ExactOptions::shortcuts`] enabled they additionally
//! skip candidates that cannot resolve (twins in one class, class counts
//! below elementary lower bounds); the answer and witness are unchanged.

use serde::Serialize;

use crate::anatomy::support_profile;
use crate::error::{Error, Result};
use crate::graph::{DistanceMatrix, Graph, Vertex};

/// Ordered partition of `0..n` into non-empty classes.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(transparent)]
pub struct VertexPartition {
    classes: Vec<Vec<Vertex>>,
}

impl VertexPartition {
    /// Validates that `classes` are non-empty, disjoint and cover `0..n`.
    /// Class order is kept; vertices inside a class are sorted.
    pub fn new(mut classes: Vec<Vec<Vertex>>, n: usize) -> Result<Self> {
        let mut owner = vec![usize::MAX; n];
        for (i, class) in classes.iter_mut().enumerate() {
            if class.is_empty() {
                return Err(Error::InvalidPartition(format!("class {i} is empty")));
            }
            class.sort_unstable();
            for &v in class.iter() {
                if v >= n {
                    return Err(Error::InvalidPartition(format!("vertex {v} out of range 0..{n}")));
                }
                if owner[v] != usize::MAX {
                    return Err(Error::InvalidPartition(format!(
                        "vertex {v} appears in classes {} and {i}",
                        owner[v]
                    )));
                }
                owner[v] = i;
            }
        }
        if let Some(v) = owner.iter().position(|&o| o == usize::MAX) {
            return Err(Error::InvalidPartition(format!("vertex {v} is in no class")));
        }
        Ok(Self { classes })
    }

    /// Builds a partition from per-vertex class indices, which must use every
    /// index in `0..t` for some `t`.
    pub fn from_assignment(class_of: &[usize]) -> Result<Self> {
        let t = class_of.iter().max().map_or(0, |&m| m + 1);
        let mut classes = vec![Vec::new(); t];
        for (v, &c) in class_of.iter().enumerate() {
            classes[c].push(v);
        }
        Self::new(classes, class_of.len())
    }

    pub fn classes(&self) -> &[Vec<Vertex>] {
        &self.classes
    }

    pub fn num_classes(&self) -> usize {
        self.classes.len()
    }

    pub fn n(&self) -> usize {
        self.classes.iter().map(Vec::len).sum()
    }

    pub fn class_of(&self) -> Vec<usize> {
        let mut out = vec![0; self.n()];
        for (i, class) in self.classes.iter().enumerate() {
            for &v in class {
                out[v] = i;
            }
        }
        out
    }

    /// Moves `part` out of class `index` into a new last class.
    pub fn split_class(&self, index: usize, part: &[Vertex]) -> Result<Self> {
        let class = self
            .classes
            .get(index)
            .ok_or_else(|| Error::InvalidPartition(format!("no class {index}")))?;
        if part.iter().any(|v| class.binary_search(v).is_err()) {
            return Err(Error::InvalidPartition(format!("split part is not inside class {index}")));
        }
        let mut classes = self.classes.clone();
        classes[index].retain(|v| !part.contains(v));
        classes.push(part.to_vec());
        Self::new(classes, self.n())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct Representation(pub Vec<u32>);

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ResolutionVerdict {
    pub resolving: bool,
    /// Lexicographically least pair `(u, v)`, `u < v`, with equal representations.
    pub witness: Option<(Vertex, Vertex)>,
}

fn check_partition(dm: &DistanceMatrix, pi: &VertexPartition) -> Result<()> {
    if pi.n() != dm.n() {
        return Err(Error::InvalidPartition(format!(
            "partition covers {} vertices, graph has {}",
            pi.n(),
            dm.n()
        )));
    }
    Ok(())
}

fn check_vertex(dm: &DistanceMatrix, v: Vertex) -> Result<()> {
    if v >= dm.n() {
        return Err(Error::OutOfRange { vertex: v, n: dm.n() });
    }
    Ok(())
}

fn partition_rep_unchecked(dm: &DistanceMatrix, pi: &VertexPartition, v: Vertex) -> Representation {
    let row = dm.row(v);
    Representation(
        pi.classes
            .iter()
            .map(|class| class.iter().map(|&u| row[u]).min().expect("classes are non-empty"))
            .collect(),
    )
}

/// `r(v | Π)`: distance from `v` to each class, in class order.
pub fn partition_representation(dm: &DistanceMatrix, pi: &VertexPartition, v: Vertex) -> Result<Representation> {
    check_partition(dm, pi)?;
    check_vertex(dm, v)?;
    Ok(partition_rep_unchecked(dm, pi, v))
}

fn first_collision(reps: &[Representation]) -> ResolutionVerdict {
    for u in 0..reps.len() {
        for v in u + 1..reps.len() {
            if reps[u] == reps[v] {
                return ResolutionVerdict { resolving: false, witness: Some((u, v)) };
            }
        }
    }
    ResolutionVerdict { resolving: true, witness: None }
}

pub fn is_resolving_partition(dm: &DistanceMatrix, pi: &VertexPartition) -> Result<ResolutionVerdict> {
    check_partition(dm, pi)?;
    let reps: Vec<_> = (0..dm.n()).map(|v| partition_rep_unchecked(dm, pi, v)).collect();
    Ok(first_collision(&reps))
}

fn check_set(dm: &DistanceMatrix, set: &[Vertex]) -> Result<()> {
    for (i, &s) in set.iter().enumerate() {
        check_vertex(dm, s)?;
        if set[..i].contains(&s) {
            return Err(Error::InvalidSet(format!("vertex {s} listed twice")));
        }
    }
    Ok(())
}

/// `r(v | S)`: distance from `v` to each vertex of `set`, in order.
pub fn metric_representation(dm: &DistanceMatrix, set: &[Vertex], v: Vertex) -> Result<Representation> {
    check_set(dm, set)?;
    check_vertex(dm, v)?;
    Ok(Representation(set.iter().map(|&s| dm.get(v, s)).collect()))
}

pub fn is_resolving_set(dm: &DistanceMatrix, set: &[Vertex]) -> Result<ResolutionVerdict> {
    check_set(dm, set)?;
    let reps: Vec<_> = (0..dm.n())
        .map(|v| Representation(set.iter().map(|&s| dm.get(v, s)).collect()))
        .collect();
    Ok(first_collision(&reps))
}

pub const DEFAULT_PD_LIMIT: usize = 12;
pub const DEFAULT_DIM_LIMIT: usize = 20;
pub const EXACT_LIMIT_ENV: &str = "RESPART_EXACT_LIMIT";

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ExactOptions {
    /// Largest order accepted by the partition-dimension search.
    pub pd_limit: usize,
    /// Largest order accepted by the metric-dimension search.
    pub dim_limit: usize,
    /// Skip candidates that provably cannot resolve.
    pub shortcuts: bool,
}

impl Default for ExactOptions {
    fn default() -> Self {
        Self { pd_limit: DEFAULT_PD_LIMIT, dim_limit: DEFAULT_DIM_LIMIT, shortcuts: true }
    }
}

impl ExactOptions {
    /// Plain exhaustive search with no structural shortcuts.
    pub fn brute_force() -> Self {
        Self { shortcuts: false, ..Self::default() }
    }

    /// Defaults, with both size caps replaced by `RESPART_EXACT_LIMIT` when set.
    pub fn from_env() -> Self {
        let mut opts = Self::default();
        if let Some(limit) = std::env::var(EXACT_LIMIT_ENV).ok().and_then(|s| s.trim().parse().ok()) {
            opts.pd_limit = limit;
            opts.dim_limit = limit;
        }
        opts
    }
}

/// Twin classes: `u ~ v` iff `N(u) \ {v} = N(v) \ {u}`. Such vertices are at
/// equal distance from every other vertex.
pub fn twin_classes(g: &Graph) -> Vec<Vec<Vertex>> {
    let n = g.n();
    let twins = |u: Vertex, v: Vertex| {
        let a = g.neighbors(u).iter().filter(|&&w| w != v);
        let b = g.neighbors(v).iter().filter(|&&w| w != u);
        a.eq(b)
    };
    let mut class_id = vec![usize::MAX; n];
    let mut classes: Vec<Vec<Vertex>> = Vec::new();
    for v in 0..n {
        if class_id[v] != usize::MAX {
            continue;
        }
        class_id[v] = classes.len();
        let mut class = vec![v];
        for (u, id) in class_id.iter_mut().enumerate().skip(v + 1) {
            if *id == usize::MAX && twins(v, u) {
                *id = classes.len();
                class.push(u);
            }
        }
        classes.push(class);
    }
    classes
}

fn ensure_searchable(g: &Graph, dm: &DistanceMatrix, limit: usize) -> Result<()> {
    if g.n() > limit {
        return Err(Error::TooLarge { n: g.n(), limit });
    }
    if !g.is_connected() {
        return Err(Error::Disconnected);
    }
    if dm.n() != g.n() {
        return Err(Error::InvalidRange("distance matrix does not match graph".into()));
    }
    Ok(())
}

/// Restricted-growth-string search for a resolving partition with exactly
/// `t` classes.
struct PartitionSearch<'a> {
    dm: &'a DistanceMatrix,
    n: usize,
    t: usize,
    class_of: Vec<usize>,
    /// For each vertex, its twins with a smaller id (empty without shortcuts).
    earlier_twins: Vec<Vec<Vertex>>,
    rep: Vec<u32>,
}

impl<'a> PartitionSearch<'a> {
    fn new(dm: &'a DistanceMatrix, earlier_twins: Vec<Vec<Vertex>>) -> Self {
        let n = dm.n();
        Self { dm, n, t: 0, class_of: vec![0; n], earlier_twins, rep: Vec::new() }
    }

    fn run(&mut self, t: usize) -> Option<Vec<usize>> {
        self.t = t;
        self.rep = vec![0; self.n * t];
        // vertex 0 always opens class 0
        self.class_of[0] = 0;
        if self.descend(1, 1) {
            Some(self.class_of.clone())
        } else {
            None
        }
    }

    fn descend(&mut self, v: Vertex, used: usize) -> bool {
        if v == self.n {
            return used == self.t && self.resolves();
        }
        if self.t - used > self.n - v {
            return false;
        }
        let top = (used + 1).min(self.t);
        for c in 0..top {
            if self.earlier_twins[v].iter().any(|&u| self.class_of[u] == c) {
                continue;
            }
            self.class_of[v] = c;
            if self.descend(v + 1, used.max(c + 1)) {
                return true;
            }
        }
        false
    }

    fn resolves(&mut self) -> bool {
        let (n, t) = (self.n, self.t);
        self.rep.fill(u32::MAX);
        for u in 0..n {
            let c = self.class_of[u];
            for v in 0..n {
                let d = self.dm.get(v, u);
                let slot = &mut self.rep[v * t + c];
                if d < *slot {
                    *slot = d;
                }
            }
        }
        // vertices in different classes differ in the zero coordinate
        for u in 0..n {
            for v in u + 1..n {
                if self.class_of[u] == self.class_of[v]
                    && self.rep[u * t..(u + 1) * t] == self.rep[v * t..(v + 1) * t]
                {
                    return false;
                }
            }
        }
        true
    }
}

/// Minimum number of classes of a resolving partition, with the first
/// resolving partition found in canonical (restricted growth string) order.
pub fn partition_dimension_exact(
    g: &Graph,
    dm: &DistanceMatrix,
    opts: &ExactOptions,
) -> Result<(usize, VertexPartition)> {
    ensure_searchable(g, dm, opts.pd_limit)?;
    let n = g.n();
    if n == 1 {
        return Ok((1, VertexPartition::new(vec![vec![0]], 1)?));
    }

    let mut earlier_twins = vec![Vec::new(); n];
    let mut lower = 1;
    if opts.shortcuts {
        let twins = twin_classes(g);
        for class in &twins {
            for (i, &v) in class.iter().enumerate() {
                earlier_twins[v] = class[..i].to_vec();
            }
        }
        lower = twins.iter().map(Vec::len).max().unwrap_or(1).max(2);
        if g.is_tree() {
            lower = lower.max(support_profile(g).theta);
        }
        if !g.is_path_graph() {
            lower = lower.max(3);
        }
    }

    let mut search = PartitionSearch::new(dm, earlier_twins);
    for t in lower..=n {
        if let Some(class_of) = search.run(t) {
            return Ok((t, VertexPartition::from_assignment(&class_of)?));
        }
    }
    unreachable!("the all-singletons partition always resolves")
}

/// Checks whether `set` resolves the graph using packed keys when they fit.
struct SetChecker<'a> {
    dm: &'a DistanceMatrix,
    packed: bool,
    keys: Vec<u128>,
    rows: Vec<Vec<u32>>,
}

impl<'a> SetChecker<'a> {
    fn new(dm: &'a DistanceMatrix) -> Self {
        Self { dm, packed: dm.diameter() < 256, keys: Vec::with_capacity(dm.n()), rows: Vec::new() }
    }

    fn resolves(&mut self, set: &[Vertex]) -> bool {
        let n = self.dm.n();
        if self.packed && set.len() <= 16 {
            self.keys.clear();
            self.keys.extend((0..n).map(|v| {
                set.iter().fold(0u128, |key, &s| (key << 8) | self.dm.get(v, s) as u128)
            }));
            self.keys.sort_unstable();
            self.keys.windows(2).all(|w| w[0] != w[1])
        } else {
            self.rows.clear();
            self.rows.extend((0..n).map(|v| set.iter().map(|&s| self.dm.get(v, s)).collect()));
            self.rows.sort_unstable();
            self.rows.windows(2).all(|w| w[0] != w[1])
        }
    }
}

/// Minimum size of a resolving set, with the lexicographically first
/// resolving set of that size.
pub fn metric_dimension_exact(g: &Graph, dm: &DistanceMatrix, opts: &ExactOptions) -> Result<(usize, Vec<Vertex>)> {
    ensure_searchable(g, dm, opts.dim_limit)?;
    let n = g.n();
    let mut checker = SetChecker::new(dm);
    // all but one vertex of every twin class must be chosen
    let lower = if opts.shortcuts {
        twin_classes(g).iter().map(|c| c.len() - 1).sum::<usize>()
    } else {
        0
    };
    for k in lower..=n {
        let mut combo: Vec<Vertex> = (0..k).collect();
        loop {
            if checker.resolves(&combo) {
                return Ok((k, combo));
            }
            // advance to the next k-subset in lexicographic order
            let Some(i) = (0..k).rev().find(|&i| combo[i] < n - k + i) else {
                break;
            };
            combo[i] += 1;
            for j in i + 1..k {
                combo[j] = combo[j - 1] + 1;
            }
        }
    }
    unreachable!("the full vertex set always resolves")
}
