//! Evaluates every partition-dimension bound and characterization on one
//! instance and, when exact values are available, whether each holds and
//! whether it is tight.

use serde::Serialize;

use crate::anatomy::{gen_tree_anatomy, support_profile, tree_anatomy, TreeAnatomy};
use crate::constructions::{gentree_bound, thm3_precondition};
use crate::error::{Error, Result};
use crate::graph::{all_pairs_distances, check_generalized_tree, DistanceMatrix, Graph, Vertex};
use crate::resolver::{metric_dimension_exact, partition_dimension_exact, ExactOptions, VertexPartition};

pub const PD_LE_DIM_PLUS_ONE: &str = "pd_le_dim_plus_one";
pub const DIM_EQ_LEAVES_MINUS_EXTERIOR: &str = "dim_eq_leaves_minus_exterior";
pub const PD_LE_LEAVES_MINUS_EXTERIOR_PLUS_ONE: &str = "pd_le_leaves_minus_exterior_plus_one";
pub const PD_LE_KAPPA_PLUS_TAU_MINUS_ONE: &str = "pd_le_kappa_plus_tau_minus_one";
pub const PD_LE_XI_PLUS_THETA_MINUS_ONE: &str = "pd_le_xi_plus_theta_minus_one";
pub const PD_LE_LEAVES: &str = "pd_le_leaves";
pub const PD_GE_THETA: &str = "pd_ge_theta";
pub const THREE_LEAVES_PD_EQ_THREE: &str = "three_leaves_pd_eq_three";
pub const PD_EQ_LEAVES_IFF_STAR: &str = "pd_eq_leaves_iff_star";
pub const PD_EQ_TWO_IFF_PATH: &str = "pd_eq_two_iff_path";
pub const PD_LE_MAX_KAPPA_TAU_PLUS_ONE: &str = "pd_le_max_kappa_tau_plus_one";
pub const GENTREE_PD_BOUND: &str = "gentree_pd_bound";

pub const ALL_BOUNDS: [&str; 12] = [
    PD_LE_DIM_PLUS_ONE,
    DIM_EQ_LEAVES_MINUS_EXTERIOR,
    PD_LE_LEAVES_MINUS_EXTERIOR_PLUS_ONE,
    PD_LE_KAPPA_PLUS_TAU_MINUS_ONE,
    PD_LE_XI_PLUS_THETA_MINUS_ONE,
    PD_LE_LEAVES,
    PD_GE_THETA,
    THREE_LEAVES_PD_EQ_THREE,
    PD_EQ_LEAVES_IFF_STAR,
    PD_EQ_TWO_IFF_PATH,
    PD_LE_MAX_KAPPA_TAU_PLUS_ONE,
    GENTREE_PD_BOUND,
];

/// `n1 - ex`, the metric dimension of a tree that is not a path.
pub fn dim_formula(anat: &TreeAnatomy) -> usize {
    anat.n1() - anat.ex()
}

/// Checked variant of [`dim_formula`] starting from the graph.
pub fn dim_formula_for(g: &Graph, dm: &DistanceMatrix) -> Result<usize> {
    Ok(dim_formula(&tree_anatomy(g, dm)?))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum BoundKind {
    /// `pd <= value` (or `dim` where noted).
    Upper,
    /// `pd >= value`.
    Lower,
    /// `pd == value` (or `dim`).
    Equality,
    /// `pd == value` exactly when the graph belongs to a named class.
    Characterization,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BoundEntry {
    pub name: &'static str,
    pub kind: BoundKind,
    pub value: Option<usize>,
    pub applicable: bool,
    pub satisfied: Option<bool>,
    pub tight: Option<bool>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum PdSource {
    PathRule,
    ExactSearch,
}

/// A support vertex carrying the most leaves; those leaves must sit in
/// pairwise different classes of any resolving partition.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ThetaCertificate {
    pub support: Vertex,
    pub leaves: Vec<Vertex>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BoundsReport {
    pub entries: Vec<BoundEntry>,
    pub exact_pd: Option<usize>,
    pub exact_dim: Option<usize>,
    pub pd_source: Option<PdSource>,
    pub pd_witness: Option<VertexPartition>,
    pub dim_witness: Option<Vec<Vertex>>,
    pub theta_certificate: Option<ThetaCertificate>,
}

impl BoundsReport {
    pub fn entry(&self, name: &str) -> Option<&BoundEntry> {
        self.entries.iter().find(|e| e.name == name)
    }

    /// Applicable entries whose relation failed against an exact value.
    pub fn violations(&self) -> impl Iterator<Item = &BoundEntry> + '_ {
        self.entries.iter().filter(|e| e.applicable && e.satisfied == Some(false))
    }
}

/// Shifts one named bound's value; used to check that sweeps catch violations.
#[doc(hidden)]
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundCorruption {
    pub name: String,
    pub offset: i64,
}

#[derive(Debug, Clone, Default)]
pub struct BoundsOptions {
    /// Attach exact pd/dim (within the size caps of `exact`).
    pub compute_exact: bool,
    pub exact: ExactOptions,
    #[doc(hidden)]
    pub corruption: Option<BoundCorruption>,
}

impl BoundsOptions {
    pub fn exact(exact: ExactOptions) -> Self {
        Self { compute_exact: true, exact, corruption: None }
    }
}

struct Builder<'a> {
    pd: Option<usize>,
    dim: Option<usize>,
    corruption: Option<&'a BoundCorruption>,
    entries: Vec<BoundEntry>,
}

#[derive(Clone, Copy)]
enum Against {
    Pd,
    Dim,
}

impl Builder<'_> {
    fn corrupt(&self, name: &str, value: usize) -> usize {
        match self.corruption {
            Some(c) if c.name == name => (value as i64 + c.offset).max(0) as usize,
            _ => value,
        }
    }

    fn inapplicable(&mut self, name: &'static str, kind: BoundKind) {
        self.entries.push(BoundEntry { name, kind, value: None, applicable: false, satisfied: None, tight: None });
    }

    fn compare(&mut self, name: &'static str, kind: BoundKind, value: Option<usize>, against: Against) {
        let value = value.map(|v| self.corrupt(name, v));
        let exact = match against {
            Against::Pd => self.pd,
            Against::Dim => self.dim,
        };
        let (satisfied, tight) = match (value, exact) {
            (Some(b), Some(x)) => {
                let ok = match kind {
                    BoundKind::Upper => x <= b,
                    BoundKind::Lower => x >= b,
                    _ => x == b,
                };
                (Some(ok), Some(x == b))
            }
            _ => (None, None),
        };
        self.entries.push(BoundEntry { name, kind, value, applicable: true, satisfied, tight });
    }

    /// `pd == value` holds exactly when `member` does.
    fn characterize(&mut self, name: &'static str, value: usize, member: bool) {
        let value = self.corrupt(name, value);
        let (satisfied, tight) = match self.pd {
            Some(x) => (Some((x == value) == member), Some(x == value)),
            None => (None, None),
        };
        self.entries.push(BoundEntry {
            name,
            kind: BoundKind::Characterization,
            value: Some(value),
            applicable: true,
            satisfied,
            tight,
        });
    }
}

fn exact_or_skip<T>(result: Result<T>) -> Result<Option<T>> {
    match result {
        Ok(v) => Ok(Some(v)),
        Err(Error::TooLarge { .. }) => Ok(None),
        Err(e) => Err(e),
    }
}

pub fn bounds_report(g: &Graph, opts: &BoundsOptions) -> Result<BoundsReport> {
    let dm = all_pairs_distances(g)?;
    bounds_report_with(g, &dm, opts)
}

pub fn bounds_report_with(g: &Graph, dm: &DistanceMatrix, opts: &BoundsOptions) -> Result<BoundsReport> {
    let n = g.n();
    let is_tree = g.is_tree();
    let is_path = g.is_path_graph();

    let mut pd = None;
    let mut pd_source = None;
    let mut pd_witness = None;
    let mut dim = None;
    let mut dim_witness = None;
    if opts.exact.shortcuts && is_path && n >= 2 {
        // a path endpoint resolves; two classes are needed for n >= 2
        let end = (0..n).find(|&v| g.degree(v) == 1).unwrap();
        let rest = (0..n).filter(|&v| v != end).collect();
        pd = Some(2);
        pd_source = Some(PdSource::PathRule);
        pd_witness = Some(VertexPartition::new(vec![vec![end], rest], n)?);
        dim = Some(1);
        dim_witness = Some(vec![end]);
    } else if opts.compute_exact {
        if let Some((p, w)) = exact_or_skip(partition_dimension_exact(g, dm, &opts.exact))? {
            pd = Some(p);
            pd_source = Some(PdSource::ExactSearch);
            pd_witness = Some(w);
        }
        if let Some((d, w)) = exact_or_skip(metric_dimension_exact(g, dm, &opts.exact))? {
            dim = Some(d);
            dim_witness = Some(w);
        }
    }

    let mut b = Builder { pd, dim, corruption: opts.corruption.as_ref(), entries: Vec::new() };

    if n >= 2 {
        b.compare(PD_LE_DIM_PLUS_ONE, BoundKind::Upper, dim.map(|d| d + 1), Against::Pd);
    } else {
        b.inapplicable(PD_LE_DIM_PLUS_ONE, BoundKind::Upper);
    }

    let anat = if is_tree && !is_path { Some(tree_anatomy(g, dm)?) } else { None };
    match &anat {
        Some(a) => {
            b.compare(DIM_EQ_LEAVES_MINUS_EXTERIOR, BoundKind::Equality, Some(dim_formula(a)), Against::Dim);
            b.compare(
                PD_LE_LEAVES_MINUS_EXTERIOR_PLUS_ONE,
                BoundKind::Upper,
                Some(dim_formula(a) + 1),
                Against::Pd,
            );
            b.compare(PD_LE_KAPPA_PLUS_TAU_MINUS_ONE, BoundKind::Upper, Some(a.kappa + a.tau - 1), Against::Pd);
        }
        None => {
            b.inapplicable(DIM_EQ_LEAVES_MINUS_EXTERIOR, BoundKind::Equality);
            b.inapplicable(PD_LE_LEAVES_MINUS_EXTERIOR_PLUS_ONE, BoundKind::Upper);
            b.inapplicable(PD_LE_KAPPA_PLUS_TAU_MINUS_ONE, BoundKind::Upper);
        }
    }

    let mut theta_certificate = None;
    if is_tree && n >= 2 {
        let sp = support_profile(g);
        let n1 = g.leaves().len();
        b.compare(PD_LE_XI_PLUS_THETA_MINUS_ONE, BoundKind::Upper, Some(sp.xi() + sp.theta - 1), Against::Pd);
        b.compare(PD_LE_LEAVES, BoundKind::Upper, Some(n1), Against::Pd);
        b.compare(PD_GE_THETA, BoundKind::Lower, Some(sp.theta), Against::Pd);
        if n >= 4 && n1 == 3 {
            b.compare(THREE_LEAVES_PD_EQ_THREE, BoundKind::Equality, Some(3), Against::Pd);
        } else {
            b.inapplicable(THREE_LEAVES_PD_EQ_THREE, BoundKind::Equality);
        }
        if n1 >= 4 {
            b.characterize(PD_EQ_LEAVES_IFF_STAR, n1, g.is_star_graph());
        } else {
            b.inapplicable(PD_EQ_LEAVES_IFF_STAR, BoundKind::Characterization);
        }
        theta_certificate = sp.theta_support.map(|s| ThetaCertificate {
            support: s,
            leaves: g.neighbors(s).iter().copied().filter(|&w| g.degree(w) == 1).collect(),
        });
    } else {
        b.inapplicable(PD_LE_XI_PLUS_THETA_MINUS_ONE, BoundKind::Upper);
        b.inapplicable(PD_LE_LEAVES, BoundKind::Upper);
        b.inapplicable(PD_GE_THETA, BoundKind::Lower);
        b.inapplicable(THREE_LEAVES_PD_EQ_THREE, BoundKind::Equality);
        b.inapplicable(PD_EQ_LEAVES_IFF_STAR, BoundKind::Characterization);
    }

    if n >= 2 {
        b.characterize(PD_EQ_TWO_IFF_PATH, 2, is_path);
    } else {
        b.inapplicable(PD_EQ_TWO_IFF_PATH, BoundKind::Characterization);
    }

    // paths count as kappa = 1, tau = 2
    let thm3 = match &anat {
        Some(a) if thm3_precondition(g, dm, a) => Some(a.kappa.max(a.tau + 1)),
        None if is_path && n >= 2 => Some(3),
        _ => None,
    };
    match thm3 {
        Some(v) => b.compare(PD_LE_MAX_KAPPA_TAU_PLUS_ONE, BoundKind::Upper, Some(v), Against::Pd),
        None => b.inapplicable(PD_LE_MAX_KAPPA_TAU_PLUS_ONE, BoundKind::Upper),
    }

    match check_generalized_tree(g) {
        Ok(bd) => {
            let ganat = gen_tree_anatomy(g, &bd)?;
            b.compare(GENTREE_PD_BOUND, BoundKind::Upper, Some(gentree_bound(&ganat)), Against::Pd);
        }
        Err(_) => b.inapplicable(GENTREE_PD_BOUND, BoundKind::Upper),
    }

    Ok(BoundsReport {
        entries: b.entries,
        exact_pd: pd,
        exact_dim: dim,
        pd_source,
        pd_witness,
        dim_witness,
        theta_certificate,
    })
}
