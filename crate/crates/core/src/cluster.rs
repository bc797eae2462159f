//! Torus-fixed G-clusters: Young diagrams of `r` cells whose cell
//! characters are `0, ..., r-1`, each exactly once.
//!
//! A diagram is stored by its column heights; column `m` of height `h`
//! holds the cells `x^m y^0, ..., x^m y^{h-1}`.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::group::{CharIndex, GroupParams};
use crate::monomial::{minimalize, Lattice, Monomial, MonomialSet};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GCluster {
    /// Weakly decreasing column heights summing to `r`.
    pub columns: Vec<u32>,
    /// Cell characters in column-major order.
    pub chars: Vec<CharIndex>,
}

impl GCluster {
    pub fn from_columns(g: GroupParams, columns: Vec<u32>) -> Self {
        let chars = columns
            .iter()
            .enumerate()
            .flat_map(|(m, &h)| (0..h).map(move |n| g.character(m as u32, n)))
            .collect();
        GCluster { columns, chars }
    }

    pub fn cells(&self) -> impl Iterator<Item = Monomial> + '_ {
        self.columns
            .iter()
            .enumerate()
            .flat_map(|(m, &h)| (0..h).map(move |n| Monomial::new(m as u32, n)))
    }

    pub fn contains(&self, cell: &Monomial) -> bool {
        self.columns
            .get(cell.m as usize)
            .is_some_and(|&h| cell.n < h)
    }

    pub fn len(&self) -> usize {
        self.chars.len()
    }

    pub fn is_empty(&self) -> bool {
        self.chars.is_empty()
    }

    /// Row lengths, bottom row first.
    pub fn rows(&self) -> Vec<u32> {
        let height = self.columns.first().copied().unwrap_or(0);
        (0..height)
            .map(|n| self.columns.iter().filter(|&&h| h > n).count() as u32)
            .collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClusterIdeal {
    pub generators: MonomialSet,
    /// Characters of `generators`, in the same order.
    pub cotangent: Vec<CharIndex>,
}

impl ClusterIdeal {
    pub fn pure_x(&self) -> Option<Monomial> {
        self.generators.iter().find(|u| u.n == 0).copied()
    }

    pub fn pure_y(&self) -> Option<Monomial> {
        self.generators.iter().find(|u| u.m == 0).copied()
    }

    pub fn nontrivial_cotangent(&self) -> BTreeSet<CharIndex> {
        self.cotangent
            .iter()
            .filter(|c| !c.is_trivial())
            .copied()
            .collect()
    }
}

impl fmt::Display for ClusterIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&crate::monomial::format_set(&self.generators))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Parameter {
    Alpha,
    Beta,
    AlphaBeta,
}

impl fmt::Display for Parameter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Parameter::Alpha => "α",
            Parameter::Beta => "β",
            Parameter::AlphaBeta => "αβ",
        })
    }
}

/// `lhs = parameter * rhs`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Relation {
    pub lhs: Monomial,
    pub parameter: Parameter,
    pub rhs: Monomial,
}

impl fmt::Display for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.rhs == Monomial::ONE {
            write!(f, "{} = {}", self.lhs, self.parameter)
        } else {
            write!(f, "{} = {}·{}", self.lhs, self.parameter, self.rhs)
        }
    }
}

/// The family `x^A = α y^C, y^B = β x^D, x^{A-D} y^{B-C} = αβ` around a
/// torus-fixed cluster; `(α, β)` are affine coordinates of the chart.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChartDeformation {
    pub relations: [Relation; 3],
    /// `(A, -C)`.
    pub alpha_exponent: [i64; 2],
    /// `(-D, B)`.
    pub beta_exponent: [i64; 2],
}

impl ChartDeformation {
    /// Minimal generators of the ideal at `α = β = 0`.
    pub fn degenerate(&self) -> MonomialSet {
        minimalize(self.relations.iter().map(|rel| &rel.lhs))
    }

    /// Ideal of a general point on the curve swept by `α` with `β = 0`:
    /// `(α' x^A - β' y^C, x^{A-D} y^{B-C} - γ)` in homogeneous `(α' : β')`.
    pub fn curve_point_ideal(&self) -> CurvePointIdeal {
        CurvePointIdeal {
            ratio: (self.relations[0].lhs, self.relations[0].rhs),
            invariant: self.relations[2].lhs,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CurvePointIdeal {
    pub ratio: (Monomial, Monomial),
    pub invariant: Monomial,
}

impl fmt::Display for CurvePointIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "(α·{} − β·{}, {} − γ)",
            self.ratio.0, self.ratio.1, self.invariant
        )
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReconstructedChain {
    /// Special characters in chain order, starting next to the `(x, y^r)` cluster.
    pub nodes: Vec<CharIndex>,
    pub edges: Vec<(CharIndex, CharIndex)>,
    /// Positions in the cluster list of the two clusters with a single
    /// nontrivial cotangent character, `(x, y^r)` first.
    pub ends: [usize; 2],
}

/// All torus-fixed G-clusters, by depth-first search over column heights
/// with pruning on repeated characters, ordered by column count.
pub fn enumerate_clusters(g: GroupParams) -> Result<Vec<GCluster>> {
    let r = g.order();
    let mut used = vec![false; r as usize];
    let mut columns = Vec::new();
    let mut found = Vec::new();
    search(g, r, r, &mut used, &mut columns, &mut found);

    found.sort_by_key(|c: &Vec<u32>| c.len());
    for w in found.windows(2) {
        if w[0].len() == w[1].len() {
            return Err(Error::AmbiguousClusterOrder(format!(
                "{:?} and {:?} both have {} columns",
                w[0],
                w[1],
                w[0].len()
            )));
        }
    }
    Ok(found
        .into_iter()
        .map(|cols| GCluster::from_columns(g, cols))
        .collect())
}

fn search(
    g: GroupParams,
    remaining: u32,
    max_height: u32,
    used: &mut [bool],
    columns: &mut Vec<u32>,
    found: &mut Vec<Vec<u32>>,
) {
    if remaining == 0 {
        found.push(columns.clone());
        return;
    }
    let m = columns.len() as u32;
    // Grow the next column one cell at a time; a collision at height h kills every taller column too.
    let mut claimed = Vec::new();
    for n in 0..max_height.min(remaining) {
        let c = g.character(m, n).0 as usize;
        if used[c] {
            break;
        }
        used[c] = true;
        claimed.push(c);
        let h = n + 1;
        columns.push(h);
        search(g, remaining - h, h, used, columns, found);
        columns.pop();
    }
    for c in claimed {
        used[c] = false;
    }
}

/// Minimal monomials outside the diagram and their characters.
pub fn cluster_ideal(g: GroupParams, c: &GCluster) -> ClusterIdeal {
    let k = c.columns.len() as u32;
    let mut generators = MonomialSet::new();
    generators.insert(Monomial::x(k));
    let mut previous = None;
    for (m, &h) in c.columns.iter().enumerate() {
        if previous.is_none_or(|p| h < p) {
            generators.insert(Monomial::new(m as u32, h));
        }
        previous = Some(h);
    }
    let cotangent = generators.iter().map(|u| g.character(u.m, u.n)).collect();
    ClusterIdeal {
        generators,
        cotangent,
    }
}

/// Characters of `I / mI`, sorted; every nontrivial one must be special.
pub fn cotangent_decomposition(lattice: &Lattice, ci: &ClusterIdeal) -> Result<Vec<CharIndex>> {
    let specials = lattice.special_reps().specials;
    cotangent_against(&specials, ci)
}

pub(crate) fn cotangent_against(
    specials: &BTreeSet<CharIndex>,
    ci: &ClusterIdeal,
) -> Result<Vec<CharIndex>> {
    let mut chars = ci.cotangent.clone();
    chars.sort();
    if let Some(bad) = chars
        .iter()
        .find(|c| !c.is_trivial() && !specials.contains(c))
    {
        return Err(Error::NonSpecialCotangent { index: bad.0 });
    }
    Ok(chars)
}

pub fn chart_deformation(lattice: &Lattice, ci: &ClusterIdeal) -> Result<ChartDeformation> {
    let g = lattice.group();
    let count = ci.generators.len();
    if count > 3 {
        return Err(Error::TooManyGenerators { count });
    }
    let (xa, yb) = match (ci.pure_x(), ci.pure_y()) {
        (Some(x), Some(y)) => (x.m, y.n),
        _ => {
            return Err(Error::InvalidDeformation(format!(
                "ideal {ci} lacks a pure power"
            )))
        }
    };
    let pure_partner = |mono: Monomial, want_y: bool| -> Result<u32> {
        let ch = g.character(mono.m, mono.n);
        if ch.is_trivial() {
            return Ok(0);
        }
        lattice
            .module_generators(ch)
            .iter()
            .find(|u| *u != &mono && if want_y { u.m == 0 } else { u.n == 0 })
            .map(|u| if want_y { u.n } else { u.m })
            .ok_or_else(|| Error::InvalidDeformation(format!("{mono} has no pure partner")))
    };
    let c = pure_partner(Monomial::x(xa), true)?;
    let d = pure_partner(Monomial::y(yb), false)?;
    if d > xa || c > yb {
        return Err(Error::InvalidDeformation(format!(
            "third relation x^{} y^{} has a negative exponent",
            xa as i64 - d as i64,
            yb as i64 - c as i64
        )));
    }
    let deformation = ChartDeformation {
        relations: [
            Relation {
                lhs: Monomial::x(xa),
                parameter: Parameter::Alpha,
                rhs: Monomial::y(c),
            },
            Relation {
                lhs: Monomial::y(yb),
                parameter: Parameter::Beta,
                rhs: Monomial::x(d),
            },
            Relation {
                lhs: Monomial::new(xa - d, yb - c),
                parameter: Parameter::AlphaBeta,
                rhs: Monomial::ONE,
            },
        ],
        alpha_exponent: [xa as i64, -(c as i64)],
        beta_exponent: [-(d as i64), yb as i64],
    };
    if deformation.degenerate() != ci.generators {
        return Err(Error::InvalidDeformation(format!(
            "α = β = 0 gives {} instead of {ci}",
            crate::monomial::format_set(&deformation.degenerate())
        )));
    }
    Ok(deformation)
}

/// Rebuilds the exceptional chain from cotangent characters alone: each
/// cluster with two nontrivial characters is an intersection point.
pub fn reconstruct_chain(g: GroupParams, clusters: &[GCluster]) -> Result<ReconstructedChain> {
    let mut ends = Vec::new();
    let mut edges: BTreeSet<(CharIndex, CharIndex)> = BTreeSet::new();
    let mut nodes: BTreeSet<CharIndex> = BTreeSet::new();
    for (k, c) in clusters.iter().enumerate() {
        let labels: Vec<CharIndex> = cluster_ideal(g, c).nontrivial_cotangent().into_iter().collect();
        nodes.extend(labels.iter().copied());
        match labels.as_slice() {
            [_] => ends.push(k),
            [i, j] => {
                if !edges.insert((*i, *j)) {
                    return Err(Error::NotAChain(format!("edge {i}-{j} appears twice")));
                }
            }
            other => {
                return Err(Error::NotAChain(format!(
                    "cluster {:?} has {} nontrivial cotangent characters",
                    c.columns,
                    other.len()
                )))
            }
        }
    }
    if ends.len() != 2 {
        return Err(Error::NotAChain(format!(
            "{} end clusters instead of 2",
            ends.len()
        )));
    }
    if edges.len() + 1 != nodes.len() {
        return Err(Error::NotAChain(format!(
            "{} nodes and {} edges",
            nodes.len(),
            edges.len()
        )));
    }
    let mut adjacency: BTreeMap<CharIndex, Vec<CharIndex>> = BTreeMap::new();
    for &(i, j) in &edges {
        adjacency.entry(i).or_default().push(j);
        adjacency.entry(j).or_default().push(i);
    }
    if adjacency.values().any(|v| v.len() > 2) {
        return Err(Error::NotAChain("a node has degree above 2".into()));
    }

    // Orient from the single-column cluster (x, y^r).
    ends.sort_by_key(|&k| clusters[k].columns.len());
    let end_label = |k: usize| {
        *cluster_ideal(g, &clusters[k])
            .nontrivial_cotangent()
            .iter()
            .next()
            .expect("end cluster has one label")
    };
    let start = end_label(ends[0]);
    let mut path = vec![start];
    let mut prev: Option<CharIndex> = None;
    let mut current = start;
    while let Some(next) = adjacency
        .get(&current)
        .and_then(|v| v.iter().find(|&&n| Some(n) != prev))
    {
        prev = Some(current);
        current = *next;
        path.push(current);
    }
    if path.len() != nodes.len() {
        return Err(Error::NotAChain(format!(
            "walk from {start} reaches {} of {} nodes",
            path.len(),
            nodes.len()
        )));
    }
    if end_label(ends[1]) != *path.last().expect("nonempty") {
        return Err(Error::NotAChain("end clusters do not sit at the path ends".into()));
    }
    let edges = path.windows(2).map(|w| (w[0], w[1])).collect();
    Ok(ReconstructedChain {
        nodes: path,
        edges,
        ends: [ends[0], ends[1]],
    })
}

/// For `C_{r,r-1}`: the clusters are exactly the ideals
/// `(x^k, y^{r-k+1}, xy)`, `k = 1..r`, with redundant generators dropped.
pub fn an_corollary_check(g: GroupParams) -> Result<bool> {
    if !g.is_in_sl2() {
        return Err(Error::NotSl2 {
            r: g.order(),
            a: g.exponent(),
        });
    }
    let r = g.order();
    let clusters = enumerate_clusters(g)?;
    let found: BTreeSet<Vec<Monomial>> = clusters
        .iter()
        .map(|c| cluster_ideal(g, c).generators.into_iter().collect())
        .collect();
    let expected: BTreeSet<Vec<Monomial>> = (1..=r)
        .map(|k| {
            minimalize(&[Monomial::x(k), Monomial::y(r - k + 1), Monomial::new(1, 1)])
                .into_iter()
                .collect()
        })
        .collect();
    Ok(clusters.len() == r as usize && found == expected)
}
