//! Toric minimal resolution of `C^2 / C_{r,a}`.
//!
//! Points of `N = Z^2 + Z (1/r)(1, a)` are stored by numerators `(p, q)`
//! over the common denominator `r`. The resolution fan is spanned by the
//! lattice points on the Newton boundary; the chain is read from the `e^1`
//! side (larger `p` first).

use std::fmt;

use num_rational::Ratio;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::group::{CharIndex, GroupParams};
use crate::monomial::Monomial;

/// The point `(p/r, q/r)` of `N` with `q ≡ p a mod r`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct NPoint {
    pub p: i64,
    pub q: i64,
    pub r: i64,
}

impl NPoint {
    pub fn new(g: GroupParams, p: i64, q: i64) -> Self {
        let r = g.order() as i64;
        debug_assert_eq!((q - p * g.exponent() as i64).rem_euclid(r), 0);
        NPoint { p, q, r }
    }

    /// `<w, u> = (w_1 p + w_2 q) / r`; integral for `w` in the dual lattice.
    pub fn pairing(&self, w: [i64; 2]) -> Ratio<i64> {
        Ratio::new(w[0] * self.p + w[1] * self.q, self.r)
    }

    /// `p q' - q p'`, equal to `r` for a smooth cone.
    pub fn det(&self, other: &NPoint) -> i64 {
        self.p * other.q - self.q * other.p
    }
}

impl fmt::Display for NPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})/{}", self.p, self.q, self.r)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HJExpansion {
    pub coeffs: Vec<i64>,
}

impl HJExpansion {
    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `b_1 - 1/(b_2 - 1/(... - 1/b_s))` as an exact rational.
    pub fn evaluate(&self) -> Option<Ratio<i64>> {
        let (last, rest) = self.coeffs.split_last()?;
        let mut value = Ratio::from_integer(*last);
        for b in rest.iter().rev() {
            value = Ratio::from_integer(*b) - value.recip();
        }
        Some(value)
    }

    pub fn reversed(&self) -> HJExpansion {
        HJExpansion {
            coeffs: self.coeffs.iter().rev().copied().collect(),
        }
    }
}

/// A smooth two-dimensional cone of the resolution fan with its dual basis.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FanChart {
    pub index: usize,
    /// `(u_i, u_{i+1})`, the second ray closer to the `e^2` axis.
    pub rays: (NPoint, NPoint),
    /// `[α, β]` with `<α, u> = 1, <α, u'> = 0` and `<β, u> = 0, <β, u'> = 1`.
    pub dual_pair: [[i64; 2]; 2],
}

impl FanChart {
    pub fn alpha(&self) -> [i64; 2] {
        self.dual_pair[0]
    }

    pub fn beta(&self) -> [i64; 2] {
        self.dual_pair[1]
    }

    /// Nontrivial labels of the two rays (end rays carry none).
    pub fn labels(&self) -> Vec<CharIndex> {
        [self.rays.0, self.rays.1]
            .iter()
            .filter_map(|u| {
                let q = u.q.rem_euclid(u.r);
                (q != 0).then_some(CharIndex(q as u32))
            })
            .collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExceptionalCurve {
    /// 1-based position along the chain.
    pub index: usize,
    pub ray: NPoint,
    pub self_intersection: i64,
    pub special_rep: CharIndex,
    /// `(x^q, y^p)`: both sides carry character `q`.
    pub ratio_pair: (Monomial, Monomial),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Resolution {
    pub group: GroupParams,
    pub boundary: Vec<NPoint>,
    pub curves: Vec<ExceptionalCurve>,
    pub charts: Vec<FanChart>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChainNode {
    pub index: usize,
    pub self_intersection: i64,
    pub rep: CharIndex,
}

/// The dual graph `E_1 - E_2 - ... - E_s` with the axis rays at both ends.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChainGraph {
    pub nodes: Vec<ChainNode>,
    /// Pairs of 0-based node positions.
    pub edges: Vec<(usize, usize)>,
    /// Strict transforms of the axes: the `e^1` ray next to `E_1`, the `e^2` ray next to `E_s`.
    pub ends: [NPoint; 2],
}

/// Hirzebruch-Jung expansion via `(r, a) -> (a, b a - r)`, `b = ceil(r / a)`.
pub fn hj_expansion(g: GroupParams) -> HJExpansion {
    let (mut num, mut den) = (g.order() as i64, g.exponent() as i64);
    let mut coeffs = Vec::new();
    while den > 0 {
        let b = (num + den - 1) / den;
        coeffs.push(b);
        (num, den) = (den, b * den - num);
    }
    HJExpansion { coeffs }
}

fn cross(o: &NPoint, a: &NPoint, b: &NPoint) -> i64 {
    (a.p - o.p) * (b.q - o.q) - (a.q - o.q) * (b.p - o.p)
}

/// Lattice points on the compact boundary of `conv(N ∩ σ \ {0})`, from
/// `e^1 = (r,0)/r` to `e^2 = (0,r)/r`, collinear points included.
pub fn newton_boundary(g: GroupParams) -> Vec<NPoint> {
    let r = g.order() as i64;
    let a = g.exponent() as i64;
    // Candidates in [0, r]^2 minus the origin and the corner (r, r); one point per p.
    let mut candidates: Vec<NPoint> = (0..=r)
        .flat_map(|p| (0..=r).map(move |q| (p, q)))
        .filter(|&(p, q)| (q - p * a).rem_euclid(r) == 0)
        .filter(|&(p, q)| (p, q) != (0, 0) && (p, q) != (r, r))
        .map(|(p, q)| NPoint { p, q, r })
        .collect();
    candidates.sort_by_key(|u| (u.p, u.q));

    // Lower convex chain from (0, r) to (r, 0); only strict right turns are popped.
    let mut hull: Vec<NPoint> = Vec::new();
    for u in candidates {
        while hull.len() >= 2 && cross(&hull[hull.len() - 2], &hull[hull.len() - 1], &u) < 0 {
            hull.pop();
        }
        hull.push(u);
    }
    hull.reverse();
    debug_assert_eq!(hull.first().map(|u| (u.p, u.q)), Some((r, 0)));
    debug_assert_eq!(hull.last().map(|u| (u.p, u.q)), Some((0, r)));
    hull
}

/// `-b_i` for each interior boundary point, where `u_{i-1} + u_{i+1} = b_i u_i`.
pub fn self_intersections(boundary: &[NPoint]) -> Result<Vec<i64>> {
    boundary
        .windows(3)
        .enumerate()
        .map(|(k, w)| {
            let (prev, mid, next) = (w[0], w[1], w[2]);
            let (sp, sq) = (prev.p + next.p, prev.q + next.q);
            let b = if mid.p != 0 { sp / mid.p } else { sq / mid.q };
            if b < 2 || b * mid.p != sp || b * mid.q != sq {
                return Err(Error::NonIntegralRelation { index: k + 1 });
            }
            Ok(-b)
        })
        .collect()
}

/// Dual basis of the cone `(u, u')`: `α = (q', -p')`, `β = (-q, p)`.
fn dual_basis(u: &NPoint, v: &NPoint) -> [[i64; 2]; 2] {
    [[v.q, -v.p], [-u.q, u.p]]
}

pub fn build_resolution(g: GroupParams) -> Result<Resolution> {
    let boundary = newton_boundary(g);
    let self_ints = self_intersections(&boundary)?;
    let r = g.order() as i64;
    let curves = boundary[1..boundary.len() - 1]
        .iter()
        .zip(self_ints)
        .enumerate()
        .map(|(k, (ray, self_intersection))| ExceptionalCurve {
            index: k + 1,
            ray: *ray,
            self_intersection,
            special_rep: CharIndex(ray.q.rem_euclid(r) as u32),
            ratio_pair: (Monomial::x(ray.q as u32), Monomial::y(ray.p as u32)),
        })
        .collect();
    let charts = boundary
        .windows(2)
        .enumerate()
        .map(|(index, w)| FanChart {
            index,
            rays: (w[0], w[1]),
            dual_pair: dual_basis(&w[0], &w[1]),
        })
        .collect();
    Ok(Resolution {
        group: g,
        boundary,
        curves,
        charts,
    })
}

pub fn dual_graph(curves: &[ExceptionalCurve]) -> ChainGraph {
    let nodes: Vec<ChainNode> = curves
        .iter()
        .map(|c| ChainNode {
            index: c.index,
            self_intersection: c.self_intersection,
            rep: c.special_rep,
        })
        .collect();
    let edges = (1..nodes.len()).map(|k| (k - 1, k)).collect();
    let r = curves.first().map_or(1, |c| c.ray.r);
    ChainGraph {
        nodes,
        edges,
        ends: [NPoint { p: r, q: 0, r }, NPoint { p: 0, q: r, r }],
    }
}

impl Resolution {
    pub fn dual_graph(&self) -> ChainGraph {
        let mut graph = dual_graph(&self.curves);
        graph.ends = [self.boundary[0], self.boundary[self.boundary.len() - 1]];
        graph
    }

    /// Tridiagonal intersection matrix in chain order.
    pub fn intersection_matrix(&self) -> Vec<Vec<i64>> {
        let s = self.curves.len();
        let mut m = vec![vec![0; s]; s];
        for (k, c) in self.curves.iter().enumerate() {
            m[k][k] = c.self_intersection;
            if k + 1 < s {
                m[k][k + 1] = 1;
                m[k + 1][k] = 1;
            }
        }
        m
    }
}

/// Exact determinant by fraction-free Gaussian elimination.
pub fn determinant(m: &[Vec<i64>]) -> i128 {
    let n = m.len();
    if n == 0 {
        return 1;
    }
    let mut a: Vec<Vec<i128>> = m
        .iter()
        .map(|row| row.iter().map(|&v| v as i128).collect())
        .collect();
    let mut sign = 1;
    let mut prev = 1i128;
    for k in 0..n - 1 {
        if a[k][k] == 0 {
            match (k + 1..n).find(|&i| a[i][k] != 0) {
                Some(i) => {
                    a.swap(i, k);
                    sign = -sign;
                }
                None => return 0,
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
            }
        }
        prev = a[k][k];
    }
    sign * a[n - 1][n - 1]
}

/// All leading principal minors of `-m` are positive.
pub fn is_negative_definite(m: &[Vec<i64>]) -> bool {
    let neg: Vec<Vec<i64>> = m.iter().map(|row| row.iter().map(|v| -v).collect()).collect();
    (1..=neg.len()).all(|k| {
        let minor: Vec<Vec<i64>> = neg[..k].iter().map(|row| row[..k].to_vec()).collect();
        determinant(&minor) > 0
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::make_group;
    use proptest::prelude::*;

    fn pts(r: i64, items: &[(i64, i64)]) -> Vec<NPoint> {
        items.iter().map(|&(p, q)| NPoint { p, q, r }).collect()
    }

    #[test]
    fn hj_examples() {
        let hj = |r, a| hj_expansion(make_group(r, a).unwrap()).coeffs;
        assert_eq!(hj(7, 3), [3, 2, 2]);
        assert_eq!(hj(4, 1), [4]);
        assert_eq!(hj(5, 2), [3, 2]);
        for r in 2..15 {
            assert_eq!(hj(r, r - 1), vec![2; (r - 1) as usize]);
        }
    }

    #[test]
    fn boundary_examples() {
        let nb = |r, a| newton_boundary(make_group(r, a).unwrap());
        assert_eq!(nb(7, 3), pts(7, &[(7, 0), (5, 1), (3, 2), (1, 3), (0, 7)]));
        assert_eq!(nb(2, 1), pts(2, &[(2, 0), (1, 1), (0, 2)]));
        assert_eq!(nb(4, 1), pts(4, &[(4, 0), (1, 1), (0, 4)]));
    }

    #[test]
    fn self_intersection_examples() {
        let si = |r, a| self_intersections(&newton_boundary(make_group(r, a).unwrap())).unwrap();
        assert_eq!(si(7, 3), [-2, -2, -3]);
        assert_eq!(si(2, 1), [-2]);
        for r in 2..15 {
            assert!(si(r, r - 1).iter().all(|&b| b == -2));
        }
    }

    #[test]
    fn broken_boundary_is_rejected() {
        let bad = pts(7, &[(7, 0), (3, 2), (5, 1), (0, 7)]);
        assert!(matches!(
            self_intersections(&bad),
            Err(Error::NonIntegralRelation { .. })
        ));
    }

    #[test]
    fn resolution_c73() {
        let res = build_resolution(make_group(7, 3).unwrap()).unwrap();
        let reps: Vec<u32> = res.curves.iter().map(|c| c.special_rep.0).collect();
        assert_eq!(reps, [1, 2, 3]);
        let e2 = &res.curves[1];
        assert_eq!(e2.ray, NPoint { p: 3, q: 2, r: 7 });
        assert_eq!(e2.ratio_pair, (Monomial::x(2), Monomial::y(3)));
        assert_eq!(res.charts.len(), 4);
        assert_eq!(res.charts[0].dual_pair, [[1, -5], [0, 7]]);
        assert_eq!(res.charts[1].dual_pair, [[2, -3], [-1, 5]]);
        assert_eq!(res.charts[3].dual_pair, [[7, 0], [-3, 1]]);
    }

    #[test]
    fn dual_graph_examples() {
        let graph = build_resolution(make_group(7, 3).unwrap()).unwrap().dual_graph();
        let labels: Vec<(i64, u32)> = graph
            .nodes
            .iter()
            .map(|n| (n.self_intersection, n.rep.0))
            .collect();
        assert_eq!(labels, [(-2, 1), (-2, 2), (-3, 3)]);
        assert_eq!(graph.edges, [(0, 1), (1, 2)]);

        let a1 = build_resolution(make_group(2, 1).unwrap()).unwrap().dual_graph();
        assert_eq!(a1.nodes.len(), 1);
        assert!(a1.edges.is_empty());
        assert_eq!((a1.nodes[0].self_intersection, a1.nodes[0].rep.0), (-2, 1));

        let a5 = build_resolution(make_group(6, 5).unwrap()).unwrap().dual_graph();
        assert_eq!(a5.nodes.len(), 5);
        assert!(a5.nodes.iter().all(|n| n.self_intersection == -2));
        assert_eq!(a5.edges.len(), 4);
    }

    #[test]
    fn continued_fraction_evaluation() {
        let hj = HJExpansion { coeffs: vec![3, 2, 2] };
        assert_eq!(hj.evaluate(), Some(Ratio::new(7, 3)));
        assert_eq!(HJExpansion { coeffs: vec![] }.evaluate(), None);
    }

    #[test]
    fn determinants() {
        assert_eq!(determinant(&[vec![2, -1], vec![-1, 2]]), 3);
        assert_eq!(determinant(&[vec![0, 1], vec![1, 0]]), -1);
        assert_eq!(determinant(&[vec![1, 2], vec![2, 4]]), 0);
        assert!(is_negative_definite(&[vec![-2, 1], vec![1, -2]]));
        assert!(!is_negative_definite(&[vec![-1, 1], vec![1, -1]]));
    }

    fn small_group() -> impl Strategy<Value = GroupParams> {
        (2i64..70, 1i64..70).prop_filter_map("not small", |(r, a)| make_group(r, a).ok())
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(128))]

        #[test]
        fn resolution_invariants(g in small_group()) {
            let r = g.order() as i64;
            let hj = hj_expansion(g);
            prop_assert!(hj.coeffs.iter().all(|&b| b >= 2));
            prop_assert_eq!(hj.evaluate(), Some(Ratio::new(r, g.exponent() as i64)));

            let res = build_resolution(g).unwrap();
            prop_assert_eq!(res.curves.len(), hj.len());
            for w in res.boundary.windows(2) {
                prop_assert_eq!(w[0].det(&w[1]), r);
            }
            // Read from the e^1 side the chain is HJ(r/a') negated; from the e^2 side, HJ(r/a).
            let inverse = make_group(r, g.inverse_exponent() as i64).unwrap();
            let from_e1: Vec<i64> = res.curves.iter().map(|c| -c.self_intersection).collect();
            prop_assert_eq!(&from_e1, &hj_expansion(inverse).coeffs);
            prop_assert_eq!(hj.reversed().coeffs, from_e1);

            for c in &res.curves {
                prop_assert!(c.self_intersection <= -2);
                prop_assert_eq!((c.ray.p * g.exponent() as i64 - c.ray.q).rem_euclid(r), 0);
                prop_assert_eq!(g.character(c.ratio_pair.0.m, 0), g.character(0, c.ratio_pair.1.n));
            }
            for chart in &res.charts {
                let (u, v) = chart.rays;
                for w in chart.dual_pair {
                    prop_assert!(g.laurent_character(w).is_trivial());
                }
                let one = Ratio::from_integer(1);
                let zero = Ratio::from_integer(0);
                prop_assert_eq!(u.pairing(chart.alpha()), one);
                prop_assert_eq!(v.pairing(chart.alpha()), zero);
                prop_assert_eq!(u.pairing(chart.beta()), zero);
                prop_assert_eq!(v.pairing(chart.beta()), one);
            }
            // Adjacent charts glue along the shared ray: β_{k+1} = -α_k.
            for w in res.charts.windows(2) {
                let a = w[0].alpha();
                prop_assert_eq!(w[1].beta(), [-a[0], -a[1]]);
            }
            let m = res.intersection_matrix();
            prop_assert!(is_negative_definite(&m));
            let neg: Vec<Vec<i64>> = m.iter().map(|row| row.iter().map(|v| -v).collect()).collect();
            prop_assert_eq!(determinant(&neg), r as i128);
        }
    }
}
