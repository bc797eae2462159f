//! Cross-validation of the representation-theoretic, toric and
//! Hilbert-scheme descriptions of one group, and sweeps over many groups.

use std::collections::BTreeSet;
use std::fmt;

use num_rational::Ratio;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::cluster::{
    an_corollary_check, chart_deformation, cluster_ideal, cotangent_against, enumerate_clusters,
    reconstruct_chain, ChartDeformation, ClusterIdeal, GCluster,
};
use crate::group::{gcd, make_group, CharIndex, GroupParams};
use crate::monomial::Lattice;
use crate::quiver::{cartan_matrix, quiver_graph, tensor_matrix};
use crate::toric::{build_resolution, hj_expansion, is_negative_definite, Resolution};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub status: Status,
    pub detail: String,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Counts {
    pub specials: usize,
    pub curves: usize,
    pub clusters: usize,
    pub hj_length: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ValidationReport {
    pub group: (u32, u32),
    pub checks: Vec<Check>,
    pub counts: Counts,
}

impl ValidationReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.status == Status::Pass)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| c.status == Status::Fail)
    }

    pub fn check(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }

    fn record(&mut self, name: &str, outcome: Result<String, String>) {
        let (status, detail) = match outcome {
            Ok(detail) => (Status::Pass, detail),
            Err(detail) => (Status::Fail, detail),
        };
        self.checks.push(Check {
            name: name.to_string(),
            status,
            detail,
        });
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (r, a) = self.group;
        let verdict = if self.passed() { "PASS" } else { "FAIL" };
        writeln!(
            f,
            "C({r},{a}) {verdict}  specials={} curves={} clusters={} hj_length={}",
            self.counts.specials, self.counts.curves, self.counts.clusters, self.counts.hj_length
        )?;
        for c in &self.checks {
            let mark = match c.status {
                Status::Pass => "ok  ",
                Status::Fail => "FAIL",
            };
            writeln!(f, "  [{mark}] {:<24} {}", c.name, c.detail)?;
        }
        Ok(())
    }
}

fn ensure(cond: bool, fail: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(fail())
    }
}

fn labels(set: impl IntoIterator<Item = CharIndex>) -> String {
    let parts: Vec<String> = set.into_iter().map(|c| c.0.to_string()).collect();
    format!("{{{}}}", parts.join(","))
}

struct ClusterRow {
    cluster: GCluster,
    ideal: ClusterIdeal,
    deformation: Result<ChartDeformation, String>,
}

/// Runs every consistency check on one group. Failures are recorded, never raised.
pub fn check_group(g: GroupParams) -> ValidationReport {
    let (r, a) = (g.order(), g.exponent());
    let mut report = ValidationReport {
        group: (r, a),
        checks: Vec::new(),
        counts: Counts::default(),
    };

    let lattice = Lattice::new(g);
    let specials = lattice.special_reps();
    let hj = hj_expansion(g);
    let resolution: Result<Resolution, String> = build_resolution(g).map_err(|e| e.to_string());
    let clusters: Result<Vec<ClusterRow>, String> = enumerate_clusters(g)
        .map_err(|e| e.to_string())
        .map(|cs| {
            cs.into_iter()
                .map(|cluster| {
                    let ideal = cluster_ideal(g, &cluster);
                    let deformation =
                        chart_deformation(&lattice, &ideal).map_err(|e| e.to_string());
                    ClusterRow {
                        cluster,
                        ideal,
                        deformation,
                    }
                })
                .collect()
        });

    report.counts = Counts {
        specials: specials.specials.len(),
        curves: resolution.as_ref().map_or(0, |res| res.curves.len()),
        clusters: clusters.as_ref().map_or(0, |cs| cs.len()),
        hj_length: hj.len(),
    };
    let counts = report.counts;

    // (a) Wunram: specials <-> curves <-> HJ length.
    report.record(
        "wunram_count",
        resolution.as_ref().map_err(Clone::clone).and_then(|res| {
            let interior = res.boundary.len() - 2;
            ensure(
                counts.specials == counts.hj_length
                    && counts.hj_length == interior
                    && interior == res.curves.len(),
                || {
                    format!(
                        "specials={} hj={} boundary_interior={interior}",
                        counts.specials, counts.hj_length
                    )
                },
            )?;
            let curve_labels: BTreeSet<CharIndex> =
                res.curves.iter().map(|c| c.special_rep).collect();
            ensure(
                curve_labels == specials.specials && curve_labels.len() == res.curves.len(),
                || {
                    format!(
                        "curve labels {} vs specials {}",
                        labels(curve_labels.iter().copied()),
                        labels(specials.specials.iter().copied())
                    )
                },
            )?;
            Ok(format!("s = {}", counts.specials))
        }),
    );

    // (b) Three independent speciality criteria.
    report.record("speciality_criteria", {
        let mut bad = Vec::new();
        for i in g.nontrivial_characters() {
            let by_excess = specials.is_special(i);
            let by_count = lattice.module_generators(i).len() == 2;
            let by_surjectivity = lattice.surjectivity_oracle(i).unwrap_or(!by_excess);
            if by_excess != by_count || by_excess != by_surjectivity {
                bad.push(format!("{i}: {by_excess}/{by_count}/{by_surjectivity}"));
            }
        }
        ensure(bad.is_empty(), || bad.join("; "))
            .map(|_| format!("specials {}", labels(specials.specials.iter().copied())))
    });

    // (c) One torus-fixed cluster per chart.
    report.record(
        "cluster_count",
        clusters.as_ref().map_err(Clone::clone).and_then(|cs| {
            ensure(cs.len() == counts.hj_length + 1, || {
                format!("{} clusters for s = {}", cs.len(), counts.hj_length)
            })
            .map(|_| format!("{} clusters", cs.len()))
        }),
    );

    // (d) Regular representation, recomputed from the cells.
    report.record(
        "regular_representation",
        clusters.as_ref().map_err(Clone::clone).and_then(|cs| {
            for row in cs {
                let chars: BTreeSet<CharIndex> = row
                    .cluster
                    .cells()
                    .map(|u| g.monomial_character(u.m as i64, u.n as i64))
                    .collect::<Result<_, _>>()
                    .map_err(|e| e.to_string())?;
                ensure(
                    row.cluster.cells().count() == r as usize && chars.len() == r as usize,
                    || format!("cluster {:?} is not regular", row.cluster.columns),
                )?;
            }
            Ok("every character exactly once".into())
        }),
    );

    // (e) Cotangent characters are special; exactly two end clusters.
    report.record(
        "cotangent_speciality",
        clusters.as_ref().map_err(Clone::clone).and_then(|cs| {
            let mut singles = 0;
            for row in cs {
                cotangent_against(&specials.specials, &row.ideal).map_err(|e| e.to_string())?;
                let zeros = row.ideal.cotangent.iter().filter(|c| c.is_trivial()).count();
                ensure(zeros == 1, || {
                    format!("ideal {} has {zeros} invariant generators", row.ideal)
                })?;
                match row.ideal.nontrivial_cotangent().len() {
                    1 => singles += 1,
                    2 => {}
                    n => return Err(format!("ideal {} has {n} nontrivial characters", row.ideal)),
                }
            }
            ensure(singles == 2, || format!("{singles} end clusters"))?;
            Ok("I/mI = ρ_i ⊕ ρ_0 or ρ_i ⊕ ρ_j ⊕ ρ_0".into())
        }),
    );

    // (f) Chain from cotangent data = chain from lattice geometry.
    report.record(
        "chain_agreement",
        match (&resolution, &clusters) {
            (Ok(res), Ok(cs)) => {
                let list: Vec<GCluster> = cs.iter().map(|row| row.cluster.clone()).collect();
                reconstruct_chain(g, &list)
                    .map_err(|e| e.to_string())
                    .and_then(|chain| {
                        let toric: Vec<CharIndex> =
                            res.dual_graph().nodes.iter().map(|n| n.rep).collect();
                        ensure(chain.nodes == toric, || {
                            format!(
                                "clusters give {} but fan gives {}",
                                labels(chain.nodes.iter().copied()),
                                labels(toric.iter().copied())
                            )
                        })
                        .map(|_| {
                            let path: Vec<String> =
                                chain.nodes.iter().map(|c| c.to_string()).collect();
                            path.join(" — ")
                        })
                    })
            }
            (Err(e), _) | (_, Err(e)) => Err(e.clone()),
        },
    );

    // (g) Deformation exponents = dual bases of the fan charts.
    report.record(
        "chart_agreement",
        match (&resolution, &clusters) {
            (Ok(res), Ok(cs)) => (|| {
                ensure(res.charts.len() == cs.len(), || {
                    format!("{} charts vs {} clusters", res.charts.len(), cs.len())
                })?;
                for (chart, row) in res.charts.iter().zip(cs) {
                    let d = row.deformation.as_ref().map_err(Clone::clone)?;
                    let chart_labels: BTreeSet<CharIndex> = chart.labels().into_iter().collect();
                    ensure(chart_labels == row.ideal.nontrivial_cotangent(), || {
                        format!("chart {} labels differ from ideal {}", chart.index, row.ideal)
                    })?;
                    let from_cluster: BTreeSet<[i64; 2]> =
                        [d.alpha_exponent, d.beta_exponent].into_iter().collect();
                    let from_fan: BTreeSet<[i64; 2]> = chart.dual_pair.into_iter().collect();
                    ensure(from_cluster == from_fan, || {
                        format!(
                            "chart {}: cluster {:?} vs fan {:?}",
                            chart.index, from_cluster, from_fan
                        )
                    })?;
                }
                Ok(format!("{} charts", res.charts.len()))
            })(),
            (Err(e), _) | (_, Err(e)) => Err(e.clone()),
        },
    );

    // α = β = 0 recovers each cluster ideal.
    report.record(
        "deformation_degeneration",
        clusters.as_ref().map_err(Clone::clone).and_then(|cs| {
            for row in cs {
                let d = row.deformation.as_ref().map_err(Clone::clone)?;
                ensure(d.degenerate() == row.ideal.generators, || {
                    format!("ideal {} is not the special fibre", row.ideal)
                })?;
            }
            Ok("ok".into())
        }),
    );

    // (h) Smooth cones, HJ identities, negative definiteness.
    report.record(
        "unimodularity",
        resolution.as_ref().map_err(Clone::clone).and_then(|res| {
            for w in res.boundary.windows(2) {
                ensure(w[0].det(&w[1]) == r as i64, || {
                    format!("cone {} {} has determinant {}", w[0], w[1], w[0].det(&w[1]))
                })?;
            }
            Ok(format!("{} cones", res.boundary.len() - 1))
        }),
    );
    report.record(
        "hj_reversal",
        resolution.as_ref().map_err(Clone::clone).and_then(|res| {
            let inverse = make_group(r as i64, g.inverse_exponent() as i64)
                .map_err(|e| e.to_string())?;
            let reversed = hj.reversed();
            let from_e1: Vec<i64> = res.curves.iter().map(|c| -c.self_intersection).collect();
            ensure(
                reversed == hj_expansion(inverse) && reversed.coeffs == from_e1,
                || format!("HJ reversed {:?} vs HJ(r/a') {:?}", reversed.coeffs, hj_expansion(inverse).coeffs),
            )?;
            ensure(
                hj.evaluate() == Some(Ratio::new(r as i64, a as i64)),
                || format!("{:?} does not evaluate to {r}/{a}", hj.coeffs),
            )?;
            Ok(format!("HJ = {:?}", hj.coeffs))
        }),
    );
    report.record(
        "negative_definite",
        resolution.as_ref().map_err(Clone::clone).and_then(|res| {
            ensure(is_negative_definite(&res.intersection_matrix()), || {
                "intersection matrix is not negative definite".into()
            })
            .map(|_| "leading minors of -M positive".into())
        }),
    );

    // Tensor matrix shape.
    report.record("tensor_matrix", {
        let t = tensor_matrix(g);
        ensure(
            t.row_sums().iter().all(|&s| s == 2)
                && t.column_sums().iter().all(|&s| s == 2)
                && t.is_symmetric() == g.is_in_sl2(),
            || "row/column sums or symmetry mismatch".into(),
        )
        .map(|_| "rows and columns sum to 2".into())
    });

    // (i) B = L <=> SL(2) <=> every nontrivial representation special.
    report.record("sl2_trichotomy", {
        let b_is_l = *lattice.g_basis() == lattice.l_space();
        let all_special = specials.specials.len() == r as usize - 1;
        ensure(
            b_is_l == g.is_in_sl2() && all_special == g.is_in_sl2(),
            || format!("B=L {b_is_l}, SL(2) {}, all special {all_special}", g.is_in_sl2()),
        )
        .map(|_| format!("SL(2) = {}", g.is_in_sl2()))
    });

    // (j) SL(2) only: McKay's observation and the A_n corollary.
    if g.is_in_sl2() {
        report.record(
            "cartan_opposition",
            cartan_matrix(g).map_err(|e| e.to_string()).and_then(|c| {
                ensure(c.opposite, || "intersection matrix != -(2I - A)".into())?;
                ensure(quiver_graph(g).is_affine_a_cycle(), || {
                    "quiver is not the affine A cycle".into()
                })?;
                Ok("intersection = -Cartan".into())
            }),
        );
        report.record(
            "an_corollary",
            an_corollary_check(g)
                .map_err(|e| e.to_string())
                .and_then(|ok| {
                    ensure(ok, || "cluster ideals differ from (x^k, y^(r-k+1), xy)".into())
                })
                .map(|_| format!("{r} ideals (x^k, y^(r-k+1), xy)")),
        );
    }

    report
}

/// All small `(r, a)` with `2 <= r <= r_max`, in lexicographic order.
pub fn small_groups(r_max: u32) -> Vec<GroupParams> {
    (2..=r_max as i64)
        .flat_map(|r| (1..r).filter(move |&a| gcd(r, a) == 1).map(move |a| (r, a)))
        .map(|(r, a)| make_group(r, a).expect("filtered to small pairs"))
        .collect()
}

/// `check_group` over every small group up to `r_max`, computed in parallel;
/// results keep the lexicographic `(r, a)` order.
pub fn sweep(r_max: u32) -> Vec<ValidationReport> {
    small_groups(r_max).into_par_iter().map(check_group).collect()
}
