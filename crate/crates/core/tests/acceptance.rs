//! Acceptance criteria. Runs without the libtest harness so that every
//! criterion prints exactly one PASS/FAIL line; exits non-zero on failure.
//!
//! All comparisons are exact (integer / rational equality, zero tolerance).

use std::collections::BTreeSet;
use std::process::{Command, ExitCode};

use num_rational::Ratio;
use special_mckay::check::small_groups;
use special_mckay::cluster::{
    chart_deformation, cluster_ideal, cotangent_decomposition, enumerate_clusters,
    reconstruct_chain, ChartDeformation, ClusterIdeal, GCluster,
};
use special_mckay::monomial::minimalize;
use special_mckay::quiver::{cartan_matrix, quiver_graph, tensor_matrix};
use special_mckay::toric::{
    build_resolution, hj_expansion, is_negative_definite, newton_boundary, HJExpansion, Resolution,
};
use special_mckay::{make_group, CharIndex, GroupParams, Lattice, Monomial, MonomialSet, SpecialReport};

const SWEEP_MAX: u32 = 60;
const AN_MAX: i64 = 50;

type Outcome = Result<String, String>;

macro_rules! require {
    ($cond:expr, $($fmt:tt)+) => {
        if !$cond {
            return Err(format!($($fmt)+));
        }
    };
}

struct GroupCase {
    group: GroupParams,
    lattice: Lattice,
    specials: SpecialReport,
    hj: HJExpansion,
    resolution: Resolution,
    clusters: Vec<GCluster>,
    ideals: Vec<ClusterIdeal>,
    deformations: Vec<ChartDeformation>,
}

impl GroupCase {
    fn new(group: GroupParams) -> Result<Self, String> {
        let lattice = Lattice::new(group);
        let specials = lattice.special_reps();
        let resolution = build_resolution(group).map_err(|e| format!("{group}: {e}"))?;
        let clusters = enumerate_clusters(group).map_err(|e| format!("{group}: {e}"))?;
        let ideals: Vec<ClusterIdeal> = clusters.iter().map(|c| cluster_ideal(group, c)).collect();
        let deformations = ideals
            .iter()
            .map(|i| chart_deformation(&lattice, i))
            .collect::<Result<Vec<_>, _>>()
            .map_err(|e| format!("{group}: {e}"))?;
        Ok(GroupCase {
            group,
            specials,
            hj: hj_expansion(group),
            resolution,
            clusters,
            ideals,
            deformations,
            lattice,
        })
    }
}

fn set(items: &[(u32, u32)]) -> MonomialSet {
    items.iter().map(|&(m, n)| Monomial::new(m, n)).collect()
}

fn ids(v: &[u32]) -> Vec<CharIndex> {
    v.iter().map(|&i| CharIndex(i)).collect()
}

fn criterion_1_worked_example() -> Outcome {
    let g = make_group(7, 3).map_err(|e| e.to_string())?;
    let case = GroupCase::new(g)?;

    require!(
        case.specials.specials == ids(&[1, 2, 3]).into_iter().collect(),
        "specials {:?}",
        case.specials.specials
    );
    let excess = case.lattice.basis_excess();
    require!(excess == set(&[(1, 1), (2, 1), (3, 1)]), "B\\L = {excess:?}");
    let excess_chars: Vec<CharIndex> = excess.iter().map(|u| g.character(u.m, u.n)).collect();
    require!(excess_chars == ids(&[4, 5, 6]), "B\\L characters {excess_chars:?}");
    require!(case.resolution.curves.len() == 3, "{} curves", case.resolution.curves.len());
    require!(case.clusters.len() == 4, "{} clusters", case.clusters.len());

    let i2 = set(&[(0, 5), (2, 0), (1, 2)]);
    let i3 = set(&[(0, 3), (3, 0), (1, 2)]);
    let pos2 = case.ideals.iter().position(|i| i.generators == i2);
    let pos3 = case.ideals.iter().position(|i| i.generators == i3);
    let (Some(pos2), Some(pos3)) = (pos2, pos3) else {
        return Err("ideals (y^5, x^2, xy^2) and (y^3, x^3, xy^2) not both present".into());
    };
    let cot2 = cotangent_decomposition(&case.lattice, &case.ideals[pos2]).map_err(|e| e.to_string())?;
    let cot3 = cotangent_decomposition(&case.lattice, &case.ideals[pos3]).map_err(|e| e.to_string())?;
    require!(cot2 == ids(&[0, 1, 2]), "I2/mI2 = {cot2:?}");
    require!(cot3 == ids(&[0, 2, 3]), "I3/mI3 = {cot3:?}");

    let chain = reconstruct_chain(g, &case.clusters).map_err(|e| e.to_string())?;
    require!(chain.nodes == ids(&[1, 2, 3]), "chain {:?}", chain.nodes);
    let toric: Vec<CharIndex> = case.resolution.dual_graph().nodes.iter().map(|n| n.rep).collect();
    require!(toric == ids(&[1, 2, 3]), "dual graph labels {toric:?}");

    let e2 = &case.resolution.curves[1];
    require!(
        e2.special_rep == CharIndex(2) && e2.ratio_pair == (Monomial::x(2), Monomial::y(3)),
        "E2 = {:?} with ratio {:?}",
        e2.special_rep,
        e2.ratio_pair
    );
    let point = case.deformations[pos2].curve_point_ideal().to_string();
    require!(point == "(α·x^2 − β·y^3, xy^2 − γ)", "point ideal on E2: {point}");
    Ok("specials {ρ1,ρ2,ρ3}, 3 curves, 4 clusters, I2/I3 and chain match".into())
}

fn criterion_2_an_family() -> Outcome {
    for r in 2..=AN_MAX {
        let g = make_group(r, r - 1).map_err(|e| e.to_string())?;
        let case = GroupCase::new(g)?;
        let ru = r as u32;
        require!(*case.lattice.g_basis() == case.lattice.l_space(), "{g}: B(G) != L(G)");
        require!(
            case.specials.specials.len() == ru as usize - 1,
            "{g}: {} specials",
            case.specials.specials.len()
        );
        require!(case.hj.coeffs == vec![2; ru as usize - 1], "{g}: HJ {:?}", case.hj.coeffs);
        require!(case.clusters.len() == ru as usize, "{g}: {} clusters", case.clusters.len());
        let found: BTreeSet<Vec<Monomial>> = case
            .ideals
            .iter()
            .map(|i| i.generators.iter().copied().collect())
            .collect();
        let expected: BTreeSet<Vec<Monomial>> = (1..=ru)
            .map(|k| {
                minimalize(&[Monomial::x(k), Monomial::y(ru - k + 1), Monomial::new(1, 1)])
                    .into_iter()
                    .collect()
            })
            .collect();
        require!(found == expected, "{g}: cluster ideals differ from (x^k, y^(r-k+1), xy)");
        require!(quiver_graph(g).is_affine_a_cycle(), "{g}: quiver is not the affine A cycle");

        let cartan = cartan_matrix(g).map_err(|e| e.to_string())?;
        let n = ru as usize - 1;
        let a_n: Vec<Vec<i64>> = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| match i.abs_diff(j) {
                        0 => 2,
                        1 => -1,
                        _ => 0,
                    })
                    .collect()
            })
            .collect();
        require!(cartan.cartan == a_n, "{g}: 2I - A is not the A_{n} Cartan matrix");
        let neg: Vec<Vec<i64>> = a_n.iter().map(|row| row.iter().map(|v| -v).collect()).collect();
        require!(cartan.intersection == neg, "{g}: intersection != -Cartan");
    }
    Ok(format!("r = 2..={AN_MAX}, a = r-1"))
}

fn criterion_3_wunram_count(cases: &[GroupCase]) -> Outcome {
    for case in cases {
        let g = case.group;
        let interior = newton_boundary(g).len() - 2;
        let specials = case.specials.specials.len();
        require!(
            specials == case.hj.len() && case.hj.len() == interior,
            "{g}: specials {specials}, HJ {}, boundary interior {interior}",
            case.hj.len()
        );
        require!(
            case.clusters.len() == specials + 1,
            "{g}: {} clusters for {specials} specials",
            case.clusters.len()
        );
    }
    Ok(format!("{} groups with r <= {SWEEP_MAX}", cases.len()))
}

fn criterion_4_oracle_equivalence(cases: &[GroupCase]) -> Outcome {
    let mut comparisons = 0;
    for case in cases {
        let g = case.group;
        for i in g.nontrivial_characters() {
            let by_excess = case.specials.is_special(i);
            let by_count = case.lattice.module_generators(i).len() == 2;
            let by_surjectivity = case.lattice.surjectivity_oracle(i).map_err(|e| e.to_string())?;
            require!(
                by_excess == by_count && by_count == by_surjectivity,
                "{g} {i}: B\\L {by_excess}, two generators {by_count}, surjective {by_surjectivity}"
            );
            comparisons += 1;
        }
    }
    Ok(format!("{comparisons} (group, ρ_i) pairs agree"))
}

fn criterion_5_geometry_agreement(cases: &[GroupCase]) -> Outcome {
    for case in cases {
        let g = case.group;
        let r = g.order() as i64;
        let chain = reconstruct_chain(g, &case.clusters).map_err(|e| format!("{g}: {e}"))?;
        let graph = case.resolution.dual_graph();
        let toric: Vec<CharIndex> = graph.nodes.iter().map(|n| n.rep).collect();
        require!(chain.nodes == toric, "{g}: clusters {:?} vs fan {toric:?}", chain.nodes);
        let toric_edges: Vec<(CharIndex, CharIndex)> = graph
            .edges
            .iter()
            .map(|&(i, j)| (graph.nodes[i].rep, graph.nodes[j].rep))
            .collect();
        require!(chain.edges == toric_edges, "{g}: edge lists differ");

        require!(
            case.resolution.charts.len() == case.deformations.len(),
            "{g}: {} charts vs {} clusters",
            case.resolution.charts.len(),
            case.deformations.len()
        );
        for (chart, d) in case.resolution.charts.iter().zip(&case.deformations) {
            let fan: BTreeSet<[i64; 2]> = chart.dual_pair.into_iter().collect();
            let cluster: BTreeSet<[i64; 2]> = [d.alpha_exponent, d.beta_exponent].into_iter().collect();
            require!(fan == cluster, "{g} chart {}: fan {fan:?} vs cluster {cluster:?}", chart.index);
        }
        for w in case.resolution.boundary.windows(2) {
            require!(w[0].det(&w[1]) == r, "{g}: cone {} {} not unimodular", w[0], w[1]);
        }
        let inverse = make_group(r, g.inverse_exponent() as i64).map_err(|e| e.to_string())?;
        require!(
            case.hj.reversed() == hj_expansion(inverse),
            "{g}: HJ reversal fails: {:?} vs {:?}",
            case.hj.coeffs,
            hj_expansion(inverse).coeffs
        );
        require!(
            case.hj.evaluate() == Some(Ratio::new(r, g.exponent() as i64)),
            "{g}: continued fraction does not evaluate to r/a"
        );
    }
    Ok(format!("{} groups: chains, dual pairs, cones, HJ reversal", cases.len()))
}

fn criterion_6_properties(cases: &[GroupCase]) -> Outcome {
    for case in cases {
        let g = case.group;
        let r = g.order() as usize;
        for (c, (ideal, d)) in case.clusters.iter().zip(case.ideals.iter().zip(&case.deformations)) {
            let mut counts = vec![0usize; r];
            for u in c.cells() {
                counts[g.character(u.m, u.n).0 as usize] += 1;
            }
            require!(counts.iter().all(|&k| k == 1), "{g}: cluster {:?} not regular", c.columns);
            require!(
                d.degenerate() == ideal.generators,
                "{g}: α=β=0 does not give {ideal}"
            );
        }
        require!(
            is_negative_definite(&case.resolution.intersection_matrix()),
            "{g}: intersection matrix not negative definite"
        );
        let t = tensor_matrix(g);
        require!(t.row_sums().iter().all(|&s| s == 2), "{g}: tensor row sums");
        require!(t.is_symmetric() == g.is_in_sl2(), "{g}: symmetry vs SL(2)");
    }
    Ok(format!("{} groups", cases.len()))
}

fn criterion_7_determinism() -> Outcome {
    let bin = env!("CARGO_BIN_EXE_special-mckay");
    let base = tempfile::tempdir().map_err(|e| e.to_string())?;
    let mut bundles = Vec::new();
    for run in 0..2 {
        let dir = base.path().join(format!("run{run}"));
        let status = Command::new(bin)
            .args(["report", "7", "3", "-o"])
            .arg(&dir)
            .arg("--quiet")
            .status()
            .map_err(|e| e.to_string())?;
        require!(status.success(), "report 7 3 exited with {status}");
        let mut files: Vec<(String, Vec<u8>)> = std::fs::read_dir(&dir)
            .map_err(|e| e.to_string())?
            .map(|entry| {
                let entry = entry.map_err(|e| e.to_string())?;
                let bytes = std::fs::read(entry.path()).map_err(|e| e.to_string())?;
                Ok((entry.file_name().to_string_lossy().into_owned(), bytes))
            })
            .collect::<Result<_, String>>()?;
        files.sort();
        bundles.push(files);
    }
    require!(!bundles[0].is_empty(), "empty bundle");
    require!(bundles[0] == bundles[1], "bundles differ between runs");
    Ok(format!("{} files byte-identical", bundles[0].len()))
}

fn main() -> ExitCode {
    // libtest flags such as --nocapture may be passed; they do not apply here.
    let sweep: Result<Vec<GroupCase>, String> =
        small_groups(SWEEP_MAX).into_iter().map(GroupCase::new).collect();

    let mut results: Vec<(&str, Outcome)> = vec![
        ("AC1 C(7,3) worked example", criterion_1_worked_example()),
        ("AC2 SL(2) / A_n family", criterion_2_an_family()),
    ];
    match &sweep {
        Ok(cases) => {
            results.push(("AC3 Wunram count sweep", criterion_3_wunram_count(cases)));
            results.push(("AC4 oracle equivalence sweep", criterion_4_oracle_equivalence(cases)));
            results.push(("AC5 geometry/combinatorics sweep", criterion_5_geometry_agreement(cases)));
            results.push(("AC6 property suite", criterion_6_properties(cases)));
        }
        Err(e) => {
            for name in [
                "AC3 Wunram count sweep",
                "AC4 oracle equivalence sweep",
                "AC5 geometry/combinatorics sweep",
                "AC6 property suite",
            ] {
                results.push((name, Err(e.clone())));
            }
        }
    }
    results.push(("AC7 report determinism", criterion_7_determinism()));

    let mut failed = 0;
    for (name, outcome) in &results {
        match outcome {
            Ok(detail) => println!("PASS  {name}: {detail}"),
            Err(detail) => {
                failed += 1;
                println!("FAIL  {name}: {detail}");
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", results.len() - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
