//! JSON, DOT, SVG and plain-text renderings of the data computed for one
//! group. Every document is a pure function of `(r, a)`.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use serde_json::{json, Value};

use crate::check::{check_group, ValidationReport};
use crate::cluster::{
    chart_deformation, cluster_ideal, cotangent_decomposition, enumerate_clusters,
    reconstruct_chain, ChartDeformation, ClusterIdeal, GCluster, ReconstructedChain,
};
use crate::error::Result;
use crate::group::{CharIndex, GroupParams};
use crate::monomial::{format_set, Lattice, Monomial, MonomialSet, SpecialReport};
use crate::quiver::{cartan_matrix, quiver_graph, tensor_matrix, CartanData, Quiver, TensorMatrix};
use crate::toric::{build_resolution, hj_expansion, HJExpansion, NPoint, Resolution};

pub struct ClusterEntry {
    pub cluster: GCluster,
    pub ideal: ClusterIdeal,
    pub cotangent: Vec<CharIndex>,
    pub deformation: ChartDeformation,
}

/// Everything computed for one group.
pub struct GroupData {
    pub group: GroupParams,
    pub lattice: Lattice,
    pub specials: SpecialReport,
    pub hj: HJExpansion,
    pub resolution: Resolution,
    pub clusters: Vec<ClusterEntry>,
    pub chain: ReconstructedChain,
    pub tensor: TensorMatrix,
    pub quiver: Quiver,
    pub cartan: Option<CartanData>,
}

impl GroupData {
    pub fn compute(g: GroupParams) -> Result<Self> {
        let lattice = Lattice::new(g);
        let specials = lattice.special_reps();
        let resolution = build_resolution(g)?;
        let raw = enumerate_clusters(g)?;
        let chain = reconstruct_chain(g, &raw)?;
        let clusters = raw
            .into_iter()
            .map(|cluster| {
                let ideal = cluster_ideal(g, &cluster);
                Ok(ClusterEntry {
                    cotangent: cotangent_decomposition(&lattice, &ideal)?,
                    deformation: chart_deformation(&lattice, &ideal)?,
                    cluster,
                    ideal,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        let cartan = if g.is_in_sl2() {
            Some(cartan_matrix(g)?)
        } else {
            None
        };
        Ok(GroupData {
            group: g,
            specials,
            hj: hj_expansion(g),
            resolution,
            clusters,
            chain,
            tensor: tensor_matrix(g),
            quiver: quiver_graph(g),
            cartan,
            lattice,
        })
    }
}

fn mono(u: &Monomial) -> Value {
    json!([u.m, u.n])
}

fn monos(set: &MonomialSet) -> Value {
    Value::Array(set.iter().map(mono).collect())
}

fn point(u: &NPoint) -> Value {
    json!([u.p, u.q])
}

fn chars(v: &[CharIndex]) -> Value {
    Value::Array(v.iter().map(|c| json!(c.0)).collect())
}

pub fn json_group(g: GroupParams) -> Value {
    json!({ "r": g.order(), "a": g.exponent(), "sl2": g.is_in_sl2() })
}

pub fn json_specials(data: &GroupData) -> Value {
    let specials: Vec<Value> = data
        .specials
        .generator_pairs
        .iter()
        .map(|(i, (x, y))| json!({ "index": i.0, "pair": [mono(x), mono(y)] }))
        .collect();
    let nonspecials: Vec<Value> = data
        .specials
        .nonspecials
        .iter()
        .map(|(i, w)| {
            json!({
                "index": i.0,
                "witness": mono(w),
                "generators": monos(&data.lattice.module_generators(*i)),
            })
        })
        .collect();
    json!({
        "specials": specials,
        "nonspecials": nonspecials,
        "invariant_generators": monos(data.lattice.invariant_generators()),
        "g_basis": monos(data.lattice.g_basis()),
        "basis_excess": monos(&data.lattice.basis_excess()),
    })
}

pub fn json_resolution(data: &GroupData) -> Value {
    let res = &data.resolution;
    let curves: Vec<Value> = res
        .curves
        .iter()
        .map(|c| {
            json!({
                "index": c.index,
                "ray": point(&c.ray),
                "self_int": c.self_intersection,
                "rep": c.special_rep.0,
                "ratio": [mono(&c.ratio_pair.0), mono(&c.ratio_pair.1)],
            })
        })
        .collect();
    let charts: Vec<Value> = res
        .charts
        .iter()
        .map(|c| {
            json!({
                "index": c.index,
                "rays": [point(&c.rays.0), point(&c.rays.1)],
                "dual": c.dual_pair,
            })
        })
        .collect();
    json!({
        "hj": data.hj.coeffs,
        "boundary": res.boundary.iter().map(point).collect::<Vec<_>>(),
        "curves": curves,
        "charts": charts,
        "intersection": res.intersection_matrix(),
    })
}

pub fn json_clusters(data: &GroupData) -> Value {
    let clusters: Vec<Value> = data
        .clusters
        .iter()
        .map(|e| {
            let d = &e.deformation;
            json!({
                "columns": e.cluster.columns,
                "chars": chars(&e.cluster.chars),
                "ideal": monos(&e.ideal.generators),
                "cotangent": chars(&e.cotangent),
                "deformation": {
                    "alpha": d.alpha_exponent,
                    "beta": d.beta_exponent,
                    "relations": d.relations.iter().map(|r| r.to_string()).collect::<Vec<_>>(),
                    "curve_point_ideal": d.curve_point_ideal().to_string(),
                },
            })
        })
        .collect();
    Value::Array(clusters)
}

pub fn json_chain(data: &GroupData) -> Value {
    json!({
        "nodes": chars(&data.chain.nodes),
        "ends": data.chain.ends,
    })
}

pub fn json_quiver(data: &GroupData) -> Value {
    let mut q = json!({
        "a_matrix": data.tensor.entries,
        "symmetric": data.tensor.is_symmetric(),
    });
    if let Some(c) = &data.cartan {
        q["cartan"] = json!(c.cartan);
        q["intersection"] = json!(c.intersection);
        q["opposite"] = json!(c.opposite);
    }
    q
}

pub fn json_checks(report: &ValidationReport) -> Value {
    serde_json::to_value(&report.checks).expect("checks serialise")
}

pub fn json_report(data: &GroupData, report: &ValidationReport) -> Value {
    json!({
        "group": json_group(data.group),
        "specials": json_specials(data),
        "resolution": json_resolution(data),
        "clusters": json_clusters(data),
        "chain": json_chain(data),
        "quiver": json_quiver(data),
        "checks": json_checks(report),
        "counts": serde_json::to_value(report.counts).expect("counts serialise"),
    })
}

/// Pretty JSON with sorted keys and a trailing newline.
pub fn to_canonical_json(value: &Value) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("value serialises");
    s.push('\n');
    s
}

pub fn dot_dual_graph(data: &GroupData) -> String {
    let graph = data.resolution.dual_graph();
    let mut s = String::new();
    writeln!(s, "graph dual_graph {{").unwrap();
    writeln!(s, "  label=\"{} dual graph\";", data.group).unwrap();
    writeln!(s, "  node [shape=ellipse];").unwrap();
    for (k, end) in graph.ends.iter().enumerate() {
        writeln!(s, "  axis{} [shape=plaintext, label=\"{}\"];", k + 1, end).unwrap();
    }
    for n in &graph.nodes {
        writeln!(
            s,
            "  E{} [label=\"E{} ({}) {}\"];",
            n.index, n.index, n.self_intersection, n.rep
        )
        .unwrap();
    }
    if let (Some(first), Some(last)) = (graph.nodes.first(), graph.nodes.last()) {
        writeln!(s, "  axis1 -- E{} [style=dashed];", first.index).unwrap();
        for &(i, j) in &graph.edges {
            writeln!(s, "  E{} -- E{};", graph.nodes[i].index, graph.nodes[j].index).unwrap();
        }
        writeln!(s, "  E{} -- axis2 [style=dashed];", last.index).unwrap();
    }
    writeln!(s, "}}").unwrap();
    s
}

pub fn dot_quiver(data: &GroupData) -> String {
    let mut s = String::new();
    writeln!(s, "digraph mckay_quiver {{").unwrap();
    writeln!(s, "  label=\"{} McKay quiver\";", data.group).unwrap();
    for i in 0..data.quiver.nodes {
        writeln!(s, "  r{i} [label=\"ρ{i}\"];").unwrap();
    }
    for (i, row) in data.tensor.entries.iter().enumerate() {
        for (j, &mult) in row.iter().enumerate() {
            if mult > 0 {
                writeln!(s, "  r{i} -> r{j} [label=\"{mult}\"];").unwrap();
            }
        }
    }
    writeln!(s, "}}").unwrap();
    s
}

fn svg_open(width: i64, height: i64) -> String {
    format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 {width} {height}\" width=\"{width}\" height=\"{height}\">\n"
    )
}

/// Newton polygon of `N ∩ σ` in the box `[0, r]^2`, boundary points marked.
pub fn svg_newton(data: &GroupData) -> String {
    let g = data.group;
    let r = g.order() as i64;
    let unit = (480 / r).max(6);
    let margin = 30;
    let size = r * unit + 2 * margin;
    let x = |p: i64| margin + p * unit;
    let y = |q: i64| margin + (r - q) * unit;
    let mut s = svg_open(size, size);
    writeln!(
        s,
        "  <path d=\"M {} {} L {} {} L {} {}\" fill=\"none\" stroke=\"#888\"/>",
        x(0),
        y(r),
        x(0),
        y(0),
        x(r),
        y(0)
    )
    .unwrap();
    for p in 0..=r {
        for q in 0..=r {
            if (q - p * g.exponent() as i64).rem_euclid(r) == 0 && (p, q) != (0, 0) {
                writeln!(s, "  <circle cx=\"{}\" cy=\"{}\" r=\"2\" fill=\"#bbb\"/>", x(p), y(q)).unwrap();
            }
        }
    }
    let path: Vec<String> = data
        .resolution
        .boundary
        .iter()
        .map(|u| format!("{},{}", x(u.p), y(u.q)))
        .collect();
    writeln!(
        s,
        "  <polyline points=\"{}\" fill=\"none\" stroke=\"black\" stroke-width=\"2\"/>",
        path.join(" ")
    )
    .unwrap();
    for u in &data.resolution.boundary {
        writeln!(s, "  <circle cx=\"{}\" cy=\"{}\" r=\"4\" fill=\"black\"/>", x(u.p), y(u.q)).unwrap();
    }
    for c in &data.resolution.curves {
        writeln!(
            s,
            "  <text x=\"{}\" y=\"{}\" font-size=\"12\">E{} {}</text>",
            x(c.ray.p) + 6,
            y(c.ray.q) - 6,
            c.index,
            c.special_rep
        )
        .unwrap();
    }
    s.push_str("</svg>\n");
    s
}

fn svg_cells(s: &mut String, g: GroupParams, cells: &[(Monomial, bool)], ox: i64, base: i64, unit: i64) {
    for (u, marked) in cells {
        let cx = ox + u.m as i64 * unit;
        let cy = base - (u.n as i64 + 1) * unit;
        let fill = if *marked { "#f4c7c3" } else { "#dde8f6" };
        writeln!(
            s,
            "  <rect x=\"{cx}\" y=\"{cy}\" width=\"{unit}\" height=\"{unit}\" fill=\"{fill}\" stroke=\"black\"/>"
        )
        .unwrap();
        writeln!(
            s,
            "  <text x=\"{}\" y=\"{}\" font-size=\"11\" text-anchor=\"middle\">{}</text>",
            cx + unit / 2,
            cy + unit / 2 + 4,
            g.character(u.m, u.n).0
        )
        .unwrap();
    }
}

/// The torus-fixed clusters side by side, each cell labelled by its character.
pub fn svg_clusters(data: &GroupData) -> String {
    let g = data.group;
    let unit = 22;
    let gap = unit;
    let height = data
        .clusters
        .iter()
        .map(|e| e.cluster.columns.first().copied().unwrap_or(0) as i64)
        .max()
        .unwrap_or(0);
    let width: i64 = data
        .clusters
        .iter()
        .map(|e| e.cluster.columns.len() as i64 * unit + gap)
        .sum::<i64>()
        + gap;
    let total_h = height * unit + 2 * gap + 16;
    let mut s = svg_open(width, total_h);
    let base = gap + height * unit;
    let mut ox = gap;
    for (k, e) in data.clusters.iter().enumerate() {
        let cells: Vec<(Monomial, bool)> = e.cluster.cells().map(|u| (u, false)).collect();
        svg_cells(&mut s, g, &cells, ox, base, unit);
        writeln!(
            s,
            "  <text x=\"{ox}\" y=\"{}\" font-size=\"12\">({})</text>",
            base + 16,
            k + 1
        )
        .unwrap();
        ox += e.cluster.columns.len() as i64 * unit + gap;
    }
    s.push_str("</svg>\n");
    s
}

/// `B(G)` with characters; cells of `B(G) \ L(G)` are highlighted.
pub fn svg_basis(data: &GroupData) -> String {
    let g = data.group;
    let r = g.order() as i64;
    let unit = 22;
    let size = r * unit + 2 * unit;
    let mut s = svg_open(size, size);
    let cells: Vec<(Monomial, bool)> = data
        .lattice
        .g_basis()
        .iter()
        .map(|u| (*u, !data.lattice.in_l_space(u)))
        .collect();
    svg_cells(&mut s, g, &cells, unit, unit + r * unit, unit);
    s.push_str("</svg>\n");
    s
}

/// `B(G)` drawn as rows of characters, top row first; `*` marks `B(G) \ L(G)`.
pub fn text_basis_diagram(data: &GroupData) -> String {
    let g = data.group;
    let basis = data.lattice.g_basis();
    let top = basis.iter().map(|u| u.n).max().unwrap_or(0);
    let right = basis.iter().map(|u| u.m).max().unwrap_or(0);
    let width = (g.order() - 1).to_string().len() + 1;
    let mut s = String::new();
    for n in (0..=top).rev() {
        write!(s, "  y^{n:<3}|").unwrap();
        for m in 0..=right {
            let u = Monomial::new(m, n);
            if basis.contains(&u) {
                let mark = if data.lattice.in_l_space(&u) { ' ' } else { '*' };
                write!(s, " {:>width$}{mark}", g.character(m, n).0).unwrap();
            }
        }
        s.push('\n');
    }
    s
}

pub fn text_specials(data: &GroupData) -> String {
    let g = data.group;
    let mut s = String::new();
    writeln!(s, "{}  SL(2): {}", g, if g.is_in_sl2() { "yes" } else { "no" }).unwrap();
    writeln!(
        s,
        "invariant generators: {}",
        format_set(data.lattice.invariant_generators())
    )
    .unwrap();
    writeln!(
        s,
        "|B(G)| = {}  |L(G)| = {}  B(G)\\L(G) = {}",
        data.lattice.g_basis().len(),
        data.lattice.l_space().len(),
        format_set(&data.lattice.basis_excess())
    )
    .unwrap();
    writeln!(s, "B(G) characters (* = outside L(G)):").unwrap();
    s.push_str(&text_basis_diagram(data));
    writeln!(s, "{:<6}{:<12}generators", "rep", "status").unwrap();
    for i in g.nontrivial_characters() {
        let gens = format_set(&data.lattice.module_generators(i));
        match data.specials.nonspecials.get(&i) {
            None => writeln!(s, "{:<6}{:<12}{}", i.to_string(), "special", gens).unwrap(),
            Some(w) => writeln!(
                s,
                "{:<6}{:<12}{}  witness {}",
                i.to_string(),
                "nonspecial",
                gens,
                w
            )
            .unwrap(),
        }
    }
    s
}

pub fn text_resolution(data: &GroupData) -> String {
    let res = &data.resolution;
    let mut s = String::new();
    writeln!(s, "{}  r/a = {}/{}", data.group, data.group.order(), data.group.exponent()).unwrap();
    writeln!(s, "Hirzebruch-Jung: {:?}", data.hj.coeffs).unwrap();
    let pts: Vec<String> = res.boundary.iter().map(|u| u.to_string()).collect();
    writeln!(s, "Newton boundary: {}", pts.join(" ")).unwrap();
    writeln!(s, "curves (e1 side first):").unwrap();
    for c in &res.curves {
        writeln!(
            s,
            "  E{:<3} ray {:<12} E^2 = {:<4} {:<5} ratio ({} : {})",
            c.index,
            c.ray.to_string(),
            c.self_intersection,
            c.special_rep.to_string(),
            c.ratio_pair.0,
            c.ratio_pair.1
        )
        .unwrap();
    }
    writeln!(s, "charts:").unwrap();
    for c in &res.charts {
        writeln!(
            s,
            "  U{:<3} {} {}  α = x^{} y^{}  β = x^{} y^{}",
            c.index,
            c.rays.0,
            c.rays.1,
            c.alpha()[0],
            c.alpha()[1],
            c.beta()[0],
            c.beta()[1]
        )
        .unwrap();
    }
    let chain: Vec<String> = res
        .dual_graph()
        .nodes
        .iter()
        .map(|n| format!("({}) {}", n.self_intersection, n.rep))
        .collect();
    writeln!(s, "dual graph: {}", chain.join(" — ")).unwrap();
    s
}

/// One text row per diagram row, top first, with the cell characters alongside.
pub fn ascii_young(g: GroupParams, c: &GCluster) -> String {
    let rows = c.rows();
    let width = c.columns.len();
    let mut s = String::new();
    for n in (0..rows.len()).rev() {
        let len = rows[n] as usize;
        let cells = "#".repeat(len);
        let labels: Vec<String> = (0..len)
            .map(|m| g.character(m as u32, n as u32).0.to_string())
            .collect();
        writeln!(s, "  {cells:<width$}  | {}", labels.join(" ")).unwrap();
    }
    s
}

pub fn text_clusters(data: &GroupData) -> String {
    let g = data.group;
    let mut s = String::new();
    writeln!(s, "{}: {} torus-fixed G-clusters", g, data.clusters.len()).unwrap();
    for (k, e) in data.clusters.iter().enumerate() {
        writeln!(s).unwrap();
        writeln!(s, "({}) columns {:?}", k + 1, e.cluster.columns).unwrap();
        s.push_str(&ascii_young(g, &e.cluster));
        writeln!(s, "  ideal      {}", e.ideal).unwrap();
        let cot: Vec<String> = e
            .cotangent
            .iter()
            .filter(|c| !c.is_trivial())
            .chain(e.cotangent.iter().filter(|c| c.is_trivial()))
            .map(|c| c.to_string())
            .collect();
        writeln!(s, "  I/mI       {}", cot.join(" ⊕ ")).unwrap();
        let rel: Vec<String> = e.deformation.relations.iter().map(|r| r.to_string()).collect();
        writeln!(s, "  relations  {}", rel.join(", ")).unwrap();
        writeln!(
            s,
            "  α = x^{} y^{}  β = x^{} y^{}",
            e.deformation.alpha_exponent[0],
            e.deformation.alpha_exponent[1],
            e.deformation.beta_exponent[0],
            e.deformation.beta_exponent[1]
        )
        .unwrap();
    }
    let path: Vec<String> = data.chain.nodes.iter().map(|c| c.to_string()).collect();
    writeln!(s).unwrap();
    writeln!(s, "chain from clusters: {}", path.join(" — ")).unwrap();
    s
}

fn text_matrix<T: std::fmt::Display>(s: &mut String, rows: &[Vec<T>]) {
    for row in rows {
        let cells: Vec<String> = row.iter().map(|v| format!("{v:>3}")).collect();
        writeln!(s, "  {}", cells.join("")).unwrap();
    }
}

pub fn text_quiver(data: &GroupData) -> String {
    let mut s = String::new();
    let (c1, c2) = data.group.natural_rep_summands();
    writeln!(s, "{}  natural representation {} ⊕ {}", data.group, c1, c2).unwrap();
    writeln!(s, "tensor matrix a_ij:").unwrap();
    text_matrix(&mut s, &data.tensor.entries);
    if let Some(c) = &data.cartan {
        writeln!(s, "Cartan matrix 2I - A (nontrivial indices):").unwrap();
        text_matrix(&mut s, &c.cartan);
        writeln!(s, "intersection matrix:").unwrap();
        text_matrix(&mut s, &c.intersection);
        writeln!(s, "intersection = -Cartan: {}", c.opposite).unwrap();
    }
    s
}

/// The full set of documents for one group.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReportBundle {
    pub json_document: String,
    /// `(file name, contents)`.
    pub dot_documents: Vec<(String, String)>,
    pub svg_documents: Vec<(String, String)>,
    pub text_tables: Vec<(String, String)>,
}

impl ReportBundle {
    pub fn files(&self) -> Vec<(&str, &str)> {
        std::iter::once(("report.json", self.json_document.as_str()))
            .chain(
                self.dot_documents
                    .iter()
                    .chain(&self.svg_documents)
                    .chain(&self.text_tables)
                    .map(|(n, c)| (n.as_str(), c.as_str())),
            )
            .collect()
    }

    pub fn write_to(&self, dir: &Path) -> Result<Vec<PathBuf>> {
        fs::create_dir_all(dir)?;
        let mut written = Vec::new();
        for (name, contents) in self.files() {
            let path = dir.join(name);
            fs::write(&path, contents)?;
            written.push(path);
        }
        Ok(written)
    }
}

pub fn emit(g: GroupParams) -> Result<ReportBundle> {
    let data = GroupData::compute(g)?;
    let report = check_group(g);
    let named = |n: &str, c: String| (n.to_string(), c);
    Ok(ReportBundle {
        json_document: to_canonical_json(&json_report(&data, &report)),
        dot_documents: vec![
            named("dual_graph.dot", dot_dual_graph(&data)),
            named("quiver.dot", dot_quiver(&data)),
        ],
        svg_documents: vec![
            named("newton.svg", svg_newton(&data)),
            named("basis.svg", svg_basis(&data)),
            named("clusters.svg", svg_clusters(&data)),
        ],
        text_tables: vec![
            named("special.txt", text_specials(&data)),
            named("resolution.txt", text_resolution(&data)),
            named("clusters.txt", text_clusters(&data)),
            named("quiver.txt", text_quiver(&data)),
            named("checks.txt", report.to_string()),
        ],
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::make_group;

    #[test]
    fn json_is_canonical_and_round_trips() {
        let bundle = emit(make_group(7, 3).unwrap()).unwrap();
        let parsed: Value = serde_json::from_str(&bundle.json_document).unwrap();
        assert_eq!(to_canonical_json(&parsed), bundle.json_document);
        let top: Vec<&String> = parsed.as_object().unwrap().keys().collect();
        let mut sorted = top.clone();
        sorted.sort();
        assert_eq!(top, sorted);
        assert_eq!(parsed["group"], json!({"r": 7, "a": 3, "sl2": false}));
        assert_eq!(parsed["resolution"]["hj"], json!([3, 2, 2]));
        assert_eq!(parsed["clusters"][1]["ideal"], json!([[2, 0], [1, 2], [0, 5]]));
    }

    #[test]
    fn dot_documents() {
        let data = GroupData::compute(make_group(7, 3).unwrap()).unwrap();
        let dual = dot_dual_graph(&data);
        assert!(dual.contains("E1 [label=\"E1 (-2) ρ1\"]"));
        assert!(dual.contains("E3 [label=\"E3 (-3) ρ3\"]"));
        assert!(dual.contains("E1 -- E2;"));
        let quiver = dot_quiver(&data);
        assert!(quiver.contains("r0 -> r1 [label=\"1\"]"));
        assert!(quiver.contains("r0 -> r3 [label=\"1\"]"));
        let a1 = GroupData::compute(make_group(2, 1).unwrap()).unwrap();
        assert!(dot_quiver(&a1).contains("r0 -> r1 [label=\"2\"]"));
    }

    #[test]
    fn ascii_diagram() {
        let g = make_group(7, 3).unwrap();
        let c = GCluster::from_columns(g, vec![3, 2, 2]);
        assert_eq!(ascii_young(g, &c), "  #    | 6\n  ###  | 3 4 5\n  ###  | 0 1 2\n");
    }

    #[test]
    fn bundle_is_deterministic() {
        let g = make_group(9, 2).unwrap();
        assert_eq!(emit(g).unwrap(), emit(g).unwrap());
    }
}
