//! McKay tensor data: `ρ_i ⊗ ρ_nat = ⊕ a_ij ρ_j` for the natural
//! representation with coordinate characters `(1, a)`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::group::GroupParams;
use crate::toric::{build_resolution, is_negative_definite};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TensorMatrix {
    pub entries: Vec<Vec<u32>>,
}

impl TensorMatrix {
    pub fn size(&self) -> usize {
        self.entries.len()
    }

    pub fn is_symmetric(&self) -> bool {
        let n = self.size();
        (0..n).all(|i| (0..n).all(|j| self.entries[i][j] == self.entries[j][i]))
    }

    pub fn row_sums(&self) -> Vec<u32> {
        self.entries.iter().map(|row| row.iter().sum()).collect()
    }

    pub fn column_sums(&self) -> Vec<u32> {
        (0..self.size())
            .map(|j| self.entries.iter().map(|row| row[j]).sum())
            .collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CartanData {
    /// `2I - A` on the nontrivial indices `1..r`.
    pub cartan: Vec<Vec<i64>>,
    /// Intersection matrix of the exceptional curves, rows ordered by the
    /// curves' representation labels.
    pub intersection: Vec<Vec<i64>>,
    pub opposite: bool,
    pub negative_definite: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Quiver {
    pub nodes: u32,
    /// `(i, j)` repeated `a_ij` times.
    pub arrows: Vec<(u32, u32)>,
}

impl Quiver {
    pub fn multiplicity(&self, i: u32, j: u32) -> usize {
        self.arrows.iter().filter(|&&e| e == (i, j)).count()
    }

    pub fn out_degree(&self, i: u32) -> usize {
        self.arrows.iter().filter(|e| e.0 == i).count()
    }

    /// Undirected multigraph obtained by pairing each arrow `i -> j` with an
    /// arrow `j -> i`; `None` when some arrow has no partner.
    pub fn undirected(&self) -> Option<Vec<(u32, u32, usize)>> {
        let mut edges = Vec::new();
        for i in 0..self.nodes {
            for j in i..self.nodes {
                let forward = self.multiplicity(i, j);
                let backward = self.multiplicity(j, i);
                if forward != backward {
                    return None;
                }
                if forward > 0 {
                    edges.push((i, j, forward));
                }
            }
        }
        Some(edges)
    }

    /// Underlying graph is the extended Dynkin diagram `Ã_{n-1}`: a single
    /// cycle through all `n` nodes (a double edge when `n = 2`).
    pub fn is_affine_a_cycle(&self) -> bool {
        let Some(edges) = self.undirected() else {
            return false;
        };
        let n = self.nodes as usize;
        let mut degree = vec![0; n];
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(parent: &mut [usize], x: usize) -> usize {
            let mut root = x;
            while parent[root] != root {
                root = parent[root];
            }
            parent[x] = root;
            root
        }
        for &(i, j, mult) in &edges {
            if i == j {
                return false;
            }
            degree[i as usize] += mult;
            degree[j as usize] += mult;
            let (ri, rj) = (find(&mut parent, i as usize), find(&mut parent, j as usize));
            parent[ri] = rj;
        }
        let root = find(&mut parent, 0);
        degree.iter().all(|&d| d == 2) && (0..n).all(|x| find(&mut parent, x) == root)
    }
}

/// `a_ij = [j ≡ i + 1] + [j ≡ i + a]`.
pub fn tensor_matrix(g: GroupParams) -> TensorMatrix {
    let r = g.order() as usize;
    let (c1, c2) = g.natural_rep_summands();
    let mut entries = vec![vec![0; r]; r];
    for (i, row) in entries.iter_mut().enumerate() {
        row[(i + c1.0 as usize) % r] += 1;
        row[(i + c2.0 as usize) % r] += 1;
    }
    TensorMatrix { entries }
}

pub fn cartan_matrix(g: GroupParams) -> Result<CartanData> {
    if !g.is_in_sl2() {
        return Err(Error::NotSl2 {
            r: g.order(),
            a: g.exponent(),
        });
    }
    let a = tensor_matrix(g);
    let n = g.order() as usize - 1;
    let cartan: Vec<Vec<i64>> = (1..=n)
        .map(|i| {
            (1..=n)
                .map(|j| 2 * (i == j) as i64 - a.entries[i][j] as i64)
                .collect()
        })
        .collect();

    let res = build_resolution(g)?;
    let chain = res.intersection_matrix();
    let mut order: Vec<usize> = (0..res.curves.len()).collect();
    order.sort_by_key(|&k| res.curves[k].special_rep);
    let intersection: Vec<Vec<i64>> = order
        .iter()
        .map(|&i| order.iter().map(|&j| chain[i][j]).collect())
        .collect();
    let labels_match = order
        .iter()
        .enumerate()
        .all(|(pos, &k)| res.curves[k].special_rep.0 as usize == pos + 1);
    let opposite = labels_match
        && intersection.len() == n
        && (0..n).all(|i| (0..n).all(|j| intersection[i][j] == -cartan[i][j]));
    let negative_definite = is_negative_definite(&intersection);
    Ok(CartanData {
        cartan,
        intersection,
        opposite,
        negative_definite,
    })
}

pub fn quiver_graph(g: GroupParams) -> Quiver {
    let a = tensor_matrix(g);
    let mut arrows = Vec::new();
    for (i, row) in a.entries.iter().enumerate() {
        for (j, &mult) in row.iter().enumerate() {
            arrows.extend(std::iter::repeat_n((i as u32, j as u32), mult as usize));
        }
    }
    Quiver {
        nodes: g.order(),
        arrows,
    }
}
