//! Integrated matrices of a mixed graph and the set functionals used by the
//! volume bounds.
//!
//! Rows and columns are ordered `v'₁ … v'ₙ, v''₁ … v''ₙ`.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::MixedGraph;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Exactness {
    /// Every entry is an integer stored exactly.
    IntegerExact,
    Real,
}

/// Dense symmetric matrix, row-major.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SymMatrix {
    order: usize,
    entries: Vec<f64>,
    exactness: Exactness,
}

impl SymMatrix {
    pub fn zeros(order: usize, exactness: Exactness) -> Self {
        SymMatrix {
            order,
            entries: vec![0.0; order * order],
            exactness,
        }
    }

    /// Builds from rows, rejecting ragged or asymmetric input.
    pub fn from_rows(rows: &[Vec<f64>]) -> Result<Self> {
        let order = rows.len();
        if rows.iter().any(|r| r.len() != order) {
            return Err(Error::input("matrix rows must all have length equal to the row count"));
        }
        let entries: Vec<f64> = rows.iter().flatten().copied().collect();
        let exactness = if entries.iter().all(|x| x.fract() == 0.0 && x.abs() < 2f64.powi(52)) {
            Exactness::IntegerExact
        } else {
            Exactness::Real
        };
        let m = SymMatrix {
            order,
            entries,
            exactness,
        };
        m.check_symmetric(0.0)?;
        Ok(m)
    }

    pub fn identity(order: usize) -> Self {
        let mut m = SymMatrix::zeros(order, Exactness::IntegerExact);
        for i in 0..order {
            m.set(i, i, 1.0);
        }
        m
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn exactness(&self) -> Exactness {
        self.exactness
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.entries[i * self.order + j]
    }

    fn set(&mut self, i: usize, j: usize, x: f64) {
        self.entries[i * self.order + j] = x;
    }

    fn set_sym(&mut self, i: usize, j: usize, x: f64) {
        self.set(i, j, x);
        self.set(j, i, x);
    }

    fn add_sym(&mut self, i: usize, j: usize, x: f64) {
        self.entries[i * self.order + j] += x;
        if i != j {
            self.entries[j * self.order + i] += x;
        }
    }

    pub fn entries(&self) -> &[f64] {
        &self.entries
    }

    pub fn rows(&self) -> Vec<Vec<f64>> {
        self.entries.chunks(self.order.max(1)).take(self.order).map(<[f64]>::to_vec).collect()
    }

    /// Integer entries, available only for integer-exact matrices.
    pub fn integer_entries(&self) -> Option<Vec<i64>> {
        (self.exactness == Exactness::IntegerExact)
            .then(|| self.entries.iter().map(|&x| x as i64).collect())
    }

    pub fn trace(&self) -> f64 {
        (0..self.order).map(|i| self.get(i, i)).sum()
    }

    /// Exact trace of an integer-exact matrix.
    pub fn integer_trace(&self) -> Option<i64> {
        self.integer_entries()
            .map(|e| (0..self.order).map(|i| e[i * self.order + i]).sum())
    }

    pub fn max_abs(&self) -> f64 {
        self.entries.iter().fold(0.0, |acc, x| acc.max(x.abs()))
    }

    pub fn frobenius(&self) -> f64 {
        self.entries.iter().map(|x| x * x).sum::<f64>().sqrt()
    }

    pub fn row_sums(&self) -> Vec<f64> {
        self.rows().iter().map(|r| r.iter().sum()).collect()
    }

    pub fn mul_vec(&self, x: &[f64]) -> Vec<f64> {
        self.rows()
            .iter()
            .map(|r| r.iter().zip(x).map(|(a, b)| a * b).sum())
            .collect()
    }

    /// Largest `|m(i,j) − m(j,i)|`, compared against `tol`.
    pub fn check_symmetric(&self, tol: f64) -> Result<()> {
        for i in 0..self.order {
            for j in (i + 1)..self.order {
                let gap = (self.get(i, j) - self.get(j, i)).abs();
                if gap > tol || gap.is_nan() {
                    return Err(Error::input(format!(
                        "matrix is not symmetric at ({i}, {j}): gap {gap}"
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn max_abs_diff(&self, other: &SymMatrix) -> Result<f64> {
        if self.order != other.order {
            return Err(Error::input("matrix orders differ"));
        }
        Ok(self
            .entries
            .iter()
            .zip(&other.entries)
            .fold(0.0, |acc, (a, b)| acc.max((a - b).abs())))
    }

    fn combine(&self, other: &SymMatrix, sign: f64) -> SymMatrix {
        debug_assert_eq!(self.order, other.order);
        let exactness = if self.exactness == Exactness::IntegerExact
            && other.exactness == Exactness::IntegerExact
        {
            Exactness::IntegerExact
        } else {
            Exactness::Real
        };
        SymMatrix {
            order: self.order,
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(a, b)| a + sign * b)
                .collect(),
            exactness,
        }
    }

    pub fn plus(&self, other: &SymMatrix) -> SymMatrix {
        self.combine(other, 1.0)
    }

    pub fn minus(&self, other: &SymMatrix) -> SymMatrix {
        self.combine(other, -1.0)
    }

    /// Row-major CSV; integer-exact matrices print without a fractional part.
    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        for row in self.rows() {
            let cells: Vec<String> = row
                .iter()
                .map(|&x| match self.exactness {
                    Exactness::IntegerExact => format!("{}", x as i64),
                    Exactness::Real => format!("{x}"),
                })
                .collect();
            out.push_str(&cells.join(","));
            out.push('\n');
        }
        out
    }

    pub fn to_json(&self) -> serde_json::Value {
        let rows: Vec<serde_json::Value> = self
            .rows()
            .into_iter()
            .map(|r| match self.exactness {
                Exactness::IntegerExact => {
                    serde_json::json!(r.iter().map(|&x| x as i64).collect::<Vec<_>>())
                }
                Exactness::Real => serde_json::json!(r),
            })
            .collect();
        serde_json::json!({ "order": self.order, "entries": rows })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum MatrixKind {
    /// Integrated adjacency.
    I,
    /// Integrated degree.
    ID,
    /// Integrated Laplacian.
    IL,
    /// Integrated signless Laplacian.
    IQ,
    /// Normalized integrated Laplacian.
    IN,
}

impl MatrixKind {
    pub const ALL: [MatrixKind; 5] = [
        MatrixKind::I,
        MatrixKind::ID,
        MatrixKind::IL,
        MatrixKind::IQ,
        MatrixKind::IN,
    ];

    pub fn build(self, g: &MixedGraph) -> SymMatrix {
        match self {
            MatrixKind::I => integrated_adjacency(g),
            MatrixKind::ID => integrated_degree(g),
            MatrixKind::IL => integrated_laplacian(g),
            MatrixKind::IQ => integrated_signless(g),
            MatrixKind::IN => normalized_integrated_laplacian(g),
        }
    }
}

impl fmt::Display for MatrixKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            MatrixKind::I => "I",
            MatrixKind::ID => "ID",
            MatrixKind::IL => "IL",
            MatrixKind::IQ => "IQ",
            MatrixKind::IN => "IN",
        };
        f.write_str(s)
    }
}

impl FromStr for MatrixKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "I" => Ok(MatrixKind::I),
            "ID" => Ok(MatrixKind::ID),
            "IL" => Ok(MatrixKind::IL),
            "IQ" => Ok(MatrixKind::IQ),
            "IN" => Ok(MatrixKind::IN),
            other => Err(Error::input(format!("unknown matrix kind {other:?}"))),
        }
    }
}

pub fn integrated_adjacency(g: &MixedGraph) -> SymMatrix {
    let n = g.order();
    let mut m = SymMatrix::zeros(2 * n, Exactness::IntegerExact);
    for ((i, j), mult) in g.edges() {
        let w = f64::from(mult);
        if i == j {
            m.add_sym(i, i, 2.0 * w);
            m.add_sym(n + i, n + i, 2.0 * w);
        } else {
            m.add_sym(i, j, w);
            m.add_sym(n + i, n + j, w);
        }
    }
    for ((i, j), mult) in g.arcs() {
        m.add_sym(i, n + j, f64::from(mult));
    }
    m
}

pub fn integrated_degree(g: &MixedGraph) -> SymMatrix {
    let n = g.order();
    let mut m = SymMatrix::zeros(2 * n, Exactness::IntegerExact);
    for (i, p) in g.degree_profiles().iter().enumerate() {
        m.set(i, i, p.out_combined() as f64);
        m.set(n + i, n + i, p.in_combined() as f64);
    }
    m
}

pub fn integrated_laplacian(g: &MixedGraph) -> SymMatrix {
    integrated_degree(g).minus(&integrated_adjacency(g))
}

pub fn integrated_signless(g: &MixedGraph) -> SymMatrix {
    integrated_degree(g).plus(&integrated_adjacency(g))
}

/// Built entry by entry; rows of zero-degree vertices are identically zero.
pub fn normalized_integrated_laplacian(g: &MixedGraph) -> SymMatrix {
    let n = g.order();
    let profiles = g.degree_profiles();
    let combined: Vec<f64> = profiles
        .iter()
        .map(|p| p.out_combined() as f64)
        .chain(profiles.iter().map(|p| p.in_combined() as f64))
        .collect();
    let mut m = SymMatrix::zeros(2 * n, Exactness::Real);
    for (i, p) in profiles.iter().enumerate() {
        for x in [i, n + i] {
            if combined[x] > 0.0 {
                m.set(x, x, 1.0 - 2.0 * p.loops as f64 / combined[x]);
            }
        }
    }
    let mut off = |x: usize, y: usize, mult: u32| {
        let w = -f64::from(mult) / (combined[x] * combined[y]).sqrt();
        m.set_sym(x, y, m.get(x, y) + w);
    };
    for ((i, j), mult) in g.edges() {
        if i != j {
            off(i, j, mult);
            off(n + i, n + j, mult);
        }
    }
    // Directed loops land on the cross block like any other arc.
    for ((i, j), mult) in g.arcs() {
        off(i, n + j, mult);
    }
    m
}

/// `D^{-1/2} L D^{-1/2}` with zero-degree rows left at zero.
pub fn sandwich_normalized(g: &MixedGraph) -> SymMatrix {
    let d = integrated_degree(g);
    let l = integrated_laplacian(g);
    let order = l.order();
    let scale: Vec<f64> = (0..order)
        .map(|i| {
            let di = d.get(i, i);
            if di > 0.0 {
                1.0 / di.sqrt()
            } else {
                0.0
            }
        })
        .collect();
    let mut m = SymMatrix::zeros(order, Exactness::Real);
    for i in 0..order {
        for j in 0..order {
            m.set(i, j, scale[i] * l.get(i, j) * scale[j]);
        }
    }
    m
}

/// Set functionals for one pair of vertex sets.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct VolumeFunctionals {
    /// Mixed volume of `X`.
    pub vl_x: u64,
    /// Undirected edges joining `X` to `Y`, loops excluded.
    pub e_xy: u64,
    /// Arcs from `X` to `Y`, directed loops included.
    pub a_xy: u64,
}

fn membership(n: usize, set: &[usize]) -> Result<Vec<bool>> {
    let mut inside = vec![false; n];
    for &u in set {
        if u >= n {
            return Err(Error::input(format!("vertex {u} out of range for {n} vertices")));
        }
        inside[u] = true;
    }
    Ok(inside)
}

/// Mixed volume `Σ (2d + d⁺ + d⁻)` over a vertex set.
pub fn mixed_volume(g: &MixedGraph, set: &[usize]) -> Result<u64> {
    let inside = membership(g.order(), set)?;
    Ok(g.degree_profiles()
        .iter()
        .zip(&inside)
        .filter(|(_, &i)| i)
        .map(|(p, _)| p.volume())
        .sum())
}

pub fn volume_functionals(g: &MixedGraph, xs: &[usize], ys: &[usize]) -> Result<VolumeFunctionals> {
    let n = g.order();
    let in_x = membership(n, xs)?;
    let in_y = membership(n, ys)?;
    let e_xy = g
        .edges()
        .filter(|&((u, v), _)| u != v && ((in_x[u] && in_y[v]) || (in_x[v] && in_y[u])))
        .map(|(_, m)| u64::from(m))
        .sum();
    let a_xy = g
        .arcs()
        .filter(|&((u, v), _)| in_x[u] && in_y[v])
        .map(|(_, m)| u64::from(m))
        .sum();
    Ok(VolumeFunctionals {
        vl_x: mixed_volume(g, xs)?,
        e_xy,
        a_xy,
    })
}

/// `1_Xᵀ 𝓘 1_Y` for the doubled sets of `X` and `Y`.
pub fn doubled_bilinear(g: &MixedGraph, xs: &[usize], ys: &[usize]) -> Result<f64> {
    let n = g.order();
    let in_x = membership(n, xs)?;
    let in_y = membership(n, ys)?;
    let ind = |inside: &[bool]| -> Vec<f64> {
        inside.iter().chain(inside).map(|&b| if b { 1.0 } else { 0.0 }).collect()
    };
    let (x, y) = (ind(&in_x), ind(&in_y));
    let iy = integrated_adjacency(g).mul_vec(&y);
    Ok(x.iter().zip(&iy).map(|(a, b)| a * b).sum())
}
