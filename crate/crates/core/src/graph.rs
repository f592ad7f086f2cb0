//! Mixed graphs: vertices with undirected edges and directed arcs, both
//! carrying multiplicities.
//!
//! A loop at `u` is stored as the edge key `(u, u)` and a directed loop as the
//! arc key `(u, u)`. Edge keys are canonical (`i <= j`). Degree rules are
//! applied when reading: a loop adds 2 to the undirected degree, a directed
//! loop adds 1 to both the out-degree and the in-degree.

use std::collections::BTreeMap;
use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct MixedGraph {
    n: usize,
    edges: BTreeMap<(usize, usize), u32>,
    arcs: BTreeMap<(usize, usize), u32>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct DegreeProfile {
    /// Undirected degree; loops count twice.
    pub d: u64,
    /// Out-degree, directed loops included.
    pub d_plus: u64,
    /// In-degree, directed loops included.
    pub d_minus: u64,
    /// Number of loops.
    pub loops: u64,
}

impl DegreeProfile {
    /// Degree of the primed copy in the associated graph.
    pub fn out_combined(&self) -> u64 {
        self.d + self.d_plus
    }

    /// Degree of the double-primed copy in the associated graph.
    pub fn in_combined(&self) -> u64 {
        self.d + self.d_minus
    }

    /// Mixed volume contribution `2d + d⁺ + d⁻`.
    pub fn volume(&self) -> u64 {
        2 * self.d + self.d_plus + self.d_minus
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphCounts {
    /// Edges, loops excluded.
    pub e: u64,
    /// Arcs, directed loops included.
    pub a: u64,
    /// Loops.
    pub l: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct Regularity {
    /// `Some(r)` when `d⁺(u) = d⁻(u)` and `d(u) + d⁺(u) = r` everywhere.
    pub r: Option<u64>,
    /// `Some((r, s))` when `d(u) = r` and `d⁺(u) = d⁻(u) = s` everywhere.
    pub rs: Option<(u64, u64)>,
}

impl MixedGraph {
    pub fn new(n: usize) -> Self {
        MixedGraph {
            n,
            edges: BTreeMap::new(),
            arcs: BTreeMap::new(),
        }
    }

    pub fn order(&self) -> usize {
        self.n
    }

    fn check_vertex(&self, u: usize) -> Result<()> {
        if u >= self.n {
            return Err(Error::input(format!(
                "vertex {u} out of range for graph on {} vertices",
                self.n
            )));
        }
        Ok(())
    }

    /// Adds `mult` parallel edges between `u` and `v` (a loop when `u == v`).
    pub fn add_edge(&mut self, u: usize, v: usize, mult: u32) -> Result<()> {
        self.check_vertex(u)?;
        self.check_vertex(v)?;
        if mult == 0 {
            return Err(Error::input("edge multiplicity must be positive"));
        }
        *self.edges.entry(canonical(u, v)).or_insert(0) += mult;
        Ok(())
    }

    /// Adds `mult` parallel arcs `u → v` (a directed loop when `u == v`).
    pub fn add_arc(&mut self, u: usize, v: usize, mult: u32) -> Result<()> {
        self.check_vertex(u)?;
        self.check_vertex(v)?;
        if mult == 0 {
            return Err(Error::input("arc multiplicity must be positive"));
        }
        *self.arcs.entry((u, v)).or_insert(0) += mult;
        Ok(())
    }

    pub fn edge_multiplicity(&self, u: usize, v: usize) -> u32 {
        self.edges.get(&canonical(u, v)).copied().unwrap_or(0)
    }

    pub fn arc_multiplicity(&self, u: usize, v: usize) -> u32 {
        self.arcs.get(&(u, v)).copied().unwrap_or(0)
    }

    /// Edge entries `((i, j), mult)` with `i <= j`, in key order.
    pub fn edges(&self) -> impl Iterator<Item = ((usize, usize), u32)> + '_ {
        self.edges.iter().map(|(&k, &m)| (k, m))
    }

    /// Arc entries `((from, to), mult)`, in key order.
    pub fn arcs(&self) -> impl Iterator<Item = ((usize, usize), u32)> + '_ {
        self.arcs.iter().map(|(&k, &m)| (k, m))
    }

    pub fn degree_profile(&self, u: usize) -> Result<DegreeProfile> {
        self.check_vertex(u)?;
        Ok(self.degree_profiles()[u])
    }

    pub fn degree_profiles(&self) -> Vec<DegreeProfile> {
        let mut out = vec![
            DegreeProfile {
                d: 0,
                d_plus: 0,
                d_minus: 0,
                loops: 0,
            };
            self.n
        ];
        for (&(i, j), &m) in &self.edges {
            let m = u64::from(m);
            if i == j {
                out[i].d += 2 * m;
                out[i].loops += m;
            } else {
                out[i].d += m;
                out[j].d += m;
            }
        }
        for (&(i, j), &m) in &self.arcs {
            let m = u64::from(m);
            out[i].d_plus += m;
            out[j].d_minus += m;
        }
        out
    }

    pub fn counts(&self) -> GraphCounts {
        let mut c = GraphCounts { e: 0, a: 0, l: 0 };
        for (&(i, j), &m) in &self.edges {
            if i == j {
                c.l += u64::from(m);
            } else {
                c.e += u64::from(m);
            }
        }
        c.a = self.arcs.values().map(|&m| u64::from(m)).sum();
        c
    }

    pub fn regularity(&self) -> Regularity {
        let profiles = self.degree_profiles();
        let Some(first) = profiles.first() else {
            return Regularity::default();
        };
        let balanced = profiles.iter().all(|p| p.d_plus == p.d_minus);
        let r = (balanced && profiles.iter().all(|p| p.out_combined() == first.out_combined()))
            .then_some(first.out_combined());
        let rs = (balanced
            && profiles
                .iter()
                .all(|p| p.d == first.d && p.d_plus == first.d_plus))
            .then_some((first.d, first.d_plus));
        Regularity { r, rs }
    }

    pub fn has_loops(&self) -> bool {
        self.edges.keys().any(|&(i, j)| i == j)
    }

    pub fn has_directed_loops(&self) -> bool {
        self.arcs.keys().any(|&(i, j)| i == j)
    }

    /// No undirected loops. Directed loops are allowed.
    pub fn is_loopless(&self) -> bool {
        !self.has_loops()
    }

    /// No multiple edges and no multiple arcs.
    pub fn is_plain(&self) -> bool {
        self.edges.values().all(|&m| m == 1) && self.arcs.values().all(|&m| m == 1)
    }

    /// No loops, directed loops, multiple edges or multiple arcs.
    pub fn is_simple(&self) -> bool {
        self.is_plain() && !self.has_loops() && !self.has_directed_loops()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty() && self.arcs.is_empty()
    }

    /// Every distinct pair carries exactly one edge and one arc each way, and
    /// every vertex exactly one directed loop; no loops.
    pub fn is_directed_loop_complete(&self) -> bool {
        if self.has_loops() || !self.is_plain() {
            return false;
        }
        let n = self.n;
        self.edges.len() == n * n.saturating_sub(1) / 2 && self.arcs.len() == n * n
    }

    pub fn undirected_part(&self) -> MixedGraph {
        MixedGraph {
            n: self.n,
            edges: self.edges.clone(),
            arcs: BTreeMap::new(),
        }
    }

    pub fn directed_part(&self) -> MixedGraph {
        MixedGraph {
            n: self.n,
            edges: BTreeMap::new(),
            arcs: self.arcs.clone(),
        }
    }

    /// Multiset union on a common vertex set: multiplicities add.
    pub fn union(&self, other: &MixedGraph) -> Result<MixedGraph> {
        if self.n != other.n {
            return Err(Error::input(format!(
                "union needs equal vertex sets ({} vs {})",
                self.n, other.n
            )));
        }
        let mut out = self.clone();
        for (&k, &m) in &other.edges {
            *out.edges.entry(k).or_insert(0) += m;
        }
        for (&k, &m) in &other.arcs {
            *out.arcs.entry(k).or_insert(0) += m;
        }
        Ok(out)
    }

    /// Union of two spanning submixed graphs with disjoint edge and arc sets.
    pub fn oplus(&self, other: &MixedGraph) -> Result<MixedGraph> {
        if let Some(k) = self.edges.keys().find(|k| other.edges.contains_key(k)) {
            return Err(Error::input(format!(
                "factorization overlap on edge {{{}, {}}}",
                k.0, k.1
            )));
        }
        if let Some(k) = self.arcs.keys().find(|k| other.arcs.contains_key(k)) {
            return Err(Error::input(format!(
                "factorization overlap on arc ({}, {})",
                k.0, k.1
            )));
        }
        self.union(other)
    }

    /// Removes one copy of the arc `u → v`.
    pub fn delete_arc(&self, u: usize, v: usize) -> Result<MixedGraph> {
        let mut out = self.clone();
        match out.arcs.get_mut(&(u, v)) {
            None => Err(Error::input(format!("no arc ({u}, {v}) to delete"))),
            Some(m) => {
                *m -= 1;
                if *m == 0 {
                    out.arcs.remove(&(u, v));
                }
                Ok(out)
            }
        }
    }

    /// Removes the listed vertices and everything incident with them. The
    /// surviving vertices keep their relative order.
    pub fn delete_vertices(&self, removed: &[usize]) -> Result<MixedGraph> {
        let mut gone = vec![false; self.n];
        for &u in removed {
            self.check_vertex(u)?;
            gone[u] = true;
        }
        let mut index = vec![usize::MAX; self.n];
        let mut next = 0;
        for u in 0..self.n {
            if !gone[u] {
                index[u] = next;
                next += 1;
            }
        }
        let mut out = MixedGraph::new(next);
        for (&(i, j), &m) in &self.edges {
            if !gone[i] && !gone[j] {
                out.edges.insert(canonical(index[i], index[j]), m);
            }
        }
        for (&(i, j), &m) in &self.arcs {
            if !gone[i] && !gone[j] {
                out.arcs.insert((index[i], index[j]), m);
            }
        }
        Ok(out)
    }

    /// Merges `v` into `u`. Edges and arcs are rerouted and multiplicities
    /// add; an edge or arc between `u` and `v` becomes a loop or a directed
    /// loop. Vertex `v` is removed and later vertices shift down by one.
    pub fn identify_vertices(&self, u: usize, v: usize) -> Result<MixedGraph> {
        self.check_vertex(u)?;
        self.check_vertex(v)?;
        if u == v {
            return Err(Error::input("cannot identify a vertex with itself"));
        }
        let map = |x: usize| {
            let x = if x == v { u } else { x };
            if x > v {
                x - 1
            } else {
                x
            }
        };
        let mut out = MixedGraph::new(self.n - 1);
        for (&(i, j), &m) in &self.edges {
            *out.edges.entry(canonical(map(i), map(j))).or_insert(0) += m;
        }
        for (&(i, j), &m) in &self.arcs {
            *out.arcs.entry((map(i), map(j))).or_insert(0) += m;
        }
        Ok(out)
    }
}

fn canonical(u: usize, v: usize) -> (usize, usize) {
    if u <= v {
        (u, v)
    } else {
        (v, u)
    }
}

/// Named graph families with closed-form spectra or standard structure.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "snake_case")]
pub enum Family {
    /// `K_n`
    Complete { n: usize },
    /// `K^D_n`
    CompleteDirected { n: usize },
    /// `K^M_n`
    CompleteMixed { n: usize },
    /// `K_{k(m)}`
    CompleteMultipartite { k: usize, m: usize },
    /// `K^D_{k(m)}`
    CompleteMultipartiteDirected { k: usize, m: usize },
    /// `K^M_{k(m)}`
    CompleteMultipartiteMixed { k: usize, m: usize },
    Path { n: usize },
    Cycle { n: usize },
    /// Path with every edge replaced by an arc pointing the same way.
    OrientedPathSame { n: usize },
    /// Cycle with every edge replaced by an arc pointing the same way.
    OrientedCycleSame { n: usize },
    /// Even cycle whose arcs alternate direction.
    OrientedCycleAlternating { n: usize },
    /// Undirected path `v₀ … v_{n-1}` plus the arcs `v₀ → v_{n-1}` and
    /// `v_{n-1} → v₀`; its associated graph is the cycle `C_{2n}`.
    AlternatingDoubleCycle { n: usize },
}

impl Family {
    pub fn vertex_count(&self) -> usize {
        match *self {
            Family::Complete { n }
            | Family::CompleteDirected { n }
            | Family::CompleteMixed { n }
            | Family::Path { n }
            | Family::Cycle { n }
            | Family::OrientedPathSame { n }
            | Family::OrientedCycleSame { n }
            | Family::OrientedCycleAlternating { n }
            | Family::AlternatingDoubleCycle { n } => n,
            Family::CompleteMultipartite { k, m }
            | Family::CompleteMultipartiteDirected { k, m }
            | Family::CompleteMultipartiteMixed { k, m } => k * m,
        }
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |msg: &str| Err(Error::input(format!("{self}: {msg}")));
        match *self {
            Family::Complete { n }
            | Family::CompleteDirected { n }
            | Family::CompleteMixed { n }
            | Family::Path { n }
                if n == 0 =>
            {
                bad("needs at least one vertex")
            }
            Family::CompleteMultipartite { k, m }
            | Family::CompleteMultipartiteDirected { k, m }
            | Family::CompleteMultipartiteMixed { k, m }
                if k == 0 || m == 0 =>
            {
                bad("needs k >= 1 and m >= 1")
            }
            Family::Cycle { n } | Family::OrientedCycleSame { n } if n < 3 => {
                bad("needs n >= 3")
            }
            Family::OrientedPathSame { n } | Family::AlternatingDoubleCycle { n } if n < 2 => {
                bad("needs n >= 2")
            }
            Family::OrientedCycleAlternating { n } if n < 4 || n % 2 == 1 => {
                bad("needs even n >= 4")
            }
            _ => Ok(()),
        }
    }

    pub fn build(&self) -> Result<MixedGraph> {
        self.validate()?;
        let n = self.vertex_count();
        let mut g = MixedGraph::new(n);
        let part = |m: usize| move |i: usize| i / m;
        match *self {
            Family::Complete { .. } => all_pairs(&mut g, |_, _| true, true, false),
            Family::CompleteDirected { .. } => all_pairs(&mut g, |_, _| true, false, true),
            Family::CompleteMixed { .. } => all_pairs(&mut g, |_, _| true, true, true),
            Family::CompleteMultipartite { m, .. } => {
                let p = part(m);
                all_pairs(&mut g, |i, j| p(i) != p(j), true, false)
            }
            Family::CompleteMultipartiteDirected { m, .. } => {
                let p = part(m);
                all_pairs(&mut g, |i, j| p(i) != p(j), false, true)
            }
            Family::CompleteMultipartiteMixed { m, .. } => {
                let p = part(m);
                all_pairs(&mut g, |i, j| p(i) != p(j), true, true)
            }
            Family::Path { .. } => {
                for i in 1..n {
                    g.add_edge(i - 1, i, 1)?;
                }
            }
            Family::Cycle { .. } => {
                for i in 0..n {
                    g.add_edge(i, (i + 1) % n, 1)?;
                }
            }
            Family::OrientedPathSame { .. } => {
                for i in 1..n {
                    g.add_arc(i - 1, i, 1)?;
                }
            }
            Family::OrientedCycleSame { .. } => {
                for i in 0..n {
                    g.add_arc(i, (i + 1) % n, 1)?;
                }
            }
            Family::OrientedCycleAlternating { .. } => {
                for i in 0..n {
                    let j = (i + 1) % n;
                    if i % 2 == 0 {
                        g.add_arc(i, j, 1)?;
                    } else {
                        g.add_arc(j, i, 1)?;
                    }
                }
            }
            Family::AlternatingDoubleCycle { .. } => {
                for i in 1..n {
                    g.add_edge(i - 1, i, 1)?;
                }
                g.add_arc(0, n - 1, 1)?;
                g.add_arc(n - 1, 0, 1)?;
            }
        }
        Ok(g)
    }
}

fn all_pairs(g: &mut MixedGraph, keep: impl Fn(usize, usize) -> bool, edges: bool, arcs: bool) {
    let n = g.n;
    for i in 0..n {
        for j in 0..n {
            if i == j || !keep(i, j) {
                continue;
            }
            if edges && i < j {
                g.edges.insert((i, j), 1);
            }
            if arcs {
                g.arcs.insert((i, j), 1);
            }
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Family::Complete { n } => write!(f, "K_{n}"),
            Family::CompleteDirected { n } => write!(f, "K^D_{n}"),
            Family::CompleteMixed { n } => write!(f, "K^M_{n}"),
            Family::CompleteMultipartite { k, m } => write!(f, "K_{k}({m})"),
            Family::CompleteMultipartiteDirected { k, m } => write!(f, "K^D_{k}({m})"),
            Family::CompleteMultipartiteMixed { k, m } => write!(f, "K^M_{k}({m})"),
            Family::Path { n } => write!(f, "P_{n}"),
            Family::Cycle { n } => write!(f, "C_{n}"),
            Family::OrientedPathSame { n } => write!(f, "oriented P_{n} (same direction)"),
            Family::OrientedCycleSame { n } => write!(f, "oriented C_{n} (same direction)"),
            Family::OrientedCycleAlternating { n } => {
                write!(f, "oriented C_{n} (alternating direction)")
            }
            Family::AlternatingDoubleCycle { n } => write!(f, "alternating 2n-cycle (n={n})"),
        }
    }
}

/// Structural restrictions for [`random_mixed`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct RandomFlags {
    /// No loops, directed loops or multiplicities above one.
    pub simple: bool,
    /// No undirected loops.
    pub loopless: bool,
    /// No multiplicities above one.
    pub plain: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RandomSpec {
    pub n: usize,
    /// Probability that any allowed edge slot, arc slot or loop slot is used.
    pub density: f64,
    /// Cap on edge multiplicity; `None` means the default of 3 (or 1 when
    /// the flags forbid multiplicities).
    pub max_edge_mult: Option<u32>,
    pub max_arc_mult: Option<u32>,
    pub flags: RandomFlags,
}

pub const DEFAULT_MAX_MULT: u32 = 3;

impl RandomSpec {
    pub fn simple(n: usize, density: f64) -> Self {
        RandomSpec {
            n,
            density,
            max_edge_mult: None,
            max_arc_mult: None,
            flags: RandomFlags {
                simple: true,
                ..RandomFlags::default()
            },
        }
    }

    pub fn general(n: usize, density: f64) -> Self {
        RandomSpec {
            n,
            density,
            max_edge_mult: None,
            max_arc_mult: None,
            flags: RandomFlags::default(),
        }
    }
}

/// Seeded random mixed graph. The same seed and spec always give the same
/// graph.
pub fn random_mixed(seed: u64, spec: &RandomSpec) -> Result<MixedGraph> {
    if spec.n == 0 {
        return Err(Error::input("random graph needs n >= 1"));
    }
    if !(0.0..=1.0).contains(&spec.density) {
        return Err(Error::input(format!(
            "density {} outside [0, 1]",
            spec.density
        )));
    }
    let flags = spec.flags;
    let no_mult = flags.simple || flags.plain;
    for (what, cap) in [("edge", spec.max_edge_mult), ("arc", spec.max_arc_mult)] {
        match cap {
            Some(0) => return Err(Error::input(format!("max {what} multiplicity must be >= 1"))),
            Some(c) if c > 1 && no_mult => {
                return Err(Error::input(format!(
                    "max {what} multiplicity {c} contradicts the simple/plain flag"
                )))
            }
            _ => {}
        }
    }
    let cap = |c: Option<u32>| if no_mult { 1 } else { c.unwrap_or(DEFAULT_MAX_MULT) };
    let edge_cap = cap(spec.max_edge_mult);
    let arc_cap = cap(spec.max_arc_mult);
    let allow_loops = !(flags.simple || flags.loopless);
    let allow_directed_loops = !flags.simple;

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut g = MixedGraph::new(spec.n);
    let n = spec.n;
    for i in 0..n {
        for j in i..n {
            if i == j && !allow_loops {
                continue;
            }
            if rng.random_bool(spec.density) {
                let m = rng.random_range(1..=edge_cap);
                g.edges.insert((i, j), m);
            }
        }
    }
    for i in 0..n {
        for j in 0..n {
            if i == j && !allow_directed_loops {
                continue;
            }
            if rng.random_bool(spec.density) {
                let m = rng.random_range(1..=arc_cap);
                g.arcs.insert((i, j), m);
            }
        }
    }
    Ok(g)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mixed_two_path() -> MixedGraph {
        let mut g = MixedGraph::new(2);
        g.add_edge(0, 1, 1).unwrap();
        g.add_arc(0, 1, 1).unwrap();
        g
    }

    fn profile(d: u64, d_plus: u64, d_minus: u64, loops: u64) -> DegreeProfile {
        DegreeProfile {
            d,
            d_plus,
            d_minus,
            loops,
        }
    }

    #[test]
    fn degree_profiles_follow_loop_conventions() {
        assert_eq!(mixed_two_path().degree_profile(0).unwrap(), profile(1, 1, 0, 0));

        let mut looped = MixedGraph::new(1);
        looped.add_edge(0, 0, 1).unwrap();
        assert_eq!(looped.degree_profile(0).unwrap(), profile(2, 0, 0, 1));

        let mut dlooped = MixedGraph::new(1);
        dlooped.add_arc(0, 0, 1).unwrap();
        assert_eq!(dlooped.degree_profile(0).unwrap(), profile(0, 1, 1, 0));

        assert!(mixed_two_path().degree_profile(2).is_err());
    }

    #[test]
    fn counts_of_small_graphs() {
        let km3 = Family::CompleteMixed { n: 3 }.build().unwrap();
        assert_eq!(km3.counts(), GraphCounts { e: 3, a: 6, l: 0 });
        assert_eq!(MixedGraph::new(4).counts(), GraphCounts { e: 0, a: 0, l: 0 });

        let mut g = MixedGraph::new(1);
        g.add_edge(0, 0, 1).unwrap();
        g.add_arc(0, 0, 1).unwrap();
        assert_eq!(g.counts(), GraphCounts { e: 0, a: 1, l: 1 });
    }

    #[test]
    fn regularity_of_families() {
        assert_eq!(Family::CompleteMixed { n: 3 }.build().unwrap().regularity().r, Some(4));
        assert_eq!(Family::CompleteDirected { n: 3 }.build().unwrap().regularity().r, Some(2));
        let reg = mixed_two_path().regularity();
        assert_eq!(reg, Regularity { r: None, rs: None });
        for k in 1..=4 {
            for m in 1..=3 {
                let km = Family::CompleteMultipartiteMixed { k, m }.build().unwrap();
                assert_eq!(km.regularity().r, Some((2 * m * (k - 1)) as u64));
                let kd = Family::CompleteMultipartiteDirected { k, m }.build().unwrap();
                assert_eq!(kd.regularity().r, Some((m * (k - 1)) as u64));
            }
        }
    }

    #[test]
    fn family_shapes() {
        let km2 = Family::CompleteMixed { n: 2 }.build().unwrap();
        assert_eq!(km2.edges().collect::<Vec<_>>(), vec![((0, 1), 1)]);
        assert_eq!(km2.arcs().collect::<Vec<_>>(), vec![((0, 1), 1), ((1, 0), 1)]);

        let oc3 = Family::OrientedCycleSame { n: 3 }.build().unwrap();
        assert_eq!(
            oc3.arcs().map(|(k, _)| k).collect::<Vec<_>>(),
            vec![(0, 1), (1, 2), (2, 0)]
        );
        assert_eq!(oc3.edges().count(), 0);

        let kd22 = Family::CompleteMultipartiteDirected { k: 2, m: 2 }.build().unwrap();
        assert_eq!(kd22.order(), 4);
        assert_eq!(kd22.counts(), GraphCounts { e: 0, a: 8, l: 0 });

        let alt = Family::OrientedCycleAlternating { n: 4 }.build().unwrap();
        let profiles = alt.degree_profiles();
        for (u, p) in profiles.iter().enumerate() {
            assert!(p.d_plus == 0 || p.d_minus == 0, "vertex {u} is not a source or sink");
        }
        assert!(Family::OrientedCycleAlternating { n: 5 }.build().is_err());
        assert!(Family::OrientedCycleAlternating { n: 2 }.build().is_err());
    }

    #[test]
    fn random_is_deterministic_and_respects_flags() {
        let spec = RandomSpec::simple(3, 0.5);
        assert_eq!(random_mixed(1, &spec).unwrap(), random_mixed(1, &spec).unwrap());
        assert!(random_mixed(1, &RandomSpec::general(4, 0.0)).unwrap().is_empty());
        let full = random_mixed(9, &RandomSpec::simple(2, 1.0)).unwrap();
        assert_eq!(full, Family::CompleteMixed { n: 2 }.build().unwrap());
    }

    #[test]
    fn random_rejects_contradictions() {
        let mut spec = RandomSpec::simple(3, 0.5);
        spec.max_edge_mult = Some(2);
        assert!(random_mixed(0, &spec).is_err());
        assert!(random_mixed(0, &RandomSpec::simple(0, 0.5)).is_err());
        assert!(random_mixed(0, &RandomSpec::simple(3, 1.5)).is_err());
    }

    #[test]
    fn factorization_and_deletion() {
        let km2 = Family::CompleteMixed { n: 2 }.build().unwrap();
        let rebuilt = km2.undirected_part().oplus(&km2.directed_part()).unwrap();
        assert_eq!(rebuilt, km2);
        assert!(km2.oplus(&km2.directed_part()).is_err());

        let h = km2.delete_arc(0, 1).unwrap();
        assert_eq!(h.edge_multiplicity(0, 1), 1);
        assert_eq!(h.arc_multiplicity(0, 1), 0);
        assert_eq!(h.arc_multiplicity(1, 0), 1);
        assert!(h.delete_arc(0, 1).is_err());

        let km3 = Family::CompleteMixed { n: 3 }.build().unwrap();
        assert_eq!(km3.delete_vertices(&[2]).unwrap(), km2);

        let doubled = km2.union(&km2).unwrap();
        assert_eq!(doubled.edge_multiplicity(1, 0), 2);
        assert!(km2.union(&km3).is_err());
    }

    #[test]
    fn identification_reroutes_and_adds() {
        // path 0 - 1 - 2 with arcs 0 -> 2, identify 0 and 2
        let mut g = MixedGraph::new(3);
        g.add_edge(0, 1, 1).unwrap();
        g.add_edge(1, 2, 1).unwrap();
        g.add_arc(0, 2, 1).unwrap();
        let h = g.identify_vertices(0, 2).unwrap();
        assert_eq!(h.order(), 2);
        assert_eq!(h.edge_multiplicity(0, 1), 2);
        assert_eq!(h.arc_multiplicity(0, 0), 1);
    }

    #[test]
    fn directed_loop_complete_structure() {
        let mut g = Family::CompleteMixed { n: 2 }.build().unwrap();
        assert!(!g.is_directed_loop_complete());
        g.add_arc(0, 0, 1).unwrap();
        g.add_arc(1, 1, 1).unwrap();
        assert!(g.is_directed_loop_complete());
        assert!(g.is_plain() && g.is_loopless() && !g.is_simple());
    }
}
