//! The associated graph `G^A`: an undirected multigraph on the doubled vertex
//! set `v'₁ … v'ₙ, v''₁ … v''ₙ` whose adjacency matrix is the integrated
//! adjacency matrix of `G`.
//!
//! Vertex `v'ᵢ` has index `i` and `v''ᵢ` has index `n + i`. Every structural
//! question about mixed components, the AB and AP properties and mixed
//! distances is answered here through `G^A`.

use std::collections::{BTreeMap, VecDeque};

use serde::{Deserialize, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::graph::MixedGraph;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CopyTag {
    Prime,
    DoublePrime,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AssociatedGraph {
    n: usize,
    /// Canonical pair `(x, y)`, `x <= y`, to multiplicity. `(x, x)` is a loop.
    adj_mult: BTreeMap<(usize, usize), u32>,
    /// Neighbour lists with multiplicity; loops excluded.
    neighbours: Vec<Vec<(usize, u32)>>,
    loops: Vec<u32>,
}

impl AssociatedGraph {
    /// Number of vertices, `2n`.
    pub fn order(&self) -> usize {
        2 * self.n
    }

    pub fn mixed_order(&self) -> usize {
        self.n
    }

    pub fn prime(&self, i: usize) -> usize {
        i
    }

    pub fn double_prime(&self, i: usize) -> usize {
        self.n + i
    }

    /// Mixed vertex and copy tag an associated vertex came from.
    pub fn origin(&self, x: usize) -> (usize, CopyTag) {
        if x < self.n {
            (x, CopyTag::Prime)
        } else {
            (x - self.n, CopyTag::DoublePrime)
        }
    }

    pub fn multiplicity(&self, x: usize, y: usize) -> u32 {
        let key = if x <= y { (x, y) } else { (y, x) };
        self.adj_mult.get(&key).copied().unwrap_or(0)
    }

    pub fn edges(&self) -> impl Iterator<Item = ((usize, usize), u32)> + '_ {
        self.adj_mult.iter().map(|(&k, &m)| (k, m))
    }

    /// Neighbours of `x` other than `x` itself, with multiplicity.
    pub fn neighbours(&self, x: usize) -> &[(usize, u32)] {
        &self.neighbours[x]
    }

    /// Degree of `x`; a loop counts twice.
    pub fn degree(&self, x: usize) -> u64 {
        self.neighbours[x]
            .iter()
            .map(|&(_, m)| u64::from(m))
            .sum::<u64>()
            + 2 * u64::from(self.loops[x])
    }

    pub fn degrees(&self) -> Vec<u64> {
        (0..self.order()).map(|x| self.degree(x)).collect()
    }

    /// No loops and no multiple edges.
    pub fn is_simple(&self) -> bool {
        self.adj_mult.iter().all(|(&(x, y), &m)| x != y && m == 1)
    }

    /// Simple and every pair of distinct vertices adjacent.
    pub fn is_complete(&self) -> bool {
        let order = self.order();
        self.is_simple() && self.adj_mult.len() == order * (order - 1) / 2
    }

    /// Dense adjacency matrix, loops contributing 2 on the diagonal.
    pub fn adjacency(&self) -> Vec<Vec<u64>> {
        let order = self.order();
        let mut a = vec![vec![0u64; order]; order];
        for (&(x, y), &m) in &self.adj_mult {
            if x == y {
                a[x][x] += 2 * u64::from(m);
            } else {
                a[x][y] += u64::from(m);
                a[y][x] += u64::from(m);
            }
        }
        a
    }

    /// Breadth-first distances from a set of sources. Multi-edges count once.
    pub fn bfs(&self, sources: &[usize]) -> Vec<Distance> {
        let mut dist = vec![Distance::Unreachable; self.order()];
        let mut queue = VecDeque::new();
        for &s in sources {
            if dist[s] == Distance::Unreachable {
                dist[s] = Distance::Finite(0);
                queue.push_back(s);
            }
        }
        while let Some(x) = queue.pop_front() {
            let Distance::Finite(dx) = dist[x] else {
                unreachable!()
            };
            for &(y, _) in &self.neighbours[x] {
                if dist[y] == Distance::Unreachable {
                    dist[y] = Distance::Finite(dx + 1);
                    queue.push_back(y);
                }
            }
        }
        dist
    }
}

pub fn build_associated(g: &MixedGraph) -> AssociatedGraph {
    let n = g.order();
    let mut adj_mult = BTreeMap::new();
    for ((i, j), m) in g.edges() {
        adj_mult.insert((i, j), m);
        adj_mult.insert((n + i, n + j), m);
    }
    for ((i, j), m) in g.arcs() {
        *adj_mult.entry((i, n + j)).or_insert(0) += m;
    }
    let mut neighbours = vec![Vec::new(); 2 * n];
    let mut loops = vec![0; 2 * n];
    for (&(x, y), &m) in &adj_mult {
        if x == y {
            loops[x] += m;
        } else {
            neighbours[x].push((y, m));
            neighbours[y].push((x, m));
        }
    }
    for list in &mut neighbours {
        list.sort_unstable();
    }
    AssociatedGraph {
        n,
        adj_mult,
        neighbours,
        loops,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComponentFlags {
    /// A single vertex with no edges.
    pub trivial: bool,
    pub bipartite: bool,
    /// A path; a single isolated vertex counts as a trivial path.
    pub is_path: bool,
    /// Connected and 2-regular.
    pub is_cycle: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComponentReport {
    pub component_count: usize,
    /// Vertex sets of `G^A`, each sorted, ordered by smallest vertex.
    pub components: Vec<Vec<usize>>,
    pub flags: Vec<ComponentFlags>,
    /// Mixed components correspond one-to-one with components of `G^A`.
    pub mixed_component_count: usize,
}

impl ComponentReport {
    pub fn trivial_count(&self) -> usize {
        self.flags.iter().filter(|f| f.trivial).count()
    }

    pub fn bipartite_count(&self) -> usize {
        self.flags.iter().filter(|f| f.bipartite).count()
    }

    pub fn nontrivial_bipartite_count(&self) -> usize {
        self.flags
            .iter()
            .filter(|f| f.bipartite && !f.trivial)
            .count()
    }
}

/// Union-find with parity, used for components and bipartiteness in one pass.
struct ParityForest {
    parent: Vec<usize>,
    parity: Vec<u8>,
    odd: Vec<bool>,
}

impl ParityForest {
    fn new(size: usize) -> Self {
        ParityForest {
            parent: (0..size).collect(),
            parity: vec![0; size],
            odd: vec![false; size],
        }
    }

    fn find(&mut self, x: usize) -> (usize, u8) {
        let p = self.parent[x];
        if p == x {
            return (x, 0);
        }
        let (root, par) = self.find(p);
        self.parity[x] ^= par;
        self.parent[x] = root;
        (root, self.parity[x])
    }

    fn join(&mut self, x: usize, y: usize) {
        let (rx, px) = self.find(x);
        let (ry, py) = self.find(y);
        if rx == ry {
            if px == py {
                self.odd[rx] = true;
            }
            return;
        }
        self.parent[ry] = rx;
        self.parity[ry] = px ^ py ^ 1;
        self.odd[rx] |= self.odd[ry];
    }
}

pub fn analyze_components(ag: &AssociatedGraph) -> ComponentReport {
    let order = ag.order();
    let mut forest = ParityForest::new(order);
    for ((x, y), _) in ag.edges() {
        forest.join(x, y);
    }
    let mut by_root: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for x in 0..order {
        let (root, _) = forest.find(x);
        by_root.entry(root).or_default().push(x);
    }
    let mut groups: Vec<(usize, Vec<usize>)> = by_root.into_iter().collect();
    groups.sort_by_key(|(_, members)| members[0]);

    let mut components = Vec::with_capacity(groups.len());
    let mut flags = Vec::with_capacity(groups.len());
    for (root, members) in groups {
        let degrees: Vec<u64> = members.iter().map(|&x| ag.degree(x)).collect();
        let edge_total: u64 = degrees.iter().sum::<u64>() / 2;
        let size = members.len() as u64;
        let trivial = size == 1 && edge_total == 0;
        let is_path = edge_total + 1 == size && degrees.iter().all(|&d| d <= 2);
        let is_cycle = edge_total == size && degrees.iter().all(|&d| d == 2);
        flags.push(ComponentFlags {
            trivial,
            bipartite: !forest.odd[root],
            is_path,
            is_cycle,
        });
        components.push(members);
    }
    ComponentReport {
        component_count: components.len(),
        mixed_component_count: components.len(),
        components,
        flags,
    }
}

/// Breadth-first 2-coloring. Returns a coloring only after checking it
/// edge by edge; `None` when an odd cycle (or a loop) exists.
pub fn bipartite_oracle(ag: &AssociatedGraph) -> Option<Vec<u8>> {
    let order = ag.order();
    let mut color = vec![u8::MAX; order];
    for start in 0..order {
        if color[start] != u8::MAX {
            continue;
        }
        color[start] = 0;
        let mut queue = VecDeque::from([start]);
        while let Some(x) = queue.pop_front() {
            for &(y, _) in ag.neighbours(x) {
                if color[y] == u8::MAX {
                    color[y] = 1 - color[x];
                    queue.push_back(y);
                }
            }
        }
    }
    ag.edges()
        .all(|((x, y), _)| color[x] != color[y])
        .then_some(color)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Predicates {
    pub uniconnected: bool,
    /// `G^A` bipartite.
    pub has_ab: bool,
    /// Every component of `G^A` is a path.
    pub ap_all_components: bool,
    pub plain: bool,
    pub loopless: bool,
    pub simple: bool,
    pub directed_loop_complete: bool,
    /// Completeness of `G^A`, kept alongside the structural check above.
    pub associated_complete: bool,
    pub component_count: usize,
    pub n_ab_nontrivial_components: usize,
    pub n_trivial_components: usize,
    pub n_bipartite_components: usize,
}

pub fn predicates(g: &MixedGraph) -> Predicates {
    let ag = build_associated(g);
    let report = analyze_components(&ag);
    predicates_from(g, &ag, &report)
}

pub fn predicates_from(g: &MixedGraph, ag: &AssociatedGraph, report: &ComponentReport) -> Predicates {
    Predicates {
        uniconnected: report.component_count == 1,
        has_ab: report.flags.iter().all(|f| f.bipartite),
        ap_all_components: report.flags.iter().all(|f| f.is_path),
        plain: g.is_plain(),
        loopless: g.is_loopless(),
        simple: g.is_simple(),
        directed_loop_complete: g.is_directed_loop_complete(),
        associated_complete: ag.is_complete(),
        component_count: report.component_count,
        n_ab_nontrivial_components: report.nontrivial_bipartite_count(),
        n_trivial_components: report.trivial_count(),
        n_bipartite_components: report.bipartite_count(),
    }
}

/// Graph distance that may be infinite.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Deserialize)]
pub enum Distance {
    Finite(usize),
    Unreachable,
}

impl Distance {
    pub fn finite(self) -> Option<usize> {
        match self {
            Distance::Finite(d) => Some(d),
            Distance::Unreachable => None,
        }
    }
}

impl Serialize for Distance {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Distance::Finite(d) => s.serialize_u64(*d as u64),
            Distance::Unreachable => s.serialize_str("unreachable"),
        }
    }
}

impl std::fmt::Display for Distance {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Distance::Finite(d) => write!(f, "{d}"),
            Distance::Unreachable => write!(f, "inf"),
        }
    }
}

/// The four parity-classified distances and their minimum.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct MixedDistance {
    pub d1: Distance,
    pub d2: Distance,
    pub d3: Distance,
    pub d4: Distance,
    pub d: Distance,
}

pub fn mixed_distance(g: &MixedGraph, u: usize, v: usize) -> Result<MixedDistance> {
    let ag = build_associated(g);
    mixed_distance_in(&ag, u, v)
}

pub fn mixed_distance_in(ag: &AssociatedGraph, u: usize, v: usize) -> Result<MixedDistance> {
    let n = ag.mixed_order();
    if u >= n || v >= n {
        return Err(Error::input(format!(
            "vertex pair ({u}, {v}) out of range for {n} vertices"
        )));
    }
    let from_prime = ag.bfs(&[ag.prime(u)]);
    let from_double = ag.bfs(&[ag.double_prime(u)]);
    let d1 = from_prime[ag.prime(v)];
    let d2 = from_prime[ag.double_prime(v)];
    let d3 = from_double[ag.prime(v)];
    let d4 = from_double[ag.double_prime(v)];
    let d = if u == v {
        Distance::Finite(0)
    } else {
        d1.min(d2).min(d3).min(d4)
    };
    Ok(MixedDistance { d1, d2, d3, d4, d })
}

/// Distance between two vertex sets, computed as the `G^A` distance between
/// their doubled sets.
pub fn set_distance(g: &MixedGraph, xs: &[usize], ys: &[usize]) -> Result<Distance> {
    set_distance_in(&build_associated(g), xs, ys)
}

pub fn set_distance_in(ag: &AssociatedGraph, xs: &[usize], ys: &[usize]) -> Result<Distance> {
    let n = ag.mixed_order();
    if xs.is_empty() || ys.is_empty() {
        return Err(Error::input("set distance needs non-empty vertex sets"));
    }
    if let Some(&bad) = xs.iter().chain(ys).find(|&&u| u >= n) {
        return Err(Error::input(format!("vertex {bad} out of range for {n} vertices")));
    }
    let sources: Vec<usize> = xs.iter().flat_map(|&u| [u, n + u]).collect();
    let dist = ag.bfs(&sources);
    Ok(ys
        .iter()
        .flat_map(|&v| [dist[v], dist[n + v]])
        .min()
        .unwrap_or(Distance::Unreachable))
}
