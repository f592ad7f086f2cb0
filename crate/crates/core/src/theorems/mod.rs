//! Registry of spectral identities, characterizations and bounds, each
//! evaluated on a concrete graph into a [`BoundReport`].

mod characterizations;
mod closed_form;
mod identities;
mod laplacian_bounds;
mod normalized_bounds;
mod signless_bounds;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::associated::{analyze_components, build_associated, predicates_from, AssociatedGraph, ComponentReport, Predicates};
use crate::eigen::{jacobi_eigen, Spectrum};
use crate::error::{Error, Result};
use crate::graph::{DegreeProfile, GraphCounts, MixedGraph, Regularity};
use crate::matrix::{MatrixKind, SymMatrix};

pub use closed_form::{closed_form, detect_families, ClosedFormSpectrum};

/// Numerical tolerances shared by every check.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Tolerances {
    /// An inequality holds when `rhs − lhs ≥ −slack`.
    pub slack: f64,
    /// Two reals are equal when they differ by at most this.
    pub equality: f64,
    /// An eigenvalue is zero when its magnitude is at most this.
    pub zero: f64,
    /// Adjacent eigenvalues within this are grouped.
    pub group: f64,
    /// Computed and closed-form spectra agree within this.
    pub spectrum: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances {
            slack: 1e-8,
            equality: 1e-7,
            zero: 1e-8,
            group: 1e-7,
            spectrum: 1e-8,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RunOptions {
    pub seed: u64,
    /// Random instantiations per parameterized bound.
    pub instantiations: usize,
    pub tol: Tolerances,
}

impl Default for RunOptions {
    fn default() -> Self {
        RunOptions {
            seed: 7,
            instantiations: 16,
            tol: Tolerances::default(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(untagged)]
pub enum Value {
    Scalar(f64),
    List(Vec<f64>),
}

impl From<f64> for Value {
    fn from(x: f64) -> Self {
        Value::Scalar(x)
    }
}

impl From<Vec<f64>> for Value {
    fn from(x: Vec<f64>) -> Self {
        Value::List(x)
    }
}

/// The object a parameterized check was evaluated on, or the structure
/// certifying an equality case.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Witness {
    Pair { u: usize, v: usize },
    Arc { u: usize, v: usize },
    Subset { vertices: Vec<usize> },
    SetPair { x: Vec<usize>, y: Vec<usize> },
    SetFamily { sets: Vec<Vec<usize>> },
    Factorization { edges: Vec<(usize, usize)>, arcs: Vec<(usize, usize)> },
    Equality { description: String },
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Part {
    pub label: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lhs: Option<Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rhs: Option<Value>,
    pub slack: f64,
    pub holds: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BoundReport {
    pub bound_id: String,
    pub applicable: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reason: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lhs: Option<Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rhs: Option<Value>,
    /// Minimum slack over all parts; negative beyond tolerance means violated.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub slack: Option<f64>,
    pub holds: bool,
    /// Whether the equality case of the statement is attained.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub equality: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub parts: Vec<Part>,
    /// Number of parameter instantiations evaluated; 1 for plain checks.
    pub instantiations: usize,
}

impl BoundReport {
    pub fn inapplicable(id: &str, reason: impl Into<String>) -> Self {
        BoundReport {
            bound_id: id.to_string(),
            applicable: false,
            reason: Some(reason.into()),
            lhs: None,
            rhs: None,
            slack: None,
            holds: true,
            equality: None,
            witness: None,
            parts: Vec::new(),
            instantiations: 0,
        }
    }

    pub fn csv_row(&self) -> String {
        let slack = self.slack.map(|s| format!("{s:e}")).unwrap_or_default();
        format!("{},{},{},{}", self.bound_id, self.applicable, self.holds, slack)
    }
}

pub fn reports_csv(reports: &[BoundReport]) -> String {
    let mut out = String::from("bound_id,applicable,holds,slack\n");
    for r in reports {
        out.push_str(&r.csv_row());
        out.push('\n');
    }
    out
}

/// Accumulates the parts of one report.
pub(crate) struct Builder {
    id: &'static str,
    tol: Tolerances,
    parts: Vec<Part>,
    equality: Option<bool>,
    witness: Option<Witness>,
}

impl Builder {
    pub(crate) fn new(id: &'static str, tol: Tolerances) -> Self {
        Builder {
            id,
            tol,
            parts: Vec::new(),
            equality: None,
            witness: None,
        }
    }

    fn push(&mut self, label: &str, lhs: Option<Value>, rhs: Option<Value>, slack: f64, holds: bool) {
        self.parts.push(Part {
            label: label.to_string(),
            lhs,
            rhs,
            slack,
            holds,
        });
    }

    /// `lhs ≤ rhs` up to the slack tolerance.
    pub(crate) fn le(&mut self, label: &str, lhs: f64, rhs: f64) {
        let slack = rhs - lhs;
        let holds = slack >= -self.tol.slack;
        self.push(label, Some(lhs.into()), Some(rhs.into()), slack, holds);
    }

    /// `lhs = rhs` up to `tol`; slack is 0 inside the tolerance.
    pub(crate) fn eq_within(&mut self, label: &str, lhs: f64, rhs: f64, tol: f64) {
        let dev = (lhs - rhs).abs();
        let holds = dev <= tol;
        let slack = if holds { 0.0 } else { -dev };
        self.push(label, Some(lhs.into()), Some(rhs.into()), slack, holds);
    }

    pub(crate) fn eq(&mut self, label: &str, lhs: f64, rhs: f64) {
        self.eq_within(label, lhs, rhs, self.tol.equality);
    }

    /// Exact equality of integers.
    pub(crate) fn eq_exact(&mut self, label: &str, lhs: i64, rhs: i64) {
        let holds = lhs == rhs;
        let slack = if holds { 0.0 } else { -((lhs - rhs).abs() as f64) };
        self.push(label, Some((lhs as f64).into()), Some((rhs as f64).into()), slack, holds);
    }

    pub(crate) fn truth(&mut self, label: &str, holds: bool) {
        self.push(label, None, None, if holds { 0.0 } else { -1.0 }, holds);
    }

    /// Two sides of an equivalence; holds when they agree.
    pub(crate) fn iff(&mut self, label: &str, structural: bool, spectral: bool) {
        let holds = structural == spectral;
        self.push(
            label,
            Some(f64::from(u8::from(structural)).into()),
            Some(f64::from(u8::from(spectral)).into()),
            if holds { 0.0 } else { -1.0 },
            holds,
        );
    }

    /// Elementwise `lhs ≤ rhs` over two lists.
    pub(crate) fn le_list(&mut self, label: &str, lhs: Vec<f64>, rhs: Vec<f64>) {
        let slack = lhs
            .iter()
            .zip(&rhs)
            .map(|(a, b)| b - a)
            .fold(f64::INFINITY, f64::min);
        let slack = if slack.is_finite() { slack } else { 0.0 };
        let holds = slack >= -self.tol.slack;
        self.push(label, Some(lhs.into()), Some(rhs.into()), slack, holds);
    }

    /// Multiset equality of two spectra.
    pub(crate) fn spectra(&mut self, label: &str, computed: &[f64], expected: &[f64]) {
        match crate::eigen::spectra_equal(computed, expected, self.tol.spectrum) {
            Ok(cmp) => {
                let slack = if cmp.equal { 0.0 } else { -cmp.max_deviation };
                self.push(
                    label,
                    Some(computed.to_vec().into()),
                    Some(expected.to_vec().into()),
                    slack,
                    cmp.equal,
                );
            }
            Err(_) => self.truth(label, false),
        }
    }

    pub(crate) fn equality(&mut self, attained: bool) {
        self.equality = Some(attained);
    }

    pub(crate) fn witness(&mut self, w: Witness) {
        self.witness = Some(w);
    }

    pub(crate) fn finish(self) -> BoundReport {
        if self.parts.is_empty() {
            return BoundReport::inapplicable(self.id, "no part of the statement applies");
        }
        let slack = self.parts.iter().map(|p| p.slack).fold(f64::INFINITY, f64::min);
        let holds = self.parts.iter().all(|p| p.holds);
        let first = &self.parts[0];
        BoundReport {
            bound_id: self.id.to_string(),
            applicable: true,
            reason: None,
            lhs: first.lhs.clone(),
            rhs: first.rhs.clone(),
            slack: Some(slack),
            holds,
            equality: self.equality,
            witness: self.witness,
            parts: self.parts,
            instantiations: 1,
        }
    }
}

/// Everything about one graph that the checks share.
pub struct Analysis {
    pub graph: MixedGraph,
    pub assoc: AssociatedGraph,
    pub components: ComponentReport,
    pub predicates: Predicates,
    pub counts: GraphCounts,
    pub profiles: Vec<DegreeProfile>,
    pub regularity: Regularity,
    pub adjacency: SymMatrix,
    pub laplacian: SymMatrix,
    pub signless: SymMatrix,
    pub normalized: SymMatrix,
    /// Spectrum of the integrated adjacency matrix.
    pub lambda: Spectrum,
    /// Integrated Laplacian spectrum.
    pub nu: Spectrum,
    /// Integrated signless Laplacian spectrum.
    pub xi: Spectrum,
    /// Normalized integrated Laplacian spectrum.
    pub nu_hat: Spectrum,
}

pub fn spectrum_of(kind: MatrixKind, g: &MixedGraph, tol: &Tolerances) -> Result<Spectrum> {
    Ok(jacobi_eigen(&kind.build(g), tol.group)?.spectrum)
}

impl Analysis {
    pub fn new(g: &MixedGraph, tol: &Tolerances) -> Result<Self> {
        if g.order() == 0 {
            return Err(Error::input("graph has no vertices"));
        }
        let assoc = build_associated(g);
        let components = analyze_components(&assoc);
        let predicates = predicates_from(g, &assoc, &components);
        let adjacency = MatrixKind::I.build(g);
        let laplacian = MatrixKind::IL.build(g);
        let signless = MatrixKind::IQ.build(g);
        let normalized = MatrixKind::IN.build(g);
        let spec = |m: &SymMatrix| jacobi_eigen(m, tol.group).map(|e| e.spectrum);
        Ok(Analysis {
            lambda: spec(&adjacency)?,
            nu: spec(&laplacian)?,
            xi: spec(&signless)?,
            nu_hat: spec(&normalized)?,
            counts: g.counts(),
            profiles: g.degree_profiles(),
            regularity: g.regularity(),
            graph: g.clone(),
            assoc,
            components,
            predicates,
            adjacency,
            laplacian,
            signless,
            normalized,
        })
    }

    pub fn n(&self) -> usize {
        self.graph.order()
    }

    pub fn has_edge_or_arc(&self) -> bool {
        self.counts.e + self.counts.a + self.counts.l > 0
    }

    /// Degrees of the associated graph, primed copies first.
    pub fn assoc_degrees(&self) -> Vec<f64> {
        self.assoc.degrees().into_iter().map(|d| d as f64).collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Category {
    Identity,
    Characterization,
    Bound,
    ClosedForm,
}

/// The extra argument a check needs.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Param {
    None,
    VertexPair,
    Subset,
    Arc,
    Factorization,
    SetPair,
    SetFamily,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct BoundInfo {
    pub id: &'static str,
    pub category: Category,
    pub param: Param,
    pub summary: &'static str,
}

const fn info(id: &'static str, category: Category, param: Param, summary: &'static str) -> BoundInfo {
    BoundInfo {
        id,
        category,
        param,
        summary,
    }
}

use Category::{Bound, Characterization, ClosedForm, Identity};

pub const REGISTRY: &[BoundInfo] = &[
    info("trace_L", Identity, Param::None, "sum of Laplacian eigenvalues is 4e+2a"),
    info("trace_Q", Identity, Param::None, "sum of signless eigenvalues is 4e+8l+2a"),
    info("regular_shift_L", Identity, Param::None, "r-regular: Laplacian spectrum is r minus adjacency spectrum"),
    info("regular_shift_Q", Identity, Param::None, "r-regular: signless spectrum is r plus adjacency spectrum"),
    info("regular_shift_N", Identity, Param::None, "r-regular simple: normalized spectrum is 1 - lambda/r = mu/r"),
    info("charpoly_LQ_equal_under_AB", Identity, Param::None, "simple: Laplacian and signless char polys agree iff AB"),
    info("rank_L", Identity, Param::None, "simple: Laplacian rank is 2n minus the component count"),
    info("rs_regular_eigvec", Identity, Param::None, "(r,s)-regular iff 1 and [1;-1] are signless eigenvectors"),
    info("normalized_sum", Identity, Param::None, "loopless plain: normalized eigenvalues sum to 2n-k"),
    info("ab_iff_xi2n_zero_simple", Characterization, Param::None, "uniconnected simple: AB iff smallest signless eigenvalue is a simple zero"),
    info("q_zero_mult_eq_AB_components", Characterization, Param::None, "simple: signless zero multiplicity counts AB components"),
    info("n_zero_mult_eq_components", Characterization, Param::None, "simple: normalized zero multiplicity counts components"),
    info("nhat1_eq_2_iff_nontrivial_AB", Characterization, Param::None, "loopless plain: largest normalized eigenvalue is 2 iff a non-trivial AB component exists"),
    info("xi1_zero_iff_edgeless", Characterization, Param::None, "simple: largest signless eigenvalue is 0 iff no edges or arcs"),
    info("xi1_lt4_iff_AP", Characterization, Param::None, "simple: largest signless eigenvalue below 4 iff every component is AP"),
    info("xi1_eq4_iff_alt_cycle", Characterization, Param::None, "uniconnected simple: largest signless eigenvalue 4 iff the associated graph is a cycle"),
    info("regular_iff_2r_eigvec_ones", Characterization, Param::None, "r-regular iff 1 is a signless eigenvector for 2r"),
    info("L.avg", Bound, Param::None, "simple: average nonzero Laplacian eigenvalue bounds"),
    info("L.majorize", Bound, Param::None, "simple: Laplacian partial sums dominate sorted degrees"),
    info("L.split", Bound, Param::None, "simple: largest Laplacian eigenvalue via the undirected part"),
    info("L.arcavg", Bound, Param::None, "2a/n lies between the second smallest and largest Laplacian eigenvalues"),
    info("L.fact", Bound, Param::Factorization, "simple: Laplacian eigenvalues under factorization"),
    info("L.nonadj", Bound, Param::VertexPair, "simple: algebraic connectivity at most half a degree sum of a non-adjacent pair"),
    info("L.del", Bound, Param::Subset, "simple: algebraic connectivity under vertex deletion"),
    info("L.deg1", Bound, Param::None, "simple: largest Laplacian eigenvalue at least max degree plus one"),
    info("L.2n", Bound, Param::None, "loopless plain: largest Laplacian eigenvalue at most 2n"),
    info("L.adjsum", Bound, Param::None, "simple: largest Laplacian eigenvalue at most max adjacent degree sum"),
    info("L.sqrt", Bound, Param::None, "simple: square-root lower bound on the largest Laplacian eigenvalue"),
    info("L.avgnbr", Bound, Param::None, "simple: neighbour-average upper bound on the largest Laplacian eigenvalue"),
    info("L.interlace_arc", Bound, Param::Arc, "simple: Laplacian interlacing under arc deletion"),
    info("Q.avg", Bound, Param::None, "(2e+4l+a)/n lies between the extreme signless eigenvalues"),
    info("Q.deg", Bound, Param::None, "simple: half the largest signless eigenvalue lies between min and max degree"),
    info("Q.majorize", Bound, Param::None, "signless partial sums dominate the sorted diagonal"),
    info("Q.split", Bound, Param::None, "simple: extreme signless eigenvalues via the undirected part"),
    info("Q.interlace", Bound, Param::None, "signless eigenvalues interlace the block quotient"),
    info("Q.fact", Bound, Param::Factorization, "simple: signless eigenvalues under factorization"),
    info("Q.del", Bound, Param::Arc, "simple: signless interlacing under arc deletion"),
    info("Q.range", Bound, Param::None, "uniconnected loopless plain: range of the largest signless eigenvalue"),
    info("N.avg", Bound, Param::None, "loopless plain: (2n-k)/(2n-1) between normalized eigenvalues"),
    info("N.43", Bound, Param::None, "loopless plain: sum, second smallest and largest normalized eigenvalue bounds"),
    info("N.contract", Bound, Param::VertexPair, "simple: normalized algebraic connectivity under vertex identification"),
    info("N.disc", Bound, Param::SetPair, "simple: discrepancy between edge counts and volumes"),
    info("N.dist", Bound, Param::SetPair, "uniconnected simple: arccosh distance bound"),
    info("N.kdist", Bound, Param::SetFamily, "uniconnected simple: distance bounds for several sets"),
    info("closed_form", ClosedForm, Param::None, "recognised families match their closed-form spectra"),
];

pub fn lookup(id: &str) -> Result<&'static BoundInfo> {
    REGISTRY
        .iter()
        .find(|b| b.id == id)
        .ok_or_else(|| Error::input(format!("unknown bound id {id:?}")))
}

/// Extra arguments for parameterized checks.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct BoundArgs {
    pub pair: Option<(usize, usize)>,
    pub subset: Option<Vec<usize>>,
    pub arc: Option<(usize, usize)>,
    /// First factor; the second is the rest of the graph.
    pub factor: Option<MixedGraph>,
    pub set_pair: Option<(Vec<usize>, Vec<usize>)>,
    pub sets: Option<Vec<Vec<usize>>>,
}

fn missing(id: &str, what: &str) -> Error {
    Error::input(format!("bound {id} needs {what}"))
}

fn evaluate(a: &Analysis, info: &BoundInfo, args: &BoundArgs, tol: &Tolerances) -> Result<BoundReport> {
    let id = info.id;
    match info.param {
        Param::None => evaluate_plain(a, id, tol),
        Param::VertexPair => {
            let (u, v) = args.pair.ok_or_else(|| missing(id, "a vertex pair"))?;
            check_vertices(a, &[u, v])?;
            match id {
                "L.nonadj" => Ok(laplacian_bounds::nonadjacent(a, u, v, tol)),
                _ => normalized_bounds::contract(a, u, v, tol),
            }
        }
        Param::Subset => {
            let set = args.subset.as_ref().ok_or_else(|| missing(id, "a vertex subset"))?;
            check_vertices(a, set)?;
            laplacian_bounds::deletion(a, set, tol)
        }
        Param::Arc => {
            let (u, v) = args.arc.ok_or_else(|| missing(id, "an arc"))?;
            check_vertices(a, &[u, v])?;
            if a.graph.arc_multiplicity(u, v) == 0 {
                return Err(Error::input(format!("({u}, {v}) is not an arc of the graph")));
            }
            match id {
                "L.interlace_arc" => laplacian_bounds::arc_interlacing(a, u, v, tol),
                _ => signless_bounds::arc_deletion(a, u, v, tol),
            }
        }
        Param::Factorization => {
            let first = args.factor.as_ref().ok_or_else(|| missing(id, "a factorization"))?;
            let second = complement_in(&a.graph, first)?;
            match id {
                "L.fact" => laplacian_bounds::factorization(a, first, &second, tol),
                _ => signless_bounds::factorization(a, first, &second, tol),
            }
        }
        Param::SetPair => {
            let (x, y) = args.set_pair.as_ref().ok_or_else(|| missing(id, "two vertex sets"))?;
            check_vertices(a, x)?;
            check_vertices(a, y)?;
            match id {
                "N.disc" => normalized_bounds::discrepancy(a, x, y, tol),
                _ => normalized_bounds::distance_bound(a, x, y, tol),
            }
        }
        Param::SetFamily => {
            let sets = args.sets.as_ref().ok_or_else(|| missing(id, "a family of vertex sets"))?;
            for s in sets {
                check_vertices(a, s)?;
            }
            normalized_bounds::k_distance(a, sets, tol)
        }
    }
}

fn evaluate_plain(a: &Analysis, id: &'static str, tol: &Tolerances) -> Result<BoundReport> {
    Ok(match id {
        "trace_L" => identities::trace_l(a, tol),
        "trace_Q" => identities::trace_q(a, tol),
        "regular_shift_L" => identities::regular_shift_l(a, tol),
        "regular_shift_Q" => identities::regular_shift_q(a, tol),
        "regular_shift_N" => identities::regular_shift_n(a, tol),
        "charpoly_LQ_equal_under_AB" => identities::charpoly_lq(a, tol)?,
        "rank_L" => identities::rank_l(a, tol),
        "rs_regular_eigvec" => identities::rs_regular(a, tol),
        "normalized_sum" => identities::normalized_sum(a, tol),
        "ab_iff_xi2n_zero_simple" => characterizations::ab_iff_simple_zero(a, tol),
        "q_zero_mult_eq_AB_components" => characterizations::q_zero_multiplicity(a, tol),
        "n_zero_mult_eq_components" => characterizations::n_zero_multiplicity(a, tol),
        "nhat1_eq_2_iff_nontrivial_AB" => characterizations::nhat_top_two(a, tol),
        "xi1_zero_iff_edgeless" => characterizations::xi_top_zero(a, tol),
        "xi1_lt4_iff_AP" => characterizations::xi_top_below_four(a, tol),
        "xi1_eq4_iff_alt_cycle" => characterizations::xi_top_four(a, tol),
        "regular_iff_2r_eigvec_ones" => characterizations::regular_ones(a, tol),
        "L.avg" => laplacian_bounds::average(a, tol),
        "L.majorize" => laplacian_bounds::majorize(a, tol),
        "L.split" => laplacian_bounds::split(a, tol)?,
        "L.arcavg" => laplacian_bounds::arc_average(a, tol),
        "L.deg1" => laplacian_bounds::max_degree(a, tol),
        "L.2n" => laplacian_bounds::order_bound(a, tol),
        "L.adjsum" => laplacian_bounds::adjacent_sum(a, tol),
        "L.sqrt" => laplacian_bounds::sqrt_bound(a, tol),
        "L.avgnbr" => laplacian_bounds::neighbour_average(a, tol),
        "Q.avg" => signless_bounds::average(a, tol),
        "Q.deg" => signless_bounds::degree(a, tol),
        "Q.majorize" => signless_bounds::majorize(a, tol),
        "Q.split" => signless_bounds::split(a, tol)?,
        "Q.interlace" => signless_bounds::interlace(a, tol),
        "Q.range" => signless_bounds::range(a, tol),
        "N.avg" => normalized_bounds::average(a, tol),
        "N.43" => normalized_bounds::basic(a, tol),
        "closed_form" => closed_form::check(a, tol)?,
        other => return Err(Error::Internal(format!("no evaluator for {other}"))),
    })
}

fn check_vertices(a: &Analysis, vs: &[usize]) -> Result<()> {
    match vs.iter().find(|&&v| v >= a.n()) {
        Some(v) => Err(Error::input(format!("vertex {v} out of range for {} vertices", a.n()))),
        None => Ok(()),
    }
}

/// `g` with the edges and arcs of `first` removed; `first` must be contained in `g`.
fn complement_in(g: &MixedGraph, first: &MixedGraph) -> Result<MixedGraph> {
    if first.order() != g.order() {
        return Err(Error::input("factor must have the same vertex set"));
    }
    let mut rest = MixedGraph::new(g.order());
    for ((u, v), m) in g.edges() {
        let taken = first.edge_multiplicity(u, v);
        if taken > m {
            return Err(Error::input(format!("factor edge ({u}, {v}) is not in the graph")));
        }
        if m > taken {
            rest.add_edge(u, v, m - taken)?;
        }
    }
    for ((u, v), m) in g.arcs() {
        let taken = first.arc_multiplicity(u, v);
        if taken > m {
            return Err(Error::input(format!("factor arc ({u}, {v}) is not in the graph")));
        }
        if m > taken {
            rest.add_arc(u, v, m - taken)?;
        }
    }
    for ((u, v), _) in first.edges() {
        if g.edge_multiplicity(u, v) == 0 {
            return Err(Error::input(format!("factor edge ({u}, {v}) is not in the graph")));
        }
    }
    for ((u, v), _) in first.arcs() {
        if g.arc_multiplicity(u, v) == 0 {
            return Err(Error::input(format!("factor arc ({u}, {v}) is not in the graph")));
        }
    }
    Ok(rest)
}

/// Evaluates one registry entry with explicit arguments.
pub fn check_bound(id: &str, g: &MixedGraph, args: &BoundArgs, opts: &RunOptions) -> Result<BoundReport> {
    let info = lookup(id)?;
    let a = Analysis::new(g, &opts.tol)?;
    evaluate(&a, info, args, &opts.tol)
}

/// Evaluates one registry entry, sampling arguments for parameterized ones.
pub fn check_sampled(a: &Analysis, info: &BoundInfo, opts: &RunOptions) -> Result<BoundReport> {
    if info.param == Param::None {
        return evaluate(a, info, &BoundArgs::default(), &opts.tol);
    }
    let index = REGISTRY.iter().position(|b| b.id == info.id).unwrap_or(0) as u64;
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed ^ index.wrapping_mul(0x9E37_79B9_7F4A_7C15));
    let candidates = sample_arguments(a, info, opts.instantiations, &mut rng);
    if candidates.is_empty() {
        return Ok(BoundReport::inapplicable(info.id, "no admissible argument to instantiate"));
    }
    let reports = candidates
        .iter()
        .map(|args| evaluate(a, info, args, &opts.tol))
        .collect::<Result<Vec<_>>>()?;
    Ok(aggregate(info.id, reports))
}

/// Keeps the worst applicable instantiation and counts the rest.
fn aggregate(id: &str, reports: Vec<BoundReport>) -> BoundReport {
    let total = reports.iter().filter(|r| r.applicable).count();
    let holds = reports.iter().all(|r| r.holds);
    let worst = reports
        .into_iter()
        .filter(|r| r.applicable)
        .min_by(|x, y| {
            let sx = x.slack.unwrap_or(f64::INFINITY);
            let sy = y.slack.unwrap_or(f64::INFINITY);
            sx.total_cmp(&sy)
        });
    match worst {
        Some(mut w) => {
            w.instantiations = total;
            w.holds = holds;
            w
        }
        None => BoundReport::inapplicable(id, "no sampled instantiation satisfied the hypotheses"),
    }
}

/// Evaluates every registry entry on `g`.
pub fn run_all(g: &MixedGraph, opts: &RunOptions) -> Result<Vec<BoundReport>> {
    let a = Analysis::new(g, &opts.tol)?;
    run_all_on(&a, opts)
}

pub fn run_all_on(a: &Analysis, opts: &RunOptions) -> Result<Vec<BoundReport>> {
    REGISTRY
        .par_iter()
        .map(|info| check_sampled(a, info, opts))
        .collect()
}

fn random_subset(n: usize, rng: &mut ChaCha8Rng) -> Vec<usize> {
    (0..n).filter(|_| rng.random_bool(0.5)).collect()
}

fn nonempty_subset(n: usize, rng: &mut ChaCha8Rng) -> Vec<usize> {
    loop {
        let s = random_subset(n, rng);
        if !s.is_empty() {
            return s;
        }
    }
}

/// Up to `count` argument sets satisfying the entry's hypotheses.
fn sample_arguments(a: &Analysis, info: &BoundInfo, count: usize, rng: &mut ChaCha8Rng) -> Vec<BoundArgs> {
    let n = a.n();
    let g = &a.graph;
    let pick = |mut all: Vec<BoundArgs>, rng: &mut ChaCha8Rng| {
        all.shuffle(rng);
        all.truncate(count);
        all
    };
    match info.param {
        Param::None => Vec::new(),
        Param::VertexPair => {
            let pairs: Vec<BoundArgs> = (0..n)
                .flat_map(|u| (0..n).map(move |v| (u, v)))
                .filter(|&(u, v)| match info.id {
                    "L.nonadj" => (u != v && g.edge_multiplicity(u, v) == 0) || g.arc_multiplicity(u, v) == 0,
                    _ => u < v && g.edge_multiplicity(u, v) == 0,
                })
                .map(|pair| BoundArgs {
                    pair: Some(pair),
                    ..BoundArgs::default()
                })
                .collect();
            pick(pairs, rng)
        }
        Param::Arc => {
            let arcs = g
                .arcs()
                .map(|(arc, _)| BoundArgs {
                    arc: Some(arc),
                    ..BoundArgs::default()
                })
                .collect();
            pick(arcs, rng)
        }
        Param::Subset => {
            if n < 2 {
                return Vec::new();
            }
            (0..count)
                .map(|_| loop {
                    let s = nonempty_subset(n, rng);
                    if s.len() < n {
                        break BoundArgs {
                            subset: Some(s),
                            ..BoundArgs::default()
                        };
                    }
                })
                .collect()
        }
        Param::Factorization => (0..count)
            .map(|_| {
                let mut first = MixedGraph::new(n);
                for ((u, v), m) in g.edges() {
                    if rng.random_bool(0.5) {
                        first.add_edge(u, v, m).expect("edge of the same graph");
                    }
                }
                for ((u, v), m) in g.arcs() {
                    if rng.random_bool(0.5) {
                        first.add_arc(u, v, m).expect("arc of the same graph");
                    }
                }
                BoundArgs {
                    factor: Some(first),
                    ..BoundArgs::default()
                }
            })
            .collect(),
        Param::SetPair => {
            if info.id == "N.disc" {
                return (0..count)
                    .map(|_| BoundArgs {
                        set_pair: Some((nonempty_subset(n, rng), nonempty_subset(n, rng))),
                        ..BoundArgs::default()
                    })
                    .collect();
            }
            if n < 2 {
                return Vec::new();
            }
            (0..count)
                .map(|_| {
                    let sets = disjoint_sets(n, 2, rng);
                    BoundArgs {
                        set_pair: Some((sets[0].clone(), sets[1].clone())),
                        ..BoundArgs::default()
                    }
                })
                .collect()
        }
        Param::SetFamily => {
            if n < 2 {
                return Vec::new();
            }
            (0..count)
                .map(|_| {
                    let k = rng.random_range(2..=n.min(4));
                    BoundArgs {
                        sets: Some(disjoint_sets(n, k, rng)),
                        ..BoundArgs::default()
                    }
                })
                .collect()
        }
    }
}

/// `k` pairwise disjoint non-empty sets; vertices may also be left out.
fn disjoint_sets(n: usize, k: usize, rng: &mut ChaCha8Rng) -> Vec<Vec<usize>> {
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(rng);
    let mut sets: Vec<Vec<usize>> = order[..k].iter().map(|&v| vec![v]).collect();
    for &v in &order[k..] {
        let slot = rng.random_range(0..=k);
        if slot < k {
            sets[slot].push(v);
        }
    }
    for s in &mut sets {
        s.sort_unstable();
    }
    sets
}
