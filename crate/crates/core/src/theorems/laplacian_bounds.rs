//! Bounds on the integrated Laplacian spectrum `ν₁ ≥ … ≥ ν₂ₙ`.

use super::{spectrum_of, Analysis, BoundReport, Builder, Tolerances, Witness};
use crate::error::Result;
use crate::graph::MixedGraph;
use crate::matrix::MatrixKind;

fn needs_simple(a: &Analysis, id: &str) -> Option<BoundReport> {
    (!a.predicates.simple).then(|| BoundReport::inapplicable(id, "graph is not simple"))
}

/// Second smallest eigenvalue `ν₂ₙ₋₁`.
fn second_smallest(values: &[f64]) -> f64 {
    values[values.len() - 2]
}

pub(super) fn average(a: &Analysis, tol: &Tolerances) -> BoundReport {
    const ID: &str = "L.avg";
    if let Some(r) = needs_simple(a, ID) {
        return r;
    }
    let c = a.counts;
    let mean = (4 * c.e + 2 * c.a) as f64 / (2 * a.n() - 1) as f64;
    let mut b = Builder::new(ID, *tol);
    b.le("second smallest at most mean", second_smallest(&a.nu.values), mean);
    b.le("mean at most largest", mean, a.nu.largest());
    b.finish()
}

/// Partial sums of the eigenvalues dominate partial sums of `diagonal`.
pub(super) fn majorize_parts(b: &mut Builder, eigen: &[f64], mut diagonal: Vec<f64>) {
    diagonal.sort_by(|x, y| y.total_cmp(x));
    let prefix = |v: &[f64]| {
        v.iter()
            .scan(0.0, |s, x| {
                *s += x;
                Some(*s)
            })
            .collect::<Vec<f64>>()
    };
    let (lhs, rhs) = (prefix(&diagonal), prefix(eigen));
    let total = (lhs[lhs.len() - 1], rhs[rhs.len() - 1]);
    b.le_list("partial sums", lhs, rhs);
    b.eq("full sums agree", total.0, total.1);
}

pub(super) fn majorize(a: &Analysis, tol: &Tolerances) -> BoundReport {
    const ID: &str = "L.majorize";
    if let Some(r) = needs_simple(a, ID) {
        return r;
    }
    let mut b = Builder::new(ID, *tol);
    majorize_parts(&mut b, &a.nu.values, a.assoc_degrees());
    b.finish()
}

fn max_out_in(a: &Analysis) -> (f64, f64) {
    let out = a.profiles.iter().map(|p| p.d_plus).max().unwrap_or(0);
    let inn = a.profiles.iter().map(|p| p.d_minus).max().unwrap_or(0);
    (out as f64, inn as f64)
}

pub(super) fn split(a: &Analysis, tol: &Tolerances) -> Result<BoundReport> {
    const ID: &str = "L.split";
    if let Some(r) = needs_simple(a, ID) {
        return Ok(r);
    }
    // The integrated Laplacian of an undirected graph doubles every
    // eigenvalue's multiplicity, so its largest eigenvalue is the ordinary one.
    let undirected = spectrum_of(MatrixKind::IL, &a.graph.undirected_part(), tol)?.largest();
    let (out, inn) = max_out_in(a);
    let mut b = Builder::new(ID, *tol);
    b.le("largest", a.nu.largest(), 2.0 * undirected + out + inn);
    Ok(b.finish())
}

pub(super) fn arc_average(a: &Analysis, tol: &Tolerances) -> BoundReport {
    const ID: &str = "L.arcavg";
    if a.n() == 0 {
        return BoundReport::inapplicable(ID, "empty vertex set");
    }
    let mean = 2.0 * a.counts.a as f64 / a.n() as f64;
    let mut b = Builder::new(ID, *tol);
    b.le("second smallest at most 2a/n", second_smallest(&a.nu.values), mean);
    b.le("2a/n at most largest", mean, a.nu.largest());
    b.finish()
}

pub(super) fn factorization_witness(first: &MixedGraph) -> Witness {
    Witness::Factorization {
        edges: first.edges().map(|(e, _)| e).collect(),
        arcs: first.arcs().map(|(e, _)| e).collect(),
    }
}

pub(super) fn factorization(a: &Analysis, first: &MixedGraph, second: &MixedGraph, tol: &Tolerances) -> Result<BoundReport> {
    const ID: &str = "L.fact";
    if let Some(r) = needs_simple(a, ID) {
        return Ok(r);
    }
    let s1 = spectrum_of(MatrixKind::IL, first, tol)?;
    let s2 = spectrum_of(MatrixKind::IL, second, tol)?;
    let mut b = Builder::new(ID, *tol);
    b.le(
        "second smallest is superadditive",
        second_smallest(&s1.values) + second_smallest(&s2.values),
        second_smallest(&a.nu.values),
    );
    b.le("largest at least each factor", s1.largest().max(s2.largest()), a.nu.largest());
    b.le("largest is subadditive", a.nu.largest(), s1.largest() + s2.largest());
    b.witness(factorization_witness(first));
    Ok(b.finish())
}

pub(super) fn nonadjacent(a: &Analysis, u: usize, v: usize, tol: &Tolerances) -> BoundReport {
    const ID: &str = "L.nonadj";
    if let Some(r) = needs_simple(a, ID) {
        return r;
    }
    let g = &a.graph;
    let (pu, pv) = (a.profiles[u], a.profiles[v]);
    let nu = second_smallest(&a.nu.values);
    let mut b = Builder::new(ID, *tol);
    if u != v && g.edge_multiplicity(u, v) == 0 {
        let half = |x: u64| x as f64 / 2.0;
        b.le("out-degree half sum", nu, half(pu.d + pv.d + pu.d_plus + pv.d_plus));
        b.le("in-degree half sum", nu, half(pu.d + pv.d + pu.d_minus + pv.d_minus));
    }
    if g.arc_multiplicity(u, v) == 0 {
        let bound = (pu.d + pv.d + pu.d_plus + pv.d_minus) as f64 / 2.0;
        b.le("missing arc half sum", nu, bound);
    }
    b.witness(Witness::Pair { u, v });
    b.finish()
}

pub(super) fn deletion(a: &Analysis, set: &[usize], tol: &Tolerances) -> Result<BoundReport> {
    const ID: &str = "L.del";
    if let Some(r) = needs_simple(a, ID) {
        return Ok(r);
    }
    let mut removed = set.to_vec();
    removed.sort_unstable();
    removed.dedup();
    if removed.is_empty() || removed.len() >= a.n() {
        return Ok(BoundReport::inapplicable(ID, "subset must be non-empty and proper"));
    }
    let rest = a.graph.delete_vertices(&removed)?;
    let sub = spectrum_of(MatrixKind::IL, &rest, tol)?;
    let mut b = Builder::new(ID, *tol);
    b.le(
        "second smallest after deletion",
        second_smallest(&a.nu.values),
        second_smallest(&sub.values) + 2.0 * removed.len() as f64,
    );
    b.witness(Witness::Subset { vertices: removed });
    Ok(b.finish())
}

fn max_assoc_degree(a: &Analysis) -> f64 {
    a.assoc_degrees().into_iter().fold(0.0, f64::max)
}

pub(super) fn max_degree(a: &Analysis, tol: &Tolerances) -> BoundReport {
    const ID: &str = "L.deg1";
    if let Some(r) = needs_simple(a, ID) {
        return r;
    }
    if !a.has_edge_or_arc() {
        return BoundReport::inapplicable(ID, "graph has no edge or arc");
    }
    let mut b = Builder::new(ID, *tol);
    b.le("largest exceeds max degree", max_assoc_degree(a) + 1.0, a.nu.largest());
    b.finish()
}

/// Whether the complement of the associated graph is disconnected.
fn complement_disconnected(a: &Analysis) -> bool {
    let order = a.assoc.order();
    if order < 2 {
        return false;
    }
    let mut seen = vec![false; order];
    let mut stack = vec![0];
    seen[0] = true;
    while let Some(x) = stack.pop() {
        for y in 0..order {
            if !seen[y] && y != x && a.assoc.multiplicity(x, y) == 0 {
                seen[y] = true;
                stack.push(y);
            }
        }
    }
    seen.iter().any(|s| !s)
}

pub(super) fn order_bound(a: &Analysis, tol: &Tolerances) -> BoundReport {
    const ID: &str = "L.2n";
    if !(a.predicates.loopless && a.predicates.plain) {
        return BoundReport::inapplicable(ID, "graph is not loopless plain");
    }
    let bound = 2.0 * a.n() as f64;
    let attained = (a.nu.largest() - bound).abs() <= tol.equality;
    let mut b = Builder::new(ID, *tol);
    b.le("largest at most 2n", a.nu.largest(), bound);
    b.iff("equality iff complement disconnected", complement_disconnected(a), attained);
    b.equality(attained);
    b.finish()
}

pub(super) fn adjacent_sum(a: &Analysis, tol: &Tolerances) -> BoundReport {
    const ID: &str = "L.adjsum";
    if let Some(r) = needs_simple(a, ID) {
        return r;
    }
    let p = &a.profiles;
    let from_edges = a.graph.edges().flat_map(|((u, v), _)| {
        let base = p[u].d + p[v].d;
        [base + p[u].d_plus + p[v].d_plus, base + p[u].d_minus + p[v].d_minus]
    });
    let from_arcs = a
        .graph
        .arcs()
        .map(|((u, v), _)| p[u].d + p[v].d + p[u].d_plus + p[v].d_minus);
    let Some(bound) = from_edges.chain(from_arcs).max() else {
        return BoundReport::inapplicable(ID, "graph has no edge or arc");
    };
    let mut b = Builder::new(ID, *tol);
    b.le("largest at most max adjacent sum", a.nu.largest(), bound as f64);
    b.finish()
}

pub(super) fn sqrt_bound(a: &Analysis, tol: &Tolerances) -> BoundReport {
    const ID: &str = "L.sqrt";
    if let Some(r) = needs_simple(a, ID) {
        return r;
    }
    let d = a.assoc_degrees();
    let order = d.len();
    let mut best = f64::NEG_INFINITY;
    for x in 0..order {
        for y in (0..order).filter(|&y| y != x) {
            let term = (d[x] - d[y]).powi(2) + 4.0 * a.adjacency.get(x, y);
            best = best.max(term.sqrt());
        }
    }
    if !best.is_finite() {
        return BoundReport::inapplicable(ID, "needs two associated vertices");
    }
    let mut b = Builder::new(ID, *tol);
    b.le("largest at least the pair bound", best, a.nu.largest());
    b.finish()
}

pub(super) fn neighbour_average(a: &Analysis, tol: &Tolerances) -> BoundReport {
    const ID: &str = "L.avgnbr";
    if let Some(r) = needs_simple(a, ID) {
        return r;
    }
    let d = a.assoc_degrees();
    // Average degree of the neighbours of each associated vertex.
    let m: Vec<f64> = (0..d.len())
        .map(|x| {
            let nbrs = a.assoc.neighbours(x);
            if nbrs.is_empty() {
                0.0
            } else {
                nbrs.iter().map(|&(y, _)| d[y]).sum::<f64>() / nbrs.len() as f64
            }
        })
        .collect();
    let bound = a
        .assoc
        .edges()
        .filter(|&((x, y), _)| x != y)
        .map(|((x, y), _)| (d[x] * (d[x] + m[x]) + d[y] * (d[y] + m[y])) / (d[x] + d[y]))
        .fold(f64::NEG_INFINITY, f64::max);
    if !bound.is_finite() {
        return BoundReport::inapplicable(ID, "graph has no edge or arc");
    }
    let mut b = Builder::new(ID, *tol);
    b.le("largest at most neighbour-average bound", a.nu.largest(), bound);
    b.finish()
}

/// `ν_{i+1}(G) ≤ ν_i(H) ≤ ν_i(G)` for every `i`, as two elementwise lists.
pub(super) fn interlacing_parts(b: &mut Builder, g: &[f64], h: &[f64]) {
    let len = g.len();
    b.le_list("deleted below original", h.to_vec(), g.to_vec());
    b.le_list("original shifted below deleted", g[1..].to_vec(), h[..len - 1].to_vec());
}

pub(super) fn arc_interlacing(a: &Analysis, u: usize, v: usize, tol: &Tolerances) -> Result<BoundReport> {
    const ID: &str = "L.interlace_arc";
    if let Some(r) = needs_simple(a, ID) {
        return Ok(r);
    }
    let h = spectrum_of(MatrixKind::IL, &a.graph.delete_arc(u, v)?, tol)?;
    let mut b = Builder::new(ID, *tol);
    b.eq_within("smallest of the deleted graph is 0", h.smallest(), 0.0, tol.zero);
    b.eq_within("smallest of the original is 0", a.nu.smallest(), 0.0, tol.zero);
    interlacing_parts(&mut b, &a.nu.values, &h.values);
    b.witness(Witness::Arc { u, v });
    Ok(b.finish())
}
