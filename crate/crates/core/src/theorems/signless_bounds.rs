//! Bounds on the integrated signless Laplacian spectrum `ξ₁ ≥ … ≥ ξ₂ₙ`.

use std::f64::consts::PI;

use super::laplacian_bounds::{factorization_witness, interlacing_parts, majorize_parts};
use super::{spectrum_of, Analysis, BoundReport, Builder, Tolerances, Witness};
use crate::error::Result;
use crate::graph::MixedGraph;
use crate::matrix::MatrixKind;

fn needs_simple(a: &Analysis, id: &str) -> Option<BoundReport> {
    (!a.predicates.simple).then(|| BoundReport::inapplicable(id, "graph is not simple"))
}

pub(super) fn average(a: &Analysis, tol: &Tolerances) -> BoundReport {
    let c = a.counts;
    let mean = (2 * c.e + 4 * c.l + c.a) as f64 / a.n() as f64;
    let mut b = Builder::new("Q.avg", *tol);
    b.le("smallest at most mean", a.xi.smallest(), mean);
    b.le("mean at most largest", mean, a.xi.largest());
    b.finish()
}

pub(super) fn degree(a: &Analysis, tol: &Tolerances) -> BoundReport {
    const ID: &str = "Q.deg";
    if let Some(r) = needs_simple(a, ID) {
        return r;
    }
    let d = a.assoc_degrees();
    let low = d.iter().copied().fold(f64::INFINITY, f64::min);
    let high = d.iter().copied().fold(0.0, f64::max);
    let half = a.xi.largest() / 2.0;
    let mut b = Builder::new(ID, *tol);
    b.le("min degree at most half the largest", low, half);
    b.le("half the largest at most max degree", half, high);
    let low_eq = (half - low).abs() <= tol.equality;
    let high_eq = (half - high).abs() <= tol.equality;
    if a.predicates.uniconnected {
        let regular = a.regularity.r.is_some();
        b.iff("lower equality iff regular", regular, low_eq);
        b.iff("upper equality iff regular", regular, high_eq);
    }
    b.equality(low_eq || high_eq);
    b.finish()
}

pub(super) fn majorize(a: &Analysis, tol: &Tolerances) -> BoundReport {
    let n = a.n();
    let diagonal: Vec<f64> = (0..2 * n).map(|i| a.signless.get(i, i)).collect();
    let mut b = Builder::new("Q.majorize", *tol);
    majorize_parts(&mut b, &a.xi.values, diagonal);
    b.finish()
}

pub(super) fn split(a: &Analysis, tol: &Tolerances) -> Result<BoundReport> {
    const ID: &str = "Q.split";
    if let Some(r) = needs_simple(a, ID) {
        return Ok(r);
    }
    let undirected = spectrum_of(MatrixKind::IQ, &a.graph.undirected_part(), tol)?.largest();
    let out = a.profiles.iter().map(|p| p.d_plus).max().unwrap_or(0) as f64;
    let inn = a.profiles.iter().map(|p| p.d_minus).max().unwrap_or(0) as f64;
    let mut b = Builder::new(ID, *tol);
    b.le("extreme sum", a.xi.largest() + a.xi.smallest(), 2.0 * undirected + out + inn);
    Ok(b.finish())
}

pub(super) fn interlace(a: &Analysis, tol: &Tolerances) -> BoundReport {
    let c = a.counts;
    let n = a.n() as f64;
    let low = 4.0 * (c.e + c.l) as f64 / n;
    let high = 2.0 * (2 * c.e + 2 * c.l + c.a) as f64 / n;
    let xi = &a.xi.values;
    let len = xi.len();
    let mut b = Builder::new("Q.interlace", *tol);
    b.le("smallest at most 4(e+l)/n", xi[len - 1], low);
    b.le("4(e+l)/n at most second largest", low, xi[1]);
    b.le("second smallest at most 2(2e+2l+a)/n", xi[len - 2], high);
    b.le("2(2e+2l+a)/n at most largest", high, xi[0]);
    b.finish()
}

pub(super) fn factorization(a: &Analysis, first: &MixedGraph, second: &MixedGraph, tol: &Tolerances) -> Result<BoundReport> {
    const ID: &str = "Q.fact";
    if let Some(r) = needs_simple(a, ID) {
        return Ok(r);
    }
    let s1 = spectrum_of(MatrixKind::IQ, first, tol)?;
    let s2 = spectrum_of(MatrixKind::IQ, second, tol)?;
    let mut b = Builder::new(ID, *tol);
    b.le("largest at least each factor", s1.largest().max(s2.largest()), a.xi.largest());
    b.le("largest is subadditive", a.xi.largest(), s1.largest() + s2.largest());
    b.le("smallest is superadditive", s1.smallest() + s2.smallest(), a.xi.smallest());
    b.witness(factorization_witness(first));
    Ok(b.finish())
}

pub(super) fn arc_deletion(a: &Analysis, u: usize, v: usize, tol: &Tolerances) -> Result<BoundReport> {
    const ID: &str = "Q.del";
    if let Some(r) = needs_simple(a, ID) {
        return Ok(r);
    }
    let h = spectrum_of(MatrixKind::IQ, &a.graph.delete_arc(u, v)?, tol)?;
    let mut b = Builder::new(ID, *tol);
    b.le("deleted graph is positive semidefinite", -tol.zero, h.smallest());
    interlacing_parts(&mut b, &a.xi.values, &h.values);
    b.witness(Witness::Arc { u, v });
    Ok(b.finish())
}

pub(super) fn range(a: &Analysis, tol: &Tolerances) -> BoundReport {
    const ID: &str = "Q.range";
    let p = &a.predicates;
    if !(p.uniconnected && p.loopless && p.plain) {
        return BoundReport::inapplicable(ID, "graph is not uniconnected loopless plain");
    }
    let n = a.n() as f64;
    let low = 2.0 + 2.0 * (PI / (2.0 * n)).cos();
    let high = 4.0 * n - 2.0;
    let top = a.xi.largest();
    let low_eq = (top - low).abs() <= tol.equality;
    let high_eq = (top - high).abs() <= tol.equality;
    let mut b = Builder::new(ID, *tol);
    b.le("lower bound", low, top);
    b.le("upper bound", top, high);
    if p.ap_all_components {
        b.truth("AP attains the lower bound", low_eq);
    }
    if p.directed_loop_complete {
        b.truth("directed loop complete attains the upper bound", high_eq);
    }
    b.equality(low_eq || high_eq);
    if low_eq || high_eq {
        b.witness(Witness::Equality {
            description: if low_eq {
                "associated graph is a path".to_string()
            } else {
                "associated graph is complete".to_string()
            },
        });
    }
    b.finish()
}
