//! Bounds on the normalized integrated Laplacian spectrum `ν̂₁ ≥ … ≥ ν̂₂ₙ`,
//! including discrepancy and distance bounds for vertex sets.

use super::{spectrum_of, Analysis, BoundReport, Builder, Tolerances, Witness};
use crate::associated::{set_distance_in, Distance};
use crate::error::{Error, Result};
use crate::matrix::{doubled_bilinear, mixed_volume, volume_functionals, MatrixKind};

fn loopless_plain(a: &Analysis, id: &str) -> Option<BoundReport> {
    let p = &a.predicates;
    (!(p.loopless && p.plain)).then(|| BoundReport::inapplicable(id, "graph is not loopless plain"))
}

pub(super) fn average(a: &Analysis, tol: &Tolerances) -> BoundReport {
    const ID: &str = "N.avg";
    if let Some(r) = loopless_plain(a, ID) {
        return r;
    }
    let two_n = 2 * a.n();
    let mean = (two_n - a.predicates.n_trivial_components) as f64 / (two_n - 1) as f64;
    let mut b = Builder::new(ID, *tol);
    b.le("second smallest at most mean", a.nu_hat.nth(two_n - 1), mean);
    b.le("mean at most largest", mean, a.nu_hat.largest());
    b.finish()
}

pub(super) fn basic(a: &Analysis, tol: &Tolerances) -> BoundReport {
    const ID: &str = "N.43";
    if let Some(r) = loopless_plain(a, ID) {
        return r;
    }
    let p = &a.predicates;
    let two_n = 2 * a.n();
    let threshold = two_n as f64 / (two_n - 1) as f64;
    let sum = a.nu_hat.sum();
    let second = a.nu_hat.nth(two_n - 1);
    let top = a.nu_hat.largest();
    let no_trivial = p.n_trivial_components == 0;
    let close = |x: f64, y: f64| (x - y).abs() <= tol.equality;
    let mut b = Builder::new(ID, *tol);
    b.le("(i) sum at most 2n", sum, two_n as f64);
    b.iff("(i) equality iff no trivial component", no_trivial, close(sum, two_n as f64));
    if !p.directed_loop_complete {
        b.le("(iii) second smallest at most 1", second, 1.0);
    }
    if no_trivial {
        b.le("(iv) second smallest at most 2n/(2n-1)", second, threshold);
        b.iff("(iv) equality iff directed loop complete", p.directed_loop_complete, close(second, threshold));
        b.le("(v) largest at least 2n/(2n-1)", threshold, top);
        b.iff("(v) equality iff directed loop complete", p.directed_loop_complete, close(top, threshold));
    }
    let nontrivial_ab = p.n_ab_nontrivial_components;
    b.le("(vi) largest at most 2", top, 2.0);
    b.iff("(vi) equality iff a non-trivial AB component", nontrivial_ab > 0, close(top, 2.0));
    b.eq_exact(
        "(vi) multiplicity of 2",
        a.nu_hat.count_near(2.0, tol.equality) as i64,
        nontrivial_ab as i64,
    );
    b.equality(close(sum, two_n as f64));
    b.finish()
}

pub(super) fn contract(a: &Analysis, u: usize, v: usize, tol: &Tolerances) -> Result<BoundReport> {
    const ID: &str = "N.contract";
    if !a.predicates.simple {
        return Ok(BoundReport::inapplicable(ID, "graph is not simple"));
    }
    if u == v || a.graph.edge_multiplicity(u, v) > 0 {
        return Ok(BoundReport::inapplicable(ID, "vertices must be distinct and not joined by an edge"));
    }
    let h = spectrum_of(MatrixKind::IN, &a.graph.identify_vertices(u, v)?, tol)?;
    let two_n = 2 * a.n();
    let mut b = Builder::new(ID, *tol);
    b.le(
        "second smallest does not exceed the contraction's",
        a.nu_hat.nth(two_n - 1),
        h.nth(two_n - 3),
    );
    b.witness(Witness::Pair { u, v });
    Ok(b.finish())
}

/// `max_{i<2n} |1 − ν̂ᵢ|`.
pub fn spectral_gap_radius(nu_hat: &[f64]) -> f64 {
    nu_hat[..nu_hat.len() - 1]
        .iter()
        .map(|x| (1.0 - x).abs())
        .fold(0.0, f64::max)
}

fn complement(n: usize, set: &[usize]) -> Vec<usize> {
    (0..n).filter(|v| !set.contains(v)).collect()
}

/// Discrepancy with `1_Xᵀ 𝓘 1_Y` as the edge count between the doubled sets.
pub(super) fn discrepancy(a: &Analysis, x: &[usize], y: &[usize], tol: &Tolerances) -> Result<BoundReport> {
    const ID: &str = "N.disc";
    if !a.predicates.simple {
        return Ok(BoundReport::inapplicable(ID, "graph is not simple"));
    }
    if !a.has_edge_or_arc() {
        return Ok(BoundReport::inapplicable(ID, "graph has no edge or arc"));
    }
    let g = &a.graph;
    let n = a.n();
    let c = a.counts;
    let total = (4 * c.e + 2 * c.a) as f64;
    let gap = spectral_gap_radius(&a.nu_hat.values);
    let vl = |s: &[usize]| -> Result<f64> { Ok(mixed_volume(g, s)? as f64) };
    let (vx, vy) = (vl(x)?, vl(y)?);
    let (vxc, vyc) = (vl(&complement(n, x))?, vl(&complement(n, y))?);
    let between = doubled_bilinear(g, x, y)?;
    let dev = (between - vx * vy / total).abs();

    let mut b = Builder::new(ID, *tol);
    b.le("(i) deviation at most gap times root volumes", dev, gap * (vx * vy).sqrt());
    b.le(
        "(ii) deviation at most gap times complement volumes",
        dev,
        gap * (vx * vy * vxc * vyc).sqrt() / total,
    );

    let inside = doubled_bilinear(g, x, x)?;
    let dev_x = (inside - vx * vx / total).abs();
    let mid = gap * vx * vxc / total;
    b.le("single set deviation", dev_x, mid);
    b.le("single set relaxation", mid, gap * vx);

    if let Some(r) = a.regularity.r {
        let f = volume_functionals(g, x, x)?;
        let count = (2 * f.e_xy + f.a_xy) as f64;
        let size = x.len() as f64;
        let rf = r as f64;
        b.le(
            "regular single set",
            (count - rf * size * size / n as f64).abs(),
            2.0 * rf * gap * size,
        );
    }
    b.witness(Witness::SetPair {
        x: x.to_vec(),
        y: y.to_vec(),
    });
    Ok(b.finish())
}

fn uniconnected_simple(a: &Analysis, id: &str) -> Option<BoundReport> {
    let p = &a.predicates;
    if !p.simple {
        return Some(BoundReport::inapplicable(id, "graph is not simple"));
    }
    (!p.uniconnected).then(|| BoundReport::inapplicable(id, "graph is not uniconnected"))
}

/// `vl(Xᶜ)vl(Yᶜ) / (vl(X)vl(Y))` in exact integers, as (numerator, denominator).
fn volume_ratio(a: &Analysis, x: &[usize], y: &[usize]) -> Result<(u64, u64)> {
    let g = &a.graph;
    let n = a.n();
    let num = mixed_volume(g, &complement(n, x))? * mixed_volume(g, &complement(n, y))?;
    let den = mixed_volume(g, x)? * mixed_volume(g, y)?;
    Ok((num, den))
}

fn distance(a: &Analysis, x: &[usize], y: &[usize]) -> Result<usize> {
    match set_distance_in(&a.assoc, x, y)? {
        Distance::Finite(d) => Ok(d),
        Distance::Unreachable => Err(Error::Internal("unreachable sets in a uniconnected graph".into())),
    }
}

pub(super) fn distance_bound(a: &Analysis, x: &[usize], y: &[usize], tol: &Tolerances) -> Result<BoundReport> {
    const ID: &str = "N.dist";
    if let Some(r) = uniconnected_simple(a, ID) {
        return Ok(r);
    }
    if x.is_empty() || y.is_empty() {
        return Err(Error::input("distance bounds need non-empty vertex sets"));
    }
    let (num, den) = volume_ratio(a, x, y)?;
    if num <= den {
        return Ok(BoundReport::inapplicable(ID, "volume ratio argument is at most 1"));
    }
    let top = a.nu_hat.largest();
    let second = a.nu_hat.nth(2 * a.n() - 1);
    if top - second <= tol.equality {
        return Ok(BoundReport::inapplicable(ID, "largest and second smallest eigenvalues coincide"));
    }
    let q = (num as f64 / den as f64).sqrt().acosh() / ((top + second) / (top - second)).acosh();
    if !q.is_finite() {
        return Ok(BoundReport::inapplicable(ID, "bound is not finite"));
    }
    let d = distance(a, x, y)?;
    let mut b = Builder::new(ID, *tol);
    b.le("distance at most ceiling", d as f64, q.ceil());
    b.witness(Witness::SetPair {
        x: x.to_vec(),
        y: y.to_vec(),
    });
    Ok(b.finish())
}

/// `max_{i≠j} ⌈log √ratio(Xᵢ, Xⱼ) / log base⌉`, or `None` if `base ≤ 1`.
fn pairwise_ceiling(logs: &[f64], base: f64) -> Option<f64> {
    let denom = base.ln();
    if !(denom.is_finite() && denom > 0.0) {
        return None;
    }
    let best = logs.iter().map(|l| (l / denom).ceil()).fold(f64::NEG_INFINITY, f64::max);
    best.is_finite().then_some(best)
}

pub(super) fn k_distance(a: &Analysis, sets: &[Vec<usize>], tol: &Tolerances) -> Result<BoundReport> {
    const ID: &str = "N.kdist";
    if let Some(r) = uniconnected_simple(a, ID) {
        return Ok(r);
    }
    let k = sets.len();
    if k < 2 || sets.iter().any(Vec::is_empty) {
        return Err(Error::input("k-set distance bounds need at least two non-empty sets"));
    }
    let two_n = 2 * a.n();
    if k > two_n - 1 {
        return Ok(BoundReport::inapplicable(ID, "more sets than the spectrum supports"));
    }
    let mut logs = Vec::new();
    let mut closest = usize::MAX;
    for i in 0..k {
        for j in (0..k).filter(|&j| j != i) {
            let (num, den) = volume_ratio(a, &sets[i], &sets[j])?;
            if num <= den {
                return Ok(BoundReport::inapplicable(ID, "volume ratio argument is at most 1"));
            }
            logs.push((num as f64 / den as f64).sqrt().ln());
            closest = closest.min(distance(a, &sets[i], &sets[j])?);
        }
    }
    let nu = |i: usize| a.nu_hat.nth(i);
    let top = nu(1);
    let kth = nu(two_n - k + 1);
    let d = closest as f64;
    let mut b = Builder::new(ID, *tol);
    if 1.0 - kth >= top - 1.0 {
        if let Some(bound) = pairwise_ceiling(&logs, 1.0 / (1.0 - kth)) {
            b.le("(i) one-sided", d, bound);
        }
    }
    if (top - kth).abs() > tol.equality {
        if let Some(bound) = pairwise_ceiling(&logs, (top + kth) / (top - kth)) {
            b.le("(ii) two-sided", d, bound);
            if k == 2 {
                b.le("two-set form", d, bound);
            }
        }
    }
    // Pairs (ν̂ⱼ, ν̂_{2n−k+j}); j = 1 recovers the two-sided form.
    let shifted = (1..k)
        .filter_map(|j| {
            let (hi, lo) = (nu(j), nu(two_n - k + j));
            ((hi - lo).abs() > tol.equality)
                .then(|| pairwise_ceiling(&logs, (hi + lo) / (hi - lo)))
                .flatten()
        })
        .fold(f64::INFINITY, f64::min);
    if shifted.is_finite() {
        b.le("(iii) shifted pairs", d, shifted);
    }
    b.witness(Witness::SetFamily { sets: sets.to_vec() });
    Ok(b.finish())
}

#[cfg(test)]
mod tests {
    use super::super::{check_bound, BoundArgs, RunOptions};
    use super::*;
    use crate::graph::{Family, MixedGraph};

    fn run(id: &str, g: &MixedGraph, args: &BoundArgs) -> BoundReport {
        check_bound(id, g, args, &RunOptions::default()).unwrap()
    }

    #[test]
    fn basic_items_on_the_empty_pair() {
        let r = run("N.43", &MixedGraph::new(2), &BoundArgs::default());
        assert!(r.applicable && r.holds);
        assert_eq!(r.lhs, Some(0.0.into()));
    }

    /// Counting each arc once, as `2e(X,Y) + a(X,Y)`, misses half of the
    /// doubled-set edges when `X = Y = V`; the bilinear count is exact there.
    #[test]
    fn one_sided_arc_count_undercounts() {
        let g = Family::CompleteMixed { n: 4 }.build().unwrap();
        let a = Analysis::new(&g, &Tolerances::default()).unwrap();
        let all: Vec<usize> = (0..4).collect();
        let vol = mixed_volume(&g, &all).unwrap() as f64;
        let gap = spectral_gap_radius(&a.nu_hat.values);
        assert!((gap - 1.0 / 3.0).abs() < 1e-12);
        let f = volume_functionals(&g, &all, &all).unwrap();
        let one_sided = (2 * f.e_xy + f.a_xy) as f64;
        assert!((one_sided - vol).abs() > gap * vol);
        assert_eq!(doubled_bilinear(&g, &all, &all).unwrap(), vol);
    }

    #[test]
    fn gap_radius_skips_the_smallest() {
        assert_eq!(spectral_gap_radius(&[1.5, 1.0, 0.0]), 0.5);
        assert_eq!(spectral_gap_radius(&[2.0, 0.0]), 1.0);
    }

    #[test]
    fn discrepancy_counts_overlap_twice() {
        let g = Family::CompleteMixed { n: 3 }.build().unwrap();
        let args = BoundArgs {
            set_pair: Some((vec![0, 1], vec![1, 2])),
            ..BoundArgs::default()
        };
        let r = run("N.disc", &g, &args);
        assert!(r.applicable && r.holds);
    }

    #[test]
    fn distance_bounds_on_a_long_path() {
        let g = Family::Path { n: 7 }.build().unwrap();
        // The associated graph is two paths, so the graph is not uniconnected.
        let args = BoundArgs {
            set_pair: Some((vec![0], vec![6])),
            ..BoundArgs::default()
        };
        assert!(!run("N.dist", &g, &args).applicable);

        let mut h = g.clone();
        h.add_arc(0, 1, 1).unwrap();
        let r = run("N.dist", &h, &args);
        assert!(r.applicable && r.holds, "{r:?}");
        let family = BoundArgs {
            sets: Some(vec![vec![0], vec![3], vec![6]]),
            ..BoundArgs::default()
        };
        let k = run("N.kdist", &h, &family);
        assert!(k.applicable && k.holds, "{k:?}");
    }

    /// With `ν̂_{j+1}` against `ν̂_{2n−k+j−1}` this instance would claim a
    /// distance of at most 1, yet the two sets are at distance 2.
    #[test]
    fn shifted_pairs_use_matching_indices() {
        let mut g = MixedGraph::new(3);
        g.add_edge(0, 1, 1).unwrap();
        g.add_edge(1, 2, 1).unwrap();
        g.add_arc(1, 0, 1).unwrap();
        let a = Analysis::new(&g, &Tolerances::default()).unwrap();
        let sets = vec![vec![2], vec![0]];
        let r = k_distance(&a, &sets, &Tolerances::default()).unwrap();
        assert!(r.applicable && r.holds, "{r:?}");
        assert_eq!(r.lhs, Some(2.0.into()));

        let (num, den) = volume_ratio(&a, &sets[0], &sets[1]).unwrap();
        let log_ratio = (num as f64 / den as f64).sqrt().ln();
        let (hi, lo) = (a.nu_hat.nth(2), a.nu_hat.nth(4));
        let misindexed = (log_ratio / ((hi + lo) / (hi - lo)).ln()).ceil();
        assert_eq!(misindexed, 1.0);
    }

    #[test]
    fn partitions_are_guarded() {
        let g = Family::CompleteMixed { n: 3 }.build().unwrap();
        let args = BoundArgs {
            set_pair: Some((vec![0], vec![1, 2])),
            ..BoundArgs::default()
        };
        assert!(!run("N.dist", &g, &args).applicable);
    }

    #[test]
    fn contraction_on_a_square() {
        let g = Family::CompleteMultipartiteMixed { k: 2, m: 2 }.build().unwrap();
        let args = BoundArgs {
            pair: Some((0, 1)),
            ..BoundArgs::default()
        };
        let r = run("N.contract", &g, &args);
        assert!(r.applicable && r.holds);
    }
}
