//! Exact identities: traces, regular shifts, characteristic polynomials,
//! rank and eigenvector tests.

use super::{Analysis, BoundReport, Builder, Tolerances, Witness};
use crate::eigen::char_poly;
use crate::error::Result;

pub(super) fn trace_l(a: &Analysis, tol: &Tolerances) -> BoundReport {
    let c = a.counts;
    let expected = (4 * c.e + 2 * c.a) as i64;
    let mut b = Builder::new("trace_L", *tol);
    let exact = a.laplacian.integer_trace().expect("integer matrix");
    b.eq_exact("exact trace", exact, expected);
    b.eq("eigenvalue sum", a.nu.sum(), expected as f64);
    b.finish()
}

pub(super) fn trace_q(a: &Analysis, tol: &Tolerances) -> BoundReport {
    let c = a.counts;
    let expected = (4 * c.e + 8 * c.l + 2 * c.a) as i64;
    let mut b = Builder::new("trace_Q", *tol);
    let exact = a.signless.integer_trace().expect("integer matrix");
    b.eq_exact("exact trace", exact, expected);
    b.eq("eigenvalue sum", a.xi.sum(), expected as f64);
    b.finish()
}

pub(super) fn regular_shift_l(a: &Analysis, tol: &Tolerances) -> BoundReport {
    let Some(r) = a.regularity.r else {
        return BoundReport::inapplicable("regular_shift_L", "graph is not regular");
    };
    let shifted: Vec<f64> = a.lambda.values.iter().map(|l| r as f64 - l).collect();
    let mut b = Builder::new("regular_shift_L", *tol);
    b.spectra("r minus adjacency spectrum", &a.nu.values, &shifted);
    b.eq("smallest is r - lambda_1", a.nu.smallest(), r as f64 - a.lambda.largest());
    b.finish()
}

pub(super) fn regular_shift_q(a: &Analysis, tol: &Tolerances) -> BoundReport {
    let Some(r) = a.regularity.r else {
        return BoundReport::inapplicable("regular_shift_Q", "graph is not regular");
    };
    let shifted: Vec<f64> = a.lambda.values.iter().map(|l| r as f64 + l).collect();
    let mut b = Builder::new("regular_shift_Q", *tol);
    b.spectra("r plus adjacency spectrum", &a.xi.values, &shifted);
    b.eq("largest is 2r", a.xi.largest(), 2.0 * r as f64);
    b.finish()
}

pub(super) fn regular_shift_n(a: &Analysis, tol: &Tolerances) -> BoundReport {
    const ID: &str = "regular_shift_N";
    if !a.predicates.simple {
        return BoundReport::inapplicable(ID, "graph is not simple");
    }
    let r = match a.regularity.r {
        Some(r) if r > 0 => r as f64,
        Some(_) => return BoundReport::inapplicable(ID, "graph is 0-regular"),
        None => return BoundReport::inapplicable(ID, "graph is not regular"),
    };
    let from_adjacency: Vec<f64> = a.lambda.values.iter().map(|l| 1.0 - l / r).collect();
    let from_laplacian: Vec<f64> = a.nu.values.iter().map(|m| m / r).collect();
    let mut b = Builder::new(ID, *tol);
    b.spectra("1 - lambda/r", &a.nu_hat.values, &from_adjacency);
    b.spectra("mu/r", &a.nu_hat.values, &from_laplacian);
    b.finish()
}

/// Compares the two characteristic polynomials exactly; equal exactly when
/// the graph has the AB property.
pub(super) fn charpoly_lq(a: &Analysis, tol: &Tolerances) -> Result<BoundReport> {
    const ID: &str = "charpoly_LQ_equal_under_AB";
    if !a.predicates.simple {
        return Ok(BoundReport::inapplicable(ID, "graph is not simple"));
    }
    let pl = char_poly(&a.laplacian)?;
    let pq = char_poly(&a.signless)?;
    let equal = pl == pq;
    let mut b = Builder::new(ID, *tol);
    if a.predicates.has_ab {
        b.truth("AB implies equal coefficients", equal);
    }
    b.iff("AB iff equal coefficients", a.predicates.has_ab, equal);
    b.witness(Witness::Equality {
        description: format!("L: {pl}; Q: {pq}"),
    });
    Ok(b.finish())
}

pub(super) fn rank_l(a: &Analysis, tol: &Tolerances) -> BoundReport {
    const ID: &str = "rank_L";
    if !a.predicates.simple {
        return BoundReport::inapplicable(ID, "graph is not simple");
    }
    let order = a.nu.len();
    let rank = order - a.nu.count_near(0.0, tol.zero);
    let mut b = Builder::new(ID, *tol);
    b.eq_exact("rank", rank as i64, (order - a.components.component_count) as i64);
    b.le("positive semidefinite", -tol.zero, a.nu.smallest());
    b.truth(
        "zero row sums",
        a.laplacian.row_sums().iter().all(|&s| s == 0.0),
    );
    b.finish()
}

/// Whether `Mx = c·x` for some scalar `c`, returning `c`.
fn eigen_ratio(m: &crate::matrix::SymMatrix, x: &[f64], tol: f64) -> Option<f64> {
    let y = m.mul_vec(x);
    let c = y[0] / x[0];
    y.iter().zip(x).all(|(yi, xi)| (yi - c * xi).abs() <= tol).then_some(c)
}

pub(super) fn rs_regular(a: &Analysis, tol: &Tolerances) -> BoundReport {
    const ID: &str = "rs_regular_eigvec";
    let n = a.n();
    if n == 0 {
        return BoundReport::inapplicable(ID, "empty vertex set");
    }
    let ones = vec![1.0; 2 * n];
    let signed: Vec<f64> = (0..2 * n).map(|i| if i < n { 1.0 } else { -1.0 }).collect();
    let c1 = eigen_ratio(&a.signless, &ones, tol.equality);
    let c2 = eigen_ratio(&a.signless, &signed, tol.equality);
    let spectral = c1.is_some() && c2.is_some();
    let mut b = Builder::new(ID, *tol);
    b.iff("(r,s)-regular iff both are eigenvectors", a.regularity.rs.is_some(), spectral);
    if let (Some((r, s)), Some(c1), Some(c2)) = (a.regularity.rs, c1, c2) {
        b.eq("eigenvalue for 1 is 2(r+s)", c1, 2.0 * (r + s) as f64);
        b.eq("eigenvalue for [1;-1] is 2r", c2, 2.0 * r as f64);
    }
    b.finish()
}

pub(super) fn normalized_sum(a: &Analysis, tol: &Tolerances) -> BoundReport {
    const ID: &str = "normalized_sum";
    if !(a.predicates.loopless && a.predicates.plain) {
        return BoundReport::inapplicable(ID, "graph is not loopless plain");
    }
    let expected = 2 * a.n() - a.predicates.n_trivial_components;
    let mut b = Builder::new(ID, *tol);
    b.eq("sum equals 2n - trivial components", a.nu_hat.sum(), expected as f64);
    b.finish()
}
