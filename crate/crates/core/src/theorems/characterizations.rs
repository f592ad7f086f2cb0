//! Equivalences between a structural property of the associated graph and a
//! spectral one. Each report holds when both sides agree.

use super::{Analysis, BoundReport, Builder, Tolerances};

fn needs_simple(a: &Analysis, id: &str) -> Option<BoundReport> {
    (!a.predicates.simple).then(|| BoundReport::inapplicable(id, "graph is not simple"))
}

pub(super) fn ab_iff_simple_zero(a: &Analysis, tol: &Tolerances) -> BoundReport {
    const ID: &str = "ab_iff_xi2n_zero_simple";
    if let Some(r) = needs_simple(a, ID) {
        return r;
    }
    if !a.predicates.uniconnected {
        return BoundReport::inapplicable(ID, "graph is not uniconnected");
    }
    let simple_zero = a.xi.smallest().abs() <= tol.zero && a.xi.count_near(0.0, tol.zero) == 1;
    let mut b = Builder::new(ID, *tol);
    b.iff("AB iff smallest is a simple zero", a.predicates.has_ab, simple_zero);
    b.finish()
}

pub(super) fn q_zero_multiplicity(a: &Analysis, tol: &Tolerances) -> BoundReport {
    const ID: &str = "q_zero_mult_eq_AB_components";
    if let Some(r) = needs_simple(a, ID) {
        return r;
    }
    let mut b = Builder::new(ID, *tol);
    b.eq_exact(
        "zero multiplicity",
        a.xi.count_near(0.0, tol.zero) as i64,
        a.predicates.n_bipartite_components as i64,
    );
    b.finish()
}

pub(super) fn n_zero_multiplicity(a: &Analysis, tol: &Tolerances) -> BoundReport {
    const ID: &str = "n_zero_mult_eq_components";
    if let Some(r) = needs_simple(a, ID) {
        return r;
    }
    let mut b = Builder::new(ID, *tol);
    b.eq_exact(
        "zero multiplicity",
        a.nu_hat.count_near(0.0, tol.zero) as i64,
        a.predicates.component_count as i64,
    );
    b.finish()
}

pub(super) fn nhat_top_two(a: &Analysis, tol: &Tolerances) -> BoundReport {
    const ID: &str = "nhat1_eq_2_iff_nontrivial_AB";
    if !(a.predicates.loopless && a.predicates.plain) {
        return BoundReport::inapplicable(ID, "graph is not loopless plain");
    }
    let nontrivial_ab = a.predicates.n_ab_nontrivial_components;
    let top_is_two = (a.nu_hat.largest() - 2.0).abs() <= tol.equality;
    let mut b = Builder::new(ID, *tol);
    b.iff("largest is 2 iff a non-trivial AB component exists", nontrivial_ab > 0, top_is_two);
    b.eq_exact(
        "multiplicity of 2",
        a.nu_hat.count_near(2.0, tol.equality) as i64,
        nontrivial_ab as i64,
    );
    b.equality(top_is_two);
    b.finish()
}

pub(super) fn xi_top_zero(a: &Analysis, tol: &Tolerances) -> BoundReport {
    const ID: &str = "xi1_zero_iff_edgeless";
    if let Some(r) = needs_simple(a, ID) {
        return r;
    }
    let mut b = Builder::new(ID, *tol);
    b.iff("edgeless iff largest is 0", a.graph.is_empty(), a.xi.largest().abs() <= tol.zero);
    b.finish()
}

pub(super) fn xi_top_below_four(a: &Analysis, tol: &Tolerances) -> BoundReport {
    const ID: &str = "xi1_lt4_iff_AP";
    if let Some(r) = needs_simple(a, ID) {
        return r;
    }
    let mut b = Builder::new(ID, *tol);
    b.iff(
        "every component AP iff largest below 4",
        a.predicates.ap_all_components,
        a.xi.largest() < 4.0 - tol.equality,
    );
    b.finish()
}

pub(super) fn xi_top_four(a: &Analysis, tol: &Tolerances) -> BoundReport {
    const ID: &str = "xi1_eq4_iff_alt_cycle";
    if let Some(r) = needs_simple(a, ID) {
        return r;
    }
    if !a.predicates.uniconnected {
        return BoundReport::inapplicable(ID, "graph is not uniconnected");
    }
    // A spanning alternating cycle with an even number of arcs is exactly a
    // Hamiltonian cycle structure on the associated graph.
    let is_cycle = a.components.flags[0].is_cycle;
    let mut b = Builder::new(ID, *tol);
    b.iff(
        "associated graph is a cycle iff largest is 4",
        is_cycle,
        (a.xi.largest() - 4.0).abs() <= tol.equality,
    );
    b.finish()
}

pub(super) fn regular_ones(a: &Analysis, tol: &Tolerances) -> BoundReport {
    const ID: &str = "regular_iff_2r_eigvec_ones";
    let n = a.n();
    if n == 0 {
        return BoundReport::inapplicable(ID, "empty vertex set");
    }
    let q1 = a.signless.mul_vec(&vec![1.0; 2 * n]);
    let c = q1[0];
    let constant = q1.iter().all(|x| (x - c).abs() <= tol.equality);
    let mut b = Builder::new(ID, *tol);
    b.iff("regular iff 1 is an eigenvector", a.regularity.r.is_some(), constant);
    if let (Some(r), true) = (a.regularity.r, constant) {
        b.eq("eigenvalue is 2r", c, 2.0 * r as f64);
    }
    b.finish()
}
