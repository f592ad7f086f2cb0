//! Exact spectra of the named families.

use std::f64::consts::PI;

use serde::Serialize;

use super::{Analysis, BoundReport, Builder, Tolerances};
use crate::error::{Error, Result};
use crate::graph::Family;
use crate::matrix::MatrixKind;

/// A spectrum given as `(value, multiplicity)` pairs; multiplicities sum to
/// twice the vertex count.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ClosedFormSpectrum {
    pub family: Family,
    pub kind: MatrixKind,
    pub groups: Vec<(f64, usize)>,
}

impl ClosedFormSpectrum {
    /// All eigenvalues, sorted in descending order.
    pub fn values(&self) -> Vec<f64> {
        let mut v: Vec<f64> = self
            .groups
            .iter()
            .flat_map(|&(x, m)| std::iter::repeat_n(x, m))
            .collect();
        v.sort_by(|a, b| b.total_cmp(a));
        v
    }

    pub fn total_multiplicity(&self) -> usize {
        self.groups.iter().map(|g| g.1).sum()
    }
}

fn cosine_list(n: usize, steps: usize, f: impl Fn(f64) -> f64) -> Vec<(f64, usize)> {
    (1..=steps)
        .map(|k| (f((2.0 * PI * k as f64) / n as f64), 1))
        .collect()
}

/// Closed-form spectrum of `family` for one of the three Laplacian-type
/// matrices.
pub fn closed_form(family: Family, kind: MatrixKind) -> Result<ClosedFormSpectrum> {
    family.validate()?;
    if !matches!(kind, MatrixKind::IL | MatrixKind::IQ | MatrixKind::IN) {
        return Err(Error::input(format!("no closed form for {kind}; use IL, IQ or IN")));
    }
    let groups = match family {
        Family::CompleteMixed { n } => mixed_multipartite(n, 1, kind)?,
        Family::CompleteMultipartiteMixed { k, m } => mixed_multipartite(k, m, kind)?,
        Family::CompleteDirected { n } => directed_multipartite(n, 1, kind)?,
        Family::CompleteMultipartiteDirected { k, m } => directed_multipartite(k, m, kind)?,
        Family::OrientedPathSame { n } => vec![(2.0, n - 1), (0.0, n + 1)],
        Family::OrientedCycleSame { n } => vec![(2.0, n), (0.0, n)],
        Family::OrientedCycleAlternating { n } => {
            let mut g = vec![(0.0, n)];
            g.extend(match kind {
                MatrixKind::IL => cosine_list(n, n, |t| 2.0 - 2.0 * t.cos()),
                MatrixKind::IQ => cosine_list(n, n, |t| 2.0 + 2.0 * t.cos()),
                _ => cosine_list(n, n, |t| 1.0 - t.cos()),
            });
            g
        }
        // The angle is πk/n for k = 1..2n, i.e. 2πk/(2n).
        Family::AlternatingDoubleCycle { n } => match kind {
            MatrixKind::IN => cosine_list(2 * n, 2 * n, |t| 1.0 - t.cos()),
            _ => cosine_list(2 * n, 2 * n, |t| 2.0 - 2.0 * t.cos()),
        },
        other => return Err(Error::input(format!("no closed form known for {other}"))),
    };
    let out = ClosedFormSpectrum { family, kind, groups };
    debug_assert_eq!(out.total_multiplicity(), 2 * family.vertex_count());
    Ok(out)
}

fn mixed_multipartite(k: usize, m: usize, kind: MatrixKind) -> Result<Vec<(f64, usize)>> {
    if k < 2 {
        return Err(Error::input("complete multipartite closed forms need k >= 2"));
    }
    let (kf, mf) = (k as f64, m as f64);
    Ok(match kind {
        MatrixKind::IL => vec![
            (0.0, 1),
            (2.0 * mf * kf, k - 1),
            (2.0 * mf * kf - 2.0 * mf, 2 * m * k - k),
        ],
        MatrixKind::IQ => vec![
            (4.0 * mf * kf - 4.0 * mf, 1),
            (2.0 * mf * kf - 4.0 * mf, k - 1),
            (2.0 * mf * kf - 2.0 * mf, 2 * m * k - k),
        ],
        _ => vec![(0.0, 1), (kf / (kf - 1.0), k - 1), (1.0, 2 * m * k - k)],
    })
}

fn directed_multipartite(k: usize, m: usize, kind: MatrixKind) -> Result<Vec<(f64, usize)>> {
    if k < 2 {
        return Err(Error::input("complete multipartite closed forms need k >= 2"));
    }
    let (kf, mf) = (k as f64, m as f64);
    Ok(match kind {
        MatrixKind::IN => vec![
            (2.0, 1),
            (0.0, 1),
            (kf / (kf - 1.0), k - 1),
            ((kf - 2.0) / (kf - 1.0), k - 1),
            (1.0, 2 * k * m - 2 * k),
        ],
        // Laplacian and signless spectra coincide: the associated graph is bipartite.
        _ => vec![
            (2.0 * mf * kf - 2.0 * mf, 1),
            (0.0, 1),
            (mf * kf, k - 1),
            (mf * kf - 2.0 * mf, k - 1),
            (mf * kf - mf, 2 * k * m - 2 * k),
        ],
    })
}

/// Every family with a closed form whose construction equals `g` exactly.
pub fn detect_families(g: &crate::graph::MixedGraph) -> Vec<Family> {
    let n = g.order();
    let mut candidates = vec![
        Family::CompleteMixed { n },
        Family::CompleteDirected { n },
        Family::OrientedPathSame { n },
        Family::OrientedCycleSame { n },
        Family::OrientedCycleAlternating { n },
        Family::AlternatingDoubleCycle { n },
    ];
    for k in 2..=n {
        if n.is_multiple_of(k) && n / k > 1 {
            candidates.push(Family::CompleteMultipartiteMixed { k, m: n / k });
            candidates.push(Family::CompleteMultipartiteDirected { k, m: n / k });
        }
    }
    candidates
        .into_iter()
        .filter(|f| f.build().is_ok_and(|h| &h == g))
        .filter(|f| closed_form(*f, MatrixKind::IL).is_ok())
        .collect()
}

pub(super) fn check(a: &Analysis, tol: &Tolerances) -> Result<BoundReport> {
    let families = detect_families(&a.graph);
    if families.is_empty() {
        return Ok(BoundReport::inapplicable("closed_form", "graph is not a recognised family"));
    }
    let mut b = Builder::new("closed_form", *tol);
    for family in &families {
        for (kind, spectrum) in [
            (MatrixKind::IL, &a.nu),
            (MatrixKind::IQ, &a.xi),
            (MatrixKind::IN, &a.nu_hat),
        ] {
            let expected = closed_form(*family, kind)?;
            b.spectra(&format!("{family} {kind}"), &spectrum.values, &expected.values());
        }
    }
    b.witness(super::Witness::Equality {
        description: families.iter().map(ToString::to_string).collect::<Vec<_>>().join(", "),
    });
    Ok(b.finish())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::eigen::{jacobi_eigen, spectra_equal};

    fn sorted(mut v: Vec<f64>) -> Vec<f64> {
        v.sort_by(|a, b| b.total_cmp(a));
        v
    }

    #[test]
    fn tripartite_laplacian_groups() {
        let s = closed_form(Family::CompleteMultipartiteMixed { k: 3, m: 1 }, MatrixKind::IL).unwrap();
        assert_eq!(s.values(), vec![6.0, 6.0, 4.0, 4.0, 4.0, 0.0]);
    }

    #[test]
    fn tripartite_signless_groups() {
        let s = closed_form(Family::CompleteMultipartiteMixed { k: 3, m: 1 }, MatrixKind::IQ).unwrap();
        assert_eq!(s.values(), vec![8.0, 4.0, 4.0, 4.0, 2.0, 2.0]);
    }

    #[test]
    fn directed_complete_normalized() {
        let s = closed_form(Family::CompleteDirected { n: 3 }, MatrixKind::IN).unwrap();
        assert_eq!(s.values(), vec![2.0, 1.5, 1.5, 0.5, 0.5, 0.0]);
        let two = closed_form(Family::CompleteDirected { n: 2 }, MatrixKind::IN).unwrap();
        assert_eq!(two.values(), vec![2.0, 2.0, 0.0, 0.0]);
    }

    #[test]
    fn rejects_unsupported_inputs() {
        assert!(closed_form(Family::Path { n: 3 }, MatrixKind::IL).is_err());
        assert!(closed_form(Family::CompleteMixed { n: 3 }, MatrixKind::I).is_err());
        assert!(closed_form(Family::CompleteMixed { n: 1 }, MatrixKind::IL).is_err());
        assert!(closed_form(Family::OrientedCycleAlternating { n: 5 }, MatrixKind::IL).is_err());
    }

    #[test]
    fn double_cycle_signless_forms_coincide() {
        for n in 2..9 {
            let minus: Vec<f64> = (1..=2 * n)
                .map(|k| 2.0 - 2.0 * (PI * k as f64 / n as f64).cos())
                .collect();
            let plus: Vec<f64> = (1..=2 * n)
                .map(|k| 2.0 + 2.0 * (PI * k as f64 / n as f64).cos())
                .collect();
            assert!(spectra_equal(&sorted(minus), &sorted(plus), 1e-12).unwrap().equal);
        }
    }

    fn all_families() -> Vec<Family> {
        let mut out = Vec::new();
        for k in 2..=4 {
            for m in 1..=3 {
                out.push(Family::CompleteMultipartiteMixed { k, m });
                out.push(Family::CompleteMultipartiteDirected { k, m });
            }
        }
        for n in 2..=8 {
            out.push(Family::CompleteMixed { n });
            out.push(Family::CompleteDirected { n });
            out.push(Family::OrientedPathSame { n });
            out.push(Family::AlternatingDoubleCycle { n });
            if n >= 3 {
                out.push(Family::OrientedCycleSame { n });
            }
            if n >= 4 && n % 2 == 0 {
                out.push(Family::OrientedCycleAlternating { n });
            }
        }
        out
    }

    #[test]
    fn closed_forms_match_the_eigensolver() {
        for family in all_families() {
            let g = family.build().unwrap();
            for kind in [MatrixKind::IL, MatrixKind::IQ, MatrixKind::IN] {
                let expected = closed_form(family, kind).unwrap();
                assert_eq!(expected.total_multiplicity(), 2 * g.order());
                let computed = jacobi_eigen(&kind.build(&g), 1e-7).unwrap().spectrum;
                let cmp = spectra_equal(&computed.values, &expected.values(), 1e-8).unwrap();
                assert!(cmp.equal, "{family} {kind}: deviation {}", cmp.max_deviation);
            }
        }
    }

    #[test]
    fn detection_finds_the_construction() {
        let g = Family::CompleteMultipartiteMixed { k: 2, m: 3 }.build().unwrap();
        assert_eq!(detect_families(&g), vec![Family::CompleteMultipartiteMixed { k: 2, m: 3 }]);
        let km3 = Family::CompleteMixed { n: 3 }.build().unwrap();
        assert_eq!(detect_families(&km3), vec![Family::CompleteMixed { n: 3 }]);
        assert!(detect_families(&Family::Path { n: 4 }.build().unwrap()).is_empty());
    }
}
