//! Dense symmetric eigendecomposition by cyclic Jacobi rotations, exact
//! characteristic polynomials, and spectrum grouping and comparison.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::matrix::SymMatrix;

pub const ROTATION_THRESHOLD: f64 = 1e-14;
pub const MAX_SWEEPS: usize = 100;

/// Eigenvalues in non-increasing order with their grouping.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Spectrum {
    pub values: Vec<f64>,
    /// `(mean value, multiplicity)` for each run of values within `tol_group`.
    pub groups: Vec<(f64, usize)>,
    pub tol_group: f64,
}

impl Spectrum {
    pub fn from_values(mut values: Vec<f64>, tol_group: f64) -> Self {
        values.sort_by(|a, b| b.total_cmp(a));
        let groups = group_multiplicities(&values, tol_group);
        Spectrum {
            values,
            groups,
            tol_group,
        }
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// `i`-th largest eigenvalue, counting from 1.
    pub fn nth(&self, i: usize) -> f64 {
        self.values[i - 1]
    }

    pub fn largest(&self) -> f64 {
        self.values.first().copied().unwrap_or(0.0)
    }

    pub fn smallest(&self) -> f64 {
        self.values.last().copied().unwrap_or(0.0)
    }

    pub fn sum(&self) -> f64 {
        self.values.iter().sum()
    }

    /// Number of eigenvalues within `tol` of `target`.
    pub fn count_near(&self, target: f64, tol: f64) -> usize {
        self.values.iter().filter(|&&x| (x - target).abs() <= tol).count()
    }
}

#[derive(Debug, Clone)]
pub struct EigenDecomposition {
    pub spectrum: Spectrum,
    /// `vectors[k]` is a unit eigenvector for `spectrum.values[k]`.
    pub vectors: Vec<Vec<f64>>,
    pub sweeps: usize,
    /// Off-diagonal Frobenius norm before the first sweep and after each one.
    pub off_history: Vec<f64>,
}

impl EigenDecomposition {
    /// `‖V Λ Vᵀ − M‖_max`.
    pub fn reconstruction_error(&self, m: &SymMatrix) -> f64 {
        let order = m.order();
        let mut worst = 0.0f64;
        for i in 0..order {
            for j in 0..order {
                let r: f64 = self
                    .vectors
                    .iter()
                    .zip(&self.spectrum.values)
                    .map(|(v, &l)| l * v[i] * v[j])
                    .sum();
                worst = worst.max((r - m.get(i, j)).abs());
            }
        }
        worst
    }

    /// `‖VᵀV − I‖_max`.
    pub fn orthonormality_error(&self) -> f64 {
        let mut worst = 0.0f64;
        for (a, u) in self.vectors.iter().enumerate() {
            for (b, w) in self.vectors.iter().enumerate() {
                let dot: f64 = u.iter().zip(w).map(|(x, y)| x * y).sum();
                let target = if a == b { 1.0 } else { 0.0 };
                worst = worst.max((dot - target).abs());
            }
        }
        worst
    }
}

fn off_norm(a: &[f64], order: usize) -> f64 {
    let mut s = 0.0;
    for i in 0..order {
        for j in 0..order {
            if i != j {
                s += a[i * order + j] * a[i * order + j];
            }
        }
    }
    s.sqrt()
}

/// Cyclic-by-row Jacobi. Rotations are skipped for entries at or below
/// `1e-14·‖M‖_F`; iteration stops after a sweep with no rotation.
pub fn jacobi_eigen(m: &SymMatrix, tol_group: f64) -> Result<EigenDecomposition> {
    m.check_symmetric(0.0)?;
    let order = m.order();
    let mut a = m.entries().to_vec();
    let mut v = vec![0.0; order * order];
    for i in 0..order {
        v[i * order + i] = 1.0;
    }
    let threshold = ROTATION_THRESHOLD * m.frobenius();
    let mut off_history = vec![off_norm(&a, order)];
    let mut sweeps = 0;
    while sweeps < MAX_SWEEPS {
        let mut rotated = false;
        for p in 0..order {
            for q in (p + 1)..order {
                let apq = a[p * order + q];
                if apq.abs() <= threshold {
                    continue;
                }
                rotated = true;
                let theta = (a[q * order + q] - a[p * order + p]) / (2.0 * apq);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                for k in 0..order {
                    let akp = a[k * order + p];
                    let akq = a[k * order + q];
                    a[k * order + p] = c * akp - s * akq;
                    a[k * order + q] = s * akp + c * akq;
                }
                for k in 0..order {
                    let apk = a[p * order + k];
                    let aqk = a[q * order + k];
                    a[p * order + k] = c * apk - s * aqk;
                    a[q * order + k] = s * apk + c * aqk;
                }
                a[p * order + q] = 0.0;
                a[q * order + p] = 0.0;
                for k in 0..order {
                    let vkp = v[k * order + p];
                    let vkq = v[k * order + q];
                    v[k * order + p] = c * vkp - s * vkq;
                    v[k * order + q] = s * vkp + c * vkq;
                }
            }
        }
        if !rotated {
            break;
        }
        sweeps += 1;
        off_history.push(off_norm(&a, order));
    }
    if sweeps == MAX_SWEEPS {
        return Err(Error::Internal(format!(
            "Jacobi did not converge within {MAX_SWEEPS} sweeps"
        )));
    }
    let mut idx: Vec<usize> = (0..order).collect();
    idx.sort_by(|&x, &y| a[y * order + y].total_cmp(&a[x * order + x]));
    let values: Vec<f64> = idx.iter().map(|&k| a[k * order + k]).collect();
    let vectors = idx
        .iter()
        .map(|&k| (0..order).map(|i| v[i * order + k]).collect())
        .collect();
    Ok(EigenDecomposition {
        spectrum: Spectrum::from_values(values, tol_group),
        vectors,
        sweeps,
        off_history,
    })
}

/// Merges runs of sorted values whose neighbours differ by at most `tol`.
pub fn group_multiplicities(values: &[f64], tol: f64) -> Vec<(f64, usize)> {
    let mut groups: Vec<(f64, usize)> = Vec::new();
    let mut sum = 0.0;
    let mut prev: Option<f64> = None;
    for &x in values {
        match (prev, groups.last_mut()) {
            (Some(p), Some(last)) if (x - p).abs() <= tol => {
                sum += x;
                last.1 += 1;
                last.0 = sum / last.1 as f64;
            }
            _ => {
                sum = x;
                groups.push((x, 1));
            }
        }
        prev = Some(x);
    }
    groups
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SpectrumComparison {
    pub equal: bool,
    pub max_deviation: f64,
    /// The computed and expected values at the worst position.
    pub worst_pair: Option<(f64, f64)>,
}

/// Compares two multisets after sorting both in non-increasing order.
pub fn spectra_equal(computed: &[f64], expected: &[f64], tol: f64) -> Result<SpectrumComparison> {
    if computed.len() != expected.len() {
        return Err(Error::input(format!(
            "spectrum lengths differ: {} vs {}",
            computed.len(),
            expected.len()
        )));
    }
    let mut a = computed.to_vec();
    let mut b = expected.to_vec();
    a.sort_by(|x, y| y.total_cmp(x));
    b.sort_by(|x, y| y.total_cmp(x));
    let mut max_deviation = 0.0f64;
    let mut worst_pair = None;
    for (&x, &y) in a.iter().zip(&b) {
        let dev = (x - y).abs();
        if worst_pair.is_none() || dev > max_deviation {
            max_deviation = dev;
            worst_pair = Some((x, y));
        }
    }
    Ok(SpectrumComparison {
        equal: max_deviation <= tol,
        max_deviation,
        worst_pair,
    })
}

/// Monic integer polynomial, coefficients from the leading term down.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CharPoly {
    pub coefficients: Vec<BigInt>,
}

impl CharPoly {
    pub fn degree(&self) -> usize {
        self.coefficients.len() - 1
    }

    /// Horner evaluation in floating point.
    pub fn eval(&self, x: f64) -> f64 {
        self.coefficients
            .iter()
            .fold(0.0, |acc, c| acc * x + c.to_f64().unwrap_or(f64::NAN))
    }

    pub fn to_i64(&self) -> Option<Vec<i64>> {
        self.coefficients.iter().map(ToPrimitive::to_i64).collect()
    }
}

impl Serialize for CharPoly {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let text: Vec<String> = self.coefficients.iter().map(ToString::to_string).collect();
        text.serialize(s)
    }
}

impl fmt::Display for CharPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let deg = self.degree();
        let mut first = true;
        for (k, c) in self.coefficients.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let power = deg - k;
            let sign = if c.is_negative() { "-" } else { "+" };
            if first {
                if c.is_negative() {
                    f.write_str("-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            let mag = c.abs();
            if !mag.is_one() || power == 0 {
                write!(f, "{mag}")?;
            }
            match power {
                0 => {}
                1 => f.write_str("x")?,
                p => write!(f, "x^{p}")?,
            }
            first = false;
        }
        if first {
            f.write_str("0")?;
        }
        Ok(())
    }
}

/// Arithmetic needed by Faddeev–LeVerrier. `None` signals overflow.
trait ExactRing: Clone {
    fn from_i64(x: i64) -> Self;
    fn add(&self, other: &Self) -> Option<Self>;
    fn mul(&self, other: &Self) -> Option<Self>;
    /// Exact quotient; `Err` when the remainder is non-zero.
    fn div_exact(&self, k: i64) -> std::result::Result<Option<Self>, ()>;
}

impl ExactRing for i128 {
    fn from_i64(x: i64) -> Self {
        i128::from(x)
    }
    fn add(&self, other: &Self) -> Option<Self> {
        self.checked_add(*other)
    }
    fn mul(&self, other: &Self) -> Option<Self> {
        self.checked_mul(*other)
    }
    fn div_exact(&self, k: i64) -> std::result::Result<Option<Self>, ()> {
        let k = i128::from(k);
        if self % k != 0 {
            return Err(());
        }
        Ok(Some(self / k))
    }
}

impl ExactRing for BigInt {
    fn from_i64(x: i64) -> Self {
        BigInt::from(x)
    }
    fn add(&self, other: &Self) -> Option<Self> {
        Some(self + other)
    }
    fn mul(&self, other: &Self) -> Option<Self> {
        Some(self * other)
    }
    fn div_exact(&self, k: i64) -> std::result::Result<Option<Self>, ()> {
        let k = BigInt::from(k);
        if !(self % &k).is_zero() {
            return Err(());
        }
        Ok(Some(self / k))
    }
}

/// `Ok(None)` on overflow, `Err` on an inexact division.
fn faddeev_leverrier<T: ExactRing>(a: &[i64], order: usize) -> Result<Option<Vec<T>>> {
    let inexact = || Error::Internal("characteristic polynomial division was not exact".into());
    let a: Vec<T> = a.iter().map(|&x| T::from_i64(x)).collect();
    let zero = T::from_i64(0);
    let mut coeffs = vec![T::from_i64(1)];
    // m holds M_k; starts at M_0 = 0.
    let mut m = vec![zero.clone(); order * order];
    for k in 1..=order {
        let c_prev = coeffs[k - 1].clone();
        // M_k = A·M_{k−1} + c_{k−1}·I
        let mut next = vec![zero.clone(); order * order];
        for i in 0..order {
            for j in 0..order {
                let mut s = if i == j { c_prev.clone() } else { zero.clone() };
                for l in 0..order {
                    let Some(term) = a[i * order + l].mul(&m[l * order + j]) else {
                        return Ok(None);
                    };
                    let Some(sum) = s.add(&term) else {
                        return Ok(None);
                    };
                    s = sum;
                }
                next[i * order + j] = s;
            }
        }
        m = next;
        // c_k = −tr(A·M_k)/k
        let mut tr = zero.clone();
        for i in 0..order {
            for l in 0..order {
                let Some(term) = a[i * order + l].mul(&m[l * order + i]) else {
                    return Ok(None);
                };
                let Some(sum) = tr.add(&term) else {
                    return Ok(None);
                };
                tr = sum;
            }
        }
        let Some(neg) = tr.mul(&T::from_i64(-1)) else {
            return Ok(None);
        };
        match neg.div_exact(k as i64) {
            Ok(Some(c)) => coeffs.push(c),
            Ok(None) => return Ok(None),
            Err(()) => return Err(inexact()),
        }
    }
    Ok(Some(coeffs))
}

/// Exact characteristic polynomial `det(xI − M)` of an integer matrix.
pub fn char_poly(m: &SymMatrix) -> Result<CharPoly> {
    let entries = m
        .integer_entries()
        .ok_or_else(|| Error::input("characteristic polynomial needs an integer-exact matrix"))?;
    let order = m.order();
    if let Some(c) = faddeev_leverrier::<i128>(&entries, order)? {
        return Ok(CharPoly {
            coefficients: c.into_iter().map(BigInt::from).collect(),
        });
    }
    let c = faddeev_leverrier::<BigInt>(&entries, order)?
        .ok_or_else(|| Error::Internal("arbitrary-precision arithmetic overflowed".into()))?;
    Ok(CharPoly { coefficients: c })
}
