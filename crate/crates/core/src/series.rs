//! Truncated power series in t, Molien series of matrix groups and the
//! fundamental degrees read off from them.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive, Zero};

use crate::cyclotomic::Cyclotomic;
use crate::field::{as_nonneg_integer, Field, Rational};
use crate::group::{RMatrix, ReflectionGroup};
use crate::poly::binomial;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SeriesError {
    #[error("Molien coefficient of degree {degree} is not a nonnegative integer: {value}")]
    NonIntegerCoefficient { degree: usize, value: alloc::string::String },
    #[error("not a reflection-group invariant series: {reason}")]
    NotReflectionSeries { reason: alloc::string::String },
    #[error("truncation must be at least 1")]
    ZeroTruncation,
}

fn not_reflection(reason: impl Into<alloc::string::String>) -> SeriesError {
    SeriesError::NotReflectionSeries {
        reason: reason.into(),
    }
}

/// Power series c₀ + c₁t + … + c_N t^N, exact up to the truncation N.
#[derive(Clone, PartialEq, Eq)]
pub struct Series<T> {
    coeffs: Vec<T>,
}

/// Series with rational coefficients.
pub type SeriesQ = Series<Rational>;

impl<T: Field> Series<T> {
    /// The polynomial `coeffs` read as a series truncated at `truncation`.
    pub fn from_coefficients(mut coeffs: Vec<T>, truncation: usize) -> Self {
        coeffs.resize(truncation + 1, T::zero());
        Series { coeffs }
    }

    pub fn one(truncation: usize) -> Self {
        Self::from_coefficients(vec![T::one()], truncation)
    }

    pub fn truncation(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coefficients(&self) -> &[T] {
        &self.coeffs
    }

    pub fn coefficient(&self, k: usize) -> T {
        self.coeffs.get(k).cloned().unwrap_or_else(T::zero)
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.truncation().min(other.truncation());
        Series {
            coeffs: (0..=n).map(|k| self.coeffs[k].add(&other.coeffs[k])).collect(),
        }
    }

    pub fn scale(&self, c: &T) -> Self {
        Series {
            coeffs: self.coeffs.iter().map(|x| x.mul(c)).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let n = self.truncation().min(other.truncation());
        let mut coeffs = vec![T::zero(); n + 1];
        for (i, a) in self.coeffs.iter().enumerate().take(n + 1) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate().take(n + 1 - i) {
                if !b.is_zero() {
                    coeffs[i + j] = coeffs[i + j].add(&a.mul(b));
                }
            }
        }
        Series { coeffs }
    }

    /// Multiplicative inverse via the recurrence b₀ = 1/a₀,
    /// b_k = −(Σ_{j≥1} a_j b_{k−j}) / a₀. `None` when a₀ = 0.
    pub fn reciprocal(&self) -> Option<Self> {
        let inv0 = self.coeffs[0].inv()?;
        let n = self.truncation();
        let mut b: Vec<T> = Vec::with_capacity(n + 1);
        b.push(inv0.clone());
        for k in 1..=n {
            let mut acc = T::zero();
            for j in 1..=k {
                let a = &self.coeffs[j];
                if !a.is_zero() {
                    acc = acc.add(&a.mul(&b[k - j]));
                }
            }
            b.push(acc.mul(&inv0).neg());
        }
        Some(Series { coeffs: b })
    }
}

impl<T: fmt::Display> fmt::Debug for Series<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (i, c) in self.coeffs.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{}", c)?;
        }
        f.write_str("]")
    }
}

impl SeriesQ {
    /// Integer coefficients, when all of them are integers fitting in u64.
    pub fn to_u64(&self) -> Option<Vec<u64>> {
        self.coeffs
            .iter()
            .map(|c| as_nonneg_integer(c).and_then(|i| i.to_u64()))
            .collect()
    }

    /// (1 − t)^(−n): coefficient k is C(k + n − 1, n − 1).
    pub fn free_hilbert(n: usize, truncation: usize) -> Self {
        Series {
            coeffs: (0..=truncation)
                .map(|k| {
                    if n == 0 {
                        Rational::from_integer(BigInt::from((k == 0) as u32))
                    } else {
                        Rational::from_integer(BigInt::from(binomial((k + n - 1) as u64, (n - 1) as u64)))
                    }
                })
                .collect(),
        }
    }
}

/// Sorted fundamental degrees d₁ ≤ … ≤ d_n.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DegreeVector {
    degrees: Vec<u32>,
}

impl DegreeVector {
    pub fn new(mut degrees: Vec<u32>) -> Self {
        degrees.sort_unstable();
        DegreeVector { degrees }
    }

    pub fn degrees(&self) -> &[u32] {
        &self.degrees
    }

    pub fn len(&self) -> usize {
        self.degrees.len()
    }

    pub fn is_empty(&self) -> bool {
        self.degrees.is_empty()
    }

    pub fn product(&self) -> u64 {
        self.degrees.iter().map(|&d| d as u64).product()
    }

    /// Σ(dᵢ − 1), the top degree of the harmonic space.
    pub fn top_harmonic_degree(&self) -> u32 {
        self.degrees.iter().map(|d| d - 1).sum()
    }
}

/// Default truncation max(2|K|, 16).
pub fn default_truncation(order: usize) -> usize {
    (2 * order).max(16)
}

/// Coefficients of det(I − tA) in ascending powers of t, computed with
/// the Faddeev–LeVerrier recurrence.
pub fn det_one_minus_t(a: &RMatrix) -> Vec<Cyclotomic> {
    let n = a.dimension();
    // c[i] is the coefficient of λ^i in det(λI − A)
    let mut c = vec![Cyclotomic::zero(); n + 1];
    c[n] = Cyclotomic::one();
    let mut m = RMatrix::from_rows(vec![vec![Cyclotomic::zero(); n]; n]).expect("square");
    for k in 1..=n {
        let mut next = a.mul(&m).rows();
        for (i, row) in next.iter_mut().enumerate() {
            row[i] = row[i].add(&c[n - k + 1]);
        }
        m = RMatrix::from_rows(next).expect("square");
        let am = a.mul(&m);
        let trace = (0..n).fold(Cyclotomic::zero(), |acc, i| acc.add(am.get(i, i)));
        let k_inv = Rational::new(BigInt::one(), BigInt::from(k));
        c[n - k] = trace.scale(&k_inv).neg();
    }
    // det(I − tA) = t^n det(t⁻¹I − A) = Σ c_i t^(n − i)
    c.into_iter().rev().collect()
}

/// Molien series (1/|K|) Σ_k det(I − tk)⁻¹ up to t^N. Elements sharing a
/// characteristic polynomial are inverted once.
pub fn molien(group: &ReflectionGroup, truncation: usize) -> Result<SeriesQ, SeriesError> {
    if truncation == 0 {
        return Err(SeriesError::ZeroTruncation);
    }
    let mut classes: Vec<(Vec<Cyclotomic>, usize)> = Vec::new();
    for k in group.elements() {
        let d = det_one_minus_t(k);
        match classes.iter_mut().find(|(p, _)| *p == d) {
            Some((_, count)) => *count += 1,
            None => classes.push((d, 1)),
        }
    }
    let mut sum: Series<Cyclotomic> = Series::from_coefficients(Vec::new(), truncation);
    for (poly, count) in &classes {
        let inv = Series::from_coefficients(poly.clone(), truncation)
            .reciprocal()
            .expect("det(I - 0k) = 1");
        sum = sum.add(&inv.scale(&Cyclotomic::from_int(*count as i64)));
    }
    let order_inv = Rational::new(BigInt::one(), BigInt::from(group.order()));
    let mut coeffs = Vec::with_capacity(truncation + 1);
    for (degree, c) in sum.coefficients().iter().enumerate() {
        let value = c.scale(&order_inv);
        match value.to_rational() {
            Some(r) if as_nonneg_integer(&r).is_some() => coeffs.push(r),
            _ => {
                return Err(SeriesError::NonIntegerCoefficient {
                    degree,
                    value: alloc::format!("{}", value),
                })
            }
        }
    }
    Ok(Series { coeffs })
}

/// Reads the fundamental degrees off a Molien series: 1/s must be a
/// polynomial that factors as ∏(1 − t^{dᵢ}) with n factors and
/// ∏dᵢ = |K|.
pub fn extract_degrees(
    series: &SeriesQ,
    n: usize,
    order: usize,
) -> Result<DegreeVector, SeriesError> {
    let recip = series
        .reciprocal()
        .ok_or_else(|| not_reflection("constant coefficient is zero"))?;
    let big_n = series.truncation();
    let Some(top) = recip.coefficients().iter().rposition(|c| !Zero::is_zero(c)) else {
        return Err(not_reflection("reciprocal series vanishes"));
    };
    if top >= big_n {
        return Err(not_reflection(alloc::format!(
            "reciprocal series does not terminate within truncation {big_n}"
        )));
    }
    let mut p: Vec<Rational> = recip.coefficients()[..=top].to_vec();
    let mut degrees = Vec::new();
    while p.len() > 1 {
        let d = p
            .iter()
            .skip(1)
            .position(|c| !Zero::is_zero(c))
            .map(|i| i + 1)
            .expect("a polynomial of positive degree has a nonconstant term");
        if !p[d].is_negative_integer() || degrees.len() >= n {
            return Err(not_reflection(alloc::format!(
                "reciprocal polynomial is not a product of {n} factors (1 - t^d)"
            )));
        }
        p = divide_one_minus_t_pow(&p, d)
            .ok_or_else(|| not_reflection(alloc::format!("(1 - t^{d}) does not divide the reciprocal")))?;
        degrees.push(d as u32);
    }
    if !One::is_one(&p[0]) {
        return Err(not_reflection("reciprocal does not have constant term 1"));
    }
    let dv = DegreeVector::new(degrees);
    if dv.len() != n {
        return Err(not_reflection(alloc::format!(
            "found {} factors, expected {n}",
            dv.len()
        )));
    }
    if dv.product() != order as u64 {
        return Err(not_reflection(alloc::format!(
            "degree product {} differs from group order {order}",
            dv.product()
        )));
    }
    Ok(dv)
}

trait NegativeInteger {
    fn is_negative_integer(&self) -> bool;
}

impl NegativeInteger for Rational {
    fn is_negative_integer(&self) -> bool {
        self.is_integer() && *self.numer() < BigInt::zero()
    }
}

/// Exact quotient p / (1 − t^d), or `None` when the remainder is nonzero.
fn divide_one_minus_t_pow(p: &[Rational], d: usize) -> Option<Vec<Rational>> {
    // p = q (1 − t^d)  ⇔  q_k = p_k + q_{k−d}
    let deg = p.len() - 1;
    if deg < d {
        return None;
    }
    let qlen = deg - d + 1;
    let mut q: Vec<Rational> = Vec::with_capacity(qlen);
    for k in 0..qlen {
        let mut v = p[k].clone();
        if k >= d {
            v += &q[k - d];
        }
        q.push(v);
    }
    let mut back = vec![<Rational as Zero>::zero(); deg + 1];
    for (k, c) in q.iter().enumerate() {
        back[k] += c;
        back[k + d] -= c;
    }
    if back != p {
        return None;
    }
    while q.len() > 1 && q.last().is_some_and(Zero::is_zero) {
        q.pop();
    }
    Some(q)
}

/// ∏ᵢ (1 + t + … + t^{dᵢ−1}) truncated at N. Panics if the coefficient
/// sum of the full product differs from ∏dᵢ.
pub fn harmonic_hilbert(degrees: &DegreeVector, truncation: usize) -> SeriesQ {
    let mut poly: Vec<u64> = vec![1];
    for &d in degrees.degrees() {
        let mut next = vec![0u64; poly.len() + d as usize - 1];
        for (i, &a) in poly.iter().enumerate() {
            for j in 0..d as usize {
                next[i + j] += a;
            }
        }
        poly = next;
    }
    assert_eq!(
        poly.iter().sum::<u64>(),
        degrees.product(),
        "harmonic Hilbert series must sum to the degree product"
    );
    Series::from_coefficients(
        poly.into_iter()
            .map(|c| Rational::from_integer(BigInt::from(c)))
            .collect(),
        truncation,
    )
}

/// molien · harmonic_hilbert = (1 − t)^(−n) coefficient-wise up to N.
pub fn series_identity_holds(molien: &SeriesQ, degrees: &DegreeVector, n: usize) -> bool {
    let big_n = molien.truncation();
    let lhs = molien.mul(&harmonic_hilbert(degrees, big_n));
    lhs == SeriesQ::free_hilbert(n, big_n)
}

/// Computes the Molien series, extracts the degrees and checks the
/// product identity with the harmonic Hilbert series.
pub fn series_identity_check(
    group: &ReflectionGroup,
    truncation: usize,
) -> Result<bool, SeriesError> {
    let s = molien(group, truncation)?;
    let d = extract_degrees(&s, group.dimension(), group.order())?;
    Ok(series_identity_holds(&s, &d, group.dimension()))
}
