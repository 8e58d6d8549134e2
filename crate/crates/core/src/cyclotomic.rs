//! Exact arithmetic in cyclotomic fields Q(ζ_m).
//!
//! An element of Q(ζ_m) is stored as its coefficient vector in the power
//! basis 1, ζ_m, …, ζ_m^(φ(m)−1), i.e. reduced modulo the m-th cyclotomic
//! polynomial Φ_m. That form is canonical, so equality inside one field is
//! structural. Operands of different orders are promoted to the field of
//! the lcm of their orders.

use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;
use core::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::field::Rational;

/// Largest cyclotomic order produced by mixed-order arithmetic unless a
/// caller asks for a different cap.
pub const DEFAULT_MAX_ORDER: u32 = 1 << 16;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CyclotomicError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("cyclotomic order {order} exceeds the configured bound {cap}")]
    OrderOverflow { order: u64, cap: u32 },
    #[error("cyclotomic order must be positive")]
    ZeroOrder,
}

/// The data describing Q(ζ_m): its order, degree φ(m) and Φ_m.
#[derive(Debug)]
pub struct CyclotomicField {
    order: u32,
    /// Coefficients of Φ_m, lowest degree first; monic, length φ(m) + 1.
    modulus: Vec<i64>,
}

impl CyclotomicField {
    /// Builds the field descriptor for Q(ζ_m).
    pub fn new(order: u32) -> Result<Arc<Self>, CyclotomicError> {
        if order == 0 {
            return Err(CyclotomicError::ZeroOrder);
        }
        Ok(Arc::new(CyclotomicField {
            order,
            modulus: cyclotomic_polynomial(order),
        }))
    }

    fn rational_field() -> Arc<Self> {
        Arc::new(CyclotomicField {
            order: 1,
            modulus: vec![-1, 1],
        })
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    /// φ(m), the degree of Q(ζ_m) over Q.
    pub fn degree(&self) -> usize {
        self.modulus.len() - 1
    }

    /// Coefficients of Φ_m, lowest degree first.
    pub fn modulus(&self) -> &[i64] {
        &self.modulus
    }

    /// ζ_m^k for any integer k.
    pub fn root_of_unity(self: &Arc<Self>, k: i64) -> Cyclotomic {
        let m = self.order as i64;
        let e = k.rem_euclid(m) as usize;
        let mut poly = vec![Rational::zero(); e + 1];
        poly[e] = Rational::one();
        Cyclotomic::from_poly(self.clone(), poly)
    }

    /// Embeds a rational into this field.
    pub fn rational(self: &Arc<Self>, value: Rational) -> Cyclotomic {
        Cyclotomic::from_poly(self.clone(), vec![value])
    }
}

/// Coefficients (lowest first) of the m-th cyclotomic polynomial, computed
/// as Π_{d | m} (x^d − 1)^{μ(m/d)}.
pub fn cyclotomic_polynomial(m: u32) -> Vec<i64> {
    let m = m as usize;
    let mut poly = vec![1i64];
    let mut divide_by = Vec::new();
    for d in 1..=m {
        if m % d != 0 {
            continue;
        }
        match moebius(m / d) {
            1 => {
                // multiply by x^d - 1
                let mut next = vec![0i64; poly.len() + d];
                for (i, &c) in poly.iter().enumerate() {
                    next[i + d] += c;
                    next[i] -= c;
                }
                poly = next;
            }
            -1 => divide_by.push(d),
            _ => {}
        }
    }
    for d in divide_by {
        // exact division by x^d - 1: p_i = q_{i-d} - q_i
        let qlen = poly.len() - d;
        let mut q = vec![0i64; qlen];
        for i in 0..qlen {
            let prev = if i >= d { q[i - d] } else { 0 };
            q[i] = prev - poly[i];
        }
        poly = q;
    }
    poly
}

fn moebius(mut n: usize) -> i32 {
    let mut result = 1;
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            n /= p;
            if n % p == 0 {
                return 0;
            }
            result = -result;
        }
        p += 1;
    }
    if n > 1 {
        result = -result;
    }
    result
}

/// An exact element of a cyclotomic field.
#[derive(Clone)]
pub struct Cyclotomic {
    field: Arc<CyclotomicField>,
    /// Power-basis coefficients, length exactly φ(m).
    coeffs: Vec<Rational>,
}

impl Cyclotomic {
    fn from_poly(field: Arc<CyclotomicField>, mut poly: Vec<Rational>) -> Self {
        let phi = field.degree();
        reduce_in_place(&mut poly, &field.modulus);
        poly.resize(phi, Rational::zero());
        Cyclotomic { field, coeffs: poly }
    }

    pub fn zero() -> Self {
        Self::from_rational(Rational::zero())
    }

    pub fn one() -> Self {
        Self::from_rational(Rational::one())
    }

    pub fn from_rational(value: Rational) -> Self {
        Cyclotomic {
            field: CyclotomicField::rational_field(),
            coeffs: vec![value],
        }
    }

    pub fn from_int(value: i64) -> Self {
        Self::from_rational(Rational::from_integer(BigInt::from(value)))
    }

    pub fn from_fraction(numer: i64, denom: i64) -> Self {
        Self::from_rational(Rational::new(BigInt::from(numer), BigInt::from(denom)))
    }

    /// ζ_m^k.
    pub fn root_of_unity(order: u32, k: i64) -> Result<Self, CyclotomicError> {
        Ok(CyclotomicField::new(order)?.root_of_unity(k))
    }

    /// The imaginary unit ζ_4.
    pub fn i() -> Self {
        Self::root_of_unity(4, 1).expect("order 4 is valid")
    }

    /// (ζ_m^k + ζ_m^−k)/2 = cos(2πk/m).
    pub fn cos_2pi(k: i64, m: u32) -> Result<Self, CyclotomicError> {
        let field = CyclotomicField::new(m)?;
        let sum = field.root_of_unity(k).add(&field.root_of_unity(-k));
        Ok(sum.scale(&Rational::new(BigInt::one(), BigInt::from(2))))
    }

    /// sin(2πk/m), which lives in Q(ζ_lcm(m,4)).
    pub fn sin_2pi(k: i64, m: u32) -> Result<Self, CyclotomicError> {
        let big = (m as u64).lcm(&4);
        let field = CyclotomicField::new(big as u32)?;
        let step = (big / m as u64) as i64;
        let diff = field.root_of_unity(k * step).sub(&field.root_of_unity(-k * step));
        // (ζ^k − ζ^−k) / (2i) = −i (ζ^k − ζ^−k) / 2
        let minus_i_half = field
            .root_of_unity(-(big as i64) / 4)
            .scale(&Rational::new(BigInt::one(), BigInt::from(2)));
        Ok(diff.mul(&minus_i_half))
    }

    pub fn order(&self) -> u32 {
        self.field.order
    }

    pub fn field(&self) -> &Arc<CyclotomicField> {
        &self.field
    }

    /// Coefficients in the power basis of Q(ζ_m), lowest exponent first.
    pub fn coefficients(&self) -> &[Rational] {
        &self.coeffs
    }

    /// Nonzero (exponent, coefficient) pairs of the canonical form.
    pub fn terms(&self) -> impl Iterator<Item = (usize, &Rational)> {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn is_one(&self) -> bool {
        self.coeffs[0].is_one() && self.coeffs[1..].iter().all(|c| c.is_zero())
    }

    /// True iff the canonical form only uses exponent 0.
    pub fn is_rational(&self) -> bool {
        self.coeffs[1..].iter().all(|c| c.is_zero())
    }

    /// The rational value, when [`Self::is_rational`] holds.
    pub fn to_rational(&self) -> Option<Rational> {
        self.is_rational().then(|| self.coeffs[0].clone())
    }

    /// True iff the element equals its complex conjugate.
    pub fn is_real(&self) -> bool {
        self.conj() == *self
    }

    /// True iff conj(a) = −a.
    pub fn is_imaginary(&self) -> bool {
        self.conj() == self.neg()
    }

    /// Re-expresses the element in Q(ζ_M) for a multiple M of its order.
    ///
    /// Panics if `target.order()` is not a multiple of the current order.
    pub fn promote(&self, target: &Arc<CyclotomicField>) -> Cyclotomic {
        if Arc::ptr_eq(&self.field, target) || self.field.order == target.order {
            return Cyclotomic {
                field: target.clone(),
                coeffs: self.coeffs.clone(),
            };
        }
        assert!(
            target.order % self.field.order == 0,
            "cannot promote order {} into order {}",
            self.field.order,
            target.order
        );
        let step = (target.order / self.field.order) as usize;
        let top = (self.coeffs.len().saturating_sub(1)) * step;
        let mut poly = vec![Rational::zero(); top + 1];
        for (i, c) in self.terms() {
            poly[i * step] = c.clone();
        }
        Cyclotomic::from_poly(target.clone(), poly)
    }

    /// Promotes to Q(ζ_order), building the field on the fly.
    pub fn promote_to_order(&self, order: u32) -> Result<Cyclotomic, CyclotomicError> {
        if order == self.order() {
            return Ok(self.clone());
        }
        Ok(self.promote(&CyclotomicField::new(order)?))
    }

    fn common_field(
        &self,
        other: &Self,
        cap: u32,
    ) -> Result<Arc<CyclotomicField>, CyclotomicError> {
        let (a, b) = (self.field.order, other.field.order);
        if a == b {
            return Ok(self.field.clone());
        }
        if a % b == 0 {
            return Ok(self.field.clone());
        }
        if b % a == 0 {
            return Ok(other.field.clone());
        }
        let l = (a as u64).lcm(&(b as u64));
        if l > cap as u64 {
            return Err(CyclotomicError::OrderOverflow { order: l, cap });
        }
        CyclotomicField::new(l as u32)
    }

    fn aligned(
        &self,
        other: &Self,
        cap: u32,
    ) -> Result<(Cyclotomic, Cyclotomic), CyclotomicError> {
        let field = self.common_field(other, cap)?;
        Ok((self.promote(&field), other.promote(&field)))
    }

    pub fn checked_add(&self, other: &Self, cap: u32) -> Result<Self, CyclotomicError> {
        if self.field.order == other.field.order {
            return Ok(self.add_same(other));
        }
        let (a, b) = self.aligned(other, cap)?;
        Ok(a.add_same(&b))
    }

    pub fn checked_sub(&self, other: &Self, cap: u32) -> Result<Self, CyclotomicError> {
        self.checked_add(&other.neg(), cap)
    }

    pub fn checked_mul(&self, other: &Self, cap: u32) -> Result<Self, CyclotomicError> {
        if self.field.order == other.field.order {
            return Ok(self.mul_same(other));
        }
        let (a, b) = self.aligned(other, cap)?;
        Ok(a.mul_same(&b))
    }

    pub fn checked_div(&self, other: &Self, cap: u32) -> Result<Self, CyclotomicError> {
        let inv = other.inverse()?;
        self.checked_mul(&inv, cap)
    }

    /// Sum; panics if the common order exceeds [`DEFAULT_MAX_ORDER`].
    pub fn add(&self, other: &Self) -> Self {
        self.checked_add(other, DEFAULT_MAX_ORDER)
            .expect("cyclotomic order overflow")
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.checked_sub(other, DEFAULT_MAX_ORDER)
            .expect("cyclotomic order overflow")
    }

    pub fn mul(&self, other: &Self) -> Self {
        self.checked_mul(other, DEFAULT_MAX_ORDER)
            .expect("cyclotomic order overflow")
    }

    pub fn neg(&self) -> Self {
        Cyclotomic {
            field: self.field.clone(),
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    fn add_same(&self, other: &Self) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a + b)
            .collect();
        Cyclotomic {
            field: self.field.clone(),
            coeffs,
        }
    }

    fn mul_same(&self, other: &Self) -> Self {
        if self.field.order == 1 {
            return Cyclotomic {
                field: self.field.clone(),
                coeffs: vec![&self.coeffs[0] * &other.coeffs[0]],
            };
        }
        if self.is_rational() {
            return other.scale(&self.coeffs[0]);
        }
        if other.is_rational() {
            return self.scale(&other.coeffs[0]);
        }
        let phi = self.coeffs.len();
        let mut poly = vec![Rational::zero(); 2 * phi - 1];
        for (i, a) in self.terms() {
            for (j, b) in other.terms() {
                poly[i + j] += a * b;
            }
        }
        Cyclotomic::from_poly(self.field.clone(), poly)
    }

    /// Multiplies by a rational scalar.
    pub fn scale(&self, factor: &Rational) -> Self {
        Cyclotomic {
            field: self.field.clone(),
            coeffs: self.coeffs.iter().map(|c| c * factor).collect(),
        }
    }

    /// Complex conjugation, ζ^k ↦ ζ^−k.
    pub fn conj(&self) -> Self {
        let m = self.field.order as usize;
        if m <= 2 {
            return self.clone();
        }
        let mut poly = vec![Rational::zero(); m];
        for (i, c) in self.terms() {
            poly[(m - i) % m] += c;
        }
        Cyclotomic::from_poly(self.field.clone(), poly)
    }

    /// Multiplicative inverse via the extended Euclidean algorithm in Q[x]
    /// against Φ_m.
    pub fn inverse(&self) -> Result<Self, CyclotomicError> {
        if self.is_zero() {
            return Err(CyclotomicError::DivisionByZero);
        }
        if self.is_rational() {
            return Ok(Cyclotomic::from_poly(
                self.field.clone(),
                vec![self.coeffs[0].recip()],
            ));
        }
        let modulus: Vec<Rational> = self
            .field
            .modulus
            .iter()
            .map(|&c| Rational::from_integer(BigInt::from(c)))
            .collect();
        let mut r0 = modulus;
        let mut r1 = trimmed(self.coeffs.clone());
        let mut s0: Vec<Rational> = Vec::new();
        let mut s1: Vec<Rational> = vec![Rational::one()];
        while !r1.is_empty() {
            let (q, r) = poly_divrem(&r0, &r1);
            let qs1 = poly_mul(&q, &s1);
            let s2 = poly_sub(&s0, &qs1);
            r0 = r1;
            r1 = r;
            s0 = s1;
            s1 = s2;
        }
        // r0 is a nonzero constant because Φ_m is irreducible
        debug_assert_eq!(r0.len(), 1);
        let c = r0[0].recip();
        let s: Vec<Rational> = s0.iter().map(|x| x * &c).collect();
        Ok(Cyclotomic::from_poly(self.field.clone(), s))
    }

    /// Integer power (negative exponents invert).
    pub fn pow(&self, exp: i64) -> Result<Self, CyclotomicError> {
        let base = if exp < 0 { self.inverse()? } else { self.clone() };
        let mut e = exp.unsigned_abs();
        let mut acc = Cyclotomic::one().promote(&base.field);
        let mut b = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul_same(&b);
            }
            e >>= 1;
            if e > 0 {
                b = b.mul_same(&b);
            }
        }
        Ok(acc)
    }

    /// A serialized canonical key, stable within one field order.
    pub fn canonical_key(&self) -> String {
        use core::fmt::Write;
        let mut s = String::new();
        let _ = write!(s, "{}:", self.field.order);
        for (i, c) in self.terms() {
            let _ = write!(s, "{}={};", i, c);
        }
        s
    }
}

fn trimmed(mut p: Vec<Rational>) -> Vec<Rational> {
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
    p
}

fn poly_sub(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    let n = a.len().max(b.len());
    let mut out = vec![Rational::zero(); n];
    for (i, c) in a.iter().enumerate() {
        out[i] += c;
    }
    for (i, c) in b.iter().enumerate() {
        out[i] -= c;
    }
    trimmed(out)
}

fn poly_mul(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![Rational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    trimmed(out)
}

/// Division with remainder of rational polynomials; `b` must be trimmed and
/// nonempty.
fn poly_divrem(a: &[Rational], b: &[Rational]) -> (Vec<Rational>, Vec<Rational>) {
    let mut rem = trimmed(a.to_vec());
    let db = b.len() - 1;
    let lead_inv = b[db].recip();
    if rem.len() < b.len() {
        return (Vec::new(), rem);
    }
    let mut q = vec![Rational::zero(); rem.len() - db];
    while rem.len() >= b.len() {
        let shift = rem.len() - b.len();
        let c = &rem[rem.len() - 1] * &lead_inv;
        for (j, bj) in b.iter().enumerate() {
            rem[shift + j] -= &c * bj;
        }
        q[shift] = c;
        rem.pop();
        rem = trimmed(rem);
    }
    (trimmed(q), rem)
}

/// Reduces a rational polynomial modulo a monic integer polynomial.
fn reduce_in_place(poly: &mut Vec<Rational>, modulus: &[i64]) {
    let phi = modulus.len() - 1;
    while poly.len() > phi {
        let top = poly.pop().expect("nonempty");
        if top.is_zero() {
            continue;
        }
        let base = poly.len() - phi;
        for (j, &m) in modulus[..phi].iter().enumerate() {
            if m != 0 {
                poly[base + j] -= &top * BigInt::from(m);
            }
        }
    }
}

impl PartialEq for Cyclotomic {
    fn eq(&self, other: &Self) -> bool {
        if self.field.order == other.field.order {
            return self.coeffs == other.coeffs;
        }
        match self.aligned(other, u32::MAX) {
            Ok((a, b)) => a.coeffs == b.coeffs,
            Err(_) => false,
        }
    }
}

impl Eq for Cyclotomic {}

impl PartialOrd for Cyclotomic {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Lexicographic order on power-basis coefficients. This is a total order
/// among elements of one field order; keys of ordered maps should be
/// promoted to a common order first.
impl Ord for Cyclotomic {
    fn cmp(&self, other: &Self) -> Ordering {
        if self.field.order == other.field.order {
            return self.coeffs.cmp(&other.coeffs);
        }
        match self.aligned(other, u32::MAX) {
            Ok((a, b)) => a.coeffs.cmp(&b.coeffs),
            Err(_) => self.field.order.cmp(&other.field.order),
        }
    }
}

impl fmt::Debug for Cyclotomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Cyclotomic({})", self)
    }
}

/// Canonical text form, e.g. `-1/2 - 1/2*E(5)^2 - 1/2*E(5)^3`.
impl fmt::Display for Cyclotomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, c) in self.terms() {
            let negative = c.is_negative();
            let abs = c.abs();
            if first {
                if negative {
                    f.write_str("-")?;
                }
            } else if negative {
                f.write_str(" - ")?;
            } else {
                f.write_str(" + ")?;
            }
            first = false;
            if i == 0 {
                write!(f, "{}", abs)?;
            } else if abs.is_one() {
                write!(f, "E({})^{}", self.field.order, i)?;
            } else {
                write!(f, "{}*E({})^{}", abs, self.field.order, i)?;
            }
        }
        if first {
            f.write_str("0")?;
        }
        Ok(())
    }
}

impl crate::field::Field for Cyclotomic {
    fn zero() -> Self {
        Cyclotomic::zero()
    }
    fn one() -> Self {
        Cyclotomic::one()
    }
    fn is_zero(&self) -> bool {
        Cyclotomic::is_zero(self)
    }
    fn is_one(&self) -> bool {
        Cyclotomic::is_one(self)
    }
    fn add(&self, other: &Self) -> Self {
        Cyclotomic::add(self, other)
    }
    fn sub(&self, other: &Self) -> Self {
        Cyclotomic::sub(self, other)
    }
    fn mul(&self, other: &Self) -> Self {
        Cyclotomic::mul(self, other)
    }
    fn neg(&self) -> Self {
        Cyclotomic::neg(self)
    }
    fn inv(&self) -> Option<Self> {
        self.inverse().ok()
    }
    fn from_int(value: i64) -> Self {
        Cyclotomic::from_int(value)
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident, $field_method:ident) => {
        impl $trait<&Cyclotomic> for &Cyclotomic {
            type Output = Cyclotomic;
            fn $method(self, rhs: &Cyclotomic) -> Cyclotomic {
                Cyclotomic::$field_method(self, rhs)
            }
        }
    };
}

forward_binop!(Add, add, add);
forward_binop!(Sub, sub, sub);
forward_binop!(Mul, mul, mul);

/// Panics on division by zero; use [`Cyclotomic::checked_div`] otherwise.
impl Div<&Cyclotomic> for &Cyclotomic {
    type Output = Cyclotomic;
    fn div(self, rhs: &Cyclotomic) -> Cyclotomic {
        self.checked_div(rhs, DEFAULT_MAX_ORDER)
            .expect("cyclotomic division failed")
    }
}

impl Neg for &Cyclotomic {
    type Output = Cyclotomic;
    fn neg(self) -> Cyclotomic {
        Cyclotomic::neg(self)
    }
}

impl From<Rational> for Cyclotomic {
    fn from(value: Rational) -> Self {
        Cyclotomic::from_rational(value)
    }
}

impl From<i64> for Cyclotomic {
    fn from(value: i64) -> Self {
        Cyclotomic::from_int(value)
    }
}
