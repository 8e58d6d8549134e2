//! Exact multivariate polynomials over cyclotomic coefficients, together
//! with the contragredient group action, Reynolds averaging and constant
//! coefficient differential operators.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;

use num_bigint::BigInt;
use num_traits::One;

use crate::cyclotomic::Cyclotomic;
use crate::field::Rational;
use crate::group::{RMatrix, ReflectionGroup};
use crate::linalg::{self, EchelonBasis};

/// Exponent vector of a monomial x₁^a₁ ⋯ x_n^a_n.
///
/// Ordered graded-lexicographically: total degree first, then the exponent
/// of x₁, then x₂, and so on.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monomial(pub Vec<u32>);

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial(vec![0; nvars])
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        Monomial(e)
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

/// All monomials of degree `k` in `n` variables, largest first in
/// graded-lex order (x₁^k, x₁^(k−1)x₂, …, x_n^k).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedBasis {
    pub nvars: usize,
    pub degree: u32,
    pub monomials: Vec<Monomial>,
    index: BTreeMap<Monomial, usize>,
}

impl GradedBasis {
    pub fn new(nvars: usize, degree: u32) -> Self {
        let mut monomials = Vec::new();
        let mut current = vec![0u32; nvars];
        fill_exponents(nvars, 0, degree, &mut current, &mut monomials);
        let index = monomials
            .iter()
            .enumerate()
            .map(|(i, m)| (m.clone(), i))
            .collect();
        GradedBasis {
            nvars,
            degree,
            monomials,
            index,
        }
    }

    pub fn len(&self) -> usize {
        self.monomials.len()
    }

    pub fn is_empty(&self) -> bool {
        self.monomials.is_empty()
    }

    pub fn position(&self, m: &Monomial) -> Option<usize> {
        self.index.get(m).copied()
    }

    /// Coordinates of a homogeneous polynomial of this degree. Panics if
    /// `p` has terms of another degree.
    pub fn coordinates(&self, p: &Poly) -> Vec<Cyclotomic> {
        let mut v = vec![Cyclotomic::zero(); self.len()];
        for (m, c) in &p.terms {
            let i = self
                .position(m)
                .expect("polynomial is not homogeneous of the basis degree");
            v[i] = c.clone();
        }
        v
    }

    pub fn polynomial(&self, coords: &[Cyclotomic]) -> Poly {
        let mut p = Poly::zero(self.nvars);
        for (m, c) in self.monomials.iter().zip(coords) {
            p.add_term(m.clone(), c.clone());
        }
        p
    }
}

fn fill_exponents(
    nvars: usize,
    var: usize,
    remaining: u32,
    current: &mut Vec<u32>,
    out: &mut Vec<Monomial>,
) {
    if nvars == 0 {
        if remaining == 0 {
            out.push(Monomial(Vec::new()));
        }
        return;
    }
    if var == nvars - 1 {
        current[var] = remaining;
        out.push(Monomial(current.clone()));
        current[var] = 0;
        return;
    }
    for e in (0..=remaining).rev() {
        current[var] = e;
        fill_exponents(nvars, var + 1, remaining - e, current, out);
    }
    current[var] = 0;
}

/// Binomial coefficient C(n, k) as u64.
pub fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1u64, |acc, i| acc * (n - i) / (i + 1))
}

/// dim S^k for n variables, C(k + n − 1, n − 1).
pub fn homogeneous_dimension(nvars: usize, degree: u32) -> u64 {
    if nvars == 0 {
        return u64::from(degree == 0);
    }
    binomial(degree as u64 + nvars as u64 - 1, nvars as u64 - 1)
}

/// A polynomial in x₁ … x_n with exact cyclotomic coefficients.
#[derive(Clone, PartialEq, Eq)]
pub struct Poly {
    nvars: usize,
    terms: BTreeMap<Monomial, Cyclotomic>,
}

impl Poly {
    pub fn zero(nvars: usize) -> Self {
        Poly {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(nvars: usize, c: Cyclotomic) -> Self {
        let mut p = Poly::zero(nvars);
        p.add_term(Monomial::one(nvars), c);
        p
    }

    pub fn one(nvars: usize) -> Self {
        Poly::constant(nvars, Cyclotomic::one())
    }

    /// The variable x_{i+1} (zero-based index).
    pub fn var(nvars: usize, i: usize) -> Self {
        assert!(i < nvars, "variable index out of range");
        let mut p = Poly::zero(nvars);
        p.add_term(Monomial::var(nvars, i), Cyclotomic::one());
        p
    }

    pub fn monomial(m: Monomial, c: Cyclotomic) -> Self {
        let mut p = Poly::zero(m.0.len());
        p.add_term(m, c);
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Cyclotomic)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coefficient(&self, m: &Monomial) -> Cyclotomic {
        self.terms.get(m).cloned().unwrap_or_else(Cyclotomic::zero)
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().next_back().map(Monomial::degree)
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut degs = self.terms.keys().map(Monomial::degree);
        match degs.next() {
            None => true,
            Some(d) => degs.all(|e| e == d),
        }
    }

    /// The constant term.
    pub fn constant_term(&self) -> Cyclotomic {
        self.coefficient(&Monomial::one(self.nvars))
    }

    /// Leading (graded-lex largest) term.
    pub fn leading_term(&self) -> Option<(&Monomial, &Cyclotomic)> {
        self.terms.iter().next_back()
    }

    /// The homogeneous component of degree `k`.
    pub fn homogeneous_component(&self, k: u32) -> Poly {
        Poly {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.degree() == k)
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    pub fn add_term(&mut self, m: Monomial, c: Cyclotomic) {
        assert_eq!(m.0.len(), self.nvars, "monomial arity mismatch");
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(existing) => {
                let sum = existing.add(&c);
                if sum.is_zero() {
                    self.terms.remove(&m);
                } else {
                    *existing = sum;
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    pub fn add(&self, other: &Poly) -> Poly {
        assert_eq!(self.nvars, other.nvars, "polynomial arity mismatch");
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Poly {
        self.scale(&Cyclotomic::from_int(-1))
    }

    pub fn scale(&self, c: &Cyclotomic) -> Poly {
        if c.is_zero() {
            return Poly::zero(self.nvars);
        }
        Poly {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(m, x)| (m.clone(), x.mul(c)))
                .collect(),
        }
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        assert_eq!(self.nvars, other.nvars, "polynomial arity mismatch");
        let mut out = Poly::zero(self.nvars);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                out.add_term(m1.mul(m2), c1.mul(c2));
            }
        }
        out
    }

    pub fn pow(&self, e: u32) -> Poly {
        let mut acc = Poly::one(self.nvars);
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// Divides every coefficient so that the leading coefficient is 1.
    pub fn monic(&self) -> Poly {
        match self.leading_term() {
            None => self.clone(),
            Some((_, c)) => {
                let inv = c.inverse().expect("leading coefficient is nonzero");
                self.scale(&inv)
            }
        }
    }

    /// ∂/∂x_{i+1}.
    pub fn partial(&self, i: usize) -> Poly {
        let mut out = Poly::zero(self.nvars);
        for (m, c) in &self.terms {
            let e = m.0[i];
            if e == 0 {
                continue;
            }
            let mut m2 = m.clone();
            m2.0[i] -= 1;
            out.add_term(m2, c.mul(&Cyclotomic::from_int(e as i64)));
        }
        out
    }

    /// Evaluates at a point with cyclotomic coordinates.
    pub fn evaluate(&self, point: &[Cyclotomic]) -> Cyclotomic {
        assert_eq!(point.len(), self.nvars, "point dimension mismatch");
        // cache powers per variable
        let maxdeg: Vec<u32> = (0..self.nvars)
            .map(|i| self.terms.keys().map(|m| m.0[i]).max().unwrap_or(0))
            .collect();
        let powers: Vec<Vec<Cyclotomic>> = point
            .iter()
            .zip(&maxdeg)
            .map(|(x, &d)| {
                let mut p = Vec::with_capacity(d as usize + 1);
                p.push(Cyclotomic::one());
                for k in 1..=d as usize {
                    let next = p[k - 1].mul(x);
                    p.push(next);
                }
                p
            })
            .collect();
        let mut acc = Cyclotomic::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (i, &e) in m.0.iter().enumerate() {
                if e > 0 {
                    t = t.mul(&powers[i][e as usize]);
                }
            }
            acc = acc.add(&t);
        }
        acc
    }

    /// True iff every coefficient is rational.
    pub fn has_rational_coefficients(&self) -> bool {
        self.terms.values().all(Cyclotomic::is_rational)
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly({})", self)
    }
}

/// Report text form, e.g. `(1/2)*x1^2 + (1/2)*x2^2`: terms in descending
/// graded-lex order, coefficients in the scalar syntax, parenthesized
/// unless equal to 1.
impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let mut first = true;
        for (m, c) in self.terms.iter().rev() {
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            let mono = monomial_text(m);
            match (mono.is_empty(), c.is_one()) {
                (true, _) => write!(f, "({})", c)?,
                (false, true) => f.write_str(&mono)?,
                (false, false) => write!(f, "({})*{}", c, mono)?,
            }
        }
        Ok(())
    }
}

fn monomial_text(m: &Monomial) -> String {
    use core::fmt::Write;
    let mut s = String::new();
    for (i, &e) in m.0.iter().enumerate() {
        if e == 0 {
            continue;
        }
        if !s.is_empty() {
            s.push('*');
        }
        let _ = write!(s, "x{}", i + 1);
        if e > 1 {
            let _ = write!(s, "^{}", e);
        }
    }
    s
}

/// Images of the variables under x ↦ kᵀx: variable i goes to
/// Σ_j k[j][i] x_j.
fn substitution_images(k: &RMatrix) -> Vec<Poly> {
    let n = k.dimension();
    (0..n)
        .map(|i| {
            let mut p = Poly::zero(n);
            for j in 0..n {
                p.add_term(Monomial::var(n, j), k.get(j, i).clone());
            }
            p
        })
        .collect()
}

/// The contragredient action on polynomials: (k·p)(x) = p(kᵀx).
pub fn act(k: &RMatrix, p: &Poly) -> Poly {
    assert_eq!(k.dimension(), p.nvars, "dimension mismatch");
    let n = p.nvars;
    let images = substitution_images(k);
    let mut powers: Vec<Vec<Poly>> = images.iter().map(|im| vec![Poly::one(n), im.clone()]).collect();
    let mut out = Poly::zero(n);
    for (m, c) in &p.terms {
        let mut t = Poly::constant(n, c.clone());
        for (i, &e) in m.0.iter().enumerate() {
            if e == 0 {
                continue;
            }
            while powers[i].len() <= e as usize {
                let next = powers[i].last().expect("nonempty").mul(&images[i]);
                powers[i].push(next);
            }
            t = t.mul(&powers[i][e as usize]);
        }
        out = out.add(&t);
    }
    out
}

/// Reynolds operator (1/|K|) Σ_k k·p, the projection onto invariants.
pub fn reynolds(group: &ReflectionGroup, p: &Poly) -> Poly {
    let mut sum = Poly::zero(p.nvars);
    for k in group.elements() {
        sum = sum.add(&act(k, p));
    }
    let inv = Rational::new(BigInt::one(), BigInt::from(group.order()));
    sum.scale(&Cyclotomic::from_rational(inv))
}

/// Applies the constant coefficient operator P(∂/∂x₁, …, ∂/∂x_n) to
/// `target`.
pub fn diff_apply(operator_symbol: &Poly, target: &Poly) -> Poly {
    assert_eq!(operator_symbol.nvars, target.nvars, "dimension mismatch");
    let mut out = Poly::zero(target.nvars);
    for (a, ca) in &operator_symbol.terms {
        for (b, cb) in &target.terms {
            if a.0.iter().zip(&b.0).any(|(x, y)| x > y) {
                continue;
            }
            // ∂^a x^b = Π b_i!/(b_i − a_i)! x^(b − a)
            let mut factor = BigInt::one();
            for (&ai, &bi) in a.0.iter().zip(&b.0) {
                for t in (bi - ai + 1)..=bi {
                    factor *= BigInt::from(t);
                }
            }
            let m = Monomial(a.0.iter().zip(&b.0).map(|(x, y)| y - x).collect());
            let coeff = ca
                .mul(cb)
                .mul(&Cyclotomic::from_rational(Rational::from_integer(factor)));
            out.add_term(m, coeff);
        }
    }
    out
}

/// Basis of the K-invariant homogeneous polynomials of degree `k`, as the
/// reduced row echelon form of the Reynolds images of the degree-k
/// monomials (leading coefficients 1).
pub fn invariant_subspace(group: &ReflectionGroup, degree: u32) -> Vec<Poly> {
    let basis = GradedBasis::new(group.dimension(), degree);
    let mut rows: Vec<Vec<Cyclotomic>> = Vec::with_capacity(basis.len());
    let mut echelon = EchelonBasis::new(basis.len());
    for m in &basis.monomials {
        let avg = reynolds(group, &Poly::monomial(m.clone(), Cyclotomic::one()));
        let coords = basis.coordinates(&avg);
        if echelon.insert(&coords) {
            rows.push(coords);
        }
    }
    linalg::rref(&mut rows);
    rows.iter().map(|r| basis.polynomial(r)).collect()
}

/// Every Reynolds image of a monomial of degree at most |K|. By Noether's
/// bound these span a generating set of the invariant ring; the list is
/// exhaustive and heavily redundant.
pub fn noether_spanning_set(group: &ReflectionGroup) -> Vec<Poly> {
    let n = group.dimension();
    let mut out = Vec::new();
    for d in 0..=group.order() as u32 {
        for m in GradedBasis::new(n, d).monomials {
            let r = reynolds(group, &Poly::monomial(m, Cyclotomic::one()));
            if !r.is_zero() {
                out.push(r);
            }
        }
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum JacobianError {
    #[error("expected {expected} polynomials, got {found}")]
    CountMismatch { expected: usize, found: usize },
}

/// Jacobian criterion: the polynomials are algebraically independent iff
/// det(∂j_i/∂x_l) is a nonzero polynomial (characteristic zero).
pub fn jacobian_independent(polys: &[Poly]) -> Result<bool, JacobianError> {
    let n = polys.first().map_or(0, |p| p.nvars);
    if polys.len() != n || polys.iter().any(|p| p.nvars != n) {
        return Err(JacobianError::CountMismatch {
            expected: n,
            found: polys.len(),
        });
    }
    let jac: Vec<Vec<Poly>> = polys
        .iter()
        .map(|p| (0..n).map(|l| p.partial(l)).collect())
        .collect();
    Ok(!poly_determinant(&jac, n).is_zero())
}

/// Determinant of a square polynomial matrix by Laplace expansion along
/// the first row.
pub fn poly_determinant(m: &[Vec<Poly>], nvars: usize) -> Poly {
    let size = m.len();
    match size {
        0 => Poly::one(nvars),
        1 => m[0][0].clone(),
        _ => {
            let mut det = Poly::zero(nvars);
            for col in 0..size {
                if m[0][col].is_zero() {
                    continue;
                }
                let minor: Vec<Vec<Poly>> = m[1..]
                    .iter()
                    .map(|row| {
                        row.iter()
                            .enumerate()
                            .filter(|(j, _)| *j != col)
                            .map(|(_, p)| p.clone())
                            .collect()
                    })
                    .collect();
                let term = m[0][col].mul(&poly_determinant(&minor, nvars));
                det = if col % 2 == 0 { det.add(&term) } else { det.sub(&term) };
            }
            det
        }
    }
}
