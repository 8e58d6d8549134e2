//! Weights, the finite model of the induced representation Ind(χ_λ) of
//! ℝⁿ ⋊ K, its embedding into plane-wave sums, and the rank and commutant
//! certificates for dim E_λ = |K| and irreducibility.
//!
//! Conventions: the orbit point of k ∈ K is μ_k = kλ, so the plane wave
//! attached to k is e^{⟨kλ, x⟩} = e^{λᵀkᵀx}. Pairings are the bilinear dot
//! product. The model space is functions v: K → ℂ with
//! (π(y, k)v)(h) = exp(−⟨hλ, y⟩)·v(k⁻¹h), and F(v) = Σ_h v(h)·e^{⟨hλ, x⟩}.

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::cyclotomic::Cyclotomic;
use crate::group::{GroupElement, ReflectionGroup};
use crate::invariants::{FundamentalInvariants, HarmonicSpace};
use crate::linalg;
use crate::modular;
use crate::numeric::{FixedComplex, Numeric};
use crate::poly::{diff_apply, Poly};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum EigenError {
    #[error("weight entry {index} is not purely imaginary")]
    NotImaginary { index: usize },
    #[error("expected a vector of length {expected}, got {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("translation entries must be real")]
    NonRealTranslation,
    #[error("samples miss {missing} rotation parts")]
    InsufficientSamples { missing: usize },
    #[error("sample translations span a space of dimension {rank}, need {dimension}")]
    SamplesNotSpanning { rank: usize, dimension: usize },
    #[error("harmonic basis has {found} elements, expected {expected}")]
    HarmonicSize { expected: usize, found: usize },
}

/// Bilinear pairing Σ aᵢbᵢ.
pub fn dot(a: &[Cyclotomic], b: &[Cyclotomic]) -> Cyclotomic {
    a.iter()
        .zip(b)
        .fold(Cyclotomic::zero(), |acc, (x, y)| {
            if x.is_zero() || y.is_zero() {
                acc
            } else {
                acc.add(&x.mul(y))
            }
        })
}

/// λ ∈ (iℝ)ⁿ with exact cyclotomic entries.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Weight {
    lambda: Vec<Cyclotomic>,
}

impl Weight {
    pub fn new(lambda: Vec<Cyclotomic>) -> Result<Self, EigenError> {
        if let Some(index) = lambda.iter().position(|x| !x.is_imaginary()) {
            return Err(EigenError::NotImaginary { index });
        }
        Ok(Weight { lambda })
    }

    pub fn zero(n: usize) -> Self {
        Weight {
            lambda: vec![Cyclotomic::zero(); n],
        }
    }

    /// i·(ℓ₁, …, ℓ_n).
    pub fn imaginary_integers(values: &[i64]) -> Self {
        let i = Cyclotomic::i();
        Weight {
            lambda: values.iter().map(|&v| i.mul(&Cyclotomic::from_int(v))).collect(),
        }
    }

    /// i·(w + s·w): a weight fixed by the element `s` when s² = e.
    pub fn fixed_by(group: &ReflectionGroup, s: usize, w: &[i64]) -> Self {
        let real: Vec<Cyclotomic> = w.iter().map(|&v| Cyclotomic::from_int(v)).collect();
        let moved = group.element(s).apply(&real);
        let i = Cyclotomic::i();
        Weight {
            lambda: real.iter().zip(&moved).map(|(a, b)| i.mul(&a.add(b))).collect(),
        }
    }

    pub fn lambda(&self) -> &[Cyclotomic] {
        &self.lambda
    }

    pub fn dimension(&self) -> usize {
        self.lambda.len()
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, x) in self.lambda.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{}", x)?;
        }
        Ok(())
    }
}

/// True iff kλ ≠ λ for every k ≠ e.
pub fn is_generic(group: &ReflectionGroup, w: &Weight) -> bool {
    group
        .elements()
        .iter()
        .skip(1)
        .all(|k| k.apply(w.lambda()) != w.lambda())
}

/// The points μ_k = kλ and their classes of equal points.
#[derive(Debug, Clone)]
pub struct Orbit {
    pub points: Vec<Vec<Cyclotomic>>,
    /// Element indices grouped by equal point, in order of first appearance.
    pub classes: Vec<Vec<usize>>,
    pub class_of: Vec<usize>,
}

impl Orbit {
    pub fn distinct(&self) -> usize {
        self.classes.len()
    }

    /// Size of every class, which is |Stab(λ)|.
    pub fn multiplicity(&self) -> usize {
        self.classes[0].len()
    }
}

pub fn orbit(group: &ReflectionGroup, w: &Weight) -> Orbit {
    let points: Vec<Vec<Cyclotomic>> = group.elements().iter().map(|k| k.apply(w.lambda())).collect();
    let mut classes: Vec<Vec<usize>> = Vec::new();
    let mut class_of = Vec::with_capacity(points.len());
    for (i, p) in points.iter().enumerate() {
        match classes.iter().position(|c| points[c[0]] == *p) {
            Some(c) => {
                classes[c].push(i);
                class_of.push(c);
            }
            None => {
                class_of.push(classes.len());
                classes.push(vec![i]);
            }
        }
    }
    assert_eq!(points.len() % classes.len(), 0, "orbit size divides |K|");
    assert!(
        classes.iter().all(|c| c.len() == classes[0].len()),
        "orbit classes are cosets of the stabilizer"
    );
    Orbit {
        points,
        classes,
        class_of,
    }
}

/// Finite formal sum Σ c·exp(s) with pairwise distinct arguments s and
/// nonzero coefficients c.
#[derive(Clone, Default)]
pub struct FormalExp {
    terms: Vec<(Cyclotomic, Cyclotomic)>,
}

impl FormalExp {
    pub fn zero() -> Self {
        FormalExp { terms: Vec::new() }
    }

    pub fn one() -> Self {
        Self::term(Cyclotomic::one(), Cyclotomic::zero())
    }

    /// c·exp(s).
    pub fn term(c: Cyclotomic, s: Cyclotomic) -> Self {
        let mut out = FormalExp::zero();
        out.add_term(c, s);
        out
    }

    /// exp(s).
    pub fn exp(s: Cyclotomic) -> Self {
        Self::term(Cyclotomic::one(), s)
    }

    pub fn constant(c: Cyclotomic) -> Self {
        Self::term(c, Cyclotomic::zero())
    }

    /// (coefficient, argument) pairs.
    pub fn terms(&self) -> &[(Cyclotomic, Cyclotomic)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, c: Cyclotomic, s: Cyclotomic) {
        if c.is_zero() {
            return;
        }
        match self.terms.iter().position(|(_, t)| *t == s) {
            Some(i) => {
                let sum = self.terms[i].0.add(&c);
                if sum.is_zero() {
                    self.terms.swap_remove(i);
                } else {
                    self.terms[i].0 = sum;
                }
            }
            None => self.terms.push((c, s)),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (c, s) in &other.terms {
            out.add_term(c.clone(), s.clone());
        }
        out
    }

    pub fn neg(&self) -> Self {
        FormalExp {
            terms: self.terms.iter().map(|(c, s)| (c.neg(), s.clone())).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = FormalExp::zero();
        for (c1, s1) in &self.terms {
            for (c2, s2) in &other.terms {
                out.add_term(c1.mul(c2), s1.add(s2));
            }
        }
        out
    }

    pub fn scale(&self, c: &Cyclotomic) -> Self {
        if c.is_zero() {
            return FormalExp::zero();
        }
        FormalExp {
            terms: self.terms.iter().map(|(x, s)| (x.mul(c), s.clone())).collect(),
        }
    }

    /// Numeric value Σ c·e^{s}.
    pub fn evaluate(&self, num: &Numeric) -> FixedComplex {
        self.terms
            .iter()
            .fold(FixedComplex::zero(num.frac()), |acc, (c, s)| {
                &acc + &(&num.embed(c) * &num.exp(&num.embed(s)))
            })
    }
}

impl PartialEq for FormalExp {
    fn eq(&self, other: &Self) -> bool {
        self.terms.len() == other.terms.len()
            && self
                .terms
                .iter()
                .all(|(c, s)| other.terms.iter().any(|(c2, s2)| s == s2 && c == c2))
    }
}

impl Eq for FormalExp {}

impl fmt::Debug for FormalExp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Display for FormalExp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (c, s)) in self.terms.iter().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            if s.is_zero() {
                write!(f, "({})", c)?;
            } else {
                write!(f, "({})*exp({})", c, s)?;
            }
        }
        Ok(())
    }
}

/// Σ_j c_j·e^{⟨μ_j, x⟩} with FormalExp coefficients and distinct μ_j.
#[derive(Clone, Default)]
pub struct PlaneWaveSum {
    terms: Vec<(Vec<Cyclotomic>, FormalExp)>,
}

impl PlaneWaveSum {
    pub fn zero() -> Self {
        PlaneWaveSum { terms: Vec::new() }
    }

    pub fn plane_wave(mu: Vec<Cyclotomic>) -> Self {
        let mut out = Self::zero();
        out.add_term(mu, FormalExp::one());
        out
    }

    pub fn terms(&self) -> &[(Vec<Cyclotomic>, FormalExp)] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, mu: Vec<Cyclotomic>, c: FormalExp) {
        if c.is_zero() {
            return;
        }
        match self.terms.iter().position(|(m, _)| *m == mu) {
            Some(i) => {
                let sum = self.terms[i].1.add(&c);
                if sum.is_zero() {
                    self.terms.swap_remove(i);
                } else {
                    self.terms[i].1 = sum;
                }
            }
            None => self.terms.push((mu, c)),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (mu, c) in &other.terms {
            out.add_term(mu.clone(), c.clone());
        }
        out
    }
}

impl PartialEq for PlaneWaveSum {
    fn eq(&self, other: &Self) -> bool {
        self.terms.len() == other.terms.len()
            && self
                .terms
                .iter()
                .all(|(m, c)| other.terms.iter().any(|(m2, c2)| m == m2 && c == c2))
    }
}

impl Eq for PlaneWaveSum {}

impl fmt::Debug for PlaneWaveSum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("PlaneWaveSum[")?;
        for (i, (mu, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                f.write_str("; ")?;
            }
            write!(f, "{} * e<{:?}, x>", c, mu)?;
        }
        f.write_str("]")
    }
}

/// Coordinates of a model vector in the basis δ_h, h ∈ K.
pub type ModelVector = Vec<FormalExp>;

/// The |K|-dimensional model of Ind(χ_λ).
#[derive(Debug, Clone)]
pub struct InducedModel<'a> {
    group: &'a ReflectionGroup,
    weight: Weight,
    orbit: Orbit,
}

impl<'a> InducedModel<'a> {
    pub fn new(group: &'a ReflectionGroup, weight: Weight) -> Result<Self, EigenError> {
        if weight.dimension() != group.dimension() {
            return Err(EigenError::DimensionMismatch {
                expected: group.dimension(),
                found: weight.dimension(),
            });
        }
        let orbit = orbit(group, &weight);
        Ok(InducedModel {
            group,
            weight,
            orbit,
        })
    }

    pub fn group(&self) -> &ReflectionGroup {
        self.group
    }

    pub fn weight(&self) -> &Weight {
        &self.weight
    }

    pub fn orbit(&self) -> &Orbit {
        &self.orbit
    }

    pub fn dimension(&self) -> usize {
        self.group.order()
    }

    /// δ_h.
    pub fn basis_vector(&self, h: usize) -> ModelVector {
        let mut v = vec![FormalExp::zero(); self.dimension()];
        v[h] = FormalExp::one();
        v
    }

    /// The K-fixed vector u = Σ_h δ_h.
    pub fn fixed_vector(&self) -> ModelVector {
        vec![FormalExp::one(); self.dimension()]
    }

    /// Exact model vector with the given scalar coordinates.
    pub fn vector(&self, coords: &[Cyclotomic]) -> ModelVector {
        coords.iter().map(|c| FormalExp::constant(c.clone())).collect()
    }

    fn check_element(&self, g: &GroupElement) -> Result<(), EigenError> {
        if g.translation.len() != self.group.dimension() {
            return Err(EigenError::DimensionMismatch {
                expected: self.group.dimension(),
                found: g.translation.len(),
            });
        }
        if !g.is_valid() {
            return Err(EigenError::NonRealTranslation);
        }
        Ok(())
    }
}

/// (π(y, k)v)(h) = exp(−⟨hλ, y⟩)·v(k⁻¹h).
pub fn model_act(
    m: &InducedModel<'_>,
    g: &GroupElement,
    v: &[FormalExp],
) -> Result<ModelVector, EigenError> {
    m.check_element(g)?;
    if v.len() != m.dimension() {
        return Err(EigenError::DimensionMismatch {
            expected: m.dimension(),
            found: v.len(),
        });
    }
    let kinv = m.group.inverse_index(g.rotation);
    Ok((0..m.dimension())
        .map(|h| {
            let src = &v[m.group.product_index(kinv, h)];
            let arg = dot(&m.orbit.points[h], &g.translation).neg();
            if arg.is_zero() {
                src.clone()
            } else {
                src.mul(&FormalExp::exp(arg))
            }
        })
        .collect())
}

/// F(v) = Σ_h v(h)·e^{⟨hλ, x⟩}.
pub fn intertwiner(m: &InducedModel<'_>, v: &[FormalExp]) -> PlaneWaveSum {
    let mut out = PlaneWaveSum::zero();
    for (h, c) in v.iter().enumerate() {
        out.add_term(m.orbit.points[h].clone(), c.clone());
    }
    out
}

/// (T(y, k)f)(x) = f(k⁻¹(x − y)), which sends e^{⟨μ, x⟩} to
/// exp(−⟨kμ, y⟩)·e^{⟨kμ, x⟩}.
pub fn translate_plane_waves(
    group: &ReflectionGroup,
    g: &GroupElement,
    p: &PlaneWaveSum,
) -> PlaneWaveSum {
    let k = group.element(g.rotation);
    let mut out = PlaneWaveSum::zero();
    for (mu, c) in p.terms() {
        let kmu = k.apply(mu);
        let arg = dot(&kmu, &g.translation).neg();
        let coeff = if arg.is_zero() {
            c.clone()
        } else {
            c.mul(&FormalExp::exp(arg))
        };
        out.add_term(kmu, coeff);
    }
    out
}

/// F(π(g)v) = T(g)F(v) as a formal identity.
pub fn equivariance_check(
    m: &InducedModel<'_>,
    g: &GroupElement,
    v: &[FormalExp],
) -> Result<bool, EigenError> {
    let lhs = intertwiner(m, &model_act(m, g, v)?);
    let rhs = translate_plane_waves(m.group, g, &intertwiner(m, v));
    Ok(lhs == rhs)
}

/// P(∂)e^{⟨μ, x⟩} = P(μ)e^{⟨μ, x⟩}: the eigenvalue of the operator with
/// symbol P on the plane waves of the weight.
pub fn eigenvalue(symbol: &Poly, w: &Weight) -> Cyclotomic {
    symbol.evaluate(w.lambda())
}

/// Independent check of P(∂)e^{⟨μ, x⟩} = P(μ)e^{⟨μ, x⟩} on the Taylor
/// components: with E_m = ⟨μ, x⟩^m / m!, the degree-m part of the left
/// side is Σ_d P_d(∂)E_{m+d}, which must equal P(μ)·E_m for m < depth.
pub fn plane_wave_symbol_check(symbol: &Poly, mu: &[Cyclotomic], depth: u32) -> bool {
    let n = mu.len();
    let linear = mu.iter().enumerate().fold(Poly::zero(n), |acc, (i, c)| {
        acc.add(&Poly::var(n, i).scale(c))
    });
    let top = symbol.degree().unwrap_or(0);
    let taylor = |m: u32| {
        let mut fact = num_bigint::BigInt::from(1u32);
        for j in 2..=m {
            fact *= j;
        }
        let inv = crate::field::Rational::new(num_bigint::BigInt::from(1u32), fact);
        linear.pow(m).scale(&Cyclotomic::from_rational(inv))
    };
    let value = symbol.evaluate(mu);
    (0..depth).all(|m| {
        let lhs = (0..=top).fold(Poly::zero(n), |acc, d| {
            let pd = symbol.homogeneous_component(d);
            if pd.is_zero() {
                acc
            } else {
                acc.add(&diff_apply(&pd, &taylor(m + d)))
            }
        });
        lhs == taylor(m).scale(&value)
    })
}

/// Every plane wave of `p` has jᵢ(μ) = jᵢ(λ) for every generator.
pub fn eigen_check(p: &PlaneWaveSum, f: &FundamentalInvariants, w: &Weight) -> bool {
    f.generators.iter().all(|j| {
        let target = j.evaluate(w.lambda());
        p.terms().iter().all(|(mu, _)| j.evaluate(mu) == target)
    })
}

/// Rank test for "u* generates the dual": the functionals v ↦ F(v)(y) for
/// the sampled translations y, i.e. rows (e^{⟨hλ, y⟩})_h, must have full
/// numeric rank.
pub fn dual_cyclic_check(
    m: &InducedModel<'_>,
    samples: &[GroupElement],
    precision: u32,
) -> Result<bool, EigenError> {
    let mut seen = vec![false; m.dimension()];
    for g in samples {
        m.check_element(g)?;
        seen[g.rotation] = true;
    }
    let missing = seen.iter().filter(|s| !**s).count();
    if missing > 0 {
        return Err(EigenError::InsufficientSamples { missing });
    }
    let num = Numeric::new(precision.max(128));
    let rows: Vec<Vec<FixedComplex>> = samples
        .iter()
        .map(|g| {
            m.orbit
                .points
                .iter()
                .map(|mu| num.exp(&num.embed(&dot(mu, &g.translation))))
                .collect()
        })
        .collect();
    Ok(num.numeric_rank(&rows) == m.dimension())
}

/// M[i][k] = Hᵢ(μ_k) for the harmonic basis Hᵢ and orbit points μ_k.
pub fn evaluation_matrix(
    m: &InducedModel<'_>,
    h: &HarmonicSpace,
) -> Result<Vec<Vec<Cyclotomic>>, EigenError> {
    if h.total_dimension() != m.dimension() {
        return Err(EigenError::HarmonicSize {
            expected: m.dimension(),
            found: h.total_dimension(),
        });
    }
    Ok(h.basis()
        .map(|p| m.orbit.points.iter().map(|mu| p.evaluate(mu)).collect())
        .collect())
}

/// Evaluation at a base point x₀: (∂(Hᵢ)e^{⟨μ_k, ·⟩})(x₀) = Hᵢ(μ_k)·e^{⟨μ_k, x₀⟩}.
/// Returns the exact part and the per-column factors exp(⟨μ_k, x₀⟩);
/// the factors are units, so the rank is that of the exact part.
pub fn evaluation_matrix_at(
    m: &InducedModel<'_>,
    h: &HarmonicSpace,
    base_point: &[Cyclotomic],
) -> Result<(Vec<Vec<Cyclotomic>>, Vec<FormalExp>), EigenError> {
    if base_point.len() != m.group.dimension() {
        return Err(EigenError::DimensionMismatch {
            expected: m.group.dimension(),
            found: base_point.len(),
        });
    }
    let exact = evaluation_matrix(m, h)?;
    let factors = m
        .orbit
        .points
        .iter()
        .map(|mu| FormalExp::exp(dot(mu, base_point)))
        .collect();
    Ok((exact, factors))
}

/// Exact rank of an evaluation matrix. Equal columns bound the rank by
/// the number of distinct columns, and a modular rank meeting that bound
/// certifies it without elimination over Q(ζ).
pub fn evaluation_rank(matrix: &[Vec<Cyclotomic>]) -> usize {
    let ncols = matrix.first().map_or(0, Vec::len);
    let mut distinct: Vec<usize> = Vec::new();
    for k in 0..ncols {
        if !distinct.iter().any(|&j| matrix.iter().all(|row| row[j] == row[k])) {
            distinct.push(k);
        }
    }
    modular::certified_rank(matrix, distinct.len())
}

/// Rank of the evaluation matrix without forming it over Q(ζ). Equal
/// orbit points give equal columns, so the number of distinct points
/// bounds the rank.
pub fn harmonic_evaluation_rank(m: &InducedModel<'_>, h: &HarmonicSpace) -> Result<usize, EigenError> {
    if h.total_dimension() != m.dimension() {
        return Err(EigenError::HarmonicSize {
            expected: m.dimension(),
            found: h.total_dimension(),
        });
    }
    let polys: Vec<&Poly> = h.basis().collect();
    let points: Vec<Vec<Cyclotomic>> = m.orbit.classes.iter().map(|c| m.orbit.points[c[0]].clone()).collect();
    Ok(modular::certified_evaluation_rank(&polys, &points, points.len()))
}

/// Exact commutant dimension. Translations force A to be supported on
/// pairs (h, h') with equal orbit points; rotations then force A to be
/// constant along K-orbits of such pairs under left multiplication, which
/// act freely. Counts those orbits.
pub fn commutant_dimension_exact(m: &InducedModel<'_>) -> usize {
    let order = m.dimension();
    let mut visited = vec![false; order * order];
    let mut count = 0;
    for a in 0..order {
        for b in 0..order {
            if visited[a * order + b] || m.orbit.class_of[a] != m.orbit.class_of[b] {
                continue;
            }
            count += 1;
            for k in 0..order {
                let (ka, kb) = (m.group.product_index(k, a), m.group.product_index(k, b));
                visited[ka * order + kb] = true;
            }
        }
    }
    count
}

/// Monomial matrix P with P[r][col[r]] = value[r].
struct MonomialMatrix {
    col: Vec<usize>,
    value: Vec<FixedComplex>,
}

fn numeric_action(
    m: &InducedModel<'_>,
    num: &Numeric,
    g: &GroupElement,
) -> MonomialMatrix {
    let kinv = m.group.inverse_index(g.rotation);
    let col = (0..m.dimension()).map(|h| m.group.product_index(kinv, h)).collect();
    let value = (0..m.dimension())
        .map(|h| {
            let arg = dot(&m.orbit.points[h], &g.translation).neg();
            if arg.is_zero() {
                FixedComplex::one(num.frac())
            } else {
                num.exp(&num.embed(&arg))
            }
        })
        .collect();
    MonomialMatrix { col, value }
}

fn sample_elements(
    m: &InducedModel<'_>,
    translations: &[Vec<Cyclotomic>],
) -> Result<Vec<GroupElement>, EigenError> {
    let n = m.group.dimension();
    for y in translations {
        if y.len() != n {
            return Err(EigenError::DimensionMismatch {
                expected: n,
                found: y.len(),
            });
        }
        if !y.iter().all(Cyclotomic::is_real) {
            return Err(EigenError::NonRealTranslation);
        }
    }
    let rank = linalg::rank(translations);
    if rank != n {
        return Err(EigenError::SamplesNotSpanning { rank, dimension: n });
    }
    let mut samples: Vec<GroupElement> = translations
        .iter()
        .map(|y| GroupElement::translation(y.clone()))
        .collect();
    samples.extend((0..m.dimension()).map(|k| GroupElement::rotation(n, k)));
    Ok(samples)
}

/// Weighted union-find over the unknowns A[a][b]: x = ratio·x_parent.
struct RatioForest {
    parent: Vec<usize>,
    ratio: Vec<FixedComplex>,
    dead: Vec<bool>,
    tol_bits: u32,
}

impl RatioForest {
    fn new(size: usize, frac: u32, tol_bits: u32) -> Self {
        RatioForest {
            parent: (0..size).collect(),
            ratio: vec![FixedComplex::one(frac); size],
            dead: vec![false; size],
            tol_bits,
        }
    }

    fn find(&mut self, x: usize) -> (usize, FixedComplex) {
        let p = self.parent[x];
        if p == x {
            return (x, self.ratio[x].clone());
        }
        let (root, r) = self.find(p);
        let combined = &self.ratio[x] * &r;
        self.parent[x] = root;
        self.ratio[x] = combined.clone();
        (root, combined)
    }

    fn small(&self, z: &FixedComplex) -> bool {
        z.re.below_pow2(self.tol_bits) && z.im.below_pow2(self.tol_bits)
    }

    fn kill(&mut self, x: usize) {
        let (root, _) = self.find(x);
        self.dead[root] = true;
    }

    /// Imposes x_p = rho·x_q.
    fn relate(&mut self, p: usize, q: usize, rho: &FixedComplex) {
        let (rp, a) = self.find(p);
        let (rq, b) = self.find(q);
        let rho_b = rho * &b;
        if rp == rq {
            if !self.small(&(&a - &rho_b)) {
                self.dead[rp] = true;
            }
            return;
        }
        // a·x_rp = rho·b·x_rq
        self.parent[rp] = rq;
        self.ratio[rp] = &rho_b * &a.inv();
        if self.dead[rp] {
            self.dead[rq] = true;
        }
    }

    fn live_components(&mut self) -> usize {
        (0..self.parent.len())
            .filter(|&x| self.parent[x] == x && !self.dead[x])
            .count()
    }
}

/// Numeric commutant dimension at the given precision: solves
/// A·π(g) = π(g)·A for g ranging over the sampled translations and all
/// rotations. Every π(g) is monomial, so each scalar equation couples at
/// most two unknowns; the solution space is computed component by
/// component with tolerance 2^(−precision/2).
pub fn commutant_dimension_numeric(
    m: &InducedModel<'_>,
    translations: &[Vec<Cyclotomic>],
    precision: u32,
) -> Result<usize, EigenError> {
    let samples = sample_elements(m, translations)?;
    let num = Numeric::new(precision.max(53));
    let order = m.dimension();
    let mut forest = RatioForest::new(order * order, num.frac(), num.threshold_bits());
    for g in &samples {
        let p = numeric_action(m, &num, g);
        let mut inv_col = vec![0usize; order];
        for (r, &c) in p.col.iter().enumerate() {
            inv_col[c] = r;
        }
        // (AP − PA)[a][b] = A[a][s]·P[s][b] − P[a][col a]·A[col a][b], s = row with col b
        for a in 0..order {
            for b in 0..order {
                let s = inv_col[b];
                let lhs = a * order + s;
                let rhs = p.col[a] * order + b;
                let alpha = &p.value[s];
                let beta = &p.value[a];
                if lhs == rhs {
                    if !forest.small(&(alpha - beta)) {
                        forest.kill(lhs);
                    }
                } else {
                    forest.relate(lhs, rhs, &(beta * &alpha.inv()));
                }
            }
        }
    }
    Ok(forest.live_components())
}

/// Dense variant: stacks all commutator equations into one matrix and
/// counts singular values below 2^(−precision/2). Cubic in |K|², meant
/// for small groups and cross-checks.
pub fn commutant_dimension_dense(
    m: &InducedModel<'_>,
    translations: &[Vec<Cyclotomic>],
    precision: u32,
) -> Result<usize, EigenError> {
    let samples = sample_elements(m, translations)?;
    let num = Numeric::new(precision.max(53));
    let order = m.dimension();
    let unknowns = order * order;
    let mut rows: Vec<Vec<FixedComplex>> = Vec::new();
    for g in &samples {
        let p = numeric_action(m, &num, g);
        let mut inv_col = vec![0usize; order];
        for (r, &c) in p.col.iter().enumerate() {
            inv_col[c] = r;
        }
        for a in 0..order {
            for b in 0..order {
                let s = inv_col[b];
                let mut row = vec![FixedComplex::zero(num.frac()); unknowns];
                let lhs = a * order + s;
                let rhs = p.col[a] * order + b;
                row[lhs] = &row[lhs] + &p.value[s];
                row[rhs] = &row[rhs] - &p.value[a];
                if row.iter().any(|z| !(z.re.below_pow2(num.threshold_bits()) && z.im.below_pow2(num.threshold_bits()))) {
                    rows.push(row);
                }
            }
        }
    }
    if rows.is_empty() {
        return Ok(unknowns);
    }
    Ok(unknowns - num.numeric_rank(&rows))
}

/// Both commutant computations.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CommutantDimension {
    pub exact: usize,
    pub numeric: usize,
}

impl CommutantDimension {
    pub fn agree(&self) -> bool {
        self.exact == self.numeric
    }
}

pub fn commutant_dimension(
    m: &InducedModel<'_>,
    translations: &[Vec<Cyclotomic>],
    precision: u32,
) -> Result<CommutantDimension, EigenError> {
    Ok(CommutantDimension {
        exact: commutant_dimension_exact(m),
        numeric: commutant_dimension_numeric(m, translations, precision)?,
    })
}

pub const NON_GENERIC_STATUS: &str = "non-generic: theorem out of scope";

/// Outcome of the irreducibility certificate for one weight.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Certification {
    pub generic: bool,
    pub orbit_size_distinct: usize,
    pub evaluation_rank: usize,
    pub commutant: CommutantDimension,
    pub irreducible_certified: bool,
    pub status: String,
}

/// Certifies dim E_λ = |K| (exact evaluation rank) and irreducibility
/// (commutant dimension 1 on both paths). Non-generic weights are
/// computed but never certified.
pub fn certify(
    m: &InducedModel<'_>,
    h: &HarmonicSpace,
    translations: &[Vec<Cyclotomic>],
    precision: u32,
) -> Result<Certification, EigenError> {
    let generic = is_generic(m.group, &m.weight);
    let evaluation_rank = harmonic_evaluation_rank(m, h)?;
    let commutant = commutant_dimension(m, translations, precision)?;
    let order = m.dimension();
    let (certified, status) = if !generic {
        (false, String::from(NON_GENERIC_STATUS))
    } else if evaluation_rank != order {
        (false, alloc::format!("failed: evaluation rank {evaluation_rank} < {order}"))
    } else if !commutant.agree() {
        (
            false,
            alloc::format!(
                "failed: commutant paths disagree (exact {}, numeric {})",
                commutant.exact,
                commutant.numeric
            ),
        )
    } else if commutant.exact != 1 {
        (false, alloc::format!("failed: commutant dimension {}", commutant.exact))
    } else {
        (true, String::from("certified"))
    };
    Ok(Certification {
        generic,
        orbit_size_distinct: m.orbit.distinct(),
        evaluation_rank,
        commutant,
        irreducible_certified: certified,
        status,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{builtin, g_multiply};
    use crate::invariants::{compute_harmonics, find_fundamental_invariants};

    fn c(v: i64) -> Cyclotomic {
        Cyclotomic::from_int(v)
    }

    fn q(n: i64, d: i64) -> Cyclotomic {
        Cyclotomic::from_fraction(n, d)
    }

    fn translations2() -> Vec<Vec<Cyclotomic>> {
        vec![vec![q(1, 3), q(2, 7)], vec![q(-5, 4), q(1, 2)]]
    }

    #[test]
    fn weights_must_be_imaginary() {
        assert!(Weight::new(vec![Cyclotomic::i(), c(0)]).is_ok());
        assert_eq!(
            Weight::new(vec![c(1), Cyclotomic::i()]),
            Err(EigenError::NotImaginary { index: 0 })
        );
    }

    #[test]
    fn genericity_examples() {
        let d4 = builtin("dihedral:4").unwrap();
        assert!(is_generic(&d4, &Weight::imaginary_integers(&[1, 2])));
        assert!(!is_generic(&d4, &Weight::zero(2)));
        assert!(!is_generic(&d4, &Weight::imaginary_integers(&[1, 0])));
        let o = orbit(&d4, &Weight::imaginary_integers(&[1, 0]));
        assert_eq!((o.distinct(), o.multiplicity()), (4, 2));
        let d5 = builtin("dihedral:5").unwrap();
        assert_eq!(orbit(&d5, &Weight::imaginary_integers(&[1, 2])).distinct(), 10);
        assert_eq!(orbit(&d5, &Weight::zero(2)).distinct(), 1);
    }

    #[test]
    fn fixed_weights_are_fixed() {
        let d5 = builtin("dihedral:5").unwrap();
        for s in (0..d5.order()).filter(|&s| d5.pseudo_reflection_flags()[s]) {
            let w = Weight::fixed_by(&d5, s, &[2, -1]);
            assert_eq!(d5.element(s).apply(w.lambda()), w.lambda());
            assert!(!is_generic(&d5, &w));
        }
    }

    #[test]
    fn model_action_basics() {
        let d3 = builtin("dihedral:3").unwrap();
        let w = Weight::imaginary_integers(&[1, 2]);
        let m = InducedModel::new(&d3, w.clone()).unwrap();
        let u = m.fixed_vector();
        for k in 0..d3.order() {
            assert_eq!(model_act(&m, &GroupElement::rotation(2, k), &u).unwrap(), u);
        }
        let v = m.vector(&[c(1), c(2), c(3), c(4), c(5), c(6)]);
        assert_eq!(model_act(&m, &GroupElement::identity(2), &v).unwrap(), v);
        // ((1,0), e) on δ_e: exp(−⟨λ, (1,0)⟩) δ_e = exp(−i) δ_e
        let g = GroupElement::translation(vec![c(1), c(0)]);
        let out = model_act(&m, &g, &m.basis_vector(0)).unwrap();
        let mut expect = m.basis_vector(0);
        expect[0] = FormalExp::exp(Cyclotomic::i().neg());
        assert_eq!(out, expect);
    }

    #[test]
    fn model_action_is_a_homomorphism() {
        let d3 = builtin("dihedral:3").unwrap();
        let m = InducedModel::new(&d3, Weight::imaginary_integers(&[3, -1])).unwrap();
        let v = m.vector(&[c(1), q(1, 2), c(0), c(-2), c(7), c(1)]);
        for (a, b) in [(1usize, 4usize), (2, 5), (3, 3)] {
            let g1 = GroupElement { translation: vec![q(1, 2), c(-1)], rotation: a };
            let g2 = GroupElement { translation: vec![c(2), q(1, 3)], rotation: b };
            let lhs = model_act(&m, &g1, &model_act(&m, &g2, &v).unwrap()).unwrap();
            let rhs = model_act(&m, &g_multiply(&d3, &g1, &g2), &v).unwrap();
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn intertwiner_and_equivariance() {
        let d3 = builtin("dihedral:3").unwrap();
        let m = InducedModel::new(&d3, Weight::imaginary_integers(&[1, 2])).unwrap();
        let single = intertwiner(&m, &m.basis_vector(0));
        assert_eq!(single, PlaneWaveSum::plane_wave(m.orbit().points[0].clone()));
        assert_eq!(intertwiner(&m, &m.fixed_vector()).len(), 6);
        let v = m.vector(&[c(1), c(-1), q(2, 3), c(0), c(5), c(1)]);
        let g = GroupElement { translation: vec![q(1, 5), c(3)], rotation: 4 };
        assert!(equivariance_check(&m, &g, &v).unwrap());
        assert!(equivariance_check(&m, &GroupElement::rotation(2, 2), &m.fixed_vector()).unwrap());
    }

    #[test]
    fn eigen_check_examples() {
        let d4 = builtin("dihedral:4").unwrap();
        let f = find_fundamental_invariants(&d4).unwrap();
        let w = Weight::imaginary_integers(&[1, 2]);
        let m = InducedModel::new(&d4, w.clone()).unwrap();
        assert!(eigen_check(&intertwiner(&m, &m.fixed_vector()), &f, &w));
        let two_lambda: Vec<Cyclotomic> = w.lambda().iter().map(|x| x.add(x)).collect();
        assert!(!eigen_check(&PlaneWaveSum::plane_wave(two_lambda), &f, &w));
        let zero = Weight::zero(2);
        assert!(eigen_check(&PlaneWaveSum::plane_wave(vec![c(0), c(0)]), &f, &zero));
    }

    #[test]
    fn dual_cyclic_rank() {
        let d3 = builtin("dihedral:3").unwrap();
        let samples: Vec<GroupElement> = (0..6)
            .map(|k| GroupElement {
                translation: vec![q(k as i64 + 1, 3), q(2 - k as i64, 5)],
                rotation: k,
            })
            .collect();
        let generic = InducedModel::new(&d3, Weight::imaginary_integers(&[1, 2])).unwrap();
        assert_eq!(dual_cyclic_check(&generic, &samples, 128), Ok(true));
        let zero = InducedModel::new(&d3, Weight::zero(2)).unwrap();
        assert_eq!(dual_cyclic_check(&zero, &samples, 128), Ok(false));
        let only_e: Vec<GroupElement> = samples
            .iter()
            .map(|g| GroupElement::translation(g.translation.clone()))
            .collect();
        assert_eq!(
            dual_cyclic_check(&generic, &only_e, 128),
            Err(EigenError::InsufficientSamples { missing: 5 })
        );
        // a single translation repeated spans one row
        let mut repeated = samples.clone();
        for g in repeated.iter_mut() {
            g.translation = vec![q(1, 3), q(2, 5)];
        }
        assert_eq!(dual_cyclic_check(&generic, &repeated, 128), Ok(false));
    }

    #[test]
    fn evaluation_ranks() {
        for (spec, generic_w, special) in [
            ("dihedral:3", [1i64, 2], [0i64, 0]),
            ("dihedral:4", [1, 2], [1, 0]),
        ] {
            let g = builtin(spec).unwrap();
            let f = find_fundamental_invariants(&g).unwrap();
            let h = compute_harmonics(&g, &f).unwrap();
            let m = InducedModel::new(&g, Weight::imaginary_integers(&generic_w)).unwrap();
            assert_eq!(evaluation_rank(&evaluation_matrix(&m, &h).unwrap()), g.order());
            let m = InducedModel::new(&g, Weight::imaginary_integers(&special)).unwrap();
            let r = evaluation_rank(&evaluation_matrix(&m, &h).unwrap());
            assert!(r < g.order());
            assert_eq!(r, m.orbit().distinct());
            assert_eq!(harmonic_evaluation_rank(&m, &h).unwrap(), r);
        }
    }

    #[test]
    fn base_point_only_scales_columns() {
        let g = builtin("dihedral:3").unwrap();
        let f = find_fundamental_invariants(&g).unwrap();
        let h = compute_harmonics(&g, &f).unwrap();
        let m = InducedModel::new(&g, Weight::imaginary_integers(&[1, 2])).unwrap();
        let (exact, factors) = evaluation_matrix_at(&m, &h, &[q(1, 2), c(1)]).unwrap();
        assert_eq!(evaluation_rank(&exact), 6);
        assert!(factors.iter().all(|f| f.terms().len() == 1));
    }

    #[test]
    fn commutant_examples() {
        let d3 = builtin("dihedral:3").unwrap();
        let generic = InducedModel::new(&d3, Weight::imaginary_integers(&[1, 2])).unwrap();
        let cd = commutant_dimension(&generic, &translations2(), 128).unwrap();
        assert_eq!(cd, CommutantDimension { exact: 1, numeric: 1 });
        let zero = InducedModel::new(&d3, Weight::zero(2)).unwrap();
        let cd = commutant_dimension(&zero, &translations2(), 128).unwrap();
        assert_eq!(cd, CommutantDimension { exact: 6, numeric: 6 });
        let d4 = builtin("dihedral:4").unwrap();
        let special = InducedModel::new(&d4, Weight::imaginary_integers(&[1, 0])).unwrap();
        let cd = commutant_dimension(&special, &translations2(), 128).unwrap();
        assert!(cd.agree() && cd.exact > 1);
        assert!(matches!(
            commutant_dimension(&generic, &[vec![c(1), c(1)], vec![c(2), c(2)]], 128),
            Err(EigenError::SamplesNotSpanning { rank: 1, dimension: 2 })
        ));
    }

    #[test]
    fn dense_commutant_matches_sparse() {
        let d3 = builtin("dihedral:3").unwrap();
        for w in [
            Weight::imaginary_integers(&[1, 2]),
            Weight::zero(2),
            Weight::fixed_by(&d3, d3.generator_indices()[1], &[1, 3]),
        ] {
            let m = InducedModel::new(&d3, w).unwrap();
            let dense = commutant_dimension_dense(&m, &translations2(), 128).unwrap();
            let sparse = commutant_dimension_numeric(&m, &translations2(), 128).unwrap();
            assert_eq!(dense, sparse);
            assert_eq!(sparse, commutant_dimension_exact(&m));
        }
    }

    #[test]
    fn certification_statuses() {
        let d3 = builtin("dihedral:3").unwrap();
        let f = find_fundamental_invariants(&d3).unwrap();
        let h = compute_harmonics(&d3, &f).unwrap();
        let m = InducedModel::new(&d3, Weight::imaginary_integers(&[1, 2])).unwrap();
        let cert = certify(&m, &h, &translations2(), 128).unwrap();
        assert!(cert.irreducible_certified);
        assert_eq!(cert.status, "certified");
        let m = InducedModel::new(&d3, Weight::zero(2)).unwrap();
        let cert = certify(&m, &h, &translations2(), 128).unwrap();
        assert!(!cert.irreducible_certified);
        assert_eq!(cert.status, NON_GENERIC_STATUS);
        assert_eq!(cert.commutant.exact, 6);
    }

    #[test]
    fn trivial_group_weights_are_all_generic() {
        let g = builtin("trivial:2").unwrap();
        let f = find_fundamental_invariants(&g).unwrap();
        let h = compute_harmonics(&g, &f).unwrap();
        for w in [Weight::zero(2), Weight::imaginary_integers(&[3, -1])] {
            let m = InducedModel::new(&g, w).unwrap();
            let cert = certify(&m, &h, &translations2(), 128).unwrap();
            assert!(cert.generic && cert.irreducible_certified);
            assert_eq!((cert.evaluation_rank, cert.commutant.exact), (1, 1));
        }
    }

    #[test]
    fn symbol_acts_on_plane_waves_by_evaluation() {
        let d3 = builtin("dihedral:3").unwrap();
        let f = find_fundamental_invariants(&d3).unwrap();
        let mu = [Cyclotomic::i(), Cyclotomic::i().mul(&c(2))];
        for j in &f.generators {
            assert!(plane_wave_symbol_check(j, &mu, 3));
        }
        let mixed = Poly::var(2, 0).add(&Poly::var(2, 1).pow(2)).add(&Poly::constant(2, c(3)));
        assert!(plane_wave_symbol_check(&mixed, &mu, 3));
    }

    #[test]
    fn laplacian_eigenvalue() {
        // (x₁² + x₂²)/4 at λ = i(ℓ₁, ℓ₂) gives −(ℓ₁² + ℓ₂²)/4
        let sym = Poly::var(2, 0).pow(2).add(&Poly::var(2, 1).pow(2)).scale(&q(1, 4));
        let w = Weight::imaginary_integers(&[1, 2]);
        assert_eq!(eigenvalue(&sym, &w), q(-5, 4));
    }
}
