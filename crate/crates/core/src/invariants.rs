//! Fundamental invariants, harmonic polynomials and the graded
//! decomposition S = I ⊗ H.

use alloc::vec;
use alloc::vec::Vec;

use crate::cyclotomic::Cyclotomic;
use crate::group::ReflectionGroup;
use crate::linalg::{self, EchelonBasis};
use crate::poly::{diff_apply, invariant_subspace, jacobian_independent, GradedBasis, Poly};
use crate::series::{default_truncation, extract_degrees, harmonic_hilbert, molien, DegreeVector, SeriesError};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum InvariantError {
    #[error(transparent)]
    Series(#[from] SeriesError),
    #[error("generator search failed at degree {degree}")]
    GeneratorSearchFailed { degree: u32 },
    #[error("generators are not algebraically independent")]
    NotIndependent,
    #[error("harmonic dimension mismatch at degree {degree}: expected {expected}, found {found}")]
    HarmonicDimension { degree: u32, expected: usize, found: usize },
    #[error("harmonic space has total dimension {found}, expected {expected}")]
    HarmonicTotal { expected: usize, found: usize },
}

/// Homogeneous, algebraically independent generators j₁ … j_n of the
/// invariant ring, in ascending degree.
#[derive(Debug, Clone)]
pub struct FundamentalInvariants {
    pub generators: Vec<Poly>,
    pub degrees: DegreeVector,
}

/// Harmonic polynomials, one basis list per degree 0 … Σ(dᵢ − 1).
#[derive(Debug, Clone)]
pub struct HarmonicSpace {
    pub basis_by_degree: Vec<Vec<Poly>>,
}

impl HarmonicSpace {
    pub fn dims(&self) -> Vec<usize> {
        self.basis_by_degree.iter().map(Vec::len).collect()
    }

    pub fn total_dimension(&self) -> usize {
        self.basis_by_degree.iter().map(Vec::len).sum()
    }

    pub fn degree(&self, k: usize) -> &[Poly] {
        self.basis_by_degree.get(k).map_or(&[], Vec::as_slice)
    }

    /// All basis elements, lowest degree first.
    pub fn basis(&self) -> impl Iterator<Item = &Poly> {
        self.basis_by_degree.iter().flatten()
    }
}

/// Exponent vectors e with Σ eᵢ·degrees[i] = target.
fn weighted_compositions(degrees: &[u32], target: u32) -> Vec<Vec<u32>> {
    fn go(degrees: &[u32], target: u32, prefix: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        let Some((&d, rest)) = degrees.split_first() else {
            if target == 0 {
                out.push(prefix.clone());
            }
            return;
        };
        let mut e = 0;
        while e * d <= target {
            prefix.push(e);
            go(rest, target - e * d, prefix, out);
            prefix.pop();
            if d == 0 {
                break;
            }
            e += 1;
        }
    }
    let mut out = Vec::new();
    go(degrees, target, &mut Vec::new(), &mut out);
    out
}

/// The products j^e of homogeneous generators with total degree `degree`.
pub fn generator_monomials(generators: &[Poly], nvars: usize, degree: u32) -> Vec<Poly> {
    let degs: Vec<u32> = generators
        .iter()
        .map(|g| g.degree().unwrap_or(0))
        .collect();
    weighted_compositions(&degs, degree)
        .into_iter()
        .map(|e| {
            e.iter()
                .zip(generators)
                .fold(Poly::one(nvars), |acc, (&k, g)| if k == 0 { acc } else { acc.mul(&g.pow(k)) })
        })
        .collect()
}

/// Dimension of the degree-`degree` part of the subalgebra generated by
/// homogeneous `generators`.
pub fn subalgebra_dimension(generators: &[Poly], nvars: usize, degree: u32) -> usize {
    let basis = GradedBasis::new(nvars, degree);
    let rows: Vec<Vec<Cyclotomic>> = generator_monomials(generators, nvars, degree)
        .iter()
        .map(|p| basis.coordinates(p))
        .collect();
    linalg::rank(&rows)
}

/// True iff the homogeneous polynomial `p` lies in the subalgebra
/// generated by homogeneous `generators`.
pub fn in_subalgebra(generators: &[Poly], p: &Poly) -> bool {
    let Some(d) = p.degree() else {
        return true;
    };
    let n = p.nvars();
    let basis = GradedBasis::new(n, d);
    let rows: Vec<Vec<Cyclotomic>> = generator_monomials(generators, n, d)
        .iter()
        .map(|q| basis.coordinates(q))
        .collect();
    linalg::in_span(&rows, &basis.coordinates(p))
}

/// Chooses generators degree by degree: at each fundamental degree the
/// first reduced invariant basis vector outside the span of products of
/// earlier generators, scaled to leading coefficient 1.
pub fn find_fundamental_invariants(
    group: &ReflectionGroup,
) -> Result<FundamentalInvariants, InvariantError> {
    let series = molien(group, default_truncation(group.order()))?;
    let degrees = extract_degrees(&series, group.dimension(), group.order())?;
    let n = group.dimension();
    let mut generators: Vec<Poly> = Vec::new();
    for &d in degrees.degrees() {
        let basis = GradedBasis::new(n, d);
        let mut span = EchelonBasis::new(basis.len());
        for q in generator_monomials(&generators, n, d) {
            span.insert(&basis.coordinates(&q));
        }
        let pick = invariant_subspace(group, d)
            .into_iter()
            .find(|p| !span.contains(&basis.coordinates(p)))
            .ok_or(InvariantError::GeneratorSearchFailed { degree: d })?;
        generators.push(pick.monic());
    }
    if !jacobian_independent(&generators).unwrap_or(false) {
        return Err(InvariantError::NotIndependent);
    }
    Ok(FundamentalInvariants { generators, degrees })
}

/// H^k as the common kernel of ∂(jᵢ): S^k → S^{k−dᵢ}, for k up to
/// Σ(dᵢ − 1); checked against the harmonic Hilbert series and |K|.
pub fn compute_harmonics(
    group: &ReflectionGroup,
    f: &FundamentalInvariants,
) -> Result<HarmonicSpace, InvariantError> {
    let n = group.dimension();
    let top = f.degrees.top_harmonic_degree();
    let expected = harmonic_hilbert(&f.degrees, top as usize)
        .to_u64()
        .expect("integer coefficients");
    let mut basis_by_degree = Vec::with_capacity(top as usize + 1);
    for k in 0..=top {
        let space = harmonic_degree(&f.generators, n, k);
        if space.len() as u64 != expected[k as usize] {
            return Err(InvariantError::HarmonicDimension {
                degree: k,
                expected: expected[k as usize] as usize,
                found: space.len(),
            });
        }
        basis_by_degree.push(space);
    }
    let h = HarmonicSpace { basis_by_degree };
    if h.total_dimension() != group.order() {
        return Err(InvariantError::HarmonicTotal {
            expected: group.order(),
            found: h.total_dimension(),
        });
    }
    Ok(h)
}

/// Basis of the homogeneous degree-k polynomials killed by every ∂(jᵢ).
pub fn harmonic_degree(generators: &[Poly], nvars: usize, k: u32) -> Vec<Poly> {
    let source = GradedBasis::new(nvars, k);
    let mut rows: Vec<Vec<Cyclotomic>> = Vec::new();
    for j in generators {
        let dj = j.degree().unwrap_or(0);
        if dj > k {
            continue;
        }
        let target = GradedBasis::new(nvars, k - dj);
        let columns: Vec<Vec<Cyclotomic>> = source
            .monomials
            .iter()
            .map(|m| target.coordinates(&diff_apply(j, &Poly::monomial(m.clone(), Cyclotomic::one()))))
            .collect();
        for r in 0..target.len() {
            rows.push(columns.iter().map(|c| c[r].clone()).collect());
        }
    }
    if rows.is_empty() {
        rows.push(vec![Cyclotomic::zero(); source.len()]);
    }
    linalg::nullspace(&rows, source.len())
        .iter()
        .map(|v| source.polynomial(v))
        .collect()
}

/// Outcome of the graded S = I·H check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProductDecomposition {
    pub verified: bool,
    pub failing_degree: Option<u32>,
}

/// For each k ≤ max_degree, checks that the products (monomials in the jᵢ)
/// × (harmonic basis) span S^k and that their number equals dim S^k.
pub fn verify_product_decomposition(
    group: &ReflectionGroup,
    f: &FundamentalInvariants,
    h: &HarmonicSpace,
    max_degree: u32,
) -> ProductDecomposition {
    let n = group.dimension();
    for k in 0..=max_degree {
        let basis = GradedBasis::new(n, k);
        let mut rows = Vec::new();
        for l in 0..=k {
            let harmonics = h.degree(l as usize);
            if harmonics.is_empty() {
                continue;
            }
            for inv in generator_monomials(&f.generators, n, k - l) {
                for hh in harmonics {
                    rows.push(basis.coordinates(&inv.mul(hh)));
                }
            }
        }
        if rows.len() != basis.len() || linalg::rank(&rows) != basis.len() {
            return ProductDecomposition {
                verified: false,
                failing_degree: Some(k),
            };
        }
    }
    ProductDecomposition {
        verified: true,
        failing_degree: None,
    }
}
