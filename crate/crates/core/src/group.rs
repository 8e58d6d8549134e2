//! Finite matrix groups over cyclotomic scalars: closure, pseudo-reflection
//! detection, the built-in families, and the semidirect product ℝⁿ ⋊ K.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_integer::Integer;

use crate::cyclotomic::{Cyclotomic, CyclotomicField};
use crate::field::Field;
use crate::linalg;

pub const DEFAULT_MAX_ORDER: usize = 10_000;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GroupError {
    #[error("group not finite within bound {bound}")]
    NotFinite { bound: usize },
    #[error("generator {index} is not invertible")]
    NotInvertible { index: usize },
    #[error("matrix dimensions do not agree")]
    DimensionMismatch,
    #[error("at least one generator is required")]
    NoGenerators,
    #[error("element {index} is not orthogonal: {matrix}")]
    NotOrthogonal { index: usize, matrix: String },
    #[error("unknown builtin group '{0}'")]
    UnknownBuiltin(String),
    #[error("invalid builtin parameter: {0}")]
    InvalidParameter(String),
}

/// Square matrix with cyclotomic entries.
#[derive(Clone, PartialEq, Eq)]
pub struct RMatrix {
    n: usize,
    entries: Vec<Cyclotomic>,
}

impl RMatrix {
    pub fn from_rows(rows: Vec<Vec<Cyclotomic>>) -> Result<Self, GroupError> {
        let n = rows.len();
        if rows.iter().any(|r| r.len() != n) {
            return Err(GroupError::DimensionMismatch);
        }
        Ok(RMatrix {
            n,
            entries: rows.into_iter().flatten().collect(),
        })
    }

    pub fn identity(n: usize) -> Self {
        let mut entries = vec![Cyclotomic::zero(); n * n];
        for i in 0..n {
            entries[i * n + i] = Cyclotomic::one();
        }
        RMatrix { n, entries }
    }

    pub fn diagonal(diag: &[Cyclotomic]) -> Self {
        let n = diag.len();
        let mut m = RMatrix::identity(n);
        for (i, d) in diag.iter().enumerate() {
            m.entries[i * n + i] = d.clone();
        }
        m
    }

    /// Permutation matrix sending e_j to e_{perm[j]}.
    pub fn permutation(perm: &[usize]) -> Self {
        let n = perm.len();
        let mut entries = vec![Cyclotomic::zero(); n * n];
        for (j, &i) in perm.iter().enumerate() {
            entries[i * n + j] = Cyclotomic::one();
        }
        RMatrix { n, entries }
    }

    pub fn dimension(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> &Cyclotomic {
        &self.entries[i * self.n + j]
    }

    pub fn rows(&self) -> Vec<Vec<Cyclotomic>> {
        self.entries.chunks(self.n).map(<[_]>::to_vec).collect()
    }

    pub fn mul(&self, other: &RMatrix) -> RMatrix {
        assert_eq!(self.n, other.n, "dimension mismatch");
        let n = self.n;
        let mut entries = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                let mut acc = Cyclotomic::zero();
                for k in 0..n {
                    let a = self.get(i, k);
                    let b = other.get(k, j);
                    if !a.is_zero() && !b.is_zero() {
                        acc = acc.add(&a.mul(b));
                    }
                }
                entries.push(acc);
            }
        }
        RMatrix { n, entries }
    }

    pub fn transpose(&self) -> RMatrix {
        let n = self.n;
        let mut entries = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                entries.push(self.get(j, i).clone());
            }
        }
        RMatrix { n, entries }
    }

    pub fn sub(&self, other: &RMatrix) -> RMatrix {
        RMatrix {
            n: self.n,
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(a, b)| a.sub(b))
                .collect(),
        }
    }

    /// Matrix-vector product.
    pub fn apply(&self, v: &[Cyclotomic]) -> Vec<Cyclotomic> {
        assert_eq!(v.len(), self.n, "dimension mismatch");
        (0..self.n)
            .map(|i| {
                (0..self.n).fold(Cyclotomic::zero(), |acc, j| {
                    let a = self.get(i, j);
                    if a.is_zero() || v[j].is_zero() {
                        acc
                    } else {
                        acc.add(&a.mul(&v[j]))
                    }
                })
            })
            .collect()
    }

    pub fn rank(&self) -> usize {
        linalg::rank(&self.rows())
    }

    pub fn is_invertible(&self) -> bool {
        self.rank() == self.n
    }

    pub fn is_identity(&self) -> bool {
        *self == RMatrix::identity(self.n)
    }

    /// kᵀk = I.
    pub fn is_orthogonal(&self) -> bool {
        self.transpose().mul(self).is_identity()
    }

    /// Least common multiple of the entry orders.
    pub fn field_order(&self) -> u32 {
        self.entries.iter().fold(1u32, |acc, e| acc.lcm(&e.order()))
    }

    fn promoted(&self, field: &alloc::sync::Arc<CyclotomicField>) -> RMatrix {
        RMatrix {
            n: self.n,
            entries: self.entries.iter().map(|e| e.promote(field)).collect(),
        }
    }

    /// Canonical key; only meaningful between matrices whose entries share
    /// one field order.
    pub fn key(&self) -> String {
        let mut s = String::new();
        for e in &self.entries {
            s.push_str(&e.canonical_key());
            s.push('|');
        }
        s
    }
}

impl fmt::Debug for RMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Display for RMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for i in 0..self.n {
            if i > 0 {
                f.write_str(", ")?;
            }
            f.write_str("[")?;
            for j in 0..self.n {
                if j > 0 {
                    f.write_str(", ")?;
                }
                write!(f, "{}", self.get(i, j))?;
            }
            f.write_str("]")?;
        }
        f.write_str("]")
    }
}

/// True iff exactly one eigenvalue differs from 1, tested as
/// rank(m − I) = 1 (group elements are diagonalizable).
pub fn is_pseudo_reflection(m: &RMatrix) -> bool {
    m.sub(&RMatrix::identity(m.dimension())).rank() == 1
}

/// A fully enumerated finite matrix group.
#[derive(Clone, Debug)]
pub struct ReflectionGroup {
    name: String,
    dimension: usize,
    field_order: u32,
    elements: Vec<RMatrix>,
    generator_indices: Vec<usize>,
    pseudo_reflection: Vec<bool>,
    index: BTreeMap<String, usize>,
    /// product[i * order + j] = index of elements[i] · elements[j]
    product: Vec<usize>,
    inverse: Vec<usize>,
}

/// Enumerates the group generated by `generators` breadth-first. The
/// identity comes first; further elements appear in BFS order of right
/// multiplication by the generators.
pub fn closure(generators: &[RMatrix], max_order: usize) -> Result<ReflectionGroup, GroupError> {
    let first = generators.first().ok_or(GroupError::NoGenerators)?;
    let n = first.dimension();
    if generators.iter().any(|g| g.dimension() != n) {
        return Err(GroupError::DimensionMismatch);
    }
    for (i, g) in generators.iter().enumerate() {
        if !g.is_invertible() {
            return Err(GroupError::NotInvertible { index: i });
        }
    }
    let order = generators.iter().fold(1u32, |acc, g| acc.lcm(&g.field_order()));
    let field = CyclotomicField::new(order).map_err(|e| GroupError::InvalidParameter(e.to_string()))?;
    let gens: Vec<RMatrix> = generators.iter().map(|g| g.promoted(&field)).collect();

    let identity = RMatrix::identity(n).promoted(&field);
    let mut elements = vec![identity.clone()];
    let mut index = BTreeMap::new();
    index.insert(identity.key(), 0usize);
    let mut head = 0;
    while head < elements.len() {
        let current = elements[head].clone();
        head += 1;
        for g in &gens {
            let p = current.mul(g).promoted(&field);
            let key = p.key();
            if !index.contains_key(&key) {
                if elements.len() >= max_order {
                    return Err(GroupError::NotFinite { bound: max_order });
                }
                index.insert(key, elements.len());
                elements.push(p);
            }
        }
    }
    let generator_indices = gens.iter().map(|g| index[&g.key()]).collect();
    let pseudo_reflection = elements.iter().map(is_pseudo_reflection).collect();
    let size = elements.len();
    let mut product = vec![0usize; size * size];
    for i in 0..size {
        for j in 0..size {
            let key = elements[i].mul(&elements[j]).promoted(&field).key();
            product[i * size + j] = index[&key];
        }
    }
    let inverse = (0..size)
        .map(|i| {
            (0..size)
                .find(|&j| product[i * size + j] == 0)
                .expect("finite group elements have inverses")
        })
        .collect();
    Ok(ReflectionGroup {
        name: String::from("custom"),
        dimension: n,
        field_order: order,
        elements,
        generator_indices,
        pseudo_reflection,
        index,
        product,
        inverse,
    })
}

impl ReflectionGroup {
    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn dimension(&self) -> usize {
        self.dimension
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    /// Cyclotomic order m such that every entry lies in Q(ζ_m).
    pub fn field_order(&self) -> u32 {
        self.field_order
    }

    pub fn elements(&self) -> &[RMatrix] {
        &self.elements
    }

    pub fn element(&self, i: usize) -> &RMatrix {
        &self.elements[i]
    }

    pub fn generator_indices(&self) -> &[usize] {
        &self.generator_indices
    }

    pub fn pseudo_reflection_flags(&self) -> &[bool] {
        &self.pseudo_reflection
    }

    pub fn reflection_count(&self) -> usize {
        self.pseudo_reflection.iter().filter(|&&b| b).count()
    }

    pub fn index_of(&self, m: &RMatrix) -> Option<usize> {
        if m.dimension() != self.dimension {
            return None;
        }
        let field = CyclotomicField::new(self.field_order.lcm(&m.field_order())).ok()?;
        if field.order() != self.field_order {
            return None;
        }
        self.index.get(&m.promoted(&field).key()).copied()
    }

    pub fn product_index(&self, i: usize, j: usize) -> usize {
        self.product[i * self.order() + j]
    }

    pub fn inverse_index(&self, i: usize) -> usize {
        self.inverse[i]
    }

    /// Every element satisfies kᵀk = I; otherwise names the first offender.
    pub fn check_orthogonal(&self) -> Result<(), GroupError> {
        for (i, k) in self.elements.iter().enumerate() {
            if !k.is_orthogonal() {
                return Err(GroupError::NotOrthogonal {
                    index: i,
                    matrix: k.to_string(),
                });
            }
        }
        Ok(())
    }
}

/// True iff the group is orthogonal and generated by its pseudo-reflections.
pub fn is_pseudo_reflection_group(group: &ReflectionGroup) -> Result<bool, GroupError> {
    group.check_orthogonal()?;
    if group.order() == 1 {
        return Ok(true);
    }
    let reflections: Vec<RMatrix> = group
        .elements
        .iter()
        .zip(&group.pseudo_reflection)
        .filter(|(_, &r)| r)
        .map(|(m, _)| m.clone())
        .collect();
    if reflections.is_empty() {
        return Ok(false);
    }
    let sub = closure(&reflections, group.order())?;
    Ok(sub.order() == group.order())
}

/// Rotation R_k = (cos, −sin; sin, cos) by 2πk/n.
pub fn rotation(k: i64, n: u32) -> RMatrix {
    let c = Cyclotomic::cos_2pi(k, n).expect("valid order");
    let s = Cyclotomic::sin_2pi(k, n).expect("valid order");
    RMatrix::from_rows(vec![vec![c.clone(), s.neg()], vec![s, c]]).expect("square")
}

/// Reflection S_k = (cos, sin; sin, −cos) with angle 2πk/n.
pub fn dihedral_reflection(k: i64, n: u32) -> RMatrix {
    let c = Cyclotomic::cos_2pi(k, n).expect("valid order");
    let s = Cyclotomic::sin_2pi(k, n).expect("valid order");
    RMatrix::from_rows(vec![vec![c.clone(), s.clone()], vec![s, c.neg()]]).expect("square")
}

/// Builds a named group: `dihedral:n` (n ≥ 3), `symmetric:n`,
/// `hyperoctahedral:n`, `cyclic:n` (rotations of the plane) or
/// `trivial:n`.
pub fn builtin(spec: &str) -> Result<ReflectionGroup, GroupError> {
    let (family, param) = spec
        .split_once(':')
        .ok_or_else(|| GroupError::UnknownBuiltin(spec.to_string()))?;
    let n: usize = param
        .trim()
        .parse()
        .map_err(|_| GroupError::InvalidParameter(format!("'{param}' is not a positive integer")))?;
    if n == 0 {
        return Err(GroupError::InvalidParameter(String::from("n must be at least 1")));
    }
    let generators = match family.trim() {
        "dihedral" => {
            if n < 3 {
                return Err(GroupError::InvalidParameter(String::from(
                    "dihedral:n requires n >= 3",
                )));
            }
            vec![rotation(1, n as u32), dihedral_reflection(0, n as u32)]
        }
        "cyclic" => vec![rotation(1, n as u32)],
        "symmetric" => {
            if n == 1 {
                vec![RMatrix::identity(1)]
            } else {
                (0..n - 1)
                    .map(|i| {
                        let mut perm: Vec<usize> = (0..n).collect();
                        perm.swap(i, i + 1);
                        RMatrix::permutation(&perm)
                    })
                    .collect()
            }
        }
        "hyperoctahedral" => {
            let mut gens: Vec<RMatrix> = (0..n - 1)
                .map(|i| {
                    let mut perm: Vec<usize> = (0..n).collect();
                    perm.swap(i, i + 1);
                    RMatrix::permutation(&perm)
                })
                .collect();
            let mut diag = vec![Cyclotomic::one(); n];
            diag[n - 1] = Cyclotomic::from_int(-1);
            gens.push(RMatrix::diagonal(&diag));
            gens
        }
        "trivial" => vec![RMatrix::identity(n)],
        _ => return Err(GroupError::UnknownBuiltin(spec.to_string())),
    };
    Ok(closure(&generators, DEFAULT_MAX_ORDER)?.with_name(format!("{}:{}", family.trim(), n)))
}

/// An element (x, k) of ℝⁿ ⋊ K; `rotation` indexes the group's element
/// list.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupElement {
    pub translation: Vec<Cyclotomic>,
    pub rotation: usize,
}

impl GroupElement {
    pub fn identity(n: usize) -> Self {
        GroupElement {
            translation: vec![Cyclotomic::zero(); n],
            rotation: 0,
        }
    }

    pub fn translation(x: Vec<Cyclotomic>) -> Self {
        GroupElement {
            translation: x,
            rotation: 0,
        }
    }

    pub fn rotation(n: usize, k: usize) -> Self {
        GroupElement {
            translation: vec![Cyclotomic::zero(); n],
            rotation: k,
        }
    }

    /// Translation entries are real.
    pub fn is_valid(&self) -> bool {
        self.translation.iter().all(Cyclotomic::is_real)
    }
}

/// (x₁, k₁)(x₂, k₂) = (x₁ + k₁x₂, k₁k₂).
pub fn g_multiply(group: &ReflectionGroup, a: &GroupElement, b: &GroupElement) -> GroupElement {
    let moved = group.element(a.rotation).apply(&b.translation);
    GroupElement {
        translation: a
            .translation
            .iter()
            .zip(&moved)
            .map(|(x, y)| x.add(y))
            .collect(),
        rotation: group.product_index(a.rotation, b.rotation),
    }
}

/// (x, k)⁻¹ = (−k⁻¹x, k⁻¹).
pub fn g_inverse(group: &ReflectionGroup, a: &GroupElement) -> GroupElement {
    let inv = group.inverse_index(a.rotation);
    GroupElement {
        translation: group
            .element(inv)
            .apply(&a.translation)
            .iter()
            .map(Field::neg)
            .collect(),
        rotation: inv,
    }
}
