//! Ranks of cyclotomic matrices modulo primes p ≡ 1 (mod m). Sending ζ_m
//! to a primitive m-th root of unity in F_p is a ring map, so every
//! modular rank is a lower bound for the rank over Q(ζ_m).

use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;

use crate::cyclotomic::Cyclotomic;
use crate::field::Rational;
use crate::linalg;
use crate::poly::Poly;

const PRIME_CEILING: u64 = 1 << 31;

fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn pow_mod(mut base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    base %= p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, p);
        }
        base = mul_mod(base, base, p);
        exp >>= 1;
    }
    acc
}

/// Deterministic Miller-Rabin for n < 2^32.
fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for small in [2u64, 3, 5, 7, 11, 13] {
        if n % small == 0 {
            return n == small;
        }
    }
    let (mut d, mut s) = (n - 1, 0);
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    'witness: for a in [2u64, 7, 61] {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

fn prime_factors(mut m: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut q = 2;
    while q * q <= m {
        if m % q == 0 {
            out.push(q);
            while m % q == 0 {
                m /= q;
            }
        }
        q += 1;
    }
    if m > 1 {
        out.push(m);
    }
    out
}

/// Q(ζ_m) → F_p with ζ_m ↦ `root`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PrimeEmbedding {
    pub prime: u64,
    pub order: u32,
    pub root: u64,
}

impl PrimeEmbedding {
    /// The `index`-th prime p ≡ 1 (mod order) below 2^31, counting down.
    pub fn nth(order: u32, index: usize) -> Self {
        let m = order as u64;
        let mut t = (PRIME_CEILING - 1) / m;
        let mut seen = 0;
        let prime = loop {
            assert!(t > 0, "ran out of primes for order {order}");
            let p = 1 + m * t;
            t -= 1;
            if is_prime(p) {
                if seen == index {
                    break p;
                }
                seen += 1;
            }
        };
        let factors = prime_factors(m);
        let root = (2..prime)
            .map(|g| pow_mod(g, (prime - 1) / m, prime))
            .find(|&r| factors.iter().all(|&q| pow_mod(r, m / q, prime) != 1))
            .expect("F_p* is cyclic");
        PrimeEmbedding { prime, order, root }
    }

    fn reduce_int(&self, n: &BigInt) -> u64 {
        let p = BigInt::from(self.prime);
        n.mod_floor(&p).to_u64().expect("reduced below p")
    }

    fn reduce_rational(&self, r: &Rational) -> Option<u64> {
        let den = self.reduce_int(r.denom());
        if den == 0 {
            return None;
        }
        let inv = pow_mod(den, self.prime - 2, self.prime);
        Some(mul_mod(self.reduce_int(r.numer()), inv, self.prime))
    }

    /// Image of `c`, or None when a denominator vanishes mod p. The order
    /// of `c` must divide the embedding order.
    pub fn map(&self, c: &Cyclotomic) -> Option<u64> {
        assert_eq!(self.order % c.order(), 0, "element order divides the embedding order");
        let step = (self.order / c.order()) as u64;
        let r = pow_mod(self.root, step, self.prime);
        let mut acc = 0;
        for (k, coeff) in c.terms() {
            let term = mul_mod(
                self.reduce_rational(coeff)?,
                pow_mod(r, k as u64, self.prime),
                self.prime,
            );
            acc = (acc + term) % self.prime;
        }
        Some(acc)
    }
}

impl PrimeEmbedding {
    /// Image of `poly` evaluated at a point already mapped into F_p.
    pub fn evaluate(&self, poly: &Poly, point: &[u64]) -> Option<u64> {
        let p = self.prime;
        let mut acc = 0;
        for (mono, c) in poly.terms() {
            let mut t = self.map(c)?;
            for (&x, &e) in point.iter().zip(mono.exponents()) {
                t = mul_mod(t, pow_mod(x, e as u64, p), p);
            }
            acc = (acc + t) % p;
        }
        Some(acc)
    }
}

/// Rank over F_p of the image matrix, None if some entry does not reduce.
pub fn modular_rank(rows: &[Vec<Cyclotomic>], emb: &PrimeEmbedding) -> Option<usize> {
    let m: Vec<Vec<u64>> = rows
        .iter()
        .map(|r| r.iter().map(|c| emb.map(c)).collect::<Option<Vec<u64>>>())
        .collect::<Option<_>>()?;
    Some(rank_mod(m, emb.prime))
}

/// Rank of a matrix with entries already reduced mod the prime `p`.
pub fn rank_mod(mut m: Vec<Vec<u64>>, p: u64) -> usize {
    let ncols = m.first().map_or(0, Vec::len);
    let mut rank = 0;
    for c in 0..ncols {
        let Some(piv) = (rank..m.len()).find(|&i| m[i][c] != 0) else {
            continue;
        };
        m.swap(rank, piv);
        let inv = pow_mod(m[rank][c], p - 2, p);
        let pivot: Vec<u64> = m[rank].iter().map(|&x| mul_mod(x, inv, p)).collect();
        for row in m.iter_mut().skip(rank + 1) {
            let f = row[c];
            if f == 0 {
                continue;
            }
            for (x, &y) in row.iter_mut().zip(&pivot).skip(c) {
                *x = (*x + p - mul_mod(f, y, p)) % p;
            }
        }
        rank += 1;
    }
    rank
}

fn lcm_order(rows: &[Vec<Cyclotomic>]) -> u32 {
    rows.iter().flatten().fold(1u32, |acc, c| acc.lcm(&c.order()))
}

/// Rank of (pᵢ(x_k)) for polynomials pᵢ and points x_k, given a proven
/// upper bound. Evaluates in F_p, so the matrix over Q(ζ) is only built
/// when no prime reaches the bound.
pub fn certified_evaluation_rank(polys: &[&Poly], points: &[Vec<Cyclotomic>], upper_bound: usize) -> usize {
    let order = points
        .iter()
        .flatten()
        .map(Cyclotomic::order)
        .chain(polys.iter().flat_map(|p| p.terms().map(|(_, c)| c.order())))
        .fold(1u32, |acc, o| acc.lcm(&o));
    for index in 0..3 {
        let emb = PrimeEmbedding::nth(order, index);
        let image = || -> Option<Vec<Vec<u64>>> {
            let mapped: Vec<Vec<u64>> = points
                .iter()
                .map(|x| x.iter().map(|c| emb.map(c)).collect::<Option<_>>())
                .collect::<Option<_>>()?;
            polys
                .iter()
                .map(|p| mapped.iter().map(|x| emb.evaluate(p, x)).collect::<Option<_>>())
                .collect()
        };
        if let Some(m) = image() {
            if rank_mod(m, emb.prime) == upper_bound {
                return upper_bound;
            }
        }
    }
    let exact: Vec<Vec<Cyclotomic>> = polys
        .iter()
        .map(|p| points.iter().map(|x| p.evaluate(x)).collect())
        .collect();
    linalg::rank(&exact)
}

/// Exact rank given a proven upper bound: a modular rank reaching the
/// bound certifies it; otherwise falls back to exact elimination.
pub fn certified_rank(rows: &[Vec<Cyclotomic>], upper_bound: usize) -> usize {
    if rows.iter().all(|r| r.iter().all(Cyclotomic::is_zero)) {
        return 0;
    }
    let order = lcm_order(rows);
    for index in 0..3 {
        let emb = PrimeEmbedding::nth(order, index);
        if modular_rank(rows, &emb) == Some(upper_bound) {
            return upper_bound;
        }
    }
    linalg::rank(rows)
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn c(v: i64) -> Cyclotomic {
        Cyclotomic::from_int(v)
    }

    #[test]
    fn primes_and_roots() {
        for m in [1u32, 4, 5, 12, 24] {
            let e = PrimeEmbedding::nth(m, 0);
            assert!(is_prime(e.prime));
            assert_eq!((e.prime - 1) % m as u64, 0);
            assert_eq!(pow_mod(e.root, m as u64, e.prime), 1);
            let sum = (0..m as i64).fold(Cyclotomic::zero(), |acc, k| {
                acc.add(&Cyclotomic::root_of_unity(m, k).unwrap())
            });
            assert_eq!(e.map(&sum), Some(if m == 1 { 1 } else { 0 }));
        }
        assert_ne!(PrimeEmbedding::nth(5, 0).prime, PrimeEmbedding::nth(5, 1).prime);
    }

    #[test]
    fn embedding_is_multiplicative() {
        let e = PrimeEmbedding::nth(12, 1);
        let a = Cyclotomic::cos_2pi(1, 12).unwrap().add(&Cyclotomic::from_fraction(2, 7));
        let b = Cyclotomic::i().sub(&Cyclotomic::root_of_unity(3, 1).unwrap());
        let ab = a.mul(&b);
        assert_eq!(
            e.map(&ab),
            Some(mul_mod(e.map(&a).unwrap(), e.map(&b).unwrap(), e.prime))
        );
    }

    #[test]
    fn ranks_agree_with_exact_elimination() {
        let i = Cyclotomic::i();
        let rows = vec![
            vec![c(1), i.clone(), c(0)],
            vec![i.clone(), c(-1), c(0)],
            vec![c(0), c(2), Cyclotomic::from_fraction(1, 3)],
        ];
        assert_eq!(linalg::rank(&rows), 2);
        assert_eq!(certified_rank(&rows, 3), 2);
        assert_eq!(certified_rank(&rows, 2), 2);
        assert_eq!(certified_rank(&[vec![c(0), c(0)]], 1), 0);
    }

    #[test]
    fn evaluation_rank_matches_exact_matrix() {
        // x, y, xy at (1, i), (2, 1/3), (1, i): two distinct points
        let x = Poly::var(2, 0);
        let y = Poly::var(2, 1);
        let xy = x.mul(&y);
        let points = vec![
            vec![c(1), Cyclotomic::i()],
            vec![c(2), Cyclotomic::from_fraction(1, 3)],
            vec![c(1), Cyclotomic::i()],
        ];
        let polys = [&x, &y, &xy];
        let exact: Vec<Vec<Cyclotomic>> = polys
            .iter()
            .map(|p| points.iter().map(|q| p.evaluate(q)).collect())
            .collect();
        assert_eq!(linalg::rank(&exact), 2);
        assert_eq!(certified_evaluation_rank(&polys, &points, 2), 2);
        assert_eq!(certified_evaluation_rank(&polys, &points, 3), 2);
        let e = PrimeEmbedding::nth(4, 0);
        let pt: Vec<u64> = points[1].iter().map(|c| e.map(c).unwrap()).collect();
        assert_eq!(e.evaluate(&xy, &pt), e.map(&Cyclotomic::from_fraction(2, 3)));
    }
}
