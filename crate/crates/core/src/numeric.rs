//! Fixed-point, arbitrary-precision complex numbers used for numeric spot
//! checks (embedding of cyclotomic values, unitarity, singular values).
//!
//! A [`Fixed`] is an integer mantissa scaled by 2^−frac. All values built
//! by one [`Numeric`] context share the same `frac`, which is the requested
//! precision plus [`GUARD_BITS`].

use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::cyclotomic::Cyclotomic;
use crate::field::Rational;

pub const GUARD_BITS: u32 = 48;

/// Default precision for numeric checks.
pub const DEFAULT_PRECISION: u32 = 128;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Fixed {
    mant: BigInt,
    frac: u32,
}

impl Fixed {
    pub fn zero(frac: u32) -> Self {
        Fixed {
            mant: BigInt::zero(),
            frac,
        }
    }

    pub fn one(frac: u32) -> Self {
        Fixed {
            mant: BigInt::one() << frac,
            frac,
        }
    }

    pub fn from_rational(r: &Rational, frac: u32) -> Self {
        let scaled = r.numer() << frac;
        Fixed {
            mant: round_div(&scaled, r.denom()),
            frac,
        }
    }

    pub fn frac_bits(&self) -> u32 {
        self.frac
    }

    pub fn abs(&self) -> Self {
        Fixed {
            mant: self.mant.abs(),
            frac: self.frac,
        }
    }

    pub fn is_negative(&self) -> bool {
        self.mant.is_negative()
    }

    /// True iff |self| < 2^−bits.
    pub fn below_pow2(&self, bits: u32) -> bool {
        if bits >= self.frac {
            return self.mant.is_zero();
        }
        self.mant.abs() < (BigInt::one() << (self.frac - bits))
    }

    pub fn div(&self, other: &Fixed) -> Fixed {
        assert_eq!(self.frac, other.frac);
        Fixed {
            mant: round_div(&(&self.mant << self.frac), &other.mant),
            frac: self.frac,
        }
    }

    pub fn sqrt(&self) -> Fixed {
        assert!(!self.is_negative(), "square root of a negative value");
        Fixed {
            mant: (&self.mant << self.frac).sqrt(),
            frac: self.frac,
        }
    }

    pub fn half(&self) -> Fixed {
        Fixed {
            mant: &self.mant >> 1u32,
            frac: self.frac,
        }
    }

    pub fn to_f64(&self) -> f64 {
        // keep 64 fractional bits, which is more than f64 can hold
        let m = if self.frac > 64 {
            &self.mant >> (self.frac - 64)
        } else {
            &self.mant << (64 - self.frac)
        };
        m.to_f64().unwrap_or(f64::NAN) / 18_446_744_073_709_551_616.0
    }
}

impl PartialOrd for Fixed {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Fixed {
    fn cmp(&self, other: &Self) -> Ordering {
        assert_eq!(self.frac, other.frac);
        self.mant.cmp(&other.mant)
    }
}

impl Add for &Fixed {
    type Output = Fixed;
    fn add(self, rhs: &Fixed) -> Fixed {
        assert_eq!(self.frac, rhs.frac);
        Fixed {
            mant: &self.mant + &rhs.mant,
            frac: self.frac,
        }
    }
}

impl Sub for &Fixed {
    type Output = Fixed;
    fn sub(self, rhs: &Fixed) -> Fixed {
        assert_eq!(self.frac, rhs.frac);
        Fixed {
            mant: &self.mant - &rhs.mant,
            frac: self.frac,
        }
    }
}

impl Mul for &Fixed {
    type Output = Fixed;
    fn mul(self, rhs: &Fixed) -> Fixed {
        assert_eq!(self.frac, rhs.frac);
        Fixed {
            mant: (&self.mant * &rhs.mant) >> self.frac,
            frac: self.frac,
        }
    }
}

impl Neg for &Fixed {
    type Output = Fixed;
    fn neg(self) -> Fixed {
        Fixed {
            mant: -&self.mant,
            frac: self.frac,
        }
    }
}

fn round_div(a: &BigInt, b: &BigInt) -> BigInt {
    let (q, r) = a.div_mod_floor(b);
    if (&r << 1u32).abs() >= b.abs() {
        if b.is_negative() {
            q - 1
        } else {
            q + 1
        }
    } else {
        q
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FixedComplex {
    pub re: Fixed,
    pub im: Fixed,
}

impl FixedComplex {
    pub fn zero(frac: u32) -> Self {
        FixedComplex {
            re: Fixed::zero(frac),
            im: Fixed::zero(frac),
        }
    }

    pub fn one(frac: u32) -> Self {
        FixedComplex {
            re: Fixed::one(frac),
            im: Fixed::zero(frac),
        }
    }

    pub fn conj(&self) -> Self {
        FixedComplex {
            re: self.re.clone(),
            im: -&self.im,
        }
    }

    pub fn norm_sqr(&self) -> Fixed {
        &(&self.re * &self.re) + &(&self.im * &self.im)
    }

    pub fn abs(&self) -> Fixed {
        self.norm_sqr().sqrt()
    }

    pub fn inv(&self) -> FixedComplex {
        let n = self.norm_sqr();
        FixedComplex {
            re: self.re.div(&n),
            im: (-&self.im).div(&n),
        }
    }

    pub fn to_f64(&self) -> (f64, f64) {
        (self.re.to_f64(), self.im.to_f64())
    }
}

impl Add for &FixedComplex {
    type Output = FixedComplex;
    fn add(self, rhs: &FixedComplex) -> FixedComplex {
        FixedComplex {
            re: &self.re + &rhs.re,
            im: &self.im + &rhs.im,
        }
    }
}

impl Sub for &FixedComplex {
    type Output = FixedComplex;
    fn sub(self, rhs: &FixedComplex) -> FixedComplex {
        FixedComplex {
            re: &self.re - &rhs.re,
            im: &self.im - &rhs.im,
        }
    }
}

impl Mul for &FixedComplex {
    type Output = FixedComplex;
    fn mul(self, rhs: &FixedComplex) -> FixedComplex {
        FixedComplex {
            re: &(&self.re * &rhs.re) - &(&self.im * &rhs.im),
            im: &(&self.re * &rhs.im) + &(&self.im * &rhs.re),
        }
    }
}

impl Neg for &FixedComplex {
    type Output = FixedComplex;
    fn neg(self) -> FixedComplex {
        FixedComplex {
            re: -&self.re,
            im: -&self.im,
        }
    }
}

/// A precision context: owns the fractional bit count and a cached π.
#[derive(Clone, Debug)]
pub struct Numeric {
    precision: u32,
    frac: u32,
    pi: Fixed,
}

impl Numeric {
    /// Panics if `precision < 53`.
    pub fn new(precision: u32) -> Self {
        assert!(precision >= 53, "numeric precision must be at least 53 bits");
        let frac = precision + GUARD_BITS;
        let pi = compute_pi(frac);
        Numeric {
            precision,
            frac,
            pi,
        }
    }

    pub fn precision(&self) -> u32 {
        self.precision
    }

    pub fn frac(&self) -> u32 {
        self.frac
    }

    pub fn pi(&self) -> &Fixed {
        &self.pi
    }

    /// Threshold 2^(−precision/2) used to decide numeric rank.
    pub fn threshold_bits(&self) -> u32 {
        self.precision / 2
    }

    pub fn rational(&self, r: &Rational) -> Fixed {
        Fixed::from_rational(r, self.frac)
    }

    /// (cos θ, sin θ).
    pub fn cos_sin(&self, theta: &Fixed) -> (Fixed, Fixed) {
        let frac = self.frac;
        let two_pi = &self.pi + &self.pi;
        // reduce into [0, 2π)
        let k = theta.mant.div_floor(&two_pi.mant);
        let reduced = Fixed {
            mant: &theta.mant - &k * &two_pi.mant,
            frac,
        };
        // halve 12 times, Taylor expand, then double back
        const HALVINGS: u32 = 12;
        let x = Fixed {
            mant: &reduced.mant >> HALVINGS,
            frac,
        };
        let x2 = &x * &x;
        let mut sin = x.clone();
        let mut cos = Fixed::one(frac);
        let mut term_s = x.clone();
        let mut term_c = Fixed::one(frac);
        let mut n: i64 = 1;
        loop {
            term_s = scale_int(&(&term_s * &x2), -1, (2 * n) * (2 * n + 1));
            term_c = scale_int(&(&term_c * &x2), -1, (2 * n - 1) * (2 * n));
            if term_s.mant.is_zero() && term_c.mant.is_zero() {
                break;
            }
            sin = &sin + &term_s;
            cos = &cos + &term_c;
            n += 1;
        }
        for _ in 0..HALVINGS {
            let s2 = &(&sin * &cos) + &(&sin * &cos);
            let c2 = &(&cos * &cos) - &(&sin * &sin);
            sin = s2;
            cos = c2;
        }
        (cos, sin)
    }

    /// e^{iθ}.
    pub fn exp_i(&self, theta: &Fixed) -> FixedComplex {
        let (re, im) = self.cos_sin(theta);
        FixedComplex { re, im }
    }

    /// e^{z} for a complex argument.
    pub fn exp(&self, z: &FixedComplex) -> FixedComplex {
        let modulus = self.exp_real(&z.re);
        let phase = self.exp_i(&z.im);
        FixedComplex {
            re: &modulus * &phase.re,
            im: &modulus * &phase.im,
        }
    }

    fn exp_real(&self, x: &Fixed) -> Fixed {
        let frac = self.frac;
        if x.mant.is_zero() {
            return Fixed::one(frac);
        }
        // e^x = (e^{x/2^h})^{2^h}
        let h = 16 + x.mant.bits().saturating_sub(frac as u64) as u32;
        let y = Fixed {
            mant: &x.mant >> h,
            frac,
        };
        let mut sum = Fixed::one(frac);
        let mut term = Fixed::one(frac);
        let mut n = 1i64;
        loop {
            term = scale_int(&(&term * &y), 1, n);
            if term.mant.is_zero() {
                break;
            }
            sum = &sum + &term;
            n += 1;
        }
        for _ in 0..h {
            sum = &sum * &sum;
        }
        sum
    }

    /// ζ_m^k = e^{2πik/m}.
    pub fn root_of_unity(&self, k: i64, m: u32) -> FixedComplex {
        let kk = k.rem_euclid(m as i64);
        let theta = Fixed {
            mant: round_div(&((&self.pi.mant << 1u32) * BigInt::from(kk)), &BigInt::from(m)),
            frac: self.frac,
        };
        self.exp_i(&theta)
    }

    /// Numeric value of an exact cyclotomic number.
    pub fn embed(&self, a: &Cyclotomic) -> FixedComplex {
        let m = a.order();
        let mut acc = FixedComplex::zero(self.frac);
        for (i, c) in a.terms() {
            let w = self.root_of_unity(i as i64, m);
            let c = self.rational(c);
            acc = &acc
                + &FixedComplex {
                    re: &c * &w.re,
                    im: &c * &w.im,
                };
        }
        acc
    }

    /// Eigenvalues of a Hermitian matrix, via cyclic Jacobi rotations on
    /// the equivalent real symmetric matrix of twice the size (each
    /// eigenvalue then appears twice; the returned list is deduplicated by
    /// taking every other value of the sorted spectrum).
    pub fn hermitian_eigenvalues(&self, h: &[Vec<FixedComplex>]) -> Vec<Fixed> {
        let n = h.len();
        let mut a = vec![vec![Fixed::zero(self.frac); 2 * n]; 2 * n];
        for i in 0..n {
            for j in 0..n {
                let x = &h[i][j].re;
                let y = &h[i][j].im;
                a[i][j] = x.clone();
                a[i + n][j + n] = x.clone();
                a[i][j + n] = -y;
                a[i + n][j] = y.clone();
            }
        }
        let mut eig = self.symmetric_eigenvalues(a);
        eig.sort();
        eig.into_iter().step_by(2).collect()
    }

    /// Eigenvalues of a real symmetric matrix (cyclic Jacobi).
    pub fn symmetric_eigenvalues(&self, mut a: Vec<Vec<Fixed>>) -> Vec<Fixed> {
        let n = a.len();
        let frac = self.frac;
        let one = Fixed::one(frac);
        // off-diagonal entries below 2^−(frac − 8) count as converged
        let tiny_bits = frac - 8;
        for _sweep in 0..60 {
            let mut rotated = false;
            for p in 0..n {
                for q in (p + 1)..n {
                    if a[p][q].below_pow2(tiny_bits) {
                        continue;
                    }
                    rotated = true;
                    let apq = a[p][q].clone();
                    let theta = (&a[q][q] - &a[p][p]).div(&(&apq + &apq));
                    let root = (&(&theta * &theta) + &one).sqrt();
                    let denom = &theta.abs() + &root;
                    let mut t = one.div(&denom);
                    if theta.is_negative() {
                        t = -&t;
                    }
                    let c = one.div(&(&(&t * &t) + &one).sqrt());
                    let s = &t * &c;
                    for k in 0..n {
                        let akp = a[k][p].clone();
                        let akq = a[k][q].clone();
                        a[k][p] = &(&c * &akp) - &(&s * &akq);
                        a[k][q] = &(&s * &akp) + &(&c * &akq);
                    }
                    for k in 0..n {
                        let apk = a[p][k].clone();
                        let aqk = a[q][k].clone();
                        a[p][k] = &(&c * &apk) - &(&s * &aqk);
                        a[q][k] = &(&s * &apk) + &(&c * &aqk);
                    }
                }
            }
            if !rotated {
                break;
            }
        }
        (0..n).map(|i| a[i][i].clone()).collect()
    }

    /// Singular values of a complex matrix (rows × cols), computed as
    /// square roots of the eigenvalues of AᴴA.
    pub fn singular_values(&self, a: &[Vec<FixedComplex>]) -> Vec<Fixed> {
        let cols = a.first().map_or(0, |r| r.len());
        let mut gram = vec![vec![FixedComplex::zero(self.frac); cols]; cols];
        for i in 0..cols {
            for j in i..cols {
                let mut acc = FixedComplex::zero(self.frac);
                for row in a {
                    acc = &acc + &(&row[i].conj() * &row[j]);
                }
                gram[j][i] = acc.conj();
                gram[i][j] = acc;
            }
        }
        self.hermitian_eigenvalues(&gram)
            .into_iter()
            .map(|e| {
                if e.is_negative() {
                    Fixed::zero(self.frac)
                } else {
                    e.sqrt()
                }
            })
            .collect()
    }

    /// Number of singular values above 2^(−precision/2).
    pub fn numeric_rank(&self, a: &[Vec<FixedComplex>]) -> usize {
        let bits = self.threshold_bits();
        self.singular_values(a)
            .iter()
            .filter(|s| !s.below_pow2(bits))
            .count()
    }
}

fn scale_int(x: &Fixed, numer: i64, denom: i64) -> Fixed {
    Fixed {
        mant: round_div(&(&x.mant * BigInt::from(numer)), &BigInt::from(denom)),
        frac: x.frac,
    }
}

/// atan(1/x) scaled by 2^frac.
fn atan_inv(x: u32, frac: u32) -> BigInt {
    let x = BigInt::from(x);
    let x2 = &x * &x;
    let mut power = (BigInt::one() << frac) / &x;
    let mut sum = power.clone();
    let mut k = 1u64;
    loop {
        power /= &x2;
        if power.is_zero() {
            break;
        }
        let term = &power / BigInt::from(2 * k + 1);
        if k % 2 == 1 {
            sum -= term;
        } else {
            sum += term;
        }
        k += 1;
    }
    sum
}

/// π by Machin's formula, with 16 extra bits that are rounded away.
fn compute_pi(frac: u32) -> Fixed {
    let work = frac + 16;
    let pi = atan_inv(5, work) * 16 - atan_inv(239, work) * 4;
    Fixed {
        mant: round_div(&pi, &(BigInt::one() << 16u32)),
        frac,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::rat;

    #[test]
    fn pi_digits() {
        let n = Numeric::new(128);
        assert!((n.pi().to_f64() - core::f64::consts::PI).abs() < 1e-15);
    }

    #[test]
    fn trig_matches_f64() {
        let n = Numeric::new(128);
        for k in 0..24 {
            let w = n.root_of_unity(k, 24);
            let angle = 2.0 * core::f64::consts::PI * k as f64 / 24.0;
            assert!((w.re.to_f64() - angle.cos()).abs() < 1e-15);
            assert!((w.im.to_f64() - angle.sin()).abs() < 1e-15);
            // |w| = 1 to well beyond double precision
            let err = &w.norm_sqr() - &Fixed::one(n.frac());
            assert!(err.below_pow2(120));
        }
    }

    #[test]
    fn real_exponential() {
        let n = Numeric::new(96);
        let e = n.exp(&FixedComplex {
            re: n.rational(&rat(1, 1)),
            im: Fixed::zero(n.frac()),
        });
        assert!((e.re.to_f64() - core::f64::consts::E).abs() < 1e-14);
    }

    #[test]
    fn symmetric_jacobi() {
        let n = Numeric::new(64);
        let f = |v: i64| n.rational(&rat(v, 1));
        // eigenvalues of [[2,1],[1,2]] are 1 and 3
        let mut eig = n.symmetric_eigenvalues(vec![vec![f(2), f(1)], vec![f(1), f(2)]]);
        eig.sort();
        assert!((eig[0].to_f64() - 1.0).abs() < 1e-15);
        assert!((eig[1].to_f64() - 3.0).abs() < 1e-15);
    }

    #[test]
    fn rank_of_rank_one_matrix() {
        let n = Numeric::new(128);
        let one = FixedComplex::one(n.frac());
        let w = n.root_of_unity(1, 3);
        let rows = vec![
            vec![one.clone(), w.clone()],
            vec![&one + &one, &w + &w],
        ];
        assert_eq!(n.numeric_rank(&rows), 1);
        let rows = vec![vec![one.clone(), w.clone()], vec![one.clone(), w.conj()]];
        assert_eq!(n.numeric_rank(&rows), 2);
    }
}
