//! Exact numbers `Σ q_m √m` with `q_m` rational and `m` squarefree.
//!
//! Square roots of distinct squarefree integers are linearly independent over
//! the rationals, so two values are equal iff their coefficient maps are.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use smallvec::{smallvec, SmallVec};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// A nonzero rational coefficient. Values that fit in `i64` are kept
/// unboxed; the representation is canonical (reduced, positive
/// denominator, `Small` whenever possible), so derived equality is numeric.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
enum Coef {
    Small(i64, i64),
    Big(BigRational),
}

fn gcd_u128(mut a: u128, mut b: u128) -> u128 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

fn gcd_u64(mut a: u64, mut b: u64) -> u64 {
    if a == 0 || b == 0 {
        return a | b;
    }
    let shift = (a | b).trailing_zeros();
    a >>= a.trailing_zeros();
    loop {
        b >>= b.trailing_zeros();
        if a > b {
            std::mem::swap(&mut a, &mut b);
        }
        b -= a;
        if b == 0 {
            return a << shift;
        }
    }
}

impl Coef {
    /// `n / d` with `d > 0`, reduced in `i64` arithmetic.
    fn from_small(n: i64, d: i64) -> Coef {
        let g = gcd_u64(n.unsigned_abs(), d as u64) as i64;
        if g == 1 {
            Coef::Small(n, d)
        } else {
            Coef::Small(n / g, d / g)
        }
    }

    /// `n / d` from a wide intermediate; `d` must be nonzero.
    fn from_wide(n: i128, d: i128) -> Coef {
        let (n, d) = if d < 0 { (-n, -d) } else { (n, d) };
        let g = gcd_u128(n.unsigned_abs(), d as u128).max(1) as i128;
        let (n, d) = (n / g, d / g);
        match (i64::try_from(n), i64::try_from(d)) {
            (Ok(n), Ok(d)) if n != i64::MIN => Coef::Small(n, d),
            _ => Coef::Big(BigRational::new(n.into(), d.into())),
        }
    }

    fn from_big(q: BigRational) -> Coef {
        match (q.numer().to_i64(), q.denom().to_i64()) {
            (Some(n), Some(d)) if n != i64::MIN => Coef::Small(n, d),
            _ => Coef::Big(q),
        }
    }

    fn to_big(&self) -> BigRational {
        match self {
            Coef::Small(n, d) => BigRational::new_raw((*n).into(), (*d).into()),
            Coef::Big(q) => q.clone(),
        }
    }

    fn is_zero(&self) -> bool {
        matches!(self, Coef::Small(0, _))
    }

    fn is_positive(&self) -> bool {
        match self {
            Coef::Small(n, _) => *n > 0,
            Coef::Big(q) => q.is_positive(),
        }
    }

    fn add(&self, other: &Coef) -> Coef {
        match (self, other) {
            (Coef::Small(a, b), Coef::Small(c, d)) => {
                if b == d {
                    if let Some(n) = a.checked_add(*c).filter(|&n| n != i64::MIN) {
                        return Coef::from_small(n, *b);
                    }
                }
                let fast = a
                    .checked_mul(*d)
                    .zip(c.checked_mul(*b))
                    .and_then(|(x, y)| x.checked_add(y))
                    .zip(b.checked_mul(*d));
                match fast {
                    Some((n, den)) if n != i64::MIN => Coef::from_small(n, den),
                    _ => {
                        let (a, b, c, d) = (*a as i128, *b as i128, *c as i128, *d as i128);
                        Coef::from_wide(a * d + c * b, b * d)
                    }
                }
            }
            _ => Coef::from_big(self.to_big() + other.to_big()),
        }
    }

    fn mul(&self, other: &Coef) -> Coef {
        match (self, other) {
            (Coef::Small(a, b), Coef::Small(c, d)) => {
                // Cross-cancel first so the products stay small.
                let g1 = gcd_u64(a.unsigned_abs(), *d as u64) as i64;
                let g2 = gcd_u64(c.unsigned_abs(), *b as u64) as i64;
                let (a, d) = (a / g1.max(1), d / g1.max(1));
                let (c, b) = (c / g2.max(1), b / g2.max(1));
                match (a.checked_mul(c), b.checked_mul(d)) {
                    (Some(n), Some(den)) if n != i64::MIN => Coef::Small(n, den),
                    _ => Coef::from_wide(a as i128 * c as i128, b as i128 * d as i128),
                }
            }
            _ => Coef::from_big(self.to_big() * other.to_big()),
        }
    }

    fn neg(&self) -> Coef {
        match self {
            Coef::Small(n, d) => Coef::Small(-n, *d),
            Coef::Big(q) => Coef::from_big(-q.clone()),
        }
    }

    fn to_f64(&self) -> f64 {
        match self {
            Coef::Small(n, d) => *n as f64 / *d as f64,
            Coef::Big(q) => q.to_f64().unwrap_or(f64::NAN),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct RadicalScalar {
    // (squarefree radicand, nonzero coefficient), sorted by radicand.
    terms: SmallVec<[(u64, Coef); 1]>,
}

/// Splits `n = k² · m` with `m` squarefree; returns `(k, m)`.
pub fn square_split(mut n: u64) -> (u64, u64) {
    assert!(n > 0, "square_split of zero");
    let mut k = 1u64;
    let mut m = 1u64;
    let mut p = 2u64;
    while p * p <= n {
        let mut e = 0;
        while n.is_multiple_of(p) {
            n /= p;
            e += 1;
        }
        k *= p.pow(e / 2);
        if e % 2 == 1 {
            m *= p;
        }
        p += 1;
    }
    m *= n;
    (k, m)
}

pub fn is_squarefree(n: u64) -> bool {
    n > 0 && square_split(n).0 == 1
}

fn largest_prime_factor(mut n: u64) -> Option<u64> {
    if n < 2 {
        return None;
    }
    let mut best = 1;
    let mut p = 2;
    while p * p <= n {
        while n.is_multiple_of(p) {
            best = p;
            n /= p;
        }
        p += 1;
    }
    Some(if n > 1 { n } else { best })
}

impl RadicalScalar {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        RadicalScalar {
            terms: smallvec![(1, Coef::Small(1, 1))],
        }
    }

    pub fn rational(q: BigRational) -> Self {
        Self::term(q, 1)
    }

    pub fn integer(n: i64) -> Self {
        Self::rational(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn ratio(n: i64, d: i64) -> Self {
        Self::rational(BigRational::new(n.into(), d.into()))
    }

    /// `q · √n` for any positive `n` (square factors are pulled out).
    pub fn term(q: BigRational, n: u64) -> Self {
        if q.is_zero() {
            return Self::zero();
        }
        let (k, m) = square_split(n);
        RadicalScalar {
            terms: smallvec![(m, Coef::from_big(q * BigRational::from_integer(k.into())))],
        }
    }

    /// `√n`.
    pub fn sqrt(n: u64) -> Self {
        Self::term(BigRational::one(), n)
    }

    /// `1/√n`, written as `(1/(k·m))·√m` where `n = k²m`.
    pub fn inv_sqrt(n: u64) -> Self {
        assert!(n > 0, "1/sqrt(0)");
        let (k, m) = square_split(n);
        RadicalScalar {
            terms: smallvec![(m, Coef::from_wide(1, k as i128 * m as i128))],
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms[0] == (1, Coef::Small(1, 1))
    }

    /// `(radicand, coefficient)` pairs in increasing radicand order.
    pub fn terms(&self) -> impl Iterator<Item = (u64, BigRational)> + '_ {
        self.terms.iter().map(|(m, q)| (*m, q.to_big()))
    }

    fn coefficient(&self, m: u64) -> Option<&Coef> {
        self.terms
            .binary_search_by_key(&m, |t| t.0)
            .ok()
            .map(|i| &self.terms[i].1)
    }

    /// The rational part (coefficient of `√1`).
    pub fn rational_part(&self) -> BigRational {
        self.coefficient(1).map_or_else(BigRational::zero, Coef::to_big)
    }

    /// Some(q) when the value is rational.
    pub fn as_rational(&self) -> Option<BigRational> {
        match self.terms.len() {
            0 => Some(BigRational::zero()),
            1 => self.coefficient(1).map(Coef::to_big),
            _ => None,
        }
    }

    fn add_coef(&mut self, m: u64, q: &Coef) {
        if q.is_zero() {
            return;
        }
        match self.terms.binary_search_by_key(&m, |t| t.0) {
            Ok(i) => {
                let sum = self.terms[i].1.add(q);
                if sum.is_zero() {
                    self.terms.remove(i);
                } else {
                    self.terms[i].1 = sum;
                }
            }
            Err(i) => self.terms.insert(i, (m, q.clone())),
        }
    }

    pub fn add_assign_ref(&mut self, other: &RadicalScalar) {
        for (m, q) in &other.terms {
            self.add_coef(*m, q);
        }
    }

    pub fn scale(&self, q: &BigRational) -> RadicalScalar {
        if q.is_zero() {
            return Self::zero();
        }
        let q = Coef::from_big(q.clone());
        RadicalScalar {
            terms: self.terms.iter().map(|(m, c)| (*m, c.mul(&q))).collect(),
        }
    }

    pub fn mul_ref(&self, other: &RadicalScalar) -> RadicalScalar {
        if let ([(a, p)], [(b, q)]) = (&self.terms[..], &other.terms[..]) {
            let g = a.gcd(b);
            let c = p.mul(q);
            let c = if g == 1 { c } else { c.mul(&Coef::from_wide(g as i128, 1)) };
            return RadicalScalar { terms: smallvec![((a / g) * (b / g), c)] };
        }
        let mut out = RadicalScalar::zero();
        for (a, p) in &self.terms {
            for (b, q) in &other.terms {
                // √a·√b = g·√((a/g)(b/g)), g = gcd(a, b); the cofactors are
                // coprime and squarefree, so the product radicand is too.
                let g = a.gcd(b);
                let m = (a / g) * (b / g);
                let c = p.mul(q);
                let c = if g == 1 { c } else { c.mul(&Coef::from_wide(g as i128, 1)) };
                out.add_coef(m, &c);
            }
        }
        out
    }

    pub fn square(&self) -> RadicalScalar {
        self.mul_ref(self)
    }

    pub fn to_f64(&self) -> f64 {
        self.terms.iter().map(|(m, q)| q.to_f64() * (*m as f64).sqrt()).sum()
    }

    /// Exact sign, by recursive descent over the primes in the radicands.
    ///
    /// Write `x = a + b√p` with `p` the largest prime dividing any radicand,
    /// so `a` and `b` live in a field with fewer radicals. If `a` and `b`
    /// share a sign (or one vanishes) that is the sign of `x`; otherwise the
    /// sign of `a² - p·b²` decides which part dominates.
    pub fn signum(&self) -> i8 {
        if self.terms.is_empty() {
            return 0;
        }
        let p = match self.terms.iter().filter_map(|t| largest_prime_factor(t.0)).max() {
            None => {
                return if self.terms[0].1.is_positive() { 1 } else { -1 };
            }
            Some(p) => p,
        };
        let mut a = RadicalScalar::zero();
        let mut b = RadicalScalar::zero();
        for (m, q) in &self.terms {
            if m % p == 0 {
                b.add_coef(m / p, q);
            } else {
                a.add_coef(*m, q);
            }
        }
        let (sa, sb) = (a.signum(), b.signum());
        if sa == 0 {
            return sb;
        }
        if sb == 0 || sa == sb {
            return sa;
        }
        let pb2 = b.square().scale(&BigRational::from_integer(p.into()));
        let d = &a.square() - &pb2;
        match d.signum() {
            1 => sa,
            -1 => sb,
            _ => 0,
        }
    }

    pub fn is_negative(&self) -> bool {
        self.signum() < 0
    }
}

impl PartialOrd for RadicalScalar {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for RadicalScalar {
    /// Numeric order (exact).
    fn cmp(&self, other: &Self) -> Ordering {
        (self - other).signum().cmp(&0)
    }
}

impl<'a> Add<&'a RadicalScalar> for &'a RadicalScalar {
    type Output = RadicalScalar;
    fn add(self, rhs: &'a RadicalScalar) -> RadicalScalar {
        let mut out = self.clone();
        out.add_assign_ref(rhs);
        out
    }
}

impl Add for RadicalScalar {
    type Output = RadicalScalar;
    fn add(mut self, rhs: RadicalScalar) -> RadicalScalar {
        self.add_assign_ref(&rhs);
        self
    }
}

impl<'a> Sub<&'a RadicalScalar> for &'a RadicalScalar {
    type Output = RadicalScalar;
    fn sub(self, rhs: &'a RadicalScalar) -> RadicalScalar {
        let mut out = self.clone();
        for (m, q) in &rhs.terms {
            out.add_coef(*m, &q.neg());
        }
        out
    }
}

impl Sub for RadicalScalar {
    type Output = RadicalScalar;
    fn sub(self, rhs: RadicalScalar) -> RadicalScalar {
        &self - &rhs
    }
}

impl Neg for RadicalScalar {
    type Output = RadicalScalar;
    fn neg(self) -> RadicalScalar {
        RadicalScalar {
            terms: self.terms.iter().map(|(m, q)| (*m, q.neg())).collect(),
        }
    }
}

impl<'a> Mul<&'a RadicalScalar> for &'a RadicalScalar {
    type Output = RadicalScalar;
    fn mul(self, rhs: &'a RadicalScalar) -> RadicalScalar {
        self.mul_ref(rhs)
    }
}

impl Mul for RadicalScalar {
    type Output = RadicalScalar;
    fn mul(self, rhs: RadicalScalar) -> RadicalScalar {
        self.mul_ref(&rhs)
    }
}

impl std::iter::Sum for RadicalScalar {
    fn sum<I: Iterator<Item = RadicalScalar>>(iter: I) -> Self {
        let mut acc = RadicalScalar::zero();
        for x in iter {
            acc.add_assign_ref(&x);
        }
        acc
    }
}

impl fmt::Display for RadicalScalar {
    /// Canonical form `q1*sqrt(m1)+q2*sqrt(m2)`, rational part bare, `0` for
    /// zero.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (m, q)) in self.terms.iter().enumerate() {
            let q = q.to_big();
            if i > 0 && !q.is_negative() {
                write!(f, "+")?;
            }
            if *m == 1 {
                write!(f, "{q}")?;
            } else {
                write!(f, "{q}*sqrt({m})")?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sqrt2_squared() {
        assert_eq!(RadicalScalar::sqrt(2).square(), RadicalScalar::integer(2));
    }

    #[test]
    fn inverse_sqrt2_squared() {
        let x = RadicalScalar::inv_sqrt(2);
        assert_eq!(x, RadicalScalar::term(BigRational::new(1.into(), 2.into()), 2));
        assert_eq!(x.square(), RadicalScalar::ratio(1, 2));
    }

    #[test]
    fn sqrt6_times_sqrt10() {
        let p = RadicalScalar::sqrt(6).mul_ref(&RadicalScalar::sqrt(10));
        assert_eq!(p, RadicalScalar::term(BigRational::from_integer(2.into()), 15));
    }

    #[test]
    fn square_split_examples() {
        assert_eq!(square_split(12), (2, 3));
        assert_eq!(square_split(36), (6, 1));
        assert_eq!(square_split(30), (1, 30));
        assert_eq!(square_split(1), (1, 1));
        assert!(is_squarefree(30) && !is_squarefree(8));
    }

    #[test]
    fn inv_sqrt_of_non_squarefree() {
        // 1/√8 = √2/4
        assert_eq!(
            RadicalScalar::inv_sqrt(8),
            RadicalScalar::term(BigRational::new(1.into(), 4.into()), 2)
        );
        assert_eq!(RadicalScalar::inv_sqrt(4), RadicalScalar::ratio(1, 2));
    }

    #[test]
    fn exact_sign() {
        // √2 + √3 - √10: 1.414 + 1.732 - 3.162 = -0.016
        let x = &(&RadicalScalar::sqrt(2) + &RadicalScalar::sqrt(3)) - &RadicalScalar::sqrt(10);
        assert_eq!(x.signum(), -1);
        // 5 - 2√6 = (√3 - √2)² > 0
        let y = &RadicalScalar::integer(5) - &RadicalScalar::term(BigRational::from_integer(2.into()), 6);
        assert_eq!(y.signum(), 1);
        assert_eq!((&RadicalScalar::sqrt(3) - &RadicalScalar::sqrt(2)).square(), y);
        assert_eq!(RadicalScalar::zero().signum(), 0);
        assert!(RadicalScalar::ratio(-1, 3).is_negative());
        assert!(RadicalScalar::sqrt(2) < RadicalScalar::ratio(3, 2));
        assert!(RadicalScalar::sqrt(2) > RadicalScalar::ratio(7, 5));
    }

    #[test]
    fn display_is_canonical() {
        let x = &RadicalScalar::ratio(1, 2) + &RadicalScalar::term(BigRational::new((-3).into(), 4.into()), 2);
        assert_eq!(x.to_string(), "1/2-3/4*sqrt(2)");
        assert_eq!(RadicalScalar::zero().to_string(), "0");
        assert_eq!(RadicalScalar::inv_sqrt(6).to_string(), "1/6*sqrt(6)");
    }
}
