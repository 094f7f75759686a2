//! Exact arithmetic in the real field generated over the rationals by square
//! roots of squarefree positive integers.
//!
//! A [`RadicalScalar`] is stored as a finite sum `Σ c_d·√d` with `d` squarefree
//! and every `c_d` a nonzero rational. Because the `√d` for distinct squarefree
//! `d` are linearly independent over ℚ, this form is canonical and equality is
//! structural.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::iter::{Product, Sum};
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};

use num::bigint::BigInt;
use num::integer::Integer;
use num::rational::BigRational;
use num::traits::{One, Signed, ToPrimitive, Zero};
use serde::{Serialize, Serializer};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ScalarError {
    #[error("square root of zero requested; radicands must be positive")]
    ZeroRadicand,
    #[error("division by zero")]
    DivisionByZero,
}

#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct RadicalScalar {
    terms: BTreeMap<u64, BigRational>,
}

/// Splits `n = s²·d` with `d` squarefree and returns `(s, d)`.
pub fn square_split(n: u64) -> (u64, u64) {
    let mut s = 1u64;
    let mut d = 1u64;
    let mut m = n;
    let mut p = 2u64;
    while p * p <= m {
        let mut e = 0;
        while m % p == 0 {
            m /= p;
            e += 1;
        }
        s *= p.pow(e / 2);
        if e % 2 == 1 {
            d *= p;
        }
        p += 1;
    }
    (s, d * m)
}

fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut p = 2u64;
    while p * p <= n {
        if n % p == 0 {
            out.push(p);
            while n % p == 0 {
                n /= p;
            }
        }
        p += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

fn ratio(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

impl RadicalScalar {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::from_int(1)
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_rational(ratio(n, 1))
    }

    /// `n/d` as a rational scalar. Panics if `d == 0`.
    pub fn from_frac(n: i64, d: i64) -> Self {
        Self::from_rational(ratio(n, d))
    }

    pub fn from_rational(q: BigRational) -> Self {
        Self::term(q, 1)
    }

    /// `q·√d` for squarefree `d`; non-squarefree `d` is canonicalised.
    pub fn term(q: BigRational, d: u64) -> Self {
        let mut terms = BTreeMap::new();
        if !q.is_zero() && d > 0 {
            let (s, core) = square_split(d);
            terms.insert(core, q * BigRational::from_integer(BigInt::from(s)));
        }
        Self { terms }
    }

    /// `√n` written as `s·√d` with `d` squarefree.
    pub fn canonical_sqrt(n: u64) -> Result<Self, ScalarError> {
        if n == 0 {
            return Err(ScalarError::ZeroRadicand);
        }
        Ok(Self::term(BigRational::one(), n))
    }

    /// `n^{p/2}` for any integer `p`.
    pub fn pow_half(n: u64, p: i64) -> Result<Self, ScalarError> {
        if n == 0 {
            return Err(ScalarError::ZeroRadicand);
        }
        let whole = BigRational::from_integer(BigInt::from(n)).pow((p.abs() / 2) as i32);
        let mut out = Self::from_rational(whole);
        if p.abs() % 2 == 1 {
            out = out * Self::canonical_sqrt(n)?;
        }
        if p < 0 {
            out = out.invert()?;
        }
        Ok(out)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.get(&1).is_some_and(|c| c.is_one())
    }

    pub fn is_rational(&self) -> bool {
        self.terms.keys().all(|&d| d == 1)
    }

    /// The rational value, if the scalar has no irrational part.
    pub fn as_rational(&self) -> Option<BigRational> {
        if !self.is_rational() {
            return None;
        }
        Some(self.terms.get(&1).cloned().unwrap_or_else(BigRational::zero))
    }

    /// Iterates `(radicand, coefficient)` pairs in increasing radicand order.
    pub fn terms(&self) -> impl Iterator<Item = (u64, &BigRational)> {
        self.terms.iter().map(|(&d, c)| (d, c))
    }

    fn add_term(&mut self, d: u64, c: BigRational) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(d).or_insert_with(BigRational::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&d);
        }
    }

    pub fn scale(&self, q: &BigRational) -> Self {
        if q.is_zero() {
            return Self::zero();
        }
        Self {
            terms: self.terms.iter().map(|(&d, c)| (d, c * q)).collect(),
        }
    }

    fn primes(&self) -> Vec<u64> {
        let mut ps: Vec<u64> = self.terms.keys().flat_map(|&d| prime_factors(d)).collect();
        ps.sort_unstable();
        ps.dedup();
        ps
    }

    /// Galois conjugate sending `√p ↦ −√p`.
    pub fn flip(&self, p: u64) -> Self {
        Self {
            terms: self
                .terms
                .iter()
                .map(|(&d, c)| (d, if d % p == 0 { -c.clone() } else { c.clone() }))
                .collect(),
        }
    }

    /// Multiplicative inverse by successive norm rationalisation over each
    /// prime occurring in a radicand.
    pub fn invert(&self) -> Result<Self, ScalarError> {
        if self.is_zero() {
            return Err(ScalarError::DivisionByZero);
        }
        let mut y = self.clone();
        let mut acc = Self::one();
        for p in self.primes() {
            let c = y.flip(p);
            y = &y * &c;
            acc = &acc * &c;
        }
        let n = y.as_rational().expect("norm is rational");
        Ok(acc.scale(&n.recip()))
    }

    /// Exact sign under the embedding `√d ↦` positive real root.
    pub fn signum(&self) -> Ordering {
        let Some(&p) = self.primes().last() else {
            return self
                .terms
                .get(&1)
                .map_or(Ordering::Equal, |c| c.cmp(&BigRational::zero()));
        };
        let mut a = Self::zero();
        let mut b = Self::zero();
        for (&d, c) in &self.terms {
            if d % p == 0 {
                b.add_term(d / p, c.clone());
            } else {
                a.add_term(d, c.clone());
            }
        }
        let (sa, sb) = (a.signum(), b.signum());
        if sb == Ordering::Equal {
            return sa;
        }
        if sa == Ordering::Equal || sa == sb {
            return sb;
        }
        let pr = BigRational::from_integer(BigInt::from(p));
        let diff = &(&a * &a) - &(&b * &b).scale(&pr);
        match diff.signum() {
            Ordering::Equal => Ordering::Equal,
            Ordering::Greater => sa,
            Ordering::Less => sb,
        }
    }

    pub fn to_f64(&self) -> f64 {
        self.terms
            .iter()
            .map(|(&d, c)| c.to_f64().unwrap_or(f64::NAN) * (d as f64).sqrt())
            .sum()
    }

    pub fn pow(&self, e: u32) -> Self {
        (0..e).fold(Self::one(), |acc, _| &acc * self)
    }
}

impl fmt::Display for RadicalScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (&d, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            let a = c.abs();
            match (i, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            if d == 1 {
                write!(f, "{a}")?;
            } else if a.is_one() {
                write!(f, "sqrt({d})")?;
            } else if a.is_integer() {
                write!(f, "{a}*sqrt({d})")?;
            } else {
                write!(f, "({a})*sqrt({d})")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for RadicalScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RadicalScalar({self})")
    }
}

impl Serialize for RadicalScalar {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl From<i64> for RadicalScalar {
    fn from(n: i64) -> Self {
        Self::from_int(n)
    }
}

impl From<BigRational> for RadicalScalar {
    fn from(q: BigRational) -> Self {
        Self::from_rational(q)
    }
}

impl<'a> Add<&'a RadicalScalar> for &'a RadicalScalar {
    type Output = RadicalScalar;
    fn add(self, rhs: &RadicalScalar) -> RadicalScalar {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl AddAssign<&RadicalScalar> for RadicalScalar {
    fn add_assign(&mut self, rhs: &RadicalScalar) {
        for (&d, c) in &rhs.terms {
            self.add_term(d, c.clone());
        }
    }
}

impl AddAssign for RadicalScalar {
    fn add_assign(&mut self, rhs: RadicalScalar) {
        *self += &rhs;
    }
}

impl Add for RadicalScalar {
    type Output = RadicalScalar;
    fn add(mut self, rhs: RadicalScalar) -> RadicalScalar {
        self += &rhs;
        self
    }
}

impl Neg for RadicalScalar {
    type Output = RadicalScalar;
    fn neg(self) -> RadicalScalar {
        RadicalScalar {
            terms: self.terms.into_iter().map(|(d, c)| (d, -c)).collect(),
        }
    }
}

impl Neg for &RadicalScalar {
    type Output = RadicalScalar;
    fn neg(self) -> RadicalScalar {
        -self.clone()
    }
}

impl<'a> Sub<&'a RadicalScalar> for &'a RadicalScalar {
    type Output = RadicalScalar;
    fn sub(self, rhs: &RadicalScalar) -> RadicalScalar {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl SubAssign<&RadicalScalar> for RadicalScalar {
    fn sub_assign(&mut self, rhs: &RadicalScalar) {
        for (&d, c) in &rhs.terms {
            self.add_term(d, -c.clone());
        }
    }
}

impl Sub for RadicalScalar {
    type Output = RadicalScalar;
    fn sub(mut self, rhs: RadicalScalar) -> RadicalScalar {
        self -= &rhs;
        self
    }
}

impl<'a> Mul<&'a RadicalScalar> for &'a RadicalScalar {
    type Output = RadicalScalar;
    fn mul(self, rhs: &RadicalScalar) -> RadicalScalar {
        let mut out = RadicalScalar::zero();
        for (&d1, c1) in &self.terms {
            for (&d2, c2) in &rhs.terms {
                let g = d1.gcd(&d2);
                let d = (d1 / g) * (d2 / g);
                let c = c1 * c2 * BigRational::from_integer(BigInt::from(g));
                out.add_term(d, c);
            }
        }
        out
    }
}

impl Mul for RadicalScalar {
    type Output = RadicalScalar;
    fn mul(self, rhs: RadicalScalar) -> RadicalScalar {
        &self * &rhs
    }
}

impl MulAssign<&RadicalScalar> for RadicalScalar {
    fn mul_assign(&mut self, rhs: &RadicalScalar) {
        *self = &*self * rhs;
    }
}

impl Div for RadicalScalar {
    type Output = RadicalScalar;
    /// Panics on a zero divisor; use [`RadicalScalar::invert`] to handle it.
    fn div(self, rhs: RadicalScalar) -> RadicalScalar {
        &self * &rhs.invert().expect("division by zero")
    }
}

impl<'a> Div<&'a RadicalScalar> for &'a RadicalScalar {
    type Output = RadicalScalar;
    fn div(self, rhs: &RadicalScalar) -> RadicalScalar {
        self * &rhs.invert().expect("division by zero")
    }
}

impl Sum for RadicalScalar {
    fn sum<I: Iterator<Item = RadicalScalar>>(iter: I) -> Self {
        iter.fold(Self::zero(), |mut acc, x| {
            acc += &x;
            acc
        })
    }
}

impl Product for RadicalScalar {
    fn product<I: Iterator<Item = RadicalScalar>>(iter: I) -> Self {
        iter.fold(Self::one(), |acc, x| &acc * &x)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn sq(n: u64) -> RadicalScalar {
        RadicalScalar::canonical_sqrt(n).unwrap()
    }
    fn int(n: i64) -> RadicalScalar {
        RadicalScalar::from_int(n)
    }

    #[test]
    fn canonical_sqrt_extracts_squares() {
        assert_eq!(sq(4), int(2));
        assert_eq!(sq(12), &int(2) * &sq(3));
        assert_eq!(sq(3).terms().collect::<Vec<_>>(), vec![(3, &ratio(1, 1))]);
        assert_eq!(
            RadicalScalar::canonical_sqrt(0),
            Err(ScalarError::ZeroRadicand)
        );
    }

    #[test]
    fn add_examples() {
        assert_eq!(&sq(3) + &sq(3), &int(2) * &sq(3));
        assert!((&sq(3) + &(-sq(3))).is_zero());
        let a = &int(1) + &sq(2);
        let b = &int(1) - &sq(2);
        assert_eq!(&a + &b, int(2));
    }

    #[test]
    fn mul_examples() {
        assert_eq!(&sq(2) * &sq(6), &int(2) * &sq(3));
        assert_eq!(&sq(3) * &sq(3), int(3));
        let a = &int(1) + &sq(2);
        let b = &int(1) - &sq(2);
        assert_eq!(&a * &b, int(-1));
    }

    #[test]
    fn invert_examples() {
        assert_eq!(sq(3).invert().unwrap(), sq(3).scale(&ratio(1, 3)));
        assert_eq!(int(2).invert().unwrap(), RadicalScalar::from_frac(1, 2));
        let a = &int(1) + &sq(2);
        assert_eq!(a.invert().unwrap(), &int(-1) + &sq(2));
        assert_eq!(int(0).invert(), Err(ScalarError::DivisionByZero));
    }

    #[test]
    fn pow_half_examples() {
        assert_eq!(
            RadicalScalar::pow_half(3, -1).unwrap(),
            sq(3).scale(&ratio(1, 3))
        );
        assert_eq!(RadicalScalar::pow_half(2, 3).unwrap(), &int(2) * &sq(2));
        assert_eq!(RadicalScalar::pow_half(6, 0).unwrap(), int(1));
        assert_eq!(RadicalScalar::pow_half(4, -3).unwrap(), RadicalScalar::from_frac(1, 8));
        assert!(RadicalScalar::pow_half(0, 1).is_err());
    }

    #[test]
    fn rendering() {
        assert_eq!(RadicalScalar::pow_half(2, -1).unwrap().to_string(), "(1/2)*sqrt(2)");
        assert_eq!(int(1).to_string(), "1");
        assert_eq!(int(0).to_string(), "0");
        let x = &(&RadicalScalar::from_frac(-1, 3) + &sq(2)) - &(&int(3) * &sq(6));
        assert_eq!(x.to_string(), "-1/3 + sqrt(2) - 3*sqrt(6)");
    }

    #[test]
    fn sign_of_nested_radicals() {
        // √2 + √3 − √10 ≈ −0.0165
        let x = &(&sq(2) + &sq(3)) - &sq(10);
        assert_eq!(x.signum(), Ordering::Less);
        assert!(x.to_f64() < 0.0);
        let y = &(&int(5) - &sq(6)) - &sq(6);
        assert_eq!(y.signum(), Ordering::Greater);
        assert_eq!(int(0).signum(), Ordering::Equal);
    }

    fn arb_scalar() -> impl Strategy<Value = RadicalScalar> {
        prop::collection::vec((-6i64..=6, 1i64..=4, prop::sample::select(vec![1u64, 2, 3, 5, 6, 10, 15])), 0..4)
            .prop_map(|ts| {
                ts.into_iter()
                    .map(|(n, d, r)| RadicalScalar::term(ratio(n, d), r))
                    .sum()
            })
    }

    proptest! {
        #[test]
        fn ring_axioms(a in arb_scalar(), b in arb_scalar(), c in arb_scalar()) {
            prop_assert_eq!(&a + &b, &b + &a);
            prop_assert_eq!(&a * &b, &b * &a);
            prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert!((&a - &a).is_zero());
        }

        #[test]
        fn invert_is_two_sided(a in arb_scalar()) {
            prop_assume!(!a.is_zero());
            let inv = a.invert().unwrap();
            prop_assert!((&a * &inv).is_one());
            prop_assert!((&inv * &a).is_one());
        }

        #[test]
        fn sqrt_is_multiplicative(a in 1u64..=10_000, b in 1u64..=10_000) {
            prop_assert_eq!(&sq(a) * &sq(b), sq(a * b));
        }

        #[test]
        fn zero_iff_termwise_zero(a in arb_scalar(), b in arb_scalar()) {
            let s = &a + &b;
            let termwise = a.terms().all(|(d, c)| {
                b.terms().any(|(e, x)| e == d && (c + x).is_zero())
            }) && b.terms().all(|(d, _)| a.terms().any(|(e, _)| e == d));
            prop_assert_eq!(s.is_zero(), termwise);
        }

        #[test]
        fn sign_matches_float(a in arb_scalar()) {
            let f = a.to_f64();
            prop_assume!(f.abs() > 1e-9 || a.is_zero());
            let expect = if a.is_zero() { Ordering::Equal } else if f > 0.0 { Ordering::Greater } else { Ordering::Less };
            prop_assert_eq!(a.signum(), expect);
        }
    }
}
