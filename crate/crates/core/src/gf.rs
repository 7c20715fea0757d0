//! Prime fields `F_q` with `q` an odd prime.
//!
//! Residues are stored canonically in `[0, q)`. Most of the crate works on raw
//! `u32` residues through [`PrimeField`] methods; [`FieldElement`] carries its
//! field and supports the usual operators for code that prefers values.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use crate::error::{Error, Result};

/// Above this modulus `sqrt` switches from exhaustive search to Tonelli-Shanks.
const EXHAUSTIVE_SQRT_LIMIT: u32 = 10_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PrimeField {
    q: u32,
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

impl PrimeField {
    /// Builds `F_q`. Rejects composite moduli (including prime powers) and `q = 2`.
    pub fn new(q: u64) -> Result<Self> {
        if q == 2 {
            return Err(Error::EvenCharacteristic);
        }
        if q > u32::MAX as u64 {
            return Err(Error::ModulusTooLarge(q));
        }
        if !is_prime(q) {
            return Err(Error::NotPrime(q));
        }
        Ok(PrimeField { q: q as u32 })
    }

    #[inline]
    pub fn q(&self) -> u32 {
        self.q
    }

    #[inline]
    pub fn reduce(&self, v: i64) -> u32 {
        v.rem_euclid(self.q as i64) as u32
    }

    pub fn elem(&self, v: i64) -> FieldElement {
        FieldElement {
            value: self.reduce(v),
            field: *self,
        }
    }

    pub fn zero(&self) -> FieldElement {
        self.elem(0)
    }

    pub fn one(&self) -> FieldElement {
        self.elem(1)
    }

    /// Iterates over all residues `0..q`.
    pub fn residues(&self) -> impl Iterator<Item = u32> {
        0..self.q
    }

    #[inline]
    pub fn add(&self, a: u32, b: u32) -> u32 {
        let s = a as u64 + b as u64;
        (s % self.q as u64) as u32
    }

    #[inline]
    pub fn sub(&self, a: u32, b: u32) -> u32 {
        if a >= b {
            a - b
        } else {
            (a as u64 + self.q as u64 - b as u64) as u32
        }
    }

    #[inline]
    pub fn neg(&self, a: u32) -> u32 {
        if a == 0 {
            0
        } else {
            self.q - a
        }
    }

    #[inline]
    pub fn mul(&self, a: u32, b: u32) -> u32 {
        ((a as u64 * b as u64) % self.q as u64) as u32
    }

    pub fn pow(&self, a: u32, mut e: u64) -> u32 {
        let q = self.q as u64;
        let mut base = a as u64 % q;
        let mut acc = 1u64 % q;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base % q;
            }
            base = base * base % q;
            e >>= 1;
        }
        acc as u32
    }

    /// Multiplicative inverse by Fermat; `None` for zero.
    pub fn inv(&self, a: u32) -> Option<u32> {
        if a.is_multiple_of(self.q) {
            None
        } else {
            Some(self.pow(a, self.q as u64 - 2))
        }
    }

    pub fn div(&self, a: u32, b: u32) -> Option<u32> {
        self.inv(b).map(|bi| self.mul(a, bi))
    }

    /// Legendre symbol via Euler's criterion.
    pub fn legendre(&self, a: u32) -> i8 {
        let a = a % self.q;
        if a == 0 {
            return 0;
        }
        if self.pow(a, (self.q as u64 - 1) / 2) == 1 {
            1
        } else {
            -1
        }
    }

    /// True for nonzero squares.
    pub fn is_square(&self, a: u32) -> bool {
        self.legendre(a) == 1
    }

    /// Returns the smaller of the two square roots, `Some(0)` for zero, `None` for
    /// non-residues.
    pub fn sqrt(&self, a: u32) -> Option<u32> {
        let a = a % self.q;
        if a == 0 {
            return Some(0);
        }
        if self.legendre(a) != 1 {
            return None;
        }
        let r = if self.q <= EXHAUSTIVE_SQRT_LIMIT {
            (1..=self.q / 2).find(|&r| self.mul(r, r) == a)?
        } else {
            self.tonelli_shanks(a)
        };
        Some(r.min(self.neg(r)))
    }

    fn tonelli_shanks(&self, a: u32) -> u32 {
        let q = self.q as u64;
        let mut s = 0;
        let mut odd = q - 1;
        while odd.is_multiple_of(2) {
            odd /= 2;
            s += 1;
        }
        let z = self.smallest_nonsquare();
        let mut m = s;
        let mut c = self.pow(z, odd);
        let mut t = self.pow(a, odd);
        let mut r = self.pow(a, odd.div_ceil(2));
        while t != 1 {
            let mut i = 0;
            let mut tt = t;
            while tt != 1 {
                tt = self.mul(tt, tt);
                i += 1;
            }
            let b = self.pow(c, 1u64 << (m - i - 1));
            m = i;
            c = self.mul(b, b);
            t = self.mul(t, c);
            r = self.mul(r, b);
        }
        r
    }

    pub fn smallest_nonsquare(&self) -> u32 {
        (2..self.q)
            .find(|&a| self.legendre(a) == -1)
            .expect("every odd prime field has a non-residue")
    }

    /// Canonical representative of the square class of a nonzero element:
    /// `1` for squares, the smallest non-residue otherwise.
    pub fn square_class_rep(&self, a: u32) -> u32 {
        match self.legendre(a) {
            1 => 1,
            -1 => self.smallest_nonsquare(),
            _ => 0,
        }
    }

    /// Lifts a residue to the symmetric range `(-q/2, q/2]`.
    pub fn signed(&self, a: u32) -> i64 {
        let a = (a % self.q) as i64;
        if a > self.q as i64 / 2 {
            a - self.q as i64
        } else {
            a
        }
    }

    /// Nonzero squares, ascending.
    pub fn nonzero_squares(&self) -> Vec<u32> {
        let mut v: Vec<u32> = (1..self.q).map(|a| self.mul(a, a)).collect();
        v.sort_unstable();
        v.dedup();
        v
    }
}

impl fmt::Display for PrimeField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F_{}", self.q)
    }
}

/// A residue bound to its field.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct FieldElement {
    value: u32,
    field: PrimeField,
}

impl FieldElement {
    #[inline]
    pub fn value(&self) -> u32 {
        self.value
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn is_zero(&self) -> bool {
        self.value == 0
    }

    pub fn pow(&self, e: u64) -> Self {
        self.with(self.field.pow(self.value, e))
    }

    pub fn inverse(&self) -> Option<Self> {
        self.field.inv(self.value).map(|v| self.with(v))
    }

    pub fn legendre(&self) -> i8 {
        self.field.legendre(self.value)
    }

    pub fn sqrt(&self) -> Option<Self> {
        self.field.sqrt(self.value).map(|v| self.with(v))
    }

    fn with(&self, value: u32) -> Self {
        FieldElement {
            value,
            field: self.field,
        }
    }

    fn check(&self, other: &Self) {
        assert_eq!(self.field, other.field, "mixed-field arithmetic");
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

impl Add for FieldElement {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        self.check(&rhs);
        self.with(self.field.add(self.value, rhs.value))
    }
}

impl Sub for FieldElement {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        self.check(&rhs);
        self.with(self.field.sub(self.value, rhs.value))
    }
}

impl Mul for FieldElement {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        self.check(&rhs);
        self.with(self.field.mul(self.value, rhs.value))
    }
}

impl Neg for FieldElement {
    type Output = Self;
    fn neg(self) -> Self {
        self.with(self.field.neg(self.value))
    }
}

impl Div for FieldElement {
    type Output = Self;
    /// Panics on division by zero, like integer division.
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn div(self, rhs: Self) -> Self {
        self.check(&rhs);
        let inv = rhs.inverse().expect("division by zero in F_q");
        self * inv
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn construction() {
        assert_eq!(PrimeField::new(7).unwrap().q(), 7);
        assert_eq!(PrimeField::new(9), Err(Error::NotPrime(9)));
        assert_eq!(PrimeField::new(2), Err(Error::EvenCharacteristic));
        assert_eq!(PrimeField::new(1), Err(Error::NotPrime(1)));
        assert_eq!(PrimeField::new(25), Err(Error::NotPrime(25)));
    }

    #[test]
    fn legendre_examples() {
        let f = PrimeField::new(7).unwrap();
        // squares mod 7 by exhaustion
        let squares: Vec<u32> = (1..7).map(|a| a * a % 7).collect();
        assert!(squares.contains(&2) && !squares.contains(&3));
        assert_eq!(f.legendre(2), 1);
        assert_eq!(f.legendre(3), -1);
        assert_eq!(f.legendre(0), 0);
    }

    #[test]
    fn sqrt_examples() {
        let f5 = PrimeField::new(5).unwrap();
        assert_eq!(f5.sqrt(f5.reduce(-1)), Some(2));
        let f7 = PrimeField::new(7).unwrap();
        assert_eq!(f7.sqrt(f7.reduce(-1)), None);
        assert_eq!(f7.sqrt(0), Some(0));
    }

    #[test]
    fn multiplicativity_exhaustive() {
        for q in [3u64, 5, 7, 11, 13, 17, 19, 23, 29, 31] {
            let f = PrimeField::new(q).unwrap();
            for a in 1..f.q() {
                for b in 1..f.q() {
                    assert_eq!(f.legendre(a) * f.legendre(b), f.legendre(f.mul(a, b)));
                }
            }
        }
    }

    #[test]
    fn sqrt_consistent_with_legendre() {
        for q in [3u64, 5, 7, 11, 13, 17, 19, 23, 29, 31] {
            let f = PrimeField::new(q).unwrap();
            for a in 0..f.q() {
                let r = f.sqrt(a);
                assert_eq!(r.is_some(), f.legendre(a) >= 0);
                if let Some(r) = r {
                    assert_eq!(f.mul(r, r), a);
                    assert!(r <= f.neg(r) || r == 0);
                }
            }
        }
    }

    #[test]
    fn minus_one_is_square_iff_one_mod_four() {
        for q in (3u64..100).filter(|&q| is_prime(q)) {
            let f = PrimeField::new(q).unwrap();
            assert_eq!(f.sqrt(f.reduce(-1)).is_some(), q % 4 == 1, "q = {q}");
        }
    }

    #[test]
    fn tonelli_shanks_matches_exhaustive() {
        let f = PrimeField::new(10_009).unwrap();
        for a in [2u32, 3, 5, 7, 10, 1234, 10_008] {
            let r = f.sqrt(a);
            assert_eq!(r.is_some(), f.legendre(a) == 1);
            if let Some(r) = r {
                assert_eq!(f.mul(r, r), a);
                let brute = (1..=f.q() / 2).find(|&s| f.mul(s, s) == a).unwrap();
                assert_eq!(r, brute);
            }
        }
    }

    #[test]
    fn element_operators() {
        let f = PrimeField::new(11).unwrap();
        let a = f.elem(7);
        let b = f.elem(5);
        assert_eq!((a + b).value(), 1);
        assert_eq!((a - b).value(), 2);
        assert_eq!((b - a).value(), 9);
        assert_eq!((a * b).value(), 2);
        assert_eq!((-a).value(), 4);
        assert_eq!((a / b) * b, a);
        assert_eq!(a.pow(10), f.one());
        assert!(f.zero().inverse().is_none());
    }

    fn arb_f13() -> impl Strategy<Value = (u32, u32, u32)> {
        (0u32..13, 0u32..13, 0u32..13)
    }

    proptest! {
        #[test]
        fn field_axioms((a, b, c) in arb_f13()) {
            let f = PrimeField::new(13).unwrap();
            prop_assert_eq!(f.add(a, b), f.add(b, a));
            prop_assert_eq!(f.mul(a, b), f.mul(b, a));
            prop_assert_eq!(f.add(f.add(a, b), c), f.add(a, f.add(b, c)));
            prop_assert_eq!(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
            prop_assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
            prop_assert_eq!(f.add(a, f.neg(a)), 0);
            prop_assert_eq!(f.sub(a, b), f.add(a, f.neg(b)));
            if a != 0 {
                prop_assert_eq!(f.mul(a, f.inv(a).unwrap()), 1);
            }
        }
    }
}
