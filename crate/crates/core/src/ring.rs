//! Residue classes of `Z_m` and dual numbers over them.
//!
//! Every element carries its modulus. Combining elements of different rings
//! is an error ([`Error::ModulusMismatch`]) for the `checked_*` methods and a
//! panic for the operator impls.

use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};

/// Largest supported modulus. Products of two residues then fit in a `u64`.
pub const MAX_MODULUS: u64 = 1 << 31;

pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Primes in `lo..=hi`, ascending.
pub fn primes_in(lo: u64, hi: u64) -> Vec<u64> {
    (lo.max(2)..=hi).filter(|&q| is_prime(q)).collect()
}

#[inline]
pub(crate) fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    a * b % m
}

#[inline]
pub(crate) fn add_mod(a: u64, b: u64, m: u64) -> u64 {
    let s = a + b;
    if s >= m {
        s - m
    } else {
        s
    }
}

#[inline]
pub(crate) fn sub_mod(a: u64, b: u64, m: u64) -> u64 {
    if a >= b {
        a - b
    } else {
        a + m - b
    }
}

/// Reduces an arbitrary integer into `[0, m)`.
#[inline]
pub fn reduce_i128(v: i128, m: u64) -> u64 {
    v.rem_euclid(m as i128) as u64
}

/// Extended Euclid modulo `m`; `None` when `gcd(a, m) > 1`.
pub(crate) fn inv_mod(a: u64, m: u64) -> Option<u64> {
    let (mut old_r, mut r) = (a as i64, m as i64);
    let (mut old_s, mut s) = (1i64, 0i64);
    while r != 0 {
        let q = old_r / r;
        (old_r, r) = (r, old_r - q * r);
        (old_s, s) = (s, old_s - q * s);
    }
    if old_r != 1 {
        return None;
    }
    Some(old_s.rem_euclid(m as i64) as u64)
}

pub(crate) fn checked_pow(base: u64, exp: u32) -> Result<u64> {
    base.checked_pow(exp).ok_or(Error::Overflow)
}

/// A modulus `m >= 2` together with its prime factorization.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Modulus {
    m: u64,
    factors: Vec<(u64, u32)>,
}

/// Trial-division factorization of `m`.
pub fn factorize(m: u64) -> Result<Modulus> {
    if !(2..=MAX_MODULUS).contains(&m) {
        return Err(Error::InvalidModulus(m));
    }
    let mut factors = Vec::new();
    let mut rest = m;
    let mut d = 2;
    while d * d <= rest {
        if rest.is_multiple_of(d) {
            let mut e = 0;
            while rest.is_multiple_of(d) {
                rest /= d;
                e += 1;
            }
            factors.push((d, e));
        }
        d += 1;
    }
    if rest > 1 {
        factors.push((rest, 1));
    }
    Ok(Modulus { m, factors })
}

impl Modulus {
    pub fn new(m: u64) -> Result<Self> {
        factorize(m)
    }

    /// `p^n`, validated.
    pub fn prime_power(p: u64, n: u32) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if n == 0 {
            return Err(Error::InvalidArgument("exponent must be at least 1"));
        }
        let m = checked_pow(p, n)?;
        factorize(m)
    }

    pub fn value(&self) -> u64 {
        self.m
    }

    /// `(p_i, n_i)` with strictly increasing primes.
    pub fn factors(&self) -> &[(u64, u32)] {
        &self.factors
    }

    pub fn primes(&self) -> impl Iterator<Item = u64> + '_ {
        self.factors.iter().map(|&(p, _)| p)
    }

    /// `Some((p, n))` if `m = p^n`.
    pub fn as_prime_power(&self) -> Option<(u64, u32)> {
        match self.factors.as_slice() {
            [(p, n)] => Some((*p, *n)),
            _ => None,
        }
    }

    pub fn is_prime(&self) -> bool {
        matches!(self.factors.as_slice(), [(_, 1)])
    }

    pub fn is_unit(&self, a: u64) -> bool {
        gcd(a % self.m, self.m) == 1
    }
}

impl fmt::Display for Modulus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.m)
    }
}

pub(crate) fn check_modulus(m: u64) -> Result<()> {
    if (2..=MAX_MODULUS).contains(&m) {
        Ok(())
    } else {
        Err(Error::InvalidModulus(m))
    }
}

fn same(a: u64, b: u64) -> Result<u64> {
    if a == b {
        Ok(a)
    } else {
        Err(Error::ModulusMismatch { left: a, right: b })
    }
}

/// A residue class `value + mZ`, always normalized into `[0, m)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct ModInt {
    value: u64,
    m: u64,
}

impl ModInt {
    /// Panics if `m` is outside `2..=2^31`.
    pub fn new(value: u64, m: u64) -> Self {
        check_modulus(m).expect("invalid modulus");
        ModInt { value: value % m, m }
    }

    pub fn from_i128(value: i128, m: u64) -> Self {
        check_modulus(m).expect("invalid modulus");
        ModInt { value: reduce_i128(value, m), m }
    }

    pub fn zero(m: u64) -> Self {
        Self::new(0, m)
    }

    pub fn one(m: u64) -> Self {
        Self::new(1, m)
    }

    pub fn value(self) -> u64 {
        self.value
    }

    pub fn modulus(self) -> u64 {
        self.m
    }

    pub fn is_zero(self) -> bool {
        self.value == 0
    }

    pub fn is_unit(self) -> bool {
        gcd(self.value, self.m) == 1
    }

    pub fn checked_add(self, rhs: Self) -> Result<Self> {
        let m = same(self.m, rhs.m)?;
        Ok(ModInt { value: add_mod(self.value, rhs.value, m), m })
    }

    pub fn checked_sub(self, rhs: Self) -> Result<Self> {
        let m = same(self.m, rhs.m)?;
        Ok(ModInt { value: sub_mod(self.value, rhs.value, m), m })
    }

    pub fn checked_mul(self, rhs: Self) -> Result<Self> {
        let m = same(self.m, rhs.m)?;
        Ok(ModInt { value: mul_mod(self.value, rhs.value, m), m })
    }

    pub fn inverse(self) -> Result<Self> {
        inv_mod(self.value, self.m)
            .map(|value| ModInt { value, m: self.m })
            .ok_or(Error::NotAUnit { value: self.value, modulus: self.m })
    }

    pub fn pow(self, mut e: u64) -> Self {
        let mut base = self.value;
        let mut acc = 1 % self.m;
        while e > 0 {
            if e & 1 == 1 {
                acc = mul_mod(acc, base, self.m);
            }
            base = mul_mod(base, base, self.m);
            e >>= 1;
        }
        ModInt { value: acc, m: self.m }
    }
}

impl Add for ModInt {
    type Output = ModInt;
    fn add(self, rhs: Self) -> Self {
        self.checked_add(rhs).expect("modulus mismatch")
    }
}

impl Sub for ModInt {
    type Output = ModInt;
    fn sub(self, rhs: Self) -> Self {
        self.checked_sub(rhs).expect("modulus mismatch")
    }
}

impl Mul for ModInt {
    type Output = ModInt;
    fn mul(self, rhs: Self) -> Self {
        self.checked_mul(rhs).expect("modulus mismatch")
    }
}

impl Neg for ModInt {
    type Output = ModInt;
    fn neg(self) -> Self {
        ModInt { value: sub_mod(0, self.value, self.m), m: self.m }
    }
}

impl fmt::Display for ModInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

/// An element `re + eps·α` of `Z_m[α]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct DualNum {
    re: ModInt,
    eps: ModInt,
}

impl DualNum {
    pub fn new(re: u64, eps: u64, m: u64) -> Self {
        DualNum { re: ModInt::new(re, m), eps: ModInt::new(eps, m) }
    }

    pub fn from_parts(re: ModInt, eps: ModInt) -> Result<Self> {
        same(re.m, eps.m)?;
        Ok(DualNum { re, eps })
    }

    pub fn real(re: ModInt) -> Self {
        DualNum { re, eps: ModInt::zero(re.m) }
    }

    pub fn zero(m: u64) -> Self {
        Self::new(0, 0, m)
    }

    pub fn one(m: u64) -> Self {
        Self::new(1, 0, m)
    }

    /// The element `α`.
    pub fn alpha(m: u64) -> Self {
        Self::new(0, 1, m)
    }

    pub fn re(self) -> ModInt {
        self.re
    }

    pub fn eps(self) -> ModInt {
        self.eps
    }

    pub fn modulus(self) -> u64 {
        self.re.m
    }

    pub fn is_zero(self) -> bool {
        self.re.is_zero() && self.eps.is_zero()
    }

    /// `a + bα` is a unit iff `a` is.
    pub fn is_unit(self) -> bool {
        self.re.is_unit()
    }

    /// Position in the canonical element order, `a + m·b`.
    pub fn index(self) -> usize {
        (self.re.value + self.re.m * self.eps.value) as usize
    }

    pub fn from_index(index: usize, m: u64) -> Self {
        let i = index as u64;
        Self::new(i % m, i / m, m)
    }

    pub fn checked_add(self, rhs: Self) -> Result<Self> {
        Ok(DualNum { re: self.re.checked_add(rhs.re)?, eps: self.eps.checked_add(rhs.eps)? })
    }

    pub fn checked_sub(self, rhs: Self) -> Result<Self> {
        Ok(DualNum { re: self.re.checked_sub(rhs.re)?, eps: self.eps.checked_sub(rhs.eps)? })
    }

    pub fn checked_mul(self, rhs: Self) -> Result<Self> {
        dual_mul(self, rhs)
    }

    pub fn inverse(self) -> Result<Self> {
        dual_inverse(self)
    }
}

/// `(a + bα)(c + dα) = ac + (ad + bc)α`.
pub fn dual_mul(x: DualNum, y: DualNum) -> Result<DualNum> {
    let m = same(x.modulus(), y.modulus())?;
    let (a, b, c, d) = (x.re.value, x.eps.value, y.re.value, y.eps.value);
    Ok(DualNum::new(mul_mod(a, c, m), add_mod(mul_mod(a, d, m), mul_mod(b, c, m), m), m))
}

/// `(a + bα)^{-1} = a^{-1} - a^{-2}bα`, defined iff `a` is a unit.
pub fn dual_inverse(x: DualNum) -> Result<DualNum> {
    let m = x.modulus();
    let a_inv = x.re.inverse()?;
    let eps = -(a_inv * a_inv * x.eps);
    Ok(DualNum { re: a_inv, eps: ModInt::new(eps.value, m) })
}

impl Add for DualNum {
    type Output = DualNum;
    fn add(self, rhs: Self) -> Self {
        self.checked_add(rhs).expect("modulus mismatch")
    }
}

impl Sub for DualNum {
    type Output = DualNum;
    fn sub(self, rhs: Self) -> Self {
        self.checked_sub(rhs).expect("modulus mismatch")
    }
}

impl Mul for DualNum {
    type Output = DualNum;
    fn mul(self, rhs: Self) -> Self {
        dual_mul(self, rhs).expect("modulus mismatch")
    }
}

impl Neg for DualNum {
    type Output = DualNum;
    fn neg(self) -> Self {
        DualNum { re: -self.re, eps: -self.eps }
    }
}

impl From<ModInt> for DualNum {
    fn from(re: ModInt) -> Self {
        DualNum::real(re)
    }
}

impl fmt::Display for DualNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.re.value, self.eps.value) {
            (a, 0) => write!(f, "{a}"),
            (0, 1) => write!(f, "α"),
            (0, b) => write!(f, "{b}α"),
            (a, 1) => write!(f, "{a}+α"),
            (a, b) => write!(f, "{a}+{b}α"),
        }
    }
}

/// Largest ring that is ever enumerated element by element.
pub const MAX_RING_ELEMENTS: u64 = 1_000_000;

/// A finite ring the crate can enumerate: `Z_m` or `Z_m[α]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Ring {
    Base(u64),
    Dual(u64),
}

impl Ring {
    pub fn modulus(self) -> u64 {
        match self {
            Ring::Base(m) | Ring::Dual(m) => m,
        }
    }

    pub fn is_dual(self) -> bool {
        matches!(self, Ring::Dual(_))
    }

    /// Number of elements, `m` or `m^2`.
    pub fn size(self) -> u128 {
        match self {
            Ring::Base(m) => m as u128,
            Ring::Dual(m) => (m as u128) * (m as u128),
        }
    }

    /// Validates the modulus and the enumeration guard.
    pub fn check_enumerable(self) -> Result<usize> {
        check_modulus(self.modulus())?;
        let size = self.size();
        if size > MAX_RING_ELEMENTS as u128 {
            return Err(Error::SearchSpaceTooLarge { size, limit: MAX_RING_ELEMENTS as u128 });
        }
        Ok(size as usize)
    }

    /// The element with the given canonical index; base elements have a
    /// zero `α` part.
    pub fn element(self, index: usize) -> DualNum {
        match self {
            Ring::Base(m) => DualNum::new(index as u64, 0, m),
            Ring::Dual(m) => DualNum::from_index(index, m),
        }
    }
}

impl fmt::Display for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Ring::Base(m) => write!(f, "Z_{m}"),
            Ring::Dual(m) => write!(f, "Z_{m}[α]"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn dual_mul_examples() {
        let x = DualNum::new(1, 2, 4);
        assert_eq!(dual_mul(x, x).unwrap(), DualNum::new(1, 0, 4));
        let a = DualNum::alpha(7);
        assert_eq!(dual_mul(a, a).unwrap(), DualNum::zero(7));
        let y = dual_mul(DualNum::new(2, 3, 5), DualNum::new(3, 1, 5)).unwrap();
        assert_eq!(y, DualNum::new(1, 1, 5));
    }

    #[test]
    fn mixed_moduli_are_rejected() {
        let e = dual_mul(DualNum::one(4), DualNum::one(5)).unwrap_err();
        assert_eq!(e, Error::ModulusMismatch { left: 4, right: 5 });
        assert!(ModInt::new(1, 3).checked_add(ModInt::new(1, 9)).is_err());
        assert!(DualNum::from_parts(ModInt::new(1, 3), ModInt::new(1, 9)).is_err());
    }

    #[test]
    fn dual_inverse_examples() {
        assert_eq!(dual_inverse(DualNum::new(1, 2, 4)).unwrap(), DualNum::new(1, 2, 4));
        assert_eq!(
            dual_inverse(DualNum::new(2, 1, 4)).unwrap_err(),
            Error::NotAUnit { value: 2, modulus: 4 }
        );
        assert_eq!(dual_inverse(DualNum::new(2, 0, 5)).unwrap(), DualNum::new(3, 0, 5));
    }

    #[test]
    fn unit_examples() {
        assert!(ModInt::new(3, 4).is_unit());
        assert!(!DualNum::new(2, 7, 4).is_unit());
        assert!(!ModInt::new(0, 2).is_unit());
    }

    #[test]
    fn factorize_examples() {
        assert_eq!(factorize(12).unwrap().factors(), &[(2, 2), (3, 1)]);
        assert_eq!(factorize(9).unwrap().factors(), &[(3, 2)]);
        assert_eq!(factorize(1).unwrap_err(), Error::InvalidModulus(1));
        assert_eq!(factorize(0).unwrap_err(), Error::InvalidModulus(0));
        assert_eq!(factorize(MAX_MODULUS).unwrap().factors(), &[(2, 31)]);
        assert!(factorize(MAX_MODULUS + 1).is_err());
        assert_eq!(factorize(2_147_483_647).unwrap().factors(), &[(2_147_483_647, 1)]);
    }

    #[test]
    fn unit_iff_real_part_unit_exhaustive() {
        for m in 2..=16u64 {
            for i in 0..(m * m) as usize {
                let x = DualNum::from_index(i, m);
                let invertible = (0..(m * m) as usize)
                    .any(|j| dual_mul(x, DualNum::from_index(j, m)).unwrap() == DualNum::one(m));
                assert_eq!(invertible, x.re().is_unit(), "m={m} x={x}");
                assert_eq!(invertible, x.is_unit());
            }
        }
    }

    #[test]
    fn index_round_trip() {
        for i in 0..49 {
            assert_eq!(DualNum::from_index(i, 7).index(), i);
        }
        assert_eq!(DualNum::new(3, 2, 7).index(), 3 + 7 * 2);
    }

    fn triple() -> impl Strategy<Value = (DualNum, DualNum, DualNum)> {
        (2u64..=MAX_MODULUS).prop_flat_map(|m| {
            let d = move || (0..m, 0..m).prop_map(move |(a, b)| DualNum::new(a, b, m));
            (d(), d(), d())
        })
    }

    proptest! {
        #[test]
        fn ring_axioms((x, y, z) in triple()) {
            prop_assert_eq!((x * y) * z, x * (y * z));
            prop_assert_eq!(x * y, y * x);
            prop_assert_eq!(x * (y + z), x * y + x * z);
            prop_assert_eq!((x + y) + z, x + (y + z));
            prop_assert_eq!(x - x, DualNum::zero(x.modulus()));
        }

        #[test]
        fn inverse_is_two_sided((m, a, b) in (2u64..5000).prop_flat_map(|m| (Just(m), 0..m, 0..m))) {
            let x = DualNum::new(a, b, m);
            match dual_inverse(x) {
                Ok(inv) => {
                    prop_assert!(x.is_unit());
                    prop_assert_eq!(x * inv, DualNum::one(m));
                }
                Err(Error::NotAUnit { .. }) => prop_assert!(!x.is_unit()),
                Err(e) => prop_assert!(false, "unexpected {e:?}"),
            }
        }

        #[test]
        fn factorization_multiplies_back(m in 2u64..1_000_000) {
            let f = factorize(m).unwrap();
            let mut prod = 1u64;
            let mut last = 0;
            for &(p, e) in f.factors() {
                prop_assert!(p > last && is_prime(p) && e >= 1);
                last = p;
                prod *= p.pow(e);
            }
            prop_assert_eq!(prod, m);
        }
    }
}
