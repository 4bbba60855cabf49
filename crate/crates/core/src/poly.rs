//! Dense univariate polynomials over `Z`, `Z_m` and `Z_m[α]`, and expansions
//! in powers of a monic base polynomial.
//!
//! Coefficient vectors are kept trimmed: the last stored coefficient is
//! nonzero, so structural equality is polynomial equality and the zero
//! polynomial has an empty vector (its degree is reported as `None`).

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::error::{Error, Result};
use crate::ring::{add_mod, check_modulus, is_prime, mul_mod, reduce_i128, sub_mod, DualNum, ModInt};

fn trim<T: PartialEq>(v: &mut Vec<T>, zero: &T) {
    while v.last() == Some(zero) {
        v.pop();
    }
}

/// A polynomial over `Z_m`; index `i` holds the coefficient of `x^i`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Poly {
    m: u64,
    coeffs: Vec<u64>,
}

impl Poly {
    /// Coefficients are reduced mod `m`. Panics on an invalid modulus.
    pub fn new(coeffs: Vec<u64>, m: u64) -> Self {
        check_modulus(m).expect("invalid modulus");
        let mut coeffs: Vec<u64> = coeffs.into_iter().map(|c| c % m).collect();
        trim(&mut coeffs, &0);
        Poly { m, coeffs }
    }

    pub fn from_i128s(coeffs: &[i128], m: u64) -> Self {
        check_modulus(m).expect("invalid modulus");
        Self::new(coeffs.iter().map(|&c| reduce_i128(c, m)).collect(), m)
    }

    pub fn from_modints(coeffs: &[ModInt], m: u64) -> Result<Self> {
        check_modulus(m)?;
        for c in coeffs {
            if c.modulus() != m {
                return Err(Error::ModulusMismatch { left: m, right: c.modulus() });
            }
        }
        Ok(Self::new(coeffs.iter().map(|c| c.value()).collect(), m))
    }

    pub fn zero(m: u64) -> Self {
        Self::new(Vec::new(), m)
    }

    pub fn constant(c: u64, m: u64) -> Self {
        Self::new(vec![c], m)
    }

    /// `c·x^k`.
    pub fn monomial(c: u64, k: usize, m: u64) -> Self {
        let mut v = vec![0; k + 1];
        v[k] = c;
        Self::new(v, m)
    }

    pub fn x(m: u64) -> Self {
        Self::monomial(1, 1, m)
    }

    /// `x^q - x`.
    pub fn frobenius_base(q: usize, m: u64) -> Self {
        Self::monomial(1, q, m).sub(&Self::x(m)).expect("same modulus")
    }

    pub fn modulus(&self) -> u64 {
        self.m
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    /// Coefficient of `x^i` (zero beyond the degree).
    pub fn coeff(&self, i: usize) -> u64 {
        self.coeffs.get(i).copied().unwrap_or(0)
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last() == Some(&(1 % self.m))
    }

    fn check(&self, other: &Poly) -> Result<()> {
        if self.m == other.m {
            Ok(())
        } else {
            Err(Error::ModulusMismatch { left: self.m, right: other.m })
        }
    }

    pub fn add(&self, other: &Poly) -> Result<Poly> {
        self.check(other)?;
        let n = self.coeffs.len().max(other.coeffs.len());
        let v = (0..n).map(|i| add_mod(self.coeff(i), other.coeff(i), self.m)).collect();
        Ok(Poly::new(v, self.m))
    }

    pub fn sub(&self, other: &Poly) -> Result<Poly> {
        self.check(other)?;
        let n = self.coeffs.len().max(other.coeffs.len());
        let v = (0..n).map(|i| sub_mod(self.coeff(i), other.coeff(i), self.m)).collect();
        Ok(Poly::new(v, self.m))
    }

    pub fn mul(&self, other: &Poly) -> Result<Poly> {
        self.check(other)?;
        if self.is_zero() || other.is_zero() {
            return Ok(Poly::zero(self.m));
        }
        let mut v = vec![0u64; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                v[i + j] = add_mod(v[i + j], mul_mod(a, b, self.m), self.m);
            }
        }
        Ok(Poly::new(v, self.m))
    }

    pub fn scale(&self, c: u64) -> Poly {
        let c = c % self.m;
        Poly::new(self.coeffs.iter().map(|&a| mul_mod(a, c, self.m)).collect(), self.m)
    }

    pub fn neg(&self) -> Poly {
        Poly::new(self.coeffs.iter().map(|&a| sub_mod(0, a, self.m)).collect(), self.m)
    }

    pub fn pow(&self, e: u32) -> Poly {
        let mut acc = Poly::constant(1, self.m);
        for _ in 0..e {
            acc = acc.mul(self).expect("same modulus");
        }
        acc
    }

    /// Same integer coefficients read modulo another `m`. Meaningful when
    /// the target modulus divides the current one.
    pub fn reduce_to(&self, m: u64) -> Poly {
        Poly::new(self.coeffs.clone(), m)
    }

    /// Horner evaluation at `r`.
    pub fn eval(&self, r: ModInt) -> Result<ModInt> {
        if r.modulus() != self.m {
            return Err(Error::ModulusMismatch { left: self.m, right: r.modulus() });
        }
        Ok(ModInt::new(self.eval_raw(r.value()), self.m))
    }

    /// Horner evaluation at a residue already known to lie in `[0, m)`.
    pub(crate) fn eval_raw(&self, r: u64) -> u64 {
        self.coeffs.iter().rev().fold(0, |acc, &c| add_mod(mul_mod(acc, r, self.m), c, self.m))
    }

    /// Evaluation of `f ∈ R[x]` at a dual number, by Horner in `R[α]`.
    pub fn eval_dual(&self, z: DualNum) -> Result<DualNum> {
        self.to_dual().eval_naive(z)
    }

    /// Formal derivative.
    pub fn derive(&self) -> Poly {
        let v = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(k, &a)| mul_mod(a, k as u64 % self.m, self.m))
            .collect();
        Poly::new(v, self.m)
    }

    /// Division with remainder by a monic `h`.
    pub fn div_rem(&self, h: &Poly) -> Result<(Poly, Poly)> {
        self.check(h)?;
        if !h.is_monic() {
            return Err(Error::NotMonic);
        }
        let dh = h.degree().expect("monic implies nonzero");
        let mut rem = self.coeffs.clone();
        if rem.len() <= dh {
            return Ok((Poly::zero(self.m), self.clone()));
        }
        let mut quot = vec![0u64; rem.len() - dh];
        for i in (0..quot.len()).rev() {
            let c = rem[i + dh];
            if c == 0 {
                continue;
            }
            quot[i] = c;
            for (j, &hj) in h.coeffs.iter().enumerate() {
                rem[i + j] = sub_mod(rem[i + j], mul_mod(c, hj, self.m), self.m);
            }
        }
        rem.truncate(dh);
        Ok((Poly::new(quot, self.m), Poly::new(rem, self.m)))
    }

    /// Lift to `Z[x]` with coefficients in `[0, m)`.
    pub fn lift(&self) -> ZPoly {
        ZPoly::new(self.coeffs.iter().map(|&c| c as i128).collect())
    }

    pub fn to_dual(&self) -> DualPoly {
        DualPoly::from_parts(self, &Poly::zero(self.m)).expect("same modulus")
    }

    /// Expansion `f = Σ f_k h^k` with `deg f_k < deg h`.
    pub fn expand_base(&self, h: &Poly) -> Result<BlockExpansion> {
        expand_base(self, h)
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_terms(f, self.coeffs.iter().map(|&c| c as i128))
    }
}

fn write_terms(f: &mut fmt::Formatter<'_>, coeffs: impl Iterator<Item = i128>) -> fmt::Result {
    let mut first = true;
    for (i, c) in coeffs.enumerate() {
        if c == 0 {
            continue;
        }
        let (sign, abs) = if c < 0 { ("-", c.unsigned_abs()) } else { ("+", c as u128) };
        if first {
            if sign == "-" {
                f.write_str("-")?;
            }
        } else {
            write!(f, " {sign} ")?;
        }
        first = false;
        match (i, abs) {
            (0, a) => write!(f, "{a}")?,
            (1, 1) => f.write_str("x")?,
            (1, a) => write!(f, "{a}*x")?,
            (k, 1) => write!(f, "x^{k}")?,
            (k, a) => write!(f, "{a}*x^{k}")?,
        }
    }
    if first {
        f.write_str("0")?;
    }
    Ok(())
}

/// A polynomial over `Z_m[α]`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct DualPoly {
    m: u64,
    coeffs: Vec<DualNum>,
}

impl DualPoly {
    pub fn new(coeffs: Vec<DualNum>, m: u64) -> Result<Self> {
        check_modulus(m)?;
        for c in &coeffs {
            if c.modulus() != m {
                return Err(Error::ModulusMismatch { left: m, right: c.modulus() });
            }
        }
        let mut coeffs = coeffs;
        trim(&mut coeffs, &DualNum::zero(m));
        Ok(DualPoly { m, coeffs })
    }

    /// `f1 + α·f2`.
    pub fn from_parts(f1: &Poly, f2: &Poly) -> Result<Self> {
        f1.check(f2)?;
        let n = f1.coeffs.len().max(f2.coeffs.len());
        let v = (0..n).map(|i| DualNum::new(f1.coeff(i), f2.coeff(i), f1.m)).collect();
        DualPoly::new(v, f1.m)
    }

    pub fn modulus(&self) -> u64 {
        self.m
    }

    pub fn coeffs(&self) -> &[DualNum] {
        &self.coeffs
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// The unique `(f1, f2)` with `f = f1 + α·f2`.
    pub fn split(&self) -> (Poly, Poly) {
        split(self)
    }

    pub fn add(&self, other: &DualPoly) -> Result<DualPoly> {
        let (a1, a2) = self.split();
        let (b1, b2) = other.split();
        DualPoly::from_parts(&a1.add(&b1)?, &a2.add(&b2)?)
    }

    pub fn mul(&self, other: &DualPoly) -> Result<DualPoly> {
        if self.m != other.m {
            return Err(Error::ModulusMismatch { left: self.m, right: other.m });
        }
        if self.is_zero() || other.is_zero() {
            return DualPoly::new(Vec::new(), self.m);
        }
        let mut v = vec![DualNum::zero(self.m); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            for (j, &b) in other.coeffs.iter().enumerate() {
                v[i + j] = v[i + j] + a * b;
            }
        }
        DualPoly::new(v, self.m)
    }

    /// Plain Horner evaluation in `Z_m[α]`.
    pub fn eval_naive(&self, z: DualNum) -> Result<DualNum> {
        if z.modulus() != self.m {
            return Err(Error::ModulusMismatch { left: self.m, right: z.modulus() });
        }
        Ok(self.coeffs.iter().rev().fold(DualNum::zero(self.m), |acc, &c| acc * z + c))
    }

    /// Evaluation through `f(a+bα) = f1(a) + (b·f1'(a) + f2(a))α`.
    pub fn eval(&self, z: DualNum) -> Result<DualNum> {
        eval_dual(self, z)
    }
}

impl fmt::Display for DualPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (f1, f2) = self.split();
        write!(f, "{f1} ; {f2}")
    }
}

/// Coefficient-wise split of `f` into real and `α` parts.
pub fn split(f: &DualPoly) -> (Poly, Poly) {
    let re = f.coeffs.iter().map(|c| c.re().value()).collect();
    let eps = f.coeffs.iter().map(|c| c.eps().value()).collect();
    (Poly::new(re, f.m), Poly::new(eps, f.m))
}

/// `f(a+bα) = f1(a) + (b·f1'(a) + f2(a))α`.
pub fn eval_dual(f: &DualPoly, z: DualNum) -> Result<DualNum> {
    if z.modulus() != f.m {
        return Err(Error::ModulusMismatch { left: f.m, right: z.modulus() });
    }
    let (f1, f2) = split(f);
    let m = f.m;
    let (a, b) = (z.re().value(), z.eps().value());
    let re = f1.eval_raw(a);
    let eps = add_mod(mul_mod(b, f1.derive().eval_raw(a), m), f2.eval_raw(a), m);
    Ok(DualNum::new(re, eps, m))
}

/// Formal derivative.
pub fn derive(f: &Poly) -> Poly {
    f.derive()
}

/// A polynomial over `Z` with `i128` coefficients.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct ZPoly {
    coeffs: Vec<i128>,
}

impl ZPoly {
    pub fn new(coeffs: Vec<i128>) -> Self {
        let mut coeffs = coeffs;
        trim(&mut coeffs, &0);
        ZPoly { coeffs }
    }

    pub fn coeffs(&self) -> &[i128] {
        &self.coeffs
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn x() -> Self {
        ZPoly::new(vec![0, 1])
    }

    /// `x^q - x`.
    pub fn frobenius_base(q: usize) -> Self {
        let mut v = vec![0; q + 1];
        v[1] -= 1;
        v[q] += 1;
        ZPoly::new(v)
    }

    pub fn checked_add(&self, other: &ZPoly) -> Result<ZPoly> {
        let n = self.coeffs.len().max(other.coeffs.len());
        let get = |p: &ZPoly, i: usize| p.coeffs.get(i).copied().unwrap_or(0);
        let v = (0..n)
            .map(|i| get(self, i).checked_add(get(other, i)).ok_or(Error::Overflow))
            .collect::<Result<Vec<_>>>()?;
        Ok(ZPoly::new(v))
    }

    pub fn checked_mul(&self, other: &ZPoly) -> Result<ZPoly> {
        if self.coeffs.is_empty() || other.coeffs.is_empty() {
            return Ok(ZPoly::default());
        }
        let mut v = vec![0i128; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            for (j, &b) in other.coeffs.iter().enumerate() {
                let t = a.checked_mul(b).ok_or(Error::Overflow)?;
                v[i + j] = v[i + j].checked_add(t).ok_or(Error::Overflow)?;
            }
        }
        Ok(ZPoly::new(v))
    }

    pub fn checked_pow(&self, e: u32) -> Result<ZPoly> {
        let mut acc = ZPoly::new(vec![1]);
        for _ in 0..e {
            acc = acc.checked_mul(self)?;
        }
        Ok(acc)
    }

    pub fn scale(&self, c: i128) -> Result<ZPoly> {
        let v = self
            .coeffs
            .iter()
            .map(|&a| a.checked_mul(c).ok_or(Error::Overflow))
            .collect::<Result<Vec<_>>>()?;
        Ok(ZPoly::new(v))
    }

    pub fn derive(&self) -> Result<ZPoly> {
        let v = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(k, &a)| a.checked_mul(k as i128).ok_or(Error::Overflow))
            .collect::<Result<Vec<_>>>()?;
        Ok(ZPoly::new(v))
    }

    /// Image in `Z_m[x]`.
    pub fn reduce(&self, m: u64) -> Poly {
        Poly::from_i128s(&self.coeffs, m)
    }
}

impl fmt::Display for ZPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_terms(f, self.coeffs.iter().copied())
    }
}

/// `(x - c)_k = ∏_{j=0}^{k-1} (x - c - j)` over `Z`; the empty product for
/// `k = 0` is `1`.
pub fn falling_factorial(c: i128, k: usize) -> Result<ZPoly> {
    let mut acc = ZPoly::new(vec![1]);
    for j in 0..k {
        let root = c.checked_add(j as i128).ok_or(Error::Overflow)?;
        acc = acc.checked_mul(&ZPoly::new(vec![-root, 1]))?;
    }
    Ok(acc)
}

/// `(x - c)_k` computed directly in `Z_m[x]`; never overflows.
pub fn falling_factorial_mod(c: i128, k: usize, m: u64) -> Poly {
    let mut acc = Poly::constant(1, m);
    for j in 0..k {
        let root = reduce_i128(c + j as i128, m);
        let factor = Poly::new(vec![sub_mod(0, root, m), 1], m);
        acc = acc.mul(&factor).expect("same modulus");
    }
    acc
}

/// `f = Σ_k f_k·h^k` with every block of degree below `deg h`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BlockExpansion {
    base: Poly,
    blocks: Vec<Poly>,
}

/// Repeated division with remainder by the monic base `h`.
pub fn expand_base(f: &Poly, h: &Poly) -> Result<BlockExpansion> {
    f.check(h)?;
    if !h.is_monic() || h.degree() == Some(0) {
        return Err(Error::NotMonic);
    }
    let mut blocks = Vec::new();
    let mut rest = f.clone();
    while !rest.is_zero() {
        let (q, r) = rest.div_rem(h)?;
        blocks.push(r);
        rest = q;
    }
    Ok(BlockExpansion { base: h.clone(), blocks })
}

impl BlockExpansion {
    /// Builds an expansion from block coefficients `a[k][j]` (coefficient of
    /// `x^j·h^k`). Panics if some block is too long for the base.
    pub fn from_blocks(base: Poly, blocks: Vec<Poly>) -> Result<Self> {
        if !base.is_monic() || base.degree() == Some(0) {
            return Err(Error::NotMonic);
        }
        let q = base.degree().unwrap();
        for b in &blocks {
            base.check(b)?;
            if b.degree().is_some_and(|d| d >= q) {
                return Err(Error::InvalidArgument("block degree must be below the base degree"));
            }
        }
        let mut blocks = blocks;
        trim(&mut blocks, &Poly::zero(base.m));
        Ok(BlockExpansion { base, blocks })
    }

    pub fn base(&self) -> &Poly {
        &self.base
    }

    pub fn blocks(&self) -> &[Poly] {
        &self.blocks
    }

    pub fn modulus(&self) -> u64 {
        self.base.m
    }

    /// `a_{jk}`, the coefficient of `x^j` in block `k`.
    pub fn coeff(&self, j: usize, k: usize) -> u64 {
        self.blocks.get(k).map_or(0, |b| b.coeff(j))
    }

    /// `Σ_k f_k·h^k`.
    pub fn reassemble(&self) -> Poly {
        let mut acc = Poly::zero(self.base.m);
        for b in self.blocks.iter().rev() {
            acc = acc.mul(&self.base).and_then(|t| t.add(b)).expect("same modulus");
        }
        acc
    }

    /// Expansion of the derivative obtained from the block coefficients
    /// alone. The base must be `x^p - x` with `p` a prime dividing `m`.
    pub fn derivative_blocks(&self) -> Result<BlockExpansion> {
        derivative_blocks(self)
    }
}

/// Expansion of `f'` in powers of `x^p - x` computed from the block
/// coefficients of `f`:
///
/// ```text
/// â_{0k}   = (kp+1)·a_{1k} - (k+1)·a_{0,k+1}
/// â_{jk}   = (kp+j+1)·a_{j+1,k} + (k+1)(p-1)·a_{j,k+1}     1 <= j <= p-2
/// â_{p-1,k} = (k+1)(p-1)·a_{p-1,k+1} + (k+1)p·a_{0,k+1}
/// ```
///
/// For `p = 2` the first and last rows read `a_{1k}` with `j + 1 = p - 1`.
pub fn derivative_blocks(e: &BlockExpansion) -> Result<BlockExpansion> {
    let m = e.modulus();
    let p = e.base.degree().unwrap_or(0);
    if p < 2 || e.base != Poly::frobenius_base(p, m) || !is_prime(p as u64) || !m.is_multiple_of(p as u64) {
        return Err(Error::WrongBase);
    }
    let a = |j: usize, k: usize| e.coeff(j, k) as i128;
    let mi = m as i128;
    let pi = p as i128;
    let top = e.blocks.len();
    let mut blocks = Vec::with_capacity(top);
    for k in 0..top {
        let ki = k as i128;
        let mut row = vec![0u64; p];
        // p = 2 has no middle rows and a_{1k} doubles as a_{p-1,k}.
        row[0] = reduce_i128((ki * pi + 1) * a(1, k) - (ki + 1) * a(0, k + 1), mi as u64);
        for (j, slot) in row.iter_mut().enumerate().take(p - 1).skip(1) {
            let ji = j as i128;
            let v = (ki * pi + ji + 1) * a(j + 1, k) + (ki + 1) * (pi - 1) * a(j, k + 1);
            *slot = reduce_i128(v, m);
        }
        let v = (ki + 1) * (pi - 1) * a(p - 1, k + 1) + (ki + 1) * pi * a(0, k + 1);
        row[p - 1] = reduce_i128(v, m);
        blocks.push(Poly::new(row, m));
    }
    BlockExpansion::from_blocks(e.base.clone(), blocks)
}
