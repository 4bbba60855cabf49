//! Null polynomials on `Z_m` and `Z_m[α]`.
//!
//! A polynomial `f` over `Z_{p^n}[α]` with `f = f1 + α·f2` is null on the
//! dual ring exactly when `f1`, `f1'` and `f2` are null on `Z_{p^n}`. For
//! `n <= p` membership is decided from the `(x^p - x)`-adic expansion
//! without evaluating anything; for larger `n` only exhaustive evaluation
//! is offered.

use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigUint;

use crate::error::{Error, Result};
use crate::odometer::{for_each_digits, space_size};
use crate::poly::{falling_factorial_mod, BlockExpansion, DualPoly, Poly, ZPoly};
use crate::ring::{check_modulus, gcd, mul_mod, DualNum, Modulus, Ring};

/// Largest number of polynomials a generator here will materialize.
pub const MAX_GENERATED: u128 = 10_000_000;

/// The Kempner function: least `k >= 1` with `m | k!`.
pub fn mu(m: u64) -> u64 {
    assert!(m >= 1, "mu is defined for m >= 1");
    if m == 1 {
        return 1;
    }
    let mut fact = 1 % m;
    let mut k = 0;
    loop {
        k += 1;
        fact = mul_mod(fact, k % m, m);
        if fact == 0 {
            return k;
        }
    }
}

/// Outcome of an exhaustive scan: whether the property holds everywhere,
/// and the smallest element (by canonical index) where it fails.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Scan {
    pub holds: bool,
    pub witness: Option<DualNum>,
}

impl Scan {
    fn from_witness(witness: Option<DualNum>) -> Self {
        Scan { holds: witness.is_none(), witness }
    }
}

/// Evaluates `f ∈ Z_m[x]` at every element of `ring`.
pub fn is_null_bruteforce(f: &Poly, ring: Ring) -> Result<Scan> {
    if f.modulus() != ring.modulus() {
        return Err(Error::ModulusMismatch { left: ring.modulus(), right: f.modulus() });
    }
    let size = ring.check_enumerable()?;
    let witness =
        (0..size).map(|i| ring.element(i)).find(|&z| !f.eval_dual(z).expect("same modulus").is_zero());
    Ok(Scan::from_witness(witness))
}

/// Evaluates `f ∈ Z_m[α][x]` at every element of `Z_m[α]`.
pub fn is_null_bruteforce_dual(f: &DualPoly) -> Result<Scan> {
    let ring = Ring::Dual(f.modulus());
    let size = ring.check_enumerable()?;
    let witness = (0..size).map(|i| ring.element(i)).find(|&z| !f.eval(z).expect("same modulus").is_zero());
    Ok(Scan::from_witness(witness))
}

fn check_small_exponent(p: u64, n: u32) -> Result<Modulus> {
    let modulus = Modulus::prime_power(p, n)?;
    if n as u64 > p {
        return Err(Error::ExponentTooLarge { p, n });
    }
    Ok(modulus)
}

/// Preconditions of the bounded counts, which never build the ring.
fn check_count_params(p: u64, n: u32) -> Result<()> {
    if !crate::ring::is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if n == 0 {
        return Err(Error::InvalidArgument("exponent must be at least 1"));
    }
    if n as u64 > p {
        return Err(Error::ExponentTooLarge { p, n });
    }
    Ok(())
}

fn frobenius_expansion(f: &Poly, p: u64) -> BlockExpansion {
    f.expand_base(&Poly::frobenius_base(p as usize, f.modulus())).expect("x^p - x is monic")
}

/// `p^e` divides the lift of `c` in `[0, p^n)` (meaningful for `e <= n`).
fn divisible(c: u64, p: u64, e: u32) -> bool {
    c.is_multiple_of(p.pow(e))
}

/// Null test on `Z_{p^n}` for `n <= p`: with `f = Σ f_k (x^p - x)^k`, the
/// block `f_k` must be divisible by `p^{n-k}` for every `k <= n`.
pub fn is_null_zpn(f: &ZPoly, p: u64, n: u32) -> Result<bool> {
    let m = check_small_exponent(p, n)?.value();
    let e = frobenius_expansion(&f.reduce(m), p);
    Ok(e.blocks().iter().enumerate().take(n as usize + 1).all(|(k, b)| {
        let need = n - k as u32;
        b.coeffs().iter().all(|&c| divisible(c, p, need))
    }))
}

/// Test for `f` and `f'` both null on `Z_{p^n}`, `n <= p`: `a_{j0} ≡ 0`
/// mod `p^n` and `a_{jk} ≡ 0` mod `p^{n-k+1}` for `1 <= k < min(p, n+1)`.
pub fn dual_null_block_criterion(f: &ZPoly, p: u64, n: u32) -> Result<bool> {
    let m = check_small_exponent(p, n)?.value();
    let e = frobenius_expansion(&f.reduce(m), p);
    let limit = (p as usize).min(n as usize + 1);
    Ok(e.blocks().iter().enumerate().take(limit).all(|(k, b)| {
        let need = if k == 0 { n } else { n + 1 - k as u32 };
        b.coeffs().iter().all(|&c| divisible(c, p, need))
    }))
}

/// Membership of `f = f1 + α·f2` in the null ideal of `Z_m[α]`, broken
/// down into its three conditions on `Z_m`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct NullVerdict {
    /// `f1` is null on `Z_m`.
    pub is_null_on_r: bool,
    /// `f1'` is null on `Z_m`.
    pub derivative_null_on_r: bool,
    /// `f2` is null on `Z_m`.
    pub alpha_part_null_on_r: bool,
    /// `f` is null on `Z_m[α]`.
    pub is_null_on_ralpha: bool,
    /// Smallest element of `Z_m[α]` where `f` does not vanish, when the
    /// dual ring is small enough to scan.
    pub witness: Option<DualNum>,
    /// Whether the block criteria (rather than evaluation) decided it.
    pub structural: bool,
}

/// Decides whether `f` is null on `Z_m[α]`. Uses the block criteria when
/// `m = p^n` with `n <= p`, and evaluation on `Z_m` otherwise.
pub fn is_dual_null(f: &DualPoly) -> Result<NullVerdict> {
    let m = f.modulus();
    let modulus = Modulus::new(m)?;
    let (f1, f2) = f.split();
    let d1 = f1.derive();
    let (null_r, deriv_null, alpha_null, structural) = match modulus.as_prime_power() {
        Some((p, n)) if n as u64 <= p => {
            let both = dual_null_block_criterion(&f1.lift(), p, n)?;
            let null_r = is_null_zpn(&f1.lift(), p, n)?;
            let deriv = is_null_zpn(&d1.lift(), p, n)?;
            debug_assert_eq!(both, null_r && deriv);
            (null_r, deriv, is_null_zpn(&f2.lift(), p, n)?, true)
        }
        _ => (
            is_null_bruteforce(&f1, Ring::Base(m))?.holds,
            is_null_bruteforce(&d1, Ring::Base(m))?.holds,
            is_null_bruteforce(&f2, Ring::Base(m))?.holds,
            false,
        ),
    };
    let is_null = null_r && deriv_null && alpha_null;
    let witness = if is_null || Ring::Dual(m).check_enumerable().is_err() {
        None
    } else {
        is_null_bruteforce_dual(f)?.witness
    };
    Ok(NullVerdict {
        is_null_on_r: null_r,
        derivative_null_on_r: deriv_null,
        alpha_part_null_on_r: alpha_null,
        is_null_on_ralpha: is_null,
        witness,
        structural,
    })
}

/// `(x^p - x)^r` with `r = min(n+1, p)`, over `Z_{p^n}`: a monic null
/// polynomial on `Z_{p^n}[α]` of least degree.
pub fn minimal_monic_null(p: u64, n: u32) -> Result<Poly> {
    let m = check_small_exponent(p, n)?.value();
    let r = (n + 1).min(p as u32);
    Ok(Poly::frobenius_base(p as usize, m).pow(r))
}

/// Null polynomials on `Z_m[α]` valid for every `m`: `(x)_{2μ(m)}` and
/// `((x)_{μ(m)})^2`, followed by `(x)_{(n+1)p}` when `m = p^n` with
/// `n <= p`.
pub fn generic_null_dual(m: u64) -> Result<Vec<Poly>> {
    let modulus = Modulus::new(m)?;
    let k = mu(m) as usize;
    let mut out = vec![falling_factorial_mod(0, 2 * k, m), falling_factorial_mod(0, k, m).pow(2)];
    if let Some((p, n)) = modulus.as_prime_power() {
        if n as u64 <= p {
            out.push(falling_factorial_mod(0, (n as usize + 1) * p as usize, m));
        }
    }
    Ok(out)
}

/// `|{f ∈ Z_{p^n}[x] : deg f < (n+1)p, f null on Z_{p^n}}| = p^{n(n+1)p/2}`.
pub fn count_n_bound(p: u64, n: u32) -> Result<BigUint> {
    check_count_params(p, n)?;
    let e = n as u64 * (n as u64 + 1) * p / 2;
    Ok(BigUint::from(p).pow(e as u32))
}

/// The same count for `f` and `f'` both null: `p^{n(n-1)p/2}` for `n < p`
/// and `p^{(n²-n+2)p/2}` for `n = p`.
pub fn count_nprime_bound(p: u64, n: u32) -> Result<BigUint> {
    check_count_params(p, n)?;
    let n64 = n as u64;
    let e = if n64 < p { n64 * (n64 - 1) * p / 2 } else { (n64 * n64 - n64 + 2) * p / 2 };
    Ok(BigUint::from(p).pow(e as u32))
}

/// Digit ranges for block coefficients `a_{jk}` of null polynomials on
/// `Z_{p^n}` with `k < blocks`: `a_{jk}` runs over multiples of `p^{n-k}`.
fn null_block_steps(p: u64, n: u32, blocks: usize) -> Vec<u64> {
    let mut steps = Vec::with_capacity(blocks * p as usize);
    for k in 0..blocks {
        let step = p.pow(n.saturating_sub(k as u32));
        steps.extend(core::iter::repeat_n(step, p as usize));
    }
    steps
}

/// Every null polynomial on `Z_{p^n}` of degree `< blocks·p`, `n <= p`,
/// generated from the block characterization. Ordered by the digit vector
/// `(a_{00}, …, a_{p-1,0}, a_{01}, …)` in steps of the allowed divisor.
pub fn null_polys_blocks(p: u64, n: u32, blocks: usize) -> Result<Vec<Poly>> {
    let m = check_small_exponent(p, n)?.value();
    let steps = null_block_steps(p, n, blocks);
    let radices: Vec<u64> = steps.iter().map(|&s| m / s).collect();
    let size = space_size(&radices).unwrap_or(u128::MAX);
    if size > MAX_GENERATED {
        return Err(Error::SearchSpaceTooLarge { size, limit: MAX_GENERATED });
    }
    let base = Poly::frobenius_base(p as usize, m);
    let mut out = Vec::with_capacity(size as usize);
    let pu = p as usize;
    for_each_digits(&radices, |d| {
        let blocks: Vec<Poly> = d
            .chunks(pu)
            .zip(steps.chunks(pu))
            .map(|(ds, ss)| Poly::new(ds.iter().zip(ss).map(|(&a, &s)| a * s).collect(), m))
            .collect();
        let e = BlockExpansion::from_blocks(base.clone(), blocks).expect("blocks fit the base");
        out.push(e.reassemble());
    });
    Ok(out)
}

/// Every null polynomial on `Z_m` of degree `< bound`, for any `m`:
/// `Σ c_k (x)_k` with `m / gcd(m, k!)` dividing `c_k`.
pub fn null_polys_falling(m: u64, bound: usize) -> Result<Vec<Poly>> {
    check_modulus(m)?;
    let ff: Vec<Poly> = (0..bound).map(|k| falling_factorial_mod(0, k, m)).collect();
    let steps: Vec<u64> = (0..bound).map(|k| falling_step(m, k)).collect();
    let radices: Vec<u64> = steps.iter().map(|&s| m / s).collect();
    let size = space_size(&radices).unwrap_or(u128::MAX);
    if size > MAX_GENERATED {
        return Err(Error::SearchSpaceTooLarge { size, limit: MAX_GENERATED });
    }
    let mut out = Vec::with_capacity(size as usize);
    for_each_digits(&radices, |d| {
        let mut acc = Poly::zero(m);
        for (k, (&c, &s)) in d.iter().zip(&steps).enumerate() {
            if c != 0 {
                acc = acc.add(&ff[k].scale(c * s)).expect("same modulus");
            }
        }
        out.push(acc);
    });
    Ok(out)
}

/// `gcd(m, k!)`, computed without forming `k!`.
pub(crate) fn factorial_mod_gcd(k: usize, m: u64) -> u64 {
    let fact = (1..=k as u64).fold(1 % m, |acc, j| mul_mod(acc, j % m, m));
    gcd(m, fact)
}

/// `m / gcd(m, k!)`.
pub fn falling_step(m: u64, k: usize) -> u64 {
    m / factorial_mod_gcd(k, m)
}
