//! Closed-form counts, evaluated exactly.

use num_bigint::BigUint;
use num_traits::One;

use crate::error::{Error, Result};
use crate::ring::is_prime;

fn big(v: u64) -> BigUint {
    BigUint::from(v)
}

fn pow(b: u64, e: u64) -> BigUint {
    big(b).pow(u32::try_from(e).expect("exponent fits in u32"))
}

pub fn factorial(k: u64) -> BigUint {
    (1..=k).fold(BigUint::one(), |acc, j| acc * j)
}

/// Exponent of `p` in `k!` (Legendre).
fn legendre(k: u64, p: u64) -> u64 {
    let mut e = 0;
    let mut q = k / p;
    while q > 0 {
        e += q;
        q /= p;
    }
    e
}

/// `μ(p^n)`: least `k` with `p^n | k!`. Exact for any `n`, without
/// forming `p^n`.
pub fn mu_prime_power(p: u64, n: u32) -> u64 {
    let mut k = p;
    while legendre(k, p) < n as u64 {
        k += p;
    }
    k
}

fn check(p: u64, n: u32) -> Result<()> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if n == 0 {
        return Err(Error::InvalidArgument("exponent must be at least 1"));
    }
    Ok(())
}

/// `|F(Z_{p^n})| = p^{Σ_{k=1}^n μ(p^k)}`.
pub fn count_functions_zpn(p: u64, n: u32) -> Result<BigUint> {
    check(p, n)?;
    let e: u64 = (1..=n).map(|k| mu_prime_power(p, k)).sum();
    Ok(pow(p, e))
}

/// `|P(Z_p)| = p!` and, for `n > 1`,
/// `|P(Z_{p^n})| = p!·p^p·(p-1)^p·p^{Σ_{k=3}^n μ(p^k)}`.
pub fn count_perms_zpn(p: u64, n: u32) -> Result<BigUint> {
    check(p, n)?;
    if n == 1 {
        return Ok(factorial(p));
    }
    let e: u64 = (3..=n).map(|k| mu_prime_power(p, k)).sum();
    Ok(factorial(p) * pow(p, p) * pow(p - 1, p) * pow(p, e))
}

/// `|F(Z_{p^n}[α])|` for `n <= p`: `p^{(n²+2n)p}` if `n < p`, else
/// `p^{(n²+2n-1)p}`. `None` for `n > p`.
pub fn count_functions_dual(p: u64, n: u32) -> Result<Option<BigUint>> {
    check(p, n)?;
    let n = n as u64;
    Ok(match n.cmp(&p) {
        core::cmp::Ordering::Less => Some(pow(p, (n * n + 2 * n) * p)),
        core::cmp::Ordering::Equal => Some(pow(p, (n * n + 2 * n - 1) * p)),
        core::cmp::Ordering::Greater => None,
    })
}

/// `|P(Z_{p^n}[α])|` for `n <= p`: `p!(p-1)^p·p^{(n²+2n-2)p}` if `n < p`,
/// else `p!(p-1)^p·p^{(n²+2n-3)p}`.
pub fn count_perms_dual(p: u64, n: u32) -> Result<Option<BigUint>> {
    check(p, n)?;
    let n = n as u64;
    let lead = factorial(p) * pow(p - 1, p);
    Ok(match n.cmp(&p) {
        core::cmp::Ordering::Less => Some(lead * pow(p, (n * n + 2 * n - 2) * p)),
        core::cmp::Ordering::Equal => Some(lead * pow(p, (n * n + 2 * n - 3) * p)),
        core::cmp::Ordering::Greater => None,
    })
}

/// `|St_α(Z_{p^n})|` for `n <= p`: `(p-1)^p` if `n = 1`, `p^{np}` if
/// `1 < n < p`, `p^{(n-1)p}` if `n = p`.
pub fn count_stabilizer(p: u64, n: u32) -> Result<Option<BigUint>> {
    check(p, n)?;
    let n = n as u64;
    Ok(if n > p {
        None
    } else if n == 1 {
        Some(pow(p - 1, p))
    } else if n < p {
        Some(pow(p, n * p))
    } else {
        Some(pow(p, (n - 1) * p))
    })
}

/// `|F(F_q[α])| = q^{3q}`.
pub fn count_functions_field_dual(q: u64) -> BigUint {
    pow(q, 3 * q)
}

/// `|P(F_q[α])| = q!(q-1)^q·q^q`.
pub fn count_perms_field_dual(q: u64) -> BigUint {
    factorial(q) * pow(q - 1, q) * pow(q, q)
}

/// `|St_α(F_q)| = (q-1)^q`.
pub fn count_stabilizer_field(q: u64) -> BigUint {
    pow(q - 1, q)
}

/// `perms / funcs = q!(q-1)^q / q^{2q}`, compared by cross-multiplication.
pub fn permutation_ratio_holds(q: u64, perms: &BigUint, funcs: &BigUint) -> bool {
    perms * pow(q, 2 * q) == factorial(q) * pow(q - 1, q) * funcs
}

/// Number of distinct pairs `([f], [f'])` on `Z_{p^n}`, which is the index
/// of the ideal of polynomials vanishing with their derivative. Equals
/// `|F(Z_{p^n}[α])| / |F(Z_{p^n})|`.
pub fn count_derivative_pairs(p: u64, n: u32) -> Result<Option<BigUint>> {
    check(p, n)?;
    if n == 1 {
        return Ok(Some(pow(p, 2 * p)));
    }
    Ok(count_stabilizer(p, n)?.map(|s| s * count_functions_zpn(p, n).expect("checked")))
}
