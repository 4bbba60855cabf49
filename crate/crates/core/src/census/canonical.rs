//! Canonical representatives of polynomial functions.
//!
//! On `Z_m` every function has exactly one representative `Σ a_i x^i`,
//! `i < μ(m)`, with `0 <= a_i < m / gcd(m, i!)`. On `Z_{p^n}[α]` with
//! `n <= p` the real part is written in `(x^p - x)`-adic blocks whose
//! coefficients are reduced by the powers of `p` that the ideal of
//! polynomials vanishing with their derivative allows, and the `α` part is
//! the `Z_{p^n}` representative. Over a prime field the real part is taken
//! mod `(x^q - x)^2` and the `α` part mod `x^q - x`.

use alloc::vec::Vec;
use core::fmt;

use crate::error::{Error, Result};
use crate::null::{falling_step, minimal_monic_null, mu};
use crate::odometer::for_each_digits;
use crate::poly::{falling_factorial_mod, BlockExpansion, DualPoly, Poly};
use crate::ring::{check_modulus, is_prime, Modulus};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum CanonicalRep {
    /// `a_i` for `i < μ(m)`.
    Zm { m: u64, coeffs: Vec<u64> },
    /// `blocks[k][j]` is the coefficient of `x^j (x^p - x)^k` for
    /// `k <= min(n, p-1)`, and `alpha[i]` the coefficient of `α x^i` for
    /// `i < np`.
    Dual { p: u64, n: u32, blocks: Vec<Vec<u64>>, alpha: Vec<u64> },
    /// `a_i` for `i < 2q` and `b_j` for `j < q`.
    Field { q: u64, a: Vec<u64>, b: Vec<u64> },
}

/// Upper bounds `m / gcd(m, i!)` for the coefficients of the `Z_m` form.
pub fn ranges_zm(m: u64) -> Vec<u64> {
    (0..mu(m) as usize).map(|i| falling_step(m, i)).collect()
}

/// Block ranges `p^n` for `k = 0` and `p^{n-k+1}` for `1 <= k <= min(n, p-1)`.
pub fn block_ranges(p: u64, n: u32) -> Vec<Vec<u64>> {
    let top = (n as usize).min(p as usize - 1);
    (0..=top)
        .map(|k| {
            let e = if k == 0 { n } else { n + 1 - k as u32 };
            alloc::vec![p.pow(e); p as usize]
        })
        .collect()
}

fn pad(v: &[u64], len: usize) -> Vec<u64> {
    let mut out = v.to_vec();
    out.resize(len, 0);
    out
}

fn zm_coeffs(f: &Poly) -> Vec<u64> {
    let m = f.modulus();
    let k = mu(m) as usize;
    let top = falling_factorial_mod(0, k, m);
    let (_, mut r) = f.div_rem(&top).expect("falling factorials are monic");
    for i in (0..k).rev() {
        let d = falling_step(m, i);
        let q = r.coeff(i) / d;
        if q > 0 {
            let shift = falling_factorial_mod(0, i, m).scale(q * d);
            r = r.sub(&shift).expect("same modulus");
        }
    }
    pad(r.coeffs(), k)
}

/// The `Z_m` form, by division by `(x)_{μ(m)}` and then descending
/// elimination with `(m / gcd(m, k!))·(x)_k`.
pub fn canonical_zm(f: &Poly) -> CanonicalRep {
    CanonicalRep::Zm { m: f.modulus(), coeffs: zm_coeffs(f) }
}

/// The `Z_{p^n}[α]` form for `n <= p`; `f` must live over `Z_{p^n}`.
pub fn canonical_dual(f: &DualPoly, p: u64, n: u32) -> Result<CanonicalRep> {
    let m = Modulus::prime_power(p, n)?.value();
    if f.modulus() != m {
        return Err(Error::ModulusMismatch { left: m, right: f.modulus() });
    }
    let top = minimal_monic_null(p, n)?;
    let (f1, f2) = f.split();
    let (_, r) = f1.div_rem(&top)?;
    let e = r.expand_base(&Poly::frobenius_base(p as usize, m))?;
    let blocks = block_ranges(p, n)
        .iter()
        .enumerate()
        .map(|(k, rs)| rs.iter().enumerate().map(|(j, &bound)| e.coeff(j, k) % bound).collect())
        .collect();
    Ok(CanonicalRep::Dual { p, n, blocks, alpha: zm_coeffs(&f2) })
}

/// The `F_q[α]` form for prime `q`.
pub fn canonical_field(f: &DualPoly) -> Result<CanonicalRep> {
    let q = f.modulus();
    if !is_prime(q) {
        return Err(Error::NotPrime(q));
    }
    let h = Poly::frobenius_base(q as usize, q);
    let (f1, f2) = f.split();
    let (_, a) = f1.div_rem(&h.pow(2))?;
    let (_, b) = f2.div_rem(&h)?;
    Ok(CanonicalRep::Field { q, a: pad(a.coeffs(), 2 * q as usize), b: pad(b.coeffs(), q as usize) })
}

impl CanonicalRep {
    pub fn modulus(&self) -> u64 {
        match self {
            CanonicalRep::Zm { m, .. } => *m,
            CanonicalRep::Dual { p, n, .. } => p.pow(*n),
            CanonicalRep::Field { q, .. } => *q,
        }
    }

    /// The represented polynomial `f1 + α·f2`.
    pub fn to_dual_poly(&self) -> DualPoly {
        let m = self.modulus();
        let (f1, f2) = match self {
            CanonicalRep::Zm { coeffs, .. } => (Poly::new(coeffs.clone(), m), Poly::zero(m)),
            CanonicalRep::Dual { p, blocks, alpha, .. } => {
                let base = Poly::frobenius_base(*p as usize, m);
                let bs = blocks.iter().map(|b| Poly::new(b.clone(), m)).collect();
                let e = BlockExpansion::from_blocks(base, bs).expect("blocks fit the base");
                (e.reassemble(), Poly::new(alpha.clone(), m))
            }
            CanonicalRep::Field { a, b, .. } => (Poly::new(a.clone(), m), Poly::new(b.clone(), m)),
        };
        DualPoly::from_parts(&f1, &f2).expect("same modulus")
    }

    /// The real part `f1` as a polynomial over `Z_m`.
    pub fn to_poly(&self) -> Poly {
        self.to_dual_poly().split().0
    }

    /// All coefficients lie in their documented ranges.
    pub fn in_range(&self) -> bool {
        let within = |v: &[u64], r: &[u64]| v.len() == r.len() && v.iter().zip(r).all(|(a, b)| a < b);
        match self {
            CanonicalRep::Zm { m, coeffs } => within(coeffs, &ranges_zm(*m)),
            CanonicalRep::Dual { p, n, blocks, alpha } => {
                let rs = block_ranges(*p, *n);
                blocks.len() == rs.len()
                    && blocks.iter().zip(&rs).all(|(b, r)| within(b, r))
                    && within(alpha, &ranges_zm(p.pow(*n)))
            }
            CanonicalRep::Field { q, a, b } => {
                a.len() == 2 * *q as usize && b.len() == *q as usize && a.iter().chain(b).all(|c| c < q)
            }
        }
    }
}

impl fmt::Display for CanonicalRep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CanonicalRep::Zm { .. } => write!(f, "{}", self.to_poly()),
            _ => write!(f, "{}", self.to_dual_poly()),
        }
    }
}

/// Calls `visit` on every `Z_m` canonical polynomial, in coefficient order.
pub fn for_each_canonical_zm(m: u64, visit: &mut dyn FnMut(&Poly)) {
    check_modulus(m).expect("invalid modulus");
    for_each_digits(&ranges_zm(m), |d| visit(&Poly::new(d.to_vec(), m)));
}

/// Calls `visit` on every `Z_{p^n}[α]` canonical polynomial, `n <= p`.
pub fn for_each_canonical_dual(p: u64, n: u32, visit: &mut dyn FnMut(&DualPoly)) -> Result<()> {
    let m = Modulus::prime_power(p, n)?.value();
    minimal_monic_null(p, n)?;
    let rs = block_ranges(p, n);
    let mut radices: Vec<u64> = rs.iter().flatten().copied().collect();
    let split = radices.len();
    radices.extend(ranges_zm(m));
    let pu = p as usize;
    for_each_digits(&radices, |d| {
        let blocks = d[..split].chunks(pu).map(|c| c.to_vec()).collect();
        let rep = CanonicalRep::Dual { p, n, blocks, alpha: d[split..].to_vec() };
        visit(&rep.to_dual_poly());
    });
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::census::formula;
    use crate::census::table::FuncTable;
    use crate::ring::Ring;
    use alloc::vec;
    use hashbrown::HashSet;
    use num_bigint::BigUint;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn table(f: &DualPoly) -> FuncTable {
        FuncTable::of_dual(f).unwrap()
    }

    #[test]
    fn zm_examples() {
        let r = canonical_zm(&Poly::monomial(1, 4, 4));
        assert_eq!(r.to_poly(), Poly::monomial(1, 2, 4));
        for m in [2u64, 5, 12, 30] {
            assert_eq!(canonical_zm(&Poly::x(m)).to_poly(), Poly::x(m));
        }
        assert!(canonical_zm(&falling_factorial_mod(0, 3, 6)).to_poly().is_zero());
    }

    #[test]
    fn zm_x4_matches_search() {
        let target = FuncTable::of_poly(&Poly::monomial(1, 4, 4), Ring::Base(4)).unwrap();
        let mut hits = Vec::new();
        for_each_canonical_zm(4, &mut |g| {
            if FuncTable::of_poly(g, Ring::Base(4)).unwrap() == target {
                hits.push(g.clone());
            }
        });
        assert_eq!(hits, vec![Poly::monomial(1, 2, 4)]);
    }

    #[test]
    fn zm_forms_are_unique_and_complete() {
        for m in (2..=10u64).chain([12]) {
            let mut set = HashSet::new();
            let mut n = 0u32;
            for_each_canonical_zm(m, &mut |g| {
                set.insert(FuncTable::of_poly(g, Ring::Base(m)).unwrap());
                n += 1;
            });
            assert_eq!(set.len() as u32, n, "m = {m}");
            if let Some((p, e)) = Modulus::new(m).unwrap().as_prime_power() {
                assert_eq!(BigUint::from(n), formula::count_functions_zpn(p, e).unwrap());
            }
        }
    }

    #[test]
    fn zm_reduction_preserves_function() {
        let mut rng = ChaCha8Rng::seed_from_u64(17);
        for _ in 0..2000 {
            let m = rng.gen_range(2..40);
            let f = Poly::new((0..rng.gen_range(0..20)).map(|_| rng.gen_range(0..m)).collect(), m);
            let r = canonical_zm(&f);
            assert!(r.in_range());
            let g = r.to_poly();
            assert_eq!(
                FuncTable::of_poly(&f, Ring::Base(m)).unwrap(),
                FuncTable::of_poly(&g, Ring::Base(m)).unwrap()
            );
            assert_eq!(canonical_zm(&g), r);
        }
    }

    #[test]
    fn dual_examples() {
        let f = DualPoly::from_parts(&Poly::x(4), &Poly::monomial(1, 4, 4)).unwrap();
        let r = canonical_dual(&f, 2, 2).unwrap();
        let (g1, g2) = r.to_dual_poly().split();
        assert_eq!(g2, Poly::monomial(1, 2, 4));
        assert_eq!(g1, Poly::x(4));
        assert_eq!(table(&f), table(&r.to_dual_poly()));

        for (p, n) in [(2u64, 1u32), (2, 2), (3, 1), (3, 2), (3, 3)] {
            let m = p.pow(n);
            let top = n.min(p as u32 - 1) + 1;
            let f = Poly::frobenius_base(p as usize, m).pow(top).to_dual();
            assert!(canonical_dual(&f, p, n).unwrap().to_dual_poly().is_zero());
        }

        let f = Poly::new(vec![0, 10], 9).to_dual();
        let r = canonical_dual(&f, 3, 2).unwrap();
        assert_eq!(r.to_poly(), Poly::x(9));
        assert!(canonical_dual(&Poly::x(8).to_dual(), 2, 3).is_err());
    }

    #[test]
    fn dual_reduction_preserves_function() {
        let mut rng = ChaCha8Rng::seed_from_u64(21);
        for (p, n) in [(2u64, 2u32), (3, 2)] {
            let m = p.pow(n);
            for _ in 0..2000 {
                let f1 = Poly::new((0..14).map(|_| rng.gen_range(0..m)).collect(), m);
                let f2 = Poly::new((0..10).map(|_| rng.gen_range(0..m)).collect(), m);
                let f = DualPoly::from_parts(&f1, &f2).unwrap();
                let r = canonical_dual(&f, p, n).unwrap();
                assert!(r.in_range());
                let g = r.to_dual_poly();
                assert_eq!(table(&f), table(&g));
                assert_eq!(canonical_dual(&g, p, n).unwrap(), r);
            }
        }
    }

    #[test]
    fn dual_forms_small_cases() {
        for (p, n) in [(2u64, 1u32), (3, 1)] {
            let mut set = HashSet::new();
            let mut count = 0u32;
            for_each_canonical_dual(p, n, &mut |g| {
                set.insert(table(g));
                count += 1;
            })
            .unwrap();
            assert_eq!(set.len() as u32, count);
            assert_eq!(BigUint::from(count), formula::count_functions_dual(p, n).unwrap().unwrap());
        }
    }

    #[test]
    fn field_examples() {
        let r = canonical_field(&Poly::monomial(1, 2, 2).to_dual()).unwrap();
        assert_eq!(r.to_poly(), Poly::monomial(1, 2, 2));
        for q in [2u64, 3, 5] {
            let h = Poly::frobenius_base(q as usize, q);
            assert!(canonical_field(&h.pow(2).to_dual()).unwrap().to_dual_poly().is_zero());
            let f = DualPoly::from_parts(&Poly::zero(q), &h).unwrap();
            assert!(canonical_field(&f).unwrap().to_dual_poly().is_zero());
        }
        assert_eq!(canonical_field(&Poly::x(4).to_dual()).unwrap_err(), Error::NotPrime(4));
    }

    #[test]
    fn field_reduction_preserves_function() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        for q in [2u64, 3, 5, 7] {
            for _ in 0..300 {
                let f1 = Poly::new((0..20).map(|_| rng.gen_range(0..q)).collect(), q);
                let f2 = Poly::new((0..20).map(|_| rng.gen_range(0..q)).collect(), q);
                let f = DualPoly::from_parts(&f1, &f2).unwrap();
                let r = canonical_field(&f).unwrap();
                assert!(r.in_range());
                assert_eq!(table(&f), table(&r.to_dual_poly()));
                // Over a prime field the block form and the field form agree.
                assert_eq!(canonical_dual(&f, q, 1).unwrap().to_dual_poly(), r.to_dual_poly());
            }
        }
    }
}
