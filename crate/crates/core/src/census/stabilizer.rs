//! The pointwise stabilizer of `Z_{p^n}` inside the polynomial permutations
//! of `Z_{p^n}[α]`, and the pairs `([f], [f'])` of derivative data.

use alloc::vec::Vec;

use hashbrown::HashSet;
use num_bigint::BigUint;

use crate::census::canonical::for_each_canonical_zm;
use crate::census::table::FuncTable;
use crate::error::{Error, Result};
use crate::null::{mu, null_polys_blocks, null_polys_falling};
use crate::poly::Poly;
use crate::ring::{add_mod, Modulus, Ring};

/// Largest `p^n` the stabilizer and pair enumerations accept.
pub const MAX_STABILIZER_MODULUS: u64 = 9;

fn check_params(p: u64, n: u32) -> Result<u64> {
    let m = Modulus::prime_power(p, n)?.value();
    if m > MAX_STABILIZER_MODULUS {
        return Err(Error::SearchSpaceTooLarge { size: m as u128, limit: MAX_STABILIZER_MODULUS as u128 });
    }
    Ok(m)
}

/// Null polynomials on `Z_{p^n}` that represent every class of null
/// polynomials modulo those vanishing with their derivative. For `n <= p`
/// they are the degree `< p·min(n+1, p)` ones from the block description;
/// otherwise all of degree `< 2μ(p^n)`.
pub fn stabilizer_candidates(p: u64, n: u32) -> Result<Vec<Poly>> {
    let m = Modulus::prime_power(p, n)?.value();
    if n as u64 <= p {
        null_polys_blocks(p, n, (n as usize + 1).min(p as usize))
    } else {
        null_polys_falling(m, 2 * mu(m) as usize)
    }
}

#[derive(Debug, Clone)]
pub struct Stabilizer {
    pub p: u64,
    pub n: u32,
    /// Distinct elements as tables on `Z_{p^n}[α]`, sorted.
    pub elements: Vec<FuncTable>,
    /// For each element, the first `h` found with `[x + h]` equal to it.
    pub representatives: Vec<Poly>,
    /// Number of null polynomials tried.
    pub candidates: usize,
}

impl Stabilizer {
    pub fn count(&self) -> BigUint {
        BigUint::from(self.elements.len())
    }

    /// Orders of the elements, in the order of `elements`.
    pub fn element_orders(&self) -> Vec<usize> {
        self.elements.iter().map(|t| t.order().expect("stabilizer elements are bijections")).collect()
    }

    /// Every element fixes each element of `Z_{p^n}`.
    pub fn fixes_base_ring(&self) -> bool {
        let m = self.p.pow(self.n) as usize;
        self.elements.iter().all(|t| (0..m).all(|a| t.values()[a] as usize == a))
    }

    /// Closed under composition.
    pub fn is_closed(&self) -> bool {
        let set: HashSet<&FuncTable> = self.elements.iter().collect();
        self.elements
            .iter()
            .all(|a| self.elements.iter().all(|b| set.contains(&a.compose(b).expect("same ring"))))
    }
}

/// Enumerates `x + h` over the stabilizer candidates, keeps those that
/// permute `Z_{p^n}[α]` and collects their distinct tables.
pub fn enumerate_stabilizer(p: u64, n: u32) -> Result<Stabilizer> {
    let m = check_params(p, n)?;
    let hs = stabilizer_candidates(p, n)?;
    let x = Poly::x(m);
    let mut found: Vec<(FuncTable, Poly)> = Vec::new();
    let mut seen = HashSet::new();
    for h in &hs {
        let g = x.add(h)?;
        let t = FuncTable::of_poly(&g, Ring::Dual(m))?;
        if t.is_bijection() && seen.insert(t.clone()) {
            found.push((t, h.clone()));
        }
    }
    found.sort_by(|a, b| a.0.cmp(&b.0));
    let (elements, representatives) = found.into_iter().unzip();
    Ok(Stabilizer { p, n, elements, representatives, candidates: hs.len() })
}

/// Packs a table on `Z_m` (`m <= 9`) into one integer.
fn pack(values: impl Iterator<Item = u64>, m: u64) -> u64 {
    values.fold(0, |acc, v| acc * m + v)
}

fn base_values(f: &Poly, m: u64) -> Vec<u64> {
    (0..m).map(|a| f.eval_raw(a)).collect()
}

/// Counts distinct pairs `([f], [f'])` on `Z_{p^n}`, optionally only those
/// with `[f]` bijective and `[f']` unit-valued. Every `f` is written as a
/// canonical representative `f0` plus a null polynomial `h`; since
/// `[f0 + h] = [f0]`, the pairs are `([f0], [f0'] + [h'])` over the
/// distinct derivative tables `[h']`.
pub fn count_derivative_pairs(p: u64, n: u32, permutations_only: bool) -> Result<BigUint> {
    let m = check_params(p, n)?;
    let modulus = Modulus::new(m)?;
    let mut slopes: Vec<Vec<u64>> = Vec::new();
    let mut seen = HashSet::new();
    for h in stabilizer_candidates(p, n)? {
        let v = base_values(&h.derive(), m);
        if seen.insert(v.clone()) {
            slopes.push(v);
        }
    }
    let mut pairs: HashSet<(u64, u64)> = HashSet::new();
    for_each_canonical_zm(m, &mut |f0| {
        let vals = base_values(f0, m);
        if permutations_only {
            let mut hit = alloc::vec![false; m as usize];
            if vals.iter().any(|&v| core::mem::replace(&mut hit[v as usize], true)) {
                return;
            }
        }
        let key = pack(vals.iter().copied(), m);
        let d = base_values(&f0.derive(), m);
        for s in &slopes {
            let sum: Vec<u64> = d.iter().zip(s).map(|(&a, &b)| add_mod(a, b, m)).collect();
            if permutations_only && !sum.iter().all(|&v| modulus.is_unit(v)) {
                continue;
            }
            pairs.insert((key, pack(sum.into_iter(), m)));
        }
    });
    Ok(BigUint::from(pairs.len()))
}

/// The number of pairs `([f], [f'])` with `[f]` a permutation of
/// `Z_{p^n}` and `[f']` unit-valued.
pub fn pair_count_b(p: u64, n: u32) -> Result<BigUint> {
    count_derivative_pairs(p, n, true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::census::formula;

    #[test]
    fn klein_four() {
        let s = enumerate_stabilizer(2, 2).unwrap();
        assert_eq!(s.count(), BigUint::from(4u32));
        assert!(s.element_orders().iter().all(|&o| o <= 2));
        assert!(s.fixes_base_ring() && s.is_closed());
        let expected = [
            Poly::x(4),
            Poly::new(alloc::vec![0, 3, 2], 4),
            Poly::new(alloc::vec![0, 3, 0, 2], 4),
            Poly::new(alloc::vec![0, 1, 2, 2], 4),
        ];
        let tables: HashSet<FuncTable> =
            expected.iter().map(|f| FuncTable::of_poly(f, Ring::Dual(4)).unwrap()).collect();
        let got: HashSet<FuncTable> = s.elements.iter().cloned().collect();
        assert_eq!(tables, got);
    }

    #[test]
    fn small_stabilizers() {
        for (p, n) in [(2u64, 1u32), (3, 1), (5, 1), (2, 3)] {
            let s = enumerate_stabilizer(p, n).unwrap();
            assert!(s.fixes_base_ring() && s.is_closed());
            if let Some(c) = formula::count_stabilizer(p, n).unwrap() {
                assert_eq!(s.count(), c, "p = {p}, n = {n}");
            }
        }
        assert_eq!(enumerate_stabilizer(3, 1).unwrap().count(), BigUint::from(8u32));
        assert!(enumerate_stabilizer(2, 4).is_err());
    }

    #[test]
    fn pair_counts() {
        assert_eq!(pair_count_b(2, 2).unwrap(), BigUint::from(32u32));
        assert_eq!(pair_count_b(2, 1).unwrap(), BigUint::from(2u32));
        assert_eq!(pair_count_b(3, 1).unwrap(), BigUint::from(48u32));
        for (p, n) in [(2u64, 1u32), (2, 2), (3, 1)] {
            let all = count_derivative_pairs(p, n, false).unwrap();
            assert_eq!(Some(all), formula::count_derivative_pairs(p, n).unwrap());
        }
    }
}
