//! Census reports: counted and predicted quantities side by side, and the
//! identities linking them.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use num_bigint::BigUint;

use crate::census::enumerate::{summarize, SearchSpace, TableSet};
use crate::census::formula;
use crate::census::stabilizer::{count_derivative_pairs, enumerate_stabilizer, MAX_STABILIZER_MODULUS};
use crate::error::{Error, Result};
use crate::null::{count_n_bound, count_nprime_bound, is_null_bruteforce, null_polys_blocks};
use crate::ring::{Modulus, Ring};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Quantity {
    /// `|F(Z_{p^n})|`
    FBase,
    /// `|P(Z_{p^n})|`
    PBase,
    /// `|F(Z_{p^n}[α])|`
    FCount,
    /// `|P(Z_{p^n}[α])|`
    PCount,
    /// `|St_α(Z_{p^n})|`
    StabCount,
    /// Null polynomials on `Z_{p^n}` of degree `< (n+1)p`.
    NBoundCount,
    /// Those that also have a null derivative.
    NprimeBoundCount,
    /// Pairs `([f], [f'])` with `[f]` bijective and `[f']` unit-valued.
    PairCountB,
    /// All pairs `([f], [f'])`.
    DerivativePairs,
}

impl Quantity {
    pub const ALL: [Quantity; 9] = [
        Quantity::FBase,
        Quantity::PBase,
        Quantity::FCount,
        Quantity::PCount,
        Quantity::StabCount,
        Quantity::NBoundCount,
        Quantity::NprimeBoundCount,
        Quantity::PairCountB,
        Quantity::DerivativePairs,
    ];

    pub fn key(self) -> &'static str {
        match self {
            Quantity::FBase => "F_base",
            Quantity::PBase => "P_base",
            Quantity::FCount => "F_count",
            Quantity::PCount => "P_count",
            Quantity::StabCount => "Stab_count",
            Quantity::NBoundCount => "N_bound_count",
            Quantity::NprimeBoundCount => "Nprime_bound_count",
            Quantity::PairCountB => "pair_count_B",
            Quantity::DerivativePairs => "derivative_pairs",
        }
    }

    pub fn from_key(key: &str) -> Option<Quantity> {
        Quantity::ALL.into_iter().find(|q| q.key() == key)
    }
}

pub type Quantities = BTreeMap<Quantity, BigUint>;

/// Every closed form that applies at `(p, n)`. Dual-ring quantities are
/// absent for `n > p`.
pub fn formula_suite(p: u64, n: u32) -> Result<Quantities> {
    let mut q = Quantities::new();
    q.insert(Quantity::FBase, formula::count_functions_zpn(p, n)?);
    q.insert(Quantity::PBase, formula::count_perms_zpn(p, n)?);
    if let Some(v) = formula::count_functions_dual(p, n)? {
        q.insert(Quantity::FCount, v);
    }
    if let Some(v) = formula::count_perms_dual(p, n)? {
        q.insert(Quantity::PCount, v);
    }
    if let Some(s) = formula::count_stabilizer(p, n)? {
        q.insert(Quantity::PairCountB, &q[&Quantity::PBase] * &s);
        q.insert(Quantity::StabCount, s);
    }
    if n as u64 <= p {
        q.insert(Quantity::NBoundCount, count_n_bound(p, n)?);
        q.insert(Quantity::NprimeBoundCount, count_nprime_bound(p, n)?);
    }
    if let Some(v) = formula::count_derivative_pairs(p, n)? {
        q.insert(Quantity::DerivativePairs, v);
    }
    Ok(q)
}

/// One identity between census quantities.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IdentityCheck {
    pub name: &'static str,
    /// `None` when the identity does not apply or an input is missing.
    pub holds: Option<bool>,
}

/// Checks the structural identities on whatever quantities are present:
///
/// - `P_dual = F_base·P_base·Stab`
/// - `F_dual = F_base²·Stab` (for `n > 1`)
/// - `F_dual = derivative_pairs·F_base`
/// - `Stab = N_bound / Nprime_bound` (for `n > 1`)
/// - `P_dual / F_dual = p!(p-1)^p / p^{2p}`
/// - `P_base / F_base = p!(p-1)^p / p^{2p}` (for `n > 1`)
/// - `P_dual = pair_B·F_base`
/// - `pair_B = P_base·Stab`
pub fn identity_checks(p: u64, n: u32, q: &Quantities) -> Vec<IdentityCheck> {
    use Quantity::*;
    let get = |k: Quantity| q.get(&k);
    let check = |name: &'static str, applies: bool, f: &dyn Fn() -> Option<bool>| IdentityCheck {
        name,
        holds: if applies { f() } else { None },
    };
    let field = n == 1;
    alloc::vec![
        check("P_dual = F_base * P_base * Stab", true, &|| {
            Some(get(PCount)? == &(get(FBase)? * get(PBase)? * get(StabCount)?))
        }),
        check("F_dual = F_base^2 * Stab", !field, &|| {
            let f = get(FBase)?;
            Some(get(FCount)? == &(f * f * get(StabCount)?))
        }),
        check("F_dual = derivative_pairs * F_base", true, &|| {
            Some(get(FCount)? == &(get(DerivativePairs)? * get(FBase)?))
        }),
        check("Stab * Nprime_bound = N_bound", !field, &|| {
            Some(&(get(StabCount)? * get(NprimeBoundCount)?) == get(NBoundCount)?)
        }),
        check("P_dual / F_dual = p!(p-1)^p / p^(2p)", true, &|| {
            Some(formula::permutation_ratio_holds(p, get(PCount)?, get(FCount)?))
        }),
        check("P_base / F_base = p!(p-1)^p / p^(2p)", !field, &|| {
            Some(formula::permutation_ratio_holds(p, get(PBase)?, get(FBase)?))
        }),
        check("P_dual = pair_B * F_base", true, &|| {
            Some(get(PCount)? == &(get(PairCountB)? * get(FBase)?))
        }),
        check("pair_B = P_base * Stab", true, &|| {
            Some(get(PairCountB)? == &(get(PBase)? * get(StabCount)?))
        }),
    ]
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CensusMode {
    /// Count everything that fits under the guard, predict everything.
    Count,
    /// Formulas only.
    Predict,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Entry {
    pub quantity: Quantity,
    pub counted: Option<BigUint>,
    pub predicted: Option<BigUint>,
}

impl Entry {
    /// `counted == predicted` when both are present.
    pub fn matches(&self) -> Option<bool> {
        Some(self.counted.as_ref()? == self.predicted.as_ref()?)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CensusReport {
    pub p: u64,
    pub n: u32,
    pub m: u64,
    pub mode: CensusMode,
    pub entries: Vec<Entry>,
    /// Checks on the counted values where available, completed with
    /// predictions otherwise.
    pub identities: Vec<IdentityCheck>,
    /// Checks on the predicted values alone.
    pub formula_identities: Vec<IdentityCheck>,
}

impl CensusReport {
    pub fn entry(&self, q: Quantity) -> Option<&Entry> {
        self.entries.iter().find(|e| e.quantity == q)
    }

    /// No entry with both values present disagrees.
    pub fn all_match(&self) -> bool {
        self.entries.iter().all(|e| e.matches() != Some(false))
    }

    /// No applicable identity fails.
    pub fn identities_hold(&self) -> bool {
        self.identities.iter().chain(&self.formula_identities).all(|c| c.holds != Some(false))
    }
}

/// Enumeration backend: distinct tables of a search space under a guard.
pub type Enumerator<'a> = &'a dyn Fn(&SearchSpace, u128) -> Result<TableSet>;

fn counted_tables(ring: Ring, max_space: u128, enumerate: Enumerator) -> Result<Option<(BigUint, BigUint)>> {
    let space = SearchSpace::default_for(ring)?;
    match enumerate(&space, max_space) {
        Ok(set) => {
            let e = summarize(&set);
            Ok(Some((e.functions, e.permutations)))
        }
        Err(Error::SearchSpaceTooLarge { .. }) => Ok(None),
        Err(e) => Err(e),
    }
}

/// Number of bounded null polynomials and of those with a null derivative,
/// from the block generator filtered by evaluation.
fn counted_null_bounds(p: u64, n: u32) -> Result<Option<(BigUint, BigUint)>> {
    if n as u64 > p {
        return Ok(None);
    }
    let m = p.pow(n);
    let polys = match null_polys_blocks(p, n, n as usize + 1) {
        Ok(v) => v,
        Err(Error::SearchSpaceTooLarge { .. }) => return Ok(None),
        Err(e) => return Err(e),
    };
    let mut total = 0usize;
    let mut both = 0usize;
    for f in &polys {
        if is_null_bruteforce(f, Ring::Base(m))?.holds {
            total += 1;
            if is_null_bruteforce(&f.derive(), Ring::Base(m))?.holds {
                both += 1;
            }
        }
    }
    Ok(Some((BigUint::from(total), BigUint::from(both))))
}

/// Builds the report for `(p, n)`. In counting mode each quantity is
/// counted when its enumeration fits the guard (`max_space` for function
/// tables, `p^n <= 9` for the stabilizer and the pair counts) and left
/// uncounted otherwise.
pub fn census_with(
    p: u64,
    n: u32,
    mode: CensusMode,
    max_space: u128,
    enumerate: Enumerator,
) -> Result<CensusReport> {
    let m = Modulus::prime_power(p, n)?.value();
    let predicted = formula_suite(p, n)?;
    let mut counted = Quantities::new();
    if mode == CensusMode::Count {
        if let Some((f, pp)) = counted_tables(Ring::Base(m), max_space, enumerate)? {
            counted.insert(Quantity::FBase, f);
            counted.insert(Quantity::PBase, pp);
        }
        if Ring::Dual(m).check_enumerable().is_ok() {
            if let Some((f, pp)) = counted_tables(Ring::Dual(m), max_space, enumerate)? {
                counted.insert(Quantity::FCount, f);
                counted.insert(Quantity::PCount, pp);
            }
        }
        if m <= MAX_STABILIZER_MODULUS {
            counted.insert(Quantity::StabCount, enumerate_stabilizer(p, n)?.count());
            counted.insert(Quantity::PairCountB, count_derivative_pairs(p, n, true)?);
            counted.insert(Quantity::DerivativePairs, count_derivative_pairs(p, n, false)?);
        }
        if let Some((a, b)) = counted_null_bounds(p, n)? {
            counted.insert(Quantity::NBoundCount, a);
            counted.insert(Quantity::NprimeBoundCount, b);
        }
    }
    let entries = Quantity::ALL
        .iter()
        .map(|&q| Entry {
            quantity: q,
            counted: counted.get(&q).cloned(),
            predicted: predicted.get(&q).cloned(),
        })
        .collect();
    let mut merged = predicted.clone();
    merged.extend(counted.clone());
    let identities = identity_checks(p, n, &merged);
    let formula_identities = identity_checks(p, n, &predicted);
    Ok(CensusReport { p, n, m, mode, entries, identities, formula_identities })
}

/// [`census_with`] using the single-threaded enumerator.
pub fn census(p: u64, n: u32, mode: CensusMode, max_space: u128) -> Result<CensusReport> {
    census_with(p, n, mode, max_space, &|s, limit| crate::census::enumerate::enumerate_tables(s, limit))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::census::enumerate::DEFAULT_MAX_SPACE;

    fn big(v: u64) -> BigUint {
        BigUint::from(v)
    }

    #[test]
    fn formula_suite_examples() {
        let q = formula_suite(2, 2).unwrap();
        assert_eq!(q[&Quantity::FBase], big(64));
        assert_eq!(q[&Quantity::PBase], big(8));
        assert_eq!(q[&Quantity::StabCount], big(4));
        assert_eq!(q[&Quantity::FCount], big(16384));
        assert_eq!(q[&Quantity::PCount], big(2048));
        assert_eq!(q[&Quantity::PairCountB], big(32));
        let q = formula_suite(2, 3).unwrap();
        assert!(!q.contains_key(&Quantity::FCount));
        assert!(q.contains_key(&Quantity::FBase));
    }

    #[test]
    fn formula_identities_hold() {
        for p in crate::ring::primes_in(2, 13) {
            for n in 1..=p as u32 {
                let q = formula_suite(p, n).unwrap();
                for c in identity_checks(p, n, &q) {
                    assert_ne!(c.holds, Some(false), "{} at p = {p}, n = {n}", c.name);
                }
            }
        }
    }

    #[test]
    fn identity_examples() {
        let q = formula_suite(2, 2).unwrap();
        let checks = identity_checks(2, 2, &q);
        assert!(checks.iter().all(|c| c.holds == Some(true)), "{checks:?}");
        let mut bad = q.clone();
        bad.insert(Quantity::StabCount, big(5));
        assert!(identity_checks(2, 2, &bad).iter().any(|c| c.holds == Some(false)));
    }

    #[test]
    fn counted_census_small() {
        for (p, n) in [(2u64, 1u32), (3, 1), (2, 2)] {
            let r = census(p, n, CensusMode::Count, DEFAULT_MAX_SPACE).unwrap();
            for q in [Quantity::FCount, Quantity::PCount, Quantity::StabCount, Quantity::PairCountB] {
                assert_eq!(r.entry(q).unwrap().matches(), Some(true), "{q:?} at ({p}, {n})");
            }
            assert!(r.all_match() && r.identities_hold());
        }
    }

    #[test]
    fn predict_only_counts_nothing() {
        let r = census(3, 2, CensusMode::Predict, DEFAULT_MAX_SPACE).unwrap();
        assert!(r.entries.iter().all(|e| e.counted.is_none()));
        assert_eq!(r.entry(Quantity::StabCount).unwrap().predicted, Some(big(729)));
    }

    #[test]
    fn quantity_keys_round_trip() {
        for q in Quantity::ALL {
            assert_eq!(Quantity::from_key(q.key()), Some(q));
        }
    }
}
