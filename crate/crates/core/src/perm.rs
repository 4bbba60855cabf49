//! Permutation polynomial criteria on `Z_m` and `Z_m[α]`.

use alloc::vec::Vec;

use crate::census::table::FuncTable;
use crate::error::{Error, Result};
use crate::poly::{DualPoly, Poly, ZPoly};
use crate::ring::{is_prime, DualNum, Modulus, Ring};

/// Which decision procedure produced a verdict.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Criterion {
    /// The whole value table was checked for bijectivity.
    BruteForce,
    /// `f` permutes `Z_p` and `f'` has no zero mod `p` (for `Z_{p^n}`, `n > 1`).
    Noebauer,
    /// `f1` permutes `Z_m` and `f1'` is unit-valued (for `Z_m[α]`).
    DualGenper,
    /// The dual criterion checked prime by prime over the factors of `m`.
    Crt,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FailureReason {
    /// Two elements share an image; the witness is the later of the first
    /// such pair.
    NotInjectiveOnResidue,
    /// The derivative is not a unit at the witness.
    DerivativeVanishes,
    /// `f1` does not permute `Z_p` for the reported prime factor `p`.
    FactorFails,
}

impl FailureReason {
    pub fn name(self) -> &'static str {
        match self {
            FailureReason::NotInjectiveOnResidue => "NotInjectiveOnResidue",
            FailureReason::DerivativeVanishes => "DerivativeVanishes",
            FailureReason::FactorFails => "FactorFails",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Failure {
    pub reason: FailureReason,
    /// The prime at which a residue-level criterion failed.
    pub prime: Option<u64>,
    /// The smallest failing element.
    pub witness: DualNum,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PermVerdict {
    pub is_pp: bool,
    pub criterion: Criterion,
    pub failure: Option<Failure>,
}

impl PermVerdict {
    fn pass(criterion: Criterion) -> Self {
        PermVerdict { is_pp: true, criterion, failure: None }
    }

    fn fail(criterion: Criterion, reason: FailureReason, prime: Option<u64>, witness: DualNum) -> Self {
        PermVerdict { is_pp: false, criterion, failure: Some(Failure { reason, prime, witness }) }
    }
}

fn from_table(t: &FuncTable) -> PermVerdict {
    match t.first_collision() {
        None => PermVerdict::pass(Criterion::BruteForce),
        Some(i) => PermVerdict::fail(
            Criterion::BruteForce,
            FailureReason::NotInjectiveOnResidue,
            None,
            t.ring().element(i),
        ),
    }
}

/// Bijectivity of `[f]` on `Z_m` or `Z_m[α]`, by its value table.
pub fn is_pp_bruteforce(f: &Poly, ring: Ring) -> Result<PermVerdict> {
    Ok(from_table(&FuncTable::of_poly(f, ring)?))
}

/// Bijectivity of `[f]` on `Z_m[α]` for `f ∈ Z_m[α][x]`.
pub fn is_pp_bruteforce_dual(f: &DualPoly) -> Result<PermVerdict> {
    Ok(from_table(&FuncTable::of_dual(f)?))
}

/// Residue-level test shared by the prime-power criteria: `f` (read mod
/// `p`) is injective on `0..p`, then `f'` has no zero there.
fn residue_test(f: &Poly, p: u64) -> Option<(FailureReason, u64)> {
    let fp = f.reduce_to(p);
    let mut seen = alloc::vec![false; p as usize];
    for a in 0..p {
        if core::mem::replace(&mut seen[fp.eval_raw(a) as usize], true) {
            return Some((FailureReason::NotInjectiveOnResidue, a));
        }
    }
    let d = fp.derive();
    (0..p).find(|&a| d.eval_raw(a) == 0).map(|a| (FailureReason::DerivativeVanishes, a))
}

/// Permutation test on `Z_{p^n}` for `f ∈ Z[x]`. For `n = 1` the table of
/// `f` on `Z_p` decides; for `n > 1`, `f` must permute `Z_p` and `f'` must
/// have no zero mod `p`.
pub fn is_pp_zpn(f: &ZPoly, p: u64, n: u32) -> Result<PermVerdict> {
    let m = Modulus::prime_power(p, n)?.value();
    if n == 1 {
        return is_pp_bruteforce(&f.reduce(p), Ring::Base(p));
    }
    Ok(match residue_test(&f.reduce(m), p) {
        None => PermVerdict::pass(Criterion::Noebauer),
        Some((reason, a)) => PermVerdict::fail(Criterion::Noebauer, reason, Some(p), DualNum::new(a, 0, m)),
    })
}

/// Permutation test on `Z_m[α]`: `f1` permutes `Z_m` and `f1'(a)` is a unit
/// for every `a`; `f2` plays no role. For `m = p^n` both conditions only
/// depend on `a mod p`, so just `0..p` is scanned. Other moduli are scanned
/// over all of `Z_m`.
pub fn is_pp_dual(f: &DualPoly) -> Result<PermVerdict> {
    let m = f.modulus();
    let modulus = Modulus::new(m)?;
    let (f1, _) = f.split();
    let criterion = Criterion::DualGenper;
    if let Some((p, _)) = modulus.as_prime_power() {
        return Ok(match residue_test(&f1, p) {
            None => PermVerdict::pass(criterion),
            Some((reason, a)) => PermVerdict::fail(criterion, reason, Some(p), DualNum::new(a, 0, m)),
        });
    }
    let t = FuncTable::of_poly(&f1, Ring::Base(m))?;
    if let Some(i) = t.first_collision() {
        let w = DualNum::new(i as u64, 0, m);
        return Ok(PermVerdict::fail(criterion, FailureReason::NotInjectiveOnResidue, None, w));
    }
    let d = f1.derive();
    Ok(match (0..m).find(|&a| !modulus.is_unit(d.eval_raw(a))) {
        None => PermVerdict::pass(criterion),
        Some(a) => {
            PermVerdict::fail(criterion, FailureReason::DerivativeVanishes, None, DualNum::new(a, 0, m))
        }
    })
}

/// Permutation test on `Z_m[α]` through the prime factors of `m`: for
/// every `p | m`, `f1` must permute `Z_p` and `f1'` must have no zero mod
/// `p`. The smallest failing prime is reported; a non-injective residue
/// map is reported as [`FailureReason::FactorFails`].
pub fn is_pp_dual_zm(f: &DualPoly) -> Result<PermVerdict> {
    let m = f.modulus();
    let modulus = Modulus::new(m)?;
    let (f1, _) = f.split();
    for p in modulus.primes() {
        if let Some((reason, a)) = residue_test(&f1, p) {
            let reason = match reason {
                FailureReason::NotInjectiveOnResidue => FailureReason::FactorFails,
                r => r,
            };
            return Ok(PermVerdict::fail(Criterion::Crt, reason, Some(p), DualNum::new(a, 0, m)));
        }
    }
    Ok(PermVerdict::pass(Criterion::Crt))
}

/// The seven equivalent statements about `f = f1 + α·f2 ∈ Z[α][x]` and a
/// prime `p`, with "for all n" and "for some n" read over `1..=n_max`:
///
/// 1. `f` permutes `Z_{p^n}[α]` for all `n`
/// 2. `f` permutes `Z_{p^n}[α]` for some `n`
/// 3. `f1` permutes `Z_{p^n}[α]` for all `n`
/// 4. `f1` permutes `Z_{p^n}[α]` for some `n`
/// 5. `f1` permutes `Z_p` and `f1'` has no zero mod `p`
/// 6. `f1` permutes `Z_{p^n}` for all `n`
/// 7. `f1` permutes `Z_{p^n}` for some `n > 1`
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EquivalenceReport {
    pub p: u64,
    pub n_max: u32,
    pub statements: [bool; 7],
    /// `f1` permutes `Z_p`; not one of the seven, reported for context.
    pub pp_on_residue_field: bool,
    /// Per `n`: (`f` on the dual ring, `f1` on the dual ring, `f1` on `Z_{p^n}`).
    pub per_level: Vec<[bool; 3]>,
}

impl EquivalenceReport {
    /// All seven agree, except that with `n_max = 1` statements 6 and 7
    /// carry no information beyond `Z_p` and are not compared.
    pub fn consistent(&self) -> bool {
        let s = &self.statements;
        let upto = if self.n_max >= 2 { 7 } else { 5 };
        s[..upto].iter().all(|&b| b == s[0])
    }
}

fn pp_on(f: &DualPoly, ring: Ring) -> Result<bool> {
    if ring.check_enumerable().is_ok() {
        let t = match ring {
            Ring::Dual(_) => FuncTable::of_dual(f)?,
            Ring::Base(_) => FuncTable::of_poly(&f.split().0, ring)?,
        };
        return Ok(t.is_bijection());
    }
    match ring {
        Ring::Dual(_) => Ok(is_pp_dual(f)?.is_pp),
        Ring::Base(m) => {
            let (p, n) = Modulus::new(m)?.as_prime_power().ok_or(Error::NotPrimePower(m))?;
            Ok(is_pp_zpn(&f.split().0.lift(), p, n)?.is_pp)
        }
    }
}

/// Evaluates the seven statements for `n = 1..=n_max`, by value tables
/// wherever the ring is small enough and by the criteria otherwise.
pub fn equivalence_battery(f1: &ZPoly, f2: &ZPoly, p: u64, n_max: u32) -> Result<EquivalenceReport> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if n_max == 0 {
        return Err(Error::InvalidArgument("n_max must be at least 1"));
    }
    let mut per_level = Vec::with_capacity(n_max as usize);
    for n in 1..=n_max {
        let m = Modulus::prime_power(p, n)?.value();
        let g1 = f1.reduce(m);
        let f = DualPoly::from_parts(&g1, &f2.reduce(m))?;
        let only1 = g1.to_dual();
        per_level.push([
            pp_on(&f, Ring::Dual(m))?,
            pp_on(&only1, Ring::Dual(m))?,
            pp_on(&only1, Ring::Base(m))?,
        ]);
    }
    let all = |i: usize| per_level.iter().all(|l| l[i]);
    let any = |i: usize| per_level.iter().any(|l| l[i]);
    let fp = f1.reduce(p);
    let pp_p = FuncTable::of_poly(&fp, Ring::Base(p))?.is_bijection();
    let d = fp.derive();
    let s5 = pp_p && (0..p).all(|a| d.eval_raw(a) != 0);
    let s7 = per_level.iter().skip(1).any(|l| l[2]);
    Ok(EquivalenceReport {
        p,
        n_max,
        statements: [all(0), any(0), all(1), any(1), s5, all(2), s7],
        pp_on_residue_field: pp_p,
        per_level,
    })
}

/// Result of scanning `Z_{p^n}[α]` for the filtration condition
/// `w(a) + w(b) >= min(K, w(ab))`, where `K = n + 1` is the nilpotency of
/// the maximal ideal `M = (p, α)` and `w(a) = max{k <= K : a ∈ M^k}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Suitability {
    pub suitable: bool,
    /// The first violating pair in canonical index order.
    pub counterexample: Option<(DualNum, DualNum)>,
}

/// The pair scan is quadratic in the ring size.
pub const MAX_SUITABILITY_PAIRS: u128 = 100_000_000;

/// Membership tables for the powers `M^0 ⊇ M^1 ⊇ … ⊇ M^K` of the maximal
/// ideal of `Z_{p^n}[α]`, built as additive closures of their generators.
struct Filtration {
    m: u64,
    levels: Vec<Vec<bool>>,
}

impl Filtration {
    fn new(p: u64, n: u32) -> Self {
        let m = p.pow(n);
        let size = (m * m) as usize;
        let k_max = n as usize + 1;
        let alpha = DualNum::alpha(m);
        let mut levels = Vec::with_capacity(k_max + 1);
        for k in 0..=k_max {
            // The ideal generated by p^i·α^{k-i} is the additive span of
            // each generator and its α multiple.
            let mut gens = Vec::new();
            for i in 0..=k {
                let mut g = DualNum::new(p.pow(i.min(n as usize) as u32) % m, 0, m);
                for _ in 0..k - i {
                    g = g * alpha;
                }
                gens.push(g);
                gens.push(g * alpha);
            }
            let mut member = alloc::vec![false; size];
            let mut stack = alloc::vec![DualNum::zero(m)];
            member[0] = true;
            while let Some(x) = stack.pop() {
                for &g in &gens {
                    let y = x + g;
                    if !core::mem::replace(&mut member[y.index()], true) {
                        stack.push(y);
                    }
                }
            }
            levels.push(member);
        }
        Filtration { m, levels }
    }

    fn weight(&self, a: DualNum) -> usize {
        (0..self.levels.len()).rev().find(|&k| self.levels[k][a.index()]).expect("M^0 is everything")
    }

    fn top(&self) -> usize {
        self.levels.len() - 1
    }
}

/// Exhaustive check of the filtration condition on `Z_{p^n}[α]`; holds iff
/// `n = 1`.
pub fn is_suitable(p: u64, n: u32) -> Result<Suitability> {
    let m = Modulus::prime_power(p, n)?.value();
    let size = Ring::Dual(m).size();
    if size * size > MAX_SUITABILITY_PAIRS {
        return Err(Error::SearchSpaceTooLarge { size: size * size, limit: MAX_SUITABILITY_PAIRS });
    }
    let fil = Filtration::new(p, n);
    let weights: Vec<usize> = (0..size as usize).map(|i| fil.weight(DualNum::from_index(i, fil.m))).collect();
    let top = fil.top();
    for i in 0..size as usize {
        for j in 0..size as usize {
            let (a, b) = (DualNum::from_index(i, m), DualNum::from_index(j, m));
            let wab = weights[(a * b).index()];
            if weights[i] + weights[j] < top.min(wab) {
                return Ok(Suitability { suitable: false, counterexample: Some((a, b)) });
            }
        }
    }
    Ok(Suitability { suitable: true, counterexample: None })
}

/// Whether the single pair `(a, b)` violates the filtration condition.
pub fn violates_filtration(p: u64, n: u32, a: DualNum, b: DualNum) -> Result<bool> {
    let m = Modulus::prime_power(p, n)?.value();
    if a.modulus() != m || b.modulus() != m {
        return Err(Error::ModulusMismatch { left: m, right: a.modulus() });
    }
    let fil = Filtration::new(p, n);
    Ok(fil.weight(a) + fil.weight(b) < fil.top().min(fil.weight(a * b)))
}
