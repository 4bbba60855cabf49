//! Exhaustive enumeration of induced functions.
//!
//! A polynomial's value table is linear in its coefficients, so the tables
//! of all polynomials in a coefficient box are produced as running sums of
//! the tables of the monomials `x^j` and `α·x^j`, one digit at a time.

use alloc::vec::Vec;

use hashbrown::HashSet;
use num_bigint::BigUint;

use crate::census::table::FuncTable;
use crate::error::{Error, Result};
use crate::null::mu;
use crate::odometer::{for_each_digits, space_size};
use crate::poly::{DualPoly, Poly};
use crate::ring::{Modulus, Ring};

/// Default cap on the number of polynomials an enumeration may visit.
pub const DEFAULT_MAX_SPACE: u128 = 10_000_000;

pub type TableSet = HashSet<FuncTable>;

/// All `f1 + α·f2` with `deg f1 < d1`, `deg f2 < d2` and coefficients in
/// `[0, m)`. On a base ring only `f1` is used and `d2` must be zero.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchSpace {
    ring: Ring,
    d1: usize,
    d2: usize,
}

impl SearchSpace {
    pub fn new(ring: Ring, d1: usize, d2: usize) -> Result<Self> {
        ring.check_enumerable()?;
        if !ring.is_dual() && d2 != 0 {
            return Err(Error::InvalidArgument("a base ring has no α coefficients"));
        }
        Ok(SearchSpace { ring, d1, d2 })
    }

    /// Degree bounds that reach every function. On `Z_m` these are
    /// `μ(m)`; on `Z_m[α]` they are `d1 = p·min(n+1, p)` for `m = p^n` with
    /// `n <= p` and `2μ(m)` otherwise, and `d2 = μ(m)`.
    pub fn default_for(ring: Ring) -> Result<Self> {
        let m = ring.modulus();
        let modulus = Modulus::new(m)?;
        let k = mu(m) as usize;
        match ring {
            Ring::Base(_) => Self::new(ring, k, 0),
            Ring::Dual(_) => {
                let d1 = match modulus.as_prime_power() {
                    Some((p, n)) if n as u64 <= p => p as usize * (n as usize + 1).min(p as usize),
                    _ => 2 * k,
                };
                Self::new(ring, d1, k)
            }
        }
    }

    pub fn ring(&self) -> Ring {
        self.ring
    }

    pub fn d1(&self) -> usize {
        self.d1
    }

    pub fn d2(&self) -> usize {
        self.d2
    }

    fn levels(&self) -> usize {
        self.d1 + self.d2
    }

    /// Number of polynomials in the box (saturating).
    pub fn size(&self) -> u128 {
        let m = self.ring.modulus();
        space_size(&alloc::vec![m; self.levels()]).unwrap_or(u128::MAX)
    }

    /// Leading digits needed to split the space into `shards` parts.
    fn prefix_depth(&self, shards: usize) -> usize {
        let m = self.ring.modulus() as u128;
        let mut depth = 0;
        let mut reach = 1u128;
        while reach < shards as u128 && depth < self.levels() {
            reach *= m;
            depth += 1;
        }
        depth
    }
}

/// Monomial tables, flattened into component vectors over `Z_m`. A base
/// table has one component per element; a dual table stores the real parts
/// of all images followed by their `α` parts.
struct Basis {
    ring: Ring,
    m: u32,
    gens: Vec<Vec<u32>>,
}

impl Basis {
    fn new(space: &SearchSpace) -> Basis {
        let ring = space.ring;
        let m = ring.modulus();
        let size = ring.size() as usize;
        let mut gens = Vec::with_capacity(space.levels());
        let flatten = |t: &FuncTable| -> Vec<u32> {
            match ring {
                Ring::Base(_) => t.values().to_vec(),
                Ring::Dual(_) => {
                    let mut v = alloc::vec![0u32; 2 * size];
                    for (i, &x) in t.values().iter().enumerate() {
                        v[i] = x % m as u32;
                        v[size + i] = x / m as u32;
                    }
                    v
                }
            }
        };
        for j in 0..space.d1 {
            let t = FuncTable::of_poly(&Poly::monomial(1, j, m), ring).expect("enumerable");
            gens.push(flatten(&t));
        }
        for j in 0..space.d2 {
            let f = DualPoly::from_parts(&Poly::zero(m), &Poly::monomial(1, j, m)).expect("same");
            gens.push(flatten(&FuncTable::of_dual(&f).expect("enumerable")));
        }
        Basis { ring, m: m as u32, gens }
    }

    fn add_into(&self, acc: &mut [u32], level: usize, times: u64) {
        let m = self.m as u64;
        let t = times % m;
        for (a, &g) in acc.iter_mut().zip(&self.gens[level]) {
            *a = ((*a as u64 + g as u64 * t) % m) as u32;
        }
    }

    fn step(&self, acc: &mut [u32], level: usize) {
        let m = self.m;
        for (a, &g) in acc.iter_mut().zip(&self.gens[level]) {
            let s = *a + g;
            *a = if s >= m { s - m } else { s };
        }
    }

    fn table(&self, acc: &[u32]) -> FuncTable {
        let values = match self.ring {
            Ring::Base(_) => acc.to_vec(),
            Ring::Dual(_) => {
                let size = acc.len() / 2;
                (0..size).map(|i| acc[i] + self.m * acc[size + i]).collect()
            }
        };
        FuncTable::from_raw(self.ring, values)
    }

    fn components(&self) -> usize {
        match self.ring {
            Ring::Base(_) => self.ring.size() as usize,
            Ring::Dual(_) => 2 * self.ring.size() as usize,
        }
    }

    /// Visits every table reachable from `acc` by choosing the digits at
    /// `level..`.
    fn walk(&self, level: usize, acc: &[u32], visit: &mut dyn FnMut(FuncTable)) {
        if level == self.gens.len() {
            visit(self.table(acc));
            return;
        }
        let mut cur = acc.to_vec();
        for c in 0..self.m {
            if c > 0 {
                self.step(&mut cur, level);
            }
            self.walk(level + 1, &cur, visit);
        }
    }
}

fn guard(space: &SearchSpace, max_space: u128) -> Result<()> {
    let size = space.size();
    if size > max_space {
        return Err(Error::SearchSpaceTooLarge { size, limit: max_space });
    }
    Ok(())
}

/// Visits the table of every polynomial whose leading-digit prefix index is
/// congruent to `shard` modulo `shards`. The union over all shards is the
/// full enumeration, whatever `shards` is.
pub fn for_each_table_shard(
    space: &SearchSpace,
    max_space: u128,
    shard: usize,
    shards: usize,
    visit: &mut dyn FnMut(FuncTable),
) -> Result<()> {
    if shards == 0 || shard >= shards {
        return Err(Error::InvalidArgument("shard index out of range"));
    }
    guard(space, max_space)?;
    let basis = Basis::new(space);
    let depth = space.prefix_depth(shards);
    let radices = alloc::vec![space.ring.modulus(); depth];
    let mut index = 0usize;
    for_each_digits(&radices, |prefix| {
        let mine = index % shards == shard;
        index += 1;
        if !mine {
            return;
        }
        let mut acc = alloc::vec![0u32; basis.components()];
        for (level, &c) in prefix.iter().enumerate() {
            basis.add_into(&mut acc, level, c);
        }
        basis.walk(depth, &acc, visit);
    });
    Ok(())
}

/// Distinct tables in one shard of the search space.
pub fn enumerate_tables_shard(
    space: &SearchSpace,
    max_space: u128,
    shard: usize,
    shards: usize,
) -> Result<TableSet> {
    let mut set = TableSet::new();
    for_each_table_shard(space, max_space, shard, shards, &mut |t| {
        set.insert(t);
    })?;
    Ok(set)
}

/// Distinct tables of every polynomial in the search space.
pub fn enumerate_tables(space: &SearchSpace, max_space: u128) -> Result<TableSet> {
    enumerate_tables_shard(space, max_space, 0, 1)
}

/// Counts of distinct functions and of the bijective ones among them.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Enumeration {
    pub functions: BigUint,
    pub permutations: BigUint,
}

pub fn summarize(tables: &TableSet) -> Enumeration {
    let perms = tables.iter().filter(|t| t.is_bijection()).count();
    Enumeration { functions: BigUint::from(tables.len()), permutations: BigUint::from(perms) }
}

/// `|F(ring)|` and `|P(ring)|` by enumeration with the default bounds.
pub fn enumerate_polyfuncs(ring: Ring, max_space: u128) -> Result<Enumeration> {
    let space = SearchSpace::default_for(ring)?;
    Ok(summarize(&enumerate_tables(&space, max_space)?))
}

/// `|P(ring)|` by enumeration with the default bounds.
pub fn enumerate_polyperms(ring: Ring, max_space: u128) -> Result<BigUint> {
    Ok(enumerate_polyfuncs(ring, max_space)?.permutations)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn count(ring: Ring) -> (u32, u32) {
        let e = enumerate_polyfuncs(ring, DEFAULT_MAX_SPACE).unwrap();
        (e.functions.try_into().unwrap(), e.permutations.try_into().unwrap())
    }

    #[test]
    fn small_rings() {
        assert_eq!(count(Ring::Base(4)), (64, 8));
        assert_eq!(count(Ring::Base(2)), (4, 2));
        assert_eq!(count(Ring::Base(6)), (4 * 27, 2 * 6));
        assert_eq!(count(Ring::Base(9)), (19683, 1296));
        assert_eq!(count(Ring::Dual(2)), (64, 8));
    }

    #[test]
    fn linear_sum_matches_direct_tables() {
        let space = SearchSpace::new(Ring::Dual(3), 3, 2).unwrap();
        let fast = enumerate_tables(&space, DEFAULT_MAX_SPACE).unwrap();
        let mut slow = TableSet::new();
        for_each_digits(&[3; 5], |d| {
            let f1 = Poly::new(d[..3].to_vec(), 3);
            let f2 = Poly::new(d[3..].to_vec(), 3);
            slow.insert(FuncTable::of_dual(&DualPoly::from_parts(&f1, &f2).unwrap()).unwrap());
        });
        assert_eq!(fast, slow);
    }

    #[test]
    fn shards_partition_the_space() {
        let space = SearchSpace::new(Ring::Dual(2), 5, 2).unwrap();
        let whole = enumerate_tables(&space, DEFAULT_MAX_SPACE).unwrap();
        for shards in [1usize, 2, 3, 5, 200] {
            let mut visited = 0u128;
            let mut union = TableSet::new();
            for s in 0..shards {
                for_each_table_shard(&space, DEFAULT_MAX_SPACE, s, shards, &mut |t| {
                    visited += 1;
                    union.insert(t);
                })
                .unwrap();
            }
            assert_eq!(visited, space.size());
            assert_eq!(union, whole);
        }
    }

    #[test]
    fn guard_trips() {
        let err = enumerate_polyfuncs(Ring::Dual(9), DEFAULT_MAX_SPACE).unwrap_err();
        assert!(matches!(err, Error::SearchSpaceTooLarge { .. }));
        assert!(SearchSpace::new(Ring::Base(4), 2, 1).is_err());
    }
}
