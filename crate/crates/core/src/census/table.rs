//! Value tables of induced functions.

use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::poly::{DualPoly, Poly};
use crate::ring::{add_mod, mul_mod, Ring};

/// The function induced on a finite ring, as the list of image indices in
/// canonical element order (`a + m·b` for `a + bα`).
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FuncTable {
    ring: Ring,
    values: Vec<u32>,
}

impl FuncTable {
    pub fn from_values(ring: Ring, values: Vec<u32>) -> Result<Self> {
        let size = ring.check_enumerable()?;
        if values.len() != size || values.iter().any(|&v| v as usize >= size) {
            return Err(Error::InvalidArgument("table does not match the ring"));
        }
        Ok(FuncTable { ring, values })
    }

    /// The caller guarantees the values are valid indices.
    pub(crate) fn from_raw(ring: Ring, values: Vec<u32>) -> Self {
        debug_assert_eq!(values.len() as u128, ring.size());
        FuncTable { ring, values }
    }

    pub fn identity(ring: Ring) -> Result<Self> {
        let size = ring.check_enumerable()?;
        Ok(FuncTable { ring, values: (0..size as u32).collect() })
    }

    /// `[f]` on `Z_m` or on `Z_m[α]` for `f ∈ Z_m[x]`.
    pub fn of_poly(f: &Poly, ring: Ring) -> Result<Self> {
        let size = ring.check_enumerable()?;
        let m = ring.modulus();
        if f.modulus() != m {
            return Err(Error::ModulusMismatch { left: m, right: f.modulus() });
        }
        let base: Vec<u64> = (0..m).map(|a| f.eval_raw(a)).collect();
        let values = match ring {
            Ring::Base(_) => base.iter().map(|&v| v as u32).collect(),
            Ring::Dual(_) => {
                let d = f.derive();
                let slope: Vec<u64> = (0..m).map(|a| d.eval_raw(a)).collect();
                let mut v = Vec::with_capacity(size);
                for b in 0..m {
                    for a in 0..m as usize {
                        let eps = mul_mod(b, slope[a], m);
                        v.push((base[a] + m * eps) as u32);
                    }
                }
                v
            }
        };
        Ok(FuncTable { ring, values })
    }

    /// `[f]` on `Z_m[α]` for `f ∈ Z_m[α][x]`.
    pub fn of_dual(f: &DualPoly) -> Result<Self> {
        let m = f.modulus();
        let ring = Ring::Dual(m);
        let size = ring.check_enumerable()?;
        let (f1, f2) = f.split();
        let d = f1.derive();
        let re: Vec<u64> = (0..m).map(|a| f1.eval_raw(a)).collect();
        let slope: Vec<u64> = (0..m).map(|a| d.eval_raw(a)).collect();
        let shift: Vec<u64> = (0..m).map(|a| f2.eval_raw(a)).collect();
        let mut v = Vec::with_capacity(size);
        for b in 0..m {
            for a in 0..m as usize {
                let eps = add_mod(mul_mod(b, slope[a], m), shift[a], m);
                v.push((re[a] + m * eps) as u32);
            }
        }
        Ok(FuncTable { ring, values: v })
    }

    pub fn ring(&self) -> Ring {
        self.ring
    }

    pub fn values(&self) -> &[u32] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Smallest index whose image repeats the image of an earlier index.
    pub fn first_collision(&self) -> Option<usize> {
        let mut seen = alloc::vec![false; self.values.len()];
        for (i, &v) in self.values.iter().enumerate() {
            if core::mem::replace(&mut seen[v as usize], true) {
                return Some(i);
            }
        }
        None
    }

    pub fn is_bijection(&self) -> bool {
        self.first_collision().is_none()
    }

    pub fn is_identity(&self) -> bool {
        self.values.iter().enumerate().all(|(i, &v)| i == v as usize)
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(|&v| v == 0)
    }

    /// `x ↦ self(inner(x))`.
    pub fn compose(&self, inner: &FuncTable) -> Result<FuncTable> {
        if self.ring != inner.ring {
            return Err(Error::ModulusMismatch { left: self.ring.modulus(), right: inner.ring.modulus() });
        }
        let values = inner.values.iter().map(|&v| self.values[v as usize]).collect();
        Ok(FuncTable { ring: self.ring, values })
    }

    /// Order in the symmetric group; `None` if the table is not a bijection.
    pub fn order(&self) -> Option<usize> {
        if !self.is_bijection() {
            return None;
        }
        let mut power = self.clone();
        let mut k = 1;
        while !power.is_identity() {
            power = power.compose(self).expect("same ring");
            k += 1;
        }
        Some(k)
    }
}

/// `[f]` on the given ring.
pub fn func_table(f: &Poly, ring: Ring) -> Result<FuncTable> {
    FuncTable::of_poly(f, ring)
}

/// `[f]` on `Z_m[α]`.
pub fn func_table_dual(f: &DualPoly) -> Result<FuncTable> {
    FuncTable::of_dual(f)
}
