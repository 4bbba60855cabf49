use dualfunc_core::census::{enumerate_polyfuncs, formula, FuncTable, DEFAULT_MAX_SPACE};
use dualfunc_core::null::null_polys_blocks;
use dualfunc_core::{DualPoly, Poly, Ring};
use num_bigint::BigUint;
use proptest::prelude::*;

fn poly(m: u64, len: usize) -> impl Strategy<Value = Poly> {
    proptest::collection::vec(0..m, 0..len).prop_map(move |v| Poly::new(v, m))
}

fn same_on_base(f: &Poly, g: &Poly, m: u64) -> bool {
    FuncTable::of_poly(f, Ring::Base(m)).unwrap() == FuncTable::of_poly(g, Ring::Base(m)).unwrap()
}

/// `f` and `g` agree on `Z_m[α]` exactly when `f1`, `f1'` and `f2` agree
/// with their counterparts on `Z_m`.
fn three_way(f1: &Poly, f2: &Poly, g1: &Poly, g2: &Poly, m: u64) -> Result<(), TestCaseError> {
    let f = DualPoly::from_parts(f1, f2).unwrap();
    let g = DualPoly::from_parts(g1, g2).unwrap();
    let on_dual = FuncTable::of_dual(&f).unwrap() == FuncTable::of_dual(&g).unwrap();
    let parts =
        same_on_base(f1, g1, m) && same_on_base(&f1.derive(), &g1.derive(), m) && same_on_base(f2, g2, m);
    prop_assert_eq!(on_dual, parts);
    Ok(())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(2000))]

    #[test]
    fn three_way_criterion_random(f1 in poly(4, 8), f2 in poly(4, 6), g1 in poly(4, 8), g2 in poly(4, 6)) {
        three_way(&f1, &f2, &g1, &g2, 4)?;
    }

    // Random pairs almost never agree, so also perturb by null polynomials:
    // adding h with h and h' null keeps the function, h alone need not.
    #[test]
    fn three_way_criterion_near_misses(
        f1 in poly(4, 8),
        f2 in poly(4, 6),
        i in 0usize..64,
        j in 0usize..64,
    ) {
        let nulls = null_polys_blocks(2, 2, 3).unwrap();
        let g1 = f1.add(&nulls[i % nulls.len()]).unwrap();
        let g2 = f2.add(&nulls[j % nulls.len()]).unwrap();
        three_way(&f1, &f2, &g1, &g2, 4)?;
    }
}

#[test]
fn permutation_ratio_on_counted_rings() {
    for (ring, q) in [(Ring::Base(4), 2u64), (Ring::Dual(4), 2), (Ring::Base(9), 3), (Ring::Dual(3), 3)] {
        let counts = enumerate_polyfuncs(ring, DEFAULT_MAX_SPACE).unwrap();
        assert!(formula::permutation_ratio_holds(q, &counts.permutations, &counts.functions), "{ring}");
        // 8/64 and 2048/16384 both reduce to 2/16.
        if q == 2 {
            assert_eq!(&counts.functions / &counts.permutations, BigUint::from(8u32));
        }
    }
}
