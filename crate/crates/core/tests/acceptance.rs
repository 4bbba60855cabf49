//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! nonzero if any fails.

use std::time::{Duration, Instant};

use dualfunc_core::census::canonical::for_each_canonical_dual;
use dualfunc_core::census::{
    canonical_dual, census, enumerate_polyfuncs, enumerate_stabilizer, enumerate_tables, formula,
    identity_checks, summarize, CensusMode, FuncTable, Quantities, Quantity, SearchSpace, DEFAULT_MAX_SPACE,
};
use dualfunc_core::null::{dual_null_block_criterion, is_null_bruteforce, is_null_zpn};
use dualfunc_core::odometer::for_each_digits;
use dualfunc_core::perm::{equivalence_battery, is_pp_bruteforce, is_pp_bruteforce_dual, is_pp_dual};
use dualfunc_core::ring::primes_in;
use dualfunc_core::{BlockExpansion, DualPoly, Poly, Ring, ZPoly};
use num_bigint::BigUint;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn big(v: u64) -> BigUint {
    BigUint::from(v)
}

fn expect_eq<T: PartialEq + std::fmt::Debug>(what: &str, got: T, want: T) -> Result<(), String> {
    if got == want {
        Ok(())
    } else {
        Err(format!("{what}: got {got:?}, expected {want:?}"))
    }
}

fn within(what: &str, t: Duration, limit: Duration) -> Result<(), String> {
    if t <= limit {
        Ok(())
    } else {
        Err(format!("{what} took {t:?}, over {limit:?}"))
    }
}

fn err<E: std::fmt::Debug>(e: E) -> String {
    format!("{e:?}")
}

/// Random polynomial on `Z_m` with fewer than `len` coefficients.
fn random_poly(rng: &mut ChaCha8Rng, m: u64, len: usize) -> Poly {
    let k = rng.gen_range(0..len);
    Poly::new((0..k).map(|_| rng.gen_range(0..m)).collect(), m)
}

/// Random expansion in `x^j (x^p - x)^k`, `k < blocks`, whose coefficients
/// are weighted towards the divisibility thresholds of the null criteria,
/// so that null and non-null cases both occur often.
fn biased_poly(rng: &mut ChaCha8Rng, p: u64, n: u32, blocks: usize) -> Poly {
    let m = p.pow(n);
    let h = Poly::frobenius_base(p as usize, m);
    let mut bs = Vec::with_capacity(blocks);
    for k in 0..blocks as u32 {
        let coeffs = (0..p)
            .map(|_| {
                let e = match rng.gen_range(0..10) {
                    0 => 0,
                    1..=4 => n.saturating_sub(k),
                    _ => (n + 1).saturating_sub(k).min(n),
                };
                rng.gen_range(0..m) / p.pow(e) * p.pow(e) % m
            })
            .collect();
        bs.push(Poly::new(coeffs, m));
    }
    BlockExpansion::from_blocks(h, bs).expect("blocks below the base degree").reassemble()
}

fn ac1() -> Outcome {
    let start = Instant::now();
    let space = SearchSpace::new(Ring::Dual(4), 6, 4).map_err(err)?;
    let e = summarize(&enumerate_tables(&space, DEFAULT_MAX_SPACE).map_err(err)?);
    let t = start.elapsed();
    expect_eq("functions", e.functions.clone(), big(16384))?;
    expect_eq("permutations", e.permutations.clone(), big(2048))?;
    expect_eq("function formula", formula::count_functions_dual(2, 2).map_err(err)?, Some(big(16384)))?;
    expect_eq("permutation formula", formula::count_perms_dual(2, 2).map_err(err)?, Some(big(2048)))?;
    within("enumeration", t, Duration::from_secs(60))?;
    Ok(format!("F = {}, P = {} over 4^10 polynomials in {t:.2?}", e.functions, e.permutations))
}

fn ac2() -> Outcome {
    let s = enumerate_stabilizer(2, 2).map_err(err)?;
    expect_eq("stabilizer order", s.count(), big(4))?;
    expect_eq("formula", formula::count_stabilizer(2, 2).map_err(err)?, Some(big(4)))?;
    let orders = s.element_orders();
    if orders.iter().any(|&o| o > 2) {
        return Err(format!("element orders {orders:?}"));
    }
    if !s.fixes_base_ring() || !s.is_closed() {
        return Err("not a pointwise stabilizer subgroup".into());
    }
    Ok(format!("|St| = 4, element orders {orders:?}"))
}

fn ac3() -> Outcome {
    let start = Instant::now();
    let mut notes = Vec::new();
    for (q, f, pp) in [(2u64, 64u64, 8u64), (3, 19683, 1296)] {
        let e = enumerate_polyfuncs(Ring::Dual(q), DEFAULT_MAX_SPACE).map_err(err)?;
        expect_eq(&format!("F(F_{q}[α])"), e.functions.clone(), big(f))?;
        expect_eq(&format!("P(F_{q}[α])"), e.permutations.clone(), big(pp))?;
        expect_eq("function formula", formula::count_functions_field_dual(q), big(f))?;
        expect_eq("permutation formula", formula::count_perms_field_dual(q), big(pp))?;
        notes.push(format!("q={q}: {f}/{pp}"));
    }
    let s = enumerate_stabilizer(3, 1).map_err(err)?;
    expect_eq("St(F_3)", s.count(), big(8))?;
    expect_eq("stabilizer formula", formula::count_stabilizer_field(3), big(8))?;
    within("field census", start.elapsed(), Duration::from_secs(120))?;
    Ok(format!("{}, |St(F_3)| = 8", notes.join(", ")))
}

fn ac4() -> Outcome {
    for (p, n, f, pp) in [(2u64, 2u32, 64u64, 8u64), (3, 2, 19683, 1296)] {
        let m = p.pow(n);
        let e = enumerate_polyfuncs(Ring::Base(m), DEFAULT_MAX_SPACE).map_err(err)?;
        expect_eq(&format!("F(Z_{m})"), e.functions, big(f))?;
        expect_eq(&format!("P(Z_{m})"), e.permutations, big(pp))?;
        expect_eq("function formula", formula::count_functions_zpn(p, n).map_err(err)?, big(f))?;
        expect_eq("permutation formula", formula::count_perms_zpn(p, n).map_err(err)?, big(pp))?;
    }
    Ok("Z_4: 64/8, Z_9: 19683/1296".into())
}

fn ac5() -> Outcome {
    let mut checked = 0usize;
    for (p, n) in [(2u64, 1u32), (3, 1), (2, 2), (3, 2)] {
        let r = census(p, n, CensusMode::Count, DEFAULT_MAX_SPACE).map_err(err)?;
        if !r.all_match() {
            return Err(format!("counted and predicted disagree at ({p}, {n})"));
        }
        for c in &r.identities {
            if c.holds == Some(false) {
                return Err(format!("{} fails on counts at ({p}, {n})", c.name));
            }
            checked += c.holds.is_some() as usize;
        }
    }
    // The counts enumerated by the criteria above, checked directly.
    let mut q = Quantities::new();
    q.insert(Quantity::FBase, big(64));
    q.insert(Quantity::PBase, big(8));
    q.insert(Quantity::FCount, big(16384));
    q.insert(Quantity::PCount, big(2048));
    q.insert(Quantity::StabCount, big(4));
    q.insert(Quantity::PairCountB, big(32));
    for c in identity_checks(2, 2, &q) {
        if c.name.contains("derivative_pairs") || c.name.contains("Nprime") {
            continue;
        }
        if c.holds != Some(true) {
            return Err(format!("{} on the (2, 2) counts: {:?}", c.name, c.holds));
        }
        checked += 1;
    }
    let mut formula_level = 0usize;
    for p in primes_in(2, 13) {
        for n in 1..=p as u32 {
            let q = dualfunc_core::census::formula_suite(p, n).map_err(err)?;
            for c in identity_checks(p, n, &q) {
                match c.holds {
                    Some(true) => formula_level += 1,
                    Some(false) => return Err(format!("{} fails at ({p}, {n})", c.name)),
                    None => {}
                }
            }
        }
    }
    Ok(format!("{checked} identities on counts, {formula_level} at formula level"))
}

fn ac6() -> Outcome {
    let mut mismatches = 0usize;
    let mut nulls = (0usize, 0usize);
    for_each_digits(&[4; 6], |d| {
        let f = Poly::new(d.to_vec(), 4);
        let on_r = is_null_bruteforce(&f, Ring::Base(4)).unwrap().holds;
        let on_dual = is_null_bruteforce(&f, Ring::Dual(4)).unwrap().holds;
        let both = on_r && is_null_bruteforce(&f.derive(), Ring::Base(4)).unwrap().holds;
        let lifted = f.lift();
        mismatches += (is_null_zpn(&lifted, 2, 2).unwrap() != on_r) as usize;
        let block = dual_null_block_criterion(&lifted, 2, 2).unwrap();
        mismatches += (block != both) as usize + (block != on_dual) as usize;
        nulls.0 += on_r as usize;
        nulls.1 += on_dual as usize;
    });
    expect_eq("mod-4 mismatches", mismatches, 0)?;
    let mut rng = ChaCha8Rng::seed_from_u64(0xac6);
    let trials = 12_000;
    let mut hits = (0usize, 0usize);
    for i in 0..trials {
        let f = if i % 4 == 0 { random_poly(&mut rng, 9, 9) } else { biased_poly(&mut rng, 3, 2, 3) };
        if f.degree().is_some_and(|d| d >= 9) {
            return Err(format!("generated degree too large: {f}"));
        }
        let on_r = is_null_bruteforce(&f, Ring::Base(9)).map_err(err)?.holds;
        let on_dual = is_null_bruteforce(&f, Ring::Dual(9)).map_err(err)?.holds;
        let lifted = f.lift();
        if is_null_zpn(&lifted, 3, 2).map_err(err)? != on_r {
            return Err(format!("null criterion disagrees on {f}"));
        }
        if dual_null_block_criterion(&lifted, 3, 2).map_err(err)? != on_dual {
            return Err(format!("block criterion disagrees on {f}"));
        }
        hits.0 += on_r as usize;
        hits.1 += on_dual as usize;
    }
    Ok(format!(
        "4096 mod 4 ({} / {} null), {trials} random mod 9 ({} / {} null); 0 mismatches",
        nulls.0, nulls.1, hits.0, hits.1
    ))
}

fn ac7() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0xac7);
    let mut total = 0usize;
    for p in [2u64, 3, 5] {
        for _ in 0..4000 {
            let n = rng.gen_range(1..=3u32);
            let m = p.pow(n);
            let f = random_poly(&mut rng, m, 6 * p as usize);
            let h = Poly::frobenius_base(p as usize, m);
            let e = f.expand_base(&h).map_err(err)?;
            let fast = e.derivative_blocks().map_err(err)?;
            let direct = f.derive().expand_base(&h).map_err(err)?;
            if fast != direct {
                return Err(format!("recurrence mismatch for {f} mod {m}"));
            }
            total += 1;
        }
    }
    Ok(format!("{total} random polynomials, 0 mismatches"))
}

fn ac8() -> Outcome {
    let mut tables = std::collections::HashSet::new();
    let mut count = 0usize;
    for_each_canonical_dual(2, 2, &mut |f| {
        tables.insert(FuncTable::of_dual(f).unwrap());
        count += 1;
    })
    .map_err(err)?;
    expect_eq("canonical forms", count, 1 << 14)?;
    expect_eq("distinct functions", tables.len(), 1 << 14)?;
    let mut rng = ChaCha8Rng::seed_from_u64(0xac8);
    let mut checks = 0usize;
    for (p, n, trials) in [(2u64, 2u32, 10_000usize), (3, 2, 2_000)] {
        let m = p.pow(n);
        for _ in 0..trials {
            let f1 = random_poly(&mut rng, m, 16);
            let f2 = random_poly(&mut rng, m, 12);
            let f = DualPoly::from_parts(&f1, &f2).map_err(err)?;
            let rep = canonical_dual(&f, p, n).map_err(err)?;
            let g = rep.to_dual_poly();
            if !rep.in_range()
                || FuncTable::of_dual(&g).map_err(err)? != FuncTable::of_dual(&f).map_err(err)?
            {
                return Err(format!("canonical form of {f} mod {m} changes the function"));
            }
            if canonical_dual(&g, p, n).map_err(err)? != rep {
                return Err(format!("canonical form of {f} mod {m} is not idempotent"));
            }
            checks += 1;
        }
    }
    Ok(format!("2^14 forms pairwise distinct, {checks} random forms preserve the function"))
}

fn ac9() -> Outcome {
    for p in [2u64, 3, 5] {
        let f1 = ZPoly::new({
            let mut v = vec![0i128; p as usize + 1];
            v[p as usize] = p as i128 - 1;
            v
        });
        let on_field = is_pp_bruteforce(&f1.reduce(p), Ring::Base(p)).map_err(err)?.is_pp;
        let dual = f1.reduce(p).to_dual();
        let on_dual = is_pp_dual(&dual).map_err(err)?.is_pp;
        let brute = is_pp_bruteforce_dual(&dual).map_err(err)?.is_pp;
        if !on_field || on_dual || brute {
            return Err(format!("(p-1)x^p at p = {p}: field {on_field}, dual {on_dual}, brute {brute}"));
        }
        for g1 in [f1.clone(), ZPoly::x(), ZPoly::new(vec![0, 1, 0, 1])] {
            let r = equivalence_battery(&g1, &ZPoly::new(vec![1]), p, 2).map_err(err)?;
            if !r.consistent() {
                return Err(format!("battery inconsistent for {g1} at p = {p}: {:?}", r.statements));
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0xac9);
    for (p, n) in [(2u64, 2u32), (3, 2)] {
        let m = p.pow(n);
        let mut made = 0;
        while made < 100 {
            let g = biased_poly(&mut rng, p, n, n as usize + 2);
            if !is_null_bruteforce(&g, Ring::Base(m)).map_err(err)?.holds {
                continue;
            }
            made += 1;
            let f = Poly::x(m).add(&g).map_err(err)?;
            let f2 = random_poly(&mut rng, m, 6);
            let f = DualPoly::from_parts(&f, &f2).map_err(err)?;
            if !is_pp_dual(&f).map_err(err)?.is_pp || !is_pp_bruteforce_dual(&f).map_err(err)?.is_pp {
                return Err(format!("x + {g} does not permute Z_{m}[α]"));
            }
        }
    }
    Ok("(p-1)x^p separates for p = 2, 3, 5; 200 maps x + g permute".into())
}

fn main() {
    let criteria: [Criterion; 9] = [
        ("dual census at (2, 2)", ac1),
        ("stabilizer at (2, 2)", ac2),
        ("field cases", ac3),
        ("base ring counts", ac4),
        ("structural identities", ac5),
        ("null criteria", ac6),
        ("derivative recurrence", ac7),
        ("canonical forms at (2, 2)", ac8),
        ("equivalence battery", ac9),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = std::panic::catch_unwind(run).unwrap_or_else(|_| Err("panicked".into()));
        let t = start.elapsed();
        match outcome {
            Ok(detail) => println!("AC{} PASS  {name}: {detail} [{t:.2?}]", i + 1),
            Err(why) => {
                failed += 1;
                println!("AC{} FAIL  {name}: {why} [{t:.2?}]", i + 1);
            }
        }
    }
    if failed > 0 {
        std::process::exit(1);
    }
}
