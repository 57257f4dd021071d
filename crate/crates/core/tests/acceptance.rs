//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any
//! failure.

mod common;

use std::collections::BTreeMap;
use std::process::ExitCode;
use std::time::Instant;

use itertools::Itertools;
use num_bigint::BigUint;
use rand::{Rng, SeedableRng};

use common::{brute_coprime_count, gf, nonzero_polys_up_to, sieve_irreducible_count};
use spreadbent_core::analysis::{rank_histogram, support_collisions, sweep, FunctionRecord};
use spreadbent_core::boolfun::{anf, is_bent, moebius_transform, walsh_transform};
use spreadbent_core::families::{
    bucket_families, build_bent, candidate_pool, desarguesian_spread, enumerate_families,
    enumerate_family_indices, verify_lemma2, FamilyBuckets,
};
use spreadbent_core::lrs_spread::{kernel_of, sylvester_resultant_nonzero, trivial_intersection};
use spreadbent_core::poly::{count_theorem3, gauss_count};
use spreadbent_core::rank2::{rank_gf2, BitMatrix};
use spreadbent_core::{FamilyRule, FamilySpec, Poly, SpreadType, TruthTable};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn check(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn records(l: u32, b: usize, t: SpreadType) -> Vec<FunctionRecord> {
    let pool = candidate_pool(gf(l), b, false).unwrap();
    let families = enumerate_families(&pool, t, FamilyRule::default()).unwrap();
    sweep(&families, 0).unwrap()
}

fn hist(pairs: &[(usize, usize)]) -> BTreeMap<usize, usize> {
    pairs.iter().copied().collect()
}

fn rank_distribution_b1() -> Outcome {
    let start = Instant::now();
    let recs = records(4, 1, SpreadType::Minus);
    let got = rank_histogram(&recs);
    let want = hist(&[(30, 270), (36, 2160), (40, 1080), (42, 9360)]);
    check(recs.len() == 12870 && got == want, || format!("{} functions, histogram {got:?}", recs.len()))?;
    Ok(format!("12870 functions, histogram {got:?} in {:.1?}", start.elapsed()))
}

fn rank_distribution_b2() -> Outcome {
    let minus = records(2, 2, SpreadType::Minus);
    let plus = records(2, 2, SpreadType::Plus);
    let (hm, hp) = (rank_histogram(&minus), rank_histogram(&plus));
    check(
        minus.len() == 174 && hm == hist(&[(36, 20), (40, 24), (42, 10), (44, 60), (46, 60)]),
        || format!("PS- {} functions {hm:?}", minus.len()),
    )?;
    check(plus.len() == 64 && hp == hist(&[(40, 45), (44, 19)]), || {
        format!("PS+ {} functions {hp:?}", plus.len())
    })?;
    Ok(format!("PS- 174 {hm:?}, PS+ 64 {hp:?}"))
}

fn golden_n4() -> Outcome {
    let spec = gf(1);
    let family = |polys: &[&[u32]], spread_type| FamilySpec {
        id: 0,
        spec,
        b: 2,
        spread_type,
        polys: polys.iter().map(|v| Poly::from_values(spec, v).unwrap()).collect(),
    };
    let printed = |bits: [u8; 16]| TruthTable::from_bits(&bits.map(|b| b == 1));
    let g = build_bent(&family(&[&[1, 0, 1], &[1, 1, 1]], SpreadType::Minus)).map_err(|e| e.to_string())?;
    let h = build_bent(&family(&[&[1, 0, 1], &[1, 1, 1], &[0, 0, 1]], SpreadType::Plus))
        .map_err(|e| e.to_string())?;
    check(g == printed([0, 0, 0, 0, 0, 1, 1, 0, 0, 0, 1, 1, 0, 1, 0, 1]), || format!("g = {g}"))?;
    check(h == printed([1, 1, 1, 1, 0, 1, 1, 0, 0, 0, 1, 1, 0, 1, 0, 1]), || format!("h = {h}"))?;
    let (ag, ah) = (anf(&g).to_string(), anf(&h).to_string());
    check(ag == "x1x3 + x2x3 + x2x4", || format!("ANF(g) = {ag}"))?;
    check(ah == "x1x2 + x1x3 + x2x3 + x2x4 + x1 + x2 + 1", || format!("ANF(h) = {ah}"))?;
    Ok(format!("g {g} = {ag}; h {h} = {ah}"))
}

fn triangle() -> Outcome {
    let mut pairs = 0;
    for (l, max_degree) in [(1, 3), (2, 2)] {
        let polys = nonzero_polys_up_to(gf(l), max_degree);
        for (i, f) in polys.iter().enumerate() {
            for g in &polys[i..] {
                let b = f.degree().unwrap().max(g.degree().unwrap());
                if b == 0 {
                    continue;
                }
                let gcd_one = f.gcd(g).unwrap().is_one();
                let sylvester = sylvester_resultant_nonzero(f, g, b).unwrap();
                let disjoint =
                    trivial_intersection(&kernel_of(f, b).unwrap(), &kernel_of(g, b).unwrap()).unwrap();
                check(gcd_one == sylvester && sylvester == disjoint, || {
                    format!("{f} {g} b={b}: gcd1={gcd_one} sylvester={sylvester} disjoint={disjoint}")
                })?;
                pairs += 1;
            }
        }
    }
    Ok(format!("{pairs} pairs agree"))
}

fn counting() -> Outcome {
    for l in [1, 2] {
        for k in 1..=4 {
            let (g, s) = (gauss_count(gf(l), k), sieve_irreducible_count(gf(l), k));
            check(g == s, || format!("gauss_count q={} k={k}: {g} vs sieve {s}", 1 << l))?;
        }
    }
    let mut lines = Vec::new();
    for (l, b, m, expected) in [(1u32, 2usize, 2usize, 1u32), (2, 2, 4, 12)] {
        let closed = count_theorem3(gf(l), b, m).unwrap();
        let polys: Vec<Poly> = spreadbent_core::poly::monic_polys(gf(l), b)
            .filter(|p| !p.coeff(0).is_zero())
            .collect();
        let listed = polys
            .into_iter()
            .combinations(1 << (m - 1))
            .filter(|c| spreadbent_core::poly::pairwise_coprime(c).unwrap())
            .count();
        let brute = brute_coprime_count(gf(l), b, 1 << (m - 1));
        check(
            closed == BigUint::from(expected) && listed as u128 == brute && brute == expected as u128,
            || format!("q={} b={b} m={m}: closed {closed}, subsets {listed}, brute {brute}", 1 << l),
        )?;
        lines.push(format!("q={} m={m}: {closed}", 1 << l));
    }
    let pool = candidate_pool(gf(2), 2, false).unwrap();
    let minus = bucket_families(&pool, &enumerate_family_indices(&pool, 8, FamilyRule::default()).unwrap());
    let plus = bucket_families(&pool, &enumerate_family_indices(&pool, 9, FamilyRule::default()).unwrap());
    check(
        minus == FamilyBuckets { without_products: 165, product_with_square: 3, product_without_square: 6 },
        || format!("PS- buckets {minus:?}"),
    )?;
    check(
        plus == FamilyBuckets { without_products: 55, product_with_square: 6, product_without_square: 3 },
        || format!("PS+ buckets {plus:?}"),
    )?;
    Ok(format!("gauss counts ok; closed-form counts {}; 174 = 165+3+6, 64 = 55+3+6", lines.join(", ")))
}

fn universal_properties(recs: &[FunctionRecord], m: usize, plus: bool) -> Result<(), String> {
    let n = 2 * m;
    let weight = if plus { (1 << (n - 1)) + (1 << (m - 1)) } else { (1 << (n - 1)) - (1 << (m - 1)) };
    for r in recs {
        let ctx = || format!("n={n} {} family {}", r.spread_type, r.family_id);
        check(is_bent(&r.tt).unwrap(), || format!("{}: not bent", ctx()))?;
        check(walsh_transform(&r.tt).parseval_sum() == 1 << (2 * n), || format!("{}: Parseval", ctx()))?;
        check(r.weight == weight, || format!("{}: weight {}", ctx(), r.weight))?;
        check(r.degree as usize == m, || format!("{}: degree {}", ctx(), r.degree))?;
    }
    check(support_collisions(recs).is_empty(), || format!("n={n}: support collision"))
}

fn universal() -> Outcome {
    let mut total = 0;
    for (l, b) in [(2, 1), (1, 2), (3, 1), (1, 3), (4, 1), (2, 2)] {
        let m = l as usize * b;
        for (t, plus) in [(SpreadType::Minus, false), (SpreadType::Plus, true)] {
            let recs = records(l, b, t);
            universal_properties(&recs, m, plus)?;
            total += recs.len();
        }
    }
    Ok(format!("{total} functions over n = 4, 6, 8"))
}

fn desarguesian() -> Outcome {
    check(verify_lemma2(4).unwrap(), || "verify_lemma2(4) returned false".into())?;
    let spec = gf(4);
    let spread = desarguesian_spread(4).unwrap();
    let matching = spec
        .elements()
        .filter(|&a| kernel_of(&Poly::linear(spec, a), 1).unwrap() == spread[a.value() as usize])
        .count();
    check(matching == 16, || format!("{matching}/16 kernels equal E_a"))?;
    Ok("16/16 kernels equal E_a; 12870 functions equal their Desarguesian unions".into())
}

fn cubic_pool() -> Outcome {
    let minus = records(1, 3, SpreadType::Minus);
    let plus = records(1, 3, SpreadType::Plus);
    check(minus.len() == 5 && plus.len() == 1, || format!("{} PS-, {} PS+", minus.len(), plus.len()))?;
    universal_properties(&minus, 3, false)?;
    universal_properties(&plus, 3, true)?;
    Ok("5 PS- and 1 PS+ bent functions of 6 variables".into())
}

fn naive_walsh(tt: &TruthTable) -> Vec<i32> {
    (0..tt.len())
        .map(|a| {
            (0..tt.len())
                .map(|x| if tt.get(x) ^ ((a & x).count_ones() % 2 == 1) { -1 } else { 1 })
                .sum()
        })
        .collect()
}

fn naive_rank(mut rows: Vec<Vec<bool>>) -> usize {
    let mut rank = 0;
    for c in 0..rows.first().map_or(0, Vec::len) {
        let Some(p) = (rank..rows.len()).find(|&r| rows[r][c]) else { continue };
        rows.swap(rank, p);
        let pivot = rows[rank].clone();
        for (r, row) in rows.iter_mut().enumerate() {
            if r != rank && row[c] {
                row.iter_mut().zip(&pivot).for_each(|(x, y)| *x ^= *y);
            }
        }
        rank += 1;
    }
    rank
}

fn transforms() -> Outcome {
    let mut rng = rand::rngs::StdRng::seed_from_u64(20_240_517);
    let mut wht = 0;
    for n in 1..=3 {
        for bits in 0u32..1 << (1 << n) {
            let tt = TruthTable::from_fn(n, |i| bits >> i & 1 == 1);
            check(walsh_transform(&tt).values() == naive_walsh(&tt), || format!("WHT n={n} table {tt}"))?;
            wht += 1;
        }
    }
    for _ in 0..100 {
        let tt = TruthTable::from_fn(4, |_| rng.gen());
        check(walsh_transform(&tt).values() == naive_walsh(&tt), || format!("WHT n=4 table {tt}"))?;
        wht += 1;
    }
    for _ in 0..100 {
        let rows: Vec<Vec<bool>> = (0..32).map(|_| (0..32).map(|_| rng.gen()).collect()).collect();
        let packed = BitMatrix::from_fn(32, 32, |r, c| rows[r][c]);
        let (fast, slow) = (rank_gf2(&packed), naive_rank(rows));
        check(fast == slow, || format!("rank {fast} vs naive {slow}"))?;
    }
    for _ in 0..100 {
        let tt = TruthTable::from_fn(8, |_| rng.gen());
        check(moebius_transform(&moebius_transform(&tt)) == tt, || format!("Moebius not involutive on {tt}"))?;
    }
    Ok(format!("{wht} WHT tables, 100 rank matrices, 100 Moebius involutions"))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 9] = [
        ("b=1 n=8 rank distribution", rank_distribution_b1),
        ("b=2 n=8 rank distributions", rank_distribution_b2),
        ("n=4 golden tables and ANFs", golden_n4),
        ("gcd / Sylvester / kernel triangle", triangle),
        ("counting cross-checks", counting),
        ("universal bent properties", universal),
        ("b=1 kernels vs Desarguesian spread", desarguesian),
        ("cubic pool over GF(2)", cubic_pool),
        ("transform oracles", transforms),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        match run() {
            Ok(detail) => println!("criterion {} [{name}]: PASS ({detail})", i + 1),
            Err(detail) => {
                failed += 1;
                println!("criterion {} [{name}]: FAIL ({detail})", i + 1);
            }
        }
    }
    println!("acceptance: {}/{} passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
