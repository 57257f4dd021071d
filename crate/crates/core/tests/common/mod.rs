//! Brute-force oracles shared by the integration tests and the acceptance
//! suite. They avoid the library's counting and enumeration shortcuts.

#![allow(dead_code)]

use std::collections::HashSet;

use spreadbent_core::poly::monic_polys;
use spreadbent_core::{FieldSpec, Poly};

pub fn gf(l: u32) -> FieldSpec {
    FieldSpec::canonical(l).unwrap()
}

/// Monic degree-k irreducibles with nonzero constant, counted by sieving out
/// every product of two lower-degree monic polynomials.
pub fn sieve_irreducible_count(spec: FieldSpec, k: usize) -> u128 {
    let mut reducible = HashSet::new();
    for d in 1..=k / 2 {
        let left: Vec<Poly> = monic_polys(spec, d).collect();
        for g in monic_polys(spec, k - d) {
            for f in &left {
                reducible.insert(f.mul(&g).unwrap());
            }
        }
    }
    monic_polys(spec, k)
        .filter(|p| !p.coeff(0).is_zero() && !reducible.contains(p))
        .count() as u128
}

fn binom(n: u128, k: u128) -> u128 {
    if k > n {
        return 0;
    }
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

/// Pairwise coprime t-subsets of monic degree-b polynomials with nonzero
/// constant. Members coprime to all others are split off and counted with a
/// binomial; the rest are searched exhaustively.
pub fn brute_coprime_count(spec: FieldSpec, b: usize, t: usize) -> u128 {
    let polys: Vec<Poly> = monic_polys(spec, b).filter(|p| !p.coeff(0).is_zero()).collect();
    let k = polys.len();
    let coprime: Vec<Vec<bool>> = (0..k)
        .map(|i| (0..k).map(|j| i != j && polys[i].gcd(&polys[j]).unwrap().is_one()).collect())
        .collect();
    let universal = (0..k).filter(|&i| (0..k).all(|j| j == i || coprime[i][j])).count();
    let rest: Vec<usize> = (0..k).filter(|&i| (0..k).any(|j| j != i && !coprime[i][j])).collect();
    assert!(rest.len() <= 128);
    let masks: Vec<u128> = rest
        .iter()
        .map(|&i| {
            rest.iter()
                .enumerate()
                .filter(|&(_, &j)| coprime[i][j])
                .fold(0, |acc, (pos, _)| acc | 1u128 << pos)
        })
        .collect();
    let mut by_size = vec![0u128; rest.len() + 1];
    fn grow(masks: &[u128], from: usize, allowed: u128, size: usize, by_size: &mut [u128]) {
        by_size[size] += 1;
        for i in from..masks.len() {
            if allowed >> i & 1 == 1 {
                grow(masks, i + 1, allowed & masks[i], size + 1, by_size);
            }
        }
    }
    let all = if rest.len() == 128 { u128::MAX } else { (1u128 << rest.len()) - 1 };
    grow(&masks, 0, all, 0, &mut by_size);
    (0..=t.min(rest.len()))
        .map(|s| binom(universal as u128, (t - s) as u128) * by_size[s])
        .sum()
}

/// Nonzero polynomials of degree ≤ d.
pub fn nonzero_polys_up_to(spec: FieldSpec, d: usize) -> Vec<Poly> {
    let q = spec.order() as u32;
    (1..q.pow(d as u32 + 1))
        .map(|mut idx| {
            let mut values = Vec::new();
            for _ in 0..=d {
                values.push(idx % q);
                idx /= q;
            }
            Poly::from_values(spec, &values).unwrap()
        })
        .collect()
}
