//! Candidate polynomial pools, coprime family enumeration, and the
//! Desarguesian spread.

use std::fmt;
use std::str::FromStr;

use crate::boolfun::{from_spread, is_bent, TruthTable};
use crate::error::{Error, Result};
use crate::gf2e::{FieldElement, FieldSpec};
use crate::lrs_spread::{build_partial_spread, kernel_of, window_coprime, Subspace};
use crate::poly::{enumerate_irreducibles, monic_polys, Poly};

/// Why a polynomial is in a pool.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Provenance {
    IrreducibleDegB,
    SquareOfLinear,
    ProductOfLinears,
    ProductOfIrreducibles,
    ConstantOne,
    XPowerB,
}

impl Provenance {
    pub fn as_str(self) -> &'static str {
        match self {
            Provenance::IrreducibleDegB => "irreducible-deg-b",
            Provenance::SquareOfLinear => "square-of-linear",
            Provenance::ProductOfLinears => "product-of-linears",
            Provenance::ProductOfIrreducibles => "product-of-irreducibles",
            Provenance::ConstantOne => "constant-one",
            Provenance::XPowerB => "x-power-b",
        }
    }
}

impl fmt::Display for Provenance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PoolMember {
    pub poly: Poly,
    pub provenance: Provenance,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CandidatePool {
    pub spec: FieldSpec,
    pub b: usize,
    /// Sorted by the canonical polynomial order.
    pub members: Vec<PoolMember>,
}

impl CandidatePool {
    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn polys(&self) -> Vec<Poly> {
        self.members.iter().map(|m| m.poly.clone()).collect()
    }

    pub fn count(&self, provenance: Provenance) -> usize {
        self.members.iter().filter(|m| m.provenance == provenance).count()
    }

    fn from_members(spec: FieldSpec, b: usize, mut members: Vec<PoolMember>) -> Self {
        members.sort_by(|x, y| x.poly.cmp(&y.poly));
        members.dedup_by(|x, y| x.poly == y.poly);
        CandidatePool { spec, b, members }
    }
}

/// Builds the candidate pool for window length `b`.
///
/// * `b = 1`: `a + X` for every `a`, plus the constant `1` when
///   `include_e_infinity` is set.
/// * `b = 2`: degree-2 irreducibles, squares and pairwise products of the
///   linear irreducibles (all with nonzero constant), plus `1` and `X^2`.
/// * `b = 3` over GF(2): the two cubic irreducibles, `(X+1)(X^2+X+1)`, `1`
///   and `X^3`.
pub fn candidate_pool(spec: FieldSpec, b: usize, include_e_infinity: bool) -> Result<CandidatePool> {
    let member = |poly, provenance| PoolMember { poly, provenance };
    let mut members = Vec::new();
    match b {
        1 => {
            members.extend(spec.elements().map(|a| member(Poly::linear(spec, a), Provenance::IrreducibleDegB)));
            if include_e_infinity {
                members.push(member(Poly::one(spec), Provenance::ConstantOne));
            }
        }
        2 => {
            for p in enumerate_irreducibles(spec, 2, true) {
                members.push(member(p, Provenance::IrreducibleDegB));
            }
            let linears = enumerate_irreducibles(spec, 1, true);
            for (i, f) in linears.iter().enumerate() {
                members.push(member(f.mul(f)?, Provenance::SquareOfLinear));
                for g in &linears[i + 1..] {
                    members.push(member(f.mul(g)?, Provenance::ProductOfLinears));
                }
            }
            members.push(member(Poly::one(spec), Provenance::ConstantOne));
            members.push(member(Poly::x_power(spec, 2), Provenance::XPowerB));
        }
        3 if spec.degree() == 1 => {
            for p in enumerate_irreducibles(spec, 3, true) {
                members.push(member(p, Provenance::IrreducibleDegB));
            }
            let product = Poly::from_values(spec, &[1, 1])?.mul(&Poly::from_values(spec, &[1, 1, 1])?)?;
            members.push(member(product, Provenance::ProductOfIrreducibles));
            members.push(member(Poly::one(spec), Provenance::ConstantOne));
            members.push(member(Poly::x_power(spec, 3), Provenance::XPowerB));
        }
        _ => {
            return Err(Error::UnsupportedParameters(format!(
                "no candidate pool for l={} b={b} (supported: b=1, b=2, and b=3 over GF(2))",
                spec.degree()
            )))
        }
    }
    Ok(CandidatePool::from_members(spec, b, members))
}

/// Every monic degree-`b` polynomial with nonzero constant term.
pub fn nonzero_constant_pool(spec: FieldSpec, b: usize) -> CandidatePool {
    let members = monic_polys(spec, b)
        .filter(|p| !p.coeff(0).is_zero())
        .map(|poly| {
            let provenance = if b == 1 || poly.is_irreducible().unwrap_or(false) {
                Provenance::IrreducibleDegB
            } else {
                Provenance::ProductOfIrreducibles
            };
            PoolMember { poly, provenance }
        })
        .collect();
    CandidatePool::from_members(spec, b, members)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SpreadType {
    /// t = 2^{m-1}, f(0) = 0.
    Minus,
    /// t = 2^{m-1} + 1, f(0) = 1.
    Plus,
}

impl SpreadType {
    pub fn as_str(self) -> &'static str {
        match self {
            SpreadType::Minus => "PS-",
            SpreadType::Plus => "PS+",
        }
    }

    pub fn is_plus(self) -> bool {
        self == SpreadType::Plus
    }

    /// Family size for half-arity `m`.
    pub fn family_size(self, m: usize) -> usize {
        (1usize << (m - 1)) + self.is_plus() as usize
    }
}

impl fmt::Display for SpreadType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for SpreadType {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_uppercase().as_str() {
            "PS-" => Ok(SpreadType::Minus),
            "PS+" => Ok(SpreadType::Plus),
            _ => Err(Error::ManifestParse(format!("unknown spread type {s:?}"))),
        }
    }
}

/// Which coprime subsets count as families.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum FamilyRule {
    /// Products of linears only join families that already hold every
    /// degree-b irreducible of the pool.
    #[default]
    CompleteIrreducibles,
    /// Every pairwise coprime subset.
    AllCoprime,
}

/// Pairwise window-coprimality of pool members as bitmasks (pool ≤ 128).
fn compatibility(pool: &CandidatePool) -> Result<Vec<u128>> {
    let k = pool.len();
    if k > 128 {
        return Err(Error::UnsupportedParameters(format!("pool of {k} members exceeds 128")));
    }
    let mut compat = vec![0u128; k];
    for i in 0..k {
        for j in i + 1..k {
            if window_coprime(&pool.members[i].poly, &pool.members[j].poly, pool.b)? {
                compat[i] |= 1 << j;
                compat[j] |= 1 << i;
            }
        }
    }
    Ok(compat)
}

fn admitted(pool: &CandidatePool, subset: &[usize], rule: FamilyRule) -> bool {
    match rule {
        FamilyRule::AllCoprime => true,
        FamilyRule::CompleteIrreducibles => {
            let has = |p| subset.iter().any(|&i| pool.members[i].provenance == p);
            let irreducibles = subset
                .iter()
                .filter(|&&i| pool.members[i].provenance == Provenance::IrreducibleDegB)
                .count();
            !has(Provenance::ProductOfLinears) || irreducibles == pool.count(Provenance::IrreducibleDegB)
        }
    }
}

/// Pool-index subsets of size `t` forming admissible families, in
/// lexicographic order.
pub fn enumerate_family_indices(pool: &CandidatePool, t: usize, rule: FamilyRule) -> Result<Vec<Vec<usize>>> {
    let compat = compatibility(pool)?;
    let mut out = Vec::new();
    let mut stack = Vec::with_capacity(t);
    let all = if pool.len() == 128 { u128::MAX } else { (1u128 << pool.len()) - 1 };

    fn dfs(
        pool: &CandidatePool,
        compat: &[u128],
        rule: FamilyRule,
        t: usize,
        candidates: u128,
        stack: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
    ) {
        if stack.len() == t {
            if admitted(pool, stack, rule) {
                out.push(stack.clone());
            }
            return;
        }
        let mut rest = candidates;
        while rest != 0 {
            if (rest.count_ones() as usize) < t - stack.len() {
                return;
            }
            let i = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            stack.push(i);
            dfs(pool, compat, rule, t, rest & compat[i], stack, out);
            stack.pop();
        }
    }

    dfs(pool, &compat, rule, t, all, &mut stack, &mut out);
    Ok(out)
}

/// A family of feedback polynomials defining one bent function.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FamilySpec {
    pub id: usize,
    pub spec: FieldSpec,
    pub b: usize,
    pub spread_type: SpreadType,
    pub polys: Vec<Poly>,
}

impl FamilySpec {
    pub fn m(&self) -> usize {
        self.spec.degree() as usize * self.b
    }

    pub fn n(&self) -> usize {
        2 * self.m()
    }

    /// `[c0,..];[c0,..]`
    pub fn polys_text(&self) -> String {
        self.polys.iter().map(Poly::to_string).collect::<Vec<_>>().join(";")
    }

    /// Manifest line `id=..; l=..; b=..; type=..; polys=..`.
    pub fn manifest_line(&self) -> String {
        format!(
            "id={}; l={}; b={}; type={}; polys={}",
            self.id,
            self.spec.degree(),
            self.b,
            self.spread_type,
            self.polys_text()
        )
    }

    /// Parses a manifest line; the field is the canonical one of degree `l`.
    pub fn parse_manifest_line(line: &str) -> Result<Self> {
        let bad = |what: &str| Error::ManifestParse(format!("{what} in {line:?}"));
        let mut fields = line.trim().splitn(5, ';').map(str::trim);
        let mut take = |key: &str| -> Result<&str> {
            fields
                .next()
                .and_then(|f| f.strip_prefix(key))
                .and_then(|f| f.strip_prefix('='))
                .map(str::trim)
                .ok_or_else(|| bad(&format!("missing {key}")))
        };
        let id = take("id")?.parse().map_err(|_| bad("bad id"))?;
        let l = take("l")?.parse().map_err(|_| bad("bad l"))?;
        let b = take("b")?.parse().map_err(|_| bad("bad b"))?;
        let spread_type = take("type")?.parse()?;
        let polys_text = take("polys")?;
        let spec = FieldSpec::canonical(l)?;
        let polys = parse_poly_list(spec, polys_text)?;
        Ok(FamilySpec { id, spec, b, spread_type, polys })
    }
}

/// Parses `[c0,..];[c0,..]`.
pub fn parse_poly_list(spec: FieldSpec, text: &str) -> Result<Vec<Poly>> {
    text.split(';')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| Poly::parse(spec, s))
        .collect()
}

/// Enumerates all admissible families of the type's size, numbered from 0.
pub fn enumerate_families(pool: &CandidatePool, spread_type: SpreadType, rule: FamilyRule) -> Result<Vec<FamilySpec>> {
    let m = pool.spec.degree() as usize * pool.b;
    let t = spread_type.family_size(m);
    Ok(enumerate_family_indices(pool, t, rule)?
        .into_iter()
        .enumerate()
        .map(|(id, idx)| FamilySpec {
            id,
            spec: pool.spec,
            b: pool.b,
            spread_type,
            polys: idx.iter().map(|&i| pool.members[i].poly.clone()).collect(),
        })
        .collect())
}

/// Number of pairwise coprime `t`-subsets of the pool.
///
/// Members coprime to every other member are factored out, so only the
/// remaining ones are searched.
pub fn count_coprime_families(pool: &CandidatePool, t: usize) -> Result<num_bigint::BigUint> {
    use num_bigint::BigUint;
    let compat = compatibility(pool)?;
    let k = pool.len();
    let everyone = |i: usize| {
        let all = if k == 128 { u128::MAX } else { (1u128 << k) - 1 };
        all & !(1u128 << i)
    };
    let (universal, constrained): (Vec<usize>, Vec<usize>) = (0..k).partition(|&i| compat[i] == everyone(i));
    // by_size[s] = coprime subsets of size s among the constrained members
    let mut by_size = vec![0u64; constrained.len() + 1];
    let local: Vec<u128> = constrained
        .iter()
        .map(|&i| {
            constrained
                .iter()
                .enumerate()
                .filter(|&(_, &j)| compat[i] >> j & 1 == 1)
                .fold(0u128, |acc, (pos, _)| acc | 1 << pos)
        })
        .collect();

    fn walk(local: &[u128], candidates: u128, size: usize, by_size: &mut [u64]) {
        by_size[size] += 1;
        let mut rest = candidates;
        while rest != 0 {
            let i = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            walk(local, rest & local[i], size + 1, by_size);
        }
    }
    let start = if constrained.len() == 128 { u128::MAX } else { (1u128 << constrained.len()) - 1 };
    walk(&local, start, 0, &mut by_size);

    let u = universal.len();
    let choose = |n: usize, r: usize| -> BigUint {
        if r > n {
            return BigUint::from(0u32);
        }
        (0..r).fold(BigUint::from(1u32), |acc, i| acc * (n - i) / (i + 1))
    };
    Ok(by_size
        .iter()
        .enumerate()
        .filter(|&(s, _)| s <= t)
        .map(|(s, &c)| choose(u, t - s) * c)
        .sum())
}

/// Counts of a b = 2 family list split by which non-irreducible members occur.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct FamilyBuckets {
    pub without_products: usize,
    pub product_with_square: usize,
    pub product_without_square: usize,
}

pub fn bucket_families(pool: &CandidatePool, families: &[Vec<usize>]) -> FamilyBuckets {
    let mut buckets = FamilyBuckets::default();
    for family in families {
        let has = |p| family.iter().any(|&i| pool.members[i].provenance == p);
        match (has(Provenance::ProductOfLinears), has(Provenance::SquareOfLinear)) {
            (false, _) => buckets.without_products += 1,
            (true, true) => buckets.product_with_square += 1,
            (true, false) => buckets.product_without_square += 1,
        }
    }
    buckets
}

/// Kernel spread of the family turned into its PS⁻/PS⁺ function, checked bent.
pub fn build_bent(family: &FamilySpec) -> Result<TruthTable> {
    let expected = family.spread_type.family_size(family.m());
    if family.polys.len() != expected {
        return Err(Error::WrongSpreadSize { expected, actual: family.polys.len() });
    }
    let spread = build_partial_spread(&family.polys, family.b)?;
    let tt = from_spread(&spread, family.spread_type.is_plus())?;
    if !is_bent(&tt)? {
        return Err(Error::BentCheckFailed);
    }
    Ok(tt)
}

/// `E_a = {(x, a·x)}` in the b = 1 flattening: `x` in the low `m` bits.
pub fn desarguesian_member(spec: FieldSpec, a: FieldElement) -> Subspace {
    let m = spec.degree();
    let basis = (0..m)
        .map(|j| {
            let x = FieldElement(1 << j);
            x.value() as u32 | (spec.mul(a, x).value() as u32) << m
        })
        .collect();
    Subspace::from_basis(2 * m as usize, basis)
}

/// `E_∞ = {(0, y)}`.
pub fn desarguesian_infinity(spec: FieldSpec) -> Subspace {
    let m = spec.degree();
    Subspace::from_basis(2 * m as usize, (0..m).map(|j| 1u32 << (m + j)).collect())
}

/// The `2^m + 1` subspaces `E_a` (in field-element order) followed by `E_∞`.
pub fn desarguesian_spread(m: u32) -> Result<Vec<Subspace>> {
    let spec = FieldSpec::canonical(m)?;
    let mut spread: Vec<Subspace> = spec.elements().map(|a| desarguesian_member(spec, a)).collect();
    spread.push(desarguesian_infinity(spec));
    Ok(spread)
}

/// Checks that `ker(a + X) = E_a` for every `a` and `ker(1) = E_∞` at b = 1,
/// and, for m ≤ 4, that every b = 1 PS⁻ function equals the union function
/// of the matching Desarguesian subspaces.
pub fn verify_lemma2(m: u32) -> Result<bool> {
    let spec = FieldSpec::canonical(m)?;
    let spread = desarguesian_spread(m)?;
    for (a, e_a) in spec.elements().zip(&spread) {
        if kernel_of(&Poly::linear(spec, a), 1)? != *e_a {
            return Ok(false);
        }
    }
    if kernel_of(&Poly::one(spec), 1)? != spread[1 << m] {
        return Ok(false);
    }
    if m > 4 {
        return Ok(true);
    }
    let pool = candidate_pool(spec, 1, false)?;
    for family in enumerate_families(&pool, SpreadType::Minus, FamilyRule::AllCoprime)? {
        let lrs = build_bent(&family)?;
        let chosen: Vec<Subspace> = family
            .polys
            .iter()
            .map(|p| spread[p.coeff(0).value() as usize].clone())
            .collect();
        if from_spread(&chosen, false)? != lrs {
            return Ok(false);
        }
    }
    Ok(true)
}
