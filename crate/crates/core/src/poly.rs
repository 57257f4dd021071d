//! Univariate polynomials over GF(2^l): arithmetic, gcd, irreducibility,
//! enumeration, and the closed-form family counts.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::gf2e::{FieldElement, FieldSpec};

/// A polynomial with coefficients stored low-to-high; the highest stored
/// coefficient is always nonzero, and the zero polynomial has no coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Poly {
    spec: FieldSpec,
    coeffs: Vec<FieldElement>,
}

impl Poly {
    pub fn new(spec: FieldSpec, mut coeffs: Vec<FieldElement>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly { spec, coeffs }
    }

    /// Builds a polynomial from raw coefficient encodings, low-to-high.
    pub fn from_values(spec: FieldSpec, values: &[u32]) -> Result<Self> {
        let coeffs = values
            .iter()
            .map(|&v| spec.element(v))
            .collect::<Result<Vec<_>>>()?;
        Ok(Poly::new(spec, coeffs))
    }

    pub fn zero(spec: FieldSpec) -> Self {
        Poly { spec, coeffs: Vec::new() }
    }

    pub fn one(spec: FieldSpec) -> Self {
        Poly::constant(spec, FieldElement::ONE)
    }

    pub fn constant(spec: FieldSpec, c: FieldElement) -> Self {
        Poly::new(spec, vec![c])
    }

    /// The monomial X^k.
    pub fn x_power(spec: FieldSpec, k: usize) -> Self {
        let mut coeffs = vec![FieldElement::ZERO; k + 1];
        coeffs[k] = FieldElement::ONE;
        Poly { spec, coeffs }
    }

    /// The monic linear polynomial a + X.
    pub fn linear(spec: FieldSpec, a: FieldElement) -> Self {
        Poly { spec, coeffs: vec![a, FieldElement::ONE] }
    }

    #[inline]
    pub fn spec(&self) -> FieldSpec {
        self.spec
    }

    #[inline]
    pub fn coeffs(&self) -> &[FieldElement] {
        &self.coeffs
    }

    /// Coefficient of X^i (zero beyond the degree).
    pub fn coeff(&self, i: usize) -> FieldElement {
        self.coeffs.get(i).copied().unwrap_or(FieldElement::ZERO)
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs == [FieldElement::ONE]
    }

    pub fn leading(&self) -> FieldElement {
        self.coeffs.last().copied().unwrap_or(FieldElement::ZERO)
    }

    pub fn is_monic(&self) -> bool {
        self.leading() == FieldElement::ONE
    }

    /// Integer encoding `Σ c_i · q^i`; orders polynomials canonically.
    pub fn canonical_key(&self) -> u64 {
        let q = self.spec.order() as u64;
        self.coeffs
            .iter()
            .rev()
            .fold(0u64, |acc, c| acc * q + c.value() as u64)
    }

    fn check_spec(&self, other: &Poly) -> Result<()> {
        if self.spec == other.spec {
            Ok(())
        } else {
            Err(Error::SpecMismatch)
        }
    }

    pub fn add(&self, other: &Poly) -> Result<Poly> {
        self.check_spec(other)?;
        let len = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..len)
            .map(|i| self.spec.add(self.coeff(i), other.coeff(i)))
            .collect();
        Ok(Poly::new(self.spec, coeffs))
    }

    pub fn mul(&self, other: &Poly) -> Result<Poly> {
        self.check_spec(other)?;
        if self.is_zero() || other.is_zero() {
            return Ok(Poly::zero(self.spec));
        }
        let f = self.spec;
        let mut out = vec![FieldElement::ZERO; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                out[i + j] = f.add(out[i + j], f.mul(a, b));
            }
        }
        Ok(Poly::new(f, out))
    }

    pub fn scale(&self, c: FieldElement) -> Poly {
        let coeffs = self.coeffs.iter().map(|&x| self.spec.mul(x, c)).collect();
        Poly::new(self.spec, coeffs)
    }

    /// Euclidean division: `(q, r)` with `self = q·divisor + r`, `deg r < deg divisor`.
    pub fn divmod(&self, divisor: &Poly) -> Result<(Poly, Poly)> {
        self.check_spec(divisor)?;
        let dd = divisor.degree().ok_or(Error::DivisionByZeroPoly)?;
        let f = self.spec;
        let lead_inv = f.inv(divisor.leading())?;
        let mut rem = self.coeffs.clone();
        let Some(dn) = self.degree().filter(|&d| d >= dd) else {
            return Ok((Poly::zero(f), self.clone()));
        };
        let mut quot = vec![FieldElement::ZERO; dn - dd + 1];
        for k in (0..=dn - dd).rev() {
            let c = f.mul(rem[k + dd], lead_inv);
            if c.is_zero() {
                continue;
            }
            quot[k] = c;
            for (j, &dc) in divisor.coeffs.iter().enumerate() {
                rem[k + j] = f.add(rem[k + j], f.mul(c, dc));
            }
        }
        rem.truncate(dd);
        Ok((Poly::new(f, quot), Poly::new(f, rem)))
    }

    pub fn rem(&self, divisor: &Poly) -> Result<Poly> {
        self.divmod(divisor).map(|(_, r)| r)
    }

    /// The monic associate; the zero polynomial stays zero.
    pub fn monic(&self) -> Poly {
        if self.is_zero() || self.is_monic() {
            return self.clone();
        }
        let inv = self.spec.inv(self.leading()).expect("leading coefficient is nonzero");
        self.scale(inv)
    }

    /// Monic gcd by the Euclidean algorithm.
    pub fn gcd(&self, other: &Poly) -> Result<Poly> {
        self.check_spec(other)?;
        if self.is_zero() && other.is_zero() {
            return Err(Error::BothZero);
        }
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(&b)?;
            a = b;
            b = r;
        }
        Ok(a.monic())
    }

    pub fn is_coprime(&self, other: &Poly) -> Result<bool> {
        Ok(self.gcd(other)?.degree() == Some(0))
    }

    pub fn eval(&self, x: FieldElement) -> FieldElement {
        self.coeffs
            .iter()
            .rev()
            .fold(FieldElement::ZERO, |acc, &c| self.spec.add(self.spec.mul(acc, x), c))
    }

    /// Trial division by every monic polynomial of degree 1..=deg/2.
    pub fn is_irreducible(&self) -> Result<bool> {
        let d = match self.degree() {
            Some(d) if d >= 1 => d,
            _ => return Err(Error::DegreeTooSmall),
        };
        for k in 1..=d / 2 {
            for g in monic_polys(self.spec, k) {
                if self.rem(&g)?.is_zero() {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    /// Parses the `[c0,c1,...]` text form.
    pub fn parse(spec: FieldSpec, text: &str) -> Result<Poly> {
        let err = |reason: &str| Error::PolyParse {
            input: text.to_string(),
            reason: reason.to_string(),
        };
        let inner = text
            .trim()
            .strip_prefix('[')
            .and_then(|s| s.strip_suffix(']'))
            .ok_or_else(|| err("expected [c0,c1,...]"))?;
        if inner.trim().is_empty() {
            return Ok(Poly::zero(spec));
        }
        let values = inner
            .split(',')
            .map(|t| t.trim().parse::<u32>().map_err(|e| err(&e.to_string())))
            .collect::<Result<Vec<_>>>()?;
        Poly::from_values(spec, &values).map_err(|e| err(&e.to_string()))
    }

    /// Human-readable form such as `X^2 + {2}X + {3}`; coefficients other
    /// than 1 are shown as their integer encoding in braces.
    pub fn pretty(&self) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut terms = Vec::new();
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let coeff = if *c == FieldElement::ONE && i > 0 {
                String::new()
            } else {
                match c.value() {
                    1 => "1".to_string(),
                    v => format!("{{{v}}}"),
                }
            };
            let mono = match i {
                0 => String::new(),
                1 => "X".to_string(),
                _ => format!("X^{i}"),
            };
            terms.push(format!("{coeff}{mono}"));
        }
        terms.join(" + ")
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (i, c) in self.coeffs.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{c}")?;
        }
        f.write_str("]")
    }
}

impl PartialOrd for Poly {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Poly {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.spec.degree(), self.spec.modulus())
            .cmp(&(other.spec.degree(), other.spec.modulus()))
            .then(self.coeffs.len().cmp(&other.coeffs.len()))
            .then_with(|| self.coeffs.iter().rev().cmp(other.coeffs.iter().rev()))
    }
}

/// All monic polynomials of the given degree, in canonical order.
pub fn monic_polys(spec: FieldSpec, degree: usize) -> impl Iterator<Item = Poly> {
    let q = spec.order() as u64;
    let count = q.pow(degree as u32);
    (0..count).map(move |mut idx| {
        let mut coeffs = Vec::with_capacity(degree + 1);
        for _ in 0..degree {
            coeffs.push(FieldElement((idx % q) as u8));
            idx /= q;
        }
        coeffs.push(FieldElement::ONE);
        Poly { spec, coeffs }
    })
}

/// Monic irreducible polynomials of `degree`, in canonical order.
pub fn enumerate_irreducibles(
    spec: FieldSpec,
    degree: usize,
    require_nonzero_const: bool,
) -> Vec<Poly> {
    monic_polys(spec, degree)
        .filter(|p| !require_nonzero_const || !p.coeff(0).is_zero())
        .filter(|p| p.is_irreducible().unwrap_or(false))
        .collect()
}

fn mobius(mut n: u64) -> i64 {
    let mut result = 1;
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            n /= p;
            if n.is_multiple_of(p) {
                return 0;
            }
            result = -result;
        }
        p += 1;
    }
    if n > 1 {
        result = -result;
    }
    result
}

/// Number of monic irreducibles of degree `k` with nonzero constant term.
///
/// Panics if `q^k` overflows `i128`.
pub fn gauss_count(spec: FieldSpec, k: usize) -> u128 {
    assert!(k >= 1, "degree must be positive");
    let q = spec.order() as i128;
    if k == 1 {
        return (q - 1) as u128;
    }
    let k = k as u64;
    let sum: i128 = (1..=k)
        .filter(|d| k.is_multiple_of(*d))
        .map(|d| {
            let power = q.checked_pow((k / d) as u32).expect("q^k overflows");
            mobius(d) as i128 * power
        })
        .sum();
    (sum / k as i128) as u128
}

/// N_b = I_b + Σ_{k=1}^{⌊b/2⌋} I_k, the largest coprime family of degree-b
/// monic polynomials with nonzero constant term.
pub fn max_family_size(spec: FieldSpec, b: usize) -> u128 {
    assert!(b >= 1, "degree must be positive");
    let lower: u128 = (1..=b / 2).map(|k| gauss_count(spec, k)).sum();
    if b == 1 {
        gauss_count(spec, 1)
    } else {
        gauss_count(spec, b) + lower
    }
}

/// Whether a coprime family of 2^{m-1} = q^b/2 such polynomials can exist,
/// i.e. N_b ≥ q^b / 2.
pub fn feasible_degrees(b: usize, spec: FieldSpec) -> bool {
    let q = spec.order() as u128;
    2 * max_family_size(spec, b) >= q.pow(b as u32)
}

fn binom(n: i64, k: i64) -> BigUint {
    if k < 0 || n < 0 || k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for i in 0..k {
        acc *= BigUint::from((n - i) as u64);
        acc /= BigUint::from((i + 1) as u64);
    }
    acc
}

fn factorial(n: u64) -> BigUint {
    (1..=n).fold(BigUint::one(), |acc, i| acc * BigUint::from(i))
}

/// Closed-form number of PS⁻ families of degree-b polynomials with nonzero
/// constant term, for b ∈ {1, 2} and l·b = m.
pub fn count_theorem3(spec: FieldSpec, b: usize, m: usize) -> Result<BigUint> {
    if b != 1 && b != 2 {
        return Err(Error::UnsupportedDegree(b));
    }
    let l = spec.degree();
    if l as usize * b != m {
        return Err(Error::ParameterMismatch { l, b, m });
    }
    let t = 1i64 << (m - 1);
    if b == 1 {
        return Ok(binom((1i64 << m) - 1, t));
    }
    let i2 = gauss_count(spec, 2) as i64;
    let i1 = gauss_count(spec, 1) as i64;
    let mut total = BigUint::zero();
    for a in 0..=i2 {
        let choose_irr = binom(i2, a);
        for sq in 0..=t - a {
            let c = t - sq - a;
            if c < 0 {
                continue;
            }
            let pairing = factorial(2 * c as u64) / (factorial(c as u64) << c as usize);
            total += &choose_irr * binom(i1, sq) * binom(i1 - sq, 2 * c) * pairing;
        }
    }
    Ok(total)
}

/// The first pair `(i, j)` of members sharing a nontrivial factor, if any.
pub fn first_common_factor(family: &[Poly]) -> Result<Option<(usize, usize)>> {
    for i in 0..family.len() {
        for j in i + 1..family.len() {
            if !family[i].is_coprime(&family[j])? {
                return Ok(Some((i, j)));
            }
        }
    }
    Ok(None)
}

/// True iff every unordered pair has gcd 1.
pub fn pairwise_coprime(family: &[Poly]) -> Result<bool> {
    Ok(first_common_factor(family)?.is_none())
}
