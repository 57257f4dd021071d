//! Arithmetic in binary extension fields GF(2^l).
//!
//! Elements are stored as `l`-bit integers where bit `j` is the coefficient of
//! `α^j` and `α` is a root of the defining polynomial. This encoding is shared
//! by every text format in the crate, so it must not change.
//!
//! Statistics computed downstream (weights, degrees, Walsh spectra, 2-ranks)
//! do not depend on which irreducible modulus is picked: changing the modulus
//! is a GF(2)-linear bijection on coordinates, and such input re-indexings
//! preserve both the 2-rank and the Walsh value multiset.

use std::fmt;

use crate::error::{Error, Result};

/// Largest supported extension degree.
pub const MAX_DEGREE: u32 = 8;

/// The field GF(2^l) together with its defining polynomial.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct FieldSpec {
    l: u32,
    modulus: u16,
}

/// An element of GF(2^l), valid only together with the [`FieldSpec`] it came from.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FieldElement(pub u8);

impl FieldElement {
    pub const ZERO: FieldElement = FieldElement(0);
    pub const ONE: FieldElement = FieldElement(1);

    #[inline]
    pub fn value(self) -> u8 {
        self.0
    }

    #[inline]
    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Carry-less product of two binary polynomials of degree < 16.
#[cfg(test)]
fn clmul(a: u32, b: u32) -> u32 {
    let mut acc = 0;
    let mut b = b;
    let mut shifted = a;
    while b != 0 {
        if b & 1 != 0 {
            acc ^= shifted;
        }
        b >>= 1;
        shifted <<= 1;
    }
    acc
}

fn gf2_degree(p: u32) -> i32 {
    31 - p.leading_zeros() as i32
}

fn gf2_rem(mut a: u32, m: u32) -> u32 {
    let dm = gf2_degree(m);
    while a != 0 && gf2_degree(a) >= dm {
        a ^= m << (gf2_degree(a) - dm);
    }
    a
}

/// Irreducibility of a binary polynomial by trial division.
pub(crate) fn gf2_is_irreducible(p: u32) -> bool {
    let d = gf2_degree(p);
    if d < 1 {
        return false;
    }
    // every divisor of degree in 1..=d/2
    (2u32..(1 << (d / 2 + 1))).all(|g| gf2_rem(p, g) != 0)
}

impl FieldSpec {
    /// Builds a field from an explicit modulus, checking degree and irreducibility.
    pub fn new(l: u32, modulus: u16) -> Result<Self> {
        if l == 0 || l > MAX_DEGREE {
            return Err(Error::InvalidModulus {
                l,
                modulus,
                reason: "extension degree must lie in 1..=8",
            });
        }
        if gf2_degree(modulus as u32) != l as i32 {
            return Err(Error::InvalidModulus {
                l,
                modulus,
                reason: "modulus degree differs from l",
            });
        }
        if !gf2_is_irreducible(modulus as u32) {
            return Err(Error::InvalidModulus {
                l,
                modulus,
                reason: "modulus is reducible over GF(2)",
            });
        }
        Ok(FieldSpec { l, modulus })
    }

    /// The canonical field of degree `l`: the smallest irreducible modulus by
    /// integer encoding (X+1, X²+X+1, X³+X+1, X⁴+X+1, ...).
    pub fn canonical(l: u32) -> Result<Self> {
        if l == 0 || l > MAX_DEGREE {
            return Err(Error::InvalidModulus {
                l,
                modulus: 0,
                reason: "extension degree must lie in 1..=8",
            });
        }
        let modulus = ((1u32 << l)..(1u32 << (l + 1)))
            .find(|&p| p & 1 == 1 && gf2_is_irreducible(p))
            .expect("irreducible polynomials exist in every degree");
        FieldSpec::new(l, modulus as u16)
    }

    #[inline]
    pub fn degree(&self) -> u32 {
        self.l
    }

    #[inline]
    pub fn modulus(&self) -> u16 {
        self.modulus
    }

    /// Field order q = 2^l.
    #[inline]
    pub fn order(&self) -> usize {
        1 << self.l
    }

    /// Validates a raw value and wraps it.
    pub fn element(&self, value: u32) -> Result<FieldElement> {
        if (value as usize) < self.order() {
            Ok(FieldElement(value as u8))
        } else {
            Err(Error::ElementOutOfRange { value, l: self.l })
        }
    }

    pub fn elements(&self) -> impl Iterator<Item = FieldElement> {
        (0..self.order()).map(|v| FieldElement(v as u8))
    }

    /// The generator α (encoded 2), or 1 in GF(2).
    pub fn alpha(&self) -> FieldElement {
        FieldElement(gf2_rem(2, self.modulus as u32) as u8)
    }

    #[inline]
    pub fn add(&self, x: FieldElement, y: FieldElement) -> FieldElement {
        FieldElement(x.0 ^ y.0)
    }

    /// Shift-and-reduce multiplication.
    #[inline]
    pub fn mul(&self, x: FieldElement, y: FieldElement) -> FieldElement {
        let mut a = x.0 as u32;
        let mut b = y.0 as u32;
        let top = 1u32 << self.l;
        let m = self.modulus as u32;
        let mut acc = 0u32;
        while b != 0 {
            if b & 1 != 0 {
                acc ^= a;
            }
            b >>= 1;
            a <<= 1;
            if a & top != 0 {
                a ^= m;
            }
        }
        FieldElement(acc as u8)
    }

    pub fn pow(&self, x: FieldElement, mut e: u32) -> FieldElement {
        let mut base = x;
        let mut acc = FieldElement::ONE;
        while e != 0 {
            if e & 1 != 0 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    /// Multiplicative inverse, computed as x^(q-2).
    pub fn inv(&self, x: FieldElement) -> Result<FieldElement> {
        if x.is_zero() {
            return Err(Error::ZeroInverse);
        }
        Ok(self.pow(x, self.order() as u32 - 2))
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF(2^{})/modulus={:#x}", self.l, self.modulus)
    }
}

#[cfg(test)]
fn clmul_reduce(a: u32, b: u32, modulus: u32) -> u32 {
    gf2_rem(clmul(a, b), modulus)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gf(l: u32) -> FieldSpec {
        FieldSpec::canonical(l).unwrap()
    }

    #[test]
    fn canonical_moduli() {
        assert_eq!(gf(1).modulus(), 0b11);
        assert_eq!(gf(2).modulus(), 0b111);
        assert_eq!(gf(3).modulus(), 0b1011);
        assert_eq!(gf(4).modulus(), 0b10011);
        assert_eq!(gf(8).modulus(), 0x11b);
        assert_eq!(gf(4).to_string(), "GF(2^4)/modulus=0x13");
    }

    #[test]
    fn rejects_bad_moduli() {
        assert!(FieldSpec::new(2, 0b101).is_err());
        assert!(FieldSpec::new(3, 0b111).is_err());
        assert!(FieldSpec::new(0, 1).is_err());
        assert!(FieldSpec::new(3, 0b1101).is_ok());
    }

    #[test]
    fn addition() {
        let f = gf(2);
        let a = f.alpha();
        assert_eq!(f.add(a, a), FieldElement::ZERO);
        assert_eq!(f.add(a, FieldElement::ONE), FieldElement(3));
        let g = gf(4);
        for x in g.elements() {
            assert_eq!(g.add(FieldElement::ZERO, x), x);
        }
    }

    #[test]
    fn multiplication_in_gf4() {
        let f = gf(2);
        let a = f.alpha();
        let a2 = f.mul(a, a);
        assert_eq!(a2, FieldElement(3));
        // α·α² = α³ = 1
        assert_eq!(f.mul(a, a2), FieldElement::ONE);
        for x in f.elements() {
            assert_eq!(f.mul(FieldElement::ONE, x), x);
        }
    }

    #[test]
    fn inverses() {
        assert_eq!(gf(1).inv(FieldElement::ONE).unwrap(), FieldElement::ONE);
        let f = gf(2);
        assert_eq!(f.inv(f.alpha()).unwrap(), FieldElement(3));
        assert_eq!(f.inv(FieldElement::ZERO), Err(Error::ZeroInverse));
        for l in 1..=8 {
            let f = gf(l);
            for x in f.elements().skip(1) {
                let y = f.inv(x).unwrap();
                assert_eq!(f.mul(x, y), FieldElement::ONE);
                assert_eq!(f.inv(y).unwrap(), x);
            }
        }
    }

    #[test]
    fn gf16_inverse_by_exhaustive_table() {
        let f = gf(4);
        for x in f.elements().skip(1) {
            let partners: Vec<_> = f
                .elements()
                .filter(|&y| f.mul(x, y) == FieldElement::ONE)
                .collect();
            assert_eq!(partners, vec![f.inv(x).unwrap()]);
        }
    }

    #[test]
    fn multiplicative_group_is_cyclic() {
        for l in 1..=4 {
            let f = gf(l);
            let order = f.order() - 1;
            let has_generator = f.elements().skip(1).any(|g| {
                let mut seen = std::collections::HashSet::new();
                let mut x = FieldElement::ONE;
                for _ in 0..order {
                    seen.insert(x);
                    x = f.mul(x, g);
                }
                seen.len() == order && x == FieldElement::ONE
            });
            assert!(has_generator, "GF(2^{l})");
        }
    }

    #[test]
    fn mul_matches_clmul_reduce() {
        for l in 1..=8 {
            let f = gf(l);
            for x in f.elements() {
                for y in f.elements().step_by(7) {
                    assert_eq!(
                        f.mul(x, y).0 as u32,
                        clmul_reduce(x.0 as u32, y.0 as u32, f.modulus() as u32)
                    );
                }
            }
        }
    }

    #[test]
    fn distributivity_exhaustive_small() {
        for l in 1..=2 {
            let f = gf(l);
            for x in f.elements() {
                for y in f.elements() {
                    for z in f.elements() {
                        assert_eq!(f.mul(x, f.add(y, z)), f.add(f.mul(x, y), f.mul(x, z)));
                    }
                }
            }
        }
    }

    #[test]
    fn distributivity_random() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand::rngs::StdRng::seed_from_u64(0x6f2e);
        for l in 3..=4 {
            let f = gf(l);
            let q = f.order() as u32;
            for _ in 0..10_000 {
                let x = FieldElement(rng.gen_range(0..q) as u8);
                let y = FieldElement(rng.gen_range(0..q) as u8);
                let z = FieldElement(rng.gen_range(0..q) as u8);
                assert_eq!(f.mul(x, f.add(y, z)), f.add(f.mul(x, y), f.mul(x, z)));
            }
        }
    }
}
