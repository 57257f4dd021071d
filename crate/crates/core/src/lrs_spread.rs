//! Linear maps defined by linear recurring sequences and their kernels.
//!
//! A feedback polynomial `a_0 + a_1 X + ... + a_b X^b` defines the map
//! `F: F_q^{2b} → F_q^b` with `F(x)_i = Σ_j a_j x_{i+j}`, i.e. a banded
//! `b × 2b` matrix. Polynomials of degree below `b` occupy the same window
//! padded with zeros, so the constant `1` and `X^b` give the two coordinate
//! halves of the space.
//!
//! Flattened vectors are `n = 2·l·b` bit integers: coordinate `i` occupies bits
//! `i·l .. i·l + l`, and within it bit `j` is the coefficient of `α^j`. Read as
//! a truth-table index, coordinate 0 therefore sits in the low bits.

use std::fmt;

use crate::error::{Error, Result};
use crate::gf2e::{FieldElement, FieldSpec};
use crate::poly::Poly;

/// Packs a vector over GF(2^l) into its GF(2) index.
pub fn flatten(xs: &[FieldElement], spec: FieldSpec) -> u32 {
    let l = spec.degree();
    xs.iter()
        .enumerate()
        .fold(0u32, |acc, (i, x)| acc | (x.value() as u32) << (l * i as u32))
}

/// Inverse of [`flatten`] for vectors of length `len`.
pub fn unflatten(index: u32, spec: FieldSpec, len: usize) -> Vec<FieldElement> {
    let l = spec.degree();
    let mask = (1u32 << l) - 1;
    (0..len)
        .map(|i| FieldElement(((index >> (l * i as u32)) & mask) as u8))
        .collect()
}

/// The banded matrix of an LRS map.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LrsMap {
    poly: Poly,
    b: usize,
    rows: Vec<Vec<FieldElement>>,
}

impl LrsMap {
    pub fn poly(&self) -> &Poly {
        &self.poly
    }

    /// Number of rows; the map goes from F_q^{2b} to F_q^b.
    pub fn b(&self) -> usize {
        self.b
    }

    pub fn rows(&self) -> &[Vec<FieldElement>] {
        &self.rows
    }

    pub fn spec(&self) -> FieldSpec {
        self.poly.spec()
    }

    /// Applies the map to a vector of length 2b.
    pub fn apply(&self, x: &[FieldElement]) -> Vec<FieldElement> {
        let f = self.spec();
        self.rows
            .iter()
            .map(|row| {
                row.iter()
                    .zip(x)
                    .fold(FieldElement::ZERO, |acc, (&a, &v)| f.add(acc, f.mul(a, v)))
            })
            .collect()
    }
}

/// Builds the `b × 2b` banded matrix whose row `i` holds the coefficient
/// window of `f` starting at column `i`.
pub fn build_matrix(f: &Poly, b: usize) -> Result<LrsMap> {
    let degree = f.degree().ok_or(Error::ZeroPolynomial)?;
    if degree > b || b == 0 {
        return Err(Error::DegreeExceedsWindow { degree, window: b + 1 });
    }
    let rows = (0..b)
        .map(|i| {
            let mut row = vec![FieldElement::ZERO; 2 * b];
            for j in 0..=b {
                row[i + j] = f.coeff(j);
            }
            row
        })
        .collect();
    Ok(LrsMap { poly: f.clone(), b, rows })
}

/// Reduces `rows` to reduced row echelon form over F_q in place and returns
/// the pivot column of each nonzero row.
pub fn row_reduce(spec: FieldSpec, rows: &mut Vec<Vec<FieldElement>>) -> Vec<usize> {
    let cols = rows.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = spec.inv(rows[r][c]).expect("pivot is nonzero");
        for v in rows[r].iter_mut() {
            *v = spec.mul(*v, inv);
        }
        for i in 0..rows.len() {
            if i == r || rows[i][c].is_zero() {
                continue;
            }
            let factor = rows[i][c];
            let pivot = rows[r].clone();
            for (x, p) in rows[i].iter_mut().zip(pivot) {
                *x = spec.add(*x, spec.mul(factor, p));
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    rows.truncate(r);
    pivots
}

/// Rank of a matrix over F_q.
pub fn fq_rank(spec: FieldSpec, rows: &[Vec<FieldElement>]) -> usize {
    let mut work = rows.to_vec();
    row_reduce(spec, &mut work).len()
}

/// Rank over GF(2) of a set of bit vectors.
pub fn gf2_rank(vectors: impl IntoIterator<Item = u32>) -> usize {
    let mut basis: Vec<u32> = Vec::new();
    for mut v in vectors {
        for &b in &basis {
            v = v.min(v ^ b);
        }
        if v != 0 {
            basis.push(v);
            basis.sort_unstable_by(|a, b| b.cmp(a));
        }
    }
    basis.len()
}

/// A GF(2)-linear subspace of F_2^n, kept both as a basis and as its sorted
/// list of elements. Equality compares the element sets, not the bases.
#[derive(Clone, Debug)]
pub struct Subspace {
    n: usize,
    basis: Vec<u32>,
    vectors: Vec<u32>,
}

impl PartialEq for Subspace {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.vectors == other.vectors
    }
}

impl Eq for Subspace {}

impl std::hash::Hash for Subspace {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.n.hash(state);
        self.vectors.hash(state);
    }
}

impl Subspace {
    /// Spans the given vectors; they must be linearly independent.
    pub fn from_basis(n: usize, basis: Vec<u32>) -> Self {
        let mut vectors = Vec::with_capacity(1 << basis.len());
        let mut acc = 0u32;
        vectors.push(0);
        // Gray-code walk through all combinations.
        for step in 1u32..(1 << basis.len()) {
            acc ^= basis[step.trailing_zeros() as usize];
            vectors.push(acc);
        }
        vectors.sort_unstable();
        debug_assert!(vectors.windows(2).all(|w| w[0] < w[1]), "basis is dependent");
        Subspace { n, basis, vectors }
    }

    /// Ambient dimension n.
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[u32] {
        &self.basis
    }

    /// All 2^dim elements, sorted ascending.
    pub fn vectors(&self) -> &[u32] {
        &self.vectors
    }

    pub fn len(&self) -> usize {
        self.vectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vectors.is_empty()
    }

    pub fn contains(&self, v: u32) -> bool {
        self.vectors.binary_search(&v).is_ok()
    }
}

/// Sorted element list in hexadecimal, e.g. `{0x0, 0x5, 0xa, 0xf}`.
impl fmt::Display for Subspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let width = self.n.div_ceil(4).max(1);
        f.write_str("{")?;
        for (i, v) in self.vectors.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{v:0width$x}")?;
        }
        f.write_str("}")
    }
}

/// Kernel of the map, flattened to F_2^n with n = 2·l·b.
pub fn kernel(map: &LrsMap) -> Result<Subspace> {
    let spec = map.spec();
    let b = map.b;
    let mut rows = map.rows.clone();
    let pivots = row_reduce(spec, &mut rows);
    if pivots.len() < b {
        return Err(Error::DegenerateMap { rank: pivots.len(), expected: b });
    }
    let free: Vec<usize> = (0..2 * b).filter(|c| !pivots.contains(c)).collect();
    let mut basis = Vec::with_capacity(free.len() * spec.degree() as usize);
    for &fc in &free {
        let mut v = vec![FieldElement::ZERO; 2 * b];
        v[fc] = FieldElement::ONE;
        for (row, &pc) in rows.iter().zip(&pivots) {
            v[pc] = row[fc];
        }
        // GF(2)-span of the F_q-line through v
        let mut scalar = FieldElement::ONE;
        for _ in 0..spec.degree() {
            let scaled: Vec<_> = v.iter().map(|&x| spec.mul(x, scalar)).collect();
            basis.push(flatten(&scaled, spec));
            scalar = spec.mul(scalar, spec.alpha());
        }
    }
    let n = 2 * b * spec.degree() as usize;
    Ok(Subspace::from_basis(n, basis))
}

/// Convenience: kernel of the map of `f` with window length b + 1.
pub fn kernel_of(f: &Poly, b: usize) -> Result<Subspace> {
    kernel(&build_matrix(f, b)?)
}

/// The `2b × 2b` stack of the two banded matrices.
pub fn sylvester_matrix(f: &Poly, g: &Poly, b: usize) -> Result<Vec<Vec<FieldElement>>> {
    if f.spec() != g.spec() {
        return Err(Error::SpecMismatch);
    }
    let banded = |p: &Poly| -> Result<Vec<Vec<FieldElement>>> {
        if p.is_zero() {
            Ok(vec![vec![FieldElement::ZERO; 2 * b]; b])
        } else {
            Ok(build_matrix(p, b)?.rows)
        }
    };
    let mut rows = banded(f)?;
    rows.extend(banded(g)?);
    Ok(rows)
}

/// Whether the stacked matrix is invertible over F_q.
pub fn sylvester_resultant_nonzero(f: &Poly, g: &Poly, b: usize) -> Result<bool> {
    if f.is_zero() && g.is_zero() {
        return Err(Error::BothZero);
    }
    let rows = sylvester_matrix(f, g, b)?;
    Ok(fq_rank(f.spec(), &rows) == 2 * b)
}

/// Coprimality of two polynomials viewed as windows of length b + 1: gcd 1,
/// and not both of degree below b (which would be a shared root at infinity).
pub fn window_coprime(f: &Poly, g: &Poly, b: usize) -> Result<bool> {
    let full = f.degree() == Some(b) || g.degree() == Some(b);
    Ok(full && f.is_coprime(g)?)
}

/// True iff the two subspaces meet only in 0.
pub fn trivial_intersection(a: &Subspace, b: &Subspace) -> Result<bool> {
    if a.n != b.n {
        return Err(Error::DimensionMismatch(a.n, b.n));
    }
    let merged = a.basis.iter().chain(&b.basis).copied();
    Ok(gf2_rank(merged) == a.dim() + b.dim())
}

/// Kernels of a pairwise coprime family, checked to form a partial spread.
pub fn build_partial_spread(family: &[Poly], b: usize) -> Result<Vec<Subspace>> {
    for i in 0..family.len() {
        for j in i + 1..family.len() {
            if !window_coprime(&family[i], &family[j], b)? {
                let note = if family[i].is_coprime(&family[j])? {
                    " (both have degree below the window, sharing the root at infinity)"
                } else {
                    ""
                };
                return Err(Error::NotCoprime {
                    first: i,
                    second: j,
                    first_poly: family[i].to_string(),
                    second_poly: family[j].to_string(),
                    note,
                });
            }
        }
    }
    let spread = family
        .iter()
        .map(|f| kernel_of(f, b))
        .collect::<Result<Vec<_>>>()?;
    for i in 0..spread.len() {
        for j in i + 1..spread.len() {
            if !trivial_intersection(&spread[i], &spread[j])? {
                let common = spread[i]
                    .vectors()
                    .iter()
                    .copied()
                    .find(|&v| v != 0 && spread[j].contains(v))
                    .unwrap_or(0);
                return Err(Error::OverlapDetected(common));
            }
        }
    }
    Ok(spread)
}

/// Outcome of [`coprimality_triangle`].
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct TriangleReport {
    pub pairs: usize,
    /// `(f, g, b)` where gcd, Sylvester rank and kernel intersection disagree.
    pub disagreements: Vec<(Poly, Poly, usize)>,
}

/// Over all pairs of nonzero polynomials of degree ≤ `max_degree`, with the
/// window fitted to the larger degree: gcd = 1 ⟺ the Sylvester matrix is
/// invertible ⟺ the two kernels meet only in 0.
pub fn coprimality_triangle(spec: FieldSpec, max_degree: usize) -> Result<TriangleReport> {
    let q = spec.order() as u32;
    let polys = (1..q.pow(max_degree as u32 + 1))
        .map(|mut idx| {
            let values: Vec<u32> = (0..=max_degree)
                .map(|_| {
                    let v = idx % q;
                    idx /= q;
                    v
                })
                .collect();
            Poly::from_values(spec, &values)
        })
        .collect::<Result<Vec<_>>>()?;
    let mut report = TriangleReport::default();
    for (i, f) in polys.iter().enumerate() {
        for g in &polys[i..] {
            let b = f.degree().unwrap_or(0).max(g.degree().unwrap_or(0));
            if b == 0 {
                continue;
            }
            let gcd_one = f.gcd(g)?.is_one();
            let sylvester = sylvester_resultant_nonzero(f, g, b)?;
            let disjoint = trivial_intersection(&kernel_of(f, b)?, &kernel_of(g, b)?)?;
            report.pairs += 1;
            if gcd_one != sylvester || sylvester != disjoint {
                report.disagreements.push((f.clone(), g.clone(), b));
            }
        }
    }
    Ok(report)
}
