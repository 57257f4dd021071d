//! Boolean functions as packed truth tables, and their Walsh and ANF views.
//!
//! Table index `i` encodes the input `(x_1, ..., x_n)` with `x_1` as the most
//! significant bit, so bit position `p` of an index is variable `x_{n-p}`.
//! Storage packs 64 entries per word, entry `i` in word `i / 64`, bit `i % 64`.
//!
//! The text form is lowercase hex of the table read as one bit string
//! `f(0) f(1) ... f(2^n - 1)`, four entries per digit with the lowest index
//! in the digit's top bit. The 16-entry table `0000 0110 0011 0101` is `0635`.

use std::fmt;

use crate::error::{Error, Result};
use crate::lrs_spread::Subspace;

/// Masks selecting, within a word, the positions whose bit `k` is clear.
const LOW_HALF: [u64; 6] = [
    0x5555_5555_5555_5555,
    0x3333_3333_3333_3333,
    0x0f0f_0f0f_0f0f_0f0f,
    0x00ff_00ff_00ff_00ff,
    0x0000_ffff_0000_ffff,
    0x0000_0000_ffff_ffff,
];

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TruthTable {
    n: usize,
    words: Vec<u64>,
}

impl TruthTable {
    pub fn zero(n: usize) -> Self {
        assert!(n <= 24, "arity {n} too large for a dense table");
        TruthTable { n, words: vec![0; (1usize << n).div_ceil(64)] }
    }

    pub fn one(n: usize) -> Self {
        let mut tt = TruthTable::zero(n);
        for i in 0..tt.len() {
            tt.set(i, true);
        }
        tt
    }

    pub fn from_fn(n: usize, mut f: impl FnMut(usize) -> bool) -> Self {
        let mut tt = TruthTable::zero(n);
        for i in 0..tt.len() {
            if f(i) {
                tt.set(i, true);
            }
        }
        tt
    }

    pub fn from_bits(bits: &[bool]) -> Self {
        assert!(bits.len().is_power_of_two(), "table length must be a power of two");
        let n = bits.len().trailing_zeros() as usize;
        TruthTable::from_fn(n, |i| bits[i])
    }

    pub fn from_support(n: usize, support: impl IntoIterator<Item = u32>) -> Self {
        let mut tt = TruthTable::zero(n);
        for x in support {
            tt.set(x as usize, true);
        }
        tt
    }

    pub fn from_words(n: usize, words: Vec<u64>) -> Self {
        let mut tt = TruthTable::zero(n);
        assert_eq!(words.len(), tt.words.len());
        tt.words = words;
        tt.mask_tail();
        tt
    }

    fn mask_tail(&mut self) {
        if self.n < 6 {
            self.words[0] &= (1u64 << (1 << self.n)) - 1;
        }
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    /// Number of entries, 2^n.
    #[inline]
    pub fn len(&self) -> usize {
        1 << self.n
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    #[inline]
    pub fn words(&self) -> &[u64] {
        &self.words
    }

    #[inline]
    pub fn get(&self, i: usize) -> bool {
        (self.words[i >> 6] >> (i & 63)) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, i: usize, value: bool) {
        let bit = 1u64 << (i & 63);
        if value {
            self.words[i >> 6] |= bit;
        } else {
            self.words[i >> 6] &= !bit;
        }
    }

    pub fn weight(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn support(&self) -> Vec<u32> {
        (0..self.len()).filter(|&i| self.get(i)).map(|i| i as u32).collect()
    }

    pub fn bits(&self) -> Vec<bool> {
        (0..self.len()).map(|i| self.get(i)).collect()
    }

    /// `(-1)^f(x)` for every x.
    pub fn polarity(&self) -> Vec<i32> {
        (0..self.len()).map(|i| if self.get(i) { -1 } else { 1 }).collect()
    }

    /// Writes the table of `y ↦ f(y ⊕ a)` into `out`.
    pub fn translate_into(&self, a: usize, out: &mut [u64]) {
        debug_assert_eq!(out.len(), self.words.len());
        let word_shift = a >> 6;
        for (j, dst) in out.iter_mut().enumerate() {
            let mut w = self.words[j ^ word_shift];
            for (k, mask) in LOW_HALF.iter().enumerate() {
                if a >> k & 1 == 1 {
                    let s = 1 << k;
                    w = ((w & mask) << s) | ((w >> s) & mask);
                }
            }
            *dst = w;
        }
        if self.n < 6 {
            out[0] &= (1u64 << (1 << self.n)) - 1;
        }
    }

    pub fn to_hex(&self) -> String {
        let digits = self.len().div_ceil(4);
        (0..digits)
            .map(|d| {
                let nibble = (0..4).fold(0u32, |acc, r| {
                    let i = 4 * d + r;
                    acc << 1 | (i < self.len() && self.get(i)) as u32
                });
                char::from_digit(nibble, 16).unwrap()
            })
            .collect()
    }

    pub fn from_hex(n: usize, text: &str) -> Result<Self> {
        let err = |reason| Error::TruthTableParse { input: text.to_string(), n, reason };
        if n > 24 {
            return Err(err("arity too large"));
        }
        let mut tt = TruthTable::zero(n);
        if text.len() != tt.len().div_ceil(4) {
            return Err(err("wrong number of hex digits"));
        }
        for (d, ch) in text.chars().enumerate() {
            let nibble = ch.to_digit(16).ok_or_else(|| err("non-hex character"))?;
            for r in 0..4 {
                let on = nibble >> (3 - r) & 1 == 1;
                let i = 4 * d + r;
                if i < tt.len() {
                    tt.set(i, on);
                } else if on {
                    return Err(err("padding bits must be zero"));
                }
            }
        }
        Ok(tt)
    }
}

impl fmt::Display for TruthTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_hex())
    }
}

/// Walsh–Hadamard spectrum, indexed like the truth table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WalshSpectrum {
    n: usize,
    values: Vec<i32>,
}

impl WalshSpectrum {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn values(&self) -> &[i32] {
        &self.values
    }

    pub fn max_abs(&self) -> u32 {
        self.values.iter().map(|v| v.unsigned_abs()).max().unwrap_or(0)
    }

    /// Σ W(a)², which must equal 2^{2n}.
    pub fn parseval_sum(&self) -> u64 {
        self.values.iter().map(|&v| (v as i64 * v as i64) as u64).sum()
    }
}

/// Fast Walsh–Hadamard transform of the polarity table.
pub fn walsh_transform(tt: &TruthTable) -> WalshSpectrum {
    let mut v = tt.polarity();
    let len = v.len();
    let mut h = 1;
    while h < len {
        for block in v.chunks_exact_mut(2 * h) {
            let (lo, hi) = block.split_at_mut(h);
            for (a, b) in lo.iter_mut().zip(hi.iter_mut()) {
                let (x, y) = (*a, *b);
                *a = x + y;
                *b = x - y;
            }
        }
        h *= 2;
    }
    WalshSpectrum { n: tt.n, values: v }
}

/// `2^{n-1} − max|W| / 2`.
pub fn nonlinearity(spectrum: &WalshSpectrum) -> u32 {
    let half = if spectrum.n == 0 { 0 } else { 1u32 << (spectrum.n - 1) };
    half - spectrum.max_abs() / 2
}

/// True iff every Walsh coefficient has absolute value 2^{n/2}.
pub fn is_bent(tt: &TruthTable) -> Result<bool> {
    if tt.n % 2 == 1 {
        return Err(Error::OddArity(tt.n));
    }
    let target = 1u32 << (tt.n / 2);
    Ok(walsh_transform(tt).values.iter().all(|v| v.unsigned_abs() == target))
}

/// In-place binary Möbius (subset-sum) transform; an involution.
fn moebius_in_place(n: usize, words: &mut [u64]) {
    for (k, mask) in LOW_HALF.iter().enumerate().take(n.min(6)) {
        let s = 1 << k;
        for w in words.iter_mut() {
            *w ^= (*w & mask) << s;
        }
    }
    for k in 6..n {
        let stride = 1 << (k - 6);
        for j in 0..words.len() {
            if j & stride == 0 {
                words[j | stride] ^= words[j];
            }
        }
    }
}

/// Algebraic normal form: bit `I` is set iff the monomial `Π_{i∈I} x_i`
/// appears, with the same bit-to-variable mapping as table indices.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Anf {
    coeffs: TruthTable,
}

impl Anf {
    pub fn n(&self) -> usize {
        self.coeffs.n
    }

    /// Coefficients indexed like a truth table.
    pub fn coefficients(&self) -> &TruthTable {
        &self.coeffs
    }

    pub fn coefficient(&self, monomial: usize) -> bool {
        self.coeffs.get(monomial)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.weight() == 0
    }

    /// Monomial indices with coefficient 1.
    pub fn monomials(&self) -> Vec<u32> {
        self.coeffs.support()
    }

    /// Variables (1-based) of a monomial index, ascending.
    pub fn variables(&self, monomial: u32) -> Vec<usize> {
        let n = self.n();
        (0..n).filter(|&p| monomial >> p & 1 == 1).map(|p| n - p).rev().collect()
    }

    pub fn to_truth_table(&self) -> TruthTable {
        let mut words = self.coeffs.words.clone();
        moebius_in_place(self.n(), &mut words);
        TruthTable::from_words(self.n(), words)
    }
}

/// `x1x3 + x2x3 + x2x4`: monomials by decreasing degree, then by variables.
impl fmt::Display for Anf {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut terms: Vec<Vec<usize>> =
            self.monomials().into_iter().map(|m| self.variables(m)).collect();
        if terms.is_empty() {
            return f.write_str("0");
        }
        terms.sort_by(|a, b| b.len().cmp(&a.len()).then_with(|| a.cmp(b)));
        let rendered: Vec<String> = terms
            .iter()
            .map(|vars| {
                if vars.is_empty() {
                    "1".to_string()
                } else {
                    vars.iter().map(|v| format!("x{v}")).collect()
                }
            })
            .collect();
        f.write_str(&rendered.join(" + "))
    }
}

/// The binary Möbius transform of a table, read back as a table.
pub fn moebius_transform(tt: &TruthTable) -> TruthTable {
    let mut words = tt.words.clone();
    moebius_in_place(tt.n, &mut words);
    TruthTable::from_words(tt.n, words)
}

pub fn anf(tt: &TruthTable) -> Anf {
    Anf { coeffs: moebius_transform(tt) }
}

/// Largest monomial size; 0 for constants (see [`Anf::is_zero`]).
pub fn algebraic_degree(anf: &Anf) -> u32 {
    anf.monomials().iter().map(|m| m.count_ones()).max().unwrap_or(0)
}

/// PS⁻ or PS⁺ function whose support is the union of the spread members.
pub fn from_spread(spread: &[Subspace], plus_type: bool) -> Result<TruthTable> {
    let first = spread.first().ok_or(Error::WrongSpreadSize { expected: 1, actual: 0 })?;
    let n = first.n();
    let m = n / 2;
    let expected = (1usize << m.saturating_sub(1)) + plus_type as usize;
    if spread.len() != expected {
        return Err(Error::WrongSpreadSize { expected, actual: spread.len() });
    }
    let mut tt = TruthTable::zero(n);
    for s in spread {
        if s.n() != n {
            return Err(Error::DimensionMismatch(n, s.n()));
        }
        if s.len() != 1 << m {
            return Err(Error::WrongSubspaceSize { expected: 1 << m, actual: s.len() });
        }
        for &v in s.vectors().iter().filter(|&&v| v != 0) {
            if tt.get(v as usize) {
                return Err(Error::OverlapDetected(v));
            }
            tt.set(v as usize, true);
        }
    }
    tt.set(0, plus_type);
    Ok(tt)
}
