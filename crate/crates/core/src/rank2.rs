//! 2-rank of a Boolean function and the rank windows of known bent classes.
//!
//! The 2-rank is the GF(2) rank of `A_f(x, y) = f(x ⊕ y)`. Functions with
//! different ranks are EA-inequivalent; equal ranks prove nothing.

use std::fmt;
use std::str::FromStr;

use crate::boolfun::TruthTable;

/// Dense GF(2) matrix with rows packed into 64-bit words.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BitMatrix {
    rows: usize,
    cols: usize,
    stride: usize,
    data: Vec<u64>,
}

impl BitMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        let stride = cols.div_ceil(64);
        BitMatrix { rows, cols, stride, data: vec![0; rows * stride] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = BitMatrix::zeros(n, n);
        for i in 0..n {
            m.set(i, i, true);
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, f: impl Fn(usize, usize) -> bool) -> Self {
        let mut m = BitMatrix::zeros(rows, cols);
        for r in 0..rows {
            for c in 0..cols {
                if f(r, c) {
                    m.set(r, c, true);
                }
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, r: usize) -> &[u64] {
        &self.data[r * self.stride..(r + 1) * self.stride]
    }

    pub fn row_mut(&mut self, r: usize) -> &mut [u64] {
        &mut self.data[r * self.stride..(r + 1) * self.stride]
    }

    pub fn get(&self, r: usize, c: usize) -> bool {
        self.row(r)[c >> 6] >> (c & 63) & 1 == 1
    }

    pub fn set(&mut self, r: usize, c: usize, value: bool) {
        let bit = 1u64 << (c & 63);
        let w = &mut self.row_mut(r)[c >> 6];
        if value {
            *w |= bit;
        } else {
            *w &= !bit;
        }
    }
}

/// `A_f` with row `x`, column `y` holding `f(x ⊕ y)`.
pub fn development_matrix(tt: &TruthTable) -> BitMatrix {
    let size = tt.len();
    let mut m = BitMatrix::zeros(size, size);
    for x in 0..size {
        tt.translate_into(x, m.row_mut(x));
    }
    m
}

/// Rank over GF(2) by XOR row reduction.
///
/// Each row is reduced against the pivots found so far; a surviving row
/// becomes a new pivot row keyed by its lowest set bit.
pub fn rank_gf2(matrix: &BitMatrix) -> usize {
    let stride = matrix.stride;
    let mut pivots: Vec<(usize, u64)> = Vec::new();
    let mut basis: Vec<u64> = Vec::new();
    let mut row = vec![0u64; stride];
    for r in 0..matrix.rows {
        row.copy_from_slice(matrix.row(r));
        for (k, &(word, bit)) in pivots.iter().enumerate() {
            if row[word] & bit != 0 {
                for (dst, src) in row.iter_mut().zip(&basis[k * stride..(k + 1) * stride]) {
                    *dst ^= src;
                }
            }
        }
        if let Some(word) = row.iter().position(|&w| w != 0) {
            let bit = row[word] & row[word].wrapping_neg();
            pivots.push((word, bit));
            basis.extend_from_slice(&row);
            if pivots.len() == matrix.rows.min(matrix.cols) {
                break;
            }
        }
    }
    pivots.len()
}

/// 2-rank of a Boolean function.
pub fn two_rank(tt: &TruthTable) -> usize {
    rank_gf2(&development_matrix(tt))
}

/// Rank window `(2m + 2, 2^{m+1} − 2)` of Maiorana–McFarland bent functions.
pub fn mm_rank_bounds(m: u32) -> (u64, u64) {
    (2 * m as u64 + 2, (1u64 << (m + 1)) - 2)
}

fn binomial(n: u64, k: u64) -> u64 {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

/// Rank window of Desarguesian partial-spread bent functions:
/// `(2^{m+1} − 2, Σ_i C(m, i) · 2^{min(i, m−i)})`.
pub fn ds_rank_bounds(m: u32) -> (u64, u64) {
    let m64 = m as u64;
    let upper = (0..=m64).map(|i| binomial(m64, i) << i.min(m64 - i)).sum();
    ((1u64 << (m + 1)) - 2, upper)
}

/// The strongest inequivalence a rank value proves.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Classification {
    WithinMmRange,
    BeyondMm,
    BeyondDs,
}

impl Classification {
    pub fn as_str(self) -> &'static str {
        match self {
            Classification::WithinMmRange => "within-MM-range",
            Classification::BeyondMm => "beyond-MM",
            Classification::BeyondDs => "beyond-DS",
        }
    }
}

impl fmt::Display for Classification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Classification {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "within-MM-range" => Ok(Classification::WithinMmRange),
            "beyond-MM" => Ok(Classification::BeyondMm),
            "beyond-DS" => Ok(Classification::BeyondDs),
            other => Err(format!("unknown classification {other:?}")),
        }
    }
}

/// Boundary values (exactly UB_MM, exactly UB_DS) stay in the lower class.
pub fn classify(rank: u64, m: u32) -> Classification {
    if rank > ds_rank_bounds(m).1 {
        Classification::BeyondDs
    } else if rank > mm_rank_bounds(m).1 {
        Classification::BeyondMm
    } else {
        Classification::WithinMmRange
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RankReport {
    pub rank: usize,
    pub m: u32,
    pub classification: Classification,
}

pub fn rank_report(tt: &TruthTable) -> RankReport {
    let rank = two_rank(tt);
    let m = (tt.n() / 2) as u32;
    RankReport { rank, m, classification: classify(rank as u64, m) }
}
