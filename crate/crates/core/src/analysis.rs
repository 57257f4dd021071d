//! Batch construction and analysis of families, histogram aggregation, and
//! the CSV dataset format.

use std::collections::{BTreeMap, HashMap};
use std::io::{Read, Write};

use rayon::prelude::*;

use crate::boolfun::{algebraic_degree, anf, nonlinearity, walsh_transform, TruthTable};
use crate::error::{Error, Result};
use crate::families::{build_bent, FamilySpec, SpreadType};
use crate::rank2::{classify, two_rank, Classification};

pub const CSV_HEADER: [&str; 11] = [
    "family_id",
    "type",
    "l",
    "b",
    "polys",
    "tt_hex",
    "weight",
    "degree",
    "nonlinearity",
    "rank",
    "classification",
];

/// One constructed function and its invariants.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FunctionRecord {
    pub family_id: usize,
    pub spread_type: SpreadType,
    pub l: u32,
    pub b: usize,
    pub polys: String,
    pub tt: TruthTable,
    pub weight: usize,
    pub degree: u32,
    pub nonlinearity: u32,
    pub rank: usize,
    pub classification: Classification,
}

/// Weight, degree, nonlinearity and 2-rank of a truth table.
pub fn analyze(tt: &TruthTable) -> (usize, u32, u32, usize) {
    let spectrum = walsh_transform(tt);
    (tt.weight(), algebraic_degree(&anf(tt)), nonlinearity(&spectrum), two_rank(tt))
}

pub fn analyze_family(family: &FamilySpec) -> Result<FunctionRecord> {
    let tt = build_bent(family)?;
    let (weight, degree, nl, rank) = analyze(&tt);
    Ok(FunctionRecord {
        family_id: family.id,
        spread_type: family.spread_type,
        l: family.spec.degree(),
        b: family.b,
        polys: family.polys_text(),
        tt,
        weight,
        degree,
        nonlinearity: nl,
        rank,
        classification: classify(rank as u64, family.m() as u32),
    })
}

/// Builds and analyzes every family on `jobs` worker threads (0 = all cores).
/// Results come back in input order whatever the thread count.
pub fn sweep(families: &[FamilySpec], jobs: usize) -> Result<Vec<FunctionRecord>> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs)
        .build()
        .map_err(|e| Error::UnsupportedParameters(format!("thread pool: {e}")))?;
    pool.install(|| families.par_iter().map(analyze_family).collect())
}

pub fn rank_histogram(records: &[FunctionRecord]) -> BTreeMap<usize, usize> {
    let mut hist = BTreeMap::new();
    for r in records {
        *hist.entry(r.rank).or_insert(0) += 1;
    }
    hist
}

/// Pairs of records `(first_id, second_id)` whose truth tables coincide.
pub fn support_collisions(records: &[FunctionRecord]) -> Vec<(usize, usize)> {
    let mut seen: HashMap<&TruthTable, usize> = HashMap::new();
    let mut collisions = Vec::new();
    for r in records {
        if let Some(&first) = seen.get(&r.tt) {
            collisions.push((first, r.family_id));
        } else {
            seen.insert(&r.tt, r.family_id);
        }
    }
    collisions
}

pub fn write_csv<W: Write>(records: &[FunctionRecord], out: W) -> Result<()> {
    let io_err = |e: csv::Error| Error::UnsupportedParameters(format!("csv output: {e}"));
    let mut w = csv::Writer::from_writer(out);
    w.write_record(CSV_HEADER).map_err(io_err)?;
    for r in records {
        w.write_record([
            r.family_id.to_string(),
            r.spread_type.to_string(),
            r.l.to_string(),
            r.b.to_string(),
            r.polys.clone(),
            r.tt.to_hex(),
            r.weight.to_string(),
            r.degree.to_string(),
            r.nonlinearity.to_string(),
            r.rank.to_string(),
            r.classification.to_string(),
        ])
        .map_err(io_err)?;
    }
    w.flush().map_err(|e| Error::UnsupportedParameters(format!("csv output: {e}")))?;
    Ok(())
}

/// Reads records written by [`write_csv`]. The recorded invariants are taken
/// as-is; use [`analyze`] on `tt` to re-derive them.
pub fn read_csv<R: Read>(input: R) -> Result<Vec<FunctionRecord>> {
    let bad = |what: String| Error::ManifestParse(what);
    let mut reader = csv::Reader::from_reader(input);
    let header = reader.headers().map_err(|e| bad(e.to_string()))?.clone();
    if header.iter().ne(CSV_HEADER) {
        return Err(bad(format!("unexpected CSV header {header:?}")));
    }
    let mut records = Vec::new();
    for row in reader.records() {
        let row = row.map_err(|e| bad(e.to_string()))?;
        let field = |i: usize| row.get(i).unwrap_or_default();
        let num = |i: usize| -> Result<usize> {
            field(i).parse().map_err(|_| bad(format!("column {} is not a number: {:?}", CSV_HEADER[i], field(i))))
        };
        let l = num(2)? as u32;
        let b = num(3)?;
        let n = 2 * l as usize * b;
        records.push(FunctionRecord {
            family_id: num(0)?,
            spread_type: field(1).parse()?,
            l,
            b,
            polys: field(4).to_string(),
            tt: TruthTable::from_hex(n, field(5))?,
            weight: num(6)?,
            degree: num(7)? as u32,
            nonlinearity: num(8)? as u32,
            rank: num(9)?,
            classification: field(10).parse().map_err(bad)?,
        });
    }
    Ok(records)
}
