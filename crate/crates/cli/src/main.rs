use std::collections::BTreeMap;
use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::Context;
use clap::{Args, Parser, Subcommand, ValueEnum};

use spreadbent_core::analysis::{analyze_family, rank_histogram, support_collisions, sweep, write_csv, FunctionRecord};
use spreadbent_core::boolfun::anf;
use spreadbent_core::families::{
    candidate_pool, count_coprime_families, enumerate_families, nonzero_constant_pool, parse_poly_list,
    verify_lemma2, CandidatePool,
};
use spreadbent_core::lrs_spread::coprimality_triangle;
use spreadbent_core::poly::count_theorem3;
use spreadbent_core::rank2::classify;
use spreadbent_core::{Error, FamilyRule, FamilySpec, FieldSpec, SpreadType};

const EXIT_VERIFY: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_REJECTED: u8 = 3;

/// Construct partial-spread bent functions from kernels of LRS maps and
/// measure their 2-ranks.
#[derive(Parser)]
#[command(name = "spreadbent", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// List the candidate polynomial pool with provenance tags.
    Polys {
        #[command(flatten)]
        params: PoolArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// List every admissible family as a manifest line.
    Families {
        #[command(flatten)]
        params: PoolArgs,
        #[arg(long = "type", value_enum, default_value_t = TypeArg::Minus)]
        spread_type: TypeArg,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Build one function and print its analysis record.
    Build {
        #[command(flatten)]
        params: PoolArgs,
        #[arg(long = "type", value_enum, default_value_t = TypeArg::Minus)]
        spread_type: TypeArg,
        /// Family polynomials, e.g. "[1,0,1];[1,1,1]" (coefficients low to high).
        #[arg(long, conflicts_with = "family_id", required_unless_present = "family_id")]
        polys: Option<String>,
        /// Index into the enumeration printed by `families`.
        #[arg(long)]
        family_id: Option<usize>,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// b = 1, n = 8 sweep over GF(16): 2-rank distribution.
    Table1 {
        #[arg(long = "type", value_enum, default_value_t = TypeArg::Minus)]
        spread_type: TypeArg,
        /// Add the constant 1 (the subspace at infinity) to the pool.
        #[arg(long)]
        include_e_infinity: bool,
        #[command(flatten)]
        sweep: SweepArgs,
    },
    /// b = 2, n = 8 sweeps over GF(4): PS- and PS+ 2-rank distributions.
    Table2 {
        /// Admit every pairwise coprime subset instead of the default rule.
        #[arg(long)]
        all_coprime: bool,
        #[command(flatten)]
        sweep: SweepArgs,
    },
    /// Run the built-in consistency checks.
    Verify,
}

#[derive(Args)]
struct PoolArgs {
    /// Extension degree of the coefficient field GF(2^l).
    #[arg(long)]
    l: u32,
    /// Window length (polynomial degree bound).
    #[arg(long)]
    b: usize,
    /// Add the constant 1 (the subspace at infinity) to the b = 1 pool.
    #[arg(long)]
    include_e_infinity: bool,
    /// Admit every pairwise coprime subset instead of the default rule.
    #[arg(long)]
    all_coprime: bool,
}

#[derive(Args)]
struct OutputArgs {
    /// Write data here instead of standard output.
    #[arg(long)]
    out: Option<PathBuf>,
    /// `csv` turns sweeps into per-function datasets.
    #[arg(long, value_enum, default_value_t = Format::Table)]
    format: Format,
}

#[derive(Args)]
struct SweepArgs {
    /// Worker threads; 0 uses every core.
    #[arg(long, env = "SPREADBENT_JOBS", default_value_t = 0)]
    jobs: usize,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Clone, Copy, ValueEnum)]
enum TypeArg {
    #[value(name = "ps-")]
    Minus,
    #[value(name = "ps+")]
    Plus,
}

impl From<TypeArg> for SpreadType {
    fn from(t: TypeArg) -> Self {
        match t {
            TypeArg::Minus => SpreadType::Minus,
            TypeArg::Plus => SpreadType::Plus,
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Table,
    Csv,
}

/// Error carrying the process exit code.
struct Failure {
    code: u8,
    error: anyhow::Error,
}

impl From<anyhow::Error> for Failure {
    fn from(error: anyhow::Error) -> Self {
        let code = match error.downcast_ref::<Error>() {
            Some(
                Error::NotCoprime { .. }
                | Error::WrongSpreadSize { .. }
                | Error::WrongSubspaceSize { .. }
                | Error::OverlapDetected(_)
                | Error::DegreeExceedsWindow { .. }
                | Error::ZeroPolynomial
                | Error::DegenerateMap { .. }
                | Error::BentCheckFailed,
            ) => EXIT_REJECTED,
            Some(_) => EXIT_USAGE,
            None => 1,
        };
        Failure { code, error }
    }
}

impl From<Error> for Failure {
    fn from(error: Error) -> Self {
        anyhow::Error::new(error).into()
    }
}

fn usage(msg: impl Into<String>) -> Failure {
    Failure { code: EXIT_USAGE, error: anyhow::anyhow!(msg.into()) }
}

type CmdResult = Result<(), Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Polys { params, output } => cmd_polys(&params, &output),
        Command::Families { params, spread_type, output } => cmd_families(&params, spread_type.into(), &output),
        Command::Build { params, spread_type, polys, family_id, output } => {
            cmd_build(&params, spread_type.into(), polys.as_deref(), family_id, &output)
        }
        Command::Table1 { spread_type, include_e_infinity, sweep } => {
            cmd_table1(spread_type.into(), include_e_infinity, &sweep)
        }
        Command::Table2 { all_coprime, sweep } => cmd_table2(all_coprime, &sweep),
        Command::Verify => cmd_verify(),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure { code, error }) => {
            eprintln!("error: {error:#}");
            ExitCode::from(code)
        }
    }
}

fn open_output(output: &OutputArgs) -> Result<Box<dyn Write>, Failure> {
    Ok(match &output.out {
        Some(path) => Box::new(BufWriter::new(
            File::create(path).with_context(|| format!("cannot create {}", path.display()))?,
        )),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

fn io_err(e: io::Error) -> Failure {
    anyhow::Error::new(e).context("write failed").into()
}

fn field_for(l: u32, b: usize) -> Result<FieldSpec, Failure> {
    if l == 0 || b == 0 {
        return Err(usage("--l and --b must be positive"));
    }
    if l as usize * b > 8 {
        return Err(usage(format!(
            "l*b = {} exceeds the supported capacity of 8 (n = 2*l*b <= 16)",
            l as usize * b
        )));
    }
    Ok(FieldSpec::canonical(l)?)
}

fn pool_for(params: &PoolArgs) -> Result<CandidatePool, Failure> {
    let spec = field_for(params.l, params.b)?;
    Ok(candidate_pool(spec, params.b, params.include_e_infinity)?)
}

fn rule_for(all_coprime: bool) -> FamilyRule {
    if all_coprime {
        FamilyRule::AllCoprime
    } else {
        FamilyRule::CompleteIrreducibles
    }
}

fn cmd_polys(params: &PoolArgs, output: &OutputArgs) -> CmdResult {
    let pool = pool_for(params)?;
    let mut out = open_output(output)?;
    if output.format == Format::Csv {
        writeln!(out, "index,poly,pretty,provenance").map_err(io_err)?;
    }
    let mut counts: BTreeMap<&str, usize> = BTreeMap::new();
    for (i, m) in pool.members.iter().enumerate() {
        *counts.entry(m.provenance.as_str()).or_default() += 1;
        match output.format {
            Format::Table => writeln!(out, "{i:>3}  {:<14} {:<24} {}", m.poly.to_string(), m.poly.pretty(), m.provenance),
            Format::Csv => writeln!(out, "{i},\"{}\",{},{}", m.poly, m.poly.pretty(), m.provenance),
        }
        .map_err(io_err)?;
    }
    out.flush().map_err(io_err)?;
    let summary: Vec<String> = counts.iter().map(|(k, v)| format!("{k} {v}")).collect();
    eprintln!("{} polynomials over {}: {}", pool.len(), pool.spec, summary.join(", "));
    Ok(())
}

fn cmd_families(params: &PoolArgs, spread_type: SpreadType, output: &OutputArgs) -> CmdResult {
    let pool = pool_for(params)?;
    let families = enumerate_families(&pool, spread_type, rule_for(params.all_coprime))?;
    let mut out = open_output(output)?;
    if output.format == Format::Csv {
        writeln!(out, "family_id,type,l,b,polys").map_err(io_err)?;
    }
    for f in &families {
        match output.format {
            Format::Table => writeln!(out, "{}", f.manifest_line()),
            Format::Csv => writeln!(out, "{},{},{},{},\"{}\"", f.id, f.spread_type, params.l, params.b, f.polys_text()),
        }
        .map_err(io_err)?;
    }
    out.flush().map_err(io_err)?;
    eprintln!("{} {} families", families.len(), spread_type);
    Ok(())
}

fn cmd_build(
    params: &PoolArgs,
    spread_type: SpreadType,
    polys: Option<&str>,
    family_id: Option<usize>,
    output: &OutputArgs,
) -> CmdResult {
    let spec = field_for(params.l, params.b)?;
    let family = match (polys, family_id) {
        (Some(text), _) => FamilySpec { id: 0, spec, b: params.b, spread_type, polys: parse_poly_list(spec, text)? },
        (None, Some(id)) => {
            let pool = pool_for(params)?;
            let families = enumerate_families(&pool, spread_type, rule_for(params.all_coprime))?;
            let count = families.len();
            families
                .into_iter()
                .nth(id)
                .ok_or_else(|| usage(format!("family id {id} out of range (0..{count})")))?
        }
        (None, None) => return Err(usage("one of --polys or --family-id is required")),
    };
    let record = analyze_family(&family)?;
    let mut out = open_output(output)?;
    match output.format {
        Format::Csv => write_csv(std::slice::from_ref(&record), &mut out)?,
        Format::Table => {
            let lines = [
                ("family", family.manifest_line()),
                ("n", family.n().to_string()),
                ("tt_hex", record.tt.to_hex()),
                ("anf", anf(&record.tt).to_string()),
                ("weight", record.weight.to_string()),
                ("degree", record.degree.to_string()),
                ("nonlinearity", record.nonlinearity.to_string()),
                ("bent", "true".to_string()),
                ("rank", record.rank.to_string()),
                ("classification", record.classification.to_string()),
            ];
            for (key, value) in lines {
                writeln!(out, "{key:<15}{value}").map_err(io_err)?;
            }
        }
    }
    out.flush().map_err(io_err)?;
    Ok(())
}

fn run_sweep(families: &[FamilySpec], jobs: usize) -> Result<Vec<FunctionRecord>, Failure> {
    eprintln!(
        "building {} {} functions on {} threads",
        families.len(),
        families.first().map_or("", |f| f.spread_type.as_str()),
        if jobs == 0 { "all".to_string() } else { jobs.to_string() }
    );
    Ok(sweep(families, jobs)?)
}

fn write_histogram(out: &mut dyn Write, label: &str, records: &[FunctionRecord], m: u32) -> io::Result<()> {
    writeln!(out, "{label}")?;
    writeln!(out, "{:>6} {:>10}  classification", "rank", "functions")?;
    for (rank, count) in rank_histogram(records) {
        writeln!(out, "{rank:>6} {count:>10}  {}", classify(rank as u64, m))?;
    }
    writeln!(out, "{:>6} {:>10}", "total", records.len())
}

fn emit_sweep(sweep_args: &SweepArgs, sections: &[(String, Vec<FunctionRecord>)]) -> CmdResult {
    let mut out = open_output(&sweep_args.output)?;
    match sweep_args.output.format {
        Format::Csv => {
            let all: Vec<FunctionRecord> = sections.iter().flat_map(|(_, r)| r.iter().cloned()).collect();
            write_csv(&all, &mut out)?;
        }
        Format::Table => {
            for (i, (label, records)) in sections.iter().enumerate() {
                if i > 0 {
                    writeln!(out).map_err(io_err)?;
                }
                write_histogram(&mut out, label, records, 4).map_err(io_err)?;
            }
        }
    }
    out.flush().map_err(io_err)?;
    for (label, records) in sections {
        let collisions = support_collisions(records);
        if !collisions.is_empty() {
            eprintln!("warning: {label}: {} families share a support with an earlier one", collisions.len());
        }
    }
    Ok(())
}

fn cmd_table1(spread_type: SpreadType, include_e_infinity: bool, sweep_args: &SweepArgs) -> CmdResult {
    let pool = candidate_pool(FieldSpec::canonical(4)?, 1, include_e_infinity)?;
    let families = enumerate_families(&pool, spread_type, FamilyRule::default())?;
    let records = run_sweep(&families, sweep_args.jobs)?;
    let label = format!("{spread_type} b=1 l=4 n=8");
    emit_sweep(sweep_args, &[(label, records)])
}

fn cmd_table2(all_coprime: bool, sweep_args: &SweepArgs) -> CmdResult {
    let pool = candidate_pool(FieldSpec::canonical(2)?, 2, false)?;
    let mut sections = Vec::new();
    for t in [SpreadType::Minus, SpreadType::Plus] {
        let families = enumerate_families(&pool, t, rule_for(all_coprime))?;
        sections.push((format!("{t} b=2 l=2 n=8"), run_sweep(&families, sweep_args.jobs)?));
    }
    emit_sweep(sweep_args, &sections)
}

fn cmd_verify() -> CmdResult {
    let mut failures = 0;
    let mut report = |line: String, ok: bool| {
        println!("{line}");
        if !ok {
            failures += 1;
        }
    };
    let status = |ok: bool| if ok { "PASS" } else { "FAIL" };

    for (l, d) in [(1, 3), (2, 2)] {
        let spec = FieldSpec::canonical(l)?;
        let r = coprimality_triangle(spec, d)?;
        let ok = r.disagreements.is_empty();
        report(format!("lemma1 q={} deg<={d}: {} ({} pairs)", spec.order(), status(ok), r.pairs), ok);
    }
    for m in 2..=4 {
        let ok = verify_lemma2(m)?;
        report(format!("lemma2 m={m}: {}", status(ok)), ok);
    }
    for (l, b) in [(1u32, 2usize), (2, 2), (3, 2), (4, 1)] {
        let spec = FieldSpec::canonical(l)?;
        let m = l as usize * b;
        let closed = count_theorem3(spec, b, m)?;
        let brute = count_coprime_families(&nonzero_constant_pool(spec, b), 1 << (m - 1))?;
        let ok = closed == brute;
        let relation = if ok { "==" } else { "!=" };
        report(format!("thm3 q={} b={b} m={m}: closed-form {closed} {relation} brute {brute}", spec.order()), ok);
    }
    let pool = candidate_pool(FieldSpec::canonical(1)?, 3, false)?;
    let minus = enumerate_families(&pool, SpreadType::Minus, FamilyRule::default())?;
    let plus = enumerate_families(&pool, SpreadType::Plus, FamilyRule::default())?;
    let built = minus.iter().chain(&plus).map(analyze_family).collect::<Result<Vec<_>, _>>();
    let ok = minus.len() == 5 && plus.len() == 1 && built.as_ref().is_ok_and(|r| r.iter().all(|x| x.degree == 3));
    report(format!("cubic-pool q=2 b=3: {} ({} PS-, {} PS+)", status(ok), minus.len(), plus.len()), ok);
    for (l, b) in [(2u32, 1usize), (1, 2), (3, 1), (1, 3), (2, 2), (4, 1)] {
        let pool = candidate_pool(FieldSpec::canonical(l)?, b, false)?;
        for t in [SpreadType::Minus, SpreadType::Plus] {
            let records = sweep(&enumerate_families(&pool, t, FamilyRule::AllCoprime)?, 0)?;
            let collisions = support_collisions(&records).len();
            let ok = collisions == 0;
            report(
                format!(
                    "injectivity n={} l={l} b={b} {t}: {} ({} functions, {collisions} collisions)",
                    2 * l as usize * b,
                    status(ok),
                    records.len()
                ),
                ok,
            );
        }
    }
    if failures > 0 {
        return Err(Failure { code: EXIT_VERIFY, error: anyhow::anyhow!("{failures} check(s) failed") });
    }
    Ok(())
}
