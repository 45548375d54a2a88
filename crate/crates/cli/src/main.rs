//! `wpec`: table generation, exhaustive verification and decoding.
//!
//! Exit codes: 0 when every check passes, 1 when a check finds a violation
//! or a mismatch, 2 on usage or input errors.

use std::fs;
use std::io::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use wpec_core::bits::to_bitstring;
use wpec_core::circuit::{CircuitConfig, CircuitFamily, CnotOrdering, FaultCatalog};
use wpec_core::claims::{concat_checks, golay_checks, report_text, steane_checks, ClaimCheck};
use wpec_core::par::Exec;
use wpec_core::protocol::{decode_bundle, DecodePath, OutcomeBundle, SideDecode};
use wpec_core::verifier::{
    build_lookup_table, reproduce_table1, run_appendix_b, verify_uniqueness, Condition,
    LookupTable, TABLE1_GOLDEN,
};
use wpec_core::wpec::{build_correction_table, CorrectionTable};

/// Violations spelled out in appendix-a text reports.
const WITNESSES: usize = 20;

#[derive(Parser, Debug)]
#[command(
    name = "wpec",
    version,
    about = "Weight-parity error correction toolkit"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Code the command applies to.
    #[arg(long, value_enum, global = true)]
    code: Option<Code>,

    /// Largest number of faults enumerated.
    #[arg(long, global = true, default_value_t = 3, value_parser = clap::value_parser!(u8).range(1..=3))]
    max_faults: u8,

    /// CNOT order of the second-level circuits.
    #[arg(long, value_enum, global = true, default_value_t = Ordering::Permuted)]
    ordering: Ordering,

    /// Drop the flag qubits from the first-level circuits.
    #[arg(long, global = true)]
    no_flags: bool,

    /// Worker threads; 0 picks one per core, 1 runs sequentially.
    #[arg(long, global = true, env = "WPEC_WORKERS", default_value_t = 0)]
    workers: usize,

    /// Write the result here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    #[arg(long, value_enum, global = true, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Correction table (steane, golay) or fault lookup table (concat49).
    GenTable,
    /// Exhaustive checks of the weight-parity facts for one code, or all.
    VerifyClaims,
    /// Builds the fault lookup table and checks it for conflicting parities.
    VerifyAppendixA,
    /// Marks fault combinations meeting the relaxed conditions.
    VerifyAppendixB,
    /// Decodes an outcome bundle file into a 49-qubit correction.
    Decode {
        bundle: PathBuf,
        /// Lookup table written by `gen-table --code concat49`.
        #[arg(long)]
        table: Option<PathBuf>,
    },
    /// Single ancilla faults of the normal-order first second-level circuit.
    ReproduceTable1,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Code {
    Steane,
    Golay,
    Concat49,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Ordering {
    Permuted,
    Normal,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    JsonLines,
}

struct Report {
    text: String,
    records: Vec<Value>,
    passed: bool,
}

impl Cli {
    fn config(&self) -> CircuitConfig {
        CircuitConfig {
            ordering: match self.ordering {
                Ordering::Permuted => CnotOrdering::Permuted,
                Ordering::Normal => CnotOrdering::Normal,
            },
            flags: !self.no_flags,
        }
    }

    fn exec(&self) -> Exec {
        Exec::with_workers(self.workers)
    }

    fn lookup_table(&self) -> (FaultCatalog, LookupTable) {
        let family = CircuitFamily::new(self.config());
        let catalog = FaultCatalog::build(&family);
        let table = build_lookup_table(&catalog, self.max_faults as usize, self.exec());
        (catalog, table)
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(&cli).and_then(|r| emit(&cli, &r).map(|_| r.passed)) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn emit(cli: &Cli, report: &Report) -> Result<()> {
    let body = match cli.format {
        Format::Text => report.text.clone(),
        Format::JsonLines => {
            let mut s = String::new();
            for r in &report.records {
                s.push_str(&serde_json::to_string(r)?);
                s.push('\n');
            }
            s
        }
    };
    match &cli.out {
        Some(path) => fs::write(path, body).with_context(|| format!("writing {}", path.display())),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(body.as_bytes())?;
            Ok(stdout.flush()?)
        }
    }
}

fn run(cli: &Cli) -> Result<Report> {
    match &cli.command {
        Command::GenTable => gen_table(cli),
        Command::VerifyClaims => verify_claims(cli),
        Command::VerifyAppendixA => verify_appendix_a(cli),
        Command::VerifyAppendixB => verify_appendix_b(cli),
        Command::Decode { bundle, table } => decode(cli, bundle, table.as_ref()),
        Command::ReproduceTable1 => table1(),
    }
}

fn result_record(passed: bool) -> Value {
    json!({ "result": if passed { "pass" } else { "fail" } })
}

/// One record per whitespace-separated line, fields named by `keys`.
fn line_records(text: &str, keys: &[&str]) -> Vec<Value> {
    text.lines()
        .filter(|l| !l.starts_with('#'))
        .map(|l| {
            let map = keys
                .iter()
                .zip(l.split_whitespace())
                .map(|(k, v)| (k.to_string(), Value::from(v)))
                .collect();
            Value::Object(map)
        })
        .collect()
}

fn gen_table(cli: &Cli) -> Result<Report> {
    match cli.code.unwrap_or(Code::Concat49) {
        Code::Steane | Code::Golay => {
            let table = build_correction_table()?;
            let mut text = table.to_text();
            if cli.code == Some(Code::Steane) {
                text = text
                    .lines()
                    .filter(|l| !l.starts_with("golay"))
                    .map(|l| format!("{l}\n"))
                    .collect();
            } else {
                text = text
                    .lines()
                    .filter(|l| !l.starts_with("steane"))
                    .map(|l| format!("{l}\n"))
                    .collect();
            }
            let records = line_records(&text, &["family", "syndrome", "operator"]);
            Ok(Report {
                text,
                records,
                passed: true,
            })
        }
        Code::Concat49 => {
            let (_, table) = cli.lookup_table();
            let text = table.to_text();
            let records = line_records(&text, &["s_x", "s_tilde", "tau", "f", "p", "condition"]);
            Ok(Report {
                text,
                records,
                passed: true,
            })
        }
    }
}

fn verify_claims(cli: &Cli) -> Result<Report> {
    let table = build_correction_table()?;
    let codes = match cli.code {
        Some(c) => vec![c],
        None => vec![Code::Steane, Code::Golay, Code::Concat49],
    };
    let mut checks: Vec<ClaimCheck> = Vec::new();
    for code in codes {
        checks.extend(match code {
            Code::Steane => steane_checks(&table),
            Code::Golay => golay_checks(&table, cli.exec()),
            Code::Concat49 => concat_checks(&table, cli.exec()),
        });
    }
    let passed = checks.iter().all(ClaimCheck::passed);
    let mut records: Vec<Value> = checks
        .iter()
        .map(|c| {
            json!({
                "check": c.name,
                "checked": c.checked,
                "failures": c.failures,
                "detail": c.detail,
            })
        })
        .collect();
    records.push(result_record(passed));
    Ok(Report {
        text: report_text(&checks),
        records,
        passed,
    })
}

fn verify_appendix_a(cli: &Cli) -> Result<Report> {
    if cli.code.is_some_and(|c| c != Code::Concat49) {
        bail!("verify-appendix-a applies to concat49 only");
    }
    let (catalog, table) = cli.lookup_table();
    let report = verify_uniqueness(&table, cli.config(), cli.max_faults as usize);
    let mut records: Vec<Value> = report
        .counts
        .iter()
        .map(|(c, n)| json!({ "fault_numbers": c.short(), "combinations": n }))
        .collect();
    records.push(json!({
        "records": report.records,
        "partitions": report.partitions,
        "condition1": report.condition1,
        "condition2": report.condition2,
        "violating_partitions": report.violating_partitions,
        "violations": report.violations.len(),
    }));
    for v in &report.violations {
        records.push(json!({
            "violation": {
                "s_tilde": to_bitstring(v.s_tilde as u64, 3),
                "tau": to_bitstring(v.tau as u64, 7),
                "s_x": to_bitstring(v.first.s_x() as u64, 21),
                "f": to_bitstring(v.first.f() as u64, 21),
                "first": { "p": v.first.parity().to_string(), "faults": v.first.rep.describe(&catalog) },
                "second": { "p": v.second.parity().to_string(), "faults": v.second.rep.describe(&catalog) },
            }
        }));
    }
    records.push(result_record(report.passed()));
    Ok(Report {
        text: report.to_text(&catalog, WITNESSES),
        records,
        passed: report.passed(),
    })
}

fn verify_appendix_b(cli: &Cli) -> Result<Report> {
    if cli.code.is_some_and(|c| c != Code::Concat49) {
        bail!("verify-appendix-b applies to concat49 only");
    }
    let family = CircuitFamily::new(cli.config());
    let catalog = FaultCatalog::build(&family);
    let report = run_appendix_b(&catalog, cli.max_faults as usize, cli.exec());
    let mut records: Vec<Value> = report
        .counts
        .iter()
        .map(|(c, n, k)| json!({ "fault_numbers": c.long(), "evaluated": n, "marked": k }))
        .collect();
    for (m, p) in &report.marked {
        records.push(json!({
            "marked": m.counts.long(),
            "a": m.rep_a.describe(&catalog),
            "b": m.rep_b.describe(&catalog),
            "pattern": m.block_pattern(),
            "placements": p.placements,
            "consistent": p.consistent,
            "max_weight": p.max_weight,
            "harmful": p.harmful,
        }));
    }
    records.push(json!({ "marked": report.marked.len(), "harmful": report.harmful() }));
    records.push(result_record(report.passed()));
    Ok(Report {
        text: report.to_text(&catalog),
        records,
        passed: report.passed(),
    })
}

fn path_name(p: DecodePath) -> &'static str {
    match p {
        DecodePath::Table(Condition::Condition1) => "condition1",
        DecodePath::Table(Condition::Condition2) => "condition2",
        DecodePath::Table(Condition::Violation) => "violation",
        DecodePath::Missing => "missing",
        DecodePath::Unmatched => "unmatched",
    }
}

fn side_record(s: &SideDecode) -> Value {
    json!({
        "path": path_name(s.path),
        "parity": s.parity.to_string(),
        "step3_block": s.step3_block.map(|b| b + 1),
    })
}

fn decode(cli: &Cli, bundle: &PathBuf, table: Option<&PathBuf>) -> Result<Report> {
    let text =
        fs::read_to_string(bundle).with_context(|| format!("reading {}", bundle.display()))?;
    let b: OutcomeBundle = text
        .parse()
        .with_context(|| format!("parsing {}", bundle.display()))?;
    let lookup = match table {
        Some(path) => {
            let text =
                fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
            LookupTable::from_text(&text).with_context(|| format!("parsing {}", path.display()))?
        }
        None => cli.lookup_table().1,
    };
    let correction: CorrectionTable = build_correction_table()?;
    let d = decode_bundle(&b, &lookup, &correction);
    for (sector, side) in [("Z", &d.z), ("X", &d.x)] {
        if side.path.is_fallback() {
            eprintln!(
                "note: {sector} sector fell back to all-odd parity ({}){}",
                path_name(side.path),
                side.step3_block
                    .map(|b| format!(", logical operator on block {}", b + 1))
                    .unwrap_or_default()
            );
        }
    }
    let c = d.correction().to_string();
    Ok(Report {
        text: format!("{c}\n"),
        records: vec![json!({ "correction": c, "z": side_record(&d.z), "x": side_record(&d.x) })],
        passed: true,
    })
}

fn table1() -> Result<Report> {
    let (rows, text) = reproduce_table1()?;
    let passed = text == TABLE1_GOLDEN;
    let mut records: Vec<Value> = rows
        .iter()
        .map(|r| {
            let line = r.to_line();
            let f: Vec<&str> = line.split_whitespace().collect();
            json!({ "form": f[0], "m": f[1], "s_tilde": f[2], "tau": f[3], "p": f[4] })
        })
        .collect();
    records.push(result_record(passed));
    let text = if passed {
        text
    } else {
        format!("{text}mismatch with the reference table\n")
    };
    Ok(Report {
        text,
        records,
        passed,
    })
}
