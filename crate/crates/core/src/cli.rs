// SPDX-License-Identifier: Apache-2.0

//! Command-line front end. Exit codes: 0 success, 1 mismatch or escaped
//! fault, 2 usage or parse error.

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};

use crate::bench::run_bench;
use crate::circuit::Circuit;
use crate::cost::{quantum_cost, CostTable};
use crate::error::{Error, Result};
use crate::faultsim::{run_campaign, Campaign, InputSpace};
use crate::real::{emit_real, parse_real};
use crate::report::count_report;
use crate::simulator::{self, Assignment, ConstantMode, EXHAUSTIVE_LIMIT};
use crate::testability::{parity_zero_violation, preserves_function, transform, TestableCircuit};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "revtest", version, about = "Online-testable reversible circuits")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Parse a .real netlist and print its structure and costs.
    Parse {
        file: PathBuf,
        #[arg(long)]
        csv: bool,
    },
    /// Check reversibility, block parity and function preservation.
    Check { file: PathBuf },
    /// Evaluate one input (line 0 first) or print the full truth table.
    Simulate {
        file: PathBuf,
        /// Bits for every line, or for the non-constant lines only.
        #[arg(long)]
        input: Option<String>,
        #[arg(long)]
        csv: bool,
    },
    /// Apply the testability transformation.
    Transform {
        input: PathBuf,
        /// Where to write the transformed netlist; `-` for standard output.
        output: Option<PathBuf>,
        #[arg(long)]
        csv: bool,
    },
    /// Run a single-fault campaign over every block cut.
    Faultsim {
        file: PathBuf,
        /// Transform the input first instead of reading block provenance.
        #[arg(long)]
        transform: bool,
        #[arg(long, conflicts_with = "samples")]
        exhaustive: bool,
        #[arg(long, requires = "seed")]
        samples: Option<usize>,
        #[arg(long, requires = "samples")]
        seed: Option<u64>,
        /// Print every trial as CSV instead of the summary.
        #[arg(long)]
        csv: bool,
        /// Drop the last checker gate before the campaign (negative control).
        #[arg(long, hide = true)]
        sabotage: bool,
    },
    /// Transform the benchmark corpus and compare against the expected counts.
    Bench {
        #[arg(long)]
        corpus: Option<PathBuf>,
        /// Block count for the literature formula columns (default: each row's own).
        #[arg(long, value_name = "N")]
        literature_n: Option<u64>,
        #[arg(long)]
        csv: bool,
    },
}

/// Parses `args` (program name first) and runs the command.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            if e.use_stderr() {
                let _ = write!(err, "{e}");
                return EXIT_USAGE;
            }
            let _ = write!(out, "{e}");
            return EXIT_OK;
        }
    };
    match execute(cli.command, out, err) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_USAGE
        }
    }
}

pub fn execute(command: Command, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32> {
    match command {
        Command::Parse { file, csv } => cmd_parse(&file, csv, out),
        Command::Check { file } => cmd_check(&file, out),
        Command::Simulate { file, input, csv } => cmd_simulate(&file, input.as_deref(), csv, out),
        Command::Transform { input, output, csv } => {
            cmd_transform(&input, output.as_deref(), csv, out, err)
        }
        Command::Faultsim {
            file,
            transform,
            samples,
            seed,
            csv,
            sabotage,
            ..
        } => {
            let inputs = match (samples, seed) {
                (Some(count), Some(seed)) => InputSpace::Sampled { count, seed },
                _ => InputSpace::Exhaustive,
            };
            cmd_faultsim(&file, &FaultsimOptions { transform, inputs, csv, sabotage }, out)
        }
        Command::Bench { corpus, literature_n, csv } => {
            let dir = corpus.unwrap_or_else(default_corpus);
            cmd_bench(&dir, literature_n, csv, out)
        }
    }
}

pub fn default_corpus() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("corpus")
}

fn load(path: &Path) -> Result<Circuit> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    parse_real(&text)
}

fn kv(out: &mut dyn Write, csv: bool, key: &str, value: impl std::fmt::Display) -> Result<()> {
    if csv {
        writeln!(out, "{key},{value}")?;
    } else {
        writeln!(out, "{key}: {value}")?;
    }
    Ok(())
}

pub fn cmd_parse(path: &Path, csv: bool, out: &mut dyn Write) -> Result<i32> {
    let c = load(path)?;
    if csv {
        writeln!(out, "key,value")?;
    }
    kv(out, csv, "lines", c.num_lines())?;
    kv(out, csv, "gates", c.gate_count())?;
    kv(out, csv, "constants", c.constants().len())?;
    kv(out, csv, "garbage", c.garbage().len())?;
    match quantum_cost(&c, &CostTable::standard()) {
        Ok(q) => kv(out, csv, "quantum_cost", q)?,
        Err(_) => kv(out, csv, "quantum_cost", "n/a")?,
    }
    let mut histogram: BTreeMap<String, usize> = BTreeMap::new();
    for g in c.gates() {
        *histogram.entry(g.kind().to_string()).or_default() += 1;
    }
    for (kind, count) in histogram {
        kv(out, csv, &format!("kind {kind}"), count)?;
    }
    if let Ok(tc) = TestableCircuit::recover(c) {
        kv(out, csv, "testable_blocks", tc.blocks().len())?;
        kv(out, csv, "error_line", &tc.circuit().labels()[tc.error_line()])?;
    }
    Ok(EXIT_OK)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Outcome {
    Pass,
    Fail(String),
    Skipped(String),
}

/// Per-property results of [`check_circuit`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CheckReport {
    pub items: Vec<(&'static str, Outcome)>,
}

impl CheckReport {
    pub fn passed(&self) -> bool {
        !self.items.iter().any(|(_, o)| matches!(o, Outcome::Fail(_)))
    }

    pub fn outcome(&self, name: &str) -> Option<&Outcome> {
        self.items.iter().find(|(n, _)| *n == name).map(|(_, o)| o)
    }
}

/// Checks a circuit, or a transformed circuit if its provenance can be
/// recovered: reversibility, per-block parity zero and preservation of the
/// data-line function. Plain circuits are transformed first for the latter
/// two.
pub fn check_circuit(circuit: &Circuit) -> Result<CheckReport> {
    let mut items = Vec::new();
    let verdict = |ok: bool, why: String| if ok { Outcome::Pass } else { Outcome::Fail(why) };

    if circuit.num_lines() > EXHAUSTIVE_LIMIT {
        return Err(Error::TooManyLines {
            lines: circuit.num_lines(),
            limit: EXHAUSTIVE_LIMIT,
        });
    }
    let reversible = simulator::is_reversible(circuit)?;
    items.push(("reversible", verdict(reversible, "two inputs share an output".into())));

    let tc = match TestableCircuit::recover(circuit.clone()) {
        Ok(tc) => Ok(tc),
        Err(_) => transform(circuit),
    };
    let tc = match tc {
        Ok(tc) => tc,
        Err(e) => {
            items.push(("parity-zero", Outcome::Skipped(e.to_string())));
            items.push(("function-preserved", Outcome::Skipped(e.to_string())));
            return Ok(CheckReport { items });
        }
    };
    if tc.circuit().num_lines() <= EXHAUSTIVE_LIMIT {
        let ok = simulator::is_reversible(tc.circuit())?;
        items.push(("transformed-reversible", verdict(ok, "two inputs share an output".into())));
    } else {
        items.push((
            "transformed-reversible",
            Outcome::Skipped(format!("{} lines exceed {EXHAUSTIVE_LIMIT}", tc.circuit().num_lines())),
        ));
    }
    let parity = parity_zero_violation(&tc)?;
    items.push((
        "parity-zero",
        match parity {
            None => Outcome::Pass,
            Some(input) => Outcome::Fail(format!("parity raised on input {input}")),
        },
    ));
    let preserved = preserves_function(&tc)?;
    items.push(("function-preserved", verdict(preserved, "data outputs differ".into())));
    Ok(CheckReport { items })
}

pub fn cmd_check(path: &Path, out: &mut dyn Write) -> Result<i32> {
    let report = check_circuit(&load(path)?)?;
    for (name, outcome) in &report.items {
        match outcome {
            Outcome::Pass => writeln!(out, "{name}: pass")?,
            Outcome::Fail(why) => writeln!(out, "{name}: FAIL ({why})")?,
            Outcome::Skipped(why) => writeln!(out, "{name}: skipped ({why})")?,
        }
    }
    Ok(if report.passed() { EXIT_OK } else { EXIT_FAIL })
}

pub fn cmd_simulate(path: &Path, input: Option<&str>, csv: bool, out: &mut dyn Write) -> Result<i32> {
    let c = load(path)?;
    match input {
        Some(bits) => {
            let given: Assignment = bits.parse()?;
            let full = if given.len() == c.num_lines() {
                given
            } else {
                Assignment::from_free_bits(&c, given.bits())?
            };
            let result = simulator::run(&c, &full, ConstantMode::Enforce)?;
            if csv {
                writeln!(out, "input,output\n{full},{result}")?;
            } else {
                writeln!(out, "{full} -> {result}")?;
            }
        }
        None => {
            let tt = simulator::truth_table(&c)?;
            if csv {
                writeln!(out, "input,output")?;
            }
            let n = c.num_lines();
            for (x, &y) in tt.outputs().iter().enumerate() {
                let a = Assignment::from_index(n, x as u64);
                let b = Assignment::from_index(n, y as u64);
                if csv {
                    writeln!(out, "{a},{b}")?;
                } else {
                    writeln!(out, "{a} -> {b}")?;
                }
            }
        }
    }
    Ok(EXIT_OK)
}

pub fn cmd_transform(
    input: &Path,
    output: Option<&Path>,
    csv: bool,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> Result<i32> {
    let c = load(input)?;
    let tc = transform(&c)?;
    let netlist = emit_real(tc.circuit())?;
    let report = count_report(&tc)?;
    let to_stdout = output.is_some_and(|p| p == Path::new("-"));
    if let Some(p) = output.filter(|_| !to_stdout) {
        std::fs::write(p, &netlist).map_err(|e| Error::Io(format!("{}: {e}", p.display())))?;
    }
    {
        let summary: &mut dyn Write = if to_stdout { err } else { out };
        if csv {
            writeln!(summary, "key,value")?;
            for (k, v) in [
                ("blocks", report.blocks),
                ("gates_original", report.original.gates),
                ("gates", report.transformed.gates),
                ("garbage_original", report.original.garbage),
                ("garbage_added", report.added_garbage),
                ("garbage", report.transformed.garbage),
                ("constants", report.transformed.constants),
                ("quantum_cost", report.transformed.quantum_cost),
            ] {
                writeln!(summary, "{k},{v}")?;
            }
        } else {
            write!(summary, "{report}")?;
            writeln!(summary, "error line: {}", tc.circuit().labels()[tc.error_line()])?;
        }
    }
    if to_stdout {
        out.write_all(netlist.as_bytes())?;
    }
    Ok(EXIT_OK)
}

#[derive(Debug, Clone)]
pub struct FaultsimOptions {
    pub transform: bool,
    pub inputs: InputSpace,
    pub csv: bool,
    pub sabotage: bool,
}

pub fn cmd_faultsim(path: &Path, opts: &FaultsimOptions, out: &mut dyn Write) -> Result<i32> {
    let c = load(path)?;
    let mut tc = if opts.transform {
        transform(&c)?
    } else {
        TestableCircuit::recover(c)?
    };
    if opts.sabotage {
        tc = tc.without_last_checker_gate()?;
    }
    let report = run_campaign(&Campaign::new(&tc, opts.inputs))?;
    if opts.csv {
        write!(out, "{}", report.to_csv())?;
    } else {
        write!(out, "{}", report.summary())?;
    }
    Ok(if report.is_complete() { EXIT_OK } else { EXIT_FAIL })
}

pub fn cmd_bench(corpus: &Path, literature_n: Option<u64>, csv: bool, out: &mut dyn Write) -> Result<i32> {
    let table = run_bench(corpus)?.with_literature_n(literature_n);
    if csv {
        write!(out, "{}", table.to_csv())?;
    } else {
        write!(out, "{}", table.to_text())?;
    }
    Ok(if table.all_match() { EXIT_OK } else { EXIT_FAIL })
}
