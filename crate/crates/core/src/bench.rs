// SPDX-License-Identifier: Apache-2.0

//! Benchmark corpus and the transformed-count table.

use std::fmt::Write as _;
use std::path::Path;

use crate::error::{Error, Result};
use crate::real::parse_real;
use crate::report::Design;
use crate::testability::transform;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BenchFixture {
    pub name: &'static str,
    pub file: &'static str,
    pub expected_gates_orig: u64,
    pub expected_garbage_orig: u64,
    pub expected_gates_transformed: u64,
    pub expected_garbage_total: u64,
    /// Published (gates, garbage) for the R1/R2 design; computed by its
    /// authors over their own realizations.
    pub published_vasudevan2006: (u64, u64),
    /// Published (gates, garbage) for the sequential-circuit design.
    pub published_hasan2009: (u64, u64),
}

impl BenchFixture {
    /// Holds when the expected transformed counts follow `3n - 1` and
    /// `g + 2(n - 1)` from the original counts.
    pub fn is_consistent(&self) -> bool {
        let n = self.expected_gates_orig;
        n >= 1
            && self.expected_gates_transformed == 3 * n - 1
            && self.expected_garbage_total == self.expected_garbage_orig + 2 * (n - 1)
    }

    pub fn text(&self) -> &'static str {
        CORPUS_TEXT
            .iter()
            .find(|(f, _)| *f == self.file)
            .map(|(_, t)| *t)
            .expect("every fixture is embedded")
    }
}

macro_rules! fixture {
    ($name:literal, $file:literal, $g:literal, $gb:literal, $tg:literal, $tgb:literal, $v:expr, $h:expr) => {
        BenchFixture {
            name: $name,
            file: $file,
            expected_gates_orig: $g,
            expected_garbage_orig: $gb,
            expected_gates_transformed: $tg,
            expected_garbage_total: $tgb,
            published_vasudevan2006: $v,
            published_hasan2009: $h,
        }
    };
}

pub const FIXTURES: [BenchFixture; 12] = [
    fixture!("hwb4", "hwb4.real", 11, 0, 32, 20, (178, 208), (92, 101)),
    fixture!("mod5adder", "mod5adder.real", 15, 0, 44, 28, (490, 587), (248, 285)),
    fixture!("xor5", "xor5.real", 4, 4, 11, 10, (26, 32), (16, 20)),
    fixture!("ham7", "ham7.real", 25, 0, 74, 48, (386, 451), (196, 214)),
    fixture!("4mod5", "4mod5.real", 5, 4, 14, 12, (66, 79), (36, 42)),
    fixture!("rd32", "rd32.real", 4, 2, 11, 8, (82, 98), (44, 51)),
    fixture!("5mod5", "5mod5.real", 8, 5, 23, 19, (306, 368), (156, 181)),
    fixture!("4_49", "4_49.real", 12, 0, 35, 22, (242, 286), (124, 139)),
    fixture!("hwb5", "hwb5.real", 24, 0, 71, 46, (578, 686), (292, 329)),
    fixture!("rd53", "rd53.real", 12, 4, 35, 26, (306, 367), (156, 180)),
    fixture!("ham3", "ham3.real", 4, 0, 11, 6, (66, 76), (36, 39)),
    fixture!("3_17", "3_17.real", 6, 0, 17, 10, (106, 125), (56, 63)),
];

const CORPUS_TEXT: [(&str, &str); 12] = [
    ("hwb4.real", include_str!("../corpus/hwb4.real")),
    ("mod5adder.real", include_str!("../corpus/mod5adder.real")),
    ("xor5.real", include_str!("../corpus/xor5.real")),
    ("ham7.real", include_str!("../corpus/ham7.real")),
    ("4mod5.real", include_str!("../corpus/4mod5.real")),
    ("rd32.real", include_str!("../corpus/rd32.real")),
    ("5mod5.real", include_str!("../corpus/5mod5.real")),
    ("4_49.real", include_str!("../corpus/4_49.real")),
    ("hwb5.real", include_str!("../corpus/hwb5.real")),
    ("rd53.real", include_str!("../corpus/rd53.real")),
    ("ham3.real", include_str!("../corpus/ham3.real")),
    ("3_17.real", include_str!("../corpus/3_17.real")),
];

pub fn fixture(name: &str) -> Option<&'static BenchFixture> {
    FIXTURES.iter().find(|f| f.name == name)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BenchRow {
    pub fixture: BenchFixture,
    pub gates_orig: u64,
    pub garbage_orig: u64,
    pub gates: u64,
    pub garbage: u64,
}

impl BenchRow {
    pub fn matches(&self) -> bool {
        self.gates == self.fixture.expected_gates_transformed
            && self.garbage == self.fixture.expected_garbage_total
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BenchTable {
    pub rows: Vec<BenchRow>,
    /// Block count fed to the literature formulas in place of each row's own.
    pub literature_n: Option<u64>,
}

fn measure(fixture: &BenchFixture, text: &str) -> Result<BenchRow> {
    let c = parse_real(text)?;
    let tc = transform(&c)?;
    Ok(BenchRow {
        fixture: *fixture,
        gates_orig: c.gate_count() as u64,
        garbage_orig: c.garbage().len() as u64,
        gates: tc.circuit().gate_count() as u64,
        garbage: tc.circuit().garbage().len() as u64,
    })
}

fn check_fixtures() -> Result<()> {
    match FIXTURES.iter().find(|f| !f.is_consistent()) {
        Some(f) => Err(Error::Io(format!("fixture record {} is inconsistent", f.name))),
        None => Ok(()),
    }
}

/// Transforms every fixture found in `dir`.
pub fn run_bench(dir: &Path) -> Result<BenchTable> {
    check_fixtures()?;
    let mut rows = Vec::with_capacity(FIXTURES.len());
    for f in &FIXTURES {
        let path = dir.join(f.file);
        if !path.is_file() {
            return Err(Error::MissingFixture(f.name.to_string()));
        }
        let text = std::fs::read_to_string(&path)?;
        rows.push(measure(f, &text)?);
    }
    Ok(BenchTable { rows, literature_n: None })
}

/// Same as [`run_bench`] over the copies compiled into the crate.
pub fn run_bench_embedded() -> Result<BenchTable> {
    check_fixtures()?;
    let rows = FIXTURES
        .iter()
        .map(|f| measure(f, f.text()))
        .collect::<Result<_>>()?;
    Ok(BenchTable { rows, literature_n: None })
}

impl BenchTable {
    pub fn with_literature_n(mut self, n: Option<u64>) -> Self {
        self.literature_n = n;
        self
    }

    pub fn all_match(&self) -> bool {
        self.rows.iter().all(BenchRow::matches)
    }

    pub fn row(&self, name: &str) -> Option<&BenchRow> {
        self.rows.iter().find(|r| r.fixture.name == name)
    }

    const HEADER: [&'static str; 16] = [
        "benchmark",
        "n",
        "orig_garbage",
        "gates",
        "garbage",
        "expected_gates",
        "expected_garbage",
        "status",
        "vasudevan2006_8n",
        "vasudevan2006_10n",
        "hasan2009_4n",
        "hasan2009_5n",
        "published_vasudevan2006_gates",
        "published_vasudevan2006_garbage",
        "published_hasan2009_gates",
        "published_hasan2009_garbage",
    ];

    fn cells(&self, r: &BenchRow) -> Vec<String> {
        let n = self.literature_n.unwrap_or(r.gates_orig);
        let v = Design::Vasudevan2006.circuit(n);
        let h = Design::Hasan2009.circuit(n);
        let f = &r.fixture;
        [
            r.gates_orig,
            r.garbage_orig,
            r.gates,
            r.garbage,
            f.expected_gates_transformed,
            f.expected_garbage_total,
        ]
        .iter()
        .map(u64::to_string)
        .chain(std::iter::once(if r.matches() { "ok" } else { "MISMATCH" }.to_string()))
        .chain(
            [
                v.gates,
                v.garbage,
                h.gates,
                h.garbage,
                f.published_vasudevan2006.0,
                f.published_vasudevan2006.1,
                f.published_hasan2009.0,
                f.published_hasan2009.1,
            ]
            .iter()
            .map(u64::to_string),
        )
        .collect()
    }

    pub fn to_csv(&self) -> String {
        let mut out = Self::HEADER.join(",");
        out.push('\n');
        for r in &self.rows {
            let mut cells = vec![r.fixture.name.to_string()];
            cells.extend(self.cells(r));
            out.push_str(&cells.join(","));
            out.push('\n');
        }
        out
    }

    /// Human-readable table. Formula columns use each row's own `n` unless
    /// `literature_n` is set; the
    /// published columns are printed as reported, since they were computed
    /// over different realizations.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(
            out,
            "{:<10} {:>3} {:>4} | {:>5} {:>7} {:>8} | {:>9} {:>9} | {:>9} {:>9} |",
            "benchmark", "n", "g0", "gates", "garbage", "status", "8n/10n", "pub.", "4n/5n", "pub."
        );
        let _ = writeln!(
            out,
            "{:<10} {:>3} {:>4} | {:>5} {:>7} {:>8} | {:>9} {:>9} | {:>9} {:>9} |",
            "", "", "", "", "", "", "vasudevan", "2006", "hasan", "2009"
        );
        for r in &self.rows {
            let c = self.cells(r);
            let _ = writeln!(
                out,
                "{:<10} {:>3} {:>4} | {:>5} {:>7} {:>8} | {:>9} {:>9} | {:>9} {:>9} |",
                r.fixture.name,
                c[0],
                c[1],
                c[2],
                c[3],
                c[6],
                format!("{}/{}", c[7], c[8]),
                format!("{}/{}", c[11], c[12]),
                format!("{}/{}", c[9], c[10]),
                format!("{}/{}", c[13], c[14]),
            );
        }
        let matched = self.rows.iter().filter(|r| r.matches()).count();
        let _ = writeln!(out, "{matched}/{} rows match the expected transformed counts", self.rows.len());
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fixture_records_consistent() {
        assert!(FIXTURES.iter().all(BenchFixture::is_consistent));
        let bad = BenchFixture {
            expected_gates_transformed: 33,
            ..FIXTURES[0]
        };
        assert!(!bad.is_consistent());
    }

    #[test]
    fn embedded_corpus_matches() {
        let table = run_bench_embedded().unwrap();
        assert!(table.all_match(), "{}", table.to_text());
        let m = table.row("mod5adder").unwrap();
        assert_eq!((m.gates, m.garbage), (44, 28));
        let x = table.row("xor5").unwrap();
        assert_eq!((x.gates, x.garbage), (11, 10));
    }

    #[test]
    fn formula_columns() {
        let table = run_bench_embedded().unwrap();
        let csv = table.to_csv();
        let row = csv.lines().find(|l| l.starts_with("3_17,")).unwrap();
        let cells: Vec<&str> = row.split(',').collect();
        // hasan2009 4n with n = 6, next to the published 56
        assert_eq!(cells[10], "24");
        assert_eq!(cells[14], "56");

        let fixed = table.with_literature_n(Some(14));
        let csv = fixed.to_csv();
        let row = csv.lines().find(|l| l.starts_with("3_17,")).unwrap();
        assert_eq!(row.split(',').nth(10), Some("56"));
    }

    #[test]
    fn missing_fixture_named() {
        let dir = std::env::temp_dir().join("revtest-empty-corpus");
        std::fs::create_dir_all(&dir).unwrap();
        assert!(matches!(run_bench(&dir), Err(Error::MissingFixture(n)) if n == "hwb4"));
    }
}
