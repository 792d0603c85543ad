//! Image-algebra dimension tables, computed next to their published values.

use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use serde::Serialize;

use crate::algebra::{tower_report, FieldMode};
use crate::catalog;
use crate::error::{Error, Result};
use crate::exactmat::WordMatrix;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum TableId {
    #[serde(rename = "fI")]
    FI,
    Spade,
    Heart,
    Unipotent2,
    Unipotent3,
}

impl TableId {
    pub const ALL: [TableId; 5] = [TableId::FI, TableId::Spade, TableId::Heart, TableId::Unipotent2, TableId::Unipotent3];
}

impl fmt::Display for TableId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            TableId::FI => "fI",
            TableId::Spade => "spade",
            TableId::Heart => "heart",
            TableId::Unipotent2 => "unipotent2",
            TableId::Unipotent3 => "unipotent3",
        })
    }
}

impl FromStr for TableId {
    type Err = Error;
    fn from_str(s: &str) -> Result<TableId> {
        TableId::ALL.into_iter().find(|t| t.to_string() == s).ok_or_else(|| Error::UnknownName(s.into()))
    }
}

/// Which quantity a column holds.
#[derive(Debug, Clone, Copy)]
enum Col {
    Dim,
    Ss,
    RadPow(usize),
}

struct Spec {
    source: &'static str,
    /// Catalog entries whose towers are computed, one block of columns each.
    matrices: &'static [&'static str],
    columns: &'static [(&'static str, usize, Col)],
    /// `(n, expected values per column)`.
    rows: &'static [(usize, &'static [usize])],
    max_power: usize,
}

fn spec(id: TableId) -> Spec {
    match id {
        TableId::FI => Spec {
            source: "image algebra table, fI columns",
            matrices: &["R_fI"],
            columns: &[("dim A", 0, Col::Dim), ("dim A/rad", 0, Col::Ss), ("rad^2", 0, Col::RadPow(2)), ("rad^3", 0, Col::RadPow(3))],
            rows: &[(2, &[3, 2, 0, 0]), (3, &[10, 5, 0, 0]), (4, &[35, 14, 1, 0]), (5, &[126, 42, 9, 0]), (6, &[462, 132, 55, 1])],
            max_power: 3,
        },
        TableId::Spade => Spec {
            source: "image algebra table, spade columns",
            matrices: &["R_spade"],
            columns: &[("dim A", 0, Col::Dim), ("dim A/rad", 0, Col::Ss), ("rad^2", 0, Col::RadPow(2))],
            rows: &[(2, &[3, 2, 0]), (3, &[10, 5, 0]), (4, &[35, 14, 1]), (5, &[126, 42, 9])],
            max_power: 2,
        },
        TableId::Heart => Spec {
            source: "image algebra table, heart columns",
            matrices: &["R_heart"],
            columns: &[("dim A", 0, Col::Dim), ("dim A/rad", 0, Col::Ss), ("rad^2", 0, Col::RadPow(2))],
            rows: &[(2, &[4, 2, 1]), (3, &[20, 5, 6]), (4, &[70, 14, 28]), (5, &[252, 42, 120])],
            max_power: 2,
        },
        TableId::Unipotent2 => Spec {
            source: "unipotent rank-2 table",
            matrices: &["R0_unipotent", "R_unipotent_glue"],
            columns: &[("dim A0", 0, Col::Dim), ("dim A0/rad", 0, Col::Ss), ("dim A", 1, Col::Dim), ("dim A/rad", 1, Col::Ss)],
            rows: &[(3, &[5, 5, 6, 5]), (4, &[14, 5, 20, 5]), (5, &[42, 42, 70, 42]), (6, &[132, 42, 252, 42])],
            max_power: 1,
        },
        TableId::Unipotent3 => Spec {
            source: "unipotent rank-3 fff table",
            matrices: &["R_fff_0", "R_fff_glue"],
            columns: &[("dim A0", 0, Col::Dim), ("dim A0/rad", 0, Col::Ss), ("dim A", 1, Col::Dim), ("dim A/rad", 1, Col::Ss)],
            rows: &[(3, &[6, 5, 6, 5]), (4, &[23, 5, 24, 5]), (5, &[103, 42, 120, 42]), (6, &[513, 298, 695, 298])],
            max_power: 1,
        },
    }
}

/// Default field: rationals for rank 2, both primes for the rank-3 table at `n >= 5`.
pub fn default_field(id: TableId, n: usize) -> FieldMode {
    if id == TableId::Unipotent3 && n >= 5 {
        FieldMode::DualPrime
    } else {
        FieldMode::Rational
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Cell {
    pub column: String,
    pub expected: usize,
    pub computed: usize,
    pub matches: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct TableRow {
    pub n: usize,
    pub field: FieldMode,
    pub cells: Vec<Cell>,
    pub seconds: Option<f64>,
}

#[derive(Debug, Clone, Serialize)]
pub struct TableReport {
    pub table: TableId,
    pub source: String,
    pub rows: Vec<TableRow>,
    pub all_match: bool,
}

impl TableReport {
    /// Cells whose computed value differs from the expected one.
    pub fn mismatches(&self) -> Vec<(usize, &Cell)> {
        self.rows.iter().flat_map(|r| r.cells.iter().filter(|c| !c.matches).map(move |c| (r.n, c))).collect()
    }
}

impl fmt::Display for TableReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "table {} ({})", self.table, self.source)?;
        let Some(first) = self.rows.first() else { return Ok(()) };
        write!(f, "{:>3}", "n")?;
        for c in &first.cells {
            write!(f, "  {:>16}", c.column)?;
        }
        writeln!(f, "  {:>5}  field", "match")?;
        for r in &self.rows {
            write!(f, "{:>3}", r.n)?;
            for c in &r.cells {
                let shown = if c.matches { c.computed.to_string() } else { format!("{} (exp {})", c.computed, c.expected) };
                write!(f, "  {shown:>16}")?;
            }
            let ok = if r.cells.iter().all(|c| c.matches) { "yes" } else { "NO" };
            write!(f, "  {ok:>5}  {}", r.field)?;
            if let Some(s) = r.seconds {
                write!(f, "  {s:.2}s")?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

/// `(dim, dim_ss, rad_powers)` for the level-`n` tower.
pub fn tower_dims(r: &WordMatrix, n: usize, mode: FieldMode, max_power: usize) -> Result<(usize, usize, Vec<usize>)> {
    mode.run(|tag| {
        let rep = tower_report(r, n, tag, max_power)?;
        Ok((rep.dim, rep.dim_ss, rep.rad_powers))
    })
}

/// Computes the rows of `id` with `n <= n_max`; `field` overrides the default per row.
pub fn run_table(id: TableId, field: Option<FieldMode>, n_max: Option<usize>, timing: bool) -> Result<TableReport> {
    let sp = spec(id);
    let mats = sp.matrices.iter().map(|m| Ok(catalog::get(m)?.matrix)).collect::<Result<Vec<_>>>()?;
    let mut rows = Vec::new();
    for &(n, expected) in sp.rows.iter().filter(|(n, _)| n_max.is_none_or(|m| *n <= m)) {
        let mode = field.unwrap_or_else(|| default_field(id, n));
        let start = Instant::now();
        let dims = mats.iter().map(|m| tower_dims(m, n, mode, sp.max_power)).collect::<Result<Vec<_>>>()?;
        let cells = sp
            .columns
            .iter()
            .zip(expected)
            .map(|(&(label, which, col), &exp)| {
                let (dim, ss, pows) = &dims[which];
                let computed = match col {
                    Col::Dim => *dim,
                    Col::Ss => *ss,
                    Col::RadPow(k) => pows.get(k - 1).copied().unwrap_or(0),
                };
                Cell { column: label.into(), expected: exp, computed, matches: computed == exp }
            })
            .collect();
        rows.push(TableRow { n, field: mode, cells, seconds: timing.then(|| start.elapsed().as_secs_f64()) });
    }
    let all_match = rows.iter().all(|r| r.cells.iter().all(|c| c.matches));
    Ok(TableReport { table: id, source: sp.source.into(), rows, all_match })
}
