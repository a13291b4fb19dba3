//! Run configuration, table rendering and the verification report used by
//! the `dp1` binary.
//!
//! Every table cell and every verification record carries a provenance
//! flag: `enumerated` values come from lattice enumeration alone, while
//! `cited-formula` values also use a cited geometric input (the Euler
//! characteristic relation or the `C0` row).

use std::collections::BTreeMap;
use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::ade::RootSystemType;
use crate::counting::{
    b_class_invariants, b_classes, b_level_table, bi_level_table, c0_total, c2_closed, c2_total, c4_closed, full_count,
    lines_identities, norm4_residue_groups, paired_count, root_level_table, signed_sum, summary_grid, LevelRow,
    GRID_COLUMNS,
};
use crate::error::{Error, Result};
use crate::lattice::{enumerate_vectors, PicClass};
use crate::model::{Catalog, RealModel};
use crate::pin::{normalize_code, qhat_vanishing_basis, Code, VanishingBasis};
use crate::real_forms::{
    bertini_pairs, deformation_classes, stored_simple_roots, validate_embedding, ClassId, DeformationClass,
};
use crate::reference;
use crate::wallcross::{
    delta_table, expected_delta, expected_splittings, orth_root_sum, pairing_cancellation, splittings, vanishing_roots,
    DeltaTable,
};

/// Seed for the randomized Weyl images in `verify`.
pub const WEYL_SEED: u64 = 0x5eed_d1a1;
/// Weyl images drawn per class in `verify`.
pub const WEYL_IMAGES: usize = 20;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Provenance {
    Enumerated,
    CitedFormula,
}

impl fmt::Display for Provenance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Provenance::Enumerated => "enumerated",
            Provenance::CitedFormula => "cited-formula",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum CellValue {
    Int(i64),
    Text(String),
}

impl fmt::Display for CellValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CellValue::Int(v) => write!(f, "{v}"),
            CellValue::Text(s) => f.write_str(s),
        }
    }
}

impl From<i64> for CellValue {
    fn from(v: i64) -> Self {
        CellValue::Int(v)
    }
}

impl From<usize> for CellValue {
    fn from(v: usize) -> Self {
        CellValue::Int(v as i64)
    }
}

impl From<u8> for CellValue {
    fn from(v: u8) -> Self {
        CellValue::Int(v as i64)
    }
}

impl From<&str> for CellValue {
    fn from(v: &str) -> Self {
        CellValue::Text(v.to_string())
    }
}

impl From<String> for CellValue {
    fn from(v: String) -> Self {
        CellValue::Text(v)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Cell {
    pub value: CellValue,
    pub provenance: Provenance,
    pub anchor: String,
}

impl Cell {
    pub fn new(value: impl Into<CellValue>, provenance: Provenance, anchor: impl Into<String>) -> Self {
        Cell {
            value: value.into(),
            provenance,
            anchor: anchor.into(),
        }
    }
}

/// A rendered table. JSON output is an array of records keyed by column.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Table {
    pub title: String,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<Cell>>,
}

impl Table {
    pub fn records(&self) -> Vec<BTreeMap<String, Cell>> {
        self.rows
            .iter()
            .map(|row| {
                self.columns
                    .iter()
                    .map(|c| snake_key(c))
                    .zip(row.iter().cloned())
                    .collect()
            })
            .collect()
    }

    pub fn render(&self, format: Format) -> Result<String> {
        match format {
            Format::Json => to_json(&self.records()),
            Format::Csv => {
                let rows = self
                    .rows
                    .iter()
                    .map(|r| r.iter().map(|c| c.value.to_string()).collect());
                to_csv(&self.columns, rows)
            }
            Format::Md => Ok(self.markdown()),
        }
    }

    fn markdown(&self) -> String {
        let mut s = format!("### {}\n\n| {} |\n|", self.title, self.columns.join(" | "));
        for _ in &self.columns {
            s.push_str("---|");
        }
        s.push('\n');
        for row in &self.rows {
            let cells: Vec<String> = row.iter().map(|c| c.value.to_string()).collect();
            s.push_str(&format!("| {} |\n", cells.join(" | ")));
        }
        s
    }
}

/// `M-1` becomes `m_1`, `(M-2)_I` becomes `m_2_i`.
pub fn snake_key(column: &str) -> String {
    let mut out = String::new();
    for ch in column.chars() {
        if ch.is_ascii_alphanumeric() {
            out.push(ch.to_ascii_lowercase());
        } else if !out.is_empty() && !out.ends_with('_') {
            out.push('_');
        }
    }
    out.trim_end_matches('_').to_string()
}

fn to_json<T: Serialize>(value: &T) -> Result<String> {
    let mut s = serde_json::to_string_pretty(value).map_err(|e| Error::Io(e.to_string()))?;
    s.push('\n');
    Ok(s)
}

fn to_csv(header: &[String], rows: impl Iterator<Item = Vec<String>>) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    let io = |e: csv::Error| Error::Io(e.to_string());
    w.write_record(header).map_err(io)?;
    for r in rows {
        w.write_record(&r).map_err(io)?;
    }
    let bytes = w.into_inner().map_err(|e| Error::Io(e.to_string()))?;
    String::from_utf8(bytes).map_err(|e| Error::Io(e.to_string()))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Md,
    Json,
    Csv,
}

impl FromStr for Format {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "json" => Ok(Format::Json),
            "csv" => Ok(Format::Csv),
            "md" | "markdown" => Ok(Format::Md),
            _ => Err(Error::Io(format!("unknown format `{s}` (expected json, csv or md)"))),
        }
    }
}

/// `all` or one class id.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default, Serialize, Deserialize)]
pub enum ClassSelector {
    #[default]
    All,
    One(ClassId),
}

impl ClassSelector {
    pub fn includes(&self, id: ClassId) -> bool {
        match self {
            ClassSelector::All => true,
            ClassSelector::One(c) => *c == id,
        }
    }

    pub fn ids(&self) -> Vec<ClassId> {
        ClassId::ALL.into_iter().filter(|&id| self.includes(id)).collect()
    }
}

impl FromStr for ClassSelector {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        if s.eq_ignore_ascii_case("all") {
            Ok(ClassSelector::All)
        } else {
            s.parse().map(ClassSelector::One)
        }
    }
}

impl fmt::Display for ClassSelector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ClassSelector::All => f.write_str("all"),
            ClassSelector::One(id) => write!(f, "{id}"),
        }
    }
}

/// The tables `tables` can regenerate. Numeric aliases `2`..`7` follow the
/// published numbering.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum TableName {
    Roots,
    B2,
    B4,
    E7B4,
    Summary,
    Delta,
}

impl TableName {
    pub const ALL: [TableName; 6] = [
        TableName::Roots,
        TableName::B2,
        TableName::B4,
        TableName::E7B4,
        TableName::Summary,
        TableName::Delta,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            TableName::Roots => "roots",
            TableName::B2 => "b2",
            TableName::B4 => "b4",
            TableName::E7B4 => "e7-b4",
            TableName::Summary => "summary",
            TableName::Delta => "delta",
        }
    }
}

impl FromStr for TableName {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "roots" | "2" => Ok(TableName::Roots),
            "b2" | "3" => Ok(TableName::B2),
            "b4" | "4" => Ok(TableName::B4),
            "e7-b4" | "5" => Ok(TableName::E7B4),
            "summary" | "6" => Ok(TableName::Summary),
            "delta" | "7" => Ok(TableName::Delta),
            _ => Err(Error::UnknownTable(s.to_string())),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Command {
    Classes { pairs: bool },
    Enumerate,
    Tables { name: TableName },
    Verify,
    Wallcross,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RunConfig {
    pub command: Command,
    pub class: ClassSelector,
    /// `0`, `2` or `4`; only read by `enumerate`.
    pub stratum: Option<u8>,
    pub format: Format,
    pub out: Option<PathBuf>,
    pub verbosity: u8,
    /// Test hook: validate a broken basis for this class.
    pub corrupt_embedding: Option<ClassId>,
}

impl RunConfig {
    pub fn new(command: Command) -> Self {
        RunConfig {
            command,
            class: ClassSelector::All,
            stratum: None,
            format: Format::Md,
            out: None,
            verbosity: 0,
            corrupt_embedding: None,
        }
    }
}

/// Rendered output plus whether every check passed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub text: String,
    pub all_passed: bool,
}

impl Outcome {
    /// `0` when every check passed, `1` otherwise.
    pub fn exit_code(&self) -> i32 {
        if self.all_passed {
            0
        } else {
            1
        }
    }
}

pub fn execute(cfg: &RunConfig) -> Result<Outcome> {
    let passed = |text| Outcome { text, all_passed: true };
    match &cfg.command {
        Command::Classes { pairs } => {
            let t = if *pairs {
                pairs_table()
            } else {
                classes_table(cfg.class)
            };
            Ok(passed(t.render(cfg.format)?))
        }
        Command::Enumerate => {
            let stratum = cfg.stratum.unwrap_or(2);
            Ok(passed(enumerate_table(cfg.class, stratum)?.render(cfg.format)?))
        }
        Command::Tables { name } => Ok(passed(table(*name)?.render(cfg.format)?)),
        Command::Wallcross => Ok(passed(wallcross_table(cfg.class)?.render(cfg.format)?)),
        Command::Verify => {
            let report = verify(cfg.class, cfg.corrupt_embedding, cfg.verbosity);
            Ok(Outcome {
                text: report.render(cfg.format)?,
                all_passed: report.failed == 0,
            })
        }
    }
}

pub fn classes_table(selector: ClassSelector) -> Table {
    let a = "deformation classes";
    let rows = deformation_classes()
        .into_iter()
        .filter(|c| selector.includes(c.id))
        .map(|c| {
            let anchor = format!("{a} / {}", c.id);
            let cell = |v: CellValue| Cell::new(v, Provenance::Enumerated, anchor.clone());
            vec![
                cell(c.id.as_str().into()),
                cell(c.topology.clone().into()),
                cell(c.smith_type.to_string().into()),
                cell(c.lambda_type.clone().into()),
                cell(c.rank_r.into()),
                cell(c.euler_char.into()),
                cell(c.bertini_dual_id.as_str().into()),
            ]
        })
        .collect();
    Table {
        title: "Deformation classes".into(),
        columns: ["id", "topology", "smith_type", "lambda", "r", "euler_char", "dual"]
            .map(String::from)
            .to_vec(),
        rows,
    }
}

pub fn pairs_table() -> Table {
    let rows = bertini_pairs()
        .into_iter()
        .map(|(a, b)| {
            let (ca, cb) = (a.class(), b.class());
            let anchor = format!("Bertini pairs / {a}");
            let cell = |v: CellValue| Cell::new(v, Provenance::Enumerated, anchor.clone());
            vec![
                cell(a.as_str().into()),
                cell(b.as_str().into()),
                cell(ca.lambda_type.clone().into()),
                cell(cb.lambda_type.clone().into()),
                cell((2 * ca.rank_r as i64 + 2 * cb.rank_r as i64).into()),
            ]
        })
        .collect();
    Table {
        title: "Bertini pairs".into(),
        columns: ["plus", "minus", "lambda_plus", "lambda_minus", "rank_sum_doubled"]
            .map(String::from)
            .to_vec(),
        rows,
    }
}

pub fn enumerate_table(selector: ClassSelector, stratum: u8) -> Result<Table> {
    let k = match stratum {
        0 | 2 | 4 => stratum / 2,
        _ => return Err(Error::InvalidCode(format!("stratum {stratum} is not 0, 2 or 4"))),
    };
    let catalog = Catalog::standard()?;
    let mut rows = Vec::new();
    for id in selector.ids() {
        for b in b_classes(catalog.get(id), k)? {
            let anchor = format!("B^{stratum} / {id}");
            let cell = |v: CellValue| Cell::new(v, Provenance::Enumerated, anchor.clone());
            rows.push(vec![
                cell(id.as_str().into()),
                cell(b.stratum.into()),
                cell(b.alpha.to_string().into()),
                cell(b.v.to_string().into()),
                cell(b.qhat.value().into()),
            ]);
        }
    }
    Ok(Table {
        title: format!("B^{stratum} classes"),
        columns: ["class", "stratum", "alpha", "v", "qhat"].map(String::from).to_vec(),
        rows,
    })
}

fn level_table(title: &str, anchor: &str, level_col: &str, rows: Vec<LevelRow>) -> Table {
    let rows = rows
        .into_iter()
        .map(|r| {
            let a = format!("{anchor} / {} {}", r.level, r.pattern);
            let cell = |v: CellValue| Cell::new(v, Provenance::Enumerated, a.clone());
            vec![
                cell(r.level.into()),
                cell(r.pattern.into()),
                cell(r.count.into()),
                cell(r.qhat.into()),
            ]
        })
        .collect();
    Table {
        title: title.into(),
        columns: [level_col, "type", "number", "qhat"].map(String::from).to_vec(),
        rows,
    }
}

pub fn table(name: TableName) -> Result<Table> {
    let catalog = Catalog::standard()?;
    let e8 = catalog.get(ClassId::MConnected);
    Ok(match name {
        TableName::Roots => level_table(
            "Roots of the maximal class",
            "maximal roots",
            "level",
            root_level_table(e8)?,
        ),
        TableName::B2 => level_table(
            "B^2 of the maximal class",
            "maximal B^2",
            "level",
            b_level_table(e8, 1)?,
        ),
        TableName::B4 => level_table(
            "B^4 of the maximal class",
            "maximal B^4",
            "level",
            b_level_table(e8, 2)?,
        ),
        TableName::E7B4 => level_table(
            "B^4 of the E7 class",
            "E7 B^4",
            "bi_level",
            ordered_bilevel_rows(bi_level_table(catalog.get(ClassId::M1Connected))?),
        ),
        TableName::Summary => summary_table(&catalog)?,
        TableName::Delta => delta_grid(&catalog)?,
    })
}

/// Puts the `E7` rows in the published order; unmatched rows go last.
fn ordered_bilevel_rows(mut rows: Vec<LevelRow>) -> Vec<LevelRow> {
    let position = |r: &LevelRow| {
        reference::E7_BILEVELS
            .iter()
            .position(|(_, p, _, _)| *p == r.pattern)
            .unwrap_or(usize::MAX)
    };
    rows.sort_by_key(position);
    rows
}

fn summary_table(catalog: &Catalog) -> Result<Table> {
    let grid = summary_grid(catalog)?;
    let rows = grid
        .rows
        .iter()
        .map(|row| {
            let prov = if row.cited {
                Provenance::CitedFormula
            } else {
                Provenance::Enumerated
            };
            let mut cells = vec![Cell::new(
                row.label.as_str(),
                prov,
                format!("summary grid / {}", row.label),
            )];
            for (col, v) in grid.columns.iter().zip(&row.values) {
                cells.push(Cell::new(*v, prov, format!("summary grid / {col} / {}", row.label)));
            }
            cells
        })
        .collect();
    let mut columns = vec!["row".to_string()];
    columns.extend(grid.columns.iter().cloned());
    Ok(Table {
        title: "Signed counts by Bertini pair".into(),
        columns,
        rows,
    })
}

const DELTA_ROWS: [(&str, &str, &str); 5] = [
    ("(4,1)", "abs(alpha.E) = 1 in B^4", "0"),
    ("(4,2)", "alpha.E = 0 or 2 in B^4", "4(r-1)"),
    ("(2,0)", "B^2 through B^0", "-4(r-1)"),
    ("(2,1)", "abs(alpha.E) = 1 in B^2", "0"),
    ("(2,2)", "alpha.E = 2 in B^2", "-2(r-r')"),
];

fn delta_grid(catalog: &Catalog) -> Result<Table> {
    let mut per_class: Vec<(ClassId, DeltaTable)> = Vec::new();
    for m in catalog.models() {
        if let Some(e) = vanishing_roots(m)?.first() {
            per_class.push((m.id(), delta_table(m, e)?));
        }
    }
    let rows = DELTA_ROWS
        .iter()
        .enumerate()
        .map(|(i, (label, desc, formula))| {
            let prov = if i == 4 {
                Provenance::CitedFormula
            } else {
                Provenance::Enumerated
            };
            let mut cells = vec![
                Cell::new(*label, prov, format!("wall-crossing differences / {label}")),
                Cell::new(*desc, prov, format!("wall-crossing differences / {label}")),
                Cell::new(*formula, prov, format!("wall-crossing differences / {label}")),
            ];
            for (id, d) in &per_class {
                cells.push(Cell::new(
                    d.as_array()[i],
                    prov,
                    format!("wall-crossing differences / {label} / {id}"),
                ));
            }
            cells
        })
        .collect();
    let mut columns = vec!["delta".to_string(), "strata".to_string(), "formula".to_string()];
    columns.extend(per_class.iter().map(|(id, _)| id.as_str().to_string()));
    Ok(Table {
        title: "Wall-crossing differences".into(),
        columns,
        rows,
    })
}

/// One row per class: vanishing roots and the wall-crossing checks over all
/// of them.
pub fn wallcross_table(selector: ClassSelector) -> Result<Table> {
    let catalog = Catalog::standard()?;
    let mut rows = Vec::new();
    for id in selector.ids() {
        let m = catalog.get(id);
        let w = wallcross_summary(m)?;
        let anchor = format!("wall-crossing / {id}");
        let cell = |v: CellValue| Cell::new(v, Provenance::Enumerated, anchor.clone());
        let d = w.delta.map(|d| d.as_array()).unwrap_or([0; 5]);
        let mut row = vec![
            cell(id.as_str().into()),
            cell(m.rank().into()),
            cell(w.roots.into()),
            cell(w.splitting_checks.into()),
            cell(w.splitting_matches.into()),
            cell(w.orth_ok.into()),
            cell(w.pairing_ok.into()),
            cell(w.delta_constant.into()),
        ];
        row.extend(d.iter().map(|&v| cell(v.into())));
        row.push(cell(w.delta.map(|d| d.weighted_balance()).unwrap_or(0).into()));
        rows.push(row);
    }
    let columns = [
        "class",
        "r",
        "vanishing_roots",
        "splitting_checks",
        "splitting_matches",
        "orth_sum_ok",
        "pairing_ok",
        "delta_constant",
        "d41",
        "d42",
        "d20",
        "d21",
        "d22",
        "weighted_balance",
    ]
    .map(String::from)
    .to_vec();
    Ok(Table {
        title: "Wall-crossing checks".into(),
        columns,
        rows,
    })
}

/// Aggregates of the wall-crossing checks for one class. Counts are over
/// vanishing roots `E` unless noted.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WallcrossSummary {
    pub roots: usize,
    /// Number of `(E, alpha)` pairs checked against the lemma tables.
    pub splitting_checks: usize,
    pub splitting_matches: usize,
    /// Roots with `orth_root_sum = 2(r-1)`.
    pub orth_ok: usize,
    /// Roots where both pairing sums vanish and the reflection behaves.
    pub pairing_ok: usize,
    /// Roots whose difference table equals the closed forms.
    pub delta_constant: usize,
    /// Table for the first root.
    pub delta: Option<DeltaTable>,
}

pub fn wallcross_summary(m: &RealModel) -> Result<WallcrossSummary> {
    let roots = vanishing_roots(m)?;
    let strata = [b_classes(m, 0)?, b_classes(m, 1)?, b_classes(m, 2)?];
    let r = m.rank() as i64;
    let mut s = WallcrossSummary {
        roots: roots.len(),
        splitting_checks: 0,
        splitting_matches: 0,
        orth_ok: 0,
        pairing_ok: 0,
        delta_constant: 0,
        delta: None,
    };
    for e in &roots {
        for b in strata.iter().flatten() {
            let v_dot_e = crate::lattice::intersect(&b.v, &e.e);
            let found: Vec<_> = splittings(m, b, e)?.iter().map(|c| c.shape()).collect();
            s.splitting_checks += 1;
            if found == expected_splittings(b.stratum, v_dot_e) {
                s.splitting_matches += 1;
            }
        }
        if orth_root_sum(m, e)? == 2 * (r - 1) {
            s.orth_ok += 1;
        }
        let p2 = pairing_cancellation(m, e, 1)?;
        let p4 = pairing_cancellation(m, e, 2)?;
        if [p2, p4].iter().all(|p| p.sum == 0 && p.flips && p.invariant_elsewhere) {
            s.pairing_ok += 1;
        }
        let d = delta_table(m, e)?;
        if d.as_array() == expected_delta(m.rank()) {
            s.delta_constant += 1;
        }
        s.delta.get_or_insert(d);
    }
    Ok(s)
}

/// One verification check.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationRecord {
    pub check: String,
    pub anchor: String,
    pub expected: i64,
    pub provenance: Provenance,
    /// `None` when the computation itself failed; see `note`.
    pub actual: Option<i64>,
    pub pass: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl VerificationRecord {
    pub fn new(
        check: impl Into<String>,
        anchor: impl Into<String>,
        expected: i64,
        provenance: Provenance,
        actual: i64,
    ) -> Self {
        VerificationRecord {
            check: check.into(),
            anchor: anchor.into(),
            expected,
            provenance,
            actual: Some(actual),
            pass: expected == actual,
            note: None,
        }
    }

    pub fn failed(
        check: impl Into<String>,
        anchor: impl Into<String>,
        expected: i64,
        provenance: Provenance,
        err: &Error,
    ) -> Self {
        VerificationRecord {
            check: check.into(),
            anchor: anchor.into(),
            expected,
            provenance,
            actual: None,
            pass: false,
            note: Some(err.to_string()),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub scope: String,
    pub passed: usize,
    pub failed: usize,
    pub records: Vec<VerificationRecord>,
}

impl Report {
    pub fn new(scope: String, records: Vec<VerificationRecord>) -> Self {
        let passed = records.iter().filter(|r| r.pass).count();
        Report {
            scope,
            passed,
            failed: records.len() - passed,
            records,
        }
    }

    pub fn failures(&self) -> impl Iterator<Item = &VerificationRecord> {
        self.records.iter().filter(|r| !r.pass)
    }

    pub fn record(&self, check: &str) -> Option<&VerificationRecord> {
        self.records.iter().find(|r| r.check == check)
    }

    pub fn render(&self, format: Format) -> Result<String> {
        let header = ["check", "anchor", "provenance", "expected", "actual", "pass"].map(String::from);
        let rows = self.records.iter().map(|r| {
            vec![
                r.check.clone(),
                r.anchor.clone(),
                r.provenance.to_string(),
                r.expected.to_string(),
                r.actual.map(|a| a.to_string()).unwrap_or_else(|| "error".into()),
                if r.pass { "PASS" } else { "FAIL" }.to_string(),
            ]
        });
        match format {
            Format::Json => to_json(self),
            Format::Csv => to_csv(&header, rows),
            Format::Md => {
                let mut s = format!(
                    "### Verification ({}): {} passed, {} failed\n\n| {} |\n|---|---|---|---|---|---|\n",
                    self.scope,
                    self.passed,
                    self.failed,
                    header.join(" | ")
                );
                for r in rows {
                    s.push_str(&format!("| {} |\n", r.join(" | ")));
                }
                Ok(s)
            }
        }
    }
}

/// A basis that must fail validation: the last simple root doubled, or a
/// stray root for the rank-0 class.
pub fn corrupt_basis(id: ClassId) -> Vec<PicClass> {
    let mut basis = stored_simple_roots(id);
    match basis.last_mut() {
        Some(b) => *b = *b * 2,
        None => basis.push(PicClass::ell(1) - PicClass::ell(2)),
    }
    basis
}

struct Recorder {
    records: Vec<VerificationRecord>,
    verbosity: u8,
}

impl Recorder {
    fn check(&mut self, check: String, anchor: String, expected: i64, prov: Provenance, actual: Result<i64>) {
        let rec = match actual {
            Ok(a) => VerificationRecord::new(check, anchor, expected, prov, a),
            Err(e) => VerificationRecord::failed(check, anchor, expected, prov, &e),
        };
        if self.verbosity > 0 {
            eprintln!("{} {}", if rec.pass { "ok  " } else { "FAIL" }, rec.check);
        }
        self.records.push(rec);
    }
}

/// Runs the full suite on the classes in `scope`. Cross-class checks (pairs,
/// tables, closed forms) run when any member of the pair is in scope, or
/// for `all`.
pub fn verify(scope: ClassSelector, corrupt: Option<ClassId>, verbosity: u8) -> Report {
    use Provenance::{CitedFormula, Enumerated};
    let mut rec = Recorder {
        records: Vec::new(),
        verbosity,
    };
    let mut models: BTreeMap<ClassId, RealModel> = BTreeMap::new();

    for c in deformation_classes() {
        let id = c.id;
        let basis = if corrupt == Some(id) {
            corrupt_basis(id)
        } else {
            stored_simple_roots(id)
        };
        let built = validate_embedding(&c, basis).and_then(|_| RealModel::build(&c));
        if scope.includes(id) {
            let ok = built.as_ref().map(|_| 1).map_err(Clone::clone);
            rec.check(
                format!("embedding_valid/{id}"),
                format!("root lattices / {id}"),
                1,
                Enumerated,
                ok,
            );
        }
        if let Ok(m) = built {
            models.insert(id, m);
        }
    }

    for id in scope.ids() {
        let Some(m) = models.get(&id) else { continue };
        class_checks(&mut rec, m);
    }

    for (a, b) in bertini_pairs() {
        if !(scope.includes(a) || scope.includes(b)) {
            continue;
        }
        let (ca, cb) = (a.class(), b.class());
        rec.check(
            format!("pair_rank_sum/{a}"),
            format!("Bertini pair {a} / {b}"),
            16,
            Enumerated,
            Ok(2 * ca.rank_r as i64 + 2 * cb.rank_r as i64),
        );
        let total = match (models.get(&a), models.get(&b)) {
            (Some(ma), Some(mb)) => {
                let dual = if a == b { ma.complement_model() } else { Ok(mb.clone()) };
                dual.and_then(|d| paired_count(ma, &d))
            }
            _ => Err(Error::Embedding {
                class: format!("{a}/{b}"),
                reason: "model unavailable".into(),
            }),
        };
        rec.check(
            format!("paired_count/{a}"),
            format!("Bertini pair {a} / {b}"),
            reference::PAIRED_COUNT,
            CitedFormula,
            total,
        );
    }

    if scope == ClassSelector::All {
        global_checks(&mut rec, &models);
    }
    Report::new(scope.to_string(), rec.records)
}

fn class_checks(rec: &mut Recorder, m: &RealModel) {
    use Provenance::{CitedFormula, Enumerated};
    let id = m.id();
    let c: &DeformationClass = &m.class;
    let r = c.rank_r;
    let a = |what: &str| format!("{what} / {id}");

    let lambda: RootSystemType = c.lambda_root_type();
    rec.check(
        format!("root_count/{id}"),
        a("root lattices"),
        lambda.root_count().unwrap_or(0) as i64,
        Enumerated,
        m.roots().map(|v| v.len() as i64),
    );
    let dual_type: RootSystemType = c.bertini_dual_id.class().lambda_root_type();
    rec.check(
        format!("complement_root_count/{id}"),
        a("root lattices, complement"),
        dual_type.root_count().unwrap_or(0) as i64,
        Enumerated,
        m.embedding
            .complement()
            .and_then(|comp| enumerate_vectors(&comp, -2))
            .map(|v| v.len() as i64),
    );
    rec.check(
        format!("root_signed_sum/{id}"),
        a("signed root sum"),
        2 * r as i64,
        Enumerated,
        signed_sum(m, 1),
    );
    rec.check(
        format!("norm4_signed_sum/{id}"),
        a("signed B^4 sum"),
        c4_closed(r),
        Enumerated,
        signed_sum(m, 2),
    );
    if let Some((_, v)) = reference::B4_SUMS.iter().find(|(x, _)| *x == id) {
        rec.check(
            format!("published_b4_sum/{id}"),
            a("published B^4 sum"),
            *v,
            Enumerated,
            signed_sum(m, 2),
        );
    }
    rec.check(
        format!("c2_total/{id}"),
        a("signed B^2 count"),
        c2_closed(r),
        CitedFormula,
        c2_total(m),
    );
    rec.check(
        format!("full_count/{id}"),
        a("total signed count"),
        reference::FULL_COUNT,
        CitedFormula,
        full_count(m),
    );
    let (lines_rank, lines_euler) = lines_identities(c);
    rec.check(
        format!("lines_rank_sum/{id}"),
        a("line counts"),
        16,
        Enumerated,
        Ok(lines_rank),
    );
    rec.check(
        format!("lines_euler/{id}"),
        a("line counts"),
        8,
        CitedFormula,
        Ok(lines_euler),
    );
    rec.check(
        format!("b_class_invariants/{id}"),
        a("degree and parity of B classes"),
        1,
        Enumerated,
        b_class_invariants(m).map(|_| 1),
    );

    if matches!(m.pin, crate::pin::PinModel::Code(_)) {
        rec.check(
            format!("code_matches_vanishing_basis/{id}"),
            a("code and vanishing basis agree"),
            (m.roots().map(|v| v.len()).unwrap_or(0) + m.norm4().map(|v| v.len()).unwrap_or(0)) as i64,
            Enumerated,
            code_vs_basis_agreement(m),
        );
    }
    rec.check(
        format!("weyl_images_stable/{id}"),
        a("sums under Weyl images of the basis"),
        WEYL_IMAGES as i64,
        Enumerated,
        weyl_stable_images(m, WEYL_IMAGES, WEYL_SEED ^ id as u64),
    );

    if r == 0 {
        return;
    }
    match wallcross_summary(m) {
        Ok(w) => {
            let n = w.roots as i64;
            let wa = |what: &str| format!("wall-crossing / {what} / {id}");
            rec.check(
                format!("splittings_match/{id}"),
                wa("splitting lemmas"),
                w.splitting_checks as i64,
                Enumerated,
                Ok(w.splitting_matches as i64),
            );
            rec.check(
                format!("orth_root_sum/{id}"),
                wa("roots orthogonal to E"),
                n,
                Enumerated,
                Ok(w.orth_ok as i64),
            );
            rec.check(
                format!("pairing_cancels/{id}"),
                wa("pairing by reflection"),
                n,
                Enumerated,
                Ok(w.pairing_ok as i64),
            );
            rec.check(
                format!("delta_formulas/{id}"),
                wa("differences"),
                n,
                CitedFormula,
                Ok(w.delta_constant as i64),
            );
            if let Some(d) = w.delta {
                let exp = expected_delta(r);
                for (i, (label, _, _)) in DELTA_ROWS.iter().enumerate() {
                    let prov = if i == 4 { CitedFormula } else { Enumerated };
                    rec.check(
                        format!("delta{label}/{id}"),
                        wa(label),
                        exp[i],
                        prov,
                        Ok(d.as_array()[i]),
                    );
                }
                rec.check(
                    format!("weighted_balance/{id}"),
                    wa("vertex balance"),
                    reference::WEIGHTED_BALANCE,
                    CitedFormula,
                    Ok(d.weighted_balance()),
                );
            }
        }
        Err(e) => rec.check(
            format!("wallcross/{id}"),
            format!("wall-crossing / {id}"),
            1,
            Enumerated,
            Err(e),
        ),
    }
}

/// Number of roots and `(-4)`-vectors where the code value equals the value
/// from an equivalent vanishing basis.
fn code_vs_basis_agreement(m: &RealModel) -> Result<i64> {
    let basis = m
        .equivalent_vanishing_basis()?
        .ok_or_else(|| Error::InvalidCode(format!("no vanishing root basis for {}", m.id())))?;
    let alt = RealModel::with_vanishing_basis(&m.class, basis)?;
    let mut agree = 0;
    for v in m.roots()?.iter().chain(m.norm4()?.iter()) {
        if m.qhat(v)? == alt.qhat(v)? {
            agree += 1;
        }
    }
    Ok(agree)
}

/// Draws `n` Weyl images of a vanishing basis for `Λ` and counts those
/// that leave both signed sums unchanged.
pub fn weyl_stable_images(m: &RealModel, n: usize, seed: u64) -> Result<i64> {
    let roots = m.roots()?;
    let norm4 = m.norm4()?;
    if roots.is_empty() {
        return Ok(n as i64);
    }
    let start = match m.equivalent_vanishing_basis()? {
        Some(b) => VanishingBasis::new(b)?,
        None => return Err(Error::InvalidCode(format!("no vanishing root basis for {}", m.id()))),
    };
    let sum = |vb: &VanishingBasis, vs: &[PicClass]| -> Result<i64> {
        vs.iter().map(|v| qhat_vanishing_basis(vb, v)?.sign()).sum()
    };
    let target = (signed_sum(m, 1)?, signed_sum(m, 2)?);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut stable = 0;
    for _ in 0..n {
        let image = start.random_weyl_image(&roots, 6, &mut rng)?;
        if (sum(&image, &roots)?, sum(&image, &norm4)?) == target {
            stable += 1;
        }
    }
    Ok(stable)
}

fn level_rows_checks<R>(
    rec: &mut Recorder,
    name: &str,
    expected: &[R],
    actual: Result<Vec<LevelRow>>,
    key: impl Fn(&R) -> (String, String, usize, u8),
) {
    use Provenance::Enumerated;
    let rows = match actual {
        Ok(rows) => rows,
        Err(e) => {
            rec.check(
                format!("{name}/rows"),
                name.to_string(),
                expected.len() as i64,
                Enumerated,
                Err(e),
            );
            return;
        }
    };
    rec.check(
        format!("{name}/rows"),
        name.to_string(),
        expected.len() as i64,
        Enumerated,
        Ok(rows.len() as i64),
    );
    for (i, exp) in expected.iter().enumerate() {
        let (level, pattern, count, qhat) = key(exp);
        let found = rows
            .iter()
            .find(|r| r.level == level && (pattern.is_empty() || r.pattern == pattern));
        let anchor = format!("{name} / row {} / {level} {pattern}", i + 1);
        let missing = || Error::InvalidCode(format!("row {level} {pattern} not produced"));
        rec.check(
            format!("{name}/row{}/count", i + 1),
            anchor.clone(),
            count as i64,
            Enumerated,
            found.map(|r| r.count as i64).ok_or_else(missing),
        );
        rec.check(
            format!("{name}/row{}/qhat", i + 1),
            anchor,
            qhat as i64,
            Enumerated,
            found.map(|r| r.qhat as i64).ok_or_else(missing),
        );
    }
}

fn global_checks(rec: &mut Recorder, models: &BTreeMap<ClassId, RealModel>) {
    use Provenance::{CitedFormula, Enumerated};
    let unavailable = |id: ClassId| Error::Embedding {
        class: id.to_string(),
        reason: "model unavailable".into(),
    };

    match models.get(&ClassId::MConnected) {
        Some(e8) => {
            level_rows_checks(
                rec,
                "maximal_roots",
                &reference::ROOT_LEVELS,
                root_level_table(e8),
                |r| (r.0.to_string(), String::new(), r.1, r.2),
            );
            level_rows_checks(rec, "maximal_b2", &reference::B2_LEVELS, b_level_table(e8, 1), |r| {
                (r.0.to_string(), String::new(), r.1, r.2)
            });
            level_rows_checks(rec, "maximal_b4", &reference::B4_LEVELS, b_level_table(e8, 2), |r| {
                (r.0.to_string(), r.1.to_string(), r.2, r.3)
            });
        }
        None => rec.check(
            "maximal_tables".into(),
            "maximal class".into(),
            1,
            Enumerated,
            Err(unavailable(ClassId::MConnected)),
        ),
    }
    match models.get(&ClassId::M1Connected) {
        Some(e7) => level_rows_checks(rec, "e7_b4", &reference::E7_BILEVELS, bi_level_table(e7), |r| {
            (r.0.to_string(), r.1.to_string(), r.2, r.3)
        }),
        None => rec.check(
            "e7_b4".into(),
            "E7 class".into(),
            1,
            Enumerated,
            Err(unavailable(ClassId::M1Connected)),
        ),
    }

    let catalog_ok = ClassId::ALL.iter().all(|id| models.contains_key(id));
    if catalog_ok {
        match Catalog::standard().and_then(|c| summary_grid(&c)) {
            Ok(grid) => {
                for ((label, values), row) in reference::SUMMARY_GRID.iter().zip(&grid.rows) {
                    let prov = if row.cited { CitedFormula } else { Enumerated };
                    for (j, (col, _)) in GRID_COLUMNS.iter().enumerate() {
                        let anchor = format!("summary grid / {col} / {label}");
                        rec.check(
                            format!("summary/{label}/{col}"),
                            anchor.clone(),
                            values[j],
                            prov,
                            Ok(row.values[j]),
                        );
                        rec.check(
                            format!("summary/{label}/{col}/closed_form"),
                            anchor,
                            values[j],
                            prov,
                            Ok(row.closed_form[j]),
                        );
                    }
                }
            }
            Err(e) => rec.check("summary".into(), "summary grid".into(), 36, Enumerated, Err(e)),
        }
    }

    let identities_30 = (0..=8usize)
        .filter(|&r| c0_total(r) + c2_closed(r) + c4_closed(r) == 30)
        .count();
    rec.check(
        "closed_forms_total_30".into(),
        "closed forms in r".into(),
        9,
        CitedFormula,
        Ok(identities_30 as i64),
    );
    let pair_96 = (0..=8usize)
        .filter(|&r| c2_closed(r) + 2 * c4_closed(r) + c2_closed(8 - r) + 2 * c4_closed(8 - r) == 96)
        .count();
    rec.check(
        "closed_forms_pair_96".into(),
        "closed forms in r".into(),
        9,
        CitedFormula,
        Ok(pair_96 as i64),
    );

    for (name, r, entries, sign) in [
        (
            "normalize_maximal_seed",
            0usize,
            vec![1, 1, 1, 1, 1, -1, -1, -1, -1],
            1i64,
        ),
        ("normalize_submaximal_seed", 1, vec![1, 1, 1, 1, -1, -1, -1], -1),
    ] {
        let reached = Code::new(r, &entries).and_then(|seed| {
            let target = Code::uniform(r, sign)?;
            Ok((normalize_code(&seed).0 == target) as i64)
        });
        rec.check(name.into(), "code normalization".into(), 1, Enumerated, reached);
    }

    if let Some(d6) = models.get(&ClassId::M2Connected) {
        let decomposed = norm4_residue_groups(d6).map(|groups| {
            groups
                .iter()
                .map(|g| g.size as i64 * if g.qhat == 0 { 1 } else { -1 })
                .sum::<i64>()
        });
        rec.check(
            "d6_residue_groups_sum".into(),
            "D6 (-4)-vectors by residue group".into(),
            60,
            Enumerated,
            decomposed,
        );
    }

    if let Some(m4) = models.get(&ClassId::M4) {
        let kernel_roots = m4
            .embedding
            .complement()
            .and_then(|c| enumerate_vectors(&c, -2))
            .map(|v| v.len() as i64);
        rec.check(
            "four_a1_kernel_roots".into(),
            "4A1 complement roots".into(),
            8,
            Enumerated,
            kernel_roots,
        );
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn keys_are_snake_case() {
        assert_eq!(snake_key("M-1"), "m_1");
        assert_eq!(snake_key("(M-2)_I"), "m_2_i");
        assert_eq!(snake_key("M-connected"), "m_connected");
        assert_eq!(snake_key("(4,1)"), "4_1");
    }

    #[test]
    fn selectors_parse() {
        assert_eq!("all".parse::<ClassSelector>().unwrap(), ClassSelector::All);
        assert_eq!("M4".parse::<ClassSelector>().unwrap(), ClassSelector::One(ClassId::M4));
        assert!("E9".parse::<ClassSelector>().is_err());
        assert_eq!("7".parse::<TableName>().unwrap(), TableName::Delta);
        assert_eq!("e7-b4".parse::<TableName>().unwrap(), TableName::E7B4);
        assert!("8".parse::<TableName>().is_err());
    }

    #[test]
    fn root_table_ends_with_level_three() {
        let t = table(TableName::Roots).unwrap();
        assert_eq!(t.rows.len(), 4);
        let last: Vec<String> = t.rows[3].iter().map(|c| c.value.to_string()).collect();
        assert_eq!((last[0].as_str(), last[2].as_str(), last[3].as_str()), ("3", "16", "0"));
    }

    #[test]
    fn summary_column_m() {
        let t = table(TableName::Summary).unwrap();
        let col: Vec<CellValue> = t.rows.iter().map(|r| r[1].value.clone()).collect();
        let want: Vec<CellValue> = [-128, 0, 112, 0, 46, 30].map(CellValue::Int).to_vec();
        assert_eq!(col, want);
    }

    #[test]
    fn e7_rows_follow_published_order() {
        let t = table(TableName::E7B4).unwrap();
        let patterns: Vec<String> = t.rows.iter().map(|r| r[1].value.to_string()).collect();
        let want: Vec<String> = reference::E7_BILEVELS.iter().map(|r| r.1.to_string()).collect();
        assert_eq!(patterns, want);
    }

    #[test]
    fn single_class_verify_passes() {
        let report = verify(ClassSelector::One(ClassId::M4), None, 0);
        assert_eq!(report.failed, 0, "{:?}", report.failures().collect::<Vec<_>>());
        assert_eq!(report.record("full_count/M4").unwrap().actual, Some(30));
    }

    #[test]
    fn corrupted_embedding_is_named() {
        let report = verify(ClassSelector::One(ClassId::M3Split), Some(ClassId::M3Split), 0);
        let bad = report.record("embedding_valid/M3-split").unwrap();
        assert!(!bad.pass);
        assert!(bad.note.is_some());
    }
}
