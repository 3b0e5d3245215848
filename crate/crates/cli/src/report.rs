//! Table reproduction.
//!
//! `table3` certifies the spherical embedding of every ETF family member,
//! `table4` certifies the Gram matrix built from each `k = 2μ` graph, and
//! `table5` pairs rows of the two with equal `M` and `{N, M − N}`.

use std::fmt;
use std::io::Write;

use anyhow::Context;
use rayon::prelude::*;
use serde::Serialize;

use rank3_etf_core::constructions::{build_with, Family, FamilySpec, Provenance};
use rank3_etf_core::etf::{descendant_gram, embedding_gram, verify_etf, welch_bound_sq};
use rank3_etf_core::spectrum::spectrum;
use rank3_etf_core::{Error, Limits, QuadExt, SrgParams};

use crate::io::status_name;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Table {
    Table3,
    Table4,
    Table5,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OutputFormat {
    Json,
    Csv,
    Text,
}

/// Upper bounds on the size parameters; `None` keeps each family's default.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Bounds {
    /// Bounds `n` (or `m`) for the parametrized families.
    pub max_n: Option<u32>,
    /// Bounds `q` for the Paley and Peisert graphs.
    pub max_q: Option<u32>,
}

/// Vertex cap for table rows unless `ETF_RANK3_MAX_VERTICES` is set.
pub const DEFAULT_TABLE_MAX_VERTICES: usize = 500;

pub const CERTIFIED: &str = "certified";
pub const PARAMETER_ONLY: &str = "parameter-only";

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ReportRow {
    pub family: String,
    pub size: Option<u32>,
    pub v: u64,
    pub k: u64,
    pub lambda: u64,
    pub mu: u64,
    #[serde(rename = "M")]
    pub m: u64,
    #[serde(rename = "N")]
    pub n: u64,
    #[serde(rename = "M_minus_N")]
    pub m_minus_n: u64,
    pub alpha_sq: String,
    pub status: String,
    pub provenance: String,
}

impl ReportRow {
    pub fn params(&self) -> SrgParams {
        SrgParams::new(self.v, self.k, self.lambda, self.mu)
    }

    pub fn label(&self) -> String {
        match self.size {
            Some(size) => match Family::from_id(&self.family) {
                Some(f) => FamilySpec::new(f, size).label(),
                None => format!("{}({size})", self.family),
            },
            None => self.family.clone(),
        }
    }
}

/// Two rows, one from each table, with equal `M` and `{N, M − N}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PairRow {
    #[serde(rename = "M")]
    pub m: u64,
    pub n_small: u64,
    pub n_large: u64,
    pub table3: String,
    pub table4: String,
}

/// A row that failed certification; the table is aborted.
#[derive(Debug)]
pub struct CertificationFailure {
    pub row: String,
    pub reason: String,
}

impl fmt::Display for CertificationFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "certification failed for {}: {}", self.row, self.reason)
    }
}

impl std::error::Error for CertificationFailure {}

/// Graphs in the descendant table known only by their parameters.
pub const PARAMETER_ONLY_ROWS: [(&str, SrgParams); 3] = [
    ("McLaughlin", SrgParams { v: 275, k: 112, lambda: 30, mu: 56 }),
    ("Peisert_sporadic_529", SrgParams { v: 529, k: 264, lambda: 131, mu: 132 }),
    ("srg_2209_1104_551_552", SrgParams { v: 2209, k: 1104, lambda: 551, mu: 552 }),
];

fn table_families(provenance: Provenance) -> impl Iterator<Item = Family> {
    Family::ALL.into_iter().filter(move |f| f.provenance() == provenance)
}

/// Family instances of a table in registry order.
pub fn instances(table: Table, bounds: Bounds) -> Vec<FamilySpec> {
    let provenance = match table {
        Table::Table3 => Provenance::Table3,
        Table::Table4 | Table::Table5 => Provenance::Table4,
    };
    table_families(provenance)
        .flat_map(|f| {
            let max = match f {
                Family::Paley | Family::Peisert => bounds.max_q,
                _ => bounds.max_n,
            };
            let max = max.unwrap_or(f.default_max_size());
            f.sizes_up_to(max).into_iter().map(move |s| FamilySpec::new(f, s))
        })
        .collect()
}

fn row_from(
    family: &str,
    size: Option<u32>,
    p: SrgParams,
    m: u64,
    n: u64,
    alpha_sq: String,
    provenance: Provenance,
) -> ReportRow {
    ReportRow {
        family: family.to_owned(),
        size,
        v: p.v,
        k: p.k,
        lambda: p.lambda,
        mu: p.mu,
        m,
        n,
        m_minus_n: m - n,
        alpha_sq,
        status: CERTIFIED.to_owned(),
        provenance: provenance.as_str().to_owned(),
    }
}

fn size_of(spec: FamilySpec) -> Option<u32> {
    (!spec.family.is_sporadic()).then_some(spec.size)
}

fn fail(spec: &FamilySpec, reason: impl Into<String>) -> anyhow::Error {
    CertificationFailure { row: spec.label(), reason: reason.into() }.into()
}

/// Builds the graph and certifies the frame that the table attaches to it.
pub fn certify_row(spec: FamilySpec, limits: &Limits) -> anyhow::Result<ReportRow> {
    let provenance = spec.family.provenance();
    let g = build_with(spec, limits)?;
    let p = g.srg_params()?;
    let gram = match provenance {
        Provenance::Table3 => embedding_gram(&g)?,
        Provenance::Table4 => match descendant_gram(&g) {
            Ok(gram) => gram,
            Err(Error::NotDescendantSource(_)) => return Err(fail(&spec, format!("k = {} is not 2μ = {}", p.k, 2 * p.mu))),
            Err(e) => return Err(e.into()),
        },
        Provenance::CrossCheck => anyhow::bail!("{} does not belong to a table", spec.family),
    };
    let cert = verify_etf(&gram)?;
    if !cert.is_etf() {
        return Err(fail(&spec, status_name(&cert.status)));
    }
    Ok(row_from(
        spec.family.id(),
        size_of(spec),
        p,
        cert.m as u64,
        cert.n as u64,
        cert.alpha_sq.to_string(),
        provenance,
    ))
}

/// `(M, N)` read off the spectrum: `(v, g)` for an embedding on the
/// `s`-eigenspace, `(v + 1, g + 1)` for the frame built from a `k = 2μ` graph.
pub fn frame_dimensions(p: &SrgParams, provenance: Provenance) -> anyhow::Result<(u64, u64)> {
    let sp = spectrum(p)?;
    Ok(match provenance {
        Provenance::Table4 => {
            anyhow::ensure!(p.k == 2 * p.mu, "{p} does not satisfy k = 2μ");
            (p.v + 1, sp.g + 1)
        }
        _ => (p.v, sp.g),
    })
}

fn parameter_row(family: &str, size: Option<u32>, p: SrgParams, provenance: Provenance) -> anyhow::Result<ReportRow> {
    let (m, n) = frame_dimensions(&p, provenance)?;
    let alpha_sq = QuadExt::rational(welch_bound_sq(m, n)).to_string();
    let mut row = row_from(family, size, p, m, n, alpha_sq, provenance);
    row.status = PARAMETER_ONLY.to_owned();
    Ok(row)
}

pub fn parameter_only_rows() -> anyhow::Result<Vec<ReportRow>> {
    PARAMETER_ONLY_ROWS
        .iter()
        .map(|(name, p)| parameter_row(name, None, *p, Provenance::Table4))
        .collect()
}

fn within(spec: &FamilySpec, limits: &Limits) -> bool {
    spec.expected_params().is_ok_and(|p| p.v <= limits.max_vertices as u64)
}

/// Instances left out of a table because they exceed the vertex guard.
pub fn skipped_instances(table: Table, bounds: Bounds, limits: &Limits) -> Vec<FamilySpec> {
    instances(table, bounds).into_iter().filter(|s| !within(s, limits)).collect()
}

/// Rows of `table3` or `table4`, computed in parallel and returned in
/// registry order. Instances above the vertex guard are left out; the first
/// failing row in registry order aborts the table.
pub fn generate_table(table: Table, bounds: Bounds, limits: &Limits) -> anyhow::Result<Vec<ReportRow>> {
    anyhow::ensure!(table != Table::Table5, "use comparison_table for table5");
    let specs: Vec<FamilySpec> = instances(table, bounds).into_iter().filter(|s| within(s, limits)).collect();
    let results: Vec<anyhow::Result<ReportRow>> =
        specs.par_iter().map(|&spec| certify_row(spec, limits).with_context(|| spec.label())).collect();
    let mut rows = results.into_iter().collect::<anyhow::Result<Vec<_>>>()?;
    if table == Table::Table4 {
        rows.extend(parameter_only_rows()?);
    }
    Ok(rows)
}

/// Pairs of parameter-level rows from both tables that share `M` and
/// `{N, M − N}`.
pub fn comparison_table(bounds: Bounds) -> anyhow::Result<Vec<PairRow>> {
    let side = |table: Table| -> anyhow::Result<Vec<ReportRow>> {
        instances(table, bounds)
            .into_iter()
            .map(|spec| parameter_row(spec.family.id(), size_of(spec), spec.expected_params()?, spec.family.provenance()))
            .collect()
    };
    let left = side(Table::Table3)?;
    let right = side(Table::Table4)?;
    let key = |r: &ReportRow| (r.m, r.n.min(r.m_minus_n), r.n.max(r.m_minus_n));
    let mut out = Vec::new();
    for a in &left {
        for b in right.iter().filter(|b| key(b) == key(a)) {
            let (m, n_small, n_large) = key(a);
            out.push(PairRow { m, n_small, n_large, table3: a.label(), table4: b.label() });
        }
    }
    Ok(out)
}

/// Rows that can be rendered as an aligned text table.
pub trait Tabular: Serialize {
    const HEADER: &'static [&'static str];
    fn cells(&self) -> Vec<String>;
}

impl Tabular for ReportRow {
    const HEADER: &'static [&'static str] =
        &["family", "size", "v", "k", "lambda", "mu", "M", "N", "M_minus_N", "alpha_sq", "status", "provenance"];

    fn cells(&self) -> Vec<String> {
        vec![
            self.family.clone(),
            self.size.map_or_else(|| "-".to_owned(), |s| s.to_string()),
            self.v.to_string(),
            self.k.to_string(),
            self.lambda.to_string(),
            self.mu.to_string(),
            self.m.to_string(),
            self.n.to_string(),
            self.m_minus_n.to_string(),
            self.alpha_sq.clone(),
            self.status.clone(),
            self.provenance.clone(),
        ]
    }
}

impl Tabular for PairRow {
    const HEADER: &'static [&'static str] = &["M", "n_small", "n_large", "table3", "table4"];

    fn cells(&self) -> Vec<String> {
        vec![
            self.m.to_string(),
            self.n_small.to_string(),
            self.n_large.to_string(),
            self.table3.clone(),
            self.table4.clone(),
        ]
    }
}

pub fn write_rows<T: Tabular, W: Write>(rows: &[T], format: OutputFormat, mut out: W) -> anyhow::Result<()> {
    match format {
        OutputFormat::Json => {
            serde_json::to_writer_pretty(&mut out, rows)?;
            writeln!(out)?;
        }
        OutputFormat::Csv => {
            let mut w = csv::Writer::from_writer(out);
            if rows.is_empty() {
                w.write_record(T::HEADER)?;
            }
            for r in rows {
                w.serialize(r)?;
            }
            w.flush()?;
        }
        OutputFormat::Text => {
            let cells: Vec<Vec<String>> = rows.iter().map(Tabular::cells).collect();
            let widths: Vec<usize> = (0..T::HEADER.len())
                .map(|c| cells.iter().map(|r| r[c].len()).chain([T::HEADER[c].len()]).max().unwrap_or(0))
                .collect();
            let line = |fields: Vec<&str>| {
                let padded: Vec<String> = fields.iter().zip(&widths).map(|(f, w)| format!("{f:<w$}")).collect();
                padded.join("  ").trim_end().to_owned()
            };
            writeln!(out, "{}", line(T::HEADER.to_vec()))?;
            for r in &cells {
                writeln!(out, "{}", line(r.iter().map(String::as_str).collect()))?;
            }
        }
    }
    Ok(())
}
