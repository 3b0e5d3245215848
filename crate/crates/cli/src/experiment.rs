//! Isomorphism and switching-equivalence experiments.
//!
//! Decisions are computed, not assumed: every report carries the decision,
//! the explicit bijection when one was found, and whether that bijection
//! was re-checked independently of the search.

use std::fmt;
use std::io::Write;
use std::str::FromStr;
use std::time::Instant;

use anyhow::{bail, Context};
use serde::Serialize;

use rank3_etf_core::constructions::{build_with, Family, FamilySpec};
use rank3_etf_core::iso::{is_isomorphism, isomorphism};
use rank3_etf_core::two_graph::{descendant_at, preserves_two_graph, switching_equivalent, Switching};
use rank3_etf_core::{Error, Graph, Limits};

use crate::report::OutputFormat;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ExperimentId {
    IsoChecks,
    DescendantVsO,
    SwitchNo4VsNoMinus,
    SwitchPaleyPeisert,
}

impl ExperimentId {
    pub const ALL: [ExperimentId; 4] =
        [Self::IsoChecks, Self::DescendantVsO, Self::SwitchNo4VsNoMinus, Self::SwitchPaleyPeisert];

    pub fn id(self) -> &'static str {
        match self {
            Self::IsoChecks => "iso_checks",
            Self::DescendantVsO => "descendant_vs_O",
            Self::SwitchNo4VsNoMinus => "switch_NO4_vs_NOminus",
            Self::SwitchPaleyPeisert => "switch_paley_peisert",
        }
    }

    pub fn default_size(self) -> Option<u32> {
        match self {
            Self::IsoChecks => None,
            Self::DescendantVsO => Some(3),
            Self::SwitchNo4VsNoMinus => Some(1),
            Self::SwitchPaleyPeisert => Some(9),
        }
    }
}

impl fmt::Display for ExperimentId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

impl FromStr for ExperimentId {
    type Err = anyhow::Error;

    fn from_str(s: &str) -> anyhow::Result<Self> {
        Self::ALL
            .into_iter()
            .find(|e| e.id().eq_ignore_ascii_case(s))
            .with_context(|| format!("unknown experiment {s:?}"))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Relation {
    Isomorphism,
    Switching,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Side {
    pub graph: String,
    /// `(v,k,λ,μ)` when strongly regular.
    pub params: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub left: Side,
    pub right: Side,
    pub relation: Relation,
    pub decision: String,
    /// Image of each left vertex on the right, when the relation holds.
    pub witness: Option<Vec<usize>>,
    /// Right-hand vertex isolated against left vertex 0 in a switching match.
    pub isolated_vertex: Option<usize>,
    pub witness_verified: bool,
    pub reason: Option<String>,
    pub wall_time_ms: u128,
}

impl Check {
    pub fn holds(&self) -> bool {
        self.witness.is_some()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ExperimentReport {
    pub question: String,
    pub size: Option<u32>,
    pub checks: Vec<Check>,
    pub wall_time_ms: u128,
}

fn side(g: &Graph) -> Side {
    Side {
        graph: g.label().unwrap_or("unnamed").to_owned(),
        params: g.srg_params().ok().map(|p| p.to_string()),
    }
}

fn complement(g: &Graph) -> Graph {
    let label = format!("complement of {}", g.label().unwrap_or("unnamed"));
    g.complement().with_label(label)
}

pub fn iso_check(g: &Graph, h: &Graph, limits: &Limits) -> anyhow::Result<Check> {
    let start = Instant::now();
    let (witness, reason) = match isomorphism(g, h, limits.max_iso_vertices) {
        Ok(map) => (Some(map), None),
        Err(Error::NotIsomorphic(why)) => (None, Some(why.to_owned())),
        Err(e) => return Err(e.into()),
    };
    let witness_verified = witness.as_ref().is_some_and(|m| is_isomorphism(g, h, m));
    Ok(Check {
        left: side(g),
        right: side(h),
        relation: Relation::Isomorphism,
        decision: if witness.is_some() { "isomorphic" } else { "not isomorphic" }.to_owned(),
        witness,
        isolated_vertex: None,
        witness_verified,
        reason,
        wall_time_ms: start.elapsed().as_millis(),
    })
}

pub fn switching_check(g: &Graph, h: &Graph, limits: &Limits) -> anyhow::Result<Check> {
    let start = Instant::now();
    let (witness, isolated_vertex, reason) = match switching_equivalent(g, h, limits.max_switching_vertices)? {
        Switching::Equivalent { w, map } => (Some(map), Some(w), None),
        Switching::NotEquivalent(why) => (None, None, Some(why.to_owned())),
    };
    let witness_verified = witness.as_ref().is_some_and(|m| preserves_two_graph(g, h, m));
    Ok(Check {
        left: side(g),
        right: side(h),
        relation: Relation::Switching,
        decision: if witness.is_some() { "switching equivalent" } else { "not switching equivalent" }.to_owned(),
        witness,
        isolated_vertex,
        witness_verified,
        reason,
        wall_time_ms: start.elapsed().as_millis(),
    })
}

fn graph(family: Family, size: u32, limits: &Limits) -> anyhow::Result<Graph> {
    Ok(build_with(FamilySpec::new(family, size), limits)?)
}

/// The isomorphisms between constructible graphs that are used to identify
/// small members of the families.
pub fn iso_pairs(limits: &Limits) -> anyhow::Result<Vec<(Graph, Graph)>> {
    use Family::*;
    let l3 = graph(Lattice, 3, limits)?;
    Ok(vec![
        (graph(Triangular, 5, limits)?, graph(NoMinus2n2Comp, 2, limits)?),
        (complement(&graph(Triangular, 6, limits)?), graph(Sp2n2, 2, limits)?),
        (l3.clone(), graph(Paley, 9, limits)?),
        (l3, graph(OPlus2n2, 2, limits)?),
        (complement(&graph(Lattice, 4, limits)?), graph(VoPlus, 2, limits)?),
        (complement(&graph(Triangular, 8, limits)?), graph(NoPlus2n2, 3, limits)?),
    ])
}

/// The descendant of `NO⁺_{2n}(2)` at vertex 0 together with `O⁻_{2n}(2)`.
pub fn descendant_pair(n: u32, limits: &Limits) -> anyhow::Result<(Graph, Graph)> {
    let source = graph(Family::NoPlus2n2, n, limits)?;
    let label = format!("descendant of {} at 0", source.label().unwrap_or("unnamed"));
    let d = descendant_at(&source, 0)?.with_label(label);
    Ok((d, graph(Family::OMinus2n2, n, limits)?))
}

fn with_point(g: Graph) -> Graph {
    let label = format!("K1 + {}", g.label().unwrap_or("unnamed"));
    g.with_isolated_vertex().with_label(label)
}

pub fn run_experiment(id: ExperimentId, size: Option<u32>, limits: &Limits) -> anyhow::Result<ExperimentReport> {
    let start = Instant::now();
    let size = size.or(id.default_size());
    let checks = match id {
        ExperimentId::IsoChecks => {
            if size.is_some() {
                bail!("{id} takes no size");
            }
            iso_pairs(limits)?.iter().map(|(g, h)| iso_check(g, h, limits)).collect::<anyhow::Result<_>>()?
        }
        ExperimentId::DescendantVsO => {
            let (d, o) = descendant_pair(size.unwrap_or(3), limits)?;
            vec![iso_check(&d, &o, limits)?]
        }
        ExperimentId::SwitchNo4VsNoMinus => {
            let n = size.unwrap_or(1);
            let g = graph(Family::NoPlusOdd4, n, limits)?;
            let h = graph(Family::NoMinus2n2Comp, 2 * n, limits)?;
            vec![switching_check(&g, &h, limits)?, iso_check(&g, &h, limits)?]
        }
        ExperimentId::SwitchPaleyPeisert => {
            let q = size.unwrap_or(9);
            let g = with_point(graph(Family::Paley, q, limits)?);
            let h = with_point(graph(Family::Peisert, q, limits)?);
            vec![switching_check(&g, &h, limits)?]
        }
    };
    Ok(ExperimentReport { question: id.id().to_owned(), size, checks, wall_time_ms: start.elapsed().as_millis() })
}

pub fn write_report<W: Write>(report: &ExperimentReport, format: OutputFormat, mut out: W) -> anyhow::Result<()> {
    match format {
        OutputFormat::Json => {
            serde_json::to_writer_pretty(&mut out, report)?;
            writeln!(out)?;
        }
        OutputFormat::Csv => {
            let mut w = csv::Writer::from_writer(out);
            w.write_record([
                "question", "left", "right", "relation", "decision", "witness", "witness_verified", "wall_time_ms",
            ])?;
            for c in &report.checks {
                let witness = c
                    .witness
                    .as_ref()
                    .map(|m| m.iter().map(usize::to_string).collect::<Vec<_>>().join(" "))
                    .unwrap_or_default();
                let relation = match c.relation {
                    Relation::Isomorphism => "isomorphism",
                    Relation::Switching => "switching",
                };
                w.write_record([
                    report.question.as_str(),
                    &c.left.graph,
                    &c.right.graph,
                    relation,
                    &c.decision,
                    &witness,
                    &c.witness_verified.to_string(),
                    &c.wall_time_ms.to_string(),
                ])?;
            }
            w.flush()?;
        }
        OutputFormat::Text => {
            writeln!(out, "{} ({} ms)", report.question, report.wall_time_ms)?;
            for c in &report.checks {
                let params = |s: &Side| s.params.clone().unwrap_or_else(|| "not strongly regular".into());
                writeln!(
                    out,
                    "  {} {} vs {} {}: {}",
                    c.left.graph,
                    params(&c.left),
                    c.right.graph,
                    params(&c.right),
                    c.decision
                )?;
                match (&c.witness, &c.reason) {
                    (Some(m), _) => writeln!(out, "    witness {m:?} (verified: {})", c.witness_verified)?,
                    (None, Some(r)) => writeln!(out, "    reason: {r}")?,
                    (None, None) => {}
                }
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ids_parse() {
        for id in ExperimentId::ALL {
            assert_eq!(id.id().parse::<ExperimentId>().unwrap(), id);
        }
        assert!("descendant_vs_o".parse::<ExperimentId>().is_ok());
        assert!("nope".parse::<ExperimentId>().is_err());
    }

    #[test]
    fn non_isomorphic_pair_reports_a_reason() {
        let limits = Limits::default();
        let t5 = graph(Family::Triangular, 5, &limits).unwrap();
        let c = iso_check(&t5, &complement(&t5), &limits).unwrap();
        assert!(!c.holds());
        assert_eq!(c.decision, "not isomorphic");
        assert!(c.reason.is_some());
    }

    #[test]
    fn bounds_are_enforced() {
        let limits = Limits::with_max_vertices(20);
        assert!(run_experiment(ExperimentId::SwitchPaleyPeisert, Some(49), &limits).is_err());
        assert!(run_experiment(ExperimentId::IsoChecks, Some(3), &Limits::default()).is_err());
    }
}
