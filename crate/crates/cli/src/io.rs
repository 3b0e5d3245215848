//! JSON file formats for graphs, Gram matrices and frame vectors.
//!
//! Scalars are written in the canonical `a/b` or `a/b+c/d*sqrt(D)` form and
//! parsed back exactly.

use std::fs;
use std::path::Path;

use anyhow::{bail, ensure, Context};
use serde::{Deserialize, Serialize};

use rank3_etf_core::etf::{EtfCertificate, EtfStatus};
use rank3_etf_core::{ExactMatrix, GramMatrix, Graph, QuadExt};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphFile {
    pub v: usize,
    pub edges: Vec<[usize; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
}

impl GraphFile {
    pub fn from_graph(g: &Graph) -> Self {
        Self {
            v: g.order(),
            edges: g.edges().into_iter().map(|(a, b)| [a, b]).collect(),
            label: g.label().map(str::to_owned),
        }
    }

    pub fn to_graph(&self) -> anyhow::Result<Graph> {
        for &[a, b] in &self.edges {
            ensure!(a < self.v && b < self.v, "edge ({a}, {b}) out of range for {} vertices", self.v);
            ensure!(a != b, "loop at vertex {a}");
        }
        let pairs: Vec<(usize, usize)> = self.edges.iter().map(|&[a, b]| (a, b)).collect();
        let g = Graph::from_edges(self.v, &pairs)?;
        Ok(match &self.label {
            Some(l) => g.with_label(l.clone()),
            None => g,
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertificateFile {
    #[serde(rename = "M")]
    pub m: usize,
    #[serde(rename = "N")]
    pub n: usize,
    pub alpha_sq: String,
    pub welch_bound_sq: String,
    pub tight_const: String,
    pub status: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<[[usize; 2]; 2]>,
}

pub fn status_name(status: &EtfStatus) -> &'static str {
    match status {
        EtfStatus::Etf => "ETF",
        EtfStatus::NotEquiangular { .. } => "NotEquiangular",
        EtfStatus::NotTight { .. } => "NotTight",
    }
}

impl CertificateFile {
    pub fn from_certificate(cert: &EtfCertificate) -> Self {
        let witness = match cert.status {
            EtfStatus::Etf => None,
            EtfStatus::NotEquiangular { first, witness } => Some([[first.0, first.1], [witness.0, witness.1]]),
            EtfStatus::NotTight { witness } => Some([[witness.0, witness.1], [witness.0, witness.1]]),
        };
        Self {
            m: cert.m,
            n: cert.n,
            alpha_sq: cert.alpha_sq.to_string(),
            welch_bound_sq: QuadExt::rational(cert.welch_bound_sq()).to_string(),
            tight_const: QuadExt::rational(cert.tight_const.clone()).to_string(),
            status: status_name(&cert.status).to_owned(),
            witness,
        }
    }
}

/// Symmetric Gram matrix stored as its upper triangle, diagonal included,
/// row by row.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GramFile {
    #[serde(rename = "M")]
    pub m: usize,
    #[serde(rename = "N", default, skip_serializing_if = "Option::is_none")]
    pub n: Option<usize>,
    #[serde(rename = "D")]
    pub d: u64,
    pub entries: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub certificate: Option<CertificateFile>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
}

impl GramFile {
    pub fn from_gram(gram: &GramMatrix, cert: Option<&EtfCertificate>) -> Self {
        let m = gram.size();
        let mut entries = Vec::with_capacity(m * (m + 1) / 2);
        for i in 0..m {
            for j in i..m {
                entries.push(gram.get(i, j).to_string());
            }
        }
        Self {
            m,
            n: cert.map(|c| c.n),
            d: gram.matrix().radicand(),
            entries,
            certificate: cert.map(CertificateFile::from_certificate),
            label: None,
        }
    }

    pub fn to_gram(&self) -> anyhow::Result<GramMatrix> {
        let m = self.m;
        ensure!(
            self.entries.len() == m * (m + 1) / 2,
            "expected {} upper-triangle entries for M = {m}, found {}",
            m * (m + 1) / 2,
            self.entries.len()
        );
        let mut upper = Vec::with_capacity(self.entries.len());
        for (t, raw) in self.entries.iter().enumerate() {
            let x: QuadExt = raw.parse().with_context(|| format!("entry {t}: {raw:?}"))?;
            if x.radicand() != 0 && x.radicand() != self.d {
                bail!("entry {t} uses sqrt({}) but the file declares D = {}", x.radicand(), self.d);
            }
            upper.push(x);
        }
        // Row i of the upper triangle starts after i rows of shrinking length.
        let start = |i: usize| i * m - i * i.saturating_sub(1) / 2;
        let index = |i: usize, j: usize| {
            let (i, j) = if i <= j { (i, j) } else { (j, i) };
            start(i) + (j - i)
        };
        let matrix = ExactMatrix::from_fn(m, m, |i, j| upper[index(i, j)].clone())?;
        Ok(GramMatrix::new(matrix)?)
    }
}

/// Frame vectors as columns of an `N × M` matrix.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VectorsFile {
    #[serde(rename = "M")]
    pub m: usize,
    #[serde(rename = "N")]
    pub n: usize,
    #[serde(rename = "D")]
    pub d: u64,
    /// One entry per vector, each of length `N`.
    pub vectors: Vec<Vec<String>>,
}

impl VectorsFile {
    pub fn from_columns(matrix: &ExactMatrix) -> Self {
        let vectors = (0..matrix.cols())
            .map(|j| (0..matrix.rows()).map(|i| matrix.get(i, j).to_string()).collect())
            .collect();
        Self { m: matrix.cols(), n: matrix.rows(), d: matrix.radicand(), vectors }
    }
}

pub fn read_json<T: for<'de> Deserialize<'de>>(path: &Path) -> anyhow::Result<T> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    serde_json::from_str(&text).with_context(|| format!("parsing {}", path.display()))
}

pub fn to_json<T: Serialize>(value: &T) -> anyhow::Result<String> {
    let mut s = serde_json::to_string_pretty(value)?;
    s.push('\n');
    Ok(s)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rank3_etf_core::constructions::{build, Family, FamilySpec};
    use rank3_etf_core::etf::{embedding_gram, verify_etf};

    #[test]
    fn graph_file_round_trip() {
        let g = build(FamilySpec::new(Family::Paley, 13)).unwrap();
        let file = GraphFile::from_graph(&g);
        assert_eq!(file.label.as_deref(), Some("Paley(q=13)"));
        let back: GraphFile = serde_json::from_str(&to_json(&file).unwrap()).unwrap();
        assert_eq!(back.to_graph().unwrap(), g);
    }

    #[test]
    fn gram_file_round_trip() {
        let g = build(FamilySpec::new(Family::VoPlus, 2)).unwrap();
        let gram = embedding_gram(&g).unwrap();
        let cert = verify_etf(&gram).unwrap();
        let file = GramFile::from_gram(&gram, Some(&cert));
        assert_eq!(file.entries.len(), 16 * 17 / 2);
        assert_eq!(file.entries[0], "1/1");
        let back: GramFile = serde_json::from_str(&to_json(&file).unwrap()).unwrap();
        assert_eq!(back.to_gram().unwrap(), gram);
        assert_eq!(back.certificate.unwrap().status, "ETF");
    }

    #[test]
    fn malformed_files_are_rejected() {
        let bad_edge = GraphFile { v: 3, edges: vec![[0, 3]], label: None };
        assert!(bad_edge.to_graph().is_err());
        let short = GramFile { m: 2, n: None, d: 0, entries: vec!["1/1".into()], certificate: None, label: None };
        assert!(short.to_gram().is_err());
        let wrong_d = GramFile {
            m: 2,
            n: None,
            d: 2,
            entries: vec!["1/1".into(), "0/1+1/3*sqrt(3)".into(), "1/1".into()],
            certificate: None,
            label: None,
        };
        assert!(wrong_d.to_gram().is_err());
    }
}
