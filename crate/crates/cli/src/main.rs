use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::Context;
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use rank3_etf::experiment::{run_experiment, write_report, ExperimentId};
use rank3_etf::io::{read_json, to_json, status_name, CertificateFile, GramFile, GraphFile, VectorsFile};
use rank3_etf::report::{
    comparison_table, generate_table, skipped_instances, write_rows, Bounds, CertificationFailure, OutputFormat,
    Table, DEFAULT_TABLE_MAX_VERTICES,
};
use rank3_etf::{limits_from_env, MAX_VERTICES_ENV};
use rank3_etf_core::constructions::{build_with, Family, FamilySpec};
use rank3_etf_core::etf::{criteria, descendant_gram, embedding_gram, verify_etf, vo_vectors};
use rank3_etf_core::geometry::FormKind;
use rank3_etf_core::spectrum::spectrum;
use rank3_etf_core::{Error, GramMatrix, Graph, Limits};

#[derive(Parser)]
#[command(name = "rank3-etf", version, about = "Equiangular tight frames from rank 3 graphs, certified exactly")]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Csv,
    Text,
}

impl From<Format> for OutputFormat {
    fn from(f: Format) -> Self {
        match f {
            Format::Json => OutputFormat::Json,
            Format::Csv => OutputFormat::Csv,
            Format::Text => OutputFormat::Text,
        }
    }
}

#[derive(Args)]
struct Target {
    /// Family id, see `list`.
    family: Option<String>,
    /// Size parameter; omitted for sporadic graphs.
    size: Option<u32>,
    /// Read a graph JSON file instead of building a family member.
    #[arg(long, conflicts_with_all = ["family", "size"])]
    graph: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// List the graph families.
    List,
    /// Build a family member and print it as a graph file.
    Build {
        family: String,
        size: Option<u32>,
        #[arg(long, short)]
        out: Option<PathBuf>,
    },
    /// Check strong regularity and print the spectrum.
    VerifySrg {
        #[command(flatten)]
        target: Target,
    },
    /// Certify a frame: the spherical embedding of a graph, the frame built
    /// from a `k = 2μ` graph, or a Gram matrix file.
    VerifyEtf {
        #[command(flatten)]
        target: Target,
        /// Use the frame of size v + 1 built from a k = 2μ graph.
        #[arg(long)]
        descendant: bool,
        #[arg(long, conflicts_with_all = ["family", "size", "graph", "descendant"])]
        gram: Option<PathBuf>,
    },
    /// Certified rows for the families whose embeddings are ETFs.
    Table3 {
        #[arg(long)]
        max_n: Option<u32>,
    },
    /// Certified rows for the k = 2μ families, plus parameter-only rows.
    Table4 {
        #[arg(long)]
        max_n: Option<u32>,
        #[arg(long)]
        max_q: Option<u32>,
    },
    /// Pairs of rows from table3 and table4 with equal frame parameters.
    Table5 {
        #[arg(long)]
        max_n: Option<u32>,
        #[arg(long)]
        max_q: Option<u32>,
    },
    /// Run an isomorphism or switching experiment: iso_checks,
    /// descendant_vs_O, switch_NO4_vs_NOminus, switch_paley_peisert.
    Experiment {
        id: String,
        #[arg(long)]
        size: Option<u32>,
    },
    /// Write a Gram matrix file, optionally with its certificate.
    ExportGram {
        #[command(flatten)]
        target: Target,
        #[arg(long)]
        descendant: bool,
        #[arg(long)]
        certify: bool,
        #[arg(long, short)]
        out: Option<PathBuf>,
    },
    /// Write explicit frame vectors for VO+_{2n}(2) or the complement of VO-_{2n}(2).
    ExportVectors {
        n: usize,
        #[arg(long, value_enum, default_value_t = Kind::Plus)]
        kind: Kind,
        #[arg(long, short)]
        out: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Kind {
    Plus,
    Minus,
}

/// Failure with a non-generic exit code.
#[derive(Debug)]
struct Usage(String);

impl std::fmt::Display for Usage {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for Usage {}

fn usage(msg: impl Into<String>) -> anyhow::Error {
    Usage(msg.into()).into()
}

fn parse_family(id: &str) -> anyhow::Result<Family> {
    Family::from_id(id).ok_or_else(|| usage(format!("unknown family {id:?}; see `rank3-etf list`")))
}

fn family_spec(family: &str, size: Option<u32>) -> anyhow::Result<FamilySpec> {
    let family = parse_family(family)?;
    match (family.is_sporadic(), size) {
        (true, _) => Ok(FamilySpec::sporadic(family)),
        (false, Some(s)) => Ok(FamilySpec::new(family, s)),
        (false, None) => Err(usage(format!("{} needs a size {}", family.id(), family.size_name().unwrap_or("n")))),
    }
}

fn load_graph(target: &Target, limits: &Limits) -> anyhow::Result<Graph> {
    match (&target.graph, &target.family) {
        (Some(path), _) => read_json::<GraphFile>(path)?.to_graph(),
        (None, Some(family)) => Ok(build_with(family_spec(family, target.size)?, limits)?),
        (None, None) => Err(usage("give a family and size, or --graph FILE")),
    }
}

fn emit(text: &str, out: Option<&PathBuf>) -> anyhow::Result<()> {
    match out {
        Some(path) => fs::write(path, text).with_context(|| format!("writing {}", path.display())),
        None => Ok(io::stdout().write_all(text.as_bytes())?),
    }
}

fn emit_json<T: Serialize>(value: &T) -> anyhow::Result<()> {
    emit(&to_json(value)?, None)
}

#[derive(Serialize)]
struct FamilyInfo {
    id: &'static str,
    name: &'static str,
    size: Option<&'static str>,
    min_size: u32,
    default_max_size: u32,
    provenance: &'static str,
}

fn list(format: OutputFormat) -> anyhow::Result<()> {
    let rows: Vec<FamilyInfo> = Family::ALL
        .iter()
        .map(|&f| FamilyInfo {
            id: f.id(),
            name: f.name(),
            size: f.size_name(),
            min_size: f.min_size(),
            default_max_size: f.default_max_size(),
            provenance: f.provenance().as_str(),
        })
        .collect();
    match format {
        OutputFormat::Json => emit_json(&rows),
        OutputFormat::Csv => {
            let mut w = csv::Writer::from_writer(io::stdout());
            for r in &rows {
                w.serialize(r)?;
            }
            Ok(w.flush()?)
        }
        OutputFormat::Text => {
            for r in &rows {
                let size = match r.size {
                    Some(s) => format!("{s} in {}..={}", r.min_size, r.default_max_size),
                    None => "sporadic".to_owned(),
                };
                println!("{:<20} {:<28} {:<16} {}", r.id, r.name, size, r.provenance);
            }
            Ok(())
        }
    }
}

fn build_cmd(family: &str, size: Option<u32>, out: Option<&PathBuf>, format: OutputFormat, limits: &Limits) -> anyhow::Result<()> {
    let g = build_with(family_spec(family, size)?, limits)?;
    let text = match format {
        OutputFormat::Json => to_json(&GraphFile::from_graph(&g))?,
        OutputFormat::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record(["u", "v"])?;
            for (a, b) in g.edges() {
                w.write_record([a.to_string(), b.to_string()])?;
            }
            String::from_utf8(w.into_inner()?)?
        }
        OutputFormat::Text => {
            let p = g.srg_params()?;
            format!("{} {} with {} edges\n", g.label().unwrap_or(""), p, g.edge_count())
        }
    };
    emit(&text, out)
}

#[derive(Serialize)]
struct SrgSummary {
    graph: String,
    v: u64,
    k: u64,
    lambda: u64,
    mu: u64,
    primitive: bool,
    r: String,
    s: String,
    f: u64,
    g: u64,
    equiangular_criterion: bool,
    two_graph_criterion: bool,
}

fn verify_srg(target: &Target, format: OutputFormat, limits: &Limits) -> anyhow::Result<()> {
    let g = load_graph(target, limits)?;
    let p = match g.srg_params() {
        Ok(p) => p,
        Err(Error::NotStronglyRegular(i, j)) => {
            let what = if i == j { format!("vertex {i} has a different degree") } else { format!("pair ({i}, {j}) breaks the common-neighbour count") };
            return Err(CertificationFailure { row: g.label().unwrap_or("graph").to_owned(), reason: format!("not strongly regular: {what}") }.into());
        }
        Err(e) => return Err(e.into()),
    };
    let sp = spectrum(&p)?;
    let c = criteria(&p)?;
    let summary = SrgSummary {
        graph: g.label().unwrap_or("graph").to_owned(),
        v: p.v,
        k: p.k,
        lambda: p.lambda,
        mu: p.mu,
        primitive: p.is_primitive(),
        r: sp.r.to_string(),
        s: sp.s.to_string(),
        f: sp.f,
        g: sp.g,
        equiangular_criterion: c.equiangular,
        two_graph_criterion: c.two_graph,
    };
    match format {
        OutputFormat::Json => emit_json(&summary),
        OutputFormat::Csv => {
            let mut w = csv::Writer::from_writer(io::stdout());
            w.serialize(&summary)?;
            Ok(w.flush()?)
        }
        OutputFormat::Text => {
            println!("{}: {} primitive={}", summary.graph, p, summary.primitive);
            println!("eigenvalues k={} r={} (x{}) s={} (x{})", p.k, summary.r, sp.f, summary.s, sp.g);
            println!("equiangular criterion: {}  regular two-graph criterion: {}", c.equiangular, c.two_graph);
            Ok(())
        }
    }
}

fn gram_for(target: &Target, descendant: bool, limits: &Limits) -> anyhow::Result<(GramMatrix, Option<String>)> {
    let g = load_graph(target, limits)?;
    let gram = if descendant { descendant_gram(&g)? } else { embedding_gram(&g)? };
    Ok((gram, g.label().map(str::to_owned)))
}

fn verify_etf_cmd(target: &Target, descendant: bool, gram_file: Option<&PathBuf>, format: OutputFormat, limits: &Limits) -> anyhow::Result<()> {
    let (gram, label) = match gram_file {
        Some(path) => {
            let file: GramFile = read_json(path)?;
            (file.to_gram()?, file.label.or_else(|| Some(path.display().to_string())))
        }
        None => gram_for(target, descendant, limits)?,
    };
    let cert = verify_etf(&gram)?;
    let file = CertificateFile::from_certificate(&cert);
    match format {
        OutputFormat::Json => emit_json(&file)?,
        OutputFormat::Csv => {
            let mut w = csv::Writer::from_writer(io::stdout());
            w.write_record(["M", "N", "alpha_sq", "welch_bound_sq", "status"])?;
            w.write_record([&file.m.to_string(), &file.n.to_string(), &file.alpha_sq, &file.welch_bound_sq, &file.status])?;
            w.flush()?;
        }
        OutputFormat::Text => {
            println!("{}", label.as_deref().unwrap_or("frame"));
            println!("M={} N={} M-N={}", cert.m, cert.n, cert.m - cert.n);
            println!("alpha^2={} welch bound^2={}", file.alpha_sq, file.welch_bound_sq);
            println!("status: {}", file.status);
            if let Some(w) = file.witness {
                println!("witness: {w:?}");
            }
        }
    }
    if !cert.is_etf() {
        return Err(CertificationFailure { row: label.unwrap_or_default(), reason: status_name(&cert.status).into() }.into());
    }
    Ok(())
}

fn export_gram(target: &Target, descendant: bool, certify: bool, out: Option<&PathBuf>, limits: &Limits) -> anyhow::Result<()> {
    let (gram, label) = gram_for(target, descendant, limits)?;
    let cert = if certify { Some(verify_etf(&gram)?) } else { None };
    let mut file = GramFile::from_gram(&gram, cert.as_ref());
    file.label = label.map(|l| if descendant { format!("descendant frame of {l}") } else { l });
    emit(&to_json(&file)?, out)
}

fn export_vectors(n: usize, kind: Kind, out: Option<&PathBuf>, format: OutputFormat, limits: &Limits) -> anyhow::Result<()> {
    let kind = match kind {
        Kind::Plus => FormKind::Plus,
        Kind::Minus => FormKind::Minus,
    };
    let matrix = vo_vectors(n, kind, limits.max_ambient_vectors)?;
    let file = VectorsFile::from_columns(&matrix);
    let text = match format {
        OutputFormat::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            for v in &file.vectors {
                w.write_record(v)?;
            }
            String::from_utf8(w.into_inner()?)?
        }
        _ => to_json(&file)?,
    };
    emit(&text, out)
}

fn table(which: Table, bounds: Bounds, format: OutputFormat, limits: &Limits) -> anyhow::Result<()> {
    let mut limits = *limits;
    if std::env::var_os(MAX_VERTICES_ENV).is_none() {
        limits.max_vertices = limits.max_vertices.min(DEFAULT_TABLE_MAX_VERTICES);
    }
    for spec in skipped_instances(which, bounds, &limits) {
        eprintln!("skipping {spec}: more than {} vertices (raise with {MAX_VERTICES_ENV})", limits.max_vertices);
    }
    let rows = generate_table(which, bounds, &limits)?;
    write_rows(&rows, format, io::stdout().lock())
}

fn run(cli: Cli) -> anyhow::Result<()> {
    let limits = limits_from_env().map_err(|e| usage(format!("{e:#}")))?;
    let format = OutputFormat::from(cli.format);
    match cli.command {
        Command::List => list(format),
        Command::Build { family, size, out } => build_cmd(&family, size, out.as_ref(), format, &limits),
        Command::VerifySrg { target } => verify_srg(&target, format, &limits),
        Command::VerifyEtf { target, descendant, gram } => verify_etf_cmd(&target, descendant, gram.as_ref(), format, &limits),
        Command::Table3 { max_n } => table(Table::Table3, Bounds { max_n, max_q: None }, format, &limits),
        Command::Table4 { max_n, max_q } => table(Table::Table4, Bounds { max_n, max_q }, format, &limits),
        Command::Table5 { max_n, max_q } => {
            let rows = comparison_table(Bounds { max_n, max_q })?;
            write_rows(&rows, format, io::stdout().lock())
        }
        Command::Experiment { id, size } => {
            let id: ExperimentId = id.parse().map_err(|e| usage(format!("{e:#}")))?;
            let report = run_experiment(id, size, &limits)?;
            write_report(&report, format, io::stdout().lock())
        }
        Command::ExportGram { target, descendant, certify, out } => export_gram(&target, descendant, certify, out.as_ref(), &limits),
        Command::ExportVectors { n, kind, out } => {
            if n == 0 {
                return Err(usage("n must be at least 1"));
            }
            export_vectors(n, kind, out.as_ref(), format, &limits)
        }
    }
}

fn exit_code(err: &anyhow::Error) -> u8 {
    if err.chain().any(|e| e.is::<CertificationFailure>()) {
        return 1;
    }
    if err.chain().any(|e| e.is::<Usage>()) {
        return 2;
    }
    match err.chain().find_map(|e| e.downcast_ref::<Error>()) {
        Some(Error::BoundExceeded { .. } | Error::OutOfRange { .. } | Error::InvalidField { .. }) => 2,
        _ => 1,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(exit_code(&err))
        }
    }
}
