//! Command implementations for the `cycle-regions` binary.
//!
//! Every command writes its report to the supplied writer and maps failures to
//! a [`CliError`] that carries the process exit code.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use cycle_regions::arrangement::{
    build_arrangement, region_count_traversal, splitter_analysis, ArrangementError, Classification,
};
use cycle_regions::embedding::{construct, validate_general_position, CycleEmbedding, EmbeddingError};
use cycle_regions::formulas::f_max;
use cycle_regions::render::{to_svg, RenderOptions};
use cycle_regions::search::{oracle_max_regions_convex, random_search, SearchError};
use cycle_regions::verify::{verify_range, VerifyError, VerifyRow};

pub const EXIT_BAD_INPUT: i32 = 2;
pub const EXIT_IO: i32 = 3;
pub const EXIT_DEGENERATE: i32 = 4;
pub const EXIT_VERIFICATION: i32 = 5;

#[derive(Debug)]
pub struct CliError {
    pub code: i32,
    pub message: String,
}

impl CliError {
    fn new(code: i32, message: impl Into<String>) -> Self {
        CliError {
            code,
            message: message.into(),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::new(EXIT_IO, e.to_string())
    }
}

#[derive(Debug, Parser)]
#[command(name = "cycle-regions", version, about = "Maximal-region embeddings of N-cycle graphs")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, ValueEnum)]
pub enum Format {
    #[default]
    Human,
    Tsv,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Build the optimal embedding for n and write it as an embedding file.
    Construct {
        #[arg(long)]
        n: u64,
        /// Destination file; the embedding goes to stdout when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
    /// Count vertices, edges and regions of an embedding file.
    Count {
        input: PathBuf,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
    /// Check constructions against the closed form for a range of n.
    Verify {
        #[arg(long, default_value_t = 3)]
        n_min: u64,
        #[arg(long, default_value_t = 15)]
        n_max: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
    /// Exhaustive maximum over cyclic orders of points in convex position.
    Oracle {
        #[arg(long)]
        n: u64,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
    /// Randomized search for embeddings with many regions.
    Search {
        #[arg(long)]
        n: u64,
        #[arg(long, default_value_t = 1000)]
        trials: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Also write the best embedding found.
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
    /// Draw an embedding file as SVG.
    Render {
        input: PathBuf,
        /// Destination file; the SVG goes to stdout when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
        #[command(flatten)]
        style: RenderArgs,
    },
}

#[derive(Debug, Args)]
pub struct RenderArgs {
    #[arg(long, default_value_t = 600)]
    pub width: u32,
    #[arg(long, default_value_t = 600)]
    pub height: u32,
    #[arg(long)]
    pub no_labels: bool,
    #[arg(long)]
    pub highlight_splitters: bool,
    /// Even-odd fill of the closed cycle (illustrative).
    #[arg(long)]
    pub shade_regions: bool,
    #[arg(long)]
    pub stroke: Option<String>,
    #[arg(long)]
    pub splitter_stroke: Option<String>,
    #[arg(long)]
    pub fill: Option<String>,
}

impl RenderArgs {
    pub fn options(&self) -> Result<RenderOptions, CliError> {
        if self.width == 0 || self.height == 0 {
            return Err(CliError::new(EXIT_BAD_INPUT, "width and height must be positive"));
        }
        let mut opts = RenderOptions {
            width: self.width,
            height: self.height,
            label_corners: !self.no_labels,
            highlight_splitters: self.highlight_splitters,
            shade_regions: self.shade_regions,
            ..Default::default()
        };
        if let Some(s) = &self.stroke {
            opts.stroke = s.clone();
        }
        if let Some(s) = &self.splitter_stroke {
            opts.splitter_stroke = s.clone();
        }
        if let Some(s) = &self.fill {
            opts.fill = s.clone();
        }
        Ok(opts)
    }
}

pub fn run(cli: Cli, out: &mut dyn Write) -> Result<(), CliError> {
    match cli.command {
        Command::Construct { n, out: path, seed, format } => cmd_construct(n, path.as_deref(), seed, format, out),
        Command::Count { input, format } => cmd_count(&input, format, out),
        Command::Verify { n_min, n_max, seed, format } => cmd_verify(n_min, n_max, seed, format, out),
        Command::Oracle { n, format } => cmd_oracle(n, format, out),
        Command::Search { n, trials, seed, out: path, format } => {
            cmd_search(n, trials, seed, path.as_deref(), format, out)
        }
        Command::Render { input, out: path, style } => cmd_render(&input, path.as_deref(), &style.options()?, out),
    }
}

fn write_file(path: &Path, contents: &str) -> Result<(), CliError> {
    fs::write(path, contents)
        .map_err(|e| CliError::new(EXIT_IO, format!("cannot write {}: {e}", path.display())))
}

fn load_embedding(path: &Path) -> Result<CycleEmbedding, CliError> {
    let text = fs::read_to_string(path)
        .map_err(|e| CliError::new(EXIT_IO, format!("cannot read {}: {e}", path.display())))?;
    CycleEmbedding::from_file_str(&text).map_err(|e| match e {
        EmbeddingError::ZeroLengthSegment(..) => CliError::new(EXIT_DEGENERATE, e.to_string()),
        _ => CliError::new(EXIT_BAD_INPUT, e.to_string()),
    })
}

fn arrangement_error(e: ArrangementError) -> CliError {
    match e {
        ArrangementError::DegenerateInput(_) => CliError::new(EXIT_DEGENERATE, e.to_string()),
        other => CliError::new(EXIT_VERIFICATION, format!("internal error: {other}")),
    }
}

pub fn cmd_construct(
    n: u64,
    path: Option<&Path>,
    seed: u64,
    format: Format,
    out: &mut dyn Write,
) -> Result<(), CliError> {
    if n < 3 {
        return Err(CliError::new(EXIT_BAD_INPUT, format!("n must be at least 3, got {n}")));
    }
    let emb = construct(n as usize, seed).map_err(|e| match e {
        EmbeddingError::InvalidN(_) | EmbeddingError::InvalidArgument(_) => {
            CliError::new(EXIT_BAD_INPUT, e.to_string())
        }
        other => CliError::new(EXIT_DEGENERATE, other.to_string()),
    })?;
    let arr = build_arrangement(&emb).map_err(arrangement_error)?;
    let (v, e, f) = (arr.vertex_count(), arr.edge_count(), arr.face_count());
    let file = emb.to_file_string();
    let stats = match format {
        Format::Human => format!("n={n} seed={seed} V={v} E={e} F={f}"),
        Format::Tsv => format!("{n}\t{seed}\t{v}\t{e}\t{f}"),
    };
    match path {
        Some(p) => {
            write_file(p, &file)?;
            writeln!(out, "{stats}")?;
        }
        None => {
            out.write_all(file.as_bytes())?;
            eprintln!("{stats}");
        }
    }
    Ok(())
}

pub fn cmd_count(input: &Path, format: Format, out: &mut dyn Write) -> Result<(), CliError> {
    let emb = load_embedding(input)?;
    let report = validate_general_position(&emb);
    if !report.is_empty() {
        return Err(CliError::new(
            EXIT_DEGENERATE,
            format!("degenerate embedding: {}", report.summary()),
        ));
    }
    let arr = build_arrangement(&emb).map_err(arrangement_error)?;
    let traversal = region_count_traversal(&emb).map_err(arrangement_error)?;
    let splitters = splitter_analysis(&emb).map_err(arrangement_error)?;
    let (v, e, f) = (arr.vertex_count(), arr.edge_count(), arr.face_count());
    let n = emb.n();
    let classes: Vec<&str> = splitters
        .segments
        .iter()
        .map(|s| match s.classification {
            Classification::Splitter => "S",
            Classification::OneOffSplitter => "O",
            Classification::Other => "-",
        })
        .collect();
    let (s, o) = (
        splitters.count(Classification::Splitter),
        splitters.count(Classification::OneOffSplitter),
    );
    match format {
        Format::Human => {
            writeln!(out, "n={n} V={v} E={e} F={f} F_traversal={traversal}")?;
            writeln!(out, "splitters={s} one_off_splitters={o} per_segment={}", classes.join(""))?;
        }
        Format::Tsv => writeln!(out, "{n}\t{v}\t{e}\t{f}\t{traversal}\t{s}\t{o}\t{}", classes.join(""))?,
    }
    if f != traversal {
        return Err(CliError::new(
            EXIT_VERIFICATION,
            format!("internal error: Euler count {f} disagrees with traversal count {traversal}"),
        ));
    }
    Ok(())
}

pub fn cmd_verify(
    n_min: u64,
    n_max: u64,
    seed: u64,
    format: Format,
    out: &mut dyn Write,
) -> Result<(), CliError> {
    let rows = verify_range(n_min, n_max, seed).map_err(|e| match e {
        VerifyError::InvalidN(_) | VerifyError::EmptyRange(..) => CliError::new(EXIT_BAD_INPUT, e.to_string()),
        other => CliError::new(EXIT_VERIFICATION, other.to_string()),
    })?;
    match format {
        Format::Human => writeln!(out, "seed={seed}")?,
        Format::Tsv => writeln!(out, "{}", VerifyRow::TSV_HEADER)?,
    }
    for row in &rows {
        match format {
            Format::Human => writeln!(out, "{}", row.to_human())?,
            Format::Tsv => writeln!(out, "{}", row.to_tsv())?,
        }
    }
    match rows.iter().find(|r| !r.matches) {
        Some(bad) => Err(CliError::new(
            EXIT_VERIFICATION,
            format!("verification failed at n={}", bad.n),
        )),
        None => Ok(()),
    }
}

pub fn cmd_oracle(n: u64, format: Format, out: &mut dyn Write) -> Result<(), CliError> {
    let result = oracle_max_regions_convex(n as usize)
        .map_err(|e| CliError::new(EXIT_BAD_INPUT, e.to_string()))?;
    let expected = f_max(n).map_err(|e| CliError::new(EXIT_BAD_INPUT, e.to_string()))?;
    let pass = result.max_regions == expected;
    let status = if pass { "PASS" } else { "FAIL" };
    match format {
        Format::Human => writeln!(
            out,
            "n={n} max_regions={} witness={} evaluated={} f={expected}\n{} {status}",
            result.max_regions, result.witness, result.evaluated_count, result.max_regions
        )?,
        Format::Tsv => writeln!(
            out,
            "{n}\t{}\t{}\t{}\t{expected}\t{status}",
            result.max_regions, result.witness, result.evaluated_count
        )?,
    }
    if pass {
        Ok(())
    } else {
        Err(CliError::new(EXIT_VERIFICATION, format!("oracle maximum differs from f({n})")))
    }
}

pub fn cmd_search(
    n: u64,
    trials: u64,
    seed: u64,
    path: Option<&Path>,
    format: Format,
    out: &mut dyn Write,
) -> Result<(), CliError> {
    let best = random_search(n as usize, trials, seed).map_err(|e| match e {
        SearchError::InvalidArgument(_) | SearchError::NTooLarge(_) => CliError::new(EXIT_BAD_INPUT, e.to_string()),
        other => CliError::new(EXIT_DEGENERATE, other.to_string()),
    })?;
    let bound = f_max(n).map_err(|e| CliError::new(EXIT_BAD_INPUT, e.to_string()))?;
    match format {
        Format::Human => writeln!(
            out,
            "n={n} trials={trials} seed={seed} best={} (trial {}) bound={bound}",
            best.regions, best.trial
        )?,
        Format::Tsv => writeln!(out, "{n}\t{trials}\t{seed}\t{}\t{}\t{bound}", best.regions, best.trial)?,
    }
    if let Some(p) = path {
        write_file(p, &best.embedding.to_file_string())?;
    }
    if best.regions > bound {
        return Err(CliError::new(
            EXIT_VERIFICATION,
            format!("search found {} regions, above f({n}) = {bound}", best.regions),
        ));
    }
    Ok(())
}

pub fn cmd_render(
    input: &Path,
    path: Option<&Path>,
    opts: &RenderOptions,
    out: &mut dyn Write,
) -> Result<(), CliError> {
    let emb = load_embedding(input)?;
    let svg = to_svg(&emb, opts);
    match path {
        Some(p) => write_file(p, &svg),
        None => Ok(out.write_all(svg.as_bytes())?),
    }
}
