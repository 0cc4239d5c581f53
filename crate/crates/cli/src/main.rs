use std::collections::BTreeMap;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::Arc;

use anyhow::{Context, Result};
use clap::{Parser, Subcommand, ValueEnum};

use persheaf::bipersistence::{check_commutative, grid};
use persheaf::cohomology::cohomology_dims;
use persheaf::io::{self, BarcodeReport, Format, GridReport};
use persheaf::labeled::{mixed_feature_barcodes, unicolored_pipeline, LabeledFiltration};
use persheaf::type_a::{graded_barcode, pointwise_barcode};
use persheaf::type_t::{type_t_direct, type_t_graded, TypeTInput};
use persheaf::{vietoris_rips, Barcode, Field, FilteredComplex};

#[derive(Parser)]
#[command(name = "persheaf", version, about = "Persistent cohomology of cellular sheaves")]
struct Cli {
    /// Prime modulus; overrides the field stored in input files (default 2)
    #[arg(long, global = true)]
    field: Option<u32>,
    #[arg(long, global = true, value_enum, default_value_t = OutFormat::Text)]
    format: OutFormat,
    /// Print bars surviving to the last index as [a, m-1] instead of [a, inf)
    #[arg(long, global = true)]
    closed_end: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum OutFormat {
    Text,
    Json,
    Svg,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum EngineA {
    Graded,
    Pointwise,
    Both,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum EngineT {
    Direct,
    Graded,
    Both,
}

#[derive(Subcommand)]
enum Command {
    /// Check a complex, sheaf or diagram file
    Validate {
        file: PathBuf,
        /// Complex to read a sheaf or diagram against
        #[arg(long)]
        complex: Option<PathBuf>,
    },
    /// Sheaf cohomology dimensions
    Cohomology {
        complex: PathBuf,
        sheaf: PathBuf,
        #[arg(long)]
        k: Option<usize>,
    },
    /// Persistence along a diagram of sheaves
    PersistA {
        diagram: PathBuf,
        #[arg(long)]
        complex: Option<PathBuf>,
        #[arg(long, default_value_t = 0)]
        k: usize,
        #[arg(long, value_enum, default_value_t = EngineA::Pointwise)]
        engine: EngineA,
    },
    /// Copersistence of a sheaf along the filtration of its complex
    PersistT {
        complex: PathBuf,
        sheaf: PathBuf,
        #[arg(long, default_value_t = 0)]
        k: usize,
        #[arg(long, value_enum, default_value_t = EngineT::Direct)]
        engine: EngineT,
    },
    /// Grid over filtration steps and diagram indices
    Bipersist {
        complex: PathBuf,
        diagram: PathBuf,
        #[arg(long, default_value_t = 0)]
        k: usize,
    },
    /// Mixed-feature barcodes of a labeled point cloud or labeled complex
    Labeled {
        /// Points CSV (trailing label column) or labeled complex JSON
        input: PathBuf,
        #[arg(long, value_delimiter = ',')]
        thresholds: Vec<f64>,
        #[arg(long, default_value_t = 2)]
        max_dim: usize,
        #[arg(long, default_value_t = 0)]
        hom_n: usize,
        #[arg(long, default_value_t = 0)]
        k: usize,
    },
    /// Lifetimes of monochrome components for two labels
    Unicolored {
        input: PathBuf,
        #[arg(long, value_delimiter = ',')]
        thresholds: Vec<f64>,
        #[arg(long, default_value_t = 0)]
        k: usize,
    },
}

#[derive(Debug)]
struct Usage(String);

impl std::fmt::Display for Usage {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for Usage {}

#[derive(Debug)]
struct Mismatch(String);

impl std::fmt::Display for Mismatch {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for Mismatch {}

fn usage(msg: impl Into<String>) -> anyhow::Error {
    Usage(msg.into()).into()
}

struct Ctx {
    field: Option<Field>,
    format: Format,
    closed_end: bool,
}

impl Ctx {
    fn barcodes(&self, reports: &[BarcodeReport]) -> String {
        io::render(reports, self.format, self.closed_end)
    }

    fn no_svg(&self, what: &str) -> Result<()> {
        if self.format == Format::Svg {
            return Err(usage(format!("svg output is only available for barcodes, not {what}")));
        }
        Ok(())
    }
}

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

fn load_complex(ctx: &Ctx, path: &Path) -> Result<Arc<FilteredComplex>> {
    let c = io::parse_complex_str(&read(path)?, ctx.field).with_context(|| format!("in {}", path.display()))?;
    Ok(Arc::new(c))
}

fn load_labeled(
    ctx: &Ctx,
    input: &Path,
    thresholds: &[f64],
    max_dim: usize,
) -> Result<(Arc<FilteredComplex>, BTreeMap<u32, String>)> {
    let is_json = input.extension().is_some_and(|e| e == "json");
    if is_json {
        if !thresholds.is_empty() {
            return Err(usage("--thresholds only applies to point clouds"));
        }
        let (c, labels) =
            io::parse_labeled_str(&read(input)?, ctx.field).with_context(|| format!("in {}", input.display()))?;
        return Ok((Arc::new(c), labels));
    }
    if thresholds.is_empty() {
        return Err(usage("--thresholds is required for point clouds"));
    }
    let (points, names) = io::read_points_csv(input).with_context(|| format!("in {}", input.display()))?;
    let field = ctx.field.unwrap_or_else(Field::f2);
    let c = vietoris_rips(field, &points, thresholds, max_dim)?;
    let labels = names.into_iter().enumerate().map(|(i, l)| (i as u32, l)).collect();
    Ok((Arc::new(c), labels))
}

fn check_same(a: &Barcode, b: &Barcode, what: &str) -> Result<()> {
    if a != b {
        let show = |x: &Barcode| x.bars().iter().map(|b| b.to_string()).collect::<Vec<_>>().join(" ");
        return Err(Mismatch(format!("{what}: {} vs {}", show(a), show(b))).into());
    }
    Ok(())
}

fn run(cli: Cli) -> Result<String> {
    let field = cli.field.map(Field::new).transpose().map_err(|e| usage(e.to_string()))?;
    let ctx = Ctx {
        field,
        format: match cli.format {
            OutFormat::Text => Format::Text,
            OutFormat::Json => Format::Json,
            OutFormat::Svg => Format::Svg,
        },
        closed_end: cli.closed_end,
    };
    match cli.command {
        Command::Validate { file, complex } => {
            ctx.no_svg("validate")?;
            let text = read(&file)?;
            let value: serde_json::Value =
                serde_json::from_str(&text).map_err(persheaf::Error::from).with_context(|| format!("in {}", file.display()))?;
            let explicit = complex.map(|p| load_complex(&ctx, &p)).transpose()?;
            let at = || format!("in {}", file.display());
            let summary = if value.get("snapshots").is_some() {
                let d = io::parse_diagram_str(&text, explicit, ctx.field).with_context(at)?;
                format!("diagram: {} sheaves on {} simplices", d.len(), d.complex().len())
            } else if value.get("stalks").is_some() || value.get("constant").is_some() {
                let f = io::parse_sheaf_str(&text, explicit, ctx.field).with_context(at)?;
                format!("sheaf: {} simplices, total stalk dimension {}", f.complex().len(), f.stalks().iter().sum::<usize>())
            } else if value.get("simplices").is_some() {
                let c = io::parse_complex_str(&text, ctx.field).with_context(at)?;
                format!("complex: {} simplices, {} steps", c.len(), c.steps())
            } else {
                return Err(persheaf::Error::Parse("not a complex, sheaf or diagram file".into())).with_context(at);
            };
            Ok(match ctx.format {
                Format::Json => format!("{}\n", serde_json::json!({ "valid": true, "summary": summary })),
                _ => format!("ok: {summary}\n"),
            })
        }
        Command::Cohomology { complex, sheaf, k } => {
            ctx.no_svg("cohomology")?;
            let c = load_complex(&ctx, &complex)?;
            let f = io::parse_sheaf_str(&read(&sheaf)?, Some(c.clone()), None)
                .with_context(|| format!("in {}", sheaf.display()))?;
            let dims = cohomology_dims(&f);
            let degrees: Vec<usize> = match k {
                Some(k) => vec![k],
                None => (0..dims.len()).collect(),
            };
            let at = |k: usize| dims.get(k).copied().unwrap_or(0);
            Ok(match ctx.format {
                Format::Json => {
                    let out: BTreeMap<String, usize> = degrees.iter().map(|&k| (k.to_string(), at(k))).collect();
                    format!(
                        "{}\n",
                        serde_json::to_string_pretty(&serde_json::json!({ "field": c.field().modulus(), "dims": out }))?
                    )
                }
                _ => degrees.iter().map(|&k| format!("H^{k}: {}\n", at(k))).collect(),
            })
        }
        Command::PersistA { diagram, complex, k, engine } => {
            let explicit = complex.map(|p| load_complex(&ctx, &p)).transpose()?;
            let d = io::parse_diagram_str(&read(&diagram)?, explicit, ctx.field)
                .with_context(|| format!("in {}", diagram.display()))?;
            let (bc, tag) = match engine {
                EngineA::Pointwise => (pointwise_barcode(&d, k)?, "pointwise"),
                EngineA::Graded => (graded_barcode(&d, k)?, "graded"),
                EngineA::Both => {
                    let g = graded_barcode(&d, k)?;
                    check_same(&g, &pointwise_barcode(&d, k)?, "graded and pointwise engines disagree")?;
                    (g, "graded")
                }
            };
            let report = BarcodeReport::new(&bc, tag, d.complex().field(), d.len());
            Ok(ctx.barcodes(&[report]))
        }
        Command::PersistT { complex, sheaf, k, engine } => {
            let c = load_complex(&ctx, &complex)?;
            let f = io::parse_sheaf_str(&read(&sheaf)?, Some(c.clone()), None)
                .with_context(|| format!("in {}", sheaf.display()))?;
            let input = TypeTInput::new(Arc::new(f));
            let (bc, tag) = match engine {
                EngineT::Direct => (type_t_direct(&input, k)?.1, "pointwise"),
                EngineT::Graded => (type_t_graded(&input, k), "graded"),
                EngineT::Both => {
                    let g = type_t_graded(&input, k);
                    check_same(&g, &type_t_direct(&input, k)?.1, "graded and direct engines disagree")?;
                    (g, "graded")
                }
            };
            let report = BarcodeReport::new(&bc, tag, c.field(), c.steps());
            Ok(ctx.barcodes(&[report]))
        }
        Command::Bipersist { complex, diagram, k } => {
            ctx.no_svg("bipersist")?;
            let c = load_complex(&ctx, &complex)?;
            let d = io::parse_diagram_str(&read(&diagram)?, Some(c), None)
                .with_context(|| format!("in {}", diagram.display()))?;
            let g = grid(&d, k)?;
            if let Err(e) = check_commutative(&g) {
                return Err(Mismatch(e.to_string()).into());
            }
            let report = GridReport::new(&g, k, true);
            Ok(match ctx.format {
                Format::Json => format!("{}\n", serde_json::to_string_pretty(&report)?),
                _ => report.to_text(),
            })
        }
        Command::Labeled { input, thresholds, max_dim, hom_n, k } => {
            let (c, labels) = load_labeled(&ctx, &input, &thresholds, max_dim)?;
            let lf = LabeledFiltration::new(c.clone(), &labels)?;
            let bc = mixed_feature_barcodes(&lf, hom_n, k)?;
            Ok(ctx.barcodes(&[BarcodeReport::new(&bc, "pointwise", c.field(), c.steps())]))
        }
        Command::Unicolored { input, thresholds, k } => {
            let (c, labels) = load_labeled(&ctx, &input, &thresholds, 1)?;
            let lf = LabeledFiltration::new(c.clone(), &labels)?;
            let (_, bc) = unicolored_pipeline(&lf, k)?;
            Ok(ctx.barcodes(&[BarcodeReport::new(&bc, "pointwise", c.field(), c.steps())]))
        }
    }
}

fn exit_code(err: &anyhow::Error) -> u8 {
    for cause in err.chain() {
        if cause.is::<Usage>() {
            return 1;
        }
        if cause.is::<Mismatch>() {
            return 3;
        }
        if let Some(e) = cause.downcast_ref::<persheaf::Error>() {
            return match e {
                persheaf::Error::Io(_) => 1,
                _ => 2,
            };
        }
        if cause.is::<std::io::Error>() {
            return 1;
        }
    }
    2
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    match run(cli) {
        Ok(out) => {
            let mut stdout = std::io::stdout().lock();
            let _ = stdout.write_all(out.as_bytes());
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(exit_code(&e))
        }
    }
}
