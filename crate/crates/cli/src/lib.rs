//! Library side of the `langvar` command: argument handling, file loading
//! and report rendering, kept separate from `main` so tests can call
//! [`run`] directly.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use langvar_core::checks::{
    check_abbreviation, check_expressiveness, check_presentation_option, check_property_preservation_over,
    check_semantic_refinement, enumerate_models, CheckError, CheckReport, Direction, Scope, Verdict,
};
use langvar_core::semantics::{resolve_mapping, semantics_of, PropertySpec, SemanticsError, DEFAULT_CAP};
use langvar_core::syntax::{check_wellformed, flatten, parse, pretty_print, Ast, ConcreteModel, FlatAst, Signature};
use langvar_core::variability::{
    build_variant, default_feature_model, parse_feature_model, validate_configuration, Configuration, FeatureModel,
    LanguageVariant,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILS: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_CAP: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "langvar", version, about = "Variants of a statechart language and checks of their variability conditions")]
struct Cli {
    /// Report format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Human)]
    format: Format,
    /// Upper bound on enumerated models and machines.
    #[arg(long, global = true, default_value_t = DEFAULT_CAP)]
    cap: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Human,
    Lines,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Parse a chart and print it back in canonical form.
    Parse {
        file: PathBuf,
        #[arg(long)]
        cfg: Option<PathBuf>,
        #[arg(long)]
        fm: Option<PathBuf>,
    },
    /// Print the reduced (flat) form of a chart.
    Flatten {
        file: PathBuf,
        #[arg(long)]
        cfg: Option<PathBuf>,
        #[arg(long)]
        fm: Option<PathBuf>,
    },
    /// Enumerate the realizations of a chart.
    Semantics {
        file: PathBuf,
        #[arg(long)]
        cfg: PathBuf,
        #[arg(long)]
        fm: Option<PathBuf>,
        /// Write the machine set to this file instead of standard output.
        #[arg(long)]
        export: Option<PathBuf>,
    },
    /// Run a variability check.
    Check(CheckArgs),
    /// Validate a configuration against a feature model.
    FmValidate {
        #[arg(long)]
        fm: PathBuf,
        #[arg(long)]
        cfg: PathBuf,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum CheckKind {
    Refinement,
    Presentation,
    Abbreviation,
    Expressiveness,
    Preservation,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum DirectionArg {
    AsWritten,
    Converse,
}

#[derive(Debug, clap::Args)]
struct CheckArgs {
    kind: CheckKind,
    #[arg(long)]
    fm: PathBuf,
    /// First variant: the original, base or unconstrained one.
    #[arg(long)]
    cfg_a: PathBuf,
    /// Second variant; defaults to the first.
    #[arg(long)]
    cfg_b: Option<PathBuf>,
    /// Use the `.sc` files of this directory instead of enumerating charts.
    #[arg(long)]
    corpus: Option<PathBuf>,
    #[arg(long, default_value_t = 2)]
    max_states: usize,
    /// Defaults to `--max-states`.
    #[arg(long)]
    min_states: Option<usize>,
    #[arg(long, value_delimiter = ',', default_value = "a,b")]
    events: Vec<String>,
    #[arg(long, value_delimiter = ',')]
    flags: Vec<String>,
    #[arg(long, value_enum, default_value_t = DirectionArg::Converse)]
    direction: DirectionArg,
    /// `reachable:<state>`, `unreachable:<state>` or `all-reachable`.
    #[arg(long)]
    property: Option<String>,
}

/// Everything one invocation produces.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Output {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

struct Failure {
    code: i32,
    message: String,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Failure {
        Failure {
            code: EXIT_USAGE,
            message: message.into(),
        }
    }
}

impl From<CheckError> for Failure {
    fn from(e: CheckError) -> Self {
        Failure {
            code: if e.is_cap_exceeded() { EXIT_CAP } else { EXIT_USAGE },
            message: e.to_string(),
        }
    }
}

impl From<SemanticsError> for Failure {
    fn from(e: SemanticsError) -> Self {
        CheckError::from(e).into()
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::usage(format!("cannot read {}: {e}", path.display())))
}

/// The `.sc` files at `path`, sorted by file name. A file path yields
/// that file alone.
pub fn load_corpus(path: &Path) -> std::io::Result<Vec<ConcreteModel>> {
    let mut files = Vec::new();
    if path.is_dir() {
        for entry in fs::read_dir(path)? {
            let p = entry?.path();
            if p.is_file() && p.extension().is_some_and(|e| e == "sc") {
                files.push(p);
            }
        }
        files.sort_by(|a, b| a.file_name().cmp(&b.file_name()));
    } else {
        files.push(path.to_path_buf());
    }
    files
        .into_iter()
        .map(|p| {
            let body = fs::read_to_string(&p)?;
            let name = p.file_name().map(|n| n.to_string_lossy().into_owned()).unwrap_or_default();
            Ok(ConcreteModel::new(name, body))
        })
        .collect()
}

fn load_fm(path: Option<&Path>) -> Result<FeatureModel, Failure> {
    match path {
        None => Ok(default_feature_model()),
        Some(p) => parse_feature_model(&read(p)?).map_err(|e| Failure::usage(format!("{}: {e}", p.display()))),
    }
}

fn load_variant(fm: &FeatureModel, cfg: Option<&Path>) -> Result<LanguageVariant, Failure> {
    match cfg {
        None => Ok(LanguageVariant::base()),
        Some(p) => {
            let c = Configuration::parse(&read(p)?);
            build_variant(fm, &c).map_err(|e| Failure::usage(format!("{}: {e}", p.display())))
        }
    }
}

fn load_ast(path: &Path, v: &LanguageVariant) -> Result<Ast, Failure> {
    let name = path.file_name().map(|n| n.to_string_lossy().into_owned()).unwrap_or_default();
    let model = ConcreteModel::new(name, read(path)?);
    parse_model(&model, v)
}

fn parse_model(model: &ConcreteModel, v: &LanguageVariant) -> Result<Ast, Failure> {
    let ast = parse(model, v).map_err(|e| Failure::usage(prefix_lines(&model.source_name, &e.to_string())))?;
    check_wellformed(&ast).map_err(|d| Failure::usage(prefix_lines(&model.source_name, &d.to_string())))?;
    Ok(ast)
}

fn flatten_model(ast: &Ast, v: &LanguageVariant, source: &str) -> Result<FlatAst, Failure> {
    let flat = flatten(ast, v).map_err(|e| Failure::usage(prefix_lines(source, &e.to_string())))?;
    if !v.admits(&flat) {
        return Err(Failure::usage(format!(
            "{source}: chart violates the variant's stereotype, constraint or guard restrictions"
        )));
    }
    Ok(flat)
}

fn prefix_lines(source: &str, text: &str) -> String {
    text.lines().map(|l| format!("{source}: {l}")).collect::<Vec<_>>().join("\n")
}

fn escape(s: &str) -> String {
    s.replace('\\', "\\\\").replace('\n', "\\n")
}

/// Renders a report. The `lines` format has one `key=value` per line with
/// the keys `condition`, `verdict`, `models_checked`,
/// `counterexample_model`, `counterexample_machine` and `scope`, in that
/// order; values are escaped onto one line and empty when absent.
pub fn emit_report(report: &CheckReport, format: Format) -> String {
    match format {
        Format::Human => format!("{report}\n"),
        Format::Lines => {
            let cex = report.counterexample();
            let model = cex.map(|c| escape(&c.text)).unwrap_or_default();
            let machine = cex
                .and_then(|c| c.witness.as_ref())
                .map(|w| w.export_line())
                .unwrap_or_default();
            let mut out = String::new();
            let _ = writeln!(out, "condition={}", report.condition());
            let _ = writeln!(out, "verdict={}", report.verdict().id());
            let _ = writeln!(out, "models_checked={}", report.stats().models_checked);
            let _ = writeln!(out, "counterexample_model={model}");
            let _ = writeln!(out, "counterexample_machine={machine}");
            let _ = writeln!(out, "scope={}", escape(report.scope()));
            out
        }
    }
}

fn report_code(report: &CheckReport) -> i32 {
    match report.verdict() {
        Verdict::Fails => EXIT_FAILS,
        Verdict::Holds | Verdict::HoldsUpToBound => EXIT_OK,
    }
}

fn check(args: &CheckArgs, cap: u64, out: &mut Output) -> Result<CheckReport, Failure> {
    let fm = load_fm(Some(&args.fm))?;
    let va = load_variant(&fm, Some(&args.cfg_a))?;
    let vb = load_variant(&fm, Some(args.cfg_b.as_deref().unwrap_or(&args.cfg_a)))?;
    let texts = match &args.corpus {
        None => None,
        Some(dir) => {
            let texts = load_corpus(dir).map_err(|e| Failure::usage(format!("cannot load corpus {}: {e}", dir.display())))?;
            if texts.is_empty() {
                let _ = writeln!(out.stderr, "warning: corpus {} contains no .sc files", dir.display());
            }
            Some(texts)
        }
    };
    let signature = Signature::new(args.events.iter().cloned(), args.flags.iter().cloned())
        .map_err(|e| Failure::usage(format!("invalid signature: {e}")))?;
    let enumerated = Scope {
        min_states: args.min_states.unwrap_or(args.max_states),
        ..Scope::up_to(signature, args.max_states)
    }
    .with_cap(cap);
    // Scope over the corpus' reduced charts as read by `v`.
    let scope_for = |v: &LanguageVariant| -> Result<Scope, Failure> {
        match &texts {
            None => Ok(enumerated.clone()),
            Some(ts) => {
                let mut flats = Vec::new();
                for t in ts {
                    let ast = parse_model(t, v)?;
                    flats.push(flatten(&ast, v).map_err(|e| Failure::usage(prefix_lines(&t.source_name, &e.to_string())))?);
                }
                Ok(Scope::corpus(flats).with_cap(cap))
            }
        }
    };
    let report = match args.kind {
        CheckKind::Refinement => check_semantic_refinement(&va, &vb, &scope_for(&va)?)?,
        CheckKind::Expressiveness => {
            let dir = match args.direction {
                DirectionArg::AsWritten => Direction::AsWritten,
                DirectionArg::Converse => Direction::Converse,
            };
            check_expressiveness(&va, &vb, &scope_for(&va)?, dir)?
        }
        CheckKind::Preservation => {
            let phi: PropertySpec = args
                .property
                .as_deref()
                .ok_or_else(|| Failure::usage("preservation needs --property"))?
                .parse()?;
            check_property_preservation_over(&va, &vb, &scope_for(&va)?, &phi)?
        }
        CheckKind::Presentation => {
            let corpus = match &texts {
                Some(ts) => ts.clone(),
                None => {
                    let mut ts = Vec::new();
                    for m in enumerate_models(&enumerated, &va)? {
                        for v in [&va, &vb] {
                            ts.push(pretty_print(&m.to_ast(), v));
                        }
                    }
                    ts
                }
            };
            check_presentation_option(&va, &vb, &corpus)?
        }
        CheckKind::Abbreviation => {
            let mut corpus = Vec::new();
            for t in texts.iter().flatten() {
                // parsing is independent of hierarchy support
                corpus.push(parse_model(t, &vb)?);
            }
            let flats = if texts.is_some() { Vec::new() } else { enumerate_models(&enumerated, &va)? };
            check_abbreviation(&va, &vb, &corpus, &flats)?
        }
    };
    Ok(report)
}

fn dispatch(cli: &Cli, out: &mut Output) -> Result<i32, Failure> {
    match &cli.command {
        Command::Parse { file, cfg, fm } => {
            let v = load_variant(&load_fm(fm.as_deref())?, cfg.as_deref())?;
            let ast = load_ast(file, &v)?;
            out.stdout.push_str(&pretty_print(&ast, &v).body);
            Ok(EXIT_OK)
        }
        Command::Flatten { file, cfg, fm } => {
            let v = load_variant(&load_fm(fm.as_deref())?, cfg.as_deref())?;
            let ast = load_ast(file, &v)?;
            let flat = flatten_model(&ast, &v, &file.display().to_string())?;
            out.stdout.push_str(&pretty_print(&flat.to_ast(), &v).body);
            Ok(EXIT_OK)
        }
        Command::Semantics { file, cfg, fm, export } => {
            let v = load_variant(&load_fm(fm.as_deref())?, Some(cfg))?;
            let ast = load_ast(file, &v)?;
            let flat = flatten_model(&ast, &v, &file.display().to_string())?;
            let mapping = resolve_mapping(&flat, &v)?;
            let set = semantics_of(&flat, mapping, v.domain, cli.cap)?;
            let text = set.export();
            match export {
                Some(path) => {
                    fs::write(path, &text).map_err(|e| Failure::usage(format!("cannot write {}: {e}", path.display())))?;
                    let _ = writeln!(out.stdout, "{} machines ({mapping}, {}) written to {}", set.len(), v.domain, path.display());
                }
                None => {
                    let _ = writeln!(out.stdout, "# {} machines ({mapping}, {})", set.len(), v.domain);
                    out.stdout.push_str(&text);
                }
            }
            Ok(EXIT_OK)
        }
        Command::FmValidate { fm, cfg } => {
            let fm = load_fm(Some(fm))?;
            let c = Configuration::parse(&read(cfg)?);
            match validate_configuration(&fm, &c) {
                Ok(()) => {
                    out.stdout.push_str("ok\n");
                    Ok(EXIT_OK)
                }
                Err(vs) => Err(Failure::usage(format!("{}: invalid configuration\n{vs}", cfg.display()))),
            }
        }
        Command::Check(args) => {
            let report = check(args, cli.cap, out)?;
            out.stdout.push_str(&emit_report(&report, cli.format));
            Ok(report_code(&report))
        }
    }
}

/// Runs one invocation; `argv[0]` is the program name.
pub fn run<I, T>(argv: I) -> Output
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let mut out = Output::default();
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            if e.use_stderr() {
                out.stderr = text;
                out.code = EXIT_USAGE;
            } else {
                out.stdout = text;
            }
            return out;
        }
    };
    match dispatch(&cli, &mut out) {
        Ok(code) => out.code = code,
        Err(f) => {
            out.code = f.code;
            out.stderr.push_str(&f.message);
            if !f.message.ends_with('\n') {
                out.stderr.push('\n');
            }
        }
    }
    out
}
