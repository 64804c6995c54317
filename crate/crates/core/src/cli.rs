//! Command-line front end.

use std::collections::BTreeSet;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::manifest::write_debloated_manifest;
use crate::metrics::{
    aggregate, correlations, height_vs_bloat, split_by_modularity, write_csv, CorpusStats,
};
use crate::model::{Ga, Scope};
use crate::repo::{load_project, LocalRepository};
use crate::report::{from_machine, render_text, to_machine};
use crate::usage::{analyze, debloat, AnalysisConfig, UsageReport};

pub const EXIT_OK: i32 = 0;
pub const EXIT_BLOAT: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Text,
    Machine,
    Csv,
}

#[derive(Debug, Parser)]
#[command(
    name = "debloat",
    version,
    about = "Find and remove bloated Maven dependencies"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Print the dependency usage report of a project.
    Analyze {
        #[command(flatten)]
        project: ProjectArgs,
        /// Write the report here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Plan debloat actions and write the debloated POM.
    Debloat {
        #[command(flatten)]
        project: ProjectArgs,
        /// Destination of the debloated POM.
        #[arg(long)]
        out: PathBuf,
    },
    /// Aggregate machine-format reports of a directory into per-artifact CSV.
    Metrics {
        reports: PathBuf,
        #[arg(long)]
        out: PathBuf,
        /// Heights at or above this share the last bucket.
        #[arg(long, default_value_t = 10)]
        cap: usize,
    },
}

#[derive(Debug, Args)]
struct ProjectArgs {
    /// The project's POM file.
    pom: PathBuf,
    /// Local repository root in the standard layout.
    #[arg(long)]
    repo: PathBuf,
    #[arg(long, value_delimiter = ',', default_value = "compile")]
    scopes: Vec<String>,
    /// Dependencies known to be used dynamically (G:A).
    #[arg(long, value_delimiter = ',')]
    ignore: Vec<String>,
    /// Exit with status 1 when any bloated dependency is found.
    #[arg(long)]
    fail_on_bloat: bool,
    #[arg(long, value_enum, default_value_t = OutputFormat::Text)]
    format: OutputFormat,
}

/// Validated settings for one analysis run.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Config {
    pub repo_root: PathBuf,
    pub scopes: BTreeSet<Scope>,
    pub ignore: BTreeSet<Ga>,
    pub fail_on_bloat: bool,
    pub output_format: OutputFormat,
    pub write_debloated: Option<PathBuf>,
}

impl ProjectArgs {
    fn config(&self, write_debloated: Option<PathBuf>) -> Result<Config, String> {
        let scopes = self
            .scopes
            .iter()
            .filter(|s| !s.is_empty())
            .map(|s| s.parse::<Scope>())
            .collect::<Result<BTreeSet<_>, _>>()?;
        if scopes.is_empty() {
            return Err("--scopes must name at least one scope".into());
        }
        let ignore = self
            .ignore
            .iter()
            .filter(|s| !s.is_empty())
            .map(|s| s.parse::<Ga>().map_err(|e| e.to_string()))
            .collect::<Result<BTreeSet<_>, _>>()?;
        Ok(Config {
            repo_root: self.repo.clone(),
            scopes,
            ignore,
            fail_on_bloat: self.fail_on_bloat,
            output_format: self.format,
            write_debloated,
        })
    }
}

fn format_report(r: &UsageReport, format: OutputFormat) -> Result<String, String> {
    Ok(match format {
        OutputFormat::Text => render_text(r),
        OutputFormat::Machine => to_machine(r) + "\n",
        OutputFormat::Csv => {
            let mut buf = Vec::new();
            write_csv(&aggregate(std::slice::from_ref(r)), &mut buf).map_err(|e| e.to_string())?;
            String::from_utf8(buf).expect("csv output is UTF-8")
        }
    })
}

fn emit(text: &str, dest: Option<&Path>, out: &mut dyn Write) -> Result<(), String> {
    match dest {
        Some(p) => fs::write(p, text).map_err(|e| format!("cannot write {}: {e}", p.display())),
        None => out.write_all(text.as_bytes()).map_err(|e| e.to_string()),
    }
}

fn run_project(
    args: &ProjectArgs,
    report_dest: Option<&Path>,
    pom_dest: Option<PathBuf>,
    out: &mut dyn Write,
) -> Result<i32, String> {
    let config = args.config(pom_dest)?;
    if !config.repo_root.is_dir() {
        return Err(format!(
            "repository {} is not a directory",
            config.repo_root.display()
        ));
    }
    let repo = LocalRepository::new(&config.repo_root);
    let project = load_project(&args.pom).map_err(|e| e.to_string())?;
    let analysis_config = AnalysisConfig {
        scopes: config.scopes.clone(),
        ignore: config.ignore.clone(),
    };
    let report = match &config.write_debloated {
        Some(dest) => {
            let report = debloat(&project, &repo, &analysis_config).map_err(|e| e.to_string())?;
            let original = fs::read(&args.pom)
                .map_err(|e| format!("cannot read {}: {e}", args.pom.display()))?;
            let pom = write_debloated_manifest(&original, &project.manifest, &report.actions)
                .map_err(|e| e.to_string())?;
            fs::write(dest, pom).map_err(|e| format!("cannot write {}: {e}", dest.display()))?;
            report
        }
        None => {
            analyze(&project, &repo, &analysis_config)
                .map_err(|e| e.to_string())?
                .report
        }
    };
    emit(
        &format_report(&report, config.output_format)?,
        report_dest,
        out,
    )?;
    Ok(if config.fail_on_bloat && report.counts.bloated() > 0 {
        EXIT_BLOAT
    } else {
        EXIT_OK
    })
}

fn read_reports(dir: &Path) -> Result<Vec<UsageReport>, String> {
    let mut reports = Vec::new();
    let entries = fs::read_dir(dir).map_err(|e| format!("cannot read {}: {e}", dir.display()))?;
    let mut paths: Vec<PathBuf> = entries
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.extension().is_some_and(|x| x == "json"))
        .collect();
    paths.sort();
    for p in paths {
        let text =
            fs::read_to_string(&p).map_err(|e| format!("cannot read {}: {e}", p.display()))?;
        reports.push(from_machine(&text).map_err(|e| format!("{}: {e}", p.display()))?);
    }
    Ok(reports)
}

fn metrics_summary(stats: &CorpusStats, cap: usize) -> String {
    let mut s = String::new();
    let fmt_ratios = |c: &CorpusStats| {
        c.global_ratios
            .iter()
            .map(|(k, v)| format!("{k}={v:.3}"))
            .collect::<Vec<_>>()
            .join(" ")
    };
    s.push_str(&format!(
        "{} artifacts, {} dependency relationships, {} bloated\n",
        stats.per_artifact.len(),
        stats.global_counts.total(),
        stats.global_counts.bloated()
    ));
    s.push_str(&format!("ratios: {}\n", fmt_ratios(stats)));
    let (single, multi) = split_by_modularity(stats);
    s.push_str(&format!(
        "single-module ({}): {}\n",
        single.per_artifact.len(),
        fmt_ratios(&single)
    ));
    s.push_str(&format!(
        "multi-module ({}): {}\n",
        multi.per_artifact.len(),
        fmt_ratios(&multi)
    ));
    let rho = |r: &Result<f64, _>| match r {
        Ok(v) => format!("{v:.3}"),
        Err(e) => format!("undefined ({e})"),
    };
    let c = correlations(stats);
    s.push_str(&format!(
        "spearman transitive-ratio vs bloat-ratio: {}\n",
        rho(&c.transitive_vs_bloat)
    ));
    s.push_str(&format!(
        "spearman bt vs tree size: {}\n",
        rho(&c.bt_vs_tree_size)
    ));
    s.push_str("height  artifacts  bt/transitive median\n");
    for b in height_vs_bloat(stats, cap) {
        let median = b
            .bt_ratio
            .map_or("-".to_string(), |x| format!("{:.3}", x.median));
        s.push_str(&format!("{:>6}  {:>9}  {median}\n", b.label, b.artifacts));
    }
    s
}

fn run_metrics(dir: &Path, dest: &Path, cap: usize, out: &mut dyn Write) -> Result<i32, String> {
    let stats = aggregate(&read_reports(dir)?);
    let file =
        fs::File::create(dest).map_err(|e| format!("cannot write {}: {e}", dest.display()))?;
    write_csv(&stats, file).map_err(|e| e.to_string())?;
    out.write_all(metrics_summary(&stats, cap).as_bytes())
        .map_err(|e| e.to_string())?;
    Ok(EXIT_OK)
}

/// Runs the CLI on `argv` (program name first) and returns the exit status.
pub fn run_with<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            let text = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = out.write_all(text.as_bytes());
                    EXIT_OK
                }
                _ => {
                    let _ = err.write_all(text.as_bytes());
                    EXIT_USAGE
                }
            };
        }
    };
    let result = match &cli.command {
        Command::Analyze { project, out: dest } => run_project(project, dest.as_deref(), None, out),
        Command::Debloat { project, out: dest } => {
            run_project(project, None, Some(dest.clone()), out)
        }
        Command::Metrics {
            reports,
            out: dest,
            cap,
        } => run_metrics(reports, dest, *cap, out),
    };
    match result {
        Ok(code) => code,
        Err(msg) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_USAGE
        }
    }
}

pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    run_with(
        argv,
        &mut std::io::stdout().lock(),
        &mut std::io::stderr().lock(),
    )
}
