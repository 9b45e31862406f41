//! The `lexis` command line: `validate`, `analyze`, `batch` and `fmt`.
//!
//! Exit status is 0 on success, 1 for semantic or analysis failures and 2
//! for I/O, usage or syntax failures.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};

use crate::analyzer::{analyze_with, AnalyzerError, ClauseDescriptor, Options, PersistenceP};
use crate::event::{render_ascii, Analysis, EventKind};
use crate::lcs::{conjunction, print};
use crate::lexicon::{read, save, Lexicon, LexiconError};

pub const SEPARATOR: &str = "----------------------------------------";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, ValueEnum)]
pub enum OutputMode {
    Tree,
    Lcs,
    Predicates,
    #[default]
    All,
}

#[derive(Debug, Parser)]
#[command(
    name = "lexis",
    version,
    about = "Event-structure analysis over a computational lexicon"
)]
pub struct Cli {
    /// Lexicon file in LEXF format.
    #[arg(
        long,
        global = true,
        env = "LEXIS_LEXICON",
        default_value = "./lexicon.lexf"
    )]
    pub lexicon: PathBuf,
    #[arg(long, global = true, value_enum, default_value_t = OutputMode::All)]
    pub mode: OutputMode,
    /// Likelihood that an unopposed property persists, in (0.5, 1].
    #[arg(long = "p", global = true, default_value = "0.8")]
    pub persistence_p: PersistenceP,
    /// Stop a batch at the first failing line.
    #[arg(long, global = true)]
    pub strict: bool,
    /// Treat unopposed properties as uncertain.
    #[arg(long, global = true)]
    pub no_persist: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check a lexicon and report every problem.
    Validate,
    /// Analyze one CLAUSE line.
    Analyze { clause: String },
    /// Analyze every CLAUSE line of a file.
    Batch { file: PathBuf },
    /// Print the lexicon in canonical form.
    Fmt,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CliConfig<'a> {
    pub lexicon_path: &'a Path,
    pub persistence_p: PersistenceP,
    pub output_mode: OutputMode,
    pub strict: bool,
    pub no_persist: bool,
}

impl Cli {
    pub fn config(&self) -> CliConfig<'_> {
        CliConfig {
            lexicon_path: &self.lexicon,
            persistence_p: self.persistence_p,
            output_mode: self.mode,
            strict: self.strict,
            no_persist: self.no_persist,
        }
    }
}

/// What a command printed and how it ended.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Outcome {
    pub status: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn fail(&mut self, status: i32, line: String) -> &mut Self {
        self.status = status;
        self.stderr.push_str(&line);
        self.stderr.push('\n');
        self
    }
}

fn diagnostic(level: &str, file: &Path, line: Option<usize>, message: &str) -> String {
    match line {
        Some(l) => format!("{level} {}:{l} {message}", file.display()),
        None => format!("{level} {} {message}", file.display()),
    }
}

fn lexicon_diagnostic(file: &Path, e: &LexiconError) -> String {
    diagnostic(
        "error",
        file,
        e.line(),
        &format!("{}: {}", e.code(), e.message()),
    )
}

fn read_lexicon(config: &CliConfig, out: &mut Outcome) -> Option<Lexicon> {
    let path = config.lexicon_path;
    let text = match std::fs::read_to_string(path) {
        Ok(t) => t,
        Err(e) => {
            out.fail(
                2,
                diagnostic("error", path, None, &format!("cannot read lexicon: {e}")),
            );
            return None;
        }
    };
    match read(&text) {
        Ok(lex) => Some(lex),
        Err(e) => {
            let status = if e.code() == "SyntaxError" { 2 } else { 1 };
            out.fail(status, lexicon_diagnostic(path, &e));
            None
        }
    }
}

/// Reads and fully validates the lexicon, reporting the first problem.
fn load_lexicon(config: &CliConfig, out: &mut Outcome) -> Option<Lexicon> {
    let lex = read_lexicon(config, out)?;
    match lex.validate().first() {
        Some(e) => {
            out.fail(1, lexicon_diagnostic(config.lexicon_path, e));
            None
        }
        None => Some(lex),
    }
}

pub fn cmd_validate(config: &CliConfig) -> Outcome {
    let mut out = Outcome::default();
    let Some(lex) = read_lexicon(config, &mut out) else {
        return out;
    };
    for e in lex.validate() {
        out.fail(1, lexicon_diagnostic(config.lexicon_path, &e));
    }
    out
}

/// Renders one analysis in the requested mode, without a trailing newline.
pub fn render(analysis: &Analysis, mode: OutputMode) -> String {
    let mut s = String::new();
    if matches!(mode, OutputMode::Tree | OutputMode::All) {
        s.push_str("ES:\n");
        s.push_str(&render_ascii(&analysis.es));
        if !s.ends_with('\n') {
            s.push('\n');
        }
    }
    if matches!(mode, OutputMode::Predicates | OutputMode::All) {
        s.push_str("LCS':\n");
        let _ = writeln!(s, "P: {}", conjunction(&analysis.lcs_prime_process));
        if analysis.kind() != EventKind::Process {
            let _ = writeln!(s, "S: {}", conjunction(&analysis.lcs_prime_state));
        }
    }
    if matches!(mode, OutputMode::Lcs | OutputMode::All) {
        let _ = writeln!(s, "LCS: {}", print(&analysis.lcs));
    }
    s.lines().map(str::trim_end).collect::<Vec<_>>().join("\n")
}

fn analyze_line(lex: &Lexicon, config: &CliConfig, line: &str) -> Result<String, String> {
    let mut clause: ClauseDescriptor = line.parse().map_err(|e| format!("ClauseError: {e}"))?;
    if config.no_persist {
        clause.assume_persistence = false;
    }
    let options = Options {
        persistence_p: config.persistence_p,
        ..Options::default()
    };
    analyze_with(lex, &clause, &options)
        .map(|a| render(&a, config.output_mode))
        .map_err(|e: AnalyzerError| format!("{}: {e}", e.name()))
}

pub fn cmd_analyze(config: &CliConfig, clause: &str) -> Outcome {
    let mut out = Outcome::default();
    let Some(lex) = load_lexicon(config, &mut out) else {
        return out;
    };
    match analyze_line(&lex, config, clause) {
        Ok(text) => {
            out.stdout = text;
            out.stdout.push('\n');
        }
        Err(msg) => {
            out.fail(1, format!("error {msg}"));
        }
    }
    out
}

pub fn cmd_batch(config: &CliConfig, file: &Path) -> Outcome {
    let mut out = Outcome::default();
    let Some(lex) = load_lexicon(config, &mut out) else {
        return out;
    };
    let text = match std::fs::read_to_string(file) {
        Ok(t) => t,
        Err(e) => {
            out.fail(
                2,
                diagnostic("error", file, None, &format!("cannot read batch file: {e}")),
            );
            return out;
        }
    };
    let mut blocks = Vec::new();
    for (index, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        match analyze_line(&lex, config, line) {
            Ok(block) => blocks.push(block),
            Err(msg) if config.strict => {
                out.fail(1, diagnostic("error", file, Some(index + 1), &msg));
                break;
            }
            Err(msg) => {
                out.stderr
                    .push_str(&diagnostic("warning", file, Some(index + 1), &msg));
                out.stderr.push('\n');
            }
        }
    }
    for (i, block) in blocks.iter().enumerate() {
        if i > 0 {
            out.stdout.push_str(SEPARATOR);
            out.stdout.push('\n');
        }
        out.stdout.push_str(block);
        out.stdout.push('\n');
    }
    out
}

pub fn cmd_fmt(config: &CliConfig) -> Outcome {
    let mut out = Outcome::default();
    match load_lexicon(config, &mut out) {
        Some(lex) => out.stdout = save(&lex),
        None => out.status = 2,
    }
    out
}

pub fn execute(cli: &Cli) -> Outcome {
    let config = cli.config();
    match &cli.command {
        Command::Validate => cmd_validate(&config),
        Command::Analyze { clause } => cmd_analyze(&config, clause),
        Command::Batch { file } => cmd_batch(&config, file),
        Command::Fmt => cmd_fmt(&config),
    }
}

/// Parses `args` (program name first) and runs the command.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    match Cli::try_parse_from(args) {
        Ok(cli) => execute(&cli),
        Err(e) => {
            let text = e.render().to_string();
            if e.use_stderr() {
                Outcome {
                    status: 2,
                    stdout: String::new(),
                    stderr: text,
                }
            } else {
                Outcome {
                    status: 0,
                    stdout: text,
                    stderr: String::new(),
                }
            }
        }
    }
}

/// Runs with the process arguments and writes to the standard streams.
pub fn main_exit_code() -> i32 {
    let outcome = run(std::env::args_os());
    let _ = std::io::stdout().write_all(outcome.stdout.as_bytes());
    let _ = std::io::stderr().write_all(outcome.stderr.as_bytes());
    outcome.status
}
