//! The `raag` command line: `analyze`, `jsj` and `element`.
//!
//! Exit codes: 0 success, 1 input error, 2 validation failure, 3 resource cap
//! exceeded. Results go to standard output, diagnostics to standard error.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::error::Error;
use crate::graph::{SimplicialGraph, VertexSet};
use crate::jsj::{self, CheckResult, GraphOfGroupsJson};
use crate::word::{CentralizerMode, Word, DEFAULT_ROOT_SEARCH_CAP};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INPUT: i32 = 1;
pub const EXIT_VALIDATION: i32 = 2;
pub const EXIT_BUDGET: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "raag", version, about = "Decompositions of right-angled Artin groups from their defining graphs")]
pub struct Cli {
    /// Suppress the validation summary.
    #[arg(long, global = true)]
    pub quiet: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Free factors, direct factors, clique separators and hanging vertices.
    Analyze { graph: PathBuf },
    /// Relative or abelian JSJ decomposition, per connected component.
    Jsj {
        graph: PathBuf,
        #[arg(long, value_enum, default_value_t = JsjMode::Relative)]
        mode: JsjMode,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Operations on a single group element.
    Element {
        graph: PathBuf,
        /// Whitespace-separated letters, e.g. "a b a^-1".
        #[arg(long, allow_hyphen_values = true)]
        word: String,
        #[arg(long, value_enum)]
        op: ElementOp,
        #[arg(long, value_enum, default_value_t = ModeFlag::ProP)]
        mode: ModeFlag,
        /// Most prefix states the root search may visit before giving up.
        #[arg(long, default_value_t = DEFAULT_ROOT_SEARCH_CAP)]
        root_cap: usize,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum JsjMode {
    Relative,
    Abelian,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Dot,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ElementOp {
    Nf,
    Support,
    Cyclic,
    Centralizer,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ModeFlag {
    #[value(name = "pro-p")]
    ProP,
    #[value(name = "pro-C", alias = "pro-c")]
    ProC,
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() { err.write_all(text.as_bytes()) } else { out.write_all(text.as_bytes()) };
            return code;
        }
    };
    match execute(&cli, out, err) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            exit_code(&e)
        }
    }
}

fn exit_code(e: &Error) -> i32 {
    match e {
        Error::CapExceeded(_) => EXIT_BUDGET,
        _ => EXIT_INPUT,
    }
}

fn read_graph(path: &PathBuf) -> Result<SimplicialGraph, Error> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Domain(format!("cannot read {}: {e}", path.display())))?;
    SimplicialGraph::parse(&text)
}

fn execute(cli: &Cli, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32, Error> {
    let emit = |out: &mut dyn Write, text: &str| {
        out.write_all(text.as_bytes())
            .map_err(|e| Error::Domain(format!("cannot write output: {e}")))
    };
    match &cli.command {
        Command::Analyze { graph } => {
            let g = read_graph(graph)?;
            emit(out, &to_json(&analyze(&g)))?;
            Ok(EXIT_OK)
        }
        Command::Jsj { graph, mode, format } => {
            let g = read_graph(graph)?;
            let components = g.connected_components();
            if components.len() > 1 {
                let _ = writeln!(
                    err,
                    "warning: graph has {} components; decomposing each separately",
                    components.len()
                );
            }
            let mut decompositions = Vec::new();
            for component in &components {
                let sub = g.induced_subgraph(component)?;
                decompositions.push(decompose(sub, *mode)?);
            }
            let valid = decompositions.iter().all(|d| d.1.iter().all(|c| c.passed));
            let text = match format {
                Format::Json => to_json(&JsjOutput {
                    mode: mode_name(*mode),
                    valid,
                    components: decompositions
                        .iter()
                        .map(|(gog, checks)| ComponentOutput {
                            vertices: gog.base_graph.names().iter().map(String::as_str).collect(),
                            decomposition: gog.serializable(),
                            validation: (!cli.quiet).then_some(checks.as_slice()),
                        })
                        .collect(),
                }),
                Format::Dot => {
                    let mut text = String::new();
                    for (gog, checks) in &decompositions {
                        if !cli.quiet {
                            for c in checks {
                                let verdict = if c.passed { "pass" } else { "FAIL" };
                                text.push_str(&format!("// {}: {verdict}", c.name));
                                if !c.detail.is_empty() {
                                    text.push_str(&format!(" ({})", c.detail));
                                }
                                text.push('\n');
                            }
                        }
                        text.push_str(&gog.to_dot());
                    }
                    text
                }
            };
            emit(out, &text)?;
            if valid {
                Ok(EXIT_OK)
            } else {
                let _ = writeln!(err, "error: validation failed");
                Ok(EXIT_VALIDATION)
            }
        }
        Command::Element { graph, word, op, mode, root_cap } => {
            let g = read_graph(graph)?;
            let w = Word::parse(&g, word)?;
            emit(out, &to_json(&element(&g, &w, *op, *mode, *root_cap)?))?;
            Ok(EXIT_OK)
        }
    }
}

fn decompose(sub: SimplicialGraph, mode: JsjMode) -> Result<(jsj::GraphOfGroups, Vec<CheckResult>), Error> {
    match mode {
        JsjMode::Relative => {
            let (gog, choices) = jsj::relative_jsj_traced(&sub)?;
            let mut checks = jsj::validate(&gog);
            checks.extend(jsj::separator_checks(&sub, &choices));
            Ok((gog, checks))
        }
        JsjMode::Abelian => {
            let gog = jsj::abelian_jsj(&sub)?;
            let checks = jsj::validate(&gog);
            Ok((gog, checks))
        }
    }
}

fn mode_name(mode: JsjMode) -> &'static str {
    match mode {
        JsjMode::Relative => "relative",
        JsjMode::Abelian => "abelian",
    }
}

fn to_json<T: Serialize>(value: &T) -> String {
    let mut text = serde_json::to_string_pretty(value).expect("output serialization cannot fail");
    text.push('\n');
    text
}

#[derive(Debug, Serialize)]
pub struct AnalyzeOutput {
    pub vertices: Vec<String>,
    /// Connected components: the free factors.
    pub components: Vec<Vec<String>>,
    /// Complement components: the direct factors.
    pub join_factors: Vec<Vec<String>>,
    pub is_join: bool,
    pub is_complete: bool,
    /// Minimal clique separators of each component, sorted by size then name.
    pub clique_separators: Vec<Vec<String>>,
    /// Only defined for connected graphs.
    pub minimum_separator: Option<Vec<String>>,
    pub hanging_vertices: Vec<String>,
}

pub fn analyze(g: &SimplicialGraph) -> AnalyzeOutput {
    let names = |sets: &[VertexSet]| sets.iter().map(|s| g.set_names(s)).collect::<Vec<_>>();
    let components = g.connected_components();
    let mut separators: Vec<VertexSet> =
        components.iter().flat_map(|c| g.clique_separators_within(c)).collect();
    separators.sort_by(|a, b| a.size_lex_key().cmp(&b.size_lex_key()));
    let minimum_separator = if components.len() <= 1 { separators.first().map(|s| g.set_names(s)) } else { None };
    let join_factors = g.join_factors();
    AnalyzeOutput {
        vertices: g.names().to_vec(),
        components: names(&components),
        is_join: join_factors.len() >= 2,
        join_factors: names(&join_factors),
        is_complete: g.is_complete(),
        clique_separators: names(&separators),
        minimum_separator,
        hanging_vertices: g.set_names(&g.hanging_vertices()),
    }
}

#[derive(Debug, Serialize)]
struct ComponentOutput<'a> {
    vertices: Vec<&'a str>,
    decomposition: GraphOfGroupsJson<'a>,
    #[serde(skip_serializing_if = "Option::is_none")]
    validation: Option<&'a [CheckResult]>,
}

#[derive(Debug, Serialize)]
struct JsjOutput<'a> {
    mode: &'static str,
    valid: bool,
    components: Vec<ComponentOutput<'a>>,
}

#[derive(Debug, Serialize)]
pub struct FactorOutput {
    pub support: Vec<String>,
    pub root: String,
    pub exponent: u64,
}

#[derive(Debug, Serialize)]
#[serde(tag = "op", rename_all = "lowercase")]
pub enum ElementOutput {
    Nf {
        word: String,
        normal_form: String,
        length: usize,
    },
    Support {
        word: String,
        support: Vec<String>,
    },
    Cyclic {
        word: String,
        reduced: String,
        conjugator: String,
    },
    Centralizer {
        word: String,
        mode: &'static str,
        lower_bound: bool,
        conjugator: String,
        reduced: String,
        factors: Vec<FactorOutput>,
        link: Vec<String>,
    },
}

pub fn element(
    g: &SimplicialGraph,
    w: &Word<'_>,
    op: ElementOp,
    mode: ModeFlag,
    root_cap: usize,
) -> Result<ElementOutput, Error> {
    let word = w.to_string();
    Ok(match op {
        ElementOp::Nf => {
            let nf = w.normal_form();
            ElementOutput::Nf { word, length: nf.len(), normal_form: nf.to_string() }
        }
        ElementOp::Support => ElementOutput::Support { word, support: g.set_names(&w.support()) },
        ElementOp::Cyclic => {
            let cr = w.cyclically_reduce();
            ElementOutput::Cyclic { word, reduced: cr.reduced.to_string(), conjugator: cr.conjugator.to_string() }
        }
        ElementOp::Centralizer => {
            let mode = match mode {
                ModeFlag::ProP => CentralizerMode::ProP,
                ModeFlag::ProC => CentralizerMode::ProC,
            };
            let d = w.centralizer_descriptor_with_cap(mode, root_cap)?;
            ElementOutput::Centralizer {
                word,
                mode: d.mode.as_str(),
                lower_bound: d.lower_bound(),
                conjugator: d.conjugator.to_string(),
                reduced: d.reduced.to_string(),
                factors: d
                    .factors
                    .iter()
                    .map(|f| FactorOutput {
                        support: g.set_names(&f.support),
                        root: f.root.to_string(),
                        exponent: f.exponent,
                    })
                    .collect(),
                link: g.set_names(&d.link_part),
            }
        }
    })
}
