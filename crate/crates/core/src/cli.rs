//! Command-line front end. Parsing is done by clap; [`execute`] runs one
//! command and returns its standard output, so tests can drive it without
//! spawning a process.

use std::fs;
use std::path::PathBuf;
use std::sync::Arc;
use std::time::{Duration, Instant};

use clap::{Parser, Subcommand, ValueEnum};

use crate::error::{Error, Result};
use crate::freewords::{
    infer_alphabet, parse_exp_word, parse_word, Alphabet, GroupWord, Presentation,
};
use crate::lcs::nq::{nilpotent_quotient, NqOptions, DEFAULT_MAX_CLASS, DEFAULT_MAX_PC_GENS};
use crate::lcs::parafree::{build_gw, gw_alphabet, parafree_compare, verdict_table};
use crate::magnus_map::{
    expand, expand_rational_word, gamma_weight, residual_witness, WeightOutcome,
    DEFAULT_WITNESS_CAP,
};
use crate::whitehead::minimize;

pub const DEFAULT_CLASS: usize = 4;
pub const DEFAULT_MAX_TRUNC: usize = 16;
pub const MACHINE_HEADER: &str = "format=1";

pub const EXIT_OK: i32 = 0;
pub const EXIT_INTERNAL: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_RESOURCE: i32 = 3;
pub const EXIT_PRECONDITION: i32 = 4;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Human,
    Machine,
}

#[derive(Debug, Parser)]
#[command(name = "magnus", version, about = "Magnus embedding, lower central series and Whitehead tools")]
pub struct Cli {
    /// Output style; `machine` is line-oriented and stable.
    #[arg(long, value_enum, default_value = "human", global = true)]
    pub format: Format,

    /// Abort nilpotent quotient work after this many seconds.
    #[arg(long, global = true)]
    pub timeout_secs: Option<u64>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Magnus expansion of a word.
    Expand {
        word: String,
        /// Truncation degree; defaults to max(4, word length).
        #[arg(long)]
        trunc: Option<usize>,
        /// Comma-separated generator names; inferred from the word otherwise.
        #[arg(long)]
        gens: Option<String>,
    },
    /// Lower-central weight certificate, searching up to degree `--max`.
    Weight {
        word: String,
        #[arg(long)]
        max: usize,
        #[arg(long)]
        gens: Option<String>,
    },
    /// Escalating search for a nonvanishing component.
    Witness {
        word: String,
        #[arg(long, default_value_t = DEFAULT_WITNESS_CAP)]
        cap: usize,
        #[arg(long)]
        gens: Option<String>,
    },
    /// Lower central factors of a presented group.
    Nq {
        file: PathBuf,
        #[arg(long, default_value_t = DEFAULT_CLASS)]
        class: usize,
    },
    /// Compare lower central factors with a free group of rank `--rank`.
    Parafree {
        file: PathBuf,
        #[arg(long)]
        rank: usize,
        #[arg(long, default_value_t = DEFAULT_CLASS)]
        class: usize,
    },
    /// Whitehead minimization of a word.
    Whitehead {
        word: String,
        #[arg(long)]
        gens: Option<String>,
    },
    /// Expansion of a word with rational exponents such as `x1^1/2*x2`.
    DgroupExpand {
        word: String,
        #[arg(long, default_value_t = 4)]
        trunc: usize,
        #[arg(long)]
        gens: Option<String>,
    },
    /// Print the presentation of G_w over `s, t, a1..aq`.
    Gw {
        w: String,
        #[arg(long, default_value_t = 1)]
        q: usize,
    },
}

/// Resource caps, normally read from the environment.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Caps {
    pub max_class: usize,
    pub max_pc_gens: usize,
    pub max_trunc: usize,
}

impl Default for Caps {
    fn default() -> Self {
        Caps {
            max_class: DEFAULT_MAX_CLASS,
            max_pc_gens: DEFAULT_MAX_PC_GENS,
            max_trunc: DEFAULT_MAX_TRUNC,
        }
    }
}

impl Caps {
    /// Reads `MAGNUS_MAX_CLASS`, `MAGNUS_MAX_PC_GENS` and `MAGNUS_MAX_TRUNC`
    /// through `lookup`. Caps may only be raised above the defaults.
    pub fn from_lookup(lookup: impl Fn(&str) -> Option<String>) -> Result<Caps> {
        let base = Caps::default();
        let read = |key: &str, default: usize| -> Result<usize> {
            let Some(raw) = lookup(key) else {
                return Ok(default);
            };
            let v: usize = raw
                .trim()
                .parse()
                .map_err(|_| Error::Precondition(format!("{key}={raw} is not a number")))?;
            if v < default {
                return Err(Error::Precondition(format!(
                    "{key}={v} is below the default {default}"
                )));
            }
            Ok(v)
        };
        Ok(Caps {
            max_class: read("MAGNUS_MAX_CLASS", base.max_class)?,
            max_pc_gens: read("MAGNUS_MAX_PC_GENS", base.max_pc_gens)?,
            max_trunc: read("MAGNUS_MAX_TRUNC", base.max_trunc)?,
        })
    }

    pub fn from_env() -> Result<Caps> {
        Caps::from_lookup(|k| std::env::var(k).ok())
    }
}

pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::ResourceCap(_) => EXIT_RESOURCE,
        Error::Precondition(_) => EXIT_PRECONDITION,
        Error::Internal(_) => EXIT_INTERNAL,
        _ => EXIT_INPUT,
    }
}

fn alphabet_for(text: &str, gens: &Option<String>) -> Result<Arc<Alphabet>> {
    match gens {
        Some(list) => Alphabet::new(list.split(',').map(str::trim)),
        None => infer_alphabet(text),
    }
}

fn read_presentation(path: &PathBuf) -> Result<Presentation> {
    let text = fs::read_to_string(path)
        .map_err(|e| Error::syntax(0, format!("cannot read {}: {e}", path.display())))?;
    Presentation::parse(&text)
}

fn check_trunc(trunc: usize, caps: &Caps) -> Result<()> {
    if trunc == 0 {
        return Err(Error::Precondition("truncation must be positive".into()));
    }
    if trunc > caps.max_trunc {
        return Err(Error::ResourceCap(format!(
            "truncation {trunc} exceeds the cap {}",
            caps.max_trunc
        )));
    }
    Ok(())
}

fn nq_options(cli: &Cli, caps: &Caps) -> NqOptions {
    NqOptions {
        max_class: caps.max_class,
        max_pc_gens: caps.max_pc_gens,
        deadline: cli
            .timeout_secs
            .map(|s| Instant::now() + Duration::from_secs(s)),
    }
}

fn emit(format: Format, human: String, machine: Vec<String>) -> String {
    match format {
        Format::Human => human,
        Format::Machine => {
            let mut out = String::from(MACHINE_HEADER);
            out.push('\n');
            for line in machine {
                out += &line;
                out.push('\n');
            }
            out
        }
    }
}

/// Runs one parsed command and returns what it prints on standard output.
pub fn execute(cli: &Cli, caps: &Caps) -> Result<String> {
    let format = cli.format;
    match &cli.command {
        Command::Expand { word, trunc, gens } => {
            let alphabet = alphabet_for(word, gens)?;
            let w = parse_word(word, &alphabet)?;
            let trunc = trunc.unwrap_or_else(|| w.len().max(4));
            check_trunc(trunc, caps)?;
            let s = expand(&w, trunc)?;
            Ok(emit(
                format,
                format!("{s}\n"),
                vec![
                    "command=expand".into(),
                    format!("word={w}"),
                    format!("rank={} trunc={}", s.rank(), s.trunc()),
                    format!("series={s}"),
                ],
            ))
        }
        Command::Weight { word, max, gens } => {
            let alphabet = alphabet_for(word, gens)?;
            let w = parse_word(word, &alphabet)?;
            check_trunc(*max, caps)?;
            let report = match gamma_weight(&w, *max)? {
                WeightOutcome::Certified(cert) => format!("status=certified\n{cert}"),
                WeightOutcome::Indeterminate { truncation } => {
                    format!("status=indeterminate\nword={w}\ntrunc={truncation}\n")
                }
            };
            Ok(emit(format, report.clone(), machine_block("weight", &report)))
        }
        Command::Witness { word, cap, gens } => {
            let alphabet = alphabet_for(word, gens)?;
            let w = parse_word(word, &alphabet)?;
            check_trunc(*cap, caps)?;
            let report = format!("status=certified\n{}", residual_witness(&w, *cap)?);
            Ok(emit(format, report.clone(), machine_block("witness", &report)))
        }
        Command::Nq { file, class } => {
            let p = read_presentation(file)?;
            let nq = nilpotent_quotient(&p, *class, &nq_options(cli, caps))?;
            let mut human = format!("{:<6} {}\n", "layer", "group");
            let mut machine = vec!["command=nq".to_string(), format!("class={class}")];
            for (i, l) in nq.layers.iter().enumerate() {
                human += &format!("{:<6} {l}\n", i + 1);
                machine.push(format!(
                    "layer={} rank={} torsion={}",
                    i + 1,
                    l.free_rank,
                    l.torsion_list()
                ));
            }
            Ok(emit(format, human, machine))
        }
        Command::Parafree { file, rank, class } => {
            let p = read_presentation(file)?;
            let verdicts = parafree_compare(&p, *rank, *class, &nq_options(cli, caps))?;
            let mut machine = vec![
                "command=parafree".to_string(),
                format!("reference_rank={rank} class={class}"),
            ];
            machine.extend(verdicts.iter().map(|v| v.machine_line()));
            Ok(emit(format, verdict_table(&verdicts), machine))
        }
        Command::Whitehead { word, gens } => {
            let alphabet = alphabet_for(word, gens)?;
            let w = parse_word(word, &alphabet)?;
            let m = minimize(&w)?;
            let summary = format!(
                "minimal_length={} primitive={}",
                m.minimal.len(),
                m.minimal.len() == 1
            );
            let steps: Vec<String> = m.path.iter().map(|a| a.describe(&alphabet)).collect();
            let mut human = format!("minimal={}\n{summary}\n", m.minimal);
            for (i, s) in steps.iter().enumerate() {
                human += &format!("step {}: {s}\n", i + 1);
            }
            let mut machine = vec![
                "command=whitehead".to_string(),
                format!("word={w}"),
                format!("minimal={}", m.minimal),
                summary,
                format!("path_length={}", steps.len()),
            ];
            machine.extend(
                steps
                    .iter()
                    .enumerate()
                    .map(|(i, s)| format!("step={} auto={s}", i + 1)),
            );
            Ok(emit(format, human, machine))
        }
        Command::DgroupExpand { word, trunc, gens } => {
            let alphabet = alphabet_for(word, gens)?;
            let w = parse_exp_word(word, &alphabet)?;
            check_trunc(*trunc, caps)?;
            let s = expand_rational_word(&w, *trunc)?;
            Ok(emit(
                format,
                format!("{s}\n"),
                vec![
                    "command=dgroup-expand".into(),
                    format!("word={w}"),
                    format!("rank={} trunc={}", s.rank(), s.trunc()),
                    format!("series={s}"),
                ],
            ))
        }
        Command::Gw { w, q } => {
            let alphabet = gw_alphabet(*q);
            let w: GroupWord = parse_word(w, &alphabet)?;
            let p = build_gw(*q, &w)?;
            let text = p.to_string();
            let machine = std::iter::once("command=gw".to_string())
                .chain(text.lines().map(str::to_string))
                .collect();
            Ok(emit(format, text, machine))
        }
    }
}

fn machine_block(command: &str, report: &str) -> Vec<String> {
    std::iter::once(format!("command={command}"))
        .chain(report.lines().map(str::to_string))
        .collect()
}

/// Parses `args` (including the program name), runs the command, and
/// returns `(exit code, stdout, stderr)`.
pub fn run<I, T>(args: I, caps: Result<Caps>) -> (i32, String, String)
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            let text = e.render().to_string();
            return if code == EXIT_OK {
                (code, text, String::new())
            } else {
                (code, String::new(), text)
            };
        }
    };
    let result = caps.and_then(|caps| execute(&cli, &caps));
    match result {
        Ok(out) => (EXIT_OK, out, String::new()),
        Err(e) => (exit_code(&e), String::new(), format!("error: {e}\n")),
    }
}
