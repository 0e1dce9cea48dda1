mod output;

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::Context;
use clap::{ArgGroup, Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use richwords::closure::{left_closure, proper_closure, right_closure};
use richwords::defect::{self, TableConfig};
use richwords::enumeration::{self, EnumConfig};
use richwords::experiments;
use richwords::extension::{self, Side};
use richwords::grid2d::{self, Grid2D, VerdictKind};
use richwords::richness::{defect as word_defect, is_rich, lpp, lps, palindrome_count};
use richwords::stream::{RichStream, StreamMode};
use richwords::sturmian;
use richwords::{Alphabet, LetterSet, Word};

use output::Output;

#[derive(Parser)]
#[command(
    name = "richwords",
    version,
    about = "Rich words, palindromic defect, rich extensions and rich grids"
)]
struct Cli {
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,
    /// Worker threads for parallel commands (default: all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum SideArg {
    Right,
    Left,
}

#[derive(Subcommand)]
enum Command {
    /// Richness, palindrome count, defect, lps and lpp.
    Check(WordArgs),
    /// Defect, and with --infinite a certified bracket on the infinite defect.
    Defect(DefectArgs),
    /// Rich extensions of a word.
    Extend(ExtendArgs),
    /// Right, left and proper palindromic closures.
    Closures(WordArgs),
    /// Whether two rich words can occur in one rich word.
    Join(JoinArgs),
    /// Balance and rich double extension of a binary word.
    Sturmian(WordArgs),
    /// Exact counts of rich words, optionally with bound series.
    Enumerate(EnumerateArgs),
    /// Non-rich words all of whose proper factors are rich.
    MinimalNonrich(MinimalArgs),
    /// Exhaustive binary defect tables.
    Tables(TablesArgs),
    /// Two-dimensional grids read from files.
    Grid {
        #[command(subcommand)]
        command: GridCommand,
    },
    /// Data-gathering scans on open questions.
    Experiment {
        #[command(subcommand)]
        command: ExperimentCommand,
    },
}

#[derive(Args)]
struct WordArgs {
    word: String,
    /// Alphabet size; inferred from the largest digit when absent.
    #[arg(long)]
    alphabet: Option<usize>,
}

#[derive(Args)]
struct DefectArgs {
    #[command(flatten)]
    word: WordArgs,
    #[arg(long)]
    infinite: bool,
    /// Context length of the lower bound.
    #[arg(long, default_value_t = 3)]
    depth: usize,
}

#[derive(Args)]
#[command(group(ArgGroup::new("mode").args(["letters", "chain", "search", "witness", "periodic", "aperiodic", "closure_count"])))]
struct ExtendArgs {
    #[command(flatten)]
    word: WordArgs,
    /// Letters extending richly on one side (the default mode).
    #[arg(long)]
    letters: bool,
    /// Letters forced while only one letter extends richly.
    #[arg(long)]
    chain: bool,
    /// Shortest u with wu extending richly in --ways ways.
    #[arg(long)]
    search: bool,
    /// Constructive u with wu extending richly in two ways.
    #[arg(long)]
    witness: bool,
    /// Period and tail of a periodic rich extension.
    #[arg(long)]
    periodic: bool,
    /// Prefix of this length of an aperiodic rich extension.
    #[arg(long, value_name = "LEN")]
    aperiodic: Option<usize>,
    /// Right extension counts of w and of its left closure.
    #[arg(long)]
    closure_count: bool,
    #[arg(long, value_enum, default_value_t = SideArg::Right)]
    side: SideArg,
    #[arg(long, default_value_t = 2)]
    ways: usize,
    /// Search depth; defaults to 2|w|.
    #[arg(long)]
    depth: Option<usize>,
}

#[derive(Args)]
struct JoinArgs {
    u: String,
    v: String,
    /// Also search for a joining word with at most this many letters between.
    #[arg(long)]
    search_gap: Option<usize>,
}

#[derive(Args)]
struct EnumerateArgs {
    #[arg(long, default_value_t = 2)]
    alphabet: usize,
    #[arg(long)]
    max_n: usize,
    /// Add the upper and lower bound series.
    #[arg(long)]
    bounds: bool,
    /// Write the series as CSV.
    #[arg(long, value_name = "PATH")]
    csv: Option<PathBuf>,
    /// Largest allowed node estimate.
    #[arg(long, default_value_t = enumeration::DEFAULT_BUDGET)]
    budget: u64,
}

#[derive(Args)]
struct MinimalArgs {
    #[arg(long, default_value_t = 2)]
    alphabet: usize,
    #[arg(long)]
    n: usize,
    /// List non-rich words whose suffix one letter shorter is rich instead.
    #[arg(long)]
    rich_suffix: bool,
    #[arg(long, default_value_t = enumeration::DEFAULT_BUDGET)]
    budget: u64,
}

#[derive(Args)]
struct TablesArgs {
    #[arg(long)]
    max_n: usize,
    #[arg(long, default_value_t = 3)]
    depth: usize,
    /// Largest accepted --max-n.
    #[arg(long, default_value_t = defect::DEFAULT_TABLE_LIMIT)]
    limit: usize,
    #[arg(long, value_name = "PATH")]
    csv: Option<PathBuf>,
}

#[derive(Subcommand)]
enum GridCommand {
    /// Whether every row and column run is rich.
    Check { file: PathBuf },
    /// Search for a rich filling of the box inflated by --margin.
    Extend {
        file: PathBuf,
        #[arg(long, default_value_t = 3)]
        margin: usize,
        #[arg(long, default_value_t = 1_000_000)]
        budget: u64,
    },
    /// Repeat a full rectangle --reps times in both directions.
    Tile {
        file: PathBuf,
        #[arg(long)]
        reps: usize,
        #[arg(long, default_value_t = grid2d::DEFAULT_STRONG_POWER)]
        power: usize,
    },
}

#[derive(Subcommand)]
enum ExperimentCommand {
    /// Longest shortest two-way extension per word length.
    TwoWay {
        #[arg(long, default_value_t = 2)]
        alphabet: usize,
        #[arg(long)]
        max_n: usize,
    },
    /// Pairs passing the join condition with no join found.
    Join {
        #[arg(long, default_value_t = 2)]
        alphabet: usize,
        #[arg(long)]
        len: usize,
        #[arg(long, default_value_t = 6)]
        gap: usize,
    },
}

fn parse_word(args: &WordArgs) -> anyhow::Result<Word> {
    parse_in(&args.word, args.alphabet)
}

fn parse_in(s: &str, alphabet: Option<usize>) -> anyhow::Result<Word> {
    let w: Word = s.parse().with_context(|| format!("invalid word {s:?}"))?;
    if let Some(k) = alphabet {
        Alphabet::new(k)?
            .check(&w)
            .with_context(|| format!("invalid word {s:?}"))?;
    }
    Ok(w)
}

fn alphabet_for(w: &Word, declared: Option<usize>) -> anyhow::Result<Alphabet> {
    Ok(match declared {
        Some(k) => Alphabet::new(k)?,
        None => Alphabet::inferred(w),
    })
}

fn word(w: &Word) -> Value {
    w.to_string().into()
}

fn letters(s: LetterSet) -> Value {
    s.iter().map(|a| a as u64).collect::<Vec<_>>().into()
}

fn read_grid(path: &Path) -> anyhow::Result<Grid2D> {
    let text =
        fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))?;
    Grid2D::parse(&text, None).with_context(|| format!("invalid grid in {}", path.display()))
}

fn write_file(
    path: &Path,
    f: impl FnOnce(&mut Vec<u8>) -> richwords::Result<()>,
) -> anyhow::Result<()> {
    let mut buf = Vec::new();
    f(&mut buf)?;
    fs::write(path, buf).with_context(|| format!("cannot write {}", path.display()))
}

fn run(cmd: Command) -> anyhow::Result<Output> {
    Ok(match cmd {
        Command::Check(a) => {
            let w = parse_word(&a)?;
            let mut out = Output::new("check");
            let rich = is_rich(&w);
            out.line(vec![
                ("rich", rich.into()),
                ("palindromes", palindrome_count(&w).into()),
            ]);
            out.field("defect", word_defect(&w));
            out.line(vec![("lps", word(&lps(&w))), ("lpp", word(&lpp(&w)))]);
            out.failed = !rich;
            out
        }
        Command::Defect(a) => {
            let w = parse_word(&a.word)?;
            let mut out = Output::new("defect");
            out.field("defect", word_defect(&w));
            if a.infinite {
                let b = defect::bracket(&w, a.depth)?;
                let c = defect::upper_bound_closure(&w)?;
                out.line(vec![
                    ("lower", b.lower.into()),
                    ("upper", b.upper.into()),
                    ("exact", b.is_exact().into()),
                ]);
                out.line(vec![
                    ("witness", b.upper_witness.to_string().into()),
                    ("depth", b.search_depth.into()),
                ]);
                out.line(vec![
                    ("closure_right", c.via_right.into()),
                    ("closure_left", c.via_left.into()),
                    ("rich_edge", defect::upper_bound_rich_edge(&w)?.into()),
                    ("letter_power", defect::upper_bound_letter_power(&w)?.into()),
                ]);
            }
            out
        }
        Command::Extend(a) => extend(a)?,
        Command::Closures(a) => {
            let w = parse_word(&a)?;
            let mut out = Output::new("closures");
            out.field("right", word(&right_closure(&w)));
            out.field("left", word(&left_closure(&w)));
            out.field("proper", word(&proper_closure(&w)?));
            out
        }
        Command::Join(a) => {
            let (u, v) = (parse_in(&a.u, None)?, parse_in(&a.v, None)?);
            let mut out = Output::new("join");
            let necessary = extension::joinable_necessary(&u, &v)?;
            out.field("necessary", necessary);
            out.failed = !necessary;
            if let Some(gap) = a.search_gap {
                let found = extension::join_witness(&u, &v, gap)?;
                out.line(vec![
                    ("joined", found.is_some().into()),
                    ("witness", found.as_ref().map_or(Value::Null, word)),
                ]);
                out.failed = found.is_none();
            }
            out
        }
        Command::Sturmian(a) => {
            let w = parse_word(&a)?;
            let mut out = Output::new("sturmian");
            let balanced = sturmian::is_balanced(&w)?;
            out.field("balanced", balanced);
            if balanced {
                let d = sturmian::sturmian_double_extension(&w)?;
                out.line(vec![
                    ("rich", is_rich(&w).into()),
                    ("w0_rich", d.zero_rich.into()),
                    ("w1_rich", d.one_rich.into()),
                ]);
            } else {
                let v = sturmian::unbalance_witness(&w)?.expect("unbalanced words have a witness");
                out.field("witness", word(&v));
            }
            out.failed = !balanced;
            out
        }
        Command::Enumerate(a) => {
            let config = EnumConfig {
                budget: a.budget,
                ..EnumConfig::default()
            };
            let s = enumeration::count_series(a.alphabet, a.max_n, a.bounds, config)?;
            if let Some(path) = &a.csv {
                write_file(path, |buf| enumeration::write_series_csv(&s, buf))?;
            }
            let mut out = Output::new("enumerate");
            out.field("alphabet", a.alphabet);
            let with_bounds = !s.upper_ratio.is_empty();
            let rows = (0..s.len())
                .map(|n| {
                    let mut r: Vec<Value> = vec![n.into(), s.exact[n].into()];
                    if with_bounds {
                        r.push(
                            s.upper_count(n)
                                .map_or(Value::Null, |u| u.to_string().into()),
                        );
                        r.push(s.lower_recurrence[n].into());
                        r.push(s.upper_recurrence.get(n).map_or(Value::Null, |&v| v.into()));
                    }
                    r
                })
                .collect();
            let columns: &[&str] = if with_bounds {
                &[
                    "n",
                    "exact",
                    "upper_ratio_bound",
                    "lower_recurrence",
                    "upper_recurrence",
                ]
            } else {
                &["n", "exact"]
            };
            out.table("counts", columns, rows);
            if with_bounds && a.alphabet == 2 {
                let seeds = &s.exact[..s.exact.len().min(12)];
                let flagged: Vec<Value> =
                    enumeration::upper_bound_recurrence(a.max_n, seeds, &s.exact)
                        .into_iter()
                        .filter(|r| r.violated())
                        .map(|r| r.n.into())
                        .collect();
                out.field("recurrence_below_exact", flagged);
            }
            out
        }
        Command::MinimalNonrich(a) => {
            let config = EnumConfig {
                budget: a.budget,
                ..EnumConfig::default()
            };
            let words = if a.rich_suffix {
                enumeration::nonrich_with_rich_suffix(a.alphabet, a.n, config)?
            } else {
                enumeration::minimal_nonrich(a.alphabet, a.n, config)?
            };
            let mut out = Output::new("minimal-nonrich");
            out.field("count", words.len());
            out.field("words", words.iter().map(word).collect::<Vec<_>>());
            out
        }
        Command::Tables(a) => {
            let rows = defect::defect_tables(
                a.max_n,
                TableConfig {
                    context_depth: a.depth,
                    limit: a.limit,
                },
            )?;
            if let Some(path) = &a.csv {
                write_file(path, |buf| defect::write_tables_csv(&rows, buf))?;
            }
            let mut out = Output::new("tables");
            let table = rows
                .iter()
                .map(|r| {
                    vec![
                        r.n.into(),
                        r.d_max.into(),
                        r.dinf_upper_max.into(),
                        r.ddif_lower.into(),
                        word(&r.witness_d),
                        word(&r.witness_dinf),
                        word(&r.witness_ddif),
                    ]
                })
                .collect();
            out.table("rows", &defect::TABLE_HEADER, table);
            out
        }
        Command::Grid { command } => grid(command)?,
        Command::Experiment { command } => experiment(command)?,
    })
}

fn extend(a: ExtendArgs) -> anyhow::Result<Output> {
    let w = parse_word(&a.word)?;
    let mut out = Output::new("extend");
    if a.chain {
        let chain = extension::compulsory_chain(&w)?;
        out.field(
            "compulsory",
            chain.iter().map(|&x| x as u64).collect::<Vec<_>>(),
        );
    } else if a.search {
        let depth = a.depth.unwrap_or(2 * w.len());
        let r = extension::eventually_extendable_in(&w, a.ways, depth)?;
        out.line(vec![
            ("found", r.found.into()),
            ("ways", a.ways.into()),
            ("depth", r.depth_limit.into()),
        ]);
        if r.found {
            out.line(vec![
                ("u", word(&r.witness_u)),
                ("letters", letters(r.branch_letters)),
            ]);
        }
        out.field("nodes", r.nodes_explored);
        out.failed = !r.found;
    } else if a.witness {
        let t = extension::two_way_witness(&w)?;
        out.line(vec![
            ("u", word(&t.u)),
            ("u_length", t.u.len().into()),
            ("wu_length", (w.len() + t.u.len()).into()),
        ]);
        out.line(vec![
            ("letters", letters(t.letters)),
            ("power_letter", t.power_letter.into()),
            ("power", t.power.into()),
        ]);
    } else if a.periodic {
        let p = extension::periodic_rich_extension(&w)?;
        out.line(vec![("period", word(&p.period)), ("tail", word(&p.tail))]);
    } else if let Some(len) = a.aperiodic {
        let mut s = RichStream::aperiodic(&w)?;
        let prefix = s.prefix(len.max(w.len()))?;
        if let StreamMode::Aperiodic { letter } = s.mode() {
            out.field("letter", *letter);
        }
        out.field("prefix", word(&prefix));
    } else if a.closure_count {
        let c = extension::left_closure_preserves_extension_count(&w)?;
        out.line(vec![
            ("before", c.before.into()),
            ("after", c.after.into()),
            ("equal", (c.before == c.after).into()),
        ]);
    } else {
        let side = match a.side {
            SideArg::Right => Side::Right,
            SideArg::Left => Side::Left,
        };
        let alphabet = alphabet_for(&w, a.word.alphabet)?;
        out.field(
            "letters",
            letters(extension::rich_extension_letters(&w, side, alphabet)?),
        );
    }
    Ok(out)
}

fn grid(cmd: GridCommand) -> anyhow::Result<Output> {
    Ok(match cmd {
        GridCommand::Check { file } => {
            let g = read_grid(&file)?;
            let mut out = Output::new("grid-check");
            let bad = grid2d::first_nonrich_run(&g);
            out.field("rich", bad.is_none());
            if let Some(r) = &bad {
                out.line(vec![
                    ("run", r.direction.to_string().into()),
                    ("start", vec![r.start.0, r.start.1].into()),
                    ("word", word(&r.word)),
                ]);
            }
            out.failed = bad.is_some();
            out
        }
        GridCommand::Extend {
            file,
            margin,
            budget,
        } => {
            let g = read_grid(&file)?;
            let v = grid2d::extend_to_rich_plane(&g, margin, budget)?;
            let mut out = Output::new("grid-extend");
            out.line(vec![
                ("verdict", v.kind.to_string().into()),
                ("margin", v.margin.into()),
                ("nodes", v.nodes.into()),
            ]);
            if let Some(c) = &v.certificate {
                out.field("certificate", c.to_string());
            }
            if let Some(filled) = &v.witness {
                out.text("filling", filled.to_string());
            }
            out.failed = v.kind != VerdictKind::ExtendableToMargin;
            out
        }
        GridCommand::Tile { file, reps, power } => {
            let g = read_grid(&file)?;
            let t = grid2d::tile_rectangle(&g, reps, power)?;
            let mut out = Output::new("grid-tile");
            out.text("grid", t.to_string());
            out
        }
    })
}

fn experiment(cmd: ExperimentCommand) -> anyhow::Result<Output> {
    Ok(match cmd {
        ExperimentCommand::TwoWay { alphabet, max_n } => {
            let rows = experiments::two_way_profile(
                Alphabet::new(alphabet)?,
                max_n,
                EnumConfig::default(),
            )?;
            let mut out = Output::new("experiment-two-way");
            let table = rows
                .iter()
                .map(|r| {
                    vec![
                        r.n.into(),
                        r.words.into(),
                        r.max_shortest.into(),
                        r.max_constructed.into(),
                        word(&r.witness),
                    ]
                })
                .collect();
            out.table(
                "rows",
                &["n", "words", "max_shortest", "max_constructed", "witness"],
                table,
            );
            out
        }
        ExperimentCommand::Join { alphabet, len, gap } => {
            let s = experiments::join_sufficiency_scan(Alphabet::new(alphabet)?, len, gap)?;
            let mut out = Output::new("experiment-join");
            out.line(vec![
                ("pairs", s.pairs.into()),
                ("necessary_holds", s.necessary_holds.into()),
                ("joined", s.joined.into()),
            ]);
            let unresolved: Vec<Value> = s
                .unresolved
                .iter()
                .map(|(u, v)| json!([u.to_string(), v.to_string()]))
                .collect();
            out.field("unresolved", unresolved.len());
            out.table(
                "unresolved_pairs",
                &["u", "v"],
                unresolved
                    .iter()
                    .map(|p| p.as_array().unwrap().clone())
                    .collect(),
            );
            out
        }
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(n) = cli.threads {
        if n == 0 {
            eprintln!("error: --threads must be positive");
            return ExitCode::from(2);
        }
        if let Err(e) = rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
        {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    let format = cli.format;
    let out = match run(cli.command) {
        Ok(out) => out,
        Err(e) => {
            eprintln!("error: {e:#}");
            return ExitCode::from(2);
        }
    };
    let text = match format {
        Format::Text => out.render_text(),
        Format::Json => out.render_json(),
    };
    let mut stdout = std::io::stdout().lock();
    if stdout
        .write_all(text.as_bytes())
        .and_then(|_| stdout.flush())
        .is_err()
    {
        return ExitCode::from(2);
    }
    if out.failed {
        ExitCode::from(1)
    } else {
        ExitCode::SUCCESS
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use clap::CommandFactory;

    #[test]
    fn cli_definition_is_consistent() {
        Cli::command().debug_assert();
    }

    #[test]
    fn word_validation() {
        assert!(parse_in("0120", Some(2)).is_err());
        assert!(parse_in("01a", None).is_err());
        assert_eq!(parse_in("0110", Some(2)).unwrap().len(), 4);
    }

    #[test]
    fn text_and_json_agree() {
        let out = run(Command::Check(WordArgs {
            word: "0020102202".into(),
            alphabet: None,
        }))
        .unwrap();
        assert_eq!(
            out.render_text().lines().next(),
            Some("rich: true, palindromes: 11")
        );
        let j: Value = serde_json::from_str(&out.render_json()).unwrap();
        assert_eq!(j["schema_version"], 1);
        assert_eq!(j["palindromes"], 11);
        assert_eq!(j["rich"], true);
    }
}
