//! `perfrating`: performance ratings from the command line.
//!
//! Exit codes: 0 success, 1 usage error, 2 domain or input error, 3 a
//! `tables --check` mismatch.

use std::fs::{self, File};
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use perfrating::figures::{write_figures, DEFAULT_NMAX, DEFAULT_RA};
use perfrating::ingest::{extract_streaks, group_records, parse_games, GameRecord, GroupBy};
use perfrating::report::{rank_slices, render_row, render_rows, Format, ReportRow};
use perfrating::systems::DEFAULT_THRESHOLD;
use perfrating::tables::{self, TableError};
use perfrating::{estimated_performance_rating, Objective, PerformanceQuery, RootSide, ScoreLine};

#[derive(Parser, Debug)]
#[command(name = "perfrating", version)]
#[command(about = "Tournament, FIDE, and estimated performance ratings")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Rate a single score against an opponent average
    Rate(RateArgs),
    /// One report row per player or player/event group of a game file
    Batch(BatchArgs),
    /// One report row per maximal win streak in a game file
    Streaks(StreakArgs),
    /// Write plot data for TPR vs PR^e and the peak score probability
    Figures(FigureArgs),
    /// Recompute the reference tables
    Tables(TableArgs),
}

#[derive(Args, Debug)]
struct Model {
    /// Probability cap t in (0, 1)
    #[arg(long, default_value_t = DEFAULT_THRESHOLD)]
    threshold: f64,

    #[arg(long, value_enum, default_value_t = ObjectiveArg::Exact)]
    objective: ObjectiveArg,

    #[arg(long, value_enum, default_value_t = FormatArg::Table)]
    format: FormatArg,
}

#[derive(Args, Debug)]
struct RateArgs {
    /// Average opponent rating
    #[arg(long, allow_negative_numbers = true)]
    ra: f64,

    /// Points scored, a multiple of 0.5
    #[arg(long)]
    score: f64,

    #[arg(long)]
    games: u32,

    /// Root to take when the cap binds on both sides of an interior peak
    #[arg(long, value_enum)]
    side: Option<SideArg>,

    #[command(flatten)]
    model: Model,
}

#[derive(Args, Debug)]
struct BatchArgs {
    #[arg(long)]
    input: PathBuf,

    #[arg(long, value_enum, default_value_t = GroupArg::PlayerEvent)]
    group_by: GroupArg,

    #[arg(long)]
    output: Option<PathBuf>,

    #[command(flatten)]
    model: Model,
}

#[derive(Args, Debug)]
struct StreakArgs {
    #[arg(long)]
    input: PathBuf,

    #[arg(long)]
    min_len: usize,

    #[arg(long)]
    output: Option<PathBuf>,

    #[command(flatten)]
    model: Model,
}

#[derive(Args, Debug)]
struct FigureArgs {
    #[arg(long)]
    out: PathBuf,

    #[arg(long, default_value_t = DEFAULT_RA, allow_negative_numbers = true)]
    ra: f64,

    #[arg(long, default_value_t = DEFAULT_NMAX)]
    nmax: u32,
}

#[derive(Args, Debug)]
struct TableArgs {
    /// 1 to 6, or all
    #[arg(long, value_parser = parse_which)]
    which: Which,

    /// Directory holding the fixture CSV files
    #[arg(long)]
    data: Option<PathBuf>,

    /// Compare against the reference values; exit 3 on a mismatch
    #[arg(long)]
    check: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum ObjectiveArg {
    Exact,
    AtLeast,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum FormatArg {
    Json,
    Csv,
    Table,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum SideArg {
    Lower,
    Upper,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum GroupArg {
    #[value(name = "player,event")]
    PlayerEvent,
    Player,
}

#[derive(Clone, Debug)]
enum Which {
    All,
    One(u8),
}

fn parse_which(s: &str) -> Result<Which, String> {
    match s {
        "all" => Ok(Which::All),
        _ => match s.parse::<u8>() {
            Ok(n @ 1..=6) => Ok(Which::One(n)),
            _ => Err(format!("expected 1 to 6 or all, got {s:?}")),
        },
    }
}

impl From<ObjectiveArg> for Objective {
    fn from(o: ObjectiveArg) -> Self {
        match o {
            ObjectiveArg::Exact => Objective::ExactScore,
            ObjectiveArg::AtLeast => Objective::AtLeast,
        }
    }
}

impl From<FormatArg> for Format {
    fn from(f: FormatArg) -> Self {
        match f {
            FormatArg::Json => Format::Json,
            FormatArg::Csv => Format::Csv,
            FormatArg::Table => Format::Table,
        }
    }
}

#[derive(Debug)]
enum Failure {
    Usage(String),
    Domain(String),
    Mismatch(usize),
}

impl Failure {
    fn exit_code(&self) -> u8 {
        match self {
            Failure::Usage(_) => 1,
            Failure::Domain(_) => 2,
            Failure::Mismatch(_) => 3,
        }
    }
}

impl From<perfrating::Error> for Failure {
    fn from(e: perfrating::Error) -> Self {
        Failure::Domain(e.to_string())
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Domain(e.to_string())
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(failure) => {
            match &failure {
                Failure::Usage(msg) => eprintln!("usage error: {msg}"),
                Failure::Domain(msg) => eprintln!("error: {msg}"),
                Failure::Mismatch(n) => eprintln!("check failed: {n} value(s) outside tolerance"),
            }
            ExitCode::from(failure.exit_code())
        }
    }
}

fn run(command: Command) -> Result<(), Failure> {
    match command {
        Command::Rate(args) => rate(args),
        Command::Batch(args) => batch(args),
        Command::Streaks(args) => streaks(args),
        Command::Figures(args) => {
            write_figures(&args.out, args.ra, args.nmax)
                .map_err(|e| Failure::Domain(format!("{}: {e}", args.out.display())))?;
            Ok(())
        }
        Command::Tables(args) => reference_tables(args),
    }
}

fn rate(args: RateArgs) -> Result<(), Failure> {
    let score = ScoreLine::new(args.score, args.games)?;
    let mut q = PerformanceQuery::new(args.ra, score)
        .with_threshold(args.model.threshold)
        .with_objective(args.model.objective.into());
    if let Some(side) = args.side {
        q = q.with_side(match side {
            SideArg::Lower => RootSide::Lower,
            SideArg::Upper => RootSide::Upper,
        });
    }
    let report = estimated_performance_rating(&q)?;
    let row = ReportRow::new(None, None, &report);
    emit(&render_row(&row, args.model.format.into()), None)
}

fn read_games(path: &Path) -> Result<Vec<GameRecord>, Failure> {
    let f = File::open(path).map_err(|e| Failure::Domain(format!("{}: {e}", path.display())))?;
    parse_games(f).map_err(|e| Failure::Domain(format!("{}: {e}", path.display())))
}

fn batch(args: BatchArgs) -> Result<(), Failure> {
    let records = read_games(&args.input)?;
    let by = match args.group_by {
        GroupArg::Player => GroupBy::Player,
        GroupArg::PlayerEvent => GroupBy::PlayerEvent,
    };
    let slices = group_records(&records, by);
    let rows = rank_slices(&slices, args.model.threshold, args.model.objective.into())?;
    emit(&render_rows(&rows, args.model.format.into()), args.output.as_deref())
}

fn streaks(args: StreakArgs) -> Result<(), Failure> {
    let mut records = read_games(&args.input)?;
    records.sort_by(|a, b| (&a.player, a.sequence).cmp(&(&b.player, b.sequence)));
    let slices = extract_streaks(&records, args.min_len)?;
    let rows = rank_slices(&slices, args.model.threshold, args.model.objective.into())?;
    emit(&render_rows(&rows, args.model.format.into()), args.output.as_deref())
}

fn reference_tables(args: TableArgs) -> Result<(), Failure> {
    let numbers: Vec<u8> = match args.which {
        Which::All => tables::ALL_TABLES.to_vec(),
        Which::One(n) => vec![n],
    };
    let mut out = String::new();
    let mut failed = 0;
    for n in numbers {
        let table = tables::render(n, args.data.as_deref()).map_err(|e| match e {
            TableError::MissingData { .. } | TableError::UnknownTable(_) => Failure::Usage(e.to_string()),
            other => Failure::Domain(other.to_string()),
        })?;
        out.push_str(&format!("Table {}: {}\n\n{}\n", table.number, table.title, table.body));
        if args.check {
            for c in &table.checks {
                out.push_str(&format!("{c}\n"));
            }
            out.push('\n');
            failed += table.checks.iter().filter(|c| !c.passed()).count();
        }
    }
    emit(&out, None)?;
    if failed > 0 {
        return Err(Failure::Mismatch(failed));
    }
    Ok(())
}

fn emit(text: &str, output: Option<&Path>) -> Result<(), Failure> {
    match output {
        Some(path) => fs::write(path, text).map_err(|e| Failure::Domain(format!("{}: {e}", path.display()))),
        None => {
            let mut stdout = io::stdout().lock();
            stdout.write_all(text.as_bytes())?;
            Ok(())
        }
    }
}
