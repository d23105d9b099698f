use std::fs;
use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use tabstab::enumerate::{entries_hash, verify_with_records, EnumerationConfig};
use tabstab::greene::{ell_k, ell_multi, rsk, rsk_shape};
use tabstab::jdt::rectify;
use tabstab::lemmas::{check_lemma, Lemma, LemmaConfig};
use tabstab::perm::{perm_records, q_class_check};
use tabstab::stab::{stab, stab_report};
use tabstab::{Error, SkewTableau, Word};

const SCHEMA: &str = "tabstab/1";

#[derive(Parser)]
#[command(
    name = "tabstab",
    version,
    about = "Stabilization of skew tableaux under jeu de taquin"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Rectify a skew tableau read from FILE (or `-` for stdin).
    Rect {
        file: PathBuf,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Compute the stabilization index of a tableau.
    Stab {
        file: PathBuf,
        /// Report verdicts for every k up to this value instead of stopping
        /// at the first stabilizing k.
        #[arg(long)]
        k_max: Option<usize>,
    },
    /// Greene invariants. Words are space-separated integers; separate
    /// several words with `/`. Reads stdin, one word per line, when no word
    /// is given.
    Greene {
        #[arg(allow_hyphen_values = true)]
        letters: Vec<String>,
        #[arg(long)]
        k: Option<usize>,
        /// Also print a witness family.
        #[arg(long)]
        witness: bool,
        /// Use the exact search even for a single word.
        #[arg(long)]
        oracle: bool,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Randomized check of one of the path or word inequalities.
    LemmaCheck {
        #[arg(long)]
        lemma: String,
        #[arg(long, default_value_t = 1000)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 12)]
        max_letters: usize,
        /// Size of the random tableaux behind the path matrices.
        #[arg(long, default_value_t = 6)]
        max_n: usize,
    },
    /// Exhaustively check stab(T) <= r over small skew tableaux.
    Enumerate {
        #[arg(long, default_value_t = 8)]
        max_n: usize,
        #[arg(long, default_value_t = 4)]
        max_rows: usize,
        #[arg(long, default_value_t = 4)]
        max_inner: usize,
        #[arg(long)]
        jobs: Option<usize>,
        /// Write one row per tableau to this CSV file.
        #[arg(long)]
        csv: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Tabulate stab(w) over all permutations of size n.
    PermStats {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        csv: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
}

enum Failure {
    Input(String),
    Violation(String),
    Resource(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Input(_) => 1,
            Failure::Violation(_) => 2,
            Failure::Resource(_) => 3,
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::OracleCap { .. } | Error::Resource(_) => Failure::Resource(e.to_string()),
            // Running out of k means the bound was exceeded.
            Error::StabCap { .. } => Failure::Violation(e.to_string()),
            _ => Failure::Input(e.to_string()),
        }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Input(e.to_string())
    }
}

impl From<csv::Error> for Failure {
    fn from(e: csv::Error) -> Self {
        Failure::Input(e.to_string())
    }
}

type Run = Result<(), Failure>;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            let (Failure::Input(m) | Failure::Violation(m) | Failure::Resource(m)) = &f;
            eprintln!("tabstab: {m}");
            ExitCode::from(f.code())
        }
    }
}

fn run(cmd: Command) -> Run {
    match cmd {
        Command::Rect { file, format } => cmd_rect(&file, format),
        Command::Stab { file, k_max } => cmd_stab(&file, k_max),
        Command::Greene {
            letters,
            k,
            witness,
            oracle,
            format,
        } => cmd_greene(&letters, k, witness, oracle, format),
        Command::LemmaCheck {
            lemma,
            trials,
            seed,
            max_letters,
            max_n,
        } => cmd_lemma(&lemma, trials, seed, max_letters, max_n),
        Command::Enumerate {
            max_n,
            max_rows,
            max_inner,
            jobs,
            csv,
            format,
        } => {
            let cfg = EnumerationConfig {
                max_n,
                max_rows,
                max_inner,
            };
            with_jobs(jobs, || cmd_enumerate(&cfg, csv.as_deref(), format))
        }
        Command::PermStats { n, csv, format } => cmd_perm(n, csv.as_deref(), format),
    }
}

fn with_jobs(jobs: Option<usize>, f: impl FnOnce() -> Run + Send) -> Run {
    match jobs {
        None => f(),
        Some(0) => Err(Failure::Input("--jobs must be positive".into())),
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build()
            .map_err(|e| Failure::Resource(e.to_string()))?
            .install(f),
    }
}

fn read_input(path: &Path) -> Result<String, Failure> {
    if path.as_os_str() == "-" {
        let mut s = String::new();
        io::stdin().read_to_string(&mut s)?;
        Ok(s)
    } else {
        fs::read_to_string(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
    }
}

/// Reads a tableau in the text format, or as JSON when the input starts
/// with `{`.
fn read_tableau(path: &Path) -> Result<SkewTableau, Failure> {
    let s = read_input(path)?;
    if s.trim_start().starts_with('{') {
        serde_json::from_str(&s).map_err(|e| Failure::Input(e.to_string()))
    } else {
        Ok(s.parse()?)
    }
}

fn emit_json(v: &impl Serialize) -> Run {
    let mut out = io::stdout().lock();
    serde_json::to_writer_pretty(&mut out, v).map_err(|e| Failure::Input(e.to_string()))?;
    writeln!(out)?;
    Ok(())
}

fn cmd_rect(file: &Path, format: Format) -> Run {
    let t = read_tableau(file)?;
    let rect = rectify(&t);
    match format {
        Format::Text => print!("{}", rect.tableau().to_text()),
        Format::Json => {
            let provenance: Vec<Value> = (1..=t.n() as u32)
                .map(|e| json!({ "entry": e, "origin_row": rect.origin_row_of(e), "row": rect.row_of(e) }))
                .collect();
            emit_json(&json!({
                "schema": SCHEMA,
                "input": t,
                "rectified": rect.tableau(),
                "shape": rect.shape(),
                "text": rect.tableau().to_text(),
                "provenance": provenance,
            }))?;
        }
    }
    Ok(())
}

fn cmd_stab(file: &Path, k_max: Option<usize>) -> Run {
    let t = read_tableau(file)?;
    let report = match k_max {
        Some(k) => stab_report(&t, k)?,
        None => stab(&t)?,
    };
    emit_json(&json!({
        "schema": SCHEMA,
        "tableau": report.tableau,
        "rows": report.rows,
        "stab": report.stab,
        "verdicts": report.verdicts,
        "shapes": report.shapes,
        "within_bound": report.within_bound,
    }))?;
    if !report.within_bound {
        return Err(Failure::Violation(format!(
            "stab = {} exceeds the number of rows {}",
            report.stab, report.rows
        )));
    }
    Ok(())
}

fn parse_words(tokens: &[String]) -> Result<Vec<Word>, Failure> {
    let text = if tokens.is_empty() {
        let mut s = String::new();
        io::stdin().read_to_string(&mut s)?;
        s.lines()
            .filter(|l| !l.trim().is_empty())
            .collect::<Vec<_>>()
            .join(" / ")
    } else {
        tokens.join(" ")
    };
    Ok(text
        .split('/')
        .map(|w| w.trim().parse::<Word>())
        .collect::<Result<_, _>>()?)
}

fn cmd_greene(
    tokens: &[String],
    k: Option<usize>,
    witness: bool,
    oracle: bool,
    format: Format,
) -> Run {
    let words = parse_words(tokens)?;
    if k == Some(0) {
        return Err(Error::ZeroK.into());
    }
    let (value, family, shape) = if words.len() == 1 {
        let w = &words[0];
        let k = k.unwrap_or(1);
        if oracle || witness {
            let res = ell_multi(&vec![w.clone(); k])?;
            if !oracle && res.value != ell_k(w, k) {
                return Err(Failure::Violation(format!(
                    "RSK gives {} but the exact search gives {}",
                    ell_k(w, k),
                    res.value
                )));
            }
            (res.value, Some(res.witness), Some(rsk_shape(w)))
        } else {
            (ell_k(w, k), None, Some(rsk_shape(w)))
        }
    } else {
        if k.is_some() {
            return Err(Failure::Input("--k applies to a single word".into()));
        }
        let res = ell_multi(&words)?;
        (res.value, Some(res.witness), None)
    };
    match format {
        Format::Text => {
            println!("{value}");
            if witness {
                for s in family.iter().flat_map(|f| &f.sequences) {
                    println!("{s}");
                }
            }
        }
        Format::Json => {
            let insertion = (words.len() == 1).then(|| rsk(&words[0]).0);
            emit_json(&json!({
                "schema": SCHEMA,
                "words": words.iter().map(|w| w.to_string()).collect::<Vec<_>>(),
                "k": k,
                "value": value,
                "shape": shape,
                "insertion": insertion,
                "witness": if witness { family.map(|f| f.sequences.iter().map(|s| s.to_string()).collect::<Vec<_>>()) } else { None },
            }))?;
        }
    }
    Ok(())
}

fn cmd_lemma(name: &str, trials: usize, seed: u64, max_letters: usize, max_n: usize) -> Run {
    let lemmas: Vec<Lemma> = if name == "all" {
        Lemma::ALL.to_vec()
    } else {
        vec![name.parse()?]
    };
    let cfg = LemmaConfig {
        trials,
        seed,
        max_letters,
        max_n,
    };
    let reports = lemmas
        .into_iter()
        .map(|l| check_lemma(l, &cfg))
        .collect::<Result<Vec<_>, _>>()?;
    let failed: Vec<String> = reports
        .iter()
        .filter(|r| !r.holds())
        .map(|r| r.lemma.to_string())
        .collect();
    let body = if reports.len() == 1 {
        json!({ "schema": SCHEMA, "report": reports[0] })
    } else {
        json!({ "schema": SCHEMA, "reports": reports })
    };
    emit_json(&body)?;
    if failed.is_empty() {
        Ok(())
    } else {
        Err(Failure::Violation(format!(
            "counterexample found for {}",
            failed.join(", ")
        )))
    }
}

#[derive(Serialize)]
struct EnumRow {
    shape: String,
    inner: String,
    entries_hash: String,
    stab: String,
    r: usize,
}

fn join(xs: &[usize]) -> String {
    xs.iter()
        .map(|x| x.to_string())
        .collect::<Vec<_>>()
        .join(" ")
}

fn cmd_enumerate(cfg: &EnumerationConfig, csv_path: Option<&Path>, format: Format) -> Run {
    let (summary, records) = verify_with_records(cfg)?;
    if let Some(path) = csv_path {
        let mut w = csv::Writer::from_path(path)?;
        for rec in &records {
            w.serialize(EnumRow {
                shape: join(rec.tableau.row_sizes().parts()),
                inner: join(rec.tableau.inner()),
                entries_hash: entries_hash(&rec.tableau),
                stab: rec.stab.map_or_else(|| "none".into(), |s| s.to_string()),
                r: rec.rows,
            })?;
        }
        w.flush()?;
    }
    match format {
        Format::Json => emit_json(&json!({ "schema": SCHEMA, "config": cfg, "summary": summary }))?,
        Format::Text => {
            println!(
                "{} tableaux over {} shapes (n <= {}, r <= {}, inner <= {})",
                summary.tableaux, summary.shapes, cfg.max_n, cfg.max_rows, cfg.max_inner
            );
            println!(
                "{:>4} {:>9} {:>9}  counts by stab",
                "r", "tableaux", "max stab"
            );
            for (r, counts) in &summary.histogram {
                let total: usize = counts.values().sum();
                let detail: Vec<String> = counts.iter().map(|(s, c)| format!("{s}:{c}")).collect();
                println!(
                    "{:>4} {:>9} {:>9}  {}",
                    r,
                    total,
                    summary.max_stab_by_rows[r],
                    detail.join(" ")
                );
            }
            println!("stab > r: {}", summary.stab_violations.len());
            println!(
                "non-monotone verdicts: {}",
                summary.monotonicity_violations.len()
            );
            println!(
                "shape increment failures: {}",
                summary.shape_increment_violations.len()
            );
        }
    }
    if summary.is_clean() {
        Ok(())
    } else {
        Err(Failure::Violation(
            "the enumeration found violations".into(),
        ))
    }
}

#[derive(Serialize)]
struct PermRow {
    w: String,
    stab: usize,
    q_tableau: String,
    ascents: usize,
}

fn cmd_perm(n: usize, csv_path: Option<&Path>, format: Format) -> Run {
    if n == 0 {
        return Err(Failure::Input("--n must be positive".into()));
    }
    let summary = q_class_check(n)?;
    if let Some(path) = csv_path {
        let mut w = csv::Writer::from_path(path)?;
        for r in perm_records(n)? {
            w.serialize(PermRow {
                w: r.permutation.to_string(),
                stab: r.stab,
                q_tableau: r.q_tableau,
                ascents: r.ascents,
            })?;
        }
        w.flush()?;
    }
    match format {
        Format::Json => emit_json(&json!({ "schema": SCHEMA, "summary": summary }))?,
        Format::Text => {
            println!(
                "n = {}: {} permutations, {} recording-tableau classes",
                n,
                summary.permutations,
                summary.classes.len()
            );
            println!(
                "classes with more than one stab value: {}",
                summary.violations.len()
            );
            println!(
                "classes with stab <= least ascent count: {}",
                summary.ascent_exceptions
            );
        }
    }
    if summary.violations.is_empty() {
        Ok(())
    } else {
        Err(Failure::Violation(
            "stab is not constant on a recording-tableau class".into(),
        ))
    }
}
