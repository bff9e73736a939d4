use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use slp_edit::corpus::{alphabet, fibonacci_prefix, map_terminals, random_repetitive, random_scoring, random_string};
use slp_edit::format::{looks_like_slp, parse_scoring, parse_slp, write_slp};
use slp_edit::slp::lz78_parse;
use slp_edit::{block_edit_distance, wagner_fischer, Error, ScoringFunction, Slp};

#[derive(Parser)]
#[command(
    name = "slp-edit",
    version,
    about = "Edit distance between grammar-compressed strings"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compress a text file into an SLP file.
    Compress {
        input: PathBuf,
        #[arg(long, value_enum, default_value_t = Method::Lz78)]
        method: Method,
        /// Write here instead of standard output.
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Expand an SLP file back to its text.
    Expand {
        input: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Edit distance between two inputs, each plain text or an SLP file.
    Distance {
        a: PathBuf,
        b: PathBuf,
        /// Scoring file, or `lev` for unit costs over the characters of both inputs.
        #[arg(long, default_value = "lev")]
        scoring: String,
        /// Block size x; derived from the input sizes when omitted.
        #[arg(long = "block-size")]
        block_size: Option<u64>,
        #[arg(long, value_enum, default_value_t = Algorithm::Block)]
        algorithm: Algorithm,
        /// Write the run counters as key=value lines.
        #[arg(long)]
        stats: Option<PathBuf>,
    },
    /// Counter trends on Fibonacci words of growing length.
    Bench {
        /// Largest length is 2^max_exp.
        #[arg(long, default_value_t = 12)]
        max_exp: u32,
    },
    /// Block distance against Wagner-Fischer on small random inputs.
    Selftest {
        #[arg(long, default_value_t = 40)]
        cases: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Method {
    Lz78,
    Balanced,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Algorithm {
    Block,
    Baseline,
}

/// Failure with its exit status.
enum Failure {
    Input(String),
    Internal(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        if e.is_internal() {
            Failure::Internal(e.to_string())
        } else {
            Failure::Input(e.to_string())
        }
    }
}

type Outcome<T = ()> = Result<T, Failure>;

fn read(path: &Path) -> Outcome<String> {
    fs::read_to_string(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn emit(output: Option<&Path>, text: &str) -> Outcome {
    let res = match output {
        Some(p) => fs::write(p, text),
        None => io::stdout().write_all(text.as_bytes()),
    };
    res.map_err(|e| Failure::Input(format!("write failed: {e}")))
}

/// Plain text is taken verbatim; a file whose first line is `SLP <n>` is a grammar.
fn load(path: &Path) -> Outcome<Slp> {
    let text = read(path)?;
    if looks_like_slp(&text) {
        Ok(parse_slp(&text)?)
    } else {
        Ok(Slp::from_plain(&text)?)
    }
}

fn scoring_for(spec: &str, a: &Slp, b: &Slp) -> Outcome<ScoringFunction> {
    if spec == "lev" {
        let mut chars: Vec<char> = a.text().chars().chain(b.text().chars()).collect();
        chars.sort_unstable();
        chars.dedup();
        return Ok(ScoringFunction::levenshtein(chars)?);
    }
    Ok(parse_scoring(&read(Path::new(spec))?)?)
}

fn compress(input: &Path, method: Method, output: Option<&Path>) -> Outcome {
    let text = read(input)?;
    let slp = match method {
        Method::Lz78 => Slp::from_lz78(&lz78_parse(&text)?)?,
        Method::Balanced => Slp::from_plain(&text)?,
    };
    emit(output, &write_slp(&slp))
}

fn distance(
    a: &Path,
    b: &Path,
    scoring: &str,
    block_size: Option<u64>,
    algorithm: Algorithm,
    stats: Option<&Path>,
) -> Outcome {
    let (a, b) = (load(a)?, load(b)?);
    let sf = scoring_for(scoring, &a, &b)?;
    let (cost, record) = match algorithm {
        Algorithm::Block => {
            let (cost, s) = block_edit_distance(&a, &b, &sf, block_size)?;
            (cost, s.to_record())
        }
        Algorithm::Baseline => {
            let start = std::time::Instant::now();
            let cost = wagner_fischer(&a.text(), &b.text(), &sf)?;
            let cells = (a.derived_len() + 1) * (b.derived_len() + 1);
            let record = format!(
                "N_A={}\nN_B={}\nn_A={}\nn_B={}\ntotal_work={cells}\nsweep_seconds={:.6}\n",
                a.derived_len(),
                b.derived_len(),
                a.size(),
                b.size(),
                start.elapsed().as_secs_f64()
            );
            (cost, record)
        }
    };
    println!("{}", sf.format_cost(cost));
    if let Some(path) = stats {
        fs::write(path, record).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
    }
    Ok(())
}

fn bench(max_exp: u32) -> Outcome {
    let sf = ScoringFunction::levenshtein("ab".chars())?;
    println!("N\tn\tx\tparts\tboundary_cells\tgrowth\ttotal_work\tN^2/work\tseconds");
    let mut prev: Option<u64> = None;
    for e in 8..=max_exp.max(8) {
        let len = 1u64 << e;
        let a = fibonacci_prefix(len)?;
        let b = map_terminals(&a, |c| if c == 'a' { 'b' } else { 'a' });
        let (_, s) = block_edit_distance(&a, &b, &sf, None)?;
        let growth = prev.map_or("-".to_string(), |p| {
            format!("{:.2}", s.boundary_cells_propagated as f64 / p as f64)
        });
        let secs = (s.partition_time + s.repository_time + s.sweep_time).as_secs_f64();
        println!(
            "{len}\t{}\t{}\t{}\t{}\t{growth}\t{}\t{:.2}\t{secs:.3}",
            s.size_a + s.size_b,
            s.x,
            s.parts_a,
            s.boundary_cells_propagated,
            s.total_work(),
            (len * len) as f64 / s.total_work() as f64
        );
        prev = Some(s.boundary_cells_propagated);
    }
    Ok(())
}

fn selftest(cases: usize, seed: u64) -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut runs = 0;
    for case in 0..cases {
        let chars = alphabet([2, 4, 26][case % 3]);
        let text = |rng: &mut ChaCha8Rng| {
            let len = rng.gen_range(1..=64);
            if rng.gen_bool(0.5) {
                random_repetitive(rng, &chars, len)
            } else {
                random_string(rng, &chars, len)
            }
        };
        let (a, b) = (text(&mut rng), text(&mut rng));
        let sf = if case % 2 == 0 {
            ScoringFunction::levenshtein(chars.iter().copied())?
        } else {
            random_scoring(&mut rng, &chars, 9)
        };
        let want = wagner_fischer(&a, &b, &sf)?;
        let sa = Slp::from_lz78(&lz78_parse(&a)?)?;
        let sb = Slp::from_plain(&b)?;
        for x in [Some(2), Some(4), Some(8), Some(16), None] {
            let got = block_edit_distance(&sa, &sb, &sf, x)?.0;
            if got != want {
                return Err(Failure::Internal(format!(
                    "case {case}, x={x:?}: block {got}, baseline {want}"
                )));
            }
            runs += 1;
        }
    }
    println!("selftest: {runs} runs over {cases} cases agree");
    Ok(())
}

fn run(cli: Cli) -> Outcome {
    match cli.command {
        Command::Compress { input, method, output } => compress(&input, method, output.as_deref()),
        Command::Expand { input, output } => {
            let slp = parse_slp(&read(&input)?)?;
            emit(output.as_deref(), &slp.text())
        }
        Command::Distance {
            a,
            b,
            scoring,
            block_size,
            algorithm,
            stats,
        } => distance(&a, &b, &scoring, block_size, algorithm, stats.as_deref()),
        Command::Bench { max_exp } => bench(max_exp),
        Command::Selftest { cases, seed } => selftest(cases, seed),
    }
}

fn main() -> ExitCode {
    // usage errors are input errors; clap's own status 2 is reserved for internal ones
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
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Internal(msg)) => {
            eprintln!("internal error: {msg}");
            ExitCode::from(2)
        }
    }
}
