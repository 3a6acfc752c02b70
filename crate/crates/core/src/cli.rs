//! Command-line front end: `mine`, `oracle`, `ncd` and `gen`.
//!
//! Exit codes: 0 success, 1 usage, 2 data error, 3 backend error.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Duration;

use clap::{Args, Parser, Subcommand};
use sha2::{Digest, Sha256};

use crate::bits::BitString;
use crate::codelength::{Backend, ExternalCompressor};
use crate::datagen::{gen_planted, gen_random, PlantSpec};
use crate::distance::{distance_matrix_labeled, Measure};
use crate::error::Error;
use crate::format::{
    parse_transactions, render_manifest, render_matrix, write_transactions, Encoding, Header,
    ResultFile, ResultRecord,
};
use crate::miner::{mine, MiningConfig, Mode, Support};
use crate::occurrence::{OccurrenceParams, TransactionSet, Variant};
use crate::oracle::{enumerate_frequent, Certificate, OracleConfig};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_DATA: i32 = 2;
pub const EXIT_BACKEND: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "bitmine", version, about = "Compression-based frequent pattern mining over bit strings")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Mine all frequent patterns level by level.
    Mine(MineArgs),
    /// Enumerate frequent patterns exhaustively.
    Oracle(OracleArgs),
    /// Pairwise distance matrix.
    Ncd(NcdArgs),
    /// Generate a synthetic transaction file.
    #[command(subcommand)]
    Gen(GenCommand),
}

#[derive(Debug, Clone, Args)]
pub struct BackendArgs {
    /// `kt`, `lz`, or `external:<shell command>`.
    #[arg(long, default_value = "kt")]
    pub backend: String,
    /// KT context order in bits.
    #[arg(long, default_value_t = 0)]
    pub order: u8,
    /// Timeout for each external compressor call.
    #[arg(long, default_value_t = 10.0)]
    pub timeout_secs: f64,
}

impl BackendArgs {
    pub fn build(&self) -> Result<Backend, Error> {
        match self.backend.as_str() {
            "kt" => Backend::kt(self.order),
            "lz" => Ok(Backend::LzParse),
            other => match other.strip_prefix("external:") {
                Some(cmd) if !cmd.trim().is_empty() => {
                    if !(self.timeout_secs > 0.0 && self.timeout_secs.is_finite()) {
                        return Err(Error::InvalidParameter("timeout must be positive".into()));
                    }
                    Ok(Backend::External(
                        ExternalCompressor::new(cmd)
                            .with_timeout(Duration::from_secs_f64(self.timeout_secs)),
                    ))
                }
                _ => Err(Error::InvalidParameter(format!("unknown backend {other:?}"))),
            },
        }
    }
}

#[derive(Debug, Clone, Args)]
pub struct OccurrenceArgs {
    /// `scale-free` or `additive`.
    #[arg(long, default_value = "scale-free")]
    pub variant: String,
    #[arg(long)]
    pub c1: Option<f64>,
    #[arg(long)]
    pub c2: Option<f64>,
    #[arg(long)]
    pub c3: Option<f64>,
    #[arg(long)]
    pub c4: Option<f64>,
    #[arg(long, default_value_t = 1)]
    pub min_pattern_len: usize,
}

impl OccurrenceArgs {
    pub fn build(&self) -> Result<OccurrenceParams, Error> {
        let base = match self.variant.as_str() {
            "scale-free" => {
                if self.c3.is_some() || self.c4.is_some() {
                    return Err(Error::InvalidParameter("--c3/--c4 need --variant additive".into()));
                }
                let Variant::ScaleFree { c1, c2 } = OccurrenceParams::default().variant else {
                    unreachable!()
                };
                OccurrenceParams::scale_free(self.c1.unwrap_or(c1), self.c2.unwrap_or(c2))?
            }
            "additive" => {
                if self.c1.is_some() || self.c2.is_some() {
                    return Err(Error::InvalidParameter("--c1/--c2 are for the scale-free variant".into()));
                }
                match (self.c3, self.c4) {
                    (Some(c3), Some(c4)) => OccurrenceParams::additive(c3, c4)?,
                    _ => return Err(Error::InvalidParameter("additive variant needs --c3 and --c4".into())),
                }
            }
            other => return Err(Error::InvalidParameter(format!("unknown variant {other:?}"))),
        };
        base.with_min_pattern_len(self.min_pattern_len)
    }
}

#[derive(Debug, Clone, Args)]
pub struct MineArgs {
    /// Transaction file.
    pub input: PathBuf,
    /// Support threshold: a count (`4`) or a fraction of |T| (`0.3f`).
    #[arg(long)]
    pub epsilon: String,
    #[command(flatten)]
    pub occurrence: OccurrenceArgs,
    #[command(flatten)]
    pub backend: BackendArgs,
    /// Bits added per level.
    #[arg(long, default_value_t = 4)]
    pub step_bits: usize,
    #[arg(long, default_value_t = 64)]
    pub max_level: usize,
    /// `sound` or `heuristic`.
    #[arg(long, default_value = "sound")]
    pub mode: String,
    /// Worker threads for the count pass (0 = all cores). Does not affect output.
    #[arg(long, default_value_t = 0)]
    pub threads: usize,
    /// Seed that produced the input, echoed in the header.
    #[arg(long)]
    pub seed: Option<u64>,
    /// Output path (stdout when omitted).
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Args)]
pub struct OracleArgs {
    pub input: PathBuf,
    #[arg(long)]
    pub epsilon: String,
    #[command(flatten)]
    pub occurrence: OccurrenceArgs,
    #[command(flatten)]
    pub backend: BackendArgs,
    /// Longest pattern to enumerate.
    #[arg(long, default_value_t = 16)]
    pub max_len: usize,
    /// Step width used to assign levels, so output lines up with `mine`.
    #[arg(long, default_value_t = 4)]
    pub step_bits: usize,
    /// Return the enumeration even when completeness cannot be certified.
    #[arg(long)]
    pub no_certify: bool,
    /// Compare (pattern, count) pairs with a `mine` result file.
    #[arg(long)]
    pub diff: Option<PathBuf>,
    #[arg(long)]
    pub threads: Option<usize>,
    #[arg(long)]
    pub seed: Option<u64>,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Args)]
pub struct NcdArgs {
    /// Transaction file whose lines are the items.
    pub input: Option<PathBuf>,
    /// Raw files, each one item (bytes expanded MSB-first).
    #[arg(long, num_args = 1.., conflicts_with = "input")]
    pub files: Vec<PathBuf>,
    /// `nid`, `ncd` or `info`.
    #[arg(long, default_value = "ncd")]
    pub measure: String,
    #[command(flatten)]
    pub backend: BackendArgs,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum GenCommand {
    /// Uniform random transactions.
    Random(GenRandomArgs),
    /// Transactions with a planted, noisy motif.
    Planted(GenPlantedArgs),
}

#[derive(Debug, Clone, Args)]
pub struct GenRandomArgs {
    #[arg(long)]
    pub count: usize,
    #[arg(long)]
    pub min_len: usize,
    #[arg(long)]
    pub max_len: usize,
    #[arg(long)]
    pub seed: u64,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Args)]
pub struct GenPlantedArgs {
    #[arg(long, default_value = "00000001111111")]
    pub motif: String,
    #[arg(long, default_value_t = 50)]
    pub count: usize,
    #[arg(long, default_value_t = 0.8)]
    pub planted: f64,
    #[arg(long, default_value_t = 0.05)]
    pub flip: f64,
    #[arg(long, default_value_t = 4)]
    pub pad_min: usize,
    #[arg(long, default_value_t = 10)]
    pub pad_max: usize,
    #[arg(long, default_value_t = 7)]
    pub seed: u64,
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Manifest path; defaults to `<out>.manifest` when `--out` is given.
    #[arg(long)]
    pub manifest: Option<PathBuf>,
}

/// An error together with its exit code.
#[derive(Debug)]
pub struct Failure {
    pub code: i32,
    pub message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e.root() {
            Error::InvalidParameter(_) => EXIT_USAGE,
            Error::Backend(_) | Error::ZeroCodeLength { .. } => EXIT_BACKEND,
            _ => EXIT_DATA,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

fn usage(message: impl Into<String>) -> Failure {
    Failure {
        code: EXIT_USAGE,
        message: message.into(),
    }
}

/// Parses `args` (including the program name) and runs the command.
/// Returns the process exit code.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let _ = if code == EXIT_OK {
                write!(stdout, "{e}")
            } else {
                write!(stderr, "{e}")
            };
            return code;
        }
    };
    match execute(&cli.command, stdout, stderr) {
        Ok(()) => EXIT_OK,
        Err(f) => {
            let _ = writeln!(stderr, "error: {}", f.message);
            f.code
        }
    }
}

pub fn execute(command: &Command, stdout: &mut dyn Write, stderr: &mut dyn Write) -> Result<(), Failure> {
    match command {
        Command::Mine(a) => {
            let text = run_mine(a)?;
            emit(a.out.as_deref(), &text, stdout)
        }
        Command::Oracle(a) => run_oracle(a, stdout, stderr),
        Command::Ncd(a) => {
            let text = run_ncd(a)?;
            emit(a.out.as_deref(), &text, stdout)
        }
        Command::Gen(GenCommand::Random(a)) => {
            let text = run_gen_random(a)?;
            emit(a.out.as_deref(), &text, stdout)
        }
        Command::Gen(GenCommand::Planted(a)) => run_gen_planted(a, stdout),
    }
}

fn emit(path: Option<&Path>, text: &str, stdout: &mut dyn Write) -> Result<(), Failure> {
    match path {
        Some(p) => fs::write(p, text).map_err(|e| Failure::from(Error::Io(e))),
        None => stdout
            .write_all(text.as_bytes())
            .map_err(|e| Failure::from(Error::Io(e))),
    }
}

struct Input {
    transactions: TransactionSet,
    sha256: String,
}

fn load_transactions(path: &Path) -> Result<Input, Failure> {
    let bytes = fs::read(path).map_err(|e| Failure {
        code: EXIT_DATA,
        message: format!("{}: {e}", path.display()),
    })?;
    let text = String::from_utf8(bytes.clone()).map_err(|_| Failure {
        code: EXIT_DATA,
        message: format!("{}: not valid UTF-8", path.display()),
    })?;
    let items = parse_transactions(&text).map_err(|e| Failure {
        code: EXIT_DATA,
        message: format!("{}: {e}", path.display()),
    })?;
    if items.is_empty() {
        return Err(Failure {
            code: EXIT_DATA,
            message: format!("{}: no transactions", path.display()),
        });
    }
    let digest = Sha256::digest(&bytes);
    Ok(Input {
        transactions: TransactionSet::new(items)?,
        sha256: digest.iter().map(|b| format!("{b:02x}")).collect(),
    })
}

fn config_header(
    backend: &Backend,
    params: &OccurrenceParams,
    epsilon: Support,
    resolved: u64,
    step_bits: usize,
    seed: Option<u64>,
    input: &Input,
) -> Header {
    let mut h = Header::default();
    h.push("backend", backend.name());
    h.push("order", backend.order().map_or("-".into(), |o| o.to_string()));
    h.push("variant", params.variant_name());
    match params.variant {
        Variant::ScaleFree { c1, c2 } => h.push("c1", c1).push("c2", c2),
        Variant::Additive { c3, c4 } => h.push("c3", c3).push("c4", c4),
    };
    h.push("min_pattern_len", params.min_pattern_len)
        .push("epsilon", epsilon)
        .push("epsilon_resolved", resolved)
        .push("step_bits", step_bits)
        .push("seed", seed.map_or("none".into(), |s| s.to_string()))
        .push("transactions", input.transactions.len())
        .push("input_sha256", &input.sha256);
    h
}

fn thread_pool(threads: usize) -> Result<rayon::ThreadPool, Failure> {
    rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .map_err(|e| usage(format!("cannot build thread pool: {e}")))
}

/// Runs `mine` and renders the result file.
pub fn run_mine(a: &MineArgs) -> Result<String, Failure> {
    let epsilon: Support = a.epsilon.parse()?;
    let params = a.occurrence.build()?;
    let backend = a.backend.build()?;
    let mode: Mode = a.mode.parse()?;
    if mode == Mode::Sound && !backend.is_monotone() {
        return Err(usage(format!(
            "backend {} is not monotone and is refused in sound mode; pass --mode heuristic",
            backend.name()
        )));
    }
    let config = MiningConfig::new(epsilon)
        .with_step_bits(a.step_bits)
        .with_max_level(a.max_level)
        .with_mode(mode);
    config.validate()?;
    let input = load_transactions(&a.input)?;

    let result = thread_pool(a.threads)?.install(|| mine(&backend, &params, &input.transactions, &config))?;

    let mut header = config_header(&backend, &params, epsilon, result.epsilon, a.step_bits, a.seed, &input);
    header
        .push("max_level", a.max_level)
        .push("mode", mode)
        .push("approximate", result.approximate)
        .push("truncated", result.truncated)
        .push("patterns", result.patterns.len());
    let mut file = ResultFile {
        header,
        records: result
            .patterns
            .into_iter()
            .map(|p| ResultRecord {
                level: p.level,
                pattern: p.pattern,
                count: p.count,
                code_len: p.code_len.bits(),
            })
            .collect(),
    };
    file.sort();
    Ok(file.render())
}

pub fn run_oracle(a: &OracleArgs, stdout: &mut dyn Write, stderr: &mut dyn Write) -> Result<(), Failure> {
    let epsilon: Support = a.epsilon.parse()?;
    let params = a.occurrence.build()?;
    let backend = a.backend.build()?;
    if a.step_bits == 0 {
        return Err(usage("step_bits must be at least 1"));
    }
    let input = load_transactions(&a.input)?;
    let config = OracleConfig {
        max_len: a.max_len,
        must_cover_termination: !a.no_certify,
    };
    let run = || enumerate_frequent(&backend, &params, &input.transactions, epsilon, &config);
    let result = match a.threads {
        Some(t) => thread_pool(t)?.install(run),
        None => run(),
    }?;

    let m = params.min_pattern_len;
    let mut header = config_header(&backend, &params, epsilon, result.epsilon, a.step_bits, a.seed, &input);
    header.push("oracle_max_len", a.max_len).push(
        "certificate",
        match result.certificate {
            None => "none".to_string(),
            Some(Certificate::SupportAboveCount) => "support-above-count".to_string(),
            Some(Certificate::EntropyBound(l)) => format!("entropy-bound@{l}"),
            Some(Certificate::EmptyLengthClass(l)) => format!("empty-length@{l}"),
        },
    );
    header.push("patterns", result.patterns.len());
    let mut file = ResultFile {
        header,
        records: result
            .patterns
            .iter()
            .map(|(x, count)| ResultRecord {
                level: (x.len() - m) / a.step_bits,
                pattern: x.clone(),
                count: *count,
                code_len: crate::codelength::code_len(&backend, x).map(|c| c.bits()).unwrap_or(f64::NAN),
            })
            .collect(),
    };
    file.sort();
    emit(a.out.as_deref(), &file.render(), stdout)?;

    if let Some(diff) = &a.diff {
        let text = fs::read_to_string(diff).map_err(|e| Failure {
            code: EXIT_DATA,
            message: format!("{}: {e}", diff.display()),
        })?;
        let other = ResultFile::parse(&text)?;
        let mut mined: Vec<(BitString, u64)> = other.records.into_iter().map(|r| (r.pattern, r.count)).collect();
        let mut truth = result.patterns;
        mined.sort();
        truth.sort();
        if mined == truth {
            let _ = writeln!(stderr, "oracle agrees with {} ({} patterns)", diff.display(), truth.len());
        } else {
            for (p, c) in truth.iter().filter(|e| !mined.contains(e)) {
                let _ = writeln!(stderr, "missing from mined result: {p} x{c}");
            }
            for (p, c) in mined.iter().filter(|e| !truth.contains(e)) {
                let _ = writeln!(stderr, "not in oracle output: {p} x{c}");
            }
            return Err(Failure {
                code: EXIT_DATA,
                message: format!("oracle and {} disagree", diff.display()),
            });
        }
    }
    Ok(())
}

pub fn run_ncd(a: &NcdArgs) -> Result<String, Failure> {
    let measure: Measure = a.measure.parse().map_err(|e: Error| usage(e.to_string()))?;
    let backend = a.backend.build()?;
    let (items, labels): (Vec<BitString>, Vec<String>) = if let Some(path) = &a.input {
        let input = load_transactions(path)?;
        let items: Vec<BitString> = input.transactions.into();
        let labels = (0..items.len()).map(|i| format!("t{i}")).collect();
        (items, labels)
    } else {
        let mut items = Vec::new();
        for p in &a.files {
            let bytes = fs::read(p).map_err(|e| Failure {
                code: EXIT_DATA,
                message: format!("{}: {e}", p.display()),
            })?;
            items.push(BitString::from_bytes_msb(&bytes));
        }
        (items, a.files.iter().map(|p| p.display().to_string()).collect())
    };
    if items.len() < 2 {
        return Err(usage(format!("need at least 2 items, got {}", items.len())));
    }
    let matrix = distance_matrix_labeled(&backend, &items, labels, measure)?;
    let mut header = Header::default();
    header
        .push("measure", measure)
        .push("backend", backend.name())
        .push("order", backend.order().map_or("-".into(), |o| o.to_string()));
    Ok(render_matrix(&matrix, &header))
}

pub fn run_gen_random(a: &GenRandomArgs) -> Result<String, Failure> {
    let t = gen_random(a.count, a.min_len..=a.max_len, a.seed)?;
    let comments = vec![format!(
        "generated: random count={} len={}..{} seed={}",
        a.count, a.min_len, a.max_len, a.seed
    )];
    let items: Vec<BitString> = t.into();
    Ok(write_transactions(&items, Encoding::Bits, &comments)?)
}

pub fn run_gen_planted(a: &GenPlantedArgs, stdout: &mut dyn Write) -> Result<(), Failure> {
    let spec = PlantSpec {
        motif: a.motif.parse().map_err(|e: Error| usage(e.to_string()))?,
        transaction_count: a.count,
        planted_fraction: a.planted,
        flip_prob: a.flip,
        pad_len: a.pad_min..=a.pad_max,
        seed: a.seed,
    };
    let d = gen_planted(&spec)?;
    let comments = vec![format!(
        "generated: planted motif={} count={} planted={} flip={} pad={}..{} seed={}",
        a.motif, a.count, a.planted, a.flip, a.pad_min, a.pad_max, a.seed
    )];
    let items: Vec<BitString> = d.transactions.into();
    emit(a.out.as_deref(), &write_transactions(&items, Encoding::Bits, &comments)?, stdout)?;
    let manifest_path = a.manifest.clone().or_else(|| {
        a.out.as_ref().map(|o| {
            let mut p = o.clone().into_os_string();
            p.push(".manifest");
            PathBuf::from(p)
        })
    });
    if let Some(p) = manifest_path {
        fs::write(&p, render_manifest(&d.manifest)).map_err(|e| Failure::from(Error::Io(e)))?;
    }
    Ok(())
}
