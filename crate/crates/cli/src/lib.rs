//! `cantor` command-line front end.
//!
//! Exit codes: 0 on success, 1 on user error, 2 when the characterizations
//! disagree or an internal invariant breaks. Results go to stdout and
//! diagnostics to stderr.

mod report;

use std::io::Write;
use std::path::PathBuf;

use cantor_core::cyclotomic::trit_count;
use cantor_core::{
    certify, cross_check, enumerate_cantor_primes, exclusion_report, parse_bfile, repunit3, search_deep_forms,
    search_repunit_prime_exponents, stream_repunit_prime_exponents, CantorError, PrimalityConfig, SearchConfig,
    StageFilter, TritBudget,
};
use clap::{Parser, Subcommand, ValueEnum};
use num_bigint::BigUint;
use num_traits::ToPrimitive;
use serde_json::json;

use crate::report::{Report, RecordStream};

pub const THREADS_ENV: &str = "CANTOR_SIEVE_THREADS";

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ReportFormat {
    Human,
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Sequence {
    /// Cantor primes up to the cap
    CantorPrimes,
    /// Prime values (3^s - 1)/2 up to the cap
    RepunitPrimes,
    /// Exponents s up to the cap with (3^s - 1)/2 prime
    RepunitExponents,
}

#[derive(Debug, Parser)]
#[command(name = "cantor", version, about = "Cantor primes: certify, enumerate and search")]
struct Cli {
    #[arg(long, value_enum, default_value = "human", global = true)]
    format: ReportFormat,

    /// Miller-Rabin rounds for operands above 2^64
    #[arg(long, default_value_t = cantor_core::primality::DEFAULT_MR_ROUNDS, global = true)]
    mr_rounds: u32,

    /// Largest (s-1)*s^j allowed when building cyclotomic values
    #[arg(long, default_value_t = cantor_core::cyclotomic::DEFAULT_TRIT_BUDGET, global = true)]
    trit_budget: u64,

    /// Include per-record timing fields
    #[arg(long, global = true)]
    timings: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Run all three characterizations on one prime
    Certify { p: String },
    /// List every Cantor prime up to a limit
    Enumerate {
        #[arg(long)]
        limit: u64,
    },
    /// Primes excluded at a given stage of the digit-interval chain
    Exclusions {
        #[arg(long)]
        limit: u64,
        /// 1, 2, n (any later stage), an exact stage >= 3, or passes
        #[arg(long)]
        stage: String,
    },
    /// Probe (3^s - 1)/2 for every prime s up to max-s
    SearchRepunit {
        #[arg(long)]
        max_s: u64,
        /// Skip exponents below this value (resume a long run)
        #[arg(long, default_value_t = 0)]
        min_s: u64,
        /// Emit records one at a time, in order, as they are decided
        #[arg(long)]
        stream: bool,
    },
    /// Probe Phi_s(3^{s^j}) for 0 <= j <= max-j
    SearchDeep {
        #[arg(long)]
        s: u64,
        #[arg(long)]
        max_j: u32,
    },
    /// Compare a local OEIS b-file against a computed sequence
    Crosscheck {
        #[arg(long)]
        bfile: PathBuf,
        #[arg(long)]
        cap: String,
        #[arg(long, value_enum, default_value = "cantor-primes")]
        sequence: Sequence,
    },
}

#[derive(Debug)]
enum Failure {
    User(String),
    Internal(String),
}

impl From<CantorError> for Failure {
    fn from(e: CantorError) -> Self {
        if e.is_internal() {
            Failure::Internal(e.to_string())
        } else {
            Failure::User(e.to_string())
        }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::User(format!("i/o error: {e}"))
    }
}

/// Runs one invocation. `args` excludes the program name.
pub fn run<I, S>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let argv = std::iter::once(std::ffi::OsString::from("cantor")).chain(args.into_iter().map(Into::into));
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{e}");
                    0
                }
                _ => {
                    let _ = write!(err, "{e}");
                    1
                }
            };
            return code;
        }
    };

    let result = thread_cap().and_then(|threads| {
        if let Some(threads) = threads {
            // the global pool can only be sized once per process; later calls keep the first size
            let _ = rayon::ThreadPoolBuilder::new().num_threads(threads).build_global();
        }
        dispatch(&cli, out)
    });
    match result {
        Ok(()) => 0,
        Err(Failure::User(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            1
        }
        Err(Failure::Internal(msg)) => {
            let _ = writeln!(err, "internal error: {msg}");
            2
        }
    }
}

fn thread_cap() -> Result<Option<usize>, Failure> {
    match std::env::var(THREADS_ENV) {
        Ok(v) => match v.trim().parse::<usize>() {
            Ok(n) if n > 0 => Ok(Some(n)),
            _ => Err(Failure::User(format!("{THREADS_ENV} must be a positive integer, got '{v}'"))),
        },
        Err(_) => Ok(None),
    }
}

fn search_config(cli: &Cli) -> SearchConfig {
    SearchConfig {
        primality: PrimalityConfig::with_rounds(cli.mr_rounds),
        trit_budget: TritBudget(cli.trit_budget),
        ..Default::default()
    }
}

fn common_parameters(cli: &Cli) -> serde_json::Map<String, serde_json::Value> {
    let mut params = serde_json::Map::new();
    params.insert("mr_rounds".into(), json!(cli.mr_rounds));
    params.insert("trit_budget".into(), json!(cli.trit_budget));
    params
}

fn parse_natural(text: &str, what: &str) -> Result<BigUint, Failure> {
    let trimmed = text.trim();
    if trimmed.is_empty() || !trimmed.bytes().all(|b| b.is_ascii_digit()) {
        return Err(Failure::User(format!("{what} must be a non-negative integer, got '{text}'")));
    }
    Ok(BigUint::parse_bytes(trimmed.as_bytes(), 10).expect("validated decimal digits"))
}

fn dispatch(cli: &Cli, out: &mut dyn Write) -> Result<(), Failure> {
    let mut params = common_parameters(cli);
    match &cli.command {
        Command::Certify { p } => {
            let p_big = parse_natural(p, "p")?;
            let p = p_big
                .to_u64()
                .ok_or_else(|| Failure::User(format!("{p_big} is too large; certify accepts p < 2^64")))?;
            params.insert("p".into(), json!(p.to_string()));
            let cert = certify(p)?;
            Report::new("certify", params).certificates(cli.format, &[cert], out)?;
        }
        Command::Enumerate { limit } => {
            params.insert("limit".into(), json!(limit));
            let certs = enumerate_cantor_primes(*limit)?;
            Report::new("enumerate", params).certificates(cli.format, &certs, out)?;
        }
        Command::Exclusions { limit, stage } => {
            let filter: StageFilter = stage.parse()?;
            params.insert("limit".into(), json!(limit));
            params.insert("stage".into(), json!(stage));
            let primes = exclusion_report(*limit, filter)?;
            Report::new("exclusions", params).primes(cli.format, &primes, out)?;
        }
        Command::SearchRepunit { max_s, min_s, stream } => {
            params.insert("max_s".into(), json!(max_s));
            params.insert("min_s".into(), json!(min_s));
            let config = search_config(cli);
            let report = Report::new("search-repunit", params);
            if *stream && cli.format != ReportFormat::Json {
                let mut sink = RecordStream::new(cli.format, cli.timings, out)?;
                let mut failure = None;
                stream_repunit_prime_exponents(*min_s, *max_s, &config, |record| {
                    if failure.is_none() {
                        failure = sink.push(record).err();
                    }
                });
                if let Some(e) = failure {
                    return Err(e.into());
                }
            } else {
                let records: Vec<_> = search_repunit_prime_exponents(*max_s, &config)
                    .into_iter()
                    .filter(|r| r.s >= *min_s)
                    .collect();
                report.records(cli.format, cli.timings, &records, out)?;
            }
        }
        Command::SearchDeep { s, max_j } => {
            params.insert("s".into(), json!(s));
            params.insert("max_j".into(), json!(max_j));
            let records = search_deep_forms(*s, *max_j, &search_config(cli))?;
            Report::new("search-deep", params).records(cli.format, cli.timings, &records, out)?;
        }
        Command::Crosscheck { bfile, cap, sequence } => {
            let cap = parse_natural(cap, "cap")?;
            let text = std::fs::read_to_string(bfile)
                .map_err(|e| Failure::User(format!("cannot read {}: {e}", bfile.display())))?;
            let expected = parse_bfile(&text)?;
            let computed = computed_sequence(*sequence, &cap, &search_config(cli))?;
            let diff = cross_check(&expected, &computed, &cap);
            params.insert("bfile".into(), json!(bfile.display().to_string()));
            params.insert("cap".into(), json!(cap.to_string()));
            params.insert(
                "sequence".into(),
                json!(sequence.to_possible_value().expect("named variant").get_name()),
            );
            Report::new("crosscheck", params).cross_check(cli.format, &diff, out)?;
        }
    }
    Ok(())
}

fn computed_sequence(sequence: Sequence, cap: &BigUint, config: &SearchConfig) -> Result<Vec<BigUint>, Failure> {
    let small_cap = || {
        cap.to_u64().ok_or_else(|| Failure::User(format!("cap {cap} is too large for this sequence")))
    };
    Ok(match sequence {
        Sequence::CantorPrimes => {
            enumerate_cantor_primes(small_cap()?)?.into_iter().map(|c| BigUint::from(c.p)).collect()
        }
        Sequence::RepunitExponents => search_repunit_prime_exponents(small_cap()?, config)
            .into_iter()
            .filter(|r| r.is_positive())
            .map(|r| BigUint::from(r.s))
            .collect(),
        Sequence::RepunitPrimes => {
            let max_s = if *cap == BigUint::from(0u32) { 0 } else { trit_count(cap) };
            let mut values = Vec::new();
            for record in search_repunit_prime_exponents(max_s, config).into_iter().filter(|r| r.is_positive()) {
                values.push(repunit3(record.s)?);
            }
            values
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use cantor_core::DisagreementDump;

    #[test]
    fn internal_errors_map_to_exit_two() {
        let dump = DisagreementDump {
            p: 13,
            digit_oracle: true,
            exponential: false,
            cyclotomic: true,
            digits: vec![0, 0, 2],
            q: Some(3),
            k: None,
            form: None,
        };
        assert!(matches!(Failure::from(CantorError::Disagreement(Box::new(dump))), Failure::Internal(_)));
        assert!(matches!(Failure::from(CantorError::Invariant("x".into())), Failure::Internal(_)));
        assert!(matches!(Failure::from(CantorError::MalformedLine(1)), Failure::User(_)));
    }
}
