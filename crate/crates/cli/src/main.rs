//! Batch front end: certificate verification, modular reduction sweeps,
//! sentence emission and toy-scale decision, and root-system inspection.
//!
//! Exit codes are the machine contract: 0 pass / SAT, 1 fail / UNSAT,
//! 2 inconclusive, 3 usage or input error. Output is deterministic for
//! identical inputs; `--report` additionally writes a JSON report.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use weylcert::gkcert::{
    reduce_mod_p, verify_certificate, CertError, VerifyConfig, WitnessCertificate,
};
use weylcert::ncalg::FamilyInstance;
use weylcert::polycore::{is_prime, Domain};
use weylcert::rootsys::{weyl_group, RootSystem, TypeLabel, DEFAULT_WEYL_CAP};
use weylcert::sentc::{
    decide_sentence, emit_sentence, BoundProfile, DecideOptions, Decision, ExistentialSentence,
    SentError,
};

const ENV_BOUND_CEILING: &str = "WEYLCERT_BOUND_CEILING";

#[derive(Parser)]
#[command(
    name = "weylcert",
    about = "Exact birational witness certificates for Weyl and enveloping algebras",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Verify a witness certificate exactly.
    Verify {
        /// Certificate file (UTF-8 JSON).
        cert: PathBuf,
        /// Override the Ore-solve bound ceiling (defaults to the
        /// certificate's own, or the WEYLCERT_BOUND_CEILING variable).
        #[arg(long)]
        bound_ceiling: Option<usize>,
        /// Accept generator lists spanning the next filtration level.
        #[arg(long)]
        extended_generator_pool: bool,
        /// Write the machine-readable JSON report here.
        #[arg(long)]
        report: Option<PathBuf>,
    },
    /// Reduce a certificate modulo every prime in a range and re-verify.
    ReduceModP {
        /// Certificate file (UTF-8 JSON).
        cert: PathBuf,
        /// Inclusive prime range, e.g. 3..97.
        #[arg(long)]
        primes: String,
        /// Write the machine-readable JSON report here.
        #[arg(long)]
        report: Option<PathBuf>,
    },
    /// Emit the existential sentence for a family at explicit bounds.
    EmitSentence {
        /// Family spec: enveloping:<T><rank>, invariants:<T><rank>, or
        /// weyl:<n>,<l> (e.g. enveloping:A1, invariants:A1, weyl:0,1).
        family: String,
        /// Bound profile (JSON).
        #[arg(long)]
        bounds: PathBuf,
        /// Output sentence file.
        #[arg(short, long)]
        out: PathBuf,
    },
    /// Decide a sentence over the algebraic closure (toy bounds only).
    Decide {
        /// Sentence file (UTF-8 JSON).
        sentence: PathBuf,
        /// Characteristic: 0 or a prime.
        #[arg(long = "char")]
        characteristic: u64,
        /// Groebner S-pair budget before giving up as inconclusive.
        #[arg(long)]
        pair_budget: Option<usize>,
    },
    /// Root system utilities.
    Rootsys {
        #[command(subcommand)]
        command: RootsysCommand,
    },
}

#[derive(Subcommand)]
enum RootsysCommand {
    /// Print root counts, Weyl group order and the Cartan matrix.
    Info {
        /// Dynkin datum, e.g. A2, B2, G2.
        datum: String,
    },
}

/// Outcome of one command: exit code, human-readable report, and an optional
/// machine-readable report path that was written.
struct CommandResult {
    exit: u8,
    text: String,
    report_path: Option<PathBuf>,
}

impl CommandResult {
    fn ok(text: String) -> Self {
        CommandResult {
            exit: 0,
            text,
            report_path: None,
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(result) => {
            print!("{}", result.text);
            if let Some(path) = &result.report_path {
                eprintln!("report written to {}", path.display());
            }
            ExitCode::from(result.exit)
        }
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(3)
        }
    }
}

fn read_text(path: &Path) -> anyhow::Result<String> {
    std::fs::read_to_string(path)
        .map_err(|e| anyhow::anyhow!("cannot read {}: {e}", path.display()))
}

fn env_bound_ceiling() -> Option<usize> {
    std::env::var(ENV_BOUND_CEILING)
        .ok()
        .and_then(|v| v.parse().ok())
}

fn run(command: Command) -> anyhow::Result<CommandResult> {
    match command {
        Command::Verify {
            cert,
            bound_ceiling,
            extended_generator_pool,
            report,
        } => {
            let parsed = WitnessCertificate::from_json(&read_text(&cert)?)?;
            let config = VerifyConfig {
                bound_ceiling: bound_ceiling.or_else(env_bound_ceiling),
                extended_generator_pool,
            };
            let r = verify_certificate(&parsed, &config);
            let exit = match r.overall {
                weylcert::gkcert::CheckStatus::Pass => 0,
                weylcert::gkcert::CheckStatus::Fail => 1,
                _ => 2,
            };
            let mut report_path = None;
            if let Some(path) = report {
                std::fs::write(&path, r.to_json())
                    .map_err(|e| anyhow::anyhow!("cannot write {}: {e}", path.display()))?;
                report_path = Some(path);
            }
            Ok(CommandResult {
                exit,
                text: r.to_text(),
                report_path,
            })
        }
        Command::ReduceModP {
            cert,
            primes,
            report,
        } => {
            let parsed = WitnessCertificate::from_json(&read_text(&cert)?)?;
            let (lo, hi) = parse_prime_range(&primes)?;
            let mut text = format!("modular sweep over primes {lo}..{hi}\n");
            let mut entries = Vec::new();
            let mut any_fail = false;
            let mut any_inconclusive = false;
            for p in lo..=hi {
                if !is_prime(p) {
                    continue;
                }
                match reduce_mod_p(&parsed, p) {
                    Err(CertError::BadPrime { location, .. }) => {
                        let _ = writeln!(text, "  p = {p:<4} bad prime ({location})");
                        entries.push(serde_json::json!({
                            "p": p, "status": "bad_prime", "location": location,
                        }));
                    }
                    Err(e) => return Err(e.into()),
                    Ok(reduced) => {
                        let r = verify_certificate(&reduced, &VerifyConfig::default());
                        let status = match r.overall {
                            weylcert::gkcert::CheckStatus::Pass => "pass",
                            weylcert::gkcert::CheckStatus::Fail => {
                                any_fail = true;
                                "fail"
                            }
                            _ => {
                                any_inconclusive = true;
                                "inconclusive"
                            }
                        };
                        let _ = writeln!(text, "  p = {p:<4} {status}");
                        entries.push(serde_json::json!({ "p": p, "status": status }));
                    }
                }
            }
            let exit = if any_fail {
                1
            } else if any_inconclusive {
                2
            } else {
                0
            };
            let mut report_path = None;
            if let Some(path) = report {
                let doc = serde_json::to_string_pretty(&entries)?;
                std::fs::write(&path, doc)
                    .map_err(|e| anyhow::anyhow!("cannot write {}: {e}", path.display()))?;
                report_path = Some(path);
            }
            Ok(CommandResult {
                exit,
                text,
                report_path,
            })
        }
        Command::EmitSentence { family, bounds, out } => {
            let fam = parse_family(&family)?;
            let profile: BoundProfile = serde_json::from_str(&read_text(&bounds)?)
                .map_err(|e| anyhow::anyhow!("bad bound profile: {e}"))?;
            let sentence = emit_sentence(&fam, &profile)?;
            std::fs::write(&out, sentence.to_json())
                .map_err(|e| anyhow::anyhow!("cannot write {}: {e}", out.display()))?;
            Ok(CommandResult::ok(format!(
                "sentence with {} unknowns and {} equations written to {}\n",
                sentence.arity(),
                sentence.equations.len(),
                out.display()
            )))
        }
        Command::Decide {
            sentence,
            characteristic,
            pair_budget,
        } => {
            if characteristic != 0 && !is_prime(characteristic) {
                anyhow::bail!("characteristic must be 0 or a prime");
            }
            let parsed = ExistentialSentence::from_json(&read_text(&sentence)?)?;
            let mut opts = DecideOptions::default();
            if let Some(b) = pair_budget {
                opts.pair_budget = Some(b);
            }
            match decide_sentence(&parsed, characteristic, &opts) {
                Ok(Decision::Sat) => Ok(CommandResult::ok(format!(
                    "SAT over the algebraic closure (characteristic {characteristic})\n"
                ))),
                Ok(Decision::Unsat) => Ok(CommandResult {
                    exit: 1,
                    text: format!(
                        "UNSAT over the algebraic closure (characteristic {characteristic})\n"
                    ),
                    report_path: None,
                }),
                Err(SentError::ResourceCeiling(msg)) => Ok(CommandResult {
                    exit: 2,
                    text: format!("inconclusive: {msg}\n"),
                    report_path: None,
                }),
                Err(e) => Err(e.into()),
            }
        }
        Command::Rootsys {
            command: RootsysCommand::Info { datum },
        } => {
            let (kind, rank) = parse_datum(&datum)?;
            let rs = RootSystem::build(kind, rank)?;
            let group = weyl_group(&rs, DEFAULT_WEYL_CAP)?;
            let mut text = format!("root system {}{}\n", kind, rank);
            let _ = writeln!(text, "  rank:            {}", rs.rank());
            let _ = writeln!(text, "  roots:           {}", rs.num_roots());
            let _ = writeln!(text, "  positive roots:  {}", rs.num_positive());
            let _ = writeln!(text, "  weyl order:      {}", group.len());
            let _ = writeln!(text, "  dim g = 2N + n:  {}", rs.dimension());
            let _ = writeln!(text, "  cartan matrix:");
            for row in rs.cartan_matrix() {
                let cells: Vec<String> = row.iter().map(|v| format!("{v:>3}")).collect();
                let _ = writeln!(text, "    [{}]", cells.join(" "));
            }
            Ok(CommandResult::ok(text))
        }
    }
}

fn parse_prime_range(s: &str) -> anyhow::Result<(u64, u64)> {
    let (lo, hi) = s
        .split_once("..")
        .ok_or_else(|| anyhow::anyhow!("prime range must look like 3..97"))?;
    Ok((lo.trim().parse()?, hi.trim().parse()?))
}

fn parse_datum(s: &str) -> anyhow::Result<(TypeLabel, usize)> {
    let mut chars = s.chars();
    let c = chars
        .next()
        .ok_or_else(|| anyhow::anyhow!("empty Dynkin datum"))?;
    let kind = TypeLabel::from_char(c)?;
    let rank: usize = chars.as_str().parse()?;
    Ok((kind, rank))
}

fn parse_family(s: &str) -> anyhow::Result<std::sync::Arc<FamilyInstance>> {
    let (kind, rest) = s
        .split_once(':')
        .ok_or_else(|| anyhow::anyhow!("family spec must look like enveloping:A1 or weyl:0,1"))?;
    match kind {
        "enveloping" => {
            let (t, r) = parse_datum(rest)?;
            let rs = RootSystem::build(t, r)?;
            Ok(FamilyInstance::enveloping(rs, Domain::Rat)?)
        }
        "invariants" => {
            let (t, r) = parse_datum(rest)?;
            let rs = RootSystem::build(t, r)?;
            Ok(FamilyInstance::weyl_invariants(
                rs,
                DEFAULT_WEYL_CAP,
                Domain::Rat,
            )?)
        }
        "weyl" => {
            let (n, l) = rest
                .split_once(',')
                .ok_or_else(|| anyhow::anyhow!("weyl spec must look like weyl:<n>,<l>"))?;
            Ok(FamilyInstance::weyl(
                n.trim().parse()?,
                l.trim().parse()?,
                Domain::Rat,
            ))
        }
        other => anyhow::bail!("unknown family kind {other:?}"),
    }
}
