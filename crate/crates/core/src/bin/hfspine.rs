use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde::Deserialize;

use hfspine::dcore::{Rational, RawProfile};
use hfspine::families::{lens_n1_profile, mp_profile, qm_profile, MpDescriptor};
use hfspine::format::{parse_gram, parse_profile, write_profile, write_raw_profile, ProfileDoc};
use hfspine::knots::VSequence;
use hfspine::lattice::{chain_lattice, coset_values, IntLattice, LatticeError, DEFAULT_BUDGET};
use hfspine::obstruct::verdict;
use hfspine::pi1::{
    brieskorn_presentation, fiber_word, normal_generation_check, seifert_data, NormalGeneration,
    DEFAULT_LIMIT,
};
use hfspine::report::{self, Pi1Json, SCHEMA, VERSION};
use hfspine::surgery::niwu_profile;
use hfspine::DProfile;

#[derive(Parser)]
#[command(name = "hfspine", version, about = "d-invariant profiles and the PL-sphere obstruction")]
struct Cli {
    /// TOML file with defaults for `decimal`, `json`, `limit` and `budget`.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Also render values with this many decimal digits.
    #[arg(long, global = true)]
    decimal: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compute a d-invariant profile.
    #[command(subcommand)]
    Profile(ProfileCmd),
    /// Run the obstruction on a profile file.
    Obstruct {
        #[arg(long)]
        profile: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Verdicts for M_p over a range of p and values of d(Y_p).
    ScanMp {
        #[arg(long, allow_hyphen_values = true)]
        pmin: i64,
        #[arg(long, allow_hyphen_values = true)]
        pmax: i64,
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true, default_value = "0")]
        dyp: Vec<i64>,
        #[arg(long)]
        json: bool,
    },
    /// Characteristic-vector maxima of a negative-definite lattice.
    Lattice {
        #[arg(long, conflicts_with = "gram", required_unless_present = "gram")]
        chain: Option<usize>,
        #[arg(long)]
        gram: Option<PathBuf>,
        #[arg(long)]
        budget: Option<u64>,
    },
    /// Normal generation of pi_1(Sigma(p,q,r)) by a singular fibre.
    Pi1 {
        #[arg(long, value_delimiter = ',')]
        triple: Vec<i64>,
        #[arg(long)]
        leg: usize,
        #[arg(long)]
        limit: Option<usize>,
        #[arg(long)]
        json: bool,
    },
    /// Recompute every headline result and mark each check.
    Report {
        #[arg(long)]
        budget: Option<u64>,
        #[arg(long)]
        limit: Option<usize>,
    },
}

#[derive(Subcommand)]
enum ProfileCmd {
    /// L(n,1)
    Lens {
        #[arg(long)]
        n: usize,
        #[command(flatten)]
        out: OutArg,
    },
    /// Circle bundle over RP^2 with Euler number m (unlabelled).
    Qm {
        #[arg(long, allow_hyphen_values = true)]
        m: i64,
        #[command(flatten)]
        out: OutArg,
    },
    /// n-surgery on a knot with the given V-sequence.
    Surgery {
        /// Comma separated V_0,V_1,...
        #[arg(long, conflicts_with = "v_file", required_unless_present = "v_file")]
        v: Option<String>,
        /// Profile file whose `v:` line supplies the sequence.
        #[arg(long)]
        v_file: Option<PathBuf>,
        #[arg(long)]
        n: usize,
        #[command(flatten)]
        out: OutArg,
    },
    /// Q_(-4p-3) # -Y_p with d(Y_p) given.
    Mp {
        #[arg(long, allow_hyphen_values = true)]
        p: i64,
        #[arg(long, allow_hyphen_values = true, default_value_t = 0)]
        dyp: i64,
        #[command(flatten)]
        out: OutArg,
    },
}

#[derive(Args)]
struct OutArg {
    /// Write the profile file here and print a table instead.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Deserialize, Default)]
#[serde(deny_unknown_fields)]
struct Config {
    decimal: Option<usize>,
    json: Option<bool>,
    limit: Option<usize>,
    budget: Option<u64>,
}

enum CliError {
    Invalid(String),
    Indeterminate(String),
}

impl<E: std::fmt::Display> From<E> for CliError {
    fn from(e: E) -> Self {
        CliError::Invalid(e.to_string())
    }
}

type CliResult = Result<String, CliError>;

fn read(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|e| CliError::Invalid(format!("{}: {e}", path.display())))
}

fn emit_labeled(p: &DProfile, v: Option<&VSequence>, out: &OutArg, digits: Option<usize>) -> CliResult {
    let text = write_profile(p, v);
    match &out.out {
        Some(path) => {
            fs::write(path, &text).map_err(|e| CliError::Invalid(format!("{}: {e}", path.display())))?;
            Ok(report::profile_table(p.values(), digits))
        }
        None => Ok(text),
    }
}

fn emit_raw(raw: &RawProfile, out: &OutArg, digits: Option<usize>) -> CliResult {
    let text = write_raw_profile(raw);
    match &out.out {
        Some(path) => {
            fs::write(path, &text).map_err(|e| CliError::Invalid(format!("{}: {e}", path.display())))?;
            Ok(report::raw_table(raw, digits))
        }
        None => Ok(text),
    }
}

fn profile(cmd: ProfileCmd, digits: Option<usize>) -> CliResult {
    match cmd {
        ProfileCmd::Lens { n, out } => emit_labeled(&lens_n1_profile(n)?, None, &out, digits),
        ProfileCmd::Qm { m, out } => emit_raw(&qm_profile(m), &out, digits),
        ProfileCmd::Surgery { v, v_file, n, out } => {
            if n == 0 {
                return Err(CliError::Invalid("surgery coefficient must be positive".into()));
            }
            let seq: VSequence = match (v, v_file) {
                (Some(v), _) => v.parse()?,
                (None, Some(path)) => match parse_profile(&read(&path)?)? {
                    ProfileDoc::Labeled { v: Some(v), .. } => v,
                    _ => return Err(CliError::Invalid(format!("{}: no `v:` line", path.display()))),
                },
                (None, None) => unreachable!("clap requires one of --v, --v-file"),
            };
            emit_labeled(&niwu_profile(&seq, n), Some(&seq), &out, digits)
        }
        ProfileCmd::Mp { p, dyp, out } => {
            emit_labeled(&mp_profile(MpDescriptor::new(p, dyp)?), None, &out, digits)
        }
    }
}

fn lattice(chain: Option<usize>, gram: Option<PathBuf>, budget: u64, digits: Option<usize>) -> CliResult {
    let l = match (&chain, &gram) {
        (Some(n), _) => chain_lattice(*n)?,
        (None, Some(path)) => IntLattice::new(parse_gram(&read(path)?)?)?,
        (None, None) => unreachable!("clap requires one of --chain, --gram"),
    };
    let values = match coset_values(&l, budget) {
        Ok(v) => v,
        Err(e @ LatticeError::SearchOverflow(_)) => return Err(CliError::Indeterminate(e.to_string())),
        Err(e) => return Err(e.into()),
    };
    let mut out = format!("rank {}, |det| {}\n", l.rank(), num_traits::Signed::abs(&l.det()));
    out.push_str("coset\tvalue\n");
    for (c, v) in &values {
        let rep: Vec<String> = c.representative.iter().map(ToString::to_string).collect();
        out.push_str(&format!("({})\t{}\n", rep.join(", "), report::show(v, digits)));
    }
    let status = match chain {
        Some(n) => {
            let mut got: Vec<Rational> = values.iter().map(|(_, v)| v.clone()).collect();
            got.sort();
            let mut want: Vec<Rational> = lens_n1_profile(n)?.values().to_vec();
            want.sort();
            if got == want {
                format!("exact: equals the d-invariants of L({n},1) as a multiset")
            } else {
                format!("MISMATCH against L({n},1)")
            }
        }
        None => "lower bounds only".to_string(),
    };
    out.push_str(&format!("status: {status}\n"));
    Ok(out)
}

fn pi1(triple: &[i64], leg: usize, limit: usize, json: bool) -> CliResult {
    let [p, q, r] = <[i64; 3]>::try_from(triple)
        .map_err(|_| CliError::Invalid("--triple needs exactly three integers".into()))?;
    let s = seifert_data(p, q, r)?;
    let pres = brieskorn_presentation(&s);
    let fiber = fiber_word(&s, leg)?;
    let outcome = normal_generation_check(p, q, r, leg, limit)?;
    let fiber_text = pres.format_word(&fiber.word);
    let body = if json {
        let (name, order) = match outcome {
            NormalGeneration::Yes => ("normally_generates", Some(1)),
            NormalGeneration::No(k) => ("does_not_normally_generate", Some(k)),
            NormalGeneration::Indeterminate(_) => ("indeterminate", None),
        };
        let doc = Pi1Json {
            schema: SCHEMA,
            version: VERSION,
            triple: [p, q, r],
            leg,
            fiber_word: fiber_text,
            outcome: name,
            order,
        };
        serde_json::to_string_pretty(&doc)? + "\n"
    } else {
        let [(a, a1), (b, b1), (c, c1)] = s.legs;
        let mut out = format!(
            "Sigma({p},{q},{r}) = S^2({}; ({a},{a1}), ({b},{b1}), ({c},{c1}))\n",
            s.e
        );
        let rels: Vec<String> = pres.relators().iter().map(|w| pres.format_word(w)).collect();
        out.push_str(&format!("relators: {}\n", rels.join(", ")));
        out.push_str(&format!("fibre of leg {leg}: {fiber_text}\n"));
        out.push_str(&match outcome {
            NormalGeneration::Yes => "quotient: trivial, the fibre normally generates\n".to_string(),
            NormalGeneration::No(k) => format!("quotient: order {k}, the fibre does not normally generate\n"),
            NormalGeneration::Indeterminate(l) => format!("quotient: indeterminate (more than {l} cosets)\n"),
        });
        out
    };
    match outcome {
        NormalGeneration::Indeterminate(_) => Err(CliError::Indeterminate(body)),
        _ => Ok(body),
    }
}

fn run(cli: Cli) -> CliResult {
    let config: Config = match &cli.config {
        Some(path) => toml::from_str(&read(path)?)?,
        None => Config::default(),
    };
    let digits = cli.decimal.or(config.decimal);
    let json_default = config.json.unwrap_or(false);
    let limit_default = config.limit.unwrap_or(DEFAULT_LIMIT);
    let budget_default = config.budget.unwrap_or(DEFAULT_BUDGET);
    match cli.command {
        Command::Profile(cmd) => profile(cmd, digits),
        Command::Obstruct { profile, json } => {
            let doc = parse_profile(&read(&profile)?)
                .map_err(|e| CliError::Invalid(format!("{}: {e}", profile.display())))?;
            let v = verdict(&doc.to_raw());
            Ok(if json || json_default {
                report::verdict_json(&v)
            } else {
                report::verdict_text(&v, digits)
            })
        }
        Command::ScanMp { pmin, pmax, dyp, json } => {
            if pmin > pmax {
                return Err(CliError::Invalid(format!("empty range {pmin}..{pmax}")));
            }
            let rows = report::scan_mp(pmin, pmax, &dyp)?;
            Ok(if json || json_default { report::scan_json(&rows) } else { report::scan_text(&rows) })
        }
        Command::Lattice { chain, gram, budget } => {
            lattice(chain, gram, budget.unwrap_or(budget_default), digits)
        }
        Command::Pi1 { triple, leg, limit, json } => {
            pi1(&triple, leg, limit.unwrap_or(limit_default), json || json_default)
        }
        Command::Report { budget, limit } => Ok(report::full_report(
            budget.unwrap_or(budget_default),
            limit.unwrap_or(limit_default),
        )?),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(CliError::Invalid(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(CliError::Indeterminate(msg)) => {
            print!("{msg}");
            eprintln!("indeterminate outcome");
            ExitCode::from(3)
        }
    }
}
