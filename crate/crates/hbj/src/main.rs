use std::fs;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use handlebody::diagrams::{self, BraidWord};
use handlebody::envelope::{special_construct, Expansion};
use handlebody::foxcalc::{fox_left_word, fox_right_word, jacobian, magnus};
use handlebody::groupring::{Z, QG};
use handlebody::intersect::{pairing, psi, theta_pair};
use handlebody::johnson::{jf_degree, tau, varrho};
use handlebody::liefree::AElt;
use handlebody::selftest;
use handlebody::words::{catalog, verify_pair_automorphism, Alphabet, Endo};
use handlebody::Error;

#[derive(Parser)]
#[command(name = "hbj", version, about = "Johnson-type invariants of handlebody groups")]
struct Cli {
    #[arg(long, global = true, default_value_t = 3)]
    genus: usize,
    /// Degree or truncation, depending on the command.
    #[arg(long, global = true, default_value_t = 2)]
    deg: usize,
    #[arg(long, global = true, value_enum, default_value_t = ExpansionKind::Standard)]
    expansion: ExpansionKind,
    /// JSON file holding the expansion when `--expansion file`.
    #[arg(long, global = true)]
    expansion_file: Option<String>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum ExpansionKind {
    Standard,
    Special,
    File,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Checks that an endomorphism is an automorphism of the pair fixing the boundary.
    Verify { endo: String },
    /// Magnus matrix of an element of the twist group.
    Magnus { endo: String },
    /// Position in the Johnson filtration, truncated at `--deg`.
    Jfdegree { endo: String },
    /// Johnson homomorphism of degree `--deg`.
    Tau { endo: String },
    /// Logarithm of the expansion-conjugated action, degrees up to `--deg`.
    Varrho { endo: String },
    /// Pairing of an element of Z[F] (in x-letters) with an element of A.
    Pairing { x: String, a: String },
    /// Theta of an element of Z[F] against an element of A.
    Theta { x: String, a: String },
    /// Psi of two elements of A.
    Psi { a: String, b: String },
    /// Bracket of two tree combinations in s-expression form.
    TreeBracket { d: String, e: String },
    /// Degree-one value of the twist along a meridian with class `word`.
    DiskTwist { word: String },
    /// Compares both sides of the Kawazumi-Kuno analogue for a twist along `word`.
    KkCheck { endo: String, word: String },
    /// Milnor invariant of a pure braid commutator like `[t12,t23]`.
    Milnor { word: String },
    /// The upper-left Magnus entry at x_i = t for the twist along `word`.
    Mccullough { word: String },
    /// Runs the acceptance suite.
    Selftest,
    /// Left and right Fox derivatives of a surface word along generator `k`.
    Fox { word: String, k: usize },
    /// Jacobian matrix of an endomorphism.
    Jacobian { endo: String },
}

fn read_arg(s: &str) -> Result<String, Error> {
    match s.strip_prefix('@') {
        Some(path) => fs::read_to_string(path).map_err(|e| Error::Parse(format!("cannot read {path}: {e}"))),
        None => Ok(s.to_string()),
    }
}

fn endo(g: usize, s: &str) -> Result<Endo, Error> {
    catalog::parse_product(g, &read_arg(s)?)
}

fn expansion(cli: &Cli, n: usize) -> Result<Expansion, Error> {
    match cli.expansion {
        ExpansionKind::Standard => Ok(Expansion::standard(cli.genus, n)),
        ExpansionKind::Special => special_construct(cli.genus, n),
        ExpansionKind::File => {
            let path = cli
                .expansion_file
                .as_deref()
                .ok_or_else(|| Error::Parse("--expansion file needs --expansion-file".into()))?;
            let text = fs::read_to_string(path).map_err(|e| Error::Parse(format!("cannot read {path}: {e}")))?;
            let th = Expansion::from_json(&text)?;
            if th.g != cli.genus {
                return Err(Error::Precondition {
                    code: "GENUS_MISMATCH",
                    detail: "expansion file has a different genus".into(),
                });
            }
            Ok(th)
        }
    }
}

/// Runs the command; the flag reports a failed self-check.
fn run(cli: &Cli) -> Result<(String, bool), Error> {
    let g = cli.genus;
    if g == 0 || cli.deg == 0 {
        return Err(Error::Parse("--genus and --deg must be at least 1".into()));
    }
    let free = Alphabet::Free(g);
    let surface = Alphabet::Surface(g);
    let out = match &cli.command {
        Command::Verify { endo: e } => verify_pair_automorphism(&endo(g, e)?).code().to_string(),
        Command::Magnus { endo: e } => magnus(&endo(g, e)?)?.format(&free),
        Command::Jfdegree { endo: e } => jf_degree(&endo(g, e)?, cli.deg)?.to_string(),
        Command::Tau { endo: e } => tau(&endo(g, e)?, cli.deg)?.to_string(),
        Command::Varrho { endo: e } => {
            let th = expansion(cli, cli.deg + 1)?;
            varrho(&endo(g, e)?, &th, cli.deg)?.to_string()
        }
        Command::Pairing { x, a } => {
            let x = QG::parse(&free, &read_arg(x)?)?;
            pairing(g, &x, &AElt::parse(g, &read_arg(a)?)?)?.format(&free)
        }
        Command::Theta { x, a } => {
            let x = QG::parse(&free, &read_arg(x)?)?;
            theta_pair(&x, &AElt::parse(g, &read_arg(a)?)?).format()
        }
        Command::Psi { a, b } => psi(&AElt::parse(g, &read_arg(a)?)?, &AElt::parse(g, &read_arg(b)?)?).format(),
        Command::TreeBracket { d, e } => {
            let d = diagrams::eta_tree(g, &diagrams::parse_trees(g, &read_arg(d)?)?)?;
            let e = diagrams::eta_tree(g, &diagrams::parse_trees(g, &read_arg(e)?)?)?;
            let b = diagrams::tree_bracket(&d, &e)?;
            if !diagrams::bracket_oracle(&d, &e)? {
                return Err(Error::Internal("tree bracket disagrees with the derivation bracket".into()));
            }
            b.to_string()
        }
        Command::DiskTwist { word } => {
            diagrams::disk_twist_tau1(g, &surface.parse(&read_arg(word)?)?)?.to_string()
        }
        Command::KkCheck { endo: e, word } => {
            let th = expansion(cli, cli.deg + 1)?;
            let u = surface.parse(&read_arg(word)?)?;
            let lhs = varrho(&endo(g, e)?, &th, cli.deg)?;
            let rhs = diagrams::kk_rhs(&th, &u, cli.deg)?;
            if lhs != rhs {
                return Err(Error::Internal(format!("sides differ:\n{}", lhs.sub(&rhs))));
            }
            format!("equal\n{lhs}")
        }
        Command::Milnor { word } => {
            let w = BraidWord::parse(&read_arg(word)?)?;
            let mu = diagrams::milnor_mu(g, &w)?;
            let ok = diagrams::milnor_square_check(g, &w)?;
            if !ok {
                return Err(Error::Internal("Milnor square does not commute".into()));
            }
            format!("{mu}\nsquare: commutes")
        }
        Command::Mccullough { word } => {
            let d = diagrams::disk_twist_tau1(g, &surface.parse(&read_arg(word)?)?)?;
            diagrams::mccullough_m(&d)?.format()
        }
        Command::Selftest => {
            let mut lines = Vec::new();
            let mut all = true;
            for o in selftest::run_all() {
                all &= o.pass;
                lines.push(format!(
                    "{} {:>2} {} ({:.2} s): {}",
                    if o.pass { "PASS" } else { "FAIL" },
                    o.id,
                    o.name,
                    o.elapsed.as_secs_f64(),
                    o.detail
                ));
            }
            return Ok((lines.join("\n"), !all));
        }
        Command::Fox { word, k } => {
            let w = surface.parse(&read_arg(word)?)?;
            if *k == 0 || *k > 2 * g {
                return Err(Error::Parse(format!("generator index {k} out of range")));
            }
            format!(
                "left: {}\nright: {}",
                fox_left_word::<Z>(&w, *k).format(&surface),
                fox_right_word::<Z>(&w, *k).format(&surface)
            )
        }
        Command::Jacobian { endo: e } => jacobian(&endo(g, e)?).format(&surface),
    };
    Ok((out, false))
}

fn command_name(c: &Command) -> &'static str {
    match c {
        Command::Verify { .. } => "verify",
        Command::Magnus { .. } => "magnus",
        Command::Jfdegree { .. } => "jfdegree",
        Command::Tau { .. } => "tau",
        Command::Varrho { .. } => "varrho",
        Command::Pairing { .. } => "pairing",
        Command::Theta { .. } => "theta",
        Command::Psi { .. } => "psi",
        Command::TreeBracket { .. } => "tree-bracket",
        Command::DiskTwist { .. } => "disk-twist",
        Command::KkCheck { .. } => "kk-check",
        Command::Milnor { .. } => "milnor",
        Command::Mccullough { .. } => "mccullough",
        Command::Selftest => "selftest",
        Command::Fox { .. } => "fox",
        Command::Jacobian { .. } => "jacobian",
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let name = command_name(&cli.command);
    let (text, status, code) = match run(&cli) {
        Ok((out, false)) => (out, 0, "OK"),
        Ok((out, true)) => (out, 4, "SELFTEST_FAILED"),
        Err(e) => {
            let status = match e {
                Error::Parse(_) => 2,
                Error::Precondition { .. } => 3,
                Error::Internal(_) => 4,
            };
            (e.to_string(), status, e.code())
        }
    };
    match cli.format {
        Format::Text if status == 0 || code == "SELFTEST_FAILED" => println!("{text}"),
        Format::Text => eprintln!("{text}"),
        Format::Json => {
            let doc = serde_json::json!({
                "schema": 1,
                "command": name,
                "genus": cli.genus,
                "deg": cli.deg,
                "status": code,
                "output": text,
            });
            println!("{}", serde_json::to_string_pretty(&doc).expect("json value serializes"));
        }
    }
    ExitCode::from(status)
}
