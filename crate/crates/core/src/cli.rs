//! Command line driver. Exit codes: 0 success or SAT, 1 UNSAT, 2 invalid
//! input, 3 usage error. Diagnostics go to stderr.

use std::fs;
use std::io::{Read, Write};

use clap::{Parser, Subcommand};

use crate::charpair::{CharacteristicPair, Omniorientation};
use crate::constructions::{cp2_sum, cpn, hirzebruch, product, vertex_cut, ConstructionError};
use crate::format::{omniorientation_line, parse, serialize, vertex_line, PairDocument};
use crate::invariants::report as invariant_report;
use crate::positivity::{decide_positive, PositivityResult};
use crate::sign::Sign;

pub const EXIT_OK: i32 = 0;
pub const EXIT_UNSAT: i32 = 1;
pub const EXIT_INVALID: i32 = 2;
pub const EXIT_USAGE: i32 = 3;

#[derive(Debug, Parser)]
#[command(
    name = "qtm",
    version,
    about = "Quasitoric manifolds: signs, positivity and invariants"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Check a pair file and print its face numbers.
    Validate { file: String },
    /// Print fixed-point signs for the file's omniorientation.
    Signs { file: String },
    /// Decide whether a positive omniorientation exists.
    Decide { file: String },
    /// Euler characteristic, top Chern number, and surface invariants.
    Invariants { file: String },
    /// Everything above in one report.
    Report { file: String },
    /// Build an example: cpn N | hirzebruch A | product F1 F2 |
    /// vertex-cut F J1..Jn | cp2k K
    Construct {
        name: String,
        #[arg(allow_negative_numbers = true)]
        params: Vec<String>,
        /// Output file (`-` for stdout).
        #[arg(short = 'o', long = "output", default_value = "-")]
        output: String,
    },
}

enum Failure {
    Usage(String),
    Invalid(String),
}

impl Failure {
    fn code(&self) -> i32 {
        match self {
            Failure::Usage(_) => EXIT_USAGE,
            Failure::Invalid(_) => EXIT_INVALID,
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Usage(m) | Failure::Invalid(m) => m,
        }
    }
}

fn invalid(e: impl std::fmt::Display) -> Failure {
    Failure::Invalid(e.to_string())
}

struct Io<'a> {
    stdin: &'a mut dyn Read,
    stdout: &'a mut dyn Write,
}

impl Io<'_> {
    fn read(&mut self, path: &str) -> Result<String, Failure> {
        if path == "-" {
            let mut text = String::new();
            self.stdin
                .read_to_string(&mut text)
                .map_err(|e| invalid(format!("stdin: {e}")))?;
            Ok(text)
        } else {
            fs::read_to_string(path).map_err(|e| invalid(format!("{path}: {e}")))
        }
    }

    fn load(
        &mut self,
        path: &str,
    ) -> Result<(CharacteristicPair, Option<Omniorientation>), Failure> {
        let text = self.read(path)?;
        let doc = parse(&text).map_err(|e| invalid(format!("{path}: {e}")))?;
        let pair = doc.to_pair().map_err(|e| invalid(format!("{path}: {e}")))?;
        Ok((pair, doc.omniorientation))
    }

    fn emit(&mut self, text: &str) -> Result<(), Failure> {
        self.stdout
            .write_all(text.as_bytes())
            .map_err(|e| invalid(format!("stdout: {e}")))
    }
}

/// Runs the CLI on `args` (including the program name) and returns the exit
/// code.
pub fn run(
    args: &[String],
    stdin: &mut dyn Read,
    stdout: &mut dyn Write,
    stderr: &mut dyn Write,
) -> i32 {
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(stdout, "{}", e.render());
                    EXIT_OK
                }
                _ => {
                    let _ = write!(stderr, "{}", e.render());
                    EXIT_USAGE
                }
            };
        }
    };
    let mut io = Io { stdin, stdout };
    match dispatch(cli.command, &mut io) {
        Ok(code) => code,
        Err(failure) => {
            let _ = writeln!(stderr, "error: {}", failure.message());
            failure.code()
        }
    }
}

fn dispatch(command: Command, io: &mut Io<'_>) -> Result<i32, Failure> {
    match command {
        Command::Validate { file } => {
            let (pair, _) = io.load(&file)?;
            io.emit(&validate_section(&pair))?;
            Ok(EXIT_OK)
        }
        Command::Signs { file } => {
            let (pair, omni) = io.load(&file)?;
            let omni = omni.ok_or_else(|| invalid(format!("{file}: no omniorientation line")))?;
            io.emit(&signs_section(&pair, &omni))?;
            Ok(EXIT_OK)
        }
        Command::Decide { file } => {
            let (pair, _) = io.load(&file)?;
            let (text, code) = decide_section(&pair)?;
            io.emit(&text)?;
            Ok(code)
        }
        Command::Invariants { file } => {
            let (pair, omni) = io.load(&file)?;
            io.emit(&invariants_section(&pair, omni)?)?;
            Ok(EXIT_OK)
        }
        Command::Report { file } => {
            let (pair, omni) = io.load(&file)?;
            let mut text = validate_section(&pair);
            if let Some(omni) = &omni {
                text.push_str(&signs_section(&pair, omni));
            }
            let (decision, code) = decide_section(&pair)?;
            text.push_str(&decision);
            text.push_str(&invariants_section(&pair, omni)?);
            io.emit(&text)?;
            Ok(code)
        }
        Command::Construct {
            name,
            params,
            output,
        } => {
            let pair = construct(&name, &params, io)?;
            let text = serialize(&PairDocument::from_pair(&pair, None));
            if output == "-" {
                io.emit(&text)?;
            } else {
                fs::write(&output, text).map_err(|e| invalid(format!("{output}: {e}")))?;
            }
            Ok(EXIT_OK)
        }
    }
}

fn join<T: ToString>(items: &[T]) -> String {
    items.iter().map(T::to_string).collect::<Vec<_>>().join(" ")
}

fn validate_section(pair: &CharacteristicPair) -> String {
    let poly = pair.polytope();
    format!(
        "valid\ndim {}\nfacets {}\nvertices {}\nf_vector {}\nh_vector {}\n",
        poly.dim(),
        poly.num_facets(),
        poly.num_vertices(),
        join(&poly.f_vector()),
        join(&poly.h_vector()),
    )
}

fn signs_section(pair: &CharacteristicPair, omni: &Omniorientation) -> String {
    let signs = pair.all_signs(omni);
    let mut out = format!("{}\n", omniorientation_line(omni));
    for (v, s) in signs.iter().enumerate() {
        out.push_str(&format!(
            "{} sign {}\n",
            vertex_line(pair.polytope().vertex(v)),
            s
        ));
    }
    let positive = signs.iter().all(|&s| s == Sign::Plus);
    out.push_str(&format!("positive {positive}\n"));
    out
}

fn decide_section(pair: &CharacteristicPair) -> Result<(String, i32), Failure> {
    let result = decide_positive(pair).map_err(invalid)?;
    let count = result.count();
    match result {
        PositivityResult::Sat {
            certificate,
            kernel_dim,
        } => Ok((
            format!(
                "SAT\n{}\nkernel_dim {kernel_dim}\ncount {count}\n",
                omniorientation_line(&certificate)
            ),
            EXIT_OK,
        )),
        PositivityResult::Unsat { witness } => {
            let mut out = format!("UNSAT\nwitness {}\n", witness.len());
            for v in witness {
                out.push_str(&vertex_line(pair.polytope().vertex(v)));
                out.push('\n');
            }
            Ok((out, EXIT_UNSAT))
        }
    }
}

/// Omniorientation used for invariants: the file's own, else a positive one
/// when it exists, else all-plus.
fn reference_omniorientation(
    pair: &CharacteristicPair,
    given: Option<Omniorientation>,
) -> Result<(Omniorientation, &'static str), Failure> {
    if let Some(omni) = given {
        return Ok((omni, "file"));
    }
    match decide_positive(pair).map_err(invalid)? {
        PositivityResult::Sat { certificate, .. } => Ok((certificate, "certificate")),
        PositivityResult::Unsat { .. } => {
            Ok((Omniorientation::all_plus(pair.num_facets()), "all-plus"))
        }
    }
}

fn invariants_section(
    pair: &CharacteristicPair,
    given: Option<Omniorientation>,
) -> Result<String, Failure> {
    let (omni, source) = reference_omniorientation(pair, given)?;
    let r = invariant_report(pair, &omni).map_err(invalid)?;
    let mut out = format!("{} # {source}\n", omniorientation_line(&omni));
    out.push_str(&format!(
        "euler = {}\nchern_top = {}\n",
        r.euler, r.chern_top
    ));
    if let (Some(sigma), Some(todd), Some(acs)) = (r.signature, &r.todd, r.almost_complex_4d) {
        out.push_str(&format!(
            "signature = {sigma}\ntodd = {todd}\nalmost_complex_4d = {acs}\n"
        ));
    }
    Ok(out)
}

fn param<T: std::str::FromStr>(name: &str, params: &[String], i: usize) -> Result<T, Failure> {
    let raw = params
        .get(i)
        .ok_or_else(|| Failure::Usage(format!("construct {name}: missing parameter {}", i + 1)))?;
    raw.parse()
        .map_err(|_| Failure::Usage(format!("construct {name}: bad parameter `{raw}`")))
}

fn expect_count(name: &str, params: &[String], n: usize) -> Result<(), Failure> {
    if params.len() != n {
        return Err(Failure::Usage(format!(
            "construct {name}: expected {n} parameter(s), got {}",
            params.len()
        )));
    }
    Ok(())
}

fn construct(
    name: &str,
    params: &[String],
    io: &mut Io<'_>,
) -> Result<CharacteristicPair, Failure> {
    let built: Result<CharacteristicPair, ConstructionError> = match name {
        "cpn" => {
            expect_count(name, params, 1)?;
            cpn(param(name, params, 0)?)
        }
        "hirzebruch" => {
            expect_count(name, params, 1)?;
            hirzebruch(param(name, params, 0)?)
        }
        "cp2k" => {
            expect_count(name, params, 1)?;
            cp2_sum(param(name, params, 0)?)
        }
        "product" => {
            expect_count(name, params, 2)?;
            let (a, _) = io.load(&params[0])?;
            let (b, _) = io.load(&params[1])?;
            product(&a, &b)
        }
        "vertex-cut" => {
            if params.is_empty() {
                return Err(Failure::Usage("construct vertex-cut: missing file".into()));
            }
            let (pair, _) = io.load(&params[0])?;
            let facets = (1..params.len())
                .map(|i| param::<usize>(name, params, i))
                .collect::<Result<Vec<_>, _>>()?;
            let v = pair
                .polytope()
                .vertex_index(&facets)
                .ok_or_else(|| invalid(format!("no vertex {facets:?}")))?;
            vertex_cut(&pair, v)
        }
        other => {
            return Err(Failure::Usage(format!(
                "unknown construction `{other}` (cpn, hirzebruch, product, vertex-cut, cp2k)"
            )))
        }
    };
    built.map_err(invalid)
}
