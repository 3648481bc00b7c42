//! Thin command line front end over the library: file parsing, report
//! emission, exit codes.  All substance lives in the library modules.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use bsato::arrangement::{Arrangement, DEFAULT_BUDGET};
use bsato::fs::{bs_pair_check, euler_root_witness, BsPair, FsElement};
use bsato::homog::coordinate_screen;
use bsato::lattice::{aomoto_betti, char_poly, chi_projective, os_nbc};
use bsato::parse::{parse_bpoly, parse_operator, parse_polynomial};
use bsato::poly::{Polynomial, TermRecord};
use bsato::rat::{parse_rat, Rat};
use bsato::report::{
    AnalysisReport, AnnihilatorReport, ArrangementFile, BsCheckReport, EulerWitnessReport,
    FsApplyReport, IdealCheckReport, LatticeReport, NormalizeReport, ScreenJson,
};
use bsato::Error;

#[derive(Parser)]
#[command(
    name = "bsato",
    version,
    about = "exact checks for b-function root certificates"
)]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,
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
    /// Full arrangement pipeline: dense edges, the nonresonance condition,
    /// epsilon weights, mu, residues, verdict.
    AnalyzeArrangement {
        /// Arrangement JSON file with fields n, forms, optional mults.
        file: PathBuf,
        /// Cap on flat enumeration (number of forms).
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: usize,
    },
    /// Normal form and anti-normal form of an operator.
    WeylNormalize {
        /// Operator text, e.g. "d1*x1 + s".
        #[arg(allow_hyphen_values = true)]
        op: String,
        /// Number of variables (default: inferred from the indices used).
        #[arg(long)]
        n: Option<usize>,
    },
    /// Membership of an s-free operator in the left ideal generated by the
    /// coordinate functions, with the sigma invariant.
    IdealCheck {
        /// Operator text; must not mention s.
        #[arg(allow_hyphen_values = true)]
        op: String,
        #[arg(long)]
        n: Option<usize>,
    },
    /// Does P annihilate f^s?
    AnnihilatorCheck {
        /// Polynomial text.
        #[arg(long, allow_hyphen_values = true)]
        f: String,
        /// Operator text.
        #[arg(long = "P", allow_hyphen_values = true)]
        p: String,
    },
    /// Verify the pair identity P f^{s+1} = b(s) f^s.
    BsCheck {
        /// Polynomial text.
        #[arg(long, allow_hyphen_values = true)]
        f: String,
        /// Operator text.
        #[arg(long = "P", allow_hyphen_values = true)]
        p: String,
        /// Polynomial in s, e.g. "(s+1)^2".
        #[arg(long, allow_hyphen_values = true)]
        b: String,
    },
    /// Apply an operator to f^s and print the result.
    FsApply {
        /// Polynomial text.
        #[arg(long, allow_hyphen_values = true)]
        f: String,
        /// Operator text.
        #[arg(long = "P", allow_hyphen_values = true)]
        p: String,
    },
    /// Check s f^s = -(n/d) f^s + (1/d) sum_i d_i (x_i f^s) for homogeneous f.
    EulerWitness {
        /// Polynomial text.
        #[arg(long, allow_hyphen_values = true)]
        f: String,
    },
    /// Euler-type relations, bidegree-pure splits, and separability over the
    /// coordinate bipartitions of a homogeneous polynomial.
    HomogScreen {
        /// JSON file holding a list of {coeff, exps} terms.
        #[arg(required_unless_present = "f")]
        file: Option<PathBuf>,
        /// Inline polynomial text instead of a file.
        #[arg(long, conflicts_with = "file", allow_hyphen_values = true)]
        f: Option<String>,
        /// Cap on the number of variables (the split enumeration is 2^n).
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: usize,
    },
    /// Intersection-lattice invariants: characteristic polynomial, projective
    /// Euler characteristic, nbc counts, optional Aomoto Betti numbers.
    Lattice {
        /// Arrangement JSON file.
        file: PathBuf,
        /// Hyperplane priority order, a 1-based permutation like "3,1,2".
        #[arg(long)]
        order: Option<String>,
        /// Aomoto weights, comma-separated rationals like "1,-2/3,1".
        #[arg(long, allow_hyphen_values = true)]
        lambda: Option<String>,
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: usize,
    },
    /// Run the brute-force oracle suites; exits nonzero on any mismatch.
    Selftest,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command, cli.format) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}

fn emit<R: Serialize>(format: Format, report: &R, text: &str) {
    let payload = match format {
        Format::Json => serde_json::to_string_pretty(report).expect("report serialization"),
        Format::Text => text.to_string(),
    };
    use std::io::Write;
    if let Err(e) = writeln!(std::io::stdout(), "{payload}") {
        if e.kind() == std::io::ErrorKind::BrokenPipe {
            std::process::exit(0);
        }
        eprintln!("error: cannot write output: {e}");
        std::process::exit(1);
    }
}

fn read_file(path: &Path) -> Result<String, Error> {
    fs::read_to_string(path)
        .map_err(|e| Error::InvalidInput(format!("cannot read {}: {e}", path.display())))
}

fn read_arrangement(path: &Path) -> Result<Arrangement, Error> {
    let text = read_file(path)?;
    let file: ArrangementFile = serde_json::from_str(&text)
        .map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
    file.to_arrangement()
}

fn read_polynomial(path: &Path) -> Result<Polynomial, Error> {
    let text = read_file(path)?;
    let records: Vec<TermRecord> = serde_json::from_str(&text)
        .map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
    Polynomial::from_records(&records)
}

/// 1-based comma-separated permutation text to 0-based indices.
fn parse_order(text: &str) -> Result<Vec<usize>, Error> {
    text.split(',')
        .map(|tok| {
            let v: usize = tok
                .trim()
                .parse()
                .map_err(|_| Error::Parse(format!("bad order entry {tok:?}")))?;
            if v == 0 {
                return Err(Error::Parse("order indices are 1-based".into()));
            }
            Ok(v - 1)
        })
        .collect()
}

fn parse_lambda(text: &str) -> Result<Vec<Rat>, Error> {
    text.split(',').map(|tok| parse_rat(tok.trim())).collect()
}

fn run(cmd: Command, format: Format) -> Result<ExitCode, Error> {
    match cmd {
        Command::AnalyzeArrangement { file, budget } => {
            let a = read_arrangement(&file)?;
            let analysis = a.analyze(budget)?;
            let report = AnalysisReport::from(&analysis);
            emit(format, &report, &report.to_text());
        }
        Command::WeylNormalize { op, n } => {
            let op = parse_operator(&op, n)?;
            let report = NormalizeReport::new(&op);
            emit(format, &report, &report.to_text());
        }
        Command::IdealCheck { op, n } => {
            let op = parse_operator(&op, n)?;
            let membership = op.in_ideal_dx()?;
            let sigma = op.sigma_invariant()?;
            let report = IdealCheckReport::new(&membership, sigma);
            emit(format, &report, &report.to_text());
        }
        Command::AnnihilatorCheck { f, p } => {
            let f = parse_polynomial(&f, None)?;
            let op = parse_operator(&p, Some(f.n()))?;
            let residual = FsElement::fs(f.clone()).apply(&op);
            let ok = residual.is_zero();
            let report = AnnihilatorReport::new(ok, (!ok).then_some(&residual));
            emit(format, &report, &report.to_text());
        }
        Command::BsCheck { f, p, b } => {
            let f = parse_polynomial(&f, None)?;
            let operator = parse_operator(&p, Some(f.n()))?;
            let bpoly = parse_bpoly(&b)?;
            let check = bs_pair_check(&BsPair { operator, bpoly }, &f)?;
            let report = BsCheckReport::new(&check);
            emit(format, &report, &report.to_text());
        }
        Command::FsApply { f, p } => {
            let f = parse_polynomial(&f, None)?;
            let op = parse_operator(&p, Some(f.n()))?;
            let result = FsElement::fs(f).apply(&op);
            let report = FsApplyReport::new(&result);
            emit(format, &report, &report.to_text());
        }
        Command::EulerWitness { f } => {
            let f = parse_polynomial(&f, None)?;
            let witness = euler_root_witness(&f)?;
            let report = EulerWitnessReport::new(&witness);
            emit(format, &report, &report.to_text());
        }
        Command::HomogScreen { file, f, budget } => {
            let f = match (file, f) {
                (Some(path), _) => read_polynomial(&path)?,
                (None, Some(text)) => parse_polynomial(&text, None)?,
                (None, None) => unreachable!("clap requires one input"),
            };
            let screen = coordinate_screen(&f, budget)?;
            let report = ScreenJson::new(&screen);
            emit(format, &report, &report.to_text());
        }
        Command::Lattice {
            file,
            order,
            lambda,
            budget,
        } => {
            let a = read_arrangement(&file)?;
            let order = order.as_deref().map(parse_order).transpose()?;
            let cp = char_poly(&a, budget)?;
            // chi and the top Betti prediction need an essential arrangement;
            // the rest of the report is still well defined without them
            let chi = match chi_projective(&a, budget) {
                Ok(c) => Some(c),
                Err(Error::NotEssential) => None,
                Err(e) => return Err(e),
            };
            let nbc = os_nbc(&a, order.as_deref(), budget)?;
            let aomoto = lambda
                .as_deref()
                .map(parse_lambda)
                .transpose()?
                .map(|l| aomoto_betti(&a, &l, order.as_deref(), budget).map(|d| (l, d)))
                .transpose()?;
            let report = LatticeReport::new(
                &cp,
                chi.as_ref(),
                &nbc,
                aomoto.as_ref().map(|(l, d)| (l.as_slice(), d)),
            );
            emit(format, &report, &report.to_text());
        }
        Command::Selftest => {
            let report = bsato::selftest::run_all();
            emit(format, &report, &report.to_text());
            if !report.ok {
                return Ok(ExitCode::from(1));
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}
