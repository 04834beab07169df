//! Command-line front end: tables of `m(a,b)`, `T_p` and theta series,
//! decomposition of a form in the `Δ` and `m` bases, and the verification
//! suites.
//!
//! Exit codes: 0 success, 1 verification or computation failure, 2 usage or
//! input error.

use std::fs;
use std::io::{self, BufWriter, Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use hecke2::arith::odd_primes_up_to;
use hecke2::theta::{family_precision, theta};
use hecke2::verify::{run_suite, Suite, VerifyConfig};
use hecke2::{
    expand_in_delta_basis, DeltaBasis, Error, F2Series, FElement, FormParam, MExpansion, MIndex,
    MTable, ThetaIndex,
};

#[derive(Parser)]
#[command(name = "hecke2", version, about = "Hecke operators on modular forms mod 2")]
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
    Csv,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum InputKind {
    /// Odd exponents k of Δ^k.
    Delta,
    /// Exponents of q in the q-expansion.
    Q,
}

#[derive(Subcommand)]
enum Command {
    /// The basis elements m(a,b) with a+b ≤ degree, as Δ exponents.
    MTable {
        #[arg(long, default_value_t = 3)]
        degree: usize,
    },
    /// The coefficients a_ij(p) = 1 with i+j ≤ degree for odd primes p ≤ max-prime.
    TpTable {
        #[arg(long, default_value_t = 17)]
        max_prime: u64,
        #[arg(long, default_value_t = hecke2::mbasis::DEFAULT_TP_DEGREE)]
        degree: usize,
    },
    /// θ_{t,n} (c = 2) or θ'_{t,n} (c = 4) for n ≤ max-level, 0 ≤ t ≤ 2^{n-1}, as Δ exponents.
    ThetaTable {
        #[arg(long, default_value_t = 3)]
        max_level: u32,
        #[arg(short, long, default_value_t = 2, value_parser = parse_form)]
        c: u64,
        /// q-expansion precision; defaults to one that determines every row.
        #[arg(long)]
        precision: Option<usize>,
    },
    /// Run a verification suite.
    Verify {
        #[arg(long, default_value = "all", value_parser = parse_suite)]
        suite: Suite,
    },
    /// Expand a form in the Δ basis and the m basis. Reads a comma- or
    /// whitespace-separated exponent list from a file, or stdin for "-".
    Decompose {
        input: PathBuf,
        #[arg(long, value_enum, default_value_t = InputKind::Delta)]
        kind: InputKind,
        /// Precision of a q-exponent input; defaults to its largest exponent.
        #[arg(long)]
        precision: Option<usize>,
    },
    /// The code (a,b) of an odd integer k: Δ^k is the dominant term of m(a,b).
    CodeOf { k: usize },
}

fn parse_form(s: &str) -> Result<u64, String> {
    match s {
        "2" => Ok(2),
        "4" => Ok(4),
        _ => Err(format!("c must be 2 or 4, got {s}")),
    }
}

fn parse_suite(s: &str) -> Result<Suite, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

/// Failure classes, mapped to exit codes.
enum Failure {
    Input(String),
    Compute(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::EvenPower(_)
            | Error::NotOddPrime(_)
            | Error::NotInF { .. }
            | Error::InsufficientPrecision { .. }
            | Error::ZeroElement
            | Error::InvalidArgument(_) => Failure::Input(e.to_string()),
            _ => Failure::Compute(e.to_string()),
        }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Compute(format!("i/o: {e}"))
    }
}

type CmdResult = Result<(), Failure>;

fn join<T: ToString>(items: impl IntoIterator<Item = T>, sep: &str) -> String {
    items.into_iter().map(|x| x.to_string()).collect::<Vec<_>>().join(sep)
}

fn m_table(out: &mut impl Write, format: Format, degree: usize) -> CmdResult {
    let mut table = MTable::new();
    for idx in MIndex::up_to_degree(degree) {
        let exps = table.m_element(idx)?.delta_exponents();
        match format {
            Format::Text => writeln!(out, "{idx}:[{}]", join(&exps, ","))?,
            Format::Csv => writeln!(out, "{},{},{}", idx.a, idx.b, join(&exps, " "))?,
        }
    }
    Ok(())
}

fn tp_table(out: &mut impl Write, format: Format, max_prime: u64, degree: usize) -> CmdResult {
    if max_prime < 3 {
        return Err(Failure::Input(format!("max-prime must be at least 3, got {max_prime}")));
    }
    let mut table = MTable::new();
    let primes = odd_primes_up_to(max_prime);
    for (p, e) in table.tp_expansions(&primes, degree)? {
        match format {
            Format::Text => writeln!(out, "{p}: {}", join(e.iter(), " "))?,
            Format::Csv => {
                let terms = e.iter().map(|i| format!("{} {}", i.a, i.b));
                writeln!(out, "{p},{}", join(terms, ","))?
            }
        }
    }
    Ok(())
}

fn theta_table(
    out: &mut impl Write,
    format: Format,
    max_level: u32,
    c: u64,
    precision: Option<usize>,
) -> CmdResult {
    if !(1..=12).contains(&max_level) {
        return Err(Failure::Input(format!("max-level must be in 1..=12, got {max_level}")));
    }
    let form = FormParam::from_value(c)?;
    for n in 1..=max_level {
        let precision = precision.unwrap_or_else(|| family_precision(n));
        let basis = DeltaBasis::new(precision.div_ceil(2), precision);
        for t in 0..=(1u64 << (n - 1)) {
            let idx = ThetaIndex::new(t as i64, n, form);
            let exps = basis.expand(&theta(idx, precision))?.delta_exponents();
            match format {
                Format::Text => writeln!(out, "{idx} c={c}: [{}]", join(&exps, ","))?,
                Format::Csv => writeln!(out, "{c},{n},{t},{}", join(&exps, " "))?,
            }
        }
    }
    Ok(())
}

fn verify(out: &mut impl Write, format: Format, suite: Suite) -> CmdResult {
    let checks = run_suite(suite, &VerifyConfig::default());
    let failed: Vec<&str> = checks.iter().filter(|c| !c.passed).map(|c| c.name.as_str()).collect();
    for c in &checks {
        match format {
            Format::Text => writeln!(out, "{c}")?,
            Format::Csv => writeln!(
                out,
                "{},{},{}",
                c.name,
                if c.passed { "pass" } else { "fail" },
                c.count
            )?,
        }
    }
    if format == Format::Text {
        writeln!(
            out,
            "{}: {} of {} checks passed",
            suite.name(),
            checks.len() - failed.len(),
            checks.len()
        )?;
    }
    if failed.is_empty() {
        Ok(())
    } else {
        Err(Failure::Compute(format!("failed: {}", failed.join(", "))))
    }
}

fn read_exponents(input: &PathBuf) -> Result<Vec<usize>, Failure> {
    let text = if input.as_os_str() == "-" {
        let mut s = String::new();
        io::stdin().read_to_string(&mut s)?;
        s
    } else {
        fs::read_to_string(input)
            .map_err(|e| Failure::Input(format!("{}: {e}", input.display())))?
    };
    text.split(|ch: char| ch == ',' || ch.is_whitespace())
        .filter(|s| !s.is_empty())
        .map(|s| {
            s.parse::<usize>()
                .map_err(|_| Failure::Input(format!("not a nonnegative integer: {s:?}")))
        })
        .collect()
}

fn decompose(
    out: &mut impl Write,
    format: Format,
    input: &PathBuf,
    kind: InputKind,
    precision: Option<usize>,
) -> CmdResult {
    let exps = read_exponents(input)?;
    if exps.is_empty() {
        return Err(Failure::Input("no exponents given".into()));
    }
    let f = match kind {
        InputKind::Delta => {
            let level = exps.iter().max().map_or(1, |k| k.div_ceil(2)).max(1);
            FElement::from_delta_exponents(exps, level)?
        }
        InputKind::Q => {
            let precision = precision.unwrap_or_else(|| *exps.iter().max().expect("nonempty"));
            if let Some(&e) = exps.iter().find(|&&e| e > precision) {
                return Err(Failure::Input(format!("exponent {e} beyond precision {precision}")));
            }
            let series = F2Series::from_exponents(exps, precision);
            let level = precision.div_ceil(2).max(1);
            expand_in_delta_basis(&series, level)?
        }
    };
    let f = f.at_level(f.minimal_level());
    let coeffs: MExpansion = MTable::new().m_coefficients(&f)?;
    let delta = f.delta_exponents();
    match format {
        Format::Text => {
            writeln!(out, "delta: [{}]", join(&delta, ","))?;
            writeln!(out, "m: [{}]", join(coeffs.iter(), ","))?;
            writeln!(out, "poly: {coeffs}")?;
        }
        Format::Csv => {
            writeln!(out, "delta,{}", join(&delta, " "))?;
            let terms = coeffs.iter().map(|i| format!("{} {}", i.a, i.b));
            writeln!(out, "m,{}", join(terms, ","))?;
        }
    }
    Ok(())
}

fn code_of(out: &mut impl Write, k: usize) -> CmdResult {
    if k == 0 {
        return Err(Failure::Input("k must be a positive odd integer".into()));
    }
    let idx = MTable::new().code_of(k)?;
    writeln!(out, "{},{}", idx.a, idx.b)?;
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let stdout = io::stdout();
    let mut out = BufWriter::new(stdout.lock());
    let format = cli.format;
    let result = match &cli.command {
        Command::MTable { degree } => m_table(&mut out, format, *degree),
        Command::TpTable { max_prime, degree } => tp_table(&mut out, format, *max_prime, *degree),
        Command::ThetaTable {
            max_level,
            c,
            precision,
        } => theta_table(&mut out, format, *max_level, *c, *precision),
        Command::Verify { suite } => verify(&mut out, format, *suite),
        Command::Decompose {
            input,
            kind,
            precision,
        } => decompose(&mut out, format, input, *kind, *precision),
        Command::CodeOf { k } => code_of(&mut out, *k),
    };
    let flushed = out.flush();
    match (result, flushed) {
        (Ok(()), Ok(())) => ExitCode::SUCCESS,
        (Err(Failure::Input(msg)), _) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        (Err(Failure::Compute(msg)), _) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        (Ok(()), Err(e)) => {
            eprintln!("error: i/o: {e}");
            ExitCode::from(1)
        }
    }
}
