//! Command-line front end.
//!
//! [`run`] takes the argument list and returns the exit status with the
//! text destined for stdout and stderr, so it can be driven without a
//! process. Exit status: 0 on success or accept, 1 when a check fails or a
//! mathematical error occurs, 2 on usage, parse or I/O errors. Errors are
//! reported as one line `error kind=<Kind> message=<text>`.

use std::fs;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

use crate::andrews::{self, check_andrews_certificate, AndrewsCertificate};
use crate::certificate::{check_certificate_json, Verdict};
use crate::error::Error;
use crate::linform::Env;
use crate::prover::prove_vanishing;
use crate::rat::Rat;
use crate::saalschutz;
use crate::spec::{parse_bindings, parse_series_spec, SeriesSpec};
use crate::suites;

#[derive(Debug, Parser)]
#[command(name = "hypercert", version, about = "Exact terminating hypergeometric sums and vanishing certificates")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct SpecInput {
    /// Series specification text.
    #[arg(long, conflicts_with = "spec_file", required_unless_present = "spec_file")]
    spec: Option<String>,
    /// File holding the series specification.
    #[arg(long)]
    spec_file: Option<PathBuf>,
    /// Extra bindings, e.g. "m=2, x=1/3".
    #[arg(long)]
    bind: Option<String>,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Evaluate a fully bound terminating series.
    Eval(SpecInput),
    /// Print whether the series is balanced after binding.
    Balanced(SpecInput),
    /// Prove that a balanced series vanishes and emit a certificate.
    ProveVanish {
        #[command(flatten)]
        input: SpecInput,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Replay a certificate.
    CheckCert { path: PathBuf },
    /// The Pfaff-Saalschütz summation.
    Saalschutz {
        #[arg(long, allow_hyphen_values = true)]
        a: Option<Rat>,
        #[arg(long, allow_hyphen_values = true)]
        b: Option<Rat>,
        #[arg(long, allow_hyphen_values = true)]
        c: Option<Rat>,
        #[arg(long)]
        m: u64,
        #[arg(long)]
        samples: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Replay the polynomial identity in c for the given a, b.
        #[arg(long)]
        symbolic: bool,
    },
    /// The balanced 5F4 that vanishes.
    Andrews {
        #[arg(long)]
        m: u64,
        #[arg(long, allow_hyphen_values = true)]
        x: Option<Rat>,
        #[arg(long, allow_hyphen_values = true)]
        z: Option<Rat>,
        /// Replay the full proof and emit the composite certificate.
        #[arg(long)]
        prove: bool,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        samples: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

/// Exit status with captured output.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Outcome {
            code: 0,
            stdout,
            stderr: String::new(),
        }
    }

    fn failed(stdout: String) -> Self {
        Outcome {
            code: 1,
            stdout,
            stderr: String::new(),
        }
    }

    fn error(code: i32, kind: &str, message: &str) -> Self {
        let message = message.lines().next().unwrap_or("").trim();
        Outcome {
            code,
            stdout: String::new(),
            stderr: format!("error kind={kind} message={message}\n"),
        }
    }

    fn from_error(e: &Error) -> Self {
        let code = match e {
            Error::Parse { .. } | Error::UndeclaredSymbol { .. } | Error::Unbound(_) | Error::InvalidBinding { .. } => 2,
            _ => 1,
        };
        Outcome::error(code, e.kind(), &e.to_string())
    }
}

fn usage(message: &str) -> Outcome {
    Outcome::error(2, "UsageError", message)
}

fn line(s: impl std::fmt::Display) -> String {
    format!("{s}\n")
}

pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => Outcome::ok(e.to_string()),
                _ => usage(&e.to_string().replace("error: ", "")),
            };
        }
    };
    match cli.command {
        Command::Eval(input) => eval(&input),
        Command::Balanced(input) => balanced(&input),
        Command::ProveVanish { input, out } => prove(&input, out.as_ref()),
        Command::CheckCert { path } => check(&path),
        Command::Saalschutz {
            a,
            b,
            c,
            m,
            samples,
            seed,
            symbolic,
        } => saalschutz_cmd(a, b, c, m, samples, seed, symbolic),
        Command::Andrews {
            m,
            x,
            z,
            prove,
            out,
            samples,
            seed,
        } => andrews_cmd(m, x, z, prove, out.as_ref(), samples, seed),
    }
}

fn load(input: &SpecInput) -> Result<(SeriesSpec, Env), Outcome> {
    let text = match (&input.spec, &input.spec_file) {
        (Some(t), _) => t.clone(),
        (None, Some(path)) => fs::read_to_string(path)
            .map_err(|e| Outcome::error(2, "IoError", &format!("{}: {e}", path.display())))?,
        (None, None) => return Err(usage("one of --spec or --spec-file is required")),
    };
    let spec = parse_series_spec(text.trim()).map_err(|e| Outcome::from_error(&e))?;
    let mut env = spec.bindings.clone();
    if let Some(extra) = &input.bind {
        let more = parse_bindings(extra, &spec.series.symbols).map_err(|e| Outcome::from_error(&e))?;
        env.extend(more);
    }
    Ok((spec, env))
}

fn eval(input: &SpecInput) -> Outcome {
    let (spec, env) = match load(input) {
        Ok(v) => v,
        Err(o) => return o,
    };
    match spec.series.evaluate_terminating(&env) {
        Ok(v) => Outcome::ok(line(v)),
        Err(e) => Outcome::from_error(&e),
    }
}

fn balanced(input: &SpecInput) -> Outcome {
    let (spec, env) = match load(input) {
        Ok(v) => v,
        Err(o) => return o,
    };
    if let Err(e) = spec.series.check_env(&env) {
        return Outcome::from_error(&e);
    }
    Outcome::ok(line(spec.series.substitute(&env).is_balanced()))
}

fn write_out(path: &PathBuf, text: &str) -> Result<(), Outcome> {
    fs::write(path, text).map_err(|e| Outcome::error(2, "IoError", &format!("{}: {e}", path.display())))
}

fn prove(input: &SpecInput, out: Option<&PathBuf>) -> Outcome {
    let (spec, env) = match load(input) {
        Ok(v) => v,
        Err(o) => return o,
    };
    let cert = match prove_vanishing(&spec.series, &env) {
        Ok(c) => c,
        Err(e) => return Outcome::from_error(&e),
    };
    let json = cert.to_json();
    match out {
        Some(path) => match write_out(path, &json) {
            Ok(()) => Outcome::ok(line(format!("vanishes n={} total_degree={}", cert.n, cert.total_degree))),
            Err(o) => o,
        },
        None => Outcome::ok(line(json)),
    }
}

fn check(path: &PathBuf) -> Outcome {
    let text = match fs::read_to_string(path) {
        Ok(t) => t,
        Err(e) => return Outcome::error(2, "IoError", &format!("{}: {e}", path.display())),
    };
    let composite = serde_json::from_str::<serde_json::Value>(&text)
        .map(|v| v.get("lemma3").is_some())
        .unwrap_or(false);
    let verdict = if composite {
        match serde_json::from_str::<AndrewsCertificate>(&text) {
            Ok(cert) => check_andrews_certificate(&cert),
            Err(e) => Verdict::Reject {
                reason: crate::certificate::RejectReason::Malformed,
                detail: e.to_string(),
            },
        }
    } else {
        check_certificate_json(&text)
    };
    let mut outcome = if verdict.is_accept() {
        Outcome::ok(line(&verdict))
    } else {
        Outcome::failed(line(&verdict))
    };
    if let Verdict::Reject { reason, detail } = &verdict {
        outcome.stderr = format!("error kind={reason} message={}\n", detail.lines().next().unwrap_or(""));
    }
    outcome
}

fn saalschutz_cmd(
    a: Option<Rat>,
    b: Option<Rat>,
    c: Option<Rat>,
    m: u64,
    samples: Option<usize>,
    seed: u64,
    symbolic: bool,
) -> Outcome {
    if symbolic {
        let (Some(a), Some(b)) = (a, b) else {
            return usage("--symbolic needs --a and --b");
        };
        return match saalschutz::master_poly_in_c(&a, &b, m) {
            Ok(p) => Outcome::ok(line(p.display(&saalschutz::c_table()))),
            Err(e) => Outcome::from_error(&e),
        };
    }
    if let Some(n) = samples {
        let report = suites::saalschutz_numeric(m, n, seed);
        return if report.all_passed() {
            Outcome::ok(report.text)
        } else {
            Outcome::failed(report.text)
        };
    }
    let (Some(a), Some(b), Some(c)) = (a, b, c) else {
        return usage("need --a, --b and --c, or --samples, or --symbolic");
    };
    match saalschutz::verify_numeric(&a, &b, &c, m) {
        Ok(rep) if rep.equal => Outcome::ok(line(&rep)),
        Ok(rep) => Outcome::failed(line(&rep)),
        Err(e) => Outcome::from_error(&e),
    }
}

#[allow(clippy::too_many_arguments)]
fn andrews_cmd(
    m: u64,
    x: Option<Rat>,
    z: Option<Rat>,
    prove: bool,
    out: Option<&PathBuf>,
    samples: Option<usize>,
    seed: u64,
) -> Outcome {
    if prove {
        let proof = match andrews::master_poly_and_prove(m) {
            Ok(p) => p,
            Err(e) => return Outcome::from_error(&e),
        };
        let json = proof.certificate.to_json();
        return match out {
            Some(path) => match write_out(path, &json) {
                Ok(()) => Outcome::ok(line(format!(
                    "vanishes m={m} integer_y={} master=0",
                    proof.integer_y.len()
                ))),
                Err(o) => o,
            },
            None => Outcome::ok(line(json)),
        };
    }
    if let Some(n) = samples {
        let report = suites::andrews_numeric(m, n, seed);
        return if report.all_passed() {
            Outcome::ok(report.text)
        } else {
            Outcome::failed(report.text)
        };
    }
    let (Some(x), Some(z)) = (x, z) else {
        return usage("need --x and --z, or --prove, or --samples");
    };
    match andrews::sum_numeric(m, &x, &z) {
        Ok(v) if v.is_zero() => Outcome::ok(line(v)),
        Ok(v) => Outcome::failed(line(v)),
        Err(e) => Outcome::from_error(&e),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_args(args: &[&str]) -> Outcome {
        run(std::iter::once("hypercert").chain(args.iter().copied()))
    }

    #[test]
    fn andrews_numeric_example() {
        let o = run_args(&["andrews", "--m", "1", "--x", "1/5", "--z", "1/7"]);
        assert_eq!((o.code, o.stdout.as_str()), (0, "0\n"));
    }

    #[test]
    fn saalschutz_numeric_example() {
        let o = run_args(&["saalschutz", "--a", "2", "--b", "3", "--c", "4", "--m", "1"]);
        assert_eq!((o.code, o.stdout.as_str()), (0, "lhs=-1/2 rhs=-1/2 equal\n"));
    }

    #[test]
    fn negative_values_are_accepted() {
        let o = run_args(&["andrews", "--m", "2", "--x", "-3/7", "--z", "-1/9"]);
        assert_eq!(o.code, 0, "{}", o.stderr);
    }

    #[test]
    fn eval_and_balanced() {
        let spec = "sym m:int, a, b, c; upper: -m, a, b; lower: c, 1-m+a+b-c; arg: 1";
        let o = run_args(&["eval", "--spec", spec, "--bind", "m=1, a=2, b=3, c=4"]);
        assert_eq!((o.code, o.stdout.as_str()), (0, "-1/2\n"));
        let o = run_args(&["balanced", "--spec", spec, "--bind", "m=1"]);
        assert_eq!(o.stdout, "true\n");
        let o = run_args(&["eval", "--spec", spec, "--bind", "m=1"]);
        assert_eq!(o.code, 2);
        assert!(o.stderr.starts_with("error kind="));
    }

    #[test]
    fn parse_errors_exit_two() {
        let o = run_args(&["eval", "--spec", "sym a; upper: a+; lower: a; arg: 1"]);
        assert_eq!(o.code, 2);
        assert!(o.stderr.starts_with("error kind=ParseError"));
        assert_eq!(o.stderr.lines().count(), 1);
        let o = run_args(&["frobnicate"]);
        assert_eq!(o.code, 2);
        assert_eq!(o.stderr.lines().count(), 1);
    }

    #[test]
    fn pole_exits_one() {
        let o = run_args(&["saalschutz", "--a", "2", "--b", "3", "--c", "0", "--m", "1"]);
        assert_eq!(o.code, 1);
        assert!(o.stderr.starts_with("error kind=PoleError"));
    }
}
