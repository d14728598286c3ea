//! `qso4`: build, verify, classify and tensor representations of U'_q(so4).

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use qso4_core::acceptance::run_criterion;
use qso4_core::homtensor::{ext_rep, phi, TensorBuilder};
use qso4_core::io::TensorJson;
use qso4_core::irreps::{build_irrep, weight_spectrum};
use qso4_core::ladder::{self, hw_casimir_eigenvalues};
use qso4_core::so4core::{casimirs, verify_relations};
use qso4_core::uqsl2::Phase;
use qso4_core::{Error, ExactQ, Field, HalfInt, IrrepLabel, QParam, So4Rep};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "qso4", version, about = "Exact representations of the nonstandard q-deformed algebra U'_q(so4)")]
struct Cli {
    /// Exact rational functions of s = q^(1/2), or complex floating point at --q.
    #[arg(long, value_enum, default_value = "exact", global = true)]
    field: FieldKind,
    /// Value of q for --field numeric, e.g. `0.7` or `0.6+0.2i`.
    #[arg(long, global = true)]
    q: Option<String>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum FieldKind {
    Exact,
    Numeric,
}

#[derive(Subcommand)]
enum Command {
    /// Build the canonical irreducible of a label.
    Build {
        #[arg(long)]
        label: IrrepLabel,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check the defining relations and their long forms.
    Verify {
        #[command(flatten)]
        input: Input,
        /// Where to write the relation report (stdout when omitted and a check fails).
        #[arg(long)]
        report: Option<PathBuf>,
    },
    /// Print the Casimir operators when they are scalar.
    Casimir {
        #[command(flatten)]
        input: Input,
    },
    /// List the simultaneous (I21, I43) weights.
    Spectrum {
        #[command(flatten)]
        input: Input,
    },
    /// Split a representation into irreducibles.
    Decompose {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Tensor product of two classical irreducibles.
    Tensor {
        a: IrrepLabel,
        b: IrrepLabel,
        #[arg(long)]
        decompose: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Image of the extension T_l^(eps) (x) T_lp^(epsp) under phi.
    Phi {
        #[arg(long)]
        l: HalfInt,
        #[arg(long)]
        lp: HalfInt,
        #[arg(long, default_value = "+1", allow_hyphen_values = true)]
        eps: Phase,
        #[arg(long, default_value = "+1", allow_hyphen_values = true)]
        epsp: Phase,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run the acceptance criteria (all nine unless some are named).
    Selfcheck { criteria: Vec<usize> },
}

/// A representation read from a JSON file or built from a label.
#[derive(Args)]
struct Input {
    file: Option<PathBuf>,
    #[arg(long, conflicts_with = "file")]
    label: Option<IrrepLabel>,
}

/// Why a command did not succeed.
enum Failure {
    /// Bad input: exit 2.
    Usage(String),
    /// A mathematical check failed: exit 1.
    Check(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Io(_) | Error::Json(_) | Error::Parse(_) | Error::InvalidLabel(_) | Error::InvalidSpin(_) => {
                Failure::Usage(e.to_string())
            }
            Error::RootOfUnity { .. } => Failure::Usage(e.to_string()),
            e => Failure::Check(e.to_string()),
        }
    }
}

type Outcome = Result<(), Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.field {
        FieldKind::Exact => match cli.q {
            Some(_) => Err(Failure::Usage("--q needs --field numeric".into())),
            None => run(&cli.command, &ExactQ::generic()),
        },
        FieldKind::Numeric => numeric_q(cli.q.as_deref()).and_then(|q| run(&cli.command, &q)),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Check(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn numeric_q(text: Option<&str>) -> Result<QParam<Complex64>, Failure> {
    let text = text.ok_or_else(|| Failure::Usage("--field numeric needs --q".into()))?;
    let q0: Complex64 = text.parse().map_err(|_| Failure::Usage(format!("cannot read q = {text:?}")))?;
    Ok(QParam::numeric(q0, 64)?)
}

fn kv(key: &str, value: impl std::fmt::Display) {
    println!("{key}: {value}");
}

fn exactness<F: Field>() -> &'static str {
    if F::EXACT {
        "exact"
    } else {
        "numeric"
    }
}

fn load<F: Field>(input: &Input, q: &QParam<F>) -> Result<So4Rep<F>, Failure> {
    match (&input.file, &input.label) {
        (Some(path), None) => Ok(qso4_core::io::read_rep(path)?),
        (None, Some(label)) => Ok(build_irrep(label, q)?),
        _ => Err(Failure::Usage("give a representation file or --label".into())),
    }
}

fn save(json: &impl serde::Serialize, out: Option<&Path>) -> Outcome {
    let text = serde_json::to_string_pretty(json).map_err(Error::from)?;
    match out {
        Some(path) => {
            std::fs::write(path, text).map_err(Error::from)?;
            kv("written", path.display());
        }
        None => println!("{text}"),
    }
    Ok(())
}

fn run<F: Field>(command: &Command, q: &QParam<F>) -> Outcome {
    match command {
        Command::Build { label, out } => {
            let rep = build_irrep(label, q)?;
            kv("label", label);
            kv("dim", rep.dim());
            save(&rep.to_json(), out.as_deref())
        }
        Command::Verify { input, report } => verify(&load(input, q)?, report.as_deref(), q),
        Command::Casimir { input } => {
            let rep = load(input, q)?;
            let c = casimirs(&rep, q)?;
            let c4 = c.c4.as_scalar().ok_or(Error::NotScalar)?;
            let c4p = c.c4p_short.as_scalar().ok_or(Error::NotScalar)?;
            kv("C4", &c4);
            kv("C'4", &c4p);
            if let Some(label) = rep.label.or(input.label) {
                let (e4, e4p) = hw_casimir_eigenvalues(&label, q);
                let ok = c4.approx_eq(&e4) && c4p.approx_eq(&e4p);
                kv("closed form", if ok { "MATCH" } else { "MISMATCH" });
                if !ok {
                    return Err(Failure::Check(format!("closed form for {label} is C4 = {e4}, C'4 = {e4p}")));
                }
            }
            Ok(())
        }
        Command::Spectrum { input } => {
            let table = weight_spectrum(&load(input, q)?, q)?;
            kv("type", format!("{:?}", table.kind).to_lowercase());
            for (w, m) in table.multiplicities() {
                kv(&format!("weight {w}"), m);
            }
            Ok(())
        }
        Command::Decompose { input, out } => {
            let rep = load(input, q)?;
            let d = ladder::decompose(&rep, q)?;
            for c in &d.components {
                kv("component", format!("{} (dim {})", c.label, c.basis.cols()));
            }
            if let Some(path) = out {
                save(&d.to_json(), Some(path))?;
            }
            Ok(())
        }
        Command::Tensor { a, b, decompose, out } => {
            let builder = TensorBuilder::new(q.clone());
            let t = builder.tensor(a, b)?;
            kv("factors", format!("{a} (x) {b}"));
            kv("dim", t.rep.dim());
            let decomposition = if *decompose {
                let labels = builder.decompose(a, b)?;
                for l in &labels {
                    kv("component", format!("{l} (dim {})", l.dim()));
                }
                let dims: Vec<String> = labels.iter().map(|l| l.dim().to_string()).collect();
                kv("dims", dims.join(","));
                Some(labels)
            } else {
                None
            };
            match out {
                Some(path) => save(&TensorJson { factors: [*a, *b], rep: t.rep.to_json(), decomposition }, Some(path)),
                None => Ok(()),
            }
        }
        Command::Phi { l, lp, eps, epsp, out } => {
            let rep = phi(&ext_rep(*l, *lp, *eps, *epsp, q)?, q)?;
            kv("dim", rep.dim());
            let report = verify_relations(&rep, false, q);
            let status = if report.short_form_passes() { "PASS" } else { "FAIL" };
            kv("relations (6)-(10)", format!("{status} ({})", exactness::<F>()));
            if let Some(path) = out {
                save(&rep.to_json(), Some(path))?;
            }
            if report.short_form_passes() {
                Ok(())
            } else {
                Err(Failure::Check(format!("relation {} fails", report.first_failure().unwrap_or("?"))))
            }
        }
        Command::Selfcheck { criteria } => selfcheck(criteria),
    }
}

fn verify<F: Field>(rep: &So4Rep<F>, report_path: Option<&Path>, q: &QParam<F>) -> Outcome {
    let report = verify_relations(rep, true, q);
    let how = exactness::<F>();
    let status = |ok: bool| format!("{} ({how})", if ok { "PASS" } else { "FAIL" });
    let short_ok = report.short_form_passes();
    let long_ok = report.passes();
    kv("dim", rep.dim());
    kv("relations (6)-(10)", status(short_ok));
    kv("relations (11)-(15)", status(long_ok));
    if let Some(path) = report_path {
        save(&report.to_json(), Some(path))?;
    }
    if long_ok {
        return Ok(());
    }
    if report_path.is_none() {
        save(&report.to_json(), None)?;
    }
    Err(Failure::Check(format!("relation {} fails", report.first_failure().unwrap_or("I41 consistency"))))
}

fn selfcheck(criteria: &[usize]) -> Outcome {
    let ids: Vec<usize> = if criteria.is_empty() { (1..=9).collect() } else { criteria.to_vec() };
    if let Some(bad) = ids.iter().find(|&&id| !(1..=9).contains(&id)) {
        return Err(Failure::Usage(format!("no criterion {bad}")));
    }
    let q = ExactQ::generic();
    let mut failed = Vec::new();
    for id in ids {
        let r = run_criterion(id, &q).expect("criterion in range");
        kv(&format!("criterion {id}"), format!("{} ({}; {})", if r.pass { "PASS" } else { "FAIL" }, r.name, r.detail));
        if !r.pass {
            failed.push(id.to_string());
        }
    }
    if failed.is_empty() {
        Ok(())
    } else {
        Err(Failure::Check(format!("criteria {} failed", failed.join(", "))))
    }
}
