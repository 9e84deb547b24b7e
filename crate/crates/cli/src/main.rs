//! `oi`: command-line front end for `oi-core`.

use std::fmt::Write as _;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use oi_core::bounds::{hilbert_poly_fit, reg_bound, std_empirical};
use oi_core::functors::{check_kappa_vbar, shift_presentation, vbar_presentation, verify_what_span, Certificate};
use oi_core::homology::{filtration_multiplicities, h0_dims, h1_dims, h_dims, is_semi_induced, prd, t0, t1, HomologyTable};
use oi_core::module::{hilbert, Presentation};
use oi_core::OiError;
use serde_json::{json, Value};

const FIXTURES: [(&str, &str); 6] = [
    ("example42", include_str!("../fixtures/example42.json")),
    ("ramos", include_str!("../fixtures/ramos.json")),
    ("m0", include_str!("../fixtures/m0.json")),
    ("m1", include_str!("../fixtures/m1.json")),
    ("m2", include_str!("../fixtures/m2.json")),
    ("m3", include_str!("../fixtures/m3.json")),
];

#[derive(Parser)]
#[command(name = "oi", version, about = "Exact computations with finitely presented OI-modules")]
struct Cli {
    /// Emit canonical JSON instead of tables.
    #[arg(long, global = true)]
    machine: bool,
    /// Run checks even when their hypotheses fail; results are marked exploratory.
    #[arg(long, global = true)]
    force: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Input {
    /// Presentation file, or `fixture:<name>` for a bundled one.
    input: String,
}

#[derive(Subcommand)]
enum Command {
    /// Dimensions of V_n over a range of degrees.
    Dims {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        from: usize,
        #[arg(long)]
        to: usize,
    },
    /// Dimensions of H_0.
    H0 {
        #[command(flatten)]
        input: Input,
    },
    /// Dimensions of H_1.
    H1 {
        #[command(flatten)]
        input: Input,
    },
    /// Generation degree, relation degree and presentation degree.
    T0t1 {
        #[command(flatten)]
        input: Input,
    },
    /// Presentation of the r-fold shift.
    Shift {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        r: usize,
    },
    /// Presentation of V-bar for shift r.
    Vbar {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        r: usize,
    },
    /// Check that the kernel of V-bar -> Sigma V-bar vanishes on a window.
    CheckKappaVbar {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        r: usize,
        #[arg(long)]
        window: usize,
    },
    /// Compare the span of the w-hat generators with the projected relations.
    VerifyWhatSpan {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        r: usize,
        #[arg(long)]
        window: usize,
    },
    /// Regularity, Hilbert onset and filtration bounds.
    Bound {
        #[command(flatten)]
        input: Input,
    },
    /// Exact Hilbert polynomial fit over a window.
    Fit {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        from: usize,
        #[arg(long)]
        to: usize,
    },
    /// Decide whether the module is semi-induced.
    SemiInduced {
        #[command(flatten)]
        input: Input,
    },
    /// Multiplicities of the induced filtration quotients.
    Filtration {
        #[command(flatten)]
        input: Input,
    },
    /// Dimensions of H_i through degree B.
    H {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        i: usize,
        #[arg(long)]
        bound: usize,
    },
    /// Generation degree of successive shifts.
    Std {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        max_shift: usize,
    },
    /// Print a bundled presentation.
    Fixture { name: String },
}

struct Report {
    table: String,
    machine: String,
    pass: bool,
}

impl Report {
    fn ok(table: String, machine: String) -> Self {
        Report {
            table,
            machine,
            pass: true,
        }
    }
}

#[derive(Debug)]
enum Failure {
    Input(String),
    Engine(OiError),
}

impl From<OiError> for Failure {
    fn from(e: OiError) -> Self {
        Failure::Engine(e)
    }
}

impl std::fmt::Display for Failure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Failure::Input(msg) => f.write_str(msg),
            Failure::Engine(e) => write!(f, "{e}"),
        }
    }
}

fn load(input: &Input) -> Result<Presentation, Failure> {
    let text = match input.input.strip_prefix("fixture:") {
        Some(name) => fixture(name)?.to_string(),
        None => std::fs::read_to_string(&input.input)
            .map_err(|e| Failure::Input(format!("cannot read {}: {e}", input.input)))?,
    };
    Ok(Presentation::from_json(&text)?)
}

fn fixture(name: &str) -> Result<&'static str, Failure> {
    FIXTURES
        .iter()
        .find(|(n, _)| *n == name)
        .map(|(_, text)| *text)
        .ok_or_else(|| {
            let names: Vec<_> = FIXTURES.iter().map(|(n, _)| *n).collect();
            Failure::Input(format!("unknown fixture {name:?}; available: {}", names.join(", ")))
        })
}

fn parse_json(text: &str) -> Value {
    serde_json::from_str(text).expect("library emits valid JSON")
}

fn table_lines(table: &HomologyTable) -> String {
    let mut out = format!("H_{} ", table.i);
    if table.is_empty() {
        out.push_str("empty");
    } else {
        let parts: Vec<_> = table.dims.iter().map(|(n, d)| format!("{n}:{d}")).collect();
        out.push_str(&parts.join(" "));
    }
    if !table.complete {
        let _ = write!(out, " (certified through {})", table.certified_through);
    }
    out
}

fn homology(table: HomologyTable) -> Report {
    Report::ok(table_lines(&table), table.to_json())
}

fn presentation_summary(p: &Presentation) -> String {
    let gens: Vec<_> = p.free().degrees().iter().map(|d| d.to_string()).collect();
    format!(
        "field {}\ngenerators [{}]\nrelations {}",
        p.field(),
        gens.join(","),
        p.relations().len()
    )
}

fn certificate(cert: Certificate) -> Report {
    let mut table = format!(
        "{} {} r={} window={}",
        if cert.pass { "pass" } else { "FAIL" },
        cert.check,
        cert.params.get("r").copied().unwrap_or_default(),
        cert.window
    );
    if let Some(n) = cert.first_failure {
        let _ = write!(table, " first failure at degree {n}");
    }
    if let Some(note) = &cert.note {
        let _ = write!(table, " ({note})");
    }
    Report {
        table,
        machine: cert.to_json(),
        pass: cert.pass,
    }
}

fn run(cli: &Cli) -> Result<Report, Failure> {
    Ok(match &cli.command {
        Command::Dims { input, from, to } => {
            let dims = hilbert(&load(input)?, *from, *to)?;
            let text: Vec<_> = dims.iter().map(|d| d.to_string()).collect();
            Report::ok(
                text.join(" "),
                json!({"from": from, "to": to, "dims": dims}).to_string(),
            )
        }
        Command::H0 { input } => homology(h0_dims(&load(input)?)?),
        Command::H1 { input } => homology(h1_dims(&load(input)?)?),
        Command::H { input, i, bound } => homology(h_dims(&load(input)?, *i, *bound)?),
        Command::T0t1 { input } => {
            let p = load(input)?;
            let (t0, t1, prd) = (t0(&p)?, t1(&p)?, prd(&p)?);
            Report::ok(
                format!("t0={t0} t1={t1} prd={prd}"),
                json!({"t0": t0, "t1": t1, "prd": prd}).to_string(),
            )
        }
        Command::Shift { input, r } => {
            let (shifted, dec) = shift_presentation(&load(input)?, *r)?;
            let summands: Vec<_> = dec
                .summand_index
                .iter()
                .zip(&dec.new_generator_degrees)
                .map(|((g, e), d)| json!({"gen": g, "subset": e, "degree": d}))
                .collect();
            let machine = json!({
                "r": r,
                "presentation": parse_json(&shifted.to_json()),
                "summands": summands,
            });
            Report::ok(presentation_summary(&shifted), machine.to_string())
        }
        Command::Vbar { input, r } => {
            let vbar = vbar_presentation(&load(input)?, *r)?;
            Report::ok(presentation_summary(&vbar), vbar.to_json())
        }
        Command::CheckKappaVbar { input, r, window } => {
            certificate(check_kappa_vbar(&load(input)?, *r, *window, cli.force)?)
        }
        Command::VerifyWhatSpan { input, r, window } => {
            let p = load(input)?;
            let prd = prd(&p)?;
            if (*r as i64) < prd && !cli.force {
                return Err(OiError::HypothesisUnmet { r: *r, prd }.into());
            }
            let mut cert = verify_what_span(&p, *r, *window)?;
            if (*r as i64) < prd {
                cert.note = Some(oi_core::functors::EXPLORATORY_NOTE.to_string());
            }
            certificate(cert)
        }
        Command::Bound { input } => {
            let b = reg_bound(&load(input)?)?;
            Report::ok(
                format!(
                    "t0={} t1={} prd={} reg_bound={} c_bound={} filtration={}",
                    b.t0, b.t1, b.prd, b.reg_bound, b.c_bound, b.filtration_size_bound
                ),
                b.to_json(),
            )
        }
        Command::Fit { input, from, to } => {
            let fit = hilbert_poly_fit(&load(input)?, *from, *to)?;
            Report::ok(
                format!(
                    "P(n) = {} for n >= {} (window {}..{})",
                    fit.polynomial, fit.empirical_onset, fit.window.0, fit.window.1
                ),
                fit.to_json(),
            )
        }
        Command::SemiInduced { input } => {
            let cert = is_semi_induced(&load(input)?)?;
            let table = match cert.witness_degree {
                None => "semi-induced: yes".to_string(),
                Some(n) => format!("semi-induced: no (H_1 nonzero in degree {n})"),
            };
            Report::ok(table, serde_json::to_string(&cert).expect("certificate serializes"))
        }
        Command::Filtration { input } => {
            let mult = filtration_multiplicities(&load(input)?)?;
            let parts: Vec<_> = mult.iter().map(|(k, a)| format!("M({k})^{a}")).collect();
            let table = if parts.is_empty() { "0".to_string() } else { parts.join(" + ") };
            let machine: serde_json::Map<String, Value> =
                mult.iter().map(|(k, a)| (k.to_string(), json!(a))).collect();
            Report::ok(table, json!({ "multiplicities": machine }).to_string())
        }
        Command::Std { input, max_shift } => {
            let probe = std_empirical(&load(input)?, *max_shift)?;
            let t0s: Vec<_> = probe.t0_by_shift.iter().map(|t| t.to_string()).collect();
            Report::ok(
                format!("t0 by shift: {}\nminimum: {}", t0s.join(" "), probe.minimum),
                serde_json::to_string(&probe).expect("probe serializes"),
            )
        }
        Command::Fixture { name } => {
            let text = fixture(name)?.trim_end().to_string();
            Report::ok(text.clone(), text)
        }
    })
}

fn apply_degree_cap() -> Result<(), Failure> {
    match std::env::var("OI_DEGREE_CAP") {
        Ok(value) => {
            let cap = value
                .trim()
                .parse::<usize>()
                .map_err(|_| Failure::Input(format!("OI_DEGREE_CAP must be a natural number, got {value:?}")))?;
            oi_core::set_degree_cap(cap);
            Ok(())
        }
        Err(std::env::VarError::NotPresent) => Ok(()),
        Err(e) => Err(Failure::Input(format!("OI_DEGREE_CAP: {e}"))),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(2) } else { ExitCode::SUCCESS };
        }
    };
    match apply_degree_cap().and_then(|_| run(&cli)) {
        Ok(report) => {
            println!("{}", if cli.machine { &report.machine } else { &report.table });
            if report.pass {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
