use std::fmt::Write as _;
use std::fs;
use std::io::{self, Write as _};
use std::path::Path;

use posmap_core::audit::Verdict;
use posmap_core::choi::{choi_closed_form, is_completely_positive};
use posmap_core::numerics::herm_eigs;
use posmap_core::pmap::{apply_map, MapParams};
use posmap_core::reproduce::{self, ReproConfig};
use posmap_core::states::{horodecki_state, npt_state, BipartiteState};
use posmap_core::witness::{detect, DetectionReport, WitnessCandidate};
use posmap_core::{Error, Tolerances};

use crate::args::{ChoiArgs, Command, DetectArgs, MapApplyArgs, ReproduceArgs};
use crate::error::CliError;
use crate::matrix_file::{format_f64, matrix_json, read_matrix};
use crate::report::Report;

pub fn run(command: &Command) -> Result<(), CliError> {
    let tol = Tolerances::default();
    match command {
        Command::MapApply(args) => map_apply(args),
        Command::Choi(args) => choi(args, &tol),
        Command::Detect(args) => detect_cmd(args, &tol),
        Command::Reproduce(args) => reproduce_cmd(args, &tol),
    }
}

fn emit(out: Option<&Path>, text: &str) -> Result<(), CliError> {
    match out {
        Some(path) => fs::write(path, text).map_err(|e| CliError::Output(path.display().to_string(), e)),
        None => print_stdout(text),
    }
}

/// Writes to standard output; a closed pipe is not an error.
fn print_stdout(text: &str) -> Result<(), CliError> {
    match io::stdout().lock().write_all(text.as_bytes()) {
        Err(e) if e.kind() != io::ErrorKind::BrokenPipe => Err(CliError::Output(String::from("standard output"), e)),
        _ => Ok(()),
    }
}

fn map_apply(args: &MapApplyArgs) -> Result<(), CliError> {
    let params = MapParams::new(args.n, args.alpha, args.beta)?;
    let input = read_matrix(&args.input)?;
    if input.rows() != args.n || input.cols() != args.n {
        return Err(CliError::Usage(format!(
            "input is {}x{}, expected {n}x{n}",
            input.rows(),
            input.cols(),
            n = args.n
        )));
    }
    emit(args.out.as_deref(), &matrix_json(&apply_map(&params, &input)?)?)
}

fn choi(args: &ChoiArgs, tol: &Tolerances) -> Result<(), CliError> {
    MapParams::qubit(args.alpha, args.beta)?;
    let c = choi_closed_form(args.alpha, args.beta).matrix;
    emit(args.out.as_deref(), &matrix_json(&c)?)?;

    let mut report = String::new();
    if args.eigs {
        let values = herm_eigs(&c, tol.eps_eig)?.values;
        let list: Vec<String> = values.iter().map(|&v| format_f64(v)).collect();
        writeln!(report, "eigenvalues: {}", list.join(" ")).unwrap();
    }
    if args.cp_check {
        let v = is_completely_positive(args.alpha, args.beta, tol)?;
        match &v.certificate {
            None if args.alpha == 0.0 && args.beta == 0.0 => {
                writeln!(report, "completely positive (zero map)").unwrap();
            }
            None => {
                writeln!(
                    report,
                    "completely positive (min eigenvalue {})",
                    format_f64(v.min_eigenvalue)
                )
                .unwrap();
            }
            Some(cert) => {
                writeln!(
                    report,
                    "not completely positive (min eigenvalue {})",
                    format_f64(v.min_eigenvalue)
                )
                .unwrap();
                if let Some(m) = cert.minor {
                    writeln!(
                        report,
                        "certificate: principal minor {{{},{}}} det {}",
                        m.rows.0 + 1,
                        m.rows.1 + 1,
                        format_f64(m.det)
                    )
                    .unwrap();
                }
                let entries: Vec<String> = cert
                    .vector
                    .iter()
                    .map(|z| format!("{}{:+.16e}i", format_f64(z.re), z.im))
                    .collect();
                writeln!(
                    report,
                    "certificate: vector [{}] with <v|C|v> = {}",
                    entries.join(", "),
                    format_f64(cert.quadratic_form)
                )
                .unwrap();
            }
        }
    }
    print_stdout(&report)
}

fn parse_witness(spec: &str, tol: &Tolerances) -> Result<WitnessCandidate, CliError> {
    if let Some(rest) = spec.strip_prefix("builtin:") {
        let parts: Vec<&str> = rest.split(',').map(str::trim).collect();
        let parsed: Vec<f64> = parts
            .iter()
            .map(|p| p.parse::<f64>())
            .collect::<Result<_, _>>()
            .map_err(|_| CliError::Usage(format!("bad builtin witness {spec:?}; expected builtin:ALPHA,BETA")))?;
        let &[alpha, beta] = parsed.as_slice() else {
            return Err(CliError::Usage(format!(
                "bad builtin witness {spec:?}; expected builtin:ALPHA,BETA"
            )));
        };
        MapParams::qubit(alpha, beta)?;
        return Ok(WitnessCandidate::from_choi(choi_closed_form(alpha, beta)));
    }
    let m = read_matrix(Path::new(spec))?;
    Ok(WitnessCandidate::new(m, 2, 4, tol)?)
}

fn parse_state(args: &DetectArgs, tol: &Tolerances) -> Result<BipartiteState, CliError> {
    match args.state.as_str() {
        "horodecki" => {
            let b = args
                .b
                .ok_or_else(|| CliError::Usage(String::from("--b is required with --state horodecki")))?;
            horodecki_state(b).map_err(|e| CliError::Usage(e.to_string()))
        }
        "npt" => Ok(npt_state()),
        path => {
            let m = read_matrix(Path::new(path))?;
            BipartiteState::new(m, 2, 4, "file", None, tol).map_err(|e| match e {
                Error::InvalidState(msg) => CliError::InvalidState(msg),
                other => CliError::InvalidState(other.to_string()),
            })
        }
    }
}

pub const CSV_HEADER: &str = "state,param,expectation,detected";

pub fn csv_row(r: &DetectionReport) -> String {
    let param = r.parameter.map(format_f64).unwrap_or_default();
    format!("{},{},{},{}", r.state, param, format_f64(r.expectation), r.detected)
}

fn detect_cmd(args: &DetectArgs, tol: &Tolerances) -> Result<(), CliError> {
    let w = parse_witness(&args.witness, tol)?;
    let rho = parse_state(args, tol)?;
    let report = detect(&w, &rho, tol)?;
    emit(args.out.as_deref(), &format!("{CSV_HEADER}\n{}\n", csv_row(&report)))
}

fn reproduce_cmd(args: &ReproduceArgs, tol: &Tolerances) -> Result<(), CliError> {
    let config = ReproConfig {
        b_grid: args.grid as usize,
        ..ReproConfig::default()
    };
    let records = reproduce::run(&config, tol)?;
    let report = Report::new(config, *tol, records);
    let json = report.to_json()?;
    if args.out.is_some() {
        emit(args.out.as_deref(), &json)?;
        let lines: String = report
            .records
            .iter()
            .map(|r| format!("{} {}\n", r.claim_id, verdict_name(r.verdict)))
            .collect();
        print_stdout(&lines)
    } else {
        emit(None, &json)
    }
}

fn verdict_name(v: Verdict) -> &'static str {
    match v {
        Verdict::Confirmed => "CONFIRMED",
        Verdict::Refuted => "REFUTED",
        Verdict::Inapplicable => "INAPPLICABLE",
    }
}
