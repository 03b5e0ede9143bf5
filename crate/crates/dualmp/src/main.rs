//! `dualmp`: generalized inverses, SVD, order-law checkers, and solvers for
//! dual complex matrices, driven by small JSON files.
//!
//! Exit codes: `0` success, `1` input or parse error, `2` nonexistence (a
//! requested inverse or decomposition does not exist), `3` verification
//! failure (a candidate fails its defining equations, or an internal
//! cross-check or acceptance criterion fails). Output on standard out is
//! byte-identical across runs for identical inputs, seeds, and flags.

use clap::{Parser, Subcommand, ValueEnum};
use dualmp::error::Error;
use dualmp::exact::{
    RationalDualMatrix, exact_alternative_holds, exact_essential_split, exact_ndmpi,
    exact_penrose_holds,
};
use dualmp::inverse::{PenroseReport, dmpgi, mpdgi, ndmpi, penrose_check, wdmpgi};
use dualmp::io::{DualMatrixFile, emit, parse_path};
use dualmp::laws::{
    LawReport, check_commutation_consequences, check_fol, check_rol_commuting,
    check_rol_dmpgi_link, check_rol_essential, check_rol_invertible, check_rol_plain,
    check_rol_single, check_rol_via_123,
};
use dualmp::matrix::DualMatrix;
use dualmp::solve::{dual_rank_decomposition, solve_min_norm};
use dualmp::suite::run_acceptance_suite;
use dualmp::svd::dual_svd;
use num_complex::Complex64;
use serde::Serialize;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

#[derive(Parser)]
#[command(
    name = "dualmp",
    version,
    about = "Linear algebra over dual complex matrices",
    long_about = "Generalized inverses (NDMPI, MPDGI, DMPGI, weakly dual MP), the dual SVD, \
                  order-law checkers, a least-squares solver, and a rank decomposition for \
                  dual complex matrices stored as JSON files."
)]
struct Cli {
    /// Working tolerance for rank decisions and residual verdicts.
    #[arg(long, global = true, env = "DUALMP_TOL", default_value_t = dualmp::DEFAULT_TOL)]
    tol: f64,

    /// Seed for the deterministic batteries (used by `suite`).
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,

    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Pretty)]
    format: Format,

    /// Route through the exact rational oracle (dimensions up to 4;
    /// supported by `ndmpi`, `dmpgi`, `esplit`, and `verify`).
    #[arg(long, global = true)]
    exact: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Pretty,
}

#[derive(Clone, Copy, ValueEnum)]
enum LawId {
    /// Essential-form two-premise criterion.
    Essential,
    /// Plain two-premise criterion.
    Plain,
    /// Single combined premise.
    Single,
    /// Criterion linking the reverse law to DMPGI existence of the product.
    DmpgiLink,
    /// Commuting-projector criterion.
    Commuting,
    /// Invertible left factor.
    Invertible,
    /// Witness characterization through {1,2,3}-inverses.
    #[value(name = "via-123")]
    Via123,
    /// Commutation identities implied by the two essential premises.
    Consequences,
}

#[derive(Subcommand)]
enum Command {
    /// Nonessential dual Moore-Penrose inverse (exists for every input).
    Ndmpi { matrix: PathBuf },
    /// Moore-Penrose dual generalized inverse formula (always defined, may
    /// violate the defining equations).
    Mpdgi { matrix: PathBuf },
    /// Dual Moore-Penrose generalized inverse (exits 2 when it does not
    /// exist).
    Dmpgi { matrix: PathBuf },
    /// Weakly dual Moore-Penrose inverse.
    Wdmpgi { matrix: PathBuf },
    /// Dual singular value decomposition.
    Dsvd { matrix: PathBuf },
    /// Essential/nonessential split.
    Esplit { matrix: PathBuf },
    /// Dual rank decomposition (exits 2 when none exists).
    Decompose { matrix: PathBuf },
    /// Check one reverse-order-law criterion on a pair of matrices.
    CheckRol {
        law: LawId,
        a: PathBuf,
        b: PathBuf,
    },
    /// Check the forward-order-law criterion on a pair of square matrices.
    CheckFol { a: PathBuf, b: PathBuf },
    /// Minimum-norm least-squares solve of `A x = b`.
    Solve { matrix: PathBuf, rhs: PathBuf },
    /// Verify a candidate inverse against the four defining equations
    /// (exits 3 when a selected equation fails).
    Verify {
        matrix: PathBuf,
        candidate: PathBuf,
        /// Comma-separated subset of 1,2,3,4 (default: all four).
        #[arg(long, value_delimiter = ',')]
        equations: Option<Vec<usize>>,
    },
    /// Run the full acceptance battery (exits 3 on any criterion failure).
    Suite,
}

/// Stdout payload plus process exit code.
struct Outcome {
    text: String,
    code: u8,
}

impl Outcome {
    fn ok(text: String) -> Self {
        Outcome { text, code: 0 }
    }
}

fn exit_code(err: &Error) -> u8 {
    match err {
        Error::Parse(_)
        | Error::Dimension(_)
        | Error::NotRepresentable { .. }
        | Error::ShapeMismatch { .. }
        | Error::InvalidRank { .. }
        | Error::NotInvertible { .. }
        | Error::NotAppreciable { .. }
        | Error::Negative { .. } => 1,
        Error::DmpgiDoesNotExist { .. } | Error::NotDecomposable { .. } => 2,
        Error::OracleMismatch { .. }
        | Error::CandidateRejected { .. }
        | Error::NotAMember { .. }
        | Error::InternalExistenceFailure { .. }
        | Error::NoConvergence { .. }
        | Error::NotHermitian { .. } => 3,
    }
}

// ---------------------------------------------------------------------------
// Pretty rendering
// ---------------------------------------------------------------------------

/// Shortest unambiguous text for one complex number: `0`, `2`, `-1.5i`,
/// `1+2i`. Negative zero collapses to zero.
fn fmt_complex(z: Complex64) -> String {
    let re = if z.re == 0.0 { 0.0 } else { z.re };
    let im = if z.im == 0.0 { 0.0 } else { z.im };
    match (re == 0.0, im == 0.0) {
        (true, true) => "0".into(),
        (false, true) => format!("{re}"),
        (true, false) => format!("{im}i"),
        (false, false) if im < 0.0 => format!("{re}{im}i"),
        (false, false) => format!("{re}+{im}i"),
    }
}

/// One dual entry: `s`, `(d)eps`, or `s + (d)eps`.
fn fmt_entry(s: Complex64, d: Complex64) -> String {
    let dual_zero = d.re == 0.0 && d.im == 0.0;
    let standard_zero = s.re == 0.0 && s.im == 0.0;
    if dual_zero {
        fmt_complex(s)
    } else if standard_zero {
        format!("({})eps", fmt_complex(d))
    } else {
        format!("{} + ({})eps", fmt_complex(s), fmt_complex(d))
    }
}

/// Column-aligned grid of dual entries.
fn render_matrix(m: &DualMatrix) -> String {
    let (rows, cols) = m.shape();
    if rows == 0 || cols == 0 {
        return format!("[empty {rows}x{cols} matrix]");
    }
    let cells: Vec<Vec<String>> = (0..rows)
        .map(|i| {
            (0..cols)
                .map(|j| fmt_entry(m.standard()[(i, j)], m.dual()[(i, j)]))
                .collect()
        })
        .collect();
    let widths: Vec<usize> = (0..cols)
        .map(|j| cells.iter().map(|row| row[j].len()).max().unwrap_or(0))
        .collect();
    cells
        .iter()
        .map(|row| {
            let line = row
                .iter()
                .zip(&widths)
                .map(|(cell, w)| format!("{cell:>w$}"))
                .collect::<Vec<_>>()
                .join("  ");
            format!("[ {line} ]")
        })
        .collect::<Vec<_>>()
        .join("\n")
}

fn verdict(pass: bool) -> &'static str {
    if pass { "PASS" } else { "FAIL" }
}

fn render_law_report(report: &LawReport) -> String {
    let mut out = vec![format!("law: {}", report.law_id)];
    for (k, (residual, holds)) in report
        .premise_residuals
        .iter()
        .zip(&report.premises_hold)
        .enumerate()
    {
        out.push(format!(
            "premise {}: residual {residual:.3e} {}",
            k + 1,
            verdict(*holds)
        ));
    }
    out.push(format!(
        "conclusion: residual {:.3e} {}",
        report.conclusion_residual,
        verdict(report.conclusion_holds)
    ));
    out.push(format!(
        "implication respected: {}",
        report.implication_respected
    ));
    out.join("\n")
}

fn render_penrose(report: &PenroseReport, passed: bool) -> String {
    let mut out = Vec::new();
    for k in 1..=4usize {
        match (report.residual_eq(k), report.passes_eq(k)) {
            (Some(residual), Some(holds)) => {
                out.push(format!("equation {k}: residual {residual:.3e} {}", verdict(holds)));
            }
            _ => out.push(format!("equation {k}: not requested")),
        }
    }
    out.push(format!(
        "alternative first-equation form: residual {:.3e}",
        report.residual_alternative
    ));
    out.push(format!("verdict: {}", verdict(passed)));
    out.join("\n")
}

// ---------------------------------------------------------------------------
// Serializable report shapes for --format json
// ---------------------------------------------------------------------------

#[derive(Serialize)]
struct DsvdOutput {
    u: DualMatrixFile,
    /// Singular values as `[standard, dual]` pairs, appreciable first.
    sigma: Vec<[f64; 2]>,
    v: DualMatrixFile,
    rank_appreciable: usize,
    rank_total: usize,
    gap_warning: bool,
}

#[derive(Serialize)]
struct EsplitOutput {
    essential: DualMatrixFile,
    nonessential: DualMatrixFile,
    nonessential_norm: f64,
}

#[derive(Serialize)]
struct DecomposeOutput {
    left: DualMatrixFile,
    right: DualMatrixFile,
    rank: usize,
}

#[derive(Serialize)]
struct SolveOutput {
    solution: DualMatrixFile,
    residual_norm: [f64; 2],
    rank_used: usize,
}

#[derive(Serialize)]
struct VerifyOutput {
    report: PenroseReport,
    passed: bool,
}

#[derive(Serialize)]
struct ExactVerifyOutput {
    equations_hold: Vec<bool>,
    checked_equations: Vec<usize>,
    alternative_holds: bool,
    passed: bool,
}

// ---------------------------------------------------------------------------
// Command plumbing
// ---------------------------------------------------------------------------

fn load(path: &Path) -> Result<DualMatrix, Error> {
    parse_path(path)
}

fn load_exact(path: &Path) -> Result<RationalDualMatrix, Error> {
    let float = load(path)?;
    let (m, n) = float.shape();
    if m > 4 || n > 4 {
        return Err(Error::Dimension(format!(
            "the exact oracle supports dimensions up to 4, got {m}x{n}"
        )));
    }
    RationalDualMatrix::from_float(&float)
}

fn matrix_outcome(m: &DualMatrix, format: Format) -> Result<Outcome, Error> {
    match format {
        Format::Json => Ok(Outcome::ok(emit(m)?)),
        Format::Pretty => Ok(Outcome::ok(render_matrix(m))),
    }
}

fn json_outcome<T: Serialize>(value: &T) -> Result<String, Error> {
    serde_json::to_string(value).map_err(|e| Error::Parse(format!("serialization failed: {e}")))
}

fn reject_exact(exact: bool, command: &str) -> Result<(), Error> {
    if exact {
        return Err(Error::Parse(format!(
            "--exact is not supported for `{command}`"
        )));
    }
    Ok(())
}

#[allow(clippy::too_many_lines)]
fn run(cli: &Cli) -> Result<Outcome, Error> {
    let tol = cli.tol;
    match &cli.command {
        Command::Ndmpi { matrix } => {
            let result = if cli.exact {
                exact_ndmpi(&load_exact(matrix)?)?.to_float()
            } else {
                ndmpi(&load(matrix)?, tol)?
            };
            matrix_outcome(&result, cli.format)
        }
        Command::Mpdgi { matrix } => {
            reject_exact(cli.exact, "mpdgi")?;
            matrix_outcome(&mpdgi(&load(matrix)?, tol)?, cli.format)
        }
        Command::Dmpgi { matrix } => {
            let result = if cli.exact {
                let a = load_exact(matrix)?;
                let (_, nonessential) = exact_essential_split(&a)?;
                if !nonessential.dual.is_zero() {
                    let float_norm = load(matrix)?.nonessential_norm(tol)?;
                    return Err(Error::DmpgiDoesNotExist {
                        nonessential_norm: float_norm,
                        tol: 0.0,
                    });
                }
                exact_ndmpi(&a)?.to_float()
            } else {
                dmpgi(&load(matrix)?, tol)?
            };
            matrix_outcome(&result, cli.format)
        }
        Command::Wdmpgi { matrix } => {
            reject_exact(cli.exact, "wdmpgi")?;
            matrix_outcome(&wdmpgi(&load(matrix)?, tol)?, cli.format)
        }
        Command::Dsvd { matrix } => {
            reject_exact(cli.exact, "dsvd")?;
            let svd = dual_svd(&load(matrix)?, tol)?;
            match cli.format {
                Format::Json => {
                    let out = DsvdOutput {
                        u: DualMatrixFile::from_matrix(&svd.u),
                        sigma: svd.sigma.iter().map(|s| [s.standard, s.dual]).collect(),
                        v: DualMatrixFile::from_matrix(&svd.v),
                        rank_appreciable: svd.r,
                        rank_total: svd.t,
                        gap_warning: svd.gap_warning,
                    };
                    Ok(Outcome::ok(json_outcome(&out)?))
                }
                Format::Pretty => {
                    let mut out = vec![format!(
                        "appreciable rank r = {}, total rank t = {}{}",
                        svd.r,
                        svd.t,
                        if svd.gap_warning {
                            " (warning: nearly repeated singular values)"
                        } else {
                            ""
                        }
                    )];
                    for (k, s) in svd.sigma.iter().enumerate() {
                        out.push(format!(
                            "sigma[{k}] = {}",
                            fmt_entry(
                                Complex64::new(s.standard, 0.0),
                                Complex64::new(s.dual, 0.0)
                            )
                        ));
                    }
                    out.push(format!("U =\n{}", render_matrix(&svd.u)));
                    out.push(format!("V =\n{}", render_matrix(&svd.v)));
                    Ok(Outcome::ok(out.join("\n")))
                }
            }
        }
        Command::Esplit { matrix } => {
            let (essential, nonessential, norm) = if cli.exact {
                let a = load_exact(matrix)?;
                let (e, n) = exact_essential_split(&a)?;
                let float = load(matrix)?;
                (e.to_float(), n.to_float(), float.nonessential_norm(tol)?)
            } else {
                let a = load(matrix)?;
                let split = a.essential_split(tol)?;
                let norm = a.nonessential_norm(tol)?;
                (split.essential, split.nonessential, norm)
            };
            match cli.format {
                Format::Json => {
                    let out = EsplitOutput {
                        essential: DualMatrixFile::from_matrix(&essential),
                        nonessential: DualMatrixFile::from_matrix(&nonessential),
                        nonessential_norm: norm,
                    };
                    Ok(Outcome::ok(json_outcome(&out)?))
                }
                Format::Pretty => Ok(Outcome::ok(format!(
                    "nonessential norm: {norm:.3e}\nessential part =\n{}\nnonessential part =\n{}",
                    render_matrix(&essential),
                    render_matrix(&nonessential)
                ))),
            }
        }
        Command::Decompose { matrix } => {
            reject_exact(cli.exact, "decompose")?;
            let decomposition = dual_rank_decomposition(&load(matrix)?, tol)?;
            let rank = decomposition.left.cols();
            match cli.format {
                Format::Json => {
                    let out = DecomposeOutput {
                        left: DualMatrixFile::from_matrix(&decomposition.left),
                        right: DualMatrixFile::from_matrix(&decomposition.right),
                        rank,
                    };
                    Ok(Outcome::ok(json_outcome(&out)?))
                }
                Format::Pretty => Ok(Outcome::ok(format!(
                    "rank: {rank}\nleft factor =\n{}\nright factor =\n{}",
                    render_matrix(&decomposition.left),
                    render_matrix(&decomposition.right)
                ))),
            }
        }
        Command::CheckRol { law, a, b } => {
            reject_exact(cli.exact, "check-rol")?;
            let a = load(a)?;
            let b = load(b)?;
            let report = match law {
                LawId::Essential => check_rol_essential(&a, &b, tol)?,
                LawId::Plain => check_rol_plain(&a, &b, tol)?,
                LawId::Single => check_rol_single(&a, &b, tol)?,
                LawId::DmpgiLink => check_rol_dmpgi_link(&a, &b, tol)?,
                LawId::Commuting => check_rol_commuting(&a, &b, tol)?,
                LawId::Invertible => check_rol_invertible(&a, &b, tol)?,
                LawId::Via123 => check_rol_via_123(&a, &b, tol)?,
                LawId::Consequences => check_commutation_consequences(&a, &b, tol)?,
            };
            match cli.format {
                Format::Json => Ok(Outcome::ok(json_outcome(&report)?)),
                Format::Pretty => Ok(Outcome::ok(render_law_report(&report))),
            }
        }
        Command::CheckFol { a, b } => {
            reject_exact(cli.exact, "check-fol")?;
            let report = check_fol(&load(a)?, &load(b)?, tol)?;
            match cli.format {
                Format::Json => Ok(Outcome::ok(json_outcome(&report)?)),
                Format::Pretty => Ok(Outcome::ok(render_law_report(&report))),
            }
        }
        Command::Solve { matrix, rhs } => {
            reject_exact(cli.exact, "solve")?;
            let result = solve_min_norm(&load(matrix)?, &load(rhs)?, tol)?;
            match cli.format {
                Format::Json => {
                    let out = SolveOutput {
                        solution: DualMatrixFile::from_matrix(&result.solution),
                        residual_norm: [result.residual_norm.standard, result.residual_norm.dual],
                        rank_used: result.rank_used,
                    };
                    Ok(Outcome::ok(json_outcome(&out)?))
                }
                Format::Pretty => Ok(Outcome::ok(format!(
                    "rank used: {}\nresidual norm: {}\nsolution =\n{}",
                    result.rank_used,
                    fmt_entry(
                        Complex64::new(result.residual_norm.standard, 0.0),
                        Complex64::new(result.residual_norm.dual, 0.0)
                    ),
                    render_matrix(&result.solution)
                ))),
            }
        }
        Command::Verify {
            matrix,
            candidate,
            equations,
        } => {
            let which: Vec<usize> = equations.clone().unwrap_or_else(|| vec![1, 2, 3, 4]);
            if cli.exact {
                let a = load_exact(matrix)?;
                let x = load_exact(candidate)?;
                let verdicts = exact_penrose_holds(&a, &x)?;
                let alternative = exact_alternative_holds(&a, &x)?;
                for &k in &which {
                    if !(1..=4).contains(&k) {
                        return Err(Error::Parse(format!(
                            "equation selector {k} is outside 1..=4"
                        )));
                    }
                }
                let passed = which.iter().all(|&k| verdicts[k - 1]);
                let out = ExactVerifyOutput {
                    equations_hold: which.iter().map(|&k| verdicts[k - 1]).collect(),
                    checked_equations: which.clone(),
                    alternative_holds: alternative,
                    passed,
                };
                let text = match cli.format {
                    Format::Json => json_outcome(&out)?,
                    Format::Pretty => {
                        let mut lines: Vec<String> = which
                            .iter()
                            .map(|&k| {
                                format!("equation {k}: {}", verdict(verdicts[k - 1]))
                            })
                            .collect();
                        lines.push(format!(
                            "alternative first-equation form: {}",
                            verdict(alternative)
                        ));
                        lines.push(format!("verdict: {}", verdict(passed)));
                        lines.join("\n")
                    }
                };
                Ok(Outcome {
                    text,
                    code: if passed { 0 } else { 3 },
                })
            } else {
                let a = load(matrix)?;
                let x = load(candidate)?;
                let report = penrose_check(&a, &x, &which, tol)?;
                let passed = which.iter().all(|&k| report.passes_eq(k).unwrap_or(false));
                let text = match cli.format {
                    Format::Json => json_outcome(&VerifyOutput {
                        report: report.clone(),
                        passed,
                    })?,
                    Format::Pretty => render_penrose(&report, passed),
                };
                Ok(Outcome {
                    text,
                    code: if passed { 0 } else { 3 },
                })
            }
        }
        Command::Suite => {
            reject_exact(cli.exact, "suite")?;
            let report = run_acceptance_suite(tol, cli.seed)?;
            let passed = report.all_passed();
            let text = match cli.format {
                Format::Json => json_outcome(&report)?,
                Format::Pretty => {
                    let mut lines: Vec<String> = report
                        .results
                        .iter()
                        .map(|r| format!("{} {:<28} {}", verdict(r.passed), r.id, r.details))
                        .collect();
                    lines.push(format!(
                        "{}: {} of {} criteria passed",
                        verdict(passed),
                        report.results.iter().filter(|r| r.passed).count(),
                        report.results.len()
                    ));
                    lines.join("\n")
                }
            };
            Ok(Outcome {
                text,
                code: if passed { 0 } else { 3 },
            })
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(outcome) => {
            println!("{}", outcome.text);
            ExitCode::from(outcome.code)
        }
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(exit_code(&err))
        }
    }
}
