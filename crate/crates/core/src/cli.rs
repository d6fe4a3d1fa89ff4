//! Command-line front end for the `lhopf` binary.

use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use crate::composition::DEFAULT_DEGREE_CAP;
use crate::context::Context;
use crate::dual::chi_dual;
use crate::error::{Error, Result};
use crate::expr::{parse_composition, parse_exponents, parse_expr, Expr};
use crate::leibniz::chi_free;
use crate::linear::{Basis, F2Sum};
use crate::verify::{self, Report, Side};

/// Sweep bound for `verify` when `--max-degree` is not given.
pub const DEFAULT_VERIFY_DEGREE: u32 = 8;

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERIFY_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "lhopf",
    version,
    about = "Mod 2 Leibniz-Hopf algebra and the dual Steenrod algebra"
)]
pub struct Cli {
    /// Degree cap for enumerations; also the sweep bound of `verify`
    #[arg(long, global = true)]
    pub max_degree: Option<u32>,

    /// Emit JSON instead of text
    #[arg(long, global = true)]
    pub json: bool,

    /// Suppress informational output
    #[arg(long, global = true)]
    pub quiet: bool,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Overlapping shuffle product of two dual-basis expressions
    Osp { left: String, right: String },
    /// Reduce a free-basis expression to admissible form
    Adem { expr: String },
    /// pi* of a dual admissible element or a Milnor monomial
    Pistar {
        #[arg(long, value_enum, ignore_case = true, default_value = "sq")]
        basis: PiStarBasis,
        sequence: String,
    },
    /// Expand a Milnor monomial in the dual admissible basis
    Milnor { exponents: String },
    /// Antipode on the free or dual side
    Chi {
        #[arg(long, value_enum)]
        side: Option<SideArg>,
        expr: String,
    },
    /// Apply the duality D, swapping S^ and S_
    Dualize { expr: String },
    /// Emit all coefficient rows of one degree
    Table {
        #[arg(long)]
        degree: u32,
        #[arg(long, value_enum)]
        what: TableKind,
    },
    /// Run verification suites; exit status 1 if any fails
    Verify {
        #[arg(long, value_enum, default_value = "all")]
        suite: Vec<Suite>,
        /// Also write the JSON report to this file
        #[arg(long)]
        output: Option<PathBuf>,
    },
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum PiStarBasis {
    Sq,
    Xi,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum SideArg {
    Free,
    Dual,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum TableKind {
    Adem,
    Milnor,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    All,
    Antipode,
    Antihomomorphism,
    Duality,
    Invariants,
    Transpose,
    Bialgebra,
    Shuffle,
    Adem,
    Triangularity,
    Milnor,
    Formulas,
}

impl Suite {
    const EVERY: [Suite; 11] = [
        Suite::Antipode,
        Suite::Antihomomorphism,
        Suite::Duality,
        Suite::Invariants,
        Suite::Transpose,
        Suite::Bialgebra,
        Suite::Shuffle,
        Suite::Adem,
        Suite::Triangularity,
        Suite::Milnor,
        Suite::Formulas,
    ];
}

fn print_sum<T>(out: &mut impl Write, json: bool, sum: &F2Sum<T>) -> std::io::Result<()>
where
    T: Ord + Clone + std::fmt::Display + serde::Serialize,
{
    if json {
        writeln!(out, "{}", serde_json::to_string(sum).expect("serializable"))
    } else {
        writeln!(out, "{sum}")
    }
}

/// Runs one parsed command line and returns the process exit code. Errors
/// from the algebra (parse errors, cap violations, bad arguments) are returned
/// to the caller, which maps them to [`EXIT_USAGE`].
pub fn run(cli: &Cli, out: &mut impl Write) -> Result<i32> {
    let cap = cli.max_degree.unwrap_or(DEFAULT_DEGREE_CAP);
    let ctx = Context::new(cap);
    let io = |e: std::io::Error| Error::Parse {
        column: 0,
        message: format!("write failed: {e}"),
    };
    match &cli.command {
        Command::Osp { left, right } => {
            let x = parse_expr(left)?.into_sum(Basis::Dual)?;
            let y = parse_expr(right)?.into_sum(Basis::Dual)?;
            print_sum(out, cli.json, &ctx.shuffle_product(&x, &y)?).map_err(io)?;
        }
        Command::Adem { expr } => {
            let x = parse_expr(expr)?.into_sum(Basis::Free)?;
            print_sum(out, cli.json, &ctx.adem_reduce(&x)?).map_err(io)?;
        }
        Command::Pistar { basis, sequence } => {
            let image = match basis {
                PiStarBasis::Sq => {
                    let j = parse_composition(sequence)?;
                    ctx.pi_star_sq(&j)?
                }
                PiStarBasis::Xi => {
                    let l = parse_exponents(sequence)?;
                    ctx.check_degree(l.degree()?)?;
                    ctx.pi_star_xi_monomial(&l)?
                }
            };
            print_sum(out, cli.json, &image).map_err(io)?;
        }
        Command::Milnor { exponents } => {
            let l = parse_exponents(exponents)?;
            ctx.check_degree(l.degree()?)?;
            print_sum(out, cli.json, &ctx.milnor_to_admissible(&l)?).map_err(io)?;
        }
        Command::Chi { side, expr } => {
            let parsed = parse_expr(expr)?;
            let side = match (side, parsed.basis()) {
                (Some(SideArg::Free), _) | (None, Some(Basis::Free)) => Side::Free,
                (Some(SideArg::Dual), _) | (None, Some(Basis::Dual)) => Side::Dual,
                (None, Some(b)) => {
                    return Err(Error::BasisMismatch {
                        left: Basis::Dual,
                        right: b,
                    })
                }
                (None, None) => Side::Dual,
            };
            let x = parsed.into_sum(side.basis())?;
            let y = match side {
                Side::Free => chi_free(&x)?,
                Side::Dual => chi_dual(&x)?,
            };
            print_sum(out, cli.json, &y).map_err(io)?;
        }
        Command::Dualize { expr } => {
            let y = match parse_expr(expr)? {
                Expr::Zero => {
                    return Err(Error::Parse {
                        column: 1,
                        message: "cannot infer the basis of 0".into(),
                    })
                }
                Expr::Milnor(_) => {
                    return Err(Error::BasisMismatch {
                        left: Basis::Free,
                        right: Basis::Milnor,
                    })
                }
                Expr::Sum(s) => verify::dualize(&s).ok_or(Error::BasisMismatch {
                    left: Basis::Free,
                    right: s.basis(),
                })?,
            };
            print_sum(out, cli.json, &y).map_err(io)?;
        }
        Command::Table { degree, what } => {
            write_table(&ctx, *degree, *what, cli.json, out)?;
        }
        Command::Verify { suite, output } => {
            let sweep = cli.max_degree.unwrap_or(DEFAULT_VERIFY_DEGREE);
            let reports = run_suites(&ctx, suite, sweep)?;
            let ok = reports.iter().all(Report::passed);
            let json = serde_json::to_string_pretty(&reports).expect("serializable");
            if let Some(path) = output {
                std::fs::write(path, &json).map_err(io)?;
            }
            if cli.json {
                writeln!(out, "{json}").map_err(io)?;
            } else if !cli.quiet {
                for r in &reports {
                    writeln!(out, "{r}").map_err(io)?;
                }
            }
            return Ok(if ok { EXIT_OK } else { EXIT_VERIFY_FAILED });
        }
    }
    Ok(EXIT_OK)
}

fn write_table(
    ctx: &Context,
    degree: u32,
    what: TableKind,
    json: bool,
    out: &mut impl Write,
) -> Result<()> {
    let table = ctx.degree_table(degree)?;
    let rows: Vec<(String, &F2Sum)> = match what {
        TableKind::Adem => table
            .pi_star_sq()
            .iter()
            .map(|(j, image)| (format!("{}{j}", Basis::DualAdmissible), image))
            .collect(),
        TableKind::Milnor => table
            .xi_expansions()
            .iter()
            .map(|(l, row)| (format!("{}{l}", Basis::Milnor), row))
            .collect(),
    };
    let width = rows.iter().map(|(label, _)| label.len()).max().unwrap_or(0);
    let io = |e: std::io::Error| Error::Parse {
        column: 0,
        message: format!("write failed: {e}"),
    };
    for (label, sum) in rows {
        if json {
            let line = json!({ "degree": degree, "row": label, "terms": sum.terms() });
            writeln!(out, "{line}").map_err(io)?;
        } else {
            writeln!(out, "{label:<width$}  =  {sum}").map_err(io)?;
        }
    }
    Ok(())
}

/// Runs the selected suites with `max_degree` as the sweep bound.
pub fn run_suites(ctx: &Context, suites: &[Suite], max_degree: u32) -> Result<Vec<Report>> {
    let selected: Vec<Suite> = if suites.contains(&Suite::All) {
        Suite::EVERY.to_vec()
    } else {
        suites.to_vec()
    };
    let mut reports = Vec::new();
    for s in selected {
        match s {
            Suite::All => unreachable!("expanded above"),
            Suite::Antipode => {
                for side in [Side::Free, Side::Dual] {
                    reports.push(verify::check_antipode_axiom(ctx, side, max_degree)?);
                }
            }
            Suite::Antihomomorphism => {
                for side in [Side::Free, Side::Dual] {
                    reports.push(verify::check_antihomomorphism(
                        ctx, side, max_degree, 200, 0x5eed,
                    )?);
                }
            }
            Suite::Duality => reports.push(verify::check_duality_theorem(ctx, max_degree)?),
            Suite::Invariants => {
                for n in 0..=max_degree {
                    reports.push(verify::check_invariant_duality(ctx, n)?);
                }
            }
            Suite::Transpose => {
                for n in 0..=max_degree {
                    reports.push(verify::check_transpose(ctx, n)?);
                }
            }
            Suite::Bialgebra => {
                for side in [Side::Free, Side::Dual] {
                    reports.push(verify::check_bialgebra(ctx, side, max_degree)?);
                }
            }
            Suite::Shuffle => reports.push(verify::check_shuffle_commutativity(ctx, max_degree)?),
            Suite::Adem => reports.push(verify::check_adem_routes(ctx, max_degree)?),
            Suite::Triangularity => reports.push(verify::check_triangularity(ctx, max_degree)?),
            Suite::Milnor => {
                let max_n = (u32::BITS - (max_degree + 1).leading_zeros() - 1).max(1);
                reports.push(verify::check_milnor_conjugation(ctx, max_n)?);
            }
            Suite::Formulas => reports.push(verify::check_chi_formulas(ctx, max_degree)?),
        }
    }
    Ok(reports)
}
