use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use special_mckay::check::{check_group, sweep, ValidationReport};
use special_mckay::report::{self, GroupData};
use special_mckay::{make_group, Error, GroupParams};

#[derive(Parser)]
#[command(
    name = "special-mckay",
    version,
    about = "Special representations, toric resolutions and G-clusters of cyclic quotient surface singularities"
)]
struct Cli {
    /// Output format
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,

    /// Suppress informational output
    #[arg(long, short, global = true)]
    quiet: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Dot,
    Text,
    Svg,
}

#[derive(Args)]
struct GroupArgs {
    /// Group order r
    #[arg(allow_negative_numbers = true)]
    r: i64,
    /// Action exponent a
    #[arg(allow_negative_numbers = true)]
    a: i64,
}

#[derive(Subcommand)]
enum Command {
    /// Special representations via B(G) and L(G)
    Special(GroupArgs),
    /// Toric minimal resolution and dual graph
    Resolve(GroupArgs),
    /// Torus-fixed G-clusters with ideals and chart deformations
    Clusters(GroupArgs),
    /// McKay tensor matrix and quiver
    Quiver(GroupArgs),
    /// Cross-validate one group, or every small group up to RMAX
    Check {
        #[arg(allow_negative_numbers = true, required_unless_present = "sweep")]
        r: Option<i64>,
        #[arg(allow_negative_numbers = true, requires = "r")]
        a: Option<i64>,
        #[arg(long, value_name = "RMAX", conflicts_with_all = ["r", "a"])]
        sweep: Option<u32>,
    },
    /// Write every document for one group into a directory
    Report {
        #[command(flatten)]
        group: GroupArgs,
        #[arg(short, long, value_name = "DIR")]
        output: PathBuf,
    },
}

enum Failure {
    Usage(String),
    Validation,
    Runtime(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::TrivialGroup { .. } | Error::BadExponent { .. } | Error::NotSmall { .. } => {
                Failure::Usage(e.to_string())
            }
            other => Failure::Runtime(other.to_string()),
        }
    }
}

fn group(args: &GroupArgs) -> Result<GroupParams, Failure> {
    Ok(make_group(args.r, args.a)?)
}

fn unsupported(command: &str, format: Format) -> Failure {
    let name = format
        .to_possible_value()
        .map(|v| v.get_name().to_string())
        .unwrap_or_default();
    Failure::Usage(format!("`{command}` does not support --format {name}"))
}

fn with_group(g: GroupParams, key: &str, section: Value) -> String {
    report::to_canonical_json(&json!({ "group": report::json_group(g), key: section }))
}

fn run(cli: &Cli) -> Result<(), Failure> {
    let out = |s: String| {
        if !cli.quiet {
            print!("{s}");
        }
    };
    match &cli.command {
        Command::Special(args) => {
            let data = GroupData::compute(group(args)?)?;
            match cli.format {
                Format::Text => out(report::text_specials(&data)),
                Format::Json => out(with_group(data.group, "specials", report::json_specials(&data))),
                Format::Svg => out(report::svg_basis(&data)),
                f => return Err(unsupported("special", f)),
            }
        }
        Command::Resolve(args) => {
            let data = GroupData::compute(group(args)?)?;
            match cli.format {
                Format::Text => out(report::text_resolution(&data)),
                Format::Json => out(with_group(
                    data.group,
                    "resolution",
                    report::json_resolution(&data),
                )),
                Format::Dot => out(report::dot_dual_graph(&data)),
                Format::Svg => out(report::svg_newton(&data)),
            }
        }
        Command::Clusters(args) => {
            let data = GroupData::compute(group(args)?)?;
            match cli.format {
                Format::Text => out(report::text_clusters(&data)),
                Format::Json => out(with_group(data.group, "clusters", report::json_clusters(&data))),
                Format::Svg => out(report::svg_clusters(&data)),
                f => return Err(unsupported("clusters", f)),
            }
        }
        Command::Quiver(args) => {
            let data = GroupData::compute(group(args)?)?;
            match cli.format {
                Format::Text => out(report::text_quiver(&data)),
                Format::Json => out(with_group(data.group, "quiver", report::json_quiver(&data))),
                Format::Dot => out(report::dot_quiver(&data)),
                f => return Err(unsupported("quiver", f)),
            }
        }
        Command::Check { r, a, sweep: rmax } => {
            let reports: Vec<ValidationReport> = match (r, a, rmax) {
                (_, _, Some(rmax)) if *rmax < 2 => {
                    return Err(Failure::Usage("--sweep needs RMAX >= 2".into()))
                }
                (_, _, Some(rmax)) => sweep(*rmax),
                (Some(r), Some(a), None) => vec![check_group(make_group(*r, *a)?)],
                _ => return Err(Failure::Usage("check needs R A or --sweep RMAX".into())),
            };
            let failed = reports.iter().filter(|rep| !rep.passed()).count();
            match cli.format {
                Format::Json => {
                    let docs: Vec<Value> = reports
                        .iter()
                        .map(|rep| serde_json::to_value(rep).expect("report serialises"))
                        .collect();
                    let doc = if rmax.is_some() {
                        json!({ "reports": docs, "summary": { "total": reports.len(), "failed": failed } })
                    } else {
                        docs.into_iter().next().expect("one report")
                    };
                    out(report::to_canonical_json(&doc));
                }
                Format::Text => {
                    if rmax.is_some() {
                        for rep in &reports {
                            if !rep.passed() {
                                print!("{rep}");
                            }
                        }
                        out(format!(
                            "{} groups checked, {} passed, {} failed\n",
                            reports.len(),
                            reports.len() - failed,
                            failed
                        ));
                    } else {
                        out(reports[0].to_string());
                    }
                }
                f => return Err(unsupported("check", f)),
            }
            if failed > 0 {
                return Err(Failure::Validation);
            }
        }
        Command::Report { group: args, output } => {
            let g = group(args)?;
            let bundle = report::emit(g)?;
            let written = bundle
                .write_to(output)
                .map_err(|e| Failure::Usage(format!("{}: {e}", output.display())))?;
            out(format!("wrote {} files to {}\n", written.len(), output.display()));
            if !check_group(g).passed() {
                return Err(Failure::Validation);
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Validation) => ExitCode::from(1),
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Runtime(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}
