use std::fmt::Write as _;
use std::io::{self, Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use num_rational::Ratio;

use gridknot::bench::{format_rows, run_scaling, Format};
use gridknot::diagram::{build_diagram, oracle_shear_diagram, to_gauss, Position};
use gridknot::fast_count::phi_3d;
use gridknot::grid::{
    parse_grid_link, parse_grid_link_unchecked, random_grid_link, serialize_grid_link, validate, GridLink,
};
use gridknot::invariants::{lk_2d, lk_3d, phi_2d};

#[derive(Parser)]
#[command(name = "gridknot", version, about = "Grid knots and links: diagrams, linking numbers and finite-type counts")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a random valid grid link.
    Gen {
        #[arg(long = "L", default_value_t = 6)]
        size: i32,
        #[arg(long, default_value_t = 1)]
        components: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Number of random local moves applied to the starting link.
        #[arg(long, default_value_t = 10_000)]
        mix: u64,
    },
    /// Check a grid-link file and list every violation.
    Validate { input: Input },
    /// List the crossings of the canonical planar diagram.
    Project {
        input: Input,
        /// Compare against the exact projection with shear `a b`, given as
        /// fractions such as `1/7 1/53`.
        #[arg(long, num_args = 2, value_names = ["A", "B"])]
        oracle: Option<Vec<String>>,
    },
    /// Print the Gauss diagram.
    Gauss { input: Input },
    /// Linking number of a two-component link.
    Lk {
        input: Input,
        #[arg(long, value_enum, default_value_t = Method::Both)]
        method: Method,
    },
    /// Subdiagram counts with up to `d` arrows.
    Phi {
        input: Input,
        #[arg(long, default_value_t = 1)]
        d: usize,
        #[arg(long, value_enum, default_value_t = Method::Both)]
        method: Method,
    },
    /// Time an operation over a range of sizes.
    Bench {
        /// lk_2d_pipeline, lk_3d, build_diagram or count_increasing.
        #[arg(long)]
        op: String,
        #[arg(long, value_delimiter = ',', default_values_t = [8, 12, 16, 24, 32])]
        sizes: Vec<i32>,
        #[arg(long, value_delimiter = ',', default_values_t = [1])]
        seeds: Vec<u64>,
        #[arg(long, default_value_t = 5)]
        reps: usize,
        #[arg(long, default_value = "csv")]
        format: Format,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Method {
    #[value(name = "2d")]
    TwoD,
    #[value(name = "3d")]
    ThreeD,
    Both,
}

/// A file path, or `-` for standard input.
#[derive(Clone)]
struct Input(Option<PathBuf>);

impl std::str::FromStr for Input {
    type Err = std::convert::Infallible;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Ok(Input((s != "-").then(|| PathBuf::from(s))))
    }
}

impl Input {
    fn read(&self) -> Result<String> {
        let mut text = String::new();
        match &self.0 {
            Some(path) => {
                text = std::fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))?;
            }
            None => {
                io::stdin().read_to_string(&mut text).context("cannot read standard input")?;
            }
        }
        Ok(text)
    }

    fn link(&self) -> Result<GridLink> {
        Ok(parse_grid_link(&self.read()?)?)
    }
}

fn parse_fraction(s: &str) -> Result<Ratio<i64>> {
    let (num, den) = s.split_once('/').unwrap_or((s, "1"));
    let num: i64 = num.trim().parse().with_context(|| format!("bad fraction `{s}`"))?;
    let den: i64 = den.trim().parse().with_context(|| format!("bad fraction `{s}`"))?;
    if den == 0 {
        bail!("bad fraction `{s}`: zero denominator");
    }
    Ok(Ratio::new(num, den))
}

fn position(p: &Position) -> String {
    match p {
        Position::Symbolic { unit, shear } => format!("{unit}{shear:+}e"),
        Position::Exact(r) => r.to_string(),
    }
}

fn run(command: Command) -> Result<String> {
    let mut out = String::new();
    match command {
        Command::Gen { size, components, seed, mix } => {
            out = serialize_grid_link(&random_grid_link(size, components, seed, mix)?);
        }
        Command::Validate { input } => {
            let (link, _) = parse_grid_link_unchecked(&input.read()?)?;
            let violations = validate(&link);
            if !violations.is_empty() {
                let list: Vec<String> = violations.iter().map(ToString::to_string).collect();
                bail!("{} violation(s):\n{}", list.len(), list.join("\n"));
            }
            writeln!(
                out,
                "valid: L={} components={} edges={}",
                link.size(),
                link.component_count(),
                link.edge_count()
            )?;
        }
        Command::Project { input, oracle } => {
            let link = input.link()?;
            let diagram = build_diagram(&link);
            for (i, c) in diagram.crossings.iter().enumerate() {
                writeln!(
                    out,
                    "crossing {}: field={} type={} sign={:+} over=c{}:t{} at {} under=c{}:t{} at {}",
                    i + 1,
                    c.field,
                    c.crossing_type,
                    c.sign,
                    c.over.component + 1,
                    c.over.t,
                    position(&c.position_over),
                    c.under.component + 1,
                    c.under.t,
                    position(&c.position_under),
                )?;
            }
            writeln!(out, "n={}", diagram.n())?;
            if let Some(shear) = oracle {
                let (a, b) = (parse_fraction(&shear[0])?, parse_fraction(&shear[1])?);
                let exact = oracle_shear_diagram(&link, a, b)?;
                if exact.signature() != diagram.signature() {
                    bail!("oracle disagrees: exact projection has n={}, canonical has n={}", exact.n(), diagram.n());
                }
                writeln!(out, "oracle: agrees (a={a}, b={b})")?;
            }
        }
        Command::Gauss { input } => {
            let gauss = to_gauss(&build_diagram(&input.link()?));
            writeln!(out, "n={} components={}", gauss.n(), gauss.component_count)?;
            out.push_str(&gauss.to_string());
        }
        Command::Lk { input, method } => {
            let link = input.link()?;
            let lk = match method {
                Method::TwoD => lk_2d(&build_diagram(&link))?,
                Method::ThreeD => lk_3d(&link)?,
                Method::Both => {
                    let (planar, spatial) = (lk_2d(&build_diagram(&link))?, lk_3d(&link)?);
                    if planar != spatial {
                        bail!("2d and 3d linking numbers disagree: {planar} vs {spatial}");
                    }
                    spatial
                }
            };
            writeln!(out, "{lk}")?;
        }
        Command::Phi { input, d, method } => {
            let link = input.link()?;
            let planar = || phi_2d(&to_gauss(&build_diagram(&link)), d);
            let vector = match method {
                Method::TwoD => planar()?,
                Method::ThreeD => phi_3d(&link, d)?,
                Method::Both => {
                    let (a, b) = (planar()?, phi_3d(&link, d)?);
                    if a != b {
                        bail!("2d and 3d subdiagram counts disagree");
                    }
                    b
                }
            };
            writeln!(out, "d={} mass={}", vector.order, vector.mass())?;
            out.push_str(&vector.to_string());
        }
        Command::Bench { op, sizes, seeds, reps, format } => {
            out = format_rows(&run_scaling(&op, &sizes, &seeds, reps)?, format);
        }
    }
    Ok(out)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(text) => {
            let mut stdout = io::stdout().lock();
            if stdout.write_all(text.as_bytes()).and_then(|()| stdout.flush()).is_err() {
                return ExitCode::FAILURE;
            }
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}
