// SPDX-License-Identifier: MIT OR Apache-2.0
//! Command-line front end for `quadstrata`.
//!
//! Every command prints one JSON document on stdout. Exit codes: `0` on
//! success, `2` when `decide` answers `NotRealizable`, `1` on any error
//! (with a JSON error object on stdout).

use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context};
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use quadstrata::constructors::{catalog, construct, Witness};
use quadstrata::core::{max_disjoint_cylinders, stratum_nonempty_holomorphic, validate_signature};
use quadstrata::oracle::{decide, Status};
use quadstrata::search::{run_search, DEFAULT_BUDGET};
use quadstrata::surface::{render_svg, verify, FlatSurface};
use quadstrata::{ComponentSelector, GaussianRational, RootedResidueConfig, StratumSignature};

/// Residue realizability for strata of quadratic differentials.
#[derive(Parser, Debug)]
#[command(name = "quadstrata", version, about)]
struct Cli {
    /// Output format (only JSON is supported).
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Decide whether a rooted residue configuration is realizable.
    Decide {
        #[command(flatten)]
        input: StratumInput,
        /// `whole_stratum` (default) or an odd rotation number.
        #[arg(long)]
        component: Option<String>,
    },
    /// Build and verify a witness surface.
    Construct {
        #[command(flatten)]
        input: OptionalStratumInput,
        #[arg(long)]
        component: Option<String>,
        /// Build a catalog case by name instead of `--sig`/`--roots`.
        #[arg(long = "case")]
        case_name: Option<String>,
        /// Write an SVG drawing of the surface.
        #[arg(long)]
        svg: Option<PathBuf>,
    },
    /// Recompute the invariants of a surface or witness file.
    Verify {
        /// JSON file holding a surface or a witness.
        #[arg(long)]
        surface: PathBuf,
    },
    /// Exhaustive normal-form search for genus zero, two odd zeros and
    /// only double poles.
    Search {
        #[command(flatten)]
        input: StratumInput,
        /// Largest number of double poles to enumerate.
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: usize,
        /// Write an SVG drawing of the first witness.
        #[arg(long)]
        svg: Option<PathBuf>,
    },
    /// Whether a holomorphic stratum is non-empty.
    Nonempty {
        #[arg(long)]
        sig: String,
    },
    /// Maximal number of disjoint cylinders on a holomorphic stratum.
    Cylinders {
        #[arg(long)]
        sig: String,
    },
    /// List the witness catalog.
    Catalog,
}

#[derive(clap::Args, Debug)]
struct StratumInput {
    /// Signature: JSON object, JSON file, or `GENUS:ORDERS` such as
    /// `1:4,-4`.
    #[arg(long)]
    sig: String,
    /// Roots: JSON object, JSON file, or `EVEN;DOUBLE` lists of Gaussian
    /// rationals such as `0;` or `;1,2,4`.
    #[arg(long, allow_hyphen_values = true)]
    roots: String,
}

#[derive(clap::Args, Debug)]
struct OptionalStratumInput {
    #[arg(long)]
    sig: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    roots: Option<String>,
}

/// Reads `s` as inline JSON, or as a file holding JSON.
fn json_source(s: &str) -> anyhow::Result<Option<Value>> {
    let t = s.trim();
    if t.starts_with('{') || t.starts_with('[') {
        return Ok(Some(serde_json::from_str(t).context("malformed JSON")?));
    }
    if Path::new(t).is_file() {
        let text = std::fs::read_to_string(t).with_context(|| format!("reading {t}"))?;
        return Ok(Some(serde_json::from_str(&text).context("malformed JSON")?));
    }
    Ok(None)
}

fn parse_sig(s: &str) -> anyhow::Result<StratumSignature> {
    if let Some(v) = json_source(s)? {
        return serde_json::from_value(v).context("signature schema violation");
    }
    let (g, orders) = s
        .split_once(':')
        .ok_or_else(|| anyhow!("signature must be JSON or GENUS:ORDERS"))?;
    let genus: i64 = g.trim().parse().context("genus")?;
    let mu = orders
        .split(',')
        .filter(|x| !x.trim().is_empty())
        .map(|x| {
            x.trim()
                .parse::<i64>()
                .with_context(|| format!("order {x:?}"))
        })
        .collect::<anyhow::Result<Vec<_>>>()?;
    Ok(StratumSignature::from_orders(genus, &mu))
}

fn parse_list(s: &str) -> anyhow::Result<Vec<GaussianRational>> {
    s.split(',')
        .map(str::trim)
        .filter(|x| !x.is_empty())
        .map(|x| {
            x.parse::<GaussianRational>()
                .map_err(|e| anyhow!("root {x:?}: {e}"))
        })
        .collect()
}

fn parse_roots(s: &str, sig: &StratumSignature) -> anyhow::Result<RootedResidueConfig> {
    if let Some(v) = json_source(s)? {
        return serde_json::from_value(v).context("configuration schema violation");
    }
    if let Some((even, double)) = s.split_once(';') {
        return Ok(RootedResidueConfig::new(
            parse_list(even)?,
            parse_list(double)?,
        ));
    }
    let list = parse_list(s)?;
    match (sig.p(), sig.s()) {
        (0, _) => Ok(RootedResidueConfig::new(vec![], list)),
        (_, 0) => Ok(RootedResidueConfig::new(list, vec![])),
        _ => bail!("both even and double poles: separate their roots with ';'"),
    }
}

fn parse_component(s: Option<&str>) -> anyhow::Result<ComponentSelector> {
    match s.map(str::trim) {
        None | Some("whole") | Some("whole_stratum") => Ok(ComponentSelector::WholeStratum),
        Some(x) => {
            let x = x.strip_prefix("rho=").unwrap_or(x);
            Ok(ComponentSelector::RotationNumber(
                x.parse().with_context(|| format!("component {x:?}"))?,
            ))
        }
    }
}

/// SVG seed from `QUADSTRATA_SEED`; only the drawing depends on it.
fn svg_seed() -> u64 {
    std::env::var("QUADSTRATA_SEED")
        .ok()
        .and_then(|s| s.parse().ok())
        .unwrap_or(0)
}

fn write_svg(path: &Path, surface: &FlatSurface) -> anyhow::Result<()> {
    std::fs::write(path, render_svg(surface, svg_seed()))
        .with_context(|| format!("writing {}", path.display()))
}

/// Name of the error variant: the leading identifier of its debug form.
fn kind_of(e: &impl std::fmt::Debug) -> String {
    let d = format!("{e:?}");
    let end = d
        .find(|c: char| !c.is_alphanumeric() && c != '_')
        .unwrap_or(d.len());
    d[..end].to_string()
}

/// Innermost error kind, looking through the wrapper variants.
fn error_kind(e: &anyhow::Error) -> String {
    use quadstrata::constructors::ConstructError;
    use quadstrata::oracle::OracleError;
    use quadstrata::search::SearchError;
    if let Some(x) = e.downcast_ref::<ConstructError>() {
        return match x {
            ConstructError::Surface(s) => kind_of(s),
            ConstructError::Core(c) => kind_of(c),
            ConstructError::Oracle(o) => kind_of(o),
            other => kind_of(other),
        };
    }
    if let Some(x) = e.downcast_ref::<OracleError>() {
        return match x {
            OracleError::Core(c) => kind_of(c),
            other => kind_of(other),
        };
    }
    if let Some(x) = e.downcast_ref::<SearchError>() {
        return match x {
            SearchError::Construct(c) => kind_of(c),
            other => kind_of(other),
        };
    }
    if let Some(x) = e.downcast_ref::<quadstrata::surface::SurfaceError>() {
        return kind_of(x);
    }
    if let Some(x) = e.downcast_ref::<quadstrata::CoreError>() {
        return kind_of(x);
    }
    "InputError".into()
}

fn load_input(input: &StratumInput) -> anyhow::Result<(StratumSignature, RootedResidueConfig)> {
    let sig = parse_sig(&input.sig)?;
    let config = parse_roots(&input.roots, &sig)?;
    Ok((sig, config))
}

/// Runs a command: the JSON output and the exit code.
fn run(cli: Cli) -> anyhow::Result<(Value, u8)> {
    match cli.command {
        Command::Decide { input, component } => {
            let (sig, config) = load_input(&input)?;
            let component = parse_component(component.as_deref())?;
            let verdict = decide(&sig, &config, component)?;
            let code = if verdict.status == Status::NotRealizable {
                2
            } else {
                0
            };
            Ok((serde_json::to_value(&verdict)?, code))
        }
        Command::Construct {
            input,
            component,
            case_name,
            svg,
        } => {
            let (sig, config, component) = match case_name {
                Some(name) => {
                    let c = catalog()
                        .into_iter()
                        .find(|c| c.name == name)
                        .ok_or_else(|| anyhow!("no catalog case named {name:?}"))?;
                    (c.signature, c.config, c.component)
                }
                None => {
                    let sig = parse_sig(
                        input
                            .sig
                            .as_deref()
                            .ok_or_else(|| anyhow!("--sig is required"))?,
                    )?;
                    let config = parse_roots(input.roots.as_deref().unwrap_or(";"), &sig)?;
                    (sig, config, parse_component(component.as_deref())?)
                }
            };
            let witness = construct(&sig, &config, component)?;
            if let Some(path) = svg {
                write_svg(&path, &witness.surface)?;
            }
            Ok((serde_json::to_value(&witness)?, 0))
        }
        Command::Verify { surface } => {
            let text = std::fs::read_to_string(&surface)
                .with_context(|| format!("reading {}", surface.display()))?;
            let value: Value = serde_json::from_str(&text).context("malformed JSON")?;
            let inv = if value.get("surface").is_some() {
                let w: Witness =
                    serde_json::from_value(value).context("witness schema violation")?;
                w.verify()?
            } else {
                let s: FlatSurface =
                    serde_json::from_value(value).context("surface schema violation")?;
                verify(&s)?
            };
            Ok((serde_json::to_value(&inv)?, 0))
        }
        Command::Search { input, budget, svg } => {
            let sig = parse_sig(&input.sig)?;
            let config = parse_roots(&input.roots, &sig)?;
            let roots = config
                .double_pole_roots
                .iter()
                .map(|r| {
                    if r.is_real() && r.re().is_integer() {
                        i64::try_from(r.re().to_integer()).map_err(|_| anyhow!("root too large"))
                    } else {
                        Err(anyhow!("search needs positive integer roots"))
                    }
                })
                .collect::<anyhow::Result<Vec<_>>>()?;
            let report = run_search(&sig, &roots, budget)?;
            if let (Some(path), Some(first)) = (svg, &report.first_witness) {
                write_svg(&path, &first.witness.surface)?;
            }
            Ok((serde_json::to_value(&report)?, 0))
        }
        Command::Nonempty { sig } => {
            let sig = parse_sig(&sig)?;
            validate_signature(&sig)?;
            let nonempty = stratum_nonempty_holomorphic(&sig)?;
            Ok((json!({ "nonempty": nonempty }), 0))
        }
        Command::Cylinders { sig } => {
            let sig = parse_sig(&sig)?;
            let max = max_disjoint_cylinders(&sig)?;
            Ok((json!({ "max": max.to_string() }), 0))
        }
        Command::Catalog => {
            let cases = catalog();
            Ok((serde_json::to_value(&cases)?, 0))
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let Format::Json = cli.format;
    let (value, code) = match run(cli) {
        Ok(x) => x,
        Err(e) => (
            json!({ "error": error_kind(&e), "message": format!("{e:#}") }),
            1,
        ),
    };
    let text = serde_json::to_string_pretty(&value).expect("JSON output");
    // A closed pipe is not an error of the command.
    let _ = writeln!(std::io::stdout(), "{text}");
    ExitCode::from(code)
}
