//! Command-line surface: load links, compute invariants, emit reports and
//! plottable field dumps.

use std::collections::BTreeMap;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use trilink::error::{Error, Result};
use trilink::gauss::invariant_report;
use trilink::geometry::bridge_check;
use trilink::link::{preset, Link3};
use trilink::report::{
    content_hash, human_table, BridgeDocument, InvariantsDocument, MuDocument, MuSection,
};
use trilink::spectral::{
    characteristic_form, compute_mu, dft3, idft3, least_norm_primitive, mu_fourier,
    require_null_homologous, sample_gauss_field, whitehead_pairing, write_field_csv,
    write_phi2d_csv, MuMethod,
};

#[derive(Parser)]
#[command(
    name = "trilink",
    version,
    about = "Linking numbers and the Milnor triple linking number of three-component links"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Source {
    /// Built-in link: borromean, split-unlink or borromean-reversed
    #[arg(long, conflicts_with = "link")]
    preset: Option<String>,
    /// Link config file (JSON: components x, y, z with cos/sin coefficient rows)
    #[arg(long)]
    link: Option<PathBuf>,
}

impl Source {
    fn resolve(&self) -> Result<(Link3, String)> {
        match (&self.preset, &self.link) {
            (Some(name), None) => Ok((preset(name)?, name.clone())),
            (None, Some(path)) => {
                let bytes = fs::read(path)?;
                let text = String::from_utf8_lossy(&bytes);
                Ok((Link3::from_json(&text)?, content_hash(&bytes)))
            }
            _ => Err(Error::InvalidArgument(
                "exactly one of --preset or --link is required".into(),
            )),
        }
    }

    fn flags(&self, flags: &mut BTreeMap<String, String>) {
        if let Some(name) = &self.preset {
            flags.insert("preset".into(), name.clone());
        }
        if let Some(path) = &self.link {
            flags.insert("link".into(), path.display().to_string());
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Gauss pairwise linking numbers, subtorus degrees, and (when p = q = r
    /// = 0) the triple linking number with a primitive-pairing cross-check.
    Invariants {
        #[command(flatten)]
        source: Source,
        /// Torus grid size per axis
        #[arg(long, default_value_t = 128)]
        grid: usize,
        /// Quadrature samples per curve in the Gauss integral
        #[arg(long, default_value_t = 512)]
        samples: usize,
        /// Write the report here instead of stdout
        #[arg(long)]
        out: Option<PathBuf>,
        /// Tabular output instead of JSON
        #[arg(long)]
        human: bool,
    },
    /// One μ pipeline: fourier, whitehead, helicity or spherical.
    Mu {
        #[command(flatten)]
        source: Source,
        #[arg(long, default_value_t = 128)]
        grid: usize,
        #[arg(long, default_value = "fourier")]
        method: String,
        /// Mode cutoff: restricts the Fourier cube, or truncates the φ
        /// series for the helicity method (default grid/2)
        #[arg(long)]
        cutoff: Option<usize>,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        human: bool,
    },
    /// CSV dumps: the sampled key-map field, the characteristic form, or the
    /// 2-torus fundamental solution over [−3π, 3π]².
    Dump {
        /// What to write: field, form or phi2d
        #[arg(long)]
        what: String,
        #[command(flatten)]
        source: Source,
        /// Grid size (per torus axis, or points per axis for phi2d)
        #[arg(long, default_value_t = 128)]
        grid: usize,
        /// φ series cutoff for phi2d
        #[arg(long)]
        cutoff: Option<usize>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Sample the identity linking the Euclidean and spherical key maps and
    /// report min/mean gap statistics.
    BridgeCheck {
        /// Number of random triples
        #[arg(long, default_value_t = 1_000_000)]
        samples: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        human: bool,
    },
}

fn main() {
    let cli = Cli::parse();
    if let Err(err) = run(cli.command) {
        eprintln!("error: {err}");
        std::process::exit(exit_code(&err));
    }
}

fn exit_code(err: &Error) -> i32 {
    match err {
        Error::NotNullHomologous { .. } => 3,
        Error::CorrespondenceMismatch { .. } => 4,
        Error::Io(_) => 5,
        _ => 2,
    }
}

fn run(command: Command) -> Result<()> {
    match command {
        Command::Invariants {
            source,
            grid,
            samples,
            out,
            human,
        } => cmd_invariants(source, grid, samples, out.as_deref(), human),
        Command::Mu {
            source,
            grid,
            method,
            cutoff,
            out,
            human,
        } => cmd_mu(source, grid, &method, cutoff, out.as_deref(), human),
        Command::Dump {
            what,
            source,
            grid,
            cutoff,
            out,
        } => cmd_dump(&what, source, grid, cutoff, out.as_deref()),
        Command::BridgeCheck {
            samples,
            seed,
            out,
            human,
        } => cmd_bridge_check(samples, seed, out.as_deref(), human),
    }
}

fn cmd_invariants(
    source: Source,
    grid: usize,
    samples: usize,
    out: Option<&Path>,
    human: bool,
) -> Result<()> {
    let mut timings = BTreeMap::new();
    let start = Instant::now();
    let (link, identity) = source.resolve()?;
    timings.insert("load".into(), ms(start));

    let start = Instant::now();
    let invariants = invariant_report(&link, samples, grid)?;
    timings.insert("pairwise_and_degrees".into(), ms(start));

    // μ only applies when the pairwise linking numbers vanish
    let start = Instant::now();
    let mu = match require_null_homologous(&link) {
        Ok(_) => {
            let form = characteristic_form(&link, grid)?;
            let coeffs = dft3(&form);
            let raw = mu_fourier(&coeffs)?;
            let alpha = idft3(&least_norm_primitive(&coeffs)?);
            let whitehead = whitehead_pairing(&alpha, &form);
            let mut section = MuSection::new("fourier".into(), grid, None, raw);
            section.whitehead_raw = Some(whitehead);
            section.cross_check_gap = Some((raw - whitehead).abs());
            Some(section)
        }
        Err(Error::NotNullHomologous { .. }) => None,
        Err(other) => return Err(other),
    };
    timings.insert("mu".into(), ms(start));

    let mut flags = flag_map(&[
        ("grid", grid.to_string()),
        ("samples", samples.to_string()),
        ("human", human.to_string()),
    ]);
    source.flags(&mut flags);
    emit(
        &InvariantsDocument {
            command: "invariants".into(),
            link: identity,
            flags,
            invariants,
            mu,
            timings_ms: timings,
        },
        human,
        out,
    )
}

fn cmd_mu(
    source: Source,
    grid: usize,
    method: &str,
    cutoff: Option<usize>,
    out: Option<&Path>,
    human: bool,
) -> Result<()> {
    let method: MuMethod = method.parse()?;
    let mut timings = BTreeMap::new();
    let start = Instant::now();
    let (link, identity) = source.resolve()?;
    timings.insert("load".into(), ms(start));

    let start = Instant::now();
    let raw = compute_mu(&link, method, grid, cutoff)?;
    timings.insert("mu".into(), ms(start));

    let mut flags = flag_map(&[
        ("grid", grid.to_string()),
        ("method", method.to_string()),
        ("human", human.to_string()),
    ]);
    if let Some(c) = cutoff {
        flags.insert("cutoff".into(), c.to_string());
    }
    source.flags(&mut flags);
    emit(
        &MuDocument {
            command: "mu".into(),
            link: identity,
            flags,
            mu: MuSection::new(method.to_string(), grid, cutoff, raw),
            timings_ms: timings,
        },
        human,
        out,
    )
}

fn cmd_dump(
    what: &str,
    source: Source,
    grid: usize,
    cutoff: Option<usize>,
    out: Option<&Path>,
) -> Result<()> {
    let mut buffer: Vec<u8> = Vec::new();
    match what {
        "field" => {
            let (link, _) = source.resolve()?;
            write_field_csv(&mut buffer, &sample_gauss_field(&link, grid)?)?;
        }
        "form" => {
            let (link, _) = source.resolve()?;
            write_field_csv(&mut buffer, &characteristic_form(&link, grid)?)?;
        }
        "phi2d" => {
            write_phi2d_csv(&mut buffer, cutoff.unwrap_or(15), grid)?;
        }
        other => {
            return Err(Error::InvalidArgument(format!(
                "unknown dump kind `{other}` (expected field, form or phi2d)"
            )))
        }
    }
    match out {
        Some(path) => fs::write(path, buffer)?,
        None => std::io::stdout().lock().write_all(&buffer)?,
    }
    Ok(())
}

fn cmd_bridge_check(samples: u64, seed: u64, out: Option<&Path>, human: bool) -> Result<()> {
    let mut timings = BTreeMap::new();
    let start = Instant::now();
    let summary = bridge_check(samples, seed);
    timings.insert("sampling".into(), ms(start));
    let flags = flag_map(&[
        ("samples", samples.to_string()),
        ("seed", seed.to_string()),
        ("human", human.to_string()),
    ]);
    emit(
        &BridgeDocument {
            command: "bridge-check".into(),
            flags,
            summary,
            timings_ms: timings,
        },
        human,
        out,
    )
}

fn flag_map(entries: &[(&str, String)]) -> BTreeMap<String, String> {
    entries
        .iter()
        .map(|(k, v)| (k.to_string(), v.clone()))
        .collect()
}

fn ms(start: Instant) -> f64 {
    start.elapsed().as_secs_f64() * 1e3
}

fn emit<T: Serialize>(doc: &T, human: bool, out: Option<&Path>) -> Result<()> {
    let text = if human {
        human_table(&serde_json::to_value(doc)?)
    } else {
        let mut json = serde_json::to_string_pretty(doc)?;
        json.push('\n');
        json
    };
    match out {
        Some(path) => fs::write(path, text)?,
        None => print!("{text}"),
    }
    Ok(())
}
