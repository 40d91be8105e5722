//! `macwt`: secrecy-rate bounds for the two-user multiple-access wiretap
//! channel with feedback.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand, ValueEnum};
use macwt::channels::{GaussianMacWt, MacWiretapKernel};
use macwt::discrete::{search_inner, search_outer, BoundKind, SearchConfig};
use macwt::export::{boundary_csv, figure_csv, region_json, sweep_csv};
use macwt::fm::{corner_battery, sample_constants, verify_hybrid_region, HybridCheck, Rational};
use macwt::gaussian::{gaussian_df_region, gaussian_hybrid_region, gaussian_outer_region, tekin_yener_region};
use macwt::power::{sweep, NoiseVariances};
use macwt::regions::{RateRegion2D, Region};
use serde_json::json;

const USAGE: u8 = 64;

#[derive(Parser)]
#[command(name = "macwt", version, about = "Secrecy-rate bounds for the MAC wiretap channel with feedback")]
struct Cli {
    /// Output directory
    #[arg(long, global = true, env = "MACWT_OUT_DIR", default_value = ".")]
    out_dir: PathBuf,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Rate regions for a Gaussian or discrete channel, one file per bound.
    Region {
        #[command(subcommand)]
        source: Source,
    },
    /// Optimal symmetric power control for caps 0..pmax.
    Powersweep {
        /// Largest common power cap
        #[arg(long)]
        pmax: f64,
        /// Number of evenly spaced caps, including 0 and pmax
        #[arg(long)]
        steps: usize,
        #[command(flatten)]
        noise: NoiseArgs,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
    },
    /// Preset data sets: fig2 and fig3 are Gaussian regions, fig4 and fig5
    /// are power sweeps.
    Figure {
        #[arg(value_enum)]
        name: FigureName,
        #[arg(long, default_value_t = 101)]
        samples: usize,
    },
    /// Check the projected rate-splitting system against the closed-form
    /// hybrid region on random and edge-case constants.
    FmVerify {
        /// Random rational constant tuples, checked after the fixed edge cases
        #[arg(long)]
        samples: usize,
        /// Seed of the constant sampler
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(Subcommand)]
enum Source {
    /// Closed-form regions of the Gaussian channel
    Gaussian {
        /// Power of user 1
        #[arg(long)]
        p1: f64,
        /// Power of user 2
        #[arg(long)]
        p2: f64,
        #[command(flatten)]
        noise: NoiseArgs,
        #[command(flatten)]
        output: RegionOutput,
    },
    /// Searched regions of a discrete channel (ty is not available)
    Discrete {
        /// Channel file (JSON)
        #[arg(long)]
        channel: PathBuf,
        #[command(flatten)]
        search: SearchArgs,
        #[command(flatten)]
        output: RegionOutput,
    },
}

#[derive(Args, Clone, Copy)]
struct NoiseArgs {
    /// Noise variance at the legitimate receiver
    #[arg(long = "sigma1sq")]
    sigma1_sq: f64,
    /// Noise variance at the eavesdropper
    #[arg(long = "sigma2sq")]
    sigma2_sq: f64,
}

#[derive(Args)]
struct RegionOutput {
    /// Comma-separated subset of df, hybrid, outer, ty
    #[arg(long, value_delimiter = ',', required = true)]
    bounds: Vec<Bound>,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    format: Format,
    /// Boundary samples per region
    #[arg(long, default_value_t = 101)]
    samples: usize,
}

#[derive(Args)]
struct SearchArgs {
    /// Seed of the multistart search
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Random starting points per auxiliary alphabet size
    #[arg(long, default_value_t = 64)]
    restarts: usize,
    /// Largest auxiliary alphabet size |U|
    #[arg(long, default_value_t = 4)]
    u_max: usize,
    /// Ascent sweeps per starting point
    #[arg(long, default_value_t = 200)]
    iterations: usize,
    /// Report the best single-distribution region instead of the hull
    #[arg(long)]
    no_hull: bool,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Bound {
    Df,
    Hybrid,
    Outer,
    Ty,
}

impl Bound {
    fn name(self) -> &'static str {
        match self {
            Bound::Df => "df",
            Bound::Hybrid => "hybrid",
            Bound::Outer => "outer",
            Bound::Ty => "ty",
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum FigureName {
    Fig2,
    Fig3,
    Fig4,
    Fig5,
}

/// A failed run and its exit status.
struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Self {
        Self { code: USAGE, message: message.into() }
    }
}

impl From<macwt::Error> for Failure {
    fn from(e: macwt::Error) -> Self {
        use macwt::Error::*;
        let code = match e {
            Validation(_) | Argument(_) | Domain(_) | Parse(_) => USAGE,
            Consistency(_) => 2,
            Io(_) => 1,
        };
        Self { code, message: e.to_string() }
    }
}

type Outcome<T> = std::result::Result<T, Failure>;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => ExitCode::SUCCESS,
                _ => ExitCode::from(USAGE),
            };
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

fn run(cli: Cli) -> Outcome<()> {
    let out = cli.out_dir;
    match cli.command {
        Command::Region { source: Source::Gaussian { p1, p2, noise, output } } => {
            let g = GaussianMacWt::new(p1, p2, noise.sigma1_sq, noise.sigma2_sq)?;
            let regions = gaussian_regions(&g, &output.bounds)?;
            write_regions(&out, &regions, &output)
        }
        Command::Region { source: Source::Discrete { channel, search, output } } => {
            if output.bounds.contains(&Bound::Ty) {
                return Err(Failure::usage("bound `ty` is only defined for the Gaussian channel"));
            }
            let kernel = MacWiretapKernel::load(&channel)
                .map_err(|e| Failure { message: format!("{}: {e}", channel.display()), ..Failure::from(e) })?;
            let config = SearchConfig {
                u_cardinality_max: search.u_max,
                restarts: search.restarts,
                refinement_iterations: search.iterations,
                seed: search.seed,
                hull: !search.no_hull,
                ..SearchConfig::default()
            };
            let regions = discrete_regions(&kernel, &output.bounds, &config)?;
            write_regions(&out, &regions, &output)
        }
        Command::Powersweep { pmax, steps, noise, format } => {
            let noise = NoiseVariances::new(noise.sigma1_sq, noise.sigma2_sq)?;
            let rows = sweep(pmax, steps, &noise)?;
            let (name, text) = match format {
                Format::Csv => ("powersweep.csv", sweep_csv(&rows)),
                Format::Json => ("powersweep.json", to_json(&rows)),
            };
            write_file(&out, name, &text)
        }
        Command::Figure { name, samples } => figure(&out, name, samples),
        Command::FmVerify { samples, seed } => fm_verify(&out, samples, seed),
    }
}

fn gaussian_regions(g: &GaussianMacWt, bounds: &[Bound]) -> Outcome<Vec<(Bound, RateRegion2D)>> {
    let mut out = Vec::new();
    for &b in bounds {
        let region = match b {
            Bound::Df => gaussian_df_region(g)?,
            Bound::Hybrid => {
                let h = gaussian_hybrid_region(g)?;
                if h.negative_key_term {
                    eprintln!("warning: key term {} is negative (sigma1^2 < 1/(2 pi e)); evaluated literally", h.key_term);
                }
                h.region
            }
            Bound::Outer => gaussian_outer_region(g)?,
            Bound::Ty => tekin_yener_region(g)?,
        };
        out.push((b, region));
    }
    Ok(out)
}

fn discrete_regions(kernel: &MacWiretapKernel, bounds: &[Bound], config: &SearchConfig) -> Outcome<Vec<(Bound, RateRegion2D)>> {
    let mut out = Vec::new();
    for &b in bounds {
        let region = match b {
            Bound::Df => search_inner(kernel, BoundKind::Df, config)?.best_region(),
            Bound::Hybrid => search_inner(kernel, BoundKind::Hybrid, config)?.best_region(),
            Bound::Outer => {
                let s = search_outer(kernel, config)?;
                eprintln!("note: outer sum {} is a search maximum, a lower estimate of the bound constant", s.value);
                s.region()
            }
            Bound::Ty => unreachable!("rejected before the search"),
        };
        out.push((b, region));
    }
    Ok(out)
}

fn write_regions(dir: &Path, regions: &[(Bound, RateRegion2D)], output: &RegionOutput) -> Outcome<()> {
    if output.samples < 2 {
        return Err(Failure::usage("--samples must be at least 2"));
    }
    for (b, region) in regions {
        let (name, text) = match output.format {
            Format::Csv => (format!("{}.csv", b.name()), boundary_csv(&region.boundary_samples(output.samples))),
            Format::Json => (format!("{}.json", b.name()), region_json(region, output.samples)),
        };
        write_file(dir, &name, &text)?;
    }
    Ok(())
}

fn write_file(dir: &Path, name: &str, text: &str) -> Outcome<()> {
    fs::create_dir_all(dir).map_err(macwt::Error::from)?;
    let path = dir.join(name);
    fs::write(&path, text).map_err(|e| Failure { code: 1, message: format!("{}: {e}", path.display()) })?;
    println!("{}", path.display());
    Ok(())
}

fn to_json<T: serde::Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("plain data serializes") + "\n"
}

fn figure(dir: &Path, name: FigureName, samples: usize) -> Outcome<()> {
    let (file, params) = match name {
        FigureName::Fig2 => ("fig2.csv", (1.0, 1.0, 1.0, 10.0)),
        FigureName::Fig3 => ("fig3.csv", (10.0, 10.0, 5.0, 2.0)),
        FigureName::Fig4 => return figure_sweep(dir, "fig4.csv", 5.0, 2.0),
        FigureName::Fig5 => return figure_sweep(dir, "fig5.csv", 1.0, 10.0),
    };
    if samples < 2 {
        return Err(Failure::usage("--samples must be at least 2"));
    }
    let g = GaussianMacWt::new(params.0, params.1, params.2, params.3)?;
    let regions = gaussian_regions(&g, &[Bound::Df, Bound::Hybrid, Bound::Outer, Bound::Ty])?;
    check_containment(&regions)?;
    let columns: Vec<(&str, Vec<[f64; 2]>)> =
        regions.iter().map(|(b, r)| (b.name(), r.boundary_samples(samples))).collect();
    write_file(dir, file, &figure_csv(&columns))
}

fn figure_sweep(dir: &Path, file: &str, sigma1_sq: f64, sigma2_sq: f64) -> Outcome<()> {
    let rows = sweep(500.0, 100, &NoiseVariances::new(sigma1_sq, sigma2_sq)?)?;
    if rows.windows(2).any(|w| w[1].result.r_sum_star < w[0].result.r_sum_star) {
        return Err(Failure { code: 2, message: "sweep rate column is not monotone".into() });
    }
    write_file(dir, file, &sweep_csv(&rows))
}

/// `df` within `hybrid`, and every inner bound within `outer`.
fn check_containment(regions: &[(Bound, RateRegion2D)]) -> Outcome<()> {
    let find = |b: Bound| regions.iter().find(|(k, _)| *k == b).map(|(_, r)| r);
    let mut pairs = vec![(Bound::Df, Bound::Hybrid)];
    pairs.extend([Bound::Df, Bound::Hybrid, Bound::Ty].map(|b| (b, Bound::Outer)));
    for (inner, outer) in pairs {
        if let (Some(i), Some(o)) = (find(inner), find(outer)) {
            if !i.is_subset_of(o) {
                return Err(Failure {
                    code: 2,
                    message: format!("{} region is not contained in the {} region", inner.name(), outer.name()),
                });
            }
        }
    }
    Ok(())
}

fn vertex_strings(region: &Region<Rational>) -> Vec<[String; 2]> {
    region.vertices().iter().map(|v| [v[0].to_string(), v[1].to_string()]).collect()
}

fn fm_verify(dir: &Path, samples: usize, seed: u64) -> Outcome<()> {
    if samples == 0 {
        return Err(Failure::usage("--samples must be at least 1"));
    }
    let battery = corner_battery();
    let tuples: Vec<_> = battery.iter().cloned().chain(sample_constants(samples, seed)).collect();
    let checks: Vec<HybridCheck> = tuples.iter().map(verify_hybrid_region).collect();
    let mut report = String::new();
    for (i, c) in checks.iter().enumerate() {
        let tag = if i < battery.len() { "corner" } else { "sample" };
        let verdict = if c.verdict { "ok" } else { "MISMATCH" };
        let _ = writeln!(report, "{i} {tag} {verdict} {}", c.constants);
    }
    let failed: Vec<&HybridCheck> = checks.iter().filter(|c| !c.verdict).collect();
    let summary = format!("{} of {} instances agree (seed {seed})", checks.len() - failed.len(), checks.len());
    let _ = writeln!(report, "{summary}");
    write_file(dir, "fm_verify.txt", &report)?;
    println!("{summary}");
    if failed.is_empty() {
        return Ok(());
    }
    let dump: Vec<_> = failed
        .iter()
        .map(|c| {
            json!({
                "constants": c.constants.to_string(),
                "projected": vertex_strings(&c.projected),
                "closed_form": vertex_strings(&c.closed_form),
            })
        })
        .collect();
    write_file(dir, "fm_verify_mismatch.json", &to_json(&dump))?;
    let first = failed[0];
    Err(Failure {
        code: 1,
        message: format!(
            "{}: projected {:?} vs closed form {:?}",
            first.constants,
            vertex_strings(&first.projected),
            vertex_strings(&first.closed_form)
        ),
    })
}
