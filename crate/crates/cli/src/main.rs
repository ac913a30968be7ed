//! `hammock`: dataset statistics, hammock-width sweeps, synthetic studies
//! and small-world curves, written as CSV.

mod config;

use std::fs::{self, File};
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use hammock_core::dataset::{load_ratings, write_movielens_tab, DatasetError, Format};
use hammock_core::experiment::{dataset_stats, sweep, synth_study, ExperimentError, SynthStudyConfig, WidthRange};
use hammock_core::jumps::{CoRatingIndex, JumpSpec};
use hammock_core::metrics::{degree_cdf, degree_distribution, SourcePolicy};
use hammock_core::report;
use hammock_core::synth::{
    calibrate_epsilon, generate_power_law_bipartite, small_world_curve, RewireMode, SynthConfig, SynthError,
    WreathConfig,
};

use config::ConfigFile;

#[derive(Parser, Debug)]
#[command(
    name = "hammock",
    version,
    about = "Graph analysis of rating datasets under hammock jumps"
)]
struct Cli {
    /// Flat key=value file supplying defaults for the common flags.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Default, Clone)]
struct Common {
    #[arg(long)]
    input: Option<PathBuf>,
    /// movielens or csv
    #[arg(long)]
    format: Option<Format>,
    #[arg(long)]
    w_min: Option<u32>,
    #[arg(long)]
    w_max: Option<u32>,
    #[arg(long)]
    kappa_min: Option<usize>,
    #[arg(long)]
    kappa_max: Option<usize>,
    #[arg(long)]
    trials: Option<usize>,
    #[arg(long)]
    seed: Option<u64>,
    /// Largest number of BFS sources before sampling kicks in.
    #[arg(long)]
    max_sources: Option<usize>,
    /// Directory for output files; CSV goes to stdout when absent.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Size, sparsity, connectivity and degree summary of a dataset.
    Stats(Common),
    /// Components and measured vs predicted lengths for each hammock width.
    Sweep(Common),
    /// Measured vs predicted lengths on synthetic datasets across κ.
    SynthStudy {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        n_people: Option<usize>,
        #[arg(long)]
        n_movies: Option<usize>,
    },
    /// Small-world curve of a rewired ring lattice.
    Ws {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        k: Option<usize>,
        /// Comma-separated rewiring probabilities.
        #[arg(long, value_delimiter = ',')]
        p: Option<Vec<f64>>,
        /// uniform or preferential
        #[arg(long)]
        mode: Option<RewireMode>,
    },
    /// Complementary cumulative degree counts of the social graph per width.
    Cdf {
        #[command(flatten)]
        common: Common,
        /// Emit log10 of the counts.
        #[arg(long)]
        log: bool,
        /// Restrict to the largest component.
        #[arg(long)]
        largest_only: bool,
    },
    /// Write a synthetic power-law dataset in MovieLens tab format.
    Generate {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        n_people: Option<usize>,
        #[arg(long)]
        n_movies: Option<usize>,
        /// Exponent; derived from --kappa-min when absent.
        #[arg(long)]
        epsilon: Option<f64>,
    },
}

type WriteCsv<'a> = dyn Fn(&mut dyn Write) -> io::Result<()> + 'a;

#[derive(Debug)]
enum CliError {
    Input(String),
    Config(String),
}

impl CliError {
    fn code(&self) -> u8 {
        match self {
            CliError::Input(_) => 1,
            CliError::Config(_) => 2,
        }
    }
}

impl From<io::Error> for CliError {
    fn from(e: io::Error) -> Self {
        CliError::Input(e.to_string())
    }
}

impl From<DatasetError> for CliError {
    fn from(e: DatasetError) -> Self {
        CliError::Input(e.to_string())
    }
}

impl From<SynthError> for CliError {
    fn from(e: SynthError) -> Self {
        CliError::Config(e.to_string())
    }
}

impl From<ExperimentError> for CliError {
    fn from(e: ExperimentError) -> Self {
        match e {
            ExperimentError::Dataset(d) => d.into(),
            ExperimentError::InvalidRange(_) | ExperimentError::Synth(_) => CliError::Config(e.to_string()),
            other => CliError::Input(other.to_string()),
        }
    }
}

/// Common flags after merging with the config file.
struct Settings {
    common: Common,
    file: ConfigFile,
}

impl Settings {
    fn new(common: Common, file: ConfigFile) -> Result<Self, CliError> {
        let mut s = Settings { common, file };
        let c = &mut s.common;
        if c.input.is_none() {
            c.input = s.file.get("input")?;
        }
        macro_rules! fill {
            ($($field:ident),*) => {$(
                if c.$field.is_none() {
                    c.$field = s.file.get(stringify!($field))?;
                }
            )*};
        }
        fill!(
            format,
            w_min,
            w_max,
            kappa_min,
            kappa_max,
            trials,
            seed,
            max_sources,
            out
        );
        Ok(s)
    }

    fn extra<T: std::str::FromStr>(&self, flag: Option<T>, key: &str) -> Result<Option<T>, CliError>
    where
        T::Err: std::fmt::Display,
    {
        match flag {
            Some(v) => Ok(Some(v)),
            None => self.file.get(key),
        }
    }

    fn dataset(&self) -> Result<hammock_core::BipartiteRatings, CliError> {
        let path = self
            .common
            .input
            .as_ref()
            .ok_or_else(|| CliError::Config("--input is required".into()))?;
        let format = self.common.format.unwrap_or_else(|| guess_format(path));
        Ok(load_ratings(path, format)?)
    }

    fn widths(&self, default_max: u32) -> Result<WidthRange, CliError> {
        Ok(WidthRange::new(
            self.common.w_min.unwrap_or(1),
            self.common.w_max.unwrap_or(default_max),
        )?)
    }

    fn policy(&self) -> SourcePolicy {
        let seed = self.common.seed.unwrap_or(0);
        match self.common.max_sources {
            Some(n) => SourcePolicy {
                exact_limit: n,
                sample_size: n,
                seed,
            },
            None => SourcePolicy {
                seed,
                ..SourcePolicy::default()
            },
        }
    }

    fn trials(&self, default: usize) -> Result<usize, CliError> {
        match self.common.trials.unwrap_or(default) {
            0 => Err(CliError::Config("--trials must be at least 1".into())),
            t => Ok(t),
        }
    }

    /// Writes each (file name, producer) pair into the output directory, or
    /// all of them to stdout separated by blank lines.
    fn emit(&self, outputs: &[(&str, &WriteCsv<'_>)]) -> Result<(), CliError> {
        match &self.common.out {
            Some(dir) => {
                fs::create_dir_all(dir)?;
                for (name, produce) in outputs {
                    let mut w = BufWriter::new(File::create(dir.join(name))?);
                    produce(&mut w)?;
                    w.flush()?;
                }
            }
            None => {
                let stdout = io::stdout();
                let mut w = stdout.lock();
                for (i, (_, produce)) in outputs.iter().enumerate() {
                    if i > 0 {
                        writeln!(w)?;
                    }
                    produce(&mut w)?;
                }
            }
        }
        Ok(())
    }
}

fn guess_format(path: &Path) -> Format {
    match path.extension().and_then(|e| e.to_str()) {
        Some("csv") => Format::GenericCsv,
        _ => Format::MovieLensTab,
    }
}

fn cmd_stats(s: &Settings) -> Result<(), CliError> {
    let g = s.dataset()?;
    let st = dataset_stats(&g)?;
    eprintln!(
        "people {}  movies {}  ratings {}  sparsity {:.4}%  connected {}",
        st.n_people,
        st.n_movies,
        st.edges,
        100.0 * st.sparsity,
        st.connected
    );
    eprintln!("minimum ratings per person {}", st.min_person_degree);
    eprintln!("top buff degrees {:?}", st.top_buff_degrees);
    eprintln!("top hit degrees {:?}", st.top_hit_degrees);
    if let Some(f) = st.buff_fit {
        eprintln!("buff fit: alpha {:.4}  tau {:.4}", f.alpha, f.tau);
    }
    s.emit(&[
        ("stats.csv", &|w| report::write_stats_csv(&st, w)),
        ("top_degrees.csv", &|w| report::write_top_degrees_csv(&st, w)),
    ])
}

fn cmd_sweep(s: &Settings) -> Result<(), CliError> {
    let g = s.dataset()?;
    let rows = sweep(&g, s.widths(30)?, &s.policy())?;
    s.emit(&[("sweep.csv", &|w| report::write_sweep_csv(&rows, w))])
}

fn synth_base(s: &Settings, n_people: Option<usize>, n_movies: Option<usize>) -> Result<SynthConfig, CliError> {
    let d = SynthConfig::default();
    let cfg = SynthConfig {
        n_people: s.extra(n_people, "n_people")?.unwrap_or(d.n_people),
        n_movies: s.extra(n_movies, "n_movies")?.unwrap_or(d.n_movies),
        seed: s.common.seed.unwrap_or(0),
        ..d
    };
    cfg.validate()?;
    Ok(cfg)
}

fn cmd_synth_study(s: &Settings, n_people: Option<usize>, n_movies: Option<usize>) -> Result<(), CliError> {
    let cfg = SynthStudyConfig {
        kappa_min: s.common.kappa_min.unwrap_or(1),
        kappa_max: s.common.kappa_max.unwrap_or(15),
        widths: s.widths(25)?,
        trials: s.trials(15)?,
        seed: s.common.seed.unwrap_or(0),
        base: synth_base(s, n_people, n_movies)?,
        policy: s.policy(),
    };
    let study = synth_study(&cfg)?;
    for w in study
        .summaries
        .iter()
        .filter_map(|x| x.warning.as_ref().map(|m| (x.kappa, m)))
    {
        eprintln!("warning: kappa {}: {}", w.0, w.1);
    }
    s.emit(&[
        ("synth_study.csv", &|w| report::write_synth_rows_csv(&study, w)),
        ("synth_summary.csv", &|w| report::write_synth_summary_csv(&study, w)),
    ])
}

/// `0` followed by 13 log-spaced points from 1e-4 to 1.
fn default_p_values() -> Vec<f64> {
    std::iter::once(0.0)
        .chain((0..13).map(|i| 10f64.powf(-4.0 + i as f64 / 3.0)))
        .collect()
}

fn cmd_ws(
    s: &Settings,
    n: Option<usize>,
    k: Option<usize>,
    p: Option<Vec<f64>>,
    mode: Option<RewireMode>,
) -> Result<(), CliError> {
    let p_values = match p {
        Some(p) => p,
        None => match s.file.raw("p") {
            Some(list) => list
                .split(',')
                .map(|x| x.trim().parse::<f64>())
                .collect::<Result<_, _>>()
                .map_err(|e| CliError::Config(format!("config key 'p': {e}")))?,
            None => default_p_values(),
        },
    };
    let cfg = WreathConfig {
        n: s.extra(n, "n")?.unwrap_or(1000),
        k: s.extra(k, "k")?.unwrap_or(10),
        p: 0.0,
        mode: s.extra(mode, "mode")?.unwrap_or_default(),
        seed: s.common.seed.unwrap_or(0),
    };
    let points = small_world_curve(&cfg, &p_values, s.trials(20)?, &s.policy())?;
    s.emit(&[("ws.csv", &|w| report::write_ws_csv(&points, cfg.mode, w))])
}

fn cmd_cdf(s: &Settings, log: bool, largest_only: bool) -> Result<(), CliError> {
    let g = s.dataset()?;
    let widths = s.widths(30)?;
    let index = CoRatingIndex::build(&g);
    let mut curves = Vec::with_capacity(widths.len());
    for w in widths.iter() {
        let gs = index.social_graph(JumpSpec::hammock(w).map_err(|e| CliError::Config(e.to_string()))?);
        let dist = degree_distribution(&gs, largest_only).map_err(|e| CliError::Input(e.to_string()))?;
        curves.push((w, degree_cdf(&dist, log)));
    }
    s.emit(&[("cdf.csv", &|w| report::write_cdf_csv(&curves, log, w))])
}

fn cmd_generate(
    s: &Settings,
    n_people: Option<usize>,
    n_movies: Option<usize>,
    epsilon: Option<f64>,
) -> Result<(), CliError> {
    let base = synth_base(s, n_people, n_movies)?;
    let epsilon = match s.extra(epsilon, "epsilon")? {
        Some(e) => e,
        None => calibrate_epsilon(s.common.kappa_min.unwrap_or(1), base.n_people, base.n_movies)?,
    };
    let data = generate_power_law_bipartite(&SynthConfig { epsilon, ..base })?;
    let d = data.diagnostics;
    eprintln!(
        "epsilon {epsilon:.6}  rewired {}  impossible {}  repair edges {}",
        d.rewired, d.impossible_rewires, d.repair_edges
    );
    s.emit(&[("synthetic.data", &|w| write_movielens_tab(&data.ratings, w))])
}

fn run(cli: Cli) -> Result<(), CliError> {
    let file = match &cli.config {
        Some(path) => ConfigFile::load(path)?,
        None => ConfigFile::default(),
    };
    match cli.command {
        Command::Stats(c) => cmd_stats(&Settings::new(c, file)?),
        Command::Sweep(c) => cmd_sweep(&Settings::new(c, file)?),
        Command::SynthStudy {
            common,
            n_people,
            n_movies,
        } => cmd_synth_study(&Settings::new(common, file)?, n_people, n_movies),
        Command::Ws { common, n, k, p, mode } => cmd_ws(&Settings::new(common, file)?, n, k, p, mode),
        Command::Cdf {
            common,
            log,
            largest_only,
        } => cmd_cdf(&Settings::new(common, file)?, log, largest_only),
        Command::Generate {
            common,
            n_people,
            n_movies,
            epsilon,
        } => cmd_generate(&Settings::new(common, file)?, n_people, n_movies, epsilon),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            let (CliError::Input(m) | CliError::Config(m)) = &e;
            eprintln!("error: {m}");
            ExitCode::from(e.code())
        }
    }
}
