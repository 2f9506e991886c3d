use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use mawc_core::gaussian::{DEFAULT_RESOLUTION, OUTER_R0_CROSS_FACTOR};
use secrecy_regions::commands::run_figure;
use secrecy_regions::scenario::{
    ChannelSpec, DmBoundName, DmSpec, FmCheckSpec, GaussianBoundName, GaussianSpec, InputMapsName,
    OutputSpec, Scenario, ScenarioFile, SimSpec,
};
use secrecy_regions::{load_scenario, parallel, run_scenario, CliResult, Figure, EXIT_OK, EXIT_VALIDATION};

#[derive(Parser)]
#[command(name = "secrecy-regions", version, about = "Secrecy rate regions of the two-user multiple-access wiretap channel")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Sweep the Gaussian achievable region.
    GaussianInner(GaussianArgs),
    /// Sweep the Gaussian outer bound.
    GaussianOuter {
        #[command(flatten)]
        args: GaussianArgs,
        /// Coefficient of the correlated-power term in the common-rate bound.
        #[arg(long, default_value_t = OUTER_R0_CROSS_FACTOR)]
        cross_factor: f64,
    },
    /// Sweep the Gaussian compound-MAC capacity region.
    Cmac(GaussianArgs),
    /// Sweep the discrete achievable region over auxiliary chains.
    DmInner(DmArgs),
    /// Sweep the discrete outer bound over auxiliary chains.
    DmOuter(DmArgs),
    /// Compare projected raw constraints with the direct achievable polytope.
    FmCheck {
        #[arg(long, default_value_t = 50)]
        chains: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value = "out")]
        out_dir: PathBuf,
    },
    /// Run the binning simulator on the reference configuration.
    Simulate(SimArgs),
    /// Emit the data behind one of the Gaussian comparison figures.
    Figure {
        which: FigureName,
        #[arg(long, default_value = "out")]
        out_dir: PathBuf,
        /// Grid points per sweep parameter.
        #[arg(long, default_value_t = DEFAULT_RESOLUTION)]
        resolution: usize,
    },
    /// Run a TOML scenario file.
    Run { path: PathBuf },
}

#[derive(Args)]
struct GaussianArgs {
    #[arg(long, default_value_t = 1.0)]
    p1: f64,
    #[arg(long, default_value_t = 1.0)]
    p2: f64,
    #[arg(long, default_value_t = 0.1)]
    sigma1_sq: f64,
    #[arg(long, default_value_t = 0.3)]
    sigma2_sq: f64,
    #[arg(long, default_value_t = DEFAULT_RESOLUTION)]
    resolution: usize,
    #[arg(long, default_value = "out")]
    out_dir: PathBuf,
}

#[derive(Clone, Copy, ValueEnum)]
enum ChannelName {
    ClearMainNoiseEve,
    BinaryTest,
    AdderWiretap,
}

#[derive(Clone, Copy, ValueEnum)]
enum MapsName {
    Swept,
    Identity,
}

#[derive(Args)]
struct DmArgs {
    #[arg(long, value_enum, default_value = "clear-main-noise-eve")]
    channel: ChannelName,
    /// Per-bit flip probability at receiver 1 (binary-test).
    #[arg(long, default_value_t = 0.05)]
    main_flip: f64,
    /// Per-bit flip probability at receiver 2 (binary-test).
    #[arg(long, default_value_t = 0.2)]
    eve_flip: f64,
    /// Eavesdropper error probability (adder-wiretap).
    #[arg(long, default_value_t = 0.1)]
    eve_error: f64,
    #[arg(long, default_value_t = 2)]
    u: usize,
    #[arg(long, default_value_t = 2)]
    v1: usize,
    #[arg(long, default_value_t = 2)]
    v2: usize,
    #[arg(long, default_value_t = 3)]
    resolution: usize,
    #[arg(long, value_enum, default_value = "swept")]
    input_maps: MapsName,
    #[arg(long, default_value_t = mawc_core::dm::DEFAULT_CHAIN_CAP as u64)]
    chain_cap: u64,
    #[arg(long, default_value = "out")]
    out_dir: PathBuf,
}

#[derive(Args)]
struct SimArgs {
    #[arg(long, value_delimiter = ',', default_value = "4,8,12")]
    blocklengths: Vec<usize>,
    /// Trials per codebook.
    #[arg(long, default_value_t = 50)]
    trials: u64,
    #[arg(long, default_value_t = 20)]
    codebooks: u64,
    #[arg(long, default_value_t = 1000)]
    seed: u64,
    /// Typicality slack; the reference configuration uses 0.15.
    #[arg(long)]
    eps: Option<f64>,
    #[arg(long, default_value = "out")]
    out_dir: PathBuf,
}

#[derive(Clone, Copy, ValueEnum)]
enum FigureName {
    Fig2,
    Fig3,
    Fig4,
}

fn gaussian(args: GaussianArgs, bound: GaussianBoundName, cross_factor: f64) -> ScenarioFile {
    ScenarioFile {
        scenario: Scenario::Gaussian(GaussianSpec {
            p1: args.p1,
            p2: args.p2,
            sigma1_sq: args.sigma1_sq,
            sigma2_sq: args.sigma2_sq,
            bounds: vec![bound],
            resolution: args.resolution,
            cross_factor,
        }),
        output: OutputSpec { dir: args.out_dir },
    }
}

fn dm(args: DmArgs, bound: DmBoundName) -> ScenarioFile {
    let channel = match args.channel {
        ChannelName::ClearMainNoiseEve => ChannelSpec::ClearMainNoiseEve,
        ChannelName::BinaryTest => ChannelSpec::BinaryTest {
            main_flip: args.main_flip,
            eve_flip: args.eve_flip,
        },
        ChannelName::AdderWiretap => ChannelSpec::AdderWiretap {
            eve_error: args.eve_error,
        },
    };
    ScenarioFile {
        scenario: Scenario::Dm(DmSpec {
            channel,
            bounds: vec![bound],
            u: args.u,
            v1: args.v1,
            v2: args.v2,
            resolution: args.resolution,
            input_maps: match args.input_maps {
                MapsName::Swept => InputMapsName::Swept,
                MapsName::Identity => InputMapsName::Identity,
            },
            chain_cap: args.chain_cap,
        }),
        output: OutputSpec { dir: args.out_dir },
    }
}

fn execute(command: Command) -> CliResult<Vec<PathBuf>> {
    let file = match command {
        Command::GaussianInner(a) => gaussian(a, GaussianBoundName::Inner, OUTER_R0_CROSS_FACTOR),
        Command::GaussianOuter { args, cross_factor } => {
            gaussian(args, GaussianBoundName::Outer, cross_factor)
        }
        Command::Cmac(a) => gaussian(a, GaussianBoundName::Cmac, OUTER_R0_CROSS_FACTOR),
        Command::DmInner(a) => dm(a, DmBoundName::Inner),
        Command::DmOuter(a) => dm(a, DmBoundName::Outer),
        Command::FmCheck {
            chains,
            seed,
            out_dir,
        } => ScenarioFile {
            scenario: Scenario::FmCheck(FmCheckSpec {
                chains,
                seed,
                channel: None,
            }),
            output: OutputSpec { dir: out_dir },
        },
        Command::Simulate(a) => {
            let reference = SimSpec::reference();
            ScenarioFile {
                scenario: Scenario::Simulate(SimSpec {
                    blocklengths: a.blocklengths,
                    trials: a.trials,
                    codebooks: a.codebooks,
                    seed: a.seed,
                    typicality_eps: a.eps.unwrap_or(reference.typicality_eps),
                    ..reference
                }),
                output: OutputSpec { dir: a.out_dir },
            }
        }
        Command::Figure {
            which,
            out_dir,
            resolution,
        } => {
            let fig = match which {
                FigureName::Fig2 => Figure::Fig2,
                FigureName::Fig3 => Figure::Fig3,
                FigureName::Fig4 => Figure::Fig4,
            };
            return run_figure(&parallel::pool()?, fig, &out_dir, Some(resolution));
        }
        Command::Run { path } => load_scenario(&path)?,
    };
    run_scenario(&file)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            let code = if e.use_stderr() { EXIT_VALIDATION } else { EXIT_OK };
            return ExitCode::from(code as u8);
        }
    };
    match execute(cli.command) {
        Ok(paths) => {
            for p in paths {
                println!("{}", p.display());
            }
            ExitCode::from(EXIT_OK as u8)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
