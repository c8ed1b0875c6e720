use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use mrsw_core::experiment::{convergence_study, run_experiment, ExperimentConfig, Mesh};
use mrsw_core::verification::check;
use mrsw_core::Result;

#[derive(Parser)]
#[command(name = "mrsw", version, about = "Rotating shallow water MHD solver")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run one example and write CSV snapshots.
    Run(RunArgs),
    /// Successive-mesh L1 convergence table for a 1-D example.
    Converge {
        #[arg(long, default_value = "3")]
        example: String,
        /// Comma-separated doubling chain.
        #[arg(long, value_delimiter = ',', default_value = "1000,2000,4000,8000")]
        meshes: Vec<usize>,
        #[arg(long)]
        tfinal: Option<f64>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Evaluate acceptance criteria; exits with 2 if any fail.
    Verify {
        /// Criterion ids, e.g. `1,5,10`.
        #[arg(long, value_delimiter = ',')]
        only: Vec<u8>,
    },
}

#[derive(Args)]
struct RunArgs {
    /// Flat `key = value` file; flags override it.
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long)]
    example: Option<String>,
    /// `N` for 1-D or `NxM` for 2-D.
    #[arg(long)]
    mesh: Option<String>,
    #[arg(long)]
    tfinal: Option<f64>,
    /// `wb` or `nwb`.
    #[arg(long)]
    scheme: Option<String>,
    #[arg(long, default_value = "out")]
    out: PathBuf,
    #[arg(long)]
    theta: Option<f64>,
    #[arg(long)]
    cfl: Option<f64>,
    #[arg(long)]
    perturbed: bool,
    /// Write time-averaged balance fields (1-D only).
    #[arg(long)]
    balance: bool,
}

fn run(args: RunArgs) -> Result<()> {
    let mut cfg = match &args.config {
        Some(p) => ExperimentConfig::parse(&std::fs::read_to_string(p)?)?,
        None => ExperimentConfig::example(1),
    };
    let pairs = [
        ("example", args.example),
        ("mesh", args.mesh),
        ("tfinal", args.tfinal.map(|v| v.to_string())),
        ("scheme", args.scheme),
        ("theta", args.theta.map(|v| v.to_string())),
        ("cfl", args.cfl.map(|v| v.to_string())),
    ];
    for (k, v) in pairs {
        if let Some(v) = v {
            cfg.set(k, &v)?;
        }
    }
    cfg.perturbed |= args.perturbed;
    cfg.balance |= args.balance;
    cfg.out_dir = Some(args.out);
    let s = run_experiment(&cfg)?;
    println!("t = {} after {} steps", s.t_final, s.steps);
    for (name, linf, l1) in &s.errors {
        println!("error {name}: Linf {linf:.6e} L1 {l1:.6e}");
    }
    println!("max divergence {:.3e}", s.max_divergence());
    for f in &s.files {
        println!("wrote {}", f.display());
    }
    Ok(())
}

fn converge(example: &str, meshes: Vec<usize>, tfinal: Option<f64>, out: Option<PathBuf>) -> Result<()> {
    let mut cfg = ExperimentConfig::example(1);
    cfg.set("example", example)?;
    cfg.t_end = tfinal;
    cfg.mesh = meshes.first().map(|&n| Mesh::One(n));
    let table = convergence_study(&cfg, &meshes)?;
    let text = table.render();
    print!("{text}");
    if let Some(p) = out {
        if let Some(dir) = p.parent() {
            std::fs::create_dir_all(dir)?;
        }
        std::fs::write(p, text)?;
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Run(args) => run(args),
        Command::Converge { example, meshes, tfinal, out } => converge(&example, meshes, tfinal, out),
        Command::Verify { only } => {
            let ids: Vec<u8> = if only.is_empty() { (1..=10).collect() } else { only };
            let mut all = true;
            for id in ids {
                let o = check(id);
                println!("{}", o.line());
                all &= o.passed;
            }
            return if all { ExitCode::SUCCESS } else { ExitCode::from(2) };
        }
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::FAILURE
        }
    }
}
