use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use sbp_schrodinger::grid::Representation;
use sbp_schrodinger::harness::{
    execute, initial_data, parse_config, plan, read_reference, run_preset, write_reference,
    write_report, Overrides, RunSpec, Scale, LENGTH, PRESET_NAMES,
};
use sbp_schrodinger::integrate::Method;
use sbp_schrodinger::sbp::SbpOperator;
use sbp_schrodinger::scheme::LScaling;
use sbp_schrodinger::{Error, Result};

#[derive(Parser)]
#[command(name = "sbp-schrodinger", version, about = "Schrödinger equation on a circle with a penalty interface")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a preset and write its manifest, time series and snapshots.
    Run(RunArgs),
    /// Compute a periodic reference solution and write every sample state.
    Reference(ReferenceArgs),
    /// List the available presets.
    Presets,
    /// Print the coefficient table of an SBP operator.
    DumpOperator {
        #[arg(long, default_value_t = 8)]
        order: usize,
    },
}

#[derive(Args)]
struct RunArgs {
    /// Preset name; append `-ci` for the scaled-down variant.
    #[arg(long)]
    preset: Option<String>,
    /// `key = value` file; command-line flags take precedence.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Reuse reference states written by `reference` or a previous run.
    #[arg(long)]
    reference_dir: Option<PathBuf>,
    /// Grid size of the coarsest run; the other runs scale with it.
    #[arg(long)]
    n: Option<usize>,
    #[arg(long, value_parser = ["2", "4", "6", "8"])]
    order: Option<String>,
    #[arg(long)]
    integrator: Option<Method>,
    #[arg(long)]
    l_coeff: Option<f64>,
    #[arg(long, value_parser = ["2", "3"])]
    l_exponent: Option<String>,
    /// Use L = 1/(σ_0 dx²).
    #[arg(long)]
    l_explicit_bound: bool,
    #[arg(long)]
    epsilon: Option<f64>,
    #[arg(long)]
    t_final: Option<f64>,
    #[arg(long)]
    cfl: Option<f64>,
    #[arg(long)]
    samples: Option<usize>,
    #[arg(long)]
    envelope_denominator: Option<f64>,
    #[arg(long)]
    wave_number: Option<f64>,
    #[arg(long)]
    out_dir: Option<PathBuf>,
}

impl RunArgs {
    fn overrides(&self) -> Overrides {
        Overrides {
            preset: self.preset.clone(),
            n: self.n,
            order: self.order.as_deref().map(|s| s.parse().expect("validated by clap")),
            integrator: self.integrator,
            l_coeff: self.l_coeff,
            l_exponent: self.l_exponent.as_deref().map(|s| s.parse().expect("validated by clap")),
            l_explicit_bound: self.l_explicit_bound.then_some(true),
            epsilon: self.epsilon,
            t_final: self.t_final,
            cfl: self.cfl,
            samples: self.samples,
            envelope_denominator: self.envelope_denominator,
            wave_number: self.wave_number,
            out_dir: self.out_dir.clone(),
        }
    }
}

#[derive(Args)]
struct ReferenceArgs {
    #[arg(long, default_value_t = 8000)]
    n: usize,
    #[arg(long, default_value_t = 8)]
    order: usize,
    #[arg(long, default_value_t = 0.004)]
    t_final: f64,
    #[arg(long, default_value_t = 100)]
    samples: usize,
    #[arg(long, default_value_t = 0.25)]
    cfl: f64,
    /// Use the scaled-down packet of the `-ci` presets.
    #[arg(long)]
    ci: bool,
    #[arg(long)]
    envelope_denominator: Option<f64>,
    #[arg(long)]
    wave_number: Option<f64>,
    #[arg(long, default_value = "out/reference")]
    out_dir: PathBuf,
}

fn run(args: &RunArgs) -> Result<()> {
    let mut o = Overrides::default();
    if let Some(path) = &args.config {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Io { context: format!("reading {}", path.display()), source: e })?;
        o = parse_config(&text, path)?;
    }
    let o = o.merged(&args.overrides());
    let name = o
        .preset
        .clone()
        .ok_or_else(|| Error::Config("no preset given (use --preset or a config file)".into()))?;
    let reference = args.reference_dir.as_deref().map(read_reference).transpose()?;
    let report = run_preset(&name, &o, reference)?;
    let dir = o.out_dir.clone().unwrap_or_else(|| Path::new("out").join(&name));
    let manifest = write_report(&report, &dir, &o)?;
    for (k, v) in &report.metrics {
        println!("{k} = {v:e}");
    }
    println!("wrote {}", manifest.display());
    Ok(())
}

fn reference(args: &ReferenceArgs) -> Result<()> {
    let scale = if args.ci { Scale::Ci } else { Scale::Full };
    let mut initial = initial_data(scale);
    if let Some(d) = args.envelope_denominator {
        initial.envelope_denominator = d;
    }
    if let Some(k) = args.wave_number {
        initial.wave_number = k;
    }
    let spec = RunSpec {
        label: "reference".into(),
        length: LENGTH,
        n: args.n,
        representation: Representation::Periodic,
        order: args.order,
        method: Method::Rk4,
        l_scaling: LScaling::ExplicitBound,
        epsilon: 0.0,
        cfl: args.cfl,
        t_final: args.t_final,
        samples: args.samples,
        initial,
    };
    let result = execute(&spec, None, true)?;
    write_reference(&result, &args.out_dir)?;
    let manifest: String = spec
        .manifest_lines("reference.")
        .into_iter()
        .map(|(k, v)| format!("{k} = {v}\n"))
        .collect();
    let path = args.out_dir.join("manifest.txt");
    std::fs::write(&path, manifest)
        .map_err(|e| Error::Io { context: format!("writing {}", path.display()), source: e })?;
    println!("wrote {} states to {}", result.states.len(), args.out_dir.display());
    Ok(())
}

fn presets() -> Result<()> {
    for base in PRESET_NAMES {
        for name in [base.to_string(), format!("{base}-ci")] {
            let p = plan(&name)?;
            let sizes: Vec<String> = p.runs.iter().map(|r| format!("{}:{}", r.label, r.n)).collect();
            println!("{name:<24} {} [{}]", p.description, sizes.join(" "));
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Run(a) => run(a),
        Command::Reference(a) => reference(a),
        Command::Presets => presets(),
        Command::DumpOperator { order } => SbpOperator::<f64>::new(*order).map(|op| print!("{}", op.coefficient_dump())),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
