use clap::{Parser, Subcommand};
use interp_cli::{
    find_min_evaluations, format_min_evals, format_noise_cell, generate_instance_record,
    noise_trial_suite, run_experiment, ExperimentConfig, InstanceRef, Method, MethodSettings,
    NoiseSuiteSettings, OutputFormat, SchemeChoice, Table,
};
use interp_core::error::{Error, Result};

#[derive(Parser)]
#[command(
    name = "interp",
    about = "Sparse polynomial interpolation experiments from black-box evaluations"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a full experiment described by a JSON config file.
    Run {
        #[arg(long)]
        config: String,
        #[arg(long)]
        out: Option<String>,
    },
    /// Search the minimal scheme degree for exact noiseless recovery.
    MinEvals {
        /// Bundled index ("p3" or "3") or a path to an instance JSON file.
        #[arg(long)]
        instance: String,
        #[arg(long)]
        method: String,
        #[arg(long, default_value = "a1")]
        scheme: String,
        #[arg(long, default_value = "markdown")]
        format: String,
        #[arg(long)]
        out: Option<String>,
    },
    /// Noisy-evaluation trials at the shared degree of the chosen methods.
    Noise {
        #[arg(long)]
        instance: String,
        #[arg(long, default_value_t = 0.1)]
        amplitude: f64,
        #[arg(long, default_value_t = 10)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Comma-separated method names.
        #[arg(long, default_value = "rigorous_lp,superres,toeplitz_prony")]
        methods: String,
        #[arg(long, default_value = "a1")]
        scheme: String,
        /// Rank threshold for the extraction steps.
        #[arg(long, default_value_t = 0.1)]
        epsilon: f64,
        /// Fixed shared degree; omitted means searching the noiseless minima.
        #[arg(long)]
        degree: Option<i64>,
        #[arg(long, default_value = "markdown")]
        format: String,
        #[arg(long)]
        out: Option<String>,
    },
    /// Generate a random instance and print it as JSON.
    Gen {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        degree: i64,
        #[arg(long)]
        terms: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<String>,
    },
}

fn parse_format(name: &str) -> Result<OutputFormat> {
    match name {
        "csv" => Ok(OutputFormat::Csv),
        "markdown" => Ok(OutputFormat::Markdown),
        other => Err(Error::Input(format!(
            "unknown format '{}'; expected csv or markdown",
            other
        ))),
    }
}

fn emit(text: &str, out: &Option<String>) -> Result<()> {
    match out {
        Some(path) => std::fs::write(path, text)
            .map_err(|e| Error::Input(format!("cannot write {}: {}", path, e))),
        None => {
            print!("{}", text);
            Ok(())
        }
    }
}

fn execute(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Run { config, out } => {
            let text = std::fs::read_to_string(&config)
                .map_err(|e| Error::Input(format!("cannot read {}: {}", config, e)))?;
            let cfg: ExperimentConfig = serde_json::from_str(&text)
                .map_err(|e| Error::Input(format!("bad config JSON: {}", e)))?;
            emit(&run_experiment(&cfg)?, &out)
        }
        Command::MinEvals {
            instance,
            method,
            scheme,
            format,
            out,
        } => {
            let inst_ref = InstanceRef::parse(&instance);
            let inst = inst_ref.load()?;
            let truth = inst.polynomial()?;
            let method = Method::from_name(&method)?;
            let scheme = SchemeChoice::from_name(&scheme)?;
            let outcome = find_min_evaluations(
                &truth,
                inst.degree_bound,
                method,
                scheme,
                &MethodSettings::default(),
            )?;
            let mut table = Table::new(vec!["blackbox".into(), method.label().into()]);
            table.push_row(vec![inst_ref.label(), format_min_evals(&outcome)]);
            emit(&table.render(parse_format(&format)?), &out)
        }
        Command::Noise {
            instance,
            amplitude,
            trials,
            seed,
            methods,
            scheme,
            epsilon,
            degree,
            format,
            out,
        } => {
            let inst_ref = InstanceRef::parse(&instance);
            let inst = inst_ref.load()?;
            let truth = inst.polynomial()?;
            let scheme = SchemeChoice::from_name(&scheme)?;
            let methods: Vec<Method> = methods
                .split(',')
                .map(|m| Method::from_name(m.trim()))
                .collect::<Result<_>>()?;
            let settings = NoiseSuiteSettings {
                amplitude,
                trials,
                base_seed: seed,
                rank_threshold: epsilon,
            };
            let cells = noise_trial_suite(
                &truth,
                inst.degree_bound,
                &methods,
                scheme,
                degree,
                &settings,
            )?;
            let mut headers = vec!["blackbox".to_string()];
            headers.extend(cells.iter().map(|(m, _)| m.label().to_string()));
            let mut table = Table::new(headers);
            let mut row = vec![inst_ref.label()];
            row.extend(cells.iter().map(|(_, c)| format_noise_cell(c)));
            table.push_row(row);
            emit(&table.render(parse_format(&format)?), &out)
        }
        Command::Gen {
            n,
            degree,
            terms,
            seed,
            out,
        } => {
            let inst = generate_instance_record(n, degree, terms, seed)?;
            let json = serde_json::to_string_pretty(&inst)
                .map_err(|e| Error::Input(format!("serialization failed: {}", e)))?;
            emit(&format!("{}\n", json), &out)
        }
    }
}

fn main() {
    if let Ok(text) = std::env::var("INTERP_THREADS") {
        if let Ok(k) = text.parse::<usize>() {
            let _ = rayon::ThreadPoolBuilder::new().num_threads(k).build_global();
        }
    }
    let cli = Cli::parse();
    if let Err(e) = execute(cli) {
        eprintln!("error: {}", e);
        std::process::exit(1);
    }
}
