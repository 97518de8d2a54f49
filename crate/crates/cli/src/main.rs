use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use ldm_wiretap::{
    build_allocation, normalize_config, rate_report, verify_config_with, ChannelConfig, Enumerator, Regime,
    DEFAULT_BUDGET,
};
use ldm_wiretap_cli::spec::{parse_alphas, Alphas, EveRule, GainSet, SweepSpec};
use ldm_wiretap_cli::table::{fig3_rows, sweep_rows, to_csv, write_output};
use ldm_wiretap_cli::CliError;

#[derive(Parser)]
#[command(name = "ldm-wiretap", version, about = "Secrecy rates and verification for the deterministic MAC wiretap channel")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Closed-form achievable rate and upper bound for one configuration.
    Rate {
        #[command(flatten)]
        gains: Gains,
        /// Print the full report as JSON.
        #[arg(long)]
        json: bool,
    },
    /// Rate table over a grid of gains, as CSV.
    Sweep {
        #[arg(long)]
        n11: Option<GainSet>,
        #[arg(long)]
        n21: Option<GainSet>,
        #[arg(long)]
        n22: Option<GainSet>,
        /// Defaults to the n22 set.
        #[arg(long)]
        n12: Option<GainSet>,
        /// Symmetric eavesdropper rule: an integer, `nmax` or `n2`.
        #[arg(long = "ne")]
        eavesdropper: Option<EveRule>,
        /// Keep only rows with n21 < n11.
        #[arg(long)]
        n21_below_n11: bool,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        spec: Option<PathBuf>,
    },
    /// Normalized rate curves against alpha = n21 / n11 with n11 fixed.
    Fig3 {
        /// Fixed n11 (default 60).
        #[arg(long)]
        n1: Option<u32>,
        /// Comma-separated rationals, e.g. `1/2,3/4,2`; default k/n1 for k = 1..=2 n1.
        #[arg(long, value_parser = |s: &str| parse_alphas(s).map(Alphas))]
        alpha: Option<Alphas>,
        /// Eavesdropper rule (default `nmax`).
        #[arg(long = "ne")]
        eavesdropper: Option<EveRule>,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        spec: Option<PathBuf>,
    },
    /// Exhaustively verify secrecy and decodability of the constructed scheme.
    Verify {
        #[command(flatten)]
        gains: Gains,
        /// Maximum message + jam bits to enumerate.
        #[arg(long)]
        budget: Option<u32>,
    },
    /// Print the level allocation of the constructed scheme.
    Plan {
        #[command(flatten)]
        gains: Gains,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Args)]
struct Gains {
    #[arg(long)]
    n11: Option<u32>,
    #[arg(long)]
    n21: Option<u32>,
    #[arg(long)]
    n22: Option<u32>,
    /// Defaults to n22.
    #[arg(long)]
    n12: Option<u32>,
    /// JSON file with single-valued n11, n21, n22, n12 (and budget).
    #[arg(long)]
    spec: Option<PathBuf>,
}

fn single(set: &Option<GainSet>, name: &str) -> Result<Option<u32>, CliError> {
    match set {
        None => Ok(None),
        Some(GainSet(v)) if v.len() == 1 => Ok(Some(v[0])),
        Some(_) => Err(CliError::Usage(format!("{name} must be a single value here"))),
    }
}

impl Gains {
    fn resolve(&self) -> Result<(ChannelConfig, Option<SweepSpec>), CliError> {
        let file = self.spec.as_deref().map(SweepSpec::from_file).transpose()?;
        let pick = |flag: Option<u32>, set: Option<&Option<GainSet>>, name: &str| -> Result<Option<u32>, CliError> {
            match flag {
                Some(v) => Ok(Some(v)),
                None => set.map_or(Ok(None), |s| single(s, name)),
            }
        };
        let need = |v: Option<u32>, name: &str| v.ok_or_else(|| CliError::Usage(format!("missing --{name}")));
        let n11 = need(pick(self.n11, file.as_ref().map(|f| &f.n11), "n11")?, "n11")?;
        let n21 = need(pick(self.n21, file.as_ref().map(|f| &f.n21), "n21")?, "n21")?;
        let n22 = need(pick(self.n22, file.as_ref().map(|f| &f.n22), "n22")?, "n22")?;
        let n12 = pick(self.n12, file.as_ref().map(|f| &f.n12), "n12")?.unwrap_or(n22);
        Ok((normalize_config(n11, n21, n22, n12), file))
    }
}

fn run(cli: Cli) -> Result<ExitCode, CliError> {
    match cli.cmd {
        Cmd::Rate { gains, json } => {
            let (cfg, _) = gains.resolve()?;
            let rep = rate_report(&cfg);
            if json {
                println!("{}", serde_json::to_string_pretty(&rep).map_err(|e| CliError::Io(e.to_string()))?);
            } else {
                let alpha = rep.alpha.map(|a| a.to_string()).unwrap_or_default();
                println!("config={cfg}");
                println!("regime={}", cfg.regime);
                println!("r_ach={}", rep.r_ach);
                println!("r_ub={}", rep.r_ub);
                println!("n_max={}", rep.n_max());
                println!("alpha={alpha}");
                println!("r_ach_norm={}", rep.r_ach_norm);
                println!("r_ub_norm={}", rep.r_ub_norm);
                println!("red_curve_norm={}", rep.red_curve_norm);
                println!("tight={}", rep.is_tight());
            }
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Sweep {
            n11,
            n21,
            n22,
            n12,
            eavesdropper,
            n21_below_n11,
            out,
            spec,
        } => {
            let mut s = spec.as_deref().map(SweepSpec::from_file).transpose()?.unwrap_or_default();
            s.n11 = n11.or(s.n11);
            s.n21 = n21.or(s.n21);
            s.n22 = n22.or(s.n22);
            s.n12 = n12.or(s.n12);
            s.eavesdropper = eavesdropper.or(s.eavesdropper);
            s.n21_below_n11 |= n21_below_n11;
            let out = out.or(s.output.clone());
            let rows = sweep_rows(&s)?;
            write_output(&to_csv(&rows)?, out.as_deref())?;
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Fig3 {
            n1,
            alpha,
            eavesdropper,
            out,
            spec,
        } => {
            let mut s = spec.as_deref().map(SweepSpec::from_file).transpose()?.unwrap_or_default();
            s.n1_fixed = n1.or(s.n1_fixed);
            s.alphas = alpha.map(|a| a.0).or(s.alphas);
            s.eavesdropper = eavesdropper.or(s.eavesdropper);
            let out = out.or(s.output.clone());
            let (rows, warnings) = fig3_rows(&s)?;
            for w in warnings {
                eprintln!("warning: {w}");
            }
            write_output(&to_csv(&rows)?, out.as_deref())?;
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Verify { gains, budget } => {
            let (cfg, file) = gains.resolve()?;
            if cfg.regime == Regime::Singular {
                return Err(ldm_wiretap::Error::Singular.into());
            }
            let budget = budget.or(file.and_then(|f| f.budget)).unwrap_or(DEFAULT_BUDGET);
            let rep = verify_config_with(&cfg, &Enumerator::with_budget(budget))?;
            println!("{}", serde_json::to_string_pretty(&rep).map_err(|e| CliError::Io(e.to_string()))?);
            let code = if !rep.is_secure() {
                3
            } else if !rep.is_zero_error() {
                4
            } else if !rep.formula_match {
                5
            } else {
                0
            };
            Ok(ExitCode::from(code))
        }
        Cmd::Plan { gains, format } => {
            let (cfg, _) = gains.resolve()?;
            let plan = build_allocation(&cfg)?;
            match format {
                Format::Text => print!("{}", plan.level_map_text()),
                Format::Json => println!("{}", plan.level_map_json()),
            }
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("ldm-wiretap: {e}");
            e.into()
        }
    }
}
