use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use faraday_core::single_photon::{fisher_terms, fisher_unit};
use faraday_core::{
    measurement_moments, noise_budget, nominal_fisher_v, outcome_probabilities, polarized_reflection,
    probability_derivatives, sensitivity_mp, sensitivity_sp_auto, fisher_information_sp,
};
use faraday_cli::claims::check_paper;
use faraday_cli::config::{ConfigEntries, RunConfig};
use faraday_cli::figures::figure;
use faraday_cli::manifest::RunManifest;
use faraday_cli::sweep::{run_sweep, Axis, Quantity, SweepSpec};
use faraday_cli::table::{Cell, Table};

#[derive(Parser)]
#[command(name = "faraday", version, about = "Microwave Faraday-rotation magnetometer simulator")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    common: Common,
}

#[derive(Args)]
struct Common {
    /// Configuration file of `key = value [unit]` lines
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Override one configuration entry, e.g. `--set "G=0.1 kappa_i"`
    #[arg(long = "set", global = true, value_name = "KEY=VALUE")]
    set: Vec<String>,
    /// Directory for output files (default: stdout)
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Worker threads for sweeps and figures (default: available parallelism)
    #[arg(long, global = true, default_value_t = 0)]
    jobs: usize,
}

#[derive(Subcommand)]
enum Command {
    /// Circular and linear reflection amplitudes
    Reflect,
    /// Outcome probabilities and their slopes
    Probs,
    /// Single-photon Fisher information at the configured shift
    FisherSp,
    /// Single-photon sensitivity limit (tau_m = 1/FWHM)
    SenseSp,
    /// V-port Fisher information, noise budget and photon-count moments
    FisherMp,
    /// Multiphoton sensitivity limit
    SenseMp,
    /// Sweep one quantity over one or two parameters
    Sweep {
        /// `name=START:STOP:N[:log] [unit]`, given once or twice
        #[arg(long, required = true)]
        axis: Vec<String>,
        /// One of P_V, P_H, P_empty, F_I, F_IV, phi_F, sens_sp, sens_mp
        #[arg(long)]
        quantity: String,
        /// Fail on non-finite values instead of flagging them
        #[arg(long)]
        strict: bool,
    },
    /// Data for figure 3, 4, 5, 6 or 7
    Figure { id: u8 },
    /// Run the acceptance suite against the published numbers
    CheckPaper,
}

struct Failure {
    code: u8,
    message: String,
}

fn usage(message: impl ToString) -> Failure {
    Failure { code: 1, message: message.to_string() }
}

fn load_config(common: &Common) -> Result<RunConfig, Failure> {
    let mut entries = match &common.config {
        Some(path) => {
            let text = fs::read_to_string(path).map_err(|e| usage(format!("{}: {e}", path.display())))?;
            ConfigEntries::parse(&text).map_err(|e| usage(format!("{}: {e}", path.display())))?
        }
        None => ConfigEntries::default(),
    };
    for s in &common.set {
        entries.set(s).map_err(usage)?;
    }
    entries.resolve().map_err(usage)
}

fn emit(out: Option<&Path>, files: &[(String, String)]) -> Result<(), Failure> {
    let io_err = |e: io::Error| Failure { code: 1, message: e.to_string() };
    match out {
        Some(dir) => {
            fs::create_dir_all(dir).map_err(io_err)?;
            for (name, text) in files {
                fs::write(dir.join(name), text).map_err(io_err)?;
            }
        }
        None => {
            let mut stdout = io::stdout().lock();
            for (i, (_, text)) in files.iter().enumerate() {
                if i > 0 {
                    writeln!(stdout).map_err(io_err)?;
                }
                stdout.write_all(text.as_bytes()).map_err(io_err)?;
            }
        }
    }
    Ok(())
}

fn key_values(rows: Vec<(&str, f64)>) -> Table {
    let mut t = Table::new(["quantity", "value"]);
    for (k, v) in rows {
        t.push(vec![Cell::Text(k.into()), Cell::Num(v)]);
    }
    t
}

fn point_table(command: &Command, c: &RunConfig) -> Result<Table, Failure> {
    let p = &c.params;
    let core = |e: faraday_core::Error| usage(e);
    let t = match command {
        Command::Reflect => {
            let r = polarized_reflection(p);
            key_values(vec![
                ("Re r_plus", r.r_plus.re),
                ("Im r_plus", r.r_plus.im),
                ("Re r_minus", r.r_minus.re),
                ("Im r_minus", r.r_minus.im),
                ("Re r_HH", r.r_hh.re),
                ("Im r_HH", r.r_hh.im),
                ("Re r_VH", r.r_vh.re),
                ("Im r_VH", r.r_vh.im),
                ("mean_modulus", r.mean_modulus),
                ("modulus_asymmetry", r.modulus_asymmetry),
                ("phi_F", r.faraday_angle),
                ("singular", f64::from(u8::from(r.singular))),
            ])
        }
        Command::Probs => {
            let d = outcome_probabilities(p);
            let s = probability_derivatives(p);
            key_values(vec![
                ("P_V", d.p_v),
                ("P_H", d.p_h),
                ("P_empty", d.p_empty),
                ("dP_V/ddelta", s[0]),
                ("dP_H/ddelta", s[1]),
                ("dP_empty/ddelta", s[2]),
            ])
        }
        Command::FisherSp => {
            let unit = fisher_unit(p.kappa_i);
            let terms = fisher_terms(p);
            let f = fisher_information_sp(p);
            key_values(vec![
                ("F_I", f),
                ("F_I/(mu_B g_e/kappa_i)^2", f / unit),
                ("term_V", terms[0]),
                ("term_H", terms[1]),
                ("term_empty", terms[2]),
            ])
        }
        Command::SenseSp => {
            let r = sensitivity_sp_auto(p).map_err(core)?;
            key_values(vec![
                ("sensitivity", r.value),
                ("sensitivity/(sqrt(kappa_i)/(mu_B g_e))", r.scaled()),
                ("fisher_peak", r.fisher_peak),
                ("peak_location", r.peak_location),
                ("fwhm", r.fwhm),
                ("tau_m", r.tau_m),
            ])
        }
        Command::FisherMp => {
            let env = c.environment().map_err(usage)?;
            let probe = c.probe().map_err(usage)?;
            let f = nominal_fisher_v(p);
            let b = noise_budget(p, &env).map_err(core)?;
            let m = measurement_moments(p, &env, &probe).map_err(core)?;
            key_values(vec![
                ("F_IV", f),
                ("F_IV/(mu_B g_e/kappa_i)^2", f / fisher_unit(p.kappa_i)),
                ("n_th", env.n_th),
                ("n_in", probe.n_in),
                ("n_xi", b.n_xi),
                ("C_th", b.c_th),
                ("noise_external_H", b.components.external_h),
                ("noise_internal_H", b.components.internal_h),
                ("noise_external_V", b.components.external_v),
                ("noise_internal_V", b.components.internal_v),
                ("mean_M", m.mean),
                ("variance_M", m.variance),
                ("variance_M_approx", m.variance_approx),
            ])
        }
        Command::SenseMp => {
            let env = c.environment().map_err(usage)?;
            let probe = c.probe().map_err(usage)?;
            let s = sensitivity_mp(p, &env, &probe).map_err(core)?;
            key_values(vec![
                ("sensitivity", s.value),
                ("sensitivity_pre_limit", s.pre_limit),
                ("sensitivity_kT", s.thermal_kt),
                ("sensitivity_simplified", s.simplified),
                ("F_IV", s.fisher_v),
                ("P_V", s.p_v),
                ("P_H", s.p_h),
                ("C_th", s.budget.c_th),
                ("n_xi", s.budget.n_xi),
                ("n_th", s.n_th),
            ])
        }
        _ => unreachable!("not a single-point command"),
    };
    Ok(t)
}

fn command_name(c: &Command) -> String {
    match c {
        Command::Reflect => "reflect".into(),
        Command::Probs => "probs".into(),
        Command::FisherSp => "fisher-sp".into(),
        Command::SenseSp => "sense-sp".into(),
        Command::FisherMp => "fisher-mp".into(),
        Command::SenseMp => "sense-mp".into(),
        Command::Sweep { .. } => "sweep".into(),
        Command::Figure { id } => format!("figure {id}"),
        Command::CheckPaper => "check-paper".into(),
    }
}

fn run(cli: Cli) -> Result<(), Failure> {
    let out = cli.common.out.as_deref();
    let jobs = cli.common.jobs;
    match &cli.command {
        Command::Figure { id } => {
            let files = figure(*id, jobs).ok_or_else(|| usage(format!("no figure {id}; choose 3, 4, 5, 6 or 7")))?;
            let rendered: Vec<(String, String)> = files.iter().map(|f| (f.name.clone(), f.render())).collect();
            emit(out, &rendered)
        }
        Command::CheckPaper => {
            let check = check_paper(jobs);
            let mut manifest = RunManifest::new("check-paper");
            manifest.claims = check.claims.iter().map(|c| c.row()).collect();
            for line in &check.discrepancy {
                manifest = manifest.note(format!("multiphoton endpoint: {line}"));
            }
            let mut t = Table::new(["id", "description", "computed", "published", "tolerance", "status"]);
            for c in &check.claims {
                t.push(vec![
                    Cell::Text(c.id.into()),
                    Cell::Text(c.description.into()),
                    Cell::Text(c.computed.clone()),
                    Cell::Text(c.published.clone()),
                    Cell::Text(c.tolerance.clone()),
                    Cell::Text(if c.pass { "PASS" } else { "FAIL" }.into()),
                ]);
            }
            for c in &check.claims {
                eprintln!("{}", c.line());
            }
            emit(out, &[("check_paper.csv".into(), t.to_csv_string(&manifest))])?;
            if check.all_pass() {
                Ok(())
            } else {
                Err(Failure { code: 2, message: "acceptance failures present".into() })
            }
        }
        Command::Sweep { axis, quantity, strict } => {
            let config = load_config(&cli.common)?;
            let axes = axis.iter().map(|a| Axis::parse(a)).collect::<Result<Vec<_>, _>>().map_err(usage)?;
            let q: Quantity = quantity.parse().map_err(usage)?;
            let mut spec = SweepSpec::new(axes, config, q).map_err(usage)?;
            spec.flag_nonfinite = !strict;
            let table = run_sweep(&spec, jobs).map_err(usage)?;
            let mut manifest = RunManifest::new(format!("sweep {q}")).with_config(&config);
            for a in axis {
                manifest = manifest.note(format!("axis {a}"));
            }
            emit(out, &[(format!("sweep_{q}.csv"), table.to_csv_string(&manifest))])
        }
        single => {
            let config = load_config(&cli.common)?;
            let table = point_table(single, &config)?;
            let name = command_name(single);
            let manifest = RunManifest::new(name.clone()).with_config(&config);
            emit(out, &[(format!("{name}.csv"), table.to_csv_string(&manifest))])
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
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
