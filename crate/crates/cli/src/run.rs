//! Command execution. Every command yields one table plus a diagnostics record.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use anyhow::{Context, Result};
use mfspec_core::geometry::CylinderTable;
use mfspec_core::spectrum::{
    alternating_sampler, full_spectrum, moran_root, parabolic_interval, BlockSource, SamplerConfig,
};
use mfspec_core::{MarkovChainF64, SpectrumPointF64};
use serde_json::{json, Value};

use crate::config::{CommandConfig, OutputConfig, RunConfig};
use crate::table::Table;
use crate::validate::run_suite;

pub const SPECTRUM_COLUMNS: [&str; 10] = [
    "alpha",
    "lower",
    "upper",
    "flag",
    "n",
    "rho",
    "delta",
    "lemma1_gap",
    "iterations",
    "error",
];

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Complete,
    /// Some rows carry an error.
    Partial,
}

impl Status {
    pub fn exit_code(self) -> i32 {
        match self {
            Status::Complete => 0,
            Status::Partial => 2,
        }
    }
}

#[derive(Debug, Clone)]
pub struct Outcome {
    pub table: Table,
    pub diagnostics: Value,
    pub status: Status,
}

pub fn execute(config: &RunConfig) -> Result<Outcome> {
    match &config.command {
        CommandConfig::Spectrum { .. } | CommandConfig::Single { .. } => spectrum(config),
        CommandConfig::Dim => dimension(config),
        CommandConfig::Sample { .. } => sample(config),
        CommandConfig::Validate { suite, n } => run_suite(*suite, *n),
    }
}

fn spectrum(config: &RunConfig) -> Result<Outcome> {
    let sys = config.build_system()?;
    let potential = config.build_potential();
    let options = config.solver.options();
    let alphas = config.alphas().expect("spectrum command has alphas");
    let points = full_spectrum(&sys, &potential, &alphas, &options)?;
    let table = spectrum_table(&points);
    let status = if points.iter().any(|p| p.error.is_some()) {
        Status::Partial
    } else {
        Status::Complete
    };
    let interval = parabolic_interval(&sys, &potential).map(|iv| [iv.lo, iv.hi]);
    let first = points.first().map(|p| &p.diagnostics);
    let diagnostics = json!({
        "command": "spectrum",
        "system": sys.name(),
        "parameters": parameters(&sys),
        "depth": options.depth,
        "lemma1_gap": first.map(|d| d.lemma1_gap),
        "variation_slack": first.map(|d| d.variation_slack),
        "rho": first.map(|d| d.rho),
        "delta": first.map(|d| d.delta),
        "parabolic_interval": interval,
        "points": points.iter().map(|p| json!({
            "alpha": p.alpha,
            "in_parabolic_interval": p.in_parabolic_interval,
            "cover_size": p.diagnostics.cover_size,
            "iterations": p.diagnostics.iterations,
            "t": p.diagnostics.t,
            "q": p.diagnostics.q,
            "achieved_alpha": p.diagnostics.achieved_alpha,
            "achieved_lambda": p.diagnostics.achieved_lambda,
            "error": p.error.as_ref().map(|e| e.to_string()),
        })).collect::<Vec<_>>(),
    });
    Ok(Outcome {
        table,
        diagnostics,
        status,
    })
}

pub fn spectrum_table(points: &[SpectrumPointF64]) -> Table {
    let mut table = Table::new(SPECTRUM_COLUMNS.to_vec());
    for p in points {
        let d = &p.diagnostics;
        table.push(vec![
            p.alpha.into(),
            p.lower.into(),
            p.upper.into(),
            p.in_parabolic_interval.into(),
            d.depth.into(),
            d.rho.into(),
            d.delta.into(),
            d.lemma1_gap.into(),
            d.iterations.into(),
            p.error
                .as_ref()
                .map(|e| e.to_string())
                .unwrap_or_default()
                .into(),
        ]);
    }
    table
}

fn dimension(config: &RunConfig) -> Result<Outcome> {
    let sys = config.build_system()?;
    let options = config.solver.options();
    options.validate()?;
    let table_n = CylinderTable::build(&sys, None, options.depth, options.enumeration_cap)?;
    let s = moran_root(table_n.log_diameters(), options.moran_tol)?;
    let gap = table_n.lemma1_gap();
    let mut table = Table::new(vec!["system", "n", "dimension", "cover_size", "lemma1_gap"]);
    table.push(vec![
        sys.name().into(),
        options.depth.into(),
        s.into(),
        table_n.len().into(),
        gap.into(),
    ]);
    let diagnostics = json!({
        "command": "dim",
        "system": sys.name(),
        "parameters": parameters(&sys),
        "depth": options.depth,
        "cover_size": table_n.len(),
        "lemma1_gap": gap,
    });
    Ok(Outcome {
        table,
        diagnostics,
        status: Status::Complete,
    })
}

fn default_k(horizon: usize) -> Vec<usize> {
    let mut k = Vec::new();
    let mut total = 0usize;
    for i in 1.. {
        total += i * (1 + i);
        k.push(i);
        if total > horizon {
            break;
        }
    }
    k
}

fn sample(config: &RunConfig) -> Result<Outcome> {
    let CommandConfig::Sample {
        transition,
        initial,
        parabolic_symbol,
        horizon,
        k,
        eps,
    } = &config.command
    else {
        unreachable!("sample command");
    };
    let sys = config.build_system()?;
    let potential = config.build_potential();
    let chain = MarkovChainF64::new(transition.clone(), initial.clone(), false)?;
    let k_schedule = k.clone().unwrap_or_else(|| default_k(*horizon));
    let eps_schedule = eps.clone().unwrap_or_else(|| {
        (1..=k_schedule.len())
            .map(|i| 1.0 / (i * i) as f64)
            .collect()
    });
    let sampler = SamplerConfig {
        parabolic_symbol: *parabolic_symbol,
        k_schedule,
        eps_schedule,
        horizon: *horizon,
        seed: config.solver.seed,
    };
    let checkpoints = alternating_sampler(&sys, &potential, &BlockSource::Markov(chain), &sampler)?;
    let branch = *parabolic_symbol as usize;
    let target = sys
        .branch(branch)
        .fixed_point()
        .map(|x| potential.value_at_fixed_point(branch, x));
    let mut table = Table::new(vec!["stage", "n", "average_f", "average_g", "f_gap"]);
    for c in &checkpoints {
        table.push(vec![
            c.stage.into(),
            c.n.into(),
            c.average_f.into(),
            c.average_g.into(),
            target.map(|t| (c.average_f - t).abs()).into(),
        ]);
    }
    let diagnostics = json!({
        "command": "sample",
        "system": sys.name(),
        "parameters": parameters(&sys),
        "seed": config.solver.seed,
        "stages": checkpoints.len(),
        "parabolic_value": target,
    });
    Ok(Outcome {
        table,
        diagnostics,
        status: Status::Complete,
    })
}

fn parameters(sys: &mfspec_core::IfsSystemF64) -> Value {
    Value::Object(
        sys.parameters()
            .iter()
            .map(|(k, v)| (k.clone(), json!(v)))
            .collect(),
    )
}

/// `<stem>.diagnostics.json` next to the table.
pub fn sidecar_path(table: &Path) -> PathBuf {
    let stem = table
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_default();
    table.with_file_name(format!("{stem}.diagnostics.json"))
}

/// Writes the table to `path` (stdout when `None`) and the diagnostics to the
/// sidecar file, or to stderr when writing to stdout.
pub fn write_outcome(outcome: &Outcome, output: &OutputConfig, path: Option<&Path>) -> Result<()> {
    let diagnostics = serde_json::to_string_pretty(&outcome.diagnostics)? + "\n";
    match path {
        Some(path) => {
            if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
                fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
            }
            let mut buf = Vec::new();
            outcome
                .table
                .write(&mut buf, output.format, output.precision)?;
            fs::write(path, buf).with_context(|| format!("writing {}", path.display()))?;
            let side = sidecar_path(path);
            fs::write(&side, diagnostics).with_context(|| format!("writing {}", side.display()))?;
        }
        None => {
            let stdout = std::io::stdout();
            let mut lock = stdout.lock();
            outcome
                .table
                .write(&mut lock, output.format, output.precision)?;
            lock.flush()?;
            eprint!("{diagnostics}");
        }
    }
    Ok(())
}

/// Loads, executes and writes a config file. `output` overrides the config's
/// output path; relative config paths resolve against the config directory.
pub fn run_file(config_path: &Path, output: Option<&Path>, dim_only: bool) -> Result<Status> {
    let text = fs::read_to_string(config_path)
        .with_context(|| format!("reading {}", config_path.display()))?;
    let mut config = crate::config::parse_config(&text)
        .with_context(|| format!("parsing {}", config_path.display()))?;
    if dim_only {
        config.command = CommandConfig::Dim;
    }
    let target = match output {
        Some(p) => Some(p.to_path_buf()),
        None => config.output.path.as_ref().map(|p| {
            if p.is_relative() {
                config_path.parent().unwrap_or(Path::new(".")).join(p)
            } else {
                p.clone()
            }
        }),
    };
    let outcome = execute(&config)?;
    write_outcome(&outcome, &config.output, target.as_deref())?;
    Ok(outcome.status)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::config::parse_config;
    use crate::table::Cell;

    #[test]
    fn five_point_sweep_is_sorted() {
        let c = parse_config(
            r#"{"system": {"kind": "linear", "ratios": [0.5, 0.5]},
                "potential": {"kind": "first_symbol", "values": [1, 0]},
                "command": {"kind": "spectrum", "alphas": [0.9, 0.5, 0.1, 0.7, 0.3]},
                "solver": {"n": 10, "rho": 0.1}}"#,
        )
        .unwrap();
        let out = execute(&c).unwrap();
        assert_eq!(out.table.rows.len(), 5);
        let alphas: Vec<_> = out.table.rows.iter().map(|r| r[0].clone()).collect();
        assert_eq!(alphas, [0.1, 0.3, 0.5, 0.7, 0.9].map(Cell::from).to_vec());
        assert_eq!(out.status, Status::Complete);
    }

    #[test]
    fn infeasible_single_alpha_is_partial() {
        let c = parse_config(
            r#"{"system": {"kind": "linear", "ratios": [0.5, 0.5]},
                "potential": {"kind": "first_symbol", "values": [1, 0]},
                "command": {"kind": "single", "alpha": 1.5},
                "solver": {"n": 6}}"#,
        )
        .unwrap();
        let out = execute(&c).unwrap();
        assert_eq!(out.status.exit_code(), 2);
        match &out.table.rows[0][9] {
            Cell::Text(e) => assert!(e.contains("infeasible") && e.contains("[0, 1]"), "{e}"),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn default_schedule_overruns_horizon_once() {
        let k = default_k(100);
        let total: usize = k.iter().map(|&i| i * (1 + i)).sum();
        assert!(total > 100);
        assert!(total - k.last().unwrap() * (1 + k.last().unwrap()) <= 100);
    }

    #[test]
    fn sidecar_sits_next_to_table() {
        assert_eq!(
            sidecar_path(Path::new("out/spec.csv")),
            PathBuf::from("out/spec.diagnostics.json")
        );
    }
}
