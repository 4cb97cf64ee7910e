//! Built-in comparisons against the independent references in
//! `mfspec_core::oracle`.

use anyhow::Result;
use mfspec_core::geometry::{lemma1_gap, SamplingPlan};
use mfspec_core::oracle::{
    besicovitch_spectrum, markov_block_entropy_exact, similarity_dimension, BesicovitchSpec,
};
use mfspec_core::spectrum::{moran_dimension, DepthContext};
use mfspec_core::symbolic::{block_marginal, shannon_entropy};
use mfspec_core::{IfsSystemF64, MarkovChainF64, PotentialF64, SolverOptionsF64};
use serde_json::json;

use crate::config::Suite;
use crate::run::{Outcome, Status};
use crate::table::Table;

const CAP: usize = 1 << 24;

pub fn run_suite(suite: Suite, n: Option<usize>) -> Result<Outcome> {
    match suite {
        Suite::Besicovitch => besicovitch(n.unwrap_or(14)),
        Suite::Moran => moran(n.map_or_else(|| vec![4, 8, 12], |n| vec![n])),
        Suite::Markov => markov(n.unwrap_or(12)),
        Suite::Lemma1 => lemma1(n.map_or_else(|| vec![4, 8, 12, 16], |n| vec![n])),
    }
}

fn finish(table: Table, suite: &str, failures: usize) -> Outcome {
    Outcome {
        table,
        diagnostics: json!({ "command": "validate", "suite": suite, "failed_rows": failures }),
        status: if failures == 0 {
            Status::Complete
        } else {
            Status::Partial
        },
    }
}

fn besicovitch(n: usize) -> Result<Outcome> {
    let sys = IfsSystemF64::linear(&[0.5, 0.5])?;
    let potential = PotentialF64::FirstSymbol(vec![1.0, 0.0]);
    let spec = BesicovitchSpec::new(0.5, vec![1.0, 0.0])?;
    let options = SolverOptionsF64 {
        rho: Some(0.05),
        ..SolverOptionsF64::with_depth(n)
    };
    let ctx = DepthContext::new(&sys, &potential, &options)?;
    let mut table = Table::new(vec![
        "alpha",
        "lower",
        "upper",
        "closed_form",
        "lower_error",
        "upper_error",
        "error",
    ]);
    let mut failures = 0;
    for k in 1..10 {
        let alpha = k as f64 / 10.0;
        let exact = besicovitch_spectrum(&spec, alpha)?;
        let lower = ctx.lower_bound(alpha);
        let upper = ctx.upper_bound(alpha);
        let error = lower
            .as_ref()
            .err()
            .or(upper.as_ref().err())
            .map(|e| e.to_string())
            .unwrap_or_default();
        failures += usize::from(!error.is_empty());
        let lower = lower.ok().map(|l| l.dim);
        let upper = upper.ok().map(|u| u.dim);
        table.push(vec![
            alpha.into(),
            lower.into(),
            upper.into(),
            exact.into(),
            lower.map(|l| (l - exact).abs()).into(),
            upper.map(|u| (u - exact).abs()).into(),
            error.into(),
        ]);
    }
    Ok(finish(table, "besicovitch", failures))
}

fn moran(depths: Vec<usize>) -> Result<Outcome> {
    let cases: [(&str, Vec<f64>); 2] = [
        ("linear(1/2,1/3)", vec![0.5, 1.0 / 3.0]),
        ("linear(1/2,1/2)", vec![0.5, 0.5]),
    ];
    let mut table = Table::new(vec!["system", "n", "dimension", "reference", "abs_error"]);
    for (name, ratios) in cases {
        let sys = IfsSystemF64::linear(&ratios)?;
        let reference = similarity_dimension(&ratios);
        for &n in &depths {
            let s = moran_dimension(&sys, n, None, 1e-12, CAP)?;
            table.push(vec![
                name.into(),
                n.into(),
                s.into(),
                reference.into(),
                (s - reference).abs().into(),
            ]);
        }
    }
    Ok(finish(table, "moran", 0))
}

fn markov(max_n: usize) -> Result<Outcome> {
    let chain = MarkovChainF64::new(
        vec![vec![0.9, 0.1], vec![0.2, 0.8]],
        vec![2.0 / 3.0, 1.0 / 3.0],
        true,
    )?;
    let mut table = Table::new(vec![
        "n",
        "enumerated_rate",
        "exact_rate",
        "entropy_rate",
        "abs_error",
    ]);
    for n in 1..=max_n {
        let nu = block_marginal(&chain, n, CAP)?;
        let enumerated = shannon_entropy(&nu) / n as f64;
        let exact = markov_block_entropy_exact(&chain, n)?;
        let exact_rate = exact.block_entropy / n as f64;
        table.push(vec![
            n.into(),
            enumerated.into(),
            exact_rate.into(),
            exact.rate.into(),
            (enumerated - exact_rate).abs().into(),
        ]);
    }
    Ok(finish(table, "markov", 0))
}

fn lemma1(depths: Vec<usize>) -> Result<Outcome> {
    let systems = [
        IfsSystemF64::linear(&[0.5, 1.0 / 3.0])?,
        IfsSystemF64::example2()?,
        IfsSystemF64::manneville_pomeau(0.5)?,
    ];
    let mut table = Table::new(vec!["system", "n", "gap"]);
    for sys in &systems {
        for &n in &depths {
            let gap = lemma1_gap(sys, n, SamplingPlan::Exhaustive, CAP)?;
            table.push(vec![sys.name().into(), n.into(), gap.into()]);
        }
    }
    Ok(finish(table, "lemma1", 0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::table::Cell;

    #[test]
    fn markov_suite_agrees() {
        let out = run_suite(Suite::Markov, Some(6)).unwrap();
        assert_eq!(out.table.rows.len(), 6);
        for row in &out.table.rows {
            let Cell::Real(Some(err)) = row[4] else {
                panic!()
            };
            assert!(err < 1e-10);
        }
    }

    #[test]
    fn moran_suite_single_depth() {
        let out = run_suite(Suite::Moran, Some(5)).unwrap();
        assert_eq!(out.table.rows.len(), 2);
    }
}
