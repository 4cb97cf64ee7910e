//! Acceptance criteria. Runs without the libtest harness so that every
//! criterion prints its PASS/FAIL line regardless of output capture.

use std::path::{Path, PathBuf};
use std::process::Command;
use std::time::{Duration, Instant};

use mfspec_core::geometry::{lemma1_gap, GeometricPotential, SamplingPlan};
use mfspec_core::oracle::{
    besicovitch_spectrum, brute_force_ratio, markov_block_entropy_exact, similarity_dimension,
    BesicovitchSpec,
};
use mfspec_core::spectrum::{
    alternating_sampler, full_spectrum, moran_dimension, BlockSource, DepthContext, SamplerConfig,
};
use mfspec_core::symbolic::{
    abramov_stats, block_marginal, shannon_entropy, vector_entropy, Alphabet, BlockMeasure,
    FirstSymbolFunction, WordFunction,
};
use mfspec_core::{IfsSystemF64, MarkovChainF64, PotentialF64, SolverOptionsF64};

const CAP: usize = 1 << 24;

struct Verdict {
    pass: bool,
    detail: String,
}

fn verdict(pass: bool, detail: impl Into<String>) -> Verdict {
    Verdict {
        pass,
        detail: detail.into(),
    }
}

fn coin() -> (IfsSystemF64, PotentialF64) {
    (
        IfsSystemF64::linear(&[0.5, 0.5]).unwrap(),
        PotentialF64::FirstSymbol(vec![1.0, 0.0]),
    )
}

fn besicovitch_agreement() -> Verdict {
    const LOWER_TOL: f64 = 0.02;
    const UPPER_TOL: f64 = 0.08;
    let start = Instant::now();
    let (sys, pot) = coin();
    let spec = BesicovitchSpec::new(0.5, vec![1.0, 0.0]).unwrap();
    let options = SolverOptionsF64 {
        rho: Some(0.05),
        ..SolverOptionsF64::with_depth(14)
    };
    let ctx = DepthContext::new(&sys, &pot, &options).unwrap();
    let mut pass = true;
    let mut parts = Vec::new();
    for (alpha, published) in [(0.2, 0.7219), (0.3, 0.8813), (0.5, 1.0)] {
        let exact = besicovitch_spectrum(&spec, alpha).unwrap();
        let lower = ctx.lower_bound(alpha).unwrap().dim;
        let upper = ctx.upper_bound(alpha).unwrap().dim;
        let ok_lower = (lower - exact).abs() <= LOWER_TOL;
        let ok_upper = (upper - exact).abs() <= UPPER_TOL;
        pass &= ok_lower && ok_upper && (exact - published).abs() < 5e-5;
        parts.push(format!(
            "a={alpha}: closed={exact:.6} lower={lower:.6}{} upper={upper:.6}{}",
            if ok_lower { "" } else { "(!)" },
            if ok_upper { "" } else { "(!)" },
        ));
    }
    let elapsed = start.elapsed();
    pass &= elapsed <= Duration::from_secs(30);
    verdict(pass, format!("{} [{elapsed:.2?}]", parts.join("; ")))
}

fn moran_exactness() -> Verdict {
    let start = Instant::now();
    let ratios = [0.5, 1.0 / 3.0];
    let sys = IfsSystemF64::linear(&ratios).unwrap();
    let reference = similarity_dimension(&ratios);
    let s: Vec<f64> = [4, 8, 12]
        .iter()
        .map(|&n| moran_dimension(&sys, n, None, 1e-12, CAP).unwrap())
        .collect();
    let spread = s.iter().fold(f64::NEG_INFINITY, |a, &b| a.max(b))
        - s.iter().fold(f64::INFINITY, |a, &b| a.min(b));
    let off = s.iter().map(|x| (x - reference).abs()).fold(0.0, f64::max);
    let tiling = IfsSystemF64::linear(&[0.5, 0.5]).unwrap();
    let t: Vec<f64> = [4, 8, 12]
        .iter()
        .map(|&n| moran_dimension(&tiling, n, None, 1e-12, CAP).unwrap())
        .collect();
    let t_off = t.iter().map(|x| (x - 1.0).abs()).fold(0.0, f64::max);
    let elapsed = start.elapsed();
    let pass = spread <= 1e-9 && off <= 1e-6 && t_off <= 1e-9 && elapsed <= Duration::from_secs(5);
    verdict(
        pass,
        format!(
            "s_n={:.12} spread={spread:.1e} |s-root|={off:.1e} (root {reference:.6}); tiling |s-1|={t_off:.1e} [{elapsed:.2?}]",
            s[0]
        ),
    )
}

fn lemma1_gap_decrease() -> Verdict {
    let start = Instant::now();
    let mp = IfsSystemF64::manneville_pomeau(0.5).unwrap();
    let gaps: Vec<f64> = [4, 8, 16]
        .iter()
        .map(|&n| lemma1_gap(&mp, n, SamplingPlan::Exhaustive, CAP).unwrap())
        .collect();
    let linear = [vec![0.5, 0.5], vec![0.5, 1.0 / 3.0], vec![0.2, 0.3, 0.4]];
    let mut linear_max: f64 = 0.0;
    for ratios in &linear {
        let sys = IfsSystemF64::linear(ratios).unwrap();
        for n in [4, 8, 12] {
            linear_max =
                linear_max.max(lemma1_gap(&sys, n, SamplingPlan::Exhaustive, CAP).unwrap());
        }
    }
    let elapsed = start.elapsed();
    let pass = gaps[2] < gaps[1]
        && gaps[1] < gaps[0]
        && linear_max <= 1e-12
        && elapsed <= Duration::from_secs(60);
    verdict(
        pass,
        format!(
            "MP gap(4,8,16)=({:.6}, {:.6}, {:.6}); max linear gap {linear_max:.1e} [{elapsed:.2?}]",
            gaps[0], gaps[1], gaps[2]
        ),
    )
}

fn abramov_identities() -> Verdict {
    let cases = [
        (vec![0.5, 1.0 / 3.0], vec![0.3, 0.7], vec![1.0, -2.0]),
        (
            vec![0.2, 0.3, 0.4],
            vec![0.5, 0.2, 0.3],
            vec![0.0, 1.0, 4.0],
        ),
    ];
    let mut worst: f64 = 0.0;
    for (ratios, q, c) in &cases {
        let sys = IfsSystemF64::linear(ratios).unwrap();
        let g = GeometricPotential::new(&sys);
        let f = FirstSymbolFunction { values: c.clone() };
        let h1 = vector_entropy(q);
        let lyap1: f64 = q.iter().zip(ratios).map(|(p, r)| -p * r.ln()).sum();
        let f1: f64 = q.iter().zip(c).map(|(p, v)| p * v).sum();
        for n in [2, 4, 8] {
            let nu = BlockMeasure::product(Alphabet::new(q.len()).unwrap(), q, n, CAP).unwrap();
            let fs: [&dyn WordFunction<f64>; 2] = [&g, &f];
            let stats = abramov_stats(&nu, &fs);
            worst = worst
                .max((stats.entropy_rate - h1).abs())
                .max((stats.averages[0] - lyap1).abs())
                .max((stats.averages[1] - f1).abs());
        }
    }
    verdict(
        worst <= 1e-12,
        format!("max deviation {worst:.1e} over n in {{2,4,8}}"),
    )
}

fn markov_block_convergence() -> Verdict {
    let chain = MarkovChainF64::new(
        vec![vec![0.9, 0.1], vec![0.2, 0.8]],
        vec![2.0 / 3.0, 1.0 / 3.0],
        true,
    )
    .unwrap();
    let h = markov_block_entropy_exact(&chain, 1).unwrap().rate;
    let hp = vector_entropy(&[2.0 / 3.0, 1.0 / 3.0]);
    let mut worst: f64 = 0.0;
    for n in 1..=12 {
        let nu = block_marginal(&chain, n, CAP).unwrap();
        let enumerated = shannon_entropy(&nu) / n as f64;
        let predicted = h + (hp - h) / n as f64;
        worst = worst.max((enumerated - predicted).abs());
    }
    let pass = worst <= 1e-10 && (h - 0.383523).abs() < 5e-7;
    verdict(
        pass,
        format!("h={h:.6} nats; max |H_n/n - (h + (H(p)-h)/n)| = {worst:.1e} for n<=12"),
    )
}

fn brute_force_equivalence() -> Verdict {
    let systems = [
        IfsSystemF64::linear(&[0.5, 0.5]).unwrap(),
        IfsSystemF64::linear(&[0.5, 1.0 / 3.0]).unwrap(),
        IfsSystemF64::example2().unwrap(),
        IfsSystemF64::manneville_pomeau(0.5).unwrap(),
    ];
    let potentials = [
        PotentialF64::FirstSymbol(vec![1.0, 0.0]),
        PotentialF64::Coordinate,
    ];
    let mut worst_gap = f64::NEG_INFINITY;
    let mut worst_residual: f64 = 0.0;
    let mut count = 0;
    for sys in &systems {
        for pot in &potentials {
            let options = SolverOptionsF64 {
                delta: Some(0.0),
                ..SolverOptionsF64::with_depth(2)
            };
            let ctx = DepthContext::new(sys, pot, &options).unwrap();
            let (lo, hi) = ctx.achievable_range().unwrap();
            for frac in [0.1, 0.3, 0.5, 0.7, 0.9] {
                let alpha = lo + frac * (hi - lo);
                let lb = ctx.lower_bound(alpha).unwrap();
                let bf = brute_force_ratio(sys, pot, alpha, 2, 0.01).unwrap();
                worst_gap = worst_gap.max(bf - lb.dim);
                worst_residual = worst_residual.max(lb.gibbs_residual(&ctx));
                count += 1;
            }
        }
    }
    let pass = worst_gap <= 0.01 && worst_residual <= 1e-8;
    verdict(
        pass,
        format!("{count} instances; max(brute - lower)={worst_gap:.1e}; max Gibbs residual {worst_residual:.1e}"),
    )
}

fn parabolic_dispatch() -> Verdict {
    let options = SolverOptionsF64::with_depth(10);
    let e2 = IfsSystemF64::example2().unwrap();
    let grid: Vec<f64> = (0..=10).map(|k| k as f64 / 10.0).collect();
    let attractor = moran_dimension(&e2, 10, None, options.moran_tol, CAP).unwrap();
    let points = full_spectrum(&e2, &PotentialF64::Coordinate, &grid, &options).unwrap();
    let e2_ok = points.iter().all(|p| {
        p.in_parabolic_interval && p.lower == Some(attractor) && p.upper == Some(attractor)
    });

    let mp = IfsSystemF64::manneville_pomeau(0.5).unwrap();
    let mp_grid = [0.0, 0.1, 0.2, 0.3, 0.4, 0.5];
    let points = full_spectrum(&mp, &PotentialF64::Coordinate, &mp_grid, &options).unwrap();
    let flagged: Vec<f64> = points
        .iter()
        .filter(|p| p.in_parabolic_interval)
        .map(|p| p.alpha)
        .collect();
    let mp_ok = flagged == [0.0];
    verdict(
        e2_ok && mp_ok,
        format!(
            "two-parabola system: {}/11 flagged at attractor estimate {attractor:.6}; MP flagged {flagged:?}",
            if e2_ok { 11 } else { 0 }
        ),
    )
}

fn parabolic_slow_convergence() -> Verdict {
    let e2 = IfsSystemF64::example2().unwrap();
    let s: Vec<f64> = [6, 10, 14]
        .iter()
        .map(|&n| moran_dimension(&e2, n, None, 1e-10, CAP).unwrap())
        .collect();
    let pass = s[1] >= s[0] - 1e-9 && s[2] >= s[1] - 1e-9 && s[2] >= 0.75;
    verdict(
        pass,
        format!("s_6={:.10} s_10={:.10} s_14={:.10}", s[0], s[1], s[2]),
    )
}

fn sampler_convergence() -> Verdict {
    let mp = IfsSystemF64::manneville_pomeau(0.5).unwrap();
    let chain = MarkovChainF64::new(
        vec![vec![0.3, 0.7], vec![0.4, 0.6]],
        vec![4.0 / 11.0, 7.0 / 11.0],
        true,
    )
    .unwrap();
    let stages = 400;
    let config = SamplerConfig {
        parabolic_symbol: 0,
        k_schedule: (1..=stages).collect(),
        eps_schedule: (1..=stages).map(|i| 1.0 / (i * i) as f64).collect(),
        horizon: 100_000,
        seed: 11,
    };
    let cps = alternating_sampler(
        &mp,
        &PotentialF64::Coordinate,
        &BlockSource::Markov(chain),
        &config,
    )
    .unwrap();
    let f0 = 0.0;
    let tail = &cps[cps.len().saturating_sub(3)..];
    let f_gap: Vec<f64> = tail.iter().map(|c| (c.average_f - f0).abs()).collect();
    let g: Vec<f64> = tail.iter().map(|c| c.average_g).collect();
    let pass =
        tail.len() == 3 && f_gap[0] > f_gap[1] && f_gap[1] > f_gap[2] && g[0] > g[1] && g[1] > g[2];
    verdict(
        pass,
        format!(
            "n_q={:?} |A f - F(0)|={:.6?} A g={:.6?}",
            tail.iter().map(|c| c.n).collect::<Vec<_>>(),
            f_gap,
            g
        ),
    )
}

fn configs_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("configs")
}

fn run_binary(
    config: &Path,
    output: &Path,
    threads: Option<&str>,
) -> (Option<i32>, Vec<u8>, Vec<u8>) {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_mfspec"));
    cmd.arg("run").arg(config).arg("--output").arg(output);
    if let Some(t) = threads {
        cmd.env("MFSPEC_THREADS", t);
    }
    let status = cmd.status().expect("spawn mfspec");
    let table = std::fs::read(output).unwrap_or_default();
    let sidecar = std::fs::read(mfspec_cli::run::sidecar_path(output)).unwrap_or_default();
    (status.code(), table, sidecar)
}

fn determinism() -> Verdict {
    let dir = tempfile::tempdir().unwrap();
    let mut configs: Vec<PathBuf> = std::fs::read_dir(configs_dir())
        .unwrap()
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.extension().is_some_and(|x| x == "json"))
        .collect();
    configs.sort();
    let mut mismatches = Vec::new();
    for config in &configs {
        let name = config.file_stem().unwrap().to_string_lossy().into_owned();
        let runs: Vec<_> = [None, None, Some("1")]
            .iter()
            .enumerate()
            .map(|(i, threads)| {
                run_binary(
                    config,
                    &dir.path().join(format!("{name}.{i}.out")),
                    *threads,
                )
            })
            .collect();
        let ok = runs[0].0 == Some(0)
            && !runs[0].1.is_empty()
            && runs
                .iter()
                .all(|r| r.0 == runs[0].0 && r.1 == runs[0].1 && r.2 == runs[0].2);
        if !ok {
            mismatches.push(name);
        }
    }
    verdict(
        mismatches.is_empty(),
        format!(
            "{} configs, 3 runs each (one single-threaded); mismatched: {mismatches:?}",
            configs.len()
        ),
    )
}

type Criterion = (&'static str, fn() -> Verdict);

fn main() {
    let criteria: [Criterion; 10] = [
        ("Besicovitch-Eggleston agreement", besicovitch_agreement),
        ("Moran exactness", moran_exactness),
        ("cylinder gap decrease", lemma1_gap_decrease),
        ("Abramov identities", abramov_identities),
        ("Markov block entropy convergence", markov_block_convergence),
        ("Brute-force equivalence", brute_force_equivalence),
        ("Parabolic dispatch", parabolic_dispatch),
        ("Parabolic slow convergence", parabolic_slow_convergence),
        ("Alternating sampler", sampler_convergence),
        ("Determinism", determinism),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let v = check();
        failed += usize::from(!v.pass);
        println!(
            "{} [{}] {name}: {}",
            if v.pass { "PASS" } else { "FAIL" },
            i + 1,
            v.detail
        );
    }
    println!(
        "acceptance: {} passed, {failed} failed",
        criteria.len() - failed
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
