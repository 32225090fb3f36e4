//! The four subcommands.

use hamcycle_qaoa::graph::Assignment;
use hamcycle_qaoa::hamiltonian::SpectrumReport;
use hamcycle_qaoa::ising::TermListFile;
use hamcycle_qaoa::optimizer::resample_optimized;
use hamcycle_qaoa::{
    qaoa_solve, DiagonalHamiltonian, Distribution, ExactIsing, NoiseModel, OptimizerConfig,
    Rational64, SolveOptions, SolveReport,
};
use serde::Serialize;

use crate::error::CliError;
use crate::input::{load_model, term_list};
use crate::output::{
    csv_writer, write_distribution_csv, write_json, write_trace_csv, ComparisonRecord, RunManifest,
    SolverRecord,
};
use crate::{Axis, Options};

/// Noise used by `compare --axis noise` when `--noise` is absent.
const DEFAULT_COMPARE_NOISE: NoiseModel = NoiseModel {
    p1: 0.001,
    p2: 0.01,
    readout: 0.01,
};

pub fn compile(command: &'static str, opts: &Options) -> Result<(), CliError> {
    if opts.graph.is_none() {
        return Err(CliError::input("compile needs --graph"));
    }
    let loaded = load_model(opts, true)?;
    let manifest = RunManifest::new(command, loaded.input, loaded.normalization);
    let file = TermListFile {
        manifest: Some(serde_json::to_value(&manifest)?),
        ..term_list(&loaded.model).to_file()
    };
    eprintln!(
        "{} qubits, {} terms{}",
        loaded.model.num_qubits(),
        file.terms.len(),
        file.constant
            .map(|c| format!(", constant {c}"))
            .unwrap_or_default()
    );
    write_json(&file, opts.out.as_deref())
}

#[derive(Serialize)]
struct SpectrumOutput {
    manifest: RunManifest,
    spectrum: SpectrumReport,
}

pub fn spectrum(command: &'static str, opts: &Options) -> Result<(), CliError> {
    let loaded = load_model(opts, false)?;
    let spectrum = DiagonalHamiltonian::from_ising(&loaded.model).full_spectrum()?;
    let report = spectrum.report();
    eprintln!(
        "ground energy {} at {}; gap {}",
        spectrum.ground_energy(),
        report.ground_states.join(" "),
        spectrum
            .gap()
            .map(|g| g.to_string())
            .unwrap_or_else(|| "none".into())
    );
    if let Some(path) = &opts.csv {
        let mut w = csv_writer(path)?;
        w.write_record(["energy", "bitstring"])?;
        for level in &report.levels {
            for s in &level.states {
                w.serialize((level.energy, s))?;
            }
        }
        w.flush()?;
    }
    let out = SpectrumOutput {
        manifest: RunManifest::new(command, loaded.input, loaded.normalization),
        spectrum: report,
    };
    write_json(&out, opts.out.as_deref())
}

fn solve_options(opts: &Options, seed: u64) -> SolveOptions {
    SolveOptions {
        layers: opts.p,
        mixer: opts.mixer,
        noise: opts.noise,
        shots: opts.shots,
        sampled_objective: opts.sampled_objective,
        optimizer: OptimizerConfig {
            seed,
            restarts: opts.restarts,
            max_evals: opts.max_evals,
            ..Default::default()
        },
    }
}

#[derive(Serialize)]
struct Outcome {
    bitstring: String,
    count: u64,
    probability: f64,
}

fn top_outcomes(d: &Distribution, k: usize) -> Vec<Outcome> {
    d.most_probable(k)
        .into_iter()
        .map(|(s, c)| Outcome {
            bitstring: s.to_string(),
            count: c,
            probability: d.probability(s),
        })
        .collect()
}

#[derive(Serialize)]
struct SolveSummary {
    ground_energy: f64,
    ground_states: Vec<String>,
    ground_state_mass: f64,
    exact_ground_mass: f64,
    expectation_final: f64,
    top_outcomes: Vec<Outcome>,
}

impl SolveSummary {
    fn new(r: &SolveReport) -> Self {
        let k = r.spectrum_reference.ground_states.len().max(2);
        SolveSummary {
            ground_energy: r.spectrum_reference.ground_energy,
            ground_states: r.spectrum_reference.ground_states.clone(),
            ground_state_mass: r.ground_state_mass,
            exact_ground_mass: r.exact_ground_mass,
            expectation_final: r.expectation_final,
            top_outcomes: top_outcomes(&r.final_distribution, k),
        }
    }
}

#[derive(Serialize)]
struct SolveOutput {
    manifest: RunManifest,
    summary: SolveSummary,
    report: SolveReport,
}

pub fn solve(command: &'static str, opts: &Options) -> Result<(), CliError> {
    let loaded = load_model(opts, false)?;
    let so = solve_options(opts, opts.seed);
    let report = qaoa_solve::<_, f64>(&loaded.model, &so)?;
    eprintln!(
        "ground-state mass {:.4}, <H> = {:.6} after {} evaluations",
        report.ground_state_mass, report.expectation_final, report.optimization.evals_used
    );
    if let Some(path) = &opts.csv {
        write_distribution_csv(&report.final_distribution, path)?;
    }
    if let Some(path) = &opts.trace_csv {
        write_trace_csv(&report.optimization.trace, path)?;
    }
    let mut manifest = RunManifest::new(command, loaded.input, loaded.normalization);
    manifest.solver = Some(SolverRecord::from(&so));
    let out = SolveOutput {
        manifest,
        summary: SolveSummary::new(&report),
        report,
    };
    write_json(&out, opts.out.as_deref())
}

/// One side of a paired run.
#[derive(Serialize)]
struct Side {
    label: String,
    ground_state_mass: f64,
    mean_energy: f64,
    best_params: Vec<f64>,
    top_outcomes: Vec<Outcome>,
    #[serde(skip)]
    distribution: Distribution,
}

impl Side {
    fn from_report(label: &str, r: &SolveReport) -> Self {
        Side {
            label: label.to_string(),
            ground_state_mass: r.ground_state_mass,
            mean_energy: r.expectation_final,
            best_params: r.optimization.best_params.clone(),
            top_outcomes: top_outcomes(&r.final_distribution, 4),
            distribution: r.final_distribution.clone(),
        }
    }
}

#[derive(Serialize)]
struct Pair {
    seed: u64,
    a: Side,
    b: Side,
}

#[derive(Serialize)]
struct CompareSummary {
    mean_mass_a: f64,
    mean_mass_b: f64,
    /// Runs in which side `a` has the larger ground-state mass.
    a_higher: usize,
    b_higher: usize,
    ties: usize,
}

#[derive(Serialize)]
struct CompareOutput {
    manifest: RunManifest,
    summary: CompareSummary,
    pairs: Vec<Pair>,
}

/// Sampled mean energy of a distribution under the exact model.
fn mean_energy(m: &ExactIsing, d: &Distribution) -> Result<f64, CliError> {
    let h = DiagonalHamiltonian::from_ising(m);
    let mut total = Rational64::from_integer(0);
    for (s, &c) in d.counts() {
        total += h.energy_of(&Assignment::parse(s)?)? * Rational64::from_integer(c as i64);
    }
    let shots = d.shots().max(1) as f64;
    Ok((*total.numer() as f64 / *total.denom() as f64) / shots)
}

pub fn compare(command: &'static str, opts: &Options) -> Result<(), CliError> {
    let axis = opts
        .axis
        .ok_or_else(|| CliError::input("compare needs --axis mixer or --axis noise"))?;
    if opts.mixers.len() != 2 {
        return Err(CliError::input(
            "--mixers takes exactly two values, e.g. rx,ry",
        ));
    }
    let loaded = load_model(opts, false)?;
    let m = &loaded.model;
    let seeds: Vec<u64> = (0..opts.runs).map(|r| opts.seed.wrapping_add(r)).collect();
    let noise = opts.noise.unwrap_or(DEFAULT_COMPARE_NOISE);

    let (labels, record_noise) = match axis {
        Axis::Mixer => (
            [opts.mixers[0].to_string(), opts.mixers[1].to_string()],
            opts.noise.map(|n| n.to_string()),
        ),
        Axis::Noise => (
            ["noiseless".to_string(), noise.to_string()],
            Some(noise.to_string()),
        ),
    };

    let mut pairs = Vec::with_capacity(seeds.len());
    for &seed in &seeds {
        let base = solve_options(opts, seed);
        let (a, b) = match axis {
            Axis::Mixer => {
                let run = |mixer| {
                    qaoa_solve::<_, f64>(
                        m,
                        &SolveOptions {
                            mixer,
                            ..base.clone()
                        },
                    )
                };
                let ra = run(opts.mixers[0])?;
                let rb = run(opts.mixers[1])?;
                (
                    Side::from_report(&labels[0], &ra),
                    Side::from_report(&labels[1], &rb),
                )
            }
            Axis::Noise => {
                let clean_opts = SolveOptions {
                    noise: None,
                    ..base.clone()
                };
                let clean = qaoa_solve::<_, f64>(m, &clean_opts)?;
                let a = Side::from_report(&labels[0], &clean);
                let b = if opts.reoptimize {
                    let noisy = qaoa_solve::<_, f64>(
                        m,
                        &SolveOptions {
                            noise: Some(noise),
                            ..base.clone()
                        },
                    )?;
                    Side::from_report(&labels[1], &noisy)
                } else {
                    let dist = resample_optimized::<_, f64>(m, &clean_opts, &clean, &noise, seed)?;
                    Side {
                        label: labels[1].clone(),
                        ground_state_mass: dist.mass(&clean.spectrum_reference.ground_states),
                        mean_energy: mean_energy(m, &dist)?,
                        best_params: clean.optimization.best_params.clone(),
                        top_outcomes: top_outcomes(&dist, 4),
                        distribution: dist,
                    }
                };
                (a, b)
            }
        };
        eprintln!(
            "seed {seed}: {} {:.4} vs {} {:.4}",
            a.label, a.ground_state_mass, b.label, b.ground_state_mass
        );
        pairs.push(Pair { seed, a, b });
    }

    if let Some(path) = &opts.csv {
        let mut w = csv_writer(path)?;
        w.write_record(["seed", "label", "bitstring", "count", "probability"])?;
        for pair in &pairs {
            for side in [&pair.a, &pair.b] {
                for (s, c, p) in side.distribution.rows() {
                    w.serialize((pair.seed, &side.label, s, c, p))?;
                }
            }
        }
        w.flush()?;
    }

    let runs = pairs.len().max(1) as f64;
    let summary = CompareSummary {
        mean_mass_a: pairs.iter().map(|p| p.a.ground_state_mass).sum::<f64>() / runs,
        mean_mass_b: pairs.iter().map(|p| p.b.ground_state_mass).sum::<f64>() / runs,
        a_higher: pairs
            .iter()
            .filter(|p| p.a.ground_state_mass > p.b.ground_state_mass)
            .count(),
        b_higher: pairs
            .iter()
            .filter(|p| p.a.ground_state_mass < p.b.ground_state_mass)
            .count(),
        ties: pairs
            .iter()
            .filter(|p| p.a.ground_state_mass == p.b.ground_state_mass)
            .count(),
    };

    let mut manifest = RunManifest::new(command, loaded.input, loaded.normalization);
    let mut solver = SolverRecord::from(&solve_options(opts, opts.seed));
    solver.noise = None;
    manifest.solver = Some(solver);
    manifest.comparison = Some(ComparisonRecord {
        axis,
        labels,
        seeds,
        noise: record_noise,
        reoptimize: (axis == Axis::Noise).then_some(opts.reoptimize),
    });
    write_json(
        &CompareOutput {
            manifest,
            summary,
            pairs,
        },
        opts.out.as_deref(),
    )
}
