//! Experiment dispatch: one table (or two) per experiment, a manifest and a
//! gnuplot script.

use std::fs;
use std::path::{Path, PathBuf};
use std::time::Instant;

use imethod_core::estimates::{
    check_geometry_5_19, check_lemma_5_4, check_lemma_5_9, conservation_sweep, pointwise_gap_sweep,
    sample_rng, smoothing_profile, strichartz_ratio, BoundReport,
};
use imethod_core::exponents::{
    gwp_threshold, pair_between, pointwise_gap_exponent, section6_consistency, theorem51_budget,
    theta_of_q, Lebesgue, Tag,
};
use imethod_core::multilinear::{increment_integrands, ResonanceSpec};
use imethod_core::nls::{duhamel_split, energy, energy_i, evolve, mass};
use imethod_core::spectral::data::{gaussian, random_bandlimited};
use imethod_core::spectral::{apply_multiplier, gradient_norm, lebesgue_norm};
use imethod_core::{Field, MultiplierSpec, Rational};
use num_complex::Complex64;

use crate::config::{DataSpec, Experiment, ExperimentConfig};
use crate::error::LabError;
use crate::output::{real, slope_cell, Table};

/// What a finished run produced.
#[derive(Debug, Clone)]
pub struct RunOutput {
    pub files: Vec<PathBuf>,
    /// Checked properties that failed; the artifacts are still written.
    pub failures: Vec<String>,
}

pub fn initial_data(cfg: &ExperimentConfig) -> Field {
    let grid = cfg.grid();
    match cfg.data {
        DataSpec::Gaussian { amplitude, width } => gaussian(grid, amplitude, width),
        DataSpec::PlaneWave { mode, amplitude } => {
            Field::plane_wave(grid, mode, Complex64::new(amplitude, 0.0))
        }
        DataSpec::RandomBandlimited { cutoff, amplitude } => {
            random_bandlimited(grid, cutoff, amplitude, &mut sample_rng(cfg.seed, 0))
        }
    }
}

fn resonance(cfg: &ExperimentConfig) -> Result<ResonanceSpec, LabError> {
    Ok(ResonanceSpec::with_exponent(
        cfg.n,
        cfg.s,
        cfg.theta0_exponent,
    )?)
}

fn bound_table(name: &str, reports: &[&BoundReport]) -> (Table, Table) {
    let mut main = Table::new(
        name,
        &[
            "quantity",
            "n_samples",
            "sup_ratio",
            "sup_base",
            "saturated",
        ],
    );
    let mut decades = Table::new(
        &format!("{name}_decades"),
        &["quantity", "decade", "count", "sup_ratio"],
    );
    for r in reports {
        main.row(vec![
            r.name.replace(',', ";"),
            r.n_samples.to_string(),
            real(r.sup_ratio),
            real(r.sup_base),
            r.saturated.to_string(),
        ]);
        for d in &r.decades {
            decades.row(vec![
                r.name.replace(',', ";"),
                d.decade.to_string(),
                d.count.to_string(),
                real(d.sup_ratio),
            ]);
        }
    }
    (main, decades)
}

fn check_bound(r: &BoundReport, failures: &mut Vec<String>) {
    if !r.is_finite() || !r.saturated {
        failures.push(format!("{r}"));
    }
}

fn exact(r: Rational) -> String {
    if *r.denom() == 1 {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

fn to_f64(r: Rational) -> f64 {
    *r.numer() as f64 / *r.denom() as f64
}

fn tables(cfg: &ExperimentConfig, failures: &mut Vec<String>) -> Result<Vec<Table>, LabError> {
    let u0 = initial_data(cfg);
    let mut out = Vec::new();
    match cfg.experiment {
        Experiment::Simulate => {
            let traj = evolve(&u0, &cfg.solver())?;
            let mut t = Table::new("simulate", &["t", "mass", "energy", "energy_I", "sup_abs"]);
            for (time, u) in traj.iter() {
                t.row(vec![
                    real(time),
                    real(mass(u)),
                    real(energy(u)),
                    real(energy_i(u, cfg.n, cfg.s)?),
                    real(u.sup_norm()),
                ]);
            }
            out.push(t);
        }
        Experiment::Decompose => {
            let traj = evolve(&u0, &cfg.solver())?;
            let d = duhamel_split(&traj, traj.first_time())?;
            let i = MultiplierSpec::i_operator(cfg.n, cfg.s)?;
            let mut t = Table::new(
                "decompose",
                &["t", "linear_l2", "nonlinear_l2", "grad_I_nonlinear_l2"],
            );
            for ((time, l), nl) in d.linear.iter().zip(d.nonlinear.states()) {
                let g = gradient_norm(&apply_multiplier(&nl.transform(), &i)?, 2.0)?;
                t.row(vec![
                    real(time),
                    real(lebesgue_norm(l, 2.0)?),
                    real(lebesgue_norm(nl, 2.0)?),
                    real(g),
                ]);
            }
            out.push(t);
        }
        Experiment::Energy => {
            let traj = evolve(&u0, &cfg.solver())?;
            let spec = resonance(cfg)?;
            let series = increment_integrands(&traj, &spec)?;
            let mut t = Table::new(
                "energy",
                &[
                    "t",
                    "energy_I",
                    "modified_energy",
                    "gap",
                    "quartic",
                    "sextic",
                ],
            );
            for (k, u) in traj.states().iter().enumerate() {
                let ei = energy_i(u, cfg.n, cfg.s)?;
                let me = series.modified_energy[k];
                t.row(vec![
                    real(series.times[k]),
                    real(ei),
                    real(me),
                    real(ei - me),
                    real(series.quartic[k]),
                    real(series.sextic[k]),
                ]);
            }
            t.trailer("increment_residual", real(series.residual()));
            out.push(t);
        }
        Experiment::SweepGap => {
            let r = pointwise_gap_sweep(&u0, cfg.s, &cfg.n_list, cfg.theta0_exponent)?;
            let mut t = Table::new("sweep_gap", &["N", "gap"]);
            for (p, v) in r.params.iter().zip(&r.values) {
                t.row(vec![real(*p), real(*v)]);
            }
            t.trailer("slope", slope_cell(r.slope()));
            t.trailer("residual", slope_cell(r.fit.map(|f| f.residual)));
            out.push(t);
        }
        Experiment::SweepConservation => {
            let r =
                conservation_sweep(&u0, cfg.s, &cfg.n_list, cfg.theta0_exponent, &cfg.solver())?;
            let mut t = Table::new(
                "sweep_conservation",
                &["N", "sup_tilde_increment", "sup_EI_increment"],
            );
            for k in 0..r.modified.params.len() {
                t.row(vec![
                    real(r.modified.params[k]),
                    real(r.modified.values[k]),
                    real(r.energy_i.values[k]),
                ]);
            }
            t.trailer(
                "slope",
                format!(
                    "sup_tilde_increment:{};sup_EI_increment:{}",
                    slope_cell(r.modified.slope()),
                    slope_cell(r.energy_i.slope())
                ),
            );
            t.trailer(
                "residual",
                format!(
                    "sup_tilde_increment:{};sup_EI_increment:{}",
                    slope_cell(r.modified.fit.map(|f| f.residual)),
                    slope_cell(r.energy_i.fit.map(|f| f.residual))
                ),
            );
            out.push(t);
        }
        Experiment::Smoothing => {
            let traj = evolve(&u0, &cfg.solver())?;
            let names: Vec<String> = cfg
                .pairs
                .iter()
                .map(|p| format!("q{}_r{}", p.q(), p.r()).replace('/', "over"))
                .collect();
            let mut header = vec!["N_j"];
            header.extend(names.iter().map(String::as_str));
            let mut t = Table::new("smoothing", &header);
            let reports = cfg
                .pairs
                .iter()
                .map(|p| smoothing_profile(&traj, cfg.n, cfg.s, &cfg.nj_list, *p))
                .collect::<Result<Vec<_>, _>>()?;
            for (k, nj) in cfg.nj_list.iter().enumerate() {
                let mut row = vec![real(*nj)];
                row.extend(reports.iter().map(|r| real(r.values[k])));
                t.row(row);
            }
            let cells: Vec<String> = names
                .iter()
                .zip(&reports)
                .map(|(n, r)| format!("{n}:{}", slope_cell(r.slope())))
                .collect();
            t.trailer("slope", cells.join(";"));
            out.push(t);
        }
        Experiment::CheckSymbols => {
            let spec = resonance(cfg)?;
            let a = check_lemma_5_4(&spec, cfg.samples, cfg.seed)?;
            let b = check_lemma_5_9(&spec, cfg.samples, cfg.seed)?;
            check_bound(&a, failures);
            check_bound(&b, failures);
            let (m, d) = bound_table("symbols", &[&a, &b]);
            out.extend([m, d]);
        }
        Experiment::CheckGeometry => {
            let spec = resonance(cfg)?;
            let g = check_geometry_5_19(&spec, cfg.samples, cfg.seed)?;
            check_bound(&g.outer, failures);
            check_bound(&g.inner, failures);
            if g.bound_violations > 0 {
                failures.push(format!(
                    "{} samples exceed the per-tuple bound",
                    g.bound_violations
                ));
            }
            let (mut m, d) = bound_table("geometry", &[&g.outer, &g.inner]);
            m.trailer("bound_violations", g.bound_violations.to_string());
            out.extend([m, d]);
        }
        Experiment::Strichartz => {
            let mut t = Table::new(
                "strichartz",
                &["q", "r", "n_samples", "sup_ratio", "sup_base", "saturated"],
            );
            for p in &cfg.pairs {
                let r = strichartz_ratio(
                    cfg.grid(),
                    *p,
                    cfg.t_end,
                    cfg.n_times,
                    cfg.samples,
                    cfg.seed,
                )?;
                check_bound(&r, failures);
                t.row(vec![
                    p.q().to_string(),
                    p.r().to_string(),
                    r.n_samples.to_string(),
                    real(r.sup_ratio),
                    real(r.sup_base),
                    r.saturated.to_string(),
                ]);
            }
            out.push(t);
        }
        Experiment::Exponents => out.push(exponent_table(cfg)?),
    }
    Ok(out)
}

fn exponent_table(cfg: &ExperimentConfig) -> Result<Table, LabError> {
    let mut t = Table::new("exponents", &["quantity", "exact", "decimal"]);
    let mut push =
        |name: &str, r: Rational| t.row(vec![name.to_string(), exact(r), real(to_f64(r))]);
    push("gwp_threshold", gwp_threshold().0);
    push(
        "pointwise_gap_exponent",
        pointwise_gap_exponent(cfg.theta0_exponent).0,
    );
    let budget = theorem51_budget(cfg.theta0_exponent);
    for (tag, name) in [
        (Tag::One, "budget_tag_1"),
        (Tag::M2, "budget_tag_M2"),
        (Tag::M1, "budget_tag_M1"),
    ] {
        if let Some(e) = budget.tag_exponent(tag) {
            push(name, e.0);
        }
    }
    push("budget_overall", budget.overall_exponent().0);
    push("theta_of_q_4", theta_of_q(Lebesgue::integer(4)?)?.0);
    push("theta_of_q_inf", theta_of_q(Lebesgue::INFINITY)?.0);
    let (q, r) = pair_between(
        (Lebesgue::INFINITY, Lebesgue::integer(2)?),
        (Lebesgue::integer(2)?, Lebesgue::integer(6)?),
        Rational::new(1, 2),
    )?;
    push("midpoint_pair_q_recip", q.recip());
    push("midpoint_pair_r_recip", r.recip());
    for item in section6_consistency().items {
        push(item.name, item.value.0);
    }
    Ok(t)
}

fn plot_script(cfg: &ExperimentConfig, files: &[PathBuf]) -> String {
    let mut s = String::from("set datafile separator ','\nset datafile commentschars '#'\nset key autotitle columnhead\n");
    let first = files
        .first()
        .and_then(|p| p.file_name())
        .map(|n| n.to_string_lossy().into_owned())
        .unwrap_or_default();
    match cfg.experiment {
        Experiment::SweepGap | Experiment::SweepConservation | Experiment::Smoothing => {
            s += "set logscale xy\nset xlabel 'N'\n";
            let cols = match cfg.experiment {
                Experiment::SweepConservation => 2,
                Experiment::Smoothing => cfg.pairs.len(),
                _ => 1,
            };
            let parts: Vec<String> = (0..cols)
                .map(|c| format!("'{first}' using 1:{} with linespoints", c + 2))
                .collect();
            s += &format!("plot {}\n", parts.join(", "));
        }
        Experiment::Simulate | Experiment::Decompose | Experiment::Energy => {
            s += "set xlabel 't'\n";
            let cols = match cfg.experiment {
                Experiment::Simulate => 4,
                Experiment::Decompose => 3,
                _ => 5,
            };
            let parts: Vec<String> = (0..cols)
                .map(|c| format!("'{first}' using 1:{} with lines", c + 2))
                .collect();
            s += &format!("plot {}\n", parts.join(", "));
        }
        Experiment::CheckSymbols | Experiment::CheckGeometry => {
            let dec = files
                .get(1)
                .and_then(|p| p.file_name())
                .map(|n| n.to_string_lossy().into_owned())
                .unwrap_or_default();
            s += "set logscale y\nset xlabel 'decade of max |xi|'\n";
            s += &format!("plot '{dec}' using 2:4 with points\n");
        }
        Experiment::Strichartz | Experiment::Exponents => {
            s += &format!("# tabular output only: {first}\n");
        }
    }
    s
}

/// Runs the configured experiment, writing its tables, `manifest.txt` and
/// `plot.gp` into `out_dir`.
pub fn run(cfg: &ExperimentConfig, out_dir: &Path) -> Result<RunOutput, LabError> {
    let start = Instant::now();
    fs::create_dir_all(out_dir)?;
    let mut failures = Vec::new();
    let tables = tables(cfg, &mut failures)?;
    let mut files = Vec::new();
    for t in &tables {
        files.push(t.write(out_dir)?);
    }
    let plot = out_dir.join("plot.gp");
    fs::write(&plot, plot_script(cfg, &files))?;
    let names: Vec<String> = files
        .iter()
        .filter_map(|p| p.file_name())
        .map(|n| n.to_string_lossy().into_owned())
        .collect();
    let manifest = format!(
        "# config\n{}# run\nseed = {}\nimethod-lab = {}\nimethod-core = {}\nthreads = {}\nwall_time_s = {:.3}\nfiles = {}\nfailures = {}\n",
        cfg.echo(),
        cfg.seed,
        env!("CARGO_PKG_VERSION"),
        imethod_core::VERSION,
        rayon::current_num_threads(),
        start.elapsed().as_secs_f64(),
        names.join(", "),
        failures.len(),
    );
    let man = out_dir.join("manifest.txt");
    fs::write(&man, manifest)?;
    files.push(plot);
    files.push(man);
    Ok(RunOutput { files, failures })
}
