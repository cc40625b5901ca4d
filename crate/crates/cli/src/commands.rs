//! Command implementations. Every command is deterministic: the same flags
//! produce byte-identical files (metadata lines carry a `#` prefix).

use std::path::Path;

use permuton::cmatrix::{
    exp_neg_i_hermitian, hermiticity_defect, max_abs_diff, to_csv, unitarity_defect,
};
use permuton::cogwheel::CogwheelSpec;
use permuton::dirac::{self, BijectivityMode, DiracSpec, TableKind};
use permuton::hilbert::{self, StateVector};
use permuton::kinematics::{self, SlowdownCase, SlowdownSpec};
use permuton::trace::SpacetimeTrace;

use crate::init;
use crate::render;
use crate::{CaseArg, CliError, ModeArg, RenderKind};

fn write_file(dir: &Path, name: &str, contents: &str) -> Result<(), CliError> {
    std::fs::create_dir_all(dir)
        .map_err(|e| CliError::validation(format!("cannot create `{}`: {e}", dir.display())))?;
    let path = dir.join(name);
    std::fs::write(&path, contents)
        .map_err(|e| CliError::validation(format!("cannot write `{}`: {e}", path.display())))?;
    println!("wrote {}", path.display());
    Ok(())
}

fn write_diagram(
    dir: &Path,
    trace: &SpacetimeTrace,
    render_kind: Option<RenderKind>,
) -> Result<(), CliError> {
    match render_kind {
        None => Ok(()),
        Some(RenderKind::Ascii) => write_file(dir, "diagram.txt", &render::ascii(trace)),
        Some(RenderKind::Svg) => write_file(dir, "diagram.svg", &render::svg(trace)),
    }
}

pub fn cogwheel(n: usize, t: f64, out: &Path) -> Result<(), CliError> {
    let spec = CogwheelSpec::new(n, t)?;
    let step = spec.step_matrix();
    let h = spec.hamiltonian_standard_basis()?;
    let eigen = spec.eigenvalues_h()?;
    let roundtrip = max_abs_diff(&exp_neg_i_hermitian(&h, t), &step);

    write_file(out, "step_matrix.csv", &to_csv(&step))?;
    write_file(out, "hamiltonian.csv", &to_csv(&h))?;
    let eigen_text: String = eigen.iter().map(|e| format!("{e}\n")).collect();
    write_file(out, "eigenvalues.txt", &eigen_text)?;
    let report = format!(
        "n={n} t={t}\nunitarity_defect={:e}\nhermiticity_defect={:e}\nexp_roundtrip_residual={:e}\n",
        unitarity_defect(&step),
        hermiticity_defect(&h),
        roundtrip,
    );
    write_file(out, "report.txt", &report)
}

pub fn chain(
    s: usize,
    steps: usize,
    init_text: &str,
    out: &Path,
    render_kind: Option<RenderKind>,
) -> Result<(), CliError> {
    let spec = init::parse(init_text)?;
    let state = init::chain_state(&spec, s)?;
    let trace = permuton::chain::evolve(&state, steps);
    write_file(out, "trace.txt", &trace.to_text())?;
    write_diagram(out, &trace, render_kind)
}

#[allow(clippy::too_many_arguments)]
pub fn slowdown(
    s: usize,
    k0: usize,
    l0: usize,
    case: CaseArg,
    cycles: usize,
    init_text: &str,
    out: &Path,
    render_kind: Option<RenderKind>,
) -> Result<(), CliError> {
    let case = match case {
        CaseArg::Reversal => SlowdownCase::Reversal,
        CaseArg::Translation => SlowdownCase::Translation,
    };
    let spec = SlowdownSpec::new(k0, l0, case)?;
    let state = init::chain_state(&init::parse(init_text)?, s)?;
    let trace = kinematics::evolve_slowdown(&state, &spec, cycles)?;
    write_file(out, "trace.txt", &trace.to_text())?;

    let case_name = match case {
        SlowdownCase::Reversal => "reversal",
        SlowdownCase::Translation => "translation",
    };
    let mut report = format!(
        "case={case_name} k0={k0} l0={l0} cycles={cycles} S={s}\nsteps_per_cycle={}\n",
        spec.cycle_steps()
    );
    match kinematics::measure_defect_velocity(&trace, spec.cycle_steps()) {
        Ok(v) => {
            report.push_str(&format!(
                "displacement_per_cycle={}\nvelocity={}/{}\n",
                v.displacement_per_cycle, v.displacement_per_cycle, v.steps_per_cycle
            ));
        }
        Err(_) => report.push_str("displacement_per_cycle=na\nvelocity=na\n"),
    }
    let residual = kinematics::check_weyl_combination(&trace, &spec)?;
    report.push_str(&format!(
        "weyl_residual_left={}\nweyl_residual_right={}\n",
        residual.left, residual.right
    ));
    write_file(out, "report.txt", &report)?;
    write_diagram(out, &trace, render_kind)
}

pub fn hamiltonian(s: usize, t: f64, out: &Path) -> Result<(), CliError> {
    let blocks = hilbert::chain_orbit_blocks(s, t)?;
    write_file(out, "orbits.txt", &hilbert::orbit_report(&blocks))?;

    let h = hilbert::extract_hamiltonian(s, t)?;
    write_file(out, "hamiltonian.csv", &to_csv(&h))?;
    let update = hilbert::chain_update_on_basis(s)?;
    let roundtrip = max_abs_diff(&exp_neg_i_hermitian(&h, t), &hilbert::lift(&update));
    let series = if 2 * s <= hilbert::MAX_SERIES_SITES {
        format!("{:e}", hilbert::cotangent_series_deviation(s, t)?)
    } else {
        "na".to_string()
    };
    let report = format!(
        "S={s} t={t}\ndim={}\norbits={}\nexp_roundtrip_residual={:e}\nseries_deviation={series}\n",
        update.size(),
        blocks.len(),
        roundtrip,
    );
    write_file(out, "report.txt", &report)
}

pub fn perturb(s: usize, epsilons_text: &str, out: &Path) -> Result<(), CliError> {
    let epsilons: Result<Vec<f64>, _> = epsilons_text
        .split(',')
        .map(|tok| tok.trim().parse::<f64>())
        .collect();
    let epsilons = epsilons.map_err(|e| CliError::validation(format!("bad epsilon list: {e}")))?;
    let n_qubits = 2 * s;
    // one exchange deformed on the first pair of sites, applied to a basis
    // state whose pair spins differ
    let probe_index = 1usize;
    let mut table = String::from(
        "# deformed exchange on sites 1,2; probe basis state has the pair differing\n",
    );
    table.push_str("epsilon measure closed_form abs_diff\n");
    for eps in epsilons {
        let op = hilbert::perturbed_exchange(0, 1, n_qubits, eps)?;
        let v = StateVector::basis(1 << n_qubits, probe_index)?.transformed(&op)?;
        let measure = hilbert::superposition_measure(&v)?;
        let theta = std::f64::consts::FRAC_PI_2 * (1.0 + eps);
        let closed = theta.cos().powi(2).min(theta.sin().powi(2));
        table.push_str(&format!(
            "{eps} {measure} {closed} {:e}\n",
            (measure - closed).abs()
        ));
    }
    write_file(out, "sweep.txt", &table)
}

pub fn dirac(
    s: usize,
    m: i64,
    mu: i64,
    steps: usize,
    init_text: &str,
    out: &Path,
    render_kind: Option<RenderKind>,
) -> Result<(), CliError> {
    let spec = DiracSpec::new(s, m, mu)?;
    let state = init::gen_state(&init::parse(init_text)?, s, m)?;
    let trace = dirac::evolve(&state, &spec, steps)?;
    write_file(out, "trace.txt", &trace.to_text())?;
    write_diagram(out, &trace, render_kind)
}

pub fn dirac_verify(s: usize, m: i64, mu: i64, mode: ModeArg, table: bool) -> Result<(), CliError> {
    if table {
        print!(
            "{}",
            dirac::build_table(m, TableKind::Add)?.format_symbolic()
        );
        println!();
        print!(
            "{}",
            dirac::build_table(m, TableKind::Sub)?.format_symbolic()
        );
    }
    let spec = DiracSpec::new(s, m, mu)?;
    let mode = match mode {
        ModeArg::Auto => BijectivityMode::Auto,
        ModeArg::Exhaustive => BijectivityMode::Exhaustive,
        ModeArg::Modular => BijectivityMode::Modular,
    };
    let report = dirac::verify_bijective(&spec, mode)?;
    println!("S={s} M={m} mu={mu}");
    match report.mode {
        BijectivityMode::Exhaustive => {
            let total = report.config_count.expect("exhaustive mode counts");
            println!("mode=exhaustive configs={total}");
            if let Some(cert) = &report.certificate {
                println!("bijective: {total}/{total}");
                let mut hist = std::collections::BTreeMap::new();
                for len in cert.cycle_decompose().cycle_lengths() {
                    *hist.entry(len).or_insert(0usize) += 1;
                }
                let text: Vec<String> = hist
                    .into_iter()
                    .map(|(len, count)| format!("{len}x{count}"))
                    .collect();
                println!("cycle lengths: {}", text.join(" "));
            } else {
                println!("bijective: no (image smaller than configuration space)");
            }
        }
        BijectivityMode::Modular => {
            println!(
                "mode=modular det={} modulus={}",
                report.determinant.expect("modular mode"),
                spec.modulus()
            );
            println!("bijective: {}", if report.bijective { "yes" } else { "no" });
        }
        BijectivityMode::Auto => unreachable!(),
    }
    if report.bijective {
        Ok(())
    } else {
        Err(CliError::Verification(format!(
            "one-step update is not a permutation for S={s} M={m} mu={mu}"
        )))
    }
}

pub fn render_trace(trace_path: &Path, format: RenderKind, out: &Path) -> Result<(), CliError> {
    let trace = SpacetimeTrace::load(trace_path)?;
    write_diagram(out, &trace, Some(format))
}
