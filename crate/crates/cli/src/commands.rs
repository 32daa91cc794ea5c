//! The five commands, each writing its artifacts into the output directory.

use std::fs;
use std::path::Path;

use center_focus::abel_solver::{
    default_rho_grid, displacement_scan, evenness_defect, integrate_abel, operator_bound_check, picard_fixed_point,
    rho_admissible_bound,
};
use center_focus::certifier::{classify_abel, classify_planar};
use center_focus::planar_solver::{crosscheck_cherkas, default_r0, integrate_planar, polar_return_map};
use center_focus::reduction::{abel_coefficients, abel_from_planar, compute_ab};
use center_focus::{AbelProblem, SolverConfig};
use serde_json::{json, Value};

use crate::job::{AbelSpec, Command, JobSpec, Payload};
use crate::CliError;

/// Random ball elements drawn for the operator-bound report of `picard`.
const OPERATOR_SAMPLES: usize = 32;

pub struct Options {
    pub seed: u64,
}

fn write(dir: &Path, name: &str, body: &str) -> Result<(), CliError> {
    let path = dir.join(name);
    fs::write(&path, body).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))
}

fn write_json(dir: &Path, name: &str, value: &Value) -> Result<(), CliError> {
    let mut body = serde_json::to_string_pretty(value).expect("json serializes");
    body.push('\n');
    write(dir, name, &body)
}

fn abel_of(payload: &Payload) -> AbelProblem {
    match payload {
        Payload::Planar(sys) => abel_from_planar(sys),
        Payload::Abel(p) => p.clone(),
    }
}

/// Runs the job and returns the list of files written.
pub fn run(
    job: &JobSpec,
    payload: &Payload,
    cfg: &SolverConfig,
    out: &Path,
    opts: &Options,
) -> Result<Vec<String>, CliError> {
    fs::create_dir_all(out).map_err(|e| CliError::Io(format!("{}: {e}", out.display())))?;
    match job.command {
        Command::Certify => {
            let cert = match payload {
                Payload::Planar(sys) => classify_planar(sys),
                Payload::Abel(p) => classify_abel(p),
            };
            write_json(out, "certificate.json", &serde_json::to_value(&cert).expect("certificate serializes"))?;
            Ok(vec!["certificate.json".into()])
        }
        Command::Reduce => {
            let Payload::Planar(sys) = payload else { unreachable!("validated") };
            let (a, b) = compute_ab(sys);
            let (f, g) = abel_coefficients(sys.n(), &a, &b);
            let body = json!({
                "n": sys.n(),
                "A": a,
                "B": b,
                "f": f,
                "g": g,
                "parity": { "A": a.parity(), "B": b.parity(), "f": f.parity(), "g": g.parity() },
                "mean_a": a.mean_value().to_string(),
                "abel": AbelSpec::from_trig(&f, &g),
            });
            write_json(out, "reduction.json", &body)?;
            Ok(vec!["reduction.json".into()])
        }
        Command::Scan => {
            let prob = abel_of(payload);
            let grid = job.rho_grid.clone().unwrap_or_else(|| default_rho_grid(&prob, cfg));
            let rep = displacement_scan(&prob, &grid, cfg).map_err(|e| CliError::solver(e.name(), &e))?;
            write(out, "displacement.csv", &rep.to_csv())?;
            write_json(out, "displacement.json", &rep.summary_json())?;
            Ok(vec!["displacement.csv".into(), "displacement.json".into()])
        }
        Command::Crosscheck => {
            let Payload::Planar(sys) = payload else { unreachable!("validated") };
            let r0 = job.r0.unwrap_or_else(|| default_r0(sys));
            let fail = |e: center_focus::planar_solver::PlanarError| CliError::solver(e.name(), &e);
            let rep = crosscheck_cherkas(sys, r0, cfg).map_err(fail)?;
            let cartesian = integrate_planar(sys, r0, 0.0, cfg).map_err(fail)?;
            let polar = polar_return_map(sys, r0, cfg).map_err(fail)?;
            let body = json!({
                "r0": rep.r0,
                "defect": rep.defect,
                "samples": rep.samples,
                "cartesian_return_radius": cartesian.return_radius(),
                "polar_return_radius": polar,
            });
            write_json(out, "crosscheck.json", &body)?;
            write(out, "orbit.csv", &cartesian.to_csv())?;
            Ok(vec!["crosscheck.json".into(), "orbit.csv".into()])
        }
        Command::Picard => {
            let prob = abel_of(payload);
            let bound = rho_admissible_bound(&prob, cfg.ball_radius);
            let rho = job.rho.unwrap_or(0.5 * bound);
            let sol = picard_fixed_point(&prob, rho, cfg).map_err(|e| CliError::solver(e.name(), &e))?;
            let rk = integrate_abel(&prob, rho, cfg).map_err(|e| CliError::solver(e.name(), &e))?;
            let bounds = operator_bound_check(&prob, rho, cfg, OPERATOR_SAMPLES, opts.seed)
                .map_err(|e| CliError::solver(e.name(), &e))?;
            let body = json!({
                "rho": rho,
                "admissible_bound": bound,
                "iterations": sol.iterations,
                "contraction_rate": sol.contraction_rate,
                "last_update": sol.last_update,
                "evenness_defect": evenness_defect(&sol.trajectory),
                "return_value": sol.trajectory.final_value(),
                "rk_sup_difference": sol.trajectory.sup_distance(&rk),
                "operator_bounds": bounds,
                "seed": opts.seed,
            });
            write(out, "trajectory.csv", &sol.trajectory.to_csv())?;
            write_json(out, "picard.json", &body)?;
            Ok(vec!["trajectory.csv".into(), "picard.json".into()])
        }
    }
}
