use std::path::Path;

use mutvis_core::crossing::{
    decompose, direction_degrees, rotating_line_run_with, stuck_critical_points, CriticalPoint,
    Pivot, RotatingOutcome,
};
use mutvis_core::generate::{generate_instance, GenError, GenParams};
use mutvis_core::instance::{Classification, Instance};
use mutvis_core::scheduler::solve;
use mutvis_core::verifier::{verify, VerificationReport};
use serde_json::{json, Value};

use crate::format::{
    instance_to_json, point_to_json, rational_to_json, read_instance, read_solution,
    segment_to_json, solution_to_json, to_text, SolutionFile,
};
use crate::{svg, CliError};

pub const SEED_ENV: &str = "MUTVIS_SEED";

fn write(path: &Path, text: &str) -> Result<(), CliError> {
    std::fs::write(path, text).map_err(CliError::from)
}

pub fn solve_instance(inst: &Instance) -> Result<SolutionFile, CliError> {
    match inst
        .classify()
        .map_err(|e| CliError::Invalid(e.to_string()))?
    {
        Classification::Crossing(q) => {
            return Err(CliError::Crossing(json!({
                "error": "S and T cross",
                "q": point_to_json(&q),
                "hint": "crossing instances are not solved; run `mutvis analyze` instead",
            })))
        }
        Classification::NonCrossing => {}
    }
    let (schedule, trajectories) = solve(inst).map_err(|e| CliError::Invalid(e.to_string()))?;
    Ok(SolutionFile {
        schedule,
        trajectories,
        m: inst.polygon().len(),
    })
}

pub fn cmd_solve(input: &Path, output: &Path) -> Result<SolutionFile, CliError> {
    let inst = read_instance(input)?;
    let sol = solve_instance(&inst)?;
    write(output, &to_text(&solution_to_json(&sol)))?;
    Ok(sol)
}

pub fn report_to_json(r: &VerificationReport) -> Value {
    let violation = r.first_violation.as_ref().map(|v| {
        json!({
            "time": rational_to_json(&v.time),
            "robots": [v.robots.0, v.robots.1],
            "witness": segment_to_json(&v.witness),
            "blocking_edge": v.blocking_edge.as_ref().map(segment_to_json),
        })
    });
    json!({
        "paths_ok": r.paths_ok,
        "visibility_ok": r.visibility_ok,
        "samples_per_step": r.samples_per_step,
        "first_violation": violation,
    })
}

/// Checks that a solution belongs to this instance at all.
fn check_matches(inst: &Instance, sol: &SolutionFile) -> Result<(), CliError> {
    if sol.m != inst.polygon().len() {
        return Err(CliError::Invalid(format!(
            "solution is for a polygon with {} vertices, instance has {}",
            sol.m,
            inst.polygon().len()
        )));
    }
    if sol.trajectories.len() != inst.len() {
        return Err(CliError::Invalid(format!(
            "solution has {} trajectories, instance has {} robots",
            sol.trajectories.len(),
            inst.len()
        )));
    }
    let len = sol.steps() + 1;
    for (i, (t, r)) in sol.trajectories.iter().zip(inst.robots()).enumerate() {
        if t.waypoints.len() != len {
            return Err(CliError::Invalid(format!(
                "trajectory {i} has {} waypoints, expected {len}",
                t.waypoints.len()
            )));
        }
        if t.waypoints[0] != r.start || t.waypoints[len - 1] != r.target {
            return Err(CliError::Invalid(format!(
                "trajectory {i} does not join robot {i}'s start and target"
            )));
        }
    }
    Ok(())
}

pub fn verify_solution(
    inst: &Instance,
    sol: &SolutionFile,
    samples: usize,
) -> Result<Value, CliError> {
    check_matches(inst, sol)?;
    let report =
        verify(inst, &sol.trajectories, samples).map_err(|e| CliError::Invalid(e.to_string()))?;
    let out = report_to_json(&report);
    if report.ok() {
        Ok(out)
    } else {
        Err(CliError::Verification(out))
    }
}

pub fn cmd_verify(instance: &Path, solution: &Path, samples: usize) -> Result<Value, CliError> {
    if samples == 0 {
        return Err(CliError::parse("--samples must be at least 1"));
    }
    let inst = read_instance(instance)?;
    let sol = read_solution(solution)?;
    verify_solution(&inst, &sol, samples)
}

/// `MUTVIS_SEED`, when set, wins over the command-line seed.
pub fn effective_seed(cli_seed: u64) -> Result<u64, CliError> {
    match std::env::var(SEED_ENV) {
        Ok(s) => s.trim().parse().map_err(|_| {
            CliError::parse(format!("{SEED_ENV} must be an unsigned integer, got {s:?}"))
        }),
        Err(_) => Ok(cli_seed),
    }
}

pub fn generate(vertices: usize, robots: usize, seed: u64) -> Result<Instance, CliError> {
    generate_instance(GenParams {
        vertices,
        robots,
        seed,
    })
    .map_err(|e| match e {
        GenError::BadParams => {
            CliError::Generation(format!("{e} (got m = {vertices}, n = {robots})"))
        }
        GenError::GenerationFailed(_) => CliError::Generation(e.to_string()),
    })
}

pub fn cmd_gen(
    vertices: usize,
    robots: usize,
    seed: u64,
    output: &Path,
) -> Result<Instance, CliError> {
    let inst = generate(vertices, robots, seed)?;
    write(output, &to_text(&instance_to_json(&inst)))?;
    Ok(inst)
}

pub fn cmd_render(instance: &Path, solution: Option<&Path>, output: &Path) -> Result<(), CliError> {
    let inst = read_instance(instance)?;
    let sol = solution.map(read_solution).transpose()?;
    if let Some(sol) = &sol {
        check_matches(&inst, sol)?;
    }
    write(output, &svg::render(&inst, sol.as_ref()))
}

fn critical_to_json(c: &CriticalPoint) -> Value {
    json!({
        "point": point_to_json(&c.point),
        "carrier": c.carrier,
        "edge": c.position.0,
        "param": rational_to_json(&c.position.1),
    })
}

fn outcome_to_json(pivot: Pivot, steps: usize, out: &RotatingOutcome) -> Value {
    let pivot = match pivot {
        Pivot::OneThree => "R1/R3",
        Pivot::TwoFour => "R2/R4",
    };
    match out {
        RotatingOutcome::Completed => json!({
            "pivot": pivot,
            "angular_steps": steps,
            "outcome": "Completed",
        }),
        RotatingOutcome::Stuck {
            step,
            direction,
            pair,
            positions,
        } => json!({
            "pivot": pivot,
            "angular_steps": steps,
            "outcome": "Stuck",
            "step": step,
            "direction": [rational_to_json(&direction.0), rational_to_json(&direction.1)],
            "angle_degrees": direction_degrees(direction),
            "witness": [pair.0, pair.1],
            "positions": positions.iter().map(point_to_json).collect::<Vec<_>>(),
        }),
    }
}

pub fn analyze_instance(inst: &Instance, angular_steps: usize) -> Result<Value, CliError> {
    use mutvis_core::error::CrossingError;
    let map = |e: CrossingError| match e {
        CrossingError::NotCrossing => CliError::Crossing(json!({
            "error": "S and T do not cross",
            "hint": "non-crossing instances are solved with `mutvis solve`",
        })),
        CrossingError::TooFewSteps(_) => CliError::parse(e.to_string()),
        other => CliError::Invalid(other.to_string()),
    };
    let dec = decompose(inst).map_err(map)?;
    let names = ["A1", "A2", "A3", "A4"];
    let regions: Vec<Value> = dec
        .regions
        .iter()
        .zip(names)
        .map(|(r, name)| {
            json!({
                "name": name,
                "vertices": r.vertices().iter().map(point_to_json).collect::<Vec<_>>(),
                "simple": r.polygon.is_some(),
            })
        })
        .collect();
    let critical = stuck_critical_points(inst).map_err(map)?.map(|cp| {
        json!({
            "x": critical_to_json(&cp.x),
            "y": critical_to_json(&cp.y),
            "x_prime": cp.x_prime.as_ref().map(critical_to_json),
            "y_prime": cp.y_prime.as_ref().map(critical_to_json),
            "y_before_x": cp.y_before_x(),
            "y_prime_before_x_prime": cp.y_prime_before_x_prime(),
        })
    });
    let mut runs = Vec::new();
    for pivot in [Pivot::OneThree, Pivot::TwoFour] {
        let out = rotating_line_run_with(inst, angular_steps, pivot).map_err(map)?;
        runs.push(outcome_to_json(pivot, angular_steps, &out));
    }
    Ok(json!({
        "q": point_to_json(&dec.q),
        "regions": regions,
        "partition": {
            "R1": dec.partition[0],
            "R2": dec.partition[1],
            "R3": dec.partition[2],
            "R4": dec.partition[3],
        },
        "unassigned": dec.unassigned,
        "critical_points": critical,
        "rotating_line": runs,
    }))
}

pub fn cmd_analyze(input: &Path, angular_steps: usize, output: &Path) -> Result<Value, CliError> {
    let inst = read_instance(input)?;
    let out = analyze_instance(&inst, angular_steps)?;
    write(output, &to_text(&out))?;
    Ok(out)
}
