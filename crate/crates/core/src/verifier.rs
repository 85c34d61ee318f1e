//! Certifies a solution against the raw polygon.
//!
//! Only geometry and polygon predicates plus the visibility-graph oracle are
//! used here; nothing from the corridor or the scheduler is trusted.

use num_traits::Zero;
use rayon::prelude::*;

use crate::error::VerifyError;
use crate::geodesic::VisibilityGraph;
use crate::geometry::{normalize_polyline, ratio, Point, Rational, Segment};
use crate::instance::Instance;
use crate::polygon::{segment_containment, Containment};
use crate::scheduler::Trajectory;

pub const DEFAULT_SAMPLES: usize = 10;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    /// Global time `k + λ`.
    pub time: Rational,
    pub robots: (usize, usize),
    pub witness: Segment,
    /// Polygon edge crossed by the witness, if it crosses one properly.
    pub blocking_edge: Option<Segment>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerificationReport {
    pub paths_ok: Vec<bool>,
    pub visibility_ok: bool,
    pub first_violation: Option<Violation>,
    pub samples_per_step: usize,
}

impl VerificationReport {
    pub fn ok(&self) -> bool {
        self.visibility_ok && self.paths_ok.iter().all(|&b| b)
    }
}

/// Whether each normalized trajectory equals the oracle geodesic exactly.
pub fn verify_paths(inst: &Instance, trajs: &[Trajectory]) -> Result<Vec<bool>, VerifyError> {
    check_shape(inst, trajs)?;
    let vg = VisibilityGraph::new(inst.polygon());
    trajs
        .iter()
        .zip(inst.robots())
        .map(|(t, r)| {
            let path = vg.shortest_path(&r.start, &r.target)?;
            Ok(normalize_polyline(&t.waypoints) == path.waypoints())
        })
        .collect()
}

/// Checks all robot pairs at `λ = 0, 1/s, …, 1` of every step.
pub fn verify_visibility(
    inst: &Instance,
    trajs: &[Trajectory],
    samples_per_step: usize,
) -> Result<VerificationReport, VerifyError> {
    check_shape(inst, trajs)?;
    let s = samples_per_step.max(1);
    let steps = trajs[0].waypoints.len() - 1;
    let mut times: Vec<(usize, usize)> = vec![(0, 0)];
    for k in 0..steps {
        times.extend((1..=s).map(|j| (k, j)));
    }
    let first = times.par_iter().find_map_first(|&(k, j)| {
        let lambda = ratio(j as i64, s as i64);
        let pos: Vec<Point> = trajs
            .iter()
            .map(|t| match t.waypoints.get(k + 1) {
                Some(next) => t.waypoints[k].lerp(next, &lambda),
                None => t.waypoints[k].clone(),
            })
            .collect();
        first_blocked_pair(inst, &pos).map(|(pair, witness, blocking_edge)| Violation {
            time: Rational::from_integer(k.into()) + lambda,
            robots: pair,
            witness,
            blocking_edge,
        })
    });
    Ok(VerificationReport {
        paths_ok: vec![true; trajs.len()],
        visibility_ok: first.is_none(),
        first_violation: first,
        samples_per_step: s,
    })
}

/// Runs both checks.
pub fn verify(
    inst: &Instance,
    trajs: &[Trajectory],
    samples_per_step: usize,
) -> Result<VerificationReport, VerifyError> {
    let paths_ok = verify_paths(inst, trajs)?;
    let report = verify_visibility(inst, trajs, samples_per_step)?;
    Ok(VerificationReport { paths_ok, ..report })
}

type Blocked = ((usize, usize), Segment, Option<Segment>);

fn first_blocked_pair(inst: &Instance, pos: &[Point]) -> Option<Blocked> {
    let poly = inst.polygon();
    for i in 0..pos.len() {
        for j in i + 1..pos.len() {
            let seg = Segment::new(pos[i].clone(), pos[j].clone());
            match segment_containment(poly, &seg) {
                Ok(Containment::Inside) => {}
                Ok(Containment::Crosses { edge, .. }) => {
                    return Some(((i, j), seg, Some(poly.edge(edge))));
                }
                // Coincident robots see each other.
                Err(_) => {}
                Ok(Containment::Leaves { .. }) => return Some(((i, j), seg, None)),
            }
        }
    }
    None
}

fn check_shape(inst: &Instance, trajs: &[Trajectory]) -> Result<(), VerifyError> {
    if trajs.len() != inst.len() {
        return Err(VerifyError::CountMismatch {
            expected: inst.len(),
            got: trajs.len(),
        });
    }
    let len = trajs[0].waypoints.len();
    if len == 0 || trajs.iter().any(|t| t.waypoints.len() != len) {
        return Err(VerifyError::RaggedTrajectories);
    }
    Ok(())
}

/// Positions at a time given as `k + λ`, used for reporting.
pub fn sample_positions(trajs: &[Trajectory], time: &Rational) -> Vec<Point> {
    let k = time.floor();
    let lambda = time - &k;
    let k: usize = num_traits::ToPrimitive::to_usize(&k.to_integer()).unwrap_or(0);
    trajs
        .iter()
        .map(|t| match t.waypoints.get(k + 1) {
            Some(next) if !lambda.is_zero() => t.waypoints[k].lerp(next, &lambda),
            _ => t.waypoints[k.min(t.waypoints.len() - 1)].clone(),
        })
        .collect()
}
