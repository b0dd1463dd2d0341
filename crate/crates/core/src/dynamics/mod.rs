//! Orbits of the projected flow and the global qualitative checks built on them.

mod basins;
mod checks;
pub mod ode;
mod separatrix;

pub use basins::{basin_map, equilibrium_name, region_counts, BasinGrid, CellLabel};
pub use checks::{
    edge_invariance_check, monotonicity_check, random_interior_point, IdentityCheck, InvarianceReport, MonotonicityReport,
    OrbitCheck,
};
pub use separatrix::{separatrices, Manifold, Separatrix, SeparatrixSet, SEPARATRIX_OFFSET};

use crate::equilibria::{eigen_2x2, in_closed_triangle, FoundEquilibrium};
use crate::flowgen::ProjectedFlow;
use crate::scalar::Real;
use ode::{dopri5, Control, OdeOptions, OdeStatus};
use serde::Serialize;
use thiserror::Error;

/// A terminal point within this distance of a found equilibrium counts as converging to it.
pub const LIMIT_MATCH_TOL: f64 = 1e-6;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum DynamicsError {
    #[error("start point ({0}, {1}) lies outside the closed triangle")]
    OutsideSimplex(f64, f64),
    #[error("basin resolution {0} outside [16, 2048]")]
    BadResolution(usize),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Direction {
    Forward,
    Backward,
}

impl Direction {
    fn sign(self) -> f64 {
        match self {
            Direction::Forward => 1.0,
            Direction::Backward => -1.0,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Sample {
    /// Signed time: negative along backward orbits.
    pub t: f64,
    pub x: f64,
    pub y: f64,
    /// Lyapunov value; absent on the boundary where it is undefined.
    pub lyapunov: Option<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Termination {
    /// Step displacement fell below the settle tolerance near a zero of the field.
    Settled,
    TimeLimit,
    StepLimit,
    StepUnderflow,
    BoundaryExit,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum LimitKind {
    Equilibrium {
        /// Index into the equilibrium list the orbit was matched against.
        index: Option<usize>,
        label: Option<char>,
        position: (f64, f64),
    },
    Undetermined,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LimitOutcome {
    pub kind: LimitKind,
    /// Distance from the terminal sample to the limit (or to the nearest equilibrium when undetermined).
    pub distance: f64,
    pub time_elapsed: f64,
    pub termination: Termination,
}

impl LimitOutcome {
    pub fn label(&self) -> Option<char> {
        match self.kind {
            LimitKind::Equilibrium { label, .. } => label,
            LimitKind::Undetermined => None,
        }
    }

    pub fn index(&self) -> Option<usize> {
        match self.kind {
            LimitKind::Equilibrium { index, .. } => index,
            LimitKind::Undetermined => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Trajectory {
    pub samples: Vec<Sample>,
    pub direction: Direction,
    pub terminal: LimitOutcome,
}

impl Trajectory {
    pub fn end(&self) -> (f64, f64) {
        let s = self.samples.last().expect("trajectory has its start sample");
        (s.x, s.y)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OrbitOptions {
    pub rtol: f64,
    pub atol: f64,
    pub tmax: f64,
    pub max_steps: usize,
    /// Step displacement below which the orbit is considered at rest.
    pub settle_tol: f64,
    /// Consecutive resting steps required when the local linearization is not attracting.
    pub settle_steps: usize,
    pub boundary_tol: f64,
}

impl Default for OrbitOptions {
    fn default() -> Self {
        OrbitOptions {
            rtol: 1e-10,
            atol: 1e-12,
            tmax: 1e4,
            max_steps: 200_000,
            settle_tol: 1e-9,
            settle_steps: 50,
            boundary_tol: 1e-9,
        }
    }
}

fn outside(p: (f64, f64), tol: f64) -> bool {
    p.0 < -tol || p.1 < -tol || p.0 + p.1 > 1.0 + tol
}

/// Integrates the projected flow from `p0`, negating the field for backward orbits.
pub fn integrate_orbit<T: Real>(
    flow: &ProjectedFlow<T>,
    p0: (f64, f64),
    direction: Direction,
    opts: &OrbitOptions,
) -> Result<Trajectory, DynamicsError> {
    if !in_closed_triangle(p0, opts.boundary_tol) {
        return Err(DynamicsError::OutsideSimplex(p0.0, p0.1));
    }
    let sigma = T::lit(direction.sign());
    let sample = |t: f64, x: T, y: T| Sample {
        t: t * direction.sign(),
        x: x.as_f64(),
        y: y.as_f64(),
        lyapunov: flow.lyapunov(x, y).map(|l| l.as_f64()).filter(|l| l.is_finite()),
    };
    let (x0, y0) = (T::lit(p0.0), T::lit(p0.1));
    let mut samples = vec![sample(0.0, x0, y0)];
    let ode_opts = OdeOptions {
        rtol: T::lit(opts.rtol),
        atol: T::lit(opts.atol),
        max_steps: opts.max_steps,
        h0: None,
    };
    // a start point that is a zero up to rounding stays put
    let f0 = flow.eval(x0, y0);
    let rest = f0[0].abs().max(f0[1].abs()) <= T::lit(64.0) * T::epsilon() * flow.coeff_scale();
    if rest {
        return Ok(Trajectory {
            samples,
            direction,
            terminal: LimitOutcome {
                kind: LimitKind::Equilibrium {
                    index: None,
                    label: None,
                    position: p0,
                },
                distance: 0.0,
                time_elapsed: 0.0,
                termination: Termination::Settled,
            },
        });
    }
    let mut prev = [x0, y0];
    let mut resting = 0usize;
    let mut last_disp = f64::INFINITY;
    let mut termination = None;
    let status = dopri5(
        |s: &[T; 2]| {
            let f = flow.eval(s[0], s[1]);
            [sigma * f[0], sigma * f[1]]
        },
        [x0, y0],
        T::lit(opts.tmax),
        &ode_opts,
        |t, s| {
            samples.push(sample(t.as_f64(), s[0], s[1]));
            let disp = (s[0] - prev[0]).hypot(s[1] - prev[1]).as_f64();
            prev = *s;
            last_disp = disp;
            if outside((s[0].as_f64(), s[1].as_f64()), opts.boundary_tol) {
                termination = Some(Termination::BoundaryExit);
                return Control::Stop;
            }
            if disp < opts.settle_tol {
                let eig = eigen_2x2(flow.jacobian(s[0], s[1]));
                let attracting = eig.iter().all(|l| (sigma * l.re).as_f64() < -1e-8);
                resting += 1;
                let need = if attracting || disp == 0.0 { 1 } else { opts.settle_steps.max(1) };
                if resting >= need {
                    termination = Some(Termination::Settled);
                    return Control::Stop;
                }
            } else {
                resting = 0;
            }
            Control::Continue
        },
    );
    let termination = termination.unwrap_or(match status {
        OdeStatus::Finished | OdeStatus::Stopped => Termination::TimeLimit,
        OdeStatus::StepLimit => Termination::StepLimit,
        OdeStatus::StepUnderflow | OdeStatus::NonFinite => Termination::StepUnderflow,
    });
    let last = *samples.last().expect("start sample");
    let kind = if termination == Termination::Settled {
        LimitKind::Equilibrium {
            index: None,
            label: None,
            position: (last.x, last.y),
        }
    } else {
        LimitKind::Undetermined
    };
    let distance = if termination == Termination::Settled { last_disp } else { f64::INFINITY };
    Ok(Trajectory {
        samples,
        direction,
        terminal: LimitOutcome {
            kind,
            distance,
            time_elapsed: last.t.abs(),
            termination,
        },
    })
}

/// Matches `p` to the nearest equilibrium within [`LIMIT_MATCH_TOL`].
pub fn nearest_equilibrium(equilibria: &[FoundEquilibrium], p: (f64, f64)) -> Option<(usize, f64)> {
    equilibria
        .iter()
        .enumerate()
        .map(|(i, e)| (i, e.distance_to(p)))
        .min_by(|a, b| a.1.total_cmp(&b.1))
}

/// The limit of the orbit through `p0`, resolved against the known equilibria.
pub fn limit_of_orbit<T: Real>(
    flow: &ProjectedFlow<T>,
    equilibria: &[FoundEquilibrium],
    p0: (f64, f64),
    direction: Direction,
    opts: &OrbitOptions,
) -> Result<LimitOutcome, DynamicsError> {
    let traj = integrate_orbit(flow, p0, direction, opts)?;
    Ok(resolve(traj.end(), traj.terminal, equilibria))
}

pub(crate) fn resolve(end: (f64, f64), terminal: LimitOutcome, equilibria: &[FoundEquilibrium]) -> LimitOutcome {
    let nearest = nearest_equilibrium(equilibria, end);
    let usable = terminal.termination != Termination::BoundaryExit;
    match nearest {
        Some((i, d)) if usable && d <= LIMIT_MATCH_TOL => LimitOutcome {
            kind: LimitKind::Equilibrium {
                index: Some(i),
                label: equilibria[i].matched_label,
                position: equilibria[i].position,
            },
            distance: d,
            ..terminal
        },
        _ => LimitOutcome {
            kind: LimitKind::Undetermined,
            distance: nearest.map_or(f64::INFINITY, |n| n.1),
            ..terminal
        },
    }
}
