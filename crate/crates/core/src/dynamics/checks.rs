use super::{integrate_orbit, Direction, LimitOutcome, OrbitOptions, Termination};
use crate::catalog::{FamilyDescriptor, FlagType};
use crate::flowgen::{ProjectedFlow, VectorField2};
use crate::polyalg::{rat, Poly, Rational, Var};
use crate::scalar::Real;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct IdentityCheck {
    pub name: &'static str,
    pub holds: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct InvarianceReport {
    pub family: String,
    pub checks: Vec<IdentityCheck>,
    pub pass: bool,
}

fn line(s: &str) -> Poly<Rational> {
    Poly::parse(s, 2).expect("line parses")
}

/// Exact identities making the edges (and for Type II the three mid segments) invariant.
pub fn edge_invariance_check(field: &VectorField2, family: &FamilyDescriptor) -> InvarianceReport {
    let (u, v) = (&field.u, &field.v);
    let sum = u + v;
    let half = Poly::constant(rat(1, 2), 2).expect("arity 2");
    let vanishes = |p: &Poly<Rational>, var: Var, by: &Poly<Rational>| {
        p.substitute(var, by).map(|q| q.is_zero()).unwrap_or(false)
    };
    let mut checks = vec![
        IdentityCheck { name: "x | u", holds: u.divisible_by(Var::X) },
        IdentityCheck { name: "y | v", holds: v.divisible_by(Var::Y) },
        IdentityCheck {
            name: "(u+v)(x, 1-x) = 0",
            holds: vanishes(&sum, Var::Y, &line("1 - x")),
        },
    ];
    if family.flag_type() == FlagType::II {
        checks.push(IdentityCheck {
            name: "v(x, 1/2) = 0",
            holds: vanishes(v, Var::Y, &half),
        });
        checks.push(IdentityCheck {
            name: "u(1/2, y) = 0",
            holds: vanishes(u, Var::X, &half),
        });
        checks.push(IdentityCheck {
            name: "(u+v)(x, 1/2-x) = 0",
            holds: vanishes(&sum, Var::Y, &line("1/2 - x")),
        });
    }
    let pass = checks.iter().all(|c| c.holds);
    InvarianceReport {
        family: family.id.clone(),
        checks,
        pass,
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OrbitCheck {
    pub start: (f64, f64),
    pub steps: usize,
    /// Steps along which `L` rose by more than the tolerance.
    pub lyapunov_violations: usize,
    pub max_increase: f64,
    pub periodic: bool,
    pub terminal: LimitOutcome,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MonotonicityReport {
    pub family: String,
    pub orbits: Vec<OrbitCheck>,
    pub pass: bool,
}

/// Per-step tolerance on the increase of `L`, relative to `max(1, |L|)`.
pub const LYAPUNOV_TOL: f64 = 1e-10;
/// Return distance counted as a revisit.
pub const REVISIT_TOL: f64 = 1e-8;

/// Uniform random point of the triangle at least `margin` from its boundary.
pub fn random_interior_point(rng: &mut impl Rng, margin: f64) -> (f64, f64) {
    loop {
        let (x, y): (f64, f64) = (rng.random(), rng.random());
        if x > margin && y > margin && x + y < 1.0 - margin {
            return (x, y);
        }
    }
}

/// Whether some sample returns within [`REVISIT_TOL`] of an earlier one at least one time unit later.
fn revisits(pts: &[(f64, f64, f64)]) -> bool {
    let mut order: Vec<usize> = (0..pts.len()).collect();
    order.sort_by(|&a, &b| pts[a].1.total_cmp(&pts[b].1));
    for (k, &a) in order.iter().enumerate() {
        for &b in &order[k + 1..] {
            if pts[b].1 - pts[a].1 > REVISIT_TOL {
                break;
            }
            let (ta, xa, ya) = pts[a];
            let (tb, xb, yb) = pts[b];
            if (ta - tb).abs() >= 1.0 && (xa - xb).hypot(ya - yb) < REVISIT_TOL {
                return true;
            }
        }
    }
    false
}

fn check_orbit<T: Real>(flow: &ProjectedFlow<T>, start: (f64, f64), opts: &OrbitOptions) -> OrbitCheck {
    let traj = integrate_orbit(flow, start, Direction::Forward, opts).expect("start inside");
    let mut violations = 0;
    let mut max_increase = f64::NEG_INFINITY;
    for w in traj.samples.windows(2) {
        if let (Some(a), Some(b)) = (w[0].lyapunov, w[1].lyapunov) {
            let inc = b - a;
            max_increase = max_increase.max(inc);
            if inc > LYAPUNOV_TOL * a.abs().max(1.0) {
                violations += 1;
            }
        }
    }
    let end = traj.end();
    let settled = traj.terminal.termination == Termination::Settled;
    // the converged tail sits still by construction and is not a return
    let pts: Vec<(f64, f64, f64)> = traj
        .samples
        .iter()
        .filter(|s| s.t > 1.0)
        .filter(|s| !settled || (s.x - end.0).hypot(s.y - end.1) > 1e-6)
        .map(|s| (s.t, s.x, s.y))
        .collect();
    OrbitCheck {
        start,
        steps: traj.samples.len() - 1,
        lyapunov_violations: violations,
        max_increase,
        periodic: revisits(&pts),
        terminal: traj.terminal,
    }
}

/// Integrates `n_orbits` random interior orbits and checks Lyapunov decrease and the absence of returns.
pub fn monotonicity_check<T: Real>(
    flow: &ProjectedFlow<T>,
    n_orbits: usize,
    seed: u64,
    opts: &OrbitOptions,
) -> MonotonicityReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let starts: Vec<(f64, f64)> = (0..n_orbits).map(|_| random_interior_point(&mut rng, 1e-3)).collect();
    let orbits: Vec<OrbitCheck> = starts.into_par_iter().map(|p| check_orbit(flow, p, opts)).collect();
    let pass = orbits.iter().all(|o| o.lyapunov_violations == 0 && !o.periodic);
    MonotonicityReport {
        family: flow.family.id.clone(),
        orbits,
        pass,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn revisit_detection() {
        let circle: Vec<(f64, f64, f64)> = (0..200)
            .map(|k| {
                let t = k as f64 * 0.1;
                (t, 0.3 + 0.1 * t.cos(), 0.3 + 0.1 * t.sin())
            })
            .chain([(20.0 * std::f64::consts::PI / 2.0, 0.4, 0.3)])
            .collect();
        assert!(revisits(&circle));
        let spiral: Vec<(f64, f64, f64)> = (0..200)
            .map(|k| {
                let t = k as f64 * 0.1;
                let r = 0.1 * (-0.1 * t).exp();
                (t, 0.3 + r * t.cos(), 0.3 + r * t.sin())
            })
            .collect();
        assert!(!revisits(&spiral));
    }
}
