use super::basins::equilibrium_name;
use super::{integrate_orbit, resolve, Direction, LimitOutcome, OrbitOptions};
use crate::catalog::StabilityClass;
use crate::equilibria::{in_closed_triangle, FoundEquilibrium};
use crate::flowgen::ProjectedFlow;
use crate::scalar::Real;
use rayon::prelude::*;
use serde::Serialize;

/// Distance from the saddle along the unit eigenvector at which branches start.
pub const SEPARATRIX_OFFSET: f64 = 1e-6;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Manifold {
    Stable,
    Unstable,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Separatrix {
    /// Index of the saddle in the equilibrium list.
    pub saddle: usize,
    pub saddle_name: String,
    pub manifold: Manifold,
    /// Side of the eigenvector the branch starts on.
    pub sign: i8,
    pub eigenvalue: f64,
    pub eigenvector: (f64, f64),
    pub points: Vec<(f64, f64)>,
    pub limit: LimitOutcome,
}

#[derive(Debug, Clone, PartialEq, Default, Serialize)]
pub struct SeparatrixSet {
    pub curves: Vec<Separatrix>,
    /// Branches that were skipped, with the reason.
    pub diagnostics: Vec<String>,
}

/// Unit eigenvector of `j` for the real eigenvalue `lambda`.
pub fn eigenvector(j: [[f64; 2]; 2], lambda: f64) -> Option<(f64, f64)> {
    let a = (j[0][1], lambda - j[0][0]);
    let b = (lambda - j[1][1], j[1][0]);
    let (v, n) = [a, b]
        .into_iter()
        .map(|v| (v, v.0.hypot(v.1)))
        .max_by(|p, q| p.1.total_cmp(&q.1))
        .expect("two candidates");
    let scale = j.iter().flatten().fold(0.0f64, |m, x| m.max(x.abs()));
    if n <= 1e-12 * scale.max(f64::MIN_POSITIVE) {
        return None;
    }
    Some((v.0 / n, v.1 / n))
}

/// Stable and unstable branches of every saddle, each traced to its limit.
pub fn separatrices<T: Real>(
    flow: &ProjectedFlow<T>,
    equilibria: &[FoundEquilibrium],
    offset: f64,
    opts: &OrbitOptions,
) -> SeparatrixSet {
    let mut jobs = Vec::new();
    let mut set = SeparatrixSet::default();
    for (k, e) in equilibria.iter().enumerate() {
        if e.effective_class() != StabilityClass::Saddle {
            continue;
        }
        let name = equilibrium_name(e);
        let (x, y) = e.position;
        let jt = flow.jacobian(T::lit(x), T::lit(y));
        let j = [[jt[0][0].as_f64(), jt[0][1].as_f64()], [jt[1][0].as_f64(), jt[1][1].as_f64()]];
        for lambda in e.eigenvalues {
            if lambda.im != 0.0 {
                set.diagnostics.push(format!("{name}: complex eigenvalue at a saddle"));
                continue;
            }
            let manifold = if lambda.re < 0.0 { Manifold::Stable } else { Manifold::Unstable };
            let Some(v) = eigenvector(j, lambda.re) else {
                set.diagnostics.push(format!("{name}: degenerate eigenvector for {}", lambda.re));
                continue;
            };
            for sign in [1i8, -1] {
                let s = sign as f64 * offset;
                let p0 = (x + s * v.0, y + s * v.1);
                if !in_closed_triangle(p0, 0.0) {
                    set.diagnostics.push(format!("{name}: {manifold:?} branch {sign:+} leaves the triangle"));
                    continue;
                }
                jobs.push((k, name.clone(), manifold, sign, lambda.re, v, p0));
            }
        }
    }
    let curves: Vec<Option<Separatrix>> = jobs
        .into_par_iter()
        .map(|(k, name, manifold, sign, lambda, v, p0)| {
            let dir = match manifold {
                Manifold::Unstable => Direction::Forward,
                Manifold::Stable => Direction::Backward,
            };
            let traj = integrate_orbit(flow, p0, dir, opts).ok()?;
            let mut points = vec![equilibria[k].position];
            points.extend(traj.samples.iter().map(|s| (s.x, s.y)));
            let limit = resolve(traj.end(), traj.terminal, equilibria);
            Some(Separatrix {
                saddle: k,
                saddle_name: name,
                manifold,
                sign,
                eigenvalue: lambda,
                eigenvector: v,
                points,
                limit,
            })
        })
        .collect();
    set.curves = curves.into_iter().flatten().collect();
    set
}
