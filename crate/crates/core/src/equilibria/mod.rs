//! Zeros of the projected field on the closed triangle, their linearization and
//! the comparison against the catalog tables.

mod newton;
mod verify;

pub use newton::{newton_1d, newton_2d, Edge, NewtonOutcome};
pub use verify::{verify_catalog, verify_catalog_with, RowReport, VerificationReport};

use crate::catalog::StabilityClass;
use crate::flowgen::ProjectedFlow;
use crate::scalar::Real;
use crate::polyalg::rat;
use num_complex::{Complex, Complex64};
use num_traits::Zero;
use rayon::prelude::*;
use serde::Serialize;

/// Below this `|Re|` an eigenvalue counts as zero.
pub const NONHYPERBOLIC_TOL: f64 = 1e-8;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FoundEquilibrium {
    pub position: (f64, f64),
    /// `max(|u|, |v|)` divided by the largest coefficient of the field.
    pub residual: f64,
    pub eigenvalues: [Complex64; 2],
    pub class: StabilityClass,
    /// For nonhyperbolic points: behaviour of the field on a small arc around the point.
    pub sector_class: Option<StabilityClass>,
    pub matched_label: Option<char>,
    pub boundary: bool,
}

impl FoundEquilibrium {
    /// `sector_class` when the linearization is inconclusive, `class` otherwise.
    pub fn effective_class(&self) -> StabilityClass {
        self.sector_class.unwrap_or(self.class)
    }

    pub fn distance_to(&self, p: (f64, f64)) -> f64 {
        (self.position.0 - p.0).hypot(self.position.1 - p.1)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SearchOptions {
    /// Seeds per axis of the square grid laid over the inflated triangle.
    pub grid: usize,
    pub inflate: f64,
    pub dedupe: f64,
    pub edge_seeds: usize,
    pub residual_tol: f64,
    pub step_tol: f64,
    pub max_iter: usize,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions {
            grid: 200,
            inflate: 1e-3,
            dedupe: 1e-6,
            edge_seeds: 400,
            residual_tol: 1e-11,
            step_tol: 1e-12,
            max_iter: 200,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SearchReport {
    pub equilibria: Vec<FoundEquilibrium>,
    pub seeds_tried: usize,
    pub seeds_converged: usize,
}

/// Eigenvalues of a real 2x2 matrix, sorted by real part then imaginary part.
pub fn eigen_2x2<T: Real>(j: [[T; 2]; 2]) -> [Complex<T>; 2] {
    let two = T::lit(2.0);
    let half_tr = (j[0][0] + j[1][1]) / two;
    // tr^2/4 - det, arranged to avoid cancellation when the diagonal entries are close
    let diff = (j[0][0] - j[1][1]) / two;
    let disc = diff * diff + j[0][1] * j[1][0];
    let mut out = if disc >= T::zero() {
        let s = disc.sqrt();
        [Complex::new(half_tr - s, T::zero()), Complex::new(half_tr + s, T::zero())]
    } else {
        let s = (-disc).sqrt();
        [Complex::new(half_tr, -s), Complex::new(half_tr, s)]
    };
    out.sort_by(|a, b| {
        a.re.partial_cmp(&b.re)
            .unwrap_or(std::cmp::Ordering::Equal)
            .then(a.im.partial_cmp(&b.im).unwrap_or(std::cmp::Ordering::Equal))
    });
    out
}

/// Eigenvalues of the symbolic Jacobian at `p`.
pub fn jacobian_eigen<T: Real>(flow: &ProjectedFlow<T>, p: (T, T)) -> [Complex<T>; 2] {
    eigen_2x2(flow.jacobian(p.0, p.1))
}

pub fn classify_equilibrium(eigs: [Complex64; 2]) -> StabilityClass {
    if eigs.iter().any(|e| e.re.abs() < NONHYPERBOLIC_TOL) {
        StabilityClass::Nonhyperbolic
    } else if eigs.iter().all(|e| e.re > 0.0) {
        StabilityClass::Repeller
    } else if eigs.iter().all(|e| e.re < 0.0) {
        StabilityClass::Attractor
    } else {
        StabilityClass::Saddle
    }
}

pub fn in_closed_triangle(p: (f64, f64), slack: f64) -> bool {
    p.0 >= -slack && p.1 >= -slack && p.0 + p.1 <= 1.0 + slack
}

pub fn on_boundary(p: (f64, f64), tol: f64) -> bool {
    p.0.abs() <= tol || p.1.abs() <= tol || (1.0 - p.0 - p.1).abs() <= tol
}

/// Sign pattern of the radial field component on the part of a small circle that lies in the triangle.
pub fn sector_class<T: Real>(flow: &ProjectedFlow<T>, p: (f64, f64)) -> StabilityClass {
    const RADIUS: f64 = 1e-3;
    const EDGE_GAP: f64 = 0.02;
    const SAMPLES: usize = 1440;
    let inside = |theta: f64| {
        let q = (p.0 + RADIUS * theta.cos(), p.1 + RADIUS * theta.sin());
        q.0 > 0.0 && q.1 > 0.0 && q.0 + q.1 < 1.0
    };
    let (mut pos, mut neg) = (0usize, 0usize);
    for k in 0..SAMPLES {
        let theta = std::f64::consts::TAU * k as f64 / SAMPLES as f64;
        if !(inside(theta) && inside(theta - EDGE_GAP) && inside(theta + EDGE_GAP)) {
            continue;
        }
        let (c, s) = (theta.cos(), theta.sin());
        let [u, v] = flow.eval(T::lit(p.0 + RADIUS * c), T::lit(p.1 + RADIUS * s));
        let radial = u.as_f64() * c + v.as_f64() * s;
        if radial > 0.0 {
            pos += 1;
        } else if radial < 0.0 {
            neg += 1;
        }
    }
    match (pos > 0, neg > 0) {
        (true, false) => StabilityClass::Repeller,
        (false, true) => StabilityClass::Attractor,
        (true, true) => StabilityClass::Saddle,
        (false, false) => StabilityClass::Nonhyperbolic,
    }
}

fn snap(p: (f64, f64), tol: f64) -> (f64, f64) {
    let (mut x, mut y) = p;
    if x.abs() <= tol {
        x = 0.0;
    }
    if y.abs() <= tol {
        y = 0.0;
    }
    if (1.0 - x - y).abs() <= tol {
        if x == 0.0 {
            y = 1.0;
        } else if y == 0.0 {
            x = 1.0;
        } else {
            y = 1.0 - x;
        }
    }
    // adding 0.0 turns -0.0 into 0.0
    (x + 0.0, y + 0.0)
}

/// Best rational approximations of `v` with denominator up to `max_den`, by continued fractions.
fn convergents(v: f64, max_den: i64) -> Vec<(i64, i64)> {
    let mut out = Vec::new();
    let (mut h0, mut h1) = (0i64, 1i64);
    let (mut k0, mut k1) = (1i64, 0i64);
    let mut r = v;
    for _ in 0..40 {
        let a = r.floor();
        if a.abs() > 1e9 {
            break;
        }
        let a = a as i64;
        let (h2, k2) = (a * h1 + h0, a * k1 + k0);
        if k2 > max_den {
            break;
        }
        out.push((h2, k2));
        (h0, h1, k0, k1) = (h1, h2, k1, k2);
        let frac = r - a as f64;
        if frac.abs() < 1e-15 {
            break;
        }
        r = 1.0 / frac;
    }
    out
}

/// Replaces `p` by a nearby rational point if the exact field vanishes there.
///
/// Floating point evaluation near a multiple root only pins it to about the
/// square root of machine precision; the exact check recovers it completely.
pub fn rational_polish<T: Real>(flow: &ProjectedFlow<T>, p: (f64, f64)) -> (f64, f64) {
    const MAX_DEN: i64 = 10_000;
    const RADIUS: f64 = 1e-6;
    let near = |v: f64| -> Vec<(i64, i64)> {
        convergents(v, MAX_DEN)
            .into_iter()
            .filter(|&(a, b)| (a as f64 / b as f64 - v).abs() <= RADIUS)
            .collect()
    };
    for (a, b) in near(p.0) {
        for (c, d) in near(p.1) {
            let pt = [rat(a, b), rat(c, d)];
            let z = |q: &crate::polyalg::Poly<crate::polyalg::Rational>| {
                q.eval(&pt).map(|v| v.is_zero()).unwrap_or(false)
            };
            if z(&flow.exact.u) && z(&flow.exact.v) {
                return (a as f64 / b as f64, c as f64 / d as f64);
            }
        }
    }
    p
}

pub fn scaled_residual<T: Real>(flow: &ProjectedFlow<T>, p: (f64, f64)) -> f64 {
    let [u, v] = flow.eval(T::lit(p.0), T::lit(p.1));
    u.abs().max(v.abs()).as_f64() / flow.coeff_scale().as_f64()
}

/// Builds the record for a zero at `p`: eigenvalues, class and boundary flag.
pub fn describe<T: Real>(flow: &ProjectedFlow<T>, p: (f64, f64)) -> FoundEquilibrium {
    let e = jacobian_eigen(flow, (T::lit(p.0), T::lit(p.1)));
    let eigenvalues = e.map(|c| Complex64::new(c.re.as_f64(), c.im.as_f64()));
    let class = classify_equilibrium(eigenvalues);
    let sector = (class == StabilityClass::Nonhyperbolic).then(|| sector_class(flow, p));
    FoundEquilibrium {
        position: p,
        residual: scaled_residual(flow, p),
        eigenvalues,
        class,
        sector_class: sector,
        matched_label: None,
        boundary: on_boundary(p, 0.0),
    }
}

/// Grid-seeded damped Newton over the inflated triangle plus 1-D Newton along each edge.
/// Merges points closer than `tol`, keeping the lowest residual of each group.
fn cluster(mut pts: Vec<((f64, f64), f64)>, tol: f64) -> Vec<((f64, f64), f64)> {
    pts.sort_by(|a, b| a.0 .0.total_cmp(&b.0 .0).then(a.0 .1.total_cmp(&b.0 .1)));
    let mut out: Vec<((f64, f64), f64)> = Vec::new();
    for (p, r) in pts {
        match out.iter_mut().find(|(q, _)| (q.0 - p.0).hypot(q.1 - p.1) <= tol) {
            Some(c) => {
                if r < c.1 {
                    *c = (p, r);
                }
            }
            None => out.push((p, r)),
        }
    }
    out
}

pub fn find_equilibria<T: Real>(flow: &ProjectedFlow<T>, opts: &SearchOptions) -> SearchReport {
    let delta = opts.inflate;
    let n = opts.grid.max(2);
    let mut seeds = Vec::with_capacity(n * n);
    for i in 0..n {
        for j in 0..n {
            let x = -delta + (1.0 + 2.0 * delta) * i as f64 / (n - 1) as f64;
            let y = -delta + (1.0 + 2.0 * delta) * j as f64 / (n - 1) as f64;
            if x + y <= 1.0 + delta {
                seeds.push((x, y));
            }
        }
    }
    let interior: Vec<Option<(f64, f64)>> = seeds
        .par_iter()
        .map(|&s| match newton_2d(flow, s, opts) {
            NewtonOutcome::Converged(p) => Some(p),
            _ => None,
        })
        .collect();
    let m = opts.edge_seeds.max(2);
    let edge_jobs: Vec<(Edge, f64)> = Edge::ALL
        .iter()
        .flat_map(|&e| (0..m).map(move |k| (e, k as f64 / (m - 1) as f64)))
        .collect();
    let edge: Vec<Option<(f64, f64)>> = edge_jobs
        .par_iter()
        .map(|&(e, t)| match newton_1d(flow, e, t, opts) {
            NewtonOutcome::Converged(p) => Some(p),
            _ => None,
        })
        .collect();
    let seeds_tried = interior.len() + edge.len();
    let candidates: Vec<(f64, f64)> = interior.into_iter().chain(edge).flatten().collect();
    let seeds_converged = candidates.len();

    let accepted: Vec<((f64, f64), f64)> = candidates
        .into_iter()
        .map(|p| snap(p, 1e-9))
        .filter(|&p| in_closed_triangle(p, 0.0))
        .map(|p| (p, scaled_residual(flow, p)))
        .filter(|&(_, r)| r < opts.residual_tol)
        .collect();
    let polished: Vec<((f64, f64), f64)> = cluster(accepted, opts.dedupe)
        .into_par_iter()
        .map(|(p, r)| {
            let q = rational_polish(flow, p);
            if q == p {
                (p, r)
            } else {
                (q, scaled_residual(flow, q))
            }
        })
        .collect();
    let equilibria = cluster(polished, opts.dedupe)
        .into_iter()
        .map(|(p, _)| describe(flow, p))
        .collect();
    SearchReport {
        equilibria,
        seeds_tried,
        seeds_converged,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::FamilyDescriptor;

    #[test]
    fn closed_form_eigenvalues() {
        let e = eigen_2x2([[3.0, 0.0], [0.0, 3.0]]);
        assert_eq!(e, [Complex::new(3.0, 0.0); 2]);
        let e = eigen_2x2([[0.0, -1.0], [1.0, 0.0]]);
        assert_eq!(e, [Complex::new(0.0, -1.0), Complex::new(0.0, 1.0)]);
        let e = eigen_2x2([[2.0, 1.0], [0.0, -1.0]]);
        assert_eq!(e, [Complex::new(-1.0, 0.0), Complex::new(2.0, 0.0)]);
    }

    #[test]
    fn classification_rules() {
        let c = |a: f64, b: f64| classify_equilibrium([Complex64::new(a, 0.0), Complex64::new(b, 0.0)]);
        assert_eq!(c(3.0, 3.0), StabilityClass::Repeller);
        assert_eq!(c(-0.25, 0.5), StabilityClass::Saddle);
        assert_eq!(c(-1e-12, -1.0), StabilityClass::Nonhyperbolic);
        assert_eq!(c(-2.0, -1.0), StabilityClass::Attractor);
    }

    #[test]
    fn su211_origin_and_n() {
        let flow = ProjectedFlow::<f64>::new(&FamilyDescriptor::su(2, 1, 1).unwrap());
        let e = jacobian_eigen(&flow, (0.0, 0.0));
        assert_eq!(e.map(|c| c.re), [3.0, 3.0]);
        let flow = ProjectedFlow::<f64>::new(&FamilyDescriptor::su(1, 1, 1).unwrap());
        let e = jacobian_eigen(&flow, (1.0 / 3.0, 1.0 / 3.0));
        for c in e {
            assert!((c.re - 2.0 / 9.0).abs() < 1e-12 && c.im.abs() < 1e-6);
        }
    }

    #[test]
    fn so12_r() {
        let flow = ProjectedFlow::<f64>::new(&FamilyDescriptor::so(6).unwrap());
        let e = jacobian_eigen(&flow, (0.25, 0.25));
        assert!((e[0].re + 0.5).abs() < 1e-12);
        assert!((e[1].re - 1.5).abs() < 1e-12);
    }

    #[test]
    fn continued_fractions() {
        assert_eq!(convergents(0.375, 100).last(), Some(&(3, 8)));
        assert_eq!(convergents(1.0 - 2e-8, 10_000).last(), Some(&(1, 1)));
        let c = convergents(std::f64::consts::PI, 1000);
        assert_eq!(c.last(), Some(&(355, 113)));
    }

    #[test]
    fn polish_recovers_multiple_root() {
        let flow = ProjectedFlow::<f64>::new(&FamilyDescriptor::type_i(crate::catalog::TypeIFamily::E8E6Su2));
        assert_eq!(rational_polish(&flow, (0.0, 0.9999999821551827)), (0.0, 1.0));
        // not a zero: left alone
        assert_eq!(rational_polish(&flow, (0.3, 0.3)), (0.3, 0.3));
    }

    #[test]
    fn snapping() {
        assert_eq!(snap((1e-10, 0.5), 1e-9), (0.0, 0.5));
        assert_eq!(snap((0.3, 0.7 + 1e-10), 1e-9), (0.3, 0.7));
        assert_eq!(snap((-1e-11, 1.0 + 1e-11), 1e-9), (0.0, 1.0));
        assert_eq!(snap((0.2, 0.2), 1e-9), (0.2, 0.2));
    }
}
