use super::SearchOptions;
use crate::flowgen::ProjectedFlow;
use crate::scalar::Real;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum NewtonOutcome {
    Converged((f64, f64)),
    Singular,
    LeftRegion,
    Stalled,
}

/// Iterates may wander this far outside the triangle before the seed is dropped.
const REGION_SLACK: f64 = 0.05;

fn tolerances<T: Real>(opts: &SearchOptions) -> (T, T) {
    let eps = T::epsilon();
    let step = T::lit(opts.step_tol).max(eps * T::lit(16.0));
    let res = T::lit(opts.residual_tol).max(eps * T::lit(64.0));
    (step, res)
}

/// Damped Newton on `(u, v) = 0` from `seed`.
pub fn newton_2d<T: Real>(flow: &ProjectedFlow<T>, seed: (f64, f64), opts: &SearchOptions) -> NewtonOutcome {
    let (step_tol, res_tol) = tolerances::<T>(opts);
    let scale = flow.coeff_scale();
    let slack = T::lit(REGION_SLACK);
    let (mut x, mut y) = (T::lit(seed.0), T::lit(seed.1));
    let merit = |f: [T; 2]| f[0].abs().max(f[1].abs()) / scale;
    let mut f = flow.eval(x, y);
    for _ in 0..opts.max_iter {
        let j = flow.jacobian(x, y);
        let det = j[0][0] * j[1][1] - j[0][1] * j[1][0];
        let jn = j[0][0].abs().max(j[0][1].abs()).max(j[1][0].abs()).max(j[1][1].abs());
        if jn == T::zero() || det.abs() <= T::epsilon() * jn * jn {
            return if merit(f) < res_tol && f == [T::zero(); 2] {
                NewtonOutcome::Converged((x.as_f64(), y.as_f64()))
            } else {
                NewtonOutcome::Singular
            };
        }
        let dx = -(j[1][1] * f[0] - j[0][1] * f[1]) / det;
        let dy = -(-j[1][0] * f[0] + j[0][0] * f[1]) / det;
        let m0 = merit(f);
        let mut lambda = T::one();
        let mut next = None;
        for _ in 0..30 {
            let (nx, ny) = (x + lambda * dx, y + lambda * dy);
            let nf = flow.eval(nx, ny);
            if merit(nf) <= m0 || m0 == T::zero() {
                next = Some((nx, ny, nf));
                break;
            }
            lambda = lambda * T::lit(0.5);
        }
        let Some((nx, ny, nf)) = next else {
            return if m0 < res_tol {
                NewtonOutcome::Converged((x.as_f64(), y.as_f64()))
            } else {
                NewtonOutcome::Stalled
            };
        };
        let step = (lambda * dx).abs().max((lambda * dy).abs());
        x = nx;
        y = ny;
        f = nf;
        if x < -slack || y < -slack || x + y > T::one() + slack || !x.is_finite() || !y.is_finite() {
            return NewtonOutcome::LeftRegion;
        }
        if step < step_tol && merit(f) < res_tol {
            return NewtonOutcome::Converged((x.as_f64(), y.as_f64()));
        }
    }
    NewtonOutcome::Stalled
}

/// Edges of the triangle, each parametrized by `t` in `[0, 1]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Edge {
    /// `x = 0`, `y = t`.
    Left,
    /// `y = 0`, `x = t`.
    Bottom,
    /// `x = t`, `y = 1 - t`.
    Hypotenuse,
}

impl Edge {
    pub const ALL: [Edge; 3] = [Edge::Left, Edge::Bottom, Edge::Hypotenuse];

    pub fn point<T: Real>(self, t: T) -> (T, T) {
        match self {
            Edge::Left => (T::zero(), t),
            Edge::Bottom => (t, T::zero()),
            Edge::Hypotenuse => (t, T::one() - t),
        }
    }

    /// The field component that must vanish on the edge, with its derivative in `t`.
    ///
    /// The other component vanishes identically there (edge tangency).
    fn residual<T: Real>(self, flow: &ProjectedFlow<T>, t: T) -> (T, T) {
        let (x, y) = self.point(t);
        let [u, v] = flow.eval(x, y);
        let j = flow.jacobian(x, y);
        match self {
            Edge::Left => (v, j[1][1]),
            Edge::Bottom => (u, j[0][0]),
            Edge::Hypotenuse => (u, j[0][0] - j[0][1]),
        }
    }
}

/// Newton along one edge of the triangle for zeros where the full 2-D Jacobian is degenerate.
pub fn newton_1d<T: Real>(flow: &ProjectedFlow<T>, edge: Edge, t0: f64, opts: &SearchOptions) -> NewtonOutcome {
    let (step_tol, res_tol) = tolerances::<T>(opts);
    let scale = flow.coeff_scale();
    let slack = T::lit(REGION_SLACK);
    let mut t = T::lit(t0);
    let (mut g, mut dg) = edge.residual(flow, t);
    for _ in 0..opts.max_iter {
        if g == T::zero() {
            let (x, y) = edge.point(t);
            return NewtonOutcome::Converged((x.as_f64(), y.as_f64()));
        }
        if dg == T::zero() || !dg.is_finite() {
            return NewtonOutcome::Singular;
        }
        let d = -g / dg;
        let mut lambda = T::one();
        let mut accepted = false;
        for _ in 0..30 {
            let nt = t + lambda * d;
            let (ng, ndg) = edge.residual(flow, nt);
            if ng.abs() <= g.abs() {
                t = nt;
                g = ng;
                dg = ndg;
                accepted = true;
                break;
            }
            lambda = lambda * T::lit(0.5);
        }
        if !accepted {
            return NewtonOutcome::Stalled;
        }
        if t < -slack || t > T::one() + slack {
            return NewtonOutcome::LeftRegion;
        }
        if (lambda * d).abs() < step_tol && g.abs() / scale < res_tol {
            let (x, y) = edge.point(t);
            return NewtonOutcome::Converged((x.as_f64(), y.as_f64()));
        }
    }
    NewtonOutcome::Stalled
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::FamilyDescriptor;

    #[test]
    fn converges_to_su211_n() {
        let flow = ProjectedFlow::<f64>::new(&FamilyDescriptor::su(2, 1, 1).unwrap());
        match newton_2d(&flow, (0.36, 0.39), &SearchOptions::default()) {
            NewtonOutcome::Converged(p) => {
                assert!((p.0 - 0.375).abs() < 1e-12 && (p.1 - 0.375).abs() < 1e-12)
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn edge_newton_finds_midpoint() {
        let flow = ProjectedFlow::<f64>::new(&FamilyDescriptor::su(2, 1, 1).unwrap());
        match newton_1d(&flow, Edge::Left, 0.45, &SearchOptions::default()) {
            NewtonOutcome::Converged(p) => assert!((p.1 - 0.5).abs() < 1e-12 && p.0 == 0.0),
            other => panic!("{other:?}"),
        }
    }
}
