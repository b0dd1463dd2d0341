//! Ricci field, scalar curvature, Lyapunov function and the projected planar field.
//!
//! The exact path goes Laurent Ricci components -> cleared field `(F, G, H)`
//! -> simplex field `(A, B, C)` -> `u = A(x, y, 1-x-y)`, `v = B(x, y, 1-x-y)`.
//! [`ricci_components`] evaluates the same formulas in floating point and is
//! kept independent of the exact path so the two can be checked against each other.

mod exact;
pub mod printed;
mod ricci;

pub use exact::{ricci_laurent, Laurent};
pub use ricci::ricci_components;

use crate::catalog::FamilyDescriptor;
use crate::polyalg::{Poly, Rational, Var};
use crate::scalar::Real;
use num_traits::ToPrimitive;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum FlowError {
    #[error("metric coefficients must be positive and finite, got ({x}, {y}, {z})")]
    Domain { x: f64, y: f64, z: f64 },
}

/// Invariant metric `x B1 + y B2 + z B3`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Metric3<T> {
    pub x: T,
    pub y: T,
    pub z: T,
}

impl<T: Real> Metric3<T> {
    pub fn new(x: T, y: T, z: T) -> Self {
        Metric3 { x, y, z }
    }

    /// `(x, y, 1 - x - y)`.
    pub fn lift(x: T, y: T) -> Self {
        Metric3 {
            x,
            y,
            z: T::one() - x - y,
        }
    }

    pub fn scaled(self, s: T) -> Self {
        Metric3 {
            x: self.x * s,
            y: self.y * s,
            z: self.z * s,
        }
    }

    pub fn as_array(self) -> [T; 3] {
        [self.x, self.y, self.z]
    }

    fn check(&self) -> Result<(), FlowError> {
        let ok = |v: T| v > T::zero() && v.is_finite();
        if ok(self.x) && ok(self.y) && ok(self.z) {
            Ok(())
        } else {
            Err(FlowError::Domain {
                x: self.x.as_f64(),
                y: self.y.as_f64(),
                z: self.z.as_f64(),
            })
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RicciComponents<T> {
    pub r_x: T,
    pub r_y: T,
    pub r_z: T,
}

impl<T: Real> RicciComponents<T> {
    pub fn as_array(self) -> [T; 3] {
        [self.r_x, self.r_y, self.r_z]
    }
}

/// `S = d1 r_x + d2 r_y + d3 r_z`.
pub fn scalar_curvature<T: Real>(family: &FamilyDescriptor, g: Metric3<T>) -> Result<T, FlowError> {
    let r = ricci_components(family, g)?;
    let [d1, d2, d3] = family.dims.map(|d| T::lit(d as f64));
    Ok(d1 * r.r_x + d2 * r.r_y + d3 * r.r_z)
}

/// `L = -S * (x^d1 y^d2 z^d3)^(1/d)`: scale invariant and nonincreasing along the flow.
pub fn lyapunov_value<T: Real>(family: &FamilyDescriptor, g: Metric3<T>) -> Result<T, FlowError> {
    let s = scalar_curvature(family, g)?;
    let [d1, d2, d3] = family.dims.map(|d| T::lit(d as f64));
    let d = T::lit(family.total_dim as f64);
    let log_vol = (d1 * g.x.ln() + d2 * g.y.ln() + d3 * g.z.ln()) / d;
    Ok(-s * log_vol.exp())
}

/// Cleared polynomial Ricci field `(F, G, H) = f * (-2x r_x, -2y r_y, -2z r_z)`.
pub fn cleared_field(family: &FamilyDescriptor) -> [Poly<Rational>; 3] {
    exact::cleared(family, &family.clearing_factor())
}

/// Field tangent to the plane `x + y + z = 1`: `A = F - (F+G+H) x`, and so on.
pub fn simplex_field(family: &FamilyDescriptor) -> [Poly<Rational>; 3] {
    let [f, g, h] = cleared_field(family);
    let sum = &(&f + &g) + &h;
    let x = Poly::var(Var::X, 3).expect("arity 3");
    let y = Poly::var(Var::Y, 3).expect("arity 3");
    let z = Poly::var(Var::Z, 3).expect("arity 3");
    [&f - &(&sum * &x), &g - &(&sum * &y), &h - &(&sum * &z)]
}

/// Planar projected field `Y = (u, v)` on the triangle `x, y > 0, x + y < 1`.
#[derive(Debug, Clone, PartialEq)]
pub struct VectorField2 {
    pub family_id: String,
    pub u: Poly<Rational>,
    pub v: Poly<Rational>,
}

impl VectorField2 {
    pub fn degree(&self) -> u32 {
        self.u.degree().unwrap_or(0).max(self.v.degree().unwrap_or(0))
    }

    /// Exact Jacobian entries `[[u_x, u_y], [v_x, v_y]]`.
    pub fn jacobian(&self) -> [[Poly<Rational>; 2]; 2] {
        let d = |p: &Poly<Rational>, var| p.diff(var).expect("planar variable");
        [
            [d(&self.u, Var::X), d(&self.u, Var::Y)],
            [d(&self.v, Var::X), d(&self.v, Var::Y)],
        ]
    }

    pub fn scale(&self, c: &Rational) -> Self {
        VectorField2 {
            family_id: self.family_id.clone(),
            u: self.u.scale(c),
            v: self.v.scale(c),
        }
    }
}

pub fn projected_field(family: &FamilyDescriptor) -> VectorField2 {
    let [a, b, _] = simplex_field(family);
    VectorField2 {
        family_id: family.id.clone(),
        u: a.substitute_z().expect("arity 3"),
        v: b.substitute_z().expect("arity 3"),
    }
}

/// Dense term list for fast evaluation of a planar polynomial.
#[derive(Debug, Clone)]
struct Dense2<T> {
    terms: Vec<(usize, usize, T)>,
    deg: usize,
}

impl<T: Real> Dense2<T> {
    fn new(p: &Poly<Rational>) -> Self {
        let pf = p.to_real::<T>();
        let terms: Vec<_> = pf
            .terms()
            .map(|(e, c)| (e.0[0] as usize, e.0[1] as usize, *c))
            .collect();
        let deg = terms.iter().map(|t| t.0.max(t.1)).max().unwrap_or(0);
        Dense2 { terms, deg }
    }

    #[inline]
    fn eval(&self, px: &[T], py: &[T]) -> T {
        let mut acc = T::zero();
        for &(i, j, c) in &self.terms {
            acc += c * px[i] * py[j];
        }
        acc
    }
}

/// Floating point projected field with its Jacobian, ready for root finding and integration.
#[derive(Debug, Clone)]
pub struct ProjectedFlow<T> {
    pub family: FamilyDescriptor,
    pub exact: VectorField2,
    u: Dense2<T>,
    v: Dense2<T>,
    jac: [Dense2<T>; 4],
    deg: usize,
    scale: T,
    /// `v(x, y) = u(y, x)` identically; `v` is then evaluated through `u` so the diagonal is kept exactly.
    swap_symmetric: bool,
}

impl<T: Real> ProjectedFlow<T> {
    pub fn new(family: &FamilyDescriptor) -> Self {
        Self::from_field(family, projected_field(family))
    }

    pub fn from_field(family: &FamilyDescriptor, field: VectorField2) -> Self {
        let [[ux, uy], [vx, vy]] = field.jacobian();
        let u = Dense2::new(&field.u);
        let v = Dense2::new(&field.v);
        let jac = [&ux, &uy, &vx, &vy].map(Dense2::new);
        let deg = u.deg.max(v.deg);
        let swap_symmetric = field.u.swap(Var::X, Var::Y).is_ok_and(|s| s == field.v);
        let scale = T::lit(
            field
                .u
                .max_abs_coeff()
                .max(field.v.max_abs_coeff())
                .to_f64()
                .expect("finite rational"),
        );
        ProjectedFlow {
            family: family.clone(),
            exact: field,
            u,
            v,
            jac,
            deg,
            scale,
            swap_symmetric,
        }
    }

    fn powers(&self, x: T, y: T) -> ([T; 16], [T; 16]) {
        let mut px = [T::one(); 16];
        let mut py = [T::one(); 16];
        for k in 1..=self.deg {
            px[k] = px[k - 1] * x;
            py[k] = py[k - 1] * y;
        }
        (px, py)
    }

    #[inline]
    pub fn eval(&self, x: T, y: T) -> [T; 2] {
        let (px, py) = self.powers(x, y);
        if self.swap_symmetric {
            return [self.u.eval(&px, &py), self.u.eval(&py, &px)];
        }
        [self.u.eval(&px, &py), self.v.eval(&px, &py)]
    }

    /// `[[u_x, u_y], [v_x, v_y]]` at `(x, y)`.
    pub fn jacobian(&self, x: T, y: T) -> [[T; 2]; 2] {
        let (px, py) = self.powers(x, y);
        let [ux, uy, vx, vy] = &self.jac;
        if self.swap_symmetric {
            return [
                [ux.eval(&px, &py), uy.eval(&px, &py)],
                [uy.eval(&py, &px), ux.eval(&py, &px)],
            ];
        }
        [
            [ux.eval(&px, &py), uy.eval(&px, &py)],
            [vx.eval(&px, &py), vy.eval(&px, &py)],
        ]
    }

    pub fn is_swap_symmetric(&self) -> bool {
        self.swap_symmetric
    }

    /// Largest absolute coefficient of `u` and `v`; residuals are measured relative to it.
    pub fn coeff_scale(&self) -> T {
        self.scale
    }

    /// Lyapunov value at the lifted metric; `None` off the open triangle.
    pub fn lyapunov(&self, x: T, y: T) -> Option<T> {
        lyapunov_value(&self.family, Metric3::lift(x, y)).ok()
    }
}
