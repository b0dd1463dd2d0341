//! Floating point Ricci components, written directly from the per-family formulas.

use super::{FlowError, Metric3, RicciComponents};
use crate::catalog::{FamilyDescriptor, FamilyKind};
use crate::scalar::Real;

pub fn ricci_components<T: Real>(
    family: &FamilyDescriptor,
    g: Metric3<T>,
) -> Result<RicciComponents<T>, FlowError> {
    g.check()?;
    let Metric3 { x, y, z } = g;
    let half = T::lit(0.5);
    let a = x / (y * z);
    let b = y / (x * z);
    let c = z / (x * y);
    let r = match family.kind {
        FamilyKind::Su { m, n, p } => {
            let (m, n, p) = (T::lit(m as f64), T::lit(n as f64), T::lit(p as f64));
            let c0 = m * n * p / (m + n + p);
            let four = T::lit(4.0);
            RicciComponents {
                r_x: half / x + c0 / (four * m * n) * (a - c - b),
                r_y: half / y + c0 / (four * m * p) * (b - a - c),
                r_z: half / z + c0 / (four * n * p) * (c - a - b),
            }
        }
        FamilyKind::E6 => {
            let k = T::lit(1.0 / 12.0);
            RicciComponents {
                r_x: k * (a - b - c) + half / x,
                r_y: k * (-a + b - c) + half / y,
                r_z: k * (-a - b + c) + half / z,
            }
        }
        FamilyKind::So { l } => {
            let l = T::lit(l as f64);
            let k = (l - T::lit(2.0)) / (T::lit(8.0) * (l - T::one()));
            let kz = T::one() / (T::lit(4.0) * (l - T::one()));
            RicciComponents {
                r_x: k * (a - b - c) + half / x,
                r_y: k * (-a + b - c) + half / y,
                r_z: kz * (-a - b + c) + half / z,
            }
        }
        FamilyKind::TypeI { family } => {
            let [d1, d2, d3] = family.dims().map(|d| T::lit(d as f64));
            let dd = d1 + T::lit(4.0) * d2 + T::lit(9.0) * d3;
            let s = -d1 * d2 - T::lit(2.0) * d1 * d3 + d2 * d3;
            let two = T::lit(2.0);
            let four = T::lit(4.0);
            RicciComponents {
                r_x: y * s / (two * x * x * d1 * dd)
                    + d3 * (d1 + d2) / (two * d1 * dd) * (a - c - b)
                    + half / x,
                r_y: -s / (four * d2 * dd) * (y / (x * x) - two / y)
                    + d3 * (d1 + d2) / (two * d2 * dd) * (-a - c + b)
                    + half / y,
                r_z: (d1 + d2) / (two * dd) * (-a + c - b) + half / z,
            }
        }
    };
    Ok(r)
}
