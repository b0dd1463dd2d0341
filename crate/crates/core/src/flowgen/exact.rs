//! Exact Ricci components as Laurent polynomials in `x, y, z`.

use crate::catalog::{ClearingFactor, FamilyDescriptor, FamilyKind};
use crate::polyalg::{int, rat, Poly, Rational};
use num_traits::Zero;
use std::collections::BTreeMap;

/// Sum of `coeff * x^a y^b z^c` with integer (possibly negative) exponents.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct Laurent {
    terms: BTreeMap<[i32; 3], Rational>,
}

impl Laurent {
    fn add(&mut self, c: Rational, e: [i32; 3]) {
        let slot = self.terms.entry(e).or_insert_with(Rational::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&e);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&[i32; 3], &Rational)> {
        self.terms.iter()
    }

    /// Multiplies by `coeff * x^e` and returns the result as a polynomial.
    ///
    /// Returns `None` if a negative exponent survives.
    pub fn clear(&self, coeff: &Rational, e: [i32; 3]) -> Option<Poly<Rational>> {
        let mut out = Vec::with_capacity(self.terms.len());
        for (k, c) in &self.terms {
            let mut pe = [0u32; 3];
            for i in 0..3 {
                let s = k[i] + e[i];
                if s < 0 {
                    return None;
                }
                pe[i] = s as u32;
            }
            out.push((c * coeff, pe));
        }
        Some(Poly::from_terms(3, out).expect("arity 3"))
    }
}

const INV_X: [i32; 3] = [-1, 0, 0];
const INV_Y: [i32; 3] = [0, -1, 0];
const INV_Z: [i32; 3] = [0, 0, -1];
// x/(yz), y/(xz), z/(xy)
const A: [i32; 3] = [1, -1, -1];
const B: [i32; 3] = [-1, 1, -1];
const C: [i32; 3] = [-1, -1, 1];

/// `1/(2 x_k) + coeff * (sa*A + sb*B + sc*C)`.
fn bracket(inv: [i32; 3], coeff: Rational, signs: [i64; 3]) -> Laurent {
    let mut l = Laurent::default();
    l.add(rat(1, 2), inv);
    for (s, e) in signs.iter().zip([A, B, C]) {
        l.add(&coeff * int(*s), e);
    }
    l
}

pub fn ricci_laurent(family: &FamilyDescriptor) -> [Laurent; 3] {
    match family.kind {
        FamilyKind::Su { m, n, p } => {
            let (m, n, p) = (m as i64, n as i64, p as i64);
            let c0 = rat(m * n * p, m + n + p);
            [
                bracket(INV_X, &c0 * rat(1, 4 * m * n), [1, -1, -1]),
                bracket(INV_Y, &c0 * rat(1, 4 * m * p), [-1, 1, -1]),
                bracket(INV_Z, &c0 * rat(1, 4 * n * p), [-1, -1, 1]),
            ]
        }
        FamilyKind::E6 => [
            bracket(INV_X, rat(1, 12), [1, -1, -1]),
            bracket(INV_Y, rat(1, 12), [-1, 1, -1]),
            bracket(INV_Z, rat(1, 12), [-1, -1, 1]),
        ],
        FamilyKind::So { l } => {
            let l = l as i64;
            let k = rat(l - 2, 8 * (l - 1));
            [
                bracket(INV_X, k.clone(), [1, -1, -1]),
                bracket(INV_Y, k, [-1, 1, -1]),
                bracket(INV_Z, rat(1, 4 * (l - 1)), [-1, -1, 1]),
            ]
        }
        FamilyKind::TypeI { family } => {
            let [d1, d2, d3] = family.dims().map(|d| d as i64);
            let dd = d1 + 4 * d2 + 9 * d3;
            let s = -d1 * d2 - 2 * d1 * d3 + d2 * d3;
            let mut rx = bracket(INV_X, rat(d3 * (d1 + d2), 2 * d1 * dd), [1, -1, -1]);
            rx.add(rat(s, 2 * d1 * dd), [-2, 1, 0]);
            let mut ry = bracket(INV_Y, rat(d3 * (d1 + d2), 2 * d2 * dd), [-1, 1, -1]);
            let t = rat(-s, 4 * d2 * dd);
            ry.add(t.clone(), [-2, 1, 0]);
            ry.add(t * int(-2), INV_Y);
            let rz = bracket(INV_Z, rat(d1 + d2, 2 * dd), [-1, -1, 1]);
            [rx, ry, rz]
        }
    }
}

/// `f * (-2 x_k r_k)` for each component.
pub fn cleared(family: &FamilyDescriptor, cf: &ClearingFactor) -> [Poly<Rational>; 3] {
    let r = ricci_laurent(family);
    let e = cf.exponent.0.map(|v| v as i32);
    let minus_two = int(-2);
    let mut out = Vec::with_capacity(3);
    for (k, rk) in r.iter().enumerate() {
        let mut ek = e;
        ek[k] += 1;
        out.push(
            rk.clear(&(&cf.coeff * &minus_two), ek)
                .expect("clearing factor removes every denominator"),
        );
    }
    out.try_into().expect("three components")
}
