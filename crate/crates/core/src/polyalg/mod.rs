//! Sparse multivariate polynomials in `x, y` or `x, y, z`.
//!
//! Coefficients are generic; the field derivation runs over exact rationals
//! ([`Rational`]) and the numeric code converts the finished polynomials to a
//! floating point coefficient type once with [`Poly::to_real`].
//!
//! Terms live in a `BTreeMap` keyed by [`Exponent`], whose ordering is graded
//! lexicographic. Zero coefficients are never stored, so structural equality
//! is polynomial equality.

mod text;

pub use text::ParseError;

use crate::scalar::Real;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt::{Debug, Display};
use std::ops::{Add, Mul, Neg, Sub};
use thiserror::Error;

/// Exact arbitrary-precision rational, always in lowest terms.
pub type Rational = BigRational;

/// Builds the rational `num / den`.
///
/// Panics if `den == 0`.
pub fn rat(num: i64, den: i64) -> Rational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

/// Integer as a rational.
pub fn int(v: i64) -> Rational {
    BigRational::from_integer(BigInt::from(v))
}

/// Coefficient ring requirements.
pub trait Coefficient:
    Clone
    + PartialEq
    + Debug
    + Display
    + Zero
    + One
    + Signed
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
{
}

impl<T> Coefficient for T where
    T: Clone
        + PartialEq
        + Debug
        + Display
        + Zero
        + One
        + Signed
        + Add<Output = T>
        + Sub<Output = T>
        + Mul<Output = T>
        + Neg<Output = T>
{
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, serde::Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Var {
    X,
    Y,
    Z,
}

impl Var {
    pub const ALL: [Var; 3] = [Var::X, Var::Y, Var::Z];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn symbol(self) -> char {
        ['x', 'y', 'z'][self.index()]
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyError {
    #[error("arity mismatch: {left} vs {right}")]
    ArityMismatch { left: usize, right: usize },
    #[error("variable {var:?} not available in arity {arity}")]
    VariableOutOfRange { var: Var, arity: usize },
    #[error("unsupported arity {0} (expected 2 or 3)")]
    InvalidArity(usize),
    #[error("expected {expected} coordinates, got {got}")]
    PointLength { expected: usize, got: usize },
}

/// Exponent tuple `(e_x, e_y, e_z)`; unused trailing variables stay zero.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Exponent(pub [u32; 3]);

impl Exponent {
    pub const ONE: Exponent = Exponent([0, 0, 0]);

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn of(self, var: Var) -> u32 {
        self.0[var.index()]
    }

    fn plus(self, other: Exponent) -> Exponent {
        Exponent([
            self.0[0] + other.0[0],
            self.0[1] + other.0[1],
            self.0[2] + other.0[2],
        ])
    }
}

// Graded lexicographic: total degree first, then x, then y, then z.
impl Ord for Exponent {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Exponent {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
}

/// Sparse polynomial with coefficients in `C`.
#[derive(Debug, Clone, PartialEq)]
pub struct Poly<C> {
    arity: usize,
    terms: BTreeMap<Exponent, C>,
}

fn check_arity(arity: usize) -> Result<(), PolyError> {
    if arity == 2 || arity == 3 {
        Ok(())
    } else {
        Err(PolyError::InvalidArity(arity))
    }
}

impl<C: Coefficient> Poly<C> {
    pub fn zero(arity: usize) -> Result<Self, PolyError> {
        check_arity(arity)?;
        Ok(Poly {
            arity,
            terms: BTreeMap::new(),
        })
    }

    pub fn constant(c: C, arity: usize) -> Result<Self, PolyError> {
        Self::monomial(c, Exponent::ONE, arity)
    }

    pub fn var(var: Var, arity: usize) -> Result<Self, PolyError> {
        let mut e = [0; 3];
        e[var.index()] = 1;
        Self::monomial(C::one(), Exponent(e), arity)
    }

    pub fn monomial(c: C, exp: Exponent, arity: usize) -> Result<Self, PolyError> {
        let mut p = Self::zero(arity)?;
        if arity == 2 && exp.0[2] != 0 {
            return Err(PolyError::VariableOutOfRange { var: Var::Z, arity });
        }
        p.add_term(exp, c);
        Ok(p)
    }

    /// Builds a polynomial from `(coefficient, exponents)` pairs, merging duplicates.
    pub fn from_terms<I>(arity: usize, terms: I) -> Result<Self, PolyError>
    where
        I: IntoIterator<Item = (C, [u32; 3])>,
    {
        let mut p = Self::zero(arity)?;
        for (c, e) in terms {
            if arity == 2 && e[2] != 0 {
                return Err(PolyError::VariableOutOfRange { var: Var::Z, arity });
            }
            p.add_term(Exponent(e), c);
        }
        Ok(p)
    }

    fn add_term(&mut self, exp: Exponent, c: C) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&exp) {
            Some(existing) => {
                let sum = existing.clone() + c;
                if sum.is_zero() {
                    self.terms.remove(&exp);
                } else {
                    *existing = sum;
                }
            }
            None => {
                self.terms.insert(exp, c);
            }
        }
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(Exponent::degree).max()
    }

    pub fn degree_in(&self, var: Var) -> u32 {
        self.terms.keys().map(|e| e.of(var)).max().unwrap_or(0)
    }

    pub fn coeff(&self, exp: [u32; 3]) -> C {
        self.terms.get(&Exponent(exp)).cloned().unwrap_or_else(C::zero)
    }

    /// Terms in descending graded-lex order.
    pub fn terms(&self) -> impl Iterator<Item = (&Exponent, &C)> {
        self.terms.iter().rev()
    }

    fn same_arity(&self, other: &Self) -> Result<(), PolyError> {
        if self.arity == other.arity {
            Ok(())
        } else {
            Err(PolyError::ArityMismatch {
                left: self.arity,
                right: other.arity,
            })
        }
    }

    fn check_var(&self, var: Var) -> Result<(), PolyError> {
        if var.index() < self.arity {
            Ok(())
        } else {
            Err(PolyError::VariableOutOfRange {
                var,
                arity: self.arity,
            })
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self, PolyError> {
        self.same_arity(other)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(*e, c.clone());
        }
        Ok(out)
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self, PolyError> {
        self.same_arity(other)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(*e, -c.clone());
        }
        Ok(out)
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self, PolyError> {
        self.same_arity(other)?;
        let mut out = Poly {
            arity: self.arity,
            terms: BTreeMap::new(),
        };
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                out.add_term(ea.plus(*eb), ca.clone() * cb.clone());
            }
        }
        Ok(out)
    }

    pub fn arith(op: ArithOp, p: &Self, q: &Self) -> Result<Self, PolyError> {
        match op {
            ArithOp::Add => p.try_add(q),
            ArithOp::Sub => p.try_sub(q),
            ArithOp::Mul => p.try_mul(q),
        }
    }

    pub fn scale(&self, c: &C) -> Self {
        let mut out = Poly {
            arity: self.arity,
            terms: BTreeMap::new(),
        };
        for (e, a) in &self.terms {
            out.add_term(*e, a.clone() * c.clone());
        }
        out
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::constant(C::one(), self.arity).expect("valid arity");
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    /// Exact partial derivative.
    pub fn diff(&self, var: Var) -> Result<Self, PolyError> {
        self.check_var(var)?;
        let i = var.index();
        let mut out = Poly {
            arity: self.arity,
            terms: BTreeMap::new(),
        };
        for (e, c) in &self.terms {
            let k = e.0[i];
            if k == 0 {
                continue;
            }
            let mut ne = e.0;
            ne[i] -= 1;
            let mut factor = C::zero();
            for _ in 0..k {
                factor = factor + C::one();
            }
            out.add_term(Exponent(ne), c.clone() * factor);
        }
        Ok(out)
    }

    /// Exchanges the variables `a` and `b`.
    pub fn swap(&self, a: Var, b: Var) -> Result<Self, PolyError> {
        self.check_var(a)?;
        self.check_var(b)?;
        let mut out = Self::zero(self.arity)?;
        for (e, c) in &self.terms {
            let mut ne = e.0;
            ne.swap(a.index(), b.index());
            out.terms.insert(Exponent(ne), c.clone());
        }
        Ok(out)
    }

    /// Replaces `var` by `replacement` (same arity) and expands.
    pub fn substitute(&self, var: Var, replacement: &Self) -> Result<Self, PolyError> {
        self.check_var(var)?;
        self.same_arity(replacement)?;
        let i = var.index();
        let top = self.degree_in(var) as usize;
        let mut powers = Vec::with_capacity(top + 1);
        powers.push(Self::constant(C::one(), self.arity)?);
        for k in 1..=top {
            let next = &powers[k - 1] * replacement;
            powers.push(next);
        }
        let mut out = Self::zero(self.arity)?;
        for (e, c) in &self.terms {
            let k = e.0[i] as usize;
            let mut rest = e.0;
            rest[i] = 0;
            let head = Poly::monomial(c.clone(), Exponent(rest), self.arity)?;
            out = out.try_add(&(&head * &powers[k]))?;
        }
        Ok(out)
    }

    /// `p(x, y, 1 - x - y)` as a polynomial in `x, y`.
    pub fn substitute_z(&self) -> Result<Self, PolyError> {
        if self.arity != 3 {
            return Err(PolyError::InvalidArity(self.arity));
        }
        let one = Self::constant(C::one(), 3)?;
        let x = Self::var(Var::X, 3)?;
        let y = Self::var(Var::Y, 3)?;
        let simplex = &(&one - &x) - &y;
        let lifted = self.substitute(Var::Z, &simplex)?;
        Ok(Poly {
            arity: 2,
            terms: lifted.terms,
        })
    }

    /// Whether every term contains `var`, i.e. `var` divides the polynomial.
    pub fn divisible_by(&self, var: Var) -> bool {
        self.terms.keys().all(|e| e.of(var) > 0)
    }

    /// Evaluation; exact for exact coefficient types.
    pub fn eval(&self, point: &[C]) -> Result<C, PolyError> {
        if point.len() != self.arity {
            return Err(PolyError::PointLength {
                expected: self.arity,
                got: point.len(),
            });
        }
        let mut powers: Vec<Vec<C>> = Vec::with_capacity(self.arity);
        for (i, v) in point.iter().enumerate() {
            let top = self.degree_in(Var::ALL[i]) as usize;
            let mut row = Vec::with_capacity(top + 1);
            row.push(C::one());
            for k in 1..=top {
                let next = row[k - 1].clone() * v.clone();
                row.push(next);
            }
            powers.push(row);
        }
        let mut acc = C::zero();
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for (i, row) in powers.iter().enumerate() {
                let k = e.0[i] as usize;
                if k > 0 {
                    t = t * row[k].clone();
                }
            }
            acc = acc + t;
        }
        Ok(acc)
    }

    pub fn map_coeffs<D: Coefficient>(&self, mut f: impl FnMut(&C) -> D) -> Poly<D> {
        let mut out = Poly {
            arity: self.arity,
            terms: BTreeMap::new(),
        };
        for (e, c) in &self.terms {
            out.add_term(*e, f(c));
        }
        out
    }

    /// Largest absolute coefficient (zero for the zero polynomial).
    pub fn max_abs_coeff(&self) -> C
    where
        C: PartialOrd,
    {
        self.terms
            .values()
            .map(Signed::abs)
            .fold(C::zero(), |a, b| if b > a { b } else { a })
    }
}

impl Poly<Rational> {
    /// Converts the exact coefficients to a floating point type.
    pub fn to_real<T: Real>(&self) -> Poly<T> {
        self.map_coeffs(|c| T::lit(c.to_f64().expect("rational converts to f64")))
    }

    /// Whether `self == c * other` for a single positive rational `c`; returns that `c`.
    pub fn positive_multiple_of(&self, other: &Self) -> Option<Rational> {
        if self.arity != other.arity || self.terms.len() != other.terms.len() {
            return None;
        }
        let (e0, c0) = other.terms.iter().next()?;
        let ratio = self.terms.get(e0)? / c0;
        if !ratio.is_positive() {
            return None;
        }
        if *self == other.scale(&ratio) {
            Some(ratio)
        } else {
            None
        }
    }
}

/// Fast evaluation for the two-variable float fields used by the integrator.
impl<T: Real> Poly<T> {
    pub fn eval2(&self, x: T, y: T) -> T {
        let mut px = [T::one(); 16];
        let mut py = [T::one(); 16];
        for k in 1..16 {
            px[k] = px[k - 1] * x;
            py[k] = py[k - 1] * y;
        }
        self.terms
            .iter()
            .map(|(e, c)| *c * px[e.0[0] as usize] * py[e.0[1] as usize])
            .sum()
    }
}

macro_rules! forward_binop {
    ($tr:ident, $method:ident, $via:ident) => {
        impl<C: Coefficient> $tr<&Poly<C>> for &Poly<C> {
            type Output = Poly<C>;
            /// Panics on arity mismatch; use the `try_*` form to get an error instead.
            fn $method(self, rhs: &Poly<C>) -> Poly<C> {
                self.$via(rhs).expect("operands share arity")
            }
        }
        impl<C: Coefficient> $tr<Poly<C>> for Poly<C> {
            type Output = Poly<C>;
            fn $method(self, rhs: Poly<C>) -> Poly<C> {
                (&self).$via(&rhs).expect("operands share arity")
            }
        }
    };
}

forward_binop!(Add, add, try_add);
forward_binop!(Sub, sub, try_sub);
forward_binop!(Mul, mul, try_mul);

impl<C: Coefficient> Neg for &Poly<C> {
    type Output = Poly<C>;
    fn neg(self) -> Poly<C> {
        self.scale(&-C::one())
    }
}

impl<C: Coefficient> Neg for Poly<C> {
    type Output = Poly<C>;
    fn neg(self) -> Poly<C> {
        self.scale(&-C::one())
    }
}
