//! Gromov-Hausdorff collapse targets of degenerating invariant metrics.
//!
//! The vanished summands of the limit metric generate, together with `k`, a
//! subalgebra `h`; the limit is `G/H` with its normal metric, a point when `h = g`.

use crate::catalog::{bracket_table, gh_catalog, BracketTable, FamilyDescriptor, FlagType, GHLimitLabel, SpaceClass, SummandSet};
use serde::Serialize;
use thiserror::Error;

/// Lifted metric coordinates below this count as vanished.
pub const KERNEL_EPS: f64 = 1e-6;

const ALL: SummandSet = SummandSet(0b1110);

#[derive(Debug, Error, Clone, PartialEq)]
pub enum GhError {
    #[error("({0}, {1}) is not a degenerate metric: no coordinate below the threshold")]
    NotDegenerate(f64, f64),
    #[error("({0}, {1}) lies outside the closed triangle")]
    OutsideSimplex(f64, f64),
    #[error("{0} is not closed under the bracket table")]
    NotClosed(SummandSet),
    #[error("empty kernel")]
    EmptyKernel,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct KernelPattern {
    pub vanished: SummandSet,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct SubalgebraClosure {
    /// Summands `m_i` in `h` besides `k`.
    pub summands: SummandSet,
    pub is_all: bool,
}

/// Summands whose lifted coordinate in `(x, y, 1 - x - y)` is below `eps`.
pub fn kernel_summands(p: (f64, f64), eps: f64) -> Result<KernelPattern, GhError> {
    let (x, y) = p;
    let z = 1.0 - x - y;
    if x < -eps || y < -eps || z < -eps {
        return Err(GhError::OutsideSimplex(x, y));
    }
    let idx: Vec<usize> = [x, y, z]
        .iter()
        .enumerate()
        .filter(|(_, c)| **c < eps)
        .map(|(i, _)| i + 1)
        .collect();
    if idx.is_empty() {
        return Err(GhError::NotDegenerate(x, y));
    }
    Ok(KernelPattern {
        vanished: SummandSet::of(&idx),
    })
}

fn strip_k(s: SummandSet) -> SummandSet {
    SummandSet(s.0 & !SummandSet::K.0)
}

fn brackets_into(table: &BracketTable, h: SummandSet) -> SummandSet {
    let mut out = SummandSet::default();
    for i in h.summands() {
        for j in h.summands() {
            out = out.union(strip_k(table.get(i, j)));
        }
    }
    out
}

/// Least set containing the kernel and closed under the table.
pub fn subalgebra_closure(table: &BracketTable, kernel: KernelPattern) -> SubalgebraClosure {
    let mut h = strip_k(kernel.vanished);
    loop {
        let next = h.union(brackets_into(table, h));
        if next == h {
            break;
        }
        h = next;
    }
    SubalgebraClosure {
        summands: h,
        is_all: h == ALL,
    }
}

/// `(g, k + h)` symmetric at summand granularity, with `m` the complement of `h`.
pub fn symmetric_pair_check(table: &BracketTable, h: SummandSet) -> Result<bool, GhError> {
    let h = strip_k(h);
    if !brackets_into(table, h).is_subset(h) {
        return Err(GhError::NotClosed(h));
    }
    let m = SummandSet(ALL.0 & !h.0);
    let hk = h.union(SummandSet::K);
    let mut ok = true;
    for i in h.summands() {
        for j in m.summands() {
            ok &= table.get(i, j).is_subset(m);
        }
    }
    for i in m.summands() {
        for j in m.summands() {
            ok &= table.get(i, j).is_subset(hk);
        }
    }
    Ok(ok)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GHLimit {
    pub kernel: SummandSet,
    pub h_summands: SummandSet,
    pub is_point: bool,
    /// Symmetric-pair test of `h`; absent when `h = g`.
    pub symmetric: Option<bool>,
    pub space: GHLimitLabel,
}

pub fn classify_kernel(family: &FamilyDescriptor, kernel: KernelPattern) -> Result<GHLimit, GhError> {
    if strip_k(kernel.vanished) == SummandSet::default() {
        return Err(GhError::EmptyKernel);
    }
    let table = bracket_table(family);
    let closure = subalgebra_closure(&table, kernel);
    if closure.is_all {
        return Ok(GHLimit {
            kernel: kernel.vanished,
            h_summands: closure.summands,
            is_point: true,
            symmetric: None,
            space: GHLimitLabel::point(),
        });
    }
    let symmetric = symmetric_pair_check(&table, closure.summands)?;
    let mut space = gh_catalog(family)
        .remove(&strip_k(kernel.vanished))
        .unwrap_or_else(GHLimitLabel::point);
    if family.flag_type() == FlagType::I && !space.is_point() {
        space.space_class = if symmetric {
            SpaceClass::SymmetricPair
        } else {
            SpaceClass::BorelDeSiebenthal
        };
    }
    Ok(GHLimit {
        kernel: kernel.vanished,
        h_summands: closure.summands,
        is_point: space.is_point(),
        symmetric: Some(symmetric),
        space,
    })
}

/// Collapse target for the degenerate metric at `p` in the closed triangle.
pub fn classify_limit(family: &FamilyDescriptor, p: (f64, f64)) -> Result<GHLimit, GhError> {
    classify_kernel(family, kernel_summands(p, KERNEL_EPS)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::TypeIFamily;

    fn k(s: &[usize]) -> KernelPattern {
        KernelPattern {
            vanished: SummandSet::of(s),
        }
    }

    #[test]
    fn kernels_of_degenerate_points() {
        assert_eq!(kernel_summands((0.0, 0.5), KERNEL_EPS).unwrap(), k(&[1]));
        assert_eq!(kernel_summands((0.5, 0.5), KERNEL_EPS).unwrap(), k(&[3]));
        assert_eq!(kernel_summands((0.0, 0.0), KERNEL_EPS).unwrap(), k(&[1, 2]));
        assert_eq!(
            kernel_summands((0.3, 0.3), KERNEL_EPS),
            Err(GhError::NotDegenerate(0.3, 0.3))
        );
        assert!(matches!(kernel_summands((0.9, 0.9), KERNEL_EPS), Err(GhError::OutsideSimplex(..))));
    }

    #[test]
    fn closures() {
        let t2 = BracketTable::type_ii();
        let t1 = BracketTable::type_i();
        assert_eq!(subalgebra_closure(&t2, k(&[1])).summands, SummandSet::of(&[1]));
        let c = subalgebra_closure(&t1, k(&[1]));
        assert!(c.is_all);
        assert!(subalgebra_closure(&t1, k(&[2, 3])).is_all);
        assert!(subalgebra_closure(&t2, k(&[1, 2])).is_all);
        assert!(!subalgebra_closure(&t1, k(&[3])).is_all);
    }

    #[test]
    fn symmetric_pairs() {
        let t1 = BracketTable::type_i();
        let t2 = BracketTable::type_ii();
        assert_eq!(symmetric_pair_check(&t1, SummandSet::of(&[2])), Ok(true));
        assert_eq!(symmetric_pair_check(&t1, SummandSet::of(&[3])), Ok(false));
        assert_eq!(symmetric_pair_check(&t2, SummandSet::of(&[1])), Ok(true));
        assert!(matches!(
            symmetric_pair_check(&t1, SummandSet::of(&[1])),
            Err(GhError::NotClosed(_))
        ));
    }

    #[test]
    fn documented_limits() {
        let su = FamilyDescriptor::su(2, 1, 1).unwrap();
        let l = classify_limit(&su, (0.0, 0.5)).unwrap();
        assert_eq!(l.space.name, "Gr_3(C^4)");
        assert_eq!(l.space.metric, "normal");
        let so = FamilyDescriptor::so(5).unwrap();
        assert_eq!(classify_limit(&so, (0.5, 0.5)).unwrap().space.name, "SO(10)/(SO(8)xSO(2))");
        let f4 = FamilyDescriptor::type_i(TypeIFamily::F4Su3Su2);
        let l = classify_limit(&f4, (0.5, 0.5)).unwrap();
        assert_eq!((l.space.name.as_str(), l.space.dim), ("F4/(SU(3)xSU(3))", 36));
        assert_eq!(l.space.space_class, SpaceClass::BorelDeSiebenthal);
        let g2 = FamilyDescriptor::type_i(TypeIFamily::G2U2);
        let l = classify_limit(&g2, (0.5, 0.5)).unwrap();
        assert_eq!((l.space.name.as_str(), l.space.dim), ("G2/SU(3)", 6));
        assert!(classify_limit(&g2, (0.0, 0.5)).unwrap().is_point);
        assert!(classify_limit(&g2, (0.0, 0.0)).unwrap().is_point);
    }
}
