//! Helpers shared by the integration tests.
#![allow(dead_code)]

use flagflow::catalog::{FamilyDescriptor, FamilyKind, TypeIFamily};

/// Families whose equilibrium tables are checked against the catalog.
pub fn table_families() -> Vec<FamilyDescriptor> {
    let mut v = vec![
        FamilyDescriptor::su(2, 1, 1).unwrap(),
        FamilyDescriptor::su(1, 1, 1).unwrap(),
        FamilyDescriptor::so(6).unwrap(),
        FamilyDescriptor::e6(),
    ];
    v.extend(TypeIFamily::ALL.map(FamilyDescriptor::type_i));
    v
}

/// Kernel patterns as sorted index lists, all seven nonempty subsets of `{1, 2, 3}`.
pub fn patterns() -> Vec<Vec<usize>> {
    (1u8..8)
        .map(|mask| (1..=3).filter(|i| mask & (1 << (i - 1)) != 0).collect())
        .collect()
}

/// Expected collapse target `(name, dim)` per kernel, transcribed from the limit tables.
pub fn expected(fam: &FamilyDescriptor, kernel: &[usize]) -> Option<(String, u64)> {
    if kernel.len() != 1 {
        return None;
    }
    let i = kernel[0];
    match fam.kind {
        FamilyKind::Su { m, n, p } => {
            let (m, n, p) = (m as u64, n as u64, p as u64);
            let t = m + n + p;
            let k = match i {
                1 => m + n,
                3 => m + p,
                _ => n + p,
            };
            Some((format!("Gr_{k}(C^{t})"), 2 * k * (t - k)))
        }
        FamilyKind::So { l } => {
            let l = l as u64;
            Some(match i {
                3 => (format!("SO({})/(SO({})xSO(2))", 2 * l, 2 * l - 2), 4 * (l - 1)),
                _ => (format!("SO({})/U({l})", 2 * l), l * (l - 1)),
            })
        }
        FamilyKind::E6 => Some(("E6/(SO(10)xU(1))".into(), 32)),
        FamilyKind::TypeI { family } => {
            let (s, b) = match family {
                TypeIFamily::E8E6Su2 => (("E8/(E7xSU(2))", 112), ("E8/(E6xSU(3))", 162)),
                TypeIFamily::E8Su8 => (("E8/Spin(16)", 128), ("E8/SU(9)", 168)),
                TypeIFamily::E7Su5Su3 => (("E7/SU(8)", 70), ("E7/(SU(6)xSU(3))", 90)),
                TypeIFamily::E7Su6Su2 => (("E7/(SO(12)xSU(2))", 64), ("E7/(SU(6)xSU(3))", 90)),
                TypeIFamily::E6Su3Su3Su2 => (("E6/(SU(6)xSU(2))", 40), ("E6/(SU(3)xSU(3)xSU(3))", 54)),
                TypeIFamily::F4Su3Su2 => (("F4/(Sp(3)xSU(2))", 28), ("F4/(SU(3)xSU(3))", 36)),
                TypeIFamily::G2U2 => (("G2/SO(4)", 8), ("G2/SU(3)", 6)),
            };
            match i {
                2 => Some((s.0.into(), s.1)),
                3 => Some((b.0.into(), b.1)),
                _ => None,
            }
        }
    }
}

