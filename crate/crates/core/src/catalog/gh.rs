use super::{FamilyDescriptor, FamilyKind, SummandSet, TypeIFamily};
use serde::Serialize;
use std::collections::BTreeMap;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum GHLimitKind {
    Point,
    NamedSpace,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum SpaceClass {
    Grassmannian,
    ComplexStructures,
    OrientedGrassmannian,
    SymmetricPair,
    BorelDeSiebenthal,
    Point,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GHLimitLabel {
    pub kind: GHLimitKind,
    pub name: String,
    pub space_class: SpaceClass,
    pub dim: u64,
    pub metric: &'static str,
}

impl GHLimitLabel {
    pub fn point() -> Self {
        GHLimitLabel {
            kind: GHLimitKind::Point,
            name: "point".into(),
            space_class: SpaceClass::Point,
            dim: 0,
            metric: "normal",
        }
    }

    fn named(name: String, space_class: SpaceClass, dim: u64) -> Self {
        GHLimitLabel {
            kind: GHLimitKind::NamedSpace,
            name,
            space_class,
            dim,
            metric: "normal",
        }
    }

    pub fn is_point(&self) -> bool {
        self.kind == GHLimitKind::Point
    }
}

fn grassmannian(k: u64, n: u64) -> GHLimitLabel {
    GHLimitLabel::named(
        format!("Gr_{k}(C^{n})"),
        SpaceClass::Grassmannian,
        2 * k * (n - k),
    )
}

fn symmetric_target(fam: TypeIFamily) -> (&'static str, u64) {
    match fam {
        TypeIFamily::E8E6Su2 => ("E8/(E7xSU(2))", 112),
        TypeIFamily::E8Su8 => ("E8/Spin(16)", 128),
        TypeIFamily::E7Su5Su3 => ("E7/SU(8)", 70),
        TypeIFamily::E7Su6Su2 => ("E7/(SO(12)xSU(2))", 64),
        TypeIFamily::E6Su3Su3Su2 => ("E6/(SU(6)xSU(2))", 40),
        TypeIFamily::F4Su3Su2 => ("F4/(Sp(3)xSU(2))", 28),
        TypeIFamily::G2U2 => ("G2/SO(4)", 8),
    }
}

fn bds_target(fam: TypeIFamily) -> (&'static str, u64) {
    match fam {
        TypeIFamily::E8E6Su2 => ("E8/(E6xSU(3))", 162),
        TypeIFamily::E8Su8 => ("E8/SU(9)", 168),
        TypeIFamily::E7Su5Su3 | TypeIFamily::E7Su6Su2 => ("E7/(SU(6)xSU(3))", 90),
        TypeIFamily::E6Su3Su3Su2 => ("E6/(SU(3)xSU(3)xSU(3))", 54),
        TypeIFamily::F4Su3Su2 => ("F4/(SU(3)xSU(3))", 36),
        TypeIFamily::G2U2 => ("G2/SU(3)", 6),
    }
}

/// Collapse target for every nonempty kernel pattern (with or without all three summands).
///
/// Keys are sets of vanished summands `m_i`.
pub fn gh_catalog(family: &FamilyDescriptor) -> BTreeMap<SummandSet, GHLimitLabel> {
    let mut out = BTreeMap::new();
    for mask in 1u8..8 {
        out.insert(SummandSet(mask << 1), GHLimitLabel::point());
    }
    let single = |i: usize| SummandSet::of(&[i]);
    match family.kind {
        FamilyKind::Su { m, n, p } => {
            let (m, n, p) = (m as u64, n as u64, p as u64);
            let total = m + n + p;
            out.insert(single(1), grassmannian(m + n, total));
            out.insert(single(3), grassmannian(m + p, total));
            out.insert(single(2), grassmannian(n + p, total));
        }
        FamilyKind::So { l } => {
            let l = l as u64;
            let cs = GHLimitLabel::named(
                format!("SO({})/U({l})", 2 * l),
                SpaceClass::ComplexStructures,
                l * (l - 1),
            );
            out.insert(single(1), cs.clone());
            out.insert(single(2), cs);
            out.insert(
                single(3),
                GHLimitLabel::named(
                    format!("SO({})/(SO({})xSO(2))", 2 * l, 2 * l - 2),
                    SpaceClass::OrientedGrassmannian,
                    4 * (l - 1),
                ),
            );
        }
        FamilyKind::E6 => {
            let e = GHLimitLabel::named("E6/(SO(10)xU(1))".into(), SpaceClass::SymmetricPair, 32);
            for i in 1..=3 {
                out.insert(single(i), e.clone());
            }
        }
        FamilyKind::TypeI { family: fam } => {
            let (sn, sd) = symmetric_target(fam);
            let (bn, bd) = bds_target(fam);
            out.insert(
                single(2),
                GHLimitLabel::named(sn.into(), SpaceClass::SymmetricPair, sd),
            );
            out.insert(
                single(3),
                GHLimitLabel::named(bn.into(), SpaceClass::BorelDeSiebenthal, bd),
            );
        }
    }
    out
}
