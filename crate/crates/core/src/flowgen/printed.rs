//! Closed-form projected systems as published, used as references for the derived fields.

use super::VectorField2;
use crate::catalog::{FamilyDescriptor, FamilyKind, TypeIFamily};
use crate::polyalg::Poly;

const SU_U: &str = "-x(2x-1)(M(4y-1)(x+y-1) + N y(4x+4y-3) + P(x(4y-1) + (1-2y)^2))";
const SU_V: &str = "-y(2y-1)(M(4x-1)(x+y-1) + N(y(4x-1) + (1-2x)^2) + P x(4x+4y-3))";

const SO_U: &str = "-x(2x-1)(L(x(8y-1) + 8y^2 - 7y + 1) - 4y(2x+2y-1))";
const SO_V: &str = "-y(2y-1)(L(8x^2 + x(8y-7) - y + 1) - 4x(2x+2y-1))";

const TYPE_I_U: &str = "x(-4 B^2 C(2x^3(-1+y) - (-1+y)y^2 + x^2(3-4y+3y^2) + x(-1+2y-4y^2+y^3)) \
    - 2 A^2(2 C(-1+y)y(x(-1+y) + y^2) + B((-1+y)y^3 + x^3(-4+8y) \
    + 2x^2(3-9y+4y^2) + x(-2+8y-6y^2+y^3))) + 2 A B(-2 B((-1+y)y^2 \
    + 2x^3(-1+7y) + x^2(3-22y+13y^2) - x(1-7y+4y^2+y^3)) \
    + C(x^3(4-64y) + x^2(-6+86y-60y^2) + y^2(4-5y+y^2) \
    + x(2-24y+18y^2+5y^3))))";
const TYPE_I_V: &str = "y(-4 B^2 C x(2x^2(-1+y) + (-1+y)y^2 + x(1-2y+3y^2)) \
    - 2 A^2(2 C(-1+y)^2(x(-1+y) + y^2) + B((-1+y)^2 y^2 + x^3(-4+8y) \
    + 2x^2(3-8y+4y^2) + x(-2+6y-5y^2+y^3))) + 2 A B(2 B x(1 + x^2(6-14y) \
    - 3y + y^2 + y^3 + x(-7+22y-13y^2)) + C(x^3(28-64y) + (-1+y)^2 y^2 \
    + x^2(-26+88y-60y^2) + x(2-6y-y^2+5y^3))))";

const E8SU8_U: &str =
    "-x(4x^3(55y-12) + x^2(210y^2-370y+72) + x(-100y^2+135y-24) + 10(y^2-1)y^2)";
const E8SU8_V: &str = "-y(20x^3(11y-5) + 2x^2(105y^2-178y+59) - 27x(2y^2-3y+1) + 10(y-1)^2 y^2)";

fn instantiate(family: &FamilyDescriptor, u: &str, v: &str, subs: &[(char, u64)]) -> VectorField2 {
    let fill = |t: &str| {
        let mut s = t.to_string();
        for (c, val) in subs {
            s = s.replace(*c, &format!("({val})"));
        }
        Poly::parse(&s, 2).expect("reference template parses")
    };
    VectorField2 {
        family_id: family.id.clone(),
        u: fill(u),
        v: fill(v),
    }
}

/// The general closed-form system for the family, with its parameters filled in.
pub fn reference_field(family: &FamilyDescriptor) -> VectorField2 {
    match family.kind {
        FamilyKind::Su { m, n, p } => instantiate(
            family,
            SU_U,
            SU_V,
            &[('M', m as u64), ('N', n as u64), ('P', p as u64)],
        ),
        FamilyKind::E6 => instantiate(family, SU_U, SU_V, &[('M', 1), ('N', 1), ('P', 1)]),
        FamilyKind::So { l } => instantiate(family, SO_U, SO_V, &[('L', l as u64)]),
        FamilyKind::TypeI { family: f } => {
            let [d1, d2, d3] = f.dims();
            instantiate(family, TYPE_I_U, TYPE_I_V, &[('A', d1), ('B', d2), ('C', d3)])
        }
    }
}

/// The worked example printed for E8/SU(8)xU(1), normalized by a constant factor.
pub fn e8su8_example() -> VectorField2 {
    let fam = FamilyDescriptor::type_i(TypeIFamily::E8Su8);
    instantiate(&fam, E8SU8_U, E8SU8_V, &[])
}

/// Worked examples for SU(4)/S(U(2)xU(1)xU(1)) and SO(12)/U(1)xU(5), as printed.
pub fn su4_example() -> VectorField2 {
    let fam = FamilyDescriptor::su(2, 1, 1).expect("valid");
    instantiate(
        &fam,
        "x(x^2(6-32y) + x(-32y^2+50y-9) + 16y^2-17y+3)",
        "-y(2y-1)(16x^2 + x(16y-17) - 3y + 3)",
        &[],
    )
}

pub fn so12_example() -> VectorField2 {
    let fam = FamilyDescriptor::so(6).expect("valid");
    instantiate(
        &fam,
        "-x(2x-1)(6(x(8y-1) + 8y^2 - 7y + 1) - 4y(2x+2y-1))",
        "-y(2y-1)(6(8x^2 + x(8y-7) - y + 1) - 4x(2x+2y-1))",
        &[],
    )
}
