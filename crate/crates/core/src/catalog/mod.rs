//! Static data for the three-summand flag manifolds.
//!
//! Parametric families (`su(m,n,p)`, `so(l)`) are generated on demand; the
//! exceptional rows are literal constants.

mod equilibria;
mod gh;

pub use equilibria::{
    reference_equilibria, EigenSource, EquilibriumRecord, MetricKind, RefEigen, RefPosition,
    StabilityClass, E7SU5_PRINTED_SADDLES,
};
pub use gh::{gh_catalog, GHLimitKind, GHLimitLabel, SpaceClass};

use crate::polyalg::{int, Exponent, Rational};
use serde::Serialize;
use std::fmt;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CatalogError {
    #[error("unknown family '{0}'")]
    UnknownFamily(String),
    #[error("family '{family}' {problem}")]
    BadParams { family: String, problem: String },
    #[error("invalid bounds: {0}")]
    InvalidBounds(String),
}

/// The seven exceptional flags with three isotropy summands.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum TypeIFamily {
    E8E6Su2,
    E8Su8,
    E7Su5Su3,
    E7Su6Su2,
    E6Su3Su3Su2,
    F4Su3Su2,
    G2U2,
}

struct TypeIRow {
    fam: TypeIFamily,
    id: &'static str,
    group: &'static str,
    isotropy: &'static str,
    dims: [u64; 3],
}

const TYPE_I_ROWS: [TypeIRow; 7] = [
    TypeIRow {
        fam: TypeIFamily::E8E6Su2,
        id: "e8e6",
        group: "E8",
        isotropy: "E6xSU(2)xU(1)",
        dims: [108, 54, 4],
    },
    TypeIRow {
        fam: TypeIFamily::E8Su8,
        id: "e8su8",
        group: "E8",
        isotropy: "SU(8)xU(1)",
        dims: [112, 56, 16],
    },
    TypeIRow {
        fam: TypeIFamily::E7Su5Su3,
        id: "e7su5",
        group: "E7",
        isotropy: "SU(5)xSU(3)xU(1)",
        dims: [60, 30, 10],
    },
    TypeIRow {
        fam: TypeIFamily::E7Su6Su2,
        id: "e7su6",
        group: "E7",
        isotropy: "SU(6)xSU(2)xU(1)",
        dims: [60, 30, 4],
    },
    TypeIRow {
        fam: TypeIFamily::E6Su3Su3Su2,
        id: "e6su3su3",
        group: "E6",
        isotropy: "SU(3)xSU(3)xSU(2)xU(1)",
        dims: [36, 18, 4],
    },
    TypeIRow {
        fam: TypeIFamily::F4Su3Su2,
        id: "f4",
        group: "F4",
        isotropy: "SU(3)xSU(2)xU(1)",
        dims: [24, 12, 4],
    },
    TypeIRow {
        fam: TypeIFamily::G2U2,
        id: "g2u2",
        group: "G2",
        isotropy: "U(2)",
        dims: [4, 2, 4],
    },
];

impl TypeIFamily {
    pub const ALL: [TypeIFamily; 7] = [
        TypeIFamily::E8E6Su2,
        TypeIFamily::E8Su8,
        TypeIFamily::E7Su5Su3,
        TypeIFamily::E7Su6Su2,
        TypeIFamily::E6Su3Su3Su2,
        TypeIFamily::F4Su3Su2,
        TypeIFamily::G2U2,
    ];

    fn row(self) -> &'static TypeIRow {
        TYPE_I_ROWS.iter().find(|r| r.fam == self).expect("every variant has a row")
    }

    pub fn id(self) -> &'static str {
        self.row().id
    }

    pub fn dims(self) -> [u64; 3] {
        self.row().dims
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum FamilyKind {
    Su { m: u32, n: u32, p: u32 },
    So { l: u32 },
    E6,
    TypeI { family: TypeIFamily },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum FlagType {
    I,
    II,
}

/// Positive monomial `coeff * x^a y^b z^c` that clears denominators of the Ricci field.
#[derive(Debug, Clone, PartialEq)]
pub struct ClearingFactor {
    pub coeff: Rational,
    pub exponent: Exponent,
    pub formula: &'static str,
}

impl fmt::Display for ClearingFactor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b, c] = self.exponent.0;
        let pow = |s: &str, k: u32| match k {
            0 => String::new(),
            1 => format!("*{s}"),
            _ => format!("*{s}^{k}"),
        };
        write!(
            f,
            "{} = {}{}{}{}",
            self.formula,
            self.coeff,
            pow("x", a),
            pow("y", b),
            pow("z", c)
        )
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct FamilyDescriptor {
    pub id: String,
    pub kind: FamilyKind,
    pub dims: [u64; 3],
    pub total_dim: u64,
    pub group_name: String,
    pub isotropy_name: String,
}

impl FamilyDescriptor {
    pub fn su(m: u32, n: u32, p: u32) -> Result<Self, CatalogError> {
        if !(m >= n && n >= p && p > 0) {
            return Err(CatalogError::BadParams {
                family: "su".into(),
                problem: format!("needs m >= n >= p > 0, got ({m},{n},{p})"),
            });
        }
        let (m64, n64, p64) = (m as u64, n as u64, p as u64);
        let dims = [2 * m64 * n64, 2 * m64 * p64, 2 * n64 * p64];
        Ok(FamilyDescriptor {
            id: format!("su({m},{n},{p})"),
            kind: FamilyKind::Su { m, n, p },
            dims,
            total_dim: dims.iter().sum(),
            group_name: format!("SU({})", m + n + p),
            isotropy_name: format!("S(U({m})xU({n})xU({p}))"),
        })
    }

    pub fn so(l: u32) -> Result<Self, CatalogError> {
        if l < 4 {
            return Err(CatalogError::BadParams {
                family: "so".into(),
                problem: format!("needs l >= 4, got {l}"),
            });
        }
        let l64 = l as u64;
        let dims = [2 * (l64 - 1), 2 * (l64 - 1), (l64 - 1) * (l64 - 2)];
        Ok(FamilyDescriptor {
            id: format!("so({l})"),
            kind: FamilyKind::So { l },
            dims,
            total_dim: dims.iter().sum(),
            group_name: format!("SO({})", 2 * l),
            isotropy_name: format!("U(1)xU({})", l - 1),
        })
    }

    pub fn e6() -> Self {
        FamilyDescriptor {
            id: "e6so8".into(),
            kind: FamilyKind::E6,
            dims: [16, 16, 16],
            total_dim: 48,
            group_name: "E6".into(),
            isotropy_name: "SO(8)xU(1)xU(1)".into(),
        }
    }

    pub fn type_i(fam: TypeIFamily) -> Self {
        let r = fam.row();
        FamilyDescriptor {
            id: r.id.into(),
            kind: FamilyKind::TypeI { family: fam },
            dims: r.dims,
            total_dim: r.dims.iter().sum(),
            group_name: r.group.into(),
            isotropy_name: r.isotropy.into(),
        }
    }

    /// Resolves a CLI-style selector: `su` + `[m,n,p]`, `so` + `[l]`, or a fixed id.
    pub fn lookup(id: &str, params: Option<&[u32]>) -> Result<Self, CatalogError> {
        let need = |k: usize| -> Result<&[u32], CatalogError> {
            match params {
                Some(p) if p.len() == k => Ok(p),
                Some(p) => Err(CatalogError::BadParams {
                    family: id.into(),
                    problem: format!("takes {k} parameter(s), got {}", p.len()),
                }),
                None => Err(CatalogError::BadParams {
                    family: id.into(),
                    problem: "requires --params".into(),
                }),
            }
        };
        match id {
            "su" => {
                let p = need(3)?;
                Self::su(p[0], p[1], p[2])
            }
            "so" => Self::so(need(1)?[0]),
            _ => {
                let fixed = if id == "e6so8" {
                    Some(Self::e6())
                } else {
                    TypeIFamily::ALL
                        .iter()
                        .find(|f| f.id() == id)
                        .map(|f| Self::type_i(*f))
                };
                match (fixed, params) {
                    (None, _) => Err(CatalogError::UnknownFamily(id.into())),
                    (Some(_), Some(_)) => Err(CatalogError::BadParams {
                        family: id.into(),
                        problem: "takes no parameters".into(),
                    }),
                    (Some(d), None) => Ok(d),
                }
            }
        }
    }

    pub fn flag_type(&self) -> FlagType {
        match self.kind {
            FamilyKind::TypeI { .. } => FlagType::I,
            _ => FlagType::II,
        }
    }

    pub fn is_type_i(&self) -> bool {
        self.flag_type() == FlagType::I
    }

    pub fn display_name(&self) -> String {
        format!("{}/{}", self.group_name, self.isotropy_name)
    }

    pub fn clearing_factor(&self) -> ClearingFactor {
        match self.kind {
            FamilyKind::Su { m, n, p } => ClearingFactor {
                coeff: int(2 * (m + n + p) as i64),
                exponent: Exponent([1, 1, 1]),
                formula: "2(m+n+p)xyz",
            },
            FamilyKind::So { l } => ClearingFactor {
                coeff: int(4 * (l as i64 - 1)),
                exponent: Exponent([1, 1, 1]),
                formula: "4(l-1)xyz",
            },
            FamilyKind::E6 => ClearingFactor {
                coeff: int(6),
                exponent: Exponent([1, 1, 1]),
                formula: "6xyz",
            },
            FamilyKind::TypeI { family } => {
                let [d1, d2, d3] = family.dims();
                let big_d = d1 + 4 * d2 + 9 * d3;
                ClearingFactor {
                    coeff: int((4 * big_d * d1 * d2) as i64),
                    exponent: Exponent([2, 1, 1]),
                    formula: "4(d1+4d2+9d3)d1d2 x^2yz",
                }
            }
        }
    }
}

/// Bounds for the parametric families in [`list_families`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FamilyBounds {
    pub su_max: u32,
    pub so_max: u32,
}

impl Default for FamilyBounds {
    fn default() -> Self {
        FamilyBounds {
            su_max: 2,
            so_max: 6,
        }
    }
}

/// Every SU(m,n,p) with `m <= su_max`, every SO(2l) with `l <= so_max`, E6 and the seven Type I rows.
pub fn list_families(bounds: FamilyBounds) -> Result<Vec<FamilyDescriptor>, CatalogError> {
    if bounds.su_max == 0 {
        return Err(CatalogError::InvalidBounds("su bound must be positive".into()));
    }
    if bounds.so_max < 4 && bounds.so_max != 0 {
        return Err(CatalogError::InvalidBounds(
            "so bound must be 0 (none) or at least 4".into(),
        ));
    }
    let mut out = Vec::new();
    for m in 1..=bounds.su_max {
        for n in 1..=m {
            for p in 1..=n {
                out.push(FamilyDescriptor::su(m, n, p)?);
            }
        }
    }
    for l in 4..=bounds.so_max {
        out.push(FamilyDescriptor::so(l)?);
    }
    out.push(FamilyDescriptor::e6());
    out.extend(TypeIFamily::ALL.iter().map(|f| FamilyDescriptor::type_i(*f)));
    Ok(out)
}

/// Index of an isotropy summand, 1-based as in the bracket tables.
pub type Summand = usize;

/// Bitset over `{k, m1, m2, m3}`: bit 0 is `k`, bit `i` is `m_i`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, PartialOrd, Ord)]
pub struct SummandSet(pub u8);

impl SummandSet {
    pub const K: SummandSet = SummandSet(1);

    pub fn of(summands: &[Summand]) -> Self {
        SummandSet(summands.iter().fold(0, |acc, &i| acc | (1 << i)))
    }

    pub fn contains(self, i: Summand) -> bool {
        self.0 & (1 << i) != 0
    }

    pub fn has_k(self) -> bool {
        self.0 & 1 != 0
    }

    pub fn union(self, o: SummandSet) -> SummandSet {
        SummandSet(self.0 | o.0)
    }

    pub fn is_subset(self, o: SummandSet) -> bool {
        self.0 & !o.0 == 0
    }

    /// `m_i` indices present, ascending.
    pub fn summands(self) -> Vec<Summand> {
        (1..=3).filter(|&i| self.contains(i)).collect()
    }
}

/// Serialized as the ascending list of summand indices `i` of `m_i`.
impl serde::Serialize for SummandSet {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(self.summands())
    }
}

impl fmt::Display for SummandSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        if self.has_k() {
            parts.push("k".to_string());
        }
        for i in self.summands() {
            parts.push(format!("m{i}"));
        }
        write!(f, "{{{}}}", parts.join(","))
    }
}

/// `entry[i][j]` bounds `[m_{i+1}, m_{j+1}]`; brackets with `k` are implicit.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BracketTable {
    entry: [[SummandSet; 3]; 3],
}

impl BracketTable {
    pub fn type_ii() -> Self {
        let k = SummandSet::K;
        let s = SummandSet::of;
        BracketTable {
            entry: [[k, s(&[3]), s(&[2])], [s(&[3]), k, s(&[1])], [s(&[2]), s(&[1]), k]],
        }
    }

    pub fn type_i() -> Self {
        let k = SummandSet::K;
        let s = SummandSet::of;
        let k_m2 = k.union(s(&[2]));
        BracketTable {
            entry: [
                [k_m2, s(&[1, 3]), s(&[2])],
                [s(&[1, 3]), k, s(&[1])],
                [s(&[2]), s(&[1]), k],
            ],
        }
    }

    /// `[m_i, m_j]` for 1-based `i, j`.
    pub fn get(&self, i: Summand, j: Summand) -> SummandSet {
        self.entry[i - 1][j - 1]
    }

    pub fn is_symmetric(&self) -> bool {
        (1..=3).all(|i| (1..=3).all(|j| self.get(i, j) == self.get(j, i)))
    }
}

pub fn bracket_table(family: &FamilyDescriptor) -> BracketTable {
    if family.is_type_i() {
        BracketTable::type_i()
    } else {
        BracketTable::type_ii()
    }
}
