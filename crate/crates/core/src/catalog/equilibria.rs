use super::{FamilyDescriptor, FamilyKind, TypeIFamily};
use crate::polyalg::{int, rat, Rational};
use num_complex::Complex64;
use num_traits::ToPrimitive;
use serde::Serialize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum StabilityClass {
    Repeller,
    Attractor,
    Saddle,
    Nonhyperbolic,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum MetricKind {
    #[serde(rename = "degenerate")]
    Degenerate,
    #[serde(rename = "kahler-einstein")]
    KahlerEinstein,
    #[serde(rename = "einstein-non-kahler")]
    EinsteinNonKahler,
}

#[derive(Debug, Clone, PartialEq)]
pub enum RefPosition {
    Exact { x: Rational, y: Rational },
    /// Five-decimal table value.
    Approx { x: f64, y: f64 },
}

impl RefPosition {
    pub fn to_f64(&self) -> (f64, f64) {
        match self {
            RefPosition::Exact { x, y } => (
                x.to_f64().expect("finite"),
                y.to_f64().expect("finite"),
            ),
            RefPosition::Approx { x, y } => (*x, *y),
        }
    }

    pub fn is_exact(&self) -> bool {
        matches!(self, RefPosition::Exact { .. })
    }

    /// Matching tolerance for a numerically found root.
    pub fn tolerance(&self) -> f64 {
        if self.is_exact() {
            1e-9
        } else {
            1e-4
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum EigenSource {
    ClosedForm,
    PrintedDecimal,
    /// Closed form that differs from the printed table entry; see `RefEigen::note`.
    Corrected,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RefEigen {
    /// Sorted by real part, then imaginary part.
    pub values: [Complex64; 2],
    pub rel_tol: f64,
    pub source: EigenSource,
    pub note: Option<&'static str>,
}

impl RefEigen {
    fn closed(a: f64, b: f64) -> Self {
        Self::sorted([Complex64::new(a, 0.0), Complex64::new(b, 0.0)], 1e-7, EigenSource::ClosedForm)
    }

    fn sorted(mut values: [Complex64; 2], rel_tol: f64, source: EigenSource) -> Self {
        values.sort_by(|a, b| a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im)));
        RefEigen {
            values,
            rel_tol,
            source,
            note: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct EquilibriumRecord {
    pub label: char,
    pub position: RefPosition,
    pub metric_kind: MetricKind,
    pub expected_class: StabilityClass,
    pub eigenvalues: Option<RefEigen>,
}

fn exact(x: Rational, y: Rational) -> RefPosition {
    RefPosition::Exact { x, y }
}

fn rec(
    label: char,
    position: RefPosition,
    metric_kind: MetricKind,
    expected_class: StabilityClass,
    eigenvalues: Option<RefEigen>,
) -> EquilibriumRecord {
    EquilibriumRecord {
        label,
        position,
        metric_kind,
        expected_class,
        eigenvalues,
    }
}

/// Equilibria for SU(m,n,p); also used for E6/SO(8)xU(1)xU(1) with m=n=p=1.
fn su_records(m: u32, n: u32, p: u32) -> Vec<EquilibriumRecord> {
    use MetricKind::*;
    use StabilityClass::*;
    let (mi, ni, pi) = (m as i64, n as i64, p as i64);
    let (mf, nf, pf) = (m as f64, n as f64, p as f64);
    let half = rat(1, 2);
    let s = mi + ni + pi;

    let a = mf * mf * (nf + pf) + mf * (nf + pf).powi(2) + nf * nf * pf + nf * pf * pf;
    let q = mf * mf * (nf + pf) + mf * (nf * nf - 6.0 * nf * pf + pf * pf) + nf * pf * (nf + pf);
    let disc = (mf + nf) * (mf + pf) * (nf + pf) * q;
    let den = 4.0 * (s as f64).powi(2);
    let root = Complex64::new(disc, 0.0).sqrt();
    let n_eigs = RefEigen::sorted(
        [(Complex64::new(a, 0.0) - root) / den, (Complex64::new(a, 0.0) + root) / den],
        1e-7,
        EigenSource::ClosedForm,
    );

    let r_den = 2 * mi + ni + pi;
    let s_den = mi + ni + 2 * pi;
    let t_den = mi + 2 * ni + pi;
    vec![
        rec('O', exact(int(0), int(0)), Degenerate, Repeller, Some(RefEigen::closed(mf + pf, mf + nf))),
        rec('P', exact(int(0), int(1)), Degenerate, Repeller, Some(RefEigen::closed(nf + pf, mf + nf))),
        rec('Q', exact(int(1), int(0)), Degenerate, Repeller, Some(RefEigen::closed(nf + pf, mf + pf))),
        rec('K', exact(int(0), half.clone()), Degenerate, Attractor, Some(RefEigen::closed(-(mf + nf) / 2.0, -(mf + nf) / 2.0))),
        rec('L', exact(half.clone(), half.clone()), Degenerate, Attractor, Some(RefEigen::closed(-(nf + pf) / 2.0, -(nf + pf) / 2.0))),
        rec('M', exact(half.clone(), int(0)), Degenerate, Attractor, Some(RefEigen::closed(-(mf + pf) / 2.0, -(mf + pf) / 2.0))),
        rec('N', exact(rat(mi + ni, 2 * s), rat(mi + pi, 2 * s)), EinsteinNonKahler, Repeller, Some(n_eigs)),
        rec(
            'R',
            exact(rat(mi + ni, 2 * r_den), rat(mi + pi, 2 * r_den)),
            KahlerEinstein,
            Saddle,
            Some(RefEigen::closed(
                -mf * (mf + nf) * (mf + pf) / (r_den as f64).powi(2),
                (mf + nf) * (mf + pf) / (2.0 * r_den as f64),
            )),
        ),
        rec(
            'S',
            exact(half.clone(), rat(mi + pi, 2 * s_den)),
            KahlerEinstein,
            Saddle,
            Some(RefEigen::closed(
                -pf * (mf + pf) * (nf + pf) / (s_den as f64).powi(2),
                (mf + pf) * (nf + pf) / (2.0 * s_den as f64),
            )),
        ),
        rec(
            'T',
            exact(rat(mi + ni, 2 * t_den), half),
            KahlerEinstein,
            Saddle,
            Some(RefEigen::closed(
                -nf * (mf + nf) * (nf + pf) / (t_den as f64).powi(2),
                (mf + nf) * (nf + pf) / (2.0 * t_den as f64),
            )),
        ),
    ]
}

/// Decimal eigenvalue expression printed for the SO saddles S and T.
pub(crate) fn so_saddle_printed_eigs(l: f64) -> [f64; 2] {
    let pre = l / (1.33333 - l).powi(2);
    let lin = (0.0555556 * l - 0.111111) * l;
    let rad = (l * (l * ((0.308642 * l - 2.22222) * l + 5.97531) - 7.11111) + 3.16049).sqrt();
    [pre * (lin - 0.5 * rad), pre * (lin + 0.5 * rad)]
}

fn so_records(l: u32) -> Vec<EquilibriumRecord> {
    use MetricKind::*;
    use StabilityClass::*;
    let li = l as i64;
    let lf = l as f64;
    let half = rat(1, 2);
    let mut p_eigs = RefEigen::closed(lf, 2.0 * (lf - 2.0));
    p_eigs.source = EigenSource::Corrected;
    p_eigs.note = Some("table prints (l, l); the x<->y swap symmetry with Q forces (l, 2(l-2))");
    let [s1, s2] = so_saddle_printed_eigs(lf);
    let mut st_eigs = RefEigen::closed(s1, s2);
    st_eigs.rel_tol = 1e-3;
    st_eigs.source = EigenSource::PrintedDecimal;
    let n = rat(li, 4 * (li - 1));
    let st = rat(li, 6 * li - 8);
    vec![
        rec('O', exact(int(0), int(0)), Degenerate, Repeller, Some(RefEigen::closed(lf, lf))),
        rec('P', exact(int(0), int(1)), Degenerate, Repeller, Some(p_eigs)),
        rec('Q', exact(int(1), int(0)), Degenerate, Repeller, Some(RefEigen::closed(lf, 2.0 * (lf - 2.0)))),
        rec('K', exact(int(0), half.clone()), Degenerate, Attractor, Some(RefEigen::closed(-lf / 2.0, -lf / 2.0))),
        rec('L', exact(half.clone(), half.clone()), Degenerate, Attractor, Some(RefEigen::closed(2.0 - lf, 2.0 - lf))),
        rec('M', exact(half.clone(), int(0)), Degenerate, Attractor, Some(RefEigen::closed(-lf / 2.0, -lf / 2.0))),
        rec(
            'N',
            exact(n.clone(), n),
            EinsteinNonKahler,
            Repeller,
            Some(RefEigen::closed(
                lf * (lf - 2.0) / (2.0 * (lf - 1.0).powi(2)),
                lf * (lf - 2.0).powi(2) / (4.0 * (lf - 1.0).powi(2)),
            )),
        ),
        rec('R', exact(rat(1, 4), rat(1, 4)), KahlerEinstein, Saddle, Some(RefEigen::closed(-0.5, lf / 4.0))),
        rec('S', exact(st.clone(), half.clone()), KahlerEinstein, Saddle, Some(st_eigs.clone())),
        rec('T', exact(half, st), KahlerEinstein, Saddle, Some(st_eigs)),
    ]
}

/// Five-decimal positions of the two non-Kahler Einstein metrics, in (R, S) order.
/// Saddle decimals exactly as tabulated for E7/SU(5)xSU(3)xU(1).
///
/// Its dimensions are proportional to those of F4/SU(3)xSU(2)xU(1) and the
/// Type I field is homogeneous in them, so the two flows coincide; the
/// tabulated pair is not a zero of either.
pub const E7SU5_PRINTED_SADDLES: [(f64, f64); 2] = [(0.33218, 0.24367), (0.39938, 0.42346)];

pub(crate) fn type_i_saddles(fam: TypeIFamily) -> [(f64, f64); 2] {
    match fam {
        TypeIFamily::E8E6Su2 => [(0.46847, 0.47077), (0.28932, 0.26453)],
        TypeIFamily::E8Su8 => [(0.33648, 0.24145), (0.39343, 0.42039)],
        TypeIFamily::E7Su5Su3 => type_i_saddles(TypeIFamily::F4Su3Su2),
        TypeIFamily::E7Su6Su2 => [(0.44544, 0.45244), (0.30245, 0.25819)],
        TypeIFamily::E6Su3Su3Su2 => [(0.32220, 0.24866), (0.41388, 0.43154)],
        TypeIFamily::F4Su3Su2 => [(0.34725, 0.23562), (0.37927, 0.41362)],
        TypeIFamily::G2U2 => [(0.21154, 0.35427), (0.46117, 0.08619)],
    }
}

fn type_i_records(fam: TypeIFamily) -> Vec<EquilibriumRecord> {
    use MetricKind::*;
    use StabilityClass::*;
    let half = rat(1, 2);
    let [(rx, ry), (sx, sy)] = type_i_saddles(fam);
    vec![
        rec('O', exact(int(0), int(0)), Degenerate, Repeller, None),
        rec('P', exact(int(0), int(1)), Degenerate, Repeller, None),
        rec('Q', exact(int(1), int(0)), Degenerate, Repeller, None),
        rec('L', exact(half.clone(), half.clone()), Degenerate, Attractor, None),
        rec('M', exact(half, int(0)), Degenerate, Attractor, None),
        rec('N', exact(rat(1, 6), rat(1, 3)), KahlerEinstein, Attractor, None),
        rec('R', RefPosition::Approx { x: rx, y: ry }, EinsteinNonKahler, Saddle, None),
        rec('S', RefPosition::Approx { x: sx, y: sy }, EinsteinNonKahler, Saddle, None),
    ]
}

pub fn reference_equilibria(family: &FamilyDescriptor) -> Vec<EquilibriumRecord> {
    match family.kind {
        FamilyKind::Su { m, n, p } => su_records(m, n, p),
        FamilyKind::E6 => su_records(1, 1, 1),
        FamilyKind::So { l } => so_records(l),
        FamilyKind::TypeI { family } => type_i_records(family),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn find(recs: &[EquilibriumRecord], label: char) -> &EquilibriumRecord {
        recs.iter().find(|r| r.label == label).unwrap()
    }

    #[test]
    fn su_211_n_position() {
        let recs = reference_equilibria(&FamilyDescriptor::su(2, 1, 1).unwrap());
        assert_eq!(recs.len(), 10);
        assert_eq!(find(&recs, 'N').position, exact(rat(3, 8), rat(3, 8)));
        assert_eq!(find(&recs, 'R').position, exact(rat(1, 4), rat(1, 4)));
        let n = find(&recs, 'N').eigenvalues.as_ref().unwrap();
        assert!((n.values[0].re - 0.1875).abs() < 1e-12);
        assert!((n.values[1].re - 0.375).abs() < 1e-12);
    }

    #[test]
    fn su_111_n_double_eigenvalue() {
        let recs = reference_equilibria(&FamilyDescriptor::su(1, 1, 1).unwrap());
        let n = find(&recs, 'N').eigenvalues.as_ref().unwrap();
        for v in n.values {
            assert!((v.re - 2.0 / 9.0).abs() < 1e-12 && v.im == 0.0);
        }
        let r = find(&recs, 'R').eigenvalues.as_ref().unwrap();
        assert_eq!(r.values[0].re, -0.25);
        assert_eq!(r.values[1].re, 0.5);
    }

    #[test]
    fn so_6_r_record() {
        let recs = reference_equilibria(&FamilyDescriptor::so(6).unwrap());
        let r = find(&recs, 'R');
        assert_eq!(r.position, exact(rat(1, 4), rat(1, 4)));
        let e = r.eigenvalues.as_ref().unwrap();
        assert_eq!([e.values[0].re, e.values[1].re], [-0.5, 1.5]);
        assert_eq!(r.expected_class, StabilityClass::Saddle);
    }

    #[test]
    fn so_printed_saddle_decimals_track_closed_form() {
        for l in 4..=12 {
            let lf = l as f64;
            let exact = [
                -2.0 * lf * (lf - 2.0).powi(2) / (3.0 * lf - 4.0).powi(2),
                lf * (lf - 2.0) / (3.0 * lf - 4.0),
            ];
            let printed = so_saddle_printed_eigs(lf);
            for k in 0..2 {
                assert!(((printed[k] - exact[k]) / exact[k]).abs() < 1e-3, "l={l}");
            }
        }
    }

    #[test]
    fn g2_saddle_position() {
        let recs = reference_equilibria(&FamilyDescriptor::type_i(TypeIFamily::G2U2));
        assert_eq!(recs.len(), 8);
        let r = find(&recs, 'R');
        assert_eq!(r.position.to_f64(), (0.21154, 0.35427));
        assert_eq!(r.expected_class, StabilityClass::Saddle);
        assert!(!r.position.is_exact());
        assert_eq!(r.position.tolerance(), 1e-4);
    }

    #[test]
    fn einstein_counts() {
        use crate::catalog::{list_families, FamilyBounds};
        for fam in list_families(FamilyBounds { su_max: 3, so_max: 7 }).unwrap() {
            let recs = reference_equilibria(&fam);
            let ke = recs.iter().filter(|r| r.metric_kind == MetricKind::KahlerEinstein).count();
            let nke = recs.iter().filter(|r| r.metric_kind == MetricKind::EinsteinNonKahler).count();
            if fam.is_type_i() {
                assert_eq!((ke, nke), (1, 2), "{}", fam.id);
            } else {
                assert_eq!((ke, nke), (3, 1), "{}", fam.id);
            }
            for r in &recs {
                let (x, y) = r.position.to_f64();
                assert!(x >= 0.0 && y >= 0.0 && x + y <= 1.0 + 1e-12);
                if r.metric_kind == MetricKind::Degenerate {
                    let z = 1.0 - x - y;
                    assert!(x.min(y).min(z).abs() < 1e-12, "{} {}", fam.id, r.label);
                }
            }
        }
    }
}
