use super::{find_equilibria, FoundEquilibrium, SearchOptions};
use crate::catalog::{reference_equilibria, EigenSource, FamilyDescriptor, StabilityClass};
use crate::flowgen::ProjectedFlow;
use num_complex::Complex64;
use serde::Serialize;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RowReport {
    pub label: char,
    pub expected_position: (f64, f64),
    pub exact_position: bool,
    pub found_position: Option<(f64, f64)>,
    pub position_error: Option<f64>,
    pub position_tol: f64,
    pub expected_eigenvalues: Option<[Complex64; 2]>,
    pub found_eigenvalues: Option<[Complex64; 2]>,
    pub eigen_rel_error: Option<f64>,
    pub eigen_tol: Option<f64>,
    pub eigen_source: Option<EigenSource>,
    pub note: Option<&'static str>,
    pub expected_class: StabilityClass,
    pub found_class: Option<StabilityClass>,
    pub pass: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerificationReport {
    pub family: String,
    pub rows: Vec<RowReport>,
    /// Zeros with no catalog record.
    pub extras: Vec<FoundEquilibrium>,
    pub found: Vec<FoundEquilibrium>,
    pub seeds_tried: usize,
    pub seeds_converged: usize,
    pub pass: bool,
}

impl VerificationReport {
    pub fn passed_rows(&self) -> usize {
        self.rows.iter().filter(|r| r.pass).count()
    }
}

fn rel_err(found: Complex64, expected: Complex64) -> f64 {
    let d = (found - expected).norm();
    if expected.norm() > 0.0 {
        d / expected.norm()
    } else {
        d
    }
}

pub fn verify_catalog(family: &FamilyDescriptor) -> VerificationReport {
    let flow = ProjectedFlow::<f64>::new(family);
    verify_catalog_with(&flow, &SearchOptions::default())
}

pub fn verify_catalog_with(flow: &ProjectedFlow<f64>, opts: &SearchOptions) -> VerificationReport {
    let family = &flow.family;
    let search = find_equilibria(flow, opts);
    let mut found = search.equilibria;
    let mut rows = Vec::new();
    for rec in reference_equilibria(family) {
        let target = rec.position.to_f64();
        let tol = rec.position.tolerance();
        let nearest = found
            .iter_mut()
            .filter(|f| f.matched_label.is_none())
            .min_by(|a, b| a.distance_to(target).total_cmp(&b.distance_to(target)));
        let hit = nearest.filter(|f| f.distance_to(target) < tol);
        let (found_position, position_error, found_eigs, found_class) = match hit {
            Some(f) => {
                f.matched_label = Some(rec.label);
                (
                    Some(f.position),
                    Some(f.distance_to(target)),
                    Some(f.eigenvalues),
                    Some(f.effective_class()),
                )
            }
            None => (None, None, None, None),
        };
        let (eigen_rel_error, eigen_ok) = match (&rec.eigenvalues, found_eigs) {
            (Some(r), Some(fe)) => {
                let e = rel_err(fe[0], r.values[0]).max(rel_err(fe[1], r.values[1]));
                (Some(e), e <= r.rel_tol)
            }
            (Some(_), None) => (None, false),
            (None, _) => (None, true),
        };
        let class_ok = found_class == Some(rec.expected_class);
        let pass = found_position.is_some() && eigen_ok && class_ok;
        rows.push(RowReport {
            label: rec.label,
            expected_position: target,
            exact_position: rec.position.is_exact(),
            found_position,
            position_error,
            position_tol: tol,
            expected_eigenvalues: rec.eigenvalues.as_ref().map(|r| r.values),
            found_eigenvalues: found_eigs,
            eigen_rel_error,
            eigen_tol: rec.eigenvalues.as_ref().map(|r| r.rel_tol),
            eigen_source: rec.eigenvalues.as_ref().map(|r| r.source),
            note: rec.eigenvalues.as_ref().and_then(|r| r.note),
            expected_class: rec.expected_class,
            found_class,
            pass,
        });
    }
    let extras: Vec<_> = found.iter().filter(|f| f.matched_label.is_none()).cloned().collect();
    let pass = rows.iter().all(|r| r.pass);
    VerificationReport {
        family: family.id.clone(),
        rows,
        extras,
        found,
        seeds_tried: search.seeds_tried,
        seeds_converged: search.seeds_converged,
        pass,
    }
}
