use super::{limit_of_orbit, Direction, DynamicsError, LimitOutcome, OrbitOptions};
use crate::catalog::StabilityClass;
use crate::equilibria::FoundEquilibrium;
use crate::flowgen::ProjectedFlow;
use crate::scalar::Real;
use rayon::prelude::*;
use serde::Serialize;
use std::collections::BTreeMap;

/// Cells closer than this to the boundary of the triangle are left unlabeled.
pub const BASIN_MARGIN: f64 = 1e-3;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(tag = "kind", content = "index", rename_all = "lowercase")]
pub enum CellLabel {
    Outside,
    /// Index into [`BasinGrid::equilibria`].
    Limit(usize),
    Undetermined,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BasinGrid {
    pub resolution: usize,
    pub equilibria: Vec<FoundEquilibrium>,
    /// Row-major, `j * resolution + i` with `i` along `x`.
    pub forward: Vec<CellLabel>,
    pub backward: Option<Vec<CellLabel>>,
}

impl BasinGrid {
    pub fn cell_center(resolution: usize, i: usize, j: usize) -> (f64, f64) {
        let n = resolution as f64;
        ((i as f64 + 0.5) / n, (j as f64 + 0.5) / n)
    }

    pub fn inside(p: (f64, f64)) -> bool {
        p.0 > BASIN_MARGIN && p.1 > BASIN_MARGIN && p.0 + p.1 < 1.0 - BASIN_MARGIN
    }

    pub fn forward_at(&self, i: usize, j: usize) -> CellLabel {
        self.forward[j * self.resolution + i]
    }

    /// Catalog letter of the equilibrium, or its coordinates when unmatched.
    pub fn name(&self, label: CellLabel) -> String {
        match label {
            CellLabel::Outside => "outside".into(),
            CellLabel::Undetermined => "undetermined".into(),
            CellLabel::Limit(k) => equilibrium_name(&self.equilibria[k]),
        }
    }

    /// Names of the forward limits that occur, undetermined cells excluded.
    pub fn forward_names(&self) -> Vec<String> {
        let mut v: Vec<String> = self
            .forward
            .iter()
            .filter(|c| matches!(c, CellLabel::Limit(_)))
            .map(|&c| self.name(c))
            .collect();
        v.sort();
        v.dedup();
        v
    }

    /// Names of the attractors whose basins occur.
    ///
    /// Cells converging to a saddle lie on its stable manifold and are left out.
    pub fn attractor_names(&self) -> Vec<String> {
        let mut v: Vec<String> = self
            .forward
            .iter()
            .filter(|c| self.is_attracted(**c))
            .map(|&c| self.name(c))
            .collect();
        v.sort();
        v.dedup();
        v
    }

    fn is_attracted(&self, c: CellLabel) -> bool {
        match c {
            CellLabel::Limit(k) => self.equilibria[k].effective_class() == StabilityClass::Attractor,
            _ => false,
        }
    }

    /// Inside cells whose forward limit is not an attractor: undetermined, or on a stable manifold.
    pub fn unresolved_fraction(&self) -> f64 {
        let bad = self
            .forward
            .iter()
            .filter(|c| **c != CellLabel::Outside && !self.is_attracted(**c))
            .count();
        bad as f64 / self.inside_cells().max(1) as f64
    }

    pub fn inside_cells(&self) -> usize {
        self.forward.iter().filter(|c| **c != CellLabel::Outside).count()
    }

    pub fn undetermined_fraction(&self) -> f64 {
        let bad = self.forward.iter().filter(|c| **c == CellLabel::Undetermined).count();
        bad as f64 / self.inside_cells().max(1) as f64
    }
}

pub fn equilibrium_name(e: &FoundEquilibrium) -> String {
    match e.matched_label {
        Some(c) => c.to_string(),
        None => format!("({:.6},{:.6})", e.position.0, e.position.1),
    }
}

fn to_cell(out: Result<LimitOutcome, DynamicsError>) -> CellLabel {
    match out.ok().and_then(|o| o.index()) {
        Some(k) => CellLabel::Limit(k),
        None => CellLabel::Undetermined,
    }
}

/// Limits of the orbits through each cell center; cells are independent and keyed by index.
pub fn basin_map<T: Real>(
    flow: &ProjectedFlow<T>,
    equilibria: &[FoundEquilibrium],
    resolution: usize,
    with_backward: bool,
    opts: &OrbitOptions,
) -> Result<BasinGrid, DynamicsError> {
    if !(16..=2048).contains(&resolution) {
        return Err(DynamicsError::BadResolution(resolution));
    }
    let label = |dir: Direction| -> Vec<CellLabel> {
        (0..resolution * resolution)
            .into_par_iter()
            .map(|idx| {
                let p = BasinGrid::cell_center(resolution, idx % resolution, idx / resolution);
                if !BasinGrid::inside(p) {
                    return CellLabel::Outside;
                }
                to_cell(limit_of_orbit(flow, equilibria, p, dir, opts))
            })
            .collect()
    };
    let forward = label(Direction::Forward);
    let backward = with_backward.then(|| label(Direction::Backward));
    Ok(BasinGrid {
        resolution,
        equilibria: equilibria.to_vec(),
        forward,
        backward,
    })
}

/// Regions identified by their `(forward limit, backward limit)` pair, with cell counts.
pub fn region_counts(grid: &BasinGrid) -> BTreeMap<(String, String), usize> {
    let mut out = BTreeMap::new();
    let Some(back) = &grid.backward else {
        return out;
    };
    for (f, b) in grid.forward.iter().zip(back) {
        if *f == CellLabel::Outside {
            continue;
        }
        *out.entry((grid.name(*f), grid.name(*b))).or_insert(0) += 1;
    }
    out
}
