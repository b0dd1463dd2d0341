use flagflow::catalog::{FamilyDescriptor, StabilityClass, TypeIFamily};
use flagflow::dynamics::{
    basin_map, edge_invariance_check, integrate_orbit, limit_of_orbit, monotonicity_check, region_counts,
    separatrices, BasinGrid, CellLabel, Direction, Manifold, OrbitOptions, Termination, SEPARATRIX_OFFSET,
};
use flagflow::equilibria::{verify_catalog, FoundEquilibrium};
use flagflow::flowgen::{projected_field, ProjectedFlow};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn su(m: u32, n: u32, p: u32) -> FamilyDescriptor {
    FamilyDescriptor::su(m, n, p).unwrap()
}

fn g2() -> FamilyDescriptor {
    FamilyDescriptor::type_i(TypeIFamily::G2U2)
}

fn setup(fam: &FamilyDescriptor) -> (ProjectedFlow<f64>, Vec<FoundEquilibrium>) {
    (ProjectedFlow::new(fam), verify_catalog(fam).found)
}

fn limit(fam: &FamilyDescriptor, p0: (f64, f64), dir: Direction) -> Option<char> {
    let (flow, eqs) = setup(fam);
    limit_of_orbit(&flow, &eqs, p0, dir, &OrbitOptions::default()).unwrap().label()
}

#[test]
fn orbit_at_equilibrium_is_constant() {
    let flow = ProjectedFlow::<f64>::new(&su(1, 1, 1));
    let p = (1.0 / 3.0, 1.0 / 3.0);
    let tr = integrate_orbit(&flow, p, Direction::Forward, &OrbitOptions::default()).unwrap();
    assert_eq!(tr.terminal.termination, Termination::Settled);
    assert!(tr.samples.iter().all(|s| (s.x, s.y) == p));
}

#[test]
fn outside_start_is_rejected() {
    let flow = ProjectedFlow::<f64>::new(&su(1, 1, 1));
    assert!(integrate_orbit(&flow, (0.8, 0.8), Direction::Forward, &OrbitOptions::default()).is_err());
}

#[test]
fn documented_limits() {
    let f = su(2, 1, 1);
    assert_eq!(limit(&f, (0.49, 0.49), Direction::Forward), Some('L'));
    assert_eq!(limit(&f, (0.375 + 1e-3, 0.375), Direction::Backward), Some('N'));
    assert_eq!(limit(&f, (0.05, 0.05), Direction::Backward), Some('O'));
    assert_eq!(limit(&g2(), (1.0 / 6.0 + 0.01, 1.0 / 3.0 - 0.01), Direction::Forward), Some('N'));
}

#[test]
fn vertices_are_fixed() {
    for fam in [su(2, 1, 1), FamilyDescriptor::so(6).unwrap(), g2()] {
        for (p, label) in [((0.0, 0.0), 'O'), ((0.0, 1.0), 'P'), ((1.0, 0.0), 'Q')] {
            for dir in [Direction::Forward, Direction::Backward] {
                assert_eq!(limit(&fam, p, dir), Some(label), "{} {label}", fam.id);
            }
        }
    }
}

#[test]
fn lyapunov_decreases_after_one_step() {
    let flow = ProjectedFlow::<f64>::new(&su(2, 1, 1));
    let opts = OrbitOptions {
        max_steps: 1,
        ..OrbitOptions::default()
    };
    let tr = integrate_orbit(&flow, (0.2, 0.3), Direction::Forward, &opts).unwrap();
    assert_eq!(tr.samples.len(), 2);
    assert!(tr.samples[1].lyapunov.unwrap() < tr.samples[0].lyapunov.unwrap());
    let back = integrate_orbit(&flow, (0.2, 0.3), Direction::Backward, &opts).unwrap();
    assert!(back.samples[1].lyapunov.unwrap() > back.samples[0].lyapunov.unwrap());
    assert!(back.samples[1].t < 0.0);
}

#[test]
fn orbits_stay_in_simplex() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for fam in [su(2, 1, 1), su(3, 2, 1), FamilyDescriptor::so(6).unwrap(), g2()] {
        let flow = ProjectedFlow::<f64>::new(&fam);
        for _ in 0..10 {
            let p = flagflow::dynamics::random_interior_point(&mut rng, 1e-3);
            for dir in [Direction::Forward, Direction::Backward] {
                let tr = integrate_orbit(&flow, p, dir, &OrbitOptions::default()).unwrap();
                assert_ne!(tr.terminal.termination, Termination::BoundaryExit, "{} {p:?}", fam.id);
                for s in &tr.samples {
                    assert!(s.x >= -1e-9 && s.y >= -1e-9 && s.x + s.y <= 1.0 + 1e-9);
                }
            }
        }
    }
}

#[test]
fn diagonal_is_invariant() {
    for fam in [su(1, 1, 1), su(2, 2, 2), FamilyDescriptor::so(6).unwrap(), FamilyDescriptor::e6()] {
        let flow = ProjectedFlow::<f64>::new(&fam);
        assert!(flow.is_swap_symmetric());
        for x in [0.1, 0.2, 0.3, 0.45] {
            for dir in [Direction::Forward, Direction::Backward] {
                let tr = integrate_orbit(&flow, (x, x), dir, &OrbitOptions::default()).unwrap();
                let dev = tr.samples.iter().map(|s| (s.x - s.y).abs()).fold(0.0, f64::max);
                assert!(dev < 1e-9, "{} {x} {dir:?}: {dev}", fam.id);
            }
        }
    }
}

#[test]
fn forward_then_backward_returns() {
    let flow = ProjectedFlow::<f64>::new(&su(2, 1, 1));
    for (p, t) in [((0.2, 0.3), 2.0), ((0.1, 0.6), 5.0), ((0.3, 0.15), 1.0)] {
        let opts = OrbitOptions {
            tmax: t,
            ..OrbitOptions::default()
        };
        let fwd = integrate_orbit(&flow, p, Direction::Forward, &opts).unwrap();
        assert_eq!(fwd.terminal.termination, Termination::TimeLimit);
        let back = integrate_orbit(&flow, fwd.end(), Direction::Backward, &opts).unwrap();
        let q = back.end();
        assert!((q.0 - p.0).hypot(q.1 - p.1) < 1e-6, "{p:?} -> {q:?}");
    }
}

#[test]
fn su211_basins() {
    let (flow, eqs) = setup(&su(2, 1, 1));
    let grid = basin_map(&flow, &eqs, 64, true, &OrbitOptions::default()).unwrap();
    assert_eq!(grid.attractor_names(), ["K", "L", "M"]);
    // diagonal cell centers sit on the stable manifold of R
    assert_eq!(grid.forward_names(), ["K", "L", "M", "R"]);
    assert!(grid.unresolved_fraction() < 0.05);
    let regions = region_counts(&grid);
    assert!(regions.keys().all(|(f, _)| ["K", "L", "M", "R", "undetermined"].contains(&f.as_str())));
    assert!(regions.contains_key(&("L".to_string(), "N".to_string())));
}

#[test]
fn g2_basins() {
    let (flow, eqs) = setup(&g2());
    let grid = basin_map(&flow, &eqs, 64, false, &OrbitOptions::default()).unwrap();
    let names = grid.attractor_names();
    assert!(names.iter().all(|n| ["L", "M", "N"].contains(&n.as_str())), "{names:?}");
    assert!(names.contains(&"N".to_string()));
    assert!(grid.unresolved_fraction() < 0.05);
}

#[test]
fn coarse_grid_agrees_with_direct_limits() {
    let fam = su(1, 1, 1);
    let (flow, eqs) = setup(&fam);
    let coarse = basin_map(&flow, &eqs, 16, false, &OrbitOptions::default()).unwrap();
    for j in 0..16 {
        for i in 0..16 {
            let p = BasinGrid::cell_center(16, i, j);
            let want = if BasinGrid::inside(p) {
                let l = limit_of_orbit(&flow, &eqs, p, Direction::Forward, &OrbitOptions::default()).unwrap();
                l.index().map_or(CellLabel::Undetermined, CellLabel::Limit)
            } else {
                CellLabel::Outside
            };
            assert_eq!(coarse.forward_at(i, j), want);
        }
    }
    assert!(basin_map(&flow, &eqs, 8, false, &OrbitOptions::default()).is_err());
}

#[test]
fn basins_independent_of_worker_count() {
    let (flow, eqs) = setup(&su(2, 1, 1));
    let run = |threads| {
        rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build()
            .unwrap()
            .install(|| basin_map(&flow, &eqs, 24, true, &OrbitOptions::default()).unwrap())
    };
    assert_eq!(run(1), run(4));
}

#[test]
fn su211_saddle_separatrices() {
    let (flow, eqs) = setup(&su(2, 1, 1));
    let set = separatrices(&flow, &eqs, SEPARATRIX_OFFSET, &OrbitOptions::default());
    let r: Vec<_> = set.curves.iter().filter(|c| c.saddle_name == "R").collect();
    assert_eq!(r.len(), 4, "{:?}", set.diagnostics);
    let mut unstable: Vec<char> = r
        .iter()
        .filter(|c| c.manifold == Manifold::Unstable)
        .map(|c| c.limit.label().expect("unstable branch converges"))
        .collect();
    unstable.sort();
    unstable.dedup();
    assert_eq!(unstable.len(), 2);
    assert!(unstable.iter().all(|c| "KLM".contains(*c)));
    let stable: Vec<Option<char>> = r
        .iter()
        .filter(|c| c.manifold == Manifold::Stable)
        .map(|c| c.limit.label())
        .collect();
    assert!(stable.iter().any(|l| matches!(l, Some('N' | 'O' | 'P' | 'Q'))), "{stable:?}");
}

#[test]
fn so12_saddle_on_segment() {
    let (flow, eqs) = setup(&FamilyDescriptor::so(6).unwrap());
    let s = eqs.iter().find(|e| e.matched_label == Some('S')).unwrap();
    assert!((s.position.1 - 0.5).abs() < 1e-12);
    let set = separatrices(&flow, &eqs, SEPARATRIX_OFFSET, &OrbitOptions::default());
    let along = set
        .curves
        .iter()
        .filter(|c| c.saddle_name == "S")
        .any(|c| c.eigenvector.1.abs() < 1e-9);
    assert!(along);
}

#[test]
fn g2_separatrices_and_offsets() {
    let (flow, eqs) = setup(&g2());
    assert_eq!(eqs.iter().filter(|e| e.effective_class() == StabilityClass::Saddle).count(), 2);
    let base = separatrices(&flow, &eqs, SEPARATRIX_OFFSET, &OrbitOptions::default());
    assert_eq!(base.curves.len(), 8);
    let key = |s: &flagflow::dynamics::SeparatrixSet| -> Vec<Option<char>> {
        s.curves.iter().map(|c| c.limit.label()).collect()
    };
    for off in [1e-8, 1e-4] {
        let other = separatrices(&flow, &eqs, off, &OrbitOptions::default());
        assert_eq!(key(&other), key(&base), "offset {off}");
    }
}

#[test]
fn invariance_identities() {
    for fam in [su(2, 1, 1), FamilyDescriptor::so(6).unwrap(), su(3, 2, 1), FamilyDescriptor::e6()] {
        let r = edge_invariance_check(&projected_field(&fam), &fam);
        assert_eq!(r.checks.len(), 6);
        assert!(r.pass, "{r:?}");
    }
    let r = edge_invariance_check(&projected_field(&g2()), &g2());
    assert_eq!(r.checks.len(), 3);
    assert!(r.pass);
}

#[test]
fn monotone_along_orbits() {
    for fam in [su(2, 1, 1), FamilyDescriptor::type_i(TypeIFamily::E8Su8)] {
        let flow = ProjectedFlow::<f64>::new(&fam);
        let rep = monotonicity_check(&flow, 100, 0, &OrbitOptions::default());
        for o in rep.orbits.iter().filter(|o| o.lyapunov_violations > 0 || o.periodic) {
            eprintln!("{} {o:?}", fam.id);
        }
        assert!(rep.pass, "{}", fam.id);
    }
}

#[test]
fn single_precision_orbit() {
    let flow = ProjectedFlow::<f32>::new(&su(2, 1, 1));
    let opts = OrbitOptions {
        settle_tol: 1e-5,
        ..OrbitOptions::default()
    };
    let tr = integrate_orbit(&flow, (0.49, 0.49), Direction::Forward, &opts).unwrap();
    let (x, y) = tr.end();
    assert!((x - 0.5).abs() < 1e-3 && (y - 0.5).abs() < 1e-3, "{x} {y}");
}
