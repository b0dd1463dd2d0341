mod common;

use common::{expected, patterns};
use flagflow::catalog::{
    bracket_table, list_families, BracketTable, FamilyBounds, FamilyDescriptor, SpaceClass, SummandSet,
    TypeIFamily,
};
use flagflow::dynamics::{limit_of_orbit, random_interior_point, Direction, LimitKind, OrbitOptions};
use flagflow::equilibria::verify_catalog;
use flagflow::flowgen::ProjectedFlow;
use flagflow::ghlimit::{
    classify_kernel, classify_limit, subalgebra_closure, symmetric_pair_check, KernelPattern,
};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn families() -> Vec<FamilyDescriptor> {
    list_families(FamilyBounds { su_max: 4, so_max: 8 }).unwrap()
}

#[test]
fn exhaustive_agreement_with_tables() {
    let mut cases = 0;
    for fam in families() {
        for pat in patterns() {
            let got = classify_kernel(&fam, KernelPattern { vanished: SummandSet::of(&pat) }).unwrap();
            match expected(&fam, &pat) {
                None => assert!(got.is_point && got.space.is_point(), "{} {pat:?}", fam.id),
                Some((name, dim)) => {
                    assert!(!got.is_point, "{} {pat:?}", fam.id);
                    assert_eq!((got.space.name.as_str(), got.space.dim), (name.as_str(), dim), "{}", fam.id);
                    assert_eq!(got.space.metric, "normal");
                    assert_eq!(got.h_summands, SummandSet::of(&pat));
                }
            }
            cases += 1;
        }
    }
    assert!(cases >= 84, "{cases}");
}

#[test]
fn type_i_symmetric_pairs() {
    for f in TypeIFamily::ALL {
        let fam = FamilyDescriptor::type_i(f);
        let t = bracket_table(&fam);
        assert_eq!(symmetric_pair_check(&t, SummandSet::of(&[2])), Ok(true));
        assert_eq!(symmetric_pair_check(&t, SummandSet::of(&[3])), Ok(false));
        let m2 = classify_kernel(&fam, KernelPattern { vanished: SummandSet::of(&[2]) }).unwrap();
        let m3 = classify_kernel(&fam, KernelPattern { vanished: SummandSet::of(&[3]) }).unwrap();
        assert_eq!(m2.space.space_class, SpaceClass::SymmetricPair);
        assert_eq!(m3.space.space_class, SpaceClass::BorelDeSiebenthal);
    }
}

#[test]
fn point_exactly_when_closure_is_everything() {
    for fam in families() {
        let t = bracket_table(&fam);
        for pat in patterns() {
            let k = KernelPattern { vanished: SummandSet::of(&pat) };
            let c = subalgebra_closure(&t, k);
            assert!(k.vanished.is_subset(c.summands));
            assert_eq!(c.is_all, classify_kernel(&fam, k).unwrap().is_point, "{} {pat:?}", fam.id);
        }
    }
}

#[test]
fn closure_is_monotone() {
    for t in [BracketTable::type_i(), BracketTable::type_ii()] {
        for a in patterns() {
            for b in patterns() {
                let (sa, sb) = (SummandSet::of(&a), SummandSet::of(&b));
                if sa.is_subset(sb) {
                    let ca = subalgebra_closure(&t, KernelPattern { vanished: sa }).summands;
                    let cb = subalgebra_closure(&t, KernelPattern { vanished: sb }).summands;
                    assert!(ca.is_subset(cb));
                }
            }
        }
    }
}

/// Kernel of the degenerate equilibria, by label.
fn kernel_of(label: char) -> Option<Vec<usize>> {
    Some(match label {
        'K' => vec![1],
        'L' => vec![3],
        'M' => vec![2],
        'O' => vec![1, 2],
        'P' => vec![1, 3],
        'Q' => vec![2, 3],
        _ => return None,
    })
}

#[test]
fn orbit_limits_classify_as_tabulated() {
    let fams = vec![
        FamilyDescriptor::su(2, 1, 1).unwrap(),
        FamilyDescriptor::su(3, 2, 1).unwrap(),
        FamilyDescriptor::so(6).unwrap(),
        FamilyDescriptor::e6(),
        FamilyDescriptor::type_i(TypeIFamily::G2U2),
        FamilyDescriptor::type_i(TypeIFamily::E8Su8),
    ];
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let mut hits = 0;
    for fam in fams {
        let flow = ProjectedFlow::<f64>::new(&fam);
        let eqs = verify_catalog(&fam).found;
        for _ in 0..20 {
            let p = random_interior_point(&mut rng, 1e-3);
            for dir in [Direction::Forward, Direction::Backward] {
                let out = limit_of_orbit(&flow, &eqs, p, dir, &OrbitOptions::default()).unwrap();
                let LimitKind::Equilibrium { label: Some(c), position, .. } = out.kind else {
                    continue;
                };
                let Some(kernel) = kernel_of(c) else { continue };
                let got = classify_limit(&fam, position).unwrap();
                match expected(&fam, &kernel) {
                    None => assert!(got.is_point, "{} {c}", fam.id),
                    Some((name, _)) => assert_eq!(got.space.name, name, "{} {c}", fam.id),
                }
                hits += 1;
            }
        }
    }
    assert!(hits > 100, "{hits}");
}
