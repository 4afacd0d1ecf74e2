//! End-to-end checks across groups, characters and the moonshine module.

use proptest::prelude::*;
use weak_moonshine::chartab::CharacterTable;
use weak_moonshine::distinguish;
use weak_moonshine::frobenius::{self, RCharacterValues};
use weak_moonshine::group;
use weak_moonshine::moonshine::{self, AssignmentRule, ModuleSpec};
use weak_moonshine::{Cyclotomic, LaurentSeries};

const PREC: i64 = 4;

/// Groups whose element orders all have a Hauptmodul in the catalog.
fn supported_specs(precision: i64) -> Vec<ModuleSpec> {
    group::all_bundled()
        .into_iter()
        .filter_map(|g| {
            let t = CharacterTable::for_group(g).unwrap();
            ModuleSpec::with_rule(t, AssignmentRule::ElementOrder, precision).ok()
        })
        .collect()
}

#[test]
fn supported_groups_cover_orders_one_two_four() {
    let names: Vec<String> = supported_specs(2).iter().map(|s| s.table().group().name().to_owned()).collect();
    for expected in ["trivial", "Z2", "Z4", "Z2xZ2", "Z2xZ4", "Z2xZ2xZ2", "D4", "Q8"] {
        assert!(names.iter().any(|n| n == expected), "{expected} missing from {names:?}");
    }
}

#[test]
fn graded_dimension_is_the_identity_series() {
    for spec in supported_specs(PREC) {
        let t = spec.table();
        let m = moonshine::multiplicities(&spec);
        let mut total = LaurentSeries::<Cyclotomic>::zero(PREC);
        for i in 0..t.len() {
            total = &total + &m.series(i).scale(&Cyclotomic::from_integer(t.dim(i) as i64));
        }
        let e = t.group().identity();
        assert_eq!(total, spec.series(t.classes().class_of(e)).to_cyclotomic(), "{}", t.group().name());
    }
}

#[test]
fn width_one_series_are_the_assigned_hauptmoduln() {
    for spec in supported_specs(PREC) {
        let g = spec.table().group();
        let m = moonshine::multiplicities(&spec);
        for x in 0..g.order() {
            let t = moonshine::frob_series(&spec, &m, &[x]);
            let j = spec.table().classes().class_of(x);
            assert_eq!(t, spec.series(j).to_cyclotomic(), "{} at {}", g.name(), g.label(x));
        }
    }
}

#[test]
fn recovery_at_every_admissible_width() {
    for spec in supported_specs(3) {
        let t = spec.table();
        let m = moonshine::multiplicities(&spec);
        for i in 0..t.len() {
            for r in 1..=t.dim(i).min(3) as usize {
                let rec = moonshine::recover_multiplicities(&spec, &m, r, i).unwrap();
                assert_eq!(&rec, m.series(i), "{} chi{} r={r}", t.group().name(), i + 1);
            }
            let too_wide = t.dim(i) as usize + 1;
            assert!(moonshine::recover_multiplicities(&spec, &m, too_wide, i).is_err());
        }
    }
}

#[test]
fn width_two_series_are_conjugation_invariant() {
    for name in ["D4", "Q8"] {
        let spec = moonshine::default_assignment(CharacterTable::bundled(name).unwrap(), PREC).unwrap();
        let g = spec.table().group();
        let m = moonshine::multiplicities(&spec);
        for t in frobenius::all_tuples(g.order(), 2) {
            let base = moonshine::frob_series(&spec, &m, &t);
            for h in 0..g.order() {
                let moved: Vec<usize> = t.iter().map(|&x| g.conjugate(x, h)).collect();
                assert_eq!(base, moonshine::frob_series(&spec, &m, &moved));
            }
        }
    }
}

#[test]
fn r_characters_are_symmetric_class_functions() {
    for g in group::all_bundled() {
        let t = CharacterTable::for_group(g).unwrap();
        let g = t.group();
        for i in 0..t.len() {
            let v = RCharacterValues::compute(&t, i, 2).unwrap();
            for (tuple, value) in v.iter() {
                assert_eq!(v.get(&[tuple[1], tuple[0]]), value);
                for h in 0..g.order() {
                    assert_eq!(v.get(&[g.conjugate(tuple[0], h), g.conjugate(tuple[1], h)]), value);
                }
            }
        }
    }
}

#[test]
fn distinguishing_is_symmetric_and_monotone() {
    let tables: Vec<CharacterTable> =
        group::all_bundled().into_iter().map(|g| CharacterTable::for_group(g).unwrap()).collect();
    for a in &tables {
        for b in &tables {
            if a.group().order() != b.group().order() {
                continue;
            }
            let verdicts: Vec<bool> = (1..=3)
                .map(|w| distinguish::equivalent_up_to_width(a, b, w).unwrap().is_equivalent())
                .collect();
            let reverse: Vec<bool> = (1..=3)
                .map(|w| distinguish::equivalent_up_to_width(b, a, w).unwrap().is_equivalent())
                .collect();
            let (an, bn) = (a.group().name(), b.group().name());
            assert_eq!(verdicts, reverse, "{an} vs {bn}");
            assert!(verdicts.windows(2).all(|p| p[0] || !p[1]), "{an} vs {bn}: {verdicts:?}");
            if an == bn {
                assert!(verdicts.iter().all(|&v| v));
            }
            for w in 1..=3 {
                if let Some(wit) = distinguish::equivalent_up_to_width(a, b, w).unwrap().witness() {
                    assert!(distinguish::witness_holds(a, b, wit), "{an} vs {bn} width {w}");
                }
            }
        }
    }
}

#[test]
fn nonisomorphic_abelian_groups_split_at_the_table() {
    let z4 = CharacterTable::bundled("Z4").unwrap();
    let v4 = CharacterTable::bundled("Z2xZ2").unwrap();
    let v = distinguish::equivalent_up_to_width(&z4, &v4, 1).unwrap();
    assert!(!v.is_equivalent());
    assert!(v.witness().is_none());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn multiplicities_are_stable_under_precision(low in 1i64..6, extra in 1i64..5, q8 in any::<bool>()) {
        let name = if q8 { "Q8" } else { "D4" };
        let at = |p| moonshine::multiplicities(
            &moonshine::default_assignment(CharacterTable::bundled(name).unwrap(), p).unwrap(),
        );
        let (a, b) = (at(low), at(low + extra));
        prop_assert_eq!(a.precision(), low);
        for i in 0..a.len() {
            prop_assert!(a.series(i).agrees_below(b.series(i), low).unwrap());
            prop_assert_eq!(b.series(i).truncate(low), a.series(i).clone());
        }
    }
}
