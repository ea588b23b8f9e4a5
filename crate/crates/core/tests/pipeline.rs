use std::sync::Arc;

use polyreal::chartable::{CharacterTable, TableCache};
use polyreal::groups;
use polyreal::perm::{conjugacy_classes, enumerate_group, subgroup_generated, DEFAULT_CAP};
use polyreal::psl;
use polyreal::realization::{analyze_gset, cone_report, coset_action, ReportOptions};
use polyreal::stringc::verify_string_cgroup;

#[test]
fn cached_table_matches_fresh() {
    let dir = tempfile::tempdir().unwrap();
    let cache = TableCache::new(dir.path());
    let g = Arc::new(enumerate_group(&groups::symmetric(4), DEFAULT_CAP).unwrap());
    let cd = Arc::new(conjugacy_classes(&g));
    let first = CharacterTable::compute_cached(&cd, Some(&cache)).unwrap();
    assert_eq!(std::fs::read_dir(dir.path()).unwrap().count(), 1);
    let second = CharacterTable::compute_cached(&cd, Some(&cache)).unwrap();
    assert_eq!(first.irreducibles(), second.irreducibles());
}

#[test]
fn dihedral_polygon_report() {
    // D6 on the hexagon: 4 layers, every constituent of multiplicity one
    let g = Arc::new(enumerate_group(&groups::dihedral(6), DEFAULT_CAP).unwrap());
    let cd = Arc::new(conjugacy_classes(&g));
    let t = Arc::new(CharacterTable::compute(&cd).unwrap());
    let reflection = g.generators()[1];
    let a = analyze_gset(&t, &Arc::new(coset_action(&subgroup_generated(&g, &[reflection])))).unwrap();
    let r = cone_report(&a, ReportOptions::default());
    assert_eq!(r.omega, 6);
    assert_eq!(r.layer_count, 4);
    assert!(r.sigma.iter().all(|s| s.multiplicity == 1));
    assert!(r.checks.all_pass());
    let [rot, refl] = [g.generators()[0], g.generators()[1]];
    let s = verify_string_cgroup(&g, &[refl, g.mul(rot, refl)]).unwrap();
    assert!(s.is_string_c_group());
    assert_eq!(s.schlafli, [6]);
}

#[test]
fn psl_search_contains_example_type() {
    let s = psl::psl_search(19).unwrap();
    assert!(s.types.iter().any(|row| row.schlafli == [9, 3] && row.string_c));
}
