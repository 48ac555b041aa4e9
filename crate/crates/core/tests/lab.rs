use hypineq::lab::{
    family_holds, find_counterexample, find_threshold, verify, verify_chain, Chain, Family, Grid,
    Relation, Target, DEFAULT_TOL,
};

fn exact(f: Family) -> f64 {
    let r = f.paper_value().unwrap();
    *r.numer() as f64 / *r.denom() as f64
}

#[test]
fn doubling_the_grid_changes_no_verdict() {
    let fine = Grid::reference().densified(2);
    for fam in Family::SHARP {
        let t = exact(fam);
        for s in [
            t,
            fam.past_threshold(t, 1e-2),
            fam.past_threshold(t, 1e-4),
            fam.past_threshold(t, -1e-2),
        ] {
            let (target, relation) = fam.instance(s);
            let coarse = verify(target, relation, &Grid::reference()).unwrap().holds;
            let dense = verify(target, relation, &fine).unwrap().holds;
            assert_eq!(coarse, dense, "{fam} at {s}");
        }
    }
}

#[test]
fn every_sharp_family_recovers_its_constant() {
    for fam in Family::SHARP {
        let (lo, hi) = fam.default_interval();
        let r = find_threshold(fam, lo, hi, DEFAULT_TOL).unwrap();
        assert!(r.abs_error.unwrap() <= 1e-6, "{r:?}");
        assert!(r.iterations <= 60);
    }
}

#[test]
fn empirical_frontier_lies_between_necessary_and_sufficient() {
    for q in [0.3, 0.5, 0.7, 0.85, 0.95] {
        let fam = Family::parse("mt2-lower-empirical", Some(q)).unwrap();
        let (lo, hi) = fam.default_interval();
        let r = find_threshold(fam, lo, hi, 1e-7).unwrap();
        assert_eq!(r.label, "empirical");
        assert!(r.paper_value.is_none());
        // p >= 3q - 8/5 is necessary (the x^4 coefficient), p >= 23q/17 sufficient.
        assert!(r.threshold >= 3.0 * q - 1.6 - 1e-6, "{q}: {}", r.threshold);
        assert!(
            r.threshold <= 23.0 * q / 17.0 + 1e-6,
            "{q}: {}",
            r.threshold
        );
    }
}

#[test]
fn counterexample_examples() {
    let q = 0.8 - 0.01;
    assert!(
        find_counterexample(Target::Shp { p: q, q }, Relation::ShLess, 1e-4, 60.0)
            .unwrap()
            .is_some()
    );
    assert!(find_counterexample(
        Target::Shp { p: 3.0, q: 1.0 },
        Relation::ShGreater,
        1e-4,
        60.0
    )
    .unwrap()
    .is_none());
}

#[test]
fn large_x_violations_are_found_by_the_tail() {
    // Just below q = 1 the Cusa-type bound D_{1,q} < 0 fails only far out.
    let target = Target::Shp { p: 1.0, q: 0.99 };
    let plain = verify(
        target,
        Relation::ShLess,
        &Grid::log(1e-4, 60.0, 2000).unwrap(),
    )
    .unwrap();
    assert!(plain.holds);
    let full = verify(target, Relation::ShLess, &Grid::reference()).unwrap();
    assert!(!full.holds);
    let x = full.witness_x.unwrap();
    assert!(x > 60.0);
    assert!(full.witness_log_gap.unwrap() > 0.0);
}

#[test]
fn predicate_flips_across_each_threshold() {
    for fam in Family::SHARP {
        let t = exact(fam);
        assert!(family_holds(fam, t).unwrap(), "{fam}");
        assert!(
            !family_holds(fam, fam.past_threshold(t, 1e-3)).unwrap(),
            "{fam}"
        );
    }
}

#[test]
fn chains_degenerate_towards_zero() {
    for c in Chain::ALL {
        let near = verify_chain(c, &[1e-3]).unwrap();
        let far = verify_chain(c, &[1.0]).unwrap();
        assert!(near.tightest_gap < far.tightest_gap);
        assert!(near.tightest_gap < 1e-9);
    }
    let v = verify_chain(Chain::Mt5, &[0.1, 1.0, 5.0, 20.0]).unwrap();
    assert!(v.holds);
    assert_eq!(v.members.len(), 13);
}

#[test]
fn verdict_reports_margin_and_spec() {
    let v = verify(
        Target::Shp { p: 1.0, q: 1.0 },
        Relation::ShLess,
        &Grid::reference(),
    )
    .unwrap();
    assert!(v.holds);
    assert!(v.margin >= 0.0);
    assert!(v.grid_spec.starts_with("log:0.0001:60:2000"));
}
