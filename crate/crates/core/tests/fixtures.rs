use kpack::fixtures::{fixture, verify_fixture, FixtureId};
use kpack::Fraction;

#[test]
fn every_fixture_reproduces_its_expected_values() {
    for id in FixtureId::ALL {
        let v = verify_fixture(id).unwrap();
        for c in &v.checks {
            assert!(c.pass, "{id}: {} expected {} got {}", c.name, c.expected, c.actual);
        }
        assert!(v.report.passed(), "{id}: {:?}", v.report.failed_audits().collect::<Vec<_>>());
    }
}

#[test]
fn tight_ratios() {
    let expect = [
        (FixtureId::Fig2FiveCp, (7, 10)),
        (FixtureId::Fig3General4cp, (3, 4)),
        (FixtureId::Fig4General4pp, (3, 4)),
        (FixtureId::Fig5Metric4cp, (5, 6)),
        (FixtureId::Fig3Lifted12, (7, 8)),
    ];
    for (id, (a, b)) in expect {
        assert_eq!(verify_fixture(id).unwrap().report.ratio, Some(Fraction::new(a, b)), "{id}");
    }
}

#[test]
fn lifted_fixture_is_metric_and_one_two() {
    let g = fixture(FixtureId::Fig3Lifted12).graph;
    assert!(g.is_metric());
    assert!(g.weights_within(&[1, 2]));
}
