//! Cross-checks between independent routes to the same answer.

use cantorkit::analysis::{
    expansion_characterization, expansion_membership, stage_measure, CharacterizationVerdict,
};
use cantorkit::{iterate, limit_membership, q, stage_membership, ConstructionSpec, Rational, DEFAULT_DEPTH_CAP};

fn specs() -> Vec<ConstructionSpec> {
    vec![
        ConstructionSpec::proportional(q(1, 3)).unwrap(),
        ConstructionSpec::proportional(q(2, 5)).unwrap(),
        ConstructionSpec::power(3).unwrap(),
        ConstructionSpec::power(5).unwrap(),
        ConstructionSpec::subdivision(4, [2]).unwrap(),
        ConstructionSpec::subdivision(7, [2, 4, 5]).unwrap(),
    ]
}

#[test]
fn point_membership_matches_enumeration() {
    for spec in specs() {
        let stages = iterate(&spec, 5).unwrap();
        for den in 1..=60i64 {
            for num in 0..=den {
                let x = q(num, den);
                for stage in &stages {
                    assert_eq!(
                        stage_membership(&spec, &x, stage.index),
                        stage.intervals.contains(&x),
                        "{spec} stage {} at {x}",
                        stage.index
                    );
                }
            }
        }
    }
}

#[test]
fn enumerated_measure_matches_closed_form() {
    for spec in specs() {
        for stage in iterate(&spec, 6).unwrap() {
            assert_eq!(stage.intervals.measure(), stage_measure(&spec, stage.index), "{spec}");
        }
    }
}

#[test]
fn digit_test_agrees_with_limit_verdict() {
    for spec in specs() {
        let CharacterizationVerdict::Characterized { spec: es } = expansion_characterization(&spec) else {
            continue;
        };
        for den in 1..=200i64 {
            for num in 0..=den {
                let x: Rational = q(num, den);
                let verdict = limit_membership(&spec, &x, DEFAULT_DEPTH_CAP).unwrap();
                assert_eq!(verdict.is_member(), Some(expansion_membership(&es, &x).unwrap()), "{spec} at {x}");
            }
        }
    }
}
