//! Stage and limit measures by closed recursion, without enumerating stages.

use crate::construction::{keep_fraction, kept_runs, ConstructionSpec};
use crate::rational::Rational;

/// Length of one component of stage `n` of a power construction, together
/// with whether the process has stalled by then. All components of a given
/// stage share the same length.
fn power_component(m: u32, n: u32) -> (Rational, bool) {
    let two = Rational::from(2);
    let mut len = Rational::one();
    for step in 1..=n {
        let removal = Rational::inverse_power(u64::from(m), step);
        if len < removal {
            return (len, true);
        }
        if len == removal {
            return (Rational::zero(), true);
        }
        len = (&len - &removal) / &two;
    }
    (len, false)
}

/// Number of components of stage `n` of a power construction.
fn power_count(m: u32, n: u32) -> Rational {
    let two = Rational::from(2);
    let mut len = Rational::one();
    let mut count = Rational::one();
    for step in 1..=n {
        let removal = Rational::inverse_power(u64::from(m), step);
        if len < removal {
            break;
        }
        count = &count * &two;
        if len == removal {
            break;
        }
        len = (&len - &removal) / &two;
    }
    count
}

/// Exact measure of stage `n`.
pub fn stage_measure(spec: &ConstructionSpec, n: u32) -> Rational {
    match spec {
        ConstructionSpec::Proportional { p } => (Rational::one() - p).pow(n),
        ConstructionSpec::Subdivision { n: parts, removed } => {
            let kept = i64::from(parts - removed.len() as u32);
            (Rational::from(kept) / Rational::from(i64::from(*parts))).pow(n)
        }
        ConstructionSpec::Power { m } => {
            let (len, _) = power_component(*m, n);
            power_count(*m, n) * len
        }
    }
}

/// Total length deleted at step `n` (for `n >= 1`).
pub fn removed_at_step(spec: &ConstructionSpec, n: u32) -> Rational {
    assert!(n >= 1, "steps are numbered from 1");
    stage_measure(spec, n - 1) - stage_measure(spec, n)
}

/// Longest component of stage `n`.
pub fn max_component_length(spec: &ConstructionSpec, n: u32) -> Rational {
    match spec {
        ConstructionSpec::Proportional { p } => keep_fraction(p).pow(n),
        ConstructionSpec::Subdivision { .. } => {
            let widest = kept_runs(spec)
                .expect("valid subdivision")
                .iter()
                .map(|r| r.ratio())
                .max()
                .expect("at least one kept run");
            widest.pow(n)
        }
        ConstructionSpec::Power { m } => power_component(*m, n).0,
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LimitMeasure {
    pub value: Rational,
    /// Set when the process stalls into finitely many points, so the value is
    /// the measure of that point set rather than of a Cantor-like limit.
    pub degenerate: bool,
}

pub fn limit_measure(spec: &ConstructionSpec) -> LimitMeasure {
    match spec {
        ConstructionSpec::Power { m: 2 } => LimitMeasure { value: Rational::zero(), degenerate: true },
        // 1 minus the deleted total sum_{k>=1} 2^(k-1) / m^k = 1 / (m - 2).
        ConstructionSpec::Power { m } => {
            let m = i64::from(*m);
            LimitMeasure { value: Rational::from(m - 3) / Rational::from(m - 2), degenerate: false }
        }
        _ => LimitMeasure { value: Rational::zero(), degenerate: false },
    }
}
