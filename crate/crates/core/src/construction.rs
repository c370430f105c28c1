//! The three deletion processes and their stages.
//!
//! Every process starts from `[0, 1]` and, at each step, deletes open pieces
//! from every remaining closed component:
//!
//! * `Proportional { p }` deletes the centered open piece of relative length `p`.
//! * `Power { m }` deletes a centered open piece of absolute length `m^-k` at step `k`.
//! * `Subdivision { n, removed }` cuts each component into `n` equal parts and
//!   deletes the open parts listed in `removed`. Adjacent kept parts stay
//!   glued together as one child (a "kept run").

use std::collections::BTreeSet;
use std::fmt;

use crate::error::{Error, Result};
use crate::interval::{ClosedInterval, IntervalUnion};
use crate::rational::Rational;

#[derive(Clone, PartialEq, Eq, Hash)]
pub enum ConstructionSpec {
    Proportional { p: Rational },
    Power { m: u32 },
    Subdivision { n: u32, removed: BTreeSet<u32> },
}

impl ConstructionSpec {
    pub fn proportional(p: Rational) -> Result<Self> {
        let spec = ConstructionSpec::Proportional { p };
        spec.validate()?;
        Ok(spec)
    }

    pub fn power(m: u32) -> Result<Self> {
        let spec = ConstructionSpec::Power { m };
        spec.validate()?;
        Ok(spec)
    }

    pub fn subdivision(n: u32, removed: impl IntoIterator<Item = u32>) -> Result<Self> {
        let spec = ConstructionSpec::Subdivision { n, removed: removed.into_iter().collect() };
        spec.validate()?;
        Ok(spec)
    }

    pub fn validate(&self) -> Result<()> {
        match self {
            ConstructionSpec::Proportional { p } => {
                if !(*p > 0 && *p < 1) {
                    return Err(Error::InvalidSpec(format!("proportion {p} must lie strictly between 0 and 1")));
                }
            }
            ConstructionSpec::Power { m } => {
                if *m < 2 {
                    return Err(Error::InvalidSpec(format!("power base {m} must be at least 2")));
                }
            }
            ConstructionSpec::Subdivision { n, removed } => {
                if *n < 3 {
                    return Err(Error::InvalidSpec(format!("subdivision count {n} must be at least 3")));
                }
                if removed.is_empty() {
                    return Err(Error::InvalidSpec("no part is removed".into()));
                }
                if let Some(bad) = removed.iter().find(|&&i| i >= *n) {
                    return Err(Error::InvalidSpec(format!("removed index {bad} is outside 0..{}", n - 1)));
                }
                // The outer parts carry the component's endpoints, which must
                // survive every step.
                if removed.contains(&0) || removed.contains(&(n - 1)) {
                    return Err(Error::InvalidSpec(format!(
                        "the first and last of the {n} parts must be kept"
                    )));
                }
            }
        }
        Ok(())
    }

    /// Relative spans of the children of a component, when every step applies
    /// the same affine pattern. `None` for power constructions whose removal
    /// schedule is not proportional.
    pub fn child_spans(&self) -> Option<Vec<(Rational, Rational)>> {
        match self {
            ConstructionSpec::Proportional { p } => {
                let q = keep_fraction(p);
                Some(vec![(Rational::zero(), q.clone()), (Rational::one() - &q, Rational::one())])
            }
            ConstructionSpec::Subdivision { .. } => {
                Some(kept_runs(self).ok()?.iter().map(Run::relative_span).collect())
            }
            // Components of stage k have length 3^-k and lose 3^-(k+1): the
            // middle third, every time.
            ConstructionSpec::Power { m: 3 } => {
                Some(vec![(Rational::zero(), crate::rational::q(1, 3)), (crate::rational::q(2, 3), Rational::one())])
            }
            ConstructionSpec::Power { .. } => None,
        }
    }

    /// Number of children each non-degenerate component produces.
    pub fn branching(&self) -> u64 {
        match self {
            ConstructionSpec::Subdivision { .. } => kept_runs(self).map(|r| r.len() as u64).unwrap_or(0),
            _ => 2,
        }
    }
}

/// `(1 - p) / 2`, the relative length of each child in a proportional step.
pub(crate) fn keep_fraction(p: &Rational) -> Rational {
    (Rational::one() - p) / Rational::from(2)
}

impl fmt::Display for ConstructionSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ConstructionSpec::Proportional { p } => write!(f, "Proportional({p})"),
            ConstructionSpec::Power { m } => write!(f, "Power({m})"),
            ConstructionSpec::Subdivision { n, removed } => {
                let idx: Vec<String> = removed.iter().map(u32::to_string).collect();
                write!(f, "Subdivision({n}, {{{}}})", idx.join(","))
            }
        }
    }
}

impl fmt::Debug for ConstructionSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// A maximal block of consecutive kept parts in a subdivision pattern.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Run {
    pub start: u32,
    pub width: u32,
    pub parts: u32,
}

impl Run {
    pub fn relative_span(&self) -> (Rational, Rational) {
        let n = i64::from(self.parts);
        (
            Rational::from(i64::from(self.start)) / Rational::from(n),
            Rational::from(i64::from(self.start + self.width)) / Rational::from(n),
        )
    }

    /// Contraction ratio of the child built from this run.
    pub fn ratio(&self) -> Rational {
        Rational::from(i64::from(self.width)) / Rational::from(i64::from(self.parts))
    }
}

pub fn kept_runs(spec: &ConstructionSpec) -> Result<Vec<Run>> {
    let ConstructionSpec::Subdivision { n, removed } = spec else {
        return Err(Error::InvalidSpec(format!("{spec} has no subdivision pattern")));
    };
    spec.validate()?;
    let mut runs: Vec<Run> = Vec::new();
    for i in (0..*n).filter(|i| !removed.contains(i)) {
        match runs.last_mut() {
            Some(run) if run.start + run.width == i => run.width += 1,
            _ => runs.push(Run { start: i, width: 1, parts: *n }),
        }
    }
    Ok(runs)
}

#[derive(Clone, PartialEq, Eq)]
pub struct Stage {
    pub index: u32,
    pub intervals: IntervalUnion,
    pub stalled: bool,
}

impl Stage {
    pub fn initial() -> Self {
        Stage { index: 0, intervals: IntervalUnion::unit(), stalled: false }
    }
}

impl fmt::Debug for Stage {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Stage {}{}: {}", self.index, if self.stalled { " (stalled)" } else { "" }, self.intervals)
    }
}

/// Caps full enumeration of stages.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    pub max_intervals: u64,
}

impl Default for Limits {
    fn default() -> Self {
        Limits { max_intervals: 1 << 30 }
    }
}

/// Applies one deletion round to every component of `stage`.
pub fn next_stage(spec: &ConstructionSpec, stage: &Stage) -> Result<Stage> {
    spec.validate()?;
    if stage.stalled {
        return Ok(Stage { index: stage.index + 1, ..stage.clone() });
    }
    let index = stage.index + 1;
    let mut out = Vec::with_capacity(stage.intervals.len() * 2);
    let mut stalled = false;
    match spec {
        ConstructionSpec::Power { m } => {
            let removal = Rational::inverse_power(u64::from(*m), index);
            for iv in &stage.intervals {
                let len = iv.length();
                if len > removal {
                    let child = (&len - &removal) / Rational::from(2);
                    out.push(ClosedInterval::new(iv.lo().clone(), iv.lo() + &child)?);
                    out.push(ClosedInterval::new(iv.hi() - &child, iv.hi().clone())?);
                } else if len == removal {
                    out.push(ClosedInterval::point(iv.lo().clone()));
                    out.push(ClosedInterval::point(iv.hi().clone()));
                    stalled = true;
                } else {
                    out.push(iv.clone());
                    stalled = true;
                }
            }
        }
        _ => {
            let spans = spec.child_spans().expect("self-similar spec");
            for iv in &stage.intervals {
                out.extend(spans.iter().map(|(a, b)| iv.relative(a, b)));
            }
        }
    }
    Ok(Stage { index, intervals: IntervalUnion::from_sorted_unchecked(out), stalled })
}

/// Stages `0..=depth`, using the default enumeration limit.
pub fn iterate(spec: &ConstructionSpec, depth: u32) -> Result<Vec<Stage>> {
    iterate_with(spec, depth, &Limits::default())
}

pub fn iterate_with(spec: &ConstructionSpec, depth: u32, limits: &Limits) -> Result<Vec<Stage>> {
    check_enumeration(spec, depth, limits)?;
    let mut stages = vec![Stage::initial()];
    for _ in 0..depth {
        let next = next_stage(spec, stages.last().expect("nonempty"))?;
        stages.push(next);
    }
    Ok(stages)
}

/// The last stage only; intermediate stages are dropped as soon as possible.
pub fn stage_at(spec: &ConstructionSpec, depth: u32, limits: &Limits) -> Result<Stage> {
    check_enumeration(spec, depth, limits)?;
    let mut stage = Stage::initial();
    for _ in 0..depth {
        stage = next_stage(spec, &stage)?;
    }
    Ok(stage)
}

/// Fails before any work is done when some stage up to `depth` would hold
/// more intervals than `limits` allows.
fn check_enumeration(spec: &ConstructionSpec, depth: u32, limits: &Limits) -> Result<()> {
    spec.validate()?;
    let branching = spec.branching();
    let two = Rational::from(2);
    let mut count: u64 = 1;
    let mut len = Rational::one();
    for step in 1..=depth {
        if let ConstructionSpec::Power { m } = spec {
            let removal = Rational::inverse_power(u64::from(*m), step);
            if len < removal {
                break;
            }
            if len == removal {
                // Stalls into points; no further growth.
                count = count.saturating_mul(2);
                if count > limits.max_intervals {
                    return Err(too_many(spec, step, count, limits));
                }
                break;
            }
            len = (&len - &removal) / &two;
        }
        count = count.saturating_mul(branching);
        if count > limits.max_intervals {
            return Err(too_many(spec, step, count, limits));
        }
    }
    Ok(())
}

fn too_many(spec: &ConstructionSpec, step: u32, count: u64, limits: &Limits) -> Error {
    Error::Resource(format!(
        "stage {step} of {spec} would hold {count} intervals, above the limit of {}",
        limits.max_intervals
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::q;

    fn union(pairs: &[((i64, i64), (i64, i64))]) -> IntervalUnion {
        IntervalUnion::from_pairs(pairs.iter().map(|&(a, b)| (q(a.0, a.1), q(b.0, b.1)))).unwrap()
    }

    fn stage(index: u32, pairs: &[((i64, i64), (i64, i64))]) -> Stage {
        Stage { index, intervals: union(pairs), stalled: false }
    }

    #[test]
    fn spec_validation() {
        assert!(ConstructionSpec::proportional(q(0, 1)).is_err());
        assert!(ConstructionSpec::proportional(q(1, 1)).is_err());
        assert!(ConstructionSpec::proportional(q(-1, 2)).is_err());
        assert!(ConstructionSpec::power(1).is_err());
        assert!(ConstructionSpec::subdivision(2, [1]).is_err());
        assert!(ConstructionSpec::subdivision(4, []).is_err());
        assert!(ConstructionSpec::subdivision(4, [4]).is_err());
        assert!(ConstructionSpec::subdivision(4, [0]).is_err());
        assert!(ConstructionSpec::subdivision(4, [3]).is_err());
        assert!(ConstructionSpec::subdivision(5, [1, 2, 3]).is_ok());
        let bad = ConstructionSpec::Power { m: 0 };
        assert!(next_stage(&bad, &Stage::initial()).is_err());
    }

    #[test]
    fn kept_runs_examples() {
        let runs = |n, r: &[u32]| {
            kept_runs(&ConstructionSpec::subdivision(n, r.iter().copied()).unwrap())
                .unwrap()
                .iter()
                .map(|r| (r.start, r.width))
                .collect::<Vec<_>>()
        };
        assert_eq!(runs(4, &[2]), vec![(0, 2), (3, 1)]);
        assert_eq!(runs(3, &[1]), vec![(0, 1), (2, 1)]);
        assert_eq!(runs(8, &[3, 4]), vec![(0, 3), (5, 3)]);
        assert!(kept_runs(&ConstructionSpec::power(4).unwrap()).is_err());
    }

    #[test]
    fn first_ternary_step() {
        let spec = ConstructionSpec::proportional(q(1, 3)).unwrap();
        let s1 = next_stage(&spec, &Stage::initial()).unwrap();
        assert_eq!(s1.intervals, union(&[((0, 1), (1, 3)), ((2, 3), (1, 1))]));
        assert_eq!(s1.index, 1);
    }

    #[test]
    fn asymmetric_second_step() {
        let spec = ConstructionSpec::subdivision(4, [2]).unwrap();
        let ac1 = stage(1, &[((0, 1), (1, 2)), ((3, 4), (1, 1))]);
        let ac2 = next_stage(&spec, &ac1).unwrap();
        assert_eq!(
            ac2.intervals,
            union(&[((0, 1), (1, 4)), ((3, 8), (1, 2)), ((3, 4), (7, 8)), ((15, 16), (1, 1))])
        );
    }

    #[test]
    fn volterra_second_step() {
        let spec = ConstructionSpec::power(4).unwrap();
        let s1 = stage(1, &[((0, 1), (3, 8)), ((5, 8), (1, 1))]);
        let s2 = next_stage(&spec, &s1).unwrap();
        assert_eq!(
            s2.intervals,
            union(&[((0, 1), (5, 32)), ((7, 32), (3, 8)), ((5, 8), (25, 32)), ((27, 32), (1, 1))])
        );
        assert!(!s2.stalled);
    }

    #[test]
    fn power_two_stalls_to_four_points() {
        let spec = ConstructionSpec::power(2).unwrap();
        let s1 = stage(1, &[((0, 1), (1, 4)), ((3, 4), (1, 1))]);
        let s2 = next_stage(&spec, &s1).unwrap();
        assert!(s2.stalled);
        let pts: Vec<_> = s2.intervals.iter().map(|iv| (iv.is_degenerate(), iv.lo().clone())).collect();
        assert_eq!(pts, vec![(true, q(0, 1)), (true, q(1, 4)), (true, q(3, 4)), (true, q(1, 1))]);
        let s3 = next_stage(&spec, &s2).unwrap();
        assert_eq!(s3.intervals, s2.intervals);
        assert_eq!(s3.index, 3);
        assert!(s3.stalled);
    }

    #[test]
    fn power_excess_removal_freezes_component() {
        // Not reachable from [0, 1]; exercised on a hand-made stage.
        let spec = ConstructionSpec::power(2).unwrap();
        let s = stage(1, &[((0, 1), (1, 8))]);
        let next = next_stage(&spec, &s).unwrap();
        assert!(next.stalled);
        assert_eq!(next.intervals, s.intervals);
    }

    #[test]
    fn iterate_examples() {
        let cantor = ConstructionSpec::proportional(q(1, 3)).unwrap();
        let stages = iterate(&cantor, 2).unwrap();
        assert_eq!(stages.len(), 3);
        assert_eq!(
            stages[2].intervals,
            union(&[((0, 1), (1, 9)), ((2, 9), (1, 3)), ((2, 3), (7, 9)), ((8, 9), (1, 1))])
        );
        let c34 = ConstructionSpec::proportional(q(3, 4)).unwrap();
        assert_eq!(
            iterate(&c34, 2).unwrap()[2].intervals,
            union(&[((0, 1), (1, 64)), ((7, 64), (1, 8)), ((7, 8), (57, 64)), ((63, 64), (1, 1))])
        );
        for spec in [cantor, c34, ConstructionSpec::power(5).unwrap()] {
            let s = iterate(&spec, 0).unwrap();
            assert_eq!(s, vec![Stage::initial()]);
        }
    }

    #[test]
    fn iterate_respects_limit() {
        let cantor = ConstructionSpec::proportional(q(1, 3)).unwrap();
        let limits = Limits { max_intervals: 16 };
        assert_eq!(iterate_with(&cantor, 4, &limits).unwrap().len(), 5);
        assert!(matches!(iterate_with(&cantor, 5, &limits), Err(Error::Resource(_))));
        assert!(matches!(stage_at(&cantor, 5, &limits), Err(Error::Resource(_))));
        // Far beyond the default limit, the request fails without enumerating.
        assert!(matches!(iterate(&cantor, 64), Err(Error::Resource(_))));
        // A stalled process stops growing, so it never trips the limit.
        let svc2 = ConstructionSpec::power(2).unwrap();
        let limits = Limits { max_intervals: 4 };
        assert_eq!(iterate_with(&svc2, 40, &limits).unwrap().len(), 41);
    }

    #[test]
    fn stages_nest_and_keep_endpoints() {
        let specs = [
            ConstructionSpec::proportional(q(1, 3)).unwrap(),
            ConstructionSpec::proportional(q(1, 4)).unwrap(),
            ConstructionSpec::proportional(q(2, 7)).unwrap(),
            ConstructionSpec::power(4).unwrap(),
            ConstructionSpec::power(2).unwrap(),
            ConstructionSpec::subdivision(4, [2]).unwrap(),
            ConstructionSpec::subdivision(5, [2, 3]).unwrap(),
            ConstructionSpec::subdivision(7, [1, 3, 4]).unwrap(),
        ];
        for spec in &specs {
            let depth = if spec.branching() > 2 { 7 } else { 12 };
            let stages = iterate(spec, depth).unwrap();
            for w in stages.windows(2) {
                assert!(w[1].intervals.is_subset_of(&w[0].intervals), "{spec}: stage {} not nested", w[1].index);
                let next_ends = w[1].intervals.endpoints();
                for e in w[0].intervals.endpoints() {
                    assert!(next_ends.binary_search(&e).is_ok(), "{spec}: endpoint {e} lost at {}", w[1].index);
                }
            }
        }
    }

    #[test]
    fn proportional_count_and_length_law() {
        for (p, ql) in [((1, 3), (1, 3)), ((1, 4), (3, 8))] {
            let spec = ConstructionSpec::proportional(q(p.0, p.1)).unwrap();
            for s in iterate(&spec, 8).unwrap() {
                assert_eq!(s.intervals.len(), 1 << s.index);
                let expect = q(ql.0, ql.1).pow(s.index);
                assert!(s.intervals.iter().all(|iv| iv.length() == expect));
            }
        }
    }
}
