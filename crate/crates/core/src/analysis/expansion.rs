//! Digit-expansion descriptions of limit sets.
//!
//! A rational `x` in `[0, 1]` has a base-`b` expansion using only digits from
//! `D` iff the digit automaton `x -> b*x - d` (for `d` in `D`, staying inside
//! `[0, 1]`) has an infinite run from `x`. Every state keeps the denominator of
//! `x` (or a divisor of it), so the state graph is finite and a depth-first
//! search with cycle detection decides the question. Branching happens exactly
//! at points with two expansions, which makes membership existential over
//! expansions.

use std::collections::{BTreeSet, HashMap, HashSet};
use std::fmt;

use num_bigint::BigInt;
use num_traits::ToPrimitive;

use crate::construction::{iterate_with, keep_fraction, kept_runs, ConstructionSpec, Limits};
use crate::error::{Error, Result};
use crate::interval::{ClosedInterval, IntervalUnion};
use crate::rational::Rational;

/// Base `b` together with the digits an expansion may use.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ExpansionSpec {
    base: u32,
    allowed: BTreeSet<u32>,
}

impl ExpansionSpec {
    pub fn new(base: u32, allowed: impl IntoIterator<Item = u32>) -> Result<Self> {
        let allowed: BTreeSet<u32> = allowed.into_iter().collect();
        if base < 2 {
            return Err(Error::InvalidSpec(format!("base {base} must be at least 2")));
        }
        if allowed.is_empty() {
            return Err(Error::InvalidSpec("no digit is allowed".into()));
        }
        if let Some(d) = allowed.iter().find(|&&d| d >= base) {
            return Err(Error::InvalidSpec(format!("digit {d} is not a base-{base} digit")));
        }
        if allowed.len() == base as usize {
            return Err(Error::InvalidSpec(format!("every base-{base} digit is allowed")));
        }
        Ok(ExpansionSpec { base, allowed })
    }

    pub fn base(&self) -> u32 {
        self.base
    }

    pub fn allowed(&self) -> &BTreeSet<u32> {
        &self.allowed
    }
}

impl fmt::Display for ExpansionSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let digits: Vec<String> = self.allowed.iter().map(u32::to_string).collect();
        write!(f, "base {} digits {{{}}}", self.base, digits.join(","))
    }
}

impl fmt::Debug for ExpansionSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// An eventually periodic expansion `0.pre (per)(per)...` in some base.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DigitExpansion {
    pub base: u32,
    pub preperiod: Vec<u32>,
    pub period: Vec<u32>,
}

impl DigitExpansion {
    pub fn value(&self) -> Rational {
        let b = BigInt::from(self.base);
        let as_int = |digits: &[u32]| digits.iter().fold(BigInt::from(0), |acc, &d| acc * &b + d);
        let pre_len = self.preperiod.len() as u32;
        let per_len = self.period.len() as u32;
        let scale = Rational::from_integer(num_traits::pow(b.clone(), pre_len as usize));
        let head = Rational::from_integer(as_int(&self.preperiod)) / &scale;
        if per_len == 0 {
            return head;
        }
        let cycle = Rational::from_integer(as_int(&self.period))
            / Rational::from_integer(num_traits::pow(b.clone(), per_len as usize) - 1);
        head + cycle / scale
    }

    /// Digits `0..len` of the expansion.
    pub fn digits(&self, len: usize) -> Vec<u32> {
        self.preperiod.iter().chain(self.period.iter().cycle()).take(len).copied().collect()
    }
}

impl fmt::Display for DigitExpansion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |ds: &[u32]| ds.iter().map(u32::to_string).collect::<Vec<_>>().join(",");
        write!(f, "0.[{}]({})_{}", join(&self.preperiod), join(&self.period), self.base)
    }
}

/// Where every admissible digit path from `x` dies: the deepest digit
/// position reached and the digit the plain expansion needs there.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DeadEnd {
    pub position: usize,
    pub digit: u32,
}

fn successors<'a>(es: &'a ExpansionSpec, s: &'a Rational) -> impl Iterator<Item = (u32, Rational)> + 'a {
    let scaled = s * &Rational::from(i64::from(es.base));
    es.allowed.iter().filter_map(move |&d| {
        let next = &scaled - &Rational::from(i64::from(d));
        (Rational::zero()..=Rational::one()).contains(&next).then_some((d, next))
    })
}

/// Finds an admissible expansion of `x`, preferring smaller digits first.
pub fn find_expansion(es: &ExpansionSpec, x: &Rational) -> Result<std::result::Result<DigitExpansion, DeadEnd>> {
    if *x < 0 || *x > 1 {
        return Err(Error::OutOfUnitInterval(x.to_string()));
    }
    struct Frame {
        state: Rational,
        options: Vec<(u32, Rational)>,
        next: usize,
    }
    let frame = |state: Rational| Frame { options: successors(es, &state).collect(), state, next: 0 };

    let mut stack = vec![frame(x.clone())];
    let mut on_stack: HashMap<Rational, usize> = HashMap::from([(x.clone(), 0)]);
    let mut dead: HashSet<Rational> = HashSet::new();
    let mut deepest: Option<(usize, Rational)> = None;

    while let Some(top) = stack.last_mut() {
        if top.next == top.options.len() {
            let done = stack.pop().expect("nonempty");
            let depth = stack.len();
            if deepest.as_ref().is_none_or(|(d, _)| depth > *d) {
                deepest = Some((depth, done.state.clone()));
            }
            on_stack.remove(&done.state);
            dead.insert(done.state);
            continue;
        }
        let (_, candidate) = &top.options[top.next];
        top.next += 1;
        if dead.contains(candidate) {
            continue;
        }
        if let Some(&start) = on_stack.get(candidate) {
            let digits: Vec<u32> = stack.iter().map(|f| f.options[f.next - 1].0).collect();
            return Ok(Ok(DigitExpansion {
                base: es.base,
                preperiod: digits[..start].to_vec(),
                period: digits[start..].to_vec(),
            }));
        }
        let candidate = candidate.clone();
        on_stack.insert(candidate.clone(), stack.len());
        stack.push(frame(candidate));
    }

    let (depth, state) = deepest.expect("search visited the root");
    let scaled = &state * &Rational::from(i64::from(es.base));
    let digit = scaled.floor().to_u32().unwrap_or(u32::MAX).min(es.base - 1);
    Ok(Err(DeadEnd { position: depth + 1, digit }))
}

/// True iff some base-`b` expansion of `x` uses only allowed digits.
pub fn expansion_membership(es: &ExpansionSpec, x: &Rational) -> Result<bool> {
    Ok(find_expansion(es, x)?.is_ok())
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CharacterizationVerdict {
    Characterized { spec: ExpansionSpec },
    /// `natural_guess` is the digit set suggested by the construction's own
    /// subdivision, which fails to describe the set.
    NotCharacterizable { reason: String, natural_guess: Option<ExpansionSpec> },
    /// `point` belongs to exactly one of the stage and the truncated digit set.
    MismatchWitness { depth: u32, point: Rational },
}

impl fmt::Display for CharacterizationVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CharacterizationVerdict::Characterized { spec } => write!(f, "characterized by {spec}"),
            CharacterizationVerdict::NotCharacterizable { reason, natural_guess } => {
                write!(f, "not characterizable: {reason}")?;
                if let Some(g) = natural_guess {
                    write!(f, " (natural guess {g})")?;
                }
                Ok(())
            }
            CharacterizationVerdict::MismatchWitness { depth, point } => {
                write!(f, "mismatch at depth {depth}: {point}")
            }
        }
    }
}

/// Largest base for which a natural digit guess is spelled out.
const MAX_GUESS_BASE: u32 = 1 << 16;

/// Looks for a digit description in the base the construction itself suggests.
pub fn expansion_characterization(spec: &ConstructionSpec) -> CharacterizationVerdict {
    match spec {
        ConstructionSpec::Subdivision { n, removed } => {
            let guess = ExpansionSpec::new(*n, (0..*n).filter(|i| !removed.contains(i))).ok();
            let runs = kept_runs(spec).expect("valid subdivision");
            if runs.iter().all(|r| r.width == 1) {
                CharacterizationVerdict::Characterized { spec: guess.expect("proper digit subset") }
            } else {
                CharacterizationVerdict::NotCharacterizable {
                    reason: format!("kept run wider than 1 part; only base {n} was tested"),
                    natural_guess: guess,
                }
            }
        }
        ConstructionSpec::Proportional { p } => {
            // Each child is q = w/n of its parent: in n equal parts, the
            // first w and last w are kept.
            let q = keep_fraction(p);
            let (w, n) = match (q.numer().to_u32(), q.denom().to_u32()) {
                (Some(w), Some(n)) if n <= MAX_GUESS_BASE => (w, n),
                _ => {
                    return CharacterizationVerdict::NotCharacterizable {
                        reason: format!("child ratio {q} has no small natural base"),
                        natural_guess: None,
                    }
                }
            };
            let guess = ExpansionSpec::new(n, (0..w).chain(n - w..n)).expect("proper digit subset");
            if w == 1 {
                CharacterizationVerdict::Characterized { spec: guess }
            } else {
                CharacterizationVerdict::NotCharacterizable {
                    reason: format!("children span {w} of {n} parts; only base {n} was tested"),
                    natural_guess: Some(guess),
                }
            }
        }
        ConstructionSpec::Power { m: 2 } => CharacterizationVerdict::NotCharacterizable {
            reason: "stalls to a finite set of points".into(),
            natural_guess: None,
        },
        // Identical to the ternary middle-third process.
        ConstructionSpec::Power { m: 3 } => CharacterizationVerdict::Characterized {
            spec: ExpansionSpec::new(3, [0, 2]).expect("valid"),
        },
        ConstructionSpec::Power { .. } => CharacterizationVerdict::NotCharacterizable {
            reason: "stage-dependent removal lengths".into(),
            natural_guess: None,
        },
    }
}

/// Union of the closed cylinders of length `b^-level` for all admissible
/// digit prefixes of length `level`, for every level up to `depth`.
fn digit_set_levels(es: &ExpansionSpec, depth: u32, limits: &Limits) -> Result<Vec<IntervalUnion>> {
    let per_level = es.allowed.len() as u64;
    let total = (per_level as f64).powi(depth as i32);
    if total > limits.max_intervals as f64 {
        return Err(Error::Resource(format!(
            "{es} at depth {depth} has {total} digit prefixes, above the limit of {}",
            limits.max_intervals
        )));
    }
    let b = Rational::from(i64::from(es.base));
    let mut lefts = vec![Rational::zero()];
    let mut width = Rational::one();
    let mut out = Vec::with_capacity(depth as usize);
    for _ in 0..depth {
        width = &width / &b;
        let width = &width;
        lefts = lefts
            .iter()
            .flat_map(|l| es.allowed.iter().map(move |&d| l + &(width * &Rational::from(i64::from(d)))))
            .collect();
        out.push(IntervalUnion::normalize(
            lefts.iter().map(|l| ClosedInterval::new(l.clone(), l + width).expect("ordered")),
        ));
    }
    Ok(out)
}

/// Compares stages `1..=depth` with the digit-set truncations of the same depth.
pub fn characterization_equivalence_check(
    spec: &ConstructionSpec,
    es: &ExpansionSpec,
    depth: u32,
    limits: &Limits,
) -> Result<CharacterizationVerdict> {
    if depth == 0 {
        return Err(Error::InvalidSpec("equivalence depth must be at least 1".into()));
    }
    let stages = iterate_with(spec, depth, limits)?;
    let digit_sets = digit_set_levels(es, depth, limits)?;
    for (stage, digits) in stages.iter().skip(1).zip(&digit_sets) {
        if let Some(point) = stage.intervals.first_difference(digits) {
            return Ok(CharacterizationVerdict::MismatchWitness { depth: stage.index, point });
        }
    }
    Ok(CharacterizationVerdict::Characterized { spec: es.clone() })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::q;

    fn ternary() -> ExpansionSpec {
        ExpansionSpec::new(3, [0, 2]).unwrap()
    }

    #[test]
    fn expansion_spec_validation() {
        assert!(ExpansionSpec::new(1, [0]).is_err());
        assert!(ExpansionSpec::new(3, []).is_err());
        assert!(ExpansionSpec::new(3, [0, 3]).is_err());
        assert!(ExpansionSpec::new(2, [0, 1]).is_err());
    }

    #[test]
    fn ternary_membership_examples() {
        assert!(expansion_membership(&ternary(), &q(1, 4)).unwrap());
        assert!(!expansion_membership(&ternary(), &q(1, 2)).unwrap());
        assert!(expansion_membership(&ternary(), &q(2, 3)).unwrap());
        let c12 = ExpansionSpec::new(4, [0, 3]).unwrap();
        assert!(expansion_membership(&c12, &q(13, 16)).unwrap());
        assert!(expansion_membership(&ternary(), &q(3, 2)).is_err());
    }

    #[test]
    fn quarter_cycles_through_three_quarters() {
        let e = find_expansion(&ternary(), &q(1, 4)).unwrap().unwrap();
        assert_eq!(e.preperiod, Vec::<u32>::new());
        assert_eq!(e.period, vec![0, 2]);
        assert_eq!(e.value(), q(1, 4));
    }

    #[test]
    fn dual_expansion_picks_the_admissible_one() {
        // 1/3 = 0.1000... = 0.0222...; only the second avoids digit 1.
        let e = find_expansion(&ternary(), &q(1, 3)).unwrap().unwrap();
        assert_eq!(e.digits(4), vec![0, 2, 2, 2]);
        assert_eq!(e.value(), q(1, 3));
        let e = find_expansion(&ternary(), &q(2, 3)).unwrap().unwrap();
        assert_eq!(e.digits(3), vec![2, 0, 0]);
    }

    #[test]
    fn dead_end_reports_position_and_digit() {
        let dead = find_expansion(&ternary(), &q(1, 2)).unwrap().unwrap_err();
        assert_eq!(dead, DeadEnd { position: 1, digit: 1 });
        // 1/6 = 0.0111..._3: digit 0 is fine, then stuck on 1/2.
        let dead = find_expansion(&ternary(), &q(1, 6)).unwrap().unwrap_err();
        assert_eq!(dead, DeadEnd { position: 2, digit: 1 });
    }

    #[test]
    fn digit_expansion_value() {
        let e = DigitExpansion { base: 10, preperiod: vec![1], period: vec![6] };
        assert_eq!(e.value(), q(1, 6));
        let e = DigitExpansion { base: 2, preperiod: vec![0, 1], period: vec![] };
        assert_eq!(e.value(), q(1, 4));
    }

    #[test]
    fn characterization_verdicts() {
        let prop = |a, b| expansion_characterization(&ConstructionSpec::proportional(q(a, b)).unwrap());
        assert_eq!(prop(1, 3), CharacterizationVerdict::Characterized { spec: ternary() });
        assert_eq!(
            prop(1, 2),
            CharacterizationVerdict::Characterized { spec: ExpansionSpec::new(4, [0, 3]).unwrap() }
        );
        assert_eq!(
            prop(3, 4),
            CharacterizationVerdict::Characterized { spec: ExpansionSpec::new(8, [0, 7]).unwrap() }
        );
        match prop(1, 4) {
            CharacterizationVerdict::NotCharacterizable { natural_guess, .. } => {
                assert_eq!(natural_guess, Some(ExpansionSpec::new(8, [0, 1, 2, 5, 6, 7]).unwrap()));
            }
            other => panic!("unexpected {other}"),
        }
        let ac = ConstructionSpec::subdivision(4, [2]).unwrap();
        assert!(matches!(
            expansion_characterization(&ac),
            CharacterizationVerdict::NotCharacterizable { .. }
        ));
        let spread = ConstructionSpec::subdivision(5, [1, 3]).unwrap();
        assert_eq!(
            expansion_characterization(&spread),
            CharacterizationVerdict::Characterized { spec: ExpansionSpec::new(5, [0, 2, 4]).unwrap() }
        );
        assert!(matches!(
            expansion_characterization(&ConstructionSpec::power(4).unwrap()),
            CharacterizationVerdict::NotCharacterizable { .. }
        ));
    }

    #[test]
    fn equivalence_check_examples() {
        let limits = Limits::default();
        let cantor = ConstructionSpec::proportional(q(1, 3)).unwrap();
        assert_eq!(
            characterization_equivalence_check(&cantor, &ternary(), 3, &limits).unwrap(),
            CharacterizationVerdict::Characterized { spec: ternary() }
        );
        let c14 = ConstructionSpec::proportional(q(1, 4)).unwrap();
        let guess = ExpansionSpec::new(8, [0, 1, 2, 5, 6, 7]).unwrap();
        assert_eq!(
            characterization_equivalence_check(&c14, &guess, 2, &limits).unwrap(),
            CharacterizationVerdict::MismatchWitness { depth: 2, point: q(1, 16) }
        );
        let c34 = ConstructionSpec::proportional(q(3, 4)).unwrap();
        let e8 = ExpansionSpec::new(8, [0, 7]).unwrap();
        assert_eq!(
            characterization_equivalence_check(&c34, &e8, 2, &limits).unwrap(),
            CharacterizationVerdict::Characterized { spec: e8.clone() }
        );
        let tight = Limits { max_intervals: 8 };
        assert!(matches!(
            characterization_equivalence_check(&c34, &e8, 4, &tight),
            Err(Error::Resource(_))
        ));
    }

    #[test]
    fn positive_verdicts_survive_equivalence_check() {
        let specs = [
            ConstructionSpec::proportional(q(1, 3)).unwrap(),
            ConstructionSpec::proportional(q(1, 2)).unwrap(),
            ConstructionSpec::proportional(q(3, 4)).unwrap(),
            ConstructionSpec::proportional(q(3, 5)).unwrap(),
            ConstructionSpec::power(3).unwrap(),
            ConstructionSpec::subdivision(3, [1]).unwrap(),
            ConstructionSpec::subdivision(5, [1, 3]).unwrap(),
        ];
        for spec in &specs {
            let CharacterizationVerdict::Characterized { spec: es } = expansion_characterization(spec) else {
                panic!("{spec} should be characterized");
            };
            for d in 1..=6 {
                assert_eq!(
                    characterization_equivalence_check(spec, &es, d, &Limits::default()).unwrap(),
                    CharacterizationVerdict::Characterized { spec: es.clone() },
                    "{spec} at depth {d}"
                );
            }
        }
    }

    #[test]
    fn witness_lies_in_exactly_one_set() {
        let ac = ConstructionSpec::subdivision(4, [2]).unwrap();
        let guess = ExpansionSpec::new(4, [0, 1, 3]).unwrap();
        let CharacterizationVerdict::MismatchWitness { depth, point } =
            characterization_equivalence_check(&ac, &guess, 4, &Limits::default()).unwrap()
        else {
            panic!("asymmetric set must not match its naive digit set");
        };
        let stage = crate::construction::iterate(&ac, depth).unwrap().pop().unwrap();
        let digits = digit_set_levels(&guess, depth, &Limits::default()).unwrap().pop().unwrap();
        assert_ne!(stage.intervals.contains(&point), digits.contains(&point));
    }
}
