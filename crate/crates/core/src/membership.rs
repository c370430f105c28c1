//! Deciding whether a rational point survives every deletion step.
//!
//! For self-similar processes the future of a point depends only on its
//! relative position inside the component that currently holds it. That
//! position is rational, so a point that is never deleted either lands on a
//! component endpoint (endpoints are never deleted) or revisits an earlier
//! position, at which point its whole future repeats.

use std::collections::HashMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::construction::ConstructionSpec;
use crate::error::{Error, Result};
use crate::rational::Rational;

pub const DEFAULT_DEPTH_CAP: u32 = 10_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MembershipVerdict {
    /// The relative position repeats with this period; the point is never deleted.
    MemberByCycle { cycle_length: u32 },
    /// The point is a component endpoint from this stage on.
    MemberByEndpoint { depth: u32 },
    /// The point falls strictly inside an open piece deleted at this step.
    ExcludedAtDepth { depth: u32 },
    /// The point survived this many steps without a decision.
    UndecidedMemberToDepth { depth: u32 },
}

impl MembershipVerdict {
    /// `Some(true)`/`Some(false)` for definitive verdicts, `None` when undecided.
    pub fn is_member(&self) -> Option<bool> {
        match self {
            MembershipVerdict::MemberByCycle { .. } | MembershipVerdict::MemberByEndpoint { .. } => Some(true),
            MembershipVerdict::ExcludedAtDepth { .. } => Some(false),
            MembershipVerdict::UndecidedMemberToDepth { .. } => None,
        }
    }
}

impl fmt::Display for MembershipVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MembershipVerdict::MemberByCycle { cycle_length } => {
                write!(f, "member (cycle of length {cycle_length})")
            }
            MembershipVerdict::MemberByEndpoint { depth } => write!(f, "member (endpoint from stage {depth})"),
            MembershipVerdict::ExcludedAtDepth { depth } => write!(f, "excluded at depth {depth}"),
            MembershipVerdict::UndecidedMemberToDepth { depth } => {
                write!(f, "undecided (member of every stage up to {depth})")
            }
        }
    }
}

fn check_unit(x: &Rational) -> Result<()> {
    if *x < 0 || *x > 1 {
        return Err(Error::OutOfUnitInterval(x.to_string()));
    }
    Ok(())
}

/// Decides membership of `x` in the limit set, taking at most `depth_cap` steps.
pub fn limit_membership(spec: &ConstructionSpec, x: &Rational, depth_cap: u32) -> Result<MembershipVerdict> {
    spec.validate()?;
    check_unit(x)?;
    if *x == 0 || *x == 1 {
        return Ok(MembershipVerdict::MemberByEndpoint { depth: 0 });
    }
    match (spec, spec.child_spans()) {
        (_, Some(spans)) => Ok(relative_machine(&spans, x, depth_cap)),
        (ConstructionSpec::Power { m }, None) => Ok(power_descent(*m, x, depth_cap)),
        _ => unreachable!("only power constructions lack child spans"),
    }
}

fn relative_machine(spans: &[(Rational, Rational)], x: &Rational, depth_cap: u32) -> MembershipVerdict {
    let mut seen: HashMap<Rational, u32> = HashMap::new();
    let mut t = x.clone();
    for step in 1..=depth_cap {
        seen.insert(t.clone(), step - 1);
        let Some((lo, hi)) = spans.iter().find(|(lo, hi)| *lo <= t && t <= *hi) else {
            return MembershipVerdict::ExcludedAtDepth { depth: step };
        };
        if t == *lo || t == *hi {
            return MembershipVerdict::MemberByEndpoint { depth: step };
        }
        t = (&t - lo) / (hi - lo);
        if let Some(&first) = seen.get(&t) {
            return MembershipVerdict::MemberByCycle { cycle_length: step - first };
        }
    }
    MembershipVerdict::UndecidedMemberToDepth { depth: depth_cap }
}

/// Follows the single component holding `x` through a power construction.
fn power_descent(m: u32, x: &Rational, depth_cap: u32) -> MembershipVerdict {
    // Positions are kept as integers over (2m)^k at step k, so no step pays
    // for a gcd. `pow2` is the removal 1/m^k on that scale.
    let (a, b) = (x.numer(), x.denom());
    let (m, two_m) = (BigInt::from(m), BigInt::from(2 * u64::from(m)));
    let (mut lo, mut len) = (BigInt::zero(), BigInt::one());
    let mut ax = a.clone();
    let mut pow2 = BigInt::one();
    for step in 1..=depth_cap {
        // len is on the previous scale; child = (len * 2m - 2^step) / 2.
        if len.clone() * &m < pow2 {
            return MembershipVerdict::MemberByCycle { cycle_length: 1 };
        }
        let child = &len * &m - &pow2;
        lo *= &two_m;
        len *= &two_m;
        ax *= &two_m;
        pow2 <<= 1;
        let left_hi = (&lo + &child) * b;
        let right_lo = (&lo + &len - &child) * b;
        if ax < left_hi {
            len = child;
        } else if ax > right_lo {
            lo += &len - &child;
            len = child;
        } else if ax == left_hi || ax == right_lo {
            return MembershipVerdict::MemberByEndpoint { depth: step };
        } else {
            return MembershipVerdict::ExcludedAtDepth { depth: step };
        }
    }
    MembershipVerdict::UndecidedMemberToDepth { depth: depth_cap }
}

/// True iff `x` lies in stage `depth`. Only the component holding `x` is
/// followed, so large depths are cheap. Points outside `[0, 1]` are never members.
pub fn stage_membership(spec: &ConstructionSpec, x: &Rational, depth: u32) -> bool {
    if spec.validate().is_err() || *x < 0 || *x > 1 {
        return false;
    }
    if let Some(spans) = spec.child_spans() {
        let mut t = x.clone();
        for _ in 0..depth {
            let Some((lo, hi)) = spans.iter().find(|(lo, hi)| *lo <= t && t <= *hi) else {
                return false;
            };
            t = (&t - lo) / (hi - lo);
        }
        return true;
    }
    let ConstructionSpec::Power { m } = spec else { unreachable!() };
    let two = Rational::from(2);
    let (mut lo, mut hi) = (Rational::zero(), Rational::one());
    for step in 1..=depth {
        let removal = Rational::inverse_power(u64::from(*m), step);
        let len = &hi - &lo;
        if len < removal {
            return true;
        }
        if len == removal {
            // Stalled: only the two endpoints remain, forever.
            return *x == lo || *x == hi;
        }
        let child = (&len - &removal) / &two;
        let left_hi = &lo + &child;
        let right_lo = &hi - &child;
        if *x <= left_hi {
            hi = left_hi;
        } else if *x >= right_lo {
            lo = right_lo;
        } else {
            return false;
        }
    }
    true
}
