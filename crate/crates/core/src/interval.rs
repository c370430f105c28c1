//! Closed intervals with exact endpoints and normalized unions of them.

use std::fmt;

use crate::error::{Error, Result};
use crate::rational::Rational;

/// `[lo, hi]` with `lo <= hi`. `lo == hi` is a single point.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ClosedInterval {
    lo: Rational,
    hi: Rational,
}

impl ClosedInterval {
    pub fn new(lo: Rational, hi: Rational) -> Result<Self> {
        if lo > hi {
            return Err(Error::MalformedInterval { lo: lo.to_string(), hi: hi.to_string() });
        }
        Ok(ClosedInterval { lo, hi })
    }

    pub fn point(x: Rational) -> Self {
        ClosedInterval { lo: x.clone(), hi: x }
    }

    pub fn unit() -> Self {
        ClosedInterval { lo: Rational::zero(), hi: Rational::one() }
    }

    pub fn lo(&self) -> &Rational {
        &self.lo
    }

    pub fn hi(&self) -> &Rational {
        &self.hi
    }

    pub fn length(&self) -> Rational {
        &self.hi - &self.lo
    }

    pub fn is_degenerate(&self) -> bool {
        self.lo == self.hi
    }

    pub fn contains(&self, x: &Rational) -> bool {
        &self.lo <= x && x <= &self.hi
    }

    pub fn contains_interval(&self, other: &ClosedInterval) -> bool {
        self.lo <= other.lo && other.hi <= self.hi
    }

    /// The sub-interval at relative span `[from, to]` of this one.
    pub(crate) fn relative(&self, from: &Rational, to: &Rational) -> ClosedInterval {
        let len = self.length();
        ClosedInterval { lo: &self.lo + &(&len * from), hi: &self.lo + &(&len * to) }
    }
}

impl fmt::Display for ClosedInterval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}]", self.lo, self.hi)
    }
}

impl fmt::Debug for ClosedInterval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Sorted, pairwise disjoint, non-touching closed intervals.
#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct IntervalUnion {
    intervals: Vec<ClosedInterval>,
}

impl IntervalUnion {
    pub fn empty() -> Self {
        IntervalUnion { intervals: Vec::new() }
    }

    pub fn unit() -> Self {
        IntervalUnion { intervals: vec![ClosedInterval::unit()] }
    }

    /// Sorts and merges overlapping or touching intervals.
    pub fn normalize(raw: impl IntoIterator<Item = ClosedInterval>) -> Self {
        let mut raw: Vec<ClosedInterval> = raw.into_iter().collect();
        raw.sort();
        let mut out: Vec<ClosedInterval> = Vec::with_capacity(raw.len());
        for iv in raw {
            match out.last_mut() {
                Some(last) if iv.lo <= last.hi => {
                    if iv.hi > last.hi {
                        last.hi = iv.hi;
                    }
                }
                _ => out.push(iv),
            }
        }
        IntervalUnion { intervals: out }
    }

    /// Builds a union from `(lo, hi)` pairs, rejecting any pair with `lo > hi`.
    pub fn from_pairs(pairs: impl IntoIterator<Item = (Rational, Rational)>) -> Result<Self> {
        let raw = pairs
            .into_iter()
            .map(|(lo, hi)| ClosedInterval::new(lo, hi))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self::normalize(raw))
    }

    /// Wraps intervals that the caller guarantees are already normalized.
    pub(crate) fn from_sorted_unchecked(intervals: Vec<ClosedInterval>) -> Self {
        debug_assert!(intervals.windows(2).all(|w| w[0].hi < w[1].lo));
        IntervalUnion { intervals }
    }

    pub fn intervals(&self) -> &[ClosedInterval] {
        &self.intervals
    }

    pub fn len(&self) -> usize {
        self.intervals.len()
    }

    pub fn is_empty(&self) -> bool {
        self.intervals.is_empty()
    }

    pub fn iter(&self) -> std::slice::Iter<'_, ClosedInterval> {
        self.intervals.iter()
    }

    pub fn measure(&self) -> Rational {
        self.intervals.iter().map(ClosedInterval::length).sum()
    }

    pub fn contains(&self, x: &Rational) -> bool {
        // Index of the first interval whose upper end is >= x.
        let i = self.intervals.partition_point(|iv| iv.hi < *x);
        self.intervals.get(i).is_some_and(|iv| iv.lo <= *x)
    }

    /// Every interval endpoint in increasing order, without repeats.
    pub fn endpoints(&self) -> Vec<Rational> {
        let mut out = Vec::with_capacity(2 * self.intervals.len());
        for iv in &self.intervals {
            out.push(iv.lo.clone());
            if !iv.is_degenerate() {
                out.push(iv.hi.clone());
            }
        }
        out
    }

    pub fn max_component_length(&self) -> Option<Rational> {
        self.intervals.iter().map(ClosedInterval::length).max()
    }

    /// The closures of the complementary pieces of `self` inside `ambient`.
    pub fn gaps(&self, ambient: &ClosedInterval) -> Result<IntervalUnion> {
        if self.intervals.iter().any(|iv| !ambient.contains_interval(iv)) {
            return Err(Error::NotContained(ambient.to_string()));
        }
        let mut out = Vec::new();
        let mut cursor = ambient.lo.clone();
        for iv in &self.intervals {
            if cursor < iv.lo {
                out.push(ClosedInterval { lo: cursor, hi: iv.lo.clone() });
            }
            cursor = iv.hi.clone();
        }
        if self.intervals.is_empty() {
            return Ok(IntervalUnion { intervals: vec![ambient.clone()] });
        }
        if cursor < ambient.hi {
            out.push(ClosedInterval { lo: cursor, hi: ambient.hi.clone() });
        }
        Ok(IntervalUnion { intervals: out })
    }

    /// True when every point of `self` lies in `other`.
    pub fn is_subset_of(&self, other: &IntervalUnion) -> bool {
        // Intervals of `other` are disjoint and non-touching, so each interval
        // of `self` must fit inside a single one of them.
        self.intervals.iter().all(|iv| {
            let i = other.intervals.partition_point(|o| o.hi < iv.lo);
            other.intervals.get(i).is_some_and(|o| o.contains_interval(iv))
        })
    }

    /// Leftmost point of the symmetric difference, if the two sets differ.
    ///
    /// Two finite unions of closed intervals agree as point sets exactly when
    /// they agree on every endpoint of either and on the midpoint between
    /// each pair of consecutive endpoints, so those are the only probes.
    pub fn first_difference(&self, other: &IntervalUnion) -> Option<Rational> {
        let mut probes: Vec<Rational> = self.endpoints();
        probes.extend(other.endpoints());
        probes.sort();
        probes.dedup();
        let differs = |x: &Rational| self.contains(x) != other.contains(x);
        for (i, p) in probes.iter().enumerate() {
            if differs(p) {
                return Some(p.clone());
            }
            if let Some(next) = probes.get(i + 1) {
                let mid = p.midpoint(next);
                if differs(&mid) {
                    return Some(mid);
                }
            }
        }
        None
    }
}

impl fmt::Display for IntervalUnion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.intervals.is_empty() {
            return write!(f, "∅");
        }
        for (i, iv) in self.intervals.iter().enumerate() {
            if i > 0 {
                write!(f, " ∪ ")?;
            }
            write!(f, "{iv}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for IntervalUnion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl<'a> IntoIterator for &'a IntervalUnion {
    type Item = &'a ClosedInterval;
    type IntoIter = std::slice::Iter<'a, ClosedInterval>;
    fn into_iter(self) -> Self::IntoIter {
        self.intervals.iter()
    }
}
