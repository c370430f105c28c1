//! Scale census, similarity dimension and finite-depth topology witnesses.

use crate::construction::{ConstructionSpec, Stage};
use crate::rational::Rational;

/// Distinct component lengths of a stage with their multiplicities, longest first.
pub fn scale_census(stage: &Stage) -> Vec<(Rational, usize)> {
    let mut lengths: Vec<Rational> = stage.intervals.iter().map(|iv| iv.length()).collect();
    lengths.sort_by(|a, b| b.cmp(a));
    let mut out: Vec<(Rational, usize)> = Vec::new();
    for len in lengths {
        match out.last_mut() {
            Some((l, c)) if *l == len => *c += 1,
            _ => out.push((len, 1)),
        }
    }
    out
}

const MORAN_TOLERANCE: f64 = 1e-12;

/// Root `s` of `sum r_i^s = 1` over the child contraction ratios, by bisection
/// on `[0, 1]`. `None` for power constructions, which have no fixed ratios.
pub fn similarity_dimension(spec: &ConstructionSpec) -> Option<f64> {
    let ratios: Vec<f64> = spec.child_spans()?.iter().map(|(lo, hi)| (hi - lo).to_f64()).collect();
    Some(moran_root(&ratios))
}

/// Bisection for the Moran equation. The sum is strictly decreasing in `s`,
/// at least 1 at `s = 0` and at most 1 at `s = 1` when the ratios sum to <= 1.
pub fn moran_root(ratios: &[f64]) -> f64 {
    let f = |s: f64| ratios.iter().map(|r| r.powf(s)).sum::<f64>() - 1.0;
    let (mut lo, mut hi) = (0.0_f64, 1.0_f64);
    if f(lo) <= 0.0 {
        return lo;
    }
    if f(hi) >= 0.0 {
        return hi;
    }
    while hi - lo > MORAN_TOLERANCE {
        let mid = 0.5 * (lo + hi);
        if f(mid) > 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

/// `sum r_i^s - 1` for the spec's child ratios.
pub fn moran_residual(spec: &ConstructionSpec, s: f64) -> Option<f64> {
    let spans = spec.child_spans()?;
    Some(spans.iter().map(|(lo, hi)| (hi - lo).to_f64().powf(s)).sum::<f64>() - 1.0)
}

/// Checks that every endpoint of the stage has a different endpoint within
/// the stage's longest component length. Returns the first endpoint that
/// does not.
pub fn perfectness_witness(stage: &Stage) -> Result<(), Rational> {
    let Some(reach) = stage.intervals.max_component_length() else {
        return Ok(());
    };
    let ends = stage.intervals.endpoints();
    for (i, e) in ends.iter().enumerate() {
        let near = |j: Option<usize>| j.and_then(|j| ends.get(j)).is_some_and(|o| (o - e).abs() <= reach);
        if !near(i.checked_sub(1)) && !near(Some(i + 1)) {
            return Err(e.clone());
        }
    }
    Ok(())
}
