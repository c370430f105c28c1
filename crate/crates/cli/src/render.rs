//! Stacked-stage diagrams as SVG 1.1.
//!
//! Stage `k` is drawn as row `k`, top to bottom. Pixel coordinates are the
//! exact rational positions scaled by `width_px` and rounded half up, so the
//! same inputs always produce the same bytes.

use std::fmt::Write as _;

use cantorkit::{iterate_with, ConstructionSpec, Error, Limits, Rational, Result};
use num_traits::ToPrimitive;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RenderConfig {
    pub width_px: u32,
    pub row_height_px: u32,
    pub depth: u32,
    pub label: bool,
}

impl Default for RenderConfig {
    fn default() -> Self {
        RenderConfig { width_px: 729, row_height_px: 12, depth: 5, label: true }
    }
}

const PAD: i64 = 10;
const LABEL_WIDTH: i64 = 40;

fn px(x: &Rational, width: u32) -> i64 {
    (x * &Rational::from(i64::from(width)))
        .round_half_up()
        .to_i64()
        .expect("pixel coordinate fits in i64")
}

pub fn render_svg(spec: &ConstructionSpec, cfg: &RenderConfig, limits: &Limits) -> Result<String> {
    if cfg.width_px < 100 {
        return Err(Error::InvalidSpec(format!("width {}px is below the 100px minimum", cfg.width_px)));
    }
    if cfg.row_height_px == 0 {
        return Err(Error::InvalidSpec("row height must be positive".into()));
    }
    let stages = iterate_with(spec, cfg.depth, limits)?;

    let row = i64::from(cfg.row_height_px);
    let gap = (row / 2).max(2);
    let left = PAD + if cfg.label { LABEL_WIDTH } else { 0 };
    let width = left + i64::from(cfg.width_px) + PAD;
    let height = PAD * 2 + stages.len() as i64 * (row + gap) - gap;

    let mut svg = String::new();
    writeln!(svg, r#"<?xml version="1.0" encoding="UTF-8" standalone="no"?>"#).unwrap();
    writeln!(
        svg,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{width}" height="{height}" viewBox="0 0 {width} {height}">"#
    )
    .unwrap();
    writeln!(svg, "<title>{spec}</title>").unwrap();
    for stage in &stages {
        let y = PAD + i64::from(stage.index) * (row + gap);
        let stalled = if stage.stalled { r#" data-stalled="true""# } else { "" };
        writeln!(svg, r#"<g id="stage-{}" fill="black"{stalled}>"#, stage.index).unwrap();
        for iv in &stage.intervals {
            let x0 = px(iv.lo(), cfg.width_px);
            let x1 = px(iv.hi(), cfg.width_px);
            let (x, w, class) = if iv.is_degenerate() {
                (x0, 1, "point")
            } else {
                (x0, (x1 - x0).max(1), "interval")
            };
            writeln!(
                svg,
                r#"<rect class="{class}" x="{}" y="{y}" width="{w}" height="{row}"/>"#,
                left + x
            )
            .unwrap();
        }
        writeln!(svg, "</g>").unwrap();
        if cfg.label {
            writeln!(
                svg,
                r#"<text x="{PAD}" y="{}" font-family="monospace" font-size="{}">{}</text>"#,
                y + row - 1,
                row.clamp(8, 14),
                stage.index
            )
            .unwrap();
        }
    }
    writeln!(svg, "</svg>").unwrap();
    Ok(svg)
}
