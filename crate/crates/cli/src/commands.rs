//! The text and JSON documents printed by each subcommand.

use cantorkit::analysis::{
    cantor_function, expansion_characterization, expansion_membership, limit_measure, max_component_length,
    scale_census, similarity_dimension, stage_measure, CharacterizationVerdict, ExpansionSpec,
};
use cantorkit::{
    iterate_with, limit_membership, stage_at, stage_membership, ConstructionSpec, Error, IntervalUnion, Limits,
    MembershipVerdict, Rational, Result, Stage,
};
use serde_json::{json, Value};

use crate::spec_doc::SpecDocument;

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Text,
    Json,
}

/// Depth used for the finite-stage cross-check of a membership verdict.
pub const STAGE_CHECK_DEPTH: u32 = 20;

fn frac(x: &Rational) -> Value {
    Value::String(x.to_string())
}

fn stage_line(stage: &Stage) -> String {
    let mut line = stage.intervals.to_string();
    if stage.stalled {
        line.push_str("  (stalled)");
    }
    line
}

pub fn construct(spec: &ConstructionSpec, depth: u32, format: Format, limits: &Limits) -> Result<String> {
    let stages = iterate_with(spec, depth, limits)?;
    Ok(match format {
        Format::Text => stages.iter().map(|s| stage_line(s) + "\n").collect(),
        Format::Json => {
            let doc: Vec<Vec<[String; 2]>> = stages
                .iter()
                .map(|s| s.intervals.iter().map(|iv| [iv.lo().to_string(), iv.hi().to_string()]).collect())
                .collect();
            serde_json::to_string(&doc).expect("serializable") + "\n"
        }
    })
}

/// Reads back the JSON emitted by [`construct`].
pub fn parse_stages_json(text: &str) -> Result<Vec<IntervalUnion>> {
    let raw: Vec<Vec<[String; 2]>> = serde_json::from_str(text).map_err(|e| Error::Parse {
        message: e.to_string(),
        line: e.line(),
        column: e.column(),
    })?;
    raw.into_iter()
        .map(|stage| {
            let pairs = stage
                .into_iter()
                .map(|[lo, hi]| Ok((lo.parse::<Rational>()?, hi.parse::<Rational>()?)))
                .collect::<Result<Vec<_>>>()?;
            IntervalUnion::from_pairs(pairs)
        })
        .collect()
}

fn expansion_json(es: &ExpansionSpec) -> Value {
    json!({ "base": es.base(), "digits": es.allowed().iter().collect::<Vec<_>>() })
}

fn characterization_json(v: &CharacterizationVerdict) -> Value {
    match v {
        CharacterizationVerdict::Characterized { spec } => {
            json!({ "kind": "characterized", "expansion": expansion_json(spec) })
        }
        CharacterizationVerdict::NotCharacterizable { reason, natural_guess } => json!({
            "kind": "not_characterizable",
            "reason": reason,
            "natural_guess": natural_guess.as_ref().map(expansion_json),
        }),
        CharacterizationVerdict::MismatchWitness { depth, point } => {
            json!({ "kind": "mismatch_witness", "depth": depth, "point": frac(point) })
        }
    }
}

pub fn analyze(spec: &ConstructionSpec, depth: u32, format: Format, limits: &Limits) -> Result<String> {
    let measures: Vec<Rational> = (0..=depth).map(|n| stage_measure(spec, n)).collect();
    let max_lengths: Vec<Rational> = (0..=depth).map(|n| max_component_length(spec, n)).collect();
    let limit = limit_measure(spec);
    let verdict = expansion_characterization(spec);
    let census = scale_census(&stage_at(spec, depth, limits)?);
    let dimension = similarity_dimension(spec);

    Ok(match format {
        Format::Json => {
            let doc = json!({
                "spec": SpecDocument::from_spec(spec),
                "depth": depth,
                "stage_measures": measures.iter().map(frac).collect::<Vec<_>>(),
                "limit_measure": frac(&limit.value),
                "limit_degenerate": limit.degenerate,
                "characterization": characterization_json(&verdict),
                "scale_census": census.iter().map(|(l, c)| json!({"length": frac(l), "count": c})).collect::<Vec<_>>(),
                "similarity_dimension": dimension,
                "max_component_lengths": max_lengths.iter().map(frac).collect::<Vec<_>>(),
            });
            serde_json::to_string_pretty(&doc).expect("serializable") + "\n"
        }
        Format::Text => {
            let join = |xs: &[Rational]| xs.iter().map(Rational::to_string).collect::<Vec<_>>().join(", ");
            let mut out = String::new();
            out += &format!("spec: {spec}\n");
            out += &format!("stage measures (0..={depth}): {}\n", join(&measures));
            out += &format!(
                "limit measure: {}{}\n",
                limit.value,
                if limit.degenerate { " (finite point set)" } else { "" }
            );
            out += &format!("characterization: {verdict}\n");
            let census_text: Vec<String> = census.iter().map(|(l, c)| format!("{l} x{c}")).collect();
            out += &format!("scale census at depth {depth}: {}\n", census_text.join(", "));
            match dimension {
                Some(d) => out += &format!("similarity dimension: {d:.12}\n"),
                None => out += "similarity dimension: undefined\n",
            }
            out += &format!("max component length (0..={depth}): {}\n", join(&max_lengths));
            out
        }
    })
}

fn verdict_json(v: &MembershipVerdict) -> Value {
    match v {
        MembershipVerdict::MemberByCycle { cycle_length } => {
            json!({"kind": "member_by_cycle", "cycle_length": cycle_length})
        }
        MembershipVerdict::MemberByEndpoint { depth } => json!({"kind": "member_by_endpoint", "depth": depth}),
        MembershipVerdict::ExcludedAtDepth { depth } => json!({"kind": "excluded_at_depth", "depth": depth}),
        MembershipVerdict::UndecidedMemberToDepth { depth } => {
            json!({"kind": "undecided_member_to_depth", "depth": depth})
        }
    }
}

pub fn member(spec: &ConstructionSpec, x: &str, cap: u32, format: Format) -> Result<String> {
    let x: Rational = x.parse()?;
    let verdict = limit_membership(spec, &x, cap)?;
    let check_depth = cap.min(STAGE_CHECK_DEPTH);
    let in_stage = stage_membership(spec, &x, check_depth);
    let digits = match expansion_characterization(spec) {
        CharacterizationVerdict::Characterized { spec: es } => Some((expansion_membership(&es, &x)?, es)),
        _ => None,
    };
    Ok(match format {
        Format::Json => {
            let doc = json!({
                "spec": SpecDocument::from_spec(spec),
                "x": frac(&x),
                "verdict": verdict_json(&verdict),
                "member": verdict.is_member(),
                "stage_check": {"depth": check_depth, "member": in_stage},
                "expansion_check": digits.as_ref().map(|(m, es)| json!({"expansion": expansion_json(es), "member": m})),
            });
            serde_json::to_string_pretty(&doc).expect("serializable") + "\n"
        }
        Format::Text => {
            let mut out = format!("x: {x}\nverdict: {verdict}\n");
            out += &format!(
                "stage {check_depth}: {}\n",
                if in_stage { "contains x" } else { "does not contain x" }
            );
            if let Some((m, es)) = digits {
                out += &format!("{es}: {}\n", if m { "admissible expansion" } else { "no admissible expansion" });
            }
            out
        }
    })
}

pub fn cantorfun(x: &str) -> Result<String> {
    let x: Rational = x.parse()?;
    Ok(format!("{}\n", cantor_function(&x)?))
}
