//! Instance and solution documents.
//!
//! Both formats are strict JSON: fixed schema, unknown fields rejected.
//! Serialization is canonical — fixed field order, every float rendered
//! with 17 significant digits (lossless for doubles), newline-terminated —
//! so equal values produce identical bytes and documents diff cleanly.

use serde::Deserialize;

use crate::error::{Error, Result};
use crate::model::{
    validate_instance, Configuration, Instance, ItemType, Solution, SolutionStatus, WeightVector,
};

pub const SCHEMA_VERSION: &str = "ukbw-1";

/// Wire form of an instance document.
#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InstanceFile {
    pub schema_version: String,
    pub items: Vec<InstanceFileItem>,
    pub target_weight: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InstanceFileItem {
    pub value: f64,
    pub w_min: f64,
    pub w_max: f64,
}

/// Wire form of a solution document. Fields beyond the status are omitted
/// when the status carries no solution.
#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SolutionFile {
    pub schema_version: String,
    pub status: String,
    #[serde(default)]
    pub counts: Option<Vec<u64>>,
    #[serde(default)]
    pub weights: Option<Vec<f64>>,
    #[serde(default)]
    pub objective: Option<f64>,
    #[serde(default)]
    pub sigma: Option<f64>,
    #[serde(default)]
    pub degenerate: Option<bool>,
}

impl SolutionFile {
    pub fn from_solution(solution: &Solution) -> Self {
        Self {
            schema_version: SCHEMA_VERSION.to_string(),
            status: solution.status.as_str().to_string(),
            counts: solution.configuration.as_ref().map(|c| c.counts.clone()),
            weights: solution.weights.as_ref().map(|w| w.weights.clone()),
            objective: solution.objective,
            sigma: None,
            degenerate: None,
        }
    }

    pub fn parsed_status(&self) -> Result<SolutionStatus> {
        match self.status.as_str() {
            "optimal" => Ok(SolutionStatus::Optimal),
            "feasible" => Ok(SolutionStatus::Feasible),
            "infeasible" => Ok(SolutionStatus::Infeasible),
            "limit_exceeded" => Ok(SolutionStatus::LimitExceeded),
            other => Err(Error::Schema(format!("unknown status {other:?}"))),
        }
    }

    /// The in-memory solution this document describes.
    pub fn to_solution(&self) -> Result<Solution> {
        Ok(Solution {
            status: self.parsed_status()?,
            configuration: self.counts.clone().map(Configuration::new),
            weights: self.weights.clone().map(WeightVector::new),
            objective: self.objective,
        })
    }
}

fn from_json_error(err: serde_json::Error) -> Error {
    match err.classify() {
        serde_json::error::Category::Syntax | serde_json::error::Category::Eof => {
            Error::Parse(err.to_string())
        }
        _ => Error::Schema(err.to_string()),
    }
}

fn check_schema_version(version: &str) -> Result<()> {
    if version != SCHEMA_VERSION {
        return Err(Error::Schema(format!(
            "unsupported schema_version {version:?}, expected {SCHEMA_VERSION:?}"
        )));
    }
    Ok(())
}

/// Strict parse of an instance document, including instance validation.
pub fn parse_instance(text: &str) -> Result<Instance> {
    let file: InstanceFile = serde_json::from_str(text).map_err(from_json_error)?;
    check_schema_version(&file.schema_version)?;
    let instance = Instance::new(
        file.items
            .iter()
            .map(|it| ItemType::new(it.value, it.w_min, it.w_max))
            .collect(),
        file.target_weight,
    );
    let report = validate_instance(&instance);
    if !report.is_valid() {
        return Err(Error::InvalidInstance(report));
    }
    Ok(instance)
}

/// Strict parse of a solution document.
pub fn parse_solution(text: &str) -> Result<SolutionFile> {
    let file: SolutionFile = serde_json::from_str(text).map_err(from_json_error)?;
    check_schema_version(&file.schema_version)?;
    file.parsed_status()?;
    Ok(file)
}

/// Canonical rendering of a float: 17 significant digits, exponent form.
fn fmt_f64(x: f64) -> String {
    format!("{x:.16e}")
}

fn fmt_f64_list(xs: &[f64]) -> String {
    let rendered: Vec<String> = xs.iter().map(|&x| fmt_f64(x)).collect();
    format!("[{}]", rendered.join(", "))
}

fn fmt_u64_list(xs: &[u64]) -> String {
    let rendered: Vec<String> = xs.iter().map(|x| x.to_string()).collect();
    format!("[{}]", rendered.join(", "))
}

/// Canonical instance document.
pub fn serialize_instance(instance: &Instance) -> String {
    let mut out = String::new();
    out.push_str("{\n");
    out.push_str(&format!("  \"schema_version\": \"{SCHEMA_VERSION}\",\n"));
    if instance.items.is_empty() {
        out.push_str("  \"items\": [],\n");
    } else {
        out.push_str("  \"items\": [\n");
        for (i, item) in instance.items.iter().enumerate() {
            let sep = if i + 1 == instance.items.len() { "" } else { "," };
            out.push_str(&format!(
                "    {{ \"value\": {}, \"w_min\": {}, \"w_max\": {} }}{sep}\n",
                fmt_f64(item.value),
                fmt_f64(item.w_min),
                fmt_f64(item.w_max)
            ));
        }
        out.push_str("  ],\n");
    }
    out.push_str(&format!(
        "  \"target_weight\": {}\n",
        fmt_f64(instance.target_weight)
    ));
    out.push_str("}\n");
    out
}

/// Canonical solution document.
pub fn serialize_solution(file: &SolutionFile) -> String {
    let mut fields: Vec<String> = Vec::new();
    fields.push(format!(
        "  \"schema_version\": \"{}\"",
        file.schema_version
    ));
    fields.push(format!("  \"status\": \"{}\"", file.status));
    if let Some(counts) = &file.counts {
        fields.push(format!("  \"counts\": {}", fmt_u64_list(counts)));
    }
    if let Some(weights) = &file.weights {
        fields.push(format!("  \"weights\": {}", fmt_f64_list(weights)));
    }
    if let Some(objective) = file.objective {
        fields.push(format!("  \"objective\": {}", fmt_f64(objective)));
    }
    if let Some(sigma) = file.sigma {
        fields.push(format!("  \"sigma\": {}", fmt_f64(sigma)));
    }
    if let Some(degenerate) = file.degenerate {
        fields.push(format!("  \"degenerate\": {degenerate}"));
    }
    format!("{{\n{}\n}}\n", fields.join(",\n"))
}
