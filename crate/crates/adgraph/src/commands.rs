//! `eval`, `grad` and `check`.

use std::fmt;
use std::str::FromStr;

use adgraph_core::gradcheck::{check_gradient, CheckReport};
use adgraph_core::{
    forward_derivatives, lower, parse, reverse_derivatives, Bindings, Graph, NodeId,
};
use serde_json::{json, Map, Value};

use crate::error::CliError;
use crate::format::significant;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    Forward,
    Reverse,
}

impl Mode {
    pub fn as_str(self) -> &'static str {
        match self {
            Mode::Forward => "forward",
            Mode::Reverse => "reverse",
        }
    }
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Mode {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "forward" => Ok(Mode::Forward),
            "reverse" => Ok(Mode::Reverse),
            other => Err(format!(
                "unknown mode `{other}` (expected forward or reverse)"
            )),
        }
    }
}

/// Parses and lowers `text`, returning the graph and its output node.
pub fn build(text: &str, bindings: &Bindings) -> Result<(Graph, NodeId), CliError> {
    let ast = parse(text).map_err(adgraph_core::Error::from)?;
    Ok(lower(&ast, bindings)?)
}

pub fn evaluate(text: &str, bindings: &Bindings) -> Result<f64, CliError> {
    let (graph, output) = build(text, bindings)?;
    Ok(graph.node(output).value())
}

pub fn render_value(value: f64, json: bool) -> String {
    if json {
        json!({ "value": value }).to_string()
    } else {
        format!("y = {}", significant(value, 6))
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Gradient {
    pub value: f64,
    pub mode: Mode,
    /// Partials in variable creation order.
    pub partials: Vec<(String, f64)>,
    /// Derivative passes performed over the graph.
    pub passes: u64,
}

impl Gradient {
    pub fn get(&self, name: &str) -> Option<f64> {
        self.partials
            .iter()
            .find(|(n, _)| n == name)
            .map(|&(_, d)| d)
    }

    pub fn render(&self, json: bool) -> String {
        if json {
            let gradient: Map<String, Value> = self
                .partials
                .iter()
                .map(|(name, d)| (name.clone(), json!(d)))
                .collect();
            json!({ "value": self.value, "gradient": gradient, "mode": self.mode.as_str() })
                .to_string()
        } else {
            self.partials
                .iter()
                .map(|(name, d)| format!("dy/d{name} = {}", significant(*d, 6)))
                .collect::<Vec<_>>()
                .join("\n")
        }
    }
}

/// Forward mode runs one pass per requested variable (all of them unless
/// `wrt` names one); reverse mode runs a single pass and ignores `wrt`.
pub fn gradient(
    text: &str,
    bindings: &Bindings,
    mode: Mode,
    wrt: Option<&str>,
) -> Result<Gradient, CliError> {
    let (mut graph, output) = build(text, bindings)?;
    let variables: Vec<(String, NodeId)> = graph
        .variables()
        .map(|(name, id)| (name.to_string(), id))
        .collect();
    let partials = match mode {
        Mode::Forward => {
            let selected = match wrt {
                Some(name) => {
                    let id = graph
                        .variable(name)
                        .ok_or_else(|| CliError::UnknownWrt(name.to_string()))?;
                    vec![(name.to_string(), id)]
                }
                None => variables,
            };
            let mut partials = Vec::with_capacity(selected.len());
            for (name, id) in selected {
                let tangents = forward_derivatives(&mut graph, id)?;
                partials.push((name, tangents[output]));
            }
            partials
        }
        Mode::Reverse => {
            let adjoints = reverse_derivatives(&mut graph, output)?;
            variables
                .into_iter()
                .map(|(name, id)| (name, adjoints[id]))
                .collect()
        }
    };
    Ok(Gradient {
        value: graph.node(output).value(),
        mode,
        partials,
        passes: graph.traversals(),
    })
}

pub fn check(text: &str, bindings: &Bindings, tolerance: f64) -> Result<CheckReport, CliError> {
    if tolerance.is_nan() || tolerance <= 0.0 {
        return Err(CliError::Tolerance(tolerance));
    }
    let ast = parse(text).map_err(adgraph_core::Error::from)?;
    Ok(check_gradient(&ast, bindings, tolerance)?)
}

pub fn render_check(report: &CheckReport, json: bool) -> String {
    if json {
        let variables: Vec<Value> = report
            .variables
            .iter()
            .map(|v| {
                json!({
                    "name": v.name,
                    "ad": v.ad_value,
                    "fd": v.fd_value,
                    "rel_error": v.rel_error,
                })
            })
            .collect();
        return json!({
            "pass": report.pass,
            "tolerance": report.tolerance,
            "variables": variables,
        })
        .to_string();
    }
    let width = report
        .variables
        .iter()
        .map(|v| v.name.len())
        .max()
        .unwrap_or(0);
    let mut lines: Vec<String> = report
        .variables
        .iter()
        .map(|v| {
            format!(
                "{:<width$}  ad = {:<22}  fd = {:<22}  rel_error = {:.3e}",
                v.name, v.ad_value, v.fd_value, v.rel_error
            )
        })
        .collect();
    let verdict = if report.pass { "PASS" } else { "FAIL" };
    lines.push(format!("{verdict} (tolerance {:e})", report.tolerance));
    lines.join("\n")
}
