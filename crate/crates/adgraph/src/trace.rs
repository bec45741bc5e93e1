//! Trace tables: primal values, then tangents or adjoint updates in the
//! order the derivative pass produces them.

use adgraph_core::{
    forward_derivatives, forward_tape, reverse_derivatives_with, AdjointUpdate, Bindings, Graph,
    NodeId, Operator,
};
use serde_json::{json, Value};

use crate::commands::{build, Mode};
use crate::error::CliError;
use crate::format::fixed3;

const COMBINING_DOT: char = '\u{0307}';
const COMBINING_BAR: char = '\u{0304}';

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Notation {
    /// `d(v1)`, `bar(v1)`, `*`.
    #[default]
    Ascii,
    /// `v̇1`, `v̄1`, `×`.
    Unicode,
}

#[derive(Debug, Clone, PartialEq)]
pub struct TraceRow {
    pub name: String,
    pub formula: String,
    pub value: f64,
}

impl TraceRow {
    fn new(name: String, formula: String, value: f64) -> Self {
        TraceRow {
            name,
            formula,
            value,
        }
    }
}

struct Names<'a> {
    graph: &'a Graph,
    notation: Notation,
}

impl Names<'_> {
    fn primal(&self, id: NodeId) -> String {
        self.graph.display_name(id)
    }

    fn tangent(&self, id: NodeId) -> String {
        self.decorate(id, COMBINING_DOT, "d")
    }

    fn adjoint(&self, id: NodeId) -> String {
        self.decorate(id, COMBINING_BAR, "bar")
    }

    fn decorate(&self, id: NodeId, mark: char, prefix: &str) -> String {
        let name = self.primal(id);
        match self.notation {
            Notation::Ascii => format!("{prefix}({name})"),
            Notation::Unicode => {
                let mut chars = name.chars();
                let mut out: String = chars.next().into_iter().collect();
                out.push(mark);
                out.extend(chars);
                out
            }
        }
    }

    fn times(&self) -> &'static str {
        match self.notation {
            Notation::Ascii => " * ",
            Notation::Unicode => " × ",
        }
    }

    fn operands(&self, id: NodeId) -> (String, String) {
        let parents = self.graph.node(id).parents();
        let a = parents.first().map(|&p| self.primal(p)).unwrap_or_default();
        let b = parents.get(1).map(|&p| self.primal(p)).unwrap_or_default();
        (a, b)
    }

    fn primal_formula(&self, id: NodeId) -> String {
        let (a, b) = self.operands(id);
        match self.graph.node(id).op() {
            Operator::Var | Operator::Const => String::new(),
            Operator::Add => format!("{a} + {b}"),
            Operator::Sub => format!("{a} - {b}"),
            Operator::Mul => format!("{a}{}{b}", self.times()),
            Operator::Div => format!("{a} / {b}"),
            Operator::Neg => format!("-{a}"),
            Operator::PowConst(c) => format!("{a}^{c}"),
            op => format!("{}({a})", op.tag()),
        }
    }

    fn tangent_formula(&self, id: NodeId) -> String {
        let parents = self.graph.node(id).parents();
        let (a, b) = self.operands(id);
        let da = parents
            .first()
            .map(|&p| self.tangent(p))
            .unwrap_or_default();
        let db = parents.get(1).map(|&p| self.tangent(p)).unwrap_or_default();
        let x = self.times();
        match self.graph.node(id).op() {
            Operator::Var | Operator::Const => String::new(),
            Operator::Add => format!("{da} + {db}"),
            Operator::Sub => format!("{da} - {db}"),
            Operator::Mul => format!("{da}{x}{b} + {db}{x}{a}"),
            Operator::Div => format!("{da} / {b} - {db}{x}{a} / {b}^2"),
            Operator::Neg => format!("-{da}"),
            Operator::Log => format!("{da} / {a}"),
            Operator::Sin => format!("{da}{x}cos({a})"),
            Operator::Cos => format!("-{da}{x}sin({a})"),
            Operator::Exp => format!("{da}{x}exp({a})"),
            Operator::PowConst(c) => format!("{da}{x}{c}{x}{a}^{}", c - 1.0),
        }
    }

    /// The local partial of `id` with respect to its operand in `slot`.
    fn partial_formula(&self, id: NodeId, slot: usize) -> String {
        let (a, b) = self.operands(id);
        let x = self.times();
        match (self.graph.node(id).op(), slot) {
            (Operator::Add, _) | (Operator::Sub, 0) => "1".to_string(),
            (Operator::Sub, _) | (Operator::Neg, _) => "-1".to_string(),
            (Operator::Mul, 0) => b,
            (Operator::Mul, _) => a,
            (Operator::Div, 0) => format!("1 / {b}"),
            (Operator::Div, _) => format!("-{a} / {b}^2"),
            (Operator::Log, _) => format!("1 / {a}"),
            (Operator::Sin, _) => format!("cos({a})"),
            (Operator::Cos, _) => format!("-sin({a})"),
            (Operator::Exp, _) => format!("exp({a})"),
            (Operator::PowConst(c), _) => format!("{c}{x}{a}^{}", c - 1.0),
            (Operator::Var | Operator::Const, _) => String::new(),
        }
    }

    fn update_row(&self, update: &AdjointUpdate, first: bool) -> TraceRow {
        let term = format!(
            "{}{}{}",
            self.adjoint(update.node),
            self.times(),
            self.partial_formula(update.node, update.slot)
        );
        let target = self.adjoint(update.parent);
        let formula = if first {
            term
        } else {
            format!("{target} + {term}")
        };
        TraceRow::new(target, formula, update.accumulated)
    }
}

/// Builds the trace table for `text`. Forward traces follow the forward tape
/// from `wrt`, which may be omitted when the expression has at most one
/// variable; reverse traces ignore `wrt`.
pub fn trace(
    text: &str,
    bindings: &Bindings,
    mode: Mode,
    wrt: Option<&str>,
    notation: Notation,
) -> Result<Vec<TraceRow>, CliError> {
    let (mut graph, output) = build(text, bindings)?;
    let seed = match (mode, wrt) {
        (Mode::Reverse, _) => None,
        (Mode::Forward, Some(name)) => Some(
            graph
                .variable(name)
                .ok_or_else(|| CliError::UnknownWrt(name.to_string()))?,
        ),
        (Mode::Forward, None) => {
            let mut variables = graph.variables().map(|(_, id)| id);
            match (variables.next(), variables.next()) {
                (first, None) => first,
                _ => return Err(CliError::MissingWrt),
            }
        }
    };

    let mut updates = Vec::new();
    let derivatives = match (mode, seed) {
        (Mode::Forward, Some(seed)) => Some((seed, forward_derivatives(&mut graph, seed)?)),
        (Mode::Reverse, _) => {
            reverse_derivatives_with(&mut graph, output, |u| updates.push(u))?;
            None
        }
        (Mode::Forward, None) => None,
    };

    let names = Names {
        graph: &graph,
        notation,
    };
    let mut rows: Vec<TraceRow> = graph
        .nodes()
        .map(|(id, node)| TraceRow::new(names.primal(id), names.primal_formula(id), node.value()))
        .collect();

    if let Some((seed, tangents)) = derivatives {
        for id in forward_tape(&graph, seed).iter() {
            let formula = if id == seed {
                "1".to_string()
            } else {
                names.tangent_formula(id)
            };
            rows.push(TraceRow::new(names.tangent(id), formula, tangents[id]));
        }
    }
    if mode == Mode::Reverse {
        rows.push(TraceRow::new(names.adjoint(output), "1".to_string(), 1.0));
        let mut touched = vec![false; graph.len()];
        for update in &updates {
            let first = !std::mem::replace(&mut touched[update.parent.index()], true);
            rows.push(names.update_row(update, first));
        }
    }
    Ok(rows)
}

/// Display width ignoring combining marks.
fn width(s: &str) -> usize {
    s.chars()
        .filter(|c| !matches!(c, '\u{0300}'..='\u{036F}'))
        .count()
}

fn pad(s: &str, to: usize) -> String {
    format!("{s}{}", " ".repeat(to.saturating_sub(width(s))))
}

pub fn render(rows: &[TraceRow], json: bool) -> String {
    if json {
        let rows: Vec<Value> = rows
            .iter()
            .map(|r| json!({ "name": r.name, "formula": r.formula, "value": r.value }))
            .collect();
        return json!({ "rows": rows }).to_string();
    }
    let values: Vec<String> = rows.iter().map(|r| fixed3(r.value)).collect();
    let name_width = rows.iter().map(|r| width(&r.name)).max().unwrap_or(0);
    let formula_width = rows.iter().map(|r| width(&r.formula)).max().unwrap_or(0);
    let value_width = values.iter().map(|v| v.len()).max().unwrap_or(0);
    rows.iter()
        .zip(&values)
        .map(|(r, v)| {
            format!(
                "{} | {} | {v:>value_width$}",
                pad(&r.name, name_width),
                pad(&r.formula, formula_width)
            )
        })
        .collect::<Vec<_>>()
        .join("\n")
}
