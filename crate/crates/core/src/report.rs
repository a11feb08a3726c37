//! Per-graph classification reports and their text and JSON renderings.
//!
//! Both renderings come from the same serialized value, so every field printed as text has the
//! same value in JSON. Text is one `dotted.key: value` line per scalar; matrices print as rows.

use std::collections::BTreeMap;
use std::time::Instant;

use serde::Serialize;
use serde_json::Value;

use crate::characterize::{model_structure, Predicate, Verdict, Witness};
use crate::combinatorics::Structure;
use crate::error::{Error, Result};
use crate::exact::Matrix;
use crate::graph::{classify_shape, ColoredDigraph, ShapeClass};
use crate::verify::Oracle;

pub const REPORT_SCHEMA: u32 = 1;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DetReport {
    /// Canonical Gaussian-rational form from exact elimination.
    pub exact: String,
    pub combinatorial: i64,
    pub agree: bool,
    /// The closed form for bicyclic graphs in the model.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub bicyclic_formula: Option<i64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PredicateReport {
    pub holds: bool,
    pub clause: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
    /// Ground truth from the exact determinant and inverse.
    pub oracle: bool,
    pub agrees: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct InverseReport {
    pub combinatorial: Matrix,
    pub agrees_with_exact: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClassificationReport {
    pub schema: u32,
    pub order: usize,
    pub size: usize,
    pub shape: ShapeClass,
    pub in_model: bool,
    pub det: DetReport,
    /// Why no predicate was decided, when none was.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub verdicts_skipped: Option<String>,
    #[serde(skip_serializing_if = "BTreeMap::is_empty")]
    pub verdicts: BTreeMap<Predicate, PredicateReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub inverse: Option<InverseReport>,
    /// Wall time in milliseconds; only recorded on request because it breaks byte-identical output.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timing_ms: Option<u64>,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct ReportOptions {
    pub inverse: bool,
    pub timing: bool,
}

impl ClassificationReport {
    /// The combinatorial and exact computations disagree somewhere.
    pub fn methods_disagree(&self) -> bool {
        !self.det.agree || self.inverse.as_ref().is_some_and(|i| !i.agrees_with_exact)
    }

    /// Some predicate verdict contradicts the oracle.
    pub fn has_counterexample(&self) -> bool {
        self.verdicts.values().any(|v| !v.agrees)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize") + "\n"
    }

    pub fn to_text(&self) -> String {
        render_text(&serde_json::to_value(self).expect("reports serialize"))
    }
}

fn oracle_truth(oracle: &Oracle, p: Predicate) -> Option<bool> {
    match p {
        Predicate::Nonsingular => Some(oracle.nonsingular()),
        Predicate::ZeroDiagonal => oracle.zero_diagonal(),
        Predicate::Unimodular => Some(oracle.unimodular()),
        Predicate::InverseThreeColored => oracle.inverse_3colored(),
    }
}

fn predicate_reports(oracle: &Oracle, verdicts: Vec<Verdict>) -> BTreeMap<Predicate, PredicateReport> {
    verdicts
        .into_iter()
        .filter_map(|v| {
            let truth = oracle_truth(oracle, v.predicate)?;
            Some((
                v.predicate,
                PredicateReport { holds: v.holds, clause: v.clause, witness: v.witness, oracle: truth, agrees: v.holds == truth },
            ))
        })
        .collect()
}

/// Determinants by both methods and, for unicyclic and bicyclic graphs in the model, every
/// applicable predicate checked against the oracle.
pub fn classify(g: &ColoredDigraph, options: ReportOptions) -> Result<ClassificationReport> {
    let started = Instant::now();
    let structure = Structure::new(g)?;
    let analysis = structure.analyze(g);
    let oracle = Oracle::new(g);
    let combinatorial = analysis.det();
    let shape = classify_shape(g);
    let model = analysis.in_model();

    let (verdicts, verdicts_skipped) = match model_structure(g) {
        Ok(_) => (predicate_reports(&oracle, analysis.verdicts()), None),
        Err(e @ (Error::Shape { .. } | Error::Model(_))) => (BTreeMap::new(), Some(e.to_string())),
        Err(e) => return Err(e),
    };
    let bicyclic_formula = if shape.is_bicyclic() && model { analysis.det_bicyclic_formula().ok() } else { None };

    let inverse = match (options.inverse, &oracle.inverse) {
        (true, Some(exact)) => {
            let comb = analysis.inverse()?;
            let agrees_with_exact = &comb == exact;
            Some(InverseReport { combinatorial: comb, agrees_with_exact })
        }
        _ => None,
    };

    Ok(ClassificationReport {
        schema: REPORT_SCHEMA,
        order: g.order(),
        size: g.size(),
        shape,
        in_model: model,
        det: DetReport {
            exact: oracle.det.to_string(),
            combinatorial,
            agree: oracle.det == combinatorial.into(),
            bicyclic_formula,
        },
        verdicts_skipped,
        verdicts,
        inverse,
        timing_ms: options.timing.then(|| started.elapsed().as_millis() as u64),
    })
}

/// Matrices, i.e. arrays of arrays of strings, print one row per line.
fn as_matrix(v: &Value) -> Option<Vec<String>> {
    let rows = v.as_array()?;
    if rows.is_empty() {
        return None;
    }
    rows.iter()
        .map(|r| {
            let cells = r.as_array()?;
            let cells: Option<Vec<&str>> = cells.iter().map(Value::as_str).collect();
            Some(cells?.join(" "))
        })
        .collect()
}

fn scalar_text(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

fn flatten(prefix: &str, v: &Value, out: &mut String) {
    if let Value::Object(map) = v {
        for (k, child) in map {
            let key = if prefix.is_empty() { k.clone() } else { format!("{prefix}.{k}") };
            flatten(&key, child, out);
        }
    } else if let Some(rows) = as_matrix(v) {
        out.push_str(prefix);
        out.push_str(":\n");
        for row in rows {
            out.push_str("  ");
            out.push_str(&row);
            out.push('\n');
        }
    } else {
        out.push_str(prefix);
        out.push_str(": ");
        out.push_str(&scalar_text(v));
        out.push('\n');
    }
}

/// Renders any serialized report as `dotted.key: value` lines in field order.
pub fn render_text(v: &Value) -> String {
    let mut out = String::new();
    flatten("", v, &mut out);
    out
}

/// The inverse of `g` as a report: the exact inverse, the path-expansion inverse, or both
/// (which also records whether they agree).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum InverseMethod {
    Combinatorial,
    Algebraic,
    Both,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct InversionReport {
    pub schema: u32,
    pub method: InverseMethod,
    pub det: String,
    pub inverse: Matrix,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub methods_agree: Option<bool>,
}

impl InversionReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize") + "\n"
    }

    pub fn to_text(&self) -> String {
        render_text(&serde_json::to_value(self).expect("reports serialize"))
    }
}

/// `Err(Error::Singular)` for a singular matrix. With [`InverseMethod::Both`] the exact inverse
/// is reported and `methods_agree` tells whether the path expansion reproduced it.
pub fn invert(g: &ColoredDigraph, method: InverseMethod) -> Result<InversionReport> {
    let oracle = Oracle::new(g);
    let det = oracle.det.to_string();
    let combinatorial = || -> Result<Matrix> {
        let s = Structure::new(g)?;
        s.analyze(g).inverse()
    };
    let (inverse, methods_agree) = match method {
        InverseMethod::Algebraic => (oracle.inverse.ok_or(Error::Singular)?, None),
        InverseMethod::Combinatorial => (combinatorial()?, None),
        InverseMethod::Both => {
            let exact = oracle.inverse.ok_or(Error::Singular)?;
            let comb = combinatorial()?;
            let agree = comb == exact;
            (exact, Some(agree))
        }
    };
    Ok(InversionReport { schema: REPORT_SCHEMA, method, det, inverse, methods_agree })
}
