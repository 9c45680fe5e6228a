//! Report assembly: one schema-stable JSON object per command, plus the
//! human-readable rendering. Vertex output always uses the input file's
//! original labels.

use serde_json::{json, Map, Value};

use factorkit::{
    AllFactorsVerdict, DeficiencyCertificate, DegreeFunc, Hypothesis, IndicatorAssignment,
    VertexSet,
};

pub struct Report {
    pub command: String,
    pub n: usize,
    pub edges: usize,
    pub verdict: Option<bool>,
    pub certificate: Option<Value>,
    pub indicator: Option<Value>,
    pub hypotheses: Vec<Hypothesis>,
    pub engine: Option<String>,
    pub seed: Option<u64>,
    pub elapsed_ms: Option<u128>,
    /// Command-specific fields (threshold, failing prescription, ...),
    /// all declared in the shipped schema.
    pub extra: Map<String, Value>,
}

impl Report {
    pub fn new(command: &str, n: usize, edges: usize) -> Self {
        Report {
            command: command.to_string(),
            n,
            edges,
            verdict: None,
            certificate: None,
            indicator: None,
            hypotheses: Vec::new(),
            engine: None,
            seed: None,
            elapsed_ms: None,
            extra: Map::new(),
        }
    }

    pub fn to_json(&self) -> Value {
        let mut object = Map::new();
        object.insert("command".into(), json!(self.command));
        object.insert("n".into(), json!(self.n));
        object.insert("edges".into(), json!(self.edges));
        object.insert("verdict".into(), json!(self.verdict));
        object.insert(
            "certificate".into(),
            self.certificate.clone().unwrap_or(Value::Null),
        );
        object.insert(
            "indicator".into(),
            self.indicator.clone().unwrap_or(Value::Null),
        );
        object.insert(
            "hypotheses".into(),
            Value::Array(self.hypotheses.iter().map(hypothesis_json).collect()),
        );
        object.insert("engine".into(), json!(self.engine));
        object.insert("seed".into(), json!(self.seed));
        object.insert(
            "elapsed_ms".into(),
            self.elapsed_ms.map_or(Value::Null, |ms| json!(ms as u64)),
        );
        for (key, value) in &self.extra {
            object.insert(key.clone(), value.clone());
        }
        Value::Object(object)
    }

    pub fn render_human(&self) -> String {
        let mut out = String::new();
        let mut line = |s: String| {
            out.push_str(&s);
            out.push('\n');
        };
        line(format!("command: {}", self.command));
        line(format!("graph: n={}, edges={}", self.n, self.edges));
        if let Some(v) = self.verdict {
            line(format!("verdict: {v}"));
        }
        if let Some(engine) = &self.engine {
            line(format!("engine: {engine}"));
        }
        if !self.hypotheses.is_empty() {
            line("hypotheses:".to_string());
            for h in &self.hypotheses {
                let tag = if h.holds { "pass" } else { "fail" };
                line(format!(
                    "  [{tag}] {}: {} [{}]",
                    h.name, h.description, h.comparison
                ));
            }
        }
        if let Some(Value::Object(cert)) = &self.certificate {
            line(format!(
                "certificate: deficiency {}, S = {}, T = {}",
                cert["deficiency"],
                render_label_array(&cert["S"]),
                render_label_array(&cert["T"])
            ));
        }
        if let Some(Value::Object(ind)) = &self.indicator {
            line(format!("indicator (denominator {}):", ind["denominator"]));
            if let Value::Array(entries) = &ind["entries"] {
                for e in entries {
                    line(format!(
                        "  {} {} {}",
                        e["u"].as_str().unwrap_or("?"),
                        e["v"].as_str().unwrap_or("?"),
                        e["numerator"]
                    ));
                }
            }
        }
        for (key, value) in &self.extra {
            line(format!("{key}: {value}"));
        }
        if let Some(ms) = self.elapsed_ms {
            line(format!("elapsed: {ms} ms"));
        }
        out
    }
}

fn render_label_array(value: &Value) -> String {
    match value {
        Value::Array(items) => {
            let labels: Vec<&str> = items.iter().filter_map(Value::as_str).collect();
            format!("{{{}}}", labels.join(", "))
        }
        _ => value.to_string(),
    }
}

fn hypothesis_json(h: &Hypothesis) -> Value {
    json!({
        "name": h.name,
        "description": h.description,
        "comparison": h.comparison,
        "holds": h.holds,
    })
}

pub fn labels_of(set: &VertexSet, labels: &[String]) -> Vec<String> {
    set.iter().map(|v| labels[v].clone()).collect()
}

pub fn certificate_json(cert: &DeficiencyCertificate, labels: &[String]) -> Value {
    json!({
        "S": labels_of(&cert.s, labels),
        "T": labels_of(&cert.t, labels),
        "deficiency": cert.deficiency,
    })
}

pub fn indicator_json(indicator: &IndicatorAssignment, labels: &[String]) -> Value {
    let entries: Vec<Value> = indicator
        .entries()
        .iter()
        .map(|e| {
            json!({
                "u": labels[e.u],
                "v": labels[e.v],
                "numerator": e.numerator,
            })
        })
        .collect();
    json!({
        "denominator": IndicatorAssignment::DENOMINATOR,
        "entries": entries,
    })
}

pub fn prescription_json(func: &DegreeFunc, labels: &[String]) -> Value {
    let mut object = Map::new();
    for (v, &value) in func.values().iter().enumerate() {
        object.insert(labels[v].clone(), json!(value));
    }
    Value::Object(object)
}

/// Folds the oracle-specific failure details of a verdict into a report.
pub fn apply_verdict(report: &mut Report, verdict: &AllFactorsVerdict, labels: &[String]) {
    report.verdict = Some(verdict.holds);
    report.engine = Some(verdict.engine.as_str().to_string());
    report.certificate = verdict
        .certificate
        .as_ref()
        .map(|c| certificate_json(c, labels));
    if let Some(q) = &verdict.failing_prescription {
        report
            .extra
            .insert("failing_prescription".into(), prescription_json(q, labels));
    }
    if let Some(corner) = &verdict.failing_corner {
        report
            .extra
            .insert("failing_corner".into(), json!(labels_of(corner, labels)));
    }
}
