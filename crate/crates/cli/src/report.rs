use std::fmt::Write as _;

use ellipsoid_entropy::EntropyKind;
use serde_json::{json, Map, Value};

use crate::error::ExitStatus;

/// One command's answer, before rendering.
#[derive(Clone, Debug)]
pub struct Report {
    pub query: Value,
    /// Entropy in bits; `None` for answers that are not entropies.
    pub value_bits: Option<f64>,
    pub kind: Option<EntropyKind>,
    pub epsilon: Option<f64>,
    pub certificate: Option<Value>,
    /// A plain number that is not an entropy (constants).
    pub value: Option<f64>,
    pub warnings: Vec<String>,
    pub status: ExitStatus,
}

impl Report {
    pub fn new(query: Value) -> Self {
        Self {
            query,
            value_bits: None,
            kind: None,
            epsilon: None,
            certificate: None,
            value: None,
            warnings: Vec::new(),
            status: ExitStatus::OK,
        }
    }

    pub fn entropy(mut self, bits: f64, kind: EntropyKind, epsilon: f64) -> Self {
        self.value_bits = Some(bits);
        self.kind = Some(kind);
        self.epsilon = Some(epsilon);
        self
    }

    pub fn certificate(mut self, cert: Value) -> Self {
        self.certificate = Some(cert);
        self
    }

    pub fn to_json(&self, nats: bool) -> Value {
        let mut m = Map::new();
        m.insert("query".into(), self.query.clone());
        let (key, scale) = value_key(nats);
        m.insert(key.into(), json!(self.value_bits.map(|v| v * scale)));
        m.insert("kind".into(), json!(self.kind.map(EntropyKind::as_str)));
        m.insert("epsilon".into(), json!(self.epsilon));
        if let Some(c) = &self.certificate {
            m.insert("certificate".into(), c.clone());
        }
        if let Some(v) = self.value {
            m.insert("value".into(), json!(v));
        }
        m.insert("warnings".into(), json!(self.warnings));
        Value::Object(m)
    }
}

fn value_key(nats: bool) -> (&'static str, f64) {
    if nats {
        ("value_nats", std::f64::consts::LN_2)
    } else {
        ("value_bits", 1.0)
    }
}

pub fn csv_table(reports: &[Report], nats: bool) -> String {
    let (key, scale) = value_key(nats);
    let mut out = format!("epsilon,{key},kind\n");
    for r in reports {
        let cell = |v: Option<f64>| v.map(|x| x.to_string()).unwrap_or_default();
        let value = r.value_bits.map(|v| v * scale).or(r.value);
        let _ = writeln!(
            out,
            "{},{},{}",
            cell(r.epsilon),
            cell(value),
            r.kind.map(EntropyKind::as_str).unwrap_or("")
        );
    }
    out
}
