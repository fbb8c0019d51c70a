//! Structured pass/fail reports for theorem checks.
//!
//! A report starts in the passing state; every failed assertion flips the
//! verdict and records a witness, so a failing run documents exactly which
//! clause broke and on what data. Serialization is deterministic (sorted
//! keys, timing kept out of the comparable payload).

use serde_json::{json, Value};

#[derive(Clone, Debug)]
pub struct CheckReport {
    pub check: String,
    pub params: Value,
    pub tables: Value,
    pub pass: bool,
    pub witnesses: Vec<Value>,
    pub timing_ms: Option<u128>,
    pub cache: Option<String>,
}

impl CheckReport {
    pub fn new(check: &str) -> Self {
        CheckReport {
            check: check.to_string(),
            params: Value::Object(Default::default()),
            tables: Value::Object(Default::default()),
            pass: true,
            witnesses: Vec::new(),
            timing_ms: None,
            cache: None,
        }
    }

    pub fn with_params(mut self, params: Value) -> Self {
        self.params = params;
        self
    }

    /// Record a named table (dims per degree, subspace dims, ...).
    pub fn table(&mut self, key: &str, value: Value) {
        if let Value::Object(map) = &mut self.tables {
            map.insert(key.to_string(), value);
        }
    }

    /// Assert a clause; on failure the verdict flips and the witness is kept.
    pub fn require(&mut self, cond: bool, clause: &str, witness: Value) {
        if !cond {
            self.pass = false;
            self.witnesses.push(json!({ "clause": clause, "witness": witness }));
        }
    }

    /// Fold a sub-report into this one: the verdict propagates and the
    /// payload is recorded under the given key.
    pub fn absorb(&mut self, key: &str, sub: CheckReport) {
        if !sub.pass {
            self.pass = false;
        }
        self.attach(key, sub);
    }

    /// Record a sub-report without folding its verdict (for scenarios whose
    /// expected outcome is a failure).
    pub fn attach(&mut self, key: &str, sub: CheckReport) {
        self.table(key, sub.to_json_comparable());
    }

    /// Deterministic payload: everything except timing and cache provenance.
    pub fn to_json_comparable(&self) -> Value {
        json!({
            "check": self.check,
            "params": self.params,
            "tables": self.tables,
            "pass": self.pass,
            "witnesses": self.witnesses,
        })
    }

    pub fn to_json(&self) -> Value {
        let mut v = self.to_json_comparable();
        if let Value::Object(map) = &mut v {
            if let Some(t) = self.timing_ms {
                map.insert("timing_ms".into(), json!(t));
            }
            if let Some(c) = &self.cache {
                map.insert("cache".into(), json!(c));
            }
        }
        v
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn verdict_flips_once_and_records_witnesses() {
        let mut r = CheckReport::new("demo");
        r.require(true, "ok clause", json!(null));
        assert!(r.pass);
        r.require(false, "bad clause", json!({"x": 1}));
        r.require(false, "worse clause", json!({"y": 2}));
        assert!(!r.pass);
        assert_eq!(r.witnesses.len(), 2);
    }

    #[test]
    fn comparable_json_excludes_timing() {
        let mut r = CheckReport::new("demo");
        r.timing_ms = Some(12);
        let v = r.to_json_comparable();
        assert!(v.get("timing_ms").is_none());
        assert!(r.to_json().get("timing_ms").is_some());
    }
}
