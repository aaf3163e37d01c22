//! Versioned JSON reports.

use serde::Serialize;
use serde_json::Value;
use sha2::{Digest, Sha256};

pub const SCHEMA: u32 = 1;

#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub schema: u32,
    pub operation: String,
    /// SHA-256 over the length-prefixed input files, in argument order.
    pub input_digest: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
    pub ok: bool,
    pub result: Value,
    pub witnesses: Vec<Value>,
    /// `None` unless timing was requested, so that reports stay reproducible.
    pub timing_ms: Option<f64>,
}

pub fn input_digest<B: AsRef<[u8]>>(inputs: &[B]) -> String {
    let mut h = Sha256::new();
    for b in inputs {
        let b = b.as_ref();
        h.update((b.len() as u64).to_le_bytes());
        h.update(b);
    }
    hex::encode(h.finalize())
}

impl Report {
    pub fn new(operation: impl Into<String>, digest: String, result: Value, witnesses: Vec<Value>) -> Report {
        Report {
            schema: SCHEMA,
            operation: operation.into(),
            input_digest: digest,
            note: None,
            ok: witnesses.is_empty(),
            result,
            witnesses,
            timing_ms: None,
        }
    }

    pub fn with_note(mut self, note: impl Into<String>) -> Report {
        self.note = Some(note.into());
        self
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize")
    }
}
