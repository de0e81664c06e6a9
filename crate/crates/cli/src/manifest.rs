//! The JSON document every command emits.

use serde::{Deserialize, Serialize};
use serde_json::Value;

use xlab_core::decomposition::DecompositionReport;
use xlab_core::extremal::ExtremalReport;
use xlab_core::spectral::SpexReport;
use xlab_core::verify::{Instance, VerifyReport};

use crate::construct::ConstructionReport;

pub const TOOL_VERSION: &str = concat!("xlab ", env!("CARGO_PKG_VERSION"));

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", content = "report", rename_all = "snake_case")]
pub enum Payload {
    Decomposition(DecompositionReport),
    Extremal(ExtremalReport),
    Spex(SpexReport),
    Verify(VerifyReport),
    Construction(ConstructionReport),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunManifest {
    pub command: String,
    pub parameters: Value,
    pub tool_version: String,
    pub elapsed_ms: f64,
    pub payload: Payload,
    /// Instances where a large-`n` statement did not match; empty when none.
    pub exceptions: Vec<Instance>,
}

impl RunManifest {
    /// Zero every wall-clock field so reruns compare byte for byte.
    pub fn strip_timings(&mut self) {
        self.elapsed_ms = 0.0;
        match &mut self.payload {
            Payload::Extremal(r) => r.elapsed_ms = 0.0,
            Payload::Spex(r) => r.elapsed_ms = 0.0,
            Payload::Decomposition(_) | Payload::Verify(_) | Payload::Construction(_) => {}
        }
    }

    /// Serialize, then parse back through the typed schema and require the
    /// same document.
    pub fn to_validated_json(&self) -> Result<String, String> {
        let text = serde_json::to_string_pretty(self).map_err(|e| e.to_string())?;
        let back: RunManifest = serde_json::from_str(&text).map_err(|e| format!("schema round-trip: {e}"))?;
        let again = serde_json::to_string_pretty(&back).map_err(|e| e.to_string())?;
        if again != text {
            return Err("schema round-trip changed the document".into());
        }
        Ok(text)
    }
}
