//! Report envelope shared by every subcommand: machine-readable JSON with a
//! human-readable rendering, identical pass/fail content in both.

use serde::Serialize;

#[derive(Clone, Serialize)]
pub struct Check {
    pub name: String,
    pub pass: bool,
    pub details: String,
}

impl Check {
    pub fn new(name: &str, pass: bool, details: impl Into<String>) -> Self {
        Check {
            name: name.to_string(),
            pass,
            details: details.into(),
        }
    }
}

#[derive(Serialize)]
pub struct ReportEnvelope {
    pub tool_version: String,
    pub command: String,
    pub inputs: serde_json::Value,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub results: Option<serde_json::Value>,
    pub checks: Vec<Check>,
    pub elapsed_ms: u64,
}

impl ReportEnvelope {
    pub fn new(command: &str, inputs: serde_json::Value) -> Self {
        ReportEnvelope {
            tool_version: env!("CARGO_PKG_VERSION").to_string(),
            command: command.to_string(),
            inputs,
            results: None,
            checks: Vec::new(),
            elapsed_ms: 0,
        }
    }

    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn render_text(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("orbiq {} v{}\n", self.command, self.tool_version));
        if let Some(results) = &self.results {
            out.push_str(&render_value(results, 0));
        }
        if !self.checks.is_empty() {
            out.push_str("checks:\n");
            for c in &self.checks {
                let mark = if c.pass { "PASS" } else { "FAIL" };
                out.push_str(&format!("  [{mark}] {}: {}\n", c.name, c.details));
            }
        }
        out.push_str(&format!("elapsed: {} ms\n", self.elapsed_ms));
        out
    }
}

fn render_value(v: &serde_json::Value, indent: usize) -> String {
    let pad = "  ".repeat(indent);
    match v {
        serde_json::Value::Object(map) => {
            let mut out = String::new();
            for (k, val) in map {
                match val {
                    serde_json::Value::Object(_) | serde_json::Value::Array(_) => {
                        out.push_str(&format!("{pad}{k}:\n"));
                        out.push_str(&render_value(val, indent + 1));
                    }
                    _ => out.push_str(&format!("{pad}{k}: {val}\n")),
                }
            }
            out
        }
        serde_json::Value::Array(items) => {
            let mut out = String::new();
            for item in items {
                match item {
                    serde_json::Value::Object(_) | serde_json::Value::Array(_) => {
                        out.push_str(&format!("{pad}-\n"));
                        out.push_str(&render_value(item, indent + 1));
                    }
                    _ => out.push_str(&format!("{pad}- {item}\n")),
                }
            }
            out
        }
        _ => format!("{pad}{v}\n"),
    }
}
