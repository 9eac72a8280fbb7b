use serde_json::{json, Value};

use crate::error::Error;

/// A titled table of already formatted cells.
#[derive(Clone, Debug)]
pub struct Table {
    pub title: String,
    pub header: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new(title: &str, header: &[&str]) -> Table {
        Table {
            title: title.into(),
            header: header.iter().map(|h| h.to_string()).collect(),
            rows: Vec::new(),
        }
    }

    pub fn row(&mut self, cells: Vec<String>) {
        self.rows.push(cells);
    }

    fn render(&self) -> String {
        let width = |s: &str| s.chars().count();
        let mut widths: Vec<usize> = self.header.iter().map(|h| width(h)).collect();
        for r in &self.rows {
            for (w, c) in widths.iter_mut().zip(r) {
                *w = (*w).max(width(c));
            }
        }
        let line = |cells: &[String]| -> String {
            let padded: Vec<String> = cells
                .iter()
                .zip(&widths)
                .map(|(c, &w)| format!("{c}{}", " ".repeat(w - width(c))))
                .collect();
            padded.join("  ").trim_end().to_string()
        };
        let mut out = vec![format!("== {}", self.title), line(&self.header)];
        out.push(widths.iter().map(|&w| "-".repeat(w)).collect::<Vec<_>>().join("  "));
        out.extend(self.rows.iter().map(|r| line(r)));
        out.join("\n")
    }
}

/// Everything one command produced.
#[derive(Debug)]
pub struct Report {
    pub command: &'static str,
    pub document: String,
    pub truncation: usize,
    /// Truncation of corner nerves when it differs from `truncation`.
    pub corner_truncation: Option<usize>,
    pub element_cap: usize,
    pub violations: Vec<String>,
    pub error: Option<Error>,
    pub data: Value,
    pub tables: Vec<Table>,
}

impl Report {
    pub fn new(command: &'static str, document: &str, truncation: usize, element_cap: usize) -> Report {
        Report {
            command,
            document: document.into(),
            truncation,
            corner_truncation: None,
            element_cap,
            violations: Vec::new(),
            error: None,
            data: Value::Null,
            tables: Vec::new(),
        }
    }

    pub fn violation(&mut self, msg: impl Into<String>) {
        self.violations.push(msg.into());
    }

    pub fn exit_code(&self) -> i32 {
        match &self.error {
            Some(e) => e.exit_code(),
            None if self.violations.is_empty() => 0,
            None => 1,
        }
    }

    fn status(&self) -> &'static str {
        match self.exit_code() {
            0 => "ok",
            1 => "violation",
            2 => "input error",
            _ => "resource cap",
        }
    }

    pub fn structured(&self) -> String {
        let v = json!({
            "command": self.command,
            "document": self.document,
            "truncation": self.truncation,
            "corner_truncation": self.corner_truncation,
            "caps": {"element_cap": self.element_cap, "nerve_cap": self.element_cap},
            "status": self.status(),
            "exit_code": self.exit_code(),
            "violations": self.violations,
            "error": self.error.as_ref().map(|e| e.to_string()),
            "result": self.data,
        });
        serde_json::to_string_pretty(&v).expect("report serializes")
    }

    pub fn table(&self) -> String {
        let mut out = vec![
            format!("{} {}", self.command, self.document),
            format!("truncation D = {}, element cap = {}", self.truncation, self.element_cap),
        ];
        if let Some(c) = self.corner_truncation {
            out[1].push_str(&format!(", corner truncation = {c}"));
        }
        for t in &self.tables {
            out.push(String::new());
            out.push(t.render());
        }
        if !self.violations.is_empty() {
            out.push(String::new());
            out.extend(self.violations.iter().map(|v| format!("violation: {v}")));
        }
        if let Some(e) = &self.error {
            out.push(format!("error: {e}"));
        }
        out.push(format!("status: {}", self.status()));
        out.join("\n")
    }
}
