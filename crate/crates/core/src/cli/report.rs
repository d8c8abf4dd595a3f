//! Reports: a JSON document, an optional fixed-width table and named checks.

use serde_json::{json, Map, Value};

use crate::delcat::cache_version;

#[derive(Clone, Debug, PartialEq)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub witness: Option<Value>,
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct Report {
    pub command: String,
    pub body: Map<String, Value>,
    pub headers: Vec<String>,
    pub rows: Vec<Vec<String>>,
    pub checks: Vec<Check>,
}

impl Report {
    pub fn new(command: &str) -> Self {
        Report { command: command.to_string(), ..Default::default() }
    }

    pub fn set(&mut self, key: &str, v: Value) {
        self.body.insert(key.to_string(), v);
    }

    pub fn table(&mut self, headers: &[&str]) {
        self.headers = headers.iter().map(|h| h.to_string()).collect();
    }

    pub fn row(&mut self, cells: Vec<String>) {
        self.rows.push(cells);
    }

    pub fn check(&mut self, name: impl Into<String>, passed: bool, witness: Option<Value>) {
        self.checks.push(Check { name: name.into(), passed, witness: if passed { None } else { witness } });
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn to_json(&self) -> Value {
        let mut out = Map::new();
        out.insert("command".into(), json!(self.command));
        out.insert("cache_version".into(), json!(cache_version()));
        for (k, v) in &self.body {
            out.insert(k.clone(), v.clone());
        }
        if !self.checks.is_empty() {
            let checks: Vec<Value> = self
                .checks
                .iter()
                .map(|c| {
                    let mut v = json!({"name": c.name, "passed": c.passed});
                    if let Some(w) = &c.witness {
                        v["witness"] = w.clone();
                    }
                    v
                })
                .collect();
            out.insert("checks".into(), Value::Array(checks));
        }
        out.insert("status".into(), json!(if self.passed() { "pass" } else { "fail" }));
        Value::Object(out)
    }

    /// Fixed-width text: column widths are character counts, no locale.
    pub fn to_text(&self) -> String {
        let mut out = format!("{}\ncache_version {}\n", self.command, cache_version());
        if !self.headers.is_empty() {
            let ncol = self.headers.len();
            let mut width: Vec<usize> = self.headers.iter().map(|h| h.chars().count()).collect();
            for r in &self.rows {
                for (i, c) in r.iter().enumerate().take(ncol) {
                    width[i] = width[i].max(c.chars().count());
                }
            }
            let line = |cells: &[String]| {
                let padded: Vec<String> = cells
                    .iter()
                    .zip(&width)
                    .map(|(c, w)| format!("{c}{}", " ".repeat(w - c.chars().count())))
                    .collect();
                padded.join("  ").trim_end().to_string() + "\n"
            };
            out += &line(&self.headers);
            out += &line(&width.iter().map(|w| "-".repeat(*w)).collect::<Vec<_>>());
            for r in &self.rows {
                out += &line(r);
            }
        }
        for c in &self.checks {
            out += &format!("{} {}", if c.passed { "PASS" } else { "FAIL" }, c.name);
            if let Some(w) = &c.witness {
                out += &format!("  witness: {w}");
            }
            out.push('\n');
        }
        out += if self.passed() { "status pass\n" } else { "status fail\n" };
        out
    }
}
