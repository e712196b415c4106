//! Command output as an aligned table, JSON or CSV.
//!
//! Reports carry no timing so that identical invocations print identical
//! bytes; elapsed time is written to stderr by the caller.

use serde_json::{Map, Value};

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum OutputFormat {
    #[default]
    Table,
    Json,
    Csv,
}

#[derive(Clone, Debug, Default)]
pub struct Report {
    pub command: String,
    pub parameters: Vec<(String, Value)>,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<Value>>,
    pub summary: Vec<(String, Value)>,
}

fn cell(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Null => "-".into(),
        other => other.to_string(),
    }
}

fn object(pairs: &[(String, Value)]) -> Value {
    Value::Object(pairs.iter().cloned().collect::<Map<_, _>>())
}

impl Report {
    pub fn new(command: &str) -> Self {
        Report {
            command: command.into(),
            ..Report::default()
        }
    }

    pub fn param(mut self, key: &str, value: impl Into<Value>) -> Self {
        self.parameters.push((key.into(), value.into()));
        self
    }

    pub fn columns(mut self, names: &[&str]) -> Self {
        self.columns = names.iter().map(|s| s.to_string()).collect();
        self
    }

    pub fn row(&mut self, values: Vec<Value>) {
        debug_assert_eq!(values.len(), self.columns.len());
        self.rows.push(values);
    }

    pub fn summary(&mut self, key: &str, value: impl Into<Value>) {
        self.summary.push((key.into(), value.into()));
    }

    pub fn render(&self, format: OutputFormat) -> String {
        match format {
            OutputFormat::Table => self.table(),
            OutputFormat::Json => serde_json::to_string_pretty(&self.json()).unwrap() + "\n",
            OutputFormat::Csv => self.csv(),
        }
    }

    pub fn json(&self) -> Value {
        let rows = self
            .rows
            .iter()
            .map(|r| object(&self.columns.iter().cloned().zip(r.iter().cloned()).collect::<Vec<_>>()))
            .collect();
        let mut out = Map::new();
        out.insert("command".into(), self.command.clone().into());
        out.insert("version".into(), VERSION.into());
        out.insert("parameters".into(), object(&self.parameters));
        out.insert("rows".into(), Value::Array(rows));
        out.insert("summary".into(), object(&self.summary));
        Value::Object(out)
    }

    fn table(&self) -> String {
        let mut out = format!("pplab {VERSION} {}", self.command);
        for (k, v) in &self.parameters {
            out.push_str(&format!(" {k}={}", cell(v)));
        }
        out.push('\n');
        if !self.columns.is_empty() {
            let cells: Vec<Vec<String>> = self.rows.iter().map(|r| r.iter().map(cell).collect()).collect();
            let widths: Vec<usize> = (0..self.columns.len())
                .map(|i| cells.iter().map(|r| r[i].len()).chain([self.columns[i].len()]).max().unwrap())
                .collect();
            let line = |values: &[String]| {
                let padded: Vec<String> = values.iter().zip(&widths).map(|(v, &w)| format!("{v:<w$}")).collect();
                padded.join("  ").trim_end().to_string() + "\n"
            };
            out.push_str(&line(&self.columns));
            out.push_str(&line(&widths.iter().map(|&w| "-".repeat(w)).collect::<Vec<_>>()));
            for r in &cells {
                out.push_str(&line(r));
            }
        }
        let width = self.summary.iter().map(|(k, _)| k.len()).max().unwrap_or(0);
        for (k, v) in &self.summary {
            out.push_str(&format!("{k:<width$}  {}\n", cell(v)));
        }
        out
    }

    fn csv(&self) -> String {
        let mut w = csv::Writer::from_writer(Vec::new());
        if !self.columns.is_empty() {
            w.write_record(&self.columns).unwrap();
            for r in &self.rows {
                w.write_record(r.iter().map(cell)).unwrap();
            }
        }
        let mut out = String::from_utf8(w.into_inner().unwrap()).unwrap();
        if !self.summary.is_empty() {
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record(["key", "value"]).unwrap();
            for (k, v) in &self.summary {
                w.write_record([k.clone(), cell(v)]).unwrap();
            }
            if !out.is_empty() {
                out.push('\n');
            }
            out.push_str(&String::from_utf8(w.into_inner().unwrap()).unwrap());
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    fn sample() -> Report {
        let mut r = Report::new("fit").param("ell", 3).columns(&["n", "count", "argmax"]);
        r.row(vec![json!(24), json!(82353), json!("7,7,0")]);
        r.row(vec![json!(36), json!(434937), json!("8,8")]);
        r.summary("slope", 3.93);
        r
    }

    #[test]
    fn formats() {
        let r = sample();
        let table = r.render(OutputFormat::Table);
        assert!(table.starts_with(&format!("pplab {VERSION} fit ell=3\n")));
        assert!(table.contains("n   count   argmax\n"));
        assert!(table.contains("slope  3.93\n"));
        let csv = r.render(OutputFormat::Csv);
        assert!(csv.starts_with("n,count,argmax\n24,82353,\"7,7,0\"\n"));
        assert!(csv.ends_with("key,value\nslope,3.93\n"));
        let v: Value = serde_json::from_str(&r.render(OutputFormat::Json)).unwrap();
        assert_eq!(v["rows"][1]["count"], 434937);
        assert_eq!(v["summary"]["slope"], 3.93);
    }

    #[test]
    fn rendering_is_deterministic() {
        for f in [OutputFormat::Table, OutputFormat::Json, OutputFormat::Csv] {
            assert_eq!(sample().render(f), sample().render(f));
        }
    }
}
