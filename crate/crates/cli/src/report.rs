//! Report documents and their JSON/CSV emission.

use seqspace::Backend;
use serde_json::{json, Value};

use crate::codec::Codec;
use crate::error::CliError;
use crate::job::{Command, Format, JobSpec};

/// One cell of a flat table.
#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Text(String),
    Int(i64),
    /// A scalar: its JSON encoding and its canonical text.
    Number {
        json: Value,
        text: String,
    },
    Empty,
}

impl Cell {
    pub fn num<S: Codec>(v: &S) -> Self {
        Cell::Number {
            json: v.encode(),
            text: v.canonical(),
        }
    }

    pub fn text(s: impl Into<String>) -> Self {
        Cell::Text(s.into())
    }

    fn json(&self) -> Value {
        match self {
            Cell::Text(s) => Value::String(s.clone()),
            Cell::Int(i) => json!(i),
            Cell::Number { json, .. } => json.clone(),
            Cell::Empty => Value::Null,
        }
    }

    fn csv(&self) -> String {
        match self {
            Cell::Text(s) => s.clone(),
            Cell::Int(i) => i.to_string(),
            Cell::Number { text, .. } => text.clone(),
            Cell::Empty => String::new(),
        }
    }
}

/// The flat part of a report: sequences, traces, per-condition rows.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Table {
    pub columns: Vec<String>,
    pub rows: Vec<Vec<Cell>>,
}

impl Table {
    pub fn new(columns: &[&str]) -> Self {
        Table {
            columns: columns.iter().map(|c| c.to_string()).collect(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }
}

/// How the run ended, independent of the output format.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Ok,
    /// Some verdict could not be decided from the available data.
    Indeterminate,
    /// A cross-check failed.
    Inconsistent,
}

impl Status {
    pub fn name(self) -> &'static str {
        match self {
            Status::Ok => "ok",
            Status::Indeterminate => "indeterminate",
            Status::Inconsistent => "inconsistent",
        }
    }
}

#[derive(Debug, Clone)]
pub struct Report {
    pub command: Command,
    pub backend: Backend,
    pub job_hash: String,
    pub status: Status,
    /// The full, possibly nested result.
    pub result: Value,
    pub table: Table,
}

impl Report {
    pub fn new(
        job: &JobSpec,
        backend: Backend,
        status: Status,
        result: Value,
        table: Table,
    ) -> Self {
        Report {
            command: job.command,
            backend,
            job_hash: job.hash(),
            status,
            result,
            table,
        }
    }

    pub fn to_json(&self) -> Value {
        json!({
            "command": self.command.name(),
            "backend": self.backend.name(),
            "job_hash": self.job_hash,
            "status": self.status.name(),
            "result": self.result,
            "table": {
                "columns": self.table.columns,
                "rows": self.table.rows.iter()
                    .map(|r| r.iter().map(Cell::json).collect::<Vec<_>>())
                    .collect::<Vec<_>>(),
            },
        })
    }

    /// The table with the report metadata as leading `#` comment lines.
    pub fn to_csv(&self) -> Result<String, CliError> {
        let mut out = format!(
            "# command: {}\n# backend: {}\n# job_hash: {}\n# status: {}\n",
            self.command.name(),
            self.backend.name(),
            self.job_hash,
            self.status.name()
        );
        let mut w = csv::Writer::from_writer(Vec::new());
        let write = |w: &mut csv::Writer<Vec<u8>>, rec: Vec<String>| {
            w.write_record(rec).map_err(|e| CliError::Io(e.to_string()))
        };
        write(&mut w, self.table.columns.clone())?;
        for row in &self.table.rows {
            write(&mut w, row.iter().map(Cell::csv).collect())?;
        }
        let body = w.into_inner().map_err(|e| CliError::Io(e.to_string()))?;
        out.push_str(&String::from_utf8(body).expect("csv output is utf-8"));
        Ok(out)
    }

    pub fn render(&self, format: Format) -> Result<String, CliError> {
        match format {
            Format::Json => Ok(serde_json::to_string_pretty(&self.to_json())
                .expect("reports serialize")
                + "\n"),
            Format::Csv => self.to_csv(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use seqspace::{Rational, Scalar};

    fn sample() -> Report {
        let mut t = Table::new(&["n", "value"]);
        t.push(vec![Cell::Int(0), Cell::num(&Rational::from_ratio(5, 8))]);
        t.push(vec![Cell::Int(1), Cell::Empty]);
        Report::new(
            &JobSpec::new(Command::Norm),
            Backend::Rational,
            Status::Ok,
            json!({}),
            t,
        )
    }

    #[test]
    fn csv_carries_metadata_and_canonical_numbers() {
        let csv = sample().to_csv().unwrap();
        assert!(csv.contains("# backend: rational"));
        assert!(csv.contains("# job_hash: "));
        assert!(csv.ends_with("n,value\n0,5/8\n1,\n"));
    }

    #[test]
    fn json_table_uses_number_encoding() {
        let doc = sample().to_json();
        assert_eq!(doc["table"]["rows"][0][1], json!({"num": "5", "den": "8"}));
        assert_eq!(doc["backend"], "rational");
    }
}
