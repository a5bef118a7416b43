//! Reports and their two encodings.
//!
//! The text encoding is line oriented. Each task starts with
//! `== <name> [<kind>] <status>`, followed by its tables and checks; a table
//! is a `-- <title>` line, a header line of column names joined by ` | `,
//! and one line per row, `<col0>=<v0>: <v1> | <v2> …`. A summary table of
//! all tasks closes the report.
//!
//! The JSON encoding has the keys `tasks`, and per task `name`, `kind`,
//! `status` (`pass`, `fail` or `error`), `message`, `tables` (`title`,
//! `columns`, `rows`) and `checks` (`name`, `passed`).

use std::fmt::Write;

use serde::Serialize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Error,
}

impl Status {
    pub fn name(self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Error => "error",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Table {
    pub title: String,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new(title: impl Into<String>, columns: &[&str]) -> Self {
        Table {
            title: title.into(),
            columns: columns.iter().map(|c| c.to_string()).collect(),
            rows: Vec::new(),
        }
    }

    pub fn row(&mut self, cells: Vec<String>) {
        self.rows.push(cells);
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TaskReport {
    pub name: String,
    pub kind: String,
    pub status: Status,
    pub message: Option<String>,
    pub tables: Vec<Table>,
    pub checks: Vec<Check>,
}

impl TaskReport {
    pub fn new(name: &str, kind: &str) -> Self {
        TaskReport {
            name: name.into(),
            kind: kind.into(),
            status: Status::Pass,
            message: None,
            tables: Vec::new(),
            checks: Vec::new(),
        }
    }

    pub fn check(&mut self, name: impl Into<String>, passed: bool) {
        self.checks.push(Check {
            name: name.into(),
            passed,
        });
    }

    /// Sets the status from the checks.
    pub fn finish(mut self) -> Self {
        if self.status != Status::Error && self.checks.iter().any(|c| !c.passed) {
            self.status = Status::Fail;
        }
        self
    }

    pub fn error(mut self, message: impl Into<String>) -> Self {
        self.status = Status::Error;
        self.message = Some(message.into());
        self
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Report {
    pub tasks: Vec<TaskReport>,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.tasks.iter().all(|t| t.status == Status::Pass)
    }

    pub fn summary(&self) -> Table {
        let mut t = Table::new("summary", &["task", "kind", "status"]);
        for r in &self.tasks {
            t.row(vec![r.name.clone(), r.kind.clone(), r.status.name().into()]);
        }
        t
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for t in &self.tasks {
            let _ = writeln!(out, "== {} [{}] {}", t.name, t.kind, t.status.name());
            if let Some(m) = &t.message {
                let _ = writeln!(out, "message: {}", m);
            }
            for table in &t.tables {
                write_table(&mut out, table);
            }
            for c in &t.checks {
                let _ = writeln!(out, "check {}: {}", c.name, if c.passed { "pass" } else { "FAIL" });
            }
            out.push('\n');
        }
        write_table(&mut out, &self.summary());
        out
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("reports serialize");
        s.push('\n');
        s
    }
}

fn write_table(out: &mut String, t: &Table) {
    let _ = writeln!(out, "-- {}", t.title);
    let _ = writeln!(out, "{}", t.columns.join(" | "));
    for row in &t.rows {
        let key = t.columns.first().map_or("", String::as_str);
        match row.split_first() {
            None => out.push('\n'),
            Some((first, [])) => {
                let _ = writeln!(out, "{}={}", key, first);
            }
            Some((first, rest)) => {
                let _ = writeln!(out, "{}={}: {}", key, first, rest.join(" | "));
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_report_is_an_empty_summary() {
        assert_eq!(Report::default().to_text(), "-- summary\ntask | kind | status\n");
        assert!(Report::default().to_json().contains("\"tasks\": []"));
    }

    #[test]
    fn rows_render_with_their_key() {
        let mut t = Table::new("derived", &["n", "value"]);
        t.row(vec!["1".into(), "Z/2".into()]);
        let mut s = String::new();
        write_table(&mut s, &t);
        assert_eq!(s, "-- derived\nn | value\nn=1: Z/2\n");
    }

    #[test]
    fn failing_check_fails_the_task() {
        let mut r = TaskReport::new("t", "derive");
        r.check("a", true);
        r.check("b", false);
        assert_eq!(r.finish().status, Status::Fail);
    }
}
