use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use outer_billiard::Point;

use crate::cli::Format;
use crate::CliError;

/// Exact coefficients plus a display-only decimal approximation.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PointDump {
    pub coeffs: Vec<String>,
    pub approx: [f64; 2],
}

impl PointDump {
    pub fn new(p: &Point) -> Self {
        let (x, y) = p.to_f64();
        PointDump { coeffs: p.coeffs().iter().map(|c| c.to_string()).collect(), approx: [x, y] }
    }
}

/// One command result in every form it can be printed in.
pub struct Rendered {
    pub json: Value,
    pub headers: Vec<String>,
    pub rows: Vec<Vec<String>>,
    pub notes: Vec<String>,
    pub svg: Option<String>,
}

impl Rendered {
    pub fn new(json: impl Serialize, headers: &[&str], rows: Vec<Vec<String>>) -> Self {
        Rendered {
            json: serde_json::to_value(json).expect("serializable report"),
            headers: headers.iter().map(|h| h.to_string()).collect(),
            rows,
            notes: Vec::new(),
            svg: None,
        }
    }

    pub fn note(mut self, line: impl Into<String>) -> Self {
        self.notes.push(line.into());
        self
    }

    pub fn emit(&self, format: Format) -> Result<String, CliError> {
        Ok(match format {
            Format::Json => json_text(&self.json),
            Format::Csv => self.csv(),
            Format::Text => self.text(),
            Format::Svg => self.svg.clone().ok_or_else(|| CliError::Usage("svg output is only available for orbit".into()))?,
        })
    }

    fn csv(&self) -> String {
        let mut out = String::new();
        let line = |cells: &[String]| cells.iter().map(|c| csv_cell(c)).collect::<Vec<_>>().join(",");
        let _ = writeln!(out, "{}", line(&self.headers));
        for row in &self.rows {
            let _ = writeln!(out, "{}", line(row));
        }
        out
    }

    fn text(&self) -> String {
        let mut out = String::new();
        for n in &self.notes {
            let _ = writeln!(out, "{n}");
        }
        if self.headers.is_empty() {
            return out;
        }
        let mut widths: Vec<usize> = self.headers.iter().map(|h| h.chars().count()).collect();
        for row in &self.rows {
            for (w, c) in widths.iter_mut().zip(row) {
                *w = (*w).max(c.chars().count());
            }
        }
        let line = |cells: &[String]| {
            let padded: Vec<String> = cells.iter().zip(&widths).map(|(c, w)| format!("{c:<w$}")).collect();
            padded.join("  ").trim_end().to_string()
        };
        let _ = writeln!(out, "{}", line(&self.headers));
        for row in &self.rows {
            let _ = writeln!(out, "{}", line(row));
        }
        out
    }
}

/// Pretty JSON with a trailing newline; re-emitting a parsed dump gives the same bytes.
pub fn json_text(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("json value");
    s.push('\n');
    s
}

fn csv_cell(c: &str) -> String {
    if c.contains([',', '"', '\n']) {
        format!("\"{}\"", c.replace('"', "\"\""))
    } else {
        c.to_string()
    }
}

pub fn opt<T: ToString>(v: Option<T>) -> String {
    v.map(|x| x.to_string()).unwrap_or_default()
}

pub fn digits(word: &[usize]) -> String {
    if word.is_empty() {
        return "ε".into();
    }
    word.iter().map(|d| d.to_string()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn csv_quotes_only_when_needed() {
        assert_eq!(csv_cell("12"), "12");
        assert_eq!(csv_cell("a,b"), "\"a,b\"");
        assert_eq!(csv_cell("say \"x\""), "\"say \"\"x\"\"\"");
    }

    #[test]
    fn text_columns_line_up() {
        let r = Rendered::new(Value::Null, &["n", "word"], vec![vec!["1".into(), "2".into()], vec!["10".into(), "223".into()]]);
        assert_eq!(r.emit(Format::Text).unwrap(), "n   word\n1   2\n10  223\n");
        assert!(r.emit(Format::Svg).is_err());
    }
}
