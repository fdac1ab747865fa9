//! Rendering of command output as JSON, CSV or aligned markdown.

use cyclobar_core::linalg::FiniteAbelianGroup;
use cyclobar_core::tc::WittLengthRow;
use cyclobar_core::BigInt;
use serde_json::{json, Number, Value};

use crate::config::Format;

#[derive(Clone, Debug, Default, PartialEq)]
pub struct Table {
    pub headers: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new<S: Into<String>>(headers: impl IntoIterator<Item = S>) -> Self {
        Self {
            headers: headers.into_iter().map(Into::into).collect(),
            rows: Vec::new(),
        }
    }

    pub fn push<S: Into<String>>(&mut self, row: impl IntoIterator<Item = S>) {
        let row: Vec<String> = row.into_iter().map(Into::into).collect();
        debug_assert_eq!(row.len(), self.headers.len());
        self.rows.push(row);
    }

    pub fn to_csv(&self) -> String {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(&self.headers).expect("in-memory write");
        for r in &self.rows {
            w.write_record(r).expect("in-memory write");
        }
        String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf-8 input")
    }

    pub fn to_markdown(&self) -> String {
        let width = |s: &str| s.chars().count();
        let mut widths: Vec<usize> = self.headers.iter().map(|h| width(h).max(3)).collect();
        for r in &self.rows {
            for (w, c) in widths.iter_mut().zip(r) {
                *w = (*w).max(width(c));
            }
        }
        let line = |cells: &[String]| {
            let mut s = String::from("|");
            for (c, w) in cells.iter().zip(&widths) {
                s.push(' ');
                s.push_str(c);
                s.extend(std::iter::repeat_n(' ', w - width(c)));
                s.push_str(" |");
            }
            s.push('\n');
            s
        };
        let mut out = line(&self.headers);
        out.push('|');
        for w in &widths {
            out.push_str(&"-".repeat(w + 2));
            out.push('|');
        }
        out.push('\n');
        for r in &self.rows {
            out.push_str(&line(r));
        }
        out
    }
}

/// Everything a command prints on stdout.
#[derive(Clone, Debug, PartialEq)]
pub struct Output {
    pub json: Value,
    pub table: Table,
    /// Extra lines after the markdown table.
    pub notes: Vec<String>,
}

impl Output {
    pub fn new(json: Value, table: Table) -> Self {
        Self {
            json,
            table,
            notes: Vec::new(),
        }
    }

    pub fn note(mut self, line: impl Into<String>) -> Self {
        self.notes.push(line.into());
        self
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => {
                let mut s = serde_json::to_string_pretty(&self.json).expect("values serialize");
                s.push('\n');
                s
            }
            Format::Csv => self.table.to_csv(),
            Format::Md => {
                let mut s = self.table.to_markdown();
                if !self.notes.is_empty() {
                    s.push('\n');
                    for n in &self.notes {
                        s.push_str(n);
                        s.push('\n');
                    }
                }
                s
            }
        }
    }
}

/// An exact integer as a JSON number.
pub fn big(n: &BigInt) -> Value {
    Value::Number(n.to_string().parse::<Number>().expect("integers are valid JSON numbers"))
}

/// Orders of the cyclic factors, largest first; `0` for a free factor.
pub fn group_orders(g: &FiniteAbelianGroup) -> Vec<BigInt> {
    std::iter::repeat_n(BigInt::from(0), g.free_rank())
        .chain(g.invariant_factors().iter().rev().cloned())
        .collect()
}

pub fn group_json(g: &FiniteAbelianGroup) -> Value {
    Value::Array(group_orders(g).iter().map(big).collect())
}

/// One row of the K-theory table, in the documented schema.
pub fn witt_row_json(row: &WittLengthRow) -> Value {
    json!({
        "prime": row.prime,
        "degree": row.degree,
        "entries": row.entries.iter().map(|&(m, s)| json!({"mprime": m, "s": s})).collect::<Vec<_>>(),
        "group": row.factor_orders().iter().map(big).collect::<Vec<_>>(),
        "order": big(&row.order()),
    })
}

pub fn entries_text(entries: &[(u64, u32)]) -> String {
    let inner: Vec<String> = entries.iter().map(|(m, s)| format!("({m},{s})")).collect();
    format!("[{}]", inner.join(","))
}
