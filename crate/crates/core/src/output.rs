//! Rendering of results as aligned text, CSV or JSON.
//!
//! Summand lists use the schema
//! `{"n", "p", "level", "summands": [{"kind", "param", "shift_or_twist", "mult"}], "rank_sum"}`
//! with multiplicities and the rank sum as decimal strings.

use std::str::FromStr;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::decomposition::{Level, SheafKind, SummandKey, SummandList};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Format {
    #[default]
    Text,
    Json,
    Csv,
}

impl FromStr for Format {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "text" => Ok(Format::Text),
            "json" => Ok(Format::Json),
            "csv" => Ok(Format::Csv),
            _ => Err(format!("unknown format {s:?}")),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SummandDoc {
    pub kind: SheafKind,
    pub param: u64,
    pub shift_or_twist: i64,
    pub mult: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SummandListDoc {
    pub n: u32,
    pub p: u32,
    pub level: Level,
    pub summands: Vec<SummandDoc>,
    pub rank_sum: String,
}

impl From<&SummandList> for SummandListDoc {
    fn from(list: &SummandList) -> Self {
        SummandListDoc {
            n: list.n,
            p: list.p,
            level: list.level,
            summands: list
                .iter()
                .map(|(k, c)| SummandDoc {
                    kind: k.kind,
                    param: k.param,
                    shift_or_twist: k.shift,
                    mult: c.to_string(),
                })
                .collect(),
            rank_sum: list.rank_sum().to_string(),
        }
    }
}

impl TryFrom<&SummandListDoc> for SummandList {
    type Error = String;
    fn try_from(doc: &SummandListDoc) -> Result<Self, String> {
        let mut list = SummandList::new(doc.level, doc.n, doc.p);
        for s in &doc.summands {
            let mult: BigInt = s
                .mult
                .parse()
                .map_err(|_| format!("bad multiplicity {:?}", s.mult))?;
            list.add(SummandKey::new(s.kind, s.param, s.shift_or_twist), &mult);
        }
        if list.rank_sum().to_string() != doc.rank_sum {
            return Err(format!(
                "rank_sum {} does not match the summands ({})",
                doc.rank_sum,
                list.rank_sum()
            ));
        }
        Ok(list)
    }
}

/// A titled table of strings.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Table {
    pub title: String,
    pub headers: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new(title: impl Into<String>, headers: &[&str]) -> Self {
        Table {
            title: title.into(),
            headers: headers.iter().map(|h| h.to_string()).collect(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<String>) {
        debug_assert_eq!(row.len(), self.headers.len());
        self.rows.push(row);
    }

    fn widths(&self) -> Vec<usize> {
        let mut w: Vec<usize> = self.headers.iter().map(|h| h.chars().count()).collect();
        for row in &self.rows {
            for (i, cell) in row.iter().enumerate() {
                w[i] = w[i].max(cell.chars().count());
            }
        }
        w
    }

    pub fn to_text(&self) -> String {
        let widths = self.widths();
        let mut out = String::new();
        if !self.title.is_empty() {
            out.push_str(&self.title);
            out.push('\n');
        }
        out.push_str(&text_row(&self.headers, &widths));
        for row in &self.rows {
            out.push_str(&text_row(row, &widths));
        }
        out
    }

    pub fn to_csv(&self) -> String {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(&self.headers).expect("in-memory csv");
        for row in &self.rows {
            w.write_record(row).expect("in-memory csv");
        }
        String::from_utf8(w.into_inner().expect("in-memory csv")).expect("utf-8")
    }

    /// Rows as JSON objects keyed by header.
    pub fn to_json(&self) -> Value {
        Value::Array(
            self.rows
                .iter()
                .map(|row| {
                    Value::Object(
                        self.headers
                            .iter()
                            .cloned()
                            .zip(row.iter().map(|c| Value::String(c.clone())))
                            .collect(),
                    )
                })
                .collect(),
        )
    }
}

/// One text line; numbers are right-aligned, everything else left-aligned.
pub fn text_row(cells: &[String], widths: &[usize]) -> String {
    let mut line = String::new();
    for (i, (cell, w)) in cells.iter().zip(widths).enumerate() {
        let pad = " ".repeat(w.saturating_sub(cell.chars().count()));
        if i > 0 {
            line.push_str("  ");
        }
        if cell == "-" || cell.parse::<f64>().is_ok() {
            line.push_str(&pad);
            line.push_str(cell);
        } else {
            line.push_str(cell);
            line.push_str(&pad);
        }
    }
    line.truncate(line.trim_end().len());
    line.push('\n');
    line
}

/// One CSV record, newline terminated.
pub fn csv_row(cells: &[String]) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(cells).expect("in-memory csv");
    String::from_utf8(w.into_inner().expect("in-memory csv")).expect("utf-8")
}

/// Text/CSV rendering of several tables. Text separates them by blank lines; CSV
/// prefixes every record with the table title when there is more than one table.
pub fn render_tables(tables: &[Table], format: Format) -> String {
    match format {
        Format::Text => tables
            .iter()
            .map(Table::to_text)
            .collect::<Vec<_>>()
            .join("\n"),
        Format::Csv if tables.len() == 1 => tables[0].to_csv(),
        Format::Csv => {
            let mut out = String::new();
            for (i, t) in tables.iter().enumerate() {
                let mut with_section = Table::new("", &[]);
                with_section.headers = std::iter::once("section".to_string())
                    .chain(t.headers.iter().cloned())
                    .collect();
                with_section.rows = t
                    .rows
                    .iter()
                    .map(|r| std::iter::once(t.title.clone()).chain(r.iter().cloned()).collect())
                    .collect();
                let csv = with_section.to_csv();
                if i > 0 {
                    out.push('\n');
                }
                out.push_str(&csv);
            }
            out
        }
        Format::Json => {
            let obj: serde_json::Map<String, Value> = tables
                .iter()
                .map(|t| (t.title.clone(), t.to_json()))
                .collect();
            pretty(&Value::Object(obj))
        }
    }
}

pub fn pretty<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serialisable");
    s.push('\n');
    s
}

pub fn summand_table(list: &SummandList) -> Table {
    let title = format!(
        "n = {}, p = {}, level = {}: {} distinct summands, rank sum {}",
        list.n,
        list.p,
        list.level.as_str(),
        list.distinct_count(),
        list.rank_sum()
    );
    let mut t = Table::new(title, &["summand", "kind", "param", "shift_or_twist", "mult"]);
    for (k, c) in list.iter() {
        t.push(vec![
            k.label(list.level),
            k.kind.as_str().into(),
            k.param.to_string(),
            k.shift.to_string(),
            c.to_string(),
        ]);
    }
    t
}

pub fn render_summands(list: &SummandList, format: Format) -> String {
    match format {
        Format::Json => pretty(&SummandListDoc::from(list)),
        Format::Csv => {
            let mut t = summand_table(list);
            t.headers.remove(0);
            for row in &mut t.rows {
                row.remove(0);
            }
            t.to_csv()
        }
        Format::Text => summand_table(list).to_text(),
    }
}
