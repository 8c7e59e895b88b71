use std::path::Path;

use serde::{Deserialize, Serialize};

use super::certificate::EVIDENCE_SCHEMA;
use crate::error::{Error, Result};
use crate::search::EvidenceRow;

/// The `<task>.evidence.json` document written for `table` tasks.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EvidenceFile {
    pub schema: String,
    pub task: String,
    pub group: String,
    pub rows: Vec<EvidenceRow>,
    pub estimate: Option<usize>,
}

impl EvidenceFile {
    pub fn parse(text: &str) -> Result<Self> {
        let ev: EvidenceFile =
            serde_json::from_str(text).map_err(|e| Error::Certificate(format!("evidence: {e}")))?;
        if ev.schema != EVIDENCE_SCHEMA {
            return Err(Error::Certificate(format!("unknown schema {:?}", ev.schema)));
        }
        Ok(ev)
    }

    pub fn read(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Certificate(format!("{}: {e}", path.display())))?;
        Self::parse(&text)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TableFormat {
    Text,
    Csv,
}

impl TableFormat {
    /// CSV for `.csv` paths, text otherwise.
    pub fn for_path(path: Option<&Path>) -> Self {
        match path.and_then(Path::extension) {
            Some(e) if e.eq_ignore_ascii_case("csv") => TableFormat::Csv,
            _ => TableFormat::Text,
        }
    }
}

const HEADER: [&str; 7] = ["group", "S", "k", "window", "min_n", "outcome", "nodes"];

fn cells(group: &str, row: &EvidenceRow) -> [String; 7] {
    [
        group.to_string(),
        row.s_label.clone(),
        row.k.to_string(),
        row.window_size.to_string(),
        row.min_n.map_or_else(|| "-".to_string(), |n| n.to_string()),
        row.outcome.as_str().to_string(),
        row.nodes.to_string(),
    ]
}

/// Rows sorted by generating set and `k`.
pub fn emit_table(ev: &EvidenceFile, format: TableFormat) -> Result<String> {
    let mut rows: Vec<&EvidenceRow> = ev.rows.iter().collect();
    rows.sort_by_key(|r| (r.s_index, r.k));
    let body: Vec<[String; 7]> = rows.iter().map(|r| cells(&ev.group, r)).collect();
    match format {
        TableFormat::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record(HEADER)?;
            for r in &body {
                w.write_record(r)?;
            }
            let bytes = w.into_inner().map_err(|e| Error::Io(e.into_error()))?;
            Ok(String::from_utf8(bytes).expect("csv of utf-8 fields"))
        }
        TableFormat::Text => {
            let mut widths = HEADER.map(str::len);
            for r in &body {
                for (w, c) in widths.iter_mut().zip(r) {
                    *w = (*w).max(c.chars().count());
                }
            }
            let line = |cols: Vec<&str>| {
                let padded: Vec<String> = cols
                    .iter()
                    .zip(widths)
                    .map(|(c, w)| format!("{c:<w$}"))
                    .collect();
                padded.join("  ").trim_end().to_string() + "\n"
            };
            let mut out = line(HEADER.to_vec());
            for r in &body {
                out += &line(r.iter().map(String::as_str).collect());
            }
            if !body.is_empty() {
                match ev.estimate {
                    Some(e) => out += &format!("evidence value: {e}\n"),
                    None => out += "evidence value: undetermined\n",
                }
            }
            Ok(out)
        }
    }
}
