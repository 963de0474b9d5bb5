//! Review spreadsheets and run statistics.

use std::collections::BTreeMap;
use std::fmt;
use std::io::{Read, Write};
use std::ops::AddAssign;
use std::path::Path;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::extractor::KinshipRecord;
use crate::filter::FilterDecision;

#[derive(Debug, Error)]
pub enum ReviewError {
    #[error("io: {0}")]
    Io(#[from] std::io::Error),
    #[error("csv: {0}")]
    Csv(#[from] csv::Error),
}

/// One line of `review.csv`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReviewRow {
    pub doc_id: String,
    pub sentence_index: usize,
    pub relation: String,
    pub kinship_code: String,
    pub generation: String,
    pub declared_count: Option<u32>,
    pub names: String,
    pub count_mismatch: bool,
    pub pattern_id: String,
    pub compressed_form: String,
    pub original: String,
}

impl From<&KinshipRecord> for ReviewRow {
    fn from(r: &KinshipRecord) -> Self {
        ReviewRow {
            doc_id: r.doc_id.clone(),
            sentence_index: r.sentence_index,
            relation: r.relation_label.clone(),
            kinship_code: r
                .kinship_code
                .as_ref()
                .map(|k| k.code.clone())
                .unwrap_or_default(),
            generation: r
                .kinship_code
                .as_ref()
                .map(|k| k.generation.clone())
                .unwrap_or_default(),
            declared_count: r.declared_count,
            names: r.name_surfaces().join("|"),
            count_mismatch: r.count_mismatch,
            pattern_id: r.pattern_id.clone(),
            compressed_form: r.compressed_form.clone(),
            original: r.original.clone(),
        }
    }
}

/// One line of `rejected.csv`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RejectedRow {
    pub doc_id: String,
    pub sentence_index: usize,
    pub pattern_id: String,
    pub relation: String,
    pub surface: String,
    pub start: usize,
    pub end: usize,
    pub reason: String,
}

fn sorted(records: &[KinshipRecord]) -> Vec<&KinshipRecord> {
    let mut v: Vec<&KinshipRecord> = records.iter().collect();
    v.sort_by(|a, b| (&a.doc_id, a.sentence_index).cmp(&(&b.doc_id, b.sentence_index)));
    v
}

pub fn write_review_csv<W: Write>(records: &[KinshipRecord], out: W) -> Result<(), ReviewError> {
    let mut w = csv::Writer::from_writer(out);
    if records.is_empty() {
        w.write_record([
            "doc_id",
            "sentence_index",
            "relation",
            "kinship_code",
            "generation",
            "declared_count",
            "names",
            "count_mismatch",
            "pattern_id",
            "compressed_form",
            "original",
        ])?;
    }
    for r in sorted(records) {
        w.serialize(ReviewRow::from(r))?;
    }
    w.flush()?;
    Ok(())
}

/// Writes `review.csv`: one row per record, ordered by document then sentence.
pub fn emit_review_csv(records: &[KinshipRecord], path: &Path) -> Result<(), ReviewError> {
    write_review_csv(records, std::fs::File::create(path)?)
}

pub fn read_review_csv<R: Read>(input: R) -> Result<Vec<ReviewRow>, ReviewError> {
    let mut rdr = csv::Reader::from_reader(input);
    Ok(rdr.deserialize().collect::<Result<_, _>>()?)
}

pub fn rejected_rows(records: &[KinshipRecord]) -> Vec<RejectedRow> {
    sorted(records)
        .into_iter()
        .flat_map(|r| {
            r.rejected.iter().map(move |c| RejectedRow {
                doc_id: r.doc_id.clone(),
                sentence_index: r.sentence_index,
                pattern_id: r.pattern_id.clone(),
                relation: r.relation_label.clone(),
                surface: c.surface.clone(),
                start: c.span.0,
                end: c.span.1,
                reason: c
                    .rejection_reason
                    .map(|x| x.to_string())
                    .unwrap_or_default(),
            })
        })
        .collect()
}

pub fn write_rejected_csv<W: Write>(records: &[KinshipRecord], out: W) -> Result<(), ReviewError> {
    let rows = rejected_rows(records);
    let mut w = csv::Writer::from_writer(out);
    if rows.is_empty() {
        w.write_record([
            "doc_id",
            "sentence_index",
            "pattern_id",
            "relation",
            "surface",
            "start",
            "end",
            "reason",
        ])?;
    }
    for row in rows {
        w.serialize(row)?;
    }
    w.flush()?;
    Ok(())
}

pub fn emit_rejected_csv(records: &[KinshipRecord], path: &Path) -> Result<(), ReviewError> {
    write_rejected_csv(records, std::fs::File::create(path)?)
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct RunStats {
    pub sentences_total: usize,
    pub sentences_accepted: usize,
    pub records_total: usize,
    pub names_total: usize,
    pub mismatch_count: usize,
    /// Records carrying a declared count.
    pub records_with_count: usize,
    pub per_pattern_yields: BTreeMap<String, usize>,
    pub rejected_candidates_by_reason: BTreeMap<String, usize>,
}

impl RunStats {
    /// Records whose declared headcount matches the harvested names, over
    /// records that declare one. `None` when no record declares a count.
    pub fn agreement(&self) -> Option<(usize, usize)> {
        (self.records_with_count > 0).then(|| {
            (
                self.records_with_count - self.mismatch_count,
                self.records_with_count,
            )
        })
    }

    pub fn agreement_text(&self) -> String {
        match self.agreement() {
            Some((n, d)) => format!("{n}/{d} ({:.3})", n as f64 / d as f64),
            None => "n/a".to_string(),
        }
    }

    /// `key=value` lines, one statistic each.
    pub fn to_key_value(&self) -> String {
        let mut out = String::new();
        let mut kv = |k: &str, v: String| out.push_str(&format!("{k}={v}\n"));
        kv("sentences_total", self.sentences_total.to_string());
        kv("sentences_accepted", self.sentences_accepted.to_string());
        kv("records_total", self.records_total.to_string());
        kv("names_total", self.names_total.to_string());
        kv("mismatch_count", self.mismatch_count.to_string());
        kv("records_with_count", self.records_with_count.to_string());
        kv(
            "agreement",
            match self.agreement() {
                Some((n, d)) => format!("{n}/{d}"),
                None => "n/a".into(),
            },
        );
        for (id, n) in &self.per_pattern_yields {
            kv(&format!("yield.{id}"), n.to_string());
        }
        for (reason, n) in &self.rejected_candidates_by_reason {
            kv(&format!("rejected.{reason}"), n.to_string());
        }
        out
    }
}

impl AddAssign<&RunStats> for RunStats {
    fn add_assign(&mut self, rhs: &RunStats) {
        self.sentences_total += rhs.sentences_total;
        self.sentences_accepted += rhs.sentences_accepted;
        self.records_total += rhs.records_total;
        self.names_total += rhs.names_total;
        self.mismatch_count += rhs.mismatch_count;
        self.records_with_count += rhs.records_with_count;
        for (k, v) in &rhs.per_pattern_yields {
            *self.per_pattern_yields.entry(k.clone()).or_default() += v;
        }
        for (k, v) in &rhs.rejected_candidates_by_reason {
            *self
                .rejected_candidates_by_reason
                .entry(k.clone())
                .or_default() += v;
        }
    }
}

impl fmt::Display for RunStats {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<(String, String)> = [
            ("sentences total", self.sentences_total.to_string()),
            ("sentences accepted", self.sentences_accepted.to_string()),
            ("records", self.records_total.to_string()),
            ("names", self.names_total.to_string()),
            ("count mismatches", self.mismatch_count.to_string()),
            ("count agreement", self.agreement_text()),
        ]
        .into_iter()
        .map(|(k, v)| (k.to_string(), v))
        .chain(
            self.per_pattern_yields
                .iter()
                .map(|(k, v)| (format!("yield {k}"), v.to_string())),
        )
        .chain(
            self.rejected_candidates_by_reason
                .iter()
                .map(|(k, v)| (format!("rejected {k}"), v.to_string())),
        )
        .collect();
        let width = rows
            .iter()
            .map(|(k, _)| k.chars().count())
            .max()
            .unwrap_or(0);
        for (k, v) in rows {
            writeln!(f, "{k:<width$}  {v}")?;
        }
        Ok(())
    }
}

pub fn compute_stats(decisions: &[FilterDecision], records: &[KinshipRecord]) -> RunStats {
    let mut s = RunStats {
        sentences_total: decisions.len(),
        sentences_accepted: decisions.iter().filter(|d| d.accepted).count(),
        records_total: records.len(),
        ..RunStats::default()
    };
    for r in records {
        s.names_total += r.names.len();
        s.mismatch_count += usize::from(r.count_mismatch);
        s.records_with_count += usize::from(r.declared_count.is_some());
        *s.per_pattern_yields
            .entry(r.pattern_id.clone())
            .or_default() += 1;
        for c in &r.rejected {
            if let Some(reason) = c.rejection_reason {
                *s.rejected_candidates_by_reason
                    .entry(reason.to_string())
                    .or_default() += 1;
            }
        }
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::extractor::NameCandidate;

    fn record(doc: &str, idx: usize, declared: Option<u32>, names: &[&str]) -> KinshipRecord {
        KinshipRecord {
            doc_id: doc.into(),
            sentence_index: idx,
            relation_label: "孫男".into(),
            kinship_code: None,
            declared_count: declared,
            names: names
                .iter()
                .map(|n| NameCandidate {
                    surface: n.to_string(),
                    span: (0, 2),
                    accepted: true,
                    rejection_reason: None,
                })
                .collect(),
            rejected: vec![],
            pattern_id: "p".into(),
            count_mismatch: declared.is_some_and(|d| d as usize != names.len()),
            unknown_relation: true,
            count_unparsed: false,
            compressed_form: "孫男二人/wm/甲/wsep/乙".into(),
            original: "孫男二人：甲,乙".into(),
        }
    }

    #[test]
    fn empty_review_is_header_only() {
        let mut buf = Vec::new();
        write_review_csv(&[], &mut buf).unwrap();
        assert_eq!(
            String::from_utf8(buf).unwrap(),
            "doc_id,sentence_index,relation,kinship_code,generation,declared_count,names,count_mismatch,pattern_id,compressed_form,original\n"
        );
    }

    #[test]
    fn rows_sorted_and_quoted() {
        let recs = vec![
            record("b", 0, Some(2), &["甲", "乙"]),
            record("a", 3, None, &[]),
        ];
        let mut buf = Vec::new();
        write_review_csv(&recs, &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let lines: Vec<_> = text.lines().collect();
        assert!(lines[1].starts_with("a,3,"));
        assert!(lines[2].contains(",2,甲|乙,false,"));
        assert!(lines[2].ends_with("\"孫男二人：甲,乙\""), "{}", lines[2]);
        let rows = read_review_csv(text.as_bytes()).unwrap();
        assert_eq!(rows[1], ReviewRow::from(&recs[0]));
    }

    #[test]
    fn stats_cases() {
        let zero = compute_stats(&[], &[]);
        assert_eq!(zero, RunStats::default());
        assert_eq!(zero.agreement_text(), "n/a");

        let one = compute_stats(&[], &[record("a", 0, Some(3), &["甲"])]);
        assert_eq!(one.agreement(), Some((0, 1)));
        assert_eq!(
            one.records_total,
            one.per_pattern_yields.values().sum::<usize>()
        );
        assert!(one.to_key_value().contains("agreement=0/1\n"));
        assert!(one.to_string().contains("count agreement"));
    }
}
