//! Corpus input and the intermediate files exchanged between stages.
//!
//! Every intermediate is a tab-separated file with a header row:
//!
//! * `decisions.tsv`: `doc_id, index, accepted, keywords, reason` (audit log)
//! * `accepted.tsv`: `doc_id, index, start, end, text` (filter output)
//! * `compressed.tsv`: `doc_id, index, original, tokens, serialized`

use std::collections::HashSet;
use std::io::{Read, Write};
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::compressor::{
    decode_tokens, encode_tokens, serialize, CompressedSentence, Stage, TokenCodecError,
};
use crate::filter::FilterDecision;
use crate::segmenter::{Document, Sentence, SentenceRef};

#[derive(Debug, Error)]
pub enum FormatError {
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("{path} is not valid UTF-8")]
    Encoding { path: PathBuf },
    #[error("csv: {0}")]
    Csv(#[from] csv::Error),
    #[error("corpus line {line}: expected id<TAB>text[<TAB>source]")]
    CorpusLine { line: usize },
    #[error("duplicate document id `{0}`")]
    DuplicateId(String),
    #[error("{doc_id}#{index}: {source}")]
    Tokens {
        doc_id: String,
        index: usize,
        #[source]
        source: TokenCodecError,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CorpusFormat {
    /// One `.txt` file per document; the file stem is the id.
    Dir,
    /// `id<TAB>text[<TAB>source_ref]` per line.
    Tsv,
}

fn read_utf8(path: &Path) -> Result<String, FormatError> {
    let bytes = std::fs::read(path).map_err(|source| FormatError::Io {
        path: path.to_path_buf(),
        source,
    })?;
    String::from_utf8(bytes).map_err(|_| FormatError::Encoding {
        path: path.to_path_buf(),
    })
}

fn check_unique(docs: &[Document]) -> Result<(), FormatError> {
    let mut seen = HashSet::new();
    for d in docs {
        if !seen.insert(d.id.as_str()) {
            return Err(FormatError::DuplicateId(d.id.clone()));
        }
    }
    Ok(())
}

/// Reads a corpus. Documents with no text after whitespace removal are skipped.
pub fn read_corpus(path: &Path, format: CorpusFormat) -> Result<Vec<Document>, FormatError> {
    let docs = match format {
        CorpusFormat::Dir => {
            let io_err = |source| FormatError::Io {
                path: path.to_path_buf(),
                source,
            };
            let mut files: Vec<PathBuf> = std::fs::read_dir(path)
                .map_err(io_err)?
                .map(|e| e.map(|e| e.path()))
                .collect::<Result<_, _>>()
                .map_err(io_err)?;
            files.retain(|p| p.is_file() && p.extension().is_some_and(|e| e == "txt"));
            files.sort();
            let mut docs = Vec::new();
            for f in files {
                let id = f
                    .file_stem()
                    .map(|s| s.to_string_lossy().into_owned())
                    .unwrap_or_default();
                docs.push(Document::new(id, f.display().to_string(), &read_utf8(&f)?));
            }
            docs
        }
        CorpusFormat::Tsv => parse_corpus_tsv(&read_utf8(path)?)?,
    };
    let docs: Vec<Document> = docs.into_iter().filter(|d| !d.text.is_empty()).collect();
    check_unique(&docs)?;
    Ok(docs)
}

pub fn parse_corpus_tsv(text: &str) -> Result<Vec<Document>, FormatError> {
    let mut docs = Vec::new();
    for (i, line) in text.lines().enumerate() {
        if line.trim().is_empty() {
            continue;
        }
        let cols: Vec<&str> = line.split('\t').collect();
        let (id, body, source) = match cols.as_slice() {
            [id, body] => (*id, *body, ""),
            [id, body, source] => (*id, *body, *source),
            _ => return Err(FormatError::CorpusLine { line: i + 1 }),
        };
        if id.trim().is_empty() {
            return Err(FormatError::CorpusLine { line: i + 1 });
        }
        docs.push(Document::new(id.trim(), source.trim(), body));
    }
    Ok(docs)
}

fn tsv_writer<W: Write>(out: W) -> csv::Writer<W> {
    csv::WriterBuilder::new().delimiter(b'\t').from_writer(out)
}

fn tsv_reader<R: Read>(input: R) -> csv::Reader<R> {
    csv::ReaderBuilder::new()
        .delimiter(b'\t')
        .from_reader(input)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DecisionRow {
    pub doc_id: String,
    pub index: usize,
    pub accepted: bool,
    pub keywords: String,
    pub reason: String,
}

impl From<&FilterDecision> for DecisionRow {
    fn from(d: &FilterDecision) -> Self {
        DecisionRow {
            doc_id: d.sentence_ref.doc_id.clone(),
            index: d.sentence_ref.index,
            accepted: d.accepted,
            keywords: d.matched_keywords.join("|"),
            reason: d
                .rejection_reason
                .as_ref()
                .map(|r| r.to_string())
                .unwrap_or_default(),
        }
    }
}

pub fn write_decisions<W: Write>(decisions: &[FilterDecision], out: W) -> Result<(), FormatError> {
    let mut w = tsv_writer(out);
    if decisions.is_empty() {
        w.write_record(["doc_id", "index", "accepted", "keywords", "reason"])?;
    }
    for d in decisions {
        w.serialize(DecisionRow::from(d))?;
    }
    w.flush().map_err(csv::Error::from)?;
    Ok(())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
struct SentenceRow {
    doc_id: String,
    index: usize,
    start: usize,
    end: usize,
    text: String,
}

pub fn write_sentences<W: Write>(sentences: &[Sentence], out: W) -> Result<(), FormatError> {
    let mut w = tsv_writer(out);
    if sentences.is_empty() {
        w.write_record(["doc_id", "index", "start", "end", "text"])?;
    }
    for s in sentences {
        w.serialize(SentenceRow {
            doc_id: s.doc_id.clone(),
            index: s.index,
            start: s.span.0,
            end: s.span.1,
            text: s.raw_text.clone(),
        })?;
    }
    w.flush().map_err(csv::Error::from)?;
    Ok(())
}

pub fn read_sentences<R: Read>(input: R) -> Result<Vec<Sentence>, FormatError> {
    tsv_reader(input)
        .deserialize::<SentenceRow>()
        .map(|row| {
            let row = row?;
            Ok(Sentence {
                doc_id: row.doc_id,
                index: row.index,
                raw_text: row.text,
                span: (row.start, row.end),
            })
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
struct CompressedRow {
    doc_id: String,
    index: usize,
    original: String,
    tokens: String,
    serialized: String,
}

pub fn write_compressed<W: Write>(
    sentences: &[CompressedSentence],
    out: W,
) -> Result<(), FormatError> {
    let mut w = tsv_writer(out);
    if sentences.is_empty() {
        w.write_record(["doc_id", "index", "original", "tokens", "serialized"])?;
    }
    for cs in sentences {
        w.serialize(CompressedRow {
            doc_id: cs.sentence_ref.doc_id.clone(),
            index: cs.sentence_ref.index,
            original: cs.original.clone(),
            tokens: encode_tokens(cs),
            serialized: serialize(cs),
        })?;
    }
    w.flush().map_err(csv::Error::from)?;
    Ok(())
}

/// Reads compressed sentences back. The `serialized` column is informational
/// and ignored; tokens are rebuilt from their spans over `original`.
pub fn read_compressed<R: Read>(input: R) -> Result<Vec<CompressedSentence>, FormatError> {
    tsv_reader(input)
        .deserialize::<CompressedRow>()
        .map(|row| {
            let row = row?;
            let tokens = decode_tokens(&row.original, &row.tokens).map_err(|source| {
                FormatError::Tokens {
                    doc_id: row.doc_id.clone(),
                    index: row.index,
                    source,
                }
            })?;
            Ok(CompressedSentence {
                sentence_ref: SentenceRef {
                    doc_id: row.doc_id,
                    index: row.index,
                },
                tokens,
                original: row.original,
                stage: Stage::Compressed,
            })
        })
        .collect()
}

/// Opens `path` for writing, mapping failures to [`FormatError::Io`].
pub fn create(path: &Path) -> Result<std::fs::File, FormatError> {
    std::fs::File::create(path).map_err(|source| FormatError::Io {
        path: path.to_path_buf(),
        source,
    })
}

/// Opens `path` for reading, mapping failures to [`FormatError::Io`].
pub fn open(path: &Path) -> Result<std::fs::File, FormatError> {
    std::fs::File::open(path).map_err(|source| FormatError::Io {
        path: path.to_path_buf(),
        source,
    })
}
