//! Documents, sentence splitting and punctuation roles.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PunctClass {
    SentenceEnd,
    HeadMark,
    Separator,
    Other,
}

/// Which characters end sentences, head a clause, or separate items.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PunctConfig {
    pub terminators: BTreeSet<char>,
    pub separators: BTreeSet<char>,
    pub head_marks: BTreeSet<char>,
}

impl Default for PunctConfig {
    fn default() -> Self {
        PunctConfig {
            terminators: "。！？".chars().collect(),
            separators: "，、；".chars().collect(),
            head_marks: "：".chars().collect(),
        }
    }
}

impl PunctConfig {
    pub fn classify(&self, ch: char) -> PunctClass {
        if self.terminators.contains(&ch) {
            PunctClass::SentenceEnd
        } else if self.head_marks.contains(&ch) {
            PunctClass::HeadMark
        } else if self.separators.contains(&ch) {
            PunctClass::Separator
        } else {
            PunctClass::Other
        }
    }
}

/// Classification under the default punctuation sets.
pub fn classify_punct(ch: char) -> PunctClass {
    match ch {
        '。' | '！' | '？' => PunctClass::SentenceEnd,
        '：' => PunctClass::HeadMark,
        '，' | '、' | '；' => PunctClass::Separator,
        _ => PunctClass::Other,
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Document {
    pub id: String,
    pub source_ref: String,
    pub text: String,
}

impl Document {
    /// Whitespace in the source is typesetting residue and is removed.
    pub fn new(id: impl Into<String>, source_ref: impl Into<String>, text: &str) -> Self {
        Document {
            id: id.into(),
            source_ref: source_ref.into(),
            text: text.chars().filter(|c| !c.is_whitespace()).collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct SentenceRef {
    pub doc_id: String,
    pub index: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Sentence {
    pub doc_id: String,
    pub index: usize,
    pub raw_text: String,
    /// Char offsets into the document text, terminator excluded.
    pub span: (usize, usize),
}

impl Sentence {
    /// A free-standing sentence, as if it were the whole of a document.
    pub fn standalone(doc_id: impl Into<String>, index: usize, text: &str) -> Self {
        Sentence {
            doc_id: doc_id.into(),
            index,
            raw_text: text.to_string(),
            span: (0, text.chars().count()),
        }
    }

    pub fn sentence_ref(&self) -> SentenceRef {
        SentenceRef {
            doc_id: self.doc_id.clone(),
            index: self.index,
        }
    }
}

pub fn split_sentences(doc: &Document) -> Vec<Sentence> {
    split_sentences_with(doc, &PunctConfig::default())
}

/// Splits at terminators. Empty stretches between consecutive terminators
/// yield no sentence; indices count only emitted sentences.
pub fn split_sentences_with(doc: &Document, punct: &PunctConfig) -> Vec<Sentence> {
    let mut out = Vec::new();
    let mut buf = String::new();
    let mut start = 0usize;
    let mut pos = 0usize;
    let flush = |buf: &mut String, start: usize, end: usize, out: &mut Vec<Sentence>| {
        if !buf.is_empty() {
            out.push(Sentence {
                doc_id: doc.id.clone(),
                index: out.len(),
                raw_text: std::mem::take(buf),
                span: (start, end),
            });
        }
    };
    for ch in doc.text.chars() {
        if punct.classify(ch) == PunctClass::SentenceEnd {
            flush(&mut buf, start, pos, &mut out);
            start = pos + 1;
        } else {
            buf.push(ch);
        }
        pos += 1;
    }
    flush(&mut buf, start, pos, &mut out);
    out
}
