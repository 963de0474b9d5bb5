//! Sentence compression: gazetteer substitution and punctuation markers.
//!
//! The scan runs left to right. At each position place names are tried first,
//! then offices, then appointment verbs, each longest-first. Appointment verbs
//! only count when a place, office, or another qualifying verb follows them
//! directly; elsewhere they stay plain text. Head marks and separators become
//! marker tokens, terminators are dropped, and whatever is left coalesces into
//! maximal text runs.
//!
//! Every token keeps its original surface and char span, so the sentence can
//! always be rebuilt from its tokens.

use std::fmt;

use thiserror::Error;

use crate::lexicon::Dictionary;
use crate::segmenter::{PunctClass, PunctConfig, Sentence, SentenceRef};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum TokenKind {
    Text,
    HeadMark,
    Sep,
    Place,
    Office,
    ApptVerb,
}

impl TokenKind {
    /// Marker name in the serialized notation; `None` for text.
    pub fn marker(self) -> Option<&'static str> {
        match self {
            TokenKind::Text => None,
            TokenKind::HeadMark => Some("wm"),
            TokenKind::Sep => Some("wsep"),
            TokenKind::Place => Some("ns"),
            TokenKind::Office => Some("no_noc"),
            TokenKind::ApptVerb => Some("vno"),
        }
    }

    pub fn is_placeholder(self) -> bool {
        matches!(
            self,
            TokenKind::Place | TokenKind::Office | TokenKind::ApptVerb
        )
    }

    fn code(self) -> char {
        match self {
            TokenKind::Text => 'T',
            TokenKind::HeadMark => 'H',
            TokenKind::Sep => 'S',
            TokenKind::Place => 'P',
            TokenKind::Office => 'O',
            TokenKind::ApptVerb => 'A',
        }
    }

    fn from_code(c: char) -> Option<Self> {
        Some(match c {
            'T' => TokenKind::Text,
            'H' => TokenKind::HeadMark,
            'S' => TokenKind::Sep,
            'P' => TokenKind::Place,
            'O' => TokenKind::Office,
            'A' => TokenKind::ApptVerb,
            _ => return None,
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Token {
    pub kind: TokenKind,
    pub surface: String,
    /// Char offsets into the sentence.
    pub span: (usize, usize),
}

/// Whether interference words have been deleted yet.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Stage {
    Compressed,
    Cleaned,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CompressedSentence {
    pub sentence_ref: SentenceRef,
    pub tokens: Vec<Token>,
    pub original: String,
    pub stage: Stage,
}

impl CompressedSentence {
    /// Concatenated token surfaces.
    pub fn reconstruct(&self) -> String {
        self.tokens.iter().map(|t| t.surface.as_str()).collect()
    }

    pub fn text_tokens(&self) -> impl Iterator<Item = &Token> {
        self.tokens.iter().filter(|t| t.kind == TokenKind::Text)
    }
}

/// Compression over a fixed set of dictionaries.
#[derive(Debug, Clone, Copy)]
pub struct Compressor<'a> {
    pub place: &'a Dictionary,
    pub office: &'a Dictionary,
    pub appt_verb: &'a Dictionary,
    pub punct: &'a PunctConfig,
}

impl<'a> Compressor<'a> {
    pub fn new(
        place: &'a Dictionary,
        office: &'a Dictionary,
        appt_verb: &'a Dictionary,
        punct: &'a PunctConfig,
    ) -> Self {
        Compressor {
            place,
            office,
            appt_verb,
            punct,
        }
    }

    /// The placeholder each position would claim, computed right to left so
    /// appointment verbs can see what follows them.
    pub fn placeholder_claims(&self, chars: &[char]) -> Vec<Option<(TokenKind, usize)>> {
        let mut claims: Vec<Option<(TokenKind, usize)>> = vec![None; chars.len() + 1];
        for pos in (0..chars.len()).rev() {
            claims[pos] = if let Some((_, len)) = self.place.longest_match_at(chars, pos) {
                Some((TokenKind::Place, len))
            } else if let Some((_, len)) = self.office.longest_match_at(chars, pos) {
                Some((TokenKind::Office, len))
            } else {
                self.appt_verb
                    .matches_at(chars, pos)
                    .into_iter()
                    .rev()
                    .map(|(_, len)| len)
                    .find(|&len| claims[pos + len].is_some())
                    .map(|len| (TokenKind::ApptVerb, len))
            };
        }
        claims.truncate(chars.len());
        claims
    }

    pub fn compress(&self, sentence: &Sentence) -> CompressedSentence {
        let chars: Vec<char> = sentence.raw_text.chars().collect();
        let claims = self.placeholder_claims(&chars);
        let mut tokens: Vec<Token> = Vec::new();
        let mut text_start: Option<usize> = None;
        let mut pos = 0;

        let flush_text = |tokens: &mut Vec<Token>, start: &mut Option<usize>, end: usize| {
            if let Some(s) = start.take() {
                tokens.push(Token {
                    kind: TokenKind::Text,
                    surface: chars[s..end].iter().collect(),
                    span: (s, end),
                });
            }
        };

        while pos < chars.len() {
            let marker = match self.punct.classify(chars[pos]) {
                PunctClass::HeadMark => Some((TokenKind::HeadMark, 1)),
                PunctClass::Separator => Some((TokenKind::Sep, 1)),
                PunctClass::SentenceEnd => {
                    flush_text(&mut tokens, &mut text_start, pos);
                    pos += 1;
                    continue;
                }
                PunctClass::Other => claims[pos],
            };
            match marker {
                Some((kind, len)) => {
                    flush_text(&mut tokens, &mut text_start, pos);
                    tokens.push(Token {
                        kind,
                        surface: chars[pos..pos + len].iter().collect(),
                        span: (pos, pos + len),
                    });
                    pos += len;
                }
                None => {
                    text_start.get_or_insert(pos);
                    pos += 1;
                }
            }
        }
        flush_text(&mut tokens, &mut text_start, chars.len());

        CompressedSentence {
            sentence_ref: sentence.sentence_ref(),
            tokens,
            original: sentence.raw_text.clone(),
            stage: Stage::Compressed,
        }
    }
}

/// Compresses with the default punctuation sets.
pub fn compress(
    sentence: &Sentence,
    place: &Dictionary,
    office: &Dictionary,
    appt_verb: &Dictionary,
) -> CompressedSentence {
    let punct = PunctConfig::default();
    Compressor::new(place, office, appt_verb, &punct).compress(sentence)
}

/// Serialized form plus a map from serialized bytes back to sentence offsets.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SerializedView {
    pub text: String,
    units: Vec<Unit>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
struct Unit {
    bytes: (usize, usize),
    kind: TokenKind,
    span: (usize, usize),
}

impl SerializedView {
    fn unit_containing(&self, byte: usize) -> Option<&Unit> {
        let i = self.units.partition_point(|u| u.bytes.1 <= byte);
        self.units.get(i).filter(|u| u.bytes.0 <= byte)
    }

    /// Sentence offset of the character starting at serialized byte `byte`.
    pub fn origin_start(&self, byte: usize, sentence_len: usize) -> usize {
        match self.unit_containing(byte) {
            Some(u) if u.kind == TokenKind::Text => {
                u.span.0 + self.text[u.bytes.0..byte].chars().count()
            }
            Some(u) => u.span.0,
            None => sentence_len,
        }
    }

    /// Sentence offset just past the character ending at serialized byte `byte`.
    pub fn origin_end(&self, byte: usize) -> usize {
        if byte == 0 {
            return 0;
        }
        let prev = self.text[..byte]
            .char_indices()
            .next_back()
            .map(|(i, _)| i)
            .unwrap_or(0);
        match self.unit_containing(prev) {
            Some(u) if u.kind == TokenKind::Text => {
                u.span.0 + self.text[u.bytes.0..byte].chars().count()
            }
            Some(u) => u.span.1,
            None => 0,
        }
    }
}

/// Renders tokens in the slash notation.
///
/// Freshly compressed sentences share one `/` between adjacent markers
/// (`/wsep/no_noc/`). Cleaned sentences print every marker with both
/// delimiters (`/wsep//no_noc/`), since deleted text may have sat between them.
pub fn serialize(cs: &CompressedSentence) -> String {
    serialize_view(cs).text
}

pub fn serialize_view(cs: &CompressedSentence) -> SerializedView {
    let mut text = String::new();
    let mut units = Vec::with_capacity(cs.tokens.len());
    for t in &cs.tokens {
        let start = text.len();
        match t.kind.marker() {
            None => text.push_str(&t.surface),
            Some(name) => {
                if !(cs.stage == Stage::Compressed && text.ends_with('/')) {
                    text.push('/');
                }
                text.push_str(name);
                text.push('/');
            }
        }
        units.push(Unit {
            bytes: (start, text.len()),
            kind: t.kind,
            span: t.span,
        });
    }
    SerializedView { text, units }
}

#[derive(Debug, Error)]
pub enum TokenCodecError {
    #[error("bad token `{0}`")]
    BadToken(String),
    #[error("token span {0:?} outside sentence")]
    OutOfRange((usize, usize)),
}

/// Compact token listing, e.g. `T:0:4 H:4:5 O:9:15`.
pub fn encode_tokens(cs: &CompressedSentence) -> String {
    cs.tokens
        .iter()
        .map(|t| format!("{}:{}:{}", t.kind.code(), t.span.0, t.span.1))
        .collect::<Vec<_>>()
        .join(" ")
}

/// Rebuilds a token stream from [`encode_tokens`] output and the original text.
pub fn decode_tokens(original: &str, encoded: &str) -> Result<Vec<Token>, TokenCodecError> {
    let chars: Vec<char> = original.chars().collect();
    encoded
        .split_whitespace()
        .map(|item| {
            let bad = || TokenCodecError::BadToken(item.to_string());
            let mut parts = item.split(':');
            let kind = parts
                .next()
                .and_then(|k| {
                    let mut cs = k.chars();
                    match (cs.next(), cs.next()) {
                        (Some(c), None) => TokenKind::from_code(c),
                        _ => None,
                    }
                })
                .ok_or_else(bad)?;
            let start: usize = parts.next().and_then(|s| s.parse().ok()).ok_or_else(bad)?;
            let end: usize = parts.next().and_then(|s| s.parse().ok()).ok_or_else(bad)?;
            if parts.next().is_some() {
                return Err(bad());
            }
            if start >= end || end > chars.len() {
                return Err(TokenCodecError::OutOfRange((start, end)));
            }
            Ok(Token {
                kind,
                surface: chars[start..end].iter().collect(),
                span: (start, end),
            })
        })
        .collect()
}

impl fmt::Display for CompressedSentence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&serialize(self))
    }
}
