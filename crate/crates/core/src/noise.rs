//! Interference-word deletion.
//!
//! Cataloged non-name words (ordinals, exam terms, plurality hints, life
//! events, ...) are cut out of text tokens, longest first, left to right.
//! What survives are the name candidates. Text that directly precedes a head
//! mark is the clause head (`孫男二十人`) and is left alone.

use std::collections::BTreeMap;
use std::path::Path;

use crate::compressor::{CompressedSentence, Stage, Token, TokenKind};
use crate::lexicon::{
    load_dictionary_with, parse_dictionary, DictEntry, DictKind, Dictionary, LexiconError,
    LoadOptions, Payload,
};

/// Category for entries loaded without one.
pub const UNCATEGORIZED: &str = "未分類";

/// Category holding ordinal prefixes.
pub const ORDINAL_CATEGORY: &str = "次序";

/// Never deletable on their own; they occur inside given names.
pub const PROTECTED_SINGLES: [&str; 4] = ["伯", "仲", "叔", "季"];

#[derive(Debug, Clone)]
pub struct InterferenceCatalog {
    categories: BTreeMap<String, Vec<String>>,
    index: Dictionary,
}

impl InterferenceCatalog {
    /// Builds a catalog from an interference dictionary. Entries equal to one
    /// of [`PROTECTED_SINGLES`] are skipped.
    pub fn from_dictionary(dict: &Dictionary) -> Self {
        let mut categories: BTreeMap<String, Vec<String>> = BTreeMap::new();
        let mut kept = Vec::new();
        for e in dict.entries() {
            if PROTECTED_SINGLES.contains(&e.surface.as_str()) {
                continue;
            }
            let cat = e.category().unwrap_or(UNCATEGORIZED).to_string();
            categories.entry(cat).or_default().push(e.surface.clone());
            kept.push(e.clone());
        }
        InterferenceCatalog {
            categories,
            index: Dictionary::from_entries(DictKind::Interference, kept),
        }
    }

    pub fn from_pairs(pairs: &[(&str, &str)]) -> Self {
        let entries = pairs
            .iter()
            .enumerate()
            .map(|(i, (cat, surface))| DictEntry {
                surface: surface.to_string(),
                payload: Payload::Category(Some(cat.to_string())),
                source_row: i + 1,
            });
        Self::from_dictionary(&Dictionary::from_entries(DictKind::Interference, entries))
    }

    pub fn parse(text: &str, options: &LoadOptions) -> Result<Self, LexiconError> {
        Ok(Self::from_dictionary(&parse_dictionary(
            text,
            DictKind::Interference,
            options,
        )?))
    }

    pub fn load(path: &Path, options: &LoadOptions) -> Result<Self, LexiconError> {
        Ok(Self::from_dictionary(&load_dictionary_with(
            path,
            DictKind::Interference,
            options,
        )?))
    }

    pub fn categories(&self) -> &BTreeMap<String, Vec<String>> {
        &self.categories
    }

    pub fn contains(&self, surface: &str) -> bool {
        self.index.contains(surface)
    }

    pub fn len(&self) -> usize {
        self.index.len()
    }

    pub fn is_empty(&self) -> bool {
        self.index.is_empty()
    }

    pub fn ordinal_prefixes(&self) -> OrdinalPrefixSet {
        OrdinalPrefixSet::new(
            self.categories
                .get(ORDINAL_CATEGORY)
                .into_iter()
                .flatten()
                .cloned(),
        )
    }

    fn longest_at(&self, chars: &[char], pos: usize) -> Option<usize> {
        self.index.longest_match_at(chars, pos).map(|(_, len)| len)
    }
}

/// Ordinal prefixes, kept sorted longest first.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct OrdinalPrefixSet {
    prefixes: Vec<String>,
}

impl OrdinalPrefixSet {
    pub fn new(prefixes: impl IntoIterator<Item = String>) -> Self {
        let mut prefixes: Vec<String> = prefixes.into_iter().collect();
        prefixes.sort_by(|a, b| b.chars().count().cmp(&a.chars().count()).then(a.cmp(b)));
        prefixes.dedup();
        OrdinalPrefixSet { prefixes }
    }

    pub fn prefixes(&self) -> &[String] {
        &self.prefixes
    }
}

/// Removes at most one prefix, the longest that matches.
pub fn strip_ordinal_prefix<'t>(text: &'t str, prefixes: &OrdinalPrefixSet) -> &'t str {
    prefixes
        .prefixes
        .iter()
        .find_map(|p| text.strip_prefix(p.as_str()))
        .unwrap_or(text)
}

fn is_clause_head(tokens: &[Token], i: usize) -> bool {
    tokens[i].kind == TokenKind::Text
        && tokens.get(i + 1).map(|t| t.kind) == Some(TokenKind::HeadMark)
}

/// Cuts catalog words out of every non-head text token. Surviving runs keep
/// their original spans; a token emptied entirely disappears.
pub fn delete_interference(
    cs: &CompressedSentence,
    cat: &InterferenceCatalog,
) -> CompressedSentence {
    let mut tokens = Vec::with_capacity(cs.tokens.len());
    for (i, tok) in cs.tokens.iter().enumerate() {
        if tok.kind != TokenKind::Text || is_clause_head(&cs.tokens, i) {
            tokens.push(tok.clone());
            continue;
        }
        let chars: Vec<char> = tok.surface.chars().collect();
        let mut run_start: Option<usize> = None;
        let mut pos = 0;
        let flush = |tokens: &mut Vec<Token>, from: &mut Option<usize>, to: usize| {
            if let Some(s) = from.take() {
                tokens.push(Token {
                    kind: TokenKind::Text,
                    surface: chars[s..to].iter().collect(),
                    span: (tok.span.0 + s, tok.span.0 + to),
                });
            }
        };
        while pos < chars.len() {
            match cat.longest_at(&chars, pos) {
                Some(len) => {
                    flush(&mut tokens, &mut run_start, pos);
                    pos += len;
                }
                None => {
                    run_start.get_or_insert(pos);
                    pos += 1;
                }
            }
        }
        flush(&mut tokens, &mut run_start, chars.len());
    }
    CompressedSentence {
        sentence_ref: cs.sentence_ref.clone(),
        tokens,
        original: cs.original.clone(),
        stage: Stage::Cleaned,
    }
}
