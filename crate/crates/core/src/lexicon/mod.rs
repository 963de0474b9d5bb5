//! Typed gazetteers: loading, validation and longest-match lookup.
//!
//! Six dictionary kinds drive the pipeline. Kinship titles carry a generation
//! and code; every other kind carries an optional category label. Files are
//! UTF-8, one record per line, comma- or tab-separated, `#` comments.
//!
//! Loading never silently drops a bad row: rejected rows go into the
//! dictionary's [`ValidationReport`]. With [`LoadOptions::strict`] the first
//! report entry becomes an error instead.

mod trie;

use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use thiserror::Error;

use crate::segmenter::{classify_punct, PunctClass};
use trie::Trie;

/// Marker delimiter used by the compressed notation.
pub const MARKER_DELIMITER: char = '/';

#[derive(Debug, Error)]
pub enum LexiconError {
    #[error("cannot read {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("{path} is not valid UTF-8")]
    Encoding { path: PathBuf },
    #[error("row {row}: malformed record: {detail}")]
    MalformedRecord { row: usize, detail: String },
    #[error("row {row}: duplicate surface {surface}")]
    DuplicateSurface { row: usize, surface: String },
    #[error("row {row}: {reason}: {surface}")]
    InvalidEntry {
        row: usize,
        reason: ReportReason,
        surface: String,
    },
    #[error("unknown dictionary kind `{0}`")]
    UnknownKind(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum DictKind {
    Kinship,
    Place,
    Office,
    ApptVerb,
    Interference,
    Exclusion,
}

impl DictKind {
    pub const ALL: [DictKind; 6] = [
        DictKind::Kinship,
        DictKind::Place,
        DictKind::Office,
        DictKind::ApptVerb,
        DictKind::Interference,
        DictKind::Exclusion,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            DictKind::Kinship => "kinship",
            DictKind::Place => "place",
            DictKind::Office => "office",
            DictKind::ApptVerb => "appt-verb",
            DictKind::Interference => "interference",
            DictKind::Exclusion => "exclusion",
        }
    }

    fn has_min_length(self) -> bool {
        matches!(self, DictKind::Place | DictKind::Office)
    }
}

impl fmt::Display for DictKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for DictKind {
    type Err = LexiconError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        DictKind::ALL
            .into_iter()
            .find(|k| k.as_str() == s)
            .ok_or_else(|| LexiconError::UnknownKind(s.to_string()))
    }
}

/// Generation and code attached to a kinship title. Codes are opaque strings.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct KinshipCode {
    pub title: String,
    pub generation: String,
    pub code: String,
}

/// `G-<n>` or `G+<n>`.
pub fn is_valid_generation(s: &str) -> bool {
    let Some(rest) = s.strip_prefix('G') else {
        return false;
    };
    let Some(digits) = rest.strip_prefix('-').or_else(|| rest.strip_prefix('+')) else {
        return false;
    };
    !digits.is_empty() && digits.chars().all(|c| c.is_ascii_digit())
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Payload {
    Kinship(KinshipCode),
    Category(Option<String>),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DictEntry {
    pub surface: String,
    pub payload: Payload,
    /// 1-based line number in the source file.
    pub source_row: usize,
}

impl DictEntry {
    pub fn len_chars(&self) -> usize {
        self.surface.chars().count()
    }

    pub fn kinship(&self) -> Option<&KinshipCode> {
        match &self.payload {
            Payload::Kinship(k) => Some(k),
            Payload::Category(_) => None,
        }
    }

    pub fn category(&self) -> Option<&str> {
        match &self.payload {
            Payload::Category(c) => c.as_deref(),
            Payload::Kinship(_) => None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ReportReason {
    EmptySurface,
    ContainsWhitespace,
    ContainsMarker,
    SingleCharacter,
    InvalidGeneration,
    EmptyCode,
    Duplicate,
    Malformed,
    CrossKindDuplicate,
}

impl fmt::Display for ReportReason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ReportReason::EmptySurface => "empty surface",
            ReportReason::ContainsWhitespace => "contains whitespace",
            ReportReason::ContainsMarker => "contains structural marker",
            ReportReason::SingleCharacter => "single-character, not whitelisted",
            ReportReason::InvalidGeneration => "invalid generation",
            ReportReason::EmptyCode => "empty code",
            ReportReason::Duplicate => "duplicate surface, first occurrence kept",
            ReportReason::Malformed => "malformed record",
            ReportReason::CrossKindDuplicate => "also a place name, place wins",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReportEntry {
    pub row: usize,
    pub reason: ReportReason,
    pub surface: String,
}

impl fmt::Display for ReportEntry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ROW {}: {}: {}", self.row, self.reason, self.surface)
    }
}

impl ReportEntry {
    fn into_error(self) -> LexiconError {
        match self.reason {
            ReportReason::Malformed => LexiconError::MalformedRecord {
                row: self.row,
                detail: self.surface,
            },
            ReportReason::Duplicate | ReportReason::CrossKindDuplicate => {
                LexiconError::DuplicateSurface {
                    row: self.row,
                    surface: self.surface,
                }
            }
            reason => LexiconError::InvalidEntry {
                row: self.row,
                reason,
                surface: self.surface,
            },
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ValidationReport {
    pub entries: Vec<ReportEntry>,
}

impl ValidationReport {
    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for e in &self.entries {
            writeln!(f, "{e}")?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone)]
pub struct LoadOptions {
    pub strict: bool,
    /// Single-character place/office names that are still accepted.
    pub single_char_whitelist: BTreeSet<String>,
}

impl Default for LoadOptions {
    fn default() -> Self {
        LoadOptions {
            strict: false,
            single_char_whitelist: ["倅".to_string()].into_iter().collect(),
        }
    }
}

/// A validated, indexed gazetteer. Immutable once built.
#[derive(Debug, Clone)]
pub struct Dictionary {
    kind: DictKind,
    entries: Vec<DictEntry>,
    by_surface: HashMap<String, usize>,
    trie: Trie,
    report: ValidationReport,
    exclusions_removed: usize,
}

impl Dictionary {
    pub fn empty(kind: DictKind) -> Self {
        Dictionary {
            kind,
            entries: Vec::new(),
            by_surface: HashMap::new(),
            trie: Trie::default(),
            report: ValidationReport::default(),
            exclusions_removed: 0,
        }
    }

    /// Builds a dictionary from already-validated entries. Later duplicates are
    /// reported and dropped.
    pub fn from_entries(kind: DictKind, entries: impl IntoIterator<Item = DictEntry>) -> Self {
        let mut dict = Dictionary::empty(kind);
        for entry in entries {
            dict.push(entry);
        }
        dict
    }

    /// Convenience constructor for tests and embedded defaults.
    pub fn from_surfaces<S: AsRef<str>>(kind: DictKind, surfaces: &[S]) -> Self {
        Dictionary::from_entries(
            kind,
            surfaces.iter().enumerate().map(|(i, s)| DictEntry {
                surface: s.as_ref().to_string(),
                payload: Payload::Category(None),
                source_row: i + 1,
            }),
        )
    }

    fn push(&mut self, entry: DictEntry) {
        if self.by_surface.contains_key(&entry.surface) {
            self.report.entries.push(ReportEntry {
                row: entry.source_row,
                reason: ReportReason::Duplicate,
                surface: entry.surface,
            });
            return;
        }
        let idx = self.entries.len();
        self.trie.insert(&entry.surface, idx as u32);
        self.by_surface.insert(entry.surface.clone(), idx);
        self.entries.push(entry);
    }

    pub fn kind(&self) -> DictKind {
        self.kind
    }

    pub fn entries(&self) -> &[DictEntry] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn report(&self) -> &ValidationReport {
        &self.report
    }

    pub fn exclusions_removed(&self) -> usize {
        self.exclusions_removed
    }

    pub fn get(&self, surface: &str) -> Option<&DictEntry> {
        self.by_surface.get(surface).map(|&i| &self.entries[i])
    }

    pub fn contains(&self, surface: &str) -> bool {
        self.by_surface.contains_key(surface)
    }

    pub fn surfaces(&self) -> impl Iterator<Item = &str> {
        self.entries.iter().map(|e| e.surface.as_str())
    }

    /// Longest entry whose surface begins at `pos` (a char index), with its
    /// length in chars.
    pub fn longest_match_at(&self, text: &[char], pos: usize) -> Option<(&DictEntry, usize)> {
        if pos >= text.len() {
            return None;
        }
        self.trie
            .longest_at(text, pos)
            .map(|(i, len)| (&self.entries[i as usize], len))
    }

    /// All entries beginning at `pos`, shortest first.
    pub fn matches_at(&self, text: &[char], pos: usize) -> Vec<(&DictEntry, usize)> {
        if pos >= text.len() {
            return Vec::new();
        }
        self.trie
            .matches_at(text, pos)
            .into_iter()
            .map(|(i, len)| (&self.entries[i as usize], len))
            .collect()
    }

    /// Reinterprets this dictionary's surfaces as an exclusion list.
    pub fn as_exclusions(&self) -> Dictionary {
        Dictionary::from_surfaces(DictKind::Exclusion, &self.surfaces().collect::<Vec<_>>())
    }

    /// Renders the dictionary in its file layout. Loading the result yields
    /// the same entries.
    pub fn to_file_string(&self) -> String {
        let mut out = String::new();
        for e in &self.entries {
            match (&e.payload, self.kind) {
                (Payload::Kinship(k), _) => {
                    out.push_str(&format!("{},{},{}\n", e.surface, k.generation, k.code))
                }
                (Payload::Category(Some(c)), DictKind::Interference) => {
                    out.push_str(&format!("{c}\t{}\n", e.surface))
                }
                (Payload::Category(Some(c)), _) => out.push_str(&format!("{},{c}\n", e.surface)),
                (Payload::Category(None), _) => {
                    out.push_str(&e.surface);
                    out.push('\n');
                }
            }
        }
        out
    }

    /// True when both dictionaries hold the same surfaces with the same payloads,
    /// in the same order. Source rows are ignored.
    pub fn same_entries(&self, other: &Dictionary) -> bool {
        self.kind == other.kind
            && self.entries.len() == other.entries.len()
            && self
                .entries
                .iter()
                .zip(&other.entries)
                .all(|(a, b)| a.surface == b.surface && a.payload == b.payload)
    }
}

fn has_marker_char(s: &str) -> bool {
    s.chars()
        .any(|c| c == MARKER_DELIMITER || classify_punct(c) != PunctClass::Other)
}

fn split_record(line: &str) -> Vec<&str> {
    let sep = if line.contains('\t') { '\t' } else { ',' };
    line.split(sep).map(str::trim).collect()
}

/// Parses dictionary text. Bad rows land in the report (or fail, when strict).
pub fn parse_dictionary(
    text: &str,
    kind: DictKind,
    options: &LoadOptions,
) -> Result<Dictionary, LexiconError> {
    let text = text.strip_prefix('\u{feff}').unwrap_or(text);
    let mut dict = Dictionary::empty(kind);
    let mut rejected = Vec::new();

    for (i, line) in text.lines().enumerate() {
        let row = i + 1;
        let trimmed = line.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let fields = split_record(trimmed);
        let parsed = match kind {
            DictKind::Kinship => match fields.as_slice() {
                [surface, generation, code] => Ok((
                    *surface,
                    Payload::Kinship(KinshipCode {
                        title: surface.to_string(),
                        generation: generation.to_string(),
                        code: code.to_string(),
                    }),
                )),
                _ => Err(format!("expected surface,generation,code in `{trimmed}`")),
            },
            DictKind::Interference => match fields.as_slice() {
                [surface] => Ok((*surface, Payload::Category(None))),
                [category, surface] => {
                    Ok((*surface, Payload::Category(Some(category.to_string()))))
                }
                _ => Err(format!("expected category<TAB>surface in `{trimmed}`")),
            },
            _ => match fields.as_slice() {
                [surface] | [surface, ""] => Ok((*surface, Payload::Category(None))),
                [surface, category] => {
                    Ok((*surface, Payload::Category(Some(category.to_string()))))
                }
                _ => Err(format!("expected surface[,category] in `{trimmed}`")),
            },
        };

        let (surface, payload) = match parsed {
            Ok(p) => p,
            Err(detail) => {
                rejected.push(ReportEntry {
                    row,
                    reason: ReportReason::Malformed,
                    surface: detail,
                });
                continue;
            }
        };

        if let Some(reason) = validate(surface, &payload, kind, options) {
            rejected.push(ReportEntry {
                row,
                reason,
                surface: surface.to_string(),
            });
            continue;
        }

        dict.push(DictEntry {
            surface: surface.to_string(),
            payload,
            source_row: row,
        });
    }

    // Validation failures and duplicates, in file order.
    rejected.append(&mut dict.report.entries);
    rejected.sort_by_key(|e| e.row);
    if options.strict {
        if let Some(first) = rejected.into_iter().next() {
            return Err(first.into_error());
        }
        return Ok(dict);
    }
    dict.report.entries = rejected;
    Ok(dict)
}

fn validate(
    surface: &str,
    payload: &Payload,
    kind: DictKind,
    options: &LoadOptions,
) -> Option<ReportReason> {
    if surface.is_empty() {
        return Some(ReportReason::EmptySurface);
    }
    if surface.chars().any(char::is_whitespace) {
        return Some(ReportReason::ContainsWhitespace);
    }
    if has_marker_char(surface) {
        return Some(ReportReason::ContainsMarker);
    }
    if kind.has_min_length()
        && surface.chars().count() < 2
        && !options.single_char_whitelist.contains(surface)
    {
        return Some(ReportReason::SingleCharacter);
    }
    if let Payload::Kinship(k) = payload {
        if !is_valid_generation(&k.generation) {
            return Some(ReportReason::InvalidGeneration);
        }
        if k.code.is_empty() {
            return Some(ReportReason::EmptyCode);
        }
    }
    None
}

pub fn load_dictionary(path: &Path, kind: DictKind) -> Result<Dictionary, LexiconError> {
    load_dictionary_with(path, kind, &LoadOptions::default())
}

pub fn load_dictionary_with(
    path: &Path,
    kind: DictKind,
    options: &LoadOptions,
) -> Result<Dictionary, LexiconError> {
    let bytes = std::fs::read(path).map_err(|source| LexiconError::Io {
        path: path.to_path_buf(),
        source,
    })?;
    let text = String::from_utf8(bytes).map_err(|_| LexiconError::Encoding {
        path: path.to_path_buf(),
    })?;
    parse_dictionary(&text, kind, options)
}

/// Removes every surface listed in `exclusions`. Idempotent; the removal count
/// accumulates on the returned dictionary.
pub fn apply_exclusions(dict: &Dictionary, exclusions: &Dictionary) -> Dictionary {
    debug_assert_eq!(exclusions.kind(), DictKind::Exclusion);
    let mut out = Dictionary::empty(dict.kind);
    out.report = dict.report.clone();
    out.exclusions_removed = dict.exclusions_removed;
    for e in &dict.entries {
        if exclusions.contains(&e.surface) {
            out.exclusions_removed += 1;
        } else {
            out.push(e.clone());
        }
    }
    out
}

/// Free-function form of [`Dictionary::longest_match_at`].
pub fn longest_match_at<'d>(
    text: &[char],
    pos: usize,
    dict: &'d Dictionary,
) -> Option<(&'d DictEntry, usize)> {
    dict.longest_match_at(text, pos)
}

/// The six dictionaries of one run, with cross-dictionary cleanup applied.
#[derive(Debug, Clone)]
pub struct Lexicon {
    pub kinship: Dictionary,
    pub place: Dictionary,
    pub office: Dictionary,
    pub appt_verb: Dictionary,
    pub interference: Dictionary,
    pub exclusion: Dictionary,
}

impl Lexicon {
    /// Applies the exclusion list to the place and office dictionaries and
    /// strips any place/office surface that is also a kinship title.
    pub fn new(
        kinship: Dictionary,
        place: Dictionary,
        office: Dictionary,
        appt_verb: Dictionary,
        interference: Dictionary,
        exclusion: Dictionary,
    ) -> Self {
        let kin_excl = kinship.as_exclusions();
        let place = apply_exclusions(&apply_exclusions(&place, &exclusion), &kin_excl);
        let office = apply_exclusions(&apply_exclusions(&office, &exclusion), &kin_excl);
        Lexicon {
            kinship,
            place,
            office,
            appt_verb,
            interference,
            exclusion,
        }
    }

    pub fn get(&self, kind: DictKind) -> &Dictionary {
        match kind {
            DictKind::Kinship => &self.kinship,
            DictKind::Place => &self.place,
            DictKind::Office => &self.office,
            DictKind::ApptVerb => &self.appt_verb,
            DictKind::Interference => &self.interference,
            DictKind::Exclusion => &self.exclusion,
        }
    }

    /// Office surfaces that also appear as place names. Allowed, since place
    /// wins at match time, but worth a look during curation.
    pub fn cross_kind_report(&self) -> ValidationReport {
        let entries = self
            .office
            .entries()
            .iter()
            .filter(|e| self.place.contains(&e.surface))
            .map(|e| ReportEntry {
                row: e.source_row,
                reason: ReportReason::CrossKindDuplicate,
                surface: e.surface.clone(),
            })
            .collect();
        ValidationReport { entries }
    }
}
