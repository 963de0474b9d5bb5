//! Pattern registry, name harvesting and kinship records.
//!
//! Patterns do not pick names out themselves. A hit only locates a clause
//! head (`孫男二十人/wm/`) and reads its relation label and headcount; the
//! names are whatever text survives interference deletion between that head
//! and the next hit. Patterns that carry a group named `name` are the
//! exception and yield that capture directly.

pub mod numeral;

use std::fmt;
use std::path::Path;

use regex::{Captures, Regex};
use thiserror::Error;

use crate::compressor::{serialize, serialize_view, CompressedSentence, TokenKind};
use crate::lexicon::{Dictionary, KinshipCode};
use crate::noise::{strip_ordinal_prefix, OrdinalPrefixSet};

pub use numeral::{format_chinese_numeral, parse_chinese_numeral, UnparsableNumeral};

/// Group marking where the clause body starts.
pub const BODY_GROUP: &str = "body";
/// Group yielding a name directly.
pub const NAME_GROUP: &str = "name";

pub const DEFAULT_MAX_NAME_LEN: usize = 2;

#[derive(Debug, Error)]
pub enum RegistryError {
    #[error("cannot read registry: {0}")]
    Io(#[from] std::io::Error),
    #[error("registry row {row}: {detail}")]
    Malformed { row: usize, detail: String },
    #[error("pattern {id}: {source}")]
    PatternCompile {
        id: String,
        #[source]
        source: regex::Error,
    },
    #[error("pattern {id}: capture `{capture}` does not exist")]
    UnknownCapture { id: String, capture: String },
    #[error("registry has no enabled patterns")]
    Empty,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Capture {
    Index(usize),
    Name(String),
}

impl Capture {
    fn parse(s: &str) -> Option<Self> {
        match s.trim() {
            "" | "-" => None,
            t => Some(match t.parse() {
                Ok(i) => Capture::Index(i),
                Err(_) => Capture::Name(t.to_string()),
            }),
        }
    }

    fn resolves_in(&self, re: &Regex) -> bool {
        match self {
            Capture::Index(i) => *i < re.captures_len(),
            Capture::Name(n) => re.capture_names().flatten().any(|c| c == n),
        }
    }

    fn get<'h>(&self, caps: &Captures<'h>) -> Option<regex::Match<'h>> {
        match self {
            Capture::Index(i) => caps.get(*i),
            Capture::Name(n) => caps.name(n),
        }
    }
}

impl fmt::Display for Capture {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Capture::Index(i) => write!(f, "{i}"),
            Capture::Name(n) => f.write_str(n),
        }
    }
}

/// What a pattern is matched against.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PatternTarget {
    /// The compact serialization of the compressed sentence.
    Compressed,
    /// The raw sentence text.
    Raw,
}

#[derive(Debug, Clone)]
pub struct PatternSpec {
    pub id: String,
    pub expression: String,
    pub relation_capture: Capture,
    pub count_capture: Option<Capture>,
    pub enabled: bool,
    pub target: PatternTarget,
    regex: Regex,
}

impl PatternSpec {
    pub fn new(
        id: &str,
        expression: &str,
        relation_capture: Capture,
        count_capture: Option<Capture>,
        target: PatternTarget,
    ) -> Result<Self, RegistryError> {
        let regex = Regex::new(expression).map_err(|source| RegistryError::PatternCompile {
            id: id.to_string(),
            source,
        })?;
        for cap in std::iter::once(&relation_capture).chain(count_capture.as_ref()) {
            if !cap.resolves_in(&regex) {
                return Err(RegistryError::UnknownCapture {
                    id: id.to_string(),
                    capture: cap.to_string(),
                });
            }
        }
        Ok(PatternSpec {
            id: id.to_string(),
            expression: expression.to_string(),
            relation_capture,
            count_capture,
            enabled: true,
            target,
            regex,
        })
    }

    pub fn regex(&self) -> &Regex {
        &self.regex
    }
}

/// Ordered, most specific first. Earlier patterns win overlaps.
#[derive(Debug, Clone)]
pub struct Registry {
    patterns: Vec<PatternSpec>,
}

impl Registry {
    pub fn new(patterns: Vec<PatternSpec>) -> Result<Self, RegistryError> {
        if !patterns.iter().any(|p| p.enabled) {
            return Err(RegistryError::Empty);
        }
        Ok(Registry { patterns })
    }

    pub fn patterns(&self) -> &[PatternSpec] {
        &self.patterns
    }

    pub fn enabled(&self) -> impl Iterator<Item = &PatternSpec> {
        self.patterns.iter().filter(|p| p.enabled)
    }

    fn rank_of(&self, id: &str) -> usize {
        self.patterns
            .iter()
            .position(|p| p.id == id)
            .unwrap_or(usize::MAX)
    }
}

/// Registry TSV: `id, expression, relation-capture, count-capture, enabled[, target]`.
pub fn parse_registry(text: &str) -> Result<Registry, RegistryError> {
    let mut patterns = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let row = i + 1;
        if line.trim().is_empty() || line.trim_start().starts_with('#') {
            continue;
        }
        let cols: Vec<&str> = line.split('\t').collect();
        if !(5..=6).contains(&cols.len()) {
            return Err(RegistryError::Malformed {
                row,
                detail: format!("expected 5 or 6 columns, found {}", cols.len()),
            });
        }
        let id = cols[0].trim();
        if id.is_empty() {
            return Err(RegistryError::Malformed {
                row,
                detail: "empty id".into(),
            });
        }
        let relation = Capture::parse(cols[2]).ok_or_else(|| RegistryError::Malformed {
            row,
            detail: "relation capture is required".into(),
        })?;
        let enabled = match cols[4].trim().to_ascii_lowercase().as_str() {
            "true" | "1" | "yes" => true,
            "false" | "0" | "no" => false,
            other => {
                return Err(RegistryError::Malformed {
                    row,
                    detail: format!("bad enabled flag `{other}`"),
                })
            }
        };
        let target = match cols.get(5).map(|s| s.trim()) {
            None | Some("") | Some("compressed") => PatternTarget::Compressed,
            Some("raw") => PatternTarget::Raw,
            Some(other) => {
                return Err(RegistryError::Malformed {
                    row,
                    detail: format!("bad target `{other}`"),
                })
            }
        };
        let mut spec = PatternSpec::new(id, cols[1], relation, Capture::parse(cols[3]), target)?;
        spec.enabled = enabled;
        patterns.push(spec);
    }
    Registry::new(patterns)
}

pub fn load_registry(path: &Path) -> Result<Registry, RegistryError> {
    parse_registry(&std::fs::read_to_string(path)?)
}

/// One pattern match. Spans are byte offsets into the matched string.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PatternHit {
    pub pattern_id: String,
    pub match_span: (usize, usize),
    pub relation_label: String,
    pub raw_count_text: Option<String>,
    pub body_start: Option<usize>,
    pub name_span: Option<(usize, usize)>,
}

/// All hits of the enabled patterns over one string. Each pattern reports its
/// own non-overlapping matches; across patterns the earlier one wins overlaps.
pub fn match_patterns<'p>(
    serialized: &str,
    registry: impl IntoIterator<Item = &'p PatternSpec>,
) -> Vec<PatternHit> {
    let mut kept: Vec<PatternHit> = Vec::new();
    for spec in registry.into_iter().filter(|p| p.enabled) {
        for caps in spec.regex.captures_iter(serialized) {
            let whole = caps.get(0).expect("group 0 always participates");
            let span = (whole.start(), whole.end());
            if kept
                .iter()
                .any(|h| h.match_span.0 < span.1 && span.0 < h.match_span.1)
            {
                continue;
            }
            kept.push(PatternHit {
                pattern_id: spec.id.clone(),
                match_span: span,
                relation_label: spec
                    .relation_capture
                    .get(&caps)
                    .map(|m| m.as_str().to_string())
                    .unwrap_or_default(),
                raw_count_text: spec
                    .count_capture
                    .as_ref()
                    .and_then(|c| c.get(&caps))
                    .map(|m| m.as_str().to_string()),
                body_start: caps.name(BODY_GROUP).map(|m| m.start()),
                name_span: caps.name(NAME_GROUP).map(|m| (m.start(), m.end())),
            });
        }
    }
    kept.sort_by_key(|h| h.match_span);
    kept
}

/// A hit placed in sentence char offsets.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LocatedHit {
    pub hit: PatternHit,
    pub span: (usize, usize),
    /// Where name harvesting starts.
    pub head_end: usize,
    /// Where name harvesting stops: the next hit, or the sentence end.
    pub stop: usize,
    pub name_span: Option<(usize, usize)>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CandidateRejection {
    OverLength,
    PlaceholderAdjacent,
    Empty,
}

impl fmt::Display for CandidateRejection {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CandidateRejection::OverLength => "OverLength",
            CandidateRejection::PlaceholderAdjacent => "PlaceholderAdjacent",
            CandidateRejection::Empty => "Empty",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NameCandidate {
    pub surface: String,
    /// Char offsets into the original sentence.
    pub span: (usize, usize),
    pub accepted: bool,
    pub rejection_reason: Option<CandidateRejection>,
}

#[derive(Debug, Clone)]
pub struct HarvestRules {
    pub prefixes: OrdinalPrefixSet,
    pub max_name_len: usize,
}

impl HarvestRules {
    pub fn new(prefixes: OrdinalPrefixSet) -> Self {
        HarvestRules {
            prefixes,
            max_name_len: DEFAULT_MAX_NAME_LEN,
        }
    }
}

fn judge(
    surface: &str,
    span: (usize, usize),
    after_placeholder: bool,
    rules: &HarvestRules,
) -> NameCandidate {
    let stripped = strip_ordinal_prefix(surface, &rules.prefixes);
    let skipped = surface.chars().count() - stripped.chars().count();
    let span = (span.0 + skipped, span.1);
    let len = stripped.chars().count();
    let rejection = if len == 0 {
        Some(CandidateRejection::Empty)
    } else if after_placeholder {
        Some(CandidateRejection::PlaceholderAdjacent)
    } else if len > rules.max_name_len {
        Some(CandidateRejection::OverLength)
    } else {
        None
    };
    NameCandidate {
        surface: stripped.to_string(),
        span,
        accepted: rejection.is_none(),
        rejection_reason: rejection,
    }
}

/// Name candidates for one hit, accepted and rejected alike.
///
/// `cs` must already have had interference words deleted. Every text run
/// between the hit's head and its stop point is a candidate. A run that comes
/// straight after a place/office/verb placeholder is residue of that title
/// and is rejected.
pub fn harvest_names(
    cs: &CompressedSentence,
    hit: &LocatedHit,
    rules: &HarvestRules,
) -> Vec<NameCandidate> {
    if let Some((s, e)) = hit.name_span {
        let surface: String = cs.original.chars().skip(s).take(e - s).collect();
        return vec![judge(&surface, (s, e), false, rules)];
    }
    let mut out = Vec::new();
    for (i, tok) in cs.tokens.iter().enumerate() {
        if tok.kind != TokenKind::Text {
            continue;
        }
        let start = tok.span.0.max(hit.head_end);
        let end = tok.span.1.min(hit.stop);
        if start >= end {
            continue;
        }
        let surface: String = tok
            .surface
            .chars()
            .skip(start - tok.span.0)
            .take(end - start)
            .collect();
        let after_placeholder =
            start == tok.span.0 && i > 0 && cs.tokens[i - 1].kind.is_placeholder();
        out.push(judge(&surface, (start, end), after_placeholder, rules));
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KinshipRecord {
    pub doc_id: String,
    pub sentence_index: usize,
    pub relation_label: String,
    pub kinship_code: Option<KinshipCode>,
    pub declared_count: Option<u32>,
    pub names: Vec<NameCandidate>,
    pub rejected: Vec<NameCandidate>,
    pub pattern_id: String,
    pub count_mismatch: bool,
    /// Relation label not found in the kinship dictionary.
    pub unknown_relation: bool,
    /// A count was captured but could not be read.
    pub count_unparsed: bool,
    pub compressed_form: String,
    pub original: String,
}

impl KinshipRecord {
    pub fn name_surfaces(&self) -> Vec<&str> {
        self.names.iter().map(|n| n.surface.as_str()).collect()
    }
}

pub fn build_record(
    hit: &PatternHit,
    names: Vec<NameCandidate>,
    kinship_dict: &Dictionary,
    cs: &CompressedSentence,
) -> KinshipRecord {
    let kinship_code = kinship_dict
        .get(&hit.relation_label)
        .and_then(|e| e.kinship())
        .cloned();
    let parsed = hit.raw_count_text.as_deref().map(parse_chinese_numeral);
    let declared_count = parsed.as_ref().and_then(|r| r.as_ref().ok().copied());
    let (names, rejected): (Vec<_>, Vec<_>) = names.into_iter().partition(|n| n.accepted);
    KinshipRecord {
        doc_id: cs.sentence_ref.doc_id.clone(),
        sentence_index: cs.sentence_ref.index,
        relation_label: hit.relation_label.clone(),
        unknown_relation: kinship_code.is_none(),
        kinship_code,
        count_mismatch: declared_count.is_some_and(|d| d as usize != names.len()),
        count_unparsed: matches!(parsed, Some(Err(_))),
        declared_count,
        names,
        rejected,
        pattern_id: hit.pattern_id.clone(),
        compressed_form: serialize(cs),
        original: cs.original.clone(),
    }
}

fn char_offset(s: &str, byte: usize) -> usize {
    s[..byte].chars().count()
}

/// Runs the registry over one sentence and assembles its records.
#[derive(Debug, Clone, Copy)]
pub struct Extractor<'a> {
    pub registry: &'a Registry,
    pub kinship: &'a Dictionary,
    pub rules: &'a HarvestRules,
}

impl<'a> Extractor<'a> {
    pub fn new(registry: &'a Registry, kinship: &'a Dictionary, rules: &'a HarvestRules) -> Self {
        Extractor {
            registry,
            kinship,
            rules,
        }
    }

    /// Hits from both targets, in sentence offsets, overlaps resolved by
    /// registry order.
    pub fn locate(&self, compressed: &CompressedSentence) -> Vec<LocatedHit> {
        let len = compressed.original.chars().count();
        let mut located = Vec::new();

        let view = serialize_view(compressed);
        let structural = self
            .registry
            .enabled()
            .filter(|p| p.target == PatternTarget::Compressed);
        for hit in match_patterns(&view.text, structural) {
            let span = (
                view.origin_start(hit.match_span.0, len),
                view.origin_end(hit.match_span.1),
            );
            let head_end = hit
                .body_start
                .map(|b| view.origin_start(b, len))
                .unwrap_or(span.1);
            let name_span = hit
                .name_span
                .map(|(s, e)| (view.origin_start(s, len), view.origin_end(e)));
            located.push(LocatedHit {
                hit,
                span,
                head_end,
                stop: len,
                name_span,
            });
        }

        let raw = &compressed.original;
        let direct = self
            .registry
            .enabled()
            .filter(|p| p.target == PatternTarget::Raw);
        for hit in match_patterns(raw, direct) {
            let span = (
                char_offset(raw, hit.match_span.0),
                char_offset(raw, hit.match_span.1),
            );
            let head_end = hit
                .body_start
                .map(|b| char_offset(raw, b))
                .unwrap_or(span.1);
            let name_span = hit
                .name_span
                .map(|(s, e)| (char_offset(raw, s), char_offset(raw, e)));
            located.push(LocatedHit {
                hit,
                span,
                head_end,
                stop: len,
                name_span,
            });
        }

        located.sort_by_key(|h| (self.registry.rank_of(&h.hit.pattern_id), h.span));
        let mut kept: Vec<LocatedHit> = Vec::new();
        for h in located {
            if !kept
                .iter()
                .any(|k| k.span.0 < h.span.1 && h.span.0 < k.span.1)
            {
                kept.push(h);
            }
        }
        kept.sort_by_key(|h| h.span);
        for i in 0..kept.len().saturating_sub(1) {
            kept[i].stop = kept[i + 1].span.0.max(kept[i].head_end);
        }
        kept
    }

    pub fn extract(
        &self,
        compressed: &CompressedSentence,
        cleaned: &CompressedSentence,
    ) -> Vec<KinshipRecord> {
        self.locate(compressed)
            .iter()
            .map(|h| {
                let names = harvest_names(cleaned, h, self.rules);
                build_record(&h.hit, names, self.kinship, cleaned)
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn spec(id: &str, expr: &str) -> PatternSpec {
        PatternSpec::new(
            id,
            expr,
            Capture::Name("rel".into()),
            Some(Capture::Name("count".into())),
            PatternTarget::Compressed,
        )
        .unwrap()
    }

    #[test]
    fn head_pattern_reads_relation_and_count() {
        let p = spec("a", "(?P<rel>孫男)(?P<count>.{0,2})人");
        let hits = match_patterns("孫男二十人/wm/長仲俶/wsep/no_noc/", [&p]);
        assert_eq!(hits.len(), 1);
        assert_eq!(hits[0].relation_label, "孫男");
        assert_eq!(hits[0].raw_count_text.as_deref(), Some("二十"));
    }

    #[test]
    fn born_pattern() {
        let p = spec("b", "生(?P<count>[一二三四五六七八九十])(?P<rel>男|子)");
        let hits = match_patterns("娶陳氏/wsep/生二男/wsep/某", [&p]);
        assert_eq!(hits[0].relation_label, "男");
        assert_eq!(
            parse_chinese_numeral(hits[0].raw_count_text.as_deref().unwrap()),
            Ok(2)
        );
    }

    #[test]
    fn no_head_no_hits() {
        let p = spec("a", "(?P<rel>孫男)(?P<count>.{0,2})人");
        assert!(match_patterns("夷仲/wsep/虞仲", [&p]).is_empty());
    }

    #[test]
    fn earlier_pattern_wins_overlap() {
        let a = spec("a", "(?P<rel>孫男)(?P<count>.{0,2})人");
        let b = spec("b", "(?P<rel>男)(?P<count>.{0,2})人");
        let hits = match_patterns("孫男二人/wm/", [&a, &b]);
        assert_eq!(hits.len(), 1);
        assert_eq!(hits[0].pattern_id, "a");
        let hits = match_patterns("孫男二人/wm/", [&b, &a]);
        assert_eq!(hits[0].pattern_id, "b");
    }

    #[test]
    fn disabled_patterns_ignored() {
        let mut a = spec("a", "(?P<rel>孫男)(?P<count>.{0,2})人");
        a.enabled = false;
        assert!(match_patterns("孫男二人", [&a]).is_empty());
    }

    #[test]
    fn registry_parsing_errors() {
        assert!(matches!(
            parse_registry("x\t(?P<rel>孫\trel\t\ttrue\n"),
            Err(RegistryError::PatternCompile { .. })
        ));
        assert!(matches!(
            parse_registry("x\t(?P<rel>孫)\tnope\t\ttrue\n"),
            Err(RegistryError::UnknownCapture { .. })
        ));
        assert!(matches!(
            parse_registry("x\t(?P<rel>孫)\trel\t\tfalse\n"),
            Err(RegistryError::Empty)
        ));
        assert!(matches!(
            parse_registry("x\t(孫)\t1\t\tmaybe\n"),
            Err(RegistryError::Malformed { row: 1, .. })
        ));
        let reg = parse_registry("# c\nx\t(孫)(二)\t1\t2\ttrue\traw\n").unwrap();
        assert_eq!(reg.patterns()[0].target, PatternTarget::Raw);
        assert_eq!(reg.patterns()[0].count_capture, Some(Capture::Index(2)));
    }

    #[test]
    fn candidate_judgement() {
        let rules = HarvestRules::new(OrdinalPrefixSet::new(["長".to_string()]));
        let c = judge("長仲俶", (3, 6), false, &rules);
        assert!(c.accepted);
        assert_eq!(c.surface, "仲俶");
        assert_eq!(c.span, (4, 6));
        assert_eq!(
            judge("即亨之", (0, 3), false, &rules).rejection_reason,
            Some(CandidateRejection::OverLength)
        );
        assert_eq!(
            judge("長", (0, 1), false, &rules).rejection_reason,
            Some(CandidateRejection::Empty)
        );
        assert_eq!(
            judge("第", (0, 1), true, &rules).rejection_reason,
            Some(CandidateRejection::PlaceholderAdjacent)
        );
    }
}
