//! Kinship sentence selection.
//!
//! A sentence passes when it contains a live kinship keyword. Keyword
//! occurrences are neutralized when they sit inside an exclusion match
//! (父母, 孔子, 考課, ...) or when the keyword introduces speech (母曰：).
//! Ambiguous marriage verbs additionally need a co-occurring term such as 氏.

use std::collections::BTreeSet;
use std::fmt;
use std::path::Path;

use thiserror::Error;

use crate::lexicon::Dictionary;
use crate::segmenter::{classify_punct, PunctClass, Sentence, SentenceRef};

#[derive(Debug, Error)]
pub enum RulesError {
    #[error("cannot read rules file: {0}")]
    Io(#[from] std::io::Error),
    #[error("rules row {row}: {detail}")]
    Malformed { row: usize, detail: String },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum RuleKind {
    Direct,
    Marriage,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Condition {
    Unconditional,
    RequiresAny(BTreeSet<String>),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FilterRule {
    pub keyword: String,
    pub condition: Condition,
    pub kind: RuleKind,
}

impl FilterRule {
    pub fn direct(keyword: &str) -> Self {
        FilterRule {
            keyword: keyword.to_string(),
            condition: Condition::Unconditional,
            kind: RuleKind::Direct,
        }
    }

    pub fn marriage(keyword: &str, requires: &[&str]) -> Self {
        let condition = if requires.is_empty() {
            Condition::Unconditional
        } else {
            Condition::RequiresAny(requires.iter().map(|s| s.to_string()).collect())
        };
        FilterRule {
            keyword: keyword.to_string(),
            condition,
            kind: RuleKind::Marriage,
        }
    }
}

/// Rules TSV: `keyword<TAB>kind<TAB>required-terms`, terms `|`-separated,
/// empty meaning unconditional.
pub fn parse_rules(text: &str) -> Result<Vec<FilterRule>, RulesError> {
    let mut rules = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let row = i + 1;
        if line.trim().is_empty() || line.trim_start().starts_with('#') {
            continue;
        }
        let cols: Vec<&str> = line.split('\t').map(str::trim).collect();
        let (keyword, kind, required) = match cols.as_slice() {
            [k, kind] => (*k, *kind, ""),
            [k, kind, req] => (*k, *kind, *req),
            _ => {
                return Err(RulesError::Malformed {
                    row,
                    detail: "expected keyword, kind, required-terms".into(),
                })
            }
        };
        if keyword.is_empty() {
            return Err(RulesError::Malformed {
                row,
                detail: "empty keyword".into(),
            });
        }
        let kind = match kind {
            "direct" => RuleKind::Direct,
            "marriage" => RuleKind::Marriage,
            other => {
                return Err(RulesError::Malformed {
                    row,
                    detail: format!("unknown kind `{other}`"),
                })
            }
        };
        let terms: BTreeSet<String> = required
            .split('|')
            .map(str::trim)
            .filter(|t| !t.is_empty())
            .map(String::from)
            .collect();
        let condition = if terms.is_empty() {
            Condition::Unconditional
        } else {
            Condition::RequiresAny(terms)
        };
        rules.push(FilterRule {
            keyword: keyword.to_string(),
            condition,
            kind,
        });
    }
    Ok(rules)
}

pub fn load_rules(path: &Path) -> Result<Vec<FilterRule>, RulesError> {
    parse_rules(&std::fs::read_to_string(path)?)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Rejection {
    NoKeyword,
    Neutralized { keyword: String, by: String },
    Speech { keyword: String },
    MissingCoOccurrence { keyword: String },
}

impl fmt::Display for Rejection {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Rejection::NoKeyword => f.write_str("no kinship keyword"),
            Rejection::Neutralized { keyword, by } => {
                write!(f, "{keyword} neutralized by exclusion {by}")
            }
            Rejection::Speech { keyword } => write!(f, "{keyword}曰 introduces speech"),
            Rejection::MissingCoOccurrence { keyword } => {
                write!(f, "{keyword} without co-occurring term")
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FilterDecision {
    pub sentence_ref: SentenceRef,
    pub accepted: bool,
    pub matched_keywords: Vec<String>,
    pub rejection_reason: Option<Rejection>,
}

fn find_all(hay: &[char], needle: &[char]) -> Vec<usize> {
    if needle.is_empty() || needle.len() > hay.len() {
        return Vec::new();
    }
    (0..=hay.len() - needle.len())
        .filter(|&i| hay[i..i + needle.len()] == *needle)
        .collect()
}

const OPEN_QUOTES: [char; 4] = ['「', '『', '“', '‘'];

fn introduces_speech(chars: &[char], after: usize) -> bool {
    if chars.get(after) != Some(&'曰') {
        return false;
    }
    match chars.get(after + 1) {
        None => true,
        Some(&c) => classify_punct(c) == PunctClass::HeadMark || OPEN_QUOTES.contains(&c),
    }
}

/// Leftmost-longest, non-overlapping exclusion matches as `(start, end, surface)`.
fn exclusion_spans<'d>(chars: &[char], exclusions: &'d Dictionary) -> Vec<(usize, usize, &'d str)> {
    let mut spans = Vec::new();
    let mut pos = 0;
    while pos < chars.len() {
        match exclusions.longest_match_at(chars, pos) {
            Some((e, len)) => {
                spans.push((pos, pos + len, e.surface.as_str()));
                pos += len;
            }
            None => pos += 1,
        }
    }
    spans
}

pub fn decide(
    sentence: &Sentence,
    rules: &[FilterRule],
    exclusions: &Dictionary,
) -> FilterDecision {
    let chars: Vec<char> = sentence.raw_text.chars().collect();
    let spans = exclusion_spans(&chars, exclusions);

    let mut matched = Vec::new();
    let mut first_rejection: Option<Rejection> = None;
    let mut note = |r: Rejection| {
        if first_rejection.is_none() {
            first_rejection = Some(r);
        }
    };

    for rule in rules {
        let kw: Vec<char> = rule.keyword.chars().collect();
        let mut live = false;
        for start in find_all(&chars, &kw) {
            let end = start + kw.len();
            if let Some(&(_, _, by)) = spans.iter().find(|(s, e, _)| *s <= start && end <= *e) {
                note(Rejection::Neutralized {
                    keyword: rule.keyword.clone(),
                    by: by.to_string(),
                });
                continue;
            }
            if introduces_speech(&chars, end) {
                note(Rejection::Speech {
                    keyword: rule.keyword.clone(),
                });
                continue;
            }
            live = true;
            break;
        }
        if !live {
            continue;
        }
        let satisfied = match &rule.condition {
            Condition::Unconditional => true,
            Condition::RequiresAny(terms) => {
                terms.iter().any(|t| sentence.raw_text.contains(t.as_str()))
            }
        };
        if satisfied {
            if !matched.contains(&rule.keyword) {
                matched.push(rule.keyword.clone());
            }
        } else {
            note(Rejection::MissingCoOccurrence {
                keyword: rule.keyword.clone(),
            });
        }
    }

    let accepted = !matched.is_empty();
    FilterDecision {
        sentence_ref: sentence.sentence_ref(),
        accepted,
        matched_keywords: matched,
        rejection_reason: if accepted {
            None
        } else {
            Some(first_rejection.unwrap_or(Rejection::NoKeyword))
        },
    }
}

pub fn select_kinship_sentences(
    sentences: &[Sentence],
    rules: &[FilterRule],
    exclusions: &Dictionary,
) -> Vec<FilterDecision> {
    sentences
        .iter()
        .map(|s| decide(s, rules, exclusions))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lexicon::DictKind;

    fn rules() -> Vec<FilterRule> {
        vec![
            FilterRule::direct("子"),
            FilterRule::direct("孫"),
            FilterRule::direct("母"),
            FilterRule::direct("父"),
            FilterRule::marriage("娶", &[]),
            FilterRule::marriage("適", &["氏", "夫人", "女", "女孫"]),
        ]
    }

    fn excl() -> Dictionary {
        Dictionary::from_surfaces(DictKind::Exclusion, &["孔子", "父母"])
    }

    fn run(text: &str) -> FilterDecision {
        decide(&Sentence::standalone("d", 0, text), &rules(), &excl())
    }

    #[test]
    fn marriage_needs_co_occurrence() {
        let d = run("適會其時");
        assert!(!d.accepted);
        assert_eq!(
            d.rejection_reason,
            Some(Rejection::MissingCoOccurrence {
                keyword: "適".into()
            })
        );
        assert!(run("適陳氏").accepted);
    }

    #[test]
    fn exclusion_neutralizes_in_span_only() {
        let d = run("孔子之道");
        assert!(!d.accepted);
        assert!(matches!(
            d.rejection_reason,
            Some(Rejection::Neutralized { .. })
        ));
        assert!(run("孔子之道，其子某").accepted);
        assert!(!run("事父母孝").accepted);
    }

    #[test]
    fn speech_is_neutralized_but_naming_is_not() {
        assert!(!run("母曰：汝其勉之").accepted);
        assert!(!run("母曰「勉之」").accepted);
        let d = run("母曰陳氏");
        assert!(d.accepted);
        assert_eq!(d.matched_keywords, vec!["母".to_string()]);
    }

    #[test]
    fn no_keyword() {
        let d = run("天下大治");
        assert_eq!(d.rejection_reason, Some(Rejection::NoKeyword));
        assert_eq!(
            d.rejection_reason.unwrap().to_string(),
            "no kinship keyword"
        );
    }

    #[test]
    fn rules_file_parses() {
        let rules = parse_rules("# c\n子\tdirect\t\n配\tmarriage\t氏|夫人\n").unwrap();
        assert_eq!(rules.len(), 2);
        assert_eq!(rules[0].condition, Condition::Unconditional);
        assert_eq!(rules[1].kind, RuleKind::Marriage);
        match &rules[1].condition {
            Condition::RequiresAny(t) => assert_eq!(t.len(), 2),
            _ => panic!(),
        }
        assert!(parse_rules("子\tsibling\t\n").is_err());
        assert!(parse_rules("子\n").is_err());
    }
}
