//! Built-in dictionaries, rules and pattern registry.

use crate::extractor::{parse_registry, Registry};
use crate::filter::{parse_rules, FilterRule};
use crate::lexicon::{parse_dictionary, DictKind, Dictionary, LoadOptions};

pub const KINSHIP: &str = include_str!("../data/kinship.csv");
pub const PLACE: &str = include_str!("../data/place.csv");
pub const OFFICE: &str = include_str!("../data/office.csv");
pub const APPT_VERB: &str = include_str!("../data/appt_verb.csv");
pub const INTERFERENCE: &str = include_str!("../data/interference.tsv");
pub const EXCLUSION: &str = include_str!("../data/exclusion.csv");
pub const RULES: &str = include_str!("../data/rules.tsv");
pub const REGISTRY: &str = include_str!("../data/registry.tsv");

pub fn source(kind: DictKind) -> &'static str {
    match kind {
        DictKind::Kinship => KINSHIP,
        DictKind::Place => PLACE,
        DictKind::Office => OFFICE,
        DictKind::ApptVerb => APPT_VERB,
        DictKind::Interference => INTERFERENCE,
        DictKind::Exclusion => EXCLUSION,
    }
}

pub fn dictionary(kind: DictKind) -> Dictionary {
    parse_dictionary(source(kind), kind, &LoadOptions::default())
        .expect("built-in dictionaries parse")
}

pub fn rules() -> Vec<FilterRule> {
    parse_rules(RULES).expect("built-in rules parse")
}

pub fn registry() -> Registry {
    parse_registry(REGISTRY).expect("built-in registry compiles")
}
