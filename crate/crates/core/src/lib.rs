//! Compress-then-tag kinship extraction for classical Chinese epitaphs.
//!
//! Sentences that mention kin are selected, then compressed: place names,
//! office titles and appointment verbs become placeholders and punctuation
//! becomes head marks and separators. Interference words are deleted next,
//! and structural patterns over the compressed form locate clause heads such
//! as `孫男二十人/wm/`. Whatever text survives after a head is taken as the
//! list of names.
//!
//! ```
//! use epitag_core::pipeline::Resources;
//! use epitag_core::segmenter::Sentence;
//!
//! let res = Resources::builtin();
//! let s = Sentence::standalone("doc", 0, "孫男六人：曰夷仲，曰虞仲");
//! let records = res.extract(&res.compress(&s));
//! assert_eq!(records[0].relation_label, "孫男");
//! assert_eq!(records[0].name_surfaces(), ["夷仲", "虞仲"]);
//! ```

pub mod compressor;
pub mod defaults;
pub mod extractor;
pub mod filter;
pub mod formats;
pub mod lexicon;
pub mod noise;
pub mod pipeline;
pub mod review;
pub mod segmenter;

pub use compressor::{compress, serialize, CompressedSentence, Stage, Token, TokenKind};
pub use extractor::{
    build_record, harvest_names, match_patterns, parse_chinese_numeral, KinshipRecord,
    NameCandidate, PatternHit, PatternSpec, Registry,
};
pub use filter::{select_kinship_sentences, FilterDecision, FilterRule};
pub use lexicon::{
    apply_exclusions, load_dictionary, longest_match_at, DictEntry, DictKind, Dictionary,
    KinshipCode, Lexicon,
};
pub use noise::{delete_interference, strip_ordinal_prefix, InterferenceCatalog, OrdinalPrefixSet};
pub use review::{compute_stats, emit_review_csv, RunStats};
pub use segmenter::{classify_punct, split_sentences, Document, PunctClass, Sentence, SentenceRef};
