//! Stage composition: segment, filter, compress, delete, extract.
//!
//! Each stage is a pure per-sentence map, run on a rayon pool sized by the
//! caller. Results are collected in input order, so the worker count never
//! changes the output.

use rayon::prelude::*;
pub use rayon::ThreadPool;
use rayon::{ThreadPoolBuildError, ThreadPoolBuilder};

use crate::compressor::{CompressedSentence, Compressor};
use crate::defaults;
use crate::extractor::{Extractor, HarvestRules, KinshipRecord, Registry};
use crate::filter::{decide, FilterDecision, FilterRule};
use crate::lexicon::{DictKind, Lexicon};
use crate::noise::{delete_interference, InterferenceCatalog};
use crate::review::{compute_stats, RunStats};
use crate::segmenter::{split_sentences_with, Document, PunctConfig, Sentence};

/// Everything a run needs, loaded once and shared read-only.
#[derive(Debug, Clone)]
pub struct Resources {
    pub lexicon: Lexicon,
    pub catalog: InterferenceCatalog,
    pub rules: Vec<FilterRule>,
    pub registry: Registry,
    pub punct: PunctConfig,
    pub harvest: HarvestRules,
}

impl Resources {
    pub fn new(lexicon: Lexicon, rules: Vec<FilterRule>, registry: Registry) -> Self {
        let catalog = InterferenceCatalog::from_dictionary(&lexicon.interference);
        let harvest = HarvestRules::new(catalog.ordinal_prefixes());
        Resources {
            lexicon,
            catalog,
            rules,
            registry,
            punct: PunctConfig::default(),
            harvest,
        }
    }

    /// The built-in dictionaries, rules and registry.
    pub fn builtin() -> Self {
        let d = defaults::dictionary;
        let lexicon = Lexicon::new(
            d(DictKind::Kinship),
            d(DictKind::Place),
            d(DictKind::Office),
            d(DictKind::ApptVerb),
            d(DictKind::Interference),
            d(DictKind::Exclusion),
        );
        Resources::new(lexicon, defaults::rules(), defaults::registry())
    }

    pub fn with_max_name_len(mut self, n: usize) -> Self {
        self.harvest.max_name_len = n;
        self
    }

    pub fn compressor(&self) -> Compressor<'_> {
        Compressor::new(
            &self.lexicon.place,
            &self.lexicon.office,
            &self.lexicon.appt_verb,
            &self.punct,
        )
    }

    pub fn extractor(&self) -> Extractor<'_> {
        Extractor::new(&self.registry, &self.lexicon.kinship, &self.harvest)
    }

    pub fn compress(&self, sentence: &Sentence) -> CompressedSentence {
        self.compressor().compress(sentence)
    }

    pub fn clean(&self, cs: &CompressedSentence) -> CompressedSentence {
        delete_interference(cs, &self.catalog)
    }

    pub fn extract(&self, compressed: &CompressedSentence) -> Vec<KinshipRecord> {
        self.extractor()
            .extract(compressed, &self.clean(compressed))
    }
}

/// Rayon pool with a fixed thread count (at least one).
pub fn pool(workers: usize) -> Result<ThreadPool, ThreadPoolBuildError> {
    ThreadPoolBuilder::new().num_threads(workers.max(1)).build()
}

pub fn segment(docs: &[Document], res: &Resources, pool: &ThreadPool) -> Vec<Sentence> {
    pool.install(|| {
        docs.par_iter()
            .flat_map_iter(|d| split_sentences_with(d, &res.punct))
            .collect()
    })
}

pub fn filter(sentences: &[Sentence], res: &Resources, pool: &ThreadPool) -> Vec<FilterDecision> {
    pool.install(|| {
        sentences
            .par_iter()
            .map(|s| decide(s, &res.rules, &res.lexicon.exclusion))
            .collect()
    })
}

pub fn accepted(sentences: &[Sentence], decisions: &[FilterDecision]) -> Vec<Sentence> {
    sentences
        .iter()
        .zip(decisions)
        .filter(|(_, d)| d.accepted)
        .map(|(s, _)| s.clone())
        .collect()
}

pub fn compress(
    sentences: &[Sentence],
    res: &Resources,
    pool: &ThreadPool,
) -> Vec<CompressedSentence> {
    pool.install(|| sentences.par_iter().map(|s| res.compress(s)).collect())
}

pub fn extract(
    compressed: &[CompressedSentence],
    res: &Resources,
    pool: &ThreadPool,
) -> Vec<KinshipRecord> {
    pool.install(|| {
        compressed
            .par_iter()
            .flat_map_iter(|cs| res.extract(cs))
            .collect()
    })
}

#[derive(Debug, Clone)]
pub struct RunOutput {
    pub decisions: Vec<FilterDecision>,
    pub compressed: Vec<CompressedSentence>,
    pub records: Vec<KinshipRecord>,
    pub stats: RunStats,
}

pub fn run(docs: &[Document], res: &Resources, pool: &ThreadPool) -> RunOutput {
    let sentences = segment(docs, res, pool);
    let decisions = filter(&sentences, res, pool);
    let compressed = compress(&accepted(&sentences, &decisions), res, pool);
    let records = extract(&compressed, res, pool);
    let stats = compute_stats(&decisions, &records);
    RunOutput {
        decisions,
        compressed,
        records,
        stats,
    }
}
