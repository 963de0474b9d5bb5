//! Synthetic corpora for the benchmarks.

use epitag_core::Document;

const SENTENCES: [&str; 8] = [
    "孫男二人：長應運，登丙戌進士第，儒林郎、兩浙轉運司物料官，即亨之也；次應龍，習舉子業。",
    "孫男五人：汝直、汝敦、汝平、汝功、汝能、皆業進士。",
    "孫男六人：曰夷仲，曰虞仲，曰於仲，曰南仲，曰武仲，曰延仲。",
    "孫男二十人：長仲俶，右武衛大將軍、眉州刺史；次仲誘，右武衛大將軍、茂州刺史；次仲虺，右武衛大將軍、春州刺史；次仲瑩，右監門衛大將軍；次仲沃、仲芮、仲雪、仲敵、仲靡，并右千牛衛將軍；次仲頌、仲雷、仲吟、仲麟、仲逢，并太子右監門率府率；次仲誥、仲諲、仲慥，并太子右內率府率；餘未命。",
    "公早娶彭城縣君劉氏，先公卒。",
    "孔子曰：學而時習之。",
    "其後以疾卒于官，年六十有三。",
    "子男三人：長某，權知眉州；次某，試秘書省校書郎；次某，未仕。",
];

/// `docs` documents of `per_doc` sentences each, cycling through a fixed set.
pub fn corpus(docs: usize, per_doc: usize) -> Vec<Document> {
    (0..docs)
        .map(|d| {
            let text: String = (0..per_doc)
                .map(|i| SENTENCES[(d * 7 + i * 3) % SENTENCES.len()])
                .collect();
            Document::new(format!("d{d:05}"), "", &text)
        })
        .collect()
}

pub fn longest_sentence() -> &'static str {
    SENTENCES[3]
}
