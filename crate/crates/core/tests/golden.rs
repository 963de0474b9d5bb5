mod common;

use common::*;
use epitag_core::extractor::CandidateRejection;
use epitag_core::pipeline::Resources;
use epitag_core::segmenter::Sentence;
use epitag_core::serialize;

fn sentence(i: usize) -> Sentence {
    Sentence::standalone("fixture", i, ALL[i].trim_end_matches('。'))
}

#[test]
fn compressed_lines() {
    let res = Resources::builtin();
    for (i, want) in [(0, C1), (1, C2), (3, C4)] {
        assert_eq!(
            serialize(&res.compress(&sentence(i))),
            want,
            "sentence {}",
            i + 1
        );
    }
}

#[test]
fn cleaned_lines() {
    let res = Resources::builtin();
    for (i, want) in [D1, D2, D3, D4].into_iter().enumerate() {
        let cleaned = res.clean(&res.compress(&sentence(i)));
        assert_eq!(serialize(&cleaned), want, "sentence {}", i + 1);
    }
}

#[test]
fn records() {
    let res = Resources::builtin();
    let recs: Vec<_> = (0..4)
        .flat_map(|i| res.extract(&res.compress(&sentence(i))))
        .collect();
    assert_eq!(recs.len(), 4);
    assert!(recs.iter().all(|r| r.relation_label == "孫男"));
    let counts: Vec<_> = recs.iter().map(|r| r.declared_count).collect();
    assert_eq!(counts, [Some(2), Some(5), Some(6), Some(20)]);

    assert_eq!(recs[0].name_surfaces(), ["應運", "丙戌", "應龍"]);
    assert_eq!(recs[0].rejected.len(), 1);
    assert_eq!(recs[0].rejected[0].surface, "即亨之");
    assert_eq!(
        recs[0].rejected[0].rejection_reason,
        Some(CandidateRejection::OverLength)
    );
    assert!(recs[0].count_mismatch);

    assert_eq!(
        recs[1].name_surfaces(),
        ["汝直", "汝敦", "汝平", "汝功", "汝能"]
    );
    assert!(!recs[1].count_mismatch);
    assert_eq!(
        recs[2].name_surfaces(),
        ["夷仲", "虞仲", "於仲", "南仲", "武仲", "延仲"]
    );
    assert!(!recs[2].count_mismatch);

    let s4 = recs[3].name_surfaces();
    assert_eq!(s4.len(), 17);
    assert!(s4
        .iter()
        .all(|n| n.starts_with('仲') && n.chars().count() == 2));
    assert!(recs[3].count_mismatch);
}
