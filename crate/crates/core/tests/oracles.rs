//! Independent reference implementations checked against the library.

mod common;

use std::collections::BTreeSet;

use common::reference::{brute_longest, Reference, PUNCT};

use epitag_core::compressor::Compressor;
use epitag_core::extractor::numeral::{format_chinese_numeral, parse_chinese_numeral};
use epitag_core::segmenter::{PunctConfig, Sentence};
use epitag_core::{serialize, DictKind, Dictionary};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

const ALPHABET: [char; 6] = ['甲', '乙', '丙', '丁', '戊', '己'];

fn random_word(rng: &mut StdRng, max_len: usize) -> String {
    let len = rng.gen_range(1..=max_len);
    (0..len)
        .map(|_| ALPHABET[rng.gen_range(0..ALPHABET.len())])
        .collect()
}

fn random_words(rng: &mut StdRng, n: usize) -> Vec<String> {
    let set: BTreeSet<String> = (0..n)
        .map(|_| {
            let max = if rng.gen_bool(0.7) { 3 } else { 8 };
            random_word(rng, max)
        })
        .collect();
    set.into_iter().collect()
}

fn random_text(rng: &mut StdRng) -> String {
    let len = rng.gen_range(0..=60);
    (0..len)
        .map(|_| {
            if rng.gen_bool(0.1) {
                PUNCT[rng.gen_range(0..PUNCT.len())]
            } else {
                ALPHABET[rng.gen_range(0..ALPHABET.len())]
            }
        })
        .collect()
}

#[test]
fn longest_match_against_scan() {
    let mut rng = StdRng::seed_from_u64(7);
    for _ in 0..1000 {
        let n = rng.gen_range(1..=30);
        let words = random_words(&mut rng, n);
        let dict = Dictionary::from_surfaces(DictKind::Office, &words);
        let text: Vec<char> = random_text(&mut rng).chars().collect();
        for pos in 0..=text.len() {
            let got = dict.longest_match_at(&text, pos).map(|(_, n)| n);
            let want = if pos < text.len() {
                brute_longest(&words, &text, pos)
            } else {
                None
            };
            assert_eq!(got, want, "{words:?} {text:?} @{pos}");
        }
    }
}

#[test]
fn compress_against_reference() {
    let mut rng = StdRng::seed_from_u64(11);
    let punct = PunctConfig {
        terminators: ['。'].into_iter().collect(),
        separators: ['，'].into_iter().collect(),
        head_marks: ['：'].into_iter().collect(),
    };
    let started = std::time::Instant::now();
    for case in 0..1000 {
        let total = rng.gen_range(1..=30);
        let words = random_words(&mut rng, total);
        let mut place = Vec::new();
        let mut office = Vec::new();
        let mut appt = Vec::new();
        for w in words {
            match rng.gen_range(0..3) {
                0 => place.push(w),
                1 => office.push(w),
                _ => appt.push(w),
            }
        }
        let dp = Dictionary::from_surfaces(DictKind::Place, &place);
        let doff = Dictionary::from_surfaces(DictKind::Office, &office);
        let dappt = Dictionary::from_surfaces(DictKind::ApptVerb, &appt);
        let text = random_text(&mut rng);
        let got = Compressor::new(&dp, &doff, &dappt, &punct)
            .compress(&Sentence::standalone("r", case, &text));
        let want = Reference::new(&text, &place, &office, &appt).serialize();
        assert_eq!(
            serialize(&got),
            want,
            "case {case}: {text} P{place:?} O{office:?} A{appt:?}"
        );
    }
    assert!(started.elapsed().as_secs() < 30);
}

#[test]
fn numerals_one_to_ninety_nine() {
    const DIGITS: [&str; 10] = ["", "一", "二", "三", "四", "五", "六", "七", "八", "九"];
    for n in 1..=99u32 {
        let (tens, ones) = (n / 10, n % 10);
        let written = match tens {
            0 => DIGITS[ones as usize].to_string(),
            1 => format!("十{}", DIGITS[ones as usize]),
            t => format!("{}十{}", DIGITS[t as usize], DIGITS[ones as usize]),
        };
        assert_eq!(format_chinese_numeral(n).as_deref(), Some(written.as_str()));
        assert_eq!(parse_chinese_numeral(&written), Ok(n));
    }
    for bad in ["", "一十", "十十", "零", "百", "二十十"] {
        assert!(parse_chinese_numeral(bad).is_err(), "{bad}");
    }
}
