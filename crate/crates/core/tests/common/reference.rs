//! Brute-force compression reference: punctuation `，` `：` `。`, then place,
//! office and appointment verb, each by trying every entry.

use std::collections::HashMap;

pub const PUNCT: [char; 3] = ['，', '：', '。'];

/// Longest entry that is a prefix of `text[pos..]`, by trying every entry.
pub fn brute_longest(words: &[String], text: &[char], pos: usize) -> Option<usize> {
    words
        .iter()
        .map(|w| w.chars().collect::<Vec<_>>())
        .filter(|w| text[pos..].starts_with(w))
        .map(|w| w.len())
        .max()
}

pub struct Reference<'a> {
    text: Vec<char>,
    place: &'a [String],
    office: &'a [String],
    appt: &'a [String],
    memo: HashMap<usize, bool>,
}

impl<'a> Reference<'a> {
    pub fn new(text: &str, place: &'a [String], office: &'a [String], appt: &'a [String]) -> Self {
        Reference {
            text: text.chars().collect(),
            place,
            office,
            appt,
            memo: HashMap::new(),
        }
    }

    fn is_punct(&self, pos: usize) -> bool {
        PUNCT.contains(&self.text[pos])
    }

    /// Length of every appointment verb starting at `pos`, longest first.
    fn appt_lengths(&self, pos: usize) -> Vec<usize> {
        let mut lens: Vec<usize> = self
            .appt
            .iter()
            .map(|w| w.chars().collect::<Vec<_>>())
            .filter(|w| self.text[pos..].starts_with(w))
            .map(|w| w.len())
            .collect();
        lens.sort_unstable_by(|a, b| b.cmp(a));
        lens
    }

    /// Whether a placeholder of any kind can begin at `pos`.
    fn placeholder_starts(&mut self, pos: usize) -> bool {
        if pos >= self.text.len() || self.is_punct(pos) {
            return false;
        }
        if let Some(&b) = self.memo.get(&pos) {
            return b;
        }
        let b = brute_longest(self.place, &self.text, pos).is_some()
            || brute_longest(self.office, &self.text, pos).is_some()
            || self
                .appt_lengths(pos)
                .into_iter()
                .any(|n| self.placeholder_starts(pos + n));
        self.memo.insert(pos, b);
        b
    }

    pub fn serialize(&mut self) -> String {
        let mut out = String::new();
        let mut pos = 0;
        let mut last_marker = false;
        let emit = |out: &mut String, last: &mut bool, marker: &str| {
            if !*last {
                out.push('/');
            }
            out.push_str(marker);
            out.push('/');
            *last = true;
        };
        while pos < self.text.len() {
            let c = self.text[pos];
            if c == '。' {
                pos += 1;
                continue;
            }
            if c == '：' {
                emit(&mut out, &mut last_marker, "wm");
                pos += 1;
                continue;
            }
            if c == '，' {
                emit(&mut out, &mut last_marker, "wsep");
                pos += 1;
                continue;
            }
            if let Some(n) = brute_longest(self.place, &self.text, pos) {
                emit(&mut out, &mut last_marker, "ns");
                pos += n;
                continue;
            }
            if let Some(n) = brute_longest(self.office, &self.text, pos) {
                emit(&mut out, &mut last_marker, "no_noc");
                pos += n;
                continue;
            }
            let verb = self
                .appt_lengths(pos)
                .into_iter()
                .find(|&n| self.placeholder_starts(pos + n));
            if let Some(n) = verb {
                emit(&mut out, &mut last_marker, "vno");
                pos += n;
                continue;
            }
            out.push(c);
            last_marker = false;
            pos += 1;
        }
        out
    }
}
