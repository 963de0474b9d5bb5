//! Headcount numerals (一 … 九十九).

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("cannot read `{0}` as a headcount numeral")]
pub struct UnparsableNumeral(pub String);

const DIGITS: [char; 9] = ['一', '二', '三', '四', '五', '六', '七', '八', '九'];

fn digit(c: char) -> Option<u32> {
    DIGITS.iter().position(|&d| d == c).map(|i| i as u32 + 1)
}

/// Reads 五, 十, 十五, 二十, 二十一 and so on, 1 through 99. Non-canonical
/// spellings such as 一十 are rejected.
pub fn parse_chinese_numeral(text: &str) -> Result<u32, UnparsableNumeral> {
    let err = || UnparsableNumeral(text.to_string());
    let chars: Vec<char> = text.chars().collect();
    match chars.as_slice() {
        [d] if *d == '十' => Ok(10),
        [d] => digit(*d).ok_or_else(err),
        ['十', u] => digit(*u).map(|u| 10 + u).ok_or_else(err),
        [t, '十'] => match digit(*t) {
            Some(t) if t >= 2 => Ok(t * 10),
            _ => Err(err()),
        },
        [t, '十', u] => match (digit(*t), digit(*u)) {
            (Some(t), Some(u)) if t >= 2 => Ok(t * 10 + u),
            _ => Err(err()),
        },
        _ => Err(err()),
    }
}

/// Canonical spelling for 1..=99; `None` outside that range.
pub fn format_chinese_numeral(n: u32) -> Option<String> {
    if !(1..=99).contains(&n) {
        return None;
    }
    let (tens, units) = (n / 10, n % 10);
    let mut s = String::new();
    if tens >= 2 {
        s.push(DIGITS[tens as usize - 1]);
    }
    if tens >= 1 {
        s.push('十');
    }
    if units > 0 {
        s.push(DIGITS[units as usize - 1]);
    }
    Some(s)
}
