//! Words in the band generators `a1 = s1`, `a2 = s2`, `a3 = s2 s1 S2` of the
//! 3-strand braid group.
//!
//! Band indices live in `{1, 2, 3}` and are treated cyclically: after `a3`
//! comes `a1`. A capital letter is the inverse generator, so `A2` is `a2⁻¹`.

use std::fmt;
use std::str::FromStr;

use serde::{Serialize, Serializer};

use crate::error::{ParseError, ParseErrorKind};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sign {
    Pos,
    Neg,
}

impl Sign {
    pub fn flip(self) -> Sign {
        match self {
            Sign::Pos => Sign::Neg,
            Sign::Neg => Sign::Pos,
        }
    }

    pub fn value(self) -> i64 {
        match self {
            Sign::Pos => 1,
            Sign::Neg => -1,
        }
    }
}

/// Shift a band index cyclically by `by`.
pub fn shift_index(index: u8, by: i64) -> u8 {
    ((index as i64 - 1 + by).rem_euclid(3) + 1) as u8
}

/// One band letter `a_i` or `ā_i`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Letter {
    index: u8,
    sign: Sign,
}

impl Letter {
    pub const fn new(index: u8, sign: Sign) -> Letter {
        assert!(index >= 1 && index <= 3, "band index out of range");
        Letter { index, sign }
    }

    pub const fn pos(index: u8) -> Letter {
        Letter::new(index, Sign::Pos)
    }

    pub const fn neg(index: u8) -> Letter {
        Letter::new(index, Sign::Neg)
    }

    pub fn index(self) -> u8 {
        self.index
    }

    pub fn sign(self) -> Sign {
        self.sign
    }

    pub fn is_positive(self) -> bool {
        self.sign == Sign::Pos
    }

    pub fn inverse(self) -> Letter {
        Letter { index: self.index, sign: self.sign.flip() }
    }

    pub fn is_inverse_of(self, other: Letter) -> bool {
        self.index == other.index && self.sign != other.sign
    }

    /// The letter with its index shifted cyclically by `by`.
    pub fn relabeled(self, by: i64) -> Letter {
        Letter { index: shift_index(self.index, by), sign: self.sign }
    }

    /// Position in the fixed enumeration order `a1 a2 a3 A1 A2 A3`.
    pub fn code(self) -> u8 {
        match self.sign {
            Sign::Pos => self.index - 1,
            Sign::Neg => self.index + 2,
        }
    }

    pub fn from_code(code: u8) -> Letter {
        match code {
            0..=2 => Letter::pos(code + 1),
            3..=5 => Letter::neg(code - 2),
            _ => panic!("letter code {code} out of range"),
        }
    }

    pub fn all() -> [Letter; 6] {
        [0, 1, 2, 3, 4, 5].map(Letter::from_code)
    }

    /// Expansion in Artin generators.
    pub fn artin(self) -> ArtinExpansion {
        use ArtinLetter::*;
        match (self.index, self.sign) {
            (1, Sign::Pos) => ArtinExpansion::One(S1),
            (1, Sign::Neg) => ArtinExpansion::One(S1Inv),
            (2, Sign::Pos) => ArtinExpansion::One(S2),
            (2, Sign::Neg) => ArtinExpansion::One(S2Inv),
            (3, Sign::Pos) => ArtinExpansion::Three([S2, S1, S2Inv]),
            (3, Sign::Neg) => ArtinExpansion::Three([S2, S1Inv, S2Inv]),
            _ => unreachable!(),
        }
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c = if self.is_positive() { 'a' } else { 'A' };
        write!(f, "{c}{}", self.index)
    }
}

/// Standard Artin generators `s1`, `s2` and their inverses.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ArtinLetter {
    S1,
    S2,
    S1Inv,
    S2Inv,
}

impl ArtinLetter {
    pub fn inverse(self) -> ArtinLetter {
        use ArtinLetter::*;
        match self {
            S1 => S1Inv,
            S2 => S2Inv,
            S1Inv => S1,
            S2Inv => S2,
        }
    }

    /// The same Artin letter read as a band letter (`s1 = a1`, `s2 = a2`).
    pub fn band(self) -> Letter {
        use ArtinLetter::*;
        match self {
            S1 => Letter::pos(1),
            S2 => Letter::pos(2),
            S1Inv => Letter::neg(1),
            S2Inv => Letter::neg(2),
        }
    }
}

impl fmt::Display for ArtinLetter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            ArtinLetter::S1 => "s1",
            ArtinLetter::S2 => "s2",
            ArtinLetter::S1Inv => "S1",
            ArtinLetter::S2Inv => "S2",
        };
        f.write_str(s)
    }
}

#[derive(Clone, Copy, Debug)]
pub enum ArtinExpansion {
    One(ArtinLetter),
    Three([ArtinLetter; 3]),
}

impl ArtinExpansion {
    pub fn as_slice(&self) -> &[ArtinLetter] {
        match self {
            ArtinExpansion::One(l) => std::slice::from_ref(l),
            ArtinExpansion::Three(ls) => ls,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Notation {
    #[default]
    Band,
    Artin,
}

/// A braid word in band letters, read left to right.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct BraidWord(Vec<Letter>);

impl BraidWord {
    pub fn new(letters: Vec<Letter>) -> BraidWord {
        BraidWord(letters)
    }

    pub fn empty() -> BraidWord {
        BraidWord(Vec::new())
    }

    /// Parse a word, see [`parse_word`].
    pub fn parse(text: &str) -> Result<BraidWord, ParseError> {
        parse_word(text)
    }

    /// Positive word `a_{i1} a_{i2} ...` from band indices.
    pub fn positive(indices: &[u8]) -> BraidWord {
        BraidWord(indices.iter().map(|&i| Letter::pos(i)).collect())
    }

    pub fn from_artin(letters: &[ArtinLetter]) -> BraidWord {
        BraidWord(letters.iter().map(|l| l.band()).collect())
    }

    /// `α^k` written as `(a2 a1)^k`, or `(A1 A2)^|k|` for negative `k`.
    pub fn alpha_power(k: i64) -> BraidWord {
        let pair = if k >= 0 { [Letter::pos(2), Letter::pos(1)] } else { [Letter::neg(1), Letter::neg(2)] };
        BraidWord(pair.iter().copied().cycle().take(2 * k.unsigned_abs() as usize).collect())
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn into_letters(self) -> Vec<Letter> {
        self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Letter> {
        self.0.iter()
    }

    pub fn first(&self) -> Option<Letter> {
        self.0.first().copied()
    }

    pub fn last(&self) -> Option<Letter> {
        self.0.last().copied()
    }

    pub fn is_positive(&self) -> bool {
        self.0.iter().all(|l| l.is_positive())
    }

    pub fn is_negative(&self) -> bool {
        self.0.iter().all(|l| !l.is_positive())
    }

    /// Signed letter count; each band letter contributes its sign.
    pub fn exponent_sum(&self) -> i64 {
        self.0.iter().map(|l| l.sign().value()).sum()
    }

    pub fn concat(&self, other: &BraidWord) -> BraidWord {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        BraidWord(v)
    }

    pub fn pow(&self, n: usize) -> BraidWord {
        BraidWord(self.0.repeat(n))
    }

    /// The inverse element: reversed, every letter inverted.
    pub fn inverse(&self) -> BraidWord {
        BraidWord(self.0.iter().rev().map(|l| l.inverse()).collect())
    }

    /// Cyclic rotation moving the first `by` letters to the end.
    pub fn rotated(&self, by: usize) -> BraidWord {
        if self.0.is_empty() {
            return self.clone();
        }
        let mut v = self.0.clone();
        v.rotate_left(by % self.0.len());
        BraidWord(v)
    }

    /// Every index shifted cyclically by `by`; realizes conjugation by `α^-by`.
    pub fn relabeled(&self, by: i64) -> BraidWord {
        BraidWord(self.0.iter().map(|l| l.relabeled(by)).collect())
    }

    pub fn artin_letters(&self) -> Vec<ArtinLetter> {
        self.0.iter().flat_map(|l| l.artin().as_slice().to_vec()).collect()
    }

    pub fn format(&self, notation: Notation) -> String {
        format_word(self, notation)
    }
}

impl FromIterator<Letter> for BraidWord {
    fn from_iter<I: IntoIterator<Item = Letter>>(iter: I) -> Self {
        BraidWord(iter.into_iter().collect())
    }
}

impl<'a> IntoIterator for &'a BraidWord {
    type Item = &'a Letter;
    type IntoIter = std::slice::Iter<'a, Letter>;

    fn into_iter(self) -> Self::IntoIter {
        self.0.iter()
    }
}

impl fmt::Display for BraidWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format_word(self, Notation::Band))
    }
}

impl FromStr for BraidWord {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_word(s)
    }
}

impl Serialize for BraidWord {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

fn is_separator(c: char) -> bool {
    c.is_whitespace() || c == '.'
}

/// Parse the token grammar
///
/// ```text
/// WORD   := (TOKEN SEP?)*
/// TOKEN  := LETTER EXP?
/// LETTER := a1 | a2 | a3 | A1 | A2 | A3 | s1 | s2 | S1 | S2
/// EXP    := '^' nonzero-integer
/// SEP    := whitespace | '.'
/// ```
///
/// Capitals are inverses, `s`-letters are Artin generators (`s1 = a1`,
/// `s2 = a2`), and a negative exponent inverts the letter. No reduction is
/// performed.
pub fn parse_word(text: &str) -> Result<BraidWord, ParseError> {
    let chars: Vec<char> = text.chars().collect();
    let mut letters = Vec::new();
    let mut i = 0;
    let mut saw_token = false;

    let token_at = |start: usize| -> String { chars[start..].iter().take_while(|c| !is_separator(**c)).collect() };

    while i < chars.len() {
        if is_separator(chars[i]) {
            i += 1;
            continue;
        }
        let start = i;
        let err = |kind| ParseError { token: token_at(start), position: start, kind };

        let letter = match (chars.get(i), chars.get(i + 1)) {
            (Some(&c), Some(&d)) => {
                let sign = if c.is_ascii_lowercase() { Sign::Pos } else { Sign::Neg };
                match (c.to_ascii_lowercase(), d) {
                    ('a', '1'..='3') => Letter::new(d as u8 - b'0', sign),
                    ('s', '1'..='2') => Letter::new(d as u8 - b'0', sign),
                    _ => return Err(err(ParseErrorKind::UnknownLetter)),
                }
            }
            _ => return Err(err(ParseErrorKind::UnknownLetter)),
        };
        i += 2;

        let mut exponent: i64 = 1;
        if chars.get(i) == Some(&'^') {
            i += 1;
            let digits_start = i;
            if matches!(chars.get(i), Some('-') | Some('+')) {
                i += 1;
            }
            while chars.get(i).is_some_and(|c| c.is_ascii_digit()) {
                i += 1;
            }
            let digits: String = chars[digits_start..i].iter().collect();
            exponent = digits.parse().map_err(|_| err(ParseErrorKind::MalformedExponent))?;
            if exponent == 0 {
                return Err(err(ParseErrorKind::ZeroExponent));
            }
        }
        // A letter must be followed by a separator, the end, or the next letter.
        if let Some(&c) = chars.get(i) {
            if !is_separator(c) && !matches!(c, 'a' | 'A' | 's' | 'S') {
                return Err(err(ParseErrorKind::MalformedExponent));
            }
        }

        let l = if exponent < 0 { letter.inverse() } else { letter };
        letters.extend(std::iter::repeat_n(l, exponent.unsigned_abs() as usize));
        saw_token = true;
    }

    if !saw_token && !text.is_empty() {
        return Err(ParseError { token: text.to_string(), position: 0, kind: ParseErrorKind::NoTokens });
    }
    Ok(BraidWord(letters))
}

/// Render a word in band (`a1 A2`) or Artin (`s2 s1 S2`) tokens, space separated.
pub fn format_word(w: &BraidWord, notation: Notation) -> String {
    let tokens: Vec<String> = match notation {
        Notation::Band => w.iter().map(|l| l.to_string()).collect(),
        Notation::Artin => w.artin_letters().iter().map(|l| l.to_string()).collect(),
    };
    tokens.join(" ")
}

/// Free reduction, and with `cyclic` set also cancellation of a mutually
/// inverse first/last pair until none remains.
pub fn reduce_word(w: &BraidWord, cyclic: bool) -> BraidWord {
    let mut stack: Vec<Letter> = Vec::with_capacity(w.len());
    for &l in w {
        match stack.last() {
            Some(&top) if top.is_inverse_of(l) => {
                stack.pop();
            }
            _ => stack.push(l),
        }
    }
    if cyclic {
        let mut lo = 0;
        let mut hi = stack.len();
        while hi - lo >= 2 && stack[lo].is_inverse_of(stack[hi - 1]) {
            lo += 1;
            hi -= 1;
        }
        stack = stack[lo..hi].to_vec();
    }
    BraidWord(stack)
}

pub fn is_freely_reduced(w: &BraidWord) -> bool {
    w.letters().windows(2).all(|p| !p[0].is_inverse_of(p[1]))
}

pub fn is_cyclically_reduced(w: &BraidWord) -> bool {
    is_freely_reduced(w)
        && match (w.first(), w.last()) {
            (Some(a), Some(b)) if w.len() >= 2 => !a.is_inverse_of(b),
            _ => true,
        }
}

/// A word whose closure is the mirror image of the closure of `w`: every
/// Artin exponent is negated (`a3 = s2 s1 S2` becomes `S2 S1 s2`, read back as
/// `A2 A1 a2`).
pub fn mirror_word(w: &BraidWord) -> BraidWord {
    w.artin_letters().iter().map(|l| l.inverse().band()).collect()
}

/// All freely and cyclically reduced words of length exactly `len`, in
/// lexicographic order of letter codes (`a1 < a2 < a3 < A1 < A2 < A3`).
pub fn reduced_words(len: usize) -> ReducedWords {
    ReducedWords { codes: Vec::new(), len, started: false }
}

/// Iterator behind [`reduced_words`]; walks freely reduced words in order
/// and skips those whose ends cancel.
pub struct ReducedWords {
    codes: Vec<u8>,
    len: usize,
    started: bool,
}

impl ReducedWords {
    fn inverse_code(c: u8) -> u8 {
        (c + 3) % 6
    }

    /// Smallest free extension of `codes[..from]` to the full length.
    fn fill_from(&mut self, from: usize) {
        self.codes.truncate(from);
        while self.codes.len() < self.len {
            // a1 is always allowed unless it would cancel an A1
            let c = match self.codes.last() {
                Some(&3) => 1,
                _ => 0,
            };
            self.codes.push(c);
        }
    }

    /// Next freely reduced word in order, or false when exhausted.
    fn advance(&mut self) -> bool {
        if !self.started {
            self.started = true;
            self.fill_from(0);
            return true;
        }
        for i in (0..self.len).rev() {
            let forbidden = (i > 0).then(|| Self::inverse_code(self.codes[i - 1]));
            let next = (self.codes[i] + 1..6).find(|&c| Some(c) != forbidden);
            if let Some(c) = next {
                self.codes[i] = c;
                self.fill_from(i + 1);
                return true;
            }
        }
        false
    }
}

impl Iterator for ReducedWords {
    type Item = BraidWord;

    fn next(&mut self) -> Option<BraidWord> {
        while self.advance() {
            let cyclic_ok = self.len < 2 || self.codes[0] != Self::inverse_code(self.codes[self.len - 1]);
            if cyclic_ok {
                return Some(self.codes.iter().map(|&c| Letter::from_code(c)).collect());
            }
        }
        None
    }
}
