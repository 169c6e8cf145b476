//! Word-level rewriting with an explicit `α = a2 a1 = a3 a2 = a1 a3` token.
//!
//! Every [`Rule`] is an identity in B3 derived from the presentation
//! `a2 a1 = a3 a2 = a1 a3`; every [`TraceStep`] is either such a rule or a
//! conjugation. [`Trace::verify`] replays a trace against the fingerprint
//! oracle.

use std::fmt;

use crate::error::{Error, Result};
use crate::oracle::{ConjugacyProfile, GroupFingerprint};
use crate::word::{shift_index, ArtinLetter, BraidWord, Letter, Sign};

/// A band letter or a power `α^±1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Token {
    Band(Letter),
    Alpha(Sign),
}

impl Token {
    pub fn pos(i: u8) -> Token {
        Token::Band(Letter::pos(i))
    }

    pub fn neg(i: u8) -> Token {
        Token::Band(Letter::neg(i))
    }

    pub const ALPHA: Token = Token::Alpha(Sign::Pos);
    pub const ALPHA_INV: Token = Token::Alpha(Sign::Neg);

    pub fn inverse(self) -> Token {
        match self {
            Token::Band(l) => Token::Band(l.inverse()),
            Token::Alpha(s) => Token::Alpha(s.flip()),
        }
    }

    pub fn is_inverse_of(self, other: Token) -> bool {
        self.inverse() == other
    }

    pub fn letter(self) -> Option<Letter> {
        match self {
            Token::Band(l) => Some(l),
            Token::Alpha(_) => None,
        }
    }

    pub fn is_alpha(self) -> bool {
        matches!(self, Token::Alpha(_))
    }

    /// Conjugate by `α^-by`: band indices shift by `by`, `α` is fixed.
    pub fn relabeled(self, by: i64) -> Token {
        match self {
            Token::Band(l) => Token::Band(l.relabeled(by)),
            a => a,
        }
    }

    pub fn exp_sum(self) -> i64 {
        match self {
            Token::Band(l) => l.sign().value(),
            Token::Alpha(s) => 2 * s.value(),
        }
    }

    fn push_onto(self, fp: &mut GroupFingerprint) {
        match self {
            Token::Band(l) => fp.push_letter(l),
            Token::Alpha(Sign::Pos) => {
                fp.push_artin(ArtinLetter::S2);
                fp.push_artin(ArtinLetter::S1);
                fp.exp_sum += 2;
            }
            Token::Alpha(Sign::Neg) => {
                fp.push_artin(ArtinLetter::S1Inv);
                fp.push_artin(ArtinLetter::S2Inv);
                fp.exp_sum -= 2;
            }
        }
    }
}

impl fmt::Display for Token {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Token::Band(l) => l.fmt(f),
            Token::Alpha(Sign::Pos) => f.write_str("D"),
            Token::Alpha(Sign::Neg) => f.write_str("d"),
        }
    }
}

pub fn tokens_of(w: &BraidWord) -> Vec<Token> {
    w.iter().map(|&l| Token::Band(l)).collect()
}

pub fn token_string(tokens: &[Token]) -> String {
    tokens.iter().map(|t| t.to_string()).collect::<Vec<_>>().join(" ")
}

pub fn token_fingerprint(tokens: &[Token]) -> GroupFingerprint {
    let mut fp = GroupFingerprint::identity();
    for t in tokens {
        t.push_onto(&mut fp);
    }
    fp
}

/// Replace each `α^±1` by `a2 a1` / `ā1 ā2`.
pub fn expand_tokens(tokens: &[Token]) -> BraidWord {
    let mut out = Vec::with_capacity(tokens.len() + 4);
    for t in tokens {
        match t {
            Token::Band(l) => out.push(*l),
            Token::Alpha(Sign::Pos) => out.extend([Letter::pos(2), Letter::pos(1)]),
            Token::Alpha(Sign::Neg) => out.extend([Letter::neg(1), Letter::neg(2)]),
        }
    }
    BraidWord::new(out)
}

/// Named rewrite rules. Each applies at a position and replaces a short
/// pattern by an equal one.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Rule {
    /// `x x⁻¹ → ε`
    Cancel,
    /// `a_i ā_j → ā_{i+1} a_{j+1}`, `i ≠ j`
    PosNegSwap,
    /// `ā_i a_j → a_{i-1} ā_{j-1}`, `i ≠ j`
    NegPosSwap,
    /// `a_{i+1} a_i → α`, `ā_i ā_{i+1} → ᾱ`
    DeltaExtract,
    /// `α → a2 a1`, `ᾱ → ā1 ā2`
    DeltaExpand,
    /// `α ā_i → a_{i+1}`, `ā_i α → a_{i-1}`, `ᾱ a_i → ā_{i-1}`, `a_i ᾱ → ā_{i+1}`
    DeltaAbsorb,
    /// `ā_i → ᾱ a_{i+1}`
    DeltaSplit,
    /// `x α → α τ(x)` where `a_i α = α a_{i+1}` and `a_i ᾱ = ᾱ a_{i-1}`
    DeltaLeft,
    /// `α x → τ⁻¹(x) α` where `α a_i = a_{i-1} α` and `ᾱ a_i = a_{i+1} ᾱ`
    DeltaRight,
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Rule::Cancel => "cancel",
            Rule::PosNegSwap => "pos-neg-swap",
            Rule::NegPosSwap => "neg-pos-swap",
            Rule::DeltaExtract => "delta-extract",
            Rule::DeltaExpand => "delta-expand",
            Rule::DeltaAbsorb => "delta-absorb",
            Rule::DeltaSplit => "delta-split",
            Rule::DeltaLeft => "delta-left",
            Rule::DeltaRight => "delta-right",
        };
        f.write_str(s)
    }
}

/// Replacement produced by a rule: number of tokens consumed and the tokens
/// written in their place.
type Replacement = (usize, Vec<Token>);

impl Rule {
    pub fn all() -> [Rule; 9] {
        [
            Rule::Cancel,
            Rule::PosNegSwap,
            Rule::NegPosSwap,
            Rule::DeltaExtract,
            Rule::DeltaExpand,
            Rule::DeltaAbsorb,
            Rule::DeltaSplit,
            Rule::DeltaLeft,
            Rule::DeltaRight,
        ]
    }

    /// Match the rule's left-hand side at `at`.
    pub fn matches(self, tokens: &[Token], at: usize) -> Option<Replacement> {
        use Token::*;
        let x = *tokens.get(at)?;
        let y = tokens.get(at + 1).copied();
        match self {
            Rule::Cancel => {
                let y = y?;
                x.is_inverse_of(y).then(|| (2, vec![]))
            }
            Rule::PosNegSwap => match (x, y?) {
                (Band(a), Band(b)) if a.is_positive() && !b.is_positive() && a.index() != b.index() => {
                    Some((2, vec![Band(a.inverse().relabeled(1)), Band(b.inverse().relabeled(1))]))
                }
                _ => None,
            },
            Rule::NegPosSwap => match (x, y?) {
                (Band(a), Band(b)) if !a.is_positive() && b.is_positive() && a.index() != b.index() => {
                    Some((2, vec![Band(a.inverse().relabeled(-1)), Band(b.inverse().relabeled(-1))]))
                }
                _ => None,
            },
            Rule::DeltaExtract => match (x, y?) {
                (Band(a), Band(b)) if a.is_positive() && b.is_positive() && a.index() == shift_index(b.index(), 1) => {
                    Some((2, vec![Token::ALPHA]))
                }
                (Band(a), Band(b))
                    if !a.is_positive() && !b.is_positive() && b.index() == shift_index(a.index(), 1) =>
                {
                    Some((2, vec![Token::ALPHA_INV]))
                }
                _ => None,
            },
            Rule::DeltaExpand => match x {
                Alpha(Sign::Pos) => Some((1, vec![Token::pos(2), Token::pos(1)])),
                Alpha(Sign::Neg) => Some((1, vec![Token::neg(1), Token::neg(2)])),
                _ => None,
            },
            Rule::DeltaAbsorb => match (x, y?) {
                (Alpha(Sign::Pos), Band(b)) if !b.is_positive() => {
                    Some((2, vec![Token::pos(shift_index(b.index(), 1))]))
                }
                (Band(a), Alpha(Sign::Pos)) if !a.is_positive() => {
                    Some((2, vec![Token::pos(shift_index(a.index(), -1))]))
                }
                (Alpha(Sign::Neg), Band(b)) if b.is_positive() => {
                    Some((2, vec![Token::neg(shift_index(b.index(), -1))]))
                }
                (Band(a), Alpha(Sign::Neg)) if a.is_positive() => {
                    Some((2, vec![Token::neg(shift_index(a.index(), 1))]))
                }
                _ => None,
            },
            Rule::DeltaSplit => match x {
                Band(a) if !a.is_positive() => Some((1, vec![Token::ALPHA_INV, Token::pos(shift_index(a.index(), 1))])),
                _ => None,
            },
            Rule::DeltaLeft => match (x, y?) {
                (Band(a), Alpha(s)) => Some((2, vec![Alpha(s), Band(a.relabeled(s.value()))])),
                _ => None,
            },
            Rule::DeltaRight => match (x, y?) {
                (Alpha(s), Band(b)) => Some((2, vec![Band(b.relabeled(-s.value())), Alpha(s)])),
                _ => None,
            },
        }
    }

    /// Apply in place; returns the number of tokens written.
    pub fn apply_in_place(self, tokens: &mut Vec<Token>, at: usize) -> Result<usize> {
        let (consumed, replacement) = self.matches(tokens, at).ok_or_else(|| Error::RuleMismatch {
            rule: self.to_string(),
            at,
            word: token_string(tokens),
        })?;
        let written = replacement.len();
        tokens.splice(at..at + consumed, replacement);
        Ok(written)
    }
}

/// Apply `rule` at `position`, returning the rewritten word.
pub fn rewrite_step(tokens: &[Token], position: usize, rule: Rule) -> Result<Vec<Token>> {
    let mut out = tokens.to_vec();
    rule.apply_in_place(&mut out, position)?;
    Ok(out)
}

/// One move of a normalization trace.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TraceStep {
    /// A group identity applied at a position.
    Rewrite { rule: Rule, at: usize },
    /// Move the last token to the front: `w x ↦ x w`.
    RotateRight,
    /// `w ↦ t⁻¹ w t`.
    Conjugate(Token),
}

impl TraceStep {
    pub fn apply(self, tokens: &mut Vec<Token>) -> Result<()> {
        match self {
            TraceStep::Rewrite { rule, at } => {
                rule.apply_in_place(tokens, at)?;
            }
            TraceStep::RotateRight => {
                if let Some(t) = tokens.pop() {
                    tokens.insert(0, t);
                }
            }
            TraceStep::Conjugate(t) => {
                tokens.insert(0, t.inverse());
                tokens.push(t);
            }
        }
        Ok(())
    }

    pub fn is_conjugation(self) -> bool {
        !matches!(self, TraceStep::Rewrite { .. })
    }
}

impl fmt::Display for TraceStep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TraceStep::Rewrite { rule, at } => write!(f, "{rule}@{at}"),
            TraceStep::RotateRight => f.write_str("rotate"),
            TraceStep::Conjugate(t) => write!(f, "conjugate({t})"),
        }
    }
}

/// A replayable sequence of moves starting from a word.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Trace {
    pub start: Vec<Token>,
    pub steps: Vec<TraceStep>,
}

impl Trace {
    /// All intermediate words, starting word first.
    pub fn replay(&self) -> Result<Vec<Vec<Token>>> {
        let mut words = Vec::with_capacity(self.steps.len() + 1);
        let mut cur = self.start.clone();
        words.push(cur.clone());
        for step in &self.steps {
            step.apply(&mut cur)?;
            words.push(cur.clone());
        }
        Ok(words)
    }

    pub fn end(&self) -> Result<Vec<Token>> {
        let mut cur = self.start.clone();
        for step in &self.steps {
            step.apply(&mut cur)?;
        }
        Ok(cur)
    }

    /// Conjugator `g` with `end = g · start · g⁻¹`, accumulated from the
    /// conjugation moves of the trace.
    pub fn conjugator(&self) -> Result<Vec<Token>> {
        let mut g: Vec<Token> = Vec::new();
        let mut cur = self.start.clone();
        for step in &self.steps {
            match step {
                TraceStep::RotateRight => {
                    if let Some(&t) = cur.last() {
                        g.insert(0, t);
                    }
                }
                TraceStep::Conjugate(t) => g.insert(0, t.inverse()),
                TraceStep::Rewrite { .. } => {}
            }
            step.apply(&mut cur)?;
        }
        Ok(g)
    }

    /// Checked replay: every rewrite preserves the fingerprint, every
    /// conjugation preserves the conjugacy profile and matches its explicit
    /// conjugator, and the end is `g · start · g⁻¹` for the reconstructed `g`.
    pub fn verify(&self) -> Result<()> {
        let mut cur = self.start.clone();
        let mut fp = token_fingerprint(&cur);
        for (i, step) in self.steps.iter().enumerate() {
            let before = cur.clone();
            step.apply(&mut cur).map_err(|e| Error::Unsound { step: i, detail: e.to_string() })?;
            let next = token_fingerprint(&cur);
            let ok = match step {
                TraceStep::Rewrite { .. } => next == fp,
                TraceStep::RotateRight => {
                    let t = *before.last().expect("rotation of a non-empty word");
                    let expected = &(&token_fingerprint(&[t]) * &fp) * &token_fingerprint(&[t.inverse()]);
                    ConjugacyProfile::from(&next) == ConjugacyProfile::from(&fp) && next == expected
                }
                TraceStep::Conjugate(t) => {
                    let expected = &(&token_fingerprint(&[t.inverse()]) * &fp) * &token_fingerprint(&[*t]);
                    ConjugacyProfile::from(&next) == ConjugacyProfile::from(&fp) && next == expected
                }
            };
            if !ok {
                return Err(Error::Unsound {
                    step: i,
                    detail: format!("{step} took `{}` to `{}`", token_string(&before), token_string(&cur)),
                });
            }
            fp = next;
        }
        let g = self.conjugator()?;
        let g_inv: Vec<Token> = g.iter().rev().map(|t| t.inverse()).collect();
        let conj: Vec<Token> = g.iter().chain(&self.start).chain(&g_inv).copied().collect();
        if token_fingerprint(&conj) != fp {
            return Err(Error::Unsound {
                step: self.steps.len(),
                detail: "end is not the reconstructed conjugate of the start".into(),
            });
        }
        Ok(())
    }
}
