//! Fibring certificates: word-level moves from a shortest word down to a
//! closure known to be fibred.

use std::fmt;
use std::sync::OnceLock;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::oracle::{conjugacy_profile, fingerprint};
use crate::word::{is_cyclically_reduced, mirror_word, shift_index, BraidWord, Letter};
use crate::xu::{untwist, xu_form, xu_length, Shape, XuForm};

/// One step of a certificate.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(tag = "move", rename_all = "kebab-case")]
pub enum Move {
    /// Drop one letter of the doubled pair at `at, at+1` (cyclically):
    /// de-plumbing a Hopf band.
    HopfCollapse { at: usize },
    /// `α^k a_i P′ → α^k P′`, since `α^k a_i = α^{k-1} a_{i+1} a_i a_i`.
    AlphaPeel { k: usize },
    /// `ā1 a3 a1 a2 → ā1 a2` at cyclic position `at`, indices shifted by `relabel`.
    Reduce1 { at: usize, relabel: u8 },
    /// `ā1 a2 a3 a1 a2 → ā1 a2` at cyclic position `at`, indices shifted by `relabel`.
    Reduce2 { at: usize, relabel: u8 },
    /// Cyclic rotation to the left.
    Rotate { by: usize },
    /// Shift every index (conjugation by a power of `α`).
    Relabel { shift: u8 },
    /// `w → w⁻¹`: the closure is the mirror image with reversed orientation.
    InverseWordSymmetry,
    /// `a1 → ā2, a2 → ā1, a3 → ā3`: the mirror image, kept in band letters.
    MirrorSymmetry,
}

impl fmt::Display for Move {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Move::HopfCollapse { at } => write!(f, "hopf-collapse@{at}"),
            Move::AlphaPeel { k } => write!(f, "alpha-peel(k={k})"),
            Move::Reduce1 { at, relabel } => write!(f, "reduce1@{at}+{relabel}"),
            Move::Reduce2 { at, relabel } => write!(f, "reduce2@{at}+{relabel}"),
            Move::Rotate { by } => write!(f, "rotate({by})"),
            Move::Relabel { shift } => write!(f, "relabel(+{shift})"),
            Move::InverseWordSymmetry => write!(f, "inverse-word"),
            Move::MirrorSymmetry => write!(f, "mirror"),
        }
    }
}

/// Where a certificate terminates.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(tag = "base", rename_all = "kebab-case")]
pub enum BaseCase {
    /// `α^k`, a torus link.
    TorusAlpha { k: usize },
    /// Entry of [`np_base_table`].
    NpTable { index: usize },
}

impl BaseCase {
    pub fn word(&self) -> Option<BraidWord> {
        match *self {
            BaseCase::TorusAlpha { k } if k >= 1 => Some(BraidWord::alpha_power(k as i64)),
            BaseCase::TorusAlpha { .. } => None,
            BaseCase::NpTable { index } => np_base_table().get(index).cloned(),
        }
    }
}

impl fmt::Display for BaseCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BaseCase::TorusAlpha { k } => write!(f, "torus α^{k}"),
            BaseCase::NpTable { index } => match np_base_table().get(*index) {
                Some(w) => write!(f, "np-table #{index} ({w})"),
                None => write!(f, "np-table #{index}"),
            },
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FiberCertificate {
    pub moves: Vec<Move>,
    pub base_case: BaseCase,
}

impl fmt::Display for FiberCertificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for m in &self.moves {
            write!(f, "{m}; ")?;
        }
        write!(f, "base {}", self.base_case)
    }
}

const REDUCE1: [Letter; 4] = [Letter::neg(1), Letter::pos(3), Letter::pos(1), Letter::pos(2)];
const REDUCE2: [Letter; 5] = [Letter::neg(1), Letter::pos(2), Letter::pos(3), Letter::pos(1), Letter::pos(2)];
const REDUCED: [Letter; 2] = [Letter::neg(1), Letter::pos(2)];

/// The mirror image in band letters: `σ1 ↦ σ2⁻¹, σ2 ↦ σ1⁻¹`, which is the
/// Artin mirror followed by the flip automorphism (conjugation by the half
/// twist), so the closure is the mirror image.
pub fn band_mirror(w: &BraidWord) -> BraidWord {
    w.iter()
        .map(|l| {
            let index = match l.index() {
                1 => 2,
                2 => 1,
                _ => 3,
            };
            Letter::new(index, l.sign().flip())
        })
        .collect()
}

/// Replace a reduce1 (`variant` 1) or reduce2 (`variant` 2) array,
/// shifted by `relabel`, at cyclic position `at`. When the array wraps
/// around the end the word is first rotated to start at `at`.
pub fn reduce_move(w: &BraidWord, at: usize, variant: u8, relabel: u8) -> Result<BraidWord> {
    let pattern: &[Letter] = match variant {
        1 => &REDUCE1,
        2 => &REDUCE2,
        _ => return Err(Error::Precondition(format!("unknown reduce variant {variant}"))),
    };
    let n = w.len();
    if at >= n.max(1) || pattern.len() > n {
        return Err(Error::RuleMismatch { rule: format!("reduce{variant}"), at, word: w.to_string() });
    }
    let shift = i64::from(relabel);
    let matches = pattern.iter().enumerate().all(|(j, p)| w.letters()[(at + j) % n] == p.relabeled(shift));
    if !matches {
        return Err(Error::RuleMismatch { rule: format!("reduce{variant}"), at, word: w.to_string() });
    }
    if xu_length(&xu_form(w)?) != n {
        return Err(Error::ContractViolation(format!("reduce{variant} needs a shortest word, got `{w}`")));
    }
    let (start, rotated) = if at + pattern.len() <= n { (at, w.clone()) } else { (0, w.rotated(at)) };
    let mut letters = rotated.into_letters();
    letters.splice(start..start + pattern.len(), REDUCED.iter().map(|l| l.relabeled(shift)));
    Ok(BraidWord::new(letters))
}

/// Apply one move, checking its precondition.
pub fn apply_move(w: &BraidWord, m: Move) -> Result<BraidWord> {
    let mismatch = |rule: &str, at: usize| Error::RuleMismatch { rule: rule.into(), at, word: w.to_string() };
    let n = w.len();
    match m {
        Move::HopfCollapse { at } => {
            if n < 2 || at >= n || w.letters()[at] != w.letters()[(at + 1) % n] {
                return Err(mismatch("hopf-collapse", at));
            }
            let mut letters = w.clone().into_letters();
            letters.remove((at + 1) % n);
            Ok(BraidWord::new(letters))
        }
        Move::AlphaPeel { k } => {
            let prefix = BraidWord::alpha_power(k as i64);
            if k == 0 || n <= 2 * k || w.letters()[..2 * k] != *prefix.letters() || !w.letters()[2 * k].is_positive() {
                return Err(mismatch("alpha-peel", 2 * k));
            }
            let a = w.letters()[2 * k];
            let lhs = prefix.concat(&BraidWord::new(vec![a]));
            let rhs = BraidWord::alpha_power(k as i64 - 1).concat(&BraidWord::new(vec![a.relabeled(1), a, a]));
            if fingerprint(&lhs) != fingerprint(&rhs) {
                return Err(Error::Internal(format!("{m}: {lhs} ≠ {rhs}")));
            }
            let mut letters = w.clone().into_letters();
            letters.remove(2 * k);
            Ok(BraidWord::new(letters))
        }
        Move::Reduce1 { at, relabel } => reduce_move(w, at, 1, relabel),
        Move::Reduce2 { at, relabel } => reduce_move(w, at, 2, relabel),
        Move::Rotate { by } => {
            let out = w.rotated(by);
            check_conjugate(w, &out, m)?;
            Ok(out)
        }
        Move::Relabel { shift } => {
            let out = w.relabeled(i64::from(shift));
            check_conjugate(w, &out, m)?;
            Ok(out)
        }
        Move::InverseWordSymmetry => Ok(w.inverse()),
        Move::MirrorSymmetry => {
            let out = band_mirror(w);
            // same class as the Artin mirror
            check_conjugate(&mirror_word(w), &out, m)?;
            Ok(out)
        }
    }
}

fn check_conjugate(before: &BraidWord, after: &BraidWord, m: Move) -> Result<()> {
    if conjugacy_profile(before) != conjugacy_profile(after) {
        return Err(Error::Internal(format!("{m}: `{before}` and `{after}` are not conjugate")));
    }
    Ok(())
}

/// Replay `cert` from `w`; true iff every move applies and the result is
/// exactly the base case word.
pub fn verify_certificate(cert: &FiberCertificate, w: &BraidWord) -> bool {
    replay(cert, w).is_ok()
}

/// Like [`verify_certificate`] but reports the first failure.
pub fn replay(cert: &FiberCertificate, w: &BraidWord) -> Result<BraidWord> {
    let mut cur = w.clone();
    for &m in &cert.moves {
        cur = apply_move(&cur, m)?;
    }
    match cert.base_case.word() {
        Some(base) if base == cur => Ok(cur),
        _ => Err(Error::ContractViolation(format!("replay ends at `{cur}`, not at base {}", cert.base_case))),
    }
}

/// Every cyclically reduced shortest word `N P` with `N̄` and `P` strictly
/// increasing of length 1 to 3, in every relabeling.
pub fn np_base_table() -> &'static [BraidWord] {
    static TABLE: OnceLock<Vec<BraidWord>> = OnceLock::new();
    TABLE.get_or_init(|| {
        let runs: Vec<BraidWord> = (1..=3u8)
            .flat_map(|start| {
                (1..=3i64)
                    .map(move |len| BraidWord::new((0..len).map(|j| Letter::pos(shift_index(start, j))).collect()))
            })
            .collect();
        let mut table = Vec::new();
        for nbar in &runs {
            for p in &runs {
                let w = nbar.inverse().concat(p);
                if is_cyclically_reduced(&w) && xu_form(&w).is_ok_and(|x| xu_length(&x) == w.len()) {
                    table.push(w);
                }
            }
        }
        table
    })
}

fn np_table_index(w: &BraidWord) -> Option<usize> {
    np_base_table().iter().position(|e| e == w)
}

struct Builder {
    word: BraidWord,
    moves: Vec<Move>,
}

impl Builder {
    fn push(&mut self, m: Move) -> Result<()> {
        self.word = apply_move(&self.word, m)?;
        self.moves.push(m);
        Ok(())
    }

    fn collapse_doubles(&mut self) -> Result<()> {
        loop {
            let n = self.word.len();
            let letters = self.word.letters();
            let Some(at) = (0..n).find(|&i| n >= 2 && letters[i] == letters[(i + 1) % n]) else {
                return Ok(());
            };
            self.push(Move::HopfCollapse { at })?;
        }
    }

    /// Word `N P` with `N̄`, `P` strictly increasing: shorten `P` to at most
    /// three letters with the reduce moves, anchored at the last letter of `N`.
    fn reduce_positive_part(&mut self) -> Result<()> {
        loop {
            let nlen = self.word.iter().take_while(|l| !l.is_positive()).count();
            if nlen == 0 || nlen == self.word.len() {
                return Err(Error::Internal(format!("`{}` is not of shape N P", self.word)));
            }
            let last_neg = self.word.letters()[nlen - 1].index();
            let relabel = (last_neg + 2) % 3;
            let plen = self.word.len() - nlen;
            let first = self.word.letters()[nlen].relabeled(-i64::from(relabel)).index();
            let at = nlen - 1;
            match (first, plen) {
                (3, 3..) => self.push(Move::Reduce1 { at, relabel })?,
                (2, 4..) => self.push(Move::Reduce2 { at, relabel })?,
                _ => return Ok(()),
            }
        }
    }

    fn peel_alpha(&mut self, k: usize) -> Result<BaseCase> {
        while self.word.len() > 2 * k {
            self.push(Move::AlphaPeel { k })?;
        }
        Ok(BaseCase::TorusAlpha { k })
    }

    fn finish(self, base_case: BaseCase) -> FiberCertificate {
        FiberCertificate { moves: self.moves, base_case }
    }
}

/// Certificate starting at the expansion of `x` (`α` written `a2 a1`).
pub fn certify_fibred(x: &XuForm) -> Result<FiberCertificate> {
    let mut b = Builder { word: x.expansion(), moves: Vec::new() };
    let k = x.k().unsigned_abs() as usize;
    let not_fibred = || Error::Precondition(format!("{x} is not a fibred form"));
    match x.shape() {
        Shape::Identity => Err(not_fibred()),
        Shape::AlphaPositive => {
            let base = b.peel_alpha(k)?;
            Ok(b.finish(base))
        }
        Shape::NegativeAlpha => {
            b.push(Move::MirrorSymmetry)?;
            b.push(Move::Rotate { by: x.negative().len() })?;
            let base = b.peel_alpha(k)?;
            Ok(b.finish(base))
        }
        Shape::Mixed => {
            b.collapse_doubles()?;
            b.reduce_positive_part()?;
            let nlen = b.word.iter().take_while(|l| !l.is_positive()).count();
            if nlen > 3 {
                b.push(Move::InverseWordSymmetry)?;
                b.reduce_positive_part()?;
            }
            let index = np_table_index(&b.word)
                .ok_or_else(|| Error::Internal(format!("`{}` reached no base-table entry", b.word)))?;
            Ok(b.finish(BaseCase::NpTable { index }))
        }
        Shape::Positive | Shape::Negative => {
            if untwist(x).len() % 3 != 2 {
                return Err(not_fibred());
            }
            if x.shape() == Shape::Negative {
                b.push(Move::MirrorSymmetry)?;
            }
            b.collapse_doubles()?;
            // find a rotation and relabeling starting with a2 a1
            let n = b.word.len();
            let found = (0..n).find_map(|r| {
                let rotated = b.word.rotated(r);
                let first = rotated.first()?;
                let shift = (5 - first.index()) % 3;
                let relabeled = rotated.relabeled(i64::from(shift));
                (relabeled.letters().get(1) == Some(&Letter::pos(1))).then_some((r, shift))
            });
            let (r, shift) = found.ok_or_else(|| Error::Internal(format!("no α in `{}`", b.word)))?;
            if r != 0 {
                b.push(Move::Rotate { by: r })?;
            }
            if shift != 0 {
                b.push(Move::Relabel { shift })?;
            }
            let base = b.peel_alpha(1)?;
            Ok(b.finish(base))
        }
    }
}
