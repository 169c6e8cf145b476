//! Xu's shortest conjugacy representatives `α^k P`, `N α^-k` and `N P`.

mod normalizer;
pub mod rewrite;

use std::fmt;
use std::sync::OnceLock;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::word::{shift_index, BraidWord, Letter, Sign};

use normalizer::{path_to, super_summit_set, NormalState, Normalizer};
pub use rewrite::{rewrite_step, Rule, Token, Trace, TraceStep};

/// Environment variable overriding the rewriting step guard.
pub const STEP_BUDGET_ENV: &str = "BRAID3_STEP_BUDGET";

/// Step guard for normalizing a word of length `len`: `10·len² + 100`
/// unless overridden by `BRAID3_STEP_BUDGET`.
pub fn step_budget(len: usize) -> usize {
    static OVERRIDE: OnceLock<Option<usize>> = OnceLock::new();
    let over = OVERRIDE.get_or_init(|| std::env::var(STEP_BUDGET_ENV).ok().and_then(|v| v.trim().parse().ok()));
    over.unwrap_or(10 * len * len + 100)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Monotonicity {
    StrictlyIncreasing,
    Nondecreasing,
    Neither,
}

/// Classify a positive word by its index steps, read cyclically (`a3` is
/// followed by `a1`). With `cyclic` set the last-to-first step counts too
/// (for words of length at least two).
pub fn monotonicity(p: &BraidWord, cyclic: bool) -> Result<Monotonicity> {
    if !p.is_positive() {
        return Err(Error::Precondition(format!("monotonicity of non-positive word `{p}`")));
    }
    let mut steps: Vec<(u8, u8)> = p.letters().windows(2).map(|w| (w[0].index(), w[1].index())).collect();
    if cyclic && p.len() >= 2 {
        steps.push((p.last().unwrap().index(), p.first().unwrap().index()));
    }
    let mut strict = true;
    for (a, b) in steps {
        if b == shift_index(a, 1) {
            continue;
        }
        if b == a {
            strict = false;
        } else {
            return Ok(Monotonicity::Neither);
        }
    }
    Ok(if strict { Monotonicity::StrictlyIncreasing } else { Monotonicity::Nondecreasing })
}

/// Which of Xu's shapes a form has.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Shape {
    /// The empty word.
    Identity,
    /// `α^k P` with `k ≥ 1`.
    AlphaPositive,
    /// `N α^-k` with `k ≥ 1`.
    NegativeAlpha,
    /// `N P`, both nonempty.
    Mixed,
    /// `P` alone.
    Positive,
    /// `N` alone.
    Negative,
}

/// A shortest conjugacy representative.
///
/// `k` is the α-exponent: positive means an `α^k` prefix before `P`,
/// negative means an `α^k` suffix after `N`. `negative` holds `N` (all
/// letters inverse), `positive` holds `P`. `orbit_size` counts the
/// representatives of this shape in the conjugacy class, of which this is the
/// lexicographically least.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct XuForm {
    k: i64,
    negative: BraidWord,
    positive: BraidWord,
    orbit_size: usize,
}

impl XuForm {
    /// Build a form from its parts, checking the shape invariants.
    pub fn from_parts(k: i64, negative: BraidWord, positive: BraidWord) -> Result<XuForm> {
        if !negative.is_negative() || !positive.is_positive() {
            return Err(Error::Precondition("N must be negative and P positive".into()));
        }
        if (k > 0 && !negative.is_empty()) || (k < 0 && !positive.is_empty()) {
            return Err(Error::Precondition(format!("k = {k} incompatible with N = `{negative}`, P = `{positive}`")));
        }
        if monotonicity(&positive, false)? == Monotonicity::Neither
            || monotonicity(&negative.inverse(), false)? == Monotonicity::Neither
        {
            return Err(Error::Precondition("P and the inverse of N must be nondecreasing".into()));
        }
        Ok(XuForm { k, negative, positive, orbit_size: 1 })
    }

    pub fn identity() -> XuForm {
        XuForm { k: 0, negative: BraidWord::empty(), positive: BraidWord::empty(), orbit_size: 1 }
    }

    pub fn k(&self) -> i64 {
        self.k
    }

    pub fn negative(&self) -> &BraidWord {
        &self.negative
    }

    pub fn positive(&self) -> &BraidWord {
        &self.positive
    }

    pub fn orbit_size(&self) -> usize {
        self.orbit_size
    }

    /// `N̄`, the positive word inverse to `N`.
    pub fn negative_bar(&self) -> BraidWord {
        self.negative.inverse()
    }

    pub fn len(&self) -> usize {
        xu_length(self)
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn shape(&self) -> Shape {
        match (self.k, self.negative.is_empty(), self.positive.is_empty()) {
            (0, true, true) => Shape::Identity,
            (k, _, _) if k > 0 => Shape::AlphaPositive,
            (k, _, _) if k < 0 => Shape::NegativeAlpha,
            (_, false, false) => Shape::Mixed,
            (_, true, false) => Shape::Positive,
            _ => Shape::Negative,
        }
    }

    pub fn tokens(&self) -> Vec<Token> {
        let mut out: Vec<Token> = self.negative.iter().map(|&l| Token::Band(l)).collect();
        let delta = if self.k >= 0 { Token::ALPHA } else { Token::ALPHA_INV };
        out.extend(std::iter::repeat_n(delta, self.k.unsigned_abs() as usize));
        out.extend(self.positive.iter().map(|&l| Token::Band(l)));
        out
    }

    /// The form as a band word, `α` written as `a2 a1`.
    pub fn expansion(&self) -> BraidWord {
        rewrite::expand_tokens(&self.tokens())
    }

    /// Same form with every index shifted cyclically.
    pub fn relabeled(&self, by: i64) -> XuForm {
        XuForm {
            k: self.k,
            negative: self.negative.relabeled(by),
            positive: self.positive.relabeled(by),
            orbit_size: self.orbit_size,
        }
    }

    fn sort_key(&self) -> (Vec<u8>, Vec<u8>) {
        (self.negative.iter().map(|l| l.index()).collect(), self.positive.iter().map(|l| l.index()).collect())
    }

    fn from_shaped_tokens(tokens: &[Token]) -> XuForm {
        let mut k = 0;
        let mut negative = Vec::new();
        let mut positive = Vec::new();
        for t in tokens {
            match t {
                Token::Alpha(s) => k += s.value(),
                Token::Band(l) if l.is_positive() => positive.push(*l),
                Token::Band(l) => negative.push(*l),
            }
        }
        XuForm { k, negative: BraidWord::new(negative), positive: BraidWord::new(positive), orbit_size: 1 }
    }
}

impl fmt::Display for XuForm {
    /// `N=<tokens>;k=<k>;P=<tokens>`
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "N={};k={};P={}", self.negative, self.k, self.positive)
    }
}

/// `2|k| + l(N) + l(P)`.
pub fn xu_length(x: &XuForm) -> usize {
    2 * x.k.unsigned_abs() as usize + x.negative.len() + x.positive.len()
}

fn collapse_runs(w: &BraidWord) -> BraidWord {
    let mut out: Vec<Letter> = Vec::with_capacity(w.len());
    for &l in w {
        if out.last() != Some(&l) {
            out.push(l);
        }
    }
    BraidWord::new(out)
}

/// `UT(x)`: collapse every doubled letter `a_i a_i` in `P` (and `ā_i ā_i`
/// in `N`) until both parts are strictly increasing. `k` is unchanged.
pub fn untwist(x: &XuForm) -> XuForm {
    XuForm {
        k: x.k,
        negative: collapse_runs(&x.negative),
        positive: collapse_runs(&x.positive),
        orbit_size: x.orbit_size,
    }
}

/// Normal form together with the rewriting trace from the input to the
/// expansion of the form.
#[derive(Clone, Debug)]
pub struct XuOutput {
    pub form: XuForm,
    pub trace: Trace,
}

/// Xu form of the conjugacy class of `w`, with a replayable trace.
pub fn to_xu_form(w: &BraidWord) -> Result<XuOutput> {
    normalize(w, true)
}

/// Xu form of the conjugacy class of `w`, without recording a trace.
pub fn xu_form(w: &BraidWord) -> Result<XuForm> {
    normalize(w, false).map(|o| o.form)
}

fn normalize(w: &BraidWord, traced: bool) -> Result<XuOutput> {
    let budget = step_budget(w.len());
    let start = rewrite::tokens_of(w);
    let mut nz = Normalizer::new(start.clone(), budget, traced);
    nz.cyclic_reduce()?;
    nz.make_delta_positive()?;
    nz.cyclic_normal()?;
    let root = nz.state();

    let (summit, parent) = super_summit_set(&root, budget)?;
    let mut best: Option<(XuForm, NormalState)> = None;
    for state in &summit {
        let mut shaper = Normalizer::new(state.tokens(), budget, false);
        shaper.make_xu_shape()?;
        let form = XuForm::from_shaped_tokens(&shaper.word);
        if best.as_ref().is_none_or(|(b, _)| form.sort_key() < b.sort_key()) {
            best = Some((form, state.clone()));
        }
    }
    let (mut form, target) = best.expect("super summit set is never empty");
    form.orbit_size = summit.len();

    for (s, expected) in path_to(&target, &parent) {
        nz.conjugate(s)?;
        if nz.state() != expected {
            return Err(Error::Internal(format!("conjugation path diverged at `{}`", rewrite::token_string(&nz.word))));
        }
    }
    nz.make_xu_shape()?;
    if nz.word != form.tokens() {
        return Err(Error::Internal(format!(
            "shaped word `{}` differs from chosen form {form}",
            rewrite::token_string(&nz.word)
        )));
    }
    nz.expand()?;
    let trace = Trace { start, steps: nz.take_steps() };
    Ok(XuOutput { form, trace })
}

/// The sign of a letter within the form's parts: kept for callers that build
/// parts by hand.
pub fn part_sign(x: &XuForm) -> Option<Sign> {
    match (x.negative.is_empty(), x.positive.is_empty()) {
        (true, false) => Some(Sign::Pos),
        (false, true) => Some(Sign::Neg),
        _ => None,
    }
}
