//! The rewriting pipeline behind [`super::to_xu_form`].
//!
//! Working words have the shape `α^p P` with `P` a positive band word. In B3
//! with band generators the only proper simple elements are the three
//! letters, so `α^p P` is in left normal form exactly when `P` has no
//! adjacency `a_{i+1} a_i`, i.e. when `P` is nondecreasing. Each such
//! adjacency found (including the one across the cyclic seam) is traded for
//! one more `α`, which raises the infimum and lowers the supremum at once.
//! When no adjacency is left the word lies in its super summit set, whose
//! elements are the minimal-length representatives of the class. That set
//! is closed up by conjugating with the simple elements `a1, a2, a3, α`.

use std::collections::{HashMap, VecDeque};

use crate::error::{Error, Result};
use crate::word::{shift_index, Letter, Sign};

use super::rewrite::{token_string, Rule, Token, TraceStep};

/// A word `α^p a_{e1} ... a_{er}` in left normal form.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub(crate) struct NormalState {
    pub p: i64,
    pub positive: Vec<u8>,
}

impl NormalState {
    pub fn tokens(&self) -> Vec<Token> {
        let delta = if self.p >= 0 { Token::ALPHA } else { Token::ALPHA_INV };
        std::iter::repeat_n(delta, self.p.unsigned_abs() as usize)
            .chain(self.positive.iter().map(|&i| Token::pos(i)))
            .collect()
    }
}

pub(crate) struct Normalizer {
    pub word: Vec<Token>,
    steps: Option<Vec<TraceStep>>,
    budget: usize,
    used: usize,
}

impl Normalizer {
    pub fn new(word: Vec<Token>, budget: usize, traced: bool) -> Normalizer {
        Normalizer { word, steps: traced.then(Vec::new), budget, used: 0 }
    }

    pub fn take_steps(&mut self) -> Vec<TraceStep> {
        self.steps.take().unwrap_or_default()
    }

    fn step(&mut self, s: TraceStep) -> Result<()> {
        self.used += 1;
        if self.used > self.budget {
            return Err(Error::StepBudgetExceeded { budget: self.budget, word: token_string(&self.word) });
        }
        s.apply(&mut self.word)?;
        if let Some(steps) = &mut self.steps {
            steps.push(s);
        }
        Ok(())
    }

    fn rw(&mut self, rule: Rule, at: usize) -> Result<()> {
        self.step(TraceStep::Rewrite { rule, at })
    }

    pub fn free_reduce(&mut self) -> Result<()> {
        let mut i = 0;
        while i + 1 < self.word.len() {
            if self.word[i].is_inverse_of(self.word[i + 1]) {
                self.rw(Rule::Cancel, i)?;
                i = i.saturating_sub(1);
            } else {
                i += 1;
            }
        }
        Ok(())
    }

    pub fn cyclic_reduce(&mut self) -> Result<()> {
        self.free_reduce()?;
        while self.word.len() >= 2 && self.word[0].is_inverse_of(*self.word.last().unwrap()) {
            self.step(TraceStep::RotateRight)?;
            self.rw(Rule::Cancel, 0)?;
        }
        Ok(())
    }

    fn delta_prefix(&self) -> usize {
        self.word.iter().take_while(|t| t.is_alpha()).count()
    }

    /// Rewrite to `α^p P` with `P` positive: split every negative letter as
    /// `ā_i = ᾱ a_{i+1}` and gather all deltas at the front.
    pub fn make_delta_positive(&mut self) -> Result<()> {
        let mut i = 0;
        while i < self.word.len() {
            match self.word[i] {
                Token::Band(l) if !l.is_positive() => {
                    self.rw(Rule::DeltaSplit, i)?;
                    i += 2;
                }
                _ => i += 1,
            }
        }
        self.gather_deltas()
    }

    /// Bubble every delta token to the front, cancelling opposite pairs.
    fn gather_deltas(&mut self) -> Result<()> {
        let mut d = 0;
        let mut j = 0;
        while j < self.word.len() {
            if !self.word[j].is_alpha() {
                j += 1;
                continue;
            }
            for pos in (d..j).rev() {
                self.rw(Rule::DeltaLeft, pos)?;
            }
            if d > 0 && self.word[d - 1] != self.word[d] {
                self.rw(Rule::Cancel, d - 1)?;
                d -= 1;
            } else {
                d += 1;
            }
            j = d;
        }
        Ok(())
    }

    /// From `α^p P` (P positive) to left normal form: extract `α` from every
    /// decreasing adjacency `a_{i+1} a_i` and move it to the front.
    pub fn left_normal(&mut self) -> Result<()> {
        loop {
            let d = self.delta_prefix();
            let found =
                (d..self.word.len().saturating_sub(1)).find(|&i| Rule::DeltaExtract.matches(&self.word, i).is_some());
            let Some(i) = found else { return Ok(()) };
            self.rw(Rule::DeltaExtract, i)?;
            for pos in (d..i).rev() {
                self.rw(Rule::DeltaLeft, pos)?;
            }
            if d > 0 && self.word[d - 1] != self.word[d] {
                self.rw(Rule::Cancel, d - 1)?;
            }
        }
    }

    /// Left normal form plus the cyclic seam: while the last letter, carried
    /// across `α^p`, forms a decreasing adjacency with the first letter of
    /// `P`, rotate it to the front and extract.
    pub fn cyclic_normal(&mut self) -> Result<()> {
        loop {
            self.left_normal()?;
            let state = self.state();
            let r = state.positive.len();
            if r < 2 {
                return Ok(());
            }
            let carried = shift_index(state.positive[r - 1], state.p);
            if carried != shift_index(state.positive[0], 1) {
                return Ok(());
            }
            let d = self.delta_prefix();
            self.step(TraceStep::RotateRight)?;
            for pos in 0..d {
                self.rw(Rule::DeltaLeft, pos)?;
            }
        }
    }

    /// Current word read as `α^p P`; only valid after [`Self::make_delta_positive`].
    pub fn state(&self) -> NormalState {
        let d = self.delta_prefix();
        let p = match self.word.first() {
            Some(Token::Alpha(Sign::Neg)) => -(d as i64),
            _ => d as i64,
        };
        let positive = self.word[d..]
            .iter()
            .map(|t| match t {
                Token::Band(l) if l.is_positive() => l.index(),
                _ => panic!("not in delta-positive shape: {}", token_string(&self.word)),
            })
            .collect();
        NormalState { p, positive }
    }

    /// Conjugate by a simple element and renormalize.
    pub fn conjugate(&mut self, by: Token) -> Result<()> {
        self.step(TraceStep::Conjugate(by))?;
        self.make_delta_positive()?;
        self.left_normal()
    }

    /// From `α^p P` to one of Xu's shapes. For `p < 0` each `ᾱ` absorbs the
    /// next positive letter (`ᾱ a_i = ā_{i-1}`); leftover `ᾱ`s move to the end.
    pub fn make_xu_shape(&mut self) -> Result<()> {
        let state = self.state();
        if state.p >= 0 {
            return Ok(());
        }
        let m = state.p.unsigned_abs() as usize;
        let r = state.positive.len();
        let absorbed = m.min(r);
        for t in 0..absorbed {
            // layout: ᾱ^(m-t) N_t P_rest
            let from = m - t - 1;
            for pos in from..from + t {
                self.rw(Rule::DeltaRight, pos)?;
            }
            self.rw(Rule::DeltaAbsorb, from + t)?;
        }
        // layout: ᾱ^(m-absorbed) N
        let left = m - absorbed;
        for u in 0..left {
            let from = left - u - 1;
            let end = self.word.len() - u - 1;
            for pos in from..end {
                self.rw(Rule::DeltaRight, pos)?;
            }
        }
        Ok(())
    }

    /// Write every delta token out as band letters.
    pub fn expand(&mut self) -> Result<()> {
        let mut i = self.word.len();
        while i > 0 {
            i -= 1;
            if self.word[i].is_alpha() {
                self.rw(Rule::DeltaExpand, i)?;
            }
        }
        Ok(())
    }
}

/// Left normal form of `tokens`, untraced.
pub(crate) fn normal_state(tokens: Vec<Token>, budget: usize) -> Result<NormalState> {
    let mut nz = Normalizer::new(tokens, budget, false);
    nz.make_delta_positive()?;
    nz.left_normal()?;
    Ok(nz.state())
}

pub(crate) const SIMPLE_CONJUGATORS: [Token; 4] =
    [Token::Band(Letter::pos(1)), Token::Band(Letter::pos(2)), Token::Band(Letter::pos(3)), Token::ALPHA];

pub(crate) type ParentMap = HashMap<NormalState, (NormalState, Token)>;

/// The super summit set containing `start`, with a BFS parent map for
/// reconstructing conjugation paths.
pub(crate) fn super_summit_set(start: &NormalState, budget: usize) -> Result<(Vec<NormalState>, ParentMap)> {
    let mut order = vec![start.clone()];
    let mut parent: ParentMap = HashMap::new();
    let mut queue = VecDeque::from([start.clone()]);
    let r = start.positive.len();
    while let Some(x) = queue.pop_front() {
        for &s in &SIMPLE_CONJUGATORS {
            let mut toks = Vec::with_capacity(r + x.p.unsigned_abs() as usize + 2);
            toks.push(s.inverse());
            toks.extend(x.tokens());
            toks.push(s);
            let y = normal_state(toks, budget)?;
            if y.p != start.p || y.positive.len() != r || y == *start || parent.contains_key(&y) {
                continue;
            }
            parent.insert(y.clone(), (x.clone(), s));
            order.push(y.clone());
            queue.push_back(y);
        }
    }
    Ok((order, parent))
}

/// Conjugators leading from the BFS root to `target`.
pub(crate) fn path_to(target: &NormalState, parent: &ParentMap) -> Vec<(Token, NormalState)> {
    let mut path = Vec::new();
    let mut cur = target.clone();
    while let Some((prev, s)) = parent.get(&cur) {
        path.push((*s, cur.clone()));
        cur = prev.clone();
    }
    path.reverse();
    path
}
