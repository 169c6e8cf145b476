//! Exact word problem for B3 and small conjugacy invariants.
//!
//! The fingerprint of a braid is its image under
//! `s1 ↦ [[1,1],[0,1]]`, `s2 ↦ [[1,0],[-1,1]]` in SL(2, Z) together with its
//! exponent sum. The kernel of the matrix map is generated by the fourth power
//! of the half twist `(s1 s2 s1)^4`, whose exponent sum is 12, so the pair is a
//! complete invariant of group elements. The property tests check this
//! against brute-force rewriting on short words.

use std::collections::{HashSet, VecDeque};
use std::ops::Mul;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::word::{reduce_word, ArtinLetter, BraidWord, Letter};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GroupFingerprint {
    /// Row-major 2×2 integer matrix of determinant 1.
    pub matrix: [[BigInt; 2]; 2],
    pub exp_sum: i64,
}

impl GroupFingerprint {
    pub fn identity() -> GroupFingerprint {
        GroupFingerprint { matrix: [[BigInt::one(), BigInt::zero()], [BigInt::zero(), BigInt::one()]], exp_sum: 0 }
    }

    pub fn determinant(&self) -> BigInt {
        let m = &self.matrix;
        &m[0][0] * &m[1][1] - &m[0][1] * &m[1][0]
    }

    pub fn trace(&self) -> BigInt {
        &self.matrix[0][0] + &self.matrix[1][1]
    }

    /// Right-multiply by one Artin generator, as column operations.
    pub fn push_artin(&mut self, letter: ArtinLetter) {
        for row in self.matrix.iter_mut() {
            let [c0, c1] = row;
            match letter {
                ArtinLetter::S1 => *c1 += &*c0,
                ArtinLetter::S1Inv => *c1 -= &*c0,
                ArtinLetter::S2 => *c0 -= &*c1,
                ArtinLetter::S2Inv => *c0 += &*c1,
            }
        }
    }

    pub fn push_letter(&mut self, letter: Letter) {
        for &a in letter.artin().as_slice() {
            self.push_artin(a);
        }
        self.exp_sum += letter.sign().value();
    }
}

// matrix product: the sums are entry arithmetic, not a slip
#[allow(clippy::suspicious_arithmetic_impl)]
impl Mul for &GroupFingerprint {
    type Output = GroupFingerprint;

    fn mul(self, rhs: &GroupFingerprint) -> GroupFingerprint {
        let (a, b) = (&self.matrix, &rhs.matrix);
        let entry = |i: usize, j: usize| &a[i][0] * &b[0][j] + &a[i][1] * &b[1][j];
        GroupFingerprint {
            matrix: [[entry(0, 0), entry(0, 1)], [entry(1, 0), entry(1, 1)]],
            exp_sum: self.exp_sum + rhs.exp_sum,
        }
    }
}

pub fn fingerprint(w: &BraidWord) -> GroupFingerprint {
    let mut fp = GroupFingerprint::identity();
    for &l in w {
        fp.push_letter(l);
    }
    fp
}

pub fn equal_in_group(u: &BraidWord, v: &BraidWord) -> bool {
    fingerprint(u) == fingerprint(v)
}

/// Trace and exponent sum, both invariant under conjugation.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ConjugacyProfile {
    pub trace: BigInt,
    pub exp_sum: i64,
}

impl From<&GroupFingerprint> for ConjugacyProfile {
    fn from(fp: &GroupFingerprint) -> Self {
        ConjugacyProfile { trace: fp.trace(), exp_sum: fp.exp_sum }
    }
}

pub fn conjugacy_profile(w: &BraidWord) -> ConjugacyProfile {
    ConjugacyProfile::from(&fingerprint(w))
}

/// Length-two words equal to the pair `(x, y)` by a single defining relation:
/// `a2a1 = a3a2 = a1a3`, its inverse, and `a_i ā_j = ā_{i+1} a_{j+1}` (`i ≠ j`).
pub fn pair_relations(x: Letter, y: Letter) -> Vec<(Letter, Letter)> {
    let (i, j) = (x.index(), y.index());
    match (x.is_positive(), y.is_positive()) {
        // a_{i+1} a_i
        (true, true) if j == crate::word::shift_index(i, -1) => (1..=3u8)
            .filter(|&t| t != i)
            .map(|t| (Letter::pos(t), Letter::pos(crate::word::shift_index(t, -1))))
            .collect(),
        // ā_i ā_{i+1}
        (false, false) if j == crate::word::shift_index(i, 1) => (1..=3u8)
            .filter(|&t| t != i)
            .map(|t| (Letter::neg(t), Letter::neg(crate::word::shift_index(t, 1))))
            .collect(),
        (true, false) if i != j => vec![(x.inverse().relabeled(1), y.inverse().relabeled(1))],
        (false, true) if i != j => vec![(x.inverse().relabeled(-1), y.inverse().relabeled(-1))],
        _ => Vec::new(),
    }
}

/// Result of [`geodesic_search`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GeodesicOutcome {
    /// The orbit closed; `min_length` is the shortest length reached.
    Complete { min_length: usize, witness: BraidWord },
    /// State limit reached; the best length is only an upper bound.
    Truncated { best_length: usize, witness: BraidWord },
}

impl GeodesicOutcome {
    pub fn length(&self) -> usize {
        match self {
            GeodesicOutcome::Complete { min_length, .. } => *min_length,
            GeodesicOutcome::Truncated { best_length, .. } => *best_length,
        }
    }

    pub fn witness(&self) -> &BraidWord {
        match self {
            GeodesicOutcome::Complete { witness, .. } | GeodesicOutcome::Truncated { witness, .. } => witness,
        }
    }

    pub fn is_complete(&self) -> bool {
        matches!(self, GeodesicOutcome::Complete { .. })
    }
}

pub const DEFAULT_STATE_LIMIT: usize = 1_000_000;

fn min_rotation(codes: &[u8]) -> Vec<u8> {
    let n = codes.len();
    if n == 0 {
        return Vec::new();
    }
    (0..n)
        .map(|r| {
            let mut v = codes.to_vec();
            v.rotate_left(r);
            v
        })
        .min()
        .unwrap()
}

fn codes_of(w: &BraidWord) -> Vec<u8> {
    w.iter().map(|l| l.code()).collect()
}

fn word_of(codes: &[u8]) -> BraidWord {
    codes.iter().map(|&c| Letter::from_code(c)).collect()
}

/// Words reachable from `codes` by one cancellation or one pair relation.
/// With `cyclic`, the wrap-around pair is also rewritten and results are
/// stored as minimal rotations.
fn neighbours(codes: &[u8], cyclic: bool, out: &mut Vec<Vec<u8>>) {
    let n = codes.len();
    let pairs = if cyclic && n >= 2 { n } else { n.saturating_sub(1) };
    for i in 0..pairs {
        let j = (i + 1) % n;
        let (x, y) = (Letter::from_code(codes[i]), Letter::from_code(codes[j]));
        if x.is_inverse_of(y) {
            let v: Vec<u8> = if j > i {
                codes[..i].iter().chain(&codes[j + 1..]).copied().collect()
            } else {
                codes[1..n - 1].to_vec()
            };
            out.push(if cyclic { min_rotation(&v) } else { v });
            continue;
        }
        for (x2, y2) in pair_relations(x, y) {
            let mut v = codes.to_vec();
            v[i] = x2.code();
            v[j] = y2.code();
            out.push(if cyclic { min_rotation(&v) } else { v });
        }
    }
}

/// Breadth-first closure of `w` under cancellations and the length-preserving
/// defining relations (and rotations when `cyclic`). Returns every word
/// reached and whether the orbit closed within `limit` words.
pub fn rewrite_orbit(w: &BraidWord, cyclic: bool, limit: usize) -> (HashSet<Vec<u8>>, bool) {
    let start = if cyclic { min_rotation(&codes_of(w)) } else { codes_of(w) };
    let mut seen = HashSet::new();
    let mut queue = VecDeque::new();
    seen.insert(start.clone());
    queue.push_back(start);
    let mut buf = Vec::new();
    while let Some(u) = queue.pop_front() {
        buf.clear();
        neighbours(&u, cyclic, &mut buf);
        for v in buf.drain(..) {
            if !seen.contains(&v) {
                if seen.len() >= limit {
                    return (seen, false);
                }
                seen.insert(v.clone());
                queue.push_back(v);
            }
        }
    }
    (seen, true)
}

/// Shortest word reachable from `w` by free and cyclic cancellation, cyclic
/// rotation and the length-preserving defining relations. No move lengthens
/// a word, so every word visited has length at most `l(w)`; `budget` must be
/// at least the length of the cyclic reduction of `w`.
pub fn geodesic_search(w: &BraidWord, budget: usize) -> Result<GeodesicOutcome> {
    geodesic_search_limited(w, budget, DEFAULT_STATE_LIMIT)
}

pub fn geodesic_search_limited(w: &BraidWord, budget: usize, limit: usize) -> Result<GeodesicOutcome> {
    let start = reduce_word(w, true);
    if budget < start.len() {
        return Err(Error::Precondition(format!("geodesic budget {budget} below reduced length {}", start.len())));
    }
    let (orbit, closed) = rewrite_orbit(&start, true, limit);
    let best = orbit
        .iter()
        .filter(|v| v.len() <= budget)
        .min_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)))
        .expect("orbit contains its start");
    let witness = word_of(best);
    Ok(if closed {
        GeodesicOutcome::Complete { min_length: best.len(), witness }
    } else {
        GeodesicOutcome::Truncated { best_length: best.len(), witness }
    })
}
