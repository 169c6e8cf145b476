//! Reduced Burau representation and the Alexander polynomial of the closure.
//!
//! Generator images (acting on column vectors):
//!
//! ```text
//! s1 ↦ [[-t, 1], [0, 1]]      s2 ↦ [[1, 0], [t, -t]]
//! ```
//!
//! At `t = 1` these are the permutation matrices of `(1 2)` and `(2 3)` on
//! the sum-zero lattice with basis `e1 − e2, e2 − e3`. For a closed 3-braid
//! `det(I − B(w)) = (1 + t + t²)·Δ(t)` up to a unit `±t^j`.

mod laurent;

use num_bigint::BigInt;
use num_traits::{One, Signed};
use serde::Serialize;

pub use laurent::LaurentPoly;

use crate::error::{Error, Result};
use crate::word::{ArtinLetter, BraidWord};

/// 2×2 matrix over `ℤ[t, t⁻¹]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BurauMatrix(pub [[LaurentPoly; 2]; 2]);

impl BurauMatrix {
    pub fn identity() -> BurauMatrix {
        BurauMatrix([[LaurentPoly::one(), LaurentPoly::zero()], [LaurentPoly::zero(), LaurentPoly::one()]])
    }

    fn from_terms(m: [[&[(i64, i64)]; 2]; 2]) -> BurauMatrix {
        BurauMatrix(m.map(|row| row.map(|terms| LaurentPoly::from_terms(terms.iter().copied()))))
    }

    pub fn generator(letter: ArtinLetter) -> BurauMatrix {
        match letter {
            ArtinLetter::S1 => BurauMatrix::from_terms([[&[(1, -1)], &[(0, 1)]], [&[], &[(0, 1)]]]),
            ArtinLetter::S1Inv => BurauMatrix::from_terms([[&[(-1, -1)], &[(-1, 1)]], [&[], &[(0, 1)]]]),
            ArtinLetter::S2 => BurauMatrix::from_terms([[&[(0, 1)], &[]], [&[(1, 1)], &[(1, -1)]]]),
            ArtinLetter::S2Inv => BurauMatrix::from_terms([[&[(0, 1)], &[]], [&[(0, 1)], &[(-1, -1)]]]),
        }
    }

    pub fn mul(&self, rhs: &BurauMatrix) -> BurauMatrix {
        let (a, b) = (&self.0, &rhs.0);
        let entry = |i: usize, j: usize| &(&a[i][0] * &b[0][j]) + &(&a[i][1] * &b[1][j]);
        BurauMatrix([[entry(0, 0), entry(0, 1)], [entry(1, 0), entry(1, 1)]])
    }

    pub fn determinant(&self) -> LaurentPoly {
        let m = &self.0;
        &(&m[0][0] * &m[1][1]) - &(&m[0][1] * &m[1][0])
    }

    /// Entry-wise value at `t = 1`.
    pub fn at_one(&self) -> [[BigInt; 2]; 2] {
        self.0.clone().map(|row| row.map(|p| p.eval_one()))
    }
}

pub fn burau_reduced(w: &BraidWord) -> BurauMatrix {
    w.artin_letters().into_iter().fold(BurauMatrix::identity(), |acc, a| acc.mul(&BurauMatrix::generator(a)))
}

/// Normalized Alexander polynomial of the closure of `w`; zero for split
/// closures.
pub fn alexander_poly(w: &BraidWord) -> Result<LaurentPoly> {
    let b = burau_reduced(w);
    let one = LaurentPoly::one();
    let i_minus_b = BurauMatrix([[&one - &b.0[0][0], -&b.0[0][1]], [-&b.0[1][0], &one - &b.0[1][1]]]);
    let det = i_minus_b.determinant();
    let cyclotomic = LaurentPoly::from_terms([(0, 1), (1, 1), (2, 1)]);
    det.div_exact(&cyclotomic)
        .map(|p| p.normalized())
        .ok_or_else(|| Error::Internal(format!("det(I - B) = {det} is not divisible by 1 + t + t^2 for `{w}`")))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Monicity {
    Zero,
    Monic { breadth: i64 },
    Nonmonic { leading: String, breadth: i64 },
}

impl Monicity {
    pub fn is_monic(&self) -> bool {
        matches!(self, Monicity::Monic { .. })
    }
}

/// Monic iff both extreme coefficients are `±1`.
pub fn monicity_report(p: &LaurentPoly) -> Monicity {
    let (Some(breadth), Some(lead), Some(trail)) = (p.breadth(), p.leading(), p.trailing()) else {
        return Monicity::Zero;
    };
    if lead.abs().is_one() && trail.abs().is_one() {
        Monicity::Monic { breadth }
    } else {
        Monicity::Nonmonic { leading: lead.to_string(), breadth }
    }
}
