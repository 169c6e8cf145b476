//! Trivial / fibred / nearly fibred trichotomy for closed 3-braids, the
//! topmost knot Floer rank, and the closure's Euler characteristic data.

mod certificate;

use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::perm::component_count;
use crate::word::{mirror_word, BraidWord};
use crate::xu::{untwist, xu_form, xu_length, Shape, XuForm};

pub use certificate::{
    apply_move, band_mirror, certify_fibred, np_base_table, reduce_move, replay, verify_certificate, BaseCase,
    FiberCertificate, Move,
};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LinkClass {
    /// The 3-component trivial link.
    TrivialLink3,
    Fibred {
        certificate: FiberCertificate,
    },
    /// Not fibred; `witness` (one positive half twist added, to the mirror
    /// image when `mirrored`) is fibred.
    NearlyFibred {
        mirrored: bool,
        witness: BraidWord,
    },
}

impl LinkClass {
    pub fn name(&self) -> &'static str {
        match self {
            LinkClass::TrivialLink3 => "TrivialLink3",
            LinkClass::Fibred { .. } => "Fibred",
            LinkClass::NearlyFibred { .. } => "NearlyFibred",
        }
    }

    pub fn is_fibred(&self) -> bool {
        matches!(self, LinkClass::Fibred { .. })
    }
}

impl fmt::Display for LinkClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Rank of `ĤFK` in the topmost Alexander grading.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum HfkTopVerdict {
    Monic,
    RankTwo,
    /// The 3-component trivial link, where no rank is asserted.
    ExceptionalTrivial3,
}

impl fmt::Display for HfkTopVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            HfkTopVerdict::Monic => "Monic",
            HfkTopVerdict::RankTwo => "RankTwo",
            HfkTopVerdict::ExceptionalTrivial3 => "ExceptionalTrivial3",
        })
    }
}

/// A number in `½ℤ`, stored doubled.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct HalfInteger {
    pub twice: i64,
}

impl fmt::Display for HalfInteger {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.twice % 2 == 0 {
            write!(f, "{}", self.twice / 2)
        } else {
            write!(f, "{}/2", self.twice)
        }
    }
}

impl Serialize for HalfInteger {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct InvariantReport {
    pub components: usize,
    pub chi: i64,
    pub iota: i64,
    pub genus: Option<i64>,
    pub hfk_top: HfkTopVerdict,
    /// Topmost grading `l(P) + (|L| − 1)/2`, for shape `α^k P` only.
    pub top_grading: Option<HalfInteger>,
}

fn is_pure(x: &XuForm) -> bool {
    matches!(x.shape(), Shape::Positive | Shape::Negative)
}

/// Topmost rank from an already computed form.
pub fn hfk_top_of(x: &XuForm) -> HfkTopVerdict {
    if x.shape() == Shape::Identity {
        HfkTopVerdict::ExceptionalTrivial3
    } else if is_pure(x) && untwist(x).len() % 3 != 2 {
        HfkTopVerdict::RankTwo
    } else {
        HfkTopVerdict::Monic
    }
}

pub fn hfk_top_rank(w: &BraidWord) -> Result<HfkTopVerdict> {
    Ok(hfk_top_of(&xu_form(w)?))
}

/// `a_{i+1} P` for `P` starting with `a_i`: the result starts with `α`.
pub fn half_twist_witness(x: &XuForm) -> Result<BraidWord> {
    if x.shape() != Shape::Positive {
        return Err(Error::Precondition(format!("half twist witness needs a pure positive form, got {x}")));
    }
    let first = x.positive().first().expect("positive shape is nonempty");
    Ok(BraidWord::new(vec![first.relabeled(1)]).concat(x.positive()))
}

/// Verdict from an already computed form of the class of `w`.
pub fn classify_form(x: &XuForm) -> Result<LinkClass> {
    match x.shape() {
        Shape::Identity => Ok(LinkClass::TrivialLink3),
        Shape::AlphaPositive | Shape::NegativeAlpha | Shape::Mixed => {
            Ok(LinkClass::Fibred { certificate: certify_fibred(x)? })
        }
        Shape::Positive | Shape::Negative if untwist(x).len() % 3 == 2 => {
            Ok(LinkClass::Fibred { certificate: certify_fibred(x)? })
        }
        Shape::Positive => Ok(LinkClass::NearlyFibred { mirrored: false, witness: half_twist_witness(x)? }),
        Shape::Negative => {
            let mirrored = xu_form(&mirror_word(&x.expansion()))?;
            Ok(LinkClass::NearlyFibred { mirrored: true, witness: half_twist_witness(&mirrored)? })
        }
    }
}

pub fn classify(w: &BraidWord) -> Result<LinkClass> {
    classify_form(&xu_form(w)?)
}

/// Invariants from `w` and its already computed form.
pub fn invariants_of(w: &BraidWord, x: &XuForm) -> InvariantReport {
    let components = component_count(w);
    let chi = 3 - xu_length(x) as i64;
    let iota = (components as i64 - chi) / 2;
    let top_grading = (x.shape() == Shape::AlphaPositive)
        .then(|| HalfInteger { twice: 2 * x.positive().len() as i64 + components as i64 - 1 });
    InvariantReport {
        components,
        chi,
        iota,
        genus: (components == 1).then_some(iota),
        hfk_top: hfk_top_of(x),
        top_grading,
    }
}

pub fn invariants(w: &BraidWord) -> Result<InvariantReport> {
    Ok(invariants_of(w, &xu_form(w)?))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> BraidWord {
        BraidWord::parse(s).unwrap()
    }

    #[test]
    fn trichotomy_examples() {
        assert_eq!(classify(&BraidWord::empty()).unwrap(), LinkClass::TrivialLink3);
        match classify(&w("a2 a1")).unwrap() {
            LinkClass::Fibred { certificate } => assert_eq!(certificate.base_case, BaseCase::TorusAlpha { k: 1 }),
            other => panic!("{other:?}"),
        }
        assert_eq!(
            classify(&w("a1 a2 a3")).unwrap(),
            LinkClass::NearlyFibred { mirrored: false, witness: w("a2 a1 a2 a3") }
        );
        assert!(classify(&w("a2 a1 a2 a3")).unwrap().is_fibred());
    }

    #[test]
    fn mirrored_nearly_fibred() {
        match classify(&w("A1 A3 A2")).unwrap() {
            LinkClass::NearlyFibred { mirrored: true, witness } => assert!(classify(&witness).unwrap().is_fibred()),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn hfk_examples() {
        let t2 = w("a1 a2 a3").pow(2).concat(&w("a1"));
        assert_eq!(hfk_top_rank(&t2).unwrap(), HfkTopVerdict::RankTwo);
        assert_eq!(hfk_top_rank(&w("A2 a1 a2 a3")).unwrap(), HfkTopVerdict::Monic);
        assert_eq!(hfk_top_rank(&w("a1").pow(5)).unwrap(), HfkTopVerdict::RankTwo);
        assert_eq!(hfk_top_rank(&BraidWord::empty()).unwrap(), HfkTopVerdict::ExceptionalTrivial3);
    }

    #[test]
    fn invariant_examples() {
        let r = invariants(&BraidWord::empty()).unwrap();
        assert_eq!((r.components, r.chi, r.iota, r.genus), (3, 3, 0, None));

        let r = invariants(&BraidWord::alpha_power(2)).unwrap();
        assert_eq!((r.components, r.chi, r.iota, r.genus), (1, -1, 1, Some(1)));
        assert_eq!(r.top_grading, Some(HalfInteger { twice: 0 }));

        let r = invariants(&w("A2 a1")).unwrap();
        assert_eq!((r.components, r.chi, r.iota, r.genus), (1, 1, 0, Some(0)));
        assert_eq!(r.top_grading, None);
    }

    #[test]
    fn half_twist_examples() {
        let form = |s: &str| XuForm::from_parts(0, BraidWord::empty(), w(s)).unwrap();
        assert_eq!(half_twist_witness(&form("a1 a2 a3")).unwrap(), w("a2 a1 a2 a3"));
        assert_eq!(half_twist_witness(&form("a1 a1 a1")).unwrap(), w("a2 a1 a1 a1"));
        assert_eq!(half_twist_witness(&form("a2 a3 a1")).unwrap(), w("a3 a2 a3 a1"));
        assert!(half_twist_witness(&XuForm::identity()).is_err());
    }

    #[test]
    fn half_integer_display() {
        assert_eq!(HalfInteger { twice: 3 }.to_string(), "3/2");
        assert_eq!(HalfInteger { twice: 4 }.to_string(), "2");
    }
}
