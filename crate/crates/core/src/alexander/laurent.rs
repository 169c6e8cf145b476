use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

/// Integer Laurent polynomial in `t`; zero coefficients are never stored.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct LaurentPoly {
    terms: BTreeMap<i64, BigInt>,
}

impl LaurentPoly {
    pub fn zero() -> LaurentPoly {
        LaurentPoly::default()
    }

    pub fn one() -> LaurentPoly {
        LaurentPoly::monomial(1, 0)
    }

    /// `c·t^e`.
    pub fn monomial(c: impl Into<BigInt>, e: i64) -> LaurentPoly {
        let mut p = LaurentPoly::zero();
        p.add_term(e, c.into());
        p
    }

    /// `t`.
    pub fn t() -> LaurentPoly {
        LaurentPoly::monomial(1, 1)
    }

    /// From `(exponent, coefficient)` pairs; repeated exponents are summed.
    pub fn from_terms<C: Into<BigInt>>(terms: impl IntoIterator<Item = (i64, C)>) -> LaurentPoly {
        let mut p = LaurentPoly::zero();
        for (e, c) in terms {
            p.add_term(e, c.into());
        }
        p
    }

    fn add_term(&mut self, e: i64, c: BigInt) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(e).or_insert_with(BigInt::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&e);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, e: i64) -> BigInt {
        self.terms.get(&e).cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn min_exponent(&self) -> Option<i64> {
        self.terms.keys().next().copied()
    }

    pub fn max_exponent(&self) -> Option<i64> {
        self.terms.keys().next_back().copied()
    }

    /// `max exponent − min exponent`; `None` for zero.
    pub fn breadth(&self) -> Option<i64> {
        Some(self.max_exponent()? - self.min_exponent()?)
    }

    /// Coefficient at the highest exponent.
    pub fn leading(&self) -> Option<&BigInt> {
        self.terms.values().next_back()
    }

    /// Coefficient at the lowest exponent.
    pub fn trailing(&self) -> Option<&BigInt> {
        self.terms.values().next()
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, &BigInt)> + '_ {
        self.terms.iter().map(|(&e, c)| (e, c))
    }

    /// Multiply by `t^by`.
    pub fn shift(&self, by: i64) -> LaurentPoly {
        LaurentPoly { terms: self.terms.iter().map(|(&e, c)| (e + by, c.clone())).collect() }
    }

    /// `p(t⁻¹)`.
    pub fn invert_variable(&self) -> LaurentPoly {
        LaurentPoly { terms: self.terms.iter().map(|(&e, c)| (-e, c.clone())).collect() }
    }

    /// Value at `t = 1`.
    pub fn eval_one(&self) -> BigInt {
        self.terms.values().sum()
    }

    /// Exact quotient `self / divisor`, or `None` when the division leaves a
    /// remainder.
    pub fn div_exact(&self, divisor: &LaurentPoly) -> Option<LaurentPoly> {
        let (d_top, d_lead) = (divisor.max_exponent()?, divisor.leading()?.clone());
        let mut rem = self.clone();
        let mut quotient = LaurentPoly::zero();
        let d_low = divisor.min_exponent()?;
        while let (Some(top), Some(lead)) = (rem.max_exponent(), rem.leading().cloned()) {
            if top - (d_top - d_low) < self.min_exponent()? - d_low {
                return None;
            }
            if !(&lead % &d_lead).is_zero() {
                return None;
            }
            let q = LaurentPoly::monomial(&lead / &d_lead, top - d_top);
            rem = &rem - &(&q * divisor);
            quotient = &quotient + &q;
        }
        Some(quotient)
    }

    /// Symmetric under `t ↦ t⁻¹` up to a unit `±t^j`.
    pub fn is_symmetric(&self) -> bool {
        let (Some(lo), Some(hi)) = (self.min_exponent(), self.max_exponent()) else {
            return true;
        };
        let mirrored = self.invert_variable().shift(lo + hi);
        mirrored == *self || mirrored == -self
    }

    /// Canonical representative of `±t^j · self`: exponents centred on zero
    /// (lowest exponent `−⌊breadth/2⌋`) and positive leading coefficient.
    pub fn normalized(&self) -> LaurentPoly {
        let (Some(lo), Some(b)) = (self.min_exponent(), self.breadth()) else {
            return LaurentPoly::zero();
        };
        let p = self.shift(-(b / 2) - lo);
        if p.leading().is_some_and(|c| c.is_negative()) {
            -&p
        } else {
            p
        }
    }
}

impl fmt::Display for LaurentPoly {
    /// Descending exponents: `t - 1 + t^-1`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (n, (&e, c)) in self.terms.iter().rev().enumerate() {
            let mag = c.abs();
            match (n, c.is_negative()) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let var = match e {
                0 => String::new(),
                1 => "t".to_string(),
                _ => format!("t^{e}"),
            };
            if var.is_empty() {
                write!(f, "{mag}")?;
            } else if mag.is_one() {
                write!(f, "{var}")?;
            } else {
                write!(f, "{mag}{var}")?;
            }
        }
        Ok(())
    }
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (&e, c) in &rhs.terms {
            out.add_term(e, c.clone());
        }
        out
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (&e, c) in &rhs.terms {
            out.add_term(e, -c);
        }
        out
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = LaurentPoly::zero();
        for (&a, x) in &self.terms {
            for (&b, y) in &rhs.terms {
                out.add_term(a + b, x * y);
            }
        }
        out
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly { terms: self.terms.iter().map(|(&e, c)| (e, -c)).collect() }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(terms: &[(i64, i64)]) -> LaurentPoly {
        LaurentPoly::from_terms(terms.iter().copied())
    }

    #[test]
    fn arithmetic() {
        let a = p(&[(0, 1), (1, 1)]);
        let b = p(&[(0, 1), (1, -1)]);
        assert_eq!(&a * &b, p(&[(0, 1), (2, -1)]));
        assert!((&a - &a).is_zero());
        assert_eq!(p(&[(3, 0)]), LaurentPoly::zero());
    }

    #[test]
    fn exact_division() {
        let cyc = p(&[(0, 1), (1, 1), (2, 1)]);
        let q = p(&[(-1, 1), (0, -1), (1, 1)]);
        assert_eq!((&q * &cyc).div_exact(&cyc), Some(q));
        assert_eq!(p(&[(0, 1)]).div_exact(&cyc), None);
        assert_eq!(p(&[(0, 1), (1, 1)]).div_exact(&cyc), None);
        assert_eq!(LaurentPoly::zero().div_exact(&cyc), Some(LaurentPoly::zero()));
    }

    #[test]
    fn normalization_and_rendering() {
        let trefoil = p(&[(2, -1), (3, 1), (4, -1)]).normalized();
        assert_eq!(trefoil.to_string(), "t - 1 + t^-1");
        assert!(trefoil.is_symmetric());
        assert_eq!(p(&[(5, -1)]).normalized(), LaurentPoly::one());
        assert_eq!(p(&[(0, 1), (1, -1)]).normalized().to_string(), "t - 1");
        assert_eq!(p(&[(-1, 1), (0, 3), (1, -1)]).to_string(), "-t + 3 + t^-1");
        assert_eq!(p(&[(2, 2), (0, -3)]).to_string(), "2t^2 - 3");
        assert_eq!(LaurentPoly::zero().to_string(), "0");
        assert!(!p(&[(0, 1), (1, 2)]).is_symmetric());
    }
}
