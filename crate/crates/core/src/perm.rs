use std::fmt;

use crate::word::BraidWord;

/// A permutation of the three strands, stored as images of `1, 2, 3`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Permutation3([u8; 3]);

impl Permutation3 {
    pub fn identity() -> Permutation3 {
        Permutation3([1, 2, 3])
    }

    pub fn from_images(images: [u8; 3]) -> Option<Permutation3> {
        let mut seen = [false; 3];
        for &i in &images {
            if !(1..=3).contains(&i) || seen[i as usize - 1] {
                return None;
            }
            seen[i as usize - 1] = true;
        }
        Some(Permutation3(images))
    }

    pub fn transposition(i: u8, j: u8) -> Permutation3 {
        let mut images = [1, 2, 3];
        images.swap(i as usize - 1, j as usize - 1);
        Permutation3(images)
    }

    pub fn image(&self, i: u8) -> u8 {
        self.0[i as usize - 1]
    }

    pub fn images(&self) -> [u8; 3] {
        self.0
    }

    /// `self` first, then `next`.
    pub fn then(&self, next: &Permutation3) -> Permutation3 {
        Permutation3(self.0.map(|i| next.image(i)))
    }

    pub fn inverse(&self) -> Permutation3 {
        let mut images = [0; 3];
        for i in 1..=3u8 {
            images[self.image(i) as usize - 1] = i;
        }
        Permutation3(images)
    }

    pub fn cycle_count(&self) -> usize {
        let mut seen = [false; 3];
        let mut cycles = 0;
        for start in 1..=3u8 {
            if seen[start as usize - 1] {
                continue;
            }
            cycles += 1;
            let mut i = start;
            while !seen[i as usize - 1] {
                seen[i as usize - 1] = true;
                i = self.image(i);
            }
        }
        cycles
    }
}

impl fmt::Display for Permutation3 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{} {} {}]", self.0[0], self.0[1], self.0[2])
    }
}

/// Strand permutation of `w`, letters composed left to right:
/// `a1 ↦ (1 2)`, `a2 ↦ (2 3)`, `a3 ↦ (1 3)`.
pub fn permutation_of(w: &BraidWord) -> Permutation3 {
    w.iter().fold(Permutation3::identity(), |acc, l| {
        let t = match l.index() {
            1 => Permutation3::transposition(1, 2),
            2 => Permutation3::transposition(2, 3),
            _ => Permutation3::transposition(1, 3),
        };
        acc.then(&t)
    })
}

/// Number of components of the closure of `w`.
pub fn component_count(w: &BraidWord) -> usize {
    permutation_of(w).cycle_count()
}
