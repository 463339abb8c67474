//! Permutations of `{1, …, degree}`, written on the right of their argument.

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PermError {
    #[error("images {0:?} are not a bijection on 1..={1}")]
    NotBijection(Vec<usize>, usize),
    #[error("point {0} is out of range 1..={1}")]
    OutOfRange(usize, usize),
}

/// A bijection on `{1, …, degree}`. `σ.then(ρ)` is "σ first, then ρ", so
/// products compose in right-action order: `(i)(σρ) = ((i)σ)ρ`.
#[derive(Clone, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    pub fn identity(degree: usize) -> Self {
        Permutation {
            images: (1..=degree).collect(),
        }
    }

    /// Builds a permutation from its one-line notation `images[i-1] = (i)σ`.
    pub fn from_images(images: Vec<usize>) -> Result<Self, PermError> {
        let degree = images.len();
        let mut seen = vec![false; degree];
        for &img in &images {
            if img == 0 || img > degree || seen[img - 1] {
                return Err(PermError::NotBijection(images.clone(), degree));
            }
            seen[img - 1] = true;
        }
        Ok(Permutation { images })
    }

    /// The transposition swapping `a` and `b`.
    pub fn transposition(degree: usize, a: usize, b: usize) -> Result<Self, PermError> {
        if a == 0 || a > degree {
            return Err(PermError::OutOfRange(a, degree));
        }
        if b == 0 || b > degree {
            return Err(PermError::OutOfRange(b, degree));
        }
        let mut images: Vec<usize> = (1..=degree).collect();
        images.swap(a - 1, b - 1);
        Ok(Permutation { images })
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    /// `(i)σ` for 1-based `i`.
    pub fn apply(&self, i: usize) -> usize {
        self.images[i - 1]
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    /// Right-action composition: apply `self` first, then `other`.
    pub fn then(&self, other: &Permutation) -> Permutation {
        assert_eq!(self.degree(), other.degree(), "degree mismatch");
        Permutation {
            images: self.images.iter().map(|&i| other.apply(i)).collect(),
        }
    }

    pub fn inverse(&self) -> Permutation {
        let mut images = vec![0; self.degree()];
        for (i, &img) in self.images.iter().enumerate() {
            images[img - 1] = i + 1;
        }
        Permutation { images }
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &img)| img == i + 1)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn compose_is_right_action() {
        let s = Permutation::from_images(vec![2, 1, 3]).unwrap();
        let c = Permutation::from_images(vec![2, 3, 1]).unwrap();
        let sc = s.then(&c);
        for i in 1..=3 {
            assert_eq!(sc.apply(i), c.apply(s.apply(i)));
        }
    }

    #[test]
    fn inverse_round_trip() {
        let c = Permutation::from_images(vec![3, 1, 4, 2]).unwrap();
        assert!(c.then(&c.inverse()).is_identity());
        assert!(c.inverse().then(&c).is_identity());
    }

    #[test]
    fn rejects_non_bijection() {
        assert!(Permutation::from_images(vec![1, 1, 3]).is_err());
        assert!(Permutation::from_images(vec![1, 4]).is_err());
        assert!(Permutation::from_images(vec![0, 1]).is_err());
    }
}
