//! Permutations of {0, …, N-1} in image form, with the cycle utilities the
//! covering-group calculus needs.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PermError {
    #[error("images {0:?} are not a bijection of 0..{1}")]
    NotBijective(Vec<usize>, usize),
    #[error("size mismatch: {0} vs {1}")]
    SizeMismatch(usize, usize),
}

/// `images[i]` is the image of point i.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Permutation { images: (0..n).collect() }
    }

    pub fn from_images(images: Vec<usize>) -> Result<Self, PermError> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &v in &images {
            if v >= n || seen[v] {
                return Err(PermError::NotBijective(images, n));
            }
            seen[v] = true;
        }
        Ok(Permutation { images })
    }

    pub fn transposition(n: usize, a: usize, b: usize) -> Self {
        assert!(a < n && b < n && a != b);
        let mut images: Vec<usize> = (0..n).collect();
        images.swap(a, b);
        Permutation { images }
    }

    /// The cycle (a₁ a₂ … a_k) fixing everything else.
    pub fn cycle(n: usize, points: &[usize]) -> Self {
        let mut images: Vec<usize> = (0..n).collect();
        for w in 0..points.len() {
            images[points[w]] = points[(w + 1) % points.len()];
        }
        Permutation { images }
    }

    pub fn len(&self) -> usize {
        self.images.len()
    }

    pub fn is_empty(&self) -> bool {
        self.images.is_empty()
    }

    pub fn apply(&self, i: usize) -> usize {
        self.images[i]
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &v)| i == v)
    }

    /// Function composition: (self ∘ other)(i) = self(other(i)).
    pub fn compose(&self, other: &Permutation) -> Permutation {
        assert_eq!(self.len(), other.len(), "permutation size mismatch");
        Permutation { images: other.images.iter().map(|&i| self.images[i]).collect() }
    }

    pub fn inverse(&self) -> Permutation {
        let mut images = vec![0; self.len()];
        for (i, &v) in self.images.iter().enumerate() {
            images[v] = i;
        }
        Permutation { images }
    }

    /// true for odd permutations.
    pub fn is_odd(&self) -> bool {
        let mut seen = vec![false; self.len()];
        let mut transpositions = 0;
        for i in 0..self.len() {
            if seen[i] {
                continue;
            }
            let mut j = i;
            let mut len = 0;
            while !seen[j] {
                seen[j] = true;
                j = self.images[j];
                len += 1;
            }
            transpositions += len - 1;
        }
        transpositions % 2 == 1
    }

    /// Disjoint cycles of length ≥ 2, each written smallest-element-first,
    /// ordered by smallest element.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.len()];
        let mut out = Vec::new();
        for i in 0..self.len() {
            if seen[i] || self.images[i] == i {
                seen[i] = true;
                continue;
            }
            let mut cycle = Vec::new();
            let mut j = i;
            while !seen[j] {
                seen[j] = true;
                cycle.push(j);
                j = self.images[j];
            }
            out.push(cycle);
        }
        out
    }

    pub fn fixes(&self, i: usize) -> bool {
        self.images[i] == i
    }

    /// Extends an injective partial map to the unique even permutation, given
    /// the images of all but two points. `partial[i] = Some(v)` fixes i ↦ v.
    pub fn even_extension(partial: &[Option<usize>]) -> Permutation {
        let n = partial.len();
        let mut images: Vec<usize> = vec![usize::MAX; n];
        let mut used = vec![false; n];
        let mut free_src = Vec::new();
        for (i, v) in partial.iter().enumerate() {
            match v {
                Some(t) => {
                    debug_assert!(!used[*t]);
                    images[i] = *t;
                    used[*t] = true;
                }
                None => free_src.push(i),
            }
        }
        let free_dst: Vec<usize> = (0..n).filter(|&t| !used[t]).collect();
        assert_eq!(free_src.len(), 2, "even_extension expects exactly two unassigned points");
        images[free_src[0]] = free_dst[0];
        images[free_src[1]] = free_dst[1];
        let mut p = Permutation { images };
        if p.is_odd() {
            let (a, b) = (free_src[0], free_src[1]);
            p.images.swap(a, b);
        }
        debug_assert!(!p.is_odd());
        p
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return write!(f, "()");
        }
        for c in cycles {
            write!(f, "(")?;
            for (k, p) in c.iter().enumerate() {
                if k > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{p}")?;
            }
            write!(f, ")")?;
        }
        Ok(())
    }
}
