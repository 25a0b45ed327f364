use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PermutationError {
    #[error("image {image} out of range for a permutation of {len} points")]
    OutOfRange { image: usize, len: usize },
    #[error("point {0} is hit twice")]
    NotInjective(usize),
    #[error("cycle notation mentions point {0} twice")]
    RepeatedInCycles(usize),
}

/// A permutation of `{0, .., n-1}` stored as its image array.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Permutation(Vec<usize>);

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Permutation((0..n).collect())
    }

    pub fn from_images(images: Vec<usize>) -> Result<Self, PermutationError> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &i in &images {
            if i >= n {
                return Err(PermutationError::OutOfRange { image: i, len: n });
            }
            if seen[i] {
                return Err(PermutationError::NotInjective(i));
            }
            seen[i] = true;
        }
        Ok(Permutation(images))
    }

    /// Builds a permutation of `n` points from disjoint cycles; points not
    /// mentioned are fixed.
    pub fn from_cycles(n: usize, cycles: &[&[usize]]) -> Result<Self, PermutationError> {
        let mut images: Vec<usize> = (0..n).collect();
        let mut seen = vec![false; n];
        for cycle in cycles {
            for (pos, &x) in cycle.iter().enumerate() {
                if x >= n {
                    return Err(PermutationError::OutOfRange { image: x, len: n });
                }
                if seen[x] {
                    return Err(PermutationError::RepeatedInCycles(x));
                }
                seen[x] = true;
                images[x] = cycle[(pos + 1) % cycle.len()];
            }
        }
        Ok(Permutation(images))
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.0.len()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    #[inline]
    pub fn apply(&self, i: usize) -> usize {
        self.0[i]
    }

    pub fn images(&self) -> &[usize] {
        &self.0
    }

    pub fn into_images(self) -> Vec<usize> {
        self.0
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0; self.len()];
        for (i, &j) in self.0.iter().enumerate() {
            inv[j] = i;
        }
        Permutation(inv)
    }

    /// `self ∘ other`: apply `other` first, then `self`.
    pub fn compose(&self, other: &Permutation) -> Self {
        debug_assert_eq!(self.len(), other.len());
        Permutation(other.0.iter().map(|&j| self.0[j]).collect())
    }

    /// Conjugate by a relabelling: the result maps `relabel(x)` to
    /// `relabel(self(x))`.
    pub fn conjugate_by(&self, relabel: &Permutation) -> Self {
        let mut images = vec![0; self.len()];
        for (x, &y) in self.0.iter().enumerate() {
            images[relabel.apply(x)] = relabel.apply(y);
        }
        Permutation(images)
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(i, &j)| i == j)
    }

    pub fn fixed_points(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().enumerate().filter(|(i, j)| i == *j).map(|(i, _)| i)
    }

    /// Disjoint cycles, each starting at its smallest point, sorted by that
    /// point. Fixed points appear as 1-cycles.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.len()];
        let mut out = Vec::new();
        for start in 0..self.len() {
            if seen[start] {
                continue;
            }
            let mut cycle = Vec::new();
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                cycle.push(x);
                x = self.0[x];
            }
            out.push(cycle);
        }
        out
    }

    pub fn order(&self) -> usize {
        self.cycles().iter().fold(1, |acc, c| num_integer::lcm(acc, c.len()))
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles: Vec<_> = self.cycles().into_iter().filter(|c| c.len() > 1).collect();
        if cycles.is_empty() {
            return write!(f, "()");
        }
        for c in cycles {
            let parts: Vec<String> = c.iter().map(|x| x.to_string()).collect();
            write!(f, "({})", parts.join(" "))?;
        }
        Ok(())
    }
}

/// All elements of the group generated by `generators`, identity first, the
/// rest in lexicographic order of image arrays.
pub fn group_closure(n: usize, generators: &[Permutation]) -> Vec<Permutation> {
    use std::collections::BTreeSet;
    let mut elements = BTreeSet::new();
    let id = Permutation::identity(n);
    elements.insert(id.clone());
    let mut frontier = vec![id.clone()];
    while let Some(g) = frontier.pop() {
        for s in generators {
            let h = s.compose(&g);
            if elements.insert(h.clone()) {
                frontier.push(h);
            }
        }
    }
    elements.remove(&id);
    std::iter::once(id).chain(elements).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cycles_are_sorted_and_start_at_minimum() {
        let p = Permutation::from_images(vec![3, 2, 1, 0, 4]).unwrap();
        assert_eq!(p.cycles(), vec![vec![0, 3], vec![1, 2], vec![4]]);
        assert_eq!(p.to_string(), "(0 3)(1 2)");
    }

    #[test]
    fn compose_applies_right_argument_first() {
        let a = Permutation::from_cycles(3, &[&[0, 1]]).unwrap();
        let b = Permutation::from_cycles(3, &[&[1, 2]]).unwrap();
        // 1 -> 2 under b, then 2 -> 2 under a
        assert_eq!(a.compose(&b).apply(1), 2);
        assert_eq!(a.compose(&b).apply(0), 1);
        assert_eq!(a.compose(&a.inverse()), Permutation::identity(3));
    }

    #[test]
    fn rejects_non_bijections() {
        assert_eq!(
            Permutation::from_images(vec![0, 0]),
            Err(PermutationError::NotInjective(0))
        );
        assert!(Permutation::from_images(vec![0, 5]).is_err());
        assert!(Permutation::from_cycles(3, &[&[0, 1], &[1, 2]]).is_err());
    }

    #[test]
    fn closure_of_symmetric_group_generators() {
        let t = Permutation::from_cycles(4, &[&[0, 1]]).unwrap();
        let c = Permutation::from_cycles(4, &[&[0, 1, 2, 3]]).unwrap();
        let g = group_closure(4, &[t, c]);
        assert_eq!(g.len(), 24);
        assert!(g[0].is_identity());
    }

    #[test]
    fn order_is_lcm_of_cycle_lengths() {
        let p = Permutation::from_cycles(5, &[&[0, 1], &[2, 3, 4]]).unwrap();
        assert_eq!(p.order(), 6);
    }
}
