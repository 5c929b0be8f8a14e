use std::fmt;

use crate::error::GroupError;

/// A bijection of `0..n`, stored as its image list.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Perm {
    images: Vec<u32>,
}

impl Perm {
    pub fn identity(n: usize) -> Self {
        Perm {
            images: (0..n as u32).collect(),
        }
    }

    pub fn from_images(images: Vec<u32>) -> Result<Self, GroupError> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &i in &images {
            let i = i as usize;
            if i >= n || seen[i] {
                return Err(GroupError::NotAPermutation);
            }
            seen[i] = true;
        }
        Ok(Perm { images })
    }

    pub fn from_fn(n: usize, f: impl Fn(usize) -> usize) -> Result<Self, GroupError> {
        Self::from_images((0..n).map(|i| f(i) as u32).collect())
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    pub fn images(&self) -> &[u32] {
        &self.images
    }

    #[inline]
    pub fn apply(&self, i: usize) -> usize {
        self.images[i] as usize
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &Perm) -> Result<Perm, GroupError> {
        if self.degree() != other.degree() {
            return Err(GroupError::DegreeMismatch {
                left: self.degree(),
                right: other.degree(),
            });
        }
        Ok(self.compose_unchecked(other))
    }

    pub(crate) fn compose_unchecked(&self, other: &Perm) -> Perm {
        Perm {
            images: other.images.iter().map(|&i| self.images[i as usize]).collect(),
        }
    }

    pub fn inverse(&self) -> Perm {
        let mut inv = vec![0u32; self.degree()];
        for (i, &j) in self.images.iter().enumerate() {
            inv[j as usize] = i as u32;
        }
        Perm { images: inv }
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &j)| i as u32 == j)
    }

    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let n = self.degree();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut cycle = vec![start];
            seen[start] = true;
            let mut i = self.apply(start);
            while i != start {
                seen[i] = true;
                cycle.push(i);
                i = self.apply(i);
            }
            out.push(cycle);
        }
        out
    }

    /// Cycle lengths in ascending order.
    pub fn cycle_type(&self) -> Vec<usize> {
        let mut t: Vec<usize> = self.cycles().iter().map(Vec::len).collect();
        t.sort_unstable();
        t
    }

    pub fn order(&self) -> u64 {
        self.cycle_type()
            .into_iter()
            .fold(1u64, |acc, l| crate::numtheory::lcm(acc, l as u64))
    }
}

impl fmt::Debug for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Perm{:?}", self.images)
    }
}

impl fmt::Display for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.images.iter().map(u32::to_string).collect();
        f.write_str(&parts.join(","))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn compose_applies_right_first() {
        let a = Perm::from_images(vec![1, 2, 0]).unwrap();
        let b = Perm::from_images(vec![1, 0, 2]).unwrap();
        let ab = a.compose(&b).unwrap();
        assert_eq!(ab.apply(0), a.apply(b.apply(0)));
        assert_eq!(ab.images(), &[2, 1, 0]);
    }

    #[test]
    fn rejects_non_bijection() {
        assert!(Perm::from_images(vec![0, 0]).is_err());
        assert!(Perm::from_images(vec![2, 0]).is_err());
    }

    #[test]
    fn degree_mismatch() {
        let a = Perm::identity(3);
        let b = Perm::identity(4);
        assert!(matches!(
            a.compose(&b),
            Err(GroupError::DegreeMismatch { left: 3, right: 4 })
        ));
    }

    #[test]
    fn order_of_mixed_cycles() {
        let p = Perm::from_images(vec![1, 0, 3, 4, 2]).unwrap();
        assert_eq!(p.cycle_type(), vec![2, 3]);
        assert_eq!(p.order(), 6);
        assert!(p.compose(&p.inverse()).unwrap().is_identity());
    }
}
