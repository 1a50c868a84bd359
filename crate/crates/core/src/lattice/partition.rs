use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::bits::VertexSet;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PartitionError {
    #[error("a partition needs at least one part")]
    NoParts,
    #[error("vertex {vertex} out of range (n = {n})")]
    OutOfRange { vertex: usize, n: usize },
    #[error("vertex {0} appears in more than one part")]
    Overlap(usize),
    #[error("vertex {0} is in no part")]
    Uncovered(usize),
}

/// An ordered partition of `0..n` into `r >= 1` parts. Empty parts are
/// allowed; their order is their index.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawPartition", into = "RawPartition")]
pub struct Partition {
    n: usize,
    parts: Vec<Vec<usize>>,
    part_of: Vec<usize>,
}

#[derive(Serialize, Deserialize)]
struct RawPartition {
    n: usize,
    parts: Vec<Vec<usize>>,
}

impl TryFrom<RawPartition> for Partition {
    type Error = PartitionError;
    fn try_from(r: RawPartition) -> Result<Self, Self::Error> {
        Partition::new(r.n, r.parts)
    }
}

impl From<Partition> for RawPartition {
    fn from(p: Partition) -> Self {
        RawPartition { n: p.n, parts: p.parts }
    }
}

impl Partition {
    pub fn new(n: usize, mut parts: Vec<Vec<usize>>) -> Result<Self, PartitionError> {
        if parts.is_empty() {
            return Err(PartitionError::NoParts);
        }
        let mut part_of = vec![usize::MAX; n];
        for (i, part) in parts.iter_mut().enumerate() {
            part.sort_unstable();
            for &v in part.iter() {
                if v >= n {
                    return Err(PartitionError::OutOfRange { vertex: v, n });
                }
                if part_of[v] != usize::MAX {
                    return Err(PartitionError::Overlap(v));
                }
                part_of[v] = i;
            }
        }
        if let Some(v) = part_of.iter().position(|&p| p == usize::MAX) {
            return Err(PartitionError::Uncovered(v));
        }
        Ok(Partition { n, parts, part_of })
    }

    /// The one-part partition.
    pub fn trivial(n: usize) -> Self {
        Partition::new(n, vec![(0..n).collect()]).expect("trivial partition")
    }

    /// Two parts: `first` and everything else.
    pub fn split(n: usize, first: &[usize]) -> Result<Self, PartitionError> {
        let set = VertexSet::from_slice(n, first);
        Partition::new(n, vec![set.to_vec(), set.complement().to_vec()])
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn r(&self) -> usize {
        self.parts.len()
    }

    pub fn parts(&self) -> &[Vec<usize>] {
        &self.parts
    }

    pub fn part(&self, i: usize) -> &[usize] {
        &self.parts[i]
    }

    pub fn part_set(&self, i: usize) -> VertexSet {
        VertexSet::from_slice(self.n, &self.parts[i])
    }

    pub fn part_of(&self, v: usize) -> usize {
        self.part_of[v]
    }

    /// i_P(S): how many vertices of `s` each part holds.
    pub fn index_vector(&self, s: &[usize]) -> IndexVector {
        let mut c = vec![0; self.r()];
        for &v in s {
            c[self.part_of[v]] += 1;
        }
        IndexVector(c)
    }

    pub fn index_vector_of(&self, s: &VertexSet) -> IndexVector {
        self.index_vector(&s.to_vec())
    }
}

/// Per-part intersection sizes. Coordinates are 0-based in code; unit vector
/// `u_i` is `IndexVector::unit(r, i)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct IndexVector(Vec<usize>);

impl IndexVector {
    pub fn new(coords: Vec<usize>) -> Self {
        IndexVector(coords)
    }

    pub fn zero(r: usize) -> Self {
        IndexVector(vec![0; r])
    }

    pub fn unit(r: usize, i: usize) -> Self {
        let mut v = vec![0; r];
        v[i] = 1;
        IndexVector(v)
    }

    pub fn coords(&self) -> &[usize] {
        &self.0
    }

    pub fn r(&self) -> usize {
        self.0.len()
    }

    pub fn sum(&self) -> usize {
        self.0.iter().sum()
    }

    pub fn all_even(&self) -> bool {
        self.0.iter().all(|c| c % 2 == 0)
    }

    pub fn plus_unit(&self, i: usize) -> IndexVector {
        let mut v = self.0.clone();
        v[i] += 1;
        IndexVector(v)
    }

    /// `self + u_i - u_j`, if no coordinate goes negative.
    pub fn shifted(&self, i: usize, j: usize) -> Option<IndexVector> {
        let mut v = self.0.clone();
        v[j] = v[j].checked_sub(1)?;
        v[i] += 1;
        Some(IndexVector(v))
    }
}

impl std::fmt::Display for IndexVector {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let parts: Vec<String> = self.0.iter().map(usize::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construct::space_barrier;

    #[test]
    fn index_vector_examples() {
        let bar = space_barrier(12).unwrap();
        let p = Partition::new(12, vec![bar.sets["X"].clone(), bar.sets["Y"].clone()]).unwrap();
        assert_eq!(p.index_vector(&[0, 1, 5]).coords(), &[2, 1]);
        assert_eq!(p.index_vector(&[]), IndexVector::zero(2));
        let all: Vec<usize> = (0..12).collect();
        assert_eq!(p.index_vector(&all).coords(), &[3, 9]);
    }

    #[test]
    fn validation() {
        assert_eq!(Partition::new(3, vec![]), Err(PartitionError::NoParts));
        assert_eq!(Partition::new(3, vec![vec![0, 1], vec![1, 2]]), Err(PartitionError::Overlap(1)));
        assert_eq!(Partition::new(3, vec![vec![0, 1]]), Err(PartitionError::Uncovered(2)));
        let p = Partition::split(5, &[1, 3]).unwrap();
        assert_eq!(p.parts(), &[vec![1, 3], vec![0, 2, 4]]);
        let json = serde_json::to_string(&p).unwrap();
        assert_eq!(serde_json::from_str::<Partition>(&json).unwrap(), p);
    }

    #[test]
    fn shifts() {
        let v = IndexVector::new(vec![2, 4]);
        assert_eq!(v.shifted(0, 1), Some(IndexVector::new(vec![3, 3])));
        assert_eq!(IndexVector::new(vec![0, 6]).shifted(1, 0), None);
    }
}
