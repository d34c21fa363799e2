use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::subset::Subset;

/// Assignment of every element of `V` to one of `m` parts; parts may be empty.
/// Two partitions are equal iff their assignment vectors are.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Partition {
    m: usize,
    assignment: Vec<usize>,
}

impl Partition {
    pub fn new(m: usize, assignment: Vec<usize>) -> Result<Self> {
        if m == 0 {
            return Err(Error::Invalid("a partition needs at least one part".into()));
        }
        if let Some(i) = assignment.iter().position(|&j| j >= m) {
            return Err(Error::Invalid(format!(
                "element {} assigned to part {} of {m}",
                i + 1,
                assignment[i] + 1
            )));
        }
        Ok(Self { m, assignment })
    }

    /// Every element in part 0.
    pub fn single(m: usize, n: usize) -> Result<Self> {
        Self::new(m, vec![0; n])
    }

    pub fn from_parts(parts: &[Subset], n: usize) -> Result<Self> {
        let mut assignment = vec![usize::MAX; n];
        for (j, part) in parts.iter().enumerate() {
            if !part.fits(n) {
                return Err(Error::Invalid(format!(
                    "part {} exceeds the ground set",
                    j + 1
                )));
            }
            for i in part.iter() {
                if assignment[i] != usize::MAX {
                    return Err(Error::Invalid(format!("element {} in two parts", i + 1)));
                }
                assignment[i] = j;
            }
        }
        if let Some(i) = assignment.iter().position(|&j| j == usize::MAX) {
            return Err(Error::Invalid(format!("element {} is unassigned", i + 1)));
        }
        Self::new(parts.len(), assignment)
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn n(&self) -> usize {
        self.assignment.len()
    }

    pub fn assignment(&self) -> &[usize] {
        &self.assignment
    }

    pub fn part(&self, j: usize) -> Subset {
        Subset::from_indices(
            self.assignment
                .iter()
                .enumerate()
                .filter(|&(_, &a)| a == j)
                .map(|(i, _)| i),
        )
    }

    pub fn parts(&self) -> Vec<Subset> {
        let mut parts = vec![Subset::EMPTY; self.m];
        for (i, &j) in self.assignment.iter().enumerate() {
            parts[j] = parts[j].with(i);
        }
        parts
    }

    pub fn max_part_len(&self) -> usize {
        self.parts().iter().map(|p| p.len()).max().unwrap_or(0)
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (j, p) in self.parts().iter().enumerate() {
            if j > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, ")")
    }
}

#[derive(Serialize, Deserialize)]
struct PartitionRepr {
    n: usize,
    parts: Vec<Vec<usize>>,
}

impl Serialize for Partition {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        PartitionRepr {
            n: self.n(),
            parts: self.parts().into_iter().map(Subset::to_elements).collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for Partition {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let repr = PartitionRepr::deserialize(d)?;
        let parts = repr
            .parts
            .iter()
            .map(|p| Subset::from_elements(p, repr.n))
            .collect::<Result<Vec<_>>>()
            .map_err(D::Error::custom)?;
        Partition::from_parts(&parts, repr.n).map_err(D::Error::custom)
    }
}
