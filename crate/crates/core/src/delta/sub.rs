use crate::error::{Error, Result};

use super::{DeltaMap, DeltaSet, SimplexRef};

/// A set of simplices of a fixed Δ-set, one membership flag per simplex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubDeltaSet {
    members: Vec<Vec<bool>>,
}

impl SubDeltaSet {
    pub fn none(x: &DeltaSet) -> Self {
        Self {
            members: x.counts().into_iter().map(|c| vec![false; c]).collect(),
        }
    }

    pub fn all(x: &DeltaSet) -> Self {
        Self {
            members: x.counts().into_iter().map(|c| vec![true; c]).collect(),
        }
    }

    pub fn from_refs(x: &DeltaSet, refs: impl IntoIterator<Item = SimplexRef>) -> Self {
        let mut s = Self::none(x);
        for r in refs {
            s.insert(r);
        }
        s
    }

    pub fn from_labels<S: AsRef<str>>(x: &DeltaSet, labels: &[S]) -> Result<Self> {
        let mut s = Self::none(x);
        for l in labels {
            s.insert(x.require(l.as_ref())?);
        }
        Ok(s)
    }

    /// The smallest sub-Δ-set containing `refs`.
    pub fn closure(x: &DeltaSet, refs: impl IntoIterator<Item = SimplexRef>) -> Self {
        let mut s = Self::none(x);
        let mut stack: Vec<SimplexRef> = refs.into_iter().collect();
        while let Some(r) = stack.pop() {
            if s.contains(r) {
                continue;
            }
            s.insert(r);
            if r.dim > 0 {
                stack.extend((0..=r.dim).map(|i| x.face(r, i)));
            }
        }
        s
    }

    pub fn insert(&mut self, r: SimplexRef) {
        self.members[r.dim][r.index] = true;
    }

    pub fn contains(&self, r: SimplexRef) -> bool {
        self.members
            .get(r.dim)
            .and_then(|m| m.get(r.index))
            .copied()
            .unwrap_or(false)
    }

    pub fn counts(&self) -> Vec<usize> {
        let mut c: Vec<usize> = self
            .members
            .iter()
            .map(|m| m.iter().filter(|&&b| b).count())
            .collect();
        while c.last() == Some(&0) {
            c.pop();
        }
        c
    }

    pub fn iter(&self) -> impl Iterator<Item = SimplexRef> + '_ {
        self.members.iter().enumerate().flat_map(|(n, m)| {
            m.iter()
                .enumerate()
                .filter(|(_, &b)| b)
                .map(move |(k, _)| SimplexRef::new(n, k))
        })
    }

    pub fn complement(&self) -> Self {
        Self {
            members: self
                .members
                .iter()
                .map(|m| m.iter().map(|b| !b).collect())
                .collect(),
        }
    }

    pub fn is_subset_of(&self, other: &SubDeltaSet) -> bool {
        self.iter().all(|r| other.contains(r))
    }

    /// First member with a face outside the set, if any.
    pub fn first_unclosed(&self, x: &DeltaSet) -> Option<SimplexRef> {
        self.iter()
            .find(|&r| r.dim > 0 && (0..=r.dim).any(|i| !self.contains(x.face(r, i))))
    }

    pub fn ensure_closed(&self, x: &DeltaSet) -> Result<()> {
        match self.first_unclosed(x) {
            None => Ok(()),
            Some(r) => Err(Error::NotFaceClosed(x.label(r).to_string())),
        }
    }

    /// Materialize as a Δ-set (labels kept) with its inclusion map.
    pub fn to_delta_set(&self, x: &DeltaSet) -> Result<(DeltaSet, DeltaMap)> {
        self.ensure_closed(x)?;
        let mut new_index: Vec<Vec<Option<usize>>> = Vec::new();
        let mut labels = Vec::new();
        let mut faces = Vec::new();
        let mut assignment = Vec::new();
        for (n, m) in self.members.iter().enumerate() {
            let mut idx = vec![None; m.len()];
            let mut dim_labels = Vec::new();
            let mut dim_faces = Vec::new();
            let mut dim_assign = Vec::new();
            for (k, &b) in m.iter().enumerate() {
                if !b {
                    continue;
                }
                let r = SimplexRef::new(n, k);
                idx[k] = Some(dim_labels.len());
                dim_labels.push(x.label(r).to_string());
                dim_assign.push(k);
                if n == 0 {
                    dim_faces.push(Vec::new());
                } else {
                    dim_faces.push(
                        x.face_indices(r)
                            .iter()
                            .map(|&f| new_index[n - 1][f].expect("closed under faces"))
                            .collect(),
                    );
                }
            }
            new_index.push(idx);
            labels.push(dim_labels);
            faces.push(dim_faces);
            assignment.push(dim_assign);
        }
        let sub = DeltaSet::from_parts(labels, faces)?;
        assignment.truncate(sub.counts().len());
        Ok((sub, DeltaMap::new(assignment)))
    }
}
