use crate::error::{Error, Result};

use super::{DeltaSet, SimplexRef};

/// A dimension-preserving assignment of simplices commuting with face maps.
///
/// The map does not own its source or target; [`DeltaMap::check`] verifies it
/// against a concrete pair.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DeltaMap {
    assignment: Vec<Vec<usize>>,
}

impl DeltaMap {
    pub fn new(assignment: Vec<Vec<usize>>) -> Self {
        Self { assignment }
    }

    pub fn identity(x: &DeltaSet) -> Self {
        Self {
            assignment: x.counts().into_iter().map(|c| (0..c).collect()).collect(),
        }
    }

    pub fn apply(&self, r: SimplexRef) -> SimplexRef {
        SimplexRef::new(r.dim, self.assignment[r.dim][r.index])
    }

    pub fn assignment(&self) -> &[Vec<usize>] {
        &self.assignment
    }

    /// Verify shapes, ranges and `f(∂ᵢx) = ∂ᵢf(x)`.
    pub fn check(&self, source: &DeltaSet, target: &DeltaSet) -> Result<()> {
        let src_counts = source.counts();
        if self.assignment.len() != src_counts.len()
            || self
                .assignment
                .iter()
                .zip(&src_counts)
                .any(|(a, &c)| a.len() != c)
        {
            return Err(Error::InvalidMap(
                "assignment does not cover the source".into(),
            ));
        }
        for r in source.simplices() {
            let img = self.apply(r);
            if !target.contains(img) {
                return Err(Error::InvalidMap(format!(
                    "`{}` maps outside the target",
                    source.label(r)
                )));
            }
            if r.dim > 0 {
                for i in 0..=r.dim {
                    if self.apply(source.face(r, i)) != target.face(img, i) {
                        return Err(Error::InvalidMap(format!(
                            "does not commute with ∂{i} at `{}`",
                            source.label(r)
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    /// `other ∘ self`.
    pub fn then(&self, other: &DeltaMap) -> DeltaMap {
        DeltaMap {
            assignment: self
                .assignment
                .iter()
                .enumerate()
                .map(|(n, a)| a.iter().map(|&k| other.assignment[n][k]).collect())
                .collect(),
        }
    }

    pub fn is_injective(&self) -> bool {
        self.assignment.iter().all(|a| {
            let mut seen = a.clone();
            seen.sort_unstable();
            seen.windows(2).all(|w| w[0] != w[1])
        })
    }

    pub fn is_surjective(&self, target: &DeltaSet) -> bool {
        target.counts().iter().enumerate().all(|(n, &c)| {
            let mut hit = vec![false; c];
            if let Some(a) = self.assignment.get(n) {
                for &k in a {
                    hit[k] = true;
                }
            }
            hit.into_iter().all(|h| h)
        })
    }
}
