//! Finite Δ-sets (semi-simplicial sets): graded simplex lists with face maps
//! `∂ᵢ : X⁽ⁿ⁾ → X⁽ⁿ⁻¹⁾` satisfying `∂ᵢ∂ⱼ = ∂ⱼ₋₁∂ᵢ` for `i < j`.
//!
//! Simplices carry user-facing string labels, but every internal reference is
//! a [`SimplexRef`] `(dim, index)` pair.

mod category;
mod group;
pub mod json;
mod map;
mod sub;

use std::collections::HashMap;
use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};

pub use category::{morphisms_between, over_category, star, CatMorphism, MorphId, SimplexCategory};
pub use group::{quotient, FiniteGroup, GroupAction};
pub use map::DeltaMap;
pub use sub::SubDeltaSet;

/// Position of a simplex inside a [`DeltaSet`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct SimplexRef {
    pub dim: usize,
    pub index: usize,
}

impl SimplexRef {
    pub const fn new(dim: usize, index: usize) -> Self {
        Self { dim, index }
    }
}

impl fmt::Display for SimplexRef {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.dim, self.index)
    }
}

/// An order-preserving injection `[m] → [n]`, stored by its image.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FaceInjection {
    target_dim: usize,
    image: Vec<usize>,
}

impl FaceInjection {
    pub fn new(target_dim: usize, image: Vec<usize>) -> Result<Self> {
        if image.is_empty() {
            return Err(Error::InvalidInjection("empty image".into()));
        }
        if image.len() > target_dim + 1 {
            return Err(Error::InvalidInjection(format!(
                "image {image:?} longer than [{target_dim}]"
            )));
        }
        if image.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::InvalidInjection(format!(
                "image {image:?} not strictly increasing"
            )));
        }
        if image.iter().any(|&v| v > target_dim) {
            return Err(Error::InvalidInjection(format!(
                "image {image:?} leaves [{target_dim}]"
            )));
        }
        Ok(Self { target_dim, image })
    }

    pub fn identity(n: usize) -> Self {
        Self {
            target_dim: n,
            image: (0..=n).collect(),
        }
    }

    /// The coface `δᵢ : [n−1] → [n]` that skips `i`.
    pub fn coface(n: usize, i: usize) -> Self {
        assert!(n >= 1 && i <= n, "coface δ_{i} into [{n}] does not exist");
        Self {
            target_dim: n,
            image: (0..=n).filter(|&v| v != i).collect(),
        }
    }

    /// Every injection `[m] → [n]`, in lexicographic order of images.
    pub fn all(source_dim: usize, target_dim: usize) -> Vec<Self> {
        let mut out = Vec::new();
        if source_dim > target_dim {
            return out;
        }
        let k = source_dim + 1;
        let mut image: Vec<usize> = (0..k).collect();
        loop {
            out.push(Self {
                target_dim,
                image: image.clone(),
            });
            // next k-combination of {0..=target_dim}
            let mut pos = k;
            while pos > 0 && image[pos - 1] == target_dim + 1 - (k - pos + 1) {
                pos -= 1;
            }
            if pos == 0 {
                break;
            }
            image[pos - 1] += 1;
            for t in pos..k {
                image[t] = image[t - 1] + 1;
            }
        }
        out
    }

    pub fn source_dim(&self) -> usize {
        self.image.len() - 1
    }

    pub fn target_dim(&self) -> usize {
        self.target_dim
    }

    pub fn image(&self) -> &[usize] {
        &self.image
    }

    pub fn is_identity(&self) -> bool {
        self.image.len() == self.target_dim + 1
    }

    /// Indices of `[n]` missing from the image, ascending.
    pub fn omitted(&self) -> Vec<usize> {
        (0..=self.target_dim)
            .filter(|v| self.image.binary_search(v).is_err())
            .collect()
    }

    /// `self ∘ inner`, where `inner : [k] → [m]` and `self : [m] → [n]`.
    pub fn compose(&self, inner: &FaceInjection) -> Result<FaceInjection> {
        if inner.target_dim != self.source_dim() {
            return Err(Error::DimensionMismatch {
                expected: self.source_dim(),
                found: inner.target_dim,
            });
        }
        Ok(FaceInjection {
            target_dim: self.target_dim,
            image: inner.image.iter().map(|&v| self.image[v]).collect(),
        })
    }

    /// If this injection is a coface `δᵢ`, return `i`.
    pub fn coface_index(&self) -> Option<usize> {
        if self.image.len() == self.target_dim {
            self.omitted().first().copied()
        } else {
            None
        }
    }
}

impl fmt::Display for FaceInjection {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (k, v) in self.image.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, "]")
    }
}

/// A finite Δ-set.
///
/// `faces[n][k]` lists `∂₀x, …, ∂ₙx` (as indices into dimension `n − 1`) for
/// the `k`-th `n`-simplex `x`; vertices have no faces. Construction checks
/// structure (labels, arities, references); the simplicial identities are
/// checked by [`DeltaSet::validate`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DeltaSet {
    labels: Vec<Vec<String>>,
    faces: Vec<Vec<Vec<usize>>>,
    lookup: HashMap<String, SimplexRef>,
    offsets: Vec<usize>,
}

impl DeltaSet {
    pub fn empty() -> Self {
        Self {
            labels: Vec::new(),
            faces: Vec::new(),
            lookup: HashMap::new(),
            offsets: vec![0],
        }
    }

    pub fn from_parts(
        mut labels: Vec<Vec<String>>,
        mut faces: Vec<Vec<Vec<usize>>>,
    ) -> Result<Self> {
        if labels.len() != faces.len() {
            return Err(Error::Malformed {
                label: String::new(),
                reason: format!(
                    "{} label dimensions but {} face dimensions",
                    labels.len(),
                    faces.len()
                ),
            });
        }
        while labels.last().is_some_and(|l| l.is_empty()) {
            labels.pop();
            faces.pop();
        }
        let mut lookup = HashMap::new();
        for (n, dim_labels) in labels.iter().enumerate() {
            if faces[n].len() != dim_labels.len() {
                return Err(Error::Malformed {
                    label: String::new(),
                    reason: format!(
                        "dimension {n}: {} labels but {} face lists",
                        dim_labels.len(),
                        faces[n].len()
                    ),
                });
            }
            for (k, label) in dim_labels.iter().enumerate() {
                if label.is_empty() {
                    return Err(Error::Malformed {
                        label: label.clone(),
                        reason: "empty label".into(),
                    });
                }
                if lookup
                    .insert(label.clone(), SimplexRef::new(n, k))
                    .is_some()
                {
                    return Err(Error::Malformed {
                        label: label.clone(),
                        reason: "duplicate label".into(),
                    });
                }
                let f = &faces[n][k];
                let expected = if n == 0 { 0 } else { n + 1 };
                if f.len() != expected {
                    return Err(Error::Malformed {
                        label: label.clone(),
                        reason: format!("{n}-simplex needs {expected} faces, found {}", f.len()),
                    });
                }
                if n > 0 {
                    if let Some(&bad) = f.iter().find(|&&j| j >= labels[n - 1].len()) {
                        return Err(Error::Malformed {
                            label: label.clone(),
                            reason: format!("face index {bad} out of range in dimension {}", n - 1),
                        });
                    }
                }
            }
        }
        let mut offsets = Vec::with_capacity(labels.len() + 1);
        let mut acc = 0;
        offsets.push(0);
        for l in &labels {
            acc += l.len();
            offsets.push(acc);
        }
        Ok(Self {
            labels,
            faces,
            lookup,
            offsets,
        })
    }

    pub fn builder() -> DeltaSetBuilder {
        DeltaSetBuilder::default()
    }

    /// Highest dimension carrying a simplex; `-1` for the empty Δ-set.
    pub fn top_dim(&self) -> i64 {
        self.labels.len() as i64 - 1
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn count(&self, dim: usize) -> usize {
        self.labels.get(dim).map_or(0, Vec::len)
    }

    pub fn counts(&self) -> Vec<usize> {
        self.labels.iter().map(Vec::len).collect()
    }

    pub fn num_simplices(&self) -> usize {
        *self.offsets.last().unwrap_or(&0)
    }

    pub fn labels(&self, dim: usize) -> &[String] {
        self.labels.get(dim).map_or(&[], Vec::as_slice)
    }

    pub fn label(&self, r: SimplexRef) -> &str {
        &self.labels[r.dim][r.index]
    }

    pub fn find(&self, label: &str) -> Option<SimplexRef> {
        self.lookup.get(label).copied()
    }

    pub fn require(&self, label: &str) -> Result<SimplexRef> {
        self.find(label)
            .ok_or_else(|| Error::UnknownSimplex(label.to_string()))
    }

    pub fn contains(&self, r: SimplexRef) -> bool {
        r.index < self.count(r.dim)
    }

    /// `∂ᵢ r`. Panics if `r` is a vertex or `i > r.dim`.
    pub fn face(&self, r: SimplexRef, i: usize) -> SimplexRef {
        SimplexRef::new(r.dim - 1, self.faces[r.dim][r.index][i])
    }

    /// Face indices `[∂₀r, …, ∂ₙr]` in dimension `r.dim − 1`.
    pub fn face_indices(&self, r: SimplexRef) -> &[usize] {
        &self.faces[r.dim][r.index]
    }

    /// All simplices in `(dim, index)` order.
    pub fn simplices(&self) -> impl Iterator<Item = SimplexRef> + '_ {
        self.labels
            .iter()
            .enumerate()
            .flat_map(|(n, l)| (0..l.len()).map(move |k| SimplexRef::new(n, k)))
    }

    pub fn flat_index(&self, r: SimplexRef) -> usize {
        self.offsets[r.dim] + r.index
    }

    pub fn from_flat(&self, flat: usize) -> SimplexRef {
        let dim = self.offsets.partition_point(|&o| o <= flat) - 1;
        SimplexRef::new(dim, flat - self.offsets[dim])
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.labels
            .iter()
            .enumerate()
            .map(|(n, l)| {
                if n % 2 == 0 {
                    l.len() as i64
                } else {
                    -(l.len() as i64)
                }
            })
            .sum()
    }

    /// `λ*y`: apply `∂ⱼ` for every index `j` omitted by `λ`, in decreasing order.
    pub fn apply_injection(&self, injection: &FaceInjection, y: SimplexRef) -> Result<SimplexRef> {
        if injection.target_dim() != y.dim {
            return Err(Error::DimensionMismatch {
                expected: y.dim,
                found: injection.target_dim(),
            });
        }
        let mut cur = y;
        for &j in injection.omitted().iter().rev() {
            cur = self.face(cur, j);
        }
        Ok(cur)
    }

    /// Check the simplicial identities `∂ᵢ∂ⱼ = ∂ⱼ₋₁∂ᵢ` for `i < j`.
    pub fn validate(&self) -> ValidationReport {
        let mut violations = Vec::new();
        for n in 2..self.labels.len() {
            for k in 0..self.labels[n].len() {
                let x = SimplexRef::new(n, k);
                for j in 1..=n {
                    for i in 0..j {
                        let lhs = self.face(self.face(x, j), i);
                        let rhs = self.face(self.face(x, i), j - 1);
                        if lhs != rhs {
                            violations.push(Violation {
                                simplex: self.label(x).to_string(),
                                i,
                                j,
                                lhs: self.label(lhs).to_string(),
                                rhs: self.label(rhs).to_string(),
                            });
                        }
                    }
                }
            }
        }
        ValidationReport { violations }
    }

    /// Like [`validate`](Self::validate) but as a `Result`, for operations
    /// that require a genuine Δ-set.
    pub fn ensure_valid(&self) -> Result<()> {
        match self.validate().violations.first() {
            None => Ok(()),
            Some(v) => Err(Error::Malformed {
                label: v.simplex.clone(),
                reason: v.to_string(),
            }),
        }
    }
}

/// One failed simplicial identity.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub simplex: String,
    pub i: usize,
    pub j: usize,
    /// `∂ᵢ∂ⱼ x`
    pub lhs: String,
    /// `∂ⱼ₋₁∂ᵢ x`
    pub rhs: String,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "∂{}∂{} {} = {} but ∂{}∂{} {} = {}",
            self.i,
            self.j,
            self.simplex,
            self.lhs,
            self.j - 1,
            self.i,
            self.simplex,
            self.rhs
        )
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_ok(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Incremental construction by label.
#[derive(Default, Debug, Clone)]
pub struct DeltaSetBuilder {
    labels: Vec<Vec<String>>,
    faces: Vec<Vec<Vec<String>>>,
}

impl DeltaSetBuilder {
    pub fn vertex(mut self, label: impl Into<String>) -> Self {
        self.push(0, label.into(), Vec::new());
        self
    }

    /// Add a simplex of dimension `faces.len() − 1` with the given face labels.
    pub fn simplex<S: Into<String>>(
        mut self,
        label: impl Into<String>,
        faces: impl IntoIterator<Item = S>,
    ) -> Self {
        let faces: Vec<String> = faces.into_iter().map(Into::into).collect();
        let dim = faces.len().saturating_sub(1);
        self.push(dim, label.into(), faces);
        self
    }

    pub fn push(&mut self, dim: usize, label: String, faces: Vec<String>) {
        while self.labels.len() <= dim {
            self.labels.push(Vec::new());
            self.faces.push(Vec::new());
        }
        self.labels[dim].push(label);
        self.faces[dim].push(faces);
    }

    pub fn build(self) -> Result<DeltaSet> {
        let mut index: Vec<HashMap<&str, usize>> = Vec::new();
        for l in &self.labels {
            index.push(l.iter().enumerate().map(|(k, s)| (s.as_str(), k)).collect());
        }
        let mut faces = Vec::with_capacity(self.faces.len());
        for (n, dim_faces) in self.faces.iter().enumerate() {
            let mut resolved = Vec::with_capacity(dim_faces.len());
            for (k, f) in dim_faces.iter().enumerate() {
                let mut idx = Vec::with_capacity(f.len());
                for face_label in f {
                    let found = n
                        .checked_sub(1)
                        .and_then(|m| index[m].get(face_label.as_str()))
                        .copied()
                        .ok_or_else(|| Error::Malformed {
                            label: self.labels[n][k].clone(),
                            reason: format!(
                                "face `{face_label}` is not a simplex of dimension {}",
                                n as i64 - 1
                            ),
                        })?;
                    idx.push(found);
                }
                resolved.push(idx);
            }
            faces.push(resolved);
        }
        DeltaSet::from_parts(self.labels, faces)
    }
}

/// The standard simplex `Δⁿ`: `m`-simplices are the injections `[m] → [n]`,
/// labelled by their image, e.g. `[0,2]`.
pub fn standard_simplex(n: usize) -> DeltaSet {
    let mut labels = Vec::with_capacity(n + 1);
    let mut faces = Vec::with_capacity(n + 1);
    let mut position: Vec<HashMap<Vec<usize>, usize>> = Vec::with_capacity(n + 1);
    for m in 0..=n {
        let injections = FaceInjection::all(m, n);
        let mut dim_faces = Vec::with_capacity(injections.len());
        for inj in &injections {
            if m == 0 {
                dim_faces.push(Vec::new());
            } else {
                let f = (0..=m)
                    .map(|i| {
                        let mut img = inj.image().to_vec();
                        img.remove(i);
                        position[m - 1][&img]
                    })
                    .collect();
                dim_faces.push(f);
            }
        }
        position.push(
            injections
                .iter()
                .enumerate()
                .map(|(k, inj)| (inj.image().to_vec(), k))
                .collect(),
        );
        labels.push(injections.iter().map(ToString::to_string).collect());
        faces.push(dim_faces);
    }
    DeltaSet::from_parts(labels, faces).expect("standard simplex is well formed")
}

/// Regard an ordered simplicial complex as a Δ-set; `∂ᵢ` deletes the `i`-th vertex.
///
/// `vertices` fixes the total order and every vertex becomes a 0-simplex.
/// Simplices are labelled by their ordered vertex names joined with `,`.
pub fn from_simplicial_complex<S: AsRef<str>>(
    vertices: &[S],
    simplices: &[Vec<S>],
) -> Result<DeltaSet> {
    let order: HashMap<&str, usize> = vertices
        .iter()
        .enumerate()
        .map(|(k, v)| (v.as_ref(), k))
        .collect();
    if order.len() != vertices.len() {
        return Err(Error::Malformed {
            label: String::new(),
            reason: "duplicate vertex".into(),
        });
    }
    let mut sets: Vec<Vec<usize>> = (0..vertices.len()).map(|v| vec![v]).collect();
    for s in simplices {
        let mut idx = Vec::with_capacity(s.len());
        for v in s {
            idx.push(
                *order
                    .get(v.as_ref())
                    .ok_or_else(|| Error::UnknownSimplex(v.as_ref().to_string()))?,
            );
        }
        idx.sort_unstable();
        if idx.is_empty() || idx.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::Malformed {
                label: s.iter().map(|v| v.as_ref()).collect::<Vec<_>>().join(","),
                reason: "simplex must be a nonempty set of distinct vertices".into(),
            });
        }
        sets.push(idx);
    }
    sets.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    sets.dedup();
    let top = sets.last().map_or(0, |s| s.len());
    let mut by_dim: Vec<Vec<Vec<usize>>> = vec![Vec::new(); top];
    for s in sets {
        by_dim[s.len() - 1].push(s);
    }
    let name = |s: &[usize]| {
        s.iter()
            .map(|&v| vertices[v].as_ref())
            .collect::<Vec<_>>()
            .join(",")
    };
    let positions: Vec<HashMap<&Vec<usize>, usize>> = by_dim
        .iter()
        .map(|l| l.iter().enumerate().map(|(k, s)| (s, k)).collect())
        .collect();
    let mut faces = Vec::with_capacity(by_dim.len());
    for (n, list) in by_dim.iter().enumerate() {
        let mut dim_faces = Vec::with_capacity(list.len());
        for s in list {
            if n == 0 {
                dim_faces.push(Vec::new());
                continue;
            }
            let mut f = Vec::with_capacity(n + 1);
            for i in 0..=n {
                let mut face = s.clone();
                face.remove(i);
                match positions[n - 1].get(&face) {
                    Some(&k) => f.push(k),
                    None => {
                        return Err(Error::MissingFace {
                            simplex: s
                                .iter()
                                .map(|&v| vertices[v].as_ref().to_string())
                                .collect(),
                            missing: face
                                .iter()
                                .map(|&v| vertices[v].as_ref().to_string())
                                .collect(),
                        })
                    }
                }
            }
            dim_faces.push(f);
        }
        faces.push(dim_faces);
    }
    let labels = by_dim
        .iter()
        .map(|l| l.iter().map(|s| name(s)).collect())
        .collect();
    DeltaSet::from_parts(labels, faces)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn injections_enumerate_binomially() {
        assert_eq!(FaceInjection::all(1, 3).len(), 6);
        assert_eq!(FaceInjection::all(3, 3), vec![FaceInjection::identity(3)]);
        assert!(FaceInjection::all(2, 1).is_empty());
        assert_eq!(
            FaceInjection::all(0, 2)
                .iter()
                .map(|f| f.image()[0])
                .collect::<Vec<_>>(),
            vec![0, 1, 2]
        );
    }

    #[test]
    fn injection_rejects_bad_images() {
        assert!(FaceInjection::new(2, vec![1, 1]).is_err());
        assert!(FaceInjection::new(2, vec![0, 3]).is_err());
        assert!(FaceInjection::new(1, vec![0, 1, 2]).is_err());
        assert!(FaceInjection::new(1, vec![]).is_err());
    }

    #[test]
    fn coface_matches_omitted_index() {
        let d = FaceInjection::coface(3, 1);
        assert_eq!(d.image(), &[0, 2, 3]);
        assert_eq!(d.coface_index(), Some(1));
        assert_eq!(FaceInjection::identity(2).coface_index(), None);
    }

    #[test]
    fn standard_simplex_counts() {
        assert_eq!(standard_simplex(0).counts(), vec![1]);
        assert_eq!(standard_simplex(2).counts(), vec![3, 3, 1]);
        assert_eq!(standard_simplex(3).counts(), vec![4, 6, 4, 1]);
        assert!(standard_simplex(3).validate().is_ok());
    }

    #[test]
    fn dunce_hat_is_valid() {
        assert!(fixtures::dunce_hat().validate().is_ok());
    }

    #[test]
    fn corrupted_dunce_hat_names_top_simplex() {
        let broken = DeltaSet::builder()
            .vertex("x0")
            .vertex("y0")
            .simplex("x1", ["x0", "x0"])
            .simplex("y1", ["y0", "x0"])
            .simplex("x2", ["y1", "x1", "y1"])
            .build()
            .unwrap();
        let report = broken.validate();
        assert!(!report.is_ok());
        assert!(report.violations.iter().all(|v| v.simplex == "x2"));
        assert!(report.violations.iter().any(|v| v.i == 0 && v.j == 1));
    }

    #[test]
    fn simplicial_complex_import() {
        let circle = from_simplicial_complex(
            &["0", "1", "2"],
            &[vec!["0", "1"], vec!["0", "2"], vec!["1", "2"]],
        )
        .unwrap();
        assert_eq!(circle.counts(), vec![3, 3]);
        assert!(circle.validate().is_ok());
        let e = circle.require("1,2").unwrap();
        assert_eq!(circle.label(circle.face(e, 0)), "2");
        assert_eq!(circle.label(circle.face(e, 1)), "1");

        let full = from_simplicial_complex(
            &["0", "1", "2"],
            &[
                vec!["0", "1"],
                vec!["0", "2"],
                vec!["1", "2"],
                vec!["0", "1", "2"],
            ],
        )
        .unwrap();
        let delta2 = standard_simplex(2);
        assert_eq!(full.counts(), delta2.counts());
        // same face tables up to relabelling (both list simplices lexicographically)
        for r in full.simplices().filter(|r| r.dim > 0) {
            assert_eq!(full.face_indices(r), delta2.face_indices(r));
        }
    }

    #[test]
    fn simplicial_complex_missing_face_is_rejected() {
        let err = from_simplicial_complex(
            &["0", "1", "2"],
            &[vec!["0", "1"], vec!["1", "2"], vec!["0", "1", "2"]],
        )
        .unwrap_err();
        assert_eq!(
            err,
            Error::MissingFace {
                simplex: vec!["0".into(), "1".into(), "2".into()],
                missing: vec!["0".into(), "2".into()]
            }
        );
    }

    #[test]
    fn circle_faces_collapse_to_one_vertex() {
        let s1 = fixtures::circle();
        let x1 = s1.require("x1").unwrap();
        let x0 = s1.require("x0").unwrap();
        for v in 0..=1 {
            let inj = FaceInjection::new(1, vec![v]).unwrap();
            assert_eq!(s1.apply_injection(&inj, x1).unwrap(), x0);
        }
        assert_eq!(
            s1.apply_injection(&FaceInjection::identity(1), x1).unwrap(),
            x1
        );
        assert!(s1.apply_injection(&FaceInjection::identity(0), x1).is_err());
    }

    /// Evaluate `λ*` by applying omitted indices in *increasing* order,
    /// shifting each later index down by the number already removed.
    fn apply_increasing(x: &DeltaSet, inj: &FaceInjection, y: SimplexRef) -> SimplexRef {
        let mut cur = y;
        for (removed, j) in inj.omitted().into_iter().enumerate() {
            cur = x.face(cur, j - removed);
        }
        cur
    }

    #[test]
    fn injection_order_independence_on_delta3() {
        let d3 = standard_simplex(3);
        for y in d3.simplices() {
            for m in 0..=y.dim {
                for inj in FaceInjection::all(m, y.dim) {
                    assert_eq!(
                        d3.apply_injection(&inj, y).unwrap(),
                        apply_increasing(&d3, &inj, y)
                    );
                }
            }
        }
    }

    #[test]
    fn injection_lands_on_the_spanned_face() {
        // In Δ³ the simplex labelled by an image is exactly λ*(top) for that λ.
        let d3 = standard_simplex(3);
        let top = SimplexRef::new(3, 0);
        for m in 0..=3 {
            for inj in FaceInjection::all(m, 3) {
                let r = d3.apply_injection(&inj, top).unwrap();
                assert_eq!(d3.label(r), inj.to_string());
            }
        }
    }

    #[test]
    fn euler_characteristics() {
        assert_eq!(fixtures::circle().euler_characteristic(), 0);
        assert_eq!(fixtures::dunce_hat().euler_characteristic(), 1);
        assert_eq!(DeltaSet::empty().euler_characteristic(), 0);
        assert_eq!(DeltaSet::empty().top_dim(), -1);
    }

    #[test]
    fn flat_indices_round_trip() {
        let d = standard_simplex(3);
        for r in d.simplices() {
            assert_eq!(d.from_flat(d.flat_index(r)), r);
        }
    }

    #[test]
    fn builder_rejects_unknown_faces_and_duplicates() {
        assert!(DeltaSet::builder()
            .vertex("a")
            .simplex("e", ["a", "b"])
            .build()
            .is_err());
        assert!(DeltaSet::builder().vertex("a").vertex("a").build().is_err());
    }
}
