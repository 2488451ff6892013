use std::collections::HashMap;

use crate::error::Result;

use super::{DeltaMap, DeltaSet, FaceInjection, SimplexRef};

/// A morphism `x → y` of the simplex category: an injection `λ` with `λ*y = x`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CatMorphism {
    source: SimplexRef,
    target: SimplexRef,
    injection: FaceInjection,
}

impl CatMorphism {
    /// Build `λ : λ*y → y`, deriving the source.
    pub fn new(x: &DeltaSet, target: SimplexRef, injection: FaceInjection) -> Result<Self> {
        let source = x.apply_injection(&injection, target)?;
        Ok(Self {
            source,
            target,
            injection,
        })
    }

    pub fn identity(x: SimplexRef) -> Self {
        Self {
            source: x,
            target: x,
            injection: FaceInjection::identity(x.dim),
        }
    }

    pub fn source(&self) -> SimplexRef {
        self.source
    }

    pub fn target(&self) -> SimplexRef {
        self.target
    }

    pub fn injection(&self) -> &FaceInjection {
        &self.injection
    }

    pub fn is_identity(&self) -> bool {
        self.injection.is_identity()
    }

    /// `self ∘ first` for `first : w → x` and `self : x → y`.
    pub fn after(&self, first: &CatMorphism) -> Option<CatMorphism> {
        if first.target != self.source {
            return None;
        }
        let injection = self.injection.compose(&first.injection).ok()?;
        Some(CatMorphism {
            source: first.source,
            target: self.target,
            injection,
        })
    }

    /// `source -[image]-> target`, using the Δ-set's labels.
    pub fn describe(&self, x: &DeltaSet) -> String {
        format!(
            "{}-{}->{}",
            x.label(self.source),
            self.injection,
            x.label(self.target)
        )
    }
}

/// All morphisms `x → y`.
pub fn morphisms_between(x_set: &DeltaSet, x: SimplexRef, y: SimplexRef) -> Vec<CatMorphism> {
    if x.dim > y.dim {
        return Vec::new();
    }
    FaceInjection::all(x.dim, y.dim)
        .into_iter()
        .filter_map(|inj| CatMorphism::new(x_set, y, inj).ok())
        .filter(|m| m.source == x)
        .collect()
}

/// The open star `st(x)`: every morphism out of `x`, identity first.
pub fn star(x_set: &DeltaSet, x: SimplexRef) -> Vec<CatMorphism> {
    x_set
        .simplices()
        .filter(|y| y.dim >= x.dim)
        .flat_map(|y| morphisms_between(x_set, x, y))
        .collect()
}

/// The over category `X/x` as a Δ-set (isomorphic to `Δ^|x|`) with the
/// forgetful map `(y → x) ↦ y`.
pub fn over_category(x_set: &DeltaSet, x: SimplexRef) -> (DeltaSet, DeltaMap) {
    let simplex = super::standard_simplex(x.dim);
    let base = x_set.label(x);
    let mut labels = Vec::with_capacity(x.dim + 1);
    let mut faces = Vec::with_capacity(x.dim + 1);
    let mut assignment = Vec::with_capacity(x.dim + 1);
    for m in 0..=x.dim {
        let injections = FaceInjection::all(m, x.dim);
        labels.push(
            injections
                .iter()
                .map(|inj| format!("{base}/{inj}"))
                .collect(),
        );
        faces.push(
            simplex
                .labels(m)
                .iter()
                .enumerate()
                .map(|(k, _)| simplex.face_indices(SimplexRef::new(m, k)).to_vec())
                .collect(),
        );
        assignment.push(
            injections
                .iter()
                .map(|inj| {
                    x_set
                        .apply_injection(inj, x)
                        .expect("dimensions agree")
                        .index
                })
                .collect(),
        );
    }
    let over = DeltaSet::from_parts(labels, faces).expect("over category is well formed");
    (over, DeltaMap::new(assignment))
}

/// Index of a morphism inside a [`SimplexCategory`].
pub type MorphId = usize;

/// The simplex category of a finite Δ-set with every morphism enumerated,
/// plus composition and factorization tables.
#[derive(Clone, Debug)]
pub struct SimplexCategory {
    delta: DeltaSet,
    morphisms: Vec<CatMorphism>,
    out_of: Vec<Vec<MorphId>>,
    into: Vec<Vec<MorphId>>,
    identity: Vec<MorphId>,
    lookup: HashMap<(SimplexRef, Vec<usize>), MorphId>,
    factorizations: Vec<Vec<(MorphId, MorphId)>>,
}

impl SimplexCategory {
    pub fn new(delta: &DeltaSet) -> Self {
        let n = delta.num_simplices();
        let mut morphisms = Vec::new();
        let mut lookup = HashMap::new();
        let mut out_of = vec![Vec::new(); n];
        let mut into = vec![Vec::new(); n];
        let mut identity = vec![0; n];
        for y in delta.simplices() {
            for m in (0..=y.dim).rev() {
                for inj in FaceInjection::all(m, y.dim) {
                    let morph = CatMorphism::new(delta, y, inj).expect("dimensions agree");
                    let id = morphisms.len();
                    lookup.insert((y, morph.injection.image().to_vec()), id);
                    if morph.is_identity() {
                        identity[delta.flat_index(y)] = id;
                    }
                    into[delta.flat_index(y)].push(id);
                    out_of[delta.flat_index(morph.source)].push(id);
                    morphisms.push(morph);
                }
            }
        }
        // identity first in every star, then by target and image
        for (flat, list) in out_of.iter_mut().enumerate() {
            let id = identity[flat];
            list.sort_by(|&a, &b| {
                (a != id).cmp(&(b != id)).then_with(|| {
                    let (ma, mb) = (&morphisms[a], &morphisms[b]);
                    ma.target
                        .cmp(&mb.target)
                        .then_with(|| ma.injection.cmp(&mb.injection))
                })
            });
        }
        let mut cat = Self {
            delta: delta.clone(),
            morphisms,
            out_of,
            into,
            identity,
            lookup,
            factorizations: Vec::new(),
        };
        let mut factorizations = vec![Vec::new(); cat.morphisms.len()];
        for phi in 0..cat.morphisms.len() {
            let mid = cat.delta.flat_index(cat.morphisms[phi].target);
            for &theta in &cat.out_of[mid] {
                let psi = cat.compose(theta, phi);
                factorizations[psi].push((phi, theta));
            }
        }
        cat.factorizations = factorizations;
        cat
    }

    pub fn delta(&self) -> &DeltaSet {
        &self.delta
    }

    pub fn len(&self) -> usize {
        self.morphisms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.morphisms.is_empty()
    }

    pub fn morphism(&self, id: MorphId) -> &CatMorphism {
        &self.morphisms[id]
    }

    pub fn morphisms(&self) -> &[CatMorphism] {
        &self.morphisms
    }

    pub fn identity(&self, x: SimplexRef) -> MorphId {
        self.identity[self.delta.flat_index(x)]
    }

    pub fn is_identity(&self, id: MorphId) -> bool {
        self.morphisms[id].is_identity()
    }

    pub fn source(&self, id: MorphId) -> SimplexRef {
        self.morphisms[id].source
    }

    pub fn target(&self, id: MorphId) -> SimplexRef {
        self.morphisms[id].target
    }

    /// Morphisms out of `x`, identity first.
    pub fn star(&self, x: SimplexRef) -> &[MorphId] {
        &self.out_of[self.delta.flat_index(x)]
    }

    /// Morphisms into `y`.
    pub fn costar(&self, y: SimplexRef) -> &[MorphId] {
        &self.into[self.delta.flat_index(y)]
    }

    pub fn between(&self, x: SimplexRef, y: SimplexRef) -> Vec<MorphId> {
        self.star(x)
            .iter()
            .copied()
            .filter(|&m| self.morphisms[m].target == y)
            .collect()
    }

    pub fn find(&self, target: SimplexRef, image: &[usize]) -> Option<MorphId> {
        self.lookup.get(&(target, image.to_vec())).copied()
    }

    pub fn id_of(&self, m: &CatMorphism) -> MorphId {
        self.lookup[&(m.target, m.injection.image().to_vec())]
    }

    /// `theta ∘ phi`; panics if they are not composable.
    pub fn compose(&self, theta: MorphId, phi: MorphId) -> MorphId {
        let composite = self.morphisms[theta]
            .after(&self.morphisms[phi])
            .expect("morphisms are composable");
        self.id_of(&composite)
    }

    /// Every `(φ, θ)` with `θ ∘ φ = ψ`.
    pub fn factorizations(&self, psi: MorphId) -> &[(MorphId, MorphId)] {
        &self.factorizations[psi]
    }

    /// The coface morphism `∂ᵢx → x`.
    pub fn coface(&self, x: SimplexRef, i: usize) -> MorphId {
        self.find(x, FaceInjection::coface(x.dim, i).image())
            .expect("coface exists")
    }

    pub fn describe(&self, id: MorphId) -> String {
        self.morphisms[id].describe(&self.delta)
    }
}
