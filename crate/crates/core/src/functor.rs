//! Chain complexes in the additive categories `A*(X)` (contravariant side)
//! and `A^(X)` (covariant side) over a finite Δ-set, with `A` the free
//! modules over a [`Ring`].
//!
//! An object assigns a rank to every simplex. A morphism `f : M → N` has one
//! matrix per morphism `φ : x → y` of the simplex category: `M(x) → N(y)` on
//! the contravariant side and `M(y) → N(x)` on the covariant side.
//! Composition sums over factorizations.

use std::collections::BTreeMap;
use std::sync::Arc;

use serde::Serialize;
use serde_json::{json, Map, Value};

use crate::algebra::{ChainComplex, ChainMap, Matrix, Ring};
use crate::delta::{MorphId, SimplexCategory, SimplexRef};
use crate::error::{Error, Result};
use crate::subdivision::Subdivision;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Variance {
    Contravariant,
    Covariant,
}

#[derive(Clone, Debug)]
pub struct XObject {
    cat: Arc<SimplexCategory>,
    variance: Variance,
    ring: Ring,
    ranks: Vec<usize>,
}

impl PartialEq for XObject {
    fn eq(&self, other: &Self) -> bool {
        self.variance == other.variance
            && self.ring == other.ring
            && self.ranks == other.ranks
            && (Arc::ptr_eq(&self.cat, &other.cat) || self.cat.delta() == other.cat.delta())
    }
}

impl Eq for XObject {}

impl XObject {
    /// `ranks` is indexed by the flat simplex index of the base Δ-set.
    pub fn new(
        cat: Arc<SimplexCategory>,
        variance: Variance,
        ring: Ring,
        ranks: Vec<usize>,
    ) -> Result<Self> {
        if ranks.len() != cat.delta().num_simplices() {
            return Err(Error::Shape(format!(
                "{} ranks for {} simplices",
                ranks.len(),
                cat.delta().num_simplices()
            )));
        }
        Ok(Self {
            cat,
            variance,
            ring,
            ranks,
        })
    }

    pub fn zero(cat: Arc<SimplexCategory>, variance: Variance, ring: Ring) -> Self {
        let n = cat.delta().num_simplices();
        Self {
            cat,
            variance,
            ring,
            ranks: vec![0; n],
        }
    }

    pub fn category(&self) -> &Arc<SimplexCategory> {
        &self.cat
    }

    pub fn variance(&self) -> Variance {
        self.variance
    }

    pub fn ring(&self) -> Ring {
        self.ring
    }

    pub fn rank(&self, x: SimplexRef) -> usize {
        self.ranks[self.cat.delta().flat_index(x)]
    }

    pub fn ranks(&self) -> &[usize] {
        &self.ranks
    }

    pub fn total_rank(&self) -> usize {
        self.ranks.iter().sum()
    }

    /// Offsets of each simplex's block in the assembled module `M(X)`.
    pub fn offsets(&self) -> Vec<usize> {
        let mut acc = 0;
        self.ranks
            .iter()
            .map(|r| {
                acc += r;
                acc - r
            })
            .collect()
    }

    /// The summands of `M[x]`: `(α, offset)` for `α : x → y` (contravariant)
    /// or `α : y → x` (covariant), plus the total rank.
    pub fn bracket_layout(&self, x: SimplexRef) -> (Vec<(MorphId, usize)>, usize) {
        let cat = &self.cat;
        let (morphs, end): (&[MorphId], fn(&SimplexCategory, MorphId) -> SimplexRef) =
            match self.variance {
                Variance::Contravariant => (cat.star(x), |c, m| c.target(m)),
                Variance::Covariant => (cat.costar(x), |c, m| c.source(m)),
            };
        let mut total = 0;
        let layout = morphs
            .iter()
            .map(|&a| {
                let off = total;
                total += self.rank(end(cat, a));
                (a, off)
            })
            .collect();
        (layout, total)
    }

    pub fn bracket_rank(&self, x: SimplexRef) -> usize {
        self.bracket_layout(x).1
    }

    fn compatible(&self, other: &XObject) -> Result<()> {
        if self.variance != other.variance {
            return Err(Error::Incompatible("variance".into()));
        }
        if self.ring != other.ring {
            return Err(Error::RingMismatch(
                self.ring.to_string(),
                other.ring.to_string(),
            ));
        }
        if !(Arc::ptr_eq(&self.cat, &other.cat) || self.cat.delta() == other.cat.delta()) {
            return Err(Error::Incompatible("base Δ-set".into()));
        }
        Ok(())
    }
}

/// Total rank of `Hom(L, M)`: one block per morphism of the simplex category.
pub fn hom_rank(l: &XObject, m: &XObject) -> usize {
    l.cat
        .morphisms()
        .iter()
        .map(|phi| match l.variance {
            Variance::Contravariant => l.rank(phi.source()) * m.rank(phi.target()),
            Variance::Covariant => l.rank(phi.target()) * m.rank(phi.source()),
        })
        .sum()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct XMorphism {
    source: XObject,
    target: XObject,
    components: BTreeMap<MorphId, Matrix>,
}

impl XMorphism {
    pub fn new(
        source: XObject,
        target: XObject,
        components: BTreeMap<MorphId, Matrix>,
    ) -> Result<Self> {
        source.compatible(&target)?;
        let cat = &source.cat;
        let mut kept = BTreeMap::new();
        for (phi, m) in components {
            if phi >= cat.len() {
                return Err(Error::Shape(format!("no morphism with id {phi}")));
            }
            let expected = Self::shape_of(&source, &target, phi);
            if m.shape() != expected {
                return Err(Error::Shape(format!(
                    "component at {} is {:?}, expected {:?}",
                    cat.describe(phi),
                    m.shape(),
                    expected
                )));
            }
            if m.ring() != source.ring {
                return Err(Error::RingMismatch(
                    source.ring.to_string(),
                    m.ring().to_string(),
                ));
            }
            if !m.is_zero() {
                kept.insert(phi, m);
            }
        }
        Ok(Self {
            source,
            target,
            components: kept,
        })
    }

    fn shape_of(source: &XObject, target: &XObject, phi: MorphId) -> (usize, usize) {
        let cat = &source.cat;
        let (x, y) = (cat.source(phi), cat.target(phi));
        match source.variance {
            Variance::Contravariant => (target.rank(y), source.rank(x)),
            Variance::Covariant => (target.rank(x), source.rank(y)),
        }
    }

    pub fn zero(source: XObject, target: XObject) -> Self {
        Self {
            source,
            target,
            components: BTreeMap::new(),
        }
    }

    pub fn identity(obj: &XObject) -> Self {
        let cat = &obj.cat;
        let components = cat
            .delta()
            .simplices()
            .filter(|&x| obj.rank(x) > 0)
            .map(|x| (cat.identity(x), Matrix::identity(obj.ring, obj.rank(x))))
            .collect();
        Self {
            source: obj.clone(),
            target: obj.clone(),
            components,
        }
    }

    pub fn source(&self) -> &XObject {
        &self.source
    }

    pub fn target(&self) -> &XObject {
        &self.target
    }

    /// Nonzero components.
    pub fn components(&self) -> &BTreeMap<MorphId, Matrix> {
        &self.components
    }

    pub fn component(&self, phi: MorphId) -> Matrix {
        self.components.get(&phi).cloned().unwrap_or_else(|| {
            let (r, c) = Self::shape_of(&self.source, &self.target, phi);
            Matrix::zeros(self.source.ring, r, c)
        })
    }

    pub fn is_zero(&self) -> bool {
        self.components.is_empty()
    }

    pub fn add(&self, other: &XMorphism) -> Result<XMorphism> {
        if self.source != other.source || self.target != other.target {
            return Err(Error::Incompatible(
                "sum of morphisms with different ends".into(),
            ));
        }
        let mut components = self.components.clone();
        for (&phi, m) in &other.components {
            match components.get_mut(&phi) {
                Some(c) => c.add_assign(m),
                None => {
                    components.insert(phi, m.clone());
                }
            }
        }
        XMorphism::new(self.source.clone(), self.target.clone(), components)
    }

    pub fn scale(&self, k: i64) -> XMorphism {
        let components = self
            .components
            .iter()
            .map(|(&p, m)| (p, m.scale(k)))
            .collect();
        XMorphism::new(self.source.clone(), self.target.clone(), components)
            .expect("shapes unchanged")
    }

    /// `f[x] : M[x] → N[x]`.
    pub fn bracket(&self, x: SimplexRef) -> Matrix {
        let cat = &self.source.cat;
        let (src, src_total) = self.source.bracket_layout(x);
        let (dst, dst_total) = self.target.bracket_layout(x);
        let dst_offset: BTreeMap<MorphId, usize> = dst.into_iter().collect();
        let mut out = Matrix::zeros(self.source.ring, dst_total, src_total);
        for (alpha, col) in src {
            match self.source.variance {
                Variance::Contravariant => {
                    // θ : y → z with β = θα
                    for &theta in cat.star(cat.target(alpha)) {
                        if let Some(m) = self.components.get(&theta) {
                            out.add_block(dst_offset[&cat.compose(theta, alpha)], col, m);
                        }
                    }
                }
                Variance::Covariant => {
                    // θ : w → y with β = αθ
                    for &theta in cat.costar(cat.source(alpha)) {
                        if let Some(m) = self.components.get(&theta) {
                            out.add_block(dst_offset[&cat.compose(alpha, theta)], col, m);
                        }
                    }
                }
            }
        }
        out
    }

    /// `f(X) : M(X) → N(X)`, summing the components between each pair of
    /// simplices.
    pub fn assemble(&self) -> Matrix {
        let cat = &self.source.cat;
        let (so, to) = (self.source.offsets(), self.target.offsets());
        let mut out = Matrix::zeros(
            self.source.ring,
            self.target.total_rank(),
            self.source.total_rank(),
        );
        for (&phi, m) in &self.components {
            let (x, y) = (
                cat.delta().flat_index(cat.source(phi)),
                cat.delta().flat_index(cat.target(phi)),
            );
            match self.source.variance {
                Variance::Contravariant => out.add_block(to[y], so[x], m),
                Variance::Covariant => out.add_block(to[x], so[y], m),
            }
        }
        out
    }
}

/// `g ∘ f`: the component at `ψ` sums `g(θ)·f(φ)` (contravariant) or
/// `g(φ)·f(θ)` (covariant) over all factorizations `ψ = θφ`.
pub fn compose(g: &XMorphism, f: &XMorphism) -> Result<XMorphism> {
    if f.target != g.source {
        return Err(Error::Incompatible(
            "target of f is not the source of g".into(),
        ));
    }
    let cat = &f.source.cat;
    let mut components: BTreeMap<MorphId, Matrix> = BTreeMap::new();
    let mut add = |psi: MorphId, m: Matrix| match components.get_mut(&psi) {
        Some(c) => c.add_assign(&m),
        None => {
            components.insert(psi, m);
        }
    };
    match f.source.variance {
        Variance::Contravariant => {
            for (&phi, fm) in &f.components {
                for &theta in cat.star(cat.target(phi)) {
                    if let Some(gm) = g.components.get(&theta) {
                        add(cat.compose(theta, phi), gm.mul(fm));
                    }
                }
            }
        }
        Variance::Covariant => {
            for (&theta, fm) in &f.components {
                for &phi in cat.costar(cat.source(theta)) {
                    if let Some(gm) = g.components.get(&phi) {
                        add(cat.compose(theta, phi), gm.mul(fm));
                    }
                }
            }
        }
    }
    XMorphism::new(f.source.clone(), g.target.clone(), components)
}

/// A bounded chain complex in `A*(X)` or `A^(X)`; `d(n) : C_n → C_{n−1}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct XComplex {
    lo: i64,
    objects: Vec<XObject>,
    // diffs[k] = d(lo + k); diffs[0] maps into the zero object
    diffs: Vec<XMorphism>,
    zero: XObject,
}

impl XComplex {
    /// Checks shapes and that the composite differential vanishes.
    pub fn new(lo: i64, objects: Vec<XObject>, diffs: Vec<XMorphism>) -> Result<Self> {
        let Some(first) = objects.first() else {
            return Err(Error::Shape(
                "an X-complex needs at least one degree".into(),
            ));
        };
        if objects.len() != diffs.len() {
            return Err(Error::Shape("one differential per degree".into()));
        }
        let zero = XObject::zero(Arc::clone(&first.cat), first.variance, first.ring);
        for (k, (obj, d)) in objects.iter().zip(&diffs).enumerate() {
            obj.compatible(first)?;
            let below = if k == 0 { &zero } else { &objects[k - 1] };
            if d.source != *obj || d.target != *below {
                return Err(Error::Shape(format!(
                    "differential at degree {} has the wrong ends",
                    lo + k as i64
                )));
            }
        }
        for k in 1..diffs.len() {
            if !compose(&diffs[k - 1], &diffs[k])?.is_zero() {
                return Err(Error::NotAComplex(lo + k as i64));
            }
        }
        Ok(Self {
            lo,
            objects,
            diffs,
            zero,
        })
    }

    /// Build from per-degree rank vectors and sparse differential components.
    pub fn from_parts(
        cat: Arc<SimplexCategory>,
        variance: Variance,
        ring: Ring,
        lo: i64,
        ranks: Vec<Vec<usize>>,
        components: Vec<BTreeMap<MorphId, Matrix>>,
    ) -> Result<Self> {
        let objects = ranks
            .into_iter()
            .map(|r| XObject::new(Arc::clone(&cat), variance, ring, r))
            .collect::<Result<Vec<_>>>()?;
        let zero = XObject::zero(Arc::clone(&cat), variance, ring);
        let mut diffs = Vec::new();
        for (k, comps) in components.into_iter().enumerate() {
            let below = if k == 0 {
                zero.clone()
            } else {
                objects[k - 1].clone()
            };
            diffs.push(XMorphism::new(objects[k].clone(), below, comps)?);
        }
        Self::new(lo, objects, diffs)
    }

    pub fn category(&self) -> &Arc<SimplexCategory> {
        &self.zero.cat
    }

    pub fn variance(&self) -> Variance {
        self.zero.variance
    }

    pub fn ring(&self) -> Ring {
        self.zero.ring
    }

    pub fn lo(&self) -> i64 {
        self.lo
    }

    pub fn hi(&self) -> i64 {
        self.lo + self.objects.len() as i64 - 1
    }

    pub fn degrees(&self) -> std::ops::RangeInclusive<i64> {
        self.lo..=self.hi()
    }

    pub fn object(&self, n: i64) -> &XObject {
        match self.index(n) {
            Some(k) => &self.objects[k],
            None => &self.zero,
        }
    }

    pub fn d(&self, n: i64) -> XMorphism {
        match self.index(n) {
            Some(k) => self.diffs[k].clone(),
            None => XMorphism::zero(self.object(n).clone(), self.object(n - 1).clone()),
        }
    }

    fn index(&self, n: i64) -> Option<usize> {
        let k = n - self.lo;
        (k >= 0 && (k as usize) < self.objects.len()).then_some(k as usize)
    }

    /// `C[x]`.
    pub fn bracket(&self, x: SimplexRef) -> ChainComplex {
        let ranks: BTreeMap<i64, usize> = self
            .degrees()
            .map(|n| (n, self.object(n).bracket_rank(x)))
            .collect();
        let diffs = self.degrees().map(|n| (n, self.d(n).bracket(x))).collect();
        ChainComplex::from_maps(self.ring(), &ranks, diffs)
            .expect("brackets of a complex are complexes")
    }

    /// `C(x)` with the identity components of the differential.
    pub fn diagonal(&self, x: SimplexRef) -> ChainComplex {
        let id = self.category().identity(x);
        let ranks: BTreeMap<i64, usize> = self
            .degrees()
            .map(|n| (n, self.object(n).rank(x)))
            .collect();
        let diffs = self
            .degrees()
            .map(|n| (n, self.d(n).component(id)))
            .collect();
        ChainComplex::from_maps(self.ring(), &ranks, diffs)
            .expect("diagonals of a complex are complexes")
    }

    /// `C(X) = ⊕ₓ C(x)`.
    pub fn assemble(&self) -> ChainComplex {
        let ranks: BTreeMap<i64, usize> = self
            .degrees()
            .map(|n| (n, self.object(n).total_rank()))
            .collect();
        let diffs = self.degrees().map(|n| (n, self.d(n).assemble())).collect();
        ChainComplex::from_maps(self.ring(), &ranks, diffs).expect("assembly preserves d² = 0")
    }

    /// `{"variance", "ring", "ranks": {simplex: {degree: rank}}, "components": [...]}`.
    pub fn to_json(&self) -> Value {
        let cat = self.category();
        let x = cat.delta();
        let mut ranks = Map::new();
        for s in x.simplices() {
            let mut per = Map::new();
            for n in self.degrees() {
                let r = self.object(n).rank(s);
                if r > 0 {
                    per.insert(n.to_string(), json!(r));
                }
            }
            ranks.insert(x.label(s).to_string(), Value::Object(per));
        }
        let mut comps = Vec::new();
        for n in self.degrees() {
            for (&phi, m) in self.d(n).components() {
                comps.push(json!({
                    "degree": n,
                    "source": x.label(cat.source(phi)),
                    "target": x.label(cat.target(phi)),
                    "injection": cat.morphism(phi).injection().image(),
                    "matrix": m.to_json(),
                }));
            }
        }
        json!({
            "variance": self.variance(),
            "ring": self.ring(),
            "ranks": ranks,
            "components": comps,
        })
    }
}

/// A map of X-complexes: one [`XMorphism`] per degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct XChainMap {
    source: XComplex,
    target: XComplex,
    components: BTreeMap<i64, XMorphism>,
}

impl XChainMap {
    /// Checks ends and `d f = f d`.
    pub fn new(
        source: XComplex,
        target: XComplex,
        components: BTreeMap<i64, XMorphism>,
    ) -> Result<Self> {
        source.zero.compatible(&target.zero)?;
        for (&n, f) in &components {
            if f.source != *source.object(n) || f.target != *target.object(n) {
                return Err(Error::Shape(format!(
                    "component at degree {n} has the wrong ends"
                )));
            }
        }
        let map = Self {
            source,
            target,
            components,
        };
        let lo = map.source.lo.min(map.target.lo);
        let hi = map.source.hi().max(map.target.hi()) + 1;
        for n in lo..=hi {
            let left = compose(&map.target.d(n), &map.component(n))?;
            let right = compose(&map.component(n - 1), &map.source.d(n))?;
            if left != right {
                return Err(Error::Shape(format!("not a chain map at degree {n}")));
            }
        }
        Ok(map)
    }

    pub fn identity(c: &XComplex) -> Self {
        let components = c
            .degrees()
            .map(|n| (n, XMorphism::identity(c.object(n))))
            .collect();
        Self {
            source: c.clone(),
            target: c.clone(),
            components,
        }
    }

    pub fn source(&self) -> &XComplex {
        &self.source
    }

    pub fn target(&self) -> &XComplex {
        &self.target
    }

    pub fn component(&self, n: i64) -> XMorphism {
        self.components.get(&n).cloned().unwrap_or_else(|| {
            XMorphism::zero(self.source.object(n).clone(), self.target.object(n).clone())
        })
    }

    /// `other ∘ self`.
    pub fn then(&self, other: &XChainMap) -> Result<XChainMap> {
        if self.target != other.source {
            return Err(Error::Incompatible("chain maps are not composable".into()));
        }
        let mut components = BTreeMap::new();
        for n in self.source.degrees() {
            components.insert(n, compose(&other.component(n), &self.component(n))?);
        }
        XChainMap::new(self.source.clone(), other.target.clone(), components)
    }

    /// `f[x] : C[x] → D[x]`.
    pub fn bracket(&self, x: SimplexRef) -> ChainMap {
        let components = self
            .source
            .degrees()
            .map(|n| (n, self.component(n).bracket(x)))
            .collect();
        ChainMap::new(self.source.bracket(x), self.target.bracket(x), components)
            .expect("brackets of a chain map are chain maps")
    }

    /// `f(1ₓ) : C(x) → D(x)`.
    pub fn diagonal(&self, x: SimplexRef) -> ChainMap {
        let id = self.source.category().identity(x);
        let components = self
            .source
            .degrees()
            .map(|n| (n, self.component(n).component(id)))
            .collect();
        ChainMap::new(self.source.diagonal(x), self.target.diagonal(x), components)
            .expect("diagonal components of a chain map are chain maps")
    }

    pub fn assemble(&self) -> ChainMap {
        let components = self
            .source
            .degrees()
            .map(|n| (n, self.component(n).assemble()))
            .collect();
        ChainMap::new(self.source.assemble(), self.target.assemble(), components)
            .expect("assembly is a functor")
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SimplexVerdict {
    pub simplex: String,
    pub ok: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EquivalenceReport {
    pub verdict: bool,
    pub simplices: Vec<SimplexVerdict>,
}

fn report(f: &XChainMap, local: impl Fn(SimplexRef) -> Result<bool>) -> Result<EquivalenceReport> {
    f.source.ring().ensure_scalar()?;
    let x = f.source.category().delta();
    let mut simplices = Vec::new();
    for s in x.simplices() {
        simplices.push(SimplexVerdict {
            simplex: x.label(s).to_string(),
            ok: local(s)?,
        });
    }
    Ok(EquivalenceReport {
        verdict: simplices.iter().all(|s| s.ok),
        simplices,
    })
}

/// Every bracket map `f[x]` is a quasi-isomorphism (for bounded complexes of
/// free modules, a chain equivalence).
pub fn is_weak_equivalence(f: &XChainMap) -> Result<EquivalenceReport> {
    report(f, |x| f.bracket(x).is_quasi_isomorphism())
}

/// Every diagonal component `f(1ₓ)` is a quasi-isomorphism.
pub fn local_criterion(f: &XChainMap) -> Result<EquivalenceReport> {
    report(f, |x| f.diagonal(x).is_quasi_isomorphism())
}

/// `Δ(X')` as a contravariant X-complex: the component at `x` in degree `n`
/// is free on the `n`-chains of `X'` starting at `x`.
///
/// Faces `∂ᵢ`, `i ≥ 1`, stay at `x` with sign `(−1)^i`; `∂₀` moves to the
/// target of the first link `φ` and is recorded in the component at `φ`.
pub fn delta_prime_as_xcomplex(sub: &Subdivision, ring: Ring) -> XComplex {
    let cat = sub.shared_category();
    let x = sub.base();
    let top = sub.delta().counts().len();
    if top == 0 {
        return XComplex::from_parts(
            cat,
            Variance::Contravariant,
            ring,
            0,
            vec![vec![]],
            vec![BTreeMap::new()],
        )
        .expect("empty complex");
    }
    let basis: Vec<Vec<Vec<SimplexRef>>> = (0..top)
        .map(|n| x.simplices().map(|s| sub.chains_based_at(s, n)).collect())
        .collect();
    let position = |n: usize, r: SimplexRef| -> usize {
        let base = x.flat_index(sub.chain(r).base);
        basis[n][base]
            .iter()
            .position(|&c| c == r)
            .expect("chain is listed under its base")
    };
    let ranks: Vec<Vec<usize>> = basis
        .iter()
        .map(|per| per.iter().map(Vec::len).collect())
        .collect();
    let mut components = vec![BTreeMap::new()];
    for n in 1..top {
        let mut comps: BTreeMap<MorphId, Matrix> = BTreeMap::new();
        for s in x.simplices() {
            let flat = x.flat_index(s);
            for (col, &c) in basis[n][flat].iter().enumerate() {
                let chain = sub.chain(c);
                for i in 0..=n {
                    let face = sub.delta().face(c, i);
                    let (phi, sign) = if i == 0 {
                        (chain.links[0], 1)
                    } else {
                        (cat.identity(s), if i % 2 == 0 { 1 } else { -1 })
                    };
                    let y = cat.target(phi);
                    let entry = comps.entry(phi).or_insert_with(|| {
                        Matrix::zeros(ring, ranks[n - 1][x.flat_index(y)], ranks[n][flat])
                    });
                    entry.add_group_element(position(n - 1, face), col, 0, sign);
                }
            }
        }
        components.push(comps);
    }
    XComplex::from_parts(cat, Variance::Contravariant, ring, 0, ranks, components)
        .expect("Δ(X') is a complex in A*(X)")
}

/// The `X'`-simplex behind each basis element of the assembled `Δ(X')`, per
/// degree.
pub fn delta_prime_basis(sub: &Subdivision) -> Vec<Vec<SimplexRef>> {
    let x = sub.base();
    (0..sub.delta().counts().len())
        .map(|n| {
            x.simplices()
                .flat_map(|s| sub.chains_based_at(s, n))
                .collect()
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{homology, simplicial_chain_complex};
    use crate::delta::standard_simplex;
    use crate::fixtures;

    fn circle_cat() -> Arc<SimplexCategory> {
        Arc::new(SimplexCategory::new(&fixtures::circle()))
    }

    fn ones(cat: &Arc<SimplexCategory>) -> XObject {
        XObject::new(
            Arc::clone(cat),
            Variance::Contravariant,
            Ring::Integers,
            vec![1; cat.delta().num_simplices()],
        )
        .unwrap()
    }

    fn scalar(v: i64) -> Matrix {
        Matrix::from_rows(Ring::Integers, &[vec![v]])
    }

    #[test]
    fn composition_on_the_circle_arrows() {
        let cat = circle_cat();
        let m = ones(&cat);
        // f and g with distinct values on every morphism
        let f = XMorphism::new(
            m.clone(),
            m.clone(),
            (0..cat.len()).map(|p| (p, scalar(p as i64 + 2))).collect(),
        )
        .unwrap();
        let g = XMorphism::new(
            m.clone(),
            m.clone(),
            (0..cat.len())
                .map(|p| (p, scalar(10 * p as i64 + 3)))
                .collect(),
        )
        .unwrap();
        let gf = compose(&g, &f).unwrap();
        let x = fixtures::circle();
        let (x0, x1) = (x.require("x0").unwrap(), x.require("x1").unwrap());
        for psi in cat.between(x0, x1) {
            let expected = g
                .component(psi)
                .mul(&f.component(cat.identity(x0)))
                .add(&g.component(cat.identity(x1)).mul(&f.component(psi)));
            assert_eq!(gf.component(psi), expected);
            assert_eq!(cat.factorizations(psi).len(), 2);
        }
        assert_eq!(compose(&XMorphism::identity(&m), &f).unwrap(), f);
        assert_eq!(compose(&f, &XMorphism::identity(&m)).unwrap(), f);
        assert!(compose(&XMorphism::zero(m.clone(), m.clone()), &f)
            .unwrap()
            .is_zero());
    }

    #[test]
    fn assembly_is_functorial() {
        let cat = Arc::new(SimplexCategory::new(&fixtures::dunce_hat()));
        let m = ones(&cat);
        let f = XMorphism::new(
            m.clone(),
            m.clone(),
            (0..cat.len()).map(|p| (p, scalar(p as i64 - 3))).collect(),
        )
        .unwrap();
        let g = XMorphism::new(
            m.clone(),
            m.clone(),
            (0..cat.len())
                .map(|p| (p, scalar(2 * p as i64 + 1)))
                .collect(),
        )
        .unwrap();
        assert_eq!(
            compose(&g, &f).unwrap().assemble(),
            g.assemble().mul(&f.assemble())
        );
    }

    #[test]
    fn hom_rank_counts_morphisms() {
        let cat = circle_cat();
        let m = ones(&cat);
        assert_eq!(hom_rank(&m, &m), cat.len());
        assert_eq!(cat.len(), 4);
    }

    #[test]
    fn brackets_of_delta_prime_are_duals() {
        for x in [
            fixtures::circle(),
            fixtures::dunce_hat(),
            standard_simplex(2),
        ] {
            let sub = Subdivision::new(&x);
            let c = delta_prime_as_xcomplex(&sub, Ring::Integers);
            for s in x.simplices() {
                let dual = sub.dual(s);
                let b = c.bracket(s);
                assert_eq!(b.ranks(), &dual.delta.counts()[..], "{}", x.label(s));
                let h = homology(&b).unwrap();
                let oracle =
                    homology(&simplicial_chain_complex(&dual.delta, Ring::Integers)).unwrap();
                assert!(h.is_isomorphic(&oracle));
            }
        }
    }

    #[test]
    fn delta_prime_component_ranks() {
        let x = fixtures::circle();
        let sub = Subdivision::new(&x);
        let c = delta_prime_as_xcomplex(&sub, Ring::Integers);
        let (x0, x1) = (x.require("x0").unwrap(), x.require("x1").unwrap());
        assert_eq!((c.object(0).rank(x0), c.object(1).rank(x0)), (1, 2));
        assert_eq!((c.object(0).rank(x1), c.object(1).rank(x1)), (1, 0));
    }

    #[test]
    fn assembled_delta_prime_is_the_subdivision_complex() {
        for x in fixtures::catalogue().into_iter().map(|(_, x)| x) {
            let sub = Subdivision::new(&x);
            let c = delta_prime_as_xcomplex(&sub, Ring::Integers).assemble();
            let oracle = simplicial_chain_complex(sub.delta(), Ring::Integers);
            let basis = delta_prime_basis(&sub);
            assert_eq!(c.rank_table(), oracle.rank_table());
            for n in 1..basis.len() {
                let (d, o) = (c.d(n as i64), oracle.d(n as i64));
                for (i, r) in basis[n - 1].iter().enumerate() {
                    for (j, s) in basis[n].iter().enumerate() {
                        assert_eq!(d.get(i, j), o.get(r.index, s.index));
                    }
                }
            }
        }
    }

    fn doubling_at(x: &crate::delta::DeltaSet, ring: Ring, at: &str) -> XChainMap {
        let cat = Arc::new(SimplexCategory::new(x));
        let obj = XObject::new(
            Arc::clone(&cat),
            Variance::Contravariant,
            ring,
            vec![1; x.num_simplices()],
        )
        .unwrap();
        let c = XComplex::from_parts(
            Arc::clone(&cat),
            Variance::Contravariant,
            ring,
            0,
            vec![obj.ranks().to_vec()],
            vec![BTreeMap::new()],
        )
        .unwrap();
        let target = x.require(at).unwrap();
        let comps = x
            .simplices()
            .map(|s| {
                (
                    cat.identity(s),
                    Matrix::from_rows(ring, &[vec![if s == target { 2 } else { 1 }]]),
                )
            })
            .collect();
        let f = XMorphism::new(obj.clone(), obj, comps).unwrap();
        XChainMap::new(c.clone(), c, BTreeMap::from([(0, f)])).unwrap()
    }

    #[test]
    fn doubling_at_one_simplex() {
        let x = fixtures::circle();
        let f = doubling_at(&x, Ring::Integers, "x1");
        let local = local_criterion(&f).unwrap();
        assert!(!local.verdict);
        assert_eq!(
            local
                .simplices
                .iter()
                .filter(|s| !s.ok)
                .map(|s| s.simplex.as_str())
                .collect::<Vec<_>>(),
            vec!["x1"]
        );
        let weak = is_weak_equivalence(&f).unwrap();
        assert!(!weak.verdict);
        assert!(
            !weak
                .simplices
                .iter()
                .find(|s| s.simplex == "x1")
                .unwrap()
                .ok
        );
        let f3 = doubling_at(&x, Ring::PrimeField(3), "x1");
        assert!(local_criterion(&f3).unwrap().verdict && is_weak_equivalence(&f3).unwrap().verdict);
    }

    #[test]
    fn identity_is_a_weak_equivalence() {
        let sub = Subdivision::new(&fixtures::dunce_hat());
        let c = delta_prime_as_xcomplex(&sub, Ring::Integers);
        let id = XChainMap::identity(&c);
        assert!(is_weak_equivalence(&id).unwrap().verdict && local_criterion(&id).unwrap().verdict);
        assert!(
            is_weak_equivalence(&XChainMap::identity(&delta_prime_as_xcomplex(
                &sub,
                Ring::CyclicGroupRing(2)
            )))
            .is_err()
        );
    }
}
