//! Barycentric subdivision as the nerve of the simplex category, dual
//! complexes `x⊥ ⊇ ∂x⊥`, characteristic maps, strict pullbacks and local
//! (star) homology.

use std::collections::HashMap;
use std::sync::Arc;

use serde::Serialize;

use crate::algebra::{homology, relative_complex, GradedGroup, Ring};
use crate::delta::{DeltaMap, DeltaSet, MorphId, SimplexCategory, SimplexRef, SubDeltaSet};
use crate::error::{Error, Result};

/// A string `x₀ → x₁ → … → xₙ` of non-identity morphisms.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MorphismChain {
    pub base: SimplexRef,
    pub links: Vec<MorphId>,
}

impl MorphismChain {
    pub fn len(&self) -> usize {
        self.links.len()
    }

    pub fn is_empty(&self) -> bool {
        self.links.is_empty()
    }

    /// `xₖ`.
    pub fn object(&self, cat: &SimplexCategory, k: usize) -> SimplexRef {
        if k == 0 {
            self.base
        } else {
            cat.target(self.links[k - 1])
        }
    }

    pub fn last(&self, cat: &SimplexCategory) -> SimplexRef {
        self.object(cat, self.links.len())
    }

    /// The nerve face `∂ᵢ`: drop `x₀`, compose at `xᵢ`, or drop `xₙ`.
    pub fn face(&self, cat: &SimplexCategory, i: usize) -> MorphismChain {
        let n = self.links.len();
        assert!(n >= 1 && i <= n);
        let mut links = self.links.clone();
        if i == 0 {
            let first = links.remove(0);
            MorphismChain {
                base: cat.target(first),
                links,
            }
        } else if i == n {
            links.pop();
            MorphismChain {
                base: self.base,
                links,
            }
        } else {
            let composite = cat.compose(links[i], links[i - 1]);
            links.splice(i - 1..=i, [composite]);
            MorphismChain {
                base: self.base,
                links,
            }
        }
    }

    /// `x0-[0]->x1-[0,1]->x2`.
    pub fn label(&self, cat: &SimplexCategory) -> String {
        let x = cat.delta();
        let mut s = x.label(self.base).to_string();
        for &m in &self.links {
            s.push_str(&format!(
                "-{}->{}",
                cat.morphism(m).injection(),
                x.label(cat.target(m))
            ));
        }
        s
    }
}

/// `X'` together with the chain behind each of its simplices.
#[derive(Clone, Debug)]
pub struct Subdivision {
    category: Arc<SimplexCategory>,
    delta: DeltaSet,
    chains: Vec<Vec<MorphismChain>>,
    lookup: HashMap<MorphismChain, SimplexRef>,
}

/// All non-degenerate chains, by length; each dimension extends the previous
/// one along the stars of the last object.
fn enumerate_chains(cat: &SimplexCategory) -> Vec<Vec<MorphismChain>> {
    let x = cat.delta();
    let mut out: Vec<Vec<MorphismChain>> = Vec::new();
    let vertices: Vec<MorphismChain> = x
        .simplices()
        .map(|base| MorphismChain {
            base,
            links: Vec::new(),
        })
        .collect();
    if vertices.is_empty() {
        return out;
    }
    out.push(vertices);
    loop {
        let mut next = Vec::new();
        for c in out.last().expect("nonempty") {
            for &m in cat.star(c.last(cat)) {
                if !cat.is_identity(m) {
                    let mut links = c.links.clone();
                    links.push(m);
                    next.push(MorphismChain {
                        base: c.base,
                        links,
                    });
                }
            }
        }
        if next.is_empty() {
            return out;
        }
        out.push(next);
    }
}

/// Nerve of a list of chains as a Δ-set, with `face` giving the nerve faces.
fn nerve_delta_set<C: Clone + Eq + std::hash::Hash>(
    chains: &[Vec<C>],
    label: impl Fn(&C) -> String,
    face: impl Fn(&C, usize) -> C,
) -> (DeltaSet, HashMap<C, SimplexRef>) {
    let mut lookup = HashMap::new();
    for (n, list) in chains.iter().enumerate() {
        for (k, c) in list.iter().enumerate() {
            lookup.insert(c.clone(), SimplexRef::new(n, k));
        }
    }
    let labels: Vec<Vec<String>> = chains
        .iter()
        .map(|l| l.iter().map(&label).collect())
        .collect();
    let faces: Vec<Vec<Vec<usize>>> = chains
        .iter()
        .enumerate()
        .map(|(n, list)| {
            list.iter()
                .map(|c| {
                    if n == 0 {
                        Vec::new()
                    } else {
                        (0..=n).map(|i| lookup[&face(c, i)].index).collect()
                    }
                })
                .collect()
        })
        .collect();
    let delta = DeltaSet::from_parts(labels, faces).expect("nerves are well formed");
    (delta, lookup)
}

impl Subdivision {
    pub fn new(x: &DeltaSet) -> Self {
        let category = Arc::new(SimplexCategory::new(x));
        let chains = enumerate_chains(&category);
        let (delta, lookup) =
            nerve_delta_set(&chains, |c| c.label(&category), |c, i| c.face(&category, i));
        Self {
            category,
            delta,
            chains,
            lookup,
        }
    }

    /// The original Δ-set `X`.
    pub fn base(&self) -> &DeltaSet {
        self.category.delta()
    }

    pub fn category(&self) -> &SimplexCategory {
        &self.category
    }

    pub fn shared_category(&self) -> Arc<SimplexCategory> {
        Arc::clone(&self.category)
    }

    /// `X'`.
    pub fn delta(&self) -> &DeltaSet {
        &self.delta
    }

    pub fn chain(&self, r: SimplexRef) -> &MorphismChain {
        &self.chains[r.dim][r.index]
    }

    pub fn find(&self, chain: &MorphismChain) -> Option<SimplexRef> {
        self.lookup.get(chain).copied()
    }

    /// `X'`-simplices whose chain starts at `x`, in `X'` order.
    pub fn chains_based_at(&self, x: SimplexRef, n: usize) -> Vec<SimplexRef> {
        self.chains
            .get(n)
            .map(|list| {
                list.iter()
                    .enumerate()
                    .filter(|(_, c)| c.base == x)
                    .map(|(k, _)| SimplexRef::new(n, k))
                    .collect()
            })
            .unwrap_or_default()
    }

    /// The dual complex `(x⊥, ∂x⊥)` with its characteristic map into `X'`.
    pub fn dual(&self, x: SimplexRef) -> DualComplex {
        let cat = &self.category;
        let mut chains: Vec<Vec<DualChain>> = Vec::new();
        let mut current: Vec<DualChain> = cat
            .star(x)
            .iter()
            .map(|&lead| DualChain {
                lead,
                links: Vec::new(),
            })
            .collect();
        while !current.is_empty() {
            let mut next = Vec::new();
            for c in &current {
                let last = c.last(cat);
                for &m in cat.star(last) {
                    if !cat.is_identity(m) {
                        let mut links = c.links.clone();
                        links.push(m);
                        next.push(DualChain {
                            lead: c.lead,
                            links,
                        });
                    }
                }
            }
            chains.push(current);
            current = next;
        }
        let anchor_label = cat.delta().label(x).to_string();
        let (delta, _) = nerve_delta_set(
            &chains,
            |c| {
                format!(
                    "{anchor_label}|{}|{}",
                    cat.morphism(c.lead).injection(),
                    c.tail(cat).label(cat)
                )
            },
            |c, i| c.face(cat, i),
        );
        let boundary = SubDeltaSet::from_refs(
            &delta,
            chains.iter().enumerate().flat_map(|(n, list)| {
                list.iter()
                    .enumerate()
                    .filter(|(_, c)| !cat.is_identity(c.lead))
                    .map(move |(k, _)| SimplexRef::new(n, k))
            }),
        );
        let characteristic = DeltaMap::new(
            chains
                .iter()
                .map(|list| {
                    list.iter()
                        .map(|c| self.lookup[&c.tail(cat)].index)
                        .collect()
                })
                .collect(),
        );
        DualComplex {
            anchor: x,
            delta,
            boundary,
            chains,
            characteristic,
        }
    }

    /// For `α : x → y`, the Δ-map `y⊥ → x⊥`, `(y → y₀ → …) ↦ (x → y₀ → …)`.
    pub fn induced_dual_map(&self, alpha: MorphId) -> (DualComplex, DualComplex, DeltaMap) {
        let cat = &self.category;
        let (dx, dy) = (self.dual(cat.source(alpha)), self.dual(cat.target(alpha)));
        let index: HashMap<&DualChain, usize> = dx
            .chains
            .iter()
            .flat_map(|l| l.iter().enumerate().map(|(k, c)| (c, k)))
            .collect();
        let assignment = dy
            .chains
            .iter()
            .map(|list| {
                list.iter()
                    .map(|c| {
                        let moved = DualChain {
                            lead: cat.compose(c.lead, alpha),
                            links: c.links.clone(),
                        };
                        index[&moved]
                    })
                    .collect()
            })
            .collect();
        (dy, dx, DeltaMap::new(assignment))
    }
}

pub fn barycentric_subdivide(x: &DeltaSet) -> Subdivision {
    Subdivision::new(x)
}

/// A simplex of `x⊥`: `x → x₀` (possibly the identity) followed by a chain of
/// non-identity morphisms out of `x₀`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct DualChain {
    pub lead: MorphId,
    pub links: Vec<MorphId>,
}

impl DualChain {
    fn last(&self, cat: &SimplexCategory) -> SimplexRef {
        self.links
            .last()
            .map_or(cat.target(self.lead), |&m| cat.target(m))
    }

    /// The chain `x₀ → … → xₙ` with the leading morphism forgotten.
    pub fn tail(&self, cat: &SimplexCategory) -> MorphismChain {
        MorphismChain {
            base: cat.target(self.lead),
            links: self.links.clone(),
        }
    }

    fn face(&self, cat: &SimplexCategory, i: usize) -> DualChain {
        let n = self.links.len();
        assert!(n >= 1 && i <= n);
        let mut links = self.links.clone();
        if i == 0 {
            let first = links.remove(0);
            DualChain {
                lead: cat.compose(first, self.lead),
                links,
            }
        } else if i == n {
            links.pop();
            DualChain {
                lead: self.lead,
                links,
            }
        } else {
            let composite = cat.compose(links[i], links[i - 1]);
            links.splice(i - 1..=i, [composite]);
            DualChain {
                lead: self.lead,
                links,
            }
        }
    }
}

/// `x⊥` with `∂x⊥` marked and the characteristic map `i : x⊥ → X'`.
#[derive(Clone, Debug)]
pub struct DualComplex {
    pub anchor: SimplexRef,
    pub delta: DeltaSet,
    pub boundary: SubDeltaSet,
    pub chains: Vec<Vec<DualChain>>,
    pub characteristic: DeltaMap,
}

impl DualComplex {
    /// `∂x⊥` as a Δ-set together with the characteristic map restricted to it.
    pub fn boundary_delta_with_map(&self) -> (DeltaSet, DeltaMap) {
        let (bd, inc) = self
            .boundary
            .to_delta_set(&self.delta)
            .expect("∂x⊥ is closed");
        let map = inc.then(&self.characteristic);
        (bd, map)
    }

    /// `H_*(x⊥, ∂x⊥; R)`.
    pub fn relative_homology(&self, ring: Ring) -> Result<GradedGroup> {
        homology(&relative_complex(&self.delta, &self.boundary, ring)?)
    }
}

/// The simplices hit by `f` (a sub-Δ-set of the target: images of faces are
/// faces of images).
pub fn image_subdelta(f: &DeltaMap, source: &DeltaSet, target: &DeltaSet) -> SubDeltaSet {
    SubDeltaSet::from_refs(target, source.simplices().map(|r| f.apply(r)))
}

/// `H_*(i(x⊥), i(∂x⊥); R)` computed inside `X'`.
pub fn image_pair_homology(
    sub: &Subdivision,
    dual: &DualComplex,
    ring: Ring,
) -> Result<GradedGroup> {
    let whole = image_subdelta(&dual.characteristic, &dual.delta, sub.delta());
    let (image, inclusion) = whole.to_delta_set(sub.delta())?;
    let (bd_delta, bd_map) = dual.boundary_delta_with_map();
    let bd = image_subdelta(&bd_map, &bd_delta, sub.delta());
    // the boundary image, seen inside the image Δ-set
    let inside = SubDeltaSet::from_refs(
        &image,
        image
            .simplices()
            .filter(|&r| bd.contains(inclusion.apply(r))),
    );
    homology(&relative_complex(&image, &inside, ring)?)
}

/// The strict pullback `x/f` of `i : x⊥ → X'` along `f : Y → X'`, with the
/// pullback of `∂x⊥`.
pub fn strict_pullback(
    sub: &Subdivision,
    y: &DeltaSet,
    f: &DeltaMap,
    x: SimplexRef,
) -> Result<(DeltaSet, SubDeltaSet)> {
    f.check(y, sub.delta())
        .map_err(|e| Error::NotIntoSubdivision(e.to_string()))?;
    let dual = sub.dual(x);
    let top = y.counts().len().min(dual.delta.counts().len());
    let mut pairs: Vec<Vec<(usize, usize)>> = Vec::new();
    for n in 0..top {
        let mut list = Vec::new();
        for a in 0..y.count(n) {
            for b in 0..dual.delta.count(n) {
                if f.apply(SimplexRef::new(n, a))
                    == dual.characteristic.apply(SimplexRef::new(n, b))
                {
                    list.push((a, b));
                }
            }
        }
        if list.is_empty() {
            break;
        }
        pairs.push(list);
    }
    let index: Vec<HashMap<(usize, usize), usize>> = pairs
        .iter()
        .map(|l| l.iter().enumerate().map(|(k, &p)| (p, k)).collect())
        .collect();
    let labels = pairs
        .iter()
        .enumerate()
        .map(|(n, l)| {
            l.iter()
                .map(|&(a, b)| {
                    format!(
                        "({},{})",
                        y.label(SimplexRef::new(n, a)),
                        dual.delta.label(SimplexRef::new(n, b))
                    )
                })
                .collect()
        })
        .collect();
    let faces = pairs
        .iter()
        .enumerate()
        .map(|(n, l)| {
            l.iter()
                .map(|&(a, b)| {
                    if n == 0 {
                        return Vec::new();
                    }
                    (0..=n)
                        .map(|i| {
                            let fa = y.face(SimplexRef::new(n, a), i).index;
                            let fb = dual.delta.face(SimplexRef::new(n, b), i).index;
                            index[n - 1][&(fa, fb)]
                        })
                        .collect()
                })
                .collect()
        })
        .collect();
    let pullback = DeltaSet::from_parts(labels, faces)?;
    let boundary = SubDeltaSet::from_refs(
        &pullback,
        pairs.iter().enumerate().flat_map(|(n, l)| {
            let dual = &dual;
            l.iter()
                .enumerate()
                .filter(move |(_, &(_, b))| dual.boundary.contains(SimplexRef::new(n, b)))
                .map(move |(k, _)| SimplexRef::new(n, k))
        }),
    );
    Ok((pullback, boundary))
}

/// `H_*(st(x); R) = H_{*−|x|}(x⊥, ∂x⊥; R)`.
pub fn star_homology(x_set: &DeltaSet, x: SimplexRef, ring: Ring) -> Result<GradedGroup> {
    ring.ensure_scalar()?;
    let sub = Subdivision::new(x_set);
    star_homology_in(&sub, x, ring)
}

pub fn star_homology_in(sub: &Subdivision, x: SimplexRef, ring: Ring) -> Result<GradedGroup> {
    Ok(sub.dual(x).relative_homology(ring)?.shifted(x.dim as i64))
}

/// `X ∖ st(x)`: the simplices that do not have `x` as a face.
pub fn star_complement(x_set: &DeltaSet, x: SimplexRef) -> SubDeltaSet {
    let cat = SimplexCategory::new(x_set);
    let star = SubDeltaSet::from_refs(x_set, cat.star(x).iter().map(|&m| cat.target(m)));
    star.complement()
}

#[derive(Clone, Debug, Serialize)]
pub struct StarReport {
    pub simplex: String,
    pub dim: usize,
    pub homology: GradedGroup,
    pub ok: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct ManifoldReport {
    pub dim: i64,
    pub verdict: bool,
    pub failures: Vec<String>,
    pub simplices: Vec<StarReport>,
}

/// Every star must have integral homology `ℤ` concentrated in degree `n`.
pub fn homology_manifold_check(x_set: &DeltaSet, n: i64) -> Result<ManifoldReport> {
    let sub = Subdivision::new(x_set);
    let mut simplices = Vec::new();
    for x in x_set.simplices() {
        let homology = star_homology_in(&sub, x, Ring::Integers)?;
        let ok = homology.concentrated_z() == Some(n);
        simplices.push(StarReport {
            simplex: x_set.label(x).to_string(),
            dim: x.dim,
            homology,
            ok,
        });
    }
    let failures: Vec<String> = simplices
        .iter()
        .filter(|s| !s.ok)
        .map(|s| s.simplex.clone())
        .collect();
    Ok(ManifoldReport {
        dim: n,
        verdict: failures.is_empty(),
        failures,
        simplices,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{simplicial_chain_complex, HomologyGroup};
    use crate::delta::{from_simplicial_complex, standard_simplex};
    use crate::fixtures;

    fn r(x: &DeltaSet, l: &str) -> SimplexRef {
        x.require(l).unwrap()
    }

    #[test]
    fn paper_counts() {
        assert_eq!(
            Subdivision::new(&fixtures::circle()).delta().counts(),
            vec![2, 2]
        );
        assert_eq!(
            Subdivision::new(&fixtures::dunce_hat()).delta().counts(),
            vec![3, 8, 6]
        );
        assert_eq!(
            Subdivision::new(&standard_simplex(1)).delta().counts(),
            vec![3, 2]
        );
        assert!(Subdivision::new(&DeltaSet::empty()).delta().is_empty());
    }

    #[test]
    fn labels_spell_chains() {
        let s = Subdivision::new(&fixtures::circle());
        let labels: Vec<&String> = s.delta().labels(1).iter().collect();
        assert_eq!(labels, vec!["x0-[0]->x1", "x0-[1]->x1"]);
    }

    #[test]
    fn circle_duals() {
        let x = fixtures::circle();
        let s = Subdivision::new(&x);
        let d = s.dual(r(&x, "x0"));
        assert_eq!(d.delta.counts(), vec![3, 2]);
        assert_eq!(d.boundary.counts(), vec![2]);
        assert!(d.delta.validate().is_ok());
        let h = d.relative_homology(Ring::Integers).unwrap();
        assert_eq!(h.concentrated_z(), Some(1));
        assert!(d.characteristic.is_surjective(s.delta()) && !d.characteristic.is_injective());
        let d1 = s.dual(r(&x, "x1"));
        assert_eq!(d1.delta.counts(), vec![1]);
        assert!(d1.boundary.counts().iter().all(|&c| c == 0));
    }

    #[test]
    fn dunce_hat_duals() {
        let x = fixtures::dunce_hat();
        let s = Subdivision::new(&x);
        let d0 = s.dual(r(&x, "x0"));
        assert_eq!(d0.delta.counts(), vec![6, 11, 6]);
        let h0 = d0.relative_homology(Ring::Integers).unwrap();
        assert_eq!(
            h0.nonzero(),
            vec![&HomologyGroup {
                degree: 2,
                free_rank: 2,
                torsion: vec![]
            }]
        );
        let d1 = s.dual(r(&x, "x1"));
        assert_eq!(d1.delta.counts(), vec![4, 3]);
        assert_eq!(d1.boundary.counts(), vec![3]);
        assert!(!d1.characteristic.is_injective() && !d1.characteristic.is_surjective(s.delta()));
        let h1 = d1.relative_homology(Ring::Integers).unwrap();
        assert_eq!(
            h1.nonzero(),
            vec![&HomologyGroup {
                degree: 1,
                free_rank: 2,
                torsion: vec![]
            }]
        );
        let d2 = s.dual(r(&x, "x2"));
        assert_eq!(d2.delta.counts(), vec![1]);
    }

    #[test]
    fn dunce_hat_images() {
        let x = fixtures::dunce_hat();
        let s = Subdivision::new(&x);
        let d0 = s.dual(r(&x, "x0"));
        let img = image_subdelta(&d0.characteristic, &d0.delta, s.delta())
            .to_delta_set(s.delta())
            .unwrap()
            .0;
        let h = homology(&simplicial_chain_complex(&img, Ring::Integers)).unwrap();
        assert_eq!(h.concentrated_z(), Some(0));
        let (bd, map) = d0.boundary_delta_with_map();
        let bimg = image_subdelta(&map, &bd, s.delta())
            .to_delta_set(s.delta())
            .unwrap()
            .0;
        assert_eq!(bimg.counts(), vec![2, 3]);
        let hb = homology(&simplicial_chain_complex(&bimg, Ring::Integers)).unwrap();
        assert!(hb.at(0).is_free_of_rank(1) && hb.at(1).is_free_of_rank(2));
    }

    #[test]
    fn images_preserve_pair_homology() {
        for x in [
            fixtures::circle(),
            fixtures::dunce_hat(),
            fixtures::triangle_circle(),
            standard_simplex(2),
        ] {
            let s = Subdivision::new(&x);
            for v in x.simplices() {
                let d = s.dual(v);
                let a = d.relative_homology(Ring::Integers).unwrap();
                let b = image_pair_homology(&s, &d, Ring::Integers).unwrap();
                assert!(a.is_isomorphic(&b), "{}: {a} vs {b}", x.label(v));
            }
        }
    }

    #[test]
    fn simplicial_inputs_have_injective_characteristic_maps() {
        let x = standard_simplex(2);
        let s = Subdivision::new(&x);
        for v in x.simplices() {
            assert!(s.dual(v).characteristic.is_injective());
        }
    }

    #[test]
    fn manifold_detector() {
        assert!(
            homology_manifold_check(&fixtures::circle(), 1)
                .unwrap()
                .verdict
        );
        assert!(
            homology_manifold_check(&fixtures::triangle_circle(), 1)
                .unwrap()
                .verdict
        );
        let dunce = homology_manifold_check(&fixtures::dunce_hat(), 2).unwrap();
        assert!(!dunce.verdict);
        assert_eq!(dunce.failures, vec!["x0", "x1"]);
    }

    #[test]
    fn star_homology_shifts() {
        let x = fixtures::dunce_hat();
        let h = star_homology(&x, r(&x, "x1"), Ring::Integers).unwrap();
        assert_eq!(
            h.nonzero(),
            vec![&HomologyGroup {
                degree: 2,
                free_rank: 2,
                torsion: vec![]
            }]
        );
        assert!(star_homology(&x, r(&x, "x1"), Ring::CyclicGroupRing(2)).is_err());
    }

    #[test]
    fn star_matches_complement_pair_for_simplicial_complexes() {
        let x = from_simplicial_complex(
            &["0", "1", "2", "3"],
            &[
                vec!["0", "1", "2"],
                vec!["0", "2", "3"],
                vec!["0", "1"],
                vec!["0", "2"],
                vec!["1", "2"],
                vec!["0", "3"],
                vec!["2", "3"],
            ],
        )
        .unwrap();
        for v in x.simplices() {
            let a = star_homology(&x, v, Ring::Integers).unwrap();
            let b =
                homology(&relative_complex(&x, &star_complement(&x, v), Ring::Integers).unwrap())
                    .unwrap();
            assert!(a.is_isomorphic(&b), "{}", x.label(v));
        }
    }

    #[test]
    fn pullback_along_identity_is_the_dual() {
        let x = fixtures::dunce_hat();
        let s = Subdivision::new(&x);
        let id = DeltaMap::identity(s.delta());
        for v in x.simplices() {
            let (p, bd) = strict_pullback(&s, s.delta(), &id, v).unwrap();
            let d = s.dual(v);
            assert_eq!(p.counts(), d.delta.counts());
            assert_eq!(bd.counts(), d.boundary.counts());
        }
    }

    #[test]
    fn pullback_of_a_single_edge() {
        let x = fixtures::circle();
        let s = Subdivision::new(&x);
        let y = DeltaSet::builder()
            .vertex("a")
            .vertex("b")
            .simplex("e", ["b", "a"])
            .build()
            .unwrap();
        let e = r(s.delta(), "x0-[0]->x1");
        let (v0, v1) = (s.delta().face(e, 0), s.delta().face(e, 1));
        let f = DeltaMap::new(vec![vec![v1.index, v0.index], vec![e.index]]);
        let (p, bd) = strict_pullback(&s, &y, &f, r(&x, "x0")).unwrap();
        assert_eq!(p.counts(), vec![3, 1]);
        assert_eq!(bd.counts(), vec![2]);
        assert!(
            homology(&relative_complex(&p, &bd, Ring::Integers).unwrap())
                .unwrap()
                .is_zero()
        );
        let bad = DeltaMap::new(vec![vec![0, 0], vec![e.index]]);
        assert!(matches!(
            strict_pullback(&s, &y, &bad, r(&x, "x0")),
            Err(Error::NotIntoSubdivision(_))
        ));
    }

    #[test]
    fn induced_maps_commute_with_characteristic_maps() {
        for x in [
            fixtures::circle(),
            fixtures::dunce_hat(),
            standard_simplex(2),
        ] {
            let s = Subdivision::new(&x);
            for alpha in 0..s.category().len() {
                let (dy, dx, f) = s.induced_dual_map(alpha);
                f.check(&dy.delta, &dx.delta).unwrap();
                assert_eq!(f.then(&dx.characteristic), dy.characteristic);
            }
        }
    }
}
