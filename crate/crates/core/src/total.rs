//! The total complex: a contravariant functor `x ↦ C[x]` of chain complexes
//! becomes a covariant X-complex with `(Tot C)(x)_n = C[x]_{n−|x|}`.
//!
//! The differential has the internal part `d_{C[x]}` at `1ₓ` and, along each
//! coface `δᵢ : ∂ᵢx → x`, the restriction `C[x] → C[∂ᵢx]` with sign
//! `(−1)^{i+n}`, `n` the total degree of the source. When every `C[x]` is
//! concentrated in degree 0 this is the sign `(−1)^{i+|x|}`; in general the
//! degree-dependent sign is what makes `d² = 0` (the coface terms must
//! anticommute with `d_{C[x]}`).

use std::collections::BTreeMap;
use std::sync::Arc;

use num_bigint::BigInt;

use crate::algebra::{simplicial_chain_complex, ChainComplex, ChainMap, Matrix, Ring};
use crate::delta::{DeltaSet, MorphId, SimplexCategory, SimplexRef};
use crate::error::{Error, Result};
use crate::functor::{Variance, XChainMap, XComplex, XMorphism};

/// A contravariant functor from the simplex category to chain complexes:
/// `C[x]` per simplex and `C(φ) : C[y] → C[x]` per morphism `φ : x → y`.
#[derive(Clone, Debug)]
pub struct FunctorComplex {
    cat: Arc<SimplexCategory>,
    ring: Ring,
    values: Vec<ChainComplex>,
    restrictions: BTreeMap<MorphId, BTreeMap<i64, Matrix>>,
}

impl FunctorComplex {
    /// Checks that every restriction is a chain map and that restriction is
    /// functorial.
    pub fn new(
        cat: Arc<SimplexCategory>,
        ring: Ring,
        values: Vec<ChainComplex>,
        restrictions: BTreeMap<MorphId, BTreeMap<i64, Matrix>>,
    ) -> Result<Self> {
        if values.len() != cat.delta().num_simplices() {
            return Err(Error::Shape("one chain complex per simplex".into()));
        }
        let f = Self {
            cat,
            ring,
            values,
            restrictions,
        };
        for phi in 0..f.cat.len() {
            f.restriction(phi)?;
        }
        for psi in 0..f.cat.len() {
            for &(phi, theta) in f.cat.factorizations(psi) {
                // C(θφ) = C(φ) C(θ)
                let lhs = f.restriction(psi)?;
                let rhs = f.restriction(theta)?.then(&f.restriction(phi)?)?;
                if lhs != rhs {
                    return Err(Error::Incompatible(format!(
                        "restriction is not functorial at {}",
                        f.cat.describe(psi)
                    )));
                }
            }
        }
        Ok(f)
    }

    /// `C[x] = R` in degree 0 with identity restrictions.
    pub fn constant(cat: Arc<SimplexCategory>, ring: Ring) -> Self {
        let point =
            ChainComplex::new(ring, 0, vec![1], vec![Matrix::zeros(ring, 0, 1)]).expect("point");
        let values = vec![point; cat.delta().num_simplices()];
        let restrictions = (0..cat.len())
            .map(|phi| (phi, BTreeMap::from([(0, Matrix::identity(ring, 1))])))
            .collect();
        Self {
            cat,
            ring,
            values,
            restrictions,
        }
    }

    /// The brackets `C[x] = ⊕_{x→y} C(y)` of a contravariant X-complex; `φ : x → y`
    /// sends the summand at `β : y → z` to the summand at `βφ`.
    pub fn from_induced(c: &XComplex) -> Result<Self> {
        if c.variance() != Variance::Contravariant {
            return Err(Error::Incompatible(
                "brackets need a contravariant complex".into(),
            ));
        }
        let cat = Arc::clone(c.category());
        let ring = c.ring();
        let x = cat.delta();
        let values: Vec<ChainComplex> = x.simplices().map(|s| c.bracket(s)).collect();
        let mut restrictions = BTreeMap::new();
        for phi in 0..cat.len() {
            let (src, dst) = (cat.source(phi), cat.target(phi));
            let mut per = BTreeMap::new();
            for n in c.degrees() {
                let obj = c.object(n);
                let (from, from_total) = obj.bracket_layout(dst);
                let (to, to_total) = obj.bracket_layout(src);
                let to_offset: BTreeMap<MorphId, usize> = to.into_iter().collect();
                let mut m = Matrix::zeros(ring, to_total, from_total);
                for (beta, col) in from {
                    let row = to_offset[&cat.compose(beta, phi)];
                    m.add_block(
                        row,
                        col,
                        &Matrix::identity(ring, obj.rank(cat.target(beta))),
                    );
                }
                per.insert(n, m);
            }
            restrictions.insert(phi, per);
        }
        Ok(Self {
            cat,
            ring,
            values,
            restrictions,
        })
    }

    pub fn category(&self) -> &Arc<SimplexCategory> {
        &self.cat
    }

    pub fn ring(&self) -> Ring {
        self.ring
    }

    pub fn value(&self, x: SimplexRef) -> &ChainComplex {
        &self.values[self.cat.delta().flat_index(x)]
    }

    /// `C(φ) : C[y] → C[x]` for `φ : x → y`.
    pub fn restriction(&self, phi: MorphId) -> Result<ChainMap> {
        let (src, dst) = (
            self.value(self.cat.source(phi)).clone(),
            self.value(self.cat.target(phi)).clone(),
        );
        let comps = self.restrictions.get(&phi).cloned().unwrap_or_default();
        let comps = comps
            .into_iter()
            .filter(|(n, _)| src.rank(*n) > 0 && dst.rank(*n) > 0)
            .collect();
        ChainMap::new(dst, src, comps)
    }

    fn restriction_matrix(&self, phi: MorphId, n: i64) -> Matrix {
        let rows = self.value(self.cat.source(phi)).rank(n);
        let cols = self.value(self.cat.target(phi)).rank(n);
        match self.restrictions.get(&phi).and_then(|m| m.get(&n)) {
            Some(m) if m.shape() == (rows, cols) => m.clone(),
            _ => Matrix::zeros(self.ring, rows, cols),
        }
    }

    pub fn direct_sum(&self, other: &FunctorComplex) -> Result<FunctorComplex> {
        if self.cat.delta() != other.cat.delta() {
            return Err(Error::Incompatible("base Δ-set".into()));
        }
        let values = self
            .values
            .iter()
            .zip(&other.values)
            .map(|(a, b)| a.direct_sum(b))
            .collect::<Result<Vec<_>>>()?;
        let mut restrictions = BTreeMap::new();
        for phi in 0..self.cat.len() {
            let (x, y) = (self.cat.source(phi), self.cat.target(phi));
            let mut per = BTreeMap::new();
            let lo = self.value(y).lo().min(other.value(y).lo());
            let hi = self.value(y).hi().max(other.value(y).hi());
            for n in lo..=hi {
                let (a, b) = (
                    self.restriction_matrix(phi, n),
                    other.restriction_matrix(phi, n),
                );
                let mut m = Matrix::zeros(
                    self.ring,
                    self.value(x).rank(n) + other.value(x).rank(n),
                    a.cols() + b.cols(),
                );
                m.add_block(0, 0, &a);
                m.add_block(a.rows(), a.cols(), &b);
                per.insert(n, m);
            }
            restrictions.insert(phi, per);
        }
        FunctorComplex::new(Arc::clone(&self.cat), self.ring, values, restrictions)
    }
}

fn coface_sign(i: usize, n: i64) -> i64 {
    if (i as i64 + n).rem_euclid(2) == 0 {
        1
    } else {
        -1
    }
}

fn tot_degrees(c: &FunctorComplex) -> Option<(i64, i64)> {
    let x = c.cat.delta();
    let ends: Vec<(i64, i64)> = x
        .simplices()
        .map(|s| (c.value(s), s.dim as i64))
        .filter(|(v, _)| !v.is_zero())
        .map(|(v, k)| (v.lo() + k, v.hi() + k))
        .collect();
    let lo = ends.iter().map(|e| e.0).min()?;
    let hi = ends.iter().map(|e| e.1).max()?;
    Some((lo, hi))
}

/// `Tot C` as a covariant X-complex.
pub fn tot(c: &FunctorComplex) -> XComplex {
    tot_signed(c, |i, n, _| coface_sign(i, n)).expect("the total complex squares to zero")
}

// `sign(i, n, |x|)` multiplies the coface term out of `x` in total degree `n`
fn tot_signed(c: &FunctorComplex, sign: impl Fn(usize, i64, usize) -> i64) -> Result<XComplex> {
    let cat = Arc::clone(&c.cat);
    let Some((lo, hi)) = tot_degrees(c) else {
        let size = cat.delta().num_simplices();
        return XComplex::from_parts(
            cat,
            Variance::Covariant,
            c.ring,
            0,
            vec![vec![0; size]],
            vec![BTreeMap::new()],
        );
    };
    let x = c.cat.delta();
    let shift = |s: SimplexRef| s.dim as i64;
    let ranks: Vec<Vec<usize>> = (lo..=hi)
        .map(|n| {
            x.simplices()
                .map(|s| c.value(s).rank(n - shift(s)))
                .collect()
        })
        .collect();
    let mut components = Vec::new();
    for n in lo..=hi {
        let mut comps = BTreeMap::new();
        if n > lo {
            for s in x.simplices() {
                let m = n - shift(s);
                if c.value(s).rank(m) == 0 {
                    continue;
                }
                comps.insert(cat.identity(s), c.value(s).d(m));
                if s.dim > 0 {
                    for i in 0..=s.dim {
                        let delta = cat.coface(s, i);
                        comps.insert(
                            delta,
                            c.restriction_matrix(delta, m).scale(sign(i, n, s.dim)),
                        );
                    }
                }
            }
        }
        components.push(comps);
    }
    XComplex::from_parts(cat, Variance::Covariant, c.ring, lo, ranks, components)
}

/// `(Tot C)(X)`.
pub fn tot_assembled(c: &FunctorComplex) -> ChainComplex {
    tot(c).assemble()
}

/// `Tot` of a map of contravariant X-complexes, through its brackets: the
/// component at `1ₓ` is `f[x]`.
pub fn tot_map(f: &XChainMap) -> Result<XChainMap> {
    let (src, dst) = (
        FunctorComplex::from_induced(f.source())?,
        FunctorComplex::from_induced(f.target())?,
    );
    let (ts, tt) = (tot(&src), tot(&dst));
    let cat = Arc::clone(f.source().category());
    let x = cat.delta();
    let brackets: Vec<ChainMap> = x.simplices().map(|s| f.bracket(s)).collect();
    let mut components = BTreeMap::new();
    for n in ts.degrees() {
        let comps = x
            .simplices()
            .filter(|&s| ts.object(n).rank(s) > 0 && tt.object(n).rank(s) > 0)
            .map(|s| {
                (
                    cat.identity(s),
                    brackets[x.flat_index(s)].component(n - s.dim as i64),
                )
            })
            .collect();
        components.insert(
            n,
            XMorphism::new(ts.object(n).clone(), tt.object(n).clone(), comps)?,
        );
    }
    XChainMap::new(ts, tt, components)
}

/// `ε_n = (−1)^{n(n+1)/2}`.
pub fn diagonal_sign(n: i64) -> i64 {
    if (n * (n + 1) / 2).rem_euclid(2) == 0 {
        1
    } else {
        -1
    }
}

/// The isomorphism `Δ(X; R) → (Tot R)(X)` for the constant functor: `ε_n`
/// times the identity in degree `n`. Construction checks that it is a chain
/// map.
pub fn constant_tot_isomorphism(x: &DeltaSet, ring: Ring) -> Result<ChainMap> {
    let cat = Arc::new(SimplexCategory::new(x));
    let totc = tot_assembled(&FunctorComplex::constant(cat, ring));
    let simp = simplicial_chain_complex(x, ring);
    let components = simp
        .degrees()
        .map(|n| {
            let mut m = Matrix::zeros(ring, simp.rank(n), simp.rank(n));
            for i in 0..simp.rank(n) {
                m.set(i, i, BigInt::from(diagonal_sign(n)));
            }
            (n, m)
        })
        .collect();
    ChainMap::new(simp, totc, components)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::homology;
    use crate::delta::standard_simplex;
    use crate::fixtures;
    use crate::functor::delta_prime_as_xcomplex;
    use crate::subdivision::Subdivision;

    fn constant(x: &DeltaSet) -> FunctorComplex {
        FunctorComplex::constant(Arc::new(SimplexCategory::new(x)), Ring::Integers)
    }

    #[test]
    fn constant_functor_on_the_circle() {
        let x = fixtures::circle();
        let t = tot(&constant(&x));
        let (x0, x1) = (x.require("x0").unwrap(), x.require("x1").unwrap());
        assert_eq!((t.object(0).rank(x0), t.object(1).rank(x0)), (1, 0));
        assert_eq!((t.object(0).rank(x1), t.object(1).rank(x1)), (0, 1));
        assert_eq!(t.assemble().ranks(), &[1, 1]);
    }

    #[test]
    fn sign_isomorphism_on_fixtures() {
        for (name, x) in fixtures::catalogue() {
            let iso = constant_tot_isomorphism(&x, Ring::Integers);
            assert!(iso.is_ok(), "{name}");
        }
    }

    #[test]
    fn face_sign_must_depend_on_total_degree() {
        // over Δ² the edge values Δ(e⊥) have a nonzero differential
        let sub = Subdivision::new(&standard_simplex(2));
        let c =
            FunctorComplex::from_induced(&delta_prime_as_xcomplex(&sub, Ring::Integers)).unwrap();
        assert!(tot_signed(&c, |i, _, k| coface_sign(i, k as i64)).is_err());
        assert!(tot_signed(&c, |i, n, _| coface_sign(i, n)).is_ok());
        // both agree on complexes concentrated in degree 0
        let k = constant(&standard_simplex(2));
        assert_eq!(
            tot_signed(&k, |i, _, d| coface_sign(i, d as i64)).unwrap(),
            tot(&k)
        );
    }

    #[test]
    fn tot_of_delta_prime_keeps_homology() {
        for (name, x) in fixtures::catalogue() {
            let sub = Subdivision::new(&x);
            let c = delta_prime_as_xcomplex(&sub, Ring::Integers);
            let t = tot_assembled(&FunctorComplex::from_induced(&c).unwrap());
            let a = homology(&t).unwrap();
            let b = homology(&c.assemble()).unwrap();
            assert!(a.is_isomorphic(&b), "{name}: {a} vs {b}");
        }
    }

    #[test]
    fn tot_on_a_point_is_the_identity_regrading() {
        let sub = Subdivision::new(&fixtures::point());
        let c = delta_prime_as_xcomplex(&sub, Ring::Integers);
        assert_eq!(
            tot_assembled(&FunctorComplex::from_induced(&c).unwrap()),
            c.assemble()
        );
    }

    #[test]
    fn tot_is_additive() {
        let x = fixtures::dunce_hat();
        let sub = Subdivision::new(&x);
        let a =
            FunctorComplex::from_induced(&delta_prime_as_xcomplex(&sub, Ring::Integers)).unwrap();
        let b = constant(&x);
        let sum = tot_assembled(&a.direct_sum(&b).unwrap());
        let (ta, tb) = (tot_assembled(&a), tot_assembled(&b));
        assert_eq!(sum, ta.direct_sum(&tb).unwrap());
    }

    #[test]
    fn tot_of_identity_and_composites() {
        let sub = Subdivision::new(&fixtures::circle());
        let c = delta_prime_as_xcomplex(&sub, Ring::Integers);
        let id = XChainMap::identity(&c);
        let t = tot_map(&id).unwrap();
        assert_eq!(t, XChainMap::identity(t.source()));
        assert_eq!(
            tot_map(&id.then(&id).unwrap()).unwrap(),
            t.then(&t).unwrap()
        );
    }

    #[test]
    fn restrictions_are_functorial() {
        let sub = Subdivision::new(&fixtures::dunce_hat());
        let c =
            FunctorComplex::from_induced(&delta_prime_as_xcomplex(&sub, Ring::Integers)).unwrap();
        let checked = FunctorComplex::new(
            c.cat.clone(),
            c.ring,
            c.values.clone(),
            c.restrictions.clone(),
        );
        assert!(checked.is_ok());
    }
}
