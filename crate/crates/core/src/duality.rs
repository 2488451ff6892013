//! Chain duality. On free modules `T(M) = M*` with `e(M) : M** → M` the
//! identity in dual-dual bases; on complexes of modules `T(C)_n = (C_{−n})*`;
//! on `A*(X)` the dual goes through the total complex,
//! `T(C)(x)_n = (Tot C)(x)_{−n}*`.

use std::collections::BTreeMap;
use std::sync::Arc;

use serde::Serialize;

use crate::algebra::{
    dualize_complex, hom_complex, homology, simplicial_chain_complex, ChainComplex, ChainMap,
    GradedGroup, Matrix, Ring,
};
use crate::delta::{DeltaSet, MorphId};
use crate::error::{Error, Result};
use crate::functor::{
    compose, delta_prime_as_xcomplex, Variance, XChainMap, XComplex, XMorphism, XObject,
};
use crate::subdivision::Subdivision;
use crate::total::{tot, tot_map, FunctorComplex};

/// `T(f) : N* → M*` for `f : M → N`.
pub fn dual_matrix(f: &Matrix) -> Matrix {
    f.involution_transpose()
}

/// `e(M) : M** → M`.
pub fn evaluation(ring: Ring, rank: usize) -> Matrix {
    Matrix::identity(ring, rank)
}

/// `T` on complexes of modules.
pub fn dual_of_complex(c: &ChainComplex) -> ChainComplex {
    dualize_complex(c)
}

/// `T(f) : T(D) → T(C)` for `f : C → D`; degree `n` is `T(f_{−n})`.
pub fn dual_of_map(f: &ChainMap) -> Result<ChainMap> {
    let (src, dst) = (dual_of_complex(&f.target), dual_of_complex(&f.source));
    let components = src
        .degrees()
        .map(|n| (n, dual_matrix(&f.component(-n))))
        .collect();
    ChainMap::new(src, dst, components)
}

fn transpose_object(obj: &XObject) -> Result<XObject> {
    XObject::new(
        Arc::clone(obj.category()),
        Variance::Contravariant,
        obj.ring(),
        obj.ranks().to_vec(),
    )
}

fn transpose_morphism(f: &XMorphism, source: &XObject, target: &XObject) -> Result<XMorphism> {
    let components = f
        .components()
        .iter()
        .map(|(&phi, m)| (phi, dual_matrix(m)))
        .collect();
    XMorphism::new(source.clone(), target.clone(), components)
}

// dualize a covariant complex degreewise; the morphism components keep their
// index and become contravariant
fn dualize_covariant(t: &XComplex) -> Result<XComplex> {
    let lo = -t.hi();
    let objects = (lo..=-t.lo())
        .map(|n| transpose_object(t.object(-n)))
        .collect::<Result<Vec<_>>>()?;
    let zero = XObject::zero(Arc::clone(t.category()), Variance::Contravariant, t.ring());
    let mut diffs = Vec::new();
    for (k, obj) in objects.iter().enumerate() {
        let n = lo + k as i64;
        let below = if k == 0 { &zero } else { &objects[k - 1] };
        diffs.push(transpose_morphism(&t.d(1 - n), obj, below)?);
    }
    XComplex::new(lo, objects, diffs)
}

/// `T(C)` for a contravariant X-complex `C`: the degreewise dual of `Tot C`.
pub fn chain_dual_x(c: &XComplex) -> Result<XComplex> {
    dualize_covariant(&tot(&FunctorComplex::from_induced(c)?))
}

/// `T(f) : T(D) → T(C)` for `f : C → D`.
pub fn chain_dual_map(f: &XChainMap) -> Result<XChainMap> {
    let t = tot_map(f)?;
    let (src, dst) = (
        dualize_covariant(t.target())?,
        dualize_covariant(t.source())?,
    );
    let mut components = BTreeMap::new();
    for n in src.degrees() {
        components.insert(
            n,
            transpose_morphism(&t.component(-n), src.object(n), dst.object(n))?,
        );
    }
    XChainMap::new(src, dst, components)
}

/// `⊕_{x→y} C(y)_{−n−|x|}`: the rank of `T(C)(x)` in degree `n`.
pub fn expected_dual_rank(c: &XComplex, x: crate::delta::SimplexRef, n: i64) -> usize {
    c.object(-n - x.dim as i64).bracket_rank(x)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DoubleDualEntry {
    pub simplex: String,
    pub ok: bool,
    pub homology: GradedGroup,
    pub double_dual: GradedGroup,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DoubleDualReport {
    pub verdict: bool,
    pub simplices: Vec<DoubleDualEntry>,
}

/// Compares `H(T²C[x])` with `H(C[x])` for every simplex `x`.
pub fn double_dual_check(c: &XComplex) -> Result<DoubleDualReport> {
    c.ring().ensure_scalar()?;
    let tt = chain_dual_x(&chain_dual_x(c)?)?;
    let x = c.category().delta();
    let mut simplices = Vec::new();
    for s in x.simplices() {
        let homology_c = homology(&c.bracket(s))?;
        let double_dual = homology(&tt.bracket(s))?;
        simplices.push(DoubleDualEntry {
            simplex: x.label(s).to_string(),
            ok: homology_c.is_isomorphic(&double_dual),
            homology: homology_c,
            double_dual,
        });
    }
    Ok(DoubleDualReport {
        verdict: simplices.iter().all(|e| e.ok),
        simplices,
    })
}

// basis of Hom_{A*(X)}(M, N): one block per morphism, matrix units row-major
fn hom_layout(m: &XObject, n: &XObject) -> Vec<(MorphId, usize, usize, usize)> {
    let cat = m.category();
    let mut out = Vec::new();
    let mut offset = 0;
    for phi in 0..cat.len() {
        let (rows, cols) = (n.rank(cat.target(phi)), m.rank(cat.source(phi)));
        if rows * cols > 0 {
            out.push((phi, offset, rows, cols));
            offset += rows * cols;
        }
    }
    out
}

fn layout_rank(layout: &[(MorphId, usize, usize, usize)]) -> usize {
    layout.last().map_or(0, |&(_, off, r, c)| off + r * c)
}

// add the coordinates of `f` to `out[base.., column]`
fn add_coordinates(
    f: &XMorphism,
    layout: &[(MorphId, usize, usize, usize)],
    out: &mut Matrix,
    base: usize,
    column: usize,
) {
    for &(phi, off, rows, cols) in layout {
        if let Some(m) = f.components().get(&phi) {
            for j in 0..rows {
                for i in 0..cols {
                    if !m.is_entry_zero(j, i) {
                        out.add_entry(base + off + j * cols + i, column, m.entry(j, i));
                    }
                }
            }
        }
    }
}

/// `Hom_{A*(X)}(C, D)` for contravariant X-complexes, as a complex of
/// scalars: degree `n` is `⊕_p Hom(C_p, D_{p+n})`, `d f = d_D f + (−1)^{p+n} f d_C`.
pub fn hom_x_complex(c: &XComplex, d: &XComplex) -> Result<ChainComplex> {
    if c.variance() != Variance::Contravariant || d.variance() != Variance::Contravariant {
        return Err(Error::Incompatible(
            "Hom needs contravariant complexes".into(),
        ));
    }
    if c.ring() != d.ring() {
        return Err(Error::RingMismatch(
            c.ring().to_string(),
            d.ring().to_string(),
        ));
    }
    if c.category().delta() != d.category().delta() {
        return Err(Error::Incompatible("base Δ-set".into()));
    }
    let ring = c.ring();
    let (lo, hi) = (d.lo() - c.hi(), d.hi() - c.lo());
    let blocks = |n: i64| -> Vec<(i64, Vec<(MorphId, usize, usize, usize)>, usize)> {
        let mut out = Vec::new();
        let mut total = 0;
        for p in c.degrees() {
            let layout = hom_layout(c.object(p), d.object(p + n));
            let r = layout_rank(&layout);
            out.push((p, layout, total));
            total += r;
        }
        out
    };
    let total = |b: &[(i64, Vec<(MorphId, usize, usize, usize)>, usize)]| {
        b.last().map_or(0, |(_, l, off)| off + layout_rank(l))
    };
    let mut ranks = BTreeMap::new();
    let mut diffs = BTreeMap::new();
    for n in lo..=hi {
        let (src, dst) = (blocks(n), blocks(n - 1));
        let (src_total, dst_total) = (total(&src), total(&dst));
        ranks.insert(n, src_total);
        let mut m = Matrix::zeros(ring, dst_total, src_total);
        for (p, layout, off) in &src {
            let q = p + n;
            let sign = if q.rem_euclid(2) == 0 { 1 } else { -1 };
            for &(phi, boff, rows, cols) in layout {
                for j in 0..rows {
                    for i in 0..cols {
                        let mut unit = Matrix::zeros(ring, rows, cols);
                        unit.set_entry(j, i, &ring.one());
                        let f = XMorphism::new(
                            c.object(*p).clone(),
                            d.object(q).clone(),
                            BTreeMap::from([(phi, unit)]),
                        )?;
                        let column = off + boff + j * cols + i;
                        if let Some((_, l, o)) = dst.iter().find(|b| b.0 == *p) {
                            add_coordinates(&compose(&d.d(q), &f)?, l, &mut m, *o, column);
                        }
                        if let Some((_, l, o)) = dst.iter().find(|b| b.0 == p + 1) {
                            add_coordinates(
                                &compose(&f, &c.d(p + 1))?.scale(sign),
                                l,
                                &mut m,
                                *o,
                                column,
                            );
                        }
                    }
                }
            }
        }
        diffs.insert(n, m);
    }
    ChainComplex::from_maps(ring, &ranks, diffs)
}

/// `C ⊗ D = Hom_{A*(X)}(T C, D)`.
pub fn chain_product(c: &XComplex, d: &XComplex) -> Result<ChainComplex> {
    hom_x_complex(&chain_dual_x(c)?, d)
}

/// `b(C, D) : Hom(TC, D) → Hom(TD, C)` for complexes of free modules:
/// `f ∈ Hom((TC)_p, D_q)` goes to `(−1)^{pq} T(f) ∈ Hom((TD)_{−q}, C_{−p})`.
pub fn symmetry_b(c: &ChainComplex, d: &ChainComplex) -> Result<ChainMap> {
    let (tc, td) = (dual_of_complex(c), dual_of_complex(d));
    let (src, dst) = (hom_complex(&tc, d)?, hom_complex(&td, c)?);
    let ring = c.ring();
    // block offsets inside Hom(A, B)_n, ascending source degree
    let offsets = |a: &ChainComplex, b: &ChainComplex, n: i64| -> BTreeMap<i64, usize> {
        let mut out = BTreeMap::new();
        let mut total = 0;
        for p in a.degrees() {
            out.insert(p, total);
            total += a.rank(p) * b.rank(p + n);
        }
        out
    };
    let mut components = BTreeMap::new();
    for n in src.degrees() {
        let (so, to) = (offsets(&tc, d, n), offsets(&td, c, n));
        let mut m = Matrix::zeros(ring, dst.rank(n), src.rank(n));
        for p in tc.degrees() {
            let q = p + n;
            let (rows, cols) = (d.rank(q), tc.rank(p));
            if rows * cols == 0 {
                continue;
            }
            let sign: i64 = if (p * q).rem_euclid(2) == 0 { 1 } else { -1 };
            let (s0, t0) = (so[&p], to[&-q]);
            // entry (j, i) of f lands at entry (i, j) of T(f)
            for j in 0..rows {
                for i in 0..cols {
                    m.add_scalar(
                        t0 + i * rows + j,
                        s0 + j * cols + i,
                        &num_bigint::BigInt::from(sign),
                    );
                }
            }
        }
        components.insert(n, m);
    }
    ChainMap::new(src, dst, components)
}

/// Cohomology of `X'` read off `T(Δ(X'))`, in cochain grading.
pub fn cohomology_via_dual(x: &DeltaSet, ring: Ring) -> Result<GradedGroup> {
    ring.ensure_scalar()?;
    let sub = Subdivision::new(x);
    let t = chain_dual_x(&delta_prime_as_xcomplex(&sub, ring))?;
    Ok(homology(&t.assemble())?.negated())
}

/// `H^*(X')` from the dual of the simplicial chain complex of `X'`.
pub fn cochain_oracle(x: &DeltaSet, ring: Ring) -> Result<GradedGroup> {
    ring.ensure_scalar()?;
    let sub = Subdivision::new(x);
    Ok(homology(&dualize_complex(&simplicial_chain_complex(
        sub.delta(),
        ring,
    )))?
    .negated())
}
