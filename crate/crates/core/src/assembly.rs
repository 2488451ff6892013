//! Regular covers `p : X̃ → X` and assembly of X-complexes over the group ring
//! of the deck group.
//!
//! Each base simplex `x` has a chosen lift `x̃₀` (by default the preimage with
//! the lexicographically least label). For `φ : x → y` with injection `λ`,
//! `λ*(ỹ₀) = h·x̃₀` for a unique deck translation `h`, and the component of
//! `φ` enters the group-ring differential with coefficient `h⁻¹`.

use std::collections::BTreeMap;
use std::sync::Arc;

use num_bigint::BigInt;
use serde::Serialize;
use serde_json::Value;

use crate::algebra::{ChainComplex, Matrix, Ring};
use crate::delta::{
    json, quotient, DeltaMap, DeltaSet, FiniteGroup, GroupAction, SimplexCategory, SimplexRef,
};
use crate::error::{Error, Result};
use crate::fixtures;
use crate::functor::{Variance, XComplex};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoverSpec {
    pub total: DeltaSet,
    pub base: DeltaSet,
    pub action: GroupAction,
    pub projection: DeltaMap,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CoverReport {
    pub ok: bool,
    pub failures: Vec<String>,
}

impl CoverSpec {
    /// The `n`-cycle over `S¹`, with `ℤ/n` rotating it.
    pub fn cyclic_cover_of_circle(n: usize) -> Self {
        let total = fixtures::cycle(n);
        let base = fixtures::circle();
        let action = GroupAction::cyclic(n, fixtures::cycle_rotation(n));
        let projection = DeltaMap::new(vec![vec![0; n], vec![0; n]]);
        Self {
            total,
            base,
            action,
            projection,
        }
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.action.group
    }

    /// Parse the Δ-set JSON of `X̃` extended by `"group": n`, `"action"` (the
    /// generator of `ℤ/n` as a label map) and `"projection"`. `"base"` is an
    /// optional Δ-set object; without it the base is the quotient and the
    /// projection may be omitted.
    pub fn from_json(text: &str) -> Result<Self> {
        let value: Value = serde_json::from_str(text)
            .map_err(|e| Error::Parse(format!("line {}: {e}", e.line())))?;
        Self::from_value(&value)
    }

    pub fn from_value(value: &Value) -> Result<Self> {
        let total = json::from_value(value)?;
        let n = value
            .get("group")
            .and_then(Value::as_u64)
            .filter(|&n| n >= 1)
            .ok_or_else(|| Error::Parse("\"group\" must be a positive integer".into()))?
            as usize;
        let generator = label_map(value.get("action"), "action", &total, &total)?
            .ok_or_else(|| Error::Parse("missing object \"action\"".into()))?;
        let action = GroupAction::cyclic(n, generator);
        match value.get("base") {
            Some(b) => {
                let base = json::from_value(b)?;
                let projection = label_map(value.get("projection"), "projection", &total, &base)?
                    .ok_or_else(|| {
                    Error::Parse("a cover with a base needs \"projection\"".into())
                })?;
                Ok(Self {
                    total,
                    base,
                    action,
                    projection,
                })
            }
            None => {
                let (base, q) =
                    quotient(&total, &action).map_err(|e| Error::InvalidCover(e.to_string()))?;
                let projection =
                    label_map(value.get("projection"), "projection", &total, &base)?.unwrap_or(q);
                Ok(Self {
                    total,
                    base,
                    action,
                    projection,
                })
            }
        }
    }
}

fn label_map(
    value: Option<&Value>,
    key: &str,
    source: &DeltaSet,
    target: &DeltaSet,
) -> Result<Option<DeltaMap>> {
    let Some(value) = value else { return Ok(None) };
    let obj = value
        .as_object()
        .ok_or_else(|| Error::Parse(format!("\"{key}\" must be an object")))?;
    let mut assignment: Vec<Vec<usize>> = source
        .counts()
        .iter()
        .map(|&c| vec![usize::MAX; c])
        .collect();
    for (from, to) in obj {
        let to = to
            .as_str()
            .ok_or_else(|| Error::Parse(format!("\"{key}\" values must be labels")))?;
        let a = source.require(from)?;
        let b = target.require(to)?;
        if a.dim != b.dim {
            return Err(Error::InvalidCover(format!(
                "{key} sends {from} to {to} of another dimension"
            )));
        }
        assignment[a.dim][a.index] = b.index;
    }
    for s in source.simplices() {
        if assignment[s.dim][s.index] == usize::MAX {
            return Err(Error::InvalidCover(format!(
                "{key} does not assign {}",
                source.label(s)
            )));
        }
    }
    Ok(Some(DeltaMap::new(assignment)))
}

/// Checks the action, its freeness, the projection and the orbit bijection.
pub fn validate_cover(c: &CoverSpec) -> CoverReport {
    let mut failures = Vec::new();
    if let Err(e) = c.action.validate(&c.total) {
        failures.push(e.to_string());
        return CoverReport {
            ok: false,
            failures,
        };
    }
    if let Err(e) = c.projection.check(&c.total, &c.base) {
        failures.push(format!("projection: {e}"));
        return CoverReport {
            ok: false,
            failures,
        };
    }
    let e = c.action.group.identity();
    for s in c.total.simplices() {
        let label = c.total.label(s);
        for g in (0..c.action.group.order()).filter(|&g| g != e) {
            if c.action.act(g, s) == s {
                failures.push(format!("action is not free: element {g} fixes {label}"));
            }
            if c.projection.apply(c.action.act(g, s)) != c.projection.apply(s) {
                failures.push(format!(
                    "projection is not invariant under element {g} at {label}"
                ));
            }
        }
    }
    for n in 0..c.base.counts().len() {
        let mut hit = vec![0usize; c.base.count(n)];
        for orbit in c.action.orbits(&c.total, n) {
            let images: Vec<usize> = orbit
                .iter()
                .map(|&k| c.projection.apply(SimplexRef::new(n, k)).index)
                .collect();
            hit[images[0]] += 1;
            if images.iter().any(|&i| i != images[0]) {
                let r = SimplexRef::new(n, orbit[0]);
                failures.push(format!(
                    "orbit of {} maps to several base simplices",
                    c.total.label(r)
                ));
            }
        }
        for (k, &h) in hit.iter().enumerate() {
            let label = c.base.label(SimplexRef::new(n, k));
            match h {
                0 => failures.push(format!("base simplex {label} has no preimage")),
                1 => {}
                _ => failures.push(format!("base simplex {label} is covered by {h} orbits")),
            }
        }
    }
    if c.total.counts().len() > c.base.counts().len() {
        failures.push("total space has simplices above the base dimension".into());
    }
    CoverReport {
        ok: failures.is_empty(),
        failures,
    }
}

/// Exponent of every group element with respect to a generator.
fn exponents(group: &FiniteGroup) -> Result<Vec<usize>> {
    let g = group
        .cyclic_generator()
        .ok_or_else(|| Error::InvalidCover("deck group is not cyclic".into()))?;
    let mut out = vec![0; group.order()];
    let mut cur = group.identity();
    for k in 0..group.order() {
        out[cur] = k;
        cur = group.mul(cur, g);
    }
    Ok(out)
}

/// The default lifts: the preimage with the least label, per base simplex in flat order.
pub fn default_representatives(c: &CoverSpec) -> Vec<SimplexRef> {
    let mut best: Vec<Option<SimplexRef>> = vec![None; c.base.num_simplices()];
    for s in c.total.simplices() {
        let slot = &mut best[c.base.flat_index(c.projection.apply(s))];
        if slot.map_or(true, |b| c.total.label(s) < c.total.label(b)) {
            *slot = Some(s);
        }
    }
    best.into_iter()
        .map(|b| b.expect("projection is surjective"))
        .collect()
}

fn check_assembly_input(x: &XComplex, c: &CoverSpec) -> Result<Vec<usize>> {
    let report = validate_cover(c);
    if !report.ok {
        return Err(Error::InvalidCover(report.failures.join("; ")));
    }
    if x.ring() != Ring::Integers {
        return Err(Error::RingMismatch(
            Ring::Integers.to_string(),
            x.ring().to_string(),
        ));
    }
    if x.variance() != Variance::Contravariant {
        return Err(Error::Incompatible(
            "assembly over a cover needs a contravariant complex".into(),
        ));
    }
    if *x.category().delta() != c.base {
        return Err(Error::Incompatible(
            "complex is not over the base of the cover".into(),
        ));
    }
    exponents(c.group())
}

/// `C(X̃)` as a complex of free `ℤ[π]`-modules, with the default lifts.
pub fn assemble_over_cover(x: &XComplex, c: &CoverSpec) -> Result<ChainComplex> {
    assemble_with_representatives(x, c, &default_representatives(c))
}

/// As [`assemble_over_cover`] with explicit lifts, one per base simplex in flat order.
pub fn assemble_with_representatives(
    x: &XComplex,
    c: &CoverSpec,
    reps: &[SimplexRef],
) -> Result<ChainComplex> {
    let exps = check_assembly_input(x, c)?;
    let base = &c.base;
    if reps.len() != base.num_simplices()
        || reps
            .iter()
            .zip(base.simplices())
            .any(|(&r, s)| !c.total.contains(r) || c.projection.apply(r) != s)
    {
        return Err(Error::InvalidCover(
            "representatives must lift the base simplices in order".into(),
        ));
    }
    let ring = Ring::CyclicGroupRing(c.group().order());
    let cat = x.category();
    // deck translation carrying x̃₀ onto a given lift of x
    let translation = |target: SimplexRef| -> usize {
        let rep = reps[base.flat_index(c.projection.apply(target))];
        (0..c.group().order())
            .find(|&g| c.action.act(g, rep) == target)
            .expect("orbits are transitive")
    };
    // coefficient exponent of h⁻¹ for every morphism
    let coefficient: Vec<usize> = (0..cat.len())
        .map(|phi| {
            let m = cat.morphism(phi);
            let lifted = c
                .total
                .apply_injection(m.injection(), reps[base.flat_index(m.target())])
                .expect("lifts carry the same faces");
            let h = translation(lifted);
            exps[c.group().inverse(h)]
        })
        .collect();
    let mut ranks = BTreeMap::new();
    let mut diffs = BTreeMap::new();
    for n in x.degrees() {
        let (src, dst) = (x.object(n), x.object(n - 1));
        let (so, to) = (src.offsets(), dst.offsets());
        let mut m = Matrix::zeros(ring, dst.total_rank(), src.total_rank());
        for (&phi, block) in x.d(n).components() {
            let (xs, ys) = (
                base.flat_index(cat.source(phi)),
                base.flat_index(cat.target(phi)),
            );
            let g = coefficient[phi];
            for i in 0..block.rows() {
                for j in 0..block.cols() {
                    let v = block.get(i, j);
                    if !num_traits::Zero::is_zero(v) {
                        let mut entry = vec![BigInt::from(0); ring.width()];
                        entry[g] = v.clone();
                        m.add_entry(to[ys] + i, so[xs] + j, &entry);
                    }
                }
            }
        }
        ranks.insert(n, src.total_rank());
        diffs.insert(n, m);
    }
    ChainComplex::from_maps(ring, &ranks, diffs)
}

/// Each `ℤ[ℤ/m]`-generator becomes `m` integer generators (index `i·m + h`
/// for `h·eᵢ`); group elements become permutation blocks.
pub fn restrict_scalars(c: &ChainComplex) -> ChainComplex {
    let Ring::CyclicGroupRing(m) = c.ring() else {
        return c.clone();
    };
    if c.is_zero() {
        return ChainComplex::zero(Ring::Integers);
    }
    let ranks: BTreeMap<i64, usize> = c.degrees().map(|n| (n, c.rank(n) * m)).collect();
    let diffs = c
        .degrees()
        .map(|n| {
            let d = c.d(n);
            let mut out = Matrix::zeros(Ring::Integers, d.rows() * m, d.cols() * m);
            for i in 0..d.rows() {
                for j in 0..d.cols() {
                    let a = d.entry(i, j);
                    // g·e_j ↦ Σ_k a_k (g + k)·e_i
                    for g in 0..m {
                        for (k, v) in a.iter().enumerate() {
                            if !num_traits::Zero::is_zero(v) {
                                out.add_scalar(i * m + (g + k) % m, j * m + g, v);
                            }
                        }
                    }
                }
            }
            (n, out)
        })
        .collect();
    ChainComplex::from_maps(Ring::Integers, &ranks, diffs).expect("restriction preserves d² = 0")
}

/// `p*C` on `X̃`: `C̃(x̃) = C(p x̃)`, each lift of `φ` carrying the component of `φ`.
pub fn pullback_to_cover(x: &XComplex, c: &CoverSpec) -> Result<XComplex> {
    check_assembly_input(x, c)?;
    let base_cat = x.category();
    let cat = Arc::new(SimplexCategory::new(&c.total));
    let ranks: Vec<Vec<usize>> = x
        .degrees()
        .map(|n| {
            c.total
                .simplices()
                .map(|s| x.object(n).rank(c.projection.apply(s)))
                .collect()
        })
        .collect();
    let components = x
        .degrees()
        .map(|n| {
            let d = x.d(n);
            (0..cat.len())
                .filter_map(|phi| {
                    let m = cat.morphism(phi);
                    let down =
                        base_cat.find(c.projection.apply(m.target()), m.injection().image())?;
                    d.components().get(&down).map(|b| (phi, b.clone()))
                })
                .collect()
        })
        .collect();
    XComplex::from_parts(
        cat,
        Variance::Contravariant,
        Ring::Integers,
        x.lo(),
        ranks,
        components,
    )
}

/// Position of each integer generator of [`restrict_scalars`] in the assembly
/// of [`pullback_to_cover`], degree by degree.
pub fn cover_basis_permutation(x: &XComplex, c: &CoverSpec, n: i64) -> Result<Vec<usize>> {
    let exps = exponents(c.group())?;
    let reps = default_representatives(c);
    let m = c.group().order();
    let mut element = vec![0; m];
    for (g, &k) in exps.iter().enumerate() {
        element[k] = g;
    }
    let obj = x.object(n);
    let total_offsets: Vec<usize> = c
        .total
        .simplices()
        .scan(0, |acc, s| {
            let o = *acc;
            *acc += obj.rank(c.projection.apply(s));
            Some(o)
        })
        .collect();
    let mut out = Vec::new();
    for (flat, s) in c.base.simplices().enumerate() {
        for k in 0..obj.rank(s) {
            for &g in &element {
                let lift = c.action.act(g, reps[flat]);
                out.push(total_offsets[c.total.flat_index(lift)] + k);
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::homology;
    use crate::functor::delta_prime_as_xcomplex;
    use crate::subdivision::Subdivision;

    fn circle_prime() -> XComplex {
        delta_prime_as_xcomplex(&Subdivision::new(&fixtures::circle()), Ring::Integers)
    }

    #[test]
    fn cyclic_covers_are_valid() {
        for n in [1, 2, 3, 5] {
            let c = CoverSpec::cyclic_cover_of_circle(n);
            assert!(validate_cover(&c).ok, "{n}");
            assert_eq!(c.total.counts(), vec![n, n]);
        }
        let c = CoverSpec::cyclic_cover_of_circle(3);
        let (q, _) = quotient(&c.total, &c.action).unwrap();
        assert_eq!(q.counts(), vec![1, 1]);
        assert_eq!(
            CoverSpec::cyclic_cover_of_circle(2)
                .total
                .euler_characteristic(),
            0
        );
    }

    #[test]
    fn non_free_action_is_named() {
        // ℤ/2 acting trivially on the 2-cycle
        let mut c = CoverSpec::cyclic_cover_of_circle(2);
        c.action = GroupAction::cyclic(2, DeltaMap::identity(&c.total));
        let r = validate_cover(&c);
        assert!(!r.ok);
        assert!(
            r.failures.iter().any(|f| f.contains("not free")),
            "{:?}",
            r.failures
        );
    }

    #[test]
    fn bad_projection_is_named() {
        let mut c = CoverSpec::cyclic_cover_of_circle(2);
        c.base = fixtures::triangle_circle();
        c.projection = DeltaMap::new(vec![vec![0, 1], vec![0, 0]]);
        let r = validate_cover(&c);
        assert!(!r.ok);
        assert!(r.failures[0].starts_with("projection"), "{:?}", r.failures);
    }

    #[test]
    fn trivial_cover_is_plain_assembly() {
        let x = circle_prime();
        let c = CoverSpec::cyclic_cover_of_circle(1);
        let a = assemble_over_cover(&x, &c).unwrap();
        assert_eq!(a.ring(), Ring::CyclicGroupRing(1));
        assert_eq!(restrict_scalars(&a), x.assemble());
    }

    #[test]
    fn circle_covers() {
        let x = circle_prime();
        for n in [1, 2, 3, 5] {
            let a = assemble_over_cover(&x, &CoverSpec::cyclic_cover_of_circle(n)).unwrap();
            assert_eq!(a.ranks(), &[2, 2]);
            let r = restrict_scalars(&a);
            assert_eq!(r.ranks(), &[2 * n, 2 * n]);
            let h = homology(&r).unwrap();
            assert!(
                h.at(0).is_free_of_rank(1) && h.at(1).is_free_of_rank(1),
                "{n}: {h}"
            );
        }
    }

    #[test]
    fn restriction_is_the_pulled_back_assembly() {
        let x = circle_prime();
        for n in [1, 2, 3, 5] {
            let c = CoverSpec::cyclic_cover_of_circle(n);
            let r = restrict_scalars(&assemble_over_cover(&x, &c).unwrap());
            let p = pullback_to_cover(&x, &c).unwrap().assemble();
            for deg in r.degrees() {
                let (perm_src, perm_dst) = (
                    cover_basis_permutation(&x, &c, deg).unwrap(),
                    cover_basis_permutation(&x, &c, deg - 1).unwrap(),
                );
                let (rd, pd) = (r.d(deg), p.d(deg));
                for i in 0..rd.rows() {
                    for j in 0..rd.cols() {
                        assert_eq!(
                            rd.get(i, j),
                            pd.get(perm_dst[i], perm_src[j]),
                            "{n} {deg} ({i},{j})"
                        );
                    }
                }
            }
            let sub = Subdivision::new(&c.total);
            let direct = delta_prime_as_xcomplex(&sub, Ring::Integers).assemble();
            assert!(homology(&r)
                .unwrap()
                .is_isomorphic(&homology(&direct).unwrap()));
        }
    }

    #[test]
    fn moving_lifts_is_a_unit_change_of_basis() {
        let x = circle_prime();
        let c = CoverSpec::cyclic_cover_of_circle(3);
        let reps = default_representatives(&c);
        let a = assemble_with_representatives(&x, &c, &reps).unwrap();
        // move the lift of the edge by the generator
        let shifted: Vec<SimplexRef> = reps
            .iter()
            .map(|&r| if r.dim == 1 { c.action.act(1, r) } else { r })
            .collect();
        let b = assemble_with_representatives(&x, &c, &shifted).unwrap();
        assert_eq!(a.ranks(), b.ranks());
        // S_x = t on generators over the edge: S·d_b = d_a·S
        let ring = Ring::CyclicGroupRing(3);
        let unit = |n: i64| {
            let obj = x.object(n);
            let mut s = Matrix::zeros(ring, obj.total_rank(), obj.total_rank());
            let offsets = obj.offsets();
            for (flat, st) in c.base.simplices().enumerate() {
                let g = if st.dim == 1 { 1 } else { 0 };
                for k in 0..obj.rank(st) {
                    s.add_group_element(offsets[flat] + k, offsets[flat] + k, g, 1);
                }
            }
            s
        };
        for n in a.degrees() {
            assert_eq!(unit(n - 1).mul(&b.d(n)), a.d(n).mul(&unit(n)), "{n}");
        }
        let deck: Vec<SimplexRef> = reps.iter().map(|&r| c.action.act(1, r)).collect();
        assert_eq!(assemble_with_representatives(&x, &c, &deck).unwrap(), a);
    }

    #[test]
    fn assembly_is_additive_in_ranks() {
        let x = circle_prime();
        let c = CoverSpec::cyclic_cover_of_circle(3);
        let a = assemble_over_cover(&x, &c).unwrap();
        let sum = a.direct_sum(&a).unwrap();
        assert_eq!(sum.ranks(), &[4, 4]);
        assert_eq!(
            restrict_scalars(&sum),
            restrict_scalars(&a)
                .direct_sum(&restrict_scalars(&a))
                .unwrap()
        );
    }

    #[test]
    fn rejects_group_rings_and_foreign_bases() {
        let c = CoverSpec::cyclic_cover_of_circle(2);
        let wrong =
            delta_prime_as_xcomplex(&Subdivision::new(&fixtures::circle()), Ring::PrimeField(2));
        assert!(matches!(
            assemble_over_cover(&wrong, &c),
            Err(Error::RingMismatch(..))
        ));
        let other = delta_prime_as_xcomplex(&Subdivision::new(&fixtures::point()), Ring::Integers);
        assert!(assemble_over_cover(&other, &c).is_err());
    }

    #[test]
    fn cover_json_round_trip() {
        let text = r#"{
            "simplices": {"0": ["a", "b"], "1": ["e", "f"]},
            "faces": {"e": ["a", "b"], "f": ["b", "a"]},
            "group": 2,
            "action": {"a": "b", "b": "a", "e": "f", "f": "e"}
        }"#;
        let c = CoverSpec::from_json(text).unwrap();
        assert!(validate_cover(&c).ok);
        assert_eq!(c.base.counts(), vec![1, 1]);
        let with_base = r#"{
            "simplices": {"0": ["a", "b"], "1": ["e", "f"]},
            "faces": {"e": ["a", "b"], "f": ["b", "a"]},
            "group": 2,
            "action": {"a": "b", "b": "a", "e": "f", "f": "e"},
            "base": {"simplices": {"0": ["x0"], "1": ["x1"]}, "faces": {"x1": ["x0", "x0"]}},
            "projection": {"a": "x0", "b": "x0", "e": "x1", "f": "x1"}
        }"#;
        let c = CoverSpec::from_json(with_base).unwrap();
        assert!(validate_cover(&c).ok);
        assert!(matches!(
            CoverSpec::from_json(r#"{"simplices": {"0": ["a"]}}"#),
            Err(Error::Parse(_))
        ));
    }

    #[test]
    fn restriction_of_a_scalar_complex_is_itself() {
        let x = circle_prime().assemble();
        assert_eq!(restrict_scalars(&x), x);
    }
}
