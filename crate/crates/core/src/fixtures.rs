//! Named built-in Δ-sets and covers, plus a seeded generator of small random
//! Δ-sets for property tests.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::assembly::CoverSpec;
use crate::delta::{from_simplicial_complex, standard_simplex, DeltaMap, DeltaSet};
use crate::error::{Error, Result};

/// `S¹` with one vertex `x0` and one edge `x1`, `∂₀x1 = ∂₁x1 = x0`.
pub fn circle() -> DeltaSet {
    DeltaSet::builder()
        .vertex("x0")
        .simplex("x1", ["x0", "x0"])
        .build()
        .expect("valid fixture")
}

/// The dunce hat: one simplex in each dimension 0, 1, 2 with every face
/// identified.
pub fn dunce_hat() -> DeltaSet {
    DeltaSet::builder()
        .vertex("x0")
        .simplex("x1", ["x0", "x0"])
        .simplex("x2", ["x1", "x1", "x1"])
        .build()
        .expect("valid fixture")
}

/// Boundary of a triangle as an ordered simplicial complex.
pub fn triangle_circle() -> DeltaSet {
    from_simplicial_complex(
        &["0", "1", "2"],
        &[vec!["0", "1"], vec!["0", "2"], vec!["1", "2"]],
    )
    .expect("valid fixture")
}

pub fn point() -> DeltaSet {
    standard_simplex(0)
}

/// The `n`-cycle: vertices `v0..`, edges `e0..` with `∂₀eᵢ = vᵢ`, `∂₁eᵢ = vᵢ₊₁`.
pub fn cycle(n: usize) -> DeltaSet {
    assert!(n >= 1);
    let mut b = DeltaSet::builder();
    for i in 0..n {
        b = b.vertex(format!("v{i}"));
    }
    for i in 0..n {
        b = b.simplex(
            format!("e{i}"),
            [format!("v{i}"), format!("v{}", (i + 1) % n)],
        );
    }
    b.build().expect("valid fixture")
}

/// Rotation `vᵢ ↦ vᵢ₊₁`, `eᵢ ↦ eᵢ₊₁` of [`cycle`].
pub fn cycle_rotation(n: usize) -> DeltaMap {
    let shift: Vec<usize> = (0..n).map(|i| (i + 1) % n).collect();
    DeltaMap::new(vec![shift.clone(), shift])
}

pub const NAMES: &[&str] = &[
    "circle",
    "dunce-hat",
    "triangle-circle",
    "point",
    "empty",
    "simplex-<n>",
    "cyclic-cover-<n>",
];

/// Resolve a built-in Δ-set by name (without the `fixture:` prefix).
pub fn by_name(name: &str) -> Result<DeltaSet> {
    match name {
        "circle" => Ok(circle()),
        "dunce-hat" => Ok(dunce_hat()),
        "triangle-circle" => Ok(triangle_circle()),
        "point" => Ok(point()),
        "empty" => Ok(DeltaSet::empty()),
        _ => {
            if let Some(n) = name
                .strip_prefix("simplex-")
                .and_then(|s| s.parse::<usize>().ok())
            {
                return Ok(standard_simplex(n));
            }
            if let Some(n) = parse_cover_name(name) {
                return Ok(cycle(n));
            }
            Err(Error::UnknownFixture(name.to_string()))
        }
    }
}

fn parse_cover_name(name: &str) -> Option<usize> {
    name.strip_prefix("cyclic-cover-")
        .and_then(|s| s.parse::<usize>().ok())
        .filter(|&n| n >= 1)
}

/// Resolve a built-in cover by name.
pub fn cover_by_name(name: &str) -> Result<CoverSpec> {
    parse_cover_name(name)
        .map(CoverSpec::cyclic_cover_of_circle)
        .ok_or_else(|| Error::UnknownFixture(name.to_string()))
}

/// A small random Δ-set: up to `max_per_dim` simplices in each dimension up to
/// `max_dim`, with face tuples drawn at random among those satisfying the
/// simplicial identities.
pub fn random_delta_set(seed: u64, max_dim: usize, max_per_dim: usize) -> DeltaSet {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut b = DeltaSet::builder();
    let mut faces: Vec<Vec<Vec<usize>>> = Vec::new();
    let vertices = rng.gen_range(1..=max_per_dim.max(1));
    for k in 0..vertices {
        b.push(0, format!("a0_{k}"), Vec::new());
    }
    faces.push(vec![Vec::new(); vertices]);
    for n in 1..=max_dim {
        let wanted = rng.gen_range(0..=max_per_dim);
        let mut dim_faces: Vec<Vec<usize>> = Vec::new();
        for _ in 0..wanted {
            let Some(tuple) = random_face_tuple(&mut rng, &faces, n) else {
                break;
            };
            let k = dim_faces.len();
            b.push(
                n,
                format!("a{n}_{k}"),
                tuple.iter().map(|&j| format!("a{}_{j}", n - 1)).collect(),
            );
            dim_faces.push(tuple);
        }
        if dim_faces.is_empty() {
            break;
        }
        faces.push(dim_faces);
    }
    b.build()
        .expect("generated face tuples satisfy the identities")
}

/// Backtracking search for `(f₀, …, fₙ)` with `∂ᵢfⱼ = ∂ⱼ₋₁fᵢ` for `i < j`.
fn random_face_tuple(
    rng: &mut ChaCha8Rng,
    faces: &[Vec<Vec<usize>>],
    n: usize,
) -> Option<Vec<usize>> {
    let lower = faces[n - 1].len();
    let face = |f: usize, i: usize| faces[n - 1][f][i];
    fn extend(
        rng: &mut ChaCha8Rng,
        chosen: &mut Vec<usize>,
        n: usize,
        lower: usize,
        face: &dyn Fn(usize, usize) -> usize,
    ) -> bool {
        let j = chosen.len();
        if j == n + 1 {
            return true;
        }
        let mut candidates: Vec<usize> = (0..lower).collect();
        candidates.shuffle(rng);
        for c in candidates {
            // n ≥ 2 here whenever i < j exists, so faces of c are defined
            let ok = (0..j).all(|i| n < 2 || face(c, i) == face(chosen[i], j - 1));
            if ok {
                chosen.push(c);
                if extend(rng, chosen, n, lower, face) {
                    return true;
                }
                chosen.pop();
            }
        }
        false
    }
    let mut chosen = Vec::with_capacity(n + 1);
    extend(rng, &mut chosen, n, lower, &face).then_some(chosen)
}

/// All fixtures the invariant suites quantify over.
pub fn catalogue() -> Vec<(&'static str, DeltaSet)> {
    vec![
        ("empty", DeltaSet::empty()),
        ("point", point()),
        ("circle", circle()),
        ("dunce-hat", dunce_hat()),
        ("triangle-circle", triangle_circle()),
        ("simplex-1", standard_simplex(1)),
        ("simplex-2", standard_simplex(2)),
        ("simplex-3", standard_simplex(3)),
        ("cycle-3", cycle(3)),
    ]
}
