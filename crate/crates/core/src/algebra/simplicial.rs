use num_bigint::BigInt;

use super::{ChainComplex, Matrix, Ring};
use crate::delta::{DeltaSet, SimplexRef, SubDeltaSet};
use crate::error::Result;

/// `Δ(X; R)` with `d = Σ (−1)^i ∂ᵢ`. Repeated faces accumulate, so the
/// two faces of the circle's edge cancel.
pub fn simplicial_chain_complex(x: &DeltaSet, ring: Ring) -> ChainComplex {
    relative_complex(x, &SubDeltaSet::none(x), ring).expect("the empty sub-Δ-set is closed")
}

/// `Δ(X, A; R)`: free on the simplices of `X ∖ A`, in their order in `X`.
pub fn relative_complex(x: &DeltaSet, a: &SubDeltaSet, ring: Ring) -> Result<ChainComplex> {
    a.ensure_closed(x)?;
    let counts = x.counts();
    // position of each surviving simplex inside its degree
    let positions: Vec<Vec<Option<usize>>> = counts
        .iter()
        .enumerate()
        .map(|(n, &c)| {
            let mut next = 0;
            (0..c)
                .map(|k| {
                    (!a.contains(SimplexRef::new(n, k))).then(|| {
                        next += 1;
                        next - 1
                    })
                })
                .collect()
        })
        .collect();
    let ranks: Vec<usize> = positions
        .iter()
        .map(|p| p.iter().flatten().count())
        .collect();
    if ranks.is_empty() {
        return Ok(ChainComplex::zero(ring));
    }
    let mut diffs = vec![Matrix::zeros(ring, 0, ranks[0])];
    for n in 1..ranks.len() {
        let mut d = Matrix::zeros(ring, ranks[n - 1], ranks[n]);
        for k in 0..counts[n] {
            let Some(col) = positions[n][k] else { continue };
            for (i, &f) in x.face_indices(SimplexRef::new(n, k)).iter().enumerate() {
                if let Some(row) = positions[n - 1][f] {
                    let sign = if i % 2 == 0 { 1 } else { -1 };
                    d.add_scalar(row, col, &BigInt::from(sign));
                }
            }
        }
        diffs.push(d);
    }
    ChainComplex::new(ring, 0, ranks, diffs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::homology;
    use crate::delta::standard_simplex;
    use crate::fixtures;

    #[test]
    fn circle_differential_cancels() {
        let c = simplicial_chain_complex(&fixtures::circle(), Ring::Integers);
        assert_eq!(c.ranks(), &[1, 1]);
        assert!(c.d(1).is_zero());
        let h = homology(&c).unwrap();
        assert!(h.at(0).is_free_of_rank(1) && h.at(1).is_free_of_rank(1));
    }

    #[test]
    fn standard_simplex_is_acyclic_above_zero() {
        let c = simplicial_chain_complex(&standard_simplex(2), Ring::Integers);
        assert_eq!(c.ranks(), &[3, 3, 1]);
        assert_eq!(homology(&c).unwrap().concentrated_z(), Some(0));
    }

    #[test]
    fn dunce_hat_is_contractible() {
        let h = homology(&simplicial_chain_complex(
            &fixtures::dunce_hat(),
            Ring::Integers,
        ))
        .unwrap();
        assert_eq!(h.concentrated_z(), Some(0));
    }

    #[test]
    fn empty_and_full_pairs() {
        assert!(simplicial_chain_complex(&DeltaSet::empty(), Ring::Integers).is_zero());
        let x = fixtures::dunce_hat();
        assert!(relative_complex(&x, &SubDeltaSet::all(&x), Ring::Integers)
            .unwrap()
            .is_zero());
    }

    #[test]
    fn unclosed_pair_is_rejected() {
        let x = fixtures::circle();
        let a = SubDeltaSet::from_labels(&x, &["x1"]).unwrap();
        assert!(relative_complex(&x, &a, Ring::Integers).is_err());
    }
}
