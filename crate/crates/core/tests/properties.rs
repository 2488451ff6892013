use deltacx::algebra::{homology, simplicial_chain_complex, ChainComplex, Matrix, Ring};
use deltacx::duality::{chain_dual_x, cochain_oracle, cohomology_via_dual, double_dual_check};
use deltacx::fixtures::random_delta_set;
use deltacx::functor::delta_prime_as_xcomplex;
use deltacx::subdivision::Subdivision;
use deltacx::total::{constant_tot_isomorphism, tot_assembled, FunctorComplex};
use proptest::prelude::*;

fn elementary(n: usize, ops: &[(usize, usize, i64)]) -> Matrix {
    // product of row operations r_i += k r_j, always unimodular
    let mut u = Matrix::identity(Ring::Integers, n);
    for &(i, j, k) in ops {
        let (i, j) = (i % n, j % n);
        if i == j {
            continue;
        }
        let mut e = Matrix::identity(Ring::Integers, n);
        e.set(i, j, k.into());
        u = e.mul(&u);
    }
    u
}

fn two_term(rows: usize, cols: usize, entries: &[i64]) -> ChainComplex {
    let data: Vec<Vec<i64>> = (0..rows)
        .map(|i| (0..cols).map(|j| entries[i * cols + j]).collect())
        .collect();
    let d = Matrix::from_rows(Ring::Integers, &data);
    ChainComplex::new(
        Ring::Integers,
        0,
        vec![rows, cols],
        vec![Matrix::zeros(Ring::Integers, 0, rows), d],
    )
    .unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn homology_is_invariant_under_change_of_basis(
        rows in 1usize..5,
        cols in 1usize..5,
        entries in proptest::collection::vec(-3i64..4, 16),
        left in proptest::collection::vec((0usize..5, 0usize..5, -2i64..3), 0..6),
        right in proptest::collection::vec((0usize..5, 0usize..5, -2i64..3), 0..6),
    ) {
        let c = two_term(rows, cols, &entries);
        let (u, v) = (elementary(rows, &left), elementary(cols, &right));
        let moved = ChainComplex::new(
            Ring::Integers,
            0,
            vec![rows, cols],
            vec![Matrix::zeros(Ring::Integers, 0, rows), u.mul(&c.d(1)).mul(&v)],
        )
        .unwrap();
        prop_assert_eq!(homology(&c).unwrap(), homology(&moved).unwrap());
    }

    #[test]
    fn euler_characteristic_from_homology(seed in 0u64..5000) {
        let x = random_delta_set(seed, 3, 4);
        let h = homology(&simplicial_chain_complex(&x, Ring::Integers)).unwrap();
        let chi: i64 = h.nonzero().iter().map(|g| if g.degree % 2 == 0 { g.free_rank as i64 } else { -(g.free_rank as i64) }).sum();
        prop_assert_eq!(chi, x.euler_characteristic());
    }

    #[test]
    fn subdivision_keeps_homology(seed in 0u64..5000) {
        let x = random_delta_set(seed, 2, 3);
        prop_assert!(x.validate().is_ok());
        let sub = Subdivision::new(&x);
        prop_assert!(sub.delta().validate().is_ok());
        prop_assert_eq!(sub.delta().euler_characteristic(), x.euler_characteristic());
        for ring in [Ring::Integers, Ring::PrimeField(2)] {
            let a = homology(&simplicial_chain_complex(&x, ring)).unwrap();
            let b = homology(&simplicial_chain_complex(sub.delta(), ring)).unwrap();
            let c = homology(&delta_prime_as_xcomplex(&sub, ring).assemble()).unwrap();
            prop_assert!(a.is_isomorphic(&b));
            prop_assert!(b.is_isomorphic(&c));
        }
    }

    #[test]
    fn tot_and_duality_on_random_delta_sets(seed in 0u64..5000) {
        let x = random_delta_set(seed, 2, 3);
        prop_assert!(constant_tot_isomorphism(&x, Ring::Integers).is_ok());
        let sub = Subdivision::new(&x);
        let c = delta_prime_as_xcomplex(&sub, Ring::Integers);
        let t = tot_assembled(&FunctorComplex::from_induced(&c).unwrap());
        prop_assert!(homology(&t).unwrap().is_isomorphic(&homology(&c.assemble()).unwrap()));
        prop_assert!(chain_dual_x(&c).is_ok());
        prop_assert!(double_dual_check(&c).unwrap().verdict);
        let via = cohomology_via_dual(&x, Ring::Integers).unwrap();
        prop_assert!(via.is_isomorphic(&cochain_oracle(&x, Ring::Integers).unwrap()));
    }
}
