use hilbert_mcm::field::Field;
use hilbert_mcm::matrix::DenseMatrix;
use hilbert_mcm::poly::{Monomial, Poly};
use hilbert_mcm::presentations::{hilbert_function, ModulePresentation, RingPresentation};
use hilbert_mcm::series::{chi_alternating, chi_binomial, expand, extract_h_polynomial, LengthSeries};
use proptest::prelude::*;

const CAP: usize = 1 << 24;

fn field() -> Field {
    Field::new(2_147_483_647).unwrap()
}

fn small_field() -> Field {
    Field::new(101).unwrap()
}

fn poly_strategy(nvars: usize) -> impl Strategy<Value = Poly> {
    prop::collection::vec(
        (prop::collection::vec(0u32..4, nvars), 1u64..2_147_483_647),
        1..6,
    )
    .prop_map(move |terms| {
        let terms = terms
            .into_iter()
            .map(|(e, c)| (Monomial::from_exps(&e).unwrap(), c))
            .collect();
        Poly::from_terms(nvars, field(), terms)
    })
}

fn matrix_strategy() -> impl Strategy<Value = Vec<Vec<u64>>> {
    (1usize..7, 1usize..7).prop_flat_map(|(r, c)| {
        // small entries over F_101 so that rank drops actually happen
        prop::collection::vec(prop::collection::vec(0u64..3, c), r)
    })
}

fn dense(rows: &[Vec<u64>]) -> DenseMatrix {
    DenseMatrix::from_rows(rows, rows[0].len(), small_field())
}

/// Random cyclic quotient of k[x,y] by monomials and a binomial.
fn cyclic_strategy() -> impl Strategy<Value = Vec<String>> {
    prop::sample::subsequence(
        vec!["x^2", "y^3", "x*y", "x^3", "y^2", "x^2-y^2", "x*y^2"],
        1..4,
    )
    .prop_map(|v| v.into_iter().map(String::from).collect())
}

fn ring_xy() -> RingPresentation {
    RingPresentation::from_strs("A", &["x", "y"], &["x*y^2"], field()).unwrap()
}

fn cyclic(ring: &RingPresentation, rels: &[String]) -> ModulePresentation {
    let extra = rels.iter().map(|s| ring.parse(s).unwrap()).collect();
    ring.cyclic("M", extra)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(150))]

    #[test]
    fn order_is_additive(f in poly_strategy(3), g in poly_strategy(3)) {
        prop_assume!(!f.is_zero() && !g.is_zero());
        let of = f.order().finite().unwrap();
        let og = g.order().finite().unwrap();
        prop_assert_eq!(f.mul(&g).order().finite(), Some(of + og));
    }

    #[test]
    fn rank_invariant_under_transpose_and_permutation(
        rows in matrix_strategy(),
        seed in any::<u64>(),
    ) {
        let m = dense(&rows);
        let r = m.rank();
        prop_assert_eq!(m.transpose().rank(), r);
        let mut rp: Vec<usize> = (0..m.rows()).collect();
        let mut cp: Vec<usize> = (0..m.cols()).collect();
        let mut s = seed;
        for v in [&mut rp, &mut cp] {
            for i in (1..v.len()).rev() {
                s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                v.swap(i, (s >> 33) as usize % (i + 1));
            }
        }
        prop_assert_eq!(m.permute_rows(&rp).permute_cols(&cp).rank(), r);
        prop_assert!(r <= m.rows().min(m.cols()));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn hilbert_is_additive_on_direct_sums(a in cyclic_strategy(), b in cyclic_strategy()) {
        let ring = ring_xy();
        let m = cyclic(&ring, &a);
        let n = cyclic(&ring, &b);
        let s = m.direct_sum(&n).unwrap();
        let hm = hilbert_function(&m, 8, CAP).unwrap();
        let hn = hilbert_function(&n, 8, CAP).unwrap();
        let hs = hilbert_function(&s, 8, CAP).unwrap();
        for k in 0..=8 {
            prop_assert_eq!(hs[k], hm[k] + hn[k]);
        }
    }

    #[test]
    fn e0_is_additive_when_dimensions_agree(a in cyclic_strategy(), b in cyclic_strategy()) {
        let ring = ring_xy();
        let m = cyclic(&ring, &a);
        let n = cyclic(&ring, &b);
        let s = m.direct_sum(&n).unwrap();
        let h = |x: &ModulePresentation| {
            let v = hilbert_function(x, 10, CAP).unwrap();
            extract_h_polynomial(&LengthSeries::raw(v), 3).unwrap()
        };
        let (hm, hn, hs) = (h(&m), h(&n), h(&s));
        prop_assume!(hm.dim_r == hn.dim_r);
        prop_assert_eq!(hs.dim_r, hm.dim_r);
        prop_assert_eq!(hs.e_i(0), hm.e_i(0) + hn.e_i(0));
    }

    #[test]
    fn truncation_window_does_not_change_values(a in cyclic_strategy()) {
        let ring = ring_xy();
        let m = cyclic(&ring, &a);
        let short = hilbert_function(&m, 5, CAP).unwrap();
        let long = hilbert_function(&m, 9, CAP).unwrap();
        prop_assert_eq!(&long[..=5], &short[..]);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn chi_forms_agree(h in prop::collection::vec(-50i64..50, 1..8), i_max in 0usize..6) {
        prop_assert_eq!(chi_alternating(&h, i_max), chi_binomial(&h, i_max));
    }

    #[test]
    fn h_polynomial_round_trip(h in prop::collection::vec(0i64..6, 1..5), r in 0usize..3) {
        prop_assume!(h.iter().sum::<i64>() > 0);
        let series = expand(&h, r, 14);
        prop_assume!(series.iter().all(|&v| v >= 0));
        let values: Vec<usize> = series.iter().map(|&v| v as usize).collect();
        let got = extract_h_polynomial(&LengthSeries::raw(values.clone()), 3).unwrap();
        prop_assert_eq!(got.dim_r, r);
        prop_assert_eq!(expand(&got.coeffs, got.dim_r, values.len()), series);
    }
}

#[test]
fn free_module_scales_ring_hilbert_function() {
    let ring = RingPresentation::from_strs("A", &["x", "y"], &["y^3"], field()).unwrap();
    let h1 = hilbert_function(&ring.as_module(), 8, CAP).unwrap();
    for r in 1..4 {
        let hr = hilbert_function(&ring.free(r), 8, CAP).unwrap();
        let scaled: Vec<usize> = h1.iter().map(|v| v * r).collect();
        assert_eq!(hr, scaled);
    }
}
