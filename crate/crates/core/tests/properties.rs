use hecke2::arith::inverse_mod_pow2;
use hecke2::theta::CompositionLaw;
use hecke2::{Bits, F2Series, FElement, FormParam, MTable};
use proptest::prelude::*;

fn series(exps: Vec<usize>, precision: usize) -> F2Series {
    F2Series::from_exponents(exps.into_iter().filter(|&e| e <= precision), precision)
}

fn element(bits: Vec<bool>) -> FElement {
    let n = bits.len();
    FElement::from_coords(Bits::from_ones(n, (0..n).filter(|&i| bits[i])))
}

fn naive_mul(f: &F2Series, g: &F2Series) -> F2Series {
    let n = f.precision().min(g.precision());
    let mut out = vec![false; n + 1];
    for i in f.exponents().filter(|&i| i <= n) {
        for j in g.exponents().filter(|&j| i + j <= n) {
            out[i + j] ^= true;
        }
    }
    F2Series::from_exponents((0..=n).filter(|&k| out[k]), n)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn product_matches_convolution(a in prop::collection::vec(0usize..300, 0..40),
                                   b in prop::collection::vec(0usize..300, 0..40)) {
        let (f, g) = (series(a, 299), series(b, 299));
        prop_assert_eq!(f.mul(&g), naive_mul(&f, &g));
        prop_assert_eq!(f.mul(&g), g.mul(&f));
    }

    #[test]
    fn squaring_is_frobenius(a in prop::collection::vec(0usize..500, 0..60)) {
        let f = series(a, 499);
        let sq = f.square();
        let frob = F2Series::from_exponents(f.exponents().map(|e| 2 * e).filter(|&e| e <= 499), 499);
        prop_assert_eq!(&sq, &frob);
        prop_assert_eq!(sq, f.mul(&f));
    }

    #[test]
    fn hecke_operators_commute_on_series(a in prop::collection::vec(0usize..4000, 0..80),
                                         p in prop::sample::select(vec![3u64, 5, 7, 11, 13]),
                                         q in prop::sample::select(vec![3u64, 5, 7, 11, 13])) {
        let f = series(a, 3999);
        let pq = f.hecke(q).unwrap().hecke(p).unwrap();
        let qp = f.hecke(p).unwrap().hecke(q).unwrap();
        prop_assert_eq!(pq.precision(), qp.precision());
        prop_assert_eq!(pq, qp);
    }

    #[test]
    fn duality_roundtrip(bits in prop::collection::vec(any::<bool>(), 1..=16)) {
        let f = element(bits);
        let mut table = MTable::new();
        let c = table.m_coefficients(&f).unwrap();
        let back = table.recombine(&c).unwrap();
        prop_assert_eq!(back.delta_exponents(), f.delta_exponents());
    }

    #[test]
    fn hecke_preserves_f(bits in prop::collection::vec(any::<bool>(), 1..=12),
                         p in prop::sample::select(vec![3u64, 5, 7, 11, 13, 17, 19, 23])) {
        let f = element(bits);
        let n = f.level();
        let image = f.to_series(p as usize * (2 * n - 1)).hecke(p).unwrap();
        let coords = hecke2::expand_in_delta_basis(&image, n).unwrap();
        let via_matrix = hecke2::hecke_matrix(p, n).unwrap().mul_vec(f.coords());
        prop_assert_eq!(coords.coords(), &via_matrix);
    }

    #[test]
    fn odd_inverse(a in any::<u64>(), bits in 1u32..=63) {
        let a = a | 1;
        let m = (1u64 << bits) - 1;
        prop_assert_eq!(a.wrapping_mul(inverse_mod_pow2(a, bits)) & m, 1);
    }

    #[test]
    fn composition_is_associative(x in any::<u64>(), y in any::<u64>(), z in any::<u64>(),
                                  n in 1u32..=40, four in any::<bool>()) {
        let c = if four { FormParam::Four } else { FormParam::Two };
        let law = CompositionLaw::new(n, c);
        let m = law.modulus() - 1;
        let (x, y, z) = (x & m, y & m, z & m);
        prop_assert_eq!(law.compose(law.compose(x, y), z), law.compose(x, law.compose(y, z)));
        prop_assert_eq!(law.compose(x, law.negate(x)), 0);
    }
}
