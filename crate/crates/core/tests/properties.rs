use num_bigint::BigUint;
use plucker::codes::{build_generator, codeword_weight, min_distance, CodeSpec};
use plucker::exterior::{check_functional, functional_to_wedge, point_wedge, DualFunctional, WedgeElement};
use plucker::gf::Field;
use plucker::grassmann::strings::{phi, project_tau, string_label, StringLabel};
use plucker::grassmann::{enumerate_grassmannian, EchelonMatrix, PluckerEmbedding};
use plucker::qcombin::{gaussian_binomial, GrassmannParams};
use proptest::prelude::*;

const ORDERS: [u32; 5] = [2, 3, 4, 5, 9];

fn field() -> impl Strategy<Value = Field> {
    prop::sample::select(ORDERS.to_vec()).prop_map(|q| Field::of_order(q).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn field_axioms(f in field(), a in 0usize..9, b in 0usize..9, c in 0usize..9) {
        let q = f.order();
        let (a, b, c) = (f.from_index(a % q).unwrap(), f.from_index(b % q).unwrap(), f.from_index(c % q).unwrap());
        prop_assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
        prop_assert_eq!(f.add(a, f.neg(a)), f.zero());
        if !a.is_zero() {
            prop_assert_eq!(f.mul(a, f.inv(a).unwrap()), f.one());
        }
    }

    #[test]
    fn gaussian_symmetry(m in 0usize..12, l in 0usize..12, q in 2u64..8) {
        let l = l.min(m);
        prop_assert_eq!(gaussian_binomial(m, l, q), gaussian_binomial(m, m - l, q));
    }

    #[test]
    fn random_span_is_canonical(f in field(), seed in any::<u64>()) {
        // a random 2 x 4 matrix of rank 2 reduces to the same point as its row-mixed copy
        let q = f.order();
        let mut s = seed;
        let mut next = || { s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407); f.from_index((s >> 33) as usize % q).unwrap() };
        let rows: Vec<Vec<_>> = (0..2).map(|_| (0..4).map(|_| next()).collect()).collect();
        let Ok(x) = EchelonMatrix::from_span(&f, &rows, 4) else { return Ok(()); };
        let c = next();
        let mixed = vec![rows[0].iter().zip(&rows[1]).map(|(&a, &b)| f.add(a, f.mul(c, b))).collect(), rows[1].clone()];
        prop_assert_eq!(EchelonMatrix::from_span(&f, &mixed, 4).unwrap(), x);
    }

    #[test]
    fn products_of_vectors_are_decomposable(f in field(), seed in any::<u64>(), d in 1usize..4) {
        let q = f.order();
        let mut s = seed;
        let mut next = || { s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407); f.from_index((s >> 33) as usize % q).unwrap() };
        let vs: Vec<Vec<_>> = (0..d).map(|_| (0..5).map(|_| next()).collect()).collect();
        let z = WedgeElement::wedge_of_vectors(&f, 5, &vs).unwrap();
        if !z.is_zero() {
            prop_assert!(z.is_decomposable().unwrap());
        }
    }
}

#[test]
fn pairing_and_strings_exhaustive_small() {
    for q in [2, 3] {
        let params = GrassmannParams::new(2, 4, Field::of_order(q).unwrap()).unwrap();
        let emb = PluckerEmbedding::new(&params);
        let points = enumerate_grassmannian(&params).unwrap();
        assert_eq!(BigUint::from(points.len()), gaussian_binomial(4, 2, q as u64));
        let f = DualFunctional::parse(&params, "X:1,2 + X:1,4 + 2*X:3,4").unwrap();
        let z = functional_to_wedge(&f);
        for x in &points {
            assert_eq!(z.pairing(&point_wedge(&params.field, x)).unwrap(), f.evaluate(&emb.embed(x)));
            if x.in_t() {
                let nu = string_label(x).unwrap();
                assert_eq!(&phi(&project_tau(x).unwrap(), &nu).unwrap(), x);
            }
        }
        assert!(phi(&points[0], &StringLabel::new(vec![])).is_err());
    }
}

#[test]
fn decomposable_weights_are_minimal() {
    let params = GrassmannParams::new(2, 5, Field::of_order(2).unwrap()).unwrap();
    let spec = CodeSpec::grassmann(&params).unwrap();
    let gen = build_generator(&spec).unwrap();
    let d = min_distance(&spec);
    for s in ["X:4,5", "X:1,5 + X:2,5", "X:1,2 + X:1,3 + X:2,3", "X:1,2 + X:3,4"] {
        let f = DualFunctional::parse(&params, s).unwrap();
        let w = BigUint::from(codeword_weight(&f, &gen).unwrap());
        assert_eq!(check_functional(&f).unwrap(), w == d, "{s}");
    }
}
