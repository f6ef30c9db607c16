//! Property tests for the polynomial and text layers.

use proptest::prelude::*;
use weyl::{
    falling_to_values, hermite_evaluate, hermite_interpolate, values_to_falling, DiffOperator,
    FieldDescriptor, FieldElement, HermiteSpec, Polynomial,
};

fn fp() -> FieldDescriptor {
    FieldDescriptor::prime_field(1000003).unwrap()
}

fn rational_poly(max_len: usize) -> impl Strategy<Value = Polynomial> {
    prop::collection::vec((-9i64..=9, 1i64..=4), 0..max_len).prop_map(|pairs| {
        let f = FieldDescriptor::Rational;
        Polynomial::new(
            pairs
                .into_iter()
                .map(|(n, d)| FieldElement::rational(n, d).unwrap())
                .collect(),
            f,
        )
    })
}

fn fp_poly(max_len: usize) -> impl Strategy<Value = Polynomial> {
    prop::collection::vec(0i64..1000003, 0..max_len).prop_map(|coeffs| {
        Polynomial::new(
            coeffs
                .into_iter()
                .map(|c| FieldElement::from_integer(fp(), c))
                .collect(),
            fp(),
        )
    })
}

fn fp_operator() -> impl Strategy<Value = DiffOperator> {
    prop::collection::vec((0usize..5, 0usize..5, 0i64..1000003), 0..12).prop_map(|terms| {
        DiffOperator::from_terms(
            fp(),
            terms
                .into_iter()
                .map(|(i, j, c)| (i, j, FieldElement::from_integer(fp(), c))),
        )
    })
}

fn rational_operator() -> impl Strategy<Value = DiffOperator> {
    prop::collection::vec((0usize..5, 0usize..5, -9i64..=9, 1i64..=4), 0..12).prop_map(|terms| {
        let f = FieldDescriptor::Rational;
        DiffOperator::from_terms(
            f,
            terms
                .into_iter()
                .map(|(i, j, n, d)| (i, j, FieldElement::rational(n, d).unwrap())),
        )
    })
}

proptest! {
    #[test]
    fn poly_mul_commutes(a in rational_poly(20), b in rational_poly(20)) {
        prop_assert_eq!(a.mul(&b).unwrap(), b.mul(&a).unwrap());
    }

    #[test]
    fn poly_mul_associates(a in fp_poly(15), b in fp_poly(15), c in fp_poly(15)) {
        let left = a.mul(&b).unwrap().mul(&c).unwrap();
        let right = a.mul(&b.mul(&c).unwrap()).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn poly_mul_distributes(a in fp_poly(15), b in fp_poly(15), c in fp_poly(15)) {
        let left = a.mul(&b.add(&c).unwrap()).unwrap();
        let right = a.mul(&b).unwrap().add(&a.mul(&c).unwrap()).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn product_degree_adds(a in fp_poly(20), b in fp_poly(20)) {
        let p = a.mul(&b).unwrap();
        match (a.degree(), b.degree()) {
            (Some(da), Some(db)) => prop_assert_eq!(p.degree(), Some(da + db)),
            _ => prop_assert!(p.is_zero()),
        }
    }

    #[test]
    fn taylor_shift_round_trips(p in rational_poly(24), a in -9i64..=9) {
        let f = FieldDescriptor::Rational;
        let alpha = FieldElement::from_integer(f, a);
        let shifted = p.taylor_shift(&alpha).unwrap();
        prop_assert_eq!(shifted.taylor_shift(&alpha.negated()).unwrap(), p);
    }

    #[test]
    fn taylor_shift_translates_evaluation(p in rational_poly(16), a in -6i64..=6, x in -6i64..=6) {
        let f = FieldDescriptor::Rational;
        let alpha = FieldElement::from_integer(f, a);
        let point = FieldElement::from_integer(f, x);
        let shifted = p.taylor_shift(&alpha).unwrap();
        prop_assert_eq!(shifted.eval(&point), p.eval(&(&point + &alpha)));
    }

    #[test]
    fn falling_transforms_invert(coeffs in prop::collection::vec(0i64..1000003, 1..40)) {
        let seq: Vec<FieldElement> = coeffs
            .into_iter()
            .map(|c| FieldElement::from_integer(fp(), c))
            .collect();
        let vals = falling_to_values(&seq, seq.len(), fp()).unwrap();
        prop_assert_eq!(values_to_falling(&vals, fp()).unwrap(), seq);
    }

    #[test]
    fn hermite_round_trips(
        raw_points in prop::collection::hash_set(0i64..1000, 1..6),
        mult_seed in prop::collection::vec(1usize..7, 6),
        coeff_seed in prop::collection::vec(0i64..1000003, 1..24),
    ) {
        let points: Vec<FieldElement> = raw_points
            .iter()
            .map(|&a| FieldElement::from_integer(fp(), a))
            .collect();
        let mults: Vec<usize> = mult_seed.iter().take(points.len()).copied().collect();
        let spec = HermiteSpec::new(points, mults).unwrap();
        let p = Polynomial::new(
            coeff_seed
                .into_iter()
                .take(spec.total())
                .map(|c| FieldElement::from_integer(fp(), c))
                .collect(),
            fp(),
        );
        let vals = hermite_evaluate(&p, &spec).unwrap();
        prop_assert_eq!(hermite_interpolate(&vals, &spec).unwrap(), p);
    }

    #[test]
    fn operator_text_round_trips_fp(op in fp_operator()) {
        let printed = op.to_string();
        prop_assert_eq!(DiffOperator::parse(&printed, fp()).unwrap(), op);
    }

    #[test]
    fn operator_text_round_trips_rational(op in rational_operator()) {
        let printed = op.to_string();
        let f = FieldDescriptor::Rational;
        prop_assert_eq!(DiffOperator::parse(&printed, f).unwrap(), op.clone());
        prop_assert_eq!(DiffOperator::from_json(&op.to_json()).unwrap(), op);
    }

    #[test]
    fn naive_product_is_bilinear(
        a in fp_operator(),
        b in fp_operator(),
        c in fp_operator(),
    ) {
        let left = a.multiply_naive(&b.add(&c).unwrap()).unwrap();
        let right = a
            .multiply_naive(&b)
            .unwrap()
            .add(&a.multiply_naive(&c).unwrap())
            .unwrap();
        prop_assert_eq!(left, right);
    }
}
