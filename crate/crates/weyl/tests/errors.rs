//! Error-path coverage: every public entry point reports its documented
//! error instead of panicking or silently misbehaving.

use weyl::{
    block_eval_matrix, eval_matrix, eval_matrix_padded, falling_to_values, hermite_evaluate,
    operator_from_block_eval_matrix, operator_from_eval_matrix, values_to_falling, BlockEvalPlan,
    DiffOperator, FieldDescriptor, FieldElement, HermiteSpec, Polynomial, WeylError,
};

fn rational() -> FieldDescriptor {
    FieldDescriptor::Rational
}

fn fp(p: u64) -> FieldDescriptor {
    FieldDescriptor::prime_field(p).unwrap()
}

fn is_mismatch(e: WeylError) -> bool {
    matches!(e, WeylError::FieldMismatch { .. })
}

#[test]
fn cross_field_polynomials_are_rejected() {
    let a = Polynomial::one(rational());
    let b = Polynomial::one(fp(7));
    assert!(is_mismatch(a.mul(&b).unwrap_err()));
    assert!(is_mismatch(a.add(&b).unwrap_err()));
    assert!(is_mismatch(a.divrem(&b).unwrap_err()));
}

#[test]
fn cross_field_operators_are_rejected() {
    let a = DiffOperator::parse("x*D", rational()).unwrap();
    let b = DiffOperator::parse("x*D", fp(7)).unwrap();
    assert!(is_mismatch(a.multiply(&b).unwrap_err()));
    assert!(is_mismatch(a.multiply_naive(&b).unwrap_err()));
    assert!(is_mismatch(a.apply(&Polynomial::one(fp(7))).unwrap_err()));
    assert!(is_mismatch(
        a.conjugate_exp(&FieldElement::one(fp(7))).unwrap_err()
    ));
}

#[test]
fn hermite_spec_invariants() {
    let fe = |n: i64| FieldElement::from_integer(rational(), n);
    assert!(matches!(
        HermiteSpec::new(vec![], vec![]),
        Err(WeylError::InvalidSpec(_))
    ));
    assert!(matches!(
        HermiteSpec::new(vec![fe(0)], vec![0]),
        Err(WeylError::InvalidSpec(_))
    ));
    assert!(matches!(
        HermiteSpec::new(vec![fe(0), fe(1)], vec![1]),
        Err(WeylError::InvalidSpec(_))
    ));
    // Mixed-field points.
    let other = FieldElement::one(fp(7));
    assert!(is_mismatch(
        HermiteSpec::new(vec![fe(0), other], vec![1, 1]).unwrap_err()
    ));
    // Evaluating a polynomial from another field.
    let spec = HermiteSpec::uniform(vec![fe(0)], 2).unwrap();
    assert!(is_mismatch(
        hermite_evaluate(&Polynomial::one(fp(7)), &spec).unwrap_err()
    ));
}

#[test]
fn eval_matrix_preconditions() {
    let l = DiffOperator::parse("x^3*D", rational()).unwrap();
    assert!(matches!(
        eval_matrix(&l, 0),
        Err(WeylError::PreconditionViolated(_))
    ));
    // Padding bound below the operator's degree.
    assert!(matches!(
        eval_matrix_padded(&l, 4, 1),
        Err(WeylError::PreconditionViolated(_))
    ));
    // Too few columns to pin the order.
    let em = eval_matrix(&l, 4).unwrap();
    assert!(matches!(
        operator_from_eval_matrix(&em, 3, 7),
        Err(WeylError::PreconditionViolated(_))
    ));
}

#[test]
fn small_characteristic_guards_fire() {
    let f5 = fp(5);
    let fe = |n: i64| FieldElement::from_integer(f5, n);
    let too_small = |e: WeylError| matches!(e, WeylError::CharacteristicTooSmall { .. });
    // Factorial-driven transforms.
    let seq: Vec<FieldElement> = (0..9).map(fe).collect();
    assert!(too_small(falling_to_values(&seq, 9, f5).unwrap_err()));
    assert!(too_small(values_to_falling(&seq, f5).unwrap_err()));
    // Conjugation of a high-order operator.
    let l = DiffOperator::from_terms(f5, [(7usize, 0usize, fe(1))]);
    assert!(too_small(l.conjugate_exp(&fe(1)).unwrap_err()));
    // Evaluation matrix over a tiny field.
    let wide = DiffOperator::from_terms(f5, [(0usize, 4usize, fe(1))]);
    assert!(too_small(eval_matrix(&wide, 3).unwrap_err()));
    // Fast reflection needs d + r units.
    let big = DiffOperator::from_terms(f5, [(3usize, 3usize, fe(1))]);
    assert!(too_small(big.reflect().unwrap_err()));
}

#[test]
fn block_recovery_preconditions() {
    let f = rational();
    let l = DiffOperator::parse("x*D^3 + 1", f).unwrap();
    let (d, r) = l.bidegree();
    let plan = BlockEvalPlan::new(d, r, f).unwrap();
    let k = plan.trunc_right();
    let blocks = block_eval_matrix(&l, &plan, k, k).unwrap();
    // Wrong block count.
    let other_plan = BlockEvalPlan::new(1, 8, f).unwrap();
    assert!(matches!(
        operator_from_block_eval_matrix(&blocks, &other_plan, d - 1, 2 * r - 1),
        Err(WeylError::BlockCountMismatch { .. })
    ));
    // Order bound beyond what the plan's constraints can pin down.
    assert!(matches!(
        operator_from_block_eval_matrix(
            &blocks,
            &plan,
            d - 1,
            plan.block_count() * plan.trunc_out() + 1
        ),
        Err(WeylError::PreconditionViolated(_))
    ));
}

#[test]
fn plan_needs_enough_points_in_the_field() {
    // ceil(40/1) = 40 points cannot be pairwise distinct mod 5.
    assert!(matches!(
        BlockEvalPlan::new(1, 40, fp(5)),
        Err(WeylError::CharacteristicTooSmall { .. })
    ));
}

#[test]
fn polynomial_text_rejects_operator_symbols() {
    assert!(matches!(
        Polynomial::parse("x^2 + D", rational()),
        Err(WeylError::Parse(_))
    ));
}
