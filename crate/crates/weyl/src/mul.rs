//! Operator multiplication: the evaluation--interpolation pipeline for
//! order-dominant inputs, its reflected twin for degree-dominant inputs,
//! and the dispatcher that picks between them and the naive rewrite.

use crate::error::{Result, WeylError};
use crate::evalmat::{block_eval_matrix, operator_from_block_eval_matrix, BlockEvalPlan};
use crate::matrix::block_mul;
use crate::op::DiffOperator;

/// Dispatch thresholds for [`DiffOperator::multiply_with`].
#[derive(Debug, Clone)]
pub struct MulOptions {
    /// Use the naive rewrite when `min(d, r)` is at most this.
    pub naive_min: usize,
    /// Use the naive rewrite when `d * r` is at most this.
    pub naive_product: usize,
    /// When a fast path fails its characteristic guard, fall back to the
    /// naive rewrite for inputs with `d * r` up to this; larger inputs
    /// propagate the error.
    pub guard_fallback_product: usize,
}

impl Default for MulOptions {
    fn default() -> Self {
        MulOptions {
            naive_min: 4,
            naive_product: 256,
            guard_fallback_product: 1024,
        }
    }
}

fn joint_bidegree(a: &DiffOperator, b: &DiffOperator) -> (usize, usize) {
    let (d1, r1) = a.bidegree();
    let (d2, r2) = b.bidegree();
    (d1.max(d2), r1.max(r2))
}

impl DiffOperator {
    /// Fast product for inputs whose joint bidegree `(d, r)` has
    /// `r >= d >= 1`: evaluate both factors on blocks of exponential
    /// polynomials, multiply the blocks, interpolate the product back.
    pub fn multiply_tall(&self, rhs: &Self) -> Result<Self> {
        self.check_field(rhs.field())?;
        if self.is_zero() || rhs.is_zero() {
            return Ok(DiffOperator::zero(self.field()));
        }
        let (d, r) = joint_bidegree(self, rhs);
        if r < d {
            return Err(WeylError::PreconditionViolated(format!(
                "order-dominant path needs r >= d, got ({d}, {r})"
            )));
        }
        self.field().characteristic_guard(8 * d.max(r) as u64)?;
        let plan = BlockEvalPlan::new(d, r, self.field())?;
        let dhat = plan.dhat();
        let left = block_eval_matrix(self, &plan, plan.trunc_left(), plan.trunc_left())?;
        let right = block_eval_matrix(rhs, &plan, plan.trunc_right(), plan.trunc_right())?;
        let product = block_mul(&left, &right)?;
        debug_assert!(product
            .blocks()
            .iter()
            .all(|b| b.rows() == 4 * dhat && b.cols() == 2 * dhat));
        operator_from_block_eval_matrix(&product, &plan, 2 * d - 2, 2 * r - 1)
    }

    /// Fast product for inputs whose joint bidegree `(d, r)` has
    /// `d >= r >= 1`: reflect both factors into the order-dominant range,
    /// multiply there, reflect the product back.
    pub fn multiply_wide(&self, rhs: &Self) -> Result<Self> {
        self.check_field(rhs.field())?;
        if self.is_zero() || rhs.is_zero() {
            return Ok(DiffOperator::zero(self.field()));
        }
        let (d, r) = joint_bidegree(self, rhs);
        if d < r {
            return Err(WeylError::PreconditionViolated(format!(
                "degree-dominant path needs d >= r, got ({d}, {r})"
            )));
        }
        self.field().characteristic_guard(8 * d.max(r) as u64)?;
        let mirrored = self.reflect()?.multiply_tall(&rhs.reflect()?)?;
        mirrored.reflect_inverse()
    }

    /// Product with default dispatch thresholds.
    pub fn multiply(&self, rhs: &Self) -> Result<Self> {
        self.multiply_with(rhs, &MulOptions::default())
    }

    /// Product with explicit dispatch thresholds: small inputs go through
    /// the naive rewrite, the rest through whichever fast path matches
    /// the bidegree shape.
    pub fn multiply_with(&self, rhs: &Self, options: &MulOptions) -> Result<Self> {
        self.check_field(rhs.field())?;
        if self.is_zero() || rhs.is_zero() {
            return Ok(DiffOperator::zero(self.field()));
        }
        let (d, r) = joint_bidegree(self, rhs);
        if d.min(r) <= options.naive_min || d * r <= options.naive_product {
            return self.multiply_naive(rhs);
        }
        if let Err(e) = self.field().characteristic_guard(8 * d.max(r) as u64) {
            if d * r <= options.guard_fallback_product {
                return self.multiply_naive(rhs);
            }
            return Err(e);
        }
        if r >= d {
            self.multiply_tall(rhs)
        } else {
            self.multiply_wide(rhs)
        }
    }
}
