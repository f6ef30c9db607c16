//! Evaluation matrices of operators on monomial bases, their block
//! versions at exponential-polynomial bases, and both inverses.
//!
//! Column `m` of an evaluation matrix holds the coefficient vector of
//! `L(x^m)`. Along the diagonal with row-column offset `t` the entries
//! are the values of one falling-factorial series at `m = 0, 1, 2, ...`,
//! so a single convolution per diagonal computes or inverts the whole
//! matrix.

use rayon::prelude::*;

use crate::error::{Result, WeylError};
use crate::field::{Factorials, FieldDescriptor, FieldElement};
use crate::hermite::{HermitePlan, HermiteSpec, HermiteValues};
use crate::matrix::{BlockDiagonalMatrix, Matrix};
use crate::op::DiffOperator;
use crate::poly::{falling_to_values, values_to_falling};

/// The matrix of an operator from polynomials of degree `< k` into
/// polynomials of degree `< k + dx`, where `dx` bounds the x-degree the
/// operator may attain (inclusive).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EvalMatrix {
    mat: Matrix,
    k: usize,
    dx: usize,
}

impl EvalMatrix {
    pub fn new(mat: Matrix, k: usize, dx: usize) -> Result<Self> {
        if mat.rows() != k + dx || mat.cols() != k {
            return Err(WeylError::ShapeMismatch {
                left: (mat.rows(), mat.cols()),
                right: (k + dx, k),
            });
        }
        Ok(EvalMatrix { mat, k, dx })
    }

    pub fn matrix(&self) -> &Matrix {
        &self.mat
    }

    pub fn columns(&self) -> usize {
        self.k
    }

    /// Inclusive x-degree headroom above the column count.
    pub fn degree_bound(&self) -> usize {
        self.dx
    }
}

/// Evaluation matrix of `op` on `x^0..x^(k-1)`, sized to the operator's
/// own x-degree.
pub fn eval_matrix(op: &DiffOperator, k: usize) -> Result<EvalMatrix> {
    let (d, _) = op.bidegree();
    eval_matrix_padded(op, k, d.saturating_sub(1))
}

/// Evaluation matrix padded to `k + dx` rows; `dx` must cover the
/// operator's x-degree.
pub fn eval_matrix_padded(op: &DiffOperator, k: usize, dx: usize) -> Result<EvalMatrix> {
    let field = op.field();
    let (d, r) = op.bidegree();
    if k == 0 {
        return Err(WeylError::PreconditionViolated("k must be positive".into()));
    }
    if d > dx + 1 {
        return Err(WeylError::PreconditionViolated(format!(
            "operator x-degree {} exceeds padding bound {dx}",
            d - 1
        )));
    }
    field.characteristic_guard((k + dx) as u64)?;
    let mut mat = Matrix::zero(k + dx, k, field);
    if op.is_zero() {
        return EvalMatrix::new(mat, k, dx);
    }
    // Diagonal t collects the falling-factorial series with coefficient
    // vector (op[i][t+i])_i.
    for t in (1 - r as isize)..=(d as isize - 1) {
        let i_lo = 0.max(-t) as usize;
        let i_hi = (r as isize - 1).min(d as isize - 1 - t);
        if i_hi < i_lo as isize {
            continue;
        }
        let mut series = vec![FieldElement::zero(field); i_hi as usize + 1];
        for i in i_lo..=i_hi as usize {
            series[i] = op.coeff(i, (t + i as isize) as usize);
        }
        if series.iter().all(|c| c.is_zero()) {
            continue;
        }
        let vals = falling_to_values(&series, k, field)?;
        for (m, v) in vals.into_iter().enumerate().skip(0.max(-t) as usize) {
            let row = (m as isize + t) as usize;
            *mat.get_mut(row, m) = v;
        }
    }
    EvalMatrix::new(mat, k, dx)
}

/// Recovers the unique operator with x-degree `<= max_x_degree` and order
/// `< order_bound` whose evaluation matrix is `em`. Every diagonal is
/// inverted through the falling-factorial transform; any value landing
/// outside the stated bounds is an inconsistency.
pub fn operator_from_eval_matrix(
    em: &EvalMatrix,
    max_x_degree: usize,
    order_bound: usize,
) -> Result<DiffOperator> {
    let field = em.matrix().field();
    let k = em.columns();
    if k < order_bound {
        return Err(WeylError::PreconditionViolated(format!(
            "need at least {order_bound} columns to pin the order, got {k}"
        )));
    }
    field.characteristic_guard((k + em.degree_bound()) as u64)?;
    let mut rows = vec![vec![FieldElement::zero(field); max_x_degree + 1]; order_bound];
    for t in (1 - k as isize)..=(em.degree_bound() as isize) {
        let mut vals = Vec::with_capacity(k);
        for m in 0..k {
            let row = m as isize + t;
            if row < 0 {
                vals.push(FieldElement::zero(field));
            } else {
                vals.push(em.matrix().get(row as usize, m).clone());
            }
        }
        if vals.iter().all(|c| c.is_zero()) {
            continue;
        }
        let series = values_to_falling(&vals, field)?;
        for (i, c) in series.into_iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let j = t + i as isize;
            if i >= order_bound || j < 0 || j > max_x_degree as isize {
                return Err(WeylError::InconsistentMatrix(format!(
                    "diagonal {t} produced a term x^{j} D^{i} outside bidegree ({}, {order_bound})",
                    max_x_degree + 1
                )));
            }
            rows[i][j as usize] = c;
        }
    }
    Ok(DiffOperator::from_grid(rows, field))
}

/// Evaluation points, truncation orders, and block granularity for one
/// fast multiplication at bidegree bound `(d, r)`.
#[derive(Debug, Clone)]
pub struct BlockEvalPlan {
    points: Vec<FieldElement>,
    dhat: usize,
    trunc_left: usize,
    trunc_right: usize,
    trunc_out: usize,
    field: FieldDescriptor,
}

impl BlockEvalPlan {
    /// Plan for inputs of bidegree at most `(d, r)`: block granularity
    /// `dhat = max(d, 1)`, `ceil(r / dhat)` integer points `0, 1, ...`,
    /// truncation orders `3*dhat` (left factor), `2*dhat` (right factor
    /// and output).
    pub fn new(d: usize, r: usize, field: FieldDescriptor) -> Result<Self> {
        let dhat = d.max(1);
        let p = r.div_ceil(dhat).max(1);
        if let FieldDescriptor::PrimeField(q) = field {
            if p as u64 >= q {
                return Err(WeylError::CharacteristicTooSmall {
                    modulus: q,
                    required: p as u64,
                });
            }
        }
        let points = (0..p)
            .map(|j| FieldElement::from_integer(field, j as i64))
            .collect();
        let plan = BlockEvalPlan {
            points,
            dhat,
            trunc_left: 3 * dhat,
            trunc_right: 2 * dhat,
            trunc_out: 2 * dhat,
            field,
        };
        debug_assert!(p * plan.trunc_out >= 2 * r.max(1) - 1);
        Ok(plan)
    }

    pub fn points(&self) -> &[FieldElement] {
        &self.points
    }

    pub fn block_count(&self) -> usize {
        self.points.len()
    }

    pub fn dhat(&self) -> usize {
        self.dhat
    }

    pub fn trunc_left(&self) -> usize {
        self.trunc_left
    }

    pub fn trunc_right(&self) -> usize {
        self.trunc_right
    }

    pub fn trunc_out(&self) -> usize {
        self.trunc_out
    }

    pub fn field(&self) -> FieldDescriptor {
        self.field
    }
}

/// Order-`trunc` truncations of the conjugates of `op` at every plan
/// point, produced by one Hermite evaluation per x-power.
pub fn truncated_conjugates(
    op: &DiffOperator,
    plan: &BlockEvalPlan,
    trunc: usize,
) -> Result<Vec<DiffOperator>> {
    let field = op.field();
    op.check_field(plan.field)?;
    field.characteristic_guard(trunc as u64)?;
    let p = plan.block_count();
    let (d, _) = op.bidegree();
    if op.is_zero() {
        return Ok(vec![DiffOperator::zero(field); p]);
    }
    let spec = HermiteSpec::uniform(plan.points.clone(), trunc)?;
    let hermite = HermitePlan::new(spec)?;
    let facts = Factorials::new(trunc.saturating_sub(1), field)?;
    let mut grids = vec![vec![vec![FieldElement::zero(field); d]; trunc]; p];
    for j in 0..d {
        let values = hermite.evaluate(&op.col_poly(j))?;
        for (point_idx, block) in values.blocks().iter().enumerate() {
            for (c, v) in block.iter().enumerate() {
                // Taylor coefficient of the conjugate at this point.
                grids[point_idx][c][j] = v * facts.inv_fact(c);
            }
        }
    }
    Ok(grids
        .into_iter()
        .map(|g| DiffOperator::from_grid(g, field))
        .collect())
}

/// Block-diagonal evaluation matrix of `op` at the plan points: block `j`
/// is the evaluation matrix of the truncated conjugate at point `j`,
/// padded to `(k + dhat) x k`.
pub fn block_eval_matrix(
    op: &DiffOperator,
    plan: &BlockEvalPlan,
    k: usize,
    trunc: usize,
) -> Result<BlockDiagonalMatrix> {
    let conjugates = truncated_conjugates(op, plan, trunc)?;
    let blocks = conjugates
        .par_iter()
        .map(|c| Ok(eval_matrix_padded(c, k, plan.dhat)?.matrix().clone()))
        .collect::<Result<Vec<_>>>()?;
    Ok(BlockDiagonalMatrix::new(blocks))
}

/// Recovers an operator with x-degree `<= max_x_degree` and order
/// `< order_bound` from its block-diagonal evaluation matrix: each block
/// yields a truncated conjugate, then one Hermite interpolation per
/// x-power stitches the D-coefficient polynomials back together. Excess
/// interpolated coefficients must vanish.
pub fn operator_from_block_eval_matrix(
    blocks: &BlockDiagonalMatrix,
    plan: &BlockEvalPlan,
    max_x_degree: usize,
    order_bound: usize,
) -> Result<DiffOperator> {
    let field = plan.field;
    let p = plan.block_count();
    if blocks.len() != p {
        return Err(WeylError::BlockCountMismatch {
            left: blocks.len(),
            right: p,
        });
    }
    if p * plan.trunc_out < order_bound {
        return Err(WeylError::PreconditionViolated(format!(
            "plan carries {} derivative constraints, below the order bound {order_bound}",
            p * plan.trunc_out
        )));
    }
    let conjugates = blocks
        .blocks()
        .par_iter()
        .map(|b| {
            let k = b.cols();
            let em = EvalMatrix::new(b.clone(), k, b.rows() - k)?;
            operator_from_eval_matrix(&em, max_x_degree, plan.trunc_out)
        })
        .collect::<Result<Vec<_>>>()?;
    let spec = HermiteSpec::uniform(plan.points.clone(), plan.trunc_out)?;
    let hermite = HermitePlan::new(spec)?;
    let facts = Factorials::new(plan.trunc_out.saturating_sub(1), field)?;
    let mut rows = vec![vec![FieldElement::zero(field); max_x_degree + 1]; order_bound];
    for w in 0..=max_x_degree {
        let value_blocks: Vec<Vec<FieldElement>> = conjugates
            .iter()
            .map(|conj| {
                (0..plan.trunc_out)
                    .map(|c| &conj.coeff(c, w) * facts.fact(c))
                    .collect()
            })
            .collect();
        let coeff_poly = hermite.interpolate(&HermiteValues::new(value_blocks))?;
        for (i, c) in coeff_poly.coeffs().iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if i >= order_bound {
                return Err(WeylError::InconsistentMatrix(format!(
                    "x^{w} coefficient polynomial has a D^{i} term beyond order {order_bound}"
                )));
            }
            rows[i][w] = c.clone();
        }
    }
    Ok(DiffOperator::from_grid(rows, field))
}
