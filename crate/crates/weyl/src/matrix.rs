//! Dense and block-diagonal exact matrices with Strassen multiplication.

use std::fmt;

use rayon::prelude::*;

use crate::error::{Result, WeylError};
use crate::field::{FieldDescriptor, FieldElement};

/// Strassen recursion stops at this dimension by default. Exact
/// coefficient arithmetic makes the crossover late.
pub const DEFAULT_STRASSEN_THRESHOLD: usize = 64;

/// A dense row-major matrix over an exact field.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    entries: Vec<FieldElement>,
    field: FieldDescriptor,
}

impl Matrix {
    pub fn zero(rows: usize, cols: usize, field: FieldDescriptor) -> Self {
        Matrix {
            rows,
            cols,
            entries: vec![FieldElement::zero(field); rows * cols],
            field,
        }
    }

    pub fn identity(n: usize, field: FieldDescriptor) -> Self {
        let mut m = Matrix::zero(n, n, field);
        for i in 0..n {
            *m.get_mut(i, i) = FieldElement::one(field);
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<FieldElement>>, field: FieldDescriptor) -> Result<Self> {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, |r| r.len());
        if rows.iter().any(|r| r.len() != ncols) {
            return Err(WeylError::InvalidSpec("ragged matrix rows".into()));
        }
        Ok(Matrix {
            rows: nrows,
            cols: ncols,
            entries: rows.into_iter().flatten().collect(),
            field,
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn field(&self) -> FieldDescriptor {
        self.field
    }

    pub fn get(&self, i: usize, j: usize) -> &FieldElement {
        &self.entries[i * self.cols + j]
    }

    pub fn get_mut(&mut self, i: usize, j: usize) -> &mut FieldElement {
        &mut self.entries[i * self.cols + j]
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|c| c.is_zero())
    }

    fn check_field(&self, rhs: &Self) -> Result<()> {
        if self.field == rhs.field {
            Ok(())
        } else {
            Err(WeylError::FieldMismatch {
                left: self.field,
                right: rhs.field,
            })
        }
    }

    pub fn add(&self, rhs: &Self) -> Result<Self> {
        self.check_field(rhs)?;
        if (self.rows, self.cols) != (rhs.rows, rhs.cols) {
            return Err(WeylError::ShapeMismatch {
                left: (self.rows, self.cols),
                right: (rhs.rows, rhs.cols),
            });
        }
        let entries = self
            .entries
            .iter()
            .zip(&rhs.entries)
            .map(|(a, b)| a + b)
            .collect();
        Ok(Matrix {
            rows: self.rows,
            cols: self.cols,
            entries,
            field: self.field,
        })
    }

    pub fn sub(&self, rhs: &Self) -> Result<Self> {
        self.check_field(rhs)?;
        if (self.rows, self.cols) != (rhs.rows, rhs.cols) {
            return Err(WeylError::ShapeMismatch {
                left: (self.rows, self.cols),
                right: (rhs.rows, rhs.cols),
            });
        }
        let entries = self
            .entries
            .iter()
            .zip(&rhs.entries)
            .map(|(a, b)| a - b)
            .collect();
        Ok(Matrix {
            rows: self.rows,
            cols: self.cols,
            entries,
            field: self.field,
        })
    }

    /// Copies the block with top-left corner `(r0, c0)`; out-of-range
    /// positions read as zero, so padding falls out of the same helper.
    fn block(&self, r0: usize, c0: usize, rows: usize, cols: usize) -> Matrix {
        let mut out = Matrix::zero(rows, cols, self.field);
        for i in 0..rows.min(self.rows.saturating_sub(r0)) {
            for j in 0..cols.min(self.cols.saturating_sub(c0)) {
                *out.get_mut(i, j) = self.get(r0 + i, c0 + j).clone();
            }
        }
        out
    }

    fn paste(&mut self, src: &Matrix, r0: usize, c0: usize) {
        for i in 0..src.rows.min(self.rows.saturating_sub(r0)) {
            for j in 0..src.cols.min(self.cols.saturating_sub(c0)) {
                *self.get_mut(r0 + i, c0 + j) = src.get(i, j).clone();
            }
        }
    }
}

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{}", self.get(i, j))?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

/// Exact matrix product; Strassen above [`DEFAULT_STRASSEN_THRESHOLD`].
pub fn mat_mul(a: &Matrix, b: &Matrix) -> Result<Matrix> {
    mat_mul_with_threshold(a, b, DEFAULT_STRASSEN_THRESHOLD)
}

/// Exact matrix product with an explicit Strassen cutoff (test hook).
pub fn mat_mul_with_threshold(a: &Matrix, b: &Matrix, threshold: usize) -> Result<Matrix> {
    a.check_field(b)?;
    if a.cols != b.rows {
        return Err(WeylError::ShapeMismatch {
            left: (a.rows, a.cols),
            right: (b.rows, b.cols),
        });
    }
    Ok(mul_rec(a, b, threshold.max(2)))
}

fn schoolbook(a: &Matrix, b: &Matrix) -> Matrix {
    let mut out = Matrix::zero(a.rows, b.cols, a.field);
    for i in 0..a.rows {
        for k in 0..a.cols {
            let aik = a.get(i, k);
            if aik.is_zero() {
                continue;
            }
            for j in 0..b.cols {
                let cell = out.get_mut(i, j);
                *cell = &*cell + &(aik * b.get(k, j));
            }
        }
    }
    out
}

fn mul_rec(a: &Matrix, b: &Matrix, threshold: usize) -> Matrix {
    let (m, n, q) = (a.rows, a.cols, b.cols);
    let min_dim = m.min(n).min(q);
    let max_dim = m.max(n).max(q);
    if min_dim <= threshold {
        return schoolbook(a, b);
    }
    if max_dim >= 2 * min_dim {
        // Peel the dominant dimension into squarish tiles.
        if m == max_dim {
            let half = m / 2;
            let top = mul_rec(&a.block(0, 0, half, n), b, threshold);
            let bottom = mul_rec(&a.block(half, 0, m - half, n), b, threshold);
            let mut out = Matrix::zero(m, q, a.field);
            out.paste(&top, 0, 0);
            out.paste(&bottom, half, 0);
            return out;
        }
        if q == max_dim {
            let half = q / 2;
            let left = mul_rec(a, &b.block(0, 0, n, half), threshold);
            let right = mul_rec(a, &b.block(0, half, n, q - half), threshold);
            let mut out = Matrix::zero(m, q, a.field);
            out.paste(&left, 0, 0);
            out.paste(&right, 0, half);
            return out;
        }
        let half = n / 2;
        let first = mul_rec(&a.block(0, 0, m, half), &b.block(0, 0, half, q), threshold);
        let second = mul_rec(
            &a.block(0, half, m, n - half),
            &b.block(half, 0, n - half, q),
            threshold,
        );
        return first.add(&second).expect("conformable by construction");
    }
    // Strassen step on even, zero-padded halves.
    let hm = m.div_ceil(2);
    let hn = n.div_ceil(2);
    let hq = q.div_ceil(2);
    let a11 = a.block(0, 0, hm, hn);
    let a12 = a.block(0, hn, hm, hn);
    let a21 = a.block(hm, 0, hm, hn);
    let a22 = a.block(hm, hn, hm, hn);
    let b11 = b.block(0, 0, hn, hq);
    let b12 = b.block(0, hq, hn, hq);
    let b21 = b.block(hn, 0, hn, hq);
    let b22 = b.block(hn, hq, hn, hq);
    let add = |x: &Matrix, y: &Matrix| x.add(y).expect("same shape");
    let sub = |x: &Matrix, y: &Matrix| x.sub(y).expect("same shape");
    let m1 = mul_rec(&add(&a11, &a22), &add(&b11, &b22), threshold);
    let m2 = mul_rec(&add(&a21, &a22), &b11, threshold);
    let m3 = mul_rec(&a11, &sub(&b12, &b22), threshold);
    let m4 = mul_rec(&a22, &sub(&b21, &b11), threshold);
    let m5 = mul_rec(&add(&a11, &a12), &b22, threshold);
    let m6 = mul_rec(&sub(&a21, &a11), &add(&b11, &b12), threshold);
    let m7 = mul_rec(&sub(&a12, &a22), &add(&b21, &b22), threshold);
    let c11 = add(&sub(&add(&m1, &m4), &m5), &m7);
    let c12 = add(&m3, &m5);
    let c21 = add(&m2, &m4);
    let c22 = add(&add(&sub(&m1, &m2), &m3), &m6);
    let mut out = Matrix::zero(m, q, a.field);
    out.paste(&c11, 0, 0);
    out.paste(&c12, 0, hq);
    out.paste(&c21, hm, 0);
    out.paste(&c22, hm, hq);
    out
}

/// A block-diagonal matrix; block `j` is the dense matrix attached to the
/// j-th evaluation point. Rectangular blocks are allowed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlockDiagonalMatrix {
    blocks: Vec<Matrix>,
}

impl BlockDiagonalMatrix {
    pub fn new(blocks: Vec<Matrix>) -> Self {
        BlockDiagonalMatrix { blocks }
    }

    pub fn blocks(&self) -> &[Matrix] {
        &self.blocks
    }

    pub fn len(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }
}

/// Blockwise product; blocks are independent and multiply in parallel.
pub fn block_mul(a: &BlockDiagonalMatrix, b: &BlockDiagonalMatrix) -> Result<BlockDiagonalMatrix> {
    if a.len() != b.len() {
        return Err(WeylError::BlockCountMismatch {
            left: a.len(),
            right: b.len(),
        });
    }
    let blocks = a
        .blocks
        .par_iter()
        .zip(b.blocks.par_iter())
        .map(|(x, y)| mat_mul(x, y))
        .collect::<Result<Vec<_>>>()?;
    Ok(BlockDiagonalMatrix::new(blocks))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fp(p: u64) -> FieldDescriptor {
        FieldDescriptor::prime_field(p).unwrap()
    }

    fn from_i64(rows: &[&[i64]], field: FieldDescriptor) -> Matrix {
        Matrix::from_rows(
            rows.iter()
                .map(|r| {
                    r.iter()
                        .map(|&c| FieldElement::from_integer(field, c))
                        .collect()
                })
                .collect(),
            field,
        )
        .unwrap()
    }

    fn random_matrix(state: &mut u64, rows: usize, cols: usize, field: FieldDescriptor) -> Matrix {
        let mut m = Matrix::zero(rows, cols, field);
        for i in 0..rows {
            for j in 0..cols {
                *state = state.wrapping_mul(6364136223846793005).wrapping_add(7);
                *m.get_mut(i, j) = FieldElement::from_integer(field, (*state % 1000) as i64);
            }
        }
        m
    }

    #[test]
    fn identity_is_neutral() {
        let f = FieldDescriptor::Rational;
        let a = from_i64(&[&[1, 2], &[3, 4]], f);
        assert_eq!(mat_mul(&a, &Matrix::identity(2, f)).unwrap(), a);
    }

    #[test]
    fn swap_columns() {
        let f = FieldDescriptor::Rational;
        let a = from_i64(&[&[1, 2], &[3, 4]], f);
        let swap = from_i64(&[&[0, 1], &[1, 0]], f);
        assert_eq!(
            mat_mul(&a, &swap).unwrap(),
            from_i64(&[&[2, 1], &[4, 3]], f)
        );
    }

    #[test]
    fn rectangular_matches_schoolbook() {
        let f = fp(1000003);
        let mut state = 3u64;
        let a = random_matrix(&mut state, 17, 23, f);
        let b = random_matrix(&mut state, 23, 9, f);
        assert_eq!(
            mat_mul_with_threshold(&a, &b, 2).unwrap(),
            schoolbook(&a, &b)
        );
    }

    #[test]
    fn shape_mismatch_is_reported() {
        let f = FieldDescriptor::Rational;
        let a = Matrix::zero(2, 3, f);
        let b = Matrix::zero(4, 2, f);
        assert!(matches!(
            mat_mul(&a, &b),
            Err(WeylError::ShapeMismatch { .. })
        ));
    }

    #[test]
    fn strassen_path_equals_schoolbook() {
        let f = fp(2147483647);
        let mut state = 11u64;
        for case in 0..200u64 {
            let m = (state % 80 + 1) as usize;
            state = state.wrapping_mul(6364136223846793005).wrapping_add(case);
            let n = (state % 80 + 1) as usize;
            state = state.wrapping_mul(6364136223846793005).wrapping_add(1);
            let q = (state % 80 + 1) as usize;
            let a = random_matrix(&mut state, m, n, f);
            let b = random_matrix(&mut state, n, q, f);
            assert_eq!(
                mat_mul_with_threshold(&a, &b, 4).unwrap(),
                schoolbook(&a, &b)
            );
        }
    }

    #[test]
    fn associativity_on_random_triples() {
        let f = fp(1000003);
        let mut state = 19u64;
        for _ in 0..20 {
            let a = random_matrix(&mut state, 9, 13, f);
            let b = random_matrix(&mut state, 13, 5, f);
            let c = random_matrix(&mut state, 5, 11, f);
            let left = mat_mul(&mat_mul(&a, &b).unwrap(), &c).unwrap();
            let right = mat_mul(&a, &mat_mul(&b, &c).unwrap()).unwrap();
            assert_eq!(left, right);
        }
    }

    #[test]
    fn block_product_reduces_to_per_block() {
        let f = fp(1000003);
        let mut state = 23u64;
        let a_blocks: Vec<_> = (0..3).map(|_| random_matrix(&mut state, 6, 4, f)).collect();
        let b_blocks: Vec<_> = (0..3).map(|_| random_matrix(&mut state, 4, 5, f)).collect();
        let a = BlockDiagonalMatrix::new(a_blocks.clone());
        let b = BlockDiagonalMatrix::new(b_blocks.clone());
        let c = block_mul(&a, &b).unwrap();
        for j in 0..3 {
            assert_eq!(c.blocks()[j], schoolbook(&a_blocks[j], &b_blocks[j]));
        }
        // Single block degenerates to a plain product.
        let single = block_mul(
            &BlockDiagonalMatrix::new(vec![a_blocks[0].clone()]),
            &BlockDiagonalMatrix::new(vec![b_blocks[0].clone()]),
        )
        .unwrap();
        assert_eq!(
            single.blocks()[0],
            mat_mul(&a_blocks[0], &b_blocks[0]).unwrap()
        );
        // Identity blocks pass operands through.
        let x = BlockDiagonalMatrix::new(vec![
            random_matrix(&mut state, 4, 4, f),
            random_matrix(&mut state, 4, 4, f),
        ]);
        let eye = BlockDiagonalMatrix::new(vec![Matrix::identity(4, f), Matrix::identity(4, f)]);
        assert_eq!(block_mul(&eye, &x).unwrap(), x);
        // Mismatched block counts are rejected.
        assert!(matches!(
            block_mul(&a, &BlockDiagonalMatrix::new(b_blocks[..2].to_vec())),
            Err(WeylError::BlockCountMismatch { .. })
        ));
    }
}
