//! Linear differential operators with polynomial coefficients.
//!
//! An operator is stored in canonical form: a trimmed grid of scalars
//! `L[i][j]` holding the coefficient of `x^j D^i`, with every `x` to the
//! left of every `D`. The commutation rule `Dx = xD + 1` is the only
//! rewriting primitive; `multiply_naive` applies it term by term and is
//! the correctness oracle for every fast path.

use crate::error::{Result, WeylError};
use crate::field::{FieldDescriptor, FieldElement};
use crate::poly::Polynomial;

/// A linear differential operator in canonical form.
///
/// `rows[i][j]` is the coefficient of `x^j D^i`. The grid is rectangular
/// and trimmed: the last row and the last column each contain a nonzero
/// entry unless the operator is zero (empty grid).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DiffOperator {
    rows: Vec<Vec<FieldElement>>,
    field: FieldDescriptor,
}

impl DiffOperator {
    pub fn zero(field: FieldDescriptor) -> Self {
        DiffOperator {
            rows: Vec::new(),
            field,
        }
    }

    pub fn one(field: FieldDescriptor) -> Self {
        DiffOperator::from_terms(field, [(0, 0, FieldElement::one(field))])
    }

    /// Builds an operator from `(d_exponent, x_exponent, coefficient)`
    /// terms, accumulating duplicates.
    pub fn from_terms(
        field: FieldDescriptor,
        terms: impl IntoIterator<Item = (usize, usize, FieldElement)>,
    ) -> Self {
        let mut rows: Vec<Vec<FieldElement>> = Vec::new();
        let mut width = 0usize;
        let mut entries = Vec::new();
        for (i, j, c) in terms {
            width = width.max(j + 1);
            entries.push((i, j, c));
        }
        for (i, j, c) in entries {
            while rows.len() <= i {
                rows.push(vec![FieldElement::zero(field); width]);
            }
            for row in rows.iter_mut() {
                while row.len() < width {
                    row.push(FieldElement::zero(field));
                }
            }
            rows[i][j] = &rows[i][j] + &c;
        }
        DiffOperator::from_grid(rows, field)
    }

    /// Normalizes an arbitrary grid: pads rows to a common width, then
    /// trims all-zero trailing rows and columns.
    pub fn from_grid(mut rows: Vec<Vec<FieldElement>>, field: FieldDescriptor) -> Self {
        let width = rows.iter().map(|r| r.len()).max().unwrap_or(0);
        for row in rows.iter_mut() {
            while row.len() < width {
                row.push(FieldElement::zero(field));
            }
        }
        while rows
            .last()
            .is_some_and(|row| row.iter().all(|c| c.is_zero()))
        {
            rows.pop();
        }
        let mut width = rows.first().map_or(0, |r| r.len());
        while width > 0 && rows.iter().all(|row| row[width - 1].is_zero()) {
            width -= 1;
        }
        for row in rows.iter_mut() {
            row.truncate(width);
        }
        if width == 0 {
            rows.clear();
        }
        DiffOperator { rows, field }
    }

    pub fn field(&self) -> FieldDescriptor {
        self.field
    }

    pub fn is_zero(&self) -> bool {
        self.rows.is_empty()
    }

    /// `(d, r)`: strict bounds on the x-degree and order. The zero
    /// operator has bidegree `(0, 0)`; scalars have `(1, 1)`.
    pub fn bidegree(&self) -> (usize, usize) {
        let r = self.rows.len();
        let d = self.rows.first().map_or(0, |row| row.len());
        (d, r)
    }

    pub fn coeff(&self, i: usize, j: usize) -> FieldElement {
        self.rows
            .get(i)
            .and_then(|row| row.get(j))
            .cloned()
            .unwrap_or_else(|| FieldElement::zero(self.field))
    }

    pub fn grid(&self) -> &[Vec<FieldElement>] {
        &self.rows
    }

    /// Coefficient of `D^i` as a polynomial in `x`.
    pub fn row_poly(&self, i: usize) -> Polynomial {
        match self.rows.get(i) {
            Some(row) => Polynomial::new(row.clone(), self.field),
            None => Polynomial::zero(self.field),
        }
    }

    /// Coefficient of `x^j` as a polynomial in `D`.
    pub fn col_poly(&self, j: usize) -> Polynomial {
        Polynomial::new(
            self.rows
                .iter()
                .map(|row| {
                    row.get(j)
                        .cloned()
                        .unwrap_or_else(|| FieldElement::zero(self.field))
                })
                .collect(),
            self.field,
        )
    }

    pub(crate) fn check_field(&self, other: FieldDescriptor) -> Result<()> {
        if self.field == other {
            Ok(())
        } else {
            Err(WeylError::FieldMismatch {
                left: self.field,
                right: other,
            })
        }
    }

    pub fn add(&self, rhs: &Self) -> Result<Self> {
        self.check_field(rhs.field)?;
        let (d1, r1) = self.bidegree();
        let (d2, r2) = rhs.bidegree();
        let mut rows = vec![vec![FieldElement::zero(self.field); d1.max(d2)]; r1.max(r2)];
        for (i, row) in self.rows.iter().enumerate() {
            for (j, c) in row.iter().enumerate() {
                rows[i][j] = &rows[i][j] + c;
            }
        }
        for (i, row) in rhs.rows.iter().enumerate() {
            for (j, c) in row.iter().enumerate() {
                rows[i][j] = &rows[i][j] + c;
            }
        }
        Ok(DiffOperator::from_grid(rows, self.field))
    }

    pub fn scale(&self, s: &FieldElement) -> Self {
        if s.is_zero() {
            return DiffOperator::zero(self.field);
        }
        DiffOperator {
            rows: self
                .rows
                .iter()
                .map(|row| row.iter().map(|c| c * s).collect())
                .collect(),
            field: self.field,
        }
    }

    /// Applies the operator to a polynomial:
    /// `sum_{i,j} L[i][j] x^j P^(i)(x)`.
    pub fn apply(&self, p: &Polynomial) -> Result<Polynomial> {
        self.check_field(p.field())?;
        let mut out = Polynomial::zero(self.field);
        let mut deriv = p.clone();
        for i in 0..self.rows.len() {
            let row = self.row_poly(i);
            if !row.is_zero() && !deriv.is_zero() {
                out = out.add(&row.mul(&deriv)?)?;
            }
            deriv = deriv.derivative();
        }
        Ok(out)
    }

    /// Canonical form of the composition `self . rhs`, rewriting each
    /// `D^i x^j` with the commutation rule. Works in any characteristic.
    pub fn multiply_naive(&self, rhs: &Self) -> Result<Self> {
        self.check_field(rhs.field)?;
        if self.is_zero() || rhs.is_zero() {
            return Ok(DiffOperator::zero(self.field));
        }
        let (d1, r1) = self.bidegree();
        let (d2, r2) = rhs.bidegree();
        let table = CommutationTable::new(r1 - 1, d2 - 1, self.field);
        let mut rows = vec![vec![FieldElement::zero(self.field); d1 + d2 - 1]; r1 + r2 - 1];
        for (i1, lrow) in self.rows.iter().enumerate() {
            for (j1, c1) in lrow.iter().enumerate() {
                if c1.is_zero() {
                    continue;
                }
                for (i2, rrow) in rhs.rows.iter().enumerate() {
                    for (j2, c2) in rrow.iter().enumerate() {
                        if c2.is_zero() {
                            continue;
                        }
                        let base = c1 * c2;
                        for (k, ck) in table.expansion(i1, j2).iter().enumerate() {
                            let cell = &mut rows[i1 + i2 - k][j1 + j2 - k];
                            *cell = &*cell + &(&base * ck);
                        }
                    }
                }
            }
        }
        Ok(DiffOperator::from_grid(rows, self.field))
    }

    /// Keeps exactly the terms with D-exponent below `n`.
    pub fn truncate_order(&self, n: usize) -> Self {
        if self.rows.len() <= n {
            return self.clone();
        }
        DiffOperator::from_grid(self.rows[..n].to_vec(), self.field)
    }

    /// Substitutes `D + a` for `D`, returning the canonical form of the
    /// conjugate by `e^(a x)`. Reference path: one Taylor shift per
    /// x-power; the fast pipeline batches these through Hermite
    /// evaluation instead.
    pub fn conjugate_exp(&self, a: &FieldElement) -> Result<Self> {
        self.check_field(a.descriptor())?;
        if a.is_zero() || self.is_zero() {
            return Ok(self.clone());
        }
        let (d, r) = self.bidegree();
        self.field.characteristic_guard(r as u64)?;
        let mut rows = vec![vec![FieldElement::zero(self.field); d]; r];
        for j in 0..d {
            let shifted = self.col_poly(j).taylor_shift(a)?;
            for (i, c) in shifted.coeffs().iter().enumerate() {
                rows[i][j] = c.clone();
            }
        }
        Ok(DiffOperator::from_grid(rows, self.field))
    }

    /// Flips the sign of entry `(i, j)` by `(-1)^(i+j)`; the involution
    /// that negates both `x` and `D` simultaneously.
    pub fn sign_involution(&self) -> Self {
        let rows = self
            .rows
            .iter()
            .enumerate()
            .map(|(i, row)| {
                row.iter()
                    .enumerate()
                    .map(|(j, c)| {
                        if (i + j) % 2 == 1 {
                            c.negated()
                        } else {
                            c.clone()
                        }
                    })
                    .collect()
            })
            .collect();
        DiffOperator {
            rows,
            field: self.field,
        }
    }
}

/// Expansions of `D^i x^j` in canonical form, built by iterating the
/// commutation rule one `D` at a time:
/// `D^i x^j = sum_k c_k(i,j) x^(j-k) D^(i-k)`.
pub(crate) struct CommutationTable {
    coeffs: Vec<Vec<Vec<FieldElement>>>,
}

impl CommutationTable {
    pub fn new(max_d_exp: usize, max_x_exp: usize, field: FieldDescriptor) -> Self {
        let one = FieldElement::one(field);
        let mut coeffs: Vec<Vec<Vec<FieldElement>>> = Vec::with_capacity(max_d_exp + 1);
        coeffs.push((0..=max_x_exp).map(|_| vec![one.clone()]).collect());
        for i in 1..=max_d_exp {
            let mut level = Vec::with_capacity(max_x_exp + 1);
            for j in 0..=max_x_exp {
                let prev = &coeffs[i - 1][j];
                let len = i.min(j) + 1;
                let mut c = Vec::with_capacity(len);
                c.push(one.clone());
                for k in 1..len {
                    // c_k(i,j) = c_k(i-1,j) + (j-k+1) * c_{k-1}(i-1,j)
                    let carried = prev
                        .get(k)
                        .cloned()
                        .unwrap_or_else(|| FieldElement::zero(field));
                    let step =
                        &prev[k - 1] * &FieldElement::from_integer(field, (j - k + 1) as i64);
                    c.push(&carried + &step);
                }
                level.push(c);
            }
            coeffs.push(level);
        }
        CommutationTable { coeffs }
    }

    pub fn expansion(&self, d_exp: usize, x_exp: usize) -> &[FieldElement] {
        &self.coeffs[d_exp][x_exp]
    }
}
