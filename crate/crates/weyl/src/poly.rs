//! Dense univariate polynomials over an exact field.
//!
//! Multiplication picks a kernel by size and field: schoolbook below 32
//! coefficients, a number-theoretic transform for prime fields whose
//! modulus has enough 2-adic headroom, Karatsuba otherwise. Division
//! switches from long division to Newton iteration on the reversed
//! divisor once the sizes pay for it.

use std::fmt;

use crate::error::{Result, WeylError};
use crate::field::{Factorials, FieldDescriptor, FieldElement};
use crate::ntt;
use crate::text;

/// Kernel sizes below this use schoolbook multiplication.
const SCHOOLBOOK_THRESHOLD: usize = 32;
/// Minimum divisor and quotient lengths before Newton division pays off.
const NEWTON_DIV_THRESHOLD: usize = 48;

/// Multiplication kernel selector; `Auto` is the production path.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MulKernel {
    Auto,
    Schoolbook,
    Karatsuba,
    /// Number-theoretic transform; prime fields with transform-friendly
    /// moduli only.
    Ntt,
}

/// A dense polynomial; index `i` holds the coefficient of `x^i`.
///
/// The highest-index coefficient is nonzero unless the polynomial is zero
/// (empty coefficient vector). The degree of the zero polynomial is
/// reported as `None`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Polynomial {
    coeffs: Vec<FieldElement>,
    field: FieldDescriptor,
}

impl Polynomial {
    pub fn new(mut coeffs: Vec<FieldElement>, field: FieldDescriptor) -> Self {
        debug_assert!(coeffs.iter().all(|c| c.descriptor() == field));
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Polynomial { coeffs, field }
    }

    pub fn zero(field: FieldDescriptor) -> Self {
        Polynomial {
            coeffs: Vec::new(),
            field,
        }
    }

    pub fn one(field: FieldDescriptor) -> Self {
        Polynomial::constant(FieldElement::one(field))
    }

    pub fn constant(c: FieldElement) -> Self {
        let field = c.descriptor();
        Polynomial::new(vec![c], field)
    }

    /// `c * x^k`.
    pub fn monomial(c: FieldElement, k: usize) -> Self {
        let field = c.descriptor();
        if c.is_zero() {
            return Polynomial::zero(field);
        }
        let mut coeffs = vec![FieldElement::zero(field); k + 1];
        coeffs[k] = c;
        Polynomial { coeffs, field }
    }

    pub fn field(&self) -> FieldDescriptor {
        self.field
    }

    pub fn coeffs(&self) -> &[FieldElement] {
        &self.coeffs
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, with `None` standing for the degree of the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Coefficient of `x^i`, zero beyond the stored length.
    pub fn coeff(&self, i: usize) -> FieldElement {
        self.coeffs
            .get(i)
            .cloned()
            .unwrap_or_else(|| FieldElement::zero(self.field))
    }

    pub fn leading(&self) -> Option<&FieldElement> {
        self.coeffs.last()
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
        let (longer, shorter) = if self.len() >= rhs.len() {
            (self, rhs)
        } else {
            (rhs, self)
        };
        let mut coeffs = longer.coeffs.clone();
        for (i, c) in shorter.coeffs.iter().enumerate() {
            coeffs[i] = &coeffs[i] + c;
        }
        Ok(Polynomial::new(coeffs, self.field))
    }

    pub fn sub(&self, rhs: &Self) -> Result<Self> {
        self.add(&rhs.negated())
    }

    pub fn negated(&self) -> Self {
        Polynomial {
            coeffs: self.coeffs.iter().map(|c| c.negated()).collect(),
            field: self.field,
        }
    }

    /// Scalar multiple; the scalar must come from the same field.
    pub fn scale(&self, s: &FieldElement) -> Self {
        if s.is_zero() {
            return Polynomial::zero(self.field);
        }
        Polynomial::new(self.coeffs.iter().map(|c| c * s).collect(), self.field)
    }

    /// `self * x^k`.
    pub fn shift_up(&self, k: usize) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let mut coeffs = vec![FieldElement::zero(self.field); k];
        coeffs.extend(self.coeffs.iter().cloned());
        Polynomial {
            coeffs,
            field: self.field,
        }
    }

    /// Coefficients up to (excluding) `x^n`.
    pub fn truncated(&self, n: usize) -> Self {
        Polynomial::new(self.coeffs.iter().take(n).cloned().collect(), self.field)
    }

    pub fn mul(&self, rhs: &Self) -> Result<Self> {
        self.mul_with_kernel(rhs, MulKernel::Auto)
    }

    pub fn mul_with_kernel(&self, rhs: &Self, kernel: MulKernel) -> Result<Self> {
        self.check_field(rhs)?;
        if self.is_zero() || rhs.is_zero() {
            return Ok(Polynomial::zero(self.field));
        }
        let coeffs = match kernel {
            MulKernel::Schoolbook => schoolbook(&self.coeffs, &rhs.coeffs, self.field),
            MulKernel::Karatsuba => karatsuba(&self.coeffs, &rhs.coeffs, self.field),
            MulKernel::Ntt => ntt_mul(&self.coeffs, &rhs.coeffs, self.field).ok_or_else(|| {
                WeylError::PreconditionViolated(format!(
                    "{} lacks roots of unity for a length-{} transform",
                    self.field,
                    self.len() + rhs.len() - 1
                ))
            })?,
            MulKernel::Auto => {
                if self.len().min(rhs.len()) < SCHOOLBOOK_THRESHOLD {
                    schoolbook(&self.coeffs, &rhs.coeffs, self.field)
                } else if let Some(out) = ntt_mul(&self.coeffs, &rhs.coeffs, self.field) {
                    out
                } else {
                    karatsuba(&self.coeffs, &rhs.coeffs, self.field)
                }
            }
        };
        Ok(Polynomial::new(coeffs, self.field))
    }

    /// Quotient and remainder with `self = q * rhs + r`, `deg r < deg rhs`.
    pub fn divrem(&self, rhs: &Self) -> Result<(Self, Self)> {
        self.check_field(rhs)?;
        if rhs.is_zero() {
            return Err(WeylError::DivisionByZero);
        }
        let dq = rhs.len() - 1;
        if self.len() <= dq {
            return Ok((Polynomial::zero(self.field), self.clone()));
        }
        let quot_len = self.len() - dq;
        if dq >= NEWTON_DIV_THRESHOLD && quot_len >= NEWTON_DIV_THRESHOLD {
            self.divrem_newton(rhs)
        } else {
            self.divrem_classical(rhs)
        }
    }

    fn divrem_classical(&self, rhs: &Self) -> Result<(Self, Self)> {
        let lead_inv = rhs.leading().unwrap().inv()?;
        let dq = rhs.len() - 1;
        let mut rem = self.coeffs.clone();
        let mut quot = vec![FieldElement::zero(self.field); self.len() - dq];
        for i in (0..quot.len()).rev() {
            let factor = &rem[i + dq] * &lead_inv;
            if factor.is_zero() {
                continue;
            }
            for (k, qc) in rhs.coeffs.iter().enumerate() {
                rem[i + k] = &rem[i + k] - &(qc * &factor);
            }
            quot[i] = factor;
        }
        rem.truncate(dq);
        Ok((
            Polynomial::new(quot, self.field),
            Polynomial::new(rem, self.field),
        ))
    }

    fn divrem_newton(&self, rhs: &Self) -> Result<(Self, Self)> {
        let dq = rhs.len() - 1;
        let quot_len = self.len() - dq;
        let rev_rhs = rhs.reversed();
        let inv = rev_rhs.series_inverse(quot_len)?;
        let rev_quot = self
            .reversed()
            .truncated(quot_len)
            .mul(&inv)?
            .truncated(quot_len);
        // Undo the reversal at the quotient's full length (low-order zeros
        // of rev_quot are genuine high-order quotient coefficients).
        let mut qc = vec![FieldElement::zero(self.field); quot_len];
        for (i, c) in rev_quot.coeffs.iter().enumerate() {
            qc[quot_len - 1 - i] = c.clone();
        }
        let quot = Polynomial::new(qc, self.field);
        let rem = self.sub(&quot.mul(rhs)?.truncated(dq))?.truncated(dq);
        Ok((quot, rem))
    }

    fn reversed(&self) -> Self {
        let mut coeffs = self.coeffs.clone();
        coeffs.reverse();
        Polynomial::new(coeffs, self.field)
    }

    /// Power-series inverse mod `x^n`; the constant term must be a unit.
    pub fn series_inverse(&self, n: usize) -> Result<Self> {
        let c0 = self.coeff(0);
        let mut g = Polynomial::constant(c0.inv()?);
        if n <= 1 {
            return Ok(g.truncated(n));
        }
        let two = Polynomial::constant(FieldElement::from_integer(self.field, 2));
        let mut prec = 1usize;
        while prec < n {
            prec = (prec * 2).min(n.next_power_of_two());
            let fg = self.truncated(prec).mul(&g)?.truncated(prec);
            g = g.mul(&two.sub(&fg)?)?.truncated(prec);
        }
        Ok(g.truncated(n))
    }

    /// Returns `P(x + a)` via a single length-`deg P + 1` convolution of
    /// factorial-scaled coefficients against the powers `a^t / t!`.
    pub fn taylor_shift(&self, a: &FieldElement) -> Result<Self> {
        if a.is_zero() || self.len() <= 1 {
            return Ok(self.clone());
        }
        let n = self.len();
        let facts = Factorials::new(n - 1, self.field)?;
        // u reversed against v, so that entry n-1-j of the product
        // collects sum_i i! p_i * a^(i-j)/(i-j)!.
        let mut u: Vec<FieldElement> = (0..n).map(|i| &self.coeffs[i] * facts.fact(i)).collect();
        u.reverse();
        let mut v = Vec::with_capacity(n);
        let mut a_pow = FieldElement::one(self.field);
        for t in 0..n {
            v.push(&a_pow * facts.inv_fact(t));
            a_pow = &a_pow * a;
        }
        let w = Polynomial::new(u, self.field).mul(&Polynomial::new(v, self.field))?;
        let coeffs = (0..n)
            .map(|j| &w.coeff(n - 1 - j) * facts.inv_fact(j))
            .collect();
        Ok(Polynomial::new(coeffs, self.field))
    }

    pub fn derivative(&self) -> Self {
        if self.len() <= 1 {
            return Polynomial::zero(self.field);
        }
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| c * &FieldElement::from_integer(self.field, i as i64))
            .collect();
        Polynomial::new(coeffs, self.field)
    }

    /// Horner evaluation.
    pub fn eval(&self, x: &FieldElement) -> FieldElement {
        let mut acc = FieldElement::zero(self.field);
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * x) + c;
        }
        acc
    }

    /// Parses the textual polynomial form, e.g. `3*x^2 - 1/2*x + 4`.
    pub fn parse(s: &str, field: FieldDescriptor) -> Result<Self> {
        let mut out = Polynomial::zero(field);
        for (negate, term) in text::split_terms(s)? {
            let parsed = text::parse_term(term)?;
            if parsed.d_exp != 0 {
                return Err(WeylError::Parse(format!(
                    "unexpected operator symbol in polynomial term {term:?}"
                )));
            }
            let mut c = match parsed.coeff {
                Some(cs) => FieldElement::parse(cs, field)?,
                None => FieldElement::one(field),
            };
            if negate {
                c = c.negated();
            }
            out = out.add(&Polynomial::monomial(c, parsed.x_exp))?;
        }
        Ok(out)
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for k in (0..self.len()).rev() {
            let c = &self.coeffs[k];
            if c.is_zero() {
                continue;
            }
            let (neg, mag) = text::sign_split(c);
            if first {
                if neg {
                    write!(f, "-")?;
                }
                first = false;
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            if k == 0 {
                write!(f, "{mag}")?;
            } else {
                if !mag.is_one() {
                    write!(f, "{mag}*")?;
                }
                if k == 1 {
                    write!(f, "x")?;
                } else {
                    write!(f, "x^{k}")?;
                }
            }
        }
        Ok(())
    }
}

fn schoolbook(a: &[FieldElement], b: &[FieldElement], field: FieldDescriptor) -> Vec<FieldElement> {
    let mut out = vec![FieldElement::zero(field); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] = &out[i + j] + &(x * y);
        }
    }
    out
}

fn add_into(acc: &mut [FieldElement], src: &[FieldElement], offset: usize) {
    for (i, c) in src.iter().enumerate() {
        acc[offset + i] = &acc[offset + i] + c;
    }
}

fn add_slices(a: &[FieldElement], b: &[FieldElement]) -> Vec<FieldElement> {
    let (longer, shorter) = if a.len() >= b.len() { (a, b) } else { (b, a) };
    let mut out = longer.to_vec();
    for (i, c) in shorter.iter().enumerate() {
        out[i] = &out[i] + c;
    }
    out
}

fn karatsuba(a: &[FieldElement], b: &[FieldElement], field: FieldDescriptor) -> Vec<FieldElement> {
    if a.len().min(b.len()) < SCHOOLBOOK_THRESHOLD {
        return schoolbook(a, b, field);
    }
    let m = a.len().max(b.len()).div_ceil(2);
    let (a0, a1) = a.split_at(a.len().min(m));
    let (b0, b1) = b.split_at(b.len().min(m));
    let z0 = karatsuba(a0, b0, field);
    let mut out = vec![FieldElement::zero(field); a.len() + b.len() - 1];
    add_into(&mut out, &z0, 0);
    if a1.is_empty() && b1.is_empty() {
        return out;
    }
    let z2 = if a1.is_empty() || b1.is_empty() {
        Vec::new()
    } else {
        karatsuba(a1, b1, field)
    };
    let z1 = karatsuba(&add_slices(a0, a1), &add_slices(b0, b1), field);
    // Middle band: z1 - z0 - z2.
    let mut mid = z1;
    for (i, c) in z0.iter().enumerate() {
        mid[i] = &mid[i] - c;
    }
    for (i, c) in z2.iter().enumerate() {
        mid[i] = &mid[i] - c;
    }
    let band = (out.len() - m).min(mid.len());
    add_into(&mut out, &mid[..band], m);
    if !z2.is_empty() {
        add_into(&mut out, &z2, 2 * m);
    }
    out
}

fn ntt_mul(
    a: &[FieldElement],
    b: &[FieldElement],
    field: FieldDescriptor,
) -> Option<Vec<FieldElement>> {
    let FieldDescriptor::PrimeField(p) = field else {
        return None;
    };
    let raw = |v: &[FieldElement]| -> Vec<u64> {
        v.iter()
            .map(|c| match c {
                FieldElement::Prime { value, .. } => *value,
                FieldElement::Rational(_) => unreachable!(),
            })
            .collect()
    };
    let out = ntt::convolve(&raw(a), &raw(b), p)?;
    Some(
        out.into_iter()
            .map(|value| FieldElement::Prime { value, modulus: p })
            .collect(),
    )
}

/// Evaluates the falling-factorial series `f(m) = sum_i a_i * m(m-1)...(m-i+1)`
/// at `m = 0..n-1` with one convolution against the truncated exponential.
pub fn falling_to_values(
    a: &[FieldElement],
    n: usize,
    field: FieldDescriptor,
) -> Result<Vec<FieldElement>> {
    field.characteristic_guard(n as u64)?;
    if n == 0 {
        return Ok(Vec::new());
    }
    let facts = Factorials::new(n - 1, field)?;
    // f(m)/m! = sum_{i<=m} a_i / (m-i)!.
    let trimmed = Polynomial::new(a.iter().take(n).cloned().collect(), field);
    let exp = Polynomial::new((0..n).map(|u| facts.inv_fact(u).clone()).collect(), field);
    let conv = trimmed.mul(&exp)?;
    Ok((0..n).map(|m| &conv.coeff(m) * facts.fact(m)).collect())
}

/// Inverse of [`falling_to_values`] at `n = v.len()`: recovers the
/// falling-factorial coefficients from consecutive values.
pub fn values_to_falling(v: &[FieldElement], field: FieldDescriptor) -> Result<Vec<FieldElement>> {
    let n = v.len();
    field.characteristic_guard(n as u64)?;
    if n == 0 {
        return Ok(Vec::new());
    }
    let facts = Factorials::new(n - 1, field)?;
    let scaled = Polynomial::new(
        v.iter()
            .enumerate()
            .map(|(m, x)| x * facts.inv_fact(m))
            .collect(),
        field,
    );
    let alt_exp = Polynomial::new(
        (0..n)
            .map(|u| {
                let e = facts.inv_fact(u).clone();
                if u % 2 == 0 {
                    e
                } else {
                    e.negated()
                }
            })
            .collect(),
        field,
    );
    let conv = scaled.mul(&alt_exp)?;
    Ok((0..n).map(|i| conv.coeff(i)).collect())
}
