//! The reflection automorphism that swaps degree and order.
//!
//! Reflection sends `x` to `D` and `D` to `-x`, exchanging the bidegree
//! components. The fast path canonicalizes the reflected word
//! diagonal-by-diagonal: each diagonal of factorial-scaled coefficients
//! turns into a Taylor shift by one, with coefficients below the
//! diagonal's offset discarded.

use crate::error::Result;
use crate::field::{Factorials, FieldElement};
use crate::op::{CommutationTable, DiffOperator};
use crate::poly::Polynomial;

impl DiffOperator {
    /// Reference reflection: expands every monomial image `D^j (-x)^i`
    /// with the commutation table. Quadratic work per term; the oracle
    /// for [`DiffOperator::reflect`].
    pub fn reflect_naive(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let field = self.field();
        let (d, r) = self.bidegree();
        let table = CommutationTable::new(d - 1, r - 1, field);
        let mut rows = vec![vec![FieldElement::zero(field); r]; d];
        for i in 0..r {
            for j in 0..d {
                let c = self.coeff(i, j);
                if c.is_zero() {
                    continue;
                }
                let signed = if i % 2 == 1 { c.negated() } else { c };
                for (k, ck) in table.expansion(j, i).iter().enumerate() {
                    let cell = &mut rows[j - k][i - k];
                    *cell = &*cell + &(&signed * ck);
                }
            }
        }
        DiffOperator::from_grid(rows, field)
    }

    /// Fast reflection via one Taylor shift per diagonal.
    pub fn reflect(&self) -> Result<Self> {
        if self.is_zero() {
            return Ok(self.clone());
        }
        let field = self.field();
        let (d, r) = self.bidegree();
        field.characteristic_guard((d + r) as u64)?;
        let facts = Factorials::new(d.max(r) - 1, field)?;
        let one = FieldElement::one(field);
        // The reflected word has x-exponents below r and D-exponents
        // below d; entry (a, b) of the pre-canonical coefficient matrix
        // is (-1)^a * self[a][b].
        let signed = |a: usize, b: usize| {
            let c = self.coeff(a, b);
            if a % 2 == 1 {
                c.negated()
            } else {
                c
            }
        };
        let mut rows = vec![vec![FieldElement::zero(field); r]; d];
        if d <= r {
            // Diagonals indexed by D-exponent; polynomials of length <= d.
            for k in (1 - (r as isize))..=(d as isize - 1) {
                let mut coeffs = vec![FieldElement::zero(field); d];
                let a_lo = 0.max(-k) as usize;
                let a_hi = (r as isize - 1).min(d as isize - 1 - k);
                if a_hi < a_lo as isize {
                    continue;
                }
                for a in a_lo..=a_hi as usize {
                    let e = (a as isize + k) as usize;
                    coeffs[e] = facts.fact(a) * &signed(a, e);
                }
                let shifted = Polynomial::new(coeffs, field).taylor_shift(&one)?;
                let e_lo = 0.max(k) as usize;
                let e_hi = (d as isize - 1).min(r as isize - 1 + k);
                if e_hi < e_lo as isize {
                    continue;
                }
                for e in e_lo..=e_hi as usize {
                    let a = (e as isize - k) as usize;
                    rows[e][a] = &shifted.coeff(e) * facts.inv_fact(a);
                }
            }
        } else {
            // Transposed identity: diagonals indexed by x-exponent;
            // polynomials of length <= r.
            for k in (1 - (d as isize))..=(r as isize - 1) {
                let mut coeffs = vec![FieldElement::zero(field); r];
                let c_lo = 0.max(-k) as usize;
                let c_hi = (d as isize - 1).min(r as isize - 1 - k);
                if c_hi < c_lo as isize {
                    continue;
                }
                for c in c_lo..=c_hi as usize {
                    let s = (c as isize + k) as usize;
                    coeffs[s] = facts.fact(c) * &signed(s, c);
                }
                let shifted = Polynomial::new(coeffs, field).taylor_shift(&one)?;
                let s_lo = 0.max(k) as usize;
                let s_hi = (r as isize - 1).min(d as isize - 1 + k);
                if s_hi < s_lo as isize {
                    continue;
                }
                for s in s_lo..=s_hi as usize {
                    let c = (s as isize - k) as usize;
                    rows[c][s] = &shifted.coeff(s) * facts.inv_fact(c);
                }
            }
        }
        Ok(DiffOperator::from_grid(rows, field))
    }

    /// Inverse reflection: the sign involution followed by reflection.
    pub fn reflect_inverse(&self) -> Result<Self> {
        self.sign_involution().reflect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::FieldDescriptor;

    fn f() -> FieldDescriptor {
        FieldDescriptor::Rational
    }

    fn op(s: &str) -> DiffOperator {
        DiffOperator::parse(s, f()).unwrap()
    }

    #[test]
    fn generator_images() {
        assert_eq!(op("x").reflect().unwrap(), op("D"));
        assert_eq!(op("D").reflect().unwrap(), op("-x"));
        assert_eq!(op("x").reflect_naive(), op("D"));
        assert_eq!(op("D").reflect_naive(), op("-x"));
    }

    #[test]
    fn scalars_are_fixed() {
        assert_eq!(op("5/3").reflect().unwrap(), op("5/3"));
        assert!(DiffOperator::zero(f()).reflect().unwrap().is_zero());
    }

    #[test]
    fn euler_operator_reflection() {
        // D * (-x) = -(xD + 1).
        assert_eq!(op("x*D").reflect_naive(), op("-1 - x*D"));
        assert_eq!(op("x*D").reflect().unwrap(), op("-1 - x*D"));
    }

    #[test]
    fn inverse_round_trip() {
        for s in ["D", "-x", "x^3*D^2 + 5*x - 7*D^4", "1 + x*D"] {
            let l = op(s);
            assert_eq!(l.reflect().unwrap().reflect_inverse().unwrap(), l);
            assert_eq!(l.reflect_inverse().unwrap().reflect().unwrap(), l);
        }
        assert_eq!(op("-x").reflect_inverse().unwrap(), op("D"));
        assert_eq!(op("D").reflect_inverse().unwrap(), op("x"));
    }

    #[test]
    fn double_reflection_is_sign_involution() {
        for s in ["x^2*D^3 + x*D + 4", "x^5 - D^5", "3*x^4*D - 2*x*D^2 + 9"] {
            let l = op(s);
            assert_eq!(l.reflect().unwrap().reflect().unwrap(), l.sign_involution());
        }
    }

    #[test]
    fn bidegree_swaps() {
        let l = op("x^4*D^2 + x");
        let (d, r) = l.bidegree();
        assert_eq!(l.reflect().unwrap().bidegree(), (r, d));
    }

    #[test]
    fn fast_matches_naive_on_both_branches() {
        let fp = FieldDescriptor::prime_field(1000003).unwrap();
        let mut state = 77u64;
        let mut next = move || {
            state = state.wrapping_mul(6364136223846793005).wrapping_add(13);
            state
        };
        for (dmax, rmax) in [(6usize, 6usize), (9, 3), (3, 9)] {
            for _ in 0..20 {
                let mut terms = Vec::new();
                for i in 0..rmax {
                    for j in 0..dmax {
                        terms.push((
                            i,
                            j,
                            FieldElement::from_integer(fp, (next() % 1000003) as i64),
                        ));
                    }
                }
                let l = DiffOperator::from_terms(fp, terms);
                assert_eq!(l.reflect().unwrap(), l.reflect_naive());
            }
        }
    }
}
