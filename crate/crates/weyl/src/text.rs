//! Textual and JSON forms for operators.
//!
//! Operator grammar: a sum of terms `c`, `c*x^j`, `c*D^i`, `c*x^j*D^i`
//! with `c` a field scalar (omitted when 1). Canonical printing orders
//! terms by increasing D-exponent, then increasing x-exponent, and omits
//! zero coefficients. Parsing and printing round-trip exactly.

use std::fmt;

use num::Signed;
use serde_json::{json, Value};

use crate::error::{Result, WeylError};
use crate::field::{FieldDescriptor, FieldElement};
use crate::op::DiffOperator;

/// Splits an expression into `(negated, term)` pairs at top-level `+`/`-`.
pub(crate) fn split_terms(s: &str) -> Result<Vec<(bool, &str)>> {
    let s = s.trim();
    if s.is_empty() {
        return Err(WeylError::Parse("empty expression".into()));
    }
    let bytes = s.as_bytes();
    let mut out = Vec::new();
    let mut idx = 0;
    let mut negate = false;
    let mut sign_seen = false;
    while idx < bytes.len() {
        match bytes[idx] {
            b' ' | b'\t' => idx += 1,
            b'+' => {
                sign_seen = true;
                idx += 1;
            }
            b'-' => {
                negate = !negate;
                sign_seen = true;
                idx += 1;
            }
            _ => {
                let start = idx;
                while idx < bytes.len() && bytes[idx] != b'+' && bytes[idx] != b'-' {
                    idx += 1;
                }
                let term = s[start..idx].trim();
                if term.is_empty() {
                    return Err(WeylError::Parse(format!("empty term in {s:?}")));
                }
                if !out.is_empty() && !sign_seen {
                    return Err(WeylError::Parse(format!("missing operator in {s:?}")));
                }
                out.push((negate, term));
                negate = false;
                sign_seen = false;
            }
        }
    }
    if sign_seen || out.is_empty() {
        return Err(WeylError::Parse(format!("dangling sign in {s:?}")));
    }
    Ok(out)
}

pub(crate) struct ParsedTerm<'a> {
    pub coeff: Option<&'a str>,
    pub x_exp: usize,
    pub d_exp: usize,
}

/// Parses one `[c][*x[^j]][*D[^i]]` term.
pub(crate) fn parse_term(term: &str) -> Result<ParsedTerm<'_>> {
    let mut coeff = None;
    let mut x_exp: Option<usize> = None;
    let mut d_exp: Option<usize> = None;
    for (pos, factor) in term.split('*').enumerate() {
        let factor = factor.trim();
        if factor.is_empty() {
            return Err(WeylError::Parse(format!("empty factor in term {term:?}")));
        }
        let (symbol, exp) = match factor.split_once('^') {
            Some((sym, e)) => {
                let exp: usize = e
                    .trim()
                    .parse()
                    .map_err(|_| WeylError::Parse(format!("bad exponent in factor {factor:?}")))?;
                (sym.trim(), exp)
            }
            None => (factor, 1),
        };
        match symbol {
            "x" => {
                // The ring is noncommutative; x left of D is part of the
                // canonical form, not a convention to normalize away.
                if d_exp.is_some() {
                    return Err(WeylError::Parse(format!(
                        "x must precede D in term {term:?}"
                    )));
                }
                if x_exp.replace(exp).is_some() {
                    return Err(WeylError::Parse(format!("repeated x in term {term:?}")));
                }
            }
            "D" => {
                if d_exp.replace(exp).is_some() {
                    return Err(WeylError::Parse(format!("repeated D in term {term:?}")));
                }
            }
            _ => {
                if pos != 0 || symbol != factor {
                    return Err(WeylError::Parse(format!("bad factor {factor:?}")));
                }
                coeff = Some(factor);
            }
        }
    }
    Ok(ParsedTerm {
        coeff,
        x_exp: x_exp.unwrap_or(0),
        d_exp: d_exp.unwrap_or(0),
    })
}

/// Splits a scalar into `(is_negative, magnitude)` for sign-aware
/// printing; prime-field residues are never negative.
pub(crate) fn sign_split(c: &FieldElement) -> (bool, FieldElement) {
    match c {
        FieldElement::Rational(r) if r.is_negative() => (true, c.negated()),
        _ => (false, c.clone()),
    }
}

impl fmt::Display for DiffOperator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let (d, r) = self.bidegree();
        let mut first = true;
        for i in 0..r {
            for j in 0..d {
                let c = self.coeff(i, j);
                if c.is_zero() {
                    continue;
                }
                let (neg, mag) = sign_split(&c);
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
                let mut parts: Vec<String> = Vec::new();
                if !mag.is_one() || (i == 0 && j == 0) {
                    parts.push(mag.to_string());
                }
                if j == 1 {
                    parts.push("x".into());
                } else if j > 1 {
                    parts.push(format!("x^{j}"));
                }
                if i == 1 {
                    parts.push("D".into());
                } else if i > 1 {
                    parts.push(format!("D^{i}"));
                }
                write!(f, "{}", parts.join("*"))?;
            }
        }
        Ok(())
    }
}

impl DiffOperator {
    /// Parses the operator grammar over the given field.
    pub fn parse(s: &str, field: FieldDescriptor) -> Result<Self> {
        let mut terms = Vec::new();
        for (negate, term) in split_terms(s)? {
            let parsed = parse_term(term)?;
            let mut c = match parsed.coeff {
                Some(cs) => FieldElement::parse(cs, field)?,
                None => FieldElement::one(field),
            };
            if negate {
                c = c.negated();
            }
            terms.push((parsed.d_exp, parsed.x_exp, c));
        }
        Ok(DiffOperator::from_terms(field, terms))
    }

    /// JSON form: `{"field": "...", "terms": [[i, j, "c"], ...]}` with
    /// terms in canonical order.
    pub fn to_json(&self) -> String {
        let (d, r) = self.bidegree();
        let mut terms = Vec::new();
        for i in 0..r {
            for j in 0..d {
                let c = self.coeff(i, j);
                if !c.is_zero() {
                    terms.push(json!([i, j, c.to_string()]));
                }
            }
        }
        json!({ "field": self.field().to_string(), "terms": terms }).to_string()
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let value: Value =
            serde_json::from_str(s).map_err(|e| WeylError::Parse(format!("bad JSON: {e}")))?;
        let field_str = value
            .get("field")
            .and_then(Value::as_str)
            .ok_or_else(|| WeylError::Parse("JSON missing \"field\"".into()))?;
        let field: FieldDescriptor = field_str.parse()?;
        let terms = value
            .get("terms")
            .and_then(Value::as_array)
            .ok_or_else(|| WeylError::Parse("JSON missing \"terms\"".into()))?;
        let mut parsed = Vec::with_capacity(terms.len());
        for t in terms {
            let triple = t
                .as_array()
                .filter(|a| a.len() == 3)
                .ok_or_else(|| WeylError::Parse("term must be [i, j, \"c\"]".into()))?;
            let i = triple[0]
                .as_u64()
                .ok_or_else(|| WeylError::Parse("term exponent must be an integer".into()))?;
            let j = triple[1]
                .as_u64()
                .ok_or_else(|| WeylError::Parse("term exponent must be an integer".into()))?;
            let c = triple[2]
                .as_str()
                .ok_or_else(|| WeylError::Parse("coefficient must be a string".into()))?;
            parsed.push((i as usize, j as usize, FieldElement::parse(c, field)?));
        }
        Ok(DiffOperator::from_terms(field, parsed))
    }
}
