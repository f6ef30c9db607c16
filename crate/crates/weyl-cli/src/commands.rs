//! The `mul` and `reflect` commands.

use std::path::Path;

use weyl::{DiffOperator, FieldDescriptor, MulOptions, Result};

/// How `mul` picks its multiplication path.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Algorithm {
    Naive,
    Fast,
    Auto,
}

/// Resolves an operator argument: a path to a file (textual or JSON
/// form, detected by a leading `{`) or a literal operator text. JSON
/// files carry their own field; text uses `field`.
pub fn read_operator(input: &str, field: FieldDescriptor) -> Result<DiffOperator> {
    let path = Path::new(input);
    if path.is_file() {
        let content = std::fs::read_to_string(path)
            .map_err(|e| weyl::WeylError::Parse(format!("cannot read {input}: {e}")))?;
        let content = content.trim();
        if content.starts_with('{') {
            return DiffOperator::from_json(content);
        }
        return DiffOperator::parse(content, field);
    }
    if input.trim_start().starts_with('{') {
        return DiffOperator::from_json(input);
    }
    DiffOperator::parse(input, field)
}

pub fn run_mul(
    left: &str,
    right: &str,
    field: FieldDescriptor,
    algorithm: Algorithm,
) -> Result<String> {
    let lhs = read_operator(left, field)?;
    let rhs = read_operator(right, field)?;
    let product = match algorithm {
        Algorithm::Naive => lhs.multiply_naive(&rhs)?,
        Algorithm::Auto => lhs.multiply(&rhs)?,
        Algorithm::Fast => lhs.multiply_with(
            &rhs,
            &MulOptions {
                naive_min: 0,
                naive_product: 0,
                guard_fallback_product: 0,
            },
        )?,
    };
    Ok(product.to_string())
}

pub fn run_reflect(input: &str, field: FieldDescriptor, inverse: bool) -> Result<String> {
    let op = read_operator(input, field)?;
    let reflected = if inverse {
        op.reflect_inverse()?
    } else {
        op.reflect()?
    };
    Ok(reflected.to_string())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn mul_command_examples() {
        let f = FieldDescriptor::Rational;
        assert_eq!(run_mul("D", "x", f, Algorithm::Auto).unwrap(), "1 + x*D");
        assert_eq!(run_mul("0", "x*D", f, Algorithm::Auto).unwrap(), "0");
        assert_eq!(
            run_mul("D", "x", f, Algorithm::Naive).unwrap(),
            run_mul("D", "x", f, Algorithm::Fast).unwrap()
        );
    }

    #[test]
    fn reflect_command_examples() {
        let f = FieldDescriptor::Rational;
        assert_eq!(run_reflect("x", f, false).unwrap(), "D");
        assert_eq!(run_reflect("D", f, true).unwrap(), "x");
        assert_eq!(run_reflect("x*D", f, false).unwrap(), "-1 - x*D");
    }

    #[test]
    fn json_literal_input() {
        let f = FieldDescriptor::Rational;
        let json = r#"{"field": "rational", "terms": [[1, 0, "1"]]}"#;
        assert_eq!(run_mul(json, "x", f, Algorithm::Auto).unwrap(), "1 + x*D");
    }
}
