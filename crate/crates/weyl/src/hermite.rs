//! Hermite evaluation and interpolation on a subproduct tree.
//!
//! Evaluation runs a remainder tree over the moduli `(x - a_j)^(c_j)` and
//! reads scaled Taylor coefficients at each leaf. Interpolation forms the
//! leaf cofactors `(M / m_j) mod m_j` by a top-down descent, inverts each
//! one as a truncated power series at its point, and lifts the local
//! solutions back up with the pairwise combination
//! `U = U_left * M_right + U_right * M_left`.

use std::collections::HashSet;
use std::sync::OnceLock;

use crate::error::{Result, WeylError};
use crate::field::{Factorials, FieldDescriptor, FieldElement};
use crate::poly::Polynomial;

/// Evaluation points with confluence multiplicities.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HermiteSpec {
    points: Vec<FieldElement>,
    multiplicities: Vec<usize>,
    total: usize,
    field: FieldDescriptor,
}

impl HermiteSpec {
    pub fn new(points: Vec<FieldElement>, multiplicities: Vec<usize>) -> Result<Self> {
        if points.is_empty() || points.len() != multiplicities.len() {
            return Err(WeylError::InvalidSpec(
                "need equally many points and multiplicities, at least one".into(),
            ));
        }
        if multiplicities.contains(&0) {
            return Err(WeylError::InvalidSpec("zero multiplicity".into()));
        }
        let field = points[0].descriptor();
        if points.iter().any(|p| p.descriptor() != field) {
            return Err(WeylError::FieldMismatch {
                left: field,
                right: points
                    .iter()
                    .find(|p| p.descriptor() != field)
                    .unwrap()
                    .descriptor(),
            });
        }
        let distinct: HashSet<&FieldElement> = points.iter().collect();
        if distinct.len() != points.len() {
            return Err(WeylError::DuplicatePoints);
        }
        let total = multiplicities.iter().sum();
        Ok(HermiteSpec {
            points,
            multiplicities,
            total,
            field,
        })
    }

    /// All points share one multiplicity.
    pub fn uniform(points: Vec<FieldElement>, multiplicity: usize) -> Result<Self> {
        let n = points.len();
        HermiteSpec::new(points, vec![multiplicity; n])
    }

    pub fn points(&self) -> &[FieldElement] {
        &self.points
    }

    pub fn multiplicities(&self) -> &[usize] {
        &self.multiplicities
    }

    pub fn total(&self) -> usize {
        self.total
    }

    pub fn field(&self) -> FieldDescriptor {
        self.field
    }

    pub fn max_multiplicity(&self) -> usize {
        self.multiplicities.iter().copied().max().unwrap_or(0)
    }
}

/// Per-point derivative blocks `(P(a_j), P'(a_j), ..., P^(c_j-1)(a_j))`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HermiteValues {
    blocks: Vec<Vec<FieldElement>>,
}

impl HermiteValues {
    pub fn new(blocks: Vec<Vec<FieldElement>>) -> Self {
        HermiteValues { blocks }
    }

    pub fn blocks(&self) -> &[Vec<FieldElement>] {
        &self.blocks
    }

    /// Flattened in spec order.
    pub fn flat(&self) -> Vec<FieldElement> {
        self.blocks.iter().flatten().cloned().collect()
    }
}

struct TreeNode {
    modulus: Polynomial,
    kind: NodeKind,
}

enum NodeKind {
    Leaf {
        index: usize,
    },
    Inner {
        left: Box<TreeNode>,
        right: Box<TreeNode>,
    },
}

/// A reusable subproduct tree over one spec; moduli and the per-leaf
/// cofactor inverses are cached so that repeated evaluations and
/// interpolations share the expensive parts.
pub struct HermitePlan {
    spec: HermiteSpec,
    root: TreeNode,
    facts: Factorials,
    leaf_inverses: OnceLock<Result<Vec<Polynomial>>>,
}

impl HermitePlan {
    pub fn new(spec: HermiteSpec) -> Result<Self> {
        let field = spec.field();
        field.characteristic_guard(spec.max_multiplicity() as u64)?;
        let facts = Factorials::new(spec.max_multiplicity().saturating_sub(1), field)?;
        let root = build_tree(&spec, 0, spec.points().len())?;
        Ok(HermitePlan {
            spec,
            root,
            facts,
            leaf_inverses: OnceLock::new(),
        })
    }

    pub fn spec(&self) -> &HermiteSpec {
        &self.spec
    }

    /// Derivatives of `p` at every point of the spec, up to each point's
    /// multiplicity.
    pub fn evaluate(&self, p: &Polynomial) -> Result<HermiteValues> {
        if p.field() != self.spec.field {
            return Err(WeylError::FieldMismatch {
                left: self.spec.field,
                right: p.field(),
            });
        }
        let residue = if p.len() >= self.root.modulus.len() {
            p.divrem(&self.root.modulus)?.1
        } else {
            p.clone()
        };
        let mut blocks: Vec<Vec<FieldElement>> = vec![Vec::new(); self.spec.points.len()];
        self.evaluate_rec(&self.root, residue, &mut blocks)?;
        Ok(HermiteValues { blocks })
    }

    fn evaluate_rec(
        &self,
        node: &TreeNode,
        residue: Polynomial,
        blocks: &mut Vec<Vec<FieldElement>>,
    ) -> Result<()> {
        match &node.kind {
            NodeKind::Leaf { index } => {
                let c = self.spec.multiplicities[*index];
                let taylor = residue.taylor_shift(&self.spec.points[*index])?;
                blocks[*index] = (0..c)
                    .map(|t| &taylor.coeff(t) * self.facts.fact(t))
                    .collect();
                Ok(())
            }
            NodeKind::Inner { left, right } => {
                let left_res = residue.divrem(&left.modulus)?.1;
                let right_res = residue.divrem(&right.modulus)?.1;
                self.evaluate_rec(left, left_res, blocks)?;
                self.evaluate_rec(right, right_res, blocks)
            }
        }
    }

    /// The unique polynomial of degree below `spec.total()` with the
    /// prescribed derivatives.
    pub fn interpolate(&self, values: &HermiteValues) -> Result<Polynomial> {
        let k = self.spec.points.len();
        if values.blocks.len() != k
            || values
                .blocks
                .iter()
                .zip(&self.spec.multiplicities)
                .any(|(b, &c)| b.len() != c)
        {
            return Err(WeylError::InvalidSpec(
                "value blocks do not match the spec multiplicities".into(),
            ));
        }
        let inverses = self.leaf_inverses()?;
        let mut locals: Vec<Option<Polynomial>> = vec![None; k];
        self.leaf_locals_rec(&self.root, values, inverses, &mut locals)?;
        self.combine_rec(&self.root, &locals)
    }

    /// Inverses of the leaf cofactors `(M / m_j) mod m_j`, shared across
    /// interpolations; computed on first use.
    fn leaf_inverses(&self) -> Result<&Vec<Polynomial>> {
        self.leaf_inverses
            .get_or_init(|| {
                let field = self.spec.field;
                let mut out: Vec<Option<Polynomial>> = vec![None; self.spec.points.len()];
                self.cofactor_rec(&self.root, Polynomial::one(field), &mut out)?;
                Ok(out.into_iter().map(|p| p.expect("leaf visited")).collect())
            })
            .as_ref()
            .map_err(|e| e.clone())
    }

    /// Walks the tree with the running cofactor `T = (M / M_node) mod
    /// M_node`, inverting it at each leaf as a truncated power series
    /// centered on the leaf's point.
    fn cofactor_rec(
        &self,
        node: &TreeNode,
        cofactor: Polynomial,
        out: &mut Vec<Option<Polynomial>>,
    ) -> Result<()> {
        match &node.kind {
            NodeKind::Leaf { index } => {
                let c = self.spec.multiplicities[*index];
                let alpha = &self.spec.points[*index];
                let centered = cofactor.taylor_shift(alpha)?.truncated(c);
                let inv = centered.series_inverse(c)?.taylor_shift(&alpha.negated())?;
                out[*index] = Some(inv);
                Ok(())
            }
            NodeKind::Inner { left, right } => {
                let t_left = cofactor.mul(&right.modulus)?.divrem(&left.modulus)?.1;
                let t_right = cofactor.mul(&left.modulus)?.divrem(&right.modulus)?.1;
                self.cofactor_rec(left, t_left, out)?;
                self.cofactor_rec(right, t_right, out)
            }
        }
    }

    fn leaf_locals_rec(
        &self,
        node: &TreeNode,
        values: &HermiteValues,
        inverses: &[Polynomial],
        out: &mut Vec<Option<Polynomial>>,
    ) -> Result<()> {
        match &node.kind {
            NodeKind::Leaf { index } => {
                let alpha = &self.spec.points[*index];
                // Local Taylor polynomial from the prescribed derivatives.
                let taylor = Polynomial::new(
                    values.blocks[*index]
                        .iter()
                        .enumerate()
                        .map(|(t, v)| v * self.facts.inv_fact(t))
                        .collect(),
                    self.spec.field,
                );
                let local = taylor.taylor_shift(&alpha.negated())?;
                let prod = local.mul(&inverses[*index])?;
                out[*index] = Some(prod.divrem(&node.modulus)?.1);
                Ok(())
            }
            NodeKind::Inner { left, right } => {
                self.leaf_locals_rec(left, values, inverses, out)?;
                self.leaf_locals_rec(right, values, inverses, out)
            }
        }
    }

    fn combine_rec(&self, node: &TreeNode, locals: &[Option<Polynomial>]) -> Result<Polynomial> {
        match &node.kind {
            NodeKind::Leaf { index } => Ok(locals[*index].clone().expect("leaf visited")),
            NodeKind::Inner { left, right } => {
                let u_left = self.combine_rec(left, locals)?;
                let u_right = self.combine_rec(right, locals)?;
                u_left
                    .mul(&right.modulus)?
                    .add(&u_right.mul(&left.modulus)?)
            }
        }
    }
}

fn build_tree(spec: &HermiteSpec, lo: usize, hi: usize) -> Result<TreeNode> {
    if hi - lo == 1 {
        let field = spec.field();
        let linear = Polynomial::new(
            vec![spec.points()[lo].negated(), FieldElement::one(field)],
            field,
        );
        let modulus = poly_pow(&linear, spec.multiplicities()[lo])?;
        return Ok(TreeNode {
            modulus,
            kind: NodeKind::Leaf { index: lo },
        });
    }
    let mid = lo + (hi - lo) / 2;
    let left = build_tree(spec, lo, mid)?;
    let right = build_tree(spec, mid, hi)?;
    let modulus = left.modulus.mul(&right.modulus)?;
    Ok(TreeNode {
        modulus,
        kind: NodeKind::Inner {
            left: Box::new(left),
            right: Box::new(right),
        },
    })
}

fn poly_pow(base: &Polynomial, mut e: usize) -> Result<Polynomial> {
    let mut acc = Polynomial::one(base.field());
    let mut sq = base.clone();
    while e > 0 {
        if e & 1 == 1 {
            acc = acc.mul(&sq)?;
        }
        e >>= 1;
        if e > 0 {
            sq = sq.mul(&sq)?;
        }
    }
    Ok(acc)
}

/// One-shot Hermite evaluation; builds a throwaway plan.
pub fn hermite_evaluate(p: &Polynomial, spec: &HermiteSpec) -> Result<HermiteValues> {
    HermitePlan::new(spec.clone())?.evaluate(p)
}

/// One-shot Hermite interpolation; builds a throwaway plan.
pub fn hermite_interpolate(values: &HermiteValues, spec: &HermiteSpec) -> Result<Polynomial> {
    HermitePlan::new(spec.clone())?.interpolate(values)
}
