//! Finite soft cartesian products: tuple universes and tuple parameter sets.
//!
//! Factor order is significant and fixed. Tuple labels use the parenthesized
//! comma-joined form `"(a,x)"`, which is also the external name in emitted
//! files. Tuples enumerate with the first factor most significant, so the
//! derived context's label order is a deterministic function of the factors.

use crate::context::{same_context, Context, Ctx};
use crate::error::{Error, Result};
use crate::soft_set::{SoftPoint, SoftSet};

/// Construction fails when `|U| * |E|` of the derived context exceeds this.
pub const DEFAULT_CELL_BUDGET: usize = 4096;

/// The derived context of a finite family of factor contexts.
#[derive(Debug, Clone)]
pub struct ProductContext {
    factors: Vec<Ctx>,
    ctx: Ctx,
    cell_budget: usize,
}

impl ProductContext {
    pub fn new(factors: &[Ctx]) -> Result<ProductContext> {
        ProductContext::with_budget(factors, DEFAULT_CELL_BUDGET)
    }

    pub fn with_budget(factors: &[Ctx], cell_budget: usize) -> Result<ProductContext> {
        if factors.is_empty() {
            return Err(Error::EmptyFamily);
        }
        let mut universe_size = 1usize;
        let mut param_size = 1usize;
        for factor in factors {
            universe_size = universe_size.saturating_mul(factor.universe_len());
            param_size = param_size.saturating_mul(factor.params_len());
        }
        let cells = universe_size.saturating_mul(param_size);
        if cells > cell_budget {
            return Err(Error::BudgetExceeded {
                cells,
                budget: cell_budget,
                universe_size,
                param_size,
            });
        }
        let universe = tuple_labels(factors, universe_size, |f| f.universe_labels());
        let params = tuple_labels(factors, param_size, |f| f.param_labels());
        let ctx = Context::new(universe, params)?;
        Ok(ProductContext {
            factors: factors.to_vec(),
            ctx,
            cell_budget,
        })
    }

    pub fn arity(&self) -> usize {
        self.factors.len()
    }

    pub fn factor(&self, i: usize) -> &Ctx {
        &self.factors[i]
    }

    pub fn factors(&self) -> &[Ctx] {
        &self.factors
    }

    /// The derived tuple-labelled context.
    pub fn ctx(&self) -> &Ctx {
        &self.ctx
    }

    pub fn cell_budget(&self) -> usize {
        self.cell_budget
    }

    /// Component universe indices of a tuple element index.
    pub fn elem_components(&self, mut elem: usize) -> Vec<usize> {
        let mut out = vec![0; self.factors.len()];
        for (slot, factor) in self.factors.iter().enumerate().rev() {
            let size = factor.universe_len();
            out[slot] = elem % size;
            elem /= size;
        }
        out
    }

    /// Component parameter indices of a tuple parameter index.
    pub fn param_components(&self, mut param: usize) -> Vec<usize> {
        let mut out = vec![0; self.factors.len()];
        for (slot, factor) in self.factors.iter().enumerate().rev() {
            let size = factor.params_len();
            out[slot] = param % size;
            param /= size;
        }
        out
    }

    pub fn encode_elem(&self, components: &[usize]) -> usize {
        debug_assert_eq!(components.len(), self.factors.len());
        let mut idx = 0;
        for (factor, &c) in self.factors.iter().zip(components) {
            idx = idx * factor.universe_len() + c;
        }
        idx
    }

    pub fn encode_param(&self, components: &[usize]) -> usize {
        debug_assert_eq!(components.len(), self.factors.len());
        let mut idx = 0;
        for (factor, &c) in self.factors.iter().zip(components) {
            idx = idx * factor.params_len() + c;
        }
        idx
    }

    /// The soft cartesian product of one soft set per factor: the
    /// approximation at a tuple parameter is the cartesian product of the
    /// factor approximations.
    pub fn product_soft_set(&self, factor_sets: &[&SoftSet]) -> Result<SoftSet> {
        self.check_factor_sets(factor_sets)?;
        let out = SoftSet::from_fn(self.ctx(), |param, elem| {
            let params = self.param_components(param);
            let elems = self.elem_components(elem);
            factor_sets
                .iter()
                .zip(params.iter().zip(&elems))
                .all(|(set, (&p, &e))| set.contains(p, e))
        });
        Ok(out)
    }

    /// Componentwise membership of a tuple soft point in the factor soft
    /// sets; agrees with membership in [`Self::product_soft_set`].
    pub fn point_in_product(&self, point: &SoftPoint, factor_sets: &[&SoftSet]) -> Result<bool> {
        if !same_context(point.ctx(), self.ctx()) {
            return Err(Error::ContextMismatch);
        }
        self.check_factor_sets(factor_sets)?;
        let params = self.param_components(point.param());
        let elems = self.elem_components(point.elem());
        Ok(factor_sets
            .iter()
            .zip(params.iter().zip(&elems))
            .all(|(set, (&p, &e))| set.contains(p, e)))
    }

    fn check_factor_sets(&self, factor_sets: &[&SoftSet]) -> Result<()> {
        if factor_sets.len() != self.factors.len() {
            return Err(Error::FactorArityMismatch {
                expected: self.factors.len(),
                got: factor_sets.len(),
            });
        }
        for (set, factor) in factor_sets.iter().zip(&self.factors) {
            if !same_context(set.ctx(), factor) {
                return Err(Error::ContextMismatch);
            }
        }
        Ok(())
    }
}

fn tuple_labels(factors: &[Ctx], total: usize, pick: impl Fn(&Ctx) -> &[String]) -> Vec<String> {
    let mut labels = Vec::with_capacity(total);
    let mut stack: Vec<usize> = vec![0; factors.len()];
    for _ in 0..total {
        let parts: Vec<&str> = factors
            .iter()
            .zip(&stack)
            .map(|(f, &i)| pick(f)[i].as_str())
            .collect();
        labels.push(format!("({})", parts.join(",")));
        // odometer increment, last factor fastest
        for slot in (0..factors.len()).rev() {
            stack[slot] += 1;
            if stack[slot] < pick(&factors[slot]).len() {
                break;
            }
            stack[slot] = 0;
        }
    }
    labels
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::context::Context;

    fn two_factors() -> (Ctx, Ctx, ProductContext) {
        let c1 = Context::from_labels(&["a", "b"], &["e"]).unwrap();
        let c2 = Context::from_labels(&["x", "y"], &["d"]).unwrap();
        let pc = ProductContext::new(&[c1.clone(), c2.clone()]).unwrap();
        (c1, c2, pc)
    }

    #[test]
    fn tuple_labels_are_parenthesized() {
        let (_, _, pc) = two_factors();
        assert_eq!(
            pc.ctx().universe_labels(),
            &["(a,x)", "(a,y)", "(b,x)", "(b,y)"]
        );
        assert_eq!(pc.ctx().param_labels(), &["(e,d)"]);
    }

    #[test]
    fn encode_decode_roundtrip() {
        let (_, _, pc) = two_factors();
        for elem in 0..pc.ctx().universe_len() {
            assert_eq!(pc.encode_elem(&pc.elem_components(elem)), elem);
        }
        for param in 0..pc.ctx().params_len() {
            assert_eq!(pc.encode_param(&pc.param_components(param)), param);
        }
    }

    #[test]
    fn product_of_absolutes_is_absolute() {
        let (c1, c2, pc) = two_factors();
        let a1 = SoftSet::absolute(&c1);
        let a2 = SoftSet::absolute(&c2);
        assert_eq!(
            pc.product_soft_set(&[&a1, &a2]).unwrap(),
            SoftSet::absolute(pc.ctx())
        );
    }

    #[test]
    fn null_factor_gives_null_product() {
        let (c1, c2, pc) = two_factors();
        let n1 = SoftSet::null(&c1);
        let a2 = SoftSet::absolute(&c2);
        assert!(pc.product_soft_set(&[&n1, &a2]).unwrap().is_null());
    }

    #[test]
    fn product_rows_are_cartesian() {
        let (c1, c2, pc) = two_factors();
        let f = SoftSet::from_rows(&c1, &[vec![0]]).unwrap(); // {e:{a}}
        let g = SoftSet::from_rows(&c2, &[vec![0, 1]]).unwrap(); // {d:{x,y}}
        let prod = pc.product_soft_set(&[&f, &g]).unwrap();
        let row = prod.row(0);
        let labels: Vec<&str> = row.iter().map(|&e| pc.ctx().elem_label(e)).collect();
        assert_eq!(labels, vec!["(a,x)", "(a,y)"]);
    }

    #[test]
    fn point_in_product_agrees_with_membership() {
        let (c1, c2, pc) = two_factors();
        let f = SoftSet::from_rows(&c1, &[vec![0]]).unwrap();
        let g = SoftSet::from_rows(&c2, &[vec![0, 1]]).unwrap();
        let prod = pc.product_soft_set(&[&f, &g]).unwrap();
        for point in SoftPoint::grid(pc.ctx()) {
            assert_eq!(
                pc.point_in_product(&point, &[&f, &g]).unwrap(),
                point.belongs_to(&prod).unwrap()
            );
        }
        // Against a null factor every point fails.
        let n2 = SoftSet::null(&c2);
        for point in SoftPoint::grid(pc.ctx()) {
            assert!(!pc.point_in_product(&point, &[&f, &n2]).unwrap());
        }
    }

    #[test]
    fn nullity_exhaustive_on_small_factors() {
        // Both directions of "the product is null iff some factor is null",
        // over every factor pair on 2x2 contexts.
        let c1 = Context::from_labels(&["a", "b"], &["e1", "e2"]).unwrap();
        let c2 = Context::from_labels(&["x", "y"], &["d1", "d2"]).unwrap();
        let pc = ProductContext::new(&[c1.clone(), c2.clone()]).unwrap();
        for f_bits in 0..16u32 {
            for g_bits in 0..16u32 {
                let f = SoftSet::from_fn(&c1, |p, e| f_bits >> (p * 2 + e) & 1 == 1);
                let g = SoftSet::from_fn(&c2, |p, e| g_bits >> (p * 2 + e) & 1 == 1);
                let prod = pc.product_soft_set(&[&f, &g]).unwrap();
                assert_eq!(prod.is_null(), f.is_null() || g.is_null());
            }
        }
    }

    #[test]
    fn budget_is_enforced() {
        let c1 = Context::from_labels(&["a", "b", "c", "d"], &["e1", "e2"]).unwrap();
        let err = ProductContext::with_budget(&[c1.clone(), c1.clone()], 16).unwrap_err();
        match err {
            Error::BudgetExceeded {
                cells,
                budget,
                universe_size,
                param_size,
            } => {
                assert_eq!((cells, budget), (64, 16));
                assert_eq!((universe_size, param_size), (16, 4));
            }
            other => panic!("unexpected error {other:?}"),
        }
    }

    #[test]
    fn arity_mismatch_is_reported() {
        let (c1, _, pc) = two_factors();
        let f = SoftSet::absolute(&c1);
        assert_eq!(
            pc.product_soft_set(&[&f]),
            Err(Error::FactorArityMismatch {
                expected: 2,
                got: 1
            })
        );
    }
}
