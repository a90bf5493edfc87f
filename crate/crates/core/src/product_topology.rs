//! The soft product topology: projections, slabs, n-slabs, and closure of
//! soft products.
//!
//! The product topology is the initial topology of the projection mappings.
//! Slabs (inverse images of factor open sets under projections) form its
//! subbase, n-slabs its base. The n-slab base is closed under intersection,
//! so closure queries can run directly against the base without ever
//! materializing the full topology; [`ProductOfSpaces`] exposes that route.

use crate::context::{same_context, Ctx};
use crate::continuity::{self, ContinuityMethod};
use crate::error::{Error, Result};
use crate::mapping::{compose, SoftMapping};
use crate::product::{ProductContext, DEFAULT_CELL_BUDGET};
use crate::soft_set::{SoftPoint, SoftSet};
use crate::topology::{SoftSpace, SoftTopology, DEFAULT_SIZE_CAP};

/// The i-th soft projection mapping of a product context.
pub fn projection_mapping(product: &ProductContext, index: usize) -> Result<SoftMapping> {
    if index >= product.arity() {
        return Err(Error::IndexOutOfRange {
            index,
            limit: product.arity(),
        });
    }
    let ctx = product.ctx();
    let phi = (0..ctx.universe_len())
        .map(|e| product.elem_components(e)[index])
        .collect();
    let psi = (0..ctx.params_len())
        .map(|p| product.param_components(p)[index])
        .collect();
    SoftMapping::new(ctx, product.factor(index), phi, psi)
}

/// A soft slab: the inverse image of a factor open set under its projection.
pub fn slab(
    product: &ProductContext,
    factor_spaces: &[&SoftSpace],
    index: usize,
    payload: &SoftSet,
) -> Result<SoftSet> {
    n_slab(product, factor_spaces, &[(index, payload)])
}

/// A soft n-slab: the intersection of finitely many slabs with distinct
/// factor indices.
pub fn n_slab(
    product: &ProductContext,
    factor_spaces: &[&SoftSpace],
    entries: &[(usize, &SoftSet)],
) -> Result<SoftSet> {
    check_factor_spaces(product, factor_spaces)?;
    check_entries(product, entries)?;
    for &(index, payload) in entries {
        if !factor_spaces[index].is_open(payload) {
            return Err(Error::NotOpenPayload);
        }
    }
    let mut acc = SoftSet::absolute(product.ctx());
    for &(index, payload) in entries {
        let projection = projection_mapping(product, index)?;
        acc = acc.intersection(&projection.inverse_image(payload)?)?;
    }
    Ok(acc)
}

/// The same n-slab written as a soft cartesian product: the listed factors
/// carry their payloads, every other factor carries its absolute soft set.
pub fn n_slab_product_form(
    product: &ProductContext,
    entries: &[(usize, &SoftSet)],
) -> Result<SoftSet> {
    check_entries(product, entries)?;
    let absolutes: Vec<SoftSet> = product.factors().iter().map(SoftSet::absolute).collect();
    let mut slots: Vec<&SoftSet> = absolutes.iter().collect();
    for &(index, payload) in entries {
        if !same_context(payload.ctx(), product.factor(index)) {
            return Err(Error::ContextMismatch);
        }
        slots[index] = payload;
    }
    product.product_soft_set(&slots)
}

fn check_entries(product: &ProductContext, entries: &[(usize, &SoftSet)]) -> Result<()> {
    if entries.is_empty() {
        return Err(Error::EmptyFamily);
    }
    let mut seen = vec![false; product.arity()];
    for &(index, _) in entries {
        if index >= product.arity() {
            return Err(Error::IndexOutOfRange {
                index,
                limit: product.arity(),
            });
        }
        if seen[index] {
            return Err(Error::DuplicateSlabIndex(index));
        }
        seen[index] = true;
    }
    Ok(())
}

fn check_factor_spaces(product: &ProductContext, factor_spaces: &[&SoftSpace]) -> Result<()> {
    if factor_spaces.len() != product.arity() {
        return Err(Error::FactorArityMismatch {
            expected: product.arity(),
            got: factor_spaces.len(),
        });
    }
    for (space, factor) in factor_spaces.iter().zip(product.factors()) {
        if !same_context(space.ctx(), factor) {
            return Err(Error::ContextMismatch);
        }
    }
    Ok(())
}

/// A family of factor spaces with their product context and the cached
/// n-slab base. The base is intersection-closed and contains null and
/// absolute, so the product topology is exactly its union closure; closure
/// and closedness queries work straight off the base.
#[derive(Debug, Clone)]
pub struct ProductOfSpaces {
    product: ProductContext,
    factors: Vec<SoftSpace>,
    base: Vec<SoftSet>,
}

impl ProductOfSpaces {
    pub fn new(factors: Vec<SoftSpace>) -> Result<ProductOfSpaces> {
        ProductOfSpaces::with_budget(factors, DEFAULT_CELL_BUDGET)
    }

    pub fn with_budget(factors: Vec<SoftSpace>, cell_budget: usize) -> Result<ProductOfSpaces> {
        let ctxs: Vec<Ctx> = factors.iter().map(|s| s.ctx().clone()).collect();
        let product = ProductContext::with_budget(&ctxs, cell_budget)?;
        let base = nslab_base(&product, &factors)?;
        Ok(ProductOfSpaces {
            product,
            factors,
            base,
        })
    }

    pub fn product_context(&self) -> &ProductContext {
        &self.product
    }

    pub fn ctx(&self) -> &Ctx {
        self.product.ctx()
    }

    pub fn factors(&self) -> &[SoftSpace] {
        &self.factors
    }

    /// The n-slab base, in canonical key order.
    pub fn base(&self) -> &[SoftSet] {
        &self.base
    }

    pub fn projection(&self, index: usize) -> Result<SoftMapping> {
        projection_mapping(&self.product, index)
    }

    /// Closure in the product topology, computed through the base: a point
    /// adheres exactly when every base member containing it meets the set.
    pub fn closure(&self, set: &SoftSet) -> Result<SoftSet> {
        if !same_context(set.ctx(), self.ctx()) {
            return Err(Error::ContextMismatch);
        }
        let mut out = SoftSet::null(self.ctx());
        for point in SoftPoint::grid(self.ctx()) {
            let adherent = self
                .base
                .iter()
                .all(|b| !point.belongs_to(b).unwrap() || b.meets(set).unwrap());
            if adherent {
                out.set_cell(point.param(), point.elem());
            }
        }
        Ok(out)
    }

    pub fn is_closed(&self, set: &SoftSet) -> Result<bool> {
        Ok(self.closure(set)? == *set)
    }

    /// Materializes the product topology as the union closure of the base.
    pub fn topology(&self, size_cap: usize) -> Result<SoftSpace> {
        let outcome = SoftTopology::generate_from_subbase_capped(self.ctx(), &self.base, size_cap)?;
        Ok(SoftSpace::new(outcome.topology))
    }
}

fn nslab_base(product: &ProductContext, factors: &[SoftSpace]) -> Result<Vec<SoftSet>> {
    let projections: Vec<SoftMapping> = (0..product.arity())
        .map(|i| projection_mapping(product, i))
        .collect::<Result<_>>()?;
    let mut base = std::collections::BTreeSet::new();
    let mut combo: Vec<usize> = vec![0; factors.len()];
    let opens_per_factor: Vec<Vec<&SoftSet>> =
        factors.iter().map(|s| s.opens().collect()).collect();
    loop {
        let mut member = SoftSet::absolute(product.ctx());
        for (i, projection) in projections.iter().enumerate() {
            let payload = opens_per_factor[i][combo[i]];
            member = member.intersection(&projection.inverse_image(payload)?)?;
        }
        base.insert(member);
        // odometer over open-set choices, last factor fastest
        let mut slot = factors.len();
        loop {
            if slot == 0 {
                return Ok(base.into_iter().collect());
            }
            slot -= 1;
            combo[slot] += 1;
            if combo[slot] < opens_per_factor[slot].len() {
                break;
            }
            combo[slot] = 0;
        }
    }
}

/// The soft product topology: the initial topology of the projections,
/// materialized. Returns the product context alongside the space.
pub fn product_topology(factor_spaces: &[&SoftSpace]) -> Result<(ProductContext, SoftSpace)> {
    product_topology_capped(factor_spaces, DEFAULT_CELL_BUDGET, DEFAULT_SIZE_CAP)
}

pub fn product_topology_capped(
    factor_spaces: &[&SoftSpace],
    cell_budget: usize,
    size_cap: usize,
) -> Result<(ProductContext, SoftSpace)> {
    let ctxs: Vec<Ctx> = factor_spaces.iter().map(|s| s.ctx().clone()).collect();
    let product = ProductContext::with_budget(&ctxs, cell_budget)?;
    let targets: Vec<(usize, SoftMapping)> = (0..product.arity())
        .map(|i| Ok((i, projection_mapping(&product, i)?)))
        .collect::<Result<_>>()?;
    let target_refs: Vec<(&SoftSpace, &SoftMapping)> = targets
        .iter()
        .map(|(i, m)| (factor_spaces[*i], m))
        .collect();
    let topology = continuity::initial_topology_capped(product.ctx(), &target_refs, size_cap)?;
    Ok((product, SoftSpace::new(topology)))
}

/// Compares the closure of a soft product against the soft product of the
/// factor closures; the two must agree.
pub fn closure_of_product_check(
    factor_spaces: &[&SoftSpace],
    factor_sets: &[&SoftSet],
) -> Result<bool> {
    let spaces: Vec<SoftSpace> = factor_spaces.iter().map(|s| (*s).clone()).collect();
    let product = ProductOfSpaces::new(spaces)?;
    let product_set = product.product_context().product_soft_set(factor_sets)?;
    let closure_of_product = product.closure(&product_set)?;

    let factor_closures: Vec<SoftSet> = factor_spaces
        .iter()
        .zip(factor_sets)
        .map(|(space, set)| space.closure(set))
        .collect::<Result<_>>()?;
    let closure_refs: Vec<&SoftSet> = factor_closures.iter().collect();
    let product_of_closures = product.product_context().product_soft_set(&closure_refs)?;
    Ok(closure_of_product == product_of_closures)
}

/// Both routes of the continuity-into-a-product characterization.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ProductContinuityCheck {
    /// Continuity of the mapping into the materialized product space.
    pub direct: bool,
    /// Continuity of every composition with a projection.
    pub via_projections: bool,
}

impl ProductContinuityCheck {
    pub fn agree(&self) -> bool {
        self.direct == self.via_projections
    }

    pub fn verdict(&self) -> bool {
        self.direct
    }
}

/// A mapping into a product is soft continuous exactly when each composition
/// with a projection is; both sides are computed independently.
pub fn continuity_into_product(
    mapping: &SoftMapping,
    domain: &SoftSpace,
    product: &ProductOfSpaces,
    product_space: &SoftSpace,
) -> Result<ProductContinuityCheck> {
    if !same_context(mapping.dst(), product.ctx())
        || !same_context(product_space.ctx(), product.ctx())
    {
        return Err(Error::ContextMismatch);
    }
    let direct = continuity::is_continuous(
        mapping,
        domain,
        product_space,
        ContinuityMethod::OpenPreimage,
    )?
    .verdict;
    let mut via_projections = true;
    for (i, factor_space) in product.factors().iter().enumerate() {
        let composition = compose(&product.projection(i)?, mapping)?;
        let report = continuity::is_continuous(
            &composition,
            domain,
            factor_space,
            ContinuityMethod::OpenPreimage,
        )?;
        if !report.verdict {
            via_projections = false;
            break;
        }
    }
    Ok(ProductContinuityCheck {
        direct,
        via_projections,
    })
}
