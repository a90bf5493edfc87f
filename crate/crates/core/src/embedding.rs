//! Homeomorphisms, embeddings, closed mappings, diagonal mappings,
//! separation of points and of points from closed sets, and the embedding
//! lemma verifier.
//!
//! The verifier checks the hypotheses first and asserts only the
//! implication: when every mapping of the family is soft continuous and the
//! family separates soft points and soft points from soft closed sets, the
//! diagonal mapping must certify as an embedding; a counterexample is
//! surfaced as [`Error::LemmaViolation`] with the full report attached.

use crate::context::{same_context, Context, Ctx};
use crate::continuity::{self, ContinuityMethod};
use crate::error::{Error, Result};
use crate::mapping::{compose, SoftMapping};
use crate::product::{ProductContext, DEFAULT_CELL_BUDGET};
use crate::product_topology::ProductOfSpaces;
use crate::soft_set::{SoftPoint, SoftSet};
use crate::topology::{SoftSpace, SoftTopology, DEFAULT_SIZE_CAP};

/// Products with at most this many cells are materialized for embedding
/// certificates; larger ones are handled through the n-slab base.
const MATERIALIZE_CELL_LIMIT: usize = 12;

/// True when the soft image of every soft closed set of the domain is soft
/// closed in the codomain.
pub fn is_closed_mapping(
    mapping: &SoftMapping,
    domain: &SoftSpace,
    codomain: &SoftSpace,
) -> Result<bool> {
    check_alignment(mapping, domain, codomain)?;
    for closed in domain.closed_sets() {
        if !codomain.is_closed(&mapping.image(closed)?) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Bijective, soft continuous, with a soft continuous inverse.
pub fn is_homeomorphism(
    mapping: &SoftMapping,
    domain: &SoftSpace,
    codomain: &SoftSpace,
) -> Result<bool> {
    check_alignment(mapping, domain, codomain)?;
    if !mapping.is_bijective() {
        return Ok(false);
    }
    let forward =
        continuity::is_continuous(mapping, domain, codomain, ContinuityMethod::OpenPreimage)?;
    if !forward.verdict {
        return Ok(false);
    }
    let inverse = mapping.inverse()?;
    let backward =
        continuity::is_continuous(&inverse, codomain, domain, ContinuityMethod::OpenPreimage)?;
    Ok(backward.verdict)
}

/// How an embedding certificate was verified.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EmbeddingRoute {
    /// The corestriction onto the image subspace was bijective, so it was
    /// checked to be a soft homeomorphism outright.
    CorestrictionHomeomorphism,
    /// Checked as soft continuous, injective, and closed into the image
    /// subspace.
    ContinuousInjectiveClosed,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EmbeddingCertificate {
    pub continuous: bool,
    pub injective: bool,
    pub closed_into_image: bool,
    pub route: EmbeddingRoute,
    pub overall: bool,
}

impl EmbeddingCertificate {
    fn conclude(
        continuous: bool,
        injective: bool,
        closed_into_image: bool,
        route: EmbeddingRoute,
    ) -> EmbeddingCertificate {
        EmbeddingCertificate {
            continuous,
            injective,
            closed_into_image,
            route,
            overall: continuous && injective && closed_into_image,
        }
    }
}

/// The image subspace of a mapping: the codomain traced onto the cells the
/// mapping can reach, i.e. universe restricted to the image of the universe
/// map and parameters restricted to the image of the parameter map. Its
/// opens are the restrictions of the codomain's opens; its closure is the
/// parent closure intersected with the carrier rectangle.
#[derive(Debug, Clone)]
pub struct ImageSubspace {
    space: SoftSpace,
    parent_ctx: Ctx,
    parent_elems: Vec<usize>,
    parent_params: Vec<usize>,
}

impl ImageSubspace {
    pub fn space(&self) -> &SoftSpace {
        &self.space
    }

    pub fn ctx(&self) -> &Ctx {
        self.space.ctx()
    }

    /// Parent universe indices backing the subspace elements, ascending.
    pub fn parent_elems(&self) -> &[usize] {
        &self.parent_elems
    }

    /// Parent parameter indices backing the subspace parameters, ascending.
    pub fn parent_params(&self) -> &[usize] {
        &self.parent_params
    }

    /// Traces a parent soft set onto the subspace cells.
    pub fn restrict(&self, set: &SoftSet) -> Result<SoftSet> {
        if !same_context(set.ctx(), &self.parent_ctx) {
            return Err(Error::ContextMismatch);
        }
        Ok(SoftSet::from_fn(self.space.ctx(), |param, elem| {
            set.contains(self.parent_params[param], self.parent_elems[elem])
        }))
    }

    /// The reachable-cell rectangle as a soft set over the parent context.
    pub fn carrier(&self) -> SoftSet {
        carrier_rectangle(&self.parent_ctx, &self.parent_params, &self.parent_elems)
    }
}

fn carrier_rectangle(ctx: &Ctx, params: &[usize], elems: &[usize]) -> SoftSet {
    SoftSet::from_fn(ctx, |param, elem| {
        params.binary_search(&param).is_ok() && elems.binary_search(&elem).is_ok()
    })
}

/// Builds the image subspace of a mapping inside a codomain space, together
/// with the corestricted mapping into it. The corestriction is bijective
/// exactly when the mapping is injective.
pub fn corestriction(
    mapping: &SoftMapping,
    codomain: &SoftSpace,
) -> Result<(ImageSubspace, SoftMapping)> {
    if !same_context(mapping.dst(), codomain.ctx()) {
        return Err(Error::ContextMismatch);
    }
    let mut image_elems: Vec<usize> = mapping.phi().to_vec();
    image_elems.sort_unstable();
    image_elems.dedup();
    let mut image_params: Vec<usize> = mapping.psi().to_vec();
    image_params.sort_unstable();
    image_params.dedup();

    let universe = image_elems
        .iter()
        .map(|&e| codomain.ctx().elem_label(e).to_string())
        .collect();
    let params = image_params
        .iter()
        .map(|&p| codomain.ctx().param_label(p).to_string())
        .collect();
    let sub_ctx = Context::new(universe, params)?;

    let opens: Vec<SoftSet> = codomain
        .opens()
        .map(|open| {
            SoftSet::from_fn(&sub_ctx, |param, elem| {
                open.contains(image_params[param], image_elems[elem])
            })
        })
        .collect();
    let sub = ImageSubspace {
        space: SoftSpace::new(SoftTopology::try_new(&sub_ctx, opens)?),
        parent_ctx: codomain.ctx().clone(),
        parent_elems: image_elems.clone(),
        parent_params: image_params.clone(),
    };

    let phi = mapping
        .phi()
        .iter()
        .map(|v| image_elems.binary_search(v).expect("image element present"))
        .collect();
    let psi = mapping
        .psi()
        .iter()
        .map(|v| {
            image_params
                .binary_search(v)
                .expect("image parameter present")
        })
        .collect();
    let corestricted = SoftMapping::new(mapping.src(), sub.ctx(), phi, psi)?;
    Ok((sub, corestricted))
}

/// Certifies whether a mapping is a soft embedding: its corestriction onto
/// the image subspace must be a soft homeomorphism. When the mapping is
/// injective the corestriction is bijective and the homeomorphism is
/// checked outright; otherwise the certificate falls back to the
/// conjunction of soft continuity, injectivity, and closedness into the
/// image subspace.
pub fn is_embedding(
    mapping: &SoftMapping,
    domain: &SoftSpace,
    codomain: &SoftSpace,
) -> Result<EmbeddingCertificate> {
    check_alignment(mapping, domain, codomain)?;
    let continuous =
        continuity::is_continuous(mapping, domain, codomain, ContinuityMethod::OpenPreimage)?
            .verdict;
    let injective = mapping.is_injective();
    let (sub, corestricted) = corestriction(mapping, codomain)?;
    let mut closed_into_image = true;
    for closed in domain.closed_sets() {
        if !sub.space().is_closed(&corestricted.image(closed)?) {
            closed_into_image = false;
            break;
        }
    }
    let route = if injective {
        let homeo = is_homeomorphism(&corestricted, domain, sub.space())?;
        debug_assert_eq!(homeo, continuous && injective && closed_into_image);
        EmbeddingRoute::CorestrictionHomeomorphism
    } else {
        EmbeddingRoute::ContinuousInjectiveClosed
    };
    Ok(EmbeddingCertificate::conclude(
        continuous,
        injective,
        closed_into_image,
        route,
    ))
}

/// The soft diagonal mapping of a nonempty family sharing one source: each
/// element goes to the tuple of its component images, likewise each
/// parameter.
pub fn diagonal_mapping(
    product: &ProductContext,
    mappings: &[&SoftMapping],
) -> Result<SoftMapping> {
    if mappings.is_empty() {
        return Err(Error::EmptyFamily);
    }
    if mappings.len() != product.arity() {
        return Err(Error::FactorArityMismatch {
            expected: product.arity(),
            got: mappings.len(),
        });
    }
    let src = mappings[0].src();
    for (mapping, factor) in mappings.iter().zip(product.factors()) {
        if !same_context(mapping.src(), src) || !same_context(mapping.dst(), factor) {
            return Err(Error::ContextMismatch);
        }
    }
    let phi = (0..src.universe_len())
        .map(|u| {
            let components: Vec<usize> = mappings.iter().map(|m| m.phi()[u]).collect();
            product.encode_elem(&components)
        })
        .collect();
    let psi = (0..src.params_len())
        .map(|e| {
            let components: Vec<usize> = mappings.iter().map(|m| m.psi()[e]).collect();
            product.encode_param(&components)
        })
        .collect();
    SoftMapping::new(src, product.ctx(), phi, psi)
}

/// Whether a family of soft mappings separates soft points, and soft points
/// from soft closed sets, with first witnesses in canonical order.
#[derive(Debug, Clone, PartialEq)]
pub struct SeparationReport {
    pub separates_points: bool,
    pub point_witness: Option<(SoftPoint, SoftPoint)>,
    pub separates_points_from_closed: bool,
    pub closed_witness: Option<(SoftSet, SoftPoint)>,
}

/// Evaluates both separation properties of a family of mappings out of a
/// soft space.
pub fn separation_report(
    domain: &SoftSpace,
    targets: &[(&SoftSpace, &SoftMapping)],
) -> Result<SeparationReport> {
    for (space, mapping) in targets {
        if !same_context(mapping.src(), domain.ctx()) || !same_context(mapping.dst(), space.ctx()) {
            return Err(Error::ContextMismatch);
        }
    }
    let grid = SoftPoint::grid(domain.ctx());

    let mut point_witness = None;
    'pairs: for (i, p) in grid.iter().enumerate() {
        for q in &grid[i + 1..] {
            let separated = targets
                .iter()
                .any(|(_, m)| m.image_of_point(p).unwrap() != m.image_of_point(q).unwrap());
            if !separated {
                point_witness = Some((p.clone(), q.clone()));
                break 'pairs;
            }
        }
    }

    let mut closed_witness = None;
    'closeds: for closed in domain.closed_sets() {
        // Per-target closure of the image of this closed set.
        let image_closures: Vec<SoftSet> = targets
            .iter()
            .map(|(space, m)| space.closure(&m.image(closed)?))
            .collect::<Result<_>>()?;
        for point in &grid {
            if point.belongs_to(closed)? {
                continue;
            }
            let separated = targets
                .iter()
                .zip(&image_closures)
                .any(|((_, m), cl)| !m.image_of_point(point).unwrap().belongs_to(cl).unwrap());
            if !separated {
                closed_witness = Some((closed.clone(), point.clone()));
                break 'closeds;
            }
        }
    }

    Ok(SeparationReport {
        separates_points: point_witness.is_none(),
        point_witness,
        separates_points_from_closed: closed_witness.is_none(),
        closed_witness,
    })
}

/// Everything the embedding lemma verifier observed on one instance.
#[derive(Debug, Clone, PartialEq)]
pub struct LemmaReport {
    /// Soft continuity of each target mapping, in target order.
    pub map_continuity: Vec<bool>,
    pub separation: SeparationReport,
    /// All mappings continuous and both separation properties hold.
    pub hypotheses_hold: bool,
    pub diagonal: EmbeddingCertificate,
    /// The diagonal image of every checked soft set is soft contained in the
    /// soft product of its component images.
    pub diagonal_image_in_product: bool,
}

/// Runs the full embedding lemma check for a space and a family of target
/// (space, mapping) pairs. Returns `Error::LemmaViolation` carrying the
/// report when the hypotheses hold but the diagonal fails to certify.
pub fn verify_embedding_lemma(
    domain: &SoftSpace,
    targets: &[(&SoftSpace, &SoftMapping)],
) -> Result<LemmaReport> {
    verify_embedding_lemma_capped(domain, targets, DEFAULT_CELL_BUDGET, DEFAULT_SIZE_CAP)
}

pub fn verify_embedding_lemma_capped(
    domain: &SoftSpace,
    targets: &[(&SoftSpace, &SoftMapping)],
    cell_budget: usize,
    size_cap: usize,
) -> Result<LemmaReport> {
    if targets.is_empty() {
        return Err(Error::EmptyFamily);
    }
    let map_continuity: Vec<bool> = targets
        .iter()
        .map(|(space, mapping)| {
            Ok(
                continuity::is_continuous(mapping, domain, space, ContinuityMethod::OpenPreimage)?
                    .verdict,
            )
        })
        .collect::<Result<_>>()?;
    let separation = separation_report(domain, targets)?;
    let hypotheses_hold = map_continuity.iter().all(|&c| c)
        && separation.separates_points
        && separation.separates_points_from_closed;

    let factor_spaces: Vec<SoftSpace> = targets.iter().map(|(s, _)| (*s).clone()).collect();
    let product = ProductOfSpaces::with_budget(factor_spaces, cell_budget)?;
    let mappings: Vec<&SoftMapping> = targets.iter().map(|(_, m)| *m).collect();
    let diagonal = diagonal_mapping(product.product_context(), &mappings)?;

    let diagonal_cert = if product.ctx().cells() <= MATERIALIZE_CELL_LIMIT {
        let product_space = product.topology(size_cap)?;
        is_embedding(&diagonal, domain, &product_space)?
    } else {
        embedding_certificate_via_base(&diagonal, domain, &product)?
    };

    let diagonal_image_in_product =
        diagonal_image_inclusion(domain, &product, &mappings, &diagonal)?;

    let report = LemmaReport {
        map_continuity,
        separation,
        hypotheses_hold,
        diagonal: diagonal_cert,
        diagonal_image_in_product,
    };
    if report.hypotheses_hold && !report.diagonal.overall {
        return Err(Error::LemmaViolation(Box::new(report)));
    }
    Ok(report)
}

/// Base-level certificate for a diagonal into a product too large to
/// materialize: continuity through the projection compositions, and
/// closedness into the image subspace through base-driven closures.
fn embedding_certificate_via_base(
    diagonal: &SoftMapping,
    domain: &SoftSpace,
    product: &ProductOfSpaces,
) -> Result<EmbeddingCertificate> {
    let mut continuous = true;
    for (i, factor_space) in product.factors().iter().enumerate() {
        let composition = compose(&product.projection(i)?, diagonal)?;
        if !continuity::is_continuous(
            &composition,
            domain,
            factor_space,
            ContinuityMethod::OpenPreimage,
        )?
        .verdict
        {
            continuous = false;
            break;
        }
    }
    let injective = diagonal.is_injective();

    // S is closed in the image subspace iff cl(S) meet carrier == S, where
    // the carrier is the rectangle of reachable cells.
    let mut image_elems: Vec<usize> = diagonal.phi().to_vec();
    image_elems.sort_unstable();
    image_elems.dedup();
    let mut image_params: Vec<usize> = diagonal.psi().to_vec();
    image_params.sort_unstable();
    image_params.dedup();
    let carrier = carrier_rectangle(product.ctx(), &image_params, &image_elems);
    let mut closed_into_image = true;
    for closed in domain.closed_sets() {
        let image = diagonal.image(closed)?;
        let relative_closure = product.closure(&image)?.intersection(&carrier)?;
        if relative_closure != image {
            closed_into_image = false;
            break;
        }
    }
    Ok(EmbeddingCertificate::conclude(
        continuous,
        injective,
        closed_into_image,
        EmbeddingRoute::ContinuousInjectiveClosed,
    ))
}

/// The diagonal image of a soft set is soft contained in the soft product of
/// its component images; exhaustive over all soft sets of the domain when
/// small, sampled deterministically otherwise.
fn diagonal_image_inclusion(
    domain: &SoftSpace,
    product: &ProductOfSpaces,
    mappings: &[&SoftMapping],
    diagonal: &SoftMapping,
) -> Result<bool> {
    let cells = domain.ctx().cells();
    let sets: Vec<SoftSet> = if cells <= 8 {
        (0..(1u32 << cells))
            .map(|mask| {
                SoftSet::from_fn(domain.ctx(), |param, elem| {
                    mask >> (param * domain.ctx().universe_len() + elem) & 1 == 1
                })
            })
            .collect()
    } else {
        // Deterministic sample: a fixed stride through the mask space.
        (0..256u64)
            .map(|i| {
                let mask = i.wrapping_mul(0x9e37_79b9_7f4a_7c15);
                SoftSet::from_fn(domain.ctx(), |param, elem| {
                    mask >> ((param * domain.ctx().universe_len() + elem) % 64) & 1 == 1
                })
            })
            .collect()
    };
    for set in &sets {
        let lhs = diagonal.image(set)?;
        let images: Vec<SoftSet> = mappings
            .iter()
            .map(|m| m.image(set))
            .collect::<Result<_>>()?;
        let image_refs: Vec<&SoftSet> = images.iter().collect();
        let rhs = product.product_context().product_soft_set(&image_refs)?;
        if !lhs.is_subset(&rhs)? {
            return Ok(false);
        }
    }
    Ok(true)
}

fn check_alignment(mapping: &SoftMapping, domain: &SoftSpace, codomain: &SoftSpace) -> Result<()> {
    if same_context(mapping.src(), domain.ctx()) && same_context(mapping.dst(), codomain.ctx()) {
        Ok(())
    } else {
        Err(Error::ContextMismatch)
    }
}
