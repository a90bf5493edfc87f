//! Soft continuity in its three equivalent formulations, restriction to
//! subspaces, and initial topologies.

use crate::context::{same_context, Ctx};
use crate::error::{Error, Result};
use crate::mapping::SoftMapping;
use crate::soft_set::{SoftPoint, SoftSet};
use crate::topology::{SoftSpace, SoftTopology, Subspace, DEFAULT_SIZE_CAP};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ContinuityMethod {
    /// Quantifies over soft points and their open neighbourhoods.
    Pointwise,
    /// Every inverse image of an open set must be open.
    OpenPreimage,
    /// Every inverse image of a closed set must be closed.
    ClosedPreimage,
}

impl ContinuityMethod {
    pub fn name(self) -> &'static str {
        match self {
            ContinuityMethod::Pointwise => "pointwise",
            ContinuityMethod::OpenPreimage => "open-preimage",
            ContinuityMethod::ClosedPreimage => "closed-preimage",
        }
    }
}

/// First counterexample found, in canonical order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ContinuityWitness {
    /// The mapping is not soft continuous at this soft point.
    Point(SoftPoint),
    /// This open set has a non-open inverse image.
    Open(SoftSet),
    /// This closed set has a non-closed inverse image.
    Closed(SoftSet),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ContinuityReport {
    pub verdict: bool,
    pub method: ContinuityMethod,
    pub witness: Option<ContinuityWitness>,
}

/// Soft continuity at one soft point: every open set around the image point
/// admits an open set around the point whose image fits inside.
pub fn is_continuous_at(
    mapping: &SoftMapping,
    domain: &SoftSpace,
    codomain: &SoftSpace,
    point: &SoftPoint,
) -> Result<bool> {
    check_alignment(mapping, domain, codomain)?;
    if !same_context(point.ctx(), domain.ctx()) {
        return Err(Error::ContextMismatch);
    }
    let open_images: Vec<(&SoftSet, SoftSet)> = domain
        .opens()
        .map(|open| Ok((open, mapping.image(open)?)))
        .collect::<Result<_>>()?;
    continuous_at(mapping, codomain, point, &open_images)
}

fn continuous_at(
    mapping: &SoftMapping,
    codomain: &SoftSpace,
    point: &SoftPoint,
    open_images: &[(&SoftSet, SoftSet)],
) -> Result<bool> {
    let image_point = mapping.image_of_point(point)?;
    for target_open in codomain.opens() {
        if !image_point.belongs_to(target_open)? {
            continue;
        }
        let admissible = open_images.iter().any(|(open, image)| {
            point.belongs_to(open).unwrap() && image.is_subset(target_open).unwrap()
        });
        if !admissible {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Global soft continuity by the requested method. All three methods agree;
/// the witness is the first counterexample in canonical order.
pub fn is_continuous(
    mapping: &SoftMapping,
    domain: &SoftSpace,
    codomain: &SoftSpace,
    method: ContinuityMethod,
) -> Result<ContinuityReport> {
    check_alignment(mapping, domain, codomain)?;
    let witness = match method {
        ContinuityMethod::OpenPreimage => codomain
            .opens()
            .map(|open| Ok((open, domain.is_open(&mapping.inverse_image(open)?))))
            .collect::<Result<Vec<_>>>()?
            .into_iter()
            .find(|(_, ok)| !ok)
            .map(|(open, _)| ContinuityWitness::Open(open.clone())),
        ContinuityMethod::ClosedPreimage => codomain
            .closed_sets()
            .map(|closed| Ok((closed, domain.is_closed(&mapping.inverse_image(closed)?))))
            .collect::<Result<Vec<_>>>()?
            .into_iter()
            .find(|(_, ok)| !ok)
            .map(|(closed, _)| ContinuityWitness::Closed(closed.clone())),
        ContinuityMethod::Pointwise => {
            let open_images: Vec<(&SoftSet, SoftSet)> = domain
                .opens()
                .map(|open| Ok((open, mapping.image(open)?)))
                .collect::<Result<_>>()?;
            let mut found = None;
            for point in SoftPoint::grid(domain.ctx()) {
                if !continuous_at(mapping, codomain, &point, &open_images)? {
                    found = Some(ContinuityWitness::Point(point));
                    break;
                }
            }
            found
        }
    };
    Ok(ContinuityReport {
        verdict: witness.is_none(),
        method,
        witness,
    })
}

/// Restriction of a soft mapping to a subspace of its source: the universe
/// map restricts, the parameter map is unchanged.
pub fn restrict(mapping: &SoftMapping, subspace: &Subspace) -> Result<SoftMapping> {
    if !same_context(subspace.parent_ctx(), mapping.src()) {
        return Err(Error::ContextMismatch);
    }
    let phi = subspace
        .parent_elems()
        .iter()
        .map(|&e| mapping.phi()[e])
        .collect();
    SoftMapping::new(subspace.ctx(), mapping.dst(), phi, mapping.psi().to_vec())
}

/// The initial soft topology: generated by the subbase of all inverse images
/// of open sets of the target spaces. Every listed mapping is soft
/// continuous with respect to the result, and the result is the coarsest
/// such topology (every member derives from the subbase).
pub fn initial_topology(ctx: &Ctx, targets: &[(&SoftSpace, &SoftMapping)]) -> Result<SoftTopology> {
    initial_topology_capped(ctx, targets, DEFAULT_SIZE_CAP)
}

pub fn initial_topology_capped(
    ctx: &Ctx,
    targets: &[(&SoftSpace, &SoftMapping)],
    size_cap: usize,
) -> Result<SoftTopology> {
    let subbase = initial_subbase(ctx, targets)?;
    Ok(SoftTopology::generate_from_subbase_capped(ctx, &subbase, size_cap)?.topology)
}

/// The subbase the initial topology is generated from.
pub fn initial_subbase(ctx: &Ctx, targets: &[(&SoftSpace, &SoftMapping)]) -> Result<Vec<SoftSet>> {
    let mut subbase = Vec::new();
    for (space, mapping) in targets {
        if !same_context(mapping.src(), ctx) || !same_context(mapping.dst(), space.ctx()) {
            return Err(Error::ContextMismatch);
        }
        for open in space.opens() {
            subbase.push(mapping.inverse_image(open)?);
        }
    }
    Ok(subbase)
}

fn check_alignment(mapping: &SoftMapping, domain: &SoftSpace, codomain: &SoftSpace) -> Result<()> {
    if same_context(mapping.src(), domain.ctx()) && same_context(mapping.dst(), codomain.ctx()) {
        Ok(())
    } else {
        Err(Error::ContextMismatch)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::context::Context;
    use crate::topology::SoftTopology;

    fn ctx2x2() -> Ctx {
        Context::from_labels(&["a", "b"], &["e1", "e2"]).unwrap()
    }

    fn three_open_space(ctx: &Ctx) -> SoftSpace {
        let f1 = SoftSet::from_rows(ctx, &[vec![0], vec![0]]).unwrap();
        let opens = vec![SoftSet::null(ctx), SoftSet::absolute(ctx), f1];
        SoftSpace::new(SoftTopology::try_new(ctx, opens).unwrap())
    }

    #[test]
    fn identity_is_continuous_everywhere() {
        let ctx = ctx2x2();
        let space = three_open_space(&ctx);
        let id = SoftMapping::identity(&ctx);
        for method in [
            ContinuityMethod::Pointwise,
            ContinuityMethod::OpenPreimage,
            ContinuityMethod::ClosedPreimage,
        ] {
            let report = is_continuous(&id, &space, &space, method).unwrap();
            assert!(report.verdict);
            assert!(report.witness.is_none());
        }
        for p in SoftPoint::grid(&ctx) {
            assert!(is_continuous_at(&id, &space, &space, &p).unwrap());
        }
    }

    #[test]
    fn any_map_into_indiscrete_is_continuous() {
        let ctx = ctx2x2();
        let domain = SoftSpace::indiscrete(&ctx);
        let codomain = SoftSpace::indiscrete(&ctx);
        let m = SoftMapping::new(&ctx, &ctx, vec![0, 0], vec![1, 0]).unwrap();
        for p in SoftPoint::grid(&ctx) {
            assert!(is_continuous_at(&m, &domain, &codomain, &p).unwrap());
        }
        assert!(
            is_continuous(&m, &domain, &codomain, ContinuityMethod::Pointwise)
                .unwrap()
                .verdict
        );
    }

    #[test]
    fn coarse_to_fine_identity_fails_with_witness() {
        let ctx = ctx2x2();
        let coarse = SoftSpace::indiscrete(&ctx);
        let fine = SoftSpace::discrete(&ctx).unwrap();
        let id = SoftMapping::identity(&ctx);
        let report = is_continuous(&id, &coarse, &fine, ContinuityMethod::OpenPreimage).unwrap();
        assert!(!report.verdict);
        match report.witness {
            Some(ContinuityWitness::Open(open)) => {
                assert!(fine.is_open(&open));
                assert!(!coarse.is_open(&open));
            }
            other => panic!("expected open witness, got {other:?}"),
        }
        // Pointwise agrees and reports a point.
        let pointwise = is_continuous(&id, &coarse, &fine, ContinuityMethod::Pointwise).unwrap();
        assert!(!pointwise.verdict);
        assert!(matches!(
            pointwise.witness,
            Some(ContinuityWitness::Point(_))
        ));
    }

    #[test]
    fn constant_map_is_always_continuous() {
        let ctx = ctx2x2();
        let domain = SoftSpace::indiscrete(&ctx);
        let codomain = three_open_space(&ctx);
        let constant = SoftMapping::new(&ctx, &ctx, vec![0, 0], vec![0, 0]).unwrap();
        let report = is_continuous(
            &constant,
            &domain,
            &codomain,
            ContinuityMethod::OpenPreimage,
        )
        .unwrap();
        assert!(report.verdict);
    }

    #[test]
    fn restriction_preserves_continuity() {
        let ctx = ctx2x2();
        let space = three_open_space(&ctx);
        let id = SoftMapping::identity(&ctx);
        let sub = space.subspace(&[0]).unwrap();
        let restricted = restrict(&id, &sub).unwrap();
        assert_eq!(restricted, sub.inclusion_mapping());
        let report = is_continuous(
            &restricted,
            sub.space(),
            &space,
            ContinuityMethod::OpenPreimage,
        )
        .unwrap();
        assert!(report.verdict);

        // Restricting to the full universe keeps the same tables.
        let full = space.subspace(&[0, 1]).unwrap();
        let same = restrict(&id, &full).unwrap();
        assert_eq!(same.phi(), id.phi());
        assert_eq!(same.psi(), id.psi());
    }

    #[test]
    fn initial_topology_of_identity_is_the_target_topology() {
        let ctx = ctx2x2();
        let space = three_open_space(&ctx);
        let id = SoftMapping::identity(&ctx);
        let initial = initial_topology(&ctx, &[(&space, &id)]).unwrap();
        assert_eq!(&initial, space.topology());
    }

    #[test]
    fn empty_target_list_gives_indiscrete() {
        let ctx = ctx2x2();
        let initial = initial_topology(&ctx, &[]).unwrap();
        assert_eq!(initial, SoftTopology::indiscrete(&ctx));
    }

    #[test]
    fn initial_topology_makes_all_mappings_continuous() {
        let src = Context::from_labels(&["a", "b"], &["e"]).unwrap();
        let dst1 = Context::from_labels(&["x", "y"], &["d"]).unwrap();
        let dst2 = Context::from_labels(&["p", "q"], &["r"]).unwrap();
        let s1 = SoftSpace::new(
            SoftTopology::try_new(
                &dst1,
                vec![
                    SoftSet::null(&dst1),
                    SoftSet::absolute(&dst1),
                    SoftSet::from_rows(&dst1, &[vec![0]]).unwrap(),
                ],
            )
            .unwrap(),
        );
        let s2 = SoftSpace::new(
            SoftTopology::try_new(
                &dst2,
                vec![
                    SoftSet::null(&dst2),
                    SoftSet::absolute(&dst2),
                    SoftSet::from_rows(&dst2, &[vec![1]]).unwrap(),
                ],
            )
            .unwrap(),
        );
        let m1 = SoftMapping::new(&src, &dst1, vec![0, 1], vec![0]).unwrap();
        let m2 = SoftMapping::new(&src, &dst2, vec![1, 1], vec![0]).unwrap();
        let initial = initial_topology(&src, &[(&s1, &m1), (&s2, &m2)]).unwrap();
        let domain = SoftSpace::new(initial.clone());
        for (space, mapping) in [(&s1, &m1), (&s2, &m2)] {
            let report =
                is_continuous(mapping, &domain, space, ContinuityMethod::OpenPreimage).unwrap();
            assert!(report.verdict);
        }
        // Minimality: every member derives from the subbase.
        let subbase = initial_subbase(&src, &[(&s1, &m1), (&s2, &m2)]).unwrap();
        assert!(initial.verify_generated_by(&subbase).is_ok());
    }
}
