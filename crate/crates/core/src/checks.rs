//! The differential property battery: each function verifies one family of
//! laws on a concrete instance and reports the first counterexample with a
//! printable witness. The fuzz harness, the integration suites, and the
//! acceptance gate all drive these same checks over seeded corpora.

use std::fmt;

use crate::context::Ctx;
use crate::continuity::{self, ContinuityMethod};
use crate::embedding::{self, LemmaReport};
use crate::error::{Error, Result};
use crate::mapping::SoftMapping;
use crate::oracle;
use crate::product::ProductContext;
use crate::product_topology::{
    self, closure_of_product_check, n_slab, n_slab_product_form, ProductOfSpaces,
};
use crate::soft_set::{SoftPoint, SoftSet};
use crate::topology::{SoftSpace, DEFAULT_SIZE_CAP};

/// A failed property with a deterministic, human-readable witness.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Failure {
    pub property: &'static str,
    pub detail: String,
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "property {}: {}", self.property, self.detail)
    }
}

pub type Check = std::result::Result<(), Failure>;

fn fail(property: &'static str, detail: String) -> Check {
    Err(Failure { property, detail })
}

fn ensure(condition: bool, property: &'static str, detail: impl Fn() -> String) -> Check {
    if condition {
        Ok(())
    } else {
        fail(property, detail())
    }
}

/// Identities of union and intersection with null and absolute, complement
/// involution, difference as intersection with the complement, and the
/// generalized De Morgan duals, exhaustively over every soft set (and pair,
/// and small triple) of the context.
pub fn set_algebra_laws(ctx: &Ctx) -> Check {
    const P: &str = "set-algebra-laws";
    let sets = enumerate(ctx, P)?;
    let null = SoftSet::null(ctx);
    let absolute = SoftSet::absolute(ctx);
    for f in &sets {
        let witness = || format!("F = {f}");
        ensure(&f.union(f).unwrap() == f, P, witness)?;
        ensure(&f.union(&null).unwrap() == f, P, witness)?;
        ensure(f.union(&absolute).unwrap() == absolute, P, witness)?;
        ensure(&f.intersection(f).unwrap() == f, P, witness)?;
        ensure(f.intersection(&null).unwrap() == null, P, witness)?;
        ensure(&f.intersection(&absolute).unwrap() == f, P, witness)?;
        ensure(&f.complement().complement() == f, P, witness)?;
    }
    for f in &sets {
        for g in &sets {
            let witness = |law: &str| format!("{law} failed for F = {f}, G = {g}");
            if f.difference(g).unwrap() != f.intersection(&g.complement()).unwrap() {
                return fail(P, witness("difference-as-complement"));
            }
            let family = [f, g];
            let union_then_complement = SoftSet::big_union(family).unwrap().complement();
            let complements = [f.complement(), g.complement()];
            if union_then_complement != SoftSet::big_intersection(&complements).unwrap() {
                return fail(P, witness("de-morgan-union"));
            }
            let intersection_then_complement =
                SoftSet::big_intersection(family).unwrap().complement();
            if intersection_then_complement != SoftSet::big_union(&complements).unwrap() {
                return fail(P, witness("de-morgan-intersection"));
            }
        }
    }
    // Triples cover the generalized forms beyond pairs; keep them to small
    // contexts so the sweep stays cubic in at most sixteen sets.
    if sets.len() <= 16 {
        for f in &sets {
            for g in &sets {
                for h in &sets {
                    let family = [f, g, h];
                    let lhs = SoftSet::big_union(family).unwrap().complement();
                    let complements = [f.complement(), g.complement(), h.complement()];
                    let rhs = SoftSet::big_intersection(&complements).unwrap();
                    if lhs != rhs {
                        return fail(P, format!("de-morgan triple {f}, {g}, {h}"));
                    }
                }
            }
        }
    }
    Ok(())
}

/// Soft inclusion agrees with pointwise membership, and soft equality with
/// mutual inclusion, exhaustively over all pairs.
pub fn subset_point_criterion(ctx: &Ctx) -> Check {
    const P: &str = "subset-point-criterion";
    let sets = enumerate(ctx, P)?;
    for f in &sets {
        let points = f.enumerate_points();
        for g in &sets {
            let by_rows = f.is_subset(g).unwrap();
            let by_points = points.iter().all(|p| p.belongs_to(g).unwrap());
            if by_rows != by_points {
                return fail(
                    P,
                    format!("subset({f}, {g}) = {by_rows} but pointwise gives {by_points}"),
                );
            }
            let equal = f == g;
            let mutual = by_rows && g.is_subset(f).unwrap();
            if equal != mutual {
                return fail(P, format!("equality/mutual-inclusion split on {f}, {g}"));
            }
        }
    }
    Ok(())
}

/// Closure by closed supersets agrees with the adherent-point oracle on
/// every soft set of the space.
pub fn closure_differential(space: &SoftSpace) -> Check {
    const P: &str = "closure-adherence-differential";
    let sets = enumerate(space.ctx(), P)?;
    for f in &sets {
        let by_supersets = space.closure(f).unwrap();
        let by_adherence = oracle::closure_via_adherence(space, f).unwrap();
        if by_supersets != by_adherence {
            return fail(
                P,
                format!(
                    "closure({f}) = {by_supersets} by closed supersets \
                     but {by_adherence} by adherent points"
                ),
            );
        }
    }
    Ok(())
}

/// The closure operator laws: null and absolute are fixed, every soft set
/// sits inside its closure, closed sets are exactly the fixed points,
/// closure is idempotent and monotone, closure distributes over union, and
/// closure of an intersection is contained in the intersection of closures.
pub fn closure_operator_laws(space: &SoftSpace) -> Check {
    const P: &str = "closure-operator-laws";
    let ctx = space.ctx();
    let sets = enumerate(ctx, P)?;
    let closures: Vec<SoftSet> = sets.iter().map(|f| space.closure(f).unwrap()).collect();
    let index_of = |set: &SoftSet| set_index(ctx, set);

    ensure(closures[index_of(&SoftSet::null(ctx))].is_null(), P, || {
        "closure(null) != null".to_string()
    })?;
    ensure(
        closures[index_of(&SoftSet::absolute(ctx))].is_absolute(),
        P,
        || "closure(absolute) != absolute".to_string(),
    )?;
    for (f, cl_f) in sets.iter().zip(&closures) {
        if !f.is_subset(cl_f).unwrap() {
            return fail(P, format!("{f} not contained in its closure {cl_f}"));
        }
        let fixed = cl_f == f;
        if fixed != space.is_closed(f) {
            return fail(P, format!("fixed-point/closedness split on {f}"));
        }
        if &closures[index_of(cl_f)] != cl_f {
            return fail(P, format!("closure not idempotent on {f}"));
        }
    }
    for (f, cl_f) in sets.iter().zip(&closures) {
        for (g, cl_g) in sets.iter().zip(&closures) {
            if f.is_subset(g).unwrap() && !cl_f.is_subset(cl_g).unwrap() {
                return fail(P, format!("closure not monotone on {f} inside {g}"));
            }
            let cl_union = &closures[index_of(&f.union(g).unwrap())];
            if cl_union != &cl_f.union(cl_g).unwrap() {
                return fail(P, format!("closure of union differs on {f}, {g}"));
            }
            let cl_meet = &closures[index_of(&f.intersection(g).unwrap())];
            if !cl_meet
                .is_subset(&cl_f.intersection(cl_g).unwrap())
                .unwrap()
            {
                return fail(
                    P,
                    format!("closure of intersection not contained on {f}, {g}"),
                );
            }
        }
    }
    Ok(())
}

/// All three continuity formulations agree, and a witness is present exactly
/// when the verdict is negative.
pub fn continuity_equivalence(
    mapping: &SoftMapping,
    domain: &SoftSpace,
    codomain: &SoftSpace,
) -> Check {
    const P: &str = "continuity-method-agreement";
    let mut verdicts = Vec::new();
    for method in [
        ContinuityMethod::Pointwise,
        ContinuityMethod::OpenPreimage,
        ContinuityMethod::ClosedPreimage,
    ] {
        let report =
            continuity::is_continuous(mapping, domain, codomain, method).map_err(|e| Failure {
                property: P,
                detail: e.to_string(),
            })?;
        ensure(report.verdict == report.witness.is_none(), P, || {
            format!("witness presence inconsistent for {}", method.name())
        })?;
        verdicts.push((method, report.verdict));
    }
    let first = verdicts[0].1;
    for (method, verdict) in &verdicts {
        if *verdict != first {
            return fail(
                P,
                format!(
                    "{} says {} but {} says {}",
                    verdicts[0].0.name(),
                    first,
                    method.name(),
                    verdict
                ),
            );
        }
    }
    Ok(())
}

/// Subspace laws: the closed sets of the subspace are exactly the
/// restrictions of the parent's closed sets, and the subspace closure is the
/// parent closure intersected with the carrier.
pub fn subspace_laws(parent: &SoftSpace, selected: &[usize]) -> Check {
    const P: &str = "subspace-laws";
    let sub = parent.subspace(selected).map_err(|e| Failure {
        property: P,
        detail: e.to_string(),
    })?;

    let mut restricted: Vec<SoftSet> = parent
        .closed_sets()
        .map(|c| sub.restrict(c).unwrap())
        .collect();
    restricted.sort();
    restricted.dedup();
    let sub_closeds: Vec<SoftSet> = sub.space().closed_sets().cloned().collect();
    if restricted != sub_closeds {
        return fail(
            P,
            format!(
                "restricted parent closed sets differ from subspace closed sets \
                 over carrier {}",
                sub.carrier()
            ),
        );
    }

    let carrier = sub.carrier();
    for g in enumerate(sub.ctx(), P)? {
        let lhs = sub.extend(&sub.space().closure(&g).unwrap()).unwrap();
        let extended = sub.extend(&g).unwrap();
        let rhs = parent
            .closure(&extended)
            .unwrap()
            .intersection(&carrier)
            .unwrap();
        if lhs != rhs {
            return fail(
                P,
                format!("subspace closure of {g} is {lhs}, parent route gives {rhs}"),
            );
        }
    }
    Ok(())
}

/// Slab identities on a two-factor product: the projection-preimage form
/// and the product form of every slab and every 2-slab coincide.
pub fn slab_form_agreement(left: &SoftSpace, right: &SoftSpace) -> Check {
    const P: &str = "slab-form-agreement";
    let product =
        ProductContext::new(&[left.ctx().clone(), right.ctx().clone()]).map_err(|e| Failure {
            property: P,
            detail: e.to_string(),
        })?;
    let spaces = [left, right];
    for (index, space) in spaces.iter().enumerate() {
        for payload in space.opens() {
            let via_preimage = n_slab(&product, &spaces, &[(index, payload)]).unwrap();
            let via_product = n_slab_product_form(&product, &[(index, payload)]).unwrap();
            if via_preimage != via_product {
                return fail(
                    P,
                    format!("slab of {payload} at factor {index}: {via_preimage} vs {via_product}"),
                );
            }
        }
    }
    for f in left.opens() {
        for g in right.opens() {
            let entries = [(0, f), (1, g)];
            let via_preimage = n_slab(&product, &spaces, &entries).unwrap();
            let via_product = n_slab_product_form(&product, &entries).unwrap();
            if via_preimage != via_product {
                return fail(P, format!("2-slab of {f}, {g} differs between forms"));
            }
        }
    }
    Ok(())
}

/// Three independent constructions of the product topology agree: the
/// initial topology of the projections, the union closure of the n-slab
/// base, and the oracle's product-form route. The result also derives fully
/// from its slab subbase.
pub fn product_topology_route_agreement(left: &SoftSpace, right: &SoftSpace) -> Check {
    const P: &str = "product-topology-route-agreement";
    let wrap = |e: Error| Failure {
        property: P,
        detail: e.to_string(),
    };
    let (_, via_initial) = product_topology::product_topology(&[left, right]).map_err(wrap)?;
    let product = ProductOfSpaces::new(vec![left.clone(), right.clone()]).map_err(wrap)?;
    let via_base = product.topology(DEFAULT_SIZE_CAP).map_err(wrap)?;
    let (_, via_products) = oracle::product_space_via_product_form(&[left, right]).map_err(wrap)?;
    ensure(via_initial == via_base, P, || {
        "initial-topology route and n-slab base route disagree".to_string()
    })?;
    ensure(via_initial == via_products, P, || {
        "initial-topology route and product-form oracle route disagree".to_string()
    })?;
    ensure(
        via_initial
            .topology()
            .verify_generated_by(product.base())
            .is_ok(),
        P,
        || "a product open has no derivation from the slab subbase".to_string(),
    )?;
    let base: Vec<SoftSet> = product.base().to_vec();
    ensure(
        via_initial.is_base(&base).map_err(|e| Failure {
            property: P,
            detail: e.to_string(),
        })?,
        P,
        || "the n-slab family is not a base of the product space".to_string(),
    )
}

/// Every projection out of the product space is soft continuous.
pub fn projection_continuity(left: &SoftSpace, right: &SoftSpace) -> Check {
    const P: &str = "projection-continuity";
    let wrap = |e: Error| Failure {
        property: P,
        detail: e.to_string(),
    };
    let (product, space) = product_topology::product_topology(&[left, right]).map_err(wrap)?;
    for (index, factor) in [left, right].into_iter().enumerate() {
        let projection = product_topology::projection_mapping(&product, index).map_err(wrap)?;
        let report =
            continuity::is_continuous(&projection, &space, factor, ContinuityMethod::OpenPreimage)
                .map_err(wrap)?;
        if !report.verdict {
            return fail(P, format!("projection {index} discontinuous"));
        }
    }
    Ok(())
}

/// Closure of a soft product equals the soft product of the factor
/// closures, for the given factor soft sets.
pub fn closure_of_product(left: &SoftSpace, right: &SoftSpace, f: &SoftSet, g: &SoftSet) -> Check {
    const P: &str = "closure-of-product";
    match closure_of_product_check(&[left, right], &[f, g]) {
        Ok(true) => Ok(()),
        Ok(false) => fail(P, format!("factor sets {f} and {g}")),
        Err(e) => fail(P, e.to_string()),
    }
}

/// The twelve image/inverse-image laws of a soft mapping, on the given
/// nonempty families over the source and target contexts.
pub fn mapping_image_laws(
    mapping: &SoftMapping,
    src_family: &[SoftSet],
    dst_family: &[SoftSet],
) -> Check {
    const P: &str = "mapping-image-laws";
    assert!(!src_family.is_empty() && !dst_family.is_empty());
    let src_null = SoftSet::null(mapping.src());
    let dst_null = SoftSet::null(mapping.dst());
    let src_absolute = SoftSet::absolute(mapping.src());
    let dst_absolute = SoftSet::absolute(mapping.dst());

    // (1)-(3): null maps forward to null, null and absolute pull back to
    // null and absolute.
    ensure(mapping.image(&src_null).unwrap().is_null(), P, || {
        "image of null not null".into()
    })?;
    ensure(
        mapping.inverse_image(&dst_null).unwrap().is_null(),
        P,
        || "inverse image of null not null".into(),
    )?;
    ensure(
        mapping.inverse_image(&dst_absolute).unwrap() == src_absolute,
        P,
        || "inverse image of absolute not absolute".into(),
    )?;

    for f in src_family {
        // (4) with equality under injectivity.
        let back = mapping.inverse_image(&mapping.image(f).unwrap()).unwrap();
        if !f.is_subset(&back).unwrap() {
            return fail(P, format!("{f} not inside the preimage of its image"));
        }
        if mapping.is_injective() && back != *f {
            return fail(P, format!("injective round trip inflated {f} to {back}"));
        }
    }
    for g in dst_family {
        // (5) with equality under surjectivity.
        let forward = mapping.image(&mapping.inverse_image(g).unwrap()).unwrap();
        if !forward.is_subset(g).unwrap() {
            return fail(P, format!("image of preimage of {g} escapes it"));
        }
        if mapping.is_surjective() && forward != *g {
            return fail(P, format!("surjective round trip shrank {g} to {forward}"));
        }
        // (6): inverse image commutes with complement.
        let lhs = mapping.inverse_image(&g.complement()).unwrap();
        let rhs = mapping.inverse_image(g).unwrap().complement();
        if lhs != rhs {
            return fail(P, format!("preimage/complement split on {g}"));
        }
    }

    // (7)/(8): monotonicity, on pairs ordered by union.
    for f in src_family {
        for other in src_family {
            let bigger = f.union(other).unwrap();
            let img_f = mapping.image(f).unwrap();
            let img_big = mapping.image(&bigger).unwrap();
            if !img_f.is_subset(&img_big).unwrap() {
                return fail(P, format!("image not monotone under {f} and {bigger}"));
            }
        }
    }
    for g in dst_family {
        for other in dst_family {
            let bigger = g.union(other).unwrap();
            let pre_g = mapping.inverse_image(g).unwrap();
            let pre_big = mapping.inverse_image(&bigger).unwrap();
            if !pre_g.is_subset(&pre_big).unwrap() {
                return fail(P, format!("preimage not monotone under {g} and {bigger}"));
            }
        }
    }

    // (9)-(12): behaviour on generalized unions and intersections.
    let src_images: Vec<SoftSet> = src_family
        .iter()
        .map(|f| mapping.image(f).unwrap())
        .collect();
    let union_of_images = SoftSet::big_union(&src_images).unwrap();
    let image_of_union = mapping
        .image(&SoftSet::big_union(src_family).unwrap())
        .unwrap();
    ensure(image_of_union == union_of_images, P, || {
        "image does not commute with union".into()
    })?;
    let image_of_meet = mapping
        .image(&SoftSet::big_intersection(src_family).unwrap())
        .unwrap();
    let meet_of_images = SoftSet::big_intersection(&src_images).unwrap();
    ensure(image_of_meet.is_subset(&meet_of_images).unwrap(), P, || {
        "image of intersection not inside intersection of images".into()
    })?;

    let dst_preimages: Vec<SoftSet> = dst_family
        .iter()
        .map(|g| mapping.inverse_image(g).unwrap())
        .collect();
    let preimage_of_union = mapping
        .inverse_image(&SoftSet::big_union(dst_family).unwrap())
        .unwrap();
    ensure(
        preimage_of_union == SoftSet::big_union(&dst_preimages).unwrap(),
        P,
        || "preimage does not commute with union".into(),
    )?;
    let preimage_of_meet = mapping
        .inverse_image(&SoftSet::big_intersection(dst_family).unwrap())
        .unwrap();
    ensure(
        preimage_of_meet == SoftSet::big_intersection(&dst_preimages).unwrap(),
        P,
        || "preimage does not commute with intersection".into(),
    )?;

    // Point images are injective exactly when the mapping is.
    let grid = SoftPoint::grid(mapping.src());
    let mut collision = None;
    'outer: for (i, p) in grid.iter().enumerate() {
        for q in &grid[i + 1..] {
            if mapping.image_of_point(p).unwrap() == mapping.image_of_point(q).unwrap() {
                collision = Some((p.clone(), q.clone()));
                break 'outer;
            }
        }
    }
    ensure(collision.is_none() == mapping.is_injective(), P, || {
        format!("injectivity vs point collisions split: {collision:?}")
    })?;

    // Membership is preserved forward.
    for f in src_family {
        for p in f.enumerate_points() {
            let image = mapping.image(f).unwrap();
            if !mapping
                .image_of_point(&p)
                .unwrap()
                .belongs_to(&image)
                .unwrap()
            {
                return fail(P, format!("point {p} of {f} lost by the image"));
            }
        }
    }
    Ok(())
}

/// Runs the embedding lemma verifier on one instance and checks the
/// implication. Returns whether the hypotheses held.
pub fn embedding_lemma_instance(
    domain: &SoftSpace,
    targets: &[(&SoftSpace, &SoftMapping)],
) -> std::result::Result<bool, Failure> {
    const P: &str = "embedding-lemma";
    match embedding::verify_embedding_lemma(domain, targets) {
        Ok(report) => {
            sanity_check_lemma_report(&report).map_err(|detail| Failure {
                property: P,
                detail,
            })?;
            Ok(report.hypotheses_hold)
        }
        Err(Error::LemmaViolation(report)) => Err(Failure {
            property: P,
            detail: format!("hypotheses hold but certificate fails: {report:?}"),
        }),
        Err(other) => Err(Failure {
            property: P,
            detail: other.to_string(),
        }),
    }
}

fn sanity_check_lemma_report(report: &LemmaReport) -> std::result::Result<(), String> {
    if report.separation.separates_points != report.separation.point_witness.is_none() {
        return Err("point witness presence inconsistent".into());
    }
    if report.separation.separates_points_from_closed != report.separation.closed_witness.is_none()
    {
        return Err("closed witness presence inconsistent".into());
    }
    if !report.diagonal_image_in_product {
        return Err("diagonal image escaped the product of images".into());
    }
    let conjunction = report.diagonal.continuous
        && report.diagonal.injective
        && report.diagonal.closed_into_image;
    if report.diagonal.overall != conjunction {
        return Err("certificate overall flag out of step with its fields".into());
    }
    Ok(())
}

fn enumerate(ctx: &Ctx, property: &'static str) -> std::result::Result<Vec<SoftSet>, Failure> {
    oracle::enumerate_all_soft_sets(ctx).map_err(|e| Failure {
        property,
        detail: e.to_string(),
    })
}

fn set_index(ctx: &Ctx, set: &SoftSet) -> usize {
    let cells = ctx.cells();
    let width = ctx.universe_len();
    let mut index = 0usize;
    for param in 0..ctx.params_len() {
        for elem in 0..width {
            if set.contains(param, elem) {
                index |= 1 << (cells - 1 - (param * width + elem));
            }
        }
    }
    index
}

/// Helper shared by the harnesses: validates `Result` plumbing into a check.
pub fn from_result(property: &'static str, result: Result<bool>) -> Check {
    match result {
        Ok(true) => Ok(()),
        Ok(false) => fail(property, "check returned false".into()),
        Err(e) => fail(property, e.to_string()),
    }
}
