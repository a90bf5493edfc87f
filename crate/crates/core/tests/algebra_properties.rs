//! Property-based law checks over randomly drawn contexts and soft sets.

use proptest::prelude::*;

use softtop::{Context, Ctx, ProductContext, SoftMapping, SoftSet};

/// A context together with enough raw bits to carve soft sets out of it.
#[derive(Debug, Clone)]
struct Instance {
    ctx: Ctx,
    masks: Vec<u64>,
}

fn instance(
    max_universe: usize,
    max_params: usize,
    sets: usize,
) -> impl Strategy<Value = Instance> {
    (
        1..=max_universe,
        1..=max_params,
        proptest::collection::vec(any::<u64>(), sets),
    )
        .prop_map(|(u, e, masks)| {
            let universe: Vec<String> = (0..u).map(|i| format!("u{i}")).collect();
            let params: Vec<String> = (0..e).map(|i| format!("e{i}")).collect();
            Instance {
                ctx: Context::new(universe, params).unwrap(),
                masks,
            }
        })
}

fn carve(ctx: &Ctx, mask: u64) -> SoftSet {
    let width = ctx.universe_len();
    SoftSet::from_fn(ctx, |param, elem| {
        mask >> ((param * width + elem) % 64) & 1 == 1
    })
}

proptest! {
    #[test]
    fn de_morgan_for_pairs(inst in instance(4, 3, 2)) {
        let f = carve(&inst.ctx, inst.masks[0]);
        let g = carve(&inst.ctx, inst.masks[1]);
        let lhs = f.union(&g).unwrap().complement();
        let rhs = f.complement().intersection(&g.complement()).unwrap();
        prop_assert_eq!(lhs, rhs);
        let lhs = f.intersection(&g).unwrap().complement();
        let rhs = f.complement().union(&g.complement()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn difference_is_meet_with_complement(inst in instance(4, 3, 2)) {
        let f = carve(&inst.ctx, inst.masks[0]);
        let g = carve(&inst.ctx, inst.masks[1]);
        prop_assert_eq!(
            f.difference(&g).unwrap(),
            f.intersection(&g.complement()).unwrap()
        );
    }

    #[test]
    fn subset_iff_every_point_belongs(inst in instance(4, 3, 2)) {
        let f = carve(&inst.ctx, inst.masks[0]);
        let g = carve(&inst.ctx, inst.masks[1]);
        let by_rows = f.is_subset(&g).unwrap();
        let by_points = f.enumerate_points().iter().all(|p| p.belongs_to(&g).unwrap());
        prop_assert_eq!(by_rows, by_points);
    }

    #[test]
    fn union_is_the_join(inst in instance(4, 3, 2)) {
        let f = carve(&inst.ctx, inst.masks[0]);
        let g = carve(&inst.ctx, inst.masks[1]);
        let join = f.union(&g).unwrap();
        prop_assert!(f.is_subset(&join).unwrap());
        prop_assert!(g.is_subset(&join).unwrap());
        let meet = f.intersection(&g).unwrap();
        prop_assert!(meet.is_subset(&f).unwrap());
        prop_assert!(meet.is_subset(&g).unwrap());
    }

    #[test]
    fn product_monotonicity(inst in instance(3, 2, 4)) {
        let ctx = &inst.ctx;
        let f1 = carve(ctx, inst.masks[0]);
        let g1 = f1.union(&carve(ctx, inst.masks[1])).unwrap();
        let f2 = carve(ctx, inst.masks[2]);
        let g2 = f2.union(&carve(ctx, inst.masks[3])).unwrap();
        let product = ProductContext::new(&[ctx.clone(), ctx.clone()]).unwrap();
        let small = product.product_soft_set(&[&f1, &f2]).unwrap();
        let large = product.product_soft_set(&[&g1, &g2]).unwrap();
        prop_assert!(small.is_subset(&large).unwrap());
    }

    #[test]
    fn product_distributes_over_intersection(inst in instance(3, 2, 4)) {
        let ctx = &inst.ctx;
        let f1 = carve(ctx, inst.masks[0]);
        let g1 = carve(ctx, inst.masks[1]);
        let f2 = carve(ctx, inst.masks[2]);
        let g2 = carve(ctx, inst.masks[3]);
        let product = ProductContext::new(&[ctx.clone(), ctx.clone()]).unwrap();
        let lhs = product
            .product_soft_set(&[&f1.intersection(&g1).unwrap(), &f2.intersection(&g2).unwrap()])
            .unwrap();
        let rhs = product
            .product_soft_set(&[&f1, &f2])
            .unwrap()
            .intersection(&product.product_soft_set(&[&g1, &g2]).unwrap())
            .unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn product_null_iff_some_factor_null(inst in instance(2, 2, 2)) {
        let ctx = &inst.ctx;
        let f = carve(ctx, inst.masks[0]);
        let g = carve(ctx, inst.masks[1]);
        let product = ProductContext::new(&[ctx.clone(), ctx.clone()]).unwrap();
        let prod = product.product_soft_set(&[&f, &g]).unwrap();
        prop_assert_eq!(prod.is_null(), f.is_null() || g.is_null());
    }

    #[test]
    fn image_commutes_with_union(inst in instance(3, 2, 2), phi_seed: u64, psi_seed: u64) {
        let ctx = &inst.ctx;
        let u = ctx.universe_len();
        let e = ctx.params_len();
        let phi: Vec<usize> = (0..u).map(|i| (phi_seed as usize >> i) % u).collect();
        let psi: Vec<usize> = (0..e).map(|i| (psi_seed as usize >> i) % e).collect();
        let m = SoftMapping::new(ctx, ctx, phi, psi).unwrap();
        let f = carve(ctx, inst.masks[0]);
        let g = carve(ctx, inst.masks[1]);
        prop_assert_eq!(
            m.image(&f.union(&g).unwrap()).unwrap(),
            m.image(&f).unwrap().union(&m.image(&g).unwrap()).unwrap()
        );
        // Image of an intersection sits inside the intersection of images.
        prop_assert!(m
            .image(&f.intersection(&g).unwrap())
            .unwrap()
            .is_subset(&m.image(&f).unwrap().intersection(&m.image(&g).unwrap()).unwrap())
            .unwrap());
        // Inverse image commutes with complement.
        prop_assert_eq!(
            m.inverse_image(&f.complement()).unwrap(),
            m.inverse_image(&f).unwrap().complement()
        );
    }
}
