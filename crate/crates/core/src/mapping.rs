//! Soft mappings: a universe map and a parameter map acting jointly on soft
//! sets.
//!
//! The induced image sends each occupied cell `(e, u)` to `(psi(e), phi(u))`;
//! a target parameter with an empty fiber keeps an empty approximation. The
//! inverse image pulls the approximation at `psi(e)` back through `phi`.

use std::sync::Arc;

use crate::context::{same_context, Ctx};
use crate::error::{Error, Result};
use crate::soft_set::{SoftPoint, SoftSet};

#[derive(Debug, Clone)]
pub struct SoftMapping {
    src: Ctx,
    dst: Ctx,
    phi: Vec<usize>,
    psi: Vec<usize>,
}

impl SoftMapping {
    /// Builds a soft mapping from dense index tables; both tables must be
    /// total on the source components and land inside the target.
    pub fn new(src: &Ctx, dst: &Ctx, phi: Vec<usize>, psi: Vec<usize>) -> Result<SoftMapping> {
        if phi.len() != src.universe_len() {
            return Err(Error::InvalidMapping(format!(
                "universe map covers {} of {} elements",
                phi.len(),
                src.universe_len()
            )));
        }
        if psi.len() != src.params_len() {
            return Err(Error::InvalidMapping(format!(
                "parameter map covers {} of {} parameters",
                psi.len(),
                src.params_len()
            )));
        }
        if let Some(&bad) = phi.iter().find(|&&v| v >= dst.universe_len()) {
            return Err(Error::InvalidMapping(format!(
                "universe map value {bad} out of range {}",
                dst.universe_len()
            )));
        }
        if let Some(&bad) = psi.iter().find(|&&v| v >= dst.params_len()) {
            return Err(Error::InvalidMapping(format!(
                "parameter map value {bad} out of range {}",
                dst.params_len()
            )));
        }
        Ok(SoftMapping {
            src: Arc::clone(src),
            dst: Arc::clone(dst),
            phi,
            psi,
        })
    }

    pub fn identity(ctx: &Ctx) -> SoftMapping {
        SoftMapping {
            src: Arc::clone(ctx),
            dst: Arc::clone(ctx),
            phi: (0..ctx.universe_len()).collect(),
            psi: (0..ctx.params_len()).collect(),
        }
    }

    pub fn src(&self) -> &Ctx {
        &self.src
    }

    pub fn dst(&self) -> &Ctx {
        &self.dst
    }

    pub fn phi(&self) -> &[usize] {
        &self.phi
    }

    pub fn psi(&self) -> &[usize] {
        &self.psi
    }

    /// Injective exactly when both component maps are injective.
    pub fn is_injective(&self) -> bool {
        injective(&self.phi) && injective(&self.psi)
    }

    /// Surjective exactly when both component maps are surjective.
    pub fn is_surjective(&self) -> bool {
        surjective(&self.phi, self.dst.universe_len())
            && surjective(&self.psi, self.dst.params_len())
    }

    pub fn is_bijective(&self) -> bool {
        self.is_injective() && self.is_surjective()
    }

    /// Soft image: each occupied source cell lands on its mapped cell.
    pub fn image(&self, set: &SoftSet) -> Result<SoftSet> {
        if !same_context(set.ctx(), &self.src) {
            return Err(Error::ContextMismatch);
        }
        let mut out = SoftSet::null(&self.dst);
        for param in 0..self.src.params_len() {
            for elem in set.row(param) {
                out.set_cell(self.psi[param], self.phi[elem]);
            }
        }
        Ok(out)
    }

    /// The soft image of a soft point is again a soft point.
    pub fn image_of_point(&self, point: &SoftPoint) -> Result<SoftPoint> {
        if !same_context(point.ctx(), &self.src) {
            return Err(Error::ContextMismatch);
        }
        SoftPoint::new(&self.dst, self.psi[point.param()], self.phi[point.elem()])
    }

    /// Soft inverse image: the approximation at `e` is the `phi`-preimage of
    /// the target approximation at `psi(e)`.
    pub fn inverse_image(&self, set: &SoftSet) -> Result<SoftSet> {
        if !same_context(set.ctx(), &self.dst) {
            return Err(Error::ContextMismatch);
        }
        Ok(SoftSet::from_fn(&self.src, |param, elem| {
            set.contains(self.psi[param], self.phi[elem])
        }))
    }

    /// Soft inverse mapping of a bijective soft mapping.
    pub fn inverse(&self) -> Result<SoftMapping> {
        if !self.is_bijective() {
            return Err(Error::NotBijective);
        }
        let mut phi = vec![0; self.dst.universe_len()];
        for (u, &v) in self.phi.iter().enumerate() {
            phi[v] = u;
        }
        let mut psi = vec![0; self.dst.params_len()];
        for (e, &v) in self.psi.iter().enumerate() {
            psi[v] = e;
        }
        Ok(SoftMapping {
            src: Arc::clone(&self.dst),
            dst: Arc::clone(&self.src),
            phi,
            psi,
        })
    }
}

impl PartialEq for SoftMapping {
    fn eq(&self, other: &Self) -> bool {
        same_context(&self.src, &other.src)
            && same_context(&self.dst, &other.dst)
            && self.phi == other.phi
            && self.psi == other.psi
    }
}

impl Eq for SoftMapping {}

/// Soft composition `outer . inner`; requires the inner target context to be
/// the outer source context.
pub fn compose(outer: &SoftMapping, inner: &SoftMapping) -> Result<SoftMapping> {
    if !same_context(inner.dst(), outer.src()) {
        return Err(Error::ChainMismatch);
    }
    Ok(SoftMapping {
        src: Arc::clone(inner.src()),
        dst: Arc::clone(outer.dst()),
        phi: inner.phi.iter().map(|&u| outer.phi[u]).collect(),
        psi: inner.psi.iter().map(|&e| outer.psi[e]).collect(),
    })
}

fn injective(table: &[usize]) -> bool {
    let mut seen = vec![
        false;
        table
            .len()
            .max(table.iter().map(|&v| v + 1).max().unwrap_or(0))
    ];
    for &v in table {
        if seen[v] {
            return false;
        }
        seen[v] = true;
    }
    true
}

fn surjective(table: &[usize], target_len: usize) -> bool {
    let mut hit = vec![false; target_len];
    for &v in table {
        hit[v] = true;
    }
    hit.into_iter().all(|h| h)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::context::Context;

    fn contexts() -> (Ctx, Ctx) {
        let src = Context::from_labels(&["a", "b"], &["e1", "e2"]).unwrap();
        let dst = Context::from_labels(&["x", "y"], &["d1", "d2"]).unwrap();
        (src, dst)
    }

    #[test]
    fn collapsing_image_unions_over_fibers() {
        let (src, _) = contexts();
        let dst = Context::from_labels(&["x"], &["d"]).unwrap();
        let m = SoftMapping::new(&src, &dst, vec![0, 0], vec![0, 0]).unwrap();
        let f = SoftSet::from_rows(&src, &[vec![0], vec![1]]).unwrap();
        let expected = SoftSet::from_rows(&dst, &[vec![0]]).unwrap();
        assert_eq!(m.image(&f).unwrap(), expected);
    }

    #[test]
    fn image_of_null_is_null() {
        let (src, dst) = contexts();
        let m = SoftMapping::new(&src, &dst, vec![0, 0], vec![1, 1]).unwrap();
        assert!(m.image(&SoftSet::null(&src)).unwrap().is_null());
    }

    #[test]
    fn identity_image_is_identity() {
        let (src, _) = contexts();
        let m = SoftMapping::identity(&src);
        let f = SoftSet::from_rows(&src, &[vec![1], vec![0]]).unwrap();
        assert_eq!(m.image(&f).unwrap(), f);
        assert_eq!(m.inverse_image(&f).unwrap(), f);
    }

    #[test]
    fn empty_fiber_gives_empty_approximation() {
        let (src, dst) = contexts();
        // psi sends both source parameters to d1; fiber of d2 is empty.
        let m = SoftMapping::new(&src, &dst, vec![0, 1], vec![0, 0]).unwrap();
        let img = m.image(&SoftSet::absolute(&src)).unwrap();
        assert_eq!(img.row(0), vec![0, 1]);
        assert!(img.row(1).is_empty());
    }

    #[test]
    fn point_image_follows_component_maps() {
        let (src, dst) = contexts();
        let m = SoftMapping::new(&src, &dst, vec![0, 1], vec![0, 1]).unwrap();
        let p = SoftPoint::new(&src, 0, 0).unwrap();
        let q = m.image_of_point(&p).unwrap();
        assert_eq!((q.param(), q.elem()), (0, 0));
        assert_eq!(m.image(&p.to_soft_set()).unwrap(), q.to_soft_set());

        let id = SoftMapping::identity(&src);
        assert_eq!(id.image_of_point(&p).unwrap(), p);
    }

    #[test]
    fn collapsing_map_equates_point_images() {
        let (src, dst) = contexts();
        let m = SoftMapping::new(&src, &dst, vec![0, 0], vec![0, 0]).unwrap();
        let p = SoftPoint::new(&src, 0, 0).unwrap();
        let q = SoftPoint::new(&src, 1, 1).unwrap();
        assert_ne!(p, q);
        assert_eq!(m.image_of_point(&p).unwrap(), m.image_of_point(&q).unwrap());
        assert!(!m.is_injective());
    }

    #[test]
    fn inverse_image_fixture() {
        let src = Context::from_labels(&["a", "b"], &["e"]).unwrap();
        let dst = Context::from_labels(&["x", "y"], &["d"]).unwrap();
        let m = SoftMapping::new(&src, &dst, vec![0, 0], vec![0]).unwrap();
        let g = SoftSet::from_rows(&dst, &[vec![0]]).unwrap();
        assert_eq!(m.inverse_image(&g).unwrap(), SoftSet::absolute(&src));
        assert_eq!(
            m.inverse_image(&SoftSet::absolute(&dst)).unwrap(),
            SoftSet::absolute(&src)
        );
        assert!(m.inverse_image(&SoftSet::null(&dst)).unwrap().is_null());
    }

    #[test]
    fn compose_tables() {
        let (src, dst) = contexts();
        let third = Context::from_labels(&["p"], &["q"]).unwrap();
        let f = SoftMapping::new(&src, &dst, vec![1, 1], vec![0, 0]).unwrap();
        let g = SoftMapping::new(&dst, &third, vec![0, 0], vec![0, 0]).unwrap();
        let gf = compose(&g, &f).unwrap();
        assert_eq!(gf.phi(), &[0, 0]);
        assert_eq!(gf.psi(), &[0, 0]);

        let id = SoftMapping::identity(&dst);
        assert_eq!(compose(&id, &f).unwrap(), f);
        assert_eq!(compose(&f, &g), Err(Error::ChainMismatch));
    }

    #[test]
    fn composite_image_equals_iterated_image() {
        let (src, dst) = contexts();
        let third = Context::from_labels(&["p", "r"], &["q"]).unwrap();
        let f = SoftMapping::new(&src, &dst, vec![1, 0], vec![0, 1]).unwrap();
        let g = SoftMapping::new(&dst, &third, vec![0, 1], vec![0, 0]).unwrap();
        let gf = compose(&g, &f).unwrap();
        for bits in 0..16u32 {
            let set = SoftSet::from_fn(&src, |p, e| bits >> (p * 2 + e) & 1 == 1);
            assert_eq!(
                gf.image(&set).unwrap(),
                g.image(&f.image(&set).unwrap()).unwrap()
            );
        }
    }

    #[test]
    fn inverse_of_swap_is_swap() {
        let ctx = Context::from_labels(&["a", "b"], &["e"]).unwrap();
        let swap = SoftMapping::new(&ctx, &ctx, vec![1, 0], vec![0]).unwrap();
        assert_eq!(swap.inverse().unwrap(), swap);

        let id = SoftMapping::identity(&ctx);
        assert_eq!(id.inverse().unwrap(), id);
        assert_eq!(compose(&swap.inverse().unwrap(), &swap).unwrap(), id);
    }

    #[test]
    fn inverse_requires_bijectivity() {
        let (src, dst) = contexts();
        let m = SoftMapping::new(&src, &dst, vec![0, 0], vec![0, 1]).unwrap();
        assert_eq!(m.inverse(), Err(Error::NotBijective));
    }

    #[test]
    fn bijective_inverse_image_coincides_with_image_of_inverse() {
        let (src, dst) = contexts();
        let m = SoftMapping::new(&src, &dst, vec![1, 0], vec![1, 0]).unwrap();
        let inv = m.inverse().unwrap();
        for bits in 0..16u32 {
            let g = SoftSet::from_fn(&dst, |p, e| bits >> (p * 2 + e) & 1 == 1);
            assert_eq!(inv.image(&g).unwrap(), m.inverse_image(&g).unwrap());
        }
    }

    #[test]
    fn totality_is_validated() {
        let (src, dst) = contexts();
        assert!(matches!(
            SoftMapping::new(&src, &dst, vec![0], vec![0, 1]),
            Err(Error::InvalidMapping(_))
        ));
        assert!(matches!(
            SoftMapping::new(&src, &dst, vec![0, 5], vec![0, 1]),
            Err(Error::InvalidMapping(_))
        ));
    }
}
