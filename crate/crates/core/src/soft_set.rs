//! Soft sets and soft points over a finite context.
//!
//! A soft set assigns to every parameter a subset of the universe. The table
//! is stored as a flat bit string in parameter-major order (cell
//! `param * |U| + elem`), which doubles as the canonical key: two soft sets
//! over one context are equal exactly when their bit strings agree, and the
//! derived ordering (earlier cells more significant, absent before present)
//! fixes the iteration order of every collection in the engine.

use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::Arc;

use crate::context::{same_context, Ctx};
use crate::error::{Error, Result};

const WORD_BITS: usize = 64;

#[derive(Clone)]
pub struct SoftSet {
    ctx: Ctx,
    words: Vec<u64>,
}

impl SoftSet {
    /// The soft set with every approximation empty.
    pub fn null(ctx: &Ctx) -> SoftSet {
        SoftSet {
            ctx: Arc::clone(ctx),
            words: vec![0; word_count(ctx.cells())],
        }
    }

    /// The soft set with every approximation equal to the whole universe.
    pub fn absolute(ctx: &Ctx) -> SoftSet {
        let mut set = SoftSet::null(ctx);
        for word in set.words.iter_mut() {
            *word = u64::MAX;
        }
        set.mask_tail();
        set
    }

    /// The soft set whose every approximation equals the given nonempty
    /// subset of the universe.
    pub fn constant(ctx: &Ctx, members: &[usize]) -> Result<SoftSet> {
        if members.is_empty() {
            return Err(Error::EmptySubset);
        }
        let mut set = SoftSet::null(ctx);
        for &elem in members {
            check_elem(ctx, elem)?;
            for param in 0..ctx.params_len() {
                set.set_cell(param, elem);
            }
        }
        Ok(set)
    }

    /// Builds a soft set from one element list per parameter, in parameter
    /// order.
    pub fn from_rows(ctx: &Ctx, rows: &[Vec<usize>]) -> Result<SoftSet> {
        if rows.len() != ctx.params_len() {
            return Err(Error::InvalidContext(format!(
                "expected {} rows, got {}",
                ctx.params_len(),
                rows.len()
            )));
        }
        let mut set = SoftSet::null(ctx);
        for (param, row) in rows.iter().enumerate() {
            for &elem in row {
                check_elem(ctx, elem)?;
                set.set_cell(param, elem);
            }
        }
        Ok(set)
    }

    /// Builds a soft set from an explicit cell predicate.
    pub fn from_fn(ctx: &Ctx, mut member: impl FnMut(usize, usize) -> bool) -> SoftSet {
        let mut set = SoftSet::null(ctx);
        for param in 0..ctx.params_len() {
            for elem in 0..ctx.universe_len() {
                if member(param, elem) {
                    set.set_cell(param, elem);
                }
            }
        }
        set
    }

    pub fn ctx(&self) -> &Ctx {
        &self.ctx
    }

    pub fn contains(&self, param: usize, elem: usize) -> bool {
        let cell = param * self.ctx.universe_len() + elem;
        self.words[cell / WORD_BITS] >> (cell % WORD_BITS) & 1 == 1
    }

    /// Elements of the approximation at `param`, ascending.
    pub fn row(&self, param: usize) -> Vec<usize> {
        (0..self.ctx.universe_len())
            .filter(|&elem| self.contains(param, elem))
            .collect()
    }

    pub fn is_null(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn is_absolute(&self) -> bool {
        *self == SoftSet::absolute(&self.ctx)
    }

    /// Number of occupied cells across all approximations.
    pub fn cell_count(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    /// Row-wise subset test.
    pub fn is_subset(&self, other: &SoftSet) -> Result<bool> {
        self.require_same_ctx(other)?;
        Ok(self
            .words
            .iter()
            .zip(&other.words)
            .all(|(&a, &b)| a & !b == 0))
    }

    /// Row-wise union.
    pub fn union(&self, other: &SoftSet) -> Result<SoftSet> {
        self.require_same_ctx(other)?;
        Ok(self.zip_words(other, |a, b| a | b))
    }

    /// Row-wise intersection.
    pub fn intersection(&self, other: &SoftSet) -> Result<SoftSet> {
        self.require_same_ctx(other)?;
        Ok(self.zip_words(other, |a, b| a & b))
    }

    /// Row-wise difference.
    pub fn difference(&self, other: &SoftSet) -> Result<SoftSet> {
        self.require_same_ctx(other)?;
        Ok(self.zip_words(other, |a, b| a & !b))
    }

    /// Row-wise complement relative to the universe.
    pub fn complement(&self) -> SoftSet {
        let mut out = SoftSet {
            ctx: Arc::clone(&self.ctx),
            words: self.words.iter().map(|&w| !w).collect(),
        };
        out.mask_tail();
        out
    }

    /// True when the two soft sets intersect in some cell.
    pub fn meets(&self, other: &SoftSet) -> Result<bool> {
        self.require_same_ctx(other)?;
        Ok(self
            .words
            .iter()
            .zip(&other.words)
            .any(|(&a, &b)| a & b != 0))
    }

    /// Union of a nonempty family sharing one context.
    pub fn big_union<'a, I>(family: I) -> Result<SoftSet>
    where
        I: IntoIterator<Item = &'a SoftSet>,
    {
        Self::fold_family(family, |a, b| a | b)
    }

    /// Intersection of a nonempty family sharing one context.
    pub fn big_intersection<'a, I>(family: I) -> Result<SoftSet>
    where
        I: IntoIterator<Item = &'a SoftSet>,
    {
        Self::fold_family(family, |a, b| a & b)
    }

    fn fold_family<'a, I>(family: I, op: impl Fn(u64, u64) -> u64) -> Result<SoftSet>
    where
        I: IntoIterator<Item = &'a SoftSet>,
    {
        let mut iter = family.into_iter();
        let first = iter.next().ok_or(Error::EmptyFamily)?;
        let mut acc = first.clone();
        for set in iter {
            first.require_same_ctx(set)?;
            for (a, b) in acc.words.iter_mut().zip(&set.words) {
                *a = op(*a, *b);
            }
        }
        Ok(acc)
    }

    /// Row-wise intersection with a nonempty subset of the universe; the
    /// result still lives over the full context.
    pub fn sub_soft_set(&self, members: &[usize]) -> Result<SoftSet> {
        let carrier = SoftSet::constant(&self.ctx, members)?;
        self.intersection(&carrier)
    }

    /// All soft points of this soft set in canonical order (parameter-major,
    /// element-minor).
    pub fn enumerate_points(&self) -> Vec<SoftPoint> {
        let mut points = Vec::new();
        for param in 0..self.ctx.params_len() {
            for elem in 0..self.ctx.universe_len() {
                if self.contains(param, elem) {
                    points.push(SoftPoint {
                        ctx: Arc::clone(&self.ctx),
                        param,
                        elem,
                    });
                }
            }
        }
        points
    }

    pub(crate) fn set_cell(&mut self, param: usize, elem: usize) {
        let cell = param * self.ctx.universe_len() + elem;
        self.words[cell / WORD_BITS] |= 1 << (cell % WORD_BITS);
    }

    fn zip_words(&self, other: &SoftSet, op: impl Fn(u64, u64) -> u64) -> SoftSet {
        SoftSet {
            ctx: Arc::clone(&self.ctx),
            words: self
                .words
                .iter()
                .zip(&other.words)
                .map(|(&a, &b)| op(a, b))
                .collect(),
        }
    }

    fn mask_tail(&mut self) {
        let cells = self.ctx.cells();
        let tail = cells % WORD_BITS;
        if tail != 0 {
            if let Some(last) = self.words.last_mut() {
                *last &= (1u64 << tail) - 1;
            }
        }
    }

    fn require_same_ctx(&self, other: &SoftSet) -> Result<()> {
        if same_context(&self.ctx, &other.ctx) {
            Ok(())
        } else {
            Err(Error::ContextMismatch)
        }
    }
}

fn word_count(cells: usize) -> usize {
    cells.div_ceil(WORD_BITS).max(1)
}

fn check_elem(ctx: &Ctx, elem: usize) -> Result<()> {
    if elem < ctx.universe_len() {
        Ok(())
    } else {
        Err(Error::IndexOutOfRange {
            index: elem,
            limit: ctx.universe_len(),
        })
    }
}

impl PartialEq for SoftSet {
    fn eq(&self, other: &Self) -> bool {
        same_context(&self.ctx, &other.ctx) && self.words == other.words
    }
}

impl Eq for SoftSet {}

impl Hash for SoftSet {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.words.hash(state);
    }
}

impl Ord for SoftSet {
    fn cmp(&self, other: &Self) -> Ordering {
        if !Arc::ptr_eq(&self.ctx, &other.ctx) {
            let by_ctx = self
                .ctx
                .universe_labels()
                .cmp(other.ctx.universe_labels())
                .then_with(|| self.ctx.param_labels().cmp(other.ctx.param_labels()));
            if by_ctx != Ordering::Equal {
                return by_ctx;
            }
        }
        // Lexicographic on the cell string: cell 0 is most significant.
        for (a, b) in self.words.iter().zip(&other.words) {
            let ord = a.reverse_bits().cmp(&b.reverse_bits());
            if ord != Ordering::Equal {
                return ord;
            }
        }
        Ordering::Equal
    }
}

impl PartialOrd for SoftSet {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for SoftSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for param in 0..self.ctx.params_len() {
            if param > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{}:{{", self.ctx.param_label(param))?;
            let mut first = true;
            for elem in self.row(param) {
                if !first {
                    write!(f, ",")?;
                }
                write!(f, "{}", self.ctx.elem_label(elem))?;
                first = false;
            }
            write!(f, "}}")?;
        }
        write!(f, "}}")
    }
}

impl fmt::Debug for SoftSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SoftSet{self}")
    }
}

/// A soft set with exactly one nonempty approximation, a singleton: one
/// expressive parameter plus one supporting element.
#[derive(Clone)]
pub struct SoftPoint {
    ctx: Ctx,
    param: usize,
    elem: usize,
}

impl SoftPoint {
    pub fn new(ctx: &Ctx, param: usize, elem: usize) -> Result<SoftPoint> {
        if param >= ctx.params_len() {
            return Err(Error::IndexOutOfRange {
                index: param,
                limit: ctx.params_len(),
            });
        }
        check_elem(ctx, elem)?;
        Ok(SoftPoint {
            ctx: Arc::clone(ctx),
            param,
            elem,
        })
    }

    /// Every soft point of the context, in canonical order.
    pub fn grid(ctx: &Ctx) -> Vec<SoftPoint> {
        let mut points = Vec::with_capacity(ctx.cells());
        for param in 0..ctx.params_len() {
            for elem in 0..ctx.universe_len() {
                points.push(SoftPoint {
                    ctx: Arc::clone(ctx),
                    param,
                    elem,
                });
            }
        }
        points
    }

    pub fn ctx(&self) -> &Ctx {
        &self.ctx
    }

    pub fn param(&self) -> usize {
        self.param
    }

    pub fn elem(&self) -> usize {
        self.elem
    }

    /// The induced soft set: a single singleton approximation.
    pub fn to_soft_set(&self) -> SoftSet {
        let mut set = SoftSet::null(&self.ctx);
        set.set_cell(self.param, self.elem);
        set
    }

    /// Soft membership: the supporting element lies in the approximation at
    /// the expressive parameter.
    pub fn belongs_to(&self, set: &SoftSet) -> Result<bool> {
        if !same_context(&self.ctx, set.ctx()) {
            return Err(Error::ContextMismatch);
        }
        Ok(set.contains(self.param, self.elem))
    }
}

impl PartialEq for SoftPoint {
    fn eq(&self, other: &Self) -> bool {
        same_context(&self.ctx, &other.ctx) && self.param == other.param && self.elem == other.elem
    }
}

impl Eq for SoftPoint {}

impl Ord for SoftPoint {
    fn cmp(&self, other: &Self) -> Ordering {
        if !Arc::ptr_eq(&self.ctx, &other.ctx) {
            let by_ctx = self
                .ctx
                .universe_labels()
                .cmp(other.ctx.universe_labels())
                .then_with(|| self.ctx.param_labels().cmp(other.ctx.param_labels()));
            if by_ctx != Ordering::Equal {
                return by_ctx;
            }
        }
        self.param
            .cmp(&other.param)
            .then_with(|| self.elem.cmp(&other.elem))
    }
}

impl PartialOrd for SoftPoint {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Hash for SoftPoint {
    fn hash<H: Hasher>(&self, state: &mut H) {
        (self.param, self.elem).hash(state);
    }
}

impl fmt::Display for SoftPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}@{}",
            self.ctx.elem_label(self.elem),
            self.ctx.param_label(self.param)
        )
    }
}

impl fmt::Debug for SoftPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SoftPoint({self})")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::context::Context;

    fn ctx2x2() -> Ctx {
        Context::from_labels(&["a", "b"], &["e1", "e2"]).unwrap()
    }

    /// F = {e1:{a}, e2:{}} and G = {e1:{a,b}, e2:{b}}.
    fn fixture(ctx: &Ctx) -> (SoftSet, SoftSet) {
        let f = SoftSet::from_rows(ctx, &[vec![0], vec![]]).unwrap();
        let g = SoftSet::from_rows(ctx, &[vec![0, 1], vec![1]]).unwrap();
        (f, g)
    }

    #[test]
    fn subset_fixture() {
        let ctx = ctx2x2();
        let (f, g) = fixture(&ctx);
        assert!(f.is_subset(&g).unwrap());
        assert!(!g.is_subset(&f).unwrap());
        assert!(f.is_subset(&SoftSet::absolute(&ctx)).unwrap());
        assert!(g.is_subset(&SoftSet::absolute(&ctx)).unwrap());
    }

    #[test]
    fn subset_rejects_context_mismatch() {
        let ctx = ctx2x2();
        let other = Context::from_labels(&["x"], &["d"]).unwrap();
        let f = SoftSet::null(&ctx);
        let h = SoftSet::null(&other);
        assert_eq!(f.is_subset(&h), Err(Error::ContextMismatch));
    }

    #[test]
    fn complement_fixture() {
        let ctx = ctx2x2();
        let (f, _) = fixture(&ctx);
        let expected = SoftSet::from_rows(&ctx, &[vec![1], vec![0, 1]]).unwrap();
        assert_eq!(f.complement(), expected);
        assert_eq!(SoftSet::null(&ctx).complement(), SoftSet::absolute(&ctx));
        assert_eq!(f.complement().complement(), f);
    }

    #[test]
    fn union_intersection_difference() {
        let ctx = ctx2x2();
        let (f, g) = fixture(&ctx);
        let expected_union = SoftSet::from_rows(&ctx, &[vec![0, 1], vec![1]]).unwrap();
        assert_eq!(f.union(&g).unwrap(), expected_union);

        let absolute = SoftSet::absolute(&ctx);
        assert_eq!(f.intersection(&absolute).unwrap(), f);
        assert_eq!(f.difference(&SoftSet::null(&ctx)).unwrap(), f);
        assert_eq!(
            f.difference(&g).unwrap(),
            f.intersection(&g.complement()).unwrap()
        );
    }

    #[test]
    fn big_ops() {
        let ctx = ctx2x2();
        let (f, g) = fixture(&ctx);
        assert_eq!(SoftSet::big_union([&f]).unwrap(), f);
        assert_eq!(
            SoftSet::big_intersection([&f, &f.complement()]).unwrap(),
            SoftSet::null(&ctx)
        );
        let lhs = SoftSet::big_union([&f, &g]).unwrap().complement();
        let rhs = SoftSet::big_intersection([&f.complement(), &g.complement()]).unwrap();
        assert_eq!(lhs, rhs);
        assert_eq!(
            SoftSet::big_union(std::iter::empty()),
            Err(Error::EmptyFamily)
        );
    }

    #[test]
    fn meets_fixture() {
        let ctx = ctx2x2();
        let (f, g) = fixture(&ctx);
        assert!(!f.meets(&f.complement()).unwrap());
        assert!(f.meets(&SoftSet::absolute(&ctx)).unwrap());
        assert!(f.meets(&g).unwrap());
    }

    #[test]
    fn constant_soft_set() {
        let ctx = ctx2x2();
        assert_eq!(
            SoftSet::constant(&ctx, &[0, 1]).unwrap(),
            SoftSet::absolute(&ctx)
        );
        let just_a = SoftSet::constant(&ctx, &[0]).unwrap();
        assert_eq!(
            just_a,
            SoftSet::from_rows(&ctx, &[vec![0], vec![0]]).unwrap()
        );
        assert_eq!(SoftSet::constant(&ctx, &[]), Err(Error::EmptySubset));

        let one_param = Context::from_labels(&["a", "b"], &["e"]).unwrap();
        assert_eq!(
            SoftSet::constant(&one_param, &[1]).unwrap(),
            SoftSet::from_rows(&one_param, &[vec![1]]).unwrap()
        );
    }

    #[test]
    fn point_membership() {
        let ctx = ctx2x2();
        let (f, _) = fixture(&ctx);
        let p = SoftPoint::new(&ctx, 0, 0).unwrap();
        assert!(p.belongs_to(&f).unwrap());
        assert!(!p.belongs_to(&SoftSet::null(&ctx)).unwrap());
        assert!(p.belongs_to(&SoftSet::absolute(&ctx)).unwrap());
        let q = SoftPoint::new(&ctx, 1, 0).unwrap();
        assert!(!q.belongs_to(&f).unwrap());
    }

    #[test]
    fn enumerate_points_fixture() {
        let ctx = ctx2x2();
        let (f, _) = fixture(&ctx);
        let pts = f.enumerate_points();
        assert_eq!(pts.len(), 1);
        assert_eq!((pts[0].param(), pts[0].elem()), (0, 0));

        assert!(SoftSet::null(&ctx).enumerate_points().is_empty());
        assert_eq!(SoftSet::absolute(&ctx).enumerate_points().len(), 4);
    }

    #[test]
    fn sub_soft_set_fixture() {
        let ctx = ctx2x2();
        let (f, g) = fixture(&ctx);
        let expected = SoftSet::from_rows(&ctx, &[vec![1], vec![1]]).unwrap();
        assert_eq!(g.sub_soft_set(&[1]).unwrap(), expected);
        assert_eq!(g.sub_soft_set(&[0, 1]).unwrap(), g);
        assert_eq!(
            SoftSet::null(&ctx).sub_soft_set(&[0]).unwrap(),
            SoftSet::null(&ctx)
        );
        assert_eq!(f.sub_soft_set(&[]), Err(Error::EmptySubset));
        assert_eq!(
            g.sub_soft_set(&[1]).unwrap(),
            g.intersection(&SoftSet::constant(&ctx, &[1]).unwrap())
                .unwrap()
        );
    }

    #[test]
    fn canonical_order_is_lexicographic_on_cells() {
        let ctx = ctx2x2();
        let null = SoftSet::null(&ctx);
        let absolute = SoftSet::absolute(&ctx);
        let (f, g) = fixture(&ctx);
        let mut sorted = [absolute.clone(), g.clone(), f.clone(), null.clone()];
        sorted.sort();
        assert_eq!(sorted[0], null);
        assert_eq!(sorted[3], absolute);
        // f has cell (e1,a) only; g has (e1,a),(e1,b),(e2,b): f < g because
        // they agree on cell 0 and f lacks cell 1.
        assert!(f < g);
    }

    #[test]
    fn grid_is_param_major() {
        let ctx = ctx2x2();
        let grid = SoftPoint::grid(&ctx);
        let coords: Vec<_> = grid.iter().map(|p| (p.param(), p.elem())).collect();
        assert_eq!(coords, vec![(0, 0), (0, 1), (1, 0), (1, 1)]);
    }

    #[test]
    fn wide_tables_use_multiple_words() {
        let labels: Vec<String> = (0..40).map(|i| format!("u{i}")).collect();
        let label_refs: Vec<&str> = labels.iter().map(|s| s.as_str()).collect();
        let ctx = Context::from_labels(&label_refs, &["e1", "e2"]).unwrap();
        assert_eq!(ctx.cells(), 80);
        let absolute = SoftSet::absolute(&ctx);
        assert_eq!(absolute.cell_count(), 80);
        assert!(absolute.complement().is_null());
        let p = SoftPoint::new(&ctx, 1, 39).unwrap();
        assert!(p.belongs_to(&absolute).unwrap());
        assert!(p.to_soft_set().is_subset(&absolute).unwrap());
    }
}
