//! Soft topologies and spaces: axiom checking, closed sets, closure,
//! adherent points, bases, subbase generation, and subspaces.
//!
//! Because every instance is finite, closure under pairwise union already
//! gives closure under arbitrary unions (any subfamily union is a fold of
//! pairwise unions), so the axioms are checked pairwise. Neighbourhood
//! quantifiers are evaluated over open sets containing the point, which is
//! equivalent and finite.

use std::collections::BTreeSet;
use std::fmt;
use std::sync::Arc;

use crate::context::{same_context, Context, Ctx};
use crate::error::{Error, Result};
use crate::mapping::SoftMapping;
use crate::soft_set::{SoftPoint, SoftSet};

/// Generation aborts once a topology would exceed this many members.
pub const DEFAULT_SIZE_CAP: usize = 100_000;

/// Largest `|U| * |E|` for which the discrete topology is materialized.
pub const DISCRETE_CELL_LIMIT: usize = 16;

/// Outcome of checking the four soft-topology axioms, with the violating
/// pair as witness where applicable.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AxiomVerdict {
    Ok,
    MissingNull,
    MissingAbsolute,
    NotClosedUnderIntersection(SoftSet, SoftSet),
    NotClosedUnderUnion(SoftSet, SoftSet),
}

impl AxiomVerdict {
    pub fn is_ok(&self) -> bool {
        matches!(self, AxiomVerdict::Ok)
    }
}

impl fmt::Display for AxiomVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AxiomVerdict::Ok => write!(f, "ok"),
            AxiomVerdict::MissingNull => write!(f, "the null soft set is missing"),
            AxiomVerdict::MissingAbsolute => write!(f, "the absolute soft set is missing"),
            AxiomVerdict::NotClosedUnderIntersection(a, b) => {
                write!(f, "not closed under intersection: {a} and {b}")
            }
            AxiomVerdict::NotClosedUnderUnion(a, b) => {
                write!(f, "not closed under union: {a} and {b}")
            }
        }
    }
}

/// Checks the four axioms on a candidate collection. Witnesses are the first
/// violating pair in canonical order.
pub fn verify_axioms(ctx: &Ctx, candidate: &[SoftSet]) -> Result<AxiomVerdict> {
    for set in candidate {
        if !same_context(set.ctx(), ctx) {
            return Err(Error::ContextMismatch);
        }
    }
    let members: BTreeSet<SoftSet> = candidate.iter().cloned().collect();
    if !members.contains(&SoftSet::null(ctx)) {
        return Ok(AxiomVerdict::MissingNull);
    }
    if !members.contains(&SoftSet::absolute(ctx)) {
        return Ok(AxiomVerdict::MissingAbsolute);
    }
    let ordered: Vec<&SoftSet> = members.iter().collect();
    for (i, a) in ordered.iter().enumerate() {
        for b in &ordered[i + 1..] {
            if !members.contains(&a.intersection(b)?) {
                return Ok(AxiomVerdict::NotClosedUnderIntersection(
                    (*a).clone(),
                    (*b).clone(),
                ));
            }
        }
    }
    for (i, a) in ordered.iter().enumerate() {
        for b in &ordered[i + 1..] {
            if !members.contains(&a.union(b)?) {
                return Ok(AxiomVerdict::NotClosedUnderUnion(
                    (*a).clone(),
                    (*b).clone(),
                ));
            }
        }
    }
    Ok(AxiomVerdict::Ok)
}

/// A deduplicated, canonically ordered collection of soft sets satisfying
/// the soft-topology axioms.
#[derive(Debug, Clone)]
pub struct SoftTopology {
    ctx: Ctx,
    opens: BTreeSet<SoftSet>,
    size_cap: usize,
}

impl SoftTopology {
    /// Validates the axioms and builds the topology.
    pub fn try_new(ctx: &Ctx, opens: Vec<SoftSet>) -> Result<SoftTopology> {
        match verify_axioms(ctx, &opens)? {
            AxiomVerdict::Ok => Ok(SoftTopology {
                ctx: Arc::clone(ctx),
                opens: opens.into_iter().collect(),
                size_cap: DEFAULT_SIZE_CAP,
            }),
            verdict => Err(Error::AxiomsViolated(verdict)),
        }
    }

    pub fn indiscrete(ctx: &Ctx) -> SoftTopology {
        let opens = [SoftSet::null(ctx), SoftSet::absolute(ctx)]
            .into_iter()
            .collect();
        SoftTopology {
            ctx: Arc::clone(ctx),
            opens,
            size_cap: DEFAULT_SIZE_CAP,
        }
    }

    /// All `2^(|U||E|)` soft sets; limited to small contexts.
    pub fn discrete(ctx: &Ctx) -> Result<SoftTopology> {
        let cells = ctx.cells();
        if cells > DISCRETE_CELL_LIMIT {
            return Err(Error::TooLarge {
                cells,
                max: DISCRETE_CELL_LIMIT,
            });
        }
        let mut opens = BTreeSet::new();
        for mask in 0..(1u32 << cells) {
            opens.insert(SoftSet::from_fn(ctx, |param, elem| {
                mask >> (param * ctx.universe_len() + elem) & 1 == 1
            }));
        }
        Ok(SoftTopology {
            ctx: Arc::clone(ctx),
            opens,
            size_cap: DEFAULT_SIZE_CAP,
        })
    }

    /// Generates the topology of all unions of finite intersections of the
    /// subbase, with the default size cap.
    pub fn generate_from_subbase(ctx: &Ctx, subbase: &[SoftSet]) -> Result<SoftTopology> {
        Ok(Self::generate_from_subbase_capped(ctx, subbase, DEFAULT_SIZE_CAP)?.topology)
    }

    /// Capped generation. Null and absolute are adjoined automatically when
    /// absent; the outcome records whether that happened.
    pub fn generate_from_subbase_capped(
        ctx: &Ctx,
        subbase: &[SoftSet],
        size_cap: usize,
    ) -> Result<GenerationOutcome> {
        for set in subbase {
            if !same_context(set.ctx(), ctx) {
                return Err(Error::ContextMismatch);
            }
        }
        let mut members: BTreeSet<SoftSet> = subbase.iter().cloned().collect();
        let adjoined_null = members.insert(SoftSet::null(ctx));
        let adjoined_absolute = members.insert(SoftSet::absolute(ctx));
        if members.len() > size_cap {
            return Err(Error::SizeCapExceeded {
                cap: size_cap,
                reached: members.len(),
            });
        }

        // Finite intersections first, then arbitrary (pairwise) unions; the
        // union phase cannot break intersection closure by distributivity.
        close_pairwise(&mut members, size_cap, |a, b| a.intersection(b))?;
        close_pairwise(&mut members, size_cap, |a, b| a.union(b))?;

        let topology = SoftTopology {
            ctx: Arc::clone(ctx),
            opens: members,
            size_cap,
        };
        debug_assert!(topology.verify().unwrap().is_ok());
        Ok(GenerationOutcome {
            topology,
            adjoined_null,
            adjoined_absolute,
        })
    }

    pub fn ctx(&self) -> &Ctx {
        &self.ctx
    }

    pub fn len(&self) -> usize {
        self.opens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.opens.is_empty()
    }

    pub fn size_cap(&self) -> usize {
        self.size_cap
    }

    /// Members in canonical key order.
    pub fn opens(&self) -> impl Iterator<Item = &SoftSet> {
        self.opens.iter()
    }

    pub fn is_open(&self, set: &SoftSet) -> bool {
        self.opens.contains(set)
    }

    pub fn verify(&self) -> Result<AxiomVerdict> {
        let opens: Vec<SoftSet> = self.opens.iter().cloned().collect();
        verify_axioms(&self.ctx, &opens)
    }

    /// Checks that every member has a derivation as a union of finite
    /// intersections of the subbase (plus null and absolute), i.e. that this
    /// topology is exactly the one the subbase generates. Returns the first
    /// underivable member otherwise.
    pub fn verify_generated_by(
        &self,
        subbase: &[SoftSet],
    ) -> std::result::Result<(), Box<SoftSet>> {
        self.derive_opens(subbase).map(|_| ())
    }

    /// The derivation certificate behind [`Self::verify_generated_by`]: for
    /// every member, the finite intersections of subbase members whose
    /// union reconstructs it.
    pub fn derive_opens(
        &self,
        subbase: &[SoftSet],
    ) -> std::result::Result<Vec<OpenDerivation>, Box<SoftSet>> {
        let mut gens: BTreeSet<SoftSet> = subbase.iter().cloned().collect();
        gens.insert(SoftSet::null(&self.ctx));
        gens.insert(SoftSet::absolute(&self.ctx));
        // The base: all finite intersections of subbase members.
        close_pairwise(&mut gens, usize::MAX, |a, b| a.intersection(b))
            .expect("uncapped closure cannot fail");
        let mut derivations = Vec::with_capacity(self.opens.len());
        for open in &self.opens {
            let mut reconstruction = SoftSet::null(&self.ctx);
            let mut terms = Vec::new();
            for base_member in &gens {
                if base_member.is_subset(open).unwrap_or(false) {
                    reconstruction = reconstruction.union(base_member).expect("same context");
                    terms.push(base_member.clone());
                }
            }
            if reconstruction != *open {
                return Err(Box::new(open.clone()));
            }
            derivations.push(OpenDerivation {
                open: open.clone(),
                terms,
            });
        }
        Ok(derivations)
    }
}

/// One member of a generated topology together with the intersection terms
/// whose union reconstructs it.
#[derive(Debug, Clone)]
pub struct OpenDerivation {
    pub open: SoftSet,
    pub terms: Vec<SoftSet>,
}

impl PartialEq for SoftTopology {
    fn eq(&self, other: &Self) -> bool {
        same_context(&self.ctx, &other.ctx) && self.opens == other.opens
    }
}

impl Eq for SoftTopology {}

fn close_pairwise(
    members: &mut BTreeSet<SoftSet>,
    size_cap: usize,
    op: impl Fn(&SoftSet, &SoftSet) -> Result<SoftSet>,
) -> Result<()> {
    loop {
        let snapshot: Vec<SoftSet> = members.iter().cloned().collect();
        let mut grew = false;
        for (i, a) in snapshot.iter().enumerate() {
            for b in &snapshot[i + 1..] {
                let combined = op(a, b)?;
                if members.insert(combined) {
                    grew = true;
                    if members.len() > size_cap {
                        return Err(Error::SizeCapExceeded {
                            cap: size_cap,
                            reached: members.len(),
                        });
                    }
                }
            }
        }
        if !grew {
            return Ok(());
        }
    }
}

/// Result of subbase generation, recording whether null or absolute had to
/// be adjoined.
#[derive(Debug, Clone)]
pub struct GenerationOutcome {
    pub topology: SoftTopology,
    pub adjoined_null: bool,
    pub adjoined_absolute: bool,
}

/// A soft topological space: a context together with a soft topology on it.
/// Closed sets are precomputed once since values never mutate.
#[derive(Debug, Clone)]
pub struct SoftSpace {
    topology: SoftTopology,
    closeds: BTreeSet<SoftSet>,
}

impl SoftSpace {
    pub fn new(topology: SoftTopology) -> SoftSpace {
        let closeds = topology.opens().map(SoftSet::complement).collect();
        SoftSpace { topology, closeds }
    }

    pub fn indiscrete(ctx: &Ctx) -> SoftSpace {
        SoftSpace::new(SoftTopology::indiscrete(ctx))
    }

    pub fn discrete(ctx: &Ctx) -> Result<SoftSpace> {
        Ok(SoftSpace::new(SoftTopology::discrete(ctx)?))
    }

    pub fn ctx(&self) -> &Ctx {
        self.topology.ctx()
    }

    pub fn topology(&self) -> &SoftTopology {
        &self.topology
    }

    pub fn opens(&self) -> impl Iterator<Item = &SoftSet> {
        self.topology.opens()
    }

    pub fn open_count(&self) -> usize {
        self.topology.len()
    }

    pub fn is_open(&self, set: &SoftSet) -> bool {
        self.topology.is_open(set)
    }

    /// Complements of the open sets, in canonical key order.
    pub fn closed_sets(&self) -> impl Iterator<Item = &SoftSet> {
        self.closeds.iter()
    }

    pub fn is_closed(&self, set: &SoftSet) -> bool {
        self.closeds.contains(set)
    }

    /// Soft closure: the intersection of all closed sets soft containing the
    /// given soft set. The absolute soft set is always such a superset.
    pub fn closure(&self, set: &SoftSet) -> Result<SoftSet> {
        if !same_context(set.ctx(), self.ctx()) {
            return Err(Error::ContextMismatch);
        }
        let supersets: Vec<&SoftSet> = self
            .closeds
            .iter()
            .filter(|c| set.is_subset(c).unwrap_or(false))
            .collect();
        SoftSet::big_intersection(supersets)
    }

    /// A soft point adheres to a soft set when every open set containing the
    /// point meets the set. Open sets suffice: every neighbourhood contains
    /// such an open set.
    pub fn is_adherent(&self, point: &SoftPoint, set: &SoftSet) -> Result<bool> {
        if !same_context(point.ctx(), self.ctx()) || !same_context(set.ctx(), self.ctx()) {
            return Err(Error::ContextMismatch);
        }
        for open in self.opens() {
            if point.belongs_to(open)? && !open.meets(set)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// True when the candidate family is a soft open base: between every
    /// point of every open set lies some member of the family. Cross-checked
    /// against the union-reconstruction formulation.
    pub fn is_base(&self, candidate: &[SoftSet]) -> Result<bool> {
        let members: BTreeSet<&SoftSet> = candidate.iter().collect();
        if members.iter().any(|b| !self.is_open(b)) {
            return Err(Error::NotOpenMember);
        }
        let mut pointwise = true;
        'outer: for open in self.opens() {
            for point in open.enumerate_points() {
                let covered = members
                    .iter()
                    .any(|b| point.belongs_to(b).unwrap() && b.is_subset(open).unwrap());
                if !covered {
                    pointwise = false;
                    break 'outer;
                }
            }
        }
        let mut reconstructs = true;
        for open in self.opens() {
            let mut acc = SoftSet::null(self.ctx());
            for b in &members {
                if b.is_subset(open)? {
                    acc = acc.union(b)?;
                }
            }
            if acc != *open {
                reconstructs = false;
                break;
            }
        }
        Ok(pointwise && reconstructs)
    }

    /// The soft subspace over a nonempty subset of the universe: the
    /// parameters stay, the universe shrinks, and each open set restricts.
    pub fn subspace(&self, selected: &[usize]) -> Result<Subspace> {
        Subspace::new(self, selected)
    }
}

impl PartialEq for SoftSpace {
    fn eq(&self, other: &Self) -> bool {
        self.topology == other.topology
    }
}

impl Eq for SoftSpace {}

/// A soft topological subspace, remembering how its universe sits inside
/// the parent's so soft sets can be carried back and forth.
#[derive(Debug, Clone)]
pub struct Subspace {
    parent_ctx: Ctx,
    space: SoftSpace,
    parent_elems: Vec<usize>,
}

impl Subspace {
    pub fn new(parent: &SoftSpace, selected: &[usize]) -> Result<Subspace> {
        if selected.is_empty() {
            return Err(Error::EmptySubset);
        }
        let mut parent_elems: Vec<usize> = selected.to_vec();
        parent_elems.sort_unstable();
        parent_elems.dedup();
        if let Some(&bad) = parent_elems
            .iter()
            .find(|&&e| e >= parent.ctx().universe_len())
        {
            return Err(Error::IndexOutOfRange {
                index: bad,
                limit: parent.ctx().universe_len(),
            });
        }
        let universe = parent_elems
            .iter()
            .map(|&e| parent.ctx().elem_label(e).to_string())
            .collect();
        let ctx = Context::new(universe, parent.ctx().param_labels().to_vec())?;

        let opens: Vec<SoftSet> = parent
            .opens()
            .map(|open| restrict_set(open, &ctx, &parent_elems))
            .collect();
        let topology = SoftTopology::try_new(&ctx, opens)?;
        Ok(Subspace {
            parent_ctx: Arc::clone(parent.ctx()),
            space: SoftSpace::new(topology),
            parent_elems,
        })
    }

    pub fn parent_ctx(&self) -> &Ctx {
        &self.parent_ctx
    }

    pub fn space(&self) -> &SoftSpace {
        &self.space
    }

    pub fn ctx(&self) -> &Ctx {
        self.space.ctx()
    }

    /// Parent universe indices of the subspace elements, ascending.
    pub fn parent_elems(&self) -> &[usize] {
        &self.parent_elems
    }

    /// Restricts a parent soft set to the subspace context.
    pub fn restrict(&self, set: &SoftSet) -> Result<SoftSet> {
        if !same_context(set.ctx(), &self.parent_ctx) {
            return Err(Error::ContextMismatch);
        }
        Ok(restrict_set(set, self.ctx(), &self.parent_elems))
    }

    /// Carries a subspace soft set back into the parent context.
    pub fn extend(&self, set: &SoftSet) -> Result<SoftSet> {
        if !same_context(set.ctx(), self.ctx()) {
            return Err(Error::ContextMismatch);
        }
        let mut out = SoftSet::null(&self.parent_ctx);
        for param in 0..self.ctx().params_len() {
            for elem in set.row(param) {
                out.set_cell(param, self.parent_elems[elem]);
            }
        }
        Ok(out)
    }

    /// The constant soft set of the subspace universe, over the parent.
    pub fn carrier(&self) -> SoftSet {
        SoftSet::constant(&self.parent_ctx, &self.parent_elems).expect("selected set is nonempty")
    }

    /// The inclusion soft mapping from the subspace into the parent.
    pub fn inclusion_mapping(&self) -> SoftMapping {
        let psi = (0..self.ctx().params_len()).collect();
        SoftMapping::new(self.ctx(), &self.parent_ctx, self.parent_elems.clone(), psi)
            .expect("inclusion tables are total by construction")
    }
}

fn restrict_set(set: &SoftSet, sub_ctx: &Ctx, parent_elems: &[usize]) -> SoftSet {
    SoftSet::from_fn(sub_ctx, |param, elem| {
        set.contains(param, parent_elems[elem])
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::context::Context;

    fn ctx2x2() -> Ctx {
        Context::from_labels(&["a", "b"], &["e1", "e2"]).unwrap()
    }

    /// tau = {null, absolute, F1} with F1 = {e1:{a}, e2:{a}}.
    fn three_open_space(ctx: &Ctx) -> (SoftSpace, SoftSet) {
        let f1 = SoftSet::from_rows(ctx, &[vec![0], vec![0]]).unwrap();
        let opens = vec![SoftSet::null(ctx), SoftSet::absolute(ctx), f1.clone()];
        let space = SoftSpace::new(SoftTopology::try_new(ctx, opens).unwrap());
        (space, f1)
    }

    #[test]
    fn axioms_on_indiscrete_and_discrete() {
        let ctx = ctx2x2();
        let indiscrete = vec![SoftSet::null(&ctx), SoftSet::absolute(&ctx)];
        assert_eq!(verify_axioms(&ctx, &indiscrete).unwrap(), AxiomVerdict::Ok);

        let discrete = SoftTopology::discrete(&ctx).unwrap();
        assert_eq!(discrete.len(), 16);
        assert!(discrete.verify().unwrap().is_ok());
    }

    #[test]
    fn axiom_witness_names_the_missing_union() {
        let ctx = ctx2x2();
        let f = SoftSet::from_rows(&ctx, &[vec![0], vec![]]).unwrap();
        let g = SoftSet::from_rows(&ctx, &[vec![1], vec![1]]).unwrap();
        // f meet g = null is present; f join g = {e1:{a,b}, e2:{b}} is not.
        let candidate = vec![
            SoftSet::null(&ctx),
            SoftSet::absolute(&ctx),
            f.clone(),
            g.clone(),
        ];
        match verify_axioms(&ctx, &candidate).unwrap() {
            AxiomVerdict::NotClosedUnderUnion(a, b) => {
                // g sorts before f in canonical key order.
                assert_eq!((a, b), (g, f));
            }
            verdict => panic!("unexpected verdict {verdict}"),
        }
    }

    #[test]
    fn missing_null_and_absolute_detected() {
        let ctx = ctx2x2();
        let verdict = verify_axioms(&ctx, &[SoftSet::absolute(&ctx)]).unwrap();
        assert_eq!(verdict, AxiomVerdict::MissingNull);
        let verdict = verify_axioms(&ctx, &[SoftSet::null(&ctx)]).unwrap();
        assert_eq!(verdict, AxiomVerdict::MissingAbsolute);
    }

    #[test]
    fn closed_sets_of_fixture() {
        let ctx = ctx2x2();
        let (space, f1) = three_open_space(&ctx);
        let closeds: Vec<SoftSet> = space.closed_sets().cloned().collect();
        assert_eq!(closeds.len(), 3);
        assert!(closeds.contains(&SoftSet::null(&ctx)));
        assert!(closeds.contains(&SoftSet::absolute(&ctx)));
        assert!(closeds.contains(&f1.complement()));
    }

    #[test]
    fn closure_fixture() {
        let ctx = ctx2x2();
        let (space, _) = three_open_space(&ctx);
        assert!(space.closure(&SoftSet::null(&ctx)).unwrap().is_null());
        assert!(space
            .closure(&SoftSet::absolute(&ctx))
            .unwrap()
            .is_absolute());

        let h = SoftSet::from_rows(&ctx, &[vec![1], vec![]]).unwrap();
        let expected = SoftSet::from_rows(&ctx, &[vec![1], vec![1]]).unwrap();
        assert_eq!(space.closure(&h).unwrap(), expected);

        // Closure of a closed set is itself.
        for closed in space.closed_sets() {
            assert_eq!(&space.closure(closed).unwrap(), closed);
        }
    }

    #[test]
    fn adherence_fixture() {
        let ctx = ctx2x2();
        let (space, _) = three_open_space(&ctx);
        let f = SoftSet::from_rows(&ctx, &[vec![1], vec![]]).unwrap();
        let p = SoftPoint::new(&ctx, 1, 1).unwrap(); // b@e2
        assert!(space.is_adherent(&p, &f).unwrap());

        // In a discrete space a point outside the set never adheres.
        let discrete = SoftSpace::discrete(&ctx).unwrap();
        assert!(!discrete.is_adherent(&p, &f).unwrap());
        // A point of the set always adheres.
        let q = SoftPoint::new(&ctx, 0, 1).unwrap();
        assert!(discrete.is_adherent(&q, &f).unwrap());
    }

    #[test]
    fn base_checks() {
        let ctx = ctx2x2();
        let discrete = SoftSpace::discrete(&ctx).unwrap();
        let all: Vec<SoftSet> = discrete.opens().cloned().collect();
        assert!(discrete.is_base(&all).unwrap());

        // All soft points plus null form a base of the discrete space.
        let mut points: Vec<SoftSet> = SoftPoint::grid(&ctx)
            .into_iter()
            .map(|p| p.to_soft_set())
            .collect();
        points.push(SoftSet::null(&ctx));
        assert!(discrete.is_base(&points).unwrap());

        let indiscrete = SoftSpace::indiscrete(&ctx);
        assert!(!indiscrete.is_base(&[SoftSet::null(&ctx)]).unwrap());
        assert_eq!(
            indiscrete.is_base(&[SoftSet::from_rows(&ctx, &[vec![0], vec![]]).unwrap()]),
            Err(Error::NotOpenMember)
        );
    }

    #[test]
    fn subbase_generation() {
        let ctx = ctx2x2();
        // Empty subbase gives the indiscrete topology.
        let empty = SoftTopology::generate_from_subbase(&ctx, &[]).unwrap();
        assert_eq!(empty, SoftTopology::indiscrete(&ctx));

        // All singleton points generate the discrete topology.
        let points: Vec<SoftSet> = SoftPoint::grid(&ctx)
            .into_iter()
            .map(|p| p.to_soft_set())
            .collect();
        let generated = SoftTopology::generate_from_subbase(&ctx, &points).unwrap();
        assert_eq!(generated, SoftTopology::discrete(&ctx).unwrap());

        // The core pair fixture reaches its meet and join.
        let f = SoftSet::from_rows(&ctx, &[vec![0], vec![]]).unwrap();
        let g = SoftSet::from_rows(&ctx, &[vec![0, 1], vec![1]]).unwrap();
        let gen = SoftTopology::generate_from_subbase(&ctx, &[f.clone(), g.clone()]).unwrap();
        assert!(gen.is_open(&f.intersection(&g).unwrap()));
        assert!(gen.is_open(&f.union(&g).unwrap()));
        assert!(gen.verify().unwrap().is_ok());
        assert!(gen.verify_generated_by(&[f, g]).is_ok());
    }

    #[test]
    fn generation_is_idempotent_on_topologies() {
        let ctx = ctx2x2();
        let (space, _) = three_open_space(&ctx);
        let opens: Vec<SoftSet> = space.opens().cloned().collect();
        let regen = SoftTopology::generate_from_subbase(&ctx, &opens).unwrap();
        assert_eq!(&regen, space.topology());
    }

    #[test]
    fn generation_respects_cap() {
        let ctx = ctx2x2();
        let points: Vec<SoftSet> = SoftPoint::grid(&ctx)
            .into_iter()
            .map(|p| p.to_soft_set())
            .collect();
        let err = SoftTopology::generate_from_subbase_capped(&ctx, &points, 5).unwrap_err();
        assert!(matches!(err, Error::SizeCapExceeded { cap: 5, .. }));
    }

    #[test]
    fn adjoining_is_recorded() {
        let ctx = ctx2x2();
        let outcome =
            SoftTopology::generate_from_subbase_capped(&ctx, &[], DEFAULT_SIZE_CAP).unwrap();
        assert!(outcome.adjoined_null && outcome.adjoined_absolute);
        let outcome = SoftTopology::generate_from_subbase_capped(
            &ctx,
            &[SoftSet::null(&ctx), SoftSet::absolute(&ctx)],
            DEFAULT_SIZE_CAP,
        )
        .unwrap();
        assert!(!outcome.adjoined_null && !outcome.adjoined_absolute);
    }

    #[test]
    fn subspace_fixture_collapses_to_indiscrete() {
        let ctx = ctx2x2();
        let (space, _) = three_open_space(&ctx);
        let sub = space.subspace(&[0]).unwrap(); // Y = {a}
        assert_eq!(sub.space().open_count(), 2);
        assert_eq!(sub.space(), &SoftSpace::indiscrete(sub.ctx()));
    }

    #[test]
    fn subspace_of_discrete_is_discrete() {
        let ctx = ctx2x2();
        let discrete = SoftSpace::discrete(&ctx).unwrap();
        let sub = discrete.subspace(&[1]).unwrap();
        assert_eq!(sub.space(), &SoftSpace::discrete(sub.ctx()).unwrap());
    }

    #[test]
    fn full_subspace_keeps_the_topology_bits() {
        let ctx = ctx2x2();
        let (space, _) = three_open_space(&ctx);
        let sub = space.subspace(&[0, 1]).unwrap();
        assert_eq!(sub.space().open_count(), space.open_count());
        assert_eq!(sub.ctx().universe_labels(), ctx.universe_labels());
    }

    #[test]
    fn subspace_rejects_empty_selection() {
        let ctx = ctx2x2();
        let (space, _) = three_open_space(&ctx);
        assert!(matches!(space.subspace(&[]), Err(Error::EmptySubset)));
    }

    #[test]
    fn restrict_extend_roundtrip() {
        let ctx = ctx2x2();
        let (space, f1) = three_open_space(&ctx);
        let sub = space.subspace(&[1]).unwrap();
        let restricted = sub.restrict(&f1).unwrap();
        assert!(restricted.is_null()); // F1 only touches element a
        let back = sub.extend(&SoftSet::absolute(sub.ctx())).unwrap();
        assert_eq!(back, sub.carrier());
        // extend . restrict intersects with the carrier
        let abs = SoftSet::absolute(&ctx);
        assert_eq!(
            sub.extend(&sub.restrict(&abs).unwrap()).unwrap(),
            abs.intersection(&sub.carrier()).unwrap()
        );
    }

    #[test]
    fn inclusion_mapping_embeds_the_carrier() {
        let ctx = ctx2x2();
        let (space, _) = three_open_space(&ctx);
        let sub = space.subspace(&[1]).unwrap();
        let inc = sub.inclusion_mapping();
        let image = inc.image(&SoftSet::absolute(sub.ctx())).unwrap();
        assert_eq!(image, sub.carrier());
    }
}
