//! Brute-force oracles and the seeded instance sampler used for
//! differential testing.
//!
//! The oracles here are deliberately naive full quantifier scans and never
//! reuse the query paths they are checked against: closure is recomputed
//! from adherent points instead of closed supersets, and the product
//! topology is rebuilt from product-form slabs instead of projection
//! preimages. All sampling flows through one splittable deterministic
//! generator so any failure is reproducible from its seed and stream.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::context::{Context, Ctx};
use crate::error::{Error, Result};
use crate::mapping::SoftMapping;
use crate::product::{ProductContext, DEFAULT_CELL_BUDGET};
use crate::soft_set::{SoftPoint, SoftSet};
use crate::topology::{SoftSpace, SoftTopology, DEFAULT_SIZE_CAP};

/// Largest `|U| * |E|` for which all soft sets are enumerated.
pub const ENUMERATION_CELL_LIMIT: usize = 16;

/// Caps and seed for random instance generation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OracleConfig {
    pub max_universe: usize,
    pub max_params: usize,
    pub max_subbase: usize,
    pub seed: u64,
    pub iterations: usize,
}

impl Default for OracleConfig {
    fn default() -> Self {
        OracleConfig {
            max_universe: 3,
            max_params: 2,
            max_subbase: 4,
            seed: 0,
            iterations: 100,
        }
    }
}

/// All `2^(|U||E|)` soft sets of a small context, in canonical key order,
/// without repeats.
pub fn enumerate_all_soft_sets(ctx: &Ctx) -> Result<Vec<SoftSet>> {
    let cells = ctx.cells();
    if cells > ENUMERATION_CELL_LIMIT {
        return Err(Error::TooLarge {
            cells,
            max: ENUMERATION_CELL_LIMIT,
        });
    }
    let width = ctx.universe_len();
    let mut out = Vec::with_capacity(1 << cells);
    for counter in 0u32..(1 << cells) {
        // Cell 0 rides the high bit so ascending counters give key order.
        out.push(SoftSet::from_fn(ctx, |param, elem| {
            let cell = param * width + elem;
            counter >> (cells - 1 - cell) & 1 == 1
        }));
    }
    Ok(out)
}

/// Closure as the set of soft adherent points: a grid point belongs to the
/// result exactly when every open set containing it meets the given soft
/// set. Must agree with the closed-superset closure of the space.
pub fn closure_via_adherence(space: &SoftSpace, set: &SoftSet) -> Result<SoftSet> {
    let mut points = Vec::new();
    for point in SoftPoint::grid(space.ctx()) {
        let mut adherent = true;
        for open in space.opens() {
            if point.belongs_to(open)? && !open.meets(set)? {
                adherent = false;
                break;
            }
        }
        if adherent {
            points.push(point);
        }
    }
    let mut out = SoftSet::null(space.ctx());
    for point in points {
        out = out.union(&point.to_soft_set())?;
    }
    Ok(out)
}

/// The soft product topology rebuilt without projection mappings: the base
/// consists of the soft products of one open set per factor (payloads on a
/// subset of factors, absolutes elsewhere, which the products of opens
/// already cover), closed under unions.
pub fn product_space_via_product_form(
    factor_spaces: &[&SoftSpace],
) -> Result<(ProductContext, SoftSpace)> {
    let ctxs: Vec<Ctx> = factor_spaces.iter().map(|s| s.ctx().clone()).collect();
    let product = ProductContext::with_budget(&ctxs, DEFAULT_CELL_BUDGET)?;
    let mut base = Vec::new();
    let opens_per_factor: Vec<Vec<&SoftSet>> =
        factor_spaces.iter().map(|s| s.opens().collect()).collect();
    let mut combo = vec![0usize; factor_spaces.len()];
    'enumerate: loop {
        let slots: Vec<&SoftSet> = combo
            .iter()
            .enumerate()
            .map(|(i, &c)| opens_per_factor[i][c])
            .collect();
        base.push(product.product_soft_set(&slots)?);
        let mut slot = factor_spaces.len();
        loop {
            if slot == 0 {
                break 'enumerate;
            }
            slot -= 1;
            combo[slot] += 1;
            if combo[slot] < opens_per_factor[slot].len() {
                break;
            }
            combo[slot] = 0;
        }
    }
    let outcome =
        SoftTopology::generate_from_subbase_capped(product.ctx(), &base, DEFAULT_SIZE_CAP)?;
    Ok((product, SoftSpace::new(outcome.topology)))
}

/// Deterministic instance sampler: one seed, one stream per instance.
#[derive(Debug, Clone)]
pub struct Sampler {
    rng: ChaCha8Rng,
}

impl Sampler {
    pub fn new(seed: u64, stream: u64) -> Sampler {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(stream);
        Sampler { rng }
    }

    /// A context within the configured caps, with generated labels.
    pub fn context(&mut self, cfg: &OracleConfig) -> Ctx {
        let universe_len = self.rng.gen_range(1..=cfg.max_universe.max(1));
        let params_len = self.rng.gen_range(1..=cfg.max_params.max(1));
        self.context_sized(universe_len, params_len)
    }

    pub fn context_sized(&mut self, universe_len: usize, params_len: usize) -> Ctx {
        let universe = (0..universe_len).map(|i| format!("u{i}")).collect();
        let params = (0..params_len).map(|i| format!("e{i}")).collect();
        Context::new(universe, params).expect("generated labels are valid")
    }

    /// A uniformly random soft set over the context.
    pub fn soft_set(&mut self, ctx: &Ctx) -> SoftSet {
        let mut set = SoftSet::null(ctx);
        for param in 0..ctx.params_len() {
            for elem in 0..ctx.universe_len() {
                if self.rng.gen_bool(0.5) {
                    set.set_cell(param, elem);
                }
            }
        }
        set
    }

    /// A nonempty subset of the universe.
    pub fn nonempty_universe_subset(&mut self, ctx: &Ctx) -> Vec<usize> {
        loop {
            let picked: Vec<usize> = (0..ctx.universe_len())
                .filter(|_| self.rng.gen_bool(0.5))
                .collect();
            if !picked.is_empty() {
                return picked;
            }
        }
    }

    /// A random space: a random context within the caps and a topology
    /// generated from a random subbase of at most `max_subbase` soft sets.
    /// Deterministic in the seed and stream; redraws a bounded number of
    /// times if generation ever hits the size cap.
    pub fn space(&mut self, cfg: &OracleConfig) -> Result<SoftSpace> {
        let ctx = self.context(cfg);
        self.space_on(&ctx, cfg.max_subbase)
    }

    pub fn space_on(&mut self, ctx: &Ctx, max_subbase: usize) -> Result<SoftSpace> {
        const MAX_RETRIES: usize = 16;
        let mut last_err = None;
        for _ in 0..MAX_RETRIES {
            let count = self.rng.gen_range(0..=max_subbase);
            let subbase: Vec<SoftSet> = (0..count).map(|_| self.soft_set(ctx)).collect();
            match SoftTopology::generate_from_subbase_capped(ctx, &subbase, DEFAULT_SIZE_CAP) {
                Ok(outcome) => return Ok(SoftSpace::new(outcome.topology)),
                Err(err @ Error::SizeCapExceeded { .. }) => last_err = Some(err),
                Err(err) => return Err(err),
            }
        }
        Err(last_err.expect("retry loop only repeats on cap errors"))
    }

    /// A uniformly random total mapping between the two contexts.
    pub fn mapping(&mut self, src: &Ctx, dst: &Ctx) -> SoftMapping {
        let phi = (0..src.universe_len())
            .map(|_| self.rng.gen_range(0..dst.universe_len()))
            .collect();
        let psi = (0..src.params_len())
            .map(|_| self.rng.gen_range(0..dst.params_len()))
            .collect();
        SoftMapping::new(src, dst, phi, psi).expect("sampled tables are total")
    }

    /// An injective mapping; requires the target components to be at least
    /// as large as the source components.
    pub fn injective_mapping(&mut self, src: &Ctx, dst: &Ctx) -> SoftMapping {
        let phi = self.injection(src.universe_len(), dst.universe_len());
        let psi = self.injection(src.params_len(), dst.params_len());
        SoftMapping::new(src, dst, phi, psi).expect("sampled injection is total")
    }

    /// A surjective mapping; requires the source components to be at least
    /// as large as the target components.
    pub fn surjective_mapping(&mut self, src: &Ctx, dst: &Ctx) -> SoftMapping {
        let phi = self.surjection(src.universe_len(), dst.universe_len());
        let psi = self.surjection(src.params_len(), dst.params_len());
        SoftMapping::new(src, dst, phi, psi).expect("sampled surjection is total")
    }

    fn injection(&mut self, from: usize, to: usize) -> Vec<usize> {
        assert!(from <= to, "injection needs a target at least as large");
        let mut pool: Vec<usize> = (0..to).collect();
        let mut out = Vec::with_capacity(from);
        for _ in 0..from {
            let at = self.rng.gen_range(0..pool.len());
            out.push(pool.swap_remove(at));
        }
        out
    }

    fn surjection(&mut self, from: usize, to: usize) -> Vec<usize> {
        assert!(from >= to, "surjection needs a source at least as large");
        // Hit every target once, fill the rest uniformly, then shuffle.
        let mut out: Vec<usize> = (0..to).collect();
        for _ in to..from {
            out.push(self.rng.gen_range(0..to));
        }
        for i in (1..out.len()).rev() {
            let j = self.rng.gen_range(0..=i);
            out.swap(i, j);
        }
        out
    }
}
