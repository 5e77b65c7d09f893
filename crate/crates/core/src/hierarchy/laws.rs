//! Seeded sampling checks of the extended product on hereditary sets.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::hset::{hset_mult, lesssim_star, HSet};
use super::levels::{build_level, LevelKind, LevelLimits};
use crate::error::Result;
use crate::monoid::MonoidalQO;
use crate::report::{Check, Report};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LawSampling {
    /// Samples per law.
    pub samples: usize,
    pub seed: u64,
    /// Levels `0..=max_alpha` feed the pool.
    pub max_alpha: usize,
    /// Extra random sets built from pool members, not reduced to
    /// representatives.
    pub raw_sets: usize,
}

impl Default for LawSampling {
    fn default() -> Self {
        LawSampling { samples: 10_000, seed: 0, max_alpha: 2, raw_sets: 200 }
    }
}

/// Members of the full-powerset level `max_alpha`, followed by random sets
/// of one to three members of the level below, so every entry stays within
/// level `max_alpha`.
pub fn sample_pool(m: &MonoidalQO, cfg: &LawSampling, limits: &LevelLimits, rng: &mut ChaCha8Rng) -> Result<Vec<HSet>> {
    let level = build_level(m.order(), cfg.max_alpha, LevelKind::Vstar, limits)?;
    let mut pool: Vec<HSet> = level.members().to_vec();
    if cfg.max_alpha > 0 {
        let lower = build_level(m.order(), cfg.max_alpha - 1, LevelKind::Vstar, limits)?;
        for _ in 0..cfg.raw_sets {
            let k = rng.gen_range(1..=3);
            let picked: Vec<HSet> =
                (0..k).map(|_| lower.members().choose(rng).expect("nonempty").clone()).collect();
            pool.push(HSet::set(picked)?);
        }
    }
    Ok(pool)
}

/// Associativity up to equivalence, `x ≲ xy`, and monotonicity, each on
/// `cfg.samples` random instances from [`sample_pool`].
pub fn check_mult_laws(m: &MonoidalQO, cfg: &LawSampling, limits: &LevelLimits) -> Result<Report> {
    let q = m.order();
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let pool = sample_pool(m, cfg, limits, &mut rng)?;
    let n = pool.len();
    let below: Vec<Vec<usize>> = (0..n)
        .map(|j| (0..n).filter(|&i| lesssim_star(&pool[i], &pool[j], q)).collect())
        .collect();
    let show = |xs: &[&HSet]| xs.iter().map(|x| x.show(q)).collect::<Vec<_>>();
    let mul = |x: &HSet, y: &HSet| hset_mult(x, y, m);
    let mut assoc = Check::new("associativity");
    let mut incr = Check::new("weakly_increasing");
    let mut mono = Check::new("monotone");
    for _ in 0..cfg.samples {
        let (x, y, z) = (&pool[rng.gen_range(0..n)], &pool[rng.gen_range(0..n)], &pool[rng.gen_range(0..n)]);
        let l = mul(&mul(x, y), z);
        let r = mul(x, &mul(y, z));
        assoc.record(lesssim_star(&l, &r, q) && lesssim_star(&r, &l, q), || show(&[x, y, z]));

        let (x, y) = (&pool[rng.gen_range(0..n)], &pool[rng.gen_range(0..n)]);
        incr.record(lesssim_star(x, &mul(x, y), q), || show(&[x, y]));

        let (j1, j2) = (rng.gen_range(0..n), rng.gen_range(0..n));
        let i1 = *below[j1].choose(&mut rng).expect("reflexive");
        let i2 = *below[j2].choose(&mut rng).expect("reflexive");
        let (x0, x1, y0, y1) = (&pool[i1], &pool[j1], &pool[i2], &pool[j2]);
        mono.record(lesssim_star(&mul(x0, y0), &mul(x1, y1), q), || show(&[x0, x1, y0, y1]));
    }
    Ok(Report { subject: format!("set_product_laws(seed={})", cfg.seed), checks: vec![assoc, incr, mono] })
}
