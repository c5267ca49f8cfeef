//! Randomized check of the root-weight bound on generated functions.

use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};

use crate::coder::{assign_codes, build_ph_tree, ceil_log2, root_weight_bound, RootWeight, TheoremInstance};
use crate::count::count_enumerate;
use crate::error::Result;
use crate::function::BooleanFunction;

#[derive(Debug, Clone, Copy)]
pub struct SelftestConfig {
    pub iterations: usize,
    pub max_n: u32,
    pub max_m: u32,
    pub seed: u64,
}

impl Default for SelftestConfig {
    fn default() -> Self {
        SelftestConfig {
            iterations: 10_000,
            max_n: 10,
            max_m: 8,
            seed: 0x5eed,
        }
    }
}

#[derive(Debug, Clone, Default)]
pub struct SelftestSummary {
    pub iterations: usize,
    pub passed: usize,
    pub exactly_n: usize,
    /// Descriptions of the first few failures.
    pub failures: Vec<String>,
}

impl SelftestSummary {
    pub fn all_passed(&self) -> bool {
        self.passed == self.iterations
    }
}

/// A function with `n` inputs whose outputs are drawn from a small random
/// pool of patterns. Drawing the pool index as the minimum of two uniform
/// picks skews multiplicities so that both power-of-two and other counts
/// show up.
pub fn random_function(rng: &mut impl Rng, n: u32, m: u32) -> BooleanFunction {
    let space = 1usize << n;
    let patterns = 1u64 << m.min(20);
    let pool_size = rng.gen_range(1..=space.min(patterns as usize).min(64));
    let mut pool: Vec<u64> = Vec::with_capacity(pool_size);
    while pool.len() < pool_size {
        let p = rng.gen_range(0..patterns);
        if !pool.contains(&p) {
            pool.push(p);
        }
    }
    pool.shuffle(rng);
    let outputs = (0..space)
        .map(|_| {
            let i = rng.gen_range(0..pool_size).min(rng.gen_range(0..pool_size));
            pool[i]
        })
        .collect();
    BooleanFunction::from_truth_table("random", n, m, outputs).expect("valid random table")
}

/// Checks one function; `Ok(Some(exact))` on success where `exact` tells
/// whether the root weight is `n`.
pub fn check_function(f: &BooleanFunction) -> Result<std::result::Result<bool, String>> {
    let n = f.inputs();
    let h = count_enumerate(f)?;
    let tree = build_ph_tree(&h)?;
    let root = tree.root_weight();
    if root != n && root != n + 1 {
        return Ok(Err(format!("root weight {root} for n = {n}")));
    }
    let rounded: u128 = h.iter().map(|(_, mu)| 1u128 << ceil_log2(mu)).sum();
    let sum_exact = rounded == 1u128 << n;
    let all_pow2 = h.iter().all(|(_, mu)| mu.is_power_of_two());
    let bound = root_weight_bound(&h)? == RootWeight::ExactlyN;
    if (root == n) != sum_exact || sum_exact != all_pow2 || bound != sum_exact {
        return Ok(Err(format!(
            "n = {n}: root {root}, rounded sum {rounded}, all powers of two {all_pow2}, bound {bound}"
        )));
    }
    if let Err(e) = tree.check() {
        return Ok(Err(format!("tree check: {e}")));
    }
    let counts: Vec<u128> = h.iter().map(|(_, mu)| mu).collect();
    let replay = TheoremInstance::from_counts(n, &counts)?.verify();
    if !replay.holds() || replay.root_weight != root {
        return Ok(Err(format!(
            "replay root {} vs tree {root}: {:?}",
            replay.root_weight, replay.violations
        )));
    }
    let cb = assign_codes(&tree);
    if !cb.is_prefix_free() {
        return Ok(Err("codebook not prefix-free".into()));
    }
    for (p, mu) in h.iter() {
        let len = cb.codeword(&p).map(|c| c.len()).unwrap_or(u32::MAX);
        if len.saturating_add(ceil_log2(mu)) > cb.total_width() {
            return Ok(Err(format!("pattern {p} overflows its budget")));
        }
    }
    Ok(Ok(root == n))
}

pub fn run_selftest(cfg: &SelftestConfig) -> Result<SelftestSummary> {
    let mut rng = StdRng::seed_from_u64(cfg.seed);
    let mut summary = SelftestSummary {
        iterations: cfg.iterations,
        ..Default::default()
    };
    for i in 0..cfg.iterations {
        let n = rng.gen_range(1..=cfg.max_n.max(1));
        let m = rng.gen_range(1..=cfg.max_m.max(1));
        let f = random_function(&mut rng, n, m);
        match check_function(&f)? {
            Ok(exact) => {
                summary.passed += 1;
                summary.exactly_n += usize::from(exact);
            }
            Err(msg) if summary.failures.len() < 10 => {
                summary.failures.push(format!("iteration {i}: {msg}"))
            }
            Err(_) => {}
        }
    }
    Ok(summary)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_run_passes() {
        let summary = run_selftest(&SelftestConfig {
            iterations: 300,
            max_n: 6,
            ..Default::default()
        })
        .unwrap();
        assert!(summary.all_passed(), "{:?}", summary.failures);
        assert!(summary.exactly_n > 0 && summary.exactly_n < 300);
    }

    #[test]
    fn same_seed_same_summary() {
        let cfg = SelftestConfig {
            iterations: 50,
            max_n: 5,
            ..Default::default()
        };
        let a = run_selftest(&cfg).unwrap();
        let b = run_selftest(&cfg).unwrap();
        assert_eq!((a.passed, a.exactly_n), (b.passed, b.exactly_n));
    }
}
