//! Seeded random instances.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::cost::Cost;
use crate::error::{Error, Result};
use crate::instance::Instance;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GenParams {
    pub n: usize,
    pub k_max: u64,
    pub cost_max: u64,
    pub inf_prob: f64,
    pub seed: u64,
    /// Every city gets exactly this multiplicity instead of a random one.
    pub k_fixed: Option<u64>,
}

impl Default for GenParams {
    fn default() -> Self {
        GenParams { n: 5, k_max: 3, cost_max: 20, inf_prob: 0.1, seed: 0, k_fixed: None }
    }
}

/// Costs are uniform in `0..=cost_max`, `inf` with probability `inf_prob`,
/// except on a random Hamiltonian cycle and the diagonal, which stay finite
/// so that every multiplicity vector is realizable.
pub fn generate(p: &GenParams) -> Result<Instance> {
    if p.n == 0 {
        return Err(Error::InvalidInput("n must be at least 1".into()));
    }
    if p.k_max == 0 || p.k_fixed == Some(0) {
        return Err(Error::InvalidInput("multiplicities must be positive".into()));
    }
    if !(0.0..=1.0).contains(&p.inf_prob) {
        return Err(Error::InvalidInput("inf probability must lie in [0, 1]".into()));
    }
    let n = p.n;
    let mut rng = ChaCha8Rng::seed_from_u64(p.seed);
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(&mut rng);
    let mut forced = vec![false; n * n];
    for (idx, &v) in order.iter().enumerate() {
        forced[v * n + order[(idx + 1) % n]] = true;
        forced[v * n + v] = true;
    }
    let cost = forced
        .iter()
        .map(|&f| {
            let c = rng.gen_range(0..=p.cost_max);
            if !f && p.inf_prob > 0.0 && rng.gen_bool(p.inf_prob) {
                Ok(Cost::Infinite)
            } else {
                Cost::finite(c)
            }
        })
        .collect::<Result<Vec<_>>>()?;
    let k = (0..n).map(|_| p.k_fixed.unwrap_or_else(|| rng.gen_range(1..=p.k_max))).collect();
    Instance::new(cost, k)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn deterministic() {
        let p = GenParams { n: 6, seed: 42, ..Default::default() };
        assert_eq!(generate(&p).unwrap(), generate(&p).unwrap());
        let q = GenParams { seed: 43, ..p };
        assert_ne!(generate(&p).unwrap(), generate(&q).unwrap());
    }

    #[test]
    fn no_inf_at_zero_probability() {
        let p = GenParams { n: 7, inf_prob: 0.0, ..Default::default() };
        assert!(generate(&p).unwrap().costs().iter().all(|c| c.is_finite()));
    }

    #[test]
    fn all_inf_keeps_cycle_and_diagonal() {
        let p = GenParams { n: 6, inf_prob: 1.0, ..Default::default() };
        let inst = generate(&p).unwrap();
        let finite = inst.costs().iter().filter(|c| c.is_finite()).count();
        assert_eq!(finite, 12);
    }
}
