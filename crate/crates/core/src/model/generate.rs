use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::instance::{Group, Instance};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GenerateError {
    #[error("both groups need at least one machine (m1={m1}, m2={m2})")]
    EmptyGroup { m1: usize, m2: usize },
    #[error("need at least m1+m2={machines} jobs, got n={n}")]
    TooFewJobs { n: usize, machines: usize },
    #[error("multiplicity bounds must be non-negative (bmax={bmax}, amax={amax})")]
    NegativeBound { bmax: i64, amax: i64 },
}

fn fill(rng: &mut ChaCha8Rng, n: usize, m1: usize, m2: usize, bmax: i64, amax: i64) -> Instance {
    let m = m1 + m2;
    let b = (0..n).map(|_| (0..m).map(|_| rng.gen_range(0..=bmax)).collect()).collect();
    let a = (0..n).map(|_| [rng.gen_range(0..=amax), rng.gen_range(0..=amax)]).collect();
    Instance {
        jobs: (1..=n).map(|j| format!("J{j}")).collect(),
        group1: (1..=m1).map(|h| format!("M{h}")).collect(),
        group2: (m1 + 1..=m).map(|h| format!("M{h}")).collect(),
        b,
        a,
    }
}

/// A seeded random instance with entries uniform in `[0, bmax]` and
/// `[0, amax]`. Identical arguments always produce identical instances.
pub fn generate_random(
    seed: u64,
    n: usize,
    m1: usize,
    m2: usize,
    bmax: i64,
    amax: i64,
) -> Result<Instance, GenerateError> {
    if m1 == 0 || m2 == 0 {
        return Err(GenerateError::EmptyGroup { m1, m2 });
    }
    if n < m1 + m2 {
        return Err(GenerateError::TooFewJobs { n, machines: m1 + m2 });
    }
    if bmax < 0 || amax < 0 {
        return Err(GenerateError::NegativeBound { bmax, amax });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    Ok(fill(&mut rng, n, m1, m2, bmax, amax))
}

/// A seeded instance where group `empty` has no machines and no hyperedges.
pub fn generate_one_group(seed: u64, n: usize, m: usize, empty: Group, bmax: i64, amax: i64) -> Instance {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (m1, m2) = match empty {
        Group::One => (0, m),
        Group::Two => (m, 0),
    };
    let mut inst = fill(&mut rng, n, m1, m2, bmax.max(0), amax.max(0));
    for pair in &mut inst.a {
        pair[empty.index()] = 0;
    }
    inst
}

/// Size parameters of a seeded random batch.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BatchShape {
    pub max_machines: usize,
    pub max_jobs: usize,
    pub bmax: i64,
    pub amax: i64,
}

/// The `index`-th instance of a seeded batch: both groups non-empty,
/// `2 ≤ m ≤ max_machines` and `m ≤ n ≤ max_jobs`.
pub fn batch_instance(seed: u64, index: u64, shape: BatchShape) -> Instance {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ index.wrapping_mul(0x9E37_79B9_7F4A_7C15));
    let max_m = shape.max_machines.max(2);
    let m = rng.gen_range(2..=max_m);
    let m1 = rng.gen_range(1..m);
    let n = rng.gen_range(m..=shape.max_jobs.max(m));
    let inner: u64 = rng.gen();
    generate_random(inner, n, m1, m - m1, shape.bmax, shape.amax).expect("batch sizes are valid by construction")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::validate_instance;

    #[test]
    fn deterministic_for_fixed_seed() {
        let a = generate_random(1, 5, 2, 2, 3, 3).unwrap();
        let b = generate_random(1, 5, 2, 2, 3, 3).unwrap();
        assert_eq!(a, b);
        assert_ne!(a, generate_random(2, 5, 2, 2, 3, 3).unwrap());
    }

    #[test]
    fn zero_bounds_give_zero_instance() {
        let inst = generate_random(9, 3, 1, 2, 0, 0).unwrap();
        assert!(inst.b.iter().flatten().all(|&v| v == 0));
        assert!(inst.a.iter().flatten().all(|&v| v == 0));
    }

    #[test]
    fn generated_instances_validate() {
        let inst = generate_random(3, 4, 1, 1, 2, 2).unwrap();
        assert!(validate_instance(&inst).is_empty());
        assert!(inst.b.iter().flatten().all(|&v| (0..=2).contains(&v)));
    }

    #[test]
    fn invalid_sizes_are_rejected() {
        assert!(generate_random(0, 4, 0, 2, 1, 1).is_err());
        assert!(generate_random(0, 2, 2, 1, 1, 1).is_err());
        assert!(generate_random(0, 4, 2, 1, -1, 1).is_err());
    }

    #[test]
    fn batch_respects_shape() {
        let shape = BatchShape { max_machines: 6, max_jobs: 8, bmax: 4, amax: 4 };
        for i in 0..50 {
            let inst = batch_instance(11, i, shape);
            assert!((2..=6).contains(&inst.m()));
            assert!(inst.n() >= inst.m() && inst.n() <= 8);
            assert!(!inst.group1.is_empty() && !inst.group2.is_empty());
        }
    }

    #[test]
    fn one_group_generator_leaves_group_empty() {
        let inst = generate_one_group(5, 3, 2, Group::Two, 2, 2);
        assert!(inst.group2.is_empty());
        assert!(inst.a.iter().all(|p| p[1] == 0));
        assert!(validate_instance(&inst).is_empty());
    }
}
