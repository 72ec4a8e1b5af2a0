use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Uniform `[0, 1)` entries from a seeded stream; entries with `mask[i] == true`
/// (Dirichlet dofs) are exactly zero. The stream advances for masked entries
/// too, so the free values do not depend on which entries are masked.
pub fn random_initial_guess(seed: u64, mask: &[bool]) -> Vec<f64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    mask.iter()
        .map(|&fixed| {
            let v: f64 = rng.random();
            if fixed {
                0.0
            } else {
                v
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn deterministic() {
        let m = vec![false; 64];
        assert_eq!(random_initial_guess(7, &m), random_initial_guess(7, &m));
        assert_ne!(random_initial_guess(7, &m), random_initial_guess(8, &m));
    }

    #[test]
    fn all_masked_is_zero() {
        assert!(random_initial_guess(3, &[true; 20]).iter().all(|&v| v == 0.0));
    }

    #[test]
    fn unit_interval_and_mean() {
        let v = random_initial_guess(11, &[false; 1000]);
        assert!(v.iter().all(|&x| (0.0..1.0).contains(&x)));
        let mean = v.iter().sum::<f64>() / 1000.0;
        assert!(mean > 0.4 && mean < 0.6, "mean {mean}");
    }
}
