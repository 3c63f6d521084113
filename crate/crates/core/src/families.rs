//! Deterministic input generators for tests and benchmarks.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Family {
    /// Uniform over a 4-letter alphabet.
    Random,
    /// Prefix of the infinite Fibonacci word (a -> ab, b -> a).
    Fibonacci,
    /// Prefix of the Thue-Morse word (parity of popcount).
    ThueMorse,
    /// A random length-16 block repeated to the requested length.
    Periodic,
}

impl Family {
    pub const ALL: [Family; 4] = [
        Family::Random,
        Family::Fibonacci,
        Family::ThueMorse,
        Family::Periodic,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Family::Random => "random",
            Family::Fibonacci => "fibonacci",
            Family::ThueMorse => "thue-morse",
            Family::Periodic => "periodic",
        }
    }

    pub fn parse(s: &str) -> Option<Family> {
        Self::ALL.into_iter().find(|f| f.name() == s)
    }
}

/// Generates a word of exactly `n` symbols. The `seed` only affects the
/// randomized families.
pub fn generate(family: Family, n: usize, seed: u64) -> Vec<u32> {
    match family {
        Family::Random => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            (0..n).map(|_| rng.random_range(0..4u32)).collect()
        }
        Family::Fibonacci => {
            // a = 0, b = 1; iterate the substitution until long enough.
            let mut word = vec![0u32];
            while word.len() < n {
                let mut next = Vec::with_capacity(word.len() * 2);
                for &c in &word {
                    if c == 0 {
                        next.extend_from_slice(&[0, 1]);
                    } else {
                        next.push(0);
                    }
                }
                word = next;
            }
            word.truncate(n);
            word
        }
        Family::ThueMorse => (0..n).map(|i| (i as u64).count_ones() & 1).collect(),
        Family::Periodic => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let block: Vec<u32> = (0..16).map(|_| rng.random_range(0..4u32)).collect();
            (0..n).map(|i| block[i % 16]).collect()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fibonacci_prefix() {
        // abaababaabaab...
        let w = generate(Family::Fibonacci, 13, 0);
        assert_eq!(w, vec![0, 1, 0, 0, 1, 0, 1, 0, 0, 1, 0, 0, 1]);
    }

    #[test]
    fn thue_morse_prefix() {
        let w = generate(Family::ThueMorse, 8, 0);
        assert_eq!(w, vec![0, 1, 1, 0, 1, 0, 0, 1]);
    }

    #[test]
    fn generators_are_deterministic() {
        for family in Family::ALL {
            assert_eq!(generate(family, 64, 7), generate(family, 64, 7));
            assert_eq!(generate(family, 64, 7).len(), 64);
        }
    }

    #[test]
    fn periodic_has_period_16() {
        let w = generate(Family::Periodic, 100, 3);
        for i in 16..100 {
            assert_eq!(w[i], w[i - 16]);
        }
    }
}
