//! Seeded random diagrams for test corpora and batch runs.

use num_integer::Integer;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::grid::GridDiagram;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Uniform random valid diagram for L(p,q) of index n.
pub fn random_diagram<R: Rng>(rng: &mut R, p: usize, q: usize, n: usize) -> GridDiagram {
    let big = p * n;
    loop {
        let mut zc: Vec<usize> = (0..n).collect();
        let mut wc: Vec<usize> = (0..n).collect();
        zc.shuffle(rng);
        wc.shuffle(rng);
        let slot = |rng: &mut R, i: usize, c: usize| {
            let base = (c + big - (q * i) % n) % n;
            base + n * rng.gen_range(0..p)
        };
        let z: Vec<usize> = (0..n).map(|i| slot(rng, i, zc[i])).collect();
        let w: Vec<usize> = (0..n).map(|i| slot(rng, i, wc[i])).collect();
        if let Ok(d) = GridDiagram::new(p, q, z, w) {
            return d;
        }
    }
}

/// Coprime pairs 0 < q < p for 2 ≤ p ≤ max_p.
pub fn lens_pairs(max_p: usize) -> Vec<(usize, usize)> {
    (2..=max_p)
        .flat_map(|p| (1..p).filter(move |q| p.gcd(q) == 1).map(move |q| (p, q)))
        .collect()
}

/// `count` diagrams with random (p,q) up to max_p and index up to max_n.
pub fn random_corpus(seed: u64, count: usize, max_p: usize, max_n: usize) -> Vec<GridDiagram> {
    let mut r = rng(seed);
    let pairs = lens_pairs(max_p);
    (0..count)
        .map(|_| {
            let (p, q) = pairs[r.gen_range(0..pairs.len())];
            let n = r.gen_range(1..=max_n);
            random_diagram(&mut r, p, q, n)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn corpus_is_deterministic_and_valid() {
        let a = random_corpus(7, 20, 5, 3);
        let b = random_corpus(7, 20, 5, 3);
        assert_eq!(a, b);
        assert!(a.iter().all(|d| d.p <= 5 && d.n <= 3));
        assert_eq!(lens_pairs(5).len(), 1 + 2 + 2 + 4);
    }
}
