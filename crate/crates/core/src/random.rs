//! Seeded random maps for property testing.

use rand::seq::{index, SliceRandom};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::map::FlagMap;
use crate::permutation::Permutation;
use crate::rotation::RotationSystem;

pub const DEFAULT_SEED: u64 = 0x5eed_2024;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RandomMapError {
    #[error("edge count must be at least 1")]
    NoEdges,
    #[error("cannot twist {twists} of {edges} edges")]
    TooManyTwists { edges: usize, twists: usize },
}

/// Uniform random rotation system on `2 * edges` half-edges.
pub fn random_rotation(edges: usize, rng: &mut ChaCha8Rng) -> RotationSystem {
    let h = 2 * edges;
    let mut images: Vec<usize> = (1..=h).collect();
    images.shuffle(rng);
    let sigma_v = Permutation::from_images(&images).expect("shuffle is a bijection");
    let mut points: Vec<usize> = (1..=h).collect();
    points.shuffle(rng);
    let pairs: Vec<[usize; 2]> = points.chunks_exact(2).map(|c| [c[0], c[1]]).collect();
    let sigma_e = Permutation::from_cycles(h, pairs).expect("pairs are disjoint");
    RotationSystem::new(sigma_v, sigma_e).expect("matching is a fixed-point-free involution")
}

/// Random map with `edges` edges, `twists` of them half-twisted.
///
/// Draws a uniform rotation system, converts it to a flag map, then on each
/// chosen edge with `τ0 = (p q)(r s)` and `τ2 = (p r)(q s)` replaces `τ0`
/// by `(p s)(q r)`.
pub fn random_map(edges: usize, twists: usize, seed: u64) -> Result<FlagMap, RandomMapError> {
    if edges == 0 {
        return Err(RandomMapError::NoEdges);
    }
    if twists > edges {
        return Err(RandomMapError::TooManyTwists { edges, twists });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let m = random_rotation(edges, &mut rng).to_flag_map();
    if twists == 0 {
        return Ok(m);
    }
    let [t0, t1, t2] = m.taus().clone();
    let mut images = t0.images();
    for i in index::sample(&mut rng, edges, twists).into_iter() {
        let p = m.edges()[i].flags[0];
        let q = t0.apply(p);
        let r = t2.apply(p);
        let s = t0.apply(r);
        images[p - 1] = s;
        images[s - 1] = p;
        images[q - 1] = r;
        images[r - 1] = q;
    }
    let t0 = Permutation::from_images(&images).expect("twist swaps pairs");
    Ok(FlagMap::new(t0, t1, t2, None).expect("twisting keeps edge orbits of size 4"))
}
