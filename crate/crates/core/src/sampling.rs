//! Seeded random graphs. Every generator draws from ChaCha8 streams keyed by
//! `(seed, stream)`, so output depends only on the parameters and the seed.

use rand::distr::weighted::WeightedIndex;
use rand::distr::Distribution;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{threshold_from_creation, CreationSequence, Graph, VertexOrder};
use crate::kernel::StepKernel;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Seed(pub u64);

impl Seed {
    /// Independent child seed for a labelled sub-task (splitmix64 mix).
    pub fn derive(self, label: u64) -> Seed {
        let mut z = self
            .0
            .wrapping_add(0x9e37_79b9_7f4a_7c15u64.wrapping_mul(label.wrapping_add(1)));
        z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
        Seed(z ^ (z >> 31))
    }

    pub fn rng(self, stream: u64) -> ChaCha8Rng {
        stream_rng(self, stream)
    }
}

pub fn stream_rng(seed: Seed, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed.0);
    rng.set_stream(stream);
    rng
}

/// G(n, p); row `u` draws its pairs `(u, v)`, `v > u`, from stream `u`.
pub fn gnp(n: usize, p: f64, seed: Seed) -> Result<Graph> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::InvalidArgument(format!("edge probability {p} outside [0,1]")));
    }
    let mut g = Graph::empty(n);
    for u in 0..n {
        let mut rng = stream_rng(seed, u as u64);
        for v in u + 1..n {
            if rng.random::<f64>() < p {
                g.set_edge(u, v, true);
            }
        }
    }
    Ok(g)
}

/// Part of each vertex, i.i.d. by the kernel weights (stream 0).
pub fn sample_parts(n: usize, w: &StepKernel, seed: Seed) -> Vec<usize> {
    let dist = WeightedIndex::new(w.weights()).expect("kernel weights are positive");
    let mut rng = stream_rng(seed, 0);
    (0..n).map(|_| dist.sample(&mut rng)).collect()
}

/// G(n, W): vertex parts drawn by weight, then each pair an edge with
/// probability `W(part(u), part(v))`; row `u` uses stream `1 + u`.
pub fn gnw(n: usize, w: &StepKernel, seed: Seed) -> Graph {
    let parts = sample_parts(n, w, seed);
    let mut g = Graph::empty(n);
    for u in 0..n {
        let mut rng = stream_rng(seed, 1 + u as u64);
        for v in u + 1..n {
            if rng.random::<f64>() < w.at(parts[u], parts[v]) {
                g.set_edge(u, v, true);
            }
        }
    }
    g
}

/// Random creation sequence: uniform order and uniform role bits.
pub fn random_creation_sequence(n: usize, seed: Seed) -> CreationSequence {
    let mut rng = stream_rng(seed, 0);
    let mut perm: Vec<usize> = (0..n).collect();
    perm.shuffle(&mut rng);
    let mut roles: Vec<bool> = (0..n).map(|_| rng.random::<bool>()).collect();
    if let Some(first) = roles.first_mut() {
        *first = false;
    }
    CreationSequence::new(VertexOrder::new(perm).expect("shuffle is a permutation"), roles)
        .expect("lengths match")
}

pub fn random_threshold(n: usize, seed: Seed) -> Graph {
    threshold_from_creation(&random_creation_sequence(n, seed))
}

/// K_{m,m} with sides `0..m` and `m..2m`.
pub fn kmm_graph(m: usize) -> Graph {
    let mut g = Graph::empty(2 * m);
    for a in 0..m {
        for b in m..2 * m {
            g.set_edge(a, b, true);
        }
    }
    g
}
