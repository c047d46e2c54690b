//! Standard step kernels used by the tests and experiments.

use rand::Rng;

use super::{kernel_from_graph, StepKernel};
use crate::graph::VertexOrder;
use crate::sampling::{gnp, kmm_graph, Seed};

/// Constant `p` on `k` equal parts.
pub fn constant(p: f64, k: usize) -> StepKernel {
    StepKernel::from_fn(k, |_, _| p).expect("constant in [0,1]")
}

/// `W_{K_{m,m}}` (sides first) with every part split into `r`.
pub fn kmm_kernel(m: usize, r: usize) -> StepKernel {
    kernel_from_graph(&kmm_graph(m), &VertexOrder::identity(2 * m)).refine(r)
}

/// `W(i,j) = (i + j) / (2k − 2)` on `k` equal parts.
pub fn additive_kernel(k: usize) -> StepKernel {
    let den = (2 * k).saturating_sub(2).max(1) as f64;
    StepKernel::from_fn(k, |i, j| (i + j) as f64 / den).expect("values in [0,1]")
}

/// Two monotone kernels `(A_t + W) / (2k)`, `t = 1, 2`, where `A_t` are
/// adjacency matrices of independent G(k, 1/2) and `W(i,j) = i + j`.
/// Their L¹ distance is Θ(1/k) while their cut distance is Θ(k^{−3/2}).
pub fn pair_23best(k: usize, seed: Seed) -> (StepKernel, StepKernel) {
    let make = |label: u64| {
        let a = gnp(k, 0.5, seed.derive(label)).expect("p = 1/2");
        let den = (2 * k) as f64;
        StepKernel::from_fn(k, |i, j| (a.has_edge(i, j) as u8 as f64 + (i + j) as f64) / den)
            .expect("values in [0,1)")
    };
    (make(1), make(2))
}

/// Random monotone kernel: two-dimensional running maxima of a symmetric
/// matrix with entries `U_ij · (i + j + 1) / (2k − 1)`, `U_ij` uniform.
pub fn random_monotone(k: usize, seed: u64) -> StepKernel {
    let mut rng = Seed(seed).rng(0);
    let scale = (2 * k - 1) as f64;
    let mut u = vec![0.0; k * k];
    for i in 0..k {
        for j in i..k {
            let v = rng.random::<f64>() * (i + j + 1) as f64 / scale;
            u[i * k + j] = v;
            u[j * k + i] = v;
        }
    }
    for i in 0..k {
        for j in 0..k {
            let mut m = u[i * k + j];
            if i > 0 {
                m = m.max(u[(i - 1) * k + j]);
            }
            if j > 0 {
                m = m.max(u[i * k + j - 1]);
            }
            u[i * k + j] = m;
        }
    }
    StepKernel::with_equal_weights(k, u).expect("running maxima stay symmetric")
}
