use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{DistanceMatrix, Instance};
use crate::error::{Error, Result};

/// How [`generate_instance`] draws distances.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GenMode {
    /// Integer coordinates in `[0, box]^2`, Euclidean distances.
    EuclideanPlane,
    /// Shortest-path closure of a complete graph with integer weights in `[1, box]`.
    RandomMetric,
}

impl GenMode {
    pub fn as_str(self) -> &'static str {
        match self {
            GenMode::EuclideanPlane => "euclidean-plane",
            GenMode::RandomMetric => "random-metric",
        }
    }
}

impl FromStr for GenMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "euclidean-plane" | "euclidean" => Ok(GenMode::EuclideanPlane),
            "random-metric" | "random" => Ok(GenMode::RandomMetric),
            other => Err(Error::InvalidInput(format!("unknown generation mode `{other}`"))),
        }
    }
}

/// Generates a reproducible instance with `n` points spread round-robin over
/// `ell` groups (labels shuffled afterwards).
pub fn generate_instance(seed: u64, n: usize, ell: usize, mode: GenMode, box_size: f64) -> Result<Instance<f64>> {
    if ell < 1 || n < ell {
        return Err(Error::InvalidInput(format!("need n >= ell >= 1, got n={n}, ell={ell}")));
    }
    let sizes: Vec<usize> = (0..ell).map(|g| n / ell + usize::from(g < n % ell)).collect();
    generate_with_sizes(seed, &sizes, mode, box_size)
}

/// Like [`generate_instance`] with explicit group sizes (`sizes[g - 1] = |P_g|`).
pub fn generate_with_sizes(seed: u64, sizes: &[usize], mode: GenMode, box_size: f64) -> Result<Instance<f64>> {
    if box_size <= 0.0 || !box_size.is_finite() {
        return Err(Error::InvalidInput(format!("box must be positive, got {box_size}")));
    }
    if sizes.is_empty() || sizes.contains(&0) {
        return Err(Error::InvalidInput(format!("every group needs at least one point: {sizes:?}")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut groups: Vec<usize> =
        sizes.iter().enumerate().flat_map(|(g, &s)| std::iter::repeat_n(g + 1, s)).collect();
    groups.shuffle(&mut rng);
    let n = groups.len();
    let side = box_size.floor().max(1.0) as i64;

    match mode {
        GenMode::EuclideanPlane => {
            let coords: Vec<[f64; 2]> = (0..n)
                .map(|_| [rng.gen_range(0..=side) as f64, rng.gen_range(0..=side) as f64])
                .collect();
            Instance::from_points(groups, coords)
        }
        GenMode::RandomMetric => {
            let mut weights = vec![0.0; n * n];
            for i in 0..n {
                for j in (i + 1)..n {
                    let w = rng.gen_range(1..=side) as f64;
                    weights[i * n + j] = w;
                    weights[j * n + i] = w;
                }
            }
            let mut dist = DistanceMatrix::from_fn(n, |i, j| weights[i * n + j]);
            dist.shortest_path_closure();
            Instance::new(groups, dist)
        }
    }
}
