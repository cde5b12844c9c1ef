use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::digraph_realizable;
use crate::graph::DegreeBounds;
use crate::{Error, Result};

pub const DEFAULT_RETRY_CAP: usize = 100_000;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GeneratorOptions {
    /// Whether the realizability filter may use self-loops.
    pub allow_self_loops: bool,
    pub retry_cap: usize,
}

impl Default for GeneratorOptions {
    fn default() -> Self {
        GeneratorOptions { allow_self_loops: true, retry_cap: DEFAULT_RETRY_CAP }
    }
}

/// Random Supervisor bounds: `u_i` uniform on `0..n`, `l_i` zero with
/// probability `p` and otherwise uniform on `1..n`. Unrealizable draws are
/// rejected and redrawn from the same stream (ChaCha8 seeded with `seed`).
pub fn gen_supervisor_instance(n: usize, p: f64, seed: u64, opts: &GeneratorOptions) -> Result<DegreeBounds> {
    if n < 2 {
        return Err(Error::InvalidArgument(format!("supervisor instances need n >= 2, got {n}")));
    }
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::InvalidArgument(format!("probability {p} outside [0, 1]")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..opts.retry_cap {
        let b = DegreeBounds::new((0..n).map(|_| {
            let u = rng.random_range(0..n);
            let l = if rng.random_bool(p) { 0 } else { rng.random_range(1..n) };
            (u, l)
        }));
        if digraph_realizable(&b, opts.allow_self_loops) {
            return Ok(b);
        }
    }
    Err(Error::RetryCap { attempts: opts.retry_cap, n, p, seed })
}

/// Per-instance seed derived from a suite seed, `n` and `p` in percent.
pub fn instance_seed(base: u64, n: usize, p_percent: u32) -> u64 {
    // splitmix64 finalizer over the packed parameters
    let mut z = base ^ ((n as u64) << 32 | p_percent as u64).wrapping_mul(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Metadata recorded next to every generated instance.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct InstanceMeta {
    pub id: String,
    pub family: String,
    pub n: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub p: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(default = "yes")]
    pub allow_self_loops: bool,
    /// `(max_in, min_out)` per vertex, for Supervisor instances.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub bounds: Option<Vec<[usize; 2]>>,
}

fn yes() -> bool {
    true
}

impl InstanceMeta {
    pub fn degree_bounds(&self) -> Option<DegreeBounds> {
        self.bounds.as_ref().map(|b| DegreeBounds::new(b.iter().map(|&[u, l]| (u, l))))
    }

    pub fn to_toml(&self) -> Result<String> {
        toml::to_string(self).map_err(|e| Error::Metadata(e.to_string()))
    }

    pub fn from_toml(text: &str) -> Result<Self> {
        toml::from_str(text).map_err(|e| Error::Metadata(e.to_string()))
    }
}
