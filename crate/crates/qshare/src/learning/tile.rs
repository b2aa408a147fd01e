//! Tile coding over normalized observations.

use crate::learning::observation::Observation;
use crate::rng::splitmix64;

/// Hashed tile coding: each tiling is a uniform grid shifted by a fixed
/// per-tiling offset, and each tiling owns a disjoint slice of the weight
/// table. An observation activates exactly one index per tiling.
///
/// Keeping the tilings in disjoint table slices guarantees that the active
/// indices of a single observation never collide with each other, so exact
/// overwrites distribute cleanly across the active weights. Collisions
/// between *different* tiles of the same tiling are tolerated.
#[derive(Clone, Debug)]
pub struct TileCoder {
    num_tilings: usize,
    tile_width: f64,
    dims: usize,
    table_size: usize,
    /// offsets[t][d]: displacement of tiling `t` along dimension `d`.
    offsets: Vec<Vec<f64>>,
}

impl TileCoder {
    /// Standard offsets: tiling `t` is shifted by `t / num_tilings × width`
    /// along every dimension.
    pub fn new(num_tilings: usize, tile_width: f64, dims: usize, table_size: usize) -> Self {
        assert!(num_tilings > 0 && dims > 0 && tile_width > 0.0);
        assert!(table_size >= num_tilings, "table must hold at least one slot per tiling");
        let offsets = (0..num_tilings)
            .map(|t| vec![t as f64 / num_tilings as f64 * tile_width; dims])
            .collect();
        TileCoder { num_tilings, tile_width, dims, table_size, offsets }
    }

    pub fn num_tilings(&self) -> usize {
        self.num_tilings
    }

    pub fn table_size(&self) -> usize {
        self.table_size
    }

    pub fn dims(&self) -> usize {
        self.dims
    }

    /// Active indices for `obs`: exactly one per tiling, each `< table_size`.
    /// Deterministic. Panics if the observation length does not match the
    /// coder dimensionality.
    pub fn features(&self, obs: &Observation) -> Vec<usize> {
        assert_eq!(
            obs.len(),
            self.dims,
            "observation has {} values, coder expects {}",
            obs.len(),
            self.dims
        );
        let per_tiling = self.table_size / self.num_tilings;
        let mut out = Vec::with_capacity(self.num_tilings);
        for (t, offs) in self.offsets.iter().enumerate() {
            let mut h = splitmix64(t as u64);
            for (v, o) in obs.values().iter().zip(offs) {
                let coord = ((v + o) / self.tile_width).floor() as i64;
                h = splitmix64(h ^ coord as u64);
            }
            out.push(t * per_tiling + (h as usize) % per_tiling);
        }
        out
    }
}
