//! Uniform-grid neighbour index over unit quaternions.
//!
//! Unitaries are keyed by the quaternion of their SU(2) part. For keys `p`, `q`
//! the distance between the unitaries is `min(‖p − q‖, ‖p + q‖) / √2`, so a
//! Euclidean ball query on `±q` finds every unitary within a given distance.

use alloc::vec::Vec;

type Cell = [i64; 4];

#[derive(Debug, Clone)]
pub struct QuaternionGrid {
    cell: f64,
    keys: Vec<[f64; 4]>,
    /// `(cell, point index)`, sorted.
    sorted: Vec<(Cell, u32)>,
}

fn cell_of(q: &[f64; 4], size: f64) -> Cell {
    [
        libm::floor(q[0] / size) as i64,
        libm::floor(q[1] / size) as i64,
        libm::floor(q[2] / size) as i64,
        libm::floor(q[3] / size) as i64,
    ]
}

impl QuaternionGrid {
    /// Builds the index with cubic cells of side `cell` (> 0).
    pub fn new(keys: Vec<[f64; 4]>, cell: f64) -> Self {
        assert!(cell > 0.0);
        let mut sorted: Vec<(Cell, u32)> =
            keys.iter().enumerate().map(|(i, k)| (cell_of(k, cell), i as u32)).collect();
        sorted.sort_unstable();
        QuaternionGrid { cell, keys, sorted }
    }

    pub fn len(&self) -> usize {
        self.keys.len()
    }

    pub fn is_empty(&self) -> bool {
        self.keys.is_empty()
    }

    pub fn key(&self, index: u32) -> &[f64; 4] {
        &self.keys[index as usize]
    }

    /// Calls `hit(index)` for every stored key within Euclidean `radius` of `q`
    /// or `−q`. May also report keys somewhat farther away; never misses one.
    pub fn query<F: FnMut(u32)>(&self, q: &[f64; 4], radius: f64, mut hit: F) {
        let reach = libm::ceil(radius / self.cell) as i64;
        for sign in [1.0, -1.0] {
            let p = [q[0] * sign, q[1] * sign, q[2] * sign, q[3] * sign];
            let c = cell_of(&p, self.cell);
            for a in -reach..=reach {
                for b in -reach..=reach {
                    for d in -reach..=reach {
                        // the last axis is a contiguous run in sort order
                        let lo = [c[0] + a, c[1] + b, c[2] + d, c[3] - reach];
                        let hi = [c[0] + a, c[1] + b, c[2] + d, c[3] + reach];
                        let start = self.sorted.partition_point(|(k, _)| *k < lo);
                        for (k, idx) in &self.sorted[start..] {
                            if *k > hi {
                                break;
                            }
                            hit(*idx);
                        }
                    }
                }
            }
        }
    }
}
