//! The position permutation: Arnold cat map followed by swapping entries
//! `(0, 0)` and `(u, v)`.

use crate::chaos::arnold_map;
use crate::schedule::ScheduleState;
use crate::KeyMaterial;

/// Forward table from plaintext linear index to permuted linear index.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PermutationMap {
    dest: Vec<usize>,
}

impl PermutationMap {
    /// Wraps a table, returning `None` unless it is a bijection.
    pub fn from_table(dest: Vec<usize>) -> Option<Self> {
        let mut seen = vec![false; dest.len()];
        for &d in &dest {
            if d >= dest.len() || std::mem::replace(&mut seen[d], true) {
                return None;
            }
        }
        Some(PermutationMap { dest })
    }

    pub fn len(&self) -> usize {
        self.dest.len()
    }

    pub fn is_empty(&self) -> bool {
        self.dest.is_empty()
    }

    /// Where plaintext index `k` ends up.
    pub fn dest(&self, k: usize) -> usize {
        self.dest[k]
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.dest
    }

    /// Table from permuted index back to plaintext index.
    pub fn inverse(&self) -> Vec<usize> {
        let mut inv = vec![0; self.dest.len()];
        for (k, &d) in self.dest.iter().enumerate() {
            inv[d] = k;
        }
        inv
    }

    /// `out[dest[k]] = values[k]`.
    pub fn apply<T: Copy + Default>(&self, values: &[T]) -> Vec<T> {
        assert_eq!(values.len(), self.dest.len());
        let mut out = vec![T::default(); values.len()];
        for (k, &d) in self.dest.iter().enumerate() {
            out[d] = values[k];
        }
        out
    }

    /// `out[k] = values[dest[k]]`.
    pub fn unapply<T: Copy>(&self, values: &[T]) -> Vec<T> {
        assert_eq!(values.len(), self.dest.len());
        self.dest.iter().map(|&d| values[d]).collect()
    }
}

/// Builds the permutation for a square `side x side` image.
///
/// The caller is expected to have validated `key` for `side`.
pub fn build_permutation(
    key: &KeyMaterial,
    schedule: &ScheduleState,
    side: usize,
) -> PermutationMap {
    let swap_target = schedule.u * side + schedule.v;
    let (a, b) = (key.a as usize, key.b as usize);
    let mut dest = Vec::with_capacity(side * side);
    for i in 0..side {
        for j in 0..side {
            let (p, q) = arnold_map(i, j, a, b, side);
            let k = p * side + q;
            dest.push(if k == 0 {
                swap_target
            } else if k == swap_target {
                0
            } else {
                k
            });
        }
    }
    PermutationMap { dest }
}
