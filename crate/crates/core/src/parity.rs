//! Bit-packed subset tables over GF(2).
//!
//! Entry `S` of a table over a universe of `u` elements lives at bit
//! `S mod 64` of word `S / 64`. Over GF(2) the signed subset transform
//! `Σ_{T⊆S} (-1)^{|S-T|} x_T` and the plain zeta transform coincide, so one
//! xor sweep per element computes either.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::numbers::BinaryExpansion;

/// Universe size above which a parity table is refused (2^31 bits = 256 MiB).
pub const MAX_PARITY_UNIVERSE: u32 = 31;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParityTable {
    universe: u32,
    words: Vec<u64>,
}

impl ParityTable {
    pub fn zeros(universe: u32) -> Result<Self> {
        if universe > MAX_PARITY_UNIVERSE {
            return Err(Error::ResourceLimit {
                what: "parity universe",
                requested: universe as u64,
                limit: MAX_PARITY_UNIVERSE as u64,
            });
        }
        let len = (1usize << universe).div_ceil(64);
        Ok(ParityTable {
            universe,
            words: vec![0; len],
        })
    }

    pub fn universe(&self) -> u32 {
        self.universe
    }

    pub fn get(&self, mask: u64) -> bool {
        self.words[(mask / 64) as usize] >> (mask % 64) & 1 == 1
    }

    pub fn set(&mut self, mask: u64, value: bool) {
        let w = &mut self.words[(mask / 64) as usize];
        if value {
            *w |= 1 << (mask % 64);
        } else {
            *w &= !(1 << (mask % 64));
        }
    }

    pub fn flip(&mut self, mask: u64) {
        self.words[(mask / 64) as usize] ^= 1 << (mask % 64);
    }

    pub fn count_ones(&self) -> u64 {
        self.words.iter().map(|w| w.count_ones() as u64).sum()
    }

    /// In-place `x_S <- Σ_{T⊆S} x_T` over GF(2).
    pub fn subset_transform(&mut self) {
        // Within-word passes: element i < 6 pairs bit b with bit b | 1<<i.
        const LOW: [u64; 6] = [
            0x5555_5555_5555_5555,
            0x3333_3333_3333_3333,
            0x0f0f_0f0f_0f0f_0f0f,
            0x00ff_00ff_00ff_00ff,
            0x0000_ffff_0000_ffff,
            0x0000_0000_ffff_ffff,
        ];
        let inner = self.universe.min(6);
        for w in self.words.iter_mut() {
            for (i, low) in LOW.iter().enumerate().take(inner as usize) {
                *w ^= (*w & low) << (1 << i);
            }
        }
        if self.universe > 6 {
            for i in 0..self.universe - 6 {
                let stride = 1usize << i;
                for block in self.words.chunks_mut(stride * 2) {
                    let (lo, hi) = block.split_at_mut(stride);
                    for (h, l) in hi.iter_mut().zip(lo.iter()) {
                        *h ^= *l;
                    }
                }
            }
        }
        if self.universe < 6 {
            self.words[0] &= (1u64 << (1u32 << self.universe)) - 1;
        }
    }
}

/// Parities of α_n(S) for every `S ⊆ [n-1]`.
///
/// α_n(S) is odd exactly when the parts of `D(S)` have pairwise disjoint
/// binary digits, so the odd entries are the partial-sum sets of ordered
/// partitions of the binary powers of `n`. Those are enumerated directly.
pub fn alpha_parity_table(n: u64) -> Result<ParityTable> {
    if n == 0 {
        return Err(Error::contract("n must be positive"));
    }
    let universe = (n - 1) as u32;
    let mut table = ParityTable::zeros(universe)?;
    let powers = BinaryExpansion::of(n).powers();
    let k = powers.len();
    let full = (1usize << k) - 1;
    // Walk chains ∅ ⊂ B_1 ⊂ ... ⊂ [k]; each chain gives partial sums s_r.
    let mut stack: Vec<(usize, u64)> = vec![(0, 0)];
    while let Some((used, mask)) = stack.pop() {
        if used == full {
            table.set(mask, true);
            continue;
        }
        let free = full & !used;
        let mut sub = free;
        while sub != 0 {
            let next = used | sub;
            let mut next_mask = mask;
            if next != full {
                let s: u64 = (0..k)
                    .filter(|&i| next >> i & 1 == 1)
                    .map(|i| powers[i])
                    .sum();
                next_mask |= 1 << (s - 1);
            }
            stack.push((next, next_mask));
            sub = (sub - 1) & free;
        }
    }
    Ok(table)
}

/// Parities of β_n(S) for every `S ⊆ [n-1]`.
pub fn beta_parity_table(n: u64) -> Result<ParityTable> {
    let mut t = alpha_parity_table(n)?;
    t.subset_transform();
    Ok(t)
}

/// Number of `S ⊆ [n-1]` with β_n(S) odd.
pub fn odd_beta_count(n: u64) -> Result<u64> {
    Ok(beta_parity_table(n)?.count_ones())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numbers::{is_multinomial_odd, mask_parts, Composition};

    #[test]
    fn transform_matches_naive() {
        for u in 0..=9u32 {
            let mut t = ParityTable::zeros(u).unwrap();
            let mut seed = 0x9e37_79b9_7f4a_7c15u64 ^ u as u64;
            let mut raw = Vec::new();
            for s in 0..1u64 << u {
                seed ^= seed << 13;
                seed ^= seed >> 7;
                seed ^= seed << 17;
                let bit = seed & 1 == 1;
                raw.push(bit);
                t.set(s, bit);
            }
            t.subset_transform();
            for s in 0..1u64 << u {
                let naive = (0..1u64 << u)
                    .filter(|&x| x & !s == 0 && raw[x as usize])
                    .count()
                    % 2
                    == 1;
                assert_eq!(t.get(s), naive, "u={u} s={s}");
            }
        }
    }

    #[test]
    fn alpha_parity_matches_direct_check() {
        for n in 1..=16u64 {
            let t = alpha_parity_table(n).unwrap();
            for s in 0..1u64 << (n - 1) {
                let gamma = Composition::new(mask_parts(n, s)).unwrap();
                assert_eq!(t.get(s), is_multinomial_odd(&gamma), "n={n} s={s}");
            }
        }
    }

    #[test]
    fn oversized_universe_is_refused() {
        assert!(matches!(
            ParityTable::zeros(40),
            Err(Error::ResourceLimit { .. })
        ));
    }
}
