use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::exact::{int, IntMatrix, Integer};
use crate::reformulate::EqualitySystem;

/// SplitMix64 (Steele, Lea, Flood). State advances by `0x9E3779B97F4A7C15`;
/// output is the usual two xor-shift-multiply rounds.
#[derive(Debug, Clone)]
pub struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    pub fn new(seed: u64) -> Self {
        SplitMix64 { state: seed }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9E37_79B9_7F4A_7C15);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^ (z >> 31)
    }

    /// Uniform on `[0, bound)` by rejection of the top partial block.
    pub fn below(&mut self, bound: u64) -> u64 {
        assert!(bound > 0);
        let zone = u64::MAX - (u64::MAX % bound);
        loop {
            let v = self.next_u64();
            if v < zone {
                return v % bound;
            }
        }
    }
}

/// Market-split instance with `m` rows and `n = 10 (m - 1)` binary
/// variables: entries uniform on `[0, 99]` drawn row by row,
/// `b_i = floor(sum_j a_ij / 2)`.
pub fn gen_market_split(m: usize, seed: u64) -> Result<EqualitySystem> {
    if m < 2 {
        return Err(Error::Domain(alloc::format!("market split needs m >= 2, got {m}")));
    }
    let n = 10 * (m - 1);
    let mut rng = SplitMix64::new(seed);
    let rows: Vec<Vec<Integer>> =
        (0..m).map(|_| (0..n).map(|_| Integer::from(rng.below(100))).collect()).collect();
    let b = rows.iter().map(|r| r.iter().sum::<Integer>() / 2).collect();
    EqualitySystem::new(
        IntMatrix::from_rows(rows)?,
        b,
        Some(alloc::vec![int(0); n]),
        Some(alloc::vec![int(1); n]),
    )
}
