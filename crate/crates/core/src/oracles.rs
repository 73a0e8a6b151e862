//! Reference computations that share no code with the routes they check.

use num_bigint::BigInt;
use num_traits::{One, Zero};

/// Number of integer partitions of `r`, by the coin-change recurrence.
pub fn partition_count(r: u32) -> BigInt {
    let r = r as usize;
    let mut ways = vec![BigInt::zero(); r + 1];
    ways[0] = BigInt::one();
    for part in 1..=r {
        for total in part..=r {
            let add = ways[total - part].clone();
            ways[total] += add;
        }
    }
    ways[r].clone()
}

/// Number of set partitions of `{1..r}`, by walking every restricted growth
/// string `a_1 = 0, a_{i+1} <= 1 + max(a_1..a_i)`.
pub fn bell_number_by_enumeration(r: u32) -> u64 {
    fn walk(pos: usize, len: usize, max_block: usize) -> u64 {
        if pos == len {
            return 1;
        }
        (0..=max_block + 1)
            .map(|b| walk(pos + 1, len, max_block.max(b)))
            .sum()
    }
    match r {
        0 => 1,
        _ => walk(1, r as usize, 0),
    }
}
