//! Fixtures shared by the benchmarks.

use multiseg::{parse_mseg, IntMatrix, Multisegment, Segment};

pub const LECLERC: &str = "[1,2]+[-1,1]+[0,0]+[-2,-1]";
pub const LENGTH_9: &str = "[1,3]+[-2,2]+[-1,1]+[0,0]+[-3,-1]";
pub const LENGTH_257: &str = "[2,4]+[-2,3]+[-1,2]+[0,1]+[-4,0]+[-3,-1]";

pub fn mseg(text: &str) -> Multisegment {
    parse_mseg(text).expect("fixture parses")
}

/// The ladder `[k-1, 2k-2] + ... + [1, k] + [0, k-1]`.
pub fn ladder(k: i64) -> Multisegment {
    Multisegment::new((0..k).map(|i| Segment::new("0", i, i + k - 1).unwrap()))
}

/// `k` copies of each of `[0,1]`, `[1,2]`, `[2,3]`.
pub fn staircase(k: usize) -> Multisegment {
    Multisegment::new((0..k).flat_map(|_| (0..3).map(|b| Segment::new("0", b, b + 1).unwrap())))
}

/// A dense `n x n` matrix with small pseudo-random entries.
pub fn dense_matrix(n: usize) -> IntMatrix {
    let mut state = 0x9e37_79b9_7f4a_7c15u64;
    let rows: Vec<Vec<i64>> = (0..n)
        .map(|_| {
            (0..n)
                .map(|_| {
                    state = multiseg::linalg::splitmix64(state);
                    (state % 19) as i64 - 9
                })
                .collect()
        })
        .collect();
    IntMatrix::from_rows(&rows)
}
