//! Exactly uniform sampling of acyclic orientations via the class
//! decomposition of the lonesum count: draw the number of nonzero classes
//! with exact big-integer weights, draw uniform set partitions through the
//! Stirling recurrence, draw class orders, and decode the staircase matrix.
//! No floating point is involved anywhere in the sampling path.

use num_bigint::{BigUint, Sign};
use num_traits::Zero;
use rand_chacha::rand_core::{RngCore, SeedableRng};
use rand_chacha::ChaCha12Rng;

use crate::distribution::{class_count_b, max_path_length, PathLengthDistribution};
use crate::exact::{poly_bernoulli_with, ExactInt, StirlingTable};
use crate::orientation::OrientationMatrix;
use crate::Error;

/// Deterministic random stream: one seed fully determines every sample.
/// Uniform draws below an arbitrary exact bound use rejection from
/// fixed-width random blocks, so there is no modulo bias.
pub struct RandomState {
    rng: ChaCha12Rng,
    seed: u64,
}

impl RandomState {
    pub fn new(seed: u64) -> Self {
        RandomState {
            rng: ChaCha12Rng::seed_from_u64(seed),
            seed,
        }
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    /// Uniform integer in `[0, bound)` for an arbitrary positive bound.
    pub fn below(&mut self, bound: &ExactInt) -> ExactInt {
        let (sign, mag) = bound.clone().into_parts();
        assert!(sign == Sign::Plus, "bound must be positive");
        let bits = mag.bits();
        let bytes = bits.div_ceil(8) as usize;
        let excess = (bytes as u64 * 8 - bits) as u32;
        let mask: u8 = 0xffu8 >> excess;
        let mut buf = vec![0u8; bytes];
        loop {
            self.rng.fill_bytes(&mut buf);
            buf[0] &= mask;
            let candidate = BigUint::from_bytes_be(&buf);
            if candidate < mag {
                return ExactInt::from(candidate);
            }
        }
    }

    /// Uniform usize in `[0, bound)`.
    pub fn below_usize(&mut self, bound: usize) -> usize {
        assert!(bound > 0);
        if bound == 1 {
            return 0;
        }
        let bits = usize::BITS - (bound - 1).leading_zeros();
        let mask = (1u64 << bits) - 1;
        loop {
            let candidate = (self.rng.next_u64() & mask) as usize;
            if candidate < bound {
                return candidate;
            }
        }
    }

    /// Fisher-Yates shuffle driven by the same rejection-free-bias draws.
    pub fn shuffle<T>(&mut self, items: &mut [T]) {
        for i in (1..items.len()).rev() {
            let j = self.below_usize(i + 1);
            items.swap(i, j);
        }
    }
}

/// Draws the number of nonzero row/column classes `m` with probability
/// proportional to `(m!)^2 S(n+1, m+1) S(k+1, m+1)`.
pub fn sample_class_count(
    table: &mut StirlingTable,
    n: usize,
    k: usize,
    rng: &mut RandomState,
) -> usize {
    let total = poly_bernoulli_with(table, n, k);
    let target = rng.below(&total);
    let mut acc = ExactInt::zero();
    for m in 0..=n.min(k) {
        acc += class_count_b(table, n, k, m);
        if target < acc {
            return m;
        }
    }
    unreachable!("class weights sum to the total")
}

/// Uniform set partition of `{0..items-1}` into exactly `blocks` nonempty
/// blocks, by sequential placement with branch weights from the Stirling
/// recurrence `S(t, j) = j S(t-1, j) + S(t-1, j-1)`.
pub fn sample_partition(
    table: &mut StirlingTable,
    items: usize,
    blocks: usize,
    rng: &mut RandomState,
) -> Result<Vec<Vec<usize>>, Error> {
    if blocks == 0 || blocks > items {
        return Err(Error::InfeasiblePartition { items, blocks });
    }
    table.ensure(items);
    let partition = sample_partition_rec(table, items, blocks, rng);
    debug_assert_eq!(partition.len(), blocks);
    debug_assert_eq!(partition.iter().map(Vec::len).sum::<usize>(), items);
    Ok(partition)
}

fn sample_partition_rec(
    table: &StirlingTable,
    items: usize,
    blocks: usize,
    rng: &mut RandomState,
) -> Vec<Vec<usize>> {
    if items == blocks {
        return (0..items).map(|e| vec![e]).collect();
    }
    // top element joins an existing block with weight blocks * S(items-1, blocks)
    // or opens its own with weight S(items-1, blocks-1)
    let join_weight = ExactInt::from(blocks) * table.peek(items - 1, blocks);
    let total = &join_weight + table.peek(items - 1, blocks - 1);
    if rng.below(&total) < join_weight {
        let mut partition = sample_partition_rec(table, items - 1, blocks, rng);
        let b = rng.below_usize(blocks);
        partition[b].push(items - 1);
        partition
    } else {
        let mut partition = sample_partition_rec(table, items - 1, blocks - 1, rng);
        partition.push(vec![items - 1]);
        partition
    }
}

/// Decodes a lonesum matrix from the class data: a partition of the rows
/// `{0..n}` (index `n` is the sentinel marking the zero class), the same for
/// columns with sentinel `k`, and orderings of the nonzero classes where
/// position 0 carries rank 1 (the largest sum). Entry `(r, c)` is 1 exactly
/// when both ranks exist and `rank_row + rank_col <= m + 1`.
pub fn decode_orientation(
    n: usize,
    k: usize,
    row_partition: &[Vec<usize>],
    col_partition: &[Vec<usize>],
    row_order: &[usize],
    col_order: &[usize],
) -> Result<OrientationMatrix, Error> {
    let m = row_partition.len() - 1;
    assert_eq!(col_partition.len() - 1, m);
    assert_eq!(row_order.len(), m);
    assert_eq!(col_order.len(), m);
    let rank_of = |partition: &[Vec<usize>], order: &[usize], size: usize| {
        let mut ranks: Vec<Option<usize>> = vec![None; size];
        for (pos, &block_idx) in order.iter().enumerate() {
            for &element in &partition[block_idx] {
                ranks[element] = Some(pos + 1);
            }
        }
        ranks
    };
    // order indexes the blocks not containing the sentinel
    let row_ranks = rank_of(row_partition, row_order, n + 1);
    let col_ranks = rank_of(col_partition, col_order, k + 1);
    let mut bits = Vec::with_capacity(n * k);
    #[allow(clippy::needless_range_loop)]
    for r in 0..n {
        for c in 0..k {
            bits.push(match (row_ranks[r], col_ranks[c]) {
                (Some(i), Some(j)) => i + j <= m + 1,
                _ => false,
            });
        }
    }
    OrientationMatrix::new(n, k, bits)
}

/// Uniform sample over all acyclic orientations of `K_{n,k}`.
pub fn sample_orientation(
    table: &mut StirlingTable,
    n: usize,
    k: usize,
    rng: &mut RandomState,
) -> Result<OrientationMatrix, Error> {
    if n == 0 || k == 0 {
        return Err(Error::EmptyPart);
    }
    let m = sample_class_count(table, n, k, rng);
    let row_partition = sample_partition(table, n + 1, m + 1, rng)?;
    let col_partition = sample_partition(table, k + 1, m + 1, rng)?;
    let nonzero_blocks = |partition: &[Vec<usize>], sentinel: usize| -> Vec<usize> {
        (0..partition.len())
            .filter(|&b| !partition[b].contains(&sentinel))
            .collect()
    };
    let mut row_order = nonzero_blocks(&row_partition, n);
    let mut col_order = nonzero_blocks(&col_partition, k);
    rng.shuffle(&mut row_order);
    rng.shuffle(&mut col_order);
    decode_orientation(n, k, &row_partition, &col_partition, &row_order, &col_order)
}

/// Histogram of longest-path lengths over iid uniform samples.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EmpiricalDistribution {
    pub n: usize,
    pub k: usize,
    pub samples: u64,
    pub histogram: Vec<u64>,
}

pub fn empirical_distribution(
    n: usize,
    k: usize,
    num_samples: u64,
    rng: &mut RandomState,
) -> Result<EmpiricalDistribution, Error> {
    if num_samples == 0 {
        return Err(Error::NoSamples);
    }
    let mut table = StirlingTable::new();
    let mut histogram = vec![0u64; max_path_length(n, k) + 1];
    for _ in 0..num_samples {
        let sample = sample_orientation(&mut table, n, k, rng)?;
        histogram[sample.longest_path_dag()?] += 1;
    }
    Ok(EmpiricalDistribution {
        n,
        k,
        samples: num_samples,
        histogram,
    })
}

impl EmpiricalDistribution {
    pub fn proportions(&self) -> Vec<f64> {
        self.histogram
            .iter()
            .map(|&c| c as f64 / self.samples as f64)
            .collect()
    }

    /// Total-variation distance to the exact distribution.
    pub fn tv_distance(&self, exact: &PathLengthDistribution) -> f64 {
        let props = self.proportions();
        let mut tv = 0.0;
        for l in 0..props.len().max(exact.counts().len()) {
            let empirical = props.get(l).copied().unwrap_or(0.0);
            let exact_p = crate::exact::rational_to_f64(&crate::exact::ExactRational::new(
                exact.count(l),
                exact.total().clone(),
            ));
            tv += (empirical - exact_p).abs();
        }
        tv / 2.0
    }
}
