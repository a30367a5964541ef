//! Arbitrary-precision integer and rational arithmetic together with the
//! basic combinatorial quantities everything else is built on: factorials,
//! Stirling numbers of the second kind, and poly-Bernoulli numbers.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Exact signed integer. All counts in this crate are `ExactInt`s.
pub type ExactInt = BigInt;

/// Exact rational, always stored in lowest terms with positive denominator
/// (`BigRational` normalizes eagerly on construction).
pub type ExactRational = BigRational;

/// Memoized triangular table of Stirling numbers of the second kind,
/// built row by row with the additive recurrence
/// `S(n, k) = k * S(n-1, k) + S(n-1, k-1)`.
///
/// The table only ever grows; a `&StirlingTable` is safe to share across
/// threads once built.
#[derive(Debug, Clone, Default)]
pub struct StirlingTable {
    rows: Vec<Vec<ExactInt>>,
}

impl StirlingTable {
    pub fn new() -> Self {
        StirlingTable {
            rows: vec![vec![ExactInt::one()]],
        }
    }

    /// Number of rows currently stored (the largest usable `n` is `max_n()`).
    pub fn max_n(&self) -> usize {
        self.rows.len() - 1
    }

    /// Extends the table so that `S(n, k)` is available for all `n <= target`.
    pub fn ensure(&mut self, target: usize) {
        while self.rows.len() <= target {
            let n = self.rows.len();
            let prev = &self.rows[n - 1];
            let mut row = Vec::with_capacity(n + 1);
            row.push(ExactInt::zero());
            for k in 1..=n {
                let above = if k < prev.len() {
                    &prev[k] * ExactInt::from(k)
                } else {
                    ExactInt::zero()
                };
                let diag = if k - 1 < prev.len() {
                    prev[k - 1].clone()
                } else {
                    ExactInt::zero()
                };
                row.push(above + diag);
            }
            self.rows.push(row);
        }
    }

    /// `S(n, k)`, extending the table on demand. Out-of-range `k > n`
    /// returns 0.
    pub fn get(&mut self, n: usize, k: usize) -> ExactInt {
        if k > n {
            return ExactInt::zero();
        }
        self.ensure(n);
        self.rows[n][k].clone()
    }

    /// Read-only access for a pre-extended table.
    pub fn peek(&self, n: usize, k: usize) -> ExactInt {
        if k > n {
            return ExactInt::zero();
        }
        assert!(n <= self.max_n(), "StirlingTable not extended to n = {n}");
        self.rows[n][k].clone()
    }
}

/// Stirling number of the second kind `S(n, k)`.
pub fn stirling2(n: usize, k: usize) -> ExactInt {
    let mut table = StirlingTable::new();
    table.get(n, k)
}

/// `n!` as an exact integer.
pub fn factorial(n: usize) -> ExactInt {
    let mut acc = ExactInt::one();
    for i in 2..=n {
        acc *= ExactInt::from(i);
    }
    acc
}

/// Poly-Bernoulli number `B_{n,k}`, the number of n x k lonesum matrices
/// (equivalently, of acyclic orientations of the complete bipartite graph),
/// computed as `sum_m (m!)^2 S(n+1, m+1) S(k+1, m+1)` over `m = 0..min(n,k)`.
pub fn poly_bernoulli(n: usize, k: usize) -> ExactInt {
    let mut table = StirlingTable::new();
    poly_bernoulli_with(&mut table, n, k)
}

/// Same as [`poly_bernoulli`] but reusing a caller-owned Stirling table.
pub fn poly_bernoulli_with(table: &mut StirlingTable, n: usize, k: usize) -> ExactInt {
    table.ensure(n.max(k) + 1);
    let mut sum = ExactInt::zero();
    let mut mfact = ExactInt::one();
    for m in 0..=n.min(k) {
        if m > 0 {
            mfact *= ExactInt::from(m);
        }
        sum += &mfact * &mfact * table.peek(n + 1, m + 1) * table.peek(k + 1, m + 1);
    }
    sum
}

/// Base-e logarithm of a positive `ExactInt`, usable far beyond f64 range.
pub fn ln_bigint(value: &ExactInt) -> f64 {
    assert!(value.is_positive(), "ln_bigint needs a positive argument");
    let bits = value.bits();
    if bits <= 52 {
        let (_, digits) = value.to_u64_digits();
        return (digits[0] as f64).ln();
    }
    // Keep the top 52 bits as an exact f64 mantissa and account for the shift.
    let shift = bits - 52;
    let top: ExactInt = value >> shift;
    let (_, digits) = top.to_u64_digits();
    (digits[0] as f64).ln() + shift as f64 * std::f64::consts::LN_2
}

/// Round-to-nearest f64 value of an exact rational of arbitrary magnitude.
///
/// `BigRational::to_f64` overflows to NaN when numerator and denominator both
/// exceed f64 range, so the quotient is computed at 64-bit precision first.
pub fn rational_to_f64(q: &ExactRational) -> f64 {
    if q.is_zero() {
        return 0.0;
    }
    let negative = q.is_negative();
    let num = q.numer().abs();
    let den = q.denom().clone();
    let shift = 64 + den.bits() as i64 - num.bits() as i64;
    let quotient = if shift >= 0 {
        (num << shift as u64) / den
    } else {
        num / (den << (-shift) as u64)
    };
    let (_, digits) = quotient.to_u64_digits();
    let mut approx = 0.0f64;
    for (i, d) in digits.iter().enumerate() {
        approx += (*d as f64) * (64.0 * i as f64).exp2();
    }
    let magnitude = approx * (-(shift as f64)).exp2();
    if negative {
        -magnitude
    } else {
        magnitude
    }
}
