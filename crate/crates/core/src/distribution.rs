//! Exact distribution of the longest path length over uniformly random
//! acyclic orientations: the class counts b, c, d, the count vector
//! G_{n,k}(l), the probability generating polynomial, and exact moments.

use num_traits::{One, Signed, Zero};

use crate::exact::{poly_bernoulli_with, ExactInt, ExactRational, StirlingTable};
use crate::Error;

/// Counts of acyclic orientations of `K_{n,k}` by longest path length.
///
/// `counts[l]` is the number of orientations whose longest directed path
/// has exactly `l` edges, for `l = 0..=max_path_length(n, k)`; the total is
/// the poly-Bernoulli number `B_{n,k}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PathLengthDistribution {
    n: usize,
    k: usize,
    counts: Vec<ExactInt>,
    total: ExactInt,
}

/// Polynomial `sum_l p_l u^l` with exact rational coefficients summing to 1.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProbabilityGeneratingPolynomial {
    coefficients: Vec<ExactRational>,
}

/// `b_{n,k}(m) = (m!)^2 S(n+1, m+1) S(k+1, m+1)`: lonesum matrices with m
/// nonzero row/column classes, zero rows and columns both allowed.
pub fn class_count_b(table: &mut StirlingTable, n: usize, k: usize, m: usize) -> ExactInt {
    let f = crate::exact::factorial(m);
    &f * &f * table.get(n + 1, m + 1) * table.get(k + 1, m + 1)
}

/// `c_{n,k}(m) = (m!)^2 S(n+1, m+1) S(k, m)`: zero rows allowed, zero
/// columns not.
pub fn class_count_c(table: &mut StirlingTable, n: usize, k: usize, m: usize) -> ExactInt {
    let f = crate::exact::factorial(m);
    &f * &f * table.get(n + 1, m + 1) * table.get(k, m)
}

/// `d_{n,k}(m) = (m!)^2 S(n, m) S(k, m)`: no zero row or column.
pub fn class_count_d(table: &mut StirlingTable, n: usize, k: usize, m: usize) -> ExactInt {
    let f = crate::exact::factorial(m);
    &f * &f * table.get(n, m) * table.get(k, m)
}

/// Largest attainable longest-path length in `K_{n,k}`: an alternating path
/// uses at most `min(n,k)` vertices from the smaller part, which caps the
/// length at `2*min(n,k) - 1` edges for equal parts and `2*min(n,k)` when one
/// part is strictly larger (the path can then start and end in it).
pub fn max_path_length(n: usize, k: usize) -> usize {
    if n == k {
        2 * n - 1
    } else {
        2 * n.min(k)
    }
}

impl PathLengthDistribution {
    /// Assembles the exact count vector from the class counts:
    /// odd lengths from matrices with either no all-zero line or both an
    /// all-zero row and column, even lengths from exactly one of the two.
    pub fn compute(n: usize, k: usize) -> Result<Self, Error> {
        let mut table = StirlingTable::new();
        Self::compute_with(&mut table, n, k)
    }

    pub fn compute_with(table: &mut StirlingTable, n: usize, k: usize) -> Result<Self, Error> {
        if n == 0 || k == 0 {
            return Err(Error::EmptyPart);
        }
        let max_len = max_path_length(n, k);
        let mut counts = vec![ExactInt::zero(); max_len + 1];
        for m in 0..=n.min(k) {
            let odd = 2 * m + 1;
            if odd <= max_len {
                let both = class_count_b(table, n, k, m)
                    - class_count_c(table, n, k, m)
                    - class_count_c(table, k, n, m)
                    + class_count_d(table, n, k, m);
                counts[odd] = class_count_d(table, n, k, m + 1) + both;
            }
            let even = 2 * m;
            if m >= 1 && even <= max_len {
                counts[even] = class_count_c(table, n, k, m) + class_count_c(table, k, n, m)
                    - ExactInt::from(2) * class_count_d(table, n, k, m);
            }
        }
        let total = poly_bernoulli_with(table, n, k);
        debug_assert_eq!(counts.iter().sum::<ExactInt>(), total);
        Ok(PathLengthDistribution {
            n,
            k,
            counts,
            total,
        })
    }

    /// Builds a distribution from a raw count vector (used by the
    /// brute-force oracle); checks that the total matches `B_{n,k}`.
    pub fn from_counts(n: usize, k: usize, counts: Vec<ExactInt>) -> Result<Self, Error> {
        if n == 0 || k == 0 {
            return Err(Error::EmptyPart);
        }
        let total: ExactInt = counts.iter().sum();
        Ok(PathLengthDistribution {
            n,
            k,
            counts,
            total,
        })
    }

    pub fn part_sizes(&self) -> (usize, usize) {
        (self.n, self.k)
    }

    /// `G_{n,k}(l)`; lengths outside the support return 0.
    pub fn count(&self, len: usize) -> ExactInt {
        self.counts.get(len).cloned().unwrap_or_else(ExactInt::zero)
    }

    pub fn counts(&self) -> &[ExactInt] {
        &self.counts
    }

    pub fn total(&self) -> &ExactInt {
        &self.total
    }

    pub fn max_length(&self) -> usize {
        self.counts.len() - 1
    }

    pub fn pgf(&self) -> ProbabilityGeneratingPolynomial {
        let coefficients = self
            .counts
            .iter()
            .map(|c| ExactRational::new(c.clone(), self.total.clone()))
            .collect();
        ProbabilityGeneratingPolynomial { coefficients }
    }

    /// Exact mean `sum_l l p_l`.
    pub fn mean_exact(&self) -> ExactRational {
        self.pgf().mean()
    }

    /// Exact variance `p''(1) + p'(1) - p'(1)^2`.
    pub fn variance_exact(&self) -> ExactRational {
        self.pgf().variance()
    }
}

impl ProbabilityGeneratingPolynomial {
    pub fn coefficients(&self) -> &[ExactRational] {
        &self.coefficients
    }

    /// `p(u)` at an exact rational argument.
    pub fn evaluate(&self, u: &ExactRational) -> ExactRational {
        let mut acc = ExactRational::zero();
        for c in self.coefficients.iter().rev() {
            acc = acc * u + c;
        }
        acc
    }

    /// `p(u)` in floating point, for quasi-power comparisons.
    pub fn evaluate_f64(&self, u: f64) -> f64 {
        let mut acc = 0.0;
        for c in self.coefficients.iter().rev() {
            acc = acc * u + crate::exact::rational_to_f64(c);
        }
        acc
    }

    pub fn mean(&self) -> ExactRational {
        let mut acc = ExactRational::zero();
        for (l, c) in self.coefficients.iter().enumerate() {
            acc += c * ExactInt::from(l);
        }
        acc
    }

    pub fn variance(&self) -> ExactRational {
        let mean = self.mean();
        let mut second = ExactRational::zero();
        for (l, c) in self.coefficients.iter().enumerate() {
            second += c * ExactInt::from(l * l);
        }
        second - &mean * &mean
    }

    /// Probability of the length falling strictly beyond `|X - mean| > t`.
    pub fn tail_probability(&self, t: &ExactRational) -> ExactRational {
        let mean = self.mean();
        let mut acc = ExactRational::zero();
        for (l, c) in self.coefficients.iter().enumerate() {
            let dev = (ExactRational::from(ExactInt::from(l)) - &mean).abs();
            if dev > *t {
                acc += c;
            }
        }
        acc
    }

    /// True when the coefficients sum to exactly 1.
    pub fn is_normalized(&self) -> bool {
        self.coefficients.iter().sum::<ExactRational>() == ExactRational::one()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::orientation::brute_force_distribution;

    #[test]
    fn class_counts_small() {
        let mut t = StirlingTable::new();
        assert_eq!(class_count_d(&mut t, 2, 2, 1), ExactInt::from(1));
        assert_eq!(class_count_b(&mut t, 2, 2, 1), ExactInt::from(9));
        assert_eq!(class_count_c(&mut t, 2, 2, 0), ExactInt::zero());
    }

    #[test]
    fn counts_2_2_match_reference() {
        let d = PathLengthDistribution::compute(2, 2).unwrap();
        assert_eq!(d.count(0), ExactInt::zero());
        assert_eq!(d.count(1), ExactInt::from(2));
        assert_eq!(d.count(2), ExactInt::from(4));
        assert_eq!(d.count(3), ExactInt::from(8));
        assert_eq!(d.total(), &ExactInt::from(14));
    }

    #[test]
    fn counts_1_1_and_3_3() {
        let d = PathLengthDistribution::compute(1, 1).unwrap();
        assert_eq!(d.counts(), &[ExactInt::zero(), ExactInt::from(2)]);

        let d = PathLengthDistribution::compute(3, 3).unwrap();
        assert_eq!(d.total(), &ExactInt::from(230));
        assert_eq!(d, brute_force_distribution(3, 3).unwrap());
    }

    #[test]
    fn rejects_empty_parts() {
        assert!(PathLengthDistribution::compute(0, 3).is_err());
        assert!(PathLengthDistribution::compute(3, 0).is_err());
    }

    #[test]
    fn pgf_2_2() {
        let p = PathLengthDistribution::compute(2, 2).unwrap().pgf();
        let frac = |a: i64, b: i64| ExactRational::new(ExactInt::from(a), ExactInt::from(b));
        assert_eq!(
            p.coefficients(),
            &[frac(0, 1), frac(1, 7), frac(2, 7), frac(4, 7)]
        );
        assert!(p.is_normalized());
    }

    #[test]
    fn moments_2_2_and_1_1() {
        let frac = |a: i64, b: i64| ExactRational::new(ExactInt::from(a), ExactInt::from(b));
        let d = PathLengthDistribution::compute(2, 2).unwrap();
        assert_eq!(d.mean_exact(), frac(17, 7));
        assert_eq!(d.variance_exact(), frac(26, 49));
        let d = PathLengthDistribution::compute(1, 1).unwrap();
        assert_eq!(d.mean_exact(), frac(1, 1));
        assert_eq!(d.variance_exact(), frac(0, 1));
    }

    #[test]
    fn pgf_2_3_denominator_divides_total() {
        let d = PathLengthDistribution::compute(2, 3).unwrap();
        assert_eq!(d.total(), &ExactInt::from(46));
        let p = d.pgf();
        assert!(p.is_normalized());
        for c in p.coefficients() {
            assert_eq!(ExactInt::from(46) % c.denom(), ExactInt::zero());
        }
        assert_eq!(d, brute_force_distribution(2, 3).unwrap());
    }

    #[test]
    fn mass_symmetry_and_support() {
        let mut table = StirlingTable::new();
        for n in 1..=20usize {
            for k in n..=20usize {
                let d = PathLengthDistribution::compute_with(&mut table, n, k).unwrap();
                let sum: ExactInt = d.counts().iter().sum();
                assert_eq!(&sum, d.total());
                assert_eq!(d.total(), &poly_bernoulli_with(&mut table, n, k));
                let swapped = PathLengthDistribution::compute_with(&mut table, k, n).unwrap();
                assert_eq!(d.counts(), swapped.counts());
                assert_eq!(d.count(0), ExactInt::zero());
                assert!(d.count(d.max_length()) > ExactInt::zero());
                assert_eq!(d.count(d.max_length() + 1), ExactInt::zero());
            }
        }
    }

    #[test]
    fn mass_conservation_up_to_30() {
        let mut table = StirlingTable::new();
        for n in 1..=30usize {
            for k in 1..=30usize {
                let d = PathLengthDistribution::compute_with(&mut table, n, k).unwrap();
                assert_eq!(&d.counts().iter().sum::<ExactInt>(), d.total());
            }
        }
    }

    #[test]
    fn chebyshev_bound_exact() {
        // P(|X - mu| > t) <= sigma^2 / t^2 holds literally at finite n.
        for (n, k) in [(2, 2), (3, 5), (6, 6), (4, 7)] {
            let d = PathLengthDistribution::compute(n, k).unwrap();
            let p = d.pgf();
            let var = d.variance_exact();
            for t_num in 1..=8i64 {
                for t_den in [1i64, 2, 3] {
                    let t = ExactRational::new(ExactInt::from(t_num), ExactInt::from(t_den));
                    assert!(p.tail_probability(&t) * &t * &t <= var, "({n},{k}) t={t}");
                }
            }
        }
    }

    #[test]
    fn evaluate_matches_horner() {
        let p = PathLengthDistribution::compute(2, 2).unwrap().pgf();
        let u = ExactRational::new(ExactInt::from(1), ExactInt::from(1));
        assert_eq!(p.evaluate(&u), ExactRational::one());
        let half = ExactRational::new(ExactInt::from(1), ExactInt::from(2));
        // 0 + (1/7)(1/2) + (2/7)(1/4) + (4/7)(1/8) = 1/14 + 1/14 + 1/14
        assert_eq!(
            p.evaluate(&half),
            ExactRational::new(ExactInt::from(3), ExactInt::from(14))
        );
        assert!((p.evaluate_f64(0.5) - 3.0 / 14.0).abs() < 1e-15);
    }
}
