use proptest::prelude::*;

use lonesum::exact::rational_to_f64;
use lonesum::{
    poly_bernoulli, sample_orientation, ExactInt, OrientationMatrix, PathLengthDistribution,
    RandomState, StirlingTable,
};

fn matrix_strategy() -> impl Strategy<Value = OrientationMatrix> {
    (1usize..=5, 1usize..=5).prop_flat_map(|(n, k)| {
        proptest::collection::vec(any::<bool>(), n * k)
            .prop_map(move |bits| OrientationMatrix::new(n, k, bits).unwrap())
    })
}

fn permuted(matrix: &OrientationMatrix, rows: &[usize], cols: &[usize]) -> OrientationMatrix {
    let mut bits = Vec::with_capacity(matrix.rows() * matrix.cols());
    for &r in rows {
        for &c in cols {
            bits.push(matrix.entry(r, c));
        }
    }
    OrientationMatrix::new(matrix.rows(), matrix.cols(), bits).unwrap()
}

proptest! {
    #[test]
    fn lonesum_check_matches_naive(matrix in matrix_strategy()) {
        prop_assert_eq!(matrix.is_lonesum(), matrix.is_lonesum_naive());
    }

    #[test]
    fn lonesum_is_permutation_invariant(matrix in matrix_strategy(), seed in any::<u64>()) {
        let mut rng = RandomState::new(seed);
        let mut rows: Vec<usize> = (0..matrix.rows()).collect();
        let mut cols: Vec<usize> = (0..matrix.cols()).collect();
        rng.shuffle(&mut rows);
        rng.shuffle(&mut cols);
        let shuffled = permuted(&matrix, &rows, &cols);
        prop_assert_eq!(matrix.is_lonesum(), shuffled.is_lonesum());
        if matrix.is_lonesum() {
            prop_assert_eq!(
                matrix.longest_path_via_classes().unwrap(),
                shuffled.longest_path_via_classes().unwrap()
            );
        }
    }

    #[test]
    fn class_formula_matches_dag_longest_path(matrix in matrix_strategy()) {
        if matrix.is_lonesum() {
            prop_assert_eq!(
                matrix.longest_path_via_classes().unwrap(),
                matrix.longest_path_dag().unwrap()
            );
        }
    }

    #[test]
    fn matrix_text_round_trips(matrix in matrix_strategy()) {
        let text = matrix.to_string();
        let parsed: OrientationMatrix = text.parse().unwrap();
        prop_assert_eq!(matrix, parsed);
    }

    #[test]
    fn distribution_mass_is_poly_bernoulli(n in 1usize..=10, k in 1usize..=10) {
        let dist = PathLengthDistribution::compute(n, k).unwrap();
        let total: ExactInt = dist.counts().iter().sum();
        prop_assert_eq!(&total, dist.total());
        prop_assert_eq!(total, poly_bernoulli(n, k));
    }

    #[test]
    fn distribution_is_symmetric_in_parts(n in 1usize..=8, k in 1usize..=8) {
        let a = PathLengthDistribution::compute(n, k).unwrap();
        let b = PathLengthDistribution::compute(k, n).unwrap();
        prop_assert_eq!(a.counts(), b.counts());
    }

    #[test]
    fn pgf_is_normalized_with_moments_in_range(n in 1usize..=8, k in 1usize..=8) {
        let dist = PathLengthDistribution::compute(n, k).unwrap();
        let pgf = dist.pgf();
        prop_assert!(pgf.is_normalized());
        let mean = rational_to_f64(&dist.mean_exact());
        prop_assert!(mean >= 1.0 && mean <= dist.max_length() as f64);
        prop_assert!(rational_to_f64(&dist.variance_exact()) >= 0.0);
    }

    #[test]
    fn samples_are_lonesum_with_valid_length(
        n in 1usize..=5,
        k in 1usize..=5,
        seed in any::<u64>(),
    ) {
        let mut table = StirlingTable::new();
        let mut rng = RandomState::new(seed);
        let matrix = sample_orientation(&mut table, n, k, &mut rng).unwrap();
        prop_assert!(matrix.is_lonesum());
        let length = matrix.longest_path_dag().unwrap();
        prop_assert!(length >= 1);
        prop_assert!(length <= lonesum::distribution::max_path_length(n, k));
    }
}
