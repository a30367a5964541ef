//! Python bindings for the lonesum crate. Exact integers cross the boundary
//! as Python ints; exact rationals as (numerator, denominator) int pairs.

use num_bigint::BigInt;
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

use lonesum::asymptotics;
use lonesum::exact;
use lonesum::{OrientationMatrix, PathLengthDistribution, RandomState, StirlingTable};

fn convert<T>(result: Result<T, lonesum::Error>) -> PyResult<T> {
    result.map_err(|e| PyValueError::new_err(e.to_string()))
}

fn rational_pair(q: &exact::ExactRational) -> (BigInt, BigInt) {
    (q.numer().clone(), q.denom().clone())
}

/// Number of acyclic orientations of K_{n,k} (the poly-Bernoulli number B_{n,k}).
#[pyfunction]
fn poly_bernoulli(n: usize, k: usize) -> BigInt {
    exact::poly_bernoulli(n, k)
}

/// Stirling number of the second kind S(n, k).
#[pyfunction]
fn stirling2(n: usize, k: usize) -> BigInt {
    exact::stirling2(n, k)
}

/// Exact counts of orientations by longest path length, as {length: count}.
#[pyfunction]
fn longest_path_counts(n: usize, k: usize) -> PyResult<Vec<(usize, BigInt)>> {
    let dist = convert(PathLengthDistribution::compute(n, k))?;
    Ok((1..=dist.max_length())
        .map(|l| (l, dist.count(l)))
        .collect())
}

/// PGF coefficients p_1..p_max as (numerator, denominator) pairs.
#[pyfunction]
fn pgf_coefficients(n: usize, k: usize) -> PyResult<Vec<(BigInt, BigInt)>> {
    let dist = convert(PathLengthDistribution::compute(n, k))?;
    Ok(dist.pgf().coefficients()[1..]
        .iter()
        .map(rational_pair)
        .collect())
}

/// Exact mean of the longest path length as (numerator, denominator).
#[pyfunction]
fn mean_exact(n: usize, k: usize) -> PyResult<(BigInt, BigInt)> {
    let dist = convert(PathLengthDistribution::compute(n, k))?;
    Ok(rational_pair(&dist.mean_exact()))
}

/// Exact variance of the longest path length as (numerator, denominator).
#[pyfunction]
fn variance_exact(n: usize, k: usize) -> PyResult<(BigInt, BigInt)> {
    let dist = convert(PathLengthDistribution::compute(n, k))?;
    Ok(rational_pair(&dist.variance_exact()))
}

/// Longest path lengths of `count` uniform samples, reproducible from `seed`.
#[pyfunction]
fn sample_lengths(n: usize, k: usize, count: usize, seed: u64) -> PyResult<Vec<usize>> {
    let mut table = StirlingTable::new();
    let mut rng = RandomState::new(seed);
    let mut lengths = Vec::with_capacity(count);
    for _ in 0..count {
        let matrix = convert(lonesum::sample_orientation(&mut table, n, k, &mut rng))?;
        lengths.push(convert(matrix.longest_path_dag())?);
    }
    Ok(lengths)
}

/// One uniform sample in the matrix text format.
#[pyfunction]
fn sample_matrix(n: usize, k: usize, seed: u64) -> PyResult<String> {
    let mut table = StirlingTable::new();
    let mut rng = RandomState::new(seed);
    let matrix = convert(lonesum::sample_orientation(&mut table, n, k, &mut rng))?;
    Ok(matrix.to_string())
}

/// Whether the matrix (in text format) is lonesum.
#[pyfunction]
fn is_lonesum(text: &str) -> PyResult<bool> {
    let matrix: OrientationMatrix = convert(text.parse())?;
    Ok(matrix.is_lonesum())
}

/// Longest directed path length of the orientation given in text format.
#[pyfunction]
fn longest_path(text: &str) -> PyResult<usize> {
    let matrix: OrientationMatrix = convert(text.parse())?;
    convert(matrix.longest_path_dag())
}

/// Asymptotic mean on the diagonal, leading * n + constant.
#[pyfunction]
fn asymptotic_mean(n: usize) -> f64 {
    asymptotics::mean_asymptotic().value_at(n)
}

/// Asymptotic variance on the diagonal, leading * n + constant.
#[pyfunction]
fn asymptotic_variance(n: usize) -> f64 {
    asymptotics::variance_asymptotic().value_at(n)
}

/// Kolmogorov distance of the standardized exact law on K_{n,n} to the Gaussian.
#[pyfunction]
fn gaussian_distance(n: usize) -> PyResult<f64> {
    convert(asymptotics::gaussian_distance(n))
}

#[pymodule]
fn lonesum_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_function(wrap_pyfunction!(poly_bernoulli, m)?)?;
    m.add_function(wrap_pyfunction!(stirling2, m)?)?;
    m.add_function(wrap_pyfunction!(longest_path_counts, m)?)?;
    m.add_function(wrap_pyfunction!(pgf_coefficients, m)?)?;
    m.add_function(wrap_pyfunction!(mean_exact, m)?)?;
    m.add_function(wrap_pyfunction!(variance_exact, m)?)?;
    m.add_function(wrap_pyfunction!(sample_lengths, m)?)?;
    m.add_function(wrap_pyfunction!(sample_matrix, m)?)?;
    m.add_function(wrap_pyfunction!(is_lonesum, m)?)?;
    m.add_function(wrap_pyfunction!(longest_path, m)?)?;
    m.add_function(wrap_pyfunction!(asymptotic_mean, m)?)?;
    m.add_function(wrap_pyfunction!(asymptotic_variance, m)?)?;
    m.add_function(wrap_pyfunction!(gaussian_distance, m)?)?;
    Ok(())
}
