//! Orientations of the complete bipartite graph as 0/1 matrices, the
//! lonesum test via staircase normalization, longest-path computation both
//! by dynamic programming over a topological order and by the class-count
//! formula, and the exhaustive brute-force oracle.

use std::fmt;
use std::str::FromStr;

use crate::distribution::PathLengthDistribution;
use crate::exact::ExactInt;
use crate::Error;

/// Orientation of `K_{n,k}` encoded as an n x k 0/1 matrix: entry `(i, j)`
/// is 1 when the edge is directed from vertex `i` of part A to vertex `j`
/// of part B, and 0 for the opposite direction.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct OrientationMatrix {
    n: usize,
    k: usize,
    bits: Vec<bool>,
}

/// Summary of the row/column class structure of a lonesum matrix: `m` is
/// the number of distinct nonzero row sums (equal to the number of distinct
/// nonzero column sums).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ClassSignature {
    pub m: usize,
    pub has_zero_row: bool,
    pub has_zero_col: bool,
}

impl OrientationMatrix {
    pub fn new(n: usize, k: usize, bits: Vec<bool>) -> Result<Self, Error> {
        if n == 0 || k == 0 {
            return Err(Error::EmptyPart);
        }
        if bits.len() != n * k {
            return Err(Error::BadDimensions {
                expected: n * k,
                got: bits.len(),
            });
        }
        Ok(OrientationMatrix { n, k, bits })
    }

    /// Decodes the nk low bits of `code` row-major, bit 0 = entry (0, 0).
    pub fn from_code(n: usize, k: usize, code: u64) -> Result<Self, Error> {
        let bits = (0..n * k).map(|i| code >> i & 1 == 1).collect();
        Self::new(n, k, bits)
    }

    pub fn rows(&self) -> usize {
        self.n
    }

    pub fn cols(&self) -> usize {
        self.k
    }

    pub fn entry(&self, i: usize, j: usize) -> bool {
        self.bits[i * self.k + j]
    }

    pub fn row_sum(&self, i: usize) -> usize {
        (0..self.k).filter(|&j| self.entry(i, j)).count()
    }

    pub fn col_sum(&self, j: usize) -> usize {
        (0..self.n).filter(|&i| self.entry(i, j)).count()
    }

    /// True when no 2x2 submatrix equals a permutation matrix (Ryser's
    /// forbidden-minor characterization), checked in O(nk log n) by sorting
    /// columns by sum and testing that every row becomes a prefix of 1s.
    pub fn is_lonesum(&self) -> bool {
        let mut col_order: Vec<usize> = (0..self.k).collect();
        let col_sums: Vec<usize> = (0..self.k).map(|j| self.col_sum(j)).collect();
        col_order.sort_by(|&a, &b| col_sums[b].cmp(&col_sums[a]));
        for i in 0..self.n {
            let mut seen_zero = false;
            for &j in &col_order {
                if self.entry(i, j) {
                    if seen_zero {
                        return false;
                    }
                } else {
                    seen_zero = true;
                }
            }
        }
        true
    }

    /// Direct quadratic scan for the forbidden 2x2 minors; test fallback.
    pub fn is_lonesum_naive(&self) -> bool {
        for i1 in 0..self.n {
            for i2 in i1 + 1..self.n {
                for j1 in 0..self.k {
                    for j2 in j1 + 1..self.k {
                        let (a, b) = (self.entry(i1, j1), self.entry(i1, j2));
                        let (c, d) = (self.entry(i2, j1), self.entry(i2, j2));
                        if a != b && c != d && a != c {
                            return false;
                        }
                    }
                }
            }
        }
        true
    }

    /// True when the directed bipartite graph is acyclic, by Kahn's
    /// algorithm on the n + k vertices. Independent of [`is_lonesum`].
    pub fn is_acyclic(&self) -> bool {
        let v = self.n + self.k;
        let mut indegree = vec![0usize; v];
        for i in 0..self.n {
            for j in 0..self.k {
                if self.entry(i, j) {
                    indegree[self.n + j] += 1;
                } else {
                    indegree[i] += 1;
                }
            }
        }
        let mut queue: Vec<usize> = (0..v).filter(|&x| indegree[x] == 0).collect();
        let mut removed = 0;
        while let Some(x) = queue.pop() {
            removed += 1;
            if x < self.n {
                for j in 0..self.k {
                    if self.entry(x, j) {
                        indegree[self.n + j] -= 1;
                        if indegree[self.n + j] == 0 {
                            queue.push(self.n + j);
                        }
                    }
                }
            } else {
                let j = x - self.n;
                #[allow(clippy::needless_range_loop)]
                for i in 0..self.n {
                    if !self.entry(i, j) {
                        indegree[i] -= 1;
                        if indegree[i] == 0 {
                            queue.push(i);
                        }
                    }
                }
            }
        }
        removed == v
    }

    /// Sorts rows and columns by decreasing sums so the 1s form a Young
    /// diagram. Returns the sorted matrix together with the row and column
    /// permutations (new index -> original index). Ties keep original order;
    /// equal-sum rows of a lonesum matrix are identical, so any tie-break
    /// yields the same matrix.
    pub fn normalize_staircase(
        &self,
    ) -> Result<(OrientationMatrix, Vec<usize>, Vec<usize>), Error> {
        if !self.is_lonesum() {
            return Err(Error::NotLonesum);
        }
        let row_sums: Vec<usize> = (0..self.n).map(|i| self.row_sum(i)).collect();
        let col_sums: Vec<usize> = (0..self.k).map(|j| self.col_sum(j)).collect();
        let mut row_perm: Vec<usize> = (0..self.n).collect();
        let mut col_perm: Vec<usize> = (0..self.k).collect();
        row_perm.sort_by(|&a, &b| row_sums[b].cmp(&row_sums[a]));
        col_perm.sort_by(|&a, &b| col_sums[b].cmp(&col_sums[a]));
        let mut bits = Vec::with_capacity(self.n * self.k);
        for &i in &row_perm {
            for &j in &col_perm {
                bits.push(self.entry(i, j));
            }
        }
        let sorted = OrientationMatrix::new(self.n, self.k, bits)?;
        Ok((sorted, row_perm, col_perm))
    }

    pub fn class_signature(&self) -> Result<ClassSignature, Error> {
        if !self.is_lonesum() {
            return Err(Error::NotLonesum);
        }
        let mut sums: Vec<usize> = (0..self.n).map(|i| self.row_sum(i)).collect();
        let has_zero_row = sums.contains(&0);
        sums.sort_unstable();
        sums.dedup();
        let m = sums.iter().filter(|&&s| s > 0).count();
        let has_zero_col = (0..self.k).any(|j| self.col_sum(j) == 0);
        Ok(ClassSignature {
            m,
            has_zero_row,
            has_zero_col,
        })
    }

    /// Longest path length from the class structure: `2m-1` with no all-zero
    /// row or column, `2m` with exactly one of the two, `2m+1` with both.
    pub fn longest_path_via_classes(&self) -> Result<usize, Error> {
        let sig = self.class_signature()?;
        Ok(match (sig.has_zero_row, sig.has_zero_col) {
            (false, false) => 2 * sig.m - 1,
            (true, true) => 2 * sig.m + 1,
            _ => 2 * sig.m,
        })
    }

    /// Longest directed path length in edges, by DP over a topological
    /// order of the n + k vertices.
    pub fn longest_path_dag(&self) -> Result<usize, Error> {
        let v = self.n + self.k;
        let mut indegree = vec![0usize; v];
        let succ = |x: usize| -> Vec<usize> {
            if x < self.n {
                (0..self.k)
                    .filter(|&j| self.entry(x, j))
                    .map(|j| self.n + j)
                    .collect()
            } else {
                (0..self.n)
                    .filter(|&i| !self.entry(i, x - self.n))
                    .collect()
            }
        };
        for x in 0..v {
            for y in succ(x) {
                indegree[y] += 1;
            }
        }
        let mut queue: Vec<usize> = (0..v).filter(|&x| indegree[x] == 0).collect();
        let mut dist = vec![0usize; v];
        let mut removed = 0;
        let mut best = 0;
        while let Some(x) = queue.pop() {
            removed += 1;
            for y in succ(x) {
                dist[y] = dist[y].max(dist[x] + 1);
                best = best.max(dist[y]);
                indegree[y] -= 1;
                if indegree[y] == 0 {
                    queue.push(y);
                }
            }
        }
        if removed != v {
            return Err(Error::Cyclic);
        }
        Ok(best)
    }
}

/// Text format: first line "n k", then n lines of k characters from {0,1}.
impl fmt::Display for OrientationMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{} {}", self.n, self.k)?;
        for i in 0..self.n {
            for j in 0..self.k {
                write!(f, "{}", if self.entry(i, j) { '1' } else { '0' })?;
            }
            if i + 1 < self.n {
                writeln!(f)?;
            }
        }
        Ok(())
    }
}

impl FromStr for OrientationMatrix {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        let mut lines = s.lines().filter(|l| !l.trim().is_empty());
        let header = lines.next().ok_or(Error::BadMatrixText)?;
        let mut dims = header.split_whitespace();
        let n: usize = dims
            .next()
            .and_then(|t| t.parse().ok())
            .ok_or(Error::BadMatrixText)?;
        let k: usize = dims
            .next()
            .and_then(|t| t.parse().ok())
            .ok_or(Error::BadMatrixText)?;
        let mut bits = Vec::with_capacity(n * k);
        for _ in 0..n {
            let line = lines.next().ok_or(Error::BadMatrixText)?;
            let row = line.trim();
            if row.len() != k {
                return Err(Error::BadMatrixText);
            }
            for c in row.chars() {
                match c {
                    '0' => bits.push(false),
                    '1' => bits.push(true),
                    _ => return Err(Error::BadMatrixText),
                }
            }
        }
        OrientationMatrix::new(n, k, bits)
    }
}

/// Maximum nk for the exhaustive oracle (2^nk orientations).
pub const BRUTE_FORCE_BUDGET: usize = 20;

/// Enumerates all 2^nk orientation matrices in ascending code order,
/// keeps the acyclic ones, and histograms the longest path length.
pub fn brute_force_distribution(n: usize, k: usize) -> Result<PathLengthDistribution, Error> {
    if n == 0 || k == 0 {
        return Err(Error::EmptyPart);
    }
    if n * k > BRUTE_FORCE_BUDGET {
        return Err(Error::BudgetExceeded {
            nk: n * k,
            budget: BRUTE_FORCE_BUDGET,
        });
    }
    let len = crate::distribution::max_path_length(n, k);
    let mut counts = vec![ExactInt::from(0); len + 1];
    for code in 0..1u64 << (n * k) {
        let matrix = OrientationMatrix::from_code(n, k, code)?;
        if matrix.is_acyclic() {
            let ell = matrix.longest_path_dag()?;
            counts[ell] += 1;
        }
    }
    PathLengthDistribution::from_counts(n, k, counts)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn from_rows(rows: &[&str]) -> OrientationMatrix {
        let n = rows.len();
        let k = rows[0].len();
        let bits = rows
            .iter()
            .flat_map(|r| r.chars().map(|c| c == '1'))
            .collect();
        OrientationMatrix::new(n, k, bits).unwrap()
    }

    #[test]
    fn lonesum_examples() {
        let example = from_rows(&["1010", "1111", "0000", "1000"]);
        assert!(example.is_lonesum());
        assert!(example.is_lonesum_naive());

        let forbidden = from_rows(&["10", "01"]);
        assert!(!forbidden.is_lonesum());
        assert!(!forbidden.is_acyclic());

        let all_ones = from_rows(&["111", "111"]);
        assert!(all_ones.is_lonesum());
        assert_eq!(all_ones.longest_path_dag().unwrap(), 1);
    }

    #[test]
    fn staircase_example_has_m_four_and_path_seven() {
        let staircase = from_rows(&["11111", "11110", "11110", "11000", "10000", "10000"]);
        let (sorted, _, _) = staircase.normalize_staircase().unwrap();
        assert_eq!(sorted, staircase);
        let sig = staircase.class_signature().unwrap();
        assert_eq!(sig.m, 4);
        assert!(!sig.has_zero_row);
        assert!(!sig.has_zero_col);
        assert_eq!(staircase.longest_path_via_classes().unwrap(), 7);
        assert_eq!(staircase.longest_path_dag().unwrap(), 7);
    }

    #[test]
    fn class_cases() {
        let all_ones = from_rows(&["11", "11"]);
        let sig = all_ones.class_signature().unwrap();
        assert_eq!(
            (sig.m, sig.has_zero_row, sig.has_zero_col),
            (1, false, false)
        );
        assert_eq!(all_ones.longest_path_via_classes().unwrap(), 1);

        let zero_col = from_rows(&["10", "10"]);
        assert_eq!(zero_col.longest_path_via_classes().unwrap(), 2);
        assert_eq!(zero_col.longest_path_dag().unwrap(), 2);

        let all_zeros = from_rows(&["000", "000"]);
        let sig = all_zeros.class_signature().unwrap();
        assert_eq!((sig.m, sig.has_zero_row, sig.has_zero_col), (0, true, true));
        // m = 0 with both flags: the formula 2m+1 = 1 agrees with the DAG.
        assert_eq!(all_zeros.longest_path_via_classes().unwrap(), 1);
        assert_eq!(all_zeros.longest_path_dag().unwrap(), 1);
    }

    #[test]
    fn non_lonesum_is_rejected() {
        let bad = from_rows(&["10", "01"]);
        assert!(bad.normalize_staircase().is_err());
        assert!(bad.class_signature().is_err());
        assert!(bad.longest_path_dag().is_err());
    }

    #[test]
    fn acyclic_iff_lonesum_exhaustive() {
        for (n, k) in [(1, 1), (2, 2), (3, 3), (2, 4), (1, 5)] {
            for code in 0..1u64 << (n * k) {
                let m = OrientationMatrix::from_code(n, k, code).unwrap();
                assert_eq!(m.is_acyclic(), m.is_lonesum(), "{n}x{k} code {code}");
                assert_eq!(m.is_lonesum(), m.is_lonesum_naive());
            }
        }
    }

    #[test]
    fn class_formula_matches_dag_exhaustive() {
        for (n, k) in [(2, 2), (3, 3), (2, 5), (4, 3)] {
            for code in 0..1u64 << (n * k) {
                let m = OrientationMatrix::from_code(n, k, code).unwrap();
                if m.is_lonesum() {
                    assert_eq!(
                        m.longest_path_via_classes().unwrap(),
                        m.longest_path_dag().unwrap(),
                        "{n}x{k} code {code}"
                    );
                }
            }
        }
    }

    #[test]
    fn normalized_rows_are_prefix_form() {
        for code in 0..1u64 << 12 {
            let m = OrientationMatrix::from_code(3, 4, code).unwrap();
            if !m.is_lonesum() {
                continue;
            }
            let (sorted, _, _) = m.normalize_staircase().unwrap();
            let mut prev = usize::MAX;
            for i in 0..3 {
                let s = sorted.row_sum(i);
                assert!(s <= prev);
                prev = s;
                for j in 0..4 {
                    assert_eq!(sorted.entry(i, j), j < s, "row not 1^a 0^b");
                }
            }
        }
    }

    #[test]
    fn brute_force_small_cases() {
        let d = brute_force_distribution(2, 2).unwrap();
        assert_eq!(d.count(1), ExactInt::from(2));
        assert_eq!(d.count(2), ExactInt::from(4));
        assert_eq!(d.count(3), ExactInt::from(8));
        assert_eq!(d.total(), &ExactInt::from(14));

        let d = brute_force_distribution(1, 1).unwrap();
        assert_eq!(d.count(1), ExactInt::from(2));
        assert_eq!(d.total(), &ExactInt::from(2));

        let d = brute_force_distribution(3, 3).unwrap();
        assert_eq!(d.total(), &ExactInt::from(230));

        assert!(brute_force_distribution(5, 5).is_err());
        assert!(brute_force_distribution(0, 3).is_err());
    }

    #[test]
    fn matrix_text_round_trip() {
        let m = from_rows(&["1010", "1111", "0000", "1000"]);
        let text = m.to_string();
        assert_eq!(text.parse::<OrientationMatrix>().unwrap(), m);
        assert!("2 2\n10".parse::<OrientationMatrix>().is_err());
        assert!("2 2\n1x\n00".parse::<OrientationMatrix>().is_err());
    }
}
