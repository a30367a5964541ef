//! Truncated bivariate power series in x and y whose coefficients are
//! polynomials in u with exact rational entries. The engine expands the
//! closed-form generating functions for orientation counts and checks
//! their coefficients against the combinatorial formulas.

use num_traits::{One, Zero};

use crate::exact::{ExactInt, ExactRational};
use crate::Error;

/// Which of the two exponential variables a univariate building block uses.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Variable {
    X,
    Y,
}

/// Power series truncated at degree `order` in x and, independently, in y.
/// Each (x, y) monomial carries a dense polynomial in u of degree at most
/// `2 * order + 1`. Arithmetic is exact; multiplication discards only terms
/// whose x- or y-degree exceeds the truncation order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TruncatedSeries {
    order: usize,
    u_cap: usize,
    // coeffs[a][b] = polynomial in u attached to x^a y^b, dense, len u_cap + 1
    coeffs: Vec<Vec<Vec<ExactRational>>>,
}

impl TruncatedSeries {
    pub fn zero(order: usize) -> Self {
        let u_cap = 2 * order + 1;
        TruncatedSeries {
            order,
            u_cap,
            coeffs: vec![vec![vec![ExactRational::zero(); u_cap + 1]; order + 1]; order + 1],
        }
    }

    pub fn constant(order: usize, value: ExactRational) -> Self {
        let mut s = Self::zero(order);
        s.coeffs[0][0][0] = value;
        s
    }

    pub fn one(order: usize) -> Self {
        Self::constant(order, ExactRational::one())
    }

    /// The monomial u, as a series.
    pub fn u(order: usize) -> Self {
        let mut s = Self::zero(order);
        if s.u_cap >= 1 {
            s.coeffs[0][0][1] = ExactRational::one();
        }
        s
    }

    pub fn order(&self) -> usize {
        self.order
    }

    /// Coefficient of `x^a y^b u^p`; indices beyond the truncation return 0.
    pub fn coeff(&self, a: usize, b: usize, p: usize) -> ExactRational {
        if a > self.order || b > self.order || p > self.u_cap {
            return ExactRational::zero();
        }
        self.coeffs[a][b][p].clone()
    }

    /// The u-polynomial attached to `x^a y^b`.
    pub fn u_poly(&self, a: usize, b: usize) -> &[ExactRational] {
        &self.coeffs[a][b]
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().flatten().flatten().all(|c| c.is_zero())
    }

    fn assert_compatible(&self, other: &Self) {
        assert_eq!(self.order, other.order, "mismatched truncation orders");
    }

    pub fn add(&self, other: &Self) -> Self {
        self.assert_compatible(other);
        let mut out = self.clone();
        for a in 0..=self.order {
            for b in 0..=self.order {
                for p in 0..=self.u_cap {
                    out.coeffs[a][b][p] += &other.coeffs[a][b][p];
                }
            }
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.assert_compatible(other);
        let mut out = self.clone();
        for a in 0..=self.order {
            for b in 0..=self.order {
                for p in 0..=self.u_cap {
                    out.coeffs[a][b][p] -= &other.coeffs[a][b][p];
                }
            }
        }
        out
    }

    pub fn scale(&self, factor: &ExactRational) -> Self {
        let mut out = self.clone();
        for poly in out.coeffs.iter_mut().flatten() {
            for c in poly.iter_mut() {
                *c *= factor;
            }
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Self {
        self.assert_compatible(other);
        let mut out = Self::zero(self.order);
        for a1 in 0..=self.order {
            for b1 in 0..=self.order {
                let lhs = &self.coeffs[a1][b1];
                if lhs.iter().all(|c| c.is_zero()) {
                    continue;
                }
                for a2 in 0..=self.order - a1 {
                    for b2 in 0..=self.order - b1 {
                        let rhs = &other.coeffs[a2][b2];
                        let target = &mut out.coeffs[a1 + a2][b1 + b2];
                        for (p1, c1) in lhs.iter().enumerate() {
                            if c1.is_zero() {
                                continue;
                            }
                            for (p2, c2) in rhs.iter().enumerate() {
                                if p1 + p2 > out.u_cap {
                                    break;
                                }
                                if !c2.is_zero() {
                                    target[p1 + p2] += c1 * c2;
                                }
                            }
                        }
                    }
                }
            }
        }
        out
    }

    /// Substitutes u = 1, collapsing each u-polynomial to its value.
    pub fn eval_u_one(&self) -> Self {
        let mut out = Self::zero(self.order);
        for a in 0..=self.order {
            for b in 0..=self.order {
                out.coeffs[a][b][0] = self.coeffs[a][b].iter().sum();
            }
        }
        out
    }

    /// Keeps only the u-monomials of the given parity.
    pub fn u_parity_part(&self, odd: bool) -> Self {
        let mut out = Self::zero(self.order);
        for a in 0..=self.order {
            for b in 0..=self.order {
                for p in 0..=self.u_cap {
                    if (p % 2 == 1) == odd {
                        out.coeffs[a][b][p] = self.coeffs[a][b][p].clone();
                    }
                }
            }
        }
        out
    }

    /// Recovers the integer count `n! k! [x^n y^k u^l]` of this series.
    pub fn extract_count(&self, n: usize, k: usize, l: usize) -> ExactRational {
        let nf = ExactRational::from(crate::exact::factorial(n));
        let kf = ExactRational::from(crate::exact::factorial(k));
        self.coeff(n, k, l) * nf * kf
    }
}

/// `e^v - 1` in the chosen variable: coefficient `1/a!` at degree `a >= 1`.
pub fn series_exp_minus_one(variable: Variable, order: usize) -> TruncatedSeries {
    let mut s = TruncatedSeries::zero(order);
    let mut inv_fact = ExactRational::one();
    for a in 1..=order {
        inv_fact /= ExactInt::from(a);
        match variable {
            Variable::X => s.coeffs[a][0][0] = inv_fact.clone(),
            Variable::Y => s.coeffs[0][a][0] = inv_fact.clone(),
        }
    }
    s
}

/// `e^v` in the chosen variable.
pub fn series_exp(variable: Variable, order: usize) -> TruncatedSeries {
    series_exp_minus_one(variable, order).add(&TruncatedSeries::one(order))
}

/// `sum_{j >= 0} g^j = 1 / (1 - g)` in the truncated ring. Requires `g` to
/// vanish at the origin in (x, y) jointly so that the sum terminates.
pub fn series_geometric(g: &TruncatedSeries, order: usize) -> Result<TruncatedSeries, Error> {
    assert_eq!(g.order(), order);
    if g.u_poly(0, 0).iter().any(|c| !c.is_zero()) {
        return Err(Error::NonzeroConstantTerm);
    }
    let mut acc = TruncatedSeries::one(order);
    let mut term = TruncatedSeries::one(order);
    // g has no (x, y)-constant term, so g^j has total degree at least j and
    // vanishes in the truncated ring once j exceeds twice the order.
    for _ in 0..=2 * order {
        term = term.mul(g);
        if term.is_zero() {
            break;
        }
        acc = acc.add(&term);
    }
    Ok(acc)
}

/// Denominator kernel `u^2 (e^x - 1)(e^y - 1)` shared by all the closed forms.
fn kernel(order: usize) -> TruncatedSeries {
    let u = TruncatedSeries::u(order);
    u.mul(&u)
        .mul(&series_exp_minus_one(Variable::X, order))
        .mul(&series_exp_minus_one(Variable::Y, order))
}

/// Trivariate generating function for orientation counts refined by longest
/// path length:
/// `(e^{x+y} - (u-1)^2 (e^x - 1)(e^y - 1)) / (1 - u^2 (e^x - 1)(e^y - 1))`,
/// with `n! k! [x^n y^k u^l]` equal to the count of orientations of `K_{n,k}`
/// whose longest path has `l` edges.
pub fn expand_f(order: usize) -> TruncatedSeries {
    let exy = series_exp(Variable::X, order).mul(&series_exp(Variable::Y, order));
    let u_minus_one = TruncatedSeries::u(order).sub(&TruncatedSeries::one(order));
    let numerator = exy.sub(
        &u_minus_one
            .mul(&u_minus_one)
            .mul(&series_exp_minus_one(Variable::X, order))
            .mul(&series_exp_minus_one(Variable::Y, order)),
    );
    let geom = series_geometric(&kernel(order), order).expect("kernel vanishes at origin");
    numerator.mul(&geom)
}

/// Bivariate generating function for the total orientation counts, expanded
/// through the algebraically equivalent form
/// `e^{x+y} / (1 - (e^x - 1)(e^y - 1))` to reuse the geometric kernel.
pub fn expand_b(order: usize) -> TruncatedSeries {
    let exy = series_exp(Variable::X, order).mul(&series_exp(Variable::Y, order));
    let g = series_exp_minus_one(Variable::X, order).mul(&series_exp_minus_one(Variable::Y, order));
    let geom = series_geometric(&g, order).expect("kernel vanishes at origin");
    exy.mul(&geom)
}

/// The odd and even u-parity parts of the trivariate generating function,
/// from their separate closed forms:
/// odd `2u (e^x-1)(e^y-1) / (1 - u^2 (e^x-1)(e^y-1))` and
/// even `1 + (e^x + e^y - 2) / (1 - u^2 (e^x-1)(e^y-1))`.
pub fn expand_parity_parts(order: usize) -> (TruncatedSeries, TruncatedSeries) {
    let geom = series_geometric(&kernel(order), order).expect("kernel vanishes at origin");
    let two = ExactRational::from(ExactInt::from(2));
    let odd = TruncatedSeries::u(order)
        .mul(&series_exp_minus_one(Variable::X, order))
        .mul(&series_exp_minus_one(Variable::Y, order))
        .mul(&geom)
        .scale(&two);
    let even_num =
        series_exp_minus_one(Variable::X, order).add(&series_exp_minus_one(Variable::Y, order));
    let even = TruncatedSeries::one(order).add(&even_num.mul(&geom));
    (odd, even)
}
