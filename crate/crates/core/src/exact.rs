//! Floating-point-free multiplicity certificates.
//!
//! `f_k(y) = ∏ (y − 4cos²(πi/(2k+1)))` has integer coefficients: it is the
//! characteristic polynomial of the path on `2k` vertices with `x²`
//! replaced by `y`. Since `L` and `Q` are symmetric, the nullity of `f_k(L)`
//! is the total multiplicity of the `k` target values in `L`, and fraction-free
//! elimination computes it exactly.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::matrices::{laplacian, signless_laplacian};
use crate::pendant::{find_pendant_paths, pendant_bound};
use crate::{Error, Graph, IntMatrix, Result};

/// Largest matrix order accepted by the exact checks unless overridden.
pub const DEFAULT_EXACT_ORDER_CAP: usize = 256;

/// Largest pendant length for which [`pendant_polynomial`] is used in checks.
pub const MAX_EXACT_K: usize = 64;

/// Polynomial with big-integer coefficients in ascending degree order.
/// The coefficient list never ends in zero; the zero polynomial is empty.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct IntPolynomial {
    coefficients: Vec<BigInt>,
}

impl IntPolynomial {
    pub fn new(mut coefficients: Vec<BigInt>) -> Self {
        while coefficients.last().is_some_and(Zero::is_zero) {
            coefficients.pop();
        }
        IntPolynomial { coefficients }
    }

    pub fn from_i64(coefficients: &[i64]) -> Self {
        Self::new(coefficients.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn one() -> Self {
        Self::from_i64(&[1])
    }

    pub fn x() -> Self {
        Self::from_i64(&[0, 1])
    }

    pub fn coefficients(&self) -> &[BigInt] {
        &self.coefficients
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coefficients.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coefficients.is_empty()
    }

    pub fn sub(&self, other: &IntPolynomial) -> IntPolynomial {
        let len = self.coefficients.len().max(other.coefficients.len());
        let zero = BigInt::zero();
        let c = (0..len)
            .map(|i| {
                self.coefficients.get(i).unwrap_or(&zero) - other.coefficients.get(i).unwrap_or(&zero)
            })
            .collect();
        IntPolynomial::new(c)
    }

    /// Multiplication by `x`.
    pub fn shift(&self) -> IntPolynomial {
        if self.is_zero() {
            return self.clone();
        }
        let mut c = Vec::with_capacity(self.coefficients.len() + 1);
        c.push(BigInt::zero());
        c.extend(self.coefficients.iter().cloned());
        IntPolynomial { coefficients: c }
    }

    /// Floating-point evaluation by compensated Horner's scheme: the result
    /// is as accurate as plain Horner carried out in twice the precision.
    pub fn eval_f64(&self, y: f64) -> f64 {
        use num_traits::ToPrimitive;
        let mut coeffs = self.coefficients.iter().rev().map(|c| c.to_f64().unwrap_or(f64::NAN));
        let Some(mut acc) = coeffs.next() else {
            return 0.0;
        };
        let mut correction = 0.0;
        for c in coeffs {
            let product = acc * y;
            let product_err = libm::fma(acc, y, -product);
            let sum = product + c;
            let t = sum - product;
            let sum_err = (product - (sum - t)) + (c - t);
            acc = sum;
            correction = correction * y + (product_err + sum_err);
        }
        acc + correction
    }
}

impl fmt::Display for IntPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (d, c) in self.coefficients.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let sign = if c.is_negative() { "-" } else { "+" };
            if first {
                if c.is_negative() {
                    f.write_str("-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            let mag = c.abs();
            if !mag.is_one() || d == 0 {
                write!(f, "{mag}")?;
            }
            match d {
                0 => {}
                1 => f.write_str("y")?,
                _ => write!(f, "y^{d}")?,
            }
            first = false;
        }
        Ok(())
    }
}

/// Monic characteristic polynomial of the path on `d` vertices:
/// `p_0 = 1`, `p_1 = x`, `p_d = x·p_{d−1} − p_{d−2}`.
pub fn chebyshev_monic(d: usize) -> IntPolynomial {
    let mut prev = IntPolynomial::one();
    if d == 0 {
        return prev;
    }
    let mut cur = IntPolynomial::x();
    for _ in 1..d {
        let next = cur.shift().sub(&prev);
        prev = core::mem::replace(&mut cur, next);
    }
    cur
}

/// `f_k(y)`, obtained from the even polynomial `chebyshev_monic(2k)` by
/// substituting `x² → y`. Its roots are the `k` values `4cos²(πi/(2k+1))`.
pub fn pendant_polynomial(k: usize) -> IntPolynomial {
    let even = chebyshev_monic(2 * k);
    debug_assert!(even.coefficients.iter().skip(1).step_by(2).all(Zero::is_zero));
    IntPolynomial::new(even.coefficients.into_iter().step_by(2).collect())
}

/// Dense row-major big-integer matrix.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BigMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl BigMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        BigMatrix {
            rows,
            cols,
            data: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.data[i * self.cols + j]
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    fn add_scalar_diagonal(&mut self, c: &BigInt) {
        for i in 0..self.rows.min(self.cols) {
            self.data[i * self.cols + i] += c;
        }
    }

    /// `self · m` where `m` is a (typically sparse) small-integer matrix.
    fn mul_int(&self, m: &IntMatrix) -> BigMatrix {
        let nonzeros: Vec<Vec<(usize, i64)>> = (0..m.rows())
            .map(|k| {
                m.row(k)
                    .iter()
                    .enumerate()
                    .filter(|(_, &x)| x != 0)
                    .map(|(j, &x)| (j, x))
                    .collect()
            })
            .collect();
        let mut out = BigMatrix::zeros(self.rows, m.cols());
        for i in 0..self.rows {
            for (k, row) in nonzeros.iter().enumerate() {
                let a = &self.data[i * self.cols + k];
                if a.is_zero() {
                    continue;
                }
                for &(j, x) in row {
                    out.data[i * out.cols + j] += a * x;
                }
            }
        }
        out
    }
}

impl From<&IntMatrix> for BigMatrix {
    fn from(m: &IntMatrix) -> Self {
        BigMatrix {
            rows: m.rows(),
            cols: m.cols(),
            data: m.entries().iter().map(|&x| BigInt::from(x)).collect(),
        }
    }
}

/// `f(M)` by Horner's scheme in exact arithmetic.
pub fn evaluate_poly_at_matrix(f: &IntPolynomial, m: &IntMatrix) -> Result<BigMatrix> {
    if !m.is_square() {
        return Err(Error::MatrixShape("polynomial of a non-square matrix"));
    }
    let n = m.rows();
    let mut acc = BigMatrix::zeros(n, n);
    for (idx, c) in f.coefficients.iter().enumerate().rev() {
        if idx + 1 < f.coefficients.len() {
            acc = acc.mul_int(m);
        }
        acc.add_scalar_diagonal(c);
    }
    Ok(acc)
}

/// Rank over the rationals by fraction-free (Bareiss) elimination.
pub fn exact_rank(m: &BigMatrix) -> usize {
    let (rows, cols) = (m.rows, m.cols);
    let mut a = m.data.clone();
    let mut prev = BigInt::one();
    let mut rank = 0;
    for c in 0..cols {
        if rank == rows {
            break;
        }
        let Some(p) = (rank..rows).find(|&r| !a[r * cols + c].is_zero()) else {
            continue;
        };
        if p != rank {
            for j in 0..cols {
                a.swap(p * cols + j, rank * cols + j);
            }
        }
        let pivot = a[rank * cols + c].clone();
        for i in rank + 1..rows {
            let factor = core::mem::take(&mut a[i * cols + c]);
            for j in c + 1..cols {
                let num = &pivot * &a[i * cols + j] - &factor * &a[rank * cols + j];
                a[i * cols + j] = num / &prev;
            }
        }
        prev = pivot;
        rank += 1;
    }
    rank
}

/// Dimension of the rational kernel of a square matrix.
pub fn exact_nullity(m: &BigMatrix) -> usize {
    m.cols - exact_rank(m)
}

/// Exact nullities of `f_k(L)` and `f_k(Q)` against the aggregate bound
/// `k · (p_k − q_k)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct AggregateCheck {
    pub k: usize,
    pub nullity_l: usize,
    pub nullity_q: usize,
    pub bound: usize,
    pub pass: bool,
}

pub fn aggregate_multiplicity_check(g: &Graph, k: usize, order_cap: usize) -> Result<AggregateCheck> {
    if g.order() > order_cap {
        return Err(Error::SizeLimit {
            order: g.order(),
            limit: order_cap,
        });
    }
    if k == 0 || k > MAX_EXACT_K {
        return Err(Error::Index { index: k, max: MAX_EXACT_K });
    }
    let bound = k * pendant_bound(&find_pendant_paths(g), k);
    let f = pendant_polynomial(k);
    let nullity_l = exact_nullity(&evaluate_poly_at_matrix(&f, &laplacian(g))?);
    let nullity_q = exact_nullity(&evaluate_poly_at_matrix(&f, &signless_laplacian(g))?);
    Ok(AggregateCheck {
        k,
        nullity_l,
        nullity_q,
        bound,
        pass: nullity_l >= bound && nullity_q >= bound,
    })
}
