//! Dense symmetric eigenvalues, multiplicity counting and interlacing.
//!
//! The default solver reduces to tridiagonal form with Householder
//! reflections and finishes with implicit-shift QL iteration. A cyclic Jacobi
//! solver is kept alongside as an independent route for cross-checks.

use alloc::vec;
use alloc::vec::Vec;
use core::f64::consts::PI;

use libm::{cos, fabs, hypot, sqrt};

use crate::{Error, IntMatrix, Result};

/// How wide a window around a value counts as "equal".
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Tolerance {
    Absolute(f64),
    /// Multiplied by `max(1, ‖M‖∞)` of the matrix being solved.
    Relative(f64),
}

impl Tolerance {
    pub fn resolve(self, norm_inf: f64) -> f64 {
        match self {
            Tolerance::Absolute(t) => t,
            Tolerance::Relative(t) => t * norm_inf.max(1.0),
        }
    }
}

impl Default for Tolerance {
    fn default() -> Self {
        Tolerance::Relative(1e-8)
    }
}

/// Dense symmetric matrix of `f64`, row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct SymMatrix {
    n: usize,
    data: Vec<f64>,
}

impl SymMatrix {
    pub fn from_int(m: &IntMatrix) -> Result<Self> {
        if !m.is_square() {
            return Err(Error::MatrixShape("eigenvalues of a non-square matrix"));
        }
        if !m.is_symmetric() {
            return Err(Error::MatrixShape("eigenvalues of an asymmetric matrix"));
        }
        Ok(SymMatrix {
            n: m.rows(),
            data: m.entries().iter().map(|&x| x as f64).collect(),
        })
    }

    pub fn from_rows(rows: &[Vec<f64>]) -> Result<Self> {
        let n = rows.len();
        if rows.iter().any(|r| r.len() != n) {
            return Err(Error::MatrixShape("eigenvalues of a non-square matrix"));
        }
        if (0..n).any(|i| (0..i).any(|j| rows[i][j] != rows[j][i])) {
            return Err(Error::MatrixShape("eigenvalues of an asymmetric matrix"));
        }
        Ok(SymMatrix { n, data: rows.concat() })
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.n + j]
    }

    pub fn norm_inf(&self) -> f64 {
        self.data
            .chunks(self.n.max(1))
            .map(|r| r.iter().map(|x| fabs(*x)).sum::<f64>())
            .fold(0.0, f64::max)
    }
}

/// Eigenvalues in ascending order.
#[derive(Debug, Clone, PartialEq)]
pub struct Spectrum {
    pub values: Vec<f64>,
    pub source_dim: usize,
    /// Absolute clustering tolerance attached at construction.
    pub tol: f64,
}

impl Spectrum {
    pub fn from_values(mut values: Vec<f64>, tol: f64) -> Self {
        values.sort_by(f64::total_cmp);
        Spectrum {
            source_dim: values.len(),
            values,
            tol,
        }
    }

    pub fn with_tol(mut self, tol: f64) -> Self {
        self.tol = tol;
        self
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Values in descending order.
    pub fn descending(&self) -> impl Iterator<Item = f64> + '_ {
        self.values.iter().rev().copied()
    }

    pub fn sum(&self) -> f64 {
        self.values.iter().sum()
    }

    /// Sizes of maximal runs whose consecutive gaps are at most `tol`.
    pub fn cluster_sizes(&self, tol: f64) -> Vec<usize> {
        let mut sizes = Vec::new();
        let mut run = 0;
        for (idx, &v) in self.values.iter().enumerate() {
            if idx > 0 && v - self.values[idx - 1] > tol {
                sizes.push(run);
                run = 0;
            }
            run += 1;
        }
        if run > 0 {
            sizes.push(run);
        }
        sizes
    }

    pub fn largest_cluster(&self, tol: f64) -> usize {
        self.cluster_sizes(tol).into_iter().max().unwrap_or(0)
    }

    /// Values with `|λ| > tol`.
    pub fn nonzero(&self, tol: f64) -> Vec<f64> {
        self.values.iter().copied().filter(|v| fabs(*v) > tol).collect()
    }

    /// Values with `λ > tol`.
    pub fn positive(&self, tol: f64) -> Vec<f64> {
        self.values.iter().copied().filter(|v| *v > tol).collect()
    }
}

/// Optimal bottleneck distance between two multisets of reals: the largest
/// gap when both are paired in sorted order. Infinite when sizes differ.
pub fn matching_distance(a: &[f64], b: &[f64]) -> f64 {
    if a.len() != b.len() {
        return f64::INFINITY;
    }
    let mut a = a.to_vec();
    let mut b = b.to_vec();
    a.sort_by(f64::total_cmp);
    b.sort_by(f64::total_cmp);
    a.iter().zip(&b).map(|(x, y)| fabs(x - y)).fold(0.0, f64::max)
}

/// All eigenvalues of a symmetric matrix, tagged with the default scaled
/// tolerance `1e-8 · max(1, ‖M‖∞)`.
pub fn eigenvalues_symmetric(m: &SymMatrix) -> Spectrum {
    let n = m.order();
    let tol = Tolerance::default().resolve(m.norm_inf());
    let mut a = m.data.clone();
    let (mut d, mut e) = tridiagonalize(&mut a, n);
    tridiagonal_ql(&mut d, &mut e);
    Spectrum::from_values(d, tol)
}

/// Convenience wrapper for integer matrices.
pub fn int_spectrum(m: &IntMatrix) -> Result<Spectrum> {
    Ok(eigenvalues_symmetric(&SymMatrix::from_int(m)?))
}

/// Householder reduction of the symmetric matrix `a` (row-major, lower
/// triangle used) to tridiagonal form. Returns the diagonal and the
/// sub-diagonal, with the sub-diagonal in `e[1..]`.
fn tridiagonalize(a: &mut [f64], n: usize) -> (Vec<f64>, Vec<f64>) {
    let mut d = vec![0.0; n];
    let mut e = vec![0.0; n];
    for i in (1..n).rev() {
        let l = i - 1;
        if l > 0 {
            let mut h = 0.0;
            let scale: f64 = (0..=l).map(|k| fabs(a[i * n + k])).sum();
            if scale == 0.0 {
                e[i] = a[i * n + l];
            } else {
                for k in 0..=l {
                    a[i * n + k] /= scale;
                    h += a[i * n + k] * a[i * n + k];
                }
                let f = a[i * n + l];
                let g = if f >= 0.0 { -sqrt(h) } else { sqrt(h) };
                e[i] = scale * g;
                h -= f * g;
                a[i * n + l] = f - g;
                let mut f = 0.0;
                for j in 0..=l {
                    let mut g = 0.0;
                    for k in 0..=j {
                        g += a[j * n + k] * a[i * n + k];
                    }
                    for k in j + 1..=l {
                        g += a[k * n + j] * a[i * n + k];
                    }
                    e[j] = g / h;
                    f += e[j] * a[i * n + j];
                }
                let hh = f / (h + h);
                for j in 0..=l {
                    let f = a[i * n + j];
                    let g = e[j] - hh * f;
                    e[j] = g;
                    for k in 0..=j {
                        a[j * n + k] -= f * e[k] + g * a[i * n + k];
                    }
                }
            }
        } else {
            e[i] = a[i * n + l];
        }
    }
    if n > 0 {
        e[0] = 0.0;
    }
    for i in 0..n {
        d[i] = a[i * n + i];
    }
    (d, e)
}

/// Implicit-shift QL on a symmetric tridiagonal matrix. `d` is overwritten
/// with the eigenvalues; `e` holds the sub-diagonal in `e[1..]`.
fn tridiagonal_ql(d: &mut [f64], e: &mut [f64]) {
    let n = d.len();
    if n < 2 {
        return;
    }
    for i in 1..n {
        e[i - 1] = e[i];
    }
    e[n - 1] = 0.0;
    for l in 0..n {
        let mut iterations = 0;
        loop {
            let mut m = l;
            while m + 1 < n {
                let dd = fabs(d[m]) + fabs(d[m + 1]);
                if fabs(e[m]) <= f64::EPSILON * dd {
                    break;
                }
                m += 1;
            }
            if m == l {
                break;
            }
            iterations += 1;
            assert!(iterations <= 1000, "QL iteration failed to converge");
            let mut g = (d[l + 1] - d[l]) / (2.0 * e[l]);
            let mut r = hypot(g, 1.0);
            g = d[m] - d[l] + e[l] / (g + if g >= 0.0 { r } else { -r });
            let (mut s, mut c, mut p) = (1.0, 1.0, 0.0);
            let mut i = m;
            let mut deflated = false;
            while i > l {
                i -= 1;
                let f = s * e[i];
                let b = c * e[i];
                r = hypot(f, g);
                e[i + 1] = r;
                if r == 0.0 {
                    d[i + 1] -= p;
                    e[m] = 0.0;
                    deflated = true;
                    break;
                }
                s = f / r;
                c = g / r;
                g = d[i + 1] - p;
                r = (d[i] - g) * s + 2.0 * c * b;
                p = s * r;
                d[i + 1] = g + p;
                g = c * r - b;
            }
            if deflated {
                continue;
            }
            d[l] -= p;
            e[l] = g;
            e[m] = 0.0;
        }
    }
}

/// Cyclic Jacobi rotations until the off-diagonal mass vanishes to machine
/// precision.
pub fn jacobi_eigenvalues(m: &SymMatrix) -> Spectrum {
    let n = m.order();
    let tol = Tolerance::default().resolve(m.norm_inf());
    let mut a = m.data.clone();
    let total: f64 = sqrt(a.iter().map(|x| x * x).sum::<f64>());
    for _sweep in 0..100 {
        let mut off = 0.0;
        for i in 0..n {
            for j in i + 1..n {
                off += a[i * n + j] * a[i * n + j];
            }
        }
        if sqrt(off) <= f64::EPSILON * total * 0.1 {
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                let apq = a[p * n + q];
                if apq == 0.0 {
                    continue;
                }
                let theta = (a[q * n + q] - a[p * n + p]) / (2.0 * apq);
                let t = if fabs(theta) > 1e150 {
                    0.5 / theta
                } else {
                    let t = 1.0 / (fabs(theta) + sqrt(theta * theta + 1.0));
                    if theta < 0.0 {
                        -t
                    } else {
                        t
                    }
                };
                let c = 1.0 / sqrt(t * t + 1.0);
                let s = t * c;
                for k in 0..n {
                    if k == p || k == q {
                        continue;
                    }
                    let akp = a[k * n + p];
                    let akq = a[k * n + q];
                    let new_p = c * akp - s * akq;
                    let new_q = s * akp + c * akq;
                    a[k * n + p] = new_p;
                    a[p * n + k] = new_p;
                    a[k * n + q] = new_q;
                    a[q * n + k] = new_q;
                }
                a[p * n + p] -= t * apq;
                a[q * n + q] += t * apq;
                a[p * n + q] = 0.0;
                a[q * n + p] = 0.0;
            }
        }
    }
    Spectrum::from_values((0..n).map(|i| a[i * n + i]).collect(), tol)
}

/// `4cos²(πi/(2k+1))` and its square root `2cos(πi/(2k+1))`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TargetValue {
    pub k: usize,
    pub i: usize,
    pub value: f64,
    pub theta: f64,
}

pub fn target_value(k: usize, i: usize) -> Result<TargetValue> {
    if i == 0 || i > k {
        return Err(Error::Index { index: i, max: k });
    }
    let theta = 2.0 * cos(PI * i as f64 / (2 * k + 1) as f64);
    Ok(TargetValue {
        k,
        i,
        value: theta * theta,
        theta,
    })
}

/// All `k` targets for pendant length `k`, `i = 1..=k` (decreasing values).
pub fn targets(k: usize) -> impl Iterator<Item = TargetValue> {
    (1..=k).map(move |i| target_value(k, i).expect("1 <= i <= k"))
}

/// Number of eigenvalues within `tol` of `target`.
pub fn multiplicity_of(s: &Spectrum, target: f64, tol: f64) -> usize {
    let lo = s.values.partition_point(|&v| v < target - tol);
    let hi = s.values.partition_point(|&v| v <= target + tol);
    hi - lo
}

/// Closed-form adjacency spectrum of the path on `vertices` vertices:
/// `2cos(πi/(vertices+1))`, `i = 1..=vertices`.
pub fn path_adjacency_spectrum(vertices: usize) -> Spectrum {
    let values = (1..=vertices)
        .map(|i| 2.0 * cos(PI * i as f64 / (vertices + 1) as f64))
        .collect();
    let norm = if vertices >= 3 { 2.0 } else { vertices.saturating_sub(1) as f64 };
    Spectrum::from_values(values, Tolerance::default().resolve(norm))
}

/// Cauchy interlacing between a spectrum and that of a principal submatrix:
/// with `t = full − sub` and descending order, `λ_j ≥ η_j ≥ λ_{j+t}`, each
/// inequality relaxed by the larger of the two attached tolerances.
pub fn check_interlacing(full: &Spectrum, sub: &Spectrum) -> bool {
    if sub.len() > full.len() {
        return false;
    }
    let tol = full.tol.max(sub.tol);
    let t = full.len() - sub.len();
    let lambda: Vec<f64> = full.descending().collect();
    sub.descending()
        .enumerate()
        .all(|(j, eta)| lambda[j] + tol >= eta && eta >= lambda[j + t] - tol)
}
