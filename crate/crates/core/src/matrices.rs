//! Integer matrices of a graph: adjacency, incidence, directed incidence,
//! Laplacian, signless Laplacian and the two subdivision block matrices.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Index, IndexMut};

use rand::Rng;

use crate::{Error, Graph, Result};

/// Dense row-major integer matrix.
///
/// Every matrix built from a graph has entries in `{-1, 0, 1}` or vertex
/// degrees, so `i64` storage is exact. Polynomial evaluation and elimination
/// move to [`crate::BigMatrix`].
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<i64>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = 1;
        }
        m
    }

    pub fn from_rows(rows: &[Vec<i64>]) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::MatrixShape("ragged rows"));
        }
        Ok(IntMatrix {
            rows: rows.len(),
            cols,
            data: rows.concat(),
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn row(&self, i: usize) -> &[i64] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<i64>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)];
            }
        }
        t
    }

    pub fn mul(&self, other: &IntMatrix) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::MatrixShape("inner dimensions differ"));
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(i, k)];
                if a == 0 {
                    continue;
                }
                for j in 0..other.cols {
                    out[(i, j)] += a * other[(k, j)];
                }
            }
        }
        Ok(out)
    }

    /// `self · selfᵀ`.
    pub fn gram(&self) -> Self {
        let mut out = Self::zeros(self.rows, self.rows);
        for i in 0..self.rows {
            for j in 0..self.rows {
                out[(i, j)] = self.row(i).iter().zip(self.row(j)).map(|(a, b)| a * b).sum();
            }
        }
        out
    }

    pub fn is_symmetric(&self) -> bool {
        self.is_square() && (0..self.rows).all(|i| (0..i).all(|j| self[(i, j)] == self[(j, i)]))
    }

    /// Maximum absolute row sum.
    pub fn norm_inf(&self) -> i64 {
        (0..self.rows)
            .map(|i| self.row(i).iter().map(|x| x.abs()).sum())
            .max()
            .unwrap_or(0)
    }

    pub fn trace(&self) -> i64 {
        (0..self.rows.min(self.cols)).map(|i| self[(i, i)]).sum()
    }

    /// `[[0, B], [Bᵀ, 0]]` for this `n × m` matrix `B`.
    pub fn bipartite_block(&self) -> Self {
        let size = self.rows + self.cols;
        let mut out = Self::zeros(size, size);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let x = self[(i, j)];
                out[(i, self.rows + j)] = x;
                out[(self.rows + j, i)] = x;
            }
        }
        out
    }

    /// `S · self · S` for the diagonal sign matrix `S = diag(signs)`.
    pub fn conjugate_by_signs(&self, signs: &[i64]) -> Result<Self> {
        if !self.is_square() || signs.len() != self.rows {
            return Err(Error::MatrixShape("sign vector must match a square matrix"));
        }
        let mut out = self.clone();
        for i in 0..self.rows {
            for j in 0..self.cols {
                out[(i, j)] *= signs[i] * signs[j];
            }
        }
        Ok(out)
    }

    /// Principal submatrix on the indices not in `removed`.
    pub fn delete_vertices(&self, removed: &[usize]) -> Result<Self> {
        if !self.is_square() {
            return Err(Error::MatrixShape("principal submatrix of a non-square matrix"));
        }
        let mut keep = vec![true; self.rows];
        for &v in removed {
            if v >= self.rows {
                return Err(Error::VertexOutOfRange { vertex: v, order: self.rows });
            }
            keep[v] = false;
        }
        let idx: Vec<usize> = (0..self.rows).filter(|&i| keep[i]).collect();
        let mut out = Self::zeros(idx.len(), idx.len());
        for (a, &i) in idx.iter().enumerate() {
            for (b, &j) in idx.iter().enumerate() {
                out[(a, b)] = self[(i, j)];
            }
        }
        Ok(out)
    }

    /// Applies `f` to every entry.
    pub fn map(&self, f: impl Fn(i64) -> i64) -> Self {
        IntMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|&x| f(x)).collect(),
        }
    }

    pub fn entries(&self) -> &[i64] {
        &self.data
    }
}

impl Index<(usize, usize)> for IntMatrix {
    type Output = i64;

    fn index(&self, (i, j): (usize, usize)) -> &i64 {
        debug_assert!(i < self.rows && j < self.cols);
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for IntMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut i64 {
        debug_assert!(i < self.rows && j < self.cols);
        &mut self.data[i * self.cols + j]
    }
}

impl fmt::Display for IntMatrix {
    /// Whitespace-separated rows, one per line.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            for (j, x) in self.row(i).iter().enumerate() {
                if j > 0 {
                    f.write_str(" ")?;
                }
                write!(f, "{x}")?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

/// Edge directions: for edge `j = (u, v)` with `u < v`, `true` means `u → v`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Orientation(pub Vec<bool>);

impl Orientation {
    /// Every edge points from its smaller to its larger endpoint.
    pub fn default_for(g: &Graph) -> Self {
        Orientation(vec![true; g.size()])
    }

    pub fn random<R: Rng + ?Sized>(g: &Graph, rng: &mut R) -> Self {
        Orientation((0..g.size()).map(|_| rng.gen()).collect())
    }

    /// Orientation with bit `j` of `mask` as the flag of edge `j`.
    pub fn from_mask(g: &Graph, mask: u64) -> Self {
        Orientation((0..g.size()).map(|j| mask >> j & 1 == 1).collect())
    }

    /// All edges from the `false` side of `coloring` to the `true` side.
    pub fn from_coloring(g: &Graph, coloring: &[bool]) -> Self {
        Orientation(g.edges().iter().map(|&(u, _)| !coloring[u]).collect())
    }

    /// `(tail, head)` of edge `j` under this orientation.
    pub fn endpoints(&self, g: &Graph, j: usize) -> (usize, usize) {
        let (u, v) = g.edges()[j];
        if self.0[j] {
            (u, v)
        } else {
            (v, u)
        }
    }

    fn check(&self, g: &Graph) -> Result<()> {
        if self.0.len() == g.size() {
            Ok(())
        } else {
            Err(Error::MatrixShape("orientation must have one flag per edge"))
        }
    }
}

pub fn adjacency(g: &Graph) -> IntMatrix {
    let mut a = IntMatrix::zeros(g.order(), g.order());
    for &(u, v) in g.edges() {
        a[(u, v)] = 1;
        a[(v, u)] = 1;
    }
    a
}

pub fn degree_matrix(g: &Graph) -> IntMatrix {
    let mut d = IntMatrix::zeros(g.order(), g.order());
    for v in 0..g.order() {
        d[(v, v)] = g.degree(v) as i64;
    }
    d
}

/// `L = Δ − A`.
pub fn laplacian(g: &Graph) -> IntMatrix {
    let mut l = adjacency(g).map(|x| -x);
    for v in 0..g.order() {
        l[(v, v)] = g.degree(v) as i64;
    }
    l
}

/// `Q = Δ + A`.
pub fn signless_laplacian(g: &Graph) -> IntMatrix {
    let mut q = adjacency(g);
    for v in 0..g.order() {
        q[(v, v)] = g.degree(v) as i64;
    }
    q
}

/// Vertex-edge incidence matrix `X` (`n × m`, two ones per column).
pub fn incidence(g: &Graph) -> IntMatrix {
    let mut x = IntMatrix::zeros(g.order(), g.size());
    for (j, &(u, v)) in g.edges().iter().enumerate() {
        x[(u, j)] = 1;
        x[(v, j)] = 1;
    }
    x
}

/// Directed incidence matrix `D`: `+1` where edge `j` enters a vertex, `−1`
/// where it leaves.
pub fn directed_incidence(g: &Graph, o: &Orientation) -> Result<IntMatrix> {
    o.check(g)?;
    let mut d = IntMatrix::zeros(g.order(), g.size());
    for j in 0..g.size() {
        let (tail, head) = o.endpoints(g, j);
        d[(head, j)] = 1;
        d[(tail, j)] = -1;
    }
    Ok(d)
}

/// Checks `DDᵀ = Δ − A` and `XXᵀ = Δ + A` in exact integer arithmetic.
pub fn gram_identities_check(g: &Graph, o: &Orientation) -> Result<bool> {
    let d = directed_incidence(g, o)?;
    Ok(d.gram() == laplacian(g) && incidence(g).gram() == signless_laplacian(g))
}

/// `[[0, X], [Xᵀ, 0]]`, the adjacency matrix of the subdivision graph.
pub fn subdivision_adjacency(g: &Graph) -> IntMatrix {
    incidence(g).bipartite_block()
}

/// `[[0, D], [Dᵀ, 0]]`, the signed adjacency of the oriented subdivision.
pub fn signed_subdivision_adjacency(g: &Graph, o: &Orientation) -> Result<IntMatrix> {
    Ok(directed_incidence(g, o)?.bipartite_block())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generate::{generate, GeneratorRecipe};
    use std::vec;

    fn recipe(kind: &str, params: &[usize]) -> Graph {
        generate(&GeneratorRecipe::from_parts(kind, params, 0).unwrap()).unwrap()
    }

    fn k2() -> Graph {
        Graph::from_edge_list(2, &[(0, 1)]).unwrap()
    }

    fn triangle() -> Graph {
        Graph::from_edge_list(3, &[(0, 1), (0, 2), (1, 2)]).unwrap()
    }

    fn m(rows: &[&[i64]]) -> IntMatrix {
        IntMatrix::from_rows(&rows.iter().map(|r| r.to_vec()).collect::<Vec<_>>()).unwrap()
    }

    #[test]
    fn adjacency_examples() {
        assert_eq!(adjacency(&k2()), m(&[&[0, 1], &[1, 0]]));
        assert_eq!(adjacency(&Graph::empty(2)), IntMatrix::zeros(2, 2));
        assert_eq!(adjacency(&triangle()), m(&[&[0, 1, 1], &[1, 0, 1], &[1, 1, 0]]));
    }

    #[test]
    fn laplacians() {
        assert_eq!(laplacian(&k2()), m(&[&[1, -1], &[-1, 1]]));
        assert_eq!(signless_laplacian(&k2()), m(&[&[1, 1], &[1, 1]]));
        let l = laplacian(&recipe("star", &[3]));
        assert_eq!((0..4).map(|i| l[(i, i)]).collect::<Vec<_>>(), [3, 1, 1, 1]);
        assert_eq!(laplacian(&triangle()), m(&[&[2, -1, -1], &[-1, 2, -1], &[-1, -1, 2]]));
    }

    #[test]
    fn row_sums() {
        let g = recipe("caterpillar", &[2, 1, 3]);
        let (l, q) = (laplacian(&g), signless_laplacian(&g));
        for v in 0..g.order() {
            assert_eq!(l.row(v).iter().sum::<i64>(), 0);
            assert_eq!(q.row(v).iter().sum::<i64>(), 2 * g.degree(v) as i64);
        }
        assert!(l.is_symmetric() && q.is_symmetric());
    }

    #[test]
    fn incidence_examples() {
        let g = k2();
        assert_eq!(incidence(&g), m(&[&[1], &[1]]));
        let d = directed_incidence(&g, &Orientation::default_for(&g)).unwrap();
        assert_eq!(d, m(&[&[-1], &[1]]));
        assert_eq!(incidence(&recipe("path", &[2])), m(&[&[1, 0], &[1, 1], &[0, 1]]));
        assert!(directed_incidence(&g, &Orientation(vec![])).is_err());
    }

    #[test]
    fn directed_incidence_columns_sum_to_zero() {
        let g = recipe("spider", &[1, 2, 3]);
        let d = directed_incidence(&g, &Orientation::from_mask(&g, 0b101101)).unwrap();
        let t = d.transpose();
        for j in 0..g.size() {
            assert_eq!(t.row(j).iter().sum::<i64>(), 0);
            assert_eq!(t.row(j).iter().filter(|&&x| x != 0).count(), 2);
        }
    }

    #[test]
    fn gram_identities_every_orientation() {
        assert!(gram_identities_check(&k2(), &Orientation::default_for(&k2())).unwrap());
        assert!(gram_identities_check(&triangle(), &Orientation(vec![false, true, false])).unwrap());
        let g = recipe("spider", &[2, 2, 2]);
        for mask in 0..1u64 << g.size() {
            assert!(gram_identities_check(&g, &Orientation::from_mask(&g, mask)).unwrap());
        }
    }

    #[test]
    fn subdivision_blocks() {
        let g = k2();
        let s = subdivision_adjacency(&g);
        assert_eq!(s, adjacency(&recipe("path", &[2]).relabel(&[0, 2, 1]).unwrap()));
        assert_eq!(s, adjacency(&g.subdivision()));
        let signed = signed_subdivision_adjacency(&g, &Orientation::default_for(&g)).unwrap();
        assert_eq!(signed, m(&[&[0, 0, -1], &[0, 0, 1], &[-1, 1, 0]]));
    }

    #[test]
    fn subdivided_star_is_spider() {
        // Star edge j = (0, j+1) becomes w_j = 4 + j; the spider numbers leg j
        // as 2j+1 (middle, maps to w_j) and 2j+2 (tip, maps to leaf j+1).
        let star = recipe("star", &[3]);
        let spider = recipe("spider", &[2, 2, 2]);
        let perm = [0, 4, 1, 5, 2, 6, 3];
        assert_eq!(subdivision_adjacency(&star), adjacency(&spider.relabel(&perm).unwrap()));
    }

    #[test]
    fn delete_vertices_examples() {
        let a = adjacency(&recipe("star", &[3]));
        assert_eq!(a.delete_vertices(&[0]).unwrap(), IntMatrix::zeros(3, 3));
        assert_eq!(a.delete_vertices(&[]).unwrap(), a);
        assert_eq!(
            a.delete_vertices(&[4]),
            Err(Error::VertexOutOfRange { vertex: 4, order: 4 })
        );

        // Removing the anchor from the subdivided star leaves three 2-vertex
        // paths (leaf j+1 joined to w_j = 4 + j).
        let s = subdivision_adjacency(&recipe("star", &[3])).delete_vertices(&[0]).unwrap();
        for leaf in 0..3 {
            let w = 3 + leaf;
            for other in 0..6 {
                let expect = i64::from(other == w);
                assert_eq!(s[(leaf, other)], expect);
            }
        }
    }

    #[test]
    fn bipartite_sign_similarity() {
        // Orienting from one color class to the other, the diagonal with −1 on
        // that class carries the signed block matrix to the unsigned one.
        let g = recipe("caterpillar", &[1, 2, 2, 1]);
        let coloring = g.two_coloring().unwrap();
        let o = Orientation::from_coloring(&g, &coloring);
        let signed = signed_subdivision_adjacency(&g, &o).unwrap();
        let mut signs: Vec<i64> = coloring.iter().map(|&c| if c { 1 } else { -1 }).collect();
        signs.extend(core::iter::repeat_n(1, g.size()));
        assert_eq!(signed.conjugate_by_signs(&signs).unwrap(), subdivision_adjacency(&g));
    }

    #[test]
    fn flipping_an_edge_is_a_sign_conjugation() {
        let g = triangle();
        let a = signed_subdivision_adjacency(&g, &Orientation(vec![true, true, true])).unwrap();
        let b = signed_subdivision_adjacency(&g, &Orientation(vec![true, false, true])).unwrap();
        let signs = [1, 1, 1, 1, -1, 1];
        assert_eq!(a.conjugate_by_signs(&signs).unwrap(), b);
    }
}
