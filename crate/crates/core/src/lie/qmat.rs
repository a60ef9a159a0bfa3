//! Dense exact rational matrices.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub type Q = BigRational;

pub fn q(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

pub fn qf(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

/// `p` or `p/q` with an optional leading minus.
pub fn format_q(x: &Q) -> String {
    if x.denom().is_one() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

pub fn format_vec(v: &[Q]) -> Vec<String> {
    v.iter().map(format_q).collect()
}

#[derive(Clone, PartialEq, Eq)]
pub struct QMatrix {
    pub rows: usize,
    pub cols: usize,
    data: Vec<Q>,
}

impl fmt::Debug for QMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<Vec<String>> = (0..self.rows).map(|i| format_vec(self.row(i))).collect();
        write!(f, "{rows:?}")
    }
}

impl QMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        QMatrix {
            rows,
            cols,
            data: vec![Q::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Q::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Q>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged matrix");
        QMatrix {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn from_i64(rows: &[&[i64]]) -> Self {
        Self::from_rows(rows.iter().map(|r| r.iter().map(|&x| q(x)).collect()).collect())
    }

    /// Matrix whose columns are the given vectors.
    pub fn from_columns(cols: &[Vec<Q>], height: usize) -> Self {
        let mut m = Self::zeros(height, cols.len());
        for (j, c) in cols.iter().enumerate() {
            assert_eq!(c.len(), height, "column has the wrong height");
            for (i, x) in c.iter().enumerate() {
                m[(i, j)] = x.clone();
            }
        }
        m
    }

    pub fn row(&self, i: usize) -> &[Q] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<Q> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn trace(&self) -> Q {
        (0..self.rows.min(self.cols)).map(|i| self[(i, i)].clone()).sum()
    }

    pub fn mul(&self, other: &QMatrix) -> QMatrix {
        assert_eq!(self.cols, other.rows, "shape mismatch in product");
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = &other[(k, j)];
                    if !b.is_zero() {
                        out[(i, j)] += a * b;
                    }
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[Q]) -> Vec<Q> {
        assert_eq!(self.cols, v.len(), "shape mismatch in product");
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .filter(|(a, _)| !a.is_zero())
                    .map(|(a, b)| a * b)
                    .sum()
            })
            .collect()
    }

    pub fn add(&self, other: &QMatrix) -> QMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        QMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn sub(&self, other: &QMatrix) -> QMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        QMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a - b).collect(),
        }
    }

    pub fn scale(&self, s: &Q) -> QMatrix {
        QMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|a| a * s).collect(),
        }
    }

    pub fn commutator(&self, other: &QMatrix) -> QMatrix {
        self.mul(other).sub(&other.mul(self))
    }

    /// Reduced row echelon form and pivot columns.
    pub fn rref(&self) -> (QMatrix, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| !m[(i, c)].is_zero()) else {
                continue;
            };
            m.swap_rows(r, p);
            let inv = m[(r, c)].recip();
            for j in c..m.cols {
                let v = &m[(r, j)] * &inv;
                m[(r, j)] = v;
            }
            for i in 0..m.rows {
                if i != r && !m[(i, c)].is_zero() {
                    let factor = m[(i, c)].clone();
                    for j in c..m.cols {
                        let v = &m[(r, j)] * &factor;
                        m[(i, j)] -= v;
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for j in 0..self.cols {
                self.data.swap(a * self.cols + j, b * self.cols + j);
            }
        }
    }

    /// Rows scaled to integers by their denominators' lcm.
    fn integer_rows(&self) -> Vec<Vec<BigInt>> {
        (0..self.rows)
            .map(|i| {
                let row = self.row(i);
                let l = row.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
                row.iter().map(|x| x.numer() * (&l / x.denom())).collect()
            })
            .collect()
    }

    /// Fraction-free (Bareiss) row echelon form over the integers.
    fn echelon(&self) -> (Vec<Vec<BigInt>>, Vec<usize>) {
        let mut m = self.integer_rows();
        let mut pivots = Vec::new();
        let mut prev = BigInt::one();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(p) = (r..self.rows).find(|&i| !m[i][c].is_zero()) else {
                continue;
            };
            m.swap(r, p);
            let (top, rest) = m.split_at_mut(r + 1);
            let pivot_row = &top[r];
            for row in rest.iter_mut() {
                let f = std::mem::take(&mut row[c]);
                for j in c + 1..self.cols {
                    let v = &pivot_row[c] * &row[j] - &f * &pivot_row[j];
                    debug_assert!((&v % &prev).is_zero());
                    row[j] = v / &prev;
                }
            }
            prev = m[r][c].clone();
            pivots.push(c);
            r += 1;
        }
        m.truncate(r);
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.echelon().1.len()
    }

    /// Basis of `{v : self v = 0}`: one vector per free column, with a 1 there.
    pub fn nullspace(&self) -> Vec<Vec<Q>> {
        let (e, pivots) = self.echelon();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v = vec![Q::zero(); self.cols];
                v[f] = Q::one();
                for (row, &p) in pivots.iter().enumerate().rev() {
                    let mut acc = Q::zero();
                    for j in p + 1..self.cols {
                        if !v[j].is_zero() && !e[row][j].is_zero() {
                            acc += &v[j] * Q::from_integer(e[row][j].clone());
                        }
                    }
                    v[p] = -acc / Q::from_integer(e[row][p].clone());
                }
                v
            })
            .collect()
    }

    pub fn inverse(&self) -> Option<QMatrix> {
        assert_eq!(self.rows, self.cols, "inverse of a non-square matrix");
        let n = self.rows;
        let mut aug = Self::zeros(n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug[(i, j)] = self[(i, j)].clone();
            }
            aug[(i, n + i)] = Q::one();
        }
        let (r, pivots) = aug.rref();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return None;
        }
        let mut inv = Self::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                inv[(i, j)] = r[(i, n + j)].clone();
            }
        }
        Some(inv)
    }

    pub fn determinant(&self) -> Q {
        let c = self.charpoly();
        let n = self.rows;
        if n.is_multiple_of(2) {
            c[n].clone()
        } else {
            -c[n].clone()
        }
    }

    /// Coefficients `[1, c1, ..., cn]` of `det(t I - A) = t^n + c1 t^(n-1) + ... + cn`,
    /// by Berkowitz's division-free recursion.
    pub fn charpoly(&self) -> Vec<Q> {
        assert_eq!(self.rows, self.cols, "characteristic polynomial of a non-square matrix");
        let n = self.rows;
        if n == 0 {
            return vec![Q::one()];
        }
        // vector for the trailing 1x1 block
        let mut poly = vec![Q::one(), -self[(n - 1, n - 1)].clone()];
        for k in (0..n - 1).rev() {
            // leading block A[k..n, k..n] = [[a, R], [C, M]], M = A[k+1..n, k+1..n]
            let m = n - k - 1;
            let a = self[(k, k)].clone();
            let r: Vec<Q> = (k + 1..n).map(|j| self[(k, j)].clone()).collect();
            let c: Vec<Q> = (k + 1..n).map(|i| self[(i, k)].clone()).collect();
            // Toeplitz column: 1, -a, -R C, -R M C, ..., -R M^(m-1) C
            let mut col = vec![Q::one(), -a];
            let mut v = c;
            for _ in 0..m {
                let rv: Q = r.iter().zip(&v).map(|(x, y)| x * y).sum();
                col.push(-rv);
                v = (0..m)
                    .map(|i| (0..m).map(|j| &self[(k + 1 + i, k + 1 + j)] * &v[j]).sum())
                    .collect();
            }
            // (m+2) x (m+1) lower-triangular Toeplitz times poly (length m+1)
            let mut next = vec![Q::zero(); m + 2];
            for (i, slot) in next.iter_mut().enumerate() {
                for (j, p) in poly.iter().enumerate() {
                    if i >= j && i - j < col.len() {
                        *slot += &col[i - j] * p;
                    }
                }
            }
            poly = next;
        }
        poly
    }
}

impl std::ops::Index<(usize, usize)> for QMatrix {
    type Output = Q;
    fn index(&self, (i, j): (usize, usize)) -> &Q {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for QMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Q {
        &mut self.data[i * self.cols + j]
    }
}

pub fn dot(a: &[Q], b: &[Q]) -> Q {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub fn is_zero_vec(v: &[Q]) -> bool {
    v.iter().all(Zero::is_zero)
}

/// Rank of a list of vectors of a common length.
pub fn span_rank(vectors: &[Vec<Q>], dim: usize) -> usize {
    if vectors.is_empty() {
        return 0;
    }
    QMatrix::from_columns(vectors, dim).rank()
}

/// `dim(span A ∩ span B)` from three ranks.
pub fn intersection_dim(a: &[Vec<Q>], b: &[Vec<Q>], dim: usize) -> usize {
    let mut both = a.to_vec();
    both.extend(b.iter().cloned());
    span_rank(a, dim) + span_rank(b, dim) - span_rank(&both, dim)
}

pub fn abs_max(v: &[Q]) -> Q {
    v.iter()
        .map(|x| x.abs())
        .fold(Q::zero(), |a, b| if b > a { b } else { a })
}
