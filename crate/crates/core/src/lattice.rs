//! Exact integer and rational linear algebra on small lattices.
//!
//! Everything here works on column-generator matrices: a cone or a
//! parallelepiped is described by the lattice points spanning it.

use std::collections::{HashSet, VecDeque};

use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::rational::{int, Rational};

pub type LatticePoint = Vec<i64>;

/// Integer matrix stored by columns.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    rows: usize,
    columns: Vec<LatticePoint>,
}

impl IntMatrix {
    pub fn from_columns(rows: usize, columns: Vec<LatticePoint>) -> Result<Self> {
        if let Some(c) = columns.iter().find(|c| c.len() != rows) {
            return Err(Error::DimensionMismatch { expected: rows, found: c.len() });
        }
        Ok(IntMatrix { rows, columns })
    }

    pub fn identity(n: usize) -> Self {
        let columns = (0..n).map(|j| unit(n, j)).collect();
        IntMatrix { rows: n, columns }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.columns.len()
    }

    pub fn columns(&self) -> &[LatticePoint] {
        &self.columns
    }

    pub fn get(&self, row: usize, col: usize) -> i64 {
        self.columns[col][row]
    }

    /// `self * x` for a rational coefficient vector.
    pub fn apply(&self, x: &[Rational]) -> Vec<Rational> {
        let mut out = vec![Rational::zero(); self.rows];
        for (col, coeff) in self.columns.iter().zip(x) {
            for (o, &a) in out.iter_mut().zip(col) {
                *o += coeff * int(a);
            }
        }
        out
    }

    fn with_column(&self, c: LatticePoint) -> IntMatrix {
        let mut columns = self.columns.clone();
        columns.push(c);
        IntMatrix { rows: self.rows, columns }
    }

    fn minor(&self, skip_row: usize, skip_col: usize) -> IntMatrix {
        let columns = self
            .columns
            .iter()
            .enumerate()
            .filter(|&(j, _)| j != skip_col)
            .map(|(_, c)| {
                c.iter()
                    .enumerate()
                    .filter(|&(i, _)| i != skip_row)
                    .map(|(_, &a)| a)
                    .collect()
            })
            .collect();
        IntMatrix { rows: self.rows - 1, columns }
    }
}

pub fn unit(n: usize, j: usize) -> LatticePoint {
    let mut e = vec![0; n];
    e[j] = 1;
    e
}

/// Exact determinant by fraction-free (Bareiss) elimination.
pub fn det(m: &IntMatrix) -> Result<i64> {
    let n = m.rows();
    if m.cols() != n {
        return Err(Error::NonSquare { rows: n, cols: m.cols() });
    }
    if n == 0 {
        return Ok(1);
    }
    let mut a: Vec<Vec<i128>> = (0..n)
        .map(|i| (0..n).map(|j| m.get(i, j) as i128).collect())
        .collect();
    let mut sign = 1i128;
    let mut prev = 1i128;
    for k in 0..n - 1 {
        if a[k][k] == 0 {
            match (k + 1..n).find(|&i| a[i][k] != 0) {
                Some(i) => {
                    a.swap(i, k);
                    sign = -sign;
                }
                None => return Ok(0),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
            }
        }
        prev = a[k][k];
    }
    Ok((sign * a[n - 1][n - 1]) as i64)
}

/// Row-reduces `columns` (as a rows x cols rational matrix) in place and
/// returns the pivot column of each pivot row.
fn row_reduce(a: &mut [Vec<Rational>], cols: usize) -> Vec<usize> {
    let rows = a.len();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(p, r);
        let inv = a[r][c].recip();
        for x in a[r].iter_mut() {
            *x *= inv;
        }
        for i in 0..rows {
            if i != r && !a[i][c].is_zero() {
                let f = a[i][c];
                for j in 0..a[i].len() {
                    let t = a[r][j] * f;
                    a[i][j] -= t;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

pub fn rank(m: &IntMatrix) -> usize {
    let mut a: Vec<Vec<Rational>> = (0..m.rows())
        .map(|i| (0..m.cols()).map(|j| int(m.get(i, j))).collect())
        .collect();
    row_reduce(&mut a, m.cols()).len()
}

/// Solves `generators * q = v` over the rationals.
///
/// Returns `Ok(None)` when `v` is not in the column span.
pub fn solve_rational(generators: &IntMatrix, v: &[i64]) -> Result<Option<Vec<Rational>>> {
    let (rows, d) = (generators.rows(), generators.cols());
    if v.len() != rows {
        return Err(Error::DimensionMismatch { expected: rows, found: v.len() });
    }
    let mut a: Vec<Vec<Rational>> = (0..rows)
        .map(|i| {
            (0..d)
                .map(|j| int(generators.get(i, j)))
                .chain(std::iter::once(int(v[i])))
                .collect()
        })
        .collect();
    let pivots = row_reduce(&mut a, d + 1);
    if pivots.iter().filter(|&&c| c < d).count() < d {
        return Err(Error::DependentColumns);
    }
    if pivots.contains(&d) {
        return Ok(None);
    }
    Ok(Some((0..d).map(|i| a[i][d]).collect()))
}

/// Lattice points of the half-open parallelepiped `{B q : 0 <= q_i < 1}`
/// of a square nonsingular `B`, with their coefficient vectors.
///
/// The points are the coset representatives of `Z^n / B Z^n`, so they are
/// produced by closing the images of the unit vectors under addition
/// modulo one; there are exactly `|det B|` of them.
pub fn half_open_parallelepiped(b: &IntMatrix) -> Result<Vec<(LatticePoint, Vec<Rational>)>> {
    let n = b.rows();
    let d = det(b)?;
    if d == 0 {
        return Err(Error::DependentColumns);
    }
    let m = d.abs();
    let s = d.signum();
    // adj[i][j] = (-1)^(i+j) det(minor(j, i)); B^{-1} = adj / d.
    let adj: Vec<Vec<i64>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    if n == 1 {
                        return 1;
                    }
                    let c = det(&b.minor(j, i)).expect("square minor");
                    if (i + j) % 2 == 0 {
                        c
                    } else {
                        -c
                    }
                })
                .collect()
        })
        .collect();
    let generators: Vec<Vec<i64>> = (0..n)
        .map(|j| (0..n).map(|i| (s * adj[i][j]).rem_euclid(m)).collect())
        .collect();

    let zero = vec![0i64; n];
    let mut seen: HashSet<Vec<i64>> = HashSet::from([zero.clone()]);
    let mut queue = VecDeque::from([zero]);
    let mut out = Vec::with_capacity(m as usize);
    while let Some(x) = queue.pop_front() {
        for g in &generators {
            let y: Vec<i64> = x.iter().zip(g).map(|(a, b)| (a + b).rem_euclid(m)).collect();
            if seen.insert(y.clone()) {
                queue.push_back(y);
            }
        }
        let point: LatticePoint = (0..n)
            .map(|row| {
                let s: i128 = (0..n).map(|c| b.get(row, c) as i128 * x[c] as i128).sum();
                debug_assert_eq!(s % m as i128, 0);
                (s / m as i128) as i64
            })
            .collect();
        let coeffs = x.iter().map(|&xi| Rational::new(xi, m)).collect();
        out.push((point, coeffs));
    }
    debug_assert_eq!(out.len() as i64, m);
    out.sort();
    Ok(out)
}

/// Lattice points `v = sum q_i b_i` with every `q_i` strictly inside `(0, 1)`,
/// sorted lexicographically by coordinates.
pub fn enumerate_open_parallelepiped(
    generators: &IntMatrix,
) -> Result<Vec<(LatticePoint, Vec<Rational>)>> {
    let (n, d) = (generators.rows(), generators.cols());
    if rank(generators) < d {
        return Err(Error::DependentColumns);
    }
    if d == 0 {
        return Ok(Vec::new());
    }
    // Complete to a full-rank square matrix with unit vectors; the open box of
    // the original columns is the part of the completed half-open box whose
    // extra coefficients vanish.
    let mut full = generators.clone();
    for j in 0..n {
        if full.cols() == n {
            break;
        }
        let candidate = full.with_column(unit(n, j));
        if rank(&candidate) == candidate.cols() {
            full = candidate;
        }
    }
    let mut out: Vec<_> = half_open_parallelepiped(&full)?
        .into_iter()
        .filter(|(_, q)| q[..d].iter().all(|c| c.is_positive()) && q[d..].iter().all(|c| c.is_zero()))
        .map(|(p, mut q)| {
            q.truncate(d);
            (p, q)
        })
        .collect();
    out.sort();
    Ok(out)
}
